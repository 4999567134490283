//! Four-point piercing for colorful families of translates of a planar
//! convex body.
//!
//! The pipeline: find a line transversal to all translates, approximate the
//! body by a parallelogram with one side along that line, derive a second
//! transversal for all but one family from a colorful interval argument,
//! and read four piercing points off the region of admissible translations.

pub mod approx;
pub mod error;
pub mod geom;
pub mod oracle;
pub mod piercing;
pub mod report;
pub mod svg;
pub mod transversal;

pub use approx::{find_homothetic_pair, verify_approx, ApproxConfig, ApproxResult, SupportHandling};
pub use error::{Error, Result};
pub use geom::{ConvexPolygon, Direction, Line, Parallelogram, Point2, Vec2};
pub use piercing::{pierce, verify_certificate, Branch, CertificateReport, PierceConfig, PiercingCertificate};
pub use transversal::{find_transversal, Instance, Interval, TransversalConfig};
pub use report::{Payload, RunReport, SCHEMA_VERSION};
