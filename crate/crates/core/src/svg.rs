//! Self-contained SVG figures of approximations and piercing certificates.

use std::fmt::Write;

use crate::approx::ApproxResult;
use crate::geom::{ConvexPolygon, Line, Point2, Vec2};
use crate::piercing::PiercingCertificate;
use crate::transversal::Instance;

const PALETTE: [&str; 8] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

struct Frame {
    lo: Vec2,
    hi: Vec2,
}

impl Frame {
    /// Bounding box of `pts` padded by 5% on each side.
    fn around<'a>(pts: impl IntoIterator<Item = &'a Point2>) -> Frame {
        let (mut lo, mut hi) = (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in pts {
            lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if !lo.is_finite() {
            lo = Vec2::ZERO;
            hi = Vec2::new(1.0, 1.0);
        }
        let pad = (hi - lo) * 0.05;
        let pad = Vec2::new(pad.x.max(1e-9), pad.y.max(1e-9));
        Frame { lo: lo - pad, hi: hi + pad }
    }

    fn size(&self) -> Vec2 {
        self.hi - self.lo
    }

    /// SVG y grows downward.
    fn map(&self, p: Point2) -> (f64, f64) {
        (p.x - self.lo.x, self.hi.y - p.y)
    }

    fn stroke(&self) -> f64 {
        self.size().x.max(self.size().y) / 400.0
    }

    fn header(&self, out: &mut String) {
        let s = self.size();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {} {}" width="800" height="{}">"#,
            s.x,
            s.y,
            (800.0 * s.y / s.x).round().max(1.0)
        );
    }

    fn polygon(&self, out: &mut String, pts: &[Point2], style: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x:.9},{y:.9}")
            })
            .collect();
        let _ = writeln!(out, r#"<polygon points="{}" {style}/>"#, coords.join(" "));
    }

    /// The part of `line` inside the frame, drawn as a segment.
    fn line(&self, out: &mut String, line: &Line, style: &str) {
        let d = line.direction().unit();
        let p0 = line.normal * line.offset;
        let corners = [self.lo, Vec2::new(self.hi.x, self.lo.y), self.hi, Vec2::new(self.lo.x, self.hi.y)];
        let (mut tmin, mut tmax) = (f64::INFINITY, f64::NEG_INFINITY);
        for c in corners {
            let t = (c - p0).dot(d);
            tmin = tmin.min(t);
            tmax = tmax.max(t);
        }
        let (x1, y1) = self.map(p0 + d * tmin);
        let (x2, y2) = self.map(p0 + d * tmax);
        let _ = writeln!(out, r#"<line x1="{x1:.9}" y1="{y1:.9}" x2="{x2:.9}" y2="{y2:.9}" {style}/>"#);
    }
}

/// `K`, `P`, `P'` and `Q` overlaid; exactly four `<polygon>` elements.
pub fn approx_svg(k: &ConvexPolygon, r: &ApproxResult) -> String {
    let q = r.q.vertices();
    let pc = r.p_circ.vertices();
    let frame = Frame::around(k.vertices().iter().chain(q.iter()).chain(pc.iter()));
    let w = frame.stroke();
    let mut out = String::new();
    frame.header(&mut out);
    let _ = writeln!(out, "<title>ratio {:.6}</title>", r.ratio);
    frame.polygon(&mut out, &q, &format!(r##"fill="none" stroke="#999" stroke-width="{w}" stroke-dasharray="{} {}""##, 4.0 * w, 2.0 * w));
    frame.polygon(&mut out, &pc, &format!(r##"fill="none" stroke="#d62728" stroke-width="{w}""##));
    frame.polygon(&mut out, k.vertices(), &format!(r##"fill="#1f77b4" fill-opacity="0.25" stroke="#1f77b4" stroke-width="{w}""##));
    frame.polygon(&mut out, &r.p.vertices(), &format!(r##"fill="#2ca02c" fill-opacity="0.4" stroke="#2ca02c" stroke-width="{w}""##));
    out.push_str("</svg>\n");
    out
}

/// Translates colored by family with the excluded family hatched, the lines
/// `ℓ` and `ℓ'`, and the piercing points.
pub fn pierce_svg(inst: &Instance, cert: &PiercingCertificate) -> String {
    let translates: Vec<(usize, ConvexPolygon)> = inst.members().map(|(f, _, x)| (f, inst.body.translated(x))).collect();
    let frame = Frame::around(translates.iter().flat_map(|(_, p)| p.vertices()).chain(cert.points.iter()));
    let w = frame.stroke();
    let mut out = String::new();
    frame.header(&mut out);
    let _ = writeln!(
        out,
        r##"<defs><pattern id="hatch" patternUnits="userSpaceOnUse" width="{0}" height="{0}" patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="{0}" stroke="#555" stroke-width="{1}"/></pattern></defs>"##,
        8.0 * w,
        w
    );
    for (f, p) in &translates {
        let color = PALETTE[f % PALETTE.len()];
        let fill = if *f == cert.excluded_family { "url(#hatch)".to_string() } else { color.to_string() };
        frame.polygon(
            &mut out,
            p.vertices(),
            &format!(r#"fill="{fill}" fill-opacity="0.15" stroke="{color}" stroke-width="{w}" class="family-{f}""#),
        );
    }
    if let Some(l) = &cert.ell {
        frame.line(&mut out, l, &format!(r##"stroke="#000" stroke-width="{}" class="ell""##, 1.5 * w));
    }
    if let Some(l) = &cert.ell_prime {
        frame.line(
            &mut out,
            l,
            &format!(r##"stroke="#000" stroke-width="{}" stroke-dasharray="{} {}" class="ell-prime""##, 1.5 * w, 6.0 * w, 3.0 * w),
        );
    }
    for p in &cert.points {
        let (x, y) = frame.map(*p);
        let _ = writeln!(out, r##"<circle cx="{x:.9}" cy="{y:.9}" r="{}" fill="#000"/>"##, 4.0 * w);
    }
    out.push_str("</svg>\n");
    out
}
