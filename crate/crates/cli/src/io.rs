use std::fs;
use std::path::Path;

use anyhow::Context;
use pierce4::geom::{ConvexPolygon, Vec2};
use pierce4::oracle::{gen_body, BodySource};
use pierce4::transversal::Instance;
use pierce4::{Payload, PiercingCertificate, RunReport};

use crate::{input_err, BodyArgs, CliResult};

pub fn read(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(input_err)
}

fn utf8(bytes: &[u8], path: &Path) -> CliResult<String> {
    String::from_utf8(bytes.to_vec())
        .with_context(|| format!("{} is not UTF-8", path.display()))
        .map_err(input_err)
}

/// Write `text` to `path`, or to stdout without one.
pub fn emit(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text)
            .with_context(|| format!("cannot write {}", p.display()))
            .map_err(input_err),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

pub struct LoadedBody {
    pub label: String,
    pub source: BodySource,
    pub polygon: ConvexPolygon,
    /// Bytes identifying the body, for the input digest.
    pub bytes: Vec<u8>,
}

pub fn load_body(args: &BodyArgs) -> CliResult<LoadedBody> {
    if let Some(path) = &args.body_file {
        let bytes = read(path)?;
        let text = utf8(&bytes, path)?;
        let polygon = serde_json::from_str::<ConvexPolygon>(&text)
            .or_else(|_| {
                serde_json::from_str::<Vec<Vec2>>(&text)
                    .map_err(anyhow::Error::from)
                    .and_then(|v| ConvexPolygon::new(v).map_err(anyhow::Error::from))
            })
            .with_context(|| format!("{} does not hold a convex polygon", path.display()))
            .map_err(input_err)?;
        return Ok(LoadedBody {
            label: path.display().to_string(),
            source: BodySource::Vertices(polygon.vertices().to_vec()),
            polygon,
            bytes,
        });
    }
    let name = args.body.clone().unwrap_or_else(|| "disk256".into());
    let polygon = gen_body(&name).map_err(input_err)?;
    Ok(LoadedBody {
        label: name.clone(),
        source: BodySource::Named(name.clone()),
        polygon,
        bytes: name.into_bytes(),
    })
}

pub fn load_instance(path: &Path) -> CliResult<(Instance, Vec<u8>)> {
    let bytes = read(path)?;
    let text = utf8(&bytes, path)?;
    let inst: Instance = serde_json::from_str(&text)
        .with_context(|| format!("{} is not an instance file", path.display()))
        .map_err(input_err)?;
    inst.validate()
        .with_context(|| format!("{} violates the instance invariants", path.display()))
        .map_err(input_err)?;
    Ok((inst, bytes))
}

/// A bare certificate, or the certificate inside a pierce report.
pub fn load_certificate(path: &Path) -> CliResult<(PiercingCertificate, Vec<u8>)> {
    let bytes = read(path)?;
    let text = utf8(&bytes, path)?;
    if let Ok(c) = serde_json::from_str::<PiercingCertificate>(&text) {
        return Ok((c, bytes));
    }
    match serde_json::from_str::<RunReport>(&text) {
        Ok(RunReport {
            payload: Payload::Pierce(p), ..
        }) => Ok((p.certificate, bytes)),
        _ => Err(input_err(anyhow::anyhow!("{} holds no piercing certificate", path.display()))),
    }
}
