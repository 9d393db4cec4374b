//! The cap file format.
//!
//! ```text
//! CAP p t r size
//! <modulus of F_{2^t}, integer-encoded with its leading coefficient>
//! <size lines of r space-separated field-element integers>
//! ```
//!
//! Files are self-describing: the modulus fixes the meaning of every
//! element encoding, so re-verification never depends on this build's
//! canonical modulus choice (a non-canonical modulus merely warns).

use std::sync::Arc;

use super::{certify_points, AffinePoint, CapCertificate, TranslationCap};
use crate::gf::{poly, ZechField};
use crate::{Budget, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapFile {
    pub p: u32,
    pub t: u32,
    pub r: usize,
    pub size: u64,
    pub modulus: u64,
    pub points_enc: Vec<Vec<u64>>,
}

/// Render a cap deterministically (points in the cap's stored order).
pub fn cap_to_string(cap: &TranslationCap) -> String {
    points_to_string(cap.field(), cap.r(), cap.points())
}

pub fn points_to_string(field: &ZechField, r: usize, points: &[AffinePoint]) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "CAP {} {} {} {}\n",
        field.characteristic(),
        field.degree(),
        r,
        points.len()
    ));
    s.push_str(&format!("{}\n", field.modulus()));
    for p in points {
        let row: Vec<String> = p.iter().map(|&c| field.encode(c).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_cap(text: &str) -> Result<CapFile> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty cap file".into()))?;
    let mut it = header.split_whitespace();
    if it.next() != Some("CAP") {
        return Err(Error::Parse("cap files start with `CAP p t r size`".into()));
    }
    let mut next_u64 = |what: &str| -> Result<u64> {
        it.next()
            .ok_or_else(|| Error::Parse(format!("missing {what} in header")))?
            .parse::<u64>()
            .map_err(|e| Error::Parse(format!("bad {what}: {e}")))
    };
    let p = next_u64("p")? as u32;
    let t = next_u64("t")? as u32;
    let r = next_u64("r")? as usize;
    let size = next_u64("size")?;
    let modulus = lines
        .next()
        .ok_or_else(|| Error::Parse("missing modulus line".into()))?
        .trim()
        .parse::<u64>()
        .map_err(|e| Error::Parse(format!("bad modulus: {e}")))?;
    let order = poly::checked_pow(p as u64, t)
        .ok_or_else(|| Error::Parse("field order overflows".into()))?;

    let mut points_enc = Vec::with_capacity(size as usize);
    for line in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Vec<u64> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad coordinate `{tok}`: {e}")))
            })
            .collect::<Result<Vec<u64>>>()?;
        if row.len() != r {
            return Err(Error::Parse(format!(
                "point has {} coordinates, expected {r}",
                row.len()
            )));
        }
        if row.iter().any(|&c| c >= order) {
            return Err(Error::Parse("coordinate encoding out of range".into()));
        }
        points_enc.push(row);
    }
    if points_enc.len() as u64 != size {
        return Err(Error::Parse(format!(
            "header announces {size} points but the file has {}",
            points_enc.len()
        )));
    }
    Ok(CapFile {
        p,
        t,
        r,
        size,
        modulus,
        points_enc,
    })
}

pub struct VerifyOutcome {
    pub certificate: CapCertificate,
    pub warnings: Vec<String>,
}

/// Recompute every property from the file contents alone.
pub fn verify_cap_file(cf: &CapFile, budget: &Budget) -> Result<VerifyOutcome> {
    let mut warnings = Vec::new();
    let field: Arc<ZechField> = ZechField::with_modulus(cf.p, cf.t, cf.modulus, budget)?;
    let canonical = poly::canonical_primitive_modulus(cf.p, cf.t);
    if canonical != cf.modulus {
        warnings.push(format!(
            "modulus {} differs from the canonical choice {canonical}; encodings honoured as written",
            cf.modulus
        ));
    }
    if cf.p != 2 {
        return Err(Error::InvalidInput(
            "cap verification is defined over F_{2^t}".into(),
        ));
    }
    let points: Vec<AffinePoint> = cf
        .points_enc
        .iter()
        .map(|row| row.iter().map(|&e| field.decode(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let certificate = certify_points(
        &field,
        cf.r,
        &points,
        budget.max_bitmap_bits,
        vec!["source=file".to_string()],
    )?;
    Ok(VerifyOutcome {
        certificate,
        warnings,
    })
}
