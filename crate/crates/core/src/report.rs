//! Verification reports and the serialized spec document.
//!
//! Reports are emitted as a line-oriented key/value text (deterministic,
//! diff-friendly) and optionally as JSON via `serde`. Spec documents round
//! trip: `scattered build` writes one, `scattered verify` rebuilds the
//! construction from it and re-runs every check from scratch.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::gf::{poly, TowerParams};
use crate::linset::{
    check_binomial_q2_conditions, check_family2_conditions, check_monomial_conditions,
    enumerate_points, intersection_numbers, two_intersection_profile, ConditionCheck, FamilyTag,
    LinPoly, LinearSetSpec, PlaneAmbient,
};
use crate::{Budget, Error, Result};

pub const TOOL: &str = concat!("scatcap/", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileMode {
    /// Run the line census only when the plane is small (<= 4096 lines).
    Auto,
    Force,
    Skip,
}

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub profile: ProfileMode,
    pub max_lines: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            profile: ProfileMode::Auto,
            max_lines: 1 << 18,
        }
    }
}

const AUTO_PROFILE_LINES: u64 = 4096;

/// Everything `scattered build`/`verify` certifies about one construction.
/// Every verdict is accompanied by the counts that back it.
#[derive(Debug, Clone, Serialize)]
pub struct ScatteredReport {
    pub tool: String,
    pub p: u32,
    pub h: u32,
    pub n: u32,
    pub q: u64,
    pub modulus_q3n: u64,
    pub modulus_q2n: u64,
    pub omega_enc: u64,
    pub omega_a_enc: u64,
    pub omega_b_enc: u64,
    pub family: String,
    pub i: Option<u32>,
    pub a_enc: Option<u64>,
    pub b_enc: Option<u64>,
    pub conditions: Vec<ConditionCheck>,
    pub conditions_ok: bool,
    pub u_size: u64,
    pub rank: u32,
    pub point_count: u64,
    pub expected_max_points: u64,
    pub weight_histogram: Vec<(u32, u64)>,
    pub scattered: bool,
    pub line_count: Option<u64>,
    pub line_histogram: Option<Vec<(u64, u64)>>,
    pub expected_intersections: Option<(u64, u64)>,
    pub two_intersection_ok: Option<bool>,
    pub elapsed_ms: u128,
    pub verdict: bool,
}

impl ScatteredReport {
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        s.push_str("scatcap-scattered-report v1\n");
        s.push_str(&format!("tool {}\n", self.tool));
        s.push_str(&format!("p {}\n", self.p));
        s.push_str(&format!("h {}\n", self.h));
        s.push_str(&format!("n {}\n", self.n));
        s.push_str(&format!("q {}\n", self.q));
        s.push_str(&format!(
            "modulus_q3n {} # {}\n",
            self.modulus_q3n,
            poly::pretty(self.modulus_q3n, self.p, 3 * self.n * self.h)
        ));
        s.push_str(&format!(
            "modulus_q2n {} # {}\n",
            self.modulus_q2n,
            poly::pretty(self.modulus_q2n, self.p, 2 * self.n * self.h)
        ));
        s.push_str(&format!("omega {}\n", self.omega_enc));
        s.push_str(&format!("omega_a {}\n", self.omega_a_enc));
        s.push_str(&format!("omega_b {}\n", self.omega_b_enc));
        s.push_str(&format!("family {}\n", self.family));
        if let Some(i) = self.i {
            s.push_str(&format!("i {i}\n"));
        }
        if let Some(a) = self.a_enc {
            s.push_str(&format!("a {a}\n"));
        }
        if let Some(b) = self.b_enc {
            s.push_str(&format!("b {b}\n"));
        }
        for c in &self.conditions {
            s.push_str(&format!(
                "condition {} {} ({})\n",
                c.name,
                if c.passed { "pass" } else { "fail" },
                c.detail
            ));
        }
        s.push_str(&format!("u_size {}\n", self.u_size));
        s.push_str(&format!("rank {}\n", self.rank));
        s.push_str(&format!("points {}\n", self.point_count));
        s.push_str(&format!("expected_max_points {}\n", self.expected_max_points));
        let w: Vec<String> = self
            .weight_histogram
            .iter()
            .map(|(w, c)| format!("{w}:{c}"))
            .collect();
        s.push_str(&format!("weights {}\n", w.join(" ")));
        s.push_str(&format!("scattered {}\n", self.scattered));
        if let Some(lc) = self.line_count {
            s.push_str(&format!("lines {lc}\n"));
        }
        if let Some(hist) = &self.line_histogram {
            let l: Vec<String> = hist.iter().map(|(sz, c)| format!("{sz}:{c}")).collect();
            s.push_str(&format!("line_histogram {}\n", l.join(" ")));
        }
        if let Some((t1, t2)) = self.expected_intersections {
            s.push_str(&format!("expected_intersections {t1} {t2}\n"));
        }
        if let Some(ok) = self.two_intersection_ok {
            s.push_str(&format!("two_intersection {ok}\n"));
        }
        s.push_str(&format!("elapsed_ms {}\n", self.elapsed_ms));
        s.push_str(&format!(
            "verdict {}\n",
            if self.verdict { "pass" } else { "fail" }
        ));
        s
    }
}

/// Re-run the family hypothesis checks of a spec.
pub fn run_condition_checks(spec: &LinearSetSpec) -> Result<Vec<ConditionCheck>> {
    let ambient = &spec.ambient;
    let missing = || Error::InvalidInput("family spec is missing its parameters".into());
    Ok(match spec.family {
        FamilyTag::Monomial => {
            let (i, a) = (spec.i.ok_or_else(missing)?, spec.a.ok_or_else(missing)?);
            check_monomial_conditions(ambient, i, a)?.checks
        }
        FamilyTag::Family2 => {
            let (i, a) = (spec.i.ok_or_else(missing)?, spec.a.ok_or_else(missing)?);
            check_family2_conditions(ambient, i, a)?.checks
        }
        FamilyTag::BinomialQ2 => {
            check_binomial_q2_conditions(ambient, spec.b.ok_or_else(missing)?)?.checks
        }
        FamilyTag::Custom => Vec::new(),
    })
}

/// Full verification run: hypothesis checks, exhaustive point/weight
/// enumeration, and (optionally) the line-intersection census.
pub fn verify_scattered(spec: &LinearSetSpec, opts: &ReportOptions) -> Result<ScatteredReport> {
    let start = Instant::now();
    let ambient = &spec.ambient;
    let params = ambient.params();
    let q = params.q();

    let conditions = run_condition_checks(spec)?;
    let conditions_ok = conditions.iter().all(|c| c.passed);

    let ls = enumerate_points(spec)?;
    let scattered = ls.is_scattered();
    let weight_histogram: Vec<(u32, u64)> = ls.weight_histogram().into_iter().collect();

    let plane_order = ambient.plane().order();
    let line_count = plane_order * plane_order + plane_order + 1;
    let run_profile = match opts.profile {
        ProfileMode::Skip => false,
        ProfileMode::Force => true,
        ProfileMode::Auto => line_count <= AUTO_PROFILE_LINES,
    };
    let (line_histogram, two_intersection_ok, expected) = if run_profile {
        let hist: BTreeMap<u64, u64> = two_intersection_profile(&ls, opts.max_lines)?;
        let expected = intersection_numbers(q, 3, 2 * params.n)?;
        let support: Vec<u64> = hist.keys().copied().collect();
        // the two-intersection claim only applies to maximum scattered sets
        let ok = scattered.then(|| support == vec![expected.0, expected.1]);
        (
            Some(hist.into_iter().collect::<Vec<_>>()),
            ok,
            Some(expected),
        )
    } else {
        (None, None, None)
    };

    // a family construction must come out scattered; a custom spec only reports it
    let scattered_ok = spec.family == FamilyTag::Custom || scattered;
    let verdict = conditions_ok && scattered_ok && two_intersection_ok.unwrap_or(true);

    let om = ambient.omega();
    Ok(ScatteredReport {
        tool: TOOL.to_string(),
        p: params.p,
        h: params.h,
        n: params.n,
        q,
        modulus_q3n: ambient.k().modulus(),
        modulus_q2n: ambient.plane().modulus(),
        omega_enc: ambient.plane().encode(om.omega),
        omega_a_enc: ambient.k().encode(om.a_k),
        omega_b_enc: ambient.k().encode(om.b_k),
        family: spec.family.as_str().to_string(),
        i: spec.i,
        a_enc: spec.a.map(|a| ambient.k().encode(a)),
        b_enc: spec.b.map(|b| ambient.k().encode(b)),
        conditions,
        conditions_ok,
        u_size: q.pow(3 * params.n),
        rank: ls.rank,
        point_count: ls.points.len() as u64,
        expected_max_points: ls.expected_max_size(),
        weight_histogram,
        scattered,
        line_count: run_profile.then_some(line_count),
        line_histogram,
        expected_intersections: expected,
        two_intersection_ok,
        elapsed_ms: start.elapsed().as_millis(),
        verdict,
    })
}

/// Serialize the defining data of a spec to the key/value document format.
pub fn spec_document(spec: &LinearSetSpec) -> String {
    let ambient = &spec.ambient;
    let params = ambient.params();
    let k = ambient.k();
    let om = ambient.omega();
    let mut s = String::new();
    s.push_str("scatcap-spec v1\n");
    s.push_str(&format!("p {}\n", params.p));
    s.push_str(&format!("h {}\n", params.h));
    s.push_str(&format!("n {}\n", params.n));
    s.push_str(&format!("family {}\n", spec.family.as_str()));
    if let Some(i) = spec.i {
        s.push_str(&format!("i {i}\n"));
    }
    if let Some(a) = spec.a {
        s.push_str(&format!("a {}\n", k.encode(a)));
    }
    if let Some(b) = spec.b {
        s.push_str(&format!("b {}\n", k.encode(b)));
    }
    if spec.family == FamilyTag::Custom {
        let coeffs: Vec<String> = spec
            .f
            .q_coeffs()
            .into_iter()
            .map(|(i, c)| format!("{i}:{}", k.encode(c)))
            .collect();
        s.push_str(&format!("coeffs {}\n", coeffs.join(",")));
    }
    s.push_str(&format!("modulus_q3n {}\n", k.modulus()));
    s.push_str(&format!("modulus_q2n {}\n", ambient.plane().modulus()));
    s.push_str(&format!("omega {}\n", ambient.plane().encode(om.omega)));
    s.push_str(&format!("omega_a {}\n", k.encode(om.a_k)));
    s.push_str(&format!("omega_b {}\n", k.encode(om.b_k)));
    s
}

#[derive(Debug, Clone)]
pub struct ParsedSpecDoc {
    pub p: u32,
    pub h: u32,
    pub n: u32,
    pub family: FamilyTag,
    pub i: Option<u32>,
    pub a_enc: Option<u64>,
    pub b_enc: Option<u64>,
    pub coeffs: Vec<(u32, u64)>,
    pub modulus_q3n: u64,
    pub modulus_q2n: u64,
    pub omega_a_enc: Option<u64>,
    pub omega_b_enc: Option<u64>,
}

pub fn parse_spec_document(text: &str) -> Result<ParsedSpecDoc> {
    let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if idx == 0 {
            if !line.starts_with("scatcap-spec") {
                return Err(Error::Parse("not a scatcap spec document".into()));
            }
            continue;
        }
        let (key, value) = line
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("malformed line `{line}`")))?;
        kv.insert(key, value.trim());
    }
    let get = |k: &str| -> Result<&str> {
        kv.get(k)
            .copied()
            .ok_or_else(|| Error::Parse(format!("missing key `{k}`")))
    };
    let num = |k: &str| -> Result<u64> {
        get(k)?
            .parse::<u64>()
            .map_err(|e| Error::Parse(format!("bad `{k}`: {e}")))
    };
    let opt_num = |k: &str| -> Result<Option<u64>> {
        match kv.get(k) {
            None => Ok(None),
            Some(v) => v
                .parse::<u64>()
                .map(Some)
                .map_err(|e| Error::Parse(format!("bad `{k}`: {e}"))),
        }
    };
    let family: FamilyTag = get("family")?.parse()?;
    let mut coeffs = Vec::new();
    if let Some(raw) = kv.get("coeffs") {
        for piece in raw.split(',') {
            let (i, enc) = piece
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad coeffs entry `{piece}`")))?;
            coeffs.push((
                i.parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad coeff index: {e}")))?,
                enc.parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad coeff value: {e}")))?,
            ));
        }
    }
    Ok(ParsedSpecDoc {
        p: num("p")? as u32,
        h: num("h")? as u32,
        n: num("n")? as u32,
        family,
        i: opt_num("i")?.map(|v| v as u32),
        a_enc: opt_num("a")?,
        b_enc: opt_num("b")?,
        coeffs,
        modulus_q3n: num("modulus_q3n")?,
        modulus_q2n: num("modulus_q2n")?,
        omega_a_enc: opt_num("omega_a")?,
        omega_b_enc: opt_num("omega_b")?,
    })
}

/// Rebuild a runnable spec from a parsed document (honouring its moduli).
/// Returns warnings for non-canonical moduli or stale omega data; hypothesis
/// failures are left for the verification run to report.
pub fn rebuild_spec(doc: &ParsedSpecDoc, budget: &Budget) -> Result<(LinearSetSpec, Vec<String>)> {
    let params = TowerParams::new(doc.p, doc.h, doc.n)?;
    let mut warnings = Vec::new();
    let canon3 = poly::canonical_primitive_modulus(doc.p, params.deg_q3n());
    let canon2 = poly::canonical_primitive_modulus(doc.p, params.deg_q2n());
    if canon3 != doc.modulus_q3n || canon2 != doc.modulus_q2n {
        warnings.push(format!(
            "non-canonical moduli (canonical would be {canon3}/{canon2}); encodings honoured as written"
        ));
    }
    let ambient = PlaneAmbient::with_moduli(params, doc.modulus_q3n, doc.modulus_q2n, budget)?;
    let k = ambient.k();
    if let (Some(a), Some(b)) = (doc.omega_a_enc, doc.omega_b_enc) {
        let om = ambient.omega();
        if k.encode(om.a_k) != a || k.encode(om.b_k) != b {
            warnings.push("omega data in the document does not match the rebuilt omega".into());
        }
    }
    let h = params.h;
    let spec = match doc.family {
        FamilyTag::Monomial | FamilyTag::Family2 => {
            let i = doc
                .i
                .ok_or_else(|| Error::Parse("monomial spec needs `i`".into()))?;
            let a = k.decode(
                doc.a_enc
                    .ok_or_else(|| Error::Parse("monomial spec needs `a`".into()))?,
            )?;
            let f = LinPoly::monomial(k.clone(), h, i, a)?;
            LinearSetSpec {
                ambient: ambient.clone(),
                f,
                family: doc.family,
                i: Some(i),
                a: Some(a),
                b: None,
            }
        }
        FamilyTag::BinomialQ2 => {
            let b = k.decode(
                doc.b_enc
                    .ok_or_else(|| Error::Parse("binomial spec needs `b`".into()))?,
            )?;
            let f = LinPoly::binomial(k.clone(), h, params.n, 1, k.one(), b)?;
            LinearSetSpec {
                ambient: ambient.clone(),
                f,
                family: doc.family,
                i: Some(1),
                a: Some(k.one()),
                b: Some(b),
            }
        }
        FamilyTag::Custom => {
            let q_coeffs: Vec<(u32, crate::gf::Felt)> = doc
                .coeffs
                .iter()
                .map(|&(i, enc)| Ok((i, k.decode(enc)?)))
                .collect::<Result<Vec<_>>>()?;
            let f = LinPoly::from_q_powers(k.clone(), h, &q_coeffs)?;
            LinearSetSpec::custom(ambient.clone(), f)?
        }
    };
    Ok((spec, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linset::{build_family, FamilyParams};

    fn monomial_spec() -> LinearSetSpec {
        let params = TowerParams::new(2, 1, 2).unwrap();
        let ambient = PlaneAmbient::new(params, &Budget::default()).unwrap();
        let k = ambient.k();
        let a = k
            .elements()
            .skip(1)
            .find(|&a| {
                let nm = k.norm(a, 6, 3).unwrap();
                !k.in_subfield(nm, 1).unwrap()
            })
            .unwrap();
        build_family(ambient, FamilyParams::Monomial { i: 3, a }).unwrap()
    }

    #[test]
    fn report_for_the_monomial_family() {
        let spec = monomial_spec();
        let report = verify_scattered(&spec, &ReportOptions::default()).unwrap();
        assert!(report.verdict);
        assert!(report.scattered);
        assert_eq!(report.point_count, 63);
        assert_eq!(report.expected_max_points, 63);
        assert_eq!(report.weight_histogram, vec![(1, 63)]);
        assert_eq!(report.line_histogram, Some(vec![(3, 210), (7, 63)]));
        assert_eq!(report.two_intersection_ok, Some(true));
        let kv = report.to_kv();
        assert!(kv.contains("verdict pass"));
        assert!(kv.contains("points 63"));
        assert!(kv.contains("line_histogram 3:210 7:63"));
    }

    #[test]
    fn spec_document_round_trip() {
        let spec = monomial_spec();
        let doc_text = spec_document(&spec);
        let doc = parse_spec_document(&doc_text).unwrap();
        let (rebuilt, warnings) = rebuild_spec(&doc, &Budget::default()).unwrap();
        assert!(warnings.is_empty(), "{warnings:?}");
        let r1 = verify_scattered(&spec, &ReportOptions::default()).unwrap();
        let r2 = verify_scattered(&rebuilt, &ReportOptions::default()).unwrap();
        assert_eq!(r1.point_count, r2.point_count);
        assert_eq!(r1.weight_histogram, r2.weight_histogram);
        assert_eq!(r1.a_enc, r2.a_enc);
        // byte-identical re-serialization
        assert_eq!(doc_text, spec_document(&rebuilt));
    }

    #[test]
    fn custom_spec_documents_carry_coefficients() {
        let params = TowerParams::new(2, 1, 2).unwrap();
        let ambient = PlaneAmbient::new(params, &Budget::default()).unwrap();
        let f = LinPoly::identity(ambient.k().clone(), 1).unwrap();
        let spec = LinearSetSpec::custom(ambient, f).unwrap();
        let text = spec_document(&spec);
        assert!(text.contains("family custom"));
        assert!(text.contains("coeffs 0:1"));
        let (rebuilt, _) = rebuild_spec(&parse_spec_document(&text).unwrap(), &Budget::default())
            .unwrap();
        let report = verify_scattered(&rebuilt, &ReportOptions::default()).unwrap();
        assert!(!report.scattered);
        assert_eq!(report.point_count, 21);
        // custom specs make no scatteredness claim, so the verdict holds
        assert!(report.verdict);
    }

    #[test]
    fn binomial_spec_document_round_trip() {
        let params = TowerParams::new(2, 1, 3).unwrap();
        let ambient = PlaneAmbient::new(params, &Budget::default()).unwrap();
        let b = crate::linset::search_binomial_b(
            &ambient,
            1,
            ambient.k().one(),
            crate::linset::SearchMode::FirstHit,
        )
        .unwrap()[0];
        let spec = crate::linset::build_family(
            ambient,
            crate::linset::FamilyParams::BinomialQ2 { b },
        )
        .unwrap();
        let text = spec_document(&spec);
        let (rebuilt, warnings) =
            rebuild_spec(&parse_spec_document(&text).unwrap(), &Budget::default()).unwrap();
        assert!(warnings.is_empty());
        let rep = verify_scattered(&rebuilt, &ReportOptions::default()).unwrap();
        assert!(rep.verdict);
        assert_eq!(rep.point_count, 511);
        assert_eq!(text, spec_document(&rebuilt));
    }

    #[test]
    fn malformed_documents_error() {
        assert!(parse_spec_document("nonsense").is_err());
        assert!(parse_spec_document("scatcap-spec v1\np 2\n").is_err());
    }
}
