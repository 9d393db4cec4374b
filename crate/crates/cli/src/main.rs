//! `scatcap`: build and verify scattered linear sets and the complete caps
//! they generate.
//!
//! Exit codes: 0 all checks passed, 1 a verified property failed,
//! 2 usage/parse error, 3 budget or resource limit.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use scatcap_core::cap::{self, file as capfile, SeedFamily};
use scatcap_core::gf::{poly, FieldTower, TowerParams};
use scatcap_core::linset::{
    search_binomial_b, FamilyTag, LinPoly, LinearSetSpec, PlaneAmbient, SearchMode,
};
use scatcap_core::report::{
    self, parse_spec_document, rebuild_spec, spec_document, verify_scattered, ProfileMode,
    ReportOptions,
};
use scatcap_core::{Budget, Error};

#[derive(Parser)]
#[command(name = "scatcap", version, about = "Scattered linear sets and complete caps over finite fields", long_about = None)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect the canonical field tower for given parameters
    Fields {
        #[command(subcommand)]
        cmd: FieldsCmd,
    },
    /// Build or re-verify scattered linear sets in PG(2, q^{2n})
    Scattered {
        #[command(subcommand)]
        cmd: ScatteredCmd,
    },
    /// Search binomial coefficients b with f_{i,a,b}(x)/x outside F_{q^n}
    #[command(name = "search-b")]
    SearchB(SearchBArgs),
    /// Build or re-verify complete caps in AG(n, 2^t)
    Cap {
        #[command(subcommand)]
        cmd: CapCmd,
    },
    /// Rank bounds for maximum scattered linear sets of PG(r-1, q^t)
    Bounds(BoundsArgs),
}

#[derive(Args)]
struct BudgetArgs {
    /// log2 of the largest field table to build
    #[arg(long, default_value_t = 20)]
    max_field_log2: u32,
    /// log2 of the largest completeness bitmap
    #[arg(long, default_value_t = 28)]
    max_bitmap_log2: u32,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget::default()
            .with_field_elements(1u64 << self.max_field_log2.min(31))
            .with_bitmap_bits(1u64 << self.max_bitmap_log2.min(40))
    }
}

#[derive(Subcommand)]
enum FieldsCmd {
    /// Print moduli, generator, and the subfield lattice
    Info(FieldsInfoArgs),
}

#[derive(Args)]
struct FieldsInfoArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    h: u32,
    #[arg(long)]
    n: u32,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Subcommand)]
enum ScatteredCmd {
    /// Construct a family member and verify it exhaustively
    Build(ScatteredBuildArgs),
    /// Re-verify a previously emitted spec document
    Verify(ScatteredVerifyArgs),
}

#[derive(Args)]
struct ScatteredBuildArgs {
    /// monomial | family2 | binomial-q2 | custom
    #[arg(long)]
    family: String,
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    h: u32,
    #[arg(long)]
    n: u32,
    /// q-power index of the defining monomial
    #[arg(long)]
    i: Option<u32>,
    /// coefficient a (integer encoding in F_{q^{3n}}); first admissible if omitted
    #[arg(long)]
    a: Option<u64>,
    /// coefficient b for the binomial family; first-hit search if omitted
    #[arg(long)]
    b: Option<u64>,
    /// custom family: comma-separated q-power coefficients `i:enc`
    #[arg(long)]
    coeffs: Option<String>,
    /// force the line-intersection census even on large planes
    #[arg(long)]
    profile: bool,
    /// skip the line-intersection census
    #[arg(long, conflicts_with = "profile")]
    no_profile: bool,
    /// write `<out>.spec` and `<out>.report`
    #[arg(long)]
    out: Option<PathBuf>,
    /// emit the report as JSON instead of key/value lines
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct ScatteredVerifyArgs {
    /// spec document produced by `scattered build`
    spec: PathBuf,
    #[arg(long)]
    profile: bool,
    #[arg(long, conflicts_with = "profile")]
    no_profile: bool,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct SearchBArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    h: u32,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    i: u32,
    /// coefficient a (integer encoding), defaults to 1
    #[arg(long, default_value_t = 1)]
    a: u64,
    /// stop at the first admissible b
    #[arg(long)]
    first_hit: bool,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Subcommand)]
enum CapCmd {
    /// Run the full pipeline to a certified complete cap
    Build(CapBuildArgs),
    /// Re-verify a cap file from its contents alone
    Verify(CapVerifyArgs),
}

#[derive(Args)]
struct CapBuildArgs {
    /// affine dimension (even, >= 4)
    #[arg(long)]
    n: u32,
    /// field exponent: the cap lives over F_{2^t} (even, >= 4)
    #[arg(long)]
    t: u32,
    /// seed family: auto | monomial | binomial-q2
    #[arg(long, default_value = "auto")]
    family: String,
    /// output cap file (default `cap_n<n>_t<t>.cap`); certificate goes to `<out>.cert`
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct CapVerifyArgs {
    /// cap file to verify
    file: PathBuf,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    t: u32,
    /// also print the two-intersection sizes for this prime power
    #[arg(long)]
    q: Option<u64>,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) | Error::InvalidInput(_) | Error::NotPrime(_) | Error::NotADivisor { .. } => 2,
        Error::BudgetExceeded { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Fields { cmd: FieldsCmd::Info(args) } => fields_info(args),
        Cmd::Scattered { cmd: ScatteredCmd::Build(args) } => scattered_build(args),
        Cmd::Scattered { cmd: ScatteredCmd::Verify(args) } => scattered_verify(args),
        Cmd::SearchB(args) => search_b(args),
        Cmd::Cap { cmd: CapCmd::Build(args) } => cap_build(args),
        Cmd::Cap { cmd: CapCmd::Verify(args) } => cap_verify(args),
        Cmd::Bounds(args) => bounds(args),
    }
}

fn fields_info(args: FieldsInfoArgs) -> Result<u8, Error> {
    let budget = args.budget.budget();
    let params = TowerParams::new(args.p, args.h, args.n)?;
    println!("tower {params}");
    println!("top_degree {}", params.top_degree());
    match FieldTower::build(params, &budget) {
        Ok(tower) => {
            let f = tower.field();
            println!("top_order {}", f.order());
            println!("modulus {} # {}", f.modulus(), f.modulus_pretty());
            println!("generator_enc {}", f.encode(f.generator()));
            println!("subfields:");
            for d in f.degree_divisors() {
                println!(
                    "  degree {d} order {} cofactor {}",
                    poly::checked_pow(args.p as u64, d).unwrap(),
                    tower.subfield_index(d)?
                );
            }
            let omega = tower.canonical_omega()?;
            let (a, b) = tower.omega_min_poly(omega)?;
            println!(
                "omega_enc {} omega_a {} omega_b {}",
                f.encode(omega),
                f.encode(a),
                f.encode(b)
            );
        }
        Err(Error::BudgetExceeded { needed, allowed, .. }) => {
            println!("top_order exceeds budget ({needed} > {allowed}); split fields below");
        }
        Err(e) => return Err(e),
    }
    // the fields the linear-set machinery actually tabulates
    let ambient = PlaneAmbient::new(params, &budget)?;
    let k = ambient.k();
    let pl = ambient.plane();
    println!("field_q3n degree {} order {} modulus {} # {}", k.degree(), k.order(), k.modulus(), k.modulus_pretty());
    println!("field_q2n degree {} order {} modulus {} # {}", pl.degree(), pl.order(), pl.modulus(), pl.modulus_pretty());
    let om = ambient.omega();
    println!(
        "plane_omega_enc {} omega_a_enc {} omega_b_enc {}",
        pl.encode(om.omega),
        k.encode(om.a_k),
        k.encode(om.b_k)
    );
    Ok(0)
}

/// First monomial-family coefficient admissible for the given ambient.
fn first_monomial_a(ambient: &PlaneAmbient) -> Result<scatcap_core::gf::Felt, Error> {
    let params = ambient.params();
    let k = ambient.k();
    for l in 0..k.group_order() {
        let a = k.felt_from_log(l);
        let nm = k.norm(a, params.deg_q3n(), 3 * params.h)?;
        if !k.in_subfield(nm, params.deg_q())? {
            return Ok(a);
        }
    }
    Err(Error::InvalidInput("no admissible a exists".into()))
}

fn first_family2_a(ambient: &PlaneAmbient, i: u32) -> Result<scatcap_core::gf::Felt, Error> {
    let k = ambient.k();
    for l in 0..k.group_order() {
        let a = k.felt_from_log(l);
        if scatcap_core::linset::check_family2_conditions(ambient, i, a)?.all_passed() {
            return Ok(a);
        }
    }
    Err(Error::InvalidInput("no admissible a exists".into()))
}

fn profile_mode(force: bool, skip: bool) -> ProfileMode {
    if force {
        ProfileMode::Force
    } else if skip {
        ProfileMode::Skip
    } else {
        ProfileMode::Auto
    }
}

fn scattered_build(args: ScatteredBuildArgs) -> Result<u8, Error> {
    let budget = args.budget.budget();
    let family: FamilyTag = args.family.parse()?;
    let params = TowerParams::new(args.p, args.h, args.n)?;
    let ambient = PlaneAmbient::new(params, &budget)?;
    let k = ambient.k().clone();

    let spec = match family {
        FamilyTag::Monomial | FamilyTag::Family2 => {
            let i = args.i.unwrap_or(if family == FamilyTag::Monomial { 3 } else { 1 });
            let a = match args.a {
                Some(enc) => k.decode(enc)?,
                None => {
                    if family == FamilyTag::Monomial {
                        first_monomial_a(&ambient)?
                    } else {
                        first_family2_a(&ambient, i)?
                    }
                }
            };
            let f = LinPoly::monomial(k.clone(), params.h, i, a)?;
            LinearSetSpec {
                ambient: ambient.clone(),
                f,
                family,
                i: Some(i),
                a: Some(a),
                b: None,
            }
        }
        FamilyTag::BinomialQ2 => {
            let b = match args.b {
                Some(enc) => k.decode(enc)?,
                None => *search_binomial_b(&ambient, 1, k.one(), SearchMode::FirstHit)?
                    .first()
                    .ok_or_else(|| Error::ConditionsFailed("no admissible b found".into()))?,
            };
            let f = LinPoly::binomial(k.clone(), params.h, params.n, 1, k.one(), b)?;
            LinearSetSpec {
                ambient: ambient.clone(),
                f,
                family,
                i: Some(1),
                a: Some(k.one()),
                b: Some(b),
            }
        }
        FamilyTag::Custom => {
            let raw = args
                .coeffs
                .as_deref()
                .ok_or_else(|| Error::InvalidInput("--family custom needs --coeffs".into()))?;
            let mut q_coeffs = Vec::new();
            for piece in raw.split(',') {
                let (i, enc) = piece
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("bad coeffs entry `{piece}`")))?;
                let i: u32 = i.parse().map_err(|e| Error::Parse(format!("bad index: {e}")))?;
                let enc: u64 = enc.parse().map_err(|e| Error::Parse(format!("bad value: {e}")))?;
                q_coeffs.push((i, k.decode(enc)?));
            }
            let f = LinPoly::from_q_powers(k.clone(), params.h, &q_coeffs)?;
            LinearSetSpec::custom(ambient.clone(), f)?
        }
    };

    let opts = ReportOptions {
        profile: profile_mode(args.profile, args.no_profile),
        ..ReportOptions::default()
    };
    let rep = verify_scattered(&spec, &opts)?;
    emit_scattered(&rep, args.json)?;
    if let Some(out) = &args.out {
        let spec_path = out.with_extension("spec");
        let report_path = out.with_extension("report");
        std::fs::write(&spec_path, spec_document(&spec))?;
        std::fs::write(&report_path, rep.to_kv())?;
        eprintln!("wrote {} and {}", spec_path.display(), report_path.display());
    }
    Ok(if rep.verdict { 0 } else { 1 })
}

fn emit_scattered(rep: &report::ScatteredReport, json: bool) -> Result<(), Error> {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(rep)
                .map_err(|e| Error::Parse(format!("json: {e}")))?
        );
    } else {
        print!("{}", rep.to_kv());
    }
    Ok(())
}

fn scattered_verify(args: ScatteredVerifyArgs) -> Result<u8, Error> {
    let budget = args.budget.budget();
    let text = std::fs::read_to_string(&args.spec)?;
    let doc = parse_spec_document(&text)?;
    let (spec, warnings) = rebuild_spec(&doc, &budget)?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let opts = ReportOptions {
        profile: profile_mode(args.profile, args.no_profile),
        ..ReportOptions::default()
    };
    let rep = verify_scattered(&spec, &opts)?;
    emit_scattered(&rep, args.json)?;
    Ok(if rep.verdict { 0 } else { 1 })
}

fn search_b(args: SearchBArgs) -> Result<u8, Error> {
    let budget = args.budget.budget();
    let params = TowerParams::new(args.p, args.h, args.n)?;
    let ambient = PlaneAmbient::new(params, &budget)?;
    let k = ambient.k();
    let a = k.decode(args.a)?;
    let mode = if args.first_hit {
        SearchMode::FirstHit
    } else {
        SearchMode::Exhaustive
    };
    let found = search_binomial_b(&ambient, args.i, a, mode)?;
    let encs: Vec<u64> = found.iter().map(|&b| k.encode(b)).collect();
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "p": args.p, "h": args.h, "n": args.n, "i": args.i, "a": args.a,
                "mode": if args.first_hit { "first-hit" } else { "exhaustive" },
                "count": encs.len(),
                "b_values": encs.iter().take(10).collect::<Vec<_>>(),
            })
        );
    } else {
        println!("search-b p={} h={} n={} i={} a={}", args.p, args.h, args.n, args.i, args.a);
        println!("count {}", encs.len());
        let preview: Vec<String> = encs.iter().take(10).map(|e| e.to_string()).collect();
        println!("b_values {}", preview.join(" "));
        if encs.len() > 10 {
            println!("# showing the first 10 of {}", encs.len());
        }
    }
    Ok(0)
}

fn cap_build(args: CapBuildArgs) -> Result<u8, Error> {
    let budget = args.budget.budget();
    let family: SeedFamily = args.family.parse()?;
    let (cap, cert) = cap::build_complete_cap(args.n, args.t, family, &budget)?;
    let out = args
        .out
        .unwrap_or_else(|| PathBuf::from(format!("cap_n{}_t{}.cap", args.n, args.t)));
    std::fs::write(&out, capfile::cap_to_string(&cap))?;
    let cert_path = out.with_extension("cap.cert");
    std::fs::write(&cert_path, cert.to_kv())?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&cert).map_err(|e| Error::Parse(format!("json: {e}")))?
        );
    } else {
        print!("{}", cert.to_kv());
    }
    eprintln!("wrote {} and {}", out.display(), cert_path.display());
    Ok(if cert.is_complete == Some(true) { 0 } else { 1 })
}

fn cap_verify(args: CapVerifyArgs) -> Result<u8, Error> {
    let budget = args.budget.budget();
    let text = std::fs::read_to_string(&args.file)?;
    let cf = capfile::parse_cap(&text)?;
    let outcome = capfile::verify_cap_file(&cf, &budget)?;
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    let cert = &outcome.certificate;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(cert).map_err(|e| Error::Parse(format!("json: {e}")))?
        );
    } else {
        print!("{}", cert.to_kv());
    }
    Ok(if cert.is_cap && cert.is_complete == Some(true) {
        0
    } else {
        1
    })
}

fn bounds(args: BoundsArgs) -> Result<u8, Error> {
    let (lo, hi) = scatcap_core::linset::rank_bounds(args.r, args.t)?;
    println!("r {} t {}", args.r, args.t);
    println!("max_scattered_rank_lower {lo}");
    println!("max_scattered_rank_upper {hi}");
    if let Some(q) = args.q {
        if (args.r * args.t).is_multiple_of(2) {
            let (t1, t2) = scatcap_core::linset::intersection_numbers(q, args.r, args.t)?;
            println!("two_intersection_sizes {t1} {t2}");
        }
    }
    Ok(0)
}
