//! Subcommands, flags and report rendering.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::analysis::{analyze, Analysis, Options, Stages};
use crate::cli::bimodule::parse_bimodule;
use crate::cli::parse::{parse, AlgebraFile};
use crate::corpus;
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldSpec, Fp, Rationals};
use crate::gorenstein::{CatalogVerdict, GorensteinStatus};
use crate::morita::{check_frobenius_bimodule, check_semt, check_unit_counit_pd, compare_invariants, SplitProduct};
use crate::presentation::FiniteDimAlgebra;
use crate::rep::{Alg, Representation};

#[derive(Debug, Parser)]
#[command(name = "gorenstein-k", version, about = "Gorenstein projectives and Gorenstein K-groups of quiver algebras")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Longest path length tried when proving the ideal admissible.
    #[arg(long, global = true)]
    pub max_len: Option<usize>,
    /// Total dimension cap for catalog modules (default 64 · dim A).
    #[arg(long, global = true)]
    pub dim_cap: Option<usize>,
    /// Closure rounds for the catalog.
    #[arg(long, global = true)]
    pub iter_cap: Option<usize>,
    /// Seed for sampled steps (default: the file's `option seed`, else 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Override the field: a prime p for GF(p), or QQ.
    #[arg(long, global = true, value_name = "p")]
    pub field: Option<String>,
    /// Search bound for homological dimensions.
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    /// Summand count bounding the oracle's object universe.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimensions, catalog, K0, K1 and the oracle cross-check.
    Analyze { file: PathBuf },
    /// Dimension report and Gorenstein projective catalog.
    Gp { file: PathBuf },
    /// Gorenstein K0 from harvested sequences.
    K0 { file: PathBuf },
    /// Gorenstein K1 from the stable endomorphism ring.
    K1 { file: PathBuf },
    /// K0 by S_2 enumeration over a finite model, compared with `k0`.
    #[command(name = "oracle-k0")]
    OracleK0 { file: PathBuf },
    /// Invariants of two algebras side by side.
    Compare { a: PathBuf, b: PathBuf },
    /// Check bimodules M over (B, A) and N over (A, B) for a stable
    /// equivalence of Morita type.
    Semt { a: PathBuf, b: PathBuf, m: PathBuf, n: PathBuf },
}

/// Exit code and rendered output of one command.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

/// Read an algebra file; a missing path that names a shipped algebra
/// (`kx2`, `example61A.alg`, ...) loads the embedded copy.
pub fn load_file(path: &Path) -> Result<AlgebraFile> {
    if path.exists() {
        return parse(&std::fs::read_to_string(path)?);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
    match corpus::text(stem) {
        Some(t) if path.parent().is_none_or(|p| p.as_os_str().is_empty()) => parse(t),
        _ => Err(Error::Io(std::io::Error::new(std::io::ErrorKind::NotFound, format!("{}", path.display())))),
    }
}

fn field_of(file: &AlgebraFile, flags: &Flags) -> Result<FieldSpec> {
    match flags.field.as_deref() {
        None => Ok(file.field),
        Some("QQ" | "Q" | "0") => Ok(FieldSpec::rationals()),
        Some(p) => {
            let p: u64 = p.trim_start_matches("GF(").trim_end_matches(')').parse().map_err(|_| {
                Error::InvalidField(format!("'{p}' is neither a prime nor QQ"))
            })?;
            FieldSpec::prime(p)
        }
    }
}

fn options(file: &AlgebraFile, flags: &Flags) -> Options {
    let d = Options::default();
    let opt = |k: &str| file.option(k).map(|v| v.max(0) as usize);
    Options {
        bound: flags.bound.or(opt("bound")).unwrap_or(d.bound),
        dim_cap: flags.dim_cap.or(opt("dim_cap")),
        iter_cap: flags.iter_cap.or(opt("iter_cap")).unwrap_or(d.iter_cap),
        seed: flags.seed.unwrap_or(file.seed()),
        depth: flags.depth.or(opt("depth")).unwrap_or(d.depth),
    }
}

fn build<F: Field>(file: &AlgebraFile, field: F, flags: &Flags) -> Result<Alg<F>> {
    Ok(Arc::new(file.build(field, flags.max_len.unwrap_or(file.max_len()))?))
}

pub fn main_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = run(&cli);
    if out.code == 1 {
        eprint!("{}", out.output);
    } else {
        print!("{}", out.output);
    }
    out.code
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(o) => o,
        Err(e) => {
            let code = if matches!(e, Error::CatalogUnknown(_)) { 2 } else { 1 };
            let output = if cli.flags.json {
                format!("{}\n", json!({ "error": e.to_string() }))
            } else {
                format!("error: {e}\n")
            };
            Outcome { code, output }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let flags = &cli.flags;
    match &cli.command {
        Command::Analyze { file } => single(file, flags, Stages::all()),
        Command::Gp { file } => single(file, flags, Stages { catalog: true, ..Stages::default() }),
        Command::K0 { file } => single(file, flags, Stages { catalog: true, k0: true, ..Stages::default() }),
        Command::K1 { file } => single(file, flags, Stages { catalog: true, k1: true, ..Stages::default() }),
        Command::OracleK0 { file } => {
            single(file, flags, Stages { catalog: true, k0: true, oracle: true, ..Stages::default() })
        }
        Command::Compare { a, b } => {
            let (fa, fb) = (load_file(a)?, load_file(b)?);
            let (pa, pb) = (field_of(&fa, flags)?, field_of(&fb, flags)?);
            if pa != pb {
                return Err(Error::InvalidField(format!("{} is over {pa}, {} over {pb}", fa.name, fb.name)));
            }
            let opts = options(&fa, flags);
            if pa.is_finite() {
                let f = Fp::new(pa.characteristic);
                compare(&build(&fa, f, flags)?, &build(&fb, f, flags)?, &opts, flags)
            } else {
                compare(&build(&fa, Rationals, flags)?, &build(&fb, Rationals, flags)?, &opts, flags)
            }
        }
        Command::Semt { a, b, m, n } => {
            let (fa, fb) = (load_file(a)?, load_file(b)?);
            let (pa, pb) = (field_of(&fa, flags)?, field_of(&fb, flags)?);
            if pa != pb {
                return Err(Error::InvalidField(format!("{} is over {pa}, {} over {pb}", fa.name, fb.name)));
            }
            let (tm, tn) = (std::fs::read_to_string(m)?, std::fs::read_to_string(n)?);
            if pa.is_finite() {
                let f = Fp::new(pa.characteristic);
                semt(&build(&fa, f, flags)?, &build(&fb, f, flags)?, &tm, &tn, flags)
            } else {
                semt(&build(&fa, Rationals, flags)?, &build(&fb, Rationals, flags)?, &tm, &tn, flags)
            }
        }
    }
}

fn single(path: &Path, flags: &Flags, stages: Stages) -> Result<Outcome> {
    let file = load_file(path)?;
    let spec = field_of(&file, flags)?;
    let opts = options(&file, flags);
    if spec.is_finite() {
        report(&analyze(&build(&file, Fp::new(spec.characteristic), flags)?, &opts, stages)?, flags)
    } else {
        report(&analyze(&build(&file, Rationals, flags)?, &opts, stages)?, flags)
    }
}

fn report<F: Field>(an: &Analysis<F>, flags: &Flags) -> Result<Outcome> {
    let unknown = an.is_unknown() || an.report.is_gorenstein == GorensteinStatus::Unknown;
    let code = if unknown { 2 } else { 0 };
    let output = if flags.json { format!("{:#}\n", an.to_json()) } else { render(an) };
    Ok(Outcome { code, output })
}

fn render<F: Field>(an: &Analysis<F>) -> String {
    let s = &an.summary;
    let r = &an.report;
    let mut o = String::new();
    let _ = writeln!(
        o,
        "algebra {} over {}: {} vertices, {} arrows, dimension {}, Loewy length {}",
        s.name,
        s.field,
        s.vertices.len(),
        s.arrows.len(),
        s.dim,
        s.loewy_length
    );
    let pds: Vec<String> = r.proj_dims.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(o, "pd of simples: [{}]; global dimension {}", pds.join(", "), r.global_dim);
    let _ = writeln!(
        o,
        "self-injective dimensions: left {}, right {}",
        r.self_inj_dim_left, r.self_inj_dim_right
    );
    let g = match r.is_gorenstein {
        GorensteinStatus::Yes(d) => format!("yes, dimension {d}"),
        GorensteinStatus::NoWithinBound => format!("no finite self-injective dimension up to {}", r.bound),
        GorensteinStatus::Unknown => "unknown".into(),
    };
    let _ = writeln!(o, "Iwanaga-Gorenstein: {g}");
    if let Some(c) = an.catalog_summary() {
        let v = match &c.verdict {
            CatalogVerdict::CMFree => "CM-free".to_string(),
            CatalogVerdict::CMFinite => "CM-finite".to_string(),
            CatalogVerdict::Unknown(why) => format!("unknown ({why})"),
        };
        let _ = writeln!(o, "GP catalog: {v}, {} indecomposable non-projective class(es)", c.items.len());
        for (i, it) in c.items.iter().enumerate() {
            let _ = writeln!(o, "  G{i}: dimension vector {:?}", it.dims);
        }
    }
    if let Some(k0) = &an.k0 {
        let _ = writeln!(o, "K0^G = {} ({} relations harvested)", k0.group, k0.relations.len());
    }
    if let Some(k1) = &an.k1 {
        match &k1.group {
            Some(g) => {
                let _ = writeln!(o, "K1^G = {g} (stable End of dimension {})", k1.stable_end_dim);
            }
            None => {
                let _ = writeln!(o, "K1^G not determined");
            }
        }
    }
    if let Some(or) = &an.oracle {
        let agree = match an.oracle_agreement() {
            Some(true) => "agrees",
            Some(false) => "DISAGREES",
            None => "not compared",
        };
        let _ = writeln!(o, "oracle K0 = {or} ({agree})");
    }
    for w in &an.warnings {
        let _ = writeln!(o, "warning: {w}");
    }
    o
}

fn compare<F: Field>(a: &Alg<F>, b: &Alg<F>, opts: &Options, flags: &Flags) -> Result<Outcome>
where
    F::Elem: Send + Sync,
{
    let c = compare_invariants(a, b, opts)?;
    let output = if flags.json {
        let mut v = serde_json::to_value(&c).expect("serializable");
        v["all_equal"] = Value::from(c.all_equal());
        format!("{v:#}\n")
    } else {
        let mut o = String::new();
        let show = |g: &Option<crate::exactla::AbelianGroupDescription>| {
            g.as_ref().map(|g| g.to_string()).unwrap_or_else(|| "?".into())
        };
        let flag = |x: Option<bool>| match x {
            Some(true) => "equal",
            Some(false) => "DIFFERENT",
            None => "unknown",
        };
        let _ = writeln!(o, "{:<12} {:>16} {:>16}", "", c.left.algebra, c.right.algebra);
        let _ = writeln!(o, "{:<12} {:>16} {:>16}  {}", "K0^G", show(&c.left.k0), show(&c.right.k0), flag(c.k0_equal));
        let _ = writeln!(o, "{:<12} {:>16} {:>16}  {}", "K1^G", show(&c.left.k1), show(&c.right.k1), flag(c.k1_equal));
        let cm = |v: &CatalogVerdict| match v {
            CatalogVerdict::CMFree => "CM-free".to_string(),
            CatalogVerdict::CMFinite => "CM-finite".to_string(),
            CatalogVerdict::Unknown(_) => "unknown".to_string(),
        };
        let _ = writeln!(o, "{:<12} {:>16} {:>16}  {}", "CM", cm(&c.left.cm), cm(&c.right.cm), flag(Some(c.cm_equal)));
        let _ = writeln!(
            o,
            "{:<12} {:>16} {:>16}  {}",
            "GP classes",
            c.left.gp_classes,
            c.right.gp_classes,
            flag(Some(c.gp_classes_equal))
        );
        let gs = |g: GorensteinStatus| match g {
            GorensteinStatus::Yes(d) => format!("yes ({d})"),
            GorensteinStatus::NoWithinBound => "no".into(),
            GorensteinStatus::Unknown => "unknown".into(),
        };
        let _ = writeln!(
            o,
            "{:<12} {:>16} {:>16}  {}",
            "Gorenstein",
            gs(c.left.gorenstein),
            gs(c.right.gorenstein),
            flag(Some(c.gorenstein_equal))
        );
        let _ = writeln!(o, "all invariants equal: {}", c.all_equal());
        for w in &c.warnings {
            let _ = writeln!(o, "warning: {w}");
        }
        o
    };
    Ok(Outcome { code: 0, output })
}

fn split_json<F: Field>(s: &SplitProduct<F>) -> Value {
    json!({
        "passed": s.passed(),
        "regular_found": s.regular_found,
        "complement_projective": s.complement_projective,
        "complement_dim": s.complement().total_dim(),
        "witness": s.witness,
    })
}

/// Projectives and simples of an algebra: the default test modules.
fn sample_modules<F: Field>(a: &Alg<F>) -> Vec<Representation<F>> {
    (0..a.vertex_count())
        .flat_map(|v| [Representation::projective(a, v), Representation::simple(a, v)])
        .collect()
}

fn semt<F: Field>(a: &Alg<F>, b: &Alg<F>, tm: &str, tn: &str, flags: &Flags) -> Result<Outcome> {
    let m = parse_bimodule(tm)?.build(b, a)?;
    let n = parse_bimodule(tn)?.build(a, b)?;
    let rep = check_semt(&m, &n)?;
    let uc = check_unit_counit_pd(&m, &n, &sample_modules(a), &sample_modules(b))?;
    let fm = check_frobenius_bimodule(&m)?;
    let fneg = check_frobenius_bimodule(&n)?;
    let passed = rep.passed() && uc.passed();
    let output = if flags.json {
        let v = json!({
            "algebras": [a.name(), b.name()],
            "semt": { "passed": rep.passed(), "n_tensor_m": split_json(&rep.left), "m_tensor_n": split_json(&rep.right) },
            "unit_counit": uc,
            "frobenius": { "m": fm, "n": fneg },
            "passed": passed,
        });
        format!("{v:#}\n")
    } else {
        let mut o = String::new();
        let _ = writeln!(o, "N⊗M ≅ A ⊕ P: {}", if rep.left.passed() { "yes" } else { "no" });
        let _ = writeln!(o, "M⊗N ≅ B ⊕ Q: {}", if rep.right.passed() { "yes" } else { "no" });
        for w in rep.witnesses() {
            let _ = writeln!(o, "  witness: {w}");
        }
        let bad = uc.unit.iter().chain(&uc.counit).filter(|c| !c.passed()).count();
        let _ = writeln!(
            o,
            "unit/counit: {} samples, {} with a non-projective or mismatched cokernel/kernel",
            uc.unit.len() + uc.counit.len(),
            bad
        );
        let _ = writeln!(o, "M Frobenius: {}; N Frobenius: {}", fm.is_frobenius, fneg.is_frobenius);
        let _ = writeln!(o, "stable equivalence of Morita type: {}", if passed { "verified" } else { "not verified" });
        o
    };
    Ok(Outcome { code: 0, output })
}

/// `FiniteDimAlgebra` over `GF(p)` from a path or a shipped name.
pub fn load_algebra(path: &Path, p: Option<u64>, max_len: Option<usize>) -> Result<Alg<Fp>> {
    let file = load_file(path)?;
    let p = p.unwrap_or(file.field.characteristic);
    let spec = FieldSpec::prime(p)?;
    let a: FiniteDimAlgebra<Fp> = file.build(Fp::new(spec.characteristic), max_len.unwrap_or(file.max_len()))?;
    Ok(Arc::new(a))
}
