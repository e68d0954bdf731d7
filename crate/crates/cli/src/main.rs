//! `springer`: JSON front end to springer-core.
//!
//! Exit codes: 0 on success, 1 on a domain error (or a failed
//! `verify-all`), 2 on a usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use springer_core::block_getzler::{
    build_bg_complex, cyclic_ranks, dg_cohomology, hh_ranks, BgMode, BgParams, CyclicVariant, DgAlgebraSpec,
    DgWindow, GradedAlgebra,
};
use springer_core::dl_params::{enumerate_gln, sl2_table, Eigenvalue, EigenvalueData, Lambda, QValue};
use springer_core::exact_arith::parse_rational;
use springer_core::gln_blocks::{block_decompose, enumerate_types, InertialTypeSpec};
use springer_core::hecke::{HeckeElement, HeckeJson, Specialization};
use springer_core::root_weyl::{load_datum, ElementJson, RootDatum};
use springer_core::steinberg_sl2::{hecke_model_check, QConvention};
use springer_core::verify;

#[derive(Parser)]
#[command(name = "springer", version, about = "Affine Hecke algebras, Block-Getzler homology and Langlands parameter tables")]
struct Cli {
    /// Directory searched first for root datum presets.
    #[arg(long, global = true, value_name = "DIR")]
    data_dir: Option<PathBuf>,
    /// Write the JSON result to FILE instead of standard output ("-").
    #[arg(long = "json", global = true, value_name = "FILE|-", default_value = "-")]
    json_out: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extended affine Weyl group operations.
    #[command(subcommand)]
    Weyl(WeylCmd),
    /// Affine Hecke algebra operations.
    #[command(subcommand)]
    Hecke(HeckeCmd),
    /// Hochschild and cyclic homology ranks.
    #[command(subcommand)]
    Hh(HhCmd),
    /// The SL2 Steinberg localization model.
    #[command(subcommand)]
    Steinberg(SteinbergCmd),
    /// Deligne-Langlands parameters.
    #[command(subcommand)]
    Params(ParamsCmd),
    /// GL_n inertial types and block descriptors.
    #[command(subcommand)]
    Blocks(BlocksCmd),
    /// Run every acceptance check and print a pass/fail table.
    VerifyAll {
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Also write results.json into this directory.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct DatumArg {
    #[arg(long)]
    datum: String,
}

#[derive(Subcommand)]
enum WeylCmd {
    /// Length of an element `{"lambda": [..], "word": [..]}`.
    Length {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        element: String,
    },
    /// Product of two elements.
    Multiply {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Reduced word in the affine simple reflections and the Ω part.
    ReducedWord {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        element: String,
    },
}

#[derive(Subcommand)]
enum HeckeCmd {
    /// Product of two Hecke elements (JSON text, a file, or "-" for stdin).
    Mul {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Inverse of the basis element T_x.
    Invert {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        element: String,
    },
    /// Bernstein element θ_λ in the T basis.
    Theta {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        lambda: Vec<i64>,
    },
    /// Symmetrized Bernstein sum z_λ for dominant λ.
    Center {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        lambda: Vec<i64>,
    },
    /// Specialize at a rational value of q (or of v with --at-v).
    Specialize {
        #[arg(long)]
        element: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        at_v: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Equivariant,
    Plain,
    Twisted,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Hh,
    Negative,
    Periodic,
}

#[derive(Subcommand)]
enum HhCmd {
    /// Block-Getzler complex of Sym(h*[-2]).
    Bg {
        #[arg(long, default_value = "sym_h")]
        algebra: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(long, value_enum, default_value = "plain")]
        mode: Mode,
        /// Twist parameter (twisted mode only).
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// Simplicial bound.
        #[arg(long = "N", default_value_t = 6)]
        n_max: usize,
        /// Weight window.
        #[arg(long, default_value_t = 4)]
        window: i64,
        /// z-powers -k..k in equivariant mode.
        #[arg(long, default_value_t = 2)]
        z_window: i64,
        #[arg(long, value_enum, default_value = "hh")]
        variant: Variant,
        #[arg(long, default_value_t = 3)]
        u_bound: usize,
    },
    /// Cohomology of a free dg algebra given as JSON.
    Dg {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = -2, allow_negative_numbers = true)]
        min_degree: i64,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        max_degree: i64,
        #[arg(long, default_value_t = 5)]
        max_weight: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    A,
    B,
}

#[derive(Subcommand)]
enum SteinbergCmd {
    /// Check every identity of the model and report each one.
    VerifySl2 {
        #[arg(long, value_enum, default_value = "a")]
        q_convention: Convention,
    },
}

#[derive(Subcommand)]
enum ParamsCmd {
    /// Multisegments for GL_n.
    Enumerate {
        #[arg(long, default_value = "GLn")]
        group: String,
        #[arg(long)]
        n: usize,
        /// Number of unlabeled eigenvalue q-orbits.
        #[arg(long, conflicts_with = "eigenvalues")]
        orbits: Option<usize>,
        /// Explicit eigenvalues, e.g. "a,a*q,b".
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eigenvalues: Vec<String>,
        #[arg(long, default_value = "generic", allow_hyphen_values = true)]
        q: String,
    },
    /// Rows of the SL2 table for a given λ and q.
    Sl2Table {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "generic", allow_hyphen_values = true)]
        q: String,
    },
}

#[derive(Subcommand)]
enum BlocksCmd {
    /// Hecke and moduli factorization of an inertial type.
    Decompose {
        #[arg(long)]
        n: Option<usize>,
        /// JSON file with `{"n": .., "entries": [..]}`, or "trivial".
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value = "q")]
        q: String,
    },
    /// All types of GL_n built from a catalog of (d, r) shapes.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        catalog: PathBuf,
    },
}

/// Domain errors exit with 1; anything clap rejects exits with 2 on its own.
fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome { value, ok }) => {
            if let Err(e) = emit(&cli.json_out, &value) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

struct Outcome {
    value: Value,
    ok: bool,
}

impl From<Value> for Outcome {
    fn from(value: Value) -> Self {
        Outcome { value, ok: true }
    }
}

fn emit(target: &str, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    if target == "-" {
        use std::io::Write;
        match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
            _ => {}
        }
    } else {
        std::fs::write(target, text + "\n").with_context(|| format!("writing {target}"))?;
    }
    Ok(())
}

/// Inline JSON, `-` for standard input, or a path.
fn read_json_arg(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        return std::io::read_to_string(std::io::stdin()).context("reading standard input");
    }
    std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
}

fn parse_arg<T: for<'de> Deserialize<'de>>(arg: &str) -> Result<T> {
    let text = read_json_arg(arg)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {arg}"))
}

fn datum(cli: &Cli, name: &str) -> Result<Arc<RootDatum>> {
    Ok(load_datum(name, cli.data_dir.as_deref())?)
}

fn hecke_arg(cli: &Cli, arg: &str) -> Result<HeckeElement> {
    let j: HeckeJson = parse_arg(arg)?;
    Ok(HeckeElement::from_json(&j, cli.data_dir.as_deref())?)
}

fn run(cli: &Cli) -> Result<Outcome> {
    Ok(match &cli.command {
        Command::Weyl(c) => weyl(cli, c)?.into(),
        Command::Hecke(c) => hecke(cli, c)?.into(),
        Command::Hh(c) => hh(c)?.into(),
        Command::Steinberg(SteinbergCmd::VerifySl2 { q_convention }) => {
            let conv = match q_convention {
                Convention::A => QConvention::A,
                Convention::B => QConvention::B,
            };
            let report = hecke_model_check(conv)?;
            let mut out = serde_json::Map::new();
            for c in &report.checks {
                out.insert(c.name.clone(), json!(if c.passed { "pass" } else { "fail" }));
            }
            out.insert("all_passed".into(), json!(report.all_passed));
            out.insert("report".into(), serde_json::to_value(&report)?);
            Outcome { value: Value::Object(out), ok: report.all_passed }
        }
        Command::Params(c) => params(c)?.into(),
        Command::Blocks(c) => blocks(c)?.into(),
        Command::VerifyAll { threads, out } => verify_all(*threads, out.as_deref())?,
    })
}

fn weyl(cli: &Cli, c: &WeylCmd) -> Result<Value> {
    Ok(match c {
        WeylCmd::Length { datum: d, element } => {
            let d = datum(cli, &d.datum)?;
            let x = d.parse_element(&parse_arg::<ElementJson>(element)?)?;
            json!({ "length": d.length(&x) })
        }
        WeylCmd::Multiply { datum: d, left, right } => {
            let d = datum(cli, &d.datum)?;
            let a = d.parse_element(&parse_arg::<ElementJson>(left)?)?;
            let b = d.parse_element(&parse_arg::<ElementJson>(right)?)?;
            serde_json::to_value(d.element_json(&d.wa_multiply(&a, &b)?))?
        }
        WeylCmd::ReducedWord { datum: d, element } => {
            let d = datum(cli, &d.datum)?;
            let x = d.parse_element(&parse_arg::<ElementJson>(element)?)?;
            let r = d.reduced_word(&x);
            json!({ "omega": d.element_json(&r.omega), "word": r.word, "length": d.length(&x) })
        }
    })
}

fn hecke(cli: &Cli, c: &HeckeCmd) -> Result<Value> {
    Ok(match c {
        HeckeCmd::Mul { left, right } => {
            let a = hecke_arg(cli, left)?;
            let b = hecke_arg(cli, right)?;
            serde_json::to_value(a.mul(&b)?.to_json())?
        }
        HeckeCmd::Invert { datum: d, element } => {
            let d = datum(cli, &d.datum)?;
            let x = d.parse_element(&parse_arg::<ElementJson>(element)?)?;
            serde_json::to_value(HeckeElement::invert_basis(&d, &x).to_json())?
        }
        HeckeCmd::Theta { datum: d, lambda } => {
            let d = datum(cli, &d.datum)?;
            serde_json::to_value(HeckeElement::theta(&d, lambda)?.expansion.to_json())?
        }
        HeckeCmd::Center { datum: d, lambda } => {
            let d = datum(cli, &d.datum)?;
            let z = HeckeElement::center_element(&d, lambda)?;
            json!({ "element": z.to_json(), "central": z.is_central()? })
        }
        HeckeCmd::Specialize { element, q, at_v } => {
            let h = hecke_arg(cli, element)?;
            let value = parse_rational(q)?;
            let at = if *at_v { Specialization::V(value) } else { Specialization::Q(value) };
            let s = h.specialize(&at)?;
            let terms: Vec<Value> = s
                .terms
                .iter()
                .map(|(x, c)| {
                    let e = s.datum.element_json(x);
                    json!({ "lambda": e.lambda, "word": e.word, "coeff": c.to_string() })
                })
                .collect();
            json!({ "datum": s.datum.name(), "terms": terms })
        }
    })
}

fn hh(c: &HhCmd) -> Result<Value> {
    Ok(match c {
        HhCmd::Bg { algebra, rank, mode, q, n_max, window, z_window, variant, u_bound } => {
            if algebra != "sym_h" {
                bail!("unknown algebra {algebra:?}; only sym_h is built in");
            }
            let mode = match (mode, q) {
                (Mode::Equivariant, _) => BgMode::Equivariant,
                (Mode::Plain, _) => BgMode::Plain,
                (Mode::Twisted, Some(q)) => BgMode::Twisted(parse_rational(q)?),
                (Mode::Twisted, None) => bail!("--mode twisted needs --q"),
            };
            let alg = GradedAlgebra::sym(*rank, *window)?;
            let mut p = BgParams::new(mode, *n_max, *window);
            p.z_window = *z_window;
            p.u_bound = *u_bound;
            let cx = build_bg_complex(&alg, &p)?;
            let ranks = match variant {
                Variant::Hh => hh_ranks(&cx)?,
                Variant::Negative => cyclic_ranks(&cx, CyclicVariant::Negative)?,
                Variant::Periodic => cyclic_ranks(&cx, CyclicVariant::Periodic)?,
            };
            json!({ "rank": rank, "N": n_max, "window": window, "slices": ranks })
        }
        HhCmd::Dg { spec, min_degree, max_degree, max_weight } => {
            let text = std::fs::read_to_string(spec).with_context(|| format!("reading {}", spec.display()))?;
            let spec: DgAlgebraSpec = serde_json::from_str(&text).context("parsing dg spec")?;
            let window = DgWindow { min_degree: *min_degree, max_degree: *max_degree, max_weight: *max_weight };
            let table = dg_cohomology(&spec, window)?;
            let rows: Vec<Value> =
                table.iter().map(|(&(d, w), &r)| json!({ "degree": d, "weight": w, "rank": r })).collect();
            json!({ "window": window, "ranks": rows })
        }
    })
}

fn params(c: &ParamsCmd) -> Result<Value> {
    Ok(match c {
        ParamsCmd::Enumerate { group, n, orbits, eigenvalues, q } => {
            if group != "GLn" && *group != format!("GL{n}") {
                bail!("unsupported group {group:?}; use GLn (SL2 has its own sl2-table command)");
            }
            let q: QValue = q.parse()?;
            let data = match orbits {
                Some(k) => EigenvalueData::Budget(*k),
                None if eigenvalues.is_empty() => bail!("give --orbits K or --eigenvalues LIST"),
                None => EigenvalueData::Multiset(
                    eigenvalues.iter().map(|s| s.trim().parse()).collect::<Result<Vec<Eigenvalue>, _>>()?,
                ),
            };
            let classes = enumerate_gln(*n, &q, &data)?;
            let shown: Vec<String> = classes.iter().map(|p| p.to_string()).collect();
            json!({ "n": n, "q": q, "count": classes.len(), "classes": classes, "display": shown })
        }
        ParamsCmd::Sl2Table { lambda, q } => {
            let lambda: Lambda = lambda.parse()?;
            let q: QValue = q.parse()?;
            json!({ "rows": sl2_table(&lambda, &q)? })
        }
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Shape {
    Pair(usize, usize),
    Named { d: usize, r: usize },
}

fn blocks(c: &BlocksCmd) -> Result<Value> {
    Ok(match c {
        BlocksCmd::Decompose { n, ty, q } => {
            let nu = if ty == "trivial" {
                let Some(n) = n else { bail!("--type trivial needs --n") };
                InertialTypeSpec::trivial(*n)
            } else {
                let nu: InertialTypeSpec = parse_arg(ty)?;
                if let Some(n) = n {
                    if *n != nu.n {
                        bail!("--n {n} disagrees with the type's n = {}", nu.n);
                    }
                }
                nu
            };
            serde_json::to_value(block_decompose(&nu, q)?)?
        }
        BlocksCmd::Enumerate { n, catalog } => {
            let shapes: Vec<Shape> = parse_arg(&catalog.to_string_lossy())?;
            let cat: Vec<(usize, usize)> = shapes
                .into_iter()
                .map(|s| match s {
                    Shape::Pair(d, r) | Shape::Named { d, r } => (d, r),
                })
                .collect();
            let types = enumerate_types(*n, &cat)?;
            json!({ "n": n, "count": types.len(), "types": types })
        }
    })
}

fn verify_all(threads: usize, out: Option<&Path>) -> Result<Outcome> {
    let results = verify::run_all(threads);
    for r in &results {
        eprintln!("{r}");
    }
    let ok = results.iter().all(|r| r.passed);
    let value = json!({ "all_passed": ok, "criteria": results });
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join("results.json");
        std::fs::write(&path, serde_json::to_string_pretty(&value)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(Outcome { value, ok })
}
