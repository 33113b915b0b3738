use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use gentle_silt::algebra::AlgebraJson;
use gentle_silt::curves::CurveJson;
use gentle_silt::embed::complex_to_json;
use gentle_silt::silting::{
    exchange_graph_dot, quiver_dot, verify_with_jobs, Mode, PairJson, Shape, SiltingEngine, Verdict, VerificationReport,
    DEFAULT_DEPTH, DEFAULT_STRING_BOUND, SCHEMA_VERSION,
};
use gentle_silt::surface::{global_dimension_geometric, surfaces_from_algebra};
use gentle_silt::{GentlePresentation, SiltingError};

#[derive(Parser, Debug)]
#[command(name = "gentle-silt", version, about = "Surface models and 2-term silting for hereditary gentle algebras")]
struct Cli {
    /// Worker threads used by `verify`
    #[arg(long, global = true, env = "GENTLE_SILT_JOBS", default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the gentle axioms and report the hereditary type
    Check {
        algebra: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the marked ribbon surface of an algebra
    Surface {
        algebra: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the support τ-tilting pairs
    Enumerate {
        algebra: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the 2-term complex of the graded curve attached to a module curve
    Embed {
        algebra: PathBuf,
        curve: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the global dimension bound for every silted algebra
    Verify {
        algebra: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the exchange graph in DOT format
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Tabulate the classification recorded in a report
    Classify {
        report: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// DOT export of a report's exchange graph, an endomorphism quiver, or an algebra
    ExportDot {
        input: PathBuf,
        /// Export the endomorphism quiver of this object of a report
        #[arg(long)]
        endo: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    /// `exhaustive` or `depth:<d>`; defaults to exhaustive for type A and depth:8 otherwise
    #[arg(long, value_parser = parse_mode)]
    mode: Option<ModeArg>,
    /// Maximal number of letters of strings considered during mutation
    #[arg(long, default_value_t = DEFAULT_STRING_BOUND)]
    string_bound: usize,
}

#[derive(Clone, Copy, Debug)]
enum ModeArg {
    Exhaustive,
    Depth(usize),
}

fn parse_mode(s: &str) -> Result<ModeArg, String> {
    if s == "exhaustive" {
        return Ok(ModeArg::Exhaustive);
    }
    s.strip_prefix("depth:")
        .and_then(|d| d.parse().ok())
        .map(ModeArg::Depth)
        .ok_or_else(|| format!("expected `exhaustive` or `depth:<d>`, got `{s}`"))
}

#[derive(Debug)]
struct InputError(String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

fn silting(e: SiltingError) -> anyhow::Error {
    match e {
        SiltingError::InfiniteEnumeration
        | SiltingError::Algebra(_)
        | SiltingError::Surface(_)
        | SiltingError::Curve(_)
        | SiltingError::InvalidPair(_) => input(e.to_string()),
        e => e.into(),
    }
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

fn read_value(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| input(format!("{}: invalid JSON: {e}", path.display())))
}

fn decode<T: DeserializeOwned>(path: &Path, v: Value) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let p = pointer(e.path());
        let p = if p.is_empty() { "/".to_string() } else { p };
        input(format!("{}: {p}: {}", path.display(), e.into_inner()))
    })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    decode(path, read_value(path)?)
}

fn load_algebra(path: &Path) -> Result<GentlePresentation> {
    let j: AlgebraJson = read_json(path)?;
    GentlePresentation::from_json(&j).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_report(path: &Path, v: Value) -> Result<VerificationReport> {
    let r: VerificationReport = decode(path, v)?;
    if r.schema_version != SCHEMA_VERSION {
        return Err(input(format!("{}: /schema_version: unsupported version {}", path.display(), r.schema_version)));
    }
    Ok(r)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("writing {}", path.display()))?;
            tmp.write_all(text.as_bytes())?;
            tmp.persist(path).map_err(|e| anyhow!("writing {}: {}", path.display(), e.error))?;
        }
    }
    Ok(())
}

fn pretty<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn resolve_mode(e: &SiltingEngine, run: &RunArgs) -> Result<Mode> {
    if run.string_bound == 0 {
        return Err(input("--string-bound must be positive"));
    }
    let arg = run.mode.unwrap_or(if e.ambient.is_type_a() { ModeArg::Exhaustive } else { ModeArg::Depth(DEFAULT_DEPTH) });
    Ok(match arg {
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::Depth(depth) => Mode::MutationDepth { depth, string_bound: run.string_bound },
    })
}

#[derive(Serialize)]
struct CheckReport<'a> {
    gentle: bool,
    violations: &'a [gentle_silt::algebra::Violation],
    hereditary: Option<gentle_silt::HereditaryType>,
    gldim_geometric: Option<gentle_silt::surface::GeometricDimension>,
}

#[derive(Serialize)]
struct EnumerationReport {
    schema_version: u32,
    algebra_id: String,
    mode: Mode,
    count: usize,
    bound_exceeded: usize,
    pairs: Vec<PairJson>,
    exchange_edges: Vec<[usize; 2]>,
}

fn shape_name(s: Shape) -> &'static str {
    match s {
        Shape::A => "A",
        Shape::ATilde => "Ã",
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check { algebra, out } => {
            let p = load_algebra(&algebra)?;
            let d = p.validate_gentle();
            let gentle = d.is_ok();
            let report = CheckReport {
                gentle,
                violations: &d.violations,
                hereditary: if gentle { p.classify_hereditary_type().ok() } else { None },
                gldim_geometric: if gentle { global_dimension_geometric(&p).ok() } else { None },
            };
            emit(out.as_deref(), &pretty(&report)?)?;
            Ok(if gentle { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Surface { algebra, out } => {
            let p = load_algebra(&algebra)?;
            let diag = p.validate_gentle();
            if !diag.is_ok() {
                return Err(input(format!("{}: not gentle: {}", algebra.display(), diag.violations[0].witness)));
            }
            let surfaces = surfaces_from_algebra(&p).map_err(|e| input(e.to_string()))?;
            let text = match surfaces.as_slice() {
                [s] => pretty(&s.to_json())?,
                many => pretty(&many.iter().map(|s| s.to_json()).collect::<Vec<_>>())?,
            };
            emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { algebra, run, out } => {
            let p = load_algebra(&algebra)?;
            let mut e = SiltingEngine::new(&p).map_err(silting)?;
            let mode = resolve_mode(&e, &run)?;
            let en = e.enumerate(mode).map_err(silting)?;
            let pairs = en.sets.iter().map(|s| e.pair_of(s)).map(|p| e.pair_to_json(&p)).collect();
            let report = EnumerationReport {
                schema_version: SCHEMA_VERSION,
                algebra_id: e.algebra_id(),
                mode,
                count: en.sets.len(),
                bound_exceeded: en.bound_exceeded,
                pairs,
                exchange_edges: en.edges,
            };
            emit(out.as_deref(), &pretty(&report)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Embed { algebra, curve, out } => {
            let p = load_algebra(&algebra)?;
            let e = SiltingEngine::new(&p).map_err(silting)?;
            let j: CurveJson = read_json(&curve)?;
            let c = e.model.curve_from_json(&j).map_err(|err| input(format!("{}: {err}", curve.display())))?;
            let ac = e.model.embed_curve(&c)?;
            let x = e.model.complex_of_admissible(&e.alg, &ac)?;
            emit(out.as_deref(), &pretty(&complex_to_json(&e.alg, &x))?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { algebra, run, out, dot } => {
            let p = load_algebra(&algebra)?;
            let e = SiltingEngine::new(&p).map_err(silting)?;
            let mode = resolve_mode(&e, &run)?;
            let report = verify_with_jobs(&p, mode, cli.jobs.max(1)).map_err(silting)?;
            emit(out.as_deref(), &pretty(&report)?)?;
            if let Some(dot) = dot {
                emit(Some(&dot), &exchange_graph_dot(&report))?;
            }
            let gl = report.max_gldim_linear.map_or("-".to_string(), |d| d.to_string());
            eprintln!(
                "{}: {} objects, max gl.dim {}, {} beyond bound, {} failures",
                report.algebra_id,
                report.count,
                gl,
                report.bound_exceeded,
                report.failures.len()
            );
            Ok(match report.verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::Fail => ExitCode::from(1),
            })
        }
        Command::Classify { report, out } => {
            let r = load_report(&report, read_value(&report)?)?;
            let mut text = format!("{:>6}  {:>4}  {:<24}  {}\n", "index", "form", "components", "gl.dim");
            for rec in &r.records {
                let (form, comps) = match &rec.classification {
                    Some(c) => (
                        c.form.to_string(),
                        c.components.iter().map(|k| format!("{}{}", shape_name(k.shape), k.vertices)).collect::<Vec<_>>().join("+"),
                    ),
                    None => ("-".to_string(), "-".to_string()),
                };
                let gl = rec.gldim_linear.map_or("-".to_string(), |d| d.to_string());
                text.push_str(&format!("{:>6}  {:>4}  {:<24}  {}\n", rec.index, form, comps, gl));
            }
            emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ExportDot { input: path, endo, out } => {
            let v = read_value(&path)?;
            let text = if v.get("schema_version").is_some() {
                let r = load_report(&path, v)?;
                match endo {
                    None => exchange_graph_dot(&r),
                    Some(k) => {
                        let rec = r
                            .records
                            .iter()
                            .find(|rec| rec.index == k)
                            .ok_or_else(|| input(format!("report has no object {k}")))?;
                        quiver_dot(&format!("{} #{k}", r.algebra_id), &rec.endo)
                    }
                }
            } else {
                if endo.is_some() {
                    return Err(input("--endo needs a verification report"));
                }
                let j: AlgebraJson = decode(&path, v)?;
                GentlePresentation::from_json(&j).map_err(|e| input(format!("{}: {e}", path.display())))?;
                quiver_dot("algebra", &j)
            };
            emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
