//! Subcommands. Each writes its report to `out` and returns the exit code
//! on failure.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diffuse_core::generators::{Family, FixtureSpec, GeneratorError};
use diffuse_core::oracle::min_reflections_bfs;
use diffuse_core::paths::{extract_path, locate_k, validate_path, PathError, ReflectionPath};
use diffuse_core::regions::{audit_criticality, check_properties, illuminate, IlluminationResult, RegionError};
use diffuse_core::visibility::VisibilityError;
use diffuse_core::{geom, Point, Polygon};

use crate::format::{coord, PolygonFile};
use crate::ledger::LedgerDocument;
use crate::svg;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Parse = 2,
    Invalid = 3,
    Breach = 4,
    OnChord = 5,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{msg}")]
pub struct CmdError {
    pub code: ExitCode,
    pub msg: String,
}

fn fail(code: ExitCode, msg: impl Into<String>) -> CmdError {
    CmdError { code, msg: msg.into() }
}

#[derive(Debug, Parser)]
#[command(name = "diffuse", version, about = "Diffuse reflection illumination in simple polygons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the region sequence R_0, R_1, ... from a source.
    Illuminate(IlluminateArgs),
    /// Extract a reflection path from the source to a target.
    Path(PathArgs),
    /// Write a generated polygon file.
    Generate(GenerateArgs),
    /// Illuminate, audit, and check paths to random targets.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Input {
    /// Polygon file.
    pub polygon: PathBuf,
    /// Source point; defaults to the file's `s` line.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
    pub source: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct IlluminateArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long)]
    pub ledger: Option<PathBuf>,
    /// Re-check region properties and the criticality audit.
    #[arg(long)]
    pub assert: bool,
}

#[derive(Debug, Args)]
pub struct PathArgs {
    #[command(flatten)]
    pub input: Input,
    /// Target point; defaults to the file's `t` line.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
    pub target: Option<Vec<String>>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// zigzag, spiral, convex or random.
    pub family: String,
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output if omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: Input,
    /// Random interior targets to check.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    /// Oracle samples per edge.
    #[arg(long, default_value_t = 16)]
    pub oracle_m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub ledger: Option<PathBuf>,
    /// Write every checked path here.
    #[arg(long)]
    pub paths: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CmdError> {
    match cli.command {
        Command::Illuminate(a) => cmd_illuminate(&a, out),
        Command::Path(a) => cmd_path(&a, out),
        Command::Generate(a) => cmd_generate(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CmdError> {
    out.write_all(text.as_bytes()).map_err(|e| fail(ExitCode::Parse, format!("cannot write output: {e}")))
}

fn write_file(path: &Path, text: &str) -> Result<(), CmdError> {
    fs::write(path, text).map_err(|e| fail(ExitCode::Parse, format!("cannot write {}: {e}", path.display())))
}

fn parse_point(words: &[String]) -> Result<Point, CmdError> {
    let c = |s: &String| coord(s).map_err(|e| fail(ExitCode::Parse, e));
    Ok(Point::new(c(&words[0])?, c(&words[1])?))
}

struct Loaded {
    polygon: Polygon,
    source: Point,
    target: Option<Point>,
}

fn load(input: &Input) -> Result<Loaded, CmdError> {
    let text = fs::read_to_string(&input.polygon)
        .map_err(|e| fail(ExitCode::Parse, format!("cannot read {}: {e}", input.polygon.display())))?;
    let file = PolygonFile::parse(&text).map_err(|e| fail(ExitCode::Parse, e.to_string()))?;
    let polygon = Polygon::new(file.vertices).map_err(|e| fail(ExitCode::Invalid, e.to_string()))?;
    let source = match &input.source {
        Some(w) => parse_point(w)?,
        None => file.source.ok_or_else(|| fail(ExitCode::Parse, "no source given and no \"s\" line in file"))?,
    };
    Ok(Loaded { polygon, source, target: file.target })
}

fn region_error(e: RegionError) -> CmdError {
    let code = match &e {
        RegionError::Invalid(_)
        | RegionError::Visibility(VisibilityError::SourceOutside)
        | RegionError::Visibility(VisibilityError::DegenerateConfiguration(_))
        | RegionError::Visibility(VisibilityError::Geom(_)) => ExitCode::Invalid,
        _ => ExitCode::Breach,
    };
    fail(code, e.to_string())
}

fn run_illumination(l: &Loaded) -> Result<IlluminationResult, CmdError> {
    illuminate(&l.polygon, &l.source).map_err(region_error)
}

/// Region properties at every step plus the criticality audit.
fn assert_result(res: &IlluminationResult) -> Vec<String> {
    let mut problems = Vec::new();
    for (k, r) in res.regions.iter().enumerate() {
        if let Err(e) = check_properties(&res.polygon, r) {
            problems.push(format!("R_{k}: {e}"));
        }
    }
    for b in audit_criticality(res).breaches {
        problems.push(b.to_string());
    }
    problems
}

pub fn cmd_illuminate(a: &IlluminateArgs, out: &mut dyn Write) -> Result<(), CmdError> {
    let l = load(&a.input)?;
    let res = run_illumination(&l)?;
    let doc = LedgerDocument::from_result(&res);
    if let Some(p) = &a.ledger {
        write_file(p, &doc.to_json())?;
    }
    if let Some(p) = &a.svg {
        write_file(p, &svg::render(&res, None))?;
    }
    let mut s = format!("n: {}\nbound_k: {}\nterminated_at: {}\n", doc.n, doc.bound_k, doc.terminated_at);
    for st in &doc.steps {
        writeln!(s, "k={} mu={} lambda={} critical={} condition={}", st.k, st.mu, st.lambda, st.critical, st.condition)
            .unwrap();
    }
    emit(out, &s)?;
    if a.assert {
        let problems = assert_result(&res);
        if !problems.is_empty() {
            return Err(fail(ExitCode::Breach, problems.join("\n")));
        }
        emit(out, "assert: ok\n")?;
    }
    Ok(())
}

fn path_error(e: PathError) -> CmdError {
    match e {
        PathError::OnWindowChord(k) => fail(
            ExitCode::OnChord,
            format!("target lies on a window chord of R_{k}; perturb it slightly off the chord and retry"),
        ),
        PathError::TargetOutside => fail(ExitCode::Invalid, "target is not in the interior of the polygon"),
        e => fail(ExitCode::Breach, e.to_string()),
    }
}

fn format_path(path: &ReflectionPath) -> String {
    let mut s = format!("reflections: {}\n", path.reflection_count());
    writeln!(s, "source {} {}", path.source.x, path.source.y).unwrap();
    for r in &path.reflections {
        writeln!(s, "reflect {} {} {}", r.edge.0, r.point.x, r.point.y).unwrap();
    }
    writeln!(s, "target {} {}", path.target.x, path.target.y).unwrap();
    s
}

pub fn cmd_path(a: &PathArgs, out: &mut dyn Write) -> Result<(), CmdError> {
    let l = load(&a.input)?;
    let target = match &a.target {
        Some(w) => parse_point(w)?,
        None => l.target.clone().ok_or_else(|| fail(ExitCode::Parse, "no target given and no \"t\" line in file"))?,
    };
    let res = run_illumination(&l)?;
    let path = extract_path(&res, &target).map_err(path_error)?;
    let report = validate_path(&l.polygon, &path);
    if !report.is_ok() {
        let v: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(fail(ExitCode::Breach, format!("extracted path is invalid: {}", v.join("; "))));
    }
    if let Some(p) = &a.svg {
        write_file(p, &svg::render(&res, Some(&path)))?;
    }
    emit(out, &format_path(&path))
}

pub fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write) -> Result<(), CmdError> {
    let family: Family = a.family.parse().map_err(|e: String| fail(ExitCode::Parse, e))?;
    let spec = FixtureSpec::generate(family, a.n, a.seed).map_err(|e| match e {
        GeneratorError::BadN { .. } => fail(ExitCode::Parse, e.to_string()),
        e => fail(ExitCode::Invalid, e.to_string()),
    })?;
    let mut text = format!("# {} n={}", spec.family, spec.n);
    if let Some(seed) = spec.seed {
        write!(text, " seed={seed}").unwrap();
    }
    text.push('\n');
    text += &PolygonFile::new(&spec.polygon, Some(spec.source), spec.target).to_string();
    match &a.output {
        Some(p) => write_file(p, &text),
        None => emit(out, &text),
    }
}

/// Outcome of one target in `verify`.
struct TargetCheck {
    target: Point,
    k: usize,
    reflections: usize,
    oracle: Option<usize>,
    problems: Vec<String>,
    path: Option<ReflectionPath>,
}

fn check_target(res: &IlluminationResult, t: &Point, m: usize) -> TargetCheck {
    let mut c = TargetCheck { target: t.clone(), k: 0, reflections: 0, oracle: None, problems: Vec::new(), path: None };
    match locate_k(res, t) {
        Ok(k) => c.k = k,
        Err(e) => {
            c.problems.push(format!("locate: {e}"));
            return c;
        }
    }
    match extract_path(res, t) {
        Ok(p) => {
            c.reflections = p.reflection_count();
            let report = validate_path(&res.polygon, &p);
            if !report.is_ok() {
                c.problems.push(format!("invalid path: {:?}", report.violations));
            }
            if c.reflections > c.k {
                c.problems.push(format!("{} reflections exceed level {}", c.reflections, c.k));
            }
            c.path = Some(p);
        }
        Err(e) => c.problems.push(format!("extract: {e}")),
    }
    match min_reflections_bfs(&res.polygon, &res.source, t, m) {
        Ok(o) => {
            if !validate_path(&res.polygon, &o.witness).is_ok() {
                c.problems.push("oracle witness invalid".into());
            }
            if c.path.is_some() && o.min_reflections > c.reflections {
                c.problems.push(format!("oracle {} exceeds extracted {}", o.min_reflections, c.reflections));
            }
            c.oracle = Some(o.min_reflections);
        }
        Err(e) => c.problems.push(format!("oracle: {e}")),
    }
    c
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<(), CmdError> {
    let l = load(&a.input)?;
    let res = run_illumination(&l)?;
    let mut failures = assert_result(&res);

    let mut targets: Vec<Point> = l.target.iter().cloned().collect();
    let tris = geom::triangulate(&l.polygon);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    while targets.len() < a.samples + usize::from(l.target.is_some()) {
        targets.push(geom::sample_interior(&l.polygon, &tris, &mut rng));
    }
    let checks: Vec<TargetCheck> = targets.iter().map(|t| check_target(&res, t, a.oracle_m)).collect();

    let doc = LedgerDocument::from_result(&res);
    let mut s = format!(
        "n: {}\nsource: {} {}\nbound_k: {}\nterminated_at: {}\n\n",
        doc.n, l.source.x, l.source.y, doc.bound_k, doc.terminated_at
    );
    writeln!(s, "{:>4}  {:>5}  {:>11}  {:>6}  status", "#", "level", "reflections", "oracle").unwrap();
    let mut paths_text = String::new();
    for (i, c) in checks.iter().enumerate() {
        let oracle = c.oracle.map_or("-".to_string(), |o| o.to_string());
        let status = if c.problems.is_empty() { "ok".to_string() } else { c.problems.join("; ") };
        writeln!(s, "{i:>4}  {:>5}  {:>11}  {oracle:>6}  {status}", c.k, c.reflections).unwrap();
        for p in &c.problems {
            failures.push(format!("target {i} ({}): {p}", c.target));
        }
        writeln!(paths_text, "# target {i}").unwrap();
        match &c.path {
            Some(p) => paths_text += &format_path(p),
            None => writeln!(paths_text, "target {} {}\nno path", c.target.x, c.target.y).unwrap(),
        }
    }
    writeln!(s, "\nchecks failed: {}", failures.len()).unwrap();
    for f in &failures {
        writeln!(s, "  {f}").unwrap();
    }
    if let Some(p) = &a.ledger {
        write_file(p, &doc.to_json())?;
    }
    if let Some(p) = &a.paths {
        write_file(p, &paths_text)?;
    }
    if let Some(p) = &a.svg {
        let shown = checks.iter().find_map(|c| c.path.as_ref());
        write_file(p, &svg::render(&res, shown))?;
    }
    emit(out, &s)?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(fail(ExitCode::Breach, format!("{} checks failed", failures.len())))
    }
}
