//! Command-line front end.
//!
//! Exit codes: 0 success, 1 reference mismatch or failed computation,
//! 2 usage error, 3 no solution, 4 I/O failure, 5 inadmissible base length.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::atlas::points::characteristic_points_with_step;
use crate::atlas::singular::DEFAULT_STEP;
use crate::deformation::{recommended_base, sample_plan, Deformation, DEFAULT_EPSILON};
use crate::error::Error;
use crate::geometry::{FaceParams, HeightsPair, SiameseConfig};
use crate::mesh::{build_mesh, export_obj};
use crate::numfmt::{sig17, to_json};
use crate::solver::{solve_heights_with, SolutionSet, SolverOptions, DEFAULT_SAMPLES};
use crate::svg::render_atlas_svg;
use crate::tables::{check, compute_table, TableFormat, TableId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO_SOLUTION: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_INADMISSIBLE: i32 = 5;

/// Environment variable overriding the solver scan resolution.
pub const SAMPLES_ENV: &str = "SIAMESE_FLEX_SAMPLES";

#[derive(Debug, Parser)]
#[command(
    name = "siamese",
    version,
    about = "Isomers, rigidity atlases and almost-flexions of Siamese dipyramids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate all dipyramids with base lengths l and l~.
    Solve(SolveArgs),
    /// Characteristic points, fold curve and fold image for one n.
    Atlas(AtlasArgs),
    /// Natural deformation and almost-flexion report.
    Deform(DeformArgs),
    /// Recompute the reference tables.
    Tables(TablesArgs),
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(short = 'n')]
    n: u32,
    /// Base length of the first triangle family.
    #[arg(short = 'l')]
    l: f64,
    /// Base length of the second triangle family.
    #[arg(short = 'L', long = "l-tilde")]
    l_tilde: f64,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Debug, Args)]
struct AtlasArgs {
    #[arg(short = 'n')]
    n: u32,
    /// Write the atlas JSON here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a two-panel SVG figure.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Continuation step along the fold curve.
    #[arg(long, default_value_t = DEFAULT_STEP)]
    step: f64,
}

#[derive(Debug, Args)]
struct DeformArgs {
    #[arg(short = 'n')]
    n: u32,
    #[arg(long, conflicts_with = "auto", required_unless_present = "auto")]
    l0: Option<f64>,
    /// Use the recommended base length for n.
    #[arg(long)]
    auto: bool,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    #[arg(long, default_value_t = 512)]
    samples: usize,
    /// Path CSV destination.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report JSON destination (also printed to standard output).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Directory receiving one OBJ mesh per sample.
    #[arg(long)]
    meshes: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TablesArgs {
    /// T1, A1, A2 or examples.
    #[arg(long)]
    which: String,
    #[arg(long)]
    n_from: Option<u32>,
    #[arg(long)]
    n_to: Option<u32>,
    /// csv, json or pretty.
    #[arg(long, default_value = "pretty")]
    format: String,
    /// Compare with the vendored reference values.
    #[arg(long)]
    check: bool,
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidGonCount(_)
            | Error::BaseLengthOutOfRange { .. }
            | Error::InvalidArgument(_)
            | Error::Parse(_) => EXIT_USAGE,
            Error::NotAdmissible { .. } => EXIT_INADMISSIBLE,
            _ => EXIT_MISMATCH,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_failure(path, e))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("standard output: {e}"),
    })
}

fn solver_options() -> Result<SolverOptions, Failure> {
    let samples = match std::env::var(SAMPLES_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&s| s >= 2)
            .ok_or_else(|| Failure {
                code: EXIT_USAGE,
                message: format!("{SAMPLES_ENV} must be an integer >= 2, got '{v}'"),
            })?,
        Err(_) => DEFAULT_SAMPLES,
    };
    Ok(SolverOptions { samples })
}

fn solution_json(set: &SolutionSet) -> String {
    let sols: Vec<_> = set
        .solutions
        .iter()
        .map(|c| json!({"x": c.x(), "x_tilde": c.x_tilde(), "residual": [c.residual.0, c.residual.1]}))
        .collect();
    to_json(&json!({
        "n": set.plan.n(),
        "l": set.plan.l(),
        "l_tilde": set.plan.l_tilde(),
        "count": set.regime,
        "solutions": sols,
    }))
}

fn solution_csv(set: &SolutionSet) -> String {
    let mut s = String::from("x,x_tilde,r1,r2\n");
    for c in &set.solutions {
        s.push_str(&format!(
            "{},{},{},{}\n",
            sig17(c.x()),
            sig17(c.x_tilde()),
            sig17(c.residual.0),
            sig17(c.residual.1)
        ));
    }
    s
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let plan = FaceParams::new(a.n, a.l, a.l_tilde)?;
    let set = solve_heights_with(&plan, &solver_options()?)?;
    let text = if a.json {
        solution_json(&set) + "\n"
    } else if a.csv {
        solution_csv(&set)
    } else {
        let mut s = format!(
            "n = {}, l = {}, l~ = {}: {} solution(s)\n",
            a.n, a.l, a.l_tilde, set.regime
        );
        for c in &set.solutions {
            s.push_str(&format!("  x = {:.10}  x~ = {:.10}\n", c.x(), c.x_tilde()));
        }
        s
    };
    emit(out, &text)?;
    if set.is_empty() {
        let _ = writeln!(err, "no solutions");
        Ok(EXIT_NO_SOLUTION)
    } else {
        Ok(EXIT_OK)
    }
}

fn cmd_atlas(a: &AtlasArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let atlas = characteristic_points_with_step(a.n, a.step)?;
    let doc = atlas.to_json() + "\n";
    match &a.out {
        Some(path) => write_file(path, &doc)?,
        None => emit(out, &doc)?,
    }
    if let Some(path) = &a.svg {
        write_file(path, &render_atlas_svg(&atlas))?;
    }
    Ok(EXIT_OK)
}

fn cmd_deform(a: &DeformArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let l0 = match a.l0 {
        Some(v) => v,
        None => recommended_base(a.n)?,
    };
    let deformation = Deformation::new(a.n)?;
    let report = deformation.flexion_report(l0, a.epsilon)?;
    if !report.admissible {
        let (lo, hi) = report.window;
        let _ = writeln!(
            err,
            "inadmissible: need (l_H + l_K)/2 = {lo:.5} < l0 < l_M = {hi:.5}, got l0 = {l0}"
        );
        emit(out, &(report.to_json() + "\n"))?;
        return Ok(EXIT_INADMISSIBLE);
    }
    let path = deformation.natural_path(l0, a.samples)?;
    if let Some(p) = &a.out {
        write_file(p, &path.to_csv()?)?;
    }
    if let Some(dir) = &a.meshes {
        fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
        for (i, s) in path.samples.iter().enumerate() {
            let plan = sample_plan(a.n, s)?;
            let config = SiameseConfig::new(plan, HeightsPair::new(s.x, s.x_tilde))?;
            let obj = export_obj(&build_mesh(&config)?)?;
            write_file(&dir.join(format!("frame_{i:05}.obj")), &obj)?;
        }
    }
    let doc = report.to_json() + "\n";
    if let Some(p) = &a.report {
        write_file(p, &doc)?;
    }
    emit(out, &doc)?;
    Ok(EXIT_OK)
}

fn cmd_tables(a: &TablesArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let id: TableId = a.which.parse()?;
    let format: TableFormat = a.format.parse()?;
    let (lo, hi) = id.default_range();
    let table = compute_table(id, a.n_from.unwrap_or(lo), a.n_to.unwrap_or(hi))?;
    emit(out, &table.render(format)?)?;
    if !a.check {
        return Ok(EXIT_OK);
    }
    let checks = check(&table)?;
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
    for c in &failed {
        let _ = writeln!(err, "mismatch: {}", c.describe());
    }
    let _ = writeln!(
        err,
        "{}: {}/{} reference cells within tolerance",
        id.as_str(),
        checks.len() - failed.len(),
        checks.len()
    );
    Ok(if failed.is_empty() { EXIT_OK } else { EXIT_MISMATCH })
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, out, err),
        Command::Atlas(a) => cmd_atlas(a, out),
        Command::Deform(a) => cmd_deform(a, out, err),
        Command::Tables(a) => cmd_tables(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
