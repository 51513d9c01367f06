mod plot;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use hitset::instance::format::{parse_instance, serialize_instance};
use hitset::instance::generate::{gen_random, Family, GenParams};
use hitset::instance::reduction::{gen_3sat_reduction, CnfFormula};
use hitset::instance::{candidate_points, Instance};
use hitset::lp::round::lp_value;
use hitset::oracle::{exact_min_hitting_set, verify_hitting_set, OracleError, OracleOptions};
use hitset::solution::{parse_solution, serialize_solution, HitRole, SolutionFile};
use hitset::HittingSet;
use hitset::solve::{detect, solve, SolverKind};
use hitset::vlhs;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "hitset", version, about = "Geometric hitting sets for segments, rays and lines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random or 3SAT-derived instance.
    Generate(GenerateArgs),
    /// Solve instances, verify the answers and report.
    Solve(SolveArgs),
    /// Check that a solution file hits every union of an instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Render an instance, and optionally a solution, as SVG.
    Plot {
        instance: PathBuf,
        solution: Option<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy)]
enum FamilyArg {
    Sat3,
    Random(Family),
}

impl FromStr for FamilyArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "sat3" {
            return Ok(FamilyArg::Sat3);
        }
        s.parse().map(FamilyArg::Random).map_err(|_| {
            let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
            format!("expected sat3 or one of {}", names.join(", "))
        })
    }
}

#[derive(Args)]
struct GenerateArgs {
    /// Instance family, or `sat3` to reduce a DIMACS formula.
    family: FamilyArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// DIMACS CNF input for `sat3`.
    #[arg(long)]
    cnf: Option<PathBuf>,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long)]
    grid: Option<i64>,
    #[arg(long)]
    lines: Option<usize>,
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long)]
    loose_rays: Option<usize>,
    #[arg(long)]
    segments: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    rays: Option<usize>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    horizontal: Option<usize>,
    #[arg(long)]
    vertical: Option<usize>,
    #[arg(long)]
    diagonal: Option<usize>,
    /// Allow three concurrent lines in `3slope-lines`.
    #[arg(long)]
    triples: bool,
    /// Axis-parallel short segments only in `trifree-segments`.
    #[arg(long)]
    axis_only: bool,
}

impl GenerateArgs {
    fn params(&self, family: Family) -> GenParams {
        let grid = self.grid.unwrap_or(20);
        let n = |v: Option<usize>, d: usize| v.unwrap_or(d);
        match family {
            Family::ThreeSlopeLines => GenParams::ThreeSlopeLines {
                horizontal: n(self.horizontal, 3),
                vertical: n(self.vertical, 3),
                diagonal: n(self.diagonal, 3),
                grid,
                triples: self.triples,
            },
            Family::Hrvl => GenParams::Hrvl {
                lines: n(self.lines, 4),
                pairs: n(self.pairs, 5),
                loose_rays: n(self.loose_rays, 0),
                grid,
            },
            Family::Vlhs => {
                GenParams::Vlhs { lines: n(self.lines, 4), segments: n(self.segments, 8), rows: n(self.rows, 4), grid }
            }
            Family::VraysHs => {
                GenParams::VraysHs { rays: n(self.rays, 4), segments: n(self.segments, 8), rows: n(self.rows, 4), grid }
            }
            Family::LPairs => GenParams::LPairs { count: n(self.count, 8), grid },
            Family::SegLinePairs => GenParams::SegLinePairs { count: n(self.count, 8), grid },
            Family::TriFree => GenParams::TriFree { count: n(self.count, 12), grid, axis_only: self.axis_only },
        }
    }
}

#[derive(Clone, Copy)]
enum SolverArg {
    Auto,
    Kind(SolverKind),
}

impl FromStr for SolverArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            Ok(SolverArg::Auto)
        } else {
            s.parse().map(SolverArg::Kind)
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(required = true)]
    instances: Vec<PathBuf>,
    /// `auto` or a solver name.
    #[arg(long, default_value = "auto")]
    solver: SolverArg,
    /// Also compute the exact optimum.
    #[arg(long)]
    oracle: bool,
    /// Run the oracle whatever the instance size.
    #[arg(long, requires = "oracle")]
    no_guard: bool,
    /// Also compute the LP lower bound.
    #[arg(long)]
    lp: bool,
    /// Solution file, or a directory when several instances are given.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Write the reports as a JSON array.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

/// An error that maps to a specific exit status.
#[derive(Debug)]
struct Exit {
    code: u8,
    message: String,
}

impl fmt::Display for Exit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Exit {}

const VERIFY_FAILED: u8 = 3;
const SIZE_GUARD: u8 = 4;

#[derive(Serialize)]
struct RunReport {
    instance: String,
    unions: usize,
    max_union_size: usize,
    solver: String,
    size: usize,
    triples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    v: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lp: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    opt: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio_lp: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio_opt: Option<f64>,
    wall_ms: f64,
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn missed_unions(inst: &Instance, set: &HittingSet) -> Vec<usize> {
    verify_hitting_set(inst, &set.positions()).iter().filter(|c| c.witness.is_none()).map(|c| c.union).collect()
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_generate(args: &GenerateArgs) -> Result<()> {
    let inst = match args.family {
        FamilyArg::Sat3 => {
            let Some(path) = &args.cnf else {
                return Err(Exit { code: 2, message: "sat3 needs --cnf <file>".into() }.into());
            };
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let formula = CnfFormula::parse_dimacs(&text).with_context(|| format!("parsing {}", path.display()))?;
            let (inst, info) = gen_3sat_reduction(&formula)?;
            eprintln!(
                "{} variables, {} clauses: {} horizontal segments, {} lines, satisfiable iff optimum is {}",
                info.variables,
                info.clauses,
                info.horizontal_segments,
                info.black_lines + info.clause_lines,
                info.target
            );
            inst
        }
        FamilyArg::Random(family) => gen_random(&args.params(family), args.seed)?,
    };
    write_or_print(args.out.as_deref(), &serialize_instance(&inst))
}

fn ratio(size: usize, bound: f64) -> Option<f64> {
    (bound > 0.0).then(|| size as f64 / bound)
}

fn solve_one(path: &Path, args: &SolveArgs) -> Result<(RunReport, SolutionFile)> {
    let inst = read_instance(path)?;
    let kind = match args.solver {
        SolverArg::Auto => detect(&inst),
        SolverArg::Kind(k) => k,
    };
    let start = Instant::now();
    let set = solve(&inst, kind).with_context(|| format!("{}: solver {kind}", path.display()))?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;

    let missed = missed_unions(&inst, &set);
    if !missed.is_empty() {
        let message = format!("{}: solver {kind} missed unions {missed:?}", path.display());
        return Err(Exit { code: VERIFY_FAILED, message }.into());
    }

    let (v, h) = match (kind, inst.plain_objects()) {
        (SolverKind::Vlhs53 | SolverKind::Vrays53, Some(objs)) => vlhs::lower_bounds(&objs).ok().unzip(),
        _ => (None, None),
    };
    let lp = if args.lp || matches!(kind, SolverKind::Pairs4 | SolverKind::Pairs103 | SolverKind::Kr) {
        Some(lp_value(&inst).with_context(|| format!("{}: LP bound", path.display()))?)
    } else {
        None
    };
    let opt = if args.oracle {
        let opts = if args.no_guard { OracleOptions::unguarded() } else { OracleOptions::default() };
        let res = exact_min_hitting_set(&inst, &candidate_points(&inst), opts);
        if let Err(e @ OracleError::SizeGuard { .. }) = &res {
            return Err(Exit { code: SIZE_GUARD, message: format!("{}: {e}", path.display()) }.into());
        }
        Some(res?.optimum)
    } else {
        None
    };

    let size = set.len();
    let report = RunReport {
        instance: path.display().to_string(),
        unions: inst.len(),
        max_union_size: inst.max_union_size(),
        solver: kind.name().to_string(),
        size,
        triples: set.points.iter().filter(|p| p.role == HitRole::Triple).count(),
        v,
        h,
        ratio_lp: lp.as_ref().and_then(|l| ratio(size, l.to_f64().unwrap_or(0.0))),
        lp: lp.map(|l| l.to_string()),
        ratio_opt: opt.and_then(|o| ratio(size, o as f64)),
        opt,
        wall_ms,
    };
    Ok((report, SolutionFile { solver: kind.name().to_string(), set }))
}

fn opt_cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".into(), T::to_string)
}

fn print_table(reports: &[&RunReport]) {
    if reports.is_empty() {
        return;
    }
    println!("{:<28} {:<18} {:>6} {:>5} {:>5} {:>10} {:>5} {:>7} {:>10}", "instance", "solver", "unions", "size", "v/h", "lp", "opt", "ratio", "ms");
    for r in reports {
        let vh = match (r.v, r.h) {
            (Some(v), Some(h)) => format!("{v}/{h}"),
            _ => "-".into(),
        };
        let ratio = r.ratio_opt.or(r.ratio_lp).map_or_else(|| "-".into(), |x| format!("{x:.3}"));
        println!(
            "{:<28} {:<18} {:>6} {:>5} {:>5} {:>10} {:>5} {:>7} {:>10.2}",
            Path::new(&r.instance).file_name().map_or(r.instance.as_str().into(), |n| n.to_string_lossy()),
            r.solver,
            r.unions,
            r.size,
            vh,
            opt_cell(&r.lp),
            opt_cell(&r.opt),
            ratio,
            r.wall_ms
        );
    }
}

fn cmd_solve(args: &SolveArgs) -> Result<()> {
    let batch = args.instances.len() > 1;
    if let (true, Some(dir)) = (batch, &args.out) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.jobs.max(1)).build()?;
    let results: Vec<Result<(RunReport, SolutionFile)>> =
        pool.install(|| args.instances.par_iter().map(|p| solve_one(p, args)).collect());

    let mut reports = Vec::new();
    let (mut failed, mut code) = (0, None);
    for (path, res) in args.instances.iter().zip(results) {
        match res {
            Ok((report, sol)) => {
                if let Some(out) = &args.out {
                    let target = if batch {
                        out.join(path.file_stem().unwrap_or_default()).with_extension("sol")
                    } else {
                        out.clone()
                    };
                    fs::write(&target, serialize_solution(&sol))
                        .with_context(|| format!("writing {}", target.display()))?;
                }
                reports.push(report);
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                failed += 1;
                code.get_or_insert(e.downcast_ref::<Exit>().map_or(1, |x| x.code));
            }
        }
    }
    print_table(&reports.iter().collect::<Vec<_>>());
    if let Some(path) = &args.json {
        let text = serde_json::to_string_pretty(&reports)?;
        fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    match code {
        Some(code) => Err(Exit { code, message: format!("{failed} of {} instances failed", args.instances.len()) }.into()),
        None => Ok(()),
    }
}

fn cmd_verify(instance: &Path, solution: &Path) -> Result<()> {
    let inst = read_instance(instance)?;
    let text = fs::read_to_string(solution).with_context(|| format!("reading {}", solution.display()))?;
    let sol = parse_solution(&text).with_context(|| format!("parsing {}", solution.display()))?;
    let missed = missed_unions(&inst, &sol.set);
    if !missed.is_empty() {
        return Err(Exit { code: VERIFY_FAILED, message: format!("unions {missed:?} are not hit") }.into());
    }
    println!("ok: {} points hit all {} unions", sol.set.len(), inst.len());
    Ok(())
}

fn cmd_plot(instance: &Path, solution: Option<&Path>, out: &Path) -> Result<()> {
    let inst = read_instance(instance)?;
    let sol = match solution {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Some(parse_solution(&text).with_context(|| format!("parsing {}", p.display()))?)
        }
        None => None,
    };
    let svg = plot::render(&inst, sol.as_ref().map(|s| &s.set));
    fs::write(out, svg).with_context(|| format!("writing {}", out.display()))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(args) => cmd_generate(&args),
        Command::Solve(args) => cmd_solve(&args),
        Command::Verify { instance, solution } => cmd_verify(&instance, &solution),
        Command::Plot { instance, solution, out } => cmd_plot(&instance, solution.as_deref(), &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(e.downcast_ref::<Exit>().map_or(1, |x| x.code))
        }
    }
}
