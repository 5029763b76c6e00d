//! Command line frontend: filter instances from JSON files, cross-check the
//! filter against brute-force enumeration on random instances, classify a
//! relation pair, and measure filtering work.
//!
//! Exit codes: 0 on success, 1 when an instance is infeasible or a check
//! finds an unsound removal, 2 on invalid input or an enumeration overrunning
//! the cap.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use seqbin::binrel::monotonic_order;
use seqbin::catalog::{self, ContinuityTag};
use seqbin::domain::Domain;
use seqbin::fast;
use seqbin::instance::Problem;
use seqbin::oracle::{self, GacResult};
use seqbin::propagator::{propagate_with, Propagation, Status};
use seqbin::random::{random_problem, Family};
use seqbin::stretch::PairMode;

#[derive(Parser)]
#[command(name = "seqbin", version, about = "Stretch-count filtering over chains of finite domains")]
struct Cli {
    /// Generator seed for `check` and `bench`.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest assignment space `oracle` and `check` will enumerate.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Specialized pair sweeps where the relation pair has one.
    Auto,
    /// Generic quadratic pair sweeps only.
    Generic,
}

impl From<Mode> for PairMode {
    fn from(mode: Mode) -> PairMode {
        match mode {
            Mode::Auto => PairMode::Auto,
            Mode::Generic => PairMode::Generic,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Filter the domains of an instance file to a fixpoint.
    Propagate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// Filter by brute-force enumeration (exact, exponential).
    Oracle { file: PathBuf },
    /// Draw random instances from a family and compare the filter against
    /// enumeration.
    Check {
        /// Family name, e.g. `increasing_nvalue`, `change:leq`, `smooth:1`,
        /// `seqbin:table:geq`.
        family: Family,
        /// Instances to draw.
        #[arg(long, default_value_t = 100)]
        runs: usize,
        /// Variables per instance.
        #[arg(long, default_value_t = 4)]
        len: usize,
        /// Values range over `[0, this)`.
        #[arg(long, default_value_t = 4)]
        values: i64,
    },
    /// Report the core form, neighbor-order and filtering guarantees of an
    /// instance file.
    Classify { file: PathBuf },
    /// Measure filtering work on random instances of a family.
    Bench {
        family: Family,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        #[arg(long, default_value_t = 1000)]
        len: usize,
        #[arg(long, default_value_t = 20)]
        values: i64,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.cmd {
        Cmd::Propagate { file, mode } => cmd_propagate(cli, file, (*mode).into()),
        Cmd::Oracle { file } => cmd_oracle(cli, file),
        Cmd::Check { family, runs, len, values } => cmd_check(cli, family, *runs, *len, *values),
        Cmd::Classify { file } => cmd_classify(cli, file),
        Cmd::Bench { family, runs, len, values, mode } => {
            cmd_bench(cli, family, *runs, *len, *values, (*mode).into())
        }
    }
}

fn load_problem(file: &PathBuf) -> Result<Problem, String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    Problem::from_json(&text).map_err(|e| e.to_string())
}

fn domain_text(d: &Domain) -> String {
    let mut s = String::from("{");
    for (k, v) in d.iter().enumerate() {
        if k > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{v}");
    }
    s.push('}');
    s
}

fn print_state(format: Format, status: Status, n: &Domain, x: &[Domain], extra: &[(&str, u64)]) {
    match format {
        Format::Json => {
            let mut obj = json!({
                "status": if status == Status::Ok { "ok" } else { "fail" },
                "n": n,
                "x": x,
            });
            for (key, value) in extra {
                obj[*key] = json!(value);
            }
            println!("{obj}");
        }
        Format::Text => {
            println!("status {}", if status == Status::Ok { "ok" } else { "fail" });
            println!("n {}", domain_text(n));
            for (i, d) in x.iter().enumerate() {
                println!("x{i} {}", domain_text(d));
            }
            for (key, value) in extra {
                println!("{key} {value}");
            }
        }
    }
}

fn cmd_propagate(cli: &Cli, file: &PathBuf, mode: PairMode) -> Result<ExitCode, String> {
    let problem = load_problem(file)?;
    let reform = catalog::problem_to_core(&problem).map_err(|e| e.to_string())?;
    let mut outcome: Propagation =
        propagate_with(&reform.instance, mode).map_err(|e| e.to_string())?;
    outcome.n = Domain::new(outcome.n.iter().map(|v| reform.user_count(v)).collect());
    print_state(
        cli.format,
        outcome.status,
        &outcome.n,
        &outcome.x,
        &[("removed", outcome.removed as u64), ("passes", outcome.passes as u64)],
    );
    Ok(status_code(outcome.status))
}

fn cmd_oracle(cli: &Cli, file: &PathBuf) -> Result<ExitCode, String> {
    let problem = load_problem(file)?;
    let reform = catalog::problem_to_core(&problem).map_err(|e| e.to_string())?;
    let exact = oracle::gac_oracle(&reform.instance, cli.cap).map_err(|e| e.to_string())?;
    match exact {
        Some(GacResult { n, x }) => {
            let n = Domain::new(n.iter().map(|v| reform.user_count(v)).collect());
            print_state(cli.format, Status::Ok, &n, &x, &[]);
            Ok(ExitCode::SUCCESS)
        }
        None => {
            let empty: Vec<Domain> = reform.instance.x.iter().map(|_| Domain::default()).collect();
            print_state(cli.format, Status::Fail, &Domain::default(), &empty, &[]);
            Ok(ExitCode::from(1))
        }
    }
}

fn status_code(status: Status) -> ExitCode {
    match status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Fail => ExitCode::from(1),
    }
}

/// How one filtering outcome relates to the exact result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    /// Same domains as enumeration.
    Exact,
    /// Kept values enumeration rejects; sound but not tight.
    Incomplete,
    /// Lost a value enumeration keeps, or failed a satisfiable instance.
    Unsound,
}

fn compare(outcome: &Propagation, exact: Option<&GacResult>) -> Verdict {
    match exact {
        None => {
            if outcome.status == Status::Fail {
                Verdict::Exact
            } else {
                Verdict::Incomplete
            }
        }
        Some(exact) => {
            if outcome.status == Status::Fail {
                return Verdict::Unsound;
            }
            let keeps_all = exact.n.iter().all(|v| outcome.n.contains(v))
                && exact
                    .x
                    .iter()
                    .zip(&outcome.x)
                    .all(|(e, o)| e.iter().all(|v| o.contains(v)));
            if !keeps_all {
                return Verdict::Unsound;
            }
            let tight = outcome.n.len() == exact.n.len()
                && outcome.x.iter().zip(&exact.x).all(|(o, e)| o.len() == e.len());
            if tight {
                Verdict::Exact
            } else {
                Verdict::Incomplete
            }
        }
    }
}

fn cmd_check(
    cli: &Cli,
    family: &Family,
    runs: usize,
    len: usize,
    values: i64,
) -> Result<ExitCode, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut exact = 0usize;
    let mut incomplete = 0usize;
    let mut unsound = 0usize;
    let mut infeasible = 0usize;
    let mut skipped = 0usize;
    let mut first_unsound: Option<String> = None;
    for _ in 0..runs {
        let problem = random_problem(family, len, values, &mut rng);
        let reform = catalog::problem_to_core(&problem).map_err(|e| e.to_string())?;
        let outcome = match propagate_with(&reform.instance, PairMode::Auto) {
            Ok(outcome) => outcome,
            Err(_) => {
                // A drawn table admits no neighbor order; the filter refuses
                // such instances by design.
                skipped += 1;
                continue;
            }
        };
        let truth = oracle::gac_oracle(&reform.instance, cli.cap).map_err(|e| e.to_string())?;
        if truth.is_none() {
            infeasible += 1;
        }
        match compare(&outcome, truth.as_ref()) {
            Verdict::Exact => exact += 1,
            Verdict::Incomplete => incomplete += 1,
            Verdict::Unsound => {
                unsound += 1;
                first_unsound.get_or_insert_with(|| reform.instance.to_json());
            }
        }
    }
    match cli.format {
        Format::Json => {
            let mut obj = json!({
                "family": family.to_string(),
                "runs": runs,
                "exact": exact,
                "incomplete": incomplete,
                "unsound": unsound,
                "infeasible": infeasible,
                "skipped": skipped,
            });
            if let Some(witness) = &first_unsound {
                obj["first_unsound"] = serde_json::from_str(witness).expect("instance dump is JSON");
            }
            println!("{obj}");
        }
        Format::Text => {
            println!("family {family}");
            println!("runs {runs}");
            println!("exact {exact}");
            println!("incomplete {incomplete}");
            println!("unsound {unsound}");
            println!("infeasible {infeasible}");
            println!("skipped {skipped}");
            if let Some(witness) = &first_unsound {
                println!("UNSOUND {witness}");
            }
        }
    }
    if unsound > 0 {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn cmd_classify(cli: &Cli, file: &PathBuf) -> Result<ExitCode, String> {
    let problem = load_problem(file)?;
    let reform = catalog::problem_to_core(&problem).map_err(|e| e.to_string())?;
    let inst = &reform.instance;
    let constraint = match &problem {
        Problem::Core(_) => "seqbin",
        Problem::Catalog { spec, .. } => spec.name(),
    };
    let universe: Vec<i64> = {
        let mut all: Vec<i64> = inst.x.iter().flat_map(|d| d.iter()).collect();
        all.sort_unstable();
        all.dedup();
        all
    };
    let order = monotonic_order(&inst.b, &universe);
    let specialized = fast::fast_kind(&inst.c, &inst.b).is_some();
    let continuity = match reform.continuity {
        ContinuityTag::Continuous => "continuous",
        ContinuityTag::NotGuaranteed => "not_guaranteed",
    };
    match cli.format {
        Format::Json => {
            let obj = json!({
                "constraint": constraint,
                "C": inst.c,
                "B": inst.b,
                "count_offset": reform.n_offset,
                "monotonic_b": order.is_some(),
                "b_order": order.as_ref().map(|o| &o.values),
                "specialized": specialized,
                "continuity": continuity,
            });
            println!("{obj}");
        }
        Format::Text => {
            println!("constraint {constraint}");
            println!("C {}", inst.c.kind().name());
            println!("B {}", inst.b.kind().name());
            println!("count_offset {}", reform.n_offset);
            println!("monotonic_b {}", order.is_some());
            if let Some(o) = &order {
                let values: Vec<String> = o.values.iter().map(|v| v.to_string()).collect();
                println!("b_order {}", values.join(" "));
            }
            println!("specialized {specialized}");
            println!("continuity {continuity}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(
    cli: &Cli,
    family: &Family,
    runs: usize,
    len: usize,
    values: i64,
    mode: PairMode,
) -> Result<ExitCode, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut touched = 0u64;
    let mut passes = 0usize;
    let mut removed = 0usize;
    let mut failed = 0usize;
    let mut skipped = 0usize;
    let start = Instant::now();
    for _ in 0..runs {
        let problem = random_problem(family, len, values, &mut rng);
        let reform = catalog::problem_to_core(&problem).map_err(|e| e.to_string())?;
        match propagate_with(&reform.instance, mode) {
            Ok(outcome) => {
                touched += outcome.touched;
                passes += outcome.passes;
                removed += outcome.removed;
                if outcome.status == Status::Fail {
                    failed += 1;
                }
            }
            Err(_) => skipped += 1,
        }
    }
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    match cli.format {
        Format::Json => {
            let obj = json!({
                "family": family.to_string(),
                "runs": runs,
                "len": len,
                "values": values,
                "mode": if mode == PairMode::Auto { "auto" } else { "generic" },
                "touched": touched,
                "passes": passes,
                "removed": removed,
                "failed": failed,
                "skipped": skipped,
                "wall_ms": wall_ms,
            });
            println!("{obj}");
        }
        Format::Text => {
            println!("family {family}");
            println!("runs {runs}");
            println!("len {len}");
            println!("values {values}");
            println!("mode {}", if mode == PairMode::Auto { "auto" } else { "generic" });
            println!("touched {touched}");
            println!("passes {passes}");
            println!("removed {removed}");
            println!("failed {failed}");
            println!("skipped {skipped}");
            println!("wall_ms {wall_ms}");
        }
    }
    Ok(ExitCode::SUCCESS)
}
