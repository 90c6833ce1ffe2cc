//! Command-line front end.
//!
//! Exit codes: 0 success, 1 internal error, 2 infeasible instance,
//! 3 input format or usage error, 4 brute-force cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::closure::densest_closure_with;
use crate::constrained::{
    den_combo_greedy_with, den_knapsack_greedy_with, den_m_greedy_with, GreedyOutcome,
    KnapsackConstraint,
};
use crate::density::{densest_subset_with, DensityResult, Engine};
use crate::error::{Error, Result};
use crate::io;
use crate::oracle::{brute_optimum, Constraint};
use crate::report::{ExactValue, FactorCertificate, RunReport, SetReport, TraceReport, Variant};
use crate::setfn::check_monotone_supermodular;
use crate::subset::Subset;

#[derive(Debug, Parser)]
#[command(
    name = "supdense",
    version,
    about = "Densest subsets of supermodular set functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Maximize f(S)/|S| for a graph or an explicit value table.
    Densest(DensestArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Flow,
    Brute,
}

#[derive(Debug, Args)]
struct DensestArgs {
    /// Graph file, or value table with --table.
    input: PathBuf,

    /// Read INPUT as an explicit value table.
    #[arg(long)]
    table: bool,

    /// Co-matroid constraint: the complement of S must be independent.
    #[arg(long, value_name = "SPEC.json", conflicts_with_all = ["knapsack", "closure"])]
    matroid: Option<PathBuf>,

    /// Knapsack cover constraint weights (use with --k).
    #[arg(
        long,
        value_name = "WEIGHTS.txt",
        requires = "k",
        conflicts_with = "closure"
    )]
    knapsack: Option<PathBuf>,

    /// Knapsack threshold: total weight of S must be at least K.
    #[arg(long, requires = "knapsack")]
    k: Option<u64>,

    /// Dependency arcs: S must be closed under them.
    #[arg(long, value_name = "ARCS.txt")]
    closure: Option<PathBuf>,

    /// Elements S must contain, comma separated.
    #[arg(long, value_name = "IDS", conflicts_with_all = ["knapsack", "closure"])]
    require: Option<String>,

    #[arg(long, value_enum, default_value = "auto")]
    engine: EngineArg,

    /// Also run the exhaustive solver and report the approximation ratio.
    #[arg(long)]
    verify: bool,

    /// Include the greedy chain in the report.
    #[arg(long)]
    trace: bool,

    /// Emit a JSON report.
    #[arg(long)]
    json: bool,

    /// Reserved for randomized utilities; accepted and ignored by the solvers.
    #[arg(long)]
    seed: Option<u64>,

    /// Element labels, one per line.
    #[arg(long, value_name = "LABELS.txt")]
    labels: Option<PathBuf>,
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match cli.command {
        Command::Densest(args) => match densest(&args, err) {
            Ok(report) => {
                let text = if args.json {
                    report.to_json() + "\n"
                } else {
                    report.to_text()
                };
                let _ = out.write_all(text.as_bytes());
                0
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                e.exit_code()
            }
        },
    }
}

enum Solved {
    Exact(DensityResult),
    Greedy(GreedyOutcome),
}

impl Solved {
    fn result(&self) -> &DensityResult {
        match self {
            Solved::Exact(r) => r,
            Solved::Greedy(g) => &g.result,
        }
    }
}

fn densest(args: &DensestArgs, err: &mut dyn Write) -> Result<RunReport> {
    let started = Instant::now();
    let mut f = if args.table {
        io::read_table(&args.input)?
    } else {
        io::read_graph(&args.input)?
    };
    let n = f.n();
    if let Some(p) = &args.labels {
        f.ground_mut()
            .set_labels(io::read_labels(p)?)
            .map_err(|e| Error::parse(None, e.to_string()).with_path(p))?;
    }
    if !f.declares_monotone_supermodular() {
        let rep = check_monotone_supermodular(&f)?;
        if let Some((a, b)) = rep.witness() {
            let what = if rep.supermodular {
                "monotone"
            } else {
                "supermodular"
            };
            return Err(
                Error::parse(None, format!("table is not {what}: witness {a}, {b}"))
                    .with_path(&args.input),
            );
        }
    }

    let engine = match args.engine {
        EngineArg::Auto => Engine::auto(&f),
        EngineArg::Flow => {
            if !f.is_graph() {
                return Err(Error::InvalidInput(
                    "--engine flow needs a graph input".into(),
                ));
            }
            Engine::Flow
        }
        EngineArg::Brute => {
            if f.is_graph() {
                let _ = writeln!(
                    err,
                    "warning: --engine brute enumerates subsets and is capped at {} free elements",
                    crate::density::BRUTE_FORCE_CAP
                );
            }
            Engine::BruteForce
        }
    };

    let required = match &args.require {
        Some(list) => Some(io::parse_id_list(list, n).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::InvalidInput(format!("--require: {msg}")),
            other => other,
        })?),
        None => None,
    };
    let matroid = args
        .matroid
        .as_ref()
        .map(|p| io::read_matroid(p, n))
        .transpose()?;
    let knapsack = match (&args.knapsack, args.k) {
        (Some(p), Some(k)) => Some(KnapsackConstraint::new(io::read_weights(p, n)?, k)),
        _ => None,
    };
    let digraph = args
        .closure
        .as_ref()
        .map(|p| io::read_arcs(p, n))
        .transpose()?;

    let empty = Subset::empty(n);
    let (variant, solved) = if let Some(c) = &knapsack {
        (
            Variant::Knapsack,
            Solved::Greedy(den_knapsack_greedy_with(&f, c, engine)?),
        )
    } else if let Some(d) = &digraph {
        (
            Variant::Closure,
            Solved::Exact(densest_closure_with(&f, d, engine)?),
        )
    } else if let Some(m) = &matroid {
        match &required {
            Some(a) => (
                Variant::Combo,
                Solved::Greedy(den_combo_greedy_with(&f, m, a, engine)?),
            ),
            None => (
                Variant::CoMatroid,
                Solved::Greedy(den_m_greedy_with(&f, m, engine)?),
            ),
        }
    } else if let Some(a) = &required {
        (
            Variant::Subset,
            Solved::Exact(densest_subset_with(&f, a, engine)?),
        )
    } else {
        (
            Variant::Densest,
            Solved::Exact(densest_subset_with(&f, &empty, engine)?),
        )
    };

    let result = solved.result();
    let factor_certificate = if args.verify {
        let constraint = match variant {
            Variant::Densest => Constraint::Unconstrained,
            Variant::CoMatroid => Constraint::CoMatroid(matroid.as_ref().unwrap()),
            Variant::Knapsack => Constraint::Knapsack(knapsack.as_ref().unwrap()),
            Variant::Closure => Constraint::Closure(digraph.as_ref().unwrap()),
            Variant::Subset => Constraint::Subset(required.as_ref().unwrap()),
            Variant::Combo => {
                Constraint::Combo(matroid.as_ref().unwrap(), required.as_ref().unwrap())
            }
        };
        let opt = brute_optimum(&f, constraint)?;
        Some(FactorCertificate::new(
            opt.opt_density,
            &opt.opt_set,
            result.best_density,
            variant.factor(),
        ))
    } else {
        None
    };

    let trace = match (&solved, args.trace) {
        (Solved::Greedy(g), true) => Some(TraceReport::from(&g.trace)),
        _ => None,
    };
    Ok(RunReport {
        variant,
        engine: result.engine,
        n,
        best_set: SetReport::new(&result.best_set, f.ground()),
        best_density: ExactValue::from(result.best_density),
        iterations: result.iterations,
        factor_certificate,
        trace,
        wall_time_ms: started.elapsed().as_millis() as u64,
    })
}
