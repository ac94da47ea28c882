//! Command-line interface.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use iscount_core::chromatic::{
    chi_from_sums, inclusion_exclusion_sums, ChromaticError, ChromaticResult, DEFAULT_CHROMATIC_CAP,
};
use iscount_core::generate;
use iscount_core::graph::Graph;
use iscount_core::iscount::{iscount, iscount_with_stats, EngineConfig, EngineError, DEFAULT_SMALL_CUTOFF};
use iscount_core::oracle::{count_is_bruteforce, weighted_total_bruteforce, OracleError, OracleLimit, DEFAULT_ORACLE_CAP};
use iscount_core::partition::{bisect, skeleton, Partition};
use iscount_core::CardinalityState;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::format::{parse_graph, GraphFormat, ParseError};
use crate::report::{chromatic_json, stats_json};

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_CONTRACT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "iscount", version, about = "Exact counting of independent sets and chromatic numbers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count independent sets of a graph.
    Count {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        engine: EngineArgs,
        /// Also print search statistics.
        #[arg(long)]
        stats: bool,
        /// Print a JSON object instead of plain text.
        #[arg(long)]
        json: bool,
    },
    /// Chromatic number by inclusion-exclusion over vertex subsets.
    Chromatic {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        engine: EngineArgs,
        /// Largest accepted number of vertices.
        #[arg(long, default_value_t = DEFAULT_CHROMATIC_CAP)]
        cap: usize,
        /// Worker threads sharing the subsets.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=256))]
        jobs: u32,
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        json: bool,
    },
    /// Count independent sets by enumerating subsets.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        /// Largest accepted number of vertices (at most 30).
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Compare the engine with brute force on seeded random graphs.
    Selftest {
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 14, value_parser = clap::value_parser!(u32).range(1..=20))]
        max_n: u32,
    },
    /// Run the engine on seeded random cubic graphs and tabulate statistics.
    Bench {
        #[command(flatten)]
        engine: EngineArgs,
        /// Even vertex counts, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [20usize, 30, 40, 50, 60])]
        sizes: Vec<usize>,
        /// Add a wall-clock column; the output is then no longer reproducible.
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph file, or `-` for standard input.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
    pub format: GraphFormat,
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// Branch plainly once at most this many vertices have degree >= 3.
    #[arg(long, env = "ISCOUNT_CUTOFF", default_value_t = DEFAULT_SMALL_CUTOFF,
          value_parser = parse_cutoff)]
    pub cutoff: usize,
    /// Seed for bisections and generated instances.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn parse_cutoff(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(c) if c >= 2 => Ok(c),
        Ok(_) => Err("cutoff must be at least 2".into()),
        Err(e) => Err(e.to_string()),
    }
}

impl EngineArgs {
    fn config(&self, stats: bool) -> EngineConfig {
        EngineConfig {
            small_cutoff: self.cutoff,
            rng_seed: self.seed,
            collect_stats: stats,
            ..EngineConfig::default()
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Cap(OracleError),
    #[error("graph has {n} vertices, the limit is {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("{0}")]
    Contract(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) => EXIT_PARSE,
            CliError::Cap(_) | CliError::TooLarge { .. } => EXIT_CAP,
            CliError::Contract(_) => EXIT_CONTRACT,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        CliError::Contract(e.to_string())
    }
}

impl From<ChromaticError> for CliError {
    fn from(e: ChromaticError) -> Self {
        match e {
            ChromaticError::TooLarge { n, cap } => CliError::TooLarge { n, cap },
            ChromaticError::Engine(e) => e.into(),
        }
    }
}

fn read_graph(input: &InputArgs) -> Result<Graph, CliError> {
    let mut text = String::new();
    let path = input.input.display().to_string();
    let io = |source| CliError::Io { path: path.clone(), source };
    if path == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(io)?;
    } else {
        text = std::fs::read_to_string(&input.input).map_err(io)?;
    }
    Ok(parse_graph(&text, input.format)?)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string(v).expect("json values serialise")
}

/// Runs a command and returns everything it prints on standard output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Count {
            input,
            engine,
            stats,
            json,
        } => {
            let g = read_graph(input)?;
            let cfg = engine.config(*stats);
            let (total, st) = iscount_with_stats(&g, &CardinalityState::trivial(&g), &Partition::empty(), &cfg)?;
            Ok(match (json, stats) {
                (true, true) => pretty(&json!({"total": total.to_string(), "stats": stats_json(&st)})) + "\n",
                (true, false) => pretty(&json!({"total": total.to_string()})) + "\n",
                (false, true) => format!("{total}\n{}\n", pretty(&stats_json(&st))),
                (false, false) => format!("{total}\n"),
            })
        }
        Command::Chromatic {
            input,
            engine,
            cap,
            jobs,
            stats,
            json,
        } => {
            let g = read_graph(input)?;
            let r = chromatic_parallel(&g, &engine.config(false), *cap, *jobs as usize)?;
            Ok(match (json, stats) {
                (true, true) => pretty(&chromatic_json(&r)) + "\n",
                (true, false) => pretty(&json!({"chi": r.chi})) + "\n",
                (false, true) => format!("{}\n{}\n", r.chi, pretty(&chromatic_json(&r))),
                (false, false) => format!("{}\n", r.chi),
            })
        }
        Command::Oracle { input, cap, json } => {
            let g = read_graph(input)?;
            if *cap > iscount_core::oracle::HARD_ORACLE_CAP {
                return Err(CliError::Cap(OracleError::TooLarge {
                    n: g.n(),
                    cap: iscount_core::oracle::HARD_ORACLE_CAP,
                }));
            }
            let count = count_is_bruteforce(&g, OracleLimit::new(*cap)).map_err(CliError::Cap)?;
            Ok(if *json {
                pretty(&json!({"total": count.to_string()})) + "\n"
            } else {
                format!("{count}\n")
            })
        }
        Command::Selftest {
            engine,
            trials,
            max_n,
        } => selftest(&engine.config(false), engine.seed, *trials, *max_n as usize),
        Command::Bench {
            engine,
            sizes,
            timing,
            json,
        } => bench(engine, sizes, *timing, *json),
    }
}

/// Splits the subset range into `jobs` contiguous slices summed on scoped
/// threads; the sums are exact, so the result does not depend on `jobs`.
pub fn chromatic_parallel(
    g: &Graph,
    cfg: &EngineConfig,
    cap: usize,
    jobs: usize,
) -> Result<ChromaticResult, ChromaticError> {
    let n = g.n();
    if n > cap.min(63) {
        return Err(ChromaticError::TooLarge { n, cap });
    }
    let total = 1u64 << n;
    let jobs = (jobs.max(1) as u64).min(total);
    let chunk = total.div_ceil(jobs);
    let parts: Vec<Result<Vec<BigInt>, ChromaticError>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let range = j * chunk..((j + 1) * chunk).min(total);
                s.spawn(move || inclusion_exclusion_sums(g, range, cfg))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut sums = vec![BigInt::from(0); n];
    for part in parts {
        for (s, p) in sums.iter_mut().zip(part?) {
            *s += p;
        }
    }
    let chi = if n == 0 { 0 } else { chi_from_sums(&sums).expect("n colours suffice") };
    sums.truncate(chi);
    Ok(ChromaticResult {
        chi,
        per_k_sums: sums,
        subsets_evaluated: total,
    })
}

const DENSITIES: [f64; 4] = [0.1, 0.3, 0.5, 0.8];

fn selftest(cfg: &EngineConfig, seed: u64, trials: usize, max_n: usize) -> Result<String, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limit = OracleLimit::default();
    let (mut plain_ok, mut weighted_ok) = (0, 0);
    let weighted_trials = trials / 2;
    for _ in 0..trials {
        let n = rng.gen_range(1..=max_n);
        let g = generate::gnp(n, DENSITIES[rng.gen_range(0..4)], &mut rng);
        let want = count_is_bruteforce(&g, limit).map_err(CliError::Cap)?;
        let got = iscount(&g, &CardinalityState::trivial(&g), &Partition::empty(), cfg)?;
        if got == BigInt::from(want).into() {
            plain_ok += 1;
        }
    }
    for _ in 0..weighted_trials {
        let n = rng.gen_range(1..=max_n.min(12));
        let g = generate::gnp(n, DENSITIES[rng.gen_range(0..4)], &mut rng);
        let c = generate::random_state(&g, rng.gen_bool(0.5), &mut rng);
        let want = weighted_total_bruteforce(&g, &c, limit).map_err(CliError::Cap)?;
        if iscount(&g, &c, &Partition::empty(), cfg)? == want {
            weighted_ok += 1;
        }
    }
    let report = format!(
        "seed {seed}\nunweighted {plain_ok}/{trials} passed\nweighted {weighted_ok}/{weighted_trials} passed\n"
    );
    if plain_ok == trials && weighted_ok == weighted_trials {
        Ok(report + "ok\n")
    } else {
        Err(CliError::Contract(report + "selftest failed"))
    }
}

fn bench(engine: &EngineArgs, sizes: &[usize], timing: bool, as_json: bool) -> Result<String, CliError> {
    if let Some(&bad) = sizes.iter().find(|&&n| n < 4 || n % 2 == 1) {
        return Err(CliError::Contract(format!("bench sizes must be even and at least 4, got {bad}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(engine.seed);
    let cfg = engine.config(true);
    let mut rows = Vec::new();
    let mut text = String::from("n\tn3\twidth\tbranch_nodes\tbisections\trestarts\tdepth");
    text.push_str(if timing { "\tms\n" } else { "\n" });
    for &n in sizes {
        let g = generate::random_cubic(n, &mut rng);
        let b = skeleton(&g).expect("cubic");
        let width = bisect(&b, engine.seed).ec(&b);
        let start = std::time::Instant::now();
        let (_, st) = iscount_with_stats(&g, &CardinalityState::trivial(&g), &Partition::empty(), &cfg)?;
        let ms = start.elapsed().as_millis();
        text.push_str(&format!(
            "{n}\t{}\t{width}\t{}\t{}\t{}\t{}",
            b.n(),
            st.branch_nodes,
            st.bisections,
            st.restarts,
            st.max_depth
        ));
        text.push_str(&if timing { format!("\t{ms}\n") } else { "\n".into() });
        let mut row = json!({"n": n, "n3": b.n(), "width": width, "stats": stats_json(&st)});
        if timing {
            row["ms"] = json!(ms);
        }
        rows.push(row);
    }
    Ok(if as_json { pretty(&json!(rows)) + "\n" } else { text })
}
