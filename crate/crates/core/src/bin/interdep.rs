use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use interdep::bench::{self, SuiteConfig};
use interdep::design;
use interdep::exact::{self, Method};
use interdep::generators;
use interdep::heuristics::{self, HeuristicResult, SaParams, DEFAULT_TRIALS};
use interdep::lp::{self, Fixings};
use interdep::{cascade, BipartiteGraph, InterdependentNetwork, NodeRef, NodeSet};

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(
    name = "interdep",
    version,
    about = "Robustness metrics for interdependent networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate the cascade triggered by removing nodes
    Cascade {
        #[arg(long)]
        net: PathBuf,
        /// Comma-separated nodes, e.g. `a:4,b:2`
        #[arg(long, default_value = "")]
        remove: String,
        /// Emit one JSON line per stage
        #[arg(long)]
        trace: bool,
    },
    /// Check the operating conditions of a network file
    Validate {
        #[arg(long)]
        net: PathBuf,
    },
    /// Exact minimum removals from A that fail D nodes of B
    Mr {
        #[arg(long)]
        net: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = ExactMethod::Exact)]
        method: ExactMethod,
        #[arg(long)]
        timing: bool,
    },
    /// Exact minimum removals from both sides that fail D nodes of B
    Mrb {
        #[arg(long)]
        net: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        timing: bool,
    },
    /// Greedy heuristic
    Greedy(HeuristicArgs),
    /// Randomized rounding of the LP relaxation
    Round {
        #[command(flatten)]
        common: HeuristicArgs,
        /// Include the LP solution in the output
        #[arg(long)]
        dump_lp: bool,
    },
    /// Simulated annealing over removal sets
    Anneal1(HeuristicArgs),
    /// Simulated annealing over failure sets
    Anneal2(HeuristicArgs),
    /// Generate a random or structured network
    Gen {
        #[arg(long, value_enum)]
        family: GenFamily,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<f64>,
        #[arg(long)]
        k1: Option<f64>,
        #[arg(long)]
        k2: Option<f64>,
        /// Batch size for the greedy worst case
        #[arg(long)]
        x: Option<usize>,
        /// Target failures for the greedy worst case
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a network maximising MR(1) and MR(2)
    Design {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = DesignMethod::Construct)]
        method: DesignMethod,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Node expansion of the interdependency graph
    Expansion {
        #[arg(long)]
        net: PathBuf,
        #[arg(long, conflicts_with = "sample")]
        exact: bool,
        #[arg(long)]
        sample: bool,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Frequency of node expanders among random k-B-regular graphs
    Expander {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run an experiment grid and write CSV
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock runtimes (output is then not reproducible)
        #[arg(long)]
        timing: bool,
    },
    /// Aggregate a results CSV per family, size, degree, D and algorithm
    Summarize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct HeuristicArgs {
    #[arg(long)]
    net: PathBuf,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long)]
    tf: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long = "L")]
    inner_loop: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long)]
    timing: bool,
}

impl HeuristicArgs {
    fn sa_params(&self) -> SaParams {
        let d = SaParams::with_seed(self.seed);
        SaParams {
            t_initial: self.t0.unwrap_or(d.t_initial),
            t_final: self.tf.unwrap_or(d.t_final),
            r: self.r.unwrap_or(d.r),
            inner_loop: self.inner_loop.or(d.inner_loop),
            seed: self.seed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExactMethod {
    Exact,
    Bnb,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    Type1,
    Type2,
    Regular,
    Worstcase,
}

#[derive(Clone, Copy, ValueEnum)]
enum DesignMethod {
    Construct,
    Ilp,
}

fn node_strings(set: &NodeSet) -> Vec<String> {
    set.iter().map(|n| n.to_string()).collect()
}

fn elapsed(start: Instant, timing: bool) -> Option<f64> {
    timing.then(|| start.elapsed().as_secs_f64() * 1e3)
}

fn print_json(v: &impl Serialize) -> CliResult<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn load(path: &Path) -> CliResult<InterdependentNetwork> {
    InterdependentNetwork::load(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn parse_nodes(spec: &str) -> CliResult<NodeSet> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<NodeRef>().map_err(Into::into))
        .collect()
}

fn heuristic_json(r: &HeuristicResult, timing: bool) -> Value {
    json!({
        "value": r.size,
        "witness": node_strings(&r.removal),
        "method": r.method.name(),
        "elapsed_ms": timing.then(|| r.elapsed_ms()),
        "seed": r.seed,
        "failed": node_strings(&r.failed),
        "trajectory": r.trajectory,
    })
}

fn write_output(
    path: Option<&Path>,
    write: impl FnOnce(&mut dyn Write) -> CliResult<()>,
) -> CliResult<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            write(&mut w)?;
            w.flush()?;
        }
        None => write(&mut io::stdout().lock())?,
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Cascade { net, remove, trace } => {
            let net = load(&net)?;
            let result = cascade(&net, &parse_nodes(&remove)?)?;
            if trace {
                for (stage, failed) in result.stages.iter().enumerate() {
                    print_json(&json!({ "stage": stage, "failed": node_strings(failed) }))?;
                }
            }
            print_json(&json!({
                "stages": result.stage_count,
                "failed": node_strings(&result.failed()),
                "induced": node_strings(&result.induced()),
                "surviving_a": result.surviving_a,
                "surviving_b": result.surviving_b,
            }))?;
        }
        Command::Validate { net } => {
            let net = load(&net)?;
            let violations: Vec<String> = net.validate().iter().map(|v| v.to_string()).collect();
            print_json(&json!({ "valid": violations.is_empty(), "violations": violations }))?;
        }
        Command::Mr {
            net,
            d,
            method,
            timing,
        } => {
            let net = load(&net)?;
            let start = Instant::now();
            let (r, name) = match method {
                ExactMethod::Exact => (exact::mr_exact(&net, d)?, Method::Exact),
                ExactMethod::Bnb => (exact::mr_branch_and_bound(&net, d)?, Method::Bnb),
            };
            print_json(&json!({
                "value": r.value,
                "witness": node_strings(&r.witness),
                "method": name.name(),
                "elapsed_ms": elapsed(start, timing),
            }))?;
        }
        Command::Mrb { net, d, timing } => {
            let net = load(&net)?;
            let start = Instant::now();
            let (value, witness, method) = if net.is_bidirectional_star() {
                let r = exact::mrb_exact_with_witness(&net, d)?;
                (r.value, Some(node_strings(&r.witness)), "exact")
            } else {
                (exact::mrb_exact_general(&net, d)?, None, "general")
            };
            print_json(&json!({
                "value": value,
                "witness": witness,
                "method": method,
                "elapsed_ms": elapsed(start, timing),
            }))?;
        }
        Command::Greedy(a) => {
            let net = load(&a.net)?;
            print_json(&heuristic_json(
                &heuristics::greedy(&net, a.d, a.seed)?,
                a.timing,
            ))?;
        }
        Command::Round { common: a, dump_lp } => {
            let net = load(&a.net)?;
            let start = Instant::now();
            let sol = lp::solve_relaxation(&net, a.d, &Fixings::none())?;
            let mut r = heuristics::randomized_rounding_with(&net, a.d, a.seed, a.trials, &sol)?;
            r.elapsed = start.elapsed();
            let mut out = heuristic_json(&r, a.timing);
            if dump_lp {
                out["lp"] = serde_json::to_value(&sol)?;
            }
            print_json(&out)?;
        }
        Command::Anneal1(a) => {
            let net = load(&a.net)?;
            print_json(&heuristic_json(
                &heuristics::sa1(&net, a.d, &a.sa_params(), None)?,
                a.timing,
            ))?;
        }
        Command::Anneal2(a) => {
            let net = load(&a.net)?;
            print_json(&heuristic_json(
                &heuristics::sa2(&net, a.d, &a.sa_params(), None)?,
                a.timing,
            ))?;
        }
        Command::Gen {
            family,
            n,
            k,
            k1,
            k2,
            x,
            d,
            seed,
            out,
        } => {
            let need = |v: Option<f64>, name: &str| {
                v.ok_or_else(|| format!("--{name} is required for this family"))
            };
            let need_n = || n.ok_or("--n is required for this family");
            let net = match family {
                GenFamily::Type1 => generators::gen_type1(need_n()?, need(k, "k")?, seed)?,
                GenFamily::Type2 => {
                    generators::gen_type2(need_n()?, need(k1, "k1")?, need(k2, "k2")?, seed)?
                }
                GenFamily::Regular => {
                    let k = need(k, "k")?;
                    if k.fract() != 0.0 || k < 0.0 {
                        return Err(
                            "--k must be a non-negative integer for regular networks".into()
                        );
                    }
                    generators::gen_regular(need_n()?, k as usize, seed)?
                }
                GenFamily::Worstcase => generators::gen_greedy_worst_case(
                    x.ok_or("--x is required for worstcase")?,
                    d.ok_or("--d is required for worstcase")?,
                )?,
            };
            write_output(out.as_deref(), |w| {
                Ok(w.write_all(net.to_text().as_bytes())?)
            })?;
        }
        Command::Design { k, n, method, out } => {
            let (net, x) = match method {
                DesignMethod::Construct => {
                    let net = design::construct_2robust(k)?;
                    let x = 2 * k - design::max_pair_overlap(&BipartiteGraph::from(&net));
                    (net, x)
                }
                DesignMethod::Ilp => {
                    let r = design::design_2robust_ilp(
                        n.ok_or("--n is required for --method ilp")?,
                        k,
                    )?;
                    (r.network, r.x)
                }
            };
            if let Some(path) = &out {
                net.save(path)?;
            }
            print_json(&json!({
                "n": net.n_a(),
                "k": k,
                "x": x,
                "method": match method { DesignMethod::Construct => "construct", DesignMethod::Ilp => "ilp" },
            }))?;
        }
        Command::Expansion {
            net,
            exact: _,
            sample,
            samples,
            seed,
        } => {
            let net = load(&net)?;
            if sample {
                let b = design::node_expansion_sampled(&net, samples, seed)?;
                print_json(&json!({
                    "lower": b.lower.to_string(),
                    "upper": b.upper.to_string(),
                    "witness": node_strings(&b.witness),
                    "samples": b.samples,
                    "method": "sample",
                }))?;
            } else {
                let h = design::node_expansion(&BipartiteGraph::from(&net))?;
                print_json(&json!({
                    "value": h.value.to_string(),
                    "witness": node_strings(&h.witness),
                    "method": "exact",
                }))?;
            }
        }
        Command::Expander {
            n,
            k,
            alpha,
            trials,
            seed,
        } => {
            print_json(&design::expander_check(n, k, alpha, trials, seed)?)?;
        }
        Command::Bench {
            config,
            out,
            timing,
        } => {
            let cfg = SuiteConfig::load(&config)?;
            let rows = bench::run_suite(&cfg, timing)?;
            write_output(out.as_deref(), |w| Ok(bench::write_csv(&rows, w)?))?;
        }
        Command::Summarize { input, out } => {
            let rows = bench::read_csv(File::open(&input)?)?;
            let summary = bench::summarize(&rows);
            write_output(out.as_deref(), |w| Ok(bench::write_summary(&summary, w)?))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
