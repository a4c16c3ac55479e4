use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dyncover::bench::{bench_scaling, Format, RunError, ScalingSpec, ORACLE_CAP};
use dyncover::workloads::{
    gen_clique_instance, gen_deletion_trace, gen_element_update_gadget, gen_mixed_trace, gen_random_system,
    gen_set_update_gadget, ContainmentInstance, ContainmentParams, DeletionOrder, Planted,
};
use dyncover::{run, Algo, Error, RunConfig, SetSystem, UpdateTrace};

#[derive(Parser)]
#[command(name = "dyncover", version, about = "Dynamic set cover solvers and workloads")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Replay a trace through a solver and write a metrics document.
    Run {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        #[arg(long, default_value = "fully-dynamic")]
        algo: Algo,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        check_invariants: bool,
        #[arg(long)]
        oracle_opt: bool,
        #[arg(long, default_value_t = ORACLE_CAP)]
        oracle_cap: usize,
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Generate instances and traces.
    #[command(subcommand)]
    Gen(Gen),
    /// Per-deletion work of the decremental solver over doubling n.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [1024usize, 2048, 4096])]
        n: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        f: usize,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, default_value_t = 1.0)]
        sets_per_element: f64,
        #[arg(long)]
        adversarial: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Random system with bounded frequency.
    System {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        f: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Disjoint cliques plus an isolated edge.
    Clique {
        #[arg(long)]
        f: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace over an existing instance.
    Trace {
        #[arg(long)]
        instance: PathBuf,
        /// random, adversarial or mixed
        #[arg(long, default_value = "random")]
        order: String,
        /// Number of updates for mixed traces (default 3n).
        #[arg(long)]
        len: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Containment gadget: writes PREFIX.sys and PREFIX.trace.
    Gadget {
        /// element or set
        #[arg(long, default_value = "element")]
        kind: String,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        a: usize,
        #[arg(long, default_value_t = 6)]
        b: usize,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[arg(long)]
        no: bool,
        /// Universe copies for the set gadget (default n²).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn write(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_system(p: &Path) -> Result<SetSystem, Error> {
    SetSystem::parse(&fs::read_to_string(p)?)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match dispatch(Cli::parse().cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Violation(c)) => {
            eprintln!("{}", c.dump());
            ExitCode::from(2)
        }
        Err(RunError::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<(), RunError> {
    match cmd {
        Cmd::Run {
            instance,
            trace,
            algo,
            epsilon,
            seed,
            check_invariants,
            oracle_opt,
            oracle_cap,
            timing,
            out,
            format,
        } => {
            let system = load_system(&instance)?;
            let trace = UpdateTrace::parse(&fs::read_to_string(&trace).map_err(Error::from)?)?;
            let cfg = RunConfig {
                check_invariants,
                oracle: oracle_opt,
                oracle_cap,
                timing,
                ..RunConfig::new(algo, epsilon, seed)
            };
            let metrics = run(&cfg, &system, &trace)?;
            write(out.as_deref(), &metrics.emit(format))?;
        }
        Cmd::Gen(g) => gen(g)?,
        Cmd::Bench {
            n,
            f,
            epsilon,
            seeds,
            sets_per_element,
            adversarial,
            out,
        } => {
            let spec = ScalingSpec {
                ns: n,
                f,
                epsilon,
                seeds: (0..seeds).collect(),
                sets_per_element,
                adversarial,
            };
            let report = bench_scaling(&spec)?;
            for p in &report.points {
                eprintln!("n = {:>7}  touches/deletion = {:.2}", p.n, p.mean_per_deletion);
            }
            eprintln!("spread {:.3}, exponent {:.3}", report.spread, report.exponent);
            if report.growth_flagged {
                log::warn!("per-deletion work grows with n");
            }
            let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            write(out.as_deref(), &text)?;
        }
    }
    Ok(())
}

fn gen(g: Gen) -> Result<(), Error> {
    match g {
        Gen::System { n, m, f, seed, out } => write(out.as_deref(), &gen_random_system(n, m, f, seed)?.to_text()),
        Gen::Clique { f, n, out } => write(out.as_deref(), &gen_clique_instance(f, n)?.to_text()),
        Gen::Trace {
            instance,
            order,
            len,
            seed,
            out,
        } => {
            let system = load_system(&instance)?;
            let trace = match order.as_str() {
                "random" => gen_deletion_trace(&system, DeletionOrder::Random, seed)?,
                "adversarial" => gen_deletion_trace(&system, DeletionOrder::PivotAdversarial, seed)?,
                "mixed" => gen_mixed_trace(&system, len.unwrap_or(3 * system.n()), seed)?,
                other => return Err(Error::Parameter(format!("unknown order {other:?}"))),
            };
            write(out.as_deref(), &trace.to_text())
        }
        Gen::Gadget {
            kind,
            n,
            a,
            b,
            t,
            no,
            k,
            seed,
            out,
        } => {
            let planted = if no { Planted::No } else { Planted::Yes };
            let params = ContainmentParams {
                n,
                a_count: a,
                b_count: b,
                t,
                planted,
            };
            let ci = ContainmentInstance::generate(params, seed)?;
            let (system, trace) = match kind.as_str() {
                "element" => {
                    let g = gen_element_update_gadget(&ci)?;
                    (g.system, g.trace)
                }
                "set" => {
                    let g = gen_set_update_gadget(&ci, k.unwrap_or(n * n))?;
                    eprintln!("YES threshold {}, NO floor {}", g.yes_threshold, g.no_floor);
                    (g.system, g.trace)
                }
                other => return Err(Error::Parameter(format!("unknown gadget {other:?}"))),
            };
            fs::write(out.with_extension("sys"), system.to_text())?;
            fs::write(out.with_extension("trace"), trace.to_text())?;
            Ok(())
        }
    }
}
