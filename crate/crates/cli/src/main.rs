//! `kdvres`: generate tables and verify the KdV resolution identities.
//!
//! Exit codes: 0 when every check passes, 1 when an identity fails (or a
//! cached table disagrees with a fresh computation), 2 on usage or
//! configuration errors.

mod cache;
mod commands;
mod config;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use kdv_core::algebra::parse_rational;
use kdv_core::diffalg::C_FLOW;
use kdv_core::dmod::C0;
use kdv_core::Strategy;

use cache::{Cache, Lookup};
use commands::{Failure, Outcome};
use config::{Config, Format, ENV_CACHE_DIR};
use report::Report;

#[derive(Parser)]
#[command(
    name = "kdvres",
    version,
    about = "Exact tables and identity checks for the KdV resolutions"
)]
struct Cli {
    /// `key = value` configuration file (dmax, qorder, torder, zorder, tau, cache_dir, format).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format: json, text or csv.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Table cache directory; overrides the config file and KDVRES_CACHE_DIR.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Run the sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The S-polynomials S₂ … S_max in A, cached as canonical JSON.
    GenS {
        #[arg(long, default_value_t = 12)]
        max: u32,
    },
    /// ζᵢⱼ for odd i ≤ j ≤ max, cached as canonical JSON.
    Zeta {
        #[arg(long, default_value_t = 7)]
        max: u32,
    },
    /// S̄₂ … S̄_max as polynomials in the bosonic currents, cached.
    BarS {
        #[arg(long, default_value_t = 12)]
        max: u32,
    },
    /// Kernel generators of ev₁ by degree, with their provenance.
    NullVectors {
        #[arg(long, default_value_t = 5)]
        degree: u32,
    },
    /// Solves for the constant c0 of C given a flow normalization.
    Calibrate {
        #[arg(long, default_value_t = C_FLOW.to_string(), allow_hyphen_values = true)]
        c_flow: String,
        #[arg(long, default_value_t = 8)]
        dmax: u32,
    },
    /// Runs a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Prints the effective configuration in file form.
    Config,
}

#[derive(Subcommand)]
enum Suite {
    /// The two classical relations and the low-degree kernel generators.
    NullVectors {
        #[arg(long, default_value_t = 5)]
        degree: u32,
    },
    /// ev₁∘Q = ev₁∘C = 0, operator identities, ker ev₁ = im Q + im C, surjectivity.
    Kernel(Degree),
    /// ev₂∘Q = ev₂∘C = 0 and equality of the ev₁ and ev₂ quotients.
    Ev2(Degree),
    /// The character identity.
    Characters {
        #[arg(long)]
        order: Option<u32>,
    },
    /// Series identities for explicit tau functions.
    Tau(TauArgs),
    /// The η decomposition: one a_n for every flow.
    Equivalence {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = 4)]
        m: u32,
    },
    /// Every suite with the configured cutoffs.
    All,
}

#[derive(Args)]
struct Degree {
    #[arg(long)]
    degree: Option<u32>,
}

#[derive(Args)]
struct TauArgs {
    /// Catalog tau, e.g. `soliton:p=1/2`; repeatable.
    #[arg(long = "tau")]
    taus: Vec<String>,
    #[arg(long)]
    t_degree: Option<u32>,
    #[arg(long)]
    z_order: Option<u32>,
    /// Also run the negative controls, each of which must be caught.
    #[arg(long)]
    controls: bool,
}

fn load_config(cli: &Cli) -> Result<Config, String> {
    let mut config = Config::default();
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        config = config
            .apply_file(&text)
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    if let Some(dir) = std::env::var_os(ENV_CACHE_DIR) {
        config.cache_dir = PathBuf::from(dir);
    }
    if let Some(dir) = &cli.cache_dir {
        config.cache_dir = dir.clone();
    }
    if let Some(f) = cli.format {
        config.format = f;
    }
    Ok(config)
}

/// Writes a generated table to the cache, or checks it against the cached copy.
fn cached(config: &Config, op: &str, max: u32, report: Outcome) -> Outcome {
    let mut report = report?;
    let key = Cache::key("tables", op, max, &C_FLOW.to_string(), &C0.to_string());
    let content = serde_json::to_string(&report.to_json()).expect("serializable");
    let cache = Cache::new(&config.cache_dir);
    let lookup = cache
        .store_or_verify(&key, &content)
        .map_err(|e| Failure::Usage(format!("cache {}: {e}", config.cache_dir.display())))?;
    let (passed, detail) = match lookup {
        Lookup::Stored => (true, format!("stored {}", cache.path(&key).display())),
        Lookup::HitIdentical => {
            eprintln!("cache hit, verified identical");
            (
                true,
                format!(
                    "cache hit, verified identical: {}",
                    cache.path(&key).display()
                ),
            )
        }
        Lookup::Mismatch(path) => (
            false,
            format!("{} differs from a fresh computation", path.display()),
        ),
    };
    // The cache status is reported on stderr and in the exit code only, so
    // stdout stays byte-identical between runs.
    if !passed {
        eprintln!("{detail}");
        report
            .checks
            .push(report::Check::new("cache", false, detail));
    }
    Ok(report)
}

fn verify_all(config: &Config, strategy: Strategy) -> Outcome {
    let mut all = Report::new(
        "verify all",
        json!({
            "dmax": config.dmax,
            "qorder": config.qorder,
            "torder": config.torder,
            "zorder": config.zorder,
            "taus": config.taus,
        }),
    );
    all.data = json!({});
    all.merge(
        "null-vectors",
        commands::null_vectors(5.min(config.dmax), strategy)?,
    );
    all.merge("kernel", commands::kernel(config.dmax, strategy)?);
    all.merge("ev2", commands::ev2(config.dmax, strategy)?);
    all.merge("characters", commands::characters(config.qorder)?);
    all.merge(
        "tau",
        commands::tau(&config.taus, config.torder, config.zorder, true, strategy)?,
    );
    all.merge("equivalence", commands::equivalence(3, 4)?);
    Ok(all)
}

fn run(cli: &Cli, config: &Config) -> Outcome {
    let strategy = if cli.sequential {
        Strategy::Sequential
    } else {
        Strategy::Parallel
    };
    match &cli.command {
        Command::GenS { max } => cached(config, "gen-s", *max, commands::gen_s_table(*max)),
        Command::Zeta { max } => cached(config, "zeta", *max, commands::zeta_table(*max)),
        Command::BarS { max } => cached(config, "bar-s", *max, commands::bar_s_table(*max)),
        Command::NullVectors { degree } => commands::null_vectors(*degree, strategy),
        Command::Calibrate { c_flow, dmax } => {
            let c = parse_rational(c_flow).map_err(|e| Failure::Usage(format!("--c-flow: {e}")))?;
            commands::calibrate(&c, *dmax, strategy)
        }
        Command::Config => unreachable!("handled before dispatch"),
        Command::Verify { suite } => match suite {
            Suite::NullVectors { degree } => {
                commands::null_vectors(*degree, strategy).map(|mut r| {
                    r.command = "verify null-vectors".into();
                    r
                })
            }
            Suite::Kernel(d) => commands::kernel(d.degree.unwrap_or(config.dmax), strategy),
            Suite::Ev2(d) => commands::ev2(d.degree.unwrap_or(config.dmax), strategy),
            Suite::Characters { order } => commands::characters(order.unwrap_or(config.qorder)),
            Suite::Tau(t) => {
                let taus = if t.taus.is_empty() {
                    &config.taus
                } else {
                    &t.taus
                };
                commands::tau(
                    taus,
                    t.t_degree.unwrap_or(config.torder),
                    t.z_order.unwrap_or(config.zorder),
                    t.controls,
                    strategy,
                )
            }
            Suite::Equivalence { n, m } => commands::equivalence(*n, *m),
            Suite::All => verify_all(config, strategy),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match load_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("kdvres: config error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Command::Config = cli.command {
        print!("{}", config.to_file());
        return ExitCode::SUCCESS;
    }
    match run(&cli, &config) {
        Ok(report) => {
            print!("{}", report.render(config.format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(e)) => {
            eprintln!("kdvres: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("kdvres: {e}");
            ExitCode::from(1)
        }
    }
}
