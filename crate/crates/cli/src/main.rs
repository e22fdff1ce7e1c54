use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sform_cli::commands::{self, CommandOutput};
use sform_cli::config::{OutputFormat, RunConfig};

/// Exact and numerical analysis of 5-dimensional spherical space forms:
/// metacyclic group classification, linear representations, torus actions
/// on S^5, and q-extent bounds on lens spaces.
#[derive(Debug, Parser)]
#[command(name = "sform", version, max_term_width = 100)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// key=value configuration file; flags override file entries
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// RNG seed for all stochastic searches
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Random restarts for stochastic searches
    #[arg(long, global = true)]
    restarts: Option<u32>,
    /// Iterations per restart
    #[arg(long, global = true)]
    max_iters: Option<u32>,
    /// Group-order cap for exhaustive searches
    #[arg(long, global = true)]
    order_cap: Option<u64>,
    /// Output format: table, json, or csv
    #[arg(long, global = true, value_name = "FORMAT")]
    format: Option<OutputFormat>,
    /// Write the rendered report to this file as well as stdout
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Metacyclic presentations: predicates, catalogs, and the
    /// exhaustive small-order harness
    Groups {
        #[command(subcommand)]
        command: GroupsCommand,
    },
    /// q-extent bounds and optimization on lens spaces
    Extent {
        #[command(subcommand)]
        command: ExtentCommand,
    },
    /// Linear torus actions on S^5
    Torus {
        #[command(subcommand)]
        command: TorusCommand,
    },
    /// Block-rotation representations on S^5
    Rep {
        #[command(subcommand)]
        command: RepCommand,
    },
    /// Run the full acceptance suite
    VerifyAll {
        /// Negative control: replace the scan margin floor to force a
        /// deliberate failure of the bound-scan criterion
        #[arg(long, value_name = "MARGIN")]
        corrupt_margin: Option<f64>,
    },
}

#[derive(Debug, Subcommand)]
enum GroupsCommand {
    /// Full predicate report for the presentation (m, n, r)
    Check { m: u64, n: u64, r: u64 },
    /// Catalog spherical verdicts for all presentations up to an order cap
    Enumerate {
        #[arg(long)]
        max_order: u64,
    },
    /// Exhaustively test the cyclic-subgroup hypotheses against the
    /// spherical verdict up to an order cap
    Harness {
        #[arg(long)]
        max_order: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
enum ExtentCommand {
    /// Closed-form q-point extent upper bound for L(n; 1, 1)
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: usize,
    },
    /// Stochastic lower bound for the q-extent of L(n; k, l)
    Optimize {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        q: usize,
    },
    /// Scan the upper bound against pi/3 over a range of n
    Scan {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
}

#[derive(Debug, Subcommand)]
enum TorusCommand {
    /// Classify the linear action of a weight matrix ("1,1,-2;1,-2,1")
    Analyze {
        #[arg(long)]
        weights: String,
        /// With --angles: test whether the cyclic action of this order
        /// embeds in the torus
        #[arg(long)]
        modulus: Option<u64>,
        /// Three rotation residues "a,b,c" modulo the given modulus
        #[arg(long)]
        angles: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum RepCommand {
    /// Build the standard representation of (m, n, r) with twist c and
    /// verify relations, freeness, and injectivity-radius geometry
    Verify {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        c: u64,
    },
    /// Check that the representation twists a weighted torus action
    /// through the given holonomy matrices
    Invariance {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        weights: String,
        /// Holonomy matrix of the first generator, e.g. "1,0;0,1"
        #[arg(long)]
        hol_a: String,
        /// Holonomy matrix of the second generator
        #[arg(long)]
        hol_b: String,
    },
}

fn build_config(opts: &GlobalOpts) -> anyhow::Result<RunConfig> {
    let mut config = RunConfig::default();
    if let Some(path) = &opts.config {
        config.apply_file(path)?;
    }
    if let Some(seed) = opts.seed {
        config.seed = seed;
    }
    if let Some(restarts) = opts.restarts {
        config.restarts = restarts;
    }
    if let Some(max_iters) = opts.max_iters {
        config.max_iters = max_iters;
    }
    if let Some(order_cap) = opts.order_cap {
        config.order_cap = order_cap;
    }
    if let Some(format) = opts.format {
        config.output_format = format;
    }
    if let Some(output) = &opts.output {
        config.output_path = Some(output.clone());
    }
    config.validate()?;
    Ok(config)
}

fn run(cli: &Cli) -> anyhow::Result<CommandOutput> {
    let config = build_config(&cli.global)?;
    match &cli.command {
        Command::Groups { command } => match command {
            GroupsCommand::Check { m, n, r } => commands::groups_check(&config, *m, *n, *r),
            GroupsCommand::Enumerate { max_order } => {
                commands::groups_enumerate(&config, *max_order)
            }
            GroupsCommand::Harness { max_order } => {
                commands::groups_harness(&config, max_order.unwrap_or(config.order_cap))
            }
        },
        Command::Extent { command } => match command {
            ExtentCommand::Bound { n, q } => commands::extent_bound(&config, *n, *q),
            ExtentCommand::Optimize { n, k, l, q } => {
                commands::extent_optimize(&config, *n, *k, *l, *q)
            }
            ExtentCommand::Scan { q, from, to } => {
                commands::extent_scan(&config, *q, *from, *to)
            }
        },
        Command::Torus { command } => match command {
            TorusCommand::Analyze { weights, modulus, angles } => {
                commands::torus_analyze(&config, weights, *modulus, angles.as_deref())
            }
        },
        Command::Rep { command } => match command {
            RepCommand::Verify { m, n, r, c } => commands::rep_verify(&config, *m, *n, *r, *c),
            RepCommand::Invariance { m, n, r, c, weights, hol_a, hol_b } => {
                commands::rep_invariance(&config, *m, *n, *r, *c, weights, hol_a, hol_b)
            }
        },
        Command::VerifyAll { corrupt_margin } => {
            commands::verify_all(&config, *corrupt_margin)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests exit 0; parse errors exit 2
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            // verify-all gets a human-readable criterion matrix up front
            if let Some(criteria) =
                out.report.payload.get("criteria").and_then(|c| c.as_array())
            {
                for criterion in criteria {
                    let name = criterion["name"].as_str().unwrap_or("?");
                    let pass = criterion["pass"].as_bool().unwrap_or(false);
                    let detail = criterion["detail"].as_str().unwrap_or("");
                    println!("{}  {name}: {detail}", if pass { "PASS" } else { "FAIL" });
                }
            }
            match out.report.render(out.csv.as_deref()) {
                Ok(rendered) => {
                    println!("{rendered}");
                    if let Err(e) = out.report.persist(&rendered) {
                        eprintln!("error: {e:#}");
                        return ExitCode::from(2);
                    }
                }
                Err(e) => {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(2);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
