use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use elemlab::group::{Engine, Relation};
use elemlab::identities::{claims, lattice_experiment};
use elemlab::numberfields::{sk1_order, sk1_terms, QuadIdeal, QuadOrder};
use elemlab::Budgets;
use elemlab_cli::{report_path, run_scenario, RunOptions, Scenario};

#[derive(Parser)]
#[command(name = "lab", version, about = "Check elementary subgroup identities over finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check of a scenario file and write a JSON report.
    Run {
        config: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
        /// Directory for the content-addressed closure cache.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Overrides the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Print the JSON report instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// List claim ids with their hypotheses and anchors.
    ListClaims {
        #[arg(long)]
        json: bool,
    },
    /// Order of SK_1 of a quadratic order relative to an ideal.
    Sk1 {
        #[arg(long)]
        order: String,
        /// Prime exponents, e.g. `p2:4` or `p2a:2,p2b:2`.
        #[arg(long)]
        primes: String,
    },
    /// Commutator lattice H(r) over Z/p^(m+1).
    Lattice {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

fn config_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(3)
}

fn run(config: PathBuf, opts: RunOptions, report: Option<PathBuf>, json: bool) -> ExitCode {
    let scenario = match Scenario::load(&config) {
        Ok(s) => s,
        Err(e) => return config_error(e),
    };
    let rep = match run_scenario(&scenario, &opts) {
        Ok(r) => r,
        Err(e) => return config_error(e),
    };
    let path = report_path(&config, &scenario, report.as_deref());
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        if let Err(e) = std::fs::create_dir_all(dir) {
            return config_error(format!("{}: {e}", dir.display()));
        }
    }
    if let Err(e) = std::fs::write(&path, rep.to_json()) {
        return config_error(format!("{}: {e}", path.display()));
    }
    if json {
        print!("{}", rep.to_json());
    } else {
        print!("{}", rep.table());
        println!("report: {}", path.display());
    }
    ExitCode::from(rep.overall.exit_code())
}

fn list_claims(json: bool) -> ExitCode {
    if json {
        println!("{}", serde_json::to_string_pretty(claims()).expect("claims serialise"));
        return ExitCode::SUCCESS;
    }
    println!("{:<22} {:>6}  {:<44} hypotheses", "claim", "ideals", "anchor");
    for c in claims() {
        println!("{:<22} {:>6}  {:<44} {}", c.id, c.ideals, c.anchor, c.hypotheses);
    }
    ExitCode::SUCCESS
}

fn sk1(order: &str, primes: &str) -> ExitCode {
    let run = || -> elemlab::Result<()> {
        let o = QuadOrder::parse(order)?;
        let ideal = QuadIdeal::parse(order, primes)?;
        for t in sk1_terms(o, &ideal)? {
            println!("{:<5} floor {:>3}  exponent {:>3}", t.p, t.floor, t.exponent);
        }
        println!("|SK_1({}, {ideal})| = {}", o.name(), sk1_order(o, &ideal)?);
        Ok(())
    };
    run().map_or_else(config_error, |_| ExitCode::SUCCESS)
}

fn lattice(p: u64, m: usize, n: usize, budget: Option<usize>, json: bool) -> ExitCode {
    let budgets = Budgets::default();
    let engine = Engine::new(budgets);
    let t = match lattice_experiment(&engine, p, m, n, budget.unwrap_or(budgets.closure)) {
        Ok(t) => t,
        Err(elemlab::Error::Incomplete(reason)) => {
            eprintln!("inconclusive: {reason}");
            return ExitCode::from(2);
        }
        Err(e) => return config_error(e),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&t).expect("table serialises"));
    } else {
        println!("R = Z/{}, I = ({p}), n = {n}, |E(n,R,I^{m})| = {}", t.modulus, t.level_order);
        for row in &t.rows {
            let cells: Vec<&str> = t.relations[row.r]
                .iter()
                .map(|r| match r {
                    Relation::Equal => "=",
                    Relation::LeftInRight => "<",
                    Relation::RightInLeft => ">",
                    Relation::Incomparable => "#",
                    Relation::Unknown => "?",
                })
                .collect();
            println!("H({}) order {:>8}  {}", row.r, row.order, cells.join(" "));
        }
        for (r, s) in &t.extra_equalities {
            println!("note: H({r}) = H({s}) beyond the generic pattern");
        }
        for f in &t.failures {
            println!("FAIL {}: witness {}", f.assertion, f.witness);
        }
    }
    ExitCode::from(if t.passed() { 0 } else { 1 })
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run { config, workers, cache, seed, report, json } => {
            run(config, RunOptions { workers, cache, seed }, report, json)
        }
        Command::ListClaims { json } => list_claims(json),
        Command::Sk1 { order, primes } => sk1(&order, &primes),
        Command::Lattice { p, m, n, budget, json } => lattice(p, m, n, budget, json),
    }
}
