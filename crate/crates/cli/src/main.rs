//! `stablecon`: solve, enumerate, check and validate contract markets.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use stable_contracts::ample::{ag_solve, enumerate_stable_via_ample};
use stable_contracts::choice::{Family, EXHAUSTIVE_CAP};
use stable_contracts::classical::{gale_shapley, sotomayor_insert_solve};
use stable_contracts::fixtures::table_corpus;
use stable_contracts::format::{parse_str, to_json, InstanceDocument};
use stable_contracts::lemmas::run_suite;
use stable_contracts::modest::yang_solve;
use stable_contracts::oracle::{
    brute_force_stable, random_instance, small_corpus, FamilyMix, GeneratorParams,
};
use stable_contracts::stability::{blocking_contracts_multi, is_acceptable_multi, is_stable_multi};
use stable_contracts::{
    validate_plott, AgentId, ContractSet, Error, Instance, PlottReport, Side, TwoAgentProblem,
};

#[derive(Parser)]
#[command(
    name = "stablecon",
    version,
    about = "Stable contract systems under path-independent choice"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find one stable system.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "ample")]
        algorithm: Algorithm,
        /// Initial ample set (ample) or modest set (modest), e.g. `{e1,e2}`.
        #[arg(long)]
        start: Option<String>,
        /// Print every iterate.
        #[arg(long)]
        trace: bool,
        /// Worker insertion order for `sotomayor`, e.g. `w2,w1`.
        #[arg(long)]
        order: Option<String>,
    },
    /// List every stable system, cross-checked between two methods.
    Enumerate { file: PathBuf },
    /// Check whether a set of contracts is stable; exits 1 if it is not.
    Check { file: PathBuf, set: String },
    /// Report each agent's choice function against the Plott axioms.
    Validate { file: PathBuf },
    /// Print a random instance document.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        firms: usize,
        #[arg(long, default_value_t = 3)]
        workers: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Relative weight of quota choices against linear orders.
        #[arg(long, default_value_t = 0.0)]
        quota_weight: f64,
        /// Probability of a parallel second contract on a linked pair.
        #[arg(long, default_value_t = 0.0)]
        parallel: f64,
    },
    /// Run the structural checks over a seeded corpus.
    Lemmas {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Ample,
    Modest,
    Gs,
    Sotomayor,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Error::NotPlott { agent, .. }) => {
            // The witness was already printed with contract names.
            let who = agent
                .map(|a| format!(" of agent `{a}`"))
                .unwrap_or_default();
            eprintln!("error[axiom-violation]: choice function{who} violates the Plott axioms");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            if e.is_inconsistency() {
                ExitCode::from(3)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))
}

/// Witness lines for a rejected choice function, with contract names.
fn named_report(text: &str, agent: Option<&str>, report: &PlottReport) -> Vec<String> {
    let names: Vec<String> = serde_json::from_str::<InstanceDocument>(text)
        .map(|doc| doc.contracts.into_iter().map(|c| c.id).collect())
        .unwrap_or_default();
    let show = |s: ContractSet| {
        let items: Vec<String> = s
            .iter()
            .map(|id| names.get(id.0).cloned().unwrap_or_else(|| id.to_string()))
            .collect();
        format!("{{{}}}", items.join(","))
    };
    let mut lines = vec![format!("agent {}:", agent.unwrap_or("?"))];
    lines.extend(report.lines(show).into_iter().map(|l| format!("  {l}")));
    lines
}

fn load(path: &Path) -> Result<Instance, Error> {
    let text = read(path)?;
    parse_str(&text).inspect_err(|e| {
        if let Error::NotPlott { agent, report } = e {
            for line in named_report(&text, agent.as_deref(), report) {
                eprintln!("{line}");
            }
        }
    })
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Solve {
            file,
            algorithm,
            start,
            trace,
            order,
        } => solve(&file, algorithm, start.as_deref(), trace, order.as_deref()),
        Command::Enumerate { file } => enumerate(&file),
        Command::Check { file, set } => check(&file, &set),
        Command::Validate { file } => validate(&file),
        Command::Generate {
            seed,
            firms,
            workers,
            density,
            quota_weight,
            parallel,
        } => {
            let params = GeneratorParams {
                mix: FamilyMix {
                    linear: 1.0,
                    quota: quota_weight.max(0.0),
                },
                parallel,
                ..GeneratorParams::new(firms, workers, density)
            };
            print!("{}", to_json(&random_instance(seed, &params)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Lemmas { seed, count } => lemmas(seed, count),
    }
}

fn solve(
    file: &Path,
    algorithm: Algorithm,
    start: Option<&str>,
    trace: bool,
    order: Option<&str>,
) -> Result<ExitCode, Error> {
    let inst = load(file)?;
    let start = start.map(|s| inst.parse_set(s)).transpose()?;
    if start.is_some() && matches!(algorithm, Algorithm::Gs | Algorithm::Sotomayor) {
        return Err(Error::Precondition(
            "--start applies to ample and modest only".into(),
        ));
    }
    let p = inst.reduce_to_two_agents();
    let (stable, iterates) = match algorithm {
        Algorithm::Ample => {
            let sol = ag_solve(&p, start)?;
            (sol.stable, Some(sol.trace))
        }
        Algorithm::Modest => {
            let sol = yang_solve(&p, start)?;
            (sol.stable, Some(sol.trace))
        }
        Algorithm::Gs => (gale_shapley(&inst)?.contracts(), None),
        Algorithm::Sotomayor => {
            let order = match order {
                Some(text) => text
                    .split(',')
                    .map(|name| inst.agent_by_name(name.trim()))
                    .collect::<Result<Vec<AgentId>, Error>>()?,
                None => inst.side_ids(Side::Worker).collect(),
            };
            (sotomayor_insert_solve(&inst, &order)?.contracts(), None)
        }
    };
    if !is_stable_multi(&inst, stable) {
        return Err(Error::Inconsistency(format!(
            "{} is not stable",
            inst.show(stable)
        )));
    }
    println!("stable: {}", inst.show(stable));
    if let Some(iterates) = iterates {
        println!("steps: {}", iterates.len() - 1);
        if trace {
            for (i, s) in iterates.iter().enumerate() {
                println!("  {i}: {}", inst.show(*s));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn sorted(mut sets: Vec<ContractSet>) -> Vec<ContractSet> {
    sets.sort();
    sets.dedup();
    sets
}

fn enumerate(file: &Path) -> Result<ExitCode, Error> {
    let inst = load(file)?;
    let p = inst.reduce_to_two_agents();
    let oracle = sorted(brute_force_stable(&p)?);
    let via_ample = sorted(enumerate_stable_via_ample(&p)?);
    if oracle != via_ample {
        return Err(Error::Inconsistency(format!(
            "brute force found {} stable systems, ample enumeration {}",
            oracle.len(),
            via_ample.len()
        )));
    }
    for s in &oracle {
        println!("{}", inst.show(*s));
    }
    println!("count: {}", oracle.len());
    Ok(ExitCode::SUCCESS)
}

fn check(file: &Path, set: &str) -> Result<ExitCode, Error> {
    let inst = load(file)?;
    let s = inst.parse_set(set)?;
    let acceptable = is_acceptable_multi(&inst, s);
    let blocking = blocking_contracts_multi(&inst, s);
    if acceptable && blocking.is_empty() {
        println!("stable: {}", inst.show(s));
        return Ok(ExitCode::SUCCESS);
    }
    println!("not stable: {}", inst.show(s));
    if !acceptable {
        println!("  rejected by some agent");
    }
    if !blocking.is_empty() {
        println!("  blocking contracts: {}", inst.show(blocking));
    }
    Ok(ExitCode::from(1))
}

fn validate(file: &Path) -> Result<ExitCode, Error> {
    let text = read(file)?;
    let inst = match parse_str(&text) {
        Ok(inst) => inst,
        Err(Error::NotPlott { agent, report }) => {
            for line in named_report(&text, agent.as_deref(), &report) {
                println!("{line}");
            }
            return Err(Error::NotPlott { agent, report });
        }
        Err(e) => return Err(e),
    };
    for (v, agent) in inst.agents().iter().enumerate() {
        let c = inst.choice(AgentId(v))?;
        println!("agent {}:", agent.name);
        let ordered = matches!(c.family(), Family::LinearOrder(_) | Family::Quota { .. });
        if ordered && c.ground().len() > EXHAUSTIVE_CAP {
            println!("  ordered family, Plott by construction");
            continue;
        }
        for line in validate_plott(c)?.lines(|s| inst.show(s)) {
            println!("  {line}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn lemmas(seed: u64, count: usize) -> Result<ExitCode, Error> {
    let problems: Vec<TwoAgentProblem> = small_corpus(seed, count)
        .chain(table_corpus())
        .map(|inst| inst.reduce_to_two_agents())
        .collect();
    let outcomes = run_suite(&problems)?;
    let width = outcomes
        .iter()
        .map(|o| o.lemma.key().chars().count())
        .max()
        .unwrap_or(0);
    println!("{} problems", problems.len());
    for o in &outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        let pad = width - o.lemma.key().chars().count();
        println!(
            "{status}  {}{}  {:>9}  {}",
            o.lemma.key(),
            " ".repeat(pad),
            o.checks,
            o.lemma.statement()
        );
        if let Some(f) = &o.failure {
            println!("      {f}");
        }
    }
    if outcomes.iter().all(|o| o.passed()) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}
