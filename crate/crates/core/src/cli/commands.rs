use serde::Serialize;
use serde_json::{json, Value};

use crate::adversary::{run_transcript, EveStrategy};
use crate::montecarlo::{run, sweep};
use crate::protocol::{RoundResult, SessionConfig};

use super::paper::{reproduce_paper, PaperOptions};
use super::report::{to_value, Report};
use super::scenario::{ScenarioFile, DEFAULT_TRIALS};
use super::CliError;

pub const EXIT_ACCEPTED: i32 = 0;
pub const EXIT_ABORTED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// A finished command: its exit code and the report to write.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub report: Report,
}

#[derive(Serialize)]
struct SessionEcho<'a> {
    command: &'static str,
    scenario: &'a ScenarioFile,
    config: &'a SessionConfig,
    strategy: Option<&'a EveStrategy>,
}

/// Runs one attacked round (after any preparation rounds the strategy
/// needs). One result row per challenge.
pub fn cmd_session(file: &ScenarioFile, seed: Option<u64>) -> Result<CommandOutput, CliError> {
    let config = file.session_config(seed.or(file.seed).unwrap_or(0))?;
    let strategy = file.strategy()?;
    let t = run_transcript(&config, strategy.as_ref())?;
    let mut results = Vec::new();
    for r in &t.run.preparation {
        results.extend(round_rows(r, "preparation", None)?);
    }
    results.extend(round_rows(&t.run.round, "attack", Some(t.analytic_acceptance))?);
    if results.is_empty() {
        results.push(summary_row(&t.run.round, "attack", Some(t.analytic_acceptance)));
    }
    if let Some(eve) = &t.run.eve {
        for (index, fidelity) in &eve.accumulated_key {
            results.push(json!({ "phase": "eve_key", "index": index, "key_fidelity": fidelity }));
        }
    }
    let echo = SessionEcho { command: "session", scenario: file, config: &config, strategy: strategy.as_ref() };
    let exit_code = if t.run.round.accepted() { EXIT_ACCEPTED } else { EXIT_ABORTED };
    Ok(CommandOutput { exit_code, report: Report::new(echo, results)? })
}

fn summary_row(r: &RoundResult, phase: &str, analytic: Option<f64>) -> Value {
    json!({
        "phase": phase,
        "session": r.session,
        "verdict": r.verdict,
        "keys_retained": r.keys_retained,
        "analytic_acceptance": analytic.unwrap_or(r.analytic_acceptance),
    })
}

fn round_rows(r: &RoundResult, phase: &str, analytic: Option<f64>) -> Result<Vec<Value>, CliError> {
    r.records
        .iter()
        .map(|rec| {
            let mut row = summary_row(r, phase, analytic);
            let m = row.as_object_mut().expect("object");
            for (k, v) in to_value(rec)?.as_object().expect("record is an object") {
                m.insert(k.clone(), v.clone());
            }
            Ok(row)
        })
        .collect()
}

#[derive(Serialize)]
struct EstimateEcho<'a> {
    command: &'static str,
    scenario: &'a ScenarioFile,
    seed: u64,
    trials: u64,
}

/// Monte Carlo estimate of the scenario's quantity, or one estimate per
/// grid point when the file has a sweep.
pub fn cmd_estimate(file: &ScenarioFile, seed: Option<u64>, trials: Option<u64>) -> Result<CommandOutput, CliError> {
    let seed = seed.or(file.seed).unwrap_or(0);
    let trials = trials.or(file.trials).unwrap_or(DEFAULT_TRIALS);
    let scenario = file.scenario(seed, trials)?;
    let estimates = match &file.sweep {
        Some(s) => sweep(&scenario, &s.values()?, seed)?,
        None => vec![run(&scenario, seed)?],
    };
    let results = estimates
        .iter()
        .map(|e| {
            let mut v = to_value(e)?;
            let m = v.as_object_mut().expect("object");
            let oracle = m.remove("oracle").unwrap_or(Value::Null);
            m.insert("oracle".into(), oracle.get("value").cloned().unwrap_or(Value::Null));
            m.insert("oracle_formula".into(), oracle.get("formula").cloned().unwrap_or(Value::Null));
            Ok(v)
        })
        .collect::<Result<_, CliError>>()?;
    let echo = EstimateEcho { command: "estimate", scenario: file, seed, trials };
    Ok(CommandOutput { exit_code: EXIT_ACCEPTED, report: Report::new(echo, results)? })
}

/// Every closed-form claim as a pass/fail row; exit code 0 only if all pass.
pub fn cmd_reproduce_paper(options: &PaperOptions) -> Result<CommandOutput, CliError> {
    let rows = reproduce_paper(options)?;
    let all = rows.iter().filter(|r| !r.diagnostic).all(|r| r.pass);
    let results = rows.iter().map(to_value).collect::<Result<_, _>>()?;
    let echo = json!({ "command": "reproduce-paper", "seed": options.seed, "trials": options.trials });
    Ok(CommandOutput { exit_code: if all { EXIT_ACCEPTED } else { EXIT_ABORTED }, report: Report::new(echo, results)? })
}
