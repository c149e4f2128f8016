//! Scenario files: batches of condition checks with expected verdicts.
//!
//! ```json
//! {
//!   "scenarios": [
//!     {
//!       "id": "evens-no-insertion",
//!       "model": "SeqXEndModel",
//!       "condition": "N",
//!       "instance": {
//!         "f": {"carrier": "Seq", "value": {"cycle": ["1", "0"]}},
//!         "g": {"carrier": "Seq", "value": {"cycle": ["1", "0"]}}
//!       },
//!       "expect": "Fails"
//!     }
//!   ]
//! }
//! ```
//!
//! A scenario without an `instance` draws one from the model's generator
//! using its `seed`. The `harness` operation runs every implication row on
//! `count` generated instances and holds when no row records a failure.

use std::collections::BTreeSet;

use insertion_core::conditions::{
    check_condition, equivalence_harness, model_by_name, Condition, ExtensionModel, Instance, Verdict,
    MODEL_NAMES,
};
use insertion_core::gen;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{parse_json, CliError};
use crate::report::{Entry, RunReport};

pub const DEFAULT_DEPTH: usize = 8;
pub const DEFAULT_SEED: u64 = 0;
const DEFAULT_HARNESS_COUNT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operation {
    Harness,
}

/// Verdict a scenario expects; `Unknown` matches any depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expect {
    Holds,
    Fails,
    Unknown,
}

impl Expect {
    fn matches(self, v: &Verdict) -> bool {
        matches!(
            (self, v),
            (Expect::Holds, Verdict::Holds) | (Expect::Fails, Verdict::Fails) | (Expect::Unknown, Verdict::UnknownAtDepth(_))
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub id: String,
    pub model: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<Condition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operation: Option<Operation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<Instance>,
    /// Generated instances for `harness`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub scenarios: Vec<Scenario>,
}

/// Defaults for scenarios that leave depth or seed out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub depth: usize,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { depth: DEFAULT_DEPTH, seed: DEFAULT_SEED }
    }
}

enum Task {
    Check(Condition),
    Harness(usize),
}

struct Prepared<'a> {
    scenario: &'a Scenario,
    model: Box<dyn ExtensionModel>,
    task: Task,
    depth: usize,
    seed: u64,
}

/// Parses and validates a scenario file without running it.
pub fn parse_scenarios(text: &str) -> Result<ScenarioFile, CliError> {
    let file: ScenarioFile = parse_json(text)?;
    let mut seen = BTreeSet::new();
    for (i, s) in file.scenarios.iter().enumerate() {
        let at = |field: &str| format!("/scenarios/{i}{field}");
        if !seen.insert(s.id.as_str()) {
            return Err(CliError::schema(at("/id"), format!("duplicate scenario id {:?}", s.id)));
        }
        if model_by_name(&s.model).is_none() {
            return Err(CliError::schema(
                at("/model"),
                format!("unknown model {:?}; known models: {}", s.model, MODEL_NAMES.join(", ")),
            ));
        }
        match (&s.condition, &s.operation) {
            (Some(_), Some(_)) => return Err(CliError::schema(at(""), "give either `condition` or `operation`, not both")),
            (None, None) => return Err(CliError::schema(at(""), "missing `condition` or `operation`")),
            _ => {}
        }
        if s.operation.is_some() && s.instance.is_some() {
            return Err(CliError::schema(at("/instance"), "the harness draws its own instances"));
        }
        if s.depth == Some(0) {
            return Err(CliError::schema(at("/depth"), "depth must be at least 1"));
        }
    }
    Ok(file)
}

fn prepare<'a>(file: &'a ScenarioFile, opts: RunOptions) -> Vec<Prepared<'a>> {
    file.scenarios
        .iter()
        .map(|s| Prepared {
            scenario: s,
            model: model_by_name(&s.model).expect("validated"),
            task: match (s.condition, s.operation) {
                (Some(c), _) => Task::Check(c),
                _ => Task::Harness(s.count.unwrap_or(DEFAULT_HARNESS_COUNT)),
            },
            depth: s.depth.unwrap_or(opts.depth),
            seed: s.seed.unwrap_or(opts.seed),
        })
        .collect()
}

fn generated(model: &dyn ExtensionModel, seed: u64, count: usize) -> Result<Vec<Instance>, String> {
    let mut rng = gen::rng(seed);
    (0..count)
        .map(|_| model.generate(&mut rng).ok_or_else(|| format!("{} cannot generate instances", model.name())))
        .collect()
}

fn run_one(p: &Prepared<'_>, index: usize) -> Result<Entry, CliError> {
    let s = p.scenario;
    let model = p.model.as_ref();
    let base = Entry {
        id: s.id.clone(),
        task: String::new(),
        model: Some(model.name().to_string()),
        expected: s.expect.map(|e| format!("{e:?}")),
        observed: String::new(),
        matches: true,
        notes: Vec::new(),
        report: None,
        matrix: None,
        certificates: Vec::new(),
    };
    let at = |field: &str| format!("/scenarios/{index}{field}");
    match p.task {
        Task::Check(cond) => {
            let inst = match &s.instance {
                Some(i) => i.clone(),
                None => generated(model, p.seed, 1).map_err(|m| CliError::schema(at("/instance"), m))?.remove(0),
            };
            let report = check_condition(model, cond, &inst, p.depth).map_err(|e| CliError::schema(at("/instance"), e))?;
            let matches = s.expect.map_or(true, |e| e.matches(&report.verdict));
            Ok(Entry {
                task: format!("condition {cond}"),
                observed: format!("{:?}", report.verdict),
                matches,
                report: Some(report),
                ..base
            })
        }
        Task::Harness(count) => {
            let insts = generated(model, p.seed, count).map_err(|m| CliError::schema(at("/model"), m))?;
            let matrix = equivalence_harness(model, &insts, p.depth);
            let verdict = if matrix.all_pass() { Expect::Holds } else { Expect::Fails };
            let notes = matrix
                .rows
                .iter()
                .filter(|r| r.failures > 0)
                .map(|r| format!("{}: {} of {} failed", r.implication, r.failures, r.tested))
                .collect();
            Ok(Entry {
                task: "harness".into(),
                observed: format!("{verdict:?}"),
                matches: s.expect.map_or(true, |e| e == verdict),
                notes,
                matrix: Some(matrix),
                ..base
            })
        }
    }
}

/// Runs every scenario concurrently and merges the entries by id.
pub fn run_scenarios(file: &ScenarioFile, opts: RunOptions) -> Result<RunReport, CliError> {
    let prepared = prepare(file, opts);
    let mut entries = prepared
        .par_iter()
        .enumerate()
        .map(|(i, p)| run_one(p, i))
        .collect::<Result<Vec<_>, _>>()?;
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(RunReport::new("check", entries))
}
