//! Named experiment files binding a model and an operation to an expected
//! outcome, and a suite runner that merges their reports deterministically.
//!
//! ```json
//! { "name": "quadric-m2k2",
//!   "model": "../models/quadric-surface.json",
//!   "operation": "dimension",
//!   "params": { "pairs": [[2, 2]], "seed": 1 },
//!   "expectation": { "kind": "exact", "value": 1 } }
//! ```
//!
//! `model` is a path relative to the scenario file or `builtin:NAME`.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffpoly::PrimeField;
use crate::plurigenera::{count_by_enumeration, jump_table};
use crate::secant::{iterate_cone_variety, envelope_inclusion_check, quadric_envelope, trisecant_equality, veronese_rank_agreement, zak_check};
use crate::symdiff::{estimate_dimension_rational, EstimateConfig, Stability};
use crate::variety::{ModelSpec, RationalModel, VarietyModel, DEFAULT_ENUMERATION_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operation {
    Dimension,
    Trisecant,
    Zak,
    Envelope,
    Plurigenera,
    #[serde(rename = "prop18")]
    EnvelopeInclusion,
    TrisecantEquality,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Params {
    pub m: Option<u32>,
    pub k: Option<i64>,
    /// Several `(m, k)` pairs for one dimension scenario.
    pub pairs: Option<Vec<(u32, i64)>>,
    /// Smallest prime for dimension estimates.
    pub prime: u64,
    pub nprimes: usize,
    /// Primes for the enumeration-based operations.
    pub primes: Vec<u64>,
    pub seed: u64,
    pub batch_size: usize,
    pub window: usize,
    pub batches: usize,
    pub kmax: usize,
    pub trials: usize,
    pub oracle_samples: usize,
    pub mmax: u32,
    pub budget: u128,
}

impl Default for Params {
    fn default() -> Self {
        let est = EstimateConfig::default();
        Params {
            m: None,
            k: None,
            pairs: None,
            prime: est.prime,
            nprimes: est.nprimes,
            primes: vec![11],
            seed: 0,
            batch_size: est.batch_size,
            window: est.window,
            batches: est.max_batches,
            kmax: 3,
            trials: 200,
            oracle_samples: 100,
            mmax: 12,
            budget: DEFAULT_ENUMERATION_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expectation {
    /// Every measured value equals `value`.
    Exact { value: f64 },
    /// Every measured value lies in `[min, max]`.
    Bound { min: Option<f64>, max: Option<f64> },
    /// The cone iteration stops with `S_1 = S_0` at every prime.
    Fixpoint,
    /// Every measured coverage reaches `threshold`; optionally non-decreasing in the listed order.
    Coverage {
        threshold: f64,
        #[serde(default)]
        non_decreasing: bool,
    },
    #[default]
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub model: Option<String>,
    pub operation: Operation,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub expectation: Expectation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub name: String,
    pub operation: Operation,
    pub model: Option<String>,
    pub status: Status,
    pub message: String,
    pub expectation: Expectation,
    pub measurements: Vec<Measurement>,
    pub details: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub indeterminate: usize,
    pub scenarios: Vec<ScenarioReport>,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// What an operation produced, before it is judged.
struct Outcome {
    measurements: Vec<Measurement>,
    fixpoints: Vec<bool>,
    unstable: bool,
    inconsistencies: Vec<String>,
    details: Value,
}

impl Outcome {
    fn new(measurements: Vec<Measurement>, details: Value) -> Self {
        Outcome { measurements, fixpoints: Vec::new(), unstable: false, inconsistencies: Vec::new(), details }
    }
}

fn measure(label: impl Into<String>, value: f64) -> Measurement {
    Measurement { label: label.into(), value }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports always serialize")
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("scenario: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    fn model(&self, base_dir: Option<&Path>) -> Result<RationalModel> {
        let reference = self
            .model
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument(format!("scenario {} needs a model", self.name)))?;
        ModelSpec::resolve(reference, base_dir)?.validate()
    }

    fn model_over(&self, base_dir: Option<&Path>, p: u64) -> Result<VarietyModel<PrimeField>> {
        VarietyModel::from_rational(&self.model(base_dir)?, &PrimeField::new(p)?)
    }

    fn check_expectation(&self) -> Result<()> {
        let ok = match (&self.expectation, self.operation) {
            (Expectation::None, _) => true,
            (Expectation::Fixpoint | Expectation::Coverage { .. }, op) => op == Operation::Trisecant,
            (Expectation::Exact { .. } | Expectation::Bound { .. }, _) => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("expectation {:?} does not fit operation {:?}", self.expectation, self.operation)))
        }
    }

    /// Runs the bound operation and judges it against the expectation.
    /// `base_dir` resolves relative model paths.
    pub fn run(&self, base_dir: Option<&Path>) -> Result<ScenarioReport> {
        self.check_expectation()?;
        let p = &self.params;
        let outcome = match self.operation {
            Operation::Dimension => self.run_dimension(base_dir)?,
            Operation::Trisecant => {
                let mut ms = Vec::new();
                let mut fix = Vec::new();
                let mut runs = Vec::new();
                for &q in &p.primes {
                    let it = iterate_cone_variety(&self.model_over(base_dir, q)?, p.kmax, p.budget)?;
                    let s1 = it.steps.get(1).map_or(it.steps[0].coverage, |s| s.coverage);
                    ms.push(measure(format!("S1 coverage F_{q}"), s1));
                    fix.push(it.fixpoint_at == Some(1));
                    runs.push(json!({
                        "prime": q,
                        "universe": it.universe,
                        "vertices": it.vertices,
                        "skipped_singular": it.skipped_singular,
                        "fixpoint_at": it.fixpoint_at,
                        "steps": it.steps,
                    }));
                }
                let mut o = Outcome::new(ms, json!({ "runs": runs, "heuristic": true }));
                o.fixpoints = fix;
                o
            }
            Operation::Zak => {
                let mut ms = Vec::new();
                let mut runs = Vec::new();
                for &q in &p.primes {
                    let vm = self.model_over(base_dir, q)?;
                    let z = zak_check(&vm, p.trials, p.seed, p.budget)?;
                    ms.push(measure(format!("tangency failures F_{q}"), z.extension_failures.unwrap_or(z.rational_failures) as f64));
                    let mut run = json!({ "zak": z });
                    if vm.ambient() == 5 && vm.dim() == 2 && vm.parametrization().is_some() {
                        let r = veronese_rank_agreement(&vm, p.oracle_samples, p.seed, p.budget)?;
                        ms.push(measure(format!("rank oracle mismatches F_{q}"), r.mismatches as f64));
                        run["rank_oracle"] = to_value(&r);
                    }
                    runs.push(run);
                }
                Outcome::new(ms, json!({ "runs": runs, "heuristic": true }))
            }
            Operation::Envelope => {
                let mut ms = Vec::new();
                let mut runs = Vec::new();
                for &q in &p.primes {
                    let env = quadric_envelope(&self.model_over(base_dir, q)?, p.budget)?;
                    ms.push(measure(format!("envelope dimension F_{q}"), env.dim() as f64));
                    runs.push(json!({ "prime": q, "dimension": env.dim(), "quadrics": env.rendered() }));
                }
                Outcome::new(ms, json!({ "runs": runs }))
            }
            Operation::Plurigenera => {
                let table = jump_table(p.mmax)?;
                let mut o = Outcome::new(
                    table.rows.iter().filter(|r| r.m >= 4).map(|r| measure(format!("difference m={}", r.m), r.difference as f64)).collect(),
                    json!({ "table": table }),
                );
                for r in &table.rows {
                    if count_by_enumeration(r.m, 1)? != r.count_c1 || count_by_enumeration(r.m, 3)? != r.count_c3 {
                        o.inconsistencies.push(format!("closed form disagrees with enumeration at m={}", r.m));
                    }
                }
                if table.row(2).is_some_and(|r| r.difference != 0) {
                    o.inconsistencies.push("difference at m=2 is not zero".into());
                }
                o
            }
            Operation::EnvelopeInclusion => {
                let mut ms = Vec::new();
                let mut runs = Vec::new();
                for &q in &p.primes {
                    let r = envelope_inclusion_check(&self.model_over(base_dir, q)?, p.kmax, p.budget)?;
                    ms.push(measure(format!("violations F_{q}"), r.violations as f64));
                    runs.push(to_value(&r));
                }
                Outcome::new(ms, json!({ "runs": runs, "heuristic": true }))
            }
            Operation::TrisecantEquality => {
                let mut ms = Vec::new();
                let mut runs = Vec::new();
                for &q in &p.primes {
                    let r = trisecant_equality(&self.model_over(base_dir, q)?, p.budget)?;
                    ms.push(measure(format!("symmetric difference F_{q}"), (r.only_in_cone + r.only_in_trisecant) as f64));
                    runs.push(to_value(&r));
                }
                Outcome::new(ms, json!({ "runs": runs, "heuristic": true }))
            }
        };
        Ok(self.judge(outcome))
    }

    fn run_dimension(&self, base_dir: Option<&Path>) -> Result<Outcome> {
        let p = &self.params;
        let pairs = match (&p.pairs, p.m, p.k) {
            (Some(pairs), _, _) => pairs.clone(),
            (None, Some(m), Some(k)) => vec![(m, k)],
            _ => return Err(Error::InvalidArgument(format!("scenario {} needs m and k or pairs", self.name))),
        };
        let model = self.model(base_dir)?;
        let cfg = EstimateConfig {
            prime: p.prime,
            nprimes: p.nprimes,
            seed: p.seed,
            batch_size: p.batch_size,
            window: p.window,
            max_batches: p.batches,
            ..EstimateConfig::default()
        };
        let mut ms = Vec::new();
        let mut reports = Vec::new();
        let mut unstable = false;
        for (m, k) in pairs {
            let r = estimate_dimension_rational(&model, m, k, &cfg)?;
            match r.dimension {
                Some(d) => ms.push(measure(format!("m={m} k={k}"), d as f64)),
                None => unstable = true,
            }
            unstable |= r.status == Stability::Unstable;
            reports.push(r);
        }
        let mut o = Outcome::new(ms, json!({ "reports": reports }));
        o.unstable = unstable;
        Ok(o)
    }

    fn judge(&self, o: Outcome) -> ScenarioReport {
        let (status, message) = if o.unstable {
            (Status::Indeterminate, "dimension did not stabilize across primes".to_string())
        } else if !o.inconsistencies.is_empty() {
            (Status::Fail, o.inconsistencies.join("; "))
        } else {
            self.compare(&o)
        };
        ScenarioReport {
            name: self.name.clone(),
            operation: self.operation,
            model: self.model.clone(),
            status,
            message,
            expectation: self.expectation.clone(),
            measurements: o.measurements,
            details: o.details,
        }
    }

    fn compare(&self, o: &Outcome) -> (Status, String) {
        let bad: Vec<&Measurement> = match &self.expectation {
            Expectation::None => return (Status::Pass, "no expectation; values recorded".into()),
            Expectation::Exact { value } => o.measurements.iter().filter(|m| m.value != *value).collect(),
            Expectation::Bound { min, max } => o
                .measurements
                .iter()
                .filter(|m| min.is_some_and(|lo| m.value < lo) || max.is_some_and(|hi| m.value > hi))
                .collect(),
            Expectation::Fixpoint => {
                let ok = !o.fixpoints.is_empty() && o.fixpoints.iter().all(|&f| f);
                return if ok { (Status::Pass, "S_1 = S_0 at every prime".into()) } else { (Status::Fail, "S_1 differs from S_0".into()) };
            }
            Expectation::Coverage { threshold, non_decreasing } => {
                let mut bad: Vec<&Measurement> = o.measurements.iter().filter(|m| m.value < *threshold).collect();
                if *non_decreasing {
                    for w in o.measurements.windows(2) {
                        if w[1].value < w[0].value {
                            bad.push(&w[1]);
                        }
                    }
                }
                bad
            }
        };
        if o.measurements.is_empty() {
            return (Status::Fail, "nothing was measured".into());
        }
        if bad.is_empty() {
            (Status::Pass, "all measurements meet the expectation".into())
        } else {
            let list: Vec<String> = bad.iter().map(|m| format!("{} = {}", m.label, m.value)).collect();
            (Status::Fail, format!("outside expectation: {}", list.join(", ")))
        }
    }
}

/// Loads and runs one scenario file.
pub fn run_scenario_file(path: &Path) -> Result<ScenarioReport> {
    Scenario::load(path)?.run(path.parent())
}

/// Runs every `*.json` scenario in `dir`; failures to load or run become
/// failed reports. Output is sorted by scenario name.
pub fn run_suite(dir: &Path) -> Result<SuiteReport> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut scenarios: Vec<ScenarioReport> = files
        .par_iter()
        .map(|path| match Scenario::load(path) {
            Ok(s) => s.run(path.parent()).unwrap_or_else(|e| errored(&s.name, Some(s.operation), s.model.clone(), &e)),
            Err(e) => errored(&path.display().to_string(), None, None, &e),
        })
        .collect();
    scenarios.sort_by(|a, b| a.name.cmp(&b.name));
    let count = |s: Status| scenarios.iter().filter(|r| r.status == s).count();
    Ok(SuiteReport {
        total: scenarios.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        indeterminate: count(Status::Indeterminate),
        scenarios,
    })
}

fn errored(name: &str, op: Option<Operation>, model: Option<String>, e: &Error) -> ScenarioReport {
    ScenarioReport {
        name: name.to_string(),
        operation: op.unwrap_or(Operation::Dimension),
        model,
        status: Status::Fail,
        message: format!("error: {e}"),
        expectation: Expectation::None,
        measurements: Vec::new(),
        details: Value::Null,
    }
}
