//! Verification suites for the spectral extremal results on supertrees.
//!
//! Every suite instantiates hypotheses on concrete hypergraphs, checks any
//! Perron-vector premises, and compares spectral radii through certified
//! Collatz–Wielandt intervals. A `confirmed` verdict always rests on disjoint
//! intervals separated by at least the configured margin; a `violated`
//! verdict needs a certified interval separation in the wrong direction.
//! Anything in between is `inconclusive`.

mod extremal;
mod grafting;
mod moving;
mod operation;
mod switch;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::spectral::{spectral_radius, Comparison, Interval, SolverOptions, SpectralResult};
use crate::transforms::MoveRecord;

pub use extremal::{extremal_scan, nc_scan};
pub use grafting::{
    standard_grafting_instances, standard_profile_instances, verify_grafting, verify_lemma1_profile, GraftInstance,
    GraftKind, ProfileInstance,
};
pub use moving::{standard_moving_instances, verify_edge_moving, MoveInstance, MoveSpec};
pub use operation::{standard_operation_i_instances, verify_operation_i, verify_operation_i_chain, OperationIInstance};
pub use switch::{standard_switch_instances, verify_two_switch, SwitchInstance};

pub const REPORT_FORMAT: u32 = 1;

/// Tolerances shared by every suite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarnessOptions {
    /// Solver settings; `alpha` is overridden per instance.
    pub solver: SolverOptions,
    /// Required separation between certified intervals.
    pub margin: f64,
    /// Slack for non-strict Perron-vector premises.
    pub premise_slack: f64,
    /// Threshold for equality / strictness decisions in the two-switch suite.
    pub equality_tolerance: f64,
    /// Seed for sampled instance sets.
    pub seed: u64,
    /// Premise-satisfying two-switch samples per class and alpha.
    pub switch_samples: usize,
    /// Cap on enumerated classes.
    pub budget: usize,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions {
            solver: SolverOptions::default(),
            margin: 1e-8,
            premise_slack: 1e-12,
            equality_tolerance: 1e-9,
            seed: 0x5eed,
            switch_samples: 12,
            budget: crate::enumerate::DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    Violated,
    Inconclusive,
    PremiseNotMet,
    CounterexampleCandidate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Premise {
    pub name: String,
    pub value: f64,
    pub holds: bool,
}

impl Premise {
    pub fn new(name: impl Into<String>, value: f64, holds: bool) -> Self {
        Premise { name: name.into(), value, holds }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoRecord {
    pub label: String,
    #[serde(flatten)]
    pub interval: Interval,
}

impl RhoRecord {
    pub fn new(label: impl Into<String>, interval: Interval) -> Self {
        RhoRecord { label: label.into(), interval }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub description: String,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<Premise>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rho: Vec<RhoRecord>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub moves: Vec<MoveRecord>,
}

impl InstanceRecord {
    pub fn new(description: impl Into<String>, alpha: f64, verdict: Verdict) -> Self {
        InstanceRecord {
            description: description.into(),
            alpha,
            premises: Vec::new(),
            rho: Vec::new(),
            verdict,
            note: None,
            moves: Vec::new(),
        }
    }

    pub fn premise(mut self, p: Premise) -> Self {
        self.premises.push(p);
        self
    }

    pub fn rho(mut self, label: impl Into<String>, interval: Interval) -> Self {
        self.rho.push(RhoRecord::new(label, interval));
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_move(mut self, m: MoveRecord) -> Self {
        self.moves.push(m);
        self
    }

    pub fn verdict(mut self, v: Verdict) -> Self {
        self.verdict = v;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub instances: usize,
    pub confirmed: usize,
    pub violated: usize,
    pub inconclusive: usize,
    pub premise_not_met: usize,
    pub counterexample_candidate: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConjectureStatus {
    Supported,
    ContradictedCandidate,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureRecord {
    pub statement: String,
    pub m: usize,
    pub d: usize,
    pub alpha: f64,
    pub status: ConjectureStatus,
    pub h1: Interval,
    pub h2: Interval,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub shift: f64,
    pub margin: f64,
    pub premise_slack: f64,
    pub equality_tolerance: f64,
    pub seed: u64,
    pub alphas: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub format: u32,
    pub suite: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub interpretation: Vec<String>,
    pub options: ReportOptions,
    pub counts: Counts,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conjecture: Vec<ConjectureRecord>,
    pub records: Vec<InstanceRecord>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, opts: &HarnessOptions, alphas: &[f64]) -> Self {
        VerificationReport {
            format: REPORT_FORMAT,
            suite: suite.into(),
            interpretation: Vec::new(),
            options: ReportOptions {
                tolerance: opts.solver.tolerance,
                max_iterations: opts.solver.max_iterations,
                shift: opts.solver.shift,
                margin: opts.margin,
                premise_slack: opts.premise_slack,
                equality_tolerance: opts.equality_tolerance,
                seed: opts.seed,
                alphas: alphas.to_vec(),
            },
            counts: Counts::default(),
            conjecture: Vec::new(),
            records: Vec::new(),
        }
    }

    pub fn interpret(mut self, note: impl Into<String>) -> Self {
        self.interpretation.push(note.into());
        self
    }

    pub fn push(&mut self, record: InstanceRecord) {
        let c = &mut self.counts;
        c.instances += 1;
        match record.verdict {
            Verdict::Confirmed => c.confirmed += 1,
            Verdict::Violated => c.violated += 1,
            Verdict::Inconclusive => c.inconclusive += 1,
            Verdict::PremiseNotMet => c.premise_not_met += 1,
            Verdict::CounterexampleCandidate => c.counterexample_candidate += 1,
        }
        self.records.push(record);
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = InstanceRecord>) {
        for r in records {
            self.push(r);
        }
    }

    pub fn has_violations(&self) -> bool {
        self.counts.violated > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Distinct alphas in first-seen order.
pub(crate) fn alphas_of(alphas: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for a in alphas {
        if !out.iter().any(|b| b.to_bits() == a.to_bits()) {
            out.push(a);
        }
    }
    out
}

/// Maps a certified comparison of a claimed-larger radius against a
/// claimed-smaller one onto a theorem verdict.
pub fn verdict_for(claimed_greater: Comparison) -> Verdict {
    match claimed_greater {
        Comparison::Greater => Verdict::Confirmed,
        Comparison::Less => Verdict::Violated,
        Comparison::Inconclusive => Verdict::Inconclusive,
    }
}

type CacheKey = (Hypergraph, u64);

/// Memoizing solver front end. Intervals for supertrees are computed on the
/// canonical relabeling so that the numbers do not depend on which labeled
/// copy reached the cache first.
pub struct Evaluator {
    opts: HarnessOptions,
    labeled: Mutex<HashMap<CacheKey, Arc<SpectralResult>>>,
    canonical: Mutex<HashMap<CacheKey, Interval>>,
}

impl Evaluator {
    pub fn new(opts: HarnessOptions) -> Self {
        Evaluator { opts, labeled: Mutex::new(HashMap::new()), canonical: Mutex::new(HashMap::new()) }
    }

    pub fn options(&self) -> &HarnessOptions {
        &self.opts
    }

    fn solver(&self, alpha: f64) -> SolverOptions {
        SolverOptions { alpha, ..self.opts.solver }
    }

    /// Full solve on the labeled graph (Perron vector in the caller's labels).
    pub fn solve(&self, h: &Hypergraph, alpha: f64) -> Result<Arc<SpectralResult>> {
        let key = (h.clone(), alpha.to_bits());
        if let Some(r) = self.labeled.lock().expect("cache lock").get(&key) {
            return Ok(Arc::clone(r));
        }
        let r = Arc::new(spectral_radius(h, &self.solver(alpha))?);
        self.labeled.lock().expect("cache lock").insert(key, Arc::clone(&r));
        Ok(r)
    }

    /// Certified interval for ρ_α(h).
    pub fn interval(&self, h: &Hypergraph, alpha: f64) -> Result<Interval> {
        if !h.is_supertree() {
            return Ok(self.solve(h, alpha)?.interval());
        }
        let form = h.canonical_form()?;
        let key = (form.graph, alpha.to_bits());
        if let Some(i) = self.canonical.lock().expect("cache lock").get(&key) {
            return Ok(*i);
        }
        let interval = spectral_radius(&key.0, &self.solver(alpha))?.interval();
        self.canonical.lock().expect("cache lock").insert(key, interval);
        Ok(interval)
    }

    pub fn compare(&self, a: &Hypergraph, b: &Hypergraph, alpha: f64) -> Result<Comparison> {
        Ok(self.interval(a, alpha)?.compare(&self.interval(b, alpha)?, self.opts.margin))
    }
}

/// Parameters for running suites over the standard instance sets.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteParams {
    pub k: usize,
    pub m: usize,
    pub d: Option<usize>,
    pub alphas: Vec<f64>,
    pub options: HarnessOptions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Moving,
    Switch,
    Grafting,
    OperationI,
    Extremal,
    Nc,
    Lemma1,
    All,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Moving, Suite::Switch, Suite::Grafting, Suite::OperationI, Suite::Extremal, Suite::Nc, Suite::Lemma1];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Moving => "moving",
            Suite::Switch => "switch",
            Suite::Grafting => "grafting",
            Suite::OperationI => "op1",
            Suite::Extremal => "extremal",
            Suite::Nc => "nc",
            Suite::Lemma1 => "lemma1",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().chain([Suite::All]).find(|x| x.name() == s)
    }
}

/// The grafting and profile suites use fixed small bases (at most three edges,
/// p + q <= 6) regardless of `m`; the other suites work on the supertrees
/// with `m` edges.
pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<Vec<VerificationReport>> {
    if params.alphas.is_empty() {
        return Err(Error::InvalidParameter("at least one alpha is required".into()));
    }
    let eval = Evaluator::new(params.options);
    let (k, m, alphas) = (params.k, params.m, params.alphas.as_slice());
    let suites: Vec<Suite> = if suite == Suite::All { Suite::ALL.to_vec() } else { vec![suite] };
    suites
        .into_iter()
        .map(|s| match s {
            Suite::Moving => verify_edge_moving(&standard_moving_instances(k, m, alphas, &eval)?, &eval),
            Suite::Switch => verify_two_switch(&standard_switch_instances(k, m, alphas, &eval)?, &eval),
            Suite::Grafting => verify_grafting(&standard_grafting_instances(k, 3, 6, alphas)?, &eval),
            Suite::OperationI => {
                let (instances, chains) = standard_operation_i_instances(k, m, alphas, &eval)?;
                let mut report = verify_operation_i(&instances, &eval)?;
                let records: Vec<InstanceRecord> = chains
                    .par_iter()
                    .map(|(graph, alpha)| verify_operation_i_chain(graph, *alpha, &eval))
                    .collect::<Result<_>>()?;
                report.extend(records);
                Ok(report)
            }
            Suite::Extremal => extremal_scan(k, m, alphas, &eval),
            Suite::Nc => nc_scan(k, m, params.d, alphas, &eval),
            Suite::Lemma1 => verify_lemma1_profile(&standard_profile_instances(k, 3, 6, alphas)?, &eval),
            Suite::All => unreachable!("expanded above"),
        })
        .map(|r| {
            r.map(|mut report| {
                report.options.alphas = alphas.to_vec();
                report
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn counts_follow_verdicts() {
        let mut r = VerificationReport::new("t", &HarnessOptions::default(), &[0.0]);
        r.push(InstanceRecord::new("a", 0.0, Verdict::Confirmed));
        r.push(InstanceRecord::new("b", 0.0, Verdict::PremiseNotMet));
        r.push(InstanceRecord::new("c", 0.0, Verdict::Violated));
        assert_eq!(r.counts.instances, 3);
        assert_eq!(r.counts.confirmed, 1);
        assert_eq!(r.counts.premise_not_met, 1);
        assert!(r.has_violations());
    }

    #[test]
    fn canonical_cache_ignores_labels() {
        let eval = Evaluator::new(HarnessOptions::default());
        let p = families::loose_path(3, 4).unwrap();
        let q = p.relabel(&(0..p.n()).rev().collect::<Vec<_>>()).unwrap();
        assert_eq!(eval.interval(&p, 0.25).unwrap(), eval.interval(&q, 0.25).unwrap());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL.into_iter().chain([Suite::All]) {
            assert_eq!(Suite::parse(s.name()), Some(s));
        }
        assert_eq!(Suite::parse("bogus"), None);
    }
}
