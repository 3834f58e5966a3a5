use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{alphas_of, verdict_for, Evaluator, InstanceRecord, Premise, Verdict, VerificationReport};
use crate::canonical::CanonicalKey;
use crate::enumerate::enumerate_supertrees_with_budget;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::spectral::Comparison;
use crate::transforms::two_switch;

/// `e = U1 ∪ U2`, `f = V1 ∪ V2` become `U1 ∪ V2` and `V1 ∪ U2`.
#[derive(Clone, Debug)]
pub struct SwitchInstance {
    pub label: String,
    pub graph: Hypergraph,
    pub e: usize,
    pub f: usize,
    pub u1: Vec<usize>,
    pub v1: Vec<usize>,
    pub alpha: f64,
}

fn premise_values(g: &Hypergraph, x: &[f64], e: usize, f: usize, u1: &[usize], v1: &[usize]) -> (f64, f64) {
    let prod = |vs: &mut dyn Iterator<Item = usize>| vs.map(|v| x[v]).product::<f64>();
    let u2 = g.edge(e).iter().copied().filter(|v| !u1.contains(v));
    let v2 = g.edge(f).iter().copied().filter(|v| !v1.contains(v));
    let a = prod(&mut u1.iter().copied()) - prod(&mut v1.iter().copied());
    let b = prod(&mut v2.into_iter()) - prod(&mut u2.into_iter());
    (a, b)
}

fn check(inst: &SwitchInstance, eval: &Evaluator) -> Result<InstanceRecord> {
    let opts = eval.options();
    let g = &inst.graph;
    let description =
        format!("{}: e={:?} U1={:?} f={:?} V1={:?}", inst.label, g.edge(inst.e), inst.u1, g.edge(inst.f), inst.v1);
    let (switched, record) = two_switch(g, inst.e, inst.f, &inst.u1, &inst.v1)?;
    let rec = InstanceRecord::new(description, inst.alpha, Verdict::PremiseNotMet).with_move(record);
    if !switched.is_connected() {
        return Ok(rec.note("result is disconnected"));
    }
    let x = eval.solve(g, inst.alpha)?;
    let (a, b) = premise_values(g, x.perron.values(), inst.e, inst.f, &inst.u1, &inst.v1);
    let rec = rec.premise(Premise::new("x_U1 - x_V1", a, a >= -opts.premise_slack)).premise(Premise::new(
        "x_V2 - x_U2",
        b,
        b >= -opts.premise_slack,
    ));
    if a < -opts.premise_slack || b < -opts.premise_slack {
        return Ok(rec);
    }
    let before = eval.interval(g, inst.alpha)?;
    let after = eval.interval(&switched, inst.alpha)?;
    let rec = rec.rho("G", before).rho("G'", after);
    let cmp = after.compare(&before, opts.margin);
    if a.max(b) > opts.equality_tolerance {
        return Ok(rec.verdict(verdict_for(cmp)));
    }
    // Both premise differences vanish: only ρ(G') >= ρ(G) is claimed, with
    // equality expected.
    Ok(if (after.rho - before.rho).abs() <= opts.equality_tolerance {
        rec.verdict(Verdict::Confirmed).note("equality")
    } else if cmp == Comparison::Greater {
        rec.verdict(Verdict::Confirmed)
    } else if after.high < before.low - opts.equality_tolerance {
        rec.verdict(Verdict::Violated)
    } else {
        rec.verdict(Verdict::Inconclusive)
    })
}

/// Two-switch claim: with `x_U1 >= x_V1` and `x_U2 <= x_V2`, ρ(G) <= ρ(G'),
/// strictly as soon as one of the two inequalities is strict.
pub fn verify_two_switch(instances: &[SwitchInstance], eval: &Evaluator) -> Result<VerificationReport> {
    let records: Vec<InstanceRecord> = instances.par_iter().map(|i| check(i, eval)).collect::<Result<_>>()?;
    let mut report = VerificationReport::new("switch", eval.options(), &alphas_of(instances.iter().map(|i| i.alpha)));
    report.extend(records);
    Ok(report)
}

fn subsets(set: &[usize], r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    if set.len() < r {
        return Vec::new();
    }
    let mut with: Vec<Vec<usize>> = subsets(&set[1..], r - 1);
    with.iter_mut().for_each(|s| s.insert(0, set[0]));
    with.extend(subsets(&set[1..], r));
    with
}

struct Candidate {
    e: usize,
    f: usize,
    u1: Vec<usize>,
    v1: Vec<usize>,
    result: CanonicalKey,
}

fn candidates(g: &Hypergraph) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    for e in 0..g.edge_count() {
        for f in e + 1..g.edge_count() {
            for r in 1..g.k() {
                for u1 in subsets(g.edge(e), r) {
                    for v1 in subsets(g.edge(f), r) {
                        match two_switch(g, e, f, &u1, &v1) {
                            Ok((h, _)) if h.is_connected() => {
                                out.push(Candidate { e, f, u1: u1.clone(), v1, result: h.canonical_key()? })
                            }
                            Ok(_) | Err(Error::EdgeCollision(_)) | Err(Error::NotKSet(_)) => {}
                            Err(err) => return Err(err),
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Connected two-switches on the supertrees with `m` edges. Per class and
/// alpha the switches are grouped by resulting class and premise outcome,
/// then at most `switch_samples` premise-satisfying and `switch_samples`
/// premise-failing representatives are drawn with a seeded generator.
pub fn standard_switch_instances(k: usize, m: usize, alphas: &[f64], eval: &Evaluator) -> Result<Vec<SwitchInstance>> {
    let opts = *eval.options();
    let classes = enumerate_supertrees_with_budget(k, m, opts.budget)?;
    let per_class: Vec<Vec<SwitchInstance>> = classes
        .par_iter()
        .enumerate()
        .map(|(index, class)| {
            let g = &class.graph;
            let found = candidates(g)?;
            let mut out = Vec::new();
            for (ai, &alpha) in alphas.iter().enumerate() {
                let x = eval.solve(g, alpha)?;
                let mut groups: BTreeMap<(u8, &CanonicalKey), &Candidate> = BTreeMap::new();
                for c in &found {
                    let (a, b) = premise_values(g, x.perron.values(), c.e, c.f, &c.u1, &c.v1);
                    let category = if a < -opts.premise_slack || b < -opts.premise_slack {
                        0
                    } else if a.max(b) > opts.equality_tolerance {
                        2
                    } else {
                        1
                    };
                    groups.entry((category, &c.result)).or_insert(c);
                }
                let seed = opts.seed ^ ((index as u64) << 20) ^ ai as u64;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let (met, unmet): (Vec<_>, Vec<_>) = groups.into_iter().partition(|((cat, _), _)| *cat > 0);
                for group in [met, unmet] {
                    let mut picked = if group.len() > opts.switch_samples {
                        sample(&mut rng, group.len(), opts.switch_samples).into_vec()
                    } else {
                        (0..group.len()).collect()
                    };
                    picked.sort_unstable();
                    out.extend(picked.into_iter().map(|i| {
                        let c = group[i].1;
                        SwitchInstance {
                            label: format!("m={m} class {index} {}", class.key),
                            graph: g.clone(),
                            e: c.e,
                            f: c.f,
                            u1: c.u1.clone(),
                            v1: c.v1.clone(),
                            alpha,
                        }
                    }));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_class.into_iter().flatten().collect())
}
