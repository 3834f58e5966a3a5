use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{alphas_of, verdict_for, Evaluator, InstanceRecord, Premise, Verdict, VerificationReport};
use crate::enumerate::enumerate_supertrees_with_budget;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::spectral::Comparison;
use crate::transforms::operation_i;

#[derive(Clone, Debug)]
pub struct OperationIInstance {
    pub label: String,
    pub graph: Hypergraph,
    pub edge: usize,
    /// `(receiver, kept)`.
    pub keep: (usize, usize),
    pub alpha: f64,
}

fn check(inst: &OperationIInstance, eval: &Evaluator) -> Result<InstanceRecord> {
    let g = &inst.graph;
    let description =
        format!("{}: edge {:?} receiver {} kept {}", inst.label, g.edge(inst.edge), inst.keep.0, inst.keep.1);
    let rec = InstanceRecord::new(description, inst.alpha, Verdict::PremiseNotMet);
    let (after, record) = match operation_i(g, inst.edge, inst.keep) {
        Ok(x) => x,
        Err(Error::NotApplicable(why)) => {
            return Ok(rec.premise(Premise::new("applicable", 0.0, false)).note(why));
        }
        Err(e) => return Err(e),
    };
    let rec = rec.premise(Premise::new("applicable", 1.0, true)).with_move(record);
    if !after.is_connected() {
        return Ok(rec.note("result is disconnected"));
    }
    let a = eval.interval(&after, inst.alpha)?;
    let b = eval.interval(g, inst.alpha)?;
    Ok(rec.rho("G", b).rho("G'", a).verdict(verdict_for(a.compare(&b, eval.options().margin))))
}

/// Collapsing a branching edge (`operation_i`) strictly increases the spectral radius.
pub fn verify_operation_i(instances: &[OperationIInstance], eval: &Evaluator) -> Result<VerificationReport> {
    let records: Vec<InstanceRecord> = instances.par_iter().map(|i| check(i, eval)).collect::<Result<_>>()?;
    let mut report = VerificationReport::new("op1", eval.options(), &alphas_of(instances.iter().map(|i| i.alpha)));
    report.extend(records);
    Ok(report)
}

/// Chains to follow: a starting graph and its alpha.
pub type ChainStarts = Vec<(Hypergraph, f64)>;

fn heavy(g: &Hypergraph, edge: usize) -> Vec<usize> {
    g.edge(edge).iter().copied().filter(|&v| g.degree(v) >= 2).collect()
}

fn first_branching(g: &Hypergraph) -> Option<usize> {
    (0..g.edge_count()).find(|&i| heavy(g, i).len() >= 3)
}

/// Collapses the first branching edge until the graph is a
/// power hypergraph and checks that ρ strictly increases at every step.
pub fn verify_operation_i_chain(g: &Hypergraph, alpha: f64, eval: &Evaluator) -> Result<InstanceRecord> {
    let mut rec = InstanceRecord::new("op1 chain", alpha, Verdict::Confirmed);
    if g.k() < 3 || !g.is_linear() || first_branching(g).is_none() {
        return Ok(rec.premise(Premise::new("applicable", 0.0, false)).verdict(Verdict::PremiseNotMet));
    }
    let mut current = g.clone();
    let mut previous = eval.interval(&current, alpha)?;
    rec = rec.rho("step 0", previous);
    let mut step = 0;
    while let Some(edge) = first_branching(&current) {
        let h = heavy(&current, edge);
        let (next, record) = operation_i(&current, edge, (h[0], h[1]))?;
        let interval = eval.interval(&next, alpha)?;
        step += 1;
        rec = rec.rho(format!("step {step}"), interval).with_move(record);
        let verdict = match interval.compare(&previous, eval.options().margin) {
            Comparison::Greater => Verdict::Confirmed,
            Comparison::Less => Verdict::Violated,
            Comparison::Inconclusive => Verdict::Inconclusive,
        };
        if rec.verdict == Verdict::Confirmed || verdict == Verdict::Violated {
            rec.verdict = verdict;
        }
        current = next;
        previous = interval;
    }
    debug_assert!(current.is_power_hypergraph());
    let power = current.is_power_hypergraph();
    Ok(rec.premise(Premise::new("ends at power hypergraph", power as u8 as f64, power)))
}

/// Every applicable edge collapse on the supertrees with `m` edges (one per
/// class, alpha and resulting class) plus one chain per non-power class.
pub fn standard_operation_i_instances(
    k: usize,
    m: usize,
    alphas: &[f64],
    eval: &Evaluator,
) -> Result<(Vec<OperationIInstance>, ChainStarts)> {
    let classes = enumerate_supertrees_with_budget(k, m, eval.options().budget)?;
    let mut instances = Vec::new();
    let mut chains = Vec::new();
    if k < 3 {
        return Ok((instances, chains));
    }
    for (index, class) in classes.iter().enumerate() {
        let g = &class.graph;
        let mut seen = BTreeSet::new();
        let mut found = Vec::new();
        for edge in 0..g.edge_count() {
            let h = heavy(g, edge);
            if h.len() < 3 {
                continue;
            }
            for &receiver in &h {
                for &kept in &h {
                    if receiver == kept {
                        continue;
                    }
                    let (after, _) = operation_i(g, edge, (receiver, kept))?;
                    if seen.insert(after.canonical_key()?) {
                        found.push((edge, (receiver, kept)));
                    }
                }
            }
        }
        if !found.is_empty() {
            chains.extend(alphas.iter().map(|&a| (g.clone(), a)));
        }
        for &alpha in alphas {
            instances.extend(found.iter().map(|&(edge, keep)| OperationIInstance {
                label: format!("m={m} class {index} {}", class.key),
                graph: g.clone(),
                edge,
                keep,
                alpha,
            }));
        }
    }
    Ok((instances, chains))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::harness::HarnessOptions;

    fn branching_k3_m4() -> Hypergraph {
        // Central edge {0,1,2} with a pendant edge at each vertex.
        Hypergraph::build(3, 9, [vec![0, 1, 2], vec![0, 3, 4], vec![1, 5, 6], vec![2, 7, 8]]).unwrap()
    }

    #[test]
    fn smallest_applicable() {
        let eval = Evaluator::new(HarnessOptions::default());
        let inst =
            OperationIInstance { label: "t".into(), graph: branching_k3_m4(), edge: 0, keep: (0, 1), alpha: 0.0 };
        let report = verify_operation_i(&[inst], &eval).unwrap();
        assert_eq!(report.counts.confirmed, 1, "{}", report.to_json());
    }

    #[test]
    fn not_applicable() {
        let eval = Evaluator::new(HarnessOptions::default());
        let inst = OperationIInstance {
            label: "t".into(),
            graph: families::loose_path(3, 3).unwrap(),
            edge: 1,
            keep: (2, 4),
            alpha: 0.0,
        };
        let report = verify_operation_i(&[inst], &eval).unwrap();
        assert_eq!(report.counts.premise_not_met, 1);
    }

    #[test]
    fn chain_reaches_power_hypergraph() {
        let eval = Evaluator::new(HarnessOptions::default());
        let rec = verify_operation_i_chain(&branching_k3_m4(), 0.5, &eval).unwrap();
        assert_eq!(rec.verdict, Verdict::Confirmed);
        assert_eq!(rec.rho.len(), 2);
        assert!(rec.premises.iter().all(|p| p.holds));
    }
}
