use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{alphas_of, verdict_for, Evaluator, InstanceRecord, Premise, Verdict, VerificationReport};
use crate::enumerate::enumerate_supertrees;
use crate::error::{Error, Result};
use crate::families::{graft, Grafted};
use crate::hypergraph::{EdgeKind, Hypergraph, PathKind};
use crate::spectral::Comparison;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GraftKind {
    /// Both paths hang from the same vertex.
    SameVertex,
    /// `u`, `v` are two pendant vertices of one pendant edge.
    PendantEdge,
    /// `u`, `v` are non-pendant and joined by an internal path of length `s`
    /// once the paths are attached.
    InternalPath { s: usize },
}

/// Compares `G_{u,v}(p, q)` against `G_{u,v}(p + 1, q - 1)`.
#[derive(Clone, Debug)]
pub struct GraftInstance {
    pub label: String,
    pub base: Hypergraph,
    pub kind: GraftKind,
    pub u: usize,
    pub v: usize,
    pub p: usize,
    pub q: usize,
    pub alpha: f64,
}

/// Perron profile along the two pendant paths of
/// `G_{u,v}(p + 1, q - 1)`.
pub type ProfileInstance = GraftInstance;

impl GraftInstance {
    fn describe(&self) -> String {
        let kind = match self.kind {
            GraftKind::SameVertex => "same vertex".to_string(),
            GraftKind::PendantEdge => "pendant edge".to_string(),
            GraftKind::InternalPath { s } => format!("internal path s={s}"),
        };
        format!("{} [{kind}] u={} v={} (p,q)=({},{})", self.label, self.u, self.v, self.p, self.q)
    }

    fn pair(&self) -> Result<(Grafted, Grafted)> {
        if self.q < 1 || self.p < self.q {
            return Err(Error::InvalidParameter(format!("need p >= q >= 1, got ({}, {})", self.p, self.q)));
        }
        Ok((
            graft(&self.base, self.u, self.p, self.v, self.q)?,
            graft(&self.base, self.u, self.p + 1, self.v, self.q - 1)?,
        ))
    }

    fn premise(&self, balanced: &Hypergraph) -> Result<Premise> {
        let g = &self.base;
        Ok(match self.kind {
            GraftKind::SameVertex => Premise::new("u = v", (self.u == self.v) as u8 as f64, self.u == self.v),
            GraftKind::PendantEdge => {
                let kinds = g.classify_edges();
                let ok = self.u != self.v
                    && g.degree(self.u) == 1
                    && g.degree(self.v) == 1
                    && g.incident_edges(self.u)
                        .iter()
                        .any(|&i| g.edge(i).contains(&self.v) && kinds[i] == EdgeKind::Pendant && attached(g, i));
                Premise::new("u, v pendant in an attached pendant edge", ok as u8 as f64, ok)
            }
            GraftKind::InternalPath { s } => {
                let path = balanced.shortest_path(self.u, self.v)?;
                let internal = self.u != self.v
                    && g.degree(self.u) >= 2
                    && g.degree(self.v) >= 2
                    && path.len() == s
                    && balanced.path_kind(&path) == PathKind::Internal
                    && self.p - self.q + 1 >= s;
                Premise::new("internal u-v path of length s <= p-q+1", path.len() as f64, internal)
            }
        })
    }
}

/// A lone edge is a pendant edge too, but grafting on it only ever yields
/// loose paths, so G(p, q) and G(p + 1, q - 1) coincide.
fn attached(g: &Hypergraph, edge: usize) -> bool {
    g.edge(edge).iter().any(|&w| g.degree(w) >= 2)
}

fn check_graft(inst: &GraftInstance, eval: &Evaluator) -> Result<InstanceRecord> {
    let (balanced, shifted) = inst.pair()?;
    let premise = inst.premise(&balanced.graph)?;
    let holds = premise.holds;
    let rec = InstanceRecord::new(inst.describe(), inst.alpha, Verdict::PremiseNotMet).premise(premise);
    if !holds {
        return Ok(rec);
    }
    let a = eval.interval(&balanced.graph, inst.alpha)?;
    let b = eval.interval(&shifted.graph, inst.alpha)?;
    let verdict = verdict_for(a.compare(&b, eval.options().margin));
    Ok(rec.rho("G(p,q)", a).rho("G(p+1,q-1)", b).verdict(verdict))
}

/// Grafting claim: moving one edge from the shorter path to the longer one
/// lowers the spectral radius, ρ(G(p, q)) > ρ(G(p + 1, q - 1)).
pub fn verify_grafting(instances: &[GraftInstance], eval: &Evaluator) -> Result<VerificationReport> {
    let records: Vec<InstanceRecord> = instances.par_iter().map(|i| check_graft(i, eval)).collect::<Result<_>>()?;
    let mut report = VerificationReport::new("grafting", eval.options(), &alphas_of(instances.iter().map(|i| i.alpha)))
        .interpret("internal-path instances: u and v are non-pendant in the base and joined by an internal path of length s in G(p,q)");
    report.extend(records);
    Ok(report)
}

fn check_profile(inst: &ProfileInstance, eval: &Evaluator) -> Result<InstanceRecord> {
    let (balanced, shifted) = inst.pair()?;
    let x = eval.solve(&shifted.graph, inst.alpha)?;
    let x = x.perron.values();
    let (p, q) = (inst.p, inst.q);
    let mut rec = InstanceRecord::new(inst.describe(), inst.alpha, Verdict::Inconclusive);
    let mut profile = true;
    for i in 0..q {
        let diff = x[shifted.u_path[p - i]] - x[shifted.v_path[q - i - 1]];
        profile &= diff > 0.0;
        rec = rec.premise(Premise::new(format!("x_u{} - x_v{}", p - i, q - i - 1), diff, diff > 0.0));
    }
    let a = eval.interval(&balanced.graph, inst.alpha)?;
    let b = eval.interval(&shifted.graph, inst.alpha)?;
    let rec = rec.rho("G(p,q)", a).rho("G(p+1,q-1)", b);
    Ok(match (profile, a.compare(&b, eval.options().margin)) {
        (true, _) => rec.verdict(Verdict::Confirmed),
        (false, Comparison::Greater) => rec.verdict(Verdict::Confirmed).note("rho hypothesis fails"),
        (false, Comparison::Less) => rec.verdict(Verdict::Violated),
        (false, Comparison::Inconclusive) => rec,
    })
}

/// Contrapositive check of the path-profile lemma: whenever the Perron
/// profile fails, ρ(G(p, q)) <= ρ(G(p + 1, q - 1)) must fail too.
pub fn verify_lemma1_profile(instances: &[ProfileInstance], eval: &Evaluator) -> Result<VerificationReport> {
    let records: Vec<InstanceRecord> = instances.par_iter().map(|i| check_profile(i, eval)).collect::<Result<_>>()?;
    let mut report = VerificationReport::new("lemma1", eval.options(), &alphas_of(instances.iter().map(|i| i.alpha)));
    report.extend(records);
    Ok(report)
}

fn attachment_points(g: &Hypergraph) -> Result<Vec<(GraftKind, usize, usize)>> {
    let mut out: Vec<(GraftKind, usize, usize)> = (0..g.n()).map(|u| (GraftKind::SameVertex, u, u)).collect();
    let kinds = g.classify_edges();
    for (i, e) in g.edges().iter().enumerate() {
        if kinds[i] != EdgeKind::Pendant || !attached(g, i) {
            continue;
        }
        let light: Vec<usize> = e.iter().copied().filter(|&w| g.degree(w) == 1).collect();
        for (a, &u) in light.iter().enumerate() {
            out.extend(light[a + 1..].iter().map(|&v| (GraftKind::PendantEdge, u, v)));
        }
    }
    for u in 0..g.n() {
        for v in 0..g.n() {
            if u != v && g.degree(u) >= 2 && g.degree(v) >= 2 {
                let s = g.shortest_path(u, v)?.len();
                out.push((GraftKind::InternalPath { s }, u, v));
            }
        }
    }
    Ok(out)
}

/// Bases are the supertrees with at most `max_edges` edges; every attachment
/// kind and every `p >= q >= 1` with `p + q <= max_sum` is generated, keeping
/// one instance per kind and pair of resulting classes.
pub fn standard_grafting_instances(
    k: usize,
    max_edges: usize,
    max_sum: usize,
    alphas: &[f64],
) -> Result<Vec<GraftInstance>> {
    let mut seen = HashSet::new();
    let mut unique = Vec::new();
    for m in 1..=max_edges {
        for (index, class) in enumerate_supertrees(k, m)?.into_iter().enumerate() {
            let g = &class.graph;
            for (kind, u, v) in attachment_points(g)? {
                for q in 1..=max_sum / 2 {
                    for p in q..=max_sum - q {
                        let inst = GraftInstance {
                            label: format!("base m={m} class {index} {}", class.key),
                            base: g.clone(),
                            kind,
                            u,
                            v,
                            p,
                            q,
                            alpha: 0.0,
                        };
                        let (a, b) = inst.pair()?;
                        if !inst.premise(&a.graph)?.holds {
                            continue;
                        }
                        if seen.insert((kind, a.graph.canonical_key()?, b.graph.canonical_key()?)) {
                            unique.push(inst);
                        }
                    }
                }
            }
        }
    }
    Ok(alphas.iter().flat_map(|&alpha| unique.iter().map(move |i| GraftInstance { alpha, ..i.clone() })).collect())
}

pub fn standard_profile_instances(
    k: usize,
    max_edges: usize,
    max_sum: usize,
    alphas: &[f64],
) -> Result<Vec<ProfileInstance>> {
    standard_grafting_instances(k, max_edges, max_sum, alphas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::harness::HarnessOptions;

    fn inst(base: Hypergraph, kind: GraftKind, u: usize, v: usize, p: usize, q: usize) -> GraftInstance {
        GraftInstance { label: "t".into(), base, kind, u, v, p, q, alpha: 0.0 }
    }

    #[test]
    fn same_vertex_on_single_edge() {
        let eval = Evaluator::new(HarnessOptions::default());
        let e = families::loose_path(3, 1).unwrap();
        let report = verify_grafting(&[inst(e, GraftKind::SameVertex, 0, 0, 1, 1)], &eval).unwrap();
        assert_eq!(report.counts.confirmed, 1);
    }

    #[test]
    fn pendant_edge_pair() {
        let eval = Evaluator::new(HarnessOptions::default());
        let p = families::loose_path(3, 2).unwrap();
        let report = verify_grafting(&[inst(p.clone(), GraftKind::PendantEdge, 0, 1, 2, 1)], &eval).unwrap();
        assert_eq!(report.counts.confirmed, 1);
        // 2 is the shared vertex, not pendant.
        let report = verify_grafting(&[inst(p, GraftKind::PendantEdge, 1, 2, 1, 1)], &eval).unwrap();
        assert_eq!(report.counts.premise_not_met, 1);
        // On a lone edge both sides are the same loose path.
        let e = families::loose_path(3, 1).unwrap();
        let report = verify_grafting(&[inst(e, GraftKind::PendantEdge, 1, 2, 2, 1)], &eval).unwrap();
        assert_eq!(report.counts.premise_not_met, 1);
    }

    #[test]
    fn internal_path_of_length_one() {
        let eval = Evaluator::new(HarnessOptions::default());
        let p = families::loose_path(3, 3).unwrap();
        let report = verify_grafting(&[inst(p, GraftKind::InternalPath { s: 1 }, 2, 4, 1, 1)], &eval).unwrap();
        assert_eq!(report.counts.confirmed, 1, "{}", report.to_json());
    }

    #[test]
    fn rejects_bad_range() {
        let eval = Evaluator::new(HarnessOptions::default());
        let e = families::loose_path(3, 1).unwrap();
        assert!(verify_grafting(&[inst(e, GraftKind::SameVertex, 0, 0, 1, 2)], &eval).is_err());
    }

    #[test]
    fn profile_on_same_vertex() {
        let eval = Evaluator::new(HarnessOptions::default());
        let e = families::loose_path(3, 1).unwrap();
        let report = verify_lemma1_profile(&[inst(e, GraftKind::SameVertex, 0, 0, 2, 1)], &eval).unwrap();
        assert_eq!(report.counts.violated, 0);
        assert_eq!(report.counts.confirmed, 1);
        assert_eq!(report.records[0].premises.len(), 1);
    }

    #[test]
    fn standard_set_covers_every_kind() {
        let instances = standard_grafting_instances(3, 3, 6, &[0.0]).unwrap();
        assert!(instances.iter().any(|i| i.kind == GraftKind::SameVertex));
        assert!(instances.iter().any(|i| i.kind == GraftKind::PendantEdge));
        assert!(instances.iter().any(|i| matches!(i.kind, GraftKind::InternalPath { s: 1 })));
    }
}
