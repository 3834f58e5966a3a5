//! Structural perturbations: edge moving, 2-switching and edge collapsing.
//!
//! Every transform returns a fresh hypergraph together with a [`MoveRecord`]
//! describing exactly which edges were replaced. Vertex count and uniformity
//! are preserved; connectivity of the result is left to the caller.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    EdgeMove,
    TwoSwitch,
    OperationI,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub kind: MoveKind,
    pub removed: Vec<Vec<usize>>,
    pub added: Vec<Vec<usize>>,
    /// Edge moving: `[u, v_1, ..., v_r]`. Two-switch: empty (see blocks).
    /// Edge collapse: `[v_1, v_2, v_3, ..., v_r]`.
    pub pivots: Vec<usize>,
    /// Two-switch blocks `[U1, U2, V1, V2]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<Vec<usize>>,
}

fn sorted(mut e: Vec<usize>) -> Vec<usize> {
    e.sort_unstable();
    e
}

fn replace_edges(g: &Hypergraph, removed: &[usize], added: &[Vec<usize>]) -> Result<Hypergraph> {
    let removed: BTreeSet<usize> = removed.iter().copied().collect();
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| !removed.contains(i))
        .map(|(_, e)| e.clone())
        .chain(added.iter().cloned());
    Hypergraph::build(g.k(), g.n(), edges)
}

fn edge_at(g: &Hypergraph, index: usize) -> Result<&[usize]> {
    if index < g.edge_count() {
        Ok(g.edge(index))
    } else {
        Err(Error::InvalidParameter(format!("edge index {index} out of range")))
    }
}

/// Replaces each `e_i` (by index) with `(e_i \ {v_i}) ∪ {u}`.
pub fn move_edges(g: &Hypergraph, u: usize, moves: &[(usize, usize)]) -> Result<(Hypergraph, MoveRecord)> {
    g.check_vertex(u)?;
    let mut seen_index = BTreeSet::new();
    let mut removed = Vec::with_capacity(moves.len());
    let mut added: Vec<Vec<usize>> = Vec::with_capacity(moves.len());
    for &(index, v) in moves {
        let e = edge_at(g, index)?;
        if !seen_index.insert(index) {
            return Err(Error::InvalidParameter(format!("edge index {index} moved twice")));
        }
        if e.contains(&u) {
            return Err(Error::PivotInEdge { pivot: u, edge: e.to_vec() });
        }
        if !e.contains(&v) {
            return Err(Error::MissingVertex { vertex: v, edge: e.to_vec() });
        }
        let moved = sorted(e.iter().map(|&w| if w == v { u } else { w }).collect());
        if g.contains_edge(&moved) || added.contains(&moved) {
            return Err(Error::EdgeCollision(moved));
        }
        removed.push(e.to_vec());
        added.push(moved);
    }
    let indices: Vec<usize> = moves.iter().map(|&(i, _)| i).collect();
    let result = replace_edges(g, &indices, &added)?;
    let mut pivots = vec![u];
    pivots.extend(moves.iter().map(|&(_, v)| v));
    Ok((result, MoveRecord { kind: MoveKind::EdgeMove, removed, added, pivots, blocks: Vec::new() }))
}

/// Moves every edge that contains `from` but not `to` over to `to`; the
/// neighbour-merging step used throughout the extremal arguments.
pub fn move_all_edges(g: &Hypergraph, from: usize, to: usize) -> Result<(Hypergraph, MoveRecord)> {
    g.check_vertex(from)?;
    g.check_vertex(to)?;
    let moves: Vec<(usize, usize)> =
        g.incident_edges(from).iter().filter(|&&i| !g.edge(i).contains(&to)).map(|&i| (i, from)).collect();
    move_edges(g, to, &moves)
}

/// `e' = U1 ∪ (f \ V1)`, `f' = V1 ∪ (e \ U1)`.
pub fn two_switch(
    g: &Hypergraph,
    e_index: usize,
    f_index: usize,
    u1: &[usize],
    v1: &[usize],
) -> Result<(Hypergraph, MoveRecord)> {
    let k = g.k();
    let e = edge_at(g, e_index)?.to_vec();
    let f = edge_at(g, f_index)?.to_vec();
    if e_index == f_index {
        return Err(Error::InvalidParameter("two-switch needs two distinct edges".into()));
    }
    let u1: BTreeSet<usize> = u1.iter().copied().collect();
    let v1: BTreeSet<usize> = v1.iter().copied().collect();
    if u1.len() != v1.len() || u1.is_empty() || u1.len() >= k {
        return Err(Error::SizeMismatch { u1: u1.len(), v1: v1.len() });
    }
    if let Some(&x) = u1.iter().find(|x| !e.contains(x)) {
        return Err(Error::MissingVertex { vertex: x, edge: e });
    }
    if let Some(&x) = v1.iter().find(|x| !f.contains(x)) {
        return Err(Error::MissingVertex { vertex: x, edge: f });
    }
    let u2: BTreeSet<usize> = e.iter().copied().filter(|x| !u1.contains(x)).collect();
    let v2: BTreeSet<usize> = f.iter().copied().filter(|x| !v1.contains(x)).collect();
    let e_new: BTreeSet<usize> = u1.union(&v2).copied().collect();
    let f_new: BTreeSet<usize> = v1.union(&u2).copied().collect();
    let e_new: Vec<usize> = e_new.into_iter().collect();
    let f_new: Vec<usize> = f_new.into_iter().collect();
    for x in [&e_new, &f_new] {
        if x.len() != k {
            return Err(Error::NotKSet(x.clone()));
        }
        if g.contains_edge(x) {
            return Err(Error::EdgeCollision(x.clone()));
        }
    }
    if e_new == f_new {
        return Err(Error::EdgeCollision(e_new));
    }
    let added = vec![e_new, f_new];
    let result = replace_edges(g, &[e_index, f_index], &added)?;
    assert_eq!(result.degrees(), g.degrees(), "two-switch must preserve every degree");
    let blocks = [u1, u2, v1, v2].into_iter().map(|b| b.into_iter().collect()).collect();
    Ok((result, MoveRecord { kind: MoveKind::TwoSwitch, removed: vec![e, f], added, pivots: Vec::new(), blocks }))
}

/// Collapses edge `e_index`: every other non-pendant vertex of the edge
/// hands its remaining edges to `keep.0`. `keep.1` stays put.
pub fn operation_i(g: &Hypergraph, e_index: usize, keep: (usize, usize)) -> Result<(Hypergraph, MoveRecord)> {
    let e = edge_at(g, e_index)?.to_vec();
    if g.k() < 3 {
        return Err(Error::NotApplicable("edge collapse needs k >= 3".into()));
    }
    if !g.is_linear() {
        return Err(Error::NotApplicable("edge collapse needs a linear hypergraph".into()));
    }
    let heavy: Vec<usize> = e.iter().copied().filter(|&v| g.degree(v) >= 2).collect();
    if heavy.len() < 3 {
        return Err(Error::NotApplicable(format!("edge {e:?} has {} vertices of degree >= 2, need 3", heavy.len())));
    }
    let (receiver, kept) = keep;
    if receiver == kept || !heavy.contains(&receiver) || !heavy.contains(&kept) {
        return Err(Error::InvalidParameter(format!(
            "({receiver}, {kept}) must be two distinct non-pendant vertices of {e:?}"
        )));
    }
    let sources: Vec<usize> = heavy.iter().copied().filter(|&v| v != receiver && v != kept).collect();
    let moves: Vec<(usize, usize)> = sources
        .iter()
        .flat_map(|&v| g.incident_edges(v).iter().filter(|&&i| i != e_index).map(move |&i| (i, v)))
        .collect();
    let (result, mut record) = move_edges(g, receiver, &moves)?;
    record.kind = MoveKind::OperationI;
    record.pivots = [receiver, kept].into_iter().chain(sources).collect();
    Ok((result, record))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn move_star_edge_to_pendant_vertex() {
        let s = families::star(3, 2).unwrap();
        let idx = s.edge_index(&[0, 3, 4]).unwrap();
        let (g, record) = move_edges(&s, 1, &[(idx, 0)]).unwrap();
        assert_eq!(g.edges(), &[vec![0, 1, 2], vec![1, 3, 4]]);
        assert_eq!(record.added, vec![vec![1, 3, 4]]);
        assert_eq!(g.canonical_key().unwrap(), families::loose_path(3, 2).unwrap().canonical_key().unwrap());
    }

    #[test]
    fn empty_move_is_identity() {
        let s = families::star(3, 2).unwrap();
        assert_eq!(move_edges(&s, 1, &[]).unwrap().0, s);
    }

    #[test]
    fn move_errors() {
        let p = families::loose_path(3, 2).unwrap();
        // p: {0,1,2}, {2,3,4}
        assert!(matches!(move_edges(&p, 0, &[(0, 1)]), Err(Error::PivotInEdge { .. })));
        assert!(matches!(move_edges(&p, 0, &[(1, 1)]), Err(Error::MissingVertex { .. })));
        let g = Hypergraph::build(3, 6, [[0, 1, 2], [2, 3, 4], [0, 1, 5]]).unwrap();
        let idx = g.edge_index(&[0, 1, 5]).unwrap();
        assert!(matches!(move_edges(&g, 2, &[(idx, 5)]), Err(Error::EdgeCollision(_))));
    }

    #[test]
    fn move_changes_only_pivot_degrees() {
        let p = families::loose_path(3, 3).unwrap();
        let (g, _) = move_all_edges(&p, 4, 2).unwrap();
        assert_eq!(g.degree(2), 3);
        assert_eq!(g.degree(4), 1);
        assert_eq!(g.canonical_key().unwrap(), families::star(3, 3).unwrap().canonical_key().unwrap());
    }

    #[test]
    fn switch_preserves_degrees() {
        let g = families::loose_path(3, 3).unwrap();
        let (e, f) = (g.edge_index(&[0, 1, 2]).unwrap(), g.edge_index(&[4, 5, 6]).unwrap());
        let (h, record) = two_switch(&g, e, f, &[0], &[6]).unwrap();
        assert_eq!(h.degrees(), g.degrees());
        assert_eq!(record.added, vec![vec![0, 4, 5], vec![1, 2, 6]]);
        assert_eq!(record.blocks[1], vec![1, 2]);
    }

    #[test]
    fn switch_errors() {
        let g = families::loose_path(3, 3).unwrap();
        let (e, f) = (g.edge_index(&[0, 1, 2]).unwrap(), g.edge_index(&[4, 5, 6]).unwrap());
        assert!(matches!(two_switch(&g, e, f, &[0, 1, 2], &[4, 5, 6]), Err(Error::SizeMismatch { .. })));
        assert!(matches!(two_switch(&g, e, f, &[0], &[4, 5]), Err(Error::SizeMismatch { .. })));
        let mid = g.edge_index(&[2, 3, 4]).unwrap();
        // U1 = {0}, V1 = {3}: e' = {0, 2, 4} fine; f' = {3, 1, 2} fine.
        assert!(two_switch(&g, e, mid, &[0], &[3]).is_ok());
        // U1 = {0}, V1 = {4}: e' = {0} ∪ {2, 3} fine, f' = {4} ∪ {1, 2} fine.
        // U1 = {1}, V1 = {3}: keeps 2 on both sides -> e' = {1, 2, 4}, f' = {3, 0, 2}.
        assert!(two_switch(&g, e, mid, &[1], &[3]).is_ok());
        // U1 = {0}, V1 = {2}: e' = {0, 3, 4}, f' = {2, 1, 2} is not a k-set.
        assert!(matches!(two_switch(&g, e, mid, &[0], &[2]), Err(Error::NotKSet(_))));
        let h = Hypergraph::build(3, 7, [[0, 1, 2], [3, 4, 5], [0, 4, 5], [1, 2, 6]]).unwrap();
        let (e, f) = (h.edge_index(&[0, 1, 2]).unwrap(), h.edge_index(&[3, 4, 5]).unwrap());
        assert!(matches!(two_switch(&h, e, f, &[0], &[3]), Err(Error::EdgeCollision(_))));
    }

    #[test]
    fn operation_i_on_spider() {
        // Edge {0,1,2} with a pendant edge at each vertex.
        let g = Hypergraph::build(3, 9, [[0, 1, 2], [0, 3, 4], [1, 5, 6], [2, 7, 8]]).unwrap();
        let e = g.edge_index(&[0, 1, 2]).unwrap();
        let (h, record) = operation_i(&g, e, (0, 1)).unwrap();
        assert_eq!(h.degree(0), 3);
        assert_eq!(h.degree(2), 1);
        assert_eq!(record.pivots, vec![0, 1, 2]);
        assert!(h.is_power_hypergraph());
        assert!(matches!(operation_i(&g, e, (0, 5)), Err(Error::InvalidParameter(_))));

        let p = families::loose_path(3, 3).unwrap();
        let mid = p.edge_index(&[2, 3, 4]).unwrap();
        assert!(matches!(operation_i(&p, mid, (2, 4)), Err(Error::NotApplicable(_))));
    }
}
