//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use supertree_spectra::Hypergraph;

/// Backtracking search for a vertex bijection mapping the edge set of `a`
/// onto that of `b`. Exponential, but fine for a dozen vertices.
pub fn isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    if a.k() != b.k() || a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da = a.degrees().to_vec();
    let mut db = b.degrees().to_vec();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    extend(a, b, 0, &mut map, &mut used)
}

fn extend(a: &Hypergraph, b: &Hypergraph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if v == a.n() {
        return true;
    }
    for w in 0..b.n() {
        if used[w] || a.degree(v) != b.degree(w) {
            continue;
        }
        map[v] = w;
        used[w] = true;
        let consistent = a.incident_edges(v).iter().all(|&i| {
            let e = a.edge(i);
            if e.iter().any(|&x| map[x] == usize::MAX) {
                return true;
            }
            let mut image: Vec<usize> = e.iter().map(|&x| map[x]).collect();
            image.sort_unstable();
            b.contains_edge(&image)
        });
        if consistent && extend(a, b, v + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every labeled k-uniform supertree on `m(k-1)+1` vertices with `m`
/// edges, found by choosing pairwise linear edge sets directly (no
/// attachment growth, no canonical forms).
pub fn labeled_supertrees(k: usize, m: usize) -> Vec<Hypergraph> {
    let n = m * (k - 1) + 1;
    let all = k_subsets(n, k);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn go(
        all: &[Vec<usize>],
        k: usize,
        n: usize,
        m: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Hypergraph>,
    ) {
        if chosen.len() == m {
            let h = Hypergraph::build(k, n, chosen.iter().map(|&i| all[i].clone())).unwrap();
            if h.is_connected() && h.degrees().iter().all(|&d| d > 0) {
                out.push(h);
            }
            return;
        }
        for i in start..all.len() {
            let linear = chosen.iter().all(|&j| all[j].iter().filter(|v| all[i].contains(v)).count() <= 1);
            if linear {
                chosen.push(i);
                go(all, k, n, m, i + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    go(&all, k, n, m, 0, &mut chosen, &mut out);
    out
}

/// Largest adjacency eigenvalue of a simple graph.
pub fn graph_spectral_radius(n: usize, edges: &[(usize, usize)]) -> f64 {
    let mut a = DMatrix::<f64>::zeros(n, n);
    for &(u, v) in edges {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    SymmetricEigen::new(a).eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

pub fn path_edges(d: usize) -> (usize, Vec<(usize, usize)>) {
    (d + 1, (0..d).map(|i| (i, i + 1)).collect())
}

pub fn star_edges(m: usize) -> (usize, Vec<(usize, usize)>) {
    (m + 1, (1..=m).map(|i| (0, i)).collect())
}

/// Centres 0 and 1, `a` leaves on 0 and `b` leaves on 1.
pub fn double_star_edges(a: usize, b: usize) -> (usize, Vec<(usize, usize)>) {
    let mut edges = vec![(0, 1)];
    edges.extend((0..a).map(|i| (0, 2 + i)));
    edges.extend((0..b).map(|i| (1, 2 + a + i)));
    (a + b + 2, edges)
}

/// Grows a supertree by attaching each new edge at `choice % n`.
pub fn supertree_from_choices(k: usize, choices: &[usize]) -> Hypergraph {
    let mut edges = vec![(0..k).collect::<Vec<_>>()];
    let mut n = k;
    for &c in choices {
        let mut e = vec![c % n];
        e.extend(n..n + k - 1);
        n += k - 1;
        edges.push(e);
    }
    Hypergraph::build(k, n, edges).unwrap()
}
