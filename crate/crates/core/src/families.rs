//! Constructors for the named supertree families.
//!
//! Labeling is fixed so that output files are byte-stable:
//! * `loose_path`: edge `i` is `{i(k-1), ..., i(k-1) + k - 1}`; the junction
//!   vertices are the multiples of `k - 1`.
//! * `star`: center `0`, edge `i` is `{0} ∪ {1 + i(k-1), ..., (i+1)(k-1)}`.
//! * power hypergraphs keep the 2-graph labels `0..N` and append the `k - 2`
//!   fresh vertices of tree edge `i` as `N + i(k-2), ...`.
//! * `double_star`: tree centers `0` (with `a` leaves) and `1` (with `b`).
//! * `t_tree`: the double star `S(s, t)` followed by a path of length `a` and
//!   then one of length `b`, both rooted at tree vertex `1`.
//! * grafting appends new vertices in construction order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        Err(invalid(format!("uniformity k must be >= 2, got {k}")))
    } else {
        Ok(())
    }
}

pub fn loose_path(k: usize, d: usize) -> Result<Hypergraph> {
    check_k(k)?;
    if d < 1 {
        return Err(invalid("loose path needs length d >= 1"));
    }
    let edges = (0..d).map(|i| (i * (k - 1)..=i * (k - 1) + k - 1).collect::<Vec<_>>());
    Hypergraph::build(k, d * (k - 1) + 1, edges)
}

pub fn star(k: usize, m: usize) -> Result<Hypergraph> {
    check_k(k)?;
    if m < 1 {
        return Err(invalid("star needs m >= 1 edges"));
    }
    let edges = (0..m).map(|i| {
        let mut e = vec![0];
        e.extend(1 + i * (k - 1)..=(i + 1) * (k - 1));
        e
    });
    Hypergraph::build(k, m * (k - 1) + 1, edges)
}

/// k-th power of an ordinary tree given as an edge list on `0..N`.
pub fn power_hypergraph(tree: &[(usize, usize)], k: usize) -> Result<Hypergraph> {
    check_k(k)?;
    let order = tree.len() + 1;
    let mut adj = vec![Vec::new(); order];
    for &(a, b) in tree {
        if a >= order || b >= order || a == b {
            return Err(Error::NotATree);
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; order];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !std::mem::replace(&mut seen[y], true) {
                stack.push(y);
            }
        }
    }
    // N - 1 edges and connected implies a tree (and rules out repeats).
    if seen.iter().any(|s| !s) {
        return Err(Error::NotATree);
    }
    let edges = tree.iter().enumerate().map(|(i, &(a, b))| {
        let mut e = vec![a, b];
        e.extend(order + i * (k - 2)..order + (i + 1) * (k - 2));
        e
    });
    Hypergraph::build(k, order + tree.len() * (k - 2), edges)
}

fn double_star_tree(a: usize, b: usize) -> Vec<(usize, usize)> {
    let mut tree = vec![(0, 1)];
    tree.extend((0..a).map(|i| (0, 2 + i)));
    tree.extend((0..b).map(|i| (1, 2 + a + i)));
    tree
}

/// `S^k(a, b)`: an edge `{0, 1, ...}` with `a` pendant edges at `0` and `b` at `1`.
pub fn double_star(k: usize, a: usize, b: usize) -> Result<Hypergraph> {
    if a + b < 1 {
        return Err(invalid("double star needs a + b >= 1"));
    }
    power_hypergraph(&double_star_tree(a, b), k)
}

/// `T^k(s, t; a, b)`: `S(s, t)` with paths of length `a` and `b` hung from the
/// center of degree `t + 1` (tree vertex `1`). `a` or `b` may be zero, in which
/// case the shape degenerates towards a double star.
pub fn t_tree(k: usize, s: usize, t: usize, a: usize, b: usize) -> Result<Hypergraph> {
    let mut tree = double_star_tree(s, t);
    let mut next = 2 + s + t;
    for len in [a, b] {
        let mut prev = 1;
        for _ in 0..len {
            tree.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    power_hypergraph(&tree, k)
}

fn check_nc_range(m: usize, d: usize) -> Result<()> {
    if m < 6 || d < 4 || d + 2 > m {
        Err(invalid(format!("H1/H2 need m >= 6 and 4 <= d <= m - 2, got m = {m}, d = {d}")))
    } else {
        Ok(())
    }
}

/// `H1(m, d) = T^k(1, m-d-2; ⌊d/2⌋, d-⌊d/2⌋)`.
pub fn h1(k: usize, m: usize, d: usize) -> Result<Hypergraph> {
    check_nc_range(m, d)?;
    let h = t_tree(k, 1, m - d - 2, d / 2, d - d / 2)?;
    debug_assert_nc(&h, m, d);
    Ok(h)
}

/// `H2(m, d) = T^k(m-d-1, 0; ⌊d/2⌋, d-⌊d/2⌋)`.
pub fn h2(k: usize, m: usize, d: usize) -> Result<Hypergraph> {
    check_nc_range(m, d)?;
    let h = t_tree(k, m - d - 1, 0, d / 2, d - d / 2)?;
    debug_assert_nc(&h, m, d);
    Ok(h)
}

fn debug_assert_nc(h: &Hypergraph, m: usize, d: usize) {
    debug_assert_eq!(h.edge_count(), m);
    debug_assert_eq!(h.diameter_and_diametral_path().map(|(x, _)| x).ok(), Some(d));
    debug_assert_eq!(h.is_caterpillar().ok(), Some(false));
}

/// Result of grafting two pendant paths. `u_path[0] = u`, `u_path[i]` is the
/// far junction vertex of the `i`-th new edge at `u`; likewise `v_path`.
#[derive(Clone, Debug)]
pub struct Grafted {
    pub graph: Hypergraph,
    pub u_path: Vec<usize>,
    pub v_path: Vec<usize>,
}

/// `G_{u,v}(p, q)`: a pendant loose path of `p` edges at `u` and one of `q`
/// edges at `v` (`u == v` gives `G_u(p, q)`).
pub fn graft(g: &Hypergraph, u: usize, p: usize, v: usize, q: usize) -> Result<Grafted> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let k = g.k();
    let mut edges: Vec<Vec<usize>> = g.edges().to_vec();
    let mut next = g.n();
    let mut grow = |start: usize, len: usize| {
        let mut path = vec![start];
        let mut prev = start;
        for _ in 0..len {
            let mut e = vec![prev];
            e.extend(next..next + k - 1);
            next += k - 1;
            prev = next - 1;
            edges.push(e);
            path.push(prev);
        }
        path
    };
    let u_path = grow(u, p);
    let v_path = grow(v, q);
    let graph = Hypergraph::build(k, next, edges)?;
    Ok(Grafted { graph, u_path, v_path })
}

pub fn attach_pendant_paths(g: &Hypergraph, u: usize, p: usize, v: usize, q: usize) -> Result<Hypergraph> {
    graft(g, u, p, v, q).map(|x| x.graph)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilyKind {
    LoosePath { d: usize },
    PowerOfTree { tree: Vec<(usize, usize)> },
    Star { m: usize },
    DoubleStar { a: usize, b: usize },
    TTree { s: usize, t: usize, a: usize, b: usize },
    H1 { m: usize, d: usize },
    H2 { m: usize, d: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub k: usize,
    #[serde(flatten)]
    pub kind: FamilyKind,
}

impl FamilySpec {
    pub fn new(k: usize, kind: FamilyKind) -> Self {
        FamilySpec { k, kind }
    }

    pub fn build(&self) -> Result<Hypergraph> {
        let k = self.k;
        match &self.kind {
            FamilyKind::LoosePath { d } => loose_path(k, *d),
            FamilyKind::PowerOfTree { tree } => power_hypergraph(tree, k),
            FamilyKind::Star { m } => star(k, *m),
            FamilyKind::DoubleStar { a, b } => double_star(k, *a, *b),
            FamilyKind::TTree { s, t, a, b } => t_tree(k, *s, *t, *a, *b),
            FamilyKind::H1 { m, d } => h1(k, *m, *d),
            FamilyKind::H2 { m, d } => h2(k, *m, *d),
        }
    }

    pub fn label(&self) -> String {
        let k = self.k;
        match &self.kind {
            FamilyKind::LoosePath { d } => format!("P{d}^{k}"),
            FamilyKind::PowerOfTree { tree } => format!("T^{k}[{} edges]", tree.len()),
            FamilyKind::Star { m } => format!("K1,{m}^{k}"),
            FamilyKind::DoubleStar { a, b } => format!("S^{k}({a},{b})"),
            FamilyKind::TTree { s, t, a, b } => format!("T^{k}({s},{t};{a},{b})"),
            FamilyKind::H1 { m, d } => format!("H1^{k}({m},{d})"),
            FamilyKind::H2 { m, d } => format!("H2^{k}({m},{d})"),
        }
    }
}
