//! Immutable k-uniform hypergraphs over dense vertex labels `0..n`.
//!
//! Edges are stored as sorted vertex lists and the edge list itself is kept in
//! lexicographic order, so two hypergraphs built from the same edge set compare
//! equal regardless of input order.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Current version of the JSON hypergraph format.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
    derived: OnceLock<Derived>,
}

#[derive(Clone, Debug)]
struct Derived {
    stats: VertexStats,
    incidence: Vec<Vec<usize>>,
}

/// Per-vertex degree data. `pendant[v]` is `degree[v] == 1` and
/// `branching[v]` is `degree[v] >= 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexStats {
    pub degree: Vec<usize>,
    pub pendant: Vec<bool>,
    pub branching: Vec<bool>,
}

impl VertexStats {
    fn from_edges(n: usize, edges: &[Vec<usize>]) -> Self {
        let mut degree = vec![0; n];
        for e in edges {
            for &v in e {
                degree[v] += 1;
            }
        }
        let pendant = degree.iter().map(|&d| d == 1).collect();
        let branching = degree.iter().map(|&d| d >= 3).collect();
        VertexStats { degree, pendant, branching }
    }

    pub fn degree_sum(&self) -> usize {
        self.degree.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeKind {
    /// All vertices except at most one have degree one.
    Pendant,
    /// At least three vertices have degree two or more.
    Branching,
    Other,
}

/// Alternating walk `v0 e1 v1 ... ed vd`; `edges[i]` joins `vertices[i]` and
/// `vertices[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathTrace {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathKind {
    /// Both ends have degree at least 3 and no other path vertex touches
    /// edges outside the path.
    Internal,
    /// Only the first vertex has outside edges; it has degree at least 3.
    Pendant,
    Neither,
}

impl PathTrace {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks that this is a loose path in `h`: consecutive edges meet exactly
    /// in the listed vertex, non-consecutive edges are disjoint.
    pub fn is_loose_path_in(&self, h: &Hypergraph) -> bool {
        let d = self.edges.len();
        if self.vertices.len() != d + 1 || self.edges.iter().any(|&e| e >= h.edge_count()) {
            return false;
        }
        if self.vertices.iter().any(|&v| v >= h.n()) {
            return false;
        }
        let distinct: BTreeSet<_> = self.edges.iter().collect();
        if distinct.len() != d {
            return false;
        }
        for (i, &ei) in self.edges.iter().enumerate() {
            let e = h.edge(ei);
            if !e.contains(&self.vertices[i]) || !e.contains(&self.vertices[i + 1]) {
                return false;
            }
            if self.vertices[i] == self.vertices[i + 1] {
                return false;
            }
            for (j, &ej) in self.edges.iter().enumerate().skip(i + 1) {
                let common = intersection_size(e, h.edge(ej));
                let expected = usize::from(j == i + 1);
                if common != expected {
                    return false;
                }
            }
        }
        true
    }
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

impl Hypergraph {
    /// Builds a normalized hypergraph. Each edge is sorted and the edge list is
    /// ordered lexicographically.
    pub fn build<E, I>(k: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("uniformity k must be >= 2, got {k}")));
        }
        if n < 1 {
            return Err(Error::InvalidParameter("a hypergraph needs at least one vertex".into()));
        }
        let mut normalized = Vec::new();
        for e in edges {
            let mut e = e.as_ref().to_vec();
            e.sort_unstable();
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            let before = e.len();
            e.dedup();
            if before != k || e.len() != k {
                return Err(Error::NonUniformEdge { edge: e, k });
            }
            normalized.push(e);
        }
        normalized.sort();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].clone()));
        }
        Ok(Hypergraph { k, n, edges: normalized, derived: OnceLock::new() })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    pub fn edge_index(&self, edge: &[usize]) -> Option<usize> {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).ok()
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        self.edge_index(edge).is_some()
    }

    fn derived(&self) -> &Derived {
        self.derived.get_or_init(|| {
            let stats = VertexStats::from_edges(self.n, &self.edges);
            let mut incidence = vec![Vec::new(); self.n];
            for (i, e) in self.edges.iter().enumerate() {
                for &v in e {
                    incidence[v].push(i);
                }
            }
            Derived { stats, incidence }
        })
    }

    pub fn stats(&self) -> &VertexStats {
        &self.derived().stats
    }

    pub fn degree(&self, v: usize) -> usize {
        self.stats().degree[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.stats().degree
    }

    /// Indices of the edges containing `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.derived().incidence[v]
    }

    /// Connectivity of the vertex/edge incidence graph. A lone vertex is
    /// connected; isolated vertices next to other structure are not.
    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(Option::is_some)
    }

    /// Every pair of edges meets in at most one vertex.
    pub fn is_linear(&self) -> bool {
        let m = self.edges.len();
        (0..m).all(|i| (i + 1..m).all(|j| intersection_size(&self.edges[i], &self.edges[j]) <= 1))
    }

    /// Connected and Berge-acyclic. For a connected k-uniform hypergraph the
    /// incidence graph is a tree exactly when `n = m(k-1) + 1`.
    pub fn is_supertree(&self) -> bool {
        self.n == self.edges.len() * (self.k - 1) + 1 && self.is_connected()
    }

    /// Each edge holds at most two non-pendant vertices; for supertrees this is
    /// the k-th power of an ordinary tree.
    pub fn is_power_hypergraph(&self) -> bool {
        let deg = self.degrees();
        self.edges.iter().all(|e| e.iter().filter(|&&v| deg[v] >= 2).count() <= 2)
    }

    /// Breadth-first distances (in edges) from `source`; `None` if unreachable.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        self.multi_source_distances(std::iter::once(source))
    }

    fn multi_source_distances(&self, sources: impl IntoIterator<Item = usize>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut edge_seen = vec![false; self.edges.len()];
        let mut queue = VecDeque::new();
        for s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap_or(0);
            for &ei in self.incident_edges(v) {
                if std::mem::replace(&mut edge_seen[ei], true) {
                    continue;
                }
                for &w in &self.edges[ei] {
                    if dist[w].is_none() {
                        dist[w] = Some(dv + 1);
                        queue.push_back(w);
                    }
                }
            }
        }
        dist
    }

    /// Minimum number of edges on a walk from any vertex of `x` to any vertex
    /// of `y`.
    pub fn distance(&self, x: &[usize], y: &[usize]) -> Result<usize> {
        if x.is_empty() || y.is_empty() {
            return Err(Error::InvalidParameter("distance needs nonempty vertex sets".into()));
        }
        for &v in x.iter().chain(y) {
            self.check_vertex(v)?;
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let dist = self.multi_source_distances(x.iter().copied());
        y.iter().filter_map(|&v| dist[v]).min().ok_or(Error::Disconnected)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Diameter in the edge-count metric with a witnessing loose path. Among
    /// all shortest paths realising the diameter, the one with the
    /// lexicographically smallest vertex sequence is returned.
    pub fn diameter_and_diametral_path(&self) -> Result<(usize, PathTrace)> {
        if self.edges.is_empty() {
            return Err(Error::InvalidParameter("diameter needs at least one edge".into()));
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let dist: Vec<Vec<usize>> = (0..self.n)
            .map(|v| self.distances_from(v).into_iter().map(|d| d.unwrap_or(usize::MAX)).collect())
            .collect();
        let diameter = dist.iter().flat_map(|row| row.iter().copied()).max().unwrap_or(0);

        let start = (0..self.n).find(|&v| dist[v].contains(&diameter)).expect("some vertex attains the diameter");
        let targets: Vec<usize> = (0..self.n).filter(|&y| dist[start][y] == diameter).collect();

        let mut vertices = vec![start];
        let mut edges = Vec::with_capacity(diameter);
        let mut current = start;
        for step in 1..=diameter {
            let remaining = diameter - step;
            let (next, via) = self
                .neighbours(current)
                .filter(|&(w, _)| dist[start][w] == step)
                .filter(|&(w, _)| targets.iter().any(|&y| dist[w][y] == remaining))
                .min()
                .expect("a shortest path continues towards some target");
            vertices.push(next);
            edges.push(via);
            current = next;
        }
        Ok((diameter, PathTrace { vertices, edges }))
    }

    /// A shortest path from `from` to `to`, choosing the smallest vertex label
    /// at every step.
    pub fn shortest_path(&self, from: usize, to: usize) -> Result<PathTrace> {
        self.check_vertex(from)?;
        self.check_vertex(to)?;
        let dist = self.distances_from(to);
        let Some(len) = dist[from] else {
            return Err(Error::Disconnected);
        };
        let mut vertices = vec![from];
        let mut edges = Vec::with_capacity(len);
        let mut current = from;
        for remaining in (0..len).rev() {
            let (next, via) = self
                .neighbours(current)
                .filter(|&(w, _)| dist[w] == Some(remaining))
                .min()
                .expect("distance decreases along some neighbour");
            vertices.push(next);
            edges.push(via);
            current = next;
        }
        Ok(PathTrace { vertices, edges })
    }

    /// Neighbours of `v` paired with the smallest edge index joining them.
    fn neighbours(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let mut best: Vec<(usize, usize)> = Vec::new();
        for &ei in self.incident_edges(v) {
            for &w in &self.edges[ei] {
                if w == v {
                    continue;
                }
                match best.iter_mut().find(|(x, _)| *x == w) {
                    Some(slot) => slot.1 = slot.1.min(ei),
                    None => best.push((w, ei)),
                }
            }
        }
        best.into_iter()
    }

    pub fn classify_edges(&self) -> Vec<EdgeKind> {
        let deg = self.degrees();
        self.edges
            .iter()
            .map(|e| match e.iter().filter(|&&v| deg[v] >= 2).count() {
                0 | 1 => EdgeKind::Pendant,
                2 => EdgeKind::Other,
                _ => EdgeKind::Branching,
            })
            .collect()
    }

    /// Removes all pendant edges at once and tests whether the rest is a loose
    /// path. An empty remainder counts as a path of length zero.
    pub fn is_caterpillar(&self) -> Result<bool> {
        if !self.is_supertree() {
            return Err(Error::NotASupertree);
        }
        let kinds = self.classify_edges();
        let kept: Vec<&Vec<usize>> =
            self.edges.iter().zip(&kinds).filter(|(_, &kind)| kind != EdgeKind::Pendant).map(|(e, _)| e).collect();
        let mut rest_degree = vec![0usize; self.n];
        for e in &kept {
            for &v in e.iter() {
                rest_degree[v] += 1;
            }
        }
        // Remainder of a supertree is still connected and acyclic; it is a
        // loose path iff no vertex joins three edges and no edge touches more
        // than two others.
        Ok(rest_degree.iter().all(|&d| d <= 2)
            && kept.iter().all(|e| e.iter().filter(|&&v| rest_degree[v] == 2).count() <= 2))
    }

    /// Number of vertices of degree at least two.
    pub fn count_non_pendant(&self) -> usize {
        self.degrees().iter().filter(|&&d| d >= 2).count()
    }

    pub fn path_kind(&self, path: &PathTrace) -> PathKind {
        if !path.is_empty() && !path.is_loose_path_in(self) {
            return PathKind::Neither;
        }
        let Some((&first, &last)) = path.vertices.first().zip(path.vertices.last()) else {
            return PathKind::Neither;
        };
        let deg = self.degrees();
        let mut path_degree = std::collections::BTreeMap::new();
        for &ei in &path.edges {
            for &w in &self.edges[ei] {
                *path_degree.entry(w).or_insert(0usize) += 1;
            }
        }
        let interior_clean = path_degree.iter().filter(|(&w, _)| w != first && w != last).all(|(&w, &pd)| deg[w] == pd);
        if deg[first] >= 3 && deg[last] >= 3 && interior_clean {
            PathKind::Internal
        } else if deg[first] >= 3
            && interior_clean
            && last != first
            && deg[last] == path_degree.get(&last).copied().unwrap_or(0)
        {
            PathKind::Pendant
        } else {
            PathKind::Neither
        }
    }

    /// Applies `perm` (old label -> new label) to every vertex.
    pub fn relabel(&self, perm: &[usize]) -> Result<Hypergraph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!("permutation has length {}, expected {}", perm.len(), self.n)));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("relabeling is not a permutation".into()));
            }
        }
        Hypergraph::build(self.k, self.n, self.edges.iter().map(|e| e.iter().map(|&v| perm[v]).collect::<Vec<_>>()))
    }

    pub fn to_file(&self) -> HypergraphFile {
        HypergraphFile { format: Some(FORMAT_VERSION), k: self.k, n: self.n, edges: self.edges.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("hypergraph serializes")
    }

    pub fn from_json(s: &str) -> Result<Hypergraph> {
        let file: HypergraphFile = serde_json::from_str(s)?;
        file.into_hypergraph()
    }
}

/// On-disk form: `{"format": 1, "k": .., "n": .., "edges": [[..], ..]}`.
/// `format` is optional on input.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct HypergraphFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<u32>,
    pub k: usize,
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl HypergraphFile {
    pub fn into_hypergraph(self) -> Result<Hypergraph> {
        match self.format {
            Some(v) if v != FORMAT_VERSION => Err(Error::UnsupportedFormat(v)),
            _ => Hypergraph::build(self.k, self.n, self.edges),
        }
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hash for Hypergraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.k.hash(state);
        self.n.hash(state);
        self.edges.hash(state);
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph").field("k", &self.k).field("n", &self.n).field("edges", &self.edges).finish()
    }
}
