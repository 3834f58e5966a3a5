//! Isomorphism-invariant encoding of supertrees.
//!
//! A supertree's vertex/edge incidence graph is a tree whose leaves are all
//! vertex nodes, so every leaf-to-leaf path has even length and the tree has a
//! single center. Rooting there, each node gets the AHU code
//! `tag '(' sorted child codes ')'` with tag `v` for vertices and `e` for
//! edges. The root's code is the key.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("keys are ASCII")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.as_str())
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s.bytes().all(|b| matches!(b, b'v' | b'e' | b'(' | b')')) {
            Ok(CanonicalKey(s.into_bytes()))
        } else {
            Err(serde::de::Error::custom("invalid canonical key"))
        }
    }
}

/// A key together with the representative relabeled in canonical order.
/// Isomorphic inputs produce identical `graph` values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    pub graph: Hypergraph,
}

struct IncidenceTree {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl IncidenceTree {
    fn new(h: &Hypergraph) -> Self {
        let n = h.n();
        let mut adj = vec![Vec::new(); n + h.edge_count()];
        for (i, e) in h.edges().iter().enumerate() {
            for &v in e {
                adj[v].push(n + i);
                adj[n + i].push(v);
            }
        }
        IncidenceTree { n, adj }
    }

    fn bfs(&self, source: usize) -> (Vec<usize>, Vec<usize>) {
        let mut dist = vec![usize::MAX; self.adj.len()];
        let mut parent = vec![usize::MAX; self.adj.len()];
        let mut queue = std::collections::VecDeque::from([source]);
        dist[source] = 0;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    fn center(&self) -> usize {
        let far = |dist: &[usize]| (0..dist.len()).max_by_key(|&i| (dist[i], std::cmp::Reverse(i))).unwrap();
        let (d0, _) = self.bfs(0);
        let a = far(&d0);
        let (da, parent) = self.bfs(a);
        let b = far(&da);
        let mut node = b;
        for _ in 0..da[b] / 2 {
            node = parent[node];
        }
        node
    }

    /// Post-order AHU codes for every node with the tree rooted at `root`,
    /// plus children lists sorted by code.
    fn codes(&self, root: usize) -> (Vec<Vec<u8>>, Vec<Vec<usize>>) {
        let size = self.adj.len();
        let mut parent = vec![usize::MAX; size];
        let mut order = Vec::with_capacity(size);
        let mut stack = vec![root];
        parent[root] = root;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    stack.push(w);
                }
            }
        }
        let mut codes: Vec<Vec<u8>> = vec![Vec::new(); size];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); size];
        for &u in order.iter().rev() {
            let mut kids: Vec<usize> = self.adj[u].iter().copied().filter(|&w| parent[w] == u && w != u).collect();
            kids.sort_by(|&a, &b| codes[a].cmp(&codes[b]));
            let mut code = Vec::with_capacity(2 + kids.iter().map(|&c| codes[c].len()).sum::<usize>());
            code.push(if u < self.n { b'v' } else { b'e' });
            code.push(b'(');
            for &c in &kids {
                code.extend_from_slice(&codes[c]);
            }
            code.push(b')');
            codes[u] = code;
            children[u] = kids;
        }
        (codes, children)
    }
}

fn check_supertree(h: &Hypergraph) -> Result<()> {
    if h.is_supertree() {
        Ok(())
    } else {
        Err(Error::NotASupertree)
    }
}

pub fn canonical_key(h: &Hypergraph) -> Result<CanonicalKey> {
    check_supertree(h)?;
    let tree = IncidenceTree::new(h);
    let root = tree.center();
    let (mut codes, _) = tree.codes(root);
    Ok(CanonicalKey(std::mem::take(&mut codes[root])))
}

/// Canonical key plus a relabeling in which vertices are numbered in preorder
/// of the code-sorted rooted incidence tree.
pub fn canonical_form(h: &Hypergraph) -> Result<CanonicalForm> {
    check_supertree(h)?;
    let tree = IncidenceTree::new(h);
    let root = tree.center();
    let (mut codes, children) = tree.codes(root);

    let mut perm = vec![usize::MAX; h.n()];
    let mut next = 0;
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        if u < h.n() {
            perm[u] = next;
            next += 1;
        }
        stack.extend(children[u].iter().rev());
    }
    let graph = h.relabel(&perm)?;
    Ok(CanonicalForm { key: CanonicalKey(std::mem::take(&mut codes[root])), graph })
}

impl Hypergraph {
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        canonical_key(self)
    }

    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        canonical_form(self)
    }
}
