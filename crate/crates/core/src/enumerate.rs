//! Generation of k-uniform supertrees with `m` edges up to isomorphism.
//!
//! Classes are grown one edge at a time from a single edge: every vertex of
//! every class at level `j` receives a new edge made of that vertex plus
//! `k - 1` fresh ones. Each level is deduplicated by [`CanonicalKey`] and the
//! canonical representative is kept, so the output is independent of the
//! order in which attachments are tried. A supertree with `m` edges has
//! `n = m(k - 1) + 1` vertices; supertrees with `n` vertices are obtained by
//! taking `m = (n - 1) / (k - 1)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::CanonicalKey;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Default cap on the number of classes held at any level.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct SupertreeClass {
    pub key: CanonicalKey,
    pub graph: Hypergraph,
}

/// Classes of k-uniform supertrees with `m` edges, sorted by key.
pub fn enumerate_supertrees(k: usize, m: usize) -> Result<Vec<SupertreeClass>> {
    enumerate_supertrees_with_budget(k, m, DEFAULT_BUDGET)
}

pub fn enumerate_supertrees_with_budget(k: usize, m: usize, budget: usize) -> Result<Vec<SupertreeClass>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("uniformity k must be >= 2, got {k}")));
    }
    if m < 1 {
        return Err(Error::InvalidParameter("enumeration needs m >= 1".into()));
    }
    let seed = Hypergraph::build(k, k, [(0..k).collect::<Vec<_>>()])?.canonical_form()?;
    let mut level: BTreeMap<CanonicalKey, Hypergraph> = BTreeMap::from([(seed.key, seed.graph)]);
    for edges in 2..=m {
        let children: Vec<(CanonicalKey, Hypergraph)> =
            level.par_iter().flat_map_iter(|(_, g)| (0..g.n()).map(move |v| grow(g, v))).collect::<Result<_>>()?;
        let mut next = BTreeMap::new();
        for (key, graph) in children {
            debug_assert_eq!(graph.n(), edges * (k - 1) + 1);
            next.entry(key).or_insert(graph);
            if next.len() > budget {
                return Err(Error::BudgetExceeded(budget));
            }
        }
        level = next;
    }
    if level.len() > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    Ok(level.into_iter().map(|(key, graph)| SupertreeClass { key, graph }).collect())
}

fn grow(g: &Hypergraph, v: usize) -> Result<(CanonicalKey, Hypergraph)> {
    let k = g.k();
    let n = g.n();
    let mut e = vec![v];
    e.extend(n..n + k - 1);
    let edges = g.edges().iter().cloned().chain(std::iter::once(e));
    let child = Hypergraph::build(k, n + k - 1, edges)?;
    assert_eq!(child.n(), child.edge_count() * (k - 1) + 1);
    let form = child.canonical_form()?;
    Ok((form.key, form.graph))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Caterpillar {
    Yes,
    No,
    #[default]
    Any,
}

/// Conjunction of optional structural predicates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFilter {
    pub diameter: Option<usize>,
    pub caterpillar: Caterpillar,
    pub non_pendant: Option<usize>,
}

impl ClassFilter {
    pub fn any() -> Self {
        ClassFilter::default()
    }

    /// `C(m, d)` when applied to `m`-edge classes.
    pub fn caterpillars_with_diameter(d: usize) -> Self {
        ClassFilter { diameter: Some(d), caterpillar: Caterpillar::Yes, non_pendant: None }
    }

    /// `NC(m, d)` when applied to `m`-edge classes.
    pub fn non_caterpillars_with_diameter(d: usize) -> Self {
        ClassFilter { diameter: Some(d), caterpillar: Caterpillar::No, non_pendant: None }
    }

    /// `NC(m)`.
    pub fn non_caterpillars() -> Self {
        ClassFilter { caterpillar: Caterpillar::No, ..Self::default() }
    }

    /// `𝕋_i`: supertrees with exactly `i` non-pendant vertices.
    pub fn with_non_pendant(i: usize) -> Self {
        ClassFilter { non_pendant: Some(i), ..Self::default() }
    }

    pub fn and(self, other: ClassFilter) -> ClassFilter {
        let caterpillar = match (self.caterpillar, other.caterpillar) {
            (Caterpillar::Any, c) | (c, Caterpillar::Any) => c,
            (a, b) if a == b => a,
            // Contradictory requests match nothing; encode as an impossible
            // diameter.
            _ => return ClassFilter { diameter: Some(usize::MAX), ..self },
        };
        let pick = |a: Option<usize>, b: Option<usize>| match (a, b) {
            (Some(x), Some(y)) if x != y => Some(usize::MAX),
            (x, y) => x.or(y),
        };
        ClassFilter {
            diameter: pick(self.diameter, other.diameter),
            caterpillar,
            non_pendant: pick(self.non_pendant, other.non_pendant),
        }
    }

    pub fn matches(&self, g: &Hypergraph) -> bool {
        if !g.is_connected() {
            return false;
        }
        if let Some(i) = self.non_pendant {
            if g.count_non_pendant() != i {
                return false;
            }
        }
        if let Some(d) = self.diameter {
            match g.diameter_and_diametral_path() {
                Ok((x, _)) if x == d => {}
                _ => return false,
            }
        }
        match self.caterpillar {
            Caterpillar::Any => true,
            Caterpillar::Yes => g.is_caterpillar().unwrap_or(false),
            Caterpillar::No => g.is_caterpillar().map(|c| !c).unwrap_or(false),
        }
    }
}

/// Stable-order sublist of `classes` matching `filter`.
pub fn filter_classes(classes: &[SupertreeClass], filter: &ClassFilter) -> Vec<SupertreeClass> {
    classes.iter().filter(|c| filter.matches(&c.graph)).cloned().collect()
}

/// Structural summary used by index files and rank tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassStats {
    pub key: CanonicalKey,
    pub n: usize,
    pub m: usize,
    pub diameter: usize,
    pub caterpillar: bool,
    pub non_pendant: usize,
    pub power: bool,
    pub degrees: Vec<usize>,
}

impl ClassStats {
    pub fn of(class: &SupertreeClass) -> ClassStats {
        let g = &class.graph;
        let mut degrees = g.degrees().to_vec();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        ClassStats {
            key: class.key.clone(),
            n: g.n(),
            m: g.edge_count(),
            diameter: g.diameter_and_diametral_path().map(|(d, _)| d).unwrap_or(0),
            caterpillar: g.is_caterpillar().unwrap_or(false),
            non_pendant: g.count_non_pendant(),
            power: g.is_power_hypergraph(),
            degrees,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_supertrees(3, 1).unwrap().len(), 1);
        assert_eq!(enumerate_supertrees(3, 2).unwrap().len(), 1);
        let three = enumerate_supertrees(3, 3).unwrap();
        assert_eq!(three.len(), 2);
        let keys: Vec<_> = three.iter().map(|c| c.key.clone()).collect();
        assert!(keys.contains(&families::star(3, 3).unwrap().canonical_key().unwrap()));
        assert!(keys.contains(&families::loose_path(3, 3).unwrap().canonical_key().unwrap()));
    }

    #[test]
    fn output_is_sorted_and_valid() {
        let classes = enumerate_supertrees(3, 5).unwrap();
        assert!(classes.windows(2).all(|w| w[0].key < w[1].key));
        for c in &classes {
            assert!(c.graph.is_supertree());
            assert_eq!(c.graph.n(), 11);
            assert_eq!(c.graph.canonical_key().unwrap(), c.key);
        }
    }

    #[test]
    fn budget() {
        assert!(matches!(enumerate_supertrees_with_budget(3, 5, 2), Err(Error::BudgetExceeded(2))));
    }

    #[test]
    fn filters() {
        let six = enumerate_supertrees(3, 6).unwrap();
        let nc = filter_classes(&six, &ClassFilter::non_caterpillars_with_diameter(4));
        let h1 = families::h1(3, 6, 4).unwrap().canonical_key().unwrap();
        let h2 = families::h2(3, 6, 4).unwrap().canonical_key().unwrap();
        assert!(nc.iter().any(|c| c.key == h1));
        assert!(nc.iter().any(|c| c.key == h2));

        let five = enumerate_supertrees(3, 5).unwrap();
        assert!(filter_classes(&five, &ClassFilter::non_caterpillars()).is_empty());

        for m in 1..=6 {
            let classes = enumerate_supertrees(3, m).unwrap();
            let stars = filter_classes(&classes, &ClassFilter::with_non_pendant(1));
            let expected = if m == 1 { 0 } else { 1 };
            assert_eq!(stars.len(), expected, "m = {m}");
            if m > 1 {
                assert_eq!(stars[0].key, families::star(3, m).unwrap().canonical_key().unwrap());
            }
        }
    }

    #[test]
    fn caterpillar_partition_by_diameter() {
        let classes = enumerate_supertrees(3, 7).unwrap();
        for d in 1..=7 {
            let all = filter_classes(&classes, &ClassFilter { diameter: Some(d), ..ClassFilter::any() });
            let c = filter_classes(&classes, &ClassFilter::caterpillars_with_diameter(d));
            let nc = filter_classes(&classes, &ClassFilter::non_caterpillars_with_diameter(d));
            assert_eq!(all.len(), c.len() + nc.len());
            assert!(c.iter().all(|x| nc.iter().all(|y| x.key != y.key)));
        }
    }

    #[test]
    fn filter_conjunction() {
        let f = ClassFilter::with_non_pendant(2).and(ClassFilter::caterpillars_with_diameter(3));
        assert_eq!(f.non_pendant, Some(2));
        assert_eq!(f.diameter, Some(3));
        let contradiction = ClassFilter::non_caterpillars().and(ClassFilter::caterpillars_with_diameter(3));
        let classes = enumerate_supertrees(3, 6).unwrap();
        assert!(filter_classes(&classes, &contradiction).is_empty());
    }
}
