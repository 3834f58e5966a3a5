//! The A_α tensor of a uniform hypergraph and its spectral radius.
//!
//! `A_α = α·D + (1 - α)·A`, where `A` is the adjacency tensor with entries
//! `1/(k-1)!` on edges and `D` the diagonal degree tensor. Applied to a vector:
//!
//! ```text
//! (A_α x)_v = α·d_v·x_v^(k-1) + (1 - α)·Σ_{e ∋ v} Π_{w ∈ e, w ≠ v} x_w
//! ```
//!
//! The spectral radius of a connected hypergraph is found by shifted power
//! iteration `x ← (A_α x + c·x^[k-1])^[1/(k-1)]` with k-norm normalization,
//! stopping once the Collatz–Wielandt interval
//! `[min_v (A_α x)_v / x_v^(k-1), max_v ...]` is narrower than the tolerance.
//! The interval is a certified enclosure of ρ_α for any positive `x`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Below this value `x_e / x_v` is recomputed directly instead of divided out.
const TINY: f64 = 1e-150;
/// Allowed deviation of `Σ x_v^k` from one in [`rayleigh`].
pub const NORM_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub alpha: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
    pub shift: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { alpha: 0.0, tolerance: 1e-10, max_iterations: 1_000_000, shift: 1.0 }
    }
}

impl SolverOptions {
    pub fn with_alpha(alpha: f64) -> Self {
        SolverOptions { alpha, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        if !self.shift.is_finite() || self.shift < 0.0 {
            return Err(Error::InvalidParameter("shift must be a finite nonnegative number".into()));
        }
        Ok(())
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

/// Positive vector normalized so that `Σ x_v^k = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Rescales a strictly positive vector to unit k-norm.
    pub fn normalized(mut values: Vec<f64>, k: usize) -> Result<Self> {
        check_positive(&values)?;
        let norm = k_norm(&values, k);
        values.iter_mut().for_each(|x| *x /= norm);
        Ok(WeightVector(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// `x_U = Π_{v ∈ U} x_v`.
    pub fn product(&self, set: &[usize]) -> f64 {
        set.iter().map(|&v| self.0[v]).product()
    }
}

impl std::ops::Index<usize> for WeightVector {
    type Output = f64;

    fn index(&self, v: usize) -> &f64 {
        &self.0[v]
    }
}

fn k_norm(x: &[f64], k: usize) -> f64 {
    x.iter().map(|v| v.powi(k as i32)).sum::<f64>().powf(1.0 / k as f64)
}

fn check_positive(x: &[f64]) -> Result<()> {
    match x.iter().position(|&v| !v.is_finite() || v <= 0.0) {
        Some(index) => Err(Error::NonPositiveInput { index, value: x[index] }),
        None => Ok(()),
    }
}

fn check_len(h: &Hypergraph, x: &[f64]) -> Result<()> {
    if x.len() == h.n() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("vector has length {}, expected {}", x.len(), h.n())))
    }
}

/// Flattened A_α operator; one product per edge per application.
struct Operator {
    k: usize,
    alpha: f64,
    degree: Vec<f64>,
    edges: Vec<usize>,
}

impl Operator {
    fn new(h: &Hypergraph, alpha: f64) -> Self {
        Operator {
            k: h.k(),
            alpha,
            degree: h.degrees().iter().map(|&d| d as f64).collect(),
            edges: h.edges().iter().flatten().copied().collect(),
        }
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        let k = self.k;
        let beta = 1.0 - self.alpha;
        for ((o, &xv), &d) in out.iter_mut().zip(x).zip(&self.degree) {
            *o = self.alpha * d * xv.powi(k as i32 - 1);
        }
        for e in self.edges.chunks_exact(k) {
            let full: f64 = e.iter().map(|&v| x[v]).product();
            for &v in e {
                let rest =
                    if x[v] < TINY { e.iter().filter(|&&w| w != v).map(|&w| x[w]).product() } else { full / x[v] };
                out[v] += beta * rest;
            }
        }
    }

    fn cw_bounds(&self, x: &[f64], ax: &[f64]) -> (f64, f64) {
        let mut low = f64::INFINITY;
        let mut high = f64::NEG_INFINITY;
        for (&a, &xv) in ax.iter().zip(x) {
            let r = a / xv.powi(self.k as i32 - 1);
            low = low.min(r);
            high = high.max(r);
        }
        (low, high)
    }
}

/// Componentwise `A_α x` for strictly positive `x`.
pub fn apply_a_alpha(h: &Hypergraph, alpha: f64, x: &[f64]) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    check_len(h, x)?;
    check_positive(x)?;
    let mut out = vec![0.0; x.len()];
    Operator::new(h, alpha).apply(x, &mut out);
    Ok(out)
}

/// `x^T A_α x = Σ_e (α Σ_{u ∈ e} x_u^k + (1 - α) k x_e)` for a nonnegative `x`
/// of unit k-norm. Never exceeds ρ_α.
pub fn rayleigh(h: &Hypergraph, alpha: f64, x: &[f64]) -> Result<f64> {
    check_alpha(alpha)?;
    check_len(h, x)?;
    if let Some(index) = x.iter().position(|&v| !v.is_finite() || v < 0.0) {
        return Err(Error::NonPositiveInput { index, value: x[index] });
    }
    let k = h.k();
    let norm_k: f64 = x.iter().map(|v| v.powi(k as i32)).sum();
    if (norm_k - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm: norm_k.powf(1.0 / k as f64) });
    }
    Ok(h.edges()
        .iter()
        .map(|e| {
            let diag: f64 = e.iter().map(|&u| x[u].powi(k as i32)).sum();
            let prod: f64 = e.iter().map(|&u| x[u]).product();
            alpha * diag + (1.0 - alpha) * k as f64 * prod
        })
        .sum())
}

/// Collatz–Wielandt enclosure `(min_v, max_v)` of `(A_α x)_v / x_v^(k-1)`.
pub fn cw_bounds(h: &Hypergraph, alpha: f64, x: &[f64]) -> Result<(f64, f64)> {
    let ax = apply_a_alpha(h, alpha, x)?;
    Ok(Operator::new(h, alpha).cw_bounds(x, &ax))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    /// Midpoint of the final Collatz–Wielandt interval.
    pub rho: f64,
    pub low: f64,
    pub high: f64,
    pub perron: WeightVector,
    pub iterations: usize,
    /// `‖A_α x - ρ x^[k-1]‖_∞` for the reported vector.
    pub residual: f64,
    pub cw_gap: f64,
}

impl SpectralResult {
    pub fn interval(&self) -> Interval {
        Interval { rho: self.rho, low: self.low, high: self.high }
    }
}

/// Certified enclosure `low <= ρ <= high` with its midpoint.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub rho: f64,
    pub low: f64,
    pub high: f64,
}

impl Interval {
    pub fn compare(&self, other: &Interval, margin: f64) -> Comparison {
        if self.low > other.high + margin {
            Comparison::Greater
        } else if other.low > self.high + margin {
            Comparison::Less
        } else {
            Comparison::Inconclusive
        }
    }
}

pub fn spectral_radius(h: &Hypergraph, opts: &SolverOptions) -> Result<SpectralResult> {
    opts.validate()?;
    if h.edge_count() == 0 {
        return Err(Error::InvalidParameter("spectral radius needs at least one edge".into()));
    }
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let k = h.k();
    let n = h.n();
    let op = Operator::new(h, opts.alpha);
    let mut x = vec![(n as f64).powf(-1.0 / k as f64); n];
    let mut ax = vec![0.0; n];
    let mut best = (f64::NEG_INFINITY, f64::INFINITY);

    for iteration in 1..=opts.max_iterations {
        op.apply(&x, &mut ax);
        let (low, high) = op.cw_bounds(&x, &ax);
        best = (best.0.max(low), best.1.min(high));
        if high - low <= opts.tolerance {
            let rho = 0.5 * (low + high);
            let residual =
                ax.iter().zip(&x).map(|(&a, &xv)| (a - rho * xv.powi(k as i32 - 1)).abs()).fold(0.0, f64::max);
            return Ok(SpectralResult {
                rho,
                low,
                high,
                perron: WeightVector(x),
                iterations: iteration,
                residual,
                cw_gap: high - low,
            });
        }
        for (xv, &a) in x.iter_mut().zip(&ax) {
            let y = a + opts.shift * xv.powi(k as i32 - 1);
            *xv = y.powf(1.0 / (k - 1) as f64);
        }
        let norm = k_norm(&x, k);
        x.iter_mut().for_each(|v| *v /= norm);
    }
    Err(Error::MaxIterationsExceeded { iterations: opts.max_iterations, low: best.0, high: best.1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    Less,
    Greater,
    Inconclusive,
}

/// Certified comparison of ρ_α(h1) and ρ_α(h2): `Greater` only when the
/// lower bound for `h1` exceeds the upper bound for `h2` by more than `margin`.
pub fn compare_rho(h1: &Hypergraph, h2: &Hypergraph, opts: &SolverOptions, margin: f64) -> Result<Comparison> {
    let a = spectral_radius(h1, opts)?;
    let b = spectral_radius(h2, opts)?;
    Ok(a.interval().compare(&b.interval(), margin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn edge() -> Hypergraph {
        families::loose_path(3, 1).unwrap()
    }

    #[test]
    fn apply_on_single_edge() {
        assert_eq!(apply_a_alpha(&edge(), 0.0, &[1.0; 3]).unwrap(), vec![1.0; 3]);
        assert_eq!(apply_a_alpha(&edge(), 0.5, &[1.0; 3]).unwrap(), vec![1.0; 3]);
        let s = families::star(3, 2).unwrap();
        assert_eq!(apply_a_alpha(&s, 0.0, &[1.0; 5]).unwrap(), vec![2.0, 1.0, 1.0, 1.0, 1.0]);
        assert!(matches!(
            apply_a_alpha(&s, 0.0, &[1.0, 0.0, 1.0, 1.0, 1.0]),
            Err(Error::NonPositiveInput { index: 1, .. })
        ));
    }

    #[test]
    fn tiny_entries_use_direct_products() {
        let x = [1e-200, 0.5, 0.25];
        let out = apply_a_alpha(&edge(), 0.0, &x).unwrap();
        assert_eq!(out[0], 0.125);
        assert!(out[1] > 0.0);
    }

    #[test]
    fn rayleigh_values() {
        let u = 3f64.powf(-1.0 / 3.0);
        for alpha in [0.0, 0.3, 0.9] {
            assert!((rayleigh(&edge(), alpha, &[u; 3]).unwrap() - 1.0).abs() < 1e-12);
        }
        let s = families::star(3, 2).unwrap();
        let x = [5f64.powf(-1.0 / 3.0); 5];
        assert!((rayleigh(&s, 0.0, &x).unwrap() - 1.2).abs() < 1e-12);
        assert!(matches!(rayleigh(&s, 0.0, &[1.0; 5]), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn cw_bounds_examples() {
        assert_eq!(cw_bounds(&edge(), 0.0, &[1.0; 3]).unwrap(), (1.0, 1.0));
        let s = families::star(3, 2).unwrap();
        assert_eq!(cw_bounds(&s, 0.0, &[1.0; 5]).unwrap(), (1.0, 2.0));
    }

    #[test]
    fn single_edge_radius_is_one() {
        for alpha in [0.0, 0.25, 0.5] {
            let r = spectral_radius(&edge(), &SolverOptions::with_alpha(alpha)).unwrap();
            assert!((r.rho - 1.0).abs() < 1e-12);
            assert_eq!(r.iterations, 1);
        }
    }

    #[test]
    fn star_radius() {
        for m in 2..=4 {
            let r = spectral_radius(&families::star(3, m).unwrap(), &SolverOptions::default()).unwrap();
            assert!((r.rho - (m as f64).cbrt()).abs() < 1e-9, "m = {m}: {}", r.rho);
            assert!(r.residual <= 1e-9 && r.cw_gap <= 1e-10);
        }
    }

    #[test]
    fn solver_errors() {
        let split = Hypergraph::build(3, 6, [[0, 1, 2], [3, 4, 5]]).unwrap();
        assert!(matches!(spectral_radius(&split, &SolverOptions::default()), Err(Error::Disconnected)));
        assert!(matches!(spectral_radius(&edge(), &SolverOptions::with_alpha(1.0)), Err(Error::AlphaOutOfRange(_))));
        let opts = SolverOptions { max_iterations: 2, ..SolverOptions::default() };
        let p = families::loose_path(3, 4).unwrap();
        match spectral_radius(&p, &opts) {
            Err(Error::MaxIterationsExceeded { low, high, .. }) => assert!(low < high),
            other => panic!("expected MaxIterationsExceeded, got {other:?}"),
        }
    }

    #[test]
    fn comparisons() {
        let opts = SolverOptions::default();
        let s = families::star(3, 5).unwrap();
        let ds = families::double_star(3, 1, 3).unwrap();
        assert_eq!(compare_rho(&s, &ds, &opts, 1e-8).unwrap(), Comparison::Greater);
        assert_eq!(compare_rho(&ds, &s, &opts, 1e-8).unwrap(), Comparison::Less);
        assert_eq!(compare_rho(&s, &s, &opts, 1e-8).unwrap(), Comparison::Inconclusive);
        let half = SolverOptions::with_alpha(0.5);
        let ds22 = families::double_star(3, 2, 2).unwrap();
        assert_eq!(compare_rho(&ds, &ds22, &half, 1e-8).unwrap(), Comparison::Greater);
    }
}
