mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use supertree_spectra::enumerate::enumerate_supertrees;
use supertree_spectra::families;
use supertree_spectra::spectral::{apply_a_alpha, rayleigh, spectral_radius};
use supertree_spectra::{Hypergraph, SolverOptions};

use common::{double_star_edges, graph_spectral_radius, path_edges, star_edges, supertree_from_choices};

const ALPHAS: [f64; 4] = [0.0, 0.25, 0.5, 0.75];

#[test]
fn residual_and_gap_on_small_classes() {
    for m in 1..=5 {
        for c in enumerate_supertrees(3, m).unwrap() {
            for alpha in ALPHAS {
                let r = spectral_radius(&c.graph, &SolverOptions::with_alpha(alpha)).unwrap();
                assert!(r.residual <= 1e-9, "residual {}", r.residual);
                assert!(r.cw_gap <= 1e-10);
                assert!(r.low <= r.rho && r.rho <= r.high);
                let x = r.perron.values();
                assert!(x.iter().all(|&v| v > 0.0));
                let ax = apply_a_alpha(&c.graph, alpha, x).unwrap();
                for (a, v) in ax.iter().zip(x) {
                    assert!((a - r.rho * v * v).abs() <= 1e-9);
                }
            }
        }
    }
}

#[test]
fn rayleigh_never_exceeds_rho() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let graphs = [
        families::loose_path(3, 4).unwrap(),
        families::star(3, 4).unwrap(),
        families::h1(3, 7, 4).unwrap(),
        families::double_star(4, 2, 3).unwrap(),
    ];
    for g in &graphs {
        for alpha in ALPHAS {
            let rho = spectral_radius(g, &SolverOptions::with_alpha(alpha)).unwrap().rho;
            for _ in 0..100 {
                let raw: Vec<f64> = (0..g.n()).map(|_| rng.random_range(0.01..1.0)).collect();
                let norm = raw.iter().map(|v: &f64| v.powi(g.k() as i32)).sum::<f64>().powf(1.0 / g.k() as f64);
                let x: Vec<f64> = raw.iter().map(|v| v / norm).collect();
                assert!(rayleigh(g, alpha, &x).unwrap() <= rho + 1e-9);
            }
        }
    }
}

#[test]
fn rayleigh_at_perron_vector_is_rho() {
    let g = families::t_tree(3, 1, 1, 2, 2).unwrap();
    let r = spectral_radius(&g, &SolverOptions::with_alpha(0.3)).unwrap();
    assert!((rayleigh(&g, 0.3, r.perron.values()).unwrap() - r.rho).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn permutation_invariance(
        choices in prop::collection::vec(any::<usize>(), 1..6),
        seed in any::<u64>(),
        ai in 0usize..4,
    ) {
        let h = supertree_from_choices(3, &choices);
        let mut perm: Vec<usize> = (0..h.n()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let g = h.relabel(&perm).unwrap();
        let opts = SolverOptions::with_alpha(ALPHAS[ai]);
        let a = spectral_radius(&h, &opts).unwrap();
        let b = spectral_radius(&g, &opts).unwrap();
        prop_assert!((a.rho - b.rho).abs() <= 1e-12 + 2.0 * opts.tolerance);
        for (v, &w) in perm.iter().enumerate() {
            prop_assert!((a.perron[v] - b.perron[w]).abs() < 1e-6);
        }
    }
}

/// Derivative in alpha is `Σ_e (Σ_{u∈e} x_u^k - k x_e) >= 0` by AM-GM, so
/// ρ_α is nondecreasing; the check is still numerical.
#[test]
fn rho_nondecreasing_in_alpha() {
    for c in enumerate_supertrees(3, 5).unwrap() {
        let rhos: Vec<f64> = (0..10)
            .map(|i| spectral_radius(&c.graph, &SolverOptions::with_alpha(i as f64 / 10.0)).unwrap().rho)
            .collect();
        assert!(rhos.windows(2).all(|w| w[1] >= w[0] - 1e-9), "{rhos:?}");
    }
}

fn check_power(k: usize, (n, edges): (usize, Vec<(usize, usize)>), h: &Hypergraph) {
    let expected = graph_spectral_radius(n, &edges).powf(2.0 / k as f64);
    let got = spectral_radius(h, &SolverOptions::default()).unwrap().rho;
    assert!((got - expected).abs() <= 1e-6, "k={k} n={n}: {got} vs {expected}");
    let power = families::power_hypergraph(&edges, k).unwrap();
    assert_eq!(power.canonical_key().unwrap(), h.canonical_key().unwrap());
}

#[test]
fn power_hypergraph_oracle() {
    for k in [3, 4] {
        for d in 1..=8 {
            check_power(k, path_edges(d), &families::loose_path(k, d).unwrap());
        }
        for m in 1..=8 {
            check_power(k, star_edges(m), &families::star(k, m).unwrap());
        }
        for s in 1..=7 {
            for a in 0..=s {
                check_power(k, double_star_edges(a, s - a), &families::double_star(k, a, s - a).unwrap());
            }
        }
    }
}

#[test]
fn star_anchor() {
    let rho = spectral_radius(&families::star(3, 4).unwrap(), &SolverOptions::default()).unwrap().rho;
    assert!((rho - 4f64.cbrt()).abs() <= 1e-6);
    assert!((rho - 1.587401).abs() <= 1e-6);
}
