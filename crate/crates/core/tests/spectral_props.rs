use std::f64::consts::PI;

use bn_spectral::graph::{derive_trial_seed, make_named, sample_gnp, GnpParams, NamedGraph};
use bn_spectral::spectral::{
    full_spectrum, full_spectrum_with, top_two, top_two_with, MethodChoice, SpectralConfig,
    SpectralMethod,
};
use proptest::prelude::*;

fn random_graph(n: usize, p: f64, seed: u64) -> bn_spectral::graph::Graph {
    sample_gnp(&GnpParams::new(n, p, seed).unwrap()).unwrap()
}

#[test]
fn frobenius_and_trace_identities() {
    for k in 0..100u64 {
        let n = 2 + (k as usize * 7) % 63;
        let p = [0.1, 0.3, 0.5, 0.7, 0.9][k as usize % 5];
        let g = random_graph(n, p, derive_trial_seed(11, k));
        let spectrum = full_spectrum_with(&g, &SpectralConfig::default()).unwrap();
        let sum: f64 = spectrum.values.iter().sum();
        let sum_sq: f64 = spectrum.values.iter().map(|x| x * x).sum();
        let two_e = 2.0 * g.edge_count() as f64;
        assert!(sum.abs() <= 1e-8, "trace {sum} (n={n})");
        assert!(
            (sum_sq - two_e).abs() <= 1e-6 * two_e.max(1.0),
            "Σλ² {sum_sq} vs {two_e}"
        );
        assert!(spectrum.values.windows(2).all(|w| w[0] >= w[1]));
        assert!(spectrum.max_residual <= 1e-9 * spectrum.values[0].max(1.0));
    }
}

#[test]
fn iterative_matches_dense_on_mid_sized_graphs() {
    let iterative = SpectralConfig {
        method: MethodChoice::Force(SpectralMethod::Iterative),
        ..SpectralConfig::default()
    };
    for k in 0..50u64 {
        let n = 64 + (k as usize * 37) % 193;
        let p = [0.05, 0.2, 0.5, 0.8][k as usize % 4];
        let g = random_graph(n, p, derive_trial_seed(77, k));
        let dense = full_spectrum(&g).unwrap();
        let it = top_two_with(&g, &iterative).unwrap();
        assert_eq!(it.method, SpectralMethod::Iterative);
        assert!(
            (it.lambda1 - dense[0]).abs() <= 1e-7,
            "n={n} p={p}: {} vs {}",
            it.lambda1,
            dense[0]
        );
        assert!(
            (it.lambda2 - dense[1]).abs() <= 1e-7,
            "n={n} p={p}: {} vs {}",
            it.lambda2,
            dense[1]
        );

        let auto = top_two(&g).unwrap();
        assert_eq!(auto.method, SpectralMethod::Dense);
        assert!((auto.lambda1 - dense[0]).abs() <= 1e-9);
        assert!((auto.lambda2 - dense[1]).abs() <= 1e-9);
    }
}

#[test]
fn iterative_route_on_disconnected_graph() {
    // Two copies of C7 plus isolated vertices: λ1 = λ2 = 2.
    let mut edges = Vec::new();
    for base in [0, 7] {
        for i in 0..7 {
            edges.push((base + i, base + (i + 1) % 7));
        }
    }
    let g = bn_spectral::graph::Graph::from_edges(80, edges).unwrap();
    let cfg = SpectralConfig {
        dense_limit: 10,
        ..SpectralConfig::default()
    };
    let s = top_two_with(&g, &cfg).unwrap();
    assert_eq!(s.method, SpectralMethod::Iterative);
    assert!(
        (s.lambda1 - 2.0).abs() < 1e-9 && (s.lambda2 - 2.0).abs() < 1e-9,
        "{s:?}"
    );
}

#[test]
fn closed_form_families() {
    for n in 2..=50usize {
        let k = top_two(&make_named(NamedGraph::Complete, n).unwrap()).unwrap();
        assert!((k.lambda1 - (n - 1) as f64).abs() < 1e-9);
        assert!((k.lambda2 + 1.0).abs() < 1e-9);

        let path = top_two(&make_named(NamedGraph::Path, n).unwrap()).unwrap();
        let m = (n + 1) as f64;
        assert!((path.lambda1 - 2.0 * (PI / m).cos()).abs() < 1e-9);
        assert!((path.lambda2 - 2.0 * (2.0 * PI / m).cos()).abs() < 1e-9);

        if n >= 3 {
            let c = top_two(&make_named(NamedGraph::Cycle, n).unwrap()).unwrap();
            assert!((c.lambda1 - 2.0).abs() < 1e-9);
            assert!((c.lambda2 - 2.0 * (2.0 * PI / n as f64).cos()).abs() < 1e-9);
        }
        for a in 1..n {
            let b = n - a;
            let s = top_two(&make_named(NamedGraph::CompleteBipartite(a, b), n).unwrap()).unwrap();
            assert!((s.lambda1 - ((a * b) as f64).sqrt()).abs() < 1e-9);
            let second = if n == 2 { -1.0 } else { 0.0 };
            assert!((s.lambda2 - second).abs() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn summary_invariants(n in 2usize..60, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let s = top_two(&g).unwrap();
        let nf = n as f64;
        prop_assert!(s.lambda1 >= s.lambda2);
        prop_assert!(s.lambda1 >= 2.0 * g.edge_count() as f64 / nf - 1e-9);
        prop_assert!(s.lambda1 <= nf - 1.0 + 1e-9);
        if g.edge_count() > 0 {
            prop_assert!(s.lambda1 >= 1.0 - 1e-9);
        }
        let tol = 1e-9 * s.lambda1.max(1.0);
        prop_assert!(s.residual1 <= tol && s.residual2 <= tol);
    }
}
