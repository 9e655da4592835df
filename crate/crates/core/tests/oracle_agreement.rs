//! The fast paths checked against the slow reference computations in
//! `aalpha-oracle`.

use aalpha_core::enumerate::{enumerate_strong_digraphs, mask_is_strong, slot_count};
use aalpha_core::spectral::{perron_root_dense, signless_laplacian_matrix, spectral_radius, PerronOptions};
use aalpha_core::{build_alpha_matrix, Digraph};
use aalpha_oracle as oracle;

fn arcs(g: &Digraph) -> Vec<(usize, usize)> {
    g.arcs().collect()
}

#[test]
fn tarjan_matches_boolean_closure_up_to_four_vertices() {
    for n in 1..=4 {
        for arc_list in oracle::all_digraphs(n) {
            let g = Digraph::new(n, arc_list.iter().copied()).unwrap();
            assert_eq!(
                g.is_strongly_connected(),
                oracle::strongly_connected_by_closure(n, &arc_list),
                "{arc_list:?}"
            );
        }
    }
}

#[test]
fn bitmask_filter_matches_bfs() {
    for n in 1..=4 {
        let all = oracle::all_digraphs(n);
        assert_eq!(all.len(), 1 << slot_count(n));
        let strong: usize = all
            .iter()
            .filter(|a| oracle::strongly_connected_by_bfs(n, a))
            .count();
        let by_mask = (0u32..1 << slot_count(n)).filter(|&m| mask_is_strong(n, m)).count();
        assert_eq!(strong, by_mask);
        assert_eq!(enumerate_strong_digraphs(n, None).unwrap().count(), strong);
    }
}

#[test]
fn brute_force_three_vertex_three_arc_count() {
    let count = oracle::all_digraphs(3)
        .into_iter()
        .filter(|a| a.len() == 3 && oracle::strongly_connected_by_bfs(3, a))
        .count();
    assert_eq!(count, 2);
    assert_eq!(enumerate_strong_digraphs(3, Some(3)).unwrap().count(), count);
}

#[test]
fn perron_root_matches_characteristic_polynomial() {
    for n in 2..=4 {
        for g in enumerate_strong_digraphs(n, None).unwrap() {
            for alpha in [0.0, 0.3, 0.5, std::f64::consts::FRAC_1_SQRT_2, 0.9] {
                let fast = spectral_radius(&g, alpha, 1e-10).unwrap();
                let slow = oracle::perron_root(n, &arcs(&g), alpha);
                assert!(fast.converged);
                assert!(
                    (fast.lambda - slow).abs() <= 1e-8,
                    "alpha {alpha}: {} vs {slow}\n{}",
                    fast.lambda,
                    g.to_edge_list()
                );
            }
        }
    }
}

#[test]
fn enclosure_contains_root_and_residual_is_small() {
    let tol = 1e-10;
    for g in enumerate_strong_digraphs(4, None).unwrap().step_by(7) {
        for alpha in [0.0, 0.5, 0.9] {
            let mat = build_alpha_matrix(&g, alpha).unwrap();
            let r = spectral_radius(&g, alpha, tol).unwrap();
            assert!(r.cw_lower <= r.lambda && r.lambda <= r.cw_upper);
            assert!(r.width() <= tol);
            let x = &r.eigenvector;
            let xmax = x.iter().copied().fold(0.0, f64::max);
            let resid = (0..g.n())
                .map(|i| {
                    let mx: f64 = mat.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
                    (mx - r.lambda * x[i]).abs()
                })
                .fold(0.0, f64::max);
            assert!(resid <= 10.0 * tol * xmax, "residual {resid}");
            assert!(x.iter().all(|&v| v > 0.0));
            let norm2: f64 = x.iter().map(|v| v * v).sum();
            assert!((norm2 - 1.0).abs() <= 1e-12);
        }
    }
}

#[test]
fn shift_one_and_shift_two_agree() {
    let tol = 1e-10_f64;
    for g in enumerate_strong_digraphs(4, None).unwrap().step_by(5) {
        for alpha in [0.0, 0.4, 0.8] {
            let mat = build_alpha_matrix(&g, alpha).unwrap();
            let one = perron_root_dense(4, mat.entries(), PerronOptions { tol, max_iter: 1_000_000, shift: 1.0 }).unwrap();
            let two = perron_root_dense(4, mat.entries(), PerronOptions { tol, max_iter: 1_000_000, shift: 2.0 }).unwrap();
            assert!((one.lambda - two.lambda).abs() <= 2.0 * tol);
        }
    }
}

#[test]
fn signless_laplacian_direct_matches_half_alpha() {
    let tol = 1e-10;
    for g in enumerate_strong_digraphs(4, None).unwrap().step_by(3) {
        let q = signless_laplacian_matrix::<f64>(&g);
        let direct = perron_root_dense(4, &q, PerronOptions::with_tol(tol)).unwrap().lambda;
        let half = spectral_radius(&g, 0.5, tol).unwrap().lambda;
        assert!((direct - 2.0 * half).abs() <= 2.0 * tol);
        let rows: Vec<Vec<f64>> = q.chunks(4).map(<[f64]>::to_vec).collect();
        assert!((direct - oracle::perron_root_dense(&rows)).abs() <= 1e-8);
    }
}
