use xxring_core::bruteforce::full_diagonalize;
use xxring_core::eigen::{ground_manifold, DEFAULT_DEGENERACY_TOL};
use xxring_core::entangle::manifold_concurrence;
use xxring_core::polarize::configuration_probabilities;
use xxring_core::spinbasis::enumerate_sector;
use xxring_core::xxmodel::{Coupling, FieldSetting};

const TOL: f64 = 1e-10;

#[test]
fn block_pipeline_matches_full_space_for_all_pairs() {
    for n in 2..=10u32 {
        for j in [-1.0, 1.0, -0.35, 2.5] {
            let c = Coupling::new(j).unwrap();
            let oracle = full_diagonalize(n, c).unwrap();
            let g = ground_manifold(n, c, FieldSetting::ZERO, DEFAULT_DEGENERACY_TOL).unwrap();
            assert!(
                (g.energy - oracle.ground_energy).abs() <= TOL * j.abs(),
                "n={n} J={j}: {} vs {}",
                g.energy,
                oracle.ground_energy
            );
            assert_eq!(g.degeneracy, oracle.ground_degeneracy, "n={n} J={j}");
            for q in 1..n {
                let ours = manifold_concurrence(&g, (0, q)).unwrap();
                let theirs = oracle.ground_pair_concurrence((0, q)).unwrap();
                assert!(
                    (ours - theirs).abs() <= TOL,
                    "n={n} J={j} pair (0,{q}): {ours} vs {theirs}"
                );
            }
        }
    }
}

#[test]
fn configuration_probabilities_match_full_space() {
    for n in 2..=10u32 {
        for j in [-1.0, 1.0] {
            let c = Coupling::new(j).unwrap();
            let oracle = full_diagonalize(n, c).unwrap().ground_probabilities();
            let g = ground_manifold(n, c, FieldSetting::ZERO, DEFAULT_DEGENERACY_TOL).unwrap();
            let mut ours = vec![0.0; 1 << n];
            for k in g.sectors() {
                let sector = enumerate_sector(n, k).unwrap();
                for (cfg, p) in sector
                    .configs()
                    .iter()
                    .zip(configuration_probabilities(&g, &sector))
                {
                    ours[cfg.bits() as usize] = p;
                }
            }
            for (s, (a, b)) in ours.iter().zip(&oracle).enumerate() {
                assert!((a - b).abs() <= TOL, "n={n} J={j} state {s:b}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn oracle_spectrum_is_complete() {
    for n in 2..=8u32 {
        let full = full_diagonalize(n, Coupling::new(-1.0).unwrap()).unwrap();
        assert_eq!(full.eigenvalues.len(), 1 << n);
        // The XX trace vanishes in every sector.
        assert!(full.eigenvalues.iter().sum::<f64>().abs() < 1e-9);
        assert!(full.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }
}
