use proptest::prelude::*;
use xxring_core::eigen::{ground_manifold, sector_spectrum, DEFAULT_DEGENERACY_TOL};
use xxring_core::entangle::{
    concurrence_wootters, concurrence_xstate, manifold_concurrence, pair_density,
    state_concurrence, WeightedState,
};
use xxring_core::polarize::lp_table;
use xxring_core::spinbasis::{enumerate_sector, SectorBasis};
use xxring_core::xxmodel::{Coupling, FieldSetting};
use xxring_core::Complex64;

fn normalized(raw: Vec<(f64, f64)>) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = raw.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    v
}

/// `(basis, state, pair)` with `n` in 2..=9 and a random normalized state.
fn sector_state() -> impl Strategy<Value = (SectorBasis, Vec<Complex64>, (u32, u32))> {
    (2u32..=9)
        .prop_flat_map(|n| (Just(n), 0..=n, 0..n - 1))
        .prop_flat_map(|(n, k, p)| {
            let basis = enumerate_sector(n, k).unwrap();
            let dim = basis.dim();
            (
                Just(basis),
                prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
                    .prop_filter("nonzero", |v| {
                        v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3)
                    }),
                Just(p),
                p + 1..n,
            )
        })
        .prop_map(|(basis, raw, p, q)| (basis, normalized(raw), (p, q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn xstate_path_agrees_with_general_formula((basis, state, pair) in sector_state()) {
        let rho = pair_density(&[WeightedState { weight: 1.0, basis: &basis, amplitudes: &state }], pair).unwrap();
        let general = concurrence_wootters(&rho).unwrap().value;
        let fast = concurrence_xstate(&rho).unwrap();
        prop_assert!((general - fast).abs() <= 1e-10, "{general} vs {fast}");
    }

    #[test]
    fn pair_density_is_a_state((basis, state, pair) in sector_state()) {
        let rho = pair_density(&[WeightedState { weight: 1.0, basis: &basis, amplitudes: &state }], pair).unwrap();
        prop_assert!((rho.trace() - 1.0).norm() <= 1e-12);
        prop_assert!(rho.hermiticity_defect() <= 1e-14);
        prop_assert!(rho.min_eigenvalue().unwrap() >= -1e-12);
        prop_assert!(rho.x_form_defect() == 0.0);
    }

    #[test]
    fn concurrence_follows_rotated_states((basis, state, pair) in sector_state(), t in 0u32..9) {
        let n = basis.n();
        let t = t % n;
        let mut rotated = vec![Complex64::new(0.0, 0.0); state.len()];
        for (i, cfg) in basis.configs().iter().enumerate() {
            rotated[basis.index_of(cfg.rotate(t)).unwrap()] = state[i];
        }
        let (p, q) = ((pair.0 + t) % n, (pair.1 + t) % n);
        let a = state_concurrence(&basis, &state, pair).unwrap();
        let b = state_concurrence(&basis, &rotated, (p.min(q), p.max(q))).unwrap();
        prop_assert!((a - b).abs() <= 1e-10, "{a} vs {b}");
    }
}

#[test]
fn ground_concurrence_is_translation_invariant() {
    for n in 3..=10u32 {
        for j in [-1.0, 1.0] {
            let c = Coupling::new(j).unwrap();
            let g = ground_manifold(n, c, FieldSetting::ZERO, DEFAULT_DEGENERACY_TOL).unwrap();
            for d in 1..=n / 2 {
                let base = manifold_concurrence(&g, (0, d)).unwrap();
                for p in 1..n {
                    let q = (p + d) % n;
                    let c2 = manifold_concurrence(&g, (p.min(q), p.max(q))).unwrap();
                    assert!((base - c2).abs() <= 1e-10, "n={n} J={j} d={d} p={p}");
                }
            }
        }
    }
}

#[test]
fn particle_hole_sectors_share_spectra() {
    for n in 2..=10u32 {
        for j in [-1.0, 1.0] {
            let c = Coupling::new(j).unwrap();
            for k in 0..=n {
                let a = sector_spectrum(n, k, c).unwrap().values;
                let b = sector_spectrum(n, n - k, c).unwrap().values;
                assert_eq!(a.len(), b.len());
                for (x, y) in a.iter().zip(&b) {
                    assert!((x - y).abs() <= 1e-10, "n={n} k={k}");
                }
            }
        }
    }
}

#[test]
fn reflected_orbits_have_equal_probability() {
    for n in (2..=12u32).step_by(2) {
        for j in [-1.0, 1.0] {
            let lp = lp_table(n, Coupling::new(j).unwrap()).unwrap();
            for pair in &lp.dihedral_pairs {
                assert!(
                    pair.equal_probability,
                    "n={n} J={j}: {} vs {}",
                    pair.first, pair.second
                );
            }
        }
    }
}
