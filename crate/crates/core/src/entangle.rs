//! Two-site reduced density matrices and Wootters concurrence.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::eigen::{eigh, ground_manifold, GroundManifold, DEFAULT_DEGENERACY_TOL};
use crate::error::{invalid, Error, Result};
use crate::spinbasis::{enumerate_sector, SectorBasis};
use crate::xxmodel::{Coupling, FieldSetting, HermitianMatrix};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Reduced state of sites `(p, q)`, basis order `(↑↑, ↑↓, ↓↑, ↓↓)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairDensity {
    pub matrix: [[Complex64; 4]; 4],
    pub pair: (u32, u32),
}

impl PairDensity {
    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.matrix[i][i]).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.matrix[i][j] - self.matrix[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(eigh(&self.to_matrix())?.values[0])
    }

    pub fn to_matrix(&self) -> HermitianMatrix {
        HermitianMatrix::from_row_major(4, self.matrix.iter().flatten().copied().collect())
            .expect("4x4")
    }

    /// `(u₊, u₋, z)`: the ↑↑ and ↓↓ populations and the ↑↓/↓↑ coherence.
    pub fn x_elements(&self) -> (f64, f64, Complex64) {
        (
            self.matrix[0][0].re,
            self.matrix[3][3].re,
            self.matrix[1][2],
        )
    }

    /// Largest entry outside the diagonal and the ↑↓/↓↑ pair.
    pub fn x_form_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i == j || (i, j) == (1, 2) || (i, j) == (2, 1) {
                    continue;
                }
                worst = worst.max(self.matrix[i][j].norm());
            }
        }
        worst
    }
}

/// One term of a mixture: a unit vector in a fixed-`k` sector.
#[derive(Clone, Copy, Debug)]
pub struct WeightedState<'a> {
    pub weight: f64,
    pub basis: &'a SectorBasis,
    pub amplitudes: &'a [Complex64],
}

/// Pair index of a site pair's local state: `↑ ↦ 0`, `↓ ↦ 1`, first site is
/// the high digit.
fn local_index(up_p: bool, up_q: bool) -> usize {
    (!up_p as usize) * 2 + (!up_q as usize)
}

/// Partial trace of `Σ wᵢ |ψᵢ⟩⟨ψᵢ|` onto sites `(p, q)`.
pub fn pair_density(states: &[WeightedState<'_>], pair: (u32, u32)) -> Result<PairDensity> {
    let (p, q) = pair;
    if states.is_empty() {
        return invalid("mixture has no states");
    }
    let n = states[0].basis.n();
    if p >= q || q >= n {
        return invalid(format!("pair ({p}, {q}) must satisfy p < q < {n}"));
    }
    let total: f64 = states.iter().map(|s| s.weight).sum();
    if states.iter().any(|s| s.weight.is_nan() || s.weight < 0.0) || (total - 1.0).abs() > 1e-10 {
        return invalid(format!(
            "weights must be nonnegative and sum to 1, got {total}"
        ));
    }
    let mut rho = [[ZERO; 4]; 4];
    for s in states {
        if s.basis.n() != n {
            return invalid("all states in a mixture must live on the same ring");
        }
        if s.amplitudes.len() != s.basis.dim() {
            return invalid(format!(
                "amplitude vector length {} does not match sector dimension {}",
                s.amplitudes.len(),
                s.basis.dim()
            ));
        }
        let norm: f64 = s.amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return invalid(format!("state norm² is {norm}, expected 1"));
        }
        let clear = !((1u32 << p) | (1u32 << q));
        for (a, cfg) in s.basis.configs().iter().enumerate() {
            let amp = s.amplitudes[a];
            if amp == ZERO {
                continue;
            }
            let row = local_index(cfg.is_up(p), cfg.is_up(q));
            let rest = cfg.bits() & clear;
            for (up_p, up_q) in [(true, true), (true, false), (false, true), (false, false)] {
                let bits = rest | ((up_p as u32) << p) | ((up_q as u32) << q);
                if let Some(b) = s.basis.index_of_bits(bits) {
                    let col = local_index(up_p, up_q);
                    rho[row][col] += amp * s.amplitudes[b].conj() * s.weight;
                }
            }
        }
    }
    Ok(PairDensity { matrix: rho, pair })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcurrenceResult {
    pub value: f64,
    /// Descending, nonnegative.
    pub lambdas: [f64; 4],
}

/// `σʸ⊗σʸ` in the `(↑↑, ↑↓, ↓↑, ↓↓)` basis.
const YY: [[f64; 4]; 4] = [
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
];

/// Eigenvalues of ρ below this fraction of the largest one are treated as
/// zero; they are below the eigensolver's backward error.
const RANK_TOL: f64 = 1e-13;

/// Wootters concurrence `max(0, λ₁-λ₂-λ₃-λ₄)`, with `λᵢ` the square roots
/// of the eigenvalues of `ρ ρ̃`.
///
/// Writing `ρ = W W†` (columns `√pᵢ vᵢ` over the numerically nonzero
/// eigenpairs), the `λᵢ` are the singular values of `τ = Wᵀ (σʸ⊗σʸ) W`.
/// Going through `τ` avoids square roots of near-zero eigenvalues, which
/// would turn rounding noise of order 1e-17 into errors of order 1e-8.
pub fn concurrence_wootters(rho: &PairDensity) -> Result<ConcurrenceResult> {
    let spec = eigh(&rho.to_matrix())?;
    if spec.values[0] < -1e-10 {
        return Err(Error::NumericFailure(format!(
            "pair density has eigenvalue {:.3e}",
            spec.values[0]
        )));
    }
    let top = spec.values[3].max(0.0);
    let kept: Vec<usize> = (0..4)
        .filter(|&i| spec.values[i] > RANK_TOL * top)
        .collect();
    let w = DMatrix::from_fn(4, kept.len(), |row, col| {
        let i = kept[col];
        spec.vectors[i][row] * spec.values[i].sqrt()
    });
    let yy = DMatrix::from_fn(4, 4, |i, j| Complex64::new(YY[i][j], 0.0));
    let tau = w.transpose() * yy * &w;
    let mut lambdas = [0.0; 4];
    let mut singular: Vec<f64> = tau.singular_values().iter().copied().collect();
    singular.sort_by(|a, b| b.total_cmp(a));
    for (slot, s) in lambdas.iter_mut().zip(singular) {
        *slot = s;
    }
    let value = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0);
    Ok(ConcurrenceResult { value, lambdas })
}

/// Closed form `2·max(0, |z| - √(u₊u₋))` for states whose only coherence is
/// between ↑↓ and ↓↑.
pub fn concurrence_xstate(rho: &PairDensity) -> Result<f64> {
    let defect = rho.x_form_defect();
    if defect > 1e-10 {
        return invalid(format!(
            "pair density is not X-shaped (off-pattern entry {defect:.3e})"
        ));
    }
    let (up, down, z) = rho.x_elements();
    Ok(2.0 * (z.norm() - (up.max(0.0) * down.max(0.0)).sqrt()).max(0.0))
}

/// Concurrence of a single pure state in one sector.
pub fn state_concurrence(
    basis: &SectorBasis,
    amplitudes: &[Complex64],
    pair: (u32, u32),
) -> Result<f64> {
    let rho = pair_density(
        &[WeightedState {
            weight: 1.0,
            basis,
            amplitudes,
        }],
        pair,
    )?;
    Ok(concurrence_wootters(&rho)?.value)
}

/// Equal-weight mixture over the manifold, reduced to `pair`.
pub fn manifold_pair_density(manifold: &GroundManifold, pair: (u32, u32)) -> Result<PairDensity> {
    let mut bases: Vec<SectorBasis> = Vec::new();
    for k in manifold.sectors() {
        bases.push(enumerate_sector(manifold.n, k)?);
    }
    let weight = 1.0 / manifold.degeneracy as f64;
    let terms: Vec<WeightedState<'_>> = manifold
        .states
        .iter()
        .map(|s| WeightedState {
            weight,
            basis: bases.iter().find(|b| b.k() == s.k).expect("sector listed"),
            amplitudes: &s.amplitudes,
        })
        .collect();
    pair_density(&terms, pair)
}

pub fn manifold_concurrence(manifold: &GroundManifold, pair: (u32, u32)) -> Result<f64> {
    Ok(concurrence_wootters(&manifold_pair_density(manifold, pair)?)?.value)
}

/// Concurrence of the equal-weight ground-manifold mixture on `pair`.
pub fn ground_concurrence(n: u32, c: Coupling, f: FieldSetting, pair: (u32, u32)) -> Result<f64> {
    if n < 2 {
        return invalid("pair concurrence needs at least two sites");
    }
    let manifold = ground_manifold(n, c, f, DEFAULT_DEGENERACY_TOL)?;
    manifold_concurrence(&manifold, pair)
}

/// Ring distance `min(|p-q|, n-|p-q|)`.
pub fn ring_distance(p: u32, q: u32, n: u32) -> u32 {
    let d = p.abs_diff(q) % n;
    d.min(n - d)
}
