//! Dense Hermitian eigensolver and ground-manifold extraction.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::spinbasis::{enumerate_sector, translation_orbits, SectorBasis};
use crate::xxmodel::{
    build_momentum_block_with, sector_energy_offset, Coupling, FieldSetting, HermitianMatrix,
    MomentumBlock, OrbitLookup,
};

/// Default degeneracy threshold, relative to the spectral range.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-13;
const HERMITIAN_TOL: f64 = 1e-12;

/// Sector (and optionally momentum) a spectrum was computed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockLabel {
    pub k: u32,
    pub m: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Ascending.
    pub values: Vec<f64>,
    /// `vectors[i]` belongs to `values[i]`.
    pub vectors: Vec<Vec<Complex64>>,
    pub source: Option<BlockLabel>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Full eigendecomposition by cyclic complex Jacobi rotations.
///
/// Each rotation zeroes one off-diagonal pair `(p, q)`; sweeps repeat until
/// the off-diagonal Frobenius norm drops below `1e-13·‖H‖`.
pub fn eigh(h: &HermitianMatrix) -> Result<Spectrum> {
    let n = h.dim();
    if !h.is_hermitian(HERMITIAN_TOL) {
        return invalid(format!(
            "matrix is not Hermitian (defect {:.3e})",
            h.hermiticity_defect()
        ));
    }
    // Exact symmetry lets the rotations below mirror rows onto columns.
    let mut sym = h.clone();
    sym.hermitize();
    let mut a = sym.entries().to_vec();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let norm = h.frobenius_norm();
    let target = OFF_DIAGONAL_TOL * norm;
    let mut converged = n <= 1 || norm == 0.0;
    let mut sweep = 0;
    while !converged {
        if off_diagonal_norm(&a, n) <= target {
            converged = true;
            break;
        }
        if sweep == MAX_SWEEPS {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, n, p, q, norm);
            }
        }
        sweep += 1;
    }
    if !converged {
        return Err(Error::NumericFailure(format!(
            "Jacobi did not converge in {MAX_SWEEPS} sweeps (order {n})"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = order
        .iter()
        .map(|&col| {
            let mut vec: Vec<Complex64> = (0..n).map(|row| v[row * n + col]).collect();
            fix_phase(&mut vec);
            vec
        })
        .collect();
    Ok(Spectrum {
        values,
        vectors,
        source: None,
    })
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One rotation `A ← G† A G`, `V ← V G` with
/// `G = [[c, s], [-s·ē, c·ē]]` on rows/columns `(p, q)`, `e = a_pq / |a_pq|`.
fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize, scale: f64) {
    let apq = a[p * n + q];
    let beta = apq.norm();
    if beta <= f64::EPSILON * 1e-3 * scale {
        return;
    }
    let e = apq / beta;
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let theta = (aqq - app) / (2.0 * beta);
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let ec = e.conj();

    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let x = a[r * n + p];
        let y = a[r * n + q];
        let new_p = x * c - y * ec * s;
        let new_q = x * s + y * ec * c;
        a[r * n + p] = new_p;
        a[r * n + q] = new_q;
        a[p * n + r] = new_p.conj();
        a[q * n + r] = new_q.conj();
    }
    a[p * n + p] = Complex64::new(app - t * beta, 0.0);
    a[q * n + q] = Complex64::new(aqq + t * beta, 0.0);
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);

    for r in 0..n {
        let x = v[r * n + p];
        let y = v[r * n + q];
        v[r * n + p] = x * c - y * ec * s;
        v[r * n + q] = x * s + y * ec * c;
    }
}

/// Rotates the vector so its largest-magnitude entry is real and positive.
/// Ties go to the lowest index.
fn fix_phase(vec: &mut [Complex64]) {
    let max = vec.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let pivot = vec
        .iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-10))
        .unwrap_or(0);
    let phase = vec[pivot].conj() / vec[pivot].norm();
    for z in vec.iter_mut() {
        *z *= phase;
    }
}

/// Maps a momentum-block eigenvector back to sector amplitudes.
pub fn lift_block_vector(
    basis: &SectorBasis,
    block: &MomentumBlock,
    v: &[Complex64],
) -> Result<Vec<Complex64>> {
    if v.len() != block.dim() {
        return invalid(format!(
            "block vector length {} does not match block order {}",
            v.len(),
            block.dim()
        ));
    }
    let n = block.n as f64;
    let mut out = vec![Complex64::new(0.0, 0.0); basis.dim()];
    for ((rep, &period), coeff) in block.reps.iter().zip(&block.periods).zip(v) {
        let weight = coeff / (period as f64).sqrt();
        for t in 0..period {
            let phase = -2.0 * std::f64::consts::PI * (block.m as f64) * (t as f64) / n;
            let idx = basis
                .index_of(rep.rotate(t))
                .expect("orbit member belongs to sector");
            out[idx] += weight * Complex64::from_polar(1.0, phase);
        }
    }
    Ok(out)
}

/// One ground vector, expressed in the sector basis of `k` up spins.
#[derive(Clone, Debug)]
pub struct ManifoldState {
    pub k: u32,
    pub m: u32,
    pub amplitudes: Vec<Complex64>,
}

#[derive(Clone, Debug)]
pub struct GroundManifold {
    pub n: u32,
    pub coupling: Coupling,
    pub field: FieldSetting,
    pub energy: f64,
    pub degeneracy: usize,
    /// Ordered by `(k, m)`.
    pub states: Vec<ManifoldState>,
    pub tolerance: f64,
    /// Absolute threshold actually applied: `tolerance · spectral range`.
    pub threshold: f64,
    pub spectral_range: f64,
}

impl GroundManifold {
    /// Sectors occupied by the manifold, ascending.
    pub fn sectors(&self) -> Vec<u32> {
        let mut ks: Vec<u32> = self.states.iter().map(|s| s.k).collect();
        ks.dedup();
        ks
    }
}

/// Eigen-decomposition of one `(k, m)` block with field offset applied.
#[derive(Clone, Debug)]
pub struct BlockSpectrum {
    pub block: MomentumBlock,
    pub spectrum: Spectrum,
}

/// Diagonalizes every momentum block of sector `k`.
pub fn sector_block_spectra(
    n: u32,
    k: u32,
    c: Coupling,
    f: FieldSetting,
) -> Result<(SectorBasis, Vec<BlockSpectrum>)> {
    let basis = enumerate_sector(n, k)?;
    let orbits = translation_orbits(&basis);
    let lookup = OrbitLookup::new(&basis, &orbits);
    let offset = sector_energy_offset(k, n, f);
    let blocks = (0..n)
        .into_par_iter()
        .map(|m| {
            let block = build_momentum_block_with(&basis, &orbits, &lookup, m, c)?;
            let mut spectrum = eigh(&block.matrix)?;
            spectrum.values.iter_mut().for_each(|e| *e += offset);
            spectrum.source = Some(BlockLabel { k, m: Some(m) });
            Ok(BlockSpectrum { block, spectrum })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((basis, blocks))
}

/// Scans all sectors `k = 0..=n` and collects every eigenvector within
/// `tol · spectral_range` of the global minimum.
pub fn ground_manifold(n: u32, c: Coupling, f: FieldSetting, tol: f64) -> Result<GroundManifold> {
    if !(tol >= 0.0 && tol.is_finite()) {
        return invalid(format!(
            "degeneracy tolerance must be finite and >= 0, got {tol}"
        ));
    }
    enumerate_sector(n, 0)?;
    let sectors = (0..=n)
        .into_par_iter()
        .map(|k| sector_block_spectra(n, k, c, f))
        .collect::<Result<Vec<_>>>()?;

    let (lo, hi) = sectors
        .iter()
        .flat_map(|(_, blocks)| blocks.iter().flat_map(|b| b.spectrum.values.iter()))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &e| {
            (lo.min(e), hi.max(e))
        });
    let range = hi - lo;
    let threshold = tol * range;

    let mut states = Vec::new();
    for (basis, blocks) in &sectors {
        for bs in blocks {
            for (value, vector) in bs.spectrum.values.iter().zip(&bs.spectrum.vectors) {
                if value - lo <= threshold {
                    states.push(ManifoldState {
                        k: basis.k(),
                        m: bs.block.m,
                        amplitudes: lift_block_vector(basis, &bs.block, vector)?,
                    });
                }
            }
        }
    }
    Ok(GroundManifold {
        n,
        coupling: c,
        field: f,
        energy: lo,
        degeneracy: states.len(),
        states,
        tolerance: tol,
        threshold,
        spectral_range: range,
    })
}

/// Dense-sector variant (no momentum blocks), used to cross-check the block
/// path.
pub fn sector_spectrum(n: u32, k: u32, c: Coupling) -> Result<Spectrum> {
    let basis = enumerate_sector(n, k)?;
    let h = crate::xxmodel::build_sector_hamiltonian(&basis, c);
    let mut s = eigh(&h)?;
    s.source = Some(BlockLabel { k, m: None });
    Ok(s)
}
