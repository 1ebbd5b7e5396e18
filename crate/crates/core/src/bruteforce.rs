//! Full `2^n` oracle for cross-checking the sector / momentum pipeline.
//!
//! Nothing here goes through `spinbasis`, `xxmodel` or the in-house Jacobi
//! solver: the Hamiltonian is built straight from bit operations on all
//! `2^n` basis states and diagonalized with nalgebra. Popcount blocks are
//! exploited only to keep memory in check.

use nalgebra::{DMatrix, Matrix4, SymmetricEigen};

use crate::error::{invalid, Result};
use crate::xxmodel::Coupling;

pub const MAX_ORACLE_SITES: u32 = 14;
pub const MAX_SCAN_SITES: u32 = 10;

const LEVEL_TOL: f64 = 1e-9;

struct OracleBlock {
    /// Basis states (full-space integers) of this popcount, ascending.
    states: Vec<u32>,
    values: Vec<f64>,
    /// Column `i` belongs to `values[i]`.
    vectors: DMatrix<f64>,
}

/// An eigenvector address: block and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Eigvec {
    block: usize,
    col: usize,
}

pub struct FullSpectrumReport {
    pub n: u32,
    pub coupling: Coupling,
    /// All `2^n` eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Up count of the eigenvector behind each entry of `eigenvalues`.
    pub sectors: Vec<u32>,
    pub ground_energy: f64,
    pub ground_degeneracy: usize,
    /// Largest nearest-pair concurrence of any single eigenvector.
    pub max_nearest_concurrence: f64,
    /// Nearest-pair concurrence of the equal-weight ground mixture.
    pub ground_concurrence: f64,
    blocks: Vec<OracleBlock>,
    /// `position[s]` is the index of full state `s` inside its block.
    position: Vec<usize>,
    order: Vec<Eigvec>,
}

impl FullSpectrumReport {
    pub fn dimension(&self) -> usize {
        1usize << self.n
    }

    fn ground_vectors(&self) -> &[Eigvec] {
        &self.order[..self.ground_degeneracy]
    }

    /// Diagonal of the equal-weight ground mixture over all `2^n` states.
    pub fn ground_probabilities(&self) -> Vec<f64> {
        let mut probs = vec![0.0; self.dimension()];
        let w = 1.0 / self.ground_degeneracy as f64;
        for v in self.ground_vectors() {
            let blk = &self.blocks[v.block];
            for (i, &s) in blk.states.iter().enumerate() {
                probs[s as usize] += w * blk.vectors[(i, v.col)].powi(2);
            }
        }
        probs
    }

    /// Ground-mixture concurrence of an arbitrary pair.
    pub fn ground_pair_concurrence(&self, pair: (u32, u32)) -> Result<f64> {
        check_pair(self.n, pair)?;
        let rho = self.mixture_density(self.ground_vectors(), pair);
        Ok(concurrence(&rho))
    }

    fn mixture_density(&self, vectors: &[Eigvec], pair: (u32, u32)) -> Matrix4<f64> {
        let w = 1.0 / vectors.len() as f64;
        let mut rho = Matrix4::zeros();
        for v in vectors {
            rho += self.reduce(*v, pair) * w;
        }
        rho
    }

    /// Partial trace of one eigenvector onto `pair`, basis `(↑↑, ↑↓, ↓↑, ↓↓)`.
    fn reduce(&self, v: Eigvec, pair: (u32, u32)) -> Matrix4<f64> {
        let (p, q) = pair;
        let blk = &self.blocks[v.block];
        let mut rho = Matrix4::zeros();
        let local = |s: u32| (1 - ((s >> p) & 1) as usize) * 2 + (1 - ((s >> q) & 1) as usize);
        let rest_mask = !((1u32 << p) | (1u32 << q));
        for (i, &s) in blk.states.iter().enumerate() {
            let a = blk.vectors[(i, v.col)];
            if a == 0.0 {
                continue;
            }
            for variant in 0..4u32 {
                let t = (s & rest_mask) | ((variant >> 1) << p) | ((variant & 1) << q);
                if t.count_ones() != s.count_ones() {
                    continue;
                }
                let j = self.position[t as usize];
                rho[(local(s), local(t))] += a * blk.vectors[(j, v.col)];
            }
        }
        rho
    }
}

fn check_pair(n: u32, (p, q): (u32, u32)) -> Result<()> {
    if p >= q || q >= n {
        return invalid(format!("pair ({p}, {q}) must satisfy p < q < {n}"));
    }
    Ok(())
}

/// Concurrence of a real two-qubit density matrix through the Hermitian
/// form `√ρ ρ̃ √ρ`.
fn concurrence(rho: &Matrix4<f64>) -> f64 {
    let yy = Matrix4::new(
        0.0, 0.0, 0.0, -1.0, //
        0.0, 0.0, 1.0, 0.0, //
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0,
    );
    let sym = (rho + rho.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let roots = eig.eigenvalues.map(|x| x.max(0.0).sqrt());
    let sqrt_rho = eig.eigenvectors * Matrix4::from_diagonal(&roots) * eig.eigenvectors.transpose();
    let flipped = yy * sym * yy;
    let m = sqrt_rho * flipped * sqrt_rho;
    let m = (m + m.transpose()) * 0.5;
    let mut lambdas: Vec<f64> = SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .map(|x| x.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

/// Full-space Hamiltonian element list: for every state and bond, the state
/// reached by exchanging the two spins.
fn hopping_targets(s: u32, n: u32) -> impl Iterator<Item = u32> {
    (0..n).filter_map(move |i| {
        let j = (i + 1) % n;
        (((s >> i) ^ (s >> j)) & 1 == 1).then(|| s ^ (1 << i) ^ (1 << j))
    })
}

pub fn full_diagonalize(n: u32, c: Coupling) -> Result<FullSpectrumReport> {
    if n == 0 || n > MAX_ORACLE_SITES {
        return invalid(format!(
            "oracle handles 1..={MAX_ORACLE_SITES} sites, got {n}"
        ));
    }
    let dim = 1usize << n;
    let mut states_by_count: Vec<Vec<u32>> = vec![Vec::new(); n as usize + 1];
    let mut position = vec![0usize; dim];
    for s in 0..dim as u32 {
        let bucket = &mut states_by_count[s.count_ones() as usize];
        position[s as usize] = bucket.len();
        bucket.push(s);
    }

    let mut blocks = Vec::with_capacity(states_by_count.len());
    for states in states_by_count {
        let d = states.len();
        let mut h = DMatrix::<f64>::zeros(d, d);
        for (col, &s) in states.iter().enumerate() {
            for t in hopping_targets(s, n) {
                h[(position[t as usize], col)] += c.j();
            }
        }
        let eig = SymmetricEigen::new(h);
        blocks.push(OracleBlock {
            states,
            values: eig.eigenvalues.iter().copied().collect(),
            vectors: eig.eigenvectors,
        });
    }

    let mut order: Vec<Eigvec> = blocks
        .iter()
        .enumerate()
        .flat_map(|(b, blk)| (0..blk.values.len()).map(move |col| Eigvec { block: b, col }))
        .collect();
    let value = |v: &Eigvec| blocks[v.block].values[v.col];
    order.sort_by(|a, b| value(a).total_cmp(&value(b)).then(a.block.cmp(&b.block)));
    let eigenvalues: Vec<f64> = order.iter().map(value).collect();
    let sectors = order
        .iter()
        .map(|v| blocks[v.block].states[0].count_ones())
        .collect();
    let ground_energy = eigenvalues[0];
    let range = eigenvalues[eigenvalues.len() - 1] - ground_energy;
    let ground_degeneracy = eigenvalues
        .iter()
        .take_while(|&&e| e - ground_energy <= LEVEL_TOL * range)
        .count();

    let mut report = FullSpectrumReport {
        n,
        coupling: c,
        eigenvalues,
        sectors,
        ground_energy,
        ground_degeneracy,
        max_nearest_concurrence: 0.0,
        ground_concurrence: 0.0,
        blocks,
        position,
        order,
    };
    if n >= 2 {
        report.ground_concurrence = report.ground_pair_concurrence((0, 1))?;
        report.max_nearest_concurrence = report
            .order
            .iter()
            .map(|v| concurrence(&report.reduce(*v, (0, 1))))
            .fold(0.0, f64::max);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelConcurrence {
    pub energy: f64,
    pub degeneracy: usize,
    /// Nearest-pair concurrence of the equal-weight mixture over the level.
    pub concurrence: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub n: u32,
    pub levels: Vec<LevelConcurrence>,
    pub ground_concurrence: f64,
    pub max_concurrence: f64,
    /// No level exceeds the ground level by more than `1e-10`.
    pub ground_is_max: bool,
}

/// Per-level nearest-pair concurrence over the whole spectrum.
pub fn eigenvector_concurrence_scan(n: u32, c: Coupling) -> Result<ScanReport> {
    if !(2..=MAX_SCAN_SITES).contains(&n) {
        return invalid(format!("scan handles 2..={MAX_SCAN_SITES} sites, got {n}"));
    }
    let full = full_diagonalize(n, c)?;
    let range = full.eigenvalues[full.eigenvalues.len() - 1] - full.eigenvalues[0];
    let mut levels = Vec::new();
    let mut start = 0;
    while start < full.order.len() {
        let e0 = full.eigenvalues[start];
        let mut end = start + 1;
        while end < full.order.len() && full.eigenvalues[end] - e0 <= LEVEL_TOL * range {
            end += 1;
        }
        let rho = full.mixture_density(&full.order[start..end], (0, 1));
        levels.push(LevelConcurrence {
            energy: e0,
            degeneracy: end - start,
            concurrence: concurrence(&rho),
        });
        start = end;
    }
    let ground_concurrence = levels[0].concurrence;
    let max_concurrence = levels.iter().map(|l| l.concurrence).fold(0.0, f64::max);
    Ok(ScanReport {
        n,
        ground_is_max: max_concurrence <= ground_concurrence + 1e-10,
        levels,
        ground_concurrence,
        max_concurrence,
    })
}
