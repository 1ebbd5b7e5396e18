//! XX-ring Hamiltonian `H = J Σ (σ⁺ᵢσ⁻ᵢ₊₁ + σ⁺ᵢ₊₁σ⁻ᵢ)` with periodic
//! boundary, restricted to fixed-magnetization sectors and momentum blocks.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::spinbasis::{SectorBasis, SpinConfiguration, TranslationOrbit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    /// `J < 0`
    Ferromagnetic,
    /// `J > 0`
    Antiferromagnetic,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Ferromagnetic => "ferro",
            Regime::Antiferromagnetic => "antiferro",
        }
    }

    /// Unit coupling with this regime's sign.
    pub fn unit_coupling(self) -> Coupling {
        match self {
            Regime::Ferromagnetic => Coupling { j: -1.0 },
            Regime::Antiferromagnetic => Coupling { j: 1.0 },
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Regime {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ferro" | "f" | "ferromagnetic" => Ok(Regime::Ferromagnetic),
            "antiferro" | "af" | "a-f" | "antiferromagnetic" => Ok(Regime::Antiferromagnetic),
            other => invalid(format!("unknown regime `{other}`")),
        }
    }
}

/// Exchange constant `J`, nonzero and finite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coupling {
    j: f64,
}

impl Coupling {
    pub fn new(j: f64) -> Result<Self> {
        if j == 0.0 || !j.is_finite() {
            return invalid(format!("coupling must be finite and nonzero, got {j}"));
        }
        Ok(Self { j })
    }

    pub fn j(self) -> f64 {
        self.j
    }

    pub fn regime(self) -> Regime {
        if self.j < 0.0 {
            Regime::Ferromagnetic
        } else {
            Regime::Antiferromagnetic
        }
    }
}

/// Uniform Zeeman field entering as `-b Σ Sᶻᵢ`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FieldSetting {
    pub b: f64,
}

impl FieldSetting {
    pub const ZERO: FieldSetting = FieldSetting { b: 0.0 };

    pub fn new(b: f64) -> Result<Self> {
        if !b.is_finite() {
            return invalid(format!("field must be finite, got {b}"));
        }
        Ok(Self { b })
    }
}

/// Energy shift of sector `k` under the field: `-b (k - n/2)`.
pub fn sector_energy_offset(k: u32, n: u32, f: FieldSetting) -> f64 {
    if f.b == 0.0 {
        return 0.0;
    }
    -f.b * (k as f64 - n as f64 / 2.0)
}

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Wraps row-major entries; Hermiticity is checked by the eigensolver,
    /// not here.
    pub fn from_row_major(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return invalid(format!(
                "{} entries cannot form a {dim}x{dim} matrix",
                entries.len()
            ));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return invalid("matrix rows must all have the matrix order");
            }
            entries.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn add(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] += value;
    }

    /// Replaces the matrix by `(A + A†) / 2`.
    pub fn hermitize(&mut self) {
        let n = self.dim;
        for i in 0..n {
            let d = &mut self.entries[i * n + i];
            *d = Complex64::new(d.re, 0.0);
            for j in i + 1..n {
                let avg = (self.entries[i * n + j] + self.entries[j * n + i].conj()) * 0.5;
                self.entries[i * n + j] = avg;
                self.entries[j * n + i] = avg.conj();
            }
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest `|a_ij - conj(a_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        let scale = self
            .entries
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        self.hermiticity_defect() <= rel_tol * scale
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        self.entries
            .chunks_exact(self.dim.max(1))
            .take(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }
}

/// Configurations reachable from `c` by one nearest-neighbour exchange, one
/// item per bond. On a two-site ring both bonds join sites 0 and 1, so the
/// single physical hop appears twice.
fn hops(c: SpinConfiguration) -> impl Iterator<Item = SpinConfiguration> {
    let n = c.n();
    (0..n).filter_map(move |i| {
        let j = (i + 1) % n;
        if c.is_up(i) != c.is_up(j) {
            let bits = c.bits() ^ (1 << i) ^ (1 << j);
            Some(SpinConfiguration::new(bits, n).expect("hop stays on the ring"))
        } else {
            None
        }
    })
}

pub fn build_sector_hamiltonian(basis: &SectorBasis, c: Coupling) -> HermitianMatrix {
    let mut h = HermitianMatrix::zeros(basis.dim());
    let j = Complex64::new(c.j(), 0.0);
    for (a, &cfg) in basis.configs().iter().enumerate() {
        for target in hops(cfg) {
            let b = basis.index_of(target).expect("hops conserve up count");
            h.add(b, a, j);
        }
    }
    h
}

/// `H·v` without forming the matrix.
pub fn apply_hamiltonian(
    basis: &SectorBasis,
    c: Coupling,
    v: &[Complex64],
) -> Result<Vec<Complex64>> {
    if v.len() != basis.dim() {
        return invalid(format!(
            "vector length {} does not match sector dimension {}",
            v.len(),
            basis.dim()
        ));
    }
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (a, &cfg) in basis.configs().iter().enumerate() {
        if v[a] == Complex64::new(0.0, 0.0) {
            continue;
        }
        for target in hops(cfg) {
            let b = basis.index_of(target).expect("hops conserve up count");
            out[b] += v[a] * c.j();
        }
    }
    Ok(out)
}

/// Hamiltonian restricted to crystal momentum `2πm/n` inside one sector.
#[derive(Clone, Debug)]
pub struct MomentumBlock {
    pub n: u32,
    pub k: u32,
    pub m: u32,
    /// Representatives of the orbits admissible at this momentum.
    pub reps: Vec<SpinConfiguration>,
    pub periods: Vec<u32>,
    /// `n² / period`, the squared norm of the unnormalized Bloch sum.
    pub norms: Vec<f64>,
    pub matrix: HermitianMatrix,
}

impl MomentumBlock {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }
}

/// Orbit with period `p` carries momentum `m` only when `m·p ≡ 0 (mod n)`.
pub fn admissible(m: u32, period: u32, n: u32) -> bool {
    (m as u64 * period as u64).is_multiple_of(n as u64)
}

/// `e^(2πi j/n)` for `j = 0..n`, exact on the real and imaginary axes.
fn bloch_phases(n: u32) -> Vec<Complex64> {
    (0..n)
        .map(|j| {
            let quarter = 4 * j as u64;
            if quarter.is_multiple_of(n as u64) {
                match quarter / n as u64 {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, -1.0),
                }
            } else {
                Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)
            }
        })
        .collect()
}

/// Where each sector configuration sits among the orbits: orbit index and
/// the shift `t` with `config = representative.rotate(t)`.
#[derive(Clone, Debug)]
pub struct OrbitLookup {
    slots: Vec<(usize, u32)>,
}

impl OrbitLookup {
    pub fn new(basis: &SectorBasis, orbits: &[TranslationOrbit]) -> Self {
        let mut slots = vec![(usize::MAX, 0); basis.dim()];
        for (o, orbit) in orbits.iter().enumerate() {
            for (t, member) in orbit.members.iter().enumerate() {
                let idx = basis.index_of(*member).expect("orbit member in sector");
                slots[idx] = (o, t as u32);
            }
        }
        Self { slots }
    }

    pub fn locate(&self, sector_index: usize) -> (usize, u32) {
        self.slots[sector_index]
    }
}

/// Basis vector for representative `a` of period `p`:
/// `(n²/p)^(-1/2) Σ_t e^(-2πi m t / n) rotate(a, t)`.
pub fn build_momentum_block(
    basis: &SectorBasis,
    orbits: &[TranslationOrbit],
    m: u32,
    c: Coupling,
) -> Result<MomentumBlock> {
    let lookup = OrbitLookup::new(basis, orbits);
    build_momentum_block_with(basis, orbits, &lookup, m, c)
}

pub fn build_momentum_block_with(
    basis: &SectorBasis,
    orbits: &[TranslationOrbit],
    lookup: &OrbitLookup,
    m: u32,
    c: Coupling,
) -> Result<MomentumBlock> {
    let n = basis.n();
    if m >= n {
        return invalid(format!("momentum index {m} outside 0..{n}"));
    }
    let mut block_index = vec![usize::MAX; orbits.len()];
    let mut reps = Vec::new();
    let mut periods = Vec::new();
    for (o, orbit) in orbits.iter().enumerate() {
        if admissible(m, orbit.period, n) {
            block_index[o] = reps.len();
            reps.push(orbit.representative);
            periods.push(orbit.period);
        }
    }
    let norms: Vec<f64> = periods
        .iter()
        .map(|&p| (n as f64).powi(2) / p as f64)
        .collect();

    let phases = bloch_phases(n);
    let mut matrix = HermitianMatrix::zeros(reps.len());
    for (col, (&rep, &p_a)) in reps.iter().zip(&periods).enumerate() {
        for target in hops(rep) {
            let idx = basis.index_of(target).expect("hops conserve up count");
            let (orbit_b, shift) = lookup.locate(idx);
            let row = block_index[orbit_b];
            if row == usize::MAX {
                continue;
            }
            let p_b = periods[row];
            let phase = phases[((m as u64 * shift as u64) % n as u64) as usize];
            let amp = c.j() * (p_a as f64 / p_b as f64).sqrt();
            matrix.add(row, col, phase * amp);
        }
    }
    matrix.hermitize();
    Ok(MomentumBlock {
        n,
        k: basis.k(),
        m,
        reps,
        periods,
        norms,
        matrix,
    })
}
