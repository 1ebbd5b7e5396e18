//! Concurrence-versus-length sweeps and the large-`n` extrapolation.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};

use crate::eigen::{ground_manifold, DEFAULT_DEGENERACY_TOL};
use crate::entangle::manifold_concurrence;
use crate::error::{invalid, Error, Result};
use crate::xxmodel::{FieldSetting, Regime};

/// Largest ring the momentum-block sweep accepts.
pub const MAX_SWEEP_SITES: u32 = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    All,
    Even,
    Odd,
}

impl Parity {
    pub fn admits(self, n: u32) -> bool {
        match self {
            Parity::All => true,
            Parity::Even => n.is_multiple_of(2),
            Parity::Odd => n % 2 == 1,
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Parity::All),
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => invalid(format!("unknown parity `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub n: u32,
    pub regime: Regime,
    pub distance: u32,
    pub concurrence: f64,
    pub degeneracy: usize,
    /// Ground energy for `|J| = 1`.
    pub energy: f64,
    pub wall_ms: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRequest {
    pub n_min: u32,
    pub n_max: u32,
    pub parity: Parity,
    pub regime: Regime,
    pub distance: u32,
}

pub fn sweep(req: SweepRequest) -> Result<Vec<SweepRow>> {
    let SweepRequest {
        n_min,
        n_max,
        parity,
        regime,
        distance,
    } = req;
    if n_min < 2 || n_min > n_max || n_max > MAX_SWEEP_SITES {
        return invalid(format!(
            "sweep range {n_min}..={n_max} must lie within 2..={MAX_SWEEP_SITES}"
        ));
    }
    let ns: Vec<u32> = (n_min..=n_max).filter(|&n| parity.admits(n)).collect();
    if ns.is_empty() {
        return invalid("sweep range contains no ring of the requested parity");
    }
    if distance == 0 || ns.iter().any(|&n| distance > n / 2) {
        return invalid(format!(
            "pair distance {distance} must be between 1 and n/2 for every n in the range"
        ));
    }
    let coupling = regime.unit_coupling();
    ns.into_iter()
        .map(|n| {
            let start = Instant::now();
            let manifold =
                ground_manifold(n, coupling, FieldSetting::ZERO, DEFAULT_DEGENERACY_TOL)?;
            let concurrence = manifold_concurrence(&manifold, (0, distance))?;
            Ok(SweepRow {
                n,
                regime,
                distance,
                concurrence,
                degeneracy: manifold.degeneracy,
                energy: manifold.energy,
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect()
}

/// Least-squares fit of `C(n) = C∞ + a/n + b/n²`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitFit {
    pub c_inf: f64,
    pub a: f64,
    pub b: f64,
    pub residual_norm: f64,
    pub points: usize,
    pub n_values: Vec<u32>,
}

impl LimitFit {
    pub fn predict(&self, n: f64) -> f64 {
        self.c_inf + self.a / n + self.b / (n * n)
    }
}

pub fn extrapolate(rows: &[SweepRow]) -> Result<LimitFit> {
    if rows.len() < 3 {
        return invalid(format!("need at least 3 rows to fit, got {}", rows.len()));
    }
    let first = &rows[0];
    if rows
        .iter()
        .any(|r| r.n % 2 != first.n % 2 || r.regime != first.regime || r.distance != first.distance)
    {
        return invalid("rows must share parity, regime and pair distance");
    }
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.concurrence)).collect();
    let (coeffs, residual_norm) = fit_inverse_quadratic(&points)?;
    Ok(LimitFit {
        c_inf: coeffs[0],
        a: coeffs[1],
        b: coeffs[2],
        residual_norm,
        points: rows.len(),
        n_values: rows.iter().map(|r| r.n).collect(),
    })
}

/// Solves the `[1, 1/n, 1/n²]` design by SVD; returns coefficients and the
/// residual 2-norm.
pub fn fit_inverse_quadratic(points: &[(f64, f64)]) -> Result<([f64; 3], f64)> {
    let design = DMatrix::from_fn(points.len(), 3, |i, j| points[i].0.powi(-(j as i32)));
    let y = DVector::from_iterator(points.len(), points.iter().map(|p| p.1));
    let svd = design.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smax.is_nan() || smax <= 0.0 || smin <= 1e-12 * smax {
        return Err(Error::NumericFailure(
            "design matrix is rank deficient (need 3 distinct n)".into(),
        ));
    }
    let sol = svd
        .solve(&y, 1e-14 * smax)
        .map_err(|e| Error::NumericFailure(e.to_string()))?;
    let residual = (&design * &sol - &y).norm();
    Ok(([sol[0], sol[1], sol[2]], residual))
}
