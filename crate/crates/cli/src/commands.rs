use std::path::Path;

use xxring_core::analysis::{extrapolate, sweep, LimitFit, SweepRequest, SweepRow};
use xxring_core::bruteforce::{full_diagonalize, MAX_ORACLE_SITES};
use xxring_core::eigen::{ground_manifold, sector_block_spectra, DEFAULT_DEGENERACY_TOL};
use xxring_core::entangle::{manifold_concurrence, ring_distance};
use xxring_core::polarize::{configuration_probabilities, lp_table};
use xxring_core::report::{
    decode_csv, decode_json, sweep_rows_from_table, sweep_rows_to_table, Cell, Table,
};
use xxring_core::spinbasis::{enumerate_sector, SpinConfiguration};
use xxring_core::xxmodel::{Coupling, FieldSetting, Regime};
use xxring_core::{Error, Result};

use crate::args::{
    ConcurrenceArgs, ExtrapolateArgs, GroundArgs, LpArgs, Model, SpectrumArgs, SweepArgs,
    VerifyArgs,
};

/// What a command hands back to the output stage.
pub struct Outcome {
    pub config: Vec<(String, Cell)>,
    pub table: Table,
    /// Verification found a mismatch.
    pub mismatch: bool,
}

impl Outcome {
    fn ok(config: Vec<(String, Cell)>, table: Table) -> Self {
        Self {
            config,
            table,
            mismatch: false,
        }
    }
}

fn entry(key: &str, value: impl Into<Cell>) -> (String, Cell) {
    (key.to_string(), value.into())
}

fn model(m: &Model) -> Result<(Coupling, FieldSetting)> {
    Ok((Coupling::new(m.j)?, FieldSetting::new(m.b)?))
}

fn model_config(m: &Model) -> Vec<(String, Cell)> {
    vec![entry("n", m.n), entry("j", m.j), entry("b", m.b)]
}

/// `{1,2,4}`: up sites, 1-based.
fn site_set(c: SpinConfiguration) -> String {
    let sites: Vec<String> = c.up_sites().iter().map(|s| (s + 1).to_string()).collect();
    format!("{{{}}}", sites.join(","))
}

fn regime_of(j: f64) -> Result<Regime> {
    Ok(Coupling::new(j)?.regime())
}

pub fn spectrum(a: &SpectrumArgs) -> Result<Outcome> {
    let (c, f) = model(&a.model)?;
    let n = a.model.n;
    let ks: Vec<u32> = match a.k {
        Some(k) if k > n => return Err(Error::InvalidArgument(format!("k = {k} exceeds n = {n}"))),
        Some(k) => vec![k],
        None => (0..=n).collect(),
    };
    let mut t = Table::new(["k", "m", "level", "energy"]);
    for k in ks {
        let (_, blocks) = sector_block_spectra(n, k, c, f)?;
        for b in blocks {
            for (level, e) in b.spectrum.values.iter().enumerate() {
                t.push(vec![k.into(), b.block.m.into(), level.into(), (*e).into()]);
            }
        }
    }
    let mut config = model_config(&a.model);
    config.push(entry("k", a.k));
    Ok(Outcome::ok(config, t))
}

pub fn ground(a: &GroundArgs) -> Result<Outcome> {
    let (c, f) = model(&a.model)?;
    let g = ground_manifold(a.model.n, c, f, a.tol)?;
    let mut t = Table::new(["state", "k", "m", "energy", "degeneracy"]);
    for (i, s) in g.states.iter().enumerate() {
        t.push(vec![
            (i + 1).into(),
            s.k.into(),
            s.m.into(),
            g.energy.into(),
            g.degeneracy.into(),
        ]);
    }
    let mut config = model_config(&a.model);
    config.push(entry("tol", a.tol));
    Ok(Outcome::ok(config, t))
}

/// Resolves `--pair` / `--distance` to 0-based sites.
fn resolve_pair(n: u32, pair: Option<&[u32]>, distance: Option<u32>) -> Result<(u32, u32)> {
    let (p, q) = match (pair, distance) {
        (Some(&[p, q]), None) => {
            if p == 0 || q == 0 || p > n || q > n || p == q {
                return Err(Error::InvalidArgument(format!(
                    "pair ({p}, {q}) must name two distinct sites in 1..={n}"
                )));
            }
            (p.min(q) - 1, p.max(q) - 1)
        }
        (None, Some(d)) => {
            if d == 0 || d > n / 2 {
                return Err(Error::InvalidArgument(format!(
                    "distance {d} must lie in 1..={}",
                    n / 2
                )));
            }
            (0, d)
        }
        (None, None) => (0, 1),
        _ => {
            return Err(Error::InvalidArgument(
                "give either --pair or --distance".into(),
            ))
        }
    };
    Ok((p, q))
}

pub fn concurrence(a: &ConcurrenceArgs) -> Result<Outcome> {
    let (c, f) = model(&a.model)?;
    let n = a.model.n;
    if n < 2 {
        return Err(Error::InvalidArgument("concurrence needs n >= 2".into()));
    }
    let (p, q) = resolve_pair(n, a.pair.as_deref(), a.distance)?;
    let g = ground_manifold(n, c, f, a.tol)?;
    let value = manifold_concurrence(&g, (p, q))?;
    let mut t = Table::new(["p", "q", "distance", "concurrence", "degeneracy"]);
    t.push(vec![
        (p + 1).into(),
        (q + 1).into(),
        ring_distance(p, q, n).into(),
        value.into(),
        g.degeneracy.into(),
    ]);
    let mut config = model_config(&a.model);
    config.push(entry("tol", a.tol));
    Ok(Outcome::ok(config, t))
}

pub fn lp(a: &LpArgs) -> Result<Outcome> {
    let c = Coupling::new(a.j)?;
    let table = lp_table(a.n, c)?;
    let mut t = Table::new([
        "rank",
        "orbit",
        "sites",
        "multiplicity",
        "probability",
        "total_probability",
        "clustering_score",
        "dihedral_class",
    ]);
    for (i, r) in table.report.rows.iter().enumerate() {
        t.push(vec![
            (i + 1).into(),
            r.label.clone().into(),
            site_set(r.representative).into(),
            r.multiplicity.into(),
            r.per_member_probability.into(),
            r.total_probability.into(),
            r.clustering_score.into(),
            (r.dihedral_class + 1).into(),
        ]);
    }
    let config = vec![
        entry("n", a.n),
        entry("j", a.j),
        entry("k", table.report.k),
        entry("sector_weight", table.report.sector_weight),
        entry("rank_correlation", table.rank_correlation),
        entry("accidental_ties", table.accidental_ties.len()),
    ];
    Ok(Outcome::ok(config, t))
}

fn sweep_request(
    range: xxring_core::report::SiteRange,
    j: f64,
    parity: xxring_core::analysis::Parity,
    distance: u32,
) -> Result<SweepRequest> {
    Ok(SweepRequest {
        n_min: range.min,
        n_max: range.max,
        parity,
        regime: regime_of(j)?,
        distance,
    })
}

fn parity_name(p: xxring_core::analysis::Parity) -> &'static str {
    use xxring_core::analysis::Parity;
    match p {
        Parity::All => "all",
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

pub fn run_sweep(a: &SweepArgs, timing: bool) -> Result<Outcome> {
    let rows = sweep(sweep_request(a.n, a.j, a.parity, a.distance)?)?;
    let config = vec![
        entry("n_min", a.n.min),
        entry("n_max", a.n.max),
        entry("regime", regime_of(a.j)?.as_str()),
        entry("parity", parity_name(a.parity)),
        entry("distance", a.distance),
    ];
    Ok(Outcome::ok(config, sweep_rows_to_table(&rows, timing)))
}

fn read_sweep(path: &Path) -> Result<Vec<SweepRow>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    let table = if text.trim_start().starts_with('{') {
        decode_json(&text)?.table
    } else {
        decode_csv(&text)?
    };
    sweep_rows_from_table(&table)
}

fn fit_table(fit: &LimitFit) -> Table {
    let mut t = Table::new(["c_inf", "a", "b", "residual_norm", "points", "n_values"]);
    let ns: Vec<String> = fit.n_values.iter().map(u32::to_string).collect();
    t.push(vec![
        fit.c_inf.into(),
        fit.a.into(),
        fit.b.into(),
        fit.residual_norm.into(),
        fit.points.into(),
        ns.join(",").into(),
    ]);
    t
}

pub fn run_extrapolate(a: &ExtrapolateArgs) -> Result<Outcome> {
    let (rows, config) = match &a.input {
        Some(path) => (
            read_sweep(path)?,
            vec![entry("input", path.display().to_string())],
        ),
        None => (
            sweep(sweep_request(a.n, a.j, a.parity, a.distance)?)?,
            vec![
                entry("n_min", a.n.min),
                entry("n_max", a.n.max),
                entry("regime", regime_of(a.j)?.as_str()),
                entry("parity", parity_name(a.parity)),
                entry("distance", a.distance),
            ],
        ),
    };
    let fit = extrapolate(&rows)?;
    Ok(Outcome::ok(config, fit_table(&fit)))
}

/// Per-configuration ground probabilities from the block pipeline, indexed
/// by the full bit pattern.
fn pipeline_probabilities(n: u32, c: Coupling) -> Result<(f64, usize, f64, Vec<f64>)> {
    let g = ground_manifold(n, c, FieldSetting::ZERO, DEFAULT_DEGENERACY_TOL)?;
    let mut probs = vec![0.0; 1usize << n];
    for k in g.sectors() {
        let sector = enumerate_sector(n, k)?;
        for (cfg, p) in sector
            .configs()
            .iter()
            .zip(configuration_probabilities(&g, &sector))
        {
            probs[cfg.bits() as usize] = p;
        }
    }
    let conc = manifold_concurrence(&g, (0, 1))?;
    Ok((g.energy, g.degeneracy, conc, probs))
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome> {
    if a.n.min < 2 || a.n.max > MAX_ORACLE_SITES {
        return Err(Error::InvalidArgument(format!(
            "verify handles 2..={MAX_ORACLE_SITES} sites"
        )));
    }
    if a.tol.is_nan() || a.tol < 0.0 {
        return Err(Error::InvalidArgument("tolerance must be >= 0".into()));
    }
    let couplings: Vec<f64> = match a.j {
        Some(j) => vec![j],
        None => vec![-1.0, 1.0],
    };
    let mut t = Table::new([
        "n",
        "j",
        "energy_diff",
        "degeneracy",
        "oracle_degeneracy",
        "concurrence_diff",
        "probability_diff",
        "pass",
    ]);
    let mut mismatch = false;
    for n in a.n.iter() {
        for &j in &couplings {
            let c = Coupling::new(j)?;
            let oracle = full_diagonalize(n, c)?;
            let (energy, degeneracy, conc, probs) = pipeline_probabilities(n, c)?;
            let de = (energy - oracle.ground_energy).abs();
            let dc = (conc - oracle.ground_concurrence).abs();
            let dp = probs
                .iter()
                .zip(oracle.ground_probabilities())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            let pass =
                de <= a.tol && dc <= a.tol && dp <= a.tol && degeneracy == oracle.ground_degeneracy;
            mismatch |= !pass;
            t.push(vec![
                n.into(),
                j.into(),
                de.into(),
                degeneracy.into(),
                oracle.ground_degeneracy.into(),
                dc.into(),
                dp.into(),
                pass.into(),
            ]);
        }
    }
    let config = vec![
        entry("n_min", a.n.min),
        entry("n_max", a.n.max),
        entry("j", a.j),
        entry("tol", a.tol),
    ];
    Ok(Outcome {
        config,
        table: t,
        mismatch,
    })
}
