//! Micro-state structure of ground states: per-orbit probabilities and a
//! clustering diagnostic for how tightly the up spins are packed.

use crate::eigen::{ground_manifold, GroundManifold, DEFAULT_DEGENERACY_TOL};
use crate::error::{invalid, Result};
use crate::spinbasis::{
    dihedral_classes, enumerate_sector, translation_orbits, SectorBasis, SpinConfiguration,
};
use crate::xxmodel::{Coupling, FieldSetting};

/// Probabilities closer than this are treated as equal.
pub const EQUAL_PROBABILITY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRow {
    pub representative: SpinConfiguration,
    /// `|j,j+a,...>` pattern of the representative.
    pub label: String,
    pub multiplicity: u32,
    pub per_member_probability: f64,
    pub total_probability: f64,
    pub clustering_score: f64,
    /// Index into the sector's dihedral classes (ordered by canonical form).
    pub dihedral_class: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitReport {
    pub n: u32,
    pub k: u32,
    /// Ascending by per-member probability.
    pub rows: Vec<OrbitRow>,
    /// Weight of the manifold inside this sector; rows are conditioned on it.
    pub sector_weight: f64,
}

/// Σ over pairs of up sites of `1 / ring_distance`.
pub fn clustering_score(c: SpinConfiguration) -> f64 {
    let n = c.n();
    let sites = c.up_sites();
    let mut score = 0.0;
    for (i, &a) in sites.iter().enumerate() {
        for &b in &sites[i + 1..] {
            let d = b - a;
            score += 1.0 / d.min(n - d) as f64;
        }
    }
    score
}

/// Diagonal of the equal-weight manifold mixture on `sector`, aggregated by
/// translation orbit and normalized within the sector.
pub fn orbit_probabilities(manifold: &GroundManifold, sector: &SectorBasis) -> Result<OrbitReport> {
    if sector.n() != manifold.n {
        return invalid("sector and manifold live on different rings");
    }
    let in_sector: Vec<_> = manifold
        .states
        .iter()
        .filter(|s| s.k == sector.k())
        .collect();
    if in_sector.is_empty() {
        return invalid(format!("manifold has no states with k = {}", sector.k()));
    }
    let mut probs = vec![0.0; sector.dim()];
    for s in &in_sector {
        if s.amplitudes.len() != sector.dim() {
            return invalid("manifold state does not match sector dimension");
        }
        for (p, a) in probs.iter_mut().zip(&s.amplitudes) {
            *p += a.norm_sqr();
        }
    }
    let sector_weight = in_sector.len() as f64 / manifold.degeneracy as f64;
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|p| *p /= total);

    let orbits = translation_orbits(sector);
    let classes = dihedral_classes(&orbits);
    let mut rows: Vec<OrbitRow> = orbits
        .iter()
        .map(|o| {
            let total_probability: f64 = o
                .members
                .iter()
                .map(|m| probs[sector.index_of(*m).expect("member in sector")])
                .sum();
            let canonical = o.representative.dihedral_canonical();
            OrbitRow {
                representative: o.representative,
                label: o.representative.offset_label(),
                multiplicity: o.period,
                per_member_probability: total_probability / o.period as f64,
                total_probability,
                clustering_score: clustering_score(o.representative),
                dihedral_class: classes
                    .iter()
                    .position(|c| c.canonical == canonical)
                    .expect("class exists"),
            }
        })
        .collect();
    rows.sort_by_key(|r| {
        (
            (r.per_member_probability / EQUAL_PROBABILITY_TOL).round() as i64,
            r.representative,
        )
    });
    Ok(OrbitReport {
        n: sector.n(),
        k: sector.k(),
        rows,
        sector_weight,
    })
}

/// Per-configuration probability of the manifold mixture in one sector,
/// before orbit aggregation.
pub fn configuration_probabilities(manifold: &GroundManifold, sector: &SectorBasis) -> Vec<f64> {
    let mut probs = vec![0.0; sector.dim()];
    for s in manifold.states.iter().filter(|s| s.k == sector.k()) {
        for (p, a) in probs.iter_mut().zip(&s.amplitudes) {
            *p += a.norm_sqr() / manifold.degeneracy as f64;
        }
    }
    probs
}

/// Two orbits related by reflection, with whether their probabilities match.
#[derive(Clone, Debug, PartialEq)]
pub struct DihedralPair {
    pub first: SpinConfiguration,
    pub second: SpinConfiguration,
    pub equal_probability: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpTable {
    pub report: OrbitReport,
    /// Spearman correlation between clustering score and probability.
    pub rank_correlation: Option<f64>,
    pub dihedral_pairs: Vec<DihedralPair>,
    /// Row pairs with equal probability that are not reflections of each other.
    pub accidental_ties: Vec<(SpinConfiguration, SpinConfiguration)>,
}

/// Ground manifold → orbit probabilities → scores → dihedral annotation.
/// For odd `n` the lower of the two occupied sectors is reported.
pub fn lp_table(n: u32, c: Coupling) -> Result<LpTable> {
    let manifold = ground_manifold(n, c, FieldSetting::ZERO, DEFAULT_DEGENERACY_TOL)?;
    let k = manifold.sectors()[0];
    let sector = enumerate_sector(n, k)?;
    let report = orbit_probabilities(&manifold, &sector)?;

    let scores: Vec<f64> = report.rows.iter().map(|r| r.clustering_score).collect();
    let probs: Vec<f64> = report
        .rows
        .iter()
        .map(|r| r.per_member_probability)
        .collect();
    let rank_correlation = spearman(&scores, &probs);

    let mut dihedral_pairs = Vec::new();
    let mut accidental_ties = Vec::new();
    for (i, a) in report.rows.iter().enumerate() {
        for b in &report.rows[i + 1..] {
            let equal = (a.per_member_probability - b.per_member_probability).abs()
                <= EQUAL_PROBABILITY_TOL;
            if a.dihedral_class == b.dihedral_class {
                dihedral_pairs.push(DihedralPair {
                    first: a.representative,
                    second: b.representative,
                    equal_probability: equal,
                });
            } else if equal {
                accidental_ties.push((a.representative, b.representative));
            }
        }
    }
    Ok(LpTable {
        report,
        rank_correlation,
        dihedral_pairs,
        accidental_ties,
    })
}

/// Ranks with ties resolved to their average position (1-based). Values
/// within `EQUAL_PROBABILITY_TOL` count as tied.
fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len()
            && (values[order[j + 1]] - values[order[i]]).abs() <= EQUAL_PROBABILITY_TOL
        {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            out[idx] = avg;
        }
        i = j + 1;
    }
    out
}

pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let mean = (x.len() as f64 + 1.0) / 2.0;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mean) * (b - mean);
        sxx += (a - mean).powi(2);
        syy += (b - mean).powi(2);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}
