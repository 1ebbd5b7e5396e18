//! Spin configurations on a ring, fixed-magnetization sectors and the
//! translation / reflection structure of those sectors.

use std::fmt;

use crate::error::{invalid, Result};

/// Largest ring handled anywhere in the crate.
pub const MAX_SITES: u32 = 20;

/// `n` binary digits on a ring; bit `i` set means site `i` is spin up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinConfiguration {
    bits: u32,
    n: u32,
}

impl SpinConfiguration {
    pub fn new(bits: u32, n: u32) -> Result<Self> {
        if n == 0 || n > MAX_SITES {
            return invalid(format!("ring length {n} outside 1..={MAX_SITES}"));
        }
        if bits & !mask(n) != 0 {
            return invalid(format!("bits {bits:#b} exceed ring length {n}"));
        }
        Ok(Self { bits, n })
    }

    /// Builds a configuration from a list of up sites (0-based).
    pub fn from_sites(sites: &[u32], n: u32) -> Result<Self> {
        let mut bits = 0u32;
        for &s in sites {
            if s >= n {
                return invalid(format!("site {s} outside ring of length {n}"));
            }
            bits |= 1 << s;
        }
        Self::new(bits, n)
    }

    pub(crate) fn from_raw(bits: u32, n: u32) -> Self {
        debug_assert!(bits & !mask(n) == 0);
        Self { bits, n }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn up_count(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_up(self, site: u32) -> bool {
        (self.bits >> site) & 1 == 1
    }

    pub fn up_sites(self) -> Vec<u32> {
        (0..self.n).filter(|&i| self.is_up(i)).collect()
    }

    /// Cyclic shift moving the spin at site `i` to site `i + t`.
    pub fn rotate(self, t: u32) -> Self {
        let t = t % self.n;
        if t == 0 {
            return self;
        }
        let bits = ((self.bits << t) | (self.bits >> (self.n - t))) & mask(self.n);
        Self { bits, n: self.n }
    }

    /// Mirror image, site `i` goes to site `(n - i) mod n`.
    pub fn reflect(self) -> Self {
        let mut bits = 0;
        for i in 0..self.n {
            if self.is_up(i) {
                bits |= 1 << ((self.n - i) % self.n);
            }
        }
        Self { bits, n: self.n }
    }

    /// Smallest `t > 0` with `rotate(t) == self`.
    pub fn period(self) -> u32 {
        (1..=self.n)
            .find(|&t| self.n.is_multiple_of(t) && self.rotate(t) == self)
            .unwrap_or(self.n)
    }

    /// Minimal configuration over all rotations.
    pub fn translation_canonical(self) -> Self {
        (0..self.n).map(|t| self.rotate(t)).min().unwrap_or(self)
    }

    /// Minimal configuration over all rotations and reflections.
    pub fn dihedral_canonical(self) -> Self {
        self.translation_canonical()
            .min(self.reflect().translation_canonical())
    }

    /// Offset pattern relative to the first up site, written with 1-based
    /// ring notation, e.g. `|j,j+1,j+3>`.
    pub fn offset_label(self) -> String {
        let sites = self.up_sites();
        let Some(&first) = sites.first() else {
            return "|0>".to_string();
        };
        let parts: Vec<String> = sites
            .iter()
            .map(|&s| match s - first {
                0 => "j".to_string(),
                d => format!("j+{d}"),
            })
            .collect();
        format!("|{}>", parts.join(","))
    }
}

impl fmt::Display for SpinConfiguration {
    /// Site 0 is printed first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            f.write_str(if self.is_up(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn mask(n: u32) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub fn rotate(c: SpinConfiguration, t: u32) -> SpinConfiguration {
    c.rotate(t)
}

pub fn reflect(c: SpinConfiguration) -> SpinConfiguration {
    c.reflect()
}

/// All configurations of `n` sites with exactly `k` up spins, in ascending
/// integer order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorBasis {
    n: u32,
    k: u32,
    configs: Vec<SpinConfiguration>,
}

impl SectorBasis {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.configs.len()
    }

    pub fn configs(&self) -> &[SpinConfiguration] {
        &self.configs
    }

    pub fn config(&self, index: usize) -> SpinConfiguration {
        self.configs[index]
    }

    pub fn index_of(&self, c: SpinConfiguration) -> Option<usize> {
        if c.n != self.n {
            return None;
        }
        self.index_of_bits(c.bits)
    }

    pub fn index_of_bits(&self, bits: u32) -> Option<usize> {
        self.configs.binary_search_by_key(&bits, |c| c.bits).ok()
    }
}

pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn enumerate_sector(n: u32, k: u32) -> Result<SectorBasis> {
    if n == 0 || n > MAX_SITES {
        return invalid(format!("ring length {n} outside 1..={MAX_SITES}"));
    }
    if k > n {
        return invalid(format!("up count {k} exceeds ring length {n}"));
    }
    let mut configs = Vec::with_capacity(binomial(n, k) as usize);
    if k == 0 {
        configs.push(SpinConfiguration::from_raw(0, n));
    } else {
        // Gosper's hack walks popcount-k words in increasing order.
        let limit = 1u64 << n;
        let mut v: u64 = (1u64 << k) - 1;
        while v < limit {
            configs.push(SpinConfiguration::from_raw(v as u32, n));
            let c = v & v.wrapping_neg();
            let r = v + c;
            v = (((r ^ v) >> 2) / c) | r;
        }
    }
    Ok(SectorBasis { n, k, configs })
}

/// Set of distinct rotations of one configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationOrbit {
    pub representative: SpinConfiguration,
    pub period: u32,
    /// `members[t] == representative.rotate(t)`.
    pub members: Vec<SpinConfiguration>,
}

/// Partitions a sector into translation orbits, ordered by representative.
pub fn translation_orbits(basis: &SectorBasis) -> Vec<TranslationOrbit> {
    let mut seen = vec![false; basis.dim()];
    let mut orbits = Vec::new();
    // Ascending scan: the first unseen member of an orbit is its minimum.
    for (i, &c) in basis.configs.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let period = c.period();
        let members: Vec<_> = (0..period).map(|t| c.rotate(t)).collect();
        for m in &members {
            if let Some(j) = basis.index_of(*m) {
                seen[j] = true;
            }
        }
        orbits.push(TranslationOrbit {
            representative: c,
            period,
            members,
        });
    }
    orbits
}

/// Union of translation orbits closed under reflection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralClass {
    pub canonical: SpinConfiguration,
    /// Representatives of the one or two translation orbits in the class.
    pub orbits: Vec<SpinConfiguration>,
}

impl DihedralClass {
    pub fn is_self_reflective(&self) -> bool {
        self.orbits.len() == 1
    }
}

/// Groups translation orbits by reflection, ordered by canonical form.
pub fn dihedral_classes(orbits: &[TranslationOrbit]) -> Vec<DihedralClass> {
    let mut classes: Vec<DihedralClass> = Vec::new();
    for orbit in orbits {
        let canonical = orbit.representative.dihedral_canonical();
        match classes.iter_mut().find(|c| c.canonical == canonical) {
            Some(class) => class.orbits.push(orbit.representative),
            None => classes.push(DihedralClass {
                canonical,
                orbits: vec![orbit.representative],
            }),
        }
    }
    classes.sort_by_key(|c| c.canonical);
    classes
}
