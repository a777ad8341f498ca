//! Defect spectra: finitely supported maps from defect to a count.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectSpectrum {
    map: BTreeMap<u32, u64>,
}

impl DefectSpectrum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(defect: u32, count: u64) -> Self {
        let mut s = Self::new();
        s.add(defect, count);
        s
    }

    pub fn add(&mut self, defect: u32, count: u64) {
        if count > 0 {
            *self.map.entry(defect).or_insert(0) += count;
        }
    }

    pub fn merge(&mut self, other: &DefectSpectrum) {
        for (&d, &c) in &other.map {
            self.add(d, c);
        }
    }

    pub fn get(&self, defect: u32) -> u64 {
        self.map.get(&defect).copied().unwrap_or(0)
    }

    /// The number of defect-zero entries.
    pub fn z(&self) -> u64 {
        self.get(0)
    }

    pub fn total(&self) -> u64 {
        self.map.values().sum()
    }

    pub fn shifted(&self, by: u32) -> Self {
        Self {
            map: self.map.iter().map(|(&d, &c)| (d + by, c)).collect(),
        }
    }

    pub fn scaled(&self, k: u64) -> Self {
        let mut s = Self::new();
        for (&d, &c) in &self.map {
            s.add(d, c * k);
        }
        s
    }

    /// Spectrum of a direct product: defects add, counts multiply.
    pub fn convolve(&self, other: &DefectSpectrum) -> Self {
        let mut s = Self::new();
        for (&d1, &c1) in &self.map {
            for (&d2, &c2) in &other.map {
                s.add(d1 + d2, c1 * c2);
            }
        }
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.map.iter().map(|(&d, &c)| (d, c))
    }

    pub fn support(&self) -> Vec<u32> {
        self.map.keys().copied().collect()
    }

    pub fn as_map(&self) -> &BTreeMap<u32, u64> {
        &self.map
    }

    /// Pointwise `self − other` over the union of supports, zeros dropped.
    pub fn difference(&self, other: &DefectSpectrum) -> BTreeMap<u32, i64> {
        let mut out = BTreeMap::new();
        for d in self.map.keys().chain(other.map.keys()) {
            let diff = self.get(*d) as i64 - other.get(*d) as i64;
            if diff != 0 {
                out.insert(*d, diff);
            }
        }
        out
    }
}

impl FromIterator<(u32, u64)> for DefectSpectrum {
    fn from_iter<I: IntoIterator<Item = (u32, u64)>>(iter: I) -> Self {
        let mut s = Self::new();
        for (d, c) in iter {
            s.add(d, c);
        }
        s
    }
}

impl fmt::Display for DefectSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}: {c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convolution_adds_defects() {
        let a: DefectSpectrum = [(0, 2), (1, 1)].into_iter().collect();
        let b: DefectSpectrum = [(0, 1), (2, 3)].into_iter().collect();
        let c = a.convolve(&b);
        assert_eq!(c.get(0), 2);
        assert_eq!(c.get(1), 1);
        assert_eq!(c.get(2), 6);
        assert_eq!(c.get(3), 3);
        assert_eq!(c.total(), a.total() * b.total());
    }

    #[test]
    fn zero_entries_are_dropped() {
        let mut s = DefectSpectrum::new();
        s.add(4, 0);
        assert!(s.support().is_empty());
        assert!(s.difference(&DefectSpectrum::new()).is_empty());
    }
}
