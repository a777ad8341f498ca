//! Integer partitions: hook lengths, symmetric-group degrees and defects,
//! ℓ-cores and ℓ-quotients on the abacus, and iterated core towers.
//!
//! The abacus always carries a bead count that is a multiple of ℓ, which
//! fixes the order of the quotient components.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, val, val_factorial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, rejecting parts that are zero or increasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidParams(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParams(format!("parts not weakly decreasing: {parts:?}")));
        }
        Ok(Self(parts))
    }

    /// Builds a partition from arbitrary nonnegative parts: zeros are dropped
    /// and the rest sorted.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.0.first().copied().unwrap_or(0);
        Self(
            (1..=width)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// Hook lengths listed row by row.
    pub fn hook_lengths(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.0[j as usize] - i as u32 - 1;
                hooks.push(arm + leg + 1);
            }
        }
        hooks
    }

    /// True if no hook has length ℓ (equivalently none divisible by ℓ).
    pub fn is_core(&self, ell: u32) -> bool {
        self.hook_lengths().iter().all(|&h| h % ell != 0)
    }

    /// Beta set with exactly `beads` beads; `beads` must be ≥ the length.
    pub fn beta_set(&self, beads: usize) -> Vec<u32> {
        assert!(beads >= self.len());
        (0..beads)
            .map(|i| {
                let part = self.0.get(i).copied().unwrap_or(0);
                part + (beads - 1 - i) as u32
            })
            .collect()
    }

    /// Inverse of [`Partition::beta_set`] for any finite set of naturals.
    pub fn from_beta_set(mut beta: Vec<u32>) -> Self {
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let n = beta.len();
        Self::from_parts(
            beta.iter()
                .enumerate()
                .map(|(i, &b)| b - (n - 1 - i) as u32)
                .collect(),
        )
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Hook lengths (sorted decreasingly) and the degree f^λ = |λ|!/∏ hooks.
pub fn hook_data(lambda: &Partition) -> (Vec<u32>, BigUint) {
    let mut hooks = lambda.hook_lengths();
    hooks.sort_unstable_by(|a, b| b.cmp(a));
    let prod = hooks.iter().fold(BigUint::from(1u32), |acc, &h| acc * h);
    let degree = factorial(lambda.size() as u64) / prod;
    (hooks, degree)
}

/// ν_ℓ(|λ|!) − ν_ℓ(f^λ), which equals Σ ν_ℓ(hook).
pub fn defect_sym(lambda: &Partition, ell: u32) -> u32 {
    lambda.hook_lengths().iter().map(|&h| val(h as u128, ell as u64)).sum()
}

/// ν_ℓ(f^λ).
pub fn degree_valuation(lambda: &Partition, ell: u32) -> u32 {
    val_factorial(lambda.size() as u64, ell as u64) - defect_sym(lambda, ell)
}

pub fn enumerate_cores(n: u32, ell: u32) -> Vec<Partition> {
    partitions_of(n).into_iter().filter(|p| p.is_core(ell)).collect()
}

pub fn count_cores(n: u32, ell: u32) -> usize {
    enumerate_cores(n, ell).len()
}

fn abacus_beads(len: usize, ell: usize) -> usize {
    len.div_ceil(ell) * ell
}

/// ℓ-core and ℓ-quotient read off an abacus whose bead count is a multiple of ℓ.
pub fn core_and_quotient(lambda: &Partition, ell: u32) -> (Partition, Vec<Partition>) {
    let l = ell as usize;
    let beads = abacus_beads(lambda.len(), l);
    let beta = lambda.beta_set(beads);
    let mut runners: Vec<Vec<u32>> = vec![Vec::new(); l];
    for &b in &beta {
        runners[(b % ell) as usize].push(b / ell);
    }
    let mut core_beta = Vec::with_capacity(beads);
    let mut quotient = Vec::with_capacity(l);
    for (j, runner) in runners.iter().enumerate() {
        quotient.push(Partition::from_beta_set(runner.clone()));
        for k in 0..runner.len() as u32 {
            core_beta.push(k * ell + j as u32);
        }
    }
    (Partition::from_beta_set(core_beta), quotient)
}

/// Inverse of [`core_and_quotient`]; the core must be an ℓ-core.
pub fn from_core_and_quotient(core: &Partition, quotient: &[Partition], ell: u32) -> Result<Partition> {
    let l = ell as usize;
    if quotient.len() != l {
        return Err(Error::InvalidParams(format!(
            "quotient has {} components, expected {l}",
            quotient.len()
        )));
    }
    if !core.is_core(ell) {
        return Err(Error::InvalidTower(format!("{core} is not a {ell}-core")));
    }
    let longest = quotient.iter().map(Partition::len).max().unwrap_or(0);
    let beads = l * (core.len() + longest + 1);
    let core_beta = core.beta_set(beads);
    let mut counts = vec![0usize; l];
    for &b in &core_beta {
        counts[(b % ell) as usize] += 1;
    }
    let mut beta = Vec::with_capacity(beads);
    for (j, q) in quotient.iter().enumerate() {
        let c = counts[j];
        debug_assert!(c >= q.len());
        for b in q.beta_set(c) {
            beta.push(b * ell + j as u32);
        }
    }
    Ok(Partition::from_beta_set(beta))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiPartition {
    components: Vec<Partition>,
}

impl MultiPartition {
    pub fn new(components: Vec<Partition>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParams("a multipartition needs e ≥ 1 components".into()));
        }
        Ok(Self { components })
    }

    pub fn empty(e: usize) -> Self {
        Self { components: vec![Partition::empty(); e.max(1)] }
    }

    pub fn e(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn total(&self) -> u32 {
        self.components.iter().map(Partition::size).sum()
    }

    /// Cyclic shift: component i of the result is component i − k of self.
    pub fn shift(&self, k: usize) -> Self {
        let e = self.e();
        Self {
            components: (0..e).map(|i| self.components[(i + e - k % e) % e].clone()).collect(),
        }
    }
}

/// All e-tuples of partitions with total size n.
pub fn multipartitions(e: usize, n: u32) -> Vec<MultiPartition> {
    let by_size: Vec<Vec<Partition>> = (0..=n).map(partitions_of).collect();
    fn rec(
        i: usize,
        e: usize,
        rem: u32,
        by_size: &[Vec<Partition>],
        cur: &mut Vec<Partition>,
        out: &mut Vec<MultiPartition>,
    ) {
        if i + 1 == e {
            for p in &by_size[rem as usize] {
                cur.push(p.clone());
                out.push(MultiPartition { components: cur.clone() });
                cur.pop();
            }
            return;
        }
        for k in 0..=rem {
            for p in &by_size[k as usize] {
                cur.push(p.clone());
                rec(i + 1, e, rem - k, by_size, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, e, n, &by_size, &mut Vec::new(), &mut out);
    out
}

/// Key of a core-tower entry: (component index, level d, slot j < ℓ^d).
pub type TowerKey = (usize, u32, u64);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreTower {
    pub e: usize,
    pub ell: u32,
    /// Nonempty entries only.
    pub entries: BTreeMap<TowerKey, Partition>,
}

impl CoreTower {
    pub fn get(&self, key: TowerKey) -> Partition {
        self.entries.get(&key).cloned().unwrap_or_default()
    }

    /// Σ ℓ^d · |entry|.
    pub fn weight(&self) -> u64 {
        self.entries
            .iter()
            .map(|(&(_, d, _), p)| (self.ell as u64).pow(d) * p.size() as u64)
            .sum()
    }
}

pub fn core_tower_decompose(mu: &MultiPartition, ell: u32) -> CoreTower {
    let mut entries = BTreeMap::new();
    for (i, lambda) in mu.components().iter().enumerate() {
        let mut frontier = vec![(0u32, 0u64, lambda.clone())];
        while let Some((d, j, part)) = frontier.pop() {
            if part.is_empty() {
                continue;
            }
            let (core, quotient) = core_and_quotient(&part, ell);
            if !core.is_empty() {
                entries.insert((i, d, j), core);
            }
            for (k, q) in quotient.into_iter().enumerate() {
                frontier.push((d + 1, j * ell as u64 + k as u64, q));
            }
        }
    }
    CoreTower { e: mu.e(), ell, entries }
}

pub fn core_tower_reconstruct(tower: &CoreTower, ell: u32) -> Result<MultiPartition> {
    if tower.ell != ell {
        return Err(Error::InvalidTower(format!("tower built for ell = {}, asked for {ell}", tower.ell)));
    }
    for (key, p) in &tower.entries {
        if key.0 >= tower.e {
            return Err(Error::InvalidTower(format!("component index {} out of range", key.0)));
        }
        if key.2 >= (ell as u64).pow(key.1) {
            return Err(Error::InvalidTower(format!("slot {} out of range at level {}", key.2, key.1)));
        }
        if !p.is_core(ell) {
            return Err(Error::InvalidTower(format!("entry {key:?} = {p} is not a {ell}-core")));
        }
    }
    fn rebuild(tower: &CoreTower, i: usize, d: u32, j: u64) -> Result<Partition> {
        let ell = tower.ell as u64;
        let has_below = tower
            .entries
            .keys()
            .any(|&(i2, d2, j2)| i2 == i && d2 > d && j2 / ell.pow(d2 - d) == j);
        let core = tower.get((i, d, j));
        if !has_below {
            return Ok(core);
        }
        let quotient = (0..ell)
            .map(|k| rebuild(tower, i, d + 1, j * ell + k))
            .collect::<Result<Vec<_>>>()?;
        from_core_and_quotient(&core, &quotient, tower.ell)
    }
    let comps = (0..tower.e)
        .map(|i| rebuild(tower, i, 0, 0))
        .collect::<Result<Vec<_>>>()?;
    MultiPartition::new(comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn hook_examples() {
        assert_eq!(hook_data(&p(&[])), (vec![], BigUint::from(1u32)));
        assert_eq!(hook_data(&p(&[2, 1])), (vec![3, 1, 1], BigUint::from(2u32)));
        assert_eq!(hook_data(&p(&[2, 2])), (vec![3, 2, 2, 1], BigUint::from(2u32)));
    }

    #[test]
    fn core_examples() {
        let (core, quot) = core_and_quotient(&p(&[2, 2]), 3);
        assert_eq!(core, p(&[1]));
        assert_eq!(quot.iter().map(Partition::size).sum::<u32>(), 1);
        assert_eq!(core_and_quotient(&p(&[3]), 3).0, p(&[]));
        let (core, quot) = core_and_quotient(&p(&[]), 5);
        assert!(core.is_empty() && quot.iter().all(Partition::is_empty));
    }

    #[test]
    fn core_counts() {
        assert_eq!(count_cores(0, 3), 1);
        assert_eq!(count_cores(3, 3), 0);
        assert_eq!(count_cores(2, 3), 2);
    }

    #[test]
    fn defects() {
        assert_eq!(defect_sym(&p(&[1]), 7), 0);
        for lam in partitions_of(3) {
            assert_eq!(defect_sym(&lam, 3), 1);
        }
        let lam = p(&[3, 1, 1]);
        assert_eq!(hook_data(&lam).1, BigUint::from(6u32));
        assert_eq!(defect_sym(&lam, 5), 1);
    }

    #[test]
    fn tower_example() {
        let mu = MultiPartition::new(vec![p(&[2, 2])]).unwrap();
        let t = core_tower_decompose(&mu, 3);
        assert_eq!(t.get((0, 0, 0)), p(&[1]));
        let level1: Vec<_> = t.entries.iter().filter(|(k, _)| k.1 == 1).collect();
        assert_eq!(level1.len(), 1);
        assert_eq!(level1[0].1, &p(&[1]));
        assert_eq!(t.entries.len(), 2);
        assert_eq!(t.weight(), 4);
        assert_eq!(core_tower_reconstruct(&t, 3).unwrap(), mu);
    }

    #[test]
    fn reconstruct_rejects_non_core() {
        let mut entries = BTreeMap::new();
        entries.insert((0usize, 0u32, 0u64), p(&[3]));
        let t = CoreTower { e: 1, ell: 3, entries };
        assert!(matches!(core_tower_reconstruct(&t, 3), Err(Error::InvalidTower(_))));
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }

    #[test]
    fn multipartition_counts() {
        assert_eq!(multipartitions(2, 3).len(), 10);
        assert_eq!(multipartitions(1, 5).len(), 7);
        assert_eq!(multipartitions(3, 0).len(), 1);
    }
}
