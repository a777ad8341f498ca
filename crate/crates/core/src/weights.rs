//! Alperin–Fong weights for the fusion systems of G(e,r,n): radical
//! assignments, defect-zero counts for wreath products, weight functions up
//! to the ℤ/r action, and the core-tower bijection onto Irr(G(e,1,n)) labels.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{pow_u64, val, val_factorial};
use crate::error::{invalid, Error, Result};
use crate::partition::{
    core_tower_decompose, core_tower_reconstruct, enumerate_cores, hook_data, multipartitions, partitions_of,
    CoreTower, MultiPartition, Partition,
};
use crate::reflection::{irr_spectrum, GroupDescriptor};

/// Default upper bound on enumerated weight functions.
pub const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasicLabel {
    pub gamma: u32,
    pub c: Vec<u32>,
}

impl BasicLabel {
    pub fn level(&self) -> u32 {
        self.gamma + self.c.iter().sum::<u32>()
    }
}

/// Labels (γ, 𝔠) of level d: γ ≥ 0 and 𝔠 a composition of d − γ, sorted.
pub fn labels_at_level(d: u32) -> Vec<BasicLabel> {
    fn compositions(n: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for mut rest in compositions(n - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out: Vec<BasicLabel> = (0..=d)
        .flat_map(|gamma| compositions(d - gamma).into_iter().map(move |c| BasicLabel { gamma, c }))
        .collect();
    out.sort();
    out
}

/// |𝒜(𝔠)| = (ℓ−1)^{length of 𝔠}.
pub fn a_set_size(c: &[u32], ell: u64) -> u64 {
    pow_u64(ell - 1, c.len() as u32)
}

/// Σ |𝒜(𝔠)| over level-d labels, by enumeration.
pub fn level_census(ell: u64, d: u32) -> u64 {
    labels_at_level(d).iter().map(|l| a_set_size(&l.c, ell)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RadicalAssignment {
    pub f: BTreeMap<BasicLabel, u32>,
    pub e: u64,
    pub ell: u64,
    pub n: u32,
}

impl RadicalAssignment {
    pub fn weight(&self) -> u64 {
        self.f.iter().map(|(l, &m)| pow_u64(self.ell, l.level()) * m as u64).sum()
    }

    /// Out_𝓕(R) as ∏ N_{γ,𝔠} ≀ 𝔖_{f(γ,𝔠)}; each N has e·(ℓ−1)^t
    /// defect-zero characters.
    pub fn out_shape(&self) -> OutShape {
        OutShape {
            factors: self
                .f
                .iter()
                .map(|(l, &m)| OutFactor { label: l.clone(), multiplicity: m, irr0: self.e * a_set_size(&l.c, self.ell) })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutFactor {
    pub label: BasicLabel,
    pub multiplicity: u32,
    pub irr0: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutShape {
    pub factors: Vec<OutFactor>,
}

/// All maps f from labels to positive multiplicities with Σ ℓ^{level}·f = n.
pub fn radical_assignments(e: u64, ell: u64, n: u32) -> Vec<RadicalAssignment> {
    let mut labels = Vec::new();
    let mut d = 0;
    while pow_u64(ell, d) <= n as u64 {
        labels.extend(labels_at_level(d));
        d += 1;
    }
    fn rec(
        labels: &[BasicLabel],
        k: usize,
        rem: u64,
        ell: u64,
        cur: &mut BTreeMap<BasicLabel, u32>,
        out: &mut Vec<BTreeMap<BasicLabel, u32>>,
    ) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if k == labels.len() {
            return;
        }
        let w = pow_u64(ell, labels[k].level());
        for m in (0..=rem / w).rev() {
            if m > 0 {
                cur.insert(labels[k].clone(), m as u32);
            }
            rec(labels, k + 1, rem - m * w, ell, cur, out);
            cur.remove(&labels[k]);
        }
    }
    let mut out = Vec::new();
    rec(&labels, 0, n as u64, ell, &mut BTreeMap::new(), &mut out);
    let mut res: Vec<RadicalAssignment> =
        out.into_iter().map(|f| RadicalAssignment { f, e, ell, n }).collect();
    res.sort();
    res
}

/// All functions from `slots` weighted index positions to ℓ-cores with
/// Σ weight·|core| = n. Slots are (weight) values; the result lists, for each
/// function, the core at each slot.
fn core_functions(weights: &[u64], n: u64, cores: &[Vec<Partition>], cap: u128) -> Result<Vec<Vec<Partition>>> {
    fn rec(
        weights: &[u64],
        k: usize,
        rem: u64,
        cores: &[Vec<Partition>],
        cur: &mut Vec<Partition>,
        out: &mut Vec<Vec<Partition>>,
        cap: u128,
    ) -> Result<()> {
        if k == weights.len() {
            if rem == 0 {
                out.push(cur.clone());
                if out.len() as u128 > cap {
                    return Err(Error::CapExceeded { what: "weight functions".into(), needed: out.len() as u128, cap });
                }
            }
            return Ok(());
        }
        let w = weights[k];
        for s in 0..=rem / w {
            for c in &cores[s as usize] {
                cur.push(c.clone());
                rec(weights, k + 1, rem - s * w, cores, cur, out, cap)?;
                cur.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(weights, 0, n, cores, &mut Vec::new(), &mut out, cap)?;
    Ok(out)
}

fn cores_upto(n: u32, ell: u64) -> Vec<Vec<Partition>> {
    (0..=n).map(|k| enumerate_cores(k, ell as u32)).collect()
}

/// Σ over ⟨π⟩-orbits of the stabiliser order, for π a permutation of the
/// index set of order dividing r, acting on functions index ↦ core.
fn orbit_stabiliser_sum(funcs: &[Vec<Partition>], perm: &[usize], r: usize) -> (u64, u64) {
    let apply = |f: &Vec<Partition>, k: usize| -> Vec<Partition> {
        let mut g = f.clone();
        for _ in 0..k {
            let mut h = vec![Partition::empty(); g.len()];
            for (i, p) in g.iter().enumerate() {
                h[perm[i]] = p.clone();
            }
            g = h;
        }
        g
    };
    // By orbit representatives, and by the identity Σ_O |Stab| = (1/r)·Σ_x |Stab_x|².
    let (by_orbit, sq): (u64, u64) = funcs
        .par_iter()
        .map(|f| {
            let images: Vec<Vec<Partition>> = (0..r).map(|k| apply(f, k)).collect();
            let stab = images.iter().filter(|g| *g == f).count() as u64;
            let is_min = images.iter().all(|g| g >= f);
            (if is_min { stab } else { 0 }, stab * stab)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    (by_orbit, sq / r as u64)
}

/// Count of defect-zero characters of the wreath-type groups with the given
/// numbers of defect-zero inner characters: functions from the joint index
/// set to ℓ-cores with total size n, summed over orbits of ℤ/r with
/// stabiliser multiplicity. Without an explicit action, ℤ/r acts freely by
/// i ↦ i + m/r on the m indices.
pub fn wreath_irr0(irr0_sizes: &[u64], n: u32, ell: u64, r: u64, action: Option<&[usize]>) -> Result<u64> {
    let m: usize = irr0_sizes.iter().sum::<u64>() as usize;
    if r == 0 {
        return invalid("quotient order must be positive");
    }
    let perm: Vec<usize> = match action {
        Some(p) => {
            let mut seen = vec![false; m];
            if p.len() != m || p.iter().any(|&x| x >= m || std::mem::replace(&mut seen[x], true)) {
                return invalid("declared action is not a permutation of the index set");
            }
            let mut q: Vec<usize> = (0..m).collect();
            for _ in 0..r {
                q = q.iter().map(|&i| p[i]).collect();
            }
            if q.iter().enumerate().any(|(i, &x)| i != x) {
                return invalid(format!("declared action does not have order dividing {r}"));
            }
            p.to_vec()
        }
        None if r == 1 => (0..m).collect(),
        None => {
            if !m.is_multiple_of(r as usize) {
                return invalid(format!("no free action of order {r} on {m} indices"));
            }
            let step = m / r as usize;
            (0..m).map(|i| (i + step) % m).collect()
        }
    };
    let cores = cores_upto(n, ell);
    let funcs = core_functions(&vec![1; m], n as u64, &cores, DEFAULT_CAP)?;
    if r == 1 {
        return Ok(funcs.len() as u64);
    }
    let (by_orbit, by_square) = orbit_stabiliser_sum(&funcs, &perm, r as usize);
    if by_orbit != by_square {
        return Err(Error::Identity(format!("orbit sums disagree: {by_orbit} vs {by_square}")));
    }
    Ok(by_orbit)
}

/// Independent count of defect-zero characters of N ≀ 𝔖_n from the
/// character degrees of N: Irr(N ≀ 𝔖_n) is labelled by maps φ ↦ λ_φ with
/// Σ|λ_φ| = n and degree n!·∏ φ(1)^{|λ_φ|}·f^{λ_φ} / ∏ |λ_φ|!.
pub fn wreath_irr0_oracle(inner_degrees: &[u64], group_order: u64, n: u32, ell: u64) -> Result<u64> {
    if inner_degrees.len() > 8 || n > 8 {
        return Err(Error::CapExceeded { what: "wreath oracle".into(), needed: inner_degrees.len() as u128, cap: 8 });
    }
    let sum: u64 = inner_degrees.iter().map(|d| d * d).sum();
    if sum != group_order {
        return invalid("inner degrees do not match the group order");
    }
    // Defect zero iff ν(degree) = ν(|N|^n·n!), i.e. the sum below equals n·ν|N|.
    let target = (n * val(group_order as u128, ell)) as i64;
    let parts: Vec<Vec<(Partition, i64)>> = (0..=n)
        .map(|s| {
            partitions_of(s)
                .into_iter()
                .map(|p| {
                    let fv = crate::arith::val_big(&hook_data(&p).1, ell) as i64;
                    (p, fv - val_factorial(s as u64, ell) as i64)
                })
                .collect()
        })
        .collect();
    fn rec(k: usize, rem: u32, acc: i64, degs: &[u64], parts: &[Vec<(Partition, i64)>], ell: u64, target: i64) -> u64 {
        if k == degs.len() {
            return u64::from(rem == 0 && acc == target);
        }
        let mut count = 0;
        for s in 0..=rem {
            let phi = (val(degs[k] as u128, ell) * s) as i64;
            for (_, v) in &parts[s as usize] {
                count += rec(k + 1, rem - s, acc + phi + v, degs, parts, ell, target);
            }
        }
        count
    }
    Ok(rec(0, n, 0, inner_degrees, &parts, ell, target))
}

/// Alperin–Fong weight function: (residue i, level d, slot j) ↦ ℓ-core.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeightFunction {
    pub e: usize,
    pub ell: u32,
    /// Nonempty values only.
    pub w: BTreeMap<(usize, u32, u64), Partition>,
}

impl WeightFunction {
    pub fn total(&self) -> u64 {
        self.w
            .iter()
            .map(|(&(_, d, _), p)| (self.ell as u64).pow(d) * p.size() as u64)
            .sum()
    }

    /// Residue shift by k: the value at i moves to i + k.
    pub fn shift(&self, k: usize) -> Self {
        Self {
            e: self.e,
            ell: self.ell,
            w: self.w.iter().map(|(&(i, d, j), p)| (((i + k) % self.e, d, j), p.clone())).collect(),
        }
    }
}

fn check_params(e: u64, r: u64, ell: u64) -> Result<()> {
    crate::arith::require_prime(ell)?;
    if e == 0 || r == 0 || !e.is_multiple_of(r) {
        return invalid(format!("need r | e, got e = {e}, r = {r}"));
    }
    if e > 1 && !(ell - 1).is_multiple_of(e) {
        return invalid(format!("need e | ell - 1, got e = {e}, ell = {ell}"));
    }
    Ok(())
}

/// All weight functions on I = ⋃_d ℤ/e × {0..ℓ^d−1}.
pub fn weight_functions(e: u64, n: u32, ell: u64, cap: u128) -> Result<Vec<WeightFunction>> {
    let mut slots = Vec::new();
    let mut d = 0u32;
    while pow_u64(ell, d) <= n as u64 {
        for i in 0..e as usize {
            for j in 0..pow_u64(ell, d) {
                slots.push((i, d, j));
            }
        }
        d += 1;
    }
    let weights: Vec<u64> = slots.iter().map(|&(_, d, _)| pow_u64(ell, d)).collect();
    let funcs = core_functions(&weights, n as u64, &cores_upto(n, ell), cap)?;
    Ok(funcs
        .into_iter()
        .map(|f| WeightFunction {
            e: e as usize,
            ell: ell as u32,
            w: slots.iter().zip(f).filter(|(_, p)| !p.is_empty()).map(|(&s, p)| (s, p)).collect(),
        })
        .collect())
}

fn shift_orbit_sums(funcs: &[WeightFunction], e: usize, r: usize) -> (u64, u64) {
    let step = e / r;
    funcs
        .par_iter()
        .map(|w| {
            let images: Vec<WeightFunction> = (0..r).map(|k| w.shift(k * step)).collect();
            let stab = images.iter().filter(|g| *g == w).count() as u64;
            let is_min = images.iter().all(|g| g >= w);
            (if is_min { stab } else { 0 }, stab * stab)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

/// Number of 𝓕^{(r)}-weights: Σ over ℤ/r-orbits of weight functions of the
/// stabiliser order, ℤ/r shifting the residue by e/r.
pub fn weight_orbit_count(e: u64, r: u64, n: u32, ell: u64) -> Result<u64> {
    check_params(e, r, ell)?;
    if n == 0 {
        // G(e,r,0) is the trivial group; the single empty function is one weight.
        return Ok(1);
    }
    let funcs = weight_functions(e, n, ell, DEFAULT_CAP)?;
    let (by_orbit, sq) = shift_orbit_sums(&funcs, e as usize, r as usize);
    if by_orbit * r != sq {
        return Err(Error::Identity(format!("orbit sums disagree: {by_orbit}·{r} vs {sq}")));
    }
    Ok(by_orbit)
}

/// Fixed-point sums for the ℤ/r action on weight functions: (orbit count via
/// Burnside, Σ over orbits of stabiliser order via Σ_{g,h} |Fix(g) ∩ Fix(h)| / r).
pub fn weight_burnside(e: u64, r: u64, n: u32, ell: u64) -> Result<(u64, u64)> {
    check_params(e, r, ell)?;
    let funcs = weight_functions(e, n, ell, DEFAULT_CAP)?;
    let step = e as usize / r as usize;
    let r = r as usize;
    let fixed: Vec<Vec<bool>> = funcs
        .par_iter()
        .map(|w| (0..r).map(|k| w.shift(k * step) == *w).collect())
        .collect();
    let fix_g: u64 = (0..r).map(|k| fixed.iter().filter(|f| f[k]).count() as u64).sum();
    let mut fix_gh = 0u64;
    for g in 0..r {
        for h in 0..r {
            fix_gh += fixed.iter().filter(|f| f[g] && f[h]).count() as u64;
        }
    }
    Ok((fix_g / r as u64, fix_gh / r as u64))
}

/// The same count along radical assignments: for each f, functions from
/// ⋃_{f(γ,𝔠)>0} ℤ/e × 𝒜(𝔠) to ℓ-cores with total f(γ,𝔠) on each label.
pub fn radical_route_count(e: u64, r: u64, n: u32, ell: u64) -> Result<u64> {
    check_params(e, r, ell)?;
    let cores = cores_upto(n, ell);
    let step = (e / r) as usize;
    let mut total = 0u64;
    for ra in radical_assignments(e, ell, n) {
        // Slot list with a fixed lexicographic order: (label, residue, a ∈ 𝒜(𝔠)).
        let mut per_label: Vec<Vec<Vec<Partition>>> = Vec::new();
        let mut labels_slots: Vec<usize> = Vec::new();
        for (label, &m) in &ra.f {
            let a = a_set_size(&label.c, ell) as usize;
            let slots = e as usize * a;
            per_label.push(core_functions(&vec![1; slots], m as u64, &cores, DEFAULT_CAP)?);
            labels_slots.push(a);
        }
        // Cartesian product of per-label functions; the residue shift acts on
        // each label block separately.
        let mut combos: Vec<Vec<Vec<Partition>>> = vec![Vec::new()];
        for fs in &per_label {
            let mut next = Vec::new();
            for c in &combos {
                for f in fs {
                    let mut c2 = c.clone();
                    c2.push(f.clone());
                    next.push(c2);
                }
            }
            combos = next;
        }
        let shift = |c: &Vec<Vec<Partition>>, k: usize| -> Vec<Vec<Partition>> {
            c.iter()
                .zip(&labels_slots)
                .map(|(f, &a)| {
                    let mut g = vec![Partition::empty(); f.len()];
                    for (idx, p) in f.iter().enumerate() {
                        let (i, t) = (idx / a, idx % a);
                        g[((i + k) % e as usize) * a + t] = p.clone();
                    }
                    g
                })
                .collect()
        };
        for c in &combos {
            let images: Vec<_> = (0..r as usize).map(|k| shift(c, k * step)).collect();
            if images.iter().all(|g| g >= c) {
                total += images.iter().filter(|g| *g == c).count() as u64;
            }
        }
    }
    Ok(total)
}

/// μ ↦ w through the core tower, component i landing on residue i.
pub fn af_bijection(mu: &MultiPartition, e: u64, r: u64, ell: u64) -> Result<WeightFunction> {
    check_params(e, r, ell)?;
    if mu.e() != e as usize {
        return invalid(format!("multipartition has {} components, expected {e}", mu.e()));
    }
    let t = core_tower_decompose(mu, ell as u32);
    Ok(WeightFunction { e: e as usize, ell: ell as u32, w: t.entries })
}

pub fn af_bijection_inverse(w: &WeightFunction) -> Result<MultiPartition> {
    let t = CoreTower { e: w.e, ell: w.ell, entries: w.w.clone() };
    core_tower_reconstruct(&t, w.ell)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionCheck {
    pub tuples: u64,
    pub image_count: u64,
    pub round_trip: bool,
    pub equivariant: bool,
    pub image_is_weights: bool,
    pub pass: bool,
}

/// Exhaustive check over all e-tuples of total n: the map is injective with
/// image the full set of weight functions, inverts, and commutes with the
/// shift by e/r.
pub fn verify_bijection(e: u64, r: u64, n: u32, ell: u64) -> Result<BijectionCheck> {
    check_params(e, r, ell)?;
    let tuples = multipartitions(e as usize, n);
    let step = (e / r) as usize;
    let mut images = Vec::with_capacity(tuples.len());
    let mut round_trip = true;
    let mut equivariant = true;
    for mu in &tuples {
        let w = af_bijection(mu, e, r, ell)?;
        round_trip &= af_bijection_inverse(&w)? == *mu && w.total() == n as u64;
        equivariant &= af_bijection(&mu.shift(step), e, r, ell)? == w.shift(step);
        images.push(w);
    }
    images.sort();
    images.dedup();
    let mut all = weight_functions(e, n, ell, DEFAULT_CAP)?;
    all.sort();
    let image_is_weights = images == all;
    let image_count = images.len() as u64;
    let pass = round_trip && equivariant && image_is_weights && image_count == tuples.len() as u64;
    Ok(BijectionCheck { tuples: tuples.len() as u64, image_count, round_trip, equivariant, image_is_weights, pass })
}

/// Orbit-stabiliser count taken through the bijection image.
pub fn bijection_image_count(e: u64, r: u64, n: u32, ell: u64) -> Result<u64> {
    check_params(e, r, ell)?;
    let mut images = multipartitions(e as usize, n)
        .iter()
        .map(|mu| af_bijection(mu, e, r, ell))
        .collect::<Result<Vec<_>>>()?;
    images.sort();
    images.dedup();
    if n == 0 {
        return Ok(images.len() as u64);
    }
    Ok(shift_orbit_sums(&images, e as usize, r as usize).0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AwcReport {
    pub e: u64,
    pub r: u64,
    pub n: u32,
    pub ell: u64,
    pub weights: u64,
    pub radical_route: u64,
    pub bijection_route: u64,
    pub irr_total: u64,
    pub bijection_verified: bool,
    pub pass: bool,
}

/// bw(𝓕^{(r)}) = |Irr(G(e,r,n))|, with the weight count taken three ways.
pub fn awc_check(e: u64, r: u64, n: u32, ell: u64) -> Result<AwcReport> {
    check_params(e, r, ell)?;
    let weights = weight_orbit_count(e, r, n, ell)?;
    let radical_route = radical_route_count(e, r, n, ell)?;
    let bijection_route = bijection_image_count(e, r, n, ell)?;
    let g = if n == 0 {
        GroupDescriptor::trivial()
    } else {
        GroupDescriptor::Imprimitive { e, r, n: n as u64 }
    };
    let irr_total = irr_spectrum(&g, ell)?.total();
    // A sample of the bijection: all tuples of total min(n, 3).
    let bijection_verified = verify_bijection(e, r, n.min(3), ell)?.pass;
    let pass = weights == irr_total && radical_route == weights && bijection_route == weights && bijection_verified;
    Ok(AwcReport { e, r, n, ell, weights, radical_route, bijection_route, irr_total, bijection_verified, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(gamma: u32, c: &[u32]) -> BasicLabel {
        BasicLabel { gamma, c: c.to_vec() }
    }

    #[test]
    fn assignments() {
        let a = radical_assignments(1, 3, 1);
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].f, BTreeMap::from([(label(0, &[]), 1)]));
        assert_eq!(radical_assignments(1, 3, 3).len(), 3);
        let a4: Vec<_> = radical_assignments(1, 3, 4).into_iter().map(|a| a.f).collect();
        assert_eq!(a4.len(), 3);
        assert!(a4.contains(&BTreeMap::from([(label(0, &[]), 4)])));
        assert!(a4.contains(&BTreeMap::from([(label(0, &[]), 1), (label(0, &[1]), 1)])));
        assert!(a4.contains(&BTreeMap::from([(label(0, &[]), 1), (label(1, &[]), 1)])));
        for ra in radical_assignments(2, 3, 7) {
            assert_eq!(ra.weight(), 7);
        }
    }

    #[test]
    fn census() {
        assert_eq!(a_set_size(&[], 5), 1);
        assert_eq!(level_census(3, 1), 3);
        assert_eq!(level_census(3, 2), 9);
        assert_eq!(labels_at_level(2).len(), 4);
    }

    #[test]
    fn wreath_examples() {
        assert_eq!(wreath_irr0(&[2], 2, 3, 1, None).unwrap(), 5);
        assert_eq!(wreath_irr0(&[4], 0, 3, 1, None).unwrap(), 1);
        assert_eq!(wreath_irr0(&[3], 1, 3, 3, None).unwrap(), 1);
        assert!(wreath_irr0(&[3], 1, 3, 2, None).is_err());
        assert_eq!(wreath_irr0_oracle(&[1, 1], 2, 2, 3).unwrap(), 5);
        assert_eq!(wreath_irr0_oracle(&[1], 1, 2, 3).unwrap(), 2);
        assert_eq!(wreath_irr0_oracle(&[1, 1], 2, 1, 5).unwrap(), 2);
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight_orbit_count(2, 1, 2, 3).unwrap(), 5);
        assert_eq!(weight_orbit_count(1, 1, 3, 3).unwrap(), 3);
        assert_eq!(weight_orbit_count(2, 2, 0, 3).unwrap(), 1);
        let rep = awc_check(2, 2, 3, 3).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(awc_check(2, 1, 2, 3).unwrap().pass);
    }

    #[test]
    fn bijection_examples() {
        let mu = MultiPartition::new(vec![Partition::new(vec![2, 2]).unwrap()]).unwrap();
        let w = af_bijection(&mu, 1, 1, 3).unwrap();
        assert_eq!(w.w.len(), 2);
        assert_eq!(w.w[&(0, 0, 0)], Partition::new(vec![1]).unwrap());
        assert!(verify_bijection(2, 2, 4, 3).unwrap().pass);
    }

    #[test]
    fn burnside() {
        let (orbits, stab_sum) = weight_burnside(2, 2, 3, 3).unwrap();
        assert_eq!(stab_sum, weight_orbit_count(2, 2, 3, 3).unwrap());
        assert!(orbits <= stab_sum);
    }
}
