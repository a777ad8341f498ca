//! Reflection-group data: degrees, generalized degrees of twisted cosets,
//! order polynomials and their ℓ-adic valuations, relative Weyl groups,
//! Sylow orders, defect spectra of G(e,r,n) and prime classification.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{mult_order, pow_mod, val, val_big, val_factorial, val_q_pow_minus_one};
use crate::error::{invalid, Error, Result};
use crate::partition::{defect_sym, multipartitions, partitions_of, MultiPartition};
use crate::spectrum::DefectSpectrum;
use crate::tables;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum WeylType {
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl WeylType {
    pub fn degrees(self) -> &'static [u64] {
        match self {
            WeylType::G2 => &[2, 6],
            WeylType::F4 => &[2, 6, 8, 12],
            WeylType::E6 => &[2, 5, 6, 8, 9, 12],
            WeylType::E7 => &[2, 6, 8, 10, 12, 14, 18],
            WeylType::E8 => &[2, 8, 12, 14, 18, 20, 24, 30],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WeylType::G2 => "G2",
            WeylType::F4 => "F4",
            WeylType::E6 => "E6",
            WeylType::E7 => "E7",
            WeylType::E8 => "E8",
        }
    }

    /// Shephard–Todd number (G2 is the imprimitive G(6,6,2)).
    pub fn st_number(self) -> Option<u32> {
        match self {
            WeylType::G2 => None,
            WeylType::F4 => Some(28),
            WeylType::E6 => Some(35),
            WeylType::E7 => Some(36),
            WeylType::E8 => Some(37),
        }
    }
}

pub const AGUADE_INDICES: [u32; 4] = [12, 29, 31, 34];

pub fn aguade_degrees(index: u32) -> Option<&'static [u64]> {
    match index {
        12 => Some(&[6, 8]),
        29 => Some(&[4, 8, 12, 20]),
        31 => Some(&[8, 12, 20, 24]),
        34 => Some(&[6, 12, 18, 24, 30, 42]),
        _ => None,
    }
}

/// The prime attached to an Aguadé group.
pub fn aguade_prime(index: u32) -> Option<u64> {
    match index {
        12 => Some(3),
        29 | 31 => Some(5),
        34 => Some(7),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GroupDescriptor {
    Imprimitive { e: u64, r: u64, n: u64 },
    Symmetric { n: u64 },
    ExceptionalWeyl(WeylType),
    Aguade { index: u32 },
    /// Flat product; the empty product is the trivial group.
    Product(Vec<(GroupDescriptor, u32)>),
}

impl GroupDescriptor {
    pub fn imprimitive(e: u64, r: u64, n: u64) -> Result<Self> {
        let g = GroupDescriptor::Imprimitive { e, r, n };
        g.validate()?;
        Ok(g)
    }

    pub fn trivial() -> Self {
        GroupDescriptor::Product(Vec::new())
    }

    /// Builds a flat product, merging nested products and dropping trivial factors.
    pub fn product(factors: Vec<(GroupDescriptor, u32)>) -> Self {
        let mut flat: Vec<(GroupDescriptor, u32)> = Vec::new();
        for (g, m) in factors {
            if m == 0 {
                continue;
            }
            match g {
                GroupDescriptor::Product(inner) => {
                    for (h, k) in inner {
                        push_factor(&mut flat, h, k * m);
                    }
                }
                other => push_factor(&mut flat, other, m),
            }
        }
        if flat.len() == 1 && flat[0].1 == 1 {
            return flat.pop().unwrap().0;
        }
        GroupDescriptor::Product(flat)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupDescriptor::Imprimitive { e, r, n } => {
                if e == 0 || r == 0 || n == 0 || e % r != 0 {
                    return invalid(format!("G({e},{r},{n}) needs e, r, n ≥ 1 and r | e"));
                }
                Ok(())
            }
            GroupDescriptor::Symmetric { n } => {
                if n == 0 {
                    return invalid("symmetric group needs n ≥ 1");
                }
                Ok(())
            }
            GroupDescriptor::ExceptionalWeyl(_) => Ok(()),
            GroupDescriptor::Aguade { index } => {
                if aguade_degrees(index).is_none() {
                    return invalid(format!("no Aguadé group G{index}"));
                }
                Ok(())
            }
            GroupDescriptor::Product(ref fs) => {
                for (g, _) in fs {
                    if matches!(g, GroupDescriptor::Product(_)) {
                        return invalid("nested product");
                    }
                    g.validate()?;
                }
                Ok(())
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, GroupDescriptor::Product(fs) if fs.is_empty())
    }

    /// Factors with multiplicities expanded, in order.
    pub fn flat_factors(&self) -> Vec<GroupDescriptor> {
        match self {
            GroupDescriptor::Product(fs) => fs
                .iter()
                .flat_map(|(g, m)| std::iter::repeat_n(g.clone(), *m as usize))
                .collect(),
            g => vec![g.clone()],
        }
    }

    /// Equality up to reordering of product factors.
    pub fn same_factors(&self, other: &GroupDescriptor) -> bool {
        let mut a = self.flat_factors();
        let mut b = other.flat_factors();
        a.sort();
        b.sort();
        a == b
    }

    pub fn rank(&self) -> usize {
        degrees(self).len()
    }

    pub fn order(&self) -> BigUint {
        degrees(self).iter().fold(BigUint::one(), |acc, &d| acc * d)
    }
}

fn push_factor(flat: &mut Vec<(GroupDescriptor, u32)>, g: GroupDescriptor, m: u32) {
    if g.is_trivial() {
        return;
    }
    match flat.last_mut() {
        Some((last, k)) if *last == g => *k += m,
        _ => flat.push((g, m)),
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Imprimitive { e, r, n } => write!(f, "G({e},{r},{n})"),
            GroupDescriptor::Symmetric { n } => write!(f, "S{n}"),
            GroupDescriptor::ExceptionalWeyl(t) => write!(f, "W({})", t.name()),
            GroupDescriptor::Aguade { index } => write!(f, "G{index}"),
            GroupDescriptor::Product(fs) if fs.is_empty() => write!(f, "1"),
            GroupDescriptor::Product(fs) => {
                for (i, (g, m)) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    if *m == 1 {
                        write!(f, "{g}")?;
                    } else {
                        write!(f, "{g}^{m}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// Degrees of the basic invariants. 𝔖_n acts on its permutation lattice, so
/// its degrees are 1, …, n.
pub fn degrees(g: &GroupDescriptor) -> Vec<u64> {
    match *g {
        GroupDescriptor::Imprimitive { e, r, n } => {
            let mut ds: Vec<u64> = (1..n).map(|k| k * e).collect();
            ds.push(n * e / r);
            ds
        }
        GroupDescriptor::Symmetric { n } => (1..=n).collect(),
        GroupDescriptor::ExceptionalWeyl(t) => t.degrees().to_vec(),
        GroupDescriptor::Aguade { index } => aguade_degrees(index).unwrap_or(&[]).to_vec(),
        GroupDescriptor::Product(ref fs) => fs
            .iter()
            .flat_map(|(h, m)| {
                let ds = degrees(h);
                std::iter::repeat_n(ds, *m as usize).flatten()
            })
            .collect(),
    }
}

/// A root of unity exp(2πi·num/den), stored reduced with 0 ≤ num < den.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0);
        let n = num.rem_euclid(den as i64) as u64;
        let g = n.gcd(&den);
        Self { num: n / g, den: den / g }
    }

    pub fn one() -> Self {
        Self { num: 0, den: 1 }
    }

    pub fn primitive(order: u64) -> Self {
        Self::new(1, order.max(1))
    }

    pub fn order(self) -> u64 {
        self.den
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn is_one(self) -> bool {
        self.num == 0
    }

    pub fn mul(self, other: Self) -> Self {
        let den = self.den.lcm(&other.den);
        let num = self.num * (den / self.den) + other.num * (den / other.den);
        Self::new(num as i64, den)
    }

    pub fn pow(self, k: i64) -> Self {
        let num = (self.num as i128 * k as i128).rem_euclid(self.den as i128);
        Self::new(num as i64, self.den)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "z{}^{}", self.den, self.num)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwistDescriptor {
    Trivial,
    /// Multiplication by the primitive root of unity of the given order.
    Scalar { order: u64 },
    /// Cycles permuting consecutive flat factors of a product.
    CycleTwist { lengths: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReflectionCoset {
    pub group: GroupDescriptor,
    pub twist: TwistDescriptor,
}

impl ReflectionCoset {
    pub fn untwisted(group: GroupDescriptor) -> Self {
        Self { group, twist: TwistDescriptor::Trivial }
    }

    pub fn scalar(group: GroupDescriptor, order: u64) -> Self {
        Self { group, twist: TwistDescriptor::Scalar { order } }
    }

    /// Blocks of identical factors permuted cyclically by the twist.
    pub fn cycle_blocks(&self) -> Result<Vec<(GroupDescriptor, u32)>> {
        let flat = self.group.flat_factors();
        let lengths: Vec<u32> = match &self.twist {
            TwistDescriptor::CycleTwist { lengths } => lengths.clone(),
            _ => vec![1; flat.len()],
        };
        if lengths.contains(&0) {
            return invalid("cycle of length zero");
        }
        if lengths.iter().map(|&m| m as usize).sum::<usize>() != flat.len() {
            return invalid(format!(
                "cycle lengths {lengths:?} do not cover the {} factors of {}",
                flat.len(),
                self.group
            ));
        }
        let mut blocks = Vec::new();
        let mut pos = 0usize;
        for m in lengths {
            let block = &flat[pos..pos + m as usize];
            if block.iter().any(|g| *g != block[0]) {
                return invalid(format!("cycle over non-identical factors in {}", self.group));
            }
            blocks.push((block[0].clone(), m));
            pos += m as usize;
        }
        Ok(blocks)
    }
}

impl fmt::Display for ReflectionCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.twist {
            TwistDescriptor::Trivial => write!(f, "{}", self.group),
            TwistDescriptor::Scalar { order } => write!(f, "{}.z{order}", self.group),
            TwistDescriptor::CycleTwist { lengths } => write!(f, "{}.cyc{lengths:?}", self.group),
        }
    }
}

/// One factor x^d − ε of an order polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrderFactor {
    pub d: u64,
    pub eps: RootOfUnity,
}

/// Order polynomial O_x(Wφ) = ∏ (x^{d} − ε) in factored form. Cycle blocks are
/// already collapsed, so a cycle of length m contributes x^{m·d} − ε.
pub fn order_factors(c: &ReflectionCoset) -> Result<Vec<OrderFactor>> {
    c.group.validate()?;
    match c.twist {
        TwistDescriptor::Trivial => Ok(degrees(&c.group)
            .into_iter()
            .map(|d| OrderFactor { d, eps: RootOfUnity::one() })
            .collect()),
        TwistDescriptor::Scalar { order } => {
            if order == 0 {
                return invalid("scalar twist of order 0");
            }
            let z = RootOfUnity::primitive(order);
            Ok(degrees(&c.group)
                .into_iter()
                .map(|d| OrderFactor { d, eps: z.pow(-(d as i64)) })
                .collect())
        }
        TwistDescriptor::CycleTwist { .. } => {
            let mut out = Vec::new();
            for (g, m) in c.cycle_blocks()? {
                for d in degrees(&g) {
                    out.push(OrderFactor { d: d * m as u64, eps: RootOfUnity::one() });
                }
            }
            Ok(out)
        }
    }
}

/// Generalized degrees (d_i, ε_i) of the coset.
pub fn generalized_degrees(c: &ReflectionCoset) -> Result<Vec<(u64, RootOfUnity)>> {
    match c.twist {
        TwistDescriptor::CycleTwist { .. } => {
            let mut out = Vec::new();
            for (g, m) in c.cycle_blocks()? {
                for d in degrees(&g) {
                    for k in 0..m {
                        out.push((d, RootOfUnity::new(k as i64, m as u64)));
                    }
                }
            }
            out.sort();
            Ok(out)
        }
        _ => {
            let mut out: Vec<_> = order_factors(c)?.into_iter().map(|f| (f.d, f.eps)).collect();
            out.sort();
            Ok(out)
        }
    }
}

/// Integer coefficients of O_x(Wφ), constant term first. Fails if the
/// polynomial does not have rational coefficients.
pub fn order_polynomial(c: &ReflectionCoset) -> Result<Vec<BigInt>> {
    let factors = generalized_degrees(c)?;
    let m = factors.iter().fold(1u64, |acc, (_, eps)| acc.lcm(&eps.order()));
    let m_us = m as usize;
    // Coefficients live in Z[x] ⊗ Z[t]/(t^m − 1), t a primitive m-th root.
    let mut poly: Vec<Vec<BigInt>> = vec![unit_cyclo(m_us)];
    for (d, eps) in factors {
        let k = (eps.num() * (m / eps.order())) as usize;
        let d = d as usize;
        let mut next = vec![vec![BigInt::zero(); m_us]; poly.len() + d];
        for (i, coeff) in poly.iter().enumerate() {
            for (j, c0) in coeff.iter().enumerate() {
                if c0.is_zero() {
                    continue;
                }
                next[i + d][j] += c0;
                next[i][(j + k) % m_us] -= c0;
            }
        }
        poly = next;
    }
    let phi = cyclotomic(m);
    poly.into_iter()
        .map(|coeff| {
            let reduced = reduce_mod(&coeff, &phi);
            if reduced.iter().skip(1).any(|c| !c.is_zero()) {
                Err(Error::Unsupported(format!("order polynomial of {c} is not rational")))
            } else {
                Ok(reduced.first().cloned().unwrap_or_default())
            }
        })
        .collect()
}

fn unit_cyclo(m: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); m];
    v[0] = BigInt::one();
    v
}

/// Φ_m as coefficients, constant term first.
fn cyclotomic(m: u64) -> Vec<BigInt> {
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    let mut p = num;
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = exact_div(&p, &cyclotomic(d));
        }
    }
    p
}

fn exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return vec![BigInt::zero()];
    }
    let mut q = vec![BigInt::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db].clone() / &b[db];
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

fn reduce_mod(a: &[BigInt], phi: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let dp = phi.len() - 1;
    for i in (dp..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, pj) in phi.iter().enumerate() {
            rem[i - dp + j] -= &c * pj;
        }
    }
    rem.truncate(dp.max(1));
    rem
}

/// Least primitive root modulo the odd prime ℓ. Roots of unity of order
/// dividing ℓ−1 are embedded in ℤ_ℓ by sending exp(2πi/(ℓ−1)) to the
/// Teichmüller lift of this residue.
pub fn least_primitive_root(ell: u64) -> u64 {
    (2..ell).find(|&g| mult_order(g, ell) == ell - 1).unwrap_or(1)
}

/// Residue mod ℓ of the embedded root of unity.
fn root_residue(eps: RootOfUnity, ell: u64) -> Result<u64> {
    if !(ell - 1).is_multiple_of(eps.order()) {
        return Err(Error::Unsupported(format!(
            "root of unity of order {} does not lie in Z_{ell}",
            eps.order()
        )));
    }
    let g = least_primitive_root(ell);
    Ok(pow_mod(g, eps.num() * ((ell - 1) / eps.order()), ell))
}

/// The root of unity in ℤ_ℓ congruent to q mod ℓ, as a fraction of a turn.
pub fn teichmuller_root(q: u64, ell: u64) -> RootOfUnity {
    let g = least_primitive_root(ell);
    let target = q % ell;
    let mut x = 1u64;
    for k in 0..ell - 1 {
        if x == target {
            return RootOfUnity::new(k as i64, ell - 1);
        }
        x = x * g % ell;
    }
    unreachable!("q is a unit mod ell")
}

fn check_q_ell(q: u64, ell: u64) -> Result<()> {
    crate::arith::require_prime(ell)?;
    if ell == 2 {
        return Err(Error::Unsupported("ell = 2 is outside the supported range".into()));
    }
    if q < 2 || q.is_multiple_of(ell) {
        return invalid(format!("need q ≥ 2 prime to ell, got q = {q}, ell = {ell}"));
    }
    Ok(())
}

/// ν_ℓ(q^d − ε) for ε a root of unity of order dividing ℓ−1.
pub fn factor_valuation(f: OrderFactor, q: u64, ell: u64) -> Result<u32> {
    if f.eps.is_one() {
        return Ok(val_q_pow_minus_one(q, f.d, ell));
    }
    let target = root_residue(f.eps, ell)?;
    if pow_mod(q, f.d, ell) != target {
        return Ok(0);
    }
    let e0 = mult_order(q, ell);
    Ok(val_q_pow_minus_one(q, e0, ell) + val(f.d as u128, ell))
}

/// ν_ℓ(O_q(Wφ)) by lifting the exponent, factor by factor.
pub fn order_valuation(c: &ReflectionCoset, q: u64, ell: u64) -> Result<u32> {
    check_q_ell(q, ell)?;
    order_factors(c)?
        .into_iter()
        .map(|f| factor_valuation(f, q, ell))
        .sum()
}

/// Ex. of Lehrer–Springer for G(m,r,n) and θ of order o.
fn relative_weyl_imprimitive(m: u64, r: u64, n: u64, o: u64) -> GroupDescriptor {
    let ep = o / o.gcd(&m);
    let me = m * ep;
    let (rr, nn) = if (m * n).is_multiple_of(r * o) {
        (r, n / ep)
    } else if (m * n).is_multiple_of(o) {
        (1, n / ep - 1)
    } else {
        (1, n / ep)
    };
    normalize_imprimitive(me, rr, nn)
}

/// Descriptor for G(e,r,n) with the degenerate cases collapsed. G(e,e,1) is
/// the trivial group on a rank-1 lattice and is written 𝔖₁ so that it keeps
/// its rank; G(e,r,0) is the rank-0 trivial group.
pub fn normalize_imprimitive(e: u64, r: u64, n: u64) -> GroupDescriptor {
    if n == 0 {
        GroupDescriptor::trivial()
    } else if n == 1 && e == r {
        GroupDescriptor::Symmetric { n: 1 }
    } else if e == 1 {
        GroupDescriptor::Symmetric { n }
    } else {
        GroupDescriptor::Imprimitive { e, r, n }
    }
}

/// Relative Weyl group W_{φθ} for the coset twisted further by `theta`.
pub fn relative_weyl_root(c: &ReflectionCoset, theta: RootOfUnity) -> Result<GroupDescriptor> {
    c.group.validate()?;
    let total = match c.twist {
        TwistDescriptor::Scalar { order } => theta.mul(RootOfUnity::primitive(order)),
        _ => theta,
    };
    let blocks = c.cycle_blocks()?;
    let mut factors = Vec::new();
    for (g, m) in blocks {
        let o = total.pow(m as i64).order();
        let rel = match g {
            GroupDescriptor::Imprimitive { e, r, n } => relative_weyl_imprimitive(e, r, n, o),
            GroupDescriptor::Symmetric { n } => relative_weyl_imprimitive(1, 1, n, o),
            other if o == 1 => other,
            other => {
                return Err(Error::Unsupported(format!(
                    "relative Weyl groups of {other} are outside the formula range"
                )))
            }
        };
        factors.push((rel, 1));
    }
    Ok(GroupDescriptor::product(factors))
}

/// Relative Weyl group for ζ = exp(2πi/ζ_order).
pub fn relative_weyl(c: &ReflectionCoset, zeta_order: u64) -> Result<GroupDescriptor> {
    if zeta_order == 0 {
        return invalid("root of unity of order 0");
    }
    relative_weyl_root(c, RootOfUnity::primitive(zeta_order))
}

/// Exponents of the ℓ-part of a Sylow ℓ-subgroup, computed structurally
/// (torus rank and relative Weyl group) and from the order polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowOrder {
    pub structural: u32,
    pub polynomial: u32,
    pub a: u32,
    pub relative_weyl: GroupDescriptor,
    pub relative_rank: usize,
}

impl SylowOrder {
    pub fn structural_value(&self, ell: u64) -> BigUint {
        BigUint::from(ell).pow(self.structural)
    }

    pub fn polynomial_value(&self, ell: u64) -> BigUint {
        BigUint::from(ell).pow(self.polynomial)
    }
}

pub fn sylow_order(c: &ReflectionCoset, q: u64, ell: u64) -> Result<SylowOrder> {
    check_q_ell(q, ell)?;
    let a = crate::arith::sylow_exponent_a(q, ell);
    let zeta = teichmuller_root(q, ell);
    let rel = relative_weyl_root(c, zeta)?;
    let rank = rel.rank();
    let structural = a * rank as u32 + val_big(&rel.order(), ell);
    let polynomial = order_valuation(c, q, ell)?;
    if structural != polynomial {
        return Err(Error::Identity(format!(
            "Sylow order mismatch for {c} at q = {q}, ell = {ell}: {structural} vs {polynomial}"
        )));
    }
    Ok(SylowOrder { structural, polynomial, a, relative_weyl: rel, relative_rank: rank })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowCheck {
    pub e: u64,
    pub r: u64,
    pub n: u64,
    pub ell: u64,
    pub q: u64,
    pub order: SylowOrder,
    /// ν_ℓ|GL_{en}(q)| when ord_ℓ(q) = e, r = 1 and en ≤ 8.
    pub gl_valuation: Option<u32>,
    pub gl_agrees: Option<bool>,
    pub pass: bool,
}

/// Sylow order of the untwisted G(e,r,n) spets at q, in both forms. When q has
/// order e mod ℓ and r = 1, the relative Weyl group of 𝔖_{en} at q is
/// G(e,1,n); its Sylow order is compared with |GL_{en}(q)|_ℓ.
pub fn sylow_check(e: u64, r: u64, n: u64, ell: u64, q: u64) -> Result<SylowCheck> {
    let g = normalize_imprimitive(e, r, n);
    let order = sylow_order(&ReflectionCoset::untwisted(g), q, ell)?;
    let (mut gl_valuation, mut gl_agrees) = (None, None);
    if r == 1 && e * n <= 8 && crate::arith::mult_order(q, ell) == e {
        let gl = crate::arith::val_gl_order(e * n, q, ell);
        let s = sylow_order(&ReflectionCoset::untwisted(GroupDescriptor::Symmetric { n: e * n }), q, ell)?;
        gl_valuation = Some(gl);
        gl_agrees = Some(s.structural == gl && s.relative_weyl == normalize_imprimitive(e, 1, n));
    }
    let pass = order.structural == order.polynomial && gl_agrees != Some(false);
    Ok(SylowCheck { e, r, n, ell, q, order, gl_valuation, gl_agrees, pass })
}

/// Defect of the G(e,1,n) character labelled by μ: Σ_i (ν(|μ_i|!) − ν(f^{μ_i})).
pub fn multipartition_defect(mu: &MultiPartition, ell: u32) -> u32 {
    mu.components().iter().map(|p| defect_sym(p, ell)).sum()
}

/// Stabiliser order of μ under the shift-by-(e/r) action of ℤ/r.
pub fn shift_stabiliser(mu: &MultiPartition, r: usize) -> usize {
    let e = mu.e();
    let step = e / r;
    (0..r).filter(|&k| mu.shift(k * step) == *mu).count()
}

/// True if μ is the least element of its shift orbit.
pub fn is_shift_orbit_min(mu: &MultiPartition, r: usize) -> bool {
    let step = mu.e() / r;
    (1..r).all(|k| mu.shift(k * step) >= *mu)
}

/// Defect spectrum of Irr(G) at ℓ.
pub fn irr_spectrum(g: &GroupDescriptor, ell: u64) -> Result<DefectSpectrum> {
    g.validate()?;
    crate::arith::require_prime(ell)?;
    let l = ell as u32;
    match *g {
        GroupDescriptor::Symmetric { n } => Ok(partitions_of(n as u32)
            .iter()
            .map(|p| (defect_sym(p, l), 1))
            .collect()),
        GroupDescriptor::Imprimitive { e, r, n } => {
            if e % ell == 0 {
                return Err(Error::Unsupported(format!("ell = {ell} divides e = {e}")));
            }
            if e == 1 {
                return irr_spectrum(&GroupDescriptor::Symmetric { n }, ell);
            }
            let mut s = DefectSpectrum::new();
            for mu in multipartitions(e as usize, n as u32) {
                if r == 1 {
                    s.add(multipartition_defect(&mu, l), 1);
                } else if is_shift_orbit_min(&mu, r as usize) {
                    s.add(multipartition_defect(&mu, l), shift_stabiliser(&mu, r as usize) as u64);
                }
            }
            Ok(s)
        }
        GroupDescriptor::ExceptionalWeyl(t) => {
            let data = tables::weyl_degree_data(t)?;
            let order = BigUint::from(data.order);
            let v = val_big(&order, ell);
            Ok(data
                .degrees
                .iter()
                .map(|&d| (v - val(d as u128, ell), 1))
                .collect())
        }
        GroupDescriptor::Aguade { index } => {
            let rec = tables::aguade_record(index)?;
            if rec.ell != ell {
                return Err(Error::Unsupported(format!(
                    "defect data for G{index} only at ell = {}",
                    rec.ell
                )));
            }
            // The Sylow ℓ-subgroup has order ℓ, so defects are 0 or 1.
            let mut s = DefectSpectrum::new();
            s.add(0, rec.z_weyl);
            s.add(1, rec.irr_total - rec.z_weyl);
            Ok(s)
        }
        GroupDescriptor::Product(ref fs) => {
            let mut s = DefectSpectrum::single(0, 1);
            for (h, m) in fs {
                let hs = irr_spectrum(h, ell)?;
                for _ in 0..*m {
                    s = s.convolve(&hs);
                }
            }
            Ok(s)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeFlag {
    SimplyConnected,
    Permutation,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeStatus {
    Bad,
    Good,
    VeryGood,
}

/// Good / bad / very good classification.
///
/// The permutation lattice of 𝔖_n has coinvariants ℤ, which is torsion-free,
/// so ℓ | n only spoils very-goodness on the irreducible lattices.
pub fn prime_status(g: &GroupDescriptor, ell: u64, lattice: LatticeFlag) -> Result<PrimeStatus> {
    g.validate()?;
    crate::arith::require_prime(ell)?;
    let factors = g.flat_factors();
    let mut status = PrimeStatus::VeryGood;
    for h in &factors {
        let s = match *h {
            GroupDescriptor::Symmetric { n } => {
                if n % ell == 0 && lattice != LatticeFlag::Permutation && n > 1 {
                    PrimeStatus::Good
                } else {
                    PrimeStatus::VeryGood
                }
            }
            _ => {
                if tables::bad_prime_table(&tables::StLabel::of(h)?, ell) {
                    PrimeStatus::Bad
                } else {
                    PrimeStatus::VeryGood
                }
            }
        };
        status = match (status, s) {
            (PrimeStatus::Bad, _) | (_, PrimeStatus::Bad) => PrimeStatus::Bad,
            (PrimeStatus::Good, _) | (_, PrimeStatus::Good) => PrimeStatus::Good,
            _ => PrimeStatus::VeryGood,
        };
    }
    Ok(status)
}

/// |G(e,r,n)| = eⁿ·n!/r.
pub fn imprimitive_order(e: u64, r: u64, n: u64) -> BigUint {
    BigUint::from(e).pow(n as u32) * crate::arith::factorial(n) / r
}

/// ν_ℓ(|G(e,r,n)|) for ℓ ∤ e.
pub fn imprimitive_order_valuation(n: u64, ell: u64) -> u32 {
    val_factorial(n, ell)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(e: u64, r: u64, n: u64) -> GroupDescriptor {
        GroupDescriptor::imprimitive(e, r, n).unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degrees(&g(2, 1, 2)), vec![2, 4]);
        assert_eq!(g(2, 1, 2).order(), BigUint::from(8u32));
        assert_eq!(degrees(&GroupDescriptor::Symmetric { n: 3 }), vec![1, 2, 3]);
        assert_eq!(degrees(&g(2, 2, 4)), vec![2, 4, 6, 4]);
        assert_eq!(g(2, 2, 4).order(), BigUint::from(192u32));
        for (e, r, n) in [(3, 1, 4), (6, 2, 3), (4, 4, 2)] {
            assert_eq!(g(e, r, n).order(), imprimitive_order(e, r, n));
        }
    }

    #[test]
    fn valuation_examples() {
        let c = ReflectionCoset::untwisted(g(2, 1, 2));
        assert_eq!(order_valuation(&c, 4, 3).unwrap(), 2);
        let s3 = ReflectionCoset::untwisted(GroupDescriptor::Symmetric { n: 3 });
        assert_eq!(order_valuation(&s3, 4, 3).unwrap(), 4);
        assert!(order_valuation(&s3, 3, 2).is_err());
        // ord_7(2) = 3 divides none of 1, 2 for S2.
        let s2 = ReflectionCoset::untwisted(GroupDescriptor::Symmetric { n: 2 });
        assert_eq!(order_valuation(&s2, 2, 7).unwrap(), 0);
    }

    #[test]
    fn sylow_examples() {
        let c = ReflectionCoset::untwisted(g(2, 1, 2));
        let s = sylow_order(&c, 4, 3).unwrap();
        assert_eq!(s.structural_value(3), BigUint::from(9u32));
        let s3 = ReflectionCoset::untwisted(GroupDescriptor::Symmetric { n: 3 });
        let s = sylow_order(&s3, 4, 3).unwrap();
        assert_eq!(s.structural_value(3), BigUint::from(81u32));
        assert_eq!(s.structural, crate::arith::val_gl_order(3, 4, 3));
        // ord_7(2) = 3: relative Weyl group is cyclic of order 3, rank 1.
        let s = sylow_order(&s3, 2, 7).unwrap();
        assert_eq!(s.structural, 1);
    }

    #[test]
    fn relative_weyl_examples() {
        let s4 = ReflectionCoset::untwisted(GroupDescriptor::Symmetric { n: 4 });
        assert_eq!(relative_weyl(&s4, 2).unwrap(), g(2, 1, 2));
        let c = ReflectionCoset::untwisted(g(2, 1, 2));
        assert_eq!(relative_weyl(&c, 1).unwrap(), g(2, 1, 2));
        let c = ReflectionCoset::untwisted(g(2, 1, 3));
        assert_eq!(relative_weyl(&c, 2).unwrap(), g(2, 1, 3));
        let c = ReflectionCoset::untwisted(GroupDescriptor::ExceptionalWeyl(WeylType::E6));
        assert!(relative_weyl(&c, 3).is_err());
    }

    #[test]
    fn generalized_degree_examples() {
        let c = ReflectionCoset::untwisted(g(2, 1, 2));
        assert_eq!(
            generalized_degrees(&c).unwrap(),
            vec![(2, RootOfUnity::one()), (4, RootOfUnity::one())]
        );
        let c = ReflectionCoset::scalar(g(2, 1, 2), 2);
        let rel: Vec<u64> = generalized_degrees(&c)
            .unwrap()
            .into_iter()
            .filter(|(d, eps)| RootOfUnity::primitive(2).pow(*d as i64) == *eps)
            .map(|(d, _)| d)
            .collect();
        assert_eq!(rel, vec![2, 4]);
    }

    #[test]
    fn swap_coset_order_polynomial() {
        let s2 = GroupDescriptor::Symmetric { n: 2 };
        let c = ReflectionCoset {
            group: GroupDescriptor::product(vec![(s2.clone(), 2)]),
            twist: TwistDescriptor::CycleTwist { lengths: vec![2] },
        };
        let p = order_polynomial(&c).unwrap();
        // O_{x²}(S2) = (x² − 1)(x⁴ − 1) = x⁶ − x⁴ − x² + 1
        let expect: Vec<BigInt> = [1, 0, -1, 0, -1, 0, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(p, expect);
        let bad = ReflectionCoset {
            group: GroupDescriptor::product(vec![(s2, 1), (GroupDescriptor::Symmetric { n: 3 }, 1)]),
            twist: TwistDescriptor::CycleTwist { lengths: vec![2] },
        };
        assert!(generalized_degrees(&bad).is_err());
    }

    #[test]
    fn rational_scalar_polynomial() {
        let c = ReflectionCoset::scalar(g(2, 1, 2), 3);
        assert!(order_polynomial(&c).is_err());
        let c = ReflectionCoset::scalar(g(3, 1, 2), 3);
        // ε = ζ^{−3} = 1 and ζ^{−6} = 1, so O_x = (x³ − 1)(x⁶ − 1).
        let p = order_polynomial(&c).unwrap();
        assert_eq!(p.len(), 10);
    }

    #[test]
    fn spectrum_examples() {
        let s = irr_spectrum(&g(2, 1, 3), 3).unwrap();
        assert_eq!((s.total(), s.z(), s.get(1)), (10, 4, 6));
        let s = irr_spectrum(&GroupDescriptor::Symmetric { n: 3 }, 3).unwrap();
        assert_eq!((s.z(), s.get(1)), (0, 3));
        let s = irr_spectrum(&g(2, 2, 3), 5).unwrap();
        assert_eq!(s.support(), vec![0]);
        assert!(irr_spectrum(&g(3, 1, 2), 3).is_err());
    }

    #[test]
    fn prime_status_examples() {
        use LatticeFlag::*;
        assert_eq!(prime_status(&g(6, 6, 2), 3, Other).unwrap(), PrimeStatus::Bad);
        let s5 = GroupDescriptor::Symmetric { n: 5 };
        assert_eq!(prime_status(&s5, 5, SimplyConnected).unwrap(), PrimeStatus::Good);
        assert_eq!(prime_status(&s5, 5, Permutation).unwrap(), PrimeStatus::VeryGood);
        assert_eq!(prime_status(&g(4, 1, 3), 5, Other).unwrap(), PrimeStatus::VeryGood);
        assert_eq!(prime_status(&g(2, 1, 3), 2, Other).unwrap(), PrimeStatus::Bad);
        assert_eq!(prime_status(&s5, 2, Permutation).unwrap(), PrimeStatus::VeryGood);
    }

    #[test]
    fn product_flattening() {
        let s2 = GroupDescriptor::Symmetric { n: 2 };
        let p = GroupDescriptor::product(vec![
            (GroupDescriptor::product(vec![(s2.clone(), 2)]), 1),
            (s2.clone(), 1),
            (GroupDescriptor::trivial(), 3),
        ]);
        assert_eq!(p, GroupDescriptor::Product(vec![(s2, 3)]));
        assert!(p.validate().is_ok());
    }
}
