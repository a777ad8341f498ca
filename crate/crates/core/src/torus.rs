//! Discrete-torus elements of G(e,r,n), their centralisers, ℓ-element class
//! shapes of the ambient general linear group, and the valuation identity
//! for centraliser cosets.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{find_ambient_q, mult_order, pow_mod, pow_u64, require_prime, val, val_big};
use crate::error::{invalid, Error, Result};
use crate::reflection::{
    normalize_imprimitive, order_valuation, GroupDescriptor, ReflectionCoset, TwistDescriptor,
};

fn inv_mod(x: u64, m: u64) -> Option<u64> {
    let (mut a, mut b) = (x as i128 % m as i128, m as i128);
    let (mut u, mut v) = (1i128, 0i128);
    while b != 0 {
        let t = a / b;
        (a, b) = (b, a - t * b);
        (u, v) = (v, u - t * v);
    }
    (a == 1).then(|| u.rem_euclid(m as i128) as u64)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// The e-th roots of unity in (ℤ/ℓᵃ)ˣ, sorted.
///
/// Each root of x^e − 1 mod ℓ is lifted by Newton iteration; the lift is
/// unique because x^e − 1 is separable mod ℓ when ℓ ∤ e.
pub fn roots_of_unity(e: u64, ell: u64, a: u32) -> Result<Vec<u64>> {
    require_prime(ell)?;
    if e == 0 || !(ell - 1).is_multiple_of(e) {
        return invalid(format!("e = {e} does not divide ell - 1 = {}", ell - 1));
    }
    if a == 0 {
        return invalid("torus level a must be at least 1");
    }
    let m = pow_u64(ell, a);
    let mut out = Vec::new();
    for x0 in 1..ell {
        if pow_mod(x0, e, ell) != 1 {
            continue;
        }
        let mut x = x0;
        for _ in 0..a {
            // x ← x − (x^e − 1)/(e·x^{e−1})
            let fx = (pow_mod(x, e, m) + m - 1) % m;
            let dfx = mul_mod(e % m, pow_mod(x, e - 1, m), m);
            let inv = inv_mod(dfx, m).expect("derivative is a unit");
            x = (x + m - mul_mod(fx, inv, m)) % m;
        }
        debug_assert_eq!(pow_mod(x, e, m), 1);
        out.push(x);
    }
    out.sort_unstable();
    Ok(out)
}

/// A primitive e-th root of unity in ℤ/ℓᵃ: the lift of the smallest
/// residue of exact order e.
pub fn primitive_root_of_unity(e: u64, ell: u64, a: u32) -> Result<u64> {
    let m = pow_u64(ell, a);
    roots_of_unity(e, ell, a)?
        .into_iter()
        .filter(|&x| mult_order(x, m) == e)
        .min_by_key(|&x| x % ell)
        .ok_or_else(|| Error::InvalidParams(format!("no primitive {e}-th root mod {m}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusVector {
    pub coords: Vec<u64>,
    pub e: u64,
    pub r: u64,
    pub ell: u64,
    pub a: u32,
}

impl TorusVector {
    pub fn new(coords: Vec<u64>, e: u64, r: u64, ell: u64, a: u32) -> Result<Self> {
        require_prime(ell)?;
        if e == 0 || r == 0 || !e.is_multiple_of(r) || !(ell - 1).is_multiple_of(e) {
            return invalid(format!("need r | e | ell - 1, got e = {e}, r = {r}, ell = {ell}"));
        }
        if a == 0 {
            return invalid("torus level a must be at least 1");
        }
        let m = pow_u64(ell, a);
        Ok(Self { coords: coords.into_iter().map(|c| c % m).collect(), e, r, ell, a })
    }

    pub fn modulus(&self) -> u64 {
        pow_u64(self.ell, self.a)
    }

    /// Coordinate classes: zero coordinates, then nonzero coordinates grouped
    /// by equality up to an e-th root of unity, in order of first appearance.
    fn classes(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let m = self.modulus();
        let roots = roots_of_unity(self.e, self.ell, self.a).expect("validated parameters");
        let mut zero = Vec::new();
        let mut groups: Vec<(u64, Vec<usize>)> = Vec::new();
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                zero.push(i);
                continue;
            }
            let key = roots.iter().map(|&z| mul_mod(z, c, m)).min().unwrap();
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, g)) => g.push(i),
                None => groups.push((key, vec![i])),
            }
        }
        (zero, groups.into_iter().map(|(_, g)| g).collect())
    }
}

/// One 𝔖-factor of a centraliser: 𝔖_{size}, repeated `copies` = ℓ^level
/// times and permuted cyclically by the coset twist.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SymPart {
    pub level: u32,
    pub size: u64,
    pub copies: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CentralizerShape {
    pub e: u64,
    pub r: u64,
    /// n of the G(e,r,n) factor.
    pub grass_n: u64,
    pub sym_parts: Vec<SymPart>,
}

impl CentralizerShape {
    /// The reflection group of the centraliser, all copies included.
    pub fn descriptor(&self) -> GroupDescriptor {
        let mut fs = vec![(normalize_imprimitive(self.e, self.r, self.grass_n), 1)];
        for p in &self.sym_parts {
            fs.push((GroupDescriptor::Symmetric { n: p.size }, p.copies as u32));
        }
        GroupDescriptor::product(fs)
    }

    /// Fixed points of the twist: one copy of each 𝔖-factor.
    pub fn fixed_descriptor(&self) -> GroupDescriptor {
        let mut fs = vec![(normalize_imprimitive(self.e, self.r, self.grass_n), 1)];
        for p in &self.sym_parts {
            fs.push((GroupDescriptor::Symmetric { n: p.size }, 1));
        }
        GroupDescriptor::product(fs)
    }

    /// Coset of the descriptor twisted by the product of the cycles.
    pub fn coset(&self) -> ReflectionCoset {
        let grass = normalize_imprimitive(self.e, self.r, self.grass_n);
        let mut lengths = Vec::new();
        if !grass.is_trivial() {
            lengths.push(1);
        }
        lengths.extend(self.sym_parts.iter().map(|p| p.copies as u32));
        let group = self.descriptor();
        if lengths.iter().all(|&m| m == 1) {
            ReflectionCoset::untwisted(group)
        } else {
            ReflectionCoset { group, twist: TwistDescriptor::CycleTwist { lengths } }
        }
    }

    pub fn order(&self) -> BigUint {
        self.descriptor().order()
    }
}

/// C_W(t) for W = G(e,r,n): G(e,r,u₀) × ∏ 𝔖_{u_j}.
pub fn centralize(t: &TorusVector) -> CentralizerShape {
    let (zero, groups) = t.classes();
    CentralizerShape {
        e: t.e,
        r: t.r,
        grass_n: zero.len() as u64,
        sym_parts: groups
            .iter()
            .map(|g| SymPart { level: 0, size: g.len() as u64, copies: 1 })
            .collect(),
    }
}

/// Number of ambient class slots at level i: r₀ = (ℓᵃ−1)/e, r_i = (ℓᵃ−ℓ^{a−1})/e.
pub fn slot_count(e: u64, ell: u64, a: u32, level: u32) -> u64 {
    if level == 0 {
        (pow_u64(ell, a) - 1) / e
    } else {
        (pow_u64(ell, a) - pow_u64(ell, a - 1)) / e
    }
}

/// Canonical label for a family of ℓ-element classes of GL_{en}(q₀): the
/// multiplicity a₁ of the eigenvalue 1 and the multiplicities a_f of the
/// other irreducible factors, indexed by (level, slot).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassShape {
    pub a1: u64,
    pub mults: BTreeMap<(u32, u64), u64>,
    pub e: u64,
    pub ell: u64,
    pub a: u32,
    pub n: u64,
}

impl ClassShape {
    pub fn identity(e: u64, ell: u64, a: u32, n: u64) -> Self {
        Self { a1: e * n, mults: BTreeMap::new(), e, ell, a, n }
    }

    pub fn validate(&self) -> Result<()> {
        let mut dim = self.a1;
        for (&(i, slot), &m) in &self.mults {
            if m == 0 {
                return invalid("zero multiplicity in class shape");
            }
            if slot >= slot_count(self.e, self.ell, self.a, i) {
                return invalid(format!("slot {slot} out of range at level {i}"));
            }
            dim += self.e * pow_u64(self.ell, i) * m;
        }
        if dim != self.e * self.n {
            return invalid(format!("class shape has dimension {dim}, expected {}", self.e * self.n));
        }
        Ok(())
    }

    /// Number of ambient classes with the same per-level multiset of
    /// multiplicities: ∏_i r_i! / ((r_i − k_i)! ∏_v c_v!).
    pub fn ambient_count(&self) -> u128 {
        let mut by_level: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
        for (&(i, _), &m) in &self.mults {
            by_level.entry(i).or_default().push(m);
        }
        let mut total = 1u128;
        for (i, ms) in by_level {
            let ri = slot_count(self.e, self.ell, self.a, i) as u128;
            let k = ms.len() as u128;
            let mut falling = 1u128;
            for j in 0..k {
                falling *= ri - j;
            }
            let mut counts: BTreeMap<u64, u128> = BTreeMap::new();
            for m in ms {
                *counts.entry(m).or_default() += 1;
            }
            let denom: u128 = counts.values().map(|&c| (1..=c).product::<u128>()).product();
            total *= falling / denom;
        }
        total
    }

    pub fn is_torus_shape(&self) -> bool {
        self.mults.keys().all(|&(i, _)| i == 0)
    }
}

/// Class shape of the ambient image of a torus element: zero coordinates
/// give eigenvalue 1, each root-of-unity class one level-0 factor.
pub fn class_shape_of(t: &TorusVector) -> ClassShape {
    let (zero, groups) = t.classes();
    let mut sizes: Vec<u64> = groups.iter().map(|g| g.len() as u64).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    ClassShape {
        a1: t.e * zero.len() as u64,
        mults: sizes.into_iter().enumerate().map(|(j, m)| ((0, j as u64), m)).collect(),
        e: t.e,
        ell: t.ell,
        a: t.a,
        n: t.coords.len() as u64,
    }
}

/// All canonical class shapes. Within a level, multiplicities occupy slots
/// 0, 1, … in weakly decreasing order.
pub fn class_shapes(e: u64, ell: u64, a: u32, n: u64, cap: u128) -> Result<Vec<(ClassShape, u128)>> {
    require_prime(ell)?;
    if e == 0 || !(ell - 1).is_multiple_of(e) || a == 0 {
        return invalid(format!("need e | ell - 1 and a ≥ 1, got e = {e}, ell = {ell}, a = {a}"));
    }
    let mut levels = Vec::new();
    while pow_u64(ell, levels.len() as u32) <= n {
        levels.push(levels.len() as u32);
    }

    // Per level: partitions of the budget into at most r_i parts.
    fn parts_bounded(total: u64, max_part: u64, max_len: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if total == 0 {
            out.push(cur.clone());
            return;
        }
        if max_len == 0 {
            return;
        }
        for p in (1..=max_part.min(total)).rev() {
            cur.push(p);
            parts_bounded(total - p, p, max_len - 1, cur, out);
            cur.pop();
        }
    }

    let mut out = Vec::new();
    let mut stack: Vec<(usize, u64, BTreeMap<(u32, u64), u64>)> = vec![(0, n, BTreeMap::new())];
    while let Some((li, rem, mults)) = stack.pop() {
        if li == levels.len() {
            let shape = ClassShape { a1: e * rem, mults, e, ell, a, n };
            let c = shape.ambient_count();
            out.push((shape, c));
            if out.len() as u128 > cap {
                return Err(Error::CapExceeded { what: "class shapes".into(), needed: out.len() as u128, cap });
            }
            continue;
        }
        let i = levels[li];
        let w = pow_u64(ell, i);
        let ri = slot_count(e, ell, a, i);
        for used in 0..=rem / w {
            let mut ps = Vec::new();
            parts_bounded(used, used, ri, &mut Vec::new(), &mut ps);
            for p in ps {
                let mut m = mults.clone();
                for (j, &v) in p.iter().enumerate() {
                    m.insert((i, j as u64), v);
                }
                stack.push((li + 1, rem - used * w, m));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// C(s) as G(e,r,a₁/e) × ∏ 𝔖_{a_f}^{ℓ^i}.
pub fn centralizer_shape(c: &ClassShape) -> Result<CentralizerShape> {
    c.validate()?;
    if !c.a1.is_multiple_of(c.e) {
        return invalid(format!("a1 = {} is not divisible by e = {}", c.a1, c.e));
    }
    Ok(CentralizerShape {
        e: c.e,
        r: 1,
        grass_n: c.a1 / c.e,
        sym_parts: c
            .mults
            .iter()
            .map(|(&(i, _), &m)| SymPart { level: i, size: m, copies: pow_u64(c.ell, i) })
            .collect(),
    })
}

/// (W(s)_{φ_s}, W(s)φ_s) for the subsystem with parameter r. φ_s is the
/// product of the cycles permuting the ℓ^i copies at each level, taken in
/// slot order.
pub fn ws_phis(c: &ClassShape, r: u64) -> Result<(GroupDescriptor, ReflectionCoset)> {
    if r == 0 || !c.e.is_multiple_of(r) {
        return invalid(format!("r = {r} does not divide e = {}", c.e));
    }
    let mut shape = centralizer_shape(c)?;
    shape.r = r;
    Ok((shape.fixed_descriptor(), shape.coset()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationIdentity {
    pub shape: ClassShape,
    pub q0: u64,
    pub q: u64,
    pub lhs: u32,
    pub rhs: u32,
    pub equal: bool,
}

/// ν_ℓ|C(s)| computed from the ambient GL centraliser, against
/// ν_ℓ O_q(W(s)φ_s).
pub fn valuation_identity(c: &ClassShape, q: u64) -> Result<ValuationIdentity> {
    c.validate()?;
    let (e, ell, a) = (c.e, c.ell, c.a);
    if q % ell != 1 || val((q - 1) as u128, ell) != a {
        return invalid(format!("need q ≡ 1 mod {ell} with valuation {a}, got q = {q}"));
    }
    let q0 = find_ambient_q(e, ell, a)
        .ok_or_else(|| Error::InvalidParams(format!("no ambient prime power for e = {e}, ell = {ell}, a = {a}")))?;
    let gl_order = |n: u64, base: &BigUint| -> BigUint {
        (1..=n).fold(BigUint::one(), |acc, k| acc * (base.pow(k as u32) - 1u32))
    };
    let qb = BigUint::from(q0);
    let mut order = gl_order(c.a1, &qb);
    for (&(i, _), &m) in &c.mults {
        let ext = qb.pow((e * pow_u64(ell, i)) as u32);
        order *= gl_order(m, &ext);
    }
    let lhs = val_big(&order, ell);
    let (_, coset) = ws_phis(c, 1)?;
    let rhs = order_valuation(&coset, q, ell)?;
    Ok(ValuationIdentity { shape: c.clone(), q0, q, lhs, rhs, equal: lhs == rhs })
}
