//! Brute-force model of G(e,r,n) as monomial matrices, used to check the
//! closed forms: element enumeration, action on the discrete torus mod ℓᵃ,
//! stabilisers, reflection subgroups and conjugacy classes.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::arith::pow_u64;
use crate::error::{invalid, Error, Result};
use crate::torus::{centralize, primitive_root_of_unity, TorusVector};

/// The monomial matrix sending basis vector i to ζ^{exps[i]} times basis
/// vector perm[i].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub exps: Vec<u8>,
    pub perm: Vec<u8>,
}

impl Mono {
    pub fn identity(n: usize) -> Self {
        Self { exps: vec![0; n], perm: (0..n as u8).collect() }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Mono, e: u64) -> Mono {
        let n = self.perm.len();
        let mut exps = vec![0u8; n];
        let mut perm = vec![0u8; n];
        for i in 0..n {
            let t = other.perm[i] as usize;
            exps[i] = ((self.exps[t] as u64 + other.exps[i] as u64) % e) as u8;
            perm[i] = self.perm[t];
        }
        Mono { exps, perm }
    }

    pub fn inverse(&self, e: u64) -> Mono {
        let n = self.perm.len();
        let mut exps = vec![0u8; n];
        let mut perm = vec![0u8; n];
        for i in 0..n {
            let s = self.perm[i] as usize;
            perm[s] = i as u8;
            exps[s] = ((e - self.exps[i] as u64) % e) as u8;
        }
        Mono { exps, perm }
    }

    pub fn exponent_sum(&self, e: u64) -> u64 {
        self.exps.iter().map(|&x| x as u64).sum::<u64>() % e
    }

    /// Reflections of a monomial group: diagonal with a single nontrivial
    /// entry, or a transposition whose two entries multiply to 1.
    pub fn is_reflection(&self, e: u64) -> bool {
        let moved: Vec<usize> = (0..self.perm.len()).filter(|&i| self.perm[i] as usize != i).collect();
        match moved.len() {
            0 => self.exps.iter().filter(|&&x| x != 0).count() == 1,
            2 => {
                let (i, j) = (moved[0], moved[1]);
                (0..self.exps.len()).all(|k| k == i || k == j || self.exps[k] == 0)
                    && (self.exps[i] as u64 + self.exps[j] as u64).is_multiple_of(e)
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonomialGroup {
    pub e: u64,
    pub r: u64,
    pub n: usize,
}

impl MonomialGroup {
    pub fn new(e: u64, r: u64, n: usize) -> Result<Self> {
        if e == 0 || r == 0 || !e.is_multiple_of(r) || e > 255 || n > 255 {
            return invalid(format!("G({e},{r},{n}) needs r | e and small parameters"));
        }
        Ok(Self { e, r, n })
    }

    /// Defining order eⁿ·n!/r, or 1 when n = 0.
    pub fn expected_order(&self) -> u128 {
        if self.n == 0 {
            return 1;
        }
        let fact: u128 = (1..=self.n as u128).product();
        (self.e as u128).pow(self.n as u32) * fact / self.r as u128
    }

    /// diag(ζ^r, 1, …), the twisted transposition (1 2) with entries ζ, ζ⁻¹,
    /// and the adjacent transpositions.
    pub fn generators(&self) -> Vec<Mono> {
        let (e, r, n) = (self.e, self.r, self.n);
        let mut gens = Vec::new();
        if n == 0 {
            return gens;
        }
        if r != e {
            let mut g = Mono::identity(n);
            g.exps[0] = r as u8;
            gens.push(g);
        }
        if n >= 2 && e > 1 {
            let mut g = Mono::identity(n);
            g.perm.swap(0, 1);
            g.exps[0] = 1;
            g.exps[1] = (e - 1) as u8;
            gens.push(g);
        }
        for i in 0..n.saturating_sub(1) {
            let mut g = Mono::identity(n);
            g.perm.swap(i, i + 1);
            gens.push(g);
        }
        gens
    }

    /// All elements, listed directly from the definition.
    pub fn elements(&self) -> Vec<Mono> {
        let n = self.n;
        let mut perms = Vec::new();
        permutations(n, &mut (0..n as u8).collect(), 0, &mut perms);
        let mut out = Vec::new();
        let total = pow_u64(self.e, n as u32);
        for p in &perms {
            for code in 0..total {
                let mut c = code;
                let exps: Vec<u8> = (0..n)
                    .map(|_| {
                        let x = (c % self.e) as u8;
                        c /= self.e;
                        x
                    })
                    .collect();
                let g = Mono { exps, perm: p.clone() };
                if g.exponent_sum(self.e).is_multiple_of(self.r) {
                    out.push(g);
                }
            }
        }
        out
    }
}

fn permutations(n: usize, cur: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
    if k == n {
        out.push(cur.clone());
        return;
    }
    for i in k..n {
        cur.swap(k, i);
        permutations(n, cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// Subgroup generated by `gens`, by breadth-first closure.
pub fn closure(gens: &[Mono], n: usize, e: u64, cap: usize) -> Result<Vec<Mono>> {
    let id = Mono::identity(n);
    let mut seen: HashSet<Mono> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.compose(s, e);
            if seen.insert(h.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded {
                        what: "group closure".into(),
                        needed: seen.len() as u128,
                        cap: cap as u128,
                    });
                }
                queue.push_back(h);
            }
        }
        out.push(g);
    }
    out.sort();
    Ok(out)
}

/// Number of conjugacy classes of a finite group given by its elements.
pub fn class_count(elements: &[Mono], e: u64) -> usize {
    if elements.is_empty() {
        return 0;
    }
    let n = elements[0].perm.len();
    // Greedy generating set.
    let mut gens: Vec<Mono> = Vec::new();
    let mut span: HashSet<Mono> = HashSet::from([Mono::identity(n)]);
    for g in elements {
        if !span.contains(g) {
            gens.push(g.clone());
            span = closure(&gens, n, e, usize::MAX).expect("no cap").into_iter().collect();
        }
    }
    let index: HashMap<&Mono, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut parent: Vec<usize> = (0..elements.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, h) in elements.iter().enumerate() {
        for g in &gens {
            let c = g.compose(h, e).compose(&g.inverse(e), e);
            let j = index[&c];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..elements.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// Action of monomial matrices on (ℤ/ℓᵃ)ⁿ, or on its dual when `dual` is set
/// (entries replaced by their inverses).
#[derive(Debug, Clone)]
pub struct TorusAction {
    pub e: u64,
    pub r: u64,
    pub ell: u64,
    pub a: u32,
    pub n: usize,
    pub modulus: u64,
    powers: Vec<u64>,
    pub dual: bool,
}

impl TorusAction {
    pub fn new(e: u64, r: u64, n: usize, ell: u64, a: u32, dual: bool) -> Result<Self> {
        let zeta = primitive_root_of_unity(e, ell, a)?;
        let modulus = pow_u64(ell, a);
        let mut powers = vec![1u64];
        for _ in 1..e {
            let last = *powers.last().unwrap();
            powers.push(((last as u128 * zeta as u128) % modulus as u128) as u64);
        }
        Ok(Self { e, r, ell, a, n, modulus, powers, dual })
    }

    pub fn vector_count(&self) -> u64 {
        pow_u64(self.modulus, self.n as u32)
    }

    pub fn decode(&self, mut idx: u64) -> Vec<u64> {
        (0..self.n)
            .map(|_| {
                let c = idx % self.modulus;
                idx /= self.modulus;
                c
            })
            .collect()
    }

    pub fn encode(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, &c| acc * self.modulus + c)
    }

    pub fn apply(&self, g: &Mono, v: &[u64], out: &mut [u64]) {
        for i in 0..self.n {
            let k = g.exps[i] as u64;
            let k = if self.dual { (self.e - k) % self.e } else { k };
            out[g.perm[i] as usize] =
                ((self.powers[k as usize] as u128 * v[i] as u128) % self.modulus as u128) as u64;
        }
    }

    pub fn torus_vector(&self, v: &[u64]) -> TorusVector {
        TorusVector::new(v.to_vec(), self.e, self.r, self.ell, self.a).expect("validated action")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub rep: Vec<u64>,
    pub members: Vec<u64>,
}

/// Orbits on all vectors, by breadth-first search over generators. The
/// representative is the vector of least index in its orbit.
pub fn orbits(act: &TorusAction, gens: &[Mono], cap: u64) -> Result<Vec<Orbit>> {
    let total = act.vector_count();
    if total > cap {
        return Err(Error::CapExceeded { what: "torus vectors".into(), needed: total as u128, cap: cap as u128 });
    }
    let mut seen = vec![false; total as usize];
    let mut out = Vec::new();
    let mut buf = vec![0u64; act.n];
    for start in 0..total {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        let mut members = vec![start];
        let mut k = 0;
        while k < members.len() {
            let v = act.decode(members[k]);
            for g in gens {
                act.apply(g, &v, &mut buf);
                let w = act.encode(&buf);
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    members.push(w);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        out.push(Orbit { rep: act.decode(start), members });
    }
    Ok(out)
}

pub fn stabilizer(act: &TorusAction, elements: &[Mono], v: &[u64]) -> Vec<Mono> {
    let mut buf = vec![0u64; act.n];
    elements
        .iter()
        .filter(|g| {
            act.apply(g, v, &mut buf);
            buf == v
        })
        .cloned()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerCheck {
    pub e: u64,
    pub r: u64,
    pub n: usize,
    pub ell: u64,
    pub a: u32,
    pub group_order: u128,
    pub vectors: u64,
    pub orbits: usize,
    /// Orbit representatives whose stabiliser is not generated by its reflections.
    pub non_reflection: usize,
    /// Vectors whose stabiliser order differs from the centraliser formula.
    pub order_mismatch: u64,
    pub pass: bool,
}

/// For every vector of (ℤ/ℓᵃ)ⁿ: the stabiliser in G(e,r,n) is generated by
/// the reflections it contains and has the order given by `centralize`.
/// Stabilisers along an orbit are conjugate, so the reflection property is
/// checked on representatives and the orders on every vector.
pub fn check_reflection_stabilizers(e: u64, r: u64, n: usize, ell: u64, a: u32, cap: u64) -> Result<StabilizerCheck> {
    let w = MonomialGroup::new(e, r, n)?;
    let act = TorusAction::new(e, r, n, ell, a, false)?;
    let elements = w.elements();
    let group_order = elements.len() as u128;
    let orbs = orbits(&act, &w.generators(), cap)?;
    let mut non_reflection = 0;
    let mut order_mismatch = 0;
    for o in &orbs {
        let stab = stabilizer(&act, &elements, &o.rep);
        let refl: Vec<Mono> = stab.iter().filter(|g| g.is_reflection(e)).cloned().collect();
        let gen = closure(&refl, n, e, stab.len() + 1)?;
        if gen.len() != stab.len() {
            non_reflection += 1;
        }
        let stab_order = group_order / o.members.len() as u128;
        for &m in &o.members {
            let shape = centralize(&act.torus_vector(&act.decode(m)));
            if crate::arith::to_u128(&shape.order()) != Some(stab_order) {
                order_mismatch += 1;
            }
        }
    }
    let pass = non_reflection == 0 && order_mismatch == 0 && group_order == w.expected_order();
    Ok(StabilizerCheck {
        e,
        r,
        n,
        ell,
        a,
        group_order,
        vectors: act.vector_count(),
        orbits: orbs.len(),
        non_reflection,
        order_mismatch,
        pass,
    })
}
