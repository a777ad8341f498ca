//! Small exact-arithmetic helpers: valuations, factorials, modular powers,
//! multiplicative orders and prime-power searches.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{invalid, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, k)` with `n = p^k`, or `None` if `n` is not a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        p = n;
    }
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

pub fn require_prime(ell: u64) -> Result<()> {
    if is_prime(ell) {
        Ok(())
    } else {
        invalid(format!("ell = {ell} is not prime"))
    }
}

/// ℓ-adic valuation of a nonzero machine integer.
pub fn val(mut n: u128, ell: u64) -> u32 {
    assert!(n != 0, "valuation of zero");
    let ell = ell as u128;
    let mut v = 0;
    while n.is_multiple_of(ell) {
        n /= ell;
        v += 1;
    }
    v
}

/// ℓ-adic valuation of a nonzero big integer.
pub fn val_big(n: &BigUint, ell: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let ell = BigUint::from(ell);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&ell);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// ν_ℓ(n!) by Legendre's formula.
pub fn val_factorial(n: u64, ell: u64) -> u32 {
    let mut v = 0u64;
    let mut p = ell;
    while p <= n {
        v += n / p;
        match p.checked_mul(ell) {
            Some(x) => p = x,
            None => break,
        }
    }
    v as u32
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn pow_u64(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).expect("power overflows u64")
}

pub fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut acc: u128 = 1;
    let mut base = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `q` modulo `m`; requires gcd(q, m) = 1.
pub fn mult_order(q: u64, m: u64) -> u64 {
    assert!(q.gcd(&m) == 1, "order of a non-unit");
    if m == 1 {
        return 1;
    }
    let mut x = q % m;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * q as u128) % m as u128) as u64;
        k += 1;
    }
    k
}

/// ν_ℓ(q^d − 1) for ℓ odd and gcd(q, ℓ) = 1, by lifting the exponent.
pub fn val_q_pow_minus_one(q: u64, d: u64, ell: u64) -> u32 {
    debug_assert!(ell % 2 == 1 && !q.is_multiple_of(ell) && d >= 1);
    let e0 = mult_order(q, ell);
    if !d.is_multiple_of(e0) {
        return 0;
    }
    val_big(&(BigUint::from(q).pow(e0 as u32) - 1u32), ell) + val(d as u128, ell)
}

/// `(q^e − 1)_ℓ` as an exponent, with e the order of q mod ℓ.
pub fn sylow_exponent_a(q: u64, ell: u64) -> u32 {
    let e = mult_order(q, ell);
    val_big(&(BigUint::from(q).pow(e as u32) - 1u32), ell)
}

/// Smallest prime power `q0 ≥ 2` with ord_ℓ(q0) = e and ν_ℓ(q0^e − 1) = a.
pub fn find_ambient_q(e: u64, ell: u64, a: u32) -> Option<u64> {
    (2u64..2_000_000)
        .filter(|&q| q % ell != 0 && prime_power(q).is_some())
        .find(|&q| mult_order(q, ell) == e && sylow_exponent_a(q, ell) == a)
}

/// Smallest prime power `q ≡ 1 mod ℓ` with ν_ℓ(q − 1) = a.
pub fn find_split_q(ell: u64, a: u32) -> Option<u64> {
    find_ambient_q(1, ell, a)
}

/// ν_ℓ(|GL_n(q)|) computed from the big-integer order.
pub fn val_gl_order(n: u64, q: u64, ell: u64) -> u32 {
    let qb = BigUint::from(q);
    let mut order = BigUint::one();
    for k in 1..=n {
        order *= qb.pow(k as u32) - 1u32;
    }
    if order.is_zero() {
        return 0;
    }
    val_big(&order, ell)
}

pub fn to_u128(n: &BigUint) -> Option<u128> {
    n.to_u128()
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lte_matches_direct_evaluation() {
        for ell in [3u64, 5, 7, 13] {
            for q in 2u64..30 {
                if q % ell == 0 {
                    continue;
                }
                for d in 1u64..25 {
                    let direct = BigUint::from(q).pow(d as u32) - 1u32;
                    assert_eq!(val_q_pow_minus_one(q, d, ell), val_big(&direct, ell));
                }
            }
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn ambient_search() {
        assert_eq!(find_ambient_q(2, 3, 1), Some(2));
        assert_eq!(find_ambient_q(1, 3, 2), Some(19));
        assert_eq!(find_ambient_q(2, 3, 2), Some(8));
        assert_eq!(find_split_q(3, 1), Some(4));
    }

    #[test]
    fn legendre() {
        assert_eq!(val_factorial(10, 3), 4);
        assert_eq!(val_factorial(25, 5), 6);
        assert_eq!(val_factorial(2, 3), 0);
    }
}
