//! Oracles that work directly on Young diagrams and explicit groups, sharing
//! no code with the abacus and formula routes in the library.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use spets_core::partition::{core_and_quotient, Partition};

/// Partitions of n as plain vectors, generated independently of the library.
pub fn plain_partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in 1..=rem.min(max) {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn column_length(lambda: &[u32], j: u32) -> usize {
    lambda.iter().take_while(|&&p| p > j).count()
}

/// Every partition obtained by removing one rim hook of length ℓ. For a cell
/// (i, j) with hook length ℓ, row k of the rim strip keeps
/// max(j, λ_{k+1} − 1) cells, for k from i to the bottom of column j.
pub fn remove_rim_hooks(lambda: &[u32], ell: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in 0..lambda.len() {
        for j in 0..lambda[i] {
            let arm = lambda[i] - j - 1;
            let bottom = column_length(lambda, j) - 1;
            let leg = (bottom - i) as u32;
            if arm + leg + 1 != ell {
                continue;
            }
            let mut mu = lambda.to_vec();
            for k in i..=bottom {
                let below = lambda.get(k + 1).copied().unwrap_or(0);
                mu[k] = j.max(below.saturating_sub(1));
            }
            while mu.last() == Some(&0) {
                mu.pop();
            }
            let removed: u32 = lambda.iter().sum::<u32>() - mu.iter().sum::<u32>();
            assert_eq!(removed, ell, "rim strip of {lambda:?} at ({i},{j})");
            out.push(mu);
        }
    }
    out
}

/// Set of partitions reached when rim ℓ-hooks are stripped in every possible order
/// until none remains.
pub fn cores_all_orders(lambda: &[u32], ell: u32) -> BTreeSet<Vec<u32>> {
    fn go(l: Vec<u32>, ell: u32, memo: &mut HashMap<Vec<u32>, BTreeSet<Vec<u32>>>) -> BTreeSet<Vec<u32>> {
        if let Some(s) = memo.get(&l) {
            return s.clone();
        }
        let next = remove_rim_hooks(&l, ell);
        let res = if next.is_empty() {
            BTreeSet::from([l.clone()])
        } else {
            next.into_iter().flat_map(|m| go(m, ell, memo)).collect()
        };
        memo.insert(l, res.clone());
        res
    }
    go(lambda.to_vec(), ell, &mut HashMap::new())
}

/// f^λ by the branching rule: sum over removable corners.
pub fn branching_degree(lambda: &[u32], memo: &mut HashMap<Vec<u32>, u128>) -> u128 {
    if lambda.is_empty() {
        return 1;
    }
    if let Some(&v) = memo.get(lambda) {
        return v;
    }
    let mut total = 0;
    for i in 0..lambda.len() {
        if i + 1 == lambda.len() || lambda[i + 1] < lambda[i] {
            let mut mu = lambda.to_vec();
            mu[i] -= 1;
            if mu[i] == 0 {
                mu.pop();
            }
            total += branching_degree(&mu, memo);
        }
    }
    memo.insert(lambda.to_vec(), total);
    total
}

/// Character degrees of every group of order at most 8, with the order.
pub fn small_groups() -> Vec<(&'static str, Vec<u64>, u64)> {
    vec![
        ("C1", vec![1], 1),
        ("C2", vec![1; 2], 2),
        ("C3", vec![1; 3], 3),
        ("C4", vec![1; 4], 4),
        ("C2xC2", vec![1; 4], 4),
        ("C5", vec![1; 5], 5),
        ("C6", vec![1; 6], 6),
        ("S3", vec![1, 1, 2], 6),
        ("C7", vec![1; 7], 7),
        ("C8", vec![1; 8], 8),
        ("C2xC4", vec![1; 8], 8),
        ("C2^3", vec![1; 8], 8),
        ("D8", vec![1, 1, 1, 1, 2], 8),
        ("Q8", vec![1, 1, 1, 1, 2], 8),
    ]
}

/// Defect-zero count read straight off the degrees: those whose ℓ-part is the ℓ-part of |N|.
pub fn defect_zero_count(degrees: &[u64], order: u64, ell: u64) -> u64 {
    let part = |mut x: u64| {
        let mut p = 1;
        while x.is_multiple_of(ell) {
            x /= ell;
            p *= ell;
        }
        p
    };
    let full = part(order);
    degrees.iter().filter(|&&d| part(d) == full).count() as u64
}

pub fn to_plain(p: &Partition) -> Vec<u32> {
    p.parts().to_vec()
}

/// The library's core, for comparison.
pub fn library_core(lambda: &[u32], ell: u32) -> Vec<u32> {
    to_plain(&core_and_quotient(&Partition::from_parts(lambda.to_vec()), ell).0)
}
