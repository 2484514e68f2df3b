//! Slow, obviously-correct reference implementations used as test oracles.
//! Nothing here calls into the library except to convert types.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use itertools::Itertools;
use proptest::prelude::*;
use quivermut::Quiver;

pub type Matrix = Vec<Vec<i64>>;

pub fn raw_mutate(b: &Matrix, k: usize) -> Matrix {
    let n = b.len();
    let mut out = b.clone();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                let (x, y) = (b[i][k], b[k][j]);
                b[i][j] + x.max(0) * y.max(0) - (-x).max(0) * (-y).max(0)
            };
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// `out[p[i]][p[j]] = b[i][j]`, flattened.
pub fn permuted_flat(b: &Matrix, p: &[usize]) -> Vec<i64> {
    let n = b.len();
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[p[i] * n + p[j]] = b[i][j];
        }
    }
    out
}

/// Least row-major flattening over all `n!` relabelings.
pub fn brute_key(b: &Matrix, perms: &[Vec<usize>]) -> Vec<i64> {
    perms
        .iter()
        .map(|p| permuted_flat(b, p))
        .min()
        .expect("at least one permutation")
}

pub fn brute_isomorphic(a: &Matrix, b: &Matrix) -> bool {
    a.len() == b.len() && {
        let perms = permutations(a.len());
        brute_key(a, &perms) == brute_key(b, &perms)
    }
}

/// Least flattenings of every quiver reachable by mutation, or `None` past
/// `limit` classes.
pub fn oracle_class_keys(b: &Matrix, limit: usize) -> Option<HashSet<Vec<i64>>> {
    let perms = permutations(b.len());
    let mut seen = HashSet::from([brute_key(b, &perms)]);
    let mut queue = VecDeque::from([b.clone()]);
    while let Some(cur) = queue.pop_front() {
        for k in 0..cur.len() {
            let m = raw_mutate(&cur, k);
            if seen.insert(brute_key(&m, &perms)) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(m);
            }
        }
    }
    Some(seen)
}

pub fn oracle_class_size(b: &Matrix, limit: usize) -> Option<usize> {
    oracle_class_keys(b, limit).map(|s| s.len())
}

pub fn rows(q: &Quiver) -> Matrix {
    q.to_rows()
}

/// Skew-symmetric matrix from its strict upper triangle, row by row.
pub fn from_upper(n: usize, upper: &[i64]) -> Matrix {
    let mut b = vec![vec![0; n]; n];
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    for ((i, j), &v) in pairs.zip(upper) {
        b[i][j] = v;
        b[j][i] = -v;
    }
    b
}

/// Random quivers on 1..=max_n vertices with entries in -2..=2.
pub fn arb_quiver(max_n: usize) -> impl Strategy<Value = Quiver> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(-2i64..=2, n * (n - 1) / 2)
            .prop_map(move |u| Quiver::from_rows(&from_upper(n, &u)).expect("skew by construction"))
    })
}

pub fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}
