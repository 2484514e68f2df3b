//! Quivers as skew-symmetric integer matrices.
//!
//! A [`Quiver`] on `n` vertices stores the exchange matrix `b` row-major.
//! The graph is read off the matrix: `b[i][j] > 0` means `b[i][j]` arrows
//! from `j` to `i`. Skew-symmetry rules out loops and 2-cycles, so a
//! multigraph view is never stored.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{QuiverError, Result};

#[inline]
fn pos(z: i64) -> i64 {
    z.max(0)
}

/// A finite quiver without loops or 2-cycles.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quiver {
    n: usize,
    b: Vec<i64>,
}

impl Quiver {
    /// The quiver on `n` vertices with no arrows.
    pub fn empty(n: usize) -> Self {
        Quiver {
            n,
            b: vec![0; n * n],
        }
    }

    /// Builds a quiver from rows, checking squareness and skew-symmetry.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(QuiverError::Empty);
        }
        let mut b = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(QuiverError::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
            b.extend_from_slice(r);
        }
        Self::from_flat(n, b)
    }

    /// Builds a quiver from a row-major flattened matrix.
    pub fn from_flat(n: usize, b: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(QuiverError::Empty);
        }
        if b.len() != n * n {
            return Err(QuiverError::NotSquare {
                row: b.len() / n.max(1),
                len: b.len(),
                n,
            });
        }
        for i in 0..n {
            for j in i..n {
                let (a, c) = (b[i * n + j], b[j * n + i]);
                if a.checked_neg() != Some(c) {
                    return Err(QuiverError::NotSkewSymmetric { i, j, a, b: c });
                }
            }
        }
        Ok(Quiver { n, b })
    }

    /// Skips validation. Callers must guarantee skew-symmetry.
    pub(crate) fn from_flat_unchecked(n: usize, b: Vec<i64>) -> Self {
        debug_assert_eq!(b.len(), n * n);
        Quiver { n, b }
    }

    /// Builds a quiver from `(from, to, multiplicity)` arrows.
    ///
    /// Arrows between the same pair accumulate with sign, so opposite
    /// arrows cancel.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, i64)]) -> Result<Self> {
        if n == 0 {
            return Err(QuiverError::Empty);
        }
        let mut q = Quiver::empty(n);
        for &(from, to, m) in arrows {
            q.check_vertex(from)?;
            q.check_vertex(to)?;
            if from == to {
                return Err(QuiverError::NotSkewSymmetric {
                    i: from,
                    j: to,
                    a: m,
                    b: m,
                });
            }
            q.b[to * n + from] += m;
            q.b[from * n + to] -= m;
        }
        Ok(q)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `b[i][j]`. Panics if out of range.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i * self.n + j]
    }

    /// Number of arrows from `from` to `to` (zero if they point the other way).
    pub fn arrows(&self, from: usize, to: usize) -> i64 {
        pos(self.get(to, from))
    }

    /// Row-major matrix entries.
    pub fn as_flat(&self) -> &[i64] {
        &self.b
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.b[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.b.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    pub(crate) fn check_vertex(&self, k: usize) -> Result<()> {
        if k < self.n {
            Ok(())
        } else {
            Err(QuiverError::VertexOutOfRange {
                vertex: k,
                n: self.n,
            })
        }
    }

    /// Matrix mutation at `k`.
    ///
    /// Entries in row or column `k` flip sign; every other entry becomes
    /// `b[i][j] + [b[i][k]]+ [b[k][j]]+ - [-b[i][k]]+ [-b[k][j]]+`.
    pub fn mutate(&self, k: usize) -> Result<Quiver> {
        self.check_vertex(k)?;
        let n = self.n;
        let mut out = self.b.clone();
        let overflow = || QuiverError::Overflow { vertex: k };
        for i in 0..n {
            let bik = self.b[i * n + k];
            if i == k {
                for j in 0..n {
                    out[k * n + j] = self.b[k * n + j].checked_neg().ok_or_else(overflow)?;
                }
                continue;
            }
            out[i * n + k] = bik.checked_neg().ok_or_else(overflow)?;
            if bik == 0 {
                continue;
            }
            for j in 0..n {
                if j == k {
                    continue;
                }
                let bkj = self.b[k * n + j];
                let delta = if bik > 0 && bkj > 0 {
                    bik.checked_mul(bkj).ok_or_else(overflow)?
                } else if bik < 0 && bkj < 0 {
                    -bik.checked_mul(bkj).ok_or_else(overflow)?
                } else {
                    0
                };
                if delta != 0 {
                    out[i * n + j] = out[i * n + j].checked_add(delta).ok_or_else(overflow)?;
                }
            }
        }
        Ok(Quiver { n, b: out })
    }

    /// Relabels vertices: vertex `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Quiver> {
        check_permutation(perm, self.n)?;
        Ok(self.permute_unchecked(perm))
    }

    pub(crate) fn permute_unchecked(&self, perm: &[usize]) -> Quiver {
        let n = self.n;
        let mut b = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                b[perm[i] * n + perm[j]] = self.b[i * n + j];
            }
        }
        Quiver { n, b }
    }

    /// The full subquiver on `vs`, in the order of `vs`.
    pub fn full_subquiver(&self, vs: &VertexSet) -> Result<Quiver> {
        if let Some(&v) = vs.as_slice().iter().find(|&&v| v >= self.n) {
            return Err(QuiverError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(self.restrict(vs.as_slice()))
    }

    pub(crate) fn restrict(&self, vs: &[usize]) -> Quiver {
        let m = vs.len();
        let mut b = Vec::with_capacity(m * m);
        for &i in vs {
            for &j in vs {
                b.push(self.get(i, j));
            }
        }
        Quiver { n: m, b }
    }

    /// Whether the underlying undirected graph is connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components of the underlying graph, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Largest number of arrows between any two vertices.
    pub fn max_multiplicity(&self) -> u64 {
        self.b.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    /// Neighbors of `v` (vertices joined to `v` by at least one arrow).
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v)
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(j, _)| j)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Quiver) -> Quiver {
        let n = self.n + other.n;
        let mut q = Quiver::empty(n);
        for i in 0..self.n {
            for j in 0..self.n {
                q.b[i * n + j] = self.get(i, j);
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                q.b[(i + self.n) * n + j + self.n] = other.get(i, j);
            }
        }
        q
    }

    /// `(from, to, multiplicity)` for every pair carrying arrows.
    pub fn arrow_list(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for from in 0..self.n {
            for to in 0..self.n {
                let m = self.get(to, from);
                if m > 0 {
                    out.push((from, to, m));
                }
            }
        }
        out
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver{:?}", self.to_rows())
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.b.chunks(self.n).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            write!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    n: usize,
    b: Vec<Vec<i64>>,
}

impl Serialize for Quiver {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuiverJson {
            n: self.n,
            b: self.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = QuiverJson::deserialize(d)?;
        if raw.b.len() != raw.n {
            return Err(serde::de::Error::custom(format!(
                "not square: n = {} but b has {} rows",
                raw.n,
                raw.b.len()
            )));
        }
        Quiver::from_rows(&raw.b).map_err(serde::de::Error::custom)
    }
}

/// Validates that `perm` is a permutation of `0..n`.
pub fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(QuiverError::InvalidPermutation(format!(
            "length {} for {n} vertices",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(QuiverError::InvalidPermutation(format!("{perm:?}")));
        }
    }
    Ok(())
}

/// Inverse of a permutation given as `perm[i] = image of i`.
pub fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// An ordered set of distinct vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Checks distinctness and, when `n` is given, range.
    pub fn new(vertices: Vec<usize>, n: Option<usize>) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(vertices.len());
        for &v in &vertices {
            if let Some(n) = n {
                if v >= n {
                    return Err(QuiverError::VertexOutOfRange { vertex: v, n });
                }
            }
            if !seen.insert(v) {
                return Err(QuiverError::DuplicateVertex(v));
            }
        }
        Ok(VertexSet(vertices))
    }

    pub fn all(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<usize>> for VertexSet {
    type Error = QuiverError;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        VertexSet::new(v, None)
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(v: VertexSet) -> Self {
        v.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Quiver {
        Quiver::from_rows(rows).unwrap()
    }

    #[test]
    fn rank_two_mutation_flips_sign() {
        let b = q(&[&[0, -1], &[1, 0]]);
        assert_eq!(b.mutate(0).unwrap(), q(&[&[0, 1], &[-1, 0]]));
    }

    #[test]
    fn cyclic_triangle_mutation_at_middle() {
        // 1 -p-> 2 -q-> 3 -r-> 1 with vertex "2" at index 1.
        let (p, qq, r) = (2, 2, 2);
        let g = Quiver::from_arrows(3, &[(0, 1, p), (1, 2, qq), (2, 0, r)]).unwrap();
        let m = g.mutate(1).unwrap();
        assert_eq!(m.arrows(1, 0), p);
        assert_eq!(m.arrows(2, 1), qq);
        assert_eq!(m.arrows(0, 2), p * qq - r);
    }

    #[test]
    fn mutate_rejects_out_of_range() {
        let err = Quiver::empty(2).mutate(2).unwrap_err();
        assert!(err.to_string().contains("vertex out of range"));
    }

    #[test]
    fn validate_cases() {
        assert!(Quiver::from_rows(&[[0i64, 1], [-1, 0]]).is_ok());
        assert!(Quiver::from_rows(&[[0i64, -2], [2, 0]]).is_ok());
        let err = Quiver::from_rows(&[[0i64, 1], [1, 0]]).unwrap_err();
        assert_eq!(
            err,
            QuiverError::NotSkewSymmetric {
                i: 0,
                j: 1,
                a: 1,
                b: 1
            }
        );
        assert!(err.to_string().contains("not skew-symmetric"));
        let err = Quiver::from_rows(&[vec![0i64, 1], vec![-1]]).unwrap_err();
        assert!(err.to_string().starts_with("not square"));
        assert!(matches!(
            Quiver::from_rows(&[[1i64]]),
            Err(QuiverError::NotSkewSymmetric { .. })
        ));
    }

    #[test]
    fn connectivity() {
        assert!(Quiver::empty(1).is_connected());
        let two_arrows = Quiver::from_arrows(4, &[(0, 1, 1), (2, 3, 1)]).unwrap();
        assert!(!two_arrows.is_connected());
        assert_eq!(two_arrows.components(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn multiplicities() {
        assert_eq!(Quiver::empty(3).max_multiplicity(), 0);
        assert_eq!(
            Quiver::from_arrows(2, &[(0, 1, 3)])
                .unwrap()
                .max_multiplicity(),
            3
        );
    }

    #[test]
    fn subquiver_of_path() {
        let a3 = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let vs = VertexSet::new(vec![1, 2], Some(3)).unwrap();
        assert_eq!(
            a3.full_subquiver(&vs).unwrap(),
            Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap()
        );
        assert_eq!(a3.full_subquiver(&VertexSet::all(3)).unwrap(), a3);
        assert!(VertexSet::new(vec![0, 0], None).is_err());
        assert!(VertexSet::new(vec![3], Some(3)).is_err());
    }

    #[test]
    fn isolated_vertex_is_fixed() {
        let g = Quiver::from_arrows(3, &[(0, 1, 2)]).unwrap();
        assert_eq!(g.mutate(2).unwrap(), g);
    }

    #[test]
    fn overflow_is_an_error() {
        let big = i64::MAX / 2;
        let g = Quiver::from_arrows(3, &[(0, 1, big), (1, 2, big)]).unwrap();
        assert_eq!(
            g.mutate(1).unwrap_err(),
            QuiverError::Overflow { vertex: 1 }
        );
    }

    #[test]
    fn json_round_trip() {
        let g = Quiver::from_arrows(3, &[(0, 1, 2), (2, 1, 1)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":3,"b":[[0,-2,0],[2,0,1],[0,-1,0]]}"#);
        assert_eq!(serde_json::from_str::<Quiver>(&s).unwrap(), g);
        assert!(serde_json::from_str::<Quiver>(r#"{"n":2,"b":[[0,1],[1,0]]}"#).is_err());
    }
}
