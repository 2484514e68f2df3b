//! Canonical labeling of quivers under simultaneous row/column permutation.
//!
//! The canonical matrix of a quiver is the lexicographically smallest
//! row-major flattening of `P B P^T` over all vertex permutations `P`,
//! with the usual integer order on entries. Every strategy registered here
//! must return exactly that matrix; they differ only in how they find it.
//!
//! [`RefinedSearch`] builds the permutation one canonical row at a time.
//! Once positions `0..r` are fixed, the vertices still to be placed form an
//! ordered partition whose cells share all entries towards the fixed
//! vertices. Choosing the vertex for position `r` fixes row `r` completely:
//! the best it can do is to sort each cell by its entries in that row, which
//! also refines the partition. Only candidates producing the smallest row
//! are expanded; ties branch, and branches equivalent under automorphisms
//! already discovered (fixing the current prefix pointwise) are skipped.

use std::cmp::Ordering;
use std::hash::Hasher;
use std::sync::OnceLock;

use fnv::FnvHasher;
use serde::Serialize;

use crate::quiver::{invert_permutation, Quiver};

/// A canonical matrix with the relabeling that produces it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    /// The canonical representative.
    pub matrix: Quiver,
    /// `witness[i]` is the canonical label of input vertex `i`.
    pub witness: Vec<usize>,
    /// FNV-1a digest of [`CanonicalForm::matrix`].
    pub hash: u64,
}

/// 64-bit FNV-1a over the row-major entries, each as 8 little-endian bytes
/// of two's complement.
pub fn matrix_digest(q: &Quiver) -> u64 {
    let mut h = FnvHasher::default();
    for v in q.as_flat() {
        h.write(&v.to_le_bytes());
    }
    h.finish()
}

/// A strategy for computing canonical forms.
pub trait Canonicalizer: Send + Sync {
    /// Registry key.
    fn name(&self) -> &'static str;

    fn describe(&self) -> &'static str;

    fn canonical_form(&self, q: &Quiver) -> CanonicalForm;

    /// Only the canonical matrix; strategies may skip witness bookkeeping.
    fn canonical_matrix(&self, q: &Quiver) -> Quiver {
        self.canonical_form(q).matrix
    }
}

fn finish(q: &Quiver, order: &[usize]) -> CanonicalForm {
    // order[pos] = input vertex placed at canonical position pos
    let witness = invert_permutation(order);
    let matrix = q.permute_unchecked(&witness);
    let hash = matrix_digest(&matrix);
    CanonicalForm {
        matrix,
        witness,
        hash,
    }
}

/// Exhaustive minimum over all `n!` orderings. Only sensible for small `n`.
#[derive(Debug, Default, Clone, Copy)]
pub struct BruteForce;

impl Canonicalizer for BruteForce {
    fn name(&self) -> &'static str {
        "brute"
    }

    fn describe(&self) -> &'static str {
        "minimum over all n! relabelings"
    }

    fn canonical_form(&self, q: &Quiver) -> CanonicalForm {
        let n = q.n();
        let mut order: Vec<usize> = (0..n).collect();
        let mut best_order = order.clone();
        let mut best: Vec<i64> = flatten(q, &order);
        let mut scratch = best.clone();
        // Heap's algorithm, iterative.
        let mut c = vec![0usize; n];
        let mut i = 1;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    order.swap(0, i);
                } else {
                    order.swap(c[i], i);
                }
                fill_flat(q, &order, &mut scratch);
                if scratch < best {
                    best.copy_from_slice(&scratch);
                    best_order.copy_from_slice(&order);
                }
                c[i] += 1;
                i = 1;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        finish(q, &best_order)
    }
}

fn flatten(q: &Quiver, order: &[usize]) -> Vec<i64> {
    let mut out = vec![0; order.len() * order.len()];
    fill_flat(q, order, &mut out);
    out
}

fn fill_flat(q: &Quiver, order: &[usize], out: &mut [i64]) {
    let n = order.len();
    for (r, &u) in order.iter().enumerate() {
        let row = q.row(u);
        for (c, &v) in order.iter().enumerate() {
            out[r * n + c] = row[v];
        }
    }
}

/// Row-by-row individualization and refinement with automorphism pruning.
#[derive(Debug, Default, Clone, Copy)]
pub struct RefinedSearch;

impl Canonicalizer for RefinedSearch {
    fn name(&self) -> &'static str {
        "refined"
    }

    fn describe(&self) -> &'static str {
        "row-by-row refinement with automorphism pruning (default)"
    }

    fn canonical_form(&self, q: &Quiver) -> CanonicalForm {
        let order = RefinedState::run(q);
        finish(q, &order)
    }
}

struct RefinedState<'a> {
    q: &'a Quiver,
    n: usize,
    rows: Vec<i64>,
    order: Vec<usize>,
    best_rows: Vec<i64>,
    best_order: Vec<usize>,
    have_best: bool,
    automorphisms: Vec<Vec<usize>>,
}

impl<'a> RefinedState<'a> {
    fn run(q: &'a Quiver) -> Vec<usize> {
        let n = q.n();
        let mut st = RefinedState {
            q,
            n,
            rows: vec![0; n * n],
            order: vec![0; n],
            best_rows: vec![0; n * n],
            best_order: vec![0; n],
            have_best: false,
            automorphisms: Vec::new(),
        };
        let cells: Vec<usize> = (0..n).collect();
        let mut starts = vec![false; n + 1];
        starts[0] = true;
        starts[n] = true;
        st.search(0, &cells, &starts);
        st.best_order
    }

    /// `cells[r..]` are the unplaced vertices in cell order; `starts[i]` marks
    /// a cell boundary before position `i`.
    fn search(&mut self, r: usize, cells: &[usize], starts: &[bool]) {
        let n = self.n;
        if r == n {
            self.leaf();
            return;
        }
        let first_end = (r + 1..=n).find(|&i| starts[i]).unwrap();
        let candidates = &cells[r..first_end];

        // Row key for a candidate: its entries towards every other unplaced
        // vertex, sorted inside each cell.
        let mut best_key: Vec<i64> = Vec::new();
        let mut key = Vec::with_capacity(n - r);
        let mut winners: Vec<usize> = Vec::with_capacity(candidates.len());
        for &v in candidates {
            self.row_key(v, r, cells, starts, &mut key);
            let ord = if winners.is_empty() {
                Ordering::Less
            } else {
                key.cmp(&best_key)
            };
            match ord {
                Ordering::Less => {
                    std::mem::swap(&mut best_key, &mut key);
                    winners.clear();
                    winners.push(v);
                }
                Ordering::Equal => winners.push(v),
                Ordering::Greater => {}
            }
        }

        // Row r is the same for every winner.
        {
            let v = winners[0];
            let row = self.q.row(v);
            let base = r * n;
            for c in 0..r {
                self.rows[base + c] = row[self.order[c]];
            }
            self.rows[base + r] = 0;
            self.rows[base + r + 1..base + n].copy_from_slice(&best_key);
        }

        let mut explored: Vec<usize> = Vec::with_capacity(winners.len());
        let mut next_cells = cells.to_vec();
        let mut next_starts = starts.to_vec();
        for &v in &winners {
            if self.have_best && self.rows[..(r + 1) * n] > self.best_rows[..(r + 1) * n] {
                return;
            }
            if !explored.is_empty() && self.equivalent_to_explored(r, v, &explored) {
                continue;
            }
            explored.push(v);
            self.order[r] = v;
            next_cells.copy_from_slice(cells);
            next_starts.copy_from_slice(starts);
            self.refine(v, r, first_end, &mut next_cells, &mut next_starts);
            self.search(r + 1, &next_cells, &next_starts);
        }
    }

    fn row_key(&self, v: usize, r: usize, cells: &[usize], starts: &[bool], key: &mut Vec<i64>) {
        key.clear();
        let row = self.q.row(v);
        let mut seg_start = key.len();
        for i in r..self.n {
            if starts[i] && i > r {
                key[seg_start..].sort_unstable();
                seg_start = key.len();
            }
            let w = cells[i];
            if w != v {
                key.push(row[w]);
            }
        }
        key[seg_start..].sort_unstable();
    }

    /// Places `v` at position `r` and splits every cell by the entries of
    /// row `v`.
    fn refine(
        &self,
        v: usize,
        r: usize,
        first_end: usize,
        cells: &mut [usize],
        starts: &mut [bool],
    ) {
        let row = self.q.row(v);
        let at = cells[r..first_end].iter().position(|&w| w == v).unwrap() + r;
        // Keep the rest of the first cell in place behind v.
        cells[r..=at].rotate_right(1);
        starts[r + 1] = true;
        let n = self.n;
        let mut i = r + 1;
        while i < n {
            let mut j = i + 1;
            while j < n && !starts[j] {
                j += 1;
            }
            let seg = &mut cells[i..j];
            if seg.len() > 1 {
                seg.sort_by_key(|&w| row[w]);
                for k in i + 1..j {
                    if row[cells[k]] != row[cells[k - 1]] {
                        starts[k] = true;
                    }
                }
            }
            i = j;
        }
    }

    fn leaf(&mut self) {
        if !self.have_best {
            self.take_best();
            return;
        }
        match self.rows.cmp(&self.best_rows) {
            Ordering::Less => self.take_best(),
            Ordering::Equal => {
                // best_order[i] and order[i] land on the same position.
                let mut gamma = vec![0; self.n];
                for (&a, &b) in self.best_order.iter().zip(&self.order) {
                    gamma[a] = b;
                }
                if gamma.iter().enumerate().any(|(i, &g)| i != g) {
                    self.automorphisms.push(gamma);
                }
            }
            Ordering::Greater => {}
        }
    }

    fn take_best(&mut self) {
        self.best_rows.copy_from_slice(&self.rows);
        self.best_order.copy_from_slice(&self.order);
        self.have_best = true;
    }

    /// Whether `v` lies in the orbit of an explored sibling under the group
    /// generated by the known automorphisms that fix `order[..r]` pointwise.
    fn equivalent_to_explored(&self, r: usize, v: usize, explored: &[usize]) -> bool {
        let prefix = &self.order[..r];
        let gens: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|g| prefix.iter().all(|&p| g[p] == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in gens {
            for (i, &gi) in g.iter().enumerate() {
                let (a, b) = (root(&mut parent, i), root(&mut parent, gi));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rv = root(&mut parent, v);
        explored.iter().any(|&u| root(&mut parent, u) == rv)
    }
}

/// Named canonicalization strategies.
pub struct CanonRegistry {
    entries: Vec<Box<dyn Canonicalizer>>,
}

impl CanonRegistry {
    pub fn new() -> Self {
        CanonRegistry {
            entries: Vec::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut reg = Self::new();
        reg.register(Box::new(RefinedSearch));
        reg.register(Box::new(BruteForce));
        reg
    }

    /// Adds a strategy, replacing any existing one of the same name.
    pub fn register(&mut self, c: Box<dyn Canonicalizer>) {
        self.entries.retain(|e| e.name() != c.name());
        self.entries.push(c);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Canonicalizer> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }
}

impl Default for CanonRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

/// The process-wide registry holding the built-in strategies.
pub fn registry() -> &'static CanonRegistry {
    static REG: OnceLock<CanonRegistry> = OnceLock::new();
    REG.get_or_init(CanonRegistry::with_builtins)
}

/// Canonical form with the default strategy.
pub fn canonical_form(q: &Quiver) -> CanonicalForm {
    RefinedSearch.canonical_form(q)
}

/// Whether some relabeling carries `a` onto `b`.
pub fn are_isomorphic(a: &Quiver, b: &Quiver) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let (mut sa, mut sb) = (a.as_flat().to_vec(), b.as_flat().to_vec());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    canonical_form(a).matrix == canonical_form(b).matrix
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrows(n: usize, a: &[(usize, usize, i64)]) -> Quiver {
        Quiver::from_arrows(n, a).unwrap()
    }

    #[test]
    fn single_arrow_both_directions() {
        let a = canonical_form(&arrows(2, &[(0, 1, 1)]));
        let b = canonical_form(&arrows(2, &[(1, 0, 1)]));
        assert_eq!(a.matrix, b.matrix);
        assert_eq!(a.matrix.as_flat(), &[0, -1, 1, 0]);
    }

    #[test]
    fn witness_reproduces_matrix() {
        let q = arrows(5, &[(0, 1, 2), (1, 2, 1), (2, 0, 1), (3, 2, 1), (4, 3, 2)]);
        let cf = canonical_form(&q);
        assert_eq!(q.permute(&cf.witness).unwrap(), cf.matrix);
        assert_eq!(cf.hash, matrix_digest(&cf.matrix));
    }

    #[test]
    fn idempotent_with_identity_witness() {
        let q = arrows(4, &[(0, 1, 1), (1, 2, 1), (1, 3, 1)]);
        let cf = canonical_form(&q);
        let again = canonical_form(&cf.matrix);
        assert_eq!(again.matrix, cf.matrix);
        assert_eq!(cf.matrix.permute(&again.witness).unwrap(), cf.matrix);
    }

    #[test]
    fn empty_quiver_is_fast_and_fixed() {
        let q = Quiver::empty(12);
        let cf = canonical_form(&q);
        assert_eq!(cf.matrix, q);
    }

    #[test]
    fn brute_force_agrees_on_small_cases() {
        let q = arrows(5, &[(0, 1, 1), (2, 1, 2), (3, 4, 1), (4, 0, 1)]);
        assert_eq!(
            BruteForce.canonical_form(&q).matrix,
            RefinedSearch.canonical_form(&q).matrix
        );
        let bf = BruteForce.canonical_form(&q);
        assert_eq!(q.permute(&bf.witness).unwrap(), bf.matrix);
    }

    #[test]
    fn fnv_digest_is_pinned() {
        // FNV-1a of 32 zero bytes (a 2x2 zero matrix).
        let mut h: u64 = 0xcbf29ce484222325;
        for _ in 0..32 {
            h ^= 0;
            h = h.wrapping_mul(0x100000001b3);
        }
        assert_eq!(matrix_digest(&Quiver::empty(2)), h);
    }

    #[test]
    fn registry_lookup() {
        let reg = registry();
        assert_eq!(reg.names(), vec!["refined", "brute"]);
        assert!(reg.get("brute").is_some());
        assert!(reg.get("nauty").is_none());
    }
}
