//! Seeds: a cluster of Laurent polynomials together with an exchange matrix.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::SeedError;
use crate::laurent::LaurentPoly;
use crate::quiver::Quiver;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    pub cluster: Vec<LaurentPoly>,
    pub quiver: Quiver,
}

impl std::fmt::Debug for Seed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c: Vec<String> = self
            .cluster
            .iter()
            .map(|p| p.to_fraction_string())
            .collect();
        write!(f, "Seed({{{}}}, {})", c.join(", "), self.quiver)
    }
}

/// JSON view: cluster variables as fraction strings plus the matrix rows.
#[derive(Debug, Clone, Serialize)]
pub struct SeedView {
    pub cluster: Vec<String>,
    pub b: Vec<Vec<i64>>,
}

impl Seed {
    /// The initial seed `(x1, ..., xn)`.
    pub fn initial(quiver: Quiver) -> Self {
        let n = quiver.n();
        Seed {
            cluster: (0..n).map(|i| LaurentPoly::var(n, i)).collect(),
            quiver,
        }
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    /// Exchange relation at `k`: the new `x_k` is
    /// `(prod x_i^[b_ik]+ + prod x_i^[-b_ik]+) / x_k`.
    pub fn mutate(&self, k: usize) -> Result<Seed, SeedError> {
        let quiver = self.quiver.mutate(k)?;
        let n = self.n();
        let nvars = self.cluster[0].nvars();
        let mut plus = LaurentPoly::one(nvars);
        let mut minus = LaurentPoly::one(nvars);
        for i in 0..n {
            let b = self.quiver.get(i, k);
            if b > 0 {
                plus = &plus * &self.cluster[i].pow(b as u32);
            } else if b < 0 {
                minus = &minus * &self.cluster[i].pow((-b) as u32);
            }
        }
        let new = (&plus + &minus)
            .div_exact(&self.cluster[k])
            .ok_or(SeedError::LaurentViolation { vertex: k })?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new;
        Ok(Seed { cluster, quiver })
    }

    pub fn apply(&self, seq: &[usize]) -> Result<Seed, SeedError> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    pub fn view(&self) -> SeedView {
        SeedView {
            cluster: self
                .cluster
                .iter()
                .map(|p| p.to_fraction_string())
                .collect(),
            b: self.quiver.to_rows(),
        }
    }

    /// Representative of the seed's relabeling class: cluster sorted, matrix
    /// permuted to match. Ties between equal variables take the least matrix.
    fn normal_form(&self) -> Seed {
        let n = self.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.cluster[a].cmp(&self.cluster[b]));
        let mut best: Option<Quiver> = None;
        tie_orders(&self.cluster, &mut order, 0, &mut |ord| {
            let mut perm = vec![0; n];
            for (pos, &v) in ord.iter().enumerate() {
                perm[v] = pos;
            }
            let q = self.quiver.permute_unchecked(&perm);
            if best.as_ref().is_none_or(|b| q < *b) {
                best = Some(q);
            }
        });
        let cluster = order.iter().map(|&v| self.cluster[v].clone()).collect();
        Seed {
            cluster,
            quiver: best.expect("at least one order"),
        }
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.cluster.iter().all(|p| p.all_coefficients_positive())
    }
}

/// Visits every reordering of `order` that only permutes runs of equal
/// cluster variables.
fn tie_orders(
    cluster: &[LaurentPoly],
    order: &mut Vec<usize>,
    start: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if start >= order.len() {
        f(order);
        return;
    }
    let mut end = start + 1;
    while end < order.len() && cluster[order[end]] == cluster[order[start]] {
        end += 1;
    }
    if end - start == 1 {
        return tie_orders(cluster, order, end, f);
    }
    permute_run(cluster, order, start, end, f);
}

fn permute_run(
    cluster: &[LaurentPoly],
    order: &mut Vec<usize>,
    i: usize,
    end: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if i == end {
        return tie_orders(cluster, order, end, f);
    }
    for j in i..end {
        order.swap(i, j);
        permute_run(cluster, order, i + 1, end, f);
        order.swap(i, j);
    }
}

/// True when one permutation carries `a`'s cluster to `b`'s and `a`'s matrix
/// to `b`'s.
pub fn seeds_equal_up_to_relabeling(a: &Seed, b: &Seed) -> bool {
    a.n() == b.n() && a.normal_form() == b.normal_form()
}

/// Breadth-first search over seeds modulo relabeling. Returns the seeds in
/// discovery order, starting with `s`.
pub fn enumerate_seeds(s: &Seed, cap: usize) -> Result<Vec<Seed>, SeedError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(s.normal_form());
    out.push(s.clone());
    queue.push_back(s.clone());
    if cap == 0 {
        return Err(SeedError::CapExceeded { cap });
    }
    while let Some(cur) = queue.pop_front() {
        for k in 0..cur.n() {
            let next = cur.mutate(k)?;
            if seen.insert(next.normal_form()) {
                if out.len() == cap {
                    return Err(SeedError::CapExceeded { cap });
                }
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

/// Convenience for integer constants in tests and rendering.
pub fn constant(nvars: usize, c: i64) -> LaurentPoly {
    LaurentPoly::monomial(vec![0; nvars], BigInt::from(c))
}
