//! Mutation classes and the finiteness decision.
//!
//! [`enumerate_class`] runs a breadth-first search over canonical forms,
//! mutating every representative at every vertex. In a mutation-finite
//! connected quiver with at least three vertices no two vertices carry more
//! than two arrows, so the search stops with an infinite verdict the moment
//! such a pair shows up inside a connected component of size three or more.
//!
//! The decision is total. Mutation never merges or splits connected
//! components, and a component with at most two vertices only ever flips
//! sign. Every other entry stays in `{-2, ..., 2}` until the search aborts,
//! so the reachable set of canonical matrices is finite and the search
//! either exhausts it (finite class) or meets a multiplicity of three or
//! more (infinite class, with the mutation sequence as witness).
//!
//! Extensions searched by [`one_vertex_extensions`] only attach the new
//! vertex with multiplicities in `{-2, ..., 2}`. Anything heavier contains a
//! three-vertex subquiver with a triple arrow and is infinite a fortiori.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{self, Canonicalizer, RefinedSearch};
use crate::error::{QuiverError, Result, SearchError};
use crate::quiver::{Quiver, VertexSet};

/// Default node budget for class enumeration.
pub const DEFAULT_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassStatus {
    Finite,
    Infinite,
}

/// A mutation sequence ending in a quiver with an obstruction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfiniteWitness {
    /// Vertices of the seed quiver, applied left to right.
    pub sequence: Vec<usize>,
    /// The seed after applying `sequence`.
    pub quiver: Quiver,
    /// A pair carrying at least three arrows in a component of size at least three.
    pub pair: (usize, usize),
}

/// `from` mutated at `vertex` is (isomorphic to) `to`; indices into
/// [`MutationClass::representatives`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ClassEdge {
    pub from: usize,
    pub vertex: usize,
    pub to: usize,
}

#[derive(Debug, Clone)]
pub struct MutationClass {
    pub status: ClassStatus,
    /// Canonical matrices in discovery order; the seed's form comes first.
    pub representatives: Vec<Quiver>,
    /// Present when requested in [`ClassOptions`]; labels are canonical.
    pub edges: Option<Vec<ClassEdge>>,
    pub witness: Option<InfiniteWitness>,
}

impl MutationClass {
    pub fn is_finite(&self) -> bool {
        self.status == ClassStatus::Finite
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Whether the class contains a quiver isomorphic to `q`.
    pub fn contains(&self, q: &Quiver) -> bool {
        let m = canon::canonical_form(q).matrix;
        self.representatives.contains(&m)
    }

    /// Representatives sorted by their flattened matrices.
    pub fn sorted_representatives(&self) -> Vec<Quiver> {
        let mut reps = self.representatives.clone();
        reps.sort_by(|a, b| a.n().cmp(&b.n()).then_with(|| a.as_flat().cmp(b.as_flat())));
        reps
    }

    /// Stable JSON form: status, size and sorted canonical matrices.
    pub fn dump(&self) -> ClassDump {
        ClassDump {
            status: self.status,
            size: self.len(),
            representatives: self
                .sorted_representatives()
                .iter()
                .map(Quiver::to_rows)
                .collect(),
            witness: self.witness.as_ref().map(|w| w.sequence.clone()),
        }
    }
}

/// Serialized class, as stored in golden files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ClassDump {
    pub status: ClassStatus,
    pub size: usize,
    pub representatives: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

impl<'de> serde::Deserialize<'de> for ClassStatus {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "finite" => Ok(ClassStatus::Finite),
            "infinite" => Ok(ClassStatus::Infinite),
            other => Err(serde::de::Error::custom(format!(
                "unknown status {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Copy)]
pub struct ClassOptions<'a> {
    /// Largest number of representatives before giving up.
    pub cap: usize,
    pub record_edges: bool,
    /// Expand each BFS level on the rayon pool. Output does not depend on it.
    pub parallel: bool,
    pub canonicalizer: &'a dyn Canonicalizer,
}

impl Default for ClassOptions<'_> {
    fn default() -> Self {
        ClassOptions {
            cap: DEFAULT_CAP,
            record_edges: false,
            parallel: true,
            canonicalizer: &RefinedSearch,
        }
    }
}

impl<'a> ClassOptions<'a> {
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_edges(mut self) -> Self {
        self.record_edges = true;
        self
    }

    pub fn serial(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn with_canonicalizer(mut self, c: &'a dyn Canonicalizer) -> Self {
        self.canonicalizer = c;
        self
    }
}

/// A pair of vertices with at least three arrows whose component has at
/// least three vertices.
pub fn obstruction(q: &Quiver) -> Option<(usize, usize)> {
    let n = q.n();
    for i in 0..n {
        for j in i + 1..n {
            if q.get(i, j).unsigned_abs() >= 3 {
                let elsewhere = |v: usize| q.neighbors(v).any(|w| w != i && w != j);
                if elsewhere(i) || elsewhere(j) {
                    return Some((i, j));
                }
            }
        }
    }
    None
}

/// Enumerates the mutation class of `q` with default options and the given cap.
pub fn enumerate_class(q: &Quiver, cap: Option<usize>) -> Result<MutationClass, SearchError> {
    enumerate_class_with(
        q,
        ClassOptions::default().with_cap(cap.unwrap_or(DEFAULT_CAP)),
    )
}

pub fn enumerate_class_with(
    q: &Quiver,
    opts: ClassOptions<'_>,
) -> Result<MutationClass, SearchError> {
    let n = q.n();
    let canon = opts.canonicalizer;
    if let Some(pair) = obstruction(q) {
        return Ok(MutationClass {
            status: ClassStatus::Infinite,
            representatives: vec![canon.canonical_matrix(q)],
            edges: opts.record_edges.then(Vec::new),
            witness: Some(InfiniteWitness {
                sequence: Vec::new(),
                quiver: q.clone(),
                pair,
            }),
        });
    }

    let root = canon.canonical_matrix(q);
    let mut reps = vec![root.clone()];
    let mut parent: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX)];
    let mut index: HashMap<Quiver, usize> = HashMap::from([(root, 0)]);
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];

    while !frontier.is_empty() {
        // Mutate the whole level first, so an obstruction is found before
        // paying for any canonical forms on this level.
        let expand =
            |&f: &usize| -> Result<Vec<Quiver>> { (0..n).map(|k| reps[f].mutate(k)).collect() };
        let mutated: Vec<Vec<Quiver>> = if opts.parallel && frontier.len() > 4 {
            frontier.par_iter().map(expand).collect::<Result<_>>()?
        } else {
            frontier.iter().map(expand).collect::<Result<_>>()?
        };

        for (fi, children) in mutated.iter().enumerate() {
            for (k, child) in children.iter().enumerate() {
                if obstruction(child).is_some() {
                    let mut path = path_to(&parent, frontier[fi]);
                    path.push(k);
                    let witness = replay_canonical_path(q, &path, canon)?;
                    return Ok(MutationClass {
                        status: ClassStatus::Infinite,
                        representatives: reps,
                        edges: opts.record_edges.then_some(edges),
                        witness: Some(witness),
                    });
                }
            }
        }

        let canonical = |children: &Vec<Quiver>| -> Vec<Quiver> {
            children.iter().map(|c| canon.canonical_matrix(c)).collect()
        };
        let forms: Vec<Vec<Quiver>> = if opts.parallel && frontier.len() > 1 {
            mutated.par_iter().map(canonical).collect()
        } else {
            mutated.iter().map(canonical).collect()
        };

        let mut next = Vec::new();
        for (fi, level) in forms.into_iter().enumerate() {
            let from = frontier[fi];
            for (k, form) in level.into_iter().enumerate() {
                let to = match index.get(&form) {
                    Some(&id) => id,
                    None => {
                        let id = reps.len();
                        if id >= opts.cap {
                            return Err(SearchError::BudgetExhausted {
                                explored: id,
                                cap: opts.cap,
                            });
                        }
                        index.insert(form.clone(), id);
                        reps.push(form);
                        parent.push((from, k));
                        next.push(id);
                        id
                    }
                };
                if opts.record_edges {
                    edges.push(ClassEdge {
                        from,
                        vertex: k,
                        to,
                    });
                }
            }
        }
        frontier = next;
    }

    Ok(MutationClass {
        status: ClassStatus::Finite,
        representatives: reps,
        edges: opts.record_edges.then_some(edges),
        witness: None,
    })
}

fn path_to(parent: &[(usize, usize)], mut node: usize) -> Vec<usize> {
    let mut path = Vec::new();
    while parent[node].0 != usize::MAX {
        path.push(parent[node].1);
        node = parent[node].0;
    }
    path.reverse();
    path
}

/// Translates a path of canonical vertex labels back onto the seed's labels.
fn replay_canonical_path(
    seed: &Quiver,
    path: &[usize],
    canon: &dyn Canonicalizer,
) -> Result<InfiniteWitness> {
    let mut current = seed.clone();
    let mut sequence = Vec::with_capacity(path.len());
    for &k in path {
        let cf = canon.canonical_form(&current);
        let v = cf
            .witness
            .iter()
            .position(|&w| w == k)
            .expect("witness is a permutation");
        current = current.mutate(v)?;
        sequence.push(v);
    }
    let pair = obstruction(&current).expect("replayed path ends in an obstruction");
    Ok(InfiniteWitness {
        sequence,
        quiver: current,
        pair,
    })
}

/// Verdict of [`is_mutation_finite`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finiteness {
    pub finite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

/// Decides mutation-finiteness, returning an obstructive sequence when infinite.
pub fn is_mutation_finite(q: &Quiver) -> Result<Finiteness, SearchError> {
    is_mutation_finite_with(q, ClassOptions::default())
}

pub fn is_mutation_finite_with(
    q: &Quiver,
    opts: ClassOptions<'_>,
) -> Result<Finiteness, SearchError> {
    let class = enumerate_class_with(q, opts)?;
    Ok(match class.witness {
        None => Finiteness {
            finite: true,
            class_size: Some(class.representatives.len()),
            witness: None,
        },
        Some(w) => Finiteness {
            finite: false,
            class_size: None,
            witness: Some(w.sequence),
        },
    })
}

/// Mutates at each vertex of `seq` in turn.
pub fn apply_sequence(q: &Quiver, seq: &[usize]) -> Result<Quiver> {
    seq.iter().try_fold(q.clone(), |acc, &k| acc.mutate(k))
}

/// Whether `seq` produces two vertices joined by at least three arrows.
pub fn check_obstructive(q: &Quiver, seq: &[usize]) -> Result<bool> {
    Ok(apply_sequence(q, seq)?.max_multiplicity() >= 3)
}

/// A mutation sequence, optionally written with vertex names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructiveSequence {
    pub vertices: Vec<usize>,
}

impl ObstructiveSequence {
    /// Resolves names through `labels`, where `labels[i]` names vertex `i`.
    pub fn from_labels(names: &[&str], labels: &[&str]) -> Result<Self> {
        let vertices = names
            .iter()
            .map(|name| {
                labels
                    .iter()
                    .position(|l| l == name)
                    .ok_or_else(|| QuiverError::Parse {
                        line: 0,
                        message: format!("unknown vertex label {name:?}"),
                    })
            })
            .collect::<Result<_>>()?;
        Ok(ObstructiveSequence { vertices })
    }

    pub fn is_obstructive_for(&self, q: &Quiver) -> Result<bool> {
        check_obstructive(q, &self.vertices)
    }
}

/// All quivers on `n + 1` vertices restricting to `q` on the first `n`, with
/// the new vertex attached by multiplicities in `{-2, ..., 2}` and not
/// isolated. There are `5^n - 1` of them.
pub fn one_vertex_extensions(q: &Quiver) -> impl Iterator<Item = Quiver> + '_ {
    let n = q.n();
    let total = 5usize.pow(n as u32);
    (1..total).map(move |code| {
        let mut attach = vec![0i64; n];
        let mut c = code;
        // base-5 digits 0..4 stand for 0, 1, 2, -2, -1; code 0 would be isolated
        for a in attach.iter_mut() {
            let d = (c % 5) as i64;
            *a = if d > 2 { d - 5 } else { d };
            c /= 5;
        }
        extend_with(q, &attach)
    })
}

/// `q` plus a vertex `n` with `b[n][i] = attach[i]`.
pub fn extend_with(q: &Quiver, attach: &[i64]) -> Quiver {
    let n = q.n();
    let m = n + 1;
    let mut b = vec![0; m * m];
    for i in 0..n {
        b[i * m..i * m + n].copy_from_slice(q.row(i));
        b[i * m + n] = -attach[i];
        b[n * m + i] = attach[i];
    }
    Quiver::from_flat_unchecked(m, b)
}

/// Subsets of `0..n` of size `k`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// A vertex set of `q` inducing a subquiver isomorphic to `pattern`, if any.
pub fn find_subquiver_isomorphic_to(q: &Quiver, pattern: &Quiver) -> Option<VertexSet> {
    let m = pattern.n();
    if m > q.n() {
        return None;
    }
    let target = canon::canonical_form(pattern).matrix;
    let mut signature = pattern.as_flat().to_vec();
    signature.sort_unstable();
    let mut buf = Vec::with_capacity(m * m);
    combinations(q.n(), m)
        .find(|vs| {
            let sub = q.restrict(vs);
            buf.clear();
            buf.extend_from_slice(sub.as_flat());
            buf.sort_unstable();
            buf == signature && canon::canonical_form(&sub).matrix == target
        })
        .map(|vs| VertexSet::new(vs, Some(q.n())).expect("combinations are distinct and in range"))
}

pub fn contains_subquiver_isomorphic_to(q: &Quiver, pattern: &Quiver) -> bool {
    find_subquiver_isomorphic_to(q, pattern).is_some()
}
