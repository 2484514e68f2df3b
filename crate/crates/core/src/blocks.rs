//! Block decompositions.
//!
//! A block is one of six small quivers whose vertices are marked open or
//! closed. Gluing blocks along a matching of open vertices (each open vertex
//! used at most once, never two vertices of the same block) and adding the
//! signed matrices gives a block-decomposable quiver. Opposite arrows between
//! the same pair cancel in the sum.
//!
//! # Search bound
//!
//! Every vertex of an assembled quiver is either a vertex of exactly one
//! block or the identification of exactly two open vertices, so it lies in at
//! most two blocks. Each block has at least two vertices, so an assembly on
//! `n` vertices has at most `n` blocks. Every block arrow has multiplicity 1
//! and a pair of vertices lies in at most two common blocks, so
//! `|b[i][j]| <= 2` in any assembly.
//!
//! [`is_block_decomposable`] places blocks directly on the vertices of the
//! target. It keeps the residual `R = target - sum(placed)` and the coverage
//! of each vertex (uncovered, covered once through an open vertex, or full).
//! While `R != 0` it takes the first pair with `R[a][b] != 0`; in any
//! completion some unplaced block contributes to that pair with the sign of
//! `R[a][b]`, so branching over every block arrow laid on that pair with that
//! orientation, and every injective placement of the other block vertices,
//! is exhaustive. When `R == 0` but a vertex is uncovered, it branches over
//! all blocks touching that vertex. A branch dies when some pair has
//! `|R[a][b]|` larger than the number of blocks that could still contain both
//! ends. Failed states are memoized.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{AssemblyError, SearchError};
use crate::quiver::Quiver;

/// Default node budget for [`is_block_decomposable`].
pub const DEFAULT_BUDGET: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlockKind {
    I,
    II,
    IIIa,
    IIIb,
    IV,
    V,
}

const O: bool = true;
const C: bool = false;

impl BlockKind {
    pub const ALL: [BlockKind; 6] = [
        BlockKind::I,
        BlockKind::II,
        BlockKind::IIIa,
        BlockKind::IIIb,
        BlockKind::IV,
        BlockKind::V,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BlockKind::I => "I",
            BlockKind::II => "II",
            BlockKind::IIIa => "IIIa",
            BlockKind::IIIb => "IIIb",
            BlockKind::IV => "IV",
            BlockKind::V => "V",
        }
    }

    /// Open flag per local vertex.
    ///
    /// Local orders: II and III are (top, left, right); IV is (top, left,
    /// right, bottom); V is (top-left, top-right, center, bottom-left,
    /// bottom-right).
    pub fn open(self) -> &'static [bool] {
        match self {
            BlockKind::I => &[O, O],
            BlockKind::II => &[O, O, O],
            BlockKind::IIIa | BlockKind::IIIb => &[O, C, C],
            BlockKind::IV => &[C, O, O, C],
            BlockKind::V => &[C, C, O, C, C],
        }
    }

    /// Single arrows `(from, to)` in local numbering.
    pub fn arrows(self) -> &'static [(usize, usize)] {
        match self {
            BlockKind::I => &[(0, 1)],
            BlockKind::II => &[(1, 0), (0, 2), (2, 1)],
            BlockKind::IIIa => &[(1, 0), (2, 0)],
            BlockKind::IIIb => &[(0, 1), (0, 2)],
            BlockKind::IV => &[(1, 0), (0, 2), (2, 1), (1, 3), (3, 2)],
            BlockKind::V => &[
                (0, 2),
                (1, 4),
                (1, 0),
                (2, 1),
                (2, 3),
                (3, 0),
                (3, 4),
                (4, 2),
            ],
        }
    }

    pub fn size(self) -> usize {
        self.open().len()
    }

    pub fn quiver(self) -> Quiver {
        let arrows: Vec<_> = self.arrows().iter().map(|&(f, t)| (f, t, 1)).collect();
        Quiver::from_arrows(self.size(), &arrows).expect("block arrows are in range")
    }

    fn entry(self, i: usize, j: usize) -> i64 {
        self.arrows()
            .iter()
            .map(|&(f, t)| {
                if (t, f) == (i, j) {
                    1
                } else if (f, t) == (i, j) {
                    -1
                } else {
                    0
                }
            })
            .sum()
    }
}

/// A vertex of one block in an assembly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub block: usize,
    pub vertex: usize,
}

/// Blocks plus a partial matching of their open vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockAssembly {
    pub blocks: Vec<BlockKind>,
    pub matching: Vec<[Slot; 2]>,
}

impl BlockAssembly {
    pub fn validate(&self) -> Result<(), AssemblyError> {
        if self.blocks.is_empty() {
            return Err(AssemblyError::NoBlocks);
        }
        let mut used = HashSet::new();
        for pair in &self.matching {
            for s in pair {
                let kind = self
                    .blocks
                    .get(s.block)
                    .ok_or(AssemblyError::NoSuchVertex {
                        block: s.block,
                        vertex: s.vertex,
                    })?;
                if s.vertex >= kind.size() {
                    return Err(AssemblyError::NoSuchVertex {
                        block: s.block,
                        vertex: s.vertex,
                    });
                }
            }
            let [a, b] = *pair;
            if a.block == b.block {
                return Err(AssemblyError::SameBlock {
                    block: a.block,
                    a: a.vertex,
                    b: b.vertex,
                });
            }
            for s in pair {
                if !self.blocks[s.block].open()[s.vertex] {
                    return Err(AssemblyError::ClosedVertexMatched {
                        block: s.block,
                        vertex: s.vertex,
                    });
                }
                if !used.insert(*s) {
                    return Err(AssemblyError::VertexReused {
                        block: s.block,
                        vertex: s.vertex,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Glues the blocks. Vertices are numbered by their first slot in
/// (block, local vertex) order.
pub fn assemble(a: &BlockAssembly) -> Result<Quiver, AssemblyError> {
    a.validate()?;
    let offsets: Vec<usize> = a
        .blocks
        .iter()
        .scan(0, |acc, k| {
            let o = *acc;
            *acc += k.size();
            Some(o)
        })
        .collect();
    let total: usize = a.blocks.iter().map(|k| k.size()).sum();
    let mut rep: Vec<usize> = (0..total).collect();
    for [x, y] in &a.matching {
        let (i, j) = (offsets[x.block] + x.vertex, offsets[y.block] + y.vertex);
        rep[i.max(j)] = i.min(j);
    }
    let mut label = vec![usize::MAX; total];
    let mut next = 0;
    for i in 0..total {
        if rep[i] == i {
            label[i] = next;
            next += 1;
        }
    }
    for i in 0..total {
        label[i] = label[rep[i]];
    }
    let mut arrows = Vec::new();
    for (bi, kind) in a.blocks.iter().enumerate() {
        for &(f, t) in kind.arrows() {
            arrows.push((label[offsets[bi] + f], label[offsets[bi] + t], 1));
        }
    }
    Ok(Quiver::from_arrows(next, &arrows).expect("matched vertices lie in different blocks"))
}

/// A block laid on vertices of a target quiver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacedBlock {
    pub kind: BlockKind,
    /// Target vertex of each local vertex.
    pub vertices: Vec<usize>,
}

/// Witness returned by [`is_block_decomposable`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub blocks: Vec<PlacedBlock>,
    pub matching: Vec<[Slot; 2]>,
}

impl Decomposition {
    fn from_placed(blocks: Vec<PlacedBlock>) -> Self {
        let mut seen: std::collections::BTreeMap<usize, Slot> = Default::default();
        let mut matching = Vec::new();
        for (bi, b) in blocks.iter().enumerate() {
            for (li, &t) in b.vertices.iter().enumerate() {
                let s = Slot {
                    block: bi,
                    vertex: li,
                };
                if let Some(prev) = seen.insert(t, s) {
                    matching.push([prev, s]);
                }
            }
        }
        Decomposition { blocks, matching }
    }

    pub fn assembly(&self) -> BlockAssembly {
        BlockAssembly {
            blocks: self.blocks.iter().map(|b| b.kind).collect(),
            matching: self.matching.clone(),
        }
    }

    /// The glued quiver in the target's own vertex numbering.
    pub fn realize(&self, n: usize) -> Quiver {
        let mut arrows = Vec::new();
        for b in &self.blocks {
            for &(f, t) in b.kind.arrows() {
                arrows.push((b.vertices[f], b.vertices[t], 1));
            }
        }
        Quiver::from_arrows(n, &arrows).expect("placed vertices are in range")
    }
}

/// Searches for a block decomposition with the default budget.
pub fn is_block_decomposable(q: &Quiver) -> Result<Option<Decomposition>, SearchError> {
    is_block_decomposable_with(q, DEFAULT_BUDGET)
}

/// `Ok(None)` means the search was exhaustive and found nothing;
/// running out of nodes is an error.
pub fn is_block_decomposable_with(
    q: &Quiver,
    budget: usize,
) -> Result<Option<Decomposition>, SearchError> {
    if q.max_multiplicity() > 2 {
        return Ok(None);
    }
    let mut s = Search {
        n: q.n(),
        r: q.as_flat().to_vec(),
        state: vec![0; q.n()],
        placed: Vec::new(),
        failed: HashSet::new(),
        nodes: 0,
        budget,
    };
    if s.dfs()? {
        Ok(Some(Decomposition::from_placed(s.placed)))
    } else {
        Ok(None)
    }
}

const FULL: u8 = 2;

fn capacity(state: u8) -> i64 {
    (FULL - state) as i64
}

struct Search {
    n: usize,
    r: Vec<i64>,
    /// 0 uncovered, 1 covered once through an open vertex, 2 full.
    state: Vec<u8>,
    placed: Vec<PlacedBlock>,
    failed: HashSet<(Vec<i64>, Vec<u8>)>,
    nodes: usize,
    budget: usize,
}

impl Search {
    fn dfs(&mut self) -> Result<bool, SearchError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SearchError::BudgetExhausted {
                explored: self.nodes,
                cap: self.budget,
            });
        }
        let n = self.n;
        let key = (self.r.clone(), self.state.clone());
        if self.failed.contains(&key) {
            return Ok(false);
        }
        let pair = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.r[a * n + b] != 0);
        let found = match pair {
            Some((a, b)) => {
                // r[a][b] > 0 means an arrow b -> a still has to be laid.
                let (head, tail) = if self.r[a * n + b] > 0 {
                    (a, b)
                } else {
                    (b, a)
                };
                self.branch_on_arrow(tail, head)?
            }
            None => match self.state.iter().position(|&s| s == 0) {
                None => true,
                Some(v) => self.branch_on_vertex(v)?,
            },
        };
        if !found {
            self.failed.insert(key);
        }
        Ok(found)
    }

    fn branch_on_arrow(&mut self, tail: usize, head: usize) -> Result<bool, SearchError> {
        for kind in BlockKind::ALL {
            for &(f, t) in kind.arrows() {
                let mut assign = vec![usize::MAX; kind.size()];
                assign[f] = tail;
                assign[t] = head;
                if self.admissible(kind, f, tail)
                    && self.admissible(kind, t, head)
                    && self.embed(kind, &mut assign, 0)?
                {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn branch_on_vertex(&mut self, v: usize) -> Result<bool, SearchError> {
        for kind in BlockKind::ALL {
            for local in 0..kind.size() {
                let mut assign = vec![usize::MAX; kind.size()];
                assign[local] = v;
                if self.embed(kind, &mut assign, 0)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn admissible(&self, kind: BlockKind, local: usize, t: usize) -> bool {
        match self.state[t] {
            0 => true,
            1 => kind.open()[local],
            _ => false,
        }
    }

    /// Assigns the remaining local vertices from index `i` on, then places.
    fn embed(
        &mut self,
        kind: BlockKind,
        assign: &mut Vec<usize>,
        i: usize,
    ) -> Result<bool, SearchError> {
        if i == assign.len() {
            return self.place(kind, assign);
        }
        if assign[i] != usize::MAX {
            return self.embed(kind, assign, i + 1);
        }
        for t in 0..self.n {
            if assign.contains(&t) || !self.admissible(kind, i, t) {
                continue;
            }
            assign[i] = t;
            let ok = self.embed(kind, assign, i + 1)?;
            assign[i] = usize::MAX;
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn place(&mut self, kind: BlockKind, assign: &[usize]) -> Result<bool, SearchError> {
        let n = self.n;
        let old: Vec<u8> = assign.iter().map(|&t| self.state[t]).collect();
        for (i, &ti) in assign.iter().enumerate() {
            for (j, &tj) in assign.iter().enumerate() {
                self.r[ti * n + tj] -= kind.entry(i, j);
            }
            self.state[ti] = if kind.open()[i] {
                self.state[ti] + 1
            } else {
                FULL
            };
        }
        let feasible = assign.iter().all(|&t| {
            let ct = capacity(self.state[t]);
            (0..n).all(|x| self.r[t * n + x].abs() <= ct.min(capacity(self.state[x])) || x == t)
        });
        let mut found = false;
        if feasible {
            self.placed.push(PlacedBlock {
                kind,
                vertices: assign.to_vec(),
            });
            found = self.dfs()?;
            if !found {
                self.placed.pop();
            }
        }
        if !found {
            for (i, &ti) in assign.iter().enumerate() {
                for (j, &tj) in assign.iter().enumerate() {
                    self.r[ti * n + tj] += kind.entry(i, j);
                }
                self.state[ti] = old[i];
            }
        }
        Ok(found)
    }
}
