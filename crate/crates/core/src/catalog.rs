//! Named quivers.
//!
//! Each entry reproduces one drawn orientation. Vertices are numbered in
//! reading order of the drawing: rows top to bottom, left to right inside a
//! row. For trees any other orientation gives the same mutation class; the
//! drawn one is kept so golden files are reproducible.

use std::sync::OnceLock;

use crate::error::CatalogError;
use crate::quiver::Quiver;

type Arrow = (usize, usize, i64);

fn build(n: usize, arrows: &[Arrow]) -> Quiver {
    Quiver::from_arrows(n, arrows).expect("catalog arrows are in range")
}

/// One named quiver or family of quivers.
pub trait CatalogEntry: Send + Sync {
    fn name(&self) -> &'static str;
    /// Human-readable parameter domain, e.g. `"n >= 4"`.
    fn domain(&self) -> &'static str;
    /// Vertex count as a formula in the parameters.
    fn vertex_count(&self) -> &'static str;
    fn arity(&self) -> usize;
    fn make(&self, params: &[i64]) -> Result<Quiver, CatalogError>;
    /// Vertex names for entries whose proofs refer to vertices by name.
    fn labels(&self) -> Option<&'static [&'static str]> {
        None
    }
}

struct Fixed {
    name: &'static str,
    vertex_count: &'static str,
    make: fn() -> Quiver,
    labels: Option<&'static [&'static str]>,
}

impl CatalogEntry for Fixed {
    fn name(&self) -> &'static str {
        self.name
    }
    fn domain(&self) -> &'static str {
        "-"
    }
    fn vertex_count(&self) -> &'static str {
        self.vertex_count
    }
    fn arity(&self) -> usize {
        0
    }
    fn make(&self, params: &[i64]) -> Result<Quiver, CatalogError> {
        if !params.is_empty() {
            return Err(CatalogError::BadParameters {
                name: self.name.into(),
                message: format!("takes no parameters, got {}", params.len()),
            });
        }
        Ok((self.make)())
    }
    fn labels(&self) -> Option<&'static [&'static str]> {
        self.labels
    }
}

struct Family {
    name: &'static str,
    domain: &'static str,
    vertex_count: &'static str,
    arity: usize,
    check: fn(&[i64]) -> bool,
    make: fn(&[i64]) -> Quiver,
}

impl CatalogEntry for Family {
    fn name(&self) -> &'static str {
        self.name
    }
    fn domain(&self) -> &'static str {
        self.domain
    }
    fn vertex_count(&self) -> &'static str {
        self.vertex_count
    }
    fn arity(&self) -> usize {
        self.arity
    }
    fn make(&self, params: &[i64]) -> Result<Quiver, CatalogError> {
        let bad = |message: String| CatalogError::BadParameters {
            name: self.name.into(),
            message,
        };
        if params.len() != self.arity {
            return Err(bad(format!(
                "expected {} parameter(s), got {}",
                self.arity,
                params.len()
            )));
        }
        if !(self.check)(params) {
            return Err(bad(format!(
                "parameters {params:?} outside domain {}",
                self.domain
            )));
        }
        Ok((self.make)(params))
    }
}

/// X6 vertex names in index order.
pub const X6_LABELS: [&str; 6] = ["z1", "y2", "y1", "x", "z2", "w"];
/// X7 vertex names in index order.
pub const X7_LABELS: [&str; 7] = ["z1", "y2", "y1", "x", "z2", "z3", "y3"];

// z1 -> x, y2 => z2, y1 => z1, x -> y1, x -> y2, z2 -> x, w -> x
const X6_ARROWS: &[Arrow] = &[
    (0, 3, 1),
    (1, 4, 2),
    (2, 0, 2),
    (3, 2, 1),
    (3, 1, 1),
    (4, 3, 1),
    (5, 3, 1),
];
// X6 on the first six names with w renamed z3, plus x -> y3 and y3 => z3.
const X7_ARROWS: &[Arrow] = &[
    (0, 3, 1),
    (1, 4, 2),
    (2, 0, 2),
    (3, 2, 1),
    (3, 1, 1),
    (4, 3, 1),
    (5, 3, 1),
    (3, 6, 1),
    (6, 5, 2),
];

fn a_n(p: &[i64]) -> Quiver {
    let n = p[0] as usize;
    let arrows: Vec<Arrow> = (0..n - 1).map(|i| (i, i + 1, 1)).collect();
    build(n, &arrows)
}

/// Top vertex 0 feeds the second vertex of the chain 1 -> 2 -> ... -> n-1.
fn d_n(p: &[i64]) -> Quiver {
    let n = p[0] as usize;
    let mut arrows = vec![(0, 2, 1)];
    arrows.extend((1..n - 1).map(|i| (i, i + 1, 1)));
    build(n, &arrows)
}

/// Top vertices 0 and 1 feed the second and second-to-last vertices of the
/// chain 2 -> 3 -> ... -> n.
fn d_hat(p: &[i64]) -> Quiver {
    let n = p[0] as usize;
    let mut arrows = vec![(0, 3, 1), (1, n - 1, 1)];
    arrows.extend((2..n).map(|i| (i, i + 1, 1)));
    build(n + 1, &arrows)
}

/// Polygon on `p + q` vertices; edge `i` joins `i` and `i + 1`. The first
/// `p` edges run counterclockwise (`i -> i + 1`), the rest clockwise.
fn a_pq(params: &[i64]) -> Quiver {
    let (p, q) = (params[0] as usize, params[1] as usize);
    let n = p + q;
    let arrows: Vec<Arrow> = (0..n)
        .map(|i| {
            if i < p {
                (i, (i + 1) % n, 1)
            } else {
                ((i + 1) % n, i, 1)
            }
        })
        .collect();
    build(n, &arrows)
}

fn cycle(p: &[i64]) -> Quiver {
    let n = p[0] as usize;
    let arrows: Vec<Arrow> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
    build(n, &arrows)
}

fn theta(p: &[i64]) -> Quiver {
    build(2, &[(0, 1, p[0])])
}

/// A path of `stacked` vertices running down into position `hub` of a chain
/// of `len` vertices whose arrows all point towards the hub. Stacked vertices
/// come first, then the chain left to right.
fn e_type(len: usize, hub: usize, stacked: usize) -> Quiver {
    let n = stacked + len;
    let mut arrows = Vec::new();
    for s in 0..stacked {
        let to = if s + 1 < stacked {
            s + 1
        } else {
            stacked + hub
        };
        arrows.push((s, to, 1));
    }
    for i in 0..len - 1 {
        let (a, b) = (stacked + i, stacked + i + 1);
        if i < hub {
            arrows.push((a, b, 1));
        } else {
            arrows.push((b, a, 1));
        }
    }
    build(n, &arrows)
}

// Elliptic shapes: top vertex T, a middle row, bottom vertex B with B => T.
fn e6_11() -> Quiver {
    // T=0; a=1 b=2 c=3 d=4 e=5 f=6; B=7
    build(
        8,
        &[
            (0, 2, 1),
            (0, 3, 1),
            (0, 5, 1),
            (1, 2, 1),
            (2, 7, 1),
            (3, 7, 1),
            (4, 3, 1),
            (5, 7, 1),
            (6, 5, 1),
            (7, 0, 2),
        ],
    )
}

fn e7_11() -> Quiver {
    // T=0; a=1 b=2 c=3 d=4 e=5 f=6 g=7; B=8
    build(
        9,
        &[
            (0, 3, 1),
            (0, 4, 1),
            (0, 5, 1),
            (1, 2, 1),
            (2, 3, 1),
            (3, 8, 1),
            (4, 8, 1),
            (5, 8, 1),
            (6, 5, 1),
            (7, 6, 1),
            (8, 0, 2),
        ],
    )
}

fn e8_11() -> Quiver {
    // T=0; a=1 b=2 c=3 d=4 e=5 f=6 g=7 h=8; B=9
    build(
        10,
        &[
            (0, 2, 1),
            (0, 3, 1),
            (0, 4, 1),
            (1, 2, 1),
            (2, 9, 1),
            (3, 9, 1),
            (4, 9, 1),
            (5, 4, 1),
            (6, 5, 1),
            (7, 6, 1),
            (8, 7, 1),
            (9, 0, 2),
        ],
    )
}

fn fixed(
    name: &'static str,
    vertex_count: &'static str,
    make: fn() -> Quiver,
) -> Box<dyn CatalogEntry> {
    Box::new(Fixed {
        name,
        vertex_count,
        make,
        labels: None,
    })
}

/// Catalog entries by name.
pub struct Catalog {
    entries: Vec<Box<dyn CatalogEntry>>,
}

impl Catalog {
    pub fn empty() -> Self {
        Catalog {
            entries: Vec::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut c = Self::empty();
        let fam = |name,
                   domain,
                   vertex_count,
                   arity,
                   check: fn(&[i64]) -> bool,
                   make: fn(&[i64]) -> Quiver| {
            Box::new(Family {
                name,
                domain,
                vertex_count,
                arity,
                check,
                make,
            }) as Box<dyn CatalogEntry>
        };
        c.register(fam("A", "n >= 1", "n", 1, |p| p[0] >= 1, a_n));
        c.register(fam("D", "n >= 4", "n", 1, |p| p[0] >= 4, d_n));
        c.register(fixed("E6", "6", || e_type(5, 2, 1)));
        c.register(fixed("E7", "7", || e_type(6, 2, 1)));
        c.register(fixed("E8", "8", || e_type(7, 2, 1)));
        c.register(fam("D_hat", "n >= 4", "n+1", 1, |p| p[0] >= 4, d_hat));
        c.register(fixed("E6_hat", "7", || e_type(5, 2, 2)));
        c.register(fixed("E7_hat", "8", || e_type(7, 3, 1)));
        c.register(fixed("E8_hat", "9", || e_type(8, 2, 1)));
        c.register(fam(
            "A_pq",
            "p >= q >= 1",
            "p+q",
            2,
            |p| p[1] >= 1 && p[0] >= p[1],
            a_pq,
        ));
        c.register(fam(
            "A_cycle_uniform",
            "n >= 3",
            "n",
            1,
            |p| p[0] >= 3,
            cycle,
        ));
        c.register(fixed("E6_11", "8", e6_11));
        c.register(fixed("E7_11", "9", e7_11));
        c.register(fixed("E8_11", "10", e8_11));
        c.register(fam("Theta", "m >= 1", "2", 1, |p| p[0] >= 1, theta));
        c.register(Box::new(Fixed {
            name: "X6",
            vertex_count: "6",
            make: x6,
            labels: Some(&X6_LABELS),
        }));
        c.register(Box::new(Fixed {
            name: "X7",
            vertex_count: "7",
            make: x7,
            labels: Some(&X7_LABELS),
        }));
        // top = 0, left = 1, right = 2 in the three-vertex drawings
        c.register(fixed("Z3", "3", || {
            build(3, &[(1, 0, 2), (0, 2, 2), (2, 1, 2)])
        }));
        c.register(fixed("A3_cycle", "3", || {
            build(3, &[(1, 0, 1), (0, 2, 1), (2, 1, 1)])
        }));
        c.register(fixed("A2_hat", "3", || {
            build(3, &[(1, 0, 1), (0, 2, 1), (1, 2, 1)])
        }));
        c
    }

    /// Adds an entry, replacing any existing entry of the same name.
    pub fn register(&mut self, e: Box<dyn CatalogEntry>) {
        self.entries.retain(|x| x.name() != e.name());
        self.entries.push(e);
    }

    pub fn get(&self, name: &str) -> Option<&dyn CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|b| b.as_ref())
    }

    pub fn entries(&self) -> impl Iterator<Item = &dyn CatalogEntry> {
        self.entries.iter().map(|b| b.as_ref())
    }

    pub fn make(&self, name: &str, params: &[i64]) -> Result<Quiver, CatalogError> {
        self.get(name)
            .ok_or_else(|| CatalogError::UnknownName(name.into()))?
            .make(params)
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Self::with_builtins()
    }
}

pub fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(Catalog::with_builtins)
}

/// Builds a catalog quiver by name from the built-in catalog.
pub fn make(name: &str, params: &[i64]) -> Result<Quiver, CatalogError> {
    catalog().make(name, params)
}

pub fn x6() -> Quiver {
    build(6, X6_ARROWS)
}

pub fn x7() -> Quiver {
    build(7, X7_ARROWS)
}

/// The nine exceptional quivers: E6, E7, E8, their extended versions and
/// the three elliptic ones.
pub fn exceptional_nine() -> Vec<(&'static str, Quiver)> {
    [
        "E6", "E7", "E8", "E6_hat", "E7_hat", "E8_hat", "E6_11", "E7_11", "E8_11",
    ]
    .into_iter()
    .map(|name| (name, make(name, &[]).expect("built-in")))
    .collect()
}
