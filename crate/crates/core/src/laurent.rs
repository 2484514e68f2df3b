//! Laurent polynomials in `x1..xn` with arbitrary-precision integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse Laurent polynomial. Terms are keyed by exponent vector, kept in
/// lexicographic order, and never store a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    /// The variable `x{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn monomial(exps: Vec<i32>, coeff: BigInt) -> Self {
        let mut p = Self::zero(exps.len());
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exps: Vec<i32>, coeff: BigInt) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                if !coeff.is_zero() {
                    v.insert(coeff);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Per-variable minimum exponent; zeros for the zero polynomial.
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut m = vec![i32::MAX; self.nvars];
        for e in self.terms.keys() {
            for (mi, &ei) in m.iter_mut().zip(e) {
                *mi = (*mi).min(ei);
            }
        }
        if self.terms.is_empty() {
            m.fill(0);
        }
        m
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in the Laurent ring.
    ///
    /// Both sides are shifted to ordinary polynomials with every minimum
    /// exponent zero; the quotient of such polynomials, if Laurent, is a
    /// polynomial, so lex-order long division decides it.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        let (ma, md) = (self.min_exponents(), d.min_exponents());
        let neg = |m: &[i32]| m.iter().map(|x| -x).collect::<Vec<_>>();
        let mut r = self.shift(&neg(&ma));
        let b = d.shift(&neg(&md));
        let (lt_e, lt_c) = b.terms.iter().next_back().expect("nonzero divisor");
        let mut q = LaurentPoly::zero(self.nvars);
        while let Some((re, rc)) = r.terms.iter().next_back() {
            if re.iter().zip(lt_e).any(|(a, b)| a < b) {
                return None;
            }
            let (coeff, rem) = rc.div_rem(lt_c);
            if !rem.is_zero() {
                return None;
            }
            let e: Vec<i32> = re.iter().zip(lt_e).map(|(a, b)| a - b).collect();
            for (be, bc) in &b.terms {
                r.add_term(
                    be.iter().zip(&e).map(|(x, y)| x + y).collect(),
                    -(bc * &coeff),
                );
            }
            q.terms.insert(e, coeff);
        }
        let offset: Vec<i32> = ma.iter().zip(&md).map(|(a, b)| a - b).collect();
        Some(q.shift(&offset))
    }

    /// Renders as one fraction over a monomial, e.g. `(1 + x2)/x1`.
    pub fn to_fraction_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let den: Vec<i32> = self.min_exponents().iter().map(|&m| (-m).max(0)).collect();
        let num = self.shift(&den);
        let mut terms: Vec<(&Vec<i32>, &BigInt)> = num.terms.iter().collect();
        terms.sort_by(|a, b| {
            let (da, db): (i32, i32) = (a.0.iter().sum(), b.0.iter().sum());
            da.cmp(&db).then_with(|| b.0.cmp(a.0))
        });
        let num_s = render_sum(terms.into_iter());
        let den_s = render_monomial(&den, "*");
        let num_s = if num.len() > 1 && !den_s.is_empty() {
            format!("({num_s})")
        } else {
            num_s
        };
        match (den_s.is_empty(), den.iter().filter(|&&e| e != 0).count()) {
            (true, _) => num_s,
            (false, 1) => format!("{num_s}/{den_s}"),
            _ => format!("{num_s}/({den_s})"),
        }
    }
}

fn render_monomial(e: &[i32], sep: &str) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, k)
            }
        })
        .collect::<Vec<_>>()
        .join(sep)
}

fn render_sum<'a>(terms: impl Iterator<Item = (&'a Vec<i32>, &'a BigInt)>) -> String {
    let mut out = String::new();
    for (idx, (e, c)) in terms.enumerate() {
        let m = render_monomial(e, "*");
        let mag = c.abs();
        let body = match (m.is_empty(), mag.is_one()) {
            (true, _) => mag.to_string(),
            (false, true) => m,
            (false, false) => format!("{mag}*{m}"),
        };
        match (idx, c.is_negative()) {
            (0, false) => out.push_str(&body),
            (0, true) => out.push_str(&format!("-{body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
            (_, true) => out.push_str(&format!(" - {body}")),
        }
    }
    out
}

impl fmt::Display for LaurentPoly {
    /// Monomial sum in ascending lexicographic order of exponent vectors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        f.write_str(&render_sum(self.terms.iter()))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    // Exponents add when monomials multiply.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        out
    }
}
