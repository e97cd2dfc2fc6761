//! Exact linear algebra: sparse fraction-free row reduction over the
//! integers, dense rank and determinant over the rationals, and univariate
//! polynomials over the rationals.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{format_rational, Rational};

/// Sparse integer vector, entries sorted by column, no zeros.
pub type SparseVec = Vec<(usize, BigInt)>;

/// `a*x - b*y`.
fn combine(a: &BigInt, x: &SparseVec, b: &BigInt, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ci = x.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = y.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push((ci, a * &x[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn content(vs: &[&SparseVec]) -> BigInt {
    let mut g = BigInt::zero();
    for v in vs {
        for (_, c) in v.iter() {
            g = g.gcd(c);
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

fn divide(v: &mut SparseVec, g: &BigInt) {
    for (_, c) in v.iter_mut() {
        *c /= g;
    }
}

/// Scale a rational vector to a primitive integer vector.
pub fn integer_row(entries: impl IntoIterator<Item = (usize, Rational)>) -> SparseVec {
    let mut row: Vec<(usize, Rational)> = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    row.sort_by_key(|e| e.0);
    let mut den = BigInt::one();
    for (_, c) in &row {
        den = den.lcm(c.denom());
    }
    let mut out: SparseVec = row
        .into_iter()
        .map(|(i, c)| (i, c.numer() * (&den / c.denom())))
        .collect();
    let g = content(&[&out]);
    if !g.is_zero() && !g.is_one() {
        divide(&mut out, &g);
    }
    out
}

struct Row {
    v: SparseVec,
    t: SparseVec,
}

/// Row echelon form built one row at a time. Each row is reduced on its
/// leading column against the stored pivot rows; with tracking enabled a row
/// that vanishes yields the integer combination of inserted rows that
/// produced it.
pub struct Echelon {
    rows: Vec<Row>,
    pivot: HashMap<usize, usize>,
    track: bool,
}

impl Echelon {
    pub fn new(track: bool) -> Self {
        Echelon {
            rows: Vec::new(),
            pivot: HashMap::new(),
            track,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: SparseVec, mut t: SparseVec) -> (SparseVec, SparseVec) {
        while let Some((lead, b)) = v.first().cloned() {
            let Some(&r) = self.pivot.get(&lead) else { break };
            let row = &self.rows[r];
            let a = &row.v[0].1;
            let g = a.gcd(&b);
            let (a, b) = (a / &g, b / &g);
            v = combine(&a, &v, &b, &row.v);
            if self.track {
                t = combine(&a, &t, &b, &row.t);
            }
            let g = content(&[&v, &t]);
            if !g.is_zero() && !g.is_one() {
                divide(&mut v, &g);
                divide(&mut t, &g);
            }
        }
        (v, t)
    }

    /// Insert `v` tagged `tag`. Returns `None` when the row is independent of
    /// the stored ones, otherwise the dependency (empty without tracking).
    pub fn insert(&mut self, v: SparseVec, tag: usize) -> Option<SparseVec> {
        let t = if self.track { vec![(tag, BigInt::one())] } else { Vec::new() };
        let (v, t) = self.reduce(v, t);
        if v.is_empty() {
            return Some(t);
        }
        self.pivot.insert(v[0].0, self.rows.len());
        self.rows.push(Row { v, t });
        None
    }

    /// Whether `v` lies in the span of the stored rows.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone(), Vec::new()).0.is_empty()
    }
}

/// Rank of a list of sparse rows.
pub fn sparse_rank(rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new(false);
    for r in rows {
        e.insert(r, 0);
    }
    e.rank()
}

/// Integer combinations `t` with `Σ t_i rows_i = 0`, a basis of the left null space.
pub fn left_null_space(rows: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut e = Echelon::new(true);
    let mut out = Vec::new();
    for (i, r) in rows.into_iter().enumerate() {
        if let Some(t) = e.insert(r, i) {
            out.push(t);
        }
    }
    out
}

/// Row reduction over the rationals; returns rank and determinant (for square input).
fn gauss(m: &[Vec<Rational>]) -> (usize, Rational) {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map(Vec::len).unwrap_or(0);
    let mut det = Rational::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            det = Rational::zero();
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            det = -det;
        }
        let piv = a[rank][c].clone();
        det *= &piv;
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            let (top, bottom) = a.split_at_mut(r);
            for (x, p) in bottom[0][c..cols].iter_mut().zip(&top[rank][c..cols]) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    if rows != cols || rank < rows {
        det = Rational::zero();
    }
    (rank, det)
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    gauss(m).0
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    assert!(m.iter().all(|r| r.len() == m.len()), "determinant of a non-square matrix");
    if m.is_empty() {
        return Rational::one();
    }
    gauss(m).1
}

/// Univariate polynomial over the rationals, coefficients by ascending degree.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Nonzero constant times a power of the variable.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(lc) => UPoly::new(self.coeffs.iter().map(|c| c / lc).collect()),
        }
    }

    fn rem(&self, d: &UPoly) -> UPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.coeffs.last().unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let f = r.last().unwrap() / lc;
            for (i, c) in d.coeffs.iter().enumerate() {
                let s = &f * c;
                r[shift + i] -= s;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UPoly::new(r)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Unique polynomial of degree below `xs.len()` through the given points.
    pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UPoly {
        assert_eq!(xs.len(), ys.len());
        let mut out = vec![Rational::zero(); xs.len()];
        for i in 0..xs.len() {
            if ys[i].is_zero() {
                continue;
            }
            // basis polynomial ∏_{j≠i} (x - x_j) / (x_i - x_j)
            let mut basis = vec![Rational::one()];
            let mut den = Rational::one();
            for j in 0..xs.len() {
                if i == j {
                    continue;
                }
                let mut next = vec![Rational::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * &xs[j];
                }
                basis = next;
                den *= &xs[i] - &xs[j];
            }
            let f = &ys[i] / den;
            for (k, c) in basis.iter().enumerate() {
                out[k] += c * &f;
            }
        }
        UPoly::new(out)
    }

    /// Rational roots, ascending and without multiplicity. Candidates come
    /// from the rational root theorem with trial-division factoring; the flag
    /// is false when a coefficient could not be factored completely and the
    /// list may be incomplete.
    pub fn rational_roots(&self) -> (Vec<Rational>, bool) {
        if self.is_zero() {
            return (Vec::new(), true);
        }
        let mut roots = Vec::new();
        let first = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        if first > 0 {
            roots.push(Rational::zero());
        }
        let reduced = UPoly::new(self.coeffs[first..].to_vec());
        if reduced.degree() == Some(0) {
            return (roots, true);
        }
        let ints = integer_row(reduced.coeffs.iter().cloned().enumerate());
        let a0 = ints.first().map(|e| e.1.abs()).unwrap_or_default();
        let an = ints.last().map(|e| e.1.abs()).unwrap_or_default();
        let (ps, ok0) = divisors(&a0);
        let (qs, ok1) = divisors(&an);
        let mut found = std::collections::BTreeSet::new();
        for p in &ps {
            for q in &qs {
                for s in [1, -1] {
                    let r = Rational::new(p * s, q.clone());
                    if reduced.eval(&r).is_zero() {
                        found.insert(r);
                    }
                }
            }
        }
        roots.extend(found);
        roots.sort();
        (roots, ok0 && ok1)
    }
}

/// Positive divisors by trial division up to 10^6.
fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.abs();
    let mut p = 2u64;
    while p <= 1_000_000 && BigInt::from(p) * BigInt::from(p) <= m {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += 1;
    }
    let complete = m.to_u64().is_some_and(|v| v < 1_000_000u64 * 1_000_000) || m.is_one();
    if !m.is_one() {
        factors.push((m, 1));
    }
    let mut out = vec![BigInt::one()];
    for (f, e) in factors {
        let mut next = Vec::new();
        for d in &out {
            let mut pw = d.clone();
            for _ in 0..=e {
                next.push(pw.clone());
                pw *= &f;
            }
        }
        out = next;
    }
    out.sort();
    (out, complete)
}

impl fmt::Display for UPoly {
    /// Highest degree first in the variable `c`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let abs = c.abs();
            let coef = format_rational(&abs);
            match k {
                0 => write!(f, "{coef}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{coef}*")?;
                    }
                    write!(f, "c")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
