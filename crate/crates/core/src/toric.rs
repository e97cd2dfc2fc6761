//! Monomial parametrization in the plus basis, binomial fibers, and rank
//! certificates for quadratic forms.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::Serialize;

use crate::dag::toric_criterion;
use crate::error::{Error, Result};
use crate::ideal::graded_kernel;
use crate::linalg::{self, UPoly};
use crate::network::{Basis, Network};
use crate::poly::{
    count_monomials, format_rational, monomials_of_degree, to_standard, Entry, Monomial, PlusIndex, Poly,
    Rational, ThetaVar, XPoly,
};

/// Plus-basis variables with their monomial images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialParam {
    pub pairs: Vec<(PlusIndex, Monomial<ThetaVar>)>,
}

/// Path labels of outcome `u`, with the last label of every sink stage replaced by `z` when `plus`.
fn outcome_monomial(net: &Network, u: &PlusIndex, plus: bool) -> Monomial<ThetaVar> {
    let values = u.values().expect("basic index");
    let leaf = net.tree().leaf_monomial(&values).expect("outcome is a leaf");
    if !plus {
        return leaf;
    }
    let dag = net.dag();
    leaf.map_vars(|v| match v {
        ThetaVar::Label(l) if dag.is_sink(l.var as usize) && l.value == dag.levels(l.var as usize) => ThetaVar::Z,
        other => other.clone(),
    })
}

pub fn plus_basis(net: &Network) -> Result<MonomialParam> {
    if !toric_criterion(net.dag()) {
        return Err(Error::Precondition(
            "the non-sinks do not induce a perfect graph; no plus-basis parametrization".into(),
        ));
    }
    let mut pairs = Vec::with_capacity(net.outcomes().len());
    for u in net.outcomes() {
        let idx = net.plus_index(u);
        let m = outcome_monomial(net, u, true);
        let nf = net.quotient().normal_form(&Poly::monomial(m.clone()))?;
        if nf != net.image(&idx)? {
            return Err(Error::Precondition(format!("image of {idx} is not the monomial {m}")));
        }
        pairs.push((idx, m));
    }
    Ok(MonomialParam { pairs })
}

#[derive(Debug, Clone)]
pub struct FiberReport {
    pub degree: usize,
    pub basis: Basis,
    /// `m_i - m_0` for each fiber `m_0 < m_1 < ...` of the monomial map.
    pub binomials: Vec<XPoly>,
    pub kernel_dim: usize,
    /// The binomials span the degree-`d` kernel.
    pub binomial: bool,
}

/// Groups degree-`d` monomials by their image under the monomial map (raw
/// path labels in standard coordinates, the plus-basis parametrization
/// otherwise) and compares the fiber binomials with the kernel.
pub fn binomial_fibers(net: &Network, d: usize, basis: Basis) -> Result<FiberReport> {
    let vars = net.variables(basis);
    let images: Vec<Monomial<ThetaVar>> = match basis {
        Basis::Plus => plus_basis(net)?.pairs.into_iter().map(|(_, m)| m).collect(),
        Basis::Standard => net.outcomes().iter().map(|u| outcome_monomial(net, u, false)).collect(),
    };
    net.guard_monomials(count_monomials(vars.len(), d))?;
    let mut fibers: HashMap<Monomial<ThetaVar>, Vec<Vec<usize>>> = HashMap::new();
    let mut order = Vec::new();
    for m in monomials_of_degree(vars.len(), d) {
        let img = m.iter().fold(Monomial::one(), |acc, &i| acc.mul(&images[i]));
        let fiber = fibers.entry(img.clone()).or_default();
        if fiber.is_empty() {
            order.push(img);
        }
        fiber.push(m);
    }
    let mono = |m: &[usize]| Poly::monomial(Monomial::from_vars(m.iter().map(|&i| vars[i].clone())));
    let mut binomials = Vec::new();
    for img in &order {
        let fiber = &fibers[img];
        let base = mono(&fiber[0]);
        for m in &fiber[1..] {
            binomials.push(&mono(m) - &base);
        }
    }
    let kernel_dim = graded_kernel(net, d, basis)?.dim();
    Ok(FiberReport {
        degree: d,
        basis,
        binomial: binomials.len() == kernel_dim,
        binomials,
        kernel_dim,
    })
}

/// Symmetric matrix `S` with `f = xᵀ S x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadFormMatrix {
    pub vars: Vec<PlusIndex>,
    pub entries: Vec<Vec<Rational>>,
}

impl QuadFormMatrix {
    /// Matrix of `f` over the given variables, which must cover its support.
    pub fn over(vars: &[PlusIndex], f: &XPoly) -> Result<Self> {
        let pos: BTreeMap<&PlusIndex, usize> = vars.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let k = vars.len();
        let mut s = vec![vec![Rational::zero(); k]; k];
        let half = Rational::new(1.into(), 2.into());
        for (m, c) in f.terms() {
            if m.degree() != 2 {
                return Err(Error::NotQuadratic);
            }
            let idx: Vec<usize> = m
                .expanded()
                .iter()
                .map(|v| pos.get(v).copied().ok_or_else(|| Error::InvalidIndex(format!("{v} outside the support"))))
                .collect::<Result<_>>()?;
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                s[i][i] += c;
            } else {
                let h = c * &half;
                s[i][j] += &h;
                s[j][i] += &h;
            }
        }
        Ok(QuadFormMatrix { vars: vars.to_vec(), entries: s })
    }

    /// Matrix over the support of `f` after expanding `+` entries.
    pub fn from_poly(levels: &[u8], f: &XPoly) -> Result<Self> {
        let std = to_standard(levels, f)?;
        Self::over(&std.variables(), &std)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.entries)
    }

    /// Entries as strings `p/q`.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(format_rational).collect()).collect()
    }
}

pub fn quad_form_rank(levels: &[u8], f: &XPoly) -> Result<(QuadFormMatrix, usize)> {
    if f.terms().any(|(m, _)| m.degree() != 2) {
        return Err(Error::NotQuadratic);
    }
    let s = QuadFormMatrix::from_poly(levels, f)?;
    let r = s.rank();
    Ok((s, r))
}

/// Rank of `f_i + c·f_j` as `c` varies.
#[derive(Debug, Clone, Serialize)]
pub struct PencilReport {
    pub support: usize,
    pub rank_i: usize,
    pub rank_j: usize,
    /// Rank for all but finitely many `c`.
    pub generic_rank: usize,
    /// Determinant of the support-restricted matrix, a polynomial in `c`.
    #[serde(serialize_with = "ser_display")]
    pub determinant: UPoly,
    /// Greatest common divisor of the principal minors of order `generic_rank`
    /// examined; examination stops once it is a constant times a power of `c`.
    /// Minors that vanish for structural reasons are skipped.
    #[serde(serialize_with = "ser_display")]
    pub minor_gcd: UPoly,
    pub minors_examined: usize,
    /// Nonzero rational values of `c` at which the rank drops.
    #[serde(serialize_with = "ser_rationals")]
    pub drop_points: Vec<Rational>,
    /// The rank equals `generic_rank` for every `c ≠ 0`.
    pub verdict: bool,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

/// Largest support accepted by [`pairwise_rank_poly`].
pub const MAX_PENCIL_SUPPORT: usize = 64;

/// Principal submatrix on `idx` of `a + c·b`.
fn principal(a: &[Vec<Rational>], b: &[Vec<Rational>], idx: &[usize], c: &Rational) -> Vec<Vec<Rational>> {
    idx.iter()
        .map(|&i| idx.iter().map(|&j| &a[i][j] + c * &b[i][j]).collect())
        .collect()
}

fn det_poly(a: &[Vec<Rational>], b: &[Vec<Rational>], idx: &[usize]) -> UPoly {
    let xs: Vec<Rational> = (0..=idx.len() as i64).map(|k| Rational::from_integer(k.into())).collect();
    let ys: Vec<Rational> = xs.iter().map(|c| linalg::determinant(&principal(a, b, idx, c))).collect();
    UPoly::interpolate(&xs, &ys)
}

/// Whether the pattern restricted to `idx` admits a perfect matching, a
/// necessary condition for the principal minor to be nonzero.
fn structurally_nonsingular(pattern: &[Vec<bool>], idx: &[usize]) -> bool {
    fn augment(r: usize, pattern: &[Vec<bool>], idx: &[usize], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for (cj, &c) in idx.iter().enumerate() {
            if pattern[idx[r]][c] && !seen[cj] {
                seen[cj] = true;
                if owner[cj].is_none_or(|o| augment(o, pattern, idx, seen, owner)) {
                    owner[cj] = Some(r);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; idx.len()];
    (0..idx.len()).all(|r| augment(r, pattern, idx, &mut vec![false; idx.len()], &mut owner))
}

/// Next `k`-subset of `0..m` in lexicographic order.
fn next_subset(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A symmetric matrix of rank `r` has a nonzero principal minor of order `r`,
/// and `r` is the generic rank of the pencil, so the rank stays `r` exactly
/// away from the common roots of the principal `r`-minors.
pub fn pairwise_rank_poly(levels: &[u8], fi: &XPoly, fj: &XPoly) -> Result<PencilReport> {
    let (si, sj) = (to_standard(levels, fi)?, to_standard(levels, fj)?);
    let mut vars = si.variables();
    vars.extend(sj.variables());
    vars.sort();
    vars.dedup();
    if vars.len() > MAX_PENCIL_SUPPORT {
        return Err(Error::guard("quadratic form support", MAX_PENCIL_SUPPORT, vars.len()));
    }
    let a = QuadFormMatrix::over(&vars, &si)?.entries;
    let b = QuadFormMatrix::over(&vars, &sj)?.entries;
    let m = vars.len();
    let all: Vec<usize> = (0..m).collect();
    let generic_rank = (1..=m as i64 + 1)
        .map(|c| linalg::rank(&principal(&a, &b, &all, &Rational::from_integer(c.into()))))
        .max()
        .unwrap_or(0);
    let determinant = det_poly(&a, &b, &all);

    let mut gcd = UPoly::zero();
    let mut examined = 0;
    if generic_rank > 0 {
        let pattern: Vec<Vec<bool>> = (0..m)
            .map(|i| (0..m).map(|j| !a[i][j].is_zero() || !b[i][j].is_zero()).collect())
            .collect();
        let mut idx: Vec<usize> = (0..generic_rank).collect();
        loop {
            let minor = if structurally_nonsingular(&pattern, &idx) {
                examined += 1;
                det_poly(&a, &b, &idx)
            } else {
                UPoly::zero()
            };
            if !minor.is_zero() {
                gcd = gcd.gcd(&minor);
                if gcd.is_monomial() {
                    break;
                }
            }
            if !next_subset(&mut idx, m) {
                break;
            }
        }
    }
    let (roots, _) = gcd.rational_roots();
    let drop_points: Vec<Rational> = roots.into_iter().filter(|r| !r.is_zero()).collect();
    Ok(PencilReport {
        support: m,
        rank_i: linalg::rank(&a),
        rank_j: linalg::rank(&b),
        generic_rank,
        determinant,
        verdict: generic_rank > 0 && gcd.is_monomial(),
        minor_gcd: gcd,
        minors_examined: examined,
        drop_points,
    })
}

/// Change-of-basis helper: `x_{u}` in plus coordinates as basic variables.
pub fn plus_to_standard_matrix(net: &Network) -> Result<Vec<Vec<Rational>>> {
    let std = net.outcomes();
    let pos: BTreeMap<&PlusIndex, usize> = std.iter().enumerate().map(|(i, u)| (u, i)).collect();
    net.variables(Basis::Plus)
        .iter()
        .map(|p| {
            let mut row = vec![Rational::zero(); std.len()];
            for u in p.completions(net.levels()) {
                row[pos[&u]] = Rational::from_integer(1.into());
            }
            Ok(row)
        })
        .collect()
}

/// Whether `u` carries `+` only at sinks, at the last value.
pub fn is_plus_basis_index(net: &Network, u: &PlusIndex) -> bool {
    u.entries().iter().enumerate().all(|(i, e)| match e {
        Entry::Plus => net.dag().is_sink(i + 1),
        Entry::Val(v) => !(net.dag().is_sink(i + 1) && *v == net.dag().levels(i + 1)),
    })
}
