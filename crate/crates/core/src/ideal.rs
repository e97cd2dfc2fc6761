//! CI ideals, graded components of the kernel, and the marginalization maps.

use std::collections::HashMap;
use std::hash::Hash;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::dag::{global_markov, CiStatement, DagModel};
use crate::error::{Error, Result};
use crate::linalg::{integer_row, left_null_space, Echelon, SparseVec};
use crate::network::{Basis, Network};
use crate::poly::{
    count_monomials, monomials_of_degree, Entry, Monomial, PlusIndex, Poly, Rational, ThetaVar, XPoly,
};
use crate::staged_tree::LabelAssignment;

/// Linear span of homogeneous polynomials of one degree, kept in echelon form.
pub struct SpanSpace<V> {
    degree: usize,
    columns: HashMap<Monomial<V>, usize>,
    echelon: Echelon,
    basis: Vec<Poly<V>>,
}

impl<V: Ord + Clone + Hash> SpanSpace<V> {
    pub fn new(degree: usize) -> Self {
        SpanSpace {
            degree,
            columns: HashMap::new(),
            echelon: Echelon::new(false),
            basis: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Independent elements in insertion order.
    pub fn basis(&self) -> &[Poly<V>] {
        &self.basis
    }

    fn row(&mut self, p: &Poly<V>) -> SparseVec {
        let mut entries = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let next = self.columns.len();
            let col = *self.columns.entry(m.clone()).or_insert(next);
            entries.push((col, c.clone()));
        }
        integer_row(entries)
    }

    /// Adds `p`; returns whether it enlarged the span.
    pub fn insert(&mut self, p: &Poly<V>) -> bool {
        if p.is_zero() {
            return false;
        }
        let row = self.row(p);
        let fresh = self.echelon.insert(row, 0).is_none();
        if fresh {
            self.basis.push(p.clone());
        }
        fresh
    }

    pub fn contains(&self, p: &Poly<V>) -> bool {
        let mut entries = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            match self.columns.get(m) {
                Some(&col) => entries.push((col, c.clone())),
                None => return false,
            }
        }
        self.echelon.contains(&integer_row(entries))
    }
}

/// A basis of a graded piece of the kernel.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    pub degree: usize,
    pub basis: Basis,
    /// Number of degree-`d` monomials in the ambient ring.
    pub ambient: usize,
    pub elements: Vec<XPoly>,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

/// Value vectors of a vertex set, lexicographically.
fn assignments(dag: &DagModel, set: &[usize]) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for &v in set {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=dag.levels(v)).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out
}

/// 2×2 minors `x_{abc}x_{a'b'c} - x_{a'bc}x_{ab'c}` for every value vector
/// `c` of `C`, with `+` outside `A ∪ B ∪ C`.
pub fn ci_generators(dag: &DagModel, stmt: &CiStatement) -> Result<Vec<XPoly>> {
    stmt.check_against(dag)?;
    let (a, b, c) = (stmt.a.to_vec(), stmt.b.to_vec(), stmt.c.to_vec());
    let avals = assignments(dag, &a);
    let bvals = assignments(dag, &b);
    let index = |av: &[u8], bv: &[u8], cv: &[u8]| {
        let mut u = PlusIndex::new(vec![Entry::Plus; dag.n()]);
        for (set, vals) in [(&a, av), (&b, bv), (&c, cv)] {
            for (&v, &k) in set.iter().zip(vals) {
                u.set(v, Entry::Val(k));
            }
        }
        Poly::var(u)
    };
    let mut out = Vec::new();
    for cv in assignments(dag, &c) {
        for (i, a1) in avals.iter().enumerate() {
            for a2 in &avals[i + 1..] {
                for (j, b1) in bvals.iter().enumerate() {
                    for b2 in &bvals[j + 1..] {
                        let f = &(&index(a1, b1, &cv) * &index(a2, b2, &cv))
                            - &(&index(a2, b1, &cv) * &index(a1, b2, &cv));
                        out.push(f);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct GlobalGenerators {
    /// Number of statements in the full global Markov property.
    pub statements: usize,
    /// Minors of every statement, in plus notation, duplicates removed.
    pub raw: Vec<XPoly>,
    /// Linearly independent subset of `raw` (in basic variables) spanning the same space.
    pub reduced: Vec<XPoly>,
}

impl GlobalGenerators {
    pub fn dim(&self) -> usize {
        self.reduced.len()
    }
}

pub fn global_generators(net: &Network) -> Result<GlobalGenerators> {
    let markov = global_markov(net.dag(), net.config().max_n)?;
    let mut raw = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for stmt in &markov.full {
        for g in ci_generators(net.dag(), stmt)? {
            let key = if g.leading().is_some_and(|(_, c)| *c < Rational::zero()) { -&g } else { g.clone() };
            if seen.insert(key) {
                raw.push(g);
            }
        }
    }
    let mut span = SpanSpace::new(2);
    let mut reduced = Vec::new();
    for g in &raw {
        let s = net.to_standard(g)?;
        if span.insert(&s) {
            reduced.push(s);
        }
    }
    Ok(GlobalGenerators {
        statements: markov.full.len(),
        raw,
        reduced,
    })
}

/// Exact basis of the degree-`d` part of the kernel of `φ̄`.
pub fn graded_kernel(net: &Network, d: usize, basis: Basis) -> Result<GradedBasis> {
    let vars = net.variables(basis);
    let ambient = count_monomials(vars.len(), d);
    net.guard_monomials(ambient)?;
    if d == 0 {
        return Ok(GradedBasis { degree: 0, basis, ambient, elements: Vec::new() });
    }
    let free = net.quotient().free_variables();
    let slot: HashMap<ThetaVar, u16> = free.iter().enumerate().map(|(i, v)| (v.clone(), i as u16)).collect();
    let var_images: Vec<Poly<u16>> = vars
        .par_iter()
        .map(|u| net.image(u).map(|p| p.map_vars(|v| slot[v])))
        .collect::<Result<_>>()?;

    // Images of degree-k monomials from those of their degree-(k-1) prefixes.
    let mut prev: HashMap<Vec<usize>, Poly<u16>> =
        (0..vars.len()).map(|i| (vec![i], var_images[i].clone())).collect();
    for k in 2..d {
        prev = monomials_of_degree(vars.len(), k)
            .into_par_iter()
            .map(|m| {
                let img = &prev[&m[..k - 1]] * &var_images[m[k - 1]];
                (m, img)
            })
            .collect();
    }
    let monos = monomials_of_degree(vars.len(), d);
    let images: Vec<Poly<u16>> = if d == 1 {
        monos.iter().map(|m| var_images[m[0]].clone()).collect()
    } else {
        monos
            .par_iter()
            .map(|m| &prev[&m[..d - 1]] * &var_images[m[d - 1]])
            .collect()
    };
    drop(prev);

    let mut columns: HashMap<Monomial<u16>, usize> = HashMap::new();
    let rows: Vec<SparseVec> = images
        .iter()
        .map(|img| {
            let entries: Vec<(usize, Rational)> = img
                .terms()
                .map(|(m, c)| {
                    let next = columns.len();
                    (*columns.entry(m.clone()).or_insert(next), c.clone())
                })
                .collect();
            integer_row(entries)
        })
        .collect();
    drop(images);

    let elements = left_null_space(rows)
        .into_iter()
        .map(|t| {
            Poly::from_terms(t.into_iter().map(|(i, c)| {
                let m = Monomial::from_vars(monos[i].iter().map(|&j| vars[j].clone()));
                (Rational::from_integer(c), m)
            }))
        })
        .map(|p: XPoly| normalize_sign(&p))
        .collect();
    Ok(GradedBasis { degree: d, basis, ambient, elements })
}

/// Positive leading coefficient.
fn normalize_sign(p: &XPoly) -> XPoly {
    match p.leading() {
        Some((_, c)) if *c < Rational::zero() => -p,
        _ => p.clone(),
    }
}

/// Span of `{m·g : g ∈ gens, m a monomial in vars of degree d - deg g}`.
pub fn degree_component_of_ideal<V: Ord + Clone + Hash + Send + Sync>(
    vars: &[V],
    gens: &[Poly<V>],
    d: usize,
    max_monomials: usize,
) -> Result<SpanSpace<V>> {
    let ambient = count_monomials(vars.len(), d);
    if ambient > max_monomials {
        return Err(Error::guard("degree component monomials", max_monomials, ambient));
    }
    let mut space = SpanSpace::new(d);
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let Some(e) = g.homogeneous_degree() else {
            return Err(Error::Precondition("generator is not homogeneous".into()));
        };
        let e = e as usize;
        if e > d {
            continue;
        }
        for m in monomials_of_degree(vars.len(), d - e) {
            let mono = Monomial::from_vars(m.iter().map(|&i| vars[i].clone()));
            space.insert(&g.mul_monomial(&mono));
        }
    }
    Ok(space)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GssReport {
    pub degree: usize,
    pub kernel_dim: usize,
    /// Dimension of the degree-`d` component of the CI ideal.
    pub ci_dim: usize,
    pub equal: bool,
}

/// Compares the degree-`d` kernel with the degree-`d` component of the
/// ideal generated by all CI minors.
pub fn gss_check(net: &Network, d: usize, basis: Basis) -> Result<GssReport> {
    let global = global_generators(net)?;
    let gens = match basis {
        Basis::Standard => global.reduced.clone(),
        Basis::Plus => global.reduced.iter().map(|g| net.to_plus(g)).collect::<Result<_>>()?,
    };
    let kernel = graded_kernel(net, d, basis)?;
    let ci = degree_component_of_ideal(&net.variables(basis), &gens, d, net.config().max_monomials)?;
    let equal = ci.dim() == kernel.dim() && kernel.elements.iter().all(|f| ci.contains(f));
    Ok(GssReport {
        degree: d,
        kernel_dim: kernel.dim(),
        ci_dim: ci.dim(),
        equal,
    })
}

pub fn gss_degree2_check(net: &Network) -> Result<GssReport> {
    gss_check(net, 2, Basis::Standard)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub degree: usize,
    pub kernel_dim: usize,
    /// Dimension of the degree-`d` component of the ideal generated by the quadrics of the kernel.
    pub quadric_dim: usize,
    pub gap: bool,
}

/// Whether the quadrics of the kernel fail to span its degree-`d` part.
pub fn quadric_gap(net: &Network, d: usize, basis: Basis) -> Result<GapReport> {
    let quadrics = graded_kernel(net, 2, basis)?;
    let kernel = graded_kernel(net, d, basis)?;
    let span = degree_component_of_ideal(&net.variables(basis), &quadrics.elements, d, net.config().max_monomials)?;
    let covered = kernel.elements.iter().all(|f| span.contains(f));
    Ok(GapReport {
        degree: d,
        kernel_dim: kernel.dim(),
        quadric_dim: span.dim(),
        gap: !covered,
    })
}

/// `n`, provided it is a sink and not the only vertex.
fn check_last_sink(net: &Network) -> Result<usize> {
    let n = net.dag().n();
    if n < 2 || !net.dag().is_sink(n) {
        return Err(Error::Precondition(format!("vertex {n} is not a sink of a graph with at least two vertices")));
    }
    Ok(n)
}

/// `x_v ↦ x_{v+}` over the network on `1..n-1`, expanded in basic variables of `net`.
pub fn marginal_embedding(net: &Network, f: &XPoly) -> Result<XPoly> {
    let n = check_last_sink(net)?;
    let sub_levels = &net.levels()[..n - 1];
    for v in f.variables() {
        v.check(sub_levels)?;
    }
    let lifted = f.substitute_all(|v| Poly::var(v.pushed(Entry::Plus)));
    net.to_standard(&lifted)
}

/// `x_{v_1..v_n} ↦ ρ(θ(X_n = v_n | parents)) · x_{v_1..v_{n-1}}`.
pub fn rho_projection(net: &Network, rho: &LabelAssignment, f: &XPoly) -> Result<XPoly> {
    let n = check_last_sink(net)?;
    rho.validate(net.quotient())?;
    let std = net.to_standard(f)?;
    let pa = net.dag().parents(n).to_vec();
    Ok(std.substitute_all(|u| {
        let vals = u.values().expect("basic");
        let label = crate::poly::LabelId::new(n, pa.iter().map(|&p| vals[p - 1]).collect(), vals[n - 1]);
        let value = rho.get(&label).cloned().expect("validated");
        Poly::var(u.truncated()).scale(&value)
    }))
}

/// Integer-coefficient form of a polynomial with primitive content and a positive leading coefficient.
pub fn primitive(p: &XPoly) -> XPoly {
    let ints = integer_row(p.terms().enumerate().map(|(i, (_, c))| (i, c.clone())));
    let monos: Vec<_> = p.terms().map(|(m, _)| m.clone()).collect();
    let q = Poly::from_terms(ints.into_iter().map(|(i, c)| (Rational::from_integer(c), monos[i].clone())));
    normalize_sign(&q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::fixtures::*;
    use rand::SeedableRng;

    fn stmt(a: &[usize], b: &[usize], c: &[usize]) -> CiStatement {
        CiStatement::from_ids(a, b, c).unwrap()
    }

    #[test]
    fn collider_chain_minors() {
        let n = collider_chain();
        let f1 = ci_generators(n.dag(), &stmt(&[2], &[1], &[])).unwrap();
        assert_eq!(f1, vec![binom("x_11++", "x_22++", "x_12++", "x_21++")]);
        let rest = ci_generators(n.dag(), &stmt(&[4], &[1], &[2, 3])).unwrap();
        assert_eq!(rest.len(), 4);
        assert_eq!(rest[0], binom("x_1111", "x_2112", "x_1112", "x_2111"));
        for g in rest.iter().chain(&f1) {
            assert!(n.in_kernel(g).unwrap());
        }
    }

    #[test]
    fn two_binary_vertices_one_minor() {
        let n = net(&[2, 2], &[]);
        let g = ci_generators(n.dag(), &stmt(&[1], &[2], &[])).unwrap();
        assert_eq!(g, vec![binom("x_11", "x_22", "x_21", "x_12")]);
    }

    #[test]
    fn collider_chain_global_generators() {
        let g = global_generators(&collider_chain()).unwrap();
        assert_eq!(g.dim(), 5);
        let complete = global_generators(&net(&[2; 3], &[(1, 2), (1, 3), (2, 3)])).unwrap();
        assert!(complete.raw.is_empty() && complete.reduced.is_empty());
    }

    #[test]
    fn kernel_dimensions() {
        let n = collider_chain();
        assert_eq!(graded_kernel(&n, 2, Basis::Standard).unwrap().dim(), 5);
        assert_eq!(graded_kernel(&n, 2, Basis::Plus).unwrap().dim(), 5);
        assert_eq!(graded_kernel(&n, 1, Basis::Standard).unwrap().dim(), 0);
        let chain = net(&[2, 2], &[(1, 2)]);
        for d in 1..=3 {
            assert_eq!(graded_kernel(&chain, d, Basis::Standard).unwrap().dim(), 0);
        }
        for f in graded_kernel(&n, 2, Basis::Standard).unwrap().elements {
            assert!(n.in_kernel(&f).unwrap());
        }
    }

    #[test]
    fn kernel_guard() {
        let mut n = collider_chain();
        let mut cfg = *n.config();
        cfg.max_monomials = 100;
        n.set_config(cfg);
        assert!(graded_kernel(&n, 2, Basis::Standard).unwrap_err().is_guard());
    }

    #[test]
    fn ideal_component_small() {
        let vars = ["x", "y", "z"];
        let v = |s: &str| Poly::var(s.to_string());
        let g = &(&v("x") * &v("x")) - &(&v("y") * &v("z"));
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let span = degree_component_of_ideal(&names, &[g], 3, 1000).unwrap();
        assert_eq!(span.dim(), 3);
        let empty = degree_component_of_ideal::<String>(&names, &[], 3, 1000).unwrap();
        assert_eq!(empty.dim(), 0);
    }

    #[test]
    fn gss_reports() {
        let r = gss_degree2_check(&collider_chain()).unwrap();
        assert_eq!(r, GssReport { degree: 2, kernel_dim: 5, ci_dim: 5, equal: true });
        assert!(gss_degree2_check(&two_sinks()).unwrap().equal);
        assert!(gss_degree2_check(&net(&[2; 3], &[(1, 2), (2, 3)])).unwrap().equal);
    }

    #[test]
    fn embedding_and_projection() {
        let g = collider_chain();
        let sub = Network::new(g.dag().without_last().unwrap());
        let e = marginal_embedding(&g, &x("x_111")).unwrap();
        assert_eq!(e, &x("x_1111") + &x("x_1112"));
        assert!(marginal_embedding(&g, &XPoly::zero()).unwrap().is_zero());

        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let rho = LabelAssignment::random(g.quotient(), &mut rng);
        assert_eq!(rho_projection(&g, &rho, &e).unwrap(), x("x_111"));

        let uniform = LabelAssignment::uniform(g.quotient());
        let half = rho_projection(&g, &uniform, &x("x_1111")).unwrap();
        assert_eq!(half, x("x_111").scale(&crate::poly::ratio(1, 2)));

        let f2 = binom("x_1111", "x_2112", "x_1112", "x_2111");
        assert!(sub.in_kernel(&rho_projection(&g, &rho, &f2).unwrap()).unwrap());

        for q in graded_kernel(&sub, 2, Basis::Standard).unwrap().elements {
            assert!(g.in_kernel(&marginal_embedding(&g, &q).unwrap()).unwrap());
        }
        let single = net(&[2], &[]);
        assert!(marginal_embedding(&single, &XPoly::zero()).is_err());
        let bad = two_sinks();
        assert!(rho_projection(&bad, &LabelAssignment::new(Default::default()), &x("x_1111")).is_err());
    }
}
