//! Explicit elements of the kernel that the CI quadrics miss.

use crate::dag::{cycle_endpoints, d_separated, induced_cycles_gt3, toric_criterion, CiStatement, DagModel, VertexSet};
use crate::error::{Error, Result};
use crate::ideal::{degree_component_of_ideal, global_generators, graded_kernel};
use crate::network::{Basis, Network};
use crate::poly::{Entry, Monomial, PlusIndex, Poly, XPoly};

/// Degree-four binomial for a network with an induced cycle of length more than three.
#[derive(Debug, Clone)]
pub struct Deg4Witness {
    /// The induced cycle, ids of the input graph.
    pub cycle: Vec<usize>,
    /// The ancestral subgraph of the cycle's end, on which `f` lives.
    pub network: Network,
    /// Input-graph id of each vertex of the subgraph.
    pub vertex_map: Vec<usize>,
    /// Separation `A ⊥ B | C` in subgraph ids.
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
    pub f: XPoly,
    pub in_kernel: bool,
    /// Dimension of the degree-two kernel.
    pub quadric_count: usize,
    /// Dimension of the degree-four component of the ideal of those quadrics.
    pub quadric_span_dim: usize,
    /// `f` lies outside that component.
    pub outside_quadrics: bool,
}

/// Vertices other than the endpoints on some simple path from `s` to `t` inside `within`.
fn vertices_on_paths(dag: &DagModel, s: usize, t: usize, within: VertexSet) -> VertexSet {
    fn walk(dag: &DagModel, v: usize, t: usize, within: VertexSet, path: &mut Vec<usize>, acc: &mut VertexSet) {
        if v == t {
            for &w in &path[1..path.len() - 1] {
                acc.insert(w);
            }
            return;
        }
        for w in dag.neighbors(v).intersection(within).iter() {
            if path.contains(&w) {
                continue;
            }
            path.push(w);
            walk(dag, w, t, within, path, acc);
            path.pop();
        }
    }
    let mut acc = VertexSet::EMPTY;
    walk(dag, s, t, within, &mut vec![s], &mut acc);
    acc
}

fn component(dag: &DagModel, start: usize, within: VertexSet) -> VertexSet {
    let mut seen = VertexSet::singleton(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in dag.neighbors(v).intersection(within).difference(seen).iter() {
            seen.insert(w);
            stack.push(w);
        }
    }
    seen
}

fn connected(dag: &DagModel, set: VertexSet) -> bool {
    set.first().is_some_and(|v| component(dag, v, set) == set)
}

/// Chooses `A ⊥ B | C` on `1..n-1` with `k1 ∈ A`, `k2 ∈ B`, both connected,
/// and every vertex of `C` adjacent to both `A` and `B`.
fn separation_for_cycle(dag: &DagModel, k1: usize, k2: usize) -> Result<(VertexSet, VertexSet, VertexSet)> {
    let rest = VertexSet::full(dag.n() - 1);
    let c0 = vertices_on_paths(dag, k1, k2, rest);
    let open = rest.difference(c0);
    let mut a = component(dag, k1, open);
    let mut b = component(dag, k2, open);
    if !a.is_disjoint(b) {
        return Err(Error::Precondition("cycle parents are joined outside the path vertices".into()));
    }
    let mut c = rest.difference(a.union(b));
    loop {
        let mut moved = false;
        for i in c.iter() {
            let nb = dag.neighbors(i);
            let (to_a, to_b) = (!nb.is_disjoint(a), !nb.is_disjoint(b));
            if to_a && !to_b {
                a.insert(i);
            } else if to_b && !to_a {
                b.insert(i);
            } else {
                continue;
            }
            c.remove(i);
            moved = true;
            break;
        }
        if !moved {
            break;
        }
    }

    let stmt = CiStatement::new(a, b, c)?;
    let checks = [
        d_separated(dag, &stmt),
        a.union(b).union(c) == rest,
        a.contains(k1) && connected(dag, a),
        b.contains(k2) && connected(dag, b),
        c.iter().all(|i| !dag.neighbors(i).is_disjoint(a) && !dag.neighbors(i).is_disjoint(b)),
    ];
    if let Some(k) = checks.iter().position(|ok| !ok) {
        return Err(Error::Precondition(format!("separation construction failed condition {}", k + 1)));
    }
    Ok((a, b, c))
}

pub fn deg4_witness(net: &Network) -> Result<Deg4Witness> {
    let dag = net.dag();
    if !toric_criterion(dag) {
        return Err(Error::Precondition("the non-sinks do not induce a perfect graph".into()));
    }
    let cycles = induced_cycles_gt3(dag, net.config().max_cycle_n)?;
    let Some(&cycle) = cycles.first() else {
        return Err(Error::Precondition("no induced cycle of length more than three".into()));
    };
    let (_, end, p1, p2) = cycle_endpoints(dag, cycle).expect("induced cycle shape");

    let (sub, map) = dag.induced(dag.ancestral_closure(VertexSet::singleton(end)))?;
    let local = |v: usize| map.iter().position(|&w| w == v).unwrap() + 1;
    let n = sub.n();
    debug_assert_eq!(local(end), n);
    let (k1, k2) = (local(p1).min(local(p2)), local(p1).max(local(p2)));
    let (a, b, c) = separation_for_cycle(&sub, k1, k2)?;

    let pa_n = sub.parents(n);
    let index = |av: u8, bv: u8, primed_c: bool| {
        let mut u = PlusIndex::basic(&vec![1; n]);
        for i in a.iter() {
            u.set(i, Entry::Val(av));
        }
        for i in b.iter() {
            u.set(i, Entry::Val(bv));
        }
        for i in c.iter() {
            let v = if primed_c && !pa_n.contains(i) { 2 } else { 1 };
            u.set(i, Entry::Val(v));
        }
        u
    };
    let mono = |us: [PlusIndex; 4]| Poly::monomial(Monomial::from_vars(us));
    let f = &mono([index(1, 1, false), index(2, 2, false), index(2, 1, true), index(1, 2, true)])
        - &mono([index(2, 1, false), index(1, 2, false), index(1, 1, true), index(2, 2, true)]);

    let subnet = Network::with_config(sub, *net.config());
    let in_kernel = subnet.in_kernel(&f)?;
    let quadrics = graded_kernel(&subnet, 2, Basis::Plus)?;
    let span = degree_component_of_ideal(
        &subnet.variables(Basis::Plus),
        &quadrics.elements,
        4,
        net.config().max_monomials,
    )?;
    let outside_quadrics = !span.contains(&subnet.to_plus(&f)?);
    Ok(Deg4Witness {
        cycle: cycle.to_vec(),
        network: subnet,
        vertex_map: map,
        a,
        b,
        c,
        f,
        in_kernel,
        quadric_count: quadrics.dim(),
        quadric_span_dim: span.dim(),
        outside_quadrics,
    })
}

/// Cubic obtained from a determinant in the CI ideal.
#[derive(Debug, Clone)]
pub struct DetMWitness {
    /// `det(M)` in variables with `+` in the last entry.
    pub det: XPoly,
    pub f: XPoly,
    pub in_kernel: bool,
    pub det_in_global: bool,
    /// Dimension of the degree-three component of the CI ideal.
    pub global_dim: usize,
    pub outside_global: bool,
}

fn det3(m: &[[XPoly; 3]; 3]) -> XPoly {
    let minor = |r: usize, c0: usize, c1: usize| &(&m[r][c0] * &m[r + 1][c1]) - &(&m[r][c1] * &m[r + 1][c0]);
    let t0 = &m[0][0] * &minor(1, 1, 2);
    let t1 = &m[0][1] * &minor(1, 0, 2);
    let t2 = &m[0][2] * &minor(1, 0, 1);
    &(&t0 - &t1) + &t2
}

/// Requires the graph `1 → 3 ← 2, 3 → 4` with levels `(3, 2, 2, 2)`.
pub fn detm_witness(net: &Network) -> Result<DetMWitness> {
    let dag = net.dag();
    if dag.edges() != [(1, 3), (2, 3), (3, 4)] || dag.all_levels() != [3, 2, 2, 2] {
        return Err(Error::Precondition(
            "expected edges 1->3, 2->3, 3->4 with levels (3,2,2,2)".into(),
        ));
    }
    let v = |i: u8, j: u8, k: u8| Poly::var(PlusIndex::new(vec![Entry::Val(i), Entry::Val(j), Entry::Val(k), Entry::Plus]));
    let row = |f: &dyn Fn(u8) -> XPoly| [f(1), f(2), f(3)];
    let m = [
        row(&|i| v(i, 1, 1)),
        row(&|i| &v(i, 1, 1) + &v(i, 1, 2)),
        row(&|i| &v(i, 2, 1) + &v(i, 2, 2)),
    ];
    let det = det3(&m);

    let mut f = Poly::zero();
    for (mono, coeff) in det.terms() {
        let mut factors = mono.expanded();
        let one = factors.iter().position(|u| u.get(3) == Entry::Val(1));
        let two = factors.iter().position(|u| u.get(3) == Entry::Val(2));
        let (Some(i), Some(j)) = (one, two) else {
            return Err(Error::Precondition(format!("term {mono} lacks a factor with third entry 1 and one with 2")));
        };
        factors[i].set(4, Entry::Val(1));
        factors[j].set(4, Entry::Val(1));
        f.add_term(Monomial::from_vars(factors), coeff.clone());
    }

    let in_kernel = net.in_kernel(&f)?;
    let global = global_generators(net)?;
    let span = degree_component_of_ideal(
        &net.variables(Basis::Standard),
        &global.reduced,
        3,
        net.config().max_monomials,
    )?;
    let det_in_global = span.contains(&net.to_standard(&det)?);
    let outside_global = !span.contains(&net.to_standard(&f)?);
    Ok(DetMWitness {
        det,
        f,
        in_kernel,
        det_in_global,
        global_dim: span.dim(),
        outside_global,
    })
}
