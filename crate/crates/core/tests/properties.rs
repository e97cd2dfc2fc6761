//! Randomized invariants over small graphs and polynomials.

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use bnalg::dag::{d_separated, is_perfect, toric_criterion, trail_separation_oracle, CiStatement, DagModel, VertexSet};
use bnalg::dag::global_markov;
use bnalg::ideal::{ci_generators, global_generators, graded_kernel, SpanSpace};
use bnalg::poly::{Monomial, Poly, Rational, ThetaPoly, ThetaVar};
use bnalg::staged_tree::LabelAssignment;
use bnalg::{validate_dag, Basis, Network, RawGraph};

/// A DAG on `n` vertices given by an upper-triangular edge mask, with ids
/// relabelled by `perm` so the input order is not topological.
fn raw_graph(n: usize, mask: u64, levels: &[u32], perm: &[u32]) -> RawGraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for a in 0..n {
        for b in a + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((perm[a], perm[b]));
            }
            bit += 1;
        }
    }
    let mut raw = RawGraph::new(&levels[..n], &edges);
    for (i, v) in raw.variables.iter_mut().enumerate() {
        v.id = perm[i];
    }
    raw
}

fn graph_strategy(max_n: usize, max_level: u32) -> impl Strategy<Value = RawGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        (
            Just(n),
            any::<u64>(),
            proptest::collection::vec(2..=max_level, n),
            Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle(),
        )
            .prop_map(|(n, mask, levels, perm)| raw_graph(n, mask, &levels, &perm))
    })
}

fn statement_strategy(n: usize) -> impl Strategy<Value = Option<CiStatement>> {
    proptest::collection::vec(0..4usize, n).prop_map(|roles| {
        let mut sets = [VertexSet::default(); 3];
        for (i, &r) in roles.iter().enumerate() {
            if r < 3 {
                sets[r].insert(i + 1);
            }
        }
        CiStatement::new(sets[0], sets[1], sets[2]).ok()
    })
}

fn summary(d: &DagModel) -> (Vec<u8>, Vec<(usize, usize)>) {
    (d.all_levels().to_vec(), d.edges())
}

fn collider_chain() -> Network {
    Network::new(validate_dag(&RawGraph::new(&[2, 2, 2, 2], &[(1, 3), (2, 3), (3, 4), (2, 4)])).unwrap())
}

/// Random polynomial in every label of `net` and `z`.
fn theta_poly(net: &Network, terms: &[(i64, Vec<usize>)]) -> ThetaPoly {
    let mut vars: Vec<ThetaVar> = net
        .quotient()
        .stages()
        .iter()
        .flatten()
        .cloned()
        .map(ThetaVar::Label)
        .collect();
    vars.push(ThetaVar::Z);
    Poly::from_terms(terms.iter().map(|(c, idx)| {
        (
            Rational::from_integer((*c).into()),
            Monomial::from_vars(idx.iter().map(|&i| vars[i % vars.len()].clone())),
        )
    }))
}

fn terms_strategy() -> impl Strategy<Value = Vec<(i64, Vec<usize>)>> {
    proptest::collection::vec((-5i64..=5, proptest::collection::vec(0usize..64, 0..4)), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn validate_is_idempotent(raw in graph_strategy(7, 4)) {
        let d = validate_dag(&raw).unwrap();
        let again = validate_dag(&d.to_raw()).unwrap();
        prop_assert_eq!(summary(&d), summary(&again));
        for (a, b) in d.edges() {
            prop_assert!(a < b);
        }
        prop_assert!(d.is_sink(d.n()));
    }

    #[test]
    fn d_separation_matches_oracle_and_is_symmetric(
        (raw, stmt) in graph_strategy(6, 2).prop_flat_map(|raw| {
            let n = raw.variables.len();
            (Just(raw), statement_strategy(n))
        })
    ) {
        let d = validate_dag(&raw).unwrap();
        if let Some(s) = stmt {
            let sep = d_separated(&d, &s);
            prop_assert_eq!(sep, trail_separation_oracle(&d, &s, 10).unwrap());
            prop_assert_eq!(sep, d_separated(&d, &s.swapped()));
            // Separation is inherited by subsets of A.
            if sep && s.a.len() > 1 {
                let a = s.a.without(s.a.first().unwrap());
                let sub = CiStatement::new(a, s.b, s.c).unwrap();
                prop_assert!(d_separated(&d, &sub));
            }
        }
    }

    #[test]
    fn perfection_is_hereditary(raw in graph_strategy(7, 2), drop in any::<u64>()) {
        let d = validate_dag(&raw).unwrap();
        let all = d.vertices();
        let sub = VertexSet::from_bits(all.bits() & !drop);
        if is_perfect(&d, all).unwrap() {
            prop_assert!(is_perfect(&d, sub).unwrap());
            prop_assert!(toric_criterion(&d));
        }
    }

    #[test]
    fn leaf_probabilities_sum_to_one(raw in graph_strategy(4, 3), seed in any::<u64>()) {
        let net = Network::new(validate_dag(&raw).unwrap());
        let rho = LabelAssignment::random(net.quotient(), &mut StdRng::seed_from_u64(seed));
        rho.validate(net.quotient()).unwrap();
        let tree = net.tree();
        let mut total = Rational::zero();
        for leaf in tree.leaves() {
            let m = tree.leaf_monomial(leaf).unwrap();
            total += Poly::monomial(m).eval(|v| rho.eval_var(v));
        }
        prop_assert_eq!(tree.leaf_count(), net.dag().outcome_count());
        prop_assert_eq!(total, Rational::one());
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(f in terms_strategy(), g in terms_strategy(), k in -4i64..=4) {
        let net = collider_chain();
        let q = net.quotient();
        let (f, g) = (theta_poly(&net, &f), theta_poly(&net, &g));
        let nf = q.normal_form(&f).unwrap();
        prop_assert_eq!(&q.normal_form(&nf).unwrap(), &nf);
        let k = Rational::from_integer(k.into());
        let combo = &f + &g.scale(&k);
        let lhs = q.normal_form(&combo).unwrap();
        let rhs = &nf + &q.normal_form(&g).unwrap().scale(&k);
        prop_assert_eq!(lhs, rhs);
        for v in nf.variables() {
            if let ThetaVar::Label(l) = v {
                prop_assert!(!q.is_eliminated(&l));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn plus_and_standard_kernels_agree(raw in graph_strategy(4, 2)) {
        let net = Network::new(validate_dag(&raw).unwrap());
        let std = graded_kernel(&net, 2, Basis::Standard).unwrap();
        let plus = graded_kernel(&net, 2, Basis::Plus).unwrap();
        prop_assert_eq!(std.dim(), plus.dim());
        for f in &plus.elements {
            prop_assert!(net.in_kernel(&net.to_standard(f).unwrap()).unwrap());
        }
    }

    #[test]
    fn reduced_statements_span_the_global_minors(raw in graph_strategy(5, 2)) {
        let net = Network::new(validate_dag(&raw).unwrap());
        let markov = global_markov(net.dag(), 10).unwrap();
        let mut span = SpanSpace::new(2);
        for s in &markov.reduced {
            prop_assert!(markov.full.contains(s));
            for g in ci_generators(net.dag(), s).unwrap() {
                span.insert(&net.to_standard(&g).unwrap());
            }
        }
        prop_assert_eq!(span.dim(), global_generators(&net).unwrap().dim());
    }
}
