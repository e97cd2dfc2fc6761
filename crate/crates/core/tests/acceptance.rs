//! Acceptance suite: one PASS/FAIL line per criterion. All arithmetic is
//! exact, so every numeric comparison has zero tolerance; only runtimes
//! carry limits.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::SeedableRng;

use bnalg::dag::{d_separated, global_markov, toric_criterion, trail_separation_oracle, CiStatement, VertexSet};
use bnalg::ideal::{
    ci_generators, degree_component_of_ideal, global_generators, graded_kernel, gss_check, gss_degree2_check,
    marginal_embedding, rho_projection,
};
use bnalg::poly::{LabelId, ThetaVar};
use bnalg::report::rank_report;
use bnalg::staged_tree::LabelAssignment;
use bnalg::toric::{binomial_fibers, plus_basis};
use bnalg::witness::{deg4_witness, detm_witness};
use bnalg::{Basis, Network, RawGraph};

const TWO_SINKS: &str = include_str!("fixtures/two_sinks.json");
const COLLIDER_CHAIN: &str = include_str!("fixtures/collider_chain.json");
const TAIL_BINARY: &str = include_str!("fixtures/collider_tail_binary.json");
const TAIL_TERNARY: &str = include_str!("fixtures/collider_tail_ternary.json");
const DIAMOND: &str = include_str!("fixtures/diamond.json");

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn load(text: &str) -> Result<Network, String> {
    Network::from_json(text).map_err(|e| e.to_string())
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Plus-basis table of the four-vertex two-sink network, in θ_{j,i,k}
/// notation with `i` the 1-based lexicographic parent configuration.
const TWO_SINKS_TABLE: &[(&str, &str)] = &[
    ("x_1111", "θ11 θ21 θ311 θ411"),
    ("x_111+", "θ11 θ21 θ311 z"),
    ("x_11+1", "θ11 θ21 z θ411"),
    ("x_11++", "θ11 θ21 z^2"),
    ("x_1211", "θ11 θ22 θ321 θ421"),
    ("x_121+", "θ11 θ22 θ321 z"),
    ("x_12+1", "θ11 θ22 z θ421"),
    ("x_12++", "θ11 θ22 z^2"),
    ("x_2111", "θ12 θ21 θ331 θ431"),
    ("x_211+", "θ12 θ21 θ331 z"),
    ("x_21+1", "θ12 θ21 z θ431"),
    ("x_21++", "θ12 θ21 z^2"),
    ("x_2211", "θ12 θ22 θ341 θ441"),
    ("x_221+", "θ12 θ22 θ341 z"),
    ("x_22+1", "θ12 θ22 z θ441"),
    ("x_22++", "θ12 θ22 z^2"),
];

/// `t<j>_<pa>_<k>` as `θ<j><idx><k>` (or `θ<j><k>` without parents).
fn table_name(l: &LabelId, levels: &[u8], parents: &[usize]) -> String {
    if parents.is_empty() {
        return format!("θ{}{}", l.var, l.value);
    }
    let idx = parents
        .iter()
        .zip(&l.parents)
        .fold(0usize, |acc, (&p, &v)| acc * levels[p - 1] as usize + (v as usize - 1));
    format!("θ{}{}{}", l.var, idx + 1, l.value)
}

fn factor_multiset(s: &str) -> BTreeMap<String, u32> {
    let mut m = BTreeMap::new();
    for f in s.split_whitespace() {
        let (name, e) = match f.split_once('^') {
            Some((n, e)) => (n.to_string(), e.parse().unwrap()),
            None => (f.to_string(), 1),
        };
        *m.entry(name).or_insert(0) += e;
    }
    m
}

fn criterion1() -> Check {
    let net = load(TWO_SINKS)?;
    let param = plus_basis(&net).map_err(err)?;
    ensure(param.pairs.len() == TWO_SINKS_TABLE.len(), format!("{} pairs", param.pairs.len()))?;
    let levels = net.levels();
    let mut got = BTreeMap::new();
    for (u, m) in &param.pairs {
        let mut factors = BTreeMap::new();
        for (v, e) in m.factors() {
            let name = match v {
                ThetaVar::Z => "z".to_string(),
                ThetaVar::Label(l) => table_name(l, levels, &net.dag().parents(l.var as usize).to_vec()),
            };
            *factors.entry(name).or_insert(0) += *e;
        }
        got.insert(u.to_string(), factors);
    }
    for (idx, mono) in TWO_SINKS_TABLE {
        let want = factor_multiset(mono);
        ensure(got.get(*idx) == Some(&want), format!("{idx}: got {:?}", got.get(*idx)))?;
    }
    Ok("16/16 pairs match".into())
}

fn criterion2() -> Check {
    let net = load(COLLIDER_CHAIN)?;
    let markov = global_markov(net.dag(), 10).map_err(err)?;
    let want = vec![
        CiStatement::from_ids(&[2], &[1], &[]).map_err(err)?,
        CiStatement::from_ids(&[4], &[1], &[2, 3]).map_err(err)?,
    ];
    ensure(markov.reduced == want, format!("reduced {:?}", markov.reduced))?;
    let counts: Vec<usize> = markov
        .reduced
        .iter()
        .map(|s| ci_generators(net.dag(), s).map(|g| g.len()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    ensure(counts == [1, 4], format!("minor counts {counts:?}"))?;
    let dim = global_generators(&net).map_err(err)?.dim();
    ensure(dim == 5, format!("CI basis dimension {dim}"))?;
    Ok("reduced {2⊥1, 4⊥1|{2,3}}, 1+4 minors, dim 5".into())
}

fn criterion3() -> Check {
    let net = load(COLLIDER_CHAIN)?;
    let k = graded_kernel(&net, 2, Basis::Standard).map_err(err)?;
    ensure(k.dim() == 5, format!("kernel dim {}", k.dim()))?;
    let gss = gss_degree2_check(&net).map_err(err)?;
    ensure(gss.equal && gss.ci_dim == 5, format!("{gss:?}"))?;
    Ok("kernel(2) = 5 = CI span".into())
}

fn criterion4() -> Check {
    let net = load(COLLIDER_CHAIN)?;
    let (forms, pairs) = rank_report(&net).map_err(err)?;
    ensure(forms.len() == 5, format!("{} forms", forms.len()))?;
    for f in &forms {
        ensure(f.rank == 4, format!("{} has rank {}", f.name, f.rank))?;
    }
    ensure(pairs.len() == 10, format!("{} pairs", pairs.len()))?;
    for p in &pairs {
        ensure(
            p.pencil.verdict && p.pencil.generic_rank == 8,
            format!("{} + c*{}: generic rank {} gcd {}", p.i, p.j, p.pencil.generic_rank, p.pencil.minor_gcd),
        )?;
    }
    // The reversed pencils f_j + c·f_i, computed directly.
    let gens: Vec<_> = global_markov(net.dag(), 10)
        .map_err(err)?
        .reduced
        .iter()
        .map(|s| ci_generators(net.dag(), s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?
        .concat();
    for i in 0..gens.len() {
        for j in 0..i {
            let p = bnalg::toric::pairwise_rank_poly(net.levels(), &gens[i], &gens[j]).map_err(err)?;
            ensure(p.verdict && p.generic_rank == 8, format!("f{} + c*f{}: {}", i + 1, j + 1, p.minor_gcd))?;
        }
    }
    Ok("f1..f5 rank 4; all 20 ordered pencils rank 8 for c ≠ 0".into())
}

fn criterion5() -> Check {
    let net = load(DIAMOND)?;
    ensure(toric_criterion(net.dag()), "toric criterion false")?;
    let w = deg4_witness(&net).map_err(err)?;
    ensure(w.f.len() == 2 && w.f.homogeneous_degree() == Some(4), format!("f = {}", w.f))?;
    ensure(w.in_kernel, "f not in kernel")?;
    ensure(w.outside_quadrics, "f inside quadric component")?;
    let k4 = graded_kernel(&w.network, 4, Basis::Plus).map_err(err)?.dim();
    ensure(k4 > w.quadric_span_dim, format!("kernel(4) {k4} vs quadrics {}", w.quadric_span_dim))?;
    Ok(format!("f = {}; kernel(4) {k4} > quadric component {}", w.f, w.quadric_span_dim))
}

fn criterion6() -> Check {
    let h = load(TAIL_BINARY)?;
    let g2 = gss_degree2_check(&h).map_err(err)?;
    ensure(g2.equal, format!("H degree 2: {g2:?}"))?;
    let g3 = gss_check(&h, 3, Basis::Standard).map_err(err)?;
    ensure(g3.equal, format!("H degree 3: {g3:?}"))?;
    let g = load(TAIL_TERNARY)?;
    let w = detm_witness(&g).map_err(err)?;
    ensure(w.in_kernel, "f not in kernel")?;
    ensure(w.det_in_global, "det(M) outside I_global")?;
    ensure(w.outside_global, "f inside degree-3 component of I_global")?;
    Ok(format!(
        "H equal in degrees 2 and 3 ({}/{}); G detM witness outside I_global(3) (dim {})",
        g2.kernel_dim, g3.kernel_dim, w.global_dim
    ))
}

fn criterion7() -> Check {
    let graphs: [(&str, &[(u32, u32)]); 2] = [("chain", &[(1, 2), (2, 3)]), ("complete", &[(1, 2), (1, 3), (2, 3)])];
    let mut notes = Vec::new();
    for (name, edges) in graphs {
        let net = Network::new(bnalg::validate_dag(&RawGraph::new(&[2, 2, 2], edges)).map_err(err)?);
        let fib = binomial_fibers(&net, 2, Basis::Standard).map_err(err)?;
        ensure(fib.binomial, format!("{name}: {} binomials vs kernel {}", fib.binomials.len(), fib.kernel_dim))?;
        let k2 = graded_kernel(&net, 2, Basis::Standard).map_err(err)?;
        let k3 = graded_kernel(&net, 3, Basis::Standard).map_err(err)?;
        let vars = net.variables(Basis::Standard);
        let span = degree_component_of_ideal(&vars, &k2.elements, 3, net.config().max_monomials).map_err(err)?;
        ensure(k3.elements.iter().all(|f| span.contains(f)), format!("{name}: kernel(3) escapes"))?;
        notes.push(format!("{name} {}/{}", k2.dim(), k3.dim()));
    }
    Ok(notes.join(", "))
}

/// Every DAG on `n` vertices with edges only from lower to higher ids.
fn ordered_dags(n: usize) -> Vec<Vec<(u32, u32)>> {
    let slots: Vec<(u32, u32)> = (1..=n as u32).flat_map(|a| (a + 1..=n as u32).map(move |b| (a, b))).collect();
    (0u32..1 << slots.len())
        .map(|mask| slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect())
        .collect()
}

/// All (A, B, C) with A, B non-empty and the three sets pairwise disjoint.
fn statements(n: usize) -> Vec<CiStatement> {
    let mut out = Vec::new();
    for code in 0..4usize.pow(n as u32) {
        let mut sets = [VertexSet::default(); 3];
        let mut c = code;
        for v in 1..=n {
            if c % 4 < 3 {
                sets[c % 4].insert(v);
            }
            c /= 4;
        }
        if let Ok(s) = CiStatement::new(sets[0], sets[1], sets[2]) {
            out.push(s);
        }
    }
    out
}

fn criterion8() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let (mut graphs, mut stmts, mut quadrics, mut lifts) = (0, 0, 0, 0);
    for n in 1..=4 {
        let all = statements(n);
        for edges in ordered_dags(n) {
            graphs += 1;
            let net = Network::new(bnalg::validate_dag(&RawGraph::new(&vec![2; n], &edges)).map_err(err)?);
            let dag = net.dag();
            for s in &all {
                stmts += 1;
                let fast = d_separated(dag, s);
                let slow = trail_separation_oracle(dag, s, 10).map_err(err)?;
                ensure(fast == slow, format!("{edges:?} {s}: d-separation {fast}, oracle {slow}"))?;
                if fast {
                    for q in ci_generators(dag, s).map_err(err)? {
                        quadrics += 1;
                        ensure(net.in_kernel(&q).map_err(err)?, format!("{edges:?} {s}: {q} not in kernel"))?;
                    }
                }
            }
            if n < 2 {
                continue;
            }
            let sub = Network::new(dag.without_last().map_err(err)?);
            let sub_kernel = graded_kernel(&sub, 2, Basis::Standard).map_err(err)?;
            let kernel = graded_kernel(&net, 2, Basis::Standard).map_err(err)?;
            let probes: Vec<_> = sub_kernel
                .elements
                .iter()
                .cloned()
                .chain(sub.variables(Basis::Standard).into_iter().map(bnalg::poly::Poly::var))
                .collect();
            let lifted: Vec<_> = probes.iter().map(|g| marginal_embedding(&net, g)).collect::<Result<_, _>>().map_err(err)?;
            for (g, e) in probes.iter().zip(&lifted).take(sub_kernel.dim()) {
                ensure(net.in_kernel(e).map_err(err)?, format!("{edges:?}: ε({g}) not in kernel"))?;
            }
            for _ in 0..3 {
                let rho = LabelAssignment::random(net.quotient(), &mut rng);
                for (g, e) in probes.iter().zip(&lifted) {
                    lifts += 1;
                    let back = rho_projection(&net, &rho, e).map_err(err)?;
                    ensure(&back == g, format!("{edges:?}: ψ(ε({g})) = {back}"))?;
                }
                for f in &kernel.elements {
                    let p = rho_projection(&net, &rho, f).map_err(err)?;
                    ensure(sub.in_kernel(&p).map_err(err)?, format!("{edges:?}: ψ({f}) not in kernel"))?;
                }
            }
        }
    }
    Ok(format!("{graphs} graphs, {stmts} statements, {quadrics} quadrics, {lifts} round trips"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 four-vertex two-sink parametrization", criterion1, Duration::from_secs(1)),
        ("2 reduced Markov statements and minors", criterion2, Duration::from_secs(1)),
        ("3 degree-2 kernel equals CI span", criterion3, Duration::from_secs(10)),
        ("4 quadratic-form rank certificates", criterion4, Duration::from_secs(5)),
        ("5 diamond degree-4 witness", criterion5, Duration::from_secs(60)),
        ("6 ternary-root pair and detM witness", criterion6, Duration::from_secs(60)),
        ("7 perfect DAGs are binomial and quadratic", criterion7, Duration::from_secs(10)),
        ("8 exhaustive oracle equivalence on <= 4 vertices", criterion8, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {name} [{:.2}s / limit {}s]: {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
