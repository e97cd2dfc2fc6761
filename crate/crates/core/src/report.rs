//! Machine-readable reports assembled from the library operations.

use serde::Serialize;
use serde_json::{json, Value};

use crate::dag::{global_markov, induced_cycles_gt3, is_perfect, ordered_markov, toric_criterion, CiStatement};
use crate::error::Result;
use crate::ideal::{ci_generators, graded_kernel, gss_check, GssReport};
use crate::network::{Basis, Network};
use crate::poly::{PolyJson, XPoly};
use crate::toric::{pairwise_rank_poly, plus_basis, quad_form_rank, PencilReport};
use crate::witness::{deg4_witness, detm_witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessType {
    Deg4,
    DetM,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub levels: Vec<u8>,
    pub edges: Vec<[usize; 2]>,
    /// Input id of each canonical vertex.
    pub original_ids: Vec<u32>,
    pub sinks: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub graph: GraphSummary,
    pub perfect: bool,
    pub toric_criterion: bool,
    pub induced_cycles: Vec<Vec<usize>>,
    pub ordered_markov: Vec<CiStatement>,
    pub markov_statement_count: usize,
    pub reduced_statements: Vec<CiStatement>,
    pub degrees: Vec<GssReport>,
    pub witness: Option<Value>,
}

pub fn graph_summary(net: &Network) -> GraphSummary {
    let dag = net.dag();
    GraphSummary {
        n: dag.n(),
        levels: dag.all_levels().to_vec(),
        edges: dag.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        original_ids: dag.original_ids().to_vec(),
        sinks: dag.sinks().to_vec(),
    }
}

/// Structure, Markov properties, and kernel/CI comparisons for degrees `2..=max_degree`.
pub fn analyze(net: &Network, max_degree: usize, witness: Option<WitnessType>) -> Result<AnalysisReport> {
    let dag = net.dag();
    let markov = global_markov(dag, net.config().max_n)?;
    let cycles = induced_cycles_gt3(dag, net.config().max_cycle_n)?;
    let degrees = (2..=max_degree)
        .map(|d| gss_check(net, d, Basis::Standard))
        .collect::<Result<_>>()?;
    let witness = witness.map(|t| witness_report(net, t)).transpose()?;
    Ok(AnalysisReport {
        graph: graph_summary(net),
        perfect: is_perfect(dag, dag.vertices())?,
        toric_criterion: toric_criterion(dag),
        induced_cycles: cycles.iter().map(|c| c.to_vec()).collect(),
        ordered_markov: ordered_markov(dag),
        markov_statement_count: markov.full.len(),
        reduced_statements: markov.reduced,
        degrees,
        witness,
    })
}

pub fn poly_json(f: &XPoly) -> PolyJson {
    f.to_json()
}

/// `{"basis":[{"index":..,"image":..}]}`
pub fn param_report(net: &Network) -> Result<Value> {
    let p = plus_basis(net)?;
    let rows: Vec<Value> = p
        .pairs
        .iter()
        .map(|(u, m)| json!({"index": u.to_string(), "image": m.to_string()}))
        .collect();
    Ok(json!({"basis": rows}))
}

/// Minors of each statement in the reduced global Markov property.
pub fn ci_gens_report(net: &Network) -> Result<Value> {
    let markov = global_markov(net.dag(), net.config().max_n)?;
    let mut stmts = Vec::new();
    let mut total = 0;
    for s in &markov.reduced {
        let gens = ci_generators(net.dag(), s)?;
        total += gens.len();
        stmts.push(json!({
            "statement": s.to_string(),
            "sets": s,
            "generators": gens.iter().map(poly_json).collect::<Vec<_>>(),
        }));
    }
    let global = crate::ideal::global_generators(net)?;
    Ok(json!({
        "statements": stmts,
        "generator_count": total,
        "global_raw_count": global.raw.len(),
        "global_dim": global.dim(),
    }))
}

/// The degree-`d` kernel next to the CI component of the same degree.
pub fn kernel_report(net: &Network, d: usize, basis: Basis, with_elements: bool) -> Result<Value> {
    let gss = gss_check(net, d, basis)?;
    let mut v = json!({
        "degree": gss.degree,
        "basis": basis.name(),
        "kernel_dim": gss.kernel_dim,
        "ci_dim": gss.ci_dim,
        "equal": gss.equal,
        "witness": Value::Null,
    });
    if with_elements {
        let k = graded_kernel(net, d, basis)?;
        v["elements"] = json!(k.elements.iter().map(poly_json).collect::<Vec<_>>());
    }
    Ok(v)
}

pub fn witness_report(net: &Network, t: WitnessType) -> Result<Value> {
    match t {
        WitnessType::Deg4 => {
            let w = deg4_witness(net)?;
            let kernel = graded_kernel(&w.network, 4, Basis::Plus)?;
            Ok(json!({
                "type": "deg4",
                "degree": 4,
                "kernel_dim": kernel.dim(),
                "ci_dim": w.quadric_span_dim,
                "equal": kernel.dim() == w.quadric_span_dim,
                "witness": poly_json(&w.f),
                "cycle": w.cycle,
                "subgraph_vertices": w.vertex_map,
                "a": w.a.to_vec(),
                "b": w.b.to_vec(),
                "c": w.c.to_vec(),
                "quadric_count": w.quadric_count,
                "certificate": {
                    "in_kernel": w.in_kernel,
                    "outside_quadrics": w.outside_quadrics,
                },
            }))
        }
        WitnessType::DetM => {
            let w = detm_witness(net)?;
            let kernel = graded_kernel(net, 3, Basis::Standard)?;
            Ok(json!({
                "type": "detM",
                "degree": 3,
                "kernel_dim": kernel.dim(),
                "ci_dim": w.global_dim,
                "equal": kernel.dim() == w.global_dim,
                "witness": poly_json(&w.f),
                "det": poly_json(&w.det),
                "certificate": {
                    "in_kernel": w.in_kernel,
                    "det_in_global": w.det_in_global,
                    "outside_global": w.outside_global,
                },
            }))
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FormRank {
    pub name: String,
    pub statement: String,
    pub poly: String,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRank {
    pub i: String,
    pub j: String,
    #[serde(flatten)]
    pub pencil: PencilReport,
}

/// Ranks of the minors of the reduced Markov statements and of all pencils
/// `f_i + c·f_j` between them.
pub fn rank_report(net: &Network) -> Result<(Vec<FormRank>, Vec<PairRank>)> {
    let markov = global_markov(net.dag(), net.config().max_n)?;
    let mut forms: Vec<(String, String, XPoly)> = Vec::new();
    for s in &markov.reduced {
        for g in ci_generators(net.dag(), s)? {
            forms.push((format!("f{}", forms.len() + 1), s.to_string(), g));
        }
    }
    let levels = net.levels();
    let ranks = forms
        .iter()
        .map(|(name, stmt, f)| {
            Ok(FormRank {
                name: name.clone(),
                statement: stmt.clone(),
                poly: f.to_string(),
                rank: quad_form_rank(levels, f)?.1,
            })
        })
        .collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for (i, (ni, _, fi)) in forms.iter().enumerate() {
        for (nj, _, fj) in &forms[i + 1..] {
            pairs.push(PairRank {
                i: ni.clone(),
                j: nj.clone(),
                pencil: pairwise_rank_poly(levels, fi, fj)?,
            });
        }
    }
    Ok((ranks, pairs))
}
