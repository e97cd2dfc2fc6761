//! Stratified staged trees.
//!
//! A vertex on level `j` is the outcome prefix `(v_1, .., v_j)`; its `k`-th
//! edge leads to `(v_1, .., v_j, k)`. For a network the edge labels out of a
//! level `j-1` vertex are `θ(X_j = k | parent values)`, so two vertices share a
//! stage exactly when they agree on `Pa(j)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::dag::DagModel;
use crate::error::{Error, Result};
use crate::poly::{format_rational, LabelId, Monomial, QuotientContext, Rational, ThetaVar};

/// Outcome prefix identifying a tree vertex.
pub type Prefix = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StagedTree {
    /// Vertex prefix -> labels of its outgoing edges (empty for leaves).
    vertices: BTreeMap<Prefix, Vec<LabelId>>,
    /// Stage classes per level, each a sorted list of prefixes.
    stages: Vec<Vec<Vec<Prefix>>>,
}

pub fn build_staged_tree(dag: &DagModel) -> StagedTree {
    let n = dag.n();
    let mut vertices = BTreeMap::new();
    let mut level: Vec<Prefix> = vec![Vec::new()];
    for j in 1..=n {
        let pa = dag.parents(j);
        let mut next = Vec::with_capacity(level.len() * dag.levels(j) as usize);
        for v in level {
            let pa_values: Vec<u8> = pa.iter().map(|i| v[i - 1]).collect();
            let labels = (1..=dag.levels(j))
                .map(|k| LabelId::new(j, pa_values.clone(), k))
                .collect();
            for k in 1..=dag.levels(j) {
                let mut child = v.clone();
                child.push(k);
                next.push(child);
            }
            vertices.insert(v, labels);
        }
        level = next;
    }
    for leaf in level {
        vertices.insert(leaf, Vec::new());
    }
    StagedTree::from_vertices(vertices)
}

impl StagedTree {
    /// Build from explicit vertices; stages are the classes of equal label sets.
    pub fn from_vertices(vertices: BTreeMap<Prefix, Vec<LabelId>>) -> Self {
        let depth = vertices.keys().map(Vec::len).max().unwrap_or(0);
        let mut stages = vec![Vec::new(); depth + 1];
        let mut classes: BTreeMap<(usize, BTreeSet<LabelId>), Vec<Prefix>> = BTreeMap::new();
        let mut by_set: BTreeMap<BTreeSet<LabelId>, Vec<Prefix>> = BTreeMap::new();
        for (p, labels) in &vertices {
            let set: BTreeSet<LabelId> = labels.iter().cloned().collect();
            by_set.entry(set.clone()).or_default().push(p.clone());
            classes.entry((p.len(), set)).or_default().push(p.clone());
        }
        // A stage spanning several levels is recorded on the level of its first vertex;
        // the stratification check reports it.
        for members in by_set.into_values() {
            let lvl = members.iter().map(Vec::len).min().unwrap_or(0);
            let mut members = members;
            members.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
            stages[lvl].push(members);
        }
        for lvl in &mut stages {
            lvl.sort();
        }
        drop(classes);
        StagedTree { vertices, stages }
    }

    /// Number of edge levels (leaves of a network tree sit on this level).
    pub fn depth(&self) -> usize {
        self.vertices.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> &BTreeMap<Prefix, Vec<LabelId>> {
        &self.vertices
    }

    pub fn labels(&self, v: &[u8]) -> Option<&[LabelId]> {
        self.vertices.get(v).map(Vec::as_slice)
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Prefix> {
        self.vertices.iter().filter(|(_, l)| l.is_empty()).map(|(p, _)| p)
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().count()
    }

    pub fn level(&self, j: usize) -> impl Iterator<Item = &Prefix> {
        self.vertices.keys().filter(move |p| p.len() == j)
    }

    /// Stage classes on level `j`.
    pub fn stages(&self, j: usize) -> &[Vec<Prefix>] {
        self.stages.get(j).map(Vec::as_slice).unwrap_or(&[])
    }

    fn label_set(&self, v: &[u8]) -> BTreeSet<&LabelId> {
        self.vertices[v].iter().collect()
    }

    pub fn same_stage(&self, v: &[u8], w: &[u8]) -> bool {
        self.label_set(v) == self.label_set(w)
    }

    /// Product of the labels along the root-to-leaf path.
    pub fn leaf_monomial(&self, leaf: &[u8]) -> Result<Monomial<ThetaVar>> {
        match self.vertices.get(leaf) {
            Some(l) if l.is_empty() => {}
            _ => {
                return Err(Error::InvalidIndex(format!("{} is not a leaf", prefix_name(leaf))));
            }
        }
        let mut labels = Vec::with_capacity(leaf.len());
        for j in 0..leaf.len() {
            let parent = &leaf[..j];
            let k = leaf[j] as usize;
            let l = self.vertices[parent][k - 1].clone();
            labels.push(ThetaVar::Label(l));
        }
        Ok(Monomial::from_vars(labels))
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            depth: self.depth(),
            vertices: self
                .sorted_vertices()
                .into_iter()
                .map(|(p, labels)| VertexJson {
                    prefix: prefix_name(p),
                    level: p.len(),
                    edges: labels
                        .iter()
                        .enumerate()
                        .map(|(k, l)| EdgeJson {
                            child: prefix_name(&child_of(p, k + 1)),
                            label: l.to_string(),
                        })
                        .collect(),
                })
                .collect(),
            stages: self
                .stages
                .iter()
                .map(|lvl| lvl.iter().map(|s| s.iter().map(|p| prefix_name(p)).collect()).collect())
                .collect(),
        }
    }

    /// Graphviz rendering; vertices in stages with more than one member share a color.
    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 8] = [
            "gold", "lightblue", "palegreen", "salmon", "plum", "orange", "cyan", "pink",
        ];
        let mut color: BTreeMap<&Prefix, &str> = BTreeMap::new();
        let mut next = 0;
        for lvl in &self.stages {
            for stage in lvl {
                if stage.len() > 1 {
                    for p in stage {
                        color.insert(p, PALETTE[next % PALETTE.len()]);
                    }
                    next += 1;
                }
            }
        }
        let mut out = String::from("digraph staged_tree {\n  rankdir=LR;\n  node [shape=circle, label=\"\", style=filled, fillcolor=white];\n");
        for (p, _) in self.sorted_vertices() {
            let fill = color.get(p).copied().unwrap_or("white");
            let _ = writeln!(out, "  \"v{}\" [fillcolor={fill}];", prefix_name(p));
        }
        for (p, labels) in self.sorted_vertices() {
            for (k, l) in labels.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  \"v{}\" -> \"v{}\" [label=\"{l}\"];",
                    prefix_name(p),
                    prefix_name(&child_of(p, k + 1))
                );
            }
        }
        out.push_str("}\n");
        out
    }

    fn sorted_vertices(&self) -> Vec<(&Prefix, &Vec<LabelId>)> {
        let mut vs: Vec<_> = self.vertices.iter().collect();
        vs.sort_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)));
        vs
    }
}

fn child_of(p: &[u8], k: usize) -> Prefix {
    let mut c = p.to_vec();
    c.push(k as u8);
    c
}

pub fn prefix_name(p: &[u8]) -> String {
    p.iter().map(|v| v.to_string()).collect()
}

/// Labeling axioms, tree shape, and stratification.
pub fn check_stage_axioms(tree: &StagedTree) -> bool {
    let vs = &tree.vertices;
    if !vs.contains_key(&Vec::new()) {
        return false;
    }
    // Shape: edges lead to existing vertices, every vertex hangs off an edge.
    for (p, labels) in vs {
        for k in 1..=labels.len() {
            if !vs.contains_key(&child_of(p, k)) {
                return false;
            }
        }
        if let Some((&last, parent)) = p.split_last() {
            match vs.get(parent) {
                Some(pl) if last >= 1 && (last as usize) <= pl.len() => {}
                _ => return false,
            }
        }
    }
    // Distinct labels on the edges out of one vertex.
    for labels in vs.values() {
        let set: BTreeSet<&LabelId> = labels.iter().collect();
        if set.len() != labels.len() {
            return false;
        }
    }
    // Label sets pairwise equal or disjoint; equal sets on one level.
    let mut owner: BTreeMap<&LabelId, (BTreeSet<&LabelId>, usize)> = BTreeMap::new();
    for (p, labels) in vs {
        let set: BTreeSet<&LabelId> = labels.iter().collect();
        for l in labels {
            match owner.get(l) {
                Some((s, lvl)) => {
                    if *s != set || *lvl != p.len() {
                        return false;
                    }
                }
                None => {
                    owner.insert(l, (set.clone(), p.len()));
                }
            }
        }
    }
    // All leaves on one level.
    let leaf_levels: BTreeSet<usize> = tree.leaves().map(Vec::len).collect();
    leaf_levels.len() == 1
}

/// Every vertex `u` on level `d` has all vertices of its subtree on a common
/// level in a single stage.
pub fn check_cut_condition(tree: &StagedTree, d: usize) -> Result<bool> {
    let n = tree.depth();
    if d > n {
        return Err(Error::InvalidIndex(format!("level {d} outside 0..={n}")));
    }
    for u in tree.level(d) {
        let mut reps: BTreeMap<usize, &Prefix> = BTreeMap::new();
        for (v, _) in tree.vertices.range(u.clone()..) {
            if !v.starts_with(u) {
                break;
            }
            match reps.get(&v.len()) {
                Some(rep) => {
                    if !tree.same_stage(rep, v) {
                        return Ok(false);
                    }
                }
                None => {
                    reps.insert(v.len(), v);
                }
            }
        }
    }
    Ok(true)
}

/// Positive rational values on labels summing to one on every stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelAssignment {
    values: BTreeMap<LabelId, Rational>,
}

impl LabelAssignment {
    pub fn new(values: BTreeMap<LabelId, Rational>) -> Self {
        LabelAssignment { values }
    }

    /// Every stage gets `1/κ` on each label.
    pub fn uniform(ctx: &QuotientContext) -> Self {
        let mut values = BTreeMap::new();
        for stage in ctx.stages() {
            let v = Rational::new(1.into(), (stage.len() as i64).into());
            for l in stage {
                values.insert(l.clone(), v.clone());
            }
        }
        LabelAssignment { values }
    }

    /// Random positive integer weights normalized per stage.
    pub fn random<R: Rng>(ctx: &QuotientContext, rng: &mut R) -> Self {
        let mut values = BTreeMap::new();
        for stage in ctx.stages() {
            let weights: Vec<i64> = stage.iter().map(|_| rng.gen_range(1..=50)).collect();
            let total: i64 = weights.iter().sum();
            for (l, w) in stage.iter().zip(weights) {
                values.insert(l.clone(), Rational::new(w.into(), total.into()));
            }
        }
        LabelAssignment { values }
    }

    pub fn get(&self, l: &LabelId) -> Option<&Rational> {
        self.values.get(l)
    }

    pub fn values(&self) -> &BTreeMap<LabelId, Rational> {
        &self.values
    }

    /// Each label of `ctx` is assigned a value in (0,1) and each stage sums to one.
    pub fn validate(&self, ctx: &QuotientContext) -> Result<()> {
        for stage in ctx.stages() {
            let mut total = Rational::zero();
            for l in stage {
                let v = self
                    .values
                    .get(l)
                    .ok_or_else(|| Error::BadAssignment(format!("label {l} unassigned")))?;
                if *v <= Rational::zero() || *v >= Rational::one() {
                    return Err(Error::BadAssignment(format!(
                        "label {l} = {} outside (0,1)",
                        format_rational(v)
                    )));
                }
                total += v;
            }
            if !total.is_one() {
                return Err(Error::BadAssignment(format!(
                    "stage of {} sums to {}",
                    stage[0],
                    format_rational(&total)
                )));
            }
        }
        Ok(())
    }

    /// Value of a parameter-ring variable with `z = 1`.
    pub fn eval_var(&self, v: &ThetaVar) -> Rational {
        match v {
            ThetaVar::Z => Rational::one(),
            ThetaVar::Label(l) => self.values.get(l).cloned().unwrap_or_else(Rational::zero),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeJson {
    pub depth: usize,
    pub vertices: Vec<VertexJson>,
    /// Per level, each stage as a list of vertex prefixes.
    pub stages: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexJson {
    pub prefix: String,
    pub level: usize,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeJson {
    pub child: String,
    pub label: String,
}
