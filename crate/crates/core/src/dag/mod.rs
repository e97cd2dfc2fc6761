//! Directed acyclic graphs with per-vertex level counts.
//!
//! Vertices are renumbered on load so that every edge `i -> j` has `i < j`.
//! Among vertices that are ready at the same time the smallest original id
//! goes first, which makes the renumbering canonical.

mod cycles;
mod separation;
mod vset;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cycles::induced_cycles_gt3;
pub(crate) use cycles::cycle_endpoints;
pub use separation::{
    d_separated, global_markov, ordered_markov, trail_separation_oracle, CiStatement,
    MarkovProperty,
};
pub use vset::VertexSet;

/// Largest supported vertex count; vertex sets are bit masks.
pub const MAX_VERTICES: usize = 63;

/// Largest supported number of levels per variable (indices print as single digits).
pub const MAX_LEVELS: u8 = 9;

/// Graph description as read from JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGraph {
    pub variables: Vec<RawVariable>,
    #[serde(default)]
    pub edges: Vec<[u32; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawVariable {
    pub id: u32,
    pub levels: u32,
}

impl RawGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Shorthand used heavily in tests: ids `1..=levels.len()`.
    pub fn new(levels: &[u32], edges: &[(u32, u32)]) -> Self {
        RawGraph {
            variables: levels
                .iter()
                .enumerate()
                .map(|(i, &l)| RawVariable {
                    id: i as u32 + 1,
                    levels: l,
                })
                .collect(),
            edges: edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

/// A validated, canonically numbered DAG. Vertex ids are `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DagModel {
    levels: Vec<u8>,
    parents: Vec<VertexSet>,
    children: Vec<VertexSet>,
    original_ids: Vec<u32>,
}

/// Validate a raw description and apply the canonical topological numbering.
pub fn validate_dag(raw: &RawGraph) -> Result<DagModel> {
    let n = raw.variables.len();
    if n == 0 {
        return Err(Error::InvalidGraph("no variables".into()));
    }
    if n > MAX_VERTICES {
        return Err(Error::InvalidGraph(format!(
            "{n} variables; at most {MAX_VERTICES} supported"
        )));
    }

    let mut level_of: BTreeMap<u32, u8> = BTreeMap::new();
    for var in &raw.variables {
        if var.levels < 2 || var.levels > MAX_LEVELS as u32 {
            return Err(Error::BadLevels {
                id: var.id,
                levels: var.levels,
            });
        }
        if level_of.insert(var.id, var.levels as u8).is_some() {
            return Err(Error::InvalidGraph(format!("duplicate vertex id {}", var.id)));
        }
    }

    let mut out: BTreeMap<u32, BTreeSet<u32>> = level_of.keys().map(|&id| (id, BTreeSet::new())).collect();
    let mut indeg: BTreeMap<u32, usize> = level_of.keys().map(|&id| (id, 0)).collect();
    for &[from, to] in &raw.edges {
        for id in [from, to] {
            if !level_of.contains_key(&id) {
                return Err(Error::UnknownVertex(id));
            }
        }
        if from == to {
            return Err(Error::Cycle(vec![from]));
        }
        if !out.get_mut(&from).unwrap().insert(to) {
            return Err(Error::DuplicateEdge(from, to));
        }
        *indeg.get_mut(&to).unwrap() += 1;
    }

    // Kahn's algorithm, smallest original id first.
    let mut ready: BTreeSet<u32> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&id, _)| id).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(id) = ready.pop_first() {
        order.push(id);
        for &succ in &out[&id] {
            let d = indeg.get_mut(&succ).unwrap();
            *d -= 1;
            if *d == 0 {
                ready.insert(succ);
            }
        }
    }
    if order.len() < n {
        let stuck = indeg.iter().filter(|(_, &d)| d > 0).map(|(&id, _)| id).collect();
        return Err(Error::Cycle(stuck));
    }

    let new_id: BTreeMap<u32, usize> = order.iter().enumerate().map(|(i, &id)| (id, i + 1)).collect();
    let mut parents = vec![VertexSet::EMPTY; n];
    let mut children = vec![VertexSet::EMPTY; n];
    for (&from, succs) in &out {
        for to in succs {
            let (i, j) = (new_id[&from], new_id[to]);
            parents[j - 1].insert(i);
            children[i - 1].insert(j);
        }
    }
    Ok(DagModel {
        levels: order.iter().map(|id| level_of[id]).collect(),
        parents,
        children,
        original_ids: order,
    })
}

impl DagModel {
    pub fn from_json(text: &str) -> Result<Self> {
        validate_dag(&RawGraph::from_json(text)?)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.levels.len()
    }

    /// Number of levels of vertex `v` (1-based id).
    pub fn levels(&self, v: usize) -> u8 {
        self.levels[v - 1]
    }

    pub fn all_levels(&self) -> &[u8] {
        &self.levels
    }

    pub fn parents(&self, v: usize) -> VertexSet {
        self.parents[v - 1]
    }

    pub fn children(&self, v: usize) -> VertexSet {
        self.children[v - 1]
    }

    /// Parents and children together.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.parents[v - 1].union(self.children[v - 1])
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).contains(v)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// `original_ids()[i]` is the input id of vertex `i + 1`.
    pub fn original_ids(&self) -> &[u32] {
        &self.original_ids
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.n())
            .flat_map(|i| self.children(i).iter().map(move |j| (i, j)))
            .collect()
    }

    pub fn sinks(&self) -> VertexSet {
        (1..=self.n()).filter(|&v| self.children(v).is_empty()).collect()
    }

    pub fn non_sinks(&self) -> VertexSet {
        self.vertices().difference(self.sinks())
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.children(v).is_empty()
    }

    /// Strict descendants of `v`.
    pub fn descendants(&self, v: usize) -> VertexSet {
        // Children always carry larger ids, so one forward pass suffices.
        let mut desc = self.children(v);
        for w in v + 1..=self.n() {
            if desc.contains(w) {
                desc = desc.union(self.children(w));
            }
        }
        desc
    }

    /// `set` together with all of its ancestors.
    pub fn ancestral_closure(&self, set: VertexSet) -> VertexSet {
        let mut anc = set;
        for w in (1..=self.n()).rev() {
            if anc.contains(w) {
                anc = anc.union(self.parents(w));
            }
        }
        anc
    }

    /// Number of outcome vectors, i.e. leaves of the staged tree.
    pub fn outcome_count(&self) -> usize {
        self.levels.iter().map(|&k| k as usize).product()
    }

    /// The description this model re-validates to (canonical ids).
    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            variables: self
                .levels
                .iter()
                .enumerate()
                .map(|(i, &l)| RawVariable {
                    id: i as u32 + 1,
                    levels: l as u32,
                })
                .collect(),
            edges: self.edges().into_iter().map(|(a, b)| [a as u32, b as u32]).collect(),
        }
    }

    /// Induced subgraph on `keep`, renumbered canonically. Returns the model and
    /// the map from its ids to ids of `self`.
    pub fn induced(&self, keep: VertexSet) -> Result<(DagModel, Vec<usize>)> {
        let ids = keep.to_vec();
        let raw = RawGraph {
            variables: ids
                .iter()
                .map(|&v| RawVariable {
                    id: v as u32,
                    levels: self.levels(v) as u32,
                })
                .collect(),
            edges: self
                .edges()
                .into_iter()
                .filter(|&(a, b)| keep.contains(a) && keep.contains(b))
                .map(|(a, b)| [a as u32, b as u32])
                .collect(),
        };
        let sub = validate_dag(&raw)?;
        let map = sub.original_ids.iter().map(|&id| id as usize).collect();
        Ok((sub, map))
    }

    /// Induced subgraph on `1..n-1`; ids are unchanged.
    pub fn without_last(&self) -> Result<DagModel> {
        let n = self.n();
        if n < 2 {
            return Err(Error::Precondition("cannot drop the only vertex".into()));
        }
        let (sub, _) = self.induced(VertexSet::full(n - 1))?;
        Ok(sub)
    }

    fn check_subset(&self, subset: VertexSet) -> Result<()> {
        if let Some(bad) = subset.difference(self.vertices()).first() {
            return Err(Error::UnknownVertex(bad as u32));
        }
        Ok(())
    }
}

/// Every vertex of `subset` has pairwise adjacent parents inside `subset`.
pub fn is_perfect(dag: &DagModel, subset: VertexSet) -> Result<bool> {
    dag.check_subset(subset)?;
    for v in subset.iter() {
        let pa = dag.parents(v).intersection(subset).to_vec();
        for (i, &p) in pa.iter().enumerate() {
            for &q in &pa[i + 1..] {
                if !dag.adjacent(p, q) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The induced subgraph on the non-sinks is perfect.
pub fn toric_criterion(dag: &DagModel) -> bool {
    is_perfect(dag, dag.non_sinks()).expect("non-sinks are vertices")
}
