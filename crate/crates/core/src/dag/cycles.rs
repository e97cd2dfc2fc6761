use super::{DagModel, VertexSet};
use crate::error::{Error, Result};

/// Vertex sets of size at least four whose induced subgraph is exactly two
/// internally disjoint directed paths with a common start and end.
pub fn induced_cycles_gt3(dag: &DagModel, max_n: usize) -> Result<Vec<VertexSet>> {
    let n = dag.n();
    if n > max_n {
        return Err(Error::guard("induced cycle search vertex count", max_n, n));
    }
    let mut found: Vec<VertexSet> = (0..1u64 << n)
        .map(VertexSet::from_bits)
        .filter(|s| s.len() >= 4 && is_induced_cycle(dag, *s))
        .collect();
    found.sort_by_key(|s| (s.len(), s.to_vec()));
    Ok(found)
}

/// Checks the shape of the induced subgraph on `set`.
pub(crate) fn is_induced_cycle(dag: &DagModel, set: VertexSet) -> bool {
    let mut sources = 0;
    let mut sinks = 0;
    for v in set.iter() {
        let ins = dag.parents(v).intersection(set).len();
        let outs = dag.children(v).intersection(set).len();
        match (ins, outs) {
            (0, 2) => sources += 1,
            (2, 0) => sinks += 1,
            (1, 1) => {}
            _ => return false,
        }
    }
    if sources != 1 || sinks != 1 {
        return false;
    }
    // Every vertex has skeleton degree two; connectedness makes it a single cycle.
    let start = set.first().unwrap();
    let mut seen = VertexSet::singleton(start);
    let mut frontier = seen;
    while !frontier.is_empty() {
        let mut next = VertexSet::EMPTY;
        for v in frontier.iter() {
            next = next.union(dag.neighbors(v).intersection(set));
        }
        frontier = next.difference(seen);
        seen = seen.union(frontier);
    }
    seen == set
}

/// Start, end, and the two parents of the end inside an induced cycle.
pub(crate) fn cycle_endpoints(dag: &DagModel, set: VertexSet) -> Option<(usize, usize, usize, usize)> {
    let start = set.iter().find(|&v| dag.parents(v).is_disjoint(set))?;
    let end = set.iter().find(|&v| dag.children(v).is_disjoint(set))?;
    let pa = dag.parents(end).intersection(set).to_vec();
    (pa.len() == 2).then(|| (start, end, pa[0], pa[1]))
}
