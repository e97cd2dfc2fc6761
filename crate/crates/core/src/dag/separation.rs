//! Trail separation (S1/S2 blocking) and Markov statement enumeration.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{DagModel, VertexSet};
use crate::error::{Error, Result};

/// Conditional independence statement `A ⊥ B | C`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CiStatement {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
}

impl CiStatement {
    pub fn new(a: VertexSet, b: VertexSet, c: VertexSet) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidStatement("A and B must be nonempty".into()));
        }
        if !a.is_disjoint(b) || !a.is_disjoint(c) || !b.is_disjoint(c) {
            return Err(Error::InvalidStatement("A, B, C must be disjoint".into()));
        }
        Ok(CiStatement { a, b, c })
    }

    /// Convenience constructor from id slices.
    pub fn from_ids(a: &[usize], b: &[usize], c: &[usize]) -> Result<Self> {
        Self::new(
            a.iter().copied().collect(),
            b.iter().copied().collect(),
            c.iter().copied().collect(),
        )
    }

    pub fn check_against(&self, dag: &DagModel) -> Result<()> {
        dag.check_subset(self.a.union(self.b).union(self.c))
    }

    pub fn swapped(&self) -> Self {
        CiStatement {
            a: self.b,
            b: self.a,
            c: self.c,
        }
    }

    /// Orientation with the largest vertex of `A ∪ B` inside `A`.
    pub fn canonical(&self) -> Self {
        if self.a.last() > self.b.last() {
            *self
        } else {
            self.swapped()
        }
    }
}

impl fmt::Display for CiStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: VertexSet| {
            if s.len() == 1 {
                s.first().unwrap().to_string()
            } else {
                s.to_string()
            }
        };
        write!(f, "{} ⊥ {}", side(self.a), side(self.b))?;
        if !self.c.is_empty() {
            write!(f, " | {}", self.c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for CiStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for CiStatement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CiStatement", 3)?;
        st.serialize_field("a", &self.a.to_vec())?;
        st.serialize_field("b", &self.b.to_vec())?;
        st.serialize_field("c", &self.c.to_vec())?;
        st.end()
    }
}

/// Reachability sweep over (vertex, direction) pairs.
///
/// A trail entering a vertex from a child continues anywhere unless the
/// vertex is conditioned on; a trail entering from a parent passes on to
/// children when unconditioned and bounces to parents when the vertex is an
/// ancestor of `C`.
pub fn d_separated(dag: &DagModel, stmt: &CiStatement) -> bool {
    let n = dag.n();
    let anc = dag.ancestral_closure(stmt.c);
    // visited[v][0]: arrived travelling up (from a child); [1]: travelling down.
    let mut visited = vec![[false; 2]; n + 1];
    let mut queue: VecDeque<(usize, usize)> = stmt.a.iter().map(|v| (v, 0)).collect();
    while let Some((v, dir)) = queue.pop_front() {
        if visited[v][dir] {
            continue;
        }
        visited[v][dir] = true;
        let observed = stmt.c.contains(v);
        if !observed && stmt.b.contains(v) {
            return false;
        }
        if dir == 0 {
            if !observed {
                queue.extend(dag.parents(v).iter().map(|p| (p, 0)));
                queue.extend(dag.children(v).iter().map(|c| (c, 1)));
            }
        } else {
            if !observed {
                queue.extend(dag.children(v).iter().map(|c| (c, 1)));
            }
            if anc.contains(v) {
                queue.extend(dag.parents(v).iter().map(|p| (p, 0)));
            }
        }
    }
    true
}

/// Literal check: enumerate every simple trail from `A` to `B` and test that
/// each one has a blocking vertex.
pub fn trail_separation_oracle(dag: &DagModel, stmt: &CiStatement, max_n: usize) -> Result<bool> {
    if dag.n() > max_n {
        return Err(Error::guard("trail enumeration vertex count", max_n, dag.n()));
    }
    let desc: Vec<VertexSet> = (0..=dag.n())
        .map(|v| if v == 0 { VertexSet::EMPTY } else { dag.descendants(v) })
        .collect();

    let blocked_at = |prev: usize, j: usize, next: usize| -> bool {
        let collider = dag.parents(j).contains(prev) && dag.parents(j).contains(next);
        if stmt.c.contains(j) {
            !collider
        } else {
            collider && desc[j].is_disjoint(stmt.c)
        }
    };

    fn walk(
        dag: &DagModel,
        path: &mut Vec<usize>,
        on_path: VertexSet,
        targets: VertexSet,
        blocked_at: &dyn Fn(usize, usize, usize) -> bool,
    ) -> bool {
        // Returns true when an unblocked trail was found.
        let last = *path.last().unwrap();
        for next in dag.neighbors(last).difference(on_path).iter() {
            path.push(next);
            if targets.contains(next) {
                let open = path.windows(3).all(|w| !blocked_at(w[0], w[1], w[2]));
                if open {
                    return true;
                }
            }
            if walk(dag, path, on_path.with(next), targets, blocked_at) {
                return true;
            }
            path.pop();
        }
        false
    }

    for a in stmt.a.iter() {
        let mut path = vec![a];
        if walk(dag, &mut path, VertexSet::singleton(a), stmt.b, &blocked_at) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `j ⊥ ({1..j-1} \ Pa(j)) | Pa(j)` for every `j` with a nonempty middle set.
pub fn ordered_markov(dag: &DagModel) -> Vec<CiStatement> {
    (1..=dag.n())
        .filter_map(|j| {
            let pa = dag.parents(j);
            let earlier = VertexSet::full(j - 1).difference(pa);
            (!earlier.is_empty()).then(|| CiStatement {
                a: VertexSet::singleton(j),
                b: earlier,
                c: pa,
            })
        })
        .collect()
}

/// All valid statements and their dominance-reduced presentation.
#[derive(Debug, Clone, Serialize)]
pub struct MarkovProperty {
    /// Every assignment of vertices to A/B/C/none that is separated.
    pub full: Vec<CiStatement>,
    /// Canonically oriented statements not obtained from another valid
    /// statement by decomposition and weak union.
    pub reduced: Vec<CiStatement>,
}

pub fn global_markov(dag: &DagModel, max_n: usize) -> Result<MarkovProperty> {
    let n = dag.n();
    if n > max_n {
        return Err(Error::guard("Markov enumeration vertex count", max_n, n));
    }
    let total = 1u64 << (2 * n);
    let full: Vec<CiStatement> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let (mut a, mut b, mut c) = (VertexSet::EMPTY, VertexSet::EMPTY, VertexSet::EMPTY);
            for v in 1..=n {
                match (code >> (2 * (v - 1))) & 3 {
                    1 => a.insert(v),
                    2 => b.insert(v),
                    3 => c.insert(v),
                    _ => {}
                }
            }
            if a.is_empty() || b.is_empty() {
                return None;
            }
            let stmt = CiStatement { a, b, c };
            d_separated(dag, &stmt).then_some(stmt)
        })
        .collect();

    let mut canon: Vec<CiStatement> = full.iter().map(CiStatement::canonical).collect();
    canon.sort();
    canon.dedup();
    // Larger A ∪ B first, so dominators precede what they dominate.
    canon.sort_by_key(|s| std::cmp::Reverse(s.a.union(s.b).len()));

    let dominates = |big: &CiStatement, small: &CiStatement| {
        let ab_small = small.a.union(small.b);
        let ab_big = big.a.union(big.b);
        ab_small.len() < ab_big.len()
            && big.c.is_subset(small.c)
            && small.c.is_subset(big.c.union(ab_big))
            && ((small.a.is_subset(big.a) && small.b.is_subset(big.b))
                || (small.a.is_subset(big.b) && small.b.is_subset(big.a)))
    };
    let mut reduced: Vec<CiStatement> = Vec::new();
    for (i, s) in canon.iter().enumerate() {
        let size = s.a.union(s.b).len();
        let dominated = canon[..i]
            .iter()
            .take_while(|t| t.a.union(t.b).len() > size)
            .any(|t| dominates(t, s));
        if !dominated {
            reduced.push(*s);
        }
    }
    reduced.sort_by_key(|s| (s.c.len(), s.a.to_vec(), s.b.to_vec(), s.c.to_vec()));
    Ok(MarkovProperty { full, reduced })
}
