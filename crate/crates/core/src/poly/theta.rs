use std::collections::BTreeMap;
use std::fmt;

use super::{Poly, ThetaPoly};
use crate::dag::DagModel;
use crate::error::{Error, Result};

/// Edge label `θ(X_j = k | parent values)`, printed as `t<j>_<parent values>_<k>`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelId {
    pub var: u8,
    /// Values of the parents of `var`, in increasing parent id order.
    pub parents: Vec<u8>,
    pub value: u8,
}

impl LabelId {
    pub fn new(var: usize, parents: Vec<u8>, value: u8) -> Self {
        LabelId {
            var: var as u8,
            parents,
            value,
        }
    }

    /// Same stage, other value.
    pub fn sibling(&self, value: u8) -> Self {
        LabelId {
            var: self.var,
            parents: self.parents.clone(),
            value,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad label id {s:?}"));
        let body = s.strip_prefix('t').ok_or_else(bad)?;
        let mut parts = body.split('_');
        let (var, pa, val) = (parts.next(), parts.next(), parts.next());
        if parts.next().is_some() {
            return Err(bad());
        }
        let var: u8 = var.ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let parents = pa
            .ok_or_else(bad)?
            .chars()
            .map(|c| c.to_digit(10).filter(|d| *d >= 1).map(|d| d as u8).ok_or_else(bad))
            .collect::<Result<Vec<u8>>>()?;
        let value: u8 = val.ok_or_else(bad)?.parse().map_err(|_| bad())?;
        Ok(LabelId { var, parents, value })
    }
}

impl fmt::Display for LabelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}_", self.var)?;
        for p in &self.parents {
            write!(f, "{p}")?;
        }
        write!(f, "_{}", self.value)
    }
}

impl fmt::Debug for LabelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Variable of the parameter ring. Labels sort before `z`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThetaVar {
    Label(LabelId),
    Z,
}

impl fmt::Display for ThetaVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaVar::Label(l) => write!(f, "{l}"),
            ThetaVar::Z => write!(f, "z"),
        }
    }
}

impl fmt::Debug for ThetaVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl ThetaVar {
    pub fn parse(s: &str) -> Result<Self> {
        if s == "z" {
            Ok(ThetaVar::Z)
        } else {
            LabelId::parse(s).map(ThetaVar::Label)
        }
    }
}

/// Stages of a network's staged tree and the representative used for
/// the quotient by `Σ θ - z`: the last label of each stage is replaced by
/// `z` minus the others.
#[derive(Debug, Clone)]
pub struct QuotientContext {
    stages: Vec<Vec<LabelId>>,
    /// label -> (stage index, position)
    index: BTreeMap<LabelId, (usize, usize)>,
}

impl QuotientContext {
    pub fn from_stages(stages: Vec<Vec<LabelId>>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (s, labels) in stages.iter().enumerate() {
            if labels.len() < 2 {
                return Err(Error::Precondition(format!("stage {s} has fewer than two labels")));
            }
            for (i, l) in labels.iter().enumerate() {
                if index.insert(l.clone(), (s, i)).is_some() {
                    return Err(Error::Precondition(format!("label {l} appears in two stages")));
                }
            }
        }
        Ok(QuotientContext { stages, index })
    }

    /// One stage per (vertex, parent configuration), labels by value.
    pub fn for_dag(dag: &DagModel) -> Self {
        let mut stages = Vec::new();
        for j in 1..=dag.n() {
            for pa in parent_configurations(dag, j) {
                stages.push(
                    (1..=dag.levels(j))
                        .map(|k| LabelId::new(j, pa.clone(), k))
                        .collect(),
                );
            }
        }
        Self::from_stages(stages).expect("network stages are well formed")
    }

    pub fn stages(&self) -> &[Vec<LabelId>] {
        &self.stages
    }

    pub fn contains(&self, l: &LabelId) -> bool {
        self.index.contains_key(l)
    }

    pub fn is_eliminated(&self, l: &LabelId) -> bool {
        matches!(self.index.get(l), Some(&(s, i)) if i + 1 == self.stages[s].len())
    }

    /// Labels that survive in normal forms, plus `z` last.
    pub fn free_variables(&self) -> Vec<ThetaVar> {
        let mut vs: Vec<ThetaVar> = self
            .stages
            .iter()
            .flat_map(|s| s[..s.len() - 1].iter().cloned().map(ThetaVar::Label))
            .collect();
        vs.sort();
        vs.push(ThetaVar::Z);
        vs
    }

    /// Normal form of a single label.
    pub fn reduce_label(&self, l: &LabelId) -> Result<ThetaPoly> {
        let &(s, i) = self
            .index
            .get(l)
            .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
        let stage = &self.stages[s];
        if i + 1 < stage.len() {
            return Ok(Poly::var(ThetaVar::Label(l.clone())));
        }
        let mut p = Poly::var(ThetaVar::Z);
        for other in &stage[..i] {
            p = &p - &Poly::var(ThetaVar::Label(other.clone()));
        }
        Ok(p)
    }

    pub fn reduce_var(&self, v: &ThetaVar) -> Result<ThetaPoly> {
        match v {
            ThetaVar::Z => Ok(Poly::var(ThetaVar::Z)),
            ThetaVar::Label(l) => self.reduce_label(l),
        }
    }

    /// Representative of `p` modulo the stage-sum relations in which no
    /// eliminated label occurs.
    pub fn normal_form(&self, p: &ThetaPoly) -> Result<ThetaPoly> {
        for v in p.variables() {
            if let ThetaVar::Label(l) = &v {
                if !self.contains(l) {
                    return Err(Error::UnknownLabel(l.to_string()));
                }
            }
        }
        Ok(p.substitute_all(|v| self.reduce_var(v).expect("labels checked")))
    }
}

/// All value vectors of `Pa(j)`, lexicographically.
pub(crate) fn parent_configurations(dag: &DagModel, j: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for p in dag.parents(j).iter() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=dag.levels(p)).map(move |v| {
                    let mut q = prefix.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}
