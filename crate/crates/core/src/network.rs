//! A validated network bundled with its staged tree, quotient context and
//! size guards; the entry point for the algebraic operations.

use std::collections::HashMap;

use crate::dag::DagModel;
use crate::error::{Error, Result};
use crate::poly::{Entry, PlusIndex, Poly, QuotientContext, ThetaPoly, XPoly};
use crate::staged_tree::{build_staged_tree, StagedTree};

/// Size guards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Bound on exhaustive statement and trail enumeration.
    pub max_n: usize,
    /// Bound on induced-cycle subset enumeration.
    pub max_cycle_n: usize,
    /// Bound on the number of monomials in a graded component.
    pub max_monomials: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_n: 10,
            max_cycle_n: 12,
            max_monomials: 100_000,
        }
    }
}

/// Coordinates of the x-ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Basic variables `x_u`, one per outcome.
    Standard,
    /// `x_u` with `u_i` replaced by `+` at every sink `i` where `u_i = κ_i`.
    Plus,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Standard => "standard",
            Basis::Plus => "plus",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Network {
    dag: DagModel,
    tree: StagedTree,
    ctx: QuotientContext,
    config: Config,
    outcomes: Vec<PlusIndex>,
}

impl Network {
    pub fn new(dag: DagModel) -> Self {
        Self::with_config(dag, Config::default())
    }

    pub fn with_config(dag: DagModel, config: Config) -> Self {
        let tree = build_staged_tree(&dag);
        let ctx = QuotientContext::for_dag(&dag);
        let all = PlusIndex::new(vec![Entry::Plus; dag.n()]);
        let outcomes = all.completions(dag.all_levels());
        Network {
            dag,
            tree,
            ctx,
            config,
            outcomes,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(Self::new(DagModel::from_json(text)?))
    }

    pub fn dag(&self) -> &DagModel {
        &self.dag
    }

    pub fn tree(&self) -> &StagedTree {
        &self.tree
    }

    pub fn quotient(&self) -> &QuotientContext {
        &self.ctx
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn set_config(&mut self, config: Config) {
        self.config = config;
    }

    pub fn levels(&self) -> &[u8] {
        self.dag.all_levels()
    }

    /// Basic indices in lexicographic order.
    pub fn outcomes(&self) -> &[PlusIndex] {
        &self.outcomes
    }

    /// Plus-basis element of the outcome `u`.
    pub fn plus_index(&self, u: &PlusIndex) -> PlusIndex {
        let mut out = u.clone();
        for s in self.dag.sinks().iter() {
            if u.get(s) == Entry::Val(self.dag.levels(s)) {
                out.set(s, Entry::Plus);
            }
        }
        out
    }

    /// Variables of the chosen coordinates, ascending.
    pub fn variables(&self, basis: Basis) -> Vec<PlusIndex> {
        match basis {
            Basis::Standard => self.outcomes.clone(),
            Basis::Plus => self.outcomes.iter().map(|u| self.plus_index(u)).collect(),
        }
    }

    pub fn check_index(&self, u: &PlusIndex) -> Result<()> {
        u.check(self.levels())
    }

    /// Normal form of the image of a basic variable.
    fn basic_image(&self, u: &PlusIndex) -> ThetaPoly {
        let values = u.values().expect("basic index");
        let m = self
            .tree
            .leaf_monomial(&values)
            .expect("outcome is a leaf");
        self.ctx
            .normal_form(&Poly::monomial(m))
            .expect("tree labels belong to the quotient context")
    }

    /// `φ̄(x_u)`; `+` entries are summed out.
    pub fn image(&self, u: &PlusIndex) -> Result<ThetaPoly> {
        self.check_index(u)?;
        let mut p = Poly::zero();
        for v in u.completions(self.levels()) {
            p = &p + &self.basic_image(&v);
        }
        Ok(p)
    }

    /// Image of `f` under the parametrization, in normal form.
    pub fn phi_bar(&self, f: &XPoly) -> Result<ThetaPoly> {
        for v in f.variables() {
            self.check_index(&v)?;
        }
        let mut cache: HashMap<PlusIndex, ThetaPoly> = HashMap::new();
        Ok(f.substitute_all(|v| {
            cache
                .entry(v.clone())
                .or_insert_with(|| self.image(v).expect("checked"))
                .clone()
        }))
    }

    pub fn in_kernel(&self, f: &XPoly) -> Result<bool> {
        Ok(self.phi_bar(f)?.is_zero())
    }

    /// Rewrite `f` in basic variables.
    pub fn to_standard(&self, f: &XPoly) -> Result<XPoly> {
        crate::poly::to_standard(self.levels(), f)
    }

    /// Rewrite `f` in plus-basis variables. A basic variable with value `κ_s`
    /// at a sink `s` becomes `x_{..+..} - Σ_{k<κ_s} x_{..k..}`.
    pub fn to_plus(&self, f: &XPoly) -> Result<XPoly> {
        let std = self.to_standard(f)?;
        let sinks = self.dag.sinks().to_vec();
        Ok(std.substitute_all(|u| {
            let mut p = Poly::var(u.clone());
            for &s in &sinks {
                let k = self.dag.levels(s);
                if u.get(s) != Entry::Val(k) {
                    continue;
                }
                p = p.substitute_all(|w| {
                    let mut q = Poly::var(w.with(s, Entry::Plus));
                    for j in 1..k {
                        q = &q - &Poly::var(w.with(s, Entry::Val(j)));
                    }
                    q
                });
            }
            p
        }))
    }

    pub(crate) fn guard_monomials(&self, actual: usize) -> Result<()> {
        if actual > self.config.max_monomials {
            return Err(Error::guard("degree component monomials", self.config.max_monomials, actual));
        }
        Ok(())
    }
}
