use std::fmt;

use super::{Poly, XPoly};
use crate::error::{Error, Result};

/// One coordinate of an outcome index: a value `1..=κ` or the marginal `+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    Val(u8),
    Plus,
}

impl Entry {
    pub fn value(self) -> Option<u8> {
        match self {
            Entry::Val(v) => Some(v),
            Entry::Plus => None,
        }
    }
}

/// Index of an x-variable, e.g. `x_11+1`. Basic when it has no `+`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlusIndex(Vec<Entry>);

impl PlusIndex {
    pub fn new(entries: Vec<Entry>) -> Self {
        PlusIndex(entries)
    }

    pub fn basic(values: &[u8]) -> Self {
        PlusIndex(values.iter().map(|&v| Entry::Val(v)).collect())
    }

    pub fn entries(&self) -> &[Entry] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry of vertex `v` (1-based).
    pub fn get(&self, v: usize) -> Entry {
        self.0[v - 1]
    }

    pub fn set(&mut self, v: usize, e: Entry) {
        self.0[v - 1] = e;
    }

    pub fn with(&self, v: usize, e: Entry) -> Self {
        let mut out = self.clone();
        out.set(v, e);
        out
    }

    pub fn is_basic(&self) -> bool {
        self.0.iter().all(|e| *e != Entry::Plus)
    }

    /// Values of a basic index.
    pub fn values(&self) -> Option<Vec<u8>> {
        self.0.iter().map(|e| e.value()).collect()
    }

    /// Drop the last coordinate.
    pub fn truncated(&self) -> Self {
        PlusIndex(self.0[..self.0.len() - 1].to_vec())
    }

    pub fn pushed(&self, e: Entry) -> Self {
        let mut v = self.0.clone();
        v.push(e);
        PlusIndex(v)
    }

    pub fn check(&self, levels: &[u8]) -> Result<()> {
        if self.0.len() != levels.len() {
            return Err(Error::InvalidIndex(format!(
                "{self} has {} entries, expected {}",
                self.0.len(),
                levels.len()
            )));
        }
        for (e, &k) in self.0.iter().zip(levels) {
            if let Entry::Val(v) = e {
                if *v < 1 || *v > k {
                    return Err(Error::InvalidIndex(format!("{self}: value {v} outside 1..={k}")));
                }
            }
        }
        Ok(())
    }

    /// Basic indices agreeing with `self` on every non-`+` entry, ascending.
    pub fn completions(&self, levels: &[u8]) -> Vec<PlusIndex> {
        let mut out = vec![Vec::with_capacity(self.0.len())];
        for (e, &k) in self.0.iter().zip(levels) {
            out = match e {
                Entry::Val(v) => out
                    .into_iter()
                    .map(|mut p| {
                        p.push(Entry::Val(*v));
                        p
                    })
                    .collect(),
                Entry::Plus => out
                    .into_iter()
                    .flat_map(|p| {
                        (1..=k).map(move |v| {
                            let mut q = p.clone();
                            q.push(Entry::Val(v));
                            q
                        })
                    })
                    .collect(),
            };
        }
        out.into_iter().map(PlusIndex).collect()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let body = s
            .strip_prefix("x_")
            .ok_or_else(|| Error::Parse(format!("x-variable must start with x_: {s:?}")))?;
        let entries = body
            .chars()
            .map(|c| match c {
                '+' => Ok(Entry::Plus),
                '1'..='9' => Ok(Entry::Val(c as u8 - b'0')),
                _ => Err(Error::Parse(format!("bad index character {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty() {
            return Err(Error::Parse(format!("empty index in {s:?}")));
        }
        Ok(PlusIndex(entries))
    }
}

impl fmt::Display for PlusIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_")?;
        for e in &self.0 {
            match e {
                Entry::Val(v) => write!(f, "{v}")?,
                Entry::Plus => write!(f, "+")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PlusIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `x_{u}` as the sum of the basic variables it marginalizes.
pub fn expand_plus(levels: &[u8], u: &PlusIndex) -> Result<XPoly> {
    u.check(levels)?;
    let mut p = Poly::zero();
    for v in u.completions(levels) {
        p = &p + &Poly::var(v);
    }
    Ok(p)
}

/// Replace every `+` variable of `f` by its expansion.
pub fn to_standard(levels: &[u8], f: &XPoly) -> Result<XPoly> {
    for v in f.variables() {
        v.check(levels)?;
    }
    Ok(f.substitute_all(|v| {
        if v.is_basic() {
            Poly::var(v.clone())
        } else {
            expand_plus(levels, v).expect("checked above")
        }
    }))
}
