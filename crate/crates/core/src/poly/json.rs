use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, Monomial, PlusIndex, Poly, ThetaVar};
use crate::error::{Error, Result};

/// Variables with a textual name and a ring tag for the JSON form.
pub trait VarName: Sized + Ord + Clone {
    const RING: &'static str;
    fn name(&self) -> String;
    fn from_name(s: &str) -> Result<Self>;
}

impl VarName for PlusIndex {
    const RING: &'static str = "x";
    fn name(&self) -> String {
        self.to_string()
    }
    fn from_name(s: &str) -> Result<Self> {
        PlusIndex::parse(s)
    }
}

impl VarName for ThetaVar {
    const RING: &'static str = "theta";
    fn name(&self) -> String {
        self.to_string()
    }
    fn from_name(s: &str) -> Result<Self> {
        ThetaVar::parse(s)
    }
}

/// `{"ring":"x"|"theta","terms":[{"coeff":"p/q","mono":{"<var>":e}}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub ring: String,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub mono: BTreeMap<String, u32>,
}

impl<V: VarName> Poly<V> {
    /// Terms leading first.
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            ring: V::RING.to_string(),
            terms: self
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    coeff: format_rational(c),
                    mono: m.factors().iter().map(|(v, e)| (v.name(), *e)).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        if j.ring != V::RING {
            return Err(Error::Parse(format!(
                "ring mismatch: expected {:?}, found {:?}",
                V::RING,
                j.ring
            )));
        }
        let mut p = Poly::zero();
        for t in &j.terms {
            let c = parse_rational(&t.coeff)
                .ok_or_else(|| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            let m = Monomial::from_pairs(
                t.mono
                    .iter()
                    .map(|(name, e)| V::from_name(name).map(|v| (v, *e)))
                    .collect::<Result<Vec<_>>>()?,
            );
            p.add_term(m, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, XPoly};

    #[test]
    fn x_poly_round_trip() {
        let a = XPoly::var(PlusIndex::parse("x_11++").unwrap());
        let b = XPoly::var(PlusIndex::parse("x_2112").unwrap());
        let p = &(&a * &b).scale(&rat(3)) - &b.pow(2);
        let j = p.to_json();
        assert_eq!(j.ring, "x");
        let text = serde_json::to_string(&j).unwrap();
        let back: PolyJson = serde_json::from_str(&text).unwrap();
        assert_eq!(XPoly::from_json(&back).unwrap(), p);
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let p = XPoly::var(PlusIndex::parse("x_1").unwrap()).to_json();
        assert!(Poly::<ThetaVar>::from_json(&p).is_err());
    }

    #[test]
    fn theta_names() {
        let j = PolyJson {
            ring: "theta".into(),
            terms: vec![TermJson {
                coeff: "-1/2".into(),
                mono: [("t4_12_1".to_string(), 1), ("z".to_string(), 2)].into_iter().collect(),
            }],
        };
        let p = Poly::<ThetaVar>::from_json(&j).unwrap();
        assert_eq!(p.to_string(), "-1/2*t4_12_1*z^2");
        assert_eq!(p.to_json(), j);
    }
}
