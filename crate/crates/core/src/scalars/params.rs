use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    EvenFree,
    Nilpotent(u32),
    Odd,
}

/// Declared deformation parameters, split by kind.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterSet {
    #[serde(default, rename = "even")]
    pub even_free: Vec<String>,
    #[serde(default)]
    pub nilpotent: BTreeMap<String, u32>,
    #[serde(default)]
    pub odd: Vec<String>,
}

fn valid_name(n: &str) -> bool {
    let mut cs = n.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
        && n != "i"
}

impl ParameterSet {
    pub fn new(even_free: &[&str], nilpotent: &[(&str, u32)], odd: &[&str]) -> Result<Self> {
        let ps = ParameterSet {
            even_free: even_free.iter().map(|s| s.to_string()).collect(),
            nilpotent: nilpotent.iter().map(|(s, k)| (s.to_string(), *k)).collect(),
            odd: odd.iter().map(|s| s.to_string()).collect(),
        };
        ps.validate()?;
        Ok(ps)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        let all = self.even_free.iter().chain(self.nilpotent.keys()).chain(self.odd.iter());
        for n in all {
            if !valid_name(n) {
                return Err(Error::InvalidParameters(format!("`{n}` is not a valid parameter name")));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidParameters(format!("`{n}` declared twice")));
            }
        }
        if let Some((n, k)) = self.nilpotent.iter().find(|(_, k)| **k < 2) {
            return Err(Error::InvalidParameters(format!("truncation order of `{n}` is {k}, must be at least 2")));
        }
        Ok(())
    }

    pub fn kind(&self, name: &str) -> Option<ParamKind> {
        if self.even_free.iter().any(|n| n == name) {
            Some(ParamKind::EvenFree)
        } else if let Some(k) = self.nilpotent.get(name) {
            Some(ParamKind::Nilpotent(*k))
        } else if self.odd.iter().any(|n| n == name) {
            Some(ParamKind::Odd)
        } else {
            None
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.kind(name).is_some()
    }

    pub fn scalar(&self, name: &str) -> Option<Scalar> {
        Some(match self.kind(name)? {
            ParamKind::EvenFree => Scalar::param(name),
            ParamKind::Nilpotent(k) => Scalar::nilpotent(name, k),
            ParamKind::Odd => Scalar::odd(name),
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.even_free.iter().chain(self.nilpotent.keys()).chain(self.odd.iter()).map(String::as_str)
    }

    /// Union of two parameter sets; a name declared with different kinds is an error.
    pub fn merge(&self, other: &ParameterSet) -> Result<ParameterSet> {
        let mut out = self.clone();
        for n in other.names() {
            match (self.kind(n), other.kind(n)) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::InvalidParameters(format!("`{n}` declared with two kinds")))
                }
                (Some(_), _) => {}
                (None, Some(ParamKind::EvenFree)) => out.even_free.push(n.to_string()),
                (None, Some(ParamKind::Nilpotent(k))) => {
                    out.nilpotent.insert(n.to_string(), k);
                }
                (None, Some(ParamKind::Odd)) => out.odd.push(n.to_string()),
                (None, None) => unreachable!(),
            }
        }
        out.validate()?;
        Ok(out)
    }

    pub fn with_even(&self, name: &str) -> Result<ParameterSet> {
        self.merge(&ParameterSet { even_free: vec![name.to_string()], ..Default::default() })
    }

    pub fn with_nilpotent(&self, name: &str, order: u32) -> Result<ParameterSet> {
        let mut nilpotent = BTreeMap::new();
        nilpotent.insert(name.to_string(), order);
        self.merge(&ParameterSet { nilpotent, ..Default::default() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_reserved() {
        assert!(ParameterSet::new(&["q", "v"], &[("iota", 2)], &["h"]).is_ok());
        assert!(ParameterSet::new(&["q"], &[], &["q"]).is_err());
        assert!(ParameterSet::new(&["i"], &[], &[]).is_err());
        assert!(ParameterSet::new(&["2"], &[], &[]).is_err());
        assert!(ParameterSet::new(&[], &[("iota", 1)], &[]).is_err());
    }

    #[test]
    fn merge_conflict() {
        let a = ParameterSet::new(&["q"], &[], &[]).unwrap();
        let b = ParameterSet::new(&[], &[], &["q"]).unwrap();
        assert!(a.merge(&b).is_err());
        let c = ParameterSet::new(&["v"], &[], &["h"]).unwrap();
        let m = a.merge(&c).unwrap();
        assert_eq!(m.kind("h"), Some(ParamKind::Odd));
        assert_eq!(m.kind("v"), Some(ParamKind::EvenFree));
    }
}
