//! JSON file formats. Expressions are strings in the parser grammar.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::contract::{ContractionMode, ContractionScheme};
use crate::error::{Error, Result};
use crate::freealg::{Algebra, Element, Generator};
use crate::morphisms::{BasisMap, CoactionSpec, CrossSign};
use crate::presentations::Presentation;
use crate::scalars::{ParameterSet, Parity, Scalar};
use crate::tensor::SMatrix;

use super::catalog::RMatrixEntry;
use super::parse::ParseContext;

fn default_params() -> ParameterSet {
    ParameterSet { even_free: vec!["q".into()], ..ParameterSet::default() }
}

fn default_q() -> String {
    "q".into()
}

fn context(params: &ParameterSet, gens: &[Generator], defs: &BTreeMap<String, String>) -> Result<ParseContext> {
    let alg = Algebra::new(gens.to_vec())?;
    let mut ctx = ParseContext::new(params.clone(), alg)?;
    let scalars = ParseContext::scalars(params.clone());
    for (n, src) in defs {
        ctx.define(n, scalars.parse_scalar(src)?)?;
    }
    Ok(ctx)
}

fn from_json<T: for<'de> Deserialize<'de>>(src: &str) -> Result<T> {
    serde_json::from_str(src).map_err(|e| Error::Input(format!("bad JSON: {e}")))
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RMatrixFile {
    pub dim: usize,
    pub entries: Vec<Vec<String>>,
    #[serde(default = "default_params")]
    pub parameters: ParameterSet,
    /// Parities of the basis of V; all even when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parities: Option<Vec<Parity>>,
    #[serde(default = "default_q")]
    pub q: String,
}

impl RMatrixFile {
    pub fn parse(src: &str) -> Result<Self> {
        from_json(src)
    }

    pub fn from_matrix(m: &SMatrix, params: &ParameterSet, parities: &[Parity]) -> Self {
        RMatrixFile {
            dim: m.rows(),
            entries: m.to_rows().iter().map(|r| r.iter().map(Scalar::to_string).collect()).collect(),
            parameters: params.clone(),
            parities: parities.iter().any(|p| p.is_odd()).then(|| parities.to_vec()),
            q: "q".into(),
        }
    }

    pub fn matrix(&self) -> Result<SMatrix> {
        if self.entries.len() != self.dim || self.entries.iter().any(|r| r.len() != self.dim) {
            return Err(Error::DimensionMismatch(format!("entries must be {0}x{0}", self.dim)));
        }
        let ctx = ParseContext::scalars(self.parameters.clone());
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|s| ctx.parse_scalar(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        SMatrix::from_rows(rows)
    }

    /// Matrix with default space generators `x1..xn`.
    pub fn to_entry(&self) -> Result<RMatrixEntry> {
        let matrix = self.matrix()?;
        let n = crate::tensor::TensorIndex::of_square(self.dim)?.n;
        let parities = self.parities.clone().unwrap_or_else(|| vec![Parity::Even; n]);
        if parities.len() != n {
            return Err(Error::DimensionMismatch(format!("{} parities for a space of dimension {n}", parities.len())));
        }
        let space_gens: Vec<Generator> =
            parities.iter().enumerate().map(|(i, p)| Generator::new(&format!("x{}", i + 1), *p)).collect();
        let space_precedence = space_gens.iter().rev().map(|g| g.name.clone()).collect();
        let q = ParseContext::scalars(self.parameters.clone()).parse_scalar(&self.q)?;
        Ok(RMatrixEntry {
            matrix,
            params: self.parameters.clone(),
            parities,
            q,
            space_gens,
            space_precedence,
            group: None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub name: String,
    #[serde(default)]
    pub parameters: ParameterSet,
    pub generators: Vec<Generator>,
    pub precedence: Vec<String>,
    /// Named scalars usable in relations, such as `h`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub definitions: BTreeMap<String, String>,
    pub relations: Vec<String>,
}

impl PresentationFile {
    pub fn parse(src: &str) -> Result<Self> {
        from_json(src)
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        PresentationFile {
            name: p.name.clone(),
            parameters: p.params.clone(),
            generators: p.generators().to_vec(),
            precedence: p.precedence_names(),
            definitions: BTreeMap::new(),
            relations: p.relations().iter().map(Element::to_string).collect(),
        }
    }

    pub fn to_presentation(&self) -> Result<Presentation> {
        self.parameters.validate()?;
        let ctx = context(&self.parameters, &self.generators, &self.definitions)?;
        let rels = self.relations.iter().map(|r| ctx.parse(r)).collect::<Result<Vec<_>>>()?;
        let prec: Vec<&str> = self.precedence.iter().map(String::as_str).collect();
        Presentation::new(&self.name, self.parameters.clone(), ctx.alg.clone(), &prec, rels)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisMapFile {
    #[serde(default = "basis_map_name")]
    pub name: String,
    /// New generators.
    pub generators: Vec<Generator>,
    pub precedence: Vec<String>,
    #[serde(default)]
    pub parameters: ParameterSet,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub definitions: BTreeMap<String, String>,
    pub images: BTreeMap<String, String>,
    #[serde(default, rename = "parameter_subst")]
    pub param_subst: BTreeMap<String, String>,
    #[serde(default)]
    pub projection: bool,
}

fn basis_map_name() -> String {
    "basis change".into()
}

impl BasisMapFile {
    pub fn parse(src: &str) -> Result<Self> {
        from_json(src)
    }

    pub fn from_map(m: &BasisMap) -> Self {
        BasisMapFile {
            name: m.name.clone(),
            generators: m.target.generators().to_vec(),
            precedence: m.target_precedence.clone(),
            parameters: m.params.clone(),
            definitions: BTreeMap::new(),
            images: m.images.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            param_subst: m.param_subst.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            projection: m.projection,
        }
    }

    pub fn to_map(&self) -> Result<BasisMap> {
        self.parameters.validate()?;
        let ctx = context(&self.parameters, &self.generators, &self.definitions)?;
        let images =
            self.images.iter().map(|(g, src)| Ok((g.clone(), ctx.parse(src)?))).collect::<Result<BTreeMap<_, _>>>()?;
        let param_subst = self
            .param_subst
            .iter()
            .map(|(p, src)| Ok((p.clone(), ctx.parse_scalar(src)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(BasisMap {
            name: self.name.clone(),
            target: ctx.alg.clone(),
            target_precedence: self.precedence.clone(),
            params: self.parameters.clone(),
            images,
            param_subst,
            projection: self.projection,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoactionFile {
    /// Catalog id or path of a presentation file.
    pub group: String,
    pub space: String,
    pub matrix: Vec<Vec<String>>,
    #[serde(default = "koszul")]
    pub cross_sign: CrossSign,
}

fn koszul() -> CrossSign {
    CrossSign::Koszul
}

impl CoactionFile {
    pub fn parse(src: &str) -> Result<Self> {
        from_json(src)
    }

    pub fn resolve(&self, load: impl Fn(&str) -> Result<Presentation>) -> Result<CoactionSpec> {
        let group = load(&self.group)?;
        let space = load(&self.space)?;
        let ctx = ParseContext::new(group.params.clone(), group.algebra().clone())?;
        let matrix = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|s| ctx.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(CoactionSpec {
            name: format!("{} on {}", group.name, space.name),
            group,
            space,
            matrix,
            cross: self.cross_sign,
            notes: vec![],
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeFile {
    #[serde(default = "default_eps")]
    pub eps: String,
    #[serde(default)]
    pub weights: BTreeMap<String, u32>,
    #[serde(default)]
    pub param_subst: BTreeMap<String, String>,
    /// Parameters introduced by the substitutions.
    #[serde(default)]
    pub parameters: ParameterSet,
    #[serde(default)]
    pub rename: BTreeMap<String, String>,
    #[serde(default = "leading_order")]
    pub mode: ContractionMode,
}

fn default_eps() -> String {
    "eps".into()
}

fn leading_order() -> ContractionMode {
    ContractionMode::LeadingOrder
}

impl SchemeFile {
    pub fn parse(src: &str) -> Result<Self> {
        from_json(src)
    }

    pub fn from_scheme(s: &ContractionScheme) -> Self {
        SchemeFile {
            eps: s.eps.clone(),
            weights: s.weights.clone(),
            param_subst: s.param_subst.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            parameters: s.new_params.clone(),
            rename: s.rename.clone(),
            mode: s.mode,
        }
    }

    pub fn to_scheme(&self) -> Result<ContractionScheme> {
        let params = self.parameters.with_even(&self.eps)?;
        let ctx = ParseContext::scalars(params);
        let mut s = ContractionScheme::new(&self.eps).with_params(self.parameters.clone()).with_mode(self.mode);
        for (g, w) in &self.weights {
            s = s.weight(g, *w);
        }
        for (p, src) in &self.param_subst {
            s = s.subst(p, ctx.parse_scalar(src)?);
        }
        for (a, b) in &self.rename {
            s = s.rename(a, b);
        }
        Ok(s)
    }
}
