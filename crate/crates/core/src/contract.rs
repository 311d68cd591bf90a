//! Contractions by generator rescaling and parameter limits.
//!
//! A relation `r(ε)` contributes its leading ε-order. Before limits are
//! taken the relation set is saturated: whenever two leading parts share a
//! leading word, a combination with a higher ε-order replaces one of them, so
//! that the limits that survive are linearly independent.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freealg::{Algebra, Element, Generator};
use crate::presentations::{hilbert_dims, rewriting_to_degree, DeglexOrder, Presentation};
use crate::report::CheckReport;
use crate::scalars::{ParamKind, ParameterSet, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContractionMode {
    LeadingOrder,
    /// ε is replaced by a truncated nilpotent and the lowest surviving
    /// power is read off.
    Nilpotent,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContractionScheme {
    pub eps: String,
    pub weights: BTreeMap<String, u32>,
    pub param_subst: BTreeMap<String, Scalar>,
    /// Parameters introduced by the substitution, such as `v`.
    pub new_params: ParameterSet,
    pub rename: BTreeMap<String, String>,
    pub mode: ContractionMode,
}

impl ContractionScheme {
    pub fn new(eps: &str) -> Self {
        ContractionScheme {
            eps: eps.to_string(),
            weights: BTreeMap::new(),
            param_subst: BTreeMap::new(),
            new_params: ParameterSet::default(),
            rename: BTreeMap::new(),
            mode: ContractionMode::LeadingOrder,
        }
    }

    pub fn weight(mut self, g: &str, w: u32) -> Self {
        self.weights.insert(g.to_string(), w);
        self
    }

    pub fn subst(mut self, p: &str, value: Scalar) -> Self {
        self.param_subst.insert(p.to_string(), value);
        self
    }

    pub fn rename(mut self, from: &str, to: &str) -> Self {
        self.rename.insert(from.to_string(), to.to_string());
        self
    }

    pub fn with_mode(mut self, mode: ContractionMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_params(mut self, params: ParameterSet) -> Self {
        self.new_params = params;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractedRelation {
    pub source: String,
    pub valuation: i64,
    pub contracted: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    pub relations: Vec<ContractedRelation>,
    /// Combinations formed to separate coinciding leading parts.
    pub saturation_steps: usize,
    pub before_dims: Option<Vec<usize>>,
    pub after_dims: Option<Vec<usize>>,
    pub notes: Vec<String>,
}

/// ε-adic bookkeeping for one parameter, either free or truncated.
trait Adic {
    fn valuation(&self, e: &Element) -> Result<Option<i64>>;
    /// Leading part of an element of valuation `m`.
    fn leading(&self, e: &Element, m: i64) -> Result<Element>;
    /// `e * ε^k` with `k` possibly negative for the free case.
    fn shift(&self, e: &Element, k: i64) -> Result<Element>;
}

struct FreeParam<'a>(&'a str);

impl Adic for FreeParam<'_> {
    fn valuation(&self, e: &Element) -> Result<Option<i64>> {
        let mut best: Option<i64> = None;
        for (_, c) in e.terms() {
            if let Some(v) = c.valuation(self.0)? {
                best = Some(best.map_or(v, |b| b.min(v)));
            }
        }
        Ok(best)
    }

    fn leading(&self, e: &Element, m: i64) -> Result<Element> {
        self.shift(e, -m)?.map_coefficients(|c| c.limit_at_zero(self.0))
    }

    fn shift(&self, e: &Element, k: i64) -> Result<Element> {
        e.map_coefficients(|c| Ok(c.mul_param_pow(self.0, k)))
    }
}

struct NilParam<'a> {
    name: &'a str,
    order: u32,
}

impl Adic for NilParam<'_> {
    fn valuation(&self, e: &Element) -> Result<Option<i64>> {
        Ok(e.terms().filter_map(|(_, c)| c.nil_valuation(self.name)).min().map(i64::from))
    }

    fn leading(&self, e: &Element, m: i64) -> Result<Element> {
        e.map_coefficients(|c| Ok(c.nil_coefficient(self.name, m as u32)))
    }

    fn shift(&self, e: &Element, k: i64) -> Result<Element> {
        if k < 0 {
            return Err(Error::NegativeValuation(format!("cannot divide by {}", self.name)));
        }
        e.scale_right_free(&Scalar::nilpotent(self.name, self.order).pow(k as u32))
    }
}

trait ScaleExt {
    fn scale_right_free(&self, s: &Scalar) -> Result<Element>;
}

impl ScaleExt for Element {
    /// Multiply every coefficient by an even scalar.
    fn scale_right_free(&self, s: &Scalar) -> Result<Element> {
        self.map_coefficients(|c| Ok(c.mul(s)))
    }
}

/// Interreduce leading parts and return the surviving limits.
fn saturate<A: Adic>(adic: &A, rels: &[Element], order: &DeglexOrder) -> Result<(Vec<Element>, usize)> {
    // (element, valuation, leading part)
    let mut basis: Vec<(Element, i64, Element)> = Vec::new();
    let mut steps = 0usize;
    let mut queue: Vec<Element> = rels.iter().rev().cloned().collect();
    while let Some(mut r) = queue.pop() {
        while let Some(m) = adic.valuation(&r)? {
            let lead = adic.leading(&r, m)?;
            let Some((w, a_r)) = order.leading(&lead) else { break };
            let Some(pos) = basis.iter().position(|(_, _, l)| order.leading(l).is_some_and(|(bw, _)| bw == w)) else {
                basis.push((r, m, lead));
                break;
            };
            steps += 1;
            if steps > 10_000 {
                return Err(Error::Input("saturation did not terminate".into()));
            }
            let (b, mb, bl) = basis[pos].clone();
            let a_b = bl.coefficient(&w);
            if let Ok(inv) = a_b.inv() {
                let (rr, bb) = align(adic, &r, m, &b, mb)?;
                r = rr.sub(&bb.scale(&a_r.mul(&inv)));
            } else if let Ok(inv) = a_r.inv() {
                let (rr, bb) = align(adic, &r, m, &b, mb)?;
                basis.remove(pos);
                queue.push(bb.sub(&rr.scale(&a_b.mul(&inv))));
                basis.push((r, m, lead));
                break;
            } else {
                basis.push((r, m, lead));
                break;
            }
        }
    }
    Ok((basis.into_iter().map(|(_, _, l)| l).collect(), steps))
}

/// Shift the lower-order element up so both have the same valuation.
fn align<A: Adic>(adic: &A, r: &Element, mr: i64, b: &Element, mb: i64) -> Result<(Element, Element)> {
    if mr >= mb {
        Ok((r.clone(), adic.shift(b, mr - mb)?))
    } else {
        Ok((adic.shift(r, mb - mr)?, b.clone()))
    }
}

fn renamed_algebra(p: &Presentation, rename: &BTreeMap<String, String>) -> Result<std::sync::Arc<Algebra>> {
    let gens: Vec<Generator> =
        p.generators().iter().map(|g| Generator::new(rename.get(&g.name).unwrap_or(&g.name), g.parity)).collect();
    Algebra::new(gens)
}

type PerRelation = Vec<(Option<i64>, Element)>;

/// Saturated limits plus the individual leading part of every relation.
fn leading_parts<A: Adic>(
    adic: &A,
    rels: &[Element],
    order: &DeglexOrder,
) -> Result<(Vec<Element>, usize, PerRelation)> {
    let mut per = Vec::new();
    for r in rels {
        match adic.valuation(r)? {
            Some(m) => per.push((Some(m), adic.leading(r, m)?)),
            None => per.push((None, Element::zero(r.algebra()))),
        }
    }
    let (limits, steps) = saturate(adic, rels, order)?;
    Ok((limits, steps, per))
}

pub fn contract(p: &Presentation, s: &ContractionScheme) -> Result<(Presentation, ContractionReport)> {
    if p.params.contains(&s.eps) || p.generators().iter().any(|g| g.name == s.eps) {
        return Err(Error::InvalidParameters(format!("`{}` is already used by {}", s.eps, p.name)));
    }
    for g in s.weights.keys() {
        if p.algebra().index(g).is_none() {
            return Err(Error::UnknownGenerator(g.clone()));
        }
    }
    let alg = renamed_algebra(p, &s.rename)?;
    let max_w: u32 = s.weights.values().copied().max().unwrap_or(0);
    let max_deg = p.relations().iter().filter_map(Element::degree).max().unwrap_or(0) as u32;
    let nil_order = max_w * max_deg + 4;
    let eps = match s.mode {
        ContractionMode::LeadingOrder => Scalar::param(&s.eps),
        ContractionMode::Nilpotent => Scalar::nilpotent(&s.eps, nil_order),
    };
    let images: Vec<Element> = p
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| Element::gen(&alg, i).scale(&eps.pow(*s.weights.get(&g.name).unwrap_or(&0))))
        .collect();
    let mut subst = BTreeMap::new();
    for (k, v) in &s.param_subst {
        let mut m = BTreeMap::new();
        m.insert(s.eps.clone(), eps.clone());
        subst.insert(k.clone(), v.substitute(&m)?);
    }
    let rels = p
        .relations()
        .iter()
        .map(|r| r.substitute_generators(&images, &alg, Some(&subst)))
        .collect::<Result<Vec<_>>>()?;
    let order = p.order();
    let (limits, steps, per_rel) = match s.mode {
        ContractionMode::LeadingOrder => leading_parts(&FreeParam(&s.eps), &rels, &order)?,
        ContractionMode::Nilpotent => leading_parts(&NilParam { name: &s.eps, order: nil_order }, &rels, &order)?,
    };
    let mut params = p.params.clone();
    params.even_free.retain(|n| !s.param_subst.contains_key(n));
    params.nilpotent.retain(|n, _| !s.param_subst.contains_key(n));
    params.odd.retain(|n| !s.param_subst.contains_key(n));
    let params = params.merge(&s.new_params)?;
    let prec: Vec<String> = p.precedence_names().into_iter().map(|n| s.rename.get(&n).cloned().unwrap_or(n)).collect();
    let prec_ref: Vec<&str> = prec.iter().map(String::as_str).collect();
    let name = format!("{} contracted", p.name);
    let out = Presentation::new(&name, params, alg, &prec_ref, limits)?;
    let mut report = ContractionReport {
        relations: p
            .relations()
            .iter()
            .zip(per_rel)
            .map(|(r, (v, l))| ContractedRelation {
                source: r.to_string(),
                valuation: v.unwrap_or(i64::MAX),
                contracted: l.to_string(),
            })
            .collect(),
        saturation_steps: steps,
        before_dims: None,
        after_dims: None,
        notes: vec!["only the leading order of each relation is kept".into()],
    };
    if out.relations().is_empty() {
        report.notes.push("all relations vanish in the limit".into());
    }
    Ok((out, report))
}

/// Set an even free parameter to zero in every relation.
pub fn parameter_limit(p: &Presentation, param: &str) -> Result<Presentation> {
    match p.params.kind(param) {
        Some(ParamKind::EvenFree) | None => {}
        Some(_) => return Err(Error::IndeterminateValuation(format!("`{param}` is not an even free parameter"))),
    }
    let adic = FreeParam(param);
    for r in p.relations() {
        if let Some(v) = adic.valuation(r)? {
            if v < 0 {
                return Err(Error::NegativeValuation(format!("`{r}` has a pole of order {} at {param}=0", -v)));
            }
        }
    }
    let (limits, _) = saturate(&adic, p.relations(), &p.order())?;
    let mut params = p.params.clone();
    params.even_free.retain(|n| n != param);
    p.with_relations(&format!("{} at {param}=0", p.name), limits).map(|mut out| {
        out.params = params;
        out
    })
}

pub fn flatness_check(before: &Presentation, after: &Presentation, d_max: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new("flatness", &[&before.name, &after.name]);
    let a = hilbert_dims(&rewriting_to_degree(before, d_max)?, d_max);
    let b = hilbert_dims(&rewriting_to_degree(after, d_max)?, d_max);
    if a.dims != b.dims {
        rep.fail(format!("dimensions {:?} before, {:?} after", a.dims, b.dims));
    } else {
        rep.note(format!("dimensions {:?}", a.dims));
    }
    Ok(rep)
}
