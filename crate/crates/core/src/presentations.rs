//! Finitely presented graded algebras and their rewriting systems.
//!
//! Relations are oriented by a degree-lexicographic order whose letter
//! precedence is chosen per presentation. Orientation interreduces the
//! relation set, so a relation whose leading coefficient is not a unit can
//! still be oriented once another relation has removed its leading word.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::freealg::{same_algebra, Algebra, Element, Generator, Word};
use crate::report::CheckReport;
use crate::scalars::{ParameterSet, Parity, Scalar};

/// Degree-lexicographic order: longer words are larger, ties broken letter
/// by letter using generator precedence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeglexOrder {
    rank: Vec<u32>,
}

impl DeglexOrder {
    /// `precedence` lists generator indices from highest to lowest.
    pub fn new(precedence: &[u32]) -> Self {
        let n = precedence.len();
        let mut rank = vec![0; n];
        for (pos, &g) in precedence.iter().enumerate() {
            rank[g as usize] = (n - 1 - pos) as u32;
        }
        DeglexOrder { rank }
    }

    pub fn key(&self, w: &Word) -> (usize, Vec<u32>) {
        (w.len(), w.0.iter().map(|&g| self.rank[g as usize]).collect())
    }

    pub fn cmp(&self, a: &Word, b: &Word) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| self.rank[*x as usize].cmp(&self.rank[*y as usize]))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal)
        })
    }

    pub fn leading(&self, e: &Element) -> Option<(Word, Scalar)> {
        e.terms().max_by(|a, b| self.cmp(a.0, b.0)).map(|(w, c)| (w.clone(), c.clone()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub name: String,
    pub params: ParameterSet,
    alg: Arc<Algebra>,
    precedence: Vec<u32>,
    relations: Vec<Element>,
}

impl Presentation {
    pub fn new(
        name: &str,
        params: ParameterSet,
        alg: Arc<Algebra>,
        precedence: &[&str],
        relations: Vec<Element>,
    ) -> Result<Self> {
        let mut prec = Vec::with_capacity(alg.len());
        for n in precedence {
            let i = alg.index(n).ok_or_else(|| Error::UnknownGenerator(n.to_string()))? as u32;
            if prec.contains(&i) {
                return Err(Error::Input(format!("`{n}` repeated in precedence")));
            }
            prec.push(i);
        }
        if prec.len() != alg.len() {
            return Err(Error::Input("precedence must list every generator".into()));
        }
        let mut p = Presentation { name: name.to_string(), params, alg, precedence: prec, relations: vec![] };
        for r in relations {
            p.push_relation(r)?;
        }
        Ok(p)
    }

    /// Precedence defaulting to the reverse of declaration order.
    pub fn with_default_precedence(
        name: &str,
        params: ParameterSet,
        alg: Arc<Algebra>,
        relations: Vec<Element>,
    ) -> Result<Self> {
        let names: Vec<String> = alg.names().iter().rev().map(|s| s.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Presentation::new(name, params, alg.clone(), &refs, relations)
    }

    fn push_relation(&mut self, r: Element) -> Result<bool> {
        if !same_algebra(r.algebra(), &self.alg) {
            return Err(Error::AlgebraMismatch);
        }
        if r.is_zero() || self.relations.iter().any(|s| proportional(s, &r)) {
            return Ok(false);
        }
        self.relations.push(r.rehome(&self.alg)?);
        Ok(true)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn generators(&self) -> &[Generator] {
        self.alg.generators()
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn precedence(&self) -> &[u32] {
        &self.precedence
    }

    pub fn precedence_names(&self) -> Vec<String> {
        self.precedence.iter().map(|&g| self.alg.name(g).to_string()).collect()
    }

    pub fn order(&self) -> DeglexOrder {
        DeglexOrder::new(&self.precedence)
    }

    pub fn gen(&self, name: &str) -> Result<Element> {
        Element::gen_named(&self.alg, name)
    }

    pub fn renamed(&self, name: &str) -> Presentation {
        Presentation { name: name.to_string(), ..self.clone() }
    }

    pub fn with_precedence(&self, precedence: &[&str]) -> Result<Presentation> {
        Presentation::new(&self.name, self.params.clone(), self.alg.clone(), precedence, self.relations.clone())
    }

    pub fn with_relations(&self, name: &str, relations: Vec<Element>) -> Result<Presentation> {
        let prec = self.precedence_names();
        let refs: Vec<&str> = prec.iter().map(String::as_str).collect();
        Presentation::new(name, self.params.clone(), self.alg.clone(), &refs, relations)
    }

    /// Interreduced presentation: one relation `lhs - rhs` per oriented rule.
    pub fn reduced(&self) -> Result<Presentation> {
        let rs = orient_relations(self)?;
        self.with_relations(&self.name, rs.rules.iter().map(Rule::as_relation).collect())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .alg
            .generators()
            .iter()
            .map(|g| if g.parity.is_odd() { format!("{}(odd)", g.name) } else { g.name.clone() })
            .collect();
        writeln!(f, "{} <{}>", self.name, gens.join(", "))?;
        for r in &self.relations {
            writeln!(f, "    {r} = 0")?;
        }
        Ok(())
    }
}

/// `true` when `b = c * a` for a unit scalar `c`.
fn proportional(a: &Element, b: &Element) -> bool {
    if a.num_terms() != b.num_terms() {
        return false;
    }
    let Some((w, ca)) = a.terms().next() else { return b.is_zero() };
    let cb = b.coefficient(w);
    let Ok(inv) = ca.inv() else { return a == b };
    let c = cb.mul(&inv);
    c.is_unit() && a.scale(&c) == *b
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Element,
}

impl Rule {
    pub fn as_relation(&self) -> Element {
        Element::word(self.rhs.algebra(), self.lhs.clone()).sub(&self.rhs)
    }
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    pub source: String,
    alg: Arc<Algebra>,
    order: DeglexOrder,
    rules: Vec<Rule>,
    by_first: HashMap<u32, Vec<usize>>,
    /// Rules added by bounded completion, if any was run.
    pub completion: Option<(usize, usize)>,
}

impl RewriteSystem {
    pub fn from_rules(source: &str, alg: &Arc<Algebra>, order: DeglexOrder, rules: Vec<Rule>) -> Self {
        let mut rs = RewriteSystem {
            source: source.to_string(),
            alg: alg.clone(),
            order,
            rules,
            by_first: HashMap::new(),
            completion: None,
        };
        rs.reindex();
        rs
    }

    fn reindex(&mut self) {
        self.by_first.clear();
        for (i, r) in self.rules.iter().enumerate() {
            let first = r.lhs.0.first().copied().unwrap_or(u32::MAX);
            self.by_first.entry(first).or_default().push(i);
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn order(&self) -> &DeglexOrder {
        &self.order
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Leftmost position at which some rule applies, with the first such rule.
    fn find_redex(&self, w: &Word) -> Option<(usize, &Rule)> {
        for pos in 0..w.len() {
            if let Some(cands) = self.by_first.get(&w.0[pos]) {
                for &i in cands {
                    let l = &self.rules[i].lhs;
                    if pos + l.len() <= w.len() && w.0[pos..pos + l.len()] == l.0[..] {
                        return Some((pos, &self.rules[i]));
                    }
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }

    pub fn normal_form(&self, a: &Element) -> Element {
        let alg = &self.alg;
        let mut pending: BTreeMap<(usize, Vec<u32>), (Word, Scalar)> = BTreeMap::new();
        let push = |pending: &mut BTreeMap<(usize, Vec<u32>), (Word, Scalar)>, w: Word, c: Scalar| {
            let key = self.order.key(&w);
            match pending.get_mut(&key) {
                Some(slot) => {
                    let s = slot.1.add(&c);
                    if s.is_zero() {
                        pending.remove(&key);
                    } else {
                        slot.1 = s;
                    }
                }
                None => {
                    if !c.is_zero() {
                        pending.insert(key, (w, c));
                    }
                }
            }
        };
        for (w, c) in a.terms() {
            push(&mut pending, w.clone(), c.clone());
        }
        let mut out = Element::zero(alg);
        while let Some((_, (w, c))) = pending.pop_last() {
            match self.find_redex(&w) {
                Some((pos, rule)) => {
                    let left = Element::term(alg, c, w.slice(0, pos));
                    let right = Element::word(alg, w.slice(pos + rule.lhs.len(), w.len()));
                    let repl = left.mul(&rule.rhs).mul(&right);
                    for (w2, c2) in repl.terms() {
                        push(&mut pending, w2.clone(), c2.clone());
                    }
                }
                None => out.add_term(w, c),
            }
        }
        out
    }

    /// Insert elements of the ideal, interreducing as rules are added.
    fn extend(&mut self, elements: Vec<Element>) -> Result<()> {
        let mut queue: VecDeque<Element> = elements.into();
        let mut parked: Vec<Element> = Vec::new();
        loop {
            let mut progress = false;
            while let Some(e) = queue.pop_front() {
                let e = self.normal_form(&e);
                let Some((lw, lc)) = self.order.leading(&e) else { continue };
                let Ok(inv) = lc.inv() else {
                    parked.push(e);
                    continue;
                };
                let monic = e.scale(&inv);
                let rhs = Element::word(&self.alg, lw.clone()).sub(&monic);
                let mut kept = Vec::with_capacity(self.rules.len() + 1);
                for r in self.rules.drain(..) {
                    if r.lhs.find(&lw).is_some() {
                        queue.push_back(r.as_relation());
                    } else {
                        kept.push(r);
                    }
                }
                kept.push(Rule { lhs: lw, rhs });
                self.rules = kept;
                self.reindex();
                progress = true;
            }
            if parked.is_empty() {
                break;
            }
            if !progress {
                let e = &parked[0];
                return Err(Error::NonUnitLeadingCoefficient {
                    relation: e.to_string(),
                    hint: "no other relation removes its leading word; try a different precedence".into(),
                });
            }
            queue.extend(parked.drain(..));
        }
        let snapshot = self.clone();
        for r in &mut self.rules {
            r.rhs = snapshot.normal_form(&r.rhs);
        }
        let order = self.order.clone();
        self.rules.sort_by(|a, b| order.cmp(&a.lhs, &b.lhs));
        self.reindex();
        Ok(())
    }

    /// Critical pairs whose overlap word has length at most `d_max`, paired
    /// with the word where the ambiguity occurs.
    fn critical_pairs(&self, d_max: usize) -> Vec<(Word, Element)> {
        let alg = &self.alg;
        let mut out = Vec::new();
        for (i, a) in self.rules.iter().enumerate() {
            for (j, b) in self.rules.iter().enumerate() {
                let (la, lb) = (a.lhs.len(), b.lhs.len());
                for o in 1..la.min(lb) {
                    if a.lhs.0[la - o..] == b.lhs.0[..o] && la + lb - o <= d_max {
                        let tail = b.lhs.slice(o, lb);
                        let head = a.lhs.slice(0, la - o);
                        let s = a.rhs.mul(&Element::word(alg, tail.clone())).sub(&Element::word(alg, head).mul(&b.rhs));
                        out.push((a.lhs.concat(&tail), s));
                    }
                }
                if i != j && la >= lb && la <= d_max {
                    if la == lb && a.lhs == b.lhs && j < i {
                        continue;
                    }
                    if let Some(pos) = a.lhs.find(&b.lhs) {
                        let u = Element::word(alg, a.lhs.slice(0, pos));
                        let v = Element::word(alg, a.lhs.slice(pos + lb, la));
                        out.push((a.lhs.clone(), a.rhs.sub(&u.mul(&b.rhs).mul(&v))));
                    }
                }
            }
        }
        out
    }

    /// Bounded completion: adjoin reduced ambiguities until every overlap up
    /// to `d_max` resolves. Returns the number of rules added.
    pub fn complete_to_degree(&mut self, d_max: usize) -> Result<usize> {
        let before = self.rules.len();
        let mut added_total = 0usize;
        loop {
            let new: Vec<Element> = self
                .critical_pairs(d_max)
                .into_iter()
                .map(|(_, s)| self.normal_form(&s))
                .filter(|s| !s.is_zero())
                .collect();
            if new.is_empty() {
                break;
            }
            let n_before = self.rules.len();
            self.extend(new)?;
            added_total += self.rules.len().saturating_sub(n_before).max(1);
            if added_total > 10_000 {
                return Err(Error::Input("completion did not stabilise".into()));
            }
        }
        let added = self.rules.len().saturating_sub(before);
        self.completion = Some((d_max, added));
        Ok(added)
    }
}

impl fmt::Display for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "    {} -> {}", r.lhs.render(&self.alg), r.rhs)?;
        }
        Ok(())
    }
}

pub fn orient_relations(p: &Presentation) -> Result<RewriteSystem> {
    let mut rs = RewriteSystem::from_rules(&p.name, &p.alg, p.order(), vec![]);
    rs.extend(p.relations.clone())?;
    Ok(rs)
}

/// Orient, and if ambiguities up to `d_max` do not resolve, complete.
pub fn rewriting_to_degree(p: &Presentation, d_max: usize) -> Result<RewriteSystem> {
    let mut rs = orient_relations(p)?;
    if !confluence_check(&rs, d_max).passed() {
        rs.complete_to_degree(d_max)?;
    }
    Ok(rs)
}

pub fn normal_form(rs: &RewriteSystem, a: &Element) -> Element {
    rs.normal_form(a)
}

pub fn confluence_check(rs: &RewriteSystem, d_max: usize) -> CheckReport {
    let mut rep = CheckReport::new("confluence", &[&rs.source]);
    for (w, s) in rs.critical_pairs(d_max) {
        let r = rs.normal_form(&s);
        if !r.is_zero() {
            rep.residual(w.render(&rs.alg), r);
        }
    }
    rep.note(format!("{} rules, overlaps up to degree {d_max}", rs.rules.len()));
    if let Some((d, added)) = rs.completion {
        rep.note(format!("system completed to degree {d}; {added} rules added by completion"));
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimTable {
    pub dims: Vec<usize>,
    /// Counts are only upper bounds when the system was not confluent.
    pub upper_bounds: bool,
}

/// Number of irreducible words in each degree.
pub fn hilbert_dims(rs: &RewriteSystem, d_max: usize) -> DimTable {
    let n = rs.alg.len() as u32;
    let mut dims = vec![0usize; d_max + 1];
    let mut stack: Vec<Word> = vec![Word::unit()];
    while let Some(w) = stack.pop() {
        dims[w.len()] += 1;
        if w.len() == d_max {
            continue;
        }
        for g in 0..n {
            let mut nw = w.clone();
            nw.0.push(g);
            let reducible = rs.rules.iter().any(|r| {
                let l = r.lhs.len();
                l <= nw.len() && nw.0[nw.len() - l..] == r.lhs.0[..]
            });
            if !reducible {
                stack.push(nw);
            }
        }
    }
    let upper_bounds = !confluence_check(rs, d_max).passed();
    DimTable { dims, upper_bounds }
}

/// Map `b`'s relations into `a`'s algebra by generator name.
fn transport(b: &Presentation, alg: &Arc<Algebra>) -> Result<Vec<Element>> {
    let mut images = Vec::new();
    for g in b.generators() {
        let i = alg.index(&g.name).ok_or_else(|| Error::GeneratorMismatch(format!("`{}` missing", g.name)))?;
        if alg.generators()[i].parity != g.parity {
            return Err(Error::GeneratorMismatch(format!("`{}` has different parity", g.name)));
        }
        images.push(Element::gen(alg, i));
    }
    b.relations.iter().map(|r| r.substitute_generators(&images, alg, None)).collect()
}

/// Promote odd parameters to generators that supercommute with everything.
/// Over the lifted algebra every coefficient is even, so relations such as
/// `h*w = 0` become ordinary rewriting rules. Odd parameters sit lowest in
/// the precedence.
pub fn lift_odd_parameters(p: &Presentation, odd: &[String]) -> Result<Presentation> {
    let mut gens = p.alg.generators().to_vec();
    for o in odd {
        if p.alg.index(o).is_some() {
            return Err(Error::Input(format!("`{o}` is both an odd parameter and a generator")));
        }
        gens.push(Generator::odd(o));
    }
    let alg = Algebra::new(gens)?;
    let n = p.alg.len();
    let lifted = |e: &Element| -> Element {
        let mut out = Element::zero(&alg);
        for (w, c) in e.terms() {
            for (basis, rf) in c.terms() {
                let mut coeff = Scalar::from_ratfunc(rf.clone());
                for f in &basis.nil {
                    coeff = coeff.mul(&Scalar::nilpotent(&f.name, f.order).pow(f.exp));
                }
                let mut letters: Vec<u32> = basis
                    .odd
                    .iter()
                    .map(|v| {
                        (n + odd.iter().position(|o| o.as_str() == v.as_ref()).expect("odd parameter listed")) as u32
                    })
                    .collect();
                letters.extend(w.0.iter().copied());
                out = out.add(&Element::term(&alg, coeff, Word(letters)));
            }
        }
        out
    };
    let mut rels: Vec<Element> = p.relations.iter().map(&lifted).collect();
    for (k, _) in odd.iter().enumerate() {
        let h = Element::gen(&alg, n + k);
        for (g, gen) in p.alg.generators().iter().enumerate() {
            let g = Element::gen(&alg, g);
            let sign = if gen.parity.is_odd() { Scalar::int(-1) } else { Scalar::one() };
            rels.push(g.mul(&h).sub(&h.mul(&g).scale(&sign)));
        }
        for l in 0..k {
            let h2 = Element::gen(&alg, n + l);
            rels.push(h.mul(&h2).add(&h2.mul(&h)));
        }
        rels.push(h.mul(&h));
    }
    let mut prec = p.precedence_names();
    prec.extend(odd.iter().cloned());
    let prec: Vec<&str> = prec.iter().map(String::as_str).collect();
    let mut params = p.params.clone();
    params.odd.retain(|o| !odd.contains(o));
    Presentation::new(&p.name, params, alg, &prec, rels)
}

/// Ideal equality, lifting odd parameters to generators when a relation
/// with a non-unit leading coefficient blocks rewriting. The lifted
/// comparison runs to degree `d` plus the number of odd parameters.
pub fn ideals_equal_upto_degree(a: &Presentation, b: &Presentation, d: usize) -> Result<CheckReport> {
    match ideals_equal_direct(a, b, d) {
        Err(Error::NonUnitLeadingCoefficient { relation, .. }) => {
            let odd: Vec<String> = a
                .params
                .odd
                .iter()
                .chain(b.params.odd.iter())
                .cloned()
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            if odd.is_empty() {
                return Err(Error::NonUnitLeadingCoefficient {
                    relation,
                    hint: "no odd parameter to lift; try a different precedence".into(),
                });
            }
            let la = lift_odd_parameters(a, &odd)?;
            let lb = lift_odd_parameters(b, &odd)?;
            let mut rep = ideals_equal_direct(&la, &lb, d + odd.len())?;
            rep.note(format!(
                "`{relation}` has a non-unit leading coefficient; compared with {} lifted to generators",
                odd.join(", ")
            ));
            Ok(rep)
        }
        other => other,
    }
}

fn ideals_equal_direct(a: &Presentation, b: &Presentation, d: usize) -> Result<CheckReport> {
    if a.alg.len() != b.alg.len() {
        return Err(Error::GeneratorMismatch(format!(
            "{} has {} generators, {} has {}",
            a.name,
            a.alg.len(),
            b.name,
            b.alg.len()
        )));
    }
    let b_rel = transport(b, &a.alg)?;
    let b_in_a = Presentation { relations: vec![], ..a.clone() };
    let mut b_in_a = b_in_a.renamed(&b.name);
    for r in b_rel {
        b_in_a.push_relation(r)?;
    }
    let mut rep = CheckReport::new("ideal-equality", &[&a.name, &b.name]);
    let rs_a = rewriting_to_degree(a, d)?;
    let rs_b = rewriting_to_degree(&b_in_a, d)?;
    for (x, rs_y, y) in [(a, &rs_b, &b.name), (&b_in_a, &rs_a, &a.name)] {
        for r in &x.relations {
            if r.degree().unwrap_or(0) > d {
                continue;
            }
            let nf = rs_y.normal_form(r);
            if !nf.is_zero() {
                rep.residual(format!("{} relation `{}` modulo {}", x.name, r, y), nf);
            }
        }
    }
    let da = hilbert_dims(&rs_a, d);
    let db = hilbert_dims(&rs_b, d);
    if da.dims != db.dims {
        rep.fail(format!("dimensions differ: {:?} vs {:?}", da.dims, db.dims));
    } else {
        rep.note(format!("dimensions {:?}", da.dims));
    }
    Ok(rep)
}

pub fn add_relation(p: &Presentation, r: Element) -> Result<Presentation> {
    if r.is_zero() {
        return Err(Error::ZeroRelation("cannot adjoin the zero relation".into()));
    }
    let mut out = p.clone();
    out.push_relation(r)?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuotientInfo {
    /// Some relation acquired terms of degree at most one, so the quotient
    /// is not a flat specialisation.
    pub collapsing: bool,
    pub notes: Vec<String>,
}

/// Set an even generator equal to an even scalar.
pub fn quotient_set_generator(p: &Presentation, g: &str, value: &Scalar) -> Result<(Presentation, QuotientInfo)> {
    let gi = p.alg.index(g).ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
    if p.alg.generators()[gi].parity != Parity::Even {
        return Err(Error::ParityViolation(format!("`{g}` is odd and cannot be set to a scalar")));
    }
    if value.parity() != Some(Parity::Even) {
        return Err(Error::ParityViolation(format!("value `{value}` is not even")));
    }
    let gens: Vec<Generator> = p.generators().iter().filter(|x| x.name != g).cloned().collect();
    let alg = Algebra::new(gens)?;
    let images: Vec<Element> = p
        .generators()
        .iter()
        .map(|x| {
            if x.name == g {
                Element::scalar(&alg, value.clone())
            } else {
                Element::gen_named(&alg, &x.name).unwrap()
            }
        })
        .collect();
    let mut rels = Vec::new();
    let mut info = QuotientInfo { collapsing: false, notes: vec![] };
    for r in &p.relations {
        let s = r.substitute_generators(&images, &alg, None)?;
        if s.is_zero() {
            info.notes.push(format!("`{r}` becomes trivial"));
            continue;
        }
        if s.degree() == Some(0) {
            return Err(Error::ResidualDependence(format!(
                "`{r}` becomes the nonzero scalar `{s}`; the quotient is zero"
            )));
        }
        if s.min_degree().unwrap_or(0) <= 1 && !s.is_homogeneous() || s.degree() == Some(1) {
            info.collapsing = true;
            info.notes.push(format!("`{r}` becomes `{s}`, which has low-degree terms"));
        }
        rels.push(s);
    }
    let prec: Vec<String> = p.precedence_names().into_iter().filter(|n| n != g).collect();
    let refs: Vec<&str> = prec.iter().map(String::as_str).collect();
    let name = format!("{}/{{{g}={value}}}", p.name);
    Ok((Presentation::new(&name, p.params.clone(), alg, &refs, rels)?, info))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(zeta_rel: bool) -> Presentation {
        let alg = Algebra::new(vec![Generator::even("x"), Generator::even("y")]).unwrap();
        let x = Element::gen(&alg, 0);
        let y = Element::gen(&alg, 1);
        let q = Scalar::param("q");
        let mut rels = vec![x.mul(&y).sub(&y.mul(&x).scale(&q))];
        if zeta_rel {
            rels.push(y.mul(&y));
        }
        let ps = ParameterSet::new(&["q"], &[], &[]).unwrap();
        Presentation::new("plane", ps, alg, &["y", "x"], rels).unwrap()
    }

    #[test]
    fn orient_quantum_plane() {
        let p = plane(false);
        let rs = orient_relations(&p).unwrap();
        assert_eq!(rs.rules().len(), 1);
        let r = &rs.rules()[0];
        assert_eq!(r.lhs, Word(vec![1, 0]));
        let xy = Element::word(p.algebra(), Word(vec![0, 1]));
        assert_eq!(r.rhs, xy.scale(&Scalar::param("q").inv().unwrap()));
    }

    #[test]
    fn orient_dual_plane() {
        let p = plane(true);
        let rs = orient_relations(&p).unwrap();
        assert_eq!(rs.rules().len(), 2);
        assert!(rs.rules().iter().any(|r| r.lhs == Word(vec![1, 1]) && r.rhs.is_zero()));
    }

    #[test]
    fn empty_presentation() {
        let alg = Algebra::new(vec![Generator::even("x")]).unwrap();
        let p = Presentation::new("free", ParameterSet::default(), alg, &["x"], vec![]).unwrap();
        assert!(orient_relations(&p).unwrap().is_empty());
    }

    #[test]
    fn single_rule_application() {
        let p = plane(false);
        let rs = orient_relations(&p).unwrap();
        let yx = Element::word(p.algebra(), Word(vec![1, 0]));
        let xy = Element::word(p.algebra(), Word(vec![0, 1]));
        assert_eq!(rs.normal_form(&yx), xy.scale(&Scalar::param("q").inv().unwrap()));
    }

    #[test]
    fn plane_is_confluent_with_polynomial_dims() {
        let rs = orient_relations(&plane(false)).unwrap();
        assert!(confluence_check(&rs, 3).passed());
        assert_eq!(hilbert_dims(&rs, 5).dims, vec![1, 2, 3, 4, 5, 6]);
        let rs = orient_relations(&plane(true)).unwrap();
        assert_eq!(hilbert_dims(&rs, 4).dims, vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn inconsistent_rules_fail() {
        let alg = Algebra::new(vec![Generator::even("x"), Generator::even("y")]).unwrap();
        let xy = Element::word(&alg, Word(vec![0, 1]));
        let rules = vec![
            Rule { lhs: Word(vec![1, 0]), rhs: xy.clone() },
            Rule { lhs: Word(vec![1, 0]), rhs: xy.scale(&Scalar::int(2)) },
        ];
        let rs = RewriteSystem::from_rules("bad", &alg, DeglexOrder::new(&[1, 0]), rules);
        assert!(!confluence_check(&rs, 3).passed());
    }

    #[test]
    fn non_unit_leading_coefficient() {
        let alg = Algebra::new(vec![Generator::even("x"), Generator::odd("t")]).unwrap();
        let t = Element::gen(&alg, 1);
        let r = t.mul(&t).scale(&Scalar::odd("h"));
        let p = Presentation::new("p", ParameterSet::default(), alg, &["t", "x"], vec![r]).unwrap();
        assert!(matches!(orient_relations(&p), Err(Error::NonUnitLeadingCoefficient { .. })));
    }

    #[test]
    fn ideal_equality_ignores_unit_scaling() {
        let p = plane(false);
        let scaled: Vec<_> = p.relations().iter().map(|r| r.scale(&Scalar::param("q").add(&Scalar::one()))).collect();
        let alg = p.algebra().clone();
        let q2 = Presentation::new("scaled", p.params.clone(), alg, &["y", "x"], scaled).unwrap();
        assert!(ideals_equal_upto_degree(&p, &q2, 3).unwrap().passed());
        assert!(ideals_equal_upto_degree(&p, &p, 3).unwrap().passed());
        assert!(!ideals_equal_upto_degree(&p, &plane(true), 3).unwrap().passed());
    }

    #[test]
    fn add_relation_rules() {
        let p = plane(false);
        assert!(matches!(add_relation(&p, Element::zero(p.algebra())), Err(Error::ZeroRelation(_))));
        let dup = add_relation(&p, p.relations()[0].clone()).unwrap();
        assert_eq!(dup.relations().len(), 1);
        let y = p.gen("y").unwrap();
        assert_eq!(add_relation(&p, y.mul(&y)).unwrap().relations().len(), 2);
    }

    #[test]
    fn quotient_collapse_is_flagged() {
        let p = plane(false);
        let (qp, info) = quotient_set_generator(&p, "y", &Scalar::one()).unwrap();
        assert!(info.collapsing);
        assert_eq!(qp.relations().len(), 1);
        let unaffected = quotient_set_generator(&p.with_relations("t", vec![]).unwrap(), "y", &Scalar::one()).unwrap();
        assert!(!unaffected.1.collapsing);
    }
}
