//! Free associative superalgebra over the coefficient ring.
//!
//! Coefficients always sit to the left of words. Multiplying `(c·w)(c'·w')`
//! moves `c'` across `w`, which costs `(-1)^{p(c')p(w)}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{Parity, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
}

impl Generator {
    pub fn new(name: &str, parity: Parity) -> Self {
        Generator { name: name.to_string(), parity }
    }

    pub fn even(name: &str) -> Self {
        Generator::new(name, Parity::Even)
    }

    pub fn odd(name: &str) -> Self {
        Generator::new(name, Parity::Odd)
    }
}

/// The generator set that scopes a family of elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    gens: Vec<Generator>,
}

impl Algebra {
    pub fn new(gens: Vec<Generator>) -> Result<Arc<Algebra>> {
        for (i, g) in gens.iter().enumerate() {
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Input(format!("generator `{}` declared twice", g.name)));
            }
        }
        Ok(Arc::new(Algebra { gens }))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn name(&self, i: u32) -> &str {
        &self.gens[i as usize].name
    }

    pub fn parity(&self, i: u32) -> Parity {
        self.gens[i as usize].parity
    }

    pub fn names(&self) -> Vec<&str> {
        self.gens.iter().map(|g| g.name.as_str()).collect()
    }
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A word in generator indices; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn unit() -> Word {
        Word(vec![])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parity(&self, alg: &Algebra) -> Parity {
        Parity::from_bit(self.0.iter().filter(|&&g| alg.parity(g).is_odd()).count())
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + o.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&o.0);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Leftmost occurrence of `pat` as a factor.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.len() > self.len() {
            return None;
        }
        if pat.is_empty() {
            return Some(0);
        }
        self.0.windows(pat.len()).position(|w| w == pat.0.as_slice())
    }

    pub fn render(&self, alg: &Algebra) -> String {
        self.0.iter().map(|&g| alg.name(g)).collect::<Vec<_>>().join("*")
    }
}

/// Finite linear combination of words with scalar coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    alg: Arc<Algebra>,
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero(alg: &Arc<Algebra>) -> Element {
        Element { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &Arc<Algebra>) -> Element {
        Element::scalar(alg, Scalar::one())
    }

    pub fn scalar(alg: &Arc<Algebra>, s: Scalar) -> Element {
        Element::term(alg, s, Word::unit())
    }

    pub fn term(alg: &Arc<Algebra>, s: Scalar, w: Word) -> Element {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(w, s);
        }
        Element { alg: alg.clone(), terms }
    }

    pub fn word(alg: &Arc<Algebra>, w: Word) -> Element {
        Element::term(alg, Scalar::one(), w)
    }

    pub fn gen(alg: &Arc<Algebra>, i: usize) -> Element {
        Element::word(alg, Word(vec![i as u32]))
    }

    pub fn gen_named(alg: &Arc<Algebra>, name: &str) -> Result<Element> {
        let i = alg.index(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(Element::gen(alg, i))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(c) => {
                let n = c.add(&s);
                if n.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *c = n;
                }
            }
            None => {
                self.terms.insert(w, s);
            }
        }
    }

    fn check(&self, o: &Element) -> Result<()> {
        if same_algebra(&self.alg, &o.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, o: &Element) -> Result<Element> {
        self.check(o)?;
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    /// Sum; panics on mixed algebras.
    pub fn add(&self, o: &Element) -> Element {
        self.try_add(o).expect("add: algebra mismatch")
    }

    pub fn neg(&self) -> Element {
        Element { alg: self.alg.clone(), terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Element) -> Element {
        self.add(&o.neg())
    }

    /// Left multiplication by a scalar.
    pub fn scale(&self, s: &Scalar) -> Element {
        let mut out = Element::zero(&self.alg);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), s.mul(c));
        }
        out
    }

    /// Graded product.
    pub fn multiply(&self, o: &Element) -> Result<Element> {
        self.check(o)?;
        let mut out = Element::zero(&self.alg);
        for (w1, c1) in &self.terms {
            let odd = w1.parity(&self.alg).is_odd();
            for (w2, c2) in &o.terms {
                let c2 = if odd { c2.twist() } else { c2.clone() };
                out.add_term(w1.concat(w2), c1.mul(&c2));
            }
        }
        Ok(out)
    }

    /// Product; panics on mixed algebras.
    pub fn mul(&self, o: &Element) -> Element {
        self.multiply(o).expect("mul: algebra mismatch")
    }

    pub fn pow(&self, e: u32) -> Element {
        let mut acc = Element::one(&self.alg);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Super commutator `ab - (-1)^{p(a)p(b)} ba` for homogeneous arguments.
    pub fn supercommutator(&self, o: &Element) -> Element {
        let sign = match (self.parity(), o.parity()) {
            (Some(Parity::Odd), Some(Parity::Odd)) => -1,
            _ => 1,
        };
        self.mul(o).sub(&o.mul(self).scale(&Scalar::int(sign)))
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    /// Parity when every term has the same total parity (zero counts as even).
    pub fn parity(&self) -> Option<Parity> {
        let mut out: Option<Parity> = None;
        for (w, c) in &self.terms {
            let p = c.parity()? + w.parity(&self.alg);
            match out {
                None => out = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(out.unwrap_or(Parity::Even))
    }

    pub fn degree_terms(&self, d: usize) -> Element {
        Element {
            alg: self.alg.clone(),
            terms: self.terms.iter().filter(|(w, _)| w.len() == d).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn map_coefficients<F>(&self, f: F) -> Result<Element>
    where
        F: Fn(&Scalar) -> Result<Scalar>,
    {
        let mut out = Element::zero(&self.alg);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn substitute_params(&self, map: &BTreeMap<String, Scalar>) -> Result<Element> {
        if map.is_empty() {
            return Ok(self.clone());
        }
        self.map_coefficients(|c| c.substitute(map))
    }

    pub fn mentions_param(&self, name: &str) -> bool {
        self.terms.values().any(|c| c.mentions(name))
    }

    pub fn mentions_generator(&self, g: u32) -> bool {
        self.terms.keys().any(|w| w.0.contains(&g))
    }

    /// Re-home the element in an algebra with identical generators.
    pub fn rehome(&self, alg: &Arc<Algebra>) -> Result<Element> {
        if !same_algebra(&self.alg, alg) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Element { alg: alg.clone(), terms: self.terms.clone() })
    }

    /// Apply the algebra morphism sending generator `g` to `images[g]`, then
    /// substitute parameters.
    pub fn substitute_generators(
        &self,
        images: &[Element],
        target: &Arc<Algebra>,
        param_map: Option<&BTreeMap<String, Scalar>>,
    ) -> Result<Element> {
        if images.len() != self.alg.len() {
            return Err(Error::DimensionMismatch(format!("{} images for {} generators", images.len(), self.alg.len())));
        }
        for (g, img) in self.alg.generators().iter().zip(images) {
            if !same_algebra(img.algebra(), target) {
                return Err(Error::AlgebraMismatch);
            }
            if !img.is_zero() && img.parity() != Some(g.parity) {
                return Err(Error::ParityViolation(format!(
                    "image of `{}` ({}) is `{}`, which is not {}",
                    g.name, g.parity, img, g.parity
                )));
            }
        }
        let mut out = Element::zero(target);
        for (w, c) in &self.terms {
            let mut t = Element::scalar(target, c.clone());
            for &g in &w.0 {
                t = t.mul(&images[g as usize]);
                if t.is_zero() {
                    break;
                }
            }
            out = out.add(&t);
        }
        match param_map {
            Some(m) => out.substitute_params(m),
            None => Ok(out),
        }
    }

    /// Terms sorted for display: higher degree first, then by word.
    fn display_terms(&self) -> Vec<(&Word, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
        v
    }
}

fn atomic(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    !(body.contains(" + ") || body.contains(" - ") || body.contains('/'))
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (idx, (w, c)) in self.display_terms().into_iter().enumerate() {
            let ws = w.render(&self.alg);
            let cs = c.to_string();
            let mut t = if w.is_empty() {
                if atomic(&cs) {
                    cs
                } else {
                    format!("({cs})")
                }
            } else if c.is_one() {
                ws
            } else if c.neg().is_one() {
                format!("-{ws}")
            } else if atomic(&cs) {
                format!("{cs}*{ws}")
            } else {
                format!("({cs})*{ws}")
            };
            if idx > 0 {
                if let Some(rest) = t.strip_prefix('-') {
                    t = format!(" - {rest}");
                } else {
                    t = format!(" + {t}");
                }
            }
            out.push_str(&t);
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg() -> Arc<Algebra> {
        Algebra::new(vec![Generator::even("y"), Generator::odd("xi"), Generator::even("x")]).unwrap()
    }

    #[test]
    fn odd_scalar_passes_odd_generator_with_sign() {
        let a = alg();
        let h = Element::scalar(&a, Scalar::odd("h"));
        let xi = Element::gen(&a, 1);
        assert_eq!(h.mul(&xi), xi.mul(&h).neg());
        let y = Element::gen(&a, 0);
        assert_eq!(h.mul(&y), y.mul(&h));
    }

    #[test]
    fn plain_product_and_units() {
        let a = alg();
        let x = Element::gen(&a, 2);
        let y = Element::gen(&a, 0);
        let xy = x.mul(&y);
        assert_eq!(xy.num_terms(), 1);
        assert!(xy.coefficient(&Word(vec![2, 0])).is_one());
        let one = Element::one(&a);
        assert_eq!(one.mul(&xy), xy);
        assert_eq!(xy.mul(&one), xy);
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = alg();
        let b = Algebra::new(vec![Generator::even("z")]).unwrap();
        assert_eq!(Element::gen(&a, 0).multiply(&Element::gen(&b, 0)), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn degree_components() {
        let a = alg();
        let x = Element::gen(&a, 2);
        let y = Element::gen(&a, 0);
        let e = x.mul(&y).add(&x);
        assert_eq!(e.degree_terms(2), x.mul(&y));
        assert!(Element::zero(&a).degree_terms(3).is_zero());
    }

    #[test]
    fn substitution_checks_parity() {
        let a = alg();
        let images = vec![Element::gen(&a, 1), Element::gen(&a, 1), Element::gen(&a, 2)];
        let err = Element::gen(&a, 0).substitute_generators(&images, &a, None);
        assert!(matches!(err, Err(Error::ParityViolation(_))));
    }

    #[test]
    fn identity_substitution() {
        let a = alg();
        let images: Vec<_> = (0..3).map(|i| Element::gen(&a, i)).collect();
        let e = Element::gen(&a, 0).mul(&Element::gen(&a, 1)).scale(&Scalar::param("q"));
        assert_eq!(e.substitute_generators(&images, &a, None).unwrap(), e);
    }
}
