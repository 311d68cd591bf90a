use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::gauss::GaussRational;
use super::poly::Var;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, o: Parity) -> Parity {
        if self == o {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_bit(b: usize) -> Parity {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NilFactor {
    pub name: Var,
    pub order: u32,
    pub exp: u32,
}

/// Product of distinct odd parameters (in name order) and truncated
/// powers of nilpotent parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis {
    pub odd: Vec<Var>,
    pub nil: Vec<NilFactor>,
}

impl Basis {
    fn is_empty(&self) -> bool {
        self.odd.is_empty() && self.nil.is_empty()
    }

    fn parity(&self) -> Parity {
        Parity::from_bit(self.odd.len())
    }

    /// Product with its Koszul sign; `None` when it vanishes.
    fn mul(&self, o: &Basis) -> Option<(bool, Basis)> {
        let mut negative = false;
        for a in &self.odd {
            for b in &o.odd {
                match a.cmp(b) {
                    std::cmp::Ordering::Equal => return None,
                    std::cmp::Ordering::Greater => negative = !negative,
                    std::cmp::Ordering::Less => {}
                }
            }
        }
        let mut odd: Vec<Var> = self.odd.iter().chain(o.odd.iter()).cloned().collect();
        odd.sort();

        let mut nil: Vec<NilFactor> = Vec::with_capacity(self.nil.len() + o.nil.len());
        let (mut i, mut j) = (0, 0);
        while i < self.nil.len() || j < o.nil.len() {
            let take_left = match (self.nil.get(i), o.nil.get(j)) {
                (Some(a), Some(b)) => match a.name.cmp(&b.name) {
                    std::cmp::Ordering::Equal => {
                        assert_eq!(a.order, b.order, "nilpotent `{}` used with two truncation orders", a.name);
                        let exp = a.exp + b.exp;
                        if exp >= a.order {
                            return None;
                        }
                        nil.push(NilFactor { name: a.name.clone(), order: a.order, exp });
                        i += 1;
                        j += 1;
                        continue;
                    }
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                },
                (Some(_), None) => true,
                (None, _) => false,
            };
            if take_left {
                nil.push(self.nil[i].clone());
                i += 1;
            } else {
                nil.push(o.nil[j].clone());
                j += 1;
            }
        }
        Some((negative, Basis { odd, nil }))
    }

    fn mentions(&self, name: &str) -> bool {
        self.odd.iter().any(|v| v.as_ref() == name) || self.nil.iter().any(|f| f.name.as_ref() == name)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.odd
                .iter()
                .map(|v| v.to_string())
                .chain(self.nil.iter().map(|n| {
                    if n.exp == 1 {
                        n.name.to_string()
                    } else {
                        format!("{}^{}", n.name, n.exp)
                    }
                }))
                .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Element of the coefficient superring: rational functions in the even
/// free parameters, tensored with truncated nilpotents and a Grassmann
/// algebra on the odd parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    terms: BTreeMap<Basis, RatFunc>,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::default()
    }

    pub fn one() -> Scalar {
        Scalar::from_ratfunc(RatFunc::one())
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::from_ratfunc(RatFunc::int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Scalar {
        Scalar::gauss(GaussRational::from_ratio(n, d))
    }

    pub fn gauss(c: GaussRational) -> Scalar {
        Scalar::from_ratfunc(RatFunc::constant(c))
    }

    pub fn imag_unit() -> Scalar {
        Scalar::gauss(GaussRational::i())
    }

    pub fn from_ratfunc(r: RatFunc) -> Scalar {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Basis::default(), r);
        }
        Scalar { terms }
    }

    /// An even free parameter.
    pub fn param(name: &str) -> Scalar {
        Scalar::from_ratfunc(RatFunc::var(name))
    }

    pub fn odd(name: &str) -> Scalar {
        let mut terms = BTreeMap::new();
        terms.insert(Basis { odd: vec![Arc::from(name)], nil: vec![] }, RatFunc::one());
        Scalar { terms }
    }

    pub fn nilpotent(name: &str, order: u32) -> Scalar {
        assert!(order >= 2);
        let mut terms = BTreeMap::new();
        terms.insert(
            Basis { odd: vec![], nil: vec![NilFactor { name: Arc::from(name), order, exp: 1 }] },
            RatFunc::one(),
        );
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.body().is_one()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &RatFunc)> {
        self.terms.iter()
    }

    /// The part free of nilpotent and odd parameters.
    pub fn body(&self) -> RatFunc {
        self.terms.get(&Basis::default()).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_unit(&self) -> bool {
        !self.body().is_zero()
    }

    /// `true` when no nilpotent or odd parameter occurs.
    pub fn is_pure(&self) -> bool {
        self.terms.keys().all(Basis::is_empty)
    }

    pub fn as_ratfunc(&self) -> Option<RatFunc> {
        self.is_pure().then(|| self.body())
    }

    /// Parity when homogeneous (zero counts as even).
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Basis::parity);
        let first = match it.next() {
            None => return Some(Parity::Even),
            Some(p) => p,
        };
        it.all(|p| p == first).then_some(first)
    }

    /// Even part minus odd part: the sign picked up when moved past an odd object.
    pub fn twist(&self) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), if b.parity().is_odd() { c.neg() } else { c.clone() }))
                .collect(),
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        let mut terms = self.terms.clone();
        for (b, c) in &o.terms {
            add_term(&mut terms, b.clone(), c.clone());
        }
        Scalar { terms }
    }

    pub fn neg(&self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(b, c)| (b.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        let mut terms = BTreeMap::new();
        for (b1, c1) in &self.terms {
            for (b2, c2) in &o.terms {
                if let Some((neg, b)) = b1.mul(b2) {
                    let c = c1.mul(c2);
                    add_term(&mut terms, b, if neg { c.neg() } else { c });
                }
            }
        }
        Scalar { terms }
    }

    pub fn scale(&self, r: &RatFunc) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(b, c)| (b.clone(), c.mul(r))).collect() }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse of a scalar with invertible body: `b^{-1} * sum (-b^{-1} n)^k`.
    pub fn inv(&self) -> Result<Scalar> {
        let body = self.body();
        let binv = body.inv().ok_or(Error::DivisionByNonUnit)?;
        let mut nil = self.clone();
        nil.terms.remove(&Basis::default());
        let m = nil.scale(&binv).neg();
        let mut acc = Scalar::one();
        let mut power = Scalar::one();
        loop {
            power = power.mul(&m);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scale(&binv))
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn mentions(&self, name: &str) -> bool {
        self.terms.iter().any(|(b, c)| b.mentions(name) || c.contains_var(name))
    }

    fn odd_names(&self) -> impl Iterator<Item = &Var> {
        self.terms.keys().flat_map(|b| b.odd.iter())
    }

    fn nil_names(&self) -> impl Iterator<Item = &Var> {
        self.terms.keys().flat_map(|b| b.nil.iter().map(|f| &f.name))
    }

    /// Simultaneous substitution of parameters by scalars.
    pub fn substitute(&self, map: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        if map.is_empty() || !map.keys().any(|k| self.mentions(k)) {
            return Ok(self.clone());
        }
        for (name, img) in map {
            let odd_here = self.odd_names().any(|v| v.as_ref() == name);
            let want = if odd_here { Parity::Odd } else { Parity::Even };
            if !img.is_zero() && img.parity() != Some(want) {
                return Err(Error::ParityViolation(format!("`{name}` is {want} but its image `{img}` is not")));
            }
        }
        let image = |v: &str| -> Scalar { map.get(v).cloned().unwrap_or_else(|| Scalar::param(v)) };
        let subst_poly = |p: &super::poly::Poly| -> Scalar {
            let mut acc = Scalar::zero();
            for (mono, c) in p.terms() {
                let mut t = Scalar::gauss(c);
                for (v, e) in mono {
                    t = t.mul(&image(&v).pow(e));
                }
                acc = acc.add(&t);
            }
            acc
        };
        let mut out = Scalar::zero();
        for (b, c) in &self.terms {
            let coef = if map.keys().any(|k| c.contains_var(k)) {
                subst_poly(c.num()).div(&subst_poly(c.den()))?
            } else {
                Scalar::from_ratfunc(c.clone())
            };
            let mut basis = Scalar::one();
            for v in &b.odd {
                basis = basis.mul(&map.get(v.as_ref()).cloned().unwrap_or_else(|| Scalar::odd(v)));
            }
            for f in &b.nil {
                let img = map.get(f.name.as_ref()).cloned().unwrap_or_else(|| Scalar::nilpotent(&f.name, f.order));
                basis = basis.mul(&img.pow(f.exp));
            }
            out = out.add(&coef.mul(&basis));
        }
        Ok(out)
    }

    fn check_free(&self, p: &str) -> Result<()> {
        if self.odd_names().chain(self.nil_names()).any(|v| v.as_ref() == p) {
            return Err(Error::IndeterminateValuation(format!("`{p}` is not an even free parameter here")));
        }
        Ok(())
    }

    /// Order of vanishing in the free parameter `p`; `None` means infinity (zero).
    pub fn valuation(&self, p: &str) -> Result<Option<i64>> {
        self.check_free(p)?;
        Ok(self.terms.values().filter_map(|c| c.valuation(p)).min())
    }

    /// Multiply by `p^k`, `k` any integer.
    pub fn mul_param_pow(&self, p: &str, k: i64) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(b, c)| (b.clone(), c.mul_var_pow(p, k))).collect() }
    }

    /// Value at `p = 0`; requires non-negative valuation.
    pub fn limit_at_zero(&self, p: &str) -> Result<Scalar> {
        if let Some(v) = self.valuation(p)? {
            if v < 0 {
                return Err(Error::NegativeValuation(format!("`{self}` has valuation {v} in `{p}`")));
            }
        }
        let mut terms = BTreeMap::new();
        for (b, c) in &self.terms {
            let z = c
                .at_zero(p)
                .ok_or_else(|| Error::IndeterminateValuation(format!("denominator of `{c}` vanishes at {p}=0")))?;
            add_term(&mut terms, b.clone(), z);
        }
        Ok(Scalar { terms })
    }

    /// Coefficient of `name^k` for a nilpotent parameter, as a scalar free of `name`.
    pub fn nil_coefficient(&self, name: &str, k: u32) -> Scalar {
        let mut terms = BTreeMap::new();
        for (b, c) in &self.terms {
            let e = b.nil.iter().find(|f| f.name.as_ref() == name).map_or(0, |f| f.exp);
            if e == k {
                let mut b = b.clone();
                b.nil.retain(|f| f.name.as_ref() != name);
                add_term(&mut terms, b, c.clone());
            }
        }
        Scalar { terms }
    }

    /// Lowest power of the nilpotent `name` present; `None` for zero.
    pub fn nil_valuation(&self, name: &str) -> Option<u32> {
        self.terms.keys().map(|b| b.nil.iter().find(|f| f.name.as_ref() == name).map_or(0, |f| f.exp)).min()
    }

    /// Numerical value at a point, for nilpotent- and odd-free scalars.
    pub fn eval<F>(&self, value: &F) -> Option<GaussRational>
    where
        F: Fn(&str) -> Option<GaussRational>,
    {
        if !self.is_pure() {
            return None;
        }
        self.body().eval(value)
    }
}

fn add_term(terms: &mut BTreeMap<Basis, RatFunc>, b: Basis, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&b) {
        Some(x) => {
            let s = x.add(&c);
            if s.is_zero() {
                terms.remove(&b);
            } else {
                *x = s;
            }
        }
        None => {
            terms.insert(b, c);
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (idx, (b, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let mut t = if b.is_empty() {
                cs
            } else if c.is_one() {
                b.to_string()
            } else if c.neg().is_one() {
                format!("-{b}")
            } else if cs.contains(" + ") || cs.contains(" - ") {
                format!("({cs})*{b}")
            } else {
                format!("{cs}*{b}")
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

    fn q() -> Scalar {
        Scalar::param("q")
    }

    #[test]
    fn odd_square_vanishes() {
        let h = Scalar::odd("h");
        assert!(h.mul(&h).is_zero());
    }

    #[test]
    fn odd_parameters_anticommute() {
        let a = Scalar::odd("a");
        let b = Scalar::odd("b");
        assert_eq!(a.mul(&b), b.mul(&a).neg());
    }

    #[test]
    fn nilpotent_truncation() {
        let iota = Scalar::nilpotent("iota", 2);
        assert!(iota.mul(&iota).is_zero());
        let iota3 = Scalar::nilpotent("iota", 3);
        assert!(!iota3.pow(2).is_zero());
        assert!(iota3.pow(3).is_zero());
    }

    #[test]
    fn inverse_of_exotic_zeta() {
        let zeta = q().inv().unwrap().neg();
        assert_eq!(Scalar::one().div(&zeta).unwrap(), q().neg());
    }

    #[test]
    fn inverse_with_nilpotent_part() {
        let x = Scalar::int(2).add(&Scalar::odd("h")).add(&Scalar::nilpotent("iota", 3).mul(&q()));
        assert!(x.mul(&x.inv().unwrap()).is_one());
        assert_eq!(Scalar::odd("h").inv(), Err(Error::DivisionByNonUnit));
    }

    #[test]
    fn substitution_tanh_half() {
        // (q - 1)/(q + 1) with q -> 1 + iota*v is iota*v/2
        let t = q().sub(&Scalar::one()).div(&q().add(&Scalar::one())).unwrap();
        let iota = Scalar::nilpotent("iota", 2);
        let mut map = BTreeMap::new();
        map.insert("q".to_string(), Scalar::one().add(&iota.mul(&Scalar::param("v"))));
        let got = t.substitute(&map).unwrap();
        let want = iota.mul(&Scalar::param("v")).mul(&Scalar::ratio(1, 2));
        assert_eq!(got, want);
        assert_eq!(t.substitute(&BTreeMap::new()).unwrap(), t);
    }

    #[test]
    fn substitution_parity_checked() {
        let mut map = BTreeMap::new();
        map.insert("q".to_string(), Scalar::odd("h"));
        assert!(matches!(q().substitute(&map), Err(Error::ParityViolation(_))));
    }

    #[test]
    fn substitution_into_pole() {
        let t = Scalar::one().div(&q().add(&Scalar::one())).unwrap();
        let mut map = BTreeMap::new();
        map.insert("q".to_string(), Scalar::int(-1));
        assert_eq!(t.substitute(&map), Err(Error::DivisionByNonUnit));
    }

    #[test]
    fn valuation_and_limit() {
        let eps = Scalar::param("eps");
        let v = Scalar::param("v");
        let a = eps.mul(&v).div(&Scalar::int(2).add(&eps.mul(&v))).unwrap();
        assert_eq!(a.valuation("eps").unwrap(), Some(1));
        assert_eq!(Scalar::zero().valuation("eps").unwrap(), None);
        assert_eq!(q().sub(&Scalar::one()).valuation("eps").unwrap(), Some(0));
        assert!(a.limit_at_zero("eps").unwrap().is_zero());
        let b = Scalar::int(2).add(&eps).div(&Scalar::int(2).sub(&eps)).unwrap();
        assert!(b.limit_at_zero("eps").unwrap().is_one());
        let c = eps.inv().unwrap();
        assert!(matches!(c.limit_at_zero("eps"), Err(Error::NegativeValuation(_))));
        let h = Scalar::odd("h");
        assert_eq!(h.mul(&v).limit_at_zero("v").unwrap(), Scalar::zero());
        assert_eq!(h.limit_at_zero("v").unwrap(), h);
        assert!(matches!(h.valuation("h"), Err(Error::IndeterminateValuation(_))));
    }

    #[test]
    fn display_forms() {
        let h = Scalar::odd("h");
        assert_eq!(h.neg().to_string(), "-h");
        let x = q().add(&Scalar::one()).mul(&h);
        assert_eq!(x.to_string(), "(q + 1)*h");
    }
}
