//! Multivariate polynomials over Q(i) in recursive dense form.
//!
//! A polynomial is either a constant or a univariate polynomial in its main
//! variable whose coefficients only involve variables that sort strictly
//! after it. Variables are ordered by name, so every polynomial has exactly
//! one representation and structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::gauss::GaussRational;

pub type Var = Arc<str>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Poly {
    Const(GaussRational),
    /// `coeffs[k]` multiplies `var^k`; at least two entries, the last nonzero.
    Rec(Var, Vec<Poly>),
}

/// `None` sorts after every variable (constants have no main variable).
fn cmp_var(a: Option<&Var>, b: Option<&Var>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Greater,
        (Some(_), None) => Ordering::Less,
        (Some(x), Some(y)) => x.as_ref().cmp(y.as_ref()),
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::Const(GaussRational::zero())
    }

    pub fn one() -> Poly {
        Poly::Const(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Poly {
        Poly::Const(c)
    }

    pub fn var(name: &str) -> Poly {
        Poly::Rec(Arc::from(name), vec![Poly::zero(), Poly::one()])
    }

    fn var_pow(v: &Var, k: usize) -> Poly {
        if k == 0 {
            return Poly::one();
        }
        let mut cs = vec![Poly::zero(); k + 1];
        cs[k] = Poly::one();
        Poly::Rec(v.clone(), cs)
    }

    fn mk(v: Var, mut cs: Vec<Poly>) -> Poly {
        while cs.len() > 1 && cs.last().is_some_and(Poly::is_zero) {
            cs.pop();
        }
        match cs.len() {
            0 => Poly::zero(),
            1 => cs.pop().unwrap(),
            _ => Poly::Rec(v, cs),
        }
    }

    pub fn main_var(&self) -> Option<&Var> {
        match self {
            Poly::Const(_) => None,
            Poly::Rec(v, _) => Some(v),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Poly::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Poly::Const(c) if c.is_one())
    }

    pub fn as_const(&self) -> Option<&GaussRational> {
        match self {
            Poly::Const(c) => Some(c),
            _ => None,
        }
    }

    fn coeffs(&self) -> &[Poly] {
        match self {
            Poly::Const(_) => std::slice::from_ref(self),
            Poly::Rec(_, cs) => cs,
        }
    }

    fn main_degree(&self) -> usize {
        self.coeffs().len() - 1
    }

    fn lc_main(&self) -> &Poly {
        self.coeffs().last().unwrap()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        if let Poly::Rec(v, cs) = self {
            out.insert(v.clone());
            for c in cs {
                c.collect_vars(out);
            }
        }
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            Poly::Const(_) => false,
            Poly::Rec(v, cs) => {
                if v.as_ref() == name {
                    true
                } else if name < v.as_ref() {
                    false
                } else {
                    cs.iter().any(|c| c.contains_var(name))
                }
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        if let (Poly::Const(a), Poly::Const(b)) = (self, o) {
            return Poly::Const(a + b);
        }
        match cmp_var(self.main_var(), o.main_var()) {
            Ordering::Less => {
                let (v, cs) = match self {
                    Poly::Rec(v, cs) => (v, cs),
                    _ => unreachable!(),
                };
                let mut cs = cs.clone();
                cs[0] = cs[0].add(o);
                Poly::mk(v.clone(), cs)
            }
            Ordering::Greater => o.add(self),
            Ordering::Equal => {
                let (v, a, b) = match (self, o) {
                    (Poly::Rec(v, a), Poly::Rec(_, b)) => (v, a, b),
                    _ => unreachable!(),
                };
                let n = a.len().max(b.len());
                let cs = (0..n)
                    .map(|k| match (a.get(k), b.get(k)) {
                        (Some(x), Some(y)) => x.add(y),
                        (Some(x), None) | (None, Some(x)) => x.clone(),
                        (None, None) => unreachable!(),
                    })
                    .collect();
                Poly::mk(v.clone(), cs)
            }
        }
    }

    pub fn neg(&self) -> Poly {
        match self {
            Poly::Const(c) => Poly::Const(-c),
            Poly::Rec(v, cs) => Poly::Rec(v.clone(), cs.iter().map(Poly::neg).collect()),
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &GaussRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        match self {
            Poly::Const(a) => Poly::Const(a * c),
            Poly::Rec(v, cs) => Poly::Rec(v.clone(), cs.iter().map(|x| x.scale(c)).collect()),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if let Poly::Const(c) = o {
            return self.scale(c);
        }
        if let Poly::Const(c) = self {
            return o.scale(c);
        }
        match cmp_var(self.main_var(), o.main_var()) {
            Ordering::Less => {
                let (v, cs) = match self {
                    Poly::Rec(v, cs) => (v, cs),
                    _ => unreachable!(),
                };
                Poly::mk(v.clone(), cs.iter().map(|c| c.mul(o)).collect())
            }
            Ordering::Greater => o.mul(self),
            Ordering::Equal => {
                let (v, a, b) = match (self, o) {
                    (Poly::Rec(v, a), Poly::Rec(_, b)) => (v, a, b),
                    _ => unreachable!(),
                };
                let mut cs = vec![Poly::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if !y.is_zero() {
                            cs[i + j] = cs[i + j].add(&x.mul(y));
                        }
                    }
                }
                Poly::mk(v.clone(), cs)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `var^k` where `var` is this polynomial's main variable
    /// (or any variable sorting before every variable present).
    fn shift(&self, v: &Var, k: usize) -> Poly {
        self.mul(&Poly::var_pow(v, k))
    }

    /// Leading base-field coefficient: follow leading coefficients down to a constant.
    pub fn lc_base(&self) -> &GaussRational {
        match self {
            Poly::Const(c) => c,
            Poly::Rec(_, cs) => cs.last().unwrap().lc_base(),
        }
    }

    pub fn is_monomial(&self) -> bool {
        match self {
            Poly::Const(c) => !c.is_zero(),
            Poly::Rec(_, cs) => cs[..cs.len() - 1].iter().all(Poly::is_zero) && cs.last().unwrap().is_monomial(),
        }
    }

    /// Lowest exponent of `name` among the terms; `None` for the zero polynomial.
    pub fn valuation(&self, name: &str) -> Option<u32> {
        match self {
            Poly::Const(c) => (!c.is_zero()).then_some(0),
            Poly::Rec(v, cs) => match name.cmp(v.as_ref()) {
                Ordering::Less => Some(0),
                Ordering::Equal => cs.iter().position(|c| !c.is_zero()).map(|k| k as u32),
                Ordering::Greater => cs.iter().filter_map(|c| c.valuation(name)).min(),
            },
        }
    }

    /// Divide by `name^k`, assuming `k <= valuation(name)`.
    pub fn div_var_pow(&self, name: &str, k: u32) -> Poly {
        if k == 0 {
            return self.clone();
        }
        match self {
            Poly::Const(_) => panic!("div_var_pow: constant not divisible by {name}"),
            Poly::Rec(v, cs) => match name.cmp(v.as_ref()) {
                Ordering::Equal => Poly::mk(v.clone(), cs[k as usize..].to_vec()),
                Ordering::Greater => Poly::mk(v.clone(), cs.iter().map(|c| c.div_var_pow(name, k)).collect()),
                Ordering::Less => panic!("div_var_pow: {name} absent"),
            },
        }
    }

    pub fn mul_var_pow(&self, name: &str, k: u32) -> Poly {
        self.mul(&Poly::var(name).pow(k))
    }

    /// Substitute `name = 0`.
    pub fn at_zero(&self, name: &str) -> Poly {
        match self {
            Poly::Const(_) => self.clone(),
            Poly::Rec(v, cs) => match name.cmp(v.as_ref()) {
                Ordering::Less => self.clone(),
                Ordering::Equal => cs[0].clone(),
                Ordering::Greater => Poly::mk(v.clone(), cs.iter().map(|c| c.at_zero(name)).collect()),
            },
        }
    }

    /// Flattened term list, highest main-variable powers first.
    pub fn terms(&self) -> Vec<(Vec<(Var, u32)>, GaussRational)> {
        match self {
            Poly::Const(c) => {
                if c.is_zero() {
                    vec![]
                } else {
                    vec![(vec![], c.clone())]
                }
            }
            Poly::Rec(v, cs) => {
                let mut out = Vec::new();
                for (k, c) in cs.iter().enumerate().rev() {
                    for (mut mono, coef) in c.terms() {
                        if k > 0 {
                            mono.insert(0, (v.clone(), k as u32));
                        }
                        out.push((mono, coef));
                    }
                }
                out
            }
        }
    }

    pub fn eval<F>(&self, value: &F) -> Option<GaussRational>
    where
        F: Fn(&str) -> Option<GaussRational>,
    {
        match self {
            Poly::Const(c) => Some(c.clone()),
            Poly::Rec(v, cs) => {
                let x = value(v)?;
                let mut acc = GaussRational::zero();
                for c in cs.iter().rev() {
                    acc = &(&acc * &x) + &c.eval(value)?;
                }
                Some(acc)
            }
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Poly::Const(c) = d {
            return Some(self.scale(&c.inv()?));
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let x = d.main_var().unwrap().clone();
        match cmp_var(self.main_var(), Some(&x)) {
            Ordering::Greater => None,
            Ordering::Less => {
                let (v, cs) = match self {
                    Poly::Rec(v, cs) => (v, cs),
                    _ => unreachable!(),
                };
                let qs = cs.iter().map(|c| c.div_exact(d)).collect::<Option<Vec<_>>>()?;
                Some(Poly::mk(v.clone(), qs))
            }
            Ordering::Equal => {
                let dd = d.main_degree();
                let dlc = d.lc_main();
                let mut q = Poly::zero();
                let mut r = self.clone();
                loop {
                    if r.is_zero() {
                        return Some(q);
                    }
                    if r.main_var().map(|v| v.as_ref()) != Some(x.as_ref()) {
                        return None;
                    }
                    let rd = r.main_degree();
                    if rd < dd {
                        return None;
                    }
                    let t = r.lc_main().div_exact(dlc)?.shift(&x, rd - dd);
                    r = r.sub(&t.mul(d));
                    q = q.add(&t);
                }
            }
        }
    }

    /// Normalize so the leading base coefficient is 1.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.lc_base();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.inv().unwrap())
    }

    fn monomial_gcd(m: &Poly, p: &Poly) -> Poly {
        let mut g = Poly::one();
        for (mono, _) in m.terms() {
            for (v, e) in mono {
                let k = e.min(p.valuation(&v).unwrap_or(e));
                if k > 0 {
                    g = g.mul_var_pow(&v, k);
                }
            }
        }
        g
    }

    /// GCD with respect to the main variable's coefficients.
    fn content(&self) -> Poly {
        match self {
            Poly::Const(_) => self.monic(),
            Poly::Rec(_, cs) => {
                let mut g = Poly::zero();
                for c in cs {
                    g = Poly::gcd(&g, c);
                    if g.is_one() {
                        break;
                    }
                }
                g
            }
        }
    }

    /// Pseudo-remainder of `a` by `b` in their shared main variable.
    fn prem(a: &Poly, b: &Poly) -> Poly {
        let x = b.main_var().unwrap().clone();
        let db = b.main_degree();
        let lb = b.lc_main().clone();
        let mut r = a.clone();
        while !r.is_zero() && r.main_var().map(|v| v.as_ref()) == Some(x.as_ref()) && r.main_degree() >= db {
            let k = r.main_degree() - db;
            let lr = r.lc_main().clone();
            r = r.mul(&lb).sub(&b.shift(&x, k).mul(&lr));
        }
        r
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.as_const().is_some() || b.as_const().is_some() {
            return Poly::one();
        }
        if a == b {
            return a.monic();
        }
        if a.is_monomial() {
            return Poly::monomial_gcd(a, b);
        }
        if b.is_monomial() {
            return Poly::monomial_gcd(b, a);
        }
        match cmp_var(a.main_var(), b.main_var()) {
            Ordering::Less => Poly::gcd(&a.content(), b),
            Ordering::Greater => Poly::gcd(a, &b.content()),
            Ordering::Equal => {
                if a.main_degree() >= b.main_degree() && a.div_exact(b).is_some() {
                    return b.monic();
                }
                if b.main_degree() >= a.main_degree() && b.div_exact(a).is_some() {
                    return a.monic();
                }
                let x = a.main_var().unwrap().clone();
                let ca = a.content();
                let cb = b.content();
                let c = Poly::gcd(&ca, &cb);
                let mut p = a.div_exact(&ca).unwrap();
                let mut r = b.div_exact(&cb).unwrap();
                let g = loop {
                    if r.main_degree() > p.main_degree() {
                        std::mem::swap(&mut p, &mut r);
                    }
                    let rem = Poly::prem(&p, &r);
                    if rem.is_zero() {
                        break r;
                    }
                    if rem.main_var().map(|v| v.as_ref()) != Some(x.as_ref()) {
                        break Poly::one();
                    }
                    p = r;
                    r = rem.div_exact(&rem.content()).unwrap().monic();
                };
                c.mul(&g).monic()
            }
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (idx, (mono, c)) in terms.iter().enumerate() {
            let mono_s = mono
                .iter()
                .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect::<Vec<_>>()
                .join("*");
            let neg_one = (-c).is_one();
            let mut t = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono_s
            } else if neg_one {
                format!("-{mono_s}")
            } else {
                format!("{c}*{mono_s}")
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

    fn q() -> Poly {
        Poly::var("q")
    }
    fn v() -> Poly {
        Poly::var("v")
    }
    fn c(n: i64) -> Poly {
        Poly::constant(GaussRational::from_int(n))
    }

    #[test]
    fn difference_of_squares() {
        let lhs = q().sub(&c(1)).mul(&q().add(&c(1)));
        assert_eq!(lhs, q().pow(2).sub(&c(1)));
    }

    #[test]
    fn gcd_univariate() {
        let a = q().pow(2).sub(&c(1));
        let b = q().pow(2).add(&q().scale(&GaussRational::from_int(2))).add(&c(1));
        assert_eq!(Poly::gcd(&a, &b), q().add(&c(1)));
    }

    #[test]
    fn gcd_multivariate() {
        let common = q().mul(&v()).add(&c(2));
        let a = common.mul(&q().sub(&v()));
        let b = common.mul(&q().add(&v()).pow(2));
        assert_eq!(Poly::gcd(&a, &b), common.monic());
        assert!(Poly::gcd(&q().add(&c(1)), &v().add(&c(1))).is_one());
    }

    #[test]
    fn exact_division() {
        let a = q().pow(3).sub(&c(1));
        let d = q().sub(&c(1));
        let quo = a.div_exact(&d).unwrap();
        assert_eq!(quo.mul(&d), a);
        assert!(a.div_exact(&q().add(&c(2))).is_none());
        assert!(q().div_exact(&v()).is_none());
    }

    #[test]
    fn valuation_and_at_zero() {
        let p = q().mul(&v().pow(2)).add(&v().pow(3));
        assert_eq!(p.valuation("v"), Some(2));
        assert_eq!(p.valuation("q"), Some(0));
        assert_eq!(p.at_zero("q"), v().pow(3));
        assert_eq!(Poly::zero().valuation("v"), None);
    }

    #[test]
    fn display_terms() {
        let p = q().pow(2).sub(&q().scale(&GaussRational::from_int(3))).add(&c(1));
        assert_eq!(p.to_string(), "q^2 - 3*q + 1");
    }
}
