use std::fmt;

use super::gauss::GaussRational;
use super::poly::Poly;

/// Reduced fraction of polynomials. The numerator and denominator are
/// coprime and the denominator's leading base coefficient is 1, which makes
/// the representation canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: GaussRational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        RatFunc::constant(GaussRational::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        RatFunc::from_poly(Poly::var(name))
    }

    /// Build `num / den`, reducing to canonical form. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (num, den) = if den.as_const().is_some() {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        let lc = den.lc_base().inv().unwrap();
        RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_const(&self) -> Option<&GaussRational> {
        if self.den.is_one() {
            self.num.as_const()
        } else {
            None
        }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        let g = Poly::gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = o.den.div_exact(&g).unwrap();
        RatFunc::new(self.num.mul(&b).add(&o.num.mul(&a)), self.den.mul(&b))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.is_poly() && o.is_poly() {
            return RatFunc { num: self.num.mul(&o.num), den: Poly::one() };
        }
        let g1 = Poly::gcd(&self.num, &o.den);
        let g2 = Poly::gcd(&o.num, &self.den);
        let n = self.num.div_exact(&g1).unwrap().mul(&o.num.div_exact(&g2).unwrap());
        let d = self.den.div_exact(&g2).unwrap().mul(&o.den.div_exact(&g1).unwrap());
        let lc = d.lc_base().inv().unwrap();
        RatFunc { num: n.scale(&lc), den: d.scale(&lc) }
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        let lc = self.num.lc_base().inv().unwrap();
        Some(RatFunc { num: self.den.scale(&lc), den: self.num.scale(&lc) })
    }

    pub fn scale(&self, c: &GaussRational) -> RatFunc {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        let mut acc = RatFunc::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn contains_var(&self, name: &str) -> bool {
        self.num.contains_var(name) || self.den.contains_var(name)
    }

    /// `val(num) - val(den)` in `name`; `None` for zero.
    pub fn valuation(&self, name: &str) -> Option<i64> {
        let n = self.num.valuation(name)? as i64;
        let d = self.den.valuation(name).unwrap() as i64;
        Some(n - d)
    }

    /// Multiply by `name^k` for any integer `k`.
    pub fn mul_var_pow(&self, name: &str, k: i64) -> RatFunc {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        if k > 0 {
            let vd = self.den.valuation(name).unwrap().min(k as u32);
            let num = self.num.mul_var_pow(name, k as u32 - vd);
            RatFunc { num, den: self.den.div_var_pow(name, vd) }
        } else {
            let k = (-k) as u32;
            let vn = self.num.valuation(name).unwrap().min(k);
            let num = self.num.div_var_pow(name, vn);
            let den = self.den.mul_var_pow(name, k - vn);
            let lc = den.lc_base().inv().unwrap();
            RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
        }
    }

    /// Value at `name = 0`, or `None` when the denominator vanishes there.
    pub fn at_zero(&self, name: &str) -> Option<RatFunc> {
        let d = self.den.at_zero(name);
        if d.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.num.at_zero(name), d))
    }

    pub fn eval<F>(&self, value: &F) -> Option<GaussRational>
    where
        F: Fn(&str) -> Option<GaussRational>,
    {
        let d = self.den.eval(value)?;
        Some(&self.num.eval(value)? * &d.inv()?)
    }
}

fn needs_parens(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    body.contains(" + ") || body.contains(" - ") || body.contains('/')
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = self.num.to_string();
        let d = self.den.to_string();
        let n = if needs_parens(&n) { format!("({n})") } else { n };
        let d = if needs_parens(&d) || d.contains('*') || d.contains('^') { format!("({d})") } else { d };
        write!(f, "{n}/{d}")
    }
}
