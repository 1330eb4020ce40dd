//! Exact rational functions over Q(i) in named parameters.
//!
//! Canonical form invariant: the fraction is reduced (gcd of numerator and
//! denominator is 1), the denominator is monic and nonzero, and zero is 0/1.
//! Equality is therefore syntactic.

use super::gaussian::GaussianRational;
use super::gcd::gcd;
use super::poly::MultiPoly;
use super::ExactError;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: MultiPoly,
    den: MultiPoly,
}

impl Scalar {
    // ---- Constructors ----

    /// Builds `num/den` in canonical reduced form. Errors if `den` is zero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Scalar, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Scalar {
                num: MultiPoly::zero(),
                den: MultiPoly::one(),
            });
        }
        // A constant denominator folds into the numerator directly.
        if let Some(c) = den.as_constant() {
            return Ok(Scalar {
                num: num.mul_coeff(&c.inv()),
                den: MultiPoly::one(),
            });
        }
        let g = gcd(&num, &den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = d.leading_coeff().expect("nonzero denominator").clone();
        if !lc.is_one() {
            let inv = lc.inv();
            n = n.mul_coeff(&inv);
            d = d.mul_coeff(&inv);
        }
        Ok(Scalar { num: n, den: d })
    }

    pub fn from_poly(p: MultiPoly) -> Scalar {
        Scalar {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn from_gaussian(c: GaussianRational) -> Scalar {
        Scalar::from_poly(MultiPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_poly(MultiPoly::from_int(n))
    }

    pub fn from_ratio(p: i64, q: i64) -> Scalar {
        Scalar::from_gaussian(GaussianRational::from_ratio(p, q))
    }

    pub fn i() -> Scalar {
        Scalar::from_gaussian(GaussianRational::i())
    }

    pub fn zero() -> Scalar {
        Scalar::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Scalar {
        Scalar::from_poly(MultiPoly::one())
    }

    /// The parameter `name` as a scalar.
    pub fn param(name: &str) -> Scalar {
        Scalar::from_poly(MultiPoly::var(name))
    }

    // ---- Accessors ----

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when no parameter occurs.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_gaussian(&self) -> Option<GaussianRational> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(&n / &d),
            _ => None,
        }
    }

    /// Sorted list of parameters occurring in numerator or denominator.
    pub fn params(&self) -> Vec<String> {
        let mut v: Vec<String> = self.num.vars().to_vec();
        for x in self.den.vars() {
            if !v.contains(x) {
                v.push(x.clone());
            }
        }
        v.sort();
        v
    }

    /// True if the denominator is constant, i.e. the value is polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    // ---- Arithmetic ----

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        Scalar::new(num, den).expect("nonzero denominator product")
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        let num = self.num.mul(&rhs.num);
        let den = self.den.mul(&rhs.den);
        Scalar::new(num, den).expect("nonzero denominator product")
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Scalar::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn inv(&self) -> Result<Scalar, ExactError> {
        Scalar::one().div(self)
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    // ---- Substitution and evaluation ----

    /// Substitutes scalars for parameters; unbound parameters stay symbolic.
    /// Errors when the substituted denominator vanishes identically.
    pub fn substitute(&self, bindings: &BTreeMap<String, Scalar>) -> Result<Scalar, ExactError> {
        let n = substitute_poly(&self.num, bindings);
        let d = substitute_poly(&self.den, bindings);
        if d.is_zero() {
            return Err(ExactError::ExceptionalValue {
                denominator: self.den.to_string(),
            });
        }
        n.div(&d)
    }

    /// Evaluates at a full Gaussian-rational point; every parameter of the
    /// scalar must be bound.
    pub fn eval(
        &self,
        point: &BTreeMap<String, GaussianRational>,
    ) -> Result<GaussianRational, ExactError> {
        for p in self.params() {
            if !point.contains_key(&p) {
                return Err(ExactError::UnboundParameter { name: p });
            }
        }
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(ExactError::ExceptionalValue {
                denominator: self.den.to_string(),
            });
        }
        Ok(&self.num.eval(point) / &d)
    }
}

/// Substitutes scalars into a polynomial, producing a scalar.
fn substitute_poly(p: &MultiPoly, bindings: &BTreeMap<String, Scalar>) -> Scalar {
    if p.vars().iter().all(|v| !bindings.contains_key(v)) {
        return Scalar::from_poly(p.clone());
    }
    let mut acc = Scalar::zero();
    for (e, c) in p.terms() {
        let mut term = Scalar::from_gaussian(c.clone());
        for (k, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let name = &p.vars()[k];
            let base = match bindings.get(name) {
                Some(s) => s.clone(),
                None => Scalar::param(name),
            };
            term = term.mul(&base.pow(x));
        }
        acc = acc.add(&term);
    }
    acc
}

impl fmt::Display for Scalar {
    /// Renders in the scalar literal grammar; a nontrivial denominator is
    /// written as `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
