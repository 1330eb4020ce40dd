//! Gaussian rationals: complex numbers with rational real and imaginary parts.
//!
//! Canonical form invariant: both parts are reduced fractions with positive
//! denominators (`BigRational` maintains this), and zero is `(0, 0)`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An exact element of the field Q(i).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussianRational {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// The fraction p/q as a real Gaussian rational. Panics if q = 0.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        GaussianRational {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// re² + im², a nonnegative rational; zero only for zero.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let n = self.norm();
        GaussianRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    /// Exact square root in Q(i), if one exists.
    ///
    /// For z = x + iy with y ≠ 0 a root exists iff x² + y² is a rational
    /// square r² and (x + r)/2 is a rational square u²; then z = (u + iy/2u)².
    pub fn sqrt(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        if self.im.is_zero() {
            if self.re.is_positive() {
                return sqrt_rational(&self.re).map(|u| GaussianRational {
                    re: u,
                    im: BigRational::zero(),
                });
            }
            let neg = -self.re.clone();
            return sqrt_rational(&neg).map(|u| GaussianRational {
                re: BigRational::zero(),
                im: u,
            });
        }
        let r = sqrt_rational(&self.norm())?;
        let two = BigRational::from_integer(BigInt::from(2));
        let half_sum = (&self.re + &r) / &two;
        let u = sqrt_rational(&half_sum)?;
        if u.is_zero() {
            return None;
        }
        let v = &self.im / (&two * &u);
        let cand = GaussianRational { re: u, im: v };
        if &cand * &cand == *self {
            Some(cand)
        } else {
            None
        }
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn sqrt_rational(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let p = x.numer();
    let q = x.denom();
    let sp = p.sqrt();
    let sq = q.sqrt();
    if &(&sp * &sp) == p && &(&sq * &sq) == q {
        Some(BigRational::new(sp, sq))
    } else {
        None
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv()
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_imaginary_part(im: &BigRational) -> String {
    if im.is_one() {
        "i".to_string()
    } else if (-im).is_one() {
        "-i".to_string()
    } else if im.denom().is_one() {
        format!("{}*i", im.numer())
    } else {
        format!("{}/{}*i", im.numer(), im.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Renders in the scalar literal grammar, e.g. `3/2`, `i`, `-2*i`, `1+1/2*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}", fmt_imaginary_part(&self.im));
        }
        let im_txt = fmt_imaginary_part(&self.im);
        if self.im.is_negative() {
            write!(f, "{}{}", fmt_rational(&self.re), im_txt)
        } else {
            write!(f, "{}+{}", fmt_rational(&self.re), im_txt)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
