//! Complex numbers over [`BigFloat`].

use std::fmt;

use super::float::BigFloat;
use super::magnitude::{ldexp, Magnitude};
use super::scale::{Precision, Scale};

#[derive(Clone, PartialEq, Eq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    /// Both parts are rounded to the wider of their two precisions.
    pub fn new(re: BigFloat, im: BigFloat) -> BigComplex {
        let prec = re.precision().max(im.precision());
        BigComplex { re: re.round_to(prec), im: im.round_to(prec) }
    }

    pub fn zero(prec: Precision) -> BigComplex {
        BigComplex { re: BigFloat::zero(prec), im: BigFloat::zero(prec) }
    }

    pub fn one(prec: Precision) -> BigComplex {
        BigComplex { re: BigFloat::one(prec), im: BigFloat::zero(prec) }
    }

    pub fn real(x: BigFloat) -> BigComplex {
        let prec = x.precision();
        BigComplex { re: x, im: BigFloat::zero(prec) }
    }

    pub fn from_f64(re: f64, im: f64, prec: Precision) -> BigComplex {
        BigComplex { re: BigFloat::from_f64(re, prec), im: BigFloat::from_f64(im, prec) }
    }

    pub fn precision(&self) -> Precision {
        self.re.precision().max(self.im.precision())
    }

    pub fn round_to(&self, prec: Precision) -> BigComplex {
        BigComplex { re: self.re.round_to(prec), im: self.im.round_to(prec) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> BigComplex {
        BigComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> BigComplex {
        BigComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul_pow2(&self, k: i64) -> BigComplex {
        BigComplex { re: self.re.mul_pow2(k), im: self.im.mul_pow2(k) }
    }

    pub fn add(&self, other: &BigComplex, prec: Precision) -> BigComplex {
        BigComplex { re: self.re.add(&other.re, prec), im: self.im.add(&other.im, prec) }
    }

    pub fn sub(&self, other: &BigComplex, prec: Precision) -> BigComplex {
        BigComplex { re: self.re.sub(&other.re, prec), im: self.im.sub(&other.im, prec) }
    }

    /// Product with one rounding per component.
    pub fn mul(&self, other: &BigComplex, prec: Precision) -> BigComplex {
        if self.im.is_zero() && other.im.is_zero() {
            return BigComplex::real(self.re.mul(&other.re, prec));
        }
        let ac = self.re.mul_exact(&other.re);
        let bd = self.im.mul_exact(&other.im);
        let ad = self.re.mul_exact(&other.im);
        let bc = self.im.mul_exact(&other.re);
        BigComplex { re: ac.sub(&bd, prec), im: ad.add(&bc, prec) }
    }

    pub fn mul_real(&self, x: &BigFloat, prec: Precision) -> BigComplex {
        BigComplex { re: self.re.mul(x, prec), im: self.im.mul(x, prec) }
    }

    pub fn square(&self, prec: Precision) -> BigComplex {
        self.mul(self, prec)
    }

    /// `self * z + a`, each operation rounded once.
    pub fn mul_add(&self, z: &BigComplex, a: &BigComplex, prec: Precision) -> BigComplex {
        self.mul(z, prec).add(a, prec)
    }

    /// Quotient; panics when `other` is zero.
    pub fn div(&self, other: &BigComplex, prec: Precision) -> BigComplex {
        assert!(!other.is_zero(), "division by zero");
        if other.im.is_zero() {
            return BigComplex { re: self.re.div(&other.re, prec), im: self.im.div(&other.re, prec) };
        }
        let guard = prec.plus(prec.get() + 16);
        let den = other.re.mul_exact(&other.re).add(&other.im.mul_exact(&other.im), guard);
        let re_num = self.re.mul_exact(&other.re).add(&self.im.mul_exact(&other.im), guard);
        let im_num = self.im.mul_exact(&other.re).sub(&self.re.mul_exact(&other.im), guard);
        BigComplex { re: re_num.div(&den, prec), im: im_num.div(&den, prec) }
    }

    pub fn add_exact(&self, other: &BigComplex) -> BigComplex {
        BigComplex { re: self.re.add_exact(&other.re), im: self.im.add_exact(&other.im) }
    }

    pub fn mul_exact(&self, other: &BigComplex) -> BigComplex {
        let re = self.re.mul_exact(&other.re).sub_exact(&self.im.mul_exact(&other.im));
        let im = self.re.mul_exact(&other.im).add_exact(&self.im.mul_exact(&other.re));
        BigComplex { re, im }
    }

    /// `1 + floor(log2 |z|)`, exact.
    pub fn scale(&self) -> Scale {
        scale_of_parts(&self.re, &self.im)
    }

    /// Scale of `self - other`, exact.
    pub fn sub_scale(&self, other: &BigComplex) -> Scale {
        let re = self.re.sub_exact(&other.re);
        let im = self.im.sub_exact(&other.im);
        scale_of_parts(&re, &im)
    }

    /// `|z|` to about double precision.
    pub fn abs_magnitude(&self) -> Magnitude {
        let (a, b) = (self.re.magnitude(), self.im.magnitude());
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        (a * a + b * b).sqrt()
    }

    /// `log2 |z|` as a double, `-inf` at zero.
    pub fn log2_abs(&self) -> f64 {
        self.abs_magnitude().log2()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

fn scale_of_parts(re: &BigFloat, im: &BigFloat) -> Scale {
    let (sr, si) = (re.scale(), im.scale());
    let m = match (sr, si) {
        (Scale::NegInf, s) | (s, Scale::NegInf) => return s,
        (Scale::Finite(a), Scale::Finite(b)) => a.max(b),
    };
    // |z| lies in [2^(m-1), 2^m * sqrt 2); decide whether |z| >= 2^m
    let (fr, er) = re.frexp();
    let (fi, ei) = im.frexp();
    let x = ldexp(fr, er - m);
    let y = ldexp(fi, ei - m);
    let v = x * x + y * y;
    if v < 1.0 - 1e-12 {
        return Scale::Finite(m);
    }
    if v > 1.0 + 1e-12 {
        return Scale::Finite(m + 1);
    }
    let norm = re.mul_exact(re).add_exact(&im.mul_exact(im));
    let bound = BigFloat::pow2(2 * m, re.precision());
    if norm >= bound {
        Scale::Finite(m + 1)
    } else {
        Scale::Finite(m)
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.re, self.im)
    }
}
