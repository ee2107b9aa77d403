//! Elementary functions at arbitrary precision.
//!
//! Results carry a few ulps of error at the requested precision; they are not
//! correctly rounded.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::complex::BigComplex;
use super::float::BigFloat;
use super::scale::{Precision, Scale};

fn working(prec: Precision, extra: u32) -> Precision {
    prec.plus(extra)
}

/// `atanh(1/n)` for an integer `n >= 2`.
fn atanh_inv(n: u64, prec: Precision) -> BigFloat {
    let n2 = BigFloat::from_i64((n * n) as i64, prec);
    let mut pow = BigFloat::one(prec).div(&BigFloat::from_i64(n as i64, prec), prec);
    let mut sum = pow.clone();
    let stop = -(prec.get() as i64) - 8;
    let mut k = 1i64;
    loop {
        pow = pow.div(&n2, prec);
        let term = pow.div(&BigFloat::from_i64(2 * k + 1, prec), prec);
        if term.scale() < Scale::Finite(stop) {
            break;
        }
        sum = sum.add(&term, prec);
        k += 1;
    }
    sum
}

/// `atan(1/n)` for an integer `n >= 2`.
fn atan_inv(n: u64, prec: Precision) -> BigFloat {
    let n2 = BigFloat::from_i64((n * n) as i64, prec);
    let mut pow = BigFloat::one(prec).div(&BigFloat::from_i64(n as i64, prec), prec);
    let mut sum = pow.clone();
    let stop = -(prec.get() as i64) - 8;
    let mut k = 1i64;
    loop {
        pow = pow.div(&n2, prec);
        let term = pow.div(&BigFloat::from_i64(2 * k + 1, prec), prec);
        if term.scale() < Scale::Finite(stop) {
            break;
        }
        sum = if k % 2 == 1 { sum.sub(&term, prec) } else { sum.add(&term, prec) };
        k += 1;
    }
    sum
}

pub fn ln2(prec: Precision) -> BigFloat {
    let w = working(prec, 16);
    atanh_inv(3, w).mul_pow2(1).round_to(prec)
}

pub fn pi(prec: Precision) -> BigFloat {
    let w = working(prec, 16);
    let a = atan_inv(5, w).mul_pow2(4);
    let b = atan_inv(239, w).mul_pow2(2);
    a.sub(&b, w).round_to(prec)
}

fn bits_of(n: &BigInt) -> u32 {
    n.abs().bits() as u32
}

/// `e^x`.
pub fn exp(x: &BigFloat, prec: Precision) -> BigFloat {
    if x.is_zero() {
        return BigFloat::one(prec);
    }
    // x = n ln2 + r with |r| <= ln2 / 2 + tiny
    let guess = x.to_f64() / std::f64::consts::LN_2;
    let n = if guess.is_finite() && guess.abs() < 1e15 {
        BigInt::from(guess.round() as i64)
    } else {
        let l = ln2(working(prec, 64));
        let q = x.div(&l, working(x.precision(), 16));
        q.add(&BigFloat::pow2(-1, q.precision()), q.precision()).floor_int()
    };
    let w = working(prec, 24 + bits_of(&n));
    let l = ln2(w);
    let r = x.sub(&BigFloat::from_bigint(&n, w).mul(&l, w), w);
    let j = ((prec.get() as f64).sqrt() / 2.0).ceil() as i64 + 1;
    let w2 = working(w, j as u32 + 8);
    let y = r.round_to(w2).mul_pow2(-j);
    let mut sum = BigFloat::one(w2);
    let mut term = BigFloat::one(w2);
    let stop = -(w2.get() as i64) - 4;
    let mut k = 1i64;
    loop {
        term = term.mul(&y, w2).div(&BigFloat::from_i64(k, w2), w2);
        if term.is_zero() || term.scale() < Scale::Finite(stop) {
            break;
        }
        sum = sum.add(&term, w2);
        k += 1;
    }
    for _ in 0..j {
        sum = sum.mul(&sum, w2);
    }
    sum.mul_pow2(n.to_i64().expect("exponent overflow")).round_to(prec)
}

/// `2^x`.
pub fn exp2(x: &BigFloat, prec: Precision) -> BigFloat {
    let int = x.floor_int();
    let w = working(prec, 24 + bits_of(&int));
    let frac = x.sub(&BigFloat::from_bigint(&int, w), w);
    let e = if frac.is_zero() { BigFloat::one(prec) } else { exp(&frac.mul(&ln2(w), w), working(prec, 8)) };
    e.mul_pow2(int.to_i64().expect("exponent overflow")).round_to(prec)
}

/// `(sin x, cos x)`.
pub fn sin_cos(x: &BigFloat, prec: Precision) -> (BigFloat, BigFloat) {
    if x.is_zero() {
        return (BigFloat::zero(prec), BigFloat::one(prec));
    }
    let approx = x.to_f64() / std::f64::consts::FRAC_PI_2;
    let q = if approx.is_finite() && approx.abs() < 1e15 {
        BigInt::from(approx.round() as i64)
    } else {
        let half_pi = pi(working(x.precision(), 64)).mul_pow2(-1);
        let t = x.div(&half_pi, working(x.precision(), 16));
        t.add(&BigFloat::pow2(-1, t.precision()), t.precision()).floor_int()
    };
    let w = working(prec, 24 + bits_of(&q));
    let half_pi = pi(w).mul_pow2(-1);
    let r = x.sub(&BigFloat::from_bigint(&q, w).mul(&half_pi, w), w);
    let r2 = r.mul(&r, w);
    let stop = -(w.get() as i64) - 4;
    // sin
    let mut s = r.clone();
    let mut term = r.clone();
    let mut k = 1i64;
    loop {
        term = term.mul(&r2, w).div(&BigFloat::from_i64((2 * k) * (2 * k + 1), w), w).neg();
        if term.is_zero() || term.scale() < Scale::Finite(stop) {
            break;
        }
        s = s.add(&term, w);
        k += 1;
    }
    let mut c = BigFloat::one(w);
    let mut term = BigFloat::one(w);
    let mut k = 1i64;
    loop {
        term = term.mul(&r2, w).div(&BigFloat::from_i64((2 * k - 1) * (2 * k), w), w).neg();
        if term.is_zero() || term.scale() < Scale::Finite(stop) {
            break;
        }
        c = c.add(&term, w);
        k += 1;
    }
    let quadrant = q.mod_floor_4();
    let (s, c) = match quadrant {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    };
    (s.round_to(prec), c.round_to(prec))
}

trait ModFour {
    fn mod_floor_4(&self) -> u8;
}

impl ModFour for BigInt {
    fn mod_floor_4(&self) -> u8 {
        let r = num_integer::Integer::mod_floor(self, &BigInt::from(4));
        r.to_u8().unwrap()
    }
}

/// `e^z` for complex `z`.
pub fn cexp(z: &BigComplex, prec: Precision) -> BigComplex {
    let w = working(prec, 8);
    let m = exp(&z.re, w);
    if z.im.is_zero() {
        return BigComplex::real(m.round_to(prec));
    }
    let (s, c) = sin_cos(&z.im, w);
    BigComplex { re: m.mul(&c, prec), im: m.mul(&s, prec) }
}

/// `r e^{iθ}`.
pub fn from_polar(r: &BigFloat, theta: &BigFloat, prec: Precision) -> BigComplex {
    let w = working(prec, 8);
    let (s, c) = sin_cos(theta, w);
    BigComplex { re: r.mul(&c, prec), im: r.mul(&s, prec) }
}
