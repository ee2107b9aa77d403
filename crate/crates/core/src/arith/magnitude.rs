//! Nonnegative reals with a wide exponent, used for error bounds and size
//! estimates where `f64` alone would overflow.

use std::cmp::Ordering;
use std::ops::{Add, Mul};

/// `mant * 2^exp` with `mant` in `[0.5, 1)`, or zero.
#[derive(Debug, Clone, Copy)]
pub struct Magnitude {
    mant: f64,
    exp: i64,
}

impl Magnitude {
    pub const ZERO: Magnitude = Magnitude { mant: 0.0, exp: 0 };
    pub const ONE: Magnitude = Magnitude { mant: 0.5, exp: 1 };

    pub fn new(x: f64, exp: i64) -> Magnitude {
        assert!(x >= 0.0 && x.is_finite(), "magnitude must be finite and nonnegative");
        if x == 0.0 {
            return Magnitude::ZERO;
        }
        let (m, e) = frexp(x);
        Magnitude { mant: m, exp: exp + e }
    }

    pub fn from_f64(x: f64) -> Magnitude {
        Magnitude::new(x.abs(), 0)
    }

    pub fn pow2(e: i64) -> Magnitude {
        Magnitude { mant: 0.5, exp: e + 1 }
    }

    pub fn is_zero(self) -> bool {
        self.mant == 0.0
    }

    pub fn mul_pow2(self, k: i64) -> Magnitude {
        if self.is_zero() {
            self
        } else {
            Magnitude { mant: self.mant, exp: self.exp + k }
        }
    }

    pub fn scale_by(self, f: f64) -> Magnitude {
        self * Magnitude::from_f64(f)
    }

    /// `log2` of the value, `-inf` for zero.
    pub fn log2(self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mant.log2() + self.exp as f64
        }
    }

    pub fn from_log2(l: f64) -> Magnitude {
        if l == f64::NEG_INFINITY {
            return Magnitude::ZERO;
        }
        let e = l.floor();
        Magnitude::new((l - e).exp2(), e as i64)
    }

    /// `1 + floor(log2 x)`, `None` for zero.
    pub fn scale(self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp)
        }
    }

    /// Value as `f64`, saturating to infinity or zero.
    pub fn to_f64(self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        ldexp(self.mant, self.exp)
    }

    pub fn sqrt(self) -> Magnitude {
        if self.is_zero() {
            return self;
        }
        if self.exp % 2 == 0 {
            Magnitude::new(self.mant.sqrt(), self.exp / 2)
        } else {
            Magnitude::new((self.mant * 2.0).sqrt(), (self.exp - 1) / 2)
        }
    }

    /// Saturating difference, zero when `other >= self`.
    pub fn sub_floor(self, other: Magnitude) -> Magnitude {
        if other >= self {
            return Magnitude::ZERO;
        }
        if other.is_zero() {
            return self;
        }
        let shift = other.exp - self.exp;
        Magnitude::new(self.mant - ldexp(other.mant, shift), self.exp)
    }

    pub fn max(self, other: Magnitude) -> Magnitude {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Add for Magnitude {
    type Output = Magnitude;
    fn add(self, rhs: Magnitude) -> Magnitude {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (a, b) = if self.exp >= rhs.exp { (self, rhs) } else { (rhs, self) };
        Magnitude::new(a.mant + ldexp(b.mant, b.exp - a.exp), a.exp)
    }
}

impl Mul for Magnitude {
    type Output = Magnitude;
    fn mul(self, rhs: Magnitude) -> Magnitude {
        if self.is_zero() || rhs.is_zero() {
            return Magnitude::ZERO;
        }
        Magnitude::new(self.mant * rhs.mant, self.exp + rhs.exp)
    }
}

impl PartialEq for Magnitude {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Magnitude {}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Magnitude {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.exp.cmp(&other.exp).then(self.mant.partial_cmp(&other.mant).unwrap()),
        }
    }
}

/// Split a positive finite `x` into `m * 2^e` with `m` in `[0.5, 1)`.
pub(crate) fn frexp(x: f64) -> (f64, i64) {
    debug_assert!(x > 0.0 && x.is_finite());
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    if biased == 0 {
        // subnormal: renormalize through a power of two
        let (m, e) = frexp(x * f64::powi(2.0, 64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1022 << 52));
    (m, biased - 1022)
}

/// `x * 2^e`, saturating.
pub(crate) fn ldexp(x: f64, e: i64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mut x = x;
    let mut e = e.clamp(-2200, 2200) as i32;
    while e > 1000 {
        x *= f64::powi(2.0, 1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= f64::powi(2.0, -1000);
        e += 1000;
    }
    x * f64::powi(2.0, e)
}
