//! Precision, binary scale and the scale-based relations between numbers.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use super::complex::BigComplex;
use super::float::BigFloat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScaleError {
    #[error("precision must be at least 1 bit, got {0}")]
    InvalidPrecision(u64),
    #[error("result scale {result} exceeds the largest operand scale {operand}")]
    ResultAboveOperands { result: i64, operand: i64 },
}

/// Number of stored mantissa bits after the implicit leading one.
///
/// A number at precision `p` carries `p + 1` significant bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const MAX_BITS: u32 = 1 << 26;

    pub fn new(p: u32) -> Result<Self, ScaleError> {
        if p == 0 || p > Self::MAX_BITS {
            return Err(ScaleError::InvalidPrecision(p as u64));
        }
        Ok(Precision(p))
    }

    /// Panics on an invalid precision; intended for literals.
    pub fn bits_after_point(p: u32) -> Self {
        Self::new(p).expect("invalid precision")
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Total significant bits, `p + 1`.
    pub fn mantissa_bits(self) -> u64 {
        self.0 as u64 + 1
    }

    pub fn max(self, other: Precision) -> Precision {
        if self.0 >= other.0 {
            self
        } else {
            other
        }
    }

    pub fn plus(self, extra: u32) -> Precision {
        Precision::new(self.0.saturating_add(extra).min(Self::MAX_BITS)).unwrap()
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `1 + floor(log2 |z|)`, or `NegInf` for zero.
///
/// `NegInf` orders below every finite scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scale {
    NegInf,
    Finite(i64),
}

impl Scale {
    pub fn finite(self) -> Option<i64> {
        match self {
            Scale::NegInf => None,
            Scale::Finite(s) => Some(s),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        matches!(self, Scale::NegInf)
    }

    /// Shift by an integer amount; `NegInf` stays put.
    pub fn offset(self, by: i64) -> Scale {
        match self {
            Scale::NegInf => Scale::NegInf,
            Scale::Finite(s) => Scale::Finite(s + by),
        }
    }

    /// Scale of a nonnegative integer, `s(0)` being `NegInf`.
    pub fn of_usize(n: usize) -> Scale {
        if n == 0 {
            Scale::NegInf
        } else {
            Scale::Finite(64 - (n as u64).leading_zeros() as i64)
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scale::NegInf => write!(f, "-inf"),
            Scale::Finite(s) => write!(f, "{s}"),
        }
    }
}

/// Number of leading bits lost to cancellation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cancellation {
    Bits(u64),
    Infinite,
}

impl Cancellation {
    pub fn bits(self) -> Option<u64> {
        match self {
            Cancellation::Bits(b) => Some(b),
            Cancellation::Infinite => None,
        }
    }
}

impl PartialOrd for Cancellation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cancellation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cancellation::Bits(a), Cancellation::Bits(b)) => a.cmp(b),
            (Cancellation::Bits(_), Cancellation::Infinite) => Ordering::Less,
            (Cancellation::Infinite, Cancellation::Bits(_)) => Ordering::Greater,
            (Cancellation::Infinite, Cancellation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Cancellation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cancellation::Bits(b) => write!(f, "{b}"),
            Cancellation::Infinite => write!(f, "inf"),
        }
    }
}

/// Unit in the last place of `x` at precision `p`: `2^(s(x) - p - 1)`.
///
/// Returned as the exponent of that power of two; `None` for zero.
pub fn ulp_exponent(x: &BigFloat, p: Precision) -> Option<i64> {
    x.scale().finite().map(|s| s - p.get() as i64 - 1)
}

/// `ulp(x)` as a number at precision `p`.
pub fn ulp(x: &BigFloat, p: Precision) -> Option<BigFloat> {
    ulp_exponent(x, p).map(|e| BigFloat::pow2(e, p))
}

/// True when the closures of the rounding classes of `x` and `y` at
/// precision `p` intersect, i.e. their `p`-bit roundings coincide or are
/// neighbours on the `p`-bit grid.
pub fn adjacent(x: &BigFloat, y: &BigFloat, p: Precision) -> bool {
    let xr = x.round_to(p);
    let yr = y.round_to(p);
    if xr == yr {
        return true;
    }
    if xr.is_zero() || yr.is_zero() || xr.is_negative() != yr.is_negative() {
        return false;
    }
    let (lo, hi) = if xr.cmp_abs(&yr) == Ordering::Less { (xr, yr) } else { (yr, xr) };
    lo.next_away_from_zero(p) == hi
}

/// `z ≈_p w`: `s(z - w) <= max(s(z), s(w)) - p - 2`.
///
/// The scale of the difference is computed exactly, so the threshold is never
/// crossed by rounding.
pub fn similar_phase_shift(z: &BigComplex, w: &BigComplex, p: Precision) -> bool {
    let top = z.scale().max(w.scale());
    match (z.sub_scale(w), top) {
        (Scale::NegInf, _) => true,
        (Scale::Finite(_), Scale::NegInf) => unreachable!("nonzero difference of zeros"),
        (Scale::Finite(d), Scale::Finite(t)) => d <= t - p.get() as i64 - 2,
    }
}

/// Range `[s(z) + s(w) - 1, s(z) + s(w)]` containing `s(zw)`.
pub fn scale_product_bound(z: Scale, w: Scale) -> Option<(i64, i64)> {
    let (a, b) = (z.finite()?, w.finite()?);
    Some((a + b - 1, a + b))
}

/// When the smaller operand sits more than `p + 2` binades below the larger,
/// their `p`-bit sum is the larger operand.
pub fn lazy_add_applies(big: Scale, small: Scale, p: Precision) -> bool {
    match (big, small) {
        (_, Scale::NegInf) => true,
        (Scale::NegInf, Scale::Finite(_)) => false,
        (Scale::Finite(b), Scale::Finite(s)) => b > s + p.get() as i64 + 2,
    }
}

/// `operand_max - result`: the number of leading bits lost when a sum whose
/// largest operand has scale `operand_max` comes out at scale `result`.
///
/// Infinite when the result is zero; 0 when every operand is zero.
pub fn canceled_bits(operand_max: Scale, result: Scale) -> Result<Cancellation, ScaleError> {
    match (operand_max, result) {
        (Scale::NegInf, Scale::NegInf) => Ok(Cancellation::Bits(0)),
        (Scale::NegInf, Scale::Finite(r)) => Err(ScaleError::ResultAboveOperands { result: r, operand: i64::MIN }),
        (Scale::Finite(_), Scale::NegInf) => Ok(Cancellation::Infinite),
        (Scale::Finite(t), Scale::Finite(r)) => {
            if r > t {
                Err(ScaleError::ResultAboveOperands { result: r, operand: t })
            } else {
                Ok(Cancellation::Bits((t - r) as u64))
            }
        }
    }
}
