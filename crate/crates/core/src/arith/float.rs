//! Binary floating point numbers with arbitrary precision and an unbounded
//! exponent.
//!
//! Values are stored as `(-1)^neg * mant * 2^exp` with an odd mantissa, so two
//! equal values always share a representation. Rounding is to nearest with
//! ties away from zero.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::magnitude::{frexp, ldexp, Magnitude};
use super::scale::{Precision, Scale};

#[derive(Clone)]
pub struct BigFloat {
    neg: bool,
    mant: BigUint,
    exp: i64,
    prec: Precision,
}

impl BigFloat {
    pub fn zero(prec: Precision) -> BigFloat {
        BigFloat { neg: false, mant: BigUint::zero(), exp: 0, prec }
    }

    pub fn one(prec: Precision) -> BigFloat {
        BigFloat::pow2(0, prec)
    }

    /// `2^e`, exact at any precision.
    pub fn pow2(e: i64, prec: Precision) -> BigFloat {
        BigFloat { neg: false, mant: BigUint::one(), exp: e, prec }
    }

    /// Round `(-1)^neg * mant * 2^exp` to `prec`.
    pub fn from_parts(neg: bool, mant: BigUint, exp: i64, prec: Precision) -> BigFloat {
        if mant.is_zero() {
            return BigFloat::zero(prec);
        }
        let p1 = prec.mantissa_bits();
        let n = mant.bits();
        let (mut m, mut e) = (mant, exp);
        if n > p1 {
            let shift = n - p1;
            let up = m.bit(shift - 1);
            m >>= shift;
            e += shift as i64;
            if up {
                m += 1u32;
            }
        }
        let tz = m.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            m >>= tz;
            e += tz as i64;
        }
        BigFloat { neg, mant: m, exp: e, prec }
    }

    /// Exact value with the given nominal precision, without rounding.
    fn exact_parts(neg: bool, mant: BigUint, exp: i64, prec: Precision) -> BigFloat {
        if mant.is_zero() {
            return BigFloat::zero(prec);
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        BigFloat { neg, mant: mant >> tz, exp: exp + tz as i64, prec }
    }

    pub fn from_i64(v: i64, prec: Precision) -> BigFloat {
        BigFloat::from_parts(v < 0, BigUint::from(v.unsigned_abs()), 0, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: Precision) -> BigFloat {
        BigFloat::from_parts(v.sign() == Sign::Minus, v.magnitude().clone(), 0, prec)
    }

    /// Correctly rounded `num / den`. Panics when `den` is zero.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: Precision) -> BigFloat {
        assert!(!den.is_zero(), "division by zero");
        if num.is_zero() {
            return BigFloat::zero(prec);
        }
        let neg = (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus);
        div_parts(neg, num.magnitude(), 0, den.magnitude(), 0, prec)
    }

    /// Exact conversion of a finite double, then rounded to `prec`.
    pub fn from_f64(x: f64, prec: Precision) -> BigFloat {
        assert!(x.is_finite(), "cannot convert a non-finite double");
        if x == 0.0 {
            return BigFloat::zero(prec);
        }
        let bits = x.to_bits();
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 { (frac, -1074) } else { (frac | (1u64 << 52), biased - 1075) };
        BigFloat::from_parts(x < 0.0, BigUint::from(m), e, prec)
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Same value with a different nominal precision; rounds when narrowing.
    pub fn round_to(&self, prec: Precision) -> BigFloat {
        if self.mant.bits() <= prec.mantissa_bits() {
            let mut r = self.clone();
            r.prec = prec;
            r
        } else {
            BigFloat::from_parts(self.neg, self.mant.clone(), self.exp, prec)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Number of significant bits actually in use.
    pub fn significant_bits(&self) -> u64 {
        self.mant.bits()
    }

    pub fn scale(&self) -> Scale {
        if self.is_zero() {
            Scale::NegInf
        } else {
            Scale::Finite(self.top())
        }
    }

    fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    pub fn neg(&self) -> BigFloat {
        let mut r = self.clone();
        if !r.is_zero() {
            r.neg = !r.neg;
        }
        r
    }

    pub fn abs(&self) -> BigFloat {
        let mut r = self.clone();
        r.neg = false;
        r
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> BigFloat {
        let mut r = self.clone();
        if !r.is_zero() {
            r.exp += k;
        }
        r
    }

    pub fn add(&self, other: &BigFloat, prec: Precision) -> BigFloat {
        let (neg, mant, exp) = add_parts(self, other, false, Some(prec.mantissa_bits()));
        BigFloat::from_parts(neg, mant, exp, prec)
    }

    pub fn sub(&self, other: &BigFloat, prec: Precision) -> BigFloat {
        let (neg, mant, exp) = add_parts(self, other, true, Some(prec.mantissa_bits()));
        BigFloat::from_parts(neg, mant, exp, prec)
    }

    pub fn mul(&self, other: &BigFloat, prec: Precision) -> BigFloat {
        if self.is_zero() || other.is_zero() {
            return BigFloat::zero(prec);
        }
        BigFloat::from_parts(self.neg != other.neg, &self.mant * &other.mant, self.exp + other.exp, prec)
    }

    /// Correctly rounded quotient. Panics when `other` is zero.
    pub fn div(&self, other: &BigFloat, prec: Precision) -> BigFloat {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return BigFloat::zero(prec);
        }
        div_parts(self.neg != other.neg, &self.mant, self.exp, &other.mant, other.exp, prec)
    }

    /// Correctly rounded square root. Panics on negative input.
    pub fn sqrt(&self, prec: Precision) -> BigFloat {
        assert!(!self.neg, "square root of a negative number");
        if self.is_zero() {
            return BigFloat::zero(prec);
        }
        let p1 = prec.mantissa_bits() as i64;
        let mut k = (2 * p1 + 4 - self.mant.bits() as i64).max(0);
        if (self.exp - k) % 2 != 0 {
            k += 1;
        }
        let r = (&self.mant << k as u64).sqrt();
        BigFloat::from_parts(false, r, (self.exp - k) / 2, prec)
    }

    /// Exact sum; the nominal precision is the larger of the two.
    pub fn add_exact(&self, other: &BigFloat) -> BigFloat {
        let (neg, mant, exp) = add_parts(self, other, false, None);
        BigFloat::exact_parts(neg, mant, exp, self.prec.max(other.prec))
    }

    pub fn sub_exact(&self, other: &BigFloat) -> BigFloat {
        let (neg, mant, exp) = add_parts(self, other, true, None);
        BigFloat::exact_parts(neg, mant, exp, self.prec.max(other.prec))
    }

    pub fn mul_exact(&self, other: &BigFloat) -> BigFloat {
        if self.is_zero() || other.is_zero() {
            return BigFloat::zero(self.prec.max(other.prec));
        }
        BigFloat {
            neg: self.neg != other.neg,
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
            prec: self.prec.max(other.prec),
        }
    }

    /// Scale of `self + other`, computed without materializing the full sum.
    pub fn sum_scale(&self, other: &BigFloat) -> Scale {
        let p1 = self.mant.bits().max(other.mant.bits()).max(2);
        let (_, mant, exp) = add_parts(self, other, false, Some(p1));
        if mant.is_zero() {
            Scale::NegInf
        } else {
            Scale::Finite(exp + mant.bits() as i64)
        }
    }

    pub fn cmp_abs(&self, other: &BigFloat) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ta, tb) = (self.top(), other.top());
        if ta != tb {
            return ta.cmp(&tb);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }

    /// The next number of magnitude larger than `self` on the `p`-bit grid.
    /// `self` must be representable at `p`.
    pub fn next_away_from_zero(&self, p: Precision) -> BigFloat {
        assert!(!self.is_zero(), "zero has no neighbour on the grid");
        let p1 = p.mantissa_bits();
        let bits = self.mant.bits();
        assert!(bits <= p1, "value is not representable at the requested precision");
        let shift = p1 - bits;
        let m = (&self.mant << shift) + 1u32;
        BigFloat::exact_parts(self.neg, m, self.exp - shift as i64, p)
    }

    /// The next number of magnitude smaller than `self` on the `p`-bit grid.
    pub fn next_toward_zero(&self, p: Precision) -> BigFloat {
        assert!(!self.is_zero(), "zero has no neighbour on the grid");
        let p1 = p.mantissa_bits();
        let bits = self.mant.bits();
        assert!(bits <= p1, "value is not representable at the requested precision");
        let shift = p1 - bits;
        let m = &self.mant << shift;
        if m == BigUint::one() << (p1 - 1) {
            let m = (BigUint::one() << p1) - 1u32;
            BigFloat::exact_parts(self.neg, m, self.exp - shift as i64 - 1, p)
        } else {
            BigFloat::exact_parts(self.neg, m - 1u32, self.exp - shift as i64, p)
        }
    }

    /// Approximate `f64` value; saturates to infinity or zero out of range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (m, e) = self.frexp();
        let v = ldexp(m, e);
        if self.neg {
            -v
        } else {
            v
        }
    }

    /// `|self| ≈ m * 2^e` with `m` in `[0.5, 1)`, accurate to about 53 bits.
    pub fn frexp(&self) -> (f64, i64) {
        let bits = self.mant.bits();
        let (top, shift) = if bits > 64 {
            ((&self.mant >> (bits - 64)).to_u64().unwrap(), (bits - 64) as i64)
        } else {
            (self.mant.to_u64().unwrap(), 0)
        };
        let (m, e) = frexp(top as f64);
        (m, e + self.exp + shift)
    }

    pub fn magnitude(&self) -> Magnitude {
        if self.is_zero() {
            return Magnitude::ZERO;
        }
        let (m, e) = self.frexp();
        Magnitude::new(m, e)
    }

    /// `log2 |self|` as a double, `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        self.magnitude().log2()
    }

    /// Largest integer not above `self`.
    pub fn floor_int(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let sign = if self.neg { Sign::Minus } else { Sign::Plus };
        if self.exp >= 0 {
            return BigInt::from_biguint(sign, &self.mant << self.exp as u64);
        }
        let shift = (-self.exp) as u64;
        let q = &self.mant >> shift;
        let exact = self.mant.trailing_zeros().unwrap_or(0) >= shift;
        let q = BigInt::from_biguint(Sign::Plus, q);
        if self.neg {
            if exact {
                -q
            } else {
                -q - 1
            }
        } else {
            q
        }
    }

    /// Exact value as a rational `num / den` with `den` a power of two.
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        let sign = if self.neg { Sign::Minus } else { Sign::Plus };
        if self.exp >= 0 {
            (BigInt::from_biguint(sign, &self.mant << self.exp as u64), BigInt::one())
        } else {
            (BigInt::from_biguint(sign, self.mant.clone()), BigInt::one() << (-self.exp) as u64)
        }
    }
}

/// Sum of `a` and `±b`.
///
/// With `target = Some(P)` the smaller operand may be replaced by its
/// round-to-odd image on a grid fine enough that rounding the result to `P`
/// bits, and its scale, are unaffected. With `None` the sum is exact.
fn add_parts(a: &BigFloat, b: &BigFloat, negate_b: bool, target: Option<u64>) -> (bool, BigUint, i64) {
    let bneg = b.neg != negate_b;
    if b.is_zero() {
        return (a.neg, a.mant.clone(), a.exp);
    }
    if a.is_zero() {
        return (bneg, b.mant.clone(), b.exp);
    }
    let (xn, x, yn, y) = if a.top() >= b.top() { (a.neg, a, bneg, b) } else { (bneg, b, a.neg, a) };
    let (xt, yt) = (x.top(), y.top());
    let mut ym = std::borrow::Cow::Borrowed(&y.mant);
    let mut ye = y.exp;
    if let Some(p1) = target {
        if yt <= xt - 2 {
            let l = x.exp.min(xt - p1 as i64 - 3) - 2;
            if ye < l {
                let shift = (l - ye) as u64;
                let inexact = y.mant.trailing_zeros().unwrap_or(0) < shift;
                let mut t = &y.mant >> shift;
                if inexact {
                    t |= BigUint::one();
                }
                ym = std::borrow::Cow::Owned(t);
                ye = l;
            }
        }
    }
    let e = x.exp.min(ye);
    let xa = &x.mant << (x.exp - e) as u64;
    let ya = ym.as_ref() << (ye - e) as u64;
    if xn == yn {
        (xn, xa + ya, e)
    } else {
        match xa.cmp(&ya) {
            Ordering::Greater => (xn, xa - ya, e),
            Ordering::Less => (yn, ya - xa, e),
            Ordering::Equal => (false, BigUint::zero(), 0),
        }
    }
}

fn div_parts(neg: bool, ma: &BigUint, ea: i64, mb: &BigUint, eb: i64, prec: Precision) -> BigFloat {
    let p1 = prec.mantissa_bits() as i64;
    let k = (p1 + 2 + mb.bits() as i64 - ma.bits() as i64).max(0);
    let q = (ma << k as u64).div_floor(mb);
    BigFloat::from_parts(neg, q, ea - eb - k, prec)
}

impl PartialEq for BigFloat {
    /// Value equality; the nominal precision is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.neg == other.neg && self.exp == other.exp && self.mant == other.mant
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = if self.is_zero() {
            0
        } else if self.neg {
            -1
        } else {
            1
        };
        let sb = if other.is_zero() {
            0
        } else if other.neg {
            -1
        } else {
            1
        };
        if sa != sb {
            return sa.cmp(&sb);
        }
        let c = self.cmp_abs(other);
        if sa < 0 {
            c.reverse()
        } else {
            c
        }
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({}{} * 2^{}, p={})", if self.neg { "-" } else { "" }, self.mant, self.exp, self.prec)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::decimal::format_shortest(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    /// Round a rational to `P` bits by brute force: scan the two grid
    /// neighbours and pick the closer one, ties away from zero.
    fn oracle_round(x: &BigRational, prec: Precision) -> BigRational {
        if x.is_zero() {
            return x.clone();
        }
        let neg = x < &BigRational::zero();
        let ax = if neg { -x.clone() } else { x.clone() };
        let p1 = prec.mantissa_bits() as i64;
        // find e with 2^(p1-1) <= ax / 2^e < 2^p1
        let mut e: i64 = 0;
        let two = BigRational::from_integer(BigInt::from(2));
        let lo = BigRational::from_integer(BigInt::one() << (p1 - 1) as u64);
        let hi = BigRational::from_integer(BigInt::one() << p1 as u64);
        let mut y = ax.clone();
        while y >= hi {
            y /= &two;
            e += 1;
        }
        while y < lo {
            y *= &two;
            e -= 1;
        }
        let fl = y.floor();
        let frac = &y - &fl;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let r = if frac >= half { fl + BigRational::one() } else { fl };
        let r = if e >= 0 {
            r * BigRational::from_integer(BigInt::one() << e as u64)
        } else {
            r / BigRational::from_integer(BigInt::one() << (-e) as u64)
        };
        if neg {
            -r
        } else {
            r
        }
    }

    fn ratio(x: &BigFloat) -> BigRational {
        let (n, d) = x.to_ratio();
        BigRational::new(n, d)
    }

    fn arb_float(max_bits: u32) -> impl Strategy<Value = BigFloat> {
        (any::<bool>(), 0u64..(1u64 << max_bits), -40i64..40)
            .prop_map(|(neg, m, e)| BigFloat::from_parts(neg, BigUint::from(m), e, Precision::new(64).unwrap()))
    }

    #[test]
    fn ties_round_away_from_zero() {
        // 0b1011 at 3 bits (p = 2) is a tie between 0b101 and 0b110
        let x = BigFloat::from_parts(false, BigUint::from(0b1011u32), 0, p(2));
        assert_eq!(x, BigFloat::from_i64(12, p(8)));
        let y = BigFloat::from_parts(true, BigUint::from(0b1011u32), 0, p(2));
        assert_eq!(y, BigFloat::from_i64(-12, p(8)));
        let z = BigFloat::from_parts(false, BigUint::from(0b1001u32), 0, p(2));
        assert_eq!(z, BigFloat::from_i64(10, p(8)));
    }

    #[test]
    fn scale_matches_definition() {
        assert_eq!(BigFloat::from_i64(1, p(10)).scale(), Scale::Finite(1));
        assert_eq!(BigFloat::from_f64(0.75, p(10)).scale(), Scale::Finite(0));
        assert_eq!(BigFloat::from_i64(8, p(10)).scale(), Scale::Finite(4));
        assert_eq!(BigFloat::zero(p(10)).scale(), Scale::NegInf);
    }

    #[test]
    fn rounding_carry_crosses_binade() {
        // 0b1111 at p = 2 rounds up to 16
        let x = BigFloat::from_parts(false, BigUint::from(15u32), 0, p(2));
        assert_eq!(x, BigFloat::from_i64(16, p(2)));
        assert_eq!(x.scale(), Scale::Finite(5));
    }

    #[test]
    fn division_and_sqrt_known_values() {
        let one = BigFloat::one(p(60));
        let three = BigFloat::from_i64(3, p(60));
        let third = one.div(&three, p(60));
        let back = BigFloat::from_ratio(&BigInt::from(1), &BigInt::from(3), p(60));
        assert_eq!(third, back);
        let two = BigFloat::from_i64(2, p(52));
        assert_eq!(two.sqrt(p(52)).to_f64(), 2f64.sqrt());
        let nine = BigFloat::from_i64(9, p(20));
        assert_eq!(nine.sqrt(p(20)), three);
    }

    #[test]
    fn floor_int_handles_signs() {
        let x = BigFloat::from_f64(-2.5, p(10));
        assert_eq!(x.floor_int(), BigInt::from(-3));
        assert_eq!(BigFloat::from_f64(2.5, p(10)).floor_int(), BigInt::from(2));
        assert_eq!(BigFloat::from_f64(-2.0, p(10)).floor_int(), BigInt::from(-2));
    }

    #[test]
    fn grid_neighbours() {
        let x = BigFloat::from_i64(8, p(3));
        assert_eq!(x.next_away_from_zero(p(3)), BigFloat::from_i64(9, p(3)));
        assert_eq!(x.next_toward_zero(p(3)), BigFloat::from_f64(7.5, p(3)));
    }

    proptest! {
        #[test]
        fn add_is_correctly_rounded(a in arb_float(62), b in arb_float(62), bits in 1u32..40) {
            let prec = p(bits);
            let got = a.add(&b, prec);
            let want = oracle_round(&(ratio(&a) + ratio(&b)), prec);
            prop_assert_eq!(ratio(&got), want);
        }

        #[test]
        fn add_with_wide_gap_is_correctly_rounded(a in arb_float(62), b in arb_float(62), gap in 0i64..200, bits in 1u32..40) {
            let prec = p(bits);
            let b = b.mul_pow2(-gap);
            let got = a.sub(&b, prec);
            let want = oracle_round(&(ratio(&a) - ratio(&b)), prec);
            prop_assert_eq!(ratio(&got), want);
            prop_assert_eq!(a.sum_scale(&b.neg()), a.sub_exact(&b).scale());
        }

        #[test]
        fn mul_div_are_correctly_rounded(a in arb_float(62), b in arb_float(62), bits in 1u32..70) {
            let prec = p(bits);
            prop_assert_eq!(ratio(&a.mul(&b, prec)), oracle_round(&(ratio(&a) * ratio(&b)), prec));
            if !b.is_zero() {
                prop_assert_eq!(ratio(&a.div(&b, prec)), oracle_round(&(ratio(&a) / ratio(&b)), prec));
            }
        }

        #[test]
        fn f64_round_trip(x in proptest::num::f64::NORMAL) {
            let b = BigFloat::from_f64(x, p(52));
            prop_assert_eq!(b.to_f64(), x);
        }

        #[test]
        fn sum_scale_agrees_with_exact(a in arb_float(62), b in arb_float(62)) {
            prop_assert_eq!(a.sum_scale(&b), a.add_exact(&b).scale());
        }
    }
}
