//! Decimal text to and from [`BigFloat`].

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Pow, Zero};
use thiserror::Error;

use super::float::BigFloat;
use super::scale::Precision;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty number")]
    Empty,
    #[error("malformed number {0:?}")]
    Malformed(String),
    #[error("exponent out of range in {0:?}")]
    ExponentRange(String),
}

const MAX_DECIMAL_EXPONENT: i64 = 10_000_000;

/// Parse a decimal literal such as `-12.5`, `3e-7` or `.25E+2`, rounding
/// the exact decimal value once to `prec`.
pub fn parse_decimal(text: &str, prec: Precision) -> Result<BigFloat, ParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseError::Empty);
    }
    let bad = || ParseError::Malformed(s.to_string());
    let (neg, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exp_part) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], Some(&body[i + 1..])),
        None => (body, None),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut exp10: i64 = match exp_part {
        None => 0,
        Some(e) => {
            let digits = e.strip_prefix(['+', '-']).unwrap_or(e);
            if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            e.parse::<i64>().map_err(|_| ParseError::ExponentRange(s.to_string()))?
        }
    };
    exp10 -= frac_part.len() as i64;
    if exp10.abs() > MAX_DECIMAL_EXPONENT {
        return Err(ParseError::ExponentRange(s.to_string()));
    }
    let digits: String = int_part.chars().chain(frac_part.chars()).collect();
    let m = BigUint::parse_bytes(digits.as_bytes(), 10).ok_or_else(bad)?;
    Ok(from_decimal_parts(neg, m, exp10, prec))
}

/// Round `±m * 10^e` to `prec`.
pub fn from_decimal_parts(neg: bool, m: BigUint, e: i64, prec: Precision) -> BigFloat {
    if m.is_zero() {
        return BigFloat::zero(prec);
    }
    let sign = if neg { Sign::Minus } else { Sign::Plus };
    if e >= 0 {
        let v = m * pow10(e as u64);
        BigFloat::from_bigint(&BigInt::from_biguint(sign, v), prec)
    } else {
        let num = BigInt::from_biguint(sign, m);
        let den = BigInt::from_biguint(Sign::Plus, pow10((-e) as u64));
        BigFloat::from_ratio(&num, &den, prec)
    }
}

fn pow10(n: u64) -> BigUint {
    BigUint::from(10u32).pow(n)
}

/// `n` significant decimal digits of `|x|`, correctly rounded with ties away
/// from zero. Returns the digits as an integer and the decimal exponent of
/// the leading digit.
pub fn decimal_digits(x: &BigFloat, n: u32) -> (BigUint, i64) {
    assert!(!x.is_zero() && n > 0);
    let (num0, den0) = x.to_ratio();
    let num0 = num0.magnitude().clone();
    let den0 = den0.magnitude().clone();
    let mut k = (x.log2_abs() * std::f64::consts::LOG10_2).floor() as i64;
    let lo = pow10(n as u64 - 1);
    let hi = pow10(n as u64);
    loop {
        let s = n as i64 - 1 - k;
        let (num, den) =
            if s >= 0 { (&num0 * pow10(s as u64), den0.clone()) } else { (num0.clone(), &den0 * pow10((-s) as u64)) };
        let d: BigUint = ((num << 1u32) + &den) / (den << 1u32);
        if d >= hi {
            k += 1;
        } else if d < lo {
            k -= 1;
        } else {
            return (d, k);
        }
    }
}

/// Shortest decimal string that parses back to exactly `x` at its precision.
pub fn format_shortest(x: &BigFloat) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let prec = x.precision();
    let neg = x.is_negative();
    let round_trips = |n: u32| {
        let (d, k) = decimal_digits(x, n);
        let back = from_decimal_parts(neg, d.clone(), k - n as i64 + 1, prec);
        (back == *x, d, k)
    };
    let max_n = (prec.mantissa_bits() as f64 * std::f64::consts::LOG10_2).ceil() as u32 + 2;
    let (mut lo, mut hi) = (1u32, max_n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if round_trips(mid).0 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let (ok, d, k) = round_trips(lo);
    let (d, k) = if ok {
        (d, k)
    } else {
        let (_, d, k) = round_trips(max_n);
        (d, k)
    };
    render(neg, &d.to_string(), k)
}

fn render(neg: bool, digits: &str, k: i64) -> String {
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let len = digits.len() as i64;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if (-7..21).contains(&k) {
        if k >= 0 {
            if len <= k + 1 {
                out.push_str(digits);
                out.extend(std::iter::repeat_n('0', (k + 1 - len) as usize));
            } else {
                out.push_str(&digits[..(k + 1) as usize]);
                out.push('.');
                out.push_str(&digits[(k + 1) as usize..]);
            }
        } else {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-k - 1) as usize));
            out.push_str(digits);
        }
    } else {
        out.push_str(&digits[..1]);
        if len > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push('e');
        out.push_str(&k.to_string());
    }
    out
}
