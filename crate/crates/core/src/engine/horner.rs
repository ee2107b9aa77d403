use crate::arith::{BigComplex, Magnitude, Precision, Scale};

use super::evaluate::{build_report, EvalReport};
use super::Polynomial;

/// Plain Hörner recurrence with every operation rounded to `p`.
pub fn horner_reference(poly: &Polynomial, z: &BigComplex, p: Precision) -> BigComplex {
    let c = poly.coefficients();
    let mut acc = c[c.len() - 1].round_to(p);
    for a in c[..c.len() - 1].iter().rev() {
        acc = acc.mul_add(z, a, p);
    }
    acc
}

/// Hörner at precision `max(p, z.prec)` with a running error bound, reported
/// like a lazy evaluation that keeps every term.
pub fn horner_report(poly: &Polynomial, z: &BigComplex, p: Precision) -> EvalReport {
    let prec = p.max(z.precision());
    let unit = Magnitude::pow2(-(prec.get() as i64));
    let c = poly.coefficients();
    let zmag = z.abs_magnitude();
    let mut acc = c[c.len() - 1].round_to(prec);
    let mut err = unit * acc.abs_magnitude();
    for a in c[..c.len() - 1].iter().rev() {
        let prod = acc.mul(z, prec);
        err = err * zmag + unit * prod.abs_magnitude();
        acc = prod.add(a, prec);
        err = err + unit * acc.abs_magnitude();
    }
    let max_scale = max_monomial_scale(poly, z);
    build_report(p, acc, err.scale_by(1.0 + 1e-9), c.len(), max_scale, poly.degree() as u64)
}

fn max_monomial_scale(poly: &Polynomial, z: &BigComplex) -> Scale {
    let lz = z.log2_abs();
    let m = poly
        .coefficients()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(k, a)| a.log2_abs() + if k == 0 { 0.0 } else { k as f64 * lz })
        .fold(f64::NEG_INFINITY, f64::max);
    if m.is_finite() {
        Scale::Finite(m.floor() as i64 + 1)
    } else {
        Scale::NegInf
    }
}
