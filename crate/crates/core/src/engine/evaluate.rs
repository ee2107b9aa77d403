use crate::arith::{BigComplex, Cancellation, Magnitude, Precision, Scale};

use super::powers::PowerCache;
use super::PreconditionedPoly;

/// Result of one lazy evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub value: BigComplex,
    /// Number of monomials summed.
    pub kept_terms: usize,
    /// Certified number of leading bits lost: the exact value `P(z)`
    /// satisfies `|P(z) - value| <= 2^(canceled - p - 2) |P(z)|`.
    pub canceled: Cancellation,
    /// `p - canceled`, floored at 0.
    pub trusted_bits: u32,
    /// Scale of the largest kept monomial minus the scale of the value,
    /// clamped to `[0, p]`.
    pub estimated_canceled: u32,
    pub max_monomial_scale: Scale,
    /// Upper bound on `|P(z) - value|`, covering rounding, dropped terms and
    /// coefficient rounding.
    pub error_bound: Magnitude,
    /// Multiplications and multiply-adds performed, powers included.
    pub multiply_adds: u64,
}

/// `z^-e P(z)` restricted to the kept monomials, before the final power.
pub(crate) struct Reduced {
    pub(crate) sum: BigComplex,
    pub(crate) exponent: usize,
    pub(crate) error: Magnitude,
    pub(crate) kept: usize,
    /// `max log2 |a_k z^(k - e)|` over kept terms.
    pub(crate) max_log2: f64,
    pub(crate) ops: u64,
}

pub(crate) fn working_precision(pp: &PreconditionedPoly, z: &BigComplex) -> Precision {
    pp.prec.max(z.precision())
}

/// Kept range of the reduced polynomial as a slice of the good list.
fn kept_range(pp: &PreconditionedPoly, lambda: f64) -> (usize, usize, f64) {
    let (_, n) = pp.cover.argmax_sheared(lambda);
    let (l, r) = pp.cover.band_bounds(lambda, pp.drop as f64);
    let lo = pp.good_list.partition_point(|&k| k < l);
    let hi = pp.good_list.partition_point(|&k| k <= r);
    (lo, hi, n)
}

/// Original indices of the monomials `evaluate` sums at `z`.
pub fn kept_indices(pp: &PreconditionedPoly, z: &BigComplex) -> Vec<usize> {
    if z.is_zero() {
        return if pp.shift == 0 { vec![0] } else { Vec::new() };
    }
    let (lo, hi, _) = kept_range(pp, z.log2_abs());
    pp.good_list[lo..hi].iter().map(|k| k + pp.shift).collect()
}

pub(crate) fn reduced_sum(
    pp: &PreconditionedPoly,
    cache: &mut PowerCache<'_>,
    prec: Precision,
    unit: Magnitude,
) -> Reduced {
    let z = cache.base();
    let lambda = z.log2_abs();
    let (lo, hi, n) = kept_range(pp, lambda);
    let idx = &pp.good_list[lo..hi];
    let l = idx[0];
    let d = pp.coeffs.len() - 1;
    let ops_before = cache.multiplications;

    let top = *idx.last().unwrap();
    let mut acc = pp.coeffs[top].clone();
    let mut err = Magnitude::ZERO;
    let mut steps = 0u64;
    let mut max_log2 = f64::NEG_INFINITY;
    for (j, &k) in idx.iter().enumerate().rev() {
        max_log2 = max_log2.max(pp.log2_abs[k] + (k - l) as f64 * lambda);
        if j + 1 == idx.len() {
            continue;
        }
        let g = idx[j + 1] - k;
        let acc_mag = acc.abs_magnitude();
        let (w, rho) = cache.get(g);
        let zg = w.abs_magnitude() * (Magnitude::ONE + rho.mul_pow2(1));
        let prod = acc.mul(w, prec);
        err = err * zg + acc_mag * rho * zg + unit * prod.abs_magnitude();
        acc = prod.add(&pp.coeffs[k], prec);
        err = err + unit * acc.abs_magnitude();
        steps += 1;
    }

    // slack for λ and the band test being done in doubles
    let margin = 1e-9 * (1.0 + n.abs()) + (d as f64 + 1.0) * 1e-13 * (1.0 + lambda.abs());
    let dropped = (d + 1 - idx.len()) as f64;
    if dropped > 0.0 {
        let t = n - pp.drop as f64 - l as f64 * lambda + margin;
        err = err + Magnitude::from_log2(t).scale_by(dropped);
    }
    if !pp.exact_coefficients {
        let t = n - l as f64 * lambda + margin - pp.prec.get() as f64;
        err = err + Magnitude::from_log2(t).scale_by(d as f64 + 1.0);
    }

    Reduced {
        sum: acc,
        exponent: l + pp.shift,
        error: err,
        kept: idx.len(),
        max_log2,
        ops: steps + cache.multiplications - ops_before,
    }
}

/// Multiply the reduced sum by `z^exponent` and assemble the report.
pub(crate) fn finish_report(
    pp: &PreconditionedPoly,
    red: Reduced,
    cache: &mut PowerCache<'_>,
    prec: Precision,
    unit: Magnitude,
) -> EvalReport {
    let lambda = cache.base().log2_abs();
    let ops_before = cache.multiplications;
    let (value, mut err, mut ops) = if red.exponent == 0 {
        (red.sum, red.error, red.ops)
    } else {
        let (w, rho) = cache.get(red.exponent);
        let ze = w.abs_magnitude() * (Magnitude::ONE + rho.mul_pow2(1));
        let value = red.sum.mul(w, prec);
        let err = red.error * ze + red.sum.abs_magnitude() * rho * ze + unit * value.abs_magnitude();
        (value, err, red.ops + 1)
    };
    ops += cache.multiplications - ops_before;
    err = err.scale_by(1.0 + 1e-9);
    let top = red.max_log2 + red.exponent as f64 * lambda;
    let max_scale = Scale::Finite(top.floor() as i64 + 1);
    build_report(pp.prec, value, err, red.kept, max_scale, ops)
}

pub(crate) fn build_report(
    p: Precision,
    value: BigComplex,
    error_bound: Magnitude,
    kept_terms: usize,
    max_monomial_scale: Scale,
    multiply_adds: u64,
) -> EvalReport {
    let canceled = certified_cancellation(p, &value, error_bound);
    let trusted_bits = match canceled {
        Cancellation::Bits(c) => (p.get() as u64).saturating_sub(c) as u32,
        Cancellation::Infinite => 0,
    };
    let estimated_canceled = match (max_monomial_scale, value.scale()) {
        (_, Scale::NegInf) => p.get(),
        (Scale::Finite(m), Scale::Finite(v)) => (m - v).clamp(0, p.get() as i64) as u32,
        (Scale::NegInf, Scale::Finite(_)) => 0,
    };
    EvalReport {
        value,
        kept_terms,
        canceled,
        trusted_bits,
        estimated_canceled,
        max_monomial_scale,
        error_bound,
        multiply_adds,
    }
}

/// Smallest `c >= 0` with `E <= 2^(c - p - 2) (|v| - E)`, which implies
/// `|P - v| <= 2^(c - p - 2) |P|`.
fn certified_cancellation(p: Precision, value: &BigComplex, err: Magnitude) -> Cancellation {
    if err.is_zero() {
        return Cancellation::Bits(0);
    }
    let v = value.abs_magnitude();
    let room = v.sub_floor(err);
    if room.is_zero() {
        return Cancellation::Infinite;
    }
    let c = (p.get() as f64 + 2.0 + err.log2() - room.log2()).ceil();
    Cancellation::Bits(if c > 0.0 { c as u64 } else { 0 })
}

pub fn evaluate(pp: &PreconditionedPoly, z: &BigComplex) -> EvalReport {
    let prec = working_precision(pp, z);
    if z.is_zero() {
        let value = if pp.shift == 0 { pp.coeffs[0].round_to(prec) } else { BigComplex::zero(prec) };
        let scale = value.scale();
        return build_report(pp.prec, value, zero_point_error(pp), 1, scale, 0);
    }
    let unit = Magnitude::pow2(-(prec.get() as i64));
    let mut cache = PowerCache::new(z, prec, unit);
    let red = reduced_sum(pp, &mut cache, prec, unit);
    finish_report(pp, red, &mut cache, prec, unit)
}

/// Error at `z = 0` comes only from coefficient rounding.
pub(crate) fn zero_point_error(pp: &PreconditionedPoly) -> Magnitude {
    if pp.exact_coefficients || pp.shift > 0 {
        Magnitude::ZERO
    } else {
        pp.coeffs[0].abs_magnitude().mul_pow2(-(pp.prec.get() as i64))
    }
}

/// Evaluate a preconditioned derivative; identical to [`evaluate`].
pub fn evaluate_derivative(pp_deriv: &PreconditionedPoly, z: &BigComplex) -> EvalReport {
    evaluate(pp_deriv, z)
}
