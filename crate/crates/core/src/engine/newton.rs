use crate::arith::{BigComplex, Cancellation, Magnitude, Scale};

use super::evaluate::{evaluate, finish_report, reduced_sum, working_precision, EvalReport};
use super::powers::PowerCache;
use super::{EngineError, PreconditionedPoly};

/// One Newton step `z - P(z)/P'(z)`.
///
/// Both values are computed without their common power of `z`, so the
/// quotient never forms `z^d` when the valuations are large. The report is
/// the evaluation of `P` with the worse cancellation of the two.
pub fn newton_step(
    pp: &PreconditionedPoly,
    pp_deriv: &PreconditionedPoly,
    z: &BigComplex,
) -> Result<(BigComplex, EvalReport), EngineError> {
    if pp.prec != pp_deriv.prec {
        return Err(EngineError::PrecisionMismatch(pp.prec.get(), pp_deriv.prec.get()));
    }
    let prec = working_precision(pp, z);
    if z.is_zero() {
        let num = evaluate(pp, z);
        let den = evaluate(pp_deriv, z);
        if den.value.is_zero() {
            return Err(EngineError::DerivativeZero);
        }
        let next = num.value.div(&den.value, prec).neg();
        return Ok((next, worse(num, &den, pp.prec.get())));
    }
    let unit = Magnitude::pow2(-(prec.get() as i64));
    let mut cache = PowerCache::new(z, prec, unit);
    let num = reduced_sum(pp, &mut cache, prec, unit);
    let den = reduced_sum(pp_deriv, &mut cache, prec, unit);
    if den.sum.is_zero() {
        return Err(EngineError::DerivativeZero);
    }
    let m = num.exponent.min(den.exponent);
    let top = cache.get(1).0.clone();
    let lift = |cache: &mut PowerCache<'_>, s: &BigComplex, e: usize| {
        if e == m {
            s.clone()
        } else {
            s.mul(cache.get(e - m).0, prec)
        }
    };
    let q1 = lift(&mut cache, &num.sum, num.exponent);
    let q2 = lift(&mut cache, &den.sum, den.exponent);
    let next = top.sub(&q1.div(&q2, prec), prec);

    let den_report = finish_report(pp_deriv, den, &mut cache, prec, unit);
    let num_report = finish_report(pp, num, &mut cache, prec, unit);
    Ok((next, worse(num_report, &den_report, pp.prec.get())))
}

fn worse(num: EvalReport, den: &EvalReport, p: u32) -> EvalReport {
    if den.canceled <= num.canceled {
        return num;
    }
    let mut r = num;
    r.canceled = den.canceled;
    r.trusted_bits = match den.canceled {
        Cancellation::Bits(c) => (p as u64).saturating_sub(c) as u32,
        Cancellation::Infinite => 0,
    };
    r
}

/// Outcome of Newton iteration from one start.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonOutcome {
    pub root: BigComplex,
    pub iterations: usize,
    pub converged: bool,
    pub error: Option<EngineError>,
}

/// Scale beyond which a trajectory is declared divergent.
const ESCAPE_SCALE: i64 = 1 << 20;

/// Iterate Newton steps from each start until the increment satisfies
/// `|dz| <= 2^(s(z) - tol_bits)` or `max_iter` steps have been taken.
pub fn newton_iterate(
    pp: &PreconditionedPoly,
    pp_deriv: &PreconditionedPoly,
    starts: &[BigComplex],
    max_iter: usize,
    tol_bits: i64,
) -> Vec<NewtonOutcome> {
    starts.iter().map(|start| iterate_one(pp, pp_deriv, start.round_to(pp.prec), max_iter.max(1), tol_bits)).collect()
}

fn iterate_one(
    pp: &PreconditionedPoly,
    pp_deriv: &PreconditionedPoly,
    mut z: BigComplex,
    max_iter: usize,
    tol_bits: i64,
) -> NewtonOutcome {
    for it in 1..=max_iter {
        let next = match newton_step(pp, pp_deriv, &z) {
            Ok((next, _)) => next,
            Err(e) => return NewtonOutcome { root: z, iterations: it, converged: false, error: Some(e) },
        };
        let step = next.sub_scale(&z);
        let reference = z.scale().max(next.scale());
        z = next;
        if let Scale::Finite(s) = z.scale() {
            if s > ESCAPE_SCALE {
                return NewtonOutcome { root: z, iterations: it, converged: false, error: None };
            }
        }
        let done = match (step, reference) {
            (Scale::NegInf, _) => true,
            (Scale::Finite(_), Scale::NegInf) => false,
            (Scale::Finite(d), Scale::Finite(r)) => d <= r - tol_bits,
        };
        if done {
            return NewtonOutcome { root: z, iterations: it, converged: true, error: None };
        }
    }
    NewtonOutcome { root: z, iterations: max_iter, converged: false, error: None }
}
