//! Timing and accuracy comparison of lazy evaluation against Hörner.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::arith::{BigComplex, Precision};
use crate::engine::{evaluate, horner_reference, precondition, EngineError, Polynomial};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkReport {
    pub degree: usize,
    pub points: usize,
    pub precision: u32,
    /// Median over two Hörner passes across all points.
    pub horner_seconds: f64,
    pub precondition_seconds: f64,
    /// Median over the lazy evaluation passes.
    pub evaluation_seconds: f64,
    /// Hörner time over preconditioning plus one evaluation pass.
    pub single_gain: f64,
    /// Hörner time over one evaluation pass.
    pub asymptotic_gain: f64,
    pub mean_kept: f64,
    /// Counts of `exact_bits(lazy) - exact_bits(Hörner)` against a
    /// reference at `p + 64`.
    pub bias: BTreeMap<i64, usize>,
}

impl BenchmarkReport {
    pub fn mean_abs_bias(&self) -> f64 {
        let n: usize = self.bias.values().sum();
        let s: f64 = self.bias.iter().map(|(&k, &c)| k.unsigned_abs() as f64 * c as f64).sum();
        s / n.max(1) as f64
    }
}

/// Number of leading bits of `value` that agree with `reference`:
/// `floor(log2 |ref| - log2 |value - ref|)`, clamped to `[0, p + 1]`.
pub fn exact_bits(value: &BigComplex, reference: &BigComplex, p: Precision) -> i64 {
    let cap = p.get() as i64 + 1;
    let w = reference.precision().max(value.precision()).plus(8);
    let err = value.sub(reference, w).log2_abs();
    if err == f64::NEG_INFINITY {
        return cap;
    }
    let r = reference.log2_abs();
    if r == f64::NEG_INFINITY {
        return 0;
    }
    ((r - err).floor() as i64).clamp(0, cap)
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Runs Hörner twice and lazy evaluation `repetitions` times (at least 3)
/// over all points.
pub fn benchmark(
    poly: &Polynomial,
    points: &[BigComplex],
    p: Precision,
    repetitions: usize,
) -> Result<BenchmarkReport, EngineError> {
    let poly = poly.round_to(p);
    let mut horner_times = Vec::new();
    let mut horner_values = Vec::new();
    for _ in 0..2 {
        let t = Instant::now();
        horner_values = points.iter().map(|z| horner_reference(&poly, z, p)).collect();
        horner_times.push(t.elapsed().as_secs_f64());
    }
    let t = Instant::now();
    let pp = precondition(&poly, p)?;
    let precondition_seconds = t.elapsed().as_secs_f64();
    let mut eval_times = Vec::new();
    let mut reports = Vec::new();
    for _ in 0..repetitions.max(3) {
        let t = Instant::now();
        reports = points.iter().map(|z| evaluate(&pp, z)).collect();
        eval_times.push(t.elapsed().as_secs_f64());
    }
    let reference_prec = p.plus(64);
    let mut bias = BTreeMap::new();
    for ((z, h), r) in points.iter().zip(&horner_values).zip(&reports) {
        let reference = horner_reference(&poly, &z.round_to(reference_prec), reference_prec);
        let delta = exact_bits(&r.value, &reference, p) - exact_bits(h, &reference, p);
        *bias.entry(delta).or_insert(0) += 1;
    }
    let horner_seconds = median(horner_times);
    let evaluation_seconds = median(eval_times);
    let mean_kept = reports.iter().map(|r| r.kept_terms as f64).sum::<f64>() / points.len().max(1) as f64;
    Ok(BenchmarkReport {
        degree: poly.degree(),
        points: points.len(),
        precision: p.get(),
        horner_seconds,
        precondition_seconds,
        evaluation_seconds,
        single_gain: horner_seconds / (precondition_seconds + evaluation_seconds),
        asymptotic_gain: horner_seconds / evaluation_seconds,
        mean_kept,
        bias,
    })
}
