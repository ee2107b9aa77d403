use crate::arith::{BigComplex, Precision, Scale};
use crate::cover::{build_cover_counted, ConcaveCover, ScaleSequence};

use super::{EngineError, Polynomial};

/// A polynomial prepared for repeated evaluation at precision `p`.
///
/// Leading zero coefficients are factored out as `z^shift`; everything else
/// refers to the reduced polynomial `z^-shift P(z)`.
#[derive(Debug, Clone)]
pub struct PreconditionedPoly {
    pub(crate) coeffs: Vec<BigComplex>,
    pub(crate) log2_abs: Vec<f64>,
    pub(crate) scales: ScaleSequence,
    pub(crate) cover: ConcaveCover,
    pub(crate) good: Vec<bool>,
    pub(crate) good_list: Vec<usize>,
    pub(crate) prec: Precision,
    pub(crate) shift: usize,
    pub(crate) drop: i64,
    /// False when rounding to `p` changed some coefficient.
    pub(crate) exact_coefficients: bool,
    pub(crate) operations: u64,
}

/// Drop distance `p + s(d) + 3`, with `s(0)` read as `s(1)`.
pub(crate) fn drop_for(p: Precision, degree: usize) -> i64 {
    let sd = Scale::of_usize(degree.max(1)).finite().unwrap();
    p.get() as i64 + sd + 3
}

pub fn precondition(poly: &Polynomial, p: Precision) -> Result<PreconditionedPoly, EngineError> {
    let (coeffs, shift, exact) = reduce(poly, p);
    let scales = ScaleSequence::new(coeffs.iter().map(|c| c.scale()).collect())?;
    let (cover, stats) = build_cover_counted(&scales)?;
    Ok(finish(coeffs, scales, cover, stats.comparisons(), p, shift, exact))
}

fn reduce(poly: &Polynomial, p: Precision) -> (Vec<BigComplex>, usize, bool) {
    let shift = poly.valuation();
    let mut exact = true;
    let coeffs = poly.coefficients()[shift..]
        .iter()
        .map(|c| {
            let r = c.round_to(p);
            exact &= r == *c;
            r
        })
        .collect();
    (coeffs, shift, exact)
}

fn finish(
    coeffs: Vec<BigComplex>,
    scales: ScaleSequence,
    cover: ConcaveCover,
    cover_ops: u64,
    p: Precision,
    shift: usize,
    exact: bool,
) -> PreconditionedPoly {
    let d = scales.degree();
    let drop = drop_for(p, d);
    let good: Vec<bool> = (0..=d)
        .map(|k| match scales.get(k) {
            Scale::NegInf => false,
            Scale::Finite(s) => cover.within_drop(k, s, drop),
        })
        .collect();
    let good_list = (0..=d).filter(|&k| good[k]).collect();
    PreconditionedPoly {
        log2_abs: coeffs.iter().map(|c| c.log2_abs()).collect(),
        coeffs,
        scales,
        cover,
        good,
        good_list,
        prec: p,
        shift,
        drop,
        exact_coefficients: exact,
        operations: cover_ops + (d as u64 + 1),
    }
}

impl PreconditionedPoly {
    /// Prepare `poly` again at a new precision. The cover is reused unless
    /// rounding moved some coefficient across a power of two.
    pub fn reprecondition(&self, poly: &Polynomial, p: Precision) -> Result<PreconditionedPoly, EngineError> {
        let (coeffs, shift, exact) = reduce(poly, p);
        let same = shift == self.shift
            && coeffs.len() == self.coeffs.len()
            && coeffs.iter().zip(self.scales.entries()).all(|(c, s)| c.scale() == *s);
        if !same {
            return precondition(poly, p);
        }
        Ok(finish(coeffs, self.scales.clone(), self.cover.clone(), 0, p, shift, exact))
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Degree of the original polynomial.
    pub fn degree(&self) -> usize {
        self.shift + self.coeffs.len() - 1
    }

    pub fn valuation_shift(&self) -> usize {
        self.shift
    }

    /// Rounded coefficients of the reduced polynomial.
    pub fn reduced_coefficients(&self) -> &[BigComplex] {
        &self.coeffs
    }

    pub fn cover(&self) -> &ConcaveCover {
        &self.cover
    }

    pub fn scales(&self) -> &ScaleSequence {
        &self.scales
    }

    pub fn drop_bits(&self) -> i64 {
        self.drop
    }

    /// Whether original index `k` is in the good set.
    pub fn is_good(&self, k: usize) -> bool {
        k >= self.shift && self.good.get(k - self.shift).copied().unwrap_or(false)
    }

    /// Good indices in the original numbering.
    pub fn good_indices(&self) -> Vec<usize> {
        self.good_list.iter().map(|k| k + self.shift).collect()
    }

    /// Cover comparisons plus good-set tests performed while preparing.
    pub fn operation_count(&self) -> u64 {
        self.operations
    }
}
