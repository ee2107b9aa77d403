use crate::arith::{BigComplex, Precision};

use super::EngineError;

/// Dense polynomial `a_0 + a_1 z + ... + a_d z^d` with complex coefficients
/// stored at one precision. The leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigComplex>,
    prec: Precision,
}

impl Polynomial {
    /// Rounds every coefficient to `prec` and drops trailing zero
    /// coefficients.
    pub fn new(coeffs: Vec<BigComplex>, prec: Precision) -> Result<Polynomial, EngineError> {
        let mut coeffs: Vec<BigComplex> = coeffs.into_iter().map(|c| c.round_to(prec)).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(EngineError::ZeroPolynomial);
        }
        Ok(Polynomial { coeffs, prec })
    }

    /// Real coefficients given as doubles; convenient in tests.
    pub fn from_f64(coeffs: &[f64], prec: Precision) -> Result<Polynomial, EngineError> {
        Polynomial::new(coeffs.iter().map(|&c| BigComplex::from_f64(c, 0.0, prec)).collect(), prec)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigComplex] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> &BigComplex {
        &self.coeffs[k]
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Number of leading zero coefficients, i.e. the largest `k` with
    /// `z^k | P`.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn round_to(&self, prec: Precision) -> Polynomial {
        Polynomial::new(self.coeffs.clone(), prec).expect("rounding keeps the leading coefficient nonzero")
    }

    pub fn into_coefficients(self) -> Vec<BigComplex> {
        self.coeffs
    }
}
