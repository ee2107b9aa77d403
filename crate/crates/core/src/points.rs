//! Generators and transforms for lists of evaluation points.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::transcendental::{cexp, from_polar, sin_cos};
use crate::arith::{BigComplex, BigFloat, Precision, Scale};
use crate::factory::standard_normal;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointsError {
    #[error("lists have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("point count must be at least 1")]
    Empty,
}

fn same_length(a: usize, b: usize) -> Result<(), PointsError> {
    if a == b {
        Ok(())
    } else {
        Err(PointsError::LengthMismatch(a, b))
    }
}

/// Spherical coordinates `(φ, θ)` of `n` points spread evenly over the unit
/// sphere, `φ` being the angle from the pole mapped to `0`.
///
/// `cos φ` takes the stratified values `1 - (2i + 1)/n` and `θ` advances by
/// the golden angle, so areas are matched up to `O(1/n)`.
pub fn sphere(n: usize, prec: Precision) -> Result<Vec<BigComplex>, PointsError> {
    if n == 0 {
        return Err(PointsError::Empty);
    }
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    Ok((0..n)
        .map(|i| {
            let u = (i as f64 + 0.5) / n as f64;
            let phi = (1.0 - 2.0 * u).acos();
            let theta = TAU * (i as f64 * golden).fract();
            BigComplex::from_f64(phi, theta, prec)
        })
        .collect())
}

/// Stereographic image `tan(φ/2) e^{iθ}` of spherical coordinates `(φ, θ)`
/// stored as `φ + iθ`.
pub fn polar(coords: &[BigComplex], prec: Precision) -> Vec<BigComplex> {
    let w = prec.plus(8);
    coords
        .iter()
        .map(|c| {
            let (s, co) = sin_cos(&c.re.mul_pow2(-1), w);
            from_polar(&s.div(&co, w), &c.im, prec)
        })
        .collect()
}

/// `sphere` followed by `polar`.
pub fn sphere_points(n: usize, prec: Precision) -> Result<Vec<BigComplex>, PointsError> {
    Ok(polar(&sphere(n, prec)?, prec))
}

/// `n` reals in arithmetic progression from `a` to `b`, each rounded once.
pub fn unif(n: usize, a: &BigFloat, b: &BigFloat, prec: Precision) -> Result<Vec<BigComplex>, PointsError> {
    if n == 0 {
        return Err(PointsError::Empty);
    }
    if n == 1 {
        return Ok(vec![BigComplex::real(a.round_to(prec))]);
    }
    let m = (n - 1) as i64;
    let den = BigFloat::from_i64(m, prec);
    Ok((0..=m)
        .map(|k| {
            let left = a.mul_exact(&BigFloat::from_i64(m - k, prec));
            let right = b.mul_exact(&BigFloat::from_i64(k, prec));
            BigComplex::real(left.add_exact(&right).div(&den, prec))
        })
        .collect())
}

/// `n` reals drawn uniformly from `[a, b]` with double-precision fractions.
pub fn rand(n: usize, a: &BigFloat, b: &BigFloat, seed: u64, prec: Precision) -> Vec<BigComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = prec.plus(8);
    let width = b.sub(a, w);
    (0..n)
        .map(|_| {
            let u = BigFloat::from_f64(rng.gen::<f64>(), w);
            BigComplex::real(a.add(&width.mul(&u, w), prec))
        })
        .collect()
}

/// `n` standard normal reals, sampled in double precision.
pub fn normal(n: usize, seed: u64, prec: Precision) -> Vec<BigComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| BigComplex::from_f64(standard_normal(&mut rng), 0.0, prec)).collect()
}

/// `re(a_i) + i re(b_j)` for every pair, `a` varying slowest.
pub fn grid(a: &[BigComplex], b: &[BigComplex]) -> Vec<BigComplex> {
    a.iter().flat_map(|x| b.iter().map(move |y| BigComplex::new(x.re.clone(), y.re.clone()))).collect()
}

/// `re(a_i) + i re(b_i)`.
pub fn join(a: &[BigComplex], b: &[BigComplex]) -> Result<Vec<BigComplex>, PointsError> {
    same_length(a.len(), b.len())?;
    Ok(a.iter().zip(b).map(|(x, y)| BigComplex::new(x.re.clone(), y.re.clone())).collect())
}

/// Elementwise products `a_i b_i`.
pub fn tensor(a: &[BigComplex], b: &[BigComplex], prec: Precision) -> Result<Vec<BigComplex>, PointsError> {
    same_length(a.len(), b.len())?;
    Ok(a.iter().zip(b).map(|(x, y)| x.mul(y, prec)).collect())
}

pub fn cat(a: &[BigComplex], b: &[BigComplex]) -> Vec<BigComplex> {
    a.iter().chain(b).cloned().collect()
}

pub fn exp(a: &[BigComplex], prec: Precision) -> Vec<BigComplex> {
    a.iter().map(|z| cexp(z, prec)).collect()
}

/// `x + iy -> x e^{iy}`.
pub fn rot(a: &[BigComplex], prec: Precision) -> Vec<BigComplex> {
    a.iter().map(|z| from_polar(&z.re, &z.im, prec)).collect()
}

pub fn re(a: &[BigComplex]) -> Vec<BigComplex> {
    a.iter().map(|z| BigComplex::real(z.re.clone())).collect()
}

pub fn im(a: &[BigComplex]) -> Vec<BigComplex> {
    a.iter().map(|z| BigComplex::real(z.im.clone())).collect()
}

pub fn conj(a: &[BigComplex]) -> Vec<BigComplex> {
    a.iter().map(BigComplex::conj).collect()
}

/// Pointwise agreement between two lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    /// `max(s(a), s(b)) - s(a - b)` per row, capped at `p`; `p` when the
    /// two values are equal.
    pub agreeing_bits: Vec<u32>,
    /// Rows agreeing on fewer than `p` bits.
    pub mismatches: usize,
}

pub fn compare(a: &[BigComplex], b: &[BigComplex], p: Precision) -> Result<Comparison, PointsError> {
    same_length(a.len(), b.len())?;
    let cap = p.get();
    let agreeing_bits: Vec<u32> = a
        .iter()
        .zip(b)
        .map(|(x, y)| match (x.sub_scale(y), x.scale().max(y.scale())) {
            (Scale::NegInf, _) => cap,
            (Scale::Finite(d), Scale::Finite(m)) => (m - d).clamp(0, cap as i64) as u32,
            (Scale::Finite(_), Scale::NegInf) => unreachable!("a nonzero difference of zeros"),
        })
        .collect();
    let mismatches = agreeing_bits.iter().filter(|&&b| b < cap).count();
    Ok(Comparison { agreeing_bits, mismatches })
}
