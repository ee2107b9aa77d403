//! Polynomial families used for testing and benchmarking, and exact
//! coefficient arithmetic.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::transcendental::{exp2, from_polar};
use crate::arith::{BigComplex, BigFloat, Precision};
use crate::engine::{EngineError, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactoryError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("hyperbolic polynomials have degree 2^(n-1); {0} is not a power of two")]
    HyperbolicDegree(usize),
    #[error("result is the zero polynomial")]
    ZeroResult,
    #[error("root list is empty")]
    NoRoots,
    #[error("operands use different precisions ({0} and {1})")]
    PrecisionMismatch(u32, u32),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Chebyshev,
    Legendre,
    Hermite,
    Laguerre,
    Hyperbolic,
    NormalReal,
    NormalComplex,
    HalfCircleReal,
    HalfCircleComplex,
    FromRoots,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Chebyshev,
        Family::Legendre,
        Family::Hermite,
        Family::Laguerre,
        Family::Hyperbolic,
        Family::NormalReal,
        Family::NormalComplex,
        Family::HalfCircleReal,
        Family::HalfCircleComplex,
        Family::FromRoots,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Chebyshev => "chebyshev",
            Family::Legendre => "legendre",
            Family::Hermite => "hermite",
            Family::Laguerre => "laguerre",
            Family::Hyperbolic => "hyperbolic",
            Family::NormalReal => "normal_real",
            Family::NormalComplex => "normal_complex",
            Family::HalfCircleReal => "half_circle_real",
            Family::HalfCircleComplex => "half_circle_complex",
            Family::FromRoots => "from_roots",
        }
    }

    pub fn is_random(self) -> bool {
        matches!(self, Family::NormalReal | Family::NormalComplex | Family::HalfCircleComplex | Family::FromRoots)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FactoryError;
    fn from_str(s: &str) -> Result<Family, FactoryError> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| FactoryError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub degree: usize,
    /// Seed for random families; 0 when absent.
    pub seed: Option<u64>,
}

impl FamilySpec {
    pub fn new(family: Family, degree: usize) -> FamilySpec {
        FamilySpec { family, degree, seed: None }
    }

    pub fn seeded(family: Family, degree: usize, seed: u64) -> FamilySpec {
        FamilySpec { family, degree, seed: Some(seed) }
    }
}

pub fn generate(spec: FamilySpec, p: Precision) -> Result<Polynomial, FactoryError> {
    let d = spec.degree;
    if d == 0 {
        return Err(FactoryError::ZeroDegree);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.unwrap_or(0));
    let coeffs = match spec.family {
        Family::Chebyshev => rational_poly(&integers(chebyshev(d)), p),
        Family::Legendre => rational_poly(&legendre(d), p),
        Family::Hermite => rational_poly(&integers(hermite(d)), p),
        Family::Laguerre => rational_poly(&laguerre(d), p),
        Family::Hyperbolic => {
            if !d.is_power_of_two() {
                return Err(FactoryError::HyperbolicDegree(d));
            }
            rational_poly(&integers(hyperbolic(d.trailing_zeros() as usize + 1)), p)
        }
        Family::NormalReal => (0..=d).map(|_| BigComplex::from_f64(standard_normal(&mut rng), 0.0, p)).collect(),
        Family::NormalComplex => (0..=d)
            .map(|_| {
                let re = standard_normal(&mut rng);
                BigComplex::from_f64(re, standard_normal(&mut rng), p)
            })
            .collect(),
        Family::HalfCircleReal => (0..=d).map(|n| BigComplex::real(half_circle_coefficient(d, n, p))).collect(),
        Family::HalfCircleComplex => (0..=d)
            .map(|n| {
                let theta = BigFloat::from_f64(rng.gen_range(0.0..TAU), p);
                from_polar(&half_circle_coefficient(d, n, p), &theta, p)
            })
            .collect(),
        Family::FromRoots => {
            let roots: Vec<BigComplex> = (0..d)
                .map(|_| {
                    let r = rng.gen::<f64>().sqrt();
                    let t = rng.gen_range(0.0..TAU);
                    BigComplex::from_f64(r * t.cos(), r * t.sin(), p)
                })
                .collect();
            return from_roots(&roots, p);
        }
    };
    Ok(Polynomial::new(coeffs, p).expect("family polynomials are nonzero"))
}

/// Box–Muller; `u1` is drawn from `(0, 1]`.
pub(crate) fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
}

/// `2^sqrt((n + 1)(d + 1 - n))`.
pub fn half_circle_coefficient(d: usize, n: usize, p: Precision) -> BigFloat {
    let w = p.plus(64);
    let m = BigFloat::from_bigint(&(BigInt::from(n + 1) * BigInt::from(d + 1 - n)), w);
    exp2(&m.sqrt(w), p)
}

fn integers(v: Vec<BigInt>) -> Vec<BigRational> {
    v.into_iter().map(BigRational::from_integer).collect()
}

fn rational_poly(c: &[BigRational], p: Precision) -> Vec<BigComplex> {
    c.iter().map(|q| BigComplex::real(BigFloat::from_ratio(q.numer(), q.denom(), p))).collect()
}

/// `T_n` from `T_{n+1} = 2x T_n - T_{n-1}`.
pub fn chebyshev(n: usize) -> Vec<BigInt> {
    three_term(n, vec![BigInt::one()], vec![BigInt::zero(), BigInt::one()], |_, t, prev| {
        let mut next = shift_up(t, 2);
        sub_into(&mut next, prev, &BigInt::one());
        next
    })
}

/// Physicists' `H_n` from `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn hermite(n: usize) -> Vec<BigInt> {
    three_term(n, vec![BigInt::one()], vec![BigInt::zero(), BigInt::from(2)], |k, h, prev| {
        let mut next = shift_up(h, 2);
        sub_into(&mut next, prev, &BigInt::from(2 * k));
        next
    })
}

fn three_term(
    n: usize,
    p0: Vec<BigInt>,
    p1: Vec<BigInt>,
    step: impl Fn(usize, &[BigInt], &[BigInt]) -> Vec<BigInt>,
) -> Vec<BigInt> {
    if n == 0 {
        return p0;
    }
    let (mut prev, mut cur) = (p0, p1);
    for k in 1..n {
        let next = step(k, &cur, &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `factor * x * t`.
fn shift_up(t: &[BigInt], factor: i64) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero()];
    out.extend(t.iter().map(|c| c * factor));
    out
}

fn sub_into(acc: &mut [BigInt], t: &[BigInt], factor: &BigInt) {
    for (a, c) in acc.iter_mut().zip(t) {
        *a -= c * factor;
    }
}

fn binomials(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// `P_n(x) = 2^-n sum_k (-1)^k C(n,k) C(2n-2k,n) x^(n-2k)`.
pub fn legendre(n: usize) -> Vec<BigRational> {
    let mut c = vec![BigRational::zero(); n + 1];
    let den = BigInt::one() << n;
    let cn = binomials(n);
    for k in 0..=n / 2 {
        let mut v = &cn[k] * binomial(2 * n - 2 * k, n);
        if k % 2 == 1 {
            v = -v;
        }
        c[n - 2 * k] = BigRational::new(v, den.clone());
    }
    c
}

/// `L_n(x) = sum_k (-1)^k C(n,k) x^k / k!`.
pub fn laguerre(n: usize) -> Vec<BigRational> {
    let cn = binomials(n);
    let mut fact = BigInt::one();
    (0..=n)
        .map(|k| {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            let v = if k % 2 == 1 { -cn[k].clone() } else { cn[k].clone() };
            BigRational::new(v, fact.clone())
        })
        .collect()
}

/// `p_n` with `p_1 = z` and `p_{n+1} = p_n^2 + z`; degree `2^(n-1)`.
pub fn hyperbolic(n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..n {
        let mut sq = vec![BigInt::zero(); 2 * p.len() - 1];
        for (i, a) in p.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in p.iter().enumerate() {
                sq[i + j] += a * b;
            }
        }
        sq[1] += 1;
        p = sq;
    }
    p
}

/// Formal derivative; coefficients `j a_j` rounded to the input precision.
pub fn derivative(poly: &Polynomial) -> Result<Polynomial, FactoryError> {
    if poly.degree() == 0 {
        return Err(FactoryError::ZeroResult);
    }
    let p = poly.precision();
    let c = poly.coefficients()[1..]
        .iter()
        .enumerate()
        .map(|(j, a)| a.mul_real(&BigFloat::from_i64(j as i64 + 1, p), p))
        .collect();
    Polynomial::new(c, p).map_err(engine_zero)
}

fn engine_zero(_: EngineError) -> FactoryError {
    FactoryError::ZeroResult
}

fn same_precision(a: &Polynomial, b: &Polynomial) -> Result<Precision, FactoryError> {
    if a.precision() != b.precision() {
        return Err(FactoryError::PrecisionMismatch(a.precision().get(), b.precision().get()));
    }
    Ok(a.precision())
}

fn combine(a: &Polynomial, b: &Polynomial, negate: bool) -> Result<Polynomial, FactoryError> {
    let p = same_precision(a, b)?;
    let n = a.degree().max(b.degree()) + 1;
    let zero = BigComplex::zero(p);
    let c = (0..n)
        .map(|k| {
            let x = a.coefficients().get(k).unwrap_or(&zero);
            let y = b.coefficients().get(k).unwrap_or(&zero);
            let y = if negate { y.neg() } else { y.clone() };
            x.add_exact(&y).round_to(p)
        })
        .collect();
    Polynomial::new(c, p).map_err(engine_zero)
}

pub fn sum(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, FactoryError> {
    combine(a, b, false)
}

pub fn diff(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, FactoryError> {
    combine(a, b, true)
}

/// Schoolbook product, exact then rounded.
pub fn product(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, FactoryError> {
    let p = same_precision(a, b)?;
    let mut c = vec![BigComplex::zero(p); a.degree() + b.degree() + 1];
    for (i, x) in a.coefficients().iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coefficients().iter().enumerate() {
            c[i + j] = c[i + j].add_exact(&x.mul_exact(y));
        }
    }
    Polynomial::new(c, p).map_err(engine_zero)
}

/// Monic `prod (z - r_i)`, expanded at `p + 32` bits and rounded to `p`.
pub fn from_roots(roots: &[BigComplex], p: Precision) -> Result<Polynomial, FactoryError> {
    if roots.is_empty() {
        return Err(FactoryError::NoRoots);
    }
    let w = p.plus(32);
    let mut c = vec![BigComplex::one(w)];
    for r in roots {
        let mut next = vec![BigComplex::zero(w); c.len() + 1];
        for (k, a) in c.iter().enumerate() {
            next[k + 1] = next[k + 1].add(a, w);
            next[k] = next[k].sub(&a.mul(r, w), w);
        }
        c = next;
    }
    Polynomial::new(c, p).map_err(engine_zero)
}
