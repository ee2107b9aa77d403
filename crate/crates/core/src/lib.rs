//! Fast evaluation of high-degree polynomials at many points in arbitrary
//! precision.
//!
//! A polynomial is preconditioned once from the binary scales of its
//! coefficients. Each evaluation then only touches the monomials that can
//! influence the first `p` bits of the result.

pub mod arith;
pub mod bench;
pub mod cover;
pub mod csvfile;
pub mod engine;
pub mod factory;
pub mod geometry;
pub mod points;
