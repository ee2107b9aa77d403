//! Arbitrary precision real and complex arithmetic and the scale calculus.

pub mod complex;
pub mod decimal;
pub mod float;
pub mod magnitude;
pub mod scale;
pub mod transcendental;

pub use complex::BigComplex;
pub use decimal::{format_shortest, parse_decimal, ParseError};
pub use float::BigFloat;
pub use magnitude::Magnitude;
pub use scale::{
    adjacent, canceled_bits, lazy_add_applies, scale_product_bound, similar_phase_shift, ulp, ulp_exponent,
    Cancellation, Precision, Scale, ScaleError,
};
