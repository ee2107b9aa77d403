//! Lengths of segments inside a strip below a concave graph, their weighted
//! averages over directions, and the constants bounding those averages.

mod profile;
pub mod quadrature;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI, SQRT_2};

use thiserror::Error;

pub use profile::{ConcaveProfile, ProfileKind};
use quadrature::integrate;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("profile is not concave near x = {0}")]
    NotConcave(f64),
    #[error("quadrature did not converge (estimate {estimate}, error {error})")]
    Quadrature { estimate: f64, error: f64 },
    #[error("strip height must lie in (0, 1), got {0}")]
    Delta(f64),
}

/// Longest segment of a given slope inside `{(x, y): f(x) - δ <= y <= f(x)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub length: f64,
    pub x_left: f64,
    pub x_right: f64,
}

const X_TOL: f64 = 1e-12;

/// `{x : f(x) - τx >= max (f - τ·) - δ}` as `(x_left, x_right)`.
pub fn strip_interval(f: &ConcaveProfile, tau: f64, delta: f64) -> (f64, f64) {
    let g = |x: f64| f.eval(x) - tau * x;
    let (mut a, mut b) = (0.0f64, 1.0f64);
    for _ in 0..400 {
        if b - a < X_TOL {
            break;
        }
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if g(m1) < g(m2) {
            a = m1;
        } else {
            b = m2;
        }
    }
    let mut xs = 0.5 * (a + b);
    let mut m = g(xs);
    for x in [0.0, 1.0] {
        if g(x) > m {
            m = g(x);
            xs = x;
        }
    }
    let thr = m - delta;
    let left = if g(0.0) >= thr {
        0.0
    } else {
        let (mut lo, mut hi) = (0.0, xs);
        while hi - lo > X_TOL {
            let mid = 0.5 * (lo + hi);
            if g(mid) >= thr {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let right = if g(1.0) >= thr {
        1.0
    } else {
        let (mut lo, mut hi) = (xs, 1.0);
        while hi - lo > X_TOL {
            let mid = 0.5 * (lo + hi);
            if g(mid) >= thr {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    (left, right)
}

pub fn longest_segment(f: &ConcaveProfile, delta: f64, theta: f64) -> Segment {
    let (x_left, x_right) = strip_interval(f, theta.tan(), delta);
    Segment { length: (x_right - x_left) / theta.cos(), x_left, x_right }
}

/// Direction weights `ω(θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// `cos θ / π`.
    Cos,
    /// `cos² θ / π`.
    Cos2,
    /// Points uniform on the Riemann sphere.
    Sphere,
    /// Points uniform on the real projective line.
    RealLine,
    /// Points uniform in the unit disk; supported on `[0, π/2)`.
    Disk,
}

impl Weight {
    pub fn density(self, theta: f64) -> f64 {
        let t = theta.tan();
        let c = theta.cos();
        match self {
            Weight::Cos => c / PI,
            Weight::Cos2 => c * c / PI,
            Weight::Sphere => {
                // 4^t / (1 + 4^t)^2, written to avoid overflow
                let q = 4f64.powf(-t.abs());
                2.0 * LN_2 / c * q / ((1.0 + q) * (1.0 + q))
            }
            Weight::RealLine => {
                let q = 2f64.powf(-t.abs());
                2.0 * LN_2 / (PI * c) * q / (1.0 + q * q)
            }
            Weight::Disk => {
                if theta < 0.0 {
                    0.0
                } else {
                    2.0 * LN_2 / c * 4f64.powf(-t)
                }
            }
        }
    }

    /// Integration range, cut where `ω(θ) / cos θ` (which bounds the
    /// integrand since `L <= 1/cos θ`) is below `1e-15`.
    fn range(self) -> (f64, f64) {
        let hi = match self {
            Weight::Cos | Weight::Cos2 => FRAC_PI_2,
            _ => {
                let mut t = 1.0f64;
                while self.density(t.atan()) * (1.0 + t * t).sqrt() > 1e-15 {
                    t += 0.5;
                }
                t.atan()
            }
        };
        let lo = if self == Weight::Disk { 0.0 } else { -hi };
        (lo, hi)
    }
}

/// `∫ L(f, δ, θ) ω(θ) dθ`.
pub fn weighted_average(f: &ConcaveProfile, delta: f64, weight: Weight) -> Result<f64, GeometryError> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(GeometryError::Delta(delta));
    }
    let (lo, hi) = weight.range();
    let integrand = |theta: f64| {
        let (l, r) = strip_interval(f, theta.tan(), delta);
        (r - l) / theta.cos() * weight.density(theta)
    };
    integrate(integrand, lo, hi, 1e-7, 1e-13)
}

/// `max ω` on `[a, b]`: grid scan refined by golden section.
fn max_on(w: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let n = 2000;
    let h = (b - a) / n as f64;
    let best = (0..=n).map(|i| a + i as f64 * h).max_by(|x, y| w(*x).total_cmp(&w(*y))).unwrap();
    let (mut lo, mut hi) = ((best - h).max(a), (best + h).min(b));
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..100 {
        let m1 = hi - phi * (hi - lo);
        let m2 = lo + phi * (hi - lo);
        if w(m1) < w(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    w(0.5 * (lo + hi)).max(w(best))
}

/// Constant `C_ω` with `∫ L ω <= C_ω sqrt δ` for the sphere, real-line and
/// disk weights.
pub fn c_omega(weight: Weight) -> Result<f64, GeometryError> {
    let w = |theta: f64| weight.density(theta);
    let c = SQRT_2 / 4.0;
    let kernel = |x: f64| w((0.5 - SQRT_2 * x).atan()) / (1.0 + 2.0 * (x - c) * (x - c)).sqrt();
    // |1/2 - sqrt2 x| = 80 is far into the exponential tail of every weight
    let far = 80.5 / SQRT_2;
    match weight {
        Weight::Disk => {
            let top = max_on(w, 0.0, FRAC_PI_4);
            Ok(SQRT_2 * top + 2.0 * integrate(kernel, -far, -c, 1e-12, 1e-15)?)
        }
        Weight::Sphere | Weight::RealLine => {
            let top = max_on(w, -FRAC_PI_4, FRAC_PI_4);
            Ok(SQRT_2 * top + 4.0 * integrate(kernel, c, far, 1e-12, 1e-15)?)
        }
        Weight::Cos | Weight::Cos2 => {
            let top = max_on(w, -FRAC_PI_4, FRAC_PI_4);
            Ok(SQRT_2 * top + 4.0 * integrate(kernel, c, 1e6, 1e-10, 1e-12)?)
        }
    }
}

/// One row of [`constant_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantRow {
    pub name: &'static str,
    pub value: f64,
    /// Published upper bound, or the closed form for the disk.
    pub bound: f64,
}

/// `(1 + 8 ln 2) / (2 sqrt 2)`.
pub fn disk_closed_form() -> f64 {
    (1.0 + 8.0 * LN_2) / (2.0 * SQRT_2)
}

pub fn constant_check() -> Result<Vec<ConstantRow>, GeometryError> {
    Ok(vec![
        ConstantRow { name: "sphere", value: c_omega(Weight::Sphere)?, bound: 1.9046 },
        ConstantRow { name: "real_line", value: c_omega(Weight::RealLine)?, bound: 1.7673 },
        ConstantRow { name: "disk", value: c_omega(Weight::Disk)?, bound: disk_closed_form() },
    ])
}

/// Largest diagonal over `samples` squares whose upper-right corner is
/// `(x_R(y), y)` and whose lower-left corner lies on the curve
/// `y' -> (x_L(y'), y')`.
pub fn square_diagonal_check(f: &ConcaveProfile, delta: f64, samples: usize) -> f64 {
    let h = 1e-9;
    let slope_left = ((f.eval(h) - f.eval(0.0)) / h).clamp(-1e3, 1e3);
    let slope_right = ((f.eval(1.0) - f.eval(1.0 - h)) / h).clamp(-1e3, 1e3);
    let (y0, y1) = (slope_right - 1.0, slope_left + 1.0);
    let mut best = 0.0f64;
    for i in 0..samples {
        let y = y0 + (y1 - y0) * (i as f64 + 0.5) / samples as f64;
        best = best.max(square_diagonal(f, delta, y));
    }
    best
}

/// Diagonal of the square anchored at `(x_R(y), y)`.
pub fn square_diagonal(f: &ConcaveProfile, delta: f64, y: f64) -> f64 {
    let xr = strip_interval(f, y, delta).1;
    let gap = |yp: f64| strip_interval(f, yp, delta).0 + (y - yp) - xr;
    let mut step = 1.0;
    while gap(y - step) < 0.0 {
        step *= 2.0;
    }
    let (mut lo, mut hi) = (y - step, y);
    for _ in 0..200 {
        if hi - lo < 1e-13 * (1.0 + y.abs()) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if gap(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    SQRT_2 * (y - 0.5 * (lo + hi))
}
