use std::sync::Arc;

use rand::Rng;

use super::GeometryError;

/// Closed forms with known strip geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileKind {
    Constant(f64),
    HalfCircle,
    /// `-a (x - 1/2)^2`.
    Parabola(f64),
    Spline,
    Custom,
}

/// A concave function on `[0, 1]`.
#[derive(Clone)]
pub struct ConcaveProfile {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    kind: ProfileKind,
}

impl std::fmt::Debug for ConcaveProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ConcaveProfile({:?})", self.kind)
    }
}

const GRID: usize = 1 << 12;

impl ConcaveProfile {
    /// Wraps `f` after checking midpoint concavity on a `2^12` grid.
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<ConcaveProfile, GeometryError> {
        ConcaveProfile::tagged(Arc::new(f), ProfileKind::Custom)
    }

    fn tagged(f: Arc<dyn Fn(f64) -> f64 + Send + Sync>, kind: ProfileKind) -> Result<ConcaveProfile, GeometryError> {
        let v: Vec<f64> = (0..=GRID).map(|i| f(i as f64 / GRID as f64)).collect();
        let scale = v.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        for i in 1..GRID {
            if !v[i].is_finite() || v[i - 1] + v[i + 1] - 2.0 * v[i] > 1e-12 * scale {
                return Err(GeometryError::NotConcave(i as f64 / GRID as f64));
            }
        }
        Ok(ConcaveProfile { f, kind })
    }

    pub fn constant(c: f64) -> ConcaveProfile {
        ConcaveProfile::tagged(Arc::new(move |_| c), ProfileKind::Constant(c)).unwrap()
    }

    /// `sqrt(x (1 - x))`.
    pub fn half_circle() -> ConcaveProfile {
        ConcaveProfile::tagged(Arc::new(|x: f64| (x * (1.0 - x)).max(0.0).sqrt()), ProfileKind::HalfCircle).unwrap()
    }

    /// `-a (x - 1/2)^2`, with second derivative `-2a`.
    pub fn parabola(a: f64) -> ConcaveProfile {
        ConcaveProfile::tagged(Arc::new(move |x: f64| -a * (x - 0.5) * (x - 0.5)), ProfileKind::Parabola(a)).unwrap()
    }

    /// Piecewise linear with `pieces` equal pieces, slopes drawn uniformly in
    /// `[-max_slope, max_slope]` and sorted decreasingly.
    pub fn random_spline<R: Rng>(rng: &mut R, pieces: usize, max_slope: f64) -> ConcaveProfile {
        let mut slopes: Vec<f64> = (0..pieces).map(|_| rng.gen_range(-max_slope..max_slope)).collect();
        slopes.sort_by(|a, b| b.total_cmp(a));
        let h = 1.0 / pieces as f64;
        let mut knots = vec![rng.gen_range(-1.0..1.0)];
        for s in &slopes {
            knots.push(knots.last().unwrap() + s * h);
        }
        let f = move |x: f64| {
            let t = (x.clamp(0.0, 1.0) / h).floor() as usize;
            let i = t.min(pieces - 1);
            knots[i] + slopes[i] * (x - i as f64 * h)
        };
        ConcaveProfile::tagged(Arc::new(f), ProfileKind::Spline).unwrap()
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }
}
