//! Concave cover of a coefficient-scale sequence and queries on its sheared
//! versions `k -> cover(k) + λ k`.
//!
//! The cover is the smallest concave function on `[0, d]` lying above every
//! point `(k, s(a_k))`, i.e. the upper convex hull of those points. Heights at
//! vertices are integers and slopes are compared exactly.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt::Write as _;

use num_rational::Ratio;
use thiserror::Error;

use crate::arith::Scale;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("scale sequence is empty")]
    Empty,
    #[error("first and last scales must be finite (nonzero end coefficients)")]
    ZeroEndpoint,
    #[error("zero coefficient at index {0} lies outside the hull")]
    ExteriorZero(usize),
}

/// `s(a_0), ..., s(a_d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleSequence {
    entries: Vec<Scale>,
}

impl ScaleSequence {
    pub fn new(entries: Vec<Scale>) -> Result<ScaleSequence, CoverError> {
        let (first, last) = match (entries.first(), entries.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(CoverError::Empty),
        };
        if first.is_neg_inf() || last.is_neg_inf() {
            return Err(CoverError::ZeroEndpoint);
        }
        Ok(ScaleSequence { entries })
    }

    pub fn from_finite(values: &[i64]) -> Result<ScaleSequence, CoverError> {
        ScaleSequence::new(values.iter().map(|&v| Scale::Finite(v)).collect())
    }

    pub fn degree(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[Scale] {
        &self.entries
    }

    pub fn get(&self, k: usize) -> Scale {
        self.entries[k]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Vertex {
    pub index: usize,
    pub height: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcaveCover {
    vertices: Vec<Vertex>,
}

/// Instrumentation gathered while building a cover.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    /// Comparisons made while sorting the scales.
    pub sort_comparisons: u64,
    /// Index and slope comparisons made while inserting points.
    pub hull_comparisons: u64,
}

impl BuildStats {
    pub fn comparisons(&self) -> u64 {
        self.sort_comparisons + self.hull_comparisons
    }
}

/// `(b - a)` slope strictly greater than `(c - b)` slope, for `a.k < b.k < c.k`.
fn bends_down(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> bool {
    let lhs = (b.1 - a.1) as i128 * (c.0 - b.0) as i128;
    let rhs = (c.1 - b.1) as i128 * (b.0 - a.0) as i128;
    lhs > rhs
}

pub fn build_cover(s: &ScaleSequence) -> Result<ConcaveCover, CoverError> {
    build_cover_counted(s).map(|(c, _)| c)
}

/// Sorted insertion: points are visited by decreasing scale (ties by
/// increasing index); a point inside the current index range lies below the
/// current hull and is skipped, otherwise it extends the hull to the left or
/// right and the new supporting vertex is found by binary search.
pub fn build_cover_counted(s: &ScaleSequence) -> Result<(ConcaveCover, BuildStats), CoverError> {
    let mut stats = BuildStats::default();
    let sort_count = Cell::new(0u64);
    let mut order: Vec<(i64, usize)> =
        s.entries.iter().enumerate().filter_map(|(k, sc)| sc.finite().map(|v| (v, k))).collect();
    order.sort_unstable_by(|a, b| {
        sort_count.set(sort_count.get() + 1);
        b.0.cmp(&a.0).then(a.1.cmp(&b.1))
    });
    stats.sort_comparisons = sort_count.get();

    let mut hull: VecDeque<(i64, i64)> = VecDeque::new();
    let mut cmp = 0u64;
    for &(h, k) in &order {
        let pt = (k as i64, h);
        if hull.is_empty() {
            hull.push_back(pt);
            continue;
        }
        let lo = hull.front().unwrap().0;
        let hi = hull.back().unwrap().0;
        cmp += 1;
        if pt.0 < lo {
            // smallest j whose outgoing slope stays below the slope from pt
            let m = hull.len();
            let (mut a, mut b) = (0usize, m - 1);
            while a < b {
                let j = (a + b) / 2;
                cmp += 1;
                if bends_down(pt, hull[j], hull[j + 1]) {
                    b = j;
                } else {
                    a = j + 1;
                }
            }
            hull.drain(..a);
            hull.push_front(pt);
            continue;
        }
        cmp += 1;
        if pt.0 > hi {
            let m = hull.len();
            let (mut a, mut b) = (0usize, m - 1);
            while a < b {
                let j = (a + b).div_ceil(2);
                cmp += 1;
                if bends_down(hull[j - 1], hull[j], pt) {
                    a = j;
                } else {
                    b = j - 1;
                }
            }
            hull.truncate(a + 1);
            hull.push_back(pt);
        }
    }
    let lo = hull.front().unwrap().0;
    let hi = hull.back().unwrap().0;
    for (k, sc) in s.entries.iter().enumerate() {
        if sc.is_neg_inf() {
            cmp += 1;
            if !(lo < k as i64 && (k as i64) < hi) {
                return Err(CoverError::ExteriorZero(k));
            }
        }
    }
    stats.hull_comparisons = cmp;
    let vertices = hull.into_iter().map(|(k, h)| Vertex { index: k as usize, height: h }).collect();
    Ok((ConcaveCover { vertices }, stats))
}

impl ConcaveCover {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn degree(&self) -> usize {
        self.vertices.last().unwrap().index
    }

    /// Index into `vertices` of the segment `[v_i, v_{i+1}]` containing `k`
    /// (the last vertex maps to the last segment).
    fn segment_of(&self, k: usize) -> usize {
        let n = self.vertices.len();
        if n == 1 {
            return 0;
        }
        let i = self.vertices.partition_point(|v| v.index <= k);
        i.saturating_sub(1).min(n - 2)
    }

    /// Exact value of the cover at integer `k`.
    pub fn value_at(&self, k: usize) -> Ratio<i128> {
        let i = self.segment_of(k);
        let v = self.vertices[i];
        if v.index == k || self.vertices.len() == 1 {
            return Ratio::from_integer(v.height as i128);
        }
        let w = self.vertices[i + 1];
        let dk = (w.index - v.index) as i128;
        let dh = (w.height - v.height) as i128;
        Ratio::new(v.height as i128 * dk + dh * (k - v.index) as i128, dk)
    }

    /// `cover(k) + λ k` in double precision.
    pub fn sheared_value(&self, k: usize, lambda: f64) -> f64 {
        let i = self.segment_of(k);
        let v = self.vertices[i];
        let base = if v.index == k || self.vertices.len() == 1 {
            v.height as f64
        } else {
            let w = self.vertices[i + 1];
            let dk = (w.index - v.index) as f64;
            let dh = (w.height - v.height) as f64;
            v.height as f64 + dh * (k - v.index) as f64 / dk
        };
        base + lambda * k as f64
    }

    /// Exact test `scale >= cover(k) - drop`.
    pub fn within_drop(&self, k: usize, scale: i64, drop: i64) -> bool {
        let c = self.value_at(k);
        Ratio::from_integer((scale + drop) as i128) >= c
    }

    /// Vertex maximizing `cover(k) + λ k` (the smallest one on a flat top)
    /// and the maximum value.
    pub fn argmax_sheared(&self, lambda: f64) -> (usize, f64) {
        let (i, _) = self.argmax_vertex(lambda);
        let v = self.vertices[i];
        (v.index, v.height as f64 + lambda * v.index as f64)
    }

    /// Number of slope probes the argmax search makes.
    pub fn argmax_probes(&self, lambda: f64) -> u32 {
        self.argmax_vertex(lambda).1
    }

    fn argmax_vertex(&self, lambda: f64) -> (usize, u32) {
        // first segment i with slope_i + λ <= 0; slopes decrease with i
        let segs = self.vertices.len() - 1;
        let (mut a, mut b) = (0usize, segs);
        let mut probes = 0;
        while a < b {
            let i = (a + b) / 2;
            probes += 1;
            let v = self.vertices[i];
            let w = self.vertices[i + 1];
            let rise = (w.height - v.height) as f64 + lambda * (w.index - v.index) as f64;
            if rise <= 0.0 {
                b = i;
            } else {
                a = i + 1;
            }
        }
        (a, probes)
    }

    /// Largest integer interval `[l, r]` around the argmax on which
    /// `cover(k) + λ k >= N_λ - drop`, ties counted as inside.
    pub fn band_bounds(&self, lambda: f64, drop: f64) -> (usize, usize) {
        let (k0, n) = self.argmax_sheared(lambda);
        let threshold = n - drop;
        let tol = 1e-9 * (1.0 + threshold.abs());
        let inside = |k: usize| self.sheared_value(k, lambda) >= threshold - tol;
        // left branch is nondecreasing on [0, k0]
        let (mut a, mut b) = (0usize, k0);
        while a < b {
            let m = (a + b) / 2;
            if inside(m) {
                b = m;
            } else {
                a = m + 1;
            }
        }
        let l = a;
        // right branch is nonincreasing on [k0, d]
        let (mut a, mut b) = (k0, self.degree());
        while a < b {
            let m = (a + b).div_ceil(2);
            if inside(m) {
                a = m;
            } else {
                b = m - 1;
            }
        }
        (l, a)
    }

    /// Indices in the band whose own sheared scale clears the threshold:
    /// `s_k + λ k >= N_λ - drop`.
    pub fn dominant_indices(&self, scales: &ScaleSequence, lambda: f64, drop: f64) -> Vec<usize> {
        let (_, n) = self.argmax_sheared(lambda);
        let threshold = n - drop;
        let tol = 1e-9 * (1.0 + threshold.abs());
        let (l, r) = self.band_bounds(lambda, drop);
        (l..=r)
            .filter(|&k| match scales.get(k) {
                Scale::NegInf => false,
                Scale::Finite(s) => s as f64 + lambda * k as f64 >= threshold - tol,
            })
            .collect()
    }

    /// One `k,height` line per vertex.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            writeln!(out, "{},{}", v.index, v.height).unwrap();
        }
        out
    }

    /// Check the structural invariants against the data; used by tests and
    /// debug assertions.
    pub fn check(&self, s: &ScaleSequence) -> Result<(), String> {
        let vs = &self.vertices;
        if vs.first().map(|v| v.index) != Some(0) || vs.last().map(|v| v.index) != Some(s.degree()) {
            return Err("cover does not span [0, d]".into());
        }
        for w in vs.windows(2) {
            if w[0].index >= w[1].index {
                return Err("vertex indices not increasing".into());
            }
        }
        for w in vs.windows(3) {
            let pts: Vec<(i64, i64)> = w.iter().map(|v| (v.index as i64, v.height)).collect();
            if !bends_down(pts[0], pts[1], pts[2]) {
                return Err(format!("slopes not strictly decreasing at {}", w[1].index));
            }
        }
        for v in vs {
            if s.get(v.index) != Scale::Finite(v.height) {
                return Err(format!("vertex {} does not touch the data", v.index));
            }
        }
        for (k, sc) in s.entries().iter().enumerate() {
            if let Scale::Finite(h) = sc {
                if self.value_at(k).cmp(&Ratio::from_integer(*h as i128)) == Ordering::Less {
                    return Err(format!("cover below data at {k}"));
                }
            }
        }
        Ok(())
    }
}
