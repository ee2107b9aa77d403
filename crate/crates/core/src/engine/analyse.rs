use crate::cover::Vertex;

use super::PreconditionedPoly;

/// Range of `λ = log2 |z|` on which one set of monomials is kept.
#[derive(Debug, Clone, PartialEq)]
pub struct Regime {
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Original indices.
    pub kept: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    /// Cover vertices in the original numbering.
    pub vertices: Vec<Vertex>,
    pub good: Vec<usize>,
    /// Consecutive regimes covering the whole real line; neighbouring
    /// regimes have different kept sets.
    pub regimes: Vec<Regime>,
}

/// Interval of `λ` on which reduced index `k` lies in the kept band:
/// `cover(k) + λk >= max_v (h_v + λv) - drop`.
fn band_interval(pp: &PreconditionedPoly, k: usize) -> Option<(f64, f64)> {
    let vs = pp.cover.vertices();
    let ck = ratio_f64(pp.cover.value_at(k));
    let drop = pp.drop as f64;
    let slope = |i: usize| {
        let (a, b) = (vs[i], vs[i + 1]);
        (b.height - a.height) as f64 / (b.index - a.index) as f64
    };
    let mut out: Option<(f64, f64)> = None;
    for (i, v) in vs.iter().enumerate() {
        // vertex i is the argmax for λ in [-slope(i-1), -slope(i)]
        let mut lo = if i == 0 { f64::NEG_INFINITY } else { -slope(i - 1) };
        let mut hi = if i + 1 == vs.len() { f64::INFINITY } else { -slope(i) };
        let c = ck - v.height as f64 + drop;
        if k == v.index {
            if c < 0.0 {
                continue;
            }
        } else if k > v.index {
            lo = lo.max(-c / (k - v.index) as f64);
        } else {
            hi = hi.min(c / (v.index - k) as f64);
        }
        if lo > hi {
            continue;
        }
        out = Some(match out {
            None => (lo, hi),
            Some((a, b)) => (a.min(lo), b.max(hi)),
        });
    }
    out
}

fn ratio_f64(r: num_rational::Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Cover, good set, and the kept set as a function of `log2 |z|`.
pub fn analyse(pp: &PreconditionedPoly) -> AnalysisReport {
    let intervals: Vec<(usize, f64, f64)> =
        pp.good_list.iter().filter_map(|&k| band_interval(pp, k).map(|(a, b)| (k, a, b))).collect();
    let mut cuts: Vec<f64> = intervals.iter().flat_map(|&(_, a, b)| [a, b]).filter(|x| x.is_finite()).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut bounds = vec![f64::NEG_INFINITY];
    bounds.extend(cuts.iter().copied());
    bounds.push(f64::INFINITY);
    let mut regimes: Vec<Regime> = Vec::new();
    for w in bounds.windows(2) {
        let (a, b) = (w[0], w[1]);
        let probe = match (a.is_finite(), b.is_finite()) {
            (true, true) => 0.5 * (a + b),
            (true, false) => a + 1.0,
            (false, true) => b - 1.0,
            (false, false) => 0.0,
        };
        let kept: Vec<usize> = intervals
            .iter()
            .filter(|&&(_, lo, hi)| lo <= probe && probe <= hi)
            .map(|&(k, _, _)| k + pp.shift)
            .collect();
        match regimes.last_mut() {
            Some(last) if last.kept == kept => last.lambda_max = b,
            _ => regimes.push(Regime { lambda_min: a, lambda_max: b, kept }),
        }
    }

    AnalysisReport {
        vertices: pp.cover.vertices().iter().map(|v| Vertex { index: v.index + pp.shift, height: v.height }).collect(),
        good: pp.good_indices(),
        regimes,
    }
}
