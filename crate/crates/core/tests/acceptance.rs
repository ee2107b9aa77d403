//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with
//! status 1 if any criterion fails. Numeric arguments restrict the run to
//! those criteria, e.g. `cargo test --test acceptance -- 3 7`.

use std::cell::OnceCell;
use std::process::ExitCode;
use std::time::Instant;

use fastpoly::arith::{BigComplex, BigFloat, Cancellation, Precision, Scale};
use fastpoly::bench::{benchmark, exact_bits};
use fastpoly::cover::{build_cover, build_cover_counted, ScaleSequence, Vertex};
use fastpoly::engine::{evaluate, horner_reference, kept_indices, newton_step, precondition, EvalReport, Polynomial};
use fastpoly::factory::{generate, Family, FamilySpec};
use fastpoly::geometry::{constant_check, square_diagonal_check, weighted_average, ConcaveProfile, Weight};
use fastpoly::points::sphere_points;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn prec(p: u32) -> Precision {
    Precision::bits_after_point(p)
}

const LISTED: [Family; 9] = [
    Family::Chebyshev,
    Family::Legendre,
    Family::Hermite,
    Family::Laguerre,
    Family::Hyperbolic,
    Family::NormalReal,
    Family::NormalComplex,
    Family::HalfCircleReal,
    Family::HalfCircleComplex,
];

fn family_poly(f: Family, d: usize, p: u32) -> Polynomial {
    generate(FamilySpec::seeded(f, d, 17), prec(p)).unwrap()
}

fn s_of(d: usize) -> f64 {
    Scale::of_usize(d).finite().unwrap() as f64
}

fn evaluate_all(poly: &Polynomial, z: &[BigComplex], p: u32) -> Vec<EvalReport> {
    let pp = precondition(poly, prec(p)).unwrap();
    z.iter().map(|w| evaluate(&pp, w)).collect()
}

/// `|value - reference| <= 2^(c - p - 2) |reference|`.
fn within_bound(value: &BigComplex, reference: &BigComplex, c: Cancellation, p: u32) -> bool {
    let Cancellation::Bits(c) = c else { return true };
    let w = reference.precision().plus(8);
    let diff = value.sub(reference, w).abs_magnitude();
    diff.is_zero() || diff.log2() <= c as f64 - p as f64 - 2.0 + reference.log2_abs()
}

fn error_theorem() -> Outcome {
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut infinite = std::collections::BTreeMap::new();
    for p in [24u32, 53, 100] {
        let z = sphere_points(500, prec(p)).unwrap();
        for f in LISTED {
            let poly = family_poly(f, 256, p);
            let reports = evaluate_all(&poly, &z, p);
            for (w, r) in z.iter().zip(&reports) {
                let reference = horner_reference(&poly, &w.round_to(prec(p + 64)), prec(p + 64));
                checked += 1;
                if r.canceled == Cancellation::Infinite {
                    *infinite.entry(f.name()).or_insert(0) += 1;
                }
                if !within_bound(&r.value, &reference, r.canceled, p) {
                    violations.push(format!("{f} p={p} z={w}"));
                }
            }
        }
    }
    let uncertified: usize = infinite.values().sum();
    let by_family: Vec<String> = infinite.iter().map(|(f, n)| format!("{f} {n}")).collect();
    Outcome {
        pass: violations.is_empty(),
        detail: format!(
            "{checked} evaluations, {} with a finite certificate, {} violations; no certified bits: {}{}",
            checked - uncertified,
            violations.len(),
            by_family.join(", "),
            violations.first().map(|v| format!(", first: {v}")).unwrap_or_default()
        ),
    }
}

fn accuracy_bias() -> Outcome {
    let mut total = 0f64;
    let mut n = 0usize;
    let mut per_p = Vec::new();
    for p in [53u32, 100] {
        let z = sphere_points(556, prec(p)).unwrap();
        let (mut sum_p, mut n_p) = (0f64, 0usize);
        for f in LISTED {
            let poly = family_poly(f, 256, p);
            let reports = evaluate_all(&poly, &z, p);
            for (w, r) in z.iter().zip(&reports) {
                let reference = horner_reference(&poly, &w.round_to(prec(600)), prec(600));
                let horner = horner_reference(&poly, w, prec(p));
                let d = exact_bits(&r.value, &reference, prec(p)) - exact_bits(&horner, &reference, prec(p));
                sum_p += d.unsigned_abs() as f64;
                n_p += 1;
            }
        }
        per_p.push(format!("p={p}: {:.3}", sum_p / n_p as f64));
        total += sum_p;
        n += n_p;
    }
    let mean = total / n as f64;
    Outcome {
        pass: mean <= 1.5,
        detail: format!("mean |Δ exact bits| = {mean:.3} over {n} evaluations ({})", per_p.join(", ")),
    }
}

struct KeptStats {
    family: Family,
    degree: usize,
    mean_kept: f64,
    op_violations: usize,
}

fn kept_statistics() -> Vec<KeptStats> {
    let p = 53;
    let z = sphere_points(5000, prec(p)).unwrap();
    let mut out = Vec::new();
    for d in [256usize, 1024] {
        for f in Family::ALL {
            let poly = family_poly(f, d, p);
            let reports = evaluate_all(&poly, &z, p);
            let limit = d as f64 + 2.0 * (d as f64).log2() + 2.0;
            out.push(KeptStats {
                family: f,
                degree: d,
                mean_kept: reports.iter().map(|r| r.kept_terms as f64).sum::<f64>() / z.len() as f64,
                op_violations: reports.iter().filter(|r| r.multiply_adds as f64 > limit).count(),
            });
        }
    }
    out
}

fn sqrt_term(d: usize, p: u32) -> f64 {
    (d as f64 * (p as f64 + s_of(d) + 3.0)).sqrt()
}

fn kept_bound(stats: &[KeptStats]) -> Outcome {
    let mut worst = (0f64, String::new());
    let mut bad = Vec::new();
    for s in stats {
        let bound = 1.0 + 1.9046 * sqrt_term(s.degree, 53);
        let ratio = s.mean_kept / bound;
        if ratio > worst.0 {
            worst = (ratio, format!("{} d={}", s.family, s.degree));
        }
        if s.mean_kept > bound {
            bad.push(format!("{} d={} mean {:.1} > {:.1}", s.family, s.degree, s.mean_kept, bound));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{} runs, {} violations; largest mean/bound {:.3} ({}){}",
            stats.len(),
            bad.len(),
            worst.0,
            worst.1,
            bad.first().map(|b| format!("; {b}")).unwrap_or_default()
        ),
    }
}

fn half_circle_saturation(stats: &[KeptStats]) -> Outcome {
    let s = stats.iter().find(|s| s.family == Family::HalfCircleReal && s.degree == 1024).unwrap();
    let ratio = s.mean_kept / sqrt_term(1024, 53);
    Outcome { pass: ratio >= 1.10, detail: format!("mean kept {:.1}, ratio {ratio:.4} (need >= 1.10)", s.mean_kept) }
}

fn worst_case_ops(stats: &[KeptStats]) -> Outcome {
    let bad: usize = stats.iter().map(|s| s.op_violations).sum();
    Outcome {
        pass: bad == 0,
        detail: format!("{} evaluations checked, {bad} above d + 2 log2 d + 2", stats.len() * 5000),
    }
}

fn random_scale_sequence(rng: &mut ChaCha8Rng, d: usize) -> Vec<Scale> {
    let style = rng.gen_range(0..3);
    let mut walk = 0i64;
    (0..=d)
        .map(|k| {
            if k != 0 && k != d && rng.gen_bool(0.1) {
                return Scale::NegInf;
            }
            Scale::Finite(match style {
                0 => rng.gen_range(-1000..1000),
                1 => {
                    walk += rng.gen_range(-8..=8);
                    walk
                }
                _ => {
                    let x = k as f64 / d as f64;
                    (200.0 * (x * (1.0 - x)).sqrt()) as i64 + rng.gen_range(-5..=5)
                }
            })
        })
        .collect()
}

fn preconditioning_complexity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut points = Vec::new();
    let mut bad = Vec::new();
    for e in 6..=14 {
        let d = 1usize << e;
        let mut total = 0f64;
        let runs = 8;
        for _ in 0..runs {
            let s = ScaleSequence::new(random_scale_sequence(&mut rng, d)).unwrap();
            let c = build_cover_counted(&s).unwrap().1.comparisons() as f64;
            let bound = 3.0 * d as f64 * e as f64 + 5.0 * d as f64;
            if c > bound {
                bad.push(format!("d={d}: {c} > {bound}"));
            }
            total += c;
        }
        points.push((d as f64, total / runs as f64));
    }
    let slope = |ys: &[f64]| {
        let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
        let (mx, my) = (xs.iter().sum::<f64>() / xs.len() as f64, ys.iter().sum::<f64>() / ys.len() as f64);
        let num: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        num / den
    };
    let measured = slope(&points.iter().map(|p| p.1.ln()).collect::<Vec<_>>());
    let model = slope(&points.iter().map(|p| (p.0 * p.0.log2()).ln()).collect::<Vec<_>>());
    let rel = measured / model - 1.0;
    Outcome {
        pass: bad.is_empty() && rel.abs() <= 0.15,
        detail: format!(
            "{} bound violations; log-log slope {measured:.4} vs d log d {model:.4} ({:+.1}%)",
            bad.len(),
            rel * 100.0
        ),
    }
}

fn newton_example() -> Outcome {
    let p = prec(24);
    let mut c = vec![BigComplex::zero(p); 65];
    c[0] = BigComplex::one(p);
    c[64] = BigComplex::one(p);
    let mut dc = vec![BigComplex::zero(p); 64];
    dc[63] = BigComplex::from_f64(64.0, 0.0, p);
    let pp = precondition(&Polynomial::new(c, p).unwrap(), p).unwrap();
    let ppd = precondition(&Polynomial::new(dc, p).unwrap(), p).unwrap();
    let z = BigComplex::from_f64(10.0, 0.0, p);
    let (next, _) = newton_step(&pp, &ppd, &z).unwrap();
    let inc = z.sub(&next, p).re.to_f64();
    let w = prec(200);
    let ten = BigInt::from(10);
    let exact = BigFloat::from_bigint(&(ten.pow(64) + 1), w)
        .div(&BigFloat::from_bigint(&(BigInt::from(64) * ten.pow(63)), w), w)
        .to_f64();
    let rel = (inc - exact).abs() / exact;
    Outcome {
        pass: inc.is_finite() && rel <= 2e-6,
        detail: format!("increment {inc} vs {exact:.10}, relative error {rel:.2e}"),
    }
}

fn geometry_constants() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    let rows = constant_check().unwrap();
    let get = |n: &str| rows.iter().find(|r| r.name == n).unwrap();
    let (sphere, line, disk) = (get("sphere"), get("real_line"), get("disk"));
    let constants_ok = sphere.value < 1.9046 && line.value < 1.7673 && (disk.value - disk.bound).abs() <= 1e-4;
    pass &= constants_ok;
    notes.push(format!(
        "constants {}: sphere {:.7}, line {:.7}, disk {:.7} vs {:.7}",
        ok(constants_ok),
        sphere.value,
        line.value,
        disk.value,
        disk.bound
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    let mut bad = 0;
    for i in 0..100 {
        let f = if i % 10 == 0 {
            ConcaveProfile::parabola(rng.gen_range(0.1..20.0))
        } else {
            let pieces = rng.gen_range(2..40);
            let slope = rng.gen_range(0.2..12.0);
            ConcaveProfile::random_spline(&mut rng, pieces, slope)
        };
        for delta in [1e-1f64, 1e-2, 1e-3] {
            let a = weighted_average(&f, delta, Weight::Cos).unwrap() / (1.8644 * delta.sqrt());
            let b = weighted_average(&f, delta, Weight::Cos2).unwrap() / (1.3505 * delta.sqrt());
            worst = worst.max(a).max(b);
            bad += (a > 1.0) as usize + (b > 1.0) as usize;
        }
    }
    pass &= bad == 0;
    notes.push(format!("upper bounds {}: 600 checks, {bad} violations, largest ratio {worst:.4}", ok(bad == 0)));

    let hc = ConcaveProfile::half_circle();
    let delta = 1e-3f64;
    let c1 = weighted_average(&hc, delta, Weight::Cos).unwrap() / delta.sqrt();
    let c2 = weighted_average(&hc, delta, Weight::Cos2).unwrap() / delta.sqrt();
    let lower_ok = c1 >= 1.1128 && c2 >= 0.91531;
    pass &= lower_ok;
    notes.push(format!(
        "half-circle lower bounds at δ=1e-3 {}: cos {c1:.6} (need 1.1128), cos² {c2:.6} (need 0.91531)",
        ok(lower_ok)
    ));
    Outcome { pass, detail: notes.join("; ") }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn square_diagonal_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = 0;
    let mut worst: f64 = 0.0;
    let mut tight = Vec::new();
    for delta in [1e-2f64, 1e-4] {
        let limit = 2.0 * delta.sqrt();
        for _ in 0..20 {
            let pieces = rng.gen_range(2..20);
            let slope = rng.gen_range(0.2..8.0);
            let f = ConcaveProfile::random_spline(&mut rng, pieces, slope);
            let m = square_diagonal_check(&f, delta, 1000) / limit;
            worst = worst.max(m);
            bad += (m > 1.0 + 1e-6) as usize;
        }
        let m = square_diagonal_check(&ConcaveProfile::parabola(0.5), delta, 1000) / limit;
        worst = worst.max(m);
        bad += (m > 1.0 + 1e-6) as usize;
        tight.push(m);
    }
    let tight_ok = tight.iter().all(|&m| m >= 0.9);
    Outcome {
        pass: bad == 0 && tight_ok,
        detail: format!(
            "{bad} of 42 profiles above 2√δ(1+1e-6), largest ratio {worst:.8}; f'' = -1 reaches {:.6} and {:.6} of 2√δ",
            tight[0], tight[1]
        ),
    }
}

const WORKED: [i64; 11] = [-2, 6, -3, 16, 14, -4, 27, 16, 30, 30, 18];

fn worked_example() -> Outcome {
    let p = prec(6);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let coeffs = WORKED
        .iter()
        .map(|&s| {
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            BigComplex::from_f64(0.75 * t.cos(), 0.75 * t.sin(), p).mul_pow2(s)
        })
        .collect();
    let pp = precondition(&Polynomial::new(coeffs, p).unwrap(), p).unwrap();
    let s = ScaleSequence::from_finite(&WORKED).unwrap();
    let simple0 = pp.cover().dominant_indices(&s, 0.0, 6.0);
    let simple3 = pp.cover().dominant_indices(&s, -3.0, 6.0);
    let exact = simple0 == [6, 8, 9] && simple3 == [1, 3, 6, 8, 9];
    let kept0 = kept_indices(&pp, &BigComplex::from_f64(1.0, 0.0, p));
    let kept3 = kept_indices(&pp, &BigComplex::from_f64(0.125, 0.0, p));
    let subsets = simple0.iter().all(|k| kept0.contains(k)) && simple3.iter().all(|k| kept3.contains(k));
    Outcome {
        pass: exact && subsets,
        detail: format!("drop p: λ=0 {simple0:?}, λ=-3 {simple3:?}; drop p+s(d)+3: λ=0 {kept0:?}, λ=-3 {kept3:?}"),
    }
}

fn speed_gain() -> Outcome {
    let p = 100;
    let poly = family_poly(Family::NormalComplex, 1024, p);
    let z = sphere_points(10084, prec(p)).unwrap();
    let r = benchmark(&poly, &z, prec(p), 3).unwrap();
    let one_horner = r.horner_seconds / r.points as f64;
    let share = r.precondition_seconds / one_horner;
    Outcome {
        pass: r.asymptotic_gain >= 1.5 && share <= 2.0,
        detail: format!(
            "asymptotic gain {:.2} (single {:.2}), preconditioning {:.3} ms = {:.2}× one Hörner evaluation, mean kept {:.1}",
            r.asymptotic_gain,
            r.single_gain,
            r.precondition_seconds * 1e3,
            share,
            r.mean_kept
        ),
    }
}

/// Upper hull by brute force over all chords.
fn hull_oracle(s: &[Scale]) -> Vec<Vertex> {
    let pts: Vec<(i64, i64)> = s.iter().enumerate().filter_map(|(k, v)| v.finite().map(|h| (k as i64, h))).collect();
    let mut out = Vec::new();
    for (j, &(kj, hj)) in pts.iter().enumerate() {
        let below = pts[..j].iter().any(|&(ki, hi)| {
            pts[j + 1..]
                .iter()
                .any(|&(kl, hl)| (hj - hi) as i128 * (kl - ki) as i128 <= (hl - hi) as i128 * (kj - ki) as i128)
        });
        if !below {
            out.push(Vertex { index: kj as usize, height: hj });
        }
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut cover_bad = 0;
    for _ in 0..1000 {
        let d = rng.gen_range(1..=64);
        let raw = random_scale_sequence(&mut rng, d);
        let c = build_cover(&ScaleSequence::new(raw.clone()).unwrap()).unwrap();
        cover_bad += (c.vertices() != hull_oracle(&raw).as_slice()) as usize;
    }
    let mut eval_bad = 0;
    for _ in 0..300 {
        let d = rng.gen_range(1..=32);
        let p = prec(30);
        let mut e = 0i64;
        let coeffs = (0..=d)
            .map(|_| {
                e += rng.gen_range(-6..=6);
                BigComplex::from_f64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), p).mul_pow2(e)
            })
            .collect();
        let pp = precondition(&Polynomial::new(coeffs, p).unwrap(), p).unwrap();
        let (r, t) = (rng.gen_range(0.05..20.0f64), rng.gen_range(0.0..std::f64::consts::TAU));
        // a 53-bit point carried at a precision where no operation rounds
        let z = BigComplex::from_f64(r * t.cos(), r * t.sin(), prec(52)).round_to(prec(4000));
        let got = evaluate(&pp, &z);
        let mut exact = BigComplex::zero(prec(1));
        for k in kept_indices(&pp, &z) {
            let mut term = pp.reduced_coefficients()[k - pp.valuation_shift()].clone();
            for _ in 0..k {
                term = term.mul_exact(&z);
            }
            exact = exact.add_exact(&term);
        }
        eval_bad += (got.value != exact) as usize;
    }
    Outcome {
        pass: cover_bad == 0 && eval_bad == 0,
        detail: format!("{cover_bad} of 1000 covers differ from the hull oracle; {eval_bad} of 300 sums differ"),
    }
}

fn main() -> ExitCode {
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let run = |n: u32| wanted.is_empty() || wanted.contains(&n);
    let mut failed = 0;
    let mut report = |n: u32, name: &str, f: &mut dyn FnMut() -> Outcome| {
        if !run(n) {
            return;
        }
        let t = Instant::now();
        let o = f();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("{verdict} {n:>2} {name}: {} [{:.1} s]", o.detail, t.elapsed().as_secs_f64());
        failed += (!o.pass) as usize;
    };
    report(1, "error theorem", &mut error_theorem);
    report(2, "accuracy bias", &mut accuracy_bias);
    let stats = OnceCell::new();
    report(3, "kept-term bound", &mut || kept_bound(stats.get_or_init(kept_statistics)));
    report(4, "half-circle saturation", &mut || half_circle_saturation(stats.get_or_init(kept_statistics)));
    report(5, "worst-case operation count", &mut || worst_case_ops(stats.get_or_init(kept_statistics)));
    report(6, "preconditioning complexity", &mut preconditioning_complexity);
    report(7, "Newton step on z^64 + 1", &mut newton_example);
    report(8, "geometry constants", &mut geometry_constants);
    report(9, "square-diagonal lemma", &mut square_diagonal_lemma);
    report(10, "worked example", &mut worked_example);
    report(11, "speed gain", &mut speed_gain);
    report(12, "oracle equivalence", &mut oracle_equivalence);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
