use fastpoly::arith::{
    adjacent, canceled_bits, lazy_add_applies, scale_product_bound, similar_phase_shift, ulp, BigComplex, BigFloat,
    Cancellation, Precision, Scale,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(bits: u32) -> Precision {
    Precision::new(bits).unwrap()
}

fn c(re: f64, im: f64) -> BigComplex {
    BigComplex::from_f64(re, im, p(60))
}

#[test]
fn scale_examples() {
    assert_eq!(c(3.0, 2.0).scale(), Scale::Finite(2));
    assert_eq!(c(3.0, 3.0).scale(), Scale::Finite(3));
    assert_eq!(c(0.0, 0.0).scale(), Scale::NegInf);
    assert_eq!(BigFloat::from_i64(3, p(10)).scale(), Scale::Finite(2));
}

#[test]
fn ulp_examples() {
    for bits in [1, 10, 53, 200] {
        let prec = p(bits);
        let one = BigFloat::one(prec);
        assert_eq!(ulp(&one, prec).unwrap(), BigFloat::pow2(-(bits as i64), prec));
        assert_eq!(ulp(&one.neg(), prec).unwrap(), BigFloat::pow2(-(bits as i64), prec));
        let n = 17;
        let x = BigFloat::pow2(n - 1, prec);
        assert_eq!(ulp(&x, prec).unwrap(), BigFloat::pow2(n - bits as i64 - 1, prec));
    }
    assert!(ulp(&BigFloat::zero(p(5)), p(5)).is_none());
}

#[test]
fn scale_product_bound_examples() {
    let s = |v: f64| BigFloat::from_f64(v, p(60)).scale();
    assert_eq!(scale_product_bound(s(1.0), s(1.0)), Some((1, 2)));
    assert_eq!(scale_product_bound(s(3.0), s(3.0)), Some((3, 4)));
    assert_eq!(s(9.0), Scale::Finite(4));
    assert_eq!(scale_product_bound(s(1.5), s(1.25)), Some((1, 2)));
    assert_eq!(s(1.875), Scale::Finite(1));
}

#[test]
fn canceled_bits_examples() {
    assert_eq!(canceled_bits(Scale::Finite(5), Scale::Finite(5)), Ok(Cancellation::Bits(0)));
    assert_eq!(canceled_bits(Scale::Finite(30), Scale::Finite(22)), Ok(Cancellation::Bits(8)));
    assert_eq!(canceled_bits(Scale::Finite(5), Scale::NegInf), Ok(Cancellation::Infinite));
    assert_eq!(canceled_bits(Scale::NegInf, Scale::NegInf), Ok(Cancellation::Bits(0)));
    assert!(canceled_bits(Scale::Finite(3), Scale::Finite(4)).is_err());
}

#[test]
fn adjacency_examples() {
    for bits in [3u32, 8, 20] {
        let prec = p(bits);
        let xi = BigFloat::from_parts(false, BigUint::from(0b1011u32), -3, prec);
        let next = xi.add(&ulp(&xi, prec).unwrap(), prec);
        assert!(adjacent(&xi, &next, prec));
        // a = 2^n (1 - 2^(-p-1)), b = 2^n, c = 2^n (1 + 2^(-p))
        let n = 5;
        let w = prec.plus(8);
        let b = BigFloat::pow2(n, w);
        let a = b.sub(&BigFloat::pow2(n - bits as i64 - 1, w), w);
        let cc = b.add(&BigFloat::pow2(n - bits as i64, w), w);
        assert!(adjacent(&a, &b, prec));
        assert!(adjacent(&b, &cc, prec));
        assert!(!adjacent(&a, &cc, prec));
    }
}

#[test]
fn similar_phase_shift_examples() {
    let prec = p(20);
    let z = c(1.0, 1.0);
    assert!(similar_phase_shift(&z, &z, prec));
    let w = z.mul_exact(&BigComplex::new(BigFloat::one(p(60)), BigFloat::pow2(-21, p(60))));
    assert!(!similar_phase_shift(&z, &w, prec));
    let close = z.mul_exact(&BigComplex::new(BigFloat::one(p(60)), BigFloat::pow2(-25, p(60))));
    assert!(similar_phase_shift(&z, &close, prec));
}

/// Rounded value of the grid point `j * 2^-g` at precision `p`, as an
/// integer multiple of `2^-g` (exact because rounding stays on the grid).
fn round_grid(j: u64, bits: u32) -> u64 {
    let n = 64 - j.leading_zeros();
    let keep = bits + 1;
    if n <= keep {
        return j;
    }
    let shift = n - keep;
    let mut m = j >> shift;
    if (j >> (shift - 1)) & 1 == 1 {
        m += 1;
    }
    m << shift
}

fn grid_scale(j: u64, g: i64) -> i64 {
    (64 - j.leading_zeros()) as i64 - g
}

/// Eq. 17 and Eq. 18 on every pair of nearby grid numbers in [1/4, 4),
/// against a brute-force oracle: two numbers are adjacent iff the closed
/// interval between them meets at most two rounding classes.
#[test]
fn adjacency_chain_exhaustive() {
    for bits in 4u32..=8 {
        let prec = p(bits);
        let g = bits as i64 + 4;
        let lo = 1u64 << (g - 2);
        let hi = 1u64 << (g + 2);
        let rounded: Vec<u64> = (lo..hi).map(|j| round_grid(j, bits)).collect();
        let mut changes = vec![0u32; rounded.len()];
        for i in 1..rounded.len() {
            changes[i] = changes[i - 1] + u32::from(rounded[i] != rounded[i - 1]);
        }
        let window = 1u64 << (bits as u64 + 1).min(7);
        for x in lo..hi {
            let xf = BigFloat::from_parts(false, BigUint::from(x), -g, p(30));
            for y in x..(x + window).min(hi) {
                let classes = 1 + changes[(y - lo) as usize] - changes[(x - lo) as usize];
                let oracle = classes <= 2;
                let yf = BigFloat::from_parts(false, BigUint::from(y), -g, p(30));
                assert_eq!(adjacent(&xf, &yf, prec), oracle, "p={bits} x={x} y={y}");
                let top = grid_scale(x, g).max(grid_scale(y, g));
                let diff = if y == x { None } else { Some(grid_scale(y - x, g)) };
                if diff.is_none_or(|d| d <= top - bits as i64 - 2) {
                    assert!(oracle, "sufficient condition fails at p={bits} x={x} y={y}");
                }
                if oracle {
                    assert!(
                        diff.is_none_or(|d| d <= top - bits as i64),
                        "necessary condition fails at p={bits} x={x} y={y}"
                    );
                }
            }
        }
    }
}

/// Two reals that are not adjacent are not phase-similar either.
#[test]
fn phase_similarity_implies_adjacency_on_grid() {
    let bits = 5;
    let prec = p(bits);
    let g = 10;
    for x in (1u64 << 7)..(1u64 << 10) {
        for y in x..x + 64 {
            let xf = BigFloat::from_parts(false, BigUint::from(x), -g, p(30));
            let yf = BigFloat::from_parts(false, BigUint::from(y), -g, p(30));
            if !adjacent(&xf, &yf, prec) {
                assert!(!similar_phase_shift(&BigComplex::real(xf), &BigComplex::real(yf), prec));
            }
        }
    }
}

#[test]
fn lazy_addition_exhaustive_small_precision() {
    for bits in 1u32..=6 {
        let prec = p(bits);
        let m_lo = 1u64 << bits;
        for m in m_lo..(2 * m_lo) {
            for neg in [false, true] {
                let xi = BigFloat::from_parts(neg, BigUint::from(m), 0, prec);
                let sx = xi.scale();
                for eta_m in m_lo..(2 * m_lo) {
                    for gap in 0..4 {
                        for eta_neg in [false, true] {
                            // scale of eta: bits + 1 + e
                            let e = sx.finite().unwrap() - bits as i64 - 3 - gap - (bits as i64 + 1);
                            let eta = BigFloat::from_parts(eta_neg, BigUint::from(eta_m), e, prec);
                            assert!(lazy_add_applies(sx, eta.scale(), prec));
                            assert_eq!(xi.add(&eta, prec), xi);
                        }
                    }
                }
            }
        }
    }
}

fn random_float(rng: &mut ChaCha8Rng, prec: Precision, decades: f64) -> BigFloat {
    let v: f64 = rng.gen_range(-decades..decades);
    let m: f64 = rng.gen_range(1.0..10.0);
    let x = BigFloat::from_f64(m, prec);
    let t = BigFloat::from_i64(10, prec);
    let k = v.round() as i64;
    let mut r = x;
    let pw = (0..k.unsigned_abs()).fold(BigFloat::one(prec), |acc, _| acc.mul(&t, prec));
    r = if k >= 0 { r.mul(&pw, prec) } else { r.div(&pw, prec) };
    if rng.gen_bool(0.5) {
        r.neg()
    } else {
        r
    }
}

#[test]
fn scale_window_over_two_hundred_decades() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let prec = p(80);
    for _ in 0..2000 {
        let x = random_float(&mut rng, prec, 100.0);
        let s = x.scale().finite().unwrap();
        let ax = x.abs();
        assert!(BigFloat::pow2(s - 1, prec) <= ax);
        assert!(ax < BigFloat::pow2(s, prec));
        let n: i64 = rng.gen_range(-500..500);
        assert_eq!(x.mul_pow2(n).scale(), Scale::Finite(s + n));
    }
}

#[test]
fn product_sum_and_part_scales() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let prec = p(64);
    for _ in 0..2000 {
        let z = BigComplex::new(random_float(&mut rng, prec, 30.0), random_float(&mut rng, prec, 30.0));
        let w = BigComplex::new(random_float(&mut rng, prec, 30.0), random_float(&mut rng, prec, 30.0));
        let (sz, sw) = (z.scale().finite().unwrap(), w.scale().finite().unwrap());
        let sp = z.mul_exact(&w).scale().finite().unwrap();
        assert!(sp - sz - sw == 0 || sp - sz - sw == -1);
        let sum = z.add_exact(&w).scale();
        assert!(sum <= Scale::Finite(sz.max(sw) + 1));
        let parts = z.re.scale().max(z.im.scale()).finite().unwrap();
        assert!(sz == parts || sz == parts + 1);
    }
}

#[test]
fn power_scale_against_log() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let prec = p(64);
    for _ in 0..300 {
        let m: u64 = rng.gen_range(1..1 << 20);
        let e: i64 = rng.gen_range(-30..30);
        let z = BigFloat::from_parts(false, BigUint::from(m), e, prec);
        let n: u32 = rng.gen_range(1..60);
        let mut pw = BigFloat::one(prec);
        for _ in 0..n {
            pw = pw.mul_exact(&z);
        }
        let s = pw.scale().finite().unwrap() as f64;
        let l = n as f64 * ((m as f64).log2() + e as f64);
        let d = s - l;
        assert!(d > -1e-9 && d <= 1.0 + 1e-9, "{d}");
    }
}

#[test]
fn sum_of_many_scale_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let prec = p(40);
    for n in [2usize, 17, 1000, 10_000] {
        let xs: Vec<BigFloat> = (0..n).map(|_| random_float(&mut rng, prec, 3.0)).collect();
        let top = xs.iter().map(|x| x.scale()).max().unwrap().finite().unwrap();
        let sum = xs.iter().fold(BigFloat::zero(prec), |acc, x| acc.add_exact(x));
        assert!(sum.scale() <= Scale::Finite(top + Scale::of_usize(n).finite().unwrap()));
    }
}

proptest! {
    #[test]
    fn ratio_criterion_implies_similarity(
        re in -1e6f64..1e6, im in -1e6f64..1e6, dr in -1.0f64..1.0, di in -1.0f64..1.0, bits in 1u32..40
    ) {
        let prec = p(bits);
        let z = BigComplex::from_f64(re, im, p(120));
        prop_assume!(!z.is_zero());
        // perturbation of relative size at most 2^(-p-2) / sqrt 2
        let scale = z.abs_magnitude().log2() - bits as f64 - 2.6;
        let d = BigComplex::new(
            BigFloat::from_f64(dr, p(120)).mul_pow2(scale.floor() as i64),
            BigFloat::from_f64(di, p(120)).mul_pow2(scale.floor() as i64),
        );
        let w = z.add_exact(&d);
        prop_assert!(similar_phase_shift(&z, &w, prec));
    }
}
