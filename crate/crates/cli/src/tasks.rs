use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use fastpoly::arith::{parse_decimal, BigComplex, BigFloat, Precision};
use fastpoly::bench::benchmark;
use fastpoly::csvfile::{read_complex_file, write_complex_file};
use fastpoly::engine::{
    analyse, evaluate, evaluate_derivative, newton_iterate, newton_step, precondition, EvalReport, Polynomial,
    PreconditionedPoly,
};
use fastpoly::factory::{self, FamilySpec};
use fastpoly::points;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::args::{Eval, Task};

#[derive(Debug)]
pub enum TaskError {
    Usage(String),
    Data(String),
}

fn data(e: impl std::fmt::Display) -> TaskError {
    TaskError::Data(e.to_string())
}

type Result<T> = std::result::Result<T, TaskError>;

fn read(path: &Path, p: Precision) -> Result<Vec<BigComplex>> {
    read_complex_file(path, p).map_err(data)
}

fn write(path: &Path, values: &[BigComplex]) -> Result<()> {
    write_complex_file(path, values).map_err(data)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| TaskError::Data(format!("{}: {e}", path.display())))
}

fn read_poly(path: &Path, p: Precision) -> Result<Polynomial> {
    Polynomial::new(read(path, p)?, p).map_err(|e| TaskError::Data(format!("{}: {e}", path.display())))
}

fn write_poly(path: &Path, poly: &Polynomial) -> Result<()> {
    write(path, poly.coefficients())
}

fn integers(c: Vec<BigInt>, p: Precision) -> Vec<BigComplex> {
    c.iter().map(|v| BigComplex::real(BigFloat::from_bigint(v, p))).collect()
}

fn rationals(c: Vec<BigRational>, p: Precision) -> Vec<BigComplex> {
    c.iter().map(|q| BigComplex::real(BigFloat::from_ratio(q.numer(), q.denom(), p))).collect()
}

fn number(text: &str, p: Precision) -> Result<BigFloat> {
    parse_decimal(text, p).map_err(|e| TaskError::Usage(e.to_string()))
}

/// Applies `f` to every point, optionally on a pool of `threads` workers;
/// results keep the input order.
fn map_points<T, F>(threads: usize, points: &[BigComplex], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&BigComplex) -> T + Sync + Send,
{
    match threads {
        0 => Err(TaskError::Usage("--threads must be at least 1".to_string())),
        1 => Ok(points.iter().map(f).collect()),
        n => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(data)?;
            Ok(pool.install(|| points.par_iter().map(f).collect()))
        }
    }
}

fn error_row(r: &EvalReport) -> String {
    let bound = r.error_bound.log2();
    let bits = if bound == f64::NEG_INFINITY { "-inf".to_string() } else { format!("{}", bound.ceil() as i64) };
    format!("{bits}, {}, {}\n", r.trusted_bits, r.kept_terms)
}

pub fn run(task: Task) -> Result<()> {
    match task {
        Task::Sum(a) => binary_poly(&a, factory::sum),
        Task::Diff(a) => binary_poly(&a, factory::diff),
        Task::Prod(a) => binary_poly(&a, factory::product),
        Task::Der(a) => {
            let poly = read_poly(&a.input, a.precision)?;
            write_poly(&a.output, &factory::derivative(&poly).map_err(data)?)
        }
        Task::Roots(a) => {
            let roots = read(&a.input, a.precision)?;
            write_poly(&a.output, &factory::from_roots(&roots, a.precision).map_err(data)?)
        }
        Task::Chebyshev(a) => write(&a.output, &integers(factory::chebyshev(a.n), a.precision)),
        Task::Legendre(a) => write(&a.output, &rationals(factory::legendre(a.n), a.precision)),
        Task::Hermite(a) => write(&a.output, &integers(factory::hermite(a.n), a.precision)),
        Task::Laguerre(a) => write(&a.output, &rationals(factory::laguerre(a.n), a.precision)),
        Task::Hyperbolic(a) => {
            if a.n == 0 {
                return Err(TaskError::Usage("hyperbolic index must be at least 1".to_string()));
            }
            write(&a.output, &integers(factory::hyperbolic(a.n), a.precision))
        }
        Task::HalfCircle(a) => {
            let family = if a.complex { factory::Family::HalfCircleComplex } else { factory::Family::HalfCircleReal };
            let poly = factory::generate(FamilySpec::seeded(family, a.degree, a.seed), a.precision)
                .map_err(|e| TaskError::Usage(e.to_string()))?;
            write_poly(&a.output, &poly)
        }
        Task::Cat(a) => {
            let (x, y) = (read(&a.first, a.precision)?, read(&a.second, a.precision)?);
            write(&a.output, &points::cat(&x, &y))
        }
        Task::Join(a) => {
            let (x, y) = (read(&a.first, a.precision)?, read(&a.second, a.precision)?);
            write(&a.output, &points::join(&x, &y).map_err(data)?)
        }
        Task::Tensor(a) => {
            let (x, y) = (read(&a.first, a.precision)?, read(&a.second, a.precision)?);
            write(&a.output, &points::tensor(&x, &y, a.precision).map_err(data)?)
        }
        Task::Grid(a) => {
            let (x, y) = (read(&a.first, a.precision)?, read(&a.second, a.precision)?);
            write(&a.output, &points::grid(&x, &y))
        }
        Task::Re(a) => write(&a.output, &points::re(&read(&a.input, a.precision)?)),
        Task::Im(a) => write(&a.output, &points::im(&read(&a.input, a.precision)?)),
        Task::Conj(a) => write(&a.output, &points::conj(&read(&a.input, a.precision)?)),
        Task::Exp(a) => write(&a.output, &points::exp(&read(&a.input, a.precision)?, a.precision)),
        Task::Rot(a) => write(&a.output, &points::rot(&read(&a.input, a.precision)?, a.precision)),
        Task::Polar(a) => write(&a.output, &points::polar(&read(&a.input, a.precision)?, a.precision)),
        Task::Unif(a) => {
            let p = a.precision;
            let v = points::unif(a.count, &number(&a.start, p)?, &number(&a.end, p)?, p)
                .map_err(|e| TaskError::Usage(e.to_string()))?;
            write(&a.output, &v)
        }
        Task::Rand(a) => {
            let r = &a.range;
            let p = r.precision;
            write(&r.output, &points::rand(r.count, &number(&r.start, p)?, &number(&r.end, p)?, a.seed, p))
        }
        Task::Normal(a) => write(&a.output, &points::normal(a.count, a.seed, a.precision)),
        Task::Sphere(a) => {
            let v = points::sphere(a.count, a.precision).map_err(|e| TaskError::Usage(e.to_string()))?;
            write(&a.output, &v)
        }
        Task::Comp(a) => {
            let (x, y) = (read(&a.first, a.precision)?, read(&a.second, a.precision)?);
            let c = points::compare(&x, &y, a.precision).map_err(data)?;
            let min = c.agreeing_bits.iter().min().copied().unwrap_or(a.precision.get());
            println!("points: {}", x.len());
            println!("mismatches: {}", c.mismatches);
            println!("min agreeing bits: {min}");
            if let Some(out) = &a.output {
                let text: String = c.agreeing_bits.iter().map(|b| format!("{b}\n")).collect();
                write_text(out, &text)?;
            }
            Ok(())
        }
        Task::Eval(a) => eval_task(&a, Mode::Value),
        Task::EvalD(a) => eval_task(&a, Mode::Derivative),
        Task::EvalN(a) => eval_task(&a, Mode::Newton),
        Task::IterN(a) => {
            let p = a.precision;
            let poly = read_poly(&a.polynomial, p)?;
            let starts = read(&a.starts, p)?;
            let (pp, ppd) = with_derivative(&poly, p)?;
            let tol = a.tolerance.unwrap_or(p.get() as i64);
            let outcomes = map_points(a.threads, &starts, |z| {
                newton_iterate(&pp, &ppd, std::slice::from_ref(z), a.iterations, tol).remove(0)
            })?;
            let roots: Vec<BigComplex> = outcomes.iter().map(|o| o.root.round_to(p)).collect();
            write(&a.output, &roots)?;
            let converged = outcomes.iter().filter(|o| o.converged).count();
            let failed = outcomes.iter().filter(|o| o.error.is_some()).count();
            println!("converged: {converged} of {}", outcomes.len());
            if failed > 0 {
                println!("stopped on a vanishing derivative: {failed}");
            }
            Ok(())
        }
        Task::Analyse(a) => {
            let poly = read_poly(&a.polynomial, a.precision)?;
            let pp = precondition(&poly, a.precision).map_err(data)?;
            let text = analysis_text(&pp);
            match &a.output {
                Some(out) => write_text(out, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
    }
}

fn binary_poly(
    a: &crate::args::Binary,
    op: fn(&Polynomial, &Polynomial) -> std::result::Result<Polynomial, factory::FactoryError>,
) -> Result<()> {
    let x = read_poly(&a.first, a.precision)?;
    let y = read_poly(&a.second, a.precision)?;
    write_poly(&a.output, &op(&x, &y).map_err(data)?)
}

fn with_derivative(poly: &Polynomial, p: Precision) -> Result<(PreconditionedPoly, PreconditionedPoly)> {
    let d = factory::derivative(poly).map_err(|_| TaskError::Data("derivative is identically zero".to_string()))?;
    let pp = precondition(poly, p).map_err(data)?;
    let ppd = precondition(&d, p).map_err(data)?;
    Ok((pp, ppd))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Value,
    Derivative,
    Newton,
}

fn eval_task(a: &Eval, mode: Mode) -> Result<()> {
    let p = a.precision;
    let poly = read_poly(&a.polynomial, p)?;
    let pts = read(&a.points, p)?;
    let results: Vec<std::result::Result<(BigComplex, EvalReport), String>> = match mode {
        Mode::Value => {
            let pp = precondition(&poly, p).map_err(data)?;
            map_points(a.threads, &pts, |z| {
                let r = evaluate(&pp, z);
                Ok((r.value.clone(), r))
            })?
        }
        Mode::Derivative => {
            let d = factory::derivative(&poly)
                .map_err(|_| TaskError::Data("derivative is identically zero".to_string()))?;
            let ppd = precondition(&d, p).map_err(data)?;
            map_points(a.threads, &pts, |z| {
                let r = evaluate_derivative(&ppd, z);
                Ok((r.value.clone(), r))
            })?
        }
        Mode::Newton => {
            let (pp, ppd) = with_derivative(&poly, p)?;
            map_points(a.threads, &pts, |z| newton_step(&pp, &ppd, z).map_err(|e| e.to_string()))?
        }
    };
    let mut values = Vec::with_capacity(results.len());
    let mut errors = String::new();
    for (i, r) in results.into_iter().enumerate() {
        let (v, report) = r.map_err(|e| TaskError::Data(format!("point {}: {e}", i + 1)))?;
        values.push(v.round_to(p));
        errors.push_str(&error_row(&report));
    }
    write(&a.output, &values)?;
    if let Some(path) = &a.errors {
        write_text(path, &errors)?;
    }
    if let Some(reps) = a.bench {
        let target = match mode {
            Mode::Value => poly,
            _ => factory::derivative(&poly).map_err(data)?,
        };
        let r = benchmark(&target, &pts, p, reps).map_err(data)?;
        println!("degree: {}", r.degree);
        println!("points: {}", r.points);
        println!("precision: {}", r.precision);
        println!("horner seconds: {:.6}", r.horner_seconds);
        println!("precondition seconds: {:.6}", r.precondition_seconds);
        println!("evaluation seconds: {:.6}", r.evaluation_seconds);
        println!("single gain: {:.3}", r.single_gain);
        println!("asymptotic gain: {:.3}", r.asymptotic_gain);
        println!("mean kept terms: {:.2}", r.mean_kept);
        println!("mean |bias| bits: {:.3}", r.mean_abs_bias());
        for (k, c) in &r.bias {
            println!("bias {k:+}: {c}");
        }
    }
    Ok(())
}

fn analysis_text(pp: &PreconditionedPoly) -> String {
    let r = analyse(pp);
    let mut s = String::new();
    let _ = writeln!(s, "# degree {}, precision {}, drop {} bits", pp.degree(), pp.precision().get(), pp.drop_bits());
    let _ = writeln!(s, "# cover vertices: index, scale");
    for v in &r.vertices {
        let _ = writeln!(s, "{}, {}", v.index, v.height);
    }
    let _ = writeln!(s, "# good coefficients");
    let good: Vec<String> = r.good.iter().map(usize::to_string).collect();
    let _ = writeln!(s, "{}", good.join(" "));
    let _ = writeln!(s, "# regimes: log2|z| from, log2|z| to, kept coefficients");
    for g in &r.regimes {
        let kept: Vec<String> = g.kept.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "{}, {}, {}", g.lambda_min, g.lambda_max, kept.join(" "));
    }
    s
}
