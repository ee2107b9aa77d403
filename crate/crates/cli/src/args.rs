use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fastpoly::arith::Precision;

#[derive(Parser, Debug)]
#[command(
    name = "fastpoly",
    about = "Fast evaluation of high-degree polynomials in arbitrary precision",
    override_usage = "fastpoly -<task> <precision> [files and flags]",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub task: Task,
}

fn parse_precision(s: &str) -> Result<Precision, String> {
    let p: u32 = s.parse().map_err(|_| format!("precision must be a positive integer, got {s:?}"))?;
    Precision::new(p).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Task {
    /// Sum of two polynomials
    #[command(name = "sum")]
    Sum(Binary),
    /// Difference of two polynomials
    #[command(name = "diff")]
    Diff(Binary),
    /// Product of two polynomials
    #[command(name = "prod")]
    Prod(Binary),
    /// Derivative of a polynomial
    #[command(name = "der")]
    Der(Unary),
    /// Monic polynomial with the given roots
    #[command(name = "roots")]
    Roots(Unary),
    /// Chebyshev polynomial T_n
    #[command(name = "Chebyshev")]
    Chebyshev(Family),
    /// Legendre polynomial P_n
    #[command(name = "Legendre")]
    Legendre(Family),
    /// Hermite polynomial H_n (physicists' normalisation)
    #[command(name = "Hermite")]
    Hermite(Family),
    /// Laguerre polynomial L_n
    #[command(name = "Laguerre")]
    Laguerre(Family),
    /// Hyperbolic polynomial p_n with p_1 = z, p_(n+1) = p_n^2 + z, of degree 2^(n-1)
    #[command(name = "hyperbolic")]
    Hyperbolic(Family),
    /// Polynomial of degree d with coefficient scales sqrt((k+1)(d+1-k))
    #[command(name = "halfCircle")]
    HalfCircle(HalfCircle),
    /// Concatenation of two lists
    #[command(name = "cat")]
    Cat(Binary),
    /// Real parts
    #[command(name = "re")]
    Re(Unary),
    /// Imaginary parts
    #[command(name = "im")]
    Im(Unary),
    /// Complex conjugates
    #[command(name = "conj")]
    Conj(Unary),
    /// re(a_i) + i re(b_i)
    #[command(name = "join")]
    Join(Binary),
    /// Elementwise products a_i b_i
    #[command(name = "tensor")]
    Tensor(Binary),
    /// re(a_i) + i re(b_j) for all pairs
    #[command(name = "grid")]
    Grid(Binary),
    /// Complex exponential of each point
    #[command(name = "exp")]
    Exp(Unary),
    /// (a, b) -> a exp(ib)
    #[command(name = "rot")]
    Rot(Unary),
    /// Reals in arithmetic progression
    #[command(name = "unif", allow_negative_numbers = true)]
    Unif(Range),
    /// Reals drawn uniformly from an interval
    #[command(name = "rand", allow_negative_numbers = true)]
    Rand(RandRange),
    /// Standard normal reals
    #[command(name = "normal")]
    Normal(Count),
    /// Spherical coordinates (angle from the pole, longitude) of points spread evenly on the sphere
    #[command(name = "sphere")]
    Sphere(Count),
    /// Stereographic projection of spherical coordinates to the complex plane
    #[command(name = "polar")]
    Polar(Unary),
    /// Compare two lists point by point
    #[command(name = "comp")]
    Comp(Comp),
    /// Evaluate a polynomial at each point
    #[command(name = "eval")]
    Eval(Eval),
    /// Evaluate the derivative at each point
    #[command(name = "evalD")]
    EvalD(Eval),
    /// One Newton step from each point
    #[command(name = "evalN")]
    EvalN(Eval),
    /// Newton iteration from each starting point
    #[command(name = "iterN")]
    IterN(IterN),
    /// Concave cover, good coefficients and the log2|z| regimes of the kept set
    #[command(name = "analyse")]
    Analyse(Analyse),
}

#[derive(Args, Debug)]
pub struct Binary {
    #[arg(value_parser = parse_precision)]
    pub precision: Precision,
    pub first: PathBuf,
    pub second: PathBuf,
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct Unary {
    #[arg(value_parser = parse_precision)]
    pub precision: Precision,
    pub input: PathBuf,
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct Family {
    #[arg(value_parser = parse_precision)]
    pub precision: Precision,
    /// Index n of the family member
    pub n: usize,
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct HalfCircle {
    #[arg(value_parser = parse_precision)]
    pub precision: Precision,
    pub degree: usize,
    pub output: PathBuf,
    /// Multiply each coefficient by a random unit complex number
    #[arg(long)]
    pub complex: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct Range {
    #[arg(value_parser = parse_precision)]
    pub precision: Precision,
    pub count: usize,
    pub start: String,
    pub end: String,
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct RandRange {
    #[command(flatten)]
    pub range: Range,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct Count {
    #[arg(value_parser = parse_precision)]
    pub precision: Precision,
    pub count: usize,
    pub output: PathBuf,
    /// Seed for random generators
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct Comp {
    #[arg(value_parser = parse_precision)]
    pub precision: Precision,
    pub first: PathBuf,
    pub second: PathBuf,
    /// Optional file receiving the number of agreeing bits per row
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Eval {
    #[arg(value_parser = parse_precision)]
    pub precision: Precision,
    pub polynomial: PathBuf,
    pub points: PathBuf,
    pub output: PathBuf,
    /// Write "error_bound_bits, correct_bits, terms_kept" per point
    #[arg(long)]
    pub errors: Option<PathBuf>,
    /// Also time Hörner and repeated lazy passes; the value is the number of lazy passes
    #[arg(long, value_name = "REPS")]
    pub bench: Option<usize>,
    /// Split the points across this many worker threads
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Args, Debug)]
pub struct IterN {
    #[arg(value_parser = parse_precision)]
    pub precision: Precision,
    pub polynomial: PathBuf,
    pub starts: PathBuf,
    pub output: PathBuf,
    /// Maximal number of Newton steps per start
    #[arg(long, default_value_t = 100)]
    pub iterations: usize,
    /// Stop once the step is this many bits below the iterate (default: the precision)
    #[arg(long)]
    pub tolerance: Option<i64>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Args, Debug)]
pub struct Analyse {
    #[arg(value_parser = parse_precision)]
    pub precision: Precision,
    pub polynomial: PathBuf,
    /// Report file; standard output when absent
    pub output: Option<PathBuf>,
}
