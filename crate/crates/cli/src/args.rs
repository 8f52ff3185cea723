use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Parser)]
#[command(
    name = "trispec",
    version,
    about = "Dirichlet eigenvalues of triangles: exact equilateral spectra, FEM, certified bounds and verification pipelines",
    after_help = "Exit status: 0 all checks pass, 1 a check fails or a computation errors, 2 inconclusive (margin below the FEM error band), 64 usage error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format [default: csv for tables, json otherwise]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Equilateral spectrum as lattice indices (m, n), ordered by q = m^2 + mn + n^2
    Spectrum(SpectrumArgs),
    /// Exact equilateral counting function against its two-sided bounds
    Lattice(LatticeArgs),
    /// Run a verification pipeline
    #[command(subcommand)]
    Verify(Verify),
    /// Extrapolated finite element eigenvalues of one triangle
    Fem(FemArgs),
    /// Certified enclosure of the second eigenvalue of T(0, 5/2)
    Certify(CertifyArgs),
    /// Fundamental, antisymmetric and symmetric tones of isosceles triangles over an aperture grid
    Sweep(SweepArgs),
    /// Minimizers of lambda_2 D^2 and (lambda_1 + lambda_2) D^2 over rectangles of diameter 1
    Rectangle,
    /// Energy fractions gamma and delta of the first n eigenfunctions of T(a, b)
    Gamma(GammaArgs),
    /// Scale functionals, hull and classical bounds of one triangle
    Geometry(TriangleArgs),
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// 6 q^a_j > 11 q_j for j <= 110 except j = 4, and the partial sums at j = 4
    LemmaExplicit,
    /// Lambda^a_n > 11/6 Lambda_n for every n: exact sums and the tail ratio
    Compequilateral {
        /// Largest n checked by exact sums
        #[arg(long, default_value_t = 110)]
        n: usize,
    },
    /// Lambda_n D^2 above its equilateral value for T(a, b), n = 1..N
    Theorem1(Theorem1Args),
    /// lambda_2 D^2 > 112 pi^2 / 9 for subequilateral T(0, b)
    Theorem2(Theorem2Args),
    /// The reduced inequality on (sqrt 3, h) behind the transplantation branch
    Condch(CondchArgs),
    /// Interval monotonicity of the isosceles tones, mirror identity and corner at pi/3
    Monotonicity(SweepArgs),
    /// Second isosceles mode is symmetric below pi/3 and antisymmetric above
    Observation(SweepArgs),
    /// Plotted minima and closed-form values of the isosceles sweeps
    Figures(FigureArgs),
    /// lambda_1 A of right triangles is non-increasing in the smallest angle
    RightFamily(LevelArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Full,
    Antisym,
    Sym,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Number of eigenvalues
    #[arg(long, default_value_t = 110)]
    pub n: usize,
    /// Symmetry class; without it the full and antisymmetric spectra are listed side by side
    #[arg(long, value_enum)]
    pub class: Option<ClassArg>,
    /// Side length used for the eigenvalues
    #[arg(long, default_value_t = 1.0)]
    pub side: f64,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// Number of log-spaced lambda values in (48 pi^2, lambda-max]
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    #[arg(long, default_value_t = 1e6)]
    pub lambda_max: f64,
}

#[derive(Debug, Args)]
pub struct Theorem1Args {
    /// Heights b of T(a, b); comma separated
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [1.8, 2.0, 2.5, 3.0, 4.0])]
    pub b: Vec<f64>,
    /// Apex abscissa a of T(a, b)
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub a: f64,
    /// Largest n
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    #[arg(long, default_value_t = 8)]
    pub level: u32,
}

#[derive(Debug, Args)]
pub struct Theorem2Args {
    /// Heights b >= sqrt 3 of T(0, b); comma separated
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [SQRT3, 1.8, 2.0, 2.25, 2.5, 3.0, 4.0])]
    pub b: Vec<f64>,
    #[arg(long, default_value_t = 7)]
    pub level: u32,
}

#[derive(Debug, Args)]
pub struct CondchArgs {
    /// Upper end h of the b interval
    #[arg(long, default_value_t = 2.5)]
    pub h: f64,
    /// Number of b values strictly inside (sqrt 3, h)
    #[arg(long, default_value_t = 1000)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = PI / 6.0)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = 2.0 * PI / 3.0)]
    pub alpha_max: f64,
    /// Points of the uniform aperture grid
    #[arg(long, default_value_t = 82)]
    pub alpha_steps: usize,
    /// Normalization of the tones: side, diameter, perimeter or area
    #[arg(long, default_value = "side")]
    pub scaling: String,
    #[arg(long, default_value_t = 6)]
    pub level: u32,
    /// Skip the local refinement near pi/3 and near the minima
    #[arg(long)]
    pub no_refine: bool,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// Relative tolerance for the plotted minima
    #[arg(long, default_value_t = 0.01)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    #[arg(long, default_value_t = 6)]
    pub level: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BcArg {
    /// Dirichlet on every side
    Dirichlet,
    /// Neumann on the side from the first to the second vertex
    NeumannFirst,
}

/// A triangle given by vertices, by aperture (unit equal sides) or as T(a, b).
#[derive(Debug, Clone, Args)]
pub struct TriangleArgs {
    /// Six comma separated coordinates x1,y1,x2,y2,x3,y3
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["alpha", "a", "b"])]
    pub vertices: Option<Vec<f64>>,
    /// Aperture of an isosceles triangle with unit equal sides
    #[arg(long, conflicts_with_all = ["a", "b"])]
    pub alpha: Option<f64>,
    /// Apex abscissa of T(a, b) with base (-1,0)-(1,0)
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Apex height of T(a, b)
    #[arg(long)]
    pub b: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FemArgs {
    #[command(flatten)]
    pub triangle: TriangleArgs,
    /// Number of eigenvalues
    #[arg(long, default_value_t = 6)]
    pub k: usize,
    #[arg(long, default_value_t = 7)]
    pub level: u32,
    #[arg(long, value_enum, default_value_t = BcArg::Dirichlet)]
    pub bc: BcArg,
    /// Also write the finest mesh in indexed text form to this file
    #[arg(long)]
    pub mesh_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// FEM level of the cross-check; 0 skips it
    #[arg(long, default_value_t = 7)]
    pub level: u32,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, default_value_t = 2.0)]
    pub b: f64,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 7)]
    pub level: u32,
}
