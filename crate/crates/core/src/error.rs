use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate triangle: |signed area| = {area:e} below threshold {threshold:e}")]
    DegenerateTriangle { area: f64, threshold: f64 },

    #[error("{name} = {value} is outside the valid domain {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eigensolver did not converge after {iterations} iterations (worst residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error(
        "eigenvalue cluster split at n = {n}: relative gap {gap:e} between lambda_n and lambda_(n+1); choose n at a cluster boundary"
    )]
    SplitCluster { n: usize, gap: f64 },

    #[error("could not bracket zero {k} of J_{nu}")]
    BracketFailure { nu: f64, k: usize },

    #[error("quadrature did not converge: estimated error {estimate:e} exceeds tolerance {tolerance:e}")]
    Quadrature { estimate: f64, tolerance: f64 },

    #[error("certification failed: epsilon = {epsilon} is not below 1")]
    CertificationFailed { epsilon: f64 },

    #[error("minimum of {curve} lies at the edge of the sweep grid (alpha = {alpha})")]
    MinimumAtEdge { curve: String, alpha: f64 },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Self {
        Error::OutOfDomain {
            name,
            value,
            domain,
        }
    }
}
