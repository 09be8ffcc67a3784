//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by seed validation, special-function evaluation, jet
/// arithmetic and the SUSY/Painleve machinery built on them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("Kummer parameter b = {b} must not be a non-positive integer")]
    KummerBadB { b: f64 },

    #[error("Kummer series for (a={a}, b={b}, z={z}) did not converge within {terms} terms")]
    KummerNonConvergence { a: f64, b: f64, z: f64, terms: usize },

    #[error("log_gamma requires a positive argument, got x = {x}")]
    LogGammaDomain { x: f64 },

    #[error("gamma_ratio requires eps < 1/2, got eps = {eps}")]
    GammaRatioDomain { eps: f64 },

    #[error("jet division by a jet with zero constant term at x0 = {x0}")]
    JetPole { x0: f64 },

    #[error("jet of order {order} is too small, need at least {needed}")]
    JetOrderTooSmall { order: usize, needed: usize },

    #[error("factorization energy eps1 = {eps1} must satisfy eps1 < 1/2")]
    Eps1OutOfRange { eps1: f64 },

    #[error("asymmetry parameter nu1 = {nu1} must satisfy |nu1| < 1")]
    Nu1OutOfRange { nu1: f64 },

    #[error("transformation order k = {k} must lie in 1..={kmax}")]
    KOutOfRange { k: usize, kmax: usize },

    #[error("seed u1 changes sign between x = {left} and x = {right}")]
    NodeDetected { left: f64, right: f64 },

    #[error("singular Wronskian at x = {x}")]
    SingularWronskian { x: f64 },

    #[error("no closed form catalogued for (k = {k}, eps1 = {eps1})")]
    UncataloguedCase { k: usize, eps1: f64 },

    #[error("integration path crosses |g| < {floor} near x = {x}")]
    PathThroughZeroOfG { x: f64, floor: f64 },

    #[error("quadrature did not reach tolerance {tol} on [{a}, {b}]")]
    QuadratureFailure { a: f64, b: f64, tol: f64 },

    #[error("grid abscissas must be strictly increasing")]
    GridNotIncreasing,

    #[error("grid needs xmin < xmax and n >= 2, got [{xmin}, {xmax}] with n = {n}")]
    BadGridSpec { xmin: f64, xmax: f64, n: usize },

    #[error("grid function values must be finite and match the abscissas in length")]
    BadGridValues,

    #[error("jet order override {order} is below the minimum {minimum} for k = {k}")]
    JetOrderOverrideTooSmall { order: usize, minimum: usize, k: usize },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("bad config line {line} in {path}: {reason}")]
    BadConfig { path: String, line: usize, reason: String },
}

impl Error {
    /// True for errors that are violations of the validity domain
    /// (parameter gates and nodelessness), as opposed to numerical failures.
    pub fn is_domain_violation(&self) -> bool {
        matches!(
            self,
            Error::Eps1OutOfRange { .. }
                | Error::Nu1OutOfRange { .. }
                | Error::KOutOfRange { .. }
                | Error::NodeDetected { .. }
                | Error::GammaRatioDomain { .. }
                | Error::LogGammaDomain { .. }
                | Error::KummerBadB { .. }
        )
    }
}
