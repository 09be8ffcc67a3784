//! SUSY partner potentials of the harmonic oscillator and the Painleve IV
//! solutions they generate.
//!
//! Starting from a nodeless Schrodinger seed solution `u(x, eps1, nu1)` of the
//! oscillator at factorization energy `eps1 < 1/2`, a chain of `k` seeds
//! related by the annihilation operator builds a k-th order Darboux/Crum
//! transformation.  The Wronskian of the chain yields the partner potential
//! `V_k = x^2/2 - (ln W)''` and the log-derivative of a ratio of Wronskians
//! yields a solution `g_k(x, eps1)` of the Painleve IV equation
//!
//! ```text
//! g'' = g'^2/(2g) + (3/2) g^3 + 4 x g^2 + 2 (x^2 - a) g + b/g .
//! ```
//!
//! Every output is verifiable against independent contracts: Painleve IV
//! residuals, Schrodinger residuals of the extremal states, closed-form
//! catalogs of the error-function and rational solution hierarchies, and the
//! `Q3`/`P2` identities of the second-order polynomial Heisenberg algebra
//! realized by third-order ladder operators.
//!
//! The crate is organized as:
//!
//! - [`numerics`]: truncated Taylor jets and the special functions
//!   (Kummer `1F1`, log-gamma, `erf`) everything else is built on.
//! - [`seeds`]: seed evaluation, annihilation-operator descent, nodelessness.
//! - [`susy`]: Wronskians, partner potentials, Painleve IV solutions,
//!   spectra, extremal states, Schrodinger residuals.
//! - [`painleve`]: Painleve IV residuals, `(a, b)` parameters, ladder
//!   operators and algebra checks, extremal states rebuilt from `g` alone.
//! - [`hierarchies`]: closed-form solution catalogs and the classifier.
//! - [`cli`]: the `pain4` command-line frontend and CSV/JSON export.
//! - [`verify`]: the one-shot verification suite behind `pain4 verify`.

pub mod cli;
pub mod error;
pub mod grid;
pub mod hierarchies;
pub mod numerics;
pub mod painleve;
pub mod seeds;
pub mod susy;
pub mod verify;

pub use error::Error;
pub use grid::{GridFunction, GridSpec};
pub use numerics::jet::Jet;
pub use seeds::{SeedFamily, SeedParams};
