//! Self-contained numerics: truncated Taylor jets and special functions.

pub mod jet;
pub mod special;

pub use jet::Jet;
pub use special::{erf, gamma_ratio, kummer_1f1, log_gamma};
