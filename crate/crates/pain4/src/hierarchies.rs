//! The three solution hierarchies and their closed-form catalogs.
//!
//! For generic `(eps1, nu1)` the solutions involve Kummer functions; on the
//! half-integer energies `eps1 = -(2m+1)/2` they collapse to error-function
//! expressions, and with additionally `nu1 = 0` on `eps1 = -(4m+1)/2` they
//! collapse further to rational functions.  The catalogs below are finite
//! transcriptions; uncatalogued parameter pairs report an error so callers
//! fall back to the general Wronskian route.

use crate::error::Error;
use crate::numerics::special::{erf, gamma_ratio, kummer_1f1, log_gamma};
use crate::seeds::SeedParams;
use serde::Serialize;

const SQRT_PI: f64 = 1.772_453_850_905_516;
/// Half-integer membership tolerance for the classifier and catalogs.
const CLASS_TOL: f64 = 1e-12;

/// Which closed functional form a parameter pair collapses to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HierarchyClass {
    ConfluentHypergeometric,
    ErrorFunction,
    Rational,
}

impl std::fmt::Display for HierarchyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HierarchyClass::ConfluentHypergeometric => write!(f, "ConfluentHypergeometric"),
            HierarchyClass::ErrorFunction => write!(f, "ErrorFunction"),
            HierarchyClass::Rational => write!(f, "Rational"),
        }
    }
}

fn near(x: f64, target: f64) -> bool {
    (x - target).abs() <= CLASS_TOL
}

/// True when `eps` sits on `{-1/2, -3/2, -5/2, ...}`.
fn is_odd_half_integer(eps: f64) -> bool {
    if eps > -0.5 + CLASS_TOL {
        return false;
    }
    let m = (-eps - 0.5).round();
    near(eps, -m - 0.5)
}

/// True when `eps` sits on `{-1/2, -5/2, -9/2, ...}` (step 2).
fn is_rational_energy(eps: f64) -> bool {
    if !is_odd_half_integer(eps) {
        return false;
    }
    let m = (-eps - 0.5).round();
    (m as i64) % 2 == 0
}

/// Reports the most specific class of the pair `(eps1, nu1)`.
pub fn classify(params: &SeedParams) -> HierarchyClass {
    if params.nu1() == 0.0 && is_rational_energy(params.eps1()) {
        HierarchyClass::Rational
    } else if is_odd_half_integer(params.eps1()) {
        HierarchyClass::ErrorFunction
    } else {
        HierarchyClass::ConfluentHypergeometric
    }
}

/// Auxiliary function `phi_nu(x) = sqrt(pi) e^{x^2} [1 + nu erf(x)]`.
pub fn phi_aux(nu: f64, x: f64) -> f64 {
    SQRT_PI * (x * x).exp() * (1.0 + nu * erf(x))
}

/// Companion combination `sqrt(pi) e^{x^2} [nu + erf(x)]`, the form the
/// `eps1 = -3/2` seed actually produces.
fn phi_companion(nu: f64, x: f64) -> f64 {
    SQRT_PI * (x * x).exp() * (nu + erf(x))
}

/// First-order solution in closed form, directly from the seed bracket:
///
/// ```text
///        2 nu G(a2)[(3-6x^2) 1F1(a2,3/2;x^2) + x^2 (3-2e) 1F1(a2+1,5/2;x^2)]
/// g_1 =  -----------------------------------------------------------------
///              3 G(a1) 1F1(a1,1/2;x^2) + 6 nu x G(a2) 1F1(a2,3/2;x^2)
///
///        3 x G(a1)[-2 1F1(a1,1/2;x^2) + (1-2e) 1F1(a1+1,3/2;x^2)]
///      + -------------------------------------------------------
///                       (same denominator)
/// ```
///
/// with `a1 = (1-2e)/4`, `a2 = (3-2e)/4` and `G = Gamma`.
pub fn g1_explicit(eps1: f64, nu1: f64, x: f64) -> Result<f64, Error> {
    if !(eps1 < 0.5) {
        return Err(Error::Eps1OutOfRange { eps1 });
    }
    let a1 = (1.0 - 2.0 * eps1) / 4.0;
    let a2 = (3.0 - 2.0 * eps1) / 4.0;
    let z = x * x;
    let gamma1 = log_gamma(a1)?.exp();
    let gamma2 = log_gamma(a2)?.exp();
    let f_a1 = kummer_1f1(a1, 0.5, z)?;
    let f_a2 = kummer_1f1(a2, 1.5, z)?;
    let f_a1p = kummer_1f1(a1 + 1.0, 1.5, z)?;
    let f_a2p = kummer_1f1(a2 + 1.0, 2.5, z)?;
    let den = 3.0 * gamma1 * f_a1 + 6.0 * nu1 * x * gamma2 * f_a2;
    let num_even = 2.0 * nu1 * gamma2 * ((3.0 - 6.0 * z) * f_a2 + z * (3.0 - 2.0 * eps1) * f_a2p);
    let num_odd = 3.0 * x * gamma1 * (-2.0 * f_a1 + (1.0 - 2.0 * eps1) * f_a1p);
    Ok((num_even + num_odd) / den)
}

/// Error-function hierarchy catalog.
///
/// Covers `(k, eps1)` in `{(1,-1/2), (1,-3/2), (1,-5/2), (2,-1/2)}`.
pub fn erf_hierarchy(k: usize, eps1: f64, nu1: f64, x: f64) -> Result<f64, Error> {
    let p = phi_aux(nu1, x);
    if k == 1 && near(eps1, -0.5) {
        return Ok(2.0 * nu1 / p);
    }
    if k == 1 && near(eps1, -1.5) {
        let q = phi_companion(nu1, x);
        return Ok(q / (1.0 + x * q));
    }
    if k == 1 && near(eps1, -2.5) {
        return Ok(4.0 * (nu1 + x * p) / (2.0 * nu1 * x + (1.0 + 2.0 * x * x) * p));
    }
    if k == 2 && near(eps1, -0.5) {
        let t = nu1 + x * p;
        return Ok(4.0 * nu1 * t * t / (p * (p * p - 2.0 * nu1 * x * p - 2.0 * nu1 * nu1)));
    }
    Err(Error::UncataloguedCase { k, eps1 })
}

/// One term of a rational solution: `scale * num(x) / den(x)`, polynomials in
/// ascending powers, Horner-evaluated.
fn rational_term(scale: f64, num: &[f64], den: &[f64], x: f64) -> f64 {
    scale * horner(num, x) / horner(den, x)
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Rational hierarchy catalog (`nu1 = 0`).
///
/// Covers `(k, eps1)` with `eps1` in `{-5/2, -9/2, -13/2}` for `k = 1, 2` and
/// `{-5/2, -9/2}` for `k = 3`.
pub fn rational_hierarchy(k: usize, eps1: f64, x: f64) -> Result<f64, Error> {
    if k == 1 && near(eps1, -2.5) {
        return Ok(rational_term(4.0, &[0.0, 1.0], &[1.0, 0.0, 2.0], x));
    }
    if k == 1 && near(eps1, -4.5) {
        return Ok(rational_term(
            8.0,
            &[0.0, 3.0, 0.0, 2.0],
            &[3.0, 0.0, 12.0, 0.0, 4.0],
            x,
        ));
    }
    if k == 1 && near(eps1, -6.5) {
        return Ok(rational_term(
            12.0,
            &[0.0, 15.0, 0.0, 20.0, 0.0, 4.0],
            &[15.0, 0.0, 90.0, 0.0, 60.0, 0.0, 8.0],
            x,
        ));
    }
    if k == 2 && near(eps1, -2.5) {
        return Ok(rational_term(-4.0, &[0.0, 1.0], &[1.0, 0.0, 2.0], x)
            + rational_term(16.0, &[0.0, 0.0, 0.0, 1.0], &[3.0, 0.0, 0.0, 0.0, 4.0], x));
    }
    if k == 2 && near(eps1, -4.5) {
        return Ok(rational_term(
            -8.0,
            &[0.0, 3.0, 0.0, 2.0],
            &[3.0, 0.0, 12.0, 0.0, 4.0],
            x,
        ) + rational_term(
            32.0,
            &[0.0, 0.0, 0.0, 15.0, 0.0, 12.0, 0.0, 4.0],
            &[45.0, 0.0, 0.0, 0.0, 120.0, 0.0, 64.0, 0.0, 16.0],
            x,
        ));
    }
    if k == 2 && near(eps1, -6.5) {
        return Ok(rational_term(
            -12.0,
            &[0.0, 15.0, 0.0, 20.0, 0.0, 4.0],
            &[15.0, 0.0, 90.0, 0.0, 60.0, 0.0, 8.0],
            x,
        ) + rational_term(
            48.0,
            &[0.0, 0.0, 0.0, 525.0, 0.0, 840.0, 0.0, 600.0, 0.0, 160.0, 0.0, 16.0],
            &[
                1575.0, 0.0, 0.0, 0.0, 6300.0, 0.0, 6720.0, 0.0, 3600.0, 0.0, 768.0, 0.0, 64.0,
            ],
            x,
        ));
    }
    if k == 3 && near(eps1, -2.5) {
        return Ok(rational_term(
            4.0,
            &[0.0, 27.0, 0.0, -72.0, 0.0, 0.0, 0.0, 0.0, 0.0, 16.0],
            &[27.0, 0.0, 54.0, 0.0, 0.0, 0.0, 96.0, 0.0, -48.0, 0.0, 32.0],
            x,
        ));
    }
    if k == 3 && near(eps1, -4.5) {
        return Ok(rational_term(
            -32.0,
            &[0.0, 0.0, 0.0, 15.0, 0.0, 12.0, 0.0, 4.0],
            &[45.0, 0.0, 0.0, 0.0, 120.0, 0.0, 64.0, 0.0, 16.0],
            x,
        ) + rational_term(
            24.0,
            &[0.0, 225.0, 0.0, -150.0, 0.0, 120.0, 0.0, 240.0, 0.0, 80.0, 0.0, 32.0],
            &[
                675.0, 0.0, 2700.0, 0.0, -900.0, 0.0, 480.0, 0.0, 720.0, 0.0, 192.0, 0.0, 64.0,
            ],
            x,
        ));
    }
    Err(Error::UncataloguedCase { k, eps1 })
}

/// Every `(k, eps1)` pair the rational catalog covers.
pub const RATIONAL_CATALOG: [(usize, f64); 8] = [
    (1, -2.5),
    (1, -4.5),
    (1, -6.5),
    (2, -2.5),
    (2, -4.5),
    (2, -6.5),
    (3, -2.5),
    (3, -4.5),
];

/// Every `(k, eps1)` pair the error-function catalog covers.
pub const ERF_CATALOG: [(usize, f64); 4] = [(1, -0.5), (1, -1.5), (1, -2.5), (2, -0.5)];
