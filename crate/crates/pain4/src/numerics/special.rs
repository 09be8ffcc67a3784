//! Kummer's confluent hypergeometric function, log-gamma and erf.
//!
//! `1F1` is summed by the plain ascending series with the term recurrence
//! `t_{n+1} = t_n (a+n) z / ((b+n)(n+1))`.  For `z >= 0` and positive `a`, `b`
//! (the range reached from seed parameters `eps1 < 1/2`) every term is
//! positive, so there is no cancellation; negative arguments are routed
//! through the Kummer transformation `1F1(a,b;z) = e^z 1F1(b-a,b;-z)` so the
//! summed series again has (essentially) one sign.

use crate::error::Error;
use crate::numerics::jet::Jet;

/// Series termination: |term| below this multiple of the partial sum on three
/// consecutive terms.
const SERIES_EPS: f64 = 1e-17;
/// Hard cap on the number of series terms.
const MAX_TERMS: usize = 100_000;

const SQRT_PI: f64 = 1.772_453_850_905_516;

fn is_non_positive_integer(b: f64) -> bool {
    b <= 0.0 && b == b.floor()
}

/// Kummer's function `1F1(a, b; z)`.
///
/// `b` must not be a non-positive integer.  Relative accuracy is at the
/// rounding level for the parameter ranges used by the seed machinery
/// (`|z| <= 64`, positive `a`, `b`).
pub fn kummer_1f1(a: f64, b: f64, z: f64) -> Result<f64, Error> {
    if is_non_positive_integer(b) {
        return Err(Error::KummerBadB { b });
    }
    if z < 0.0 {
        // Kummer transformation avoids the alternating series.
        return Ok(z.exp() * ascending_series(b - a, b, -z)?);
    }
    ascending_series(a, b, z)
}

fn ascending_series(a: f64, b: f64, z: f64) -> Result<f64, Error> {
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut quiet = 0u32;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * z / ((b + nf) * (nf + 1.0));
        sum += term;
        if term.abs() < SERIES_EPS * sum.abs() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::KummerNonConvergence { a, b, z, terms: MAX_TERMS })
}

/// `1F1(a, b; z)` evaluated in jet arithmetic over a jet-valued argument.
///
/// Used to propagate `z`-derivatives through the series, e.g. to check the
/// contiguous-derivative identity `d/dz 1F1(a,b;z) = (a/b) 1F1(a+1,b+1;z)`.
pub fn kummer_1f1_jet(a: f64, b: f64, z: &Jet) -> Result<Jet, Error> {
    if is_non_positive_integer(b) {
        return Err(Error::KummerBadB { b });
    }
    let mut sum = Jet::constant(1.0, z.x0(), z.order());
    let mut term = Jet::constant(1.0, z.x0(), z.order());
    let mut quiet = 0u32;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term = term.mul(z).scale((a + nf) / ((b + nf) * (nf + 1.0)));
        sum = sum.add(&term);
        if term.value().abs() < SERIES_EPS * sum.value().abs() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::KummerNonConvergence { a, b, z: z.value(), terms: MAX_TERMS })
}

/// Lanczos coefficients, g = 7, 9 terms.
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Gamma(x)` for `x > 0` via the Lanczos approximation (g = 7).
pub fn log_gamma(x: f64) -> Result<f64, Error> {
    if !(x > 0.0) {
        return Err(Error::LogGammaDomain { x });
    }
    let y = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (y + i as f64);
    }
    let t = y + 7.5;
    Ok(0.5 * (2.0 * std::f64::consts::PI).ln() + (y + 0.5) * t.ln() - t + acc.ln())
}

/// `Gamma((3 - 2 eps)/4) / Gamma((1 - 2 eps)/4)` for `eps < 1/2`.
pub fn gamma_ratio(eps: f64) -> Result<f64, Error> {
    if !(eps < 0.5) {
        return Err(Error::GammaRatioDomain { eps });
    }
    let num = log_gamma((3.0 - 2.0 * eps) / 4.0)?;
    let den = log_gamma((1.0 - 2.0 * eps) / 4.0)?;
    Ok((num - den).exp())
}

/// Error function.
///
/// Uses `erf(x) = (2x/sqrt(pi)) e^{-x^2} 1F1(1, 3/2; x^2)`, whose series has
/// positive terms only, so the absolute error stays at the rounding level.
pub fn erf(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x.abs() >= 6.0 {
        // |erfc(6)| ~ 2e-17, below double rounding of 1.
        return x.signum();
    }
    let z = x * x;
    // 1F1(1, 3/2; z): t_{n+1} = t_n z/(n + 3/2)
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut n = 0.0;
    loop {
        term *= z / (n + 1.5);
        sum += term;
        n += 1.0;
        if term < 1e-17 * sum {
            break;
        }
    }
    (2.0 * x / SQRT_PI) * (-z).exp() * sum
}
