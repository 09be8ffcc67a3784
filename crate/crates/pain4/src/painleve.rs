//! The Painleve IV side: residuals, `(a, b)` parameters, the decoupled
//! second-order-algebra data `(f, h, V)` carried by a solution `g`, extremal
//! states rebuilt from `g` alone, and the third-order ladder operators with
//! their `Q3`/`P2` closure identities.
//!
//! The ladder pair is `L^+ = L_a^+ L_b^+`, `L^- = L_b^- L_a^-` with
//!
//! ```text
//! L_a^{\pm} = (1/sqrt2) ( \mp d/dx + f ),
//! L_b^+ = (1/2) ( d^2/dx^2 + g d/dx + h ),
//! L_b^- = (1/2) ( d^2/dx^2 - g d/dx + (h - g') ),
//! ```
//!
//! and closure demands `L^+ L^- = Q3(H)`, `L^- L^+ = Q3(H) + P2(H)` with
//! `Q3(H) = (H - E1)(H - E2)(H - E3)`.

use crate::error::Error;
use crate::numerics::jet::Jet;
use crate::seeds::SeedParams;
use crate::susy::Extremal;
use serde::Serialize;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Painleve IV parameters together with the extremal energies they derive
/// from: `a = E2 + E3 - 2 E1 - 1`, `b = -2 (E2 - E3)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pain4Params {
    pub a: f64,
    pub b: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
}

impl Pain4Params {
    pub fn new(e1: f64, e2: f64, e3: f64) -> Self {
        Pain4Params {
            a: e2 + e3 - 2.0 * e1 - 1.0,
            b: -2.0 * (e2 - e3) * (e2 - e3),
            e1,
            e2,
            e3,
        }
    }

    /// Parameters of the solution generated by a k-th order transformation:
    /// `E1 = eps1 - (k-1)`, `E2 = 1/2`, `E3 = eps1 + 1`, equivalently
    /// `a = 2k - eps1 - 3/2`, `b = -2 (eps1 + 1/2)^2`.
    pub fn from_seed(params: &SeedParams) -> Self {
        Pain4Params::new(params.eps_j(params.k()), 0.5, params.eps1() + 1.0)
    }

    /// Coefficients `[c2, c1, c0]` of `P2(H) = c2 H^2 + c1 H + c0`:
    /// `3 H^2 + [3 - 2(E1+E2+E3)] H + 1 - (E1+E2+E3) + E1E2 + E1E3 + E2E3`.
    pub fn p2_coefficients(&self) -> [f64; 3] {
        let s = self.e1 + self.e2 + self.e3;
        let pairs = self.e1 * self.e2 + self.e1 * self.e3 + self.e2 * self.e3;
        [3.0, 3.0 - 2.0 * s, 1.0 - s + pairs]
    }
}

/// `pain4_params` of the spec: the `(a, b, E)` data for a seed configuration.
pub fn pain4_params(params: &SeedParams) -> Pain4Params {
    Pain4Params::from_seed(params)
}

/// Scale-free Painleve IV residual in the pole-safe polynomial form
///
/// ```text
/// r = g g'' - g'^2/2 - (3/2) g^4 - 4 x g^3 - 2 (x^2 - a) g^2 - b,
/// ```
///
/// normalized by one plus the sum of the magnitudes of its pieces.  Finite
/// even at zeros of `g`, where the divided form would hit `b/g`.
pub fn pain4_residual(g: &Jet, p: &Pain4Params) -> f64 {
    assert!(g.order() >= 2, "Painleve IV residual needs a jet of order >= 2");
    let x = g.x0();
    let g0 = g.value();
    let g1 = g.derivative(1);
    let g2 = g.derivative(2);
    let g0_2 = g0 * g0;
    let terms = [
        g0 * g2,
        -0.5 * g1 * g1,
        -1.5 * g0_2 * g0_2,
        -4.0 * x * g0_2 * g0,
        -2.0 * (x * x - p.a) * g0_2,
        -p.b,
    ];
    let r: f64 = terms.iter().sum();
    let scale = 1.0 + terms.iter().map(|t| t.abs()).sum::<f64>();
    r.abs() / scale
}

/// The second-order-algebra data at one point, reconstructed from `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaPoint {
    /// `f = x + g`.
    pub f: f64,
    /// `h = -x^2 + g'/2 - g^2/2 - 2xg + a`.
    pub h: f64,
    /// `V = x^2/2 - g'/2 + g^2/2 + xg + E1 - 1/2`.
    pub v: f64,
}

/// Reconstructs `(f, h, V)` at the expansion point of `g`.
pub fn pha_from_g(g: &Jet, p: &Pain4Params) -> PhaPoint {
    assert!(g.order() >= 1, "pha_from_g needs a jet of order >= 1");
    let x = g.x0();
    let g0 = g.value();
    let g1 = g.derivative(1);
    PhaPoint {
        f: x + g0,
        h: -x * x + 0.5 * g1 - 0.5 * g0 * g0 - 2.0 * x * g0 + p.a,
        v: 0.5 * x * x - 0.5 * g1 + 0.5 * g0 * g0 + x * g0 + p.e1 - 0.5,
    }
}

/// Jet-valued coefficients `(f, g, h)` of the ladder pair at one point.
#[derive(Debug, Clone)]
pub struct LadderCoefficients {
    f: Jet,
    g: Jet,
    h: Jet,
}

impl LadderCoefficients {
    /// Builds the coefficients from a jet of `g`; `f` and `h` follow from the
    /// decoupling relations.  The `h` jet is one order below `g`.
    pub fn from_g(g: &Jet, p: &Pain4Params) -> Self {
        let x0 = g.x0();
        let order = g.order();
        let xj = Jet::variable(x0, order);
        let f = xj.add(g);
        // h = -x^2 + g'/2 - g^2/2 - 2xg + a
        let h = g
            .differentiate()
            .scale(0.5)
            .sub(&xj.mul(&xj).add(&g.mul(g).scale(0.5)).add(&xj.mul(g).scale(2.0)))
            .add(&Jet::constant(p.a, x0, order - 1));
        LadderCoefficients { f, g: g.clone(), h }
    }

    pub fn x0(&self) -> f64 {
        self.g.x0()
    }

    /// Jet of the potential `V` of Eq.-level `H = -d^2/2 + V` carried by `g`.
    fn potential_jet(&self, p: &Pain4Params) -> Jet {
        let x0 = self.x0();
        let order = self.g.order();
        let xj = Jet::variable(x0, order);
        xj.mul(&xj)
            .scale(0.5)
            .sub(&self.g.differentiate().scale(0.5))
            .add(&self.g.mul(&self.g).scale(0.5))
            .add(&xj.mul(&self.g))
            .add(&Jet::constant(p.e1 - 0.5, x0, order - 1))
    }

    fn la_plus(&self, psi: &Jet) -> Jet {
        self.f.mul(psi).sub(&psi.differentiate()).scale(1.0 / SQRT_2)
    }

    fn la_minus(&self, psi: &Jet) -> Jet {
        self.f.mul(psi).add(&psi.differentiate()).scale(1.0 / SQRT_2)
    }

    fn lb_plus(&self, psi: &Jet) -> Jet {
        let d1 = psi.differentiate();
        let d2 = d1.differentiate();
        d2.add(&self.g.mul(&d1)).add(&self.h.mul(psi)).scale(0.5)
    }

    fn lb_minus(&self, psi: &Jet) -> Jet {
        let d1 = psi.differentiate();
        let d2 = d1.differentiate();
        let h_minus_gp = self.h.sub(&self.g.differentiate());
        d2.sub(&self.g.mul(&d1)).add(&h_minus_gp.mul(psi)).scale(0.5)
    }
}

/// `L^+ psi = L_a^+ L_b^+ psi`, a jet three orders below the input.
pub fn ladder_apply(lc: &LadderCoefficients, psi: &Jet) -> Result<Jet, Error> {
    if psi.order() < 3 {
        return Err(Error::JetOrderTooSmall { order: psi.order(), needed: 3 });
    }
    Ok(lc.la_plus(&lc.lb_plus(psi)))
}

/// `L^- psi = L_b^- L_a^- psi`.
pub fn ladder_lower(lc: &LadderCoefficients, psi: &Jet) -> Result<Jet, Error> {
    if psi.order() < 3 {
        return Err(Error::JetOrderTooSmall { order: psi.order(), needed: 3 });
    }
    Ok(lc.lb_minus(&lc.la_minus(psi)))
}

/// Which product ordering an algebra check exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraDirection {
    /// `L^+ L^-` against `Q3(H)`.
    PlusMinus,
    /// `L^- L^+` against `Q3(H) + P2(H) = Q3(H + 1)`.
    MinusPlus,
}

fn apply_h(v: &Jet, psi: &Jet) -> Jet {
    psi.differentiate().differentiate().scale(-0.5).add(&v.mul(psi))
}

fn apply_q3_shifted(v: &Jet, p: &Pain4Params, psi: &Jet, shift: f64) -> Jet {
    // (H - E1 + s)(H - E2 + s)(H - E3 + s) psi, right to left
    let mut out = psi.clone();
    for e in [p.e3, p.e2, p.e1] {
        let h_out = apply_h(v, &out);
        out = h_out.sub(&out.scale(e - shift));
    }
    out
}

/// Relative mismatch at the expansion point between the chosen ladder product
/// applied to `test` and the corresponding polynomial in `H` applied to it.
pub fn algebra_check(
    lc: &LadderCoefficients,
    p: &Pain4Params,
    test: &Jet,
    direction: AlgebraDirection,
) -> Result<f64, Error> {
    if test.order() < 10 {
        return Err(Error::JetOrderTooSmall { order: test.order(), needed: 10 });
    }
    let v = lc.potential_jet(p);
    let (lhs, rhs) = match direction {
        AlgebraDirection::PlusMinus => {
            let lhs = ladder_apply(lc, &ladder_lower(lc, test)?)?;
            (lhs, apply_q3_shifted(&v, p, test, 0.0))
        }
        AlgebraDirection::MinusPlus => {
            let lhs = ladder_lower(lc, &ladder_apply(lc, test)?)?;
            (lhs, apply_q3_shifted(&v, p, test, 1.0))
        }
    };
    let a = lhs.value();
    let b = rhs.value();
    Ok((a - b).abs() / (1.0 + a.abs() + b.abs()))
}

/// Adaptive Simpson quadrature with an absolute tolerance.
fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64, Error>
where
    F: Fn(f64) -> Result<f64, Error>,
{
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return Ok(-adaptive_simpson(f, b, a, tol)?);
    }
    let m = 0.5 * (a + b);
    let fa = f(a)?;
    let fm = f(m)?;
    let fb = f(b)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64, Error>
where
    F: Fn(f64) -> Result<f64, Error>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureFailure { a, b, tol });
    }
    Ok(simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}

const QUAD_TOL: f64 = 1e-10;
/// Minimum |g| along an integration path of the Delta/g terms.
const G_PATH_FLOOR: f64 = 0.1;

/// Extremal state rebuilt from `g` alone, normalized to `psi(x_ref) = 1`:
///
/// ```text
/// psi_1 ~ exp(-x^2/2 - int g),
/// psi_{2,3} ~ (g'/2g - g/2 \mp D/g - x) exp[ int (g'/2g + g/2 \mp D/g) ],
/// ```
///
/// with `D = E2 - E3` (upper sign for `psi_2`).  The integrals run from
/// `x_ref`; for `psi_2`/`psi_3` the path must keep `|g| >= 0.1`.
pub fn extremal_from_g<G>(
    g_at: &G,
    p: &Pain4Params,
    which: Extremal,
    x: f64,
    x_ref: f64,
) -> Result<f64, Error>
where
    G: Fn(f64, usize) -> Result<Jet, Error>,
{
    Ok(extremal_from_g_jet(g_at, p, which, x, x_ref, 2)?.value())
}

/// Jet-valued version of [`extremal_from_g`], for residual checks.
pub fn extremal_from_g_jet<G>(
    g_at: &G,
    p: &Pain4Params,
    which: Extremal,
    x: f64,
    x_ref: f64,
    order: usize,
) -> Result<Jet, Error>
where
    G: Fn(f64, usize) -> Result<Jet, Error>,
{
    match which {
        Extremal::E1 => {
            let quad = adaptive_simpson(&|t| Ok(g_at(t, 0)?.value()), x_ref, x, QUAD_TOL)?;
            let g = g_at(x, order.saturating_sub(1))?;
            // exponent = -(x^2 - x_ref^2)/2 - int_{x_ref}^x g
            let xj = Jet::variable(x, order);
            let expo = xj
                .mul(&xj)
                .scale(-0.5)
                .add(&Jet::constant(0.5 * x_ref * x_ref, x, order))
                .sub(&g.antiderivative(quad));
            Ok(expo.exp())
        }
        Extremal::E2 | Extremal::E3 => {
            let delta = p.e2 - p.e3;
            let sign = if which == Extremal::E2 { -1.0 } else { 1.0 };
            let integrand = |t: f64| -> Result<f64, Error> {
                let g = g_at(t, 1)?;
                let g0 = g.value();
                if g0.abs() < G_PATH_FLOOR {
                    return Err(Error::PathThroughZeroOfG { x: t, floor: G_PATH_FLOOR });
                }
                Ok(0.5 * g.derivative(1) / g0 + 0.5 * g0 + sign * delta / g0)
            };
            let quad = adaptive_simpson(&integrand, x_ref, x, QUAD_TOL)?;
            let jet_order = order + 1;
            let prefactor_at = |t: f64, n: usize| -> Result<Jet, Error> {
                let g = g_at(t, n + 1)?;
                if g.value().abs() < G_PATH_FLOOR {
                    return Err(Error::PathThroughZeroOfG { x: t, floor: G_PATH_FLOOR });
                }
                let gp = g.differentiate();
                let gt = g.truncated(n);
                let inv_g = Jet::constant(1.0, t, n).div(&gt)?;
                Ok(gp
                    .mul(&inv_g)
                    .scale(0.5)
                    .sub(&gt.scale(0.5))
                    .add(&inv_g.scale(sign * delta))
                    .sub(&Jet::variable(t, n)))
            };
            let p_jet = prefactor_at(x, order)?;
            let p_ref = prefactor_at(x_ref, 0)?.value();
            // I = g'/2g + g/2 + sign*D/g = prefactor + g + x
            let g = g_at(x, jet_order)?;
            let i_jet = prefactor_at(x, order)?
                .add(&g.truncated(order))
                .add(&Jet::variable(x, order));
            let expo = i_jet.truncated(order.saturating_sub(1)).antiderivative(quad);
            Ok(p_jet.mul(&expo.exp()).scale(1.0 / p_ref))
        }
    }
}
