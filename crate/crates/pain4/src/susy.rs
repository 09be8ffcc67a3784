//! Wronskian machinery: partner potentials, Painleve IV solutions, spectra,
//! extremal states and Schrodinger residuals.
//!
//! With `W_j = W(u_1, ..., u_j)` the Wronskian of the seed chain,
//!
//! ```text
//! V_k = x^2/2 - (ln W_k)'',
//! g_k = -x - ( ln( W_{k-1} / W_k ) )',      W_0 = 1,
//! ```
//!
//! and the extremal states of the reduced third-order ladder algebra are
//!
//! ```text
//! psi_1 ~ W_{k-1}/W_k,
//! psi_2 ~ W(u_1,...,u_k, e^{-x^2/2}) / W_k        (Crum form of B_k^+ e^{-x^2/2}),
//! psi_3 ~ W(u_1,...,u_k, a^+ u_1) / W_k           (Crum form of B_k^+ a^+ u_1),
//! ```
//!
//! at energies `eps_k`, `1/2`, `eps1 + 1`.
//!
//! All determinants are evaluated over jets of the scaled chain
//! `v_j = e^{-x^2/2} u_j` (see [`crate::seeds`]); the common gauge factor
//! contributes `W_j = e^{j x^2/2} Wt_j` and exact constants to the
//! log-derivatives, so
//!
//! ```text
//! V_k = x^2/2 - k - (ln Wt_k)'',    g_k = (ln Wt_k)' - (ln Wt_{k-1})'.
//! ```

use crate::error::Error;
pub use crate::grid::{GridFunction, GridSpec};
use crate::numerics::jet::Jet;
use crate::seeds::{SeedFamily, SeedParams};
use serde::Serialize;

const SQRT_2: f64 = std::f64::consts::SQRT_2;
/// `ln` of the singular-Wronskian floor (1e-250).
const LN_SINGULAR_FLOOR: f64 = -575.6462732485114;

/// Spectrum of the k-th order partner Hamiltonian together with the roots of
/// the `Q_{2k+1}` polynomial of its natural (2k+1)-th order ladder pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    /// `[eps_k, ..., eps_1]`: the k created levels, an arithmetic ladder of
    /// step 1 ending at `eps_1`.
    pub finite_ladder: Vec<f64>,
    /// Base of the untouched oscillator ladder (always 1/2).
    pub infinite_ladder_base: f64,
    /// `{eps_k, ..., eps_1, 1/2, eps_k + 1, ..., eps_1 + 1}`.
    pub q_roots: Vec<f64>,
}

/// Spectrum created by a k-th order transformation: `k` new levels below the
/// oscillator ladder.
pub fn spectrum(params: &SeedParams) -> SpectrumReport {
    let k = params.k();
    let finite: Vec<f64> = (0..k).map(|i| params.eps1() - (k - 1 - i) as f64).collect();
    let mut q_roots = finite.clone();
    q_roots.push(0.5);
    q_roots.extend(finite.iter().map(|e| e + 1.0));
    SpectrumReport {
        finite_ladder: finite,
        infinite_ladder_base: 0.5,
        q_roots,
    }
}

/// Determinant of a square matrix of jets.
///
/// Cofactor expansion for dimension <= 3, fraction-free (Bareiss) elimination
/// above; a zero-value pivot that cannot be fixed by a row swap falls back to
/// the cofactor route, which has no divisions.
fn jet_determinant(m: &[Vec<Jet>]) -> Result<Jet, Error> {
    let n = m.len();
    if n <= 3 {
        return Ok(cofactor_det(m));
    }
    let mut w: Vec<Vec<Jet>> = m.to_vec();
    let x0 = w[0][0].x0();
    let order = w[0][0].order();
    let mut prev = Jet::constant(1.0, x0, order);
    let mut sign = 1.0;
    for p in 0..n - 1 {
        if w[p][p].value() == 0.0 {
            let Some(r) = (p + 1..n).find(|&r| w[r][p].value() != 0.0) else {
                return Ok(cofactor_det(m));
            };
            w.swap(p, r);
            sign = -sign;
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let num = w[i][j].mul(&w[p][p]).sub(&w[i][p].mul(&w[p][j]));
                w[i][j] = num.div(&prev)?;
            }
        }
        prev = w[p][p].clone();
    }
    Ok(w[n - 1][n - 1].scale(sign))
}

fn cofactor_det(m: &[Vec<Jet>]) -> Jet {
    let n = m.len();
    match n {
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {
            let mut acc: Option<Jet> = None;
            for j in 0..n {
                let minor: Vec<Vec<Jet>> = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&jj| jj != j)
                            .map(|jj| m[i][jj].clone())
                            .collect()
                    })
                    .collect();
                let mut term = m[0][j].mul(&cofactor_det(&minor));
                if j % 2 == 1 {
                    term = term.neg();
                }
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term),
                });
            }
            acc.expect("non-empty matrix")
        }
    }
}

/// Wronskian matrix of the given jets: entry `(i, j)` is the i-th derivative
/// of column `j`, all truncated to a common order.
fn wronskian_matrix(jets: &[Jet], keep: usize) -> Vec<Vec<Jet>> {
    let n = jets.len();
    let mut derivs: Vec<Vec<Jet>> = Vec::with_capacity(n);
    for jet in jets {
        let mut col = Vec::with_capacity(n);
        col.push(jet.clone());
        for i in 1..n {
            let prev: &Jet = &col[i - 1];
            col.push(prev.differentiate());
        }
        derivs.push(col);
    }
    (0..n)
        .map(|i| (0..n).map(|j| derivs[j][i].truncated(keep)).collect())
        .collect()
}

fn scaled_wronskian(jets: &[Jet], keep: usize, x: f64) -> Result<Jet, Error> {
    if jets.is_empty() {
        return Ok(Jet::constant(1.0, x, keep));
    }
    let m = wronskian_matrix(jets, keep);
    jet_determinant(&m)
}

/// `(Wt_k, Wt_{k-1})` at `x`, both of order `keep`, checked non-singular.
fn scaled_wronskian_pair(
    family: &SeedFamily,
    x: f64,
    keep: usize,
) -> Result<(Jet, Jet), Error> {
    let k = family.params().k();
    let jets = family.scaled_jets(x, keep + k.saturating_sub(1))?;
    let wk = scaled_wronskian(&jets, keep, x)?;
    check_nonsingular(&wk, k, x)?;
    let wkm1 = scaled_wronskian(&jets[..k - 1], keep, x)?;
    if k > 1 {
        check_nonsingular(&wkm1, k - 1, x)?;
    }
    Ok((wk, wkm1))
}

/// Singularity gate on the unscaled Wronskian `W_j = e^{j x^2/2} Wt_j`,
/// compared in log space against the 1e-250 floor.
fn check_nonsingular(wt: &Jet, j: usize, x: f64) -> Result<(), Error> {
    let v = wt.value().abs();
    if v == 0.0 || v.ln() + 0.5 * j as f64 * x * x < LN_SINGULAR_FLOOR {
        return Err(Error::SingularWronskian { x });
    }
    Ok(())
}

/// Wronskian `W(u_1, ..., u_k)` of the seed chain as a jet with at least
/// `extra` usable derivative orders.
pub fn wronskian_jet(family: &SeedFamily, x: f64, extra: usize) -> Result<Jet, Error> {
    let k = family.params().k();
    let keep = extra.max(2);
    let jets = family.scaled_jets(x, keep + k - 1)?;
    let wt = scaled_wronskian(&jets, keep, x)?;
    check_nonsingular(&wt, k, x)?;
    Ok(Jet::gaussian(0.5 * k as f64, x, keep).mul(&wt))
}

/// Partner potential `V_k(x) = x^2/2 - (ln W_k)''`.
pub fn partner_potential(params: &SeedParams, x: f64) -> Result<f64, Error> {
    partner_potential_of(&SeedFamily::new(*params), x)
}

/// [`partner_potential`] for a prebuilt (possibly rescaled) family.
pub fn partner_potential_of(family: &SeedFamily, x: f64) -> Result<f64, Error> {
    let (wk, _) = scaled_wronskian_pair(family, x, 3)?;
    let ln_second = wk.log_derivative()?.differentiate().value();
    Ok(0.5 * x * x - family.params().k() as f64 - ln_second)
}

/// Painleve IV solution `g_k(x, eps1)` generated by the transformation.
pub fn pain4_solution(params: &SeedParams, x: f64) -> Result<f64, Error> {
    Ok(pain4_solution_jet_of(&SeedFamily::new(*params), x, 0)?.value())
}

/// [`pain4_solution`] for a prebuilt family.
pub fn pain4_solution_of(family: &SeedFamily, x: f64) -> Result<f64, Error> {
    Ok(pain4_solution_jet_of(family, x, 0)?.value())
}

/// Jet of `g_k` at `x` with the requested order.
pub fn pain4_solution_jet(params: &SeedParams, x: f64, order: usize) -> Result<Jet, Error> {
    pain4_solution_jet_of(&SeedFamily::new(*params), x, order)
}

/// Jet of `g_k` for a prebuilt family.
pub fn pain4_solution_jet_of(
    family: &SeedFamily,
    x: f64,
    order: usize,
) -> Result<Jet, Error> {
    let (wk, wkm1) = scaled_wronskian_pair(family, x, order + 1)?;
    Ok(wk.log_derivative()?.sub(&wkm1.log_derivative()?))
}

/// The three extremal states of the reduced second-order algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremal {
    /// Eigenstate at `eps_k`, the bottom of the finite ladder.
    E1,
    /// Mapped oscillator ground state, energy 1/2.
    E2,
    /// Formal (non-normalizable) eigenfunction at `eps1 + 1`.
    E3,
}

impl Extremal {
    /// The factorization energy this state carries.
    pub fn energy(&self, params: &SeedParams) -> f64 {
        match self {
            Extremal::E1 => params.eps_j(params.k()),
            Extremal::E2 => 0.5,
            Extremal::E3 => params.eps1() + 1.0,
        }
    }
}

/// Jet of the chosen extremal state at `x`.
///
/// Proportionality constants are not fixed here; every contract on these
/// states (Schrodinger residuals, log-derivatives) is scale-free.  Use
/// [`Jet::scale`] against a reference value for a `psi(x_ref) = 1`
/// normalization.
pub fn extremal_state(
    params: &SeedParams,
    which: Extremal,
    x: f64,
    order: usize,
) -> Result<Jet, Error> {
    let family = SeedFamily::new(*params);
    let k = params.k();
    let keep = order.max(2);
    let base = keep + k;
    let jets = family.scaled_jets(x, base)?;
    let wk = scaled_wronskian(&jets, keep, x)?;
    check_nonsingular(&wk, k, x)?;
    match which {
        Extremal::E1 => {
            let wkm1 = scaled_wronskian(&jets[..k - 1], keep, x)?;
            Ok(Jet::gaussian(-0.5, x, keep).mul(&wkm1.div(&wk)?))
        }
        Extremal::E2 => {
            // B_k^+ e^{-x^2/2}: augment with w = e^{-x^2}, the scaled gauge
            // image of the oscillator ground state.
            let mut aug = jets.clone();
            aug.push(Jet::gaussian(-1.0, x, base));
            let wa = scaled_wronskian(&aug, keep, x)?;
            Ok(Jet::gaussian(0.5, x, keep).mul(&wa.div(&wk)?))
        }
        Extremal::E3 => {
            // B_k^+ a^+ u_1: in the scaled gauge a^+ u_1 becomes -v_1'/sqrt2.
            let (v, dv) = family.scaled_values(x)?;
            let v1 = scaled_jet_for(params.eps1(), v, dv, x, base + 1);
            let mut aug = jets.clone();
            aug.push(v1.differentiate().scale(-1.0 / SQRT_2));
            let wa = scaled_wronskian(&aug, keep, x)?;
            Ok(Jet::gaussian(0.5, x, keep).mul(&wa.div(&wk)?))
        }
    }
}

// Rebuild a scaled-seed jet from (v, v') without going through SeedFamily.
fn scaled_jet_for(eps: f64, v: f64, dv: f64, x0: f64, order: usize) -> Jet {
    let mut c = vec![0.0; order + 1];
    c[0] = v;
    if order >= 1 {
        c[1] = dv;
    }
    for n in 0..order.saturating_sub(1) {
        let nf = n as f64;
        let s = -2.0 * x0 * (nf + 1.0) * c[n + 1] - (2.0 * nf + 1.0 + 2.0 * eps) * c[n];
        c[n + 2] = s / ((nf + 2.0) * (nf + 1.0));
    }
    Jet::from_coeffs(x0, c)
}

/// Scale-free Schrodinger residual `|-psi''/2 + (V - E) psi|` over
/// `1 + |psi''|/2 + |E psi|`, with the potential sampled at the jet's point.
pub fn schrodinger_residual<V>(potential: V, energy: f64, psi: &Jet) -> f64
where
    V: Fn(f64) -> f64,
{
    assert!(psi.order() >= 2, "Schrodinger residual needs a jet of order >= 2");
    let v = potential(psi.x0());
    let psi0 = psi.value();
    let psi2 = psi.derivative(2);
    let r = -0.5 * psi2 + (v - energy) * psi0;
    r.abs() / (1.0 + 0.5 * psi2.abs() + (energy * psi0).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn params(eps1: f64, nu1: f64, k: usize) -> SeedParams {
        SeedParams::new(eps1, nu1, k).unwrap()
    }

    #[test]
    fn order_one_wronskian_is_the_seed() {
        let p = params(0.25, 0.5, 1);
        let fam = SeedFamily::new(p);
        for x in [-2.0, 0.0, 1.3] {
            let w = wronskian_jet(&fam, x, 3).unwrap();
            let u = crate::seeds::seed_jet(&p, x, 3).unwrap();
            assert_relative_eq!(w.value(), u.value(), max_relative = 1e-12);
            assert_relative_eq!(w.derivative(1), u.derivative(1), max_relative = 1e-11);
        }
    }

    #[test]
    fn gaussian_growth_pair_wronskian() {
        // u1 = e^{x^2/2}, u2 = sqrt2 x e^{x^2/2}: W = sqrt2 e^{x^2}
        let fam = SeedFamily::new(params(-0.5, 0.0, 2));
        let w = wronskian_jet(&fam, 1.0, 2).unwrap();
        assert_relative_eq!(w.value(), 3.844_231_028_159_117, max_relative = 1e-13);
    }

    #[test]
    fn wronskian_jet_derivatives_match_finite_differences() {
        let p = params(-0.75, 0.5, 2);
        let fam = SeedFamily::new(p);
        let x0 = 0.8;
        let h = 1e-5;
        let w_at = |x: f64| wronskian_jet(&fam, x, 2).unwrap().value();
        let w = wronskian_jet(&fam, x0, 3).unwrap();
        let fd1 = (w_at(x0 + h) - w_at(x0 - h)) / (2.0 * h);
        let fd2 = (w_at(x0 + h) - 2.0 * w_at(x0) + w_at(x0 - h)) / (h * h);
        assert_relative_eq!(w.derivative(1), fd1, max_relative = 1e-6);
        assert_relative_eq!(w.derivative(2), fd2, max_relative = 1e-6);
    }

    #[test]
    fn shifted_oscillator_potentials() {
        // eps1 = -1/2, nu1 = 0: V_k = x^2/2 - k exactly
        for k in 1..=3 {
            let p = params(-0.5, 0.0, k);
            for x in [-3.0, -0.4, 0.0, 1.9] {
                let v = partner_potential(&p, x).unwrap();
                assert_abs_diff_eq!(v, 0.5 * x * x - k as f64, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn rational_case_solution_value() {
        // g_1(x, -5/2) = 4x/(1 + 2x^2) at x = 1 is 4/3
        let g = pain4_solution(&params(-2.5, 0.0, 1), 1.0).unwrap();
        assert_relative_eq!(g, 4.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn degenerate_solution_vanishes() {
        // eps1 = -1/2, nu1 = 0: g_k == 0 for k <= 3
        for k in 1..=3 {
            let p = params(-0.5, 0.0, k);
            for x in [-2.7, 0.3, 4.1] {
                assert_abs_diff_eq!(pain4_solution(&p, x).unwrap(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn solution_at_origin_from_gamma_ratio() {
        // g_1(0) = 2 nu G(eps); eps = -1/2, nu = 1/2 gives 1/sqrt(pi)
        let g = pain4_solution(&params(-0.5, 0.5, 1), 0.0).unwrap();
        assert_relative_eq!(g, 0.564_189_583_547_756_3, max_relative = 1e-13);
    }

    #[test]
    fn spectrum_reports() {
        let s = spectrum(&params(-0.5, 0.0, 2));
        assert_eq!(s.finite_ladder, vec![-1.5, -0.5]);
        assert_eq!(s.infinite_ladder_base, 0.5);

        let s = spectrum(&params(-2.5, 0.0, 1));
        assert_eq!(s.q_roots, vec![-2.5, 0.5, -1.5]);

        let s = spectrum(&params(0.25, 0.5, 3));
        assert_eq!(s.finite_ladder, vec![-1.75, -0.75, 0.25]);
        assert_eq!(s.q_roots.len(), 7);
    }

    #[test]
    fn extremal_one_is_inverse_seed_for_first_order() {
        // k = 1: psi_1 ~ 1/u_1; gaussian seed gives e^{-x^2/2}
        let p = params(-0.5, 0.0, 1);
        for x in [-1.2, 0.5, 2.0] {
            let psi = extremal_state(&p, Extremal::E1, x, 2).unwrap();
            assert_relative_eq!(psi.value(), (-0.5 * x * x).exp(), max_relative = 1e-12);
        }
    }

    #[test]
    fn extremal_two_is_mapped_ground_state() {
        // k = 1, gaussian seed: A_1^+ e^{-x^2/2} ~ x e^{-x^2/2}
        let p = params(-0.5, 0.0, 1);
        let a = extremal_state(&p, Extremal::E2, 1.0, 2).unwrap().value();
        let b = extremal_state(&p, Extremal::E2, 2.0, 2).unwrap().value();
        let f = |x: f64| x * (-0.5 * x * x).exp();
        assert_relative_eq!(a / b, f(1.0) / f(2.0), max_relative = 1e-11);
    }

    #[test]
    fn extremal_one_log_derivative_is_minus_x_minus_g() {
        // (ln psi_1)' = -x - g_k at every sample point
        for (e, n, k) in [(0.25, 0.5, 1), (-0.75, 0.5, 2), (-2.5, 0.0, 3)] {
            let p = params(e, n, k);
            for x in [-1.7, 0.4, 2.2] {
                let psi = extremal_state(&p, Extremal::E1, x, 3).unwrap();
                let lnd = psi.log_derivative().unwrap().value();
                let g = pain4_solution(&p, x).unwrap();
                assert_relative_eq!(lnd, -x - g, max_relative = 1e-9, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn extremal_states_are_formal_eigenfunctions() {
        for (e, n, k) in [(0.25, 0.5, 1), (-0.75, 0.5, 2), (-1.75, 0.5, 3), (-2.5, 0.0, 3)] {
            let p = params(e, n, k);
            let pot = |x: f64| partner_potential(&p, x).unwrap();
            for which in [Extremal::E1, Extremal::E2, Extremal::E3] {
                for x in [-2.1, 0.7, 3.3] {
                    let psi = extremal_state(&p, which, x, 2).unwrap();
                    let r = schrodinger_residual(pot, which.energy(&p), &psi);
                    assert!(r <= 1e-6, "which = {which:?}, x = {x}: residual {r}");
                }
            }
        }
    }

    #[test]
    fn oscillator_ground_state_residual() {
        let psi = Jet::gaussian(-0.5, 0.9, 2);
        let r = schrodinger_residual(|x| 0.5 * x * x, 0.5, &psi);
        assert!(r < 1e-15);
        // the shifted-oscillator eigenstate 1/u_1 at eps_1
        let p = params(-0.5, 0.0, 1);
        let r = schrodinger_residual(|x| partner_potential(&p, x).unwrap(), -0.5, &psi);
        assert!(r <= 1e-10);
        // wrong energy must fail loudly
        let r = schrodinger_residual(|x| 0.5 * x * x, 1.5, &psi);
        assert!(r > 0.1);
    }

    #[test]
    fn seed_scaling_leaves_outputs_unchanged() {
        for (e, n, k) in [(0.25, 0.5, 1), (-0.75, 0.5, 2), (-2.5, 0.0, 3)] {
            let p = params(e, n, k);
            let plain = SeedFamily::new(p);
            let scaled = SeedFamily::with_scale(p, 17.3);
            for x in [-3.3, 0.1, 2.6] {
                let v1 = partner_potential_of(&plain, x).unwrap();
                let v2 = partner_potential_of(&scaled, x).unwrap();
                assert_abs_diff_eq!(v1, v2, epsilon = 1e-12 * (1.0 + v1.abs()));
                let g1 = pain4_solution_of(&plain, x).unwrap();
                let g2 = pain4_solution_of(&scaled, x).unwrap();
                assert_abs_diff_eq!(g1, g2, epsilon = 1e-12 * (1.0 + g1.abs()));
            }
        }
    }

    #[test]
    fn wronskian_keeps_one_sign_on_the_working_grid() {
        for (e, n, k) in [(0.25, 0.5, 3), (-1.5, 0.999, 1), (-4.5, 0.0, 2)] {
            let fam = SeedFamily::new(params(e, n, k));
            let mut sign = 0.0;
            for x in GridSpec::working().points() {
                let w = wronskian_jet(&fam, x, 2).unwrap().value();
                assert!(w != 0.0);
                if sign == 0.0 {
                    sign = w.signum();
                }
                assert_eq!(w.signum(), sign, "sign change at x = {x}");
            }
        }
    }

    #[test]
    fn four_by_four_determinant_routes_through_bareiss() {
        // k = 4 exercises the elimination path; check the ODE-level identity
        // that V_k stays exact for the gaussian chain.
        let p = params(-0.5, 0.0, 4);
        for x in [-1.1, 0.4, 2.3] {
            let v = partner_potential(&p, x).unwrap();
            assert_abs_diff_eq!(v, 0.5 * x * x - 4.0, epsilon = 1e-9);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn symmetric_seeds_give_odd_g_and_even_v(
            x in 0.05f64..5.0,
            ei in 0usize..3,
            k in 1usize..4,
        ) {
            let eps1 = [-0.5, -2.5, -4.5][ei];
            let p = params(eps1, 0.0, k);
            let gp = pain4_solution(&p, x).unwrap();
            let gm = pain4_solution(&p, -x).unwrap();
            prop_assert!((gp + gm).abs() <= 1e-10);
            let vp = partner_potential(&p, x).unwrap();
            let vm = partner_potential(&p, -x).unwrap();
            prop_assert!((vp - vm).abs() <= 1e-10);
        }
    }
}
