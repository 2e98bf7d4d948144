//! Energy expansions along `(t(ε)u, t(ε)εv)` and the proportional pair.

use serde::Serialize;

use super::nehari::power_integrals;
use super::result::{CheckResult, ErrorMode, Tolerances};
use crate::error::{domain, Error, Result};
use crate::params::SystemParams;
use crate::radial::quadrature::gradient_energy;
use crate::radial::{coupling_integral, pde_residual, scalar_residual, PairProfile, RadialProfile};
use crate::roots::bisect;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbationCurve {
    pub eps_values: Vec<f64>,
    pub t_values: Vec<f64>,
    /// `Φ(t(ε)u, t(ε)εv) - Φ(u, 0)`.
    pub delta_phi: Vec<f64>,
    /// Residual of the defining equation at each `t(ε)`, relative to `‖u‖²`.
    pub equation_residuals: Vec<f64>,
    pub fitted_exponent: f64,
    pub fitted_sign: i8,
    /// Factor applied to `u` to put `(u, 0)` exactly on the Nehari set.
    pub u_rescale: f64,
    pub notes: Vec<String>,
}

/// Traces `t(ε)` and the energy gain for `ε` in `eps_values` and fits
/// `log|ΔΦ|` against `log ε` over the middle third of the range.
pub fn perturbation_curve(
    u: &RadialProfile,
    v: &RadialProfile,
    p: &SystemParams,
    eps_values: &[f64],
) -> Result<PerturbationCurve> {
    let e = p.exponents()?;
    if !(p.kappa > 0.0) {
        return domain("perturbation expansion needs kappa > 0");
    }
    if eps_values.len() < 6 {
        return domain("need at least 6 eps values");
    }
    if eps_values.iter().any(|&x| !(x > 0.0 && x <= 0.3))
        || eps_values.windows(2).any(|w| w[1] <= w[0])
    {
        return domain("eps values must increase within (0, 0.3]");
    }
    let pp = PairProfile::new(u.clone(), v.clone())?;
    let (p1, p2) = (e.p1, e.p2);
    let (bu, bv) = power_integrals(&pp, p)?;
    let (au, av) = (gradient_energy(u, p.n)?, gradient_energy(v, p.n)?);
    let s2 = p.s2;
    let c = coupling_integral(&pp, p, |r| r.powf(-s2))?;
    if !(au > 0.0 && bu > 0.0 && c > 0.0) {
        return Err(Error::SingularInput("need u ≠ 0 and c(u, v) > 0".into()));
    }
    // Put (u, 0) on the Nehari set: a_u k² = λ B_u k^{p1}.
    let k = (au / (p.lambda * bu)).powf(1.0 / (p1 - 2.0));
    let (au, bu, c) = (au * k * k, bu * k.powf(p1), c * k.powf(p.alpha));
    let lb = p.lambda * bu;

    let mut t_values = Vec::new();
    let mut delta_phi = Vec::new();
    let mut equation_residuals = Vec::new();
    for &eps in eps_values {
        let (ev2, evp, evb) = (eps * eps, eps.powf(p1), eps.powf(p.beta));
        // Equation in δ = t - 1, with the λ terms combined through expm1.
        let f = |d: f64| {
            let l = d.ln_1p();
            -au * ((p1 - 2.0) * l).exp_m1() + ev2 * av
                - p.mu * bv * evp * ((p1 - 2.0) * l).exp()
                - p2 * p.kappa * c * evb * ((p2 - 2.0) * l).exp()
        };
        let d = bisect(f, 1e-4 - 1.0, 1e4 - 1.0, 1e-15)
            .ok_or_else(|| Error::NoRoot(format!("no t(ε) for ε = {eps}")))?;
        let l = d.ln_1p();
        let t = 1.0 + d;
        let lhs = au + ev2 * av;
        let rhs =
            (lb + p.mu * bv * evp) * t.powf(p1 - 2.0) + p2 * p.kappa * c * t.powf(p2 - 2.0) * evb;
        equation_residuals.push((lhs - rhs).abs() / au);
        let dphi = au * (0.5 * (2.0 * l).exp_m1() - (p1 * l).exp_m1() / p1)
            + 0.5 * t * t * ev2 * av
            - p.mu * bv / p1 * t.powf(p1) * evp
            - p.kappa * c * t.powf(p2) * evb;
        t_values.push(t);
        delta_phi.push(dphi);
    }

    let lo = eps_values[0].ln();
    let hi = eps_values[eps_values.len() - 1].ln();
    let (a, b) = (lo + (hi - lo) / 3.0, lo + 2.0 * (hi - lo) / 3.0);
    let idx: Vec<usize> = (0..eps_values.len())
        .filter(|&i| {
            let x = eps_values[i].ln();
            x >= a - 1e-12 && x <= b + 1e-12
        })
        .collect();
    if idx.len() < 2 {
        return domain("fewer than two eps values in the middle third");
    }
    let mut notes = Vec::new();
    let tiny = idx.iter().filter(|&&i| delta_phi[i].abs() < 1e-14).count();
    if tiny > 0 {
        notes.push(format!(
            "{tiny} fitted points have |ΔΦ| < 1e-14 (cancellation)"
        ));
    }
    let signs: Vec<f64> = idx.iter().map(|&i| delta_phi[i].signum()).collect();
    let fitted_sign = if signs.iter().all(|&s| s > 0.0) {
        1
    } else if signs.iter().all(|&s| s < 0.0) {
        -1
    } else {
        notes.push("ΔΦ changes sign inside the fit window".into());
        0
    };
    let pts: Vec<(f64, f64)> = idx
        .iter()
        .filter(|&&i| delta_phi[i] != 0.0)
        .map(|&i| (eps_values[i].ln(), delta_phi[i].abs().ln()))
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|q| q.0).sum::<f64>() / m;
    let my = pts.iter().map(|q| q.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|q| (q.0 - mx) * (q.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|q| (q.0 - mx).powi(2)).sum();
    Ok(PerturbationCurve {
        eps_values: eps_values.to_vec(),
        t_values,
        delta_phi,
        equation_residuals,
        fitted_exponent: sxy / sxx,
        fitted_sign,
        u_rescale: k,
        notes,
    })
}

/// Expected exponent and sign of the energy gain for coupling power `β`.
/// At `β = 2` the sign is that of `‖v‖² - 2κ c(u, v)`.
pub fn predicted_expansion(beta: f64, av: f64, kappa: f64, c: f64) -> (f64, i8) {
    if beta < 2.0 {
        (beta, -1)
    } else if beta > 2.0 {
        (2.0, 1)
    } else {
        let lead = av - 2.0 * kappa * c;
        (
            2.0,
            if lead > 0.0 {
                1
            } else if lead < 0.0 {
                -1
            } else {
                0
            },
        )
    }
}

/// Checks the fitted exponent of `curve` against `expected`.
pub fn perturbation_check(
    curve: &PerturbationCurve,
    expected: f64,
    expected_sign: i8,
    tol: &Tolerances,
) -> CheckResult {
    let mut r = CheckResult::equality(
        "perturbation_exponent",
        curve.fitted_exponent,
        expected,
        tol.perturbation_exponent,
        ErrorMode::Abs,
    )
    .with_note(format!(
        "fitted sign {}, expected {expected_sign}",
        curve.fitted_sign
    ));
    if curve.fitted_sign != expected_sign {
        r.pass = false;
        r = r.with_note("sign mismatch");
    }
    r
}

/// Side condition `λ = μ (β/α)^{(2*(s1)-2)/2}` under which `(w, √(β/α) w)`
/// solves the system whenever `w` solves the combined scalar equation.
pub fn special_pair_condition(p: &SystemParams) -> Result<(f64, f64)> {
    let e = p.exponents()?;
    let want = p.mu * (p.beta / p.alpha).powf((e.p1 - 2.0) / 2.0);
    Ok((p.lambda, want))
}

/// The pair `(w, √(β/α) w)` has PDE residual at most `special_pair_factor`
/// times the residual of `w` in
/// `-Δw = λ w^{p1-1}/|x|^{s1} + κα(β/α)^{β/2} w^{p2-1}/|x|^{s2}`.
pub fn special_pair_check(
    w: &RadialProfile,
    p: &SystemParams,
    tol: &Tolerances,
) -> Result<CheckResult> {
    let e = p.exponents()?;
    let (lambda, want) = special_pair_condition(p)?;
    if (lambda - want).abs() > 1e-10 * want.abs().max(1.0) {
        return Err(Error::Refused(format!(
            "lambda = {lambda} but the proportional pair needs {want}"
        )));
    }
    let ratio = (p.beta / p.alpha).sqrt();
    let pair = PairProfile::new(w.clone(), w.scaled(ratio))?;
    let pair_res = pde_residual(&pair, p)?;
    let coef = p.kappa * p.alpha * (p.beta / p.alpha).powf(p.beta / 2.0);
    let scalar = scalar_residual(w, p.n, &[(p.lambda, e.p1, p.s1), (coef, e.p2, p.s2)]);
    let floor = 1e-14 * pair_res.sup.max(scalar.sup).max(1.0);
    let bound = tol.special_pair_factor * scalar.sup + floor;
    Ok(CheckResult::upper_bound("special_pair", pair_res.sup, bound, 0.0, ErrorMode::Abs).with_note(format!(
        "scalar residual {:.3e}, v/u = {ratio}; side condition uses the exponent (2*(s1)-2)/2, which direct substitution requires",
        scalar.sup
    )))
}
