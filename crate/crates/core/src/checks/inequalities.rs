//! Interpolation, CKN-type, two-component and eigenvalue inequalities.

use serde::{Deserialize, Serialize};

use super::nehari::power_integrals;
use super::result::{CheckResult, ErrorMode, Tolerances};
use crate::coupling::{u_lambda_scale, young_best_constant, young_optimal_ratio, DomainConstants};
use crate::error::{domain, Error, Result};
use crate::params::{
    auxiliary_s, critical_exponent, interpolation_exponents, varsigma, vartheta, AuxKind,
    SystemParams,
};
use crate::radial::quadrature::{gradient_energy, weighted_integral, weighted_lp_norm};
use crate::radial::{
    coupling_integral, instanton_on, scalar_sharp_constant, PairProfile, RadialProfile,
};
use crate::roots::golden_min;

fn hs_norm(u: &RadialProfile, n: u32, s: f64) -> Result<f64> {
    weighted_lp_norm(u, critical_exponent(n, s)?, s, n)
}

/// `|u|_{2*(s2),s2} ≤ |u|^θ_{2*(s1),s1} |u|^{1-θ}_{2*(s3),s3}`.
pub fn interpolation_check(
    u: &RadialProfile,
    n: u32,
    s1: f64,
    s2: f64,
    s3: f64,
    tol: &Tolerances,
) -> Result<CheckResult> {
    let ip = interpolation_exponents(n, s1, s2, s3)?;
    let lhs = hs_norm(u, n, s2)?;
    let rhs = hs_norm(u, n, s1)?.powf(ip.theta) * hs_norm(u, n, s3)?.powf(1.0 - ip.theta);
    Ok(
        CheckResult::upper_bound("interpolation", lhs, rhs, tol.interpolation, ErrorMode::Rel)
            .with_note(format!("theta={}", ip.theta)),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CknForm {
    /// `|u|_{s1} ≤ C(θ) ‖u‖^θ |u|^{1-θ}_{s2}` for `θ ∈ [ϑ, 1]`.
    Theta,
    /// `|u|_{s2} ≤ C(σ) ‖u‖^{1-σ} |u|^σ_{s1}` for `σ ∈ [0, ς]`.
    Sigma,
}

/// Constant of the CKN-type inequality assembled from the interpolation
/// step and the scalar sharp constant of the auxiliary exponent.
pub fn ckn_constant(n: u32, s1: f64, s2: f64, x: f64, form: CknForm) -> Result<(f64, f64)> {
    if !(0.0 <= s1 && s1 <= s2 && s2 <= 2.0) {
        return domain(format!("need 0 ≤ s1 ≤ s2 ≤ 2, got {s1}, {s2}"));
    }
    match form {
        CknForm::Theta => {
            if s1 == s2 {
                if !(0.0..=1.0).contains(&x) {
                    return domain(format!("theta {x} outside [0, 1]"));
                }
                return Ok((s1, scalar_sharp_constant(n, s1)?.powf(-x / 2.0)));
            }
            let lo = vartheta(n, s1, s2)?;
            if !(x >= lo - 1e-15 && x <= 1.0) {
                return domain(format!("theta {x} outside [{lo}, 1]"));
            }
            let aux = if x >= 1.0 {
                s1
            } else {
                auxiliary_s(n, s1, s2, x.max(lo), AuxKind::Tilde)?
            };
            Ok((aux, scalar_sharp_constant(n, aux)?.powf(-x / 2.0)))
        }
        CknForm::Sigma => {
            let hi = varsigma(n, s1, s2)?;
            if !(x >= 0.0 && x <= hi + 1e-15) {
                return domain(format!("sigma {x} outside [0, {hi}]"));
            }
            let aux = if s1 == s2 || x == 0.0 {
                s2
            } else {
                auxiliary_s(n, s1, s2, x.min(hi), AuxKind::Bar)?
            };
            Ok((aux, scalar_sharp_constant(n, aux)?.powf(-(1.0 - x) / 2.0)))
        }
    }
}

pub fn ckn_check(
    u: &RadialProfile,
    n: u32,
    s1: f64,
    s2: f64,
    x: f64,
    form: CknForm,
    tol: &Tolerances,
) -> Result<CheckResult> {
    let (aux, c) = ckn_constant(n, s1, s2, x, form)?;
    let grad = gradient_energy(u, n)?.sqrt();
    let (lhs, rhs, name) = match form {
        CknForm::Theta => (
            hs_norm(u, n, s1)?,
            c * grad.powf(x) * hs_norm(u, n, s2)?.powf(1.0 - x),
            "ckn_theta",
        ),
        CknForm::Sigma => (
            hs_norm(u, n, s2)?,
            c * grad.powf(1.0 - x) * hs_norm(u, n, s1)?.powf(x),
            "ckn_sigma",
        ),
    };
    Ok(
        CheckResult::upper_bound(name, lhs, rhs, tol.ckn, ErrorMode::Rel)
            .with_note(format!("auxiliary exponent {aux}, constant {c}")),
    )
}

/// Quotient `‖(u,v)‖² / (∫ λ|u|^p + μ|v|^p + p κ|u|^α|v|^β)^{2/p}` (weights
/// `|x|^{-s1}` and `|x|^{-s2}`).
pub fn system_quotient(pp: &PairProfile, p: &SystemParams) -> Result<f64> {
    let e = p.exponents()?;
    let a = gradient_energy(&pp.u, p.n)? + gradient_energy(&pp.v, p.n)?;
    let (bu, bv) = power_integrals(pp, p)?;
    let s2 = p.s2;
    let c = coupling_integral(pp, p, |r| r.powf(-s2))?;
    let den = p.lambda * bu + p.mu * bv + e.p2 * p.kappa * c;
    if !(den > 0.0) {
        return Err(Error::SingularInput(format!(
            "denominator {den} is not positive"
        )));
    }
    Ok(a / den.powf(2.0 / e.p1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemMode {
    /// `Q(u,v) ≥ S` for an arbitrary pair.
    Bound,
    /// `Q(u,v) ≈ S` for an extremal pair.
    Extremal,
}

pub fn ckn_system_check(
    pp: &PairProfile,
    p: &SystemParams,
    sharp: f64,
    mode: SystemMode,
    tol: &Tolerances,
) -> Result<CheckResult> {
    if !p.same_weights() {
        return Err(Error::UnsupportedRegime(
            "the two-component quotient is compared with S for s1 = s2 only".into(),
        ));
    }
    let q = system_quotient(pp, p)?;
    Ok(match mode {
        SystemMode::Bound => {
            CheckResult::upper_bound("system_bound", sharp, q, tol.system_random, ErrorMode::Rel)
        }
        SystemMode::Extremal => CheckResult::equality(
            "system_extremal",
            q,
            sharp,
            tol.system_extremal,
            ErrorMode::Rel,
        ),
    })
}

/// `U_λ` on the grid of `like`.
pub fn u_lambda_on(
    like: &RadialProfile,
    p: &SystemParams,
    d: &DomainConstants,
) -> Result<RadialProfile> {
    let q = critical_exponent(p.n, p.s1)?;
    let k = u_lambda_scale(p.lambda, d, p.n, p.s1)? * d.mu_s.powf(-1.0 / (q - 2.0));
    Ok(instanton_on(like.grid().clone(), p.n, p.s1, 1.0)?.scaled(k))
}

/// `λ ∫ U_λ^{p-2} v² / |x|^s ≤ ‖v‖²`, with equality for `v = U_λ`.
pub fn eigen_inequality_check(
    v: &RadialProfile,
    p: &SystemParams,
    d: &DomainConstants,
    tol: &Tolerances,
) -> Result<CheckResult> {
    let e = p.exponents()?;
    if !p.same_weights() {
        return Err(Error::UnsupportedRegime(
            "closed-form eigenvalue needs s1 = s2".into(),
        ));
    }
    if (p.alpha - (e.p1 - 2.0)).abs() > 1e-12 || (p.beta - 2.0).abs() > 1e-12 {
        return Err(Error::UnsupportedRegime(
            "eigenvalue inequality needs alpha = 2*(s) - 2 and beta = 2".into(),
        ));
    }
    let ul = u_lambda_on(v, p, d)?;
    let f: Vec<f64> = ul
        .values()
        .iter()
        .zip(v.values())
        .map(|(u, w)| {
            if *w == 0.0 {
                0.0
            } else {
                u.abs().powf(e.p1 - 2.0) * w * w
            }
        })
        .collect();
    let lhs = p.lambda * weighted_integral(v.grid(), &f, p.s1, p.n)?;
    let rhs = gradient_energy(v, p.n)?;
    let r = CheckResult::upper_bound("eigen_inequality", lhs, rhs, tol.eigen, ErrorMode::Rel);
    let gap = if rhs > 0.0 {
        (lhs - rhs).abs() / rhs
    } else {
        0.0
    };
    Ok(if rhs > 0.0 && gap <= tol.eigen {
        r.with_note(format!("equality case, relative gap {gap:.3e}"))
    } else {
        r
    })
}

/// Oracle for the Young constant: `min_t (λ + μ t^q) / t^β`, found by
/// golden-section search in `ln t`.
pub fn young_oracle(alpha: f64, beta: f64, lambda: f64, mu: f64) -> (f64, f64) {
    let q = alpha + beta;
    let f = |x: f64| {
        let t = x.exp();
        (lambda + mu * t.powf(q)) / t.powf(beta)
    };
    let x = golden_min(f, -40.0, 40.0, 1e-15);
    (f(x), x.exp())
}

/// Closed-form Young constant against the oracle, and pointwise equality
/// at the optimal ratio.
pub fn young_check(
    alpha: f64,
    beta: f64,
    lambda: f64,
    mu: f64,
    tol: &Tolerances,
) -> Result<Vec<CheckResult>> {
    let k = young_best_constant(alpha, beta, lambda, mu)?;
    let t = young_optimal_ratio(alpha, beta, lambda, mu)?;
    let (oracle, t_oracle) = young_oracle(alpha, beta, lambda, mu);
    let q = alpha + beta;
    let args = format!("alpha={alpha}, beta={beta}, lambda={lambda}, mu={mu}");
    Ok(vec![
        CheckResult::equality("young_constant", k, oracle, tol.young, ErrorMode::Rel)
            .with_note(format!("{args}; oracle ratio {t_oracle}")),
        CheckResult::equality(
            "young_equality",
            k * t.powf(beta),
            lambda + mu * t.powf(q),
            tol.young_equality,
            ErrorMode::Rel,
        )
        .with_note(args),
    ])
}
