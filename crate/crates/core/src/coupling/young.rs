use crate::error::{domain, Result};

fn check_positive(args: &[(&str, f64)]) -> Result<()> {
    for (name, v) in args {
        if !(*v > 0.0 && v.is_finite()) {
            return domain(format!("{name} = {v} must be positive"));
        }
    }
    Ok(())
}

/// Best constant `κ(α,β,λ,μ)` with `κ|u|^α|v|^β ≤ λ|u|^{α+β} + μ|v|^{α+β}`.
pub fn young_best_constant(alpha: f64, beta: f64, lambda: f64, mu: f64) -> Result<f64> {
    check_positive(&[
        ("alpha", alpha),
        ("beta", beta),
        ("lambda", lambda),
        ("mu", mu),
    ])?;
    let q = alpha + beta;
    Ok(q * (lambda / alpha).powf(alpha / q) * (mu / beta).powf(beta / q))
}

/// Ratio `v/u` at which the Young inequality is an equality.
pub fn young_optimal_ratio(alpha: f64, beta: f64, lambda: f64, mu: f64) -> Result<f64> {
    check_positive(&[
        ("alpha", alpha),
        ("beta", beta),
        ("lambda", lambda),
        ("mu", mu),
    ])?;
    Ok((lambda * beta / (mu * alpha)).powf(1.0 / (alpha + beta)))
}

/// Lower edge of the coupling range on which the reduction denominator
/// stays positive: `-(λ/α)^{α/2*}(μ/β)^{β/2*}`.
pub fn kappa_floor(alpha: f64, beta: f64, lambda: f64, mu: f64, two_star: f64) -> Result<f64> {
    check_positive(&[
        ("alpha", alpha),
        ("beta", beta),
        ("lambda", lambda),
        ("mu", mu),
    ])?;
    if (alpha + beta - two_star).abs() > crate::params::CONSTRAINT_TOL {
        return domain(format!(
            "alpha + beta = {} differs from 2* = {two_star}",
            alpha + beta
        ));
    }
    Ok(-(lambda / alpha).powf(alpha / two_star) * (mu / beta).powf(beta / two_star))
}
