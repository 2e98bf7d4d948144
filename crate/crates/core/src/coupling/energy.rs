//! Energy levels and extremal coefficients.

use std::sync::Arc;

use serde::Serialize;

use super::{DomainConstants, ExtT};
use crate::error::{domain, Error, Result};
use crate::params::{critical_exponent, SystemParams};
use crate::radial::{instanton_on, PairProfile, RadialGrid, RadialProfile};

/// `c0 = (1/2 - 1/p) S^{p/(p-2)}` with `p = 2*(s)`.
pub fn ground_state_energy(sharp: f64, n: u32, s: f64) -> Result<f64> {
    if !(sharp > 0.0) {
        return domain(format!("sharp constant {sharp} must be positive"));
    }
    let p = critical_exponent(n, s)?;
    Ok((0.5 - 1.0 / p) * sharp.powf(p / (p - 2.0)))
}

/// Least energy of the scalar problem with coefficient `λ`:
/// `(1/2 - 1/p) μ_s^{p/(p-2)} λ^{-2/(p-2)}`.
pub fn m_lambda(lambda: f64, d: &DomainConstants, n: u32, s1: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return domain("lambda must be positive");
    }
    let p = critical_exponent(n, s1)?;
    Ok((0.5 - 1.0 / p) * d.mu_s.powf(p / (p - 2.0)) * lambda.powf(-2.0 / (p - 2.0)))
}

/// Multiplier `(μ_s/λ)^{1/(p-2)}` taking the `μ_s`-normalized scalar
/// extremal to the least-energy solution with coefficient `λ`.
pub fn u_lambda_scale(lambda: f64, d: &DomainConstants, n: u32, s1: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return domain("lambda must be positive");
    }
    let p = critical_exponent(n, s1)?;
    Ok((d.mu_s / lambda).powf(1.0 / (p - 2.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLedgerEntry {
    pub k: u32,
    pub s_k: f64,
    pub cell_count: f64,
    pub c_k: f64,
}

/// Energy of a sign-changing solution glued from `2^{k(N-1)}` sub-cone
/// ground states with sharp constant `S_k`.
pub fn sign_changing_energy(k: u32, n: u32, s: f64, s_k: f64) -> Result<EnergyLedgerEntry> {
    if k < 1 {
        return domain("generation k must be at least 1");
    }
    let per_cell = ground_state_energy(s_k, n, s)?;
    let cell_count = 2f64.powi((k * (n - 1)) as i32);
    Ok(EnergyLedgerEntry {
        k,
        s_k,
        cell_count,
        c_k: cell_count * per_cell,
    })
}

/// Explicit extremal in terms of the `μ_s`-normalized scalar extremal `U`
/// (the solution of `-ΔU = μ_s U^{p-1}/|x|^s`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Extremal {
    /// `(C U, t0 C U)`.
    Pair { coefficient: f64, t0: f64 },
    /// `(C U, 0)`.
    FirstOnly { coefficient: f64 },
    /// `(0, C U)`.
    SecondOnly { coefficient: f64 },
}

impl Extremal {
    pub fn coefficient(&self) -> f64 {
        match *self {
            Extremal::Pair { coefficient, .. }
            | Extremal::FirstOnly { coefficient }
            | Extremal::SecondOnly { coefficient } => coefficient,
        }
    }

    /// Multipliers of `U` in the two components.
    pub fn multipliers(&self) -> (f64, f64) {
        match *self {
            Extremal::Pair { coefficient, t0 } => (coefficient, t0 * coefficient),
            Extremal::FirstOnly { coefficient } => (coefficient, 0.0),
            Extremal::SecondOnly { coefficient } => (0.0, coefficient),
        }
    }
}

/// `C(t0) = S^{1/(p-2)} (λ + μ t0^p + p κ t0^β)^{-1/p}` and the resulting
/// extremal; endpoints `t0 ∈ {0, ∞}` give semi-trivial scalar extremals.
pub fn extremal_coefficients(
    p: &SystemParams,
    d: &DomainConstants,
    t0: ExtT,
    sharp: f64,
) -> Result<Extremal> {
    if !p.same_weights() {
        return Err(Error::UnsupportedRegime(
            "extremals are built for s1 = s2".into(),
        ));
    }
    let q = p.exponents()?.p1;
    match t0 {
        ExtT::Infinity => Ok(Extremal::SecondOnly {
            coefficient: u_lambda_scale(p.mu, d, p.n, p.s1)?,
        }),
        ExtT::Finite(t) if t == 0.0 => Ok(Extremal::FirstOnly {
            coefficient: u_lambda_scale(p.lambda, d, p.n, p.s1)?,
        }),
        ExtT::Finite(t) => {
            if !(t > 0.0 && t.is_finite()) {
                return domain(format!("invalid ratio {t}"));
            }
            if !(sharp > 0.0) {
                return domain("sharp constant must be positive");
            }
            let base = p.lambda + p.mu * t.powf(q) + q * p.kappa * t.powf(p.beta);
            if !(base > 0.0) {
                return Err(Error::SingularInput(format!(
                    "denominator {base} not positive"
                )));
            }
            let c = sharp.powf(1.0 / (q - 2.0)) * base.powf(-1.0 / q);
            Ok(Extremal::Pair {
                coefficient: c,
                t0: t,
            })
        }
    }
}

/// `μ_s`-normalized scalar extremal `U = μ_s^{-1/(p-2)} × instanton` on
/// `grid`.
pub fn normalized_scalar_extremal(
    grid: Arc<RadialGrid>,
    n: u32,
    s: f64,
    mu_s: f64,
) -> Result<RadialProfile> {
    let p = critical_exponent(n, s)?;
    Ok(instanton_on(grid, n, s, 1.0)?.scaled(mu_s.powf(-1.0 / (p - 2.0))))
}

/// Samples an extremal on `grid`.
pub fn extremal_pair(
    ext: &Extremal,
    p: &SystemParams,
    d: &DomainConstants,
    grid: Arc<RadialGrid>,
) -> Result<PairProfile> {
    let u = normalized_scalar_extremal(grid, p.n, p.s1, d.mu_s)?;
    let (a, b) = ext.multipliers();
    PairProfile::new(u.scaled(a), u.scaled(b))
}
