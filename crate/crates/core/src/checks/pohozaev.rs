//! Pohozaev identities for radial solutions.

use serde::{Deserialize, Serialize};

use super::nehari::{power_integrals, EpsWeightSpec};
use super::result::{CheckResult, ErrorMode, Tolerances};
use crate::error::{domain, Error, Result};
use crate::params::SystemParams;
use crate::radial::quadrature::gradient_energy;
use crate::radial::{coupling_integral, pde_residual, pde_residual_weighted, PairProfile};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum WeightMode {
    /// Coupling weight `|x|^{-s2}`.
    PureS1S2,
    /// Coupling weight `a_ε` with base `s2`.
    ApproxEps { eps: f64 },
}

/// Checks `2(N-s1)∫G1 + 2(N-s2)∫G2 = (N-2)‖(u,v)‖²`, where `G1` holds the
/// `λ, μ` terms and `G2 = κ|u|^α|v|^β/|x|^{s2}`. In `ApproxEps` mode the
/// coupling weight is `a_ε`, the identity gains the term
/// `2ε(∫_{B1} - ∫_{B1^c}) κ a_ε |u|^α|v|^β`, and the two halves of that
/// integral are checked for balance.
///
/// Inputs whose PDE residual exceeds `residual_gate_factor × pohozaev` are
/// refused with [`Error::Refused`].
pub fn pohozaev_check(
    pp: &PairProfile,
    p: &SystemParams,
    mode: WeightMode,
    tol: &Tolerances,
) -> Result<Vec<CheckResult>> {
    let e = p.exponents()?;
    let nf = p.n as f64;
    let gate = tol.residual_gate_factor * tol.pohozaev;
    let eps = match mode {
        WeightMode::PureS1S2 => 0.0,
        WeightMode::ApproxEps { eps } => {
            if !(eps > 0.0 && eps < p.s2) {
                return domain(format!("need 0 < eps < s2, got {eps}"));
            }
            eps
        }
    };
    let spec = EpsWeightSpec::new(p.s2, eps)?;
    let res = match mode {
        WeightMode::PureS1S2 => pde_residual(pp, p)?,
        WeightMode::ApproxEps { .. } => pde_residual_weighted(pp, p, |r| spec.weight(r))?,
    };
    if res.relative > gate {
        return Err(Error::Refused(format!(
            "relative PDE residual {:.3e} exceeds the gate {gate:.3e}",
            res.relative
        )));
    }
    let a = gradient_energy(&pp.u, p.n)? + gradient_energy(&pp.v, p.n)?;
    let (bu, bv) = power_integrals(pp, p)?;
    let g1 = (p.lambda * bu + p.mu * bv) / e.p1;
    let inner = p.kappa * coupling_integral(pp, p, |r| if r < 1.0 { spec.weight(r) } else { 0.0 })?;
    let outer =
        p.kappa * coupling_integral(pp, p, |r| if r >= 1.0 { spec.weight(r) } else { 0.0 })?;
    let g2 = inner + outer;
    let note = format!("relative residual {:.3e}", res.relative);
    match mode {
        WeightMode::PureS1S2 => {
            let lhs = 2.0 * (nf - p.s1) * g1 + 2.0 * (nf - p.s2) * g2;
            let rhs = (nf - 2.0) * a;
            Ok(vec![CheckResult::equality(
                "pohozaev",
                lhs,
                rhs,
                tol.pohozaev,
                ErrorMode::Rel,
            )
            .with_note(note)])
        }
        WeightMode::ApproxEps { eps } => {
            let lhs = (nf - 2.0) * a - 2.0 * (nf - p.s1) * g1 - 2.0 * (nf - p.s2) * g2;
            let rhs = 2.0 * eps * (inner - outer);
            let scale = (nf - 2.0) * a;
            // Both sides are small differences; compare against the energy scale.
            let identity = CheckResult::equality(
                "pohozaev_eps",
                lhs,
                rhs,
                tol.pohozaev * scale.max(f64::MIN_POSITIVE),
                ErrorMode::Abs,
            )
            .with_note(&note);
            let balance = CheckResult::equality(
                "pohozaev_eps_balance",
                inner,
                outer,
                tol.pohozaev * g2.max(f64::MIN_POSITIVE),
                ErrorMode::Abs,
            )
            .with_note(format!("{note}; interior vs exterior coupling mass"));
            Ok(vec![identity, balance])
        }
    }
}
