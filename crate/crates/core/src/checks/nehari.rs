//! Piecewise weights `a_ε` and Nehari projections.

use serde::{Deserialize, Serialize};

use super::result::{CheckResult, ErrorMode, Tolerances};
use crate::error::{domain, Error, Result};
use crate::params::SystemParams;
use crate::radial::quadrature::weighted_integral;
use crate::radial::{
    coupling_integral, pair_functionals, weighted_lp_integral, NehariData, PairProfile,
    RadialProfile,
};
use crate::roots::{bisect, log_space};

/// `a_ε(r) = r^{-(s-ε)}` inside the unit ball, `r^{-(s+ε)}` outside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsWeightSpec {
    pub s: f64,
    pub eps: f64,
}

impl EpsWeightSpec {
    pub fn new(s: f64, eps: f64) -> Result<Self> {
        if !(eps >= 0.0 && eps <= s) {
            return domain(format!("need 0 ≤ eps ≤ s, got eps={eps}, s={s}"));
        }
        Ok(EpsWeightSpec { s, eps })
    }

    /// Weight value; callers guarantee `r > 0`.
    pub fn weight(&self, r: f64) -> f64 {
        if r < 1.0 {
            r.powf(-(self.s - self.eps))
        } else {
            r.powf(-(self.s + self.eps))
        }
    }
}

pub fn a_eps(r: f64, spec: &EpsWeightSpec) -> Result<f64> {
    if !(r > 0.0) {
        return domain(format!("a_eps needs r > 0, got {r}"));
    }
    Ok(spec.weight(r))
}

/// `∫ a_ε |u|^{2*(s2)}` with base exponent `s2`.
fn eps_power_integral(u: &RadialProfile, p: &SystemParams, eps: f64) -> Result<f64> {
    let spec = EpsWeightSpec::new(p.s2, eps)?;
    let q = p.exponents()?.p2;
    let f: Vec<f64> = u
        .values()
        .iter()
        .zip(u.grid().nodes())
        .map(|(v, &r)| {
            if *v == 0.0 {
                0.0
            } else {
                v.abs().powf(q) * spec.weight(r)
            }
        })
        .collect();
    weighted_integral(u.grid(), &f, 0.0, p.n)
}

/// `∫ a_{ε2}|u|^{2*} ≤ ∫ a_{ε1}|u|^{2*}` for `ε1 ≤ ε2`.
pub fn a_eps_monotonicity_check(
    u: &RadialProfile,
    p: &SystemParams,
    eps1: f64,
    eps2: f64,
) -> Result<CheckResult> {
    if !(0.0 <= eps1 && eps1 <= eps2 && eps2 < p.s2) {
        return domain(format!("need 0 ≤ eps1 ≤ eps2 < s, got {eps1}, {eps2}"));
    }
    let lo = eps_power_integral(u, p, eps2)?;
    let hi = eps_power_integral(u, p, eps1)?;
    Ok(
        CheckResult::upper_bound("a_eps_monotonicity", lo, hi, 1e-12, ErrorMode::Either)
            .with_note(format!("eps1={eps1}, eps2={eps2}")),
    )
}

/// Positive solution(s) of `a = b t^{p1-2} + 2*(s2) κ c t^{p2-2}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NehariProjection {
    /// Smallest positive root.
    pub t: f64,
    /// Sign changes of the defining function on the scan grid.
    pub sign_changes: usize,
    pub roots: Vec<f64>,
}

const PROJECTION_SCAN_POINTS: usize = 4000;
const PROJECTION_SPAN: f64 = 1e8;

/// Nehari multiplier of a pair with functionals `nd`.
pub fn nehari_project(nd: &NehariData, p: &SystemParams) -> Result<NehariProjection> {
    let e = p.exponents()?;
    let NehariData { a, b, c } = *nd;
    if !(a > 0.0 && b > 0.0) || c < 0.0 {
        return domain(format!("need a > 0, b > 0, c ≥ 0, got a={a}, b={b}, c={c}"));
    }
    let cc = e.p2 * p.kappa * c;
    if cc == 0.0 {
        let t = (a / b).powf(1.0 / (e.p1 - 2.0));
        return Ok(NehariProjection {
            t,
            sign_changes: 1,
            roots: vec![t],
        });
    }
    let f = |t: f64| a - b * t.powf(e.p1 - 2.0) - cc * t.powf(e.p2 - 2.0);
    let ln_tb = (a / b).ln() / (e.p1 - 2.0);
    let ts = if cc > 0.0 {
        // Both terms increase, so the root lies where the larger one is
        // between a/2 and a.
        let ln_tc = (a / cc).ln() / (e.p2 - 2.0);
        let hi = ln_tb.min(ln_tc);
        let lo = (ln_tb - 2f64.ln() / (e.p1 - 2.0)).min(ln_tc - 2f64.ln() / (e.p2 - 2.0));
        log_space((lo - 1.0).exp(), (hi + 1.0).exp(), PROJECTION_SCAN_POINTS)
    } else {
        // Centred on the root of the uncoupled equation.
        let centre = ln_tb.exp();
        log_space(
            centre / PROJECTION_SPAN,
            centre * PROJECTION_SPAN,
            PROJECTION_SCAN_POINTS,
        )
    };
    let vals: Vec<f64> = ts.iter().map(|&t| f(t)).collect();
    let mut roots = Vec::new();
    for i in 0..ts.len() - 1 {
        if vals[i] == 0.0 {
            roots.push(ts[i]);
        } else if vals[i].signum() != vals[i + 1].signum() && vals[i + 1] != 0.0 {
            if let Some(t) = bisect(f, ts[i], ts[i + 1], 1e-15) {
                roots.push(t);
            }
        }
    }
    let sign_changes = roots.len();
    match roots.first() {
        Some(&t) => Ok(NehariProjection {
            t,
            sign_changes,
            roots,
        }),
        None => Err(Error::NoRoot(
            "projection equation has no positive root in the scan range".into(),
        )),
    }
}

/// Nehari data with the coupling integral weighted by `a_ε` (base `s2`).
pub fn eps_functionals(pp: &PairProfile, p: &SystemParams, eps: f64) -> Result<NehariData> {
    let mut nd = pair_functionals(pp, p)?;
    let spec = EpsWeightSpec::new(p.s2, eps)?;
    nd.c = coupling_integral(pp, p, |r| spec.weight(r))?;
    Ok(nd)
}

/// Projections `t(ε)` over `eps` are nondecreasing. The check's `lhs` is
/// the largest relative decrease between consecutive values.
pub fn nehari_eps_monotonicity(
    pp: &PairProfile,
    p: &SystemParams,
    eps: &[f64],
    tol: &Tolerances,
) -> Result<(CheckResult, Vec<f64>)> {
    if eps.windows(2).any(|w| w[1] <= w[0]) {
        return domain("eps grid must be strictly increasing");
    }
    let mut ts = Vec::with_capacity(eps.len());
    for &e in eps {
        ts.push(nehari_project(&eps_functionals(pp, p, e)?, p)?.t);
    }
    let worst = ts
        .windows(2)
        .map(|w| (w[0] - w[1]) / w[0])
        .fold(0.0f64, f64::max);
    let check = CheckResult::upper_bound(
        "nehari_eps_monotonicity",
        worst,
        0.0,
        tol.nehari,
        ErrorMode::Abs,
    )
    .with_note(format!("t = {ts:?}"));
    Ok((check, ts))
}

/// `b` split into its two components, for callers that rescale `u` and `v`
/// separately.
pub(crate) fn power_integrals(pp: &PairProfile, p: &SystemParams) -> Result<(f64, f64)> {
    let q = p.exponents()?.p1;
    Ok((
        weighted_lp_integral(&pp.u, q, p.s1, p.n)?,
        weighted_lp_integral(&pp.v, q, p.s1, p.n)?,
    ))
}
