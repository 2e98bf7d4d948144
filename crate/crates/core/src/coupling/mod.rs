//! Sharp-constant engine for equal weights, plus scalar-baseline formulas.

mod classify;
mod energy;
mod reduction;
mod young;

use std::fmt;

use serde::{Serialize, Serializer};

pub use classify::{classify, AttainmentClass, AttainmentKind, Rule};
pub use energy::{
    extremal_coefficients, extremal_pair, ground_state_energy, m_lambda,
    normalized_scalar_extremal, sign_changing_energy, u_lambda_scale, EnergyLedgerEntry, Extremal,
};
pub use reduction::{
    g_eval, g_eval_ext, h_eval, minimize_g, GMinimum, StationaryPoint, SCAN_MAX, SCAN_MIN,
    SCAN_POINTS,
};
pub use young::{kappa_floor, young_best_constant, young_optimal_ratio};

use crate::error::{domain, Error, Result};
use crate::params::{approx_eq, critical_exponent, SystemParams};

/// A ratio in `[0, +∞]`; infinity is categorical, never a large float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtT {
    Finite(f64),
    Infinity,
}

impl ExtT {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtT::Finite(t) => Some(t),
            ExtT::Infinity => None,
        }
    }

    /// True for `0` and `∞`.
    pub fn is_endpoint(self) -> bool {
        matches!(self, ExtT::Infinity | ExtT::Finite(0.0))
    }

    pub fn as_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for ExtT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtT::Finite(t) => write!(f, "{t:.17e}"),
            ExtT::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtT {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtT::Finite(t) => s.serialize_f64(*t),
            ExtT::Infinity => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainKind {
    WholeSpace,
    HalfSpace,
    Cone { aperture: f64 },
    Custom { label: String },
}

/// Scalar best constant of the domain and optional eigenvalue thresholds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainConstants {
    pub kind: DomainKind,
    pub mu_s: f64,
    pub eta1: Option<f64>,
    pub eta2: Option<f64>,
}

impl DomainConstants {
    /// Custom domain with a supplied `μ_s`.
    pub fn supplied(mu_s: f64) -> Self {
        DomainConstants {
            kind: DomainKind::Custom {
                label: "supplied".into(),
            },
            mu_s,
            eta1: None,
            eta2: None,
        }
    }

    /// Whole space with `μ_s` computed from the instanton quotient.
    pub fn whole_space(n: u32, s: f64) -> Result<Self> {
        let mu_s = crate::radial::scalar_sharp_constant(n, s)?;
        Ok(DomainConstants {
            kind: DomainKind::WholeSpace,
            mu_s,
            eta1: None,
            eta2: None,
        })
    }

    /// Fills `η1 = λ`, `η2 = μ` (valid for equal weights only).
    pub fn with_closed_form_eta(mut self, p: &SystemParams) -> Self {
        if p.same_weights() {
            self.eta1 = Some(p.lambda);
            self.eta2 = Some(p.mu);
        }
        self
    }

    pub fn validate(&self, p: &SystemParams) -> Result<()> {
        if !(self.mu_s > 0.0 && self.mu_s.is_finite()) {
            return domain(format!("mu_s = {} must be positive", self.mu_s));
        }
        if let DomainKind::Cone { aperture } = self.kind {
            if !(aperture > 0.0) {
                return domain("cone aperture must be positive");
            }
        }
        if p.same_weights() {
            if let Some(e) = self.eta1 {
                if !approx_eq(e, p.lambda) {
                    return domain("eta1 must equal lambda when s1 = s2");
                }
            }
            if let Some(e) = self.eta2 {
                if !approx_eq(e, p.mu) {
                    return domain("eta2 must equal mu when s1 = s2");
                }
            }
        }
        Ok(())
    }
}

/// Upper bound `max(λ,μ)^{-2/p} μ_s` given by the semi-trivial pairs.
pub fn semi_trivial_bound(p: &SystemParams, d: &DomainConstants) -> Result<f64> {
    let q = critical_exponent(p.n, p.s1)?;
    Ok(p.lambda.max(p.mu).powf(-2.0 / q) * d.mu_s)
}

/// Sharp constant of the two-component inequality for equal weights.
pub fn sharp_constant(p: &SystemParams, d: &DomainConstants) -> Result<f64> {
    if !p.same_weights() {
        return Err(Error::UnsupportedRegime(
            "sharp constant reduction needs s1 = s2".into(),
        ));
    }
    if !(d.mu_s > 0.0) {
        return domain("mu_s must be positive");
    }
    if p.kappa <= 0.0 {
        return semi_trivial_bound(p, d);
    }
    Ok(minimize_g(p)?.g_min * d.mu_s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouplingReport {
    pub params: SystemParams,
    pub mu_s: f64,
    pub t0: Option<ExtT>,
    pub g_min: Option<f64>,
    pub sharp_constant: Option<f64>,
    pub semi_trivial_bound: Option<f64>,
    pub extremal: Option<Extremal>,
    pub extremal_coefficient: Option<f64>,
    pub ground_energy: Option<f64>,
    pub m_lambda: f64,
    pub m_mu: f64,
    pub young_constant: f64,
    pub kappa_floor: f64,
    pub classification: AttainmentClass,
    pub stationary_points: Vec<StationaryPoint>,
    pub notes: Vec<String>,
}

/// Runs the full reduction and collects every named constant.
pub fn analyze(p: &SystemParams, d: &DomainConstants) -> Result<CouplingReport> {
    p.validate()?;
    d.validate(p)?;
    let two_star = p.alpha + p.beta;
    let classification = classify(p, d);
    let mut report = CouplingReport {
        params: *p,
        mu_s: d.mu_s,
        t0: None,
        g_min: None,
        sharp_constant: None,
        semi_trivial_bound: None,
        extremal: None,
        extremal_coefficient: None,
        ground_energy: None,
        m_lambda: m_lambda(p.lambda, d, p.n, p.s1)?,
        m_mu: m_lambda(p.mu, d, p.n, p.s1)?,
        young_constant: young_best_constant(p.alpha, p.beta, p.lambda, p.mu)?,
        kappa_floor: kappa_floor(p.alpha, p.beta, p.lambda, p.mu, two_star)?,
        classification,
        stationary_points: Vec::new(),
        notes: Vec::new(),
    };
    if !p.same_weights() {
        report
            .notes
            .push("s1 != s2: ratio reduction fields are not defined".into());
        return Ok(report);
    }
    let bound = semi_trivial_bound(p, d)?;
    report.semi_trivial_bound = Some(bound);
    let sharp = sharp_constant(p, d)?;
    report.sharp_constant = Some(sharp);
    match minimize_g(p) {
        Ok(m) => {
            report.t0 = Some(m.t0);
            report.g_min = Some(m.g_min);
            if !m.scan_complete {
                report.notes.push(format!(
                    "root scan incomplete: {}",
                    m.note.clone().unwrap_or_default()
                ));
            }
            report.stationary_points = m.stationary_points.clone();
        }
        Err(Error::SingularInput(msg)) => {
            report.notes.push(format!("g reduction skipped: {msg}"));
            report.t0 = Some(if p.lambda >= p.mu {
                ExtT::Finite(0.0)
            } else {
                ExtT::Infinity
            });
        }
        Err(e) => return Err(e),
    }
    if let Some(t0) = report.t0 {
        let e = extremal_coefficients(p, d, t0, sharp)?;
        report.extremal_coefficient = Some(e.coefficient());
        report.extremal = Some(e);
    }
    report.ground_energy = Some(ground_state_energy(sharp, p.n, p.s1)?);
    consistency_notes(&mut report, bound);
    Ok(report)
}

/// Flags disagreement between the rule-based classification and the
/// location of the numerically exact minimizer.
fn consistency_notes(r: &mut CouplingReport, bound: f64) {
    let (Some(t0), Some(sharp)) = (r.t0, r.sharp_constant) else {
        return;
    };
    let below = sharp < bound * (1.0 - 1e-12);
    match r.classification.kind {
        AttainmentKind::NontrivialGroundState if !below => r.notes.push(format!(
            "consistency: rule {:?} predicts S below the semi-trivial level, but the reduction attains it at t0 = {t0}",
            r.classification.rule
        )),
        AttainmentKind::SemiTrivialOnly | AttainmentKind::NoNontrivialExtremal if below => r.notes.push(format!(
            "consistency: reduction finds S below the semi-trivial level at t0 = {t0}"
        )),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateau_example() {
        let p = SystemParams::equal_weights(3, 1.0, 2.0, 3.0, 1.0, -0.1);
        let d = DomainConstants::supplied(1.0);
        assert!((sharp_constant(&p, &d).unwrap() - 3f64.powf(-0.5)).abs() < 1e-15);
    }

    #[test]
    fn flat_example() {
        let p = SystemParams::equal_weights(3, 1.0, 2.0, 2.0, 2.0, 1.0);
        let d = DomainConstants::supplied(1.0);
        assert!((sharp_constant(&p, &d).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        let r = analyze(&p, &d).unwrap();
        assert_eq!(r.classification.kind, AttainmentKind::ContinuumFamily);
        assert_eq!(r.t0, Some(ExtT::Finite(1.0)));
        assert!(r.notes.is_empty());
    }

    #[test]
    fn report_flags_quadratic_threshold_conflict() {
        let p = SystemParams::equal_weights(3, 1.0, 2.0, 3.0, 1.0, 1.0);
        let r = analyze(&p, &DomainConstants::supplied(1.0)).unwrap();
        assert_eq!(r.classification.kind, AttainmentKind::NontrivialGroundState);
        assert_eq!(r.t0, Some(ExtT::Finite(0.0)));
        assert!(r.notes.iter().any(|n| n.starts_with("consistency")));
    }

    #[test]
    fn ext_serialization() {
        assert_eq!(format!("{}", ExtT::Infinity), "inf");
        assert!(ExtT::Finite(0.0).is_endpoint());
        assert!(!ExtT::Finite(0.3).is_endpoint());
    }
}
