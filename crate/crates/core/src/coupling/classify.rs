//! Attainment classification by a fixed first-match rule list.

use serde::Serialize;

use super::young::kappa_floor;
use super::DomainConstants;
use crate::params::{approx_eq, validate_params, SystemParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AttainmentKind {
    NontrivialGroundState,
    SemiTrivialOnly,
    ContinuumFamily,
    NoNontrivialExtremal,
    Indeterminate,
}

/// The rule that decided a classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// Equal weights, `κ ≤ 0`: only `(U,0)` or `(0,U)` attain.
    NonpositiveCoupling,
    /// `N=3, s=1, α=β=2, λ=μ=2κ`: every `(t1 U, t2 U)` is extremal.
    FlatRatioFamily,
    /// `N=3` with both powers `> 2` or at 2 with `μ ≥ 2κ` / `λ ≥ 2κ`.
    NoInteriorExtremal,
    /// `λ > μ` and the second power is subquadratic or quadratic above threshold.
    GainFirstDominant,
    /// `λ = μ` and the smaller power is subquadratic or quadratic above threshold.
    GainBalanced,
    /// `λ < μ` and the first power is subquadratic or quadratic above threshold.
    GainSecondDominant,
    /// Distinct weights `s2 ≥ s1` with `κ < 0`.
    DistinctWeightsRepulsive,
    /// `κ` equals the coupling floor.
    FloorBoundary,
    /// None of the rules applies.
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttainmentClass {
    pub kind: AttainmentKind,
    pub rule: Rule,
    pub rationale: String,
}

impl AttainmentClass {
    fn new(kind: AttainmentKind, rule: Rule, rationale: impl Into<String>) -> Self {
        AttainmentClass {
            kind,
            rule,
            rationale: rationale.into(),
        }
    }
}

fn is(a: f64, b: f64) -> bool {
    approx_eq(a, b)
}

/// Classifies attainment of the sharp constant.
///
/// The rules are tried in order and the first match wins. The domain
/// constants are consulted only for user-supplied eigenvalue thresholds.
pub fn classify(p: &SystemParams, d: &DomainConstants) -> AttainmentClass {
    use AttainmentKind::*;
    let violations = validate_params(p);
    if !violations.is_empty() {
        return AttainmentClass::new(Indeterminate, Rule::Fallback, "invalid parameters");
    }
    let two_star = p.alpha + p.beta;
    if let Ok(floor) = kappa_floor(p.alpha, p.beta, p.lambda, p.mu, two_star) {
        if is(p.kappa, floor) {
            return AttainmentClass::new(
                Indeterminate,
                Rule::FloorBoundary,
                format!(
                    "kappa equals the coupling floor {floor}; the reduction denominator vanishes"
                ),
            );
        }
    }
    let same = p.same_weights();
    let (l, m, k, a, b) = (p.lambda, p.mu, p.kappa, p.alpha, p.beta);

    if same && k <= 0.0 {
        return AttainmentClass::new(
            SemiTrivialOnly,
            Rule::NonpositiveCoupling,
            "nonpositive coupling: S = max(lambda, mu)^(-2/2*) mu_s, attained only by semi-trivial pairs",
        );
    }
    if same && p.n == 3 && is(p.s1, 1.0) && is(a, 2.0) && is(b, 2.0) && is(l, m) && is(l, 2.0 * k) {
        return AttainmentClass::new(
            ContinuumFamily,
            Rule::FlatRatioFamily,
            "g is constant; every (t1 U, t2 U) is an extremal",
        );
    }
    if same && p.n == 3 {
        let cond_b = a > 2.0 && !is(a, 2.0) || is(a, 2.0) && (m >= 2.0 * k || is(m, 2.0 * k));
        let cond_c = b > 2.0 && !is(b, 2.0) || is(b, 2.0) && (l >= 2.0 * k || is(l, 2.0 * k));
        if cond_b && cond_c {
            return AttainmentClass::new(
                NoNontrivialExtremal,
                Rule::NoInteriorExtremal,
                "N = 3 with both coupling powers superquadratic or quadratic below threshold: no nontrivial extremal",
            );
        }
    }
    if same && k > 0.0 {
        let q = two_star;
        let sub = |x: f64| x > 1.0 && x < 2.0 && !is(x, 2.0);
        if l > m && !is(l, m) && (sub(b) || is(b, 2.0) && k > l / q) {
            return AttainmentClass::new(
                NontrivialGroundState,
                Rule::GainFirstDominant,
                "lambda > mu and coupling gain on the first component: S below the semi-trivial level",
            );
        }
        if is(l, m) {
            let mn = a.min(b);
            if sub(mn) || is(mn, 2.0) && k > l / q {
                return AttainmentClass::new(
                    NontrivialGroundState,
                    Rule::GainBalanced,
                    "lambda = mu and coupling gain: S below the semi-trivial level",
                );
            }
        }
        if l < m && !is(l, m) && (sub(a) || is(a, 2.0) && k > m / q) {
            return AttainmentClass::new(
                NontrivialGroundState,
                Rule::GainSecondDominant,
                "lambda < mu and coupling gain on the second component: S below the semi-trivial level",
            );
        }
    }
    if !same && p.s2 >= p.s1 && k < 0.0 {
        return AttainmentClass::new(
            SemiTrivialOnly,
            Rule::DistinctWeightsRepulsive,
            "distinct weights with repulsive coupling: ground states are semi-trivial",
        );
    }
    let mut why = String::from("outside classified regimes");
    if !same && (d.eta1.is_none() || d.eta2.is_none()) {
        why.push_str("; quadratic-threshold decisions need eigenvalue thresholds when s1 != s2");
    }
    AttainmentClass::new(Indeterminate, Rule::Fallback, why)
}
