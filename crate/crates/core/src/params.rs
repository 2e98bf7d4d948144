//! Parameter validation and closed-form exponent arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Absolute tolerance for the closure `alpha + beta = 2*(s2)`.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// Tolerance used when deciding float equalities such as `s1 == s2`.
pub const EQ_TOL: f64 = 1e-12;

pub(crate) fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= EQ_TOL * (1.0 + a.abs().max(b.abs()))
}

/// The full parameter tuple of the coupled system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub n: u32,
    pub s1: f64,
    pub s2: f64,
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
    pub mu: f64,
    pub kappa: f64,
}

impl SystemParams {
    /// Builds a tuple with `beta = 2*(s2) - alpha`, so the constraint closes
    /// exactly in floating point.
    pub fn with_alpha(
        n: u32,
        s1: f64,
        s2: f64,
        alpha: f64,
        lambda: f64,
        mu: f64,
        kappa: f64,
    ) -> Self {
        let p2 = 2.0 * (n as f64 - s2) / (n as f64 - 2.0);
        SystemParams {
            n,
            s1,
            s2,
            alpha,
            beta: p2 - alpha,
            lambda,
            mu,
            kappa,
        }
    }

    /// Single-weight tuple `s1 = s2 = s`.
    pub fn equal_weights(n: u32, s: f64, alpha: f64, lambda: f64, mu: f64, kappa: f64) -> Self {
        Self::with_alpha(n, s, s, alpha, lambda, mu, kappa)
    }

    pub fn dim(&self) -> f64 {
        self.n as f64
    }

    pub fn same_weights(&self) -> bool {
        approx_eq(self.s1, self.s2)
    }

    /// `2*(s1)` and `2*(s2)`.
    pub fn exponents(&self) -> Result<ExponentSet> {
        Ok(ExponentSet {
            p1: critical_exponent(self.n, self.s1)?,
            p2: critical_exponent(self.n, self.s2)?,
        })
    }

    /// Exchanges the roles of the two components.
    pub fn swapped(&self) -> Self {
        SystemParams {
            alpha: self.beta,
            beta: self.alpha,
            lambda: self.mu,
            mu: self.lambda,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let v = validate_params(self);
        if v.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = v.iter().map(|x| x.message.clone()).collect();
            Err(Error::Domain(msgs.join("; ")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentSet {
    pub p1: f64,
    pub p2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterpolationResult {
    pub theta: f64,
    pub rho: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub field: &'static str,
    pub message: String,
}

/// `2*(s) = 2(N-s)/(N-2)`.
pub fn critical_exponent(n: u32, s: f64) -> Result<f64> {
    if n < 3 {
        return domain(format!("N = {n} must be at least 3"));
    }
    if !(0.0..=2.0).contains(&s) {
        return domain(format!("s = {s} must lie in [0, 2]"));
    }
    let n = n as f64;
    Ok(2.0 * (n - s) / (n - 2.0))
}

/// Lists every violated invariant; an empty list means valid.
pub fn validate_params(p: &SystemParams) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |field, message: String| out.push(Violation { field, message });
    let finite = [p.s1, p.s2, p.alpha, p.beta, p.lambda, p.mu, p.kappa]
        .iter()
        .all(|x| x.is_finite());
    if !finite {
        push("params", "all parameters must be finite".into());
        return out;
    }
    if p.n < 3 {
        push("n", "N ≥ 3".into());
    }
    if !(p.s1 > 0.0 && p.s1 < 2.0) {
        push("s1", format!("0 < s1 < 2 (got {})", p.s1));
    }
    if !(p.s2 > 0.0 && p.s2 < 2.0) {
        push("s2", format!("0 < s2 < 2 (got {})", p.s2));
    }
    if p.alpha <= 1.0 {
        push("alpha", format!("alpha > 1 (got {})", p.alpha));
    }
    if p.beta <= 1.0 {
        push("beta", format!("beta > 1 (got {})", p.beta));
    }
    if p.n >= 3 && (0.0..=2.0).contains(&p.s2) {
        let p2 = 2.0 * (p.dim() - p.s2) / (p.dim() - 2.0);
        if (p.alpha + p.beta - p2).abs() > CONSTRAINT_TOL {
            push(
                "beta",
                format!("alpha+beta ≠ 2*(s2): {} + {} vs {}", p.alpha, p.beta, p2),
            );
        }
    }
    if p.lambda <= 0.0 {
        push("lambda", format!("lambda > 0 (got {})", p.lambda));
    }
    if p.mu <= 0.0 {
        push("mu", format!("mu > 0 (got {})", p.mu));
    }
    out
}

/// Exponent `theta` and Hölder split `rho` of the three-weight interpolation
/// inequality `|u|_{s2} ≤ |u|_{s1}^θ |u|_{s3}^{1-θ}`.
pub fn interpolation_exponents(n: u32, s1: f64, s2: f64, s3: f64) -> Result<InterpolationResult> {
    if n < 3 {
        return domain("N must be at least 3");
    }
    if !(0.0 <= s1 && s1 < s2 && s2 < s3 && s3 <= 2.0) {
        return domain(format!("need 0 ≤ s1 < s2 < s3 ≤ 2, got ({s1}, {s2}, {s3})"));
    }
    let nf = n as f64;
    let theta = (nf - s1) * (s3 - s2) / ((nf - s2) * (s3 - s1));
    let rho = (s3 - s2) / (s3 - s1);
    Ok(InterpolationResult { theta, rho })
}

/// `ϑ(s1, s2) = N(s2 - s1) / (s2 (N - s1))`.
pub fn vartheta(n: u32, s1: f64, s2: f64) -> Result<f64> {
    if n < 3 {
        return domain("N must be at least 3");
    }
    if s2 <= 0.0 {
        return domain("s2 must be positive");
    }
    if !(0.0 <= s1 && s1 <= s2 && s2 <= 2.0) {
        return domain(format!("need 0 ≤ s1 ≤ s2 ≤ 2, got ({s1}, {s2})"));
    }
    let nf = n as f64;
    Ok(nf * (s2 - s1) / (s2 * (nf - s1)))
}

/// `ς(s1, s2) = (N - s1)(2 - s2) / ((N - s2)(2 - s1))`.
pub fn varsigma(n: u32, s1: f64, s2: f64) -> Result<f64> {
    if n < 3 {
        return domain("N must be at least 3");
    }
    if s1 >= 2.0 {
        return domain("s1 must be below 2");
    }
    if !(0.0 <= s1 && s1 <= s2 && s2 <= 2.0) {
        return domain(format!("need 0 ≤ s1 ≤ s2 ≤ 2, got ({s1}, {s2})"));
    }
    let nf = n as f64;
    Ok((nf - s1) * (2.0 - s2) / ((nf - s2) * (2.0 - s1)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuxKind {
    /// Lower auxiliary weight `s̃ ∈ [0, s1)` for an exponent `θ`.
    Tilde,
    /// Upper auxiliary weight `s̄ ∈ (s2, 2]` for an exponent `σ`.
    Bar,
}

/// Auxiliary weight exponent through which the two-weight inequalities
/// factor. Requires `s1 < s2`.
pub fn auxiliary_s(n: u32, s1: f64, s2: f64, theta_or_sigma: f64, which: AuxKind) -> Result<f64> {
    if !(0.0 <= s1 && s1 < s2 && s2 <= 2.0) {
        return domain(format!("need 0 ≤ s1 < s2 ≤ 2, got ({s1}, {s2})"));
    }
    let nf = n as f64;
    match which {
        AuxKind::Tilde => {
            let lo = vartheta(n, s1, s2)?;
            let th = theta_or_sigma;
            if !(th >= lo && th < 1.0) {
                return domain(format!("theta = {th} outside [{lo}, 1)"));
            }
            let st = s2 - (nf - s2) * (s2 - s1) / (th * (nf - s1) - (s2 - s1));
            // Round-off at theta = vartheta lands a hair below zero.
            let st = if st < 0.0 && st > -1e-12 { 0.0 } else { st };
            if !(st >= 0.0 && st < s1) {
                return Err(Error::Numerical(format!("s̃ = {st} violates 0 ≤ s̃ < s1")));
            }
            Ok(st)
        }
        AuxKind::Bar => {
            let hi = varsigma(n, s1, s2)?;
            let sg = theta_or_sigma;
            if !(sg > 0.0 && sg <= hi) {
                return domain(format!("sigma = {sg} outside (0, {hi}]"));
            }
            let sb = s1 + (nf - s1) * (s2 - s1) / ((nf - s1) - (nf - s2) * sg);
            let sb = if sb > 2.0 && sb < 2.0 + 1e-12 {
                2.0
            } else {
                sb
            };
            if !(sb > s2 && sb <= 2.0) {
                return Err(Error::Numerical(format!("s̄ = {sb} violates s2 < s̄ ≤ 2")));
            }
            Ok(sb)
        }
    }
}
