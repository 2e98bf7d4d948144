use serde::{Deserialize, Serialize};

/// How `lhs` and `rhs` are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `lhs ≈ rhs`.
    Equality,
    /// `lhs ≤ rhs` up to the tolerance.
    UpperBound,
}

/// Which error the tolerance applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorMode {
    Abs,
    Rel,
    Either,
}

/// One verified identity or inequality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub notes: String,
    #[serde(skip)]
    pub comparison: Comparison,
    #[serde(skip)]
    pub mode: ErrorMode,
}

fn errors(lhs: f64, rhs: f64, comparison: Comparison) -> (f64, f64) {
    let abs = match comparison {
        Comparison::Equality => (lhs - rhs).abs(),
        Comparison::UpperBound => (lhs - rhs).max(0.0),
    };
    let rel = if abs == 0.0 {
        0.0
    } else if rhs == 0.0 {
        f64::INFINITY
    } else {
        abs / rhs.abs()
    };
    // NaN inputs must never pass.
    if lhs.is_nan() || rhs.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    (abs, rel)
}

fn decide(abs: f64, rel: f64, tol: f64, mode: ErrorMode) -> bool {
    match mode {
        ErrorMode::Abs => abs <= tol,
        ErrorMode::Rel => rel <= tol,
        ErrorMode::Either => abs <= tol || rel <= tol,
    }
}

impl CheckResult {
    pub fn new(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        comparison: Comparison,
        mode: ErrorMode,
    ) -> Self {
        let (abs_error, rel_error) = errors(lhs, rhs, comparison);
        CheckResult {
            name: name.into(),
            lhs,
            rhs,
            abs_error,
            rel_error,
            tolerance,
            pass: decide(abs_error, rel_error, tolerance, mode),
            notes: String::new(),
            comparison,
            mode,
        }
    }

    pub fn equality(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        mode: ErrorMode,
    ) -> Self {
        Self::new(name, lhs, rhs, tolerance, Comparison::Equality, mode)
    }

    pub fn upper_bound(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        mode: ErrorMode,
    ) -> Self {
        Self::new(name, lhs, rhs, tolerance, Comparison::UpperBound, mode)
    }

    /// A failed result standing in for a check that could not run.
    pub fn refused(name: impl Into<String>, reason: impl Into<String>) -> Self {
        let mut r = Self::equality(name, f64::NAN, f64::NAN, 0.0, ErrorMode::Abs);
        r.pass = false;
        r.notes = format!("refused: {}", reason.into());
        r
    }

    pub fn with_note(mut self, note: impl AsRef<str>) -> Self {
        let note = note.as_ref();
        if !note.is_empty() {
            if !self.notes.is_empty() {
                self.notes.push_str("; ");
            }
            self.notes.push_str(note);
        }
        self
    }

    /// Pass flag recomputed from the stored numbers.
    pub fn recomputed_pass(&self) -> bool {
        let (abs, rel) = errors(self.lhs, self.rhs, self.comparison);
        decide(abs, rel, self.tolerance, self.mode)
    }
}

/// Named tolerances used by the checks; every field can be overridden from
/// a run configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative agreement of the two sides of the Pohozaev identity.
    pub pohozaev: f64,
    /// Residual gate, as a multiple of `pohozaev`.
    pub residual_gate_factor: f64,
    /// Relative slack for the interpolation inequality.
    pub interpolation: f64,
    /// Relative slack for the CKN-type inequalities.
    pub ckn: f64,
    /// Relative slack of `Q ≥ S` for arbitrary pairs.
    pub system_random: f64,
    /// Relative distance of `Q` from `S` for extremal pairs.
    pub system_extremal: f64,
    /// Relative slack (and equality tolerance) of the eigenvalue inequality.
    pub eigen: f64,
    /// Young constant against the numerical oracle.
    pub young: f64,
    /// Pointwise equality at the optimal ratio.
    pub young_equality: f64,
    /// Relative tolerance of Nehari projection identities.
    pub nehari: f64,
    /// Allowed ratio of pair residual to scalar residual.
    pub special_pair_factor: f64,
    /// Allowed distance of a fitted exponent from its prediction.
    pub perturbation_exponent: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            pohozaev: 5e-3,
            residual_gate_factor: 10.0,
            interpolation: 1e-10,
            ckn: 1e-8,
            system_random: 1e-6,
            system_extremal: 5e-3,
            eigen: 1e-3,
            young: 1e-8,
            young_equality: 1e-12,
            nehari: 1e-10,
            special_pair_factor: 10.0,
            perturbation_exponent: 0.05,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes() {
        let r = CheckResult::equality("x", 1.0, 1.0 + 1e-9, 1e-8, ErrorMode::Rel);
        assert!(r.pass && r.recomputed_pass());
        let r = CheckResult::upper_bound("x", 0.5, 1.0, 0.0, ErrorMode::Abs);
        assert!(r.pass);
        assert_eq!(r.abs_error, 0.0);
        let r = CheckResult::upper_bound("x", 1.1, 1.0, 0.05, ErrorMode::Either);
        assert!(!r.pass);
        let r = CheckResult::equality("zero", 0.0, 0.0, 0.0, ErrorMode::Rel);
        assert!(r.pass);
        let r = CheckResult::refused("p", "residual too large");
        assert!(!r.pass && !r.recomputed_pass());
    }

    #[test]
    fn serialized_fields() {
        let r = CheckResult::equality("x", 1.0, 2.0, 0.1, ErrorMode::Abs);
        let v = serde_json::to_value(&r).unwrap();
        let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(
            keys,
            [
                "abs_error",
                "lhs",
                "name",
                "notes",
                "pass",
                "rel_error",
                "rhs",
                "tolerance"
            ]
        );
    }
}
