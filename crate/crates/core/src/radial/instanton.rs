//! Closed-form scalar extremals `U(r) = c (ε + r^{2-s})^{-(N-2)/(2-s)}`.

use std::sync::Arc;

use super::grid::{default_grid, make_grid, RadialGrid};
use super::profile::RadialProfile;
use super::quadrature::rayleigh_quotient;
use crate::error::{domain, Error, Result};
use crate::params::critical_exponent;

/// Normalization of the instanton shape, derived by substitution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstantonNorm {
    pub c: f64,
    /// `c^{p-2}` obtained at the two probe radii.
    pub probe_values: [f64; 2],
    pub probe_radii: [f64; 2],
}

/// Shape `φ(r) = (ε + r^q)^{-k}` with its first two derivatives.
fn shape(r: f64, eps: f64, q: f64, k: f64) -> (f64, f64, f64) {
    let w = eps + r.powf(q);
    let phi = w.powf(-k);
    let d1 = -k * q * r.powf(q - 1.0) * w.powf(-k - 1.0);
    let d2 = -k
        * q
        * ((q - 1.0) * r.powf(q - 2.0) * w.powf(-k - 1.0)
            - (k + 1.0) * q * r.powf(2.0 * q - 2.0) * w.powf(-k - 2.0));
    (phi, d1, d2)
}

/// Solves `-Δ(cφ) = (cφ)^{p-1}/r^s` for `c` at two radii and checks that
/// both give the same value, which they must when the shape is right.
pub fn instanton_normalization(n: u32, s: f64, scale: f64) -> Result<InstantonNorm> {
    if !(0.0..2.0).contains(&s) {
        return domain(format!("instanton needs 0 ≤ s < 2, got {s}"));
    }
    if !(scale > 0.0 && scale.is_finite()) {
        return domain("instanton scale must be positive");
    }
    let p = critical_exponent(n, s)?;
    let nf = n as f64;
    let q = 2.0 - s;
    let k = (nf - 2.0) / q;
    let centre = scale.powf(1.0 / q);
    let radii = [0.5 * centre, 3.0 * centre];
    let mut vals = [0.0; 2];
    for (v, &r) in vals.iter_mut().zip(&radii) {
        let (phi, d1, d2) = shape(r, scale, q, k);
        let minus_lap = -(d2 + (nf - 1.0) * d1 / r);
        *v = minus_lap / (phi.powf(p - 1.0) * r.powf(-s));
    }
    if (vals[0] - vals[1]).abs() > 1e-12 * vals[0].abs() || !(vals[0] > 0.0) {
        return Err(Error::Numerical(format!(
            "instanton normalization disagrees between radii: {} vs {}",
            vals[0], vals[1]
        )));
    }
    let c = (0.5 * (vals[0] + vals[1])).powf(1.0 / (p - 2.0));
    Ok(InstantonNorm {
        c,
        probe_values: vals,
        probe_radii: radii,
    })
}

/// Instanton sampled on `grid`.
pub fn instanton_on(grid: Arc<RadialGrid>, n: u32, s: f64, scale: f64) -> Result<RadialProfile> {
    let norm = instanton_normalization(n, s, scale)?;
    let q = 2.0 - s;
    let k = (n as f64 - 2.0) / q;
    RadialProfile::from_fn(grid, |r| norm.c * (scale + r.powf(q)).powf(-k))
}

/// Instanton on the default grid.
pub fn instanton(n: u32, s: f64, scale: f64) -> Result<RadialProfile> {
    instanton_on(Arc::new(default_grid()), n, s, scale)
}

/// Half-width in `ln r` of a grid resolving the instanton for exponent `s`.
fn stretched_half_width(n: u32, s: f64) -> Result<f64> {
    let x = 1e6f64.ln() * (1.0 / (2.0 - s)).max(1.0);
    if n as f64 * x > 700.0 {
        return domain(format!(
            "s = {s} is too close to 2 for a finite-range instanton grid in N = {n}"
        ));
    }
    Ok(x)
}

/// Grid on which `scalar_sharp_constant` evaluates the instanton quotient.
pub fn sharp_constant_grid(n: u32, s: f64) -> Result<RadialGrid> {
    let x = stretched_half_width(n, s)?;
    make_grid((-x).exp(), x.exp(), super::grid::DEFAULT_NODES)
}

/// Best scalar constant `μ_s(R^N)`: the Rayleigh quotient of the instanton
/// for `s < 2`, the Hardy constant `((N-2)/2)²` at `s = 2`.
pub fn scalar_sharp_constant(n: u32, s: f64) -> Result<f64> {
    if n < 3 {
        return domain("N must be at least 3");
    }
    if s == 2.0 {
        let h = (n as f64 - 2.0) / 2.0;
        return Ok(h * h);
    }
    let grid = Arc::new(sharp_constant_grid(n, s)?);
    let u = instanton_on(grid, n, s, 1.0)?;
    rayleigh_quotient(&u, n, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_one_normalization_is_sqrt2() {
        let nm = instanton_normalization(3, 1.0, 1.0).unwrap();
        assert!((nm.c - 2f64.sqrt()).abs() < 1e-14);
        let u = instanton(3, 1.0, 1.0).unwrap();
        for (r, v) in u.grid().nodes().iter().zip(u.values()).step_by(97) {
            assert!((v - 2f64.sqrt() / (1.0 + r)).abs() < 1e-15 * (1.0 + v));
        }
    }

    #[test]
    fn normalization_matches_closed_form_power() {
        // c^{p-2} = (N-2)(N-s)·scale, checked independently of the probe.
        for &(n, s, e) in &[(3u32, 0.0, 1.0), (4, 0.5, 2.0), (5, 1.7, 0.3)] {
            let nm = instanton_normalization(n, s, e).unwrap();
            let p = critical_exponent(n, s).unwrap();
            let expect = ((n as f64 - 2.0) * (n as f64 - s) * e).powf(1.0 / (p - 2.0));
            assert!((nm.c - expect).abs() < 1e-12 * expect, "{n} {s} {e}");
        }
    }

    #[test]
    fn s_two_is_rejected_and_hardy_closed_form() {
        assert!(instanton(3, 2.0, 1.0).is_err());
        assert_eq!(scalar_sharp_constant(3, 2.0).unwrap(), 0.25);
        assert_eq!(scalar_sharp_constant(6, 2.0).unwrap(), 4.0);
    }
}
