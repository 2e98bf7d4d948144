//! Quadrature on log grids.
//!
//! Integrals over `(0, ∞)` are computed in `x = ln r`. The interior uses the
//! composite trapezoid rule; beyond each end of the grid the integrand is
//! continued as the exponential (a power law in `r`) matching its last two
//! samples. If those continuations carry more than 1% of the total the
//! integral is reported divergent.

use super::grid::{sphere_area, RadialGrid};
use super::profile::RadialProfile;
use crate::error::{Error, Result};
use crate::params::critical_exponent;

pub const TAIL_FRACTION_LIMIT: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub left_tail: f64,
    pub right_tail: f64,
}

/// Integral of the exponential continuation past `g_end`, where `g_prev`
/// is the neighbour one step further inside.
pub(crate) fn tail(g_end: f64, g_prev: f64, h: f64, scale: f64) -> Option<f64> {
    if g_end == 0.0 {
        return Some(0.0);
    }
    if g_end.signum() == g_prev.signum() && g_prev.abs() > g_end.abs() {
        let rate = (g_prev / g_end).ln() / h;
        return Some(g_end / rate);
    }
    // Not decaying: acceptable only when the end value is negligible.
    if g_end.abs() <= 1e-14 * scale {
        Some(0.0)
    } else {
        None
    }
}

/// `∫ g(x) dx` over the real line from samples on the grid.
pub fn integrate_log(grid: &RadialGrid, g: &[f64]) -> Result<Integral> {
    let n = g.len();
    debug_assert_eq!(n, grid.len());
    let h = grid.log_step();
    let mut sum = 0.0;
    let mut scale = 0.0;
    for (i, &gi) in g.iter().enumerate() {
        let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        sum += w * gi;
        scale += w * gi.abs();
    }
    sum *= h;
    scale *= h;
    let left = tail(g[0], g[1], h, scale);
    let right = tail(g[n - 1], g[n - 2], h, scale);
    let (Some(left), Some(right)) = (left, right) else {
        return Err(Error::Divergent(
            "integrand does not decay at the grid ends".into(),
        ));
    };
    let value = sum + left + right;
    if left.abs() + right.abs() > TAIL_FRACTION_LIMIT * value.abs().max(scale) {
        return Err(Error::Divergent(format!(
            "tail contributions {left:.3e} + {right:.3e} exceed 1% of {value:.3e}"
        )));
    }
    Ok(Integral {
        value,
        left_tail: left,
        right_tail: right,
    })
}

/// `ω_{N-1} ∫_0^∞ f(r) r^{N-1-s} dr` for samples `f_i = f(r_i)`.
pub fn weighted_integral(grid: &RadialGrid, f: &[f64], s: f64, n: u32) -> Result<f64> {
    let k = n as f64 - s;
    let g: Vec<f64> = f
        .iter()
        .zip(grid.logs())
        .map(|(fi, x)| if *fi == 0.0 { 0.0 } else { fi * (k * x).exp() })
        .collect();
    Ok(sphere_area(n) * integrate_log(grid, &g)?.value)
}

/// `(ω_{N-1} ∫ |u|^p r^{N-1-s} dr)^{1/p}`.
pub fn weighted_lp_norm(u: &RadialProfile, p: f64, s: f64, n: u32) -> Result<f64> {
    if !(p >= 1.0) || !(0.0..=2.0).contains(&s) {
        return Err(Error::Domain(format!(
            "need p ≥ 1 and 0 ≤ s ≤ 2, got p={p}, s={s}"
        )));
    }
    let f: Vec<f64> = u.values().iter().map(|v| v.abs().powf(p)).collect();
    Ok(weighted_integral(u.grid(), &f, s, n)?.powf(1.0 / p))
}

/// `∫ |u|^p / |x|^s` (the `p`-th power of the weighted norm).
pub fn weighted_lp_integral(u: &RadialProfile, p: f64, s: f64, n: u32) -> Result<f64> {
    let f: Vec<f64> = u.values().iter().map(|v| v.abs().powf(p)).collect();
    weighted_integral(u.grid(), &f, s, n)
}

/// `du/d(ln r)` by fourth-order differences (one-sided at the ends).
pub fn log_derivative(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let f = values;
    let c = 1.0 / (12.0 * h);
    let mut d = vec![0.0; n];
    if n < 5 {
        return d;
    }
    d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
    d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    for i in 2..n - 2 {
        d[i] = c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
    }
    let m = n - 1;
    d[m] = c * (25.0 * f[m] - 48.0 * f[m - 1] + 36.0 * f[m - 2] - 16.0 * f[m - 3] + 3.0 * f[m - 4]);
    d[m - 1] = c * (3.0 * f[m] + 10.0 * f[m - 1] - 18.0 * f[m - 2] + 6.0 * f[m - 3] - f[m - 4]);
    d
}

/// `ω_{N-1} ∫ u'(r)² r^{N-1} dr = ω_{N-1} ∫ (du/dx)² r^{N-2} dx`.
pub fn gradient_energy(u: &RadialProfile, n: u32) -> Result<f64> {
    let grid = u.grid();
    let du = log_derivative(u.values(), grid.log_step());
    let k = n as f64 - 2.0;
    let g: Vec<f64> = du
        .iter()
        .zip(grid.logs())
        .map(|(d, x)| {
            if *d == 0.0 {
                0.0
            } else {
                d * d * (k * x).exp()
            }
        })
        .collect();
    Ok(sphere_area(n) * integrate_log(grid, &g)?.value)
}

/// `‖∇u‖² / |u|²_{2*(s),s}`.
pub fn rayleigh_quotient(u: &RadialProfile, n: u32, s: f64) -> Result<f64> {
    let p = critical_exponent(n, s)?;
    let den = weighted_lp_norm(u, p, s, n)?;
    if den == 0.0 {
        return Err(Error::SingularInput(
            "zero profile has no Rayleigh quotient".into(),
        ));
    }
    Ok(gradient_energy(u, n)? / (den * den))
}
