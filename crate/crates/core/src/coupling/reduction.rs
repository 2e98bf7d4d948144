//! The one-dimensional reduction `S = μ_s · inf_t g(t)` for equal weights.

use std::sync::OnceLock;

use serde::Serialize;

use super::young::kappa_floor;
use super::ExtT;
use crate::error::{Error, Result};
use crate::params::{approx_eq, SystemParams};
use crate::roots::{bisect, log_space};

pub const SCAN_MIN: f64 = 1e-8;
pub const SCAN_MAX: f64 = 1e8;
pub const SCAN_POINTS: usize = 20_000;
pub const ROOT_REL_TOL: f64 = 1e-14;
pub const FLAT_TOL: f64 = 1e-12;
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationaryPoint {
    pub t: ExtT,
    pub g: f64,
    pub global_min: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GMinimum {
    pub t0: ExtT,
    pub g_min: f64,
    pub g_zero: f64,
    pub g_infinity: f64,
    /// Interior roots of `h`, plus any endpoint that attains the minimum.
    pub stationary_points: Vec<StationaryPoint>,
    pub flat: bool,
    pub scan_complete: bool,
    pub note: Option<String>,
}

impl GMinimum {
    pub fn global_minimizers(&self) -> impl Iterator<Item = ExtT> + '_ {
        self.stationary_points
            .iter()
            .filter(|s| s.global_min)
            .map(|s| s.t)
    }
}

fn require_equal_weights(p: &SystemParams) -> Result<f64> {
    if !p.same_weights() {
        return Err(Error::UnsupportedRegime(
            "the ratio reduction needs s1 = s2".into(),
        ));
    }
    Ok(p.exponents()?.p1)
}

/// `(1+τ²)/(l + m τ^q + q k τ^b)^{2/q}`, the common kernel of `g(t)` for
/// `t ≤ 1` and of `g(1/τ)` for `t > 1` (roles of the components swapped).
fn g_kernel(tau: f64, l: f64, m: f64, k: f64, b: f64, q: f64) -> Result<f64> {
    let base = l + m * tau.powf(q) + q * k * tau.powf(b);
    if !(base > 0.0) {
        return Err(Error::SingularInput(format!(
            "reduction denominator {base} is not positive at ratio {tau}"
        )));
    }
    Ok((1.0 + tau * tau) / base.powf(2.0 / q))
}

fn g_with(t: f64, p: &SystemParams, q: f64) -> Result<f64> {
    if t <= 1.0 {
        g_kernel(t, p.lambda, p.mu, p.kappa, p.beta, q)
    } else {
        g_kernel(1.0 / t, p.mu, p.lambda, p.kappa, p.alpha, q)
    }
}

/// `g(t) = (1+t²)/[λ + μt^p + pκt^β]^{2/p}` with `p = 2*(s)`.
pub fn g_eval(t: f64, p: &SystemParams) -> Result<f64> {
    let q = require_equal_weights(p)?;
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("ratio t = {t} must be nonnegative")));
    }
    if t.is_infinite() {
        return Ok(p.mu.powf(-2.0 / q));
    }
    g_with(t, p, q)
}

/// `g` at an extended ratio.
pub fn g_eval_ext(t: ExtT, p: &SystemParams) -> Result<f64> {
    match t {
        ExtT::Finite(x) => g_eval(x, p),
        ExtT::Infinity => g_eval(f64::INFINITY, p),
    }
}

fn h_kernel(tau: f64, l: f64, m: f64, k: f64, a: f64, b: f64, q: f64) -> f64 {
    m * tau.powf(q - 2.0) - k * a * tau.powf(b) + k * b * tau.powf(b - 2.0) - l
}

/// `h(t) = μt^{p-2} - καt^β + κβt^{β-2} - λ`; `g'(t)` has the sign of `-h(t)`.
pub fn h_eval(t: f64, p: &SystemParams) -> Result<f64> {
    let q = p.exponents()?.p2;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("h needs t > 0, got {t}")));
    }
    Ok(h_kernel(t, p.lambda, p.mu, p.kappa, p.alpha, p.beta, q))
}

/// `h_kernel` with `τ = e^{lτ}` given by its logarithm.
fn h_kernel_ln(lt: f64, l: f64, m: f64, k: f64, a: f64, b: f64, q: f64) -> f64 {
    let eb = (b * lt).exp();
    m * ((q - 2.0) * lt).exp() - k * a * eb + k * b * eb * (-2.0 * lt).exp() - l
}

/// A positive multiple of `h`, evaluated in the swapped frame for `t > 1`
/// so that large ratios do not overflow: `t^{2-p} h(t) = -h̃(1/t)`.
fn h_scaled_ln(lt: f64, p: &SystemParams, q: f64) -> f64 {
    if lt <= 0.0 {
        h_kernel_ln(lt, p.lambda, p.mu, p.kappa, p.alpha, p.beta, q)
    } else {
        -h_kernel_ln(-lt, p.mu, p.lambda, p.kappa, p.beta, p.alpha, q)
    }
}

fn h_scaled(t: f64, p: &SystemParams, q: f64) -> f64 {
    h_scaled_ln(t.ln(), p, q)
}

struct ScanGrid {
    t: Vec<f64>,
    ln: Vec<f64>,
}

fn scan_grid() -> &'static ScanGrid {
    static GRID: OnceLock<ScanGrid> = OnceLock::new();
    GRID.get_or_init(|| {
        let t = log_space(SCAN_MIN, SCAN_MAX, SCAN_POINTS);
        let ln = t.iter().map(|x| x.ln()).collect();
        ScanGrid { t, ln }
    })
}

/// Global minimum of `g` over `[0, ∞]`.
pub fn minimize_g(p: &SystemParams) -> Result<GMinimum> {
    let q = require_equal_weights(p)?;
    let floor = kappa_floor(p.alpha, p.beta, p.lambda, p.mu, p.alpha + p.beta)?;
    if p.kappa <= floor || approx_eq(p.kappa, floor) {
        return Err(Error::SingularInput(format!(
            "kappa = {} is at or below the floor {floor}",
            p.kappa
        )));
    }
    let g_zero = p.lambda.powf(-2.0 / q);
    let g_infinity = p.mu.powf(-2.0 / q);
    let scan = scan_grid();
    let grid = &scan.t;

    if is_flat(grid, p, q)? {
        let g1 = g_with(1.0, p, q)?;
        return Ok(GMinimum {
            t0: ExtT::Finite(1.0),
            g_min: g1,
            g_zero,
            g_infinity,
            stationary_points: vec![StationaryPoint {
                t: ExtT::Finite(1.0),
                g: g1,
                global_min: true,
            }],
            flat: true,
            scan_complete: true,
            note: Some("g is constant; t0 = 1 represents the continuum".into()),
        });
    }

    let hv: Vec<f64> = scan.ln.iter().map(|&lt| h_scaled_ln(lt, p, q)).collect();
    let mut roots = Vec::new();
    let mut scan_complete = true;
    let mut note = None;
    for i in 0..grid.len() {
        if !hv[i].is_finite() {
            scan_complete = false;
            note = Some(format!("h is not finite at t = {}", grid[i]));
            continue;
        }
        if hv[i] == 0.0 {
            roots.push(grid[i]);
            continue;
        }
        if i + 1 < grid.len()
            && hv[i + 1].is_finite()
            && hv[i + 1] != 0.0
            && hv[i].signum() != hv[i + 1].signum()
        {
            match bisect(|t| h_scaled(t, p, q), grid[i], grid[i + 1], ROOT_REL_TOL) {
                Some(r) => roots.push(r),
                None => {
                    scan_complete = false;
                    note = Some(format!(
                        "bisection failed on [{}, {}]",
                        grid[i],
                        grid[i + 1]
                    ));
                }
            }
        }
    }

    let mut points: Vec<StationaryPoint> = Vec::with_capacity(roots.len() + 2);
    for r in roots {
        points.push(StationaryPoint {
            t: ExtT::Finite(r),
            g: g_with(r, p, q)?,
            global_min: false,
        });
    }
    let g_min = points
        .iter()
        .map(|s| s.g)
        .fold(g_zero.min(g_infinity), f64::min);
    let is_min = |g: f64| (g - g_min).abs() <= TIE_TOL * g_min.abs();
    for s in points.iter_mut() {
        s.global_min = is_min(s.g);
    }
    if is_min(g_zero) {
        points.insert(
            0,
            StationaryPoint {
                t: ExtT::Finite(0.0),
                g: g_zero,
                global_min: true,
            },
        );
    }
    if is_min(g_infinity) {
        points.push(StationaryPoint {
            t: ExtT::Infinity,
            g: g_infinity,
            global_min: true,
        });
    }
    let t0 = points
        .iter()
        .find(|s| s.global_min)
        .map(|s| s.t)
        .unwrap_or(ExtT::Finite(0.0));
    Ok(GMinimum {
        t0,
        g_min,
        g_zero,
        g_infinity,
        stationary_points: points,
        flat: false,
        scan_complete,
        note,
    })
}

fn is_flat(grid: &[f64], p: &SystemParams, q: f64) -> Result<bool> {
    let g1 = g_with(1.0, p, q)?;
    let (mut lo, mut hi) = (g1, g1);
    for &t in grid {
        let g = g_with(t, p, q)?;
        lo = lo.min(g);
        hi = hi.max(g);
        if hi - lo >= FLAT_TOL * g1.abs() {
            return Ok(false);
        }
    }
    Ok(true)
}
