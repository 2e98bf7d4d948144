//! Scale-invariant resampling: dilation, Kelvin inversion, decay fits.

use super::profile::RadialProfile;
use crate::error::{domain, Error, Result};

pub const EXTRAPOLATION_LIMIT: f64 = 0.10;

/// Value of `u` at `x = ln r`: cubic Lagrange interpolation inside the grid,
/// power-law continuation from the last two nodes outside it. The flag is
/// true when extrapolated.
pub fn sample_log(u: &RadialProfile, x: f64) -> (f64, bool) {
    let g = u.grid();
    let f = u.values();
    let n = f.len();
    let logs = g.logs();
    let h = g.log_step();
    let pos = (x - logs[0]) / h;
    let nearest = pos.round();
    if (pos - nearest).abs() < 1e-9 && nearest >= 0.0 && nearest <= (n - 1) as f64 {
        return (f[nearest as usize], false);
    }
    if pos < 0.0 {
        return (continue_power(f[0], f[1], -pos), true);
    }
    if pos > (n - 1) as f64 {
        return (
            continue_power(f[n - 1], f[n - 2], pos - (n - 1) as f64),
            true,
        );
    }
    let i = (pos.floor() as usize).clamp(1, n - 3);
    let t = pos - i as f64;
    let (a, b, c, d) = (f[i - 1], f[i], f[i + 1], f[i + 2]);
    let v = -a * t * (t - 1.0) * (t - 2.0) / 6.0 + b * (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0
        - c * (t + 1.0) * t * (t - 2.0) / 2.0
        + d * (t + 1.0) * t * (t - 1.0) / 6.0;
    (v, false)
}

/// Continues `end` outward by `steps` grid steps along the geometric trend
/// set by `inner`; zero or sign-changing ends are held constant.
fn continue_power(end: f64, inner: f64, steps: f64) -> f64 {
    if end == 0.0 || inner == 0.0 || end.signum() != inner.signum() {
        return end;
    }
    end * (end / inner).powf(steps)
}

fn resample(u: &RadialProfile, f: impl Fn(f64) -> (f64, f64)) -> Result<RadialProfile> {
    let mut outside = 0usize;
    let mut values = Vec::with_capacity(u.values().len());
    for &x in u.grid().logs() {
        let (src, factor) = f(x);
        let (v, ext) = sample_log(u, src);
        outside += ext as usize;
        values.push(factor * v);
    }
    let n = values.len();
    if outside as f64 > EXTRAPOLATION_LIMIT * n as f64 {
        return Err(Error::Extrapolation(format!(
            "{outside} of {n} nodes lie outside the source grid"
        )));
    }
    RadialProfile::new(u.grid().clone(), values)
}

/// `u_σ(r) = σ^{(N-2)/2} u(σ r)`, which preserves `‖∇u‖` and the critical
/// weighted norms.
pub fn dilate(u: &RadialProfile, sigma: f64, n: u32) -> Result<RadialProfile> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return domain(format!("dilation factor {sigma} must be positive"));
    }
    if sigma == 1.0 {
        return Ok(u.clone());
    }
    let ls = sigma.ln();
    let factor = sigma.powf((n as f64 - 2.0) / 2.0);
    resample(u, |x| (x + ls, factor))
}

/// `u*(r) = r^{2-N} u(1/r)`.
pub fn kelvin(u: &RadialProfile, n: u32) -> Result<RadialProfile> {
    let k = 2.0 - n as f64;
    resample(u, |x| (-x, (k * x).exp()))
}

/// Least-squares slope of `ln u` against `ln r` over nodes in `[r_a, r_b]`.
pub fn decay_slope(u: &RadialProfile, window: (f64, f64)) -> Result<f64> {
    let (ra, rb) = window;
    if !(ra > 0.0 && rb > ra) {
        return domain("window must satisfy 0 < r_a < r_b");
    }
    let g = u.grid();
    if ra < g.r_min || rb > g.r_max {
        return domain("window extends past the grid");
    }
    let mut pts = Vec::new();
    for ((&r, &x), &v) in g.nodes().iter().zip(g.logs()).zip(u.values()) {
        if r >= ra && r <= rb {
            if !(v > 0.0) {
                return domain(format!("nonpositive value {v} at r = {r}"));
            }
            pts.push((x, v.ln()));
        }
    }
    if pts.len() < 2 {
        return domain("window holds fewer than two nodes");
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::grid::make_grid;
    use crate::radial::instanton::instanton;
    use std::sync::Arc;

    #[test]
    fn identity_dilation() {
        let u = instanton(3, 1.0, 1.0).unwrap();
        assert_eq!(dilate(&u, 1.0, 3).unwrap(), u);
    }

    #[test]
    fn pure_power_slope() {
        let g = Arc::new(make_grid(1e-2, 1e4, 200).unwrap());
        let u = RadialProfile::from_fn(g, |r| r.powf(-1.7)).unwrap();
        assert!((decay_slope(&u, (1.0, 1e3)).unwrap() + 1.7).abs() < 1e-12);
        assert!(decay_slope(&u, (1e-3, 1.0)).is_err());
    }

    #[test]
    fn interpolation_is_fourth_order_accurate() {
        let g = Arc::new(make_grid(1e-3, 1e3, 400).unwrap());
        let u = RadialProfile::from_fn(g, |r| 1.0 / (1.0 + r)).unwrap();
        for x in [-3.3f64, 0.123, 2.71] {
            let (v, ext) = sample_log(&u, x);
            assert!(!ext);
            assert!((v - 1.0 / (1.0 + x.exp())).abs() < 1e-7);
        }
    }

    #[test]
    fn excessive_extrapolation() {
        let u = instanton(3, 1.0, 1.0).unwrap();
        assert!(matches!(dilate(&u, 1e3, 3), Err(Error::Extrapolation(_))));
    }
}
