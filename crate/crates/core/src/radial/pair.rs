//! Functionals of pairs: Nehari data, PDE residuals, mass split.

use serde::Serialize;

use super::grid::{sphere_area, RadialGrid};
use super::profile::{PairProfile, RadialProfile};
use super::quadrature::{gradient_energy, integrate_log, tail, weighted_integral};
use super::transforms::dilate;
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::roots::bisect;

/// `a = ‖(u,v)‖²`, `b = λ∫|u|^{p1}/|x|^{s1} + μ∫|v|^{p1}/|x|^{s1}`,
/// `c = ∫|u|^α|v|^β/|x|^{s2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NehariData {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl NehariData {
    /// `Φ = a/2 - b/p1 - κc`.
    pub fn phi(&self, p: &SystemParams) -> Result<f64> {
        let e = p.exponents()?;
        Ok(0.5 * self.a - self.b / e.p1 - p.kappa * self.c)
    }

    /// `J = a - b - κ(α+β)c`.
    pub fn nehari(&self, p: &SystemParams) -> f64 {
        self.a - self.b - p.kappa * (p.alpha + p.beta) * self.c
    }

    /// Data of `(c u, c v)`.
    pub fn scaled(&self, factor: f64, p: &SystemParams) -> Result<NehariData> {
        let e = p.exponents()?;
        Ok(NehariData {
            a: self.a * factor * factor,
            b: self.b * factor.powf(e.p1),
            c: self.c * factor.powf(e.p2),
        })
    }
}

/// `|x|^e` with the sign of `x`.
pub(crate) fn spow(x: f64, e: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.signum() * x.abs().powf(e)
    }
}

/// `∫ |u|^α |v|^β w(r) / |x|^{s}` with an extra pointwise weight `w`.
pub fn coupling_integral(
    pp: &PairProfile,
    p: &SystemParams,
    weight: impl Fn(f64) -> f64,
) -> Result<f64> {
    let f: Vec<f64> =
        pp.u.values()
            .iter()
            .zip(pp.v.values())
            .zip(pp.grid().nodes())
            .map(|((u, v), &r)| {
                if *u == 0.0 || *v == 0.0 {
                    0.0
                } else {
                    u.abs().powf(p.alpha) * v.abs().powf(p.beta) * weight(r)
                }
            })
            .collect();
    weighted_integral(pp.grid(), &f, 0.0, p.n)
}

pub fn pair_functionals(pp: &PairProfile, p: &SystemParams) -> Result<NehariData> {
    let e = p.exponents()?;
    let n = p.n;
    let a = gradient_energy(&pp.u, n)? + gradient_energy(&pp.v, n)?;
    let pw =
        |u: &RadialProfile| -> Vec<f64> { u.values().iter().map(|x| x.abs().powf(e.p1)).collect() };
    let bu = weighted_integral(pp.grid(), &pw(&pp.u), p.s1, n)?;
    let bv = weighted_integral(pp.grid(), &pw(&pp.v), p.s1, n)?;
    let s2 = p.s2;
    let c = coupling_integral(pp, p, |r| r.powf(-s2))?;
    Ok(NehariData {
        a,
        b: p.lambda * bu + p.mu * bv,
        c,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    /// `r² (Δu + f_1)` at each node; zero on the two-node margins.
    #[serde(skip)]
    pub first: Vec<f64>,
    #[serde(skip)]
    pub second: Vec<f64>,
    pub sup: f64,
    pub l2: f64,
    /// `sup` divided by the largest `|r² Δ|` of either component.
    pub relative: f64,
}

/// Residuals of the system in log-radial form `r²(Δu + nonlinearity)`,
/// with second-order centered differences.
pub fn pde_residual(pp: &PairProfile, p: &SystemParams) -> Result<ResidualReport> {
    let s2 = p.s2;
    pde_residual_weighted(pp, p, |r| r.powf(-s2))
}

fn log_laplacian(f: &[f64], i: usize, h: f64, k: f64) -> f64 {
    let fx = (f[i + 1] - f[i - 1]) / (2.0 * h);
    let fxx = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
    fxx + k * fx
}

fn summarize(first: Vec<f64>, second: Vec<f64>, scale: f64, h: f64) -> ResidualReport {
    let sup = first
        .iter()
        .chain(&second)
        .fold(0.0f64, |m, r| m.max(r.abs()));
    let l2 = (first.iter().chain(&second).map(|r| r * r).sum::<f64>() * h).sqrt();
    let relative = if scale > 0.0 { sup / scale } else { 0.0 };
    ResidualReport {
        first,
        second,
        sup,
        l2,
        relative,
    }
}

/// As [`pde_residual`] with the coupling weight `|x|^{-s2}` replaced by
/// `weight(r)`.
pub fn pde_residual_weighted(
    pp: &PairProfile,
    p: &SystemParams,
    weight: impl Fn(f64) -> f64,
) -> Result<ResidualReport> {
    let e = p.exponents()?;
    let grid = pp.grid();
    let n = grid.len();
    let h = grid.log_step();
    let k = p.n as f64 - 2.0;
    let (u, v) = (pp.u.values(), pp.v.values());
    let mut first = vec![0.0; n];
    let mut second = vec![0.0; n];
    let mut scale: f64 = 0.0;
    for i in 2..n.saturating_sub(2) {
        let x = grid.logs()[i];
        let r = grid.nodes()[i];
        let w1 = ((2.0 - p.s1) * x).exp();
        let w2 = (2.0 * x).exp() * weight(r);
        let (ui, vi) = (u[i], v[i]);
        let lu = log_laplacian(u, i, h, k);
        let lv = log_laplacian(v, i, h, k);
        scale = scale.max(lu.abs()).max(lv.abs());
        let cu = if vi == 0.0 {
            0.0
        } else {
            p.kappa * p.alpha * spow(ui, p.alpha - 1.0) * vi.abs().powf(p.beta)
        };
        let cv = if ui == 0.0 {
            0.0
        } else {
            p.kappa * p.beta * ui.abs().powf(p.alpha) * spow(vi, p.beta - 1.0)
        };
        first[i] = lu + w1 * p.lambda * spow(ui, e.p1 - 1.0) + w2 * cu;
        second[i] = lv + w1 * p.mu * spow(vi, e.p1 - 1.0) + w2 * cv;
    }
    Ok(summarize(first, second, scale, h))
}

/// Residual of the scalar equation `-Δu = Σ c_j |u|^{q_j-2}u / |x|^{s_j}`
/// for `terms = [(c_j, q_j, s_j)]`, in the same form as [`pde_residual`]
/// (the second component is zero).
pub fn scalar_residual(u: &RadialProfile, n: u32, terms: &[(f64, f64, f64)]) -> ResidualReport {
    let grid = u.grid();
    let len = grid.len();
    let h = grid.log_step();
    let k = n as f64 - 2.0;
    let f = u.values();
    let mut first = vec![0.0; len];
    let mut scale: f64 = 0.0;
    for i in 2..len.saturating_sub(2) {
        let x = grid.logs()[i];
        let lu = log_laplacian(f, i, h, k);
        scale = scale.max(lu.abs());
        let rhs: f64 = terms
            .iter()
            .map(|&(c, q, s)| c * ((2.0 - s) * x).exp() * spow(f[i], q - 1.0))
            .sum();
        first[i] = lu + rhs;
    }
    summarize(first, vec![0.0; len], scale, h)
}

/// Density of the constraint integral in `x = ln r` (including `r^N` and
/// the sphere area).
fn constraint_density(pp: &PairProfile, p: &SystemParams) -> Result<Vec<f64>> {
    let e = p.exponents()?;
    let nf = p.n as f64;
    let om = sphere_area(p.n);
    Ok(pp
        .u
        .values()
        .iter()
        .zip(pp.v.values())
        .zip(pp.grid().logs())
        .map(|((&u, &v), &x)| {
            let own = p.lambda * u.abs().powf(e.p1) + p.mu * v.abs().powf(e.p1);
            let cross = if u == 0.0 || v == 0.0 {
                0.0
            } else {
                e.p2 * p.kappa * u.abs().powf(p.alpha) * v.abs().powf(p.beta)
            };
            om * (own * ((nf - p.s1) * x).exp() + cross * ((nf - p.s2) * x).exp())
        })
        .collect())
}

/// Cumulative integral of `g` from `-∞` to `x_cut`, integrating the cubic
/// through the four nodes around each cell (exact for cubics).
fn cumulative(grid: &RadialGrid, g: &[f64], x_cut: f64) -> Result<(f64, f64)> {
    let n = g.len();
    let h = grid.log_step();
    let logs = grid.logs();
    let total_trap = integrate_log(grid, g)?;
    let scale = g.iter().map(|v| v.abs()).sum::<f64>() * h;
    let left = tail(g[0], g[1], h, scale).unwrap_or(0.0);
    let right = tail(g[n - 1], g[n - 2], h, scale).unwrap_or(0.0);
    let cell = |i: usize, a: f64, b: f64| -> f64 {
        // Cubic through nodes j0..j0+3 integrated over [x_i + a h, x_i + b h].
        let j0 = i.saturating_sub(1).min(n - 4);
        let off = i as f64 - j0 as f64;
        const GL: [(f64, f64); 3] = [
            (-0.774_596_669_241_483_4, 5.0 / 9.0),
            (0.0, 8.0 / 9.0),
            (0.774_596_669_241_483_4, 5.0 / 9.0),
        ];
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        let mut s = 0.0;
        for (z, w) in GL {
            let t = off + mid + half * z;
            let f = &g[j0..j0 + 4];
            let val = -f[0] * (t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0
                + f[1] * t * (t - 2.0) * (t - 3.0) / 2.0
                - f[2] * t * (t - 1.0) * (t - 3.0) / 2.0
                + f[3] * t * (t - 1.0) * (t - 2.0) / 6.0;
            s += w * val;
        }
        s * half * h
    };
    let mut total = left;
    let mut inside = None;
    let pos = (x_cut - logs[0]) / h;
    if pos <= 0.0 {
        let rate = if g[0] != 0.0 && left != 0.0 {
            g[0] / left
        } else {
            0.0
        };
        inside = Some(if rate > 0.0 {
            left * (rate * pos * h).exp()
        } else {
            0.0
        });
    }
    for i in 0..n - 1 {
        if inside.is_none() && pos < (i + 1) as f64 {
            inside = Some(total + cell(i, 0.0, pos - i as f64));
        }
        total += cell(i, 0.0, 1.0);
    }
    let beyond = total;
    total += right;
    let inside = match inside {
        Some(v) => v,
        None => {
            let extra = pos - (n - 1) as f64;
            let rate = if g[n - 1] != 0.0 && right != 0.0 {
                g[n - 1] / right
            } else {
                0.0
            };
            if rate > 0.0 {
                beyond + right * (1.0 - (-rate * extra * h).exp())
            } else {
                beyond
            }
        }
    };
    debug_assert!((total - total_trap.value).abs() <= 1e-3 * total.abs().max(1e-300));
    Ok((inside, total))
}

/// Fractions of the constraint integral inside and outside `radius`.
pub fn mass_split(pp: &PairProfile, p: &SystemParams, radius: f64) -> Result<(f64, f64)> {
    if !(radius > 0.0) {
        return Err(Error::Domain("radius must be positive".into()));
    }
    let g = constraint_density(pp, p)?;
    let (inside, total) = cumulative(pp.grid(), &g, radius.ln())?;
    if total == 0.0 || !total.is_finite() {
        return Err(Error::SingularInput("constraint integral vanishes".into()));
    }
    let fin = inside / total;
    Ok((fin, 1.0 - fin))
}

/// Dilates the pair so that half of the constraint integral lies in the
/// unit ball; returns the balanced pair and the factor `σ`.
pub fn rescale_to_balance(pp: &PairProfile, p: &SystemParams) -> Result<(PairProfile, f64)> {
    let g = constraint_density(pp, p)?;
    let grid = pp.grid();
    let logs = grid.logs();
    let frac = |x: f64| -> f64 {
        match cumulative(grid, &g, x) {
            Ok((i, t)) if t != 0.0 => i / t - 0.5,
            _ => f64::NAN,
        }
    };
    let at_one = frac(0.0);
    if at_one.abs() < 1e-14 {
        return Ok((pp.clone(), 1.0));
    }
    let (lo, hi) = (logs[0], logs[logs.len() - 1]);
    let x_star = bisect(frac, lo, hi, 1e-15).ok_or_else(|| {
        Error::NotBalanceable("mass fraction does not cross 1/2 on the grid".into())
    })?;
    // Inside fraction of u_σ at radius 1 equals that of u at radius σ.
    let sigma = x_star.exp();
    let n = p.n;
    let out = PairProfile::new(dilate(&pp.u, sigma, n)?, dilate(&pp.v, sigma, n)?)?;
    Ok((out, sigma))
}
