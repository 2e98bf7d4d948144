use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::error::{domain, Result};

pub const DEFAULT_R_MIN: f64 = 1e-6;
pub const DEFAULT_R_MAX: f64 = 1e6;
pub const DEFAULT_NODES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    LogUniform,
}

/// Log-uniform radial grid; `x_i = ln r_i` is equally spaced.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub spacing: Spacing,
    #[serde(skip)]
    nodes: Vec<f64>,
    #[serde(skip)]
    logs: Vec<f64>,
    #[serde(skip)]
    h: f64,
}

impl RadialGrid {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `ln r_i`.
    pub fn logs(&self) -> &[f64] {
        &self.logs
    }

    /// Spacing in `ln r`.
    pub fn log_step(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Same bounds, `2n - 1` nodes (spacing halved, old nodes kept).
    pub fn refined(&self) -> RadialGrid {
        make_grid(self.r_min, self.r_max, 2 * self.len() - 1).expect("refining a valid grid")
    }

    /// Rebuilds a grid from explicit nodes, which must be log-uniform.
    pub fn from_nodes(nodes: &[f64]) -> Result<RadialGrid> {
        if nodes.len() < 16 {
            return domain("a grid needs at least 16 nodes");
        }
        let g = make_grid(nodes[0], nodes[nodes.len() - 1], nodes.len())?;
        for (a, b) in g.nodes.iter().zip(nodes) {
            if (a - b).abs() > 1e-12 * a {
                return domain(format!("nodes are not log-uniform near r = {b}"));
            }
        }
        Ok(g)
    }
}

impl Default for RadialGrid {
    fn default() -> Self {
        default_grid()
    }
}

/// Log-uniform grid with `n_nodes` nodes on `[r_min, r_max]`.
pub fn make_grid(r_min: f64, r_max: f64, n_nodes: usize) -> Result<RadialGrid> {
    if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
        return domain(format!("need 0 < r_min < r_max, got [{r_min}, {r_max}]"));
    }
    if n_nodes < 16 {
        return domain(format!("need at least 16 nodes, got {n_nodes}"));
    }
    let (a, b) = (r_min.ln(), r_max.ln());
    let h = (b - a) / (n_nodes - 1) as f64;
    let logs: Vec<f64> = (0..n_nodes)
        .map(|i| {
            if i == n_nodes - 1 {
                b
            } else {
                a + h * i as f64
            }
        })
        .collect();
    let mut nodes: Vec<f64> = logs.iter().map(|x| x.exp()).collect();
    nodes[0] = r_min;
    nodes[n_nodes - 1] = r_max;
    Ok(RadialGrid {
        r_min,
        r_max,
        spacing: Spacing::LogUniform,
        nodes,
        logs,
        h,
    })
}

/// `[1e-6, 1e6]` with 4096 nodes.
pub fn default_grid() -> RadialGrid {
    make_grid(DEFAULT_R_MIN, DEFAULT_R_MAX, DEFAULT_NODES).expect("default grid")
}

/// Default bounds with 8192 nodes.
pub fn doubled_grid() -> RadialGrid {
    make_grid(DEFAULT_R_MIN, DEFAULT_R_MAX, 2 * DEFAULT_NODES).expect("doubled grid")
}

/// Area of the unit sphere in `R^N`: `2π^{N/2}/Γ(N/2)`.
pub fn sphere_area(n: u32) -> f64 {
    let h = n as f64 / 2.0;
    2.0 * std::f64::consts::PI.powf(h) / gamma(h)
}
