use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use super::grid::RadialGrid;
use crate::error::{domain, Error, Result};

/// Samples of a radial function `u(|x|)` on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    grid: Arc<RadialGrid>,
    values: Vec<f64>,
}

impl RadialProfile {
    pub fn new(grid: Arc<RadialGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return domain(format!("{} values for {} nodes", values.len(), grid.len()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return domain(format!("non-finite value at node {i}"));
        }
        Ok(RadialProfile { grid, values })
    }

    pub fn from_fn(grid: Arc<RadialGrid>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.nodes().iter().map(|&r| f(r)).collect();
        Self::new(grid, values)
    }

    pub fn zeros(grid: Arc<RadialGrid>) -> Self {
        let n = grid.len();
        RadialProfile {
            grid,
            values: vec![0.0; n],
        }
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn scaled(&self, c: f64) -> RadialProfile {
        RadialProfile {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(f64, f64) -> f64) -> Result<RadialProfile> {
        let values = self
            .grid
            .nodes()
            .iter()
            .zip(&self.values)
            .map(|(&r, &u)| f(r, u))
            .collect();
        Self::new(self.grid.clone(), values)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Two-column CSV with header `r,u` and 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(48 * self.values.len() + 4);
        s.push_str("r,u\n");
        for (r, u) in self.grid.nodes().iter().zip(&self.values) {
            let _ = writeln!(s, "{r:.16e},{u:.16e}");
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<RadialProfile> {
        let mut lines = text.lines();
        match lines.next() {
            Some("r,u") => {}
            other => return domain(format!("expected header 'r,u', got {other:?}")),
        }
        let mut rs = Vec::new();
        let mut us = Vec::new();
        for (i, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let (a, b) = line
                .split_once(',')
                .ok_or_else(|| Error::Domain(format!("line {}: expected two columns", i + 2)))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Domain(format!("line {}: {e}", i + 2)))
            };
            rs.push(parse(a)?);
            us.push(parse(b)?);
        }
        let grid = RadialGrid::from_nodes(&rs)?;
        RadialProfile::new(Arc::new(grid), us)
    }

    pub fn write_csv(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_csv())
    }

    pub fn read_csv(path: &Path) -> Result<RadialProfile> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Domain(e.to_string()))?;
        Self::from_csv(&text)
    }
}

/// A pair `(u, v)` on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PairProfile {
    pub u: RadialProfile,
    pub v: RadialProfile,
}

impl PairProfile {
    pub fn new(u: RadialProfile, v: RadialProfile) -> Result<Self> {
        if !(Arc::ptr_eq(u.grid(), v.grid()) || u.grid() == v.grid()) {
            return domain("pair components live on different grids");
        }
        Ok(PairProfile { u, v })
    }

    /// `(u, 0)`.
    pub fn first_only(u: RadialProfile) -> Self {
        let v = RadialProfile::zeros(u.grid().clone());
        PairProfile { u, v }
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        self.u.grid()
    }

    pub fn scaled(&self, cu: f64, cv: f64) -> PairProfile {
        PairProfile {
            u: self.u.scaled(cu),
            v: self.v.scaled(cv),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::grid::make_grid;

    #[test]
    fn csv_round_trip_is_exact() {
        let g = Arc::new(make_grid(1e-3, 1e3, 64).unwrap());
        let u = RadialProfile::from_fn(g, |r| (2f64).sqrt() / (1.0 + r)).unwrap();
        let text = u.to_csv();
        assert!(text.starts_with("r,u\n"));
        let back = RadialProfile::from_csv(&text).unwrap();
        assert_eq!(back.values(), u.values());
        assert_eq!(back.grid().nodes(), u.grid().nodes());
    }

    #[test]
    fn rejects_mismatch() {
        let g = Arc::new(make_grid(1e-3, 1e3, 64).unwrap());
        assert!(RadialProfile::new(g.clone(), vec![0.0; 3]).is_err());
        let mut v = vec![0.0; 64];
        v[3] = f64::NAN;
        assert!(RadialProfile::new(g.clone(), v).is_err());
        let h = Arc::new(make_grid(1e-3, 1e2, 64).unwrap());
        assert!(PairProfile::new(RadialProfile::zeros(g), RadialProfile::zeros(h)).is_err());
        assert!(RadialProfile::from_csv("x,y\n1,2\n").is_err());
    }
}
