//! Radial functions on log grids.

pub mod grid;
pub mod instanton;
pub mod pair;
pub mod profile;
pub mod quadrature;
pub mod transforms;

pub use grid::{
    default_grid, doubled_grid, make_grid, sphere_area, RadialGrid, Spacing, DEFAULT_NODES,
    DEFAULT_R_MAX, DEFAULT_R_MIN,
};
pub use instanton::{
    instanton, instanton_normalization, instanton_on, scalar_sharp_constant, sharp_constant_grid,
};
pub use pair::{
    coupling_integral, mass_split, pair_functionals, pde_residual, pde_residual_weighted,
    rescale_to_balance, scalar_residual, NehariData, ResidualReport,
};
pub use profile::{PairProfile, RadialProfile};
pub use quadrature::{gradient_energy, rayleigh_quotient, weighted_lp_integral, weighted_lp_norm};
pub use transforms::{decay_slope, dilate, kelvin};
