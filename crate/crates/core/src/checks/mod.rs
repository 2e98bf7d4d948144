//! Identity and inequality checks on profiles and parameters.

mod inequalities;
mod nehari;
mod perturbation;
mod pohozaev;
mod result;
pub mod sampling;

pub use inequalities::{
    ckn_check, ckn_constant, ckn_system_check, eigen_inequality_check, interpolation_check,
    system_quotient, u_lambda_on, young_check, young_oracle, CknForm, SystemMode,
};
pub use nehari::{
    a_eps, a_eps_monotonicity_check, eps_functionals, nehari_eps_monotonicity, nehari_project,
    EpsWeightSpec, NehariProjection,
};
pub use perturbation::{
    perturbation_check, perturbation_curve, predicted_expansion, special_pair_check,
    special_pair_condition, PerturbationCurve,
};
pub use pohozaev::{pohozaev_check, WeightMode};
pub use result::{CheckResult, Comparison, ErrorMode, Tolerances};
