//! Exact symbolic algebra on the planar phase space.

pub mod constraints;
pub mod mpoly;
pub mod phase;
pub mod ratfun;
pub mod symbolic;
pub mod text;

pub use constraints::{
    build_reduced_constraints, charged_model_identities, dirac_bracket, poisson_bracket,
    reduced_angular_momentum, Classification, ConstraintSystem,
};
pub use phase::PhasePoly;
pub use ratfun::ParamField;
pub use symbolic::SymbolicConfig;
