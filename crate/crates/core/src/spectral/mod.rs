//! Spectra of the trapped dipole, sector by sector.

pub mod closed_form;
pub mod laguerre;
pub mod oracle2d;
pub mod sector;
pub mod table;
pub mod tridiag;

pub use closed_form::{closed_form_energy, S, SIGMA};
pub use sector::{
    kinetic_j_expectation, radial_hamiltonian, solve_sector, Discretization, RadialGrid,
    SectorProblem, SectorSolution,
};
pub use table::{SolverOptions, SpectrumRow, SpectrumTable};
