//! Classical simulation of quantum eigenvalue estimation through a Chebyshev
//! history state: the generating-function linear system, Fourier readout of
//! the degree register and the norm bounds that set the query count.

mod bounds;
mod chebyshev;
mod experiment;
mod history;
mod system;

pub use bounds::{max_u_norm, verify_bounds, BoundCheck, BoundTable, IDENTITY_GRID_POINTS, MAX_DENSE_BOUND_DIM};
pub use chebyshev::{chebyshev_eval, chebyshev_pair, chebyshev_u, pell_identity_residual};
pub use experiment::{run_experiment, simulate_qeve, ExperimentResult, Simulation, SimulationOptions};
pub use history::{
    estimate_energy, history_state_direct, history_state_via_inverse, measure_distribution, AngleDistribution,
    EnergyEstimate, HistoryState,
};
pub use system::{build_system, BlockLowerTriangular, ChebyshevSystem, SCALED_NORM_SLACK};
