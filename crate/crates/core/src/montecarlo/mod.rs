//! Monte Carlo simulation of the three-particle conjugate process.
//!
//! At each jump one particle `k` is held fixed, chosen by independent
//! exponential clocks with speed-dependent rates, and the other two are
//! redrawn uniformly among velocities compatible with zero momentum and
//! total energy 3. The rescaled speeds `|v_k| / sqrt(2)` are histogrammed at
//! a list of observation times and compared with their equilibrium law.

mod entropy;
mod histogram;
mod process;
mod sampling;
mod simulate;
mod state;

pub use entropy::{
    equilibrium_radial_density, fit_decay_rate, relative_entropy, relative_entropy_midpoint,
    DecayFit, EntropySeries, EQUILIBRIUM_CONST, NOISE_FLOOR,
};
pub use histogram::RadialHistogram;
pub use process::{jump_rates, step};
pub use sampling::{
    exp_sample, replica_rng, sample_initial, uniform_direction, InitialDensity, REJECTION_CAP,
};
pub use simulate::{default_frames, simulate, Frame, SimConfig, SimOutput};
pub use state::{beta, ParticleState, Vec3, ENERGY, REPROJECT_TOL};
