use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::entropy::equilibrium_radial_density;
use super::state::{scale, ParticleState, Vec3};
use crate::error::{Error, Result};

/// Attempts allowed per draw in the rejection sampler.
pub const REJECTION_CAP: usize = 1_000_000;

/// Generator for replica `replica` of a run seeded with `seed`. Each replica
/// owns an independent ChaCha stream, so results do not depend on how
/// replicas are scheduled.
pub fn replica_rng(seed: u64, replica: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replica);
    rng
}

/// Uniform point on the unit sphere (normalized Gaussian vector).
pub fn uniform_direction<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    loop {
        let g: Vec3 = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let n = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
        if n > 1e-300 {
            return scale(g, 1.0 / n);
        }
    }
}

/// Exponential sample with the given rate by inversion; `+inf` for rate 0.
pub fn exp_sample<R: Rng + ?Sized>(rng: &mut R, rate: f64) -> f64 {
    let u: f64 = rng.random();
    -(1.0 - u).ln() / rate
}

/// Radial density of the rescaled speed of particle 0 at time 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum InitialDensity {
    /// `2 (1 - r)`.
    #[default]
    Linear,
    /// The equilibrium radial density.
    Equilibrium,
}

impl InitialDensity {
    pub fn pdf(self, r: f64) -> f64 {
        match self {
            Self::Linear => 2.0 * (1.0 - r),
            Self::Equilibrium => equilibrium_radial_density(r).unwrap_or(0.0),
        }
    }

    /// Supremum of the density on `[0, 1]`.
    pub fn sup(self) -> f64 {
        match self {
            Self::Linear => 2.0,
            // r^2 sqrt(1 - r^2) peaks at r^2 = 2/3
            Self::Equilibrium => 16.0 / std::f64::consts::PI * 2.0 / (3.0 * 3f64.sqrt()),
        }
    }

    /// Mean of the density.
    pub fn mean(self) -> f64 {
        match self {
            Self::Linear => 1.0 / 3.0,
            // (16/pi) * int r^3 sqrt(1-r^2) dr = (16/pi) (2/15)
            Self::Equilibrium => 32.0 / (15.0 * std::f64::consts::PI),
        }
    }

    /// Draws `r` by rejection from the uniform proposal.
    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> Result<f64> {
        let sup = self.sup();
        for _ in 0..REJECTION_CAP {
            let r: f64 = rng.random();
            let u: f64 = rng.random();
            if u * sup <= self.pdf(r) {
                return Ok(r);
            }
        }
        Err(Error::RejectionCapExceeded(REJECTION_CAP))
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Linear => "linear",
            Self::Equilibrium => "equilibrium",
        }
    }
}

impl std::str::FromStr for InitialDensity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Self::Linear),
            "equilibrium" => Ok(Self::Equilibrium),
            other => Err(Error::Config(format!("unknown initial density '{other}'"))),
        }
    }
}

/// Initial state: `r` from `density`, uniform direction, then the `T_1` map.
pub fn sample_initial<R: Rng + ?Sized>(
    density: InitialDensity,
    rng: &mut R,
) -> Result<ParticleState> {
    let r = density.sample(rng)?;
    let u = scale(uniform_direction(rng), r);
    let y = uniform_direction(rng);
    Ok(ParticleState::t1(u, y))
}
