use rand::Rng;

use super::sampling::{exp_sample, uniform_direction};
use super::state::{scale, ParticleState};
use crate::error::{Error, Result};

/// Rates below `-RATE_TOL` are reported as constraint violations; smaller
/// negative values are rounding and clamp to zero.
const RATE_TOL: f64 = 1e-9;

pub fn check_alpha(alpha: u32) -> Result<()> {
    match alpha {
        0 | 2 => Ok(()),
        other => Err(Error::UnsupportedAlpha(other)),
    }
}

/// Jump rates `(2 - |v_k|^2)/4` for `alpha = 2`, `1/3` for `alpha = 0`.
pub fn jump_rates(state: &ParticleState, alpha: u32) -> Result<[f64; 3]> {
    check_alpha(alpha)?;
    if alpha == 0 {
        return Ok([1.0 / 3.0; 3]);
    }
    let mut rates = [0.0; 3];
    for (k, rate) in rates.iter_mut().enumerate() {
        let r = (2.0 - state.speed_sq(k)) / 4.0;
        if r < -RATE_TOL {
            return Err(Error::NegativeRate { index: k, rate: r });
        }
        *rate = r.max(0.0);
    }
    Ok(rates)
}

/// One jump: the first of three exponential clocks fires, its particle is
/// held and the other two are redrawn uniformly on the constraint set.
///
/// Returns `(new_state, dt, fixed_index)`.
pub fn step<R: Rng + ?Sized>(
    state: &ParticleState,
    alpha: u32,
    rng: &mut R,
) -> Result<(ParticleState, f64, usize)> {
    let rates = jump_rates(state, alpha)?;
    let mut dt = exp_sample(rng, rates[0]);
    let mut k = 0;
    for (i, &rate) in rates.iter().enumerate().skip(1) {
        let c = exp_sample(rng, rate);
        if c < dt {
            dt = c;
            k = i;
        }
    }
    let u = scale(state.v[k], std::f64::consts::FRAC_1_SQRT_2);
    let y = uniform_direction(rng);
    let mut next = ParticleState::from_fixed(k, u, y);
    // keep the held velocity bit-identical
    next.v[k] = state.v[k];
    next.clean();
    Ok((next, dt, k))
}
