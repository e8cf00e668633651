use serde::{Deserialize, Serialize};

/// Residual above which a state is projected back onto the constraint set.
pub const REPROJECT_TOL: f64 = 1e-12;
/// Total energy `sum |v_k|^2`.
pub const ENERGY: f64 = 3.0;

pub type Vec3 = [f64; 3];

pub(crate) fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// `beta(v) = sqrt(3/2 (1 - |v|^2))`, clamped at zero.
pub fn beta(v: Vec3) -> f64 {
    (1.5 * (1.0 - dot(v, v))).max(0.0).sqrt()
}

/// Velocities of three particles with zero total momentum and energy 3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParticleState {
    pub v: [Vec3; 3],
}

impl ParticleState {
    /// State with particle `k` at `sqrt(2) u` and the other two at
    /// `beta(u) (+-y) - u / sqrt(2)`, the lower index taking `+y`.
    ///
    /// Requires `|u| <= 1` and `|y| = 1`.
    pub fn from_fixed(k: usize, u: Vec3, y: Vec3) -> Self {
        let b = beta(u);
        let shift = scale(u, -std::f64::consts::FRAC_1_SQRT_2);
        let plus = add(scale(y, b), shift);
        let minus = add(scale(y, -b), shift);
        let (lo, hi) = others(k);
        let mut v = [[0.0; 3]; 3];
        v[k] = scale(u, std::f64::consts::SQRT_2);
        v[lo] = plus;
        v[hi] = minus;
        Self { v }
    }

    /// Initial-state map: particle 0 at `sqrt(2) u`.
    pub fn t1(u: Vec3, y: Vec3) -> Self {
        Self::from_fixed(0, u, y)
    }

    pub fn momentum(&self) -> Vec3 {
        add(add(self.v[0], self.v[1]), self.v[2])
    }

    pub fn energy(&self) -> f64 {
        self.v.iter().map(|&w| dot(w, w)).sum()
    }

    pub fn speed_sq(&self, k: usize) -> f64 {
        dot(self.v[k], self.v[k])
    }

    /// `|v_k| / sqrt(2)`, in `[0, 1]` for valid states.
    pub fn radial(&self, k: usize) -> f64 {
        (self.speed_sq(k) / 2.0).sqrt().min(1.0)
    }

    /// `(|momentum|, |energy - 3|)`.
    pub fn residuals(&self) -> (f64, f64) {
        let p = self.momentum();
        (dot(p, p).sqrt(), (self.energy() - ENERGY).abs())
    }

    pub fn is_valid(&self, tol: f64) -> bool {
        let (p, e) = self.residuals();
        p <= tol && e <= tol
    }

    /// Subtracts the mean velocity and rescales to energy 3.
    pub fn reproject(&mut self) {
        let mean = scale(self.momentum(), 1.0 / 3.0);
        for w in &mut self.v {
            *w = add(*w, scale(mean, -1.0));
        }
        let e = self.energy();
        if e > 0.0 {
            let s = (ENERGY / e).sqrt();
            for w in &mut self.v {
                *w = scale(*w, s);
            }
        }
    }

    /// Reprojects only if a residual exceeds [`REPROJECT_TOL`]. Returns
    /// whether it did.
    pub fn clean(&mut self) -> bool {
        let (p, e) = self.residuals();
        if p > REPROJECT_TOL || e > REPROJECT_TOL {
            self.reproject();
            true
        } else {
            false
        }
    }
}

/// The two indices other than `k`, ascending.
pub(crate) fn others(k: usize) -> (usize, usize) {
    match k {
        0 => (1, 2),
        1 => (0, 2),
        2 => (0, 1),
        _ => panic!("particle index {k} out of range"),
    }
}
