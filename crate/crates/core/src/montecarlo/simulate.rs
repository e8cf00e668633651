use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::entropy::{fit_decay_rate, relative_entropy, DecayFit, EntropySeries};
use super::histogram::RadialHistogram;
use super::process::{check_alpha, step};
use super::sampling::{replica_rng, sample_initial, InitialDensity};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub alpha: u32,
    pub replicas: usize,
    /// Observation times, strictly increasing and non-negative.
    pub frames: Vec<f64>,
    pub seed: u64,
    pub bins: usize,
    pub initial: InitialDensity,
    /// Keep every radial sample (memory grows with replicas x frames).
    pub keep_samples: bool,
}

impl SimConfig {
    pub fn new(alpha: u32, replicas: usize, seed: u64) -> Self {
        Self {
            alpha,
            replicas,
            frames: default_frames(alpha),
            seed,
            bins: 100,
            initial: InitialDensity::Linear,
            keep_samples: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if self.replicas == 0 {
            return Err(Error::Config("need at least one replica".into()));
        }
        if self.bins < 10 {
            return Err(Error::Config(format!(
                "need at least 10 bins, got {}",
                self.bins
            )));
        }
        if self.frames.is_empty() {
            return Err(Error::Config("no frames requested".into()));
        }
        if self.frames.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(Error::Config(
                "frame times must be finite and non-negative".into(),
            ));
        }
        if self.frames.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(
                "frame times must be strictly increasing".into(),
            ));
        }
        Ok(())
    }
}

/// `{0, 2, ..., 24}` for `alpha = 2`, `{0, 0.5, 2, 3.5, 5, 10}` for `alpha = 0`.
pub fn default_frames(alpha: u32) -> Vec<f64> {
    if alpha == 0 {
        vec![0.0, 0.5, 2.0, 3.5, 5.0, 10.0]
    } else {
        (0..=12).map(|i| 2.0 * i as f64).collect()
    }
}

/// Histograms of the three rescaled speeds at one observation time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub time: f64,
    /// Index 0 is the particle drawn from the initial density.
    pub hists: [RadialHistogram; 3],
    /// `samples[k][replica]`, present only with `keep_samples`.
    pub samples: Option<[Vec<f64>; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimOutput {
    pub config: SimConfig,
    pub frames: Vec<Frame>,
    pub total_steps: u64,
    /// Largest `|momentum|` seen after any step.
    pub max_momentum_residual: f64,
    /// Largest `|energy - 3|` seen after any step.
    pub max_energy_residual: f64,
}

impl SimOutput {
    pub fn entropy_series(&self) -> Result<EntropySeries> {
        let mut s = EntropySeries {
            times: Vec::with_capacity(self.frames.len()),
            sampled: Vec::new(),
            implied1: Vec::new(),
            implied2: Vec::new(),
        };
        for f in &self.frames {
            s.times.push(f.time);
            s.sampled.push(relative_entropy(&f.hists[0])?);
            s.implied1.push(relative_entropy(&f.hists[1])?);
            s.implied2.push(relative_entropy(&f.hists[2])?);
        }
        Ok(s)
    }

    /// Decay rate fitted to the sampled-particle entropy.
    pub fn fit(&self) -> Result<DecayFit> {
        fit_decay_rate(&self.entropy_series()?.points())
    }
}

struct Replica {
    radial: Vec<[f64; 3]>,
    steps: u64,
    momentum: f64,
    energy: f64,
}

fn run_replica(cfg: &SimConfig, replica: usize) -> Result<Replica> {
    let mut rng = replica_rng(cfg.seed, replica as u64);
    let mut state = sample_initial(cfg.initial, &mut rng)?;
    let (mut momentum, mut energy) = state.residuals();
    let mut t = 0.0;
    let mut steps = 0;
    let mut radial = Vec::with_capacity(cfg.frames.len());
    for &frame in &cfg.frames {
        // record the first state whose clock has passed the frame time
        while t < frame {
            let (next, dt, _) = step(&state, cfg.alpha, &mut rng)?;
            state = next;
            t += dt;
            steps += 1;
            let (p, e) = state.residuals();
            momentum = momentum.max(p);
            energy = energy.max(e);
        }
        radial.push([state.radial(0), state.radial(1), state.radial(2)]);
    }
    Ok(Replica {
        radial,
        steps,
        momentum,
        energy,
    })
}

struct Acc {
    hists: Vec<[RadialHistogram; 3]>,
    steps: u64,
    momentum: f64,
    energy: f64,
}

impl Acc {
    fn new(frames: usize, bins: usize) -> Self {
        let h = RadialHistogram::new(bins).expect("bins validated");
        Self {
            hists: vec![[h.clone(), h.clone(), h]; frames],
            steps: 0,
            momentum: 0.0,
            energy: 0.0,
        }
    }

    fn push(mut self, r: &Replica) -> Self {
        for (hs, rad) in self.hists.iter_mut().zip(&r.radial) {
            for k in 0..3 {
                hs[k].add(rad[k]);
            }
        }
        self.steps += r.steps;
        self.momentum = self.momentum.max(r.momentum);
        self.energy = self.energy.max(r.energy);
        self
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.hists.iter_mut().zip(&other.hists) {
            for k in 0..3 {
                a[k].merge(&b[k]).expect("same bin count");
            }
        }
        self.steps += other.steps;
        self.momentum = self.momentum.max(other.momentum);
        self.energy = self.energy.max(other.energy);
        self
    }
}

/// Runs `cfg.replicas` independent trajectories in parallel.
///
/// Output is identical for a given configuration regardless of thread count.
pub fn simulate(cfg: &SimConfig) -> Result<SimOutput> {
    cfg.validate()?;
    let nf = cfg.frames.len();
    let (acc, samples) = if cfg.keep_samples {
        let reps: Vec<Replica> = (0..cfg.replicas)
            .into_par_iter()
            .map(|r| run_replica(cfg, r))
            .collect::<Result<_>>()?;
        let acc = reps.iter().fold(Acc::new(nf, cfg.bins), Acc::push);
        let samples: Vec<[Vec<f64>; 3]> = (0..nf)
            .map(|f| std::array::from_fn(|k| reps.iter().map(|r| r.radial[f][k]).collect()))
            .collect();
        (acc, Some(samples))
    } else {
        let acc = (0..cfg.replicas)
            .into_par_iter()
            .map(|r| run_replica(cfg, r))
            .try_fold(|| Acc::new(nf, cfg.bins), |acc, r| r.map(|r| acc.push(&r)))
            .try_reduce(|| Acc::new(nf, cfg.bins), |a, b| Ok(a.merge(b)))?;
        (acc, None)
    };
    let mut samples = samples.map(|s| s.into_iter());
    let frames = cfg
        .frames
        .iter()
        .zip(acc.hists)
        .map(|(&time, hists)| Frame {
            time,
            hists,
            samples: samples.as_mut().and_then(|s| s.next()),
        })
        .collect();
    Ok(SimOutput {
        config: cfg.clone(),
        frames,
        total_steps: acc.steps,
        max_momentum_residual: acc.momentum,
        max_energy_residual: acc.energy,
    })
}
