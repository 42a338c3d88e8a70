//! Steady states of the Liouvillian, the Fock-cutoff convergence loop and a
//! time-evolution cross-check.
//!
//! Every observable assumes the cavity is the last tensor factor, which is
//! how [`crate::model`] lays out its Hilbert space.

mod evolve;
mod solve;
mod superop;

pub use evolve::{evolve, evolve_with, EvolveOptions};
pub use solve::SolveOptions;
pub use superop::{unvectorize, vectorize, Superoperator};

use faer::c64;

use crate::error::{Error, Result};
use crate::model::{build_liouvillian, SystemParams};
use crate::operators::Operator;

/// Below this photon number ratios such as g²(0) are reported as absent.
pub const PHOTON_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct SteadyStateResult {
    pub rho: Operator,
    /// ⟨a†a⟩.
    pub mean_photon: f64,
    /// ⟨a⟩.
    pub coherent_amp: c64,
    /// ⟨Σᵢ Sᵢ⁺Sᵢ⁻⟩.
    pub atomic_excitation: f64,
    pub g2_zero: Option<f64>,
    pub cutoff_used: usize,
    /// ‖L vec(ρ)‖₂.
    pub residual: f64,
}

/// Controls for [`converge_cutoff_with`].
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceConfig {
    pub rel_tol: f64,
    pub abs_floor: f64,
    pub initial_cutoff: usize,
    pub growth: f64,
    pub max_cutoff: usize,
    pub solve: SolveOptions,
}

impl Default for ConvergenceConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-6,
            abs_floor: 1e-12,
            initial_cutoff: 4,
            growth: 1.5,
            max_cutoff: 60,
            solve: SolveOptions::default(),
        }
    }
}

impl ConvergenceConfig {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_cutoff(mut self, max_cutoff: usize) -> Self {
        self.max_cutoff = max_cutoff;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return Err(Error::invalid(format!("rel_tol = {} must be > 0", self.rel_tol)));
        }
        if !(self.abs_floor >= 0.0) {
            return Err(Error::invalid("abs_floor must be >= 0"));
        }
        if !(self.growth > 1.0) {
            return Err(Error::invalid("growth must exceed 1"));
        }
        if self.initial_cutoff < 1 || self.initial_cutoff > self.max_cutoff {
            return Err(Error::invalid(format!(
                "initial cutoff {} must lie in [1, {}]",
                self.initial_cutoff, self.max_cutoff
            )));
        }
        Ok(())
    }
}

/// Cutoffs tried by [`converge_cutoff_with`]: geometric growth, rounded up,
/// strictly increasing and ending exactly at the cap.
pub fn cutoff_schedule(config: &ConvergenceConfig) -> Vec<usize> {
    let mut out = vec![config.initial_cutoff];
    let mut current = config.initial_cutoff;
    while current < config.max_cutoff {
        let next = ((current as f64) * config.growth).ceil() as usize;
        current = next.max(current + 1).min(config.max_cutoff);
        out.push(current);
    }
    out
}

/// Unique trace-one solution of `L vec(ρ) = 0`, with observables.
pub fn steady_state(l: &Superoperator) -> Result<SteadyStateResult> {
    steady_state_with(l, &SolveOptions::default())
}

pub fn steady_state_with(l: &Superoperator, options: &SolveOptions) -> Result<SteadyStateResult> {
    let solved = solve::solve(l, options)?;
    Ok(observe(solved.rho, solved.residual))
}

fn observe(rho: Operator, residual: f64) -> SteadyStateResult {
    let stats = CavityStats::of(&rho);
    let atomic_excitation = atomic_excitation(&rho);
    let cutoff_used = rho.dims().last().copied().unwrap_or(1) - 1;
    SteadyStateResult {
        mean_photon: stats.mean,
        coherent_amp: stats.amplitude,
        atomic_excitation,
        g2_zero: stats.g2(),
        cutoff_used,
        residual,
        rho,
    }
}

/// Solves the model at increasing cutoffs until ⟨a†a⟩ and |⟨a⟩| agree
/// between consecutive cutoffs; returns the smaller of the agreeing pair.
pub fn converge_cutoff(params: &SystemParams, rel_tol: f64) -> Result<SteadyStateResult> {
    converge_cutoff_with(params, &ConvergenceConfig::default().with_rel_tol(rel_tol))
}

pub fn converge_cutoff_with(params: &SystemParams, config: &ConvergenceConfig) -> Result<SteadyStateResult> {
    config.validate()?;
    params.with_cutoff(config.initial_cutoff).validate()?;

    let within = |a: f64, b: f64| (a - b).abs() <= (config.rel_tol * b.abs()).max(config.abs_floor);
    let change = |a: f64, b: f64| (a - b).abs() / b.abs().max(config.abs_floor);

    let mut previous: Option<SteadyStateResult> = None;
    let mut last_change = f64::INFINITY;
    for cutoff in cutoff_schedule(config) {
        let l = build_liouvillian(&params.with_cutoff(cutoff))?;
        let current = steady_state_with(&l, &config.solve)?;
        if let Some(prev) = previous {
            let (n0, n1) = (prev.mean_photon, current.mean_photon);
            let (a0, a1) = (prev.coherent_amp.norm(), current.coherent_amp.norm());
            if within(n0, n1) && within(a0, a1) {
                return Ok(prev);
            }
            last_change = change(n0, n1).max(change(a0, a1));
        }
        previous = Some(current);
    }
    Err(Error::CutoffExhausted {
        cap: config.max_cutoff,
        last_change,
    })
}

/// Moments of the cavity mode, read directly off ρ's entries.
struct CavityStats {
    mean: f64,
    factorial2: f64,
    amplitude: c64,
}

impl CavityStats {
    fn of(rho: &Operator) -> Self {
        let dims = rho.dims();
        let nc = *dims.last().expect("operators have at least one factor");
        let outer = rho.side() / nc;
        let data = rho.data();
        let (mut mean, mut factorial2) = (0.0, 0.0);
        let mut amplitude = c64::new(0.0, 0.0);
        for s in 0..outer {
            for n in 0..nc {
                let idx = s * nc + n;
                let p = data[(idx, idx)].re;
                let nf = n as f64;
                mean += nf * p;
                factorial2 += nf * (nf - 1.0) * p;
                if n + 1 < nc {
                    // Tr(aρ) = Σ √(n+1) ρ_{n+1, n}
                    amplitude += data[(idx + 1, idx)] * ((n + 1) as f64).sqrt();
                }
            }
        }
        Self {
            mean,
            factorial2,
            amplitude,
        }
    }

    fn g2(&self) -> Option<f64> {
        (self.mean >= PHOTON_FLOOR).then(|| self.factorial2 / (self.mean * self.mean))
    }
}

/// ⟨a†a†aa⟩ / ⟨a†a⟩², absent for an (almost) empty cavity.
pub fn g2_zero(rho: &Operator) -> Option<f64> {
    CavityStats::of(rho).g2()
}

/// ⟨a†a⟩.
pub fn mean_photon(rho: &Operator) -> f64 {
    CavityStats::of(rho).mean
}

/// ⟨a⟩.
pub fn coherent_amplitude(rho: &Operator) -> c64 {
    CavityStats::of(rho).amplitude
}

/// Photon-number distribution `P(n)`, tracing out everything but the cavity.
pub fn photon_distribution(rho: &Operator) -> Vec<f64> {
    let nc = *rho.dims().last().expect("operators have at least one factor");
    let outer = rho.side() / nc;
    let data = rho.data();
    (0..nc)
        .map(|n| (0..outer).map(|s| data[(s * nc + n, s * nc + n)].re).sum())
        .collect()
}

/// Total atomic excitation ⟨Σᵢ Sᵢ⁺Sᵢ⁻⟩; every factor but the last is a qubit.
pub fn atomic_excitation(rho: &Operator) -> f64 {
    let nc = *rho.dims().last().expect("operators have at least one factor");
    let outer = rho.side() / nc;
    let data = rho.data();
    (0..outer)
        .map(|s| {
            let excited = s.count_ones() as f64;
            (0..nc).map(|n| data[(s * nc + n, s * nc + n)].re).sum::<f64>() * excited
        })
        .sum()
}
