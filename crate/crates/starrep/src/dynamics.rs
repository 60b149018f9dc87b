//! Diagonal (Kerr-type) time evolution of the number-basis amplitudes.
//!
//! The generator is `omega_lin * N + omega_nl * N^2` for the symmetry's number
//! operator `N`, so evolution multiplies `C_n` by
//! `exp(-i (omega_nl n^2 + omega_lin n) t)`. Every time point is evaluated
//! from `t = 0` directly; there is no integrator and no accumulated stepping
//! error.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::solver::{stars, SolverConfig, StarSet};
use crate::states::PureState;

/// Evolution parameters plus the sampling grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionSpec {
    omega_nl: f64,
    omega_lin: f64,
    times: Vec<f64>,
}

impl EvolutionSpec {
    /// `omega_nl > 0`, `omega_lin >= 0`, `times` strictly increasing.
    pub fn new(omega_nl: f64, omega_lin: f64, times: Vec<f64>) -> Result<EvolutionSpec> {
        if !(omega_nl.is_finite() && omega_nl > 0.0) {
            return Err(Error::InvalidEvolution(format!(
                "nonlinear strength {omega_nl} must be positive"
            )));
        }
        if !(omega_lin.is_finite() && omega_lin >= 0.0) {
            return Err(Error::InvalidEvolution(format!(
                "linear splitting {omega_lin} must be non-negative"
            )));
        }
        if times.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidEvolution("times must be finite".into()));
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidEvolution("times must be strictly increasing".into()));
        }
        Ok(EvolutionSpec { omega_nl, omega_lin, times })
    }

    /// Interaction picture: no linear term.
    pub fn interaction_picture(omega_nl: f64, times: Vec<f64>) -> Result<EvolutionSpec> {
        Self::new(omega_nl, 0.0, times)
    }

    pub fn omega_nl(&self) -> f64 {
        self.omega_nl
    }

    pub fn omega_lin(&self) -> f64 {
        self.omega_lin
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }
}

/// Evolve a state to time `t`: `C_n(t) = C_n(0) e^{-i (omega_nl n^2 + omega_lin n) t}`.
pub fn kerr_evolve(state: &PureState, spec: &EvolutionSpec, t: f64) -> PureState {
    let omega_nl = spec.omega_nl;
    let omega_lin = spec.omega_lin;
    state
        .map_amplitudes(|n, c| {
            let nf = n as f64;
            let angle = -(omega_nl * nf * nf + omega_lin * nf) * t;
            c * Complex64::from_polar(1.0, angle)
        })
        .expect("pure phases preserve the norm")
}

/// Star sets along the sampling grid; each time point is independent.
pub fn trajectory(
    state: &PureState,
    spec: &EvolutionSpec,
    cfg: &SolverConfig,
) -> Result<Vec<(f64, StarSet)>> {
    spec.times
        .iter()
        .map(|&t| {
            let evolved = kerr_evolve(state, spec, t);
            match stars(&evolved, cfg) {
                Ok(set) => Ok((t, set)),
                Err(err) => Err(Error::AtTime { t, source: Box::new(err) }),
            }
        })
        .collect()
}

/// The landmark times `0, pi/4W, pi/2W, pi/W, 2pi/W` of one period.
pub fn special_times(omega_nl: f64) -> Result<[f64; 5]> {
    if !(omega_nl.is_finite() && omega_nl > 0.0) {
        return Err(Error::InvalidEvolution(format!(
            "nonlinear strength {omega_nl} must be positive"
        )));
    }
    Ok([
        0.0,
        PI / (4.0 * omega_nl),
        PI / (2.0 * omega_nl),
        PI / omega_nl,
        2.0 * PI / omega_nl,
    ])
}
