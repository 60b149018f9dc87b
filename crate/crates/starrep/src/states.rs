//! Pure-state constructors.
//!
//! All constructors return a normalized amplitude vector with the global phase
//! fixed so that the first nonzero amplitude is real and positive; star
//! positions do not depend on either convention, but deterministic output does.

use num_complex::Complex64;

use crate::algebra::SymmetryKind;
use crate::error::{Error, Result};
use crate::gamma::ln_gamma;

/// A normalized pure state over the number basis of its symmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    sym: SymmetryKind,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Coherent state with displacement parameter `alpha`.
    ///
    /// Amplitudes are `C_n ~ g(n) alpha^n / sqrt(n!)` with the symmetry's
    /// ladder prefactor `g`, truncated at the symmetry dimension and
    /// normalized. SU(1,1) requires `|alpha| < 1`.
    pub fn coherent(sym: SymmetryKind, alpha: Complex64) -> Result<PureState> {
        check_finite_parameter(alpha)?;
        if let SymmetryKind::Su11 { .. } = sym {
            if alpha.norm() >= 1.0 {
                return Err(Error::UnitDiskViolation {
                    name: "coherent parameter",
                    modulus: alpha.norm(),
                });
            }
        }
        let dim = sym.dimension();
        if alpha == Complex64::new(0.0, 0.0) {
            let mut amps = vec![Complex64::new(0.0, 0.0); dim];
            amps[0] = Complex64::new(1.0, 0.0);
            return Self::finalize(sym, amps);
        }
        let log_abs = alpha.norm().ln();
        let arg = alpha.arg();
        let mut log_mags = Vec::with_capacity(dim);
        let mut phases = Vec::with_capacity(dim);
        for n in 0..dim {
            let g = sym.ladder_prefactor(n)?;
            let nf = n as f64;
            log_mags.push(g.log_magnitude + nf * log_abs - 0.5 * ln_gamma(nf + 1.0));
            phases.push(nf * arg);
        }
        Self::finalize(sym, from_log_polar(&log_mags, &phases))
    }

    /// Squeezed vacuum: even occupations only.
    ///
    /// HW requires `|xi| < 1`. The SU(1,1) series is truncated at the cutoff,
    /// which keeps `|xi| >= 1` representable; SU(2) accepts any `xi`.
    pub fn squeezed_vacuum(sym: SymmetryKind, xi: Complex64) -> Result<PureState> {
        check_finite_parameter(xi)?;
        if let SymmetryKind::HeisenbergWeyl { .. } = sym {
            if xi.norm() >= 1.0 {
                return Err(Error::UnitDiskViolation {
                    name: "squeezing parameter",
                    modulus: xi.norm(),
                });
            }
        }
        let dim = sym.dimension();
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        if xi == Complex64::new(0.0, 0.0) {
            amps[0] = Complex64::new(1.0, 0.0);
            return Self::finalize(sym, amps);
        }
        // Upper summation limit: floor(j) for SU(2), floor(Nc/2) otherwise.
        let n_max = match sym {
            SymmetryKind::Su2 { two_j } => two_j as usize / 2,
            _ => (dim - 1) / 2,
        };
        let arg = xi.arg();
        let mut log_mags = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let nf = n as f64;
            let lm = match sym {
                SymmetryKind::HeisenbergWeyl { .. } => {
                    nf * (xi.norm() / 2.0).ln() + 0.5 * ln_gamma(2.0 * nf + 1.0)
                        - ln_gamma(nf + 1.0)
                }
                SymmetryKind::Su2 { two_j } => {
                    let tj = two_j as f64;
                    nf * (xi.norm() / (2.0 * tj)).ln()
                        + 0.5 * (ln_gamma(2.0 * nf + 1.0) + ln_gamma(tj + 1.0)
                            - ln_gamma(tj - 2.0 * nf + 1.0))
                        - ln_gamma(nf + 1.0)
                }
                SymmetryKind::Su11 { bargmann, .. } => {
                    let two_k = 2.0 * bargmann;
                    nf * (xi.norm() / 2.0).ln()
                        + 0.5 * (ln_gamma(2.0 * nf + 1.0) + ln_gamma(two_k + 2.0 * nf)
                            - ln_gamma(two_k))
                        - ln_gamma(nf + 1.0)
                }
            };
            log_mags.push(lm);
        }
        let shift = log_mags.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        for (n, lm) in log_mags.iter().enumerate() {
            let phase = n as f64 * arg;
            amps[2 * n] = Complex64::from_polar((lm - shift).exp(), phase);
        }
        Self::finalize(sym, amps)
    }

    /// Two-component cat state
    /// `(e^{-i pi/4} |alpha> + e^{i pi/4} |-alpha>) / sqrt(2)`.
    pub fn cat_two(sym: SymmetryKind, alpha: Complex64) -> Result<PureState> {
        let quarter = Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4);
        Self::superpose(
            sym,
            &[
                (quarter, alpha),
                (quarter.conj(), -alpha),
            ],
        )
    }

    /// Four-component cat state
    /// `(e^{-i pi/4} |alpha> + |i alpha> - e^{-i pi/4} |-alpha> + |-i alpha>) / 2`.
    pub fn cat_four(sym: SymmetryKind, alpha: Complex64) -> Result<PureState> {
        let quarter = Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4);
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        Self::superpose(
            sym,
            &[
                (quarter, alpha),
                (one, i * alpha),
                (-quarter, -alpha),
                (one, -i * alpha),
            ],
        )
    }

    /// Normalized copy of a user-supplied amplitude vector.
    pub fn from_amplitudes(sym: SymmetryKind, raw: &[Complex64]) -> Result<PureState> {
        if raw.len() != sym.dimension() {
            return Err(Error::DimensionMismatch {
                got: raw.len(),
                expected: sym.dimension(),
            });
        }
        Self::finalize(sym, raw.to_vec())
    }

    pub fn symmetry(&self) -> &SymmetryKind {
        &self.sym
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    /// Inner product `<self|other>`.
    pub fn overlap(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Replace each amplitude through `f`, then renormalize and re-fix the
    /// global phase. Used by diagonal evolution.
    pub(crate) fn map_amplitudes(
        &self,
        f: impl Fn(usize, Complex64) -> Complex64,
    ) -> Result<PureState> {
        let amps = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(n, &c)| f(n, c))
            .collect();
        Self::finalize(self.sym, amps)
    }

    /// Superposition of coherent states with fixed coefficients.
    fn superpose(sym: SymmetryKind, parts: &[(Complex64, Complex64)]) -> Result<PureState> {
        let mut amps = vec![Complex64::new(0.0, 0.0); sym.dimension()];
        for &(coeff, alpha) in parts {
            let component = Self::coherent(sym, alpha)?;
            for (acc, c) in amps.iter_mut().zip(component.amplitudes()) {
                *acc += coeff * c;
            }
        }
        Self::finalize(sym, amps)
    }

    /// Normalize, fix the global phase, and validate.
    fn finalize(sym: SymmetryKind, mut amps: Vec<Complex64>) -> Result<PureState> {
        for (index, c) in amps.iter().enumerate() {
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::NonFiniteAmplitude { index });
            }
        }
        let norm_sq: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
        if norm_sq == 0.0 {
            return Err(Error::ZeroState);
        }
        let inv_norm = 1.0 / norm_sq.sqrt();
        for c in amps.iter_mut() {
            *c *= inv_norm;
        }
        // Rotate so the first nonzero amplitude is real positive.
        let anchor = amps
            .iter()
            .position(|c| *c != Complex64::new(0.0, 0.0))
            .expect("nonzero state has a nonzero amplitude");
        let phase = amps[anchor] / amps[anchor].norm();
        let rotation = phase.conj();
        for c in amps.iter_mut() {
            *c *= rotation;
        }
        amps[anchor] = Complex64::new(amps[anchor].re.abs(), 0.0);
        Ok(PureState { sym, amplitudes: amps })
    }
}

/// Exponentiate log magnitudes after a common shift; the shift cancels in
/// normalization.
fn from_log_polar(log_mags: &[f64], phases: &[f64]) -> Vec<Complex64> {
    let shift = log_mags.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    log_mags
        .iter()
        .zip(phases)
        .map(|(&lm, &ph)| Complex64::from_polar((lm - shift).exp(), ph))
        .collect()
}

fn check_finite_parameter(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain("state parameter must be finite".into()))
    }
}
