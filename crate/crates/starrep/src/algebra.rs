//! Symmetry classes and their star-equation weight sequences.
//!
//! Each symmetry fixes a weight `w_n` multiplying the state amplitude `C_n` in
//! the star polynomial, chosen so that the symmetry's coherent states collapse
//! to a single degenerate root. The weights grow factorially, so they are kept
//! as a natural log magnitude plus a sign.

use crate::error::{Error, Result};
use crate::gamma::ln_gamma;

/// A real weight stored as `sign * exp(log_magnitude)`.
///
/// All star-equation weights are real with strictly alternating sign, so a
/// sign bit alongside the log magnitude represents them exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogWeight {
    /// Natural log of the magnitude.
    pub log_magnitude: f64,
    /// Either `1.0` or `-1.0`.
    pub sign: f64,
}

impl LogWeight {
    /// Linear-scale value. Only safe for weights known to fit in `f64`.
    pub fn value(&self) -> f64 {
        self.sign * self.log_magnitude.exp()
    }
}

/// One of the three supported symmetry classes together with its dimension
/// parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymmetryKind {
    /// Single bosonic mode, truncated at occupation `cutoff`.
    HeisenbergWeyl { cutoff: u32 },
    /// Spin with magnitude `j = two_j / 2`.
    Su2 { two_j: u32 },
    /// Positive-discrete-series representation labelled by the Bargmann
    /// index, truncated at `cutoff`.
    Su11 { bargmann: f64, cutoff: u32 },
}

impl SymmetryKind {
    /// Bosonic mode with occupation numbers `0..=cutoff`.
    pub fn heisenberg_weyl(cutoff: u32) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::InvalidSymmetry("cutoff must be at least 1".into()));
        }
        Ok(SymmetryKind::HeisenbergWeyl { cutoff })
    }

    /// Spin `j`, where `2j` must be a positive integer (half-integers allowed).
    pub fn su2(j: f64) -> Result<Self> {
        let two_j = 2.0 * j;
        if !(two_j.is_finite() && two_j > 0.0 && two_j.fract() == 0.0 && two_j <= u32::MAX as f64) {
            return Err(Error::InvalidSymmetry(format!(
                "spin j = {j} is not a positive half-integer"
            )));
        }
        Ok(SymmetryKind::Su2 { two_j: two_j as u32 })
    }

    /// Spin given as the integer `2j`.
    pub fn su2_from_two_j(two_j: u32) -> Result<Self> {
        if two_j == 0 {
            return Err(Error::InvalidSymmetry("2j must be a positive integer".into()));
        }
        Ok(SymmetryKind::Su2 { two_j })
    }

    /// SU(1,1) representation with Bargmann index `k > 0`, truncated at `cutoff`.
    pub fn su11(bargmann: f64, cutoff: u32) -> Result<Self> {
        if !(bargmann.is_finite() && bargmann > 0.0) {
            return Err(Error::InvalidSymmetry(format!(
                "Bargmann index k = {bargmann} must be positive"
            )));
        }
        if cutoff == 0 {
            return Err(Error::InvalidSymmetry("cutoff must be at least 1".into()));
        }
        Ok(SymmetryKind::Su11 { bargmann, cutoff })
    }

    /// Number of basis amplitudes (highest occupation index plus one).
    pub fn dimension(&self) -> usize {
        match *self {
            SymmetryKind::HeisenbergWeyl { cutoff } => cutoff as usize + 1,
            SymmetryKind::Su2 { two_j } => two_j as usize + 1,
            SymmetryKind::Su11 { cutoff, .. } => cutoff as usize + 1,
        }
    }

    /// Degree of the star polynomial before any coefficient trimming.
    pub fn nominal_degree(&self) -> usize {
        self.dimension() - 1
    }

    /// Short lowercase label, used for error messages and serialized output.
    pub fn label(&self) -> &'static str {
        match self {
            SymmetryKind::HeisenbergWeyl { .. } => "hw",
            SymmetryKind::Su2 { .. } => "su2",
            SymmetryKind::Su11 { .. } => "su11",
        }
    }

    fn check_index(&self, n: usize) -> Result<()> {
        let dim = self.dimension();
        if n >= dim {
            return Err(Error::IndexOutOfRange { index: n, dimension: dim });
        }
        Ok(())
    }

    /// Star-equation weight `w_n` in log form.
    ///
    /// * HW: `(-1)^n Nc! / ((Nc - n)! sqrt(n!))`
    /// * SU(2): `(-1)^n sqrt(binom(2j, n))`
    /// * SU(1,1): `(-1)^n (Nc! / (Nc - n)!) sqrt(Gamma(2k) / (n! Gamma(2k + n)))`
    pub fn star_weight(&self, n: usize) -> Result<LogWeight> {
        self.check_index(n)?;
        let nf = n as f64;
        let log_magnitude = match *self {
            SymmetryKind::HeisenbergWeyl { cutoff } => {
                let nc = cutoff as f64;
                ln_gamma(nc + 1.0) - ln_gamma(nc - nf + 1.0) - 0.5 * ln_gamma(nf + 1.0)
            }
            SymmetryKind::Su2 { two_j } => {
                let tj = two_j as f64;
                0.5 * (ln_gamma(tj + 1.0) - ln_gamma(nf + 1.0) - ln_gamma(tj - nf + 1.0))
            }
            SymmetryKind::Su11 { bargmann, cutoff } => {
                let nc = cutoff as f64;
                let two_k = 2.0 * bargmann;
                ln_gamma(nc + 1.0) - ln_gamma(nc - nf + 1.0)
                    + 0.5 * (ln_gamma(two_k) - ln_gamma(nf + 1.0) - ln_gamma(two_k + nf))
            }
        };
        Ok(LogWeight { log_magnitude, sign: if n % 2 == 0 { 1.0 } else { -1.0 } })
    }

    /// Coherent-state prefactor `g(n)` in log form: the coherent amplitudes
    /// are `C_n ~ g(n) alpha^n / sqrt(n!)` before normalization.
    ///
    /// * HW: `1`
    /// * SU(2): `sqrt((2j)! / (2j - n)!)`
    /// * SU(1,1): `sqrt(Gamma(2k + n) / Gamma(2k))`
    pub fn ladder_prefactor(&self, n: usize) -> Result<LogWeight> {
        self.check_index(n)?;
        let nf = n as f64;
        let log_magnitude = match *self {
            SymmetryKind::HeisenbergWeyl { .. } => 0.0,
            SymmetryKind::Su2 { two_j } => {
                let tj = two_j as f64;
                0.5 * (ln_gamma(tj + 1.0) - ln_gamma(tj - nf + 1.0))
            }
            SymmetryKind::Su11 { bargmann, .. } => {
                let two_k = 2.0 * bargmann;
                0.5 * (ln_gamma(two_k + nf) - ln_gamma(two_k))
            }
        };
        Ok(LogWeight { log_magnitude, sign: 1.0 })
    }
}
