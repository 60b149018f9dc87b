//! Closed-form root formulas, used as oracles independent of the solver
//! pipeline.
//!
//! Coherent states have a single fully degenerate root at `1/alpha`; the
//! two-component cat state has an explicit root ladder on one great circle;
//! the squeezed vacuum reduces to a half-degree polynomial in
//! `zt = -z^2 xi / 2` with only positive real roots (its coefficient signs
//! alternate strictly, so Descartes' rule leaves no alternative).

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::algebra::SymmetryKind;
use crate::error::{Error, Result};
use crate::gamma::ln_gamma;
use crate::solver::{find_roots, SolverConfig, StarPolynomial};

/// One predicted cat-state star.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatStarPrediction {
    /// Ladder index `0..cutoff`.
    pub n: usize,
    pub z: Complex64,
    pub theta: f64,
    pub phi: f64,
}

/// The degenerate root of a coherent state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentRoot {
    /// `None` encodes the root at infinity (south pole).
    pub root: Option<Complex64>,
    pub multiplicity: usize,
}

/// All stars of a coherent state coincide at `z = 1/alpha`; the vacuum sends
/// them to infinity.
pub fn coherent_root(sym: &SymmetryKind, alpha: Complex64) -> Result<CoherentRoot> {
    if let SymmetryKind::Su11 { .. } = sym {
        if alpha.norm() >= 1.0 {
            return Err(Error::UnitDiskViolation {
                name: "coherent parameter",
                modulus: alpha.norm(),
            });
        }
    }
    let multiplicity = sym.nominal_degree();
    if alpha == Complex64::new(0.0, 0.0) {
        return Ok(CoherentRoot { root: None, multiplicity });
    }
    Ok(CoherentRoot { root: Some(alpha.inv()), multiplicity })
}

/// Roots of the two-component cat state at cutoff `N_c`:
/// `z_n = (i/alpha) tan((4n+1) pi / (4 N_c))`, `n = 0..N_c-1`.
///
/// The tangent changes sign past `n = floor((N_c-1)/2)`, which flips the
/// azimuth from `pi/2 - arg(alpha)` to `3 pi/2 - arg(alpha)`.
pub fn cat_two_roots(alpha: Complex64, cutoff: u32) -> Result<Vec<CatStarPrediction>> {
    if alpha == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("cat root formula requires alpha != 0".into()));
    }
    if cutoff == 0 {
        return Err(Error::Domain("cutoff must be at least 1".into()));
    }
    let nc = cutoff as usize;
    let branch_limit = (nc - 1) / 2;
    let i_over_alpha = Complex64::new(0.0, 1.0) / alpha;
    let mut predictions = Vec::with_capacity(nc);
    for n in 0..nc {
        let tangent = ((4 * n + 1) as f64 * PI / (4.0 * nc as f64)).tan();
        let z = i_over_alpha * tangent;
        let theta = 2.0 * (tangent.abs() / alpha.norm()).atan();
        let phi = if n <= branch_limit {
            FRAC_PI_2 - alpha.arg()
        } else {
            3.0 * FRAC_PI_2 - alpha.arg()
        };
        let phi = phi.rem_euclid(2.0 * PI);
        predictions.push(CatStarPrediction { n, z, theta, phi });
    }
    Ok(predictions)
}

/// Reduced and full star roots of the single-mode squeezed vacuum.
#[derive(Debug, Clone, PartialEq)]
pub struct SmsvRoots {
    /// The `floor(N_c/2)` reduced roots, real parts sorted ascending.
    pub reduced: Vec<f64>,
    /// Largest imaginary part seen before discarding; diagnostic for the
    /// positive-real-root guarantee.
    pub max_reduced_imag: f64,
    /// Finite star roots `+/- i sqrt(2 zt / xi)`, two per reduced root,
    /// ordered by reduced root then sign.
    pub stars: Vec<Complex64>,
    /// One root at infinity for odd `N_c`, zero otherwise.
    pub infinite_root_count: usize,
}

/// Solve the reduced squeezed-vacuum equation
/// `sum_n (-1)^n zt^n / ((N_c - 2n)! n!) = 0` and map its roots back to star
/// roots `z = +/- i sqrt(2 zt / xi)`.
pub fn smsv_reduced_roots(
    xi: Complex64,
    cutoff: u32,
    cfg: &SolverConfig,
) -> Result<SmsvRoots> {
    if xi == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroSqueezing);
    }
    let nc = cutoff as usize;
    let half = nc / 2;
    if half == 0 {
        // N_c = 1: the even series is the bare vacuum term; a single star at
        // infinity and no finite roots.
        return Ok(SmsvRoots {
            reduced: Vec::new(),
            max_reduced_imag: 0.0,
            stars: Vec::new(),
            infinite_root_count: 1,
        });
    }
    let mut log_mags = Vec::with_capacity(half + 1);
    for n in 0..=half {
        log_mags.push(-ln_gamma((nc - 2 * n) as f64 + 1.0) - ln_gamma(n as f64 + 1.0));
    }
    let shift = log_mags.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let coeffs: Vec<Complex64> = log_mags
        .iter()
        .enumerate()
        .map(|(n, &lm)| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::new(sign * (lm - shift).exp(), 0.0)
        })
        .collect();
    let poly = StarPolynomial::from_coefficients(&coeffs)?;
    let found = find_roots(&poly, cfg)?;

    let max_reduced_imag = found.roots.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let mut reduced: Vec<f64> = found.roots.iter().map(|z| z.re).collect();
    reduced.sort_by(f64::total_cmp);
    if reduced.first().map_or(false, |r| *r <= 0.0) {
        return Err(Error::Domain(
            "reduced squeezed-vacuum roots must be positive real".into(),
        ));
    }

    let half_arg = xi.arg() / 2.0;
    let mut stars = Vec::with_capacity(2 * reduced.len());
    for &zt in &reduced {
        let magnitude = (2.0 * zt / xi.norm()).sqrt();
        // +i branch: phase pi/2 - arg(xi)/2; -i branch: 3 pi/2 - arg(xi)/2.
        stars.push(Complex64::from_polar(magnitude, (FRAC_PI_2 - half_arg).rem_euclid(2.0 * PI)));
        stars.push(Complex64::from_polar(
            magnitude,
            (3.0 * FRAC_PI_2 - half_arg).rem_euclid(2.0 * PI),
        ));
    }
    Ok(SmsvRoots {
        reduced,
        max_reduced_imag,
        stars,
        infinite_root_count: nc % 2,
    })
}

/// Scale `s` such that the symmetry's squeezed-vacuum star equation becomes
/// the common reduced equation under `zt = s z^2`.
pub fn squeezed_equivalence_map(sym: &SymmetryKind, xi: Complex64) -> Complex64 {
    match *sym {
        SymmetryKind::HeisenbergWeyl { .. } => -xi / 2.0,
        SymmetryKind::Su2 { two_j } => -xi / (2.0 * two_j as f64),
        SymmetryKind::Su11 { .. } => -xi / 2.0,
    }
}

/// Relative magnitude of the cat-state equation
/// `e^{-i pi/4}(1 - alpha z)^{N_c} + e^{i pi/4}(1 + alpha z)^{N_c}` at `z`,
/// evaluated in the log domain against `max(|1 -/+ alpha z|)^{N_c}`.
pub fn cat_two_equation_residual(alpha: Complex64, cutoff: u32, z: Complex64) -> f64 {
    let minus = Complex64::new(1.0, 0.0) - alpha * z;
    let plus = Complex64::new(1.0, 0.0) + alpha * z;
    let nc = cutoff as f64;
    let log_minus = nc * minus.norm().ln();
    let log_plus = nc * plus.norm().ln();
    let log_scale = log_minus.max(log_plus);
    let term_minus = Complex64::from_polar(
        (log_minus - log_scale).exp(),
        nc * minus.arg() - std::f64::consts::FRAC_PI_4,
    );
    let term_plus = Complex64::from_polar(
        (log_plus - log_scale).exp(),
        nc * plus.arg() + std::f64::consts::FRAC_PI_4,
    );
    (term_minus + term_plus).norm()
}
