//! Star-polynomial assembly, root finding, and Bloch-sphere mapping.
//!
//! The star polynomial of a state is `sum_n w_n C_n z^n` with the symmetry
//! weights from [`crate::algebra`]. Coefficients are assembled in the log
//! domain and rescaled so the largest modulus is exactly 1; rescaling leaves
//! the roots untouched. Missing leading coefficients are roots at infinity,
//! rendered as stars on the south pole.
//!
//! Roots are found by Aberth-Ehrlich simultaneous iteration with Newton
//! polishing. Fully degenerate constellations (coherent states) are certified
//! directly from the coefficients: `z* = -c_{d-1} / (d c_d)` is accepted as a
//! `d`-fold root when every derivative of the polynomial has a tiny relative
//! residual at `z*`, which sidesteps the `eps^{1/d}` scatter an iterative
//! solver necessarily produces on multiple roots.

use num_complex::Complex64;

use crate::algebra::SymmetryKind;
use crate::error::{Error, Result};
use crate::gamma::ln_gamma;
use crate::states::PureState;

/// Relative threshold below which a leading coefficient is treated as absent
/// (an infinite root).
pub const EPS_LEAD: f64 = 1e-12;

/// Residual level treated as converged-to-noise during iteration.
const RESIDUAL_FLOOR: f64 = 1e-13;

/// Certification threshold for the degenerate-root shortcut.
const CERT_TOL: f64 = 1e-10;

const NEWTON_POLISH_STEPS: usize = 40;

/// Tolerances and iteration caps for the root finder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Step-size convergence criterion, relative to `1 + |z|`.
    pub root_tol: f64,
    /// Maximum acceptable relative residual `|p(z)| / sum |c_n| |z|^n`.
    pub residual_tol: f64,
    /// Iteration cap for the simultaneous iteration.
    pub max_iter: usize,
    /// Merge radius for star clustering, measured in the chordal metric on
    /// the unit sphere (antipodal points are distance 2 apart).
    pub cluster_radius: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            root_tol: 1e-12,
            residual_tol: 1e-8,
            max_iter: 500,
            cluster_radius: 1e-6,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<()> {
        if !(self.root_tol > 0.0 && self.root_tol.is_finite()) {
            return Err(Error::InvalidConfig("root_tol must be positive".into()));
        }
        if !(self.residual_tol > 0.0 && self.residual_tol.is_finite()) {
            return Err(Error::InvalidConfig("residual_tol must be positive".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be positive".into()));
        }
        if !(self.cluster_radius > 0.0 && self.cluster_radius.is_finite()) {
            return Err(Error::InvalidConfig("cluster_radius must be positive".into()));
        }
        Ok(())
    }
}

/// Star-equation coefficients, rescaled to unit maximum modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct StarPolynomial {
    coeffs: Vec<Complex64>,
    nominal_degree: usize,
    effective_degree: usize,
}

impl StarPolynomial {
    /// Build from raw coefficients (index = power). Rescales so the largest
    /// modulus is 1 and detects the effective degree.
    pub fn from_coefficients(raw: &[Complex64]) -> Result<StarPolynomial> {
        if raw.is_empty() {
            return Err(Error::ZeroState);
        }
        for (index, c) in raw.iter().enumerate() {
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::NonFiniteAmplitude { index });
            }
        }
        let max = raw.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return Err(Error::ZeroState);
        }
        let coeffs: Vec<Complex64> = raw.iter().map(|c| c / max).collect();
        Ok(Self::from_normalized(coeffs))
    }

    fn from_normalized(coeffs: Vec<Complex64>) -> StarPolynomial {
        let nominal_degree = coeffs.len() - 1;
        let effective_degree = coeffs
            .iter()
            .rposition(|c| c.norm() > EPS_LEAD)
            .unwrap_or(0);
        StarPolynomial { coeffs, nominal_degree, effective_degree }
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn nominal_degree(&self) -> usize {
        self.nominal_degree
    }

    pub fn effective_degree(&self) -> usize {
        self.effective_degree
    }

    /// Number of roots at infinity: nominal minus effective degree.
    pub fn infinite_root_count(&self) -> usize {
        self.nominal_degree - self.effective_degree
    }

    fn effective_coefficients(&self) -> &[Complex64] {
        &self.coeffs[..=self.effective_degree]
    }
}

/// One star: spherical coordinates plus the cluster multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Star {
    /// Polar angle in `[0, pi]`.
    pub theta: f64,
    /// Azimuth in `[0, 2 pi)`; 0 by convention on the poles.
    pub phi: f64,
    pub multiplicity: usize,
}

/// The constellation of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct StarSet {
    /// Finite stars, sorted ascending by `(theta, phi)`.
    pub stars: Vec<Star>,
    /// Stars at the south pole (roots at infinity).
    pub south_pole_count: usize,
    /// Largest relative root residual reported by the solver.
    pub residual_max: f64,
}

impl StarSet {
    /// Sum of all multiplicities, including south-pole stars.
    pub fn total_multiplicity(&self) -> usize {
        self.stars.iter().map(|s| s.multiplicity).sum::<usize>() + self.south_pole_count
    }
}

/// Roots returned by [`find_roots`], sorted by `(re, im)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoundRoots {
    pub roots: Vec<Complex64>,
    /// Relative residual of each root, same order as `roots`.
    pub residuals: Vec<f64>,
    /// Simultaneous-iteration sweeps used (0 when a shortcut applied).
    pub iterations: usize,
}

impl FoundRoots {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().cloned().fold(0.0, f64::max)
    }
}

/// Assemble the star polynomial `a_n = w_n C_n` of a state in the log domain.
pub fn build_star_polynomial(state: &PureState) -> StarPolynomial {
    let sym = state.symmetry();
    let dim = state.dimension();
    let mut log_mags = Vec::with_capacity(dim);
    let mut units = Vec::with_capacity(dim);
    for (n, c) in state.amplitudes().iter().enumerate() {
        let w = sym
            .star_weight(n)
            .expect("state dimension matches symmetry dimension");
        if *c == Complex64::new(0.0, 0.0) {
            log_mags.push(f64::NEG_INFINITY);
            units.push(Complex64::new(0.0, 0.0));
        } else {
            log_mags.push(w.log_magnitude + c.norm().ln());
            units.push(c / c.norm() * w.sign);
        }
    }
    let shift = log_mags.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let coeffs: Vec<Complex64> = log_mags
        .iter()
        .zip(&units)
        .map(|(&lm, &u)| u * (lm - shift).exp())
        .collect();
    StarPolynomial::from_normalized(coeffs)
}

/// The original spin star equation, with coefficients
/// `(-1)^k C_{j-k} / sqrt((2j-k)! k!)` on `z^{2j-k}`. SU(2) only; kept as an
/// independent cross-check of [`build_star_polynomial`].
pub fn classic_majorana_polynomial(state: &PureState) -> Result<StarPolynomial> {
    let two_j = match *state.symmetry() {
        SymmetryKind::Su2 { two_j } => two_j as usize,
        ref other => {
            return Err(Error::SymmetryMismatch {
                operation: "classic_majorana_polynomial",
                expected: "su2",
                got: other.label(),
            })
        }
    };
    let amps = state.amplitudes();
    let mut log_mags = vec![f64::NEG_INFINITY; two_j + 1];
    let mut units = vec![Complex64::new(0.0, 0.0); two_j + 1];
    for k in 0..=two_j {
        let power = two_j - k;
        let c = amps[power]; // C_{j-k} sits at occupation index 2j - k
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        log_mags[power] = c.norm().ln()
            - 0.5 * (ln_gamma((two_j - k) as f64 + 1.0) + ln_gamma(k as f64 + 1.0));
        units[power] = c / c.norm() * sign;
    }
    let shift = log_mags.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let coeffs: Vec<Complex64> = log_mags
        .iter()
        .zip(&units)
        .map(|(&lm, &u)| u * (lm - shift).exp())
        .collect();
    Ok(StarPolynomial::from_normalized(coeffs))
}

/// Find all finite roots of the effective polynomial.
///
/// Returns exactly `effective_degree` roots; every root satisfies the
/// relative-residual bound of `cfg`, otherwise [`Error::NoConvergence`] is
/// returned carrying the best iterates.
pub fn find_roots(poly: &StarPolynomial, cfg: &SolverConfig) -> Result<FoundRoots> {
    cfg.validate()?;
    let degree = poly.effective_degree();
    if degree == 0 {
        return Ok(FoundRoots { roots: Vec::new(), residuals: Vec::new(), iterations: 0 });
    }
    let mut work: Vec<Complex64> = poly.effective_coefficients().to_vec();

    // Exact roots at the origin: bitwise-zero low coefficients.
    let mut origin_roots = 0usize;
    while work.len() > 1 && work[0] == Complex64::new(0.0, 0.0) {
        work.remove(0);
        origin_roots += 1;
    }

    let mut outcome = if work.len() == 1 {
        FoundRoots { roots: Vec::new(), residuals: Vec::new(), iterations: 0 }
    } else if let Some(collapsed) = certify_full_collapse(&work) {
        collapsed
    } else {
        match work.len() - 1 {
            1 => {
                let root = -work[0] / work[1];
                let res = relative_residual(&work, root);
                FoundRoots { roots: vec![root], residuals: vec![res], iterations: 0 }
            }
            2 => {
                let roots = quadratic_roots(work[0], work[1], work[2]);
                let residuals = roots.iter().map(|&z| relative_residual(&work, z)).collect();
                FoundRoots { roots: roots.to_vec(), residuals, iterations: 0 }
            }
            _ => aberth(&work, cfg)?,
        }
    };

    for _ in 0..origin_roots {
        outcome.roots.push(Complex64::new(0.0, 0.0));
        outcome.residuals.push(0.0);
    }

    let mut order: Vec<usize> = (0..outcome.roots.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (outcome.roots[a], outcome.roots[b]);
        x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
    });
    let roots: Vec<Complex64> = order.iter().map(|&i| outcome.roots[i]).collect();
    let residuals: Vec<f64> = order.iter().map(|&i| outcome.residuals[i]).collect();
    let outcome = FoundRoots { roots, residuals, iterations: outcome.iterations };

    let worst = outcome.max_residual();
    if worst > cfg.residual_tol {
        return Err(Error::NoConvergence {
            max_iter: cfg.max_iter,
            worst_residual: worst,
            roots: outcome.roots,
            residuals: outcome.residuals,
        });
    }
    Ok(outcome)
}

/// Map finite roots plus roots at infinity to a constellation.
///
/// `z = tan(theta/2) e^{i phi}`; roots within `cfg.cluster_radius` of each
/// other (chordal metric, single linkage) merge into one star whose position
/// is the cluster mean in the `z` plane.
pub fn roots_to_bloch(
    roots: &[Complex64],
    infinite_root_count: usize,
    cfg: &SolverConfig,
) -> StarSet {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if chordal_distance(roots[i], roots[j]) <= cfg.cluster_radius {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut sums: Vec<(Complex64, usize)> = vec![(Complex64::new(0.0, 0.0), 0); n];
    for i in 0..n {
        let r = find(&mut parent, i);
        sums[r].0 += roots[i];
        sums[r].1 += 1;
    }
    let mut stars: Vec<Star> = sums
        .into_iter()
        .filter(|(_, count)| *count > 0)
        .map(|(sum, count)| {
            let center = sum / count as f64;
            let (theta, phi) = bloch_angles(center);
            Star { theta, phi, multiplicity: count }
        })
        .collect();
    stars.sort_by(|a, b| a.theta.total_cmp(&b.theta).then(a.phi.total_cmp(&b.phi)));
    StarSet { stars, south_pole_count: infinite_root_count, residual_max: 0.0 }
}

/// Full pipeline: build the star polynomial, solve, map to the sphere.
pub fn stars(state: &PureState, cfg: &SolverConfig) -> Result<StarSet> {
    let poly = build_star_polynomial(state);
    let found = find_roots(&poly, cfg)?;
    let mut set = roots_to_bloch(&found.roots, poly.infinite_root_count(), cfg);
    set.residual_max = found.max_residual();
    Ok(set)
}

/// Spherical coordinates of a finite root.
pub fn bloch_angles(z: Complex64) -> (f64, f64) {
    let r = z.norm();
    if r == 0.0 {
        return (0.0, 0.0);
    }
    let theta = 2.0 * r.atan();
    let mut phi = z.arg();
    if phi < 0.0 {
        phi += 2.0 * std::f64::consts::PI;
    }
    if phi == 2.0 * std::f64::consts::PI || phi == -0.0 {
        phi = 0.0;
    }
    (theta, phi)
}

/// Euclidean distance between the Bloch-sphere images of two finite roots.
pub fn chordal_distance(a: Complex64, b: Complex64) -> f64 {
    2.0 * (a - b).norm() / ((1.0 + a.norm_sqr()) * (1.0 + b.norm_sqr())).sqrt()
}

// ---------------------------------------------------------------------------
// internals
// ---------------------------------------------------------------------------

/// Try to certify that the polynomial is `c_d (z - z*)^d` with
/// `z* = -c_{d-1} / (d c_d)`.
///
/// Certification demands a tiny relative residual for the polynomial and all
/// its derivatives at `z*`, plus consistency of the root product with
/// `|c_0 / c_d|`. Individual roots of a `d`-fold cluster carry an `eps^{1/d}`
/// scatter, but `z*` is a well-conditioned coefficient ratio, so when the
/// state truly is degenerate this path restores full accuracy.
fn certify_full_collapse(coeffs: &[Complex64]) -> Option<FoundRoots> {
    let d = coeffs.len() - 1;
    if d < 2 {
        return None;
    }
    let lead = coeffs[d];
    let z_star = -coeffs[d - 1] / (d as f64 * lead);
    if !(z_star.re.is_finite() && z_star.im.is_finite()) || z_star.norm() == 0.0 {
        return None;
    }
    // Product consistency: d ln|z*| vs ln|c_0 / c_d|.
    let log_product = (coeffs[0].norm() / lead.norm()).ln();
    let log_from_root = d as f64 * z_star.norm().ln();
    if (log_product - log_from_root).abs() > 1e-8 * (1.0 + log_product.abs()) {
        return None;
    }
    let mut derivative: Vec<Complex64> = coeffs.to_vec();
    let mut residual_p = 0.0;
    for order in 0..d {
        let res = relative_residual(&derivative, z_star);
        if order == 0 {
            residual_p = res;
        }
        if res > CERT_TOL {
            return None;
        }
        derivative = differentiate(&derivative);
    }
    Some(FoundRoots {
        roots: vec![z_star; d],
        residuals: vec![residual_p; d],
        iterations: 0,
    })
}

fn differentiate(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect()
}

/// Numerically stable quadratic formula.
fn quadratic_roots(c0: Complex64, c1: Complex64, c2: Complex64) -> [Complex64; 2] {
    let disc = (c1 * c1 - 4.0 * c0 * c2).sqrt();
    // Pick the sign that avoids cancellation in c1 +/- disc.
    let q = if (c1.conj() * disc).re >= 0.0 {
        -0.5 * (c1 + disc)
    } else {
        -0.5 * (c1 - disc)
    };
    if q.norm() == 0.0 {
        let r = (-c0 / c2).sqrt();
        [r, -r]
    } else {
        [q / c2, c0 / q]
    }
}

/// Aberth-Ehrlich simultaneous iteration followed by Newton polishing.
fn aberth(coeffs: &[Complex64], cfg: &SolverConfig) -> Result<FoundRoots> {
    let d = coeffs.len() - 1;
    let radius = (coeffs[0].norm() / coeffs[d].norm()).powf(1.0 / d as f64);
    let radius = if radius.is_finite() && radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / d as f64
                + std::f64::consts::FRAC_PI_2 / d as f64;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut converged = vec![false; d];
    let mut iterations = 0usize;

    for iter in 1..=cfg.max_iter {
        iterations = iter;
        let mut active = false;
        for k in 0..d {
            if converged[k] {
                continue;
            }
            let (p, dp) = horner_pair(coeffs, z[k]);
            if z[k].norm() <= 1.0 && p == Complex64::new(0.0, 0.0) {
                converged[k] = true;
                continue;
            }
            let newton = newton_ratio(coeffs, z[k], p, dp);
            let newton = match newton {
                Some(n) => n,
                None => {
                    // Stationary point: nudge off it.
                    let nudge = Complex64::new(1e-6, 1e-6) * (1.0 + z[k].norm());
                    z[k] += nudge;
                    active = true;
                    continue;
                }
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            let mut collided = false;
            for j in 0..d {
                if j == k {
                    continue;
                }
                let diff = z[k] - z[j];
                if diff == Complex64::new(0.0, 0.0) {
                    collided = true;
                    break;
                }
                repulsion += diff.inv();
            }
            if collided {
                let nudge = Complex64::new(1e-6, -1e-6) * (1.0 + z[k].norm());
                z[k] += nudge;
                active = true;
                continue;
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom == Complex64::new(0.0, 0.0) { newton } else { newton / denom };
            if !(step.re.is_finite() && step.im.is_finite()) {
                let nudge = Complex64::new(-1e-6, 1e-6) * (1.0 + z[k].norm());
                z[k] += nudge;
                active = true;
                continue;
            }
            z[k] -= step;
            if step.norm() <= cfg.root_tol * (1.0 + z[k].norm())
                || relative_residual(coeffs, z[k]) <= RESIDUAL_FLOOR
            {
                converged[k] = true;
            } else {
                active = true;
            }
        }
        if !active {
            break;
        }
    }

    let mut roots = Vec::with_capacity(d);
    let mut residuals = Vec::with_capacity(d);
    for &start in &z {
        let (root, residual) = newton_polish(coeffs, start, cfg);
        roots.push(root);
        residuals.push(residual);
    }
    Ok(FoundRoots { roots, residuals, iterations })
}

/// Newton refinement keeping the best-residual iterate.
fn newton_polish(coeffs: &[Complex64], start: Complex64, cfg: &SolverConfig) -> (Complex64, f64) {
    let mut best = start;
    let mut best_res = relative_residual(coeffs, start);
    let mut z = start;
    for _ in 0..NEWTON_POLISH_STEPS {
        if best_res == 0.0 {
            break;
        }
        let (p, dp) = horner_pair(coeffs, z);
        let step = match newton_ratio(coeffs, z, p, dp) {
            Some(s) if s.re.is_finite() && s.im.is_finite() => s,
            _ => break,
        };
        z -= step;
        let res = relative_residual(coeffs, z);
        if res < best_res {
            best_res = res;
            best = z;
        }
        if step.norm() <= cfg.root_tol * 1e-3 * (1.0 + z.norm()) {
            break;
        }
    }
    (best, best_res)
}

/// `p(z)` and `p'(z)` by Horner. Only used directly for `|z| <= 1`; callers
/// needing large `|z|` go through [`newton_ratio`] / [`relative_residual`],
/// which switch to the reversed polynomial.
fn horner_pair(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Newton correction `p/p'`, computed overflow-free for any `|z|`.
fn newton_ratio(
    coeffs: &[Complex64],
    z: Complex64,
    direct_p: Complex64,
    direct_dp: Complex64,
) -> Option<Complex64> {
    if z.norm() <= 1.0 {
        if direct_dp == Complex64::new(0.0, 0.0) {
            return None;
        }
        return Some(direct_p / direct_dp);
    }
    // p(z) = z^d q(u), u = 1/z; p'/p = (d q(u) - u q'(u)) / (z q(u)).
    let d = coeffs.len() - 1;
    let u = z.inv();
    let mut q = Complex64::new(0.0, 0.0);
    let mut dq = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter() {
        dq = dq * u + q;
        q = q * u + c;
    }
    let denom = d as f64 * q - u * dq;
    if denom == Complex64::new(0.0, 0.0) {
        return None;
    }
    Some(z * q / denom)
}

/// `|p(z)| / sum_n |c_n| |z|^n`, overflow-free for any `|z|`.
fn relative_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    if r <= 1.0 {
        let (p, _) = horner_pair(coeffs, z);
        let mut scale = 0.0f64;
        for &c in coeffs.iter().rev() {
            scale = scale * r + c.norm();
        }
        if scale == 0.0 {
            return 0.0;
        }
        p.norm() / scale
    } else {
        let u = z.inv();
        let ru = u.norm();
        let mut q = Complex64::new(0.0, 0.0);
        let mut scale = 0.0f64;
        for &c in coeffs.iter() {
            q = q * u + c;
            scale = scale * ru + c.norm();
        }
        if scale == 0.0 {
            return 0.0;
        }
        q.norm() / scale
    }
}
