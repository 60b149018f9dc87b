//! Stellar (Majorana-star) representation of pure quantum states.
//!
//! A pure state with Heisenberg-Weyl, SU(2) or SU(1,1) symmetry is mapped to a
//! finite set of points on the Bloch sphere: the amplitudes are folded with a
//! symmetry-specific weight sequence into a *star polynomial*, whose complex
//! roots `z = tan(theta/2) e^{i phi}` are the stars. Coherent states collapse
//! to a single fully degenerate star, which is what fixes the weights.
//!
//! The crate provides
//!
//! * [`algebra`] — the three symmetry classes and their overflow-safe
//!   (log-domain) weight sequences,
//! * [`states`] — constructors for coherent, squeezed-vacuum, cat and
//!   user-supplied amplitude vectors,
//! * [`solver`] — star-polynomial assembly, a simultaneous-iteration root
//!   finder with degenerate-root certification, and the Bloch-sphere mapping,
//! * [`analytic`] — closed-form root formulas used as independent oracles,
//! * [`dynamics`] — Kerr-type (diagonal number-operator) time evolution.

pub mod algebra;
pub mod analytic;
pub mod dynamics;
mod error;
pub mod gamma;
pub mod solver;
pub mod states;

pub use algebra::{LogWeight, SymmetryKind};
pub use dynamics::{kerr_evolve, special_times, trajectory, EvolutionSpec};
pub use error::{Error, Result};
pub use solver::{
    build_star_polynomial, classic_majorana_polynomial, find_roots, roots_to_bloch, stars,
    FoundRoots, SolverConfig, Star, StarPolynomial, StarSet,
};
pub use states::PureState;
