//! Experience-weighted attraction (EWA) learning on 2x2 normal-form games.
//!
//! The crate is organised around the pipeline a study of these dynamics
//! follows in practice:
//!
//! * [`game`] — bimatrix representation, payoff reduction, the coordination /
//!   dominance parameters and the four-way classification of 2x2 games.
//! * [`dynamics`] — the deterministic EWA map in probability and in logit
//!   coordinates, plus the diffeomorphism between the two.
//! * [`fixedpoint`] — root finding for the self-consistency equation,
//!   Jacobians, eigenvalues and closed-form instability thresholds.
//! * [`chaos`] — Lyapunov spectra along orbits, Kaplan-Yorke dimension,
//!   bifurcation scans and exponent grids over the payoff parameters.
//! * [`stochastic`] — finite-batch sampled play at the attraction level and
//!   move-sequence diagnostics (autocorrelation).
//! * [`ensemble`] — correlated Gaussian random-game ensembles and class
//!   prevalence measurements.
//!
//! Everything is deterministic given explicit seeds; all types are immutable
//! values and every function is safe to call from multiple threads.

pub mod chaos;
pub mod dynamics;
pub mod ensemble;
pub mod fixedpoint;
pub mod game;
pub mod numfmt;
pub mod parallel;
pub mod rng;
pub mod stochastic;
