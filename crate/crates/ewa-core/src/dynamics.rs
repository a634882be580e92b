//! The deterministic EWA learning map, in probability coordinates and in the
//! logit coordinates where it is numerically well behaved.
//!
//! The state is the pair of probabilities `(x, y)` with which Row and Column
//! play their first strategy. The half-log-odds transform
//! `x~ = -ln(1/x - 1)/2` sends the open unit square to the plane; in those
//! coordinates one learning step is
//!
//! ```text
//! x~' = (1-alpha) x~ + beta_eff (A tanh y~ + B)
//! y~' = (1-alpha) y~ + beta_eff (C tanh x~ + D)
//! ```
//!
//! with `beta_eff = beta [1 - (1-alpha)(1-kappa)]`. The two routes are
//! conjugate, so long-horizon iteration happens in logit coordinates and the
//! probability form is kept as a presentation layer and as an independent
//! cross-check.

use crate::game::{GameParams, PayoffMatrix};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DynamicsError {
    #[error("state ({x}, {y}) is outside the open unit square")]
    Domain { x: f64, y: f64 },
    /// `(1-alpha)(1-kappa) >= 1`: experience keeps growing without bound
    /// (standard fictitious play), so it has no steady state.
    #[error("experience has no fixed point when (1-alpha)(1-kappa) >= 1")]
    NoFixedPoint,
    #[error("invalid learning parameter: {0}")]
    Config(String),
}

/// EWA learning parameters.
///
/// `alpha` is memory loss, `beta` the intensity of choice, `kappa`
/// interpolates average (0) and cumulative (1) reinforcement, `delta` weights
/// forgone payoffs (meaningful only for sampled play with batch 1) and
/// `batch` is the number of rounds played per update; `None` means the
/// deterministic infinite-batch limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearningConfig {
    pub alpha: f64,
    pub beta: f64,
    pub kappa: f64,
    pub delta: f64,
    pub batch: Option<u32>,
}

impl LearningConfig {
    /// Deterministic configuration with `delta = 1`.
    pub fn new(alpha: f64, beta: f64, kappa: f64) -> Self {
        Self { alpha, beta, kappa, delta: 1.0, batch: None }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_batch(mut self, batch: u32) -> Self {
        self.batch = Some(batch);
        self
    }

    /// Check parameter ranges.
    pub fn validate(&self) -> Result<(), DynamicsError> {
        let ok = (0.0..=1.0).contains(&self.alpha)
            && self.beta >= 0.0
            && self.beta.is_finite()
            && (0.0..=1.0).contains(&self.kappa)
            && (0.0..=1.0).contains(&self.delta);
        if !ok {
            return Err(DynamicsError::Config(format!("{self:?}")));
        }
        if let Some(t) = self.batch {
            if t == 0 {
                return Err(DynamicsError::Config("batch must be >= 1".into()));
            }
        }
        Ok(())
    }

    /// Effective intensity of choice `beta [1 - (1-alpha)(1-kappa)]`.
    ///
    /// `kappa = 1` leaves `beta` untouched; `kappa = 0` (average
    /// reinforcement, i.e. weighted fictitious play) rescales it to
    /// `beta * alpha`.
    pub fn effective_beta(&self) -> f64 {
        self.beta * (1.0 - (1.0 - self.alpha) * (1.0 - self.kappa))
    }

    /// Steady-state experience `1 / (1 - (1-alpha)(1-kappa))`.
    pub fn experience_fixed_point(&self) -> Result<f64, DynamicsError> {
        let rate = (1.0 - self.alpha) * (1.0 - self.kappa);
        if rate >= 1.0 {
            return Err(DynamicsError::NoFixedPoint);
        }
        Ok(1.0 / (1.0 - rate))
    }
}

/// Mixed-strategy profile in probability coordinates, `(x, y) in (0,1)^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedState {
    pub x: f64,
    pub y: f64,
}

/// The same profile in logit coordinates, anywhere in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogitState {
    pub x: f64,
    pub y: f64,
}

impl MixedState {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub const CENTER: MixedState = MixedState { x: 0.5, y: 0.5 };

    fn check_domain(&self) -> Result<(), DynamicsError> {
        if self.x > 0.0 && self.x < 1.0 && self.y > 0.0 && self.y < 1.0 {
            Ok(())
        } else {
            Err(DynamicsError::Domain { x: self.x, y: self.y })
        }
    }

    /// Half-log-odds transform; fails on the boundary of the square.
    pub fn to_logit(self) -> Result<LogitState, DynamicsError> {
        self.check_domain()?;
        Ok(LogitState { x: half_log_odds(self.x), y: half_log_odds(self.y) })
    }
}

impl LogitState {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub const ORIGIN: LogitState = LogitState { x: 0.0, y: 0.0 };

    /// Inverse transform `x = 1/(1 + exp(-2 x~))`.
    ///
    /// Evaluated on the branch that avoids cancellation and clamped into the
    /// open interval, so finite inputs never map to exactly 0 or 1.
    pub fn to_mixed(self) -> MixedState {
        MixedState { x: logistic2(self.x), y: logistic2(self.y) }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

fn half_log_odds(x: f64) -> f64 {
    // ln(x) - ln(1-x) stays accurate at both ends of (0,1).
    0.5 * (x.ln() - (1.0 - x).ln())
}

/// Largest f64 strictly below 1.
const ONE_MINUS_ULP: f64 = 1.0 - f64::EPSILON / 2.0;

fn logistic2(t: f64) -> f64 {
    let x = if t >= 0.0 {
        1.0 / (1.0 + (-2.0 * t).exp())
    } else {
        let e = (2.0 * t).exp();
        e / (1.0 + e)
    };
    x.clamp(f64::MIN_POSITIVE, ONE_MINUS_ULP)
}

/// One learning step in logit coordinates.
pub fn step_logit(s: LogitState, gp: &GameParams, cfg: &LearningConfig) -> LogitState {
    let keep = 1.0 - cfg.alpha;
    let be = cfg.effective_beta();
    LogitState {
        x: keep * s.x + be * (gp.row_coord * s.y.tanh() + gp.row_dom),
        y: keep * s.y + be * (gp.col_coord * s.x.tanh() + gp.col_dom),
    }
}

/// Expected payoffs of Row's two strategies against Column mixing `y`.
pub fn expected_payoffs_row(p: &PayoffMatrix, y: f64) -> (f64, f64) {
    (p.a * y + p.b * (1.0 - y), p.c * y + p.d * (1.0 - y))
}

/// Expected payoffs of Column's two strategies against Row mixing `x`.
pub fn expected_payoffs_col(p: &PayoffMatrix, x: f64) -> (f64, f64) {
    (p.e * x + p.f * (1.0 - x), p.g * x + p.h * (1.0 - x))
}

/// One learning step in probability coordinates,
/// `x' = x^(1-alpha) exp(beta_eff P1) / Z`.
///
/// Evaluated in log space with the larger weight factored out, so it stays
/// finite arbitrarily close to the boundary.
pub fn step_mixed(
    s: MixedState,
    p: &PayoffMatrix,
    cfg: &LearningConfig,
) -> Result<MixedState, DynamicsError> {
    s.check_domain()?;
    let keep = 1.0 - cfg.alpha;
    let be = cfg.effective_beta();
    let half = |q: f64, pi_kept: f64, pi_other: f64| -> f64 {
        let w1 = keep * q.ln() + be * pi_kept;
        let w2 = keep * (1.0 - q).ln() + be * pi_other;
        let m = w1.max(w2);
        let z1 = (w1 - m).exp();
        let z2 = (w2 - m).exp();
        (z1 / (z1 + z2)).clamp(f64::MIN_POSITIVE, ONE_MINUS_ULP)
    };
    let (r1, r2) = expected_payoffs_row(p, s.y);
    let (c1, c2) = expected_payoffs_col(p, s.x);
    Ok(MixedState { x: half(s.x, r1, r2), y: half(s.y, c1, c2) })
}

/// Orbit of the logit map: `transient` unrecorded steps, then `steps + 1`
/// recorded states including the first post-transient one.
pub fn trajectory_logit(
    start: LogitState,
    steps: usize,
    transient: usize,
    gp: &GameParams,
    cfg: &LearningConfig,
) -> Vec<LogitState> {
    let mut s = start;
    for _ in 0..transient {
        s = step_logit(s, gp, cfg);
    }
    let mut orbit = Vec::with_capacity(steps + 1);
    orbit.push(s);
    for _ in 0..steps {
        s = step_logit(s, gp, cfg);
        orbit.push(s);
    }
    orbit
}

/// Orbit of the probability-coordinate map; same recording convention.
pub fn trajectory_mixed(
    start: MixedState,
    steps: usize,
    transient: usize,
    p: &PayoffMatrix,
    cfg: &LearningConfig,
) -> Result<Vec<MixedState>, DynamicsError> {
    let mut s = start;
    for _ in 0..transient {
        s = step_mixed(s, p, cfg)?;
    }
    let mut orbit = Vec::with_capacity(steps + 1);
    orbit.push(s);
    for _ in 0..steps {
        s = step_mixed(s, p, cfg)?;
        orbit.push(s);
    }
    Ok(orbit)
}
