//! Finite-sample EWA play at the attraction level, plus move-sequence
//! diagnostics.
//!
//! Each round both players draw a batch of `T` moves from their current
//! logit mix, observe the opponent's empirical frequencies, and update their
//! attractions
//!
//! ```text
//! Q_i <- (1-alpha) Q_i + [1 - (1-alpha)(1-kappa)] w_i  P_i
//! ```
//!
//! where `P_i` is the payoff of strategy `i` against the opponent's batch and
//! `w_i = delta + (1-delta) I(i = own move)`. The `T -> inf` limit recovers
//! the deterministic map; `T = 1` is real sampled play. For `T > 1` the
//! forgone-payoff weight is not well defined, so `delta` is forced to 1.

use crate::dynamics::{LearningConfig, LogitState, MixedState};
use crate::game::PayoffMatrix;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StochasticError {
    #[error("move sequence has zero variance; autocorrelation undefined")]
    ZeroVariance,
    #[error("max lag {max_lag} too large for sequence of length {len}")]
    LagTooLarge { max_lag: usize, len: usize },
    #[error("cannot convert {x} into an attraction with beta = {beta}")]
    BadInitial { x: f64, beta: f64 },
}

/// Per-player attraction (propensity) levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttractionState {
    pub q_row: [f64; 2],
    pub q_col: [f64; 2],
}

impl AttractionState {
    pub fn new(q_row: [f64; 2], q_col: [f64; 2]) -> Self {
        Self { q_row, q_col }
    }

    /// Zero attractions: both players mix uniformly.
    pub fn zero() -> Self {
        Self::new([0.0, 0.0], [0.0, 0.0])
    }

    /// Attractions reproducing a given mixed state, in the gauge `Q_2 = 0`.
    pub fn from_mixed(s: MixedState, beta: f64) -> Result<Self, StochasticError> {
        if s == MixedState::CENTER {
            return Ok(Self::zero());
        }
        let logit = s.to_logit().map_err(|_| StochasticError::BadInitial { x: s.x, beta })?;
        if beta <= 0.0 {
            return Err(StochasticError::BadInitial { x: s.x, beta });
        }
        Ok(Self::new([2.0 * logit.x / beta, 0.0], [2.0 * logit.y / beta, 0.0]))
    }

    /// The mixed strategy induced by the logit rule at intensity `beta`.
    pub fn mixed(&self, beta: f64) -> MixedState {
        self.logit(beta).to_mixed()
    }

    /// Logit coordinates are linear in the attraction differences, so they
    /// are exact even where the probabilities saturate.
    pub fn logit(&self, beta: f64) -> LogitState {
        LogitState::new(
            beta * (self.q_row[0] - self.q_row[1]) / 2.0,
            beta * (self.q_col[0] - self.q_col[1]) / 2.0,
        )
    }
}

/// Stable two-entry softmax.
pub fn logit_mix(q: &AttractionState, beta: f64) -> MixedState {
    q.mixed(beta)
}

/// Realized pure strategies, one entry per round played.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MoveSequence {
    pub row: Vec<u8>,
    pub col: Vec<u8>,
}

impl MoveSequence {
    pub fn len(&self) -> usize {
        self.row.len()
    }

    pub fn is_empty(&self) -> bool {
        self.row.is_empty()
    }

    /// Sample autocorrelation of both players' move sequences at lags
    /// `1..=max_lag`.
    pub fn autocorrelation(
        &self,
        max_lag: usize,
    ) -> Result<(Vec<f64>, Vec<f64>), StochasticError> {
        Ok((
            autocorrelation(&self.row, max_lag)?,
            autocorrelation(&self.col, max_lag)?,
        ))
    }
}

/// One batch of play: draw `T` moves per player, update the attractions,
/// return the new state and the realized moves.
pub fn step_stochastic(
    q: &AttractionState,
    p: &PayoffMatrix,
    cfg: &LearningConfig,
    rng: &mut impl Rng,
) -> (AttractionState, MoveSequence) {
    let t = cfg.batch.unwrap_or(1).max(1);
    let mix = q.mixed(cfg.beta);
    let mut moves = MoveSequence {
        row: Vec::with_capacity(t as usize),
        col: Vec::with_capacity(t as usize),
    };
    let mut row_first = 0u32;
    let mut col_first = 0u32;
    for _ in 0..t {
        let r = if rng.random_bool(mix.x) { 1u8 } else { 2u8 };
        let c = if rng.random_bool(mix.y) { 1u8 } else { 2u8 };
        row_first += (r == 1) as u32;
        col_first += (c == 1) as u32;
        moves.row.push(r);
        moves.col.push(c);
    }
    // Opponent's empirical frequency of strategy 1; for T = 1 this is the
    // realized move itself.
    let y_hat = col_first as f64 / t as f64;
    let x_hat = row_first as f64 / t as f64;
    // delta only makes sense at T = 1, where "own move" is unambiguous.
    let delta = if t == 1 { cfg.delta } else { 1.0 };
    let gain = 1.0 - (1.0 - cfg.alpha) * (1.0 - cfg.kappa);
    let keep = 1.0 - cfg.alpha;

    let weight = |i: u8, own: u8| delta + (1.0 - delta) * f64::from(i == own);
    let own_row = moves.row[0];
    let own_col = moves.col[0];
    let (r1, r2) = crate::dynamics::expected_payoffs_row(p, y_hat);
    let (c1, c2) = crate::dynamics::expected_payoffs_col(p, x_hat);
    let next = AttractionState::new(
        [
            keep * q.q_row[0] + gain * weight(1, own_row) * r1,
            keep * q.q_row[1] + gain * weight(2, own_row) * r2,
        ],
        [
            keep * q.q_col[0] + gain * weight(1, own_col) * c1,
            keep * q.q_col[1] + gain * weight(2, own_col) * c2,
        ],
    );
    (next, moves)
}

/// A full sampled-play run: the mixed-strategy trajectory (including the
/// initial state) and every realized move, reproducible from the seed.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticRun {
    pub states: Vec<MixedState>,
    pub moves: MoveSequence,
}

pub fn simulate_stochastic(
    q0: &AttractionState,
    p: &PayoffMatrix,
    cfg: &LearningConfig,
    n: usize,
    seed: u64,
) -> StochasticRun {
    let mut rng = crate::rng::stream(seed, 0);
    let mut q = *q0;
    let mut states = Vec::with_capacity(n + 1);
    states.push(q.mixed(cfg.beta));
    let mut moves = MoveSequence::default();
    for _ in 0..n {
        let (next, batch) = step_stochastic(&q, p, cfg, &mut rng);
        moves.row.extend_from_slice(&batch.row);
        moves.col.extend_from_slice(&batch.col);
        q = next;
        states.push(q.mixed(cfg.beta));
    }
    StochasticRun { states, moves }
}

/// Biased sample autocorrelation of a move sequence at lags `1..=max_lag`.
///
/// Moves are encoded strategy 1 -> +1, strategy 2 -> -1, the sample mean is
/// removed, and each lag is normalized by the lag-0 autocovariance.
pub fn autocorrelation(moves: &[u8], max_lag: usize) -> Result<Vec<f64>, StochasticError> {
    let n = moves.len();
    if max_lag >= n {
        return Err(StochasticError::LagTooLarge { max_lag, len: n });
    }
    let coded: Vec<f64> = moves.iter().map(|&m| if m == 1 { 1.0 } else { -1.0 }).collect();
    let mean = coded.iter().sum::<f64>() / n as f64;
    let var: f64 = coded.iter().map(|v| (v - mean) * (v - mean)).sum();
    if var == 0.0 {
        return Err(StochasticError::ZeroVariance);
    }
    let mut out = Vec::with_capacity(max_lag);
    for lag in 1..=max_lag {
        let cov: f64 = (0..n - lag)
            .map(|i| (coded[i] - mean) * (coded[i + lag] - mean))
            .sum();
        out.push(cov / var);
    }
    Ok(out)
}
