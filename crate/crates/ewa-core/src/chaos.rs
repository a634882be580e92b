//! Lyapunov spectra, Kaplan-Yorke dimension, bifurcation scans and exponent
//! grids for the learning map.
//!
//! The spectrum is estimated by propagating an orthonormal tangent frame
//! through the logit-coordinate Jacobian along the orbit and periodically
//! re-orthonormalizing it (modified Gram-Schmidt), accumulating the log
//! stretching factors. The diffeomorphism to probability coordinates leaves
//! the exponents unchanged, so all tangent work happens in logit coordinates.

use crate::dynamics::{step_logit, LearningConfig, LogitState, MixedState};
use crate::fixedpoint::jacobian_logit;
use crate::game::{GameParams, PayoffMatrix};
use crate::parallel;
use crate::stochastic::{step_stochastic, AttractionState};

/// Default orbit length after the transient.
pub const DEFAULT_STEPS: usize = 100_000;
/// Default transient discarded before accumulating.
pub const DEFAULT_TRANSIENT: usize = 10_000;
/// Default re-orthonormalization interval.
pub const DEFAULT_RENORM: usize = 10;

/// Estimated Lyapunov spectrum of one orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovResult {
    /// Largest per-step log stretching rate (natural log).
    pub lambda1: f64,
    /// Smaller exponent.
    pub lambda2: f64,
    pub n_steps: usize,
    pub transient: usize,
    pub renorm_interval: usize,
    /// Kaplan-Yorke dimension; `None` if the spectrum is not finite.
    pub kaplan_yorke: Option<f64>,
}

/// How the orbit underlying a spectrum or scan is generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitSource {
    Deterministic,
    /// Sampled play; the Jacobian of the smooth map is evaluated along the
    /// realized noisy trajectory (frozen-noise convention).
    Stochastic { seed: u64 },
}

/// Which learning parameter a bifurcation scan varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanAxis {
    Alpha,
    Beta,
}

impl ScanAxis {
    pub fn label(&self) -> &'static str {
        match self {
            ScanAxis::Alpha => "alpha",
            ScanAxis::Beta => "beta",
        }
    }

    pub fn apply(&self, cfg: &LearningConfig, value: f64) -> LearningConfig {
        let mut out = *cfg;
        match self {
            ScanAxis::Alpha => out.alpha = value,
            ScanAxis::Beta => out.beta = value,
        }
        out
    }
}

/// Kaplan-Yorke dimension of a 2-D map from its two exponents.
pub fn kaplan_yorke(lambda1: f64, lambda2: f64) -> f64 {
    if lambda1 <= 0.0 {
        0.0
    } else if lambda1 + lambda2 < 0.0 {
        1.0 + lambda1 / lambda2.abs()
    } else {
        2.0
    }
}

/// Kahan-compensated accumulator for the log-norm sums.
#[derive(Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

struct TangentFrame {
    v1: [f64; 2],
    v2: [f64; 2],
    log1: Compensated,
    log2: Compensated,
}

impl TangentFrame {
    fn new() -> Self {
        Self {
            v1: [1.0, 0.0],
            v2: [0.0, 1.0],
            log1: Compensated::default(),
            log2: Compensated::default(),
        }
    }

    fn push(&mut self, j: [[f64; 2]; 2]) {
        self.v1 = mat_vec(j, self.v1);
        self.v2 = mat_vec(j, self.v2);
    }

    /// Modified Gram-Schmidt QR step; diagonal kept positive by construction.
    fn renormalize(&mut self) {
        let r11 = norm(self.v1);
        self.v1 = [self.v1[0] / r11, self.v1[1] / r11];
        let proj = self.v2[0] * self.v1[0] + self.v2[1] * self.v1[1];
        self.v2 = [self.v2[0] - proj * self.v1[0], self.v2[1] - proj * self.v1[1]];
        let r22 = norm(self.v2);
        self.v2 = [self.v2[0] / r22, self.v2[1] / r22];
        self.log1.add(r11.ln());
        self.log2.add(r22.ln());
    }

    fn spectrum(&self, n: usize) -> (f64, f64) {
        let a = self.log1.sum / n as f64;
        let b = self.log2.sum / n as f64;
        (a.max(b), a.min(b))
    }
}

fn mat_vec(j: [[f64; 2]; 2], v: [f64; 2]) -> [f64; 2] {
    [j[0][0] * v[0] + j[0][1] * v[1], j[1][0] * v[0] + j[1][1] * v[1]]
}

fn norm(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

fn result_from(frame: TangentFrame, n: usize, transient: usize, renorm: usize) -> LyapunovResult {
    let (l1, l2) = frame.spectrum(n);
    let ky = (l1.is_finite() && l2.is_finite()).then(|| kaplan_yorke(l1, l2));
    LyapunovResult {
        lambda1: l1,
        lambda2: l2,
        n_steps: n,
        transient,
        renorm_interval: renorm,
        kaplan_yorke: ky,
    }
}

/// Lyapunov spectrum along the deterministic orbit started at `start`.
pub fn lyapunov_deterministic(
    start: LogitState,
    gp: &GameParams,
    cfg: &LearningConfig,
    n: usize,
    transient: usize,
    renorm_interval: usize,
) -> LyapunovResult {
    let renorm = renorm_interval.max(1);
    let mut s = start;
    for _ in 0..transient {
        s = step_logit(s, gp, cfg);
    }
    let mut frame = TangentFrame::new();
    let mut since = 0;
    for _ in 0..n {
        frame.push(jacobian_logit((s.x, s.y), gp, cfg));
        s = step_logit(s, gp, cfg);
        since += 1;
        if since == renorm {
            frame.renormalize();
            since = 0;
        }
    }
    if since > 0 {
        frame.renormalize();
    }
    result_from(frame, n, transient, renorm)
}

/// Lyapunov spectrum along a sampled-play orbit (frozen-noise convention):
/// the stochastic trajectory is generated first and the smooth map's
/// Jacobian is evaluated along it.
pub fn lyapunov_stochastic(
    start: MixedState,
    p: &PayoffMatrix,
    cfg: &LearningConfig,
    n: usize,
    transient: usize,
    renorm_interval: usize,
    seed: u64,
) -> LyapunovResult {
    let renorm = renorm_interval.max(1);
    let gp = p.params();
    let mut rng = crate::rng::stream(seed, 0);
    let mut q = AttractionState::from_mixed(start, cfg.beta)
        .unwrap_or_else(|_| AttractionState::zero());
    for _ in 0..transient {
        q = step_stochastic(&q, p, cfg, &mut rng).0;
    }
    let mut frame = TangentFrame::new();
    let mut since = 0;
    for _ in 0..n {
        let s = q.logit(cfg.beta);
        frame.push(jacobian_logit((s.x, s.y), &gp, cfg));
        q = step_stochastic(&q, p, cfg, &mut rng).0;
        since += 1;
        if since == renorm {
            frame.renormalize();
            since = 0;
        }
    }
    if since > 0 {
        frame.renormalize();
    }
    result_from(frame, n, transient, renorm)
}

/// Dispatch on the orbit source.
#[allow(clippy::too_many_arguments)]
pub fn lyapunov_spectrum(
    start: MixedState,
    p: &PayoffMatrix,
    cfg: &LearningConfig,
    n: usize,
    transient: usize,
    renorm_interval: usize,
    source: OrbitSource,
) -> Result<LyapunovResult, crate::dynamics::DynamicsError> {
    match source {
        OrbitSource::Deterministic => {
            let s = start.to_logit()?;
            Ok(lyapunov_deterministic(s, &p.params(), cfg, n, transient, renorm_interval))
        }
        OrbitSource::Stochastic { seed } => {
            Ok(lyapunov_stochastic(start, p, cfg, n, transient, renorm_interval, seed))
        }
    }
}

/// Bifurcation scan: for each of `n_points` parameter values on `range`,
/// discard `n_transient` steps from `start` and record `n_record` values of
/// Row's probability `x`.
#[allow(clippy::too_many_arguments)]
pub fn bifurcation_scan(
    p: &PayoffMatrix,
    cfg_base: &LearningConfig,
    axis: ScanAxis,
    range: (f64, f64),
    n_points: usize,
    n_transient: usize,
    n_record: usize,
    start: MixedState,
    source: OrbitSource,
) -> Result<Vec<(f64, Vec<f64>)>, crate::dynamics::DynamicsError> {
    let gp = p.params();
    let start_logit = start.to_logit()?;
    let values = linspace(range, n_points);
    let mut out = Vec::with_capacity(values.len());
    for (idx, value) in values.into_iter().enumerate() {
        let cfg = axis.apply(cfg_base, value);
        let mut recorded = Vec::with_capacity(n_record);
        match source {
            OrbitSource::Deterministic => {
                let mut s = start_logit;
                for _ in 0..n_transient {
                    s = step_logit(s, &gp, &cfg);
                }
                for _ in 0..n_record {
                    s = step_logit(s, &gp, &cfg);
                    recorded.push(s.to_mixed().x);
                }
            }
            OrbitSource::Stochastic { seed } => {
                let mut rng = crate::rng::stream(seed, idx as u64);
                let mut q = AttractionState::from_mixed(start, cfg.beta)
                    .unwrap_or_else(|_| AttractionState::zero());
                for _ in 0..n_transient {
                    q = step_stochastic(&q, p, &cfg, &mut rng).0;
                }
                for _ in 0..n_record {
                    q = step_stochastic(&q, p, &cfg, &mut rng).0;
                    recorded.push(q.mixed(cfg.beta).x);
                }
            }
        }
        out.push((value, recorded));
    }
    Ok(out)
}

/// Largest-Lyapunov-exponent grid over `(A, B)` for the antisymmetric family
/// `C = -A`, `D = -B`; entry `[i][j]` is the exponent at
/// `(a_values[i], b_values[j])`.
#[allow(clippy::too_many_arguments)]
pub fn lle_grid(
    a_values: &[f64],
    b_values: &[f64],
    cfg: &LearningConfig,
    n: usize,
    transient: usize,
    renorm_interval: usize,
    start: LogitState,
    threads: usize,
) -> Vec<Vec<f64>> {
    let nb = b_values.len();
    let flat = parallel::map_indexed(a_values.len() * nb, threads, |k| {
        let gp = GameParams::antisymmetric(a_values[k / nb], b_values[k % nb]);
        lyapunov_deterministic(start, &gp, cfg, n, transient, renorm_interval).lambda1
    });
    flat.chunks(nb).map(<[f64]>::to_vec).collect()
}

/// Evenly spaced values covering `[range.0, range.1]`.
pub fn linspace(range: (f64, f64), n: usize) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![range.0];
    }
    let step = (range.1 - range.0) / (n - 1) as f64;
    (0..n).map(|i| range.0 + step * i as f64).collect()
}
