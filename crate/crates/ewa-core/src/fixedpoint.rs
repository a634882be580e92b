//! Fixed points of the logit-coordinate learning map: location, labelling,
//! Jacobians, eigenvalues and closed-form instability thresholds.
//!
//! Eliminating `y~` from the two fixed-point equations leaves one scalar
//! self-consistency condition
//!
//! ```text
//! x~ = (be/alpha) [ A tanh( (be/alpha) (C tanh x~ + D) ) + B ]
//! ```
//!
//! whose right-hand side is bounded and monotone, so bracketing plus
//! bisection finds every root. Each root induces its partner coordinate
//! `y~ = (be/alpha)(C tanh x~ + D)`, which keeps the two components of a
//! fixed point correctly coupled (both central or both lateral).

use crate::dynamics::{LearningConfig, LogitState};
use crate::game::{GameParams, PayoffMatrix};
use thiserror::Error;

/// Tolerance around `|lambda| = 1` treated as marginal.
pub const STABILITY_TOL: f64 = 1e-9;

/// Width floor for the golden-section residual-minimum search.
const ROOT_TOL: f64 = 1e-13;

/// Number of scan points over the bracketing interval.
const SCAN_POINTS: usize = 20_000;

#[derive(Debug, Error, PartialEq)]
pub enum FixedPointError {
    /// With `alpha = 0` the self-consistency map is undefined (the
    /// fictitious-play limit is handled by sweeping small `alpha > 0`).
    #[error("fixed-point analysis requires alpha > 0")]
    AlphaZero,
    /// The pitchfork expansion only applies above the bifurcation.
    #[error("no lateral branch below the bifurcation (r = {0})")]
    NotApplicable(f64),
}

/// Which solution branch a fixed point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// The only fixed point.
    Unique,
    /// Middle root of a three-root configuration.
    Central,
    /// Outer root of a three-root configuration.
    Lateral,
    /// Tangential (double) root at an exact bifurcation point.
    Boundary,
}

impl Branch {
    pub fn label(&self) -> &'static str {
        match self {
            Branch::Unique => "unique",
            Branch::Central => "central",
            Branch::Lateral => "lateral",
            Branch::Boundary => "boundary",
        }
    }
}

/// Eigenvalues of the 2x2 Jacobian: a real pair when `AC >= 0`, a complex
/// conjugate pair when `AC < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Eigenvalues {
    Real { plus: f64, minus: f64 },
    ComplexPair { re: f64, im: f64 },
}

impl Eigenvalues {
    pub fn spectral_radius(&self) -> f64 {
        match *self {
            Eigenvalues::Real { plus, minus } => plus.abs().max(minus.abs()),
            Eigenvalues::ComplexPair { re, im } => re.hypot(im),
        }
    }
}

/// A located fixed point with its stability diagnosis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointReport {
    /// Logit coordinates `(x~*, y~*)`.
    pub logit: (f64, f64),
    /// Probability coordinates `(x*, y*)`.
    pub mixed: (f64, f64),
    pub branch: Branch,
    pub eigenvalues: Eigenvalues,
    pub spectral_radius: f64,
    /// Spectral radius at most `1 + STABILITY_TOL`.
    pub stable: bool,
    /// Spectral radius within `STABILITY_TOL` of 1.
    pub marginal: bool,
}

/// Symmetric-game self-consistency map
/// `psi(x~) = ratio [A tanh(ratio (A tanh x~ + B)) + B]` with
/// `ratio = beta_eff / alpha`.
pub fn psi(x: f64, coord: f64, dom: f64, ratio: f64) -> f64 {
    ratio * (coord * (ratio * (coord * x.tanh() + dom)).tanh() + dom)
}

/// Asymmetric self-consistency map for the Row coordinate.
pub fn composed_map(x: f64, gp: &GameParams, ratio: f64) -> f64 {
    let partner = ratio * (gp.col_coord * x.tanh() + gp.col_dom);
    ratio * (gp.row_coord * partner.tanh() + gp.row_dom)
}

/// Jacobian of the logit map at a point, `[[1-alpha, A be / cosh^2 y~],
/// [C be / cosh^2 x~, 1-alpha]]`.
pub fn jacobian_logit(at: (f64, f64), gp: &GameParams, cfg: &LearningConfig) -> [[f64; 2]; 2] {
    let keep = 1.0 - cfg.alpha;
    let be = cfg.effective_beta();
    let sech2 = |t: f64| {
        let c = t.cosh();
        1.0 / (c * c)
    };
    [
        [keep, gp.row_coord * be * sech2(at.1)],
        [gp.col_coord * be * sech2(at.0), keep],
    ]
}

/// Closed-form eigenvalues at a point and the stability verdict.
///
/// `lambda = 1 - alpha +- be sqrt(AC) / (cosh x~ cosh y~)` for `AC >= 0`,
/// with `sqrt(AC)` turning imaginary when `AC < 0`.
pub fn stability(at: (f64, f64), gp: &GameParams, cfg: &LearningConfig) -> (Eigenvalues, bool) {
    let keep = 1.0 - cfg.alpha;
    let be = cfg.effective_beta();
    let ac = gp.row_coord * gp.col_coord;
    let denom = at.0.cosh() * at.1.cosh();
    let shift = be * ac.abs().sqrt() / denom;
    let eig = if ac >= 0.0 {
        Eigenvalues::Real { plus: keep + shift, minus: keep - shift }
    } else {
        Eigenvalues::ComplexPair { re: keep, im: shift }
    };
    let stable = eig.spectral_radius() <= 1.0 + STABILITY_TOL;
    (eig, stable)
}

/// Whether the symmetric `B = 0` map has lateral roots: `(be/alpha)|A| > 1`,
/// written cross-multiplied so `alpha = 0` needs no special case.
pub fn lateral_roots_exist(coord: f64, cfg: &LearningConfig) -> bool {
    cfg.effective_beta() * coord.abs() > cfg.alpha
}

/// Third-order estimate of the squared lateral amplitude just above the
/// pitchfork, `(x~*)^2 = 3 (r^2 - 1) / (r^2 (1 + r^2))` with
/// `r = (be/alpha)|A|`.
pub fn pitchfork_amplitude_sq(coord: f64, cfg: &LearningConfig) -> Result<f64, FixedPointError> {
    if cfg.alpha == 0.0 {
        return Err(FixedPointError::AlphaZero);
    }
    let r = cfg.effective_beta() * coord.abs() / cfg.alpha;
    if r < 1.0 {
        return Err(FixedPointError::NotApplicable(r));
    }
    let r2 = r * r;
    Ok(3.0 * (r2 - 1.0) / (r2 * (1.0 + r2)))
}

/// Coordination level at which the central fixed point of an antisymmetric
/// game (`C = -A`, `B = D = 0`) turns unstable:
/// `A* = sqrt(2 alpha - alpha^2) / beta_eff`.
pub fn antisym_instability_threshold(cfg: &LearningConfig) -> f64 {
    (2.0 * cfg.alpha - cfg.alpha * cfg.alpha).sqrt() / cfg.effective_beta()
}

/// Probability-coordinate Jacobian of the learning map, evaluated exactly.
///
/// Near the corners the diagonal entries scale like `(x(1-x))^-alpha`, so
/// pure-strategy profiles are infinitely unstable for any `alpha > 0`.
pub fn jacobian_mixed(
    x: f64,
    y: f64,
    p: &PayoffMatrix,
    cfg: &LearningConfig,
) -> Result<[[f64; 2]; 2], crate::dynamics::DynamicsError> {
    if !(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0) {
        return Err(crate::dynamics::DynamicsError::Domain { x, y });
    }
    let alpha = cfg.alpha;
    let be = cfg.effective_beta();
    // Row block: phi = advantage of Row's strategy 1 given Column mixes y.
    let row = {
        let phi = y * (p.a - p.b - p.c + p.d) + p.b - p.d;
        let expf = (be * phi).exp();
        let denom = x * (1.0 - x).powf(alpha) * expf + (1.0 - x) * x.powf(alpha);
        let d2 = denom * denom;
        let xq = x * (1.0 - x);
        [
            (1.0 - alpha) * xq.powf(alpha) * expf / d2,
            be * xq.powf(alpha + 1.0) * (p.a - p.b - p.c + p.d) * expf / d2,
        ]
    };
    let col = {
        let phi = x * (p.e - p.f - p.g + p.h) + p.f - p.h;
        let expf = (be * phi).exp();
        let denom = y * (1.0 - y).powf(alpha) * expf + (1.0 - y) * y.powf(alpha);
        let d2 = denom * denom;
        let yq = y * (1.0 - y);
        [
            be * yq.powf(alpha + 1.0) * (p.e - p.f - p.g + p.h) * expf / d2,
            (1.0 - alpha) * yq.powf(alpha) * expf / d2,
        ]
    };
    Ok([[row[0], row[1]], [col[0], col[1]]])
}

/// The mixed-strategy box rule: both probabilities in `(0.3, 0.7)`.
pub fn in_mixed_box(x: f64, y: f64) -> bool {
    x > 0.3 && x < 0.7 && y > 0.3 && y < 0.7
}

/// Locate every fixed point of the logit map and diagnose its stability.
///
/// Scans `[-R, R]` with `R = (be/alpha)(|A| + |B|) + 1` (a hard bound on any
/// root), brackets sign changes of `x - composed_map(x)` and bisects each
/// bracket down to adjacent floats, leaving residuals well below `1e-10`.
/// Returns one or three transversal roots; an exact tangency contributes an
/// extra root flagged [`Branch::Boundary`].
pub fn find_fixed_points(
    gp: &GameParams,
    cfg: &LearningConfig,
) -> Result<Vec<FixedPointReport>, FixedPointError> {
    if cfg.alpha == 0.0 {
        return Err(FixedPointError::AlphaZero);
    }
    let ratio = cfg.effective_beta() / cfg.alpha;
    let radius = ratio * (gp.row_coord.abs() + gp.row_dom.abs()) + 1.0;
    let f = |x: f64| composed_map(x, gp, ratio) - x;

    let mut roots: Vec<f64> = Vec::new();
    let mut tangent: Vec<f64> = Vec::new();
    let step = 2.0 * radius / SCAN_POINTS as f64;
    let grid_val = |i: usize| -radius + step * i as f64;
    let mut prev_x = grid_val(0);
    let mut prev_f = f(prev_x);
    let mut values = Vec::with_capacity(SCAN_POINTS + 1);
    values.push(prev_f);
    for i in 1..=SCAN_POINTS {
        let x = grid_val(i);
        let fx = f(x);
        values.push(fx);
        if prev_f == 0.0 {
            roots.push(prev_x);
        } else if prev_f * fx < 0.0 {
            roots.push(bisect(&f, prev_x, x));
        }
        prev_x = x;
        prev_f = fx;
    }
    if *values.last().unwrap() == 0.0 {
        roots.push(radius);
    }

    // Residual-minimum fallback for tangential roots: a local minimum of |f|
    // that dips to zero without a sign change.
    for i in 1..SCAN_POINTS {
        let (fa, fb, fc) = (values[i - 1], values[i], values[i + 1]);
        if fb.abs() <= fa.abs() && fb.abs() <= fc.abs() && fb != 0.0 {
            let x = refine_abs_min(&f, grid_val(i - 1), grid_val(i + 1));
            if f(x).abs() < 1e-9
                && !roots.iter().any(|r| (r - x).abs() < 10.0 * step)
                && !tangent.iter().any(|r| (r - x).abs() < 10.0 * step)
            {
                tangent.push(x);
            }
        }
    }

    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);

    let n = roots.len();
    let mut reports: Vec<FixedPointReport> = roots
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let branch = match n {
                1 => Branch::Unique,
                3 => {
                    if i == 1 {
                        Branch::Central
                    } else {
                        Branch::Lateral
                    }
                }
                _ => Branch::Boundary,
            };
            build_report(x, branch, gp, cfg, ratio)
        })
        .collect();
    for &x in &tangent {
        reports.push(build_report(x, Branch::Boundary, gp, cfg, ratio));
    }
    reports.sort_by(|a, b| a.logit.0.total_cmp(&b.logit.0));
    Ok(reports)
}

fn build_report(
    x: f64,
    branch: Branch,
    gp: &GameParams,
    cfg: &LearningConfig,
    ratio: f64,
) -> FixedPointReport {
    let y = ratio * (gp.col_coord * x.tanh() + gp.col_dom);
    let (eigenvalues, stable) = stability((x, y), gp, cfg);
    let rho = eigenvalues.spectral_radius();
    let mixed = LogitState::new(x, y).to_mixed();
    FixedPointReport {
        logit: (x, y),
        mixed: (mixed.x, mixed.y),
        branch,
        eigenvalues,
        spectral_radius: rho,
        stable,
        marginal: (rho - 1.0).abs() <= STABILITY_TOL,
    }
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    // Run to adjacent floats: steep crossings need the full precision for
    // the residual bound to hold.
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return mid;
        }
        if flo * fmid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    0.5 * (lo + hi)
}

fn refine_abs_min(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    // Golden-section search on |f|.
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    for _ in 0..120 {
        if f(c).abs() < f(d).abs() {
            hi = d;
        } else {
            lo = c;
        }
        c = hi - INV_PHI * (hi - lo);
        d = lo + INV_PHI * (hi - lo);
        if hi - lo < ROOT_TOL {
            break;
        }
    }
    0.5 * (lo + hi)
}
