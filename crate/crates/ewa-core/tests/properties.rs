//! Randomized cross-module invariants: classification against brute-force
//! best-response enumeration, reduction invariance, parameter-based class
//! predictions, coordinate-conjugacy of the two map implementations, and the
//! structure of the fixed-point sets.

use ewa_core::dynamics::{step_logit, step_mixed, LearningConfig, MixedState};
use ewa_core::fixedpoint::{
    antisym_instability_threshold, find_fixed_points, jacobian_logit, Branch,
};
use ewa_core::game::{GameClass, GameParams, PayoffMatrix};
use rand::Rng;

fn random_matrix(rng: &mut impl Rng) -> PayoffMatrix {
    loop {
        let mut v = [0.0; 8];
        for slot in &mut v {
            *slot = rng.random_range(-5.0..5.0);
        }
        let p = PayoffMatrix::from_entries(v);
        if !p.is_degenerate() {
            return p;
        }
    }
}

/// Best-response cells enumerated directly from the eight payoffs, written
/// independently of the library's reduction-based route.
fn brute_force_pure_ne(p: &PayoffMatrix) -> Vec<(u8, u8)> {
    let mut cells = Vec::new();
    // (row, col): row best response compares within the column, column best
    // response within the row.
    if p.a > p.c && p.e > p.g {
        cells.push((1, 1));
    }
    if p.b > p.d && p.g > p.e {
        cells.push((1, 2));
    }
    if p.c > p.a && p.f > p.h {
        cells.push((2, 1));
    }
    if p.d > p.b && p.h > p.f {
        cells.push((2, 2));
    }
    cells.sort_unstable();
    cells
}

#[test]
fn classification_agrees_with_best_response_enumeration() {
    let mut rng = ewa_core::rng::stream(101, 0);
    for _ in 0..10_000 {
        let p = random_matrix(&mut rng);
        let cells = brute_force_pure_ne(&p);
        let class = p.classify().unwrap();
        match class {
            GameClass::Coordination => assert_eq!(cells, vec![(1, 1), (2, 2)]),
            GameClass::Anticoordination => assert_eq!(cells, vec![(1, 2), (2, 1)]),
            GameClass::Discoordination => assert!(cells.is_empty()),
            GameClass::DominanceSolvable(ne) => assert_eq!(cells, vec![ne]),
        }
        assert_eq!(p.pure_ne().unwrap(), cells);
    }
}

#[test]
fn reduction_preserves_equilibria_exactly() {
    let mut rng = ewa_core::rng::stream(102, 0);
    for _ in 0..10_000 {
        let p = random_matrix(&mut rng);
        let d = p.diagonal_form();
        assert_eq!(p.pure_ne().unwrap(), d.pure_ne().unwrap());
        assert_eq!(p.mixed_ne().unwrap(), d.mixed_ne().unwrap());
        assert_eq!(p.classify().unwrap(), d.classify().unwrap());
    }
}

#[test]
fn symmetric_games_split_on_coordination_vs_dominance() {
    let mut rng = ewa_core::rng::stream(103, 0);
    let mut checked = 0;
    while checked < 10_000 {
        let (a, b, c, d) = (
            rng.random_range(-5.0..5.0),
            rng.random_range(-5.0..5.0),
            rng.random_range(-5.0..5.0),
            rng.random_range(-5.0..5.0),
        );
        // Symmetric game: Column's payoff matrix is the transpose.
        let p = PayoffMatrix::new(a, b, c, d, a, b, c, d);
        if p.is_degenerate() {
            continue;
        }
        let gp = p.params();
        assert!((gp.row_coord - gp.col_coord).abs() < 1e-12);
        assert!((gp.row_dom - gp.col_dom).abs() < 1e-12);
        if gp.row_coord.abs() == gp.row_dom.abs() {
            continue;
        }
        let class = p.classify().unwrap();
        if gp.row_coord.abs() > gp.row_dom.abs() {
            if gp.row_coord > 0.0 {
                assert_eq!(class, GameClass::Coordination);
            } else {
                assert_eq!(class, GameClass::Anticoordination);
            }
        } else {
            assert!(matches!(class, GameClass::DominanceSolvable(_)));
        }
        checked += 1;
    }
}

#[test]
fn dominance_excess_forces_dominance_solvable() {
    let mut rng = ewa_core::rng::stream(104, 0);
    let mut checked = 0;
    while checked < 10_000 {
        let p = random_matrix(&mut rng);
        let gp = p.params();
        if gp.coordination().abs() >= gp.dominance() {
            continue;
        }
        assert!(
            matches!(p.classify().unwrap(), GameClass::DominanceSolvable(_)),
            "{p:?}"
        );
        checked += 1;
    }
}

#[test]
fn classification_invariances() {
    let mut rng = ewa_core::rng::stream(105, 0);
    for _ in 0..2_000 {
        let p = random_matrix(&mut rng);
        let class = p.classify().unwrap();
        // Constant shift of one player's payoffs.
        let shift = rng.random_range(-20.0..20.0);
        let shifted = PayoffMatrix::new(
            p.a + shift,
            p.b + shift,
            p.c + shift,
            p.d + shift,
            p.e,
            p.f,
            p.g,
            p.h,
        );
        assert_eq!(shifted.classify().unwrap(), class);
        // Positive rescaling of all payoffs.
        let scale = rng.random_range(0.01..50.0);
        let scaled = PayoffMatrix::from_entries(p.entries().map(|v| v * scale));
        assert_eq!(scaled.classify().unwrap(), class);
    }
}

#[test]
fn probability_and_logit_steps_are_conjugate() {
    let mut rng = ewa_core::rng::stream(106, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..1_000 {
        let p = random_matrix(&mut rng);
        let gp = p.params();
        let cfg = LearningConfig::new(
            rng.random_range(0.05..1.0),
            rng.random_range(0.05..1.5),
            rng.random_range(0.0..=1.0),
        );
        let mut s = MixedState::new(rng.random_range(0.05..0.95), rng.random_range(0.05..0.95));
        for _ in 0..100 {
            let via_mixed = step_mixed(s, &p, &cfg).unwrap();
            let logit_next = step_logit(s.to_logit().unwrap(), &gp, &cfg);
            let via_logit = logit_next.to_mixed();
            let dev = (via_mixed.x - via_logit.x)
                .abs()
                .max((via_mixed.y - via_logit.y).abs());
            worst = worst.max(dev);
            assert!(dev < 1e-10, "conjugacy broke: {dev:e} at {s:?} / {cfg:?}");
            s = via_logit;
        }
    }
    println!("worst per-step conjugacy deviation: {worst:e}");
}

#[test]
fn pitchfork_structure_below_and_above_onset() {
    let mut rng = ewa_core::rng::stream(107, 0);
    // Below onset: a unique stable fixed point.
    for _ in 0..1_000 {
        let alpha = rng.random_range(0.05..1.0);
        let r = rng.random_range(0.05..1.0);
        let coord: f64 =
            if rng.random_bool(0.5) { 1.0 } else { -1.0 } * rng.random_range(0.1..3.0);
        let cfg = LearningConfig::new(alpha, r * alpha / coord.abs(), 1.0);
        let fps = find_fixed_points(&GameParams::symmetric(coord, 0.0), &cfg).unwrap();
        assert_eq!(fps.len(), 1, "r={r} coord={coord}");
        assert!(fps[0].stable);
    }
    // Above onset: three fixed points, unstable centre, stable laterals.
    for _ in 0..1_000 {
        let alpha = rng.random_range(0.05..1.0);
        let r = 1.01 * 10f64.powf(rng.random_range(0.0..3.0));
        let coord: f64 =
            if rng.random_bool(0.5) { 1.0 } else { -1.0 } * rng.random_range(0.1..3.0);
        let cfg = LearningConfig::new(alpha, r * alpha / coord.abs(), 1.0);
        let fps = find_fixed_points(&GameParams::symmetric(coord, 0.0), &cfg).unwrap();
        assert_eq!(fps.len(), 3, "r={r} coord={coord}");
        assert_eq!(fps[1].branch, Branch::Central);
        assert!(!fps[1].stable);
        assert!(fps[0].stable && fps[2].stable, "r={r} coord={coord}");
    }
    // Dominant offset: one fixed point far from the centre, stable.
    for _ in 0..1_000 {
        let alpha = rng.random_range(0.05..1.0);
        let dom_ratio = rng.random_range(50.0..500.0);
        let dom: f64 =
            if rng.random_bool(0.5) { 1.0 } else { -1.0 } * rng.random_range(0.5..5.0);
        let coord = rng.random_range(-0.1..0.1) * dom.abs();
        let cfg = LearningConfig::new(alpha, dom_ratio * alpha / dom.abs(), 1.0);
        let fps = find_fixed_points(&GameParams::symmetric(coord, dom), &cfg).unwrap();
        assert_eq!(fps.len(), 1, "dom={dom} coord={coord}");
        assert!(fps[0].stable);
        assert!(!ewa_core::fixedpoint::in_mixed_box(fps[0].mixed.0, fps[0].mixed.1));
    }
}

#[test]
fn spectral_radius_matches_numerical_jacobian() {
    // Independent route: eigenvalue moduli of the numeric Jacobian via the
    // characteristic polynomial, plus plain power iteration when the
    // dominant eigenvalue is real.
    let mut rng = ewa_core::rng::stream(108, 0);
    for _ in 0..500 {
        let p = random_matrix(&mut rng);
        let gp = p.params();
        let cfg = LearningConfig::new(
            rng.random_range(0.05..1.0),
            rng.random_range(0.05..1.5),
            1.0,
        );
        let ratio = cfg.effective_beta() / cfg.alpha;
        for fp in find_fixed_points(&gp, &cfg).unwrap() {
            let residual =
                ewa_core::fixedpoint::composed_map(fp.logit.0, &gp, ratio) - fp.logit.0;
            assert!(residual.abs() < 1e-10);

            let j = jacobian_logit(fp.logit, &gp, &cfg);
            let tr = j[0][0] + j[1][1];
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            let disc = tr * tr / 4.0 - det;
            let rho = if disc >= 0.0 {
                let s = disc.sqrt();
                (tr / 2.0 + s).abs().max((tr / 2.0 - s).abs())
            } else {
                det.sqrt()
            };
            assert!(
                (rho - fp.spectral_radius).abs() < 1e-8,
                "char-poly {rho} vs closed form {}",
                fp.spectral_radius
            );
            assert_eq!(fp.stable, rho <= 1.0 + 1e-9);

            let gap = if disc > 0.0 {
                let s = disc.sqrt();
                let hi = (tr / 2.0 + s).abs().max((tr / 2.0 - s).abs());
                let lo = (tr / 2.0 + s).abs().min((tr / 2.0 - s).abs());
                lo / hi
            } else {
                1.0
            };
            if disc > 1e-6 && gap < 0.9 {
                // Real, well-separated spectrum: power iteration converges
                // geometrically to |lambda_1|.
                let mut v = [0.6, 0.8];
                let mut growth = 0.0;
                for _ in 0..600 {
                    let w = [
                        j[0][0] * v[0] + j[0][1] * v[1],
                        j[1][0] * v[0] + j[1][1] * v[1],
                    ];
                    let n = w[0].hypot(w[1]);
                    if n == 0.0 {
                        growth = 0.0;
                        break;
                    }
                    v = [w[0] / n, w[1] / n];
                    growth = n;
                }
                if growth > 0.0 {
                    assert!(
                        (growth - fp.spectral_radius).abs()
                            < 1e-8 + 1e-6 * fp.spectral_radius,
                        "power iteration {growth} vs {}",
                        fp.spectral_radius
                    );
                }
            }
        }
    }
}

#[test]
fn antisymmetric_origin_flips_exactly_at_the_threshold() {
    for (alpha, beta) in [(0.8, 0.8), (0.5, 1.0), (0.3, 0.6)] {
        let cfg = LearningConfig::new(alpha, beta, 1.0);
        let a_star = antisym_instability_threshold(&cfg);
        let mut flip = None;
        let n = 30_000;
        for i in 0..n {
            let a = 3.0 * (i as f64 + 0.5) / n as f64;
            let gp = GameParams::antisymmetric(a, 0.0);
            let (_, stable) = ewa_core::fixedpoint::stability((0.0, 0.0), &gp, &cfg);
            if !stable {
                flip = Some(a);
                break;
            }
        }
        let flip = flip.expect("no instability found");
        assert!(
            (flip - a_star).abs() < 1e-4,
            "flip at {flip}, threshold {a_star}"
        );
    }
}

#[test]
fn every_symmetric_grid_node_has_a_stable_fixed_point() {
    // Structure of the symmetric-game map over the parameter plane: one or
    // three fixed points everywhere, always at least one stable, three only
    // when the central one is unstable.
    let cfg = LearningConfig::new(1.0, 1.0, 1.0);
    for a in ewa_core::chaos::linspace((-3.0, 3.0), 13) {
        for b in ewa_core::chaos::linspace((-3.0, 3.0), 13) {
            let fps = find_fixed_points(&GameParams::symmetric(a, b), &cfg).unwrap();
            assert!(fps.len() == 1 || fps.len() == 3, "n={} at ({a},{b})", fps.len());
            assert!(fps.iter().any(|f| f.stable), "no stable point at ({a},{b})");
            if fps.len() == 3 {
                assert!(!fps[1].stable);
                assert!(fps[0].stable && fps[2].stable);
            }
        }
    }
}

#[test]
fn antisymmetric_instability_needs_coordination_beyond_threshold() {
    let cfg = LearningConfig::new(0.8, 0.8, 1.0);
    let a_star = antisym_instability_threshold(&cfg);
    for a in ewa_core::chaos::linspace((0.0, 3.0), 13) {
        for b in ewa_core::chaos::linspace((0.0, 3.0), 13) {
            let fps = find_fixed_points(&GameParams::antisymmetric(a, b), &cfg).unwrap();
            assert_eq!(fps.len(), 1, "at ({a},{b})");
            if !fps[0].stable {
                assert!(a > a_star - 1e-9, "unstable below threshold at ({a},{b})");
                assert!(a > b, "unstable without coordination excess at ({a},{b})");
            }
            // B = 0 column: stability is exactly the threshold rule.
            if b == 0.0 {
                assert_eq!(fps[0].stable, a <= a_star, "B=0 mismatch at A={a}");
            }
        }
    }
}
