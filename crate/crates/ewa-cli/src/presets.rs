//! Named parameter bundles: reference games and the full experiment grid
//! (fig2..fig10, figA1..figA4), so every standard run is reproducible from
//! one flag.

use ewa_core::game::PayoffMatrix;

/// Diagonal reference games used across the experiments.
pub fn game_preset(name: &str) -> Option<PayoffMatrix> {
    Some(match name {
        "table1-coordination" => PayoffMatrix::new(5.0, -1.0, 0.0, 3.0, 2.0, -3.0, 1.0, 4.0),
        "table1-anticoordination" => PayoffMatrix::new(1.0, 5.0, 2.0, 4.0, 0.0, 3.0, 4.0, 1.0),
        "table1-discoordination" => PayoffMatrix::new(4.0, -1.0, -3.0, 3.0, -3.0, 2.0, -2.0, -5.0),
        "table1-dominance" => PayoffMatrix::new(5.0, -1.0, 0.0, -2.0, 3.0, -1.0, 2.0, -3.0),
        "matching-pennies" => PayoffMatrix::new(1.0, -1.0, -1.0, 1.0, -1.0, 1.0, 1.0, -1.0),
        // Discoordination game with a pure best-response cycle and no
        // dominance offset; hosts limit cycles.
        "cycle" => PayoffMatrix::diagonal(4.0, 4.0, -4.0, -4.0),
        // The low-dimensional-chaos reference game.
        "chaotic" => PayoffMatrix::diagonal(-11.8, -1.8, 11.8, 1.8),
        _ => return None,
    })
}

/// Which family a fixed-point grid sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridFamily {
    /// `C = A`, `D = B`.
    Symmetric,
    /// `C = -A`, `D = -B`.
    Antisymmetric,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PresetData {
    /// Trajectory run (deterministic or sampled play).
    Simulate {
        payoffs: PayoffMatrix,
        alpha: f64,
        beta: f64,
        steps: usize,
        start: (f64, f64),
        batch: Option<u32>,
    },
    /// Parameter scan along alpha or beta: serves both the bifurcation and
    /// Lyapunov-sweep commands.
    Scan {
        payoffs: PayoffMatrix,
        alpha: f64,
        beta: f64,
        alpha_range: (f64, f64),
        beta_range: (f64, f64),
        points: usize,
        batch: Option<u32>,
    },
    /// Largest-exponent grid over the antisymmetric `(A, B)` plane.
    LyapunovGrid {
        alpha: f64,
        beta: f64,
        a_range: (f64, f64),
        b_range: (f64, f64),
        resolution: usize,
    },
    /// Fixed-point structure over a parameter-plane grid.
    FixedPointGrid {
        family: GridFamily,
        alpha: f64,
        beta: f64,
        a_range: (f64, f64),
        b_range: (f64, f64),
        resolution: usize,
    },
    /// Class fractions over a correlation sweep.
    EnsembleFractions { gamma_range: (f64, f64), points: usize, n_samples: usize },
    /// Dominance-solvable fraction over the (coordination, dominance) plane.
    EnsembleGrid {
        ac_range: (f64, f64),
        bd_range: (f64, f64),
        points: usize,
        n_per_cell: usize,
    },
    /// Move-autocorrelation comparison between two intensities of choice.
    Autocorr {
        payoffs: PayoffMatrix,
        alpha: f64,
        betas: (f64, f64),
        steps: usize,
        max_lag: usize,
    },
}

/// The experiment registry.
pub fn figure_preset(name: &str) -> Option<PresetData> {
    let chaotic = game_preset("chaotic").unwrap();
    let cycle = game_preset("cycle").unwrap();
    Some(match name {
        "fig2" => PresetData::FixedPointGrid {
            family: GridFamily::Symmetric,
            alpha: 1.0,
            beta: 1.0,
            a_range: (-3.0, 3.0),
            b_range: (-3.0, 3.0),
            resolution: 61,
        },
        "fig3" => PresetData::FixedPointGrid {
            family: GridFamily::Antisymmetric,
            alpha: 0.8,
            beta: 0.8,
            a_range: (0.0, 3.0),
            b_range: (0.0, 3.0),
            resolution: 61,
        },
        "fig4a" => PresetData::Simulate {
            payoffs: cycle,
            alpha: 0.7,
            beta: 1.0,
            steps: 500,
            start: (0.3, 0.2),
            batch: None,
        },
        "fig4b" => PresetData::Simulate {
            payoffs: cycle,
            alpha: 0.01,
            beta: 0.1,
            steps: 5_000,
            start: (0.3, 0.2),
            batch: None,
        },
        "fig4c" => PresetData::Simulate {
            payoffs: cycle,
            alpha: 0.01,
            beta: 0.5,
            steps: 5_000,
            start: (0.3, 0.2),
            batch: None,
        },
        "fig4d" => PresetData::Simulate {
            payoffs: chaotic,
            alpha: 0.7,
            beta: 1.0,
            steps: 500,
            start: (0.3, 0.2),
            batch: None,
        },
        "fig5" => PresetData::Scan {
            payoffs: chaotic,
            alpha: 0.7,
            beta: 1.0,
            alpha_range: (0.01, 1.0),
            beta_range: (0.01, 2.0),
            points: 200,
            batch: None,
        },
        "fig6a" => PresetData::LyapunovGrid {
            alpha: 0.7,
            beta: 1.0,
            a_range: (0.0, 5.0),
            b_range: (0.0, 5.0),
            resolution: 32,
        },
        "fig6b" => PresetData::LyapunovGrid {
            alpha: 0.1,
            beta: 1.0,
            a_range: (0.0, 5.0),
            b_range: (0.0, 5.0),
            resolution: 32,
        },
        "fig7" => PresetData::EnsembleFractions {
            gamma_range: (-1.0, 1.0),
            points: 21,
            n_samples: 10_000,
        },
        "fig8a" => PresetData::Simulate {
            payoffs: chaotic,
            alpha: 0.2,
            beta: 1.0,
            steps: 10_000,
            start: (0.5, 0.5),
            batch: Some(1),
        },
        "fig8b" => PresetData::Simulate {
            payoffs: chaotic,
            alpha: 0.2,
            beta: 0.1,
            steps: 10_000,
            start: (0.5, 0.5),
            batch: Some(1),
        },
        "fig9" => PresetData::Autocorr {
            payoffs: chaotic,
            alpha: 0.2,
            betas: (1.0, 0.1),
            steps: 10_000,
            max_lag: 50,
        },
        "fig10" => PresetData::Scan {
            payoffs: chaotic,
            alpha: 0.2,
            beta: 1.0,
            alpha_range: (0.01, 1.0),
            beta_range: (0.01, 2.0),
            points: 100,
            batch: Some(1),
        },
        "figA1" => PresetData::EnsembleGrid {
            ac_range: (-10.0, 10.0),
            bd_range: (0.0, 10.0),
            points: 21,
            n_per_cell: 1_000,
        },
        "figA2" => PresetData::Simulate {
            payoffs: PayoffMatrix::diagonal(2.0, -1.0, 2.0, -1.0),
            alpha: 0.3,
            beta: 0.5,
            steps: 1_000,
            start: (0.5, 0.5),
            batch: Some(1),
        },
        "figA3" => PresetData::Simulate {
            payoffs: PayoffMatrix::diagonal(6.0, 1.0, 6.0, 1.0),
            alpha: 0.1,
            beta: 1.0,
            steps: 1_000,
            start: (0.1, 0.05),
            batch: Some(1),
        },
        "figA4" => PresetData::Scan {
            payoffs: chaotic,
            alpha: 0.2,
            beta: 1.0,
            alpha_range: (0.01, 1.0),
            beta_range: (0.01, 2.0),
            points: 100,
            batch: Some(10),
        },
        _ => return None,
    })
}

pub const FIGURE_PRESETS: [&str; 18] = [
    "fig2", "fig3", "fig4a", "fig4b", "fig4c", "fig4d", "fig5", "fig6a", "fig6b", "fig7",
    "fig8a", "fig8b", "fig9", "fig10", "figA1", "figA2", "figA3", "figA4",
];

pub const GAME_PRESETS: [&str; 7] = [
    "table1-coordination",
    "table1-anticoordination",
    "table1-discoordination",
    "table1-dominance",
    "matching-pennies",
    "cycle",
    "chaotic",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_resolves() {
        for name in FIGURE_PRESETS {
            assert!(figure_preset(name).is_some(), "missing figure preset {name}");
        }
        for name in GAME_PRESETS {
            assert!(game_preset(name).is_some(), "missing game preset {name}");
        }
        assert!(figure_preset("fig99").is_none());
        assert!(game_preset("nonsense").is_none());
    }

    // Pin every experiment preset to its published parameter set; any edit
    // to the registry must be made here too.
    #[test]
    fn experiment_parameters_are_pinned() {
        let chaotic = PayoffMatrix::diagonal(-11.8, -1.8, 11.8, 1.8);
        let cycle = PayoffMatrix::diagonal(4.0, 4.0, -4.0, -4.0);

        match figure_preset("fig2").unwrap() {
            PresetData::FixedPointGrid { family, alpha, beta, a_range, b_range, .. } => {
                assert_eq!(family, GridFamily::Symmetric);
                assert_eq!((alpha, beta), (1.0, 1.0));
                assert_eq!((a_range, b_range), ((-3.0, 3.0), (-3.0, 3.0)));
            }
            other => panic!("fig2: {other:?}"),
        }
        match figure_preset("fig3").unwrap() {
            PresetData::FixedPointGrid { family, alpha, beta, a_range, .. } => {
                assert_eq!(family, GridFamily::Antisymmetric);
                assert_eq!((alpha, beta), (0.8, 0.8));
                assert_eq!(a_range, (0.0, 3.0));
            }
            other => panic!("fig3: {other:?}"),
        }

        let sims = [
            ("fig4a", cycle, 0.7, 1.0, (0.3, 0.2), None),
            ("fig4b", cycle, 0.01, 0.1, (0.3, 0.2), None),
            ("fig4c", cycle, 0.01, 0.5, (0.3, 0.2), None),
            ("fig4d", chaotic, 0.7, 1.0, (0.3, 0.2), None),
            ("fig8a", chaotic, 0.2, 1.0, (0.5, 0.5), Some(1)),
            ("fig8b", chaotic, 0.2, 0.1, (0.5, 0.5), Some(1)),
            (
                "figA2",
                PayoffMatrix::diagonal(2.0, -1.0, 2.0, -1.0),
                0.3,
                0.5,
                (0.5, 0.5),
                Some(1),
            ),
            (
                "figA3",
                PayoffMatrix::diagonal(6.0, 1.0, 6.0, 1.0),
                0.1,
                1.0,
                (0.1, 0.05),
                Some(1),
            ),
        ];
        for (name, want_p, want_a, want_b, want_start, want_batch) in sims {
            match figure_preset(name).unwrap() {
                PresetData::Simulate { payoffs, alpha, beta, start, batch, .. } => {
                    assert_eq!(payoffs, want_p, "{name} payoffs");
                    assert_eq!((alpha, beta), (want_a, want_b), "{name} learning");
                    assert_eq!(start, want_start, "{name} start");
                    assert_eq!(batch, want_batch, "{name} batch");
                }
                other => panic!("{name}: {other:?}"),
            }
        }

        let scans = [
            ("fig5", 0.7, 1.0, None),
            ("fig10", 0.2, 1.0, Some(1)),
            ("figA4", 0.2, 1.0, Some(10)),
        ];
        for (name, want_a, want_b, want_batch) in scans {
            match figure_preset(name).unwrap() {
                PresetData::Scan { payoffs, alpha, beta, batch, .. } => {
                    assert_eq!(payoffs, chaotic, "{name} payoffs");
                    assert_eq!((alpha, beta), (want_a, want_b), "{name} learning");
                    assert_eq!(batch, want_batch, "{name} batch");
                }
                other => panic!("{name}: {other:?}"),
            }
        }

        for (name, want_alpha) in [("fig6a", 0.7), ("fig6b", 0.1)] {
            match figure_preset(name).unwrap() {
                PresetData::LyapunovGrid { alpha, beta, resolution, .. } => {
                    assert_eq!(alpha, want_alpha, "{name} alpha");
                    assert_eq!(beta, 1.0);
                    assert!(resolution >= 16);
                }
                other => panic!("{name}: {other:?}"),
            }
        }

        match figure_preset("fig7").unwrap() {
            PresetData::EnsembleFractions { gamma_range, points, n_samples } => {
                assert_eq!(gamma_range, (-1.0, 1.0));
                assert_eq!(points, 21);
                assert_eq!(n_samples, 10_000);
            }
            other => panic!("fig7: {other:?}"),
        }
        match figure_preset("fig9").unwrap() {
            PresetData::Autocorr { payoffs, alpha, betas, .. } => {
                assert_eq!(payoffs, chaotic);
                assert_eq!(alpha, 0.2);
                assert_eq!(betas, (1.0, 0.1));
            }
            other => panic!("fig9: {other:?}"),
        }
        match figure_preset("figA1").unwrap() {
            PresetData::EnsembleGrid { n_per_cell, .. } => assert!(n_per_cell >= 100),
            other => panic!("figA1: {other:?}"),
        }
    }

    #[test]
    fn reference_games_classify_as_named() {
        use ewa_core::game::GameClass;
        let expect = [
            ("table1-coordination", "coordination"),
            ("table1-anticoordination", "anticoordination"),
            ("table1-discoordination", "discoordination"),
            ("table1-dominance", "dominance-solvable"),
            ("matching-pennies", "discoordination"),
            ("cycle", "discoordination"),
            ("chaotic", "discoordination"),
        ];
        for (name, label) in expect {
            let class = game_preset(name).unwrap().classify().unwrap();
            assert_eq!(class.label(), label, "{name}");
            if name == "table1-dominance" {
                assert_eq!(class, GameClass::DominanceSolvable((1, 1)));
            }
        }
    }
}
