//! Correlated Gaussian random-game ensembles and class prevalence.
//!
//! Each of the four cells independently receives a bivariate Gaussian payoff
//! pair with zero means, unit variances and correlation `gamma` between the
//! two players' payoffs in that cell: the maximum-entropy distribution under
//! those moment constraints. `gamma = -1` gives zero-sum games, `gamma = +1`
//! common-interest games.

use crate::game::{GameClass, PayoffMatrix};
use crate::parallel;
use rand::Rng;
use rand_distr::StandardNormal;

/// Ensemble description: payoff correlation, sample count, base seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    pub gamma: f64,
    pub n_samples: usize,
    pub seed: u64,
}

/// Monte-Carlo class counts; the four counts partition `n_samples` exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassFractions {
    pub n_dominance: usize,
    pub n_coordination: usize,
    pub n_anticoordination: usize,
    pub n_discoordination: usize,
    pub n_samples: usize,
}

impl ClassFractions {
    fn frac(&self, count: usize) -> f64 {
        count as f64 / self.n_samples as f64
    }

    pub fn dominance(&self) -> f64 {
        self.frac(self.n_dominance)
    }

    pub fn coordination(&self) -> f64 {
        self.frac(self.n_coordination)
    }

    pub fn anticoordination(&self) -> f64 {
        self.frac(self.n_anticoordination)
    }

    pub fn discoordination(&self) -> f64 {
        self.frac(self.n_discoordination)
    }

    /// Coordination and anticoordination pooled.
    pub fn coordination_like(&self) -> f64 {
        self.frac(self.n_coordination + self.n_anticoordination)
    }

    /// Binomial standard error of one reported fraction.
    pub fn standard_error(&self, fraction: f64) -> f64 {
        (fraction * (1.0 - fraction) / self.n_samples as f64).sqrt()
    }
}

/// Draw one game: four independent cells, each a correlated Gaussian pair
/// `(u, gamma u + sqrt(1 - gamma^2) v)`.
pub fn sample_game(gamma: f64, rng: &mut impl Rng) -> PayoffMatrix {
    let tail = (1.0 - gamma * gamma).max(0.0).sqrt();
    let mut pair = || {
        let u: f64 = rng.sample(StandardNormal);
        let v: f64 = rng.sample(StandardNormal);
        (u, gamma * u + tail * v)
    };
    let (a, e) = pair();
    let (b, g) = pair();
    let (c, f) = pair();
    let (d, h) = pair();
    PayoffMatrix::new(a, b, c, d, e, f, g, h)
}

/// Class fractions over `spec.n_samples` draws.
///
/// Ties have probability zero under the continuous distribution; the
/// measure-zero degenerate draw is redrawn.
pub fn class_fractions(spec: &EnsembleSpec) -> ClassFractions {
    let mut rng = crate::rng::stream(spec.seed, 0);
    let mut counts = [0usize; 4];
    for _ in 0..spec.n_samples {
        let class = loop {
            if let Ok(c) = sample_game(spec.gamma, &mut rng).classify() {
                break c;
            }
        };
        let slot = match class {
            GameClass::DominanceSolvable(_) => 0,
            GameClass::Coordination => 1,
            GameClass::Anticoordination => 2,
            GameClass::Discoordination => 3,
        };
        counts[slot] += 1;
    }
    ClassFractions {
        n_dominance: counts[0],
        n_coordination: counts[1],
        n_anticoordination: counts[2],
        n_discoordination: counts[3],
        n_samples: spec.n_samples,
    }
}

/// Fraction of dominance-solvable games among random payoff matrices carrying
/// exactly the prescribed coordination `ac` and dominance `bd_abs`.
///
/// Magnitudes of the per-player parameters are drawn log-uniformly over
/// `[1e-2, 1e2]` with random signs, the partner parameter then forced so the
/// products match; the matrix is rebuilt in diagonal form. Entry `[i][j]`
/// corresponds to `(ac_values[i], bd_values[j])`.
pub fn dominance_fraction_grid(
    ac_values: &[f64],
    bd_values: &[f64],
    n_per_cell: usize,
    seed: u64,
    threads: usize,
) -> Vec<Vec<f64>> {
    let nb = bd_values.len();
    let flat = parallel::map_indexed(ac_values.len() * nb, threads, |k| {
        let ac = ac_values[k / nb];
        let bd = bd_values[k % nb].abs();
        let mut rng = crate::rng::stream(seed, k as u64);
        let mut dominated = 0usize;
        let mut done = 0usize;
        let mut attempts = 0usize;
        while done < n_per_cell {
            attempts += 1;
            assert!(
                attempts < 1_000 * n_per_cell,
                "degenerate draws dominate at ac={ac}, bd={bd}"
            );
            let p = sample_constrained(ac, bd, &mut rng);
            match p.classify() {
                Ok(GameClass::DominanceSolvable(_)) => {
                    dominated += 1;
                    done += 1;
                }
                Ok(_) => done += 1,
                Err(_) => {}
            }
        }
        dominated as f64 / n_per_cell as f64
    });
    flat.chunks(nb).map(<[f64]>::to_vec).collect()
}

fn log_uniform_magnitude(rng: &mut impl Rng) -> f64 {
    10f64.powf(rng.random_range(-2.0..2.0))
}

fn random_sign(rng: &mut impl Rng) -> f64 {
    if rng.random_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

/// One random game with prescribed `A*C` and `|B*D|`.
///
/// A zero product puts the zero on one randomly chosen player; when both
/// products vanish the zeros go to complementary players, otherwise one
/// player's payoffs would tie identically.
fn sample_constrained(ac: f64, bd_abs: f64, rng: &mut impl Rng) -> PayoffMatrix {
    let zero_row_coord = ac == 0.0 && rng.random_bool(0.5);
    let zero_row_dom = if ac == 0.0 && bd_abs == 0.0 {
        !zero_row_coord
    } else {
        bd_abs == 0.0 && rng.random_bool(0.5)
    };
    let (row_coord, col_coord) = if zero_row_coord {
        (0.0, random_sign(rng) * log_uniform_magnitude(rng))
    } else {
        let a = random_sign(rng) * log_uniform_magnitude(rng);
        (a, if ac == 0.0 { 0.0 } else { ac / a })
    };
    let (row_dom, col_dom) = if zero_row_dom {
        (0.0, random_sign(rng) * log_uniform_magnitude(rng))
    } else {
        let b = random_sign(rng) * log_uniform_magnitude(rng);
        (b, if bd_abs == 0.0 { 0.0 } else { random_sign(rng) * bd_abs / b })
    };
    crate::game::GameParams::new(row_coord, row_dom, col_coord, col_dom)
        .to_reduced()
        .to_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_correlation_couples_cells() {
        let mut rng = crate::rng::stream(1, 0);
        for _ in 0..100 {
            let p = sample_game(1.0, &mut rng);
            assert!((p.a - p.e).abs() < 1e-12);
            assert!((p.b - p.g).abs() < 1e-12);
            assert!((p.c - p.f).abs() < 1e-12);
            assert!((p.d - p.h).abs() < 1e-12);
            let q = sample_game(-1.0, &mut rng);
            assert!((q.a + q.e).abs() < 1e-12);
            assert!((q.d + q.h).abs() < 1e-12);
        }
    }

    #[test]
    fn uncorrelated_moments() {
        let mut rng = crate::rng::stream(2, 0);
        let n = 100_000;
        let (mut sum_a, mut sum_aa, mut sum_e, mut sum_ae) = (0.0, 0.0, 0.0, 0.0);
        for _ in 0..n {
            let p = sample_game(0.0, &mut rng);
            sum_a += p.a;
            sum_aa += p.a * p.a;
            sum_e += p.e;
            sum_ae += p.a * p.e;
        }
        let nf = n as f64;
        let mean_a = sum_a / nf;
        let var_a = sum_aa / nf - mean_a * mean_a;
        let corr = sum_ae / nf - mean_a * (sum_e / nf);
        assert!(mean_a.abs() < 0.01, "mean {mean_a}");
        assert!((var_a - 1.0).abs() < 0.03, "variance {var_a}");
        assert!(corr.abs() < 0.01, "correlation {corr}");
    }

    // Exact class probabilities for the fully coupled endpoints by
    // enumerating the 24 rank orders of four i.i.d. cell values.
    fn endpoint_oracle(gamma: f64) -> (f64, f64, f64) {
        let perms = [
            [0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1],
            [1, 0, 2, 3], [1, 0, 3, 2], [1, 2, 0, 3], [1, 2, 3, 0], [1, 3, 0, 2], [1, 3, 2, 0],
            [2, 0, 1, 3], [2, 0, 3, 1], [2, 1, 0, 3], [2, 1, 3, 0], [2, 3, 0, 1], [2, 3, 1, 0],
            [3, 0, 1, 2], [3, 0, 2, 1], [3, 1, 0, 2], [3, 1, 2, 0], [3, 2, 0, 1], [3, 2, 1, 0],
        ];
        let (mut dom, mut coord, mut disc) = (0, 0, 0);
        for ranks in perms {
            let [a, b, c, d] = ranks.map(|r| r as f64);
            let p = PayoffMatrix::new(
                a, b, c, d,
                gamma * a, gamma * c, gamma * b, gamma * d,
            );
            match p.classify().unwrap() {
                GameClass::DominanceSolvable(_) => dom += 1,
                GameClass::Coordination | GameClass::Anticoordination => coord += 1,
                GameClass::Discoordination => disc += 1,
            }
        }
        (dom as f64 / 24.0, coord as f64 / 24.0, disc as f64 / 24.0)
    }

    #[test]
    fn endpoint_oracle_matches_known_combinatorics() {
        // gamma = +1: no discoordination, 2/3 dominance-solvable.
        let (dom, coord, disc) = endpoint_oracle(1.0);
        assert!((dom - 2.0 / 3.0).abs() < 1e-12);
        assert!((coord - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(disc, 0.0);
        // gamma = -1 (zero-sum): no coordination, saddle point in 2/3 of
        // games.
        let (dom, coord, disc) = endpoint_oracle(-1.0);
        assert!((dom - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(coord, 0.0);
        assert!((disc - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn class_fractions_match_the_oracles() {
        // gamma = 0: the 16 orderings are independent fair coins, so
        // 12/16, 2/16, 2/16.
        let f = class_fractions(&EnsembleSpec { gamma: 0.0, n_samples: 10_000, seed: 3 });
        assert!((f.dominance() - 0.75).abs() < 0.02);
        assert!((f.coordination_like() - 0.125).abs() < 0.02);
        assert!((f.discoordination() - 0.125).abs() < 0.02);

        let f = class_fractions(&EnsembleSpec { gamma: 1.0, n_samples: 10_000, seed: 3 });
        let (dom, coord, disc) = endpoint_oracle(1.0);
        assert!((f.dominance() - dom).abs() < 0.02);
        assert!((f.coordination_like() - coord).abs() < 0.02);
        assert_eq!(f.n_discoordination, 0);
        assert_eq!(disc, 0.0);

        let f = class_fractions(&EnsembleSpec { gamma: -1.0, n_samples: 10_000, seed: 3 });
        let (dom, coord, disc) = endpoint_oracle(-1.0);
        assert!((f.dominance() - dom).abs() < 0.02);
        assert_eq!(f.n_coordination + f.n_anticoordination, 0);
        assert_eq!(coord, 0.0);
        assert!((f.discoordination() - disc).abs() < 0.02);
    }

    #[test]
    fn fractions_sum_to_one_exactly() {
        for gamma in [-0.8, -0.3, 0.0, 0.4, 0.9] {
            let f = class_fractions(&EnsembleSpec { gamma, n_samples: 2_000, seed: 7 });
            let total =
                f.n_dominance + f.n_coordination + f.n_anticoordination + f.n_discoordination;
            assert_eq!(total, f.n_samples);
        }
    }

    #[test]
    fn coordination_symmetry_and_monotone_trends() {
        let gammas = crate::chaos::linspace((-1.0, 1.0), 21);
        let runs: Vec<ClassFractions> = gammas
            .iter()
            .map(|&g| class_fractions(&EnsembleSpec { gamma: g, n_samples: 10_000, seed: 11 }))
            .collect();
        for f in &runs {
            // Label-swap symmetry of the Gaussian; 0.015 is a 2-sigma band
            // for a difference of fractions at n = 10^4.
            assert!(
                (f.coordination() - f.anticoordination()).abs() < 0.015,
                "asymmetry: {} vs {}",
                f.coordination(),
                f.anticoordination()
            );
        }
        // Coordination-like fraction rises with gamma, discoordination falls
        // (2-sigma slack per comparison).
        let slack = 2.0 * (0.25f64 / 10_000.0).sqrt();
        for w in runs.windows(2) {
            assert!(w[1].coordination_like() >= w[0].coordination_like() - 2.0 * slack);
            assert!(w[1].discoordination() <= w[0].discoordination() + 2.0 * slack);
        }
    }

    #[test]
    fn zero_product_nodes_are_well_defined() {
        // Both products zero forces a one-sided dominant strategy, so the
        // corner node is all dominance-solvable rather than a hang on
        // degenerate redraws.
        let grid = dominance_fraction_grid(&[0.0, 1.0], &[0.0, 1.0], 300, 41, 1);
        assert_eq!(grid[0][0], 1.0);
        assert!(grid[1][0] > 0.0 && grid[1][0] < 1.0);
    }

    #[test]
    fn dominance_grid_certain_region_and_monotonicity() {
        let ac = [-8.0, -2.0, -0.5, 0.5, 2.0, 8.0];
        let bd = [0.0, 0.3, 1.0, 3.0, 9.0];
        let grid = dominance_fraction_grid(&ac, &bd, 1_000, 13, 2);
        for (i, &a) in ac.iter().enumerate() {
            for (j, &b) in bd.iter().enumerate() {
                if b > a.abs() {
                    assert_eq!(grid[i][j], 1.0, "ac={a} bd={b}");
                }
            }
            // |BD| = 0 with AC != 0: never all dominance-solvable, never none.
            assert!(grid[i][0] > 0.0 && grid[i][0] < 1.0, "ac={a}: {}", grid[i][0]);
        }
        // Fraction falls (up to Monte-Carlo slack) as |AC| grows at fixed BD.
        let slack = 2.0 * (0.25f64 / 1_000.0).sqrt();
        for j in 0..bd.len() {
            for (lo, hi) in [(3, 4), (4, 5)] {
                assert!(
                    grid[hi][j] <= grid[lo][j] + 2.0 * slack,
                    "not decreasing at bd={}: {} -> {}",
                    bd[j],
                    grid[lo][j],
                    grid[hi][j]
                );
            }
        }
    }

    #[test]
    fn grid_is_thread_invariant() {
        let ac = [0.5, 2.0];
        let bd = [0.1, 1.0];
        let serial = dominance_fraction_grid(&ac, &bd, 200, 5, 1);
        let threaded = dominance_fraction_grid(&ac, &bd, 200, 5, 4);
        assert_eq!(serial, threaded);
    }
}
