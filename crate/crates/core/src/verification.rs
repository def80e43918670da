//! Seeded consistency checks between the density-matrix engine, the
//! closed-form payoffs and the classical game.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::payoff::{
    all_payoffs, all_payoffs_with, classical_payoffs, closed_form_payoffs, PayoffMatrix,
    RestrictedStateWeights,
};
use crate::quantum::{Amplitude, StrategyProfile, DIM};
use crate::sampling::{random_general_state, random_profile, random_restricted_state};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub samples: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckOutcome {
    fn new(name: &'static str, samples: usize, max_error: f64, tolerance: f64) -> Self {
        CheckOutcome {
            name,
            samples,
            max_error,
            tolerance,
            passed: max_error <= tolerance,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub oracle_samples: usize,
    pub state_samples: usize,
    pub tolerance: f64,
    /// Matrix used by the density-matrix side of the oracle check. Anything
    /// other than the prisoners' dilemma should make that check fail.
    pub matrix: PayoffMatrix,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            oracle_samples: 1000,
            state_samples: 100,
            tolerance: 1e-9,
            matrix: PayoffMatrix::PRISONERS_DILEMMA,
        }
    }
}

/// Closed form at `w = (1, 0, 0, 0)` against the classical polynomials on a
/// 5^4 profile grid.
pub fn classical_recovery(tolerance: f64) -> Result<CheckOutcome> {
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let classical = RestrictedStateWeights::classical();
    let mut worst = 0.0f64;
    let mut n = 0;
    for p in grid {
        for q in grid {
            for p1 in grid {
                for q1 in grid {
                    let profile = StrategyProfile::new(p, q, p1, q1)?;
                    let d = closed_form_payoffs(&classical, &profile)
                        .max_abs_diff(&classical_payoffs(&profile));
                    worst = worst.max(d);
                    n += 1;
                }
            }
        }
    }
    Ok(CheckOutcome::new("classical-recovery", n, worst, tolerance))
}

/// Trace payoffs on random restricted states with random phases against the
/// closed-form polynomials.
pub fn oracle_equivalence(
    seed: u64,
    samples: usize,
    matrix: &PayoffMatrix,
    tolerance: f64,
) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let (w, state) = random_restricted_state(&mut rng)?;
        let profile = random_profile(&mut rng);
        let traced = all_payoffs_with(matrix, &state, &profile)?;
        worst = worst.max(traced.max_abs_diff(&closed_form_payoffs(&w, &profile)));
    }
    Ok(CheckOutcome::new("oracle-equivalence", samples, worst, tolerance))
}

fn shifted(v: f64) -> f64 {
    if v + 0.3 <= 1.0 {
        v + 0.3
    } else {
        v - 0.3
    }
}

/// Stage-1 payoffs ignore stage-2 moves and vice versa, on general states.
pub fn stage_decoupling(seed: u64, samples: usize, tolerance: f64) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let state = random_general_state(&mut rng);
        let pr = random_profile(&mut rng);
        let base = all_payoffs(&state, &pr)?;
        let moved2 = StrategyProfile::new(*pr.p(), *pr.q(), shifted(*pr.p1()), shifted(*pr.q1()))?;
        let moved1 = StrategyProfile::new(shifted(*pr.p()), shifted(*pr.q()), *pr.p1(), *pr.q1())?;
        let v2 = all_payoffs(&state, &moved2)?;
        let v1 = all_payoffs(&state, &moved1)?;
        worst = worst
            .max((v2.a1 - base.a1).abs())
            .max((v2.b1 - base.b1).abs())
            .max((v1.a2 - base.a2).abs())
            .max((v1.b2 - base.b2).abs());
    }
    Ok(CheckOutcome::new("stage-decoupling", samples, worst, tolerance))
}

/// Random phases on every amplitude leave every payoff unchanged.
pub fn phase_invariance(seed: u64, samples: usize, tolerance: f64) -> Result<CheckOutcome> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let state = random_general_state(&mut rng);
        let pr = random_profile(&mut rng);
        let mut rotated = state.clone();
        for idx in 0..DIM {
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            rotated = rotated.with_phase(idx, Amplitude::from_polar(1.0, theta))?;
        }
        let d = all_payoffs(&state, &pr)?.max_abs_diff(&all_payoffs(&rotated, &pr)?);
        worst = worst.max(d);
    }
    Ok(CheckOutcome::new("phase-invariance", samples, worst, tolerance))
}

/// Every check, each with its own derived seed.
pub fn run_all(config: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        classical_recovery(config.tolerance)?,
        oracle_equivalence(config.seed, config.oracle_samples, &config.matrix, config.tolerance)?,
        stage_decoupling(config.seed.wrapping_add(1), config.state_samples, config.tolerance)?,
        phase_invariance(config.seed.wrapping_add(2), config.state_samples, config.tolerance)?,
    ])
}
