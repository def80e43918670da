//! Seeded random inputs for verification runs.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::payoff::RestrictedStateWeights;
use crate::quantum::{Amplitude, PureState, StrategyProfile, DIM};

/// Uniform draw from the probability simplex (flat Dirichlet).
pub fn random_weights<R: Rng + ?Sized>(rng: &mut R) -> RestrictedStateWeights<f64> {
    let e: [f64; 4] = std::array::from_fn(|_| -(1.0 - rng.random::<f64>()).ln());
    let total: f64 = e.iter().sum();
    let mut w = e.map(|v| v / total);
    // absorb rounding so the weights sum to 1 to the last bit we can manage
    w[3] = (1.0 - w[0] - w[1] - w[2]).max(0.0);
    RestrictedStateWeights::new(w).expect("normalized draw")
}

pub fn random_phases<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    std::array::from_fn(|_| rng.random_range(0.0..std::f64::consts::TAU))
}

/// Restricted state with uniformly drawn weights and phases.
pub fn random_restricted_state<R: Rng + ?Sized>(
    rng: &mut R,
) -> Result<(RestrictedStateWeights<f64>, PureState<f64>)> {
    let w = random_weights(rng);
    let state = PureState::from_weights(&w, random_phases(rng))?;
    Ok((w, state))
}

/// Haar-random pure state on all 16 amplitudes.
pub fn random_general_state<R: Rng + ?Sized>(rng: &mut R) -> PureState<f64> {
    let raw: Vec<Amplitude<f64>> = (0..DIM)
        .map(|_| {
            Amplitude::new(
                StandardNormal.sample(rng),
                StandardNormal.sample(rng),
            )
        })
        .collect();
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    PureState::new(raw.into_iter().map(|a| a / norm).collect()).expect("normalized draw")
}

pub fn random_profile<R: Rng + ?Sized>(rng: &mut R) -> StrategyProfile<f64> {
    StrategyProfile::new(rng.random(), rng.random(), rng.random(), rng.random())
        .expect("uniform draws lie in [0, 1)")
}
