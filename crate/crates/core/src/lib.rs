//! Two-stage repeated prisoners' dilemma played on a four-qubit register.
//!
//! Players mix the identity and the single-qubit inversion on their own qubit
//! in each stage ([`quantum`]); stage payoffs are mean values of diagonal
//! observables on the final state ([`payoff`]); stage equilibria, backward
//! induction and the cooperate-then-defect conditions live in
//! [`equilibrium`].
//!
//! All math is generic over [`Scalar`]; the aliases below fix the common
//! choices.

pub mod equilibrium;
pub mod error;
pub mod payoff;
pub mod quantum;
pub mod sampling;
pub mod scalar;
pub mod verification;

pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Rational = BigRational;

pub type PureState64 = quantum::PureState<f64>;
pub type DensityMatrix64 = quantum::DensityMatrix<f64>;
pub type StrategyProfile64 = quantum::StrategyProfile<f64>;
pub type Weights64 = payoff::RestrictedStateWeights<f64>;
pub type BilinearGame64 = equilibrium::BilinearGame<f64>;
pub type SgpoReport64 = equilibrium::SgpoReport<f64>;

pub type ExactStrategyProfile = quantum::StrategyProfile<Rational>;
pub type ExactWeights = payoff::RestrictedStateWeights<Rational>;
pub type ExactBilinearGame = equilibrium::BilinearGame<Rational>;
pub type ExactSgpoReport = equilibrium::SgpoReport<Rational>;
