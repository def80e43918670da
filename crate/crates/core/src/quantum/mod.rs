//! Four-qubit states, flip/identity operators and the per-stage channels.
//!
//! Qubit positions follow the play order: 1 and 2 belong to players A and B
//! in the first stage, 3 and 4 to A and B in the second. Each qubit has the
//! levels `1` (cooperate) and `2` (defect), and the label `(i,j,k,l)` maps to
//! the flat index `(i-1)*8 + (j-1)*4 + (k-1)*2 + (l-1)`.

mod basis;
mod channel;
mod density;
mod operator;
mod state;

pub use basis::{BasisLabel, QubitIndex, Stage, DIM};
pub use channel::{evolve_two_stage, stage_channel, StrategyProfile};
pub use density::DensityMatrix;
pub use operator::LinearOperator;
pub use state::{Amplitude, PureState};
