//! Stage games, Nash equilibria of 2x2 bilinear games, backward induction
//! over the two stages and the cooperate-then-defect conditions.

mod backward;
mod conditions;
mod game;
mod nash;
mod oracle;

pub use backward::{
    backward_induction, sgpo, sgpo_restricted, ContinuationSource, InductionBranch, SgpoKind,
    SgpoProfile, SgpoReport,
};
pub use conditions::{
    cooperation_conditions, cooperation_conditions_with_tol, ConditionClass, ConditionReport,
};
pub use game::{
    stage_game, stage_game_from_weights, stage_game_with, BilinearGame, BilinearPayoff,
    CornerMatrix,
};
pub use nash::{
    nash_2x2, nash_2x2_with_tol, verify_ne, ComponentKind, EquilibriumComponent, Interval,
    NeStatus, Strictness,
};
pub use oracle::{grid_agreement, grid_oracle, grid_oracle_fn, GridAgreement};
