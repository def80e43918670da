use std::fmt;

use super::game::{stage_game, stage_game_from_weights, BilinearGame};
use super::nash::{nash_2x2_with_tol, EquilibriumComponent, Interval, Strictness};
use crate::error::Result;
use crate::payoff::{RestrictedStateWeights, StagePayoffs};
use crate::quantum::{PureState, Stage, StrategyProfile};
use crate::scalar::{max_of, min_of, Scalar};

/// How the anticipated second-stage play of a branch was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContinuationSource {
    /// An isolated stage-2 equilibrium.
    Point,
    /// A stage-2 equilibrium set with constant payoffs along it.
    ConstantSet,
    /// An endpoint of a stage-2 equilibrium set whose payoffs vary.
    SetEndpoint,
}

impl fmt::Display for ContinuationSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContinuationSource::Point => "point",
            ContinuationSource::ConstantSet => "constant-set",
            ContinuationSource::SetEndpoint => "set-endpoint",
        })
    }
}

/// One anticipated stage-2 outcome and the first-stage game it induces.
#[derive(Debug, Clone, PartialEq)]
pub struct InductionBranch<T> {
    /// Index into [`SgpoReport::stage2_equilibria`].
    pub component_index: usize,
    pub source: ContinuationSource,
    pub stage2_play: EquilibriumComponent<T>,
    pub continuation: (T, T),
    pub induced_game: BilinearGame<T>,
    pub stage1_equilibria: Vec<EquilibriumComponent<T>>,
}

/// A subgame-perfect outcome: a stage-1 equilibrium of the induced game
/// followed by the anticipated stage-2 play.
#[derive(Debug, Clone, PartialEq)]
pub struct SgpoProfile<T> {
    pub branch: usize,
    pub stage1: EquilibriumComponent<T>,
    pub stage2: EquilibriumComponent<T>,
    /// Stage-1 payoff ranges (A, B) over the stage-1 component.
    pub stage1_payoffs: (Interval<T>, Interval<T>),
    pub stage2_payoffs: (T, T),
    pub totals: (Interval<T>, Interval<T>),
    pub strictness: Strictness,
}

impl<T: Scalar> SgpoProfile<T> {
    /// The `(p, q, p1, q1)` profile when both stages are single points.
    pub fn profile(&self) -> Option<StrategyProfile<T>> {
        let first = self.stage1.point()?;
        let second = self.stage2.point()?;
        StrategyProfile::from_stages(first, second).ok()
    }

    /// True when this outcome is exactly the pure profile `target`.
    pub fn is_profile(&self, target: [i64; 4]) -> bool {
        let t = target.map(T::from_int);
        self.stage1.is_point_at(&t[0], &t[1]) && self.stage2.is_point_at(&t[2], &t[3])
    }

    /// True when the pure profile `target` lies in this outcome's components.
    pub fn contains(&self, target: [i64; 4]) -> bool {
        let t = target.map(T::from_int);
        self.stage1.contains(&t[0], &t[1]) && self.stage2.contains(&t[2], &t[3])
    }

    /// Cooperate in stage 1, defect in stage 2: `(1, 1, 0, 0)`.
    pub fn is_cooperate_then_defect(&self) -> bool {
        self.is_profile([1, 1, 0, 0])
    }
}

/// Coarse label for the set of subgame-perfect outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgpoKind {
    AllDefect,
    CooperateThenDefect,
    OtherUnique,
    Multiple { includes_cooperate_then_defect: bool },
}

impl fmt::Display for SgpoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SgpoKind::AllDefect => "all-defect",
            SgpoKind::CooperateThenDefect => "cooperate-then-defect",
            SgpoKind::OtherUnique => "other",
            SgpoKind::Multiple {
                includes_cooperate_then_defect: true,
            } => "multiple-incl-cooperate-then-defect",
            SgpoKind::Multiple {
                includes_cooperate_then_defect: false,
            } => "multiple",
        })
    }
}

/// Everything backward induction produced for one initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct SgpoReport<T> {
    /// First-stage game without any continuation payoff.
    pub stage1_game: BilinearGame<T>,
    pub stage2_game: BilinearGame<T>,
    pub stage2_equilibria: Vec<EquilibriumComponent<T>>,
    /// Stage-2 components whose payoffs vary along them; each was replaced by
    /// its endpoints.
    pub non_inducible: Vec<usize>,
    pub branches: Vec<InductionBranch<T>>,
    pub profiles: Vec<SgpoProfile<T>>,
}

impl<T: Scalar> SgpoReport<T> {
    /// Whether the pure profile `target` is subgame perfect, either as an
    /// isolated outcome or inside a set of outcomes.
    pub fn contains_profile(&self, target: [i64; 4]) -> bool {
        self.profiles.iter().any(|p| p.contains(target))
    }

    /// The first outcome containing `target`, preferring an exact point.
    pub fn find_profile(&self, target: [i64; 4]) -> Option<&SgpoProfile<T>> {
        self.profiles
            .iter()
            .find(|p| p.is_profile(target))
            .or_else(|| self.profiles.iter().find(|p| p.contains(target)))
    }

    /// Stage payoffs along a subgame-perfect pure profile.
    pub fn outcome_payoffs(&self, target: [i64; 4]) -> Option<StagePayoffs<T>> {
        self.find_profile(target)?;
        let t = target.map(T::from_int);
        let (a1, b1) = self.stage1_game.eval(&t[0], &t[1]);
        let (a2, b2) = self.stage2_game.eval(&t[2], &t[3]);
        Some(StagePayoffs { a1, b1, a2, b2 })
    }

    /// The only outcome, if there is exactly one and it is a single profile.
    pub fn unique_profile(&self) -> Option<&SgpoProfile<T>> {
        match self.profiles.as_slice() {
            [only] if only.profile().is_some() => Some(only),
            _ => None,
        }
    }

    pub fn kind(&self) -> SgpoKind {
        if let Some(only) = self.unique_profile() {
            if only.is_profile([0, 0, 0, 0]) {
                return SgpoKind::AllDefect;
            }
            if only.is_cooperate_then_defect() {
                return SgpoKind::CooperateThenDefect;
            }
            return SgpoKind::OtherUnique;
        }
        SgpoKind::Multiple {
            includes_cooperate_then_defect: self.contains_profile([1, 1, 0, 0]),
        }
    }
}

fn payoff_range<T: Scalar>(game: &BilinearGame<T>, component: &EquilibriumComponent<T>) -> (Interval<T>, Interval<T>) {
    // bilinear payoffs attain their extremes over a box at its corners
    let values: Vec<(T, T)> = component
        .corners()
        .iter()
        .map(|(x, y)| game.eval(x, y))
        .collect();
    let range = |pick: fn(&(T, T)) -> T| {
        let first = pick(&values[0]);
        let (lo, hi) = values.iter().fold((first.clone(), first), |(lo, hi), v| {
            (min_of(lo, pick(v)), max_of(hi, pick(v)))
        });
        Interval::new(lo, hi)
    };
    (range(|v| v.0.clone()), range(|v| v.1.clone()))
}

fn is_constant<T: Scalar>(range: &(Interval<T>, Interval<T>), tol: &T) -> bool {
    range.0.hi().clone() - range.0.lo().clone() <= *tol
        && range.1.hi().clone() - range.1.lo().clone() <= *tol
}

fn shift<T: Scalar>(iv: &Interval<T>, by: &T) -> Interval<T> {
    Interval::new(iv.lo().clone() + by.clone(), iv.hi().clone() + by.clone())
}

/// Backward induction over two stage games.
///
/// Every stage-2 equilibrium is taken as the anticipated continuation; sets
/// of equilibria are used whole when payoffs are constant on them and split
/// into their endpoints otherwise. Each continuation is added to the
/// stage-1 payoffs and the induced game solved. No tie-breaking: every
/// combination is reported.
pub fn backward_induction<T: Scalar>(
    stage1_game: BilinearGame<T>,
    stage2_game: BilinearGame<T>,
    tol: &T,
) -> SgpoReport<T> {
    let stage2_equilibria = nash_2x2_with_tol(&stage2_game, tol);

    let mut non_inducible = Vec::new();
    let mut plays: Vec<(usize, ContinuationSource, EquilibriumComponent<T>)> = Vec::new();
    for (idx, comp) in stage2_equilibria.iter().enumerate() {
        if comp.point().is_some() {
            plays.push((idx, ContinuationSource::Point, comp.clone()));
            continue;
        }
        let range = payoff_range(&stage2_game, comp);
        if is_constant(&range, tol) {
            plays.push((idx, ContinuationSource::ConstantSet, comp.clone()));
        } else {
            non_inducible.push(idx);
            for (x, y) in comp.corners() {
                let already = plays.iter().any(|(_, _, c)| c.is_point_at(&x, &y));
                if !already {
                    plays.push((idx, ContinuationSource::SetEndpoint, EquilibriumComponent::weak_point(x, y)));
                }
            }
        }
    }

    let mut branches = Vec::with_capacity(plays.len());
    let mut profiles = Vec::new();
    for (component_index, source, stage2_play) in plays {
        let rep = stage2_play.corners()[0].clone();
        let continuation = stage2_game.eval(&rep.0, &rep.1);
        let induced_game = stage1_game.with_continuation(&continuation);
        let stage1_equilibria = nash_2x2_with_tol(&induced_game, tol);
        let branch_index = branches.len();
        for s1 in &stage1_equilibria {
            let stage1_payoffs = payoff_range(&stage1_game, s1);
            let totals = (
                shift(&stage1_payoffs.0, &continuation.0),
                shift(&stage1_payoffs.1, &continuation.1),
            );
            let strictness = if s1.strictness() == Strictness::Strict
                && stage2_play.strictness() == Strictness::Strict
            {
                Strictness::Strict
            } else {
                Strictness::Weak
            };
            profiles.push(SgpoProfile {
                branch: branch_index,
                stage1: s1.clone(),
                stage2: stage2_play.clone(),
                stage1_payoffs,
                stage2_payoffs: continuation.clone(),
                totals,
                strictness,
            });
        }
        branches.push(InductionBranch {
            component_index,
            source,
            stage2_play,
            continuation,
            induced_game,
            stage1_equilibria,
        });
    }

    SgpoReport {
        stage1_game,
        stage2_game,
        stage2_equilibria,
        non_inducible,
        branches,
        profiles,
    }
}

/// Subgame-perfect outcomes of the game played on `state`, with stage games
/// measured through the density-matrix engine.
pub fn sgpo<T: Scalar>(state: &PureState<T>) -> Result<SgpoReport<T>> {
    let zero = (T::zero(), T::zero());
    let stage2 = stage_game(state, Stage::Second, &zero)?;
    let stage1 = stage_game(state, Stage::First, &zero)?;
    Ok(backward_induction(stage1, stage2, &T::exact_tol()))
}

/// Subgame-perfect outcomes for a restricted state, from the closed-form
/// payoffs. With an exact scalar every boundary case is resolved exactly.
pub fn sgpo_restricted<T: Scalar>(weights: &RestrictedStateWeights<T>) -> SgpoReport<T> {
    let zero = (T::zero(), T::zero());
    let stage2 = stage_game_from_weights(weights, Stage::Second, &zero);
    let stage1 = stage_game_from_weights(weights, Stage::First, &zero);
    backward_induction(stage1, stage2, &T::exact_tol())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::nash::ComponentKind;
    use crate::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn weights(w: [(i64, i64); 4]) -> RestrictedStateWeights<Rational> {
        RestrictedStateWeights::new(w.map(|(n, d)| r(n, d))).unwrap()
    }

    #[test]
    fn classical_all_defect() {
        let rep = sgpo(&PureState::<f64>::classical()).unwrap();
        assert_eq!(rep.kind(), SgpoKind::AllDefect);
        let only = rep.unique_profile().unwrap();
        assert_eq!(only.strictness, Strictness::Strict);
        assert_eq!(only.stage2_payoffs, (1.0, 1.0));
        assert_eq!(only.totals.0, Interval::point(2.0));
        assert_eq!(only.totals.1, Interval::point(2.0));
    }

    #[test]
    fn boundary_example_includes_cooperate_then_defect() {
        let rep = sgpo_restricted(&weights([(1, 6), (1, 6), (1, 2), (1, 6)]));
        assert_eq!(rep.stage2_equilibria.len(), 2);
        assert!(rep
            .stage2_equilibria
            .iter()
            .all(|c| c.kind() == ComponentKind::Segment));
        // B's payoff varies along {(t, 0)}, A's along {(0, t)}
        assert_eq!(rep.non_inducible, vec![0, 1]);
        let ctd = rep.find_profile([1, 1, 0, 0]).unwrap();
        assert_eq!(ctd.strictness, Strictness::Weak);
        // stage 1 at x_sum = 1/3: {(1, t)} and {(t, 1)} are all equilibria
        assert_eq!(ctd.stage1.kind(), ComponentKind::Segment);
        assert_eq!(ctd.stage2_payoffs, (r(5, 3), r(5, 3)));
        let pay = rep.outcome_payoffs([1, 1, 0, 0]).unwrap();
        assert_eq!(pay.as_array(), [r(5, 3), r(5, 3), r(5, 3), r(5, 3)]);
        assert_eq!(pay.total(crate::payoff::Player::A), r(10, 3));
        assert!(!rep.contains_profile([1, 1, 1, 1]));
        assert_eq!(
            rep.kind(),
            SgpoKind::Multiple {
                includes_cooperate_then_defect: true
            }
        );
    }

    #[test]
    fn strict_interior_example() {
        let rep = sgpo_restricted(&weights([(2, 10), (1, 10), (5, 10), (2, 10)]));
        assert_eq!(rep.kind(), SgpoKind::CooperateThenDefect);
        let only = rep.unique_profile().unwrap();
        assert_eq!(only.strictness, Strictness::Strict);
        // 1 + 2 x_sum and 1 + 2 y_sum
        assert_eq!(only.totals.0, Interval::point(r(16, 10) + r(16, 10)));
    }

    #[test]
    fn density_and_closed_form_agree_on_structure() {
        let w = RestrictedStateWeights::new([0.05, 0.15, 0.6, 0.2]).unwrap();
        let state = PureState::from_weights(&w, [0.3, -1.0, 2.0, 0.5]).unwrap();
        let a = sgpo(&state).unwrap();
        let b = sgpo_restricted(&w);
        assert_eq!(a.profiles.len(), b.profiles.len());
        assert_eq!(a.kind(), b.kind());
        assert!(a.stage2_game.max_coefficient_diff(&b.stage2_game) < 1e-12);
    }
}
