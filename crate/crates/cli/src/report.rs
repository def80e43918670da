//! Serializable report shapes. Every scalar is emitted as `f64`, whatever
//! field the computation ran in.

use qrepeat::equilibrium::{
    BilinearGame, ConditionReport, EquilibriumComponent, Interval, SgpoReport,
};
use qrepeat::payoff::{Player, RestrictedStateWeights, StagePayoffs};
use qrepeat::verification::CheckOutcome;
use qrepeat::Scalar;
use serde::{Deserialize, Serialize};

fn f<T: Scalar>(v: &T) -> f64 {
    v.to_f64_lossy()
}

fn span<T: Scalar>(iv: &Interval<T>) -> [f64; 2] {
    [f(iv.lo()), f(iv.hi())]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PayoffsDto {
    pub a1: f64,
    pub b1: f64,
    pub a2: f64,
    pub b2: f64,
    pub a_total: f64,
    pub b_total: f64,
}

impl<T: Scalar> From<&StagePayoffs<T>> for PayoffsDto {
    fn from(p: &StagePayoffs<T>) -> Self {
        PayoffsDto {
            a1: f(&p.a1),
            b1: f(&p.b1),
            a2: f(&p.a2),
            b2: f(&p.b2),
            a_total: f(&p.total(Player::A)),
            b_total: f(&p.total(Player::B)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluateReport {
    pub restricted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<[f64; 4]>,
    pub profile: [f64; 4],
    pub density_matrix: PayoffsDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<PayoffsDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_discrepancy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameDto {
    /// `[xy, x, y, constant]` for the row player (A).
    pub row: [f64; 4],
    pub col: [f64; 4],
    /// Payoff pairs with rows `x = 1, 0` and columns `y = 1, 0`.
    pub corners: [[[f64; 2]; 2]; 2],
}

impl<T: Scalar> From<&BilinearGame<T>> for GameDto {
    fn from(g: &BilinearGame<T>) -> Self {
        let m = g.corner_matrix();
        GameDto {
            row: g.row().coefficients().map(|c| f(&c)),
            col: g.col().coefficients().map(|c| f(&c)),
            corners: [
                [[f(&m[0][0].0), f(&m[0][0].1)], [f(&m[0][1].0), f(&m[0][1].1)]],
                [[f(&m[1][0].0), f(&m[1][0].1)], [f(&m[1][1].0), f(&m[1][1].1)]],
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentDto {
    pub kind: String,
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub strictness: String,
}

impl<T: Scalar> From<&EquilibriumComponent<T>> for ComponentDto {
    fn from(c: &EquilibriumComponent<T>) -> Self {
        ComponentDto {
            kind: c.kind().to_string(),
            x: span(c.x()),
            y: span(c.y()),
            strictness: c.strictness().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchDto {
    pub stage2_component: usize,
    pub source: String,
    pub stage2_play: ComponentDto,
    pub continuation: [f64; 2],
    pub induced_game: GameDto,
    pub stage1_equilibria: Vec<ComponentDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileDto {
    pub branch: usize,
    pub stage1: ComponentDto,
    pub stage2: ComponentDto,
    /// `(p, q, p1, q1)` when both stages are single points.
    pub profile: Option<[f64; 4]>,
    pub stage1_payoffs: [[f64; 2]; 2],
    pub stage2_payoffs: [f64; 2],
    pub a_total: [f64; 2],
    pub b_total: [f64; 2],
    pub strictness: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleDto {
    pub grid_n: usize,
    pub stage2_agrees: bool,
    pub stage1_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CooperateThenDefectDto {
    pub included: bool,
    pub strictness: Option<String>,
    pub payoffs: Option<PayoffsDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SgpoDto {
    pub kind: String,
    pub stage1_game: GameDto,
    pub stage2_game: GameDto,
    pub stage2_equilibria: Vec<ComponentDto>,
    pub non_inducible: Vec<usize>,
    pub branches: Vec<BranchDto>,
    pub profiles: Vec<ProfileDto>,
    pub cooperate_then_defect: CooperateThenDefectDto,
    pub conditions: Option<ConditionsDto>,
    pub oracle: Option<OracleDto>,
}

impl SgpoDto {
    pub fn from_report<T: Scalar>(rep: &SgpoReport<T>) -> Self {
        let branches = rep
            .branches
            .iter()
            .map(|b| BranchDto {
                stage2_component: b.component_index,
                source: b.source.to_string(),
                stage2_play: (&b.stage2_play).into(),
                continuation: [f(&b.continuation.0), f(&b.continuation.1)],
                induced_game: (&b.induced_game).into(),
                stage1_equilibria: b.stage1_equilibria.iter().map(Into::into).collect(),
            })
            .collect();
        let profiles = rep
            .profiles
            .iter()
            .map(|p| ProfileDto {
                branch: p.branch,
                stage1: (&p.stage1).into(),
                stage2: (&p.stage2).into(),
                profile: p.profile().map(|pr| pr.as_array().map(|v| f(&v))),
                stage1_payoffs: [span(&p.stage1_payoffs.0), span(&p.stage1_payoffs.1)],
                stage2_payoffs: [f(&p.stage2_payoffs.0), f(&p.stage2_payoffs.1)],
                a_total: span(&p.totals.0),
                b_total: span(&p.totals.1),
                strictness: p.strictness.to_string(),
            })
            .collect();
        let ctd = rep.find_profile([1, 1, 0, 0]);
        SgpoDto {
            kind: rep.kind().to_string(),
            stage1_game: (&rep.stage1_game).into(),
            stage2_game: (&rep.stage2_game).into(),
            stage2_equilibria: rep.stage2_equilibria.iter().map(Into::into).collect(),
            non_inducible: rep.non_inducible.clone(),
            branches,
            profiles,
            cooperate_then_defect: CooperateThenDefectDto {
                included: ctd.is_some(),
                strictness: ctd.map(|p| p.strictness.to_string()),
                payoffs: rep.outcome_payoffs([1, 1, 0, 0]).as_ref().map(Into::into),
            },
            conditions: None,
            oracle: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionsDto {
    pub weights: [f64; 4],
    pub x_sum: f64,
    pub y_sum: f64,
    pub cond1_value: f64,
    pub cond2_value: f64,
    pub cond1_class: String,
    pub cond2_class: String,
    pub joint_holds: bool,
}

impl ConditionsDto {
    pub fn new<T: Scalar>(w: &RestrictedStateWeights<T>, c: &ConditionReport<T>) -> Self {
        ConditionsDto {
            weights: w.as_array().clone().map(|v| f(&v)),
            x_sum: f(&c.x_sum),
            y_sum: f(&c.y_sum),
            cond1_value: f(&c.cond1_value),
            cond2_value: f(&c.cond2_value),
            cond1_class: c.cond1_class.to_string(),
            cond2_class: c.cond2_class.to_string(),
            joint_holds: c.both_hold(),
        }
    }
}

/// One row of the simplex sweep; field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
    pub w4: f64,
    pub x_sum: f64,
    pub y_sum: f64,
    pub cond1_value: f64,
    pub cond2_value: f64,
    pub cond1_class: String,
    pub cond2_class: String,
    pub sgpo_kind: String,
    pub a_total: Option<f64>,
    pub b_total: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub resolution: usize,
    pub exact: bool,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckDto {
    pub name: String,
    pub samples: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl From<&CheckOutcome> for CheckDto {
    fn from(c: &CheckOutcome) -> Self {
        CheckDto {
            name: c.name.to_string(),
            samples: c.samples,
            max_error: c.max_error,
            tolerance: c.tolerance,
            passed: c.passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<CheckDto>,
    pub all_passed: bool,
}
