//! Payoff observables, trace-based stage payoffs and the closed-form payoff
//! polynomials for the restricted state family.

use std::fmt;

use crate::error::{Error, Result};
use crate::quantum::{
    evolve_two_stage, BasisLabel, DensityMatrix, LinearOperator, PureState, Stage,
    StrategyProfile, DIM,
};
use crate::scalar::{max_of, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    A,
    B,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::A, Player::B];
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::A => write!(f, "A"),
            Player::B => write!(f, "B"),
        }
    }
}

/// A pure move of the underlying 2x2 game. Qubit level `1` is `Cooperate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Cooperate,
    Defect,
}

impl Move {
    fn from_symbol(symbol: u8) -> Move {
        if symbol == 1 {
            Move::Cooperate
        } else {
            Move::Defect
        }
    }

    fn slot(self) -> usize {
        match self {
            Move::Cooperate => 0,
            Move::Defect => 1,
        }
    }
}

/// Bimatrix of (A payoff, B payoff), indexed `[A move][B move]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PayoffMatrix {
    entries: [[(i64, i64); 2]; 2],
}

impl PayoffMatrix {
    /// `(C,C) = (3,3)`, `(C,D) = (0,5)`, `(D,C) = (5,0)`, `(D,D) = (1,1)`.
    pub const PRISONERS_DILEMMA: PayoffMatrix = PayoffMatrix {
        entries: [[(3, 3), (0, 5)], [(5, 0), (1, 1)]],
    };

    pub fn new(entries: [[(i64, i64); 2]; 2]) -> Self {
        PayoffMatrix { entries }
    }

    pub fn entry(&self, a: Move, b: Move) -> (i64, i64) {
        self.entries[a.slot()][b.slot()]
    }

    pub fn payoff(&self, player: Player, a: Move, b: Move) -> i64 {
        let (pa, pb) = self.entry(a, b);
        match player {
            Player::A => pa,
            Player::B => pb,
        }
    }
}

impl Default for PayoffMatrix {
    fn default() -> Self {
        Self::PRISONERS_DILEMMA
    }
}

/// A payoff observable, diagonal in the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable<T> {
    diagonal: Vec<T>,
}

impl<T: Scalar> Observable<T> {
    pub fn diagonal(&self) -> &[T] {
        &self.diagonal
    }

    pub fn value_at(&self, label: BasisLabel) -> &T {
        &self.diagonal[label.index()]
    }

    pub fn as_operator(&self) -> LinearOperator<T> {
        LinearOperator::diagonal(&self.diagonal).expect("observable has 16 entries")
    }

    /// `Tr(O rho)`; fails if the trace has an imaginary part above the input
    /// tolerance.
    pub fn mean(&self, rho: &DensityMatrix<T>) -> Result<T> {
        let tr = self.as_operator().trace_product(rho);
        if tr.im.abs() > T::input_tol() {
            return Err(Error::Numerical(format!(
                "payoff trace has imaginary part {}",
                tr.im.to_f64_lossy()
            )));
        }
        Ok(tr.re)
    }
}

/// Observable paying `player` according to `matrix` on the moves encoded by
/// the stage's qubit pair, regardless of the other pair.
pub fn payoff_operator_for<T: Scalar>(
    matrix: &PayoffMatrix,
    player: Player,
    stage: Stage,
) -> Observable<T> {
    let (qa, qb) = stage.qubits();
    let diagonal = BasisLabel::all()
        .map(|label| {
            let a = Move::from_symbol(label.symbol(qa));
            let b = Move::from_symbol(label.symbol(qb));
            T::from_int(matrix.payoff(player, a, b))
        })
        .collect::<Vec<_>>();
    debug_assert_eq!(diagonal.len(), DIM);
    Observable { diagonal }
}

pub fn payoff_operator<T: Scalar>(player: Player, stage: Stage) -> Observable<T> {
    payoff_operator_for(&PayoffMatrix::PRISONERS_DILEMMA, player, stage)
}

pub fn measured_payoff<T: Scalar>(
    rho_ffin: &DensityMatrix<T>,
    player: Player,
    stage: Stage,
) -> Result<T> {
    payoff_operator(player, stage).mean(rho_ffin)
}

/// Per-player, per-stage payoffs.
#[derive(Debug, Clone, PartialEq)]
pub struct StagePayoffs<T> {
    pub a1: T,
    pub b1: T,
    pub a2: T,
    pub b2: T,
}

impl<T: Scalar> StagePayoffs<T> {
    pub fn get(&self, player: Player, stage: Stage) -> &T {
        match (player, stage) {
            (Player::A, Stage::First) => &self.a1,
            (Player::B, Stage::First) => &self.b1,
            (Player::A, Stage::Second) => &self.a2,
            (Player::B, Stage::Second) => &self.b2,
        }
    }

    pub fn stage_pair(&self, stage: Stage) -> (T, T) {
        (
            self.get(Player::A, stage).clone(),
            self.get(Player::B, stage).clone(),
        )
    }

    pub fn total(&self, player: Player) -> T {
        self.get(player, Stage::First).clone() + self.get(player, Stage::Second).clone()
    }

    pub fn as_array(&self) -> [T; 4] {
        [
            self.a1.clone(),
            self.b1.clone(),
            self.a2.clone(),
            self.b2.clone(),
        ]
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.as_array()
            .into_iter()
            .zip(other.as_array())
            .fold(T::zero(), |m, (x, y)| max_of(m, (x - y).abs()))
    }
}

/// Measures all four payoffs on an already evolved state.
pub fn payoffs_of_final_state<T: Scalar>(
    rho_ffin: &DensityMatrix<T>,
    matrix: &PayoffMatrix,
) -> Result<StagePayoffs<T>> {
    let m = |player, stage| payoff_operator_for::<T>(matrix, player, stage).mean(rho_ffin);
    Ok(StagePayoffs {
        a1: m(Player::A, Stage::First)?,
        b1: m(Player::B, Stage::First)?,
        a2: m(Player::A, Stage::Second)?,
        b2: m(Player::B, Stage::Second)?,
    })
}

/// Evolves `state` through both stage channels and measures every payoff.
pub fn all_payoffs<T: Scalar>(
    state: &PureState<T>,
    profile: &StrategyProfile<T>,
) -> Result<StagePayoffs<T>> {
    all_payoffs_with(&PayoffMatrix::PRISONERS_DILEMMA, state, profile)
}

pub fn all_payoffs_with<T: Scalar>(
    matrix: &PayoffMatrix,
    state: &PureState<T>,
    profile: &StrategyProfile<T>,
) -> Result<StagePayoffs<T>> {
    let rho = DensityMatrix::from_pure(state);
    let rho_ffin = evolve_two_stage(&rho, profile)?;
    payoffs_of_final_state(&rho_ffin, matrix)
}

/// Moduli-squared `|c1|^2 .. |c4|^2` of the restricted initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedStateWeights<T> {
    w: [T; 4],
}

impl<T: Scalar> RestrictedStateWeights<T> {
    pub fn new(w: [T; 4]) -> Result<Self> {
        Self::with_tolerance(w, T::input_tol())
    }

    pub fn with_tolerance(w: [T; 4], tol: T) -> Result<Self> {
        if w.iter().any(|x| !x.is_finite_value() || *x < T::zero()) {
            return Err(Error::Domain("weights must be finite and nonnegative".into()));
        }
        let sum = w.iter().fold(T::zero(), |acc, x| acc + x.clone());
        if (sum.clone() - T::one()).abs() > tol {
            return Err(Error::Domain(format!(
                "weights sum to {} instead of 1",
                sum.to_f64_lossy()
            )));
        }
        Ok(RestrictedStateWeights { w })
    }

    /// The classical corner `w1 = 1`.
    pub fn classical() -> Self {
        RestrictedStateWeights {
            w: [T::one(), T::zero(), T::zero(), T::zero()],
        }
    }

    pub fn w1(&self) -> &T {
        &self.w[0]
    }

    pub fn w2(&self) -> &T {
        &self.w[1]
    }

    pub fn w3(&self) -> &T {
        &self.w[2]
    }

    pub fn w4(&self) -> &T {
        &self.w[3]
    }

    pub fn as_array(&self) -> &[T; 4] {
        &self.w
    }

    /// Weight on first-stage label `11`: `w1 + w2`.
    pub fn x_sum(&self) -> T {
        self.w[0].clone() + self.w[1].clone()
    }

    /// Weight on second-stage label `22`: `w2 + w4`.
    pub fn y_sum(&self) -> T {
        self.w[1].clone() + self.w[3].clone()
    }
}

// Stage payoff of a player whose pair starts at (C,C): the bare PD polynomial.
fn from_cooperate<T: Scalar>(own: &T, other: &T) -> T {
    let four = T::from_int(4);
    -(own.clone() * other.clone()) - own.clone() + four * other.clone() + T::one()
}

// Same pair starting at (D,D): identity keeps (D,D), double inversion gives (C,C).
fn from_defect<T: Scalar>(own: &T, other: &T) -> T {
    let (two, three) = (T::from_int(2), T::from_int(3));
    -(own.clone() * other.clone()) + two * own.clone() - three.clone() * other.clone() + three
}

/// Closed-form payoffs for the restricted family.
pub fn closed_form_payoffs<T: Scalar>(
    w: &RestrictedStateWeights<T>,
    profile: &StrategyProfile<T>,
) -> StagePayoffs<T> {
    let [w1, w2, w3, w4] = w.as_array().clone();
    let (p, q) = profile.stage(Stage::First);
    let (p1, q1) = profile.stage(Stage::Second);
    let s1_coop = w1.clone() + w2.clone();
    let s1_def = w3.clone() + w4.clone();
    let s2_coop = w1 + w3;
    let s2_def = w2 + w4;
    StagePayoffs {
        a1: s1_coop.clone() * from_cooperate(&p, &q) + s1_def.clone() * from_defect(&p, &q),
        b1: s1_coop * from_cooperate(&q, &p) + s1_def * from_defect(&q, &p),
        a2: s2_coop.clone() * from_cooperate(&p1, &q1) + s2_def.clone() * from_defect(&p1, &q1),
        b2: s2_coop * from_cooperate(&q1, &p1) + s2_def * from_defect(&q1, &p1),
    }
}

/// Payoffs of the classical two-stage game with mixed strategies.
pub fn classical_payoffs<T: Scalar>(profile: &StrategyProfile<T>) -> StagePayoffs<T> {
    let (p, q) = profile.stage(Stage::First);
    let (p1, q1) = profile.stage(Stage::Second);
    StagePayoffs {
        a1: from_cooperate(&p, &q),
        b1: from_cooperate(&q, &p),
        a2: from_cooperate(&p1, &q1),
        b2: from_cooperate(&q1, &p1),
    }
}
