use crate::error::Result;
use crate::payoff::{all_payoffs, closed_form_payoffs, RestrictedStateWeights, StagePayoffs};
use crate::quantum::{PureState, Stage, StrategyProfile};
use crate::scalar::Scalar;

/// `xy * x*y + x * x + y * y + constant`, where `x` is the row player's and
/// `y` the column player's identity probability.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearPayoff<T> {
    pub xy: T,
    pub x: T,
    pub y: T,
    pub constant: T,
}

impl<T: Scalar> BilinearPayoff<T> {
    pub fn new(xy: T, x: T, y: T, constant: T) -> Self {
        BilinearPayoff {
            xy,
            x,
            y,
            constant,
        }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    /// Interpolates the four corner values `u[x][y]`; exact for any
    /// multilinear function.
    pub fn from_corners(u00: T, u01: T, u10: T, u11: T) -> Self {
        let x = u10.clone() - u00.clone();
        let y = u01.clone() - u00.clone();
        let xy = u11 - u10 - u01 + u00.clone();
        Self::new(xy, x, y, u00)
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        self.xy.clone() * x.clone() * y.clone()
            + self.x.clone() * x.clone()
            + self.y.clone() * y.clone()
            + self.constant.clone()
    }

    pub fn coefficients(&self) -> [T; 4] {
        [
            self.xy.clone(),
            self.x.clone(),
            self.y.clone(),
            self.constant.clone(),
        ]
    }
}

/// Payoff pairs laid out as a bimatrix: row 0 is `x = 1` (cooperate), row 1
/// is `x = 0`; columns likewise for `y`.
pub type CornerMatrix<T> = [[(T, T); 2]; 2];

/// Two-player stage game with payoffs multilinear in both probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearGame<T> {
    row: BilinearPayoff<T>,
    col: BilinearPayoff<T>,
}

impl<T: Scalar> BilinearGame<T> {
    pub fn new(row: BilinearPayoff<T>, col: BilinearPayoff<T>) -> Self {
        BilinearGame { row, col }
    }

    pub fn zero() -> Self {
        Self::new(BilinearPayoff::zero(), BilinearPayoff::zero())
    }

    /// Game whose payoff pair at pure corner `(x, y)` is `corner(x, y)`.
    pub fn from_corner_fn<F>(mut corner: F) -> Result<Self>
    where
        F: FnMut(bool, bool) -> Result<(T, T)>,
    {
        let c00 = corner(false, false)?;
        let c01 = corner(false, true)?;
        let c10 = corner(true, false)?;
        let c11 = corner(true, true)?;
        Ok(Self::new(
            BilinearPayoff::from_corners(c00.0, c01.0, c10.0, c11.0),
            BilinearPayoff::from_corners(c00.1, c01.1, c10.1, c11.1),
        ))
    }

    pub fn row(&self) -> &BilinearPayoff<T> {
        &self.row
    }

    pub fn col(&self) -> &BilinearPayoff<T> {
        &self.col
    }

    pub fn eval(&self, x: &T, y: &T) -> (T, T) {
        (self.row.eval(x, y), self.col.eval(x, y))
    }

    /// `d(row payoff)/dx` at column probability `y`.
    pub fn row_slope(&self, y: &T) -> T {
        self.row.xy.clone() * y.clone() + self.row.x.clone()
    }

    /// `d(column payoff)/dy` at row probability `x`.
    pub fn col_slope(&self, x: &T) -> T {
        self.col.xy.clone() * x.clone() + self.col.y.clone()
    }

    /// Adds a constant payoff pair, e.g. the anticipated continuation payoffs.
    pub fn with_continuation(&self, continuation: &(T, T)) -> Self {
        let mut out = self.clone();
        out.row.constant = out.row.constant + continuation.0.clone();
        out.col.constant = out.col.constant + continuation.1.clone();
        out
    }

    pub fn corner_matrix(&self) -> CornerMatrix<T> {
        let (one, zero) = (T::one(), T::zero());
        [
            [self.eval(&one, &one), self.eval(&one, &zero)],
            [self.eval(&zero, &one), self.eval(&zero, &zero)],
        ]
    }

    pub fn max_coefficient_diff(&self, other: &Self) -> T {
        self.row
            .coefficients()
            .into_iter()
            .chain(self.col.coefficients())
            .zip(other.row.coefficients().into_iter().chain(other.col.coefficients()))
            .fold(T::zero(), |m, (a, b)| {
                let d = (a - b).abs();
                if d > m {
                    d
                } else {
                    m
                }
            })
    }
}

/// Stage game extracted from an arbitrary payoff evaluator by varying the
/// stage's pair over the pure corners. The other stage is held at full
/// cooperation; stage payoffs do not depend on it.
pub fn stage_game_with<T, F>(mut payoffs: F, stage: Stage, continuation: &(T, T)) -> Result<BilinearGame<T>>
where
    T: Scalar,
    F: FnMut(&StrategyProfile<T>) -> Result<StagePayoffs<T>>,
{
    let base = StrategyProfile::new(T::one(), T::one(), T::one(), T::one())?;
    let as_prob = |b: bool| if b { T::one() } else { T::zero() };
    let game = BilinearGame::from_corner_fn(|x, y| {
        let profile = base.with_stage(stage, (as_prob(x), as_prob(y)))?;
        Ok(payoffs(&profile)?.stage_pair(stage))
    })?;
    Ok(game.with_continuation(continuation))
}

/// Stage game of `state`, measured through the density-matrix engine.
pub fn stage_game<T: Scalar>(
    state: &PureState<T>,
    stage: Stage,
    continuation: &(T, T),
) -> Result<BilinearGame<T>> {
    stage_game_with(|profile| all_payoffs(state, profile), stage, continuation)
}

/// Stage game of the restricted family from the closed-form polynomials.
pub fn stage_game_from_weights<T: Scalar>(
    weights: &RestrictedStateWeights<T>,
    stage: Stage,
    continuation: &(T, T),
) -> BilinearGame<T> {
    stage_game_with(
        |profile| Ok(closed_form_payoffs(weights, profile)),
        stage,
        continuation,
    )
    .expect("closed-form evaluation cannot fail on unit corners")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn classical_stage_two_coefficients() {
        let g = stage_game(&PureState::<f64>::classical(), Stage::Second, &(0.0, 0.0)).unwrap();
        assert_eq!(g.row().coefficients(), [-1.0, -1.0, 4.0, 1.0]);
        // B: -p1 q1 + 4 p1 - q1 + 1
        assert_eq!(g.col().coefficients(), [-1.0, 4.0, -1.0, 1.0]);
    }

    #[test]
    fn classical_stage_one_with_continuation() {
        let g = stage_game(&PureState::<f64>::classical(), Stage::First, &(1.0, 1.0)).unwrap();
        assert_eq!(g.row().constant, 2.0);
        assert_eq!(g.col().constant, 2.0);
        assert_eq!(g.row().coefficients(), [-1.0, -1.0, 4.0, 2.0]);
    }

    #[test]
    fn boundary_weights_stage_two_coefficients() {
        let w = RestrictedStateWeights::new([r(1, 6), r(1, 6), r(1, 2), r(1, 6)]).unwrap();
        let g = stage_game_from_weights(&w, Stage::Second, &(r(0, 1), r(0, 1)));
        // (1 - y)(-xy - x + 4y + 1) + y(-xy + 2x - 3y + 3) at y_sum = 1/3
        assert_eq!(g.row().coefficients(), [r(-1, 1), r(0, 1), r(5, 3), r(5, 3)]);
        assert_eq!(g.col().coefficients(), [r(-1, 1), r(5, 3), r(0, 1), r(5, 3)]);
    }

    #[test]
    fn corner_matrix_layout() {
        let g = stage_game(&PureState::<f64>::classical(), Stage::First, &(0.0, 0.0)).unwrap();
        assert_eq!(
            g.corner_matrix(),
            [[(3.0, 3.0), (0.0, 5.0)], [(5.0, 0.0), (1.0, 1.0)]]
        );
        assert_eq!(BilinearGame::<f64>::zero().corner_matrix(), [[(0.0, 0.0); 2]; 2]);
    }

    #[test]
    fn corners_of_pd_polynomial() {
        let p = BilinearPayoff::new(-1.0, -1.0, 4.0, 1.0);
        assert_eq!(p.eval(&1.0, &1.0), 3.0);
        assert_eq!(p.eval(&1.0, &0.0), 0.0);
        assert_eq!(p.eval(&0.0, &1.0), 5.0);
        assert_eq!(p.eval(&0.0, &0.0), 1.0);
        assert_eq!(BilinearPayoff::from_corners(1.0, 5.0, 0.0, 3.0), p);
    }
}
