use super::basis::Stage;
use super::density::DensityMatrix;
use super::operator::LinearOperator;
use crate::error::{Error, Result};
use crate::scalar::{in_unit_interval, Scalar};

/// Probabilities with which each player applies the identity (cooperating)
/// operator: `p, q` in the first stage and `p1, q1` in the second.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyProfile<T> {
    p: T,
    q: T,
    p1: T,
    q1: T,
}

impl<T: Scalar> StrategyProfile<T> {
    pub fn new(p: T, q: T, p1: T, q1: T) -> Result<Self> {
        for (name, v) in [("p", &p), ("q", &q), ("p1", &p1), ("q1", &q1)] {
            check_probability(name, v)?;
        }
        Ok(StrategyProfile { p, q, p1, q1 })
    }

    /// Profile built from a stage-1 pair and a stage-2 pair.
    pub fn from_stages(first: (T, T), second: (T, T)) -> Result<Self> {
        Self::new(first.0, first.1, second.0, second.1)
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    pub fn p1(&self) -> &T {
        &self.p1
    }

    pub fn q1(&self) -> &T {
        &self.q1
    }

    /// The (A, B) identity probabilities used in `stage`.
    pub fn stage(&self, stage: Stage) -> (T, T) {
        match stage {
            Stage::First => (self.p.clone(), self.q.clone()),
            Stage::Second => (self.p1.clone(), self.q1.clone()),
        }
    }

    /// Copy with the given stage's pair replaced.
    pub fn with_stage(&self, stage: Stage, pair: (T, T)) -> Result<Self> {
        match stage {
            Stage::First => Self::new(pair.0, pair.1, self.p1.clone(), self.q1.clone()),
            Stage::Second => Self::new(self.p.clone(), self.q.clone(), pair.0, pair.1),
        }
    }

    pub fn as_array(&self) -> [T; 4] {
        [self.p.clone(), self.q.clone(), self.p1.clone(), self.q1.clone()]
    }
}

fn check_probability<T: Scalar>(name: &str, v: &T) -> Result<()> {
    if !v.is_finite_value() || !in_unit_interval(v) {
        return Err(Error::Domain(format!(
            "probability {name} = {} is outside [0, 1]",
            v.to_f64_lossy()
        )));
    }
    Ok(())
}

/// One stage of play: player A keeps its qubit with probability `pr_id_a`
/// and flips it otherwise, independently of player B.
///
/// `pq * rho + p(1-q) * (I x C) rho (I x C) + (1-p)q * (C x I) rho (C x I)
/// + (1-p)(1-q) * (C x C) rho (C x C)`, with the flips on the stage's pair.
pub fn stage_channel<T: Scalar>(
    rho: &DensityMatrix<T>,
    pr_id_a: &T,
    pr_id_b: &T,
    stage: Stage,
) -> Result<DensityMatrix<T>> {
    check_probability("identity probability of A", pr_id_a)?;
    check_probability("identity probability of B", pr_id_b)?;
    let p = pr_id_a.clone();
    let q = pr_id_b.clone();
    let not_p = T::one() - p.clone();
    let not_q = T::one() - q.clone();

    let branches = [
        (p.clone() * q.clone(), false, false),
        (p * not_q.clone(), false, true),
        (not_p.clone() * q, true, false),
        (not_p * not_q, true, true),
    ];
    let terms: Vec<(T, DensityMatrix<T>)> = branches
        .into_iter()
        .filter(|(w, _, _)| !w.is_zero())
        .map(|(w, flip_a, flip_b)| {
            let u = LinearOperator::stage_move(stage, flip_a, flip_b);
            (w, u.conjugate(rho))
        })
        .collect();
    Ok(DensityMatrix::mixture(&terms))
}

/// Both stages in play order: first-stage channel, then second-stage channel.
pub fn evolve_two_stage<T: Scalar>(
    rho_ini: &DensityMatrix<T>,
    profile: &StrategyProfile<T>,
) -> Result<DensityMatrix<T>> {
    let (p, q) = profile.stage(Stage::First);
    let (p1, q1) = profile.stage(Stage::Second);
    let rho_fin = stage_channel(rho_ini, &p, &q, Stage::First)?;
    stage_channel(&rho_fin, &p1, &q1, Stage::Second)
}
