//! Command implementations. Each returns a serializable report; rendering
//! happens in `render`.

use num_rational::BigRational;
use qrepeat::equilibrium::{
    cooperation_conditions_with_tol, grid_agreement, sgpo, sgpo_restricted, SgpoReport,
};
use qrepeat::payoff::{
    all_payoffs, closed_form_payoffs, PayoffMatrix, Player, RestrictedStateWeights, StagePayoffs,
};
use qrepeat::quantum::{PureState, StrategyProfile};
use qrepeat::verification::{run_all, VerifyConfig};
use qrepeat::Scalar;
use rayon::prelude::*;

use crate::error::CliError;
use crate::input::{parse_phases, parse_state, parse_weights, parse_weights_exact};
use crate::report::{
    CheckDto, ConditionsDto, EvaluateReport, OracleDto, PayoffsDto, SgpoDto, SweepReport,
    SweepRow, VerifyReport,
};

/// Where the initial state comes from: explicit amplitudes, or restricted
/// weights with optional phases.
#[derive(Debug, Clone, Default)]
pub struct StateArgs {
    pub state: Option<String>,
    pub weights: Option<String>,
    pub phases: Option<String>,
}

impl StateArgs {
    pub fn resolve(&self) -> Result<PureState<f64>, CliError> {
        match (&self.state, &self.weights) {
            (Some(s), None) => {
                if self.phases.is_some() {
                    return Err(CliError::Usage("--phases needs --weights".into()));
                }
                parse_state(s)
            }
            (None, Some(w)) => {
                let weights = parse_weights(w)?;
                let phases = match &self.phases {
                    Some(p) => parse_phases(p)?,
                    None => [0.0; 4],
                };
                Ok(PureState::from_weights(&weights, phases)?)
            }
            (Some(_), Some(_)) => Err(CliError::Usage(
                "give either --state or --weights, not both".into(),
            )),
            (None, None) => Err(CliError::Usage("one of --state or --weights is required".into())),
        }
    }
}

pub fn evaluate(args: &StateArgs, profile: &StrategyProfile<f64>) -> Result<EvaluateReport, CliError> {
    let state = args.resolve()?;
    let density = all_payoffs(&state, profile)?;
    let weights = state.restricted_weights();
    let closed = weights.as_ref().map(|w| closed_form_payoffs(w, profile));
    Ok(EvaluateReport {
        restricted: weights.is_some(),
        weights: weights.as_ref().map(|w| *w.as_array()),
        profile: profile.as_array(),
        density_matrix: PayoffsDto::from(&density),
        max_discrepancy: closed.as_ref().map(|c| c.max_abs_diff(&density)),
        closed_form: closed.as_ref().map(Into::into),
    })
}

fn oracle_check<T: Scalar>(rep: &SgpoReport<T>, grid_n: usize, eps: &T) -> Result<OracleDto, CliError> {
    let stage2_agrees = grid_agreement(&rep.stage2_game, &rep.stage2_equilibria, grid_n, eps)?.agrees();
    let mut stage1_agrees = true;
    for b in &rep.branches {
        stage1_agrees &= grid_agreement(&b.induced_game, &b.stage1_equilibria, grid_n, eps)?.agrees();
    }
    Ok(OracleDto {
        grid_n,
        stage2_agrees,
        stage1_agrees,
    })
}

pub fn sgpo_command(args: &StateArgs, exact: bool, grid_n: usize, tol: f64) -> Result<SgpoDto, CliError> {
    if exact {
        let raw = match (&args.state, &args.weights, &args.phases) {
            (None, Some(w), None) => w,
            _ => {
                return Err(CliError::Usage(
                    "--exact works on --weights alone (phases do not affect payoffs)".into(),
                ))
            }
        };
        let w = parse_weights_exact(raw)?;
        let rep = sgpo_restricted(&w);
        let mut dto = SgpoDto::from_report(&rep);
        let c = cooperation_conditions_with_tol(&w, &BigRational::from_int(0));
        dto.conditions = Some(ConditionsDto::new(&w, &c));
        dto.oracle = Some(oracle_check(&rep, grid_n, &BigRational::from_int(0))?);
        return Ok(dto);
    }
    let state = args.resolve()?;
    let rep = sgpo(&state)?;
    let mut dto = SgpoDto::from_report(&rep);
    if let Some(w) = state.restricted_weights() {
        let c = cooperation_conditions_with_tol(&w, &tol);
        dto.conditions = Some(ConditionsDto::new(&w, &c));
    }
    dto.oracle = Some(oracle_check(&rep, grid_n, &tol)?);
    Ok(dto)
}

pub fn conditions(weights: &str, exact: bool, tol: f64) -> Result<ConditionsDto, CliError> {
    if exact {
        let w = parse_weights_exact(weights)?;
        let c = cooperation_conditions_with_tol(&w, &BigRational::from_int(0));
        Ok(ConditionsDto::new(&w, &c))
    } else {
        let w = parse_weights(weights)?;
        Ok(ConditionsDto::new(&w, &cooperation_conditions_with_tol(&w, &tol)))
    }
}

/// Compositions of `r` into four nonnegative parts, lexicographic.
pub fn compositions(r: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..=r {
        for b in 0..=r - a {
            for c in 0..=r - a - b {
                out.push([a, b, c, r - a - b - c]);
            }
        }
    }
    out
}

fn sweep_row<T: Scalar>(w: &RestrictedStateWeights<T>, tol: &T) -> SweepRow {
    let c = cooperation_conditions_with_tol(w, tol);
    let rep = sgpo_restricted(w);
    let totals: Option<StagePayoffs<T>> = match rep.unique_profile() {
        Some(p) => p.profile().and_then(|pr| {
            let pure = pr.as_array().map(|x| x.to_f64_lossy().round() as i64);
            rep.outcome_payoffs(pure)
        }),
        None => rep.outcome_payoffs([1, 1, 0, 0]),
    };
    let f = |v: &T| v.to_f64_lossy();
    let [w1, w2, w3, w4] = w.as_array().clone().map(|v| f(&v));
    SweepRow {
        w1,
        w2,
        w3,
        w4,
        x_sum: f(&c.x_sum),
        y_sum: f(&c.y_sum),
        cond1_value: f(&c.cond1_value),
        cond2_value: f(&c.cond2_value),
        cond1_class: c.cond1_class.to_string(),
        cond2_class: c.cond2_class.to_string(),
        sgpo_kind: rep.kind().to_string(),
        a_total: totals.as_ref().map(|t| f(&t.total(Player::A))),
        b_total: totals.as_ref().map(|t| f(&t.total(Player::B))),
    }
}

pub fn sweep(resolution: usize, exact: bool, tol: f64) -> Result<SweepReport, CliError> {
    if resolution < 2 {
        return Err(CliError::Usage("--resolution must be at least 2".into()));
    }
    let r = resolution as i64;
    let rows = compositions(resolution)
        .into_par_iter()
        .map(|n| {
            if exact {
                let w = RestrictedStateWeights::new(n.map(|k| BigRational::from_ratio(k as i64, r)))?;
                Ok(sweep_row(&w, &BigRational::from_int(0)))
            } else {
                let w = RestrictedStateWeights::new(n.map(|k| k as f64 / r as f64))?;
                Ok(sweep_row(&w, &tol))
            }
        })
        .collect::<Result<Vec<_>, qrepeat::Error>>()?;
    Ok(SweepReport {
        resolution,
        exact,
        rows,
    })
}

pub fn verify(seed: u64, samples: usize, tol: f64, corrupt_matrix: bool) -> Result<VerifyReport, CliError> {
    let mut config = VerifyConfig {
        seed,
        oracle_samples: samples,
        tolerance: tol,
        ..VerifyConfig::default()
    };
    if corrupt_matrix {
        config.matrix = PayoffMatrix::new([[(4, 4), (0, 5)], [(5, 0), (1, 1)]]);
    }
    let checks: Vec<CheckDto> = run_all(&config)?.iter().map(Into::into).collect();
    Ok(VerifyReport {
        seed,
        all_passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_count_and_order() {
        let c = compositions(2);
        assert_eq!(c.len(), 10);
        assert_eq!(c[0], [0, 0, 0, 2]);
        assert_eq!(c[9], [2, 0, 0, 0]);
        assert_eq!(compositions(6).len(), 84);
    }

    #[test]
    fn state_args_conflicts() {
        let both = StateArgs {
            state: Some("1;0;0;0".into()),
            weights: Some("1,0,0,0".into()),
            phases: None,
        };
        assert!(matches!(both.resolve(), Err(CliError::Usage(_))));
        assert!(matches!(StateArgs::default().resolve(), Err(CliError::Usage(_))));
    }
}
