//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::ExitCode;

use qrepeat::equilibrium::{
    cooperation_conditions, grid_agreement, sgpo, sgpo_restricted, ComponentKind, ConditionClass,
    SgpoReport, Strictness,
};
use qrepeat::payoff::{all_payoffs, PayoffMatrix, RestrictedStateWeights};
use qrepeat::quantum::{
    evolve_two_stage, stage_channel, Amplitude, DensityMatrix, LinearOperator, PureState,
    QubitIndex, Stage, StrategyProfile,
};
use qrepeat::sampling::{random_general_state, random_profile, random_restricted_state, random_weights};
use qrepeat::verification::{classical_recovery, oracle_equivalence};
use qrepeat::{BigRational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn unique_all_defect<T: Scalar>(rep: &SgpoReport<T>) -> Result<(), String> {
    let only = rep.unique_profile().ok_or("SGPO is not unique")?;
    if !only.is_profile([0, 0, 0, 0]) {
        return Err(format!("unique SGPO is not (0,0,0,0): {only:?}"));
    }
    let pay = rep.outcome_payoffs([0, 0, 0, 0]).ok_or("no payoffs")?;
    let [a1, b1, a2, b2] = pay.as_array().map(|v| v.to_f64_lossy());
    let totals = (only.totals.0.lo().to_f64_lossy(), only.totals.1.hi().to_f64_lossy());
    if [a1, b1, a2, b2].iter().all(|v| close(*v, 1.0, 1e-12))
        && close(totals.0, 2.0, 1e-12)
        && close(totals.1, 2.0, 1e-12)
    {
        Ok(())
    } else {
        Err(format!("stage payoffs ({a1}, {b1}), ({a2}, {b2}), totals {totals:?}"))
    }
}

fn criterion_1() -> Outcome {
    let classical = PureState::<f64>::classical();
    unique_all_defect(&sgpo(&classical).map_err(|e| e.to_string())?)?;
    unique_all_defect(&sgpo_restricted(&RestrictedStateWeights::<BigRational>::classical()))?;
    Ok("classical state: unique SGPO (0,0,0,0), stage payoffs (1,1) and (1,1), totals (2,2) on the density and exact paths".into())
}

fn criterion_2() -> Outcome {
    let sixth = 1.0f64 / 6.0;
    let w = RestrictedStateWeights::new([sixth, sixth, 0.5, sixth]).map_err(|e| e.to_string())?;
    let cond = cooperation_conditions(&w);
    let boundary = cond.cond1_value.abs() <= 1e-12
        && cond.cond2_value.abs() <= 1e-12
        && cond.cond1_class == ConditionClass::BoundaryHold
        && cond.cond2_class == ConditionClass::BoundaryHold;
    if !boundary {
        return Err(format!("conditions {cond:?}"));
    }

    let state = PureState::from_weights(&w, [0.0; 4]).map_err(|e| e.to_string())?;
    let float_rep = sgpo(&state).map_err(|e| e.to_string())?;
    let exact_w = RestrictedStateWeights::new([
        BigRational::from_ratio(1, 6),
        BigRational::from_ratio(1, 6),
        BigRational::from_ratio(1, 2),
        BigRational::from_ratio(1, 6),
    ])
    .map_err(|e| e.to_string())?;
    let exact_rep = sgpo_restricted(&exact_w);
    let exact_cond = cooperation_conditions(&exact_w);
    if !(exact_cond.cond1_class == ConditionClass::BoundaryHold
        && exact_cond.cond2_class == ConditionClass::BoundaryHold)
    {
        return Err(format!("exact conditions {exact_cond:?}"));
    }

    let float_pay = float_rep
        .outcome_payoffs([1, 1, 0, 0])
        .ok_or("density-path SGPO set lacks (1,1,0,0)")?;
    let exact_pay = exact_rep
        .outcome_payoffs([1, 1, 0, 0])
        .ok_or("exact SGPO set lacks (1,1,0,0)")?;
    let five_thirds = BigRational::from_ratio(5, 3);
    let exact_ok = exact_pay.as_array().iter().all(|v| *v == five_thirds);
    let float_ok = float_pay.as_array().iter().all(|v| close(*v, 5.0 / 3.0, 1e-12));
    check(
        exact_ok && float_ok,
        format!(
            "cond1 = {:e}, cond2 = {:e} (boundary-hold); SGPO set ({} outcomes) contains (1,1,0,0) with stage payoffs 5/3 each",
            cond.cond1_value,
            cond.cond2_value,
            exact_rep.profiles.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let classical = cooperation_conditions(&RestrictedStateWeights::<f64>::classical());
    if classical.both_hold() || classical.x_sum != 1.0 || classical.cond2_class != ConditionClass::Fail {
        return Err(format!("classical conditions {classical:?}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut examined = 0;
    let mut offenders = Vec::new();
    for _ in 0..10_000 {
        let w = random_weights(&mut rng);
        if w.x_sum() <= 1.0 / 3.0 {
            continue;
        }
        examined += 1;
        let rep = sgpo_restricted(&w);
        let strict_ctd = rep
            .profiles
            .iter()
            .any(|p| p.is_cooperate_then_defect() && p.stage1.strictness() == Strictness::Strict);
        if strict_ctd {
            offenders.push(w);
        }
    }
    check(
        offenders.is_empty() && examined > 0,
        format!(
            "w = (1,0,0,0): x_sum = 1, cond2 fails; {examined} of 10000 draws had x_sum > 1/3, {} gave a strict cooperate-then-defect SGPO",
            offenders.len()
        ),
    )
}

fn criterion_4() -> Outcome {
    let c = oracle_equivalence(4, 1000, &PayoffMatrix::PRISONERS_DILEMMA, 1e-9).map_err(|e| e.to_string())?;
    check(
        c.passed && c.samples == 1000,
        format!("{} phased restricted states and profiles, max |closed form - trace| = {:e}", c.samples, c.max_error),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut games = 0;
    let mut regimes = [0usize; 3];
    let mut failures = Vec::new();
    for i in 0..200 {
        let (w, state) = random_restricted_state(&mut rng).map_err(|e| e.to_string())?;
        let rep = sgpo(&state).map_err(|e| e.to_string())?;

        let mut agreed = grid_agreement(&rep.stage2_game, &rep.stage2_equilibria, 100, &1e-9)
            .map_err(|e| e.to_string())?
            .agrees();
        games += 1;
        for b in &rep.branches {
            agreed &= grid_agreement(&b.induced_game, &b.stage1_equilibria, 100, &1e-9)
                .map_err(|e| e.to_string())?
                .agrees();
            games += 1;
        }
        if !agreed {
            failures.push(format!("state {i}: grid disagreement"));
        }

        let y = w.y_sum();
        let eq = &rep.stage2_equilibria;
        let margin = 1e-6;
        let regime_ok = if y < 1.0 / 3.0 - margin {
            regimes[0] += 1;
            eq.len() == 1 && eq[0].is_point_at(&0.0, &0.0)
        } else if y > 2.0 / 3.0 + margin {
            regimes[2] += 1;
            eq.len() == 1 && eq[0].is_point_at(&1.0, &1.0)
        } else if y > 1.0 / 3.0 + margin && y < 2.0 / 3.0 - margin {
            regimes[1] += 1;
            let m = 3.0 * y - 1.0;
            let mixed = eq.iter().find(|c| c.kind() == ComponentKind::MixedPoint);
            eq.len() == 3
                && eq.iter().any(|c| c.is_point_at(&1.0, &0.0))
                && eq.iter().any(|c| c.is_point_at(&0.0, &1.0))
                && mixed
                    .and_then(|c| c.point())
                    .is_some_and(|(x, yy)| close(x, m, 1e-9) && close(yy, m, 1e-9))
        } else {
            true
        };
        if !regime_ok {
            failures.push(format!("state {i}: y_sum = {y}, stage-2 equilibria {eq:?}"));
        }
    }
    let all_regimes = regimes.iter().all(|&n| n > 0);
    check(
        failures.is_empty() && all_regimes,
        format!(
            "200 states, {games} stage games agree with the N=100 grid; regimes defect/mixed/cooperate sampled {}/{}/{}{}",
            regimes[0],
            regimes[1],
            regimes[2],
            failures.first().map(|f| format!("; first failure {f}")).unwrap_or_default()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let id = LinearOperator::<f64>::identity();
    let involution = (1..=4).all(|k| {
        let c = LinearOperator::<f64>::flip_on(QubitIndex::new(k).unwrap());
        c.matmul(&c) == id
    });

    let (mut trace_err, mut min_eig, mut phase_err, mut decouple_err, mut second_diff) =
        (0.0f64, f64::INFINITY, 0.0f64, 0.0f64, 0.0f64);
    let payoffs = |s: &PureState<f64>, p: [f64; 4]| -> Result<[f64; 4], String> {
        let prof = StrategyProfile::new(p[0], p[1], p[2], p[3]).map_err(|e| e.to_string())?;
        Ok(all_payoffs(s, &prof).map_err(|e| e.to_string())?.as_array())
    };
    let diff = |a: [f64; 4], b: [f64; 4]| a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);

    for _ in 0..100 {
        let state = random_general_state(&mut rng);
        let prof = random_profile(&mut rng);
        let p = prof.as_array();
        let rho = DensityMatrix::from_pure(&state);

        for stage in Stage::ALL {
            let (a, b) = prof.stage(stage);
            let out = stage_channel(&rho, &a, &b, stage).map_err(|e| e.to_string())?;
            trace_err = trace_err.max((out.trace() - rho.trace()).norm());
            min_eig = min_eig.min(out.min_eigenvalue());
        }
        let fin = evolve_two_stage(&rho, &prof).map_err(|e| e.to_string())?;
        trace_err = trace_err.max((fin.trace() - rho.trace()).norm());
        min_eig = min_eig.min(fin.min_eigenvalue());

        let base = payoffs(&state, p)?;
        let index = rng.random_range(0..16);
        let phase = Amplitude::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
        let rotated = state.with_phase(index, phase).map_err(|e| e.to_string())?;
        phase_err = phase_err.max(diff(base, payoffs(&rotated, p)?));

        let shift = |v: f64| if v + 0.3 <= 1.0 { v + 0.3 } else { v - 0.3 };
        let later = payoffs(&state, [p[0], p[1], shift(p[2]), shift(p[3])])?;
        let earlier = payoffs(&state, [shift(p[0]), shift(p[1]), p[2], p[3]])?;
        decouple_err = decouple_err
            .max((base[0] - later[0]).abs())
            .max((base[1] - later[1]).abs())
            .max((base[2] - earlier[2]).abs())
            .max((base[3] - earlier[3]).abs());

        for coord in 0..4 {
            let (a, b): (f64, f64) = (rng.random(), rng.random());
            let at = |v: f64| {
                let mut q = p;
                q[coord] = v;
                payoffs(&state, q)
            };
            let (lo, mid, hi) = (at(a)?, at(0.5 * (a + b))?, at(b)?);
            for k in 0..4 {
                second_diff = second_diff.max((lo[k] - 2.0 * mid[k] + hi[k]).abs());
            }
        }
    }
    let ok = involution
        && trace_err <= 1e-12
        && min_eig >= -1e-9
        && phase_err <= 1e-12
        && decouple_err <= 1e-12
        && second_diff <= 1e-12;
    check(
        ok,
        format!(
            "100 general states: involution {involution}, trace {trace_err:e}, min eigenvalue {min_eig:e}, phase {phase_err:e}, decoupling {decouple_err:e}, second differences {second_diff:e}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let c = classical_recovery(1e-12).map_err(|e| e.to_string())?;
    check(
        c.passed && c.samples == 625,
        format!("{} grid profiles, max |closed form - classical| = {:e}", c.samples, c.max_error),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("classical SGPO reproduction", criterion_1),
        ("boundary example reproduction", criterion_2),
        ("classical impossibility", criterion_3),
        ("oracle equivalence", criterion_4),
        ("equilibrium completeness", criterion_5),
        ("property suite", criterion_6),
        ("classical-limit identity", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
