use std::fmt;

use crate::payoff::RestrictedStateWeights;
use crate::scalar::{sign_with_tol, Scalar};

/// Three-way reading of a `value <= 0` condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionClass {
    StrictHold,
    BoundaryHold,
    Fail,
}

impl ConditionClass {
    fn classify<T: Scalar>(value: &T, tol: &T) -> Self {
        match sign_with_tol(value, tol) {
            -1 => ConditionClass::StrictHold,
            0 => ConditionClass::BoundaryHold,
            _ => ConditionClass::Fail,
        }
    }

    pub fn holds(self) -> bool {
        self != ConditionClass::Fail
    }
}

impl fmt::Display for ConditionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionClass::StrictHold => "strict-hold",
            ConditionClass::BoundaryHold => "boundary-hold",
            ConditionClass::Fail => "fail",
        })
    }
}

/// Conditions for "cooperate in stage 1, defect in stage 2" on the
/// restricted family.
///
/// `cond1 = 2(w2 + w4) - (w1 + w3) <= 0` makes mutual defection a stage-2
/// equilibrium; `cond2 = 2(w1 + w2) - (w3 + w4) <= 0` then makes mutual
/// cooperation an equilibrium of the induced first-stage game. Under
/// normalization they read `y_sum <= 1/3` and `x_sum <= 1/3`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport<T> {
    pub cond1_value: T,
    pub cond2_value: T,
    pub x_sum: T,
    pub y_sum: T,
    pub cond1_class: ConditionClass,
    pub cond2_class: ConditionClass,
}

impl<T: Scalar> ConditionReport<T> {
    pub fn both_hold(&self) -> bool {
        self.cond1_class.holds() && self.cond2_class.holds()
    }

    pub fn both_strict(&self) -> bool {
        self.cond1_class == ConditionClass::StrictHold
            && self.cond2_class == ConditionClass::StrictHold
    }
}

pub fn cooperation_conditions<T: Scalar>(w: &RestrictedStateWeights<T>) -> ConditionReport<T> {
    cooperation_conditions_with_tol(w, &T::input_tol())
}

pub fn cooperation_conditions_with_tol<T: Scalar>(
    w: &RestrictedStateWeights<T>,
    tol: &T,
) -> ConditionReport<T> {
    let [w1, w2, w3, w4] = w.as_array().clone();
    let two = T::from_int(2);
    let cond1_value = two.clone() * (w2.clone() + w4.clone()) - (w1.clone() + w3.clone());
    let cond2_value = two * (w1 + w2) - (w3 + w4);
    ConditionReport {
        cond1_class: ConditionClass::classify(&cond1_value, tol),
        cond2_class: ConditionClass::classify(&cond2_value, tol),
        cond1_value,
        cond2_value,
        x_sum: w.x_sum(),
        y_sum: w.y_sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn sixths_example_is_on_the_boundary() {
        let r = |n, d| Rational::from_ratio(n, d);
        let w = RestrictedStateWeights::new([r(1, 6), r(1, 6), r(1, 2), r(1, 6)]).unwrap();
        let rep = cooperation_conditions(&w);
        assert_eq!(rep.cond1_value, r(0, 1));
        assert_eq!(rep.cond2_value, r(0, 1));
        assert_eq!(rep.cond1_class, ConditionClass::BoundaryHold);
        assert_eq!(rep.cond2_class, ConditionClass::BoundaryHold);
        assert!(rep.both_hold() && !rep.both_strict());

        let wf = RestrictedStateWeights::new([1.0 / 6.0, 1.0 / 6.0, 0.5, 1.0 / 6.0]).unwrap();
        let rep: ConditionReport<f64> = cooperation_conditions(&wf);
        assert!(rep.cond1_value.abs() <= 1e-12 && rep.cond2_value.abs() <= 1e-12);
        assert_eq!(rep.cond2_class, ConditionClass::BoundaryHold);
    }

    #[test]
    fn classical_fails() {
        let rep = cooperation_conditions(&RestrictedStateWeights::<f64>::classical());
        assert_eq!(rep.cond2_value, 2.0);
        assert_eq!(rep.cond2_class, ConditionClass::Fail);
        assert_eq!(rep.cond1_class, ConditionClass::StrictHold);
        assert_eq!(rep.x_sum, 1.0);
    }

    #[test]
    fn interior_point_holds_strictly() {
        let rep = cooperation_conditions(&RestrictedStateWeights::<f64>::new([0.2, 0.1, 0.5, 0.2]).unwrap());
        assert!((rep.x_sum - 0.3).abs() < 1e-15 && (rep.y_sum - 0.3).abs() < 1e-15);
        assert!(rep.both_strict());
    }
}
