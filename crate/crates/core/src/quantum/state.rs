use num_complex::Complex;
use num_traits::{Float, Zero};

use super::basis::{BasisLabel, DIM};
use crate::error::{Error, Result};
use crate::payoff::RestrictedStateWeights;
use crate::scalar::Scalar;

/// A complex amplitude over the scalar field `T`.
pub type Amplitude<T> = Complex<T>;

/// Support of the restricted initial-state family, in `c1..c4` order.
pub(crate) const RESTRICTED_SUPPORT: [usize; 4] = [0b0000, 0b0011, 0b1100, 0b1111];

/// Normalized pure state of the 4-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T> {
    amplitudes: Vec<Amplitude<T>>,
}

impl<T: Scalar> PureState<T> {
    /// Builds a state from 16 amplitudes in flat-index order, validating the
    /// squared norm against `T::input_tol()`.
    pub fn new(amplitudes: Vec<Amplitude<T>>) -> Result<Self> {
        Self::with_tolerance(amplitudes, T::input_tol())
    }

    pub fn with_tolerance(amplitudes: Vec<Amplitude<T>>, tol: T) -> Result<Self> {
        if amplitudes.len() != DIM {
            return Err(Error::Shape {
                expected: DIM,
                found: amplitudes.len(),
            });
        }
        if let Some(bad) = amplitudes
            .iter()
            .position(|a| !a.re.is_finite_value() || !a.im.is_finite_value())
        {
            return Err(Error::NonFinite(bad));
        }
        let norm = amplitudes
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr());
        if (norm.clone() - T::one()).abs() > tol {
            return Err(Error::Normalization {
                norm: norm.to_f64_lossy(),
                tol: tol.to_f64_lossy(),
            });
        }
        Ok(PureState { amplitudes })
    }

    pub fn basis(label: BasisLabel) -> Self {
        let mut amplitudes = vec![Amplitude::zero(); DIM];
        amplitudes[label.index()] = Amplitude::new(T::one(), T::zero());
        PureState { amplitudes }
    }

    /// `c1|1111> + c2|1122> + c3|2211> + c4|2222>`.
    pub fn restricted(c: [Amplitude<T>; 4]) -> Result<Self> {
        let mut amplitudes = vec![Amplitude::zero(); DIM];
        for (slot, amp) in RESTRICTED_SUPPORT.iter().zip(c) {
            amplitudes[*slot] = amp;
        }
        Self::new(amplitudes)
    }

    /// The unentangled state `|1111>` that reproduces the classical game.
    pub fn classical() -> Self {
        Self::basis(BasisLabel::from_index(0).expect("index 0 is a valid label"))
    }

    pub fn amplitudes(&self) -> &[Amplitude<T>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, label: BasisLabel) -> &Amplitude<T> {
        &self.amplitudes[label.index()]
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// True when all weight sits on `|1111>, |1122>, |2211>, |2222>` within `tol`.
    pub fn is_restricted(&self, tol: &T) -> bool {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| !RESTRICTED_SUPPORT.contains(i))
            .all(|(_, a)| a.norm_sqr() <= *tol)
    }

    /// Moduli-squared of the restricted coefficients, if the state belongs to
    /// the restricted family.
    pub fn restricted_weights(&self) -> Option<RestrictedStateWeights<T>> {
        let tol = T::exact_tol();
        if !self.is_restricted(&tol) {
            return None;
        }
        let w = RESTRICTED_SUPPORT.map(|i| self.amplitudes[i].norm_sqr());
        RestrictedStateWeights::new(w).ok()
    }

    /// Multiplies the amplitude at `index` by `phase`, which must have unit
    /// modulus within the input tolerance.
    pub fn with_phase(&self, index: usize, phase: Amplitude<T>) -> Result<Self> {
        if index >= DIM {
            return Err(Error::Domain(format!("basis index {index} out of range")));
        }
        if (phase.norm_sqr() - T::one()).abs() > T::input_tol() {
            return Err(Error::Domain("phase factor must have unit modulus".into()));
        }
        let mut amplitudes = self.amplitudes.clone();
        amplitudes[index] = amplitudes[index].clone() * phase;
        Ok(PureState { amplitudes })
    }
}

impl<T: Scalar + Float> PureState<T> {
    /// Restricted state with `|c_t| = sqrt(w_t)` and `arg c_t = phases[t]`.
    pub fn from_weights(weights: &RestrictedStateWeights<T>, phases: [T; 4]) -> Result<Self> {
        let w = weights.as_array();
        let mut c = [Amplitude::zero(); 4];
        for t in 0..4 {
            c[t] = Amplitude::from_polar(w[t].sqrt(), phases[t]);
        }
        Self::restricted(c)
    }
}
