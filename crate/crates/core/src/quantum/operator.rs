use num_complex::Complex;
use num_traits::{One, Zero};

use super::basis::{QubitIndex, Stage, DIM};
use super::density::DensityMatrix;
use super::state::{Amplitude, PureState};
use crate::error::{Error, Result};
use crate::scalar::{max_of, Scalar};

/// Dense 16x16 complex operator, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator<T> {
    entries: Vec<Amplitude<T>>,
}

impl<T: Scalar> LinearOperator<T> {
    pub fn from_entries(entries: Vec<Amplitude<T>>) -> Result<Self> {
        if entries.len() != DIM * DIM {
            return Err(Error::Shape {
                expected: DIM * DIM,
                found: entries.len(),
            });
        }
        Ok(LinearOperator { entries })
    }

    pub fn zeros() -> Self {
        LinearOperator {
            entries: vec![Amplitude::zero(); DIM * DIM],
        }
    }

    pub fn identity() -> Self {
        let mut op = Self::zeros();
        for i in 0..DIM {
            op.entries[i * DIM + i] = Amplitude::one();
        }
        op
    }

    pub fn diagonal(values: &[T]) -> Result<Self> {
        if values.len() != DIM {
            return Err(Error::Shape {
                expected: DIM,
                found: values.len(),
            });
        }
        let mut op = Self::zeros();
        for (i, v) in values.iter().enumerate() {
            op.entries[i * DIM + i] = Complex::new(v.clone(), T::zero());
        }
        Ok(op)
    }

    /// The inversion `|1> <-> |2>` on one qubit, identity on the other three.
    pub fn flip_on(target: QubitIndex) -> Self {
        let mask = target.mask();
        let mut op = Self::zeros();
        for col in 0..DIM {
            op.entries[(col ^ mask) * DIM + col] = Amplitude::one();
        }
        op
    }

    /// Like [`flip_on`](Self::flip_on) but takes a raw 1-based position.
    pub fn flip_on_position(position: i64) -> Result<Self> {
        Ok(Self::flip_on(QubitIndex::new(position)?))
    }

    /// `X_A (x) X_B` on the stage's qubit pair, where each factor is the flip
    /// when the corresponding flag is set and the identity otherwise.
    pub fn stage_move(stage: Stage, flip_a: bool, flip_b: bool) -> Self {
        let (qa, qb) = stage.qubits();
        let mut op = Self::identity();
        if flip_a {
            op = Self::flip_on(qa).matmul(&op);
        }
        if flip_b {
            op = Self::flip_on(qb).matmul(&op);
        }
        op
    }

    pub fn get(&self, row: usize, col: usize) -> &Amplitude<T> {
        &self.entries[row * DIM + col]
    }

    pub fn entries(&self) -> &[Amplitude<T>] {
        &self.entries
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        LinearOperator {
            entries: matmul(&self.entries, &rhs.entries),
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut entries = Vec::with_capacity(DIM * DIM);
        for r in 0..DIM {
            for c in 0..DIM {
                entries.push(self.get(c, r).conj());
            }
        }
        LinearOperator { entries }
    }

    pub fn apply(&self, state: &PureState<T>) -> Vec<Amplitude<T>> {
        let amps = state.amplitudes();
        (0..DIM)
            .map(|r| {
                (0..DIM).fold(Amplitude::zero(), |acc, c| {
                    acc + self.get(r, c).clone() * amps[c].clone()
                })
            })
            .collect()
    }

    /// `U rho U^dagger`.
    pub fn conjugate(&self, rho: &DensityMatrix<T>) -> DensityMatrix<T> {
        let left = matmul(&self.entries, rho.entries());
        let right = matmul(&left, &self.adjoint().entries);
        DensityMatrix::from_entries_unchecked(right)
    }

    /// `Tr(self * rho)`.
    pub fn trace_product(&self, rho: &DensityMatrix<T>) -> Amplitude<T> {
        let mut acc = Amplitude::zero();
        for i in 0..DIM {
            for k in 0..DIM {
                acc = acc + self.get(i, k).clone() * rho.get(k, i).clone();
            }
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        max_entry_diff(&self.entries, &other.entries)
    }

    pub fn is_hermitian(&self, tol: &T) -> bool {
        self.max_abs_diff(&self.adjoint()) <= *tol
    }

    pub fn is_unitary(&self, tol: &T) -> bool {
        self.matmul(&self.adjoint()).max_abs_diff(&Self::identity()) <= *tol
    }
}

pub(crate) fn matmul<T: Scalar>(a: &[Amplitude<T>], b: &[Amplitude<T>]) -> Vec<Amplitude<T>> {
    let mut out = vec![Amplitude::<T>::zero(); DIM * DIM];
    for i in 0..DIM {
        for k in 0..DIM {
            let aik = &a[i * DIM + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..DIM {
                out[i * DIM + j] = out[i * DIM + j].clone() + aik.clone() * b[k * DIM + j].clone();
            }
        }
    }
    out
}

/// Largest componentwise |re| or |im| difference.
pub(crate) fn max_entry_diff<T: Scalar>(a: &[Amplitude<T>], b: &[Amplitude<T>]) -> T {
    a.iter().zip(b).fold(T::zero(), |m, (x, y)| {
        let d = x.clone() - y.clone();
        max_of(m, max_of(d.re.abs(), d.im.abs()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::BasisLabel;

    fn apply_to_label(op: &LinearOperator<f64>, label: &str) -> BasisLabel {
        let s = PureState::basis(BasisLabel::parse(label).unwrap());
        let out = op.apply(&s);
        let hit: Vec<usize> = (0..DIM).filter(|i| out[*i].norm_sqr() > 0.5).collect();
        assert_eq!(hit.len(), 1);
        BasisLabel::from_index(hit[0]).unwrap()
    }

    #[test]
    fn flip_examples() {
        let f1 = LinearOperator::<f64>::flip_on_position(1).unwrap();
        assert_eq!(apply_to_label(&f1, "1111").to_string(), "2111");
        let f3 = LinearOperator::<f64>::flip_on_position(3).unwrap();
        assert_eq!(apply_to_label(&f3, "2211").to_string(), "2221");
        assert_eq!(LinearOperator::<f64>::flip_on_position(0), Err(Error::Index(0)));
        assert_eq!(LinearOperator::<f64>::flip_on_position(5), Err(Error::Index(5)));
    }

    #[test]
    fn flips_are_involutive_unitary_hermitian() {
        let id = LinearOperator::<f64>::identity();
        for k in 1..=4 {
            let f = LinearOperator::<f64>::flip_on_position(k).unwrap();
            // entries are exactly 0/1, so the square must be exactly the identity
            assert_eq!(f.matmul(&f), id);
            assert!(f.is_unitary(&1e-9));
            assert!(f.is_hermitian(&1e-9));
        }
    }

    #[test]
    fn stage_move_acts_on_pair() {
        let both = LinearOperator::<f64>::stage_move(Stage::First, true, true);
        assert_eq!(apply_to_label(&both, "1111").to_string(), "2211");
        let b_only = LinearOperator::<f64>::stage_move(Stage::Second, false, true);
        assert_eq!(apply_to_label(&b_only, "1111").to_string(), "1112");
        assert_eq!(
            LinearOperator::<f64>::stage_move(Stage::Second, false, false),
            LinearOperator::identity()
        );
    }

    #[test]
    fn diagonal_requires_sixteen_values() {
        assert!(LinearOperator::<f64>::diagonal(&[1.0; 15]).is_err());
        assert!(LinearOperator::<f64>::from_entries(vec![Complex::zero(); 10]).is_err());
    }
}
