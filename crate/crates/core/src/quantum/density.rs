use nalgebra::{Complex as NaComplex, DMatrix};
use num_traits::Zero;

use super::basis::DIM;
use super::operator::max_entry_diff;
use super::state::{Amplitude, PureState};
use crate::error::{Error, Result};
use crate::scalar::{max_of, Scalar};

/// 16x16 density operator, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    entries: Vec<Amplitude<T>>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Validated construction: Hermitian, unit trace and positive
    /// semidefinite, all within `T::input_tol()`.
    pub fn new(entries: Vec<Amplitude<T>>) -> Result<Self> {
        if entries.len() != DIM * DIM {
            return Err(Error::Shape {
                expected: DIM * DIM,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries
            .iter()
            .position(|a| !a.re.is_finite_value() || !a.im.is_finite_value())
        {
            return Err(Error::NonFinite(bad));
        }
        let rho = DensityMatrix { entries };
        rho.validate(&T::input_tol())?;
        Ok(rho)
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<Amplitude<T>>) -> Self {
        debug_assert_eq!(entries.len(), DIM * DIM);
        DensityMatrix { entries }
    }

    /// `|psi><psi|`.
    pub fn from_pure(state: &PureState<T>) -> Self {
        let a = state.amplitudes();
        let mut entries = Vec::with_capacity(DIM * DIM);
        for r in 0..DIM {
            for c in 0..DIM {
                entries.push(a[r].clone() * a[c].conj());
            }
        }
        DensityMatrix { entries }
    }

    pub fn get(&self, row: usize, col: usize) -> &Amplitude<T> {
        &self.entries[row * DIM + col]
    }

    pub fn entries(&self) -> &[Amplitude<T>] {
        &self.entries
    }

    pub fn trace(&self) -> Amplitude<T> {
        (0..DIM).fold(Amplitude::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Real parts of the diagonal: the computational-basis probabilities.
    pub fn diagonal(&self) -> Vec<T> {
        (0..DIM).map(|i| self.get(i, i).re.clone()).collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        max_entry_diff(&self.entries, &other.entries)
    }

    pub fn hermiticity_error(&self) -> T {
        let mut worst = T::zero();
        for r in 0..DIM {
            for c in r..DIM {
                let d = self.get(r, c).clone() - self.get(c, r).conj();
                worst = max_of(worst, max_of(d.re.abs(), d.im.abs()));
            }
        }
        worst
    }

    pub fn is_diagonal(&self, tol: &T) -> bool {
        (0..DIM).all(|r| {
            (0..DIM)
                .filter(|c| *c != r)
                .all(|c| self.get(r, c).norm_sqr() <= tol.clone() * tol.clone())
        })
    }

    /// `sum_t weight_t * rho_t`; used to assemble channel outputs.
    pub(crate) fn mixture(terms: &[(T, DensityMatrix<T>)]) -> Self {
        let mut entries = vec![Amplitude::<T>::zero(); DIM * DIM];
        for (w, rho) in terms {
            if w.is_zero() {
                continue;
            }
            for (acc, e) in entries.iter_mut().zip(&rho.entries) {
                *acc = acc.clone() + e.clone() * w.clone();
            }
        }
        DensityMatrix { entries }
    }

    /// Eigenvalues in ascending order, computed in `f64`.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let m = DMatrix::from_fn(DIM, DIM, |r, c| {
            let e = self.get(r, c);
            NaComplex::new(e.re.to_f64_lossy(), e.im.to_f64_lossy())
        });
        // symmetrize so rounding noise cannot leak an imaginary diagonal
        let herm = (&m + m.adjoint()) * NaComplex::new(0.5, 0.0);
        let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn validate(&self, tol: &T) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > *tol {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (deviation {})",
                herm.to_f64_lossy()
            )));
        }
        let tr = self.trace();
        if (tr.re.clone() - T::one()).abs() > *tol || tr.im.abs() > *tol {
            return Err(Error::InvalidDensity(format!(
                "trace {} + {}i is not 1",
                tr.re.to_f64_lossy(),
                tr.im.to_f64_lossy()
            )));
        }
        let min_ev = self.min_eigenvalue();
        if min_ev < -tol.to_f64_lossy().max(1e-12) {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min_ev}"
            )));
        }
        Ok(())
    }
}

impl<T: Scalar> From<&PureState<T>> for DensityMatrix<T> {
    fn from(state: &PureState<T>) -> Self {
        DensityMatrix::from_pure(state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::BasisLabel;

    #[test]
    fn basis_density_has_single_entry() {
        let rho = DensityMatrix::from_pure(&PureState::<f64>::classical());
        for r in 0..DIM {
            for c in 0..DIM {
                let expected = if r == 0 && c == 0 { 1.0 } else { 0.0 };
                assert_eq!(rho.get(r, c).re, expected);
                assert_eq!(rho.get(r, c).im, 0.0);
            }
        }
    }

    #[test]
    fn outer_product_with_phase() {
        // c1 = sqrt(1/2), c2 = i sqrt(1/2): rho[1111][1122] = c1 conj(c2) = -i/2
        let h = 0.5f64.sqrt();
        let s = PureState::restricted([
            Amplitude::new(h, 0.0),
            Amplitude::new(0.0, h),
            Amplitude::zero(),
            Amplitude::zero(),
        ])
        .unwrap();
        let rho = DensityMatrix::from_pure(&s);
        let a = BasisLabel::parse("1111").unwrap().index();
        let b = BasisLabel::parse("1122").unwrap().index();
        assert!((rho.get(a, a).re - 0.5).abs() < 1e-15);
        assert!((rho.get(b, b).re - 0.5).abs() < 1e-15);
        let off = rho.get(a, b);
        assert!(off.re.abs() < 1e-15 && (off.im + 0.5).abs() < 1e-15);
        assert!((off.norm() - 0.5).abs() < 1e-15);
        assert!((rho.trace().re - 1.0).abs() < 1e-15);
        let ev = rho.eigenvalues();
        assert!((ev[DIM - 1] - 1.0).abs() < 1e-12);
        assert!(ev[..DIM - 1].iter().all(|e| e.abs() < 1e-12));
    }

    #[test]
    fn validation_rejects_bad_matrices() {
        let mut entries = vec![Amplitude::<f64>::zero(); DIM * DIM];
        entries[0] = Amplitude::new(2.0, 0.0);
        assert!(matches!(DensityMatrix::new(entries.clone()), Err(Error::InvalidDensity(_))));
        entries[0] = Amplitude::new(1.5, 0.0);
        entries[DIM + 1] = Amplitude::new(-0.5, 0.0);
        let err = DensityMatrix::new(entries).unwrap_err();
        assert!(err.to_string().contains("negative eigenvalue"));
        let mut entries = vec![Amplitude::<f64>::zero(); DIM * DIM];
        entries[0] = Amplitude::new(1.0, 0.0);
        entries[1] = Amplitude::new(0.1, 0.0);
        assert!(DensityMatrix::new(entries).unwrap_err().to_string().contains("Hermitian"));
        assert!(DensityMatrix::<f64>::new(vec![]).is_err());
    }

    #[test]
    fn valid_mixture_passes() {
        let a = DensityMatrix::from_pure(&PureState::<f64>::classical());
        let b = DensityMatrix::from_pure(&PureState::basis(BasisLabel::parse("2222").unwrap()));
        let mix = DensityMatrix::mixture(&[(0.25, a), (0.75, b)]);
        assert!(DensityMatrix::new(mix.entries().to_vec()).is_ok());
        assert!(mix.is_diagonal(&0.0));
    }
}
