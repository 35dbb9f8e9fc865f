use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::fock::Sector;
use crate::error::{Error, Result};

/// Dense operator on one parity sector of the `2^N` Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct ManyBodyOperator {
    n_sites: usize,
    sector: Sector,
    matrix: DMatrix<Complex64>,
}

impl ManyBodyOperator {
    pub(crate) fn from_parts(n_sites: usize, sector: Sector, matrix: DMatrix<Complex64>) -> Self {
        Self {
            n_sites,
            sector,
            matrix,
        }
    }

    /// Wraps a square matrix whose dimension is a power of two as an
    /// operator on the full space of `log₂ dim` modes.
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = matrix.nrows();
        if dim != matrix.ncols() {
            return Err(Error::domain(format!(
                "operator matrix must be square, got {}x{}",
                dim,
                matrix.ncols()
            )));
        }
        if !dim.is_power_of_two() {
            return Err(Error::domain(format!("operator dimension {dim} is not a power of two")));
        }
        Ok(Self {
            n_sites: dim.trailing_zeros() as usize,
            sector: Sector::Full,
            matrix,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    /// `max |M − M†|` over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        let m = &self.matrix;
        let mut worst = 0.0f64;
        for i in 0..m.nrows() {
            for j in i..m.ncols() {
                worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `self + c·I`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut out = self.clone();
        for i in 0..out.dim() {
            out.matrix[(i, i)] += Complex64::new(c, 0.0);
        }
        out
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.matrix * v
    }

    /// Sorted real eigenvalues; the operator must be Hermitian.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.matrix.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// `λ_max − λ_min`.
    pub fn spread(&self) -> f64 {
        let ev = self.eigenvalues();
        ev[ev.len() - 1] - ev[0]
    }
}
