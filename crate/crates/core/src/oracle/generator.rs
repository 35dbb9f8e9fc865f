//! Exact generator `G_θ = i U† ∂_θ U` of `U = e^{−iHT}`, computed in the
//! eigenbasis of `H`:
//!
//! ```text
//! G_mn = (∂H)_mn · τ(E_m − E_n),   τ(ω) = (e^{iωT} − 1)/(iω)
//! ```

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use super::fock::Sector;
use super::hamiltonian::{build_dtheta_h_with, build_hamiltonian_with, BuildOptions, Representation};
use super::operator::ManyBodyOperator;
use crate::chain::{check_time, ChainParams};
use crate::error::{Error, Result};
use crate::qfi::ProbeSpec;

/// Relative gap below which `τ(ω)` is replaced by its limit `T`.
pub const DEGENERATE_GAP: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct GeneratorResult {
    pub matrix: ManyBodyOperator,
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub qfi: f64,
    pub eigvec_max: DVector<Complex64>,
    pub eigvec_min: DVector<Complex64>,
}

impl GeneratorResult {
    /// `(|λ_max⟩ + |λ_min⟩)/√2`, the probe state that saturates the QFI.
    pub fn optimal_initial_state(&self) -> DVector<Complex64> {
        (&self.eigvec_max + &self.eigvec_min) * Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
    }
}

/// Summary without the matrices, for reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneratorSummary {
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub qfi: f64,
}

impl From<&GeneratorResult> for GeneratorSummary {
    fn from(g: &GeneratorResult) -> Self {
        Self {
            lambda_max: g.lambda_max,
            lambda_min: g.lambda_min,
            qfi: g.qfi,
        }
    }
}

/// Eigendecomposition of `H`, reusable across derivatives and times.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    n_sites: usize,
    sector: Sector,
    energies: Vec<f64>,
    vectors: DMatrix<Complex64>,
    norm: f64,
}

impl Eigensystem {
    pub fn new(h: &ManyBodyOperator) -> Result<Self> {
        let eig = SymmetricEigen::try_new(h.matrix().clone(), f64::EPSILON, 0)
            .ok_or_else(|| Error::numeric("Hamiltonian eigendecomposition did not converge"))?;
        let energies: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::numeric("Hamiltonian has non-finite eigenvalues"));
        }
        let norm = energies.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        Ok(Self {
            n_sites: h.n_sites(),
            sector: h.sector(),
            energies,
            vectors: eig.eigenvectors,
            norm,
        })
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Generator for derivative `dh` and duration `time`.
    pub fn generator(&self, dh: &ManyBodyOperator, time: f64) -> Result<GeneratorResult> {
        check_time(time)?;
        let dim = self.energies.len();
        if dh.dim() != dim {
            return Err(Error::domain(format!(
                "dimension mismatch: H is {dim}, dH is {}",
                dh.dim()
            )));
        }
        let v = &self.vectors;
        let mut g = v.adjoint() * dh.matrix() * v;
        let thresh = DEGENERATE_GAP * self.norm;
        for c in 0..dim {
            for r in 0..dim {
                g[(r, c)] *= tau(self.energies[r] - self.energies[c], time, thresh);
            }
        }
        let mut g = v * g * v.adjoint();
        let gh = g.adjoint();
        g = (g + gh) * Complex64::new(0.5, 0.0);

        let eig = SymmetricEigen::try_new(g.clone(), f64::EPSILON, 0)
            .ok_or_else(|| Error::numeric("generator eigendecomposition did not converge"))?;
        let (mut imax, mut imin) = (0, 0);
        for (i, &l) in eig.eigenvalues.iter().enumerate() {
            if l > eig.eigenvalues[imax] {
                imax = i;
            }
            if l < eig.eigenvalues[imin] {
                imin = i;
            }
        }
        let lambda_max = eig.eigenvalues[imax];
        let lambda_min = eig.eigenvalues[imin];
        Ok(GeneratorResult {
            matrix: ManyBodyOperator::from_parts(self.n_sites, self.sector, g),
            lambda_max,
            lambda_min,
            qfi: (lambda_max - lambda_min).powi(2),
            eigvec_max: eig.eigenvectors.column(imax).into_owned(),
            eigvec_min: eig.eigenvectors.column(imin).into_owned(),
        })
    }
}

/// `τ(ω) = T·e^{iωT/2}·sinc(ωT/2)`, equal to `(e^{iωT} − 1)/(iω)`.
fn tau(omega: f64, time: f64, thresh: f64) -> Complex64 {
    if omega.abs() <= thresh {
        return Complex64::new(time, 0.0);
    }
    let x = 0.5 * omega * time;
    let sinc = if x == 0.0 { 1.0 } else { x.sin() / x };
    Complex64::from_polar(time * sinc, x)
}

/// Exact generator for `H`, `∂_θ H` and duration `time`.
pub fn exact_generator(h: &ManyBodyOperator, dh: &ManyBodyOperator, time: f64) -> Result<GeneratorResult> {
    if h.dim() != dh.dim() {
        return Err(Error::domain(format!(
            "dimension mismatch: H is {}, dH is {}",
            h.dim(),
            dh.dim()
        )));
    }
    Eigensystem::new(h)?.generator(dh, time)
}

/// Exact QFI of the fermion Hamiltonian in a given parity sector.
pub fn exact_qfi_in(p: &ChainParams, probe: &ProbeSpec, sector: Sector) -> Result<GeneratorResult> {
    let opts = BuildOptions::new(Representation::FermionFock).sector(sector);
    let h = build_hamiltonian_with(p, &opts)?;
    let dh = build_dtheta_h_with(p, probe.channel, &opts)?;
    exact_generator(&h, &dh, probe.time)
}

/// Exact QFI in the even-parity sector, where the momentum-space
/// description applies.
pub fn exact_qfi(p: &ChainParams, probe: &ProbeSpec) -> Result<GeneratorResult> {
    exact_qfi_in(p, probe, Sector::Even)
}
