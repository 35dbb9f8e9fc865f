//! Real-space many-body Hamiltonian of the chain and its parameter
//! derivatives.
//!
//! Fermion form, with antiperiodic wrap `a_N = −a_0`:
//!
//! ```text
//! H = −J/2 Σ_j (a†_j a_{j+1} + h.c.) − μ Σ_j (n_j − ½)
//!     + Δ/2 Σ_{i<m} κ̃_{m−i} (a_i a_m + h.c.)
//! ```
//!
//! Every term is linear in one coupling, so `∂_θ H` is the Hamiltonian with
//! the couplings replaced by the unit vector along `θ`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fock::{annihilate, create, FockBasis, Sector};
use super::operator::ManyBodyOperator;
use crate::chain::{ChainParams, Channel};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Representation {
    /// Fermionic ladder operators with sign strings.
    FermionFock,
    /// Pauli strings after the Jordan–Wigner map `n_j = (1 + z_j)/2`.
    SpinJW,
}

/// How pairing weights depend on the separation of the two sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairingForm {
    /// `κ̃_{m−i} = κ_{min(m−i, N−m+i)}`, the translation-invariant ring.
    Wrapped,
    /// Raw `κ_{m−i}` on an open segment; fermion representation only.
    Unwrapped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildOptions {
    pub representation: Representation,
    pub pairing: PairingForm,
    pub sector: Sector,
}

impl BuildOptions {
    pub fn new(representation: Representation) -> Self {
        Self {
            representation,
            pairing: PairingForm::Wrapped,
            sector: Sector::Full,
        }
    }

    pub fn sector(mut self, sector: Sector) -> Self {
        self.sector = sector;
        self
    }

    pub fn pairing(mut self, pairing: PairingForm) -> Self {
        self.pairing = pairing;
        self
    }
}

#[derive(Debug, Clone, Copy)]
enum Pauli {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy)]
enum FermionTerm {
    /// `c · a†_to a_from`
    Hop { to: usize, from: usize, c: f64 },
    /// `c · (a_i a_m + a†_m a†_i)`
    Pair { i: usize, m: usize, c: f64 },
    /// `c · (n_site − ½)`
    Number { site: usize, c: f64 },
}

fn pair_weights(p: &ChainParams, form: PairingForm) -> Result<Vec<f64>> {
    let n = p.n_sites();
    match form {
        PairingForm::Wrapped => p.kernel.symmetric_weights(n),
        PairingForm::Unwrapped => (1..n).map(|l| p.kernel.value(l)).collect(),
    }
}

fn fermion_terms(p: &ChainParams, form: PairingForm) -> Result<Vec<FermionTerm>> {
    let n = p.n_sites();
    let mut terms = Vec::new();
    if p.j != 0.0 {
        for j in 0..n {
            let m = (j + 1) % n;
            let wrap = if j + 1 == n { -1.0 } else { 1.0 };
            let c = -0.5 * p.j * wrap;
            terms.push(FermionTerm::Hop { to: j, from: m, c });
            terms.push(FermionTerm::Hop { to: m, from: j, c });
        }
    }
    if p.mu != 0.0 {
        for site in 0..n {
            terms.push(FermionTerm::Number { site, c: -p.mu });
        }
    }
    if p.delta != 0.0 {
        let w = pair_weights(p, form)?;
        for i in 0..n {
            for m in i + 1..n {
                terms.push(FermionTerm::Pair {
                    i,
                    m,
                    c: 0.5 * p.delta * w[m - i - 1],
                });
            }
        }
    }
    Ok(terms)
}

fn spin_terms(p: &ChainParams) -> Result<Vec<(f64, Vec<(usize, Pauli)>)>> {
    let n = p.n_sites();
    let mut terms = Vec::new();
    if p.j != 0.0 {
        for j in 0..n {
            let m = (j + 1) % n;
            terms.push((-0.25 * p.j, vec![(j, Pauli::X), (m, Pauli::X)]));
            terms.push((-0.25 * p.j, vec![(j, Pauli::Y), (m, Pauli::Y)]));
        }
    }
    if p.mu != 0.0 {
        for j in 0..n {
            terms.push((-0.5 * p.mu, vec![(j, Pauli::Z)]));
        }
    }
    if p.delta != 0.0 {
        let w = p.kernel.symmetric_weights(n)?;
        for j in 0..n {
            for l in 1..n {
                let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                let c = sign * p.delta / 8.0 * w[l - 1];
                let string: Vec<(usize, Pauli)> = (1..l).map(|s| ((j + s) % n, Pauli::Z)).collect();
                let end = (j + l) % n;
                let mut xx = vec![(j, Pauli::X), (end, Pauli::X)];
                xx.extend_from_slice(&string);
                let mut yy = vec![(j, Pauli::Y), (end, Pauli::Y)];
                yy.extend_from_slice(&string);
                terms.push((c, xx));
                terms.push((-c, yy));
            }
        }
    }
    Ok(terms)
}

fn apply_fermion(term: &FermionTerm, s: usize, out: &mut Vec<(f64, usize)>) {
    match *term {
        FermionTerm::Hop { to, from, c } => {
            if let Some((s1, t)) = annihilate(s, from) {
                if let Some((s2, u)) = create(t, to) {
                    out.push((c * s1 * s2, u));
                }
            }
        }
        FermionTerm::Pair { i, m, c } => {
            if let Some((s1, t)) = annihilate(s, m) {
                if let Some((s2, u)) = annihilate(t, i) {
                    out.push((c * s1 * s2, u));
                }
            }
            if let Some((s1, t)) = create(s, i) {
                if let Some((s2, u)) = create(t, m) {
                    out.push((c * s1 * s2, u));
                }
            }
        }
        FermionTerm::Number { site, c } => {
            let occ = if s & (1 << site) != 0 { 0.5 } else { -0.5 };
            out.push((c * occ, s));
        }
    }
}

fn apply_pauli(string: &[(usize, Pauli)], s: usize) -> (Complex64, usize) {
    let mut phase = Complex64::new(1.0, 0.0);
    let mut state = s;
    for &(site, op) in string {
        let bit = 1usize << site;
        let up = state & bit != 0;
        match op {
            Pauli::X => state ^= bit,
            Pauli::Y => {
                phase *= if up { Complex64::i() } else { -Complex64::i() };
                state ^= bit;
            }
            Pauli::Z => {
                if !up {
                    phase = -phase;
                }
            }
        }
    }
    (phase, state)
}

fn leaves_sector(sector: Sector) -> Error {
    Error::numeric(format!("a parity-conserving term left the {sector:?} sector"))
}

/// Builds `H` with explicit options.
pub fn build_hamiltonian_with(p: &ChainParams, opts: &BuildOptions) -> Result<ManyBodyOperator> {
    let basis = FockBasis::new(p.n_sites(), opts.sector)?;
    let dim = basis.dim();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    match opts.representation {
        Representation::FermionFock => {
            let terms = fermion_terms(p, opts.pairing)?;
            let mut out = Vec::new();
            for (col, &s) in basis.states().iter().enumerate() {
                out.clear();
                for t in &terms {
                    apply_fermion(t, s, &mut out);
                }
                for &(amp, u) in &out {
                    let row = basis.position(u).ok_or_else(|| leaves_sector(opts.sector))?;
                    m[(row, col)] += Complex64::new(amp, 0.0);
                }
            }
        }
        Representation::SpinJW => {
            if opts.pairing != PairingForm::Wrapped {
                return Err(Error::domain("the spin representation only supports the wrapped pairing form"));
            }
            let terms = spin_terms(p)?;
            for (col, &s) in basis.states().iter().enumerate() {
                for (c, string) in &terms {
                    let (phase, u) = apply_pauli(string, s);
                    let row = basis.position(u).ok_or_else(|| leaves_sector(opts.sector))?;
                    m[(row, col)] += phase * *c;
                }
            }
        }
    }
    Ok(ManyBodyOperator::from_parts(p.n_sites(), opts.sector, m))
}

/// Full-space Hamiltonian in the requested representation.
pub fn build_hamiltonian(p: &ChainParams, representation: Representation) -> Result<ManyBodyOperator> {
    build_hamiltonian_with(p, &BuildOptions::new(representation))
}

/// `∂_θ H` with explicit options.
pub fn build_dtheta_h_with(p: &ChainParams, theta: Channel, opts: &BuildOptions) -> Result<ManyBodyOperator> {
    let (j, mu, delta) = match theta {
        Channel::J => (1.0, 0.0, 0.0),
        Channel::Mu => (0.0, 1.0, 0.0),
        Channel::Delta => (0.0, 0.0, 1.0),
    };
    let unit = ChainParams::new(j, mu, delta, p.n_sites(), p.kernel.clone())?;
    build_hamiltonian_with(&unit, opts)
}

/// Full-space `∂_θ H` in the requested representation.
pub fn build_dtheta_h(p: &ChainParams, theta: Channel, representation: Representation) -> Result<ManyBodyOperator> {
    build_dtheta_h_with(p, theta, &BuildOptions::new(representation))
}
