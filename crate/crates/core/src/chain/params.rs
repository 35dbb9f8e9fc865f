use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::grid::check_sites;
use super::kernel::DecayKernel;
use crate::error::{Error, Result};

/// Hamiltonian parameter being estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Channel {
    /// Tunneling rate `J`.
    J,
    /// Chemical potential `μ`.
    Mu,
    /// p-wave pairing strength `Δ`.
    Delta,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::J, Channel::Mu, Channel::Delta];

    pub fn as_str(self) -> &'static str {
        match self {
            Channel::J => "J",
            Channel::Mu => "mu",
            Channel::Delta => "delta",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "j" => Ok(Channel::J),
            "mu" | "μ" => Ok(Channel::Mu),
            "delta" | "δ" | "Δ" => Ok(Channel::Delta),
            _ => Err(Error::domain(format!(
                "unknown channel '{s}' (expected J, mu or delta)"
            ))),
        }
    }
}

/// One LRK chain instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainParams {
    pub j: f64,
    pub mu: f64,
    pub delta: f64,
    n_sites: usize,
    pub kernel: DecayKernel,
}

impl ChainParams {
    pub fn new(j: f64, mu: f64, delta: f64, n_sites: usize, kernel: DecayKernel) -> Result<Self> {
        for (name, v) in [("J", j), ("mu", mu), ("delta", delta)] {
            if !v.is_finite() {
                return Err(Error::domain(format!("{name} must be finite, got {v}")));
            }
        }
        check_sites(n_sites)?;
        if let Some(len) = kernel.max_separation() {
            if len < n_sites / 2 {
                return Err(Error::domain(format!(
                    "kernel table has {len} entries but N = {n_sites} needs at least {}",
                    n_sites / 2
                )));
            }
        }
        Ok(Self {
            j,
            mu,
            delta,
            n_sites,
            kernel,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    /// Same couplings and kernel on a lattice of a different size.
    pub fn with_sites(&self, n_sites: usize) -> Result<Self> {
        Self::new(self.j, self.mu, self.delta, n_sites, self.kernel.clone())
    }
}
