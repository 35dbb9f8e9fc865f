//! Occupation-number basis. Bit `j` of a basis index is the occupation of
//! site `j`; fermionic signs follow the ordering `(−1)^{Σ_{m<j} n_m}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest chain the dense oracle accepts.
pub const MAX_SITES: usize = 14;

/// Fermion-parity block of the Fock space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sector {
    Full,
    Even,
    Odd,
}

impl Sector {
    pub fn contains(self, state: usize) -> bool {
        match self {
            Sector::Full => true,
            Sector::Even => state.count_ones() % 2 == 0,
            Sector::Odd => state.count_ones() % 2 == 1,
        }
    }
}

/// Basis states of one sector and the inverse lookup.
#[derive(Debug, Clone)]
pub struct FockBasis {
    n_sites: usize,
    sector: Sector,
    states: Vec<usize>,
    index: Vec<usize>,
}

impl FockBasis {
    pub fn new(n_sites: usize, sector: Sector) -> Result<Self> {
        check_oracle_sites(n_sites, MAX_SITES)?;
        let full = 1usize << n_sites;
        let states: Vec<usize> = (0..full).filter(|&s| sector.contains(s)).collect();
        let mut index = vec![usize::MAX; full];
        for (i, &s) in states.iter().enumerate() {
            index[s] = i;
        }
        Ok(Self {
            n_sites,
            sector,
            states,
            index,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[usize] {
        &self.states
    }

    /// Position of a Fock state in this basis, if it belongs to the sector.
    pub fn position(&self, state: usize) -> Option<usize> {
        self.index.get(state).copied().filter(|&i| i != usize::MAX)
    }
}

pub(crate) fn check_oracle_sites(n_sites: usize, cap: usize) -> Result<()> {
    if n_sites < 2 || n_sites % 2 != 0 || n_sites > cap {
        return Err(Error::resource(format!(
            "exact oracle supports even N in 2..={cap}, got {n_sites}"
        )));
    }
    Ok(())
}

fn string_sign(state: usize, site: usize) -> f64 {
    if (state & ((1usize << site) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `a_j |state⟩ = sign·|state'⟩`.
pub fn annihilate(state: usize, site: usize) -> Option<(f64, usize)> {
    let bit = 1usize << site;
    (state & bit != 0).then(|| (string_sign(state, site), state ^ bit))
}

/// `a†_j |state⟩ = sign·|state'⟩`.
pub fn create(state: usize, site: usize) -> Option<(f64, usize)> {
    let bit = 1usize << site;
    (state & bit == 0).then(|| (string_sign(state, site), state | bit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sectors_split_in_half() {
        let e = FockBasis::new(6, Sector::Even).unwrap();
        let o = FockBasis::new(6, Sector::Odd).unwrap();
        assert_eq!(e.dim(), 32);
        assert_eq!(o.dim(), 32);
        assert_eq!(e.position(0b11), Some(1));
        assert_eq!(e.position(0b1), None);
        assert!(FockBasis::new(16, Sector::Full).is_err());
        assert!(matches!(FockBasis::new(3, Sector::Full), Err(Error::Resource(_))));
    }

    #[test]
    fn anticommutation() {
        // {a_i, a†_j} = δ_ij on every basis state of 4 sites.
        for s in 0..16usize {
            for i in 0..4 {
                for j in 0..4 {
                    let mut acc = std::collections::HashMap::<usize, f64>::new();
                    if let Some((s1, t)) = create(s, j) {
                        if let Some((s2, u)) = annihilate(t, i) {
                            *acc.entry(u).or_default() += s1 * s2;
                        }
                    }
                    if let Some((s1, t)) = annihilate(s, i) {
                        if let Some((s2, u)) = create(t, j) {
                            *acc.entry(u).or_default() += s1 * s2;
                        }
                    }
                    acc.retain(|_, v| *v != 0.0);
                    if i == j {
                        assert_eq!(acc.len(), 1);
                        assert_eq!(acc[&s], 1.0);
                    } else {
                        assert!(acc.is_empty());
                    }
                }
            }
        }
    }
}
