//! Finite complete lattices with memoized join/meet tables.
//!
//! Elements are identified by stable string ids; internally everything is
//! index-based. Carrier order is significant: it fixes the deterministic
//! canonical choice whenever a choice is tied.

use crate::error::ValidationError;

/// A validated finite complete lattice.
///
/// Invariants (checked by [`FiniteLattice::validate`]): the relation is a
/// partial order, every pair has a join and a meet, and global top and
/// bottom exist. For a finite poset this is equivalent to completeness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    ids: Vec<String>,
    leq: Vec<Vec<bool>>,
    join_tab: Vec<Vec<usize>>,
    meet_tab: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Validates a raw carrier plus relation and memoizes join/meet tables.
    pub fn validate(carrier: Vec<String>, leq_pairs: &[(String, String)]) -> Result<Self, ValidationError> {
        if carrier.is_empty() {
            return Err(ValidationError::EmptyCarrier);
        }
        let n = carrier.len();
        let index = |id: &str| -> Result<usize, ValidationError> {
            carrier
                .iter()
                .position(|c| c == id)
                .ok_or_else(|| ValidationError::ForeignElement(id.to_string()))
        };
        let mut leq = vec![vec![false; n]; n];
        for (a, b) in leq_pairs {
            leq[index(a)?][index(b)?] = true;
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(ValidationError::NotReflexive(carrier[i].clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(ValidationError::NotAntisymmetric(carrier[i].clone(), carrier[j].clone()));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(ValidationError::NotTransitive(
                            carrier[i].clone(),
                            carrier[j].clone(),
                            carrier[k].clone(),
                        ));
                    }
                }
            }
        }
        // Pairwise joins/meets; least/greatest scan is O(n) per pair.
        let mut join_tab = vec![vec![0usize; n]; n];
        let mut meet_tab = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                let uppers: Vec<usize> = (0..n).filter(|&k| leq[i][k] && leq[j][k]).collect();
                match uppers.iter().find(|&&u| uppers.iter().all(|&v| leq[u][v])) {
                    Some(&u) => join_tab[i][j] = u,
                    None => return Err(ValidationError::MissingJoin(carrier[i].clone(), carrier[j].clone())),
                }
                let lowers: Vec<usize> = (0..n).filter(|&k| leq[k][i] && leq[k][j]).collect();
                match lowers.iter().find(|&&l| lowers.iter().all(|&m| leq[m][l])) {
                    Some(&l) => meet_tab[i][j] = l,
                    None => return Err(ValidationError::MissingMeet(carrier[i].clone(), carrier[j].clone())),
                }
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|k| leq[b][k]))
            .ok_or(ValidationError::MissingBottom)?;
        let top = (0..n)
            .find(|&t| (0..n).all(|k| leq[k][t]))
            .ok_or(ValidationError::MissingTop)?;
        Ok(FiniteLattice { ids: carrier, leq, join_tab, meet_tab, bottom, top })
    }

    /// Builds a chain `0 < 1 < ... < n-1` with the given element names.
    pub fn chain(names: Vec<String>) -> Self {
        let n = names.len();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i..n {
                pairs.push((names[i].clone(), names[j].clone()));
            }
        }
        FiniteLattice::validate(names, &pairs).expect("a chain is a lattice")
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, e: usize) -> &str {
        &self.ids[e]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|c| c == id)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join2(&self, a: usize, b: usize) -> usize {
        self.join_tab[a][b]
    }

    pub fn meet2(&self, a: usize, b: usize) -> usize {
        self.meet_tab[a][b]
    }

    /// Least upper bound of a set; the empty join is bottom.
    pub fn join(&self, set: impl IntoIterator<Item = usize>) -> usize {
        set.into_iter().fold(self.bottom, |acc, e| self.join_tab[acc][e])
    }

    /// Greatest lower bound of a set; the empty meet is top.
    pub fn meet(&self, set: impl IntoIterator<Item = usize>) -> usize {
        set.into_iter().fold(self.top, |acc, e| self.meet_tab[acc][e])
    }
}
