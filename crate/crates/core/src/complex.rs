//! Free cochain complexes over the integers and their cohomology.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::GroupStructure;
use crate::linalg::{self, IntMatrix, LinalgError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("differential {degree} has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape { degree: usize, rows: usize, cols: usize, expected_rows: usize, expected_cols: usize },
    #[error("d_{} ∘ d_{} is not zero", .degree + 1, .degree)]
    NotAComplex { degree: usize },
}

/// `0 → M_0 → M_1 → … → M_top → 0` with `M_n = Z^{ranks[n]}`.
///
/// `differentials[n]` is the matrix of `d_n : M_n → M_{n+1}`
/// (`ranks[n+1] × ranks[n]`); there is one fewer differential than degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeCochainComplex {
    pub ranks: Vec<usize>,
    pub differentials: Vec<IntMatrix>,
    /// Optional human-readable basis labels per degree.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<Vec<String>>,
}

/// Cohomology group of each degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct CohomologyResult {
    pub groups: Vec<GroupStructure>,
}

impl CohomologyResult {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.free_rank).collect()
    }

    /// Trailing zero groups removed, so results of different lengths compare.
    pub fn trimmed(&self) -> CohomologyResult {
        let mut groups = self.groups.clone();
        while groups.last().is_some_and(GroupStructure::is_zero) {
            groups.pop();
        }
        CohomologyResult { groups }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(i, g)| if i % 2 == 0 { g.free_rank as i64 } else { -(g.free_rank as i64) })
            .sum()
    }
}

impl fmt::Display for CohomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl FreeCochainComplex {
    pub fn new(ranks: Vec<usize>, differentials: Vec<IntMatrix>) -> Result<Self, ComplexError> {
        let c = FreeCochainComplex { ranks, differentials, labels: Vec::new() };
        c.check_shapes()?;
        Ok(c)
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        self.labels = labels;
        self
    }

    pub fn check_shapes(&self) -> Result<(), ComplexError> {
        let expected = self.ranks.len().saturating_sub(1);
        if self.differentials.len() != expected {
            return Err(ComplexError::Shape {
                degree: self.differentials.len(),
                rows: 0,
                cols: 0,
                expected_rows: 0,
                expected_cols: 0,
            });
        }
        for (n, d) in self.differentials.iter().enumerate() {
            let (er, ec) = (self.ranks[n + 1], self.ranks[n]);
            if d.rows() != er || d.cols() != ec {
                return Err(ComplexError::Shape {
                    degree: n,
                    rows: d.rows(),
                    cols: d.cols(),
                    expected_rows: er,
                    expected_cols: ec,
                });
            }
        }
        Ok(())
    }

    /// Verifies `d_{n+1} ∘ d_n = 0` for every `n`.
    pub fn check_dd(&self) -> Result<(), ComplexError> {
        for n in 0..self.differentials.len().saturating_sub(1) {
            let dd = self.differentials[n + 1].checked_mul(&self.differentials[n])?;
            if !dd.is_zero() {
                return Err(ComplexError::NotAComplex { degree: n });
            }
        }
        Ok(())
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    /// `Σ (-1)^n rank M_n`.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    /// `H^n = ker d_n / im d_{n-1}` via invariant factors of each differential.
    pub fn cohomology(&self) -> Result<CohomologyResult, ComplexError> {
        self.check_shapes()?;
        self.check_dd()?;
        let factors = self.differentials.iter().map(linalg::invariant_factors).collect::<Result<Vec<_>, _>>()?;
        let mut groups = Vec::with_capacity(self.ranks.len());
        for n in 0..self.ranks.len() {
            let rank_out = factors.get(n).map_or(0, Vec::len);
            let (rank_in, torsion) = match n.checked_sub(1) {
                Some(m) => (factors[m].len(), factors[m].iter().copied().filter(|&d| d != 1).collect()),
                None => (0, Vec::new()),
            };
            groups.push(GroupStructure { free_rank: self.ranks[n] - rank_out - rank_in, torsion });
        }
        Ok(CohomologyResult { groups })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn times_two() {
        let c = FreeCochainComplex::new(vec![1, 1], vec![IntMatrix::diagonal(&[2])]).unwrap();
        let h = c.cohomology().unwrap();
        assert_eq!(h.groups[0], GroupStructure::free(0));
        assert_eq!(h.groups[1], GroupStructure { free_rank: 0, torsion: vec![2] });
    }

    #[test]
    fn point() {
        let c = FreeCochainComplex::new(vec![1], vec![]).unwrap();
        assert_eq!(c.cohomology().unwrap().betti(), vec![1]);
    }

    #[test]
    fn non_complex_is_rejected() {
        let d0 = IntMatrix::from_rows(&[vec![1]], 1).unwrap();
        let d1 = IntMatrix::from_rows(&[vec![1]], 1).unwrap();
        let c = FreeCochainComplex::new(vec![1, 1, 1], vec![d0, d1]).unwrap();
        assert_eq!(c.cohomology(), Err(ComplexError::NotAComplex { degree: 0 }));
    }
}
