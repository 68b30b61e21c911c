//! Global covering families: verification, family Betti numbers, the
//! reduced complex `(B_•, Ω_•)` and the Morse-type inequalities.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{ComplexError, FreeCochainComplex};
use crate::linalg::{self, IntMatrix, LinalgError};
use crate::poset::{GradedPoset, PosetError};
use crate::sequence::{FunctorSequence, SequenceError};
use crate::simplex::LocalCoveringFamily;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GlobalError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("object `{object}` has degree {actual} but is listed in K_{listed}")]
    WrongDegree { object: String, listed: usize, actual: usize },
    #[error("not a global covering family: {0}")]
    NotGlobal(GlobalViolation),
    #[error("reduced differential is not well defined in degree {0}")]
    NotWellDefined(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// `K_n ⊆ Ob_n` for each degree `n` (missing degrees are empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalCoveringFamily {
    pub k: Vec<Vec<usize>>,
}

impl GlobalCoveringFamily {
    pub fn get(&self, n: usize) -> &[usize] {
        self.k.get(n).map_or(&[], Vec::as_slice)
    }

    /// `K_n = Ob_n` for every `n`.
    pub fn everything(poset: &GradedPoset) -> Self {
        let top = poset.max_degree().map_or(0, |d| d + 1);
        GlobalCoveringFamily { k: (0..top).map(|n| poset.objects_of_degree(n).to_vec()).collect() }
    }

    pub fn from_ids(poset: &GradedPoset, raw: &BTreeMap<usize, Vec<String>>) -> Result<Self, GlobalError> {
        let top = poset.max_degree().map_or(0, |d| d + 1);
        let mut k = vec![Vec::new(); top];
        for (&n, ids) in raw {
            for id in ids {
                let p = poset.index_of(id)?;
                if poset.degree(p) != n {
                    return Err(GlobalError::WrongDegree { object: id.clone(), listed: n, actual: poset.degree(p) });
                }
                k[n].push(p);
            }
        }
        for s in k.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }
        Ok(GlobalCoveringFamily { k })
    }

    pub fn to_ids(&self, poset: &GradedPoset) -> BTreeMap<usize, Vec<String>> {
        self.k.iter().enumerate().map(|(n, s)| (n, s.iter().map(|&p| poset.id(p).to_string()).collect())).collect()
    }
}

/// A failed condition of a global covering family, with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum GlobalViolation {
    /// `lim F_n → ∏_{K_n} F_n(p)` has a nonzero kernel element (given in
    /// the basis of `M_n`, nonzero coordinates only).
    NotInjective { n: usize, kernel_element: Vec<(String, i64)> },
    /// The map `∏_{Ob_{n−1} \ K_{n−1}} F_{n−1} → ∏_{K_n} F_n` has a
    /// non-unit invariant factor.
    NotPure { n: usize, invariant_factor: i64 },
    /// The same map is not injective (its rank is below the domain rank).
    NotMonic { n: usize, rank: usize, domain: usize },
}

impl fmt::Display for GlobalViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlobalViolation::NotInjective { n, kernel_element } => write!(
                f,
                "condition (1) fails in degree {n}: lim F_{n} has a nonzero element vanishing on K_{n}: {kernel_element:?}"
            ),
            GlobalViolation::NotPure { n, invariant_factor } => write!(
                f,
                "condition (2) fails in degree {n}: the map into K_{n} has invariant factor {invariant_factor}"
            ),
            GlobalViolation::NotMonic { n, rank, domain } => write!(
                f,
                "the map into K_{n} has rank {rank} on a domain of rank {domain}, so it is not injective"
            ),
        }
    }
}

/// Coordinates of `M_n` that belong to objects in / outside `K_n`.
fn split_coordinates(seq: &FunctorSequence, k: &GlobalCoveringFamily, n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for (p, off) in seq.blocks(n) {
        let target = if k.get(n).contains(&p) { &mut inside } else { &mut outside };
        target.extend(off..off + seq.rank(n, p));
    }
    (inside, outside)
}

/// Checks both conditions of a global covering family in every degree and
/// lists the failures.
pub fn check_global(
    seq: &FunctorSequence,
    complex: &FreeCochainComplex,
    k: &GlobalCoveringFamily,
) -> Result<Vec<GlobalViolation>, GlobalError> {
    let mut out = Vec::new();
    let top = complex.ranks.len();
    for n in 0..top {
        let (inside, _) = split_coordinates(seq, k, n);
        let lim = seq.limit_basis(n)?;
        let restricted = lim.select_rows(&inside);
        let ker = linalg::kernel_basis(&restricted)?;
        if ker.cols() > 0 {
            let element = lim.mul_vec(&ker.column(0));
            let labels = complex.labels.get(n);
            let kernel_element = element
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| (labels.and_then(|l| l.get(i)).cloned().unwrap_or_else(|| i.to_string()), x))
                .collect();
            out.push(GlobalViolation::NotInjective { n, kernel_element });
        }
    }
    for n in 1..top {
        let (k_rows, _) = split_coordinates(seq, k, n);
        let (_, free_cols) = split_coordinates(seq, k, n - 1);
        let a = complex.differentials[n - 1].select_rows(&k_rows).select_cols(&free_cols);
        let factors = linalg::invariant_factors(&a)?;
        if let Some(&d) = factors.iter().find(|&&d| d != 1) {
            out.push(GlobalViolation::NotPure { n, invariant_factor: d });
        }
        if factors.len() < a.cols() {
            out.push(GlobalViolation::NotMonic { n, rank: factors.len(), domain: a.cols() });
        }
    }
    Ok(out)
}

/// `b_0^K = Σ_{K_0} R_0^p` and
/// `b_n^K = Σ_{K_{n−1}} R_{n−1}^p − Σ_{Ob_{n−1}} R_{n−1}^p + Σ_{K_n} R_n^p`.
pub fn family_betti(poset: &GradedPoset, r: &[Vec<i64>], k: &GlobalCoveringFamily) -> Vec<i64> {
    let top = poset.max_degree().map_or(0, |d| d + 1);
    let sum = |set: &[usize], n: usize| -> i64 { set.iter().map(|&p| r[p][n]).sum() };
    (0..top)
        .map(|n| {
            let here = sum(k.get(n), n);
            if n == 0 {
                here
            } else {
                sum(k.get(n - 1), n - 1) - sum(poset.objects_of_degree(n - 1), n - 1) + here
            }
        })
        .collect()
}

/// Degrees where a family Betti number is negative (a defective family).
pub fn negative_betti(bk: &[i64]) -> Vec<usize> {
    bk.iter().enumerate().filter(|(_, &b)| b < 0).map(|(n, _)| n).collect()
}

/// The reduced complex `0 → B_0 → B_1 → …` with `B_n` the cokernel of
/// `∏_{Ob_{n−1} \ K_{n−1}} F_{n−1} → ∏_{K_n} F_n` (and `B_0 = ∏_{K_0} F_0`).
#[derive(Clone, Debug)]
pub struct ReducedComplex {
    pub complex: FreeCochainComplex,
    /// Quotient maps `∏_{K_n} F_n → B_n`.
    pub quotients: Vec<IntMatrix>,
    /// Sections `B_n → ∏_{K_n} F_n` of the quotient maps.
    pub sections: Vec<IntMatrix>,
}

impl ReducedComplex {
    pub fn omega(&self, n: usize) -> &IntMatrix {
        &self.complex.differentials[n]
    }
}

/// Builds the reduced complex. The splitting of each quotient comes from
/// the Smith form of the map it is a cokernel of.
pub fn reduced_complex(
    seq: &FunctorSequence,
    complex: &FreeCochainComplex,
    k: &GlobalCoveringFamily,
) -> Result<ReducedComplex, GlobalError> {
    if let Some(v) = check_global(seq, complex, k)?.into_iter().next() {
        return Err(GlobalError::NotGlobal(v));
    }
    let top = complex.ranks.len();
    let mut quotients = Vec::with_capacity(top);
    let mut sections = Vec::with_capacity(top);
    let mut maps_a: Vec<Option<IntMatrix>> = Vec::with_capacity(top);
    for n in 0..top {
        let (k_rows, _) = split_coordinates(seq, k, n);
        if n == 0 {
            quotients.push(IntMatrix::identity(k_rows.len()));
            sections.push(IntMatrix::identity(k_rows.len()));
            maps_a.push(None);
            continue;
        }
        let (_, free_cols) = split_coordinates(seq, k, n - 1);
        let a = complex.differentials[n - 1].select_rows(&k_rows).select_cols(&free_cols);
        let m = k_rows.len();
        if m == 0 {
            quotients.push(IntMatrix::zeros(0, 0));
            sections.push(IntMatrix::zeros(0, 0));
            maps_a.push(Some(a));
            continue;
        }
        let s = linalg::smith(&a)?;
        let r = s.rank();
        quotients.push(s.u.select_rows(&(r..m).collect::<Vec<_>>()));
        sections.push(s.u_inv.select_cols(&(r..m).collect::<Vec<_>>()));
        maps_a.push(Some(a));
    }
    let mut omegas = Vec::with_capacity(top.saturating_sub(1));
    for n in 0..top.saturating_sub(1) {
        let (k_here, _) = split_coordinates(seq, k, n);
        let (k_next, _) = split_coordinates(seq, k, n + 1);
        let d_kk = complex.differentials[n].select_rows(&k_next).select_cols(&k_here);
        let through = quotients[n + 1].checked_mul(&d_kk)?;
        if let Some(a) = &maps_a[n] {
            if !through.checked_mul(a)?.is_zero() {
                return Err(GlobalError::NotWellDefined(n));
            }
        }
        omegas.push(through.checked_mul(&sections[n])?);
    }
    let ranks = quotients.iter().map(IntMatrix::rows).collect();
    let reduced = FreeCochainComplex::new(ranks, omegas)?;
    reduced.check_dd()?;
    Ok(ReducedComplex { complex: reduced, quotients, sections })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    /// `b_n ≤ b_n^K` per degree.
    pub weak: Vec<bool>,
    /// `Σ_{i≤n} (−1)^{n−i} b_i ≤ Σ_{i≤n} (−1)^{n−i} b_i^K` per degree.
    pub strong: Vec<bool>,
}

impl InequalityReport {
    pub fn holds(&self) -> bool {
        self.weak.iter().chain(&self.strong).all(|&x| x)
    }
}

pub fn morse_inequalities(b: &[usize], bk: &[i64]) -> InequalityReport {
    let len = b.len().max(bk.len());
    let bi = |i: usize| b.get(i).copied().unwrap_or(0) as i64;
    let bki = |i: usize| bk.get(i).copied().unwrap_or(0);
    let weak = (0..len).map(|n| bi(n) <= bki(n)).collect();
    let strong = (0..len)
        .map(|n| {
            let alt = |f: &dyn Fn(usize) -> i64| -> i64 {
                (0..=n).map(|i| if (n - i) % 2 == 0 { f(i) } else { -f(i) }).sum()
            };
            alt(&bi) <= alt(&bki)
        })
        .collect();
    InequalityReport { weak, strong }
}

/// For an object `p0`, the under-category `(p0↓P)` with the restricted
/// local family and the global family `K_n = J_n^{p0}`.
pub fn under_category_family(
    poset: &GradedPoset,
    j: &LocalCoveringFamily,
    p0: usize,
) -> (Arc<GradedPoset>, LocalCoveringFamily, GlobalCoveringFamily) {
    let members = poset.up_set(p0).to_vec();
    let sub = poset.restrict(&members);
    let to_sub = |p: usize| sub.index_of(poset.id(p)).expect("member of the under-category");
    let mut sets = vec![Vec::new(); sub.len()];
    for &p in &members {
        sets[to_sub(p)] = j.sets[p]
            .iter()
            .map(|s| {
                let mut v: Vec<usize> = s.iter().map(|&q| to_sub(q)).collect();
                v.sort_unstable();
                v
            })
            .collect();
    }
    let k = (0..=poset.degree(p0))
        .map(|n| {
            let mut v: Vec<usize> = j.get(p0, n).iter().map(|&q| to_sub(q)).collect();
            v.sort_unstable();
            v
        })
        .collect();
    (Arc::new(sub), LocalCoveringFamily { sets }, GlobalCoveringFamily { k })
}
