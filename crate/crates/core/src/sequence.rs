//! The sequence of free functors `F_0, F_1, F_2, …` obtained by repeatedly
//! shifting a free functor along an adequate local covering family, and the
//! cochain complex `M_n = ∏_{Ob_n} F_n(p)` it produces.
//!
//! Bases are explicit: a basis vector of `F_{n+1}(p)` is a basis vector of
//! `F_n(q)` for some `q ∈ (p↓P)_n \ J_n^p`, so every basis vector carries a
//! path `p = q_n, q_{n−1}, …, q_0` plus a generator index of `F_0(q_0)`.
//! With these bases the quotient `F_{n+1}(p) = Ker'_{F_n}(p) / λ(F_n(p))` is
//! identified with the product over the non-`J` components: each class has
//! exactly one representative vanishing on the `J_n^p` components.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::FGAbGroup;
use crate::complex::{ComplexError, FreeCochainComplex};
use crate::functor::{CoefFunctor, FunctorError};
use crate::linalg::{self, IntMatrix, LinalgError};
use crate::poset::GradedPoset;
use crate::simplex::{check_adequate, check_local_family, r_values, FamilyViolation, LocalCoveringFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("not a local covering family: {0}")]
    NotLocalFamily(FamilyViolation),
    #[error("family is not adequate: {0}")]
    Inadequate(FamilyViolation),
    #[error("base functor must take free values (object `{0}` has relations)")]
    NonFreeBase(String),
    #[error("level {level}: restriction of F_{level}(`{object}`) to J_{level} is {rows}x{cols}, not square")]
    RestrictionShape { level: usize, object: String, rows: usize, cols: usize },
    #[error("level {level}: restriction of F_{level}(`{object}`) to J_{level} is not an isomorphism")]
    RestrictionNotIso { level: usize, object: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
}

/// A basis vector of `F_n(p)`: the path `p = q_n, …, q_0` and a generator
/// index of the base functor at `q_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasisLabel {
    pub path: Vec<usize>,
    pub generator: usize,
}

#[derive(Clone, Debug)]
struct Level {
    /// Basis of `F_n(p)`; empty when `deg(p) < n`.
    bases: Vec<Vec<BasisLabel>>,
    /// `F_n(p → p')` for `p ≤ p'` with `deg(p') ≥ n`.
    arrows: HashMap<(usize, usize), IntMatrix>,
    /// For `deg(p) ≥ n + 1`: `T_p = −[F_n(p → q)]_{q ∉ J} · ρ_p^{-1}` where
    /// `ρ_p` is the restriction to the `J_n^p` components. Rows follow the
    /// basis of `F_{n+1}(p)`, columns the stacked `J_n^p` components.
    transfer: HashMap<usize, IntMatrix>,
}

/// `F_0, …, F_top` with explicit bases and arrow matrices.
#[derive(Clone, Debug)]
pub struct FunctorSequence {
    poset: Arc<GradedPoset>,
    family: LocalCoveringFamily,
    levels: Vec<Level>,
    base_ranks: Vec<usize>,
}

impl FunctorSequence {
    /// Sequence starting at the constant functor `c_Z`. The family must be
    /// an adequate local covering family; the first violation aborts.
    pub fn build(poset: Arc<GradedPoset>, family: LocalCoveringFamily) -> Result<Self, SequenceError> {
        if let Some(v) = check_local_family(&poset, &family).into_iter().next() {
            return Err(SequenceError::NotLocalFamily(v));
        }
        let r = r_values(&poset);
        if let Some(v) = check_adequate(&poset, &family, &r).into_iter().next() {
            return Err(SequenceError::Inadequate(v));
        }
        let base = CoefFunctor::constant(poset.clone(), &FGAbGroup::free(1));
        FunctorSequence::build_from(&base, family)
    }

    /// Sequence starting at an arbitrary free functor. Only the local
    /// covering conditions and the per-level restriction isomorphisms are
    /// checked, not adequacy.
    pub fn build_from(base: &CoefFunctor, family: LocalCoveringFamily) -> Result<Self, SequenceError> {
        let poset = base.poset().clone();
        if let Some(v) = check_local_family(&poset, &family).into_iter().next() {
            return Err(SequenceError::NotLocalFamily(v));
        }
        for p in 0..poset.len() {
            if !base.value(p).is_free_presentation() {
                return Err(SequenceError::NonFreeBase(poset.id(p).to_string()));
            }
        }
        let base_ranks: Vec<usize> = base.values().iter().map(FGAbGroup::rank).collect();
        let bases = (0..poset.len())
            .map(|p| (0..base_ranks[p]).map(|k| BasisLabel { path: vec![p], generator: k }).collect())
            .collect();
        let mut arrows = HashMap::new();
        for p in 0..poset.len() {
            for &q in poset.up_set(p) {
                arrows.insert((p, q), base.arrow(p, q).clone());
            }
        }
        let mut seq = FunctorSequence {
            poset: poset.clone(),
            family,
            levels: vec![Level { bases, arrows, transfer: HashMap::new() }],
            base_ranks,
        };
        let top = poset.max_degree().unwrap_or(0);
        for n in 0..top {
            seq.compute_transfer(n)?;
            seq.next_level(n);
        }
        Ok(seq)
    }

    pub fn poset(&self) -> &Arc<GradedPoset> {
        &self.poset
    }

    pub fn family(&self) -> &LocalCoveringFamily {
        &self.family
    }

    /// Number of levels built (`max degree + 1`).
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn rank(&self, n: usize, p: usize) -> usize {
        self.levels.get(n).map_or(0, |l| l.bases[p].len())
    }

    pub fn basis(&self, n: usize, p: usize) -> &[BasisLabel] {
        &self.levels[n].bases[p]
    }

    /// Matrix of `F_n(p → q)`; zero-sized when `deg(q) < n`.
    pub fn arrow(&self, n: usize, p: usize, q: usize) -> IntMatrix {
        match self.levels.get(n).and_then(|l| l.arrows.get(&(p, q))) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(self.rank(n, q), self.rank(n, p)),
        }
    }

    /// `(p ↓ P)_n \ J_n^p`, the components that index the basis of `F_{n+1}(p)`.
    pub fn free_components(&self, n: usize, p: usize) -> Vec<usize> {
        let j = self.family.get(p, n);
        self.poset.under_degree(p, n).into_iter().filter(|q| !j.contains(q)).collect()
    }

    fn compute_transfer(&mut self, n: usize) -> Result<(), SequenceError> {
        let poset = self.poset.clone();
        let mut transfer = HashMap::new();
        for p in 0..poset.len() {
            if poset.degree(p) < n + 1 {
                continue;
            }
            let k = self.rank(n, p);
            let mut rho = IntMatrix::zeros(0, k);
            for &q in self.family.get(p, n) {
                rho = rho.vstack(&self.levels[n].arrows[&(p, q)]);
            }
            if rho.rows() != rho.cols() {
                return Err(SequenceError::RestrictionShape {
                    level: n,
                    object: poset.id(p).to_string(),
                    rows: rho.rows(),
                    cols: rho.cols(),
                });
            }
            let inv = linalg::unimodular_inverse(&rho).map_err(|e| match e {
                LinalgError::NotUnimodular => {
                    SequenceError::RestrictionNotIso { level: n, object: poset.id(p).to_string() }
                }
                other => SequenceError::Linalg(other),
            })?;
            let mut rest = IntMatrix::zeros(0, k);
            for q in self.free_components(n, p) {
                rest = rest.vstack(&self.levels[n].arrows[&(p, q)]);
            }
            transfer.insert(p, rest.checked_mul(&inv)?.neg());
        }
        self.levels[n].transfer = transfer;
        Ok(())
    }

    /// Offsets of the blocks of `F_{n+1}(p)` (keyed by component) and of the
    /// stacked `J_n^p` components.
    fn offsets(&self, n: usize, p: usize) -> (HashMap<usize, usize>, HashMap<usize, usize>) {
        let mut free = HashMap::new();
        let mut acc = 0;
        for q in self.free_components(n, p) {
            free.insert(q, acc);
            acc += self.rank(n, q);
        }
        let mut j = HashMap::new();
        acc = 0;
        for &q in self.family.get(p, n) {
            j.insert(q, acc);
            acc += self.rank(n, q);
        }
        (free, j)
    }

    /// Writes into `out` (at column `col`) the image under the normalized
    /// projection to `F_{n+1}(target)` of the `F_n(q)` component.
    fn place_component(&self, n: usize, target: usize, q: usize, col: usize, out: &mut IntMatrix) {
        let (free, j) = self.offsets(n, target);
        let k = self.rank(n, q);
        if let Some(&o) = free.get(&q) {
            out.set_block(o, col, &IntMatrix::identity(k));
        } else if let Some(&o) = j.get(&q) {
            let t = &self.levels[n].transfer[&target];
            out.set_block(0, col, &t.block(0, o, t.rows(), k));
        }
    }

    fn next_level(&mut self, n: usize) {
        let poset = self.poset.clone();
        let mut bases = vec![Vec::new(); poset.len()];
        for p in 0..poset.len() {
            if poset.degree(p) < n + 1 {
                continue;
            }
            for q in self.free_components(n, p) {
                for b in &self.levels[n].bases[q] {
                    let mut path = vec![p];
                    path.extend_from_slice(&b.path);
                    bases[p].push(BasisLabel { path, generator: b.generator });
                }
            }
        }
        let mut arrows = HashMap::new();
        for p in 0..poset.len() {
            if poset.degree(p) < n + 1 {
                continue;
            }
            let comps = self.free_components(n, p);
            for &p2 in poset.up_set(p) {
                if poset.degree(p2) < n + 1 {
                    continue;
                }
                let mut m = IntMatrix::zeros(bases[p2].len(), bases[p].len());
                let mut col = 0;
                for &q in &comps {
                    if poset.leq(p2, q) {
                        self.place_component(n, p2, q, col, &mut m);
                    }
                    col += self.rank(n, q);
                }
                arrows.insert((p, p2), m);
            }
        }
        self.levels.push(Level { bases, arrows, transfer: HashMap::new() });
    }

    /// `F_n` as a functor on the whole poset (zero below degree `n`).
    pub fn level_functor(&self, n: usize) -> Result<CoefFunctor, FunctorError> {
        let values = (0..self.poset.len()).map(|p| FGAbGroup::free(self.rank(n, p))).collect();
        let edges = self.poset.hasse_edges().map(|(p, q)| ((p, q), self.arrow(n, p, q))).collect();
        CoefFunctor::new(self.poset.clone(), values, &edges)
    }

    /// Objects of degree `n` with the offset of their block in `M_n`.
    pub fn blocks(&self, n: usize) -> Vec<(usize, usize)> {
        let mut acc = 0;
        self.poset
            .objects_of_degree(n)
            .iter()
            .map(|&p| {
                let o = acc;
                acc += self.rank(n, p);
                (p, o)
            })
            .collect()
    }

    pub fn label(&self, label: &BasisLabel) -> String {
        let path: Vec<&str> = label.path.iter().map(|&q| self.poset.id(q)).collect();
        let mut s = path.join(">");
        if self.base_ranks[*label.path.last().expect("nonempty path")] > 1 {
            s.push_str(&format!("#{}", label.generator));
        }
        s
    }

    /// `d_n : M_n → M_{n+1}` as an integer matrix.
    pub fn differential(&self, n: usize) -> IntMatrix {
        let lower = self.blocks(n);
        let upper = self.blocks(n + 1);
        let col_of: HashMap<usize, usize> = lower.iter().copied().collect();
        let rows: usize = upper.iter().map(|&(p, _)| self.rank(n + 1, p)).sum();
        let cols: usize = lower.iter().map(|&(p, _)| self.rank(n, p)).sum();
        let mut d = IntMatrix::zeros(rows, cols);
        for &(p, row) in &upper {
            let mut block = IntMatrix::zeros(self.rank(n + 1, p), cols);
            for q in self.poset.under_degree(p, n) {
                self.place_component(n, p, q, col_of[&q], &mut block);
            }
            d.set_block(row, 0, &block);
        }
        d
    }

    /// The cochain complex `0 → M_0 → M_1 → …` whose cohomology is
    /// `lim^* F_0`; `d ∘ d = 0` is verified.
    pub fn full_complex(&self) -> Result<FreeCochainComplex, SequenceError> {
        let top = self.levels.len();
        let ranks: Vec<usize> = (0..top).map(|n| self.blocks(n).iter().map(|&(p, _)| self.rank(n, p)).sum()).collect();
        let diffs: Vec<IntMatrix> = (0..top.saturating_sub(1)).map(|n| self.differential(n)).collect();
        let labels = (0..top)
            .map(|n| {
                self.blocks(n)
                    .iter()
                    .flat_map(|&(p, _)| self.levels[n].bases[p].iter().map(|b| self.label(b)))
                    .collect()
            })
            .collect();
        let c = FreeCochainComplex::new(ranks, diffs)?.with_labels(labels);
        c.check_dd()?;
        Ok(c)
    }

    /// `lim F_n` as a lattice inside `M_n` (basis columns): the families on
    /// `Ob_n` that extend over every degree-`(n+1)` object, which is `ker d_n`.
    pub fn limit_basis(&self, n: usize) -> Result<IntMatrix, SequenceError> {
        if n + 1 >= self.levels.len() {
            let r = self.blocks(n).iter().map(|&(p, _)| self.rank(n, p)).sum();
            return Ok(IntMatrix::identity(r));
        }
        Ok(linalg::kernel_basis(&self.differential(n))?)
    }
}
