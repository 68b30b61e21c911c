//! Functors from a graded poset to finitely generated abelian groups, their
//! limits and higher limits.
//!
//! Higher limits are available two ways: the shifting argument (embed an
//! `n`-condensed functor into the acyclic functor `Ker'_F` and pass to the
//! quotient) and a direct order-complex cochain computation used as ground
//! truth.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{FGAbGroup, GroupError, GroupHom, GroupStructure};
use crate::complex::{ComplexError, FreeCochainComplex};
use crate::linalg::{IntMatrix, LinalgError};
use crate::poset::GradedPoset;

/// Default bound on the number of chains the order-complex oracle enumerates.
pub const DEFAULT_CHAIN_CAP: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctorError {
    #[error("expected {expected} values, got {got}")]
    ValueCount { expected: usize, got: usize },
    #[error("missing arrow `{0}` -> `{1}`")]
    MissingArrow(String, String),
    #[error("arrow given for `{0}` -> `{1}` but `{0}` is not below `{1}`")]
    NotRelated(String, String),
    #[error("arrow `{p}` -> `{q}`: {source}")]
    BadArrow { p: String, q: String, source: GroupError },
    #[error("composites `{p}` -> `{q}` differ along different paths (via `{via_a}` and `{via_b}`)")]
    NotFunctorial { p: String, q: String, via_a: String, via_b: String },
    #[error("functor is not {n}-condensed at `{object}`")]
    NotCondensed { n: usize, object: String },
    #[error("order complex has more than {cap} chains")]
    TooManyChains { cap: usize },
    #[error("structure map at `{0}` is not injective")]
    NotInjective(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A functor `P → Ab`: a group per object and a matrix per arrow `p ≤ q`
/// (all composites are stored, derived from the Hasse edges).
#[derive(Clone, Debug)]
pub struct CoefFunctor {
    poset: Arc<GradedPoset>,
    values: Vec<FGAbGroup>,
    /// `arrows[p][k]` is the matrix of `F(p → up_set(p)[k])`.
    arrows: Vec<Vec<IntMatrix>>,
}

/// Compatible families inside `∏_p F(p)`.
#[derive(Clone, Debug)]
pub struct Limit {
    pub group: FGAbGroup,
    /// Basis (columns, product coordinates) of the lattice of compatible
    /// families; `group` is presented on these columns.
    pub embedding: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CondensedFailure {
    /// `F(i) ≠ 0` with `deg(i) < n`.
    NonzeroBelow,
    /// `Ker_F(i) ≠ 0` with `deg(i) > n`.
    KernelAbove,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CondensedViolation {
    pub object: String,
    pub degree: usize,
    pub failure: CondensedFailure,
    /// The offending group (`F(i)` or `Ker_F(i)`).
    pub group: GroupStructure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CondensedReport {
    pub n: usize,
    pub violations: Vec<CondensedViolation>,
}

impl CondensedReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn witness(&self) -> Option<&CondensedViolation> {
        self.violations.first()
    }
}

/// Output of one application of the shifting argument to an `n`-condensed
/// functor `F`: the short exact sequence `0 → F → Ker'_F → G → 0`.
#[derive(Clone, Debug)]
pub struct ShiftStep {
    pub n: usize,
    pub ker_prime: CoefFunctor,
    /// `λ_p : F(p) → Ker'_F(p)`.
    pub lambda: Vec<IntMatrix>,
    pub g: CoefFunctor,
    pub lim_ker_prime: FGAbGroup,
    pub lim_g: FGAbGroup,
    /// Cokernel of `lim Ker'_F → lim G`, which is `lim¹ F`.
    pub lim_piece: FGAbGroup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitMethod {
    Kernel,
    Shift,
    Oracle,
}

#[derive(Clone, Debug, Serialize)]
pub struct HigherLimits {
    pub groups: Vec<GroupStructure>,
    /// How each degree was obtained.
    pub methods: Vec<LimitMethod>,
    /// Condensedness check of each functor met while shifting.
    pub trace: Vec<CondensedReport>,
}

impl CoefFunctor {
    /// Builds a functor from values and arrow matrices. `arrows` must cover
    /// every Hasse edge `(p, q)` (p precedes q); additional pairs `p < q` are
    /// accepted and checked against the composites.
    pub fn new(
        poset: Arc<GradedPoset>,
        values: Vec<FGAbGroup>,
        arrows: &HashMap<(usize, usize), IntMatrix>,
    ) -> Result<Self, FunctorError> {
        if values.len() != poset.len() {
            return Err(FunctorError::ValueCount { expected: poset.len(), got: values.len() });
        }
        let name = |p: usize| poset.id(p).to_string();
        for (&(p, q), m) in arrows {
            if !poset.lt(p, q) {
                return Err(FunctorError::NotRelated(name(p), name(q)));
            }
            GroupHom::new(values[p].clone(), values[q].clone(), m.clone())
                .map_err(|source| FunctorError::BadArrow { p: name(p), q: name(q), source })?;
        }
        let mut order: Vec<usize> = (0..poset.len()).collect();
        order.sort_by_key(|&p| (poset.degree(p), p));
        let mut composite: Vec<Vec<IntMatrix>> = vec![Vec::new(); poset.len()];
        for &p in &order {
            let ups = poset.up_set(p);
            let mut row = Vec::with_capacity(ups.len());
            for &q in ups {
                if q == p {
                    row.push(IntMatrix::identity(values[p].rank()));
                    continue;
                }
                let mut chosen: Option<(usize, IntMatrix)> = None;
                for &s in poset.successors(p) {
                    if !poset.leq(s, q) {
                        continue;
                    }
                    let edge = arrows.get(&(p, s)).ok_or_else(|| FunctorError::MissingArrow(name(p), name(s)))?;
                    let k = poset.up_set(s).binary_search(&q).expect("s <= q");
                    let m = composite[s][k].checked_mul(edge)?;
                    match &chosen {
                        None => chosen = Some((s, m)),
                        Some((s0, m0)) => {
                            if !same_columns_mod(&values[q], m0, &m) {
                                return Err(FunctorError::NotFunctorial {
                                    p: name(p),
                                    q: name(q),
                                    via_a: name(*s0),
                                    via_b: name(s),
                                });
                            }
                        }
                    }
                }
                let (s0, m) = chosen.expect("p < q implies a successor below q");
                if let Some(given) = arrows.get(&(p, q)) {
                    if !poset.precedes(p, q) && !same_columns_mod(&values[q], given, &m) {
                        return Err(FunctorError::NotFunctorial {
                            p: name(p),
                            q: name(q),
                            via_a: name(q),
                            via_b: name(s0),
                        });
                    }
                }
                row.push(m);
            }
            composite[p] = row;
        }
        Ok(CoefFunctor { poset, values, arrows: composite })
    }

    /// Builds a functor from values and trusted composite data without checks.
    fn from_edges_unchecked(
        poset: Arc<GradedPoset>,
        values: Vec<FGAbGroup>,
        edges: &HashMap<(usize, usize), IntMatrix>,
    ) -> CoefFunctor {
        let mut order: Vec<usize> = (0..poset.len()).collect();
        order.sort_by_key(|&p| (poset.degree(p), p));
        let mut composite: Vec<Vec<IntMatrix>> = vec![Vec::new(); poset.len()];
        for &p in &order {
            let row = poset
                .up_set(p)
                .iter()
                .map(|&q| {
                    if q == p {
                        return IntMatrix::identity(values[p].rank());
                    }
                    let s = *poset.successors(p).iter().find(|&&s| poset.leq(s, q)).expect("successor");
                    let k = poset.up_set(s).binary_search(&q).expect("s <= q");
                    composite[s][k].mul(&edges[&(p, s)])
                })
                .collect();
            composite[p] = row;
        }
        CoefFunctor { poset, values, arrows: composite }
    }

    /// The constant functor with value `group` and identity arrows.
    pub fn constant(poset: Arc<GradedPoset>, group: &FGAbGroup) -> CoefFunctor {
        let values = vec![group.clone(); poset.len()];
        let edges = poset.hasse_edges().map(|e| (e, IntMatrix::identity(group.rank()))).collect();
        CoefFunctor::from_edges_unchecked(poset, values, &edges)
    }

    pub fn poset(&self) -> &Arc<GradedPoset> {
        &self.poset
    }

    pub fn value(&self, p: usize) -> &FGAbGroup {
        &self.values[p]
    }

    pub fn values(&self) -> &[FGAbGroup] {
        &self.values
    }

    /// Matrix of `F(p → q)`; panics unless `p ≤ q`.
    pub fn arrow(&self, p: usize, q: usize) -> &IntMatrix {
        let k = self.poset.up_set(p).binary_search(&q).expect("arrow requires p <= q");
        &self.arrows[p][k]
    }

    pub fn hom(&self, p: usize, q: usize) -> GroupHom {
        GroupHom { source: self.values[p].clone(), target: self.values[q].clone(), matrix: self.arrow(p, q).clone() }
    }

    pub fn edge_arrows(&self) -> HashMap<(usize, usize), IntMatrix> {
        self.poset.hasse_edges().map(|(p, q)| ((p, q), self.arrow(p, q).clone())).collect()
    }

    /// True when every value is presented without relations.
    pub fn is_free(&self) -> bool {
        self.values.iter().all(FGAbGroup::is_free_presentation)
    }

    fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.values.len() + 1);
        let mut acc = 0;
        out.push(0);
        for v in &self.values {
            acc += v.rank();
            out.push(acc);
        }
        out
    }

    fn product_relations(&self) -> IntMatrix {
        let rels: Vec<&IntMatrix> = self.values.iter().map(FGAbGroup::relations).collect();
        IntMatrix::block_diagonal(&rels)
    }

    /// Difference map `∏_p F(p) → ∏_{(p,q) Hasse} F(q)`, `x ↦ F(p→q) x_p − x_q`.
    fn compatibility_map(&self) -> GroupHom {
        let off = self.offsets();
        let edges: Vec<(usize, usize)> = self.poset.hasse_edges().collect();
        let rows: usize = edges.iter().map(|&(_, q)| self.values[q].rank()).sum();
        let mut m = IntMatrix::zeros(rows, off[self.values.len()]);
        let mut r = 0;
        for &(p, q) in &edges {
            m.set_block(r, off[p], self.arrow(p, q));
            m.add_block(r, off[q], &IntMatrix::identity(self.values[q].rank()).neg());
            r += self.values[q].rank();
        }
        let target = FGAbGroup::direct_sum(&edges.iter().map(|&(_, q)| self.values[q].clone()).collect::<Vec<_>>());
        let source = FGAbGroup::direct_sum(&self.values);
        GroupHom { source, target, matrix: m }
    }

    /// `lim F`, the compatible families.
    pub fn limit(&self) -> Result<Limit, FunctorError> {
        let (group, embedding) = self.compatibility_map().kernel()?;
        Ok(Limit { group, embedding })
    }

    /// `F(p) → ∏_{s ∈ successors(p)} F(s)`; its kernel is `Ker_F(p)`.
    fn successor_map(&self, p: usize) -> GroupHom {
        let succ = self.poset.successors(p);
        let blocks: Vec<&IntMatrix> = succ.iter().map(|&s| self.arrow(p, s)).collect();
        let mut m = IntMatrix::zeros(0, self.values[p].rank());
        for b in blocks {
            m = m.vstack(b);
        }
        let target = FGAbGroup::direct_sum(&succ.iter().map(|&s| self.values[s].clone()).collect::<Vec<_>>());
        GroupHom { source: self.values[p].clone(), target, matrix: m }
    }

    /// `Ker_F`: at `p0` the intersection of the kernels of all arrows out of
    /// `p0`, with every non-identity arrow zero. Also returns the embedding
    /// `Ker_F(p) → F(p)` of each value.
    pub fn ker_functor(&self) -> Result<(CoefFunctor, Vec<IntMatrix>), FunctorError> {
        let mut values = Vec::with_capacity(self.values.len());
        let mut embeddings = Vec::with_capacity(self.values.len());
        for p in 0..self.values.len() {
            let (k, e) = self.successor_map(p).kernel()?;
            values.push(k);
            embeddings.push(e);
        }
        let edges = self
            .poset
            .hasse_edges()
            .map(|(p, q)| ((p, q), IntMatrix::zeros(values[q].rank(), values[p].rank())))
            .collect();
        Ok((CoefFunctor::from_edges_unchecked(self.poset.clone(), values, &edges), embeddings))
    }

    /// Functor with `p0 ↦ ⊕_{q ∈ sets[p0]} base[q]` whose arrow `p1 → p0`
    /// sends the `q` component to the `q` component when `q ∈ sets[p0]` and
    /// to zero otherwise. Requires `sets[p0] ⊆ sets[p1]` for `p1 ≤ p0`.
    fn forwarding_functor(&self, base: &[FGAbGroup], sets: &[Vec<usize>]) -> CoefFunctor {
        let values: Vec<FGAbGroup> = sets
            .iter()
            .map(|s| FGAbGroup::direct_sum(&s.iter().map(|&q| base[q].clone()).collect::<Vec<_>>()))
            .collect();
        let offsets = |s: &Vec<usize>| {
            let mut acc = 0;
            s.iter()
                .map(|&q| {
                    let o = acc;
                    acc += base[q].rank();
                    (q, o)
                })
                .collect::<HashMap<usize, usize>>()
        };
        let mut edges = HashMap::new();
        for (p1, p0) in self.poset.hasse_edges() {
            let src = offsets(&sets[p1]);
            let mut m = IntMatrix::zeros(values[p0].rank(), values[p1].rank());
            let mut row = 0;
            for &q in &sets[p0] {
                let col = src[&q];
                m.set_block(row, col, &IntMatrix::identity(base[q].rank()));
                row += base[q].rank();
            }
            edges.insert((p1, p0), m);
        }
        CoefFunctor::from_edges_unchecked(self.poset.clone(), values, &edges)
    }

    /// `F'`: `p0 ↦ ∏_{p0 ≤ p} F(p)` with component-forwarding arrows.
    pub fn prime_functor(&self) -> CoefFunctor {
        let sets: Vec<Vec<usize>> = (0..self.values.len()).map(|p| self.poset.up_set(p).to_vec()).collect();
        self.forwarding_functor(&self.values, &sets)
    }

    /// `Ker'_F = (Ker_F)'`.
    pub fn ker_prime_functor(&self) -> Result<CoefFunctor, FunctorError> {
        let (k, _) = self.ker_functor()?;
        Ok(k.prime_functor())
    }

    /// Checks `F(i) = 0` for `deg(i) < n` and `Ker_F(i) = 0` for `deg(i) > n`,
    /// listing every violating object.
    pub fn is_n_condensed(&self, n: usize) -> Result<CondensedReport, FunctorError> {
        let mut violations = Vec::new();
        for p in 0..self.values.len() {
            let d = self.poset.degree(p);
            let (failure, group) = if d < n {
                (CondensedFailure::NonzeroBelow, self.values[p].structure())
            } else if d > n {
                (CondensedFailure::KernelAbove, self.successor_map(p).kernel()?.0.structure())
            } else {
                continue;
            };
            if !group.is_zero() {
                violations.push(CondensedViolation { object: self.poset.id(p).to_string(), degree: d, failure, group });
            }
        }
        Ok(CondensedReport { n, violations })
    }

    /// One step of the shifting argument for an `n`-condensed functor.
    pub fn shift_step(&self, n: usize) -> Result<ShiftStep, FunctorError> {
        let report = self.is_n_condensed(n)?;
        if let Some(w) = report.witness() {
            return Err(FunctorError::NotCondensed { n, object: w.object.clone() });
        }
        let poset = &self.poset;
        let sets: Vec<Vec<usize>> = (0..self.values.len()).map(|p| poset.under_degree(p, n)).collect();
        let ker_prime = self.forwarding_functor(&self.values, &sets);
        let mut lambda = Vec::with_capacity(self.values.len());
        for p in 0..self.values.len() {
            let mut m = IntMatrix::zeros(0, self.values[p].rank());
            for &q in &sets[p] {
                m = m.vstack(self.arrow(p, q));
            }
            let hom = GroupHom { source: self.values[p].clone(), target: ker_prime.values[p].clone(), matrix: m };
            if !hom.is_injective()? {
                return Err(FunctorError::NotInjective(poset.id(p).to_string()));
            }
            lambda.push(hom.matrix);
        }
        let g_values =
            (0..self.values.len()).map(|p| ker_prime.values[p].quotient(&lambda[p])).collect::<Result<Vec<_>, _>>()?;
        // G has the same generators as Ker'_F, so the arrow matrices carry over
        let g = CoefFunctor { poset: poset.clone(), values: g_values, arrows: ker_prime.arrows.clone() };

        let lim_ker = ker_prime.limit()?;
        let g_map = g.compatibility_map();
        let lim_g_lattice = g_map.preimage_of_zero_lattice()?;
        let g_rels = g.product_relations();
        let lim_g = FGAbGroup::subquotient(&lim_g_lattice, &g_rels)?;
        let lim_piece = FGAbGroup::subquotient(&lim_g_lattice, &lim_ker.embedding.hstack(&g_rels))?;
        Ok(ShiftStep { n, ker_prime, lambda, g, lim_ker_prime: lim_ker.group, lim_g, lim_piece })
    }

    /// `lim^i F` for `0 ≤ i ≤ max_i`, by shifting while the successive
    /// functors stay condensed and by the order-complex oracle afterwards.
    pub fn higher_limits(&self, max_i: usize, chain_cap: usize) -> Result<HigherLimits, FunctorError> {
        let mut groups = vec![self.limit()?.group.structure()];
        let mut methods = vec![LimitMethod::Kernel];
        let mut trace = Vec::new();
        let start = (0..self.values.len())
            .filter(|&p| !self.values[p].is_zero())
            .map(|p| self.poset.degree(p))
            .min()
            .unwrap_or(0);
        let mut current = self.clone();
        for n in start..start + max_i {
            let report = current.is_n_condensed(n)?;
            let ok = report.holds();
            trace.push(report);
            if !ok {
                break;
            }
            let step = current.shift_step(n)?;
            groups.push(step.lim_piece.structure());
            methods.push(LimitMethod::Shift);
            current = step.g;
        }
        if groups.len() <= max_i {
            let oracle = self.higher_limits_oracle(max_i, chain_cap)?;
            for g in oracle.into_iter().skip(groups.len()) {
                groups.push(g);
                methods.push(LimitMethod::Oracle);
            }
        }
        Ok(HigherLimits { groups, methods, trace })
    }

    /// Strict chains `p_0 < … < p_m` of length `m + 1` for `m ≤ max_m`.
    fn chains(&self, max_m: usize, cap: usize) -> Result<Vec<Vec<Vec<usize>>>, FunctorError> {
        let poset = &self.poset;
        let mut out: Vec<Vec<Vec<usize>>> = vec![(0..poset.len()).map(|p| vec![p]).collect()];
        let mut total = out[0].len();
        for m in 1..=max_m {
            let mut next = Vec::new();
            for c in &out[m - 1] {
                let last = *c.last().expect("nonempty chain");
                for &q in poset.up_set(last) {
                    if q == last {
                        continue;
                    }
                    let mut c2 = c.clone();
                    c2.push(q);
                    next.push(c2);
                }
            }
            total += next.len();
            if total > cap {
                return Err(FunctorError::TooManyChains { cap });
            }
            if next.is_empty() {
                break;
            }
            out.push(next);
        }
        Ok(out)
    }

    /// `lim^i F` for `0 ≤ i ≤ max_i` as the cohomology of the cochain complex
    /// `C^m = ∏_{p_0 < … < p_m} F(p_m)` of the order complex.
    pub fn higher_limits_oracle(&self, max_i: usize, chain_cap: usize) -> Result<Vec<GroupStructure>, FunctorError> {
        let chains = self.chains(max_i + 1, chain_cap)?;
        let groups: Vec<FGAbGroup> = chains
            .iter()
            .map(|cs| {
                FGAbGroup::direct_sum(&cs.iter().map(|c| self.values[*c.last().unwrap()].clone()).collect::<Vec<_>>())
            })
            .collect();
        let mut deltas = Vec::new();
        for m in 0..chains.len().saturating_sub(1) {
            deltas.push(self.order_complex_differential(&chains[m], &chains[m + 1]));
        }
        let mut result = Vec::with_capacity(max_i + 1);
        if self.is_free() {
            let ranks = groups.iter().map(FGAbGroup::rank).collect();
            let c = FreeCochainComplex::new(ranks, deltas)?;
            let h = c.cohomology()?;
            for i in 0..=max_i {
                result.push(h.groups.get(i).cloned().unwrap_or_default());
            }
            return Ok(result);
        }
        for i in 0..=max_i {
            if i >= groups.len() {
                result.push(GroupStructure::default());
                continue;
            }
            let lattice = match deltas.get(i) {
                Some(d) => GroupHom { source: groups[i].clone(), target: groups[i + 1].clone(), matrix: d.clone() }
                    .preimage_of_zero_lattice()?,
                None => IntMatrix::identity(groups[i].rank()),
            };
            let mut rels = groups[i].relations().clone();
            if i > 0 {
                rels = deltas[i - 1].hstack(&rels);
            }
            result.push(FGAbGroup::subquotient(&lattice, &rels)?.structure());
        }
        Ok(result)
    }

    fn order_complex_differential(&self, lower: &[Vec<usize>], upper: &[Vec<usize>]) -> IntMatrix {
        let offsets = |cs: &[Vec<usize>]| {
            let mut acc = 0;
            let mut idx = HashMap::with_capacity(cs.len());
            for c in cs {
                idx.insert(c.clone(), acc);
                acc += self.values[*c.last().unwrap()].rank();
            }
            (idx, acc)
        };
        let (lo, lo_total) = offsets(lower);
        let (up, up_total) = offsets(upper);
        let mut d = IntMatrix::zeros(up_total, lo_total);
        for sigma in upper {
            let row = up[sigma];
            let m1 = sigma.len() - 1; // sigma = (c_0..c_{m+1}), m1 = m + 1
            let last = sigma[m1];
            let k = self.values[last].rank();
            for i in 0..m1 {
                let mut tau = sigma.clone();
                tau.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let mut block = IntMatrix::identity(k);
                if sign < 0 {
                    block = block.neg();
                }
                d.add_block(row, lo[&tau], &block);
            }
            let tau = &sigma[..m1];
            let mut block = self.arrow(sigma[m1 - 1], last).clone();
            if m1 % 2 == 1 {
                block = block.neg();
            }
            d.add_block(row, lo[tau], &block);
        }
        d
    }
}

fn same_columns_mod(target: &FGAbGroup, a: &IntMatrix, b: &IntMatrix) -> bool {
    a.cols() == b.cols() && (0..a.cols()).all(|j| target.elements_equal(&a.column(j), &b.column(j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::PosetData;

    fn chain_ab() -> Arc<GradedPoset> {
        let d =
            PosetData { objects: vec![("a".into(), 1), ("b".into(), 0)], relations: vec![("a".into(), "b".into())] };
        Arc::new(GradedPoset::new(&d).unwrap())
    }

    #[test]
    fn constant_on_chain() {
        let p = chain_ab();
        let f = CoefFunctor::constant(p, &FGAbGroup::free(1));
        assert_eq!(f.limit().unwrap().group.structure(), GroupStructure::free(1));
        let (k, _) = f.ker_functor().unwrap();
        assert!(k.value(0).is_zero());
        assert_eq!(k.value(1).structure(), GroupStructure::free(1));
        assert!(f.is_n_condensed(0).unwrap().holds());
        let h = f.higher_limits(2, DEFAULT_CHAIN_CAP).unwrap();
        assert_eq!(h.groups[1], GroupStructure::default());
    }

    #[test]
    fn zero_functor_shifts_to_zero() {
        let p = chain_ab();
        let f = CoefFunctor::constant(p, &FGAbGroup::zero());
        let s = f.shift_step(0).unwrap();
        assert!(s.g.values().iter().all(FGAbGroup::is_zero));
        assert!(s.lim_piece.is_zero());
    }

    #[test]
    fn bad_arrow_is_rejected() {
        let p = chain_ab();
        let arrows = HashMap::from([((0, 1), IntMatrix::diagonal(&[1]))]);
        let err = CoefFunctor::new(p, vec![FGAbGroup::cyclic(2), FGAbGroup::cyclic(4)], &arrows).unwrap_err();
        assert!(matches!(err, FunctorError::BadArrow { .. }));
    }
}
