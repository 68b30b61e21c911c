//! Finite Coxeter groups, their Coxeter complexes and the covering family
//! built from descent data.
//!
//! Crystallographic systems (all `m(s,t) ∈ {2,3,4,6}`) are enumerated
//! through the integer action on simple roots; rank-two systems with any
//! `m` use the dihedral normal form.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::global::GlobalCoveringFamily;
use crate::poset::{GradedPoset, PosetData, PosetError};
use crate::simplex::{certify, SimplexCertificate, SimplexError};

/// Default safety cap on group order and cell count.
pub const DEFAULT_MAX_CELLS: usize = 100_000;

/// Environment variable overriding [`DEFAULT_MAX_CELLS`].
pub const MAX_CELLS_ENV: &str = "POSET_COHO_MAX_CELLS";

/// The cap in effect: `POSET_COHO_MAX_CELLS` if set and valid, else the default.
pub fn max_cells() -> usize {
    std::env::var(MAX_CELLS_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_CELLS)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("unsupported Coxeter system: {0}")]
    Unsupported(String),
    #[error("group not finite or too large (more than {cap} elements or cells)")]
    TooLarge { cap: usize },
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
}

/// Generators `s_1 < … < s_N` (input order) and the Coxeter matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterSystem {
    pub generators: Vec<String>,
    pub matrix: Vec<Vec<u32>>,
}

impl CoxeterSystem {
    pub fn new(generators: Vec<String>, matrix: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let n = generators.len();
        let bad = |m: String| Err(CoxeterError::InvalidMatrix(m));
        if n == 0 {
            return bad("no generators".into());
        }
        if n > 63 {
            return bad("more than 63 generators".into());
        }
        let mut seen = generators.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != n {
            return bad("duplicate generator names".into());
        }
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return bad(format!("matrix must be {n}x{n}"));
        }
        for i in 0..n {
            if matrix[i][i] != 1 {
                return bad(format!("diagonal entry {i} is {} instead of 1", matrix[i][i]));
            }
            for j in 0..n {
                if matrix[i][j] != matrix[j][i] {
                    return bad(format!("entries ({i},{j}) and ({j},{i}) differ"));
                }
                if i != j && matrix[i][j] < 2 {
                    return bad(format!("off-diagonal entry ({i},{j}) is {}", matrix[i][j]));
                }
            }
        }
        Ok(CoxeterSystem { generators, matrix })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Type `A_n` with generators `s1..sn`.
    pub fn type_a(n: usize) -> Self {
        Self::linear(n, |_| 3)
    }

    /// Type `B_n`: a path with the last bond labelled 4.
    pub fn type_b(n: usize) -> Self {
        Self::linear(n, |i| if i + 2 == n { 4 } else { 3 })
    }

    /// Dihedral `I_2(m)`.
    pub fn dihedral(m: u32) -> Self {
        Self::linear(2, |_| m)
    }

    /// `A_1 × … × A_1` (`n` commuting involutions).
    pub fn commuting(n: usize) -> Self {
        Self::linear(n, |_| 2)
    }

    fn linear(n: usize, bond: impl Fn(usize) -> u32) -> Self {
        let generators = (1..=n).map(|i| format!("s{i}")).collect();
        let mut matrix = vec![vec![2; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 1;
        }
        for i in 0..n.saturating_sub(1) {
            matrix[i][i + 1] = bond(i);
            matrix[i + 1][i] = bond(i);
        }
        CoxeterSystem { generators, matrix }
    }
}

/// A subset of generators as a bit mask.
pub type GenSet = u64;

fn members(set: GenSet, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&i| set >> i & 1 == 1)
}

/// An enumerated finite Coxeter group. Elements are indices; `0` is the identity.
#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    system: CoxeterSystem,
    /// `right[w][s]` is the index of `w·s`.
    right: Vec<Vec<usize>>,
    length: Vec<usize>,
    /// BFS parent: `w = parent.0 · s_{parent.1}`.
    parent: Vec<Option<(usize, usize)>>,
    longest: usize,
}

/// Enumerates `W` by breadth-first search on right multiplication.
pub fn enumerate(system: &CoxeterSystem, cap: usize) -> Result<CoxeterGroup, CoxeterError> {
    let n = system.rank();
    let crystallographic = (0..n).all(|i| (0..n).all(|j| i == j || matches!(system.matrix[i][j], 2 | 3 | 4 | 6)));
    let right = if crystallographic {
        enumerate_roots(system, cap)?
    } else if n == 2 {
        enumerate_dihedral(system.matrix[0][1] as usize, cap)?
    } else {
        return Err(CoxeterError::Unsupported("non-crystallographic bonds are only supported in rank 2".into()));
    };
    let mut length = vec![usize::MAX; right.len()];
    let mut parent = vec![None; right.len()];
    length[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(w) = queue.pop_front() {
        for s in 0..n {
            let ws = right[w][s];
            if length[ws] == usize::MAX {
                length[ws] = length[w] + 1;
                parent[ws] = Some((w, s));
                queue.push_back(ws);
            }
        }
    }
    let max = *length.iter().max().expect("nonempty");
    let longest = length.iter().position(|&l| l == max).expect("nonempty");
    Ok(CoxeterGroup { system: system.clone(), right, length, parent, longest })
}

/// Right-multiplication table from the action on the root basis:
/// `s_j(α_i) = α_i − a_{ji} α_j` with `a_{ij} a_{ji} = 4 cos²(π/m_{ij})`.
fn enumerate_roots(system: &CoxeterSystem, cap: usize) -> Result<Vec<Vec<usize>>, CoxeterError> {
    let n = system.rank();
    let mut cartan = vec![vec![0i64; n]; n];
    for i in 0..n {
        cartan[i][i] = 2;
        for j in i + 1..n {
            let (a, b) = match system.matrix[i][j] {
                2 => (0, 0),
                3 => (-1, -1),
                4 => (-1, -2),
                6 => (-1, -3),
                _ => unreachable!("checked crystallographic"),
            };
            cartan[i][j] = a;
            cartan[j][i] = b;
        }
    }
    // Element = matrix whose column i is w(α_i), stored column-major.
    let identity: Vec<i64> = (0..n * n).map(|k| i64::from(k / n == k % n)).collect();
    let mut index: HashMap<Vec<i64>, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elements = vec![identity];
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut w = 0;
    while w < elements.len() {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let m = &elements[w];
            let mut next = m.clone();
            for i in 0..n {
                let a = cartan[j][i];
                if a == 0 {
                    continue;
                }
                for r in 0..n {
                    next[i * n + r] = m[i * n + r]
                        .checked_sub(a.checked_mul(m[j * n + r]).ok_or(CoxeterError::TooLarge { cap })?)
                        .ok_or(CoxeterError::TooLarge { cap })?;
                }
            }
            let k = match index.get(&next) {
                Some(&k) => k,
                None => {
                    if elements.len() >= cap {
                        return Err(CoxeterError::TooLarge { cap });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    elements.len() - 1
                }
            };
            row.push(k);
        }
        right.push(row);
        w += 1;
    }
    Ok(right)
}

/// Dihedral group of order `2m`: elements are alternating words `(start, len)`,
/// with both words of length `m` identified.
fn enumerate_dihedral(m: usize, cap: usize) -> Result<Vec<Vec<usize>>, CoxeterError> {
    if 2 * m > cap {
        return Err(CoxeterError::TooLarge { cap });
    }
    // Index: 0 = identity, 1 + 2(k−1) + a = word of length k < m starting with a, 2m − 1 = longest.
    let longest = 2 * m - 1;
    let idx = |a: usize, k: usize| {
        if k == 0 {
            0
        } else if k == m {
            longest
        } else {
            1 + 2 * (k - 1) + a
        }
    };
    let last = |a: usize, k: usize| if k % 2 == 1 { a } else { 1 - a };
    let mut right = vec![vec![0; 2]; 2 * m];
    for s in 0..2 {
        right[0][s] = idx(s, 1);
        let t = if m % 2 == 1 { s } else { 1 - s };
        right[longest][s] = idx(t, m - 1);
        for k in 1..m {
            for a in 0..2 {
                right[idx(a, k)][s] = if last(a, k) == s { idx(a, k - 1) } else { idx(a, k + 1) };
            }
        }
    }
    Ok(right)
}

impl CoxeterGroup {
    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn order(&self) -> usize {
        self.right.len()
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// The unique element `w₀` of maximal length.
    pub fn longest(&self) -> usize {
        self.longest
    }

    pub fn length(&self, w: usize) -> usize {
        self.length[w]
    }

    pub fn mul_gen(&self, w: usize, s: usize) -> usize {
        self.right[w][s]
    }

    /// A reduced word for `w` (generator indices).
    pub fn word(&self, mut w: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length[w]);
        while let Some((p, s)) = self.parent[w] {
            out.push(s);
            w = p;
        }
        out.reverse();
        out
    }

    pub fn word_name(&self, w: usize) -> String {
        self.word(w).iter().map(|&s| self.system.generators[s].as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn set_name(&self, set: GenSet) -> String {
        members(set, self.rank()).map(|s| self.system.generators[s].as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn full_set(&self) -> GenSet {
        (1u64 << self.rank()) - 1
    }

    /// `S_u = {s | l(us) > l(u)}`.
    pub fn ascent_set(&self, u: usize) -> GenSet {
        (0..self.rank()).filter(|&s| self.length[self.right[u][s]] > self.length[u]).fold(0, |acc, s| acc | 1 << s)
    }

    /// `(S_u, s_u)` with `s_u = max S_u` in generator order (`None` for `w₀`).
    pub fn descent_data(&self, u: usize) -> (GenSet, Option<usize>) {
        let set = self.ascent_set(u);
        let top = (0..self.rank()).rev().find(|&s| set >> s & 1 == 1);
        (set, top)
    }

    /// The unique shortest element of `w W_I`.
    pub fn minimal_rep(&self, mut w: usize, set: GenSet) -> usize {
        'outer: loop {
            for s in members(set, self.rank()) {
                let ws = self.right[w][s];
                if self.length[ws] < self.length[w] {
                    w = ws;
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// Elements of the parabolic subgroup `W_I`.
    pub fn parabolic(&self, set: GenSet) -> Vec<usize> {
        (0..self.order()).filter(|&w| self.minimal_rep(w, set) == 0).collect()
    }

    /// Minimal coset representatives `W^I`.
    pub fn min_reps(&self, set: GenSet) -> Vec<usize> {
        (0..self.order()).filter(|&w| self.minimal_rep(w, set) == w).collect()
    }
}

/// Exhaustive checks of the coset and length facts the construction relies on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Default)]
pub struct GroupChecks {
    /// `l(ws) = l(w) ± 1` for all `w`, `s`.
    pub length_parity: bool,
    /// Exactly one element of maximal length.
    pub unique_longest: bool,
    /// `S_u = S` only for `u = 1` and `S_u = ∅` only for `u = w₀`.
    pub descent_extremes: bool,
    /// `|W^I|·|W_I| = |W|` for every `I ⊆ S`.
    pub coset_counts: bool,
    /// `minimal_rep(ws, I) = minimal_rep(w, I)` for `s ∈ I`, and the
    /// representative is never longer than `w`.
    pub rep_constant_on_cosets: bool,
    /// `u ∈ W^I ⇔ I ⊆ S_u`.
    pub min_rep_iff_ascents: bool,
}

impl GroupChecks {
    pub fn all(&self) -> bool {
        self.length_parity
            && self.unique_longest
            && self.descent_extremes
            && self.coset_counts
            && self.rep_constant_on_cosets
            && self.min_rep_iff_ascents
    }
}

pub fn check_group(g: &CoxeterGroup) -> GroupChecks {
    let n = g.rank();
    let order = g.order();
    let length_parity = (0..order).all(|w| (0..n).all(|s| g.length(w).abs_diff(g.length(g.mul_gen(w, s))) == 1));
    let max = g.length(g.longest());
    let unique_longest = (0..order).filter(|&w| g.length(w) == max).count() == 1;
    let descent_extremes = (0..order).all(|u| {
        let set = g.ascent_set(u);
        (set == g.full_set()) == (u == 0) && (set == 0) == (u == g.longest())
    });
    let mut coset_counts = true;
    let mut rep_constant_on_cosets = true;
    let mut min_rep_iff_ascents = true;
    for set in 0..=g.full_set() {
        let reps: Vec<usize> = (0..order).map(|w| g.minimal_rep(w, set)).collect();
        let n_reps = (0..order).filter(|&w| reps[w] == w).count();
        let n_para = reps.iter().filter(|&&u| u == 0).count();
        coset_counts &= n_reps * n_para == order;
        for w in 0..order {
            for s in members(set, n) {
                rep_constant_on_cosets &= reps[g.mul_gen(w, s)] == reps[w];
            }
            rep_constant_on_cosets &= g.length(reps[w]) <= g.length(w);
            min_rep_iff_ascents &= (reps[w] == w) == (set & !g.ascent_set(w) == 0);
        }
    }
    GroupChecks {
        length_parity,
        unique_longest,
        descent_extremes,
        coset_counts,
        rep_constant_on_cosets,
        min_rep_iff_ascents,
    }
}

/// The Coxeter complex as a graded poset: objects are cosets `uW_I`
/// (`u ∈ W^I`, `I ⊊ S`) of degree `|S| − |I| − 1`, with `uW_I ≤ u'W_{I'}`
/// iff `uW_I ⊆ u'W_{I'}`.
#[derive(Clone, Debug)]
pub struct CoxeterComplex {
    pub poset: Arc<GradedPoset>,
    pub certificate: SimplexCertificate,
    /// `(u, I)` for each object index.
    pub cells: Vec<(usize, GenSet)>,
}

fn cell_id(g: &CoxeterGroup, u: usize, set: GenSet) -> String {
    format!("[{}]{{{}}}", g.word_name(u), g.set_name(set))
}

pub fn coxeter_complex(g: &CoxeterGroup, cap: usize) -> Result<CoxeterComplex, CoxeterError> {
    let n = g.rank();
    let full = g.full_set();
    let mut cells = Vec::new();
    for set in 0..full {
        for u in g.min_reps(set) {
            cells.push((u, set));
            if cells.len() > cap {
                return Err(CoxeterError::TooLarge { cap });
            }
        }
    }
    let mut data = PosetData::default();
    for &(u, set) in &cells {
        let id = cell_id(g, u, set);
        data.objects.push((id.clone(), (n - set.count_ones() as usize - 1) as i64));
        for s in 0..n {
            let bigger = set | 1 << s;
            if bigger == set || bigger == full {
                continue;
            }
            data.relations.push((id.clone(), cell_id(g, g.minimal_rep(u, bigger), bigger)));
        }
    }
    let poset = GradedPoset::new(&data)?;
    let by_id: BTreeMap<String, (usize, GenSet)> =
        cells.iter().map(|&(u, set)| (cell_id(g, u, set), (u, set))).collect();
    let cells = (0..poset.len()).map(|p| by_id[poset.id(p)]).collect();
    let certificate = certify(&poset, None)?;
    Ok(CoxeterComplex { poset: Arc::new(poset), certificate, cells })
}

/// `K_n = {uW_I of dimension n : s_u ∉ I}`, with `w₀W_∅` (where `s_u` is
/// undefined) included.
pub fn coxeter_family(g: &CoxeterGroup, c: &CoxeterComplex) -> GlobalCoveringFamily {
    let top = g.rank();
    let mut k = vec![Vec::new(); top];
    for (p, &(u, set)) in c.cells.iter().enumerate() {
        let keep = match g.descent_data(u).1 {
            Some(s) => set >> s & 1 == 0,
            None => true,
        };
        if keep {
            k[c.poset.degree(p)].push(p);
        }
    }
    GlobalCoveringFamily { k }
}

/// A representative `u ≠ w₀` and degree where `|K_{n+1} ∩ P_u|` and
/// `|(Ob_n \ K_n) ∩ P_u|` differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionFailure {
    pub representative: String,
    pub n: usize,
    pub k_above: usize,
    pub outside_k: usize,
}

/// Compares, for every `u ≠ w₀` and every `n`, the number of cells of
/// `K_{n+1}` with representative `u` against the number of degree-`n`
/// cells outside `K_n` with representative `u`.
pub fn per_representative_counts(
    g: &CoxeterGroup,
    c: &CoxeterComplex,
    k: &GlobalCoveringFamily,
) -> Vec<BijectionFailure> {
    let top = g.rank();
    let mut in_k = vec![false; c.poset.len()];
    for n in 0..top {
        for &p in k.get(n) {
            in_k[p] = true;
        }
    }
    let mut counts: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (p, &(u, _)) in c.cells.iter().enumerate() {
        let entry = counts.entry(u).or_insert_with(|| (vec![0; top + 1], vec![0; top + 1]));
        let d = c.poset.degree(p);
        if in_k[p] {
            entry.0[d] += 1;
        } else {
            entry.1[d] += 1;
        }
    }
    let mut out = Vec::new();
    for (u, (inside, outside)) in counts {
        if u == g.longest() {
            continue;
        }
        for n in 0..top {
            if inside[n + 1] != outside[n] {
                out.push(BijectionFailure {
                    representative: g.word_name(u),
                    n,
                    k_above: inside[n + 1],
                    outside_k: outside[n],
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(enumerate(&CoxeterSystem::type_a(2), 1000).unwrap().order(), 6);
        assert_eq!(enumerate(&CoxeterSystem::commuting(2), 1000).unwrap().order(), 4);
        assert_eq!(enumerate(&CoxeterSystem::type_b(3), 1000).unwrap().order(), 48);
        assert_eq!(enumerate(&CoxeterSystem::dihedral(5), 1000).unwrap().order(), 10);
    }

    #[test]
    fn affine_hits_cap() {
        let sys = CoxeterSystem::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]],
        )
        .unwrap();
        assert_eq!(enumerate(&sys, 500).unwrap_err(), CoxeterError::TooLarge { cap: 500 });
    }

    #[test]
    fn a2_descent_and_reps() {
        let g = enumerate(&CoxeterSystem::type_a(2), 100).unwrap();
        let s1 = g.mul_gen(0, 0);
        assert_eq!(g.descent_data(s1), (0b10, Some(1)));
        assert_eq!(g.descent_data(g.longest()), (0, None));
        let s2s1 = g.mul_gen(g.mul_gen(0, 1), 0);
        assert_eq!(g.minimal_rep(s2s1, 0b01), g.mul_gen(0, 1));
        assert!(check_group(&g).all());
    }
}
