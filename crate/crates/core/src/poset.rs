//! Finite posets, graded posets and under-category queries.
//!
//! Objects are addressed by dense indices `0..len()`. Indices follow the
//! lexicographic order of the object ids, so every list returned by this
//! module (and every product basis built on top of it) is ordered by id.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::Deref;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("unknown object id `{0}`")]
    UnknownId(String),
    #[error("duplicate object id `{0}`")]
    DuplicateId(String),
    #[error("relations are not antisymmetric: `{0}` <= `{1}` <= `{0}`")]
    Cycle(String, String),
    #[error("not a graded poset:\n{0}")]
    Invalid(ValidationReport),
}

/// Finite partial order stored as sorted up-sets and down-sets (the full
/// transitive closure) together with the covering relation.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    covers_up: Vec<Vec<usize>>,
    covers_down: Vec<Vec<usize>>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(&str, &str)> =
            self.hasse_edges().map(|(p, q)| (self.ids[p].as_str(), self.ids[q].as_str())).collect();
        f.debug_struct("Poset").field("objects", &self.ids).field("hasse", &edges).finish()
    }
}

impl Poset {
    /// Builds a poset from ids and a generating set of relations `p <= q`.
    /// Ids are re-sorted lexicographically. Fails on duplicate or unknown ids
    /// and on cycles between distinct objects.
    pub fn new<S: AsRef<str>>(ids: &[S], relations: &[(S, S)]) -> Result<Poset, PosetError> {
        let (sorted, index) = sort_ids(ids)?;
        let mut succ = vec![Vec::new(); sorted.len()];
        for (a, b) in relations {
            let i = lookup(&index, a.as_ref())?;
            let j = lookup(&index, b.as_ref())?;
            if i != j {
                succ[i].push(j);
            }
        }
        let up = reachability(&succ);
        for (p, ups) in up.iter().enumerate() {
            for &q in ups {
                if q != p && up[q].binary_search(&p).is_ok() {
                    return Err(PosetError::Cycle(sorted[p].clone(), sorted[q].clone()));
                }
            }
        }
        Ok(Poset::from_closure(sorted, index, up))
    }

    fn from_closure(ids: Vec<String>, index: HashMap<String, usize>, up: Vec<Vec<usize>>) -> Poset {
        let n = ids.len();
        let mut down = vec![Vec::new(); n];
        for (p, ups) in up.iter().enumerate() {
            for &q in ups {
                down[q].push(p);
            }
        }
        let mut covers_up = vec![Vec::new(); n];
        let mut covers_down = vec![Vec::new(); n];
        for p in 0..n {
            let strict: Vec<usize> = up[p].iter().copied().filter(|&q| q != p).collect();
            for &q in &strict {
                let intermediate = strict.iter().any(|&r| r != q && up[r].binary_search(&q).is_ok());
                if !intermediate {
                    covers_up[p].push(q);
                    covers_down[q].push(p);
                }
            }
        }
        for v in covers_down.iter_mut() {
            v.sort_unstable();
        }
        Poset { ids, index, up, down, covers_up, covers_down }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, p: usize) -> &str {
        &self.ids[p]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Result<usize, PosetError> {
        lookup(&self.index, id)
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.up[p].binary_search(&q).is_ok()
    }

    pub fn lt(&self, p: usize, q: usize) -> bool {
        p != q && self.leq(p, q)
    }

    /// True iff `p < q` with nothing strictly between them.
    pub fn precedes(&self, p: usize, q: usize) -> bool {
        self.covers_up[p].binary_search(&q).is_ok()
    }

    /// `{q | p <= q}` in index order.
    pub fn up_set(&self, p: usize) -> &[usize] {
        &self.up[p]
    }

    /// `{q | q <= p}` in index order.
    pub fn down_set(&self, p: usize) -> &[usize] {
        &self.down[p]
    }

    /// Objects that `p` precedes.
    pub fn successors(&self, p: usize) -> &[usize] {
        &self.covers_up[p]
    }

    /// Objects preceding `p`.
    pub fn predecessors(&self, p: usize) -> &[usize] {
        &self.covers_down[p]
    }

    /// All covering pairs `(p, q)` with `p` preceding `q`, ordered by `p` then `q`.
    pub fn hasse_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |p| self.covers_up[p].iter().map(move |&q| (p, q)))
    }

    pub fn hasse_edge_count(&self) -> usize {
        self.covers_up.iter().map(Vec::len).sum()
    }

    /// Same objects and ids with the order reversed.
    pub fn opposite(&self) -> Poset {
        Poset {
            ids: self.ids.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            covers_up: self.covers_down.clone(),
            covers_down: self.covers_up.clone(),
        }
    }

    /// The full subposet on `objects` (any order; result re-sorted by id).
    pub fn restrict(&self, objects: &[usize]) -> Poset {
        let mut keep: Vec<usize> = objects.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let ids: Vec<String> = keep.iter().map(|&p| self.ids[p].clone()).collect();
        let index = ids.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        let up = keep.iter().map(|&p| self.up[p].iter().filter_map(|q| pos.get(q).copied()).collect()).collect();
        Poset::from_closure(ids, index, up)
    }

    /// Connected components of the comparability graph restricted to
    /// `objects`, each sorted; components ordered by smallest member.
    pub fn components_within(&self, objects: &[usize]) -> Vec<Vec<usize>> {
        let members: BTreeSet<usize> = objects.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &members {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(p) = queue.pop_front() {
                for &q in self.covers_up[p].iter().chain(&self.covers_down[p]) {
                    if members.contains(&q) && seen.insert(q) {
                        comp.push(q);
                        queue.push_back(q);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

fn sort_ids<S: AsRef<str>>(ids: &[S]) -> Result<(Vec<String>, HashMap<String, usize>), PosetError> {
    let mut sorted: Vec<String> = ids.iter().map(|s| s.as_ref().to_string()).collect();
    sorted.sort();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(PosetError::DuplicateId(w[0].clone()));
        }
    }
    let index = sorted.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    Ok((sorted, index))
}

fn lookup(index: &HashMap<String, usize>, id: &str) -> Result<usize, PosetError> {
    index.get(id).copied().ok_or_else(|| PosetError::UnknownId(id.to_string()))
}

/// Reflexive-transitive reachability from every node, sorted.
fn reachability(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = succ.len();
    let mut mark = vec![usize::MAX; n];
    (0..n)
        .map(|s| {
            let mut out = vec![s];
            mark[s] = s;
            let mut stack = vec![s];
            while let Some(p) = stack.pop() {
                for &q in &succ[p] {
                    if mark[q] != s {
                        mark[q] = s;
                        out.push(q);
                        stack.push(q);
                    }
                }
            }
            out.sort_unstable();
            out
        })
        .collect()
}

/// One violated axiom of a graded poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DuplicateId { id: String },
    UnknownId { id: String },
    NotAntisymmetric { p: String, q: String },
    NegativeDegree { object: String, degree: i64 },
    DegreeNotReversing { p: String, q: String, degree_p: i64, degree_q: i64 },
    PrecedingStep { p: String, q: String, degree_p: i64, degree_q: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId { id } => write!(f, "duplicate id `{id}`"),
            Violation::UnknownId { id } => write!(f, "relation mentions unknown id `{id}`"),
            Violation::NotAntisymmetric { p, q } => write!(f, "`{p}` <= `{q}` and `{q}` <= `{p}`"),
            Violation::NegativeDegree { object, degree } => {
                write!(f, "object `{object}` has negative degree {degree}")
            }
            Violation::DegreeNotReversing { p, q, degree_p, degree_q } => {
                write!(f, "`{p}` <= `{q}` but deg {degree_p} < deg {degree_q} (degree must be order reversing)")
            }
            Violation::PrecedingStep { p, q, degree_p, degree_q } => {
                write!(f, "`{p}` precedes `{q}` but preceding step {} != 1", degree_p - degree_q)
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "  - {v}")?;
        }
        Ok(())
    }
}

/// Unvalidated graded-poset input: ids with integer degrees and generating
/// relations `p <= q`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PosetData {
    pub objects: Vec<(String, i64)>,
    pub relations: Vec<(String, String)>,
}

impl PosetData {
    /// Translates all degrees so that the minimum becomes zero.
    pub fn shift_degrees(&mut self) {
        if let Some(min) = self.objects.iter().map(|o| o.1).min() {
            for o in self.objects.iter_mut() {
                o.1 -= min;
            }
        }
    }
}

/// Lists every violated graded-poset axiom. An empty report means the data
/// describes a graded poset with non-negative degrees.
pub fn validate(data: &PosetData) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut degree: HashMap<&str, i64> = HashMap::new();
    for (id, d) in &data.objects {
        if degree.insert(id.as_str(), *d).is_some() {
            report.violations.push(Violation::DuplicateId { id: id.clone() });
        }
        if *d < 0 {
            report.violations.push(Violation::NegativeDegree { object: id.clone(), degree: *d });
        }
    }
    for (a, b) in &data.relations {
        for x in [a, b] {
            if !degree.contains_key(x.as_str()) {
                let v = Violation::UnknownId { id: x.clone() };
                if !report.violations.contains(&v) {
                    report.violations.push(v);
                }
            }
        }
    }
    if !report.is_valid() {
        return report;
    }
    let ids: Vec<&str> = data.objects.iter().map(|o| o.0.as_str()).collect();
    let (sorted, index) = sort_ids(&ids).expect("duplicates already rejected");
    let mut succ = vec![Vec::new(); sorted.len()];
    for (a, b) in &data.relations {
        let (i, j) = (index[a], index[b]);
        if i != j {
            succ[i].push(j);
        }
    }
    let up = reachability(&succ);
    let mut cyclic = false;
    for (p, ups) in up.iter().enumerate() {
        for &q in ups {
            if p < q && up[q].binary_search(&p).is_ok() {
                cyclic = true;
                report.violations.push(Violation::NotAntisymmetric { p: sorted[p].clone(), q: sorted[q].clone() });
            }
        }
    }
    if cyclic {
        return report;
    }
    let poset = Poset::from_closure(sorted, index, up);
    let deg = |p: usize| degree[poset.id(p)];
    for p in 0..poset.len() {
        for &q in poset.up_set(p) {
            if q == p {
                continue;
            }
            let (dp, dq) = (deg(p), deg(q));
            let (ip, iq) = (poset.id(p).to_string(), poset.id(q).to_string());
            if dp < dq {
                report.violations.push(Violation::DegreeNotReversing { p: ip, q: iq, degree_p: dp, degree_q: dq });
            } else if poset.precedes(p, q) && dp != dq + 1 {
                report.violations.push(Violation::PrecedingStep { p: ip, q: iq, degree_p: dp, degree_q: dq });
            }
        }
    }
    report
}

/// Which part of the up-set `{p | p0 <= p}` an under-category query returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Under<'a> {
    All,
    Strict,
    Degree(usize),
    Degrees(&'a [usize]),
}

/// A poset with an order-reversing degree function that drops by exactly
/// one along every covering relation.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedPoset {
    poset: Poset,
    degree: Vec<usize>,
    by_degree: Vec<Vec<usize>>,
}

impl fmt::Debug for GradedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedPoset").field("poset", &self.poset).field("degree", &self.degree).finish()
    }
}

impl Deref for GradedPoset {
    type Target = Poset;
    fn deref(&self) -> &Poset {
        &self.poset
    }
}

impl GradedPoset {
    pub fn new(data: &PosetData) -> Result<GradedPoset, PosetError> {
        let report = validate(data);
        if !report.is_valid() {
            return Err(PosetError::Invalid(report));
        }
        let ids: Vec<&str> = data.objects.iter().map(|o| o.0.as_str()).collect();
        let rels: Vec<(&str, &str)> = data.relations.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let poset = Poset::new(&ids, &rels)?;
        let mut degree = vec![0; poset.len()];
        for (id, d) in &data.objects {
            degree[poset.index_of(id)?] = *d as usize;
        }
        Ok(GradedPoset::assemble(poset, degree))
    }

    /// Attaches degrees (indexed like `poset`) after checking the axioms.
    pub fn from_poset(poset: Poset, degree: Vec<usize>) -> Result<GradedPoset, PosetError> {
        let data = PosetData {
            objects: (0..poset.len()).map(|p| (poset.id(p).to_string(), degree[p] as i64)).collect(),
            relations: poset.hasse_edges().map(|(p, q)| (poset.id(p).to_string(), poset.id(q).to_string())).collect(),
        };
        let report = validate(&data);
        if !report.is_valid() {
            return Err(PosetError::Invalid(report));
        }
        Ok(GradedPoset::assemble(poset, degree))
    }

    fn assemble(poset: Poset, degree: Vec<usize>) -> GradedPoset {
        let top = degree.iter().copied().max().map_or(0, |d| d + 1);
        let mut by_degree = vec![Vec::new(); top];
        for (p, &d) in degree.iter().enumerate() {
            by_degree[d].push(p);
        }
        GradedPoset { poset, degree, by_degree }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn degree(&self, p: usize) -> usize {
        self.degree[p]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    /// Largest degree, or `None` for the empty poset.
    pub fn max_degree(&self) -> Option<usize> {
        self.by_degree.len().checked_sub(1)
    }

    /// `Ob_n`: objects of degree `n`, ordered by id.
    pub fn objects_of_degree(&self, n: usize) -> &[usize] {
        self.by_degree.get(n).map_or(&[], Vec::as_slice)
    }

    /// Under-category `(p0 ↓ P)` filtered per `variant`, ordered by id.
    pub fn under(&self, p0: usize, variant: Under<'_>) -> Vec<usize> {
        let ups = self.up_set(p0).iter().copied();
        match variant {
            Under::All => ups.collect(),
            Under::Strict => ups.filter(|&p| p != p0).collect(),
            Under::Degree(n) => ups.filter(|&p| self.degree[p] == n).collect(),
            Under::Degrees(s) => ups.filter(|&p| s.contains(&self.degree[p])).collect(),
        }
    }

    /// Shorthand for `under(p0, Under::Degree(n))`.
    pub fn under_degree(&self, p0: usize, n: usize) -> Vec<usize> {
        self.under(p0, Under::Degree(n))
    }

    /// The full graded subposet on `objects`.
    pub fn restrict(&self, objects: &[usize]) -> GradedPoset {
        let mut keep = objects.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let poset = self.poset.restrict(&keep);
        let degree = keep.iter().map(|&p| self.degree[p]).collect();
        GradedPoset::assemble(poset, degree)
    }

    /// `(p0 ↓ P)` as a graded poset in its own right.
    pub fn under_poset(&self, p0: usize) -> GradedPoset {
        self.restrict(self.up_set(p0))
    }

    /// Shape counts `|Ob_n|` for each degree.
    pub fn degree_counts(&self) -> Vec<usize> {
        self.by_degree.iter().map(Vec::len).collect()
    }

    pub fn to_data(&self) -> PosetData {
        PosetData {
            objects: (0..self.len()).map(|p| (self.id(p).to_string(), self.degree[p] as i64)).collect(),
            relations: self.hasse_edges().map(|(p, q)| (self.id(p).to_string(), self.id(q).to_string())).collect(),
        }
    }
}
