//! Simplex-like posets, local covering families and R-numbers.
//!
//! Posets here use the graded convention: a simplex sits *below* its faces,
//! so the up-set of an object is its set of faces and the degree is the
//! dimension. A poset is simplex-like when every up-set is isomorphic to
//! the face lattice of a standard simplex.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::complex::FreeCochainComplex;
use crate::linalg::IntMatrix;
use crate::poset::{GradedPoset, Poset, PosetData, PosetError, Under};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplexError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("empty facet")]
    EmptyFacet,
    #[error("vertex order is not a permutation of the vertices: {0}")]
    BadVertexOrder(String),
    #[error("`{object}` is not simplex-like: {reason}")]
    NotSimplexLike { object: String, reason: String },
    #[error("local covering family: {0}")]
    Family(String),
}

/// An abstract simplicial complex on named vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    /// Simplices as sorted vertex-index lists, ordered by dimension then lexicographically.
    simplices: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// All nonempty faces of the given facets.
    pub fn from_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self, SimplexError> {
        let mut names = BTreeSet::new();
        for f in facets {
            if f.is_empty() {
                return Err(SimplexError::EmptyFacet);
            }
            for v in f {
                names.insert(v.as_ref().to_string());
            }
        }
        let vertices: Vec<String> = names.into_iter().collect();
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut faces = BTreeSet::new();
        for f in facets {
            let mut vs: Vec<usize> = f.iter().map(|v| index[v.as_ref()]).collect();
            vs.sort_unstable();
            vs.dedup();
            if vs.len() > 20 {
                return Err(SimplexError::NotSimplexLike {
                    object: simplex_name(&vertices, &vs),
                    reason: "facet dimension too large".into(),
                });
            }
            for mask in 1u32..(1 << vs.len()) {
                let face: Vec<usize> = (0..vs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
                faces.insert((face.len(), face));
            }
        }
        let simplices = faces.into_iter().map(|(_, f)| f).collect();
        Ok(SimplicialComplex { vertices, simplices })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn cell_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    /// Id of a simplex: its vertex names, sorted, joined by single spaces.
    pub fn name(&self, simplex: &[usize]) -> String {
        simplex_name(&self.vertices, simplex)
    }

    /// The graded poset of simplices: `σ ≤ τ` iff `τ` is a face of `σ`, degree = dimension.
    pub fn face_poset(&self) -> GradedPoset {
        let mut data = PosetData::default();
        for s in &self.simplices {
            let name = self.name(s);
            data.objects.push((name.clone(), s.len() as i64 - 1));
            if s.len() > 1 {
                for skip in 0..s.len() {
                    let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    data.relations.push((name.clone(), self.name(&face)));
                }
            }
        }
        GradedPoset::new(&data).expect("face poset of a simplicial complex is graded")
    }
}

fn simplex_name(vertices: &[String], simplex: &[usize]) -> String {
    let mut names: Vec<&str> = simplex.iter().map(|&v| vertices[v].as_str()).collect();
    names.sort_unstable();
    names.join(" ")
}

/// Canonical form of a simplex key such as `"v1 v0"`: names sorted and
/// joined by single spaces.
pub fn normalize_simplex_key(key: &str) -> String {
    let mut names: Vec<&str> = key.split_whitespace().collect();
    names.sort_unstable();
    names.join(" ")
}

/// Random simplicial complex with at most `max_cells` simplices and
/// dimension at most `max_dim`.
pub fn random_complex<R: Rng>(rng: &mut R, max_cells: usize, max_dim: usize) -> SimplicialComplex {
    let n_vertices = rng.gen_range(1..=7usize);
    let names: Vec<String> = (0..n_vertices).map(|i| format!("v{i}")).collect();
    let mut facets: Vec<Vec<String>> = vec![vec![names[0].clone()]];
    let mut current = SimplicialComplex::from_facets(&facets).expect("nonempty");
    for _ in 0..rng.gen_range(1..=8) {
        let size = rng.gen_range(1..=(max_dim + 1).min(n_vertices));
        let mut pool: Vec<usize> = (0..n_vertices).collect();
        let mut facet = Vec::with_capacity(size);
        for _ in 0..size {
            let k = rng.gen_range(0..pool.len());
            facet.push(names[pool.swap_remove(k)].clone());
        }
        facets.push(facet);
        let candidate = SimplicialComplex::from_facets(&facets).expect("nonempty");
        if candidate.cell_count() > max_cells {
            facets.pop();
        } else {
            current = candidate;
        }
    }
    current
}

/// Witness that each up-set of a poset is a simplex face lattice: the
/// vertex list of every object, in one global vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexCertificate {
    /// Vertices (objects without successors) in the chosen global order.
    pub vertex_order: Vec<usize>,
    /// For each object, its vertices sorted by the global order.
    pub vertex_lists: Vec<Vec<usize>>,
}

impl SimplexCertificate {
    /// Face of `p` obtained by dropping the `j`-th vertex of its list.
    pub fn face_without(&self, poset: &GradedPoset, p: usize, j: usize) -> usize {
        let mut target = self.vertex_lists[p].clone();
        target.remove(j);
        *poset
            .under_degree(p, poset.degree(p) - 1)
            .iter()
            .find(|&&q| self.vertex_lists[q] == target)
            .expect("certified face exists")
    }

    /// Greatest vertex of `p` in the global order.
    pub fn top_vertex(&self, p: usize) -> usize {
        *self.vertex_lists[p].last().expect("objects have vertices")
    }
}

/// Checks that every up-set of `poset` is a simplex face lattice whose
/// dimension matches the degree. `vertex_order` (ids) overrides the default
/// lexicographic order of vertices.
pub fn certify(poset: &GradedPoset, vertex_order: Option<&[String]>) -> Result<SimplexCertificate, SimplexError> {
    let atoms: Vec<usize> = (0..poset.len()).filter(|&p| poset.successors(p).is_empty()).collect();
    let order: Vec<usize> = match vertex_order {
        None => atoms.clone(),
        Some(ids) => {
            let mut v = Vec::with_capacity(ids.len());
            for id in ids {
                v.push(poset.index_of(id)?);
            }
            let mut sorted = v.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted != atoms {
                return Err(SimplexError::BadVertexOrder(format!(
                    "expected each of the {} vertices exactly once",
                    atoms.len()
                )));
            }
            v
        }
    };
    let mut position = vec![usize::MAX; poset.len()];
    for (k, &a) in order.iter().enumerate() {
        position[a] = k;
    }
    let vertex_lists: Vec<Vec<usize>> = (0..poset.len())
        .map(|p| {
            let mut vs: Vec<usize> = poset.up_set(p).iter().copied().filter(|&q| position[q] != usize::MAX).collect();
            vs.sort_by_key(|&q| position[q]);
            vs
        })
        .collect();
    for p in 0..poset.len() {
        check_simplex_shape(poset, p, &vertex_lists)?;
    }
    Ok(SimplexCertificate { vertex_order: order, vertex_lists })
}

fn check_simplex_shape(poset: &GradedPoset, p: usize, lists: &[Vec<usize>]) -> Result<(), SimplexError> {
    let fail = |reason: String| SimplexError::NotSimplexLike { object: poset.id(p).to_string(), reason };
    let verts = &lists[p];
    let k = verts.len();
    if k == 0 || k > 24 {
        return Err(fail(format!("{k} vertices")));
    }
    if poset.degree(p) + 1 != k {
        return Err(fail(format!("degree {} but {k} vertices", poset.degree(p))));
    }
    let ups = poset.up_set(p);
    let expected = (1usize << k) - 1;
    if ups.len() != expected {
        return Err(fail(format!("{} faces on {k} vertices, a simplex has {expected}", ups.len())));
    }
    let bit: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mask = |q: usize| lists[q].iter().fold(0usize, |m, v| m | 1 << bit[v]);
    let masks: Vec<usize> = ups.iter().map(|&q| mask(q)).collect();
    let distinct: BTreeSet<usize> = masks.iter().copied().collect();
    if distinct.len() != expected || distinct.contains(&0) {
        return Err(fail("faces are not determined by their vertex sets".into()));
    }
    for (a, &q) in ups.iter().enumerate() {
        for (b, &r) in ups.iter().enumerate() {
            let contained = masks[b] & !masks[a] == 0;
            if poset.leq(q, r) != contained {
                return Err(fail(format!(
                    "order between `{}` and `{}` disagrees with vertex inclusion",
                    poset.id(q),
                    poset.id(r)
                )));
            }
        }
    }
    Ok(())
}

/// Certifies an ungraded poset in the same convention (faces above) and
/// assigns degree = number of vertices − 1.
pub fn certify_poset(
    poset: Poset,
    vertex_order: Option<&[String]>,
) -> Result<(GradedPoset, SimplexCertificate), SimplexError> {
    let degree: Vec<usize> = (0..poset.len())
        .map(|p| poset.up_set(p).iter().filter(|&&q| poset.successors(q).is_empty()).count().saturating_sub(1))
        .collect();
    let graded = GradedPoset::from_poset(poset, degree)?;
    let cert = certify(&graded, vertex_order)?;
    Ok((graded, cert))
}

/// `J_n^{p0} ⊆ (p0 ↓ P)_n` for every object `p0` and `0 ≤ n ≤ deg(p0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCoveringFamily {
    /// `sets[p0][n]`, each sorted.
    pub sets: Vec<Vec<Vec<usize>>>,
}

impl LocalCoveringFamily {
    pub fn get(&self, p0: usize, n: usize) -> &[usize] {
        &self.sets[p0][n]
    }

    /// Reads a family from `{id: {n: [ids]}}`, filling the forced
    /// `J_{deg p}^p = {p}`. Missing levels are an error.
    pub fn from_ids(
        poset: &GradedPoset,
        raw: &BTreeMap<String, BTreeMap<usize, Vec<String>>>,
    ) -> Result<Self, SimplexError> {
        let mut sets: Vec<Vec<Option<Vec<usize>>>> =
            (0..poset.len()).map(|p| vec![None; poset.degree(p) + 1]).collect();
        for (id, levels) in raw {
            let p = poset.index_of(id)?;
            for (&n, members) in levels {
                if n > poset.degree(p) {
                    return Err(SimplexError::Family(format!("`{id}` has degree {} but J_{n} given", poset.degree(p))));
                }
                let mut v = members.iter().map(|m| poset.index_of(m)).collect::<Result<Vec<_>, _>>()?;
                v.sort_unstable();
                v.dedup();
                sets[p][n] = Some(v);
            }
        }
        let mut out = Vec::with_capacity(poset.len());
        for (p, levels) in sets.into_iter().enumerate() {
            let top = poset.degree(p);
            let mut row = Vec::with_capacity(top + 1);
            for (n, s) in levels.into_iter().enumerate() {
                match s {
                    Some(v) => row.push(v),
                    None if n == top => row.push(vec![p]),
                    None => {
                        return Err(SimplexError::Family(format!("J_{n} missing for `{}`", poset.id(p))));
                    }
                }
            }
            out.push(row);
        }
        Ok(LocalCoveringFamily { sets: out })
    }

    pub fn to_ids(&self, poset: &GradedPoset) -> BTreeMap<String, BTreeMap<usize, Vec<String>>> {
        self.sets
            .iter()
            .enumerate()
            .map(|(p, levels)| {
                let m = levels
                    .iter()
                    .enumerate()
                    .map(|(n, s)| (n, s.iter().map(|&q| poset.id(q).to_string()).collect()))
                    .collect();
                (poset.id(p).to_string(), m)
            })
            .collect()
    }
}

/// For `Δ_n` (vertices `0..=n` in their natural order): `J_m^σ` is the set
/// of `m`-faces of `σ` containing the greatest vertex of `σ`. Simplices are
/// given as sorted vertex lists; the result maps each simplex to its sets.
pub fn delta_local_family(n: usize) -> BTreeMap<Vec<usize>, Vec<Vec<Vec<usize>>>> {
    let mut out = BTreeMap::new();
    for mask in 1u32..(1 << (n + 1)) {
        let sigma: Vec<usize> = (0..=n).filter(|&i| mask >> i & 1 == 1).collect();
        let top = *sigma.last().unwrap();
        let d = sigma.len() - 1;
        let mut levels = vec![Vec::new(); d + 1];
        for sub in 1u32..(1 << sigma.len()) {
            let face: Vec<usize> = (0..sigma.len()).filter(|&i| sub >> i & 1 == 1).map(|i| sigma[i]).collect();
            if face.contains(&top) {
                levels[face.len() - 1].push(face);
            }
        }
        for l in levels.iter_mut() {
            l.sort();
        }
        out.insert(sigma, levels);
    }
    out
}

/// The family transported from the simplex family through the certificate:
/// `J_m^p` is the set of `m`-faces of `p` containing `p`'s greatest vertex.
pub fn local_family(poset: &GradedPoset, cert: &SimplexCertificate) -> LocalCoveringFamily {
    let sets = (0..poset.len())
        .map(|p| {
            let top = cert.top_vertex(p);
            (0..=poset.degree(p))
                .map(|m| {
                    poset.under_degree(p, m).into_iter().filter(|&q| cert.vertex_lists[q].contains(&top)).collect()
                })
                .collect()
        })
        .collect();
    LocalCoveringFamily { sets }
}

/// A failed local-covering-family or adequacy condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum FamilyViolation {
    NotInUnderCategory { object: String, n: usize, member: String },
    TopLevel { object: String },
    Covering { object: String, n: usize, uncovered: Vec<String> },
    Nesting { object: String, n: usize, member: String, missing: Vec<String> },
    Disconnected { object: String, components: usize },
    RankEquation { object: String, n: usize, r: i64, sum: i64 },
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyViolation::NotInUnderCategory { object, n, member } => {
                write!(f, "J_{n} of `{object}` contains `{member}` which is not in its degree-{n} under-category")
            }
            FamilyViolation::TopLevel { object } => write!(f, "J_deg of `{object}` must be {{{object}}}"),
            FamilyViolation::Covering { object, n, uncovered } => {
                write!(f, "covering fails at `{object}`, degree {n}: {uncovered:?} not below any member of J_{}", n + 1)
            }
            FamilyViolation::Nesting { object, n, member, missing } => write!(
                f,
                "nesting fails at `{object}`: J_{n} of member `{member}` has {missing:?} outside J_{n} of `{object}`"
            ),
            FamilyViolation::Disconnected { object, components } => {
                write!(f, "strict under-category of `{object}` has {components} components")
            }
            FamilyViolation::RankEquation { object, n, r, sum } => {
                write!(f, "rank equation fails at `{object}`, n = {n}: R = {r} but the J_{n} sum is {sum}")
            }
        }
    }
}

/// Checks the covering and nesting conditions and `J_{deg p}^p = {p}`.
pub fn check_local_family(poset: &GradedPoset, j: &LocalCoveringFamily) -> Vec<FamilyViolation> {
    let mut out = Vec::new();
    let id = |p: usize| poset.id(p).to_string();
    for p0 in 0..poset.len() {
        let top = poset.degree(p0);
        if j.sets[p0].len() != top + 1 || j.get(p0, top) != [p0] {
            out.push(FamilyViolation::TopLevel { object: id(p0) });
            continue;
        }
        for n in 0..=top {
            let layer = poset.under_degree(p0, n);
            for &m in j.get(p0, n) {
                if !layer.contains(&m) {
                    out.push(FamilyViolation::NotInUnderCategory { object: id(p0), n, member: id(m) });
                }
            }
        }
        for n in 0..top {
            let layer = poset.under_degree(p0, n);
            let uncovered: Vec<String> =
                layer.iter().filter(|&&q| !j.get(p0, n + 1).iter().any(|&p| poset.leq(p, q))).map(|&q| id(q)).collect();
            if !uncovered.is_empty() {
                out.push(FamilyViolation::Covering { object: id(p0), n, uncovered });
            }
            for &p in j.get(p0, n + 1) {
                if poset.degree(p) != n + 1 || j.sets[p].len() <= n {
                    continue;
                }
                let missing: Vec<String> =
                    j.get(p, n).iter().filter(|q| !j.get(p0, n).contains(q)).map(|&q| id(q)).collect();
                if !missing.is_empty() {
                    out.push(FamilyViolation::Nesting { object: id(p0), n, member: id(p), missing });
                }
            }
        }
    }
    out
}

/// `R_n^p` for `0 ≤ n ≤ deg(p)`: `R_0 = 1` and
/// `R_n^{p0} = Σ_{p ∈ (p0↓P)_{n−1}} R_{n−1}^p − R_{n−1}^{p0}`.
pub fn r_values(poset: &GradedPoset) -> Vec<Vec<i64>> {
    let mut r: Vec<Vec<i64>> = (0..poset.len()).map(|p| vec![0; poset.degree(p) + 1]).collect();
    let top = poset.max_degree().unwrap_or(0);
    for p in 0..poset.len() {
        r[p][0] = 1;
    }
    for n in 1..=top {
        for p0 in 0..poset.len() {
            if poset.degree(p0) < n {
                continue;
            }
            let s: i64 = poset.under_degree(p0, n - 1).iter().map(|&p| r[p][n - 1]).sum();
            r[p0][n] = s - r[p0][n - 1];
        }
    }
    r
}

/// `Σ (−1)^i Σ_{p ∈ Ob_i} R_i^p`, which equals the Euler characteristic
/// whenever an adequate local covering family exists.
pub fn r_euler_characteristic(poset: &GradedPoset, r: &[Vec<i64>]) -> i64 {
    (0..poset.len())
        .map(|p| {
            let n = poset.degree(p);
            if n.is_multiple_of(2) {
                r[p][n]
            } else {
                -r[p][n]
            }
        })
        .sum()
}

/// Compares the Euler characteristic of `h` with [`r_euler_characteristic`].
pub fn euler_check(poset: &GradedPoset, r: &[Vec<i64>], h: &crate::complex::CohomologyResult) -> bool {
    h.euler_characteristic() == r_euler_characteristic(poset, r)
}

/// Closed form of `R_m` on a simplex of dimension `deg`:
/// `Σ_{l=0}^{m} (−1)^{m−l} C(deg+1, l)`.
pub fn r_closed_form(deg: usize, m: usize) -> i64 {
    (0..=m)
        .map(|l| {
            let c = binomial(deg as u64 + 1, l as u64) as i64;
            if (m - l).is_multiple_of(2) {
                c
            } else {
                -c
            }
        })
        .sum()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Adequacy: `(p0↓P)_*` connected when `deg(p0) ≥ 2`, and
/// `R_n^{p0} = Σ_{p ∈ J_n^{p0}} R_n^p` for `deg(p0) ≥ n + 1`.
pub fn check_adequate(poset: &GradedPoset, j: &LocalCoveringFamily, r: &[Vec<i64>]) -> Vec<FamilyViolation> {
    let mut out = Vec::new();
    for p0 in 0..poset.len() {
        let d = poset.degree(p0);
        if d >= 2 {
            let comps = poset.components_within(&poset.under(p0, Under::Strict)).len();
            if comps != 1 {
                out.push(FamilyViolation::Disconnected { object: poset.id(p0).to_string(), components: comps });
            }
        }
        for n in 0..d {
            let sum: i64 = j.get(p0, n).iter().map(|&p| r[p][n]).sum();
            if sum != r[p0][n] {
                out.push(FamilyViolation::RankEquation { object: poset.id(p0).to_string(), n, r: r[p0][n], sum });
            }
        }
    }
    out
}

/// The cellular cochain complex of a simplex-like poset:
/// `d_{n−1}(x)_p = Σ_{j=0}^{n} (−1)^{n−j} x_{v_0…v̂_j…v_n}`, with each
/// `p` of degree `n` having vertices `v_0 < … < v_n` in the certificate's order.
pub fn simplicial_differential(poset: &GradedPoset, cert: &SimplexCertificate) -> FreeCochainComplex {
    let top = poset.max_degree().map_or(0, |d| d + 1);
    let ranks: Vec<usize> = (0..top).map(|n| poset.objects_of_degree(n).len()).collect();
    let position: Vec<HashMap<usize, usize>> =
        (0..top).map(|n| poset.objects_of_degree(n).iter().enumerate().map(|(k, &p)| (p, k)).collect()).collect();
    let mut diffs = Vec::with_capacity(top.saturating_sub(1));
    for n in 1..top {
        let mut d = IntMatrix::zeros(ranks[n], ranks[n - 1]);
        for (row, &p) in poset.objects_of_degree(n).iter().enumerate() {
            for j in 0..=n {
                let q = cert.face_without(poset, p, j);
                d[(row, position[n - 1][&q])] += if (n - j) % 2 == 0 { 1 } else { -1 };
            }
        }
        diffs.push(d);
    }
    let labels =
        (0..top).map(|n| poset.objects_of_degree(n).iter().map(|&p| poset.id(p).to_string()).collect()).collect();
    FreeCochainComplex::new(ranks, diffs).expect("shapes are consistent").with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets(&[vec!["v0", "v1", "v2"]]).unwrap()
    }

    #[test]
    fn triangle_face_poset() {
        let c = triangle();
        assert_eq!(c.cell_count(), 7);
        let p = c.face_poset();
        assert_eq!(p.degree_counts(), vec![3, 3, 1]);
        let top = p.index_of("v0 v1 v2").unwrap();
        let e = p.index_of("v0 v1").unwrap();
        assert!(p.precedes(top, e));
        assert_eq!(p.under(top, Under::Degree(0)).len(), 3);
    }

    #[test]
    fn delta_two_family() {
        let fam = delta_local_family(2);
        let top = &fam[&vec![0, 1, 2]];
        assert_eq!(top[1], vec![vec![0, 2], vec![1, 2]]);
        assert_eq!(top[0], vec![vec![2]]);
        assert_eq!(top[2], vec![vec![0, 1, 2]]);
    }

    #[test]
    fn transported_family_is_adequate() {
        let p = triangle().face_poset();
        let cert = certify(&p, None).unwrap();
        let j = local_family(&p, &cert);
        assert!(check_local_family(&p, &j).is_empty());
        let r = r_values(&p);
        assert!(check_adequate(&p, &j, &r).is_empty());
        let top = p.index_of("v0 v1 v2").unwrap();
        assert_eq!(r[top], vec![1, 2, 1]);
        assert_eq!(r_closed_form(2, 1), 2);
    }

    #[test]
    fn doubled_family_is_inadequate() {
        let p = triangle().face_poset();
        let cert = certify(&p, None).unwrap();
        let mut j = local_family(&p, &cert);
        let top = p.index_of("v0 v1 v2").unwrap();
        j.sets[top][0] = vec![p.index_of("v1").unwrap(), p.index_of("v2").unwrap()];
        let r = r_values(&p);
        let v = check_adequate(&p, &j, &r);
        assert!(v.iter().any(|x| matches!(x, FamilyViolation::RankEquation { n: 0, r: 1, sum: 2, .. })));
    }

    #[test]
    fn non_simplex_shape_fails() {
        // three atoms below one object but only six elements
        let d = PosetData {
            objects: vec![
                ("t".into(), 2),
                ("e1".into(), 1),
                ("e2".into(), 1),
                ("a".into(), 0),
                ("b".into(), 0),
                ("c".into(), 0),
            ],
            relations: vec![
                ("t".into(), "e1".into()),
                ("t".into(), "e2".into()),
                ("e1".into(), "a".into()),
                ("e1".into(), "b".into()),
                ("e2".into(), "b".into()),
                ("e2".into(), "c".into()),
            ],
        };
        let p = GradedPoset::new(&d).unwrap();
        assert!(matches!(certify(&p, None), Err(SimplexError::NotSimplexLike { .. })));
    }

    #[test]
    fn edge_differential_sign() {
        let c = SimplicialComplex::from_facets(&[vec!["v0", "v1"]]).unwrap();
        let p = c.face_poset();
        let cert = certify(&p, None).unwrap();
        let cx = simplicial_differential(&p, &cert);
        // d_0(x)_{v0v1} = x_{v0} − x_{v1}
        assert_eq!(cx.differentials[0].row(0), &[1, -1]);
    }
}
