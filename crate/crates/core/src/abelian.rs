//! Finitely generated abelian groups given by presentations, and the
//! homomorphisms between them.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, IntMatrix, LinalgError, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("homomorphism matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape { rows: usize, cols: usize, expected_rows: usize, expected_cols: usize },
    #[error("matrix does not send relation {relation} of the source into the relations of the target")]
    NotWellDefined { relation: usize },
}

/// Isomorphism type of a finitely generated abelian group: `Z^free_rank`
/// plus cyclic groups of the listed orders (each dividing the next).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct GroupStructure {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl GroupStructure {
    pub fn free(rank: usize) -> Self {
        GroupStructure { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Z^k / colspan(relations)`.
#[derive(Clone)]
pub struct FGAbGroup {
    rank: usize,
    relations: IntMatrix,
    smith: SmithForm,
}

impl fmt::Debug for FGAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FGAbGroup({}; gens={}, rels={:?})", self.structure(), self.rank, self.relations)
    }
}

impl PartialEq for FGAbGroup {
    /// Presentation equality (same generators and the same relation lattice).
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && (0..other.relations.cols()).all(|j| self.is_zero_element(&other.relations.column(j)))
            && (0..self.relations.cols()).all(|j| other.is_zero_element(&self.relations.column(j)))
    }
}

impl FGAbGroup {
    /// `relations` must have `rank` rows; its columns generate the relation subgroup.
    pub fn new(rank: usize, relations: IntMatrix) -> Result<Self, GroupError> {
        if relations.rows() != rank {
            return Err(GroupError::Shape {
                rows: relations.rows(),
                cols: relations.cols(),
                expected_rows: rank,
                expected_cols: relations.cols(),
            });
        }
        let smith = linalg::smith(&relations)?;
        Ok(FGAbGroup { rank, relations, smith })
    }

    pub fn free(rank: usize) -> Self {
        FGAbGroup::new(rank, IntMatrix::zeros(rank, 0)).expect("free group")
    }

    pub fn zero() -> Self {
        FGAbGroup::free(0)
    }

    /// `Z/n` on one generator (`n = 0` gives `Z`).
    pub fn cyclic(n: i64) -> Self {
        let rels = if n == 0 { IntMatrix::zeros(1, 0) } else { IntMatrix::diagonal(&[n]) };
        FGAbGroup::new(1, rels).expect("cyclic group")
    }

    /// Direct sum of cyclic groups `Z/n_i` (`0` entries give free summands).
    pub fn from_orders(orders: &[i64]) -> Self {
        FGAbGroup::direct_sum(&orders.iter().map(|&n| FGAbGroup::cyclic(n)).collect::<Vec<_>>())
    }

    /// Number of generators of the presentation.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn is_free_presentation(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn structure(&self) -> GroupStructure {
        GroupStructure {
            free_rank: self.rank - self.smith.rank(),
            torsion: self.smith.diag.iter().copied().filter(|&d| d != 1).collect(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.rank - self.smith.rank()
    }

    pub fn torsion(&self) -> Vec<i64> {
        self.structure().torsion
    }

    pub fn is_zero(&self) -> bool {
        self.structure().is_zero()
    }

    pub fn is_isomorphic(&self, other: &FGAbGroup) -> bool {
        self.structure() == other.structure()
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<i64> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.torsion().iter().product())
    }

    /// Canonical coordinates of `v`: torsion components reduced modulo their
    /// invariant factor, then free components. Two vectors represent the
    /// same element iff their canonical coordinates agree.
    pub fn canonical(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.rank, "element has wrong length");
        if self.rank == 0 {
            return Vec::new();
        }
        let uv = self.smith.u.mul_vec(v);
        let r = self.smith.rank();
        let mut out = Vec::with_capacity(self.rank);
        for (i, &x) in uv.iter().enumerate() {
            if i < r {
                let d = self.smith.diag[i];
                if d != 1 {
                    out.push(x.rem_euclid(d));
                }
            } else {
                out.push(x);
            }
        }
        out
    }

    pub fn is_zero_element(&self, v: &[i64]) -> bool {
        self.canonical(v).iter().all(|&x| x == 0)
    }

    pub fn elements_equal(&self, a: &[i64], b: &[i64]) -> bool {
        self.canonical(a) == self.canonical(b)
    }

    pub fn direct_sum(groups: &[FGAbGroup]) -> FGAbGroup {
        let rels: Vec<&IntMatrix> = groups.iter().map(|g| &g.relations).collect();
        let rank = groups.iter().map(|g| g.rank).sum();
        FGAbGroup::new(rank, IntMatrix::block_diagonal(&rels)).expect("direct sum")
    }

    /// `self / <extra>`, on the same generators.
    pub fn quotient(&self, extra: &IntMatrix) -> Result<FGAbGroup, GroupError> {
        FGAbGroup::new(self.rank, self.relations.hstack(extra))
    }

    /// The subquotient `L / R` of `Z^m`, where `lattice` has basis columns
    /// spanning `L` and every column of `rels` lies in `L`. The result is
    /// presented on the basis of `L`.
    pub fn subquotient(lattice: &IntMatrix, rels: &IntMatrix) -> Result<FGAbGroup, GroupError> {
        let l = lattice.cols();
        let mut cols = Vec::with_capacity(rels.cols());
        if l > 0 {
            let s = linalg::smith(lattice)?;
            for j in 0..rels.cols() {
                let x = linalg::solve_with(lattice, &s, &rels.column(j))?.expect("relation lies outside the lattice");
                cols.push(x);
            }
        }
        FGAbGroup::new(l, IntMatrix::from_columns(&cols, l)?)
    }

    /// An isomorphic group in Smith form: generators are the non-unit
    /// torsion summands followed by the free summands. Returns the group with
    /// maps `to` (self → simplified) and `from` (simplified → self).
    pub fn simplified(&self) -> (FGAbGroup, IntMatrix, IntMatrix) {
        let r = self.smith.rank();
        let keep: Vec<usize> = (0..self.rank).filter(|&i| i >= r || self.smith.diag[i] != 1).collect();
        let orders: Vec<i64> = keep.iter().map(|&i| if i < r { self.smith.diag[i] } else { 0 }).collect();
        let to = self.smith.u.select_rows(&keep);
        let from = self.smith.u_inv.select_cols(&keep);
        (FGAbGroup::from_orders(&orders), to, from)
    }
}

/// A homomorphism given by an integer matrix on the chosen generators
/// (`target.rank() × source.rank()`).
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: FGAbGroup,
    pub target: FGAbGroup,
    pub matrix: IntMatrix,
}

impl GroupHom {
    /// Checks shape and well-definedness.
    pub fn new(source: FGAbGroup, target: FGAbGroup, matrix: IntMatrix) -> Result<Self, GroupError> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(GroupError::Shape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: target.rank(),
                expected_cols: source.rank(),
            });
        }
        let img = matrix.checked_mul(source.relations())?;
        for j in 0..img.cols() {
            if !target.is_zero_element(&img.column(j)) {
                return Err(GroupError::NotWellDefined { relation: j });
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn identity(g: &FGAbGroup) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), matrix: IntMatrix::identity(g.rank()) }
    }

    pub fn zero(source: &FGAbGroup, target: &FGAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.rank(), source.rank()),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        GroupHom { source: self.source.clone(), target: other.target.clone(), matrix: other.matrix.mul(&self.matrix) }
    }

    /// Equality as maps (images of every generator agree in the target).
    pub fn same_map(&self, other: &GroupHom) -> bool {
        self.matrix.rows() == other.matrix.rows()
            && self.matrix.cols() == other.matrix.cols()
            && (0..self.matrix.cols())
                .all(|j| self.target.elements_equal(&self.matrix.column(j), &other.matrix.column(j)))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.is_zero_element(&self.matrix.column(j)))
    }

    /// Lattice `{x ∈ Z^k : M x ∈ Rel_target}` as basis columns.
    pub fn preimage_of_zero_lattice(&self) -> Result<IntMatrix, GroupError> {
        let ka = self.source.rank();
        let kb = self.target.rank();
        if kb == 0 {
            return Ok(IntMatrix::identity(ka));
        }
        let s = &self.target.smith;
        let n = s.u.checked_mul(&self.matrix)?;
        let r = s.rank();
        let mut dpad = IntMatrix::zeros(kb, r);
        for (i, &d) in s.diag.iter().enumerate() {
            dpad[(i, i)] = -d;
        }
        let k = linalg::kernel_basis(&n.hstack(&dpad))?;
        let proj = k.block(0, 0, ka, k.cols());
        Ok(linalg::column_span_basis(&proj)?)
    }

    /// Kernel as a group together with its embedding (columns are the
    /// kernel generators written in source coordinates).
    pub fn kernel(&self) -> Result<(FGAbGroup, IntMatrix), GroupError> {
        let lattice = self.preimage_of_zero_lattice()?;
        let group = FGAbGroup::subquotient(&lattice, self.source.relations())?;
        Ok((group, lattice))
    }

    /// Cokernel, presented on the target generators.
    pub fn cokernel(&self) -> Result<FGAbGroup, GroupError> {
        self.target.quotient(&self.matrix)
    }

    /// Image as a subgroup of the target (presented on source generators
    /// modulo the kernel).
    pub fn image(&self) -> Result<FGAbGroup, GroupError> {
        let lattice = self.preimage_of_zero_lattice()?;
        self.source.quotient(&lattice).map(|g| g.simplified().0)
    }

    pub fn is_injective(&self) -> Result<bool, GroupError> {
        Ok(self.kernel()?.0.is_zero())
    }

    pub fn is_surjective(&self) -> Result<bool, GroupError> {
        Ok(self.cokernel()?.is_zero())
    }
}
