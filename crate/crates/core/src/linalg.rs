//! Dense integer matrices, Smith normal form and lattice utilities.
//!
//! Every integer computation in the crate bottoms out here. Elimination runs
//! in checked `i64` arithmetic first; if an intermediate value overflows, the
//! same elimination is replayed over arbitrary-precision integers and the
//! results are narrowed back, so transient coefficient growth never silently
//! corrupts a result.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("integer result does not fit in 64 bits")]
    Overflow,
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not invertible over the integers")]
    NotUnimodular,
}

/// Row-major dense matrix over the integers.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows. All rows must share a length; `cols` is
    /// used when there are no rows.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Shape(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<i64>], rows: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::Shape(format!("column {j} has {} entries, expected {rows}", c.len())));
            }
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|&&x| x != 0).count()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Matrix product.
    ///
    /// # Panics
    /// On shape mismatch or if an entry of the product overflows `i64`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        self.checked_mul(other).expect("integer matrix product")
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        let mut acc = vec![0i128; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self[(i, k)] as i128;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    let b = other[(k, j)];
                    if b != 0 {
                        *slot += a * b as i128;
                    }
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out[(i, j)] = i64::try_from(v).map_err(|_| LinalgError::Overflow)?;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let s: i128 = self.row(i).iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum();
                i64::try_from(s).expect("integer overflow in matrix-vector product")
            })
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(*b).expect("integer overflow in matrix sum"))
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            m.data[k * self.cols..(k + 1) * self.cols].copy_from_slice(self.row(i));
        }
        m
    }

    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m[(i, k)] = self[(i, j)];
            }
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diagonal(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = IntMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    /// Adds `block` into `self` at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] += block[(i, j)];
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        m
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

// ---------------------------------------------------------------------------
// Scalars for elimination

trait Scalar: Clone + PartialEq + fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs_less(&self, other: &Self) -> bool;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Floor division `(q, r)` with `self = q * d + r`.
    fn div_floor(&self, d: &Self) -> Option<(Self, Self)>;
    fn narrow(&self) -> Option<i64>;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_less(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_floor(&self, d: &Self) -> Option<(Self, Self)> {
        let q = self.checked_div_euclid(*d)?;
        let r = self.checked_rem_euclid(*d)?;
        Some((q, r))
    }
    fn narrow(&self) -> Option<i64> {
        Some(*self)
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_less(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_floor(&self, d: &Self) -> Option<(Self, Self)> {
        // Euclidean division: remainder in [0, |d|) as for i64::rem_euclid
        let q = self / d;
        let r = self % d;
        if Signed::is_negative(&r) {
            let step = if Signed::is_negative(d) { -BigInt::one() } else { BigInt::one() };
            Some((q - step, r + d.abs()))
        } else {
            Some((q, r))
        }
    }
    fn narrow(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
}

struct Work<T> {
    a: Vec<Vec<T>>,
    u: Option<Vec<Vec<T>>>,
    u_inv: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
    m: usize,
    n: usize,
}

fn ident<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n).map(|i| (0..n).map(|j| T::from_i64((i == j) as i64)).collect()).collect()
}

impl<T: Scalar> Work<T> {
    // row_i += c * row_j on A and U; inverse update on U^{-1}
    fn row_axpy(&mut self, i: usize, j: usize, c: &T) -> Option<()> {
        for k in 0..self.n {
            if !self.a[j][k].is_zero() {
                self.a[i][k] = self.a[i][k].add(&c.mul(&self.a[j][k])?)?;
            }
        }
        if let Some(u) = self.u.as_mut() {
            for k in 0..self.m {
                if !u[j][k].is_zero() {
                    u[i][k] = u[i][k].add(&c.mul(&u[j][k])?)?;
                }
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            // U^{-1} <- U^{-1} E^{-1}: column j -= c * column i
            for row in ui.iter_mut() {
                if !row[i].is_zero() {
                    row[j] = row[j].sub(&c.mul(&row[i])?)?;
                }
            }
        }
        Some(())
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap(i, j);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for row in ui.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn row_negate(&mut self, i: usize) -> Option<()> {
        for k in 0..self.n {
            self.a[i][k] = self.a[i][k].neg()?;
        }
        if let Some(u) = self.u.as_mut() {
            for k in 0..self.m {
                u[i][k] = u[i][k].neg()?;
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for row in ui.iter_mut() {
                row[i] = row[i].neg()?;
            }
        }
        Some(())
    }

    // col_i += c * col_j on A and V
    fn col_axpy(&mut self, i: usize, j: usize, c: &T) -> Option<()> {
        for row in self.a.iter_mut() {
            if !row[j].is_zero() {
                row[i] = row[i].add(&c.mul(&row[j])?)?;
            }
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                if !row[j].is_zero() {
                    row[i] = row[i].add(&c.mul(&row[j])?)?;
                }
            }
        }
        Some(())
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if !x.abs_less(&self.a[bi][bj]) => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Runs the elimination. Returns `None` on overflow.
    fn run(&mut self) -> Option<usize> {
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((pi, pj)) = self.smallest_in_block(t) else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let mut dirty = false;
                // clear column t below the pivot
                for i in t + 1..self.m {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let (q, r) = self.a[i][t].div_floor(&self.a[t][t])?;
                    self.row_axpy(i, t, &q.neg()?)?;
                    if !r.is_zero() {
                        dirty = true;
                    }
                }
                // clear row t right of the pivot
                for j in t + 1..self.n {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let (q, r) = self.a[t][j].div_floor(&self.a[t][t])?;
                    self.col_axpy(j, t, &q.neg()?)?;
                    if !r.is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // move the smallest remaining entry of row/column t to the pivot
                    let mut best = (t, t);
                    for i in t + 1..self.m {
                        let x = &self.a[i][t];
                        if !x.is_zero() && x.abs_less(&self.a[best.0][best.1]) {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.n {
                        let x = &self.a[t][j];
                        if !x.is_zero() && x.abs_less(&self.a[best.0][best.1]) {
                            best = (t, j);
                        }
                    }
                    self.row_swap(t, best.0);
                    self.col_swap(t, best.1);
                    continue;
                }
                // pivot must divide the whole remaining block
                let mut offender = None;
                'outer: for i in t + 1..self.m {
                    for j in t + 1..self.n {
                        if self.a[i][j].is_zero() {
                            continue;
                        }
                        let (_, r) = self.a[i][j].div_floor(&self.a[t][t])?;
                        if !r.is_zero() {
                            offender = Some(i);
                            break 'outer;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        let one = T::from_i64(1);
                        self.row_axpy(t, i, &one)?;
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.row_negate(t)?;
            }
            t += 1;
        }
        Some(t)
    }
}

/// Smith normal form `U · A · V = D` with `U`, `V` unimodular.
///
/// `diag` holds the nonzero diagonal entries `d_1 | d_2 | … | d_r` (all
/// positive); `r = diag.len()` is the rank of `A`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diag: Vec<i64>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

fn to_work<T: Scalar>(a: &IntMatrix, transforms: bool) -> Work<T> {
    let (m, n) = (a.rows(), a.cols());
    Work {
        a: (0..m).map(|i| a.row(i).iter().map(|&x| T::from_i64(x)).collect()).collect(),
        u: transforms.then(|| ident(m)),
        u_inv: transforms.then(|| ident(m)),
        v: transforms.then(|| ident(n)),
        m,
        n,
    }
}

fn narrow<T: Scalar>(rows: &[Vec<T>]) -> Result<IntMatrix, LinalgError> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut out = IntMatrix::zeros(rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            out[(i, j)] = x.narrow().ok_or(LinalgError::Overflow)?;
        }
    }
    Ok(out)
}

fn finish<T: Scalar>(w: Work<T>, rank: usize) -> Result<SmithForm, LinalgError> {
    let diag = (0..rank).map(|i| w.a[i][i].narrow().ok_or(LinalgError::Overflow)).collect::<Result<Vec<_>, _>>()?;
    let (m, n) = (w.m, w.n);
    let u = if m == 0 { IntMatrix::zeros(0, 0) } else { narrow(w.u.as_ref().unwrap())? };
    let u_inv = if m == 0 { IntMatrix::zeros(0, 0) } else { narrow(w.u_inv.as_ref().unwrap())? };
    let v = if n == 0 { IntMatrix::zeros(0, 0) } else { narrow(w.v.as_ref().unwrap())? };
    Ok(SmithForm { diag, u, u_inv, v })
}

/// Smith normal form with transforms.
pub fn smith(a: &IntMatrix) -> Result<SmithForm, LinalgError> {
    let mut w = to_work::<i64>(a, true);
    if let Some(rank) = w.run() {
        return finish(w, rank);
    }
    let mut w = to_work::<BigInt>(a, true);
    let rank = w.run().expect("arbitrary precision elimination cannot overflow");
    finish(w, rank)
}

/// Nonzero invariant factors of `a` (with multiplicity, including ones),
/// in divisibility order. Sparse matrices take a unit-pivot fast path before
/// the dense elimination.
pub fn invariant_factors(a: &IntMatrix) -> Result<Vec<i64>, LinalgError> {
    let total = a.rows() * a.cols();
    if total > 0 && a.nonzero_count() * 20 < total {
        let (units, rest) = eliminate_unit_pivots(a)?;
        let mut out = vec![1; units];
        out.extend(dense_invariant_factors(&rest)?);
        Ok(out)
    } else {
        dense_invariant_factors(a)
    }
}

fn dense_invariant_factors(a: &IntMatrix) -> Result<Vec<i64>, LinalgError> {
    let mut w = to_work::<i64>(a, false);
    if let Some(rank) = w.run() {
        return Ok((0..rank).map(|i| w.a[i][i]).collect());
    }
    let mut w = to_work::<BigInt>(a, false);
    let rank = w.run().expect("arbitrary precision elimination cannot overflow");
    (0..rank).map(|i| w.a[i][i].narrow().ok_or(LinalgError::Overflow)).collect()
}

/// Repeatedly pivots on ±1 entries of a sparse copy of `a`, removing the
/// pivot row and column each time. Returns the number of pivots taken and
/// the remaining (compacted) matrix, whose invariant factors together with
/// the removed units are those of `a`.
fn eliminate_unit_pivots(a: &IntMatrix) -> Result<(usize, IntMatrix), LinalgError> {
    let mut rows: Vec<HashMap<usize, i64>> = (0..a.rows())
        .map(|i| a.row(i).iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, x)).collect())
        .collect();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); a.cols()];
    for (i, r) in rows.iter().enumerate() {
        for &j in r.keys() {
            col_rows[j].push(i);
        }
    }
    let mut row_alive = vec![true; a.rows()];
    let mut col_alive = vec![true; a.cols()];
    let mut units = 0;
    loop {
        // pick the unit pivot in the sparsest row
        let mut pick: Option<(usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            if !row_alive[i] || r.is_empty() {
                continue;
            }
            if pick.is_some_and(|(_, _, len)| r.len() >= len) {
                continue;
            }
            let mut cand = None;
            for (&j, &x) in r {
                if x.abs() == 1 && cand.is_none_or(|c| j < c) {
                    cand = Some(j);
                }
            }
            if let Some(j) = cand {
                pick = Some((i, j, r.len()));
            }
        }
        let Some((pi, pj, _)) = pick else { break };
        let pivot_row = rows[pi].clone();
        let sign = pivot_row[&pj];
        let others: Vec<usize> =
            col_rows[pj].iter().copied().filter(|&i| i != pi && row_alive[i] && rows[i].contains_key(&pj)).collect();
        for i in others {
            let factor = rows[i][&pj] * sign; // sign = ±1 so this is a_ij / a_pj
            for (&j, &x) in &pivot_row {
                let delta = factor.checked_mul(x).ok_or(LinalgError::Overflow)?;
                let entry = rows[i].entry(j).or_insert(0);
                *entry = entry.checked_sub(delta).ok_or(LinalgError::Overflow)?;
                if *entry == 0 {
                    rows[i].remove(&j);
                } else if !col_rows[j].contains(&i) {
                    col_rows[j].push(i);
                }
            }
        }
        row_alive[pi] = false;
        col_alive[pj] = false;
        for &j in pivot_row.keys() {
            col_rows[j].retain(|&i| i != pi);
        }
        units += 1;
    }
    let live_rows: Vec<usize> = (0..a.rows()).filter(|&i| row_alive[i]).collect();
    let live_cols: Vec<usize> = (0..a.cols()).filter(|&j| col_alive[j]).collect();
    let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut rest = IntMatrix::zeros(live_rows.len(), live_cols.len());
    for (k, &i) in live_rows.iter().enumerate() {
        for (&j, &x) in &rows[i] {
            if let Some(&c) = col_pos.get(&j) {
                rest[(k, c)] = x;
            }
        }
    }
    Ok((units, rest))
}

pub fn rank(a: &IntMatrix) -> Result<usize, LinalgError> {
    Ok(invariant_factors(a)?.len())
}

/// Basis of the integer kernel `{x : A x = 0}` as columns. The kernel
/// computed this way is saturated.
pub fn kernel_basis(a: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let n = a.cols();
    if a.rows() == 0 {
        return Ok(IntMatrix::identity(n));
    }
    let s = smith(a)?;
    let r = s.rank();
    Ok(s.v.select_cols(&(r..n).collect::<Vec<_>>()))
}

/// Basis (as columns) of the lattice spanned by the columns of `g`.
pub fn column_span_basis(g: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let m = g.rows();
    if g.cols() == 0 || m == 0 {
        return Ok(IntMatrix::zeros(m, 0));
    }
    let s = smith(g)?;
    let mut b = IntMatrix::zeros(m, s.rank());
    for (k, &d) in s.diag.iter().enumerate() {
        for i in 0..m {
            b[(i, k)] = s.u_inv[(i, k)].checked_mul(d).ok_or(LinalgError::Overflow)?;
        }
    }
    Ok(b)
}

/// Some integer solution `x` of `A x = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &[i64]) -> Result<Option<Vec<i64>>, LinalgError> {
    let s = smith(a)?;
    solve_with(a, &s, b)
}

/// Like [`solve`], reusing a precomputed Smith form of `a`.
pub fn solve_with(a: &IntMatrix, s: &SmithForm, b: &[i64]) -> Result<Option<Vec<i64>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::Shape("right-hand side length".into()));
    }
    if a.rows() == 0 {
        return Ok(Some(vec![0; a.cols()]));
    }
    let ub = s.u.mul_vec(b);
    let r = s.rank();
    if ub[r..].iter().any(|&x| x != 0) {
        return Ok(None);
    }
    let mut w = vec![0i64; a.cols()];
    for i in 0..r {
        if ub[i] % s.diag[i] != 0 {
            return Ok(None);
        }
        w[i] = ub[i] / s.diag[i];
    }
    if a.cols() == 0 {
        return Ok(Some(w));
    }
    Ok(Some(s.v.mul_vec(&w)))
}

/// Inverse of a square matrix over the integers.
pub fn unimodular_inverse(a: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    if a.rows() != a.cols() {
        return Err(LinalgError::NotUnimodular);
    }
    if a.rows() == 0 {
        return Ok(IntMatrix::zeros(0, 0));
    }
    let s = smith(a)?;
    if s.rank() != a.rows() || s.diag.iter().any(|&d| d != 1) {
        return Err(LinalgError::NotUnimodular);
    }
    s.v.checked_mul(&s.u)
}

/// A map between free groups is pure when its cokernel is free, i.e. every
/// nonzero invariant factor equals one.
pub fn is_pure(a: &IntMatrix) -> Result<bool, LinalgError> {
    Ok(invariant_factors(a)?.iter().all(|&d| d == 1))
}
