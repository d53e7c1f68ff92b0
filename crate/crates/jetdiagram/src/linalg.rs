//! Exact linear algebra over the rationals: row echelon forms, canonical
//! subspaces, exterior-power operators, and kernel transfer between the
//! blocks of a partitioned matrix.
//!
//! Subspaces are stored as reduced row echelon bases, so equality of the
//! representation is equality of the subspace; everything downstream
//! (stabilization detection, diagram extraction) leans on that.

use itertools::Itertools;
use num_traits::Zero;

use crate::scalar::{q_one, Q};
use crate::{Error, Result};

/// A dense matrix over `Q`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, q_one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { left: cols, right: r.len() });
            }
        }
        let n = rows.len();
        Ok(RationalMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Q) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.cols });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(RationalMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { left: self.rows, right: other.rows });
        }
        let mut out = RationalMatrix::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let mut out = RationalMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c) + a * b;
                        out.set(r, c, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Q]) -> Result<Vec<Q>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { left: self.cols, right: x.len() });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(src) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, src);
            let inv = q_one() / self.get(row, col).clone();
            self.scale_row(row, &inv);
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    self.sub_scaled_row(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Q) {
        for c in 0..self.cols {
            let v = self.get(r, c) * factor;
            self.set(r, c, v);
        }
    }

    /// row_r -= factor * row_src
    fn sub_scaled_row(&mut self, r: usize, src: usize, factor: &Q) {
        for c in 0..self.cols {
            let v = self.get(r, c) - factor * self.get(src, c);
            self.set(r, c, v);
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The right null space `{x : Mx = 0}` in canonical form.
    pub fn kernel(&self) -> Subspace {
        let (ech, pivots) = self.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set[*c]) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = q_one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -ech.get(row, free).clone();
            }
            basis.push(v);
        }
        Subspace::from_spanning(self.cols, basis).expect("kernel rows have ambient length")
    }

    /// The left null space `{w : wM = 0}` in canonical form.
    pub fn left_kernel(&self) -> Subspace {
        self.transpose().kernel()
    }

    /// The row space as a canonical subspace of `Q^cols`.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_spanning(self.cols, (0..self.rows).map(|r| self.row(r).to_vec()).collect())
            .expect("rows have ambient length")
    }

    /// Does `w` lie in the column space?
    pub fn column_space_contains(&self, w: &[Q]) -> Result<bool> {
        if w.len() != self.rows {
            return Err(Error::DimensionMismatch { left: self.rows, right: w.len() });
        }
        let rhs = RationalMatrix::from_rows(w.iter().map(|v| vec![v.clone()]).collect())?;
        let augmented = self.hstack(&rhs)?;
        let (_, pivots) = augmented.rref();
        Ok(!pivots.contains(&self.cols))
    }

    /// Exact determinant of a square matrix by Gaussian elimination.
    pub fn determinant(&self) -> Result<Q> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { left: self.rows, right: self.cols });
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = q_one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(Q::zero());
            };
            if src != col {
                m.swap_rows(col, src);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                if !m.get(r, col).is_zero() {
                    let factor = m.get(r, col) / &pivot;
                    m.sub_scaled_row(r, col, &factor);
                }
            }
        }
        Ok(det)
    }

    /// The submatrix picked out by `rows` and `cols` (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RationalMatrix {
        let mut out = RationalMatrix::zero(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// The columns picked out by `cols`, all rows.
    pub fn select_columns(&self, cols: &[usize]) -> RationalMatrix {
        self.submatrix(&(0..self.rows).collect::<Vec<_>>(), cols)
    }
}

/// A linear subspace of `Q^ambient` in canonical (reduced row echelon)
/// form. Two values compare equal exactly when the subspaces are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: RationalMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// The canonical form of the span of `vectors`.
    pub fn from_spanning(ambient: usize, vectors: Vec<Vec<Q>>) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { left: ambient, right: v.len() });
            }
        }
        let m = RationalMatrix::from_rows(vectors)?;
        let (ech, pivots) = if m.rows == 0 {
            (RationalMatrix::zero(0, ambient), Vec::new())
        } else {
            m.rref()
        };
        let rank = pivots.len();
        let basis = ech.submatrix(&(0..rank).collect::<Vec<_>>(), &(0..ambient).collect::<Vec<_>>());
        Ok(Subspace { ambient, basis, pivots })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: RationalMatrix::zero(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RationalMatrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical basis, one vector per row, pivots strictly increasing.
    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    /// Pivot columns of the canonical basis; under a monomial-ordered
    /// coordinate labelling these are the initial exponents of the subspace.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains_vector(&self, v: &[Q]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { left: self.ambient, right: v.len() });
        }
        // reduce v against the echelon basis and see if anything survives
        let mut rem = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if !rem[p].is_zero() {
                let factor = rem[p].clone();
                for (c, entry) in rem.iter_mut().enumerate() {
                    let delta = &factor * self.basis.get(row, c);
                    *entry = &*entry - &delta;
                }
            }
        }
        Ok(rem.iter().all(Zero::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { left: self.ambient, right: other.ambient });
        }
        for r in 0..self.basis.rows() {
            if !other.contains_vector(self.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The span of the union.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { left: self.ambient, right: other.ambient });
        }
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for r in 0..self.basis.rows() {
            rows.push(self.basis.row(r).to_vec());
        }
        for r in 0..other.basis.rows() {
            rows.push(other.basis.row(r).to_vec());
        }
        Subspace::from_spanning(self.ambient, rows)
    }

    /// The image under the projection onto the first `p` coordinates.
    pub fn project_prefix(&self, p: usize) -> Result<Subspace> {
        if p > self.ambient {
            return Err(Error::DimensionMismatch { left: self.ambient, right: p });
        }
        let rows = (0..self.basis.rows()).map(|r| self.basis.row(r)[..p].to_vec()).collect();
        Subspace::from_spanning(p, rows)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(k).collect()
}

/// Rough operation count for materializing `ad^r` of an `rows x cols`
/// matrix: one minor per (row-subset, column-subset) pair.
pub fn ad_minor_count(rows: usize, cols: usize, r: usize) -> u128 {
    fn choose(n: usize, k: usize) -> u128 {
        if k > n {
            return 0;
        }
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
        }
        acc
    }
    choose(rows, r + 1).saturating_mul(choose(cols, r))
}

/// The multilinear map `ad^r B (omega)` as a matrix: rows are the
/// `(r+1)`-element subsets of the target coordinates, columns the
/// `r`-element subsets of the source basis, and the entry at `(R, C)` is
/// the `(r+1) x (r+1)` minor `det [omega | B e_C]` on the rows `R`.
/// `omega` lies in the target space of `B`, i.e. has length `B.rows()`.
pub fn ad_apply(b: &RationalMatrix, r: usize, omega: &[Q]) -> Result<RationalMatrix> {
    if omega.len() != b.rows() {
        return Err(Error::DimensionMismatch { left: b.rows(), right: omega.len() });
    }
    let row_subsets = combinations(b.rows(), r + 1);
    let col_subsets = combinations(b.cols(), r);
    let mut out = RationalMatrix::zero(row_subsets.len(), col_subsets.len());
    for (i, rs) in row_subsets.iter().enumerate() {
        for (j, cs) in col_subsets.iter().enumerate() {
            let mut m = RationalMatrix::zero(r + 1, r + 1);
            for (mi, &row) in rs.iter().enumerate() {
                m.set(mi, 0, omega[row].clone());
                for (mj, &col) in cs.iter().enumerate() {
                    m.set(mi, mj + 1, b.get(row, col).clone());
                }
            }
            out.set(i, j, m.determinant()?);
        }
    }
    Ok(out)
}

/// The matrix of the linear map `omega -> ad^r B (omega)`, with the
/// flattened `(row-subset, column-subset)` pairs as rows and the target
/// coordinates of `B` as columns. `ad_apply(b, r, omega)` flattens to
/// `ad_operator(b, r) * omega`.
pub fn ad_operator(b: &RationalMatrix, r: usize) -> RationalMatrix {
    let row_subsets = combinations(b.rows(), r + 1);
    let col_subsets = combinations(b.cols(), r);
    let mut out = RationalMatrix::zero(row_subsets.len() * col_subsets.len(), b.rows());
    for (i, rs) in row_subsets.iter().enumerate() {
        for (j, cs) in col_subsets.iter().enumerate() {
            let flat = i * col_subsets.len() + j;
            // cofactor expansion of det [omega | B e_C] along the first column
            for (pos, &w) in rs.iter().enumerate() {
                let minor_rows: Vec<usize> =
                    rs.iter().copied().filter(|&x| x != w).collect();
                let minor = b.submatrix(&minor_rows, cs).determinant().expect("square minor");
                let signed = if pos % 2 == 0 { minor } else { -minor };
                out.set(flat, w, signed);
            }
        }
    }
    out
}

/// `Im B` computed as `Ker (ad^rank B) B`; exercised against the direct
/// column-space characterization in the tests.
pub fn image_via_ad(b: &RationalMatrix) -> Subspace {
    ad_operator(b, b.rank()).kernel()
}

/// Work cap above which [`ker_theta`] skips the exterior-power cross-check.
pub const DEFAULT_AD_BUDGET: u128 = 200_000;

/// The kernel transfer `{x : S x ∈ Im T}` for matrices with a common
/// target space.
///
/// Computed as the projection of `Ker [S | T]` onto the `S`-block
/// coordinates; within `budget` (estimated minor count) the result is
/// cross-checked against `Ker((ad^rank T) T ∘ S)`, and disagreement — which
/// would be an implementation bug, not a data problem — is reported as
/// [`Error::Internal`].
pub fn ker_theta_with_budget(
    s: &RationalMatrix,
    t: &RationalMatrix,
    budget: u128,
) -> Result<Subspace> {
    if s.rows() != t.rows() {
        return Err(Error::DimensionMismatch { left: s.rows(), right: t.rows() });
    }
    let paired = s.hstack(t)?;
    let by_projection = paired.kernel().project_prefix(s.cols())?;
    let r = t.rank();
    if ad_minor_count(t.rows(), t.cols(), r) <= budget {
        let theta = ad_operator(t, r).matmul(s)?;
        let by_minors = theta.kernel();
        if by_minors != by_projection {
            return Err(Error::Internal(format!(
                "kernel transfer disagreement: projection gives dim {}, minors give dim {}",
                by_projection.dim(),
                by_minors.dim()
            )));
        }
    }
    Ok(by_projection)
}

/// [`ker_theta_with_budget`] at the default budget.
pub fn ker_theta(s: &RationalMatrix, t: &RationalMatrix) -> Result<Subspace> {
    ker_theta_with_budget(s, t, DEFAULT_AD_BUDGET)
}

/// Greedily selects indices of `matrices` (all sharing a column count `p`)
/// whose stacked rows span the same row space — hence have the same stacked
/// kernel — as the whole list. Each selection strictly grows the row space,
/// so at most `p` indices are returned.
pub fn finite_subsystem(matrices: &[RationalMatrix]) -> Result<Vec<usize>> {
    let Some(first) = matrices.first() else {
        return Ok(Vec::new());
    };
    let p = first.cols();
    let mut running = Subspace::zero(p);
    let mut selected = Vec::new();
    for (i, m) in matrices.iter().enumerate() {
        if m.cols() != p {
            return Err(Error::DimensionMismatch { left: p, right: m.cols() });
        }
        let candidate = running.sum(&m.row_space())?;
        if candidate.dim() > running.dim() {
            running = candidate;
            selected.push(i);
        }
    }
    Ok(selected)
}
