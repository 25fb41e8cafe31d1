//! Exact dense linear algebra and subspace combinatorics: reduced row
//! echelon forms, kernels, canonical subspaces and streaming enumeration
//! of the Grassmannian of GF(p)^d.
//!
//! Subspaces are kept in reduced row echelon form, which makes equality,
//! containment and deterministic orderings trivial.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// Index of the pair `(i, j)`, `i < j`, in the lexicographic listing of
/// all pairs on `0..n`. Shared by algebra product tables and skew forms.
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)` with `i < j < n`, in lexicographic order.
pub(crate) fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// A dense matrix over one exact field, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: FieldSpec) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Matrix {
        let mut m = Matrix::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows. All rows must have equal length and all
    /// entries must share one field.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, field: FieldSpec) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in &rows {
            assert_eq!(row.len(), cols, "ragged rows");
            for s in row {
                assert_eq!(s.field(), field, "mixed fields in matrix");
            }
            data.extend(row.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            field,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "mixed fields in matrix");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn mat_mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols, self.field);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + &(a * other.get(k, c));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mat_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for c in 0..self.cols {
                    if !v[c].is_zero() {
                        acc = &acc + &(self.get(r, c) * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// The unique reduced row echelon form.
    pub fn rref(&self) -> Matrix {
        let mut m = self.clone();
        m.rref_in_place();
        m
    }

    fn rref_in_place(&mut self) {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(src) = (pivot_row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(pivot_row, src);
            let inv = self.get(pivot_row, col).inverse().expect("nonzero pivot");
            if !inv.is_one() {
                for c in col..self.cols {
                    let v = self.get(pivot_row, c) * &inv;
                    self.set(pivot_row, c, v);
                }
            }
            for r in 0..self.rows {
                if r == pivot_row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c) - &(&factor * self.get(pivot_row, c));
                    self.set(r, c, v);
                }
            }
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().nonzero_rows()
    }

    fn nonzero_rows(&self) -> usize {
        (0..self.rows)
            .filter(|&r| self.row(r).iter().any(|s| !s.is_zero()))
            .count()
    }

    /// Pivot columns of a matrix already in RREF.
    fn pivot_cols(&self) -> Vec<usize> {
        let mut pivots = Vec::new();
        for r in 0..self.rows {
            if let Some(c) = self.row(r).iter().position(|s| !s.is_zero()) {
                pivots.push(c);
            }
        }
        pivots
    }

    /// The right null space as a canonical subspace.
    pub fn kernel(&self) -> Subspace {
        let rref = self.rref();
        let pivots = rref.pivot_cols();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref.get(row, f);
            }
            basis.push(v);
        }
        Subspace::from_spanning(Matrix::from_rows(basis, self.field), self.cols)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, self.field);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        aug.rref_in_place();
        for i in 0..n {
            if !aug.get(i, i).is_one() {
                return None;
            }
        }
        let mut inv = Matrix::zeros(n, n, self.field);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A linear subspace of F^d, stored as a full-row-rank basis in reduced
/// row echelon form. Two values are equal as sets iff their stored bases
/// are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    /// Canonicalizes a spanning set: row reduce and drop zero rows.
    pub fn from_spanning(spanning: Matrix, ambient: usize) -> Subspace {
        assert!(spanning.rows == 0 || spanning.cols == ambient);
        let field = spanning.field();
        let rref = if spanning.rows == 0 {
            Matrix::zeros(0, ambient, field)
        } else {
            spanning.rref()
        };
        let rows: Vec<Vec<Scalar>> = (0..rref.rows)
            .filter(|&r| rref.row(r).iter().any(|s| !s.is_zero()))
            .map(|r| rref.row(r).to_vec())
            .collect();
        let basis = if rows.is_empty() {
            Matrix::zeros(0, ambient, field)
        } else {
            Matrix::from_rows(rows, field)
        };
        Subspace { ambient, basis }
    }

    pub fn from_vectors(vectors: &[Vec<Scalar>], ambient: usize, field: FieldSpec) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(ambient, field);
        }
        Subspace::from_spanning(Matrix::from_rows(vectors.to_vec(), field), ambient)
    }

    pub fn zero(ambient: usize, field: FieldSpec) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient, field),
        }
    }

    pub fn full(ambient: usize, field: FieldSpec) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient, field),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    /// The canonical RREF basis, one row per dimension.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Reduces `v` modulo this subspace's basis; the residue is zero
    /// exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut v = v.to_vec();
        for r in 0..self.basis.rows {
            let pivot = self
                .basis
                .row(r)
                .iter()
                .position(|s| !s.is_zero())
                .expect("basis rows are nonzero");
            if v[pivot].is_zero() {
                continue;
            }
            let factor = v[pivot].clone();
            for c in pivot..self.ambient {
                v[c] = &v[c] - &(&factor * self.basis.get(r, c));
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|s| s.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(
                self.field().to_string(),
                other.field().to_string(),
            ));
        }
        Ok(())
    }

    pub fn span_equal(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self == other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Ok(Subspace::from_vectors(&rows, self.ambient, self.field()))
    }

    /// Intersection via the kernel of `[B1^t | -B2^t]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let (k1, k2) = (self.dim(), other.dim());
        if k1 == 0 || k2 == 0 {
            return Ok(Subspace::zero(self.ambient, self.field()));
        }
        let mut stacked = Matrix::zeros(self.ambient, k1 + k2, self.field());
        for c in 0..k1 {
            for r in 0..self.ambient {
                stacked.set(r, c, self.basis.get(c, r).clone());
            }
        }
        for c in 0..k2 {
            for r in 0..self.ambient {
                stacked.set(r, k1 + c, -other.basis.get(c, r));
            }
        }
        let combos = stacked.kernel();
        let vectors: Vec<Vec<Scalar>> = combos
            .basis_rows()
            .into_iter()
            .map(|combo| {
                let mut v = vec![self.field().zero(); self.ambient];
                for (i, coef) in combo[..k1].iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    for c in 0..self.ambient {
                        v[c] = &v[c] + &(coef * self.basis.get(i, c));
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::from_vectors(&vectors, self.ambient, self.field()))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rows: Vec<String> = (0..self.dim())
            .map(|r| {
                let entries: Vec<String> =
                    self.basis.row(r).iter().map(|s| s.to_string()).collect();
                format!("({})", entries.join(", "))
            })
            .collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

/// Number of s-dimensional subspaces of GF(p)^d.
pub fn gaussian_binomial(d: usize, s: usize, p: u64) -> u128 {
    if s > d {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    let p = p as u128;
    for i in 0..s {
        num *= p.pow((d - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Streams every s-dimensional subspace of GF(p)^d exactly once, in
/// increasing lexicographic order of the RREF basis matrices (entries
/// compared row-major, residues ordered 0 < 1 < ... < p-1).
pub fn enumerate_subspaces(ambient_dim: usize, s: usize, p: u64) -> Result<SubspaceIter> {
    let field = FieldSpec::prime_field(p)?;
    if s > ambient_dim {
        return Err(Error::InvalidArgument(format!(
            "subspace dimension {s} exceeds ambient dimension {ambient_dim}"
        )));
    }
    let mut heap = BinaryHeap::new();
    let mut streams = Vec::new();
    for pivots in combinations(ambient_dim, s) {
        let stream = PatternStream::new(ambient_dim, s, p, pivots);
        heap.push(Reverse((stream.current_matrix(), streams.len())));
        streams.push(stream);
    }
    Ok(SubspaceIter {
        ambient: ambient_dim,
        s,
        field,
        streams,
        heap,
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Odometer over the free entries of one RREF pivot pattern, emitting
/// matrices in lexicographic order.
struct PatternStream {
    ambient: usize,
    s: usize,
    p: u64,
    pivots: Vec<usize>,
    /// (row, col) of free entries in row-major order.
    free: Vec<(usize, usize)>,
    values: Vec<u64>,
    exhausted: bool,
}

impl PatternStream {
    fn new(ambient: usize, s: usize, p: u64, pivots: Vec<usize>) -> PatternStream {
        let mut free = Vec::new();
        for (row, &pc) in pivots.iter().enumerate() {
            for col in pc + 1..ambient {
                if !pivots.contains(&col) {
                    free.push((row, col));
                }
            }
        }
        let values = vec![0; free.len()];
        PatternStream {
            ambient,
            s,
            p,
            pivots,
            free,
            values,
            exhausted: false,
        }
    }

    fn current_matrix(&self) -> Vec<u64> {
        let mut m = vec![0u64; self.s * self.ambient];
        for (row, &pc) in self.pivots.iter().enumerate() {
            m[row * self.ambient + pc] = 1;
        }
        for (k, &(row, col)) in self.free.iter().enumerate() {
            m[row * self.ambient + col] = self.values[k];
        }
        m
    }

    /// Advances the odometer; the last free position is least significant,
    /// so successive matrices are lexicographically increasing.
    fn advance(&mut self) {
        for k in (0..self.values.len()).rev() {
            self.values[k] += 1;
            if self.values[k] < self.p {
                return;
            }
            self.values[k] = 0;
        }
        self.exhausted = true;
    }
}

pub struct SubspaceIter {
    ambient: usize,
    s: usize,
    field: FieldSpec,
    streams: Vec<PatternStream>,
    heap: BinaryHeap<Reverse<(Vec<u64>, usize)>>,
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let Reverse((digits, idx)) = self.heap.pop()?;
        let stream = &mut self.streams[idx];
        stream.advance();
        if !stream.exhausted {
            self.heap.push(Reverse((stream.current_matrix(), idx)));
        }
        let rows: Vec<Vec<Scalar>> = (0..self.s)
            .map(|r| {
                (0..self.ambient)
                    .map(|c| self.field.integer(digits[r * self.ambient + c] as i64))
                    .collect()
            })
            .collect();
        // Already in RREF by construction.
        Some(Subspace {
            ambient: self.ambient,
            basis: Matrix::from_rows(rows, self.field),
        })
    }
}
