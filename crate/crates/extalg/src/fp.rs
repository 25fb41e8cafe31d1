//! Compact GF(p) kernels for the hot enumeration paths (automorphism
//! search, isomorphism search, orbit expansion). Vectors and matrices are
//! plain `u64` buffers with all residues kept in `[0, p)`.

use crate::algebra::Algebra;
use crate::linalg::Matrix;
use crate::scalar::{mod_inverse, FieldSpec, Scalar};

#[derive(Clone, Copy)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn inv(&self, a: u64) -> u64 {
        mod_inverse(a, self.p)
    }
}

/// Row-major matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct FpMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FpMat {
    pub fn zeros(rows: usize, cols: usize) -> FpMat {
        FpMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn from_columns(cols: &[Vec<u64>]) -> FpMat {
        let rows = cols.first().map_or(0, |c| c.len());
        let mut m = FpMat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn mat_mul(&self, other: &FpMat, fp: Fp) -> FpMat {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = FpMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = fp.add(out.get(r, c), fp.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// In-place Gauss-Jordan; returns the pivot columns.
    pub fn rref_in_place(&mut self, fp: Fp) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(src) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if src != row {
                for c in 0..self.cols {
                    self.data.swap(row * self.cols + c, src * self.cols + c);
                }
            }
            let inv = fp.inv(self.get(row, col));
            if inv != 1 {
                for c in col..self.cols {
                    let v = fp.mul(self.get(row, c), inv);
                    self.set(row, c, v);
                }
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col) == 0 {
                    continue;
                }
                let factor = self.get(r, col);
                for c in col..self.cols {
                    let v = fp.sub(self.get(r, c), fp.mul(factor, self.get(row, c)));
                    self.set(r, c, v);
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

    pub fn rank(&self, fp: Fp) -> usize {
        let mut m = self.clone();
        m.rref_in_place(fp).len()
    }

    pub fn is_invertible(&self, fp: Fp) -> bool {
        self.rows == self.cols && self.rank(fp) == self.rows
    }

    pub fn inverse(&self, fp: Fp) -> Option<FpMat> {
        debug_assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = FpMat::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        aug.rref_in_place(fp);
        for i in 0..n {
            if aug.get(i, i) != 1 {
                return None;
            }
        }
        let mut inv = FpMat::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        Some(inv)
    }

    pub fn to_matrix(&self, field: FieldSpec) -> Matrix {
        let rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| field.integer(self.get(r, c) as i64))
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows, field)
    }
}

/// Sparse multiplication table over GF(p): only nonzero basis products.
pub(crate) struct FpAlgebra {
    pub dim: usize,
    pub fp: Fp,
    /// (i, j, nonzero coefficients of e_i e_j) with i < j.
    pub products: Vec<(usize, usize, Vec<(usize, u64)>)>,
}

impl FpAlgebra {
    pub fn from_algebra(a: &Algebra) -> FpAlgebra {
        let FieldSpec::PrimeField(p) = a.field() else {
            panic!("algebra is not over a finite field");
        };
        let dim = a.dim();
        let mut products = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let coeffs = a.pair_table(i, j);
                let sparse: Vec<(usize, u64)> = coeffs
                    .iter()
                    .enumerate()
                    .filter_map(|(k, s)| match s {
                        Scalar::Residue { value, .. } if *value != 0 => Some((k, *value)),
                        _ => None,
                    })
                    .collect();
                if !sparse.is_empty() {
                    products.push((i, j, sparse));
                }
            }
        }
        FpAlgebra {
            dim,
            fp: Fp { p },
            products,
        }
    }

    pub fn multiply(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let fp = self.fp;
        let mut out = vec![0u64; self.dim];
        for &(i, j, ref coeffs) in &self.products {
            // x_i y_j - x_j y_i
            let cross = fp.sub(fp.mul(x[i], y[j]), fp.mul(x[j], y[i]));
            if cross == 0 {
                continue;
            }
            for &(k, c) in coeffs {
                out[k] = fp.add(out[k], fp.mul(cross, c));
            }
        }
        out
    }
}
