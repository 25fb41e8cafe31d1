//! Skew-symmetric bilinear forms on an algebra and the spaces built from
//! them: coboundaries B², the full cocycle space (every skew form is a
//! cocycle here), the Tortkara-compatible subspace, and the second
//! cohomology H² with canonical coset representatives.
//!
//! Forms live in a fixed coordinate space indexed by the pairs `(i, j)`,
//! `i < j`, in lexicographic order, so all the spaces are ordinary
//! subspace computations.

use std::fmt;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{pair_index, pairs, Matrix, Subspace};
use crate::scalar::{FieldSpec, Scalar};

/// A skew-symmetric bilinear form, stored as the strictly upper
/// triangular coefficients `c_ij = theta(e_i, e_j)` for `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewForm {
    dim: usize,
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl SkewForm {
    pub fn zero(dim: usize, field: FieldSpec) -> SkewForm {
        SkewForm {
            dim,
            field,
            coeffs: vec![field.zero(); dim * (dim - 1) / 2],
        }
    }

    /// The elementary form with `theta(e_i, e_j) = 1` (0-based, `i < j`).
    pub fn basis_form(dim: usize, field: FieldSpec, i: usize, j: usize) -> SkewForm {
        assert!(i < j && j < dim, "basis form needs i < j < dim");
        let mut form = SkewForm::zero(dim, field);
        form.coeffs[pair_index(dim, i, j)] = field.one();
        form
    }

    pub fn from_coeffs(dim: usize, field: FieldSpec, coeffs: Vec<Scalar>) -> Result<SkewForm> {
        if coeffs.len() != dim * (dim - 1) / 2 {
            return Err(Error::DimensionMismatch {
                expected: dim * (dim - 1) / 2,
                got: coeffs.len(),
            });
        }
        for c in &coeffs {
            if c.field() != field {
                return Err(Error::FieldMismatch(
                    field.to_string(),
                    c.field().to_string(),
                ));
            }
        }
        Ok(SkewForm { dim, field, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Coefficients in pair order; the coordinates of the form.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// `theta(e_i, e_j)` for arbitrary indices.
    pub fn coeff(&self, i: usize, j: usize) -> Scalar {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.coeffs[pair_index(self.dim, i, j)].clone(),
            Equal => self.field.zero(),
            Greater => -&self.coeffs[pair_index(self.dim, j, i)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn evaluate(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len().max(y.len()),
            });
        }
        let mut acc = self.field.zero();
        for (i, j) in pairs(self.dim) {
            let c = &self.coeffs[pair_index(self.dim, i, j)];
            if c.is_zero() {
                continue;
            }
            let cross = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            acc = &acc + &(c * &cross);
        }
        Ok(acc)
    }

    /// The full skew-symmetric matrix of the form.
    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim, self.field);
        for (i, j) in pairs(self.dim) {
            let c = self.coeffs[pair_index(self.dim, i, j)].clone();
            m.set(j, i, -&c);
            m.set(i, j, c);
        }
        m
    }

    pub fn add(&self, other: &SkewForm) -> Result<SkewForm> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        SkewForm::from_coeffs(self.dim, self.field, coeffs)
    }

    pub fn scale(&self, s: &Scalar) -> SkewForm {
        SkewForm {
            dim: self.dim,
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }
}

impl fmt::Display for SkewForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, j) in pairs(self.dim) {
            let c = &self.coeffs[pair_index(self.dim, i, j)];
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                terms.push(format!("d{}{}", i + 1, j + 1));
            } else {
                terms.push(format!("{}*d{}{}", c, i + 1, j + 1));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Dimension of the space of all skew forms on an n-dimensional algebra;
/// for anticommutative algebras this is the whole cocycle space.
pub fn cocycle_space_dim(a: &Algebra) -> usize {
    a.dim() * (a.dim() - 1) / 2
}

/// The coboundary of a linear functional: `(delta f)(x, y) = f(xy)`.
/// `f` is given by its values on the basis.
pub fn delta_of_functional(a: &Algebra, f: &[Scalar]) -> Result<SkewForm> {
    if f.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: f.len(),
        });
    }
    let field = a.field();
    let coeffs: Vec<Scalar> = pairs(a.dim())
        .map(|(i, j)| {
            let prod = a.pair_table(i, j);
            let mut acc = field.zero();
            for (k, fk) in f.iter().enumerate() {
                if !fk.is_zero() && !prod[k].is_zero() {
                    acc = &acc + &(fk * &prod[k]);
                }
            }
            acc
        })
        .collect();
    SkewForm::from_coeffs(a.dim(), field, coeffs)
}

/// B² as a subspace of the skew-form coordinate space: the image of
/// `delta` over all functionals. Its dimension equals `dim A²`.
pub fn coboundary_space(a: &Algebra) -> Subspace {
    let n = a.dim();
    let vectors: Vec<Vec<Scalar>> = (0..n)
        .map(|k| {
            let mut f = vec![a.field().zero(); n];
            f[k] = a.field().one();
            delta_of_functional(a, &f).expect("valid functional").coeffs().to_vec()
        })
        .collect();
    Subspace::from_vectors(&vectors, n * (n - 1) / 2, a.field())
}

/// The subspace of skew forms `theta` with
/// `theta((ab),(cb)) = theta(J(a,b,c), b)` for all vectors `a`, `b`, `c`.
///
/// The defect is linear in the form and in `a`, `c`, and quadratic in
/// `b`, so the same polarization as the Tortkara check turns the
/// condition into finitely many linear constraints on the coefficients.
/// Only meaningful over a Tortkara base.
pub fn tortkara_cocycle_space(a: &Algebra) -> Result<Subspace> {
    if !a.is_tortkara() {
        return Err(Error::NotTortkara);
    }
    Ok(tortkara_constraint_kernel(a))
}

fn tortkara_constraint_kernel(a: &Algebra) -> Subspace {
    let n = a.dim();
    let ncoords = n * (n - 1) / 2;
    let field = a.field();

    // One constraint row per (basis a, polarized b, basis c) triple: the
    // coordinates of theta -> theta((ab),(cb)) - theta(J(a,b,c), b).
    let mut rows = Vec::new();
    let mut push_row = |av: &[Scalar], bv: &[Scalar], cv: &[Scalar]| {
        let ab = a.product(av, bv);
        let cb = a.product(cv, bv);
        let j = a.j_operator(av, bv, cv).expect("validated dims");
        let row: Vec<Scalar> = pairs(n)
            .map(|(i, k)| {
                let lhs = &(&ab[i] * &cb[k]) - &(&ab[k] * &cb[i]);
                let rhs = &(&j[i] * &bv[k]) - &(&j[k] * &bv[i]);
                &lhs - &rhs
            })
            .collect();
        if row.iter().any(|s| !s.is_zero()) {
            rows.push(row);
        }
    };

    let unit = |i: usize| -> Vec<Scalar> {
        let mut v = vec![field.zero(); n];
        v[i] = field.one();
        v
    };
    for ai in 0..n {
        for bi in 0..n {
            for ci in ai + 1..n {
                push_row(&unit(ai), &unit(bi), &unit(ci));
            }
        }
    }
    for ai in 0..n {
        for (k, l) in pairs(n) {
            let mut b = unit(k);
            b[l] = field.one();
            for ci in ai + 1..n {
                push_row(&unit(ai), &b, &unit(ci));
            }
        }
    }

    if rows.is_empty() {
        return Subspace::full(ncoords, field);
    }
    Matrix::from_rows(rows, field).kernel()
}

/// H² of an algebra with canonical coset representatives, plus the
/// Tortkara-compatible part when the base is Tortkara.
#[derive(Debug, Clone)]
pub struct CohomologySpace {
    algebra: Algebra,
    b2: Subspace,
    /// Skew coordinates not eliminated by B²'s pivots; representatives
    /// are supported exactly on these.
    free_coords: Vec<usize>,
    h2_basis: Vec<SkewForm>,
    h2t: Option<TortkaraPart>,
}

#[derive(Debug, Clone)]
struct TortkaraPart {
    /// H²_T as a subspace of H² coordinates.
    in_h2: Subspace,
    basis: Vec<SkewForm>,
}

/// Computes B², H² and (over a Tortkara base) H²_T.
pub fn h2(a: &Algebra) -> CohomologySpace {
    let n = a.dim();
    let ncoords = n * (n - 1) / 2;
    let field = a.field();
    let b2 = coboundary_space(a);
    debug_assert_eq!(b2.dim(), a.square().dim());

    let pivots: Vec<usize> = (0..b2.dim())
        .map(|r| {
            b2.basis().row(r).iter().position(|s| !s.is_zero()).expect("nonzero basis row")
        })
        .collect();
    let free_coords: Vec<usize> = (0..ncoords).filter(|c| !pivots.contains(c)).collect();
    let h2_basis: Vec<SkewForm> = free_coords
        .iter()
        .map(|&c| {
            let mut coeffs = vec![field.zero(); ncoords];
            coeffs[c] = field.one();
            SkewForm::from_coeffs(n, field, coeffs).expect("valid coords")
        })
        .collect();

    let mut space = CohomologySpace {
        algebra: a.clone(),
        b2,
        free_coords,
        h2_basis,
        h2t: None,
    };

    if a.is_tortkara() {
        let z2t = tortkara_constraint_kernel(a);
        let reduced: Vec<Vec<Scalar>> = z2t
            .basis_rows()
            .iter()
            .map(|row| space.h2_coords_of_vector(row))
            .collect();
        let in_h2 = Subspace::from_vectors(&reduced, space.h2_dim(), field);
        let basis: Vec<SkewForm> = in_h2.basis_rows().iter().map(|r| space.lift(r)).collect();
        space.h2t = Some(TortkaraPart { in_h2, basis });
    }

    space
}

impl CohomologySpace {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn z2_dim(&self) -> usize {
        cocycle_space_dim(&self.algebra)
    }

    pub fn b2(&self) -> &Subspace {
        &self.b2
    }

    pub fn h2_dim(&self) -> usize {
        self.free_coords.len()
    }

    /// Canonical representatives of a basis of H².
    pub fn h2_basis(&self) -> &[SkewForm] {
        &self.h2_basis
    }

    pub fn h2t_dim(&self) -> Option<usize> {
        self.h2t.as_ref().map(|t| t.in_h2.dim())
    }

    /// Canonical representatives of a basis of H²_T, when defined.
    pub fn h2t_basis(&self) -> Option<&[SkewForm]> {
        self.h2t.as_ref().map(|t| t.basis.as_slice())
    }

    /// H²_T inside the H² coordinate space, when defined.
    pub fn h2t_in_h2(&self) -> Option<&Subspace> {
        self.h2t.as_ref().map(|t| &t.in_h2)
    }

    /// The canonical representative of the class of `theta`: the B² pivot
    /// coordinates are eliminated, so `class_reduce(theta + delta f) =
    /// class_reduce(theta)` for every functional `f`.
    pub fn class_reduce(&self, theta: &SkewForm) -> SkewForm {
        let reduced = self.b2.reduce(theta.coeffs());
        SkewForm::from_coeffs(theta.dim(), theta.field(), reduced).expect("valid coords")
    }

    /// Coordinates of the class of `theta` in the H² basis.
    pub fn h2_coords(&self, theta: &SkewForm) -> Vec<Scalar> {
        self.h2_coords_of_vector(theta.coeffs())
    }

    fn h2_coords_of_vector(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let reduced = self.b2.reduce(coeffs);
        self.free_coords.iter().map(|&c| reduced[c].clone()).collect()
    }

    /// The canonical representative with the given H² coordinates.
    pub fn lift(&self, coords: &[Scalar]) -> SkewForm {
        assert_eq!(coords.len(), self.h2_dim(), "H^2 coordinate length");
        let field = self.field();
        let mut coeffs = vec![field.zero(); self.z2_dim()];
        for (k, &c) in self.free_coords.iter().enumerate() {
            coeffs[c] = coords[k].clone();
        }
        SkewForm::from_coeffs(self.algebra.dim(), field, coeffs).expect("valid coords")
    }

    /// Lifts the basis rows of a subspace of H² coordinates to canonical
    /// representative forms.
    pub fn lift_subspace(&self, w: &Subspace) -> Vec<SkewForm> {
        w.basis_rows().iter().map(|r| self.lift(r)).collect()
    }
}
