//! Central extensions `A_theta = A ⊕ V` with product
//! `(x + x')(y + y') = xy + theta(x, y)`, together with cocycle radicals,
//! the annihilator formula, the annihilator-component criterion and the
//! `T_s` membership test that drives the orbit classification.

use crate::algebra::Algebra;
use crate::cohomology::{CohomologySpace, SkewForm};
use crate::error::{Error, Result};
use crate::linalg::{pairs, Subspace};
use crate::scalar::Scalar;

/// A base algebra together with the cocycles defining an extension.
#[derive(Debug, Clone)]
pub struct ExtensionSpec {
    pub base: Algebra,
    pub cocycles: Vec<SkewForm>,
}

impl ExtensionSpec {
    pub fn new(base: Algebra, cocycles: Vec<SkewForm>) -> Result<ExtensionSpec> {
        if cocycles.is_empty() {
            return Err(Error::InvalidArgument("an extension needs at least one cocycle".into()));
        }
        for theta in &cocycles {
            if theta.dim() != base.dim() {
                return Err(Error::DimensionMismatch {
                    expected: base.dim(),
                    got: theta.dim(),
                });
            }
            if theta.field() != base.field() {
                return Err(Error::FieldMismatch(
                    base.field().to_string(),
                    theta.field().to_string(),
                ));
            }
        }
        Ok(ExtensionSpec { base, cocycles })
    }

    pub fn extension_dim(&self) -> usize {
        self.base.dim() + self.cocycles.len()
    }
}

/// The radical of a cocycle: `{ x : theta(x, A) = 0 }`, the kernel of its
/// skew matrix.
pub fn radical(a: &Algebra, theta: &SkewForm) -> Result<Subspace> {
    if theta.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: theta.dim(),
        });
    }
    Ok(theta.to_matrix().kernel())
}

/// Intersection of the radicals of a list of cocycles.
pub fn joint_radical(a: &Algebra, thetas: &[SkewForm]) -> Result<Subspace> {
    let mut acc = Subspace::full(a.dim(), a.field());
    for theta in thetas {
        acc = acc.intersect(&radical(a, theta)?)?;
    }
    Ok(acc)
}

/// Builds the central extension. The new basis vectors come last, one per
/// cocycle, and annihilate everything; products of old basis vectors gain
/// `theta_t(e_i, e_j)` components on them.
///
/// The annihilator identity `Ann(A_theta) = (theta-radical ∩ Ann A) ⊕ V`
/// is re-verified on every construction.
pub fn central_extension(spec: &ExtensionSpec) -> Result<Algebra> {
    let m = spec.base.dim();
    let s = spec.cocycles.len();
    let dim = m + s;
    let field = spec.base.field();

    let mut out = Algebra::trivial(dim, field)?;
    for (i, j) in pairs(m) {
        let mut coeffs = spec.base.pair_table(i, j).to_vec();
        coeffs.resize(dim, field.zero());
        for (t, theta) in spec.cocycles.iter().enumerate() {
            coeffs[m + t] = theta.coeff(i, j);
        }
        out.set_product(i, j, coeffs)?;
    }

    let expected = expected_annihilator(spec)?;
    assert_eq!(
        out.annihilator(),
        expected,
        "central extension violated the annihilator identity"
    );
    Ok(out)
}

/// `(joint radical ∩ Ann(base)) ⊕ V` inside the extension's space.
pub fn expected_annihilator(spec: &ExtensionSpec) -> Result<Subspace> {
    let m = spec.base.dim();
    let s = spec.cocycles.len();
    let dim = m + s;
    let field = spec.base.field();
    let core = joint_radical(&spec.base, &spec.cocycles)?
        .intersect(&spec.base.annihilator())?;
    let mut vectors: Vec<Vec<Scalar>> = core
        .basis_rows()
        .into_iter()
        .map(|mut row| {
            row.resize(dim, field.zero());
            row
        })
        .collect();
    for t in 0..s {
        let mut v = vec![field.zero(); dim];
        v[m + t] = field.one();
        vectors.push(v);
    }
    Ok(Subspace::from_vectors(&vectors, dim, field))
}

/// An extension has an annihilator component exactly when the classes of
/// its cocycles are linearly dependent in H².
pub fn has_annihilator_component(space: &CohomologySpace, classes: &[SkewForm]) -> bool {
    let coords: Vec<Vec<Scalar>> = classes.iter().map(|c| space.h2_coords(c)).collect();
    let span = Subspace::from_vectors(&coords, space.h2_dim(), space.field());
    span.dim() < classes.len()
}

/// Membership of a Grassmannian point in `T_s`: the joint radical of the
/// lifted basis classes meets the annihilator of the base trivially.
/// Well-defined on classes; the test evaluates canonical representatives.
pub fn in_t_s(space: &CohomologySpace, w: &Subspace) -> Result<bool> {
    if w.ambient_dim() != space.h2_dim() {
        return Err(Error::AmbientMismatch(w.ambient_dim(), space.h2_dim()));
    }
    let thetas = space.lift_subspace(w);
    let rad = joint_radical(space.algebra(), &thetas)?;
    Ok(rad.intersect(&space.algebra().annihilator())?.is_zero())
}
