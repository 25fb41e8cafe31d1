//! Building central extensions: the 5-dimensional catalog entry as an
//! extension of the 4-dimensional base, the annihilator identity, and
//! the invariance of the extension under coboundary shifts.
//!
//! Run with: cargo run -p extalg --example central_extension

use extalg::algebra::{is_isomorphism, Algebra};
use extalg::classify::extension_base;
use extalg::cohomology::{delta_of_functional, SkewForm};
use extalg::extension::{central_extension, expected_annihilator, ExtensionSpec};
use extalg::format::render_algebra;
use extalg::linalg::Matrix;
use extalg::scalar::FieldSpec;

fn main() {
    let q = FieldSpec::Rationals;
    let base = extension_base(q);
    println!("base:\n{}", render_algebra(&base));

    // Extend by the elementary skew form on the pair (3, 4).
    let theta = SkewForm::basis_form(4, q, 2, 3);
    let spec = ExtensionSpec::new(base.clone(), vec![theta.clone()]).unwrap();
    let ext = central_extension(&spec).unwrap();
    println!("extension by [{theta}]:\n{}", render_algebra(&ext));

    println!(
        "nilpotent: {:?}, tortkara: {}, dim Ann = {}",
        ext.nilpotency_index(),
        ext.is_tortkara(),
        ext.annihilator().dim()
    );
    let expected = expected_annihilator(&spec).unwrap();
    println!(
        "annihilator identity (radical ∩ Ann(base)) ⊕ V holds: {}",
        ext.annihilator() == expected
    );

    // Shifting the cocycle by a coboundary gives an isomorphic algebra,
    // with an explicit isomorphism fixing V and correcting by f.
    let f = vec![q.integer(2), q.integer(-1), q.integer(3), q.zero()];
    let shifted = theta.add(&delta_of_functional(&base, &f).unwrap()).unwrap();
    let ext_shifted =
        central_extension(&ExtensionSpec::new(base.clone(), vec![shifted]).unwrap()).unwrap();

    let dim = ext.dim();
    let mut phi = Matrix::identity(dim, q);
    for (j, fj) in f.iter().enumerate() {
        phi.set(dim - 1, j, fj.clone());
    }
    println!(
        "coboundary shift gives an isomorphic algebra: {}",
        is_isomorphism(&ext, &ext_shifted, &phi)
    );

    // A different product table of the same dimension is already ruled
    // out by invariants.
    let other = Algebra::from_unit_products(5, q, &[(1, 2, 3), (1, 3, 4)])
        .unwrap();
    println!(
        "signatures separate it from a split algebra: {}",
        ext.invariant_signature() != other.invariant_signature()
    );
}
