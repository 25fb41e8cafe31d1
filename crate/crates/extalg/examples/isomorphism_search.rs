//! Exhaustive isomorphism search over a finite field by generator-image
//! enumeration: a scrambled algebra is recognized, a genuinely different
//! one is refuted.
//!
//! Run with: cargo run -p extalg --example isomorphism_search

use extalg::algebra::{is_isomorphism, Algebra};
use extalg::classify::catalog;
use extalg::linalg::Matrix;
use extalg::scalar::FieldSpec;

fn main() {
    let gf5 = FieldSpec::prime_field(5).unwrap();
    let entries = catalog(6, gf5).unwrap();
    let find = |name: &str| {
        entries
            .iter()
            .find(|e| e.name == name)
            .expect("catalog entry")
            .algebra
            .clone()
    };
    let a62 = find("A_{6,2}");
    let a63 = find("A_{6,3}");

    // Scramble A_{6,2} by an invertible change of basis (unit
    // triangular, so visibly invertible over any field).
    let rows: Vec<Vec<i64>> = vec![
        vec![1, 2, 0, 4, 1, 0],
        vec![0, 1, 0, 3, 0, 2],
        vec![0, 0, 1, 0, 3, 2],
        vec![0, 0, 0, 1, 0, 4],
        vec![0, 0, 0, 0, 1, 1],
        vec![0, 0, 0, 0, 0, 1],
    ];
    let p = Matrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(|v| gf5.integer(v)).collect())
            .collect(),
        gf5,
    );
    let scrambled = a62.change_basis(&p).unwrap();
    println!(
        "signatures of the original and the scrambled copy agree: {}",
        a62.invariant_signature() == scrambled.invariant_signature()
    );

    match a62.find_isomorphism(&scrambled).unwrap() {
        Some(phi) => {
            println!("recovered an isomorphism onto the scrambled copy:");
            print!("{phi}");
            assert!(is_isomorphism(&a62, &scrambled, &phi));
        }
        None => unreachable!("a change of basis is always recognized"),
    }

    println!(
        "search refutes A_{{6,2}} ~ A_{{6,3}} over GF(5): {}",
        a62.find_isomorphism(&a63).unwrap().is_none()
    );

    let bad = Algebra::trivial(6, FieldSpec::Rationals).unwrap();
    println!(
        "search over the rationals is rejected: {:?}",
        bad.find_isomorphism(&bad).unwrap_err()
    );
}
