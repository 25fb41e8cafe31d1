//! Automorphism groups of the extension base over small prime fields:
//! the group order matches (p-1)^2 p^5 and every element has the
//! lower-triangular parametric shape with (3,3) = xz, (4,4) = x^2 z and
//! (4,3) = xv.
//!
//! Run with: cargo run -p extalg --example automorphism_group

use extalg::classify::extension_base;
use extalg::scalar::{FieldSpec, Scalar};
use extalg::symmetry::automorphisms;

fn main() {
    for p in [3u64, 5] {
        let field = FieldSpec::prime_field(p).unwrap();
        let base = extension_base(field);
        let auts = automorphisms(&base).unwrap();
        let expected = (p - 1) * (p - 1) * p.pow(5);
        println!(
            "GF({p}): |Aut| = {} (expected (p-1)^2 p^5 = {expected})",
            auts.order()
        );

        let value = |s: &Scalar| match s {
            Scalar::Residue { value, .. } => *value,
            _ => unreachable!(),
        };
        let mut shape_ok = true;
        for phi in auts.matrices() {
            let upper_zero = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
                .iter()
                .all(|&(r, c)| value(phi.get(r, c)) == 0);
            let (x, z, v) = (
                value(phi.get(0, 0)),
                value(phi.get(1, 1)),
                value(phi.get(2, 1)),
            );
            let diagonal_ok = value(phi.get(2, 2)) == x * z % p
                && value(phi.get(3, 3)) == x * x % p * z % p
                && value(phi.get(3, 2)) == x * v % p;
            if !(upper_zero && diagonal_ok) {
                shape_ok = false;
                break;
            }
        }
        println!("  every element matches the parametric shape: {shape_ok}");
    }
}
