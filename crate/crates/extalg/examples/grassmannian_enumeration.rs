//! Streaming enumeration of all s-dimensional subspaces of GF(p)^d in
//! lexicographic RREF order, with counts against the Gaussian binomial.
//!
//! Run with: cargo run -p extalg --example grassmannian_enumeration

use extalg::linalg::{enumerate_subspaces, gaussian_binomial};

fn main() {
    for (d, s, p) in [(2, 1, 3), (4, 2, 3), (4, 2, 5), (5, 3, 7)] {
        let count = enumerate_subspaces(d, s, p).unwrap().count();
        println!(
            "G_{s}(GF({p})^{d}): {count} subspaces (formula: {})",
            gaussian_binomial(d, s, p)
        );
    }

    println!("\nfirst few points of G_1(GF(3)^2):");
    for w in enumerate_subspaces(2, 1, 3).unwrap() {
        println!("  {w}");
    }
}
