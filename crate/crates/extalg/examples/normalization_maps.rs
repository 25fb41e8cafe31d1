//! Randomized verification of the normalization automorphisms that
//! reduce Grassmannian points to orbit representatives: each sampled map
//! must be an automorphism of the base and must carry its case's
//! subspace onto the claimed representative, with exact rational
//! arithmetic throughout.
//!
//! Run with: cargo run -p extalg --example normalization_maps [seed]

use extalg::classify::verify_normalizations;

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .map(|arg| arg.parse().expect("numeric seed"))
        .unwrap_or(2024);
    let report = verify_normalizations(100, seed);
    print!("{report}");
    if !report.all_passed {
        std::process::exit(1);
    }
}
