//! The catalog integrity suite: nilpotency, non-Tortkara witnesses,
//! annihilator dimensions, reconstruction from provenance, and pairwise
//! non-isomorphism over GF(3).
//!
//! Run with: cargo run -p extalg --example verify_catalog

use extalg::classify::verify_catalog;

fn main() {
    let report = verify_catalog(8, &[3]).expect("valid arguments");
    print!("{report}");
    if !report.all_passed {
        std::process::exit(1);
    }
}
