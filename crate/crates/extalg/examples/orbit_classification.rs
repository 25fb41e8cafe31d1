//! The full classification run over a prime field: for each extension
//! size s, partition U_s into automorphism orbits, build one central
//! extension per representative and match it against the catalog.
//!
//! Run with: cargo run -p extalg --example orbit_classification [p]

use extalg::classify::{classify_extensions, ENUM_BOUND};

fn main() {
    let p: u64 = std::env::args()
        .nth(1)
        .map(|arg| arg.parse().expect("prime argument"))
        .unwrap_or(3);

    for s in 1..=4 {
        match classify_extensions(p, s, ENUM_BOUND) {
            Ok(report) => print!("{report}\n"),
            Err(err) => {
                eprintln!("classification failed for s = {s}: {err}");
                std::process::exit(2);
            }
        }
    }
}
