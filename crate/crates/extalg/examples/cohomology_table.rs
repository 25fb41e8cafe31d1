//! Second cohomology of the three nontrivial-or-not 4-dimensional
//! nilpotent anticommutative algebras, with the Tortkara-compatible part
//! of each.
//!
//! Run with: cargo run -p extalg --example cohomology_table

use extalg::algebra::Algebra;
use extalg::cohomology::h2;
use extalg::scalar::FieldSpec;

fn main() {
    let q = FieldSpec::Rationals;
    let bases = vec![
        ("A_1 (trivial)", Algebra::trivial(4, q).unwrap()),
        (
            "A_2: e1 e2 = e3",
            Algebra::from_unit_products(4, q, &[(1, 2, 3)]).unwrap(),
        ),
        (
            "A_3: e1 e2 = e3, e1 e3 = e4",
            Algebra::from_unit_products(4, q, &[(1, 2, 3), (1, 3, 4)]).unwrap(),
        ),
    ];

    for (name, algebra) in bases {
        let space = h2(&algebra);
        println!("{name}");
        println!("  dim Z2 = {}, dim B2 = {}", space.z2_dim(), space.b2().dim());
        let classes: Vec<String> = space.h2_basis().iter().map(|f| format!("[{f}]")).collect();
        println!("  H2   (dim {}): {}", space.h2_dim(), classes.join(", "));
        let t_classes: Vec<String> = space
            .h2t_basis()
            .expect("all three bases are Tortkara")
            .iter()
            .map(|f| format!("[{f}]"))
            .collect();
        println!(
            "  H2_T (dim {}): {}",
            space.h2t_dim().unwrap(),
            t_classes.join(", ")
        );
        println!();
    }

    println!("only the third base has H2_T smaller than H2, so only its");
    println!("central extensions can fail the Tortkara identity.");
}
