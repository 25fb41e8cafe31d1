//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`).
//!
//!   cargo test -p extalg --test acceptance -- --nocapture

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use extalg::algebra::{is_isomorphism, Algebra};
use extalg::classify::{
    catalog, classify_extensions, extension_base, verify_normalizations, verify_tortkara_gate,
    ENUM_BOUND,
};
use extalg::cohomology::{delta_of_functional, h2, tortkara_cocycle_space, SkewForm};
use extalg::extension::{central_extension, expected_annihilator, ExtensionSpec};
use extalg::format::{parse_algebra, render_algebra};
use extalg::linalg::Matrix;
use extalg::scalar::{FieldSpec, Scalar};
use extalg::symmetry::{filtered_points, GrassmannFilter};

fn report(number: usize, name: &str, pass: bool, details: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("criterion {number} ({name}): {tag} | {details}");
    assert!(pass, "criterion {number} ({name}) failed: {details}");
}

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime_field(p).unwrap()
}

fn d(dim: usize, field: FieldSpec, i: usize, j: usize) -> SkewForm {
    SkewForm::basis_form(dim, field, i - 1, j - 1)
}

fn four_dimensional_bases(field: FieldSpec) -> Vec<Algebra> {
    vec![
        Algebra::trivial(4, field).unwrap(),
        Algebra::from_unit_products(4, field, &[(1, 2, 3)]).unwrap(),
        extension_base(field),
    ]
}

#[test]
fn criterion_1_cohomology_table() {
    let start = Instant::now();
    let field = q();
    let bases = four_dimensional_bases(field);
    let spaces: Vec<_> = bases.iter().map(h2).collect();

    let dims: Vec<(usize, usize)> = spaces
        .iter()
        .map(|s| (s.h2_dim(), s.h2t_dim().expect("Tortkara bases")))
        .collect();
    let dims_ok = dims == vec![(6, 6), (5, 5), (4, 3)];

    let all_six: Vec<SkewForm> = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
        .iter()
        .map(|&(i, j)| d(4, field, i, j))
        .collect();
    let five: Vec<SkewForm> = [(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
        .iter()
        .map(|&(i, j)| d(4, field, i, j))
        .collect();
    let h2_a3: Vec<SkewForm> = [(1, 4), (2, 3), (2, 4), (3, 4)]
        .iter()
        .map(|&(i, j)| d(4, field, i, j))
        .collect();
    let h2t_a3 = &h2_a3[..3];

    let classes_ok = spaces[0].h2_basis() == all_six.as_slice()
        && spaces[0].h2t_basis() == Some(all_six.as_slice())
        && spaces[1].h2_basis() == five.as_slice()
        && spaces[1].h2t_basis() == Some(five.as_slice())
        && spaces[2].h2_basis() == h2_a3.as_slice()
        && spaces[2].h2t_basis() == Some(h2t_a3);

    report(
        1,
        "cohomology table",
        dims_ok && classes_ok,
        format!(
            "(H2, H2_T) dims {:?}, listed basis classes match exactly; {:.2?}",
            dims,
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_2_catalog_integrity() {
    let start = Instant::now();
    let field = q();
    let mut checked = 0usize;
    let mut pass = true;
    let mut detail = String::new();
    for n in 5..=8usize {
        for entry in catalog(n, field).unwrap() {
            checked += 1;
            let nilpotent = entry.algebra.is_nilpotent();
            let ann_ok = entry.algebra.annihilator().dim() == n - 4;
            let witness = entry.algebra.tortkara_witness();
            if !(nilpotent && ann_ok && witness.is_some()) {
                pass = false;
                detail = format!("{} failed integrity", entry.name);
                break;
            }
        }
    }

    // The five-dimensional entry has the stated witness triple with
    // defect e5.
    let a51 = catalog(5, field).unwrap().remove(0).algebra;
    let w = a51.tortkara_witness().expect("non-Tortkara");
    let expected_witness = w.a == a51.basis_vector(1)
        && w.b == a51.basis_vector(0)
        && w.c == a51.basis_vector(2)
        && w.defect == a51.basis_vector(4);
    if !expected_witness {
        pass = false;
        detail = format!("unexpected witness for the 5-dimensional entry: {w}");
    }

    report(
        2,
        "catalog integrity",
        pass,
        if pass {
            format!(
                "{checked} entries nilpotent, non-Tortkara with witness, dim Ann = n-4; {:.2?}",
                start.elapsed()
            )
        } else {
            detail
        },
    );
}

#[test]
fn criterion_3_pairwise_non_isomorphism() {
    let start = Instant::now();
    let mut by_signature = 0usize;
    let mut by_search = 0usize;
    let mut isomorphic_pair = None;
    for n in [6usize, 7, 8] {
        for p in [3u64, 5] {
            let entries = catalog(n, gf(p)).unwrap();
            let sigs: Vec<_> = entries
                .iter()
                .map(|e| e.algebra.invariant_signature())
                .collect();
            for i in 0..entries.len() {
                for j in i + 1..entries.len() {
                    if sigs[i] != sigs[j] {
                        by_signature += 1;
                        continue;
                    }
                    by_search += 1;
                    if entries[i]
                        .algebra
                        .find_isomorphism(&entries[j].algebra)
                        .unwrap()
                        .is_some()
                    {
                        isomorphic_pair =
                            Some(format!("{} ~ {} over GF({p})", entries[i].name, entries[j].name));
                    }
                }
            }
        }
    }
    report(
        3,
        "pairwise non-isomorphism",
        isomorphic_pair.is_none(),
        match isomorphic_pair {
            Some(pair) => pair,
            None => format!(
                "zero isomorphisms: {by_signature} pairs split by invariants, {by_search} by exhaustive search; {:.2?}",
                start.elapsed()
            ),
        },
    );
}

#[test]
fn criterion_4_orbit_counts() {
    let start = Instant::now();
    let mut pass = true;
    let mut details = Vec::new();
    for p in [3u64, 5, 7] {
        let mut counts = Vec::new();
        for s in 1..=4usize {
            let rep = classify_extensions(p, s, ENUM_BOUND).unwrap();
            counts.push(rep.orbit_count);
            if !rep.consistent {
                pass = false;
                details.push(format!("deviation for p={p}, s={s}: {rep}"));
            }
        }
        // U_4 = T_4 because R_4 is empty: the full space is not inside
        // the Tortkara part.
        let space = h2(&extension_base(gf(p)));
        let r4 = filtered_points(&space, 4, GrassmannFilter::Rs).unwrap();
        let t4 = filtered_points(&space, 4, GrassmannFilter::Ts).unwrap();
        if !(r4.is_empty() && t4.len() == 1) {
            pass = false;
            details.push(format!("T_4 structure broken for p={p}"));
        }
        details.push(format!("p={p}: U orbits {counts:?}, T_4 = 1"));
    }
    report(
        4,
        "orbit counts over GF(3), GF(5), GF(7)",
        pass,
        format!("{}; {:.2?}", details.join("; "), start.elapsed()),
    );
}

#[test]
fn criterion_5_normalization_maps() {
    let start = Instant::now();
    let rep = verify_normalizations(100, 20240817);
    let case_summary: Vec<String> = rep
        .cases
        .iter()
        .map(|c| format!("{} {}/{}", c.name, c.passes, c.samples))
        .collect();
    report(
        5,
        "normalization maps",
        rep.all_passed && rep.cases.len() >= 12,
        format!("{}; {:.2?}", case_summary.join(", "), start.elapsed()),
    );
}

fn random_algebra(rng: &mut ChaCha8Rng, dim: usize, field: FieldSpec) -> Algebra {
    let p = field.characteristic() as i64;
    let mut a = Algebra::trivial(dim, field).unwrap();
    for i in 0..dim {
        for j in i + 1..dim {
            // Sparse tables: most products zero, like the catalog's.
            let coeffs: Vec<Scalar> = (0..dim)
                .map(|_| {
                    if rng.random_range(0..3) == 0 {
                        field.integer(rng.random_range(0..p))
                    } else {
                        field.zero()
                    }
                })
                .collect();
            a.set_product(i, j, coeffs).unwrap();
        }
    }
    a
}

fn random_form(rng: &mut ChaCha8Rng, dim: usize, field: FieldSpec) -> SkewForm {
    let p = field.characteristic() as i64;
    let coeffs: Vec<Scalar> = (0..dim * (dim - 1) / 2)
        .map(|_| field.integer(rng.random_range(0..p)))
        .collect();
    SkewForm::from_coeffs(dim, field, coeffs).unwrap()
}

#[test]
fn criterion_6_method_identities() {
    let start = Instant::now();
    let field = gf(3);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_6);

    // (a) The annihilator identity for random bases and cocycle lists.
    for _ in 0..500 {
        let dim = rng.random_range(3..=4);
        let base = random_algebra(&mut rng, dim, field);
        let s = rng.random_range(1..=2);
        let cocycles: Vec<SkewForm> = (0..s).map(|_| random_form(&mut rng, dim, field)).collect();
        let spec = ExtensionSpec::new(base, cocycles).unwrap();
        let ext = central_extension(&spec).unwrap();
        assert_eq!(
            ext.annihilator(),
            expected_annihilator(&spec).unwrap(),
            "annihilator identity failed"
        );
    }

    // (b) Coboundary shifts: same class, and the explicit shift map is an
    // isomorphism of the extensions. Spot-checked against the exhaustive
    // search as well.
    for trial in 0..500 {
        let dim = rng.random_range(3..=4);
        let base = random_algebra(&mut rng, dim, field);
        let space = h2(&base);
        let theta = random_form(&mut rng, dim, field);
        let f: Vec<Scalar> = (0..dim)
            .map(|_| field.integer(rng.random_range(0..3)))
            .collect();
        let df = delta_of_functional(&base, &f).unwrap();
        let shifted = theta.add(&df).unwrap();
        assert_eq!(
            space.class_reduce(&theta),
            space.class_reduce(&shifted),
            "classes differ after a coboundary shift"
        );

        let ext = central_extension(&ExtensionSpec::new(base.clone(), vec![theta]).unwrap()).unwrap();
        let ext_shifted =
            central_extension(&ExtensionSpec::new(base.clone(), vec![shifted]).unwrap()).unwrap();
        let mut phi = Matrix::identity(dim + 1, field);
        for (j, fj) in f.iter().enumerate() {
            phi.set(dim, j, fj.clone());
        }
        assert!(
            is_isomorphism(&ext, &ext_shifted, &phi),
            "explicit shift map is not an isomorphism"
        );
        if trial % 50 == 0 && dim == 3 {
            assert!(
                ext.find_isomorphism(&ext_shifted).unwrap().is_some(),
                "exhaustive search misses the shift isomorphism"
            );
        }
    }

    // (c) A single extension is Tortkara exactly when its cocycle lies in
    // the Tortkara cocycle space of a Tortkara base.
    let bases = four_dimensional_bases(field);
    let z2ts: Vec<_> = bases
        .iter()
        .map(|b| tortkara_cocycle_space(b).unwrap())
        .collect();
    for k in 0..510 {
        let which = k % bases.len();
        let theta = random_form(&mut rng, 4, field);
        let ext = central_extension(
            &ExtensionSpec::new(bases[which].clone(), vec![theta.clone()]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            ext.is_tortkara(),
            z2ts[which].contains(theta.coeffs()),
            "Tortkara criterion mismatch on base {which}"
        );
    }

    // (d) The polarized Tortkara check agrees with brute force over all
    // of GF(3)^n.
    let value = |s: &Scalar| match s {
        Scalar::Residue { value, .. } => *value,
        _ => unreachable!(),
    };
    let mut checked_brute = 0usize;
    for trial in 0..500 {
        let dim = if trial % 10 == 0 { 4 } else { rng.random_range(2..=3) };
        let a = random_algebra(&mut rng, dim, field);
        // Compact copy of the table for the exhaustive oracle.
        let mut table = vec![vec![0u64; dim]; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let prod = a.basis_product(i, j);
                for k in 0..dim {
                    table[i * dim + j][k] = value(&prod[k]);
                }
            }
        }
        let mul = |x: &[u64], y: &[u64]| -> Vec<u64> {
            let mut out = vec![0u64; dim];
            for i in 0..dim {
                if x[i] == 0 {
                    continue;
                }
                for j in 0..dim {
                    if y[j] == 0 {
                        continue;
                    }
                    let c = x[i] * y[j] % 3;
                    for k in 0..dim {
                        out[k] = (out[k] + c * table[i * dim + j][k]) % 3;
                    }
                }
            }
            out
        };
        let total = 3u64.pow(dim as u32);
        let vector = |mut code: u64| -> Vec<u64> {
            (0..dim)
                .map(|_| {
                    let v = code % 3;
                    code /= 3;
                    v
                })
                .collect()
        };
        let mut brute_tortkara = true;
        'outer: for xa in 0..total {
            let va = vector(xa);
            for xb in 0..total {
                let vb = vector(xb);
                let ab = mul(&va, &vb);
                for xc in 0..total {
                    let vc = vector(xc);
                    let lhs = mul(&ab, &mul(&vc, &vb));
                    // J(a,b,c) b = ((ab)c + (bc)a + (ca)b) b
                    let mut j_vec = mul(&ab, &vc);
                    let bc_a = mul(&mul(&vb, &vc), &va);
                    let ca_b = mul(&mul(&vc, &va), &vb);
                    for k in 0..dim {
                        j_vec[k] = (j_vec[k] + bc_a[k] + ca_b[k]) % 3;
                    }
                    let rhs = mul(&j_vec, &vb);
                    if lhs != rhs {
                        brute_tortkara = false;
                        break 'outer;
                    }
                }
            }
        }
        checked_brute += 1;
        assert_eq!(
            a.is_tortkara(),
            brute_tortkara,
            "polarized check disagrees with brute force (dim {dim})"
        );
    }

    report(
        6,
        "method identities",
        true,
        format!(
            "annihilator identity x500, coboundary shifts x500, Tortkara criterion x510, polarization vs brute force x{checked_brute}; {:.2?}",
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_7_tortkara_gate() {
    let start = Instant::now();
    let checks = verify_tortkara_gate(3).unwrap();
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.clone())
        .collect();
    report(
        7,
        "gate check: U_s empty for the other bases",
        failed.is_empty(),
        format!(
            "{} checks (H2_T = H2 over Q, U_s empty over GF(3)); {:.2?}",
            checks.len(),
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_8_cli_round_trip_and_verification() {
    let start = Instant::now();
    let fixtures = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut files = 0usize;
    for entry in std::fs::read_dir(&fixtures).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("alg") {
            continue;
        }
        files += 1;
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = parse_algebra(&text).unwrap();
        let rendered = render_algebra(&parsed);
        assert_eq!(rendered, text, "fixture {} is not canonical", path.display());
        assert_eq!(parse_algebra(&rendered).unwrap(), parsed);
    }
    assert!(files >= 5, "expected at least five fixtures");

    let status = std::process::Command::new(env!("CARGO_BIN_EXE_extalg"))
        .args(["verify-theorem1", "--max-n", "8", "--primes", "3,5"])
        .status()
        .expect("binary runs");
    report(
        8,
        "CLI round-trip and full verification",
        status.code() == Some(0),
        format!(
            "{files} fixtures round-trip, `verify-theorem1 --max-n 8 --primes 3,5` exited {:?}; {:.2?}",
            status.code(),
            start.elapsed()
        ),
    );
}
