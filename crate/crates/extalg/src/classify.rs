//! The catalog of n-dimensional nilpotent non-Tortkara anticommutative
//! algebras with annihilator of dimension n - 4, and the verification
//! pipeline that re-derives it: catalog integrity checks, exhaustive
//! orbit classification over prime fields, and randomized verification
//! of the normalization maps used to reduce orbit representatives.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::cohomology::{h2, CohomologySpace, SkewForm};
use crate::error::{Error, Result};
use crate::extension::{central_extension, in_t_s, ExtensionSpec};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{FieldSpec, Scalar};
use crate::symmetry::{
    act_on_grassmann_point, automorphisms_with_bound, filtered_points, is_automorphism,
    orbit_partition, GrassmannFilter, DEFAULT_ENUM_BOUND,
};

/// The 4-dimensional base whose central extensions produce every
/// non-split catalog entry: `e1 e2 = e3`, `e1 e3 = e4`.
pub fn extension_base(field: FieldSpec) -> Algebra {
    Algebra::from_unit_products(4, field, &[(1, 2, 3), (1, 3, 4)])
        .expect("valid table")
        .with_name("A_3")
}

fn base_a1(field: FieldSpec) -> Algebra {
    Algebra::trivial(4, field).expect("valid field").with_name("A_1")
}

fn base_a2(field: FieldSpec) -> Algebra {
    Algebra::from_unit_products(4, field, &[(1, 2, 3)])
        .expect("valid table")
        .with_name("A_2")
}

/// How a catalog entry is produced.
#[derive(Debug, Clone)]
pub enum Provenance {
    /// Direct sum of a lower-dimensional entry with trivial lines.
    Split { base: String, padding: usize },
    /// Central extension of the 4-dimensional base by these cocycles.
    Extension { cocycles: Vec<SkewForm> },
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub dim: usize,
    pub algebra: Algebra,
    pub provenance: Provenance,
}

impl CatalogEntry {
    pub fn is_split(&self) -> bool {
        matches!(self.provenance, Provenance::Split { .. })
    }
}

/// Product tables of the non-split entries, per dimension, together with
/// the cocycle pair lists defining them as extensions of the base.
/// Cocycle pairs are 1-based `(i, j)` lists; each inner list is one
/// cocycle (a sum of elementary forms).
type NonSplitSpec = (&'static str, &'static [(usize, usize, usize)], &'static [&'static [(usize, usize)]]);

fn non_split_entries(n: usize) -> &'static [NonSplitSpec] {
    match n {
        5 => &[(
            "A_{5,1}",
            &[(1, 2, 3), (1, 3, 4), (3, 4, 5)],
            &[&[(3, 4)]],
        )],
        6 => &[
            (
                "A_{6,2}",
                &[(1, 2, 3), (1, 3, 4), (3, 4, 5), (2, 4, 6)],
                &[&[(3, 4)], &[(2, 4)]],
            ),
            (
                "A_{6,3}",
                &[(1, 2, 3), (1, 3, 4), (3, 4, 5), (2, 3, 6)],
                &[&[(3, 4)], &[(2, 3)]],
            ),
            (
                "A_{6,4}",
                &[(1, 2, 3), (1, 3, 4), (3, 4, 5), (1, 4, 6)],
                &[&[(3, 4)], &[(1, 4)]],
            ),
            (
                "A_{6,5}",
                &[(1, 2, 3), (1, 3, 4), (3, 4, 5), (2, 3, 6), (1, 4, 6)],
                &[&[(3, 4)], &[(2, 3), (1, 4)]],
            ),
        ],
        7 => &[
            (
                "A_{7,6}",
                &[(1, 2, 3), (1, 3, 4), (3, 4, 5), (2, 4, 6), (2, 3, 7)],
                &[&[(3, 4)], &[(2, 4)], &[(2, 3)]],
            ),
            (
                "A_{7,7}",
                &[(1, 2, 3), (1, 3, 4), (3, 4, 5), (2, 4, 6), (1, 4, 7)],
                &[&[(3, 4)], &[(2, 4)], &[(1, 4)]],
            ),
            (
                "A_{7,8}",
                &[(1, 2, 3), (1, 3, 4), (3, 4, 5), (1, 4, 6), (2, 3, 7)],
                &[&[(3, 4)], &[(1, 4)], &[(2, 3)]],
            ),
            (
                "A_{7,9}",
                &[(1, 2, 3), (1, 3, 4), (3, 4, 5), (2, 4, 6), (1, 4, 7), (2, 3, 7)],
                &[&[(3, 4)], &[(2, 4)], &[(1, 4), (2, 3)]],
            ),
        ],
        8 => &[(
            "A_{8,10}",
            &[(1, 2, 3), (1, 3, 4), (3, 4, 5), (2, 4, 6), (2, 3, 7), (1, 4, 8)],
            &[&[(3, 4)], &[(2, 4)], &[(2, 3)], &[(1, 4)]],
        )],
        _ => &[],
    }
}

fn cocycle_from_pairs(field: FieldSpec, pairs: &[(usize, usize)]) -> SkewForm {
    let mut form = SkewForm::zero(4, field);
    for &(i, j) in pairs {
        form = form
            .add(&SkewForm::basis_form(4, field, i - 1, j - 1))
            .expect("same dims");
    }
    form
}

/// The catalog for dimension `n`: every nilpotent non-Tortkara
/// anticommutative algebra with annihilator of dimension `n - 4`, up to
/// isomorphism. Empty for `n = 4`; for `n >= 9` the dimension-8 entries
/// padded with trivial lines.
pub fn catalog(n: usize, field: FieldSpec) -> Result<Vec<CatalogEntry>> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "the catalog starts at dimension 4, got {n}"
        )));
    }
    field.validate()?;
    if n == 4 {
        return Ok(Vec::new());
    }
    if n > 8 {
        let level8 = catalog(8, field)?;
        return Ok(level8
            .into_iter()
            .enumerate()
            .map(|(i, entry)| {
                let name = format!("A_{{{},{}}}", n, i + 1);
                CatalogEntry {
                    algebra: entry.algebra.direct_sum_with_trivial(n - 8).with_name(&name),
                    provenance: Provenance::Split {
                        base: entry.name,
                        padding: n - 8,
                    },
                    name,
                    dim: n,
                }
            })
            .collect());
    }

    let mut out = Vec::new();
    for (i, prev) in catalog(n - 1, field)?.into_iter().enumerate() {
        let name = format!("A_{{{},{}}}", n, i + 1);
        out.push(CatalogEntry {
            algebra: prev.algebra.direct_sum_with_trivial(1).with_name(&name),
            provenance: Provenance::Split {
                base: prev.name,
                padding: 1,
            },
            name,
            dim: n,
        });
    }
    for (name, products, cocycles) in non_split_entries(n) {
        out.push(CatalogEntry {
            name: name.to_string(),
            dim: n,
            algebra: Algebra::from_unit_products(n, field, products)?.with_name(*name),
            provenance: Provenance::Extension {
                cocycles: cocycles
                    .iter()
                    .map(|pairs| cocycle_from_pairs(field, pairs))
                    .collect(),
            },
        });
    }
    Ok(out)
}

/// One named pass/fail line of a verification run.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, pass: bool, details: impl Into<String>) -> CheckResult {
        CheckResult {
            name: name.into(),
            pass,
            details: details.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub max_n: usize,
    pub primes: Vec<u64>,
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "catalog verification up to dimension {} over Q and GF({:?})",
            self.max_n, self.primes
        )?;
        for check in &self.checks {
            let tag = if check.pass { "PASS" } else { "FAIL" };
            writeln!(f, "[{tag}] {}: {}", check.name, check.details)?;
        }
        writeln!(
            f,
            "{}",
            if self.all_passed {
                "all checks passed"
            } else {
                "SOME CHECKS FAILED"
            }
        )
    }
}

/// Runs the full catalog integrity suite for every dimension up to
/// `max_n`: nilpotency, non-Tortkara witnesses, annihilator dimension,
/// construction from provenance (exact table equality), membership of
/// extension data in `U_s`, and pairwise non-isomorphism over each
/// listed prime. Failures become report content, not errors.
pub fn verify_catalog(max_n: usize, primes: &[u64]) -> Result<VerificationReport> {
    if max_n < 5 {
        return Err(Error::InvalidArgument(format!(
            "catalog verification needs max_n >= 5, got {max_n}"
        )));
    }
    for &p in primes {
        FieldSpec::prime_field(p)?;
    }
    let field = FieldSpec::Rationals;
    let mut checks = Vec::new();

    let base = extension_base(field);
    let base_space = h2(&base);

    let mut levels: Vec<Vec<CatalogEntry>> = Vec::new();
    for n in 4..=max_n.min(8) {
        levels.push(catalog(n, field)?);
    }
    let level = |n: usize| -> &Vec<CatalogEntry> { &levels[n - 4] };

    for n in 5..=max_n {
        let entries = if n <= 8 { level(n).clone() } else { catalog(n, field)? };

        let expected_count = match n {
            5 => 1,
            6 => 5,
            7 => 9,
            _ => 10,
        };
        checks.push(CheckResult::new(
            format!("count n={n}"),
            entries.len() == expected_count,
            format!("{} entries, expected {}", entries.len(), expected_count),
        ));

        for entry in &entries {
            let a = &entry.algebra;
            checks.push(CheckResult::new(
                format!("nilpotent {}", entry.name),
                a.is_nilpotent(),
                match a.nilpotency_index() {
                    Some(idx) => format!("nilpotency index {idx}"),
                    None => "ideal powers stabilize at a nonzero term".into(),
                },
            ));
            let witness = a.tortkara_witness();
            checks.push(CheckResult::new(
                format!("non-Tortkara {}", entry.name),
                witness.is_some(),
                match &witness {
                    Some(w) => format!("witness {w}"),
                    None => "no violating triple found".into(),
                },
            ));
            let ann = a.annihilator().dim();
            checks.push(CheckResult::new(
                format!("annihilator {}", entry.name),
                ann == n - 4,
                format!("dim Ann = {ann}, expected {}", n - 4),
            ));

            match &entry.provenance {
                Provenance::Split { base, padding } => {
                    let source_level = if n > 8 { level(8) } else { level(n - *padding) };
                    let source = source_level.iter().find(|e| &e.name == base);
                    let pass = match source {
                        Some(src) => {
                            src.algebra.direct_sum_with_trivial(*padding).with_name(&entry.name)
                                == entry.algebra.clone()
                        }
                        None => false,
                    };
                    checks.push(CheckResult::new(
                        format!("split construction {}", entry.name),
                        pass,
                        format!("{} plus {} trivial line(s)", base, padding),
                    ));
                }
                Provenance::Extension { cocycles } => {
                    let spec = ExtensionSpec::new(base.clone(), cocycles.clone())?;
                    let built = central_extension(&spec)?.with_name(&entry.name);
                    checks.push(CheckResult::new(
                        format!("extension construction {}", entry.name),
                        built == entry.algebra,
                        format!(
                            "base extension by [{}]",
                            cocycles
                                .iter()
                                .map(|c| c.to_string())
                                .collect::<Vec<_>>()
                                .join(", ")
                        ),
                    ));

                    // The class list must span a point of U_s: no
                    // annihilator component, trivial joint radical meet,
                    // and not inside the Tortkara part.
                    let coords: Vec<Vec<Scalar>> =
                        cocycles.iter().map(|c| base_space.h2_coords(c)).collect();
                    let w = Subspace::from_vectors(&coords, base_space.h2_dim(), field);
                    let independent = w.dim() == cocycles.len();
                    let in_ts = in_t_s(&base_space, &w)?;
                    let tortkara_part = w.is_subspace_of(base_space.h2t_in_h2().expect("base is Tortkara"));
                    checks.push(CheckResult::new(
                        format!("extension data in U_s {}", entry.name),
                        independent && in_ts && !tortkara_part,
                        format!(
                            "classes independent: {independent}, in T_s: {in_ts}, inside Tortkara part: {tortkara_part}"
                        ),
                    ));
                }
            }
        }

        for &p in primes {
            let gf = FieldSpec::prime_field(p)?;
            let entries_p = catalog(n, gf)?;
            let sigs: Vec<_> = entries_p.iter().map(|e| e.algebra.invariant_signature()).collect();
            let mut by_signature = 0usize;
            let mut by_search = 0usize;
            let mut found_isomorphic_pair = None;
            for i in 0..entries_p.len() {
                for j in i + 1..entries_p.len() {
                    if sigs[i] != sigs[j] {
                        by_signature += 1;
                        continue;
                    }
                    by_search += 1;
                    if let Some(_phi) =
                        entries_p[i].algebra.find_isomorphism(&entries_p[j].algebra)?
                    {
                        found_isomorphic_pair =
                            Some((entries_p[i].name.clone(), entries_p[j].name.clone()));
                    }
                }
            }
            checks.push(CheckResult::new(
                format!("pairwise non-isomorphic n={n} over GF({p})"),
                found_isomorphic_pair.is_none(),
                match found_isomorphic_pair {
                    Some((a, b)) => format!("{a} and {b} are isomorphic"),
                    None => format!(
                        "{by_signature} pair(s) separated by invariants, {by_search} by exhaustive search"
                    ),
                },
            ));
        }
    }

    let all_passed = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        max_n,
        primes: primes.to_vec(),
        checks,
        all_passed,
    })
}

/// One orbit matched to a catalog entry.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitMatch {
    /// Basis classes of the orbit representative.
    pub representative: Vec<String>,
    pub orbit_size: usize,
    /// Name of the catalog entry the built extension is isomorphic to.
    pub entry: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub prime: u64,
    pub s: usize,
    pub aut_order: usize,
    pub expected_aut_order: u64,
    pub orbit_count: usize,
    /// Orbit count of the classification over the complex numbers.
    pub expected_orbit_count: usize,
    pub matches: Vec<OrbitMatch>,
    pub bijective: bool,
    /// Whether every count agrees with the characteristic-zero
    /// classification; a deviation is a reported finding.
    pub consistent: bool,
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "classification of {}-dimensional extensions over GF({})",
            4 + self.s,
            self.prime
        )?;
        writeln!(
            f,
            "|Aut| = {} (expected {}), {} orbit(s) on U_{} (expected {})",
            self.aut_order, self.expected_aut_order, self.orbit_count, self.s, self.expected_orbit_count
        )?;
        for m in &self.matches {
            writeln!(
                f,
                "  <{}>  (orbit size {})  ->  {}",
                m.representative.join(", "),
                m.orbit_size,
                m.entry
            )?;
        }
        writeln!(
            f,
            "{}",
            if self.consistent {
                "consistent with the characteristic-zero classification"
            } else {
                "DEVIATES from the characteristic-zero classification"
            }
        )
    }
}

/// Orbit counts of the characteristic-zero classification, by `s`.
pub const EXPECTED_ORBITS: [usize; 4] = [1, 4, 4, 1];

/// Runs the classification recipe over GF(p) for extensions of dimension
/// `4 + s`: compute H², H²_T and the automorphism group of the base,
/// partition `U_s` into orbits, build one central extension per
/// representative, and match each against the catalog by exhaustive
/// isomorphism search.
pub fn classify_extensions(p: u64, s: usize, bound: u64) -> Result<ClassificationReport> {
    if !(1..=4).contains(&s) {
        return Err(Error::InvalidArgument(format!(
            "extensions of the 4-dimensional base have 1 <= s <= 4, got {s}"
        )));
    }
    let field = FieldSpec::prime_field(p)?;
    let base = extension_base(field);
    let space = h2(&base);
    let auts = automorphisms_with_bound(&base, bound)?;
    let report = orbit_partition(&space, &auts, s, GrassmannFilter::Us)?;

    let candidates: Vec<CatalogEntry> = catalog(4 + s, field)?
        .into_iter()
        .filter(|e| !e.is_split())
        .collect();

    let mut matches = Vec::new();
    let mut matched_names = Vec::new();
    for orbit in &report.orbits {
        let cocycles = space.lift_subspace(&orbit.representative);
        let ext = central_extension(&ExtensionSpec::new(base.clone(), cocycles.clone())?)?;
        let mut matched = None;
        for entry in &candidates {
            if ext.find_isomorphism_with_bound(&entry.algebra, bound)?.is_some() {
                matched = Some(entry.name.clone());
                break;
            }
        }
        let entry = matched.unwrap_or_else(|| "unmatched".to_string());
        matched_names.push(entry.clone());
        matches.push(OrbitMatch {
            representative: cocycles.iter().map(|c| format!("[{c}]")).collect(),
            orbit_size: orbit.size(),
            entry,
        });
    }

    let mut unique = matched_names.clone();
    unique.sort();
    unique.dedup();
    let bijective = unique.len() == matched_names.len()
        && matched_names.len() == candidates.len()
        && !matched_names.iter().any(|n| n == "unmatched");

    let expected_aut_order = (p - 1) * (p - 1) * p.pow(5);
    let expected_orbit_count = EXPECTED_ORBITS[s - 1];
    let consistent = auts.order() as u64 == expected_aut_order
        && report.orbits.len() == expected_orbit_count
        && bijective;

    Ok(ClassificationReport {
        prime: p,
        s,
        aut_order: auts.order(),
        expected_aut_order,
        orbit_count: report.orbits.len(),
        expected_orbit_count,
        matches,
        bijective,
        consistent,
    })
}

/// Confirms computationally that only the base `e1 e2 = e3, e1 e3 = e4`
/// contributes non-Tortkara extensions: for the other two 4-dimensional
/// nilpotent anticommutative algebras the Tortkara part is all of H², so
/// every `U_s` is empty.
pub fn verify_tortkara_gate(p: u64) -> Result<Vec<CheckResult>> {
    let gf = FieldSpec::prime_field(p)?;
    let mut checks = Vec::new();
    for make in [base_a1, base_a2] {
        let rational = make(FieldSpec::Rationals);
        let name = rational.name().unwrap_or("base").to_string();
        let space_q = h2(&rational);
        checks.push(CheckResult::new(
            format!("H2_T = H2 for {name} over Q"),
            space_q.h2t_dim() == Some(space_q.h2_dim()),
            format!(
                "dim H2 = {}, dim H2_T = {:?}",
                space_q.h2_dim(),
                space_q.h2t_dim()
            ),
        ));
        let space_p = h2(&make(gf));
        for s in 1..=space_p.h2_dim() {
            let us = filtered_points(&space_p, s, GrassmannFilter::Us)?;
            checks.push(CheckResult::new(
                format!("U_{s}({name}) empty over GF({p})"),
                us.is_empty(),
                format!("{} point(s)", us.len()),
            ));
        }
    }
    Ok(checks)
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub samples: usize,
    pub passes: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalizationReport {
    pub seed: u64,
    pub samples_per_case: usize,
    pub cases: Vec<CaseResult>,
    pub all_passed: bool,
}

impl fmt::Display for NormalizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "normalization maps, {} samples per case, seed {}",
            self.samples_per_case, self.seed
        )?;
        for case in &self.cases {
            let tag = if case.passes == case.samples { "PASS" } else { "FAIL" };
            writeln!(f, "[{tag}] {}: {}/{}", case.name, case.passes, case.samples)?;
            for failure in case.failures.iter().take(3) {
                writeln!(f, "       {failure}")?;
            }
        }
        writeln!(
            f,
            "{}",
            if self.all_passed {
                "all cases passed"
            } else {
                "SOME CASES FAILED"
            }
        )
    }
}

/// Verifies, by seeded random substitution over the rationals, that the
/// normalization automorphisms used to reduce orbit representatives are
/// automorphisms of the base and map each case's subspace to the claimed
/// representative with exact span equality.
pub fn verify_normalizations(samples: usize, seed: u64) -> NormalizationReport {
    let field = FieldSpec::Rationals;
    let base = extension_base(field);
    let space = h2(&base);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let d = |i: usize, j: usize| SkewForm::basis_form(4, field, i - 1, j - 1);

    // Subspace of H² coordinates spanned by the given forms.
    let span = |space: &CohomologySpace, forms: &[SkewForm]| -> Subspace {
        let coords: Vec<Vec<Scalar>> = forms.iter().map(|f| space.h2_coords(f)).collect();
        Subspace::from_vectors(&coords, space.h2_dim(), field)
    };

    // The parametric automorphism of the base, by columns:
    // (x, y, u, h), (0, z, v, g), (0, 0, xz, xv), (0, 0, 0, x^2 z).
    #[allow(clippy::too_many_arguments)]
    let aut = |x: &Scalar, y: &Scalar, z: &Scalar, u: &Scalar, v: &Scalar, h: &Scalar, g: &Scalar| -> Matrix {
        let zero = field.zero();
        Matrix::from_rows(
            vec![
                vec![x.clone(), zero.clone(), zero.clone(), zero.clone()],
                vec![y.clone(), z.clone(), zero.clone(), zero.clone()],
                vec![u.clone(), v.clone(), x * z, zero.clone()],
                vec![h.clone(), g.clone(), x * v, &(x * x) * z],
            ],
            field,
        )
    };

    let rational = |rng: &mut ChaCha8Rng| -> Scalar {
        let num = rng.random_range(-9i64..=9);
        let den = rng.random_range(1i64..=4);
        Scalar::rational(num, den).expect("nonzero denominator")
    };
    let nonzero = |rng: &mut ChaCha8Rng| -> Scalar {
        loop {
            let s = rational(rng);
            if !s.is_zero() {
                return s;
            }
        }
    };

    type Sample = (Matrix, Vec<SkewForm>, Vec<SkewForm>);
    let mut cases: Vec<(&str, Box<dyn FnMut(&mut ChaCha8Rng) -> Sample>)> = Vec::new();

    // Reduction of a one-dimensional point with nonzero last coordinate.
    // The map is written for a spanning cocycle normalized to have
    // coefficient 1 there, so the drawn coefficients are rescaled first.
    cases.push((
        "s1_general",
        Box::new(|rng| {
            let a4 = nonzero(rng);
            let raw: Vec<Scalar> = (0..3).map(|_| rational(rng)).collect();
            let inv = a4.inverse().expect("nonzero");
            let (a1, a2, a3) = (&raw[0] * &inv, &raw[1] * &inv, &raw[2] * &inv);
            let (x, z) = (nonzero(rng), nonzero(rng));
            let (y, h) = (rational(rng), rational(rng));
            let u = -&(&(&a1 * &x) + &(&a3 * &y));
            let v = -&(&a3 * &z);
            let g = &a2 * &z;
            let phi = aut(&x, &y, &z, &u, &v, &h, &g);
            let theta = d(1, 4)
                .scale(&raw[0])
                .add(&d(2, 3).scale(&raw[1]))
                .unwrap()
                .add(&d(2, 4).scale(&raw[2]))
                .unwrap()
                .add(&d(3, 4).scale(&a4))
                .unwrap();
            (phi, vec![theta], vec![d(3, 4)])
        }),
    ));

    cases.push((
        "s2_case1",
        Box::new(|rng| {
            let (a1, a2) = (rational(rng), rational(rng));
            let a3 = nonzero(rng);
            let (x, z) = (nonzero(rng), nonzero(rng));
            let h = rational(rng);
            let a3_inv = a3.inverse().unwrap();
            let y = -&(&(&a1 * &x) * &a3_inv);
            let v = -&(&(&a2 * &z) * &a3_inv);
            let g = &(&v * &v) * &z.inverse().unwrap();
            let phi = aut(&x, &y, &z, &field.zero(), &v, &h, &g);
            let theta2 = d(1, 4)
                .scale(&a1)
                .add(&d(2, 3).scale(&a2))
                .unwrap()
                .add(&d(2, 4).scale(&a3))
                .unwrap();
            (phi, vec![d(3, 4), theta2], vec![d(3, 4), d(2, 4)])
        }),
    ));

    cases.push((
        "s2_case2",
        Box::new(|rng| {
            let a2 = nonzero(rng);
            let (x, z) = (nonzero(rng), nonzero(rng));
            let (y, h) = (rational(rng), rational(rng));
            let zero = field.zero();
            let phi = aut(&x, &y, &z, &zero, &zero, &h, &zero);
            (
                phi,
                vec![d(3, 4), d(2, 3).scale(&a2)],
                vec![d(3, 4), d(2, 3)],
            )
        }),
    ));

    cases.push((
        "s2_case3",
        Box::new(|rng| {
            let a1 = nonzero(rng);
            let (x, z) = (nonzero(rng), nonzero(rng));
            let (y, h) = (rational(rng), rational(rng));
            let zero = field.zero();
            let phi = aut(&x, &y, &z, &zero, &zero, &h, &zero);
            (
                phi,
                vec![d(3, 4), d(1, 4).scale(&a1)],
                vec![d(3, 4), d(1, 4)],
            )
        }),
    ));

    cases.push((
        "s2_case4",
        Box::new(|rng| {
            let (a1, a2) = (nonzero(rng), nonzero(rng));
            let h = rational(rng);
            let zero = field.zero();
            let x = a2.clone();
            let z = &a1 * &a2;
            let phi = aut(&x, &zero, &z, &zero, &zero, &h, &zero);
            let theta2 = d(1, 4).scale(&a1).add(&d(2, 3).scale(&a2)).unwrap();
            (
                phi,
                vec![d(3, 4), theta2],
                vec![d(3, 4), d(1, 4).add(&d(2, 3)).unwrap()],
            )
        }),
    ));

    cases.push((
        "s3_case1_2",
        Box::new(|rng| {
            let (a1, a2) = (nonzero(rng), nonzero(rng));
            let h = rational(rng);
            let zero = field.zero();
            let x = a2.clone();
            let z = &a1 * &a2;
            let phi = aut(&x, &zero, &z, &zero, &zero, &h, &zero);
            let theta3 = d(1, 4).scale(&a1).add(&d(2, 3).scale(&a2)).unwrap();
            (
                phi,
                vec![d(3, 4), d(2, 4), theta3],
                vec![d(3, 4), d(2, 4), d(1, 4).add(&d(2, 3)).unwrap()],
            )
        }),
    ));

    // The printed substitution transposes x and z; with x = a2/a3 and
    // z = a3^2 both image coefficients come out equal, as intended.
    cases.push((
        "s3_case2_2",
        Box::new(|rng| {
            let (a2, a3) = (nonzero(rng), nonzero(rng));
            let h = rational(rng);
            let zero = field.zero();
            let x = &a2 * &a3.inverse().unwrap();
            let z = &a3 * &a3;
            let phi = aut(&x, &zero, &z, &zero, &zero, &h, &zero);
            let theta3 = d(2, 3).scale(&a2).add(&d(2, 4).scale(&a3)).unwrap();
            (
                phi,
                vec![d(3, 4), d(1, 4), theta3],
                vec![d(3, 4), d(1, 4), d(2, 3).add(&d(2, 4)).unwrap()],
            )
        }),
    ));

    cases.push((
        "s3_case3_2",
        Box::new(|rng| {
            let (a1, a3) = (nonzero(rng), nonzero(rng));
            let h = rational(rng);
            let zero = field.zero();
            let phi = aut(&a3, &zero, &a1, &zero, &zero, &h, &zero);
            let theta3 = d(1, 4).scale(&a1).add(&d(2, 4).scale(&a3)).unwrap();
            (
                phi,
                vec![d(3, 4), d(2, 3), theta3],
                vec![d(3, 4), d(2, 3), d(1, 4).add(&d(2, 4)).unwrap()],
            )
        }),
    ));

    cases.push((
        "s3_case4_2",
        Box::new(|rng| {
            let (a1, a3) = (nonzero(rng), nonzero(rng));
            let zero = field.zero();
            let one = field.one();
            let y = -&(&a1 * &a3.inverse().unwrap());
            let phi = aut(&one, &y, &one, &zero, &zero, &zero, &zero);
            let theta2 = d(1, 4).add(&d(2, 3)).unwrap();
            let theta3 = d(1, 4).scale(&a1).add(&d(2, 4).scale(&a3)).unwrap();
            (
                phi,
                vec![d(3, 4), theta2, theta3],
                vec![d(3, 4), d(1, 4).add(&d(2, 3)).unwrap(), d(2, 4)],
            )
        }),
    ));

    // Identifications among the intermediate three-dimensional
    // representatives: y = z, u = v sends the first to the sixth, and
    // g = 0, v = xz sends the second to the fifth.
    cases.push((
        "s3_w1_equals_w6",
        Box::new(|rng| {
            let (x, z) = (nonzero(rng), nonzero(rng));
            let (v, h, g) = (rational(rng), rational(rng), rational(rng));
            let phi = aut(&x, &z, &z, &v, &v, &h, &g);
            (
                phi,
                vec![d(3, 4), d(2, 4), d(2, 3)],
                vec![d(3, 4), d(2, 3), d(1, 4).add(&d(2, 4)).unwrap()],
            )
        }),
    ));

    cases.push((
        "s3_w2_equals_w5",
        Box::new(|rng| {
            let (x, z) = (nonzero(rng), nonzero(rng));
            let (y, u, h) = (rational(rng), rational(rng), rational(rng));
            let v = &x * &z;
            let phi = aut(&x, &y, &z, &u, &v, &h, &field.zero());
            (
                phi,
                vec![d(3, 4), d(2, 4), d(1, 4)],
                vec![d(3, 4), d(1, 4), d(2, 3).add(&d(2, 4)).unwrap()],
            )
        }),
    ));

    // Degenerate subcases where a coefficient vanishes and the subspace
    // already equals a representative; the identity map suffices.
    cases.push((
        "s3_degenerate_splits",
        Box::new(|rng| {
            let c = nonzero(rng);
            let variants: Vec<(Vec<SkewForm>, Vec<SkewForm>)> = vec![
                (
                    vec![d(3, 4), d(2, 4), d(2, 3).scale(&c)],
                    vec![d(3, 4), d(2, 4), d(2, 3)],
                ),
                (
                    vec![d(3, 4), d(1, 4), d(2, 4).scale(&c)],
                    vec![d(3, 4), d(1, 4), d(2, 4)],
                ),
                (
                    vec![d(3, 4), d(2, 3), d(1, 4).scale(&c)],
                    vec![d(3, 4), d(2, 3), d(1, 4)],
                ),
                (
                    vec![
                        d(3, 4),
                        d(1, 4).add(&d(2, 3)).unwrap(),
                        d(1, 4).scale(&c),
                    ],
                    vec![d(3, 4), d(2, 3), d(1, 4)],
                ),
            ];
            let pick = rng.random_range(0..variants.len());
            let (w, expected) = variants[pick].clone();
            (Matrix::identity(4, field), w, expected)
        }),
    ));

    let mut results = Vec::new();
    for (name, sample) in cases.iter_mut() {
        let mut passes = 0;
        let mut failures = Vec::new();
        for k in 0..samples {
            let (phi, w_forms, expected_forms) = sample(&mut rng);
            let w = span(&space, &w_forms);
            let expected = span(&space, &expected_forms);
            if !is_automorphism(&base, &phi) {
                failures.push(format!("sample {k}: map is not an automorphism"));
                continue;
            }
            let image = act_on_grassmann_point(&space, &phi, &w);
            if image == expected {
                passes += 1;
            } else {
                failures.push(format!("sample {k}: image span differs from the representative"));
            }
        }
        results.push(CaseResult {
            name: name.to_string(),
            samples,
            passes,
            failures,
        });
    }

    let all_passed = results.iter().all(|c| c.passes == c.samples);
    NormalizationReport {
        seed,
        samples_per_case: samples,
        cases: results,
        all_passed,
    }
}

/// Default guard bound re-exported so callers can thread overrides.
pub const ENUM_BOUND: u64 = DEFAULT_ENUM_BOUND;
