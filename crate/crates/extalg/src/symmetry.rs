//! Automorphism groups over finite fields, their action on skew forms
//! (`phi theta (x, y) = theta(phi x, phi y)`, i.e. matrix congruence
//! `phi^t C phi`) and on Grassmannian points of H², and orbit
//! enumeration with canonical order-minimal representatives.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{is_isomorphism, Algebra};
use crate::cohomology::{CohomologySpace, SkewForm};
use crate::error::{Error, Result};
use crate::extension::in_t_s;
use crate::fp::{Fp, FpMat};
use crate::linalg::{enumerate_subspaces, pairs, Matrix, Subspace};
use crate::scalar::{FieldSpec, Scalar};
use crate::search;

pub use crate::search::DEFAULT_ENUM_BOUND;

/// The full automorphism group of an algebra over GF(p), stored as an
/// explicit element list (packed; matrices are materialized on demand).
pub struct AutomorphismSet {
    algebra: Algebra,
    prime: u64,
    dim: usize,
    flat: Vec<u8>,
}

impl AutomorphismSet {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn order(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        self.flat.len() / (self.dim * self.dim)
    }

    pub fn matrix(&self, idx: usize) -> Matrix {
        let n = self.dim;
        let field = FieldSpec::PrimeField(self.prime);
        let chunk = &self.flat[idx * n * n..(idx + 1) * n * n];
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|r| (0..n).map(|c| field.integer(chunk[r * n + c] as i64)).collect())
            .collect();
        Matrix::from_rows(rows, field)
    }

    pub fn matrices(&self) -> impl Iterator<Item = Matrix> + '_ {
        (0..self.order()).map(|i| self.matrix(i))
    }

    pub(crate) fn fp_element(&self, idx: usize) -> FpMat {
        let n = self.dim;
        let chunk = &self.flat[idx * n * n..(idx + 1) * n * n];
        FpMat {
            rows: n,
            cols: n,
            data: chunk.iter().map(|&v| v as u64).collect(),
        }
    }
}

/// Enumerates the automorphism group by generator-image search, with the
/// default guard bound.
pub fn automorphisms(a: &Algebra) -> Result<AutomorphismSet> {
    automorphisms_with_bound(a, DEFAULT_ENUM_BOUND)
}

pub fn automorphisms_with_bound(a: &Algebra, bound: u64) -> Result<AutomorphismSet> {
    let FieldSpec::PrimeField(p) = a.field() else {
        return Err(Error::InfiniteSearch);
    };
    if p >= 256 {
        return Err(Error::InvalidArgument(format!(
            "automorphism enumeration supports p < 256, got {p}"
        )));
    }
    let n = a.dim();
    let mut flat = Vec::new();
    search::enumerate_automorphisms(a, bound, |m| {
        debug_assert_eq!((m.rows, m.cols), (n, n));
        flat.extend(m.data.iter().map(|&v| v as u8));
    })?;
    Ok(AutomorphismSet {
        algebra: a.clone(),
        prime: p,
        dim: n,
        flat,
    })
}

/// Membership test usable over any field: invertible and multiplicative
/// on all basis pairs.
pub fn is_automorphism(a: &Algebra, phi: &Matrix) -> bool {
    is_isomorphism(a, a, phi)
}

/// The right action on skew forms: `C' = phi^t C phi`.
pub fn act_on_form(phi: &Matrix, theta: &SkewForm) -> SkewForm {
    assert_eq!(phi.rows(), theta.dim(), "action dimension mismatch");
    assert_eq!(phi.rows(), phi.cols(), "automorphisms are square");
    let c = theta.to_matrix();
    let moved = phi.transpose().mat_mul(&c).mat_mul(phi);
    let coeffs: Vec<Scalar> = pairs(theta.dim())
        .map(|(i, j)| moved.get(i, j).clone())
        .collect();
    SkewForm::from_coeffs(theta.dim(), theta.field(), coeffs).expect("congruence stays skew")
}

/// The action on a Grassmannian point of H²: push each basis class
/// through the form action, reduce modulo B², and re-canonicalize.
pub fn act_on_grassmann_point(
    space: &CohomologySpace,
    phi: &Matrix,
    w: &Subspace,
) -> Subspace {
    assert_eq!(w.ambient_dim(), space.h2_dim(), "point must be in H^2 coordinates");
    let rows: Vec<Vec<Scalar>> = space
        .lift_subspace(w)
        .iter()
        .map(|theta| space.h2_coords(&act_on_form(phi, theta)))
        .collect();
    let image = Subspace::from_vectors(&rows, space.h2_dim(), space.field());
    debug_assert_eq!(image.dim(), w.dim(), "the action is invertible on H^2");
    image
}

/// Which Grassmannian points to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GrassmannFilter {
    /// Every s-dimensional subspace of H².
    All,
    /// Points whose joint radical meets the annihilator trivially.
    Ts,
    /// `T_s` points inside the Tortkara part (extensions stay Tortkara).
    Rs,
    /// `T_s` points not inside the Tortkara part (non-Tortkara extensions).
    Us,
}

impl fmt::Display for GrassmannFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GrassmannFilter::All => "all",
            GrassmannFilter::Ts => "Ts",
            GrassmannFilter::Rs => "Rs",
            GrassmannFilter::Us => "Us",
        };
        write!(f, "{name}")
    }
}

/// Enumerates the filtered Grassmannian points of H² over GF(p), in
/// lexicographic order. Does not need the automorphism group.
pub fn filtered_points(
    space: &CohomologySpace,
    s: usize,
    filter: GrassmannFilter,
) -> Result<Vec<Subspace>> {
    let FieldSpec::PrimeField(p) = space.field() else {
        return Err(Error::InfiniteSearch);
    };
    let needs_tortkara = matches!(filter, GrassmannFilter::Rs | GrassmannFilter::Us);
    if needs_tortkara && space.h2t_in_h2().is_none() {
        return Err(Error::NotTortkara);
    }
    let mut out = Vec::new();
    for w in enumerate_subspaces(space.h2_dim(), s, p)? {
        let keep = match filter {
            GrassmannFilter::All => true,
            GrassmannFilter::Ts => in_t_s(space, &w)?,
            GrassmannFilter::Rs => {
                w.is_subspace_of(space.h2t_in_h2().unwrap()) && in_t_s(space, &w)?
            }
            GrassmannFilter::Us => {
                !w.is_subspace_of(space.h2t_in_h2().unwrap()) && in_t_s(space, &w)?
            }
        };
        if keep {
            out.push(w);
        }
    }
    Ok(out)
}

/// One orbit of the automorphism action.
#[derive(Debug, Clone)]
pub struct Orbit {
    /// The order-minimal point of the orbit (lexicographic on RREF).
    pub representative: Subspace,
    /// Indices into the report's point list, ascending.
    pub members: Vec<usize>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Partition of the filtered Grassmannian points into orbits.
pub struct OrbitReport {
    pub s: usize,
    pub filter: GrassmannFilter,
    pub points: Vec<Subspace>,
    pub orbits: Vec<Orbit>,
}

/// Partitions the filtered points of `G_s(H²)` into orbits of the
/// automorphism action. Representatives are order-minimal within their
/// orbit, so the output does not depend on traversal order.
pub fn orbit_partition(
    space: &CohomologySpace,
    auts: &AutomorphismSet,
    s: usize,
    filter: GrassmannFilter,
) -> Result<OrbitReport> {
    if auts.algebra() != space.algebra() {
        return Err(Error::InvalidArgument(
            "automorphism set belongs to a different algebra".into(),
        ));
    }
    let FieldSpec::PrimeField(p) = space.field() else {
        return Err(Error::InfiniteSearch);
    };
    let fp = Fp { p };
    let h = space.h2_dim();
    let points = filtered_points(space, s, filter)?;

    let key_of = |w: &Subspace| -> Vec<u8> {
        let mut key = Vec::with_capacity(s * h);
        for row in w.basis_rows() {
            for entry in row {
                let Scalar::Residue { value, .. } = entry else {
                    unreachable!()
                };
                key.push(value as u8);
            }
        }
        key
    };
    let index_of: HashMap<Vec<u8>, usize> = points
        .iter()
        .enumerate()
        .map(|(i, w)| (key_of(w), i))
        .collect();

    // One induced h x h action matrix per group element, flattened.
    let induced = induced_h2_matrices(space, auts, fp);

    let mut visited = vec![false; points.len()];
    let mut orbits = Vec::new();
    for seed in 0..points.len() {
        if visited[seed] {
            continue;
        }
        let seed_rows: Vec<Vec<u64>> = points[seed]
            .basis_rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| match s {
                        Scalar::Residue { value, .. } => *value,
                        _ => unreachable!(),
                    })
                    .collect()
            })
            .collect();
        let mut members = Vec::new();
        for g in 0..auts.order() {
            let m = &induced[g * h * h..(g + 1) * h * h];
            let image_key = apply_induced(&seed_rows, m, h, fp);
            let &idx = index_of
                .get(&image_key)
                .expect("orbit left the filtered set; the filter must be action-stable");
            if !visited[idx] {
                visited[idx] = true;
                members.push(idx);
            }
        }
        members.sort_unstable();
        debug_assert_eq!(members[0], seed);
        orbits.push(Orbit {
            representative: points[seed].clone(),
            members,
        });
    }

    Ok(OrbitReport {
        s,
        filter,
        points,
        orbits,
    })
}

/// For each automorphism, the matrix of its induced action on H² in the
/// canonical-representative coordinates: row `k` holds the coordinates of
/// the image of the k-th basis class. Flattened with stride h².
fn induced_h2_matrices(space: &CohomologySpace, auts: &AutomorphismSet, fp: Fp) -> Vec<u64> {
    let n = space.algebra().dim();
    let h = space.h2_dim();

    // B² reduction data in compact form.
    let b2_rows: Vec<(usize, Vec<u64>)> = space
        .b2()
        .basis_rows()
        .iter()
        .map(|row| {
            let vals: Vec<u64> = row
                .iter()
                .map(|s| match s {
                    Scalar::Residue { value, .. } => *value,
                    _ => unreachable!(),
                })
                .collect();
            let pivot = vals.iter().position(|&v| v != 0).expect("nonzero row");
            (pivot, vals)
        })
        .collect();
    let free_coords: Vec<(usize, usize)> = {
        // skew coordinate index -> (i, j)
        let all: Vec<(usize, usize)> = pairs(n).collect();
        space
            .h2_basis()
            .iter()
            .map(|form| {
                let coord = form
                    .coeffs()
                    .iter()
                    .position(|c| !c.is_zero())
                    .expect("basis representative is a unit coordinate");
                all[coord]
            })
            .collect()
    };
    let coord_count = n * (n - 1) / 2;
    let pair_list: Vec<(usize, usize)> = pairs(n).collect();

    let free_coord_indices: Vec<usize> = space
        .h2_basis()
        .iter()
        .map(|form| form.coeffs().iter().position(|c| !c.is_zero()).unwrap())
        .collect();

    let mut out = Vec::with_capacity(auts.order() * h * h);
    let mut coeffs = vec![0u64; coord_count];
    for idx in 0..auts.order() {
        let phi = auts.fp_element(idx);
        for &(bi, bj) in &free_coords {
            // Congruence image of the elementary form on (bi, bj):
            // c'_{ij} = phi[bi][i] phi[bj][j] - phi[bj][i] phi[bi][j]
            for (c, &(i, j)) in pair_list.iter().enumerate() {
                let lhs = fp.mul(phi.get(bi, i), phi.get(bj, j));
                let rhs = fp.mul(phi.get(bj, i), phi.get(bi, j));
                coeffs[c] = fp.sub(lhs, rhs);
            }
            // Reduce modulo B².
            for (pivot, row) in &b2_rows {
                let c = coeffs[*pivot];
                if c == 0 {
                    continue;
                }
                for t in 0..coord_count {
                    coeffs[t] = fp.sub(coeffs[t], fp.mul(c, row[t]));
                }
            }
            for &coord in &free_coord_indices {
                out.push(coeffs[coord]);
            }
        }
    }
    out
}

/// Applies an induced H² matrix (row-major, h x h) to the rows of a point
/// and returns the canonical RREF key of the image.
fn apply_induced(rows: &[Vec<u64>], m: &[u64], h: usize, fp: Fp) -> Vec<u8> {
    let s = rows.len();
    let mut image = FpMat::zeros(s, h);
    for (r, row) in rows.iter().enumerate() {
        for k in 0..h {
            if row[k] == 0 {
                continue;
            }
            for c in 0..h {
                let v = fp.add(image.get(r, c), fp.mul(row[k], m[k * h + c]));
                image.set(r, c, v);
            }
        }
    }
    image.rref_in_place(fp);
    image.data.iter().map(|&v| v as u8).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::h2;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn a3(field: FieldSpec) -> Algebra {
        Algebra::from_unit_products(4, field, &[(1, 2, 3), (1, 3, 4)]).unwrap()
    }

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn trivial_algebra_automorphisms_form_general_linear_group() {
        let a = Algebra::trivial(2, FieldSpec::prime_field(3).unwrap()).unwrap();
        let auts = automorphisms(&a).unwrap();
        assert_eq!(auts.order(), 48);
        for phi in auts.matrices().take(8) {
            assert!(is_automorphism(&a, &phi));
        }
    }

    #[test]
    fn a3_automorphism_group_order_and_shape() {
        for p in [3u64, 5] {
            let a = a3(FieldSpec::prime_field(p).unwrap());
            let auts = automorphisms(&a).unwrap();
            let expected = ((p - 1) * (p - 1) * p.pow(5)) as usize;
            assert_eq!(auts.order(), expected, "order over GF({p})");
            // Lower-triangular parametric shape: zero upper entries,
            // (3,3) = x z, (4,4) = x^2 z, (4,3) = x v.
            for idx in 0..auts.order() {
                let m = auts.fp_element(idx);
                let fp = Fp { p };
                assert_eq!(m.get(0, 1), 0);
                assert_eq!(m.get(0, 2), 0);
                assert_eq!(m.get(0, 3), 0);
                assert_eq!(m.get(1, 2), 0);
                assert_eq!(m.get(1, 3), 0);
                assert_eq!(m.get(2, 3), 0);
                let (x, z, v) = (m.get(0, 0), m.get(1, 1), m.get(2, 1));
                assert_eq!(m.get(2, 2), fp.mul(x, z));
                assert_eq!(m.get(3, 3), fp.mul(fp.mul(x, x), z));
                assert_eq!(m.get(3, 2), fp.mul(x, v));
            }
        }
    }

    #[test]
    fn automorphism_set_is_closed_under_product_and_inverse() {
        let a = a3(FieldSpec::prime_field(3).unwrap());
        let auts = automorphisms(&a).unwrap();
        let keys: HashSet<Vec<u64>> = (0..auts.order())
            .map(|i| auts.fp_element(i).data)
            .collect();
        let fp = Fp { p: 3 };
        let sample: Vec<FpMat> = (0..auts.order()).step_by(97).map(|i| auts.fp_element(i)).collect();
        for a1 in &sample {
            for a2 in &sample {
                assert!(keys.contains(&a1.mat_mul(a2, fp).data));
            }
            assert!(keys.contains(&a1.inverse(fp).unwrap().data));
        }
        assert!(keys.contains(&FpMat::from_columns(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).data));
    }

    #[test]
    fn is_automorphism_examples() {
        let a = a3(q());
        assert!(is_automorphism(&a, &Matrix::identity(4, q())));

        // diag(1,1,1,2) breaks e1 e3 = e4.
        let mut bad = Matrix::identity(4, q());
        bad.set(3, 3, q().integer(2));
        assert!(!is_automorphism(&a, &bad));

        // A sampled lower-triangular normalization map with x = z = 1,
        // a1 = 2, a2 = 3, a3 = 5, h = 0, y = 0.
        let rows = vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![-2, -5, 1, 0],
            vec![0, 3, -5, 1],
        ];
        let phi = Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| q().integer(v)).collect())
                .collect(),
            q(),
        );
        assert!(is_automorphism(&a, &phi));
    }

    #[test]
    fn act_on_form_identity_and_scaling() {
        let theta = SkewForm::basis_form(4, q(), 2, 3);
        let id = Matrix::identity(4, q());
        assert_eq!(act_on_form(&id, &theta), theta);

        // diag(x, z, xz, x^2 z) scales d34 by x^3 z^2.
        let (x, z) = (2i64, 3i64);
        let mut diag = Matrix::zeros(4, 4, q());
        diag.set(0, 0, q().integer(x));
        diag.set(1, 1, q().integer(z));
        diag.set(2, 2, q().integer(x * z));
        diag.set(3, 3, q().integer(x * x * z));
        let moved = act_on_form(&diag, &theta);
        assert_eq!(moved, theta.scale(&q().integer(x.pow(3) * z.pow(2))));
    }

    #[test]
    fn grassmann_action_preserves_dimension() {
        let field = FieldSpec::prime_field(3).unwrap();
        let a = a3(field);
        let space = h2(&a);
        let auts = automorphisms(&a).unwrap();
        let w = Subspace::from_vectors(
            &[
                vec![field.one(), field.zero(), field.zero(), field.integer(2)],
                vec![field.zero(), field.one(), field.integer(1), field.zero()],
            ],
            4,
            field,
        );
        for idx in (0..auts.order()).step_by(131) {
            let phi = auts.matrix(idx);
            let img = act_on_grassmann_point(&space, &phi, &w);
            assert_eq!(img.dim(), w.dim());
        }
        assert_eq!(
            act_on_grassmann_point(&space, &Matrix::identity(4, field), &w),
            w
        );
    }

    #[test]
    fn orbit_partition_u1_over_gf3() {
        let field = FieldSpec::prime_field(3).unwrap();
        let a = a3(field);
        let space = h2(&a);
        let auts = automorphisms(&a).unwrap();
        let report = orbit_partition(&space, &auts, 1, GrassmannFilter::Us).unwrap();
        assert_eq!(report.orbits.len(), 1);
        // Representative is the class of the elementary form on (3, 4):
        // coordinates (0, 0, 0, 1) in the H² basis.
        let rep = &report.orbits[0].representative;
        let expected = Subspace::from_vectors(
            &[vec![field.zero(), field.zero(), field.zero(), field.one()]],
            4,
            field,
        );
        assert_eq!(rep, &expected);
        // Every point is covered exactly once.
        let total: usize = report.orbits.iter().map(|o| o.size()).sum();
        assert_eq!(total, report.points.len());
    }

    #[test]
    fn orbit_representative_is_minimal_member() {
        let field = FieldSpec::prime_field(3).unwrap();
        let a = a3(field);
        let space = h2(&a);
        let auts = automorphisms(&a).unwrap();
        let report = orbit_partition(&space, &auts, 2, GrassmannFilter::Us).unwrap();
        for orbit in &report.orbits {
            let min = orbit.members.iter().min().unwrap();
            assert_eq!(&report.points[*min], &orbit.representative);
            for pair in orbit.members.windows(2) {
                assert!(pair[0] < pair[1]);
            }
        }
    }

    #[test]
    fn full_grassmannian_with_s_equal_h2_dim_is_single_point() {
        let field = FieldSpec::prime_field(3).unwrap();
        let a = a3(field);
        let space = h2(&a);
        let auts = automorphisms(&a).unwrap();
        let report = orbit_partition(&space, &auts, 4, GrassmannFilter::All).unwrap();
        assert_eq!(report.points.len(), 1);
        assert_eq!(report.orbits.len(), 1);
    }

    #[test]
    fn rationals_are_rejected_for_enumeration() {
        let a = a3(q());
        assert!(matches!(automorphisms(&a), Err(Error::InfiniteSearch)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn form_action_is_compatible_with_composition(
            entries1 in prop::collection::vec(0i64..5, 16),
            entries2 in prop::collection::vec(0i64..5, 16),
            coeffs in prop::collection::vec(0i64..5, 6),
        ) {
            let field = FieldSpec::prime_field(5).unwrap();
            let build = |vals: &[i64]| {
                Matrix::from_rows(
                    vals.chunks(4)
                        .map(|r| r.iter().map(|&v| field.integer(v)).collect())
                        .collect(),
                    field,
                )
            };
            let (phi, psi) = (build(&entries1), build(&entries2));
            let theta = SkewForm::from_coeffs(
                4,
                field,
                coeffs.iter().map(|&v| field.integer(v)).collect(),
            )
            .unwrap();
            let composed = act_on_form(&phi.mat_mul(&psi), &theta);
            let sequential = act_on_form(&psi, &act_on_form(&phi, &theta));
            prop_assert_eq!(composed, sequential);
        }
    }
}
