//! Anticommutative algebras given by structure constants.
//!
//! Only products `e_i e_j` with `i < j` are stored; `e_j e_i = -(e_i e_j)`
//! and `e_i e_i = 0` are implied, so anticommutativity holds by
//! construction. On top of the product the module provides annihilators,
//! ideal powers and nilpotency, the trilinear operator
//! `J(a,b,c) = (ab)c + (bc)a + (ca)b`, the Tortkara identity check, direct
//! sums with trivial algebras and finite-field isomorphism search.

use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{pair_index, pairs, Matrix, Subspace};
use crate::scalar::{FieldSpec, Scalar};
use crate::search;

/// A finite-dimensional anticommutative algebra over an exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    field: FieldSpec,
    name: Option<String>,
    /// `table[pair_index(i, j)]` holds the coefficients of `e_i e_j`.
    table: Vec<Vec<Scalar>>,
}

impl Algebra {
    /// The algebra with all products zero.
    pub fn trivial(dim: usize, field: FieldSpec) -> Result<Algebra> {
        field.validate()?;
        Ok(Algebra {
            dim,
            field,
            name: None,
            table: vec![vec![field.zero(); dim]; dim * (dim - 1) / 2],
        })
    }

    /// Builds an algebra from products of the form `e_i e_j = e_k` with
    /// 1-based indices, the way multiplication tables are usually quoted.
    pub fn from_unit_products(
        dim: usize,
        field: FieldSpec,
        products: &[(usize, usize, usize)],
    ) -> Result<Algebra> {
        let mut a = Algebra::trivial(dim, field)?;
        for &(i, j, k) in products {
            if i == 0 || j == 0 || k == 0 || i > dim || j > dim || k > dim {
                return Err(Error::InvalidArgument(format!(
                    "basis index out of range in product e{i} e{j} = e{k}"
                )));
            }
            if i >= j {
                return Err(Error::InvalidArgument(format!(
                    "products must be given with i < j, got e{i} e{j}"
                )));
            }
            let entry = &mut a.table[pair_index(dim, i - 1, j - 1)][k - 1];
            *entry = &*entry + &field.one();
        }
        Ok(a)
    }

    /// Sets the full coefficient vector of `e_i e_j` (0-based, `i < j`).
    pub fn set_product(&mut self, i: usize, j: usize, coeffs: Vec<Scalar>) -> Result<()> {
        if i >= j || j >= self.dim {
            return Err(Error::InvalidArgument(format!(
                "invalid product pair ({i}, {j}) for dimension {}",
                self.dim
            )));
        }
        if coeffs.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: coeffs.len(),
            });
        }
        for c in &coeffs {
            if c.field() != self.field {
                return Err(Error::FieldMismatch(
                    self.field.to_string(),
                    c.field().to_string(),
                ));
            }
        }
        self.table[pair_index(self.dim, i, j)] = coeffs;
        Ok(())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Algebra {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Coefficients of `e_i e_j` for `i < j` (0-based).
    pub fn pair_table(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[pair_index(self.dim, i, j)]
    }

    /// Coefficients of `e_i e_j` for arbitrary `i`, `j`, honoring the sign
    /// convention.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.pair_table(i, j).to_vec(),
            Equal => vec![self.field.zero(); self.dim],
            Greater => self.pair_table(j, i).iter().map(|s| -s).collect(),
        }
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    /// Bilinear extension of the structure table.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: if x.len() != self.dim { x.len() } else { y.len() },
            });
        }
        for s in x.iter().chain(y) {
            if s.field() != self.field {
                return Err(Error::FieldMismatch(
                    self.field.to_string(),
                    s.field().to_string(),
                ));
            }
        }
        Ok(self.product(x, y))
    }

    pub(crate) fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, j) in pairs(self.dim) {
            let coeffs = self.pair_table(i, j);
            if coeffs.iter().all(|s| s.is_zero()) {
                continue;
            }
            let cross = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if cross.is_zero() {
                continue;
            }
            for (k, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    out[k] = &out[k] + &(&cross * c);
                }
            }
        }
        out
    }

    /// `Ann(A) = { x : xA = 0 }`, the kernel of all right multiplications.
    pub fn annihilator(&self) -> Subspace {
        // Stack the maps x -> x e_j for every j.
        let mut rows = Vec::new();
        for j in 0..self.dim {
            for k in 0..self.dim {
                let row: Vec<Scalar> = (0..self.dim)
                    .map(|i| self.basis_product(i, j)[k].clone())
                    .collect();
                rows.push(row);
            }
        }
        Matrix::from_rows(rows, self.field).kernel()
    }

    /// The span of all products, `A^2`.
    pub fn square(&self) -> Subspace {
        let vectors: Vec<Vec<Scalar>> = pairs(self.dim)
            .map(|(i, j)| self.pair_table(i, j).to_vec())
            .collect();
        Subspace::from_vectors(&vectors, self.dim, self.field)
    }

    /// The chain of ideal powers `A<1> = A`, `A<k> = sum of A<i> A<j>` over
    /// `i + j = k`. The chain is decreasing; it ends at the first zero
    /// term. A repeated term alone does not mean the chain has stabilized
    /// (later cross terms can still shrink it), but constancy on a whole
    /// window `[k0, 2k0]` does: `A<2k0>` is then the sum of the terms
    /// `A<i> W` for `i <= k0`, and every later power reproduces exactly
    /// that sum. Non-nilpotent chains end at such a stable term.
    pub fn ideal_powers(&self) -> Vec<Subspace> {
        let mut chain = vec![Subspace::full(self.dim, self.field)];
        loop {
            let k = chain.len() + 1;
            let mut next = Subspace::zero(self.dim, self.field);
            for i in 1..k {
                let j = k - i;
                let (a, b) = (&chain[i - 1], &chain[j - 1]);
                let mut prods = Vec::new();
                for u in a.basis_rows() {
                    for v in b.basis_rows() {
                        prods.push(self.product(&u, &v));
                    }
                }
                let span = Subspace::from_vectors(&prods, self.dim, self.field);
                next = next.sum(&span).expect("same ambient");
            }
            chain.push(next);
            let last = chain.last().unwrap();
            if last.is_zero() {
                break;
            }
            // Smallest power index whose value already equals the current
            // term; constancy through twice that index is conclusive.
            let mut k0 = chain.len();
            while k0 > 1 && chain[k0 - 2] == *last {
                k0 -= 1;
            }
            if chain.len() >= 2 * k0 {
                break;
            }
        }
        chain
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }

    /// The smallest `N` with `A<N> = 0`, if any.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let chain = self.ideal_powers();
        chain.last().unwrap().is_zero().then(|| chain.len())
    }

    /// `J(a, b, c) = (ab)c + (bc)a + (ca)b`.
    pub fn j_operator(&self, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Result<Vec<Scalar>> {
        let ab_c = self.multiply(&self.multiply(a, b)?, c)?;
        let bc_a = self.product(&self.product(b, c), a);
        let ca_b = self.product(&self.product(c, a), b);
        Ok((0..self.dim)
            .map(|k| &(&ab_c[k] + &bc_a[k]) + &ca_b[k])
            .collect())
    }

    /// `(ab)(cb) - J(a,b,c)b`, the Tortkara defect.
    pub fn tortkara_defect(&self, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Vec<Scalar> {
        let lhs = self.product(&self.product(a, b), &self.product(c, b));
        let rhs = self.product(&self.j_operator(a, b, c).expect("validated"), b);
        (0..self.dim).map(|k| &lhs[k] - &rhs[k]).collect()
    }

    /// Decides the Tortkara identity `(ab)(cb) = J(a,b,c)b` for all
    /// vectors by polarization: the defect is linear in `a` and `c` and
    /// quadratic in `b`, so it vanishes identically iff it vanishes for
    /// basis `a`, `c` and for `b` ranging over basis vectors and pairwise
    /// sums `e_k + e_l`. Returns the first violating triple in that test
    /// order.
    pub fn tortkara_witness(&self) -> Option<TortkaraWitness> {
        let n = self.dim;
        let witness = |a: Vec<Scalar>, b: Vec<Scalar>, c: Vec<Scalar>| {
            let defect = self.tortkara_defect(&a, &b, &c);
            if defect.iter().all(|s| s.is_zero()) {
                None
            } else {
                Some(TortkaraWitness { a, b, c, defect })
            }
        };
        for a in 0..n {
            for b in 0..n {
                for c in a + 1..n {
                    if let Some(w) =
                        witness(self.basis_vector(a), self.basis_vector(b), self.basis_vector(c))
                    {
                        return Some(w);
                    }
                }
            }
        }
        for a in 0..n {
            for (k, l) in pairs(n) {
                let mut b = self.basis_vector(k);
                b[l] = self.field.one();
                for c in a + 1..n {
                    if let Some(w) = witness(self.basis_vector(a), b.clone(), self.basis_vector(c))
                    {
                        return Some(w);
                    }
                }
            }
        }
        None
    }

    pub fn is_tortkara(&self) -> bool {
        self.tortkara_witness().is_none()
    }

    /// Extends by `k` trivial one-dimensional summands.
    pub fn direct_sum_with_trivial(&self, k: usize) -> Algebra {
        let dim = self.dim + k;
        let mut out = Algebra::trivial(dim, self.field).expect("validated field");
        out.name = self.name.clone();
        for (i, j) in pairs(self.dim) {
            let mut coeffs = self.pair_table(i, j).to_vec();
            coeffs.resize(dim, self.field.zero());
            out.table[pair_index(dim, i, j)] = coeffs;
        }
        out
    }

    /// The same algebra expressed in the basis given by the columns of
    /// `p` (an invertible matrix over the same field).
    pub fn change_basis(&self, p: &Matrix) -> Result<Algebra> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: p.rows(),
            });
        }
        let inv = p.inverse().ok_or_else(|| {
            Error::InvalidArgument("change of basis matrix is singular".into())
        })?;
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| (0..self.dim).map(|i| p.get(i, j).clone()).collect())
            .collect();
        let mut out = Algebra::trivial(self.dim, self.field)?;
        for (i, j) in pairs(self.dim) {
            let prod = self.product(&cols[i], &cols[j]);
            out.table[pair_index(self.dim, i, j)] = inv.mat_vec(&prod);
        }
        Ok(out)
    }

    /// A cheap isomorphism invariant: equal signatures are necessary for
    /// isomorphism, so differing ones settle non-isomorphism without any
    /// search.
    pub fn invariant_signature(&self) -> InvariantSignature {
        let chain = self.ideal_powers();
        InvariantSignature {
            power_dims: chain.iter().map(|s| s.dim()).collect(),
            annihilator_dim: self.annihilator().dim(),
            square_dim: chain[1].dim(),
            tortkara: self.is_tortkara(),
        }
    }

    /// Exhaustive isomorphism search over a finite field: enumerates
    /// images of a minimal generating set, propagates products and checks
    /// invertibility plus all product constraints. Only valid over GF(p).
    pub fn find_isomorphism(&self, other: &Algebra) -> Result<Option<Matrix>> {
        self.find_isomorphism_with_bound(other, search::DEFAULT_ENUM_BOUND)
    }

    pub fn find_isomorphism_with_bound(
        &self,
        other: &Algebra,
        bound: u64,
    ) -> Result<Option<Matrix>> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        if self.field == FieldSpec::Rationals {
            return Err(Error::InfiniteSearch);
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let found = search::find_isomorphism(self, other, bound)?;
        if let Some(ref phi) = found {
            // Independent re-verification of the witness.
            assert!(
                is_isomorphism(self, other, phi),
                "search returned a non-isomorphism"
            );
        }
        Ok(found)
    }
}

/// Checks that `phi` is invertible and multiplicative on all basis pairs,
/// as a map from `a` to `b`.
pub fn is_isomorphism(a: &Algebra, b: &Algebra, phi: &Matrix) -> bool {
    if a.dim() != b.dim()
        || a.field() != b.field()
        || phi.rows() != a.dim()
        || phi.cols() != a.dim()
        || phi.field() != a.field()
        || !phi.is_invertible()
    {
        return false;
    }
    let cols: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|j| (0..a.dim()).map(|i| phi.get(i, j).clone()).collect())
        .collect();
    pairs(a.dim()).all(|(i, j)| {
        let lhs = b.product(&cols[i], &cols[j]);
        let rhs = phi.mat_vec(a.pair_table(i, j));
        lhs == rhs
    })
}

/// A concrete failure of the Tortkara identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TortkaraWitness {
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
    pub c: Vec<Scalar>,
    pub defect: Vec<Scalar>,
}

impl fmt::Display for TortkaraWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[Scalar]| {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(i, s)| {
                    if s.is_one() {
                        format!("e{}", i + 1)
                    } else {
                        format!("{}*e{}", s, i + 1)
                    }
                })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        };
        write!(
            f,
            "a = {}, b = {}, c = {}, defect = {}",
            show(&self.a),
            show(&self.b),
            show(&self.c),
            show(&self.defect)
        )
    }
}

/// Isomorphism-invariant fingerprint of an algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantSignature {
    /// Dimensions of the ideal power chain, starting with the algebra
    /// itself and ending at zero (or at the stable term).
    pub power_dims: Vec<usize>,
    pub annihilator_dim: usize,
    pub square_dim: usize,
    pub tortkara: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;
    use proptest::prelude::*;

    pub(crate) fn a3(field: FieldSpec) -> Algebra {
        Algebra::from_unit_products(4, field, &[(1, 2, 3), (1, 3, 4)]).unwrap()
    }

    pub(crate) fn a51(field: FieldSpec) -> Algebra {
        Algebra::from_unit_products(5, field, &[(1, 2, 3), (1, 3, 4), (3, 4, 5)]).unwrap()
    }

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn multiply_basis_products() {
        let a = a3(q());
        let e = |i: usize| a.basis_vector(i);
        assert_eq!(a.multiply(&e(0), &e(1)).unwrap(), e(2));
        assert_eq!(a.multiply(&e(1), &e(0)).unwrap(), e(2).iter().map(|s| -s).collect::<Vec<_>>());
        let b = a51(q());
        assert_eq!(b.multiply(&b.basis_vector(2), &b.basis_vector(3)).unwrap(), b.basis_vector(4));
    }

    #[test]
    fn multiply_rejects_bad_input() {
        let a = a3(q());
        let short = vec![q().one(); 3];
        assert!(a.multiply(&short, &a.basis_vector(0)).is_err());
        let gf = a3(FieldSpec::prime_field(3).unwrap());
        assert!(matches!(
            a.multiply(&gf.basis_vector(0), &a.basis_vector(0)),
            Err(Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn annihilator_examples() {
        let t = Algebra::trivial(4, q()).unwrap();
        assert_eq!(t.annihilator().dim(), 4);

        let ann = a3(q()).annihilator();
        assert_eq!(ann.dim(), 1);
        assert!(ann.contains(&a3(q()).basis_vector(3)));

        let ann5 = a51(q()).annihilator();
        assert_eq!(ann5.dim(), 1);
        assert!(ann5.contains(&a51(q()).basis_vector(4)));
    }

    #[test]
    fn ideal_powers_and_nilpotency() {
        let t = Algebra::trivial(3, q()).unwrap();
        assert_eq!(t.nilpotency_index(), Some(2));

        let a = a3(q());
        let dims: Vec<usize> = a.ideal_powers().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![4, 2, 1, 0]);
        assert_eq!(a.nilpotency_index(), Some(4));

        // The chain of the five-dimensional catalog entry stalls at
        // dimension one before dying.
        let dims5: Vec<usize> = a51(q()).ideal_powers().iter().map(|s| s.dim()).collect();
        assert_eq!(dims5, vec![5, 3, 2, 1, 1, 0]);
        assert_eq!(a51(q()).nilpotency_index(), Some(6));

        // e1 e2 = e2 gives a non-nilpotent anticommutative algebra.
        let bad = Algebra::from_unit_products(2, q(), &[(1, 2, 2)]).unwrap();
        assert_eq!(bad.nilpotency_index(), None);
    }

    #[test]
    fn j_operator_vanishes_on_a3() {
        let a = a3(q());
        let zero = vec![q().zero(); 4];
        assert_eq!(
            a.j_operator(&a.basis_vector(1), &a.basis_vector(0), &a.basis_vector(2)).unwrap(),
            zero
        );
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    assert_eq!(
                        a.j_operator(&a.basis_vector(i), &a.basis_vector(j), &a.basis_vector(k))
                            .unwrap(),
                        zero
                    );
                }
            }
        }
    }

    #[test]
    fn tortkara_check() {
        assert!(Algebra::trivial(4, q()).unwrap().is_tortkara());
        assert!(a3(q()).is_tortkara());

        let w = a51(q()).tortkara_witness().expect("A_{5,1} is not Tortkara");
        let a = a51(q());
        assert_eq!(w.a, a.basis_vector(1));
        assert_eq!(w.b, a.basis_vector(0));
        assert_eq!(w.c, a.basis_vector(2));
        assert_eq!(w.defect, a.basis_vector(4));
    }

    #[test]
    fn direct_sum_pads_with_annihilating_lines() {
        let a5 = a51(q());
        let a6 = a5.direct_sum_with_trivial(1);
        assert_eq!(a6.dim(), 6);
        assert_eq!(a6.annihilator().dim(), 2);
        assert_eq!(a6.pair_table(2, 3)[4], q().one());
        let same = a5.direct_sum_with_trivial(0);
        assert_eq!(same, a5);
    }

    #[test]
    fn signature_of_a3() {
        let sig = a3(q()).invariant_signature();
        assert_eq!(sig.power_dims, vec![4, 2, 1, 0]);
        assert_eq!(sig.annihilator_dim, 1);
        assert_eq!(sig.square_dim, 2);
        assert!(sig.tortkara);
    }

    #[test]
    fn signature_changes_under_padding() {
        let a = a3(q());
        let padded = a.direct_sum_with_trivial(1);
        let (s1, s2) = (a.invariant_signature(), padded.invariant_signature());
        assert_ne!(s1.power_dims[0], s2.power_dims[0]);
        assert_ne!(s1.annihilator_dim, s2.annihilator_dim);
    }

    #[test]
    fn find_isomorphism_identity_and_relabel() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let a = a3(f5);
        let phi = a.find_isomorphism(&a).unwrap().expect("self-isomorphic");
        assert!(is_isomorphism(&a, &a, &phi));

        // Relabel e3 <-> e4: e1 e2 = e4, e1 e4 = e3.
        let mut p = Matrix::zeros(4, 4, f5);
        p.set(0, 0, f5.one());
        p.set(1, 1, f5.one());
        p.set(2, 3, f5.one());
        p.set(3, 2, f5.one());
        let relabeled = a.change_basis(&p).unwrap();
        let phi = a.find_isomorphism(&relabeled).unwrap().expect("isomorphic");
        assert!(is_isomorphism(&a, &relabeled, &phi));
    }

    #[test]
    fn find_isomorphism_rejects_rationals() {
        let a = a3(q());
        assert_eq!(a.find_isomorphism(&a), Err(Error::InfiniteSearch));
    }

    #[test]
    fn tortkara_polarization_agrees_with_brute_force_small() {
        // Exhaustive oracle over all of GF(3)^n for small random tables.
        let f3 = FieldSpec::prime_field(3).unwrap();
        let mut rng = 0x12345u64;
        let mut next = move || {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (rng >> 33) % 3
        };
        for trial in 0..60 {
            let dim = 2 + (trial % 3);
            let mut a = Algebra::trivial(dim, f3).unwrap();
            for (i, j) in pairs(dim) {
                let coeffs: Vec<Scalar> = (0..dim).map(|_| f3.integer(next() as i64)).collect();
                a.set_product(i, j, coeffs).unwrap();
            }
            let total = 3u64.pow(dim as u32);
            let vector = |mut code: u64| -> Vec<Scalar> {
                (0..dim)
                    .map(|_| {
                        let v = f3.integer((code % 3) as i64);
                        code /= 3;
                        v
                    })
                    .collect()
            };
            let mut brute_ok = true;
            'outer: for xa in 0..total {
                for xb in 0..total {
                    for xc in 0..total {
                        let d = a.tortkara_defect(&vector(xa), &vector(xb), &vector(xc));
                        if d.iter().any(|s| !s.is_zero()) {
                            brute_ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            assert_eq!(a.is_tortkara(), brute_ok, "disagreement for table {:?}", a);
        }
    }

    fn arb_gf_algebra(max_dim: usize) -> impl Strategy<Value = Algebra> {
        (2usize..=max_dim, prop::sample::select(vec![3u64, 5]))
            .prop_flat_map(|(dim, p)| {
                let field = FieldSpec::prime_field(p).unwrap();
                let npairs = dim * (dim - 1) / 2;
                prop::collection::vec(0i64..(p as i64), npairs * dim).prop_map(move |vals| {
                    let mut a = Algebra::trivial(dim, field).unwrap();
                    let mut it = vals.into_iter();
                    for (i, j) in pairs(dim) {
                        let coeffs: Vec<Scalar> =
                            (0..dim).map(|_| field.integer(it.next().unwrap())).collect();
                        a.set_product(i, j, coeffs).unwrap();
                    }
                    a
                })
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn multiply_is_anticommutative(a in arb_gf_algebra(4), xs in prop::collection::vec(0i64..5, 8)) {
            let x: Vec<Scalar> = (0..a.dim()).map(|i| a.field().integer(xs[i])).collect();
            let y: Vec<Scalar> = (0..a.dim()).map(|i| a.field().integer(xs[4 + i % 4])).collect();
            let xy = a.multiply(&x, &y).unwrap();
            let yx = a.multiply(&y, &x).unwrap();
            for k in 0..a.dim() {
                prop_assert!((&xy[k] + &yx[k]).is_zero());
            }
            let xx = a.multiply(&x, &x).unwrap();
            prop_assert!(xx.iter().all(|s| s.is_zero()));
        }

        #[test]
        fn annihilator_annihilates(a in arb_gf_algebra(5)) {
            let ann = a.annihilator();
            for v in ann.basis_rows() {
                for j in 0..a.dim() {
                    let prod = a.multiply(&v, &a.basis_vector(j)).unwrap();
                    prop_assert!(prod.iter().all(|s| s.is_zero()));
                }
            }
        }

        #[test]
        fn signature_is_basis_invariant(a in arb_gf_algebra(4), seed in 0u64..10_000) {
            let field = a.field();
            let p = field.characteristic();
            let n = a.dim();
            // Derive a deterministic invertible matrix from the seed.
            let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
            let mut m = Matrix::identity(n, field);
            for _ in 0..16 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let r = (state >> 20) as usize % n;
                let c = (state >> 40) as usize % n;
                let v = (state >> 10) % p;
                if r != c && v != 0 {
                    // Elementary row operation keeps the matrix invertible.
                    for k in 0..n {
                        let val = m.get(r, k) + &(&field.integer(v as i64) * m.get(c, k));
                        m.set(r, k, val);
                    }
                }
            }
            let b = a.change_basis(&m).unwrap();
            prop_assert_eq!(a.invariant_signature(), b.invariant_signature());
        }
    }
}
