//! Generator-image search over finite fields, shared by isomorphism
//! search and automorphism enumeration.
//!
//! A candidate map is determined by the images of a minimal generating
//! set: products propagate the images to a full basis, and the remaining
//! product constraints plus invertibility decide validity. Images are
//! enumerated modulo the annihilator of the target: annihilator
//! components of generator images never appear in any product, so they
//! only matter for invertibility and can be completed exactly afterwards.
//! This keeps the search exhaustive while shrinking the enumerated space.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::fp::{Fp, FpAlgebra, FpMat};
use crate::linalg::Matrix;
use crate::scalar::{FieldSpec, Scalar};

pub const DEFAULT_ENUM_BOUND: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Recipe {
    /// The k-th generator (a standard basis vector of the source).
    Gen(usize),
    /// Product of two earlier elements.
    Prod(usize, usize),
}

/// How the source algebra is rebuilt from generator images.
struct SourcePlan {
    dim: usize,
    recipes: Vec<Recipe>,
    /// Standard basis index of each generator, parallel to `Gen` order.
    gen_basis: Vec<usize>,
    /// Positions in `recipes` holding generators.
    gen_positions: Vec<usize>,
    /// Inverse of the matrix whose columns are the plan elements.
    r_inv: FpMat,
    /// Product constraints `(s, t, coeffs)`: the image of element `s`
    /// times the image of `t` must equal the combination of images given
    /// by `coeffs` (sparse over element positions).
    constraints: Vec<(usize, usize, Vec<(usize, u64)>)>,
    /// Whether every pairwise product lies in the span of the
    /// product-derived elements. When false the annihilator factoring is
    /// disabled and full images are enumerated.
    products_cover: bool,
}

/// Row echelon accumulator for span membership over GF(p).
struct Span {
    fp: Fp,
    width: usize,
    rows: Vec<(usize, Vec<u64>)>, // (pivot column, normalized row)
}

impl Span {
    fn new(width: usize, fp: Fp) -> Span {
        Span {
            fp,
            width,
            rows: Vec::new(),
        }
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c == 0 {
                continue;
            }
            for k in 0..self.width {
                v[k] = self.fp.sub(v[k], self.fp.mul(c, row[k]));
            }
        }
        v
    }

    fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` if independent; returns whether the span grew.
    fn add(&mut self, v: &[u64]) -> bool {
        let mut r = self.reduce(v);
        let Some(pivot) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.fp.inv(r[pivot]);
        if inv != 1 {
            for x in r.iter_mut() {
                *x = self.fp.mul(*x, inv);
            }
        }
        self.rows.push((pivot, r));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

impl SourcePlan {
    fn build(a: &Algebra, fpa: &FpAlgebra) -> SourcePlan {
        let n = a.dim();
        let fp = fpa.fp;
        let square = a.square();
        let square_pivots: Vec<usize> = (0..square.dim())
            .map(|r| {
                square.basis().row(r).iter().position(|s| !s.is_zero()).expect("nonzero row")
            })
            .collect();

        let unit = |i: usize| -> Vec<u64> {
            let mut v = vec![0u64; n];
            v[i] = 1;
            v
        };

        let mut span = Span::new(n, fp);
        let mut recipes: Vec<Recipe> = Vec::new();
        let mut vectors: Vec<Vec<u64>> = Vec::new();
        let mut gen_basis = Vec::new();

        let push_gen = |i: usize,
                            span: &mut Span,
                            recipes: &mut Vec<Recipe>,
                            vectors: &mut Vec<Vec<u64>>,
                            gen_basis: &mut Vec<usize>| {
            let v = unit(i);
            let grew = span.add(&v);
            debug_assert!(grew, "generator candidates must be independent");
            recipes.push(Recipe::Gen(gen_basis.len()));
            gen_basis.push(i);
            vectors.push(v);
        };

        // Basis vectors complementing A^2 generate any nilpotent algebra;
        // the closure below extends the set whenever they do not.
        for i in 0..n {
            if !square_pivots.contains(&i) {
                push_gen(i, &mut span, &mut recipes, &mut vectors, &mut gen_basis);
            }
        }

        while span.dim() < n {
            let mut grew = false;
            let mut s = 0;
            while s < vectors.len() {
                let mut t = s + 1;
                while t < vectors.len() {
                    let prod = fpa.multiply(&vectors[s], &vectors[t]);
                    if span.add(&prod) {
                        recipes.push(Recipe::Prod(s, t));
                        vectors.push(prod);
                        grew = true;
                    }
                    t += 1;
                }
                s += 1;
            }
            if span.dim() == n {
                break;
            }
            if !grew {
                let next = (0..n)
                    .find(|&i| !span.contains(&unit(i)))
                    .expect("span is not full, some unit vector is missing");
                push_gen(next, &mut span, &mut recipes, &mut vectors, &mut gen_basis);
            }
        }

        let r = FpMat::from_columns(&vectors);
        let r_inv = r.inverse(fp).expect("plan elements are independent");

        let gen_positions: Vec<usize> = recipes
            .iter()
            .enumerate()
            .filter(|(_, r)| matches!(r, Recipe::Gen(_)))
            .map(|(pos, _)| pos)
            .collect();

        // Constraint for every pair that is not itself a recipe.
        let recipe_pairs: Vec<(usize, usize)> = recipes
            .iter()
            .filter_map(|r| match r {
                Recipe::Prod(s, t) => Some((*s, *t)),
                Recipe::Gen(_) => None,
            })
            .collect();
        let mut constraints = Vec::new();
        let mut products_cover = true;
        for s in 0..n {
            for t in s + 1..n {
                let prod = fpa.multiply(&vectors[s], &vectors[t]);
                let coeffs_full: Vec<u64> = (0..n)
                    .map(|k| {
                        let mut acc = 0;
                        for c in 0..n {
                            acc = fp.add(acc, fp.mul(r_inv.get(k, c), prod[c]));
                        }
                        acc
                    })
                    .collect();
                for &gpos in &gen_positions {
                    if coeffs_full[gpos] != 0 {
                        products_cover = false;
                    }
                }
                if recipe_pairs.contains(&(s, t)) {
                    continue;
                }
                let sparse: Vec<(usize, u64)> = coeffs_full
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| (k, c))
                    .collect();
                constraints.push((s, t, sparse));
            }
        }

        SourcePlan {
            dim: n,
            recipes,
            gen_basis,
            gen_positions,
            r_inv,
            constraints,
            products_cover,
        }
    }
}

/// Target-side data: the annihilator split used for image enumeration.
struct TargetPlan {
    fpb: FpAlgebra,
    /// RREF basis of the correction space (the target annihilator, or
    /// empty when factoring is disabled).
    d_basis: Vec<Vec<u64>>,
    /// Coordinates spanning a complement of the correction space.
    c_coords: Vec<usize>,
}

impl TargetPlan {
    fn build(b: &Algebra, factoring: bool) -> TargetPlan {
        let fpb = FpAlgebra::from_algebra(b);
        let n = b.dim();
        let (d_basis, pivots): (Vec<Vec<u64>>, Vec<usize>) = if factoring {
            let ann = b.annihilator();
            let rows: Vec<Vec<u64>> = ann
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
            let pivots = rows
                .iter()
                .map(|r| r.iter().position(|&x| x != 0).expect("nonzero row"))
                .collect();
            (rows, pivots)
        } else {
            (Vec::new(), Vec::new())
        };
        let c_coords = (0..n).filter(|i| !pivots.contains(i)).collect();
        TargetPlan {
            fpb,
            d_basis,
            c_coords,
        }
    }
}

struct Candidate<'a> {
    source: &'a SourcePlan,
    target: &'a TargetPlan,
    /// Whether each generator is forced to have zero complement part
    /// (its source basis vector annihilates everything).
    forced_zero: Vec<bool>,
}

impl Candidate<'_> {
    /// Propagates generator images through the recipes; `None` when a
    /// constraint fails.
    fn propagate(&self, gen_images: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
        let fpb = &self.target.fpb;
        let fp = fpb.fp;
        let mut w: Vec<Vec<u64>> = Vec::with_capacity(self.source.dim);
        for recipe in &self.source.recipes {
            let v = match recipe {
                Recipe::Gen(k) => gen_images[*k].clone(),
                Recipe::Prod(s, t) => fpb.multiply(&w[*s], &w[*t]),
            };
            w.push(v);
        }
        for (s, t, coeffs) in &self.source.constraints {
            let lhs = fpb.multiply(&w[*s], &w[*t]);
            let mut rhs = vec![0u64; self.source.dim];
            for &(k, c) in coeffs {
                for i in 0..self.source.dim {
                    rhs[i] = fp.add(rhs[i], fp.mul(c, w[k][i]));
                }
            }
            if lhs != rhs {
                return None;
            }
        }
        Some(w)
    }

    /// Assembles the matrix of the map sending plan element `k` to column
    /// `k` of `w`, in the standard basis.
    fn assemble(&self, w: &[Vec<u64>]) -> FpMat {
        let fp = self.target.fpb.fp;
        FpMat::from_columns(w).mat_mul(&self.source.r_inv, fp)
    }
}

fn vectors_on_coords(coords: &[usize], n: usize, p: u64, digits: &[u64]) -> Vec<u64> {
    let mut v = vec![0u64; n];
    for (k, &c) in coords.iter().enumerate() {
        v[c] = digits[k] % p;
    }
    v
}

/// Odometer over `len` base-`p` digits.
struct Odometer {
    digits: Vec<u64>,
    p: u64,
    done: bool,
}

impl Odometer {
    fn new(len: usize, p: u64) -> Odometer {
        Odometer {
            digits: vec![0; len],
            p,
            done: false,
        }
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.p {
                return;
            }
            *d = 0;
        }
        self.done = true;
    }
}

fn checked_pow(p: u64, e: u32) -> u128 {
    (p as u128).saturating_pow(e)
}

pub(crate) fn find_isomorphism(a: &Algebra, b: &Algebra, bound: u64) -> Result<Option<Matrix>> {
    let fpa = FpAlgebra::from_algebra(a);
    let source = SourcePlan::build(a, &fpa);
    let target = TargetPlan::build(b, source.products_cover);
    let p = fpa.fp.p;

    let ann_a = a.annihilator();
    let forced_zero: Vec<bool> = source
        .gen_basis
        .iter()
        .map(|&i| source.products_cover && ann_a.contains(&a.basis_vector(i)))
        .collect();
    let free_count = forced_zero.iter().filter(|f| !**f).count();

    let space = checked_pow(p, (target.c_coords.len() * free_count) as u32);
    if space > bound as u128 {
        return Err(Error::SearchBoundExceeded {
            needed: space,
            bound: bound as u128,
        });
    }

    let cand = Candidate {
        source: &source,
        target: &target,
        forced_zero,
    };
    let n = source.dim;
    let clen = target.c_coords.len();
    let gens = source.gen_basis.len();
    let mut odo = Odometer::new(clen * free_count, p);
    loop {
        let mut gen_images = Vec::with_capacity(gens);
        let mut offset = 0;
        for forced in &cand.forced_zero {
            if *forced {
                gen_images.push(vec![0u64; n]);
            } else {
                let digits = &odo.digits[offset..offset + clen];
                gen_images.push(vectors_on_coords(&target.c_coords, n, p, digits));
                offset += clen;
            }
        }
        if let Some(w) = cand.propagate(&gen_images) {
            if let Some(full) = complete_columns(&source, &target, &w) {
                let phi = cand.assemble(&full);
                return Ok(Some(phi.to_matrix(FieldSpec::PrimeField(p))));
            }
        }
        odo.advance();
        if odo.done {
            return Ok(None);
        }
    }
}

/// Chooses annihilator corrections for the generator columns so that the
/// assembled map is invertible, or returns `None` when no choice works.
///
/// The product columns span some `S0`; modulo `S0` each generator column
/// ranges over a coset of the correction space `D`. A completion exists
/// exactly when `S0 + D + span(images)` is everything, and in that case
/// an explicit choice falls out of the kernel of the reduced images.
fn complete_columns(
    source: &SourcePlan,
    target: &TargetPlan,
    w: &[Vec<u64>],
) -> Option<Vec<Vec<u64>>> {
    let fp = target.fpb.fp;
    let n = source.dim;
    let m = source.gen_positions.len();

    let mut s0 = Span::new(n, fp);
    for (pos, vec) in w.iter().enumerate() {
        if !source.gen_positions.contains(&pos) && !s0.add(vec) {
            return None; // product columns must be independent
        }
    }
    debug_assert_eq!(s0.dim(), n - m);

    // Echelonize the correction space modulo S0, remembering how each
    // echelon row combines the original D basis.
    let d = &target.d_basis;
    let mut abar: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new(); // (pivot, row, combo)
    for (idx, dv) in d.iter().enumerate() {
        let mut row = s0.reduce(dv);
        let mut combo = vec![0u64; d.len()];
        combo[idx] = 1;
        for (pivot, erow, ecombo) in &abar {
            let c = row[*pivot];
            if c == 0 {
                continue;
            }
            for k in 0..n {
                row[k] = fp.sub(row[k], fp.mul(c, erow[k]));
            }
            for k in 0..d.len() {
                combo[k] = fp.sub(combo[k], fp.mul(c, ecombo[k]));
            }
        }
        if let Some(pivot) = row.iter().position(|&x| x != 0) {
            let inv = fp.inv(row[pivot]);
            for x in row.iter_mut() {
                *x = fp.mul(*x, inv);
            }
            for x in combo.iter_mut() {
                *x = fp.mul(*x, inv);
            }
            abar.push((pivot, row, combo));
            abar.sort_by_key(|(p, _, _)| *p);
        }
    }

    // Split each reduced generator image into its component along the
    // echelonized corrections and the residue.
    let reduce_by_abar = |v: &[u64]| -> (Vec<u64>, Vec<u64>) {
        let mut res = v.to_vec();
        let mut coefs = vec![0u64; abar.len()];
        for (k, (pivot, row, _)) in abar.iter().enumerate() {
            let c = res[*pivot];
            if c == 0 {
                continue;
            }
            coefs[k] = c;
            for i in 0..n {
                res[i] = fp.sub(res[i], fp.mul(c, row[i]));
            }
        }
        (res, coefs)
    };

    let mut residues = Vec::with_capacity(m); // components outside S0 + corrections
    let mut abar_coefs = Vec::with_capacity(m);
    for &pos in &source.gen_positions {
        let ubar = s0.reduce(&w[pos]);
        let (res, coefs) = reduce_by_abar(&ubar);
        residues.push(res);
        abar_coefs.push(coefs);
    }

    // The residues live in a complement of dimension m - |abar|; a
    // completion exists exactly when they span it.
    let residue_mat = FpMat::from_columns(&residues);
    if residue_mat.rank(fp) + abar.len() < m {
        return None;
    }

    // Kernel of the residue matrix, as RREF rows over F^m. Its pivot
    // positions receive distinct echelon rows of the correction space.
    let kernel = fp_kernel_rows(&residue_mat, fp);
    debug_assert_eq!(kernel.rows, abar.len());
    let kernel_pivots: Vec<usize> = (0..kernel.rows)
        .map(|r| (0..m).find(|&c| kernel.get(r, c) != 0).expect("nonzero kernel row"))
        .collect();

    // Correction combo per generator: cancel the existing component along
    // the corrections, then add a distinct echelon row at each kernel
    // pivot.
    let mut full = w.to_vec();
    for (gi, &pos) in source.gen_positions.iter().enumerate() {
        let mut combo = vec![0u64; d.len()];
        for (k, coef) in abar_coefs[gi].iter().enumerate() {
            if *coef == 0 {
                continue;
            }
            for (c, val) in abar[k].2.iter().enumerate() {
                combo[c] = fp.sub(combo[c], fp.mul(*coef, *val));
            }
        }
        if let Some(j) = kernel_pivots.iter().position(|&kp| kp == gi) {
            for (c, val) in abar[j].2.iter().enumerate() {
                combo[c] = fp.add(combo[c], *val);
            }
        }
        for (c, coef) in combo.iter().enumerate() {
            if *coef == 0 {
                continue;
            }
            for i in 0..n {
                full[pos][i] = fp.add(full[pos][i], fp.mul(*coef, d[c][i]));
            }
        }
    }

    let assembled = FpMat::from_columns(&full);
    debug_assert!(assembled.is_invertible(fp));
    if assembled.is_invertible(fp) {
        Some(full)
    } else {
        None
    }
}

/// Right null space of `mat` as a matrix of RREF rows.
fn fp_kernel_rows(mat: &FpMat, fp: Fp) -> FpMat {
    let cols = mat.cols;
    let mut rref = mat.clone();
    let pivots = rref.rref_in_place(fp);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = FpMat::zeros(free.len(), cols);
    for (row, &f) in free.iter().enumerate() {
        out.set(row, f, 1);
        for (r, &pc) in pivots.iter().enumerate() {
            out.set(row, pc, fp.neg(rref.get(r, f)));
        }
    }
    out.rref_in_place(fp);
    out
}

/// Enumerates every automorphism, feeding each matrix to `emit`.
/// The total candidate space is `p^(dim * generators)`, checked against
/// `bound` before any work starts.
pub(crate) fn enumerate_automorphisms(
    a: &Algebra,
    bound: u64,
    mut emit: impl FnMut(&FpMat),
) -> Result<()> {
    let fpa = FpAlgebra::from_algebra(a);
    let source = SourcePlan::build(a, &fpa);
    let target = TargetPlan::build(a, source.products_cover);
    let p = fpa.fp.p;
    let fp = fpa.fp;
    let n = source.dim;
    let gens = source.gen_basis.len();

    let space = checked_pow(p, (n * gens) as u32);
    if space > bound as u128 {
        return Err(Error::SearchBoundExceeded {
            needed: space,
            bound: bound as u128,
        });
    }

    let ann_a = a.annihilator();
    let forced_zero: Vec<bool> = source
        .gen_basis
        .iter()
        .map(|&i| source.products_cover && ann_a.contains(&a.basis_vector(i)))
        .collect();
    let free_count = forced_zero.iter().filter(|f| !**f).count();
    let cand = Candidate {
        source: &source,
        target: &target,
        forced_zero,
    };

    let clen = target.c_coords.len();
    let dlen = target.d_basis.len();
    let mut odo = Odometer::new(clen * free_count, p);
    loop {
        let mut gen_images = Vec::with_capacity(gens);
        let mut offset = 0;
        for forced in &cand.forced_zero {
            if *forced {
                gen_images.push(vec![0u64; n]);
            } else {
                let digits = &odo.digits[offset..offset + clen];
                gen_images.push(vectors_on_coords(&target.c_coords, n, p, digits));
                offset += clen;
            }
        }
        if let Some(w) = cand.propagate(&gen_images) {
            // Expand every annihilator correction of the generator columns.
            let mut corr = Odometer::new(dlen * gens, p);
            loop {
                let mut full = w.clone();
                for (gi, &pos) in source.gen_positions.iter().enumerate() {
                    let digits = &corr.digits[gi * dlen..(gi + 1) * dlen];
                    for (k, &c) in digits.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        for i in 0..n {
                            full[pos][i] = fp.add(full[pos][i], fp.mul(c, target.d_basis[k][i]));
                        }
                    }
                }
                let mat = FpMat::from_columns(&full);
                if mat.is_invertible(fp) {
                    emit(&cand.assemble(&full));
                }
                corr.advance();
                if corr.done {
                    break;
                }
            }
        }
        odo.advance();
        if odo.done {
            return Ok(());
        }
    }
}
