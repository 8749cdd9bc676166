//! Dense exact-rational linear algebra.
//!
//! Everything downstream (axiom validation, kernels of stacked adjoint maps,
//! invariant subspaces, the affine grading systems) reduces to row reduction
//! over the rationals. Pivoting is always "first nonzero row, columns in
//! declared order", so every basis this module produces is the reduced
//! echelon basis for the caller's fixed coordinate order — identical inputs
//! give structurally identical outputs.

use num::traits::{One, Zero};

use crate::scalar::Scalar;

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_assign_scaled(dst: &mut [Scalar], src: &[Scalar], c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += s * c;
        }
    }
}

pub fn scale_vec(v: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| x * c).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            for (j, x) in r.into_iter().enumerate() {
                m.data[i * cols + j] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, r: Vec<Scalar>) {
        assert_eq!(r.len(), self.cols);
        self.data.extend(r);
        self.rows += 1;
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let mut out = zero_vec(self.rows);
        for i in 0..self.rows {
            let mut acc = Scalar::zero();
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    acc += a * &v[j];
                }
            }
            out[i] = acc;
        }
        out
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0; // next pivot row
        for col in 0..self.cols {
            let Some(piv) = (pr..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(pr, piv);
            let inv = {
                let p = self.at(pr, col).clone();
                Scalar::one() / p
            };
            for j in col..self.cols {
                let x = self.at(pr, j).clone();
                if !x.is_zero() {
                    self.set(pr, j, x * &inv);
                }
            }
            for r in 0..self.rows {
                if r == pr {
                    continue;
                }
                let f = self.at(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let x = self.at(pr, j).clone();
                    if !x.is_zero() {
                        let cur = self.at(r, j).clone();
                        self.set(r, j, cur - x * &f);
                    }
                }
            }
            pivots.push(col);
            pr += 1;
            if pr == self.rows {
                break;
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : Ax = 0}`, one vector per free column, in column order.
    /// The free coordinate of each basis vector is 1.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &p in &pivots {
                s[p] = true;
            }
            s
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = zero_vec(self.cols);
            v[free] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                let c = m.at(r, free);
                if !c.is_zero() {
                    v[p] = -c.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One exact solution of `Ax = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = zero_vec(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }
}

/// Sorted sparse row: (column, coefficient) with no zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

fn sparse_sub_scaled(a: &SparseRow, b: &SparseRow, c: &Scalar) -> SparseRow {
    // a − c·b, merging sorted entries
    let mut out = SparseRow::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let pick_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let pick_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if pick_a {
            out.push(a[i].clone());
            i += 1;
        } else if pick_b {
            let v = -(&b[j].1 * c);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 - &b[j].1 * c;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Exact solution set of a sparse affine system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    /// One solution with all free coordinates zero; `None` when inconsistent.
    pub particular: Option<Vec<Scalar>>,
    /// Reduced-echelon kernel basis of the homogeneous system, one vector
    /// per free column in column order.
    pub kernel: Vec<Vec<Scalar>>,
}

/// Solves `A x = b` for a sparse `A` given as rows of (column, value)
/// entries over `cols` unknowns. Fraction-free in structure only — the
/// arithmetic is plain exact rational elimination with sparse rows, pivots
/// in ascending column order.
pub fn solve_sparse_affine(
    cols: usize,
    rows: Vec<SparseRow>,
    rhs: Vec<Scalar>,
) -> AffineSolution {
    assert_eq!(rows.len(), rhs.len());
    let aug = cols; // augmented column index
    let mut pivot_rows: std::collections::BTreeMap<usize, SparseRow> =
        std::collections::BTreeMap::new();

    for (mut r, b) in rows.into_iter().zip(rhs) {
        debug_assert!(r.windows(2).all(|w| w[0].0 < w[1].0), "unsorted sparse row");
        if !b.is_zero() {
            r.push((aug, b));
        }
        // reduce against existing pivots
        loop {
            let hit = r
                .iter()
                .find(|(c, _)| pivot_rows.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            match hit {
                Some((c, v)) => r = sparse_sub_scaled(&r, &pivot_rows[&c], &v),
                None => break,
            }
        }
        if r.is_empty() {
            continue;
        }
        // normalize on the leading column
        let lead = r[0].0;
        let inv = Scalar::one() / r[0].1.clone();
        for (_, v) in r.iter_mut() {
            *v *= &inv;
        }
        // eliminate the new pivot from the stored rows
        let updates: Vec<usize> = pivot_rows
            .iter()
            .filter(|(_, row)| row.iter().any(|(c, _)| *c == lead))
            .map(|(p, _)| *p)
            .collect();
        for p in updates {
            let row = pivot_rows[&p].clone();
            let coef = row
                .iter()
                .find(|(c, _)| *c == lead)
                .map(|(_, v)| v.clone())
                .expect("filtered above");
            pivot_rows.insert(p, sparse_sub_scaled(&row, &r, &coef));
        }
        pivot_rows.insert(lead, r);
    }

    if pivot_rows.contains_key(&aug) {
        // a pivot in the right-hand column: inconsistent; the kernel of the
        // homogeneous part is still well-defined
        let mut hom = pivot_rows;
        hom.remove(&aug);
        return AffineSolution {
            particular: None,
            kernel: kernel_from_pivots(cols, &hom),
        };
    }

    let mut particular = zero_vec(cols);
    for (&p, row) in &pivot_rows {
        if let Some((_, v)) = row.iter().find(|(c, _)| *c == aug) {
            particular[p] = v.clone();
        }
    }
    AffineSolution {
        particular: Some(particular),
        kernel: kernel_from_pivots(cols, &pivot_rows),
    }
}

fn kernel_from_pivots(
    cols: usize,
    pivot_rows: &std::collections::BTreeMap<usize, SparseRow>,
) -> Vec<Vec<Scalar>> {
    let mut kernel = Vec::new();
    for free in 0..cols {
        if pivot_rows.contains_key(&free) {
            continue;
        }
        let mut v = zero_vec(cols);
        v[free] = Scalar::one();
        for (&p, row) in pivot_rows {
            if let Some((_, c)) = row.iter().find(|(c, _)| *c == free) {
                v[p] = -c.clone();
            }
        }
        kernel.push(v);
    }
    kernel
}

/// A subspace of Q^n kept in reduced echelon form. Structural equality of
/// two `Subspace`s with the same ambient dimension is subspace equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn empty(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        let mut s = Subspace::empty(ambient);
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Reduced echelon basis, deterministic for a given span.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Residual of `v` after eliminating against the stored rows.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !c.is_zero() {
                let neg = -c;
                add_assign_scaled(&mut v, row, &neg);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v` to the span. Returns true if the dimension grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Scalar::one() / r[p].clone();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        // eliminate the new pivot from existing rows, keep rows sorted by pivot
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if !c.is_zero() {
                let neg = -c;
                add_assign_scaled(row, &r, &neg);
            }
        }
        let pos = self.pivots.iter().position(|&q| q > p).unwrap_or(self.pivots.len());
        self.pivots.insert(pos, p);
        self.rows.insert(pos, r);
        true
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        // columns: our basis vectors then theirs; kernel elements give
        // combinations landing in both spans
        let a = self.dim();
        let b = other.dim();
        if a == 0 || b == 0 {
            return Subspace::empty(self.ambient);
        }
        let mut m = Matrix::zeros(self.ambient, a + b);
        for (k, row) in self.rows.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, k, row[i].clone());
            }
        }
        for (k, row) in other.rows.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, a + k, -row[i].clone());
            }
        }
        let mut out = Subspace::empty(self.ambient);
        for kv in m.kernel_basis() {
            let mut v = zero_vec(self.ambient);
            for (k, row) in self.rows.iter().enumerate() {
                add_assign_scaled(&mut v, row, &kv[k]);
            }
            out.insert(v);
        }
        out
    }
}
