//! Embedded subsuperalgebras h ⊆ g and the quotient g/h.
//!
//! A [`SubalgebraEmbedding`] carries a homogeneous spanning basis of h (even
//! vectors first), plus the derived quotient data: a complement basis chosen
//! greedily from the standard basis in declared order, and the exact
//! projection g → g/h in complement coordinates.

use num::traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Homogeneous, LieSuperalgebra, Parity, SubspaceReport};
use crate::linalg::{is_zero_vec, unit_vec, zero_vec, Matrix, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SubalgebraError {
    #[error("spanning vector {index} is not homogeneous (mixed even/odd support)")]
    NotHomogeneous { index: usize },
    #[error("spanning vector {index} is zero")]
    ZeroVector { index: usize },
    #[error("spanning set is rank-deficient (vector {index} depends on the previous ones)")]
    RankDeficient { index: usize },
    #[error("spanning vector {index} has length {got}, expected {expected}")]
    DimensionMismatch { index: usize, got: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraEmbedding {
    vectors: Vec<Homogeneous>,
    span: Subspace,
    /// standard-basis indices spanning the complement, in declared order
    complement: Vec<usize>,
    /// (dim g − dim h) × dim g matrix: coordinates in the complement basis
    projection: Matrix,
}

impl SubalgebraEmbedding {
    /// Builds the embedding from homogeneous spanning vectors. Vectors are
    /// reordered evens-first (stable); duplicates and mixed-parity vectors
    /// are input errors. Bracket closure is not enforced here — run
    /// [`SubalgebraEmbedding::validate`] for that.
    pub fn new(
        alg: &LieSuperalgebra,
        vectors: Vec<Vec<Scalar>>,
    ) -> Result<Self, SubalgebraError> {
        let dim = alg.dim();
        let mut homogeneous = Vec::with_capacity(vectors.len());
        for (index, v) in vectors.into_iter().enumerate() {
            if v.len() != dim {
                return Err(SubalgebraError::DimensionMismatch {
                    index,
                    got: v.len(),
                    expected: dim,
                });
            }
            if is_zero_vec(&v) {
                return Err(SubalgebraError::ZeroVector { index });
            }
            let h = Homogeneous::new(alg, v)
                .map_err(|_| SubalgebraError::NotHomogeneous { index })?;
            homogeneous.push((index, h));
        }
        // evens first, stable
        homogeneous.sort_by_key(|(index, h)| (h.parity.bit(), *index));

        let mut span = Subspace::empty(dim);
        for (index, h) in &homogeneous {
            if !span.insert(h.coords.clone()) {
                return Err(SubalgebraError::RankDeficient { index: *index });
            }
        }

        // greedy complement over the standard basis in declared order
        let mut full = span.clone();
        let mut complement = Vec::new();
        for i in 0..dim {
            if full.insert(unit_vec(dim, i)) {
                complement.push(i);
            }
        }

        // projection: solve [h basis | complement] x = v, keep the tail
        let h_dim = span.dim();
        let q_dim = complement.len();
        let mut basis_cols = Matrix::zeros(dim, h_dim + q_dim);
        for (k, (_, h)) in homogeneous.iter().enumerate() {
            for i in 0..dim {
                basis_cols.set(i, k, h.coords[i].clone());
            }
        }
        for (k, &c) in complement.iter().enumerate() {
            basis_cols.set(c, h_dim + k, Scalar::one());
        }
        let mut projection = Matrix::zeros(q_dim, dim);
        for j in 0..dim {
            let x = basis_cols
                .solve(&unit_vec(dim, j))
                .expect("basis columns span g");
            for k in 0..q_dim {
                if !x[h_dim + k].is_zero() {
                    projection.set(k, j, x[h_dim + k].clone());
                }
            }
        }

        Ok(SubalgebraEmbedding {
            vectors: homogeneous.into_iter().map(|(_, h)| h).collect(),
            span,
            complement,
            projection,
        })
    }

    /// The zero subalgebra.
    pub fn zero(alg: &LieSuperalgebra) -> Self {
        Self::new(alg, Vec::new()).expect("empty spanning set is valid")
    }

    /// h = g.
    pub fn full(alg: &LieSuperalgebra) -> Self {
        let vs = (0..alg.dim()).map(|i| unit_vec(alg.dim(), i)).collect();
        Self::new(alg, vs).expect("standard basis is valid")
    }

    /// h = g_0, the even part.
    pub fn even_part(alg: &LieSuperalgebra) -> Self {
        let vs = (0..alg.n_even()).map(|i| unit_vec(alg.dim(), i)).collect();
        Self::new(alg, vs).expect("even standard basis is valid")
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn codim(&self, alg: &LieSuperalgebra) -> usize {
        alg.dim() - self.dim()
    }

    pub fn basis(&self) -> &[Homogeneous] {
        &self.vectors
    }

    pub fn even_vectors(&self) -> impl Iterator<Item = &Homogeneous> {
        self.vectors.iter().filter(|h| h.parity == Parity::Even)
    }

    pub fn odd_vectors(&self) -> impl Iterator<Item = &Homogeneous> {
        self.vectors.iter().filter(|h| h.parity == Parity::Odd)
    }

    pub fn dim_odd(&self) -> usize {
        self.odd_vectors().count()
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.span.contains(v)
    }

    /// Standard-basis indices of the chosen complement, in declared order.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// Parity of the k-th quotient generator (= parity of its complement
    /// representative).
    pub fn quotient_parity(&self, alg: &LieSuperalgebra, k: usize) -> Parity {
        alg.parity(self.complement[k])
    }

    /// Exact projection g → g/h in complement coordinates.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.apply(v)
    }

    /// Complement representative of quotient coordinates.
    pub fn lift(&self, alg: &LieSuperalgebra, q: &[Scalar]) -> Vec<Scalar> {
        let mut v = zero_vec(alg.dim());
        for (k, &c) in self.complement.iter().enumerate() {
            v[c] = q[k].clone();
        }
        v
    }

    /// Checks bracket closure; each violation carries the offending basis
    /// pair and the residual of the bracket modulo h.
    pub fn validate(&self, alg: &LieSuperalgebra) -> SubalgebraValidationReport {
        let mut violations = Vec::new();
        for (i, u) in self.vectors.iter().enumerate() {
            for (j, v) in self.vectors.iter().enumerate().skip(i) {
                let br = alg.bracket(&u.coords, &v.coords);
                let residual = self.span.reduce(&br);
                if !is_zero_vec(&residual) {
                    violations.push(ClosureViolation { i, j, residual });
                }
            }
        }
        SubalgebraValidationReport { violations }
    }

    /// Largest ideal of g contained in h: the limit of
    /// a_0 = h, a_{k+1} = {X ∈ a_k : [g, X] ⊆ a_k}.
    pub fn largest_ideal_in(&self, alg: &LieSuperalgebra) -> SubspaceReport {
        let dim = alg.dim();
        let mut current = self.span.clone();
        loop {
            if current.dim() == 0 {
                break;
            }
            // parametrize X = Σ ξ_k B_k over the current basis and require
            // [T_g, X] ≡ 0 mod current, for every generator T_g
            let basis = current.basis().to_vec();
            let mut rows = Matrix::zeros(0, basis.len());
            for g in 0..dim {
                let gv = unit_vec(dim, g);
                let reduced: Vec<Vec<Scalar>> = basis
                    .iter()
                    .map(|b| current.reduce(&alg.bracket(&gv, b)))
                    .collect();
                for coord in 0..dim {
                    let mut row = zero_vec(basis.len());
                    let mut nonzero = false;
                    for (k, r) in reduced.iter().enumerate() {
                        if !r[coord].is_zero() {
                            row[k] = r[coord].clone();
                            nonzero = true;
                        }
                    }
                    if nonzero {
                        rows.push_row(row);
                    }
                }
            }
            let next = if rows.rows() == 0 {
                current.clone()
            } else {
                let mut s = Subspace::empty(dim);
                for kv in rows.kernel_basis() {
                    let mut v = zero_vec(dim);
                    for (k, b) in basis.iter().enumerate() {
                        crate::linalg::add_assign_scaled(&mut v, b, &kv[k]);
                    }
                    s.insert(v);
                }
                s
            };
            if next.dim() == current.dim() {
                break;
            }
            current = next;
        }
        SubspaceReport::new(alg, current)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureViolation {
    pub i: usize,
    pub j: usize,
    pub residual: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraValidationReport {
    pub violations: Vec<ClosureViolation>,
}

impl SubalgebraValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}
