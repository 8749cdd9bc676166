//! Structure-constant Lie superalgebras over exact rationals.
//!
//! A [`LieSuperalgebra`] stores an ordered basis (all even generators before
//! all odd ones), a parity bit per generator, and the full bracket table
//! `[T_a, T_b] = Σ_c c_{ab}^c T_c` as sparse rational vectors. Construction
//! only checks shape; the three superalgebra axioms are checked by
//! [`LieSuperalgebra::validate`], which reports every violated identity with
//! a witness.

use std::fmt;

use num::traits::Zero;
use thiserror::Error;

use crate::linalg::{add_assign_scaled, is_zero_vec, unit_vec, zero_vec, Matrix, Subspace};
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Result<Self, AlgebraError> {
        match b {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(AlgebraError::BadParity(b)),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// Parity of a product/bracket of two homogeneous elements.
    pub fn add(self, other: Self) -> Self {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Sparse vector over the basis: sorted by index, no zero coefficients.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse(dim: usize, v: &SparseVec) -> Vec<Scalar> {
    let mut out = zero_vec(dim);
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("parity must be 0 or 1, got {0}")]
    BadParity(u8),
    #[error("even generators must precede odd generators (`{0}` is even but listed after an odd generator)")]
    EvenAfterOdd(String),
    #[error("coefficient vector has length {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}

/// Finite-dimensional Lie superalgebra given by structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieSuperalgebra {
    name: String,
    labels: Vec<String>,
    parities: Vec<Parity>,
    n_even: usize,
    /// brackets[a][b] = [T_a, T_b]
    brackets: Vec<Vec<SparseVec>>,
}

impl LieSuperalgebra {
    /// Builds an algebra from labelled generators and a list of bracket
    /// entries `([T_a, T_b], value)`. Entries may be given in either order;
    /// missing opposites are filled in by super-anticommutativity, while
    /// explicitly given ones are kept verbatim so that a deliberately
    /// corrupted table can still be expressed and then caught by `validate`.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<(String, Parity)>,
        bracket_entries: Vec<(usize, usize, SparseVec)>,
    ) -> Result<Self, AlgebraError> {
        let dim = generators.len();
        let mut labels = Vec::with_capacity(dim);
        let mut parities = Vec::with_capacity(dim);
        let mut seen_odd = false;
        for (label, parity) in generators {
            if labels.contains(&label) {
                return Err(AlgebraError::DuplicateLabel(label));
            }
            match parity {
                Parity::Odd => seen_odd = true,
                Parity::Even if seen_odd => return Err(AlgebraError::EvenAfterOdd(label)),
                Parity::Even => {}
            }
            labels.push(label);
            parities.push(parity);
        }
        let n_even = parities.iter().filter(|p| **p == Parity::Even).count();

        let mut brackets = vec![vec![SparseVec::new(); dim]; dim];
        let mut given = vec![vec![false; dim]; dim];
        for (a, b, terms) in bracket_entries {
            for (i, _) in &terms {
                if *i >= dim {
                    return Err(AlgebraError::DimensionMismatch {
                        got: *i + 1,
                        expected: dim,
                    });
                }
            }
            let mut terms = terms;
            terms.sort_by_key(|(i, _)| *i);
            terms.retain(|(_, c)| !c.is_zero());
            brackets[a][b] = terms;
            given[a][b] = true;
        }
        // fill missing opposites: [T_b, T_a] = -(-1)^{p(a)p(b)} [T_a, T_b]
        for a in 0..dim {
            for b in 0..dim {
                if given[a][b] && !given[b][a] {
                    let sign_flip = parities[a] == Parity::Odd && parities[b] == Parity::Odd;
                    brackets[b][a] = brackets[a][b]
                        .iter()
                        .map(|(i, c)| (*i, if sign_flip { c.clone() } else { -c.clone() }))
                        .collect();
                    given[b][a] = true;
                }
            }
        }

        Ok(LieSuperalgebra {
            name: name.into(),
            labels,
            parities,
            n_even,
            brackets,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn n_even(&self) -> usize {
        self.n_even
    }

    pub fn n_odd(&self) -> usize {
        self.dim() - self.n_even
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Global index of the k-th odd generator.
    pub fn odd_index(&self, k: usize) -> usize {
        self.n_even + k
    }

    /// Bracket of two basis generators.
    pub fn bracket_gens(&self, a: usize, b: usize) -> &SparseVec {
        &self.brackets[a][b]
    }

    /// Bracket of arbitrary coordinate vectors, by bilinear expansion.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let dim = self.dim();
        assert_eq!(u.len(), dim);
        assert_eq!(v.len(), dim);
        let mut out = zero_vec(dim);
        for a in 0..dim {
            if u[a].is_zero() {
                continue;
            }
            for b in 0..dim {
                if v[b].is_zero() {
                    continue;
                }
                let c = &u[a] * &v[b];
                for (i, x) in &self.brackets[a][b] {
                    out[*i] += x * &c;
                }
            }
        }
        out
    }

    /// Matrix of `ad(v) : g -> g`, column `j` holding `[v, T_j]`.
    pub fn ad_matrix(&self, v: &[Scalar]) -> Matrix {
        let dim = self.dim();
        let mut m = Matrix::zeros(dim, dim);
        for j in 0..dim {
            let col = self.bracket(v, &unit_vec(dim, j));
            for i in 0..dim {
                if !col[i].is_zero() {
                    m.set(i, j, col[i].clone());
                }
            }
        }
        m
    }

    /// Checks super-anticommutativity, parity compatibility and the super
    /// Jacobi identity over all basis pairs/triples. Empty report = valid.
    pub fn validate(&self) -> ValidationReport {
        let dim = self.dim();
        let mut violations = Vec::new();

        for a in 0..dim {
            for b in 0..dim {
                // parity: every term of [T_a, T_b] must have parity p(a)+p(b)
                let want = self.parities[a].add(self.parities[b]);
                for (i, _) in &self.brackets[a][b] {
                    if self.parities[*i] != want {
                        violations.push(Violation::ParityMismatch {
                            a,
                            b,
                            term: *i,
                            expected: want,
                        });
                    }
                }
            }
        }

        for a in 0..dim {
            for b in a..dim {
                // [T_a,T_b] + (-1)^{p(a)p(b)} [T_b,T_a] = 0
                let sign_flip =
                    self.parities[a] == Parity::Odd && self.parities[b] == Parity::Odd;
                let mut residual = dense_from_sparse(dim, &self.brackets[a][b]);
                let other = dense_from_sparse(dim, &self.brackets[b][a]);
                for (r, o) in residual.iter_mut().zip(&other) {
                    if sign_flip {
                        *r -= o;
                    } else {
                        *r += o;
                    }
                }
                if !is_zero_vec(&residual) {
                    violations.push(Violation::Anticommutativity { a, b, residual });
                }
            }
        }

        for a in 0..dim {
            for b in a..dim {
                for c in b..dim {
                    let residual = self.jacobi_residual(a, b, c);
                    if !is_zero_vec(&residual) {
                        violations.push(Violation::Jacobi { a, b, c, residual });
                    }
                }
            }
        }

        ValidationReport { violations }
    }

    /// (-1)^{p(a)p(c)} [T_a,[T_b,T_c]] + (-1)^{p(b)p(a)} [T_b,[T_c,T_a]]
    /// + (-1)^{p(c)p(b)} [T_c,[T_a,T_b]]
    fn jacobi_residual(&self, a: usize, b: usize, c: usize) -> Vec<Scalar> {
        let dim = self.dim();
        let pa = self.parities[a].bit();
        let pb = self.parities[b].bit();
        let pc = self.parities[c].bit();
        let mut out = zero_vec(dim);
        let cyclic = [(a, b, c, pa * pc), (b, c, a, pb * pa), (c, a, b, pc * pb)];
        for (x, y, z, exp) in cyclic {
            let inner = self.bracket(&unit_vec(dim, y), &unit_vec(dim, z));
            let outer = self.bracket(&unit_vec(dim, x), &inner);
            let sign = if exp % 2 == 1 { scalar::int(-1) } else { scalar::int(1) };
            add_assign_scaled(&mut out, &outer, &sign);
        }
        out
    }

    /// Same basis and parities, odd-odd brackets zeroed, everything else kept.
    pub fn gr(&self) -> LieSuperalgebra {
        let mut out = self.clone();
        out.name = format!("gr({})", self.name);
        let dim = self.dim();
        for a in 0..dim {
            for b in 0..dim {
                if self.parities[a] == Parity::Odd && self.parities[b] == Parity::Odd {
                    out.brackets[a][b].clear();
                }
            }
        }
        out
    }

    /// `{Z in g_0 : [Z, X] = 0 for all odd X}`, as the exact kernel of the
    /// stacked adjoint maps g_0 -> g.
    pub fn adjoint_kernel_on_odd(&self) -> SubspaceReport {
        let dim = self.dim();
        let ne = self.n_even;
        // rows: one per (odd generator, output coordinate); columns: even coords
        let mut m = Matrix::zeros(0, ne);
        for k in 0..self.n_odd() {
            let x = self.odd_index(k);
            for out_coord in 0..dim {
                let mut row = zero_vec(ne);
                let mut nonzero = false;
                for z in 0..ne {
                    for (i, c) in &self.brackets[z][x] {
                        if *i == out_coord {
                            row[z] = c.clone();
                            nonzero = true;
                        }
                    }
                }
                if nonzero {
                    m.push_row(row);
                }
            }
        }
        let mut vectors = Vec::new();
        if m.rows() == 0 {
            // no constraints: all of g_0
            for z in 0..ne {
                vectors.push(unit_vec(dim, z));
            }
        } else {
            for k in m.kernel_basis() {
                let mut v = zero_vec(dim);
                v[..ne].clone_from_slice(&k);
                vectors.push(v);
            }
        }
        SubspaceReport::new(self, Subspace::from_vectors(dim, &vectors))
    }
}

/// A homogeneous (pure-parity) element of the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homogeneous {
    pub coords: Vec<Scalar>,
    pub parity: Parity,
}

impl Homogeneous {
    pub fn generator(alg: &LieSuperalgebra, i: usize) -> Self {
        Homogeneous {
            coords: unit_vec(alg.dim(), i),
            parity: alg.parity(i),
        }
    }

    /// Infers the parity from the support. Zero vectors count as even;
    /// mixed-parity support is rejected.
    pub fn new(alg: &LieSuperalgebra, coords: Vec<Scalar>) -> Result<Self, MixedParity> {
        if coords.len() != alg.dim() {
            return Err(MixedParity);
        }
        let has_even = coords[..alg.n_even()].iter().any(|x| !x.is_zero());
        let has_odd = coords[alg.n_even()..].iter().any(|x| !x.is_zero());
        match (has_even, has_odd) {
            (true, true) => Err(MixedParity),
            (false, true) => Ok(Homogeneous {
                coords,
                parity: Parity::Odd,
            }),
            _ => Ok(Homogeneous {
                coords,
                parity: Parity::Even,
            }),
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coords)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("vector is not homogeneous (mixed even/odd support)")]
pub struct MixedParity;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Anticommutativity {
        a: usize,
        b: usize,
        residual: Vec<Scalar>,
    },
    ParityMismatch {
        a: usize,
        b: usize,
        term: usize,
        expected: Parity,
    },
    Jacobi {
        a: usize,
        b: usize,
        c: usize,
        residual: Vec<Scalar>,
    },
}

impl Violation {
    pub fn describe(&self, alg: &LieSuperalgebra) -> String {
        match self {
            Violation::Anticommutativity { a, b, .. } => format!(
                "super-anticommutativity fails for ({}, {})",
                alg.label(*a),
                alg.label(*b)
            ),
            Violation::ParityMismatch { a, b, term, expected } => format!(
                "[{}, {}] contains {} of wrong parity (expected {})",
                alg.label(*a),
                alg.label(*b),
                alg.label(*term),
                expected
            ),
            Violation::Jacobi { a, b, c, .. } => format!(
                "super Jacobi identity fails for ({}, {}, {})",
                alg.label(*a),
                alg.label(*b),
                alg.label(*c)
            ),
        }
    }

    /// Witness generator indices involved in the violation.
    pub fn witness(&self) -> Vec<usize> {
        match self {
            Violation::Anticommutativity { a, b, .. } => vec![*a, *b],
            Violation::ParityMismatch { a, b, .. } => vec![*a, *b],
            Violation::Jacobi { a, b, c, .. } => vec![*a, *b, *c],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A subspace of g together with exactly verified structural flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceReport {
    pub basis: Vec<Vec<Scalar>>,
    pub dimension: usize,
    pub is_ideal: bool,
    pub is_subalgebra: bool,
}

impl SubspaceReport {
    pub fn new(alg: &LieSuperalgebra, span: Subspace) -> Self {
        let dim = alg.dim();
        let mut is_subalgebra = true;
        let mut is_ideal = true;
        for u in span.basis() {
            for v in span.basis() {
                if !span.contains(&alg.bracket(u, v)) {
                    is_subalgebra = false;
                }
            }
            for g in 0..dim {
                if !span.contains(&alg.bracket(&unit_vec(dim, g), u)) {
                    is_ideal = false;
                }
            }
        }
        SubspaceReport {
            basis: span.basis().to_vec(),
            dimension: span.dim(),
            is_ideal,
            is_subalgebra,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dimension == 0
    }

    pub fn span(&self, ambient: usize) -> Subspace {
        Subspace::from_vectors(ambient, &self.basis)
    }
}
