//! The exterior algebra Λ(g₁*) of left-invariant coefficients and the
//! modules Λ(g₁*)⊗V for V ∈ {g, g/h}.
//!
//! Signs are pinned once by the determinant pairing
//! ⟨εⁱ¹∧⋯∧εⁱᵖ, X_{j₁}∧⋯∧X_{jₚ}⟩ = det(δⁱⱼ); with both sides in increasing
//! index order this makes dual monomials pair to 1. A generator Y of g acts
//! on a coefficient f by
//!
//! ```text
//! ⟨Y·f, ω⟩ = (−1)^{p(Y)} · ⟨f, γ(ω)·Y at the identity⟩
//! ```
//!
//! computed through PBW reduction ([`pair_at_identity`]): decompose
//! γ(ω)·Y over the basis {z·γ(ω′)} and keep the constant-even-part entries.
//! The module action adds the bracket action on the target factor with the
//! usual Koszul sign. There is no closed coadjoint-type formula anywhere;
//! the representation-property test below is what guards this reduction.

use std::collections::BTreeMap;

use num::traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Homogeneous, LieSuperalgebra, Parity};
use crate::linalg::{
    solve_sparse_affine, unit_vec, zero_vec, AffineSolution, SparseRow, Subspace,
};
use crate::mask::{self, OddMask};
use crate::pbw::{Envelope, PBWElement};
use crate::scalar::{self, Scalar};
use crate::subalgebra::SubalgebraEmbedding;

/// Element of Λ(g₁*): sparse coefficients over odd index sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExteriorPoly {
    terms: BTreeMap<OddMask, Scalar>,
}

impl ExteriorPoly {
    pub fn zero() -> Self {
        ExteriorPoly::default()
    }

    pub fn one() -> Self {
        ExteriorPoly::monomial(0, Scalar::one())
    }

    /// εⁱ for the k-th odd generator.
    pub fn generator(k: usize) -> Self {
        ExteriorPoly::monomial(1u64 << k, Scalar::one())
    }

    pub fn monomial(mask: OddMask, c: Scalar) -> Self {
        let mut p = ExteriorPoly::zero();
        p.add_term(mask, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OddMask, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mask: OddMask) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, mask: OddMask, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(mask).or_insert_with(Scalar::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add_scaled(&mut self, other: &ExteriorPoly, c: &Scalar) {
        for (m, x) in &other.terms {
            self.add_term(*m, x * c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> ExteriorPoly {
        let mut out = ExteriorPoly::zero();
        out.add_scaled(self, c);
        out
    }

    /// Component of exterior degree `p`.
    pub fn degree_part(&self, p: usize) -> ExteriorPoly {
        let mut out = ExteriorPoly::zero();
        for (m, c) in &self.terms {
            if mask::popcount(*m) == p {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    pub fn wedge(&self, other: &ExteriorPoly) -> ExteriorPoly {
        let mut out = ExteriorPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((m, s)) = mask::wedge(*a, *b) {
                    out.add_term(m, ca * cb * scalar::int(s as i64));
                }
            }
        }
        out
    }

    /// Parity of a term is its mask popcount mod 2; `None` when mixed.
    pub fn parity(&self) -> Option<Parity> {
        let mut parity = None;
        for m in self.terms.keys() {
            let p = if mask::popcount(*m) % 2 == 0 {
                Parity::Even
            } else {
                Parity::Odd
            };
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(parity.unwrap_or(Parity::Even))
    }
}

/// Which module the target factor lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetSpace {
    /// V = g, indexed by the generators of g.
    Full,
    /// V = g/h, indexed by the complement basis of a subalgebra embedding.
    Quotient,
}

/// Element of Λ(g₁*)⊗V: sparse coefficients over (odd index set, target
/// generator) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorField {
    pub space: TargetSpace,
    pub target_dim: usize,
    terms: BTreeMap<(OddMask, usize), Scalar>,
}

impl ExteriorField {
    pub fn zero(space: TargetSpace, target_dim: usize) -> Self {
        ExteriorField {
            space,
            target_dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(OddMask, usize), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mask: OddMask, target: usize) -> Scalar {
        self.terms
            .get(&(mask, target))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, mask: OddMask, target: usize, c: Scalar) {
        assert!(target < self.target_dim, "target index out of range");
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry((mask, target)).or_insert_with(Scalar::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&(mask, target));
        }
    }

    pub fn add_scaled(&mut self, other: &ExteriorField, c: &Scalar) {
        assert_eq!(self.space, other.space);
        assert_eq!(self.target_dim, other.target_dim);
        for ((m, t), x) in &other.terms {
            self.add_term(*m, *t, x * c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> ExteriorField {
        let mut out = ExteriorField::zero(self.space, self.target_dim);
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &ExteriorField) -> ExteriorField {
        let mut out = self.clone();
        out.add_scaled(other, &scalar::int(-1));
        out
    }

    /// Coefficient polynomial in front of the given target generator.
    pub fn component(&self, target: usize) -> ExteriorPoly {
        let mut out = ExteriorPoly::zero();
        for ((m, t), c) in &self.terms {
            if *t == target {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    pub fn render(&self, alg: &LieSuperalgebra, h: Option<&SubalgebraEmbedding>) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let label = |t: usize| -> String {
            match self.space {
                TargetSpace::Full => alg.label(t).to_string(),
                TargetSpace::Quotient => match h {
                    Some(h) => format!("[{}]", alg.label(h.complement()[t])),
                    None => format!("q{t}"),
                },
            }
        };
        let mut parts = Vec::new();
        for ((m, t), c) in &self.terms {
            let eps = if *m == 0 {
                "1".to_string()
            } else {
                mask::bits(*m)
                    .map(|k| format!("ε{}", k + 1))
                    .collect::<Vec<_>>()
                    .join("∧")
            };
            parts.push(format!("({})·{}⊗{}", scalar::format(c), eps, label(*t)));
        }
        parts.join(" + ")
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("field is tagged {field:?} but the action was requested in {requested:?}")]
    SpaceMismatch {
        field: TargetSpace,
        requested: TargetSpace,
    },
    #[error("field target dimension {got} does not match the module ({expected})")]
    TargetDimMismatch { got: usize, expected: usize },
}

/// The module the action runs in: full target g, or g/h for an embedding.
#[derive(Clone, Copy)]
pub enum ModuleSpace<'h> {
    Full,
    Quotient(&'h SubalgebraEmbedding),
}

impl<'h> ModuleSpace<'h> {
    fn tag(&self) -> TargetSpace {
        match self {
            ModuleSpace::Full => TargetSpace::Full,
            ModuleSpace::Quotient(_) => TargetSpace::Quotient,
        }
    }

    fn target_dim(&self, alg: &LieSuperalgebra) -> usize {
        match self {
            ModuleSpace::Full => alg.dim(),
            ModuleSpace::Quotient(h) => h.codim(alg),
        }
    }

    /// Representative of the t-th target generator inside g.
    fn representative(&self, alg: &LieSuperalgebra, t: usize) -> Vec<Scalar> {
        match self {
            ModuleSpace::Full => unit_vec(alg.dim(), t),
            ModuleSpace::Quotient(h) => unit_vec(alg.dim(), h.complement()[t]),
        }
    }

    fn target_parity(&self, alg: &LieSuperalgebra, t: usize) -> Parity {
        match self {
            ModuleSpace::Full => alg.parity(t),
            ModuleSpace::Quotient(h) => h.quotient_parity(alg, t),
        }
    }

    /// Image of a g-vector in target coordinates (projection for g/h).
    fn push(&self, alg: &LieSuperalgebra, v: &[Scalar]) -> Vec<Scalar> {
        match self {
            ModuleSpace::Full => v.to_vec(),
            ModuleSpace::Quotient(h) => {
                let _ = alg;
                h.project(v)
            }
        }
    }

    fn check(&self, alg: &LieSuperalgebra, w: &ExteriorField) -> Result<(), ModuleError> {
        if w.space != self.tag() {
            return Err(ModuleError::SpaceMismatch {
                field: w.space,
                requested: self.tag(),
            });
        }
        let expected = self.target_dim(alg);
        if w.target_dim != expected {
            return Err(ModuleError::TargetDimMismatch {
                got: w.target_dim,
                expected,
            });
        }
        Ok(())
    }
}

/// Evaluation of a left-invariant coefficient against an enveloping-algebra
/// element at the identity: decompose `u = Σ c·z·γ(ω)` and return
/// `Σ c·aug(z)·⟨f, ω⟩`.
pub fn pair_at_identity(env: &Envelope, f: &ExteriorPoly, u: &PBWElement) -> Scalar {
    let mut out = Scalar::zero();
    for (z, m, c) in env.decompose_left_even(u) {
        if z.is_unit() {
            let fc = f.coefficient(m);
            if !fc.is_zero() {
                out += fc * c;
            }
        }
    }
    out
}

/// The action of one homogeneous element of g on Λ(g₁*), tabulated over all
/// masks. Cached per (algebra, Y); applying it is a sparse matrix-vector
/// product.
pub struct FieldAction {
    /// rows[ω] = entries (ω′, c) with ⟨Y·f, ω⟩ += c·⟨f, ω′⟩
    rows: Vec<Vec<(OddMask, Scalar)>>,
    /// transposed: cols[ω′] = entries (ω, c)
    cols: Vec<Vec<(OddMask, Scalar)>>,
}

impl FieldAction {
    pub fn new(env: &Envelope, y: &Homogeneous) -> Self {
        let m = env.algebra().n_odd();
        let size = 1usize << m;
        let sign = if y.parity == Parity::Odd {
            scalar::int(-1)
        } else {
            Scalar::one()
        };
        let mut rows = vec![Vec::new(); size];
        let mut cols = vec![Vec::new(); size];
        for omega in 0..size {
            let mut acc: BTreeMap<OddMask, Scalar> = BTreeMap::new();
            for (g, c) in y.coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (m_in, v) in &env.generator_action_rows(g)[omega] {
                    *acc.entry(*m_in).or_insert_with(Scalar::zero) += v * c;
                }
            }
            for (m_in, v) in acc {
                if v.is_zero() {
                    continue;
                }
                let v = v * &sign;
                rows[omega].push((m_in, v.clone()));
                cols[m_in as usize].push((omega as u64, v));
            }
        }
        FieldAction { rows, cols }
    }

    pub fn apply(&self, f: &ExteriorPoly) -> ExteriorPoly {
        let mut out = ExteriorPoly::zero();
        for (omega, entries) in self.rows.iter().enumerate() {
            let mut acc = Scalar::zero();
            for (m_in, c) in entries {
                let fc = f.coefficient(*m_in);
                if !fc.is_zero() {
                    acc += fc * c;
                }
            }
            out.add_term(omega as u64, acc);
        }
        out
    }

    /// The table of a linear combination Σ c·Y from the tables of the
    /// parts; the action is linear in Y within a fixed parity.
    pub fn combine(parts: &[(Scalar, &FieldAction)]) -> FieldAction {
        let size = parts
            .first()
            .map(|(_, fa)| fa.rows.len())
            .unwrap_or_default();
        let mut rows = vec![Vec::new(); size];
        let mut cols = vec![Vec::new(); size];
        for omega in 0..size {
            let mut acc: BTreeMap<OddMask, Scalar> = BTreeMap::new();
            for (c, fa) in parts {
                if c.is_zero() {
                    continue;
                }
                assert_eq!(fa.rows.len(), size, "tables from different algebras");
                for (m_in, v) in &fa.rows[omega] {
                    *acc.entry(*m_in).or_insert_with(Scalar::zero) += v * c;
                }
            }
            for (m_in, v) in acc {
                if v.is_zero() {
                    continue;
                }
                rows[omega].push((m_in, v.clone()));
                cols[m_in as usize].push((omega as u64, v));
            }
        }
        FieldAction { rows, cols }
    }

    /// Output terms produced by a single input monomial ε^ω′.
    pub fn apply_monomial(&self, m_in: OddMask) -> &[(OddMask, Scalar)] {
        &self.cols[m_in as usize]
    }
}

/// `Y(f)` for a homogeneous Y ∈ g.
pub fn field_action(env: &Envelope, y: &Homogeneous, f: &ExteriorPoly) -> ExteriorPoly {
    FieldAction::new(env, y).apply(f)
}

/// The action of Y on w ∈ Λ(g₁*)⊗V:
/// Y·(f⊗T) = Y(f)⊗T + (−1)^{p(Y)p(f)} f⊗π\[Y,T\].
pub fn module_action(
    env: &Envelope,
    y: &Homogeneous,
    w: &ExteriorField,
    space: ModuleSpace,
) -> Result<ExteriorField, ModuleError> {
    let fa = FieldAction::new(env, y);
    module_action_with(env, &fa, y, w, space)
}

/// Same as [`module_action`] with a prebuilt [`FieldAction`] table, so
/// solvers can reuse the table across many fields.
pub fn module_action_with(
    env: &Envelope,
    fa: &FieldAction,
    y: &Homogeneous,
    w: &ExteriorField,
    space: ModuleSpace,
) -> Result<ExteriorField, ModuleError> {
    let alg = env.algebra();
    space.check(alg, w)?;
    let mut out = ExteriorField::zero(w.space, w.target_dim);

    // coefficient part, grouped per target generator
    for t in 0..w.target_dim {
        let ft = w.component(t);
        if ft.is_zero() {
            continue;
        }
        let rf = fa.apply(&ft);
        for (m, c) in rf.terms() {
            out.add_term(*m, t, c.clone());
        }
    }

    // bracket part on the target factor
    let y_odd = y.parity == Parity::Odd;
    let mut bracket_cache: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
    for ((m, t), c) in w.terms() {
        let br = bracket_cache.entry(*t).or_insert_with(|| {
            let rep = space.representative(alg, *t);
            space.push(alg, &alg.bracket(&y.coords, &rep))
        });
        let sign_flip = y_odd && mask::popcount(*m) % 2 == 1;
        for (s, x) in br.iter().enumerate() {
            if !x.is_zero() {
                let v = if sign_flip { -(c * x) } else { c * x };
                out.add_term(*m, s, v);
            }
        }
    }
    Ok(out)
}

/// Derivation action of an operator w = Σ f^a ⊗ T_a (full target) on a
/// coefficient: w(f) = Σ f^a ∧ T_a(f).
pub fn operator_apply(env: &Envelope, w: &ExteriorField, f: &ExteriorPoly) -> ExteriorPoly {
    assert_eq!(w.space, TargetSpace::Full, "operator_apply needs a full-target field");
    let alg = env.algebra();
    let mut out = ExteriorPoly::zero();
    for t in 0..w.target_dim {
        let coeff = w.component(t);
        if coeff.is_zero() {
            continue;
        }
        let gen = Homogeneous::generator(alg, t);
        let tf = field_action(env, &gen, f);
        out.add_scaled(&coeff.wedge(&tf), &Scalar::one());
    }
    out
}

/// Restriction filters for the unknown monomials (mask, target).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeFilter {
    Any,
    AtLeast(usize),
    In(Vec<usize>),
}

impl DegreeFilter {
    pub fn matches(&self, p: usize) -> bool {
        match self {
            DegreeFilter::Any => true,
            DegreeFilter::AtLeast(min) => p >= *min,
            DegreeFilter::In(set) => set.contains(&p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityFilter {
    Any,
    Even,
    Odd,
}

impl ParityFilter {
    pub fn matches(&self, p: Parity) -> bool {
        match (self, p) {
            (ParityFilter::Any, _) => true,
            (ParityFilter::Even, Parity::Even) => true,
            (ParityFilter::Odd, Parity::Odd) => true,
            _ => false,
        }
    }
}

/// Which part of h imposes the invariance constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariancePart {
    /// Even part h₀ only (the connected-isotropy reading of H₀-invariance).
    EvenOnly,
    /// All of h.
    Whole,
}

/// Basis monomials (mask, target) of the filtered module, in the pivot
/// order (popcount, mask value, target index).
pub fn monomial_basis(
    alg: &LieSuperalgebra,
    space: ModuleSpace,
    degrees: &DegreeFilter,
    parity: ParityFilter,
) -> Vec<(OddMask, usize)> {
    let td = space.target_dim(alg);
    let mut out = Vec::new();
    for m in mask::masks_by_degree(alg.n_odd()) {
        let p = mask::popcount(m);
        if !degrees.matches(p) {
            continue;
        }
        for t in 0..td {
            let term_parity = if p % 2 == 0 {
                space.target_parity(alg, t)
            } else {
                space.target_parity(alg, t).flip()
            };
            if parity.matches(term_parity) {
                out.push((m, t));
            }
        }
    }
    out
}

fn unit_field(space: TargetSpace, target_dim: usize, m: OddMask, t: usize) -> ExteriorField {
    let mut w = ExteriorField::zero(space, target_dim);
    w.add_term(m, t, Scalar::one());
    w
}

/// Joint kernel of the module action of an invariance algebra inside the
/// filtered module: the invariant fields, as a reduced-echelon basis over
/// the monomial pivot order.
pub fn invariant_subspace(
    env: &Envelope,
    h: &SubalgebraEmbedding,
    space: ModuleSpace,
    invariance: InvariancePart,
    degrees: &DegreeFilter,
    parity: ParityFilter,
) -> Vec<ExteriorField> {
    let alg = env.algebra();
    let unknowns = monomial_basis(alg, space, degrees, parity);
    let tag = space.tag();
    let td = space.target_dim(alg);
    let unknown_fields: Vec<ExteriorField> = unknowns
        .iter()
        .map(|&(m, t)| unit_field(tag, td, m, t))
        .collect();
    let ys: Vec<&Homogeneous> = match invariance {
        InvariancePart::EvenOnly => h.even_vectors().collect(),
        InvariancePart::Whole => h.basis().iter().collect(),
    };
    let system = assemble_action_system(env, &ys, space, &unknown_fields, None);
    let kernel = system.solve().kernel;
    kernel
        .into_iter()
        .map(|coeffs| {
            let mut w = ExteriorField::zero(tag, td);
            for (k, c) in coeffs.iter().enumerate() {
                w.add_scaled(&unknown_fields[k], c);
            }
            w
        })
        .collect()
}

/// The stacked equations `module_action(Y, Σ ξ_k U_k + fixed) = 0` as a
/// sparse exact system over the ξ. One row per output coordinate that
/// actually occurs; `rhs` is zero when `fixed` is `None`.
pub struct ActionSystem {
    pub cols: usize,
    pub rows: Vec<SparseRow>,
    pub rhs: Vec<Scalar>,
}

impl ActionSystem {
    pub fn solve(&self) -> AffineSolution {
        solve_sparse_affine(self.cols, self.rows.clone(), self.rhs.clone())
    }
}

pub fn assemble_action_system(
    env: &Envelope,
    ys: &[&Homogeneous],
    space: ModuleSpace,
    unknown_fields: &[ExteriorField],
    fixed: Option<&ExteriorField>,
) -> ActionSystem {
    let cols = unknown_fields.len();
    // (row key) -> sparse coefficients, accumulated per column
    let mut table: BTreeMap<(usize, OddMask, usize), (BTreeMap<usize, Scalar>, Scalar)> =
        BTreeMap::new();

    for (yi, y) in ys.iter().enumerate() {
        let fa = FieldAction::new(env, y);
        for (k, u) in unknown_fields.iter().enumerate() {
            let act = module_action_with(env, &fa, y, u, space)
                .expect("unknown fields are built for this module");
            for ((m, t), c) in act.terms() {
                let entry = table
                    .entry((yi, *m, *t))
                    .or_insert_with(|| (BTreeMap::new(), Scalar::zero()));
                *entry.0.entry(k).or_insert_with(Scalar::zero) += c;
            }
        }
        if let Some(f) = fixed {
            let act = module_action_with(env, &fa, y, f, space)
                .expect("fixed field is built for this module");
            for ((m, t), c) in act.terms() {
                let entry = table
                    .entry((yi, *m, *t))
                    .or_insert_with(|| (BTreeMap::new(), Scalar::zero()));
                entry.1 -= c;
            }
        }
    }

    let mut rows = Vec::with_capacity(table.len());
    let mut rhs = Vec::with_capacity(table.len());
    for (_, (coeffs, b)) in table {
        let row: SparseRow = coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if row.is_empty() && b.is_zero() {
            continue;
        }
        rows.push(row);
        rhs.push(b);
    }
    ActionSystem { cols, rows, rhs }
}

/// Ranks of the split model: entry p = dim Λᵖ(g₁) − dim(Λᵖ⁻¹(g₁)∧h₁).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankVector {
    pub entries: Vec<usize>,
}

impl RankVector {
    pub fn total(&self) -> usize {
        self.entries.iter().sum()
    }
}

pub fn split_model_ranks(alg: &LieSuperalgebra, h: &SubalgebraEmbedding) -> RankVector {
    let m = alg.n_odd();
    let ne = alg.n_even();
    // h₁ in odd-block coordinates
    let h1: Vec<Vec<Scalar>> = h
        .odd_vectors()
        .map(|v| v.coords[ne..].to_vec())
        .collect();

    let mut entries = Vec::with_capacity(m + 1);
    for p in 0..=m {
        let degree_masks: Vec<OddMask> = mask::masks_by_degree(m)
            .into_iter()
            .filter(|&w| mask::popcount(w) == p)
            .collect();
        if p == 0 {
            entries.push(1);
            continue;
        }
        let index_of: BTreeMap<OddMask, usize> = degree_masks
            .iter()
            .enumerate()
            .map(|(i, &w)| (w, i))
            .collect();
        // span of Λ^{p-1}(g₁) ∧ h₁ inside degree p
        let mut span = Subspace::empty(degree_masks.len());
        for a in mask::masks_by_degree(m) {
            if mask::popcount(a) != p - 1 {
                continue;
            }
            for v in &h1 {
                let mut vec = zero_vec(degree_masks.len());
                let mut nonzero = false;
                for (j, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if let Some((w, s)) = mask::wedge(a, 1u64 << j) {
                        vec[index_of[&w]] += c * scalar::int(s as i64);
                        nonzero = true;
                    }
                }
                if nonzero {
                    span.insert(vec);
                }
            }
        }
        entries.push(degree_masks.len() - span.dim());
    }
    RankVector { entries }
}

/// Lift of a quotient field through the complement: (mask, k) becomes
/// (mask, complement\[k\]) in the full module.
pub fn lift_field(
    alg: &LieSuperalgebra,
    h: &SubalgebraEmbedding,
    w: &ExteriorField,
) -> ExteriorField {
    assert_eq!(w.space, TargetSpace::Quotient);
    let mut out = ExteriorField::zero(TargetSpace::Full, alg.dim());
    for ((m, k), c) in w.terms() {
        out.add_term(*m, h.complement()[*k], c.clone());
    }
    out
}

/// Projection of a full field to the quotient module.
pub fn project_field(
    alg: &LieSuperalgebra,
    h: &SubalgebraEmbedding,
    w: &ExteriorField,
) -> ExteriorField {
    assert_eq!(w.space, TargetSpace::Full);
    let mut out = ExteriorField::zero(TargetSpace::Quotient, h.codim(alg));
    for ((m, t), c) in w.terms() {
        let pr = h.project(&unit_vec(alg.dim(), *t));
        for (s, x) in pr.iter().enumerate() {
            if !x.is_zero() {
                out.add_term(*m, s, c * x);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::int;

    fn poly(mask: OddMask) -> ExteriorPoly {
        ExteriorPoly::monomial(mask, int(1))
    }

    #[test]
    fn pairing_is_dual_on_gamma_basis() {
        for alg in [catalog::gl(1, 1), catalog::abelian(0, 3), catalog::osp12()] {
            let env = Envelope::new(&alg);
            let size = 1u64 << alg.n_odd();
            for a in 0..size {
                for b in 0..size {
                    let got = pair_at_identity(&env, &poly(a), env.gamma(b));
                    let want = if a == b { int(1) } else { int(0) };
                    assert_eq!(got, want, "{} a={a:b} b={b:b}", alg.name());
                }
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let alg = catalog::gl(1, 1);
        let env = Envelope::new(&alg);
        // ⟨ε^x, γ(x)⟩ = 1
        assert_eq!(pair_at_identity(&env, &poly(0b01), env.gamma(0b01)), int(1));
        // even factor is killed by the augmentation
        let a_gx = env.multiply(&env.generator(0), env.gamma(0b01));
        assert_eq!(pair_at_identity(&env, &poly(0b01), &a_gx), int(0));
        // ⟨ε^x∧ε^y, y·x⟩ = −1
        let yx = env.normal_form(&[3, 2]);
        assert_eq!(pair_at_identity(&env, &poly(0b11), &yx), int(-1));
    }

    #[test]
    fn field_action_abelian_contraction() {
        let alg = catalog::abelian(0, 2);
        let env = Envelope::new(&alg);
        let x1 = Homogeneous::generator(&alg, 0);
        let x2 = Homogeneous::generator(&alg, 1);

        // X₁(ε¹) = −1
        let r = field_action(&env, &x1, &poly(0b01));
        assert_eq!(r, ExteriorPoly::monomial(0, int(-1)));
        // X₁(ε²) = 0
        assert!(field_action(&env, &x1, &poly(0b10)).is_zero());
        // contraction on the top monomial, with determinant signs
        assert_eq!(
            field_action(&env, &x2, &poly(0b11)),
            ExteriorPoly::monomial(0b01, int(-1))
        );
        assert_eq!(
            field_action(&env, &x1, &poly(0b11)),
            ExteriorPoly::monomial(0b10, int(1))
        );
    }

    #[test]
    fn central_even_elements_act_by_zero() {
        let alg = catalog::gl(1, 1);
        let env = Envelope::new(&alg);
        let mut coords = zero_vec(4);
        coords[0] = int(1);
        coords[1] = int(1);
        let z = Homogeneous::new(&alg, coords).unwrap();
        for m in 0..4u64 {
            assert!(field_action(&env, &z, &poly(m)).is_zero(), "mask {m:b}");
        }
    }

    #[test]
    fn field_action_matches_adjoint_kernel() {
        // even Z kills all of Λ(g₁*) iff [Z, g₁] = 0, both directions
        for alg in [catalog::gl(1, 1), catalog::gl(2, 1), catalog::osp12()] {
            let env = Envelope::new(&alg);
            let kernel = alg.adjoint_kernel_on_odd();
            let span = kernel.span(alg.dim());
            let size = 1u64 << alg.n_odd();
            for z in 0..alg.n_even() {
                let zh = Homogeneous::generator(&alg, z);
                let acts_by_zero =
                    (0..size).all(|m| field_action(&env, &zh, &poly(m)).is_zero());
                let in_kernel = span.contains(&unit_vec(alg.dim(), z));
                assert_eq!(acts_by_zero, in_kernel, "{} gen {z}", alg.name());
            }
            // and every kernel vector acts by zero
            for v in &kernel.basis {
                let zh = Homogeneous::new(&alg, v.clone()).unwrap();
                for m in 0..size {
                    assert!(field_action(&env, &zh, &poly(m)).is_zero());
                }
            }
        }
    }

    #[test]
    fn super_leibniz_on_monomials() {
        // The action pairs against γ(ω)·Y, i.e. Y enters from the right, so
        // the Leibniz sign sits on the factor Y passes over:
        // Y(f∧g) = (−1)^{p(Y)p(g)} Y(f)∧g + f∧Y(g).
        // Hand check (gl(1|1), Y=x, f=ε^x, g=ε^y): both sides equal +ε^y.
        for alg in [catalog::gl(1, 1), catalog::osp12()] {
            let env = Envelope::new(&alg);
            let size = 1u64 << alg.n_odd();
            for g in 0..alg.dim() {
                let y = Homogeneous::generator(&alg, g);
                let py = alg.parity(g);
                for a in 0..size {
                    for b in 0..size {
                        let fa_ab = field_action(&env, &y, &poly(a).wedge(&poly(b)));
                        let sign = if py == Parity::Odd && mask::popcount(b) % 2 == 1 {
                            int(-1)
                        } else {
                            int(1)
                        };
                        let mut want =
                            field_action(&env, &y, &poly(a)).wedge(&poly(b)).scaled(&sign);
                        want.add_scaled(
                            &poly(a).wedge(&field_action(&env, &y, &poly(b))),
                            &int(1),
                        );
                        assert_eq!(fa_ab, want, "{} Y={g} a={a:b} b={b:b}", alg.name());
                    }
                }
            }
        }
    }

    #[test]
    fn module_action_representation_property() {
        // [Y,Z]·w = Y·(Z·w) − (−1)^{p(Y)p(Z)} Z·(Y·w) on unit fields
        for alg in [catalog::gl(1, 1), catalog::osp12()] {
            let env = Envelope::new(&alg);
            let dim = alg.dim();
            let size = 1u64 << alg.n_odd();
            for gy in 0..dim {
                for gz in 0..dim {
                    let y = Homogeneous::generator(&alg, gy);
                    let z = Homogeneous::generator(&alg, gz);
                    let br = alg.bracket(&y.coords, &z.coords);
                    let both_odd =
                        alg.parity(gy) == Parity::Odd && alg.parity(gz) == Parity::Odd;
                    for m in 0..size {
                        for t in 0..dim {
                            let w = unit_field(TargetSpace::Full, dim, m, t);
                            let zw = module_action(&env, &z, &w, ModuleSpace::Full).unwrap();
                            let yzw =
                                module_action(&env, &y, &zw, ModuleSpace::Full).unwrap();
                            let yw = module_action(&env, &y, &w, ModuleSpace::Full).unwrap();
                            let zyw =
                                module_action(&env, &z, &yw, ModuleSpace::Full).unwrap();
                            let mut rhs = yzw.clone();
                            rhs.add_scaled(&zyw, &int(if both_odd { 1 } else { -1 }));

                            // bracket side: split [Y,Z] into homogeneous parts
                            let mut lhs = ExteriorField::zero(TargetSpace::Full, dim);
                            for (g, c) in br.iter().enumerate() {
                                if !c.is_zero() {
                                    let bg = Homogeneous::generator(&alg, g);
                                    let part =
                                        module_action(&env, &bg, &w, ModuleSpace::Full)
                                            .unwrap();
                                    lhs.add_scaled(&part, c);
                                }
                            }
                            assert_eq!(lhs, rhs, "{} Y={gy} Z={gz} m={m:b} t={t}", alg.name());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn module_action_examples() {
        // central even Y, w = v, full target: both summands vanish
        let alg = catalog::gl(1, 1);
        let env = Envelope::new(&alg);
        let v = canonical_v(&alg);
        let mut coords = zero_vec(4);
        coords[0] = int(1);
        coords[1] = int(1);
        let z = Homogeneous::new(&alg, coords).unwrap();
        assert!(module_action(&env, &z, &v, ModuleSpace::Full).unwrap().is_zero());

        // abelian C^{0|2}, Y = X₁, w = v: exactly −(1 ⊗ X₁)
        let ab = catalog::abelian(0, 2);
        let env = Envelope::new(&ab);
        let v = canonical_v(&ab);
        let x1 = Homogeneous::generator(&ab, 0);
        let r = module_action(&env, &x1, &v, ModuleSpace::Full).unwrap();
        let mut want = ExteriorField::zero(TargetSpace::Full, 2);
        want.add_term(0, 0, int(-1));
        assert_eq!(r, want);

        // linearity: w = 0 maps to 0
        let zero = ExteriorField::zero(TargetSpace::Full, 2);
        assert!(module_action(&env, &x1, &zero, ModuleSpace::Full).unwrap().is_zero());
    }

    // Σ εⁱ ⊗ Xᵢ, duplicated here to keep this module's tests self-contained
    fn canonical_v(alg: &LieSuperalgebra) -> ExteriorField {
        let mut v = ExteriorField::zero(TargetSpace::Full, alg.dim());
        for k in 0..alg.n_odd() {
            v.add_term(1u64 << k, alg.odd_index(k), int(1));
        }
        v
    }

    #[test]
    fn space_mismatch_is_an_error() {
        let alg = catalog::gl(1, 1);
        let env = Envelope::new(&alg);
        let h = SubalgebraEmbedding::even_part(&alg);
        let v = canonical_v(&alg);
        let y = Homogeneous::generator(&alg, 0);
        assert!(matches!(
            module_action(&env, &y, &v, ModuleSpace::Quotient(&h)),
            Err(ModuleError::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn invariant_subspace_examples() {
        let alg = catalog::gl(1, 1);
        let env = Envelope::new(&alg);

        // h = 0: no constraints, entire filtered space
        let h0 = SubalgebraEmbedding::zero(&alg);
        let basis = invariant_subspace(
            &env,
            &h0,
            ModuleSpace::Full,
            InvariancePart::Whole,
            &DegreeFilter::Any,
            ParityFilter::Any,
        );
        assert_eq!(basis.len(), 4 * 4); // 2^2 masks × dim g

        // h = g, quotient: no unknowns at all
        let hg = SubalgebraEmbedding::full(&alg);
        let basis = invariant_subspace(
            &env,
            &hg,
            ModuleSpace::Quotient(&hg),
            InvariancePart::Whole,
            &DegreeFilter::Any,
            ParityFilter::Any,
        );
        assert!(basis.is_empty());

        // h = span(a+b) central: everything is invariant
        let mut ab = zero_vec(4);
        ab[0] = int(1);
        ab[1] = int(1);
        let hc = SubalgebraEmbedding::new(&alg, vec![ab]).unwrap();
        let basis = invariant_subspace(
            &env,
            &hc,
            ModuleSpace::Full,
            InvariancePart::Whole,
            &DegreeFilter::Any,
            ParityFilter::Any,
        );
        assert_eq!(basis.len(), 4 * 4);
    }

    #[test]
    fn split_model_rank_examples() {
        // h₁ = 0: binomial coefficients
        let alg = catalog::gl(1, 1);
        let h = SubalgebraEmbedding::even_part(&alg);
        let r = split_model_ranks(&alg, &h);
        assert_eq!(r.entries, vec![1, 2, 1]);

        // h₁ = g₁: everything above degree 0 dies
        let h = SubalgebraEmbedding::full(&alg);
        let r = split_model_ranks(&alg, &h);
        assert_eq!(r.entries, vec![1, 0, 0]);

        // dim g₁ = 2, h₁ = span(X₂): (1, 1, 0)
        let ab = catalog::abelian(0, 2);
        let h = SubalgebraEmbedding::new(&ab, vec![unit_vec(2, 1)]).unwrap();
        let r = split_model_ranks(&ab, &h);
        assert_eq!(r.entries, vec![1, 1, 0]);

        // sum rule for a coordinate h₁
        assert_eq!(r.total(), 1 << (2 - 1));
    }

    #[test]
    fn lift_then_project_is_identity_on_quotient_fields() {
        let alg = catalog::gl(1, 1);
        let h = SubalgebraEmbedding::even_part(&alg);
        let mut w = ExteriorField::zero(TargetSpace::Quotient, 2);
        w.add_term(0b01, 0, int(3));
        w.add_term(0b11, 1, int(-2));
        let lifted = lift_field(&alg, &h, &w);
        let back = project_field(&alg, &h, &lifted);
        assert_eq!(back, w);
    }
}
