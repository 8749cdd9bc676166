//! Split-grading analysis for a pair (g, h).
//!
//! The canonical degree-one operator is v = Σ εⁱ ⊗ Xᵢ over the odd basis.
//! Adding any even correction χ of exterior degree ≥ 2 gives the general
//! left-invariant operator v + χ. Whether some such operator descends to the
//! quotient data is an exact affine question:
//!
//!   * unknowns: even χ̄ ∈ ⊕_{p≥2} Λᵖ(g₁*) ⊗ g/h that are invariant under
//!     the even part h₀ (the connected-isotropy reading),
//!   * constraints: module_action(Y, v̄ + χ̄) = 0 for every Y in a basis
//!     of h.
//!
//! Feasibility of that system certifies a split quotient; so does the
//! bracket condition [g₁, h₁] ⊆ h₀ ∩ Ker(ad|g₁), which is checked first and
//! needs no solve. Infeasibility of the quotient system is reported as
//! exactly that — no compatible left-invariant grading — and is explicitly
//! inconclusive about splitness itself.

use thiserror::Error;

use crate::algebra::{Homogeneous, LieSuperalgebra, Parity, SubspaceReport};
use crate::exterior::{
    assemble_action_system, invariant_subspace, lift_field, module_action, project_field,
    DegreeFilter, ExteriorField, InvariancePart, ModuleError, ModuleSpace, ParityFilter,
    TargetSpace,
};
use crate::linalg::Subspace;
use crate::mask;
use crate::pbw::Envelope;
use crate::scalar::Scalar;
use crate::subalgebra::SubalgebraEmbedding;

/// v = Σ εⁱ ⊗ Xᵢ over the odd basis: even, degree-1 terms only.
pub fn canonical_operator(alg: &LieSuperalgebra) -> ExteriorField {
    let mut v = ExteriorField::zero(TargetSpace::Full, alg.dim());
    for k in 0..alg.n_odd() {
        v.add_term(1u64 << k, alg.odd_index(k), Scalar::from_integer(1.into()));
    }
    v
}

/// v̄: the canonical operator pushed to the quotient module.
pub fn canonical_operator_quotient(
    alg: &LieSuperalgebra,
    h: &SubalgebraEmbedding,
) -> ExteriorField {
    project_field(alg, h, &canonical_operator(alg))
}

/// A grading operator on the full data projecting to the quotient solution
/// w̄ = v̄ + χ̄: namely v + lift(χ̄), with the correction lifted through the
/// complement.
pub fn operator_lift(
    alg: &LieSuperalgebra,
    h: &SubalgebraEmbedding,
    wbar: &ExteriorField,
) -> ExteriorField {
    let chi_bar = wbar.sub(&canonical_operator_quotient(alg, h));
    let mut w = canonical_operator(alg);
    w.add_scaled(&lift_field(alg, h, &chi_bar), &Scalar::from_integer(1.into()));
    w
}

/// Shape check for left-invariant grading operators: w must be even overall
/// with w − v supported on exterior degrees ≥ 2, i.e. every correction term
/// has (even target, even mask degree ≥ 2) or (odd target, odd mask degree
/// ≥ 3).
pub fn is_left_invariant_grading_form(
    alg: &LieSuperalgebra,
    w: &ExteriorField,
) -> GradingFormReport {
    assert_eq!(w.space, TargetSpace::Full, "grading operators live in Λ(L)⊗g");
    let chi = w.sub(&canonical_operator(alg));
    let mut violations = Vec::new();
    for ((m, t), _) in chi.terms() {
        let degree = mask::popcount(*m);
        let ok = match alg.parity(*t) {
            Parity::Even => degree >= 2 && degree % 2 == 0,
            Parity::Odd => degree >= 3 && degree % 2 == 1,
        };
        if !ok {
            violations.push((*m, *t));
        }
    }
    GradingFormReport { violations }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingFormReport {
    /// Correction terms (mask, target) outside the permitted shape.
    pub violations: Vec<(u64, usize)>,
}

impl GradingFormReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Does the operator w (full target) act compatibly with h? Checked
/// infinitesimally: module_action(Y, w̄) = 0 in Λ(g₁*)⊗g/h for every basis
/// element Y of h. Even generators realize the translation condition under
/// the connectedness assumption.
pub fn check_compatibility(
    env: &Envelope,
    h: &SubalgebraEmbedding,
    w: &ExteriorField,
) -> Result<CompatibilityReport, ModuleError> {
    let alg = env.algebra();
    if w.space != TargetSpace::Full {
        return Err(ModuleError::SpaceMismatch {
            field: w.space,
            requested: TargetSpace::Full,
        });
    }
    let wbar = project_field(alg, h, w);
    let mut violations = Vec::new();
    for (k, y) in h.basis().iter().enumerate() {
        let residual = module_action(env, y, &wbar, ModuleSpace::Quotient(h))?;
        if !residual.is_zero() {
            violations.push((k, residual));
        }
    }
    Ok(CompatibilityReport { violations })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityReport {
    /// (index into h's basis, nonzero residual field)
    pub violations: Vec<(usize, ExteriorField)>,
}

impl CompatibilityReport {
    pub fn is_compatible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exact affine solution set of a grading problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingSolutionSpace {
    pub feasible: bool,
    /// A solution operator (v̄ + χ̄ in the quotient, or v + χ in the full
    /// module for the strict problem); absent when infeasible.
    pub particular: Option<ExteriorField>,
    /// Basis of the homogeneous directions; every element satisfies the
    /// homogeneous system exactly.
    pub homogeneous_basis: Vec<ExteriorField>,
    pub dimension: usize,
}

/// Solves for compatible left-invariant gradings on the quotient data:
/// even χ̄ of degree ≥ 2 that are h₀-invariant, with
/// module_action(Y, v̄ + χ̄) = 0 for all Y in a basis of h.
pub fn solve_compatible_gradings(
    env: &Envelope,
    h: &SubalgebraEmbedding,
) -> GradingSolutionSpace {
    let alg = env.algebra();
    let vbar = canonical_operator_quotient(alg, h);
    // stage 1: the h₀-invariant part of the even degree-≥2 unknowns
    let invariant_directions = invariant_subspace(
        env,
        h,
        ModuleSpace::Quotient(h),
        InvariancePart::EvenOnly,
        &DegreeFilter::AtLeast(2),
        ParityFilter::Even,
    );
    // stage 2: the affine system over those directions, all of h acting
    let ys: Vec<&Homogeneous> = h.basis().iter().collect();
    solve_stage(env, &ys, ModuleSpace::Quotient(h), &invariant_directions, &vbar)
}

/// Strict invariance: the same degree-≥2 even unknowns, but in the full
/// module Λ(g₁*)⊗g with module_action(Y, v + χ) = 0 for all Y ∈ h. By the
/// lowest-order term this is infeasible whenever h has odd part.
pub fn strict_invariance_solve(
    env: &Envelope,
    h: &SubalgebraEmbedding,
) -> GradingSolutionSpace {
    let alg = env.algebra();
    let v = canonical_operator(alg);
    let unknowns = crate::exterior::monomial_basis(
        alg,
        ModuleSpace::Full,
        &DegreeFilter::AtLeast(2),
        ParityFilter::Even,
    );
    let unit_fields: Vec<ExteriorField> = unknowns
        .iter()
        .map(|&(m, t)| {
            let mut f = ExteriorField::zero(TargetSpace::Full, alg.dim());
            f.add_term(m, t, Scalar::from_integer(1.into()));
            f
        })
        .collect();
    let ys: Vec<&Homogeneous> = h.basis().iter().collect();
    solve_stage(env, &ys, ModuleSpace::Full, &unit_fields, &v)
}

fn solve_stage(
    env: &Envelope,
    ys: &[&Homogeneous],
    space: ModuleSpace,
    directions: &[ExteriorField],
    base: &ExteriorField,
) -> GradingSolutionSpace {
    let system = assemble_action_system(env, ys, space, directions, Some(base));
    let sol = system.solve();
    let combine = |coeffs: &[Scalar]| {
        let mut w = ExteriorField::zero(base.space, base.target_dim);
        for (k, c) in coeffs.iter().enumerate() {
            w.add_scaled(&directions[k], c);
        }
        w
    };
    let homogeneous_basis: Vec<ExteriorField> =
        sol.kernel.iter().map(|k| combine(k)).collect();
    let dimension = homogeneous_basis.len();
    match sol.particular {
        Some(xi) => {
            let mut w = base.clone();
            w.add_scaled(&combine(&xi), &Scalar::from_integer(1.into()));
            GradingSolutionSpace {
                feasible: true,
                particular: Some(w),
                homogeneous_basis,
                dimension,
            }
        }
        None => GradingSolutionSpace {
            feasible: false,
            particular: None,
            homogeneous_basis,
            dimension,
        },
    }
}

/// The bracket criterion: [g₁, h₁] ⊆ h₀ ∩ Ker(ad|g₁), plus the
/// effectiveness ideal 𝔞 so the caller can see whether the effectiveness
/// hypothesis (𝔞 = 0, largest-ideal interpretation) holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SufficientSplitReport {
    pub holds: bool,
    /// span{[X, Y] : X over the odd basis, Y over a basis of h₁}
    pub bracket_span: SubspaceReport,
    /// h₀ ∩ Ker(ad|g₁)
    pub h0_cap_kernel: SubspaceReport,
    /// largest ideal of g contained in h
    pub effectiveness_ideal: SubspaceReport,
}

pub fn check_sufficient_split(
    alg: &LieSuperalgebra,
    h: &SubalgebraEmbedding,
) -> SufficientSplitReport {
    let dim = alg.dim();
    let mut bracket_span = Subspace::empty(dim);
    for k in 0..alg.n_odd() {
        let x = crate::linalg::unit_vec(dim, alg.odd_index(k));
        for y in h.odd_vectors() {
            bracket_span.insert(alg.bracket(&x, &y.coords));
        }
    }
    let kernel = alg.adjoint_kernel_on_odd();
    let h0 = Subspace::from_vectors(
        dim,
        &h.even_vectors().map(|v| v.coords.clone()).collect::<Vec<_>>(),
    );
    let cap = h0.intersect(&kernel.span(dim));
    let holds = bracket_span.basis().iter().all(|v| cap.contains(v));
    SufficientSplitReport {
        holds,
        bracket_span: SubspaceReport::new(alg, bracket_span),
        h0_cap_kernel: SubspaceReport::new(alg, cap),
        effectiveness_ideal: h.largest_ideal_in(alg),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    SplitBySufficientCondition,
    SplitByGrading,
    NoCompatibleLeftInvariantGrading,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::SplitBySufficientCondition => "SPLIT_BY_SUFFICIENT_CONDITION",
            Verdict::SplitByGrading => "SPLIT_BY_GRADING",
            Verdict::NoCompatibleLeftInvariantGrading => "NO_COMPATIBLE_LEFT_INVARIANT_GRADING",
        }
    }
}

/// Standing assumptions attached to every verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assumptions {
    /// All group-level invariance was computed Lie-algebraically, assuming
    /// the underlying groups connected.
    pub connected_groups_assumed: bool,
    /// dim of the largest ideal of g inside h (the effectiveness reading).
    pub effectiveness_ideal_dim: usize,
    /// The negative verdict only means no *left-invariant compatible*
    /// grading exists; it does not prove non-splitness.
    pub splitness_inconclusive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitVerdict {
    pub verdict: Verdict,
    pub sufficient: SufficientSplitReport,
    /// Attached when the solver ran (grading and negative verdicts).
    pub gradings: Option<GradingSolutionSpace>,
    /// Particular solution in the quotient, for the grading verdict.
    pub witness_operator: Option<ExteriorField>,
    /// A full-module lift of the witness (arbitrary preimage through the
    /// complement), for display and re-checking.
    pub witness_lift: Option<ExteriorField>,
    pub assumptions: Assumptions,
}

/// The composite decision procedure: bracket criterion first, then the
/// exact affine solve; negative results stay explicitly inconclusive.
pub fn full_verdict(env: &Envelope, h: &SubalgebraEmbedding) -> SplitVerdict {
    let alg = env.algebra();
    let sufficient = check_sufficient_split(alg, h);
    let effectiveness_ideal_dim = sufficient.effectiveness_ideal.dimension;
    if sufficient.holds {
        return SplitVerdict {
            verdict: Verdict::SplitBySufficientCondition,
            sufficient,
            gradings: None,
            witness_operator: None,
            witness_lift: None,
            assumptions: Assumptions {
                connected_groups_assumed: true,
                effectiveness_ideal_dim,
                splitness_inconclusive: false,
            },
        };
    }
    let gradings = solve_compatible_gradings(env, h);
    if gradings.feasible {
        let witness = gradings.particular.clone();
        let lift = witness.as_ref().map(|w| operator_lift(alg, h, w));
        SplitVerdict {
            verdict: Verdict::SplitByGrading,
            sufficient,
            gradings: Some(gradings),
            witness_operator: witness,
            witness_lift: lift,
            assumptions: Assumptions {
                connected_groups_assumed: true,
                effectiveness_ideal_dim,
                splitness_inconclusive: false,
            },
        }
    } else {
        SplitVerdict {
            verdict: Verdict::NoCompatibleLeftInvariantGrading,
            sufficient,
            gradings: Some(gradings),
            witness_operator: None,
            witness_lift: None,
            assumptions: Assumptions {
                connected_groups_assumed: true,
                effectiveness_ideal_dim,
                splitness_inconclusive: true,
            },
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GradingError {
    #[error(transparent)]
    Module(#[from] ModuleError),
}
