//! Report documents: the single machine-readable output of every
//! subcommand, with a plain-text rendering for humans. Field order is
//! fixed and all maps are sorted, so serialization is byte-deterministic
//! for a fixed input and tool version.

use serde::{Deserialize, Serialize};

use supersplit_core::algebra::{LieSuperalgebra, SubspaceReport};
use supersplit_core::exterior::{ExteriorField, RankVector, TargetSpace};
use supersplit_core::grading::{GradingSolutionSpace, SplitVerdict, SufficientSplitReport};
use supersplit_core::mask;
use supersplit_core::pbw::PBWElement;
use supersplit_core::scalar;
use supersplit_core::subalgebra::SubalgebraEmbedding;

use crate::document::{AlgebraDocument, SubalgebraDocument};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub operation: String,
    pub inputs: InputsEcho,
    pub assumptions: AssumptionBlock,
    pub payload: Payload,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputsEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subalgebra: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subalgebra_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub options: Option<std::collections::BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionBlock {
    /// Invariance under groups is computed Lie-algebraically throughout;
    /// this is only valid for connected groups.
    pub connected_groups: bool,
    /// Effectiveness is reported, not enforced: the dimension of the
    /// largest ideal of g inside h, the Lie-algebra reading of the kernel
    /// of the action.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub effectiveness_ideal_dimension: Option<usize>,
    pub effectiveness_interpretation: String,
}

impl AssumptionBlock {
    pub fn new(effectiveness_ideal_dimension: Option<usize>) -> Self {
        AssumptionBlock {
            connected_groups: true,
            effectiveness_ideal_dimension,
            effectiveness_interpretation:
                "largest ideal of g contained in h (reported, not enforced)".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Validation {
        valid: bool,
        algebra_violations: Vec<String>,
        subalgebra_violations: Vec<String>,
    },
    Algebra {
        algebra: AlgebraDocument,
    },
    Subalgebra {
        subalgebra: SubalgebraDocument,
    },
    Envelope {
        operation: String,
        element: Vec<PBWTermDoc>,
        filtration_degree: i64,
        augmentation: String,
    },
    Invariants {
        space: String,
        invariance: String,
        dimension: usize,
        basis: Vec<FieldDoc>,
    },
    Ranks {
        entries: Vec<usize>,
        total: usize,
    },
    SplitCheck {
        verdict: String,
        splitness_inconclusive: bool,
        sufficient: SufficientDoc,
        #[serde(skip_serializing_if = "Option::is_none")]
        solution: Option<SolutionDoc>,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness_operator: Option<FieldDoc>,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness_lift: Option<FieldDoc>,
    },
    StrictInvariance {
        feasible: bool,
        dimension: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        particular: Option<FieldDoc>,
    },
}

/// One normal-form monomial with its coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PBWTermDoc {
    /// (even label, exponent) factors, basis order
    pub even: Vec<(String, u32)>,
    /// odd labels, increasing index order
    pub odd: Vec<String>,
    pub coefficient: String,
}

pub fn pbw_terms(alg: &LieSuperalgebra, u: &PBWElement) -> Vec<PBWTermDoc> {
    u.terms()
        .map(|(m, c)| PBWTermDoc {
            even: m
                .even
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| (alg.label(i).to_string(), *e))
                .collect(),
            odd: mask::bits(m.mask)
                .map(|k| alg.label(alg.odd_index(k)).to_string())
                .collect(),
            coefficient: scalar::format(c),
        })
        .collect()
}

/// One coefficient field Σ c · ε-monomial ⊗ target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub space: String,
    pub terms: Vec<FieldTermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldTermDoc {
    /// odd labels of the ε-monomial, increasing index order
    pub epsilons: Vec<String>,
    /// target generator: a basis label for the full module, a complement
    /// basis label in brackets for the quotient
    pub target: String,
    pub coefficient: String,
}

pub fn field_doc(
    alg: &LieSuperalgebra,
    h: Option<&SubalgebraEmbedding>,
    w: &ExteriorField,
) -> FieldDoc {
    let space = match w.space {
        TargetSpace::Full => "full",
        TargetSpace::Quotient => "quotient",
    };
    let target_label = |t: usize| match w.space {
        TargetSpace::Full => alg.label(t).to_string(),
        TargetSpace::Quotient => match h {
            Some(h) => format!("[{}]", alg.label(h.complement()[t])),
            None => format!("[q{t}]"),
        },
    };
    FieldDoc {
        space: space.to_string(),
        terms: w
            .terms()
            .map(|((m, t), c)| FieldTermDoc {
                epsilons: mask::bits(*m)
                    .map(|k| format!("e^{}", alg.label(alg.odd_index(k))))
                    .collect(),
                target: target_label(*t),
                coefficient: scalar::format(c),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceDoc {
    pub dimension: usize,
    pub is_ideal: bool,
    pub is_subalgebra: bool,
    pub basis: Vec<Vec<String>>,
}

pub fn subspace_doc(r: &SubspaceReport) -> SubspaceDoc {
    SubspaceDoc {
        dimension: r.dimension,
        is_ideal: r.is_ideal,
        is_subalgebra: r.is_subalgebra,
        basis: r
            .basis
            .iter()
            .map(|v| v.iter().map(scalar::format).collect())
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SufficientDoc {
    pub holds: bool,
    pub bracket_span: SubspaceDoc,
    pub h0_cap_kernel: SubspaceDoc,
    pub effectiveness_ideal: SubspaceDoc,
}

pub fn sufficient_doc(r: &SufficientSplitReport) -> SufficientDoc {
    SufficientDoc {
        holds: r.holds,
        bracket_span: subspace_doc(&r.bracket_span),
        h0_cap_kernel: subspace_doc(&r.h0_cap_kernel),
        effectiveness_ideal: subspace_doc(&r.effectiveness_ideal),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub feasible: bool,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub particular: Option<FieldDoc>,
    pub homogeneous_basis: Vec<FieldDoc>,
}

pub fn solution_doc(
    alg: &LieSuperalgebra,
    h: Option<&SubalgebraEmbedding>,
    s: &GradingSolutionSpace,
) -> SolutionDoc {
    SolutionDoc {
        feasible: s.feasible,
        dimension: s.dimension,
        particular: s.particular.as_ref().map(|w| field_doc(alg, h, w)),
        homogeneous_basis: s
            .homogeneous_basis
            .iter()
            .map(|w| field_doc(alg, h, w))
            .collect(),
    }
}

pub fn split_check_payload(
    alg: &LieSuperalgebra,
    h: &SubalgebraEmbedding,
    v: &SplitVerdict,
) -> Payload {
    Payload::SplitCheck {
        verdict: v.verdict.as_str().to_string(),
        splitness_inconclusive: v.assumptions.splitness_inconclusive,
        sufficient: sufficient_doc(&v.sufficient),
        solution: v.gradings.as_ref().map(|s| solution_doc(alg, Some(h), s)),
        witness_operator: v
            .witness_operator
            .as_ref()
            .map(|w| field_doc(alg, Some(h), w)),
        witness_lift: v.witness_lift.as_ref().map(|w| field_doc(alg, Some(h), w)),
    }
}

pub fn ranks_payload(r: &RankVector) -> Payload {
    Payload::Ranks {
        entries: r.entries.clone(),
        total: r.total(),
    }
}

impl ReportDocument {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let mut push = |line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        push(format!("{} {} — {}", self.tool, self.version, self.operation));
        if let Some(a) = &self.inputs.algebra {
            push(format!("algebra:    {a}"));
        }
        if let Some(h) = &self.inputs.subalgebra {
            push(format!("subalgebra: {h}"));
        }
        if let Some(w) = &self.inputs.word {
            push(format!("word:       {}", w.join("·")));
        }
        push(format!(
            "assumes connected groups: {}",
            self.assumptions.connected_groups
        ));
        if let Some(d) = self.assumptions.effectiveness_ideal_dimension {
            push(format!(
                "effectiveness ideal: dim {d} ({})",
                self.assumptions.effectiveness_interpretation
            ));
        }
        match &self.payload {
            Payload::Validation {
                valid,
                algebra_violations,
                subalgebra_violations,
            } => {
                push(format!("valid: {valid}"));
                for v in algebra_violations {
                    push(format!("  algebra violation: {v}"));
                }
                for v in subalgebra_violations {
                    push(format!("  subalgebra violation: {v}"));
                }
            }
            Payload::Algebra { algebra } => {
                push(format!(
                    "algebra `{}`: dimension {} ({} even, {} odd)",
                    algebra.name,
                    algebra.basis.len(),
                    algebra.basis.iter().filter(|b| b.parity == 0).count(),
                    algebra.basis.iter().filter(|b| b.parity == 1).count(),
                ));
                push(format!("{} bracket entries", algebra.brackets.len()));
            }
            Payload::Subalgebra { subalgebra } => {
                push(format!(
                    "subalgebra `{}` of `{}`: {} spanning vectors",
                    subalgebra.name,
                    subalgebra.parent,
                    subalgebra.vectors.len()
                ));
            }
            Payload::Envelope {
                operation,
                element,
                filtration_degree,
                augmentation,
            } => {
                push(format!("envelope operation: {operation}"));
                push(format!("filtration degree: {filtration_degree}"));
                push(format!("augmentation: {augmentation}"));
                if element.is_empty() {
                    push("element: 0".to_string());
                }
                for t in element {
                    let mut factors: Vec<String> = t
                        .even
                        .iter()
                        .map(|(l, e)| {
                            if *e == 1 {
                                l.clone()
                            } else {
                                format!("{l}^{e}")
                            }
                        })
                        .collect();
                    factors.extend(t.odd.iter().cloned());
                    let mono = if factors.is_empty() {
                        "1".to_string()
                    } else {
                        factors.join("·")
                    };
                    push(format!("  ({}) {mono}", t.coefficient));
                }
            }
            Payload::Invariants {
                space,
                invariance,
                dimension,
                basis,
            } => {
                push(format!(
                    "invariant fields in the {space} module under {invariance}: dimension {dimension}"
                ));
                for (i, f) in basis.iter().enumerate() {
                    push(format!("  basis[{i}]: {}", render_field(f)));
                }
            }
            Payload::Ranks { entries, total } => {
                push(format!("split model ranks by degree: {entries:?}"));
                push(format!("total: {total}"));
            }
            Payload::SplitCheck {
                verdict,
                splitness_inconclusive,
                sufficient,
                solution,
                witness_operator,
                ..
            } => {
                push(format!("verdict: {verdict}"));
                if *splitness_inconclusive {
                    push(
                        "note: this result does not decide splitness; it only rules out \
                         compatible left-invariant gradings"
                            .to_string(),
                    );
                }
                push(format!(
                    "bracket criterion [g1,h1] ⊆ h0 ∩ Ker(ad|g1): {}",
                    sufficient.holds
                ));
                push(format!(
                    "  dim [g1,h1] = {}, dim h0 ∩ Ker(ad|g1) = {}, dim effectiveness ideal = {}",
                    sufficient.bracket_span.dimension,
                    sufficient.h0_cap_kernel.dimension,
                    sufficient.effectiveness_ideal.dimension
                ));
                if let Some(s) = solution {
                    push(format!(
                        "grading system: feasible = {}, solution dimension = {}",
                        s.feasible, s.dimension
                    ));
                }
                if let Some(w) = witness_operator {
                    push(format!("witness operator: {}", render_field(w)));
                }
            }
            Payload::StrictInvariance {
                feasible,
                dimension,
                particular,
            } => {
                push(format!("strictly invariant gradings feasible: {feasible}"));
                push(format!("solution dimension: {dimension}"));
                if let Some(w) = particular {
                    push(format!("particular: {}", render_field(w)));
                }
            }
        }
        out
    }
}

fn render_field(f: &FieldDoc) -> String {
    if f.terms.is_empty() {
        return "0".to_string();
    }
    f.terms
        .iter()
        .map(|t| {
            let eps = if t.epsilons.is_empty() {
                "1".to_string()
            } else {
                t.epsilons.join("∧")
            };
            format!("({})·{}⊗{}", t.coefficient, eps, t.target)
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use supersplit_core::catalog;
    use supersplit_core::grading;
    use supersplit_core::pbw::Envelope;

    #[test]
    fn report_round_trips_through_the_parser() {
        let alg = catalog::gl(1, 1);
        let env = Envelope::new(&alg);
        let h = SubalgebraEmbedding::even_part(&alg);
        let verdict = grading::full_verdict(&env, &h);
        let report = ReportDocument {
            tool: "supersplit".into(),
            version: "0.0.0-test".into(),
            operation: "split-check".into(),
            inputs: InputsEcho {
                algebra: Some(alg.name().to_string()),
                subalgebra: Some("g0".into()),
                ..Default::default()
            },
            assumptions: AssumptionBlock::new(Some(
                verdict.assumptions.effectiveness_ideal_dim,
            )),
            payload: split_check_payload(&alg, &h, &verdict),
        };
        let text = report.to_machine();
        let back = ReportDocument::parse(&text).unwrap();
        assert_eq!(report, back);
        // and serialization is reproducible
        assert_eq!(text, back.to_machine());
    }

    #[test]
    fn human_rendering_mentions_the_verdict() {
        let alg = catalog::gl(1, 1);
        let env = Envelope::new(&alg);
        let h = SubalgebraEmbedding::even_part(&alg);
        let verdict = grading::full_verdict(&env, &h);
        let report = ReportDocument {
            tool: "supersplit".into(),
            version: "0".into(),
            operation: "split-check".into(),
            inputs: Default::default(),
            assumptions: AssumptionBlock::new(None),
            payload: split_check_payload(&alg, &h, &verdict),
        };
        let human = report.to_human();
        assert!(human.contains("SPLIT_BY_SUFFICIENT_CONDITION"));
    }
}
