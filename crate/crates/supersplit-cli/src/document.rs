//! On-disk document formats. Everything is JSON with rational coefficients
//! as strings ("p" or "p/q"), so files are exact and round-trip through the
//! parser unchanged.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use supersplit_core::algebra::{AlgebraError, LieSuperalgebra, Parity};
use supersplit_core::scalar::{self, Scalar};
use supersplit_core::subalgebra::{SubalgebraEmbedding, SubalgebraError};

#[derive(Debug, Clone, Error)]
pub enum DocumentError {
    #[error("{0}")]
    Json(String),
    #[error("unknown basis label `{label}` in bracket entry [{left}, {right}]")]
    UnknownLabel {
        label: String,
        left: String,
        right: String,
    },
    #[error("coefficient for ({context}): {source}")]
    BadScalar {
        context: String,
        #[source]
        source: scalar::ParseScalarError,
    },
    #[error("parity of `{label}` must be 0 or 1, got {parity}")]
    BadParity { label: String, parity: u8 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Subalgebra(#[from] SubalgebraError),
    #[error("subalgebra document names parent `{doc}`, but the algebra is `{alg}`")]
    ParentMismatch { doc: String, alg: String },
    #[error("subalgebra vector {index} has {got} coordinates, algebra has dimension {expected}")]
    VectorLength {
        index: usize,
        got: usize,
        expected: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub label: String,
    pub parity: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    /// (label, rational string) pairs
    pub terms: Vec<(String, String)>,
}

/// A structure-constant Lie superalgebra as a document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub name: String,
    pub basis: Vec<BasisEntry>,
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "std::collections::BTreeMap::is_empty")]
    pub metadata: std::collections::BTreeMap<String, String>,
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))
    }

    pub fn print(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serialization");
        s.push('\n');
        s
    }

    pub fn to_algebra(&self) -> Result<LieSuperalgebra, DocumentError> {
        let mut generators = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let parity = Parity::from_bit(b.parity).map_err(|_| DocumentError::BadParity {
                label: b.label.clone(),
                parity: b.parity,
            })?;
            generators.push((b.label.clone(), parity));
        }
        let index_of = |label: &str, left: &str, right: &str| {
            self.basis
                .iter()
                .position(|b| b.label == label)
                .ok_or_else(|| DocumentError::UnknownLabel {
                    label: label.to_string(),
                    left: left.to_string(),
                    right: right.to_string(),
                })
        };
        let mut entries = Vec::with_capacity(self.brackets.len());
        for br in &self.brackets {
            let a = index_of(&br.left, &br.left, &br.right)?;
            let b = index_of(&br.right, &br.left, &br.right)?;
            let mut terms = Vec::with_capacity(br.terms.len());
            for (label, coeff) in &br.terms {
                let i = index_of(label, &br.left, &br.right)?;
                let c = scalar::parse(coeff).map_err(|source| DocumentError::BadScalar {
                    context: format!("[{}, {}] -> {}", br.left, br.right, label),
                    source,
                })?;
                terms.push((i, c));
            }
            entries.push((a, b, terms));
        }
        Ok(LieSuperalgebra::new(self.name.clone(), generators, entries)?)
    }

    /// Document for an in-memory algebra: one bracket entry per generator
    /// pair (a ≤ b) with a nonzero bracket, in basis order.
    pub fn from_algebra(alg: &LieSuperalgebra) -> Self {
        let basis = (0..alg.dim())
            .map(|i| BasisEntry {
                label: alg.label(i).to_string(),
                parity: alg.parity(i).bit(),
            })
            .collect();
        let mut brackets = Vec::new();
        for a in 0..alg.dim() {
            for b in a..alg.dim() {
                let terms = alg.bracket_gens(a, b);
                if terms.is_empty() {
                    continue;
                }
                brackets.push(BracketEntry {
                    left: alg.label(a).to_string(),
                    right: alg.label(b).to_string(),
                    terms: terms
                        .iter()
                        .map(|(i, c)| (alg.label(*i).to_string(), scalar::format(c)))
                        .collect(),
                });
            }
        }
        AlgebraDocument {
            name: alg.name().to_string(),
            basis,
            brackets,
            metadata: Default::default(),
        }
    }
}

/// A subalgebra of a parent algebra: homogeneous spanning vectors as dense
/// coordinate rows over the parent basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraDocument {
    pub name: String,
    pub parent: String,
    pub vectors: Vec<Vec<String>>,
}

impl SubalgebraDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))
    }

    pub fn print(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serialization");
        s.push('\n');
        s
    }

    pub fn to_embedding(
        &self,
        alg: &LieSuperalgebra,
    ) -> Result<SubalgebraEmbedding, DocumentError> {
        if !self.parent.is_empty() && self.parent != alg.name() {
            return Err(DocumentError::ParentMismatch {
                doc: self.parent.clone(),
                alg: alg.name().to_string(),
            });
        }
        let mut vectors = Vec::with_capacity(self.vectors.len());
        for (index, row) in self.vectors.iter().enumerate() {
            if row.len() != alg.dim() {
                return Err(DocumentError::VectorLength {
                    index,
                    got: row.len(),
                    expected: alg.dim(),
                });
            }
            let mut v: Vec<Scalar> = Vec::with_capacity(row.len());
            for (j, s) in row.iter().enumerate() {
                v.push(scalar::parse(s).map_err(|source| DocumentError::BadScalar {
                    context: format!("vector {index}, coordinate {j}"),
                    source,
                })?);
            }
            vectors.push(v);
        }
        Ok(SubalgebraEmbedding::new(alg, vectors)?)
    }

    pub fn from_embedding(
        name: impl Into<String>,
        alg: &LieSuperalgebra,
        h: &SubalgebraEmbedding,
    ) -> Self {
        SubalgebraDocument {
            name: name.into(),
            parent: alg.name().to_string(),
            vectors: h
                .basis()
                .iter()
                .map(|v| v.coords.iter().map(scalar::format).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use supersplit_core::catalog;

    #[test]
    fn algebra_document_round_trips() {
        for alg in [catalog::gl(1, 1), catalog::osp12(), catalog::abelian(1, 2)] {
            let doc = AlgebraDocument::from_algebra(&alg);
            let text = doc.print();
            let back = AlgebraDocument::parse(&text).unwrap();
            assert_eq!(doc, back);
            // and the algebra itself survives
            let alg2 = back.to_algebra().unwrap();
            assert_eq!(alg, alg2);
        }
    }

    #[test]
    fn subalgebra_document_round_trips() {
        let alg = catalog::gl(2, 2);
        let h = catalog::parabolic(&alg, 2, 2, 1, 1).unwrap();
        let doc = SubalgebraDocument::from_embedding("p(1,1)", &alg, &h);
        let back = SubalgebraDocument::parse(&doc.print()).unwrap();
        assert_eq!(doc, back);
        let h2 = back.to_embedding(&alg).unwrap();
        assert_eq!(h.basis(), h2.basis());
    }

    #[test]
    fn unknown_label_is_reported() {
        let alg = catalog::gl(1, 1);
        let mut doc = AlgebraDocument::from_algebra(&alg);
        doc.brackets[0].terms.push(("nope".into(), "1".into()));
        assert!(matches!(
            doc.to_algebra(),
            Err(DocumentError::UnknownLabel { .. })
        ));
    }

    #[test]
    fn inexact_coefficients_are_rejected() {
        let alg = catalog::gl(1, 1);
        let mut doc = AlgebraDocument::from_algebra(&alg);
        doc.brackets[0].terms[0].1 = "0.5".into();
        assert!(matches!(doc.to_algebra(), Err(DocumentError::BadScalar { .. })));
    }

    #[test]
    fn parent_mismatch_is_rejected() {
        let alg = catalog::gl(1, 1);
        let h = SubalgebraEmbedding::even_part(&alg);
        let mut doc = SubalgebraDocument::from_embedding("h", &alg, &h);
        doc.parent = "other".into();
        assert!(matches!(
            doc.to_embedding(&alg),
            Err(DocumentError::ParentMismatch { .. })
        ));
    }
}
