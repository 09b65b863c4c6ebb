//! Presentations: a quiver with uniform relations over an exact field.
//!
//! A presentation denotes the completed path algebra of its quiver modulo the
//! closure of the two-sided ideal generated by its relations.  Relations must
//! lie in the arrow ideal (order >= 1) and be uniform.

use crate::error::CoreError;
use crate::field::FieldSpec;
use crate::poly::NCPoly;
use crate::quiver::Quiver;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub field: FieldSpec,
    pub quiver: Quiver,
    pub relations: Vec<NCPoly>,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        field: FieldSpec,
        quiver: Quiver,
        relations: Vec<NCPoly>,
    ) -> Result<Presentation, CoreError> {
        let p = Presentation {
            name: name.into(),
            field,
            quiver,
            relations,
        };
        p.validate()?;
        Ok(p)
    }

    /// Checks every type invariant, naming the first violation.
    pub fn validate(&self) -> Result<(), CoreError> {
        self.field.validate()?;
        self.quiver.validate()?;
        for (idx, rel) in self.relations.iter().enumerate() {
            let label = || format!("relation #{}: {}", idx + 1, rel.display(&self.quiver));
            if rel.is_zero() {
                return Err(CoreError::InvalidPresentation(format!(
                    "{} is identically zero",
                    label()
                )));
            }
            for (path, coeff) in rel.terms() {
                if path.source() != rel.source() || path.target() != rel.target() {
                    return Err(CoreError::InvalidPresentation(format!(
                        "non-uniform relation: {}",
                        label()
                    )));
                }
                if coeff.field() != self.field {
                    return Err(CoreError::InvalidPresentation(format!(
                        "{} has a coefficient from {}",
                        label(),
                        coeff.field()
                    )));
                }
                for a in path.arrows() {
                    if a.0 >= self.quiver.arrow_count() {
                        return Err(CoreError::InvalidPresentation(format!(
                            "{} uses an arrow that does not exist",
                            label()
                        )));
                    }
                }
            }
            if rel.order() == Some(0) {
                return Err(CoreError::InvalidPresentation(format!(
                    "relation has order-0 component: {}",
                    label()
                )));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;
    use crate::quiver::{ArrowId, VertexId};
    use num::BigInt;
    use std::collections::BTreeSet;

    fn one() -> Scalar {
        FieldSpec::Rationals.from_integer(&BigInt::from(1))
    }

    #[test]
    fn order_zero_relation_rejected() {
        let q = Quiver::new(
            vec!["pt".into()],
            vec![("u".into(), VertexId(0), VertexId(0))],
            BTreeSet::new(),
        )
        .unwrap();
        let mut rel = NCPoly::monomial(q.arrow_path(ArrowId(0)), one());
        rel.add_term(q.trivial_path(VertexId(0)), one());
        let err = Presentation::new("bad", FieldSpec::Rationals, q, vec![rel]).unwrap_err();
        assert!(err.to_string().contains("order-0"));
    }

    #[test]
    fn field_mismatch_in_relation_rejected() {
        let q = Quiver::new(
            vec!["pt".into()],
            vec![("u".into(), VertexId(0), VertexId(0))],
            BTreeSet::new(),
        )
        .unwrap();
        let rel = NCPoly::monomial(
            q.arrow_path(ArrowId(0)),
            FieldSpec::PrimeField(5).one(),
        );
        assert!(Presentation::new("bad", FieldSpec::Rationals, q, vec![rel]).is_err());
    }

    #[test]
    fn empty_presentation_is_valid() {
        let q = Quiver::new(vec!["pt".into()], vec![], BTreeSet::new()).unwrap();
        let p = Presentation::new("pt", FieldSpec::Rationals, q, vec![]).unwrap();
        assert_eq!(p.vertex_count(), 1);
    }
}
