//! Exhaustive enumeration of pointed algebra homomorphisms from a completed
//! presentation into a test algebra, plus the tangent-dimension count.
//!
//! A pointed homomorphism out of the completed path algebra is determined by
//! sending each arrow `a: i -> j` into the augmentation component `n_ij` of
//! the target; it factors through the relation ideal exactly when every
//! relation evaluates to zero.  Finiteness of the target over `F_p` makes the
//! enumeration exhaustive, and nilpotency of `n` makes it complete for the
//! completed source.

use rayon::prelude::*;

use crate::construct::contraction_algebra;
use crate::error::CoreError;
use crate::presentation::Presentation;

use super::test_algebra::TestAlgebra;

pub const DEFAULT_SEARCH_CAP: u128 = 1 << 24;

/// One homomorphism: the image vector (over the target basis) per arrow.
pub type HomAssignment = Vec<Vec<u64>>;

#[derive(Debug, Clone)]
pub struct HomSet {
    pub assignments: Vec<HomAssignment>,
}

impl HomSet {
    pub fn count(&self) -> usize {
        self.assignments.len()
    }
}

pub fn enumerate_hom(source: &Presentation, target: &TestAlgebra) -> Result<HomSet, CoreError> {
    enumerate_hom_with_cap(source, target, DEFAULT_SEARCH_CAP)
}

pub fn enumerate_hom_with_cap(
    source: &Presentation,
    target: &TestAlgebra,
    cap: u128,
) -> Result<HomSet, CoreError> {
    let p = target.p();
    if source.field.characteristic() != p {
        return Err(CoreError::FieldMismatch {
            left: source.field.dsl_name(),
            right: format!("F{p}"),
        });
    }
    if source.vertex_count() != target.points() {
        return Err(CoreError::PointCountMismatch {
            algebra_points: source.vertex_count(),
            gamma_points: target.points(),
        });
    }

    // per-arrow slot: the augmentation basis of component (source, target)
    let slots: Vec<Vec<usize>> = source
        .quiver
        .arrows()
        .map(|(_, arrow)| target.augmentation_component(arrow.source.0, arrow.target.0))
        .collect();
    let digits: usize = slots.iter().map(Vec::len).sum();
    let total = (p as u128)
        .checked_pow(digits.min(127) as u32)
        .filter(|_| digits < 127)
        .ok_or(CoreError::SearchSpaceTooLarge {
            size: u128::MAX,
            cap,
        })?;
    if total > cap {
        return Err(CoreError::SearchSpaceTooLarge { size: total, cap });
    }

    let assignments: Vec<HomAssignment> = (0..total as u64)
        .into_par_iter()
        .filter_map(|index| {
            let assignment = decode_assignment(index as u128, p, &slots, target.dim());
            if satisfies_relations(source, target, &assignment) {
                Some(assignment)
            } else {
                None
            }
        })
        .collect();
    Ok(HomSet { assignments })
}

fn decode_assignment(mut index: u128, p: u64, slots: &[Vec<usize>], dim: usize) -> HomAssignment {
    let mut out = Vec::with_capacity(slots.len());
    for slot in slots {
        let mut v = vec![0u64; dim];
        for &basis_index in slot {
            v[basis_index] = (index % p as u128) as u64;
            index /= p as u128;
        }
        out.push(v);
    }
    out
}

fn satisfies_relations(
    source: &Presentation,
    target: &TestAlgebra,
    assignment: &HomAssignment,
) -> bool {
    for rel in &source.relations {
        let mut acc = vec![0u64; target.dim()];
        for (path, coeff) in rel.terms() {
            let (_, c) = coeff
                .prime_value()
                .expect("relation scalar lives in the prime field");
            if c == 0 {
                continue;
            }
            let mut value: Option<Vec<u64>> = None;
            for arrow in path.arrows() {
                let img = &assignment[arrow.0];
                value = Some(match value {
                    None => img.clone(),
                    Some(prev) => target.multiply(&prev, img),
                });
            }
            let value = value.expect("relations have order >= 1");
            for (k, &x) in value.iter().enumerate() {
                acc[k] = (acc[k] + c * x) % target.p();
            }
        }
        if acc.iter().any(|&x| x != 0) {
            return false;
        }
    }
    true
}

/// Tangent dimensions `t[i][j]` = number of arrows `j -> i` in the
/// contraction presentation (contract first, then count).  Requires every
/// relation to have order >= 2.
pub fn tangent_dims(presentation: &Presentation) -> Result<Vec<Vec<usize>>, CoreError> {
    for rel in &presentation.relations {
        if rel.order().unwrap_or(0) < 2 {
            return Err(CoreError::NotDegreeOneMinimal(
                crate::dsl::print_poly(rel, &presentation.quiver),
            ));
        }
    }
    let contracted = if presentation.quiver.base_vertices().is_empty() {
        presentation.clone()
    } else {
        contraction_algebra(presentation)?
    };
    let n = contracted.quiver.vertex_count();
    let mut t = vec![vec![0usize; n]; n];
    for (_, arrow) in contracted.quiver.arrows() {
        t[arrow.target.0][arrow.source.0] += 1;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::test_algebra::make_test_algebra;
    use crate::dsl::{parse_presentation, SourceFile};

    fn parse(text: &str) -> Presentation {
        parse_presentation(&SourceFile::new(text, "<test>"))
            .unwrap()
            .presentation
    }

    fn dual_numbers_f2() -> TestAlgebra {
        let p = parse("quiver d over F2 { vertices: pt; arrows: t: pt -> pt; relations: t^2; }");
        make_test_algebra(&p, 2).unwrap()
    }

    #[test]
    fn zigzag_into_dual_numbers_has_four_homs() {
        let source = parse(
            "quiver z over F2 { vertices: pt; arrows: u: pt -> pt, v: pt -> pt; relations: u^2, v^2; }",
        );
        let homs = enumerate_hom(&source, &dual_numbers_f2()).unwrap();
        assert_eq!(homs.count(), 4);
    }

    #[test]
    fn trivial_target_admits_exactly_one_hom() {
        let gamma = parse("quiver f over F3 { vertices: v1, v2; }");
        let target = make_test_algebra(&gamma, 0).unwrap();
        let source = parse(
            "quiver c over F3 { vertices: v1, v2; arrows: c2: v1 -> v2, a2: v2 -> v1; relations: a2*c2*a2, c2*a2*c2; }",
        );
        let homs = enumerate_hom(&source, &target).unwrap();
        assert_eq!(homs.count(), 1);
    }

    #[test]
    fn two_cycle_self_test_object_has_four_homs() {
        let source = parse(
            "quiver w over F2 { vertices: v1, v2; arrows: a: v1 -> v2, b: v2 -> v1; relations: a*b, b*a; }",
        );
        let target = make_test_algebra(&source, 2).unwrap();
        // dim = e1, e2, a, b; assignments a -> alpha*a, b -> beta*b
        assert_eq!(target.dim(), 4);
        let homs = enumerate_hom(&source, &target).unwrap();
        assert_eq!(homs.count(), 4);
    }

    #[test]
    fn point_count_mismatch_is_rejected() {
        let source = parse("quiver s over F2 { vertices: v1, v2; }");
        let homs = enumerate_hom(&source, &dual_numbers_f2());
        assert!(matches!(homs, Err(CoreError::PointCountMismatch { .. })));
    }

    #[test]
    fn tangent_matrix_of_two_cycle() {
        let p = parse(
            "quiver w over F2 { vertices: v1, v2; arrows: c2: v1 -> v2, a2: v2 -> v1; relations: a2*c2*a2, c2*a2*c2; }",
        );
        let t = tangent_dims(&p).unwrap();
        assert_eq!(t, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn order_one_relation_rejected_by_tangent() {
        let p = parse(
            "quiver s over F2 { vertices: pt; arrows: u: pt -> pt, v: pt -> pt; relations: v - u^2; }",
        );
        assert!(matches!(
            tangent_dims(&p),
            Err(CoreError::NotDegreeOneMinimal(_))
        ));
    }

    #[test]
    fn point_algebra_tangent_is_zero() {
        let p = parse("quiver pt over F2 { vertices: v; }");
        assert_eq!(tangent_dims(&p).unwrap(), vec![vec![0]]);
    }
}
