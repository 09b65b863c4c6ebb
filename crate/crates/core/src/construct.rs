//! Constructors on presentations: idempotent-ideal quotients (contraction and
//! fiber algebras), abelianization, and the opposite algebra.
//!
//! Deleting a vertex set `S` presents the quotient by the two-sided ideal
//! generated by the trivial paths at `S`: that ideal is exactly the span of
//! paths passing through `S`, so the quotient lives on the vertex-deleted
//! quiver with every relation term through `S` removed.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::CoreError;
use crate::poly::NCPoly;
use crate::presentation::Presentation;
use crate::quiver::{ArrowId, Quiver, VertexId};
use crate::truncation::truncate_quotient;

/// A nonempty, proper set of vertices to delete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSelection {
    delete: BTreeSet<VertexId>,
}

impl VertexSelection {
    pub fn new(
        presentation: &Presentation,
        delete: BTreeSet<VertexId>,
    ) -> Result<VertexSelection, CoreError> {
        let n = presentation.quiver.vertex_count();
        if delete.iter().any(|v| v.0 >= n) {
            return Err(CoreError::UnknownVertex("out of range".into()));
        }
        if delete.len() >= n {
            return Err(CoreError::EmptyContraction);
        }
        Ok(VertexSelection { delete })
    }

    pub fn from_names(
        presentation: &Presentation,
        names: &[String],
    ) -> Result<VertexSelection, CoreError> {
        let mut delete = BTreeSet::new();
        for name in names {
            let v = presentation
                .quiver
                .vertex_by_name(name)
                .ok_or_else(|| CoreError::UnknownVertex(name.clone()))?;
            delete.insert(v);
        }
        VertexSelection::new(presentation, delete)
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.delete
    }
}

/// Quotient by the idempotent ideal of the selected vertices.
pub fn contract_vertices(
    presentation: &Presentation,
    selection: &VertexSelection,
    name: impl Into<String>,
) -> Result<Presentation, CoreError> {
    let quiver = &presentation.quiver;
    let delete = &selection.delete;

    let mut vertex_map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut vertices = Vec::new();
    for v in 0..quiver.vertex_count() {
        let v = VertexId(v);
        if !delete.contains(&v) {
            vertex_map.insert(v, VertexId(vertices.len()));
            vertices.push(quiver.vertex_name(v).to_string());
        }
    }
    let mut arrow_map: BTreeMap<ArrowId, ArrowId> = BTreeMap::new();
    let mut arrows = Vec::new();
    for (aid, arrow) in quiver.arrows() {
        if delete.contains(&arrow.source) || delete.contains(&arrow.target) {
            continue;
        }
        arrow_map.insert(aid, ArrowId(arrows.len()));
        arrows.push((
            arrow.name.clone(),
            vertex_map[&arrow.source],
            vertex_map[&arrow.target],
        ));
    }
    let base = quiver
        .base_vertices()
        .iter()
        .filter_map(|v| vertex_map.get(v).copied())
        .collect();
    let new_quiver = Quiver::new(vertices, arrows, base)?;

    let mut relations = Vec::new();
    for rel in &presentation.relations {
        if delete.contains(&rel.source()) || delete.contains(&rel.target()) {
            continue;
        }
        let mut image = NCPoly::zero(vertex_map[&rel.source()], vertex_map[&rel.target()]);
        'term: for (path, coeff) in rel.terms() {
            let mut mapped = Vec::with_capacity(path.len());
            for a in path.arrows() {
                match arrow_map.get(a) {
                    Some(na) => mapped.push(*na),
                    None => continue 'term,
                }
            }
            let new_path = if mapped.is_empty() {
                new_quiver.trivial_path(vertex_map[&rel.source()])
            } else {
                new_quiver
                    .path_from_arrows(&mapped)
                    .expect("surviving arrows keep their composability")
            };
            image.add_term(new_path, coeff.clone());
        }
        if !image.is_zero() {
            relations.push(image);
        }
    }

    Presentation::new(name, presentation.field, new_quiver, relations)
}

/// The contraction algebra: quotient at the base vertices.
pub fn contraction_algebra(presentation: &Presentation) -> Result<Presentation, CoreError> {
    let base = presentation.quiver.base_vertices().clone();
    if base.is_empty() {
        return Err(CoreError::InvalidPresentation(
            "contraction requires declared base vertices".into(),
        ));
    }
    let sel = VertexSelection::new(presentation, base)?;
    contract_vertices(presentation, &sel, format!("{}_con", presentation.name))
}

/// The fiber algebra: quotient at the non-base vertices.
pub fn fiber_algebra(presentation: &Presentation) -> Result<Presentation, CoreError> {
    if presentation.quiver.base_vertices().is_empty() {
        return Err(CoreError::InvalidPresentation(
            "fiber algebra requires declared base vertices".into(),
        ));
    }
    let delete: BTreeSet<VertexId> = presentation
        .quiver
        .non_base_vertices()
        .into_iter()
        .collect();
    if delete.is_empty() {
        return Err(CoreError::InvalidPresentation(
            "every vertex is a base vertex; nothing to delete".into(),
        ));
    }
    let sel = VertexSelection::new(presentation, delete)?;
    contract_vertices(presentation, &sel, format!("{}_fib", presentation.name))
}

/// Abelianization: every arrow between distinct vertices dies (trivial paths
/// are central), loops survive with pairwise commutators imposed on top of
/// the images of the original relations.
pub fn abelianize(presentation: &Presentation) -> Result<Presentation, CoreError> {
    let quiver = &presentation.quiver;
    let mut vertex_map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let vertices: Vec<String> = quiver.vertex_names().to_vec();
    for v in 0..quiver.vertex_count() {
        vertex_map.insert(VertexId(v), VertexId(v));
    }
    let mut arrow_map: BTreeMap<ArrowId, ArrowId> = BTreeMap::new();
    let mut arrows = Vec::new();
    for (aid, arrow) in quiver.arrows() {
        if arrow.source != arrow.target {
            continue;
        }
        arrow_map.insert(aid, ArrowId(arrows.len()));
        arrows.push((arrow.name.clone(), arrow.source, arrow.target));
    }
    let new_quiver = Quiver::new(vertices, arrows, quiver.base_vertices().clone())?;

    let mut relations = Vec::new();
    for rel in &presentation.relations {
        if rel.source() != rel.target() {
            continue;
        }
        let mut image = NCPoly::zero(rel.source(), rel.target());
        'term: for (path, coeff) in rel.terms() {
            let mut mapped = Vec::with_capacity(path.len());
            for a in path.arrows() {
                match arrow_map.get(a) {
                    Some(na) => mapped.push(*na),
                    None => continue 'term,
                }
            }
            let new_path = if mapped.is_empty() {
                new_quiver.trivial_path(rel.source())
            } else {
                new_quiver
                    .path_from_arrows(&mapped)
                    .expect("loops compose at their vertex")
            };
            image.add_term(new_path, coeff.clone());
        }
        if !image.is_zero() {
            relations.push(image);
        }
    }
    // commutators between distinct loops at the same vertex
    let one = presentation.field.one();
    for (a, arr_a) in new_quiver.arrows() {
        for (b, arr_b) in new_quiver.arrows() {
            if a.0 >= b.0 || arr_a.source != arr_b.source {
                continue;
            }
            let ab = new_quiver.path_from_arrows(&[a, b]).unwrap();
            let ba = new_quiver.path_from_arrows(&[b, a]).unwrap();
            let mut comm = NCPoly::monomial(ab, one.clone());
            comm.add_term(ba, one.neg());
            if !comm.is_zero() && !relations.contains(&comm) && !relations.contains(&comm.neg()) {
                relations.push(comm);
            }
        }
    }

    Presentation::new(
        format!("{}_ab", presentation.name),
        presentation.field,
        new_quiver,
        relations,
    )
}

/// Opposite algebra: arrows reversed, relation words reversed, scalars fixed.
pub fn opposite(presentation: &Presentation) -> Result<Presentation, CoreError> {
    let quiver = &presentation.quiver;
    let arrows = quiver
        .arrows()
        .map(|(_, a)| (a.name.clone(), a.target, a.source))
        .collect();
    let new_quiver = Quiver::new(
        quiver.vertex_names().to_vec(),
        arrows,
        quiver.base_vertices().clone(),
    )?;
    let mut relations = Vec::new();
    for rel in &presentation.relations {
        let mut image = NCPoly::zero(rel.target(), rel.source());
        for (path, coeff) in rel.terms() {
            let mut reversed: Vec<ArrowId> = path.arrows().to_vec();
            reversed.reverse();
            let new_path = if reversed.is_empty() {
                new_quiver.trivial_path(rel.target())
            } else {
                new_quiver
                    .path_from_arrows(&reversed)
                    .expect("reversed word composes in the opposite quiver")
            };
            image.add_term(new_path, coeff.clone());
        }
        relations.push(image);
    }
    Presentation::new(
        format!("{}_op", presentation.name),
        presentation.field,
        new_quiver,
        relations,
    )
}

/// True iff all products of residue basis elements commute in the degree-`d`
/// truncation.
pub fn check_commutative(presentation: &Presentation, bound: usize) -> Result<bool, CoreError> {
    let trunc = truncate_quotient(presentation, bound)?;
    let basis = trunc.all_basis_paths();
    let one = presentation.field.one();
    for p in &basis {
        for q in &basis {
            let f = NCPoly::monomial(p.clone(), one.clone());
            let g = NCPoly::monomial(q.clone(), one.clone());
            let fg = trunc.multiply_in_quotient(&f, &g)?;
            let gf = trunc.multiply_in_quotient(&g, &f)?;
            // products with mismatched endpoints are zero of different shapes
            let fg_zero = fg.is_zero();
            let gf_zero = gf.is_zero();
            if fg_zero != gf_zero {
                return Ok(false);
            }
            if !fg_zero && (fg.source() != gf.source() || fg.target() != gf.target()) {
                return Ok(false);
            }
            if !fg_zero && fg != gf {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
