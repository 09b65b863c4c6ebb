//! Quivers and composable paths.
//!
//! The composition convention throughout is that the written word `ab` means
//! "a then b": a path stores its arrows in traversal order, and `p * q` is
//! defined when `target(p) = source(q)`.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::CoreError;

/// Index of a vertex in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

/// Index of an arrow in declaration order.  Declaration order doubles as the
/// lexicographic tie-break of the local path order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArrowId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver with an optional distinguished set of base vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    base: BTreeSet<VertexId>,
}

impl Quiver {
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<(String, VertexId, VertexId)>,
        base: BTreeSet<VertexId>,
    ) -> Result<Quiver, CoreError> {
        let q = Quiver {
            vertices,
            arrows: arrows
                .into_iter()
                .map(|(name, source, target)| Arrow { name, source, target })
                .collect(),
            base,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.clone()) {
                return Err(CoreError::InvalidPresentation(format!(
                    "duplicate name `{v}`"
                )));
            }
        }
        for a in &self.arrows {
            if !seen.insert(a.name.clone()) {
                return Err(CoreError::InvalidPresentation(format!(
                    "duplicate name `{}`",
                    a.name
                )));
            }
            if a.source.0 >= self.vertices.len() || a.target.0 >= self.vertices.len() {
                return Err(CoreError::InvalidPresentation(format!(
                    "arrow `{}` references a vertex that does not exist",
                    a.name
                )));
            }
        }
        for b in &self.base {
            if b.0 >= self.vertices.len() {
                return Err(CoreError::InvalidPresentation(
                    "base vertex out of range".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrows(&self) -> impl Iterator<Item = (ArrowId, &Arrow)> {
        self.arrows.iter().enumerate().map(|(i, a)| (ArrowId(i), a))
    }

    pub fn base_vertices(&self) -> &BTreeSet<VertexId> {
        &self.base
    }

    pub fn set_base_vertices(&mut self, base: BTreeSet<VertexId>) {
        self.base = base;
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name).map(VertexId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    /// Vertices not in the base set, in declaration order.
    pub fn non_base_vertices(&self) -> Vec<VertexId> {
        (0..self.vertices.len())
            .map(VertexId)
            .filter(|v| !self.base.contains(v))
            .collect()
    }

    pub fn trivial_path(&self, v: VertexId) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow_path(&self, a: ArrowId) -> Path {
        let arr = self.arrow(a);
        Path {
            source: arr.source,
            target: arr.target,
            arrows: vec![a],
        }
    }

    /// Builds a path from a nonempty arrow sequence, checking composability.
    pub fn path_from_arrows(&self, arrows: &[ArrowId]) -> Option<Path> {
        let first = self.arrow(*arrows.first()?);
        let mut current = first.target;
        for a in &arrows[1..] {
            let arr = self.arrow(*a);
            if arr.source != current {
                return None;
            }
            current = arr.target;
        }
        Some(Path {
            source: first.source,
            target: current,
            arrows: arrows.to_vec(),
        })
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e({})", self.vertex_name(p.source))
        } else {
            p.arrows
                .iter()
                .map(|a| self.arrow(*a).name.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A composable sequence of arrows; the empty sequence is the trivial path at
/// its vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.source == self.target
    }

    /// Contiguous subpath `[start, start+len)`.  Panics on out-of-range input;
    /// the result is composable because the ambient path is.
    pub fn subpath(&self, quiver: &Quiver, start: usize, len: usize) -> Path {
        assert!(start + len <= self.arrows.len());
        let arrows = self.arrows[start..start + len].to_vec();
        if arrows.is_empty() {
            let v = if start == 0 {
                self.source
            } else {
                quiver.arrow(self.arrows[start - 1]).target
            };
            Path {
                source: v,
                target: v,
                arrows,
            }
        } else {
            quiver
                .path_from_arrows(&arrows)
                .expect("subpath of a valid path is composable")
        }
    }
}

/// Composes `p` then `q`; `None` is the distinguished zero outcome for
/// non-composable inputs, not an error.
pub fn compose_paths(p: &Path, q: &Path) -> Option<Path> {
    if p.target != q.source {
        return None;
    }
    let mut arrows = p.arrows.clone();
    arrows.extend_from_slice(&q.arrows);
    Some(Path {
        source: p.source,
        target: q.target,
        arrows,
    })
}

/// The local path order: ascending degree first, ties broken left-to-right by
/// arrow declaration index.  This order is multiplicative, and the *minimal*
/// path of a polynomial is its leading word.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| (self.source, self.target).cmp(&(other.source, other.target)))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Display without a quiver falls back to raw arrow indices; use
// `Quiver::path_name` for named output.
impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e(v{})", self.source.0)
        } else {
            let ids: Vec<String> = self.arrows.iter().map(|a| format!("a{}", a.0)).collect();
            write!(f, "{}", ids.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_vertex_quiver() -> Quiver {
        Quiver::new(
            vec!["v1".into(), "v2".into(), "v3".into()],
            vec![
                ("a".into(), VertexId(0), VertexId(1)),
                ("b".into(), VertexId(1), VertexId(2)),
            ],
            BTreeSet::new(),
        )
        .unwrap()
    }

    #[test]
    fn trivial_path_is_identity() {
        let q = two_vertex_quiver();
        let a = q.arrow_path(ArrowId(0));
        let e1 = q.trivial_path(VertexId(0));
        let e2 = q.trivial_path(VertexId(1));
        assert_eq!(compose_paths(&e1, &a).unwrap(), a);
        assert_eq!(compose_paths(&a, &e2).unwrap(), a);
    }

    #[test]
    fn composition_follows_then_order() {
        let q = two_vertex_quiver();
        let a = q.arrow_path(ArrowId(0));
        let b = q.arrow_path(ArrowId(1));
        let ab = compose_paths(&a, &b).unwrap();
        assert_eq!(ab.source(), VertexId(0));
        assert_eq!(ab.target(), VertexId(2));
        assert_eq!(ab.arrows(), &[ArrowId(0), ArrowId(1)]);
    }

    #[test]
    fn non_composable_is_zero() {
        let q = two_vertex_quiver();
        let a = q.arrow_path(ArrowId(0));
        assert!(compose_paths(&a, &a).is_none());
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = Quiver::new(
            vec!["v".into()],
            vec![("v".into(), VertexId(0), VertexId(0))],
            BTreeSet::new(),
        );
        assert!(err.is_err());
    }

    #[test]
    fn local_order_is_degree_then_lex() {
        let q = Quiver::new(
            vec!["v".into()],
            vec![
                ("u".into(), VertexId(0), VertexId(0)),
                ("w".into(), VertexId(0), VertexId(0)),
            ],
            BTreeSet::new(),
        )
        .unwrap();
        let e = q.trivial_path(VertexId(0));
        let u = q.arrow_path(ArrowId(0));
        let w = q.arrow_path(ArrowId(1));
        let uw = compose_paths(&u, &w).unwrap();
        let wu = compose_paths(&w, &u).unwrap();
        assert!(e < u && u < w && w < uw && uw < wu);
    }
}
