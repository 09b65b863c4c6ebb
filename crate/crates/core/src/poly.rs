//! Noncommutative polynomials: finite linear combinations of composable paths.
//!
//! An `NCPoly` is *uniform*: every stored path shares one declared source and
//! one declared target, which keeps ideal membership and truncation semantics
//! unambiguous.  The zero polynomial is the empty term map with declared
//! endpoints.  Terms are kept in a `BTreeMap` ordered by the local path order,
//! so the first entry is always the leading (minimal) word.

use std::collections::BTreeMap;

use crate::field::{FieldSpec, Scalar};
use crate::quiver::{compose_paths, Path, Quiver, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCPoly {
    source: VertexId,
    target: VertexId,
    terms: BTreeMap<Path, Scalar>,
}

impl NCPoly {
    pub fn zero(source: VertexId, target: VertexId) -> NCPoly {
        NCPoly {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    /// Single-term polynomial.  Panics if the path endpoints are inconsistent;
    /// callers construct paths and terms from the same quiver.
    pub fn monomial(path: Path, coeff: Scalar) -> NCPoly {
        let mut poly = NCPoly::zero(path.source(), path.target());
        poly.add_term(path, coeff);
        poly
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, path: &Path) -> Option<&Scalar> {
        self.terms.get(path)
    }

    /// Leading term under the local order: the minimal path.
    pub fn leading(&self) -> Option<(&Path, &Scalar)> {
        self.terms.iter().next()
    }

    /// Minimal term degree, i.e. the order of the polynomial.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().next().map(Path::len)
    }

    /// Maximal term degree.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Path::len)
    }

    /// Adds `coeff * path`, dropping the entry if the total cancels.
    pub fn add_term(&mut self, path: Path, coeff: Scalar) {
        assert_eq!(path.source(), self.source, "non-uniform term source");
        assert_eq!(path.target(), self.target, "non-uniform term target");
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&path) {
            None => {
                self.terms.insert(path, coeff);
            }
            Some(existing) => {
                let sum = existing.add(&coeff);
                if !sum.is_zero() {
                    self.terms.insert(path, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        assert_eq!((self.source, self.target), (other.source, other.target));
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            source: self.source,
            target: self.target,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, scalar: &Scalar) -> NCPoly {
        if scalar.is_zero() {
            return NCPoly::zero(self.source, self.target);
        }
        NCPoly {
            source: self.source,
            target: self.target,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.clone(), c.mul(scalar)))
                .collect(),
        }
    }

    /// Discards every term of degree strictly above `bound`; returns whether
    /// anything was dropped.
    pub fn truncate(&mut self, bound: usize) -> bool {
        let before = self.terms.len();
        self.terms.retain(|p, _| p.len() <= bound);
        self.terms.len() != before
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> NCPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn field(&self) -> Option<FieldSpec> {
        self.terms.values().next().map(Scalar::field)
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (p, c) in &self.terms {
            let path = quiver.path_name(p);
            if c.is_one() {
                parts.push(path);
            } else {
                parts.push(format!("{c}*{path}"));
            }
        }
        parts.join(" + ")
    }
}

/// Free path-algebra multiplication: the bilinear extension of path
/// composition, with non-composable cross terms vanishing.  When the
/// endpoints do not chain, the result is the zero polynomial from
/// `source(f)` to `target(g)`.
pub fn poly_mul(f: &NCPoly, g: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero(f.source, g.target);
    if f.target != g.source {
        return out;
    }
    for (p, a) in &f.terms {
        for (q, b) in &g.terms {
            if let Some(pq) = compose_paths(p, q) {
                out.add_term(pq, a.mul(b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::quiver::{ArrowId, Quiver};
    use num::BigInt;
    use std::collections::BTreeSet;

    fn loops_uv() -> Quiver {
        Quiver::new(
            vec!["pt".into()],
            vec![
                ("u".into(), VertexId(0), VertexId(0)),
                ("v".into(), VertexId(0), VertexId(0)),
            ],
            BTreeSet::new(),
        )
        .unwrap()
    }

    fn s(n: i64) -> Scalar {
        FieldSpec::Rationals.from_integer(&BigInt::from(n))
    }

    #[test]
    fn product_of_sum_and_difference() {
        let q = loops_uv();
        let u = q.arrow_path(ArrowId(0));
        let v = q.arrow_path(ArrowId(1));
        let mut f = NCPoly::monomial(u.clone(), s(1));
        f.add_term(v.clone(), s(1));
        let mut g = NCPoly::monomial(u.clone(), s(1));
        g.add_term(v.clone(), s(-1));

        // (u+v)(u-v) = u^2 - uv + vu - v^2, order preserved
        let prod = poly_mul(&f, &g);
        let uu = compose_paths(&u, &u).unwrap();
        let uv = compose_paths(&u, &v).unwrap();
        let vu = compose_paths(&v, &u).unwrap();
        let vv = compose_paths(&v, &v).unwrap();
        assert_eq!(prod.coeff(&uu), Some(&s(1)));
        assert_eq!(prod.coeff(&uv), Some(&s(-1)));
        assert_eq!(prod.coeff(&vu), Some(&s(1)));
        assert_eq!(prod.coeff(&vv), Some(&s(-1)));
        assert_eq!(prod.term_count(), 4);
    }

    #[test]
    fn cyclotomic_scalars_cancel_in_products() {
        let q = loops_uv();
        let f3 = FieldSpec::Cyclotomic(3);
        let rho = f3.zeta().unwrap();
        let u = q.arrow_path(ArrowId(0));
        let v = q.arrow_path(ArrowId(1));
        // (rho*u)(rho^2*v) = uv
        let f = NCPoly::monomial(u.clone(), rho.clone());
        let g = NCPoly::monomial(v.clone(), rho.mul(&rho));
        let prod = poly_mul(&f, &g);
        let uv = compose_paths(&u, &v).unwrap();
        assert_eq!(prod.coeff(&uv), Some(&f3.one()));
        assert_eq!(prod.term_count(), 1);
    }

    #[test]
    fn non_composable_product_is_zero() {
        let q = Quiver::new(
            vec!["v1".into(), "v2".into()],
            vec![("a".into(), VertexId(0), VertexId(1))],
            BTreeSet::new(),
        )
        .unwrap();
        let a = NCPoly::monomial(q.arrow_path(ArrowId(0)), s(1));
        let prod = poly_mul(&a, &a);
        assert!(prod.is_zero());
    }

    #[test]
    fn leading_term_is_minimal() {
        let q = loops_uv();
        let u = q.arrow_path(ArrowId(0));
        let e = q.trivial_path(VertexId(0));
        let uu = compose_paths(&u, &u).unwrap();
        let mut f = NCPoly::monomial(uu, s(3));
        f.add_term(u.clone(), s(2));
        f.add_term(e.clone(), s(5));
        assert_eq!(f.leading().unwrap().0, &e);
        assert_eq!(f.order(), Some(0));
        assert_eq!(f.max_degree(), Some(2));
    }

    #[test]
    fn cancellation_removes_entries() {
        let q = loops_uv();
        let u = q.arrow_path(ArrowId(0));
        let mut f = NCPoly::monomial(u.clone(), s(2));
        f.add_term(u.clone(), s(-2));
        assert!(f.is_zero());
    }
}
