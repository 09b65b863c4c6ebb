//! Superpotentials and cyclic derivatives.
//!
//! A superpotential is a linear combination of cyclic words: closed paths up
//! to rotation.  The cyclic derivative with respect to an arrow `a` sends each
//! occurrence `w = x a y` to the closed-up word `y x`, a path from `target(a)`
//! to `source(a)`; summing the derivatives over all arrows recovers the
//! relation set presented by the superpotential.

use std::collections::BTreeMap;

use crate::error::CoreError;
use crate::field::{FieldSpec, Scalar};
use crate::poly::NCPoly;
use crate::quiver::{ArrowId, Path, Quiver};

/// A closed path up to rotation, stored as its canonical (minimal) rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CyclicWord {
    arrows: Vec<ArrowId>,
}

impl CyclicWord {
    /// Canonicalizes a closed path; rejects non-closed input.
    pub fn from_path(path: &Path) -> Result<CyclicWord, CoreError> {
        if !path.is_closed() {
            return Err(CoreError::InvalidPresentation(
                "superpotential term is not a closed path".into(),
            ));
        }
        Ok(CyclicWord {
            arrows: canonical_rotation(path.arrows()),
        })
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

    /// Realizes the canonical rotation as a path of the quiver.
    pub fn as_path(&self, quiver: &Quiver) -> Path {
        quiver
            .path_from_arrows(&self.arrows)
            .expect("cyclic word stores a composable rotation")
    }
}

fn canonical_rotation(arrows: &[ArrowId]) -> Vec<ArrowId> {
    if arrows.is_empty() {
        return Vec::new();
    }
    let mut best = arrows.to_vec();
    for k in 1..arrows.len() {
        let mut rot = arrows[k..].to_vec();
        rot.extend_from_slice(&arrows[..k]);
        if rot < best {
            best = rot;
        }
    }
    best
}

/// A linear combination of cyclic words over a quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superpotential {
    field: FieldSpec,
    quiver: Quiver,
    terms: BTreeMap<CyclicWord, Scalar>,
}

impl Superpotential {
    pub fn new(field: FieldSpec, quiver: Quiver) -> Superpotential {
        Superpotential {
            field,
            quiver,
            terms: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CyclicWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff` times the cyclic class of `path`.
    pub fn add_term(&mut self, path: &Path, coeff: Scalar) -> Result<(), CoreError> {
        if coeff.is_zero() {
            return Ok(());
        }
        let word = CyclicWord::from_path(path)?;
        match self.terms.remove(&word) {
            None => {
                self.terms.insert(word, coeff);
            }
            Some(existing) => {
                let sum = existing.add(&coeff);
                if !sum.is_zero() {
                    self.terms.insert(word, sum);
                }
            }
        }
        Ok(())
    }

    /// The cyclic derivative with respect to `arrow`.
    pub fn cyclic_derivative(&self, arrow: ArrowId) -> Result<NCPoly, CoreError> {
        if arrow.0 >= self.quiver.arrow_count() {
            return Err(CoreError::UnknownArrow(format!("#{}", arrow.0)));
        }
        let arr = self.quiver.arrow(arrow);
        let mut out = NCPoly::zero(arr.target, arr.source);
        for (word, coeff) in &self.terms {
            for (pos, a) in word.arrows().iter().enumerate() {
                if *a != arrow {
                    continue;
                }
                // Word read cyclically starting just after this occurrence.
                let mut rest: Vec<ArrowId> = word.arrows()[pos + 1..].to_vec();
                rest.extend_from_slice(&word.arrows()[..pos]);
                let path = if rest.is_empty() {
                    self.quiver.trivial_path(arr.target)
                } else {
                    self.quiver
                        .path_from_arrows(&rest)
                        .expect("rotation of a closed path is composable")
                };
                out.add_term(path, coeff.clone());
            }
        }
        Ok(out)
    }

    /// Derivatives over every arrow, with zero derivatives dropped.
    pub fn all_derivatives(&self) -> Vec<(ArrowId, NCPoly)> {
        (0..self.quiver.arrow_count())
            .map(ArrowId)
            .filter_map(|a| {
                let d = self
                    .cyclic_derivative(a)
                    .expect("arrow index is in range");
                if d.is_zero() {
                    None
                } else {
                    Some((a, d))
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly_mul;
    use crate::quiver::{compose_paths, VertexId};
    use num::BigInt;
    use std::collections::BTreeSet;

    fn loops_ab() -> Quiver {
        Quiver::new(
            vec!["pt".into()],
            vec![
                ("a".into(), VertexId(0), VertexId(0)),
                ("b".into(), VertexId(0), VertexId(0)),
            ],
            BTreeSet::new(),
        )
        .unwrap()
    }

    fn one() -> Scalar {
        FieldSpec::Rationals.from_integer(&BigInt::from(1))
    }

    /// Independent oracle: enumerate the occurrences of `arrow` in the cyclic
    /// word by raw rotation, deleting each occurrence and keeping the rest.
    fn rotation_oracle(quiver: &Quiver, word: &[ArrowId], arrow: ArrowId) -> Vec<Vec<ArrowId>> {
        let mut out = Vec::new();
        for pos in 0..word.len() {
            if word[pos] != arrow {
                continue;
            }
            let mut rot: Vec<ArrowId> = Vec::new();
            for k in 1..word.len() {
                rot.push(word[(pos + k) % word.len()]);
            }
            out.push(rot);
        }
        let _ = quiver;
        out
    }

    #[test]
    fn derivative_of_aba_matches_rotation_oracle() {
        let q = loops_ab();
        let a = ArrowId(0);
        let b = ArrowId(1);
        let aba = q.path_from_arrows(&[a, b, a]).unwrap();
        let mut w = Superpotential::new(FieldSpec::Rationals, q.clone());
        w.add_term(&aba, one()).unwrap();

        // d_a(aba) = ba + ab
        let da = w.cyclic_derivative(a).unwrap();
        let expected = rotation_oracle(&q, &[a, b, a], a);
        assert_eq!(expected, vec![vec![b, a], vec![a, b]]);
        assert_eq!(da.term_count(), 2);
        for rest in expected {
            let p = q.path_from_arrows(&rest).unwrap();
            assert_eq!(da.coeff(&p), Some(&one()));
        }

        // d_b(aba) = a^2
        let db = w.cyclic_derivative(b).unwrap();
        let aa = q.path_from_arrows(&[a, a]).unwrap();
        assert_eq!(db.term_count(), 1);
        assert_eq!(db.coeff(&aa), Some(&one()));
    }

    #[test]
    fn rotations_land_in_one_class() {
        let q = loops_ab();
        let a = ArrowId(0);
        let b = ArrowId(1);
        let mut w = Superpotential::new(FieldSpec::Rationals, q.clone());
        w.add_term(&q.path_from_arrows(&[a, b]).unwrap(), one()).unwrap();
        w.add_term(&q.path_from_arrows(&[b, a]).unwrap(), one()).unwrap();
        let terms: Vec<_> = w.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(
            terms[0].1,
            &FieldSpec::Rationals.from_integer(&BigInt::from(2))
        );
    }

    #[test]
    fn euler_identity_on_random_words() {
        // sum_a a * d_a(w) equals |w| * w as cyclic classes, for words of
        // length up to 6 over two loops.
        use rand::{Rng, SeedableRng};
        let q = loops_ab();
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..40 {
            let len = rng.gen_range(1..=6);
            let word: Vec<ArrowId> = (0..len).map(|_| ArrowId(rng.gen_range(0..2))).collect();
            let path = q.path_from_arrows(&word).unwrap();
            let mut w = Superpotential::new(FieldSpec::Rationals, q.clone());
            w.add_term(&path, one()).unwrap();

            let mut total = Superpotential::new(FieldSpec::Rationals, q.clone());
            for (arrow, deriv) in w.all_derivatives() {
                let a_poly = NCPoly::monomial(q.arrow_path(arrow), one());
                let prod = poly_mul(&a_poly, &deriv);
                for (p, c) in prod.terms() {
                    total.add_term(p, c.clone()).unwrap();
                }
            }
            let mut expected = Superpotential::new(FieldSpec::Rationals, q.clone());
            expected
                .add_term(
                    &path,
                    FieldSpec::Rationals.from_integer(&BigInt::from(len as i64)),
                )
                .unwrap();
            assert_eq!(total, expected, "failed for word {word:?}");
        }
    }

    #[test]
    fn non_closed_term_rejected() {
        let q = Quiver::new(
            vec!["v1".into(), "v2".into()],
            vec![("a".into(), VertexId(0), VertexId(1))],
            BTreeSet::new(),
        )
        .unwrap();
        let mut w = Superpotential::new(FieldSpec::Rationals, q.clone());
        let a = q.arrow_path(ArrowId(0));
        assert!(w.add_term(&a, one()).is_err());
    }

    #[test]
    fn trivial_identity_check() {
        let q = loops_ab();
        let _ = compose_paths(&q.trivial_path(VertexId(0)), &q.arrow_path(ArrowId(0)));
    }
}
