//! Finite-dimensional pointed test algebras over prime fields, realized as
//! truncated quotients with verified invariants: orthogonal idempotents
//! summing to one, component-respecting multiplication, and a nilpotent
//! augmentation ideal.

use std::collections::BTreeMap;

use crate::error::CoreError;
use crate::field::FieldSpec;
use crate::poly::NCPoly;
use crate::presentation::Presentation;
use crate::quiver::{Path, VertexId};
use crate::truncation::{truncate_quotient, TruncatedAlgebra};

use super::linalg::kernel_basis;

/// A test object: structure constants over `F_p` with `points` orthogonal
/// idempotents.
#[derive(Debug, Clone)]
pub struct TestAlgebra {
    p: u64,
    points: usize,
    dim: usize,
    labels: Vec<String>,
    component: Vec<(usize, usize)>,
    idempotent: Vec<usize>,
    /// `mult[a][b]` is the coefficient vector of `basis_a * basis_b`.
    mult: Vec<Vec<Vec<u64>>>,
    nilpotency: usize,
}

impl TestAlgebra {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn component(&self, basis_index: usize) -> (usize, usize) {
        self.component[basis_index]
    }

    pub fn idempotent_index(&self, point: usize) -> usize {
        self.idempotent[point]
    }

    pub fn is_idempotent_element(&self, basis_index: usize) -> bool {
        self.idempotent.contains(&basis_index)
    }

    /// Smallest `r` with `n^r = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency
    }

    /// Indices spanning the augmentation ideal.
    pub fn augmentation_basis(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|i| !self.is_idempotent_element(*i))
            .collect()
    }

    /// Indices of augmentation-ideal basis elements in component `(i, j)`.
    pub fn augmentation_component(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.dim)
            .filter(|&b| !self.is_idempotent_element(b) && self.component[b] == (i, j))
            .collect()
    }

    pub fn multiply(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                let f = xa * yb % self.p;
                for (c, &m) in self.mult[a][b].iter().enumerate() {
                    if m != 0 {
                        out[c] = (out[c] + f * m) % self.p;
                    }
                }
            }
        }
        out
    }

    pub fn display_element(&self, v: &[u64]) -> String {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| {
                if *c == 1 {
                    self.labels[i].clone()
                } else {
                    format!("{}*{}", c, self.labels[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Realizes the degree-`bound` truncated quotient of a prime-field
/// presentation as a test algebra.
pub fn make_test_algebra(
    presentation: &Presentation,
    bound: usize,
) -> Result<TestAlgebra, CoreError> {
    let FieldSpec::PrimeField(p) = presentation.field else {
        return Err(CoreError::NotPrimeField(presentation.field.dsl_name()));
    };
    let trunc = truncate_quotient(presentation, bound)?;
    from_truncation(&trunc, p)
}

fn from_truncation(trunc: &TruncatedAlgebra, p: u64) -> Result<TestAlgebra, CoreError> {
    let presentation = trunc.presentation();
    let n = presentation.quiver.vertex_count();

    // global basis: blocks in (i, j) order, paths in the local order
    let mut basis_paths: Vec<Path> = Vec::new();
    let mut component: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for path in trunc.basis_paths(VertexId(i), VertexId(j)) {
                basis_paths.push(path.clone());
                component.push((i, j));
            }
        }
    }
    let dim = basis_paths.len();
    let index: BTreeMap<Path, usize> = basis_paths
        .iter()
        .enumerate()
        .map(|(k, path)| (path.clone(), k))
        .collect();

    let mut idempotent = Vec::with_capacity(n);
    for v in 0..n {
        let e = presentation.quiver.trivial_path(VertexId(v));
        let Some(&k) = index.get(&e) else {
            return Err(CoreError::InvalidPresentation(
                "trivial path missing from the residue basis".into(),
            ));
        };
        idempotent.push(k);
    }

    let one = presentation.field.one();
    let mut mult = vec![vec![vec![0u64; dim]; dim]; dim];
    for (a, pa) in basis_paths.iter().enumerate() {
        for (b, pb) in basis_paths.iter().enumerate() {
            if pa.target() != pb.source() {
                continue;
            }
            let fa = NCPoly::monomial(pa.clone(), one.clone());
            let fb = NCPoly::monomial(pb.clone(), one.clone());
            let prod = trunc.multiply_in_quotient(&fa, &fb)?;
            for (path, coeff) in prod.terms() {
                let (_, value) = coeff
                    .prime_value()
                    .expect("truncation over a prime field yields prime scalars");
                mult[a][b][index[path]] = value;
            }
        }
    }

    let labels = basis_paths
        .iter()
        .map(|path| presentation.quiver.path_name(path))
        .collect();

    let algebra = TestAlgebra {
        p,
        points: n,
        dim,
        labels,
        component,
        idempotent,
        mult,
        nilpotency: 0,
    };
    let nilpotency = verify_invariants(&algebra)?;
    Ok(TestAlgebra {
        nilpotency,
        ..algebra
    })
}

/// Checks the pointed-algebra axioms and returns the nilpotency index.
fn verify_invariants(alg: &TestAlgebra) -> Result<usize, CoreError> {
    let dim = alg.dim;
    // orthogonal idempotents summing to one
    let mut unit = vec![0u64; dim];
    for i in 0..alg.points {
        unit[alg.idempotent[i]] = 1;
    }
    for (a, &ia) in alg.idempotent.iter().enumerate() {
        for (b, &ib) in alg.idempotent.iter().enumerate() {
            let mut ea = vec![0u64; dim];
            ea[ia] = 1;
            let mut eb = vec![0u64; dim];
            eb[ib] = 1;
            let prod = alg.multiply(&ea, &eb);
            let expected = if a == b { ea } else { vec![0u64; dim] };
            if prod != expected {
                return Err(CoreError::InvalidPresentation(
                    "idempotents are not orthogonal".into(),
                ));
            }
        }
    }
    for b in 0..dim {
        let mut x = vec![0u64; dim];
        x[b] = 1;
        if alg.multiply(&unit, &x) != x || alg.multiply(&x, &unit) != x {
            return Err(CoreError::InvalidPresentation(
                "idempotents do not sum to the unit".into(),
            ));
        }
    }
    // component discipline
    for a in 0..dim {
        for b in 0..dim {
            let (ia, ja) = alg.component[a];
            let (ib, jb) = alg.component[b];
            for c in 0..dim {
                if alg.mult[a][b][c] == 0 {
                    continue;
                }
                if ja != ib || alg.component[c] != (ia, jb) {
                    return Err(CoreError::InvalidPresentation(
                        "multiplication does not respect components".into(),
                    ));
                }
            }
        }
    }
    // nilpotent augmentation ideal: iterate spans of n^k
    let aug = alg.augmentation_basis();
    let mut current: Vec<Vec<u64>> = aug
        .iter()
        .map(|&b| {
            let mut v = vec![0u64; dim];
            v[b] = 1;
            v
        })
        .collect();
    let mut r = 1usize;
    while !current.is_empty() {
        if r > dim + 1 {
            return Err(CoreError::InvalidPresentation(
                "augmentation ideal is not nilpotent".into(),
            ));
        }
        let mut products = Vec::new();
        for x in &current {
            for &b in &aug {
                let mut y = vec![0u64; dim];
                y[b] = 1;
                let prod = alg.multiply(x, &y);
                if prod.iter().any(|&c| c != 0) {
                    products.push(prod);
                }
            }
        }
        current = span_basis(alg.p, dim, &products);
        r += 1;
    }
    Ok(r)
}

/// Row-space basis of a set of vectors.
fn span_basis(p: u64, dim: usize, vectors: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    // reuse the kernel machinery's elimination by transposing the problem:
    // run a simple forward elimination here instead
    let mut rows: Vec<Vec<u64>> = Vec::new();
    'next: for v in vectors {
        let mut w = v.clone();
        for row in &rows {
            let lead = row.iter().position(|&x| x != 0).unwrap();
            if w[lead] != 0 {
                let f = w[lead] * super::linalg::mod_inv(row[lead], p) % p;
                for c in 0..dim {
                    w[c] = (w[c] + (p - f) * row[c] % p) % p;
                }
            }
        }
        if w.iter().all(|&x| x == 0) {
            continue 'next;
        }
        rows.push(w);
        rows.sort_by_key(|r| r.iter().position(|&x| x != 0).unwrap());
    }
    rows
}

/// Hook for property tests: the kernel helper is re-exported for reuse.
pub(crate) fn _kernel(p: u64, rows: usize, cols: usize, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    kernel_basis(p, rows, cols, m)
}
