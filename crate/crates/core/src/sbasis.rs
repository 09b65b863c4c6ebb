//! Local standard bases on completed path algebras, with sound truncation.
//!
//! The path order is ascending degree with declaration-order lex tie-break,
//! and the leading word of a polynomial is its *minimal* path.  This is the
//! right convention for completed (local) algebras: rewriting replaces a word
//! by strictly larger ones, so truncated reduction terminates and normal forms
//! are computed modulo `(ideal + m^(bound+1))`.
//!
//! A completed basis is only trusted when the run never touched the
//! truncation boundary; in that case it coincides with the untruncated
//! standard basis and the normal-word language is valid in every degree,
//! which is what lets the Ufnarovski graph decide finiteness and growth.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, BTreeSet, VecDeque};

use crate::error::CoreError;
use crate::poly::{poly_mul, NCPoly};
use crate::presentation::Presentation;
use crate::quiver::{compose_paths, ArrowId, Path, Quiver, VertexId};

const MAX_BASIS_ELEMENTS: usize = 10_000;
const MAX_QUEUE_POPS: usize = 1_000_000;

/// An inter-reduced local standard basis truncated at `bound`.
#[derive(Debug, Clone)]
pub struct StandardBasis {
    presentation: Presentation,
    bound: usize,
    elements: Vec<NCPoly>,
    complete: bool,
    boundary_touched: bool,
}

impl StandardBasis {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn elements(&self) -> &[NCPoly] {
        &self.elements
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn boundary_touched(&self) -> bool {
        self.boundary_touched
    }

    pub fn leading_words(&self) -> Vec<&Path> {
        self.elements
            .iter()
            .map(|g| g.leading().expect("basis elements are nonzero").0)
            .collect()
    }
}

/// Rewrites `f` until no term contains a leading word of the basis as a
/// subword.  Idempotent and linear; works modulo `(ideal + m^(bound+1))`.
pub fn local_normal_form(f: &NCPoly, basis: &StandardBasis) -> NCPoly {
    let (nf, _) = reduce_full(
        f.clone(),
        &basis.elements,
        &basis.presentation.quiver,
        basis.bound,
    );
    nf
}

/// One full reduction pass.  The second component reports whether the
/// computation reached the truncation boundary (a term of degree >= bound
/// appeared, or a product was truncated).
fn reduce_full(
    f: NCPoly,
    elements: &[NCPoly],
    quiver: &Quiver,
    bound: usize,
) -> (NCPoly, bool) {
    let mut touched = poly_touches(&f, bound);
    let mut work = f;
    work.truncate(bound);
    let mut out = NCPoly::zero(work.source(), work.target());

    'outer: while let Some((path, coeff)) = work.leading().map(|(p, c)| (p.clone(), c.clone())) {
        // leftmost occurrence, earliest basis element on ties
        for start in 0..=path.len() {
            for g in elements {
                let lw = g.leading().expect("basis elements are nonzero").0;
                if lw.len() == 0 || start + lw.len() > path.len() {
                    continue;
                }
                if &path.arrows()[start..start + lw.len()] == lw.arrows() {
                    let x = path.subpath(quiver, 0, start);
                    let y = path.subpath(quiver, start + lw.len(), path.len() - start - lw.len());
                    let mut rewrite = poly_mul(&poly_mul(&NCPoly::monomial(x, coeff.clone()), g),
                                               &NCPoly::monomial(y, coeff.field().one()));
                    if poly_touches(&rewrite, bound) {
                        touched = true;
                    }
                    rewrite.truncate(bound);
                    work = work.sub(&rewrite);
                    continue 'outer;
                }
            }
        }
        // no leading word divides this term: it is normal
        out.add_term(path.clone(), coeff.clone());
        work.add_term(path, coeff.neg());
    }
    (out, touched)
}

fn poly_touches(f: &NCPoly, bound: usize) -> bool {
    f.max_degree().map(|d| d >= bound).unwrap_or(false)
}

/// Runs overlap completion up to the degree bound.
pub fn complete_standard_basis(
    presentation: &Presentation,
    bound: usize,
) -> Result<StandardBasis, CoreError> {
    presentation.validate()?;
    let quiver = presentation.quiver.clone();

    struct State {
        elements: Vec<NCPoly>,
        alive: Vec<bool>,
        touched: bool,
    }
    let mut st = State {
        elements: Vec::new(),
        alive: Vec::new(),
        touched: false,
    };

    enum Item {
        /// A polynomial awaiting (re-)reduction and insertion.
        Reduce(NCPoly),
        /// Overlap ambiguity between two live elements.
        Overlap {
            left: usize,
            right: usize,
            overlap_len: usize,
        },
    }
    // priority: total degree ascending, then insertion sequence (FIFO)
    let mut queue: BinaryHeap<Reverse<(usize, u64, u8)>> = BinaryHeap::new();
    let mut payload: Vec<Option<Item>> = Vec::new();
    let mut seq: u64 = 0;
    let push = |queue: &mut BinaryHeap<Reverse<(usize, u64, u8)>>,
                    payload: &mut Vec<Option<Item>>,
                    seq: &mut u64,
                    degree: usize,
                    item: Item| {
        let kind = match item {
            Item::Reduce(_) => 0u8,
            Item::Overlap { .. } => 1u8,
        };
        payload.push(Some(item));
        queue.push(Reverse((degree, *seq, kind)));
        *seq += 1;
    };

    for rel in &presentation.relations {
        let degree = rel.order().unwrap_or(0);
        push(&mut queue, &mut payload, &mut seq, degree, Item::Reduce(rel.clone()));
    }

    let mut pops = 0usize;
    while let Some(Reverse((_deg, id, _kind))) = queue.pop() {
        pops += 1;
        if pops > MAX_QUEUE_POPS || st.elements.len() > MAX_BASIS_ELEMENTS {
            return Err(CoreError::CompletionTooExpensive {
                degree_reached: _deg.min(bound),
            });
        }
        let item = payload[id as usize].take().expect("payload is single-use");
        match item {
            Item::Reduce(f) => {
                let alive_elems: Vec<NCPoly> = st
                    .elements
                    .iter()
                    .zip(&st.alive)
                    .filter(|(_, a)| **a)
                    .map(|(g, _)| g.clone())
                    .collect();
                let (nf, touch) = reduce_full(f, &alive_elems, &quiver, bound);
                st.touched |= touch;
                if nf.is_zero() {
                    continue;
                }
                let g = nf.monic();
                let g_lw = g.leading().unwrap().0.clone();
                // retire elements whose leading word the new one divides
                for idx in 0..st.elements.len() {
                    if !st.alive[idx] {
                        continue;
                    }
                    let h_lw = st.elements[idx].leading().unwrap().0;
                    if contains_subword(h_lw, &g_lw) && h_lw != &g_lw {
                        st.alive[idx] = false;
                        let h = st.elements[idx].clone();
                        let d = h.order().unwrap_or(0);
                        push(&mut queue, &mut payload, &mut seq, d, Item::Reduce(h));
                    }
                }
                let new_idx = st.elements.len();
                st.elements.push(g.clone());
                st.alive.push(true);
                // queue overlaps with every live element, both orientations
                for idx in 0..=new_idx {
                    if !st.alive[idx] {
                        continue;
                    }
                    for (l, r) in [(new_idx, idx), (idx, new_idx)] {
                        if l == r && l != new_idx {
                            continue;
                        }
                        let w1 = st.elements[l].leading().unwrap().0.clone();
                        let w2 = st.elements[r].leading().unwrap().0.clone();
                        for o in overlap_lengths(&w1, &w2) {
                            let total = w1.len() + w2.len() - o;
                            push(
                                &mut queue,
                                &mut payload,
                                &mut seq,
                                total,
                                Item::Overlap {
                                    left: l,
                                    right: r,
                                    overlap_len: o,
                                },
                            );
                        }
                        if l == r {
                            break;
                        }
                    }
                }
            }
            Item::Overlap {
                left,
                right,
                overlap_len,
            } => {
                if !st.alive[left] || !st.alive[right] {
                    continue;
                }
                let g1 = &st.elements[left];
                let g2 = &st.elements[right];
                let w1 = g1.leading().unwrap().0.clone();
                let w2 = g2.leading().unwrap().0.clone();
                let total = w1.len() + w2.len() - overlap_len;
                if total > bound {
                    st.touched = true;
                    continue;
                }
                let field = presentation.field;
                let x = w1.subpath(&quiver, 0, w1.len() - overlap_len);
                let y = w2.subpath(&quiver, overlap_len, w2.len() - overlap_len);
                let s1 = poly_mul(g1, &NCPoly::monomial(y, field.one()));
                let s2 = poly_mul(&NCPoly::monomial(x, field.one()), g2);
                let mut spoly = s1.sub(&s2);
                if poly_touches(&spoly, bound) {
                    st.touched = true;
                }
                spoly.truncate(bound);
                if !spoly.is_zero() {
                    let d = spoly.order().unwrap_or(0);
                    push(&mut queue, &mut payload, &mut seq, d, Item::Reduce(spoly));
                }
            }
        }
    }

    let elements: Vec<NCPoly> = st
        .elements
        .into_iter()
        .zip(st.alive)
        .filter(|(_, a)| *a)
        .map(|(g, _)| g)
        .collect();
    Ok(StandardBasis {
        presentation: presentation.clone(),
        bound,
        complete: !st.touched,
        boundary_touched: st.touched,
        elements,
    })
}

/// Proper overlap lengths: a nonempty proper suffix of `w1` equal to a proper
/// prefix of `w2`.
fn overlap_lengths(w1: &Path, w2: &Path) -> Vec<usize> {
    let a = w1.arrows();
    let b = w2.arrows();
    let mut out = Vec::new();
    for o in 1..a.len().min(b.len()) {
        if a[a.len() - o..] == b[..o] {
            out.push(o);
        }
    }
    out
}

fn contains_subword(haystack: &Path, needle: &Path) -> bool {
    let h = haystack.arrows();
    let n = needle.arrows();
    if n.is_empty() || n.len() > h.len() {
        return false;
    }
    h.windows(n.len()).any(|w| w == n)
}

/// Finite automaton on normal words: nodes are the normal words of length
/// `l - 1` where `l` is the longest leading word, and edges are one-letter
/// extensions that stay normal.
#[derive(Debug, Clone)]
pub struct UfnarovskiGraph {
    pub nodes: Vec<Path>,
    /// adjacency: `edges[from]` lists `(to, arrow)`
    pub edges: Vec<Vec<(usize, ArrowId)>>,
    window: usize,
    short_counts: Vec<usize>,
}

/// Growth classes of the normal-word language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Growth {
    Finite,
    Polynomial(usize),
    Exponential,
}

/// The certificate's verdict; `Finite`/`Infinite` are only issued from a
/// complete basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Finite {
        total: usize,
        per_degree: Vec<usize>,
    },
    Infinite {
        cycle_nodes: Vec<String>,
        cycle_arrows: Vec<String>,
    },
    Unknown {
        dim_up_to_bound: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitenessCertificate {
    pub verdict: Verdict,
    pub complete: bool,
}

struct WordLanguage<'a> {
    quiver: &'a Quiver,
    leading: Vec<Vec<ArrowId>>,
    max_len: usize,
}

impl<'a> WordLanguage<'a> {
    fn new(basis: &'a StandardBasis) -> WordLanguage<'a> {
        let leading: Vec<Vec<ArrowId>> = basis
            .leading_words()
            .iter()
            .map(|p| p.arrows().to_vec())
            .collect();
        let max_len = leading.iter().map(Vec::len).max().unwrap_or(1).max(1);
        WordLanguage {
            quiver: &basis.presentation.quiver,
            leading,
            max_len,
        }
    }

    /// `word` is assumed normal; checks that appending `arrow` keeps it so.
    fn extension_is_normal(&self, word: &[ArrowId], arrow: ArrowId) -> bool {
        let mut suffix: Vec<ArrowId> = Vec::with_capacity(self.max_len);
        let keep = word.len().min(self.max_len - 1);
        suffix.extend_from_slice(&word[word.len() - keep..]);
        suffix.push(arrow);
        for forbidden in &self.leading {
            if forbidden.len() > suffix.len() {
                continue;
            }
            if suffix[suffix.len() - forbidden.len()..] == forbidden[..] {
                return false;
            }
        }
        true
    }

    /// All normal words of each length `0 ..= up_to`, as paths.
    fn normal_words_by_length(&self, up_to: usize) -> Vec<Vec<Path>> {
        let mut layers: Vec<Vec<Path>> = Vec::with_capacity(up_to + 1);
        let degree_zero: Vec<Path> = (0..self.quiver.vertex_count())
            .map(|v| self.quiver.trivial_path(VertexId(v)))
            .collect();
        layers.push(degree_zero);
        for len in 1..=up_to {
            let mut layer = Vec::new();
            for p in &layers[len - 1] {
                for (aid, arrow) in self.quiver.arrows() {
                    if arrow.source != p.target() {
                        continue;
                    }
                    if self.extension_is_normal(p.arrows(), aid) {
                        layer.push(
                            compose_paths(p, &self.quiver.arrow_path(aid))
                                .expect("outgoing arrow composes"),
                        );
                    }
                }
            }
            layers.push(layer);
        }
        layers
    }
}

/// Builds the graph from a complete basis.
pub fn ufnarovski_graph(basis: &StandardBasis) -> Result<UfnarovskiGraph, CoreError> {
    if !basis.complete {
        return Err(CoreError::InvalidPresentation(
            "growth analysis requires a complete standard basis".into(),
        ));
    }
    let lang = WordLanguage::new(basis);
    let window = lang.max_len - 1;
    let layers = lang.normal_words_by_length(window);
    let nodes = layers[window].clone();
    let node_index: std::collections::HashMap<Vec<ArrowId>, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, p)| (p.arrows().to_vec(), i))
        .collect();
    let mut edges: Vec<Vec<(usize, ArrowId)>> = vec![Vec::new(); nodes.len()];
    for (i, node) in nodes.iter().enumerate() {
        for (aid, arrow) in basis.presentation.quiver.arrows() {
            if arrow.source != node.target() {
                continue;
            }
            if !lang.extension_is_normal(node.arrows(), aid) {
                continue;
            }
            // the next window drops the first letter and appends the new one
            let to = if window == 0 {
                // nodes are trivial paths, indexed by vertex
                nodes
                    .iter()
                    .position(|p| p.source() == arrow.target)
                    .expect("every vertex contributes a trivial-path node")
            } else {
                let mut next = node.arrows()[1..].to_vec();
                next.push(aid);
                *node_index
                    .get(&next)
                    .expect("window of a normal word is normal")
            };
            edges[i].push((to, aid));
        }
    }
    let short_counts = layers[..window]
        .iter()
        .map(Vec::len)
        .collect();
    Ok(UfnarovskiGraph {
        nodes,
        edges,
        window,
        short_counts,
    })
}

impl UfnarovskiGraph {
    /// Locates a directed cycle, if any, returning its nodes in order.
    fn find_cycle(&self) -> Option<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            White,
            Grey,
            Black,
        }
        let mut mark = vec![Mark::White; self.nodes.len()];
        let mut parent: Vec<Option<usize>> = vec![None; self.nodes.len()];
        for start in 0..self.nodes.len() {
            if mark[start] != Mark::White {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            mark[start] = Mark::Grey;
            while let Some((v, ei)) = stack.pop() {
                if ei < self.edges[v].len() {
                    stack.push((v, ei + 1));
                    let (w, _) = self.edges[v][ei];
                    match mark[w] {
                        Mark::White => {
                            mark[w] = Mark::Grey;
                            parent[w] = Some(v);
                            stack.push((w, 0));
                        }
                        Mark::Grey => {
                            // back edge: recover the cycle w -> ... -> v -> w
                            let mut cyc = vec![v];
                            let mut cur = v;
                            while cur != w {
                                cur = parent[cur].expect("grey nodes chain to the root");
                                cyc.push(cur);
                            }
                            cyc.reverse();
                            return Some(cyc);
                        }
                        Mark::Black => {}
                    }
                } else {
                    mark[v] = Mark::Black;
                }
            }
        }
        None
    }

    fn edge_label(&self, from: usize, to: usize) -> ArrowId {
        self.edges[from]
            .iter()
            .find(|(t, _)| *t == to)
            .map(|(_, a)| *a)
            .expect("requested edge exists")
    }

    /// Per-degree counts of normal words, valid in all degrees for an acyclic
    /// graph; `None` if the graph has a cycle.
    fn finite_dimension(&self) -> Option<(usize, Vec<usize>)> {
        if self.find_cycle().is_some() {
            return None;
        }
        let mut per_degree: Vec<usize> = self.short_counts.clone();
        // walk counts layer by layer until they die out (acyclic: <= #nodes)
        let mut current: Vec<usize> = vec![1; self.nodes.len()];
        loop {
            let layer: usize = current.iter().sum();
            if layer == 0 {
                break;
            }
            per_degree.push(layer);
            let mut next = vec![0usize; self.nodes.len()];
            for v in 0..self.nodes.len() {
                if current[v] == 0 {
                    continue;
                }
                for (w, _) in &self.edges[v] {
                    // counts walks arriving at each node
                    next[*w] += current[v];
                }
            }
            current = next;
        }
        while per_degree.last() == Some(&0) {
            per_degree.pop();
        }
        let total = per_degree.iter().sum();
        Some((total, per_degree))
    }
}

/// Decides Finite/Infinite from a complete basis, or reports Unknown.
pub fn finiteness_certificate(basis: &StandardBasis) -> FinitenessCertificate {
    if !basis.complete {
        let lang = WordLanguage::new(basis);
        let layers = lang.normal_words_by_length(basis.bound);
        let dim: usize = layers.iter().map(Vec::len).sum();
        return FinitenessCertificate {
            verdict: Verdict::Unknown {
                dim_up_to_bound: dim,
            },
            complete: false,
        };
    }
    let graph = ufnarovski_graph(basis).expect("basis is complete");
    match graph.finite_dimension() {
        Some((total, per_degree)) => FinitenessCertificate {
            verdict: Verdict::Finite { total, per_degree },
            complete: true,
        },
        None => {
            let cycle = graph.find_cycle().expect("cyclic graph has a cycle");
            let quiver = &basis.presentation.quiver;
            let cycle_nodes = cycle
                .iter()
                .map(|v| quiver.path_name(&graph.nodes[*v]))
                .collect();
            let mut cycle_arrows = Vec::new();
            for k in 0..cycle.len() {
                let from = cycle[k];
                let to = cycle[(k + 1) % cycle.len()];
                cycle_arrows.push(quiver.arrow(graph.edge_label(from, to)).name.clone());
            }
            FinitenessCertificate {
                verdict: Verdict::Infinite {
                    cycle_nodes,
                    cycle_arrows,
                },
                complete: true,
            }
        }
    }
}

/// Classifies growth from the cycle structure: acyclic is finite; disjoint
/// simple cycles give polynomial growth of degree equal to the longest chain
/// of cycles, and any two distinct cycles through a common node give
/// exponential growth.
pub fn growth_classification(graph: &UfnarovskiGraph) -> Growth {
    let n = graph.nodes.len();
    let scc = kosaraju(n, &graph.edges);
    let scc_count = scc.iter().copied().max().map(|m| m + 1).unwrap_or(0);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); scc_count];
    for (v, c) in scc.iter().enumerate() {
        members[*c].push(v);
    }
    let mut cyclic = vec![false; scc_count];
    let mut simple = vec![true; scc_count];
    for c in 0..scc_count {
        let inside: BTreeSet<usize> = members[c].iter().copied().collect();
        let mut internal_edges = 0;
        let mut has_self_loop = false;
        for &v in &members[c] {
            let mut out_inside = 0;
            for (w, _) in &graph.edges[v] {
                if inside.contains(w) {
                    internal_edges += 1;
                    out_inside += 1;
                    if *w == v {
                        has_self_loop = true;
                    }
                }
            }
            if out_inside > 1 {
                simple[c] = false;
            }
        }
        cyclic[c] = members[c].len() > 1 || has_self_loop;
        if cyclic[c] && internal_edges != members[c].len() {
            simple[c] = false;
        }
    }
    if (0..scc_count).any(|c| cyclic[c] && !simple[c]) {
        return Growth::Exponential;
    }
    // longest chain of cyclic components in the condensation
    let mut best = vec![usize::MAX; scc_count];
    fn chain(
        c: usize,
        graph: &UfnarovskiGraph,
        scc: &[usize],
        cyclic: &[bool],
        members: &[Vec<usize>],
        best: &mut Vec<usize>,
    ) -> usize {
        if best[c] != usize::MAX {
            return best[c];
        }
        best[c] = 0; // condensation is acyclic, so this cannot recurse into itself
        let mut m = 0;
        for &v in &members[c] {
            for (w, _) in &graph.edges[v] {
                let d = scc[*w];
                if d != c {
                    m = m.max(chain(d, graph, scc, cyclic, members, best));
                }
            }
        }
        best[c] = m + usize::from(cyclic[c]);
        best[c]
    }
    let mut max_chain = 0;
    for c in 0..scc_count {
        max_chain = max_chain.max(chain(c, graph, &scc, &cyclic, &members, &mut best));
    }
    if max_chain == 0 {
        Growth::Finite
    } else {
        Growth::Polynomial(max_chain)
    }
}

/// Strongly connected components; returns the component index per node.
fn kosaraju(n: usize, edges: &[Vec<(usize, ArrowId)>]) -> Vec<usize> {
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        seen[s] = true;
        while let Some((v, ei)) = stack.pop() {
            if ei < edges[v].len() {
                stack.push((v, ei + 1));
                let w = edges[v][ei].0;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
            }
        }
    }
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, outs) in edges.iter().enumerate() {
        for (w, _) in outs {
            rev[*w].push(v);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut c = 0;
    for &v in order.iter().rev() {
        if comp[v] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([v]);
        comp[v] = c;
        while let Some(x) = queue.pop_front() {
            for &y in &rev[x] {
                if comp[y] == usize::MAX {
                    comp[y] = c;
                    queue.push_back(y);
                }
            }
        }
        c += 1;
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Scalar};
    use num::BigInt;
    use std::collections::BTreeSet;
    use crate::quiver::Quiver;

    fn one() -> Scalar {
        FieldSpec::Rationals.from_integer(&BigInt::from(1))
    }

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

    fn zigzag() -> Presentation {
        let q = loops_uv();
        let uu = q.path_from_arrows(&[ArrowId(0), ArrowId(0)]).unwrap();
        let vv = q.path_from_arrows(&[ArrowId(1), ArrowId(1)]).unwrap();
        Presentation::new(
            "zigzag",
            FieldSpec::Rationals,
            q,
            vec![NCPoly::monomial(uu, one()), NCPoly::monomial(vv, one())],
        )
        .unwrap()
    }

    #[test]
    fn monomial_relations_complete_immediately() {
        let b = complete_standard_basis(&zigzag(), 8).unwrap();
        assert!(b.is_complete());
        assert!(!b.boundary_touched());
        assert_eq!(b.elements().len(), 2);
    }

    #[test]
    fn normal_form_kills_prefix_subwords() {
        // NF(a2 c2 a2 c2) modulo {a2c2a2, c2a2c2} = 0
        let q = Quiver::new(
            vec!["v1".into(), "v2".into()],
            vec![
                ("c2".into(), VertexId(0), VertexId(1)),
                ("a2".into(), VertexId(1), VertexId(0)),
            ],
            BTreeSet::new(),
        )
        .unwrap();
        let aca = q.path_from_arrows(&[ArrowId(1), ArrowId(0), ArrowId(1)]).unwrap();
        let cac = q.path_from_arrows(&[ArrowId(0), ArrowId(1), ArrowId(0)]).unwrap();
        let p = Presentation::new(
            "p",
            FieldSpec::Rationals,
            q.clone(),
            vec![NCPoly::monomial(aca, one()), NCPoly::monomial(cac, one())],
        )
        .unwrap();
        let b = complete_standard_basis(&p, 8).unwrap();
        let acac = q
            .path_from_arrows(&[ArrowId(1), ArrowId(0), ArrowId(1), ArrowId(0)])
            .unwrap();
        let nf = local_normal_form(&NCPoly::monomial(acac, one()), &b);
        assert!(nf.is_zero());
    }

    #[test]
    fn normal_form_keeps_normal_terms() {
        // NF(u^2 + uv) modulo {u^2, v^2} = uv
        let p = zigzag();
        let b = complete_standard_basis(&p, 8).unwrap();
        let q = &p.quiver;
        let uu = q.path_from_arrows(&[ArrowId(0), ArrowId(0)]).unwrap();
        let uv = q.path_from_arrows(&[ArrowId(0), ArrowId(1)]).unwrap();
        let mut f = NCPoly::monomial(uu, one());
        f.add_term(uv.clone(), one());
        let nf = local_normal_form(&f, &b);
        assert_eq!(nf.term_count(), 1);
        assert_eq!(nf.coeff(&uv), Some(&one()));
    }

    #[test]
    fn local_order_reduces_low_degree_leading_word() {
        // NF(v) modulo {v - u^2}: the local order makes v the leading word,
        // so v rewrites to u^2.
        let q = loops_uv();
        let mut rel = NCPoly::monomial(q.arrow_path(ArrowId(1)), one());
        rel.add_term(
            q.path_from_arrows(&[ArrowId(0), ArrowId(0)]).unwrap(),
            one().neg(),
        );
        let p = Presentation::new("sub", FieldSpec::Rationals, q.clone(), vec![rel]).unwrap();
        let b = complete_standard_basis(&p, 10).unwrap();
        assert!(b.is_complete());
        assert_eq!(b.elements().len(), 1);
        let v = NCPoly::monomial(q.arrow_path(ArrowId(1)), one());
        let nf = local_normal_form(&v, &b);
        let uu = q.path_from_arrows(&[ArrowId(0), ArrowId(0)]).unwrap();
        assert_eq!(nf.coeff(&uu), Some(&one()));
        assert_eq!(nf.term_count(), 1);

        // normal words are the powers of u
        let cert = finiteness_certificate(&b);
        assert!(matches!(cert.verdict, Verdict::Infinite { .. }));
        let g = ufnarovski_graph(&b).unwrap();
        assert_eq!(growth_classification(&g), Growth::Polynomial(1));
    }

    #[test]
    fn empty_relations_give_complete_empty_basis() {
        let q = loops_uv();
        let p = Presentation::new("free", FieldSpec::Rationals, q, vec![]).unwrap();
        let b = complete_standard_basis(&p, 6).unwrap();
        assert!(b.is_complete());
        assert!(b.elements().is_empty());
        let g = ufnarovski_graph(&b).unwrap();
        assert_eq!(growth_classification(&g), Growth::Exponential);
    }

    #[test]
    fn zigzag_certificate_is_infinite_polynomial_degree_one() {
        let b = complete_standard_basis(&zigzag(), 8).unwrap();
        let cert = finiteness_certificate(&b);
        match cert.verdict {
            Verdict::Infinite {
                cycle_nodes,
                cycle_arrows,
            } => {
                assert_eq!(cycle_nodes.len(), 2);
                assert_eq!(cycle_arrows.len(), 2);
            }
            other => panic!("expected infinite, got {other:?}"),
        }
        let g = ufnarovski_graph(&b).unwrap();
        assert_eq!(growth_classification(&g), Growth::Polynomial(1));
    }

    #[test]
    fn two_cycle_cube_is_finite_six() {
        let q = Quiver::new(
            vec!["v1".into(), "v2".into()],
            vec![
                ("c2".into(), VertexId(0), VertexId(1)),
                ("a2".into(), VertexId(1), VertexId(0)),
            ],
            BTreeSet::new(),
        )
        .unwrap();
        let aca = q.path_from_arrows(&[ArrowId(1), ArrowId(0), ArrowId(1)]).unwrap();
        let cac = q.path_from_arrows(&[ArrowId(0), ArrowId(1), ArrowId(0)]).unwrap();
        let p = Presentation::new(
            "p",
            FieldSpec::Rationals,
            q,
            vec![NCPoly::monomial(aca, one()), NCPoly::monomial(cac, one())],
        )
        .unwrap();
        let b = complete_standard_basis(&p, 8).unwrap();
        let cert = finiteness_certificate(&b);
        assert_eq!(
            cert.verdict,
            Verdict::Finite {
                total: 6,
                per_degree: vec![2, 2, 2],
            }
        );
    }

    #[test]
    fn free_two_cycle_is_infinite_with_two_cycle_witness() {
        let q = Quiver::new(
            vec!["v1".into(), "v2".into()],
            vec![
                ("c2".into(), VertexId(0), VertexId(1)),
                ("a2".into(), VertexId(1), VertexId(0)),
            ],
            BTreeSet::new(),
        )
        .unwrap();
        let p = Presentation::new("free2", FieldSpec::Rationals, q, vec![]).unwrap();
        let b = complete_standard_basis(&p, 8).unwrap();
        let cert = finiteness_certificate(&b);
        match cert.verdict {
            Verdict::Infinite { cycle_arrows, .. } => {
                let mut sorted = cycle_arrows.clone();
                sorted.sort();
                assert_eq!(sorted, vec!["a2".to_string(), "c2".to_string()]);
            }
            other => panic!("expected infinite, got {other:?}"),
        }
        let g = ufnarovski_graph(&b).unwrap();
        assert_eq!(growth_classification(&g), Growth::Polynomial(1));
    }

    #[test]
    fn single_free_loop_grows_linearly() {
        let q = Quiver::new(
            vec!["pt".into()],
            vec![("y".into(), VertexId(0), VertexId(0))],
            BTreeSet::new(),
        )
        .unwrap();
        let p = Presentation::new("series", FieldSpec::Rationals, q, vec![]).unwrap();
        let b = complete_standard_basis(&p, 6).unwrap();
        let g = ufnarovski_graph(&b).unwrap();
        assert_eq!(growth_classification(&g), Growth::Polynomial(1));
    }

    #[test]
    fn nf_is_idempotent_and_linear() {
        let p = zigzag();
        let b = complete_standard_basis(&p, 8).unwrap();
        let q = &p.quiver;
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let random_poly = |rng: &mut rand::rngs::StdRng| {
            let mut f = NCPoly::zero(VertexId(0), VertexId(0));
            for _ in 0..rng.gen_range(0..5) {
                let len = rng.gen_range(0..5);
                let word: Vec<ArrowId> =
                    (0..len).map(|_| ArrowId(rng.gen_range(0..2))).collect();
                let path = if word.is_empty() {
                    q.trivial_path(VertexId(0))
                } else {
                    q.path_from_arrows(&word).unwrap()
                };
                let c = FieldSpec::Rationals.from_integer(&BigInt::from(rng.gen_range(-3i64..=3)));
                f.add_term(path, c);
            }
            f
        };
        for _ in 0..50 {
            let f = random_poly(&mut rng);
            let g = random_poly(&mut rng);
            let nf_f = local_normal_form(&f, &b);
            assert_eq!(local_normal_form(&nf_f, &b), nf_f);
            let sum_nf = local_normal_form(&f.add(&g), &b);
            assert_eq!(sum_nf, nf_f.add(&local_normal_form(&g, &b)));
        }
    }
}
