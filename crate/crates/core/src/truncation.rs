//! Exact graded dimensions of a completed quotient algebra up to a degree
//! bound, by row reduction over the coefficient field.
//!
//! For a presentation `P` and bound `d`, the two-sided closed ideal is handled
//! degreewise: because every relation has order >= 1, the span of the
//! truncated products `p * r * q` is exactly `(I + m^(d+1)) / m^(d+1)`.  Row
//! reducing that span per `(source, target)` block, with columns ordered by
//! ascending degree then declaration-order lex, yields the dimensions of the
//! associated graded pieces and a canonical residue basis.  This module is
//! deliberately independent of the rewriting machinery in `sbasis`: it is the
//! oracle every dimension claim is checked against.

use std::collections::{HashMap, VecDeque};

use crate::error::CoreError;
use crate::field::Scalar;
use crate::poly::{poly_mul, NCPoly};
use crate::presentation::Presentation;
use crate::quiver::{compose_paths, ArrowId, Path, VertexId};

/// Hard resource cap: stored nonzero row entries (and enumerated paths) per
/// `(i, j)` block.
pub const DEFAULT_ENTRY_CAP: usize = 2_000_000;

/// Default truncation bound used by the CLI.
pub const DEFAULT_BOUND: usize = 12;

type SparseRow = Vec<(usize, Scalar)>;

#[derive(Debug, Clone)]
struct PathTable {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    /// `degree_first[k]` is the index of the first path of degree `k`.
    degree_first: Vec<usize>,
}

impl PathTable {
    fn degree_of_col(&self, col: usize) -> usize {
        self.paths[col].len()
    }

    fn count_at_degree(&self, k: usize) -> usize {
        self.degree_first[k + 1] - self.degree_first[k]
    }
}

#[derive(Debug, Clone)]
struct Block {
    table: PathTable,
    rows: Vec<SparseRow>,
    pivot_of_col: HashMap<usize, usize>,
    entries: usize,
}

/// A presentation truncated at a degree bound, with exact graded dimensions
/// and a canonical residue basis per vertex pair.
#[derive(Debug, Clone)]
pub struct TruncatedAlgebra {
    presentation: Presentation,
    bound: usize,
    blocks: Vec<Vec<Block>>,
    graded_dims: Vec<Vec<Vec<usize>>>,
    basis: Vec<Vec<Vec<Path>>>,
}

/// Per-degree totals produced by [`TruncatedAlgebra::dim_up_to`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimTable {
    pub per_degree: Vec<usize>,
    pub total: usize,
    pub top_degree_zero: bool,
}

pub fn truncate_quotient(
    presentation: &Presentation,
    bound: usize,
) -> Result<TruncatedAlgebra, CoreError> {
    truncate_quotient_with_cap(presentation, bound, DEFAULT_ENTRY_CAP)
}

pub fn truncate_quotient_with_cap(
    presentation: &Presentation,
    bound: usize,
    entry_cap: usize,
) -> Result<TruncatedAlgebra, CoreError> {
    presentation.validate()?;
    let n = presentation.quiver.vertex_count();

    let tables = enumerate_path_tables(presentation, bound, entry_cap)?;
    let mut blocks: Vec<Vec<Block>> = tables
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|table| Block {
                    table,
                    rows: Vec::new(),
                    pivot_of_col: HashMap::new(),
                    entries: 0,
                })
                .collect()
        })
        .collect();

    // Seed with the relations, then close the row space under one-arrow
    // multiplication on both sides; the closure spans (I + m^(bound+1)).
    let mut worklist: VecDeque<(usize, usize, usize)> = VecDeque::new();
    for rel in &presentation.relations {
        let (i, j) = (rel.source().0, rel.target().0);
        let row = poly_to_row(&blocks[i][j].table, rel, bound);
        if let Some(r) = insert_row(&mut blocks[i][j], row, entry_cap, bound)? {
            worklist.push_back((i, j, r));
        }
    }
    while let Some((i, j, r)) = worklist.pop_front() {
        for (aid, arrow) in presentation.quiver.arrows() {
            // left multiply: arrow ends where the block starts
            if arrow.target.0 == i {
                let src = arrow.source.0;
                let row = shift_row(
                    &blocks[i][j].table,
                    &blocks[src][j].table,
                    &blocks[i][j].rows[r],
                    aid,
                    true,
                    presentation,
                    bound,
                );
                if let Some(new_r) = insert_row(&mut blocks[src][j], row, entry_cap, bound)? {
                    worklist.push_back((src, j, new_r));
                }
            }
            // right multiply: arrow starts where the block ends
            if arrow.source.0 == j {
                let tgt = arrow.target.0;
                let row = shift_row(
                    &blocks[i][j].table,
                    &blocks[i][tgt].table,
                    &blocks[i][j].rows[r],
                    aid,
                    false,
                    presentation,
                    bound,
                );
                if let Some(new_r) = insert_row(&mut blocks[i][tgt], row, entry_cap, bound)? {
                    worklist.push_back((i, tgt, new_r));
                }
            }
        }
    }

    for row in blocks.iter_mut() {
        for block in row.iter_mut() {
            back_substitute(block);
        }
    }

    let mut graded_dims = vec![vec![vec![0usize; bound + 1]; n]; n];
    let mut basis = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let block = &blocks[i][j];
            let mut pivots_at = vec![0usize; bound + 1];
            for row in &block.rows {
                pivots_at[block.table.degree_of_col(row[0].0)] += 1;
            }
            for k in 0..=bound {
                graded_dims[i][j][k] = block.table.count_at_degree(k) - pivots_at[k];
            }
            basis[i][j] = (0..block.table.paths.len())
                .filter(|c| !block.pivot_of_col.contains_key(c))
                .map(|c| block.table.paths[c].clone())
                .collect();
        }
    }

    Ok(TruncatedAlgebra {
        presentation: presentation.clone(),
        bound,
        blocks,
        graded_dims,
        basis,
    })
}

impl TruncatedAlgebra {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn graded_dim(&self, i: VertexId, j: VertexId, degree: usize) -> usize {
        self.graded_dims[i.0][j.0][degree]
    }

    /// Residue-class representative paths for the `(i, j)` block: the
    /// lexicographically least paths surviving row reduction.
    pub fn basis_paths(&self, i: VertexId, j: VertexId) -> &[Path] {
        &self.basis[i.0][j.0]
    }

    pub fn all_basis_paths(&self) -> Vec<Path> {
        let n = self.presentation.quiver.vertex_count();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                out.extend(self.basis[i][j].iter().cloned());
            }
        }
        out.sort();
        out
    }

    pub fn dim_up_to(&self) -> DimTable {
        let n = self.presentation.quiver.vertex_count();
        let mut per_degree = vec![0usize; self.bound + 1];
        for i in 0..n {
            for j in 0..n {
                for k in 0..=self.bound {
                    per_degree[k] += self.graded_dims[i][j][k];
                }
            }
        }
        let total = per_degree.iter().sum();
        let top_degree_zero = per_degree[self.bound] == 0;
        DimTable {
            per_degree,
            total,
            top_degree_zero,
        }
    }

    /// Reduces a polynomial to its canonical residue on the chosen basis.
    pub fn reduce(&self, poly: &NCPoly) -> Result<NCPoly, CoreError> {
        let block = &self.blocks[poly.source().0][poly.target().0];
        let mut row: SparseRow = Vec::with_capacity(poly.term_count());
        for (p, c) in poly.terms() {
            if p.len() > self.bound {
                continue;
            }
            match block.table.index.get(p) {
                Some(col) => row.push((*col, c.clone())),
                None => {
                    return Err(CoreError::UnsupportedElement(format!(
                        "path {} is not in the truncated block",
                        self.presentation.quiver.path_name(p)
                    )))
                }
            }
        }
        row.sort_by_key(|(c, _)| *c);
        let reduced = reduce_row_fully(block, row);
        let mut out = NCPoly::zero(poly.source(), poly.target());
        for (col, coeff) in reduced {
            out.add_term(block.table.paths[col].clone(), coeff);
        }
        Ok(out)
    }

    /// Multiplication in the truncated quotient: multiply freely, discard
    /// degrees above the bound, reduce to basis representatives.
    pub fn multiply_in_quotient(&self, f: &NCPoly, g: &NCPoly) -> Result<NCPoly, CoreError> {
        for poly in [f, g] {
            if poly.max_degree().unwrap_or(0) > self.bound {
                return Err(CoreError::UnsupportedElement(
                    "operand has terms above the truncation bound".into(),
                ));
            }
        }
        let mut prod = poly_mul(f, g);
        prod.truncate(self.bound);
        self.reduce(&prod)
    }
}

fn enumerate_path_tables(
    presentation: &Presentation,
    bound: usize,
    cap: usize,
) -> Result<Vec<Vec<PathTable>>, CoreError> {
    let quiver = &presentation.quiver;
    let n = quiver.vertex_count();
    // outgoing arrows per vertex, in declaration order
    let mut out_arrows: Vec<Vec<ArrowId>> = vec![Vec::new(); n];
    for (aid, arrow) in quiver.arrows() {
        out_arrows[arrow.source.0].push(aid);
    }

    // paths_by[source][target][degree], generated in lex order per degree
    let mut paths_by: Vec<Vec<Vec<Vec<Path>>>> =
        vec![vec![vec![Vec::new(); bound + 1]; n]; n];
    for s in 0..n {
        let mut frontier = vec![quiver.trivial_path(VertexId(s))];
        paths_by[s][s][0].push(frontier[0].clone());
        let mut counts = vec![0usize; n];
        counts[s] = 1;
        for k in 1..=bound {
            let mut next = Vec::new();
            for p in &frontier {
                for aid in &out_arrows[p.target().0] {
                    let q = compose_paths(p, &quiver.arrow_path(*aid))
                        .expect("extension by an outgoing arrow composes");
                    let t = q.target().0;
                    counts[t] += 1;
                    if counts[t] > cap {
                        return Err(CoreError::TruncationTooExpensive {
                            limit: cap,
                            degree_reached: k,
                        });
                    }
                    paths_by[s][t][k].push(q.clone());
                    next.push(q);
                }
            }
            frontier = next;
        }
    }

    let mut tables = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut paths = Vec::new();
            let mut degree_first = Vec::with_capacity(bound + 2);
            for k in 0..=bound {
                degree_first.push(paths.len());
                paths.extend(paths_by[i][j][k].iter().cloned());
            }
            degree_first.push(paths.len());
            let index = paths
                .iter()
                .enumerate()
                .map(|(c, p)| (p.clone(), c))
                .collect();
            row.push(PathTable {
                paths,
                index,
                degree_first,
            });
        }
        tables.push(row);
    }
    Ok(tables)
}

fn poly_to_row(table: &PathTable, poly: &NCPoly, bound: usize) -> SparseRow {
    let mut row: SparseRow = poly
        .terms()
        .filter(|(p, _)| p.len() <= bound)
        .map(|(p, c)| (table.index[p], c.clone()))
        .collect();
    row.sort_by_key(|(c, _)| *c);
    row
}

/// Maps a row through one-arrow multiplication.  Multiplication by a fixed
/// arrow preserves the (degree, lex) column order, so the image stays sorted.
fn shift_row(
    from: &PathTable,
    to: &PathTable,
    row: &SparseRow,
    arrow: ArrowId,
    left: bool,
    presentation: &Presentation,
    bound: usize,
) -> SparseRow {
    let quiver = &presentation.quiver;
    let a = quiver.arrow_path(arrow);
    let mut out = Vec::with_capacity(row.len());
    for (col, coeff) in row {
        let p = &from.paths[*col];
        if p.len() + 1 > bound {
            continue;
        }
        let q = if left {
            compose_paths(&a, p)
        } else {
            compose_paths(p, &a)
        }
        .expect("block endpoints match the arrow");
        out.push((to.index[&q], coeff.clone()));
    }
    out
}

/// Reduces `row` against the block's echelon rows and inserts it as a new
/// monic pivot row if anything survives.
fn insert_row(
    block: &mut Block,
    mut row: SparseRow,
    entry_cap: usize,
    bound: usize,
) -> Result<Option<usize>, CoreError> {
    loop {
        let Some((lead_col, lead_coeff)) = row.first().cloned() else {
            return Ok(None);
        };
        match block.pivot_of_col.get(&lead_col) {
            None => {
                let inv = lead_coeff.inv().expect("leading coefficient is nonzero");
                for (_, c) in row.iter_mut() {
                    *c = c.mul(&inv);
                }
                block.entries += row.len();
                if block.entries > entry_cap {
                    return Err(CoreError::TruncationTooExpensive {
                        limit: entry_cap,
                        degree_reached: block.table.degree_of_col(lead_col).min(bound),
                    });
                }
                let idx = block.rows.len();
                block.pivot_of_col.insert(lead_col, idx);
                block.rows.push(row);
                return Ok(Some(idx));
            }
            Some(pivot_row) => {
                let pivot = block.rows[*pivot_row].clone();
                row = row_axpy(&row, &lead_coeff.neg(), &pivot);
            }
        }
    }
}

/// `a + s * b` on sorted sparse rows.
fn row_axpy(a: &SparseRow, s: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut ia, mut ib) = (0, 0);
    while ia < a.len() || ib < b.len() {
        match (a.get(ia), b.get(ib)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let v = va.add(&vb.mul(s));
                if !v.is_zero() {
                    out.push((*ca, v));
                }
                ia += 1;
                ib += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((*ca, va.clone()));
                ia += 1;
            }
            (Some(_), Some((cb, vb))) => {
                out.push((*cb, vb.mul(s)));
                ib += 1;
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                ia += 1;
            }
            (None, Some((cb, vb))) => {
                out.push((*cb, vb.mul(s)));
                ib += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Clears every pivot column from the tails of all rows, yielding the reduced
/// row echelon form that makes residues canonical.
fn back_substitute(block: &mut Block) {
    let mut order: Vec<usize> = (0..block.rows.len()).collect();
    order.sort_by_key(|r| std::cmp::Reverse(block.rows[*r][0].0));
    for &r in &order {
        let mut row = std::mem::take(&mut block.rows[r]);
        let mut k = 1;
        while k < row.len() {
            let (col, coeff) = row[k].clone();
            if let Some(&pr) = block.pivot_of_col.get(&col) {
                let pivot = block.rows[pr].clone();
                row = row_axpy(&row, &coeff.neg(), &pivot);
                // the pivot column vanished; continue from the same index
            } else {
                k += 1;
            }
        }
        block.rows[r] = row;
    }
}

fn reduce_row_fully(block: &Block, mut row: SparseRow) -> SparseRow {
    let mut k = 0;
    while k < row.len() {
        let (col, coeff) = row[k].clone();
        if let Some(&pr) = block.pivot_of_col.get(&col) {
            let pivot = &block.rows[pr];
            row = row_axpy(&row, &coeff.neg(), pivot);
        } else {
            k += 1;
        }
    }
    row
}
