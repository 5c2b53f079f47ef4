//! Permutation diagrams and the marching moves on them.
//!
//! Every move is available in two forms. The algebraic form multiplies by
//! transpositions and is what the rest of the crate runs. The diagrammatic
//! form manipulates box sets literally (remove a hook, hop boxes
//! northwest, add a box) and exists so the two can be checked against each
//! other.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{LehmerCode, Permutation};

/// A cell of the `n × n` grid, 1-indexed, rows growing downward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A finite set of boxes, iterated row-major.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Diagram {
    boxes: BTreeSet<Cell>,
}

impl Diagram {
    pub fn from_cells(cells: impl IntoIterator<Item = Cell>) -> Self {
        Self { boxes: cells.into_iter().collect() }
    }

    /// `D(π) = {(p, q) : π(p) > q, π⁻¹(q) > p}`.
    pub fn of(p: &Permutation) -> Self {
        let inv = p.inverse();
        let n = p.window();
        let boxes = (1..=n)
            .flat_map(|r| (1..=n).map(move |c| Cell::new(r, c)))
            .filter(|b| p.at(b.row) > b.col && inv.at(b.col) > b.row)
            .collect();
        Self { boxes }
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.boxes.contains(&cell)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.boxes.iter().copied()
    }

    pub fn insert(&mut self, cell: Cell) -> bool {
        self.boxes.insert(cell)
    }

    /// Southernmost, then eastmost box.
    pub fn maximal_box(&self) -> Option<Cell> {
        self.boxes.iter().max_by_key(|b| (b.row, b.col)).copied()
    }

    /// Recovers the permutation whose diagram this is. Row `i` of `D(π)` has
    /// exactly `c_i` boxes, so the Lehmer code is read off the row counts and
    /// the result is checked against the box set.
    pub fn to_permutation(&self) -> Result<Permutation> {
        let rows = self.boxes.iter().map(|b| b.row).max().unwrap_or(0);
        let mut code = vec![0; rows];
        for b in &self.boxes {
            code[b.row - 1] += 1;
        }
        let p = Permutation::from_lehmer(&LehmerCode::new(code));
        if Diagram::of(&p) == *self {
            Ok(p)
        } else {
            Err(Error::NotADiagram)
        }
    }
}

pub fn diagram(p: &Permutation) -> Diagram {
    Diagram::of(p)
}

/// The maximal corner `(l, m)`; its row is the last descent of `p`.
pub fn maximal_corner(p: &Permutation) -> Option<Cell> {
    let g = p.last_descent()?;
    // positions after g increase, so the eastmost box in row g sits in the
    // column of the largest value below p(g) to its right
    let col = (g + 1..=p.window()).map(|k| p.at(k)).filter(|&v| v < p.at(g)).max()?;
    Some(Cell::new(g, col))
}

/// Data of the corner-removing transposition `γ' = γ t_{g↔m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionPair {
    /// Last descent of the input.
    pub g: usize,
    /// Largest `m > g` with `γ(m) < γ(g)`.
    pub m: usize,
    pub reduced: Permutation,
}

pub fn transition_pair(p: &Permutation) -> Result<TransitionPair> {
    let g = p.last_descent().ok_or(Error::Identity)?;
    let m =
        (g + 1..=p.window()).rev().find(|&k| p.at(k) < p.at(g)).expect("a descent at g has a smaller value after it");
    Ok(TransitionPair { g, m, reduced: p.transpose(g, m) })
}

/// Dots strictly northwest of the maximal corner that are maximally
/// southeast among such dots, sorted by row.
pub fn pivots(p: &Permutation) -> Result<Vec<Cell>> {
    let corner = maximal_corner(p).ok_or(Error::Identity)?;
    let northwest: Vec<Cell> = (1..corner.row).map(|r| Cell::new(r, p.at(r))).filter(|d| d.col < corner.col).collect();
    Ok(northwest
        .iter()
        .filter(|d| !northwest.iter().any(|e| e != *d && e.row > d.row && e.col > d.col))
        .copied()
        .collect())
}

pub fn pivot_rows(p: &Permutation) -> Result<Vec<usize>> {
    Ok(pivots(p)?.into_iter().map(|c| c.row).collect())
}

fn check_pivot_row(p: &Permutation, rows: &[usize], row: usize) -> Result<()> {
    if rows.contains(&row) {
        Ok(())
    } else {
        Err(Error::NotPivotRow { perm: p.clone(), row })
    }
}

/// Marches `p` toward the pivot in row `i`: `p t_{g↔m} t_{i↔g}`.
pub fn march(p: &Permutation, i: usize) -> Result<Permutation> {
    k_march(p, &[i])
}

/// K-marches `p` toward the pivots in rows `rows` (strictly increasing):
/// `p t_{g↔m} t_{i₁↔g} ⋯ t_{i_k↔g}`.
pub fn k_march(p: &Permutation, rows: &[usize]) -> Result<Permutation> {
    if rows.is_empty() {
        return Err(Error::EmptyMarch);
    }
    let pair = transition_pair(p)?;
    let valid = pivot_rows(p)?;
    let mut prev = 0;
    for &r in rows {
        check_pivot_row(p, &valid, r)?;
        if r <= prev {
            return Err(Error::NotPivotRow { perm: p.clone(), row: r });
        }
        prev = r;
    }
    Ok(rows.iter().fold(pair.reduced, |acc, &r| acc.transpose(r, pair.g)))
}

/// Adds the box `(l, p(l))` to `D(p)` by right multiplication with
/// `t_{l↔m'}`, `m' = min{k > l : p(k) > p(l)}`.
///
/// Fails unless the result's diagram is exactly `D(p)` plus that box.
pub fn add_box(p: &Permutation, l: usize) -> Result<Permutation> {
    let v = p.at(l);
    let m = (l + 1..).find(|&k| p.at(k) > v).expect("values above p(l) exist");
    let q = p.transpose(l, m);
    let mut expected = Diagram::of(p);
    let fresh = expected.insert(Cell::new(l, v));
    if !fresh || Diagram::of(&q) != expected {
        return Err(Error::InvalidAddBox { perm: p.clone(), row: l, col: v });
    }
    Ok(q)
}

/// Literal marching on the box set: the hook of pivot `(i, j)` is removed and
/// every box in the rectangle spanned by `(i, j)` and the maximal corner hops
/// strictly northwest over the hooks of the remaining dots.
pub fn march_diagrammatic(p: &Permutation, i: usize) -> Result<Diagram> {
    let corner = maximal_corner(p).ok_or(Error::Identity)?;
    let pivot =
        pivots(p)?.into_iter().find(|c| c.row == i).ok_or_else(|| Error::NotPivotRow { perm: p.clone(), row: i })?;
    let dots: Vec<Cell> = (1..=p.window()).map(|r| Cell::new(r, p.at(r))).filter(|d| *d != pivot).collect();

    // Rows and columns of the rectangle crossed by a remaining hook.
    let row_blocked = |r: usize| dots.iter().any(|d| d.row == r && d.col <= corner.col);
    let col_blocked = |c: usize| dots.iter().any(|d| d.col == c && d.row <= corner.row);
    let open_rows: Vec<usize> = (pivot.row..=corner.row).filter(|&r| !row_blocked(r)).collect();
    let open_cols: Vec<usize> = (pivot.col..=corner.col).filter(|&c| !col_blocked(c)).collect();

    let d = Diagram::of(p);
    let in_rect = |b: &Cell| (pivot.row..=corner.row).contains(&b.row) && (pivot.col..=corner.col).contains(&b.col);
    let mut out: BTreeSet<Cell> = d.cells().filter(|b| !in_rect(b)).collect();
    // BTreeSet order is top to bottom, then left to right.
    for b in d.cells().filter(in_rect) {
        let r = open_rows.iter().rev().find(|&&r| r < b.row);
        let c = open_cols.iter().rev().find(|&&c| c < b.col);
        match (r, c) {
            (Some(&r), Some(&c)) if out.insert(Cell::new(r, c)) => {}
            _ => return Err(Error::NotADiagram),
        }
    }
    Ok(Diagram { boxes: out })
}

/// One stage of an iterated K-march.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMarchStep {
    /// Pivot row marched toward.
    pub row: usize,
    pub marched: Permutation,
    /// Box added in the corner row before the next march, if any.
    pub added: Option<Cell>,
    pub augmented: Option<Permutation>,
}

/// Runs a K-march step by step on diagrams: march toward `rows[0]`, add a box
/// in the original corner row, march toward `rows[1]`, and so on.
pub fn k_march_steps(p: &Permutation, rows: &[usize]) -> Result<Vec<KMarchStep>> {
    if rows.is_empty() {
        return Err(Error::EmptyMarch);
    }
    let l = maximal_corner(p).ok_or(Error::Identity)?.row;
    let mut current = p.clone();
    let mut steps = Vec::with_capacity(rows.len());
    for (k, &row) in rows.iter().enumerate() {
        let marched = march_diagrammatic(&current, row)?.to_permutation()?;
        let (added, augmented) = if k + 1 < rows.len() {
            let cell = Cell::new(l, marched.at(l));
            let mut d = Diagram::of(&marched);
            d.insert(cell);
            let next = d.to_permutation().map_err(|_| Error::InvalidAddBox {
                perm: marched.clone(),
                row: cell.row,
                col: cell.col,
            })?;
            current = next.clone();
            (Some(cell), Some(next))
        } else {
            (None, None)
        };
        steps.push(KMarchStep { row, marched, added, augmented });
    }
    Ok(steps)
}

/// Grid rendering with `●` for dots, `□` for boxes and `·` elsewhere.
pub fn render(p: &Permutation) -> String {
    render_padded(p, 1)
}

/// [`render`] on a grid of at least `n × n`.
pub fn render_padded(p: &Permutation, n: usize) -> String {
    let n = p.window().max(n).max(1);
    let d = Diagram::of(p);
    let mut out = String::new();
    for r in 1..=n {
        let line: Vec<&str> = (1..=n)
            .map(|c| {
                if p.at(r) == c {
                    "●"
                } else if d.contains(Cell::new(r, c)) {
                    "□"
                } else {
                    "·"
                }
            })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
