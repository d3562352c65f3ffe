//! Reduced pipe dreams, ladder moves and Schubert polynomials.
//!
//! Cells are `(row, col)`, both 1-based. A crossing at `(r, c)` stands for the
//! generator `s_{r+c-1}`, and its weight is `x_r`. Reading the crossings row by
//! row from the top, right to left inside each row, and multiplying the
//! generators left to right gives the permutation of the dream.

mod divdiff;
mod render;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::polynomial::{Monomial, Polynomial};

pub use divdiff::schubert_divdiff;
pub use render::render_grid;

/// `(row, col)`, 1-based.
pub type Cell = (u32, u32);

/// Identity of a crossing of the bottom pipe dream: its row there and its
/// position in that row counted from the left. Ladder moves keep the id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingId {
    pub row: u32,
    pub ordinal: u32,
}

impl fmt::Display for CrossingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row{}#{}", self.row, self.ordinal)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub id: CrossingId,
    pub row: u32,
    pub col: u32,
}

impl Crossing {
    /// Index of the northeast diagonal, numbered 1, 2, ... from the top left.
    pub fn diagonal(&self) -> u32 {
        self.row + self.col - 1
    }

    pub fn cell(&self) -> Cell {
        (self.row, self.col)
    }
}

/// Bitset of occupied cells, one word per row.
#[derive(Clone, Debug, Default)]
struct Grid {
    rows: Vec<u64>,
}

impl Grid {
    fn from_cells(cells: impl Iterator<Item = Cell>) -> Grid {
        let mut g = Grid::default();
        for (r, c) in cells {
            assert!(c < 64, "column {c} exceeds grid width");
            if g.rows.len() <= r as usize {
                g.rows.resize(r as usize + 1, 0);
            }
            g.rows[r as usize] |= 1 << c;
        }
        g
    }

    fn has(&self, (r, c): Cell) -> bool {
        self.rows.get(r as usize).is_some_and(|bits| bits >> c & 1 == 1)
    }
}

/// A reduced pipe dream whose crossings remember where they started.
#[derive(Clone, Debug)]
pub struct PipeDream {
    /// Sorted by id.
    crossings: Vec<Crossing>,
    target: Permutation,
}

impl PipeDream {
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn target(&self) -> &Permutation {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Occupied cells in row-major order. Two dreams with the same cells are
    /// the same pipe dream regardless of crossing ids.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells: Vec<Cell> = self.crossings.iter().map(Crossing::cell).collect();
        cells.sort_unstable();
        cells
    }

    pub fn crossing(&self, id: CrossingId) -> Option<&Crossing> {
        self.crossings
            .binary_search_by_key(&id, |c| c.id)
            .ok()
            .map(|k| &self.crossings[k])
    }

    pub fn crossing_at(&self, cell: Cell) -> Option<&Crossing> {
        self.crossings.iter().find(|c| c.cell() == cell)
    }

    pub fn weight(&self) -> Monomial {
        let mut exps = Vec::new();
        for c in &self.crossings {
            let r = c.row as usize;
            if exps.len() < r {
                exps.resize(r, 0);
            }
            exps[r - 1] += 1;
        }
        Monomial::new(exps)
    }

    fn grid(&self) -> Grid {
        Grid::from_cells(self.crossings.iter().map(Crossing::cell))
    }

    /// The unique order `k` for which a ladder move applies at `crossing`, if
    /// any. Rows `r-k .. r-1` must be full in columns `c` and `c+1`, and row
    /// `r-k-1` empty there.
    fn ladder_order(grid: &Grid, crossing: &Crossing) -> Option<u32> {
        let (r, c) = crossing.cell();
        if grid.has((r, c + 1)) {
            return None;
        }
        let mut k = 0;
        while k + 1 < r {
            let above = r - k - 1;
            match (grid.has((above, c)), grid.has((above, c + 1))) {
                (false, false) => return Some(k),
                (true, true) => k += 1,
                _ => return None,
            }
        }
        None
    }

    fn moved(&self, at: usize, order: u32) -> PipeDream {
        let mut crossings = self.crossings.clone();
        let c = &mut crossings[at];
        c.row -= order + 1;
        c.col += 1;
        let next = PipeDream {
            crossings,
            target: self.target.clone(),
        };
        debug_assert_eq!(
            permutation_of(&next.cells()).ok().as_ref(),
            Some(&self.target),
            "ladder move broke reducedness"
        );
        next
    }

    /// Ladder move of the given order at crossing `id`: the crossing at
    /// `(r, c)` jumps to `(r - order - 1, c + 1)`. `None` when the move does not
    /// apply.
    pub fn ladder_move(&self, id: CrossingId, order: u32) -> Option<PipeDream> {
        let at = self.crossings.binary_search_by_key(&id, |c| c.id).ok()?;
        (Self::ladder_order(&self.grid(), &self.crossings[at]) == Some(order)).then(|| self.moved(at, order))
    }

    /// Order-0 ladder move: one step up the northeast diagonal.
    pub fn simple_move(&self, id: CrossingId) -> Option<PipeDream> {
        self.ladder_move(id, 0)
    }

    /// Every applicable ladder move as `(crossing, order)`, in id order.
    pub fn available_moves(&self, simple_only: bool) -> Vec<(CrossingId, u32)> {
        let grid = self.grid();
        self.crossings
            .iter()
            .filter_map(|c| Self::ladder_order(&grid, c).map(|k| (c.id, k)))
            .filter(|&(_, k)| !simple_only || k == 0)
            .collect()
    }

    fn successors(&self, simple_only: bool) -> impl Iterator<Item = PipeDream> + '_ {
        let grid = self.grid();
        self.crossings.iter().enumerate().filter_map(move |(at, c)| {
            Self::ladder_order(&grid, c)
                .filter(|&k| !simple_only || k == 0)
                .map(|k| self.moved(at, k))
        })
    }

    /// ASCII grid: `+` for a crossing, `.` for elbows, staircase-trimmed.
    pub fn render(&self) -> String {
        render_grid(self)
    }
}

impl PartialEq for PipeDream {
    fn eq(&self, other: &Self) -> bool {
        self.target == other.target && self.cells() == other.cells()
    }
}

impl Eq for PipeDream {}

/// Which order the crossings are read in when forming the generator word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReadingOrder {
    /// Rows top to bottom, right to left inside a row.
    TopDownRightToLeft,
    /// Rows bottom to top, left to right inside a row. Produces the inverse.
    BottomUpLeftToRight,
}

/// The permutation a set of crossings is a reduced pipe dream for.
pub fn permutation_of(cells: &[Cell]) -> Result<Permutation> {
    permutation_of_with(cells, ReadingOrder::TopDownRightToLeft)
}

pub fn permutation_of_with(cells: &[Cell], order: ReadingOrder) -> Result<Permutation> {
    let mut sorted = cells.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != cells.len() {
        return Err(Error::NotReduced);
    }
    let word: Vec<usize> = match order {
        ReadingOrder::TopDownRightToLeft => {
            sorted.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            sorted.iter().map(|&(r, c)| (r + c - 1) as usize).collect()
        }
        ReadingOrder::BottomUpLeftToRight => {
            sorted.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            sorted.iter().map(|&(r, c)| (r + c - 1) as usize).collect()
        }
    };
    let mut w = Permutation::identity(0);
    for a in word {
        if !w.try_ascend(a) {
            return Err(Error::NotReduced);
        }
    }
    Ok(w)
}

/// Left-justified dream with `L(i)` crossings in row `i`.
pub fn bottom_pipe_dream(w: &Permutation) -> PipeDream {
    let code = w.lehmer_code();
    let crossings = (1..=code.len())
        .flat_map(|row| {
            (1..=code.get(row)).map(move |ordinal| Crossing {
                id: CrossingId {
                    row: row as u32,
                    ordinal,
                },
                row: row as u32,
                col: ordinal,
            })
        })
        .collect();
    PipeDream {
        crossings,
        target: w.clone(),
    }
}

fn closure(w: &Permutation, simple_only: bool) -> Vec<PipeDream> {
    let start = bottom_pipe_dream(w);
    let mut seen: HashSet<Vec<Cell>> = HashSet::from([start.cells()]);
    let mut queue = VecDeque::from([start.clone()]);
    let mut out = vec![start];
    while let Some(dream) = queue.pop_front() {
        for next in dream.successors(simple_only) {
            if seen.insert(next.cells()) {
                queue.push_back(next.clone());
                out.push(next);
            }
        }
    }
    for d in &out {
        match permutation_of(&d.cells()) {
            Ok(p) if p == *w => {}
            other => panic!("generated dream {:?} is not reduced for {w}: {other:?}", d.cells()),
        }
    }
    out.sort_by_cached_key(PipeDream::cells);
    out
}

/// Every reduced pipe dream of `w`: the closure of the bottom dream under
/// ladder moves of all orders.
pub fn all_pipe_dreams(w: &Permutation) -> Vec<PipeDream> {
    closure(w, false)
}

/// Closure of the bottom dream under simple ladder moves only.
pub fn simple_closure(w: &Permutation) -> Vec<PipeDream> {
    closure(w, true)
}

/// `S_w` as the sum of the weights of all reduced pipe dreams of `w`.
pub fn schubert(w: &Permutation) -> Polynomial {
    Polynomial::from_terms(all_pipe_dreams(w).iter().map(|d| (d.weight(), BigInt::one())))
}
