//! Matching crossings of the bottom pipe dream with forest vertices.
//!
//! Row `i` of the bottom pipe dream of `w` holds `L(i)` crossings and the left
//! branch at leaf `i` of the forest of `L` holds `L(i)` vertices, so crossing
//! `j` of row `i` is paired with the `j`th vertex of that branch counted from
//! the bottom. Crossing ids and vertex ids are both sorted by `(row, ordinal)`,
//! which makes the pairing index-for-index.

mod verify;

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::error::Result;
use crate::forest::{forest_polynomial, ForestLabeling, IndexedForest, VertexId};
use crate::permutation::Permutation;
use crate::pipedream::{bottom_pipe_dream, schubert, Cell, CrossingId, PipeDream};

pub use verify::{
    verify_theorem, verify_theorem_with_progress, BadPairMismatch, Disagreement, TheoremReport, VerifyConfig,
};

/// The bottom pipe dream of `w`, the forest of its code, and the pairing of
/// their crossings and vertices.
#[derive(Clone, Debug)]
pub struct Correspondence {
    permutation: Permutation,
    bottom: PipeDream,
    forest: IndexedForest,
}

impl Correspondence {
    pub fn new(w: &Permutation) -> Self {
        let bottom = bottom_pipe_dream(w);
        let forest = IndexedForest::from_code(&w.lehmer_code());
        debug_assert_eq!(bottom.len(), forest.len());
        Correspondence {
            permutation: w.clone(),
            bottom,
            forest,
        }
    }

    pub fn permutation(&self) -> &Permutation {
        &self.permutation
    }

    pub fn bottom(&self) -> &PipeDream {
        &self.bottom
    }

    pub fn forest(&self) -> &IndexedForest {
        &self.forest
    }

    pub fn vertex_of(&self, id: CrossingId) -> Option<VertexId> {
        self.forest.vertex_in_branch(id.row, id.ordinal)
    }

    pub fn crossing_of(&self, v: VertexId) -> CrossingId {
        let vertex = self.forest.vertex(v);
        CrossingId {
            row: vertex.rho,
            ordinal: vertex.branch_ordinal,
        }
    }

    /// `(crossing, vertex)` pairs in id order.
    pub fn pairs(&self) -> Vec<(CrossingId, VertexId)> {
        self.bottom
            .crossings()
            .iter()
            .map(|c| c.id)
            .zip(self.forest.ids())
            .collect()
    }

    /// Right-child edges of the forest, expressed as crossing pairs.
    pub fn right_child_pairs(&self) -> Vec<(CrossingId, CrossingId)> {
        self.forest
            .right_edges()
            .into_iter()
            .map(|(p, c)| (self.crossing_of(p), self.crossing_of(c)))
            .collect()
    }
}

/// Which crossing covers which in the bottom pipe dream of `w`.
///
/// Rows are consumed left to right by a cursor. Working through the crossings
/// of the current row, each empty row the cursor passes uses up one crossing;
/// the next crossing covers the rightmost crossing of the first nonempty row,
/// which is then completed recursively before the walk resumes. Pairs come out
/// as `(coverer, covered)` in the order they are found.
pub fn covering_relation(w: &Permutation) -> Vec<(CrossingId, CrossingId)> {
    let code = w.lehmer_code();
    let rows = code.len();
    let count = |i: usize| if i <= rows { code.get(i) } else { 0 };
    let id = |row: usize, ordinal: u32| CrossingId {
        row: row as u32,
        ordinal,
    };

    fn complete(
        row: usize,
        mut cursor: usize,
        rows: usize,
        count: &dyn Fn(usize) -> u32,
        id: &dyn Fn(usize, u32) -> CrossingId,
        pairs: &mut Vec<(CrossingId, CrossingId)>,
    ) -> usize {
        let mut t = 1;
        while t <= count(row) {
            let mut j = cursor;
            while j <= rows && count(j) == 0 {
                j += 1;
            }
            let skipped = (j - cursor) as u32;
            if j > rows || t + skipped > count(row) {
                // the remaining crossings cover bare leaves
                return cursor + (count(row) - t + 1) as usize;
            }
            t += skipped;
            pairs.push((id(row, t), id(j, count(j))));
            cursor = complete(j, j + 1, rows, count, id, pairs);
            t += 1;
        }
        cursor
    }

    let mut pairs = Vec::new();
    let mut row = 1;
    while row <= rows {
        if count(row) == 0 {
            row += 1;
            continue;
        }
        row = complete(row, row + 1, rows, &count, &id, &mut pairs);
    }
    pairs
}

/// Order in which crossings are slid up when realizing a labeling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlideOrder {
    /// Rows top to bottom, right to left within a row; each crossing is slid
    /// all the way before the next one starts.
    TopDownRightToLeft,
    /// Rows bottom to top, left to right within a row, one crossing at a time.
    BottomUpLeftToRight,
    /// One step at a time, always moving the first crossing in id order that
    /// has not reached its row yet and can move.
    GreedyFirst,
    /// Same as `GreedyFirst` but picking the last such crossing.
    GreedyLast,
}

/// Realizes a valid labeling as a pipe dream by sliding every crossing up
/// with simple ladder moves until it sits in the row given by its label.
///
/// Panics if a crossing cannot reach its row, which would mean the
/// construction is not well defined for `w`.
pub fn psi(w: &Permutation, f: &ForestLabeling) -> Result<PipeDream> {
    let dream = psi_with(w, f, SlideOrder::TopDownRightToLeft)?;
    Ok(dream.unwrap_or_else(|| panic!("sliding got stuck for {w} with labeling {:?}", f.values())))
}

/// Like [`psi`] with a chosen slide order; `Ok(None)` when some crossing gets
/// stuck below its target row.
pub fn psi_with(w: &Permutation, f: &ForestLabeling, order: SlideOrder) -> Result<Option<PipeDream>> {
    let forest = IndexedForest::from_code(&w.lehmer_code());
    f.validate(&forest)?;
    let mut dream = bottom_pipe_dream(w);
    let ids: Vec<CrossingId> = dream.crossings().iter().map(|c| c.id).collect();
    // crossing k pairs with vertex k
    let target = |k: usize| f.values()[k];
    let row_of = |d: &PipeDream, k: usize| d.crossings()[k].row;

    match order {
        SlideOrder::TopDownRightToLeft | SlideOrder::BottomUpLeftToRight => {
            let mut keys: Vec<usize> = (0..ids.len()).collect();
            if order == SlideOrder::TopDownRightToLeft {
                keys.sort_by_key(|&k| (ids[k].row, std::cmp::Reverse(ids[k].ordinal)));
            } else {
                keys.sort_by_key(|&k| (std::cmp::Reverse(ids[k].row), ids[k].ordinal));
            }
            for k in keys {
                while row_of(&dream, k) > target(k) {
                    match dream.simple_move(ids[k]) {
                        Some(next) => dream = next,
                        None => return Ok(None),
                    }
                }
            }
        }
        SlideOrder::GreedyFirst | SlideOrder::GreedyLast => loop {
            let pending: Vec<usize> = (0..ids.len()).filter(|&k| row_of(&dream, k) > target(k)).collect();
            if pending.is_empty() {
                break;
            }
            let mut movable = pending.iter().filter_map(|&k| dream.simple_move(ids[k]));
            let next = if order == SlideOrder::GreedyFirst {
                movable.next()
            } else {
                movable.next_back()
            };
            match next {
                Some(d) => dream = d,
                None => return Ok(None),
            }
        },
    }
    Ok(Some(dream))
}

/// A parent and its right child whose crossings can be brought to a state
/// where the child is no lower than the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPair {
    pub parent: CrossingId,
    pub child: CrossingId,
    /// Simple ladder moves, by crossing id, applied from the bottom dream.
    pub witness: Vec<CrossingId>,
}

impl BadPair {
    /// Applies the witness moves to the bottom dream of `w`.
    pub fn replay(&self, w: &Permutation) -> Option<PipeDream> {
        self.witness
            .iter()
            .try_fold(bottom_pipe_dream(w), |dream, &id| dream.simple_move(id))
    }
}

/// What counts as the child catching up with the parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    RowAtMost,
    SameRow,
}

impl Violation {
    fn holds(self, child_row: u32, parent_row: u32) -> bool {
        match self {
            Violation::RowAtMost => child_row <= parent_row,
            Violation::SameRow => child_row == parent_row,
        }
    }
}

/// The first bad pair found by a breadth-first search of the simple-move
/// closure of the bottom dream, with crossings tracked by id.
pub fn find_bad_pair(w: &Permutation) -> Option<BadPair> {
    find_bad_pair_with(w, Violation::RowAtMost)
}

pub fn find_bad_pair_with(w: &Permutation, violation: Violation) -> Option<BadPair> {
    search_bad_pairs(w, violation, true).into_iter().next()
}

/// Every covering pair that is bad, each with the first witness found, in
/// discovery order.
pub fn all_bad_pairs(w: &Permutation, violation: Violation) -> Vec<BadPair> {
    search_bad_pairs(w, violation, false)
}

fn search_bad_pairs(w: &Permutation, violation: Violation, first_only: bool) -> Vec<BadPair> {
    let pairs = covering_relation(w);
    let start = bottom_pipe_dream(w);
    if pairs.is_empty() {
        return Vec::new();
    }
    let index = |id: CrossingId| {
        start
            .crossings()
            .iter()
            .position(|c| c.id == id)
            .expect("covering ids exist")
    };
    let pairs: Vec<(CrossingId, CrossingId, usize, usize)> =
        pairs.into_iter().map(|(p, c)| (p, c, index(p), index(c))).collect();
    let key = |d: &PipeDream| -> Vec<Cell> { d.crossings().iter().map(|c| c.cell()).collect() };

    // state key -> (predecessor key, move that led here)
    let mut seen: HashMap<Vec<Cell>, Option<(Vec<Cell>, CrossingId)>> = HashMap::from([(key(&start), None)]);
    let mut queue = VecDeque::from([start]);
    let mut found: Vec<BadPair> = Vec::new();
    let path_to = |seen: &HashMap<Vec<Cell>, Option<(Vec<Cell>, CrossingId)>>, mut k: Vec<Cell>| {
        let mut moves = Vec::new();
        while let Some(Some((prev, id))) = seen.get(&k) {
            moves.push(*id);
            k = prev.clone();
        }
        moves.reverse();
        moves
    };
    while let Some(dream) = queue.pop_front() {
        let cr = dream.crossings();
        for &(parent, child, pi, ci) in &pairs {
            if found.iter().any(|b| b.parent == parent && b.child == child) {
                continue;
            }
            if violation.holds(cr[ci].row, cr[pi].row) {
                found.push(BadPair {
                    parent,
                    child,
                    witness: path_to(&seen, key(&dream)),
                });
                if first_only {
                    return found;
                }
            }
        }
        if found.len() == pairs.len() {
            break;
        }
        let here = key(&dream);
        for (id, _) in dream.available_moves(true) {
            let next = dream.simple_move(id).expect("listed move applies");
            let k = key(&next);
            if let Entry::Vacant(slot) = seen.entry(k) {
                slot.insert(Some((here.clone(), id)));
                queue.push_back(next);
            }
        }
    }
    found
}

/// Whether `w` avoids every forbidden pattern.
pub fn is_forest_by_pattern(w: &Permutation) -> bool {
    w.avoids_forbidden()
}

/// Whether the Schubert polynomial of `w` equals the forest polynomial of its
/// code.
pub fn is_forest_by_expansion(w: &Permutation) -> bool {
    schubert(w) == forest_polynomial(&IndexedForest::from_code(&w.lehmer_code()))
}

#[cfg(test)]
mod tests;
