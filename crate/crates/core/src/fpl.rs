//! Fully-packed loop configurations and their correspondence with ASMs.
//!
//! The correspondence goes through the partial sums of the matrix. A
//! horizontal slot carries the state `h` = sum of the row entries to its
//! left, a vertical slot the state `v` = sum of the column entries above it.
//! A horizontal slot is occupied iff `h` differs from the parity of its left
//! endpoint; a vertical slot iff `v` equals the parity of its top endpoint.
//! Parities of boundary endpoints are taken on the virtual vertex outside the
//! grid. The opposite choice produces the complementary edge set, which puts
//! the west half-edge of row 0 "out".

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asm::Asm;
use crate::grid::{Edge, Grid, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FplError {
    #[error("edge {0:?} is not an edge of the grid")]
    NotAGridEdge(Edge),
    #[error("vertex {vertex:?} has degree {degree}, expected 2")]
    Degree { vertex: Vertex, degree: usize },
    #[error("boundary half-edge {0:?} breaks the alternating boundary condition")]
    Boundary(Edge),
}

/// A fully-packed loop configuration on the n×n grid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fpl {
    grid: Grid,
    occupied: Vec<bool>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryFlags {
    pub half_turn: bool,
    pub quarter_turn: bool,
    pub quasi_quarter_turn: bool,
}

/// Open paths as pairs of endpoint labels (1-based, counterclockwise from the
/// top-left endpoint) plus the number of closed loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStructure {
    pub pairs: Vec<(usize, usize)>,
    pub loops: usize,
}

#[inline]
fn parity(i: usize, j: usize) -> bool {
    (i + j) % 2 == 1
}

impl Fpl {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Fpl, FplError> {
        let grid = Grid::new(n);
        let mut occupied = vec![false; grid.num_slots()];
        for e in edges {
            let slot = grid.slot_of(e).ok_or(FplError::NotAGridEdge(e))?;
            occupied[slot] = true;
        }
        Fpl::from_slots(grid, occupied)
    }

    pub(crate) fn from_slots(grid: Grid, occupied: Vec<bool>) -> Result<Fpl, FplError> {
        for slot in 0..grid.num_slots() {
            if let Some(expected) = grid.boundary_in(slot) {
                if occupied[slot] != expected {
                    return Err(FplError::Boundary(grid.edge(slot)));
                }
            }
        }
        for v in grid.vertices() {
            let degree = grid.incident(v).iter().filter(|&&s| occupied[s]).count();
            if degree != 2 {
                return Err(FplError::Degree { vertex: v, degree });
            }
        }
        Ok(Fpl { grid, occupied })
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn contains_slot(&self, slot: usize) -> bool {
        self.occupied[slot]
    }

    pub fn contains(&self, edge: Edge) -> bool {
        self.grid.slot_of(edge).is_some_and(|s| self.occupied[s])
    }

    pub fn slots(&self) -> impl Iterator<Item = usize> + '_ {
        self.occupied.iter().enumerate().filter(|(_, &o)| o).map(|(s, _)| s)
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        self.slots().map(|s| self.grid.edge(s)).collect()
    }

    pub fn from_asm(a: &Asm) -> Fpl {
        asm_to_fpl(a)
    }

    pub fn to_asm(&self) -> Asm {
        fpl_to_asm(self)
    }

    /// Slots where `self` and `other` differ.
    pub fn symmetric_difference(&self, other: &Fpl) -> Vec<usize> {
        assert_eq!(self.n(), other.n());
        (0..self.occupied.len())
            .filter(|&s| self.occupied[s] != other.occupied[s])
            .collect()
    }

    pub fn rotate_quarter(&self) -> Fpl {
        rotate_quarter(self)
    }

    pub fn rotate_half(&self) -> Fpl {
        rotate_quarter(&rotate_quarter(self))
    }

    pub fn classify(&self) -> SymmetryFlags {
        classify_symmetry(self)
    }

    /// Follows every open path from its first endpoint and counts the
    /// remaining closed loops.
    pub fn paths(&self) -> PathStructure {
        let g = self.grid;
        let ends = g.endpoints_ccw();
        let mut label = vec![0usize; g.num_slots()];
        for (k, &s) in ends.iter().enumerate() {
            label[s] = k + 1;
        }
        let mut visited = vec![false; g.num_slots()];
        let mut pairs = Vec::with_capacity(g.n());
        for &start in &ends {
            if visited[start] {
                continue;
            }
            let end = self.walk(start, &mut visited);
            let (a, b) = (label[start], label[end]);
            pairs.push((a.min(b), a.max(b)));
        }
        let mut loops = 0;
        for s in 0..g.num_slots() {
            if self.occupied[s] && !visited[s] {
                loops += 1;
                self.walk_loop(s, &mut visited);
            }
        }
        pairs.sort_unstable();
        PathStructure { pairs, loops }
    }

    fn next_slot(&self, v: Vertex, from: usize) -> usize {
        let mut it = self.grid.incident(v).into_iter().filter(|&t| t != from && self.occupied[t]);
        it.next().expect("every vertex has degree 2")
    }

    /// Walks from a boundary slot to the boundary slot at the other end.
    fn walk(&self, start: usize, visited: &mut [bool]) -> usize {
        let g = self.grid;
        visited[start] = true;
        let (a, b) = g.endpoints(start);
        let mut v = a.or(b).expect("boundary slot has one grid endpoint");
        let mut slot = start;
        loop {
            slot = self.next_slot(v, slot);
            visited[slot] = true;
            match g.other_end(slot, v) {
                Some(w) => v = w,
                None => return slot,
            }
        }
    }

    fn walk_loop(&self, start: usize, visited: &mut [bool]) {
        let g = self.grid;
        visited[start] = true;
        let (a, _) = g.endpoints(start);
        let first = a.expect("loop edges are internal");
        let mut v = g.other_end(start, first).expect("internal");
        let mut slot = start;
        while v != first {
            slot = self.next_slot(v, slot);
            visited[slot] = true;
            v = g.other_end(slot, v).expect("closed loops stay inside the grid");
        }
    }
}

impl std::fmt::Debug for Fpl {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Fpl({:?})", self.to_asm())
    }
}

/// Maps an ASM to its FPL through the partial-sum states of every slot.
pub fn asm_to_fpl(a: &Asm) -> Fpl {
    let n = a.n();
    let g = Grid::new(n);
    let mut occupied = vec![false; g.num_slots()];
    for i in 0..n {
        let mut h = 0i8;
        for s in 0..=n {
            if s > 0 {
                h += a.get(i, s - 1);
            }
            // Left endpoint is (i, s-1).
            let p = parity(i + 1, s);
            occupied[g.h(i, s)] = (h == 1) != p;
        }
    }
    for j in 0..n {
        let mut v = 0i8;
        for s in 0..=n {
            if s > 0 {
                v += a.get(s - 1, j);
            }
            // Top endpoint is (s-1, j).
            let p = parity(s + 1, j);
            occupied[g.v(s, j)] = (v == 1) == p;
        }
    }
    Fpl::from_slots(g, occupied).expect("partial-sum states of an ASM give a valid FPL")
}

/// Inverse of [`asm_to_fpl`]: reads the row states off the horizontal slots.
pub fn fpl_to_asm(f: &Fpl) -> Asm {
    let n = f.n();
    let g = f.grid;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        let state = |s: usize| -> i8 { (f.occupied[g.h(i, s)] != parity(i + 1, s)) as i8 };
        for j in 0..n {
            entries.push(state(j + 1) - state(j));
        }
    }
    Asm::from_entries(n, entries).expect("a valid FPL encodes a valid ASM")
}

/// Clockwise quarter turn; for odd n the rotated edge set is complemented so
/// that the boundary convention still holds.
pub fn rotate_quarter(f: &Fpl) -> Fpl {
    let g = f.grid;
    let complement = g.n() % 2 == 1;
    let mut occupied = vec![false; g.num_slots()];
    for (s, &o) in f.occupied.iter().enumerate() {
        occupied[g.rotate_slot(s)] = o != complement;
    }
    Fpl { grid: g, occupied }
}

pub fn classify_symmetry(f: &Fpl) -> SymmetryFlags {
    let n = f.n();
    let quarter = rotate_quarter(f);
    let half = rotate_quarter(&quarter);
    let half_turn = half == *f;
    let quarter_turn = n % 2 == 0 && quarter == *f;
    let quasi_quarter_turn = n % 4 == 2 && half_turn && {
        let (horizontal, vertical) = f.grid.center_square().expect("even size");
        let mut center: Vec<usize> = horizontal.iter().chain(&vertical).copied().collect();
        center.sort_unstable();
        f.symmetric_difference(&quarter) == center && horizontal.iter().all(|&s| f.occupied[s])
    };
    SymmetryFlags { half_turn, quarter_turn, quasi_quarter_turn }
}
