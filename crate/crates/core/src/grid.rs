//! Edge slots of the n×n square grid, including the 4n boundary half-edges.
//!
//! Horizontal slot `(i, s)` with `0 <= s <= n` joins `(i, s-1)` and `(i, s)`;
//! slots `s = 0` and `s = n` are the west and east half-edges of row `i`.
//! Vertical slot `(s, j)` joins `(s-1, j)` and `(s, j)` in the same way.

use std::fmt;

use serde::{Deserialize, Serialize};

pub type Vertex = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    North,
    East,
    South,
    West,
}

impl Dir {
    pub fn clockwise(self) -> Dir {
        match self {
            Dir::North => Dir::East,
            Dir::East => Dir::South,
            Dir::South => Dir::West,
            Dir::West => Dir::North,
        }
    }
}

/// A grid edge in canonical form: internal edges list the smaller vertex first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Edge {
    Internal(Vertex, Vertex),
    Boundary(Vertex, Dir),
}

impl Edge {
    pub fn internal(a: Vertex, b: Vertex) -> Edge {
        if a <= b {
            Edge::Internal(a, b)
        } else {
            Edge::Internal(b, a)
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edge::Internal(a, b) => write!(f, "{a:?}-{b:?}"),
            Edge::Boundary(v, d) => write!(f, "{v:?}~{d:?}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    n: usize,
}

impl Grid {
    pub fn new(n: usize) -> Grid {
        assert!(n >= 1, "grid size must be positive");
        Grid { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_slots(&self) -> usize {
        2 * self.n * (self.n + 1)
    }

    pub fn num_vertices(&self) -> usize {
        self.n * self.n
    }

    #[inline]
    pub fn h(&self, i: usize, s: usize) -> usize {
        i * (self.n + 1) + s
    }

    #[inline]
    pub fn v(&self, s: usize, j: usize) -> usize {
        self.n * (self.n + 1) + s * self.n + j
    }

    #[inline]
    pub fn is_horizontal(&self, slot: usize) -> bool {
        slot < self.n * (self.n + 1)
    }

    /// `(row, slot)` for horizontal slots, `(slot, col)` for vertical ones.
    #[inline]
    pub fn coords(&self, slot: usize) -> (usize, usize) {
        let n = self.n;
        if self.is_horizontal(slot) {
            (slot / (n + 1), slot % (n + 1))
        } else {
            let k = slot - n * (n + 1);
            (k / n, k % n)
        }
    }

    /// Incident slots of a vertex in the order west, east, north, south.
    #[inline]
    pub fn incident(&self, (i, j): Vertex) -> [usize; 4] {
        [self.h(i, j), self.h(i, j + 1), self.v(i, j), self.v(i + 1, j)]
    }

    pub fn vertex_index(&self, (i, j): Vertex) -> usize {
        i * self.n + j
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        let n = self.n;
        (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
    }

    /// Grid endpoints of a slot; boundary slots have exactly one.
    pub fn endpoints(&self, slot: usize) -> (Option<Vertex>, Option<Vertex>) {
        let n = self.n;
        let (a, b) = self.coords(slot);
        if self.is_horizontal(slot) {
            let (i, s) = (a, b);
            let left = (s > 0).then(|| (i, s - 1));
            let right = (s < n).then_some((i, s));
            (left, right)
        } else {
            let (s, j) = (a, b);
            let top = (s > 0).then(|| (s - 1, j));
            let bottom = (s < n).then_some((s, j));
            (top, bottom)
        }
    }

    pub fn is_boundary(&self, slot: usize) -> bool {
        let (a, b) = self.endpoints(slot);
        a.is_none() || b.is_none()
    }

    /// The vertex across `slot` from `v`, if `slot` is internal.
    pub fn other_end(&self, slot: usize, v: Vertex) -> Option<Vertex> {
        match self.endpoints(slot) {
            (Some(a), Some(b)) => Some(if a == v { b } else { a }),
            _ => None,
        }
    }

    pub fn edge(&self, slot: usize) -> Edge {
        let n = self.n;
        let (a, b) = self.coords(slot);
        if self.is_horizontal(slot) {
            let (i, s) = (a, b);
            match s {
                0 => Edge::Boundary((i, 0), Dir::West),
                s if s == n => Edge::Boundary((i, n - 1), Dir::East),
                s => Edge::internal((i, s - 1), (i, s)),
            }
        } else {
            let (s, j) = (a, b);
            match s {
                0 => Edge::Boundary((0, j), Dir::North),
                s if s == n => Edge::Boundary((n - 1, j), Dir::South),
                s => Edge::internal((s - 1, j), (s, j)),
            }
        }
    }

    pub fn slot_of(&self, edge: Edge) -> Option<usize> {
        let n = self.n;
        let inside = |(i, j): Vertex| i < n && j < n;
        match edge {
            Edge::Boundary(v, d) => {
                if !inside(v) {
                    return None;
                }
                let (i, j) = v;
                match d {
                    Dir::West if j == 0 => Some(self.h(i, 0)),
                    Dir::East if j == n - 1 => Some(self.h(i, n)),
                    Dir::North if i == 0 => Some(self.v(0, j)),
                    Dir::South if i == n - 1 => Some(self.v(n, j)),
                    _ => None,
                }
            }
            Edge::Internal(a, b) => {
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                if !inside(a) || !inside(b) {
                    return None;
                }
                if a.0 == b.0 && a.1 + 1 == b.1 {
                    Some(self.h(a.0, b.1))
                } else if a.1 == b.1 && a.0 + 1 == b.0 {
                    Some(self.v(b.0, a.1))
                } else {
                    None
                }
            }
        }
    }

    /// Image of a slot under the clockwise quarter turn `(i, j) -> (j, n-1-i)`.
    #[inline]
    pub fn rotate_slot(&self, slot: usize) -> usize {
        let n = self.n;
        let (a, b) = self.coords(slot);
        if self.is_horizontal(slot) {
            self.v(b, n - 1 - a)
        } else {
            self.h(b, n - a)
        }
    }

    pub fn rotate_vertex(&self, (i, j): Vertex) -> Vertex {
        (j, self.n - 1 - i)
    }

    /// Whether a boundary slot carries an "in" half-edge under the
    /// convention that the top half-edge on the west border is in.
    /// `None` for internal slots.
    pub fn boundary_in(&self, slot: usize) -> Option<bool> {
        let n = self.n;
        let (a, b) = self.coords(slot);
        if self.is_horizontal(slot) {
            let (i, s) = (a, b);
            if s == 0 {
                Some(i % 2 == 0)
            } else if s == n {
                Some((i + n - 1) % 2 == 0)
            } else {
                None
            }
        } else {
            let (s, j) = (a, b);
            if s == 0 {
                Some(j % 2 == 1)
            } else if s == n {
                Some((n - 1 + j) % 2 == 1)
            } else {
                None
            }
        }
    }

    /// All 4n boundary slots counterclockwise, starting at the west
    /// half-edge of `(0, 0)`: down the west side, along the bottom, up the
    /// east side, back along the top.
    pub fn boundary_ccw(&self) -> Vec<usize> {
        let n = self.n;
        let mut out = Vec::with_capacity(4 * n);
        out.extend((0..n).map(|i| self.h(i, 0)));
        out.extend((0..n).map(|j| self.v(n, j)));
        out.extend((0..n).rev().map(|i| self.h(i, n)));
        out.extend((0..n).rev().map(|j| self.v(0, j)));
        out
    }

    /// Boundary slots carrying path endpoints, labelled 1..=2n in order.
    pub fn endpoints_ccw(&self) -> Vec<usize> {
        self.boundary_ccw()
            .into_iter()
            .filter(|&s| self.boundary_in(s) == Some(true))
            .collect()
    }

    /// Even n only: the four slots of the central unit square as
    /// `(horizontal, vertical)` pairs.
    pub fn center_square(&self) -> Option<([usize; 2], [usize; 2])> {
        let n = self.n;
        if n % 2 == 1 || n < 2 {
            return None;
        }
        let c = n / 2 - 1;
        Some((
            [self.h(c, c + 1), self.h(c + 1, c + 1)],
            [self.v(c + 1, c), self.v(c + 1, c + 1)],
        ))
    }

    /// Doubled coordinates relative to the grid center: `(2j - (n-1), (n-1) - 2i)`.
    pub fn centered(&self, (i, j): Vertex) -> (i64, i64) {
        let m = self.n as i64 - 1;
        (2 * j as i64 - m, m - 2 * i as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_edge_round_trip() {
        let g = Grid::new(4);
        for s in 0..g.num_slots() {
            assert_eq!(g.slot_of(g.edge(s)), Some(s));
        }
        assert_eq!(g.slot_of(Edge::internal((0, 0), (1, 1))), None);
        assert_eq!(g.slot_of(Edge::Boundary((1, 1), Dir::West)), None);
    }

    #[test]
    fn rotation_has_order_four() {
        for n in 1..6 {
            let g = Grid::new(n);
            for s in 0..g.num_slots() {
                let r = (0..4).fold(s, |t, _| g.rotate_slot(t));
                assert_eq!(r, s);
                // Rotating the slot moves its endpoints with the vertex map.
                let (a, b) = g.endpoints(s);
                let (ra, rb) = g.endpoints(g.rotate_slot(s));
                let mut before: Vec<_> = [a, b].into_iter().flatten().map(|v| g.rotate_vertex(v)).collect();
                let mut after: Vec<_> = [ra, rb].into_iter().flatten().collect();
                before.sort();
                after.sort();
                assert_eq!(before, after);
            }
        }
    }

    #[test]
    fn boundary_alternates() {
        for n in 1..8 {
            let g = Grid::new(n);
            let ring = g.boundary_ccw();
            assert_eq!(ring.len(), 4 * n);
            for (k, &s) in ring.iter().enumerate() {
                assert_eq!(g.boundary_in(s), Some(k % 2 == 0), "n={n} k={k}");
            }
            assert_eq!(g.endpoints_ccw().len(), 2 * n);
        }
    }
}
