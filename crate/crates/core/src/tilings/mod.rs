//! Perfect matchings of honeycomb regions and of residual FPL graphs, their
//! rotation quotients, and the determinant evaluation of the quotient counts.
//!
//! Regions carry an exact integer embedding so that rotations act on
//! coordinates rather than through automorphism search. Triangular-lattice
//! points are written in the basis `e1 = (1, 0)`, `e2 = (1/2, sqrt(3)/2)`,
//! scaled by 3 so that triangle centroids are integral; square-grid points
//! use doubled coordinates about the grid center.

mod fixed;
mod honeycomb;
mod lgv;
mod matching;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use petgraph::graph::UnGraph;
use thiserror::Error;

pub use fixed::{fixed_edge_closure, fpl_to_quotient_matching, rarest_full_pattern, FixedEdgeClosure, Family};
pub use honeycomb::{
    ciucu_factorize, count_cssc, count_qcsscpp, cssc_formula, hexagon_region, honeycomb_quotient, CiucuSplit, Method,
};
pub use lgv::{closed_form_p, lgv_count, lgv_weight, path_weight_matrix, LatticePathSystem};
pub use matching::{count_invariant_matchings, count_matchings};

pub type Point = (i64, i64);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TilingError {
    #[error("size {0} is not valid for this family")]
    InvalidSize(usize),
    #[error("holed hexagons need an odd side length, got {0}")]
    HoledRequiresOdd(usize),
    #[error("region is not invariant under the rotation of order {0}")]
    NotSymmetric(usize),
    #[error("rotation of order {0} is not a symmetry of the lattice")]
    UnsupportedOrder(usize),
    #[error("region has no geometric embedding")]
    NotEmbedded,
    #[error("an edge joins a vertex to its image under an involutive rotation")]
    InvolutiveOrbit,
    #[error("region is not symmetric under the reflection of its quotient wedge")]
    NotReflective,
    #[error("no fixed-edge closure for size {0} and this pattern")]
    UnsupportedPattern(usize),
    #[error("configuration does not have the pattern or symmetry of the family")]
    PatternMismatch,
    #[error("residual edges do not form a perfect matching of the quotient")]
    NotAMatching,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lattice {
    /// Centroids of unit triangles, times 3, in the `(e1, e2)` basis.
    Triangular,
    /// Doubled square-grid coordinates about the center.
    Square,
}

impl Lattice {
    /// Order of the lattice rotation group about the origin.
    pub fn max_order(self) -> usize {
        match self {
            Lattice::Triangular => 6,
            Lattice::Square => 4,
        }
    }

    /// One elementary rotation: 60 degrees counterclockwise on the
    /// triangular lattice, 90 degrees clockwise on the square grid.
    pub fn rotate(self, (x, y): Point) -> Point {
        match self {
            Lattice::Triangular => (-y, x + y),
            Lattice::Square => (y, -x),
        }
    }

    /// The rotation of the given order, as a power of the elementary one.
    fn rotation(self, order: usize) -> Result<impl Fn(Point) -> Point, TilingError> {
        let max = self.max_order();
        if order == 0 || max % order != 0 {
            return Err(TilingError::UnsupportedOrder(order));
        }
        let steps = max / order;
        Ok(move |mut p: Point| {
            for _ in 0..steps {
                p = self.rotate(p);
            }
            p
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionEdge {
    pub u: usize,
    pub v: usize,
    pub weight: BigRational,
    /// Embedded endpoints. In a quotient the first is the representative of
    /// `u` and the second the actual neighbour, which may lie outside the
    /// fundamental wedge.
    pub segment: Option<(Point, Point)>,
}

/// A finite graph with exact positive edge weights and an optional integer
/// embedding. Quotients may carry parallel edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchRegion {
    lattice: Option<Lattice>,
    points: Vec<Point>,
    edges: Vec<RegionEdge>,
}

impl MatchRegion {
    /// An unembedded graph with unit weights.
    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> MatchRegion {
        let edges = edges
            .iter()
            .map(|&(u, v)| {
                assert!(u < num_vertices && v < num_vertices && u != v, "edge ({u}, {v}) out of range");
                RegionEdge { u, v, weight: BigRational::one(), segment: None }
            })
            .collect();
        MatchRegion { lattice: None, points: vec![(0, 0); num_vertices], edges }
    }

    /// An embedded graph with unit weights; vertices are the given points
    /// and edges join the listed index pairs.
    pub fn embedded(lattice: Lattice, points: Vec<Point>, edges: &[(usize, usize)]) -> MatchRegion {
        let edges = edges
            .iter()
            .map(|&(u, v)| RegionEdge {
                u,
                v,
                weight: BigRational::one(),
                segment: Some((points[u], points[v])),
            })
            .collect();
        MatchRegion { lattice: Some(lattice), points, edges }
    }

    pub fn lattice(&self) -> Option<Lattice> {
        self.lattice
    }

    pub fn num_vertices(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn edges(&self) -> &[RegionEdge] {
        &self.edges
    }

    pub fn set_weight(&mut self, edge: usize, weight: BigRational) {
        self.edges[edge].weight = weight;
    }

    /// Unweighted view with parallel edges collapsed into multiplicities.
    pub fn to_graph(&self) -> UnGraph<(), usize> {
        let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for e in &self.edges {
            *mult.entry((e.u.min(e.v), e.u.max(e.v))).or_insert(0) += 1;
        }
        let mut g = UnGraph::with_capacity(self.num_vertices(), mult.len());
        let nodes: Vec<_> = (0..self.num_vertices()).map(|_| g.add_node(())).collect();
        for ((u, v), m) in mult {
            g.add_edge(nodes[u], nodes[v], m);
        }
        g
    }

    /// Graph isomorphism ignoring weights and embeddings; parallel edges must
    /// correspond with their multiplicities.
    pub fn is_isomorphic_to(&self, other: &MatchRegion) -> bool {
        petgraph::algo::is_isomorphic_matching(&self.to_graph(), &other.to_graph(), |_, _| true, |a, b| a == b)
    }

    /// Repeatedly matches a vertex of degree one to its only neighbour and
    /// deletes both. Returns the reduced region and the product of the
    /// forced edge weights, so that `M(self) = factor * M(reduced)`; the
    /// factor is zero if an isolated vertex appears.
    pub fn prune_forced(&self) -> (MatchRegion, BigRational) {
        let n = self.num_vertices();
        let mut alive = vec![true; n];
        let mut edge_alive = vec![true; self.edges.len()];
        let mut factor = BigRational::one();
        loop {
            let mut deg = vec![0usize; n];
            for (k, e) in self.edges.iter().enumerate() {
                if edge_alive[k] {
                    deg[e.u] += 1;
                    deg[e.v] += 1;
                }
            }
            if (0..n).any(|v| alive[v] && deg[v] == 0) {
                factor = BigRational::from_integer(0.into());
                break;
            }
            let Some(v) = (0..n).find(|&v| alive[v] && deg[v] == 1) else {
                break;
            };
            let k = (0..self.edges.len())
                .find(|&k| edge_alive[k] && (self.edges[k].u == v || self.edges[k].v == v))
                .expect("degree one");
            let w = if self.edges[k].u == v { self.edges[k].v } else { self.edges[k].u };
            factor *= &self.edges[k].weight;
            alive[v] = false;
            alive[w] = false;
            for (j, e) in self.edges.iter().enumerate() {
                if [e.u, e.v].iter().any(|&x| x == v || x == w) {
                    edge_alive[j] = false;
                }
            }
        }
        let mut renumber = vec![usize::MAX; n];
        let mut points = Vec::new();
        for v in (0..n).filter(|&v| alive[v]) {
            renumber[v] = points.len();
            points.push(self.points[v]);
        }
        let edges = self
            .edges
            .iter()
            .zip(&edge_alive)
            .filter(|(_, &a)| a)
            .map(|(e, _)| RegionEdge { u: renumber[e.u], v: renumber[e.v], ..e.clone() })
            .collect();
        (MatchRegion { lattice: self.lattice, points, edges }, factor)
    }

    /// Orbit graph under the rotation of the given order about the origin.
    ///
    /// Each orbit is represented by its element in the half-open sector
    /// `[0, 2pi/order)`. Edges joining a vertex to another member of its own
    /// orbit cannot occur in an invariant matching and are dropped, unless
    /// the rotation relating the ends is an involution, which is an error.
    pub fn quotient_by_rotation(&self, order: usize) -> Result<MatchRegion, TilingError> {
        let lattice = self.lattice.ok_or(TilingError::NotEmbedded)?;
        let rot = lattice.rotation(order)?;
        let index: BTreeMap<Point, usize> = self.points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut edge_set: BTreeMap<(Point, Point), usize> = BTreeMap::new();
        for e in &self.edges {
            let (a, b) = (self.points[e.u], self.points[e.v]);
            *edge_set.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
        for (&(a, b), &m) in &edge_set {
            let (ra, rb) = (rot(a), rot(b));
            if !index.contains_key(&ra) || edge_set.get(&(ra.min(rb), ra.max(rb))) != Some(&m) {
                return Err(TilingError::NotSymmetric(order));
            }
        }
        if self.points.iter().any(|&p| !index.contains_key(&rot(p))) {
            return Err(TilingError::NotSymmetric(order));
        }
        let orbit = |p: Point| -> Vec<Point> {
            let mut out = vec![p];
            let mut q = rot(p);
            while q != p {
                out.push(q);
                q = rot(q);
            }
            out
        };
        let in_sector = |p: Point| sector_contains(lattice, order, p);
        let mut rep_of: BTreeMap<Point, (usize, usize)> = BTreeMap::new();
        let mut reps: Vec<Point> = Vec::new();
        for &p in &self.points {
            if rep_of.contains_key(&p) {
                continue;
            }
            let members = orbit(p);
            if members.len() != order {
                return Err(TilingError::NotSymmetric(order));
            }
            let rep = *members
                .iter()
                .find(|&&q| in_sector(q))
                .expect("every orbit meets the sector exactly once");
            // Power of the rotation taking each member to the representative.
            let k = members.iter().position(|&q| q == rep).expect("member");
            for (t, &q) in members.iter().enumerate() {
                rep_of.insert(q, (reps.len(), (k + order - t) % order));
            }
            reps.push(rep);
        }
        let mut order_ix: Vec<usize> = (0..reps.len()).collect();
        order_ix.sort_by_key(|&i| reps[i]);
        let mut new_index = vec![0; reps.len()];
        for (new, &old) in order_ix.iter().enumerate() {
            new_index[old] = new;
        }
        let points: Vec<Point> = order_ix.iter().map(|&i| reps[i]).collect();
        let mut seen_orbits: BTreeMap<(Point, Point), ()> = BTreeMap::new();
        let mut edges = Vec::new();
        for e in &self.edges {
            let (a, b) = (self.points[e.u], self.points[e.v]);
            let (oa, ka) = rep_of[&a];
            let (ob, _) = rep_of[&b];
            // Move the edge so that its `a` end sits on the representative.
            let mut seg = (a, b);
            for _ in 0..ka {
                seg = (rot(seg.0), rot(seg.1));
            }
            let canon = orbit_key(&rot, order, seg);
            if seen_orbits.insert(canon, ()).is_some() {
                continue;
            }
            if oa == ob {
                let mut q = a;
                let mut steps = 0;
                while q != b {
                    q = rot(q);
                    steps += 1;
                }
                if 2 * steps == order {
                    return Err(TilingError::InvolutiveOrbit);
                }
                continue;
            }
            edges.push(RegionEdge {
                u: new_index[oa],
                v: new_index[ob],
                weight: e.weight.clone(),
                segment: Some(seg),
            });
        }
        Ok(MatchRegion { lattice: Some(lattice), points, edges })
    }
}

/// The lexicographically least rotated copy of an undirected segment; equal
/// for all members of an edge orbit.
fn orbit_key(rot: &impl Fn(Point) -> Point, order: usize, (a, b): (Point, Point)) -> (Point, Point) {
    let mut s = (a.min(b), a.max(b));
    let mut best = s;
    for _ in 0..order {
        s = (rot(s.0), rot(s.1));
        best = best.min((s.0.min(s.1), s.0.max(s.1)));
    }
    best
}

/// Cross product sign is preserved by the (orientation-preserving) maps
/// from either coordinate system to the Euclidean plane.
fn cross(a: Point, b: Point) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn sector_contains(lattice: Lattice, order: usize, p: Point) -> bool {
    match order {
        1 => true,
        2 => p.1 > 0 || (p.1 == 0 && p.0 > 0),
        _ => {
            let d0 = match lattice {
                Lattice::Triangular => (1, 0),
                Lattice::Square => (0, 1),
            };
            let rot = lattice.rotation(order).expect("order checked by caller");
            let d1 = rot(d0);
            if cross(d0, d1) > 0 {
                cross(d0, p) >= 0 && cross(p, d1) > 0
            } else {
                cross(d0, p) <= 0 && cross(p, d1) < 0
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations_have_the_lattice_order() {
        for lattice in [Lattice::Triangular, Lattice::Square] {
            let p = (4, 1);
            let mut q = p;
            for k in 1..=lattice.max_order() {
                q = lattice.rotate(q);
                assert_eq!(q == p, k == lattice.max_order());
            }
        }
        assert!(Lattice::Square.rotation(3).is_err());
    }

    #[test]
    fn sectors_partition_orbits() {
        for (lattice, order) in [(Lattice::Triangular, 6), (Lattice::Triangular, 3), (Lattice::Triangular, 2), (Lattice::Square, 4), (Lattice::Square, 2)] {
            let rot = lattice.rotation(order).unwrap();
            for x in -7..=7 {
                for y in -7..=7 {
                    if (x, y) == (0, 0) {
                        continue;
                    }
                    let mut p = (x, y);
                    let mut hits = 0;
                    for _ in 0..order {
                        hits += sector_contains(lattice, order, p) as usize;
                        p = rot(p);
                    }
                    assert_eq!(hits, 1, "{lattice:?} order {order} at {x},{y}");
                }
            }
        }
    }

    #[test]
    fn isomorphism_respects_multiplicity() {
        let a = MatchRegion::from_edges(2, &[(0, 1), (0, 1)]);
        let b = MatchRegion::from_edges(2, &[(0, 1)]);
        assert!(!a.is_isomorphic_to(&b));
        let c = MatchRegion::from_edges(3, &[(0, 1), (1, 2)]);
        let d = MatchRegion::from_edges(3, &[(2, 0), (1, 0)]);
        assert!(c.is_isomorphic_to(&d));
    }

    #[test]
    fn pruning_removes_forced_pairs() {
        let path = MatchRegion::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let (rest, factor) = path.prune_forced();
        assert_eq!(rest.num_vertices(), 0);
        assert_eq!(factor, BigRational::one());
        let tail = MatchRegion::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 2)]);
        let (rest, _) = tail.prune_forced();
        assert!(rest.is_isomorphic_to(&MatchRegion::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])));
        let star = MatchRegion::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(star.prune_forced().1, BigRational::from_integer(0.into()));
    }
}
