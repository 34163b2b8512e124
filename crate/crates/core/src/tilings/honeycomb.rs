//! Honeycomb regions dual to triangulated hexagons, their 60-degree
//! quotients, and the counts of symmetric rhombus tilings.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use super::lgv::{closed_form_p, lgv_count};
use super::matching::count_matchings;
use super::{Lattice, MatchRegion, Point, TilingError};
use crate::enumerate::count_formula_a;

/// Counting method for the quasi-symmetric tilings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Perfect matchings of the orbit graph.
    Brute,
    /// `2^n` times the weighted matchings of the cut graph.
    Ciucu,
    /// Product of row factors times the path-weight determinant.
    Lgv,
    /// Closed-form product.
    Formula,
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Method, String> {
        match s {
            "brute" => Ok(Method::Brute),
            "ciucu" => Ok(Method::Ciucu),
            "lgv" => Ok(Method::Lgv),
            "formula" => Ok(Method::Formula),
            _ => Err(format!("unknown method {s:?} (expected brute, ciucu, lgv or formula)")),
        }
    }
}

fn up(a: i64, b: i64) -> Point {
    (3 * a + 1, 3 * b + 1)
}

fn down(a: i64, b: i64) -> Point {
    (3 * a + 2, 3 * b + 2)
}

/// Honeycomb graph dual to the unit-triangle tiling of the regular hexagon
/// of side `k` centered at a lattice vertex. With `holed`, the six
/// triangles around the center are removed.
pub fn hexagon_region(k: usize, holed: bool) -> Result<MatchRegion, TilingError> {
    if k == 0 || (holed && k % 2 == 0) {
        return Err(TilingError::HoledRequiresOdd(k));
    }
    let k = k as i64;
    let norm = |(a, b): (i64, i64)| a.abs().max(b.abs()).max((a + b).abs());
    let inside = |corners: [(i64, i64); 3]| {
        corners.iter().all(|&c| norm(c) <= k) && !(holed && corners.contains(&(0, 0)))
    };
    let mut points = Vec::new();
    for a in -k - 1..=k {
        for b in -k - 1..=k {
            if inside([(a, b), (a + 1, b), (a, b + 1)]) {
                points.push(up(a, b));
            }
            if inside([(a + 1, b), (a, b + 1), (a + 1, b + 1)]) {
                points.push(down(a, b));
            }
        }
    }
    points.sort_unstable();
    let index: BTreeMap<Point, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut edges = Vec::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        if (x - 1) % 3 != 0 {
            continue;
        }
        // Up triangle: neighbours across its three sides.
        for d in [(1, 1), (-2, 1), (1, -2)] {
            if let Some(&j) = index.get(&(x + d.0, y + d.1)) {
                edges.push((i, j));
            }
        }
    }
    Ok(MatchRegion::embedded(Lattice::Triangular, points, &edges))
}

/// The 60-degree orbit graph `G_k` of `R_k` (even k) or `R'_k` (odd k).
pub fn honeycomb_quotient(k: usize) -> Result<MatchRegion, TilingError> {
    hexagon_region(k, k % 2 == 1)?.quotient_by_rotation(6)
}

/// Rhombus tilings of the hexagon of side `size` invariant under the
/// 60-degree rotation; `size` must be even.
pub fn count_cssc(size: usize) -> Result<BigUint, TilingError> {
    if size == 0 || size % 2 == 1 {
        return Err(TilingError::InvalidSize(size));
    }
    Ok(unit_count(&honeycomb_quotient(size)?))
}

/// Rhombus tilings of the holed hexagon of odd side `size` invariant under
/// the 60-degree rotation.
pub fn count_qcsscpp(size: usize, method: Method) -> Result<BigUint, TilingError> {
    if size < 3 || size % 2 == 0 {
        return Err(TilingError::InvalidSize(size));
    }
    let n = (size - 1) / 2;
    match method {
        Method::Brute => Ok(unit_count(&honeycomb_quotient(size)?)),
        Method::Ciucu => {
            let split = ciucu_factorize(&honeycomb_quotient(size)?)?;
            Ok(integral(count_matchings(&split.g_prime) * BigRational::from_integer(split.factor.into())))
        }
        Method::Lgv => Ok(lgv_count(n)),
        Method::Formula => Ok(closed_form_p(size)),
    }
}

/// `A(n)^2`, the known count for the even case.
pub fn cssc_formula(size: usize) -> Result<BigUint, TilingError> {
    if size == 0 || size % 2 == 1 {
        return Err(TilingError::InvalidSize(size));
    }
    let a = count_formula_a(size / 2);
    Ok(&a * &a)
}

fn integral(x: BigRational) -> BigUint {
    assert!(x.is_integer(), "unit-weight matching count is an integer");
    x.to_integer().to_biguint().expect("matching counts are nonnegative")
}

/// Result of cutting a reflective graph along its axis.
#[derive(Clone, Debug)]
pub struct CiucuSplit {
    pub g_prime: MatchRegion,
    pub axis_vertices: usize,
    pub factor: BigUint,
}

/// The reflection of the quotient wedge, across the bisector of `e1`, `e2`.
fn sigma((x, y): Point) -> Point {
    (y, x)
}

/// Applies the rotation of the given order until the segment's second point
/// is `target`, returning the first point as seen from there.
fn seen_from(rot: &impl Fn(Point) -> Point, order: usize, (p, q): (Point, Point), target: Point) -> Point {
    let (mut p, mut q) = (p, q);
    for _ in 0..order {
        if q == target {
            return p;
        }
        p = rot(p);
        q = rot(q);
    }
    unreachable!("segment end is not in the orbit of its representative")
}

/// Cuts a 60-degree honeycomb quotient along its reflection axis: edges from
/// axis vertices to neighbours below the axis are removed and edges lying on
/// the axis are weighted 1/2. The factor is `2^(a/2)` for `a` axis vertices.
pub fn ciucu_factorize(g: &MatchRegion) -> Result<CiucuSplit, TilingError> {
    if g.lattice() != Some(Lattice::Triangular) {
        return Err(TilingError::NotReflective);
    }
    let rot = Lattice::Triangular.rotation(6)?;
    let points = g.points();
    let index: BTreeMap<Point, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut edge_counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in g.edges() {
        *edge_counts.entry((e.u.min(e.v), e.u.max(e.v))).or_insert(0) += 1;
    }
    let mirror = |v: usize| index.get(&sigma(points[v])).copied().ok_or(TilingError::NotReflective);
    for (&(u, v), &m) in &edge_counts {
        let (a, b) = (mirror(u)?, mirror(v)?);
        if edge_counts.get(&(a.min(b), a.max(b))) != Some(&m) {
            return Err(TilingError::NotReflective);
        }
    }
    let on_axis = |p: Point| p.0 == p.1;
    let axis_vertices = points.iter().filter(|&&p| on_axis(p)).count();
    if axis_vertices % 2 == 1 {
        return Err(TilingError::NotReflective);
    }
    let half = BigRational::new(1.into(), 2.into());
    let mut kept = Vec::new();
    let mut weights = Vec::new();
    for e in g.edges() {
        let seg = e.segment.expect("quotient edges are embedded");
        let (pu, pv) = (points[e.u], points[e.v]);
        if on_axis(pu) && on_axis(pv) {
            kept.push((e.u, e.v));
            weights.push(&e.weight * &half);
            continue;
        }
        // Position of the non-axis end relative to the axis end.
        let other = if on_axis(pu) {
            Some(seen_from(&rot, 6, (seg.1, seg.0), pu))
        } else if on_axis(pv) {
            Some(seen_from(&rot, 6, seg, pv))
        } else {
            None
        };
        if matches!(other, Some((x, y)) if y < x) {
            continue;
        }
        kept.push((e.u, e.v));
        weights.push(e.weight.clone());
    }
    let mut g_prime = MatchRegion::from_edges(points.len(), &kept);
    for (k, w) in weights.into_iter().enumerate() {
        g_prime.set_weight(k, w);
    }
    Ok(CiucuSplit {
        g_prime,
        axis_vertices,
        factor: BigUint::one() << (axis_vertices / 2),
    })
}

/// Number of perfect matchings of a unit-weight region.
pub(super) fn unit_count(r: &MatchRegion) -> BigUint {
    integral(count_matchings(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tilings::count_invariant_matchings;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn hexagon_sizes() {
        for k in 1..=6usize {
            let r = hexagon_region(k, false).unwrap();
            assert_eq!(r.num_vertices(), 6 * k * k);
            // Each of the 3k^2 rhombus positions per direction is an edge.
            assert_eq!(r.edges().len(), 3 * k * (3 * k - 1));
        }
        let r = hexagon_region(3, true).unwrap();
        assert_eq!(r.num_vertices(), 6 * 9 - 6);
        assert_eq!(hexagon_region(2, true).unwrap_err(), TilingError::HoledRequiresOdd(2));
    }

    /// MacMahon's box formula for the k x k x k box.
    fn macmahon(k: u64) -> BigUint {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for i in 1..=k {
            for j in 1..=k {
                for l in 1..=k {
                    num *= i + j + l - 1;
                    den *= i + j + l - 2;
                }
            }
        }
        num / den
    }

    #[test]
    fn plain_tilings_match_the_box_formula() {
        for k in 1..=4u64 {
            let r = hexagon_region(k as usize, false).unwrap();
            assert_eq!(unit_count(&r), macmahon(k), "k={k}");
        }
        assert_eq!(macmahon(2), BigUint::from(20u32));
    }

    #[test]
    fn quotients_count_invariant_matchings() {
        for k in 1..=5usize {
            let r = hexagon_region(k, k % 2 == 1).unwrap();
            let g = r.quotient_by_rotation(6).unwrap();
            assert_eq!(unit_count(&g), count_invariant_matchings(&r, 6).unwrap(), "k={k}");
            for order in [2, 3] {
                let g = r.quotient_by_rotation(order).unwrap();
                assert_eq!(unit_count(&g), count_invariant_matchings(&r, order).unwrap(), "k={k} order={order}");
            }
        }
    }

    #[test]
    fn symmetric_counts() {
        let expect = [1u32, 4, 49];
        for (n, &e) in expect.iter().enumerate() {
            let size = 2 * (n + 1);
            assert_eq!(count_cssc(size).unwrap(), BigUint::from(e));
            assert_eq!(cssc_formula(size).unwrap(), BigUint::from(e));
        }
        for (size, e) in [(3usize, 2u32), (5, 14), (7, 294)] {
            for m in [Method::Brute, Method::Ciucu, Method::Lgv, Method::Formula] {
                assert_eq!(count_qcsscpp(size, m).unwrap(), BigUint::from(e), "size {size} {m:?}");
            }
        }
    }

    #[test]
    fn cut_graphs_have_the_expected_weighted_counts() {
        let expect = [(3usize, q(1, 1), 2usize), (5, q(7, 2), 4), (7, q(147, 4), 6)];
        for (k, mstar, axis) in expect {
            let g = honeycomb_quotient(k).unwrap();
            let split = ciucu_factorize(&g).unwrap();
            assert_eq!(split.axis_vertices, axis, "k={k}");
            assert_eq!(count_matchings(&split.g_prime), mstar, "k={k}");
        }
    }

    #[test]
    fn unembedded_graphs_are_not_reflective() {
        let g = MatchRegion::from_edges(2, &[(0, 1)]);
        assert_eq!(ciucu_factorize(&g).unwrap_err(), TilingError::NotReflective);
    }
}
