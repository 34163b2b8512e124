//! A hand-drawn size-10 quasi-quarter-turn configuration, and independence of
//! the reduced word from the choice of center edges.

use std::collections::BTreeSet;

use fpl_core::linkpat::{extract_link_pattern, ht_encode, pattern_to_dyck, qqt_reduce};
use fpl_core::{classify_symmetry, enumerate_asms, fpl_to_asm, asm_to_fpl, Dir, Edge, Fpl, SymmetryClass};

/// Polylines in drawing coordinates: `x` and `y` in 1..=12, `y` upwards;
/// coordinates 1 and 12 are the outer ends of boundary half-edges.
const DRAWING: &[&[(i64, i64)]] = &[
    &[(1, 3), (2, 3), (2, 4), (4, 4), (4, 3), (3, 3), (3, 2), (2, 2), (2, 1)],
    &[(4, 1), (4, 2), (6, 2), (6, 1)],
    &[(8, 1), (8, 2), (7, 2), (7, 3), (8, 3), (8, 4), (7, 4), (7, 5), (8, 5), (8, 6), (6, 6)],
    &[(6, 6), (6, 5), (5, 5), (5, 6), (4, 6), (4, 5), (3, 5), (3, 6), (2, 6), (2, 5), (1, 5)],
    &[(5, 3), (5, 4), (6, 4), (6, 3), (5, 3)],
    &[(10, 1), (10, 2), (9, 2), (9, 4), (10, 4), (10, 3), (11, 3), (11, 2), (12, 2)],
    &[(12, 4), (11, 4), (11, 6), (12, 6)],
    &[(10, 5), (10, 6), (9, 6), (9, 5), (10, 5)],
    &[(12, 8), (11, 8), (11, 7), (10, 7), (10, 8), (9, 8), (9, 7), (8, 7), (8, 8), (7, 8), (7, 7)],
    &[(7, 7), (5, 7), (5, 8), (6, 8), (6, 9), (5, 9), (5, 10), (6, 10), (6, 11), (5, 11), (5, 12)],
    &[(7, 9), (8, 9), (8, 10), (7, 10), (7, 9)],
    &[(12, 10), (11, 10), (11, 9), (9, 9), (9, 10), (10, 10), (10, 11), (11, 11), (11, 12)],
    &[(9, 12), (9, 11), (7, 11), (7, 12)],
    &[(3, 12), (3, 11), (4, 11), (4, 9), (3, 9), (3, 10), (2, 10), (2, 11), (1, 11)],
    &[(1, 7), (2, 7), (2, 9), (1, 9)],
    &[(3, 7), (4, 7), (4, 8), (3, 8), (3, 7)],
    &[(6, 6), (7, 6)],
    &[(6, 7), (7, 7)],
];

/// Unit segment between drawing points, as a grid edge of the 10×10 grid.
fn unit_edge(a: (i64, i64), b: (i64, i64)) -> Edge {
    let cell = |(x, y): (i64, i64)| (11 - y, x - 2);
    let (p, q) = (cell(a), cell(b));
    let outside = |(r, c): (i64, i64)| !(0..10).contains(&r) || !(0..10).contains(&c);
    let v = |(r, c): (i64, i64)| (r as usize, c as usize);
    match (outside(p), outside(q)) {
        (false, false) => Edge::internal(v(p), v(q)),
        (true, true) => panic!("segment {a:?}-{b:?} lies outside the grid"),
        (po, _) => {
            let (inner, outer) = if po { (q, p) } else { (p, q) };
            let dir = match (outer.0 - inner.0, outer.1 - inner.1) {
                (-1, 0) => Dir::North,
                (1, 0) => Dir::South,
                (0, -1) => Dir::West,
                (0, 1) => Dir::East,
                d => panic!("not a unit step: {d:?}"),
            };
            Edge::Boundary(v(inner), dir)
        }
    }
}

fn drawn_configuration() -> Fpl {
    let mut edges = BTreeSet::new();
    for line in DRAWING {
        for w in line.windows(2) {
            let (a, b) = (w[0], w[1]);
            let steps = (b.0 - a.0).abs() + (b.1 - a.1).abs();
            let d = ((b.0 - a.0).signum(), (b.1 - a.1).signum());
            for k in 0..steps {
                let p = (a.0 + k * d.0, a.1 + k * d.1);
                edges.insert(unit_edge(p, (p.0 + d.0, p.1 + d.1)));
            }
        }
    }
    Fpl::from_edges(10, edges).expect("drawing is a fully-packed loop configuration")
}

/// Swaps the two horizontal center edges for the two vertical ones.
fn flip_center(f: &Fpl) -> Fpl {
    let c = f.n() / 2 - 1;
    let square = [
        Edge::internal((c, c), (c, c + 1)),
        Edge::internal((c + 1, c), (c + 1, c + 1)),
        Edge::internal((c, c), (c + 1, c)),
        Edge::internal((c, c + 1), (c + 1, c + 1)),
    ];
    let mut edges = f.edges();
    for e in square {
        if !edges.remove(&e) {
            edges.insert(e);
        }
    }
    Fpl::from_edges(f.n(), edges).expect("flipping a center square keeps every degree at 2")
}

fn reduced(f: &Fpl) -> String {
    qqt_reduce(&ht_encode(&extract_link_pattern(f)).unwrap()).unwrap().to_string()
}

#[test]
fn drawn_configuration_has_the_expected_pattern() {
    let f = drawn_configuration();
    // 90 internal edges and 20 boundary half-edges.
    assert_eq!(f.edges().len(), 110);
    let flags = classify_symmetry(&f);
    assert!(flags.quasi_quarter_turn);
    assert!(!flags.quarter_turn);
    assert!(flags.half_turn);
    let p = extract_link_pattern(&f);
    assert_eq!(pattern_to_dyck(&p).to_string(), "aabaababbababaababbb");
    assert_eq!(ht_encode(&p).unwrap().to_string(), "babaababba");
    assert_eq!(reduced(&f), "babca");
}

#[test]
fn drawn_configuration_has_two_zero_center_entries() {
    let a = fpl_to_asm(&drawn_configuration());
    let center = [a.get(4, 4), a.get(4, 5), a.get(5, 4), a.get(5, 5)];
    assert_eq!(center.iter().filter(|&&x| x == 0).count(), 2, "{center:?}");
    assert!(a.is_half_turn_symmetric());
    assert!(!a.is_quarter_turn_symmetric());
}

#[test]
fn reduced_word_ignores_the_center_choice() {
    let mut checked = 0;
    for size in [6, 10] {
        for a in enumerate_asms(size, SymmetryClass::QuasiQuarterTurn).unwrap() {
            let f = asm_to_fpl(&a);
            let g = flip_center(&f);
            assert!(!classify_symmetry(&g).quasi_quarter_turn);
            let word = reduced(&f);
            assert_eq!(word.matches('c').count(), 1);
            assert_eq!(reduced(&g), word);
            checked += 1;
        }
    }
    assert_eq!(checked, 6 + 350);
    let f = drawn_configuration();
    assert_eq!(reduced(&flip_center(&f)), "babca");
}
