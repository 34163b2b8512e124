//! Fixed-edge closure for the rarest quarter-turn link patterns and the map
//! from such FPLs to matchings of the residual quotient.

use std::collections::{BTreeMap, BTreeSet};

use super::{orbit_key, Lattice, MatchRegion, Point, TilingError};
use crate::fpl::Fpl;
use crate::grid::{Edge, Grid};
use crate::linkpat::{extract_link_pattern, pattern_to_dyck, DyckWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Size `4n`, reduced pattern `b^n a^n`.
    QuarterTurn,
    /// Size `4n+2`, reduced pattern `b^n c a^n`.
    QuasiQuarterTurn,
}

impl Family {
    pub fn of_size(size: usize) -> Result<(Family, usize), TilingError> {
        match size % 4 {
            0 if size >= 4 => Ok((Family::QuarterTurn, size / 4)),
            2 if size >= 6 => Ok((Family::QuasiQuarterTurn, size / 4)),
            _ => Err(TilingError::UnsupportedPattern(size)),
        }
    }

    /// Reduced class word of the rarest pattern.
    pub fn class_word(self, n: usize) -> String {
        let mid = if self == Family::QuasiQuarterTurn { "c" } else { "" };
        format!("{}{mid}{}", "b".repeat(n), "a".repeat(n))
    }
}

/// The full Dyck word of the rarest pattern: `a^n (a^n b^n)^3 b^n` at size
/// `4n`, and `a^(2n+1) b^n a^(n+1) b^(n+1) a^n b^(2n+1)` at size `4n+2`.
pub fn rarest_full_pattern(size: usize) -> Result<DyckWord, TilingError> {
    let (family, n) = Family::of_size(size)?;
    let (a, b) = (|k: usize| "a".repeat(k), |k: usize| "b".repeat(k));
    let word = match family {
        Family::QuarterTurn => format!("{}{}{}", a(n), format!("{}{}", a(n), b(n)).repeat(3), b(n)),
        Family::QuasiQuarterTurn => {
            format!("{}{}{}{}{}{}", a(2 * n + 1), b(n), a(n + 1), b(n + 1), a(n), b(2 * n + 1))
        }
    };
    Ok(word.parse().expect("balanced by construction"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Unknown,
    Forced,
    Forbidden,
}

/// Forced and forbidden edges common to every FPL with the rarest pattern,
/// and the graph whose quarter-turn invariant perfect matchings complete
/// them.
#[derive(Clone, Debug)]
pub struct FixedEdgeClosure {
    pub size: usize,
    pub family: Family,
    pub forced: BTreeSet<Edge>,
    pub forbidden: BTreeSet<Edge>,
    /// Vertices with one forced edge, joined by the undecided edges.
    pub residual: MatchRegion,
    /// Grid slot of each residual edge.
    pub residual_slots: Vec<usize>,
    /// Orbit graph of `residual` under the quarter turn. It agrees with the
    /// honeycomb quotient once forced pendant edges are pruned from both.
    pub quotient: MatchRegion,
}

fn set(state: &mut [State], slot: usize, to: State) -> Result<bool, TilingError> {
    match state[slot] {
        State::Unknown => {
            state[slot] = to;
            Ok(true)
        }
        s if s == to => Ok(false),
        _ => Err(TilingError::PatternMismatch),
    }
}

/// Seeds the forced set from the boundary, the west-side triangle of
/// horizontal edges with odd left endpoint and its rotations, and the center
/// square, then propagates the degree-2 constraint to a fixpoint.
///
/// At size `4n+2` the horizontal center edges are forced and the vertical
/// ones forbidden, so the result is quarter-turn stable away from the
/// central square only.
pub fn fixed_edge_closure(size: usize, full_pattern: &DyckWord) -> Result<FixedEdgeClosure, TilingError> {
    let (family, n) = Family::of_size(size)?;
    if *full_pattern != rarest_full_pattern(size)? {
        return Err(TilingError::UnsupportedPattern(size));
    }
    let g = Grid::new(size);
    let mut state = vec![State::Unknown; g.num_slots()];
    let mismatch = |_| TilingError::UnsupportedPattern(size);
    for s in 0..g.num_slots() {
        if let Some(inward) = g.boundary_in(s) {
            state[s] = if inward { State::Forced } else { State::Forbidden };
        }
    }
    let apex = match family {
        Family::QuarterTurn => 4 * n - 2,
        Family::QuasiQuarterTurn => 4 * n,
    };
    for i in 0..=apex.min(size - 1) {
        let depth = i.min(apex - i);
        for j in (0..depth).filter(|j| (i + j) % 2 == 1) {
            let mut s = g.h(i, j + 1);
            for _ in 0..4 {
                set(&mut state, s, State::Forced).map_err(mismatch)?;
                s = g.rotate_slot(s);
            }
        }
    }
    let (horizontal, vertical) = g.center_square().expect("even size");
    let center_horizontal = match family {
        Family::QuarterTurn => State::Forbidden,
        Family::QuasiQuarterTurn => State::Forced,
    };
    for s in horizontal {
        set(&mut state, s, center_horizontal).map_err(mismatch)?;
    }
    for s in vertical {
        set(&mut state, s, State::Forbidden).map_err(mismatch)?;
    }
    propagate(&g, &mut state).map_err(mismatch)?;

    let forced_at = |v| g.incident(v).iter().filter(|&&s| state[s] == State::Forced).count();
    if g.vertices().any(|v| !(1..=2).contains(&forced_at(v))) {
        return Err(TilingError::UnsupportedPattern(size));
    }
    let open: Vec<_> = g.vertices().filter(|&v| forced_at(v) == 1).collect();
    let index: BTreeMap<_, usize> = open.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut residual_slots = Vec::new();
    let mut pairs = Vec::new();
    for s in (0..g.num_slots()).filter(|&s| state[s] == State::Unknown) {
        let (a, b) = g.endpoints(s);
        let (a, b) = (a.expect("boundary slots are decided"), b.expect("boundary slots are decided"));
        pairs.push((index[&a], index[&b]));
        residual_slots.push(s);
    }
    let points: Vec<Point> = open.iter().map(|&v| g.centered(v)).collect();
    let residual = MatchRegion::embedded(Lattice::Square, points, &pairs);
    let quotient = residual.quotient_by_rotation(4)?;
    let collect = |want: State| (0..g.num_slots()).filter(|&s| state[s] == want).map(|s| g.edge(s)).collect();
    Ok(FixedEdgeClosure {
        size,
        family,
        forced: collect(State::Forced),
        forbidden: collect(State::Forbidden),
        residual,
        residual_slots,
        quotient,
    })
}

/// A vertex with two forced edges forbids the rest; a vertex with exactly
/// two edges not forbidden forces them.
fn propagate(g: &Grid, state: &mut [State]) -> Result<(), TilingError> {
    let mut changed = true;
    while changed {
        changed = false;
        for v in g.vertices() {
            let inc = g.incident(v);
            let forced = inc.iter().filter(|&&s| state[s] == State::Forced).count();
            let allowed = inc.iter().filter(|&&s| state[s] != State::Forbidden).count();
            if forced > 2 || allowed < 2 {
                return Err(TilingError::PatternMismatch);
            }
            for &s in &inc {
                if state[s] == State::Unknown {
                    if forced == 2 {
                        changed |= set(state, s, State::Forbidden)?;
                    } else if allowed == 2 {
                        changed |= set(state, s, State::Forced)?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Restricts an FPL of the family to the residual graph and returns the
/// sorted quotient edges it uses, which form a perfect matching.
pub fn fpl_to_quotient_matching(closure: &FixedEdgeClosure, f: &Fpl) -> Result<Vec<usize>, TilingError> {
    let flags = f.classify();
    let in_class = match closure.family {
        Family::QuarterTurn => flags.quarter_turn,
        Family::QuasiQuarterTurn => flags.quasi_quarter_turn,
    };
    if f.n() != closure.size || !in_class {
        return Err(TilingError::PatternMismatch);
    }
    if pattern_to_dyck(&extract_link_pattern(f)) != rarest_full_pattern(closure.size)? {
        return Err(TilingError::PatternMismatch);
    }
    let rot = Lattice::Square.rotation(4)?;
    let lookup: BTreeMap<(Point, Point), usize> = closure
        .quotient
        .edges()
        .iter()
        .enumerate()
        .map(|(k, e)| (orbit_key(&rot, 4, e.segment.expect("embedded")), k))
        .collect();
    let points = closure.residual.points();
    let mut used = BTreeSet::new();
    for (e, &s) in closure.residual.edges().iter().zip(&closure.residual_slots) {
        if f.contains_slot(s) {
            let key = orbit_key(&rot, 4, (points[e.u], points[e.v]));
            used.insert(*lookup.get(&key).ok_or(TilingError::NotAMatching)?);
        }
    }
    let mut cover = vec![0usize; closure.quotient.num_vertices()];
    for &k in &used {
        let e = &closure.quotient.edges()[k];
        cover[e.u] += 1;
        cover[e.v] += 1;
    }
    if cover.iter().any(|&c| c != 1) {
        return Err(TilingError::NotAMatching);
    }
    Ok(used.into_iter().collect())
}
