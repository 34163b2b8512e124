//! Exact weighted perfect-matching counts.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Lattice, MatchRegion, Point, TilingError};

#[derive(Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn full(n: usize) -> Bits {
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        if n % 64 != 0 {
            *words.last_mut().expect("nonempty") = (1u64 << (n % 64)) - 1;
        }
        Bits(words)
    }

    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1u64 << (i % 64));
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1u64 << (i % 64);
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| 64 * k + w.trailing_zeros() as usize)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| 64 * k + b)
        })
    }
}

struct Counter<'a> {
    adj: Vec<Vec<(usize, &'a BigRational)>>,
    memo: HashMap<Bits, BigRational>,
}

impl Counter<'_> {
    /// Branches on a vertex of least remaining degree; ties go to the lowest
    /// index, which keeps the memoized states close to a sweep frontier.
    fn count(&mut self, free: &mut Bits) -> BigRational {
        let Some(first) = free.first() else {
            return BigRational::one();
        };
        if let Some(v) = self.memo.get(free) {
            return v.clone();
        }
        let mut pick = (usize::MAX, first);
        for v in free.iter() {
            let d = self.adj[v].iter().filter(|(w, _)| free.has(*w)).count();
            if d == 0 {
                self.memo.insert(free.clone(), BigRational::zero());
                return BigRational::zero();
            }
            if d < pick.0 && (d == 1 || pick.0 == usize::MAX) {
                pick = (d, v);
            }
            if d == 1 {
                break;
            }
        }
        let v = pick.1;
        let key = free.clone();
        let mut total = BigRational::zero();
        free.clear(v);
        let options: Vec<(usize, BigRational)> = self.adj[v]
            .iter()
            .filter(|(w, _)| free.has(*w))
            .map(|(w, x)| (*w, (*x).clone()))
            .collect();
        for (w, x) in options {
            free.clear(w);
            let sub = self.count(free);
            if !sub.is_zero() {
                total += x * sub;
            }
            free.set(w);
        }
        free.set(v);
        self.memo.insert(key, total.clone());
        total
    }
}

/// Sum over perfect matchings of the product of edge weights.
pub fn count_matchings(r: &MatchRegion) -> BigRational {
    let n = r.num_vertices();
    if n % 2 == 1 {
        return BigRational::zero();
    }
    let mut adj = vec![Vec::new(); n];
    for e in r.edges() {
        if e.u != e.v {
            adj[e.u].push((e.v, &e.weight));
            adj[e.v].push((e.u, &e.weight));
        }
    }
    let mut counter = Counter { adj, memo: HashMap::new() };
    counter.count(&mut Bits::full(n))
}

/// Number of perfect matchings invariant under the rotation of the given
/// order, by adding whole edge orbits at a time. Independent of the quotient
/// construction.
pub fn count_invariant_matchings(r: &MatchRegion, order: usize) -> Result<BigUint, TilingError> {
    let lattice: Lattice = r.lattice().ok_or(TilingError::NotEmbedded)?;
    let rot = lattice.rotation(order)?;
    let points = r.points();
    let index: BTreeMap<Point, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let image = |v: usize| -> Result<usize, TilingError> {
        index.get(&rot(points[v])).copied().ok_or(TilingError::NotSymmetric(order))
    };
    let by_ends: BTreeMap<(usize, usize), Vec<usize>> = r.edges().iter().enumerate().fold(BTreeMap::new(), |mut m, (k, e)| {
        m.entry((e.u.min(e.v), e.u.max(e.v))).or_insert_with(Vec::new).push(k);
        m
    });
    // Orbits as vertex-pair lists; only orbits whose edges are disjoint can
    // appear in a matching.
    let mut orbits: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut seen = vec![false; r.edges().len()];
    for (k, e) in r.edges().iter().enumerate() {
        if seen[k] {
            continue;
        }
        let mut orbit = Vec::new();
        let (mut u, mut v) = (e.u, e.v);
        for _ in 0..order {
            let ends = (u.min(v), u.max(v));
            let slot = by_ends.get(&ends).ok_or(TilingError::NotSymmetric(order))?;
            // Parallel edges rotate among themselves in index order.
            let j = slot.iter().copied().find(|&j| !seen[j]).unwrap_or(slot[0]);
            seen[j] = true;
            orbit.push(ends);
            u = image(u)?;
            v = image(v)?;
        }
        orbit.sort_unstable();
        orbit.dedup();
        let mut touched: Vec<usize> = orbit.iter().flat_map(|&(a, b)| [a, b]).collect();
        touched.sort_unstable();
        let disjoint = touched.windows(2).all(|w| w[0] != w[1]);
        if disjoint {
            orbits.push(orbit);
        }
    }
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); r.num_vertices()];
    for (k, orbit) in orbits.iter().enumerate() {
        for &(a, b) in orbit {
            at[a].push(k);
            at[b].push(k);
        }
    }
    fn search(free: &mut Bits, orbits: &[Vec<(usize, usize)>], at: &[Vec<usize>]) -> BigUint {
        let Some(v) = free.first() else {
            return BigUint::one();
        };
        let mut total = BigUint::zero();
        for &k in &at[v] {
            if orbits[k].iter().all(|&(a, b)| free.has(a) && free.has(b)) {
                for &(a, b) in &orbits[k] {
                    free.clear(a);
                    free.clear(b);
                }
                total += search(free, orbits, at);
                for &(a, b) in &orbits[k] {
                    free.set(a);
                    free.set(b);
                }
            }
        }
        total
    }
    Ok(search(&mut Bits::full(r.num_vertices()), &orbits, &at))
}
