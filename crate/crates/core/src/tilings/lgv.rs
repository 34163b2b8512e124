//! Nonintersecting lattice paths for the holed-hexagon count.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::det;

type Pt = (i64, i64);

/// Sources `A_i = (i, 2i+2)` and sinks `B_j = (2j, j)` for `0 <= i, j < n`,
/// with East and South unit steps; the East step ending at each `B_j`
/// carries weight 1/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticePathSystem {
    pub n: usize,
}

impl LatticePathSystem {
    pub fn new(n: usize) -> LatticePathSystem {
        LatticePathSystem { n }
    }

    pub fn source(&self, i: usize) -> Pt {
        (i as i64, 2 * i as i64 + 2)
    }

    pub fn sink(&self, j: usize) -> Pt {
        (2 * j as i64, j as i64)
    }

    fn step_weight(&self, from: Pt, to: Pt) -> BigRational {
        let into_sink = to.1 == from.1 && to.0 % 2 == 0 && to.0 == 2 * to.1 && to.1 >= 0 && (to.1 as usize) < self.n;
        if into_sink {
            BigRational::new(1.into(), 2.into())
        } else {
            BigRational::one()
        }
    }

    /// Weighted count of single paths from `A_i` to `B_j` by dynamic
    /// programming over the bounding box.
    pub fn path_weight(&self, i: usize, j: usize) -> BigRational {
        let (a, b) = (self.source(i), self.sink(j));
        if b.0 < a.0 || b.1 > a.1 {
            return BigRational::zero();
        }
        let (w, h) = ((b.0 - a.0) as usize, (a.1 - b.1) as usize);
        // table[dx][dy]: weight of paths from A to (a.0+dx, a.1-dy).
        let mut table = vec![vec![BigRational::zero(); h + 1]; w + 1];
        table[0][0] = BigRational::one();
        for dx in 0..=w {
            for dy in 0..=h {
                let here = (a.0 + dx as i64, a.1 - dy as i64);
                let mut acc = std::mem::take(&mut table[dx][dy]);
                if dx > 0 {
                    let from = (here.0 - 1, here.1);
                    acc += &table[dx - 1][dy] * self.step_weight(from, here);
                }
                if dy > 0 {
                    let from = (here.0, here.1 + 1);
                    acc += &table[dx][dy - 1] * self.step_weight(from, here);
                }
                table[dx][dy] = acc;
            }
        }
        table[w][h].clone()
    }

    /// All lattice paths from `a` to `b` as vertex lists with their weights.
    fn paths(&self, a: Pt, b: Pt) -> Vec<(Vec<Pt>, BigRational)> {
        let mut out = Vec::new();
        if b.0 < a.0 || b.1 > a.1 {
            return out;
        }
        let mut stack = vec![(vec![a], BigRational::one())];
        while let Some((path, w)) = stack.pop() {
            let here = *path.last().expect("nonempty path");
            if here == b {
                out.push((path, w));
                continue;
            }
            for next in [(here.0 + 1, here.1), (here.0, here.1 - 1)] {
                if next.0 <= b.0 && next.1 >= b.1 {
                    let mut p = path.clone();
                    p.push(next);
                    stack.push((p, &w * self.step_weight(here, next)));
                }
            }
        }
        out
    }

    /// Weighted nonintersecting families connecting `A_i` to `B_perm[i]`,
    /// by explicit enumeration with vertex-collision rejection.
    pub fn family_weight(&self, perm: &[usize]) -> BigRational {
        let options: Vec<Vec<(Vec<Pt>, BigRational)>> =
            perm.iter().enumerate().map(|(i, &j)| self.paths(self.source(i), self.sink(j))).collect();
        fn go(k: usize, used: &mut std::collections::HashSet<Pt>, options: &[Vec<(Vec<Pt>, BigRational)>]) -> BigRational {
            if k == options.len() {
                return BigRational::one();
            }
            let mut total = BigRational::zero();
            for (path, w) in &options[k] {
                if path.iter().any(|p| used.contains(p)) {
                    continue;
                }
                used.extend(path.iter().copied());
                total += w * go(k + 1, used, options);
                for p in path {
                    used.remove(p);
                }
            }
            total
        }
        go(0, &mut Default::default(), &options)
    }

    /// Signed sum of nonintersecting family weights over all permutations.
    pub fn brute_force_signed_sum(&self) -> BigRational {
        permutations(self.n)
            .into_iter()
            .map(|p| {
                let w = self.family_weight(&p);
                if inversions(&p) % 2 == 0 {
                    w
                } else {
                    -w
                }
            })
            .sum()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k % 2 == 0 { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    heap(n, &mut p, &mut out);
    out
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
}

fn factorial(n: i64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `(i+j+1)! / ((2j-i)! (2i-j+2)!)`, zero when a factorial argument is
/// negative.
fn reduced_weight(i: usize, j: usize) -> BigRational {
    let (i, j) = (i as i64, j as i64);
    if 2 * j - i < 0 || 2 * i - j + 2 < 0 {
        return BigRational::zero();
    }
    BigRational::new(factorial(i + j + 1), factorial(2 * j - i) * factorial(2 * i - j + 2))
}

/// Closed form of the weighted path count from `A_i` to `B_j`:
/// `(3i+4)/2 * (i+j+1)! / ((2j-i)! (2i-j+2)!)`.
pub fn lgv_weight(i: usize, j: usize) -> BigRational {
    reduced_weight(i, j) * BigRational::new(BigInt::from(3 * i + 4), 2.into())
}

/// The matrix of weighted path counts, computed by dynamic programming.
pub fn path_weight_matrix(n: usize) -> Vec<Vec<BigRational>> {
    let sys = LatticePathSystem::new(n);
    (0..n).map(|i| (0..n).map(|j| sys.path_weight(i, j)).collect()).collect()
}

/// `prod (3i+4) * det((i+j+1)! / ((2j-i)! (2i-j+2)!))`, the number of
/// matchings of the holed-hexagon quotient of side `2n+1`.
pub fn lgv_count(n: usize) -> BigUint {
    let m: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| reduced_weight(i, j)).collect()).collect();
    let scale: BigInt = (0..n as i64).map(|i| BigInt::from(3 * i + 4)).product();
    let v = det(&m) * BigRational::from_integer(scale);
    assert!(v.is_integer(), "determinant count is integral");
    v.to_integer().to_biguint().expect("nonnegative count")
}

/// `prod_{i<n} i!(i+1)!(3i+1)!(3i+4)! / ((2i)!(2i+1)!(2i+2)!(2i+3)!)` for
/// `size = 2n+1`.
pub fn closed_form_p(size: usize) -> BigUint {
    let n = (size.saturating_sub(1) / 2) as i64;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        num *= factorial(i) * factorial(i + 1) * factorial(3 * i + 1) * factorial(3 * i + 4);
        den *= factorial(2 * i) * factorial(2 * i + 1) * factorial(2 * i + 2) * factorial(2 * i + 3);
    }
    assert!((&num % &den).is_zero(), "product is integral");
    (num / den).to_biguint().expect("positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::count_formula_a;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn binom(n: i64, k: i64) -> BigRational {
        if k < 0 || k > n {
            return BigRational::zero();
        }
        BigRational::from_integer(factorial(n) / (factorial(k) * factorial(n - k)))
    }

    #[test]
    fn dp_weights_match_the_closed_form() {
        let sys = LatticePathSystem::new(6);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(sys.path_weight(i, j), lgv_weight(i, j), "i={i} j={j}");
            }
        }
    }

    /// Splitting on the last step gives half of the paths ending East plus
    /// the paths ending South.
    #[test]
    fn last_step_split() {
        for i in 0..6i64 {
            for j in 0..6i64 {
                let split = q(1, 2) * binom(i + j + 1, 2 * j - i - 1) + binom(i + j + 1, 2 * j - i);
                assert_eq!(split, lgv_weight(i as usize, j as usize), "i={i} j={j}");
            }
        }
        // The other assignment of the half disagrees already at i = j = 1.
        let swapped = q(1, 2) * binom(3, 1) + binom(3, 0);
        assert_eq!(swapped, q(5, 2));
        assert_eq!(lgv_weight(1, 1), q(7, 2));
    }

    #[test]
    fn small_values() {
        assert_eq!(lgv_count(1), BigUint::from(2u32));
        assert_eq!(reduced_weight(1, 0), q(0, 1));
        assert_eq!(lgv_count(2), BigUint::from(14u32));
        assert_eq!(lgv_count(3), BigUint::from(294u32));
        assert_eq!(closed_form_p(3), BigUint::from(2u32));
        assert_eq!(closed_form_p(9), BigUint::from(18018u32));
    }

    #[test]
    fn determinant_agrees_with_nonintersecting_families() {
        for n in 1..=4 {
            let sys = LatticePathSystem::new(n);
            let d = det(&path_weight_matrix(n));
            assert_eq!(sys.brute_force_signed_sum(), d, "n={n}");
            let identity: Vec<usize> = (0..n).collect();
            assert_eq!(sys.family_weight(&identity), d, "n={n}");
            let scaled = d * BigRational::from_integer(BigInt::one() << n);
            assert_eq!(scaled, BigRational::from_integer(lgv_count(n).into()));
        }
    }

    #[test]
    fn closed_form_matches_determinant_and_ratio() {
        for n in 1..=8 {
            assert_eq!(closed_form_p(2 * n + 1), lgv_count(n), "n={n}");
            let a = |k| count_formula_a(k);
            assert_eq!(closed_form_p(2 * n + 1), a(n) * a(n + 1));
        }
        // The determinant alone, before the row factors.
        for n in 1..=6i64 {
            let m: Vec<Vec<BigRational>> =
                (0..n as usize).map(|i| (0..n as usize).map(|j| reduced_weight(i, j)).collect()).collect();
            let mut num = BigInt::one();
            let mut den = BigInt::one();
            for i in 0..n {
                num *= factorial(i) * factorial(i + 1) * factorial(3 * i + 3) * factorial(3 * i + 1);
                den *= factorial(2 * i + 2) * factorial(2 * i) * factorial(2 * i + 3) * factorial(2 * i + 1);
            }
            assert_eq!(det(&m), BigRational::new(num, den), "n={n}");
        }
    }
}
