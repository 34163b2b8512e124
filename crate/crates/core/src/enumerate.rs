//! Exhaustive generation of ASMs by symmetry class.
//!
//! The search fills the top `h` rows cell by cell in row-major order while
//! tracking the running row sum and the column partial-sum bitmask, so every
//! prefix is a valid partial ASM. Symmetry is imposed by orbit copying: a cell
//! whose orbit under the class's rotation group contains an earlier cell takes
//! that cell's value. The bottom rows of half-turn classes are images of the
//! top rows and never get searched; validity of the full matrix reduces to a
//! condition on the column bitmasks at the end of the top half.
//!
//! The search tree splits into independent subtrees by fixing the first rows;
//! those subtrees are processed in parallel and merged in prefix order.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asm::Asm;
use crate::fpl::{asm_to_fpl, classify_symmetry};

pub type ExactCount = BigUint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SymmetryClass {
    Plain,
    HalfTurn,
    QuarterTurn,
    QuasiQuarterTurn,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("size {n} is incompatible with class {class}")]
    IncompatibleSize { n: usize, class: SymmetryClass },
    #[error("size {0} exceeds the 64-column search limit")]
    TooLarge(usize),
    #[error("memoized counting is only available for plain and half-turn classes")]
    MemoUnsupported,
    #[error("unknown symmetry class {0:?}")]
    UnknownClass(String),
}

impl SymmetryClass {
    pub const ALL: [SymmetryClass; 4] = [
        SymmetryClass::Plain,
        SymmetryClass::HalfTurn,
        SymmetryClass::QuarterTurn,
        SymmetryClass::QuasiQuarterTurn,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            SymmetryClass::Plain => "plain",
            SymmetryClass::HalfTurn => "ht",
            SymmetryClass::QuarterTurn => "qt",
            SymmetryClass::QuasiQuarterTurn => "qqt",
        }
    }

    pub fn check_size(self, n: usize) -> Result<(), EnumError> {
        let ok = match self {
            SymmetryClass::Plain | SymmetryClass::HalfTurn => n >= 1,
            SymmetryClass::QuarterTurn => n >= 4 && n % 4 == 0,
            SymmetryClass::QuasiQuarterTurn => n >= 2 && n % 4 == 2,
        };
        if !ok {
            return Err(EnumError::IncompatibleSize { n, class: self });
        }
        if n > 64 {
            return Err(EnumError::TooLarge(n));
        }
        Ok(())
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for SymmetryClass {
    type Err = EnumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "plain" => Ok(SymmetryClass::Plain),
            "ht" | "half-turn" | "halfturn" => Ok(SymmetryClass::HalfTurn),
            "qt" | "quarter-turn" | "quarterturn" => Ok(SymmetryClass::QuarterTurn),
            "qqt" | "quasi-quarter-turn" => Ok(SymmetryClass::QuasiQuarterTurn),
            _ => Err(EnumError::UnknownClass(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EndCheck {
    None,
    HalfTurnEven,
    HalfTurnOdd,
}

/// Search plan for one (size, class) pair.
#[derive(Clone, Debug)]
struct Search {
    n: usize,
    class: SymmetryClass,
    rows: usize,
    copy_from: Vec<Option<usize>>,
    end: EndCheck,
}

/// State of the search after a complete number of rows.
#[derive(Clone, Debug)]
struct Prefix {
    cells: Vec<i8>,
    masks: Vec<u64>,
}

fn orbit(n: usize, class: SymmetryClass, (i, j): (usize, usize)) -> Vec<(usize, usize)> {
    let half = (n - 1 - i, n - 1 - j);
    let quarter = || vec![(i, j), (j, n - 1 - i), half, (n - 1 - j, i)];
    match class {
        SymmetryClass::Plain => vec![(i, j)],
        SymmetryClass::HalfTurn => vec![(i, j), half],
        SymmetryClass::QuarterTurn => quarter(),
        SymmetryClass::QuasiQuarterTurn => {
            let c = n / 2 - 1;
            if (c..=c + 1).contains(&i) && (c..=c + 1).contains(&j) {
                vec![(i, j), half]
            } else {
                quarter()
            }
        }
    }
}

impl Search {
    fn new(n: usize, class: SymmetryClass) -> Result<Search, EnumError> {
        class.check_size(n)?;
        let (rows, end) = match class {
            SymmetryClass::Plain => (n, EndCheck::None),
            _ if n % 2 == 0 => (n / 2, EndCheck::HalfTurnEven),
            _ => (n / 2 + 1, EndCheck::HalfTurnOdd),
        };
        let copy_from = (0..rows * n)
            .map(|k| {
                let rep = orbit(n, class, (k / n, k % n))
                    .into_iter()
                    .map(|(a, b)| a * n + b)
                    .min()
                    .expect("orbit is nonempty");
                debug_assert!(rep <= k);
                (rep < k).then_some(rep)
            })
            .collect();
        Ok(Search { n, class, rows, copy_from, end })
    }

    fn root(&self) -> Prefix {
        Prefix { cells: vec![0; self.rows * self.n], masks: vec![0; self.rows + 1] }
    }

    fn end_ok(&self, masks: &[u64]) -> bool {
        let n = self.n;
        let bit = |m: u64, j: usize| (m >> j) & 1;
        match self.end {
            EndCheck::None => true,
            EndCheck::HalfTurnEven => {
                let t = masks[self.rows];
                (0..n).all(|j| bit(t, j) + bit(t, n - 1 - j) == 1)
            }
            EndCheck::HalfTurnOdd => {
                let after = masks[self.rows];
                let before = masks[self.rows - 1];
                (0..n).all(|j| bit(after, j) + bit(before, n - 1 - j) == 1)
            }
        }
    }

    /// Rebuilds the full matrix from the searched top rows.
    fn expand(&self, cells: &[i8]) -> Asm {
        let n = self.n;
        let mut entries = vec![0i8; n * n];
        entries[..self.rows * n].copy_from_slice(&cells[..self.rows * n]);
        for i in self.rows..n {
            for j in 0..n {
                entries[i * n + j] = entries[(n - 1 - i) * n + (n - 1 - j)];
            }
        }
        Asm::from_entries_unchecked(n, entries)
    }

    fn accepts(&self, a: &Asm) -> bool {
        match self.class {
            SymmetryClass::QuasiQuarterTurn => classify_symmetry(&asm_to_fpl(a)).quasi_quarter_turn,
            _ => true,
        }
    }

    /// Depth-first search from `prefix` (complete through row `from_row`) to
    /// row `to_row`. Leaves are reported with the cells and row masks.
    fn walk<F: FnMut(&[i8], &[u64])>(&self, prefix: &Prefix, from_row: usize, to_row: usize, f: &mut F) {
        let mut cells = prefix.cells.clone();
        let mut masks = prefix.masks.clone();
        let start = from_row * self.n;
        let mask = masks[from_row];
        self.cell(start, to_row * self.n, 0, mask, &mut cells, &mut masks, f);
    }

    #[allow(clippy::too_many_arguments)]
    fn cell<F: FnMut(&[i8], &[u64])>(
        &self,
        k: usize,
        stop: usize,
        sum: i8,
        mask: u64,
        cells: &mut [i8],
        masks: &mut [u64],
        f: &mut F,
    ) {
        if k == stop {
            f(cells, masks);
            return;
        }
        let n = self.n;
        let j = k % n;
        let last = j == n - 1;
        let col = ((mask >> j) & 1) as i8;
        let mut try_value = |v: i8, cells: &mut [i8], masks: &mut [u64]| {
            let c = col + v;
            let s = sum + v;
            if !(0..=1).contains(&c) || !(0..=1).contains(&s) || (last && s != 1) {
                return;
            }
            cells[k] = v;
            let next_mask = if c == 1 { mask | (1 << j) } else { mask & !(1 << j) };
            if last {
                masks[k / n + 1] = next_mask;
                self.cell(k + 1, stop, 0, next_mask, cells, masks, f);
            } else {
                self.cell(k + 1, stop, s, next_mask, cells, masks, f);
            }
        };
        match self.copy_from[k] {
            Some(src) => {
                let v = cells[src];
                try_value(v, cells, masks);
            }
            None => {
                for v in [-1, 0, 1] {
                    try_value(v, cells, masks);
                }
            }
        }
    }

    fn split_depth(&self) -> usize {
        self.rows.min(2)
    }

    fn prefixes(&self) -> Vec<Prefix> {
        let depth = self.split_depth();
        let mut out = Vec::new();
        self.walk(&self.root(), 0, depth, &mut |cells, masks| {
            out.push(Prefix { cells: cells.to_vec(), masks: masks.to_vec() });
        });
        out
    }

    fn leaves<F: FnMut(Asm)>(&self, prefix: &Prefix, f: &mut F) {
        let depth = self.split_depth();
        self.walk(prefix, depth, self.rows, &mut |cells, masks| {
            if self.end_ok(masks) {
                let a = self.expand(cells);
                if self.accepts(&a) {
                    f(a);
                }
            }
        });
    }

    fn count_leaves(&self, prefix: &Prefix) -> u64 {
        if self.class == SymmetryClass::QuasiQuarterTurn {
            let mut count = 0u64;
            self.leaves(prefix, &mut |_| count += 1);
            return count;
        }
        let mut count = 0u64;
        self.walk(prefix, self.split_depth(), self.rows, &mut |_, masks| {
            if self.end_ok(masks) {
                count += 1;
            }
        });
        count
    }
}

/// Lazily generated stream of the ASMs in a class, in lexicographic order of
/// rows (entries compared as -1 < 0 < 1).
pub struct AsmStream {
    search: Search,
    pending: VecDeque<Prefix>,
    buffer: VecDeque<Asm>,
}

impl Iterator for AsmStream {
    type Item = Asm;

    fn next(&mut self) -> Option<Asm> {
        loop {
            if let Some(a) = self.buffer.pop_front() {
                return Some(a);
            }
            let prefix = self.pending.pop_front()?;
            let buffer = &mut self.buffer;
            self.search.leaves(&prefix, &mut |a| buffer.push_back(a));
        }
    }
}

pub fn enumerate_asms(n: usize, class: SymmetryClass) -> Result<AsmStream, EnumError> {
    let search = Search::new(n, class)?;
    let pending = search.prefixes().into();
    Ok(AsmStream { search, pending, buffer: VecDeque::new() })
}

/// Parallel map-reduce over a class. Each worker folds one subtree of the
/// search into its own accumulator; accumulators are then merged with
/// `reduce`, which must be associative and commutative.
pub fn fold_class<T, I, F, R>(n: usize, class: SymmetryClass, init: I, fold: F, reduce: R) -> Result<T, EnumError>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &Asm) + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    let search = Search::new(n, class)?;
    let prefixes = search.prefixes();
    Ok(prefixes
        .par_iter()
        .map(|p| {
            let mut acc = init();
            search.leaves(p, &mut |a| fold(&mut acc, &a));
            acc
        })
        .reduce(&init, &reduce))
}

/// Number of ASMs in the class, by exhaustive search without materializing
/// the matrices (quasi-quarter-turn candidates still get classified).
pub fn count_class(n: usize, class: SymmetryClass) -> Result<ExactCount, EnumError> {
    let search = Search::new(n, class)?;
    let total: u64 = search.prefixes().par_iter().map(|p| search.count_leaves(p)).sum();
    Ok(BigUint::from(total))
}

/// Same count as [`count_class`] for plain and half-turn classes, with the
/// number of completions memoized on (row, column bitmask). Used for formula
/// sides at sizes where visiting every matrix is too slow.
pub fn count_memoized(n: usize, class: SymmetryClass) -> Result<ExactCount, EnumError> {
    if !matches!(class, SymmetryClass::Plain | SymmetryClass::HalfTurn) {
        return Err(EnumError::MemoUnsupported);
    }
    let search = Search::new(n, class)?;
    let mut memo: HashMap<(usize, u64), BigUint> = HashMap::new();
    Ok(memo_count(&search, 0, 0, &mut memo))
}

fn memo_count(search: &Search, row: usize, mask: u64, memo: &mut HashMap<(usize, u64), BigUint>) -> BigUint {
    if let Some(c) = memo.get(&(row, mask)) {
        return c.clone();
    }
    let n = search.n;
    let result = if row == search.rows {
        // Only reached through `end_ok` below.
        BigUint::one()
    } else {
        let mut prefix = search.root();
        prefix.masks[row] = mask;
        let mut next: Vec<(u64, bool)> = Vec::new();
        search.walk(&prefix, row, row + 1, &mut |_, masks| {
            let last = row + 1 == search.rows;
            next.push((masks[row + 1], !last || search.end_ok(masks)));
        });
        let mut total = BigUint::zero();
        for (m, ok) in next {
            if ok {
                total += memo_count(search, row + 1, m, memo);
            }
        }
        total
    };
    debug_assert!(n <= 64);
    memo.insert((row, mask), result.clone());
    result
}

fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// `A(n) = prod_{i<n} (3i+1)! / (n+i)!`, with `A(0) = 1`.
pub fn count_formula_a(n: usize) -> ExactCount {
    let n = n as u64;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        num *= factorial(3 * i + 1);
        den *= factorial(n + i);
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// `A(n+1) / A(n) = n! (3n+1)! / ((2n)! (2n+1)!)`.
pub fn recurrence_ratio_a(n: usize) -> BigRational {
    let n = n as u64;
    let num = factorial(n) * factorial(3 * n + 1);
    let den = factorial(2 * n) * factorial(2 * n + 1);
    BigRational::new(num.into(), den.into())
}

/// Enumerating polynomial by the column of the 1 in the first row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedPolynomial {
    pub coefficients: Vec<BigUint>,
}

impl RefinedPolynomial {
    pub fn new(coefficients: Vec<BigUint>) -> Self {
        RefinedPolynomial { coefficients }
    }

    pub fn one() -> Self {
        RefinedPolynomial::new(vec![BigUint::one()])
    }

    pub fn y() -> Self {
        RefinedPolynomial::new(vec![BigUint::zero(), BigUint::one()])
    }

    pub fn value_at_one(&self) -> BigUint {
        self.coefficients.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.coefficients.iter().eq(self.coefficients.iter().rev())
    }

    /// Drops trailing zero coefficients.
    pub fn trimmed(&self) -> Self {
        let mut c = self.coefficients.clone();
        while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        RefinedPolynomial::new(c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coefficients.is_empty() || other.coefficients.is_empty() {
            return RefinedPolynomial::new(Vec::new());
        }
        let mut out = vec![BigUint::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RefinedPolynomial::new(out)
    }
}

pub fn refined_polynomial(n: usize, class: SymmetryClass) -> Result<RefinedPolynomial, EnumError> {
    let counts = fold_class(
        n,
        class,
        || vec![0u64; n],
        |acc, a| acc[a.first_row_index()] += 1,
        |mut x, y| {
            x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
            x
        },
    )?;
    Ok(RefinedPolynomial::new(counts.into_iter().map(BigUint::from).collect()))
}
