//! Link patterns of FPLs, their word encodings and the cyclic Temperley-Lieb
//! action on them.
//!
//! Labels are 1-based and cyclic modulo 2N throughout, as are generator
//! indices.

mod chain;


use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fpl::Fpl;

pub use chain::{
    class_word, parse_class_word, pattern_counts, stationary_distribution, transition_matrix, PatternDistribution, TransitionMatrix,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinkError {
    #[error("pairs do not form a perfect matching of 1..={0}")]
    NotPerfectMatching(usize),
    #[error("pairs {0:?} and {1:?} cross")]
    Crossing((usize, usize), (usize, usize)),
    #[error("malformed Dyck word {0:?}")]
    MalformedDyck(String),
    #[error("malformed half-turn word {0:?}")]
    MalformedHtWord(String),
    #[error("link pattern is not half-turn symmetric")]
    NotHalfTurnSymmetric,
    #[error("word {0:?} is not of the form w'w'")]
    NotSquareWord(String),
    #[error("word {0:?} is not of the form uavubv or ubvuav with vu a Dyck word")]
    BadFactorization(String),
    #[error("word has length {len}, expected {expected}")]
    BadLength { len: usize, expected: &'static str },
    #[error("no Markov chain for class {class} at size {n}")]
    UnsupportedChain { n: usize, class: crate::enumerate::SymmetryClass },
    #[error("Markov chain is not irreducible")]
    NotIrreducible,
    #[error("Markov chain is not aperiodic")]
    NotAperiodic,
}

/// A noncrossing perfect matching of `1..=2N`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkPattern {
    /// `partner[i]` is the 0-based partner of 0-based label `i`.
    partner: Vec<usize>,
}

impl LinkPattern {
    /// Builds a pattern from 1-based pairs, rejecting crossings.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<LinkPattern, LinkError> {
        let m = 2 * pairs.len();
        let mut partner = vec![usize::MAX; m];
        for &(i, j) in pairs {
            if i == j || i == 0 || j == 0 || i > m || j > m {
                return Err(LinkError::NotPerfectMatching(m));
            }
            let (i, j) = (i - 1, j - 1);
            if partner[i] != usize::MAX || partner[j] != usize::MAX {
                return Err(LinkError::NotPerfectMatching(m));
            }
            partner[i] = j;
            partner[j] = i;
        }
        let p = LinkPattern { partner };
        if let Some((x, y)) = p.find_crossing() {
            return Err(LinkError::Crossing(x, y));
        }
        Ok(p)
    }

    fn find_crossing(&self) -> Option<((usize, usize), (usize, usize))> {
        let pairs = self.pairs();
        for (x, &(i, j)) in pairs.iter().enumerate() {
            for &(k, l) in &pairs[x + 1..] {
                if (i < k && k < j && j < l) || (k < i && i < l && l < j) {
                    return Some(((i, j), (k, l)));
                }
            }
        }
        None
    }

    pub fn n_arcs(&self) -> usize {
        self.partner.len() / 2
    }

    /// 1-based partner of 1-based label `i`, with `i` taken cyclically.
    pub fn partner(&self, i: usize) -> usize {
        let m = self.partner.len();
        self.partner[(i + m - 1) % m] + 1
    }

    /// 1-based pairs `(i, j)` with `i < j`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&i| i < self.partner[i])
            .map(|i| (i + 1, self.partner[i] + 1))
            .collect()
    }

    /// Shifts every label by `k` modulo 2N.
    pub fn rotate(&self, k: usize) -> LinkPattern {
        let m = self.partner.len();
        let mut partner = vec![0; m];
        for i in 0..m {
            partner[(i + k) % m] = (self.partner[i] + k) % m;
        }
        LinkPattern { partner }
    }

    /// Whether `{i,j}` in the pattern implies `{i+N, j+N}` in the pattern.
    pub fn is_half_turn_symmetric(&self) -> bool {
        *self == self.rotate(self.n_arcs())
    }

    pub fn to_dyck(&self) -> DyckWord {
        pattern_to_dyck(self)
    }
}

impl fmt::Debug for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinkPattern{:?}", self.pairs())
    }
}

fn is_dyck(letters: impl Iterator<Item = u8>) -> bool {
    let mut depth = 0i64;
    for c in letters {
        match c {
            b'a' => depth += 1,
            b'b' => depth -= 1,
            _ => return false,
        }
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

/// A word over `{a, b}` in which every prefix has at least as many `a`s as
/// `b`s and the totals agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckWord(String);

impl DyckWord {
    pub fn new(word: &str) -> Result<DyckWord, LinkError> {
        if is_dyck(word.bytes()) {
            Ok(DyckWord(word.to_owned()))
        } else {
            Err(LinkError::MalformedDyck(word.to_owned()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for DyckWord {
    type Err = LinkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DyckWord::new(s)
    }
}

/// Length-N encoding of a half-turn symmetric pattern over `{a, b, c}`.
///
/// Even N: a bilateral Dyck word. Odd N: exactly one `c`, and writing the
/// word as `u c v`, the word `vu` is a Dyck word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HtWord(String);

impl HtWord {
    pub fn new(word: &str) -> Result<HtWord, LinkError> {
        let bad = || LinkError::MalformedHtWord(word.to_owned());
        let bytes = word.as_bytes();
        if bytes.is_empty() || bytes.iter().any(|c| !b"abc".contains(c)) {
            return Err(bad());
        }
        let count = |x: u8| bytes.iter().filter(|&&c| c == x).count();
        if count(b'a') != count(b'b') {
            return Err(bad());
        }
        if bytes.len() % 2 == 0 {
            if count(b'c') != 0 {
                return Err(bad());
            }
        } else {
            if count(b'c') != 1 {
                return Err(bad());
            }
            let k = bytes.iter().position(|&c| c == b'c').expect("one c");
            if !is_dyck(bytes[k + 1..].iter().chain(&bytes[..k]).copied()) {
                return Err(bad());
            }
        }
        Ok(HtWord(word.to_owned()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cyclic shift by one place to the right; the induced action of the
    /// label shift `i -> i+1` on words.
    pub fn rotate(&self) -> HtWord {
        let (head, last) = self.0.split_at(self.0.len() - 1);
        HtWord(format!("{last}{head}"))
    }
}

impl fmt::Display for HtWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for HtWord {
    type Err = LinkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HtWord::new(s)
    }
}

/// Reads the open-path pairing off an FPL; closed loops are ignored.
pub fn extract_link_pattern(f: &Fpl) -> LinkPattern {
    LinkPattern::from_pairs(&f.paths().pairs).expect("paths of a planar FPL do not cross")
}

pub fn pattern_to_dyck(p: &LinkPattern) -> DyckWord {
    let word = (0..p.partner.len())
        .map(|i| if i < p.partner[i] { 'a' } else { 'b' })
        .collect();
    DyckWord(word)
}

pub fn dyck_to_pattern(w: &DyckWord) -> LinkPattern {
    let mut partner = vec![0; w.0.len()];
    let mut stack = Vec::new();
    for (i, c) in w.0.bytes().enumerate() {
        if c == b'a' {
            stack.push(i);
        } else {
            let j = stack.pop().expect("validated Dyck word");
            partner[i] = j;
            partner[j] = i;
        }
    }
    LinkPattern { partner }
}

/// Encodes a half-turn symmetric pattern: letter `i` is `a` if the partner
/// of `i` lies strictly between `i` and `i+N`, `c` if it is `i+N`, else `b`.
pub fn ht_encode(p: &LinkPattern) -> Result<HtWord, LinkError> {
    if !p.is_half_turn_symmetric() {
        return Err(LinkError::NotHalfTurnSymmetric);
    }
    let n = p.n_arcs();
    let m = 2 * n;
    let word = (0..n)
        .map(|i| {
            let d = (p.partner[i] + m - i) % m;
            match d.cmp(&n) {
                std::cmp::Ordering::Less => 'a',
                std::cmp::Ordering::Equal => 'c',
                std::cmp::Ordering::Greater => 'b',
            }
        })
        .collect();
    Ok(HtWord(word))
}

/// Inverse of [`ht_encode`]: the word repeated twice is matched cyclically,
/// each `c` joined to the label opposite it.
pub fn ht_decode(w: &HtWord) -> LinkPattern {
    let n = w.len();
    let m = 2 * n;
    let letters: Vec<u8> = w.0.bytes().chain(w.0.bytes()).collect();
    let mut partner = vec![0; m];
    // Starting right after a minimum of the prefix sums makes the cyclic
    // word a linear Dyck word.
    let mut depth = 0i64;
    let mut best = (0i64, 0usize);
    for (i, &c) in letters.iter().enumerate() {
        match c {
            b'a' => depth += 1,
            b'b' => depth -= 1,
            _ => {
                partner[i] = (i + n) % m;
            }
        }
        if depth < best.0 {
            best = (depth, i + 1);
        }
    }
    let mut stack = Vec::new();
    for k in 0..m {
        let i = (best.1 + k) % m;
        match letters[i] {
            b'a' => stack.push(i),
            b'b' => {
                let j = stack.pop().expect("balanced cyclic word");
                partner[i] = j;
                partner[j] = i;
            }
            _ => {}
        }
    }
    LinkPattern { partner }
}

/// For a quarter-turn symmetric pattern, `w = w'w'`; returns `w'`.
pub fn qt_reduce(w: &HtWord) -> Result<HtWord, LinkError> {
    if w.len() % 4 != 0 {
        return Err(LinkError::BadLength { len: w.len(), expected: "a multiple of 4" });
    }
    let (x, y) = w.0.split_at(w.len() / 2);
    if x != y {
        return Err(LinkError::NotSquareWord(w.0.clone()));
    }
    Ok(HtWord(x.to_owned()))
}

/// For a quasi-quarter-turn symmetric pattern, `w` is `uavubv` or `ubvuav`
/// with `vu` a Dyck word; returns `ucv`.
pub fn qqt_reduce(w: &HtWord) -> Result<HtWord, LinkError> {
    if w.len() % 4 != 2 {
        return Err(LinkError::BadLength { len: w.len(), expected: "2 modulo 4" });
    }
    let bad = || LinkError::BadFactorization(w.0.clone());
    let (x, y) = w.0.as_bytes().split_at(w.len() / 2);
    let diffs: Vec<usize> = (0..x.len()).filter(|&k| x[k] != y[k]).collect();
    let &[k] = diffs.as_slice() else {
        return Err(bad());
    };
    if !matches!((x[k], y[k]), (b'a', b'b') | (b'b', b'a')) {
        return Err(bad());
    }
    let (u, v) = (&x[..k], &x[k + 1..]);
    if !is_dyck(v.iter().chain(u).copied()) {
        return Err(bad());
    }
    let mut out = x.to_vec();
    out[k] = b'c';
    Ok(HtWord(String::from_utf8(out).expect("ascii")))
}

/// Temperley-Lieb generator `e_i`, 1-based and cyclic: joins `i` and `i+1`
/// and joins their former partners.
pub fn apply_e(i: usize, p: &LinkPattern) -> LinkPattern {
    let m = p.partner.len();
    let a = (i + m - 1) % m;
    let b = (a + 1) % m;
    if p.partner[a] == b {
        return p.clone();
    }
    let (j, k) = (p.partner[a], p.partner[b]);
    let mut partner = p.partner.clone();
    partner[a] = b;
    partner[b] = a;
    partner[j] = k;
    partner[k] = j;
    LinkPattern { partner }
}

/// Symmetrized generator `e'_i = e_i e_{i+N}` on half-turn symmetric patterns.
pub fn apply_e_sym(i: usize, p: &LinkPattern) -> Result<LinkPattern, LinkError> {
    if !p.is_half_turn_symmetric() {
        return Err(LinkError::NotHalfTurnSymmetric);
    }
    Ok(apply_e(i, &apply_e(i + p.n_arcs(), p)))
}

/// All Dyck words with `n` letters `a`, in lexicographic order.
pub fn all_dyck_words(n: usize) -> Vec<DyckWord> {
    fn grow(open: usize, close: usize, n: usize, cur: &mut String, out: &mut Vec<DyckWord>) {
        if cur.len() == 2 * n {
            out.push(DyckWord(cur.clone()));
            return;
        }
        if open < n {
            cur.push('a');
            grow(open + 1, close, n, cur, out);
            cur.pop();
        }
        if close < open {
            cur.push('b');
            grow(open, close + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    grow(0, 0, n, &mut String::new(), &mut out);
    out
}

/// All length-`n` half-turn words, in lexicographic order.
pub fn all_ht_words(n: usize) -> Vec<HtWord> {
    let alphabet: &[char] = if n % 2 == 0 { &['a', 'b'] } else { &['a', 'b', 'c'] };
    let mut words = vec![String::new()];
    for _ in 0..n {
        words = words
            .into_iter()
            .flat_map(|w| alphabet.iter().map(move |&c| format!("{w}{c}")))
            .collect();
    }
    words.into_iter().filter_map(|w| HtWord::new(&w).ok()).collect()
}
