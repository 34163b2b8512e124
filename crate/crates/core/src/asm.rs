//! Alternating-sign matrices.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A row or a column of a square matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Column(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row(i) => write!(f, "row {i}"),
            Line::Column(j) => write!(f, "column {j}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AsmError {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square (row {row} has length {len}, expected {expected})")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({row},{col}) = {value} is not in {{-1,0,1}}")]
    EntryOutOfRange { row: usize, col: usize, value: i64 },
    #[error("alternating-sign condition violated in {0}")]
    AlternationViolated(Line),
    #[error("unexpected character {0:?} in serialized matrix")]
    BadCharacter(char),
}

/// A square matrix over {-1, 0, 1} whose nonzero entries alternate in sign
/// along every row and column, starting and ending with +1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Asm {
    n: usize,
    entries: Vec<i8>,
}

fn check_line(values: impl Iterator<Item = i8>) -> bool {
    let mut partial = 0i8;
    for v in values {
        partial += v;
        if !(0..=1).contains(&partial) {
            return false;
        }
    }
    partial == 1
}

impl Asm {
    /// Validates an integer matrix. This is the only public constructor.
    pub fn validate<R: AsRef<[i64]>>(rows: &[R]) -> Result<Asm, AsmError> {
        let n = rows.len();
        if n == 0 {
            return Err(AsmError::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(AsmError::NotSquare { row: i, len: row.len(), expected: n });
            }
            for (j, &v) in row.iter().enumerate() {
                if !(-1..=1).contains(&v) {
                    return Err(AsmError::EntryOutOfRange { row: i, col: j, value: v });
                }
                entries.push(v as i8);
            }
        }
        Asm::from_entries(n, entries)
    }

    pub(crate) fn from_entries(n: usize, entries: Vec<i8>) -> Result<Asm, AsmError> {
        debug_assert_eq!(entries.len(), n * n);
        for i in 0..n {
            if !check_line((0..n).map(|j| entries[i * n + j])) {
                return Err(AsmError::AlternationViolated(Line::Row(i)));
            }
        }
        for j in 0..n {
            if !check_line((0..n).map(|i| entries[i * n + j])) {
                return Err(AsmError::AlternationViolated(Line::Column(j)));
            }
        }
        Ok(Asm { n, entries })
    }

    /// Caller guarantees validity; checked in debug builds.
    pub(crate) fn from_entries_unchecked(n: usize, entries: Vec<i8>) -> Asm {
        debug_assert!(Asm::from_entries(n, entries.clone()).is_ok());
        Asm { n, entries }
    }

    pub fn identity(n: usize) -> Asm {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Asm { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.rows().map(|r| r.iter().map(|&v| v as i64).collect()).collect()
    }

    /// Column index of the unique +1 in the first row.
    pub fn first_row_index(&self) -> usize {
        self.entries[..self.n]
            .iter()
            .position(|&v| v == 1)
            .expect("first row of an ASM contains a single 1")
    }

    /// Clockwise quarter turn: `new[i][j] = old[n-1-j][i]`.
    pub fn rotate_quarter(&self) -> Asm {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.get(n - 1 - j, i);
            }
        }
        Asm { n, entries }
    }

    pub fn rotate_half(&self) -> Asm {
        let mut entries = self.entries.clone();
        entries.reverse();
        Asm { n: self.n, entries }
    }

    /// Mirror image under the left-right reflection.
    pub fn reflect_columns(&self) -> Asm {
        let n = self.n;
        let entries = self
            .rows()
            .flat_map(|r| r.iter().rev().copied())
            .collect();
        Asm { n, entries }
    }

    pub fn is_half_turn_symmetric(&self) -> bool {
        self.entries.iter().eq(self.entries.iter().rev())
    }

    pub fn is_quarter_turn_symmetric(&self) -> bool {
        *self == self.rotate_quarter()
    }

    /// Rows of `+`, `0`, `-` joined by newlines.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.n * (self.n + 1));
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.extend(row.iter().map(|&v| match v {
                1 => '+',
                -1 => '-',
                _ => '0',
            }));
        }
        out
    }
}

impl FromStr for Asm {
    type Err = AsmError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|line| {
                line.chars()
                    .map(|c| match c {
                        '+' => Ok(1),
                        '0' => Ok(0),
                        '-' => Ok(-1),
                        other => Err(AsmError::BadCharacter(other)),
                    })
                    .collect::<Result<Vec<i64>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Asm::validate(&rows)
    }
}

impl fmt::Debug for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Asm[{}]", self.to_text().replace('\n', "/"))
    }
}

impl fmt::Display for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_matrices() {
        let one = Asm::validate(&[[1i64]]).unwrap();
        assert_eq!(one.n(), 1);
        assert_eq!(one.first_row_index(), 0);
        let swap = Asm::validate(&[[0i64, 1], [1, 0]]).unwrap();
        assert_eq!(swap.n(), 2);
        assert_eq!(swap.first_row_index(), 1);
        assert_eq!(Asm::identity(3).first_row_index(), 0);
    }

    #[test]
    fn rejects_bad_row_sum() {
        let err = Asm::validate(&[[1i64, -1], [0, 1]]).unwrap_err();
        assert_eq!(err, AsmError::AlternationViolated(Line::Row(0)));
    }

    #[test]
    fn rejects_shape_and_range() {
        assert_eq!(
            Asm::validate(&[vec![1i64, 0], vec![0]]).unwrap_err(),
            AsmError::NotSquare { row: 1, len: 1, expected: 2 }
        );
        assert_eq!(
            Asm::validate(&[[2i64]]).unwrap_err(),
            AsmError::EntryOutOfRange { row: 0, col: 0, value: 2 }
        );
        let empty: [[i64; 0]; 0] = [];
        assert_eq!(Asm::validate(&empty).unwrap_err(), AsmError::Empty);
    }

    #[test]
    fn rejects_column_violation() {
        let ok = Asm::validate(&[[0i64, 1, 0], [1, -1, 1], [0, 1, 0]]).unwrap();
        assert_eq!(ok.get(1, 1), -1);
        let err = Asm::validate(&[[0i64, 0, 1], [0, 1, 0], [0, 0, 1]]).unwrap_err();
        assert_eq!(err, AsmError::AlternationViolated(Line::Column(0)));
    }

    #[test]
    fn text_round_trip() {
        let a = Asm::validate(&[[0i64, 1, 0], [1, -1, 1], [0, 1, 0]]).unwrap();
        assert_eq!(a.to_text(), "0+0\n+-+\n0+0");
        assert_eq!(a.to_text().parse::<Asm>().unwrap(), a);
        assert_eq!("0x".parse::<Asm>().unwrap_err(), AsmError::BadCharacter('x'));
    }

    #[test]
    fn rotations_compose() {
        let a = Asm::validate(&[[0i64, 1, 0, 0], [1, -1, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]]).unwrap();
        let r = a.rotate_quarter();
        assert_eq!(r.rotate_quarter(), a.rotate_half());
        assert_eq!(r.rotate_quarter().rotate_quarter().rotate_quarter(), a);
        assert!(Asm::validate(&r.to_rows()).is_ok());
    }
}
