use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::WordError;

/// One of the two standard generators attached to a handle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    A,
    B,
}

/// A generator `a_k`/`b_k` of the surface group, or its inverse.
///
/// Handles are 1-based. Ordering is `a1 < A1 < b1 < B1 < a2 < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub kind: GenKind,
    pub handle: u16,
    pub inverse: bool,
}

impl Letter {
    pub fn new(kind: GenKind, handle: u16, inverse: bool) -> Self {
        Self { kind, handle, inverse }
    }

    pub fn a(handle: u16) -> Self {
        Self::new(GenKind::A, handle, false)
    }

    pub fn b(handle: u16) -> Self {
        Self::new(GenKind::B, handle, false)
    }

    pub fn inv(self) -> Self {
        Self { inverse: !self.inverse, ..self }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.kind == other.kind && self.handle == other.handle && self.inverse != other.inverse
    }

    /// Dense index in the letter order, starting at 0 for `a1`.
    pub fn rank(self) -> usize {
        let h = (self.handle as usize).saturating_sub(1);
        let k = match self.kind {
            GenKind::A => 0,
            GenKind::B => 2,
        };
        4 * h + k + self.inverse as usize
    }

    pub fn from_rank(rank: usize) -> Self {
        let handle = (rank / 4 + 1) as u16;
        let kind = if rank % 4 < 2 { GenKind::A } else { GenKind::B };
        Self::new(kind, handle, rank % 2 == 1)
    }

    pub(crate) fn fmt_with(self, f: &mut impl fmt::Write, show_handle: bool) -> fmt::Result {
        let c = match (self.kind, self.inverse) {
            (GenKind::A, false) => 'a',
            (GenKind::A, true) => 'A',
            (GenKind::B, false) => 'b',
            (GenKind::B, true) => 'B',
        };
        if show_handle {
            write!(f, "{}{}", c, self.handle)
        } else {
            write!(f, "{}", c)
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, true)
    }
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(tok: &str) -> Result<Self, Self::Err> {
        let mut chars = tok.chars();
        let head = chars.next().ok_or_else(|| WordError::BadToken(tok.to_string()))?;
        let (kind, inverse) = match head {
            'a' => (GenKind::A, false),
            'A' => (GenKind::A, true),
            'b' => (GenKind::B, false),
            'B' => (GenKind::B, true),
            _ => return Err(WordError::BadToken(tok.to_string())),
        };
        let rest = chars.as_str();
        let handle = if rest.is_empty() {
            1
        } else {
            rest.parse::<u16>().map_err(|_| WordError::BadToken(tok.to_string()))?
        };
        if handle == 0 {
            return Err(WordError::BadToken(tok.to_string()));
        }
        Ok(Letter::new(kind, handle, inverse))
    }
}

/// A finite sequence of letters. Not necessarily reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word::new(self.letters.iter().rev().map(|l| l.inv()).collect())
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word::new(letters)
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.letters.extend_from_slice(&other.letters);
    }

    pub fn split_at(&self, k: usize) -> (Word, Word) {
        let (l, r) = self.letters.split_at(k);
        (Word::new(l.to_vec()), Word::new(r.to_vec()))
    }

    pub fn rotated(&self, k: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        let mut v = self.letters[k..].to_vec();
        v.extend_from_slice(&self.letters[..k]);
        Word::new(v)
    }

    /// Largest handle index used, 0 for the empty word.
    pub fn max_handle(&self) -> u16 {
        self.letters.iter().map(|l| l.handle).max().unwrap_or(0)
    }

    /// Exponent sums `(a1, b1, a2, b2, ...)` for `genus` handles.
    pub fn abelianize(&self, genus: usize) -> Vec<i64> {
        let mut v = vec![0i64; 2 * genus];
        for l in &self.letters {
            let h = l.handle as usize - 1;
            if h >= genus {
                continue;
            }
            let idx = 2 * h + matches!(l.kind, GenKind::B) as usize;
            v[idx] += if l.inverse { -1 } else { 1 };
        }
        v
    }

    pub fn free_reduce(&self) -> Word {
        Word::new(free_reduce_letters(&self.letters))
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].is_inverse_of(w[1]))
    }

    /// Freely reduces, then strips matching first/last inverse pairs.
    pub fn cyclic_reduce(&self) -> Word {
        let mut v = free_reduce_letters(&self.letters);
        let mut lo = 0;
        let mut hi = v.len();
        while hi - lo >= 2 && v[lo].is_inverse_of(v[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        v.truncate(hi);
        v.drain(..lo);
        Word::new(v)
    }

    /// Renders with or without handle indices (the latter only makes sense at genus 1).
    pub fn render(&self, show_handle: bool) -> String {
        let mut s = String::new();
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            l.fmt_with(&mut s, show_handle).expect("writing to a String");
        }
        s
    }
}

pub(crate) fn free_reduce_letters(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last().is_some_and(|&t| t.is_inverse_of(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(Letter::from_str)
            .collect::<Result<Vec<_>, _>>()
            .map(Word::new)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word::new(letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(w("a1 B2 a1").to_string(), "a1 B2 a1");
        assert_eq!(w("a B").render(true), "a1 B1");
        assert_eq!(w("a B").render(false), "a B");
        assert!(w("").is_empty());
        assert!("c1".parse::<Word>().is_err());
        assert!("a0".parse::<Word>().is_err());
        assert!("ax".parse::<Word>().is_err());
    }

    #[test]
    fn letter_order() {
        let order = ["a1", "A1", "b1", "B1", "a2", "A2", "b2", "B2", "a3"];
        let letters: Vec<Letter> = order.iter().map(|t| t.parse().unwrap()).collect();
        for pair in letters.windows(2) {
            assert!(pair[0] < pair[1], "{} < {}", pair[0], pair[1]);
        }
        for (i, l) in letters.iter().enumerate() {
            assert_eq!(l.rank(), i);
            assert_eq!(Letter::from_rank(i), *l);
        }
    }

    #[test]
    fn free_reduction_examples() {
        assert_eq!(w("a1 A1").free_reduce(), w(""));
        assert_eq!(w("a1 b1 B1 a1").free_reduce(), w("a1 a1"));
        assert_eq!(w("a1 b1").free_reduce(), w("a1 b1"));
        let r = w("a1 b1 B1 A1 b2 a1 A1 B2 a2").free_reduce();
        assert_eq!(r, w("a2"));
        assert_eq!(r.free_reduce(), r);
    }

    #[test]
    fn cyclic_reduction_examples() {
        assert_eq!(w("a1 b1 A1").cyclic_reduce(), w("b1"));
        assert_eq!(w("").cyclic_reduce(), w(""));
        assert_eq!(w("a1 b1").cyclic_reduce(), w("a1 b1"));
        assert_eq!(w("b1 a1 a2 A1 B1").cyclic_reduce(), w("a2"));
        assert_eq!(w("a1 A1").cyclic_reduce(), w(""));
    }

    #[test]
    fn abelianization() {
        assert_eq!(w("a1 b1 A1 B1").abelianize(1), vec![0, 0]);
        assert_eq!(w("a1 a1 B2").abelianize(2), vec![2, 0, 0, -1]);
    }
}
