//! Dehn's algorithm for the standard one-relator presentation
//! `<a1, b1, ..., ag, bg | [a1,b1]...[ag,bg]>` with `g >= 2`.
//!
//! Every generator letter occurs exactly once in the relator `R`, so a letter
//! fixes its position in `R` (and in `R^-1`). Matching a relator piece starting
//! at a given position of a word therefore has at most two candidates.

use super::word::{free_reduce_letters, Letter, Word};
use crate::error::GroupError;

/// The surface relator and lookup tables for relator-subword matching.
#[derive(Clone, Debug)]
pub struct Relator {
    genus: usize,
    /// `R` and `R^-1` as cyclic words.
    cycles: [Vec<Letter>; 2],
    /// `pos[c][rank]` = position of the letter with that rank in `cycles[c]`.
    pos: [Vec<usize>; 2],
}

/// A relator subword found inside a (cyclic or linear) word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PieceMatch {
    /// Start position in the word.
    pub start: usize,
    /// Matched length.
    pub len: usize,
    /// Which cyclic relator (0 = `R`, 1 = `R^-1`).
    pub cycle: usize,
    /// Position in that cyclic relator where the match begins.
    pub offset: usize,
}

impl Relator {
    pub fn new(genus: usize) -> Result<Self, GroupError> {
        if genus < 2 {
            return Err(GroupError::UnsupportedBackend { genus });
        }
        let mut r = Vec::with_capacity(4 * genus);
        for h in 1..=genus as u16 {
            let (a, b) = (Letter::a(h), Letter::b(h));
            r.extend([a, b, a.inv(), b.inv()]);
        }
        let r_inv: Vec<Letter> = r.iter().rev().map(|l| l.inv()).collect();
        let index = |c: &Vec<Letter>| {
            let mut p = vec![usize::MAX; 4 * genus];
            for (i, l) in c.iter().enumerate() {
                p[l.rank()] = i;
            }
            p
        };
        let pos = [index(&r), index(&r_inv)];
        Ok(Self { genus, cycles: [r, r_inv], pos })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Length of the relator, `4g`.
    pub fn len(&self) -> usize {
        4 * self.genus
    }

    pub fn word(&self) -> Word {
        Word::new(self.cycles[0].clone())
    }

    fn letter_at(&self, cycle: usize, i: usize) -> Letter {
        let n = self.len();
        self.cycles[cycle][i % n]
    }

    /// Longest relator matches starting at `start` in `w`, one per cycle.
    /// With `cyclic`, the word is read cyclically (matches may wrap, up to `|w|`).
    pub fn matches_at(&self, w: &[Letter], start: usize, cyclic: bool) -> [Option<PieceMatch>; 2] {
        let mut out = [None, None];
        let n = self.len();
        let first = w[start];
        if first.handle as usize > self.genus {
            return out;
        }
        let limit = if cyclic { w.len().min(n) } else { (w.len() - start).min(n) };
        for (c, slot) in out.iter_mut().enumerate() {
            let offset = self.pos[c][first.rank()];
            let mut len = 0;
            while len < limit && w[(start + len) % w.len()] == self.letter_at(c, offset + len) {
                len += 1;
            }
            if len > 0 {
                *slot = Some(PieceMatch { start, len, cycle: c, offset });
            }
        }
        out
    }

    /// The word equal (in the group) to the matched piece of length `len`:
    /// the inverse of the complementary part of the cyclic relator.
    pub fn complement(&self, m: &PieceMatch, len: usize) -> Vec<Letter> {
        let n = self.len();
        // relator rotation = piece · rest, so piece = rest^-1
        let rest_start = m.offset + len;
        let rest: Vec<Letter> = (0..n - len).map(|i| self.letter_at(m.cycle, rest_start + i)).collect();
        rest.iter().rev().map(|l| l.inv()).collect()
    }
}

fn replace_linear(w: &[Letter], start: usize, len: usize, with: &[Letter]) -> Vec<Letter> {
    let mut v = Vec::with_capacity(w.len() - len + with.len());
    v.extend_from_slice(&w[..start]);
    v.extend_from_slice(with);
    v.extend_from_slice(&w[start + len..]);
    free_reduce_letters(&v)
}

/// Rotates `w` so the match starts at 0, then replaces it. Result is freely reduced
/// but not necessarily cyclically reduced.
pub(crate) fn replace_cyclic(w: &[Letter], start: usize, len: usize, with: &[Letter]) -> Vec<Letter> {
    let n = w.len();
    let mut v = Vec::with_capacity(n - len + with.len());
    v.extend_from_slice(with);
    for i in len..n {
        v.push(w[(start + i) % n]);
    }
    free_reduce_letters(&v)
}

/// Dehn reduction of a linear word.
///
/// Repeatedly replaces any subword longer than half the relator by its shorter
/// complement. Once no such subword remains, a subword of exactly half length
/// is swapped for its complement when the complement is lexicographically
/// smaller. Terminates since `(length, lex order)` strictly decreases.
pub fn dehn_reduce(w: &Word, genus: usize) -> Result<Word, GroupError> {
    let rel = Relator::new(genus)?;
    Ok(Word::new(dehn_reduce_with(&rel, w.letters())))
}

pub(crate) fn dehn_reduce_with(rel: &Relator, w: &[Letter]) -> Vec<Letter> {
    let half = 2 * rel.genus();
    let mut cur = free_reduce_letters(w);
    'outer: loop {
        let mut tie: Option<(PieceMatch, Vec<Letter>)> = None;
        for start in 0..cur.len() {
            for m in rel.matches_at(&cur, start, false).into_iter().flatten() {
                if m.len > half {
                    let with = rel.complement(&m, m.len);
                    cur = replace_linear(&cur, start, m.len, &with);
                    continue 'outer;
                }
                if m.len == half && tie.is_none() {
                    let with = rel.complement(&m, half);
                    if with.as_slice() < &cur[start..start + half] {
                        tie = Some((m, with));
                    }
                }
            }
        }
        match tie {
            Some((m, with)) => cur = replace_linear(&cur, m.start, half, &with),
            None => return cur,
        }
    }
}

/// Cyclic Dehn reduction: cyclically reduces and removes every cyclic subword
/// longer than half the relator. The result is cyclically reduced and has no
/// cyclic relator piece of length `> 2g`.
pub(crate) fn cyclic_dehn_reduce(rel: &Relator, w: &[Letter]) -> Vec<Letter> {
    let half = 2 * rel.genus();
    let mut cur = Word::new(w.to_vec()).cyclic_reduce().into_letters();
    'outer: loop {
        for start in 0..cur.len() {
            for m in rel.matches_at(&cur, start, true).into_iter().flatten() {
                if m.len > half {
                    let with = rel.complement(&m, m.len);
                    let next = replace_cyclic(&cur, start, m.len, &with);
                    cur = Word::new(next).cyclic_reduce().into_letters();
                    continue 'outer;
                }
            }
        }
        return cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn relator_reduces_to_empty() {
        assert_eq!(dehn_reduce(&w("a1 b1 A1 B1 a2 b2 A2 B2"), 2).unwrap(), w(""));
        assert_eq!(dehn_reduce(&w("b2 a2 B2 A2 b1 a1 B1 A1"), 2).unwrap(), w(""));
        // a cyclic rotation of the relator
        assert_eq!(dehn_reduce(&w("A1 B1 a2 b2 A2 B2 a1 b1"), 2).unwrap(), w(""));
    }

    #[test]
    fn short_words_are_fixed() {
        assert_eq!(dehn_reduce(&w("a1"), 2).unwrap(), w("a1"));
        assert_eq!(dehn_reduce(&w("b1 a1 B1"), 2).unwrap(), w("b1 a1 B1"));
    }

    #[test]
    fn long_piece_is_replaced() {
        // five letters of R are replaced by the inverse of the other three
        let r = dehn_reduce(&w("a1 b1 A1 B1 a2"), 2).unwrap();
        assert_eq!(r, w("b2 a2 B2"));
    }

    #[test]
    fn exact_half_takes_smaller_complement() {
        // b2 A2 B2 a1 has complement (b1 A1 B1 a2)^-1 = A2 b1 a1 B1
        let r = dehn_reduce(&w("b2 A2 B2 a1"), 2).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r <= w("b2 A2 B2 a1"));
    }

    #[test]
    fn low_genus_is_unsupported() {
        assert!(matches!(dehn_reduce(&w("a1"), 1), Err(GroupError::UnsupportedBackend { genus: 1 })));
    }

    #[test]
    fn cyclic_reduction_sees_wraparound() {
        let rel = Relator::new(2).unwrap();
        // rotation of R split across the end of the word
        let v = cyclic_dehn_reduce(&rel, w("A2 B2 a1 b1 A1 B1 a2 b2").letters());
        assert!(v.is_empty());
        let v = cyclic_dehn_reduce(&rel, w("B2 a1 b1 A1 B1 a2").letters());
        assert!(v.len() < 6);
    }
}
