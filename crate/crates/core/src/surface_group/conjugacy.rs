//! Triviality and canonical free-homotopy classes (conjugacy up to inversion).

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use super::dehn::{cyclic_dehn_reduce, dehn_reduce_with, replace_cyclic, Relator};
use super::word::{Letter, Word};
use crate::error::WordError;

/// How words are decided on a surface of a given genus.
#[derive(Clone, Debug)]
pub enum SurfaceBackend {
    /// Genus 0: every loop is contractible.
    Sphere,
    /// Genus 1: `pi_1` is `Z^2`, decided by abelianization.
    Torus,
    /// Genus `>= 2`: Dehn's algorithm.
    Hyperbolic(Relator),
}

/// Canonical representative of the class of a free loop, identified with its
/// reverse. The canonical word is empty iff the class is trivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjClass {
    canonical_word: Word,
    trivial: bool,
}

impl ConjClass {
    pub fn trivial() -> Self {
        Self { canonical_word: Word::empty(), trivial: true }
    }

    pub fn word(&self) -> &Word {
        &self.canonical_word
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    /// The `(p, q)` pair of a torus class (the word is `a^p b^q`).
    pub fn torus_pair(&self) -> (i64, i64) {
        let v = self.canonical_word.abelianize(1);
        (v[0], v[1])
    }

    /// `[word]`, omitting handle indices when all letters are on handle 1.
    pub fn render(&self, genus: usize) -> String {
        if self.trivial {
            return "[]".to_string();
        }
        format!("[{}]", self.canonical_word.render(genus > 1))
    }
}

impl fmt::Display for ConjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.canonical_word)
    }
}

impl SurfaceBackend {
    pub fn for_genus(genus: usize) -> Self {
        match genus {
            0 => SurfaceBackend::Sphere,
            1 => SurfaceBackend::Torus,
            g => SurfaceBackend::Hyperbolic(Relator::new(g).expect("genus >= 2")),
        }
    }

    pub fn genus(&self) -> usize {
        match self {
            SurfaceBackend::Sphere => 0,
            SurfaceBackend::Torus => 1,
            SurfaceBackend::Hyperbolic(r) => r.genus(),
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<(), WordError> {
        let genus = self.genus();
        match w.letters().iter().find(|l| l.handle as usize > genus) {
            Some(l) => Err(WordError::HandleOutOfRange { handle: l.handle, genus }),
            None => Ok(()),
        }
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool, WordError> {
        self.check_word(w)?;
        Ok(match self {
            SurfaceBackend::Sphere => true,
            SurfaceBackend::Torus => w.abelianize(1).iter().all(|&x| x == 0),
            SurfaceBackend::Hyperbolic(rel) => {
                Word::new(dehn_reduce_with(rel, w.letters())).cyclic_reduce().is_empty()
            }
        })
    }

    pub fn canonical_class(&self, w: &Word) -> Result<ConjClass, WordError> {
        self.check_word(w)?;
        let canonical = match self {
            SurfaceBackend::Sphere => Word::empty(),
            SurfaceBackend::Torus => {
                let v = w.abelianize(1);
                let (mut p, mut q) = (v[0], v[1]);
                if p < 0 || (p == 0 && q < 0) {
                    p = -p;
                    q = -q;
                }
                let mut letters = Vec::new();
                letters.extend(std::iter::repeat(Letter::a(1)).take(p as usize));
                let b = if q < 0 { Letter::b(1).inv() } else { Letter::b(1) };
                letters.extend(std::iter::repeat(b).take(q.unsigned_abs() as usize));
                Word::new(letters)
            }
            SurfaceBackend::Hyperbolic(rel) => hyperbolic_canonical(rel, w.letters()),
        };
        Ok(ConjClass { trivial: canonical.is_empty(), canonical_word: canonical })
    }
}

/// Lexicographically least rotation of a cyclic word.
pub(crate) fn least_rotation(w: &[Letter]) -> Vec<Letter> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    (0..n)
        .map(|k| w[k..].iter().chain(&w[..k]).copied().collect::<Vec<_>>())
        .min()
        .expect("nonempty")
}

/// All cyclic words of minimal length conjugate to `w`, each as its least rotation.
///
/// Starting from a cyclically Dehn-reduced word `u`, any other cyclically
/// Dehn-reduced conjugate of no greater length is reachable by replacing one
/// relator piece at a time by its complement, with every intermediate word of
/// length at most `|u| + 2` (the two words bound a one-layer annular diagram
/// whose boundary pieces have length at most one). Whenever a shorter word
/// shows up the search restarts from it with the tighter bound.
pub(crate) fn minimal_conjugates(rel: &Relator, w: &[Letter]) -> BTreeSet<Vec<Letter>> {
    let mut start = cyclic_dehn_reduce(rel, w);
    'restart: loop {
        if start.is_empty() {
            return BTreeSet::from([Vec::new()]);
        }
        let best = start.len();
        let cap = best + 2;
        let mut seen: HashSet<Vec<Letter>> = HashSet::new();
        let mut queue = VecDeque::new();
        let root = least_rotation(&start);
        seen.insert(root.clone());
        queue.push_back(root);
        while let Some(cur) = queue.pop_front() {
            let n = cur.len();
            for s in 0..n {
                // a shorter prefix of a maximal piece collapses to the maximal one after
                // free reduction, so only maximal pieces need replacing
                for m in rel.matches_at(&cur, s, true).into_iter().flatten() {
                    let with = rel.complement(&m, m.len);
                    let next = Word::new(replace_cyclic(&cur, s, m.len, &with)).cyclic_reduce().into_letters();
                    if next.len() > cap {
                        continue;
                    }
                    if next.len() < best {
                        start = cyclic_dehn_reduce(rel, &next);
                        continue 'restart;
                    }
                    let key = least_rotation(&next);
                    if seen.insert(key.clone()) {
                        queue.push_back(key);
                    }
                }
            }
        }
        return seen.into_iter().filter(|v| v.len() == best).collect();
    }
}

fn hyperbolic_canonical(rel: &Relator, w: &[Letter]) -> Word {
    let forward = minimal_conjugates(rel, w);
    let best_forward = forward.iter().next().cloned().unwrap_or_default();
    if best_forward.is_empty() {
        return Word::empty();
    }
    let best_inverse = forward
        .iter()
        .map(|v| {
            let inv: Vec<Letter> = v.iter().rev().map(|l| l.inv()).collect();
            least_rotation(&inv)
        })
        .min()
        .expect("nonempty");
    Word::new(best_forward.min(best_inverse))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn triviality_by_backend() {
        let torus = SurfaceBackend::for_genus(1);
        assert!(torus.is_trivial(&w("a1 b1 A1 B1")).unwrap());
        assert!(!torus.is_trivial(&w("a1")).unwrap());
        let sphere = SurfaceBackend::for_genus(0);
        assert!(sphere.is_trivial(&Word::empty()).unwrap());
        let g2 = SurfaceBackend::for_genus(2);
        assert!(g2.is_trivial(&w("a1 b1 A1 B1 a2 b2 A2 B2")).unwrap());
        assert!(!g2.is_trivial(&w("b1 a1 B1 A1")).unwrap());
        assert!(!g2.is_trivial(&w("a1 b1 A1 B1")).unwrap());
    }

    #[test]
    fn sphere_rejects_letters() {
        let sphere = SurfaceBackend::for_genus(0);
        assert!(matches!(sphere.is_trivial(&w("a1")), Err(WordError::HandleOutOfRange { .. })));
        let torus = SurfaceBackend::for_genus(1);
        assert!(torus.canonical_class(&w("a2")).is_err());
    }

    #[test]
    fn torus_classes() {
        let torus = SurfaceBackend::for_genus(1);
        let a = torus.canonical_class(&w("a1")).unwrap();
        assert_eq!(torus.canonical_class(&w("b1 a1 B1")).unwrap(), a);
        assert_eq!(torus.canonical_class(&w("A1")).unwrap(), a);
        assert_eq!(a.word(), &w("a1"));
        let c = torus.canonical_class(&w("B1 a1 a1")).unwrap();
        assert_eq!(c.torus_pair(), (2, -1));
        let d = torus.canonical_class(&w("B1")).unwrap();
        assert_eq!(d.torus_pair(), (0, 1));
        assert!(torus.canonical_class(&w("a1 A1")).unwrap().is_trivial());
    }

    #[test]
    fn hyperbolic_rotation_and_inversion() {
        let g2 = SurfaceBackend::for_genus(2);
        let x = g2.canonical_class(&w("a1 b1")).unwrap();
        let y = g2.canonical_class(&w("B1 A1")).unwrap();
        assert_eq!(x, y);
        assert_eq!(g2.canonical_class(&w("b1 a1 B1")).unwrap(), g2.canonical_class(&w("a1")).unwrap());
        assert_ne!(g2.canonical_class(&w("a1")).unwrap(), g2.canonical_class(&w("b1")).unwrap());
        assert!(g2.canonical_class(&w("a2 b2 A2 B2 a1 b1 A1 B1")).unwrap().is_trivial());
    }

    #[test]
    fn half_relator_words_share_a_class() {
        // a1 b1 A1 B1 = (a2 b2 A2 B2)^-1 in the group
        let g2 = SurfaceBackend::for_genus(2);
        let x = g2.canonical_class(&w("a1 b1 A1 B1")).unwrap();
        let y = g2.canonical_class(&w("b2 a2 B2 A2")).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.word().len(), 4);
    }
}
