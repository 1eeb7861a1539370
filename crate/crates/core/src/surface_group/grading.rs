use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};

use super::conjugacy::ConjClass;

/// An element of the grading group: a finite integer combination of nontrivial
/// free-homotopy classes. The trivial class is zero and never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradingElem {
    terms: BTreeMap<ConjClass, i64>,
}

impl GradingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `k * [c]`; zero when `c` is trivial or `k == 0`.
    pub fn term(c: ConjClass, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_trivial() && k != 0 {
            terms.insert(c, k);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, c: &ConjClass) -> i64 {
        self.terms.get(c).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ConjClass, i64)> {
        self.terms.iter().map(|(c, &k)| (c, k))
    }

    pub fn add_term(&mut self, c: &ConjClass, k: i64) {
        if c.is_trivial() || k == 0 {
            return;
        }
        let e = self.terms.entry(c.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.terms.remove(c);
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(c, &v)| (c.clone(), v * k)).collect() }
    }

    /// `-1*[a] + 2*[a b]`, or `0`.
    pub fn render(&self, genus: usize) -> String {
        self.render_with(|c| c.render(genus))
    }

    /// Torus rendering with classes as `(p,q)`: `2*(1,0)`.
    pub fn render_torus(&self) -> String {
        self.render_with(|c| {
            let (p, q) = c.torus_pair();
            format!("({},{})", p, q)
        })
    }

    fn render_with(&self, class: impl Fn(&ConjClass) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = self.terms.iter().map(|(c, k)| format!("{}*{}", k, class(c))).collect();
        parts.sort();
        parts.join(" + ")
    }
}

impl Add for &GradingElem {
    type Output = GradingElem;

    fn add(self, rhs: &GradingElem) -> GradingElem {
        let mut out = self.clone();
        for (c, k) in rhs.terms() {
            out.add_term(c, k);
        }
        out
    }
}

impl Add for GradingElem {
    type Output = GradingElem;

    fn add(self, rhs: GradingElem) -> GradingElem {
        &self + &rhs
    }
}

impl Neg for &GradingElem {
    type Output = GradingElem;

    fn neg(self) -> GradingElem {
        self.scaled(-1)
    }
}

impl Neg for GradingElem {
    type Output = GradingElem;

    fn neg(self) -> GradingElem {
        self.scaled(-1)
    }
}

impl Sub for &GradingElem {
    type Output = GradingElem;

    fn sub(self, rhs: &GradingElem) -> GradingElem {
        self + &(-rhs)
    }
}

impl Serialize for GradingElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let genus = self.terms.keys().map(|c| c.word().max_handle() as usize).max().unwrap_or(0);
        s.serialize_str(&self.render(genus))
    }
}
