//! Homology of the sliced complex and its reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use rayon::prelude::*;
use serde_json::json;

use crate::diagram::Diagram;
use crate::error::KhError;
use crate::khovanov::{build_complex, ChainComplex, Flavor, KhOptions};
use crate::surface_group::{ConjClass, GradingElem};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomologyEntry {
    pub i: i64,
    pub j: i64,
    pub h: GradingElem,
    pub dim: usize,
}

/// Nonzero homology groups by `(i, j, h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub genus: usize,
    pub flavor: Flavor,
    pub groups: BTreeMap<(i64, i64, GradingElem), usize>,
}

impl HomologyTable {
    pub fn new(genus: usize, flavor: Flavor) -> Self {
        Self { genus, flavor, groups: BTreeMap::new() }
    }

    pub fn add(&mut self, i: i64, j: i64, h: GradingElem, dim: usize) {
        if dim == 0 {
            return;
        }
        *self.groups.entry((i, j, h)).or_insert(0) += dim;
    }

    pub fn dim(&self, i: i64, j: i64, h: &GradingElem) -> usize {
        self.groups.get(&(i, j, h.clone())).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.groups.values().sum()
    }

    /// Entries sorted by `i`, then `j`, then the rendered `h`.
    pub fn entries(&self) -> Vec<HomologyEntry> {
        let mut v: Vec<HomologyEntry> = self
            .groups
            .iter()
            .map(|((i, j, h), &dim)| HomologyEntry { i: *i, j: *j, h: h.clone(), dim })
            .collect();
        v.sort_by_cached_key(|e| (e.i, e.j, e.h.render(self.genus)));
        v
    }

    /// Nontrivial classes appearing in some grading.
    pub fn classes(&self) -> BTreeSet<ConjClass> {
        self.groups.keys().flat_map(|(_, _, h)| h.terms().map(|(c, _)| c.clone())).collect()
    }

    /// Forgets the homotopical grading.
    pub fn collapse_h(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for ((i, j, _), &d) in &self.groups {
            *out.entry((*i, *j)).or_insert(0) += d;
        }
        out
    }

    /// `(i, j, h) -> (-i, -j, -h)`, the grading change under mirroring.
    pub fn dual(&self) -> HomologyTable {
        let mut out = HomologyTable::new(self.genus, self.flavor);
        for ((i, j, h), &d) in &self.groups {
            out.add(-i, -j, -h, d);
        }
        out
    }

    /// `(i,j,h) : dim` lines; on the torus a footer gives each class as `(p,q)`.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for e in self.entries() {
            let h = e.h.render(self.genus);
            writeln!(s, "({},{},{}) : {}", e.i, e.j, h, e.dim).expect("write to String");
        }
        if self.genus == 1 {
            for c in self.classes() {
                let (p, q) = c.torus_pair();
                writeln!(s, "# {} = ({},{})", c.render(1), p, q).expect("write to String");
            }
        }
        s
    }

    pub fn render_tsv(&self) -> String {
        let mut s = String::from("i\tj\th\tdim\n");
        for e in self.entries() {
            writeln!(s, "{}\t{}\t{}\t{}", e.i, e.j, e.h.render(self.genus), e.dim).expect("write to String");
        }
        s
    }

    pub fn to_json(&self, diagram_hash: &str) -> serde_json::Value {
        let table: Vec<_> = self
            .entries()
            .into_iter()
            .map(|e| json!({"i": e.i, "j": e.j, "h": e.h.render(self.genus), "dim": e.dim}))
            .collect();
        json!({"diagram": diagram_hash, "flavor": self.flavor.to_string(), "table": table})
    }
}

/// First grading where two tables disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub i: i64,
    pub j: i64,
    pub h: GradingElem,
    pub left: usize,
    pub right: usize,
}

impl Mismatch {
    pub fn render(&self, genus: usize) -> String {
        format!("({},{},{}) : {} vs {}", self.i, self.j, self.h.render(genus), self.left, self.right)
    }
}

/// Entrywise comparison of `a`, with gradings passed through `remap`, against `b`.
pub fn compare(
    a: &HomologyTable,
    b: &HomologyTable,
    remap: Option<&dyn Fn(i64, i64, &GradingElem) -> (i64, i64, GradingElem)>,
) -> Result<(), Mismatch> {
    let mut left = HomologyTable::new(a.genus, a.flavor);
    for ((i, j, h), &d) in &a.groups {
        let (i, j, h) = match remap {
            Some(f) => f(*i, *j, h),
            None => (*i, *j, h.clone()),
        };
        left.add(i, j, h, d);
    }
    let keys: BTreeSet<&(i64, i64, GradingElem)> = left.groups.keys().chain(b.groups.keys()).collect();
    let mut diffs: Vec<Mismatch> = keys
        .into_iter()
        .filter_map(|(i, j, h)| {
            let (l, r) = (left.dim(*i, *j, h), b.dim(*i, *j, h));
            (l != r).then(|| Mismatch { i: *i, j: *j, h: h.clone(), left: l, right: r })
        })
        .collect();
    diffs.sort_by_cached_key(|m| (m.i, m.j, m.h.render(a.genus)));
    match diffs.into_iter().next() {
        Some(m) => Err(m),
        None => Ok(()),
    }
}

/// Ranks of every differential, computed in parallel.
fn ranks(cx: &ChainComplex) -> Vec<Vec<usize>> {
    cx.slices.par_iter().map(|s| s.d.par_iter().map(|m| m.rank()).collect()).collect()
}

pub fn homology_of(cx: &ChainComplex, genus: usize) -> HomologyTable {
    let ranks = ranks(cx);
    let mut table = HomologyTable::new(genus, cx.flavor);
    let si = cx.i_shift();
    for (slice, r) in cx.slices.iter().zip(&ranks) {
        let h = cx.h_elem(&slice.h);
        for beta in 0..slice.dims.len() {
            let out = if beta < r.len() { r[beta] } else { 0 };
            let inc = if beta > 0 { r[beta - 1] } else { 0 };
            let dim = slice.dims[beta] - out - inc;
            table.add(beta as i64 + si, slice.j, h.clone(), dim);
        }
    }
    table
}

pub fn kh_with(d: &Diagram, opts: &KhOptions) -> Result<HomologyTable, KhError> {
    let cx = build_complex(d, opts)?;
    Ok(homology_of(&cx, d.genus))
}

/// Homotopical Khovanov homology with normalized gradings.
pub fn kh_h(d: &Diagram) -> Result<HomologyTable, KhError> {
    kh_with(d, &KhOptions::new(Flavor::Homotopical))
}

/// Classical Khovanov homology over GF(2); `h` is reported as 0.
pub fn kh_classical(d: &Diagram) -> Result<HomologyTable, KhError> {
    kh_with(d, &KhOptions::new(Flavor::Classical))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D2Report {
    /// Composable differential pairs checked.
    pub pairs: usize,
    /// `(j, beta)` of slices where `d d != 0`.
    pub failures: Vec<(i64, usize)>,
}

impl D2Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_d_squared(d: &Diagram, opts: &KhOptions) -> Result<D2Report, KhError> {
    let cx = build_complex(d, opts)?;
    let results: Vec<(usize, Vec<(i64, usize)>)> = cx
        .slices
        .par_iter()
        .map(|s| {
            let mut pairs = 0;
            let mut bad = Vec::new();
            for beta in 0..s.d.len().saturating_sub(1) {
                let (a, b) = (&s.d[beta], &s.d[beta + 1]);
                if a.rows() == 0 || a.cols() == 0 || b.rows() == 0 {
                    continue;
                }
                pairs += 1;
                if !b.multiply(a).expect("composable").is_zero() {
                    bad.push((s.j, beta));
                }
            }
            (pairs, bad)
        })
        .collect();
    Ok(D2Report {
        pairs: results.iter().map(|r| r.0).sum(),
        failures: results.into_iter().flat_map(|r| r.1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_and_loops() {
        let d = Diagram::from_free_loops(0, vec![Default::default()]);
        let t = kh_classical(&d).unwrap();
        assert_eq!(t.collapse_h(), BTreeMap::from([((0, -1), 1), ((0, 1), 1)]));
        let d = Diagram::from_free_loops(1, vec!["a".parse().unwrap()]);
        let t = kh_h(&d).unwrap();
        assert_eq!(t.total_dim(), 2);
        assert_eq!(t.render_text(), "(0,-1,-1*[a]) : 1\n(0,1,1*[a]) : 1\n# [a] = (1,0)\n");
    }

    #[test]
    fn compare_reports_first_difference() {
        let d = Diagram::from_free_loops(1, vec!["a".parse().unwrap()]);
        let t = kh_h(&d).unwrap();
        assert_eq!(compare(&t, &t, None), Ok(()));
        let dual = |i: i64, j: i64, h: &GradingElem| (-i, -j, -h);
        assert_eq!(compare(&t, &t, Some(&dual)), Ok(()));
        let u = kh_h(&Diagram::from_free_loops(1, vec![Default::default()])).unwrap();
        let m = compare(&t, &u, None).unwrap_err();
        assert_eq!(m.render(1), "(0,-1,-1*[a]) : 1 vs 0");
    }

    #[test]
    fn tsv_and_json() {
        let d = Diagram::from_free_loops(0, vec![Default::default()]);
        let t = kh_h(&d).unwrap();
        assert_eq!(t.render_tsv(), "i\tj\th\tdim\n0\t-1\t0\t1\n0\t1\t0\t1\n");
        let v = t.to_json("abc");
        assert_eq!(v["flavor"], "homotopical");
        assert_eq!(v["table"].as_array().unwrap().len(), 2);
    }
}
