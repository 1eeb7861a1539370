//! Resolutions of a diagram and the edges of its cube of resolutions.
//!
//! A state assigns 0 or 1 to each crossing (bit `c` of a `u64`). The
//! 0-smoothing joins slots 0-1 and 2-3, the 1-smoothing joins 0-3 and 1-2.
//! Circles are traced through edge ends: end `2e` is the tail of edge `e`,
//! `2e + 1` its head.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::diagram::{Diagram, SourceSink};
use crate::error::{CubeError, DiagramError};
use crate::surface_group::{ConjClass, SurfaceBackend, Word};

/// Order in which the circles of a resolution are listed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CircleOrder {
    /// By least edge index, crossing circles before free loops.
    #[default]
    Canonical,
    Reversed,
}

#[derive(Clone, Debug, Default)]
pub struct ResolveOptions {
    pub order: CircleOrder,
    /// Orient circles along this source-sink structure instead of along their
    /// least edge.
    pub orientation: Option<SourceSink>,
}

#[derive(Clone, Debug)]
pub struct Circle {
    /// Edge ends in traversal order (crossing circles only).
    pub ends: Vec<usize>,
    pub word: Word,
    pub class: ConjClass,
    pub free_loop: Option<usize>,
    /// Least edge index, or `edges + loop index` for free loops.
    pub key: usize,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub state: u64,
    pub circles: Vec<Circle>,
    /// For each crossing, the circles through its slot-0 arc and slot-2 arc.
    pub arc_circle: Vec<[usize; 2]>,
}

impl Resolution {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    /// `state 0110: 3 circles: [a1], trivial, [a1 b1]`
    pub fn describe(&self, crossings: usize, genus: usize) -> String {
        let bits: String = (0..crossings).map(|c| if self.state >> c & 1 == 1 { '1' } else { '0' }).collect();
        let circles: Vec<String> = self
            .circles
            .iter()
            .map(|c| if c.class.is_trivial() { "trivial".to_string() } else { c.class.render(genus) })
            .collect();
        let noun = if self.circles.len() == 1 { "circle" } else { "circles" };
        format!("state {bits}: {} {noun}: {}", self.circles.len(), circles.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Circles `a` and `b` (in resolution order) join into `into`.
    Merge { a: usize, b: usize, into: usize },
    /// Circle `from` splits into `a` and `b` (in resolution order).
    Split { from: usize, a: usize, b: usize },
    /// The circle through the crossing stays one circle.
    Neutral { from: usize, to: usize },
}

#[derive(Clone, Debug)]
pub struct CubeEdge {
    pub from: u64,
    pub to: u64,
    pub crossing: usize,
    pub kind: EdgeKind,
    /// Circles untouched by the change, as `(index in from, index in to)`.
    pub carried: Vec<(usize, usize)>,
}

/// Fixed per-diagram data for tracing circles.
pub(crate) struct Tracer<'a> {
    d: &'a Diagram,
    /// `end_at[c][k]`: edge end sitting in slot `k` of crossing `c`.
    end_at: Vec<[usize; 4]>,
    /// `(crossing, slot)` of every edge end.
    loc: Vec<(usize, usize)>,
    flip: Option<Vec<bool>>,
}

impl<'a> Tracer<'a> {
    pub(crate) fn new(d: &'a Diagram, orientation: Option<&SourceSink>) -> Self {
        let mut end_at = vec![[0usize; 4]; d.crossings.len()];
        let mut loc = vec![(0, 0); 2 * d.edges.len()];
        for (c, x) in d.crossings.iter().enumerate() {
            for k in 0..4 {
                let e = x.slots[k];
                let end = if x.is_incoming(k) { 2 * e + 1 } else { 2 * e };
                end_at[c][k] = end;
                loc[end] = (c, k);
            }
        }
        let flip = orientation.map(|ss| ss.forward.iter().map(|f| !f).collect());
        Self { d, end_at, loc, flip }
    }

    fn partner(bit: bool, k: usize) -> usize {
        if bit {
            3 - k
        } else {
            k ^ 1
        }
    }

    /// Circles of a state as `(ends, word, key)` in canonical order, plus arc membership.
    pub(crate) fn trace(&self, state: u64) -> (Vec<(Vec<usize>, Word, usize)>, Vec<[usize; 2]>) {
        let ne = self.d.edges.len();
        let mut circle_of = vec![usize::MAX; 2 * ne];
        let mut circles = Vec::new();
        for start in 0..ne {
            if circle_of[2 * start] != usize::MAX {
                continue;
            }
            let id = circles.len();
            let mut ends = Vec::new();
            let mut word = Word::empty();
            let mut entry = 2 * start;
            loop {
                let exit = entry ^ 1;
                circle_of[entry] = id;
                circle_of[exit] = id;
                ends.push(entry);
                ends.push(exit);
                let e = entry / 2;
                if entry % 2 == 0 {
                    word.extend_from(&self.d.edges[e].word);
                } else {
                    word.extend_from(&self.d.edges[e].word.inverse());
                }
                let (c, k) = self.loc[exit];
                entry = self.end_at[c][Self::partner(state >> c & 1 == 1, k)];
                if entry == 2 * start {
                    break;
                }
            }
            if self.flip.as_ref().is_some_and(|f| f[start]) {
                word = word.inverse();
            }
            circles.push((ends, word, start));
        }
        let arcs = self
            .end_at
            .iter()
            .map(|ends| [circle_of[ends[0]], circle_of[ends[2]]])
            .collect();
        (circles, arcs)
    }
}

/// Key used to share canonical-class computations between equal cyclic words.
fn class_cache_key(w: &Word) -> Word {
    let r = w.cyclic_reduce();
    let fwd = crate::surface_group::least_rotation_word(&r);
    let bwd = crate::surface_group::least_rotation_word(&r.inverse());
    fwd.min(bwd)
}

fn assemble(
    d: &Diagram,
    state: u64,
    traced: (Vec<(Vec<usize>, Word, usize)>, Vec<[usize; 2]>),
    classes: &mut dyn FnMut(&Word) -> ConjClass,
    order: CircleOrder,
) -> Resolution {
    let (raw, arcs) = traced;
    let ne = d.edges.len();
    let mut circles: Vec<Circle> = raw
        .into_iter()
        .map(|(ends, word, key)| Circle { class: classes(&word), ends, word, free_loop: None, key })
        .collect();
    for (i, w) in d.free_loops.iter().enumerate() {
        circles.push(Circle { ends: Vec::new(), class: classes(w), word: w.clone(), free_loop: Some(i), key: ne + i });
    }
    let mut arc_circle = arcs;
    if order == CircleOrder::Reversed {
        let n = circles.len();
        circles.reverse();
        for a in &mut arc_circle {
            *a = [n - 1 - a[0], n - 1 - a[1]];
        }
    }
    Resolution { state, circles, arc_circle }
}

/// Circles of one state with their classes.
pub fn resolve(d: &Diagram, state: u64, opts: &ResolveOptions) -> Result<Resolution, DiagramError> {
    d.require_valid()?;
    let backend = d.backend();
    let tracer = Tracer::new(d, opts.orientation.as_ref());
    let mut classes = |w: &Word| backend.canonical_class(w).expect("validated words");
    Ok(assemble(d, state, tracer.trace(state), &mut classes, opts.order))
}

/// Compares two resolutions differing at `crossing`.
pub fn classify_edge(from: &Resolution, to: &Resolution, crossing: usize) -> Result<CubeEdge, CubeError> {
    let [a, b] = from.arc_circle[crossing];
    let [a2, b2] = to.arc_circle[crossing];
    let ordered = |x: usize, y: usize| if x < y { (x, y) } else { (y, x) };
    let kind = match (a == b, a2 == b2) {
        (false, true) => {
            let (a, b) = ordered(a, b);
            EdgeKind::Merge { a, b, into: a2 }
        }
        (true, false) => {
            let (a2, b2) = ordered(a2, b2);
            EdgeKind::Split { from: a, a: a2, b: b2 }
        }
        (true, true) => EdgeKind::Neutral { from: a, to: a2 },
        (false, false) => {
            return Err(CubeError::Inconsistent {
                crossing,
                delta: to.circles.len() as i64 - from.circles.len() as i64,
            })
        }
    };
    let involved_from: &[usize] = &[a, b];
    let involved_to: &[usize] = &[a2, b2];
    let to_by_key: HashMap<usize, usize> = to
        .circles
        .iter()
        .enumerate()
        .filter(|(i, _)| !involved_to.contains(i))
        .map(|(i, c)| (c.key, i))
        .collect();
    let mut carried = Vec::new();
    for (i, c) in from.circles.iter().enumerate() {
        if involved_from.contains(&i) {
            continue;
        }
        match to_by_key.get(&c.key) {
            Some(&j) => carried.push((i, j)),
            None => {
                return Err(CubeError::Inconsistent {
                    crossing,
                    delta: to.circles.len() as i64 - from.circles.len() as i64,
                })
            }
        }
    }
    Ok(CubeEdge { from: from.state, to: to.state, crossing, kind, carried })
}

/// Every edge of the cube, lazily, state by state.
pub fn cube_edges<'a>(
    d: &'a Diagram,
    opts: &'a ResolveOptions,
) -> Result<impl Iterator<Item = Result<CubeEdge, CubeError>> + 'a, DiagramError> {
    d.require_valid()?;
    let n = d.crossings.len();
    assert!(n < 64, "at most 63 crossings");
    let backend = d.backend();
    let tracer = Tracer::new(d, opts.orientation.as_ref());
    let mut cache: HashMap<Word, ConjClass> = HashMap::new();
    let mut resolve_cached = move |s: u64| {
        let mut classes = |w: &Word| {
            cache
                .entry(class_cache_key(w))
                .or_insert_with(|| backend.canonical_class(w).expect("validated words"))
                .clone()
        };
        assemble(d, s, tracer.trace(s), &mut classes, opts.order)
    };
    Ok((0..1u64 << n).flat_map(move |s| {
        let from = resolve_cached(s);
        let edges: Vec<_> = (0..n)
            .filter(|&c| s >> c & 1 == 0)
            .map(|c| classify_edge(&from, &resolve_cached(s | 1 << c), c))
            .collect();
        edges
    }))
}

/// Interned class id; 0 is the trivial class.
pub type ClassId = u32;

/// What the chain complex needs from one state.
#[derive(Clone, Debug)]
pub struct StateData {
    pub classes: Vec<ClassId>,
    pub keys: Vec<u32>,
    pub arcs: Vec<[u8; 2]>,
}

/// Compact resolution data for all states.
#[derive(Clone, Debug)]
pub struct CubeTable {
    pub crossings: usize,
    pub states: Vec<StateData>,
    /// Class by id; entry 0 is trivial.
    pub classes: Vec<ConjClass>,
}

impl CubeTable {
    pub fn build(d: &Diagram, opts: &ResolveOptions) -> Result<CubeTable, DiagramError> {
        d.require_valid()?;
        let n = d.crossings.len();
        assert!(n < 32, "cube tables are limited to 31 crossings");
        let tracer = Tracer::new(d, opts.orientation.as_ref());
        let ne = d.edges.len();
        let traced: Vec<_> = (0..1u64 << n).into_par_iter().map(|s| tracer.trace(s)).collect();

        // canonical classes for distinct cyclic words, computed in parallel
        let mut keyed: HashMap<Word, usize> = HashMap::new();
        let mut reps: Vec<Word> = Vec::new();
        let mut key_of = |w: &Word| -> usize {
            let k = class_cache_key(w);
            *keyed.entry(k).or_insert_with(|| {
                reps.push(w.clone());
                reps.len() - 1
            })
        };
        let loop_keys: Vec<usize> = d.free_loops.iter().map(&mut key_of).collect();
        let word_keys: Vec<Vec<usize>> =
            traced.iter().map(|(cs, _)| cs.iter().map(|(_, w, _)| key_of(w)).collect()).collect();
        let backend: SurfaceBackend = d.backend();
        let rep_classes: Vec<ConjClass> =
            reps.par_iter().map(|w| backend.canonical_class(w).expect("validated words")).collect();
        let mut classes = vec![ConjClass::trivial()];
        let mut ids: HashMap<ConjClass, ClassId> = HashMap::from([(ConjClass::trivial(), 0)]);
        let rep_ids: Vec<ClassId> = rep_classes
            .into_iter()
            .map(|c| {
                *ids.entry(c.clone()).or_insert_with(|| {
                    classes.push(c);
                    (classes.len() - 1) as ClassId
                })
            })
            .collect();

        let states = traced
            .into_iter()
            .zip(word_keys)
            .map(|((cs, arcs), wk)| {
                let mut cls: Vec<ClassId> = wk.iter().map(|&k| rep_ids[k]).collect();
                let mut keys: Vec<u32> = cs.iter().map(|c| c.2 as u32).collect();
                cls.extend(loop_keys.iter().map(|&k| rep_ids[k]));
                keys.extend((0..d.free_loops.len()).map(|i| (ne + i) as u32));
                let total = cls.len();
                assert!(total < 256, "too many circles");
                let mut arcs: Vec<[u8; 2]> = arcs.iter().map(|a| [a[0] as u8, a[1] as u8]).collect();
                if opts.order == CircleOrder::Reversed {
                    cls.reverse();
                    keys.reverse();
                    for a in &mut arcs {
                        *a = [(total - 1 - a[0] as usize) as u8, (total - 1 - a[1] as usize) as u8];
                    }
                }
                StateData { classes: cls, keys, arcs }
            })
            .collect();
        Ok(CubeTable { crossings: n, states, classes })
    }

    /// Change at `crossing` from state `s` (bit clear) to `s | 1 << crossing`.
    pub fn edge(&self, s: u64, crossing: usize) -> Result<TableEdge, CubeError> {
        let t = s | 1 << crossing;
        let (fs, ts) = (&self.states[s as usize], &self.states[t as usize]);
        let [a, b] = fs.arcs[crossing].map(usize::from);
        let [a2, b2] = ts.arcs[crossing].map(usize::from);
        let kind = match (a == b, a2 == b2) {
            (false, true) => EdgeKind::Merge { a: a.min(b), b: a.max(b), into: a2 },
            (true, false) => EdgeKind::Split { from: a, a: a2.min(b2), b: a2.max(b2) },
            (true, true) => EdgeKind::Neutral { from: a, to: a2 },
            (false, false) => {
                return Err(CubeError::Inconsistent {
                    crossing,
                    delta: ts.classes.len() as i64 - fs.classes.len() as i64,
                })
            }
        };
        let mut carried = Vec::with_capacity(fs.keys.len());
        let mut j = 0;
        for (i, &k) in fs.keys.iter().enumerate() {
            if i == a || i == b {
                continue;
            }
            // untouched circles keep their keys and relative order
            while j < ts.keys.len() && (j == a2 || j == b2 || ts.keys[j] != k) {
                j += 1;
            }
            if j == ts.keys.len() {
                return Err(CubeError::Inconsistent {
                    crossing,
                    delta: ts.classes.len() as i64 - fs.classes.len() as i64,
                });
            }
            carried.push((i as u8, j as u8));
            j += 1;
        }
        Ok(TableEdge { kind, carried })
    }
}

#[derive(Clone, Debug)]
pub struct TableEdge {
    pub kind: EdgeKind,
    pub carried: Vec<(u8, u8)>,
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeKind::Merge { a, b, into } => write!(f, "merge {a},{b} -> {into}"),
            EdgeKind::Split { from, a, b } => write!(f, "split {from} -> {a},{b}"),
            EdgeKind::Neutral { from, to } => write!(f, "neutral {from} -> {to}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Crossing, Edge, Sign};

    fn hopf() -> Diagram {
        // two components, each passing over once
        Diagram {
            genus: 0,
            edges: vec![Edge::plain(), Edge::plain(), Edge::plain(), Edge::plain()],
            crossings: vec![
                Crossing::new([1, 2, 0, 3], Sign::Positive),
                Crossing::new([2, 1, 3, 0], Sign::Positive),
            ],
            free_loops: vec![],
        }
    }

    #[test]
    fn hopf_resolutions() {
        let d = hopf();
        assert!(d.is_valid(), "{:?}", d.validate());
        let counts: Vec<usize> =
            (0..4).map(|s| resolve(&d, s, &ResolveOptions::default()).unwrap().circle_count()).collect();
        assert_eq!(counts.iter().sum::<usize>(), counts[0] + counts[1] + counts[2] + counts[3]);
        assert_eq!(counts[0] + counts[3], 4);
        assert_eq!(counts[1], 1);
        assert_eq!(counts[2], 1);
        let edges: Vec<_> = cube_edges(&d, &ResolveOptions::default()).unwrap().collect::<Result<_, _>>().unwrap();
        assert_eq!(edges.len(), 4);
    }

    #[test]
    fn free_loops_come_last() {
        let mut d = hopf();
        d.genus = 1;
        d.free_loops.push("a".parse().unwrap());
        let r = resolve(&d, 0, &ResolveOptions::default()).unwrap();
        assert_eq!(r.circles.last().unwrap().free_loop, Some(0));
        assert!(!r.circles.last().unwrap().class.is_trivial());
        let rev = resolve(&d, 0, &ResolveOptions { order: CircleOrder::Reversed, orientation: None }).unwrap();
        assert_eq!(rev.circles[0].free_loop, Some(0));
    }

    #[test]
    fn table_agrees_with_direct_resolution() {
        let mut d = hopf();
        d.genus = 1;
        d.edges[0].word = "a".parse().unwrap();
        d.edges[2].word = "b".parse().unwrap();
        for order in [CircleOrder::Canonical, CircleOrder::Reversed] {
            let opts = ResolveOptions { order, orientation: None };
            let t = CubeTable::build(&d, &opts).unwrap();
            for s in 0..4u64 {
                let r = resolve(&d, s, &opts).unwrap();
                let cls: Vec<&ConjClass> = t.states[s as usize].classes.iter().map(|&i| &t.classes[i as usize]).collect();
                let direct: Vec<&ConjClass> = r.circles.iter().map(|c| &c.class).collect();
                assert_eq!(cls, direct);
                for c in 0..2 {
                    if s >> c & 1 == 1 {
                        continue;
                    }
                    let e1 = t.edge(s, c).unwrap();
                    let e2 = classify_edge(&r, &resolve(&d, s | 1 << c, &opts).unwrap(), c).unwrap();
                    assert_eq!(e1.kind, e2.kind);
                    let c2: Vec<(usize, usize)> = e1.carried.iter().map(|&(i, j)| (i as usize, j as usize)).collect();
                    assert_eq!(c2, e2.carried);
                }
            }
        }
    }

    #[test]
    fn describe_format() {
        let mut d = hopf();
        d.genus = 1;
        d.edges[0].word = "a".parse().unwrap();
        let r = resolve(&d, 0b10, &ResolveOptions::default()).unwrap();
        assert_eq!(r.describe(2, 1), "state 01: 1 circle: [a]");
    }
}
