//! Reidemeister moves. New edges inside the move region carry empty words;
//! removals require the region's edges to have empty words.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::local::{LocalRef, R3Config};
use super::{Crossing, Diagram, Edge, Sign, SlotRef};
use crate::error::DiagramError;
use crate::surface_group::Word;

/// A strand piece a move attaches to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrandRef {
    Edge(usize),
    Loop(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MoveSpec {
    /// Adds a kink at letter position `split` of the strand. With
    /// `under_first` the strand passes under the crossing before running
    /// around the kink.
    R1Add { strand: StrandRef, split: usize, sign: Sign, under_first: bool },
    R1Remove { crossing: usize },
    /// Pushes a finger of `over` across `under`. `left` puts the finger on
    /// the left of `under`; `same_direction` makes `over` cross in `under`'s
    /// direction of travel first.
    R2Add { under: StrandRef, over: StrandRef, under_split: usize, over_split: usize, left: bool, same_direction: bool },
    R2Remove { crossings: [usize; 2] },
    R3 { crossings: [usize; 3] },
}

impl fmt::Display for StrandRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrandRef::Edge(e) => write!(f, "edge={e}"),
            StrandRef::Loop(l) => write!(f, "loop={l}"),
        }
    }
}

impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |s: &Sign| if *s == Sign::Positive { "pos" } else { "neg" };
        match self {
            MoveSpec::R1Add { strand, split, sign: s, under_first } => write!(
                f,
                "r1+:{strand}:split={split}:sign={}:under={}",
                sign(s),
                if *under_first { "first" } else { "second" }
            ),
            MoveSpec::R1Remove { crossing } => write!(f, "r1-:crossing={crossing}"),
            MoveSpec::R2Add { under, over, under_split, over_split, left, same_direction } => {
                let pick = |s: &StrandRef| match s {
                    StrandRef::Edge(e) => format!("e{e}"),
                    StrandRef::Loop(l) => format!("l{l}"),
                };
                write!(
                    f,
                    "r2+:under={}:over={}:splits={under_split},{over_split}:side={}:dir={}",
                    pick(under),
                    pick(over),
                    if *left { "left" } else { "right" },
                    if *same_direction { "same" } else { "opposite" }
                )
            }
            MoveSpec::R2Remove { crossings: [a, b] } => write!(f, "r2-:crossings={a},{b}"),
            MoveSpec::R3 { crossings: [a, b, c] } => write!(f, "r3:crossings={a},{b},{c}"),
        }
    }
}

fn mismatch(msg: impl Into<String>) -> DiagramError {
    DiagramError::PatternMismatch(msg.into())
}

fn parse_strand(v: &str) -> Result<StrandRef, DiagramError> {
    let bad = || mismatch(format!("bad strand `{v}`"));
    if let Some(rest) = v.strip_prefix('e') {
        rest.parse().map(StrandRef::Edge).map_err(|_| bad())
    } else if let Some(rest) = v.strip_prefix('l') {
        rest.parse().map(StrandRef::Loop).map_err(|_| bad())
    } else {
        v.parse().map(StrandRef::Edge).map_err(|_| bad())
    }
}

fn parse_list(v: &str) -> Result<Vec<usize>, DiagramError> {
    v.split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.trim().parse().map_err(|_| mismatch(format!("bad index `{s}`"))))
        .collect()
}

impl FromStr for MoveSpec {
    type Err = DiagramError;

    /// One move: `kind:key=value:key=value`. Kinds are `r1+`, `r1-`, `r2+`,
    /// `r2-`, `r3`; `r2` with `edges=` means `r2+`, with `crossings=` `r2-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.trim().split(':');
        let kind = parts.next().unwrap_or_default();
        let mut kv = HashMap::new();
        for p in parts {
            let (k, v) = p.split_once('=').ok_or_else(|| mismatch(format!("expected key=value, got `{p}`")))?;
            kv.insert(k, v);
        }
        let get = |k: &str| kv.get(k).copied();
        let need = |k: &str| get(k).ok_or_else(|| mismatch(format!("`{kind}` needs `{k}=`")));
        let num = |k: &str, default: usize| -> Result<usize, DiagramError> {
            get(k).map_or(Ok(default), |v| v.parse().map_err(|_| mismatch(format!("bad `{k}` value `{v}`"))))
        };
        let sign = match get("sign") {
            None | Some("pos") | Some("+") => Sign::Positive,
            Some("neg") | Some("-") => Sign::Negative,
            Some(v) => return Err(mismatch(format!("bad sign `{v}`"))),
        };
        let kind = match (kind, get("crossings")) {
            ("r2", Some(_)) => "r2-",
            ("r2", None) => "r2+",
            (k, _) => k,
        };
        match kind {
            "r1+" => {
                let strand = match (get("edge"), get("loop")) {
                    (Some(e), None) => StrandRef::Edge(e.parse().map_err(|_| mismatch(format!("bad edge `{e}`")))?),
                    (None, Some(l)) => StrandRef::Loop(l.parse().map_err(|_| mismatch(format!("bad loop `{l}`")))?),
                    _ => return Err(mismatch("`r1+` needs exactly one of `edge=` or `loop=`")),
                };
                let under_first = match get("under") {
                    None | Some("first") => true,
                    Some("second") => false,
                    Some(v) => return Err(mismatch(format!("bad `under` value `{v}`"))),
                };
                Ok(MoveSpec::R1Add { strand, split: num("split", 0)?, sign, under_first })
            }
            "r1-" => Ok(MoveSpec::R1Remove { crossing: need("crossing")?.parse().map_err(|_| mismatch("bad crossing"))? }),
            "r2+" => {
                let (under, over) = if let Some(v) = get("edges") {
                    match parse_list(v)?.as_slice() {
                        &[a, b] => (StrandRef::Edge(a), StrandRef::Edge(b)),
                        _ => return Err(mismatch("`edges=` needs two indices")),
                    }
                } else {
                    (parse_strand(need("under")?)?, parse_strand(need("over")?)?)
                };
                let (under_split, over_split) = match get("splits").map(parse_list).transpose()? {
                    None => (0, 0),
                    Some(v) if v.len() == 2 => (v[0], v[1]),
                    Some(_) => return Err(mismatch("`splits=` needs two positions")),
                };
                let left = match get("side") {
                    None | Some("left") => true,
                    Some("right") => false,
                    Some(v) => return Err(mismatch(format!("bad side `{v}`"))),
                };
                let same_direction = match get("dir") {
                    None | Some("same") => true,
                    Some("opposite") => false,
                    Some(v) => return Err(mismatch(format!("bad dir `{v}`"))),
                };
                Ok(MoveSpec::R2Add { under, over, under_split, over_split, left, same_direction })
            }
            "r2-" => match parse_list(need("crossings")?)?.as_slice() {
                &[a, b] => Ok(MoveSpec::R2Remove { crossings: [a, b] }),
                _ => Err(mismatch("`r2-` needs two crossings")),
            },
            "r3" => match parse_list(need("crossings")?)?.as_slice() {
                &[a, b, c] => Ok(MoveSpec::R3 { crossings: [a, b, c] }),
                _ => Err(mismatch("`r3` needs three crossings")),
            },
            other => Err(mismatch(format!("unknown move `{other}`"))),
        }
    }
}

/// Parses a comma-separated move sequence. A piece starting with `r` begins a
/// new move; other pieces continue the previous one, so
/// `r3:crossings=0,1,2,r1-:crossing=4` is two moves.
pub fn parse_moves(s: &str) -> Result<Vec<MoveSpec>, DiagramError> {
    let mut groups: Vec<String> = Vec::new();
    for piece in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match groups.last_mut() {
            Some(g) if !piece.starts_with('r') => {
                g.push(',');
                g.push_str(piece);
            }
            _ => groups.push(piece.to_string()),
        }
    }
    groups.iter().map(|g| g.parse()).collect()
}

/// Working copy with deletion marks; compacted at the end.
struct Work {
    genus: usize,
    edges: Vec<Option<Edge>>,
    crossings: Vec<Option<Crossing>>,
    loops: Vec<Option<Word>>,
}

impl Work {
    fn new(d: &Diagram) -> Self {
        Self {
            genus: d.genus,
            edges: d.edges.iter().cloned().map(Some).collect(),
            crossings: d.crossings.iter().cloned().map(Some).collect(),
            loops: d.free_loops.iter().cloned().map(Some).collect(),
        }
    }

    fn add_edge(&mut self, word: Word) -> usize {
        self.edges.push(Some(Edge::new(word)));
        self.edges.len() - 1
    }

    fn set_slot(&mut self, r: SlotRef, e: usize) {
        self.crossings[r.crossing].as_mut().expect("live crossing").slots[r.slot] = e;
    }

    fn finish(self) -> Diagram {
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.into_iter().enumerate() {
            if let Some(e) = e {
                emap[i] = edges.len();
                edges.push(e);
            }
        }
        let crossings = self
            .crossings
            .into_iter()
            .flatten()
            .map(|c| Crossing::new(c.slots.map(|e| emap[e]), c.sign))
            .collect();
        Diagram { genus: self.genus, edges, crossings, free_loops: self.loops.into_iter().flatten().collect() }
    }
}

/// Splits a strand at letter `split`, returning `(into, out_of)` edges for a
/// new site inserted there. For an edge these are distinct; for a free loop
/// both are the single new edge carrying the rotated word.
fn open_strand(w: &mut Work, d: &Diagram, s: StrandRef, split: usize) -> Result<(usize, usize), DiagramError> {
    match s {
        StrandRef::Edge(e) => {
            let word = &d.edges.get(e).ok_or_else(|| mismatch(format!("no edge {e}")))?.word;
            if split > word.len() {
                return Err(mismatch(format!("split {split} past the end of edge {e}")));
            }
            let (w1, w2) = word.split_at(split);
            let head = d.edge_ends()[e].head;
            w.edges[e] = Some(Edge::new(w1));
            let e2 = w.add_edge(w2);
            w.set_slot(head, e2);
            Ok((e, e2))
        }
        StrandRef::Loop(l) => {
            let word = d.free_loops.get(l).ok_or_else(|| mismatch(format!("no free loop {l}")))?;
            if split > word.len() {
                return Err(mismatch(format!("split {split} past the end of loop {l}")));
            }
            let m = w.add_edge(word.rotated(split));
            w.loops[l] = None;
            Ok((m, m))
        }
    }
}

fn r1_add(d: &Diagram, strand: StrandRef, split: usize, sign: Sign, under_first: bool) -> Result<Diagram, DiagramError> {
    let mut w = Work::new(d);
    let (e1, e2) = open_strand(&mut w, d, strand, split)?;
    let l = w.add_edge(Word::empty());
    let slots = match (under_first, sign) {
        (true, Sign::Positive) => [e1, e2, l, l],
        (true, Sign::Negative) => [e1, l, l, e2],
        (false, Sign::Positive) => [l, l, e2, e1],
        (false, Sign::Negative) => [l, e1, e2, l],
    };
    w.crossings.push(Some(Crossing::new(slots, sign)));
    Ok(w.finish())
}

/// Deletes crossings, joining each strand straight through them and
/// concatenating words. Strands closing up entirely become free loops.
fn remove_crossings(d: &Diagram, doomed: &[usize]) -> Diagram {
    let ends = d.edge_ends();
    let gone = |c: usize| doomed.contains(&c);
    let through = |r: SlotRef| d.crossings[r.crossing].slots[(r.slot + 2) % 4];
    let mut w = Work::new(d);
    let mut used = vec![false; d.edges.len()];
    for e in 0..d.edges.len() {
        if gone(ends[e].tail.crossing) || !gone(ends[e].head.crossing) {
            continue;
        }
        let mut word = d.edges[e].word.clone();
        let mut cur = e;
        while gone(ends[cur].head.crossing) {
            cur = through(ends[cur].head);
            used[cur] = true;
            word.extend_from(&d.edges[cur].word);
            w.edges[cur] = None;
        }
        w.edges[e] = Some(Edge::new(word));
        w.set_slot(ends[cur].head, e);
    }
    for e in 0..d.edges.len() {
        if used[e] || !gone(ends[e].tail.crossing) || !gone(ends[e].head.crossing) {
            continue;
        }
        let mut word = Word::empty();
        let mut cur = e;
        loop {
            used[cur] = true;
            word.extend_from(&d.edges[cur].word);
            w.edges[cur] = None;
            cur = through(ends[cur].head);
            if cur == e {
                break;
            }
        }
        w.loops.push(Some(word));
    }
    for &c in doomed {
        w.crossings[c] = None;
    }
    w.finish()
}

fn check_crossing(d: &Diagram, c: usize) -> Result<(), DiagramError> {
    if c >= d.crossings.len() {
        return Err(mismatch(format!("no crossing {c}")));
    }
    Ok(())
}

fn r1_remove(d: &Diagram, c: usize) -> Result<Diagram, DiagramError> {
    check_crossing(d, c)?;
    let s = d.crossings[c].slots;
    let kinks: Vec<usize> = (0..4).filter(|&k| s[k] == s[(k + 1) % 4]).map(|k| s[k]).collect();
    if kinks.is_empty() {
        return Err(mismatch(format!("crossing {c} has no kink loop")));
    }
    if !kinks.iter().any(|&e| d.edges[e].word.is_empty()) {
        return Err(DiagramError::NonlocalWords(format!("kink loop at crossing {c} carries a word")));
    }
    Ok(remove_crossings(d, &[c]))
}

/// Next half-edge of the face walk that turns counterclockwise at each crossing.
fn face_next(d: &Diagram, ends: &[super::EdgeEnds], h: SlotRef) -> SlotRef {
    let e = d.crossings[h.crossing].slots[h.slot];
    let other = if ends[e].tail == h { ends[e].head } else { ends[e].tail };
    SlotRef { crossing: other.crossing, slot: (other.slot + 1) % 4 }
}

fn r2_remove(d: &Diagram, a: usize, b: usize) -> Result<Diagram, DiagramError> {
    check_crossing(d, a)?;
    check_crossing(d, b)?;
    if a == b {
        return Err(mismatch("R2 needs two distinct crossings"));
    }
    if d.crossings[a].sign == d.crossings[b].sign {
        return Err(mismatch(format!("crossings {a} and {b} have the same sign")));
    }
    let ends = d.edge_ends();
    let joins = |e: usize| {
        let (t, h) = (ends[e].tail.crossing, ends[e].head.crossing);
        (t == a && h == b) || (t == b && h == a)
    };
    let mut found = None;
    let mut decorated = false;
    for k in 0..4 {
        let start = SlotRef { crossing: a, slot: k };
        let e = d.crossings[a].slots[k];
        if !joins(e) {
            continue;
        }
        let mid = face_next(d, &ends, start);
        let f = d.crossings[mid.crossing].slots[mid.slot];
        if f == e || !joins(f) || face_next(d, &ends, mid) != start {
            continue;
        }
        // one bigon side runs along the understrand (even slots), the other along the over
        let even = |x: usize| ends[x].tail.slot % 2 == 0 && ends[x].head.slot % 2 == 0;
        let odd = |x: usize| ends[x].tail.slot % 2 == 1 && ends[x].head.slot % 2 == 1;
        if (even(e) && odd(f)) || (odd(e) && even(f)) {
            if d.edges[e].word.is_empty() && d.edges[f].word.is_empty() {
                found = Some((e, f));
                break;
            }
            decorated = true;
        }
    }
    if found.is_none() {
        if decorated {
            return Err(DiagramError::NonlocalWords(format!("bigon at crossings {a}, {b} carries a word")));
        }
        return Err(mismatch(format!("crossings {a} and {b} do not bound an R2 bigon")));
    }
    Ok(remove_crossings(d, &[a, b]))
}

fn r2_add(
    d: &Diagram,
    under: StrandRef,
    over: StrandRef,
    under_split: usize,
    over_split: usize,
    left: bool,
    same_direction: bool,
) -> Result<Diagram, DiagramError> {
    if under == over {
        return Err(mismatch("R2 needs two different strands"));
    }
    let mut w = Work::new(d);
    let (e1, e2) = open_strand(&mut w, d, under, under_split)?;
    let (f1, f2) = open_strand(&mut w, d, over, over_split)?;
    let e_mid = w.add_edge(Word::empty());
    let f_mid = w.add_edge(Word::empty());
    // compass layout: under runs west to east through c1 then c2
    let (side, opp) = if left { (3, 1) } else { (1, 3) }; // slot of north is 3, south is 1
    let mut c1 = [e1, usize::MAX, e_mid, usize::MAX];
    let mut c2 = [e_mid, usize::MAX, e2, usize::MAX];
    let (first, second) = if same_direction { (&mut c1, &mut c2) } else { (&mut c2, &mut c1) };
    first[side] = f1;
    first[opp] = f_mid;
    second[opp] = f_mid;
    second[side] = f2;
    // overstrand enters at `side` in the first crossing, at `opp` in the second
    let sign_entering = |slot: usize| if slot == 3 { Sign::Positive } else { Sign::Negative };
    let (s1, s2) = if same_direction {
        (sign_entering(side), sign_entering(opp))
    } else {
        (sign_entering(opp), sign_entering(side))
    };
    w.crossings.push(Some(Crossing::new(c1, s1)));
    w.crossings.push(Some(Crossing::new(c2, s2)));
    Ok(w.finish())
}

type R3Match = (R3Config, [usize; 3], HashMap<LocalRef, usize>);

/// Matches three crossings against the local model, returning the config and
/// the binding of model crossings and model edges to diagram indices.
/// Undecorated triangles are preferred.
fn match_r3(d: &Diagram, cs: [usize; 3]) -> Option<R3Match> {
    let mut first = None;
    for m in r3_matches(d, cs) {
        if (0..3).all(|s| d.edges[m.2[&LocalRef::Inner(s)]].word.is_empty()) {
            return Some(m);
        }
        first.get_or_insert(m);
    }
    first
}

fn r3_matches(d: &Diagram, cs: [usize; 3]) -> Vec<R3Match> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    for cfg in R3Config::all() {
        let model = cfg.crossings();
        'perm: for p in PERMS {
            let mut bind: HashMap<LocalRef, usize> = HashMap::new();
            for (m, mc) in model.iter().enumerate() {
                let actual = &d.crossings[cs[p[m]]];
                if actual.sign != mc.sign {
                    continue 'perm;
                }
                for k in 0..4 {
                    let e = actual.slots[k];
                    if *bind.entry(mc.slots[k]).or_insert(e) != e {
                        continue 'perm;
                    }
                }
            }
            let inner: Vec<usize> = (0..3).map(|s| bind[&LocalRef::Inner(s)]).collect();
            if inner[0] == inner[1] || inner[0] == inner[2] || inner[1] == inner[2] {
                continue;
            }
            out.push((cfg, [cs[p[0]], cs[p[1]], cs[p[2]]], bind));
        }
    }
    out
}

fn r3(d: &Diagram, cs: [usize; 3]) -> Result<Diagram, DiagramError> {
    for &c in &cs {
        check_crossing(d, c)?;
    }
    if cs[0] == cs[1] || cs[0] == cs[2] || cs[1] == cs[2] {
        return Err(mismatch("R3 needs three distinct crossings"));
    }
    let (cfg, placed, bind) =
        match_r3(d, cs).ok_or_else(|| mismatch(format!("crossings {cs:?} do not form an R3 triangle")))?;
    if (0..3).any(|s| !d.edges[bind[&LocalRef::Inner(s)]].word.is_empty()) {
        return Err(DiagramError::NonlocalWords(format!("R3 triangle at {cs:?} carries a word")));
    }
    let mut out = d.clone();
    for (m, mc) in cfg.other_side().crossings().iter().enumerate() {
        out.crossings[placed[m]] = Crossing::new(mc.slots.map(|r| bind[&r]), mc.sign);
    }
    debug_assert!(out.is_valid());
    Ok(out)
}

pub fn apply_move(d: &Diagram, m: &MoveSpec) -> Result<Diagram, DiagramError> {
    d.require_valid()?;
    match *m {
        MoveSpec::R1Add { strand, split, sign, under_first } => r1_add(d, strand, split, sign, under_first),
        MoveSpec::R1Remove { crossing } => r1_remove(d, crossing),
        MoveSpec::R2Add { under, over, under_split, over_split, left, same_direction } => {
            r2_add(d, under, over, under_split, over_split, left, same_direction)
        }
        MoveSpec::R2Remove { crossings: [a, b] } => r2_remove(d, a, b),
        MoveSpec::R3 { crossings } => r3(d, crossings),
    }
}

/// Every kink removal and kink insertion (at strand ends) the diagram admits.
pub fn enumerate_r1_sites(d: &Diagram) -> Vec<MoveSpec> {
    let mut out = Vec::new();
    for c in 0..d.crossings.len() {
        if r1_remove(d, c).is_ok() {
            out.push(MoveSpec::R1Remove { crossing: c });
        }
    }
    let strands = (0..d.edges.len())
        .map(|e| (StrandRef::Edge(e), d.edges[e].word.len()))
        .chain((0..d.free_loops.len()).map(|l| (StrandRef::Loop(l), d.free_loops[l].len())));
    for (strand, len) in strands {
        for split in [0, len] {
            for sign in [Sign::Positive, Sign::Negative] {
                for under_first in [true, false] {
                    out.push(MoveSpec::R1Add { strand, split, sign, under_first });
                }
            }
        }
    }
    out.dedup();
    out
}

/// Bigon removals, and finger moves between strands meeting at a face corner.
pub fn enumerate_r2_sites(d: &Diagram) -> Vec<MoveSpec> {
    let mut out = Vec::new();
    let n = d.crossings.len();
    for a in 0..n {
        for b in a + 1..n {
            if r2_remove(d, a, b).is_ok() {
                out.push(MoveSpec::R2Remove { crossings: [a, b] });
            }
        }
    }
    // consecutive slots k, k+1 at a crossing bound a common face near the crossing
    let ends = d.edge_ends();
    for (c, x) in d.crossings.iter().enumerate() {
        for k in 0..4 {
            let (e, f) = (x.slots[k], x.slots[(k + 1) % 4]);
            if e == f {
                continue;
            }
            let near = |edge: usize, slot: usize| {
                if ends[edge].head == (SlotRef { crossing: c, slot }) {
                    d.edges[edge].word.len()
                } else {
                    0
                }
            };
            let (se, sf) = (near(e, k), near(f, (k + 1) % 4));
            for (under, us, over, os) in [(e, se, f, sf), (f, sf, e, se)] {
                for left in [true, false] {
                    for same_direction in [true, false] {
                        out.push(MoveSpec::R2Add {
                            under: StrandRef::Edge(under),
                            over: StrandRef::Edge(over),
                            under_split: us,
                            over_split: os,
                            left,
                            same_direction,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Crossing triples forming an R3 triangle with empty words.
pub fn enumerate_r3_sites(d: &Diagram) -> Vec<MoveSpec> {
    let n = d.crossings.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if r3(d, [a, b, c]).is_ok() {
                    out.push(MoveSpec::R3 { crossings: [a, b, c] });
                }
            }
        }
    }
    out
}
