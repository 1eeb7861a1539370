//! Decorated link diagrams on a genus-`g` surface.
//!
//! A diagram is a 4-valent graph whose vertices are crossings. Each crossing
//! lists its four edge slots counterclockwise starting from the incoming
//! understrand, so slot 0 is always incoming and slot 2 outgoing. Which of
//! slots 1 and 3 is incoming is recorded by the crossing sign: the overstrand
//! enters at slot 3 on a positive crossing and at slot 1 on a negative one.
//!
//! Edges carry words in `pi_1` of the surface, read along the edge direction.
//! Crossings themselves carry no letters, so the word of a closed curve made of
//! edges is the concatenation of its edge words.

mod json;
mod local;
mod moves;

use std::fmt;

use crate::surface_group::{SurfaceBackend, Word};

pub use json::{CrossingJson, DiagramJson, EdgeJson};
pub use local::{r3_closed_diagram, R3Config};
pub use moves::{apply_move, enumerate_r1_sites, enumerate_r2_sites, enumerate_r3_sites, parse_moves, MoveSpec, StrandRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub word: Word,
}

impl Edge {
    pub fn new(word: Word) -> Self {
        Self { word }
    }

    pub fn plain() -> Self {
        Self { word: Word::empty() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub slots: [usize; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(slots: [usize; 4], sign: Sign) -> Self {
        Self { slots, sign }
    }

    /// Whether the edge in slot `k` enters this crossing.
    pub fn is_incoming(&self, k: usize) -> bool {
        match k {
            0 => true,
            2 => false,
            1 => self.sign == Sign::Negative,
            3 => self.sign == Sign::Positive,
            _ => panic!("slot index {k} out of range"),
        }
    }
}

/// One end of an edge sitting in a crossing slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotRef {
    pub crossing: usize,
    pub slot: usize,
}

/// Where an edge starts and ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeEnds {
    pub tail: SlotRef,
    pub head: SlotRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    pub genus: usize,
    pub edges: Vec<Edge>,
    pub crossings: Vec<Crossing>,
    pub free_loops: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DanglingEdge { crossing: usize, slot: usize },
    Degree { edge: usize, count: usize },
    Orientation { edge: usize, incoming: usize },
    EdgeWord { edge: usize, handle: u16, genus: usize },
    LoopWord { free_loop: usize, handle: u16, genus: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DanglingEdge { crossing, slot } => {
                write!(f, "crossing {crossing} slot {slot} references a nonexistent edge")
            }
            Violation::Degree { edge, count } => {
                write!(f, "edge {edge} occupies {count} crossing slots, expected 2")
            }
            Violation::Orientation { edge, incoming } => {
                write!(f, "edge {edge} has {incoming} incoming ends, expected 1")
            }
            Violation::EdgeWord { edge, handle, genus } => {
                write!(f, "edge {edge} word uses handle {handle} on a genus-{genus} surface")
            }
            Violation::LoopWord { free_loop, handle, genus } => {
                write!(f, "free loop {free_loop} word uses handle {handle} on a genus-{genus} surface")
            }
        }
    }
}

/// Crossing counts by sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCounts {
    pub n_plus: usize,
    pub n_minus: usize,
    pub signs: Vec<Sign>,
}

/// An edge orientation in which every crossing has two opposite incoming
/// edges and two opposite outgoing edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSink {
    /// `true` when the edge keeps its link direction.
    pub forward: Vec<bool>,
}

impl SourceSink {
    pub fn flipped(&self) -> SourceSink {
        SourceSink { forward: self.forward.iter().map(|f| !f).collect() }
    }
}

impl Diagram {
    pub fn new(genus: usize) -> Self {
        Self { genus, edges: Vec::new(), crossings: Vec::new(), free_loops: Vec::new() }
    }

    /// A diagram consisting of crossing-free loops only.
    pub fn from_free_loops(genus: usize, loops: Vec<Word>) -> Self {
        Self { free_loops: loops, ..Self::new(genus) }
    }

    pub fn backend(&self) -> SurfaceBackend {
        SurfaceBackend::for_genus(self.genus)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Empty iff every structural invariant holds.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let ne = self.edges.len();
        let mut count = vec![0usize; ne];
        let mut incoming = vec![0usize; ne];
        for (c, x) in self.crossings.iter().enumerate() {
            for (k, &e) in x.slots.iter().enumerate() {
                if e >= ne {
                    out.push(Violation::DanglingEdge { crossing: c, slot: k });
                    continue;
                }
                count[e] += 1;
                incoming[e] += x.is_incoming(k) as usize;
            }
        }
        for e in 0..ne {
            if count[e] != 2 {
                out.push(Violation::Degree { edge: e, count: count[e] });
            } else if incoming[e] != 1 {
                out.push(Violation::Orientation { edge: e, incoming: incoming[e] });
            }
        }
        let backend = self.backend();
        for (e, edge) in self.edges.iter().enumerate() {
            if let Err(crate::error::WordError::HandleOutOfRange { handle, genus }) = backend.check_word(&edge.word) {
                out.push(Violation::EdgeWord { edge: e, handle, genus });
            }
        }
        for (i, w) in self.free_loops.iter().enumerate() {
            if let Err(crate::error::WordError::HandleOutOfRange { handle, genus }) = backend.check_word(w) {
                out.push(Violation::LoopWord { free_loop: i, handle, genus });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn require_valid(&self) -> Result<(), crate::error::DiagramError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(crate::error::DiagramError::Invalid(v.iter().map(|x| x.to_string()).collect()))
        }
    }

    /// Tail and head slot of every edge. Requires a valid diagram.
    pub fn edge_ends(&self) -> Vec<EdgeEnds> {
        let unset = SlotRef { crossing: usize::MAX, slot: usize::MAX };
        let mut ends = vec![EdgeEnds { tail: unset, head: unset }; self.edges.len()];
        for (c, x) in self.crossings.iter().enumerate() {
            for (k, &e) in x.slots.iter().enumerate() {
                let r = SlotRef { crossing: c, slot: k };
                if x.is_incoming(k) {
                    ends[e].head = r;
                } else {
                    ends[e].tail = r;
                }
            }
        }
        ends
    }

    pub fn crossing_signs(&self) -> Result<SignCounts, crate::error::DiagramError> {
        self.require_valid()?;
        let signs: Vec<Sign> = self.crossings.iter().map(|c| c.sign).collect();
        let n_plus = signs.iter().filter(|&&s| s == Sign::Positive).count();
        Ok(SignCounts { n_plus, n_minus: signs.len() - n_plus, signs })
    }

    /// Finds a source-sink structure by propagating crossing parities.
    ///
    /// Each crossing gets a bit saying whether its even slots (0, 2) are the
    /// incoming pair; each edge forces the bits at its two ends to differ or
    /// agree depending on the slot parities. An odd cycle refutes.
    pub fn source_sink(&self) -> Option<SourceSink> {
        let n = self.crossings.len();
        let ends = self.edge_ends();
        // adjacency: (other crossing, required xor)
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for e in &ends {
            let (t, h) = (e.tail, e.head);
            // in_ss(c, k) = (k even) == x_c ; need in_ss(tail) != in_ss(head)
            // => x_t xor x_h = 1 xor even(k_t) xor even(k_h)
            let rel = !((t.slot % 2 == 0) ^ (h.slot % 2 == 0));
            adj[t.crossing].push((h.crossing, rel));
            adj[h.crossing].push((t.crossing, rel));
        }
        let mut x: Vec<Option<bool>> = vec![None; n];
        for root in 0..n {
            if x[root].is_some() {
                continue;
            }
            x[root] = Some(true);
            let mut stack = vec![root];
            while let Some(c) = stack.pop() {
                let xc = x[c].expect("assigned");
                for &(d, rel) in &adj[c] {
                    let want = xc ^ rel;
                    match x[d] {
                        None => {
                            x[d] = Some(want);
                            stack.push(d);
                        }
                        Some(v) if v != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let forward = ends
            .iter()
            .map(|e| {
                let h = e.head;
                (h.slot % 2 == 0) == x[h.crossing].expect("assigned")
            })
            .collect();
        Some(SourceSink { forward })
    }

    pub fn has_source_sink(&self) -> bool {
        self.source_sink().is_some()
    }

    /// All edge directions flipped, words inverted. Crossing signs are unchanged.
    pub fn reverse_orientation(&self) -> Diagram {
        Diagram {
            genus: self.genus,
            edges: self.edges.iter().map(|e| Edge::new(e.word.inverse())).collect(),
            crossings: self
                .crossings
                .iter()
                .map(|c| {
                    let s = c.slots;
                    Crossing::new([s[2], s[3], s[0], s[1]], c.sign)
                })
                .collect(),
            free_loops: self.free_loops.iter().map(|w| w.inverse()).collect(),
        }
    }

    /// Over and under exchanged at every crossing.
    pub fn mirror(&self) -> Diagram {
        Diagram {
            genus: self.genus,
            edges: self.edges.clone(),
            crossings: self
                .crossings
                .iter()
                .map(|c| {
                    let s = c.slots;
                    // the incoming overstrand becomes the incoming understrand
                    let slots = match c.sign {
                        Sign::Positive => [s[3], s[0], s[1], s[2]],
                        Sign::Negative => [s[1], s[2], s[3], s[0]],
                    };
                    Crossing::new(slots, c.sign.flip())
                })
                .collect(),
            free_loops: self.free_loops.clone(),
        }
    }

    /// Number of link components, counting free loops.
    pub fn component_count(&self) -> usize {
        let ends = self.edge_ends();
        let mut seen = vec![false; self.edges.len()];
        let mut comps = 0;
        for start in 0..self.edges.len() {
            if seen[start] {
                continue;
            }
            comps += 1;
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                let h = ends[e].head;
                e = self.crossings[h.crossing].slots[(h.slot + 2) % 4];
            }
        }
        comps + self.free_loops.len()
    }
}
