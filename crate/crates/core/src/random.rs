//! Seeded random diagrams for testing.
//!
//! The underlying 4-valent graph comes from a uniformly random perfect
//! matching of crossing slots, so the result is a diagram on whatever surface
//! its ribbon structure dictates. Edge words are then sampled independently;
//! they are a decoration, not checked for embeddability.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{Crossing, Diagram, Edge, Sign};
use crate::surface_group::{GenKind, Letter, Word};

#[derive(Clone, Copy, Debug)]
pub struct RandomConfig {
    pub genus: usize,
    pub crossings: usize,
    /// Edge words have length `0..=max_word_len`.
    pub max_word_len: usize,
    /// Number of free loops is `0..=max_free_loops`.
    pub max_free_loops: usize,
}

impl RandomConfig {
    pub fn new(genus: usize, crossings: usize) -> Self {
        Self { genus, crossings, max_word_len: 2, max_free_loops: 0 }
    }
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, genus: usize, len: usize) -> Word {
    if genus == 0 {
        return Word::empty();
    }
    let letters = (0..len)
        .map(|_| {
            let handle = rng.gen_range(1..=genus) as u16;
            let kind = if rng.gen_bool(0.5) { GenKind::A } else { GenKind::B };
            Letter::new(kind, handle, rng.gen_bool(0.5))
        })
        .collect();
    Word::new(letters)
}

pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, cfg: &RandomConfig) -> Diagram {
    let n = cfg.crossings;
    let mut positions: Vec<usize> = (0..4 * n).collect();
    positions.shuffle(rng);
    let mut partner = vec![0usize; 4 * n];
    for pair in positions.chunks_exact(2) {
        partner[pair[0]] = pair[1];
        partner[pair[1]] = pair[0];
    }
    // edges as (out position, in position), traced component by component
    let straight = |p: usize| 4 * (p / 4) + (p % 4 + 2) % 4;
    let mut seen = vec![false; 4 * n];
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for start in 0..4 * n {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut p = start;
        while !seen[p] {
            let q = partner[p];
            seen[p] = true;
            seen[q] = true;
            comp.push((p, q));
            p = straight(q);
        }
        if rng.gen_bool(0.5) {
            comp = comp.into_iter().map(|(a, b)| (b, a)).collect();
        }
        arcs.extend(comp);
    }
    let mut ids: Vec<usize> = (0..arcs.len()).collect();
    ids.shuffle(rng);
    let mut edge_at = vec![0usize; 4 * n];
    let mut incoming = vec![false; 4 * n];
    for (k, &(out, inn)) in arcs.iter().enumerate() {
        edge_at[out] = ids[k];
        edge_at[inn] = ids[k];
        incoming[inn] = true;
    }
    let crossings = (0..n)
        .map(|c| {
            let under = rng.gen_range(0..2);
            let first_in = if incoming[4 * c + under] { under } else { under + 2 };
            let slots: [usize; 4] = std::array::from_fn(|j| edge_at[4 * c + (first_in + j) % 4]);
            let sign = if incoming[4 * c + (first_in + 3) % 4] { Sign::Positive } else { Sign::Negative };
            Crossing::new(slots, sign)
        })
        .collect();
    let edges = (0..arcs.len())
        .map(|_| {
            let len = rng.gen_range(0..=cfg.max_word_len);
            Edge::new(random_word(rng, cfg.genus, len))
        })
        .collect();
    let loops = rng.gen_range(0..=cfg.max_free_loops);
    let free_loops = (0..loops)
        .map(|_| {
            let len = rng.gen_range(0..=cfg.max_word_len.max(1));
            random_word(rng, cfg.genus, len)
        })
        .collect();
    Diagram { genus: cfg.genus, edges, crossings, free_loops }
}
