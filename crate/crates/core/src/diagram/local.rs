//! Planar model of the Reidemeister III configuration.
//!
//! Three chords of a hexagon, `P_s -> P_{s+3}` for `s = 0, 1, 2`, with chord 0
//! pushed slightly up or down. The two pushes are the two sides of the move.
//! Crossing data (slot order, sign) is read off the actual geometry.

use std::f64::consts::PI;

use super::{Crossing, Diagram, Edge, Sign};
use crate::surface_group::Word;

/// Strand directions, heights and which side of the move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct R3Config {
    /// `true`: strand `s` runs from `P_s` to `P_{s+3}`.
    pub forward: [bool; 3],
    /// A permutation of `0, 1, 2`; larger is higher.
    pub heights: [u8; 3],
    /// Chord 0 pushed up (`true`) or down.
    pub upper: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum LocalRef {
    /// Edge leaving the hexagon through boundary point `k`.
    Boundary(usize),
    /// The triangle edge lying on strand `s`.
    Inner(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct LocalCrossing {
    pub slots: [LocalRef; 4],
    pub sign: Sign,
}

pub(crate) const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

impl R3Config {
    pub fn all() -> impl Iterator<Item = R3Config> {
        const PERMS: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        (0..8u8).flat_map(|f| {
            PERMS.into_iter().flat_map(move |heights| {
                [true, false].into_iter().map(move |upper| R3Config {
                    forward: [f & 1 != 0, f & 2 != 0, f & 4 != 0],
                    heights,
                    upper,
                })
            })
        })
    }

    pub fn other_side(self) -> R3Config {
        R3Config { upper: !self.upper, ..self }
    }

    fn endpoints(&self, s: usize) -> ([f64; 2], [f64; 2], usize, usize) {
        let pt = |k: usize| {
            let t = PI / 3.0 * k as f64;
            [t.cos(), t.sin()]
        };
        let (mut p, mut q) = (pt(s), pt(s + 3));
        if s == 0 {
            let dy = if self.upper { 0.2 } else { -0.2 };
            p[1] += dy;
            q[1] += dy;
        }
        if self.forward[s] {
            (p, q, s, s + 3)
        } else {
            (q, p, s + 3, s)
        }
    }

    /// Boundary points where strands enter.
    pub(crate) fn entry_points(&self) -> [usize; 3] {
        [0, 1, 2].map(|s| self.endpoints(s).2)
    }

    /// The three crossings, indexed like `PAIRS`.
    pub(crate) fn crossings(&self) -> [LocalCrossing; 3] {
        let strands: Vec<_> = (0..3).map(|s| self.endpoints(s)).collect();
        let dir = |s: usize| {
            let (p, q, _, _) = strands[s];
            [q[0] - p[0], q[1] - p[1]]
        };
        // parameter along strand s where it meets strand t
        let param = |s: usize, t: usize| {
            let (p, _, _, _) = strands[s];
            let (r, _, _, _) = strands[t];
            let (d, e) = (dir(s), dir(t));
            let den = d[0] * e[1] - d[1] * e[0];
            ((r[0] - p[0]) * e[1] - (r[1] - p[1]) * e[0]) / den
        };
        // whether the crossing with t comes first along s
        let first = |s: usize, t: usize| {
            let other = (0..3).find(|&u| u != s && u != t).expect("three strands");
            param(s, t) < param(s, other)
        };
        PAIRS.map(|(s, t)| {
            let (under, over) = if self.heights[s] < self.heights[t] { (s, t) } else { (t, s) };
            let refs = |u: usize, v: usize| {
                let (_, _, entry, exit) = strands[u];
                if first(u, v) {
                    (LocalRef::Boundary(entry), LocalRef::Inner(u))
                } else {
                    (LocalRef::Inner(u), LocalRef::Boundary(exit))
                }
            };
            let angle = |v: [f64; 2]| v[1].atan2(v[0]);
            let (du, dv) = (dir(under), dir(over));
            let (u_in, u_out) = refs(under, over);
            let (o_in, o_out) = refs(over, under);
            let base = angle([-du[0], -du[1]]);
            let ccw = |a: f64| (a - base).rem_euclid(2.0 * PI);
            let mut rays = [
                (0.0, u_in, false),
                (ccw(angle(du)), u_out, false),
                (ccw(angle([-dv[0], -dv[1]])), o_in, true),
                (ccw(angle(dv)), o_out, false),
            ];
            rays.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angles"));
            let over_in_slot = rays.iter().position(|r| r.2).expect("over ray present");
            LocalCrossing {
                slots: rays.map(|r| r.1),
                sign: if over_in_slot == 3 { Sign::Positive } else { Sign::Negative },
            }
        })
    }
}

/// Closes the local model into a diagram: boundary points are paired by
/// disjoint arcs outside the hexagon, arc `i` carrying `arc_words[i]`.
///
/// Edges 0..3 are the triangle edges; arcs follow in pairing order.
pub fn r3_closed_diagram(cfg: R3Config, genus: usize, arc_words: &[Word]) -> Diagram {
    let entries = cfg.entry_points();
    let is_exit = |k: usize| !entries.contains(&k);
    // exits open, entries close; start where the cyclic prefix sum is minimal
    let start = (0..6)
        .min_by_key(|&r| {
            let mut sum = 0i32;
            let mut lo = 0;
            for i in 0..6 {
                sum += if is_exit((r + i) % 6) { 1 } else { -1 };
                lo = lo.min(sum);
            }
            -lo
        })
        .expect("six points");
    let mut stack = Vec::new();
    let mut arcs = Vec::new();
    for i in 0..6 {
        let k = (start + i) % 6;
        if is_exit(k) {
            stack.push(k);
        } else {
            arcs.push((stack.pop().expect("balanced boundary"), k));
        }
    }
    let mut edges: Vec<Edge> = (0..3).map(|_| Edge::plain()).collect();
    let mut at_point = [0usize; 6];
    for (i, &(exit, entry)) in arcs.iter().enumerate() {
        at_point[exit] = edges.len();
        at_point[entry] = edges.len();
        edges.push(Edge::new(arc_words.get(i).cloned().unwrap_or_default()));
    }
    let crossings = cfg
        .crossings()
        .iter()
        .map(|c| {
            let slots = c.slots.map(|r| match r {
                LocalRef::Boundary(k) => at_point[k],
                LocalRef::Inner(s) => s,
            });
            Crossing::new(slots, c.sign)
        })
        .collect();
    Diagram { genus, edges, crossings, free_loops: Vec::new() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_config_closes_to_a_valid_diagram() {
        for cfg in R3Config::all() {
            let d = r3_closed_diagram(cfg, 0, &[]);
            assert!(d.is_valid(), "{cfg:?}: {:?}", d.validate());
            assert_eq!(d.crossings.len(), 3);
        }
    }

    #[test]
    fn both_sides_share_signs() {
        for cfg in R3Config::all() {
            let a: Vec<Sign> = cfg.crossings().iter().map(|c| c.sign).collect();
            let b: Vec<Sign> = cfg.other_side().crossings().iter().map(|c| c.sign).collect();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn triangle_order_flips_between_sides() {
        let cfg = R3Config { forward: [true; 3], heights: [0, 1, 2], upper: true };
        let a = cfg.crossings();
        let b = cfg.other_side().crossings();
        assert_ne!(a[0].slots, b[0].slots);
    }
}
