//! JSON interchange.
//!
//! ```json
//! {"genus": 1,
//!  "edges": [{"id": 0, "word": "a1"}, {"id": 1, "word": ""}],
//!  "crossings": [{"id": 0, "slots": [1, 1, 0, 0]}],
//!  "free_loops": ["b1"]}
//! ```
//!
//! Ids are arbitrary distinct non-negative integers; edges and crossings are
//! stored in increasing id order. A crossing may carry `"sign": "+"` or `"-"`;
//! otherwise the sign is inferred from the edge orientations.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Crossing, Diagram, Edge, Sign};
use crate::error::DiagramError;
use crate::surface_group::Word;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub id: u64,
    #[serde(default)]
    pub word: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingJson {
    pub id: u64,
    pub slots: [u64; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub genus: usize,
    #[serde(default)]
    pub edges: Vec<EdgeJson>,
    #[serde(default)]
    pub crossings: Vec<CrossingJson>,
    #[serde(default)]
    pub free_loops: Vec<String>,
}

fn parse_word(s: &str, field: String) -> Result<Word, DiagramError> {
    s.parse().map_err(|cause| DiagramError::Word { field, cause })
}

impl Diagram {
    pub fn from_json(text: &str) -> Result<Diagram, DiagramError> {
        let raw: DiagramJson = serde_json::from_str(text)?;
        Diagram::from_json_value(&raw)
    }

    pub fn from_json_value(raw: &DiagramJson) -> Result<Diagram, DiagramError> {
        let mut edge_ids = BTreeMap::new();
        for (i, e) in raw.edges.iter().enumerate() {
            if edge_ids.insert(e.id, i).is_some() {
                return Err(DiagramError::Schema(format!("duplicate edge id {}", e.id)));
            }
        }
        let mut edges = Vec::with_capacity(raw.edges.len());
        let mut position = BTreeMap::new();
        for (pos, (&id, &i)) in edge_ids.iter().enumerate() {
            position.insert(id, pos);
            edges.push(Edge::new(parse_word(&raw.edges[i].word, format!("edges[{i}].word"))?));
        }

        let mut crossing_ids = BTreeMap::new();
        for (i, c) in raw.crossings.iter().enumerate() {
            if crossing_ids.insert(c.id, i).is_some() {
                return Err(DiagramError::Schema(format!("duplicate crossing id {}", c.id)));
            }
        }
        let ne = edges.len();
        let mut slots = Vec::new();
        let mut given = Vec::new();
        let mut fallback = Vec::new();
        for &i in crossing_ids.values() {
            let c = &raw.crossings[i];
            // unknown ids land past the end of the edge list and show up in validation
            slots.push(c.slots.map(|id| position.get(&id).copied().unwrap_or(ne)));
            given.push(match c.sign.as_deref() {
                None => None,
                Some("+") | Some("pos") | Some("positive") => Some(Sign::Positive),
                Some("-") | Some("neg") | Some("negative") => Some(Sign::Negative),
                Some(other) => {
                    return Err(DiagramError::Schema(format!("crossings[{i}].sign: unknown sign `{other}`")))
                }
            });
            let s = c.slots;
            fallback.push(if s[1] == s[3] + 1 || s[3] > s[1] + 1 { Sign::Positive } else { Sign::Negative });
        }
        let signs = infer_signs(&slots, ne, &given, &fallback);
        let crossings = slots.into_iter().zip(signs).map(|(s, sign)| Crossing::new(s, sign)).collect();

        let free_loops = raw
            .free_loops
            .iter()
            .enumerate()
            .map(|(i, s)| parse_word(s, format!("free_loops[{i}]")))
            .collect::<Result<_, _>>()?;

        Ok(Diagram { genus: raw.genus, edges, crossings, free_loops })
    }

    pub fn to_json_value(&self) -> DiagramJson {
        DiagramJson {
            genus: self.genus,
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| EdgeJson { id: i as u64, word: e.word.to_string() })
                .collect(),
            crossings: self
                .crossings
                .iter()
                .enumerate()
                .map(|(i, c)| CrossingJson {
                    id: i as u64,
                    slots: c.slots.map(|e| e as u64),
                    sign: Some(if c.sign == Sign::Positive { "+" } else { "-" }.to_string()),
                })
                .collect(),
            free_loops: self.free_loops.iter().map(|w| w.to_string()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("diagram serializes")
    }
}

/// Picks crossing signs so each edge has one incoming end.
///
/// Slots 0 and 2 have fixed directions; slot 1 is incoming iff the crossing is
/// negative, slot 3 iff positive. Each edge thus either pins a sign or ties
/// two signs together. Crossings left free get their fallback sign and the
/// choice is propagated.
fn infer_signs(slots: &[[usize; 4]], ne: usize, given: &[Option<Sign>], fallback: &[Sign]) -> Vec<Sign> {
    let n = slots.len();
    let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); ne];
    for (c, s) in slots.iter().enumerate() {
        for (k, &e) in s.iter().enumerate() {
            if e < ne {
                ends[e].push((c, k));
            }
        }
    }
    // an odd slot is incoming iff (sign positive) == (slot is 3)
    let mut pinned: Vec<Option<Sign>> = given.to_vec();
    let mut ties: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for e in &ends {
        if e.len() != 2 {
            continue;
        }
        let ((c1, k1), (c2, k2)) = (e[0], e[1]);
        match (k1 % 2, k2 % 2) {
            (1, 0) | (0, 1) => {
                let ((c, k), (_, even)) = if k1 % 2 == 1 { ((c1, k1), (c2, k2)) } else { ((c2, k2), (c1, k1)) };
                // the odd end must have the opposite direction of the even end
                let want_incoming = even == 2;
                let positive = want_incoming == (k == 3);
                pinned[c].get_or_insert(if positive { Sign::Positive } else { Sign::Negative });
            }
            (1, 1) => {
                // incoming(c1,k1) != incoming(c2,k2)
                // pos1 == (k1==3) xor pos2 == (k2==3) must be 1
                let same = (k1 == 3) != (k2 == 3);
                ties[c1].push((c2, same));
                ties[c2].push((c1, same));
            }
            _ => {}
        }
    }
    let mut sign: Vec<Option<Sign>> = vec![None; n];
    let mut queue = VecDeque::new();
    let seed = |c: usize, s: Sign, sign: &mut Vec<Option<Sign>>, queue: &mut VecDeque<usize>| {
        if sign[c].is_none() {
            sign[c] = Some(s);
            queue.push_back(c);
        }
    };
    for c in 0..n {
        if let Some(s) = pinned[c] {
            seed(c, s, &mut sign, &mut queue);
        }
    }
    let mut next_root = 0;
    loop {
        while let Some(c) = queue.pop_front() {
            let s = sign[c].expect("queued crossings are signed");
            for &(d, same) in &ties[c] {
                seed(d, if same { s } else { s.flip() }, &mut sign, &mut queue);
            }
        }
        while next_root < n && sign[next_root].is_some() {
            next_root += 1;
        }
        if next_root == n {
            break;
        }
        seed(next_root, fallback[next_root], &mut sign, &mut queue);
    }
    sign.into_iter().map(|s| s.expect("all crossings signed")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"genus": 1, "edges": [{"id": 10, "word": "a1"}, {"id": 20, "word": ""}],
            "crossings": [{"id": 5, "slots": [20, 20, 10, 10]}], "free_loops": ["b"]}"#;
        let d = Diagram::from_json(text).unwrap();
        assert!(d.is_valid(), "{:?}", d.validate());
        assert_eq!(d.crossings[0].slots, [1, 1, 0, 0]);
        assert_eq!(d.crossings[0].sign, Sign::Positive);
        assert_eq!(Diagram::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn trefoil_pd_signs() {
        // PD X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]
        let text = r#"{"genus": 0,
            "edges": [{"id":1},{"id":2},{"id":3},{"id":4},{"id":5},{"id":6}],
            "crossings": [{"id":0,"slots":[1,4,2,5]},{"id":1,"slots":[3,6,4,1]},{"id":2,"slots":[5,2,6,3]}]}"#;
        let d = Diagram::from_json(text).unwrap();
        assert!(d.is_valid());
        assert!(d.crossings.iter().all(|c| c.sign == Sign::Negative));
    }

    #[test]
    fn errors_name_fields() {
        let err = Diagram::from_json(r#"{"genus": 0, "edges": [{"id": 0, "word": "x"}]}"#).unwrap_err();
        assert!(err.to_string().contains("edges[0].word"), "{err}");
        let err = Diagram::from_json(r#"{"genus": 0, "crossings": [{"id": 0}]}"#).unwrap_err();
        assert!(err.to_string().contains("slots"), "{err}");
        let err = Diagram::from_json(r#"{"genus": 0, "edges": [{"id": 0}, {"id": 0}]}"#).unwrap_err();
        assert!(err.to_string().contains("duplicate edge id 0"), "{err}");
    }

    #[test]
    fn dangling_reference_is_reported_by_validation() {
        let d = Diagram::from_json(r#"{"genus": 0, "edges": [{"id": 0}, {"id": 1}],
            "crossings": [{"id": 0, "slots": [1, 1, 0, 9]}]}"#)
        .unwrap();
        assert!(!d.is_valid());
    }
}
