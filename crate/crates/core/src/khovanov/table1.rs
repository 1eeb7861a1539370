//! Commutativity of faces of the cube in which three circles `a, b, c` and
//! their combinations `ab, bc, abc` appear.
//!
//! Each face has two paths. The printed identities, one per triviality
//! pattern and face type, are checked two ways: the maps picked by the
//! dispatch rules along each path must be the ones listed, and the two sides
//! must agree as linear maps.

use std::fmt;

use super::maps::{merge_map_for, split_map_for, MergeMap, SplitMap};
use crate::gf2::Gf2Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Id,
    Merge(MergeMap),
    Split(SplitMap),
}

impl Factor {
    fn arity(self) -> (usize, usize) {
        match self {
            Factor::Id => (1, 1),
            Factor::Merge(_) => (2, 1),
            Factor::Split(_) => (1, 2),
        }
    }

    fn is_zero(self) -> bool {
        matches!(self, Factor::Merge(MergeMap::Zero) | Factor::Split(SplitMap::Zero))
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Id => f.write_str("id"),
            Factor::Merge(m) => write!(f, "{m}"),
            Factor::Split(s) => write!(f, "{s}"),
        }
    }
}

/// A tensor product of factors, applied to consecutive tensor slots.
pub type Step = Vec<Factor>;

/// Steps in printed order: the rightmost step is applied first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Zero,
    Path(Vec<Step>),
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Zero => f.write_str("0"),
            Side::Path(steps) => {
                for s in steps {
                    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                    if s.len() > 1 {
                        write!(f, "({})", parts.join("⊗"))?;
                    } else {
                        f.write_str(&parts[0])?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceType {
    /// One circle splits twice.
    A,
    /// A split and a merge.
    B,
    /// Three circles merge into one.
    C,
}

impl fmt::Display for FaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FaceType::A => "A",
            FaceType::B => "B",
            FaceType::C => "C",
        })
    }
}

/// Which of `a, b, c, ab, bc, abc` are nontrivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub ab: bool,
    pub bc: bool,
    pub abc: bool,
}

impl Pattern {
    fn from_bits(bits: &str) -> Pattern {
        let v: Vec<bool> = bits.chars().filter(|c| !c.is_whitespace()).map(|c| c == '1').collect();
        Pattern { a: v[0], b: v[1], c: v[2], ab: v[3], bc: v[4], abc: v[5] }
    }
}

#[derive(Clone, Debug)]
pub struct Row {
    pub label: &'static str,
    pub pattern: Pattern,
    /// `(first side, second side)` for faces A, B, C.
    pub cells: [(Side, Side); 3],
}

fn parse_step(s: &str) -> Step {
    s.split('x')
        .map(|t| match t.trim() {
            "id" => Factor::Id,
            "m" => Factor::Merge(MergeMap::M),
            "m0" => Factor::Merge(MergeMap::M0),
            "m1" => Factor::Merge(MergeMap::M1),
            "m2" => Factor::Merge(MergeMap::M2),
            "D" => Factor::Split(SplitMap::D),
            "D0" => Factor::Split(SplitMap::D0),
            "D1" => Factor::Split(SplitMap::D1),
            "D2" => Factor::Split(SplitMap::D2),
            other => panic!("unknown factor `{other}`"),
        })
        .collect()
}

fn side(steps: &[&str]) -> Side {
    if steps == ["0"] {
        Side::Zero
    } else {
        Side::Path(steps.iter().map(|s| parse_step(s)).collect())
    }
}

/// The identities, row by row. Patterns list `a b c ab bc abc` with 1 for
/// nontrivial.
pub fn rows() -> Vec<Row> {
    let z: &[&str] = &["0"];
    let row = |label, bits, a: [&[&str]; 2], b: [&[&str]; 2], c: [&[&str]; 2]| Row {
        label,
        pattern: Pattern::from_bits(bits),
        cells: [(side(a[0]), side(a[1])), (side(b[0]), side(b[1])), (side(c[0]), side(c[1]))],
    };
    vec![
        row("1", "000 000", [&["D x id", "D"], &["id x D", "D"]], [&["m x id", "id x D"], &["D", "m"]], [&["m", "m x id"], &["m", "id x m"]]),
        row("2.a", "100 101", [&["D1 x id", "D1"], &["id x D", "D1"]], [&["m1 x id", "id x D"], &["D1", "m1"]], [&["m1", "m1 x id"], &["m1", "id x m"]]),
        row("2.b", "010 111", [&["D2 x id", "D1"], &["id x D1", "D2"]], [&["m2 x id", "id x D1"], &["D1", "m2"]], [&["m1", "m2 x id"], &["m2", "id x m1"]]),
        row("2.c", "001 011", [&["D x id", "D2"], &["id x D2", "D2"]], [&["m x id", "id x D2"], &["D2", "m2"]], [&["m2", "m x id"], &["m2", "id x m2"]]),
        row("3.a.i", "011 100", [&["D2 x id", "D0"], &["id x D0", "D"]], [&["m2 x id", "id x D0"], &["D0", "m"]], [&["m0", "m2 x id"], &["m", "id x m0"]]),
        row("3.a.ii", "011 111", [z, z], [z, z], [z, z]),
        row("3.b.i", "101 110", [&["D1 x id", "D0"], &["id x D2", "D0"]], [&["m1 x id", "id x D2"], &["D0", "m0"]], [&["m0", "m1 x id"], &["m0", "id x m2"]]),
        row("3.b.ii", "101 111", [z, z], [&["m1 x id", "id x D2"], z], [z, z]),
        row("3.c.i", "110 010", [&["D0 x id", "D"], &["id x D1", "D0"]], [&["m0 x id", "id x D1"], &["D", "m0"]], [&["m", "m0 x id"], &["m0", "id x m1"]]),
        row("3.c.ii", "110 111", [z, z], [z, z], [z, z]),
        row("4.a", "111 001", [&["D0 x id", "D2"], &["id x D0", "D1"]], [&["m0 x id", "id x D0"], &["D2", "m1"]], [&["m2", "m0 x id"], &["m1", "id x m0"]]),
        row("4.b", "111 011", [&["D0 x id", "D2"], z], [z, z], [&["m2", "m0 x id"], z]),
        row("4.c", "111 101", [z, &["id x D0", "D1"]], [z, z], [z, &["m1", "id x m0"]]),
        row("4.d.i", "111 110", [z, z], [z, &["D0", "m0"]], [z, z]),
        row("4.d.ii", "111 111", [z, z], [z, z], [z, z]),
    ]
}

fn merge(t1: bool, t2: bool, t: bool) -> Factor {
    Factor::Merge(merge_map_for(!t1, !t2, !t).expect("realizable pattern"))
}

fn split(t: bool, t1: bool, t2: bool) -> Factor {
    Factor::Split(split_map_for(!t, !t1, !t2).expect("realizable pattern"))
}

/// The two paths of a face with maps chosen by the dispatch rules, as
/// `(top, left)` in printed order.
///
/// - A: `abc -> ab, c -> a, b, c` against `abc -> a, bc -> a, b, c`
/// - B: `a, bc -> a, b, c -> ab, c` against `a, bc -> abc -> ab, c`
/// - C: `a, b, c -> ab, c -> abc` against `a, b, c -> a, bc -> abc`
pub fn derive_paths(face: FaceType, p: Pattern) -> (Vec<Step>, Vec<Step>) {
    let id = Factor::Id;
    match face {
        FaceType::A => (
            vec![vec![split(p.ab, p.a, p.b), id], vec![split(p.abc, p.ab, p.c)]],
            vec![vec![id, split(p.bc, p.b, p.c)], vec![split(p.abc, p.a, p.bc)]],
        ),
        FaceType::B => (
            vec![vec![merge(p.a, p.b, p.ab), id], vec![id, split(p.bc, p.b, p.c)]],
            vec![vec![split(p.abc, p.ab, p.c)], vec![merge(p.a, p.bc, p.abc)]],
        ),
        FaceType::C => (
            vec![vec![merge(p.ab, p.c, p.abc)], vec![merge(p.a, p.b, p.ab), id]],
            vec![vec![merge(p.a, p.bc, p.abc)], vec![id, merge(p.b, p.c, p.bc)]],
        ),
    }
}

fn input_arity(face: FaceType) -> usize {
    match face {
        FaceType::A => 1,
        FaceType::B => 2,
        FaceType::C => 3,
    }
}

/// Applies one step to a basis tensor (`labels[k]` true for `v+`).
fn apply_step(step: &Step, labels: &[bool]) -> Vec<Vec<bool>> {
    let mut outs: Vec<Vec<bool>> = vec![Vec::new()];
    let mut k = 0;
    for &f in step {
        let next: Vec<Vec<bool>> = match f {
            Factor::Id => {
                let x = labels[k];
                outs.into_iter().map(|mut o| {
                    o.push(x);
                    o
                }).collect()
            }
            Factor::Merge(m) => match m.apply(labels[k], labels[k + 1]) {
                None => Vec::new(),
                Some(x) => outs.into_iter().map(|mut o| {
                    o.push(x);
                    o
                }).collect(),
            },
            Factor::Split(s) => {
                let images = s.apply(labels[k]);
                outs.iter()
                    .flat_map(|o| {
                        images.iter().map(move |&(x, y)| {
                            let mut o = o.clone();
                            o.extend([x, y]);
                            o
                        })
                    })
                    .collect()
            }
        };
        outs = next;
        k += f.arity().0;
    }
    outs
}

fn index(labels: &[bool]) -> usize {
    labels.iter().enumerate().map(|(k, &b)| (b as usize) << k).sum()
}

fn step_matrix(step: &Step, inputs: usize) -> Gf2Matrix {
    let outputs: usize = step.iter().map(|f| f.arity().1).sum();
    let mut m = Gf2Matrix::zeros(1 << outputs, 1 << inputs);
    for col in 0..1usize << inputs {
        let labels: Vec<bool> = (0..inputs).map(|k| col >> k & 1 == 1).collect();
        for out in apply_step(step, &labels) {
            m.toggle(index(&out), col);
        }
    }
    m
}

/// The linear map of a side on `V^(x inputs)`.
pub fn evaluate(side: &Side, inputs: usize, outputs: usize) -> Gf2Matrix {
    match side {
        Side::Zero => Gf2Matrix::zeros(1 << outputs, 1 << inputs),
        Side::Path(steps) => {
            let mut arity = inputs;
            let mut acc = Gf2Matrix::identity(1 << inputs);
            for step in steps.iter().rev() {
                let m = step_matrix(step, arity);
                arity = step.iter().map(|f| f.arity().1).sum();
                acc = m.multiply(&acc).expect("composable steps");
            }
            acc
        }
    }
}

/// A printed side agrees with a derived path if they list the same maps, or
/// the side is `0` and the path passes through a zero map.
fn agrees(printed: &Side, derived: &[Step]) -> bool {
    match printed {
        Side::Path(steps) => steps.as_slice() == derived,
        Side::Zero => derived.iter().flatten().any(|f| f.is_zero()),
    }
}

#[derive(Clone, Debug)]
pub struct CellCheck {
    pub row: &'static str,
    pub face: FaceType,
    pub first: Side,
    pub second: Side,
    pub dispatch_matches: bool,
    pub sides_equal: bool,
}

impl CellCheck {
    pub fn holds(&self) -> bool {
        self.dispatch_matches && self.sides_equal
    }
}

impl fmt::Display for CellCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} = {} : {}",
            self.row,
            self.face,
            self.first,
            self.second,
            if self.holds() { "holds" } else if !self.dispatch_matches { "dispatch differs" } else { "sides differ" }
        )
    }
}

pub fn check_rows(rows: &[Row]) -> Vec<CellCheck> {
    let mut out = Vec::new();
    for r in rows {
        for (face, (first, second)) in [FaceType::A, FaceType::B, FaceType::C].into_iter().zip(r.cells.iter()) {
            let (top, left) = derive_paths(face, r.pattern);
            let dispatch_matches = agrees(first, &top) && agrees(second, &left);
            let (i, o) = (input_arity(face), 4 - input_arity(face));
            let sides_equal = evaluate(first, i, o) == evaluate(second, i, o);
            out.push(CellCheck { row: r.label, face, first: first.clone(), second: second.clone(), dispatch_matches, sides_equal });
        }
    }
    out
}

pub fn verify_table1() -> Vec<CellCheck> {
    check_rows(&rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_cells_hold() {
        let checks = verify_table1();
        assert_eq!(checks.len(), 45);
        for c in &checks {
            assert!(c.holds(), "{c}");
        }
    }

    #[test]
    fn a_wrong_entry_is_caught() {
        let mut rs = rows();
        rs[1].cells[0].0 = side(&["D2 x id", "D1"]);
        let checks = check_rows(&rs[1..2]);
        assert!(!checks[0].holds());
    }

    #[test]
    fn rendering() {
        let s = side(&["D1 x id", "D0"]);
        assert_eq!(s.to_string(), "(Δ1⊗id)Δ0");
        assert_eq!(side(&["m", "id x m"]).to_string(), "m(id⊗m)");
    }

    #[test]
    fn classical_faces_commute() {
        let p = Pattern::from_bits("000000");
        for face in [FaceType::A, FaceType::B, FaceType::C] {
            let (top, left) = derive_paths(face, p);
            let i = input_arity(face);
            assert_eq!(evaluate(&Side::Path(top), i, 4 - i), evaluate(&Side::Path(left), i, 4 - i));
        }
    }
}
