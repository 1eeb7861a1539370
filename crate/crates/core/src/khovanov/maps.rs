//! Frobenius-style maps on `V = <v+, v->` over GF(2) and the homotopical
//! pieces they split into.
//!
//! A label is `true` for `v+`. Tensor factors follow the circle order of the
//! resolution, so `gamma_1` is the earlier circle.

use std::fmt;

use crate::error::CaseError;
use crate::surface_group::ConjClass;

/// Multiplication `gamma_1 (x) gamma_2 -> gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MergeMap {
    M,
    M0,
    M1,
    M2,
    Zero,
}

/// Comultiplication `gamma -> gamma_1 (x) gamma_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitMap {
    D,
    D0,
    D1,
    D2,
    Zero,
}

impl MergeMap {
    pub fn apply(self, x: bool, y: bool) -> Option<bool> {
        match (self, x, y) {
            (MergeMap::Zero, _, _) => None,
            (MergeMap::M, true, true) => Some(true),
            (MergeMap::M, false, false) => None,
            (MergeMap::M, _, _) => Some(false),
            (MergeMap::M0, true, false) | (MergeMap::M0, false, true) => Some(false),
            (MergeMap::M0, _, _) => None,
            (MergeMap::M1, x, true) => Some(x),
            (MergeMap::M1, _, false) => None,
            (MergeMap::M2, true, y) => Some(y),
            (MergeMap::M2, false, _) => None,
        }
    }
}

impl SplitMap {
    pub fn apply(self, x: bool) -> Vec<(bool, bool)> {
        match (self, x) {
            (SplitMap::Zero, _) => vec![],
            (SplitMap::D, true) => vec![(true, false), (false, true)],
            (SplitMap::D, false) => vec![(false, false)],
            (SplitMap::D0, true) => vec![(true, false), (false, true)],
            (SplitMap::D0, false) => vec![],
            (SplitMap::D1, x) => vec![(x, false)],
            (SplitMap::D2, x) => vec![(false, x)],
        }
    }
}

impl fmt::Display for MergeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MergeMap::M => "m",
            MergeMap::M0 => "m0",
            MergeMap::M1 => "m1",
            MergeMap::M2 => "m2",
            MergeMap::Zero => "0",
        })
    }
}

impl fmt::Display for SplitMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitMap::D => "Δ",
            SplitMap::D0 => "Δ0",
            SplitMap::D1 => "Δ1",
            SplitMap::D2 => "Δ2",
            SplitMap::Zero => "0",
        })
    }
}

/// Merge map from the triviality of `gamma_1`, `gamma_2`, `gamma`.
/// `None` for patterns no bifurcation can produce.
pub fn merge_map_for(t1: bool, t2: bool, t: bool) -> Option<MergeMap> {
    match (t1, t2, t) {
        (true, true, true) => Some(MergeMap::M),
        (false, true, false) => Some(MergeMap::M1),
        (true, false, false) => Some(MergeMap::M2),
        (false, false, true) => Some(MergeMap::M0),
        (false, false, false) => Some(MergeMap::Zero),
        _ => None,
    }
}

/// Split map from the triviality of `gamma`, `gamma_1`, `gamma_2`.
pub fn split_map_for(t: bool, t1: bool, t2: bool) -> Option<SplitMap> {
    match (t, t1, t2) {
        (true, true, true) => Some(SplitMap::D),
        (false, false, true) => Some(SplitMap::D1),
        (false, true, false) => Some(SplitMap::D2),
        (true, false, false) => Some(SplitMap::D0),
        (false, false, false) => Some(SplitMap::Zero),
        _ => None,
    }
}

/// Merge dispatch on class ids where id 0 is trivial. Also checks the class
/// equalities the pattern implies.
pub(crate) fn merge_by_id(c1: u32, c2: u32, c: u32) -> Option<MergeMap> {
    let m = merge_map_for(c1 == 0, c2 == 0, c == 0)?;
    let consistent = match m {
        MergeMap::M1 => c1 == c,
        MergeMap::M2 => c2 == c,
        MergeMap::M0 => c1 == c2,
        _ => true,
    };
    consistent.then_some(m)
}

pub(crate) fn split_by_id(c: u32, c1: u32, c2: u32) -> Option<SplitMap> {
    let m = split_map_for(c == 0, c1 == 0, c2 == 0)?;
    let consistent = match m {
        SplitMap::D1 => c1 == c,
        SplitMap::D2 => c2 == c,
        SplitMap::D0 => c1 == c2,
        _ => true,
    };
    consistent.then_some(m)
}

pub fn resolve_merge_case(c1: &ConjClass, c2: &ConjClass, c: &ConjClass) -> Result<MergeMap, CaseError> {
    let m = merge_map_for(c1.is_trivial(), c2.is_trivial(), c.is_trivial());
    let ok = match m {
        Some(MergeMap::M1) => c1 == c,
        Some(MergeMap::M2) => c2 == c,
        Some(MergeMap::M0) => c1 == c2,
        Some(_) => true,
        None => false,
    };
    match m {
        Some(m) if ok => Ok(m),
        _ => Err(CaseError::CorruptedResolution(format!("merge {c1} (x) {c2} -> {c}"))),
    }
}

pub fn resolve_split_case(c: &ConjClass, c1: &ConjClass, c2: &ConjClass) -> Result<SplitMap, CaseError> {
    let m = split_map_for(c.is_trivial(), c1.is_trivial(), c2.is_trivial());
    let ok = match m {
        Some(SplitMap::D1) => c1 == c,
        Some(SplitMap::D2) => c2 == c,
        Some(SplitMap::D0) => c1 == c2,
        Some(_) => true,
        None => false,
    };
    match m {
        Some(m) if ok => Ok(m),
        _ => Err(CaseError::CorruptedResolution(format!("split {c} -> {c1} (x) {c2}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface_group::SurfaceBackend;

    const P: bool = true;
    const N: bool = false;

    #[test]
    fn merge_tables() {
        let table = |m: MergeMap| [(P, P), (P, N), (N, P), (N, N)].map(|(x, y)| m.apply(x, y));
        assert_eq!(table(MergeMap::M), [Some(P), Some(N), Some(N), None]);
        assert_eq!(table(MergeMap::M0), [None, Some(N), Some(N), None]);
        assert_eq!(table(MergeMap::M1), [Some(P), None, Some(N), None]);
        assert_eq!(table(MergeMap::M2), [Some(P), Some(N), None, None]);
        assert_eq!(table(MergeMap::Zero), [None; 4]);
    }

    #[test]
    fn split_tables() {
        assert_eq!(SplitMap::D.apply(P), vec![(P, N), (N, P)]);
        assert_eq!(SplitMap::D.apply(N), vec![(N, N)]);
        assert_eq!(SplitMap::D0.apply(P), vec![(P, N), (N, P)]);
        assert!(SplitMap::D0.apply(N).is_empty());
        assert_eq!(SplitMap::D1.apply(P), vec![(P, N)]);
        assert_eq!(SplitMap::D1.apply(N), vec![(N, N)]);
        assert_eq!(SplitMap::D2.apply(P), vec![(N, P)]);
        assert_eq!(SplitMap::D2.apply(N), vec![(N, N)]);
    }

    #[test]
    fn pieces_agree_with_classical_maps() {
        // each piece agrees with the classical map wherever it is nonzero
        for x in [P, N] {
            for y in [P, N] {
                for piece in [MergeMap::M0, MergeMap::M1, MergeMap::M2] {
                    if let Some(v) = piece.apply(x, y) {
                        assert_eq!(MergeMap::M.apply(x, y), Some(v));
                    }
                }
            }
            for piece in [SplitMap::D0, SplitMap::D1, SplitMap::D2] {
                for out in piece.apply(x) {
                    assert!(SplitMap::D.apply(x).contains(&out));
                }
            }
        }
    }

    #[test]
    fn dispatch_by_classes() {
        let t = SurfaceBackend::for_genus(1);
        let triv = ConjClass::trivial();
        let a = t.canonical_class(&"a".parse().unwrap()).unwrap();
        let b = t.canonical_class(&"b".parse().unwrap()).unwrap();
        assert_eq!(resolve_merge_case(&triv, &triv, &triv), Ok(MergeMap::M));
        assert_eq!(resolve_merge_case(&a, &triv, &a), Ok(MergeMap::M1));
        assert_eq!(resolve_merge_case(&triv, &a, &a), Ok(MergeMap::M2));
        assert_eq!(resolve_merge_case(&a, &a, &triv), Ok(MergeMap::M0));
        assert_eq!(resolve_merge_case(&a, &a, &b), Ok(MergeMap::Zero));
        assert!(resolve_merge_case(&a, &b, &triv).is_err());
        assert!(resolve_merge_case(&a, &triv, &b).is_err());
        assert!(resolve_merge_case(&triv, &triv, &a).is_err());
        assert_eq!(resolve_split_case(&a, &a, &triv), Ok(SplitMap::D1));
        assert_eq!(resolve_split_case(&a, &triv, &a), Ok(SplitMap::D2));
        assert_eq!(resolve_split_case(&triv, &b, &b), Ok(SplitMap::D0));
        assert_eq!(resolve_split_case(&a, &b, &b), Ok(SplitMap::Zero));
        assert!(resolve_split_case(&a, &triv, &triv).is_err());
    }

    #[test]
    fn indexed_pieces_are_swaps_of_each_other() {
        for x in [P, N] {
            for y in [P, N] {
                assert_eq!(MergeMap::M1.apply(x, y), MergeMap::M2.apply(y, x));
            }
            let swapped: Vec<_> = SplitMap::D2.apply(x).into_iter().map(|(a, b)| (b, a)).collect();
            assert_eq!(SplitMap::D1.apply(x), swapped);
        }
    }
}
