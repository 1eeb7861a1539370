//! Khovanov chain complexes over GF(2), classical and homotopical.

mod complex;
mod maps;
mod table1;

use std::fmt;
use std::str::FromStr;

pub use complex::{apply_edge, build_complex, compute_gradings, edge_map, ChainComplex, EdgeMap, Generator, Gradings, HKey, KhOptions, Slice};
pub use maps::{merge_map_for, resolve_merge_case, resolve_split_case, split_map_for, MergeMap, SplitMap};
pub use table1::{check_rows, derive_paths, evaluate, rows, verify_table1, CellCheck, FaceType, Factor, Pattern, Row, Side, Step};


#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// The full differential; circle classes only enter as a report.
    Classical,
    /// Only the part of the differential preserving the homotopical grading.
    #[default]
    Homotopical,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Classical => "classical",
            Flavor::Homotopical => "homotopical",
        })
    }
}

impl FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classical" => Ok(Flavor::Classical),
            "homotopical" => Ok(Flavor::Homotopical),
            other => Err(format!("unknown flavor `{other}` (expected classical or homotopical)")),
        }
    }
}
