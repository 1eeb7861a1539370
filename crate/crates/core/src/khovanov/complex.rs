//! The chain complex, split into slices of constant quantum and homotopical
//! grading. Each slice is a chain complex in the homological degree on its own.

use std::collections::HashMap;

use super::maps::{merge_by_id, split_by_id, MergeMap, SplitMap};
use super::Flavor;
use crate::diagram::Diagram;
use crate::error::{CaseError, KhError};
use crate::gf2::Gf2Matrix;
use crate::state_cube::{ClassId, CubeTable, EdgeKind, ResolveOptions, StateData, TableEdge};
use crate::surface_group::GradingElem;

#[derive(Clone, Debug, Default)]
pub struct KhOptions {
    pub flavor: Flavor,
    /// Apply the `-n_-` / `n_+ - 2 n_-` normalization.
    pub no_shift: bool,
    pub resolve: ResolveOptions,
}

impl KhOptions {
    pub fn new(flavor: Flavor) -> Self {
        Self { flavor, ..Self::default() }
    }
}

/// A basis element: a state and a label per circle (bit set for `v+`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub state: u64,
    pub labels: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gradings {
    pub i: i64,
    pub j: i64,
    pub h: GradingElem,
}

/// Homological, quantum and homotopical degree of a generator.
pub fn compute_gradings(
    g: &Generator,
    table: &CubeTable,
    n_plus: usize,
    n_minus: usize,
    shift: bool,
) -> Gradings {
    let st = &table.states[g.state as usize];
    let beta = g.state.count_ones() as i64;
    let circles = st.classes.len() as i64;
    let plus = (g.labels & mask(st.classes.len())).count_ones() as i64;
    let (si, sj) = if shift { (-(n_minus as i64), n_plus as i64 - 2 * n_minus as i64) } else { (0, 0) };
    let mut h = GradingElem::zero();
    for (k, &c) in st.classes.iter().enumerate() {
        if c != 0 {
            h.add_term(&table.classes[c as usize], if g.labels >> k & 1 == 1 { 1 } else { -1 });
        }
    }
    Gradings { i: beta + si, j: 2 * plus - circles + beta + sj, h }
}

fn mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Sparse homotopical degree: `(class id, coefficient)` sorted by id.
pub type HKey = Vec<(ClassId, i64)>;

#[derive(Clone, Debug)]
pub struct Slice {
    pub j: i64,
    pub h: HKey,
    /// Generator count per cube height `beta`.
    pub dims: Vec<usize>,
    /// `d[beta]` maps height `beta` to `beta + 1`.
    pub d: Vec<Gf2Matrix>,
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub flavor: Flavor,
    pub crossings: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub shift: bool,
    pub table: CubeTable,
    pub slices: Vec<Slice>,
}

impl ChainComplex {
    pub fn i_shift(&self) -> i64 {
        if self.shift {
            -(self.n_minus as i64)
        } else {
            0
        }
    }

    pub fn generator_count(&self) -> usize {
        self.slices.iter().map(|s| s.dims.iter().sum::<usize>()).sum()
    }

    pub fn h_elem(&self, h: &HKey) -> GradingElem {
        let mut e = GradingElem::zero();
        for &(c, k) in h {
            e.add_term(&self.table.classes[c as usize], k);
        }
        e
    }
}

/// Which partial map a cube edge carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeMap {
    Merge(MergeMap),
    Split(SplitMap),
    Zero,
}

impl std::fmt::Display for EdgeMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EdgeMap::Merge(m) => write!(f, "{m}"),
            EdgeMap::Split(m) => write!(f, "{m}"),
            EdgeMap::Zero => f.write_str("0"),
        }
    }
}

pub fn edge_map(
    flavor: Flavor,
    from: &StateData,
    to: &StateData,
    edge: &TableEdge,
    classes: &[crate::surface_group::ConjClass],
) -> Result<EdgeMap, CaseError> {
    Ok(match (flavor, edge.kind) {
        (_, EdgeKind::Neutral { .. }) => EdgeMap::Zero,
        (Flavor::Classical, EdgeKind::Merge { .. }) => EdgeMap::Merge(MergeMap::M),
        (Flavor::Classical, EdgeKind::Split { .. }) => EdgeMap::Split(SplitMap::D),
        (Flavor::Homotopical, EdgeKind::Merge { a, b, into }) => {
            let (c1, c2, c) = (from.classes[a], from.classes[b], to.classes[into]);
            EdgeMap::Merge(merge_by_id(c1, c2, c).ok_or_else(|| {
                let name = |i: ClassId| classes[i as usize].to_string();
                CaseError::CorruptedResolution(format!("merge {} (x) {} -> {}", name(c1), name(c2), name(c)))
            })?)
        }
        (Flavor::Homotopical, EdgeKind::Split { from: f, a, b }) => {
            let (c, c1, c2) = (from.classes[f], to.classes[a], to.classes[b]);
            EdgeMap::Split(split_by_id(c, c1, c2).ok_or_else(|| {
                let name = |i: ClassId| classes[i as usize].to_string();
                CaseError::CorruptedResolution(format!("split {} -> {} (x) {}", name(c), name(c1), name(c2)))
            })?)
        }
    })
}

/// Images of `labels` under one partial map, as target label masks.
pub fn apply_edge(map: EdgeMap, edge: &TableEdge, labels: u64, out: &mut Vec<u64>) {
    out.clear();
    let bit = |k: usize| labels >> k & 1 == 1;
    let mut carried = 0u64;
    for &(i, j) in &edge.carried {
        if bit(i as usize) {
            carried |= 1 << j;
        }
    }
    match (map, edge.kind) {
        (EdgeMap::Merge(m), EdgeKind::Merge { a, b, into }) => {
            if let Some(x) = m.apply(bit(a), bit(b)) {
                out.push(carried | (x as u64) << into);
            }
        }
        (EdgeMap::Split(m), EdgeKind::Split { from, a, b }) => {
            for (x, y) in m.apply(bit(from)) {
                out.push(carried | (x as u64) << a | (y as u64) << b);
            }
        }
        _ => {}
    }
}

const MAX_GENERATORS: usize = 50_000_000;

/// Builds every slice of the complex for `d`.
pub fn build_complex(d: &Diagram, opts: &KhOptions) -> Result<ChainComplex, KhError> {
    let signs = d.crossing_signs()?;
    let n = d.crossings.len();
    if n > 24 {
        return Err(KhError::TooLarge(format!("{n} crossings; at most 24 are supported")));
    }
    let table = CubeTable::build(d, &opts.resolve)?;
    let shift = !opts.no_shift;
    let sj = if shift { signs.n_plus as i64 - 2 * signs.n_minus as i64 } else { 0 };

    // assign every generator to a slice
    let mut slice_of: HashMap<(i64, HKey), usize> = HashMap::new();
    let mut slices: Vec<Slice> = Vec::new();
    let mut position: Vec<Vec<(u32, u32)>> = Vec::with_capacity(1 << n);
    let mut total = 0usize;
    for s in 0..1u64 << n {
        let st = &table.states[s as usize];
        let gamma = st.classes.len();
        total += 1usize << gamma.min(40);
        if gamma > 30 || total > MAX_GENERATORS {
            return Err(KhError::TooLarge(format!("more than {MAX_GENERATORS} generators")));
        }
        let beta = s.count_ones() as usize;
        let mut nontrivial: Vec<(ClassId, usize)> =
            st.classes.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (c, k)).collect();
        nontrivial.sort_unstable();
        let mut pos = Vec::with_capacity(1 << gamma);
        let mut h: HKey = Vec::new();
        for x in 0..1u64 << gamma {
            let j = 2 * x.count_ones() as i64 - gamma as i64 + beta as i64 + sj;
            h.clear();
            if opts.flavor == Flavor::Homotopical {
                for &(c, k) in &nontrivial {
                    let v = if x >> k & 1 == 1 { 1 } else { -1 };
                    match h.last_mut() {
                        Some(last) if last.0 == c => last.1 += v,
                        _ => h.push((c, v)),
                    }
                }
                h.retain(|t| t.1 != 0);
            }
            let id = match slice_of.get(&(j, h.clone())) {
                Some(&id) => id,
                None => {
                    slices.push(Slice { j, h: h.clone(), dims: vec![0; n + 1], d: Vec::new() });
                    slice_of.insert((j, h.clone()), slices.len() - 1);
                    slices.len() - 1
                }
            };
            let idx = slices[id].dims[beta];
            slices[id].dims[beta] += 1;
            pos.push((id as u32, idx as u32));
        }
        position.push(pos);
    }
    for sl in &mut slices {
        sl.d = (0..n).map(|b| Gf2Matrix::zeros(sl.dims[b + 1], sl.dims[b])).collect();
    }

    // fill differentials edge by edge
    let mut images = Vec::new();
    for s in 0..1u64 << n {
        let beta = s.count_ones() as usize;
        for c in 0..n {
            if s >> c & 1 == 1 {
                continue;
            }
            let t = s | 1 << c;
            let edge = table.edge(s, c)?;
            let map = edge_map(opts.flavor, &table.states[s as usize], &table.states[t as usize], &edge, &table.classes)?;
            if map == EdgeMap::Zero {
                continue;
            }
            for (x, &(sid, col)) in position[s as usize].iter().enumerate() {
                apply_edge(map, &edge, x as u64, &mut images);
                for &y in &images {
                    let (tid, row) = position[t as usize][y as usize];
                    if tid != sid {
                        return Err(KhError::GradingLeak { crossing: c, state: s });
                    }
                    slices[sid as usize].d[beta].toggle(row as usize, col as usize);
                }
            }
        }
    }
    slices.sort_by(|a, b| (a.j, &a.h).cmp(&(b.j, &b.h)));
    Ok(ChainComplex {
        flavor: opts.flavor,
        crossings: n,
        n_plus: signs.n_plus,
        n_minus: signs.n_minus,
        shift,
        table,
        slices,
    })
}
