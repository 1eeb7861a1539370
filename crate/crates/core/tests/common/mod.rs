#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::path::PathBuf;

use hkh_core::diagram::{Crossing, Diagram, Sign};
use hkh_core::surface_group::{GenKind, Word};
use num_complex::Complex64;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Every corpus diagram by file stem, sorted by name.
pub fn corpus() -> Vec<(String, Diagram)> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(corpus_dir()).expect("corpus directory") {
        let path = entry.expect("dir entry").path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let text = std::fs::read_to_string(&path).expect("readable corpus file");
        let d = Diagram::from_json(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        out.push((path.file_stem().unwrap().to_string_lossy().into_owned(), d));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

pub fn corpus_file(name: &str) -> Diagram {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.json"))).expect("corpus file");
    Diagram::from_json(&text).expect("valid corpus file")
}

// ---------------------------------------------------------------------------
// Brute-force classical Khovanov homology over GF(2).

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Circles of a state as sorted lists of crossing positions `4c + k`;
/// free loops are appended as empty lists.
fn circles(d: &Diagram, state: u64) -> Vec<Vec<usize>> {
    let n = d.crossings.len();
    let mut dsu = Dsu::new(4 * n);
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for (c, x) in d.crossings.iter().enumerate() {
        for k in 0..4 {
            if let Some(p) = seen.insert(x.slots[k], 4 * c + k) {
                dsu.union(p, 4 * c + k);
            }
        }
        let pairs = if state >> c & 1 == 0 { [(0, 1), (2, 3)] } else { [(0, 3), (1, 2)] };
        for (a, b) in pairs {
            dsu.union(4 * c + a, 4 * c + b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in 0..4 * n {
        let r = dsu.find(p);
        groups.entry(r).or_default().push(p);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out.extend(d.free_loops.iter().map(|_| Vec::new()));
    out
}

fn gf2_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Classical Khovanov homology dimensions over GF(2) by direct enumeration.
/// A one-to-one bifurcation contributes the zero map.
pub fn oracle_classical(d: &Diagram) -> BTreeMap<(i64, i64), usize> {
    let n = d.crossings.len();
    assert!(n <= 10, "oracle is for small diagrams");
    let n_minus = d.crossings.iter().filter(|c| c.sign == Sign::Negative).count() as i64;
    let n_plus = n as i64 - n_minus;
    let all: Vec<Vec<Vec<usize>>> = (0..1u64 << n).map(|s| circles(d, s)).collect();

    // generators indexed by (i, j)
    let mut index: HashMap<(u64, u64), (i64, i64, usize)> = HashMap::new();
    let mut counts: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for s in 0..1u64 << n {
        let k = all[s as usize].len();
        let beta = s.count_ones() as i64;
        for lab in 0..1u64 << k {
            let plus = lab.count_ones() as i64;
            let i = beta - n_minus;
            let j = plus - (k as i64 - plus) + beta + n_plus - 2 * n_minus;
            let slot = counts.entry((i, j)).or_insert(0);
            index.insert((s, lab), (i, j, *slot));
            *slot += 1;
        }
    }

    let mut blocks: BTreeMap<(i64, i64), Vec<Vec<bool>>> = BTreeMap::new();
    for (&(i, j), &size) in &counts {
        let rows = counts.get(&(i + 1, j)).copied().unwrap_or(0);
        blocks.insert((i, j), vec![vec![false; size]; rows]);
    }
    for s in 0..1u64 << n {
        let from = &all[s as usize];
        for c in 0..n {
            if s >> c & 1 == 1 {
                continue;
            }
            let t = s | 1 << c;
            let to = &all[t as usize];
            let touches = |circle: &Vec<usize>| circle.iter().any(|&p| p / 4 == c);
            let a: Vec<usize> = (0..from.len()).filter(|&x| touches(&from[x])).collect();
            let b: Vec<usize> = (0..to.len()).filter(|&x| touches(&to[x])).collect();
            // untouched circles keep their position sets; free loops keep their order
            let mut carry: Vec<(usize, usize)> = Vec::new();
            let mut loops_to = (0..to.len()).filter(|&y| to[y].is_empty());
            for x in 0..from.len() {
                if touches(&from[x]) {
                    continue;
                }
                let y = if from[x].is_empty() {
                    loops_to.next().unwrap()
                } else {
                    (0..to.len()).find(|&y| to[y] == from[x]).unwrap()
                };
                carry.push((x, y));
            }
            for lab in 0..1u64 << from.len() {
                let mut base = 0u64;
                for &(x, y) in &carry {
                    if lab >> x & 1 == 1 {
                        base |= 1 << y;
                    }
                }
                let bit = |x: usize| lab >> x & 1 == 1;
                let images: Vec<u64> = match (a.len(), b.len()) {
                    (2, 1) => match (bit(a[0]), bit(a[1])) {
                        (true, true) => vec![base | 1 << b[0]],
                        (true, false) | (false, true) => vec![base],
                        (false, false) => vec![],
                    },
                    (1, 2) => {
                        if bit(a[0]) {
                            vec![base | 1 << b[0], base | 1 << b[1]]
                        } else {
                            vec![base]
                        }
                    }
                    (1, 1) => vec![],
                    other => panic!("impossible bifurcation {other:?}"),
                };
                let (i, j, col) = index[&(s, lab)];
                for img in images {
                    let (_, _, row) = index[&(t, img)];
                    let m = blocks.get_mut(&(i, j)).unwrap();
                    m[row][col] ^= true;
                }
            }
        }
    }
    let ranks: BTreeMap<(i64, i64), usize> = blocks.into_iter().map(|(k, m)| (k, gf2_rank(m))).collect();
    let mut out = BTreeMap::new();
    for (&(i, j), &size) in &counts {
        let out_rank = ranks.get(&(i, j)).copied().unwrap_or(0);
        let in_rank = ranks.get(&(i - 1, j)).copied().unwrap_or(0);
        let dim = size - out_rank - in_rank;
        if dim > 0 {
            out.insert((i, j), dim);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Exhaustive search for source-sink orientations.

/// Some orientation (`true` = keep the link direction) making every crossing
/// alternate in, out, in, out.
pub fn brute_source_sink(d: &Diagram) -> Option<Vec<bool>> {
    let ne = d.edges.len();
    assert!(ne <= 16);
    'mask: for mask in 0..1u32 << ne {
        for x in &d.crossings {
            let inn: Vec<bool> = (0..4)
                .map(|k| {
                    let keep = mask >> x.slots[k] & 1 == 0;
                    x.is_incoming(k) == keep
                })
                .collect();
            if !(inn[0] == inn[2] && inn[1] == inn[3] && inn[0] != inn[1]) {
                continue 'mask;
            }
        }
        return Some((0..ne).map(|e| mask >> e & 1 == 0).collect());
    }
    None
}

pub fn is_source_sink(crossings: &[Crossing], forward: &[bool]) -> bool {
    crossings.iter().all(|x| {
        let inn: Vec<bool> = (0..4).map(|k| x.is_incoming(k) == forward[x.slots[k]]).collect();
        inn[0] == inn[2] && inn[1] == inn[3] && inn[0] != inn[1]
    })
}

// ---------------------------------------------------------------------------
// The genus-g surface group as a Fuchsian group in SU(1,1).

pub type Mat = [[Complex64; 2]; 2];

fn mul(a: &Mat, b: &Mat) -> Mat {
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

fn inv(a: &Mat) -> Mat {
    // determinant one
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

fn identity() -> Mat {
    let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    [[o, z], [z, o]]
}

fn rot(theta: f64) -> Mat {
    let z = Complex64::new(0.0, 0.0);
    [[Complex64::from_polar(1.0, theta / 2.0), z], [z, Complex64::from_polar(1.0, -theta / 2.0)]]
}

fn translate(dist: f64) -> Mat {
    let (c, s) = (Complex64::new((dist / 2.0).cosh(), 0.0), Complex64::new((dist / 2.0).sinh(), 0.0));
    [[c, s], [s, c]]
}

/// Side pairings of the regular hyperbolic 4g-gon with angle sum 2π.
pub struct Fuchsian {
    genus: usize,
    gens: Vec<[Mat; 2]>,
}

impl Fuchsian {
    pub fn new(genus: usize) -> Self {
        assert!(genus >= 2);
        let n = 4 * genus;
        let r = (1.0 / (PI / n as f64).tan()).acosh();
        let alpha = |k: usize| 2.0 * PI * k as f64 / n as f64;
        let pair = |j: usize, jp: usize| mul(&rot(alpha(jp)), &mul(&translate(2.0 * r), &rot(PI - alpha(j))));
        let gens = (0..genus)
            .flat_map(|i| [pair(4 * i + 2, 4 * i), inv(&pair(4 * i + 3, 4 * i + 1))])
            .map(|m| [m, inv(&m)])
            .collect();
        Fuchsian { genus, gens }
    }

    /// The matrix of `w` and the largest norm met along the way, which
    /// bounds the rounding error.
    pub fn matrix(&self, w: &Word) -> (Mat, f64) {
        let mut m = identity();
        let mut scale: f64 = 1.0;
        for l in w.free_reduce().letters() {
            let h = l.handle as usize - 1;
            assert!(h < self.genus);
            let g = 2 * h + if l.kind == GenKind::A { 0 } else { 1 };
            m = mul(&m, &self.gens[g][l.inverse as usize]);
            scale = scale.max(norm(&m));
        }
        (m, scale)
    }

    /// `|tr|`, a class function invariant under inversion.
    pub fn trace(&self, w: &Word) -> f64 {
        let (m, _) = self.matrix(w);
        (m[0][0] + m[1][1]).norm()
    }

    /// `Some(trivial)`, or `None` when rounding leaves the answer open.
    pub fn is_trivial(&self, w: &Word) -> Option<bool> {
        let (m, scale) = self.matrix(w);
        let tol = (1e-14 * scale * scale).max(1e-9);
        let dev = |s: f64| {
            let d = [[m[0][0] - s, m[0][1]], [m[1][0], m[1][1] - s]];
            norm(&d)
        };
        let dev = dev(1.0).min(dev(-1.0));
        if dev < tol && tol < 0.1 {
            Some(true)
        } else if dev > 0.5 && tol < 0.1 {
            Some(false)
        } else {
            None
        }
    }

    pub fn same_element(&self, u: &Word, v: &Word) -> Option<bool> {
        self.is_trivial(&u.concat(&v.inverse()))
    }
}

fn norm(m: &Mat) -> f64 {
    m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
