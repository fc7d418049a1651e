//! Khovanov homology over Q from the cube of resolutions.
//!
//! Gradings: a generator of state `s` (with `r` one-smoothings) labelling
//! each loop `v+` or `v-` sits in `i = r - n-` and
//! `j = #v+ - #v- + r + n+ - 2n-`. The 0-smoothing at `X[i,j,k,l]` joins
//! slots (0,1) and (2,3); the 1-smoothing joins (0,3) and (1,2).

mod linalg;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::PlanarDiagram;
use crate::laurent::{BivariateLaurent, RationalScalar, UnivariateLaurent, Variable};

pub use linalg::SparseIntMatrix;

/// Largest diagram `homology_dims` accepts.
pub const MAX_HOMOLOGY_CROSSINGS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KhovanovError {
    #[error("diagram has {found} crossings; the limit is {max}")]
    TooManyCrossings { found: usize, max: usize },
    #[error("homology is not thin: {0}")]
    NotThin(String),
}

/// Loops of one complete smoothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionState {
    state: u64,
    loop_of_arc: Vec<usize>,
    first_arc: Vec<usize>,
    arc_loops: usize,
    loop_count: usize,
}

impl ResolutionState {
    pub fn state(&self) -> u64 {
        self.state
    }

    /// Number of one-smoothings.
    pub fn ones(&self) -> u32 {
        self.state.count_ones()
    }

    /// Total loops, free loops of the diagram included.
    pub fn loop_count(&self) -> usize {
        self.loop_count
    }

    pub fn loop_of_arc(&self, arc: usize) -> usize {
        self.loop_of_arc[arc]
    }

    /// Loop ids in order; free loops come after the ones carrying arcs.
    pub fn loops(&self) -> std::ops::Range<usize> {
        0..self.loop_count
    }

    fn free_loop(&self, k: usize) -> usize {
        self.arc_loops + k
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Smooths every crossing according to `state` (bit `c` set means the
/// 1-smoothing at crossing `c`) and labels the resulting loops.
///
/// Loops carrying arcs are numbered by their lowest arc.
pub fn resolve(d: &PlanarDiagram, state: u64) -> ResolutionState {
    assert!(d.crossing_count() <= 64, "state mask holds at most 64 crossings");
    assert!(
        d.crossing_count() == 64 || state >> d.crossing_count() == 0,
        "state has bits beyond the crossing count"
    );
    let arcs = d.arc_count();
    let mut parent: Vec<usize> = (0..arcs).collect();
    for (c, x) in d.crossings().iter().enumerate() {
        let [s0, s1, s2, s3] = x.arcs;
        let pairs = if state >> c & 1 == 0 {
            [(s0, s1), (s2, s3)]
        } else {
            [(s0, s3), (s1, s2)]
        };
        for (u, v) in pairs {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru.max(rv)] = ru.min(rv);
            }
        }
    }
    let mut id_of_root = HashMap::new();
    let mut loop_of_arc = Vec::with_capacity(arcs);
    let mut first_arc = Vec::new();
    for arc in 0..arcs {
        let root = find(&mut parent, arc);
        let next = id_of_root.len();
        let id = *id_of_root.entry(root).or_insert(next);
        if id == next {
            first_arc.push(arc);
        }
        loop_of_arc.push(id);
    }
    let arc_loops = id_of_root.len();
    ResolutionState {
        state,
        loop_of_arc,
        first_arc,
        arc_loops,
        loop_count: arc_loops + d.free_loops(),
    }
}

fn degrees(d: &PlanarDiagram) -> (i32, i32) {
    (d.n_pos() as i32, d.n_neg() as i32)
}

/// Chain-group dimensions per bigrading `(i, j)`.
pub fn chain_dimensions(d: &PlanarDiagram) -> BTreeMap<(i32, i32), usize> {
    let n = d.crossing_count();
    assert!(n < 64, "too many crossings to enumerate states");
    let (np, nn) = degrees(d);
    let mut dims = BTreeMap::new();
    for state in 0..1u64 << n {
        let res = resolve(d, state);
        let r = res.ones() as i32;
        let l = res.loop_count();
        let mut binom: u64 = 1;
        for plus in 0..=l {
            let j = 2 * plus as i32 - l as i32 + r + np - 2 * nn;
            *dims.entry((r - nn, j)).or_insert(0) += binom as usize;
            binom = binom * (l - plus) as u64 / (plus + 1) as u64;
        }
    }
    dims
}

/// A basis element: a state together with the set of loops labelled `v+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub state: u64,
    pub plus: u64,
}

/// The Khovanov chain complex with a basis for every bigrading.
pub struct KhovanovComplex {
    crossings: Vec<[usize; 4]>,
    n_neg: i32,
    resolutions: Vec<ResolutionState>,
    blocks: BTreeMap<(i32, i32), Vec<Generator>>,
    position: HashMap<Generator, usize>,
}

impl KhovanovComplex {
    pub fn new(d: &PlanarDiagram) -> Self {
        let n = d.crossing_count();
        assert!(n < 64, "too many crossings to enumerate states");
        let (np, nn) = degrees(d);
        let resolutions: Vec<ResolutionState> =
            (0..1u64 << n).into_par_iter().map(|s| resolve(d, s)).collect();
        let mut blocks: BTreeMap<(i32, i32), Vec<Generator>> = BTreeMap::new();
        for res in &resolutions {
            let r = res.ones() as i32;
            let l = res.loop_count();
            assert!(l < 64, "too many loops");
            for plus in 0..1u64 << l {
                let p = plus.count_ones() as i32;
                let j = 2 * p - l as i32 + r + np - 2 * nn;
                blocks.entry((r - nn, j)).or_default().push(Generator {
                    state: res.state,
                    plus,
                });
            }
        }
        let mut position = HashMap::new();
        for gens in blocks.values() {
            for (k, g) in gens.iter().enumerate() {
                position.insert(*g, k);
            }
        }
        Self {
            crossings: d.crossings().iter().map(|x| x.arcs).collect(),
            n_neg: nn,
            resolutions,
            blocks,
            position,
        }
    }

    pub fn bigradings(&self) -> impl Iterator<Item = (i32, i32)> + '_ {
        self.blocks.keys().copied()
    }

    pub fn basis(&self, i: i32, j: i32) -> &[Generator] {
        self.blocks.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self, i: i32, j: i32) -> usize {
        self.basis(i, j).len()
    }

    pub fn dimensions(&self) -> BTreeMap<(i32, i32), usize> {
        self.blocks.iter().map(|(k, v)| (*k, v.len())).collect()
    }

    /// Image of one generator under the differential, as signed generators.
    fn apply(&self, g: Generator) -> Vec<(Generator, i64)> {
        let from = &self.resolutions[g.state as usize];
        let mut out = Vec::new();
        for c in 0..self.crossings.len() {
            if g.state >> c & 1 == 1 {
                continue;
            }
            let sign = if (g.state & ((1u64 << c) - 1)).count_ones() % 2 == 0 {
                1
            } else {
                -1
            };
            let to = &self.resolutions[(g.state | 1 << c) as usize];
            for (plus, coeff) in self.edge_map(from, to, c, g.plus) {
                out.push((
                    Generator {
                        state: to.state,
                        plus,
                    },
                    sign * coeff,
                ));
            }
        }
        out
    }

    /// Merge or split along the cube edge that flips crossing `c`.
    fn edge_map(&self, from: &ResolutionState, to: &ResolutionState, c: usize, plus: u64) -> Vec<(u64, i64)> {
        let arcs = self.crossings[c];
        let (f0, f2) = (from.loop_of_arc(arcs[0]), from.loop_of_arc(arcs[2]));
        let bit = |l: usize| plus >> l & 1 == 1;
        let mut carried: u64 = 0;
        for (l, &arc) in from.first_arc.iter().enumerate() {
            if l != f0 && l != f2 && bit(l) {
                carried |= 1 << to.loop_of_arc(arc);
            }
        }
        for k in 0..from.loop_count - from.arc_loops {
            if bit(from.free_loop(k)) {
                carried |= 1 << to.free_loop(k);
            }
        }
        if f0 != f2 {
            // merge: m(++) = +, m(+-) = m(-+) = -, m(--) = 0
            let m = to.loop_of_arc(arcs[0]);
            match (bit(f0), bit(f2)) {
                (true, true) => vec![(carried | 1 << m, 1)],
                (true, false) | (false, true) => vec![(carried, 1)],
                (false, false) => vec![],
            }
        } else {
            // split: D(+) = +- + -+, D(-) = --
            let (t0, t2) = (to.loop_of_arc(arcs[0]), to.loop_of_arc(arcs[2]));
            debug_assert_ne!(t0, t2);
            if bit(f0) {
                vec![(carried | 1 << t0, 1), (carried | 1 << t2, 1)]
            } else {
                vec![(carried, 1)]
            }
        }
    }

    /// The block `C^{i,j} -> C^{i+1,j}`; rows index the target basis.
    pub fn differential_block(&self, i: i32, j: i32) -> SparseIntMatrix {
        let source = self.basis(i, j);
        let rows = self.dim(i + 1, j);
        let mut triplets = Vec::new();
        for (col, g) in source.iter().enumerate() {
            for (h, v) in self.apply(*g) {
                debug_assert_eq!(self.grading(h), (i + 1, j), "differential must preserve j");
                triplets.push((self.position[&h], col, v));
            }
        }
        SparseIntMatrix::from_triplets(rows, source.len(), triplets)
    }

    /// The full map `C^i -> C^{i+1}`, with each side's basis ordered by `j`
    /// and then by position within the block.
    pub fn differential(&self, i: i32) -> SparseIntMatrix {
        let offsets = |deg: i32| {
            let mut acc = 0;
            let mut map = BTreeMap::new();
            for (&(ii, j), gens) in &self.blocks {
                if ii == deg {
                    map.insert(j, acc);
                    acc += gens.len();
                }
            }
            (map, acc)
        };
        let (src, cols) = offsets(i);
        let (dst, rows) = offsets(i + 1);
        let mut triplets = Vec::new();
        for (&j, &c0) in &src {
            let block = self.differential_block(i, j);
            if block.rows() == 0 {
                continue;
            }
            let r0 = dst[&j];
            triplets.extend(block.entries().map(|(r, c, v)| (r0 + r, c0 + c, v)));
        }
        SparseIntMatrix::from_triplets(rows, cols, triplets)
    }

    fn grading(&self, g: Generator) -> (i32, i32) {
        let res = &self.resolutions[g.state as usize];
        let r = res.ones() as i32;
        let p = g.plus.count_ones() as i32;
        let np = self.crossings.len() as i32 - self.n_neg;
        (r - self.n_neg, 2 * p - res.loop_count() as i32 + r + np - 2 * self.n_neg)
    }

    /// Whether `d^{i+1} d^i` vanishes on every block.
    pub fn d_squared_vanishes(&self) -> bool {
        self.blocks.keys().all(|&(i, j)| {
            let first = self.differential_block(i, j);
            let second = self.differential_block(i + 1, j);
            second.cols() == 0 || first.rows() == 0 || second.mul(&first).is_zero()
        })
    }

    /// Homology ranks over Q, one rank computation per block.
    pub fn homology(&self) -> BigradedDims {
        let keys: Vec<(i32, i32)> = self.blocks.keys().copied().collect();
        let ranks: HashMap<(i32, i32), usize> = keys
            .par_iter()
            .map(|&(i, j)| ((i, j), self.differential_block(i, j).rank()))
            .collect();
        let dims = keys
            .iter()
            .filter_map(|&(i, j)| {
                let out = ranks[&(i, j)];
                let inc = ranks.get(&(i - 1, j)).copied().unwrap_or(0);
                let h = self.dim(i, j) - out - inc;
                (h > 0).then_some(((i, j), h))
            })
            .collect();
        BigradedDims { dims }
    }
}

/// Dimensions of `H^{i,j}`, zero entries omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedDims {
    dims: BTreeMap<(i32, i32), usize>,
}

#[derive(Serialize, Deserialize)]
struct DimEntry {
    i: i32,
    j: i32,
    dim: usize,
}

impl Serialize for BigradedDims {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|(i, j, dim)| DimEntry { i, j, dim }))
    }
}

impl<'de> Deserialize<'de> for BigradedDims {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<DimEntry>::deserialize(d)?;
        Ok(Self::from_iter(entries.into_iter().map(|e| ((e.i, e.j), e.dim))))
    }
}

impl FromIterator<((i32, i32), usize)> for BigradedDims {
    fn from_iter<I: IntoIterator<Item = ((i32, i32), usize)>>(iter: I) -> Self {
        let mut dims = BTreeMap::new();
        for (k, v) in iter {
            if v > 0 {
                *dims.entry(k).or_insert(0) += v;
            }
        }
        Self { dims }
    }
}

impl BigradedDims {
    pub fn get(&self, i: i32, j: i32) -> usize {
        self.dims.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `(i, j, dim)` in increasing `(i, j)` order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, i32, usize)> + '_ {
        self.dims.iter().map(|(&(i, j), &d)| (i, j, d))
    }

    pub fn total_dimension(&self) -> usize {
        self.dims.values().sum()
    }

    /// `sum t^i q^j dim H^{i,j}`.
    pub fn poincare(&self) -> BivariateLaurent {
        BivariateLaurent::from_terms(
            self.iter()
                .map(|(i, j, d)| (j, i, RationalScalar::from_integer(d as i64))),
        )
    }

    /// `sum (-1)^i q^j dim H^{i,j}`.
    pub fn euler_characteristic(&self) -> UnivariateLaurent {
        let terms: Vec<(i32, i64)> = self
            .iter()
            .map(|(i, j, d)| (j, if i % 2 == 0 { d as i64 } else { -(d as i64) }))
            .collect();
        UnivariateLaurent::from_int_terms(Variable::Q, &terms)
    }
}

fn guard(d: &PlanarDiagram) -> Result<(), KhovanovError> {
    if d.crossing_count() > MAX_HOMOLOGY_CROSSINGS {
        return Err(KhovanovError::TooManyCrossings {
            found: d.crossing_count(),
            max: MAX_HOMOLOGY_CROSSINGS,
        });
    }
    Ok(())
}

pub fn homology_dims(d: &PlanarDiagram) -> Result<BigradedDims, KhovanovError> {
    guard(d)?;
    Ok(KhovanovComplex::new(d).homology())
}

/// The Poincare polynomial `Kh(q, t)`.
pub fn khovanov_poincare(d: &PlanarDiagram) -> Result<BivariateLaurent, KhovanovError> {
    Ok(homology_dims(d)?.poincare())
}

/// For `kh` supported on exactly the two diagonals `j - 2i = c - 1` and
/// `j - 2i = c + 1`, returns `c`.
pub fn extract_signature_thin(kh: &BivariateLaurent) -> Result<i32, KhovanovError> {
    let diagonals: std::collections::BTreeSet<i32> = kh.terms().map(|(j, i, _)| j - 2 * i).collect();
    match diagonals.iter().copied().collect::<Vec<_>>().as_slice() {
        [lo, hi] if hi - lo == 2 => Ok(lo + 1),
        other => Err(KhovanovError::NotThin(format!("diagonals j - 2i in {other:?}"))),
    }
}
