//! Seeded random plane graphs and face selections.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::condensation::SymmetricGraph;
use crate::error::{Error, Result};
use crate::graph::{validate_selection, Edge, FaceSelection, PlaneGraph, Point, VertexId};
use crate::weight::{Scalar, Var, Weight};

/// Attempts allowed when sampling a selection before giving up.
pub const MAX_ATTEMPTS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    Unit,
    /// `p/q` with `p, q` uniform in `1..=100`.
    Rational,
    /// A fresh variable `e<id>` per edge.
    Symbolic,
}

impl std::str::FromStr for WeightMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(WeightMode::Unit),
            "rational" => Ok(WeightMode::Rational),
            "symbolic" => Ok(WeightMode::Symbolic),
            _ => Err(Error::Format(format!("unknown weight mode `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub rows: u32,
    pub cols: u32,
    /// Probability that each grid edge is kept.
    pub keep: f64,
    pub weights: WeightMode,
    /// Probability that a unit square receives one diagonal.
    pub chords: f64,
}

impl GridSpec {
    pub fn new(rows: u32, cols: u32, keep: f64) -> Self {
        GridSpec { rows, cols, keep, weights: WeightMode::Unit, chords: 0.0 }
    }

    pub fn with_weights(mut self, weights: WeightMode) -> Self {
        self.weights = weights;
        self
    }

    pub fn with_chords(mut self, chords: f64) -> Self {
        self.chords = chords;
        self
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives the seed of trial `index` from a campaign seed.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn random_weight(mode: WeightMode, id: u32, rng: &mut impl Rng) -> Weight {
    match mode {
        WeightMode::Unit => Weight::one(),
        WeightMode::Rational => {
            Weight::Scalar(Scalar::new(rng.gen_range(1..=100).into(), rng.gen_range(1..=100).into()))
        }
        WeightMode::Symbolic => Weight::Poly(crate::weight::Poly::var(Var::indexed("e", id as usize))),
    }
}

/// Random subgraph of the `rows x cols` grid drawn at integer points, with
/// optional face diagonals. Isolated vertices are dropped.
pub fn grid_subgraph(spec: &GridSpec, seed: u64) -> PlaneGraph {
    let mut rng = rng(seed);
    let (rows, cols) = (spec.rows, spec.cols);
    let id = |r: u32, c: u32| r * cols + c;
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols && rng.gen_bool(spec.keep.clamp(0.0, 1.0)) {
                pairs.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows && rng.gen_bool(spec.keep.clamp(0.0, 1.0)) {
                pairs.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            if spec.chords > 0.0 && rng.gen_bool(spec.chords.clamp(0.0, 1.0)) {
                if rng.gen_bool(0.5) {
                    pairs.push((id(r, c), id(r + 1, c + 1)));
                } else {
                    pairs.push((id(r, c + 1), id(r + 1, c)));
                }
            }
        }
    }
    let edges: Vec<Edge> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| Edge::new(i as u32, u, v, random_weight(spec.weights, i as u32, &mut rng)))
        .collect();
    let used: BTreeSet<u32> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    let points: Vec<(VertexId, Point)> =
        used.iter().map(|&v| (VertexId(v), Point::new((v % cols) as i64, -((v / cols) as i64)))).collect();
    PlaneGraph::from_drawing(&points, edges).expect("grid drawings are plane")
}

/// Requirements on a sampled selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SelectionKind {
    /// Pick `k` independent boundary edges `a_i b_i` instead of bare vertices.
    pub edges: bool,
    /// Restrict to the designated unbounded face.
    pub outer_only: bool,
}

/// One attempt at a random selection of `k` pairs on a face with at least
/// `2k` distinct boundary vertices.
pub fn sample_selection(g: &PlaneGraph, k: usize, kind: SelectionKind, rng: &mut impl Rng) -> Option<FaceSelection> {
    let candidates: Vec<usize> = (0..g.faces().len())
        .filter(|&f| !kind.outer_only || Some(f) == g.outer_face_id())
        .filter(|&f| g.faces()[f].vertices().collect::<BTreeSet<_>>().len() >= 2 * k)
        .collect();
    let &face = candidates.choose(rng)?;
    let walk = &g.faces()[face].walk;
    let len = walk.len();
    let start = rng.gen_range(0..len);

    let sel = if kind.edges {
        let mut positions: Vec<usize> = rand::seq::index::sample(rng, len, k.min(len)).into_vec();
        if positions.len() < k {
            return None;
        }
        positions.sort_by_key(|&p| (p + len - start) % len);
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for p in positions {
            let d = walk[p];
            vertices.push(d.tail);
            vertices.push(g.edge(d.edge).unwrap().other(d.tail));
            edges.push(d.edge);
        }
        FaceSelection::with_edges(face, vertices, edges)
    } else {
        let mut positions: Vec<usize> = rand::seq::index::sample(rng, len, (2 * k).min(len)).into_vec();
        if positions.len() < 2 * k {
            return None;
        }
        positions.sort_by_key(|&p| (p + len - start) % len);
        FaceSelection::new(face, positions.iter().map(|&p| walk[p].tail).collect())
    };
    let sel = if rng.gen_bool(0.5) { reflect(&sel) } else { sel };
    validate_selection(g, &sel).ok().map(|_| sel)
}

/// The same marks read in the opposite direction around the face.
fn reflect(sel: &FaceSelection) -> FaceSelection {
    let mut vertices = sel.vertices.clone();
    vertices.reverse();
    let edges = sel.edges.clone().map(|mut es| {
        es.reverse();
        es
    });
    FaceSelection { face: sel.face, vertices, edges }
}

/// Draws graphs from `graph` and selections until `accept` holds.
pub fn sample_instance<R: Rng>(
    rng: &mut R,
    mut graph: impl FnMut(&mut R) -> PlaneGraph,
    k: usize,
    kind: SelectionKind,
    accept: impl Fn(&PlaneGraph, &FaceSelection) -> bool,
) -> Result<(PlaneGraph, FaceSelection)> {
    for _ in 0..MAX_ATTEMPTS {
        let g = graph(rng);
        if let Some(sel) = sample_selection(&g, k, kind, rng) {
            if accept(&g, &sel) {
                return Ok((g, sel));
            }
        }
    }
    Err(Error::GenerationExhausted(MAX_ATTEMPTS))
}

/// A grid of `2h + 1` rows mirrored across its middle row, with equal
/// weights on mirror-image edges. Axis vertices are listed left to right.
pub fn symmetric_grid(h: u32, cols: u32, keep: f64, weights: WeightMode, seed: u64) -> Result<SymmetricGraph> {
    let mut rng = rng(seed);
    let rows = 2 * h + 1;
    let id = |r: u32, c: u32| r * cols + c;
    let mirror_of = |v: u32| id(rows - 1 - v / cols, v % cols);
    for _ in 0..MAX_ATTEMPTS {
        let mut pairs: Vec<(u32, u32, Weight)> = Vec::new();
        for r in 0..=h {
            for c in 0..cols {
                let mut step = |a: u32, b: u32, rng: &mut ChaCha8Rng| {
                    if rng.gen_bool(keep) {
                        let w = random_weight(weights, pairs.len() as u32, rng);
                        let (ma, mb) = (mirror_of(a), mirror_of(b));
                        if (ma, mb) != (a, b) {
                            pairs.push((ma, mb, w.clone()));
                        }
                        pairs.push((a, b, w));
                    }
                };
                if c + 1 < cols {
                    step(id(r, c), id(r, c + 1), &mut rng);
                }
                if r < h {
                    step(id(r, c), id(r + 1, c), &mut rng);
                }
            }
        }
        let used: BTreeSet<u32> = pairs.iter().flat_map(|(u, v, _)| [*u, *v]).collect();
        let axis: Vec<VertexId> = used.iter().filter(|&&v| v / cols == h).map(|&v| VertexId(v)).collect();
        if axis.is_empty() || axis.len() % 2 == 1 {
            continue;
        }
        let points: Vec<(VertexId, Point)> =
            used.iter().map(|&v| (VertexId(v), Point::new((v % cols) as i64, -((v / cols) as i64)))).collect();
        let edges: Vec<Edge> =
            pairs.into_iter().enumerate().map(|(i, (u, v, w))| Edge::new(i as u32, u, v, w)).collect();
        let g = PlaneGraph::from_drawing(&points, edges)?;
        let mirror: BTreeMap<VertexId, VertexId> =
            used.iter().map(|&v| (VertexId(v), VertexId(mirror_of(v)))).collect();
        let upper: BTreeSet<VertexId> = used.iter().filter(|&&v| v / cols < h).map(|&v| VertexId(v)).collect();
        return SymmetricGraph::new(g, axis, mirror, upper);
    }
    Err(Error::GenerationExhausted(MAX_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::matching_sum_brute;

    #[test]
    fn keep_one_is_full_grid() {
        let g = grid_subgraph(&GridSpec::new(3, 4, 1.0), 0);
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 17);
    }

    #[test]
    fn keep_zero_is_empty() {
        let g = grid_subgraph(&GridSpec::new(3, 4, 0.0), 5);
        assert!(g.is_empty());
        assert_eq!(matching_sum_brute(&g), Weight::one());
    }

    #[test]
    fn same_seed_same_graph() {
        let spec = GridSpec::new(4, 4, 0.8).with_weights(WeightMode::Rational);
        assert_eq!(grid_subgraph(&spec, 42), grid_subgraph(&spec, 42));
    }

    #[test]
    fn chords_make_non_bipartite_graphs() {
        let spec = GridSpec::new(4, 4, 1.0).with_chords(0.5);
        assert!((0..20).any(|s| !grid_subgraph(&spec, s).is_bipartite()));
    }

    #[test]
    fn trial_seeds_differ() {
        let seeds: BTreeSet<u64> = (0..1000).map(|i| trial_seed(7, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }

    #[test]
    fn sampled_selections_are_valid() {
        let mut r = rng(3);
        let g = grid_subgraph(&GridSpec::new(4, 4, 0.9), 1);
        for kind in [SelectionKind::default(), SelectionKind { edges: true, outer_only: false }] {
            let (g, sel) = sample_instance(&mut r, |_| g.clone(), 2, kind, |_, _| true).unwrap();
            assert!(sel.is_valid(&g));
            assert_eq!(sel.edges.is_some(), kind.edges);
        }
    }

    #[test]
    fn symmetric_grid_is_symmetric() {
        let sg = symmetric_grid(1, 4, 0.8, WeightMode::Rational, 9).unwrap();
        assert_eq!(sg.axis().len() % 2, 0);
    }
}
