use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{validate_selection, Dart, Edge, EdgeId, FaceSelection, PlaneGraph, VertexId};
use crate::weight::Weight;

/// Replaces `e = ab` by the path `a a' b' b` with weights `w(e), 1, 1`.
/// The new vertices and edges take the next free ids, in that order.
pub fn split_edge(g: &PlaneGraph, e: EdgeId) -> Result<PlaneGraph> {
    let old = g.edge(e).ok_or(Error::UnknownEdge(e))?.clone();
    let nv = g.max_vertex_id().map_or(0, |v| v.0 + 1);
    let ne = g.max_edge_id().map_or(0, |e| e.0 + 1);
    let (a, b) = (old.u, old.v);
    let (a1, b1) = (VertexId(nv), VertexId(nv + 1));
    let (e_a, e_mid, e_b) = (EdgeId(ne), EdgeId(ne + 1), EdgeId(ne + 2));

    let mut rotation = g.rotations().clone();
    for (x, repl) in [(a, e_a), (b, e_b)] {
        for slot in rotation.get_mut(&x).unwrap().iter_mut() {
            if *slot == e {
                *slot = repl;
            }
        }
    }
    rotation.insert(a1, vec![e_a, e_mid]);
    rotation.insert(b1, vec![e_mid, e_b]);

    let mut edges: Vec<Edge> = g.edges().filter(|x| x.id != e).cloned().collect();
    edges.push(Edge { id: e_a, u: a, v: a1, weight: old.weight.clone() });
    edges.push(Edge { id: e_mid, u: a1, v: b1, weight: Weight::one() });
    edges.push(Edge { id: e_b, u: b1, v: b, weight: Weight::one() });

    let outer = g.outer_dart().map(|d| match d {
        Dart { edge, tail } if edge == e && tail == a => Dart { edge: e_a, tail: a },
        Dart { edge, tail } if edge == e => Dart { edge: e_b, tail },
        d => d,
    });
    let vertices = g.vertices().chain([a1, b1]);
    PlaneGraph::build(vertices, edges, rotation, outer)
}

/// A plane graph with a reflection symmetry whose axis passes through the
/// listed vertices.
#[derive(Clone, Debug)]
pub struct SymmetricGraph {
    graph: PlaneGraph,
    axis: Vec<VertexId>,
    mirror: BTreeMap<VertexId, VertexId>,
    edge_mirror: BTreeMap<EdgeId, EdgeId>,
    upper: BTreeSet<VertexId>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidSymmetry(msg.into())
}

fn cyclic_eq(a: &[EdgeId], b: &[EdgeId]) -> bool {
    a.len() == b.len()
        && (a.is_empty() || (0..b.len()).any(|s| a.iter().zip(b.iter().cycle().skip(s)).all(|(x, y)| x == y)))
}

impl SymmetricGraph {
    /// `axis` lists the vertices on the axis from left to right; `mirror`
    /// is the reflection on vertices; `upper` holds the off-axis vertices
    /// on one side.
    pub fn new(
        graph: PlaneGraph,
        axis: Vec<VertexId>,
        mirror: BTreeMap<VertexId, VertexId>,
        upper: BTreeSet<VertexId>,
    ) -> Result<Self> {
        let on_axis: BTreeSet<VertexId> = axis.iter().copied().collect();
        if on_axis.len() != axis.len() {
            return Err(bad("axis vertex listed twice"));
        }
        if axis.len() % 2 == 1 {
            return Err(bad(format!("{} axis vertices, expected an even count", axis.len())));
        }
        for v in graph.vertices() {
            let m = *mirror.get(&v).ok_or_else(|| bad(format!("vertex {v} has no mirror image")))?;
            if mirror.get(&m) != Some(&v) || !graph.contains_vertex(m) {
                return Err(bad(format!("reflection is not an involution at {v}")));
            }
            if (m == v) != on_axis.contains(&v) {
                return Err(bad(format!("vertex {v} is fixed by the reflection iff it lies on the axis")));
            }
            if !on_axis.contains(&v) && upper.contains(&v) == upper.contains(&m) {
                return Err(bad(format!("vertex {v} and its image lie on the same side")));
            }
        }
        if let Some(v) = axis.iter().find(|v| upper.contains(v)) {
            return Err(bad(format!("axis vertex {v} marked as upper")));
        }

        let mut edge_mirror = BTreeMap::new();
        for e in graph.edges() {
            let (mu, mv) = (mirror[&e.u], mirror[&e.v]);
            let image = graph
                .edge_between(mu, mv)
                .filter(|x| x.weight == e.weight)
                .ok_or_else(|| bad(format!("edge {} has no mirror image of equal weight", e.id)))?;
            edge_mirror.insert(e.id, image.id);
            let side = |x: VertexId| {
                if on_axis.contains(&x) {
                    0
                } else if upper.contains(&x) {
                    1
                } else {
                    2
                }
            };
            if side(e.u) + side(e.v) == 3 {
                return Err(bad(format!("edge {} crosses the axis", e.id)));
            }
        }
        for v in graph.vertices() {
            let mapped: Vec<EdgeId> = graph.rotation(v).iter().rev().map(|e| edge_mirror[e]).collect();
            if !cyclic_eq(&mapped, graph.rotation(mirror[&v])) {
                return Err(bad(format!("rotation at {v} is not mirrored")));
            }
        }
        Ok(SymmetricGraph { graph, axis, mirror, edge_mirror, upper })
    }

    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    pub fn axis(&self) -> &[VertexId] {
        &self.axis
    }

    /// Half the number of axis vertices.
    pub fn width(&self) -> usize {
        self.axis.len() / 2
    }

    pub fn mirror_vertex(&self, v: VertexId) -> Option<VertexId> {
        self.mirror.get(&v).copied()
    }

    pub fn mirror_edge(&self, e: EdgeId) -> Option<EdgeId> {
        self.edge_mirror.get(&e).copied()
    }

    /// The `i`-th deletion vertex, `s_i = axis[2i - 2]`.
    pub fn s(&self, i: usize) -> VertexId {
        self.axis[2 * (i - 1)]
    }

    fn side_edges(&self, v: VertexId, upper: bool) -> Vec<EdgeId> {
        self.graph
            .rotation(v)
            .iter()
            .copied()
            .filter(|e| {
                let w = self.graph.edge(*e).unwrap().other(v);
                w != self.mirror[&w] && self.upper.contains(&w) == upper
            })
            .collect()
    }

    /// Edges at `v` going to the upper side.
    pub fn above(&self, v: VertexId) -> Vec<EdgeId> {
        self.side_edges(v, true)
    }

    pub fn below(&self, v: VertexId) -> Vec<EdgeId> {
        self.side_edges(v, false)
    }

    /// Bit `b` of `mask` set means the edges above the axis at `s_{b+1}`
    /// are deleted; otherwise those below are.
    pub fn reduced_subgraph(&self, mask: u64) -> PlaneGraph {
        let mut gone = Vec::new();
        for b in 0..self.width() {
            let s = self.s(b + 1);
            gone.extend(if mask >> b & 1 == 1 { self.above(s) } else { self.below(s) });
        }
        self.graph.delete_edges(&gone).expect("side edges belong to the graph")
    }
}

/// All `2^k` reduced subgraphs in mask order.
pub fn reduced_subgraphs(sg: &SymmetricGraph) -> Vec<PlaneGraph> {
    (0..1u64 << sg.width()).map(|m| sg.reduced_subgraph(m)).collect()
}

/// Two mirror copies of a graph glued through new axis vertices.
#[derive(Clone, Debug)]
pub struct SymmetricDouble {
    pub symmetric: SymmetricGraph,
    pub k: usize,
    vertex_offset: u32,
    edge_offset: u32,
}

impl SymmetricDouble {
    pub fn copy1(&self, v: VertexId) -> VertexId {
        v
    }

    pub fn copy2(&self, v: VertexId) -> VertexId {
        VertexId(v.0 + self.vertex_offset)
    }

    pub fn s(&self, i: usize) -> VertexId {
        VertexId(2 * self.vertex_offset + 2 * (i as u32 - 1))
    }

    pub fn t(&self, i: usize) -> VertexId {
        VertexId(2 * self.vertex_offset + 2 * (i as u32 - 1) + 1)
    }

    /// Edge `a_i^(copy) s_i`.
    pub fn a_edge(&self, i: usize, copy: u8) -> EdgeId {
        EdgeId(2 * self.edge_offset + 4 * (i as u32 - 1) + (copy as u32 - 1))
    }

    /// Edge `b_i^(copy) t_i`.
    pub fn b_edge(&self, i: usize, copy: u8) -> EdgeId {
        EdgeId(2 * self.edge_offset + 4 * (i as u32 - 1) + 2 + (copy as u32 - 1))
    }

    /// `G^(0)`: every `s_p a_p^(1)` deleted.
    pub fn g0(&self) -> PlaneGraph {
        self.symmetric.reduced_subgraph((1u64 << self.k) - 1)
    }

    /// `G^(j)`: `s_p a_p^(1)` deleted for `p != j`, and `s_j a_j^(2)`.
    pub fn gj(&self, j: usize) -> PlaneGraph {
        self.symmetric.reduced_subgraph(((1u64 << self.k) - 1) & !(1 << (j - 1)))
    }
}

/// Builds the doubled graph on `4n + 2k` vertices: copy 1 keeps the
/// embedding, copy 2 is its mirror image, and `s_i, t_i` join `a_i, b_i` in
/// both copies with unit weight. The selection must lie on the outer face.
pub fn build_symmetric_double(g: &PlaneGraph, sel: &FaceSelection) -> Result<SymmetricDouble> {
    let matched = validate_selection(g, sel)?;
    if Some(sel.face) != g.outer_face_id() {
        return Err(Error::SelectionNotOnOuterFace);
    }
    let k = sel.k();
    let ov = g.max_vertex_id().map_or(0, |v| v.0 + 1);
    let oe = g.max_edge_id().map_or(0, |e| e.0 + 1);
    let c2 = |v: VertexId| VertexId(v.0 + ov);
    let e2 = |e: EdgeId| EdgeId(e.0 + oe);
    let double = SymmetricDouble {
        symmetric: SymmetricGraph {
            graph: PlaneGraph::empty(),
            axis: vec![],
            mirror: BTreeMap::new(),
            edge_mirror: BTreeMap::new(),
            upper: BTreeSet::new(),
        },
        k,
        vertex_offset: ov,
        edge_offset: oe,
    };

    let mut edges: Vec<Edge> = g.edges().cloned().collect();
    edges.extend(g.edges().map(|e| Edge { id: e2(e.id), u: c2(e.u), v: c2(e.v), weight: e.weight.clone() }));
    let mut rotation: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
    for v in g.vertices() {
        rotation.insert(v, g.rotation(v).to_vec());
        rotation.insert(c2(v), g.rotation(v).iter().rev().map(|&e| e2(e)).collect());
    }

    let walk = &g.faces()[sel.face].walk;
    for (n, &p) in matched.corners.iter().enumerate() {
        let i = n / 2 + 1;
        let x = sel.vertices[n];
        let (hub, new1, new2) = if n % 2 == 0 {
            (double.s(i), double.a_edge(i, 1), double.a_edge(i, 2))
        } else {
            (double.t(i), double.b_edge(i, 1), double.b_edge(i, 2))
        };
        // the corner at walk[p] lies between the outgoing edge and the
        // incoming one, which follows it counterclockwise
        let out = walk[p].edge;
        let list = rotation.get_mut(&x).unwrap();
        let at = list.iter().position(|&e| e == out).unwrap();
        list.insert(at + 1, new1);
        let list = rotation.get_mut(&c2(x)).unwrap();
        let at = list.iter().position(|&e| e == e2(out)).unwrap();
        list.insert(at, new2);
        rotation.insert(hub, vec![new1, new2]);
        edges.push(Edge { id: new1, u: x, v: hub, weight: Weight::one() });
        edges.push(Edge { id: new2, u: c2(x), v: hub, weight: Weight::one() });
    }

    let axis: Vec<VertexId> = (1..=k).flat_map(|i| [double.s(i), double.t(i)]).collect();
    let vertices: Vec<VertexId> = g.vertices().chain(g.vertices().map(c2)).chain(axis.iter().copied()).collect();
    let graph = PlaneGraph::new(vertices, edges, rotation)?;
    let mut mirror: BTreeMap<VertexId, VertexId> = axis.iter().map(|&v| (v, v)).collect();
    for v in g.vertices() {
        mirror.insert(v, c2(v));
        mirror.insert(c2(v), v);
    }
    let upper: BTreeSet<VertexId> = g.vertices().collect();
    Ok(SymmetricDouble { symmetric: SymmetricGraph::new(graph, axis, mirror, upper)?, ..double })
}
