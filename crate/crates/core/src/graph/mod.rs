//! Plane graphs given by a rotation system.
//!
//! Every vertex lists its incident edges in counterclockwise order. Faces are
//! the orbits of the map sending a dart `u -> v` to `v -> w`, where `vw`
//! precedes `vu` in the rotation at `v`; each walk keeps its face on the
//! left, so bounded faces of a drawing are traced counterclockwise.
//!
//! Graphs are immutable; deletions return new graphs that keep the vertex
//! and edge ids of the original.

mod geometry;
mod json;
mod ops;
mod selection;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::Weight;

pub use geometry::{angular_order, Point};
pub use json::{EdgeRecord, GraphFile};
pub use ops::{Forced, Side};
pub use selection::{validate_selection, FaceSelection, SelectionMatch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Weight,
}

impl Edge {
    pub fn new(id: u32, u: u32, v: u32, weight: Weight) -> Self {
        Edge { id: EdgeId(id), u: VertexId(u), v: VertexId(v), weight }
    }

    /// The endpoint opposite `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn joins(&self, a: VertexId, b: VertexId) -> bool {
        (self.u == a && self.v == b) || (self.u == b && self.v == a)
    }
}

/// An edge traversed away from `tail`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub edge: EdgeId,
    pub tail: VertexId,
}

/// A face as its closed boundary walk of darts, face on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub walk: Vec<Dart>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    /// Vertices in walk order; cut vertices may repeat.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.walk.iter().map(|d| d.tail)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.walk.iter().any(|d| d.edge == e)
    }
}

#[derive(Clone, Debug)]
pub struct PlaneGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
    rotation: BTreeMap<VertexId, Vec<EdgeId>>,
    faces: Vec<Face>,
    dart_face: HashMap<Dart, usize>,
    /// Smallest dart of the designated unbounded face.
    outer: Option<Dart>,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.rotation == other.rotation
            && self.outer == other.outer
    }
}

impl Eq for PlaneGraph {}

impl PlaneGraph {
    /// Validates and builds a plane graph. Without an outer-face hint the
    /// face with the longest boundary walk is taken as unbounded.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = Edge>,
        rotation: BTreeMap<VertexId, Vec<EdgeId>>,
    ) -> Result<Self> {
        Self::build(vertices, edges, rotation, None)
    }

    pub fn empty() -> Self {
        Self::new([], [], BTreeMap::new()).expect("empty graph is valid")
    }

    pub(crate) fn build(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = Edge>,
        mut rotation: BTreeMap<VertexId, Vec<EdgeId>>,
        outer_hint: Option<Dart>,
    ) -> Result<Self> {
        let mut vset = BTreeSet::new();
        for v in vertices {
            if !vset.insert(v) {
                return Err(Error::DuplicateVertex(v));
            }
        }
        let mut emap = BTreeMap::new();
        let mut pairs = BTreeSet::new();
        let mut incident: BTreeMap<VertexId, BTreeSet<EdgeId>> = vset.iter().map(|&v| (v, BTreeSet::new())).collect();
        for e in edges {
            for x in [e.u, e.v] {
                if !vset.contains(&x) {
                    return Err(Error::UnknownVertex(x));
                }
            }
            if e.u == e.v {
                return Err(Error::LoopEdge(e.u));
            }
            if e.weight.is_zero() {
                return Err(Error::ZeroWeight(e.id));
            }
            if !pairs.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::DuplicateEdge(e.u, e.v));
            }
            incident.get_mut(&e.u).unwrap().insert(e.id);
            incident.get_mut(&e.v).unwrap().insert(e.id);
            if emap.insert(e.id, e.clone()).is_some() {
                return Err(Error::DuplicateEdgeId(e.id));
            }
        }
        for v in rotation.keys() {
            if !vset.contains(v) {
                return Err(Error::UnknownVertex(*v));
            }
        }
        for (&v, inc) in &incident {
            let list = rotation.entry(v).or_default();
            let listed: BTreeSet<EdgeId> = list.iter().copied().collect();
            if listed.len() != list.len() || &listed != inc {
                return Err(Error::MalformedRotation(v));
            }
            // canonical starting point for cyclic lists
            if let Some(pos) = list.iter().enumerate().min_by_key(|(_, e)| **e).map(|(i, _)| i) {
                list.rotate_left(pos);
            }
        }

        let mut g = PlaneGraph {
            vertices: vset,
            edges: emap,
            rotation,
            faces: Vec::new(),
            dart_face: HashMap::new(),
            outer: None,
        };
        g.trace_faces();
        g.check_euler()?;
        g.outer = match outer_hint {
            Some(d) if g.dart_face.contains_key(&d) => Some(g.face_key(g.dart_face[&d])),
            _ => g.default_outer(),
        };
        Ok(g)
    }

    fn head(&self, d: Dart) -> VertexId {
        self.edges[&d.edge].other(d.tail)
    }

    fn next_dart(&self, d: Dart) -> Dart {
        let v = self.head(d);
        let rot = &self.rotation[&v];
        let i = rot.iter().position(|&e| e == d.edge).expect("rotation lists incident edges");
        let prev = rot[(i + rot.len() - 1) % rot.len()];
        Dart { edge: prev, tail: v }
    }

    fn trace_faces(&mut self) {
        let mut faces = Vec::new();
        let mut seen: HashMap<Dart, usize> = HashMap::new();
        for e in self.edges.values() {
            for tail in [e.u, e.v] {
                let start = Dart { edge: e.id, tail };
                if seen.contains_key(&start) {
                    continue;
                }
                let id = faces.len();
                let mut walk = Vec::new();
                let mut d = start;
                loop {
                    seen.insert(d, id);
                    walk.push(d);
                    d = self.next_dart(d);
                    if d == start {
                        break;
                    }
                }
                faces.push(Face { id, walk });
            }
        }
        self.faces = faces;
        self.dart_face = seen;
    }

    fn check_euler(&self) -> Result<()> {
        for comp in self.components() {
            let edges: BTreeSet<EdgeId> = comp.iter().flat_map(|v| self.rotation[v].iter().copied()).collect();
            if edges.is_empty() {
                continue;
            }
            let faces: BTreeSet<usize> = edges
                .iter()
                .map(|e| self.dart_face[&Dart { edge: *e, tail: self.edges[e].u }])
                .chain(edges.iter().map(|e| self.dart_face[&Dart { edge: *e, tail: self.edges[e].v }]))
                .collect();
            let (v, e, f) = (comp.len(), edges.len(), faces.len());
            if v + f != e + 2 {
                return Err(Error::EulerViolation { vertices: v, edges: e, faces: f });
            }
        }
        Ok(())
    }

    fn face_key(&self, face: usize) -> Dart {
        *self.faces[face].walk.iter().min().expect("faces are nonempty")
    }

    fn default_outer(&self) -> Option<Dart> {
        let best = self.faces.iter().max_by(|a, b| a.len().cmp(&b.len()).then(b.id.cmp(&a.id)))?;
        Some(self.face_key(best.id))
    }

    /// Returns the same graph with `face` designated as the unbounded face.
    pub fn with_outer_face(&self, face: usize) -> Result<Self> {
        if face >= self.faces.len() {
            return Err(Error::InvalidSelection(crate::error::SelectionError::UnknownFace(face)));
        }
        let mut g = self.clone();
        g.outer = Some(self.face_key(face));
        Ok(g)
    }

    pub fn outer_face_id(&self) -> Option<usize> {
        self.outer.map(|d| self.dart_face[&d])
    }

    pub(crate) fn outer_dart(&self) -> Option<Dart> {
        self.outer
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.values()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(&id)
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<&Edge> {
        self.rotation.get(&a)?.iter().map(|e| &self.edges[e]).find(|e| e.other(a) == b)
    }

    /// Incident edges of `v` in counterclockwise order.
    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        self.rotation.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn rotations(&self) -> &BTreeMap<VertexId, Vec<EdgeId>> {
        &self.rotation
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation(v).len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.rotation(v).iter().map(move |e| self.edges[e].other(v))
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> Option<&Face> {
        self.faces.get(id)
    }

    pub fn face_of(&self, d: Dart) -> Option<usize> {
        self.dart_face.get(&d).copied()
    }

    pub fn max_vertex_id(&self) -> Option<VertexId> {
        self.vertices.iter().next_back().copied()
    }

    pub fn max_edge_id(&self) -> Option<EdgeId> {
        self.edges.keys().next_back().copied()
    }

    pub fn has_scalar_weights(&self) -> bool {
        self.edges.values().all(|e| e.weight.as_scalar().is_some())
    }

    /// Connected components as vertex sets, ordered by smallest vertex.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in &self.vertices {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![s];
            seen.insert(s);
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for w in self.neighbors(v) {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Cycle on vertices `0..n` drawn counterclockwise, edge `i` joins `i` and `i+1`.
    pub fn cycle(weights: &[Weight]) -> PlaneGraph {
        let n = weights.len() as u32;
        let edges: Vec<Edge> = (0..n).map(|i| Edge::new(i, i, (i + 1) % n, weights[i as usize].clone())).collect();
        let rotation = (0..n).map(|i| (VertexId(i), vec![EdgeId(i), EdgeId((i + n - 1) % n)])).collect();
        PlaneGraph::new((0..n).map(VertexId), edges, rotation).unwrap()
    }

    pub fn unit_cycle(n: usize) -> PlaneGraph {
        cycle(&vec![Weight::one(); n])
    }

    /// `rows x cols` grid, vertex `r*cols + c` at point (c, -r).
    pub fn grid(rows: u32, cols: u32) -> PlaneGraph {
        let mut points = Vec::new();
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                points.push((VertexId(r * cols + c), Point::new(c as i64, -(r as i64))));
                if c + 1 < cols {
                    edges.push(Edge::new(edges.len() as u32, r * cols + c, r * cols + c + 1, Weight::one()));
                }
                if r + 1 < rows {
                    edges.push(Edge::new(edges.len() as u32, r * cols + c, (r + 1) * cols + c, Weight::one()));
                }
            }
        }
        PlaneGraph::from_drawing(&points, edges).unwrap()
    }
}
