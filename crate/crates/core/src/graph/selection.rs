//! Marked vertices and edges on one face.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{EdgeId, PlaneGraph, VertexId};
use crate::error::SelectionError;

/// Vertices `a_1, b_1, ..., a_k, b_k` listed in cyclic order around a face,
/// optionally with the edges `e_i = a_i b_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSelection {
    pub face: usize,
    pub vertices: Vec<VertexId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeId>>,
}

/// Where the marked vertices sit on the face walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectionMatch {
    /// Walk position of each marked vertex, in marked order.
    pub corners: Vec<usize>,
    /// True when the marks follow the walk backwards.
    pub reversed: bool,
}

impl FaceSelection {
    pub fn new(face: usize, vertices: Vec<VertexId>) -> Self {
        FaceSelection { face, vertices, edges: None }
    }

    pub fn with_edges(face: usize, vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Self {
        FaceSelection { face, vertices, edges: Some(edges) }
    }

    /// Number of `(a_i, b_i)` pairs.
    pub fn k(&self) -> usize {
        self.vertices.len() / 2
    }

    /// `a_i` for `i` in `1..=k`.
    pub fn a(&self, i: usize) -> VertexId {
        self.vertices[2 * (i - 1)]
    }

    /// `b_i` for `i` in `1..=k`.
    pub fn b(&self, i: usize) -> VertexId {
        self.vertices[2 * (i - 1) + 1]
    }

    /// `e_i` for `i` in `1..=k`, when edges are marked.
    pub fn e(&self, i: usize) -> Option<EdgeId> {
        self.edges.as_ref().map(|es| es[i - 1])
    }

    pub fn a_all(&self) -> Vec<VertexId> {
        (1..=self.k()).map(|i| self.a(i)).collect()
    }

    pub fn b_all(&self) -> Vec<VertexId> {
        (1..=self.k()).map(|i| self.b(i)).collect()
    }

    /// The same marks starting from `a_{s+1}`: `a_{s+1}, b_{s+1}, ..., b_s`.
    pub fn rotated(&self, s: usize) -> FaceSelection {
        let k = self.k();
        let mut vertices = self.vertices.clone();
        vertices.rotate_left(2 * (s % k.max(1)));
        let edges = self.edges.clone().map(|mut es| {
            es.rotate_left(s % k.max(1));
            es
        });
        FaceSelection { face: self.face, vertices, edges }
    }

    pub fn is_valid(&self, g: &PlaneGraph) -> bool {
        validate_selection(g, self).is_ok()
    }
}

/// Checks that the marks are distinct, lie on the face, and appear along its
/// boundary walk in the listed cyclic order (either direction). Marked edges
/// must join `a_i` to `b_i`, share no endpoint and lie on the face.
pub fn validate_selection(g: &PlaneGraph, sel: &FaceSelection) -> Result<SelectionMatch, SelectionError> {
    let face = g.face(sel.face).ok_or(SelectionError::UnknownFace(sel.face))?;
    let n = sel.vertices.len();
    if n == 0 {
        return Err(SelectionError::Empty);
    }
    if n % 2 == 1 {
        return Err(SelectionError::OddVertexCount(n));
    }
    let mut seen = BTreeSet::new();
    for &v in &sel.vertices {
        if !seen.insert(v) {
            return Err(SelectionError::RepeatedVertex(v));
        }
    }
    let walk: Vec<VertexId> = face.vertices().collect();
    if let Some(&v) = sel.vertices.iter().find(|v| !walk.contains(v)) {
        return Err(SelectionError::NotOnFace(v));
    }

    if let Some(edges) = &sel.edges {
        if edges.len() != n / 2 {
            return Err(SelectionError::EdgeCountMismatch { vertices: n, edges: edges.len() });
        }
        let mut ends = BTreeSet::new();
        for (i, &eid) in edges.iter().enumerate() {
            let e = g.edge(eid).ok_or(SelectionError::EdgeMismatch { index: i })?;
            if !e.joins(sel.vertices[2 * i], sel.vertices[2 * i + 1]) {
                return Err(SelectionError::EdgeMismatch { index: i });
            }
            if !ends.insert(e.u) || !ends.insert(e.v) {
                return Err(SelectionError::EdgesNotIndependent);
            }
            if !face.contains_edge(eid) {
                return Err(SelectionError::EdgeNotOnFace(eid));
            }
        }
    }

    for reversed in [false, true] {
        if let Some(corners) = match_in_order(&walk, &sel.vertices, reversed) {
            return Ok(SelectionMatch { corners, reversed });
        }
    }
    Err(SelectionError::NotCyclicOrder)
}

/// Finds walk positions for `marks` in cyclic order within one lap.
fn match_in_order(walk: &[VertexId], marks: &[VertexId], reversed: bool) -> Option<Vec<usize>> {
    let len = walk.len();
    let at = |start: usize, offset: usize| {
        if reversed {
            (start + len - offset % len) % len
        } else {
            (start + offset) % len
        }
    };
    for start in (0..len).filter(|&p| walk[p] == marks[0]) {
        let mut corners = vec![start];
        let mut offset = 0;
        let mut ok = true;
        for &m in &marks[1..] {
            match (offset + 1..len).find(|&o| walk[at(start, o)] == m) {
                Some(o) => {
                    offset = o;
                    corners.push(at(start, o));
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Some(corners);
        }
    }
    None
}
