use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId, PlaneGraph, VertexId};

/// A direction for every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    tails: BTreeMap<EdgeId, VertexId>,
}

impl Orientation {
    pub fn tail(&self, e: EdgeId) -> Option<VertexId> {
        self.tails.get(&e).copied()
    }

    /// Whether `d` runs along the orientation of its edge.
    pub fn agrees(&self, d: Dart) -> bool {
        self.tails.get(&d.edge) == Some(&d.tail)
    }

    /// Darts of the walk of `face` that run against their edge. Bounded
    /// faces are walked counterclockwise, so these are the clockwise edges.
    pub fn clockwise_count(&self, g: &PlaneGraph, face: usize) -> usize {
        g.faces()[face].walk.iter().filter(|d| !self.agrees(**d)).count()
    }

    /// True when every face other than the unbounded one has an odd
    /// clockwise count.
    pub fn is_kasteleyn(&self, g: &PlaneGraph) -> bool {
        let outer = g.outer_face_id();
        (0..g.faces().len()).filter(|&f| Some(f) != outer).all(|f| self.clockwise_count(g, f) % 2 == 1)
    }
}

/// Orients a connected plane graph so that every bounded face has an odd
/// number of clockwise edges: a spanning tree is oriented arbitrarily, then
/// the remaining edges are fixed face by face, peeling leaves of the dual
/// tree towards the unbounded face.
pub fn kasteleyn_orient(g: &PlaneGraph) -> Result<Orientation> {
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let mut tails = BTreeMap::new();
    let Some(root) = g.vertices().next() else {
        return Ok(Orientation { tails });
    };

    let mut seen = BTreeSet::from([root]);
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &e in g.rotation(v) {
            let w = g.edge(e).unwrap().other(v);
            if seen.insert(w) {
                tails.insert(e, v);
                stack.push(w);
            }
        }
    }

    // dual tree on faces through the non-tree edges
    let outer = g.outer_face_id().unwrap_or(0);
    let mut pending: BTreeMap<usize, BTreeSet<EdgeId>> = BTreeMap::new();
    for e in g.edges().filter(|e| !tails.contains_key(&e.id)) {
        for tail in [e.u, e.v] {
            let f = g.face_of(Dart { edge: e.id, tail }).unwrap();
            pending.entry(f).or_default().insert(e.id);
        }
    }
    let mut leaves: Vec<usize> =
        pending.iter().filter(|(f, es)| **f != outer && es.len() == 1).map(|(f, _)| *f).collect();
    while let Some(f) = leaves.pop() {
        let Some(&e) = pending[&f].iter().next() else { continue };
        let edge = g.edge(e).unwrap();
        let others = g.faces()[f].walk.iter().filter(|d| d.edge != e && tails.get(&d.edge) != Some(&d.tail)).count();
        // the dart of `e` on this face must run against the edge iff the others are even
        let dart = g.faces()[f].walk.iter().find(|d| d.edge == e).unwrap();
        let tail = if others % 2 == 0 { edge.other(dart.tail) } else { dart.tail };
        tails.insert(e, tail);
        for tail in [edge.u, edge.v] {
            let h = g.face_of(Dart { edge: e, tail }).unwrap();
            let set = pending.get_mut(&h).unwrap();
            set.remove(&e);
            if h != outer && h != f && set.len() == 1 {
                leaves.push(h);
            }
        }
    }
    Ok(Orientation { tails })
}
