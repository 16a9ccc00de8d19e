use std::collections::{BTreeMap, BTreeSet};

use super::{Dart, Edge, EdgeId, PlaneGraph, VertexId};
use crate::error::{Error, Result};
use crate::weight::Weight;

/// Result of stripping forced edges.
#[derive(Clone, Debug)]
pub struct Forced {
    pub residual: PlaneGraph,
    pub factor: Weight,
    /// Edges matched along the way, in the order they were forced.
    pub matched: Vec<EdgeId>,
    /// False when an unmatched isolated vertex appeared; the matching sum is then zero.
    pub feasible: bool,
}

/// Colour class in a proper 2-colouring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum Side {
    U,
    V,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::U => Side::V,
            Side::V => Side::U,
        }
    }
}

impl PlaneGraph {
    fn restrict(&self, keep_vertex: impl Fn(VertexId) -> bool, keep_edge: impl Fn(&Edge) -> bool) -> PlaneGraph {
        let vertices: Vec<VertexId> = self.vertices().filter(|&v| keep_vertex(v)).collect();
        let edges: BTreeMap<EdgeId, Edge> = self
            .edges()
            .filter(|e| keep_vertex(e.u) && keep_vertex(e.v) && keep_edge(e))
            .map(|e| (e.id, e.clone()))
            .collect();
        let rotation = vertices
            .iter()
            .map(|&v| (v, self.rotation(v).iter().copied().filter(|e| edges.contains_key(e)).collect()))
            .collect();
        // any surviving dart of the old unbounded face still borders it
        let outer = self
            .outer_face_id()
            .and_then(|f| self.faces()[f].walk.iter().copied().find(|d: &Dart| edges.contains_key(&d.edge)));
        PlaneGraph::build(vertices, edges.into_values(), rotation, outer).expect("deletion preserves planarity")
    }

    /// Same embedding with every edge weight replaced by `f(edge)`.
    pub fn map_weights(&self, mut f: impl FnMut(&Edge) -> Result<Weight>) -> Result<PlaneGraph> {
        let edges = self.edges().map(|e| Ok(Edge { weight: f(e)?, ..e.clone() })).collect::<Result<Vec<_>>>()?;
        PlaneGraph::build(self.vertices(), edges, self.rotations().clone(), self.outer_dart())
    }

    pub fn delete_vertices<'a, I: IntoIterator<Item = &'a VertexId>>(&self, vs: I) -> Result<PlaneGraph> {
        let gone: BTreeSet<VertexId> = vs.into_iter().copied().collect();
        if let Some(v) = gone.iter().find(|v| !self.contains_vertex(**v)) {
            return Err(Error::UnknownVertex(*v));
        }
        if gone.is_empty() {
            return Ok(self.clone());
        }
        Ok(self.restrict(|v| !gone.contains(&v), |_| true))
    }

    pub fn delete_edges<'a, I: IntoIterator<Item = &'a EdgeId>>(&self, es: I) -> Result<PlaneGraph> {
        let gone: BTreeSet<EdgeId> = es.into_iter().copied().collect();
        if let Some(e) = gone.iter().find(|e| self.edge(**e).is_none()) {
            return Err(Error::UnknownEdge(*e));
        }
        if gone.is_empty() {
            return Ok(self.clone());
        }
        Ok(self.restrict(|_| true, |e| !gone.contains(&e.id)))
    }

    /// Deletes edges first, then vertices.
    pub fn delete(&self, vs: &[VertexId], es: &[EdgeId]) -> Result<PlaneGraph> {
        self.delete_edges(es)?.delete_vertices(vs)
    }

    /// Repeatedly matches a degree-one vertex along its only edge. On return
    /// `M(self) = factor * M(residual)` when feasible, and `M(self) = 0`
    /// otherwise.
    pub fn reduce_forced(&self) -> Forced {
        let mut alive: BTreeSet<VertexId> = self.vertices().collect();
        let mut degree: BTreeMap<VertexId, usize> = self.vertices().map(|v| (v, self.degree(v))).collect();
        let mut factor = Weight::one();
        let mut matched = Vec::new();
        let mut feasible = degree.values().all(|&d| d > 0);
        let mut queue: BTreeSet<VertexId> = degree.iter().filter(|(_, &d)| d == 1).map(|(&v, _)| v).collect();

        while feasible {
            let Some(v) = queue.pop_first() else { break };
            if !alive.contains(&v) || degree[&v] != 1 {
                continue;
            }
            let e = self
                .rotation(v)
                .iter()
                .map(|e| self.edge(*e).unwrap())
                .find(|e| alive.contains(&e.other(v)))
                .expect("degree one vertex has a live edge");
            let u = e.other(v);
            factor = &factor * &e.weight;
            matched.push(e.id);
            for x in [v, u] {
                alive.remove(&x);
            }
            for x in [v, u] {
                for w in self.neighbors(x).filter(|w| alive.contains(w)).collect::<Vec<_>>() {
                    let d = degree.get_mut(&w).unwrap();
                    *d -= 1;
                    match *d {
                        0 => feasible = false,
                        1 => {
                            queue.insert(w);
                        }
                        _ => {}
                    }
                }
            }
        }

        let residual = if matched.is_empty() { self.clone() } else { self.restrict(|v| alive.contains(&v), |_| true) };
        if !feasible {
            factor = Weight::zero();
        }
        Forced { residual, factor, matched, feasible }
    }

    /// A proper 2-colouring, or `None` if the graph has an odd cycle. The
    /// smallest vertex of every component gets [`Side::U`].
    pub fn bipartition(&self) -> Option<BTreeMap<VertexId, Side>> {
        let mut side = BTreeMap::new();
        for comp in self.components() {
            let root = *comp.iter().next().unwrap();
            side.insert(root, Side::U);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                let s = side[&v];
                for w in self.neighbors(v) {
                    match side.get(&w) {
                        None => {
                            side.insert(w, s.flip());
                            stack.push(w);
                        }
                        Some(&t) if t == s => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }
}
