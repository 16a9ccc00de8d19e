//! Rotation systems from straight-line drawings with integer coordinates.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::{Dart, Edge, EdgeId, PlaneGraph, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

/// Direction from a vertex to a neighbour.
type Offset = (i64, i64);

impl Point {
    pub fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

fn half(dx: i64, dy: i64) -> u8 {
    if dy > 0 || (dy == 0 && dx > 0) {
        0
    } else {
        1
    }
}

/// Counterclockwise order of nonzero direction vectors, starting at angle 0.
pub fn angular_order(a: (i64, i64), b: (i64, i64)) -> Ordering {
    half(a.0, a.1).cmp(&half(b.0, b.1)).then_with(|| {
        let cross = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        0.cmp(&cross)
    })
}

impl PlaneGraph {
    /// Builds a plane graph from a crossing-free straight-line drawing. The
    /// unbounded face is the one seen from the leftmost (then lowest) vertex.
    pub fn from_drawing(points: &[(VertexId, Point)], edges: Vec<Edge>) -> Result<Self> {
        let pos: BTreeMap<VertexId, Point> = points.iter().copied().collect();
        let mut rotation: BTreeMap<VertexId, Vec<(EdgeId, Offset)>> = pos.keys().map(|&v| (v, Vec::new())).collect();
        for e in &edges {
            let (pu, pv) = match (pos.get(&e.u), pos.get(&e.v)) {
                (Some(a), Some(b)) => (*a, *b),
                (None, _) => return Err(Error::UnknownVertex(e.u)),
                (_, None) => return Err(Error::UnknownVertex(e.v)),
            };
            rotation.get_mut(&e.u).unwrap().push((e.id, (pv.x - pu.x, pv.y - pu.y)));
            rotation.get_mut(&e.v).unwrap().push((e.id, (pu.x - pv.x, pu.y - pv.y)));
        }
        for list in rotation.values_mut() {
            list.sort_by(|a, b| angular_order(a.1, b.1));
        }

        let outer =
            pos.iter().filter(|(v, _)| !rotation[v].is_empty()).min_by_key(|(_, p)| (p.x, p.y)).map(|(&v, _)| {
                // the unbounded region lies to the west of the leftmost vertex;
                // its corner starts at the last direction before angle pi
                let dirs = &rotation[&v];
                let first_lower = dirs.iter().position(|(_, d)| half(d.0, d.1) == 1);
                let i = match first_lower {
                    Some(k) => (k + dirs.len() - 1) % dirs.len(),
                    None => dirs.len() - 1,
                };
                Dart { edge: dirs[i].0, tail: v }
            });

        let rotation = rotation.into_iter().map(|(v, l)| (v, l.into_iter().map(|(e, _)| e).collect())).collect();
        PlaneGraph::build(pos.keys().copied(), edges, rotation, outer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::grid;

    #[test]
    fn directions_sort_counterclockwise() {
        let mut dirs = vec![(0, -1), (-1, 0), (1, 1), (1, 0), (0, 1), (1, -1)];
        dirs.sort_by(|a, b| angular_order(*a, *b));
        assert_eq!(dirs, vec![(1, 0), (1, 1), (0, 1), (-1, 0), (0, -1), (1, -1)]);
    }

    #[test]
    fn outer_face_of_grid_is_its_perimeter() {
        for (r, c) in [(2, 2), (3, 3), (2, 5), (4, 3)] {
            let g = grid(r, c);
            let outer = g.outer_face_id().unwrap();
            assert_eq!(g.faces()[outer].len() as u32, 2 * (r - 1) + 2 * (c - 1));
            assert!(g.faces().iter().filter(|f| f.id != outer).all(|f| f.len() == 4));
        }
    }
}
