//! JSON interchange format.
//!
//! ```json
//! {"vertices": [0, 1, 2, 3],
//!  "edges": [{"id": 0, "u": 0, "v": 1, "w": "2"}, ...],
//!  "rotation": {"0": [0, 3], ...},
//!  "outer_face": 1}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Edge, EdgeId, PlaneGraph, VertexId};
use crate::error::{Error, Result};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub w: Weight,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default)]
    pub rotation: BTreeMap<VertexId, Vec<EdgeId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_face: Option<usize>,
    /// Board position `[row, col]` of each vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<BTreeMap<VertexId, (i64, i64)>>,
    /// Column index of each bounded face.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face_columns: Option<BTreeMap<usize, usize>>,
}

impl GraphFile {
    pub fn from_graph(g: &PlaneGraph) -> Self {
        GraphFile {
            vertices: g.vertices().collect(),
            edges: g.edges().map(|e| EdgeRecord { id: e.id, u: e.u, v: e.v, w: e.weight.clone() }).collect(),
            rotation: g.rotations().clone(),
            outer_face: g.outer_face_id(),
            coords: None,
            face_columns: None,
        }
    }

    pub fn to_graph(&self) -> Result<PlaneGraph> {
        let edges = self.edges.iter().map(|r| Edge { id: r.id, u: r.u, v: r.v, weight: r.w.clone() });
        let g = PlaneGraph::new(self.vertices.iter().copied(), edges, self.rotation.clone())?;
        match self.outer_face {
            Some(f) => g.with_outer_face(f),
            None => Ok(g),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph files serialize")
    }
}

impl PlaneGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        GraphFile::parse(text)?.to_graph()
    }

    pub fn to_json(&self) -> String {
        GraphFile::from_graph(self).to_json()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{cycle, grid};

    #[test]
    fn round_trip_preserves_graph() {
        let g = cycle(&[Weight::int(2), Weight::ratio(3, 4), "x1*w2".parse().unwrap(), Weight::int(7)]);
        let back = PlaneGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let h = grid(3, 3).with_outer_face(0).unwrap();
        assert_eq!(PlaneGraph::from_json(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn parses_hand_written_square() {
        let text = r#"{"vertices":[0,1,2,3],
            "edges":[{"id":0,"u":0,"v":1,"w":"2"},{"id":1,"u":1,"v":2,"w":3},
                     {"id":2,"u":2,"v":3,"w":"5"},{"id":3,"u":3,"v":0,"w":"7"}],
            "rotation":{"0":[0,3],"1":[1,0],"2":[2,1],"3":[3,2]}}"#;
        let g = PlaneGraph::from_json(text).unwrap();
        assert_eq!(g.faces().len(), 2);
        assert_eq!(g.edge(EdgeId(1)).unwrap().weight, Weight::int(3));
    }

    #[test]
    fn malformed_input_is_a_format_error() {
        assert!(matches!(PlaneGraph::from_json("{"), Err(Error::Format(_))));
        let bad_weight = r#"{"vertices":[0,1],"edges":[{"id":0,"u":0,"v":1,"w":"2*"}],"rotation":{"0":[0],"1":[0]}}"#;
        assert!(matches!(PlaneGraph::from_json(bad_weight), Err(Error::Format(_))));
    }
}
