//! JSON formats for graphs with optional rotation systems.
//!
//! ```json
//! {"vertices": ["a1", "a2"], "edges": [["a1", "a2"]],
//!  "rotation": {"a1": ["a2"], "a2": ["a1"]}}
//! ```
//! Rotation lists are counterclockwise neighbour orders and may be omitted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, SimplicialGraph};
use crate::planar::{EmbedError, RotationSystem};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<String, Vec<String>>>,
}

/// A defining graph together with the rotation system it was shipped with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGraph {
    pub graph: SimplicialGraph,
    pub rotation: Option<RotationSystem>,
}

impl EmbeddedGraph {
    pub fn new(graph: SimplicialGraph, rotation: Option<RotationSystem>) -> Self {
        EmbeddedGraph { graph, rotation }
    }

    pub fn from_file(file: GraphFile) -> Result<Self, IoError> {
        let graph = SimplicialGraph::new(
            file.vertices,
            file.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())),
        )?;
        let rotation = file.rotation.map(RotationSystem::new);
        if let Some(f) = &rotation {
            f.to_indices(&graph)?;
        }
        Ok(EmbeddedGraph { graph, rotation })
    }

    pub fn to_file(&self) -> GraphFile {
        graph_file(&self.graph, self.rotation.as_ref())
    }
}

pub fn graph_file(g: &SimplicialGraph, f: Option<&RotationSystem>) -> GraphFile {
    GraphFile {
        vertices: g.labels().to_vec(),
        edges: g.edge_labels().into_iter().map(|(a, b)| [a, b]).collect(),
        rotation: f.map(|f| f.as_map().clone()),
    }
}

pub fn parse_graph(json: &str) -> Result<EmbeddedGraph, IoError> {
    EmbeddedGraph::from_file(serde_json::from_str(json)?)
}

#[derive(Serialize, Deserialize)]
struct PlainGraph {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

impl Serialize for SimplicialGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PlainGraph {
            vertices: self.labels().to_vec(),
            edges: self.edge_labels().into_iter().map(|(a, b)| [a, b]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let p = PlainGraph::deserialize(d)?;
        SimplicialGraph::new(p.vertices, p.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let json = r#"{"vertices": ["a","b","c"], "edges": [["a","b"],["b","c"]],
                       "rotation": {"a": ["b"], "b": ["c","a"], "c": ["b"]}}"#;
        let eg = parse_graph(json).unwrap();
        assert_eq!(eg.graph.edge_count(), 2);
        let back = serde_json::to_string(&eg.to_file()).unwrap();
        assert_eq!(parse_graph(&back).unwrap(), eg);
    }

    #[test]
    fn rejects_unknown_vertices() {
        let bad = r#"{"vertices": ["a"], "edges": [["a","z"]]}"#;
        assert!(matches!(
            parse_graph(bad),
            Err(IoError::Graph(GraphError::UnknownVertex(_)))
        ));
        let bad_rot = r#"{"vertices": ["a","b"], "edges": [["a","b"]],
                          "rotation": {"a": ["q"], "b": ["a"]}}"#;
        assert!(matches!(parse_graph(bad_rot), Err(IoError::Embed(_))));
        assert!(matches!(parse_graph("{"), Err(IoError::Json(_))));
    }
}
