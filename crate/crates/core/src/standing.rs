//! Checks for the standing assumptions on a defining graph: connected,
//! triangle-free, planar, at least five vertices, and no separating vertex
//! or edge.

use serde::{Deserialize, Serialize};

use crate::graph::SimplicialGraph;
use crate::planar::{find_embedding, validate_embedding, RotationSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Connected,
    TriangleFree,
    AtLeastFive,
    NoSeparatingVertex,
    NoSeparatingEdge,
    Planar,
}

/// One offending object for a failed check: a triangle, a separating vertex
/// or edge, one vertex per component, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub check: Check,
    pub vertices: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandingReport {
    pub connected: bool,
    pub triangle_free: bool,
    pub at_least_five: bool,
    pub no_separating_vertex: bool,
    pub no_separating_edge: bool,
    pub planar: bool,
    pub witnesses: Vec<Witness>,
}

impl StandingReport {
    pub fn passes(&self) -> bool {
        self.connected
            && self.triangle_free
            && self.at_least_five
            && self.no_separating_vertex
            && self.no_separating_edge
            && self.planar
    }

    pub fn failed_checks(&self) -> Vec<Check> {
        [
            (self.connected, Check::Connected),
            (self.triangle_free, Check::TriangleFree),
            (self.at_least_five, Check::AtLeastFive),
            (self.no_separating_vertex, Check::NoSeparatingVertex),
            (self.no_separating_edge, Check::NoSeparatingEdge),
            (self.planar, Check::Planar),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, c)| c)
        .collect()
    }
}

/// Evaluates every check directly from its definition. A vertex or edge is
/// separating when deleting it (for an edge: both endpoints) leaves at least
/// two components. Planarity is read from `f` when given, otherwise an
/// embedding is searched for.
pub fn validate_standing(g: &SimplicialGraph, f: Option<&RotationSystem>) -> StandingReport {
    let mut witnesses = Vec::new();
    let names = |ix: &[usize]| ix.iter().map(|&i| g.label(i).to_string()).collect::<Vec<_>>();

    let comps = g.components();
    let connected = comps.len() == 1;
    if !connected {
        witnesses.push(Witness {
            check: Check::Connected,
            vertices: names(&comps.iter().map(|c| c[0]).collect::<Vec<_>>()),
            note: Some(format!("{} components", comps.len())),
        });
    }

    let triangles = g.triangles();
    let triangle_free = triangles.is_empty();
    for t in &triangles {
        witnesses.push(Witness {
            check: Check::TriangleFree,
            vertices: names(t),
            note: None,
        });
    }

    let at_least_five = g.vertex_count() >= 5;
    if !at_least_five {
        witnesses.push(Witness {
            check: Check::AtLeastFive,
            vertices: g.labels().to_vec(),
            note: None,
        });
    }

    let mut no_separating_vertex = true;
    for v in 0..g.vertex_count() {
        if g.components_avoiding(&[v]).len() >= 2 {
            no_separating_vertex = false;
            witnesses.push(Witness {
                check: Check::NoSeparatingVertex,
                vertices: names(&[v]),
                note: None,
            });
        }
    }

    let mut no_separating_edge = true;
    for (a, b) in g.edges() {
        if g.components_avoiding(&[a, b]).len() >= 2 {
            no_separating_edge = false;
            witnesses.push(Witness {
                check: Check::NoSeparatingEdge,
                vertices: names(&[a, b]),
                note: None,
            });
        }
    }

    let planar = match f {
        Some(f) => match validate_embedding(g, f) {
            Ok(r) => {
                if !r.planar {
                    witnesses.push(Witness {
                        check: Check::Planar,
                        vertices: Vec::new(),
                        note: Some("supplied rotation system does not have genus 0".into()),
                    });
                }
                r.planar
            }
            Err(e) => {
                witnesses.push(Witness {
                    check: Check::Planar,
                    vertices: Vec::new(),
                    note: Some(e.to_string()),
                });
                false
            }
        },
        None => {
            let found = find_embedding(g).is_some();
            if !found {
                witnesses.push(Witness {
                    check: Check::Planar,
                    vertices: Vec::new(),
                    note: Some("no planar embedding exists".into()),
                });
            }
            found
        }
    };

    StandingReport {
        connected,
        triangle_free,
        at_least_five,
        no_separating_vertex,
        no_separating_edge,
        planar,
        witnesses,
    }
}
