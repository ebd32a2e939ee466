//! Peripheral structures for non-CFS planar graphs and the three-condition
//! combinatorial test for relative hyperbolicity of a right-angled Coxeter
//! group with respect to special subgroups.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cfs::is_cfs;
use crate::decompose::{prime_decomposition, DecomposeError, SplitOrder};
use crate::graph::{enumerate_induced_four_cycles, suspension_of, FourCycle, SimplicialGraph};
use crate::planar::RotationSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelhypError {
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error("entry {0} is not an induced subgraph of the graph")]
    NotInduced(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// The graph itself (it is CFS).
    Whole,
    /// Union of the pieces of a maximal subtree of three-point suspensions.
    SuspensionUnion { tree_nodes: Vec<String> },
    /// A 4-cycle lying in no suspension of three points.
    LoneFourCycle { cycle: FourCycle },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeripheralEntry {
    pub subgraph: SimplicialGraph,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeripheralCollection {
    pub entries: Vec<PeripheralEntry>,
}

impl PeripheralCollection {
    pub fn subgraphs(&self) -> Vec<SimplicialGraph> {
        self.entries.iter().map(|e| e.subgraph.clone()).collect()
    }
}

/// Whether one of the diagonals of σ has a third common neighbour in `g`,
/// i.e. σ sits inside a suspension of three points.
fn in_three_point_suspension(g: &SimplicialGraph, sigma: &FourCycle) -> bool {
    sigma.diagonals().iter().any(|(x, y)| {
        let (i, j) = (g.index_of(x).unwrap(), g.index_of(y).unwrap());
        g.common_neighbors(i, j).len() >= 3
    })
}

/// The peripheral subgraphs: for CFS input the graph itself; otherwise the
/// unions Γ_C over components C of the subtree of three-point-suspension
/// pieces in the prime tree, followed by every induced 4-cycle contained in
/// no suspension of three points.
pub fn peripheral_structure(
    g: &SimplicialGraph,
    f: &RotationSystem,
) -> Result<PeripheralCollection, RelhypError> {
    if is_cfs(g).cfs {
        return Ok(PeripheralCollection {
            entries: vec![PeripheralEntry {
                subgraph: g.clone(),
                provenance: Provenance::Whole,
            }],
        });
    }
    let tree = prime_decomposition(g, f, SplitOrder::Lexicographic)?;
    let in_t1: Vec<bool> = tree
        .nodes
        .iter()
        .map(|n| suspension_of(&n.piece).is_some_and(|s| s.tips.len() == 3))
        .collect();
    let pos = |id: &str| tree.nodes.iter().position(|n| n.id == id).unwrap();
    let mut comp: Vec<usize> = (0..tree.nodes.len()).collect();
    fn root(comp: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while comp[r] != r {
            r = comp[r];
        }
        comp[x] = r;
        r
    }
    for e in &tree.edges {
        let (a, b) = (pos(&e.a), pos(&e.b));
        if in_t1[a] && in_t1[b] {
            let (ra, rb) = (root(&mut comp, a), root(&mut comp, b));
            comp[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for x in 0..tree.nodes.len() {
        if in_t1[x] {
            groups.entry(root(&mut comp, x)).or_default().push(x);
        }
    }
    let mut seen: BTreeSet<BTreeSet<String>> = BTreeSet::new();
    let mut first: Vec<PeripheralEntry> = Vec::new();
    for members in groups.values() {
        let verts: BTreeSet<String> = members
            .iter()
            .flat_map(|&x| tree.nodes[x].piece.labels().iter().cloned())
            .collect();
        if seen.insert(verts.clone()) {
            first.push(PeripheralEntry {
                subgraph: g.induced_subgraph(&verts).unwrap(),
                provenance: Provenance::SuspensionUnion {
                    tree_nodes: members.iter().map(|&x| tree.nodes[x].id.clone()).collect(),
                },
            });
        }
    }
    first.sort_by(|a, b| a.subgraph.labels().cmp(b.subgraph.labels()));
    let mut entries = first;
    for sigma in enumerate_induced_four_cycles(g) {
        if in_three_point_suspension(g, &sigma) || !seen.insert(sigma.vertex_set()) {
            continue;
        }
        entries.push(PeripheralEntry {
            subgraph: g.induced_subgraph(sigma.sorted_vertices()).unwrap(),
            provenance: Provenance::LoneFourCycle { cycle: sigma },
        });
    }
    debug_assert!(entries.iter().all(|e| is_cfs(&e.subgraph).cfs));
    Ok(PeripheralCollection { entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Intersection {
    pub first: usize,
    pub second: usize,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Escape {
    pub entry: usize,
    pub vertex: String,
    pub pair: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapraceReport {
    /// Every induced 4-cycle of Γ lies in some entry.
    pub condition1: bool,
    /// Distinct entries meet in the empty set or a clique.
    pub condition2: bool,
    /// A vertex adjacent to two non-adjacent vertices of an entry lies in it.
    pub condition3: bool,
    pub uncovered_cycles: Vec<FourCycle>,
    pub bad_intersections: Vec<Intersection>,
    pub escapes: Vec<Escape>,
}

impl CapraceReport {
    pub fn passes(&self) -> bool {
        self.condition1 && self.condition2 && self.condition3
    }
}

/// Checks the three graph conditions characterising when the group of `g`
/// is hyperbolic relative to the special subgroups of `entries`.
pub fn caprace_check(
    g: &SimplicialGraph,
    entries: &[SimplicialGraph],
) -> Result<CapraceReport, RelhypError> {
    for (k, j) in entries.iter().enumerate() {
        if !j.is_induced_in(g) {
            return Err(RelhypError::NotInduced(k));
        }
    }
    let sets: Vec<BTreeSet<String>> = entries.iter().map(SimplicialGraph::vertex_set).collect();

    let uncovered_cycles: Vec<FourCycle> = enumerate_induced_four_cycles(g)
        .into_iter()
        .filter(|c| !sets.iter().any(|s| c.is_subset_of(s)))
        .collect();

    let mut bad_intersections = Vec::new();
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            let meet: Vec<String> = sets[a].intersection(&sets[b]).cloned().collect();
            let clique = meet.iter().enumerate().all(|(i, x)| {
                meet[i + 1..].iter().all(|y| g.has_edge_labels(x, y))
            });
            if !clique {
                bad_intersections.push(Intersection {
                    first: a,
                    second: b,
                    vertices: meet,
                });
            }
        }
    }

    let mut escapes = Vec::new();
    for (k, j) in entries.iter().enumerate() {
        for v in 0..g.vertex_count() {
            let label = g.label(v);
            if sets[k].contains(label) {
                continue;
            }
            let inside: Vec<usize> = g
                .neighbors(v)
                .iter()
                .filter_map(|&w| j.index_of(g.label(w)))
                .collect();
            'pairs: for (i, &x) in inside.iter().enumerate() {
                for &y in &inside[i + 1..] {
                    if !j.has_edge(x, y) {
                        escapes.push(Escape {
                            entry: k,
                            vertex: label.to_string(),
                            pair: [j.label(x).to_string(), j.label(y).to_string()],
                        });
                        break 'pairs;
                    }
                }
            }
        }
    }

    Ok(CapraceReport {
        condition1: uncovered_cycles.is_empty(),
        condition2: bad_intersections.is_empty(),
        condition3: escapes.is_empty(),
        uncovered_cycles,
        bad_intersections,
        escapes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn omega_peripheral_is_figure3_graph() {
        let c = corpus::fig4_omega();
        let p = peripheral_structure(&c.graph, c.rotation.as_ref().unwrap()).unwrap();
        assert_eq!(p.entries.len(), 1);
        assert_eq!(p.entries[0].subgraph, corpus::fig3_gamma().graph);
        let r = caprace_check(&c.graph, &p.subgraphs()).unwrap();
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn cfs_graph_is_its_own_peripheral() {
        let c = corpus::fig3_gamma();
        let p = peripheral_structure(&c.graph, c.rotation.as_ref().unwrap()).unwrap();
        assert_eq!(p.entries.len(), 1);
        assert_eq!(p.entries[0].provenance, Provenance::Whole);
        assert_eq!(p.entries[0].subgraph, c.graph);
    }

    #[test]
    fn cube_faces_are_lone_four_cycles() {
        let c = corpus::cube();
        let p = peripheral_structure(&c.graph, c.rotation.as_ref().unwrap()).unwrap();
        assert_eq!(p.entries.len(), 6);
        assert!(p
            .entries
            .iter()
            .all(|e| matches!(e.provenance, Provenance::LoneFourCycle { .. })));
        assert!(caprace_check(&c.graph, &p.subgraphs()).unwrap().passes());
    }

    #[test]
    fn single_cycle_does_not_cover_k24() {
        let g = corpus::fig1().graph;
        let one = g.induced_subgraph(["a1", "a2", "b1", "b2"]).unwrap();
        let r = caprace_check(&g, &[one]).unwrap();
        assert!(!r.condition1);
        assert_eq!(r.uncovered_cycles.len(), 5);
    }

    #[test]
    fn whole_graph_always_passes() {
        for (_, c) in corpus::graphs() {
            assert!(caprace_check(&c.graph, std::slice::from_ref(&c.graph)).unwrap().passes());
        }
    }

    #[test]
    fn non_induced_entry_is_rejected() {
        let g = corpus::fig1().graph;
        let path =
            SimplicialGraph::from_edges(&[("a1", "b1"), ("b1", "a2"), ("a2", "b2")]).unwrap();
        assert_eq!(caprace_check(&g, &[path]), Err(RelhypError::NotInduced(0)));
    }

    #[test]
    fn peripheral_structures_pass_on_corpus() {
        for (name, c) in corpus::graphs() {
            let Some(f) = &c.rotation else { continue };
            let p = peripheral_structure(&c.graph, f).unwrap();
            assert!(caprace_check(&c.graph, &p.subgraphs()).unwrap().passes(), "{name}");
        }
    }
}
