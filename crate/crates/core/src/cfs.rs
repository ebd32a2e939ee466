//! The four-cycle graph Γ⁴ and the CFS property.
//!
//! Nodes of Γ⁴ are the induced 4-cycles of Γ; two nodes are linked when
//! their cycles share a diagonal (a non-adjacent pair). Γ is CFS when
//! Γ = Ω * K for a clique K and a non-empty Ω such that some component of
//! Ω⁴ covers every vertex of Ω.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{enumerate_induced_four_cycles, FourCycle, SimplicialGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourCycleGraph {
    pub nodes: Vec<FourCycle>,
    pub links: Vec<(usize, usize)>,
    /// Node indices per component, ordered by least node.
    pub components: Vec<Vec<usize>>,
    /// Union of the cycle vertices of each component, sorted.
    pub supports: Vec<Vec<String>>,
}

impl FourCycleGraph {
    pub fn component_of(&self, node: usize) -> usize {
        self.components
            .iter()
            .position(|c| c.contains(&node))
            .expect("every node lies in a component")
    }

    pub fn node_index(&self, sigma: &FourCycle) -> Option<usize> {
        self.nodes.binary_search(sigma).ok()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.links
            .iter()
            .filter(|&&(a, b)| a == node || b == node)
            .count()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub fn build_four_cycle_graph(g: &SimplicialGraph) -> FourCycleGraph {
    let nodes = enumerate_induced_four_cycles(g);
    let mut by_diagonal: BTreeMap<(String, String), Vec<usize>> = BTreeMap::new();
    for (k, c) in nodes.iter().enumerate() {
        for d in c.diagonals() {
            by_diagonal.entry(d).or_default().push(k);
        }
    }
    let mut links = BTreeSet::new();
    let mut uf = UnionFind::new(nodes.len());
    for members in by_diagonal.values() {
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                links.insert((a.min(b), a.max(b)));
                uf.union(a, b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..nodes.len() {
        groups.entry(uf.find(k)).or_default().push(k);
    }
    let components: Vec<Vec<usize>> = groups.into_values().collect();
    let supports = components
        .iter()
        .map(|comp| {
            let set: BTreeSet<String> = comp
                .iter()
                .flat_map(|&k| nodes[k].sorted_vertices().iter().cloned())
                .collect();
            set.into_iter().collect()
        })
        .collect();
    FourCycleGraph {
        nodes,
        links: links.into_iter().collect(),
        components,
        supports,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfsReport {
    pub cfs: bool,
    /// The clique factor K (empty unless Γ has universal vertices).
    pub clique_factor: Vec<String>,
    /// Vertices of Ω = Γ − K.
    pub omega: Vec<String>,
    /// Index of the full-support component of Ω⁴, when CFS.
    pub component: Option<usize>,
    /// Support of that component; when not CFS, the largest support found.
    pub component_support: Vec<String>,
}

/// Vertices adjacent to every other vertex.
pub fn universal_vertices(g: &SimplicialGraph) -> Vec<usize> {
    let n = g.vertex_count();
    (0..n).filter(|&i| g.degree(i) + 1 == n).collect()
}

/// Decides CFS. Any clique factor K consists of universal vertices, and a
/// universal vertex left inside Ω lies on no induced 4-cycle of Ω, so the
/// only decomposition that can succeed is K = all universal vertices.
pub fn is_cfs(g: &SimplicialGraph) -> CfsReport {
    let universal = universal_vertices(g);
    debug_assert!(
        !(g.is_triangle_free() && !g.is_complete()) || universal.len() <= 2,
        "a triangle-free graph with a non-edge has at most two universal vertices"
    );
    let k: BTreeSet<usize> = universal.iter().copied().collect();
    let rest: BTreeSet<usize> = (0..g.vertex_count()).filter(|i| !k.contains(i)).collect();
    let omega = g.induced_by_indices(&rest);
    let clique_factor: Vec<String> = universal.iter().map(|&i| g.label(i).to_string()).collect();
    let fg = build_four_cycle_graph(&omega);
    let full = if omega.is_empty() {
        None
    } else {
        (0..fg.components.len()).find(|&c| fg.supports[c].len() == omega.vertex_count())
    };
    match full {
        Some(c) => CfsReport {
            cfs: true,
            clique_factor,
            omega: omega.labels().to_vec(),
            component: Some(c),
            component_support: fg.supports[c].clone(),
        },
        None => {
            let best = fg
                .supports
                .iter()
                .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
                .cloned()
                .unwrap_or_default();
            CfsReport {
                cfs: false,
                clique_factor: Vec::new(),
                omega: g.labels().to_vec(),
                component: None,
                component_support: best,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use proptest::prelude::*;

    /// CFS straight from the definition: every clique K of universal
    /// vertices, links by pairwise diagonal comparison.
    fn brute_force_cfs(g: &SimplicialGraph) -> bool {
        let universal = universal_vertices(g);
        for mask in 0u32..(1 << universal.len()) {
            let k: BTreeSet<usize> = (0..universal.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| universal[b])
                .collect();
            let rest: BTreeSet<usize> = (0..g.vertex_count()).filter(|i| !k.contains(i)).collect();
            if rest.is_empty() {
                continue;
            }
            let omega = g.induced_by_indices(&rest);
            let cycles = enumerate_induced_four_cycles(&omega);
            let share = |a: &FourCycle, b: &FourCycle| {
                let da: BTreeSet<_> = a.diagonals().into_iter().collect();
                b.diagonals().iter().any(|d| da.contains(d))
            };
            let mut comp: Vec<usize> = (0..cycles.len()).collect();
            let mut changed = true;
            while changed {
                changed = false;
                for a in 0..cycles.len() {
                    for b in 0..cycles.len() {
                        if a != b && share(&cycles[a], &cycles[b]) && comp[a] != comp[b] {
                            let m = comp[a].min(comp[b]);
                            comp[a] = m;
                            comp[b] = m;
                            changed = true;
                        }
                    }
                }
            }
            for c in 0..cycles.len() {
                let support: BTreeSet<String> = (0..cycles.len())
                    .filter(|&x| comp[x] == comp[c])
                    .flat_map(|x| cycles[x].vertex_set())
                    .collect();
                if support.len() == omega.vertex_count() {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn figure1_four_cycle_graph() {
        let fg = build_four_cycle_graph(&corpus::fig1().graph);
        assert_eq!(fg.nodes.len(), 6);
        assert_eq!(fg.components.len(), 1);
        assert_eq!(fg.supports[0].len(), 6);
    }

    #[test]
    fn pentagon_has_empty_four_cycle_graph() {
        let c5 = SimplicialGraph::from_edges(&[
            ("1", "2"),
            ("2", "3"),
            ("3", "4"),
            ("4", "5"),
            ("5", "1"),
        ])
        .unwrap();
        let fg = build_four_cycle_graph(&c5);
        assert!(fg.nodes.is_empty());
        assert!(!is_cfs(&c5).cfs);
    }

    #[test]
    fn figure3_four_cycle_graph() {
        let g = corpus::fig3_gamma().graph;
        let fg = build_four_cycle_graph(&g);
        assert_eq!(fg.nodes.len(), 9);
        assert_eq!(fg.components.len(), 1);
        assert_eq!(fg.supports[0], g.labels().to_vec());
        let r = is_cfs(&g);
        assert!(r.cfs);
        assert!(r.clique_factor.is_empty());
    }

    #[test]
    fn corpus_cfs_status() {
        for (name, c) in corpus::graphs() {
            let expected = !matches!(name, "fig4_omega" | "fig4_omegaprime" | "cube");
            assert_eq!(is_cfs(&c.graph).cfs, expected, "{name}");
            assert_eq!(brute_force_cfs(&c.graph), expected, "{name}");
        }
    }

    #[test]
    fn omega_witness_misses_corners() {
        let r = is_cfs(&corpus::fig4_omega().graph);
        assert!(!r.cfs);
        assert!(!r.component_support.contains(&"c1".to_string()));
        assert_eq!(r.component_support.len(), 8);
    }

    #[test]
    fn cone_over_square_is_cfs_with_clique_factor() {
        let g = SimplicialGraph::from_edges(&[
            ("a", "b"),
            ("b", "c"),
            ("c", "d"),
            ("d", "a"),
            ("k", "a"),
            ("k", "b"),
            ("k", "c"),
            ("k", "d"),
        ])
        .unwrap();
        let r = is_cfs(&g);
        assert!(r.cfs);
        assert_eq!(r.clique_factor, vec!["k"]);
    }

    fn small_graph() -> impl Strategy<Value = SimplicialGraph> {
        (1usize..=9)
            .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
            .prop_map(|(n, bits)| {
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if bits[k] {
                            edges.push((format!("v{i}"), format!("v{j}")));
                        }
                        k += 1;
                    }
                }
                SimplicialGraph::new((0..n).map(|i| format!("v{i}")), edges).unwrap()
            })
    }

    proptest! {
        #[test]
        fn cfs_matches_definition(g in small_graph()) {
            prop_assert_eq!(is_cfs(&g).cfs, brute_force_cfs(&g));
        }

        #[test]
        fn links_are_symmetric_irreflexive_and_share_a_diagonal(g in small_graph()) {
            let fg = build_four_cycle_graph(&g);
            for &(a, b) in &fg.links {
                prop_assert!(a < b);
                let da: BTreeSet<_> = fg.nodes[a].diagonals().into_iter().collect();
                prop_assert!(fg.nodes[b].diagonals().iter().any(|d| da.contains(d)));
            }
            for a in 0..fg.nodes.len() {
                for b in a + 1..fg.nodes.len() {
                    let da: BTreeSet<_> = fg.nodes[a].diagonals().into_iter().collect();
                    let shared = fg.nodes[b].diagonals().iter().any(|d| da.contains(d));
                    prop_assert_eq!(shared, fg.links.contains(&(a, b)));
                }
            }
        }
    }
}
