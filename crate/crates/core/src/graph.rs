//! Finite simplicial graphs, the only representation of a right-angled
//! Coxeter group used in this crate.
//!
//! Vertices are identified by their string labels and are always kept in
//! sorted label order, so every iteration over a graph is deterministic.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = String;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
    #[error("{0} is not an induced 4-cycle of the graph")]
    NotInducedCycle(String),
}

/// A finite simplicial graph: no loops, no multi-edges.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialGraph {
    labels: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    adj: Vec<BTreeSet<usize>>,
}

impl fmt::Debug for SimplicialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialGraph")
            .field("vertices", &self.labels)
            .field("edges", &self.edge_labels())
            .finish()
    }
}

impl Default for SimplicialGraph {
    fn default() -> Self {
        Self::empty()
    }
}

impl SimplicialGraph {
    pub fn empty() -> Self {
        SimplicialGraph {
            labels: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        }
    }

    pub fn new<V, E, S, T>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (T, T)>,
        T: AsRef<str>,
    {
        let mut labels: Vec<String> = Vec::new();
        let mut seen = BTreeSet::new();
        for v in vertices {
            let v = v.into();
            if !seen.insert(v.clone()) {
                return Err(GraphError::DuplicateVertex(v));
            }
            labels.push(v);
        }
        labels.sort();
        let index: HashMap<String, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let mut adj = vec![BTreeSet::new(); labels.len()];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = *index
                .get(a)
                .ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
            let j = *index
                .get(b)
                .ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
            if i == j {
                return Err(GraphError::Loop(a.to_string()));
            }
            if !adj[i].insert(j) {
                return Err(GraphError::DuplicateEdge(a.to_string(), b.to_string()));
            }
            adj[j].insert(i);
        }
        Ok(SimplicialGraph { labels, index, adj })
    }

    /// Builds a graph whose vertex set is exactly the set of edge endpoints.
    pub fn from_edges<T: AsRef<str>>(edges: &[(T, T)]) -> Result<Self, GraphError> {
        let vertices: BTreeSet<String> = edges
            .iter()
            .flat_map(|(a, b)| [a.as_ref().to_string(), b.as_ref().to_string()])
            .collect();
        Self::new(vertices, edges.iter().map(|(a, b)| (a.as_ref(), b.as_ref())))
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn neighbors(&self, i: usize) -> &BTreeSet<usize> {
        &self.adj[i]
    }

    pub fn neighbor_labels(&self, label: &str) -> Option<Vec<&str>> {
        let i = self.index_of(label)?;
        Some(self.adj[i].iter().map(|&j| self.label(j)).collect())
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(&j)
    }

    pub fn has_edge_labels(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.has_edge(i, j),
            _ => false,
        }
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.range(i + 1..).map(move |&j| (i, j)))
    }

    pub fn edge_labels(&self) -> Vec<(String, String)> {
        self.edges()
            .map(|(i, j)| (self.labels[i].clone(), self.labels[j].clone()))
            .collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<String> {
        self.labels.iter().cloned().collect()
    }

    /// The subgraph induced on `vertices`.
    pub fn induced_subgraph<I, S>(&self, vertices: I) -> Result<SimplicialGraph, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut keep = BTreeSet::new();
        for v in vertices {
            let v = v.as_ref();
            let i = self
                .index_of(v)
                .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
            keep.insert(i);
        }
        Ok(self.induced_by_indices(&keep))
    }

    pub fn induced_by_indices(&self, keep: &BTreeSet<usize>) -> SimplicialGraph {
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let index: HashMap<String, usize> = labels
            .iter()
            .enumerate()
            .map(|(k, l)| (l.clone(), k))
            .collect();
        let adj = keep
            .iter()
            .map(|&i| {
                self.adj[i]
                    .iter()
                    .filter(|j| keep.contains(j))
                    .map(|&j| index[&self.labels[j]])
                    .collect()
            })
            .collect();
        SimplicialGraph { labels, index, adj }
    }

    /// Connected components of the graph with `removed` deleted, each as a
    /// sorted index list; components are ordered by their least vertex.
    pub fn components_avoiding(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        for &r in removed {
            seen[r] = true;
        }
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&[])
    }

    /// Exactly one component. The empty graph is not connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// All triangles `[i, j, k]` with `i < j < k`.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for (i, j) in self.edges() {
            for &k in self.adj[i].intersection(&self.adj[j]) {
                if k > j {
                    out.push([i, j, k]);
                }
            }
        }
        out
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges()
            .all(|(i, j)| self.adj[i].intersection(&self.adj[j]).next().is_none())
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adj.iter().all(|ns| ns.len() + 1 == n)
    }

    /// True when `self` is an induced subgraph of `host` (same labels).
    pub fn is_induced_in(&self, host: &SimplicialGraph) -> bool {
        let Some(map) = self
            .labels
            .iter()
            .map(|l| host.index_of(l))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        for a in 0..map.len() {
            for b in a + 1..map.len() {
                if self.has_edge(a, b) != host.has_edge(map[a], map[b]) {
                    return false;
                }
            }
        }
        true
    }

    /// Common neighbours of `i` and `j`.
    pub fn common_neighbors(&self, i: usize, j: usize) -> Vec<usize> {
        self.adj[i].intersection(&self.adj[j]).copied().collect()
    }
}

/// An induced 4-cycle, stored in cyclic order and canonicalised so that the
/// least label comes first and the second entry is less than the fourth.
///
/// Ordering is lexicographic on the sorted vertex labels; in a simple graph a
/// 4-set carries at most one induced 4-cycle, so this is a total order on the
/// cycles of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FourCycle {
    sorted: [VertexId; 4],
    cycle: [VertexId; 4],
}

impl FourCycle {
    /// Vertices given in cyclic order.
    pub fn new<S: Into<String>>(a: S, b: S, c: S, d: S) -> Self {
        let mut cycle: [String; 4] = [a.into(), b.into(), c.into(), d.into()];
        let min = (0..4).min_by(|&x, &y| cycle[x].cmp(&cycle[y])).unwrap();
        cycle.rotate_left(min);
        if cycle[1] > cycle[3] {
            cycle.swap(1, 3);
        }
        let mut sorted = cycle.clone();
        sorted.sort();
        FourCycle { sorted, cycle }
    }

    /// Builds the cycle and checks it is an induced 4-cycle of `g`.
    pub fn in_graph<S: AsRef<str>>(g: &SimplicialGraph, vs: [S; 4]) -> Result<Self, GraphError> {
        let c = FourCycle::new(
            vs[0].as_ref(),
            vs[1].as_ref(),
            vs[2].as_ref(),
            vs[3].as_ref(),
        );
        for v in &c.cycle {
            if !g.contains(v) {
                return Err(GraphError::UnknownVertex(v.clone()));
            }
        }
        if !c.is_induced_in(g) {
            return Err(GraphError::NotInducedCycle(c.to_string()));
        }
        Ok(c)
    }

    pub fn cycle(&self) -> &[VertexId; 4] {
        &self.cycle
    }

    pub fn sorted_vertices(&self) -> &[VertexId; 4] {
        &self.sorted
    }

    pub fn vertex_set(&self) -> BTreeSet<String> {
        self.sorted.iter().cloned().collect()
    }

    pub fn contains(&self, v: &str) -> bool {
        self.sorted.iter().any(|x| x == v)
    }

    /// The two non-adjacent (diagonal) pairs, each sorted.
    pub fn diagonals(&self) -> [(VertexId, VertexId); 2] {
        let pair = |x: &String, y: &String| {
            if x <= y {
                (x.clone(), y.clone())
            } else {
                (y.clone(), x.clone())
            }
        };
        [
            pair(&self.cycle[0], &self.cycle[2]),
            pair(&self.cycle[1], &self.cycle[3]),
        ]
    }

    pub fn is_induced_in(&self, g: &SimplicialGraph) -> bool {
        let Some(ix) = self
            .cycle
            .iter()
            .map(|v| g.index_of(v))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        (0..4).all(|k| g.has_edge(ix[k], ix[(k + 1) % 4]))
            && !g.has_edge(ix[0], ix[2])
            && !g.has_edge(ix[1], ix[3])
    }

    pub fn is_subset_of(&self, set: &BTreeSet<String>) -> bool {
        self.sorted.iter().all(|v| set.contains(v))
    }
}

impl fmt::Display for FourCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.cycle.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct FourCycleRepr {
    cycle: [String; 4],
    diagonals: [[String; 2]; 2],
}

impl Serialize for FourCycle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let [d0, d1] = self.diagonals();
        FourCycleRepr {
            cycle: self.cycle.clone(),
            diagonals: [[d0.0, d0.1], [d1.0, d1.1]],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FourCycle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FourCycleRepr::deserialize(d)?;
        let [a, b, c, e] = r.cycle;
        Ok(FourCycle::new(a, b, c, e))
    }
}

/// Every induced 4-cycle of `g`, each once, in ascending order.
pub fn enumerate_induced_four_cycles(g: &SimplicialGraph) -> Vec<FourCycle> {
    let n = g.vertex_count();
    let mut found = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            let common = g.common_neighbors(u, v);
            for (k, &x) in common.iter().enumerate() {
                for &y in &common[k + 1..] {
                    if !g.has_edge(x, y) {
                        found.insert(FourCycle::new(
                            g.label(u),
                            g.label(x),
                            g.label(v),
                            g.label(y),
                        ));
                    }
                }
            }
        }
    }
    found.into_iter().collect()
}

/// A nontrivial join decomposition `Γ = Γ₁ * Γ₂`, read off the components
/// of the complement graph. `part1` is the smallest complement component
/// (ties broken by least label) and `part2` the rest.
pub fn join_factors(g: &SimplicialGraph) -> Option<(Vec<String>, Vec<String>)> {
    let comps = complement_components(g);
    if comps.len() < 2 {
        return None;
    }
    let first = comps
        .iter()
        .enumerate()
        .min_by_key(|(k, c)| (c.len(), *k))
        .map(|(k, _)| k)
        .unwrap();
    let part1: Vec<String> = comps[first].iter().map(|&i| g.label(i).to_string()).collect();
    let mut part2: Vec<String> = comps
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != first)
        .flat_map(|(_, c)| c.iter().map(|&i| g.label(i).to_string()))
        .collect();
    part2.sort();
    Some((part1, part2))
}

/// Components of the complement graph, as sorted index lists.
pub fn complement_components(g: &SimplicialGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for w in 0..n {
                if w != u && !seen[w] && !g.has_edge(u, w) {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// A suspension `{b, c} * tips`: `b, c` non-adjacent, tips an edgeless set
/// of at least three vertices, every tip adjacent to both `b` and `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Suspension {
    pub suspension_points: [VertexId; 2],
    pub tips: Vec<VertexId>,
}

pub fn suspension_of(g: &SimplicialGraph) -> Option<Suspension> {
    let n = g.vertex_count();
    if n < 5 {
        return None;
    }
    // With at least three tips the suspension points are exactly the
    // vertices of degree n - 2; tips have degree 2 < n - 2.
    let poles: Vec<usize> = (0..n).filter(|&i| g.degree(i) == n - 2).collect();
    if poles.len() != 2 || g.has_edge(poles[0], poles[1]) {
        return None;
    }
    let tips: Vec<usize> = (0..n).filter(|i| !poles.contains(i)).collect();
    let ok = tips.iter().all(|&t| {
        g.degree(t) == 2 && g.has_edge(t, poles[0]) && g.has_edge(t, poles[1])
    });
    if !ok {
        return None;
    }
    Some(Suspension {
        suspension_points: [g.label(poles[0]).to_string(), g.label(poles[1]).to_string()],
        tips: tips.iter().map(|&t| g.label(t).to_string()).collect(),
    })
}
