//! Coloured graphs, weak coverings and bisimilarity.
//!
//! A weak covering is a colour-preserving graph map `G -> H` such that every
//! edge of `H` at the image of `v` lifts to an edge of `G` at `v`. Two
//! coloured graphs are bisimilar when they weakly cover a common graph;
//! equivalently, their minimal quotients (coarsest stable partitions) are
//! isomorphic.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::SimplicialGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BisimError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` has no colour")]
    Uncolored(String),
    #[error("map sends `{0}` outside the target graph")]
    BadImage(String),
    #[error("colour map is not a permutation of its support")]
    NotAPermutation,
}

/// A finite graph, loops allowed, with a colour on every vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
    colors: Vec<String>,
}

impl std::fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ColoredGraph")
            .field("vertices", &self.labels)
            .field("edges", &self.edge_labels())
            .field("colors", &self.colors)
            .finish()
    }
}

impl ColoredGraph {
    pub fn new<V, E, C>(vertices: V, edges: E, colors: C) -> Result<Self, BisimError>
    where
        V: IntoIterator<Item = String>,
        E: IntoIterator<Item = (String, String)>,
        C: IntoIterator<Item = (String, String)>,
    {
        let mut labels: Vec<String> = Vec::new();
        let mut seen = BTreeSet::new();
        for v in vertices {
            if !seen.insert(v.clone()) {
                return Err(BisimError::DuplicateVertex(v));
            }
            labels.push(v);
        }
        labels.sort();
        let index: HashMap<String, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let lookup = |v: &str| {
            index
                .get(v)
                .copied()
                .ok_or_else(|| BisimError::UnknownVertex(v.to_string()))
        };
        let mut adj = vec![BTreeSet::new(); labels.len()];
        for (a, b) in edges {
            let (i, j) = (lookup(&a)?, lookup(&b)?);
            adj[i].insert(j);
            adj[j].insert(i);
        }
        let mut color: Vec<Option<String>> = vec![None; labels.len()];
        for (v, c) in colors {
            color[lookup(&v)?] = Some(c);
        }
        let colors = color
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| BisimError::Uncolored(labels[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ColoredGraph {
            labels,
            index,
            adj,
            colors,
        })
    }

    /// `g` with every vertex given the same colour.
    pub fn uniform(g: &SimplicialGraph, color: &str) -> Self {
        ColoredGraph::new(
            g.labels().iter().cloned(),
            g.edge_labels(),
            g.labels().iter().map(|v| (v.clone(), color.to_string())),
        )
        .expect("simplicial graph is a valid coloured graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, v: &str) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn color(&self, i: usize) -> &str {
        &self.colors[i]
    }

    pub fn color_of(&self, v: &str) -> Option<&str> {
        self.index_of(v).map(|i| self.color(i))
    }

    pub fn neighbors(&self, i: usize) -> &BTreeSet<usize> {
        &self.adj[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(&j)
    }

    pub fn has_loop(&self, i: usize) -> bool {
        self.adj[i].contains(&i)
    }

    /// Edges as `(i, j)` with `i <= j`; `i == j` is a loop.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.range(i..).map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn edge_labels(&self) -> Vec<(String, String)> {
        self.edges()
            .map(|(i, j)| (self.labels[i].clone(), self.labels[j].clone()))
            .collect()
    }

    pub fn color_set(&self) -> BTreeSet<String> {
        self.colors.iter().cloned().collect()
    }

    pub fn recolored(&self, pi: &ColorPermutation) -> ColoredGraph {
        let mut out = self.clone();
        for c in &mut out.colors {
            *c = pi.apply(c).to_string();
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct ColoredGraphFile {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
    colors: BTreeMap<String, String>,
}

impl Serialize for ColoredGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ColoredGraphFile {
            vertices: self.labels.clone(),
            edges: self.edge_labels().into_iter().map(|(a, b)| [a, b]).collect(),
            colors: self
                .labels
                .iter()
                .cloned()
                .zip(self.colors.iter().cloned())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColoredGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = ColoredGraphFile::deserialize(d)?;
        ColoredGraph::new(
            f.vertices,
            f.edges.into_iter().map(|[a, b]| (a, b)),
            f.colors,
        )
        .map_err(serde::de::Error::custom)
    }
}

/// The coarsest stable quotient of a coloured graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalQuotient {
    pub quotient: ColoredGraph,
    /// Vertex of the input -> block id (`q0`, `q1`, ... by least member).
    pub projection: BTreeMap<String, String>,
}

/// Refines the colour partition by the set of neighbouring blocks until
/// stable. Blocks are numbered by their least member.
fn coarsest_stable_partition(g: &ColoredGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut block: Vec<usize> = (0..n)
        .map(|i| {
            let next = ids.len();
            *ids.entry(g.color(i)).or_insert(next)
        })
        .collect();
    let mut count = ids.len();
    for _round in 0..=n {
        let mut sig_ids: HashMap<(usize, BTreeSet<usize>), usize> = HashMap::new();
        let next_block: Vec<usize> = (0..n)
            .map(|v| {
                let sig = (block[v], g.adj[v].iter().map(|&w| block[w]).collect());
                let next = sig_ids.len();
                *sig_ids.entry(sig).or_insert(next)
            })
            .collect();
        let new_count = sig_ids.len();
        block = next_block;
        if new_count == count {
            return block;
        }
        count = new_count;
    }
    unreachable!("refinement stabilises within |V| rounds")
}

fn quotient_by(g: &ColoredGraph, block: &[usize]) -> MinimalQuotient {
    let k = block.iter().copied().max().map_or(0, |m| m + 1);
    let name = |b: usize| format!("q{b}");
    let mut colors = vec![String::new(); k];
    for v in 0..g.vertex_count() {
        colors[block[v]] = g.color(v).to_string();
    }
    let edges: BTreeSet<(usize, usize)> = g
        .edges()
        .map(|(a, b)| (block[a].min(block[b]), block[a].max(block[b])))
        .collect();
    let quotient = ColoredGraph::new(
        (0..k).map(name),
        edges.into_iter().map(|(a, b)| (name(a), name(b))),
        colors.into_iter().enumerate().map(|(b, c)| (name(b), c)),
    )
    .unwrap();
    let projection = (0..g.vertex_count())
        .map(|v| (g.label(v).to_string(), name(block[v])))
        .collect();
    MinimalQuotient {
        quotient,
        projection,
    }
}

pub fn minimal_quotient(g: &ColoredGraph) -> MinimalQuotient {
    quotient_by(g, &coarsest_stable_partition(g))
}

/// Whether the partition given by `projection` is stable: blocks are
/// monochromatic and whenever an edge joins blocks `X` and `Y`, every member
/// of `X` has a neighbour in `Y`.
pub fn is_stable(g: &ColoredGraph, projection: &BTreeMap<String, String>) -> bool {
    let block: Vec<&str> = g
        .labels()
        .iter()
        .map(|v| projection.get(v).map(String::as_str).unwrap_or(""))
        .collect();
    let mut members: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (v, b) in block.iter().enumerate() {
        members.entry(b).or_default().push(v);
    }
    for vs in members.values() {
        if vs.iter().any(|&v| g.color(v) != g.color(vs[0])) {
            return false;
        }
    }
    for (a, b) in g.edges() {
        for (x, y) in [(a, b), (b, a)] {
            let target = block[y];
            let ok = members[block[x]]
                .iter()
                .all(|&u| g.neighbors(u).iter().any(|&w| block[w] == target));
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Checks that `map` is a colour-preserving homomorphism `g -> h` under which
/// every edge of `h` at `map(v)` lifts to an edge of `g` at `v`.
pub fn weakly_covers(
    g: &ColoredGraph,
    h: &ColoredGraph,
    map: &BTreeMap<String, String>,
) -> Result<bool, BisimError> {
    let mut f = Vec::with_capacity(g.vertex_count());
    for v in g.labels() {
        let image = map
            .get(v)
            .ok_or_else(|| BisimError::UnknownVertex(v.clone()))?;
        let j = h
            .index_of(image)
            .ok_or_else(|| BisimError::BadImage(v.clone()))?;
        f.push(j);
    }
    for (v, &fv) in f.iter().enumerate() {
        if g.color(v) != h.color(fv) {
            return Ok(false);
        }
    }
    for (a, b) in g.edges() {
        if !h.has_edge(f[a], f[b]) {
            return Ok(false);
        }
    }
    for v in 0..g.vertex_count() {
        for &y in h.neighbors(f[v]) {
            if !g.neighbors(v).iter().any(|&w| f[w] == y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Colour-preserving isomorphism test (loops respected): joint colour
/// refinement followed by backtracking.
pub fn isomorphic(g: &ColoredGraph, h: &ColoredGraph) -> bool {
    isomorphism(g, h).is_some()
}

/// An isomorphism `g -> h` as a label map, if one exists.
pub fn isomorphism(g: &ColoredGraph, h: &ColoredGraph) -> Option<BTreeMap<String, String>> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    // joint refinement over the disjoint union; vertex i < n from g
    let nbrs = |x: usize| -> Vec<usize> {
        if x < n {
            g.neighbors(x).iter().filter(|&&w| w != x).copied().collect()
        } else {
            h.neighbors(x - n)
                .iter()
                .filter(|&&w| w != x - n)
                .map(|&w| w + n)
                .collect()
        }
    };
    let all_nbrs: Vec<Vec<usize>> = (0..2 * n).map(nbrs).collect();
    let mut ids: BTreeMap<(String, bool), usize> = BTreeMap::new();
    for x in 0..2 * n {
        let key = if x < n {
            (g.color(x).to_string(), g.has_loop(x))
        } else {
            (h.color(x - n).to_string(), h.has_loop(x - n))
        };
        let next = ids.len();
        ids.entry(key).or_insert(next);
    }
    let mut class: Vec<usize> = (0..2 * n)
        .map(|x| {
            let key = if x < n {
                (g.color(x).to_string(), g.has_loop(x))
            } else {
                (h.color(x - n).to_string(), h.has_loop(x - n))
            };
            ids[&key]
        })
        .collect();
    let mut count = ids.len();
    loop {
        let mut sig_ids: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let sigs: Vec<(usize, Vec<usize>)> = (0..2 * n)
            .map(|x| {
                let mut ms: Vec<usize> = all_nbrs[x].iter().map(|&w| class[w]).collect();
                ms.sort_unstable();
                (class[x], ms)
            })
            .collect();
        for s in &sigs {
            let next = sig_ids.len();
            sig_ids.entry(s.clone()).or_insert(next);
        }
        class = sigs.iter().map(|s| sig_ids[s]).collect();
        if sig_ids.len() == count {
            break;
        }
        count = sig_ids.len();
    }
    let mut hist_g = vec![0usize; count];
    let mut hist_h = vec![0usize; count];
    for x in 0..n {
        hist_g[class[x]] += 1;
        hist_h[class[x + n]] += 1;
    }
    if hist_g != hist_h {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (hist_g[class[x]], class[x], x));
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if backtrack(g, h, &class, n, &order, 0, &mut assign, &mut used) {
        Some(
            (0..n)
                .map(|x| (g.label(x).to_string(), h.label(assign[x]).to_string()))
                .collect(),
        )
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    g: &ColoredGraph,
    h: &ColoredGraph,
    class: &[usize],
    n: usize,
    order: &[usize],
    depth: usize,
    assign: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in 0..n {
        if used[y] || class[y + n] != class[x] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&p| g.has_edge(x, p) == h.has_edge(y, assign[p]));
        if !consistent {
            continue;
        }
        assign[x] = y;
        used[y] = true;
        if backtrack(g, h, class, n, order, depth + 1, assign, used) {
            return true;
        }
        used[y] = false;
        assign[x] = usize::MAX;
    }
    false
}

pub fn bisimilar(g: &ColoredGraph, h: &ColoredGraph) -> bool {
    isomorphic(&minimal_quotient(g).quotient, &minimal_quotient(h).quotient)
}

/// A permutation of colour names; colours outside the map are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorPermutation(BTreeMap<String, String>);

impl ColorPermutation {
    pub fn identity() -> Self {
        ColorPermutation::default()
    }

    /// Fixed points are dropped, so equal permutations compare equal.
    pub fn new(map: BTreeMap<String, String>) -> Result<Self, BisimError> {
        let keys: BTreeSet<&String> = map.keys().collect();
        let values: BTreeSet<&String> = map.values().collect();
        if keys != values || values.len() != map.len() {
            return Err(BisimError::NotAPermutation);
        }
        Ok(ColorPermutation(
            map.into_iter().filter(|(a, b)| a != b).collect(),
        ))
    }

    pub fn swap(a: &str, b: &str) -> Self {
        Self::new(BTreeMap::from([
            (a.to_string(), b.to_string()),
            (b.to_string(), a.to_string()),
        ]))
        .unwrap()
    }

    pub fn apply<'a>(&'a self, c: &'a str) -> &'a str {
        self.0.get(c).map(String::as_str).unwrap_or(c)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        ColorPermutation(self.0.iter().map(|(a, b)| (b.clone(), a.clone())).collect())
    }

    pub fn as_map(&self) -> &BTreeMap<String, String> {
        &self.0
    }
}

/// All permutations of `colors`, the identity first.
pub fn symmetric_group<S: AsRef<str>>(colors: &[S]) -> Vec<ColorPermutation> {
    use itertools::Itertools;
    let colors: Vec<String> = colors.iter().map(|c| c.as_ref().to_string()).collect();
    colors
        .iter()
        .permutations(colors.len())
        .map(|p| {
            ColorPermutation::new(
                colors
                    .iter()
                    .cloned()
                    .zip(p.into_iter().cloned())
                    .collect(),
            )
            .unwrap()
        })
        .collect()
}

/// The first `π` in `allowed` with `π·g` bisimilar to `h`.
pub fn bisimilar_mod_colors(
    g: &ColoredGraph,
    h: &ColoredGraph,
    allowed: &[ColorPermutation],
) -> Option<ColorPermutation> {
    // Refinement only sees which vertices share a colour, so recolouring
    // commutes with taking the quotient.
    let qg = minimal_quotient(g).quotient;
    let qh = minimal_quotient(h).quotient;
    allowed
        .iter()
        .find(|pi| isomorphic(&qg.recolored(pi), &qh))
        .cloned()
}
