#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rcqi_core::bisim::ColoredGraph;
use rcqi_core::highdim::{PFTree, PFVertex};

/// A small coloured graph in matrix form; `adj[i][i]` is a loop.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Small {
    pub colors: Vec<u8>,
    pub adj: Vec<Vec<bool>>,
}

impl Small {
    pub fn n(&self) -> usize {
        self.colors.len()
    }

    /// Minimum over all vertex orders; two graphs are isomorphic iff their
    /// canonical forms agree.
    pub fn canonical(&self) -> Small {
        let n = self.n();
        (0..n)
            .permutations(n)
            .map(|p| Small {
                colors: p.iter().map(|&i| self.colors[i]).collect(),
                adj: p
                    .iter()
                    .map(|&i| p.iter().map(|&j| self.adj[i][j]).collect())
                    .collect(),
            })
            .min()
            .unwrap_or_else(|| self.clone())
    }

    pub fn to_colored(&self) -> ColoredGraph {
        let name = |i: usize| format!("x{i}");
        let edges: Vec<(String, String)> = (0..self.n())
            .flat_map(|i| (i..self.n()).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adj[i][j])
            .map(|(i, j)| (name(i), name(j)))
            .collect();
        ColoredGraph::new(
            (0..self.n()).map(name),
            edges,
            (0..self.n()).map(|i| (name(i), format!("c{}", self.colors[i]))),
        )
        .unwrap()
    }

    pub fn from_colored(g: &ColoredGraph) -> Small {
        let palette: Vec<String> = g.color_set().into_iter().collect();
        let n = g.vertex_count();
        Small {
            colors: (0..n)
                .map(|i| palette.iter().position(|c| c == g.color(i)).unwrap() as u8)
                .collect(),
            adj: (0..n)
                .map(|i| (0..n).map(|j| g.has_edge(i, j)).collect())
                .collect(),
        }
    }
}

/// All set partitions of `0..n` as block assignments in restricted-growth form.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max {
            cur.push(b);
            go(i + 1, n, cur, max.max(b + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// The graph `g` weakly covers via `block` (one block per vertex), if that
/// map is a surjective weak covering onto its image graph. The image has
/// an edge between two blocks (or a loop) iff some edge of `g` maps there;
/// lifting then requires every vertex to see the same neighbour blocks as
/// the rest of its block.
pub fn quotient_if_covering(g: &Small, block: &[usize]) -> Option<Small> {
    let k = block.iter().max().map_or(0, |m| m + 1);
    let mut colors = vec![None; k];
    for (v, &b) in block.iter().enumerate() {
        match colors[b] {
            None => colors[b] = Some(g.colors[v]),
            Some(c) if c != g.colors[v] => return None,
            _ => {}
        }
    }
    let mut adj = vec![vec![false; k]; k];
    for i in 0..g.n() {
        for j in 0..g.n() {
            if g.adj[i][j] {
                adj[block[i]][block[j]] = true;
            }
        }
    }
    for v in 0..g.n() {
        let seen: BTreeSet<usize> = (0..g.n()).filter(|&w| g.adj[v][w]).map(|w| block[w]).collect();
        let needed: BTreeSet<usize> = (0..k).filter(|&c| adj[block[v]][c]).collect();
        if seen != needed {
            return None;
        }
    }
    Some(Small {
        colors: colors.into_iter().map(Option::unwrap).collect(),
        adj,
    })
}

/// Canonical forms of every graph `g` weakly covers.
pub fn covered_graphs(g: &Small) -> BTreeSet<Small> {
    set_partitions(g.n())
        .iter()
        .filter_map(|b| quotient_if_covering(g, b))
        .map(|q| q.canonical())
        .collect()
}

/// Brute-force bisimilarity: some graph is weakly covered by both.
pub fn brute_bisimilar(a: &BTreeSet<Small>, b: &BTreeSet<Small>) -> bool {
    a.intersection(b).next().is_some()
}

/// Labelled trees on `n` vertices, decoded from Prüfer sequences.
pub fn labelled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 1 {
        return vec![vec![]];
    }
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    (0..n - 2)
        .map(|_| 0..n)
        .multi_cartesian_product()
        .map(|code| {
            let mut degree = vec![1; n];
            for &x in &code {
                degree[x] += 1;
            }
            let mut edges = Vec::new();
            for &x in &code {
                let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
                edges.push((leaf, x));
                degree[leaf] -= 1;
                degree[x] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
            edges.push((rest[0], rest[1]));
            edges
        })
        .collect()
}

fn tree_small(n: usize, edges: &[(usize, usize)], colors: Vec<u8>) -> Small {
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    Small { colors, adj }
}

/// Every tree with at most `max_n` vertices and every colouring by two
/// colours, one representative per isomorphism class.
pub fn all_two_colored_trees(max_n: usize) -> Vec<Small> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let shapes: BTreeSet<Small> = labelled_trees(n)
            .iter()
            .map(|e| tree_small(n, e, vec![0; n]).canonical())
            .collect();
        let mut colored = BTreeSet::new();
        for shape in shapes {
            for mask in 0u32..(1 << n) {
                let colors = (0..n).map(|i| ((mask >> i) & 1) as u8).collect();
                colored.insert(Small { colors, adj: shape.adj.clone() }.canonical());
            }
        }
        out.extend(colored);
    }
    out
}

/// A random valid p/f tree with `n = 1`: a random tree on `2..=max_p`
/// p-vertices, each edge subdivided by an f-vertex, labels a proper
/// 2-colouring, weights in `[max(3, valence), valence + 2]`.
pub fn random_t1(rng: &mut ChaCha8Rng, max_p: usize) -> PFTree {
    let np = rng.gen_range(2..=max_p);
    let mut parent = vec![usize::MAX; np];
    for (v, p) in parent.iter_mut().enumerate().skip(1) {
        *p = rng.gen_range(0..v);
    }
    let mut label = vec![rng.gen_range(0..2usize); np];
    for v in 1..np {
        label[v] = 1 - label[parent[v]];
    }
    let mut valence = vec![0; np];
    for v in 1..np {
        valence[v] += 1;
        valence[parent[v]] += 1;
    }
    let mut vertices: Vec<PFVertex> = (0..np)
        .map(|v| {
            let lo = valence[v].max(3);
            PFVertex::p(&format!("p{v}"), label[v], rng.gen_range(lo..=valence[v] + 2))
        })
        .collect();
    let mut edges = Vec::new();
    for v in 1..np {
        let f = format!("f{v}");
        vertices.push(PFVertex::f(&f));
        edges.push([format!("p{}", parent[v]), f.clone()]);
        edges.push([f, format!("p{v}")]);
    }
    PFTree { n: 1, vertices, edges }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn label_map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}
