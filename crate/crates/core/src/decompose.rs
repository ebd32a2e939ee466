//! Prime decomposition trees and visual decomposition trees.
//!
//! A prime decomposition repeatedly cuts a piece along a strongly separating
//! induced 4-cycle until no piece has one. For CFS graphs every prime piece
//! is a `K_{2,3}`; merging neighbouring pieces with the same suspension
//! points gives the visual tree, whose vertices are weighted by their number
//! of tips and coloured black (weight > degree) or white.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bisim::ColoredGraph;
use crate::graph::{enumerate_induced_four_cycles, suspension_of, FourCycle, SimplicialGraph};
use crate::planar::{
    restrict_embedding, strong_decomposition, strongly_separates, validate_embedding, EmbedError,
    RotationSystem,
};
use crate::standing::{validate_standing, Check};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("graph violates the standing assumptions: {0:?}")]
    NotStanding(Vec<Check>),
    #[error("rotation system is not a planar embedding")]
    NotPlanar,
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error("4-cycle {0} glues two different tree edges")]
    DuplicateGlue(String),
    #[error("4-cycle {0} lies in neither half of a split")]
    LostGlue(String),
    #[error("piece {0} is not a suspension of three points; the graph is not CFS")]
    NotCfs(String),
    #[error("non-separating tip pairs at {0} do not form a cycle")]
    CyclicOrder(String),
    #[error("visual tree invariant violated: {0}")]
    Invariant(String),
}

/// Which strongly separating 4-cycle to cut next.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SplitOrder {
    /// The least cycle of the least splittable piece (by sorted labels).
    #[default]
    Lexicographic,
    /// Piece and cycle drawn at random from the given seed.
    Seeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub id: String,
    pub piece: SimplicialGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub a: String,
    pub b: String,
    pub glue: FourCycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeTree {
    pub nodes: Vec<TreeNode>,
    pub edges: Vec<TreeEdge>,
}

impl PrimeTree {
    pub fn node(&self, id: &str) -> Option<&TreeNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    fn position(&self, id: &str) -> usize {
        self.nodes.iter().position(|n| n.id == id).unwrap()
    }

    pub fn degree(&self, id: &str) -> usize {
        self.edges.iter().filter(|e| e.a == id || e.b == id).count()
    }

    /// The union of all pieces.
    pub fn union_graph(&self) -> SimplicialGraph {
        union_graph(self.nodes.iter().map(|n| &n.piece))
    }

    /// Vertex sets on the two sides of each edge: the unions of the pieces in
    /// the two subtrees left after deleting that edge.
    pub fn edge_sides(&self, edge: usize) -> (BTreeSet<String>, BTreeSet<String>) {
        let e = &self.edges[edge];
        let mut seen = BTreeSet::from([self.position(&e.a)]);
        let mut stack = vec![self.position(&e.a)];
        while let Some(u) = stack.pop() {
            for (k, f) in self.edges.iter().enumerate() {
                if k == edge {
                    continue;
                }
                let (x, y) = (self.position(&f.a), self.position(&f.b));
                for (p, q) in [(x, y), (y, x)] {
                    if p == u && seen.insert(q) {
                        stack.push(q);
                    }
                }
            }
        }
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for (k, n) in self.nodes.iter().enumerate() {
            let side = if seen.contains(&k) { &mut left } else { &mut right };
            side.extend(n.piece.labels().iter().cloned());
        }
        (left, right)
    }
}

fn union_graph<'a>(pieces: impl Iterator<Item = &'a SimplicialGraph>) -> SimplicialGraph {
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for p in pieces {
        vertices.extend(p.labels().iter().cloned());
        edges.extend(p.edge_labels());
    }
    SimplicialGraph::new(vertices, edges.iter().map(|(a, b)| (a.as_str(), b.as_str())))
        .expect("union of subgraphs is a simplicial graph")
}

/// Induced 4-cycles of `g` that strongly separate it under `f`.
pub fn strongly_separating_cycles(
    g: &SimplicialGraph,
    f: &RotationSystem,
) -> Result<Vec<FourCycle>, EmbedError> {
    let mut out = Vec::new();
    for sigma in enumerate_induced_four_cycles(g) {
        if strongly_separates(g, f, &sigma)?.strongly {
            out.push(sigma);
        }
    }
    Ok(out)
}

fn is_four_cycle(g: &SimplicialGraph) -> bool {
    g.vertex_count() == 4 && g.edge_count() == 4 && (0..4).all(|i| g.degree(i) == 2)
}

/// Prime: not a 4-cycle, and no induced 4-cycle strongly separates.
pub fn is_prime(g: &SimplicialGraph, f: &RotationSystem) -> Result<bool, EmbedError> {
    if is_four_cycle(g) {
        return Ok(false);
    }
    for sigma in enumerate_induced_four_cycles(g) {
        if strongly_separates(g, f, &sigma)?.strongly {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Two non-adjacent vertices with at least three common neighbours, i.e.
/// an induced suspension of three points in a triangle-free graph.
pub fn has_three_point_suspension(g: &SimplicialGraph) -> bool {
    let n = g.vertex_count();
    (0..n).any(|a| {
        (a + 1..n).any(|b| !g.has_edge(a, b) && g.common_neighbors(a, b).len() >= 3)
    })
}

struct Piece {
    graph: SimplicialGraph,
    rotation: RotationSystem,
    separating: Vec<FourCycle>,
}

impl Piece {
    fn new(graph: SimplicialGraph, rotation: RotationSystem) -> Result<Self, EmbedError> {
        let separating = strongly_separating_cycles(&graph, &rotation)?;
        Ok(Piece {
            graph,
            rotation,
            separating,
        })
    }
}

/// Cuts `g` along strongly separating 4-cycles until every piece is prime.
///
/// Each cut replaces a piece by the two halves of its strong decomposition,
/// joined by a new edge carrying σ; the existing edges of the piece move to
/// whichever half contains their 4-cycle.
pub fn prime_decomposition(
    g: &SimplicialGraph,
    f: &RotationSystem,
    order: SplitOrder,
) -> Result<PrimeTree, DecomposeError> {
    if !validate_embedding(g, f)?.planar {
        return Err(DecomposeError::NotPlanar);
    }
    let report = validate_standing(g, Some(f));
    if !report.passes() {
        return Err(DecomposeError::NotStanding(report.failed_checks()));
    }
    let mut rng = match order {
        SplitOrder::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        SplitOrder::Lexicographic => None,
    };
    let mut pieces = vec![Piece::new(g.clone(), f.clone())?];
    let mut edges: Vec<(usize, usize, FourCycle)> = Vec::new();

    loop {
        let mut splittable: Vec<usize> = (0..pieces.len())
            .filter(|&k| !pieces[k].separating.is_empty())
            .collect();
        if splittable.is_empty() {
            break;
        }
        splittable.sort_by(|&x, &y| pieces[x].graph.labels().cmp(pieces[y].graph.labels()));
        let (k, sigma) = match rng.as_mut() {
            None => (splittable[0], pieces[splittable[0]].separating[0].clone()),
            Some(r) => {
                let k = *splittable.choose(r).unwrap();
                let s = r.gen_range(0..pieces[k].separating.len());
                (k, pieces[k].separating[s].clone())
            }
        };
        let pair = strong_decomposition(&pieces[k].graph, &pieces[k].rotation, &sigma)?;
        let r1 = restrict_embedding(&pieces[k].rotation, pair.gamma1.labels());
        let r2 = restrict_embedding(&pieces[k].rotation, pair.gamma2.labels());
        let set1 = pair.gamma1.vertex_set();
        let set2 = pair.gamma2.vertex_set();
        let new = pieces.len();
        for e in edges.iter_mut() {
            if e.0 != k && e.1 != k {
                continue;
            }
            let in1 = e.2.is_subset_of(&set1);
            let in2 = e.2.is_subset_of(&set2);
            match (in1, in2) {
                (true, false) => {}
                (false, true) => {
                    if e.0 == k {
                        e.0 = new;
                    } else {
                        e.1 = new;
                    }
                }
                (true, true) => return Err(DecomposeError::DuplicateGlue(e.2.to_string())),
                (false, false) => return Err(DecomposeError::LostGlue(e.2.to_string())),
            }
        }
        if edges.iter().any(|e| e.2 == sigma) {
            return Err(DecomposeError::DuplicateGlue(sigma.to_string()));
        }
        edges.push((k, new, sigma));
        pieces[k] = Piece::new(pair.gamma1, r1)?;
        pieces.push(Piece::new(pair.gamma2, r2)?);
    }

    let mut order_ix: Vec<usize> = (0..pieces.len()).collect();
    order_ix.sort_by(|&x, &y| pieces[x].graph.labels().cmp(pieces[y].graph.labels()));
    let mut rank = vec![0; pieces.len()];
    for (r, &k) in order_ix.iter().enumerate() {
        rank[k] = r;
    }
    let id = |k: usize| format!("v{}", rank[k] + 1);
    let mut tree_edges: Vec<TreeEdge> = edges
        .into_iter()
        .map(|(x, y, glue)| {
            let (x, y) = if rank[x] < rank[y] { (x, y) } else { (y, x) };
            TreeEdge { a: id(x), b: id(y), glue }
        })
        .collect();
    tree_edges.sort_by_key(|e| (rank_of(&e.a), rank_of(&e.b)));
    let mut nodes: Vec<TreeNode> = Vec::with_capacity(pieces.len());
    for &k in &order_ix {
        nodes.push(TreeNode {
            id: id(k),
            piece: pieces[k].graph.clone(),
        });
    }
    let tree = PrimeTree {
        nodes,
        edges: tree_edges,
    };
    check_prime_tree(g, &tree)?;
    Ok(tree)
}

fn rank_of(id: &str) -> usize {
    id[1..].parse().unwrap_or(usize::MAX)
}

fn check_prime_tree(g: &SimplicialGraph, tree: &PrimeTree) -> Result<(), DecomposeError> {
    let bad = |s: String| Err(DecomposeError::Invariant(s));
    if tree.edges.len() + 1 != tree.nodes.len() {
        return bad("tree has the wrong number of edges".into());
    }
    let union = tree.union_graph();
    if &union != g {
        return bad("pieces do not cover the graph".into());
    }
    let distinct: BTreeSet<&[String]> = tree.nodes.iter().map(|n| n.piece.labels()).collect();
    if distinct.len() != tree.nodes.len() {
        return bad("two pieces coincide".into());
    }
    let glues: BTreeSet<&FourCycle> = tree.edges.iter().map(|e| &e.glue).collect();
    if glues.len() != tree.edges.len() {
        return Err(DecomposeError::DuplicateGlue("repeated".into()));
    }
    for e in &tree.edges {
        let a = tree.node(&e.a).unwrap().piece.vertex_set();
        let b = tree.node(&e.b).unwrap().piece.vertex_set();
        let meet: BTreeSet<String> = a.intersection(&b).cloned().collect();
        if meet != e.glue.vertex_set() {
            return bad(format!("{} and {} do not meet in {}", e.a, e.b, e.glue));
        }
    }
    for n in &tree.nodes {
        if has_three_point_suspension(&n.piece) && !is_three_point_suspension(&n.piece) {
            return bad(format!(
                "prime piece {} contains a suspension of three points without being one",
                n.id
            ));
        }
    }
    Ok(())
}

fn is_three_point_suspension(g: &SimplicialGraph) -> bool {
    suspension_of(g).is_some_and(|s| s.tips.len() == 3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeColor {
    Black,
    White,
}

impl NodeColor {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeColor::Black => "black",
            NodeColor::White => "white",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VisualNode {
    pub id: String,
    pub piece: SimplicialGraph,
    pub suspension_points: [String; 2],
    /// Tips in cyclic order, starting at the least label and continuing to
    /// its lesser neighbour.
    pub a: Vec<String>,
    pub weight: usize,
    pub degree: usize,
    pub color: NodeColor,
    /// Prime-tree nodes merged into this one.
    pub members: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VisualEdge {
    pub a: String,
    pub b: String,
    pub glue: FourCycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VisualTree {
    pub nodes: Vec<VisualNode>,
    pub edges: Vec<VisualEdge>,
}

impl VisualTree {
    pub fn node(&self, id: &str) -> Option<&VisualNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn is_all_black(&self) -> bool {
        self.nodes.iter().all(|n| n.color == NodeColor::Black)
    }

    /// The underlying tree coloured `black`/`white`.
    pub fn to_colored_graph(&self) -> ColoredGraph {
        ColoredGraph::new(
            self.nodes.iter().map(|n| n.id.clone()),
            self.edges.iter().map(|e| (e.a.clone(), e.b.clone())),
            self.nodes
                .iter()
                .map(|n| (n.id.clone(), n.color.as_str().to_string())),
        )
        .expect("visual tree is a well-formed coloured graph")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph visual_tree {\n  node [style=filled];\n");
        for n in &self.nodes {
            let (fill, font) = match n.color {
                NodeColor::Black => ("black", "white"),
                NodeColor::White => ("white", "black"),
            };
            let _ = writeln!(
                out,
                "  \"{}\" [label=\"{}\\nA={{{}}}\\nw={}\", fillcolor={}, fontcolor={}];",
                n.id,
                n.id,
                n.a.join(","),
                n.weight,
                fill,
                font
            );
        }
        for e in &self.edges {
            let _ = writeln!(out, "  \"{}\" -- \"{}\" [label=\"{}\"];", e.a, e.b, e.glue);
        }
        out.push_str("}\n");
        out
    }
}

/// Merges neighbouring prime pieces with equal suspension points and reads
/// off tips, cyclic orders, weights and colours.
pub fn build_visual_tree(p: &PrimeTree, f: &RotationSystem) -> Result<VisualTree, DecomposeError> {
    let mut points: Vec<[String; 2]> = Vec::with_capacity(p.nodes.len());
    for n in &p.nodes {
        match suspension_of(&n.piece) {
            Some(s) if s.tips.len() == 3 => points.push(s.suspension_points),
            _ => return Err(DecomposeError::NotCfs(n.id.clone())),
        }
    }
    let k = p.nodes.len();
    let mut comp: Vec<usize> = (0..k).collect();
    fn root(comp: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while comp[r] != r {
            r = comp[r];
        }
        comp[x] = r;
        r
    }
    let mut blue = Vec::new();
    for e in &p.edges {
        let (x, y) = (p.position(&e.a), p.position(&e.b));
        if points[x] == points[y] {
            let (rx, ry) = (root(&mut comp, x), root(&mut comp, y));
            comp[rx.max(ry)] = rx.min(ry);
        } else {
            blue.push((x, y, e.glue.clone()));
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..k {
        groups.entry(root(&mut comp, x)).or_default().push(x);
    }
    let whole = p.union_graph();

    struct Merged {
        piece: SimplicialGraph,
        points: [String; 2],
        tips: Vec<String>,
        members: Vec<String>,
    }
    let mut merged: Vec<(usize, Merged)> = Vec::new();
    for (r, members) in &groups {
        let verts: BTreeSet<String> = members
            .iter()
            .flat_map(|&x| p.nodes[x].piece.labels().iter().cloned())
            .collect();
        let piece = whole.induced_subgraph(&verts).unwrap();
        let s = suspension_of(&piece).ok_or_else(|| {
            DecomposeError::Invariant("merged red component is not a suspension".into())
        })?;
        if s.suspension_points != points[*r] {
            return Err(DecomposeError::Invariant(
                "merged piece changed its suspension points".into(),
            ));
        }
        merged.push((
            *r,
            Merged {
                piece,
                points: s.suspension_points,
                tips: s.tips,
                members: members.iter().map(|&x| p.nodes[x].id.clone()).collect(),
            },
        ));
    }
    merged.sort_by(|x, y| x.1.piece.labels().cmp(y.1.piece.labels()));
    let new_id: BTreeMap<usize, String> = merged
        .iter()
        .enumerate()
        .map(|(i, (r, _))| (*r, format!("v{}", i + 1)))
        .collect();

    let mut edges: Vec<VisualEdge> = blue
        .into_iter()
        .map(|(x, y, glue)| {
            let (a, b) = (
                new_id[&root(&mut comp, x)].clone(),
                new_id[&root(&mut comp, y)].clone(),
            );
            let (a, b) = if rank_of(&a) < rank_of(&b) { (a, b) } else { (b, a) };
            VisualEdge { a, b, glue }
        })
        .collect();
    edges.sort_by_key(|e| (rank_of(&e.a), rank_of(&e.b)));

    let mut nodes = Vec::with_capacity(merged.len());
    for (r, m) in merged {
        let id = new_id[&r].clone();
        let rot = restrict_embedding(f, m.piece.labels());
        let a = cyclic_tip_order(&m.piece, &rot, &m.points, &m.tips, &id)?;
        let degree = edges.iter().filter(|e| e.a == id || e.b == id).count();
        let weight = a.len();
        nodes.push(VisualNode {
            id,
            piece: m.piece,
            suspension_points: m.points,
            a,
            weight,
            degree,
            color: if weight > degree {
                NodeColor::Black
            } else {
                NodeColor::White
            },
            members: m.members,
        });
    }
    let tree = VisualTree { nodes, edges };
    check_visual_tree(&tree)?;
    Ok(tree)
}

/// Tips `a, a'` are consecutive iff the 4-cycle through them and the
/// suspension points does not strongly separate the piece.
fn cyclic_tip_order(
    piece: &SimplicialGraph,
    rot: &RotationSystem,
    points: &[String; 2],
    tips: &[String],
    id: &str,
) -> Result<Vec<String>, DecomposeError> {
    let m = tips.len();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            let sigma = FourCycle::new(
                tips[i].as_str(),
                points[0].as_str(),
                tips[j].as_str(),
                points[1].as_str(),
            );
            if !strongly_separates(piece, rot, &sigma)?.strongly {
                nbrs[i].push(j);
                nbrs[j].push(i);
            }
        }
    }
    if nbrs.iter().any(|ns| ns.len() != 2) {
        return Err(DecomposeError::CyclicOrder(id.to_string()));
    }
    let mut order = vec![0usize];
    let mut prev = 0;
    let mut cur = *nbrs[0].iter().min().unwrap();
    while cur != 0 {
        order.push(cur);
        let next = if nbrs[cur][0] == prev {
            nbrs[cur][1]
        } else {
            nbrs[cur][0]
        };
        prev = cur;
        cur = next;
        if order.len() > m {
            break;
        }
    }
    if order.len() != m {
        return Err(DecomposeError::CyclicOrder(id.to_string()));
    }
    Ok(order.into_iter().map(|i| tips[i].clone()).collect())
}

fn check_visual_tree(t: &VisualTree) -> Result<(), DecomposeError> {
    let bad = |s: String| Err(DecomposeError::Invariant(s));
    for n in &t.nodes {
        if n.weight < 3 || n.weight < n.degree {
            return bad(format!("{} has weight {} and degree {}", n.id, n.weight, n.degree));
        }
        let mut used: BTreeSet<BTreeSet<String>> = BTreeSet::new();
        for e in t.edges.iter().filter(|e| e.a == n.id || e.b == n.id) {
            let pair: BTreeSet<String> = e
                .glue
                .vertex_set()
                .into_iter()
                .filter(|v| n.a.contains(v))
                .collect();
            let ix: Vec<usize> = pair
                .iter()
                .map(|v| n.a.iter().position(|x| x == v).unwrap())
                .collect();
            let m = n.a.len();
            let consecutive =
                ix.len() == 2 && ((ix[0] + 1) % m == ix[1] || (ix[1] + 1) % m == ix[0]);
            if !consecutive {
                return bad(format!("glue {} is not a consecutive tip pair at {}", e.glue, n.id));
            }
            if !used.insert(pair) {
                return bad(format!("two edges at {} use the same tip pair", n.id));
            }
        }
    }
    Ok(())
}

/// Prime decomposition followed by the visual tree, lexicographic order.
pub fn visual_tree(g: &SimplicialGraph, f: &RotationSystem) -> Result<VisualTree, DecomposeError> {
    build_visual_tree(&prime_decomposition(g, f, SplitOrder::Lexicographic)?, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn set(vs: &[&str]) -> BTreeSet<String> {
        vs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn primality() {
        let c = corpus::k23();
        assert!(is_prime(&c.graph, c.rotation.as_ref().unwrap()).unwrap());
        let c = corpus::fig1();
        assert!(!is_prime(&c.graph, c.rotation.as_ref().unwrap()).unwrap());
        let c = corpus::fig3_gamma();
        assert!(!is_prime(&c.graph, c.rotation.as_ref().unwrap()).unwrap());
        let c = corpus::cube();
        assert!(is_prime(&c.graph, c.rotation.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn figure3_prime_tree() {
        let c = corpus::fig3_gamma();
        let t = prime_decomposition(&c.graph, c.rotation.as_ref().unwrap(), SplitOrder::default())
            .unwrap();
        assert_eq!(t.nodes.len(), 4);
        let pieces: BTreeSet<BTreeSet<String>> =
            t.nodes.iter().map(|n| n.piece.vertex_set()).collect();
        let expected: BTreeSet<BTreeSet<String>> = [
            set(&["a1", "a3", "a5", "a6", "a7"]),
            set(&["a1", "a2", "a3", "a6", "a7"]),
            set(&["a3", "a4", "a5", "a6", "a7"]),
            set(&["a1", "a5", "a6", "a7", "a8"]),
        ]
        .into();
        assert_eq!(pieces, expected);
        let glues: BTreeSet<BTreeSet<String>> =
            t.edges.iter().map(|e| e.glue.vertex_set()).collect();
        let expected: BTreeSet<BTreeSet<String>> = [
            set(&["a1", "a3", "a6", "a7"]),
            set(&["a3", "a5", "a6", "a7"]),
            set(&["a1", "a5", "a6", "a7"]),
        ]
        .into();
        assert_eq!(glues, expected);
    }

    #[test]
    fn figure1_prime_tree_has_two_pieces() {
        let c = corpus::fig1();
        let t = prime_decomposition(&c.graph, c.rotation.as_ref().unwrap(), SplitOrder::default())
            .unwrap();
        assert_eq!(t.nodes.len(), 2);
        assert_eq!(t.edges.len(), 1);
        for n in &t.nodes {
            assert!(is_three_point_suspension(&n.piece));
        }
    }

    #[test]
    fn k23_is_a_single_piece() {
        let c = corpus::k23();
        let t = prime_decomposition(&c.graph, c.rotation.as_ref().unwrap(), SplitOrder::default())
            .unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert!(t.edges.is_empty());
    }

    #[test]
    fn figure3_visual_trees() {
        let c = corpus::fig3_gamma();
        let t = visual_tree(&c.graph, c.rotation.as_ref().unwrap()).unwrap();
        assert_eq!(t.nodes.len(), 4);
        let center = t.nodes.iter().find(|n| n.degree == 3).unwrap();
        assert_eq!(center.a, vec!["a1", "a3", "a5"]);
        assert_eq!(center.color, NodeColor::White);
        for n in t.nodes.iter().filter(|n| n.degree == 1) {
            assert_eq!(n.weight, 3);
            assert_eq!(n.color, NodeColor::Black);
        }

        let c = corpus::fig3_gammaprime();
        let t = visual_tree(&c.graph, c.rotation.as_ref().unwrap()).unwrap();
        assert_eq!(t.nodes.len(), 4);
        let center = t.nodes.iter().find(|n| n.degree == 3).unwrap();
        assert_eq!(set(&center.a.iter().map(String::as_str).collect::<Vec<_>>()), set(&["b1", "b3", "b5", "b9"]));
        assert_eq!(center.weight, 4);
        assert!(t.is_all_black());
    }

    #[test]
    fn figure1_visual_tree_is_one_black_vertex() {
        let c = corpus::fig1();
        let t = visual_tree(&c.graph, c.rotation.as_ref().unwrap()).unwrap();
        assert_eq!(t.nodes.len(), 1);
        let v = &t.nodes[0];
        assert_eq!(v.weight, 4);
        assert_eq!(v.degree, 0);
        assert_eq!(v.color, NodeColor::Black);
        assert_eq!(v.a, vec!["a1", "a2", "a3", "a4"]);
        assert_eq!(v.members.len(), 2);
    }

    #[test]
    fn non_cfs_pieces_are_rejected() {
        let c = corpus::fig4_omega();
        let p = prime_decomposition(&c.graph, c.rotation.as_ref().unwrap(), SplitOrder::default())
            .unwrap();
        assert!(matches!(
            build_visual_tree(&p, c.rotation.as_ref().unwrap()),
            Err(DecomposeError::NotCfs(_))
        ));
    }

    #[test]
    fn edge_sides_match_top_level_splits() {
        for (name, c) in corpus::graphs() {
            let Some(f) = &c.rotation else { continue };
            for order in [SplitOrder::Lexicographic, SplitOrder::Seeded(7)] {
                let t = prime_decomposition(&c.graph, f, order).unwrap();
                for (k, e) in t.edges.iter().enumerate() {
                    let (l, r) = t.edge_sides(k);
                    let pair = strong_decomposition(&c.graph, f, &e.glue).unwrap();
                    let got: BTreeSet<BTreeSet<String>> = [l, r].into();
                    let want: BTreeSet<BTreeSet<String>> =
                        [pair.gamma1.vertex_set(), pair.gamma2.vertex_set()].into();
                    assert_eq!(got, want, "{name}");
                }
                for n in &t.nodes {
                    let sub = restrict_embedding(f, n.piece.labels());
                    assert!(is_prime(&n.piece, &sub).unwrap(), "{name}");
                }
            }
        }
    }

    #[test]
    fn dot_export_mentions_colors() {
        let c = corpus::fig3_gamma();
        let dot = visual_tree(&c.graph, c.rotation.as_ref().unwrap()).unwrap().to_dot();
        assert!(dot.contains("fillcolor=white"));
        assert!(dot.contains("fillcolor=black"));
        assert!(dot.contains("A={a1,a3,a5}"));
    }
}
