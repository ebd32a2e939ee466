//! Labelled p/f trees and the flag complexes built from them.
//!
//! A p/f tree is a bipartite tree whose p-vertices carry a label in
//! `{0..n}` and a weight. Each p-vertex `v` with label `i` and weight `w`
//! stands for the complex `S^{n-1} * {w points}` (RACG nerve) or
//! `Δ^{n-1} * {w points}` (RAAG nerve), the sphere/simplex using every label
//! except `i` and the `w` points labelled `i`. Each f-vertex stands for an
//! `n`-sphere (resp. `n`-simplex) with one vertex pair (resp. vertex) per
//! label, glued label-to-label into its p-neighbours. Complexes are flag, so
//! only 1-skeletons are built.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bisim::{bisimilar_mod_colors, symmetric_group, ColorPermutation, ColoredGraph};
use crate::decompose::VisualTree;
use crate::graph::SimplicialGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HighdimError {
    #[error("invalid p/f tree: {0:?}")]
    InvalidTree(Vec<Violation>),
    #[error("no pair chosen for f-vertex `{f}` at p-vertex `{p}`")]
    MissingPair { f: String, p: String },
    #[error("pair {k} at `{p}` is out of range")]
    PairOutOfRange { p: String, k: usize },
    #[error("pair {k} at `{p}` is used by two f-vertices")]
    PairReused { p: String, k: usize },
    #[error("the two trees have different dimensions")]
    DimensionMismatch,
    #[error("visual tree has a single vertex, so its graph is a join")]
    SingleVertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    P,
    F,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PFVertex {
    pub id: String,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<usize>,
}

impl PFVertex {
    pub fn p(id: &str, label: usize, weight: usize) -> Self {
        PFVertex {
            id: id.to_string(),
            kind: Kind::P,
            label: Some(label),
            weight: Some(weight),
        }
    }

    pub fn f(id: &str) -> Self {
        PFVertex {
            id: id.to_string(),
            kind: Kind::F,
            label: None,
            weight: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PFTree {
    pub n: usize,
    pub vertices: Vec<PFVertex>,
    pub edges: Vec<[String; 2]>,
}

impl PFTree {
    pub fn vertex(&self, id: &str) -> Option<&PFVertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    /// Neighbour ids, sorted.
    pub fn neighbors(&self, id: &str) -> Vec<String> {
        let mut out: Vec<String> = self
            .edges
            .iter()
            .filter_map(|[a, b]| {
                if a == id {
                    Some(b.clone())
                } else if b == id {
                    Some(a.clone())
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out
    }

    pub fn valence(&self, id: &str) -> usize {
        self.edges.iter().filter(|[a, b]| a == id || b == id).count()
    }

    pub fn p_vertices(&self) -> impl Iterator<Item = &PFVertex> {
        self.vertices.iter().filter(|v| v.kind == Kind::P)
    }

    pub fn f_vertices(&self) -> impl Iterator<Item = &PFVertex> {
        self.vertices.iter().filter(|v| v.kind == Kind::F)
    }

    fn label(&self, id: &str) -> usize {
        self.vertex(id).and_then(|v| v.label).unwrap_or(0)
    }

    fn weight(&self, id: &str) -> usize {
        self.vertex(id).and_then(|v| v.weight).unwrap_or(0)
    }

    /// Vertex ids in breadth-first order from the first listed vertex,
    /// visiting neighbours in sorted order.
    pub fn bfs_order(&self) -> Vec<String> {
        let Some(start) = self.vertices.first() else {
            return Vec::new();
        };
        let mut seen = BTreeSet::from([start.id.clone()]);
        let mut order = Vec::new();
        let mut queue = VecDeque::from([start.id.clone()]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(&u) {
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
            order.push(u);
        }
        order
    }

    /// The same tree with labels `i` and `j` exchanged on every p-vertex.
    pub fn with_labels_swapped(&self, i: usize, j: usize) -> PFTree {
        let mut t = self.clone();
        for v in &mut t.vertices {
            if let Some(l) = v.label {
                v.label = Some(if l == i {
                    j
                } else if l == j {
                    i
                } else {
                    l
                });
            }
        }
        t
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Structure,
    FValence,
    DistinctLabels,
    Weight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: Rule,
    pub vertices: Vec<String>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PFTreeReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks that `t` is a p/f-bipartite tree, every f-vertex has valence in
/// `[2, n+1]` with distinctly labelled p-neighbours, and every p-vertex has
/// a label in `{0..n}` and weight at least its valence.
pub fn validate_pftree(t: &PFTree) -> PFTreeReport {
    let mut violations = Vec::new();
    let mut push = |rule, vertices: Vec<String>, message: String| {
        violations.push(Violation {
            rule,
            vertices,
            message,
        })
    };
    let ids: BTreeSet<&str> = t.vertices.iter().map(|v| v.id.as_str()).collect();
    if t.vertices.is_empty() {
        push(Rule::Structure, vec![], "tree has no vertices".into());
    }
    if ids.len() != t.vertices.len() {
        push(Rule::Structure, vec![], "duplicate vertex ids".into());
    }
    let mut edge_set = BTreeSet::new();
    for [a, b] in &t.edges {
        let (Some(va), Some(vb)) = (t.vertex(a), t.vertex(b)) else {
            push(
                Rule::Structure,
                vec![a.clone(), b.clone()],
                "edge references an unknown vertex".into(),
            );
            continue;
        };
        if va.kind == vb.kind {
            push(
                Rule::Structure,
                vec![a.clone(), b.clone()],
                "edge joins two vertices of the same kind".into(),
            );
        }
        if !edge_set.insert((a.min(b).clone(), a.max(b).clone())) {
            push(Rule::Structure, vec![a.clone(), b.clone()], "duplicate edge".into());
        }
    }
    if !t.vertices.is_empty()
        && (t.edges.len() + 1 != t.vertices.len() || t.bfs_order().len() != t.vertices.len())
    {
        push(Rule::Structure, vec![], "not a tree".into());
    }
    for v in &t.vertices {
        match v.kind {
            Kind::F => {
                let val = t.valence(&v.id);
                if val < 2 || val > t.n + 1 {
                    push(
                        Rule::FValence,
                        vec![v.id.clone()],
                        format!("f-vertex has valence {val}, allowed 2..={}", t.n + 1),
                    );
                }
                let nbrs = t.neighbors(&v.id);
                let mut by_label: BTreeMap<usize, Vec<String>> = BTreeMap::new();
                for w in &nbrs {
                    if let Some(l) = t.vertex(w).and_then(|x| x.label) {
                        by_label.entry(l).or_default().push(w.clone());
                    }
                }
                for (l, ws) in by_label {
                    if ws.len() > 1 {
                        let mut vs = vec![v.id.clone()];
                        vs.extend(ws);
                        push(
                            Rule::DistinctLabels,
                            vs,
                            format!("several p-neighbours carry label {l}"),
                        );
                    }
                }
            }
            Kind::P => {
                match v.label {
                    Some(l) if l <= t.n => {}
                    Some(l) => push(
                        Rule::Structure,
                        vec![v.id.clone()],
                        format!("label {l} outside 0..={}", t.n),
                    ),
                    None => push(Rule::Structure, vec![v.id.clone()], "missing label".into()),
                }
                let val = t.valence(&v.id);
                match v.weight {
                    Some(w) if w >= val => {}
                    Some(w) => push(
                        Rule::Weight,
                        vec![v.id.clone()],
                        format!("weight {w} below valence {val}"),
                    ),
                    None => push(Rule::Structure, vec![v.id.clone()], "missing weight".into()),
                }
            }
        }
    }
    PFTreeReport {
        valid: violations.is_empty(),
        violations,
    }
}

fn require_valid(t: &PFTree) -> Result<(), HighdimError> {
    let r = validate_pftree(t);
    if r.valid {
        Ok(())
    } else {
        Err(HighdimError::InvalidTree(r.violations))
    }
}

/// Number of distinct consecutive pairs among `w` cyclically ordered tips.
pub fn consecutive_pairs(w: usize) -> usize {
    match w {
        0 | 1 => 0,
        2 => 1,
        w => w,
    }
}

/// For each tree edge `(f, p)`: the index `k` of the consecutive tip pair
/// `(a_k, a_{k+1 mod w})` of `p` that receives the label-`p` pair of `f`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairAssignment {
    pub pairs: BTreeMap<String, BTreeMap<String, usize>>,
}

impl PairAssignment {
    pub fn get(&self, f: &str, p: &str) -> Option<usize> {
        self.pairs.get(f).and_then(|m| m.get(p)).copied()
    }

    pub fn set(&mut self, f: &str, p: &str, k: usize) {
        self.pairs
            .entry(f.to_string())
            .or_default()
            .insert(p.to_string(), k);
    }

    /// At each p-vertex, its f-neighbours in breadth-first order receive the
    /// pairs `0, 1, 2, ...`.
    pub fn breadth_first(t: &PFTree) -> Self {
        let order = t.bfs_order();
        let rank: BTreeMap<&str, usize> = order
            .iter()
            .enumerate()
            .map(|(k, v)| (v.as_str(), k))
            .collect();
        let mut out = PairAssignment::default();
        for p in t.p_vertices() {
            let mut fs = t.neighbors(&p.id);
            fs.sort_by_key(|f| rank.get(f.as_str()).copied().unwrap_or(usize::MAX));
            for (k, f) in fs.iter().enumerate() {
                out.set(f, &p.id, k);
            }
        }
        out
    }

    /// Distinct pairs drawn at random at every p-vertex.
    pub fn seeded(t: &PFTree, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = PairAssignment::default();
        let mut ps: Vec<&PFVertex> = t.p_vertices().collect();
        ps.sort_by(|a, b| a.id.cmp(&b.id));
        for p in ps {
            let fs = t.neighbors(&p.id);
            let mut ks: Vec<usize> = (0..consecutive_pairs(p.weight.unwrap_or(0))).collect();
            ks.shuffle(&mut rng);
            for (f, k) in fs.iter().zip(ks) {
                out.set(f, &p.id, k);
            }
        }
        out
    }

    pub fn validate(&self, t: &PFTree) -> Result<(), HighdimError> {
        for p in t.p_vertices() {
            let avail = consecutive_pairs(t.weight(&p.id));
            let mut used = BTreeSet::new();
            for f in t.neighbors(&p.id) {
                let k = self.get(&f, &p.id).ok_or_else(|| HighdimError::MissingPair {
                    f: f.clone(),
                    p: p.id.clone(),
                })?;
                if k >= avail {
                    return Err(HighdimError::PairOutOfRange {
                        p: p.id.clone(),
                        k,
                    });
                }
                if !used.insert(k) {
                    return Err(HighdimError::PairReused {
                        p: p.id.clone(),
                        k,
                    });
                }
            }
        }
        Ok(())
    }
}

/// A flag complex given by its labelled 1-skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledComplex {
    pub skeleton: SimplicialGraph,
    pub labels: BTreeMap<String, usize>,
    /// Local vertex names (`{tree vertex}.{role}`) identified into each vertex.
    pub origin: BTreeMap<String, Vec<String>>,
}

impl LabeledComplex {
    /// Graph JSON with an extra `labels` object.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(crate::io::graph_file(&self.skeleton, None))
            .expect("graph serialises");
        v["labels"] = serde_json::to_value(&self.labels).expect("labels serialise");
        v
    }
}

/// Local pieces before gluing: named vertices with labels, edges, and
/// identifications.
#[derive(Default)]
struct Pushout {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    labels: Vec<usize>,
    tip: Vec<bool>,
    edges: Vec<(usize, usize)>,
    parent: Vec<usize>,
}

impl Pushout {
    fn add(&mut self, name: String, label: usize, tip: bool) -> usize {
        let k = self.names.len();
        self.index.insert(name.clone(), k);
        self.names.push(name);
        self.labels.push(label);
        self.tip.push(tip);
        self.parent.push(k);
        k
    }

    fn id(&self, name: &str) -> usize {
        self.index[name]
    }

    fn edge(&mut self, a: &str, b: &str) {
        let (a, b) = (self.id(a), self.id(b));
        self.edges.push((a, b));
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        self.parent[x] = r;
        r
    }

    fn glue(&mut self, a: &str, b: &str) {
        let (a, b) = (self.id(a), self.id(b));
        assert_eq!(self.labels[a], self.labels[b], "gluing must match labels");
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Quotient graph; each class is named by its least tip name, or its
    /// least name when it holds no tip.
    fn finish(mut self) -> LabeledComplex {
        let n = self.names.len();
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let r = self.find(x);
            classes.entry(r).or_default().push(x);
        }
        let mut class_name: BTreeMap<usize, String> = BTreeMap::new();
        let mut labels = BTreeMap::new();
        let mut origin = BTreeMap::new();
        for (r, members) in &classes {
            let tips: Vec<&String> = members
                .iter()
                .filter(|&&m| self.tip[m])
                .map(|&m| &self.names[m])
                .collect();
            let name = tips
                .into_iter()
                .min()
                .or_else(|| members.iter().map(|&m| &self.names[m]).min())
                .unwrap()
                .clone();
            let label = self.labels[members[0]];
            debug_assert!(members.iter().all(|&m| self.labels[m] == label));
            let mut locals: Vec<String> = members.iter().map(|&m| self.names[m].clone()).collect();
            locals.sort();
            labels.insert(name.clone(), label);
            origin.insert(name.clone(), locals);
            class_name.insert(*r, name);
        }
        let mut edges = BTreeSet::new();
        for (a, b) in self.edges.clone() {
            let (ra, rb) = (self.find(a), self.find(b));
            assert_ne!(ra, rb, "gluing collapsed an edge");
            let (x, y) = (class_name[&ra].clone(), class_name[&rb].clone());
            edges.insert(if x < y { (x, y) } else { (y, x) });
        }
        let skeleton = SimplicialGraph::new(
            class_name.values().cloned(),
            edges.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
        .expect("pushout is a simple graph");
        LabeledComplex {
            skeleton,
            labels,
            origin,
        }
    }
}

/// The RACG nerve: per p-vertex an octahedral `(n-1)`-sphere joined to its
/// tips, per f-vertex an octahedral `n`-sphere, glued label-to-label with
/// the f-vertex's label-`i` pair landing on the chosen consecutive tip pair.
pub fn build_racg_nerve(t: &PFTree, choice: &PairAssignment) -> Result<LabeledComplex, HighdimError> {
    require_valid(t)?;
    choice.validate(t)?;
    let n = t.n;
    let mut po = Pushout::default();
    for v in &t.vertices {
        match v.kind {
            Kind::P => {
                let (i, w) = (t.label(&v.id), t.weight(&v.id));
                let sphere: Vec<String> = (0..=n)
                    .filter(|&j| j != i)
                    .flat_map(|j| ["+", "-"].map(|s| format!("{}.s{j}{s}", v.id)))
                    .collect();
                for j in (0..=n).filter(|&j| j != i) {
                    po.add(format!("{}.s{j}+", v.id), j, false);
                    po.add(format!("{}.s{j}-", v.id), j, false);
                }
                for k in 0..w {
                    po.add(format!("{}.a{k}", v.id), i, true);
                }
                octahedral_edges(&mut po, &sphere);
                for s in &sphere {
                    for k in 0..w {
                        po.edge(s, &format!("{}.a{k}", v.id));
                    }
                }
            }
            Kind::F => {
                let sphere: Vec<String> = (0..=n)
                    .flat_map(|j| ["+", "-"].map(|s| format!("{}.e{j}{s}", v.id)))
                    .collect();
                for j in 0..=n {
                    po.add(format!("{}.e{j}+", v.id), j, false);
                    po.add(format!("{}.e{j}-", v.id), j, false);
                }
                octahedral_edges(&mut po, &sphere);
            }
        }
    }
    for f in t.f_vertices() {
        for p in t.neighbors(&f.id) {
            let (i, w) = (t.label(&p), t.weight(&p));
            for j in (0..=n).filter(|&j| j != i) {
                po.glue(&format!("{}.e{j}+", f.id), &format!("{p}.s{j}+"));
                po.glue(&format!("{}.e{j}-", f.id), &format!("{p}.s{j}-"));
            }
            let k = choice.get(&f.id, &p).unwrap();
            po.glue(&format!("{}.e{i}+", f.id), &format!("{p}.a{k}"));
            po.glue(&format!("{}.e{i}-", f.id), &format!("{p}.a{}", (k + 1) % w));
        }
    }
    Ok(po.finish())
}

/// Octahedral sphere: names come in `+`/`-` pairs per label; every two
/// vertices with different labels are adjacent.
fn octahedral_edges(po: &mut Pushout, names: &[String]) {
    for (a, x) in names.iter().enumerate() {
        for y in &names[a + 1..] {
            if po.labels[po.id(x)] != po.labels[po.id(y)] {
                po.edge(x, y);
            }
        }
    }
}

/// The RAAG nerve: per p-vertex an `(n-1)`-simplex joined to its tips, per
/// f-vertex an `n`-simplex, glued label-to-label; the label-`i` vertex of
/// each f-neighbour takes a distinct tip.
pub fn build_raag_nerve(t: &PFTree) -> Result<LabeledComplex, HighdimError> {
    require_valid(t)?;
    let n = t.n;
    let mut po = Pushout::default();
    for v in &t.vertices {
        match v.kind {
            Kind::P => {
                let (i, w) = (t.label(&v.id), t.weight(&v.id));
                let simplex: Vec<String> =
                    (0..=n).filter(|&j| j != i).map(|j| format!("{}.d{j}", v.id)).collect();
                for j in (0..=n).filter(|&j| j != i) {
                    po.add(format!("{}.d{j}", v.id), j, false);
                }
                for k in 0..w {
                    po.add(format!("{}.b{k}", v.id), i, true);
                }
                for (a, x) in simplex.iter().enumerate() {
                    for y in &simplex[a + 1..] {
                        po.edge(x, y);
                    }
                    for k in 0..w {
                        po.edge(x, &format!("{}.b{k}", v.id));
                    }
                }
            }
            Kind::F => {
                let simplex: Vec<String> = (0..=n).map(|j| format!("{}.c{j}", v.id)).collect();
                for j in 0..=n {
                    po.add(format!("{}.c{j}", v.id), j, false);
                }
                for (a, x) in simplex.iter().enumerate() {
                    for y in &simplex[a + 1..] {
                        po.edge(x, y);
                    }
                }
            }
        }
    }
    for p in t.p_vertices() {
        let i = t.label(&p.id);
        for (m, f) in t.neighbors(&p.id).iter().enumerate() {
            for j in (0..=n).filter(|&j| j != i) {
                po.glue(&format!("{f}.c{j}"), &format!("{}.d{j}", p.id));
            }
            po.glue(&format!("{f}.c{i}"), &format!("{}.b{m}", p.id));
        }
    }
    Ok(po.finish())
}

fn tree_colored(t: &PFTree, color: impl Fn(&PFVertex) -> String) -> ColoredGraph {
    ColoredGraph::new(
        t.vertices.iter().map(|v| v.id.clone()),
        t.edges.iter().map(|[a, b]| (a.clone(), b.clone())),
        t.vertices.iter().map(|v| (v.id.clone(), color(v))),
    )
    .expect("valid tree is a coloured graph")
}

/// f-vertices `c`, p-vertices with label `i` coloured `b{i}`.
pub fn color_c1(t: &PFTree) -> Result<ColoredGraph, HighdimError> {
    require_valid(t)?;
    Ok(tree_colored(t, |v| match v.kind {
        Kind::F => "c".into(),
        Kind::P => format!("b{}", v.label.unwrap()),
    }))
}

/// Like [`color_c1`] but a p-vertex whose weight equals its valence is
/// coloured `w{i}`.
pub fn color_c2(t: &PFTree) -> Result<ColoredGraph, HighdimError> {
    require_valid(t)?;
    Ok(tree_colored(t, |v| match v.kind {
        Kind::F => "c".into(),
        Kind::P => {
            let i = v.label.unwrap();
            if v.weight.unwrap() > t.valence(&v.id) {
                format!("b{i}")
            } else {
                format!("w{i}")
            }
        }
    }))
}

pub fn b_colors(n: usize) -> Vec<String> {
    (0..=n).map(|i| format!("b{i}")).collect()
}

pub fn w_colors(n: usize) -> Vec<String> {
    (0..=n).map(|i| format!("w{i}")).collect()
}

/// Which permutations of the `2n+2` p-colours `qi_highdim` may use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PermutationScope {
    /// Permute the `b` colours among themselves and the `w` colours among
    /// themselves.
    #[default]
    ClassPreserving,
    /// Every permutation of all `2n+2` colours.
    Full,
}

impl PermutationScope {
    pub fn permutations(self, n: usize) -> Vec<ColorPermutation> {
        let (b, w) = (b_colors(n), w_colors(n));
        match self {
            PermutationScope::Full => {
                let all: Vec<String> = b.into_iter().chain(w).collect();
                symmetric_group(&all)
            }
            PermutationScope::ClassPreserving => {
                let mut out = Vec::new();
                for pb in symmetric_group(&b) {
                    for pw in symmetric_group(&w) {
                        let mut m = pb.as_map().clone();
                        m.extend(pw.as_map().clone());
                        out.push(ColorPermutation::new(m).unwrap());
                    }
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighdimQi {
    pub permutation: ColorPermutation,
    /// The permutation sends some `b` colour to a `w` colour or back.
    pub mixes_classes: bool,
}

fn mixes(pi: &ColorPermutation) -> bool {
    pi.as_map()
        .iter()
        .any(|(a, b)| a.starts_with('b') != b.starts_with('b'))
}

/// Searches for a permutation of the p-colours making the `c2` colourings
/// bisimilar.
pub fn qi_highdim(
    t1: &PFTree,
    t2: &PFTree,
    scope: PermutationScope,
) -> Result<Option<HighdimQi>, HighdimError> {
    if t1.n != t2.n {
        return Err(HighdimError::DimensionMismatch);
    }
    let (g1, g2) = (color_c2(t1)?, color_c2(t2)?);
    Ok(
        bisimilar_mod_colors(&g1, &g2, &scope.permutations(t1.n)).map(|pi| HighdimQi {
            mixes_classes: mixes(&pi),
            permutation: pi,
        }),
    )
}

/// RAAG nerve of `t_l` against RACG nerve of `t_k`: impossible when some
/// p-vertex of `t_k` is coloured `w{i}`, otherwise a permutation of the
/// `b` colours making `c1(t_l)` and `c2(t_k)` bisimilar.
pub fn qi_raag_vs_racg(
    t_l: &PFTree,
    t_k: &PFTree,
) -> Result<Option<ColorPermutation>, HighdimError> {
    if t_l.n != t_k.n {
        return Err(HighdimError::DimensionMismatch);
    }
    let k2 = color_c2(t_k)?;
    if (0..k2.vertex_count()).any(|v| k2.color(v).starts_with('w')) {
        return Ok(None);
    }
    let l1 = color_c1(t_l)?;
    Ok(bisimilar_mod_colors(&l1, &k2, &symmetric_group(&b_colors(t_l.n))))
}

/// Reads a visual tree as a p/f tree with `n = 1`: a p-vertex per tree
/// vertex (same weight), an f-vertex subdividing every edge, and labels a
/// proper 2-colouring with label 0 on a vertex of maximal degree (least id
/// on ties).
pub fn pftree_of_visual(v: &VisualTree) -> Result<PFTree, HighdimError> {
    if v.nodes.len() < 2 {
        return Err(HighdimError::SingleVertex);
    }
    let root = v
        .nodes
        .iter()
        .max_by(|a, b| a.degree.cmp(&b.degree).then_with(|| b.id.cmp(&a.id)))
        .unwrap();
    let mut label: BTreeMap<&str, usize> = BTreeMap::from([(root.id.as_str(), 0)]);
    let mut queue = VecDeque::from([root.id.as_str()]);
    while let Some(u) = queue.pop_front() {
        for e in &v.edges {
            let w = if e.a == u {
                e.b.as_str()
            } else if e.b == u {
                e.a.as_str()
            } else {
                continue;
            };
            if !label.contains_key(w) {
                label.insert(w, 1 - label[u]);
                queue.push_back(w);
            }
        }
    }
    let mut vertices: Vec<PFVertex> = v
        .nodes
        .iter()
        .map(|n| PFVertex::p(&n.id, label[n.id.as_str()], n.weight))
        .collect();
    let mut edges = Vec::new();
    for (k, e) in v.edges.iter().enumerate() {
        let f = format!("f{}", k + 1);
        vertices.push(PFVertex::f(&f));
        edges.push([e.a.clone(), f.clone()]);
        edges.push([f, e.b.clone()]);
    }
    let t = PFTree { n: 1, vertices, edges };
    debug_assert!(validate_pftree(&t).valid);
    Ok(t)
}
