//! Combinatorial plane embeddings as rotation systems.
//!
//! A rotation system lists, for each vertex, its neighbours in
//! counterclockwise order. Faces are traced with the rule: after arriving at
//! `v` along the dart `u -> v`, leave along `v -> w` where `w` is the
//! neighbour *preceding* `u` in the counterclockwise list at `v`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{FourCycle, GraphError, SimplicialGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("rotation is missing vertex `{0}`")]
    MissingVertex(String),
    #[error("rotation at `{0}` is not a permutation of its neighbours")]
    RotationMismatch(String),
    #[error("rotation mentions unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("components of the complement of {0} get inconsistent sides")]
    InconsistentSides(String),
    #[error("{0} does not strongly separate the graph")]
    NotStronglySeparating(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Counterclockwise neighbour order at every vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RotationSystem {
    rotation: BTreeMap<String, Vec<String>>,
}

impl RotationSystem {
    pub fn new(rotation: BTreeMap<String, Vec<String>>) -> Self {
        RotationSystem { rotation }
    }

    pub fn get(&self, v: &str) -> Option<&[String]> {
        self.rotation.get(v).map(Vec::as_slice)
    }

    pub fn as_map(&self) -> &BTreeMap<String, Vec<String>> {
        &self.rotation
    }

    pub fn len(&self) -> usize {
        self.rotation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rotation.is_empty()
    }

    /// Every list rotated to start at its least label; two systems describe
    /// the same embedding iff their normal forms are equal.
    pub fn normalized(&self) -> RotationSystem {
        let rotation = self
            .rotation
            .iter()
            .map(|(v, ns)| {
                let mut ns = ns.clone();
                if let Some(k) = (0..ns.len()).min_by(|&a, &b| ns[a].cmp(&ns[b])) {
                    ns.rotate_left(k);
                }
                (v.clone(), ns)
            })
            .collect();
        RotationSystem { rotation }
    }

    /// The mirror image: every cyclic order reversed.
    pub fn mirrored(&self) -> RotationSystem {
        let rotation = self
            .rotation
            .iter()
            .map(|(v, ns)| (v.clone(), ns.iter().rev().cloned().collect()))
            .collect();
        RotationSystem { rotation }
    }

    /// Index form against `g`: `rot[i]` lists neighbour indices of `i`.
    pub fn to_indices(&self, g: &SimplicialGraph) -> Result<Vec<Vec<usize>>, EmbedError> {
        for v in self.rotation.keys() {
            if !g.contains(v) {
                return Err(EmbedError::UnknownVertex(v.clone()));
            }
        }
        let mut out = Vec::with_capacity(g.vertex_count());
        for i in 0..g.vertex_count() {
            let label = g.label(i);
            let list = match self.rotation.get(label) {
                Some(list) => list,
                None if g.degree(i) == 0 => {
                    out.push(Vec::new());
                    continue;
                }
                None => return Err(EmbedError::MissingVertex(label.to_string())),
            };
            let mut idx = Vec::with_capacity(list.len());
            for w in list {
                let j = g
                    .index_of(w)
                    .ok_or_else(|| EmbedError::UnknownVertex(w.clone()))?;
                idx.push(j);
            }
            let set: BTreeSet<usize> = idx.iter().copied().collect();
            if set.len() != idx.len() || &set != g.neighbors(i) {
                return Err(EmbedError::RotationMismatch(label.to_string()));
            }
            out.push(idx);
        }
        Ok(out)
    }

    fn from_indices(g: &SimplicialGraph, rot: &[Vec<usize>]) -> Self {
        let rotation = rot
            .iter()
            .enumerate()
            .map(|(i, ns)| {
                (
                    g.label(i).to_string(),
                    ns.iter().map(|&j| g.label(j).to_string()).collect(),
                )
            })
            .collect();
        RotationSystem { rotation }
    }
}

/// Result of tracing the faces of a rotation system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub planar: bool,
    pub vertices: usize,
    pub edges: usize,
    /// Each face as its cyclic list of darts.
    pub faces: Vec<Vec<(String, String)>>,
}

impl EmbeddingReport {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }
}

/// Dart orbits of the face permutation, as index-pair lists.
fn trace_faces(rot: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let pos: Vec<HashMap<usize, usize>> = rot
        .iter()
        .map(|ns| ns.iter().enumerate().map(|(k, &w)| (w, k)).collect())
        .collect();
    let mut used: HashMap<(usize, usize), bool> = HashMap::new();
    let mut faces = Vec::new();
    for u in 0..rot.len() {
        for &v in &rot[u] {
            if used.contains_key(&(u, v)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (u, v);
            while !used.contains_key(&(a, b)) {
                used.insert((a, b), true);
                face.push((a, b));
                let d = rot[b].len();
                let k = pos[b][&a];
                let w = rot[b][(k + d - 1) % d];
                a = b;
                b = w;
            }
            faces.push(face);
        }
    }
    faces
}

/// Traces all faces and checks Euler's formula on every component
/// (an isolated vertex counts as one face).
pub fn validate_embedding(
    g: &SimplicialGraph,
    f: &RotationSystem,
) -> Result<EmbeddingReport, EmbedError> {
    let rot = f.to_indices(g)?;
    Ok(report_from_indices(g, &rot))
}

fn report_from_indices(g: &SimplicialGraph, rot: &[Vec<usize>]) -> EmbeddingReport {
    let faces = trace_faces(rot);
    let isolated = (0..g.vertex_count()).filter(|&i| g.degree(i) == 0).count();
    let components = g.components().len() as i64;
    let euler =
        g.vertex_count() as i64 - g.edge_count() as i64 + (faces.len() + isolated) as i64;
    EmbeddingReport {
        planar: euler == 2 * components,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        faces: faces
            .iter()
            .map(|face| {
                face.iter()
                    .map(|&(a, b)| (g.label(a).to_string(), g.label(b).to_string()))
                    .collect()
            })
            .collect(),
    }
}

fn is_genus_zero(g: &SimplicialGraph, rot: &[Vec<usize>]) -> bool {
    let faces = trace_faces(rot).len();
    let isolated = (0..g.vertex_count()).filter(|&i| g.degree(i) == 0).count();
    let components = g.components().len() as i64;
    g.vertex_count() as i64 - g.edge_count() as i64 + (faces + isolated) as i64 == 2 * components
}

/// A planar rotation system for `g`, or `None` if `g` is not planar.
pub fn find_embedding(g: &SimplicialGraph) -> Option<RotationSystem> {
    embed(g, None)
}

/// Like [`find_embedding`] but resolves every free choice of the
/// path-addition search (fragment, face, block order, mirror image) from
/// `seed`, which usually yields a different embedding.
pub fn find_embedding_seeded(g: &SimplicialGraph, seed: u64) -> Option<RotationSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    embed(g, Some(&mut rng))
}

fn embed(g: &SimplicialGraph, mut rng: Option<&mut ChaCha8Rng>) -> Option<RotationSystem> {
    let n = g.vertex_count();
    let mut per_vertex: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for block in biconnected_blocks(g) {
        let local = if block.len() == 1 {
            let (a, b) = block[0];
            let mut m = HashMap::new();
            m.insert(a, vec![b]);
            m.insert(b, vec![a]);
            m
        } else {
            embed_block(&block, rng.as_deref_mut())?
        };
        let mut keys: Vec<_> = local.keys().copied().collect();
        keys.sort_unstable();
        for v in keys {
            per_vertex[v].push(local[&v].clone());
        }
    }
    let mut rot = Vec::with_capacity(n);
    for mut lists in per_vertex {
        if let Some(r) = rng.as_deref_mut() {
            lists.shuffle(r);
        }
        rot.push(lists.concat());
    }
    if let Some(r) = rng {
        if r.gen_bool(0.5) {
            for ns in &mut rot {
                ns.reverse();
            }
        }
    }
    debug_assert!(is_genus_zero(g, &rot));
    Some(RotationSystem::from_indices(g, &rot))
}

/// Edge sets of the biconnected blocks (bridges are one-edge blocks).
fn biconnected_blocks(g: &SimplicialGraph) -> Vec<Vec<(usize, usize)>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, neighbour iterator position)
        let mut dfs: Vec<(usize, usize, Vec<usize>, usize)> =
            vec![(root, usize::MAX, g.neighbors(root).iter().copied().collect(), 0)];
        while let Some(top) = dfs.last_mut() {
            let (u, parent) = (top.0, top.1);
            if top.3 < top.2.len() {
                let w = top.2[top.3];
                top.3 += 1;
                if disc[w] == usize::MAX {
                    stack.push((u, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    dfs.push((w, u, g.neighbors(w).iter().copied().collect(), 0));
                } else if w != parent && disc[w] < disc[u] {
                    stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                dfs.pop();
                if let Some(p) = dfs.last() {
                    let p = p.0;
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push(e);
                            if e == (p, u) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Path-addition planarity test (Demoucron, Malgrange, Pertuiset) on one
/// biconnected block. Faces are kept as consistently oriented vertex cycles.
fn embed_block(
    block: &[(usize, usize)],
    mut rng: Option<&mut ChaCha8Rng>,
) -> Option<HashMap<usize, Vec<usize>>> {
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(a, b) in block {
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }
    let edge_total = block.len();

    let cycle = find_cycle(&adj);
    let mut in_h: BTreeSet<usize> = cycle.iter().copied().collect();
    let mut h_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for k in 0..cycle.len() {
        h_edges.insert(ordered(cycle[k], cycle[(k + 1) % cycle.len()]));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    while h_edges.len() < edge_total {
        let fragments = fragments(&adj, &in_h, &h_edges);
        let mut admissible: Vec<Vec<usize>> = Vec::with_capacity(fragments.len());
        for frag in &fragments {
            let ok: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, face)| frag.attachments.iter().all(|a| face.contains(a)))
                .map(|(k, _)| k)
                .collect();
            if ok.is_empty() {
                return None;
            }
            admissible.push(ok);
        }
        let forced = (0..fragments.len()).find(|&k| admissible[k].len() == 1);
        let (fk, face_idx) = match (forced, rng.as_deref_mut()) {
            (Some(k), _) => (k, admissible[k][0]),
            (None, Some(r)) => {
                let k = r.gen_range(0..fragments.len());
                (k, *admissible[k].choose(r).unwrap())
            }
            (None, None) => (0, admissible[0][0]),
        };
        let path = fragment_path(&adj, &in_h, &fragments[fk]);
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            h_edges.insert(ordered(w[0], w[1]));
        }
        in_h.extend(path.iter().copied());
    }

    // For consecutive u, v, w on a face the rotation at v has succ(w) = u.
    let mut succ: HashMap<usize, HashMap<usize, usize>> = HashMap::new();
    for face in &faces {
        let k = face.len();
        for i in 0..k {
            let (u, v, w) = (face[i], face[(i + 1) % k], face[(i + 2) % k]);
            succ.entry(v).or_default().insert(w, u);
        }
    }
    let mut out = HashMap::new();
    for (&v, ns) in &adj {
        let start = *ns.iter().next().unwrap();
        let mut list = vec![start];
        let mut cur = succ[&v][&start];
        while cur != start {
            list.push(cur);
            cur = succ[&v][&cur];
        }
        if list.len() != ns.len() {
            return None;
        }
        out.insert(v, list);
    }
    Some(out)
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A cycle through the least edge: a shortest path around it.
fn find_cycle(adj: &BTreeMap<usize, BTreeSet<usize>>) -> Vec<usize> {
    let a = *adj.keys().next().unwrap();
    let b = *adj[&a].iter().next().unwrap();
    let mut prev: HashMap<usize, usize> = HashMap::from([(a, a)]);
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[&u] {
            if (u == a && w == b) || prev.contains_key(&w) {
                continue;
            }
            prev.insert(w, u);
            if w == b {
                let mut cyc = vec![b];
                let mut x = b;
                while x != a {
                    x = prev[&x];
                    cyc.push(x);
                }
                return cyc;
            }
            queue.push_back(w);
        }
    }
    unreachable!("every edge of a biconnected block lies on a cycle")
}

struct Fragment {
    attachments: BTreeSet<usize>,
    /// Interior vertices; empty for a chord.
    interior: BTreeSet<usize>,
    chord: Option<(usize, usize)>,
}

fn fragments(
    adj: &BTreeMap<usize, BTreeSet<usize>>,
    in_h: &BTreeSet<usize>,
    h_edges: &BTreeSet<(usize, usize)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (&u, ns) in adj {
        if !in_h.contains(&u) {
            continue;
        }
        for &w in ns.range(u + 1..) {
            if in_h.contains(&w) && !h_edges.contains(&(u, w)) {
                out.push(Fragment {
                    attachments: [u, w].into_iter().collect(),
                    interior: BTreeSet::new(),
                    chord: Some((u, w)),
                });
            }
        }
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &start in adj.keys() {
        if in_h.contains(&start) || seen.contains(&start) {
            continue;
        }
        let mut interior = BTreeSet::from([start]);
        let mut attachments = BTreeSet::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(u) = stack.pop() {
            for &w in &adj[&u] {
                if in_h.contains(&w) {
                    attachments.insert(w);
                } else if seen.insert(w) {
                    interior.insert(w);
                    stack.push(w);
                }
            }
        }
        out.push(Fragment {
            attachments,
            interior,
            chord: None,
        });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(
    adj: &BTreeMap<usize, BTreeSet<usize>>,
    in_h: &BTreeSet<usize>,
    frag: &Fragment,
) -> Vec<usize> {
    if let Some((a, b)) = frag.chord {
        return vec![a, b];
    }
    let mut att = frag.attachments.iter();
    let a = *att.next().unwrap();
    let b = *att.next().expect("fragment of a biconnected block has two attachments");
    let starts: Vec<usize> = adj[&a]
        .iter()
        .copied()
        .filter(|w| frag.interior.contains(w))
        .collect();
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = std::collections::VecDeque::new();
    for &s in &starts {
        prev.insert(s, s);
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        if adj[&u].contains(&b) {
            let mut path = vec![b, u];
            let mut x = u;
            while prev[&x] != x {
                x = prev[&x];
                path.push(x);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &w in &adj[&u] {
            if !in_h.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment interior is connected and touches both attachments")
}

/// Splits an oriented face cycle along a path between two of its vertices.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = face.len();
    let (a, b) = (path[0], *path.last().unwrap());
    let i = face.iter().position(|&x| x == a).unwrap();
    let j = face.iter().position(|&x| x == b).unwrap();
    let inner = &path[1..path.len() - 1];
    let arc = |from: usize, to: usize| {
        let mut out = vec![face[from]];
        let mut x = from;
        while x != to {
            x = (x + 1) % k;
            out.push(face[x]);
        }
        out
    };
    let mut f1 = arc(i, j);
    f1.extend(inner.iter().rev());
    let mut f2 = arc(j, i);
    f2.extend(inner.iter());
    (f1, f2)
}

/// Sides of `Γ − σ` relative to an embedded induced 4-cycle σ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideReport {
    pub sigma: FourCycle,
    pub side_left: Vec<String>,
    pub side_right: Vec<String>,
    pub strongly: bool,
}

/// Decides whether σ strongly separates `g` with respect to `f`.
///
/// Walk σ as `v0 v1 v2 v3`. At `vi` the neighbours met strictly between the
/// dart to `v(i+1)` and the dart to `v(i-1)`, going counterclockwise, lie on
/// one side; all other non-σ neighbours lie on the other. Every component of
/// `g − σ` inherits the side of its attachment darts. The reported sides are
/// sorted, the lexicographically smaller one first.
pub fn strongly_separates(
    g: &SimplicialGraph,
    f: &RotationSystem,
    sigma: &FourCycle,
) -> Result<SideReport, EmbedError> {
    if !sigma.is_induced_in(g) {
        return Err(GraphError::NotInducedCycle(sigma.to_string()).into());
    }
    let rot = f.to_indices(g)?;
    let cyc: Vec<usize> = sigma
        .cycle()
        .iter()
        .map(|v| g.index_of(v).unwrap())
        .collect();
    // side[w] for each non-σ neighbour dart of a σ vertex: true = left
    let mut dart_side: Vec<(usize, bool)> = Vec::new();
    for i in 0..4 {
        let v = cyc[i];
        let next = cyc[(i + 1) % 4];
        let prev = cyc[(i + 3) % 4];
        let list = &rot[v];
        let d = list.len();
        let start = list.iter().position(|&w| w == next).unwrap();
        let mut k = (start + 1) % d;
        let mut left = true;
        while k != start {
            let w = list[k];
            if w == prev {
                left = false;
            } else if !cyc.contains(&w) {
                dart_side.push((w, left));
            }
            k = (k + 1) % d;
        }
    }
    let comps = g.components_avoiding(&cyc);
    let mut comp_of = vec![usize::MAX; g.vertex_count()];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = c;
        }
    }
    let mut comp_side: Vec<Option<bool>> = vec![None; comps.len()];
    for (w, side) in dart_side {
        let c = comp_of[w];
        match comp_side[c] {
            None => comp_side[c] = Some(side),
            Some(s) if s != side => {
                return Err(EmbedError::InconsistentSides(sigma.to_string()));
            }
            _ => {}
        }
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (c, comp) in comps.iter().enumerate() {
        let names = comp.iter().map(|&v| g.label(v).to_string());
        match comp_side[c] {
            Some(true) => left.extend(names),
            Some(false) => right.extend(names),
            None => return Err(EmbedError::InconsistentSides(sigma.to_string())),
        }
    }
    left.sort();
    right.sort();
    if right < left {
        std::mem::swap(&mut left, &mut right);
    }
    let strongly = !left.is_empty() && !right.is_empty();
    Ok(SideReport {
        sigma: sigma.clone(),
        side_left: left,
        side_right: right,
        strongly,
    })
}

/// The two halves of a strong visual decomposition along σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionPair {
    pub gamma1: SimplicialGraph,
    pub gamma2: SimplicialGraph,
    pub sigma: FourCycle,
}

pub fn strong_decomposition(
    g: &SimplicialGraph,
    f: &RotationSystem,
    sigma: &FourCycle,
) -> Result<DecompositionPair, EmbedError> {
    let report = strongly_separates(g, f, sigma)?;
    if !report.strongly {
        return Err(EmbedError::NotStronglySeparating(sigma.to_string()));
    }
    let side = |s: &[String]| -> Result<SimplicialGraph, EmbedError> {
        let verts = s.iter().chain(sigma.sorted_vertices().iter());
        Ok(g.induced_subgraph(verts)?)
    };
    let pair = DecompositionPair {
        gamma1: side(&report.side_left)?,
        gamma2: side(&report.side_right)?,
        sigma: sigma.clone(),
    };
    #[cfg(debug_assertions)]
    check_heredity(g, f, &pair);
    Ok(pair)
}

/// Both halves of a split of a graph satisfying the standing assumptions
/// satisfy them again, and inherit the CFS property.
#[cfg(debug_assertions)]
fn check_heredity(g: &SimplicialGraph, f: &RotationSystem, pair: &DecompositionPair) {
    use crate::standing::validate_standing;
    if !validate_standing(g, Some(f)).passes() {
        return;
    }
    let g_cfs = crate::cfs::is_cfs(g).cfs;
    for part in [&pair.gamma1, &pair.gamma2] {
        let sub = restrict_embedding(f, part.labels());
        debug_assert!(
            validate_standing(part, Some(&sub)).passes(),
            "split half violates the standing assumptions"
        );
        if g_cfs {
            debug_assert!(crate::cfs::is_cfs(part).cfs, "split half lost CFS");
        }
    }
}

/// Drops every vertex outside `keep` and every dart leaving `keep`,
/// preserving cyclic order.
pub fn restrict_embedding<S: AsRef<str>>(f: &RotationSystem, keep: &[S]) -> RotationSystem {
    let keep: BTreeSet<&str> = keep.iter().map(AsRef::as_ref).collect();
    let rotation = f
        .rotation
        .iter()
        .filter(|(v, _)| keep.contains(v.as_str()))
        .map(|(v, ns)| {
            (
                v.clone(),
                ns.iter()
                    .filter(|w| keep.contains(w.as_str()))
                    .cloned()
                    .collect(),
            )
        })
        .collect();
    RotationSystem { rotation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::enumerate_induced_four_cycles;
    use proptest::prelude::*;

    /// Exhaustive search over all rotation systems; `None` if too many.
    fn brute_force_planar(g: &SimplicialGraph, limit: usize) -> Option<bool> {
        let n = g.vertex_count();
        let mut total: usize = 1;
        for i in 0..n {
            let d = g.degree(i);
            let orders = (1..d.max(1)).product::<usize>();
            total = total.checked_mul(orders)?;
            if total > limit {
                return None;
            }
        }
        // Per vertex: all cyclic orders = permutations fixing the first neighbour.
        let options: Vec<Vec<Vec<usize>>> = (0..n)
            .map(|i| {
                let ns: Vec<usize> = g.neighbors(i).iter().copied().collect();
                if ns.len() <= 2 {
                    return vec![ns];
                }
                let first = ns[0];
                itertools::Itertools::permutations(ns[1..].iter().copied(), ns.len() - 1)
                    .map(|p| std::iter::once(first).chain(p).collect())
                    .collect()
            })
            .collect();
        let mut choice = vec![0usize; n];
        loop {
            let rot: Vec<Vec<usize>> = (0..n).map(|i| options[i][choice[i]].clone()).collect();
            if is_genus_zero(g, &rot) {
                return Some(true);
            }
            let mut k = 0;
            loop {
                if k == n {
                    return Some(false);
                }
                choice[k] += 1;
                if choice[k] < options[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    fn complete(n: usize) -> SimplicialGraph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((format!("k{i}"), format!("k{j}")));
            }
        }
        SimplicialGraph::from_edges(&e).unwrap()
    }

    fn k33() -> SimplicialGraph {
        let mut e = Vec::new();
        for a in ["x1", "x2", "x3"] {
            for b in ["y1", "y2", "y3"] {
                e.push((a, b));
            }
        }
        SimplicialGraph::from_edges(&e).unwrap()
    }

    #[test]
    fn figure1_rotation_has_four_faces() {
        let c = corpus::fig1();
        let r = validate_embedding(&c.graph, c.rotation.as_ref().unwrap()).unwrap();
        assert!(r.planar);
        assert_eq!(r.face_count(), 4);
    }

    #[test]
    fn square_has_two_faces() {
        let g = SimplicialGraph::from_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
            .unwrap();
        let f = find_embedding(&g).unwrap();
        let r = validate_embedding(&g, &f).unwrap();
        assert!(r.planar);
        assert_eq!(r.face_count(), 2);
    }

    #[test]
    fn any_k5_rotation_fails() {
        let g = complete(5);
        let rot: BTreeMap<String, Vec<String>> = g
            .labels()
            .iter()
            .map(|v| {
                (
                    v.clone(),
                    g.neighbor_labels(v)
                        .unwrap()
                        .into_iter()
                        .map(String::from)
                        .collect(),
                )
            })
            .collect();
        assert!(!validate_embedding(&g, &RotationSystem::new(rot)).unwrap().planar);
        assert_eq!(brute_force_planar(&g, 10_000), Some(false));
        assert!(find_embedding(&g).is_none());
    }

    #[test]
    fn k33_is_not_planar() {
        assert!(find_embedding(&k33()).is_none());
        assert_eq!(brute_force_planar(&k33(), 10_000), Some(false));
    }

    #[test]
    fn path_embeds_with_one_face() {
        let g = SimplicialGraph::from_edges(&[("a", "b"), ("b", "c")]).unwrap();
        let r = validate_embedding(&g, &find_embedding(&g).unwrap()).unwrap();
        assert!(r.planar);
        assert_eq!(r.face_count(), 1);
    }

    #[test]
    fn corpus_rotations_are_planar_and_found() {
        for (name, c) in corpus::graphs() {
            if let Some(f) = &c.rotation {
                assert!(validate_embedding(&c.graph, f).unwrap().planar, "{name}");
            }
            if name != "fig6" {
                let f = find_embedding(&c.graph).unwrap_or_else(|| panic!("{name}"));
                assert!(validate_embedding(&c.graph, &f).unwrap().planar, "{name}");
                for seed in 0..5 {
                    let f = find_embedding_seeded(&c.graph, seed).unwrap();
                    assert!(validate_embedding(&c.graph, &f).unwrap().planar, "{name}");
                }
            }
        }
    }

    #[test]
    fn rotation_mismatch_is_an_error() {
        let c = corpus::fig1();
        let mut map = c.rotation.clone().unwrap().as_map().clone();
        map.insert("a1".into(), vec!["b1".into()]);
        assert_eq!(
            validate_embedding(&c.graph, &RotationSystem::new(map)),
            Err(EmbedError::RotationMismatch("a1".into()))
        );
    }

    fn cyc(a: &str, b: &str, c: &str, d: &str) -> FourCycle {
        FourCycle::new(a, b, c, d)
    }

    #[test]
    fn figure1_separation() {
        let c = corpus::fig1();
        let f = c.rotation.as_ref().unwrap();
        let adjacent = strongly_separates(&c.graph, f, &cyc("a2", "b1", "a3", "b2")).unwrap();
        assert!(!adjacent.strongly);
        assert!(c.graph.components_avoiding(&[1, 2, 4, 5]).len() >= 2);
        let opposite = strongly_separates(&c.graph, f, &cyc("a1", "b1", "a3", "b2")).unwrap();
        assert!(opposite.strongly);
        assert_eq!(opposite.side_left, vec!["a2"]);
        assert_eq!(opposite.side_right, vec!["a4"]);
        let pair = strong_decomposition(&c.graph, f, &cyc("a1", "b1", "a3", "b2")).unwrap();
        for part in [&pair.gamma1, &pair.gamma2] {
            assert_eq!(part.vertex_count(), 5);
            assert!(crate::graph::suspension_of(part).is_some());
        }
    }

    #[test]
    fn figure2_adjacent_pair_is_not_strongly_separating() {
        let c = corpus::fig2();
        let f = c.rotation.as_ref().unwrap();
        let r = strongly_separates(&c.graph, f, &cyc("a", "u1", "b", "u2")).unwrap();
        assert!(!r.strongly);
    }

    #[test]
    fn figure3_splits() {
        let c = corpus::fig3_gamma();
        let f = c.rotation.as_ref().unwrap();
        let pair = strong_decomposition(&c.graph, f, &cyc("a1", "a6", "a3", "a7")).unwrap();
        let small: BTreeSet<String> = ["a1", "a2", "a3", "a6", "a7"].map(String::from).into();
        assert!(pair.gamma1.vertex_set() == small || pair.gamma2.vertex_set() == small);
        let pair = strong_decomposition(&c.graph, f, &cyc("a1", "a6", "a5", "a7")).unwrap();
        let (x, y) = (pair.gamma1.vertex_set(), pair.gamma2.vertex_set());
        let (with_a8, other) = if x.contains("a8") { (x, y) } else { (y, x) };
        assert!(!with_a8.contains("a2"));
        for v in ["a2", "a3", "a4"] {
            assert!(other.contains(v));
        }
    }

    #[test]
    fn restriction() {
        let c = corpus::fig3_gamma();
        let f = c.rotation.as_ref().unwrap();
        assert_eq!(&restrict_embedding(f, c.graph.labels()), f);
        let keep = ["a1", "a3", "a5", "a6", "a7"];
        let sub = c.graph.induced_subgraph(keep).unwrap();
        assert!(validate_embedding(&sub, &restrict_embedding(f, &keep)).unwrap().planar);
        let c = corpus::fig1();
        let f = c.rotation.as_ref().unwrap();
        let keep = ["a1", "a2", "a3", "b1", "b2"];
        let sub = c.graph.induced_subgraph(keep).unwrap();
        assert!(validate_embedding(&sub, &restrict_embedding(f, &keep)).unwrap().planar);
    }

    /// A side is non-empty iff it contains a vertex: the σ-chords that could
    /// otherwise occupy a region would close a triangle.
    #[test]
    fn corpus_separation_matches_disconnection() {
        for (name, c) in corpus::graphs() {
            let Some(f) = &c.rotation else { continue };
            if !c.graph.is_triangle_free() {
                continue;
            }
            for s in enumerate_induced_four_cycles(&c.graph) {
                let r = strongly_separates(&c.graph, f, &s).unwrap();
                let ix: Vec<usize> = s
                    .cycle()
                    .iter()
                    .map(|v| c.graph.index_of(v).unwrap())
                    .collect();
                if r.strongly {
                    assert!(c.graph.components_avoiding(&ix).len() >= 2, "{name} {s}");
                }
                let mut all: Vec<String> =
                    r.side_left.iter().chain(&r.side_right).cloned().collect();
                all.sort();
                let expected: Vec<String> = c
                    .graph
                    .labels()
                    .iter()
                    .filter(|v| !s.contains(v))
                    .cloned()
                    .collect();
                assert_eq!(all, expected);
            }
        }
    }

    fn small_graph(max_n: usize, max_deg: usize) -> impl Strategy<Value = SimplicialGraph> {
        (2usize..=max_n)
            .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
            .prop_map(move |(n, bits)| {
                let mut deg = vec![0; n];
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if bits[k] && deg[i] < max_deg && deg[j] < max_deg {
                            deg[i] += 1;
                            deg[j] += 1;
                            edges.push((format!("v{i}"), format!("v{j}")));
                        }
                        k += 1;
                    }
                }
                SimplicialGraph::new((0..n).map(|i| format!("v{i}")), edges).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn find_embedding_matches_exhaustive_search(g in small_graph(8, 4)) {
            let Some(expected) = brute_force_planar(&g, 50_000) else {
                return Ok(());
            };
            let found = find_embedding(&g);
            prop_assert_eq!(found.is_some(), expected);
            if let Some(f) = found {
                prop_assert!(validate_embedding(&g, &f).unwrap().planar);
            }
        }

        #[test]
        fn seeded_embeddings_are_valid(g in small_graph(10, 5), seed in any::<u64>()) {
            if let Some(f) = find_embedding_seeded(&g, seed) {
                prop_assert!(validate_embedding(&g, &f).unwrap().planar);
            } else {
                prop_assert!(find_embedding(&g).is_none());
            }
        }
    }
}
