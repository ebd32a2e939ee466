//! Verdicts on the group defined by a planar graph: divergence class,
//! virtual 3-manifold type, quasi-isometry, quasi-isometry to a RAAG,
//! the splitting along the prime tree, and the strongly quasiconvex
//! 4-cycle witness.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bisim::bisimilar;
use crate::cfs::{build_four_cycle_graph, is_cfs, CfsReport};
use crate::decompose::{
    build_visual_tree, prime_decomposition, DecomposeError, NodeColor, SplitOrder, VisualTree,
};
use crate::graph::{join_factors, suspension_of, FourCycle, GraphError, SimplicialGraph, Suspension};
use crate::planar::RotationSystem;
use crate::standing::{validate_standing, Check};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("graph violates the standing assumptions: {0:?}")]
    NotStanding(Vec<Check>),
    #[error("graph is not CFS")]
    NotCfs,
    #[error("graph is a join")]
    Join,
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Divergence {
    Linear,
    Quadratic,
    Exponential,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ManifoldType {
    VirtuallySeifert,
    VirtuallyGraphManifold,
    Neither,
}

/// Evidence backing a verdict; each variant can be re-checked with the
/// operation that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    Join { part1: Vec<String>, part2: Vec<String> },
    Suspension(Suspension),
    Cfs(CfsReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict<K> {
    pub kind: K,
    pub evidence: Evidence,
    /// The rule that turns the evidence into the verdict.
    pub basis: String,
}

fn require_standing(g: &SimplicialGraph, f: &RotationSystem) -> Result<(), ClassifyError> {
    let r = validate_standing(g, Some(f));
    if r.passes() {
        Ok(())
    } else {
        Err(ClassifyError::NotStanding(r.failed_checks()))
    }
}

const DIVERGENCE_RULE: &str =
    "linear iff the graph is a join; quadratic iff CFS and not a join; otherwise exponential";

pub fn divergence(g: &SimplicialGraph, f: &RotationSystem) -> Result<Verdict<Divergence>, ClassifyError> {
    require_standing(g, f)?;
    Ok(divergence_unchecked(g))
}

fn divergence_unchecked(g: &SimplicialGraph) -> Verdict<Divergence> {
    if let Some((part1, part2)) = join_factors(g) {
        return Verdict {
            kind: Divergence::Linear,
            evidence: Evidence::Join { part1, part2 },
            basis: DIVERGENCE_RULE.into(),
        };
    }
    let cfs = is_cfs(g);
    let kind = if cfs.cfs {
        Divergence::Quadratic
    } else {
        Divergence::Exponential
    };
    Verdict {
        kind,
        evidence: Evidence::Cfs(cfs),
        basis: DIVERGENCE_RULE.into(),
    }
}

const MANIFOLD_RULE: &str = "virtually Seifert iff the graph is a suspension of at least three \
     points; virtually a graph manifold iff CFS and not such a suspension; otherwise neither";

pub fn manifold_type(
    g: &SimplicialGraph,
    f: &RotationSystem,
) -> Result<Verdict<ManifoldType>, ClassifyError> {
    require_standing(g, f)?;
    Ok(manifold_unchecked(g))
}

fn manifold_unchecked(g: &SimplicialGraph) -> Verdict<ManifoldType> {
    if let Some(s) = suspension_of(g) {
        return Verdict {
            kind: ManifoldType::VirtuallySeifert,
            evidence: Evidence::Suspension(s),
            basis: MANIFOLD_RULE.into(),
        };
    }
    let cfs = is_cfs(g);
    let kind = if cfs.cfs {
        ManifoldType::VirtuallyGraphManifold
    } else {
        ManifoldType::Neither
    };
    Verdict {
        kind,
        evidence: Evidence::Cfs(cfs),
        basis: MANIFOLD_RULE.into(),
    }
}

fn cfs_visual_tree(
    g: &SimplicialGraph,
    f: &RotationSystem,
    order: SplitOrder,
) -> Result<VisualTree, ClassifyError> {
    require_standing(g, f)?;
    if !is_cfs(g).cfs {
        return Err(ClassifyError::NotCfs);
    }
    let p = prime_decomposition(g, f, order)?;
    Ok(build_visual_tree(&p, f)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QiVerdict {
    pub qi: bool,
    pub tree1: VisualTree,
    pub tree2: VisualTree,
    pub basis: String,
}

/// Two CFS graphs give quasi-isometric groups iff their black/white visual
/// trees are bisimilar.
pub fn qi_equivalent(
    g1: &SimplicialGraph,
    f1: &RotationSystem,
    g2: &SimplicialGraph,
    f2: &RotationSystem,
) -> Result<QiVerdict, ClassifyError> {
    let tree1 = cfs_visual_tree(g1, f1, SplitOrder::Lexicographic)?;
    let tree2 = cfs_visual_tree(g2, f2, SplitOrder::Lexicographic)?;
    let qi = bisimilar(&tree1.to_colored_graph(), &tree2.to_colored_graph());
    Ok(QiVerdict {
        qi,
        tree1,
        tree2,
        basis: "quasi-isometric iff the black/white visual decomposition trees are bisimilar"
            .into(),
    })
}

/// A right-angled Artin group given by its defining tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaagWitness {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl RaagWitness {
    /// The path on four vertices, the smallest tree of diameter 3.
    pub fn path4() -> Self {
        let v: Vec<String> = (1..=4).map(|i| format!("t{i}")).collect();
        let edges = v.windows(2).map(|w| [w[0].clone(), w[1].clone()]).collect();
        RaagWitness { vertices: v, edges }
    }

    pub fn diameter(&self) -> usize {
        let g = SimplicialGraph::new(
            self.vertices.clone(),
            self.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())),
        )
        .expect("witness is a simple graph");
        let n = g.vertex_count();
        let mut best = 0;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in g.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            best = best.max(dist.into_iter().filter(|&d| d != usize::MAX).max().unwrap_or(0));
        }
        best
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum RaagVerdict {
    Yes { witness: RaagWitness, tree: VisualTree },
    No { white_vertex: String, tree: VisualTree },
}

impl RaagVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, RaagVerdict::Yes { .. })
    }
}

/// For CFS non-join graphs: quasi-isometric to a RAAG iff every vertex of
/// the visual tree is black, in which case a tree RAAG of diameter 3 is one.
pub fn qi_to_raag(g: &SimplicialGraph, f: &RotationSystem) -> Result<RaagVerdict, ClassifyError> {
    if join_factors(g).is_some() {
        return Err(ClassifyError::Join);
    }
    let tree = cfs_visual_tree(g, f, SplitOrder::Lexicographic)?;
    match tree.nodes.iter().find(|n| n.color == NodeColor::White) {
        Some(n) => Ok(RaagVerdict::No {
            white_vertex: n.id.clone(),
            tree,
        }),
        None => Ok(RaagVerdict::Yes {
            witness: RaagWitness::path4(),
            tree,
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceTag {
    /// A suspension of three points; its group is virtually a product of
    /// a free group and Z.
    SuspensionOfThree,
    /// Contains no suspension of three points; hyperbolic relative to the
    /// D∞×D∞ subgroups of its 4-cycles.
    RelativelyHyperbolic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceReport {
    pub id: String,
    pub vertices: Vec<String>,
    pub tag: PieceTag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeReport {
    pub a: String,
    pub b: String,
    pub glue: FourCycle,
    pub edge_group: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub pieces: Vec<PieceReport>,
    pub edges: Vec<EdgeReport>,
}

impl SplittingReport {
    pub fn count(&self, tag: PieceTag) -> usize {
        self.pieces.iter().filter(|p| p.tag == tag).count()
    }
}

/// The graph of groups read off the prime tree: vertex groups are the prime
/// pieces, edge groups are the D∞×D∞ groups of the glue 4-cycles.
pub fn splitting_report(
    g: &SimplicialGraph,
    f: &RotationSystem,
) -> Result<SplittingReport, ClassifyError> {
    let tree = prime_decomposition(g, f, SplitOrder::Lexicographic)?;
    let pieces = tree
        .nodes
        .iter()
        .map(|n| PieceReport {
            id: n.id.clone(),
            vertices: n.piece.labels().to_vec(),
            tag: match suspension_of(&n.piece) {
                Some(s) if s.tips.len() == 3 => PieceTag::SuspensionOfThree,
                _ => PieceTag::RelativelyHyperbolic,
            },
        })
        .collect();
    let edges = tree
        .edges
        .iter()
        .map(|e| EdgeReport {
            a: e.a.clone(),
            b: e.b.clone(),
            glue: e.glue.clone(),
            edge_group: "D∞×D∞".into(),
        })
        .collect();
    Ok(SplittingReport { pieces, edges })
}

/// True iff no other induced 4-cycle shares a diagonal with σ, which makes
/// the D∞×D∞ subgroup of σ strongly quasiconvex without being stable.
pub fn sq_special_four_cycle(g: &SimplicialGraph, sigma: &FourCycle) -> Result<bool, ClassifyError> {
    if !sigma.is_induced_in(g) {
        return Err(GraphError::NotInducedCycle(sigma.to_string()).into());
    }
    let fg = build_four_cycle_graph(g);
    let diagonals = sigma.diagonals();
    let shared = fg
        .nodes
        .iter()
        .any(|c| c != sigma && c.diagonals().iter().any(|d| diagonals.contains(d)));
    let node = fg.node_index(sigma).expect("induced cycle is a node of the four-cycle graph");
    debug_assert_eq!(!shared, fg.degree(node) == 0);
    Ok(!shared)
}

/// Everything `classify` reports about one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub divergence: Divergence,
    pub manifold: ManifoldType,
    pub cfs: bool,
    pub join: bool,
    pub divergence_verdict: Verdict<Divergence>,
    pub manifold_verdict: Verdict<ManifoldType>,
    pub splitting: SplittingReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub visual_tree: Option<VisualTree>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qi_to_raag: Option<RaagVerdict>,
}

pub fn classify(g: &SimplicialGraph, f: &RotationSystem) -> Result<Classification, ClassifyError> {
    require_standing(g, f)?;
    let divergence_verdict = divergence_unchecked(g);
    let manifold_verdict = manifold_unchecked(g);
    let cfs = is_cfs(g).cfs;
    let join = join_factors(g).is_some();
    let visual_tree = if cfs {
        Some(cfs_visual_tree(g, f, SplitOrder::Lexicographic)?)
    } else {
        None
    };
    let qi_to_raag = if cfs && !join {
        Some(qi_to_raag(g, f)?)
    } else {
        None
    };
    Ok(Classification {
        divergence: divergence_verdict.kind,
        manifold: manifold_verdict.kind,
        cfs,
        join,
        divergence_verdict,
        manifold_verdict,
        splitting: splitting_report(g, f)?,
        visual_tree,
        qi_to_raag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::planar::find_embedding_seeded;

    fn rot(c: &crate::io::EmbeddedGraph) -> &RotationSystem {
        c.rotation.as_ref().unwrap()
    }

    #[test]
    fn divergence_triple() {
        let c = corpus::fig1();
        assert_eq!(divergence(&c.graph, rot(&c)).unwrap().kind, Divergence::Linear);
        let c = corpus::fig3_gamma();
        assert_eq!(divergence(&c.graph, rot(&c)).unwrap().kind, Divergence::Quadratic);
        let c = corpus::fig4_omega();
        assert_eq!(divergence(&c.graph, rot(&c)).unwrap().kind, Divergence::Exponential);
    }

    #[test]
    fn manifold_types() {
        let c = corpus::fig1();
        assert_eq!(manifold_type(&c.graph, rot(&c)).unwrap().kind, ManifoldType::VirtuallySeifert);
        let c = corpus::fig3_gamma();
        assert_eq!(
            manifold_type(&c.graph, rot(&c)).unwrap().kind,
            ManifoldType::VirtuallyGraphManifold
        );
        let c = corpus::fig4_omega();
        assert_eq!(manifold_type(&c.graph, rot(&c)).unwrap().kind, ManifoldType::Neither);
    }

    #[test]
    fn divergence_and_manifold_type_agree_on_corpus() {
        for (name, c) in corpus::graphs() {
            let Some(f) = &c.rotation else { continue };
            let d = divergence(&c.graph, f).unwrap().kind;
            let m = manifold_type(&c.graph, f).unwrap().kind;
            assert_eq!(d == Divergence::Linear, m == ManifoldType::VirtuallySeifert, "{name}");
            assert_eq!(
                d == Divergence::Quadratic,
                m == ManifoldType::VirtuallyGraphManifold,
                "{name}"
            );
        }
    }

    #[test]
    fn figure3_pair_is_not_qi() {
        let (a, b) = (corpus::fig3_gamma(), corpus::fig3_gammaprime());
        assert!(!qi_equivalent(&a.graph, rot(&a), &b.graph, rot(&b)).unwrap().qi);
    }

    #[test]
    fn self_qi_under_another_embedding() {
        let c = corpus::fig3_gamma();
        let other = find_embedding_seeded(&c.graph, 3).unwrap();
        assert!(qi_equivalent(&c.graph, rot(&c), &c.graph, &other).unwrap().qi);
    }

    #[test]
    fn figure5_nerves_are_qi() {
        let (a, b) = (corpus::fig5_k1(), corpus::fig5_k2());
        assert!(qi_equivalent(&a.graph, rot(&a), &b.graph, rot(&b)).unwrap().qi);
    }

    #[test]
    fn raag_verdicts() {
        let c = corpus::fig3_gammaprime();
        match qi_to_raag(&c.graph, rot(&c)).unwrap() {
            RaagVerdict::Yes { witness, .. } => assert_eq!(witness.diameter(), 3),
            v => panic!("{v:?}"),
        }
        let c = corpus::fig3_gamma();
        match qi_to_raag(&c.graph, rot(&c)).unwrap() {
            RaagVerdict::No { white_vertex, tree } => {
                assert_eq!(tree.node(&white_vertex).unwrap().a, vec!["a1", "a3", "a5"]);
            }
            v => panic!("{v:?}"),
        }
        let c = corpus::fig5_k1();
        assert!(qi_to_raag(&c.graph, rot(&c)).unwrap().is_yes());
        let c = corpus::fig1();
        assert_eq!(qi_to_raag(&c.graph, rot(&c)), Err(ClassifyError::Join));
    }

    #[test]
    fn splitting_reports() {
        let c = corpus::fig3_gamma();
        let r = splitting_report(&c.graph, rot(&c)).unwrap();
        assert_eq!(r.count(PieceTag::SuspensionOfThree), 4);
        assert_eq!(r.edges.len(), 3);
        let c = corpus::fig4_omega();
        let r = splitting_report(&c.graph, rot(&c)).unwrap();
        assert_eq!(r.count(PieceTag::SuspensionOfThree), 4);
        assert_eq!(r.count(PieceTag::RelativelyHyperbolic), 1);
        let corner = r
            .pieces
            .iter()
            .find(|p| p.tag == PieceTag::RelativelyHyperbolic)
            .unwrap();
        assert!(corner.vertices.contains(&"c1".to_string()));
        let c = corpus::k23();
        let r = splitting_report(&c.graph, rot(&c)).unwrap();
        assert_eq!(r.pieces.len(), 1);
        assert_eq!(r.pieces[0].tag, PieceTag::SuspensionOfThree);
    }

    #[test]
    fn strongly_quasiconvex_witness() {
        let g = corpus::fig6().graph;
        assert!(sq_special_four_cycle(&g, &corpus::fig6_red_cycle()).unwrap());
        let g = corpus::fig1().graph;
        for s in crate::graph::enumerate_induced_four_cycles(&g) {
            assert!(!sq_special_four_cycle(&g, &s).unwrap());
        }
        let sq = SimplicialGraph::from_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
            .unwrap();
        assert!(sq_special_four_cycle(&sq, &FourCycle::new("a", "b", "c", "d")).unwrap());
        assert!(sq_special_four_cycle(&sq, &FourCycle::new("a", "c", "b", "d")).is_err());
    }
}
