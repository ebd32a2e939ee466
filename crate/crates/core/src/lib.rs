//! Planar triangle-free flag complexes and the right-angled Coxeter groups
//! they define: embeddings, JSJ-style decompositions along 4-cycles, visual
//! trees, bisimilarity, and the quasi-isometry invariants built on them.

pub mod bisim;
pub mod cfs;
pub mod classify;
pub mod corpus;
pub mod decompose;
pub mod graph;
pub mod highdim;
pub mod io;
pub mod planar;
pub mod relhyp;
pub mod standing;

pub use bisim::{bisimilar, bisimilar_mod_colors, minimal_quotient, ColorPermutation, ColoredGraph};
pub use cfs::{build_four_cycle_graph, is_cfs, CfsReport, FourCycleGraph};
pub use classify::{classify, divergence, manifold_type, qi_equivalent, qi_to_raag, Classification};
pub use decompose::{
    build_visual_tree, prime_decomposition, visual_tree, PrimeTree, SplitOrder, VisualTree,
};
pub use graph::{enumerate_induced_four_cycles, FourCycle, GraphError, SimplicialGraph};
pub use highdim::{
    build_raag_nerve, build_racg_nerve, pftree_of_visual, qi_highdim, qi_raag_vs_racg,
    validate_pftree, PFTree, PairAssignment, PermutationScope,
};
pub use io::{parse_graph, EmbeddedGraph};
pub use planar::{find_embedding, strongly_separates, validate_embedding, RotationSystem};
pub use relhyp::{caprace_check, peripheral_structure};
pub use standing::{validate_standing, StandingReport};
