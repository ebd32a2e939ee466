//! The bundled example graphs (see `corpus/` next to this crate).
//!
//! Rotations were read off straight-line drawings, listing neighbours
//! counterclockwise. `fig6` ships without a rotation.

use crate::graph::FourCycle;
use crate::highdim::PFTree;
use crate::io::{parse_graph, EmbeddedGraph};

macro_rules! corpus_graph {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            pub fn $name() -> EmbeddedGraph {
                parse_graph(include_str!(concat!("../corpus/", $file)))
                    .expect(concat!("bundled ", $file, " parses"))
            }
        )*

        /// Every bundled graph, by name, in a fixed order.
        pub fn graphs() -> Vec<(&'static str, EmbeddedGraph)> {
            vec![$((stringify!($name), $name())),*]
        }
    };
}

corpus_graph! {
    fig1 => "fig1.json",
    fig2 => "fig2.json",
    fig3_gamma => "fig3_gamma.json",
    fig3_gammaprime => "fig3_gammaprime.json",
    fig4_omega => "fig4_omega.json",
    fig4_omegaprime => "fig4_omegaprime.json",
    fig5_k1 => "fig5_k1.json",
    fig5_k2 => "fig5_k2.json",
    fig6 => "fig6.json",
    k23 => "k23.json",
    cube => "cube.json",
}

/// The p/f tree `p0(3) - f - p1(4) - f - p0(3)` with `n = 1`.
pub fn fig5_tree() -> PFTree {
    serde_json::from_str(include_str!("../corpus/fig5_tree.json")).expect("bundled tree parses")
}

/// The highlighted 4-cycle of `fig6`.
pub fn fig6_red_cycle() -> FourCycle {
    FourCycle::new("y1p", "x2p", "y4p", "x5m")
}
