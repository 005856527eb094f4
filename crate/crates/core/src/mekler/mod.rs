//! Mekler's graph-to-group construction and the surrounding pipeline:
//! niceness, normal-form arithmetic in `G(Γ)`, copies graphs, automorphism
//! lifting, isomorphism oracles, semidirect products, and the
//! character-support centralizer experiment.

pub mod centralizer;
pub mod graph;
pub mod group;
pub mod iso;

pub use centralizer::{
    char_support_centralizer, char_support_preset, semidirect_table, CentralizerPreset,
    CharSupportReport, MeklerSwapSemidirect, PresetCentralizerReport, SemidirectGroup,
};
pub use graph::{
    all_graphs, canonical_edge_mask, copies_graph, copy_swap_permutation, graph_classes,
    graph_iso, is_nice, nice_catalog, nice_report, NiceReport, SimpleGraph,
};
pub use group::{fingerprint, GroupFingerprint, MeklerElement, MeklerGroup};
pub use iso::{exact_iso, induced_group_iso, InducedIso};
