//! Track, queue and stack layouts, tree-partitions, and crossing-free 3D
//! integer-grid drawings for graphs of bounded tree-width.
//!
//! The crate provides:
//! - graph generators for standard families, random k-trees and a recursive
//!   family with extremal track number;
//! - construction orderings of k-trees, acyclic colourings, path/tree
//!   decompositions, and breadth-first tree-partitions;
//! - track-layout machinery: layouts for trees, layouts from path
//!   decompositions and tree-partitions, track wrapping/balancing, and the
//!   recursive bounded-track layout for k-trees;
//! - queue and stack layouts with exact verifiers, and translations between
//!   queue and track layouts in both directions;
//! - 3D straight-line grid drawings on O(n) or aspect-ratio-controlled
//!   volumes, with an exact integer crossing verifier;
//! - brute-force oracles for queue number, track number, pathwidth and
//!   tree-width on small graphs.
//!
//! All verifiers are exact (integer arithmetic only) and every construction
//! is checked against its proved bound in the test suite.

pub mod colouring;
pub mod decomposition;
pub mod drawing;
pub mod error;
pub mod generate;
pub mod graph;
pub mod ktree_layout;
pub mod oracle;
pub mod ordering;
pub mod queue;
pub mod track;
pub mod tree_partition;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

pub use colouring::{acyclic_colouring_ktree, verify_acyclic_colouring, Colouring, ColouringReport};
pub use decomposition::{complete_to_ktree, PathDecomposition, TreeDecomposition};
pub use drawing::{
    box_edge_capacity, cohen_mod_p, draw_aspect, draw_balanced, draw_from_track, extents,
    moment_curve, nominal_box, smallest_prime_above, to_obj, to_svg, track_from_drawing,
    verify_drawing, Drawing3D, DrawingReport, MAX_COORD,
};
pub use generate::{
    generate, generate_gk, gk_track_count, gk_vertex_count, Family, Generated,
    DEFAULT_GK_VERTEX_BUDGET,
};
pub use graph::Graph;
pub use ktree_layout::{cover_bound, ktree_track_layout, track_bound};
pub use oracle::{
    exact_pathwidth, exact_queue_number, exact_track_number, exact_treewidth, OracleResult,
    DEFAULT_QUEUE_ORACLE_LIMIT, DEFAULT_TRACK_ORACLE_LIMIT, DEFAULT_WIDTH_ORACLE_LIMIT,
};
pub use ordering::{is_chordal, ktree_peo, ktree_peo_from, lex_bfs, lex_bfs_rtl, VertexOrdering};
pub use queue::{
    bipartite_roundtrip, max_rainbow, queue_from_track, queues_from_ordering, track_from_queue,
    tree_1queue, tree_1stack, verify_queue_layout, verify_stack_layout, QueueLayout, QueueReport,
    StackLayout, StackReport, DEFAULT_ROUNDTRIP_SIDE_LIMIT,
};
pub use track::{
    balance, covered_tracks, from_path_decomposition, from_tree_partition, gk_layout,
    grid_3track, improper_to_proper, max_span, nice_order, tree_3track, verify_track_layout,
    wrap, Mode, Ratio, TrackLayout, TrackReport,
};
pub use tree_partition::{
    build_tree_partition, verify_tree_partition, TreePartition, TreePartitionReport,
};
