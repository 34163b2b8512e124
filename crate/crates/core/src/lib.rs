//! Exact enumeration toolkit for fully-packed loops (FPLs), alternating-sign
//! matrices (ASMs) and their link patterns under rotational symmetry, together
//! with the rhombus-tiling counts that the rarest link patterns reduce to.

pub mod asm;
pub mod exact;
pub mod fpl;
pub mod grid;

pub use asm::{Asm, AsmError};
pub use fpl::{asm_to_fpl, classify_symmetry, fpl_to_asm, rotate_quarter, Fpl, FplError, SymmetryFlags};
pub use grid::{Dir, Edge, Grid, Vertex};
pub mod enumerate;
pub use enumerate::{
    count_class, count_formula_a, count_memoized, enumerate_asms, fold_class, recurrence_ratio_a, refined_polynomial,
    EnumError, ExactCount, RefinedPolynomial, SymmetryClass,
};
pub mod linkpat;
pub use linkpat::{
    apply_e, apply_e_sym, dyck_to_pattern, extract_link_pattern, ht_decode, ht_encode, pattern_counts, pattern_to_dyck,
    qqt_reduce, qt_reduce, stationary_distribution, transition_matrix, DyckWord, HtWord, LinkError, LinkPattern,
    PatternDistribution, TransitionMatrix,
};
pub mod tilings;
pub use tilings::{
    ciucu_factorize, closed_form_p, count_cssc, count_invariant_matchings, count_matchings, count_qcsscpp,
    fixed_edge_closure, fpl_to_quotient_matching, hexagon_region, lgv_count, CiucuSplit, FixedEdgeClosure,
    LatticePathSystem, MatchRegion, Method, TilingError,
};
pub mod verify;
pub use verify::{run, Identity, Status, VerificationReport};
