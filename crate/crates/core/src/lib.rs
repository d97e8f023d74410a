//! Exact sheaf cohomology on products of projective spaces, block collections
//! of line bundles, and three regularity notions compared on them:
//! Castelnuovo–Mumford, regularity with respect to a block collection, and
//! multigraded (Hoffman–Wang) regularity.
//!
//! All arithmetic is exact and overflow-checked.

pub mod binom;
pub mod blocks;
pub mod catalog;
pub mod error;
pub mod factor;
pub mod product;
pub mod regularity;
pub mod suites;

pub use blocks::{
    aligned_window_dual, fundamental_collection, gram_matrix, helix_block, helix_window, k0_class,
    left_dual_classes_k0, mutation_class, verify_exceptional_structure, Block, BlockCollection, DualClass,
    DualPair, GramMatrix, K0Class, K0Lattice, Side,
};
pub use error::{Error, Result};
pub use factor::{bott_cohomology, FactorCohomology, FactorSheaf};
pub use product::{cohomology, euler_pairing, ext_table, BoxProduct, CohomologyTable, MultiDegree, SplitSheaf, Space};
