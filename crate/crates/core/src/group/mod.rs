//! PSL₂(q) and PGL₂(q) as canonical 2×2 matrices.

pub mod action;
mod context;
mod matrix;
mod subgroup;

pub use context::{group_order, GroupContext, ENUMERATION_CAP};
pub use matrix::{Family, GroupElement, Matrix, MatrixGroup};
pub use subgroup::{center_order, identify_subgroup, kind_of_generated, SubgroupKind, SubgroupTag};
