//! Exact integer linear algebra and finitely generated abelian groups.

mod group;
mod hom;
mod lattice;
mod matrix;
mod presentation;
mod smith;

pub use group::{AbelianGroup, Elem, ElementIter, GroupMorphism};
pub use hom::{constrained_hom_group, HomSpace, LinearCondition};
pub use lattice::{
    joint_kernel, span_contains, subgroup_generated, subgroups_equal, Solver,
};
pub use matrix::IntMatrix;
pub use presentation::{Presentation, Sparse};
pub use smith::{invariant_factors, smith_normal_form};

pub(crate) use smith::{smith_parts, Track};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("map is not well defined: {0}")]
    IllDefined(String),
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("cannot enumerate an infinite group")]
    Infinite,
}

/// Least nonnegative residue of `x` modulo `m`; `m = 0` leaves `x` unchanged.
pub fn reduce_mod(x: &num_bigint::BigInt, m: &num_bigint::BigInt) -> num_bigint::BigInt {
    use num_integer::Integer;
    use num_traits::Zero;
    if m.is_zero() {
        x.clone()
    } else {
        x.mod_floor(m)
    }
}
