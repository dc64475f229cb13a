//! Shadows of t-intersecting families of k-sets: exact set-family
//! primitives, the EKR shift, intersection-structure analysis, canonical
//! constructions, closed-form bounds and brute-force verification.
//!
//! Sets are [`KSet`] bit vectors over `[64]`; families are sorted, deduplicated
//! [`Family`] values; every bound is an [`ExactRatio`].

pub mod bounds;
pub mod canonical;
mod error;
pub mod exact;
pub mod sets;
pub mod shadow;
pub mod shift;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{binomial, ExactRatio};
pub use sets::{
    enumerate_ksubsets, family, format_family, parse_family, set, Family, KSet, Params, SetSystem,
    MAX_GROUND,
};
pub use shadow::{deletion_shadow, shadow_j, shadow_ratio, sigma_ell};
pub use shift::{is_shifted, shift_closure, shift_ij};
pub use structure::{is_pseudo_t_intersecting, is_t_intersecting, width};
