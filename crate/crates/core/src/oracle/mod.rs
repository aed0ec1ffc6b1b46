//! Verification engines independent of the rewriting pipeline.

mod brute;
mod commpoly;
mod generic;

pub use brute::{brute_force_image, cross_check, divisor_condition, CrossCheck, Equality, ImageSet, SEARCH_BOUND};
pub use commpoly::{CommPoly, Exponents, Indet};
pub use generic::{coordinate_vector, find_witness, generic_evaluate, identity_oracle, oracle_dimension, rational_rank};
