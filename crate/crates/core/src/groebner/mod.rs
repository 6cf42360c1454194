//! Buchberger's algorithm for ideals and submodules of free modules, and the
//! operations built on it.

mod buchberger;
mod ops;
mod vector;

pub use buchberger::{compare_terms, GroebnerBasis};
pub use ops::{
    colon, colon_ideal, colon_vector, dim_from_leads, dim_ideal, ideal_colon, ideal_contains, ideal_intersect,
    ideal_saturate, ideal_sum, intersect, radical_contains, radical_member, saturate, syzygies, syzygies_weighted,
    syzygy_matrix,
};
pub use vector::{VTerm, Vector};

#[cfg(test)]
mod tests;
