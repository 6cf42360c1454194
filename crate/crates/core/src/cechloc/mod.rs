//! Multigraded local cohomology H^i_a(N) and generalized local cohomology
//! H^i_a(M, N) on windows of Z^n, for monomial a and direct sums of twisted
//! cyclic monomial quotients N.

mod admissible;
mod complex;
mod verify;
mod windowed;
#[cfg(test)]
mod tests;

pub use admissible::{fine, fine_presentation, AdmissibleModule, GradedPieces, MonomialIdeal, Summand};
pub use complex::{
    cech_table, cohomological_dimension, gen_cech_table, gen_cech_table_of, regime_box, regime_table,
    support_in_v_from_table, CohomologyTable, DegreeWindow, WINDOW_CAP,
};
pub use verify::{h0_exact, lc_support_index, ns_compose_verify, ns_verify, ComposeReport, H0Exact, NsReport};
pub use windowed::WindowedModule;
