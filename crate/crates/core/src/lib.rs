//! Exact commutative algebra over k[x_1..x_n]: Gröbner bases, finitely presented
//! graded modules, filter regular sequences, generalized local cohomology and
//! attached primes.

pub mod cechloc;
pub mod error;
pub mod filterreg;
pub mod fpmod;
pub mod groebner;
pub mod linalg;
pub mod ring;
pub mod spectra;

pub use error::{Error, Result};
pub use fpmod::{GradedMap, ModulePresentation};
pub use groebner::{GroebnerBasis, Vector};
pub use ring::{Coeff, Degree, Field, Grading, Monomial, MonomialOrder, Polynomial, Ring, RingRef};
pub use cechloc::{AdmissibleModule, CohomologyTable, DegreeWindow};
pub use filterreg::GradeValue;
