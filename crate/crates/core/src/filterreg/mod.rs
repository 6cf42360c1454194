//! Filter regular elements and sequences, and the filter grade f-grad_a(b, M).

mod grade;
mod search;

use std::fmt;

pub use grade::{constructive_lengths, fdepth, fgrade, ExtCertificate, FGradeOptions, FGradeResult};
pub use search::{find_fr_sequence, EnumerationOrder, SearchOptions, SearchOutcome, StopReason};

use crate::error::{Error, Result};
use crate::fpmod::{annihilator_of_subquotient, ModulePresentation};
use crate::groebner::{colon, radical_contains, saturate, GroebnerBasis, Vector};
use crate::ring::Polynomial;

/// A grade-like value: a natural number or ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GradeValue {
    Finite(usize),
    Infinity,
}

impl GradeValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, GradeValue::Infinity)
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            GradeValue::Finite(k) => Some(*k),
            GradeValue::Infinity => None,
        }
    }
}

impl fmt::Display for GradeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradeValue::Finite(k) => write!(f, "{k}"),
            GradeValue::Infinity => write!(f, "infinity"),
        }
    }
}

/// Outcome of one filter-regularity test, with the data used to decide it.
#[derive(Clone, Debug)]
pub struct StepWitness {
    pub element: Polynomial,
    pub passes: bool,
    /// generators of U :_F x
    pub colon: Vec<Vector>,
    /// Ann((U :_F x)/U)
    pub annihilator: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct FilterSequenceReport {
    pub sequence: Vec<Polynomial>,
    pub verdicts: Vec<bool>,
    pub witnesses: Vec<StepWitness>,
}

impl FilterSequenceReport {
    pub fn passes(&self) -> bool {
        self.verdicts.iter().all(|&v| v)
    }
}

/// Is x filter regular on F/u, i.e. Supp((u :_F x)/u) ⊆ V(a)? Here `u` is the
/// numerator of the current submodule, relations of M included.
pub fn is_fr_element(a: &[Polynomial], x: &Polynomial, u: &[Vector], m: &ModulePresentation) -> Result<StepWitness> {
    if x.is_zero() {
        return Err(Error::ZeroElement("filter regular candidate".into()));
    }
    if !x.is_homogeneous() {
        return Err(Error::Inhomogeneous(format!("candidate {x}")));
    }
    let ring = m.ring();
    let rank = m.ngens();
    let c = if rank == 0 { Vec::new() } else { colon(ring, rank, u, x)? };
    let annihilator = annihilator_of_subquotient(ring, rank, &c, u);
    let passes = radical_contains(ring, &annihilator, a);
    Ok(StepWitness { element: x.clone(), passes, colon: c, annihilator })
}

/// Check each x_i against U = (x_1..x_{i−1})M.
pub fn is_fr_sequence(a: &[Polynomial], xs: &[Polynomial], m: &ModulePresentation) -> Result<FilterSequenceReport> {
    let mut u = m.relations().to_vec();
    let mut verdicts = Vec::with_capacity(xs.len());
    let mut witnesses = Vec::with_capacity(xs.len());
    for x in xs {
        let w = is_fr_element(a, x, &u, m)?;
        verdicts.push(w.passes);
        witnesses.push(w);
        extend_by_element(&mut u, x, m.ngens());
    }
    Ok(FilterSequenceReport { sequence: xs.to_vec(), verdicts, witnesses })
}

/// u ← u + x·F
pub(crate) fn extend_by_element(u: &mut Vec<Vector>, x: &Polynomial, rank: usize) {
    for j in 0..rank {
        u.push(Vector::from_poly_at(x, j));
    }
}

/// Per-step verdicts of the colon criterion (ii), the saturation criterion (vi),
/// and power stability on sampled exponent vectors.
#[derive(Clone, Debug)]
pub struct EquivalenceAudit {
    pub support_criterion: Vec<bool>,
    pub saturation_criterion: Vec<bool>,
    pub powers: Vec<(Vec<u32>, bool)>,
}

impl EquivalenceAudit {
    /// (ii) and (vi) agree at every step.
    pub fn criteria_agree(&self) -> bool {
        self.support_criterion == self.saturation_criterion
    }

    pub fn powers_pass(&self) -> bool {
        self.powers.iter().all(|(_, ok)| *ok)
    }
}

/// Compare (ii) with (vi): (x_1..x_{i−1})M :_M x_i ⊆ (x_1..x_{i−1})M :_M ⟨a⟩,
/// and rerun the sequence test on each power vector.
pub fn equivalence_audit(
    a: &[Polynomial],
    xs: &[Polynomial],
    m: &ModulePresentation,
    powers: &[Vec<u32>],
) -> Result<EquivalenceAudit> {
    let ring = m.ring();
    let rank = m.ngens();
    let report = is_fr_sequence(a, xs, m)?;
    let mut u = m.relations().to_vec();
    let mut saturation_criterion = Vec::with_capacity(xs.len());
    let a_nonzero: Vec<Polynomial> = a.iter().filter(|g| !g.is_zero()).cloned().collect();
    for (x, w) in xs.iter().zip(&report.witnesses) {
        let ok = if rank == 0 || a_nonzero.is_empty() {
            // U :_M ⟨0⟩ is all of M
            true
        } else {
            let sat = saturate(ring, rank, &u, &a_nonzero)?;
            GroebnerBasis::new(ring, rank, &sat).contains_all(&w.colon)
        };
        saturation_criterion.push(ok);
        extend_by_element(&mut u, x, rank);
    }
    let mut sampled = Vec::with_capacity(powers.len());
    for alpha in powers {
        let powered: Vec<Polynomial> = xs.iter().zip(alpha).map(|(x, &k)| x.pow(k.max(1))).collect();
        sampled.push((alpha.clone(), is_fr_sequence(a, &powered, m)?.passes()));
    }
    Ok(EquivalenceAudit { support_criterion: report.verdicts, saturation_criterion, powers: sampled })
}
