use super::search::{search, EnumerationOrder, SearchOptions, StopReason};
use super::GradeValue;
use crate::error::Result;
use crate::fpmod::{annihilator, free_resolution, ext_from_resolution, support_in_v, ModulePresentation};
use crate::groebner::radical_member;
use crate::ring::Polynomial;

/// Witness that Supp Ext^index(R/b, M) ⊄ V(a): a generator of a outside √Ann.
#[derive(Clone, Debug)]
pub struct ExtCertificate {
    pub index: usize,
    pub annihilator: Vec<Polynomial>,
    pub escaping_generator: Polynomial,
}

#[derive(Clone, Copy, Debug)]
pub struct FGradeOptions {
    pub with_lc_check: bool,
    pub search: SearchOptions,
}

impl Default for FGradeOptions {
    fn default() -> Self {
        FGradeOptions { with_lc_check: true, search: SearchOptions::default() }
    }
}

#[derive(Clone, Debug)]
pub struct FGradeResult {
    pub value: GradeValue,
    /// maximal sequence found by the greedy search
    pub sequence: Vec<Polynomial>,
    /// length certified by the search (None if it hit the candidate cap)
    pub constructive: Option<GradeValue>,
    /// least i with Supp Ext^i(R/b, M) ⊄ V(a)
    pub ext_index: GradeValue,
    pub ext_certificate: Option<ExtCertificate>,
    /// least i with Supp H^i_b(M) ⊄ V(a), when b, a are monomial and M admissible
    pub lc_index: Option<GradeValue>,
    /// Supp M/bM ⊆ V(a)
    pub infinite_by_support: bool,
}

impl FGradeResult {
    /// Every computed characterization gives the same value.
    pub fn agree(&self) -> bool {
        self.constructive.is_none_or(|c| c == self.value)
            && self.lc_index.is_none_or(|c| c == self.value)
            && self.infinite_by_support == self.ext_index.is_infinite()
    }
}

/// Scan Ext^i(R/b, M) for i ≤ nvars.
pub(crate) fn ext_scan(
    a: &[Polynomial],
    b: &[Polynomial],
    m: &ModulePresentation,
) -> Result<(GradeValue, Option<ExtCertificate>)> {
    let ring = m.ring();
    let n = ring.nvars();
    let rb = ModulePresentation::cyclic(ring, b)?;
    let res = free_resolution(&rb, n + 1)?;
    for i in 0..=n {
        let e = ext_from_resolution(i, &res, m)?;
        if e.is_zero() {
            continue;
        }
        let ann = annihilator(&e);
        if let Some(g) = a.iter().find(|g| !radical_member(ring, g, &ann)) {
            let cert = ExtCertificate { index: i, annihilator: ann, escaping_generator: g.clone() };
            return Ok((GradeValue::Finite(i), Some(cert)));
        }
    }
    Ok((GradeValue::Infinity, None))
}

/// f-grad_a(b, M) by the Ext characterization, cross-checked constructively and,
/// when applicable, against local cohomology supports.
pub fn fgrade(a: &[Polynomial], b: &[Polynomial], m: &ModulePresentation, opts: FGradeOptions) -> Result<FGradeResult> {
    let ring = m.ring();
    let n = ring.nvars();
    let infinite_by_support = support_in_v(&m.quotient_by_ideal(b)?, a);
    let (ext_index, ext_certificate) = ext_scan(a, b, m)?;

    let outcome = search(a, b, m, n + 1, opts.search, false)?;
    let constructive = match outcome.stop {
        StopReason::ReachedTarget => Some(GradeValue::Infinity),
        StopReason::Maximal => Some(GradeValue::Finite(outcome.sequence.len())),
        StopReason::Exhausted { .. } => None,
    };

    let lc_index = if opts.with_lc_check { crate::cechloc::lc_support_index(a, b, m)? } else { None };

    Ok(FGradeResult {
        value: ext_index,
        sequence: outcome.sequence,
        constructive,
        ext_index,
        ext_certificate,
        lc_index,
        infinite_by_support,
    })
}

/// Filter depth: f-grad_m(b, M) with m the irrelevant ideal.
pub fn fdepth(b: &[Polynomial], m: &ModulePresentation, opts: FGradeOptions) -> Result<FGradeResult> {
    let irrelevant = m.ring().variables_as_polys();
    fgrade(&irrelevant, b, m, opts)
}

/// Maximal length under both enumeration orders.
pub fn constructive_lengths(
    a: &[Polynomial],
    b: &[Polynomial],
    m: &ModulePresentation,
    max_candidates: usize,
) -> Result<(Option<GradeValue>, Option<GradeValue>)> {
    let n = m.ring().nvars();
    let mut out = [None, None];
    for (slot, order) in [EnumerationOrder::Forward, EnumerationOrder::Reversed].into_iter().enumerate() {
        let o = search(a, b, m, n + 1, SearchOptions { order, max_candidates }, false)?;
        out[slot] = match o.stop {
            StopReason::ReachedTarget => Some(GradeValue::Infinity),
            StopReason::Maximal => Some(GradeValue::Finite(o.sequence.len())),
            StopReason::Exhausted { .. } => None,
        };
    }
    Ok((out[0], out[1]))
}
