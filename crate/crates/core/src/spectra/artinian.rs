use super::{minimal_primes_of, MonomialPrime};
use crate::cechloc::MonomialIdeal;
use crate::error::Result;
use crate::filterreg::{fgrade, FGradeOptions, GradeValue};
use crate::fpmod::{annihilator, dim_module, ext_from_resolution, free_resolution, ModulePresentation};
use crate::groebner::{dim_ideal, ideal_sum, GroebnerBasis};
use crate::ring::Polynomial;

#[derive(Clone, Debug)]
pub struct ArtinianIndex {
    /// least i with dim Ext^i(M/aM, N) > 0
    pub value: GradeValue,
    /// dim Ext^i(M/aM, N) for i = 0..=nvars (−1 for zero)
    pub ext_dims: Vec<i64>,
    /// f-grad_m(a + Ann M, N)
    pub filter_depth: GradeValue,
}

impl ArtinianIndex {
    pub fn agree(&self) -> bool {
        self.value == self.filter_depth
    }
}

fn ext_modules(a: &[Polynomial], m: &ModulePresentation, n: &ModulePresentation) -> Result<Vec<ModulePresentation>> {
    let l = m.quotient_by_ideal(a)?;
    let k = m.ring().nvars();
    let res = free_resolution(&l, k + 1)?;
    (0..=k).map(|i| ext_from_resolution(i, &res, n)).collect()
}

/// Least i such that H^i_a(M, N) is not Artinian, read off Ext^i(M/aM, N), and
/// cross-checked against the filter depth of N in a + Ann M.
pub fn artinian_index(a: &[Polynomial], m: &ModulePresentation, n: &ModulePresentation) -> Result<ArtinianIndex> {
    let ring = m.ring();
    let exts = ext_modules(a, m, n)?;
    let ext_dims: Vec<i64> = exts.iter().map(dim_module).collect();
    let value = ext_dims.iter().position(|&d| d > 0).map_or(GradeValue::Infinity, GradeValue::Finite);
    let b = ideal_sum(ring, &[a, &annihilator(m)]);
    let opts = FGradeOptions { with_lc_check: false, ..FGradeOptions::default() };
    let filter_depth = fgrade(&ring.variables_as_polys(), &b, n, opts)?.value;
    Ok(ArtinianIndex { value, ext_dims, filter_depth })
}

/// Every H^i_a(M, N) is Artinian iff dim R/(a + Ann M + Ann N) ≤ 0.
pub fn all_artinian(a: &[Polynomial], m: &ModulePresentation, n: &ModulePresentation) -> Result<bool> {
    let ring = m.ring();
    Ok(dim_ideal(ring, &ideal_sum(ring, &[a, &annihilator(m), &annihilator(n)])) <= 0)
}

#[derive(Clone, Debug)]
pub struct LocalizedCheck {
    /// (p, least i with dim Ext^i(M/aM, N)_p > 0)
    pub per_prime: Vec<(MonomialPrime, GradeValue)>,
    pub minimum: GradeValue,
    pub global: GradeValue,
}

impl LocalizedCheck {
    /// The index is the minimum of the local indices.
    pub fn agrees(&self) -> bool {
        self.minimum == self.global
    }
}

/// Artinianness indices after localizing at each monomial prime, using
/// dim (R/J)_p = max{ht p − ht q : q ⊆ p minimal over J}. Needs monomial
/// annihilators, i.e. monomial data.
pub fn localized_artinian_check(
    a: &[Polynomial],
    m: &ModulePresentation,
    n: &ModulePresentation,
) -> Result<LocalizedCheck> {
    let ring = m.ring();
    let k = ring.nvars();
    let exts = ext_modules(a, m, n)?;
    let mut minimal: Vec<Vec<MonomialPrime>> = Vec::with_capacity(exts.len());
    for e in &exts {
        let ann = GroebnerBasis::ideal(ring, &annihilator(e)).polys();
        minimal.push(minimal_primes_of(&MonomialIdeal::from_polys(k, &ann)?));
    }
    let global = minimal
        .iter()
        .position(|qs| qs.iter().any(|q| q.dim() > 0))
        .map_or(GradeValue::Infinity, GradeValue::Finite);
    let mut per_prime = Vec::new();
    for mask in 0..1u64 << k {
        let p = MonomialPrime::from_mask(k, mask);
        let local = minimal
            .iter()
            .position(|qs| qs.iter().any(|q| q.is_subset_of(&p) && p.height() > q.height()))
            .map_or(GradeValue::Infinity, GradeValue::Finite);
        per_prime.push((p, local));
    }
    let minimum = per_prime.iter().map(|(_, v)| *v).min().unwrap_or(GradeValue::Infinity);
    Ok(LocalizedCheck { per_prime, minimum, global })
}
