use super::{map::GradedMap, present_subquotient, ModulePresentation};
use crate::error::{Error, Result};
use crate::groebner::{colon_vector, dim_ideal, ideal_intersect, radical_contains, saturate, Vector};
use crate::ring::{monomials_of_degree, Degree, Grading, Monomial, Polynomial, RingRef};

/// Ann(M) = ∩_j (U :_R e_j); the unit ideal for the zero module.
pub fn annihilator(m: &ModulePresentation) -> Vec<Polynomial> {
    let units: Vec<Vector> = (0..m.ngens()).map(|j| Vector::unit(m.ring(), j)).collect();
    annihilator_of_subquotient(m.ring(), m.ngens(), &units, m.relations())
}

/// Ann((C + U)/U) for C, U ⊆ R^rank.
pub fn annihilator_of_subquotient(ring: &RingRef, rank: usize, c: &[Vector], u: &[Vector]) -> Vec<Polynomial> {
    let mut acc: Option<Vec<Polynomial>> = None;
    for v in c.iter().filter(|v| !v.is_zero()) {
        let part = colon_vector(ring, rank, u, v);
        acc = Some(match acc {
            None => part,
            Some(prev) => ideal_intersect(ring, &prev, &part),
        });
        if acc.as_ref().is_some_and(|a| a.is_empty()) {
            break;
        }
    }
    acc.unwrap_or_else(|| vec![ring.one()])
}

/// Supp M ⊆ V(a), decided as a ⊆ √Ann M.
pub fn support_in_v(m: &ModulePresentation, a: &[Polynomial]) -> bool {
    if m.is_zero() {
        return true;
    }
    radical_contains(m.ring(), &annihilator(m), a)
}

/// dim R/Ann M; −1 for the zero module.
pub fn dim_module(m: &ModulePresentation) -> i64 {
    if m.is_zero() {
        return -1;
    }
    dim_ideal(m.ring(), &annihilator(m))
}

/// Γ_a(M) = (0 :_M ⟨a⟩) with its inclusion into M.
pub fn gamma(a: &[Polynomial], m: &ModulePresentation) -> Result<(ModulePresentation, GradedMap)> {
    if a.iter().all(Polynomial::is_zero) {
        return Err(Error::Precondition("torsion with respect to the zero ideal".into()));
    }
    let ring = m.ring();
    let s = if m.ngens() == 0 { Vec::new() } else { saturate(ring, m.ngens(), m.relations(), a)? };
    let sub = present_subquotient(ring, m.degrees(), &s, m.relations())?;
    let inclusion = GradedMap::new(sub.module.clone(), m.clone(), sub.generators, ring.zero_degree())?;
    Ok((sub.module, inclusion))
}

/// dim_k M_d for each requested degree, counting standard monomials of the relation module.
pub fn hilbert_function(m: &ModulePresentation, degrees: &[Degree]) -> Vec<u64> {
    let ring = m.ring();
    let gb = m.gb();
    degrees
        .iter()
        .map(|d| {
            let mut count = 0u64;
            for (j, g) in m.degrees().iter().enumerate() {
                for mono in monomials_in_degree(ring, &(d - g)) {
                    if gb.is_standard(j, &mono) {
                        count += 1;
                    }
                }
            }
            count
        })
        .collect()
}

/// Standard-graded Hilbert function on lo..=hi.
pub fn hilbert_range(m: &ModulePresentation, lo: i64, hi: i64) -> Vec<(i64, u64)> {
    let degrees: Vec<Degree> = (lo..=hi).map(|d| Degree(vec![d])).collect();
    (lo..=hi).zip(hilbert_function(m, &degrees)).collect()
}

/// Monomials of the given ring degree.
fn monomials_in_degree(ring: &RingRef, d: &Degree) -> Vec<Monomial> {
    match ring.grading() {
        Grading::Standard => {
            let t = d.total();
            if t < 0 {
                Vec::new()
            } else {
                monomials_of_degree(ring.nvars(), t as u32)
            }
        }
        Grading::Fine => {
            if d.0.iter().any(|&e| e < 0) {
                Vec::new()
            } else {
                vec![Monomial::from_exponents(d.0.iter().map(|&e| e as u32))]
            }
        }
    }
}
