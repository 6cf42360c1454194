//! Finitely presented graded modules F/U and the homological toolkit over them.

mod homological;
mod invariants;
mod map;

use std::fmt;
use std::sync::OnceLock;

pub(crate) use homological::ext_from_resolution;
pub use homological::{ext, free_resolution, hom, projective_dimension, FreeResolution};
pub use invariants::{
    annihilator, annihilator_of_subquotient, dim_module, gamma, hilbert_function, hilbert_range, support_in_v,
};
pub use map::{kernel, GradedMap};

use crate::error::{Error, Result};
use crate::groebner::{syzygies, GroebnerBasis, Vector};
use crate::ring::{Degree, Polynomial, Ring, RingRef};

/// A graded module F/U with F = ⊕ R(−d_j) and U spanned by the relation columns.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ring: RingRef,
    degrees: Vec<Degree>,
    relations: Vec<Vector>,
    gb: OnceLock<GroebnerBasis>,
}

/// A subquotient K/U of a free module presented minimally, with the chosen
/// generators of K (as elements of the ambient free module).
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub module: ModulePresentation,
    pub generators: Vec<Vector>,
}

/// Sort key for degrees: total degree first, so graded Nakayama arguments apply.
pub(crate) fn degree_key(d: &Degree) -> (i64, Vec<i64>) {
    (d.total(), d.0.clone())
}

pub(crate) fn homogeneous_degree(ring: &Ring, v: &Vector, degrees: &[Degree]) -> Result<Degree> {
    v.degree(ring, degrees).ok_or_else(|| Error::Inhomogeneous(format!("vector {:?} is not homogeneous", v.lead())))
}

/// Greedy minimal generators of ⟨gens⟩ + U modulo U: scan by increasing degree
/// and keep what is not already generated.
pub(crate) fn minimal_generators(
    ring: &RingRef,
    degrees: &[Degree],
    gens: &[Vector],
    u: &[Vector],
) -> Result<Vec<(Vector, Degree)>> {
    let rank = degrees.len();
    let mut tagged = Vec::with_capacity(gens.len());
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let d = homogeneous_degree(ring, g, degrees)?;
        tagged.push((g.clone(), d));
    }
    tagged.sort_by(|(a, da), (b, db)| {
        degree_key(da).cmp(&degree_key(db)).then_with(|| {
            let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
            crate::groebner::compare_terms(ring, (x.pos, &x.mono), (y.pos, &y.mono))
        })
    });
    let mut gb = GroebnerBasis::new(ring, rank, u);
    let mut kept = Vec::new();
    for (g, d) in tagged {
        if !gb.contains(&g) {
            gb = gb.extend(std::slice::from_ref(&g));
            kept.push((g, d));
        }
    }
    Ok(kept)
}

impl ModulePresentation {
    /// F/U with generator degrees and relation columns; relations must be homogeneous.
    pub fn new(ring: &RingRef, degrees: Vec<Degree>, relations: Vec<Vector>) -> Result<Self> {
        for d in &degrees {
            if d.len() != ring.degree_len() {
                return Err(Error::Shape(format!("degree {d} has wrong length for {ring}")));
            }
        }
        for r in &relations {
            if r.max_pos().is_some_and(|p| p >= degrees.len()) {
                return Err(Error::Shape("relation refers to a missing generator".into()));
            }
            if !r.is_homogeneous(ring, &degrees) {
                return Err(Error::Inhomogeneous("relation not homogeneous for the generator degrees".into()));
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(ModulePresentation { ring: ring.clone(), degrees, relations, gb: OnceLock::new() })
    }

    pub fn free(ring: &RingRef, degrees: Vec<Degree>) -> Self {
        ModulePresentation::new(ring, degrees, Vec::new()).expect("free module")
    }

    /// R itself.
    pub fn ring_module(ring: &RingRef) -> Self {
        Self::free(ring, vec![ring.zero_degree()])
    }

    pub fn zero(ring: &RingRef) -> Self {
        Self::free(ring, Vec::new())
    }

    /// R/I with its generator in degree 0.
    pub fn cyclic(ring: &RingRef, ideal: &[Polynomial]) -> Result<Self> {
        let rels = ideal.iter().map(|f| Vector::from_poly_at(f, 0)).collect();
        ModulePresentation::new(ring, vec![ring.zero_degree()], rels)
    }

    /// Present K/U where U ⊆ K ⊆ ⊕R(−degrees); `k` need not contain U.
    pub fn subquotient(ring: &RingRef, degrees: &[Degree], k: &[Vector], u: &[Vector]) -> Result<Subquotient> {
        present_subquotient(ring, degrees, k, u)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn ngens(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn relations(&self) -> &[Vector] {
        &self.relations
    }

    /// Gröbner basis of the relation module, computed once.
    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            let w: Vec<i64> = self.degrees.iter().map(Degree::total).collect();
            GroebnerBasis::with_weights(&self.ring, self.ngens(), &self.relations, &w)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.gb().is_everything()
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    /// M(s): generator degrees decrease by s.
    pub fn twist(&self, s: &Degree) -> Self {
        ModulePresentation {
            ring: self.ring.clone(),
            degrees: self.degrees.iter().map(|d| d - s).collect(),
            relations: self.relations.clone(),
            gb: OnceLock::new(),
        }
    }

    pub fn direct_sum(&self, other: &ModulePresentation) -> Result<Self> {
        check_ring(&self.ring, &other.ring)?;
        let n = self.ngens();
        let mut degrees = self.degrees.clone();
        degrees.extend(other.degrees.iter().cloned());
        let mut rels = self.relations.clone();
        rels.extend(other.relations.iter().map(|r| r.shifted(n)));
        ModulePresentation::new(&self.ring, degrees, rels)
    }

    /// M / (extra), with extra given as elements of the ambient free module.
    pub fn quotient(&self, extra: &[Vector]) -> Result<Self> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        ModulePresentation::new(&self.ring, self.degrees.clone(), rels)
    }

    /// M / I·M.
    pub fn quotient_by_ideal(&self, ideal: &[Polynomial]) -> Result<Self> {
        let extra: Vec<Vector> = ideal
            .iter()
            .flat_map(|f| (0..self.ngens()).map(move |j| Vector::from_poly_at(f, j)))
            .collect();
        self.quotient(&extra)
    }

    /// I·F + U as generators in F, i.e. the numerator of I·M.
    pub fn ideal_times_generators(&self, ideal: &[Polynomial]) -> Vec<Vector> {
        let mut out = self.relations.clone();
        for f in ideal {
            for j in 0..self.ngens() {
                out.push(Vector::from_poly_at(f, j));
            }
        }
        out
    }

    /// An isomorphic presentation with minimal generators and minimal relations.
    pub fn minimize(&self) -> Result<Self> {
        let units: Vec<Vector> = (0..self.ngens()).map(|j| Vector::unit(&self.ring, j)).collect();
        Ok(present_subquotient(&self.ring, &self.degrees, &units, &self.relations)?.module)
    }

    /// Same ring, same grading of generators, same relation module.
    pub fn same_presentation_space(&self, other: &ModulePresentation) -> bool {
        Ring::same(&self.ring, &other.ring) && self.degrees == other.degrees
    }
}

pub(crate) fn check_ring(a: &RingRef, b: &RingRef) -> Result<()> {
    if Ring::same(a, b) {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!("{a} vs {b}")))
    }
}

/// Minimal presentation of (K + U)/U inside ⊕R(−degrees).
pub fn present_subquotient(ring: &RingRef, degrees: &[Degree], k: &[Vector], u: &[Vector]) -> Result<Subquotient> {
    let gens = minimal_generators(ring, degrees, k, u)?;
    let s = gens.len();
    let gen_degrees: Vec<Degree> = gens.iter().map(|(_, d)| d.clone()).collect();
    let generators: Vec<Vector> = gens.into_iter().map(|(g, _)| g).collect();
    if s == 0 {
        return Ok(Subquotient { module: ModulePresentation::zero(ring), generators });
    }
    let mut cols = generators.clone();
    cols.extend(u.iter().filter(|v| !v.is_zero()).cloned());
    let syz = syzygies(ring, degrees.len(), &cols);
    let rels: Vec<Vector> = syz.iter().map(|v| v.project(0..s)).filter(|v| !v.is_zero()).collect();
    let rels: Vec<Vector> = minimal_generators(ring, &gen_degrees, &rels, &[])?.into_iter().map(|(v, _)| v).collect();
    Ok(Subquotient { module: ModulePresentation::new(ring, gen_degrees, rels)?, generators })
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degs: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "coker on {} generator(s) of degree [{}]", self.ngens(), degs.join(", "))?;
        for r in &self.relations {
            write!(f, "\n  {}", r.display(&self.ring, self.ngens()))?;
        }
        Ok(())
    }
}
