use std::cmp::Ordering;
use std::fmt;

use crate::ring::{Coeff, Degree, Monomial, Polynomial, Ring, RingRef};

/// One term c·x^u·e_pos of a free-module element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VTerm {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: Coeff,
}

/// Element of a free module R^r, stored as terms sorted decreasingly in the
/// position-over-term order (lower basis index first, then the ring's monomial order).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    terms: Vec<VTerm>,
}

pub(crate) fn cmp_term(ring: &Ring, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| ring.cmp(a.1, b.1))
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub(crate) fn from_sorted(terms: Vec<VTerm>) -> Self {
        Vector { terms }
    }

    /// The basis vector e_pos.
    pub fn unit(ring: &Ring, pos: usize) -> Self {
        Vector {
            terms: vec![VTerm { pos, mono: Monomial::one(ring.nvars()), coeff: ring.field().one() }],
        }
    }

    /// c·x^u·e_pos.
    pub fn term(pos: usize, mono: Monomial, coeff: Coeff) -> Self {
        if coeff.is_zero() {
            return Vector::zero();
        }
        Vector { terms: vec![VTerm { pos, mono, coeff }] }
    }

    /// Σ p_i e_i from a dense list of components.
    pub fn from_polys(polys: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (pos, p) in polys.iter().enumerate() {
            terms.extend(p.terms().iter().map(|(m, c)| VTerm { pos, mono: m.clone(), coeff: c.clone() }));
        }
        Vector { terms }
    }

    /// p·e_pos.
    pub fn from_poly_at(p: &Polynomial, pos: usize) -> Self {
        Vector {
            terms: p.terms().iter().map(|(m, c)| VTerm { pos, mono: m.clone(), coeff: c.clone() }).collect(),
        }
    }

    /// Σ p_i e_{pos_i} from sparse components (positions may repeat).
    pub fn from_components(ring: &Ring, comps: &[(usize, Polynomial)]) -> Self {
        let mut v = Vector::zero();
        for (pos, p) in comps {
            v = v.add(ring, &Vector::from_poly_at(p, *pos));
        }
        v
    }

    pub fn terms(&self) -> &[VTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&VTerm> {
        self.terms.first()
    }

    /// Component at basis index `pos`.
    pub fn component(&self, ring: &RingRef, pos: usize) -> Polynomial {
        Polynomial::from_sorted(
            ring,
            self.terms.iter().filter(|t| t.pos == pos).map(|t| (t.mono.clone(), t.coeff.clone())).collect(),
        )
    }

    /// Dense components up to `rank`.
    pub fn to_polys(&self, ring: &RingRef, rank: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.pos].push((t.mono.clone(), t.coeff.clone()));
        }
        buckets.into_iter().map(|b| Polynomial::from_sorted(ring, b)).collect()
    }

    /// Largest position index occurring, if any.
    pub fn max_pos(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.pos).max()
    }

    fn merge(&self, ring: &Ring, other: &[VTerm], factor: Option<(&Monomial, &Coeff)>, negate: bool) -> Vector {
        Vector { terms: merge_terms(ring, &self.terms, other, factor, negate) }
    }

    pub fn add(&self, ring: &Ring, other: &Vector) -> Vector {
        self.merge(ring, &other.terms, None, false)
    }

    pub fn sub(&self, ring: &Ring, other: &Vector) -> Vector {
        self.merge(ring, &other.terms, None, true)
    }

    /// self − c·m·other
    pub fn sub_mul_term(&self, ring: &Ring, m: &Monomial, c: &Coeff, other: &Vector) -> Vector {
        self.merge(ring, &other.terms, Some((m, c)), true)
    }

    pub fn neg(&self) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { pos: t.pos, mono: t.mono.clone(), coeff: -&t.coeff })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { pos: t.pos, mono: t.mono.clone(), coeff: &t.coeff * c })
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { pos: t.pos, mono: t.mono.mul(m), coeff: &t.coeff * c })
                .collect(),
        }
    }

    pub fn mul_poly(&self, ring: &Ring, p: &Polynomial) -> Vector {
        let mut acc = Vector::zero();
        for (m, c) in p.terms() {
            acc = acc.merge(ring, &self.terms, Some((m, c)), false);
        }
        acc
    }

    pub fn monic(&self) -> Vector {
        match self.lead() {
            Some(t) if !t.coeff.is_one() => self.scale(&t.coeff.inverse()),
            _ => self.clone(),
        }
    }

    /// Move every position p to p + offset.
    pub fn shifted(&self, offset: usize) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { pos: t.pos + offset, mono: t.mono.clone(), coeff: t.coeff.clone() })
                .collect(),
        }
    }

    /// Keep positions in `range`, renumbered from zero.
    pub fn project(&self, range: std::ops::Range<usize>) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| range.contains(&t.pos))
                .map(|t| VTerm { pos: t.pos - range.start, mono: t.mono.clone(), coeff: t.coeff.clone() })
                .collect(),
        }
    }

    /// Re-sort after positions were permuted by `map` (old → new, `None` drops the term).
    pub fn reindex(&self, ring: &Ring, map: impl Fn(usize) -> Option<usize>) -> Vector {
        let mut terms: Vec<VTerm> = self
            .terms
            .iter()
            .filter_map(|t| map(t.pos).map(|p| VTerm { pos: p, mono: t.mono.clone(), coeff: t.coeff.clone() }))
            .collect();
        terms.sort_by(|a, b| cmp_term(ring, (b.pos, &b.mono), (a.pos, &a.mono)));
        Vector { terms }
    }

    /// Σ c_j·v_j for polynomial coefficients c_j.
    pub fn combination(ring: &Ring, coeffs: &[Polynomial], vectors: &[Vector]) -> Vector {
        let mut acc = Vector::zero();
        for (c, v) in coeffs.iter().zip(vectors) {
            if !c.is_zero() {
                acc = acc.add(ring, &v.mul_poly(ring, c));
            }
        }
        acc
    }

    /// Apply a matrix given by its columns: Σ_j self_j · columns[j].
    pub fn apply_columns(&self, ring: &RingRef, columns: &[Vector]) -> Vector {
        let comps = self.to_polys(ring, columns.len());
        Vector::combination(ring, &comps, columns)
    }

    /// Multidegree of a homogeneous element w.r.t. basis degrees; `None` when
    /// zero or inhomogeneous.
    pub fn degree(&self, ring: &Ring, gen_degrees: &[Degree]) -> Option<Degree> {
        let mut it = self.terms.iter().map(|t| &ring.monomial_degree(&t.mono) + &gen_degrees[t.pos]);
        let d = it.next()?;
        for e in it {
            if e != d {
                return None;
            }
        }
        Some(d)
    }

    pub fn is_homogeneous(&self, ring: &Ring, gen_degrees: &[Degree]) -> bool {
        self.is_zero() || self.degree(ring, gen_degrees).is_some()
    }

    /// Standard (total) degree of the leading part, used for sugar and sorting.
    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.terms
            .iter()
            .map(|t| t.mono.total_degree() as i64 + weights.get(t.pos).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Every nonzero entry is a single term.
    pub fn is_monomial_vector(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].pos != w[1].pos)
    }

    pub fn display<'a>(&'a self, ring: &'a RingRef, rank: usize) -> impl fmt::Display + 'a {
        DisplayVector { v: self, ring, rank }
    }
}

struct DisplayVector<'a> {
    v: &'a Vector,
    ring: &'a RingRef,
    rank: usize,
}

impl fmt::Display for DisplayVector<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = self.v.to_polys(self.ring, self.rank.max(self.v.max_pos().map_or(0, |p| p + 1)));
        write!(f, "[")?;
        for (i, c) in comps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// a ± c·m·b over sorted term lists.
pub(crate) fn merge_terms(
    ring: &Ring,
    a: &[VTerm],
    b: &[VTerm],
    factor: Option<(&Monomial, &Coeff)>,
    negate: bool,
) -> Vec<VTerm> {
    let scaled = |t: &VTerm| -> VTerm {
        let (mono, coeff) = match factor {
            Some((m, c)) => (t.mono.mul(m), &t.coeff * c),
            None => (t.mono.clone(), t.coeff.clone()),
        };
        VTerm { pos: t.pos, mono, coeff: if negate { -&coeff } else { coeff } }
    };
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut pending: Option<VTerm> = b.first().map(scaled);
    while i < a.len() || pending.is_some() {
        let ord = match (a.get(i), pending.as_ref()) {
            (Some(x), Some(y)) => cmp_term(ring, (x.pos, &x.mono), (y.pos, &y.mono)),
            (Some(_), None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(pending.take().expect("pending term"));
                j += 1;
                pending = b.get(j).map(scaled);
            }
            Ordering::Equal => {
                let y = pending.take().expect("pending term");
                let c = &a[i].coeff + &y.coeff;
                if !c.is_zero() {
                    out.push(VTerm { pos: y.pos, mono: y.mono, coeff: c });
                }
                i += 1;
                j += 1;
                pending = b.get(j).map(scaled);
            }
        }
    }
    out
}
