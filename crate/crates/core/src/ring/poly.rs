use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Coeff, Degree, Monomial, Ring, RingRef};
use crate::error::{Error, Result};

/// Sparse polynomial with exact coefficients; terms are kept in strictly
/// decreasing order under the ring's monomial order, with no zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, Coeff)>,
}

/// Result of [`Polynomial::degree_of`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeOf {
    Homogeneous(Degree),
    Inhomogeneous,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        Ring::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &RingRef, c: Coeff) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Coeff) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity differs from ring");
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Build from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity differs from ring");
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Trusted constructor: terms already sorted descending with nonzero coefficients.
    pub(crate) fn from_sorted(ring: &RingRef, terms: Vec<(Monomial, Coeff)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0).is_gt()));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// A nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_unit() && self.terms[0].1.is_one()
    }

    /// Single term (scalar times monomial).
    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn lead(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Ring::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => ring.cmp(&a.0, &b.0),
                (Some(_), None) => std::cmp::Ordering::Greater,
                _ => std::cmp::Ordering::Less,
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { -c } else { c.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial::from_sorted(ring, out)
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        Polynomial::from_terms(
            &self.ring,
            self.terms
                .iter()
                .flat_map(|(a, c)| other.terms.iter().map(move |(b, d)| (a.mul(b), c * d))),
        )
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_sorted(&self.ring, self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect())
    }

    /// Multiply by the term c·m; the term order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_sorted(
            &self.ring,
            self.terms.iter().map(|(a, d)| (a.mul(m), d * c)).collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = self.ring.one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.product(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base);
            }
        }
        result
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.lead_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inverse()),
            _ => self.clone(),
        }
    }

    /// Common (multi)degree of all terms, or the inhomogeneous marker.
    pub fn degree_of(&self) -> Result<DegreeOf> {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.monomial_degree(m));
        let first = it.next().ok_or(Error::ZeroDegree)?;
        for d in it {
            if d != first {
                return Ok(DegreeOf::Inhomogeneous);
            }
        }
        Ok(DegreeOf::Homogeneous(first))
    }

    /// Degree when homogeneous (zero counts as homogeneous of any degree, reported as `None`).
    pub fn homogeneous_degree(&self) -> Option<Degree> {
        match self.degree_of() {
            Ok(DegreeOf::Homogeneous(d)) => Some(d),
            _ => None,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || matches!(self.degree_of(), Ok(DegreeOf::Homogeneous(_)))
    }

    pub fn max_total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    /// The same polynomial viewed in `target`, which must have the same
    /// field and at least as many variables (new variables appended).
    pub fn embed(&self, target: &RingRef) -> Polynomial {
        let extra = target.nvars() - self.ring.nvars();
        Polynomial::from_terms(target, self.terms.iter().map(|(m, c)| (m.extended(extra), c.clone())))
    }

    /// Reinterpret in a ring with the same variables but different grading or order.
    pub fn reinterpret(&self, target: &RingRef) -> Polynomial {
        assert_eq!(target.nvars(), self.ring.nvars());
        Polynomial::from_terms(target, self.terms.iter().cloned())
    }

    /// Each term as its own monomial polynomial with coefficient 1.
    pub fn term_monomials(&self) -> Vec<Monomial> {
        self.terms.iter().map(|(m, _)| m.clone()).collect()
    }
}

/// True iff every generator is homogeneous for its ring's grading.
pub fn homogeneity_check(gens: &[Polynomial]) -> bool {
    gens.iter().all(Polynomial::is_homogeneous)
}

/// Arithmetic operation selector for [`poly_arith`].
#[derive(Clone, Debug)]
pub enum PolyOp {
    Add,
    Mul,
    Scalar(Coeff),
}

/// `f op g` with a ring-mismatch check; `Scalar` ignores `g` apart from the ring check.
pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    match op {
        PolyOp::Add => f.checked_add(g),
        PolyOp::Mul => f.checked_mul(g),
        PolyOp::Scalar(c) => {
            f.check_ring(g)?;
            Ok(f.scale(&c))
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_sorted(&self.ring, self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }
}

pub(crate) fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", ring.variables()[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    if first {
        write!(f, "1")?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, &self.ring, m)?;
            }
        }
        Ok(())
    }
}
