use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::fpmod::ModulePresentation;
use crate::groebner::Vector;
use crate::linalg::Matrix;
use crate::ring::{Degree, Field, Grading, Monomial, Polynomial, RingRef};

/// A monomial ideal by its minimal generators (exponent vectors).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut all: Vec<Vec<u32>> = gens.into_iter().collect();
        all.sort_by_key(|g| (g.iter().sum::<u32>(), g.clone()));
        all.dedup();
        let mut min: Vec<Vec<u32>> = Vec::new();
        for g in all {
            if !min.iter().any(|h| h.iter().zip(&g).all(|(a, b)| a <= b)) {
                min.push(g);
            }
        }
        MonomialIdeal { nvars, gens: min }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    /// Generators given as polynomials; each nonzero one must be a single term.
    pub fn from_polys(nvars: usize, polys: &[Polynomial]) -> Result<Self> {
        let mut gens = Vec::new();
        for p in polys.iter().filter(|p| !p.is_zero()) {
            if !p.is_term() {
                return Err(Error::NotMonomial(format!("{p} is not a monomial")));
            }
            gens.push(p.terms()[0].0.exponents().to_vec());
        }
        Ok(MonomialIdeal::new(nvars, gens))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    pub fn contains(&self, e: &[u32]) -> bool {
        self.gens.iter().any(|g| g.iter().zip(e).all(|(a, b)| a <= b))
    }

    /// (I : x^m)
    pub fn colon(&self, m: &[u32]) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().map(|g| g.iter().zip(m).map(|(a, b)| a.saturating_sub(*b)).collect()))
    }

    /// Largest exponent of each variable among the generators.
    pub fn exponent_bounds(&self) -> Vec<u32> {
        (0..self.nvars).map(|j| self.gens.iter().map(|g| g[j]).max().unwrap_or(0)).collect()
    }

    /// Bitmask of variables occurring in each generator.
    pub fn supports(&self) -> Vec<u64> {
        self.gens.iter().map(|g| support_of(g)).collect()
    }

    pub fn to_polys(&self, ring: &RingRef) -> Vec<Polynomial> {
        self.gens
            .iter()
            .map(|g| Polynomial::monomial(ring, Monomial::from_exponents(g.iter().copied()), ring.field().one()))
            .collect()
    }
}

pub(crate) fn support_of(g: &[u32]) -> u64 {
    g.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |acc, (j, _)| acc | 1 << j)
}

/// R(−twist)/I
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub twist: Vec<i64>,
    pub ideal: MonomialIdeal,
}

impl Summand {
    /// Does x^(d − twist) give a nonzero element of (R/I)_{x^S} in degree d?
    pub fn survives(&self, s: u64, d: &[i64]) -> bool {
        let e: Vec<i64> = d.iter().zip(&self.twist).map(|(a, b)| a - b).collect();
        for (j, &ej) in e.iter().enumerate() {
            if s & (1 << j) == 0 && ej < 0 {
                return false;
            }
        }
        !self.ideal.gens().iter().any(|g| {
            g.iter().enumerate().all(|(j, &gj)| s & (1 << j) != 0 || i64::from(gj) <= e[j])
        })
    }
}

/// A finite direct sum of twisted cyclic monomial quotients over a fine-graded ring.
#[derive(Clone, Debug)]
pub struct AdmissibleModule {
    ring: RingRef,
    summands: Vec<Summand>,
}

impl AdmissibleModule {
    pub fn new(ring: &RingRef, summands: Vec<Summand>) -> Result<Self> {
        for s in &summands {
            if s.twist.len() != ring.nvars() || s.ideal.nvars() != ring.nvars() {
                return Err(Error::Shape("summand does not match the ring".into()));
            }
        }
        Ok(AdmissibleModule { ring: fine(ring), summands })
    }

    /// R/I with I monomial, untwisted.
    pub fn cyclic(ring: &RingRef, ideal: &[Polynomial]) -> Result<Self> {
        let n = ring.nvars();
        AdmissibleModule::new(ring, vec![Summand { twist: vec![0; n], ideal: MonomialIdeal::from_polys(n, ideal)? }])
    }

    pub fn zero(ring: &RingRef) -> Self {
        AdmissibleModule { ring: fine(ring), summands: Vec::new() }
    }

    pub fn direct_sum(&self, other: &AdmissibleModule) -> Self {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        AdmissibleModule { ring: self.ring.clone(), summands }
    }

    /// Recognize M as ⊕ R(−d_j)/I_j: every relation a single term. Fine-graded rings
    /// keep their twists; otherwise generator twists are set to zero, which is
    /// harmless for support and vanishing questions.
    pub fn from_presentation(m: &ModulePresentation) -> Result<Self> {
        let n = m.ring().nvars();
        let mut ideals: Vec<Vec<Vec<u32>>> = vec![Vec::new(); m.ngens()];
        for r in m.relations() {
            if r.terms().len() != 1 {
                return Err(Error::NotAdmissible("a relation has more than one term".into()));
            }
            let t = &r.terms()[0];
            ideals[t.pos].push(t.mono.exponents().to_vec());
        }
        let summands = ideals
            .into_iter()
            .enumerate()
            .map(|(j, gens)| Summand {
                twist: if m.ring().grading() == Grading::Fine { m.degrees()[j].0.clone() } else { vec![0; n] },
                ideal: MonomialIdeal::new(n, gens),
            })
            .collect();
        AdmissibleModule::new(m.ring(), summands)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.iter().all(|s| s.ideal.is_unit())
    }

    /// The same module as a presentation over the fine-graded ring.
    pub fn to_presentation(&self) -> ModulePresentation {
        let ring = &self.ring;
        let degrees: Vec<Degree> = self.summands.iter().map(|s| Degree(s.twist.clone())).collect();
        let mut rels = Vec::new();
        for (j, s) in self.summands.iter().enumerate() {
            for g in s.ideal.gens() {
                rels.push(Vector::term(j, Monomial::from_exponents(g.iter().copied()), ring.field().one()));
            }
        }
        ModulePresentation::new(ring, degrees, rels).expect("monomial relations are homogeneous")
    }

    /// Per-coordinate values where survival predicates can change.
    pub fn critical_values(&self) -> Vec<Vec<i64>> {
        let n = self.nvars();
        let mut out = vec![Vec::new(); n];
        for s in &self.summands {
            for j in 0..n {
                out[j].push(s.twist[j]);
                for g in s.ideal.gens() {
                    out[j].push(s.twist[j] + i64::from(g[j]));
                }
            }
        }
        out
    }
}

impl fmt::Display for AdmissibleModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        for (k, s) in self.summands.iter().enumerate() {
            if k > 0 {
                write!(f, " ++ ")?;
            }
            let gens: Vec<String> = s.ideal.to_polys(&self.ring).iter().map(|p| p.to_string()).collect();
            write!(f, "R/({})", if gens.is_empty() { "0".to_string() } else { gens.join(", ") })?;
            if s.twist.iter().any(|&t| t != 0) {
                write!(f, "({})", Degree(s.twist.iter().map(|t| -t).collect()))?;
            }
        }
        Ok(())
    }
}

/// The same variables and field with the fine grading.
pub fn fine(ring: &RingRef) -> RingRef {
    if ring.grading() == Grading::Fine {
        ring.clone()
    } else {
        ring.with_grading(Grading::Fine)
    }
}

/// Re-grade a presentation with monomial relation entries over the fine ring,
/// inferring generator multidegrees from the relations. Each connected group of
/// generators is anchored at its standard degree placed on the first variable.
pub fn fine_presentation(m: &ModulePresentation) -> Result<ModulePresentation> {
    let ring = fine(m.ring());
    if m.ring().grading() == Grading::Fine {
        return Ok(m.clone());
    }
    let n = ring.nvars();
    let k = m.ngens();
    let mut adj: Vec<Vec<(usize, Vec<i64>)>> = vec![Vec::new(); k];
    for r in m.relations() {
        let mut comps: HashMap<usize, Vec<i64>> = HashMap::new();
        for t in r.terms() {
            if comps.insert(t.pos, t.mono.exponents().iter().map(|&e| i64::from(e)).collect()).is_some() {
                return Err(Error::NotMonomial("relation entry is not a single term".into()));
            }
        }
        let comps: Vec<(usize, Vec<i64>)> = comps.into_iter().collect();
        for (a, ea) in &comps {
            for (b, eb) in &comps {
                if a != b {
                    // deg_b = deg_a + ea − eb
                    adj[*a].push((*b, ea.iter().zip(eb).map(|(x, y)| x - y).collect()));
                }
            }
        }
    }
    let mut deg: Vec<Option<Vec<i64>>> = vec![None; k];
    for root in 0..k {
        if deg[root].is_some() {
            continue;
        }
        let mut d0 = vec![0; n];
        if n > 0 {
            d0[0] = m.degrees()[root].total();
        }
        deg[root] = Some(d0);
        let mut queue = VecDeque::from([root]);
        while let Some(a) = queue.pop_front() {
            let da = deg[a].clone().expect("visited");
            for (b, shift) in &adj[a] {
                let want: Vec<i64> = da.iter().zip(shift).map(|(x, y)| x + y).collect();
                match &deg[*b] {
                    None => {
                        deg[*b] = Some(want);
                        queue.push_back(*b);
                    }
                    Some(have) if *have != want => {
                        return Err(Error::Inhomogeneous("relations admit no consistent multigrading".into()))
                    }
                    _ => {}
                }
            }
        }
    }
    let degrees = deg.into_iter().map(|d| Degree(d.expect("assigned"))).collect();
    let rels = m.relations().to_vec();
    ModulePresentation::new(&ring, degrees, rels)
}

/// Access to the localized graded pieces (X_{x^S})_e of a fine-graded module.
pub trait GradedPieces {
    fn field(&self) -> Field;

    fn nvars(&self) -> usize;

    /// dim_k (X_{x^S})_e
    fn local_dim(&self, s: u64, e: &[i64]) -> Result<usize>;

    /// (X_{x^S1})_e → (X_{x^S2})_{e+mu}: localize (S1 ⊆ S2), then multiply by x^mu.
    fn local_map(&self, s1: u64, s2: u64, e: &[i64], mu: &[i64]) -> Result<Matrix>;

    /// Per-coordinate values where the pieces may change; below the minimum and
    /// from the maximum on, all pieces and maps are constant in that coordinate.
    fn critical_values(&self) -> Vec<Vec<i64>>;
}

impl GradedPieces for AdmissibleModule {
    fn field(&self) -> Field {
        self.ring.field()
    }

    fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    fn local_dim(&self, s: u64, e: &[i64]) -> Result<usize> {
        Ok(self.summands.iter().filter(|m| m.survives(s, e)).count())
    }

    fn local_map(&self, s1: u64, s2: u64, e: &[i64], mu: &[i64]) -> Result<Matrix> {
        let target: Vec<i64> = e.iter().zip(mu).map(|(a, b)| a + b).collect();
        let src: Vec<usize> = (0..self.summands.len()).filter(|&k| self.summands[k].survives(s1, e)).collect();
        let dst: Vec<usize> = (0..self.summands.len()).filter(|&k| self.summands[k].survives(s2, &target)).collect();
        let mut m = Matrix::zeros(self.field(), dst.len(), src.len());
        for (c, k) in src.iter().enumerate() {
            if let Some(r) = dst.iter().position(|x| x == k) {
                m.set(r, c, self.field().one());
            }
        }
        Ok(m)
    }

    fn critical_values(&self) -> Vec<Vec<i64>> {
        AdmissibleModule::critical_values(self)
    }
}
