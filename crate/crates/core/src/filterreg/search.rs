use std::collections::HashSet;

use super::grade::{ext_scan, ExtCertificate};
use super::{extend_by_element, is_fr_element, StepWitness};
use crate::error::Result;
use crate::fpmod::{annihilator_of_subquotient, ModulePresentation};
use crate::groebner::{colon_ideal, radical_contains, GroebnerBasis, Vector};
use crate::ring::{monomials_of_degree, Grading, Polynomial, RingRef};

/// Two fixed candidate orders; the maximal length found must not depend on the choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EnumerationOrder {
    /// degree ascending, lex descending, generators in basis order
    #[default]
    Forward,
    /// degree ascending, lex ascending, generators in reversed basis order
    Reversed,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub order: EnumerationOrder,
    pub max_candidates: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { order: EnumerationOrder::Forward, max_candidates: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StopReason {
    ReachedTarget,
    /// Supp Hom(R/b, M/(x)M) ⊄ V(a): no element of b extends the sequence.
    Maximal,
    /// The candidate cap was hit although an extension exists.
    Exhausted { tried: usize },
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub sequence: Vec<Polynomial>,
    pub witnesses: Vec<StepWitness>,
    pub stop: StopReason,
    /// Ann Hom(R/b, M/(x)M) at the point where the search stopped
    pub hom_annihilator: Vec<Polynomial>,
    /// when maximal: Supp Ext^len(R/b, M) ⊄ V(a), so no longer sequence exists
    pub certificate: Option<ExtCertificate>,
}

/// Can the sequence be extended inside b? Decided by Supp((U :_F b)/U) ⊆ V(a).
pub(crate) fn extension_exists(
    ring: &RingRef,
    a: &[Polynomial],
    b: &[Polynomial],
    u: &[Vector],
    rank: usize,
) -> Result<(bool, Vec<Polynomial>)> {
    if rank == 0 {
        return Ok((true, vec![ring.one()]));
    }
    let ann = if b.iter().all(Polynomial::is_zero) {
        let units: Vec<Vector> = (0..rank).map(|j| Vector::unit(ring, j)).collect();
        annihilator_of_subquotient(ring, rank, &units, u)
    } else {
        let c = colon_ideal(ring, rank, u, b)?;
        annihilator_of_subquotient(ring, rank, &c, u)
    };
    Ok((radical_contains(ring, &ann, a), ann))
}

/// Greedy construction of an a-filter regular M-sequence in b of length up to `target`.
pub fn find_fr_sequence(
    a: &[Polynomial],
    b: &[Polynomial],
    m: &ModulePresentation,
    target: usize,
    opts: SearchOptions,
) -> Result<SearchOutcome> {
    search(a, b, m, target, opts, true)
}

pub(crate) fn search(
    a: &[Polynomial],
    b: &[Polynomial],
    m: &ModulePresentation,
    target: usize,
    opts: SearchOptions,
    certify: bool,
) -> Result<SearchOutcome> {
    let ring = m.ring();
    let rank = m.ngens();
    let mut u = m.relations().to_vec();
    let mut sequence = Vec::new();
    let mut witnesses = Vec::new();
    let gb = GroebnerBasis::ideal(ring, b);
    let b_gens = gb.polys();
    loop {
        let (exists, ann) = extension_exists(ring, a, &b_gens, &u, rank)?;
        if sequence.len() >= target {
            return Ok(SearchOutcome {
                sequence,
                witnesses,
                stop: StopReason::ReachedTarget,
                hom_annihilator: ann,
                certificate: None,
            });
        }
        if !exists {
            let certificate = if certify { ext_scan(a, b, m)?.1 } else { None };
            return Ok(SearchOutcome { sequence, witnesses, stop: StopReason::Maximal, hom_annihilator: ann, certificate });
        }
        let mut tried = 0usize;
        let mut found = None;
        for cand in Candidates::new(ring, &gb, opts.order) {
            if tried >= opts.max_candidates {
                break;
            }
            tried += 1;
            let w = is_fr_element(a, &cand, &u, m)?;
            if w.passes {
                found = Some(w);
                break;
            }
        }
        match found {
            Some(w) => {
                extend_by_element(&mut u, &w.element, rank);
                sequence.push(w.element.clone());
                witnesses.push(w);
            }
            None => {
                return Ok(SearchOutcome {
                    sequence,
                    witnesses,
                    stop: StopReason::Exhausted { tried },
                    hom_annihilator: ann,
                    certificate: None,
                })
            }
        }
    }
}

/// Candidate stream: monomials of b, then small combinations of a spanning set
/// of b in its top generator degree, then points on the moment curve.
struct Candidates {
    stages: Vec<Polynomial>,
    pos: usize,
    pool: Vec<Polynomial>,
    t: i64,
    t_max: i64,
    seen: HashSet<Vec<(Vec<u32>, String)>>,
}

fn key(p: &Polynomial) -> Vec<(Vec<u32>, String)> {
    p.terms().iter().map(|(m, c)| (m.exponents().to_vec(), c.to_string())).collect()
}

impl Candidates {
    fn new(ring: &RingRef, gb: &GroebnerBasis, order: EnumerationOrder) -> Self {
        let gens = gb.polys();
        let mut stages = Vec::new();
        let mut pool = Vec::new();
        let degs: Vec<u32> = gens.iter().map(Polynomial::max_total_degree).collect();
        if let (Some(&lo), Some(&hi)) = (degs.iter().min(), degs.iter().max()) {
            for d in lo..=hi + 1 {
                let mut monos = monomials_of_degree(ring.nvars(), d);
                if order == EnumerationOrder::Reversed {
                    monos.reverse();
                }
                for mo in monos {
                    let f = Polynomial::monomial(ring, mo, ring.field().one());
                    if gb.contains_poly(&f) {
                        stages.push(f);
                    }
                }
            }
            if ring.grading() == Grading::Standard {
                pool = spanning_set(ring, &gens, hi);
                if order == EnumerationOrder::Reversed {
                    pool.reverse();
                }
                stages.extend(small_combinations(ring, &pool));
            }
        }
        let t_max = 4 * (pool.len() as i64 + 2) * (pool.len() as i64 + 2);
        Candidates { stages, pos: 0, pool, t: 2, t_max, seen: HashSet::new() }
    }
}

impl Iterator for Candidates {
    type Item = Polynomial;

    fn next(&mut self) -> Option<Polynomial> {
        loop {
            let cand = if self.pos < self.stages.len() {
                self.pos += 1;
                self.stages[self.pos - 1].clone()
            } else if !self.pool.is_empty() && self.t <= self.t_max {
                // Σ t^k v_k avoids any proper subspace for all but finitely many t
                let ring = self.pool[0].ring().clone();
                let mut acc = ring.zero();
                let mut c = ring.field().one();
                let t = ring.field().from_i64(self.t);
                for v in &self.pool {
                    acc = &acc + &v.scale(&c);
                    c = &c * &t;
                }
                self.t += 1;
                acc
            } else {
                return None;
            };
            if cand.is_zero() || !cand.is_homogeneous() {
                continue;
            }
            let cand = cand.monic();
            if self.seen.insert(key(&cand)) {
                return Some(cand);
            }
        }
    }
}

/// Products m·g of degree d spanning b_d.
fn spanning_set(ring: &RingRef, gens: &[Polynomial], d: u32) -> Vec<Polynomial> {
    let one = ring.field().one();
    let mut out: Vec<Polynomial> = Vec::new();
    let mut seen = HashSet::new();
    for g in gens {
        let dg = g.max_total_degree();
        if dg > d {
            continue;
        }
        for mo in monomials_of_degree(ring.nvars(), d - dg) {
            let p = g.mul_term(&mo, &one).monic();
            if seen.insert(key(&p)) {
                out.push(p);
            }
        }
    }
    out
}

/// Pool elements, then pairs v_i + c·v_j and triples v_i + c·v_j + e·v_k with |c|,|e| ≤ 3.
fn small_combinations(ring: &RingRef, pool: &[Polynomial]) -> Vec<Polynomial> {
    let coeffs: Vec<i64> = vec![1, -1, 2, -2, 3, -3];
    let f = ring.field();
    let mut out: Vec<Polynomial> = pool.to_vec();
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            for &c in &coeffs {
                out.push(&pool[i] + &pool[j].scale(&f.from_i64(c)));
            }
        }
    }
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            for k in j + 1..pool.len() {
                for &c in &coeffs[..2] {
                    for &e in &coeffs[..2] {
                        out.push(&(&pool[i] + &pool[j].scale(&f.from_i64(c))) + &pool[k].scale(&f.from_i64(e)));
                    }
                }
            }
        }
    }
    out
}
