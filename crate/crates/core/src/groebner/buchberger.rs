use std::cmp::Ordering;

use super::vector::{cmp_term, merge_terms, VTerm, Vector};
use crate::ring::{Coeff, Monomial, Polynomial, Ring, RingRef};

/// A Gröbner basis of a submodule of R^rank under position-over-term order.
/// Ideals are the rank-1 case.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: RingRef,
    rank: usize,
    elements: Vec<Vector>,
    reduced: bool,
}

struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
    sugar: i64,
}

struct Engine<'a> {
    ring: &'a Ring,
    rank: usize,
    weights: &'a [i64],
    polys: Vec<Vector>,
    sugar: Vec<i64>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

/// Full normal form of `v` modulo `basis` (leading terms of `basis` are assumed monic-free;
/// any nonzero leading coefficient works).
pub(crate) fn reduce_with(ring: &Ring, v: &Vector, basis: &[&Vector]) -> Vector {
    let mut rest: Vec<VTerm> = v.terms().to_vec();
    let mut out: Vec<VTerm> = Vec::new();
    let mut idx = 0;
    while idx < rest.len() {
        let t = &rest[idx];
        let divisor = basis.iter().find(|g| {
            let l = g.lead().expect("nonzero basis element");
            l.pos == t.pos && l.mono.divides(&t.mono)
        });
        match divisor {
            Some(g) => {
                let l = g.lead().expect("nonzero");
                let q = l.mono.quotient_of(&t.mono).expect("divides");
                let c = &t.coeff * &l.coeff.inverse();
                rest = merge_terms(ring, &rest[idx + 1..], &g.terms()[1..], Some((&q, &c)), true);
                idx = 0;
            }
            None => {
                out.push(t.clone());
                idx += 1;
            }
        }
    }
    Vector::from_sorted(out)
}

impl<'a> Engine<'a> {
    fn active_refs(&self) -> Vec<&Vector> {
        self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p).collect()
    }

    fn lead(&self, i: usize) -> &VTerm {
        self.polys[i].lead().expect("nonzero element")
    }

    /// Insert a reduced, monic, nonzero element and update pairs (Gebauer–Möller).
    fn insert(&mut self, h: Vector, sugar: i64) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
        let (hpos, hmono) = {
            let l = self.lead(hi);
            (l.pos, l.mono.clone())
        };
        // product criterion only holds for ideals
        let ideal = self.rank == 1;

        let mut c: Vec<(usize, Monomial)> = (0..hi)
            .filter(|&g| self.active[g] && self.lead(g).pos == hpos)
            .map(|g| (g, self.lead(g).mono.lcm(&hmono)))
            .collect();
        let mut d: Vec<(usize, Monomial)> = Vec::new();
        while !c.is_empty() {
            let (g1, l1) = c.remove(0);
            let coprime = ideal && hmono.is_coprime(&self.lead(g1).mono);
            let dominated = c.iter().chain(d.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                d.push((g1, l1));
            }
        }
        let new_pairs: Vec<Pair> = d
            .into_iter()
            .filter(|(g, _)| !(ideal && hmono.is_coprime(&self.lead(*g).mono)))
            .map(|(g, lcm)| {
                let sugar = self.pair_sugar(g, hi, &lcm);
                Pair { i: g, j: hi, pos: hpos, lcm, sugar }
            })
            .collect();

        let polys = &self.polys;
        let lead_of = |k: usize| polys[k].lead().expect("nonzero");
        self.pairs.retain(|p| {
            if p.pos != hpos || !hmono.divides(&p.lcm) {
                return true;
            }
            let li = lead_of(p.i).mono.lcm(&hmono);
            let lj = lead_of(p.j).mono.lcm(&hmono);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);

        for g in 0..hi {
            if self.active[g] && self.lead(g).pos == hpos && hmono.divides(&self.lead(g).mono) {
                self.active[g] = false;
            }
        }
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> i64 {
        let di = (lcm.total_degree() - self.lead(i).mono.total_degree()) as i64;
        let dj = (lcm.total_degree() - self.lead(j).mono.total_degree()) as i64;
        (self.sugar[i] + di).max(self.sugar[j] + dj)
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = self.ring;
        let best = (0..self.pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&self.pairs[a], &self.pairs[b]);
                p.sugar
                    .cmp(&q.sugar)
                    .then_with(|| cmp_term(ring, (p.pos, &p.lcm), (q.pos, &q.lcm)))
                    .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
            })
            .expect("nonempty");
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Vector {
        let (li, lj) = (self.lead(p.i), self.lead(p.j));
        let qi = li.mono.quotient_of(&p.lcm).expect("lcm");
        let qj = lj.mono.quotient_of(&p.lcm).expect("lcm");
        let one = self.ring.field().one();
        let a = self.polys[p.i].mul_term(&qi, &one);
        a.sub_mul_term(self.ring, &qj, &one, &self.polys[p.j])
    }

    fn add_generator(&mut self, v: &Vector) {
        let sugar = v.weighted_degree(self.weights);
        let h = reduce_with(self.ring, v, &self.active_refs());
        if !h.is_zero() {
            self.insert(h.monic(), sugar);
        }
    }

    fn run(&mut self) {
        while let Some(p) = self.select() {
            let s = self.spoly(&p);
            let h = reduce_with(self.ring, &s, &self.active_refs());
            if !h.is_zero() {
                self.insert(h.monic(), p.sugar);
            }
        }
    }

    /// Minimal, monic, tail-reduced basis sorted by decreasing lead term.
    fn finish(self) -> Vec<Vector> {
        let ring = self.ring;
        let mut basis: Vec<Vector> =
            self.polys.into_iter().zip(self.active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
        basis.sort_by(|a, b| {
            let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
            cmp_term(ring, (y.pos, &y.mono), (x.pos, &x.mono))
        });
        let mut out = Vec::with_capacity(basis.len());
        for k in 0..basis.len() {
            let others: Vec<&Vector> = basis.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, v)| v).collect();
            let g = &basis[k];
            let lead = g.lead().unwrap().clone();
            let tail = Vector::from_sorted(g.terms()[1..].to_vec());
            let tail = reduce_with(ring, &tail, &others);
            let mut terms = vec![lead];
            terms.extend(tail.terms().iter().cloned());
            out.push(Vector::from_sorted(terms).monic());
        }
        out
    }
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of the submodule generated by `gens` in R^rank.
    pub fn new(ring: &RingRef, rank: usize, gens: &[Vector]) -> Self {
        Self::with_weights(ring, rank, gens, &[])
    }

    /// As [`GroebnerBasis::new`], with per-position degree weights used by the sugar strategy.
    pub fn with_weights(ring: &RingRef, rank: usize, gens: &[Vector], weights: &[i64]) -> Self {
        let mut engine = Engine {
            ring,
            rank,
            weights,
            polys: Vec::new(),
            sugar: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        };
        let mut sorted: Vec<&Vector> = gens.iter().filter(|g| !g.is_zero()).collect();
        // smallest leading terms first keeps the interreduction cheap and deterministic
        sorted.sort_by(|a, b| {
            let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
            a.weighted_degree(weights)
                .cmp(&b.weighted_degree(weights))
                .then_with(|| cmp_term(ring, (x.pos, &x.mono), (y.pos, &y.mono)))
        });
        for g in sorted {
            debug_assert!(g.max_pos().is_none_or(|p| p < rank), "position out of range");
            engine.add_generator(g);
        }
        engine.run();
        GroebnerBasis { ring: ring.clone(), rank, elements: engine.finish(), reduced: true }
    }

    /// Gröbner basis of an ideal.
    pub fn ideal(ring: &RingRef, gens: &[Polynomial]) -> Self {
        let vs: Vec<Vector> = gens.iter().map(|g| Vector::from_poly_at(g, 0)).collect();
        Self::new(ring, 1, &vs)
    }

    /// Gröbner basis of this submodule plus `more`, reusing the existing basis.
    pub fn extend(&self, more: &[Vector]) -> Self {
        let mut engine = Engine {
            ring: &self.ring,
            rank: self.rank,
            weights: &[],
            polys: Vec::new(),
            sugar: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        };
        for g in &self.elements {
            engine.polys.push(g.clone());
            engine.sugar.push(g.weighted_degree(&[]));
            engine.active.push(true);
        }
        for g in more.iter().filter(|g| !g.is_zero()) {
            engine.add_generator(g);
        }
        engine.run();
        let elements = engine.finish();
        GroebnerBasis { ring: self.ring.clone(), rank: self.rank, elements, reduced: true }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[Vector] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Ideal case: the basis as polynomials.
    pub fn polys(&self) -> Vec<Polynomial> {
        self.elements.iter().map(|v| v.component(&self.ring, 0)).collect()
    }

    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elements.iter().map(|v| v.lead().map(|t| (t.pos, t.mono.clone())).unwrap()).collect()
    }

    pub fn normal_form(&self, v: &Vector) -> Vector {
        let refs: Vec<&Vector> = self.elements.iter().collect();
        reduce_with(&self.ring, v, &refs)
    }

    pub fn normal_form_poly(&self, f: &Polynomial) -> Polynomial {
        self.normal_form(&Vector::from_poly_at(f, 0)).component(&self.ring, 0)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.normal_form(v).is_zero()
    }

    pub fn contains_poly(&self, f: &Polynomial) -> bool {
        self.contains(&Vector::from_poly_at(f, 0))
    }

    /// Every generator of `other` lies in this submodule.
    pub fn contains_all(&self, other: &[Vector]) -> bool {
        other.iter().all(|v| self.contains(v))
    }

    /// True when the submodule is all of R^rank.
    pub fn is_everything(&self) -> bool {
        let mut hit = vec![false; self.rank];
        for v in &self.elements {
            let l = v.lead().unwrap();
            if l.mono.is_one() {
                hit[l.pos] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }

    /// Ideal case: 1 ∈ I.
    pub fn is_unit_ideal(&self) -> bool {
        self.rank == 1 && self.is_everything()
    }

    /// Standard monomial x^u e_pos (not divisible by any leading term).
    pub fn is_standard(&self, pos: usize, m: &Monomial) -> bool {
        !self.elements.iter().any(|v| {
            let l = v.lead().unwrap();
            l.pos == pos && l.mono.divides(m)
        })
    }

    /// Check that every S-pair reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let (a, b) = (&self.elements[i], &self.elements[j]);
                let (la, lb) = (a.lead().unwrap(), b.lead().unwrap());
                if la.pos != lb.pos {
                    continue;
                }
                let lcm = la.mono.lcm(&lb.mono);
                let qa = la.mono.quotient_of(&lcm).unwrap();
                let qb = lb.mono.quotient_of(&lcm).unwrap();
                let ca = la.coeff.inverse();
                let cb: Coeff = lb.coeff.inverse();
                let s = a.mul_term(&qa, &ca).sub_mul_term(&self.ring, &qb, &cb, b);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced basis: no leading term divides another and leading coefficients are 1.
    pub fn check_reduced(&self) -> bool {
        let leads = self.leading_terms();
        for (i, (p, m)) in leads.iter().enumerate() {
            if !self.elements[i].lead().unwrap().coeff.is_one() {
                return false;
            }
            for (j, (q, n)) in leads.iter().enumerate() {
                if i != j && p == q && m.divides(n) {
                    return false;
                }
            }
        }
        true
    }
}

/// Order two module terms (exposed for tests of the position-over-term convention).
pub fn compare_terms(ring: &Ring, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    cmp_term(ring, a, b)
}
