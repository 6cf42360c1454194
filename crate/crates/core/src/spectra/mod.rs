//! Artinianness of generalized local cohomology, associated primes of monomial
//! modules, and attached primes of top generalized local cohomology.

mod artinian;
mod att;

use std::fmt;

pub use artinian::{all_artinian, artinian_index, localized_artinian_check, ArtinianIndex, LocalizedCheck};
pub use att::{att_top_gen, att_top_local, cd_properties_audit, cd_test, AttReport, AttRoute, CdAudit, CdWitness};

use crate::cechloc::{AdmissibleModule, MonomialIdeal};
use crate::error::{Error, Result};
use crate::ring::{Monomial, Polynomial, RingRef};

/// The prime (x_i : i ∈ S) of a polynomial ring, S stored as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialPrime {
    nvars: usize,
    mask: u64,
}

impl MonomialPrime {
    pub fn new(nvars: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let mask = vars.into_iter().fold(0u64, |acc, i| {
            assert!(i < nvars, "variable index out of range");
            acc | 1 << i
        });
        MonomialPrime { nvars, mask }
    }

    pub fn from_mask(nvars: usize, mask: u64) -> Self {
        let full = if nvars >= 64 { u64::MAX } else { (1u64 << nvars) - 1 };
        MonomialPrime { nvars, mask: mask & full }
    }

    /// The zero ideal (0).
    pub fn zero(nvars: usize) -> Self {
        MonomialPrime { nvars, mask: 0 }
    }

    pub fn maximal(nvars: usize) -> Self {
        MonomialPrime::from_mask(nvars, u64::MAX)
    }

    /// Parse generators that must all be variables.
    pub fn from_polys(ring: &RingRef, gens: &[Polynomial]) -> Result<Self> {
        let mut mask = 0u64;
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let var = g.is_term().then(|| g.terms()[0].0.clone()).filter(|m| m.total_degree() == 1);
            match var {
                Some(m) => mask |= m.support(),
                None => return Err(Error::NotMonomial(format!("{g} does not generate a monomial prime"))),
            }
        }
        Ok(MonomialPrime { nvars: ring.nvars(), mask })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars).filter(|i| self.mask & (1 << i) != 0).collect()
    }

    pub fn height(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// dim R/p = n − |S|
    pub fn dim(&self) -> i64 {
        (self.nvars - self.height()) as i64
    }

    pub fn is_maximal(&self) -> bool {
        self.height() == self.nvars
    }

    pub fn is_subset_of(&self, other: &MonomialPrime) -> bool {
        self.mask & !other.mask == 0
    }

    /// f ∈ p iff every term involves a variable of S.
    pub fn contains(&self, f: &Polynomial) -> bool {
        f.terms().iter().all(|(m, _)| m.support() & self.mask != 0)
    }

    pub fn contains_all(&self, ideal: &[Polynomial]) -> bool {
        ideal.iter().all(|f| self.contains(f))
    }

    pub fn to_polys(&self, ring: &RingRef) -> Vec<Polynomial> {
        self.variables().into_iter().map(|i| ring.var(i)).collect()
    }

    pub fn display(&self, ring: &RingRef) -> String {
        if self.mask == 0 {
            return "(0)".into();
        }
        let names: Vec<&str> = self.variables().into_iter().map(|i| ring.variables()[i].as_str()).collect();
        format!("({})", names.join(","))
    }
}

impl fmt::Display for MonomialPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mask == 0 {
            return write!(f, "(0)");
        }
        let names: Vec<String> = self.variables().into_iter().map(|i| format!("x{}", i + 1)).collect();
        write!(f, "({})", names.join(","))
    }
}

/// Ass R/I for a monomial ideal: p_S is associated iff (I : m) = p_S for some
/// monomial m ∉ I. Exponents above the largest generator exponent do not change
/// the colon, so the search is finite.
pub fn ass_of_monomial_ideal(ideal: &MonomialIdeal) -> Vec<MonomialPrime> {
    let n = ideal.nvars();
    if ideal.is_unit() {
        return Vec::new();
    }
    if ideal.gens().is_empty() {
        return vec![MonomialPrime::zero(n)];
    }
    let bounds = ideal.exponent_bounds();
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    loop {
        if !ideal.contains(&e) {
            let colon = ideal.colon(&e);
            let gens = colon.gens();
            if gens.iter().all(|g| g.iter().sum::<u32>() == 1) {
                let mask = gens.iter().fold(0u64, |acc, g| acc | Monomial::from_exponents(g.iter().copied()).support());
                let p = MonomialPrime::from_mask(n, mask);
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        let mut j = 0;
        loop {
            if j == n {
                out.sort();
                return out;
            }
            if e[j] < bounds[j] {
                e[j] += 1;
                break;
            }
            e[j] = 0;
            j += 1;
        }
    }
}

/// Ass N as the union over the summands.
pub fn ass_monomial(n: &AdmissibleModule) -> Vec<MonomialPrime> {
    let mut out: Vec<MonomialPrime> = Vec::new();
    for s in n.summands() {
        for p in ass_of_monomial_ideal(&s.ideal) {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

/// Minimal primes of a monomial ideal: minimal sets of variables meeting every generator.
pub fn minimal_primes_monomial(ring: &RingRef, ideal: &[Polynomial]) -> Result<Vec<MonomialPrime>> {
    let i = MonomialIdeal::from_polys(ring.nvars(), ideal)?;
    Ok(minimal_primes_of(&i))
}

pub(crate) fn minimal_primes_of(i: &MonomialIdeal) -> Vec<MonomialPrime> {
    let n = i.nvars();
    if i.is_unit() {
        return Vec::new();
    }
    let supports = i.supports();
    let mut covers: Vec<u64> = Vec::new();
    let mut masks: Vec<u64> = (0..1u64 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for s in masks {
        if supports.iter().all(|g| g & s != 0) && !covers.iter().any(|c| c & !s == 0) {
            covers.push(s);
        }
    }
    let mut out: Vec<MonomialPrime> = covers.into_iter().map(|s| MonomialPrime::from_mask(n, s)).collect();
    out.sort();
    out
}
