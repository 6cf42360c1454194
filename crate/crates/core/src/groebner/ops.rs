use super::{GroebnerBasis, Vector};
use crate::error::{Error, Result};
use crate::ring::{Monomial, Polynomial, RingRef};

/// Generators of the syzygy module of `cols` (elements of R^rank); results live in R^{cols.len()}.
pub fn syzygies(ring: &RingRef, rank: usize, cols: &[Vector]) -> Vec<Vector> {
    syzygies_weighted(ring, rank, cols, &[])
}

/// As [`syzygies`], with degree weights for the ambient basis (used only to order work).
pub fn syzygies_weighted(ring: &RingRef, rank: usize, cols: &[Vector], weights: &[i64]) -> Vec<Vector> {
    let m = cols.len();
    let mut w: Vec<i64> = (0..rank).map(|i| weights.get(i).copied().unwrap_or(0)).collect();
    w.extend(cols.iter().map(|c| c.weighted_degree(weights)));
    let aug: Vec<Vector> =
        cols.iter().enumerate().map(|(j, c)| c.add(ring, &Vector::unit(ring, rank + j))).collect();
    let gb = GroebnerBasis::with_weights(ring, rank + m, &aug, &w);
    gb.elements()
        .iter()
        .filter(|v| v.lead().is_some_and(|t| t.pos >= rank))
        .map(|v| v.project(rank..rank + m))
        .collect()
}

/// Syzygies of the columns of a dense matrix (rows × cols), returned as dense columns.
pub fn syzygy_matrix(ring: &RingRef, matrix: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let rows = matrix.len();
    let ncols = matrix.first().map_or(0, |r| r.len());
    let cols: Vec<Vector> = (0..ncols)
        .map(|j| Vector::from_polys(&matrix.iter().map(|r| r[j].clone()).collect::<Vec<_>>()))
        .collect();
    syzygies(ring, rows, &cols).iter().map(|v| v.to_polys(ring, ncols)).collect()
}

/// {f ∈ R^rank : x·f ∈ U}.
pub fn colon(ring: &RingRef, rank: usize, u: &[Vector], x: &Polynomial) -> Result<Vec<Vector>> {
    if x.is_zero() {
        return Err(Error::Precondition("colon by the zero polynomial".into()));
    }
    colon_ideal(ring, rank, u, std::slice::from_ref(x))
}

/// {f ∈ R^rank : g·f ∈ U for every generator g of `a`}.
pub fn colon_ideal(ring: &RingRef, rank: usize, u: &[Vector], a: &[Polynomial]) -> Result<Vec<Vector>> {
    let a: Vec<&Polynomial> = a.iter().filter(|g| !g.is_zero()).collect();
    if a.is_empty() {
        return Err(Error::Precondition("colon by the zero ideal".into()));
    }
    let s = a.len();
    // f ↦ (g_1 f, …, g_s f) into (R^rank / U)^s; the kernel is the colon
    let mut cols: Vec<Vector> = Vec::with_capacity(rank + s * u.len());
    for j in 0..rank {
        let mut v = Vector::zero();
        for (b, g) in a.iter().enumerate() {
            v = v.add(ring, &Vector::from_poly_at(g, b * rank + j));
        }
        cols.push(v);
    }
    for b in 0..s {
        for g in u {
            cols.push(g.shifted(b * rank));
        }
    }
    let syz = syzygies(ring, s * rank, &cols);
    Ok(minimize_gens(ring, rank, syz.iter().map(|v| v.project(0..rank)).filter(|v| !v.is_zero()).collect()))
}

/// {r ∈ R : r·v ∈ U}.
pub fn colon_vector(ring: &RingRef, rank: usize, u: &[Vector], v: &Vector) -> Vec<Polynomial> {
    let mut cols = vec![v.clone()];
    cols.extend(u.iter().cloned());
    let syz = syzygies(ring, rank, &cols);
    let gens: Vec<Polynomial> = syz.iter().map(|s| s.component(ring, 0)).filter(|p| !p.is_zero()).collect();
    GroebnerBasis::ideal(ring, &gens).polys()
}

/// U : ⟨a⟩ = ⋃_k (U : a^k), by iterated colons until the chain stabilizes.
pub fn saturate(ring: &RingRef, rank: usize, u: &[Vector], a: &[Polynomial]) -> Result<Vec<Vector>> {
    let mut cur = GroebnerBasis::new(ring, rank, u);
    loop {
        let next = colon_ideal(ring, rank, cur.elements(), a)?;
        if cur.contains_all(&next) {
            return Ok(cur.elements().to_vec());
        }
        cur = GroebnerBasis::new(ring, rank, &next);
    }
}

/// U ∩ V inside R^rank.
pub fn intersect(ring: &RingRef, rank: usize, u: &[Vector], v: &[Vector]) -> Vec<Vector> {
    if u.is_empty() || v.is_empty() {
        return Vec::new();
    }
    let mut cols: Vec<Vector> = u.to_vec();
    cols.extend(v.iter().cloned());
    let syz = syzygies(ring, rank, &cols);
    let gens: Vec<Vector> = syz
        .iter()
        .map(|s| Vector::combination(ring, &s.project(0..u.len()).to_polys(ring, u.len()), u))
        .filter(|w| !w.is_zero())
        .collect();
    minimize_gens(ring, rank, gens)
}

/// Reduced Gröbner basis elements, which generate the same submodule with no zero entries.
fn minimize_gens(ring: &RingRef, rank: usize, gens: Vec<Vector>) -> Vec<Vector> {
    GroebnerBasis::new(ring, rank, &gens).elements().to_vec()
}

pub fn ideal_colon(ring: &RingRef, i: &[Polynomial], j: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let u: Vec<Vector> = i.iter().map(|f| Vector::from_poly_at(f, 0)).collect();
    Ok(colon_ideal(ring, 1, &u, j)?.iter().map(|v| v.component(ring, 0)).collect())
}

pub fn ideal_saturate(ring: &RingRef, i: &[Polynomial], a: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let u: Vec<Vector> = i.iter().map(|f| Vector::from_poly_at(f, 0)).collect();
    Ok(saturate(ring, 1, &u, a)?.iter().map(|v| v.component(ring, 0)).collect())
}

pub fn ideal_intersect(ring: &RingRef, i: &[Polynomial], j: &[Polynomial]) -> Vec<Polynomial> {
    let u: Vec<Vector> = i.iter().map(|f| Vector::from_poly_at(f, 0)).collect();
    let v: Vec<Vector> = j.iter().map(|f| Vector::from_poly_at(f, 0)).collect();
    intersect(ring, 1, &u, &v).iter().map(|w| w.component(ring, 0)).collect()
}

/// Ideal sum, as a reduced Gröbner basis.
pub fn ideal_sum(ring: &RingRef, parts: &[&[Polynomial]]) -> Vec<Polynomial> {
    let all: Vec<Polynomial> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
    GroebnerBasis::ideal(ring, &all).polys()
}

/// I ⊆ J for ideals given by generators.
pub fn ideal_contains(ring: &RingRef, j: &[Polynomial], i: &[Polynomial]) -> bool {
    let gb = GroebnerBasis::ideal(ring, j);
    i.iter().all(|f| gb.contains_poly(f))
}

/// f ∈ √I, via 1 ∈ (I, 1 − t·f) in R[t].
pub fn radical_member(ring: &RingRef, f: &Polynomial, i: &[Polynomial]) -> bool {
    if f.is_zero() {
        return true;
    }
    let big = ring.with_extra_variable("t");
    let t = big.var(ring.nvars());
    let mut gens: Vec<Polynomial> = i.iter().map(|g| g.embed(&big)).collect();
    gens.push(&big.one() - &(&t * &f.embed(&big)));
    GroebnerBasis::ideal(&big, &gens).is_unit_ideal()
}

/// Every generator of `a` lies in √I.
pub fn radical_contains(ring: &RingRef, i: &[Polynomial], a: &[Polynomial]) -> bool {
    a.iter().all(|f| radical_member(ring, f, i))
}

/// Krull dimension of R/I; −1 for the unit ideal.
pub fn dim_ideal(ring: &RingRef, i: &[Polynomial]) -> i64 {
    let gb = GroebnerBasis::ideal(ring, i);
    dim_from_leads(ring.nvars(), &gb.leading_terms().into_iter().map(|(_, m)| m).collect::<Vec<_>>())
}

/// Dimension of k[x]/(leads): the largest variable set containing no lead's support.
pub fn dim_from_leads(nvars: usize, leads: &[Monomial]) -> i64 {
    if leads.iter().any(|m| m.is_one()) {
        return -1;
    }
    let supports: Vec<u64> = leads.iter().map(|m| m.support()).collect();
    let mut best = 0i64;
    for s in 0u64..(1u64 << nvars) {
        let size = s.count_ones() as i64;
        if size > best && supports.iter().all(|&m| m & !s != 0) {
            best = size;
        }
    }
    best
}

