use super::{check_ring, homogeneous_degree, minimal_generators, present_subquotient, ModulePresentation};
use crate::error::Result;
use crate::groebner::{syzygies, Vector};
use crate::ring::{Degree, RingRef};

/// A minimal graded free resolution F_len → … → F_0 → M.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: RingRef,
    degrees: Vec<Vec<Degree>>,
    maps: Vec<Vec<Vector>>,
    complete: bool,
}

impl FreeResolution {
    /// Generator degrees of F_i.
    pub fn degrees(&self, i: usize) -> &[Degree] {
        self.degrees.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn rank(&self, i: usize) -> usize {
        self.degrees(i).len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    /// Columns of d_i : F_i → F_{i−1} (i ≥ 1); empty beyond the computed length.
    pub fn differential(&self, i: usize) -> &[Vector] {
        if i == 0 {
            return &[];
        }
        self.maps.get(i - 1).map_or(&[], Vec::as_slice)
    }

    /// Index of the last nonzero free module; −1 for the zero module.
    pub fn length(&self) -> i64 {
        self.degrees.iter().rposition(|d| !d.is_empty()).map_or(-1, |i| i as i64)
    }

    /// True when the resolution reached a zero syzygy module (not truncated).
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }
}

/// Minimal graded free resolution of M, truncated after F_max_len.
pub fn free_resolution(m: &ModulePresentation, max_len: usize) -> Result<FreeResolution> {
    let ring = m.ring().clone();
    let min = m.minimize()?;
    let mut degrees = vec![min.degrees().to_vec()];
    let mut maps: Vec<Vec<Vector>> = Vec::new();
    let mut current: Vec<Vector> = min.relations().to_vec();
    let mut complete = true;
    while !current.is_empty() {
        if maps.len() >= max_len {
            complete = false;
            break;
        }
        let prev = degrees.last().expect("F_0");
        let mut next_degrees = Vec::with_capacity(current.len());
        for c in &current {
            next_degrees.push(homogeneous_degree(&ring, c, prev)?);
        }
        let syz = syzygies(&ring, prev.len(), &current);
        let next: Vec<Vector> =
            minimal_generators(&ring, &next_degrees, &syz, &[])?.into_iter().map(|(v, _)| v).collect();
        degrees.push(next_degrees);
        maps.push(current);
        current = next;
    }
    Ok(FreeResolution { ring, degrees, maps, complete })
}

/// Length of the minimal free resolution; −1 for the zero module.
pub fn projective_dimension(m: &ModulePresentation) -> Result<i64> {
    Ok(free_resolution(m, m.ring().nvars() + 1)?.length())
}

/// Basis of Hom(⊕R(−f_a), G) with G = N's free cover: E_{k,a} at index a·n + k,
/// of degree g_k − f_a.
fn hom_degrees(source: &[Degree], target: &[Degree]) -> Vec<Degree> {
    source.iter().flat_map(|f| target.iter().map(move |g| g - f)).collect()
}

/// The relations of N copied into each of `blocks` blocks.
fn block_relations(n: &ModulePresentation, blocks: usize) -> Vec<Vector> {
    let size = n.ngens();
    (0..blocks).flat_map(|a| n.relations().iter().map(move |r| r.shifted(a * size))).collect()
}

/// φ ↦ φ∘d for d : F_i → F_{i−1}, as images of the basis E_{k,a} of Hom(F_{i−1}, G).
fn precompose(ring: &RingRef, d: &[Vector], prev_rank: usize, n_gens: usize) -> Vec<Vector> {
    let mut images = vec![Vector::zero(); prev_rank * n_gens];
    for (c, col) in d.iter().enumerate() {
        for t in col.terms() {
            let a = t.pos;
            for k in 0..n_gens {
                let v = Vector::term(c * n_gens + k, t.mono.clone(), t.coeff.clone());
                images[a * n_gens + k] = images[a * n_gens + k].add(ring, &v);
            }
        }
    }
    images
}

/// Ext^i(M, N) as H^i of Hom(F_•, N).
pub fn ext(i: usize, m: &ModulePresentation, n: &ModulePresentation) -> Result<ModulePresentation> {
    check_ring(m.ring(), n.ring())?;
    let res = free_resolution(m, i + 1)?;
    ext_from_resolution(i, &res, n)
}

pub(crate) fn ext_from_resolution(i: usize, res: &FreeResolution, n: &ModulePresentation) -> Result<ModulePresentation> {
    let ring = res.ring().clone();
    let ng = n.ngens();
    let ri = res.rank(i);
    if ri == 0 || ng == 0 {
        return Ok(ModulePresentation::zero(&ring));
    }
    let p_degrees = hom_degrees(res.degrees(i), n.degrees());
    let vsum_i = block_relations(n, ri);

    // kernel of δ^{i+1} : Hom(F_i, N) → Hom(F_{i+1}, N)
    let r_next = res.rank(i + 1);
    let kernel: Vec<Vector> = if r_next == 0 {
        (0..ri * ng).map(|j| Vector::unit(&ring, j)).collect()
    } else {
        let mut cols = precompose(&ring, res.differential(i + 1), ri, ng);
        let dim = cols.len();
        cols.extend(block_relations(n, r_next));
        syzygies(&ring, r_next * ng, &cols).iter().map(|v| v.project(0..dim)).filter(|v| !v.is_zero()).collect()
    };

    let mut image = vsum_i;
    if i > 0 {
        image.extend(precompose(&ring, res.differential(i), res.rank(i - 1), ng));
    }
    Ok(present_subquotient(&ring, &p_degrees, &kernel, &image)?.module)
}

/// Hom(M, N) = Ext⁰(M, N).
pub fn hom(m: &ModulePresentation, n: &ModulePresentation) -> Result<ModulePresentation> {
    ext(0, m, n)
}
