use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use super::admissible::{AdmissibleModule, GradedPieces};
use super::complex::monomial_supports;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, QuotientSpace};
use crate::ring::{Coeff, Field, Polynomial};

/// W = H^k_{(xs)}(N) for monomials xs and admissible N, known piece by piece.
/// Localizations are modelled by shifting far enough into the stable range:
/// (W_{x^S})_e is identified with W_{e + K·1_S}.
pub struct WindowedModule {
    base: AdmissibleModule,
    gens: Vec<u64>,
    index: usize,
    margin: i64,
    cache: RefCell<HashMap<Vec<i64>, Rc<Piece>>>,
}

struct Piece {
    /// Čech components of degree `index`: (subset, offset, dim)
    comps: Vec<(u32, usize, usize)>,
    space: QuotientSpace,
}

impl WindowedModule {
    /// `margin` must push every coordinate of every queried degree past the
    /// stable range of N; see [`WindowedModule::required_margin`].
    pub fn new(xs: &[Polynomial], index: usize, base: &AdmissibleModule, margin: i64) -> Result<Self> {
        let gens = monomial_supports(base.nvars(), xs)?;
        Ok(WindowedModule { base: base.clone(), gens, index, margin, cache: RefCell::new(HashMap::new()) })
    }

    /// Smallest margin making e_j + K reach the stable range of N for every j,
    /// given the lowest coordinate that will be queried.
    pub fn required_margin(base: &AdmissibleModule, lowest: &[i64]) -> i64 {
        let crit = GradedPieces::critical_values(base);
        crit.iter()
            .zip(lowest)
            .map(|(c, lo)| c.iter().max().copied().unwrap_or(0) - lo)
            .max()
            .unwrap_or(0)
            .max(0)
    }

    pub fn margin(&self) -> i64 {
        self.margin
    }

    pub fn index(&self) -> usize {
        self.index
    }

    fn supp(&self, t: u32) -> u64 {
        (0..self.gens.len()).filter(|i| t & (1 << i) != 0).fold(0, |acc, i| acc | self.gens[i])
    }

    fn subsets(&self, q: usize) -> Vec<u32> {
        (0u32..1 << self.gens.len()).filter(|t| t.count_ones() as usize == q).collect()
    }

    fn layout(&self, q: usize, e: &[i64]) -> Result<(Vec<(u32, usize, usize)>, usize)> {
        let mut comps = Vec::new();
        let mut off = 0;
        for t in self.subsets(q) {
            let dim = self.base.local_dim(self.supp(t), e)?;
            comps.push((t, off, dim));
            off += dim;
        }
        Ok((comps, off))
    }

    /// Čech differential from degree q to q + 1 at multidegree e.
    fn differential(&self, q: usize, e: &[i64]) -> Result<Matrix> {
        let (src, ns) = self.layout(q, e)?;
        let (dst, nd) = self.layout(q + 1, e)?;
        let field = self.base.field();
        let zero = vec![0; e.len()];
        let mut mat = Matrix::zeros(field, nd, ns);
        for &(t, off, dim) in &src {
            if dim == 0 {
                continue;
            }
            for i in 0..self.gens.len() {
                if t & (1 << i) != 0 {
                    continue;
                }
                let t2 = t | 1 << i;
                let &(_, off2, dim2) = dst.iter().find(|c| c.0 == t2).expect("layout");
                if dim2 == 0 {
                    continue;
                }
                let sign = if (t & ((1 << i) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                let blk = self.base.local_map(self.supp(t), self.supp(t2), e, &zero)?;
                for r in 0..blk.rows() {
                    for c in 0..blk.cols() {
                        if !blk.get(r, c).is_zero() {
                            mat.add_to(off2 + r, off + c, &(blk.get(r, c) * &field.from_i64(sign)));
                        }
                    }
                }
            }
        }
        Ok(mat)
    }

    fn piece(&self, e: &[i64]) -> Result<Rc<Piece>> {
        if let Some(p) = self.cache.borrow().get(e) {
            return Ok(p.clone());
        }
        let k = self.index;
        let (comps, ambient) = self.layout(k, e)?;
        let field = self.base.field();
        let cycles = if k < self.gens.len() { self.differential(k, e)?.kernel() } else { identity_columns(field, ambient) };
        let boundaries = if k > 0 {
            let d = self.differential(k - 1, e)?;
            (0..d.cols()).map(|j| d.column(j)).collect()
        } else {
            Vec::new()
        };
        let space = QuotientSpace::new(field, ambient, &cycles, &boundaries);
        let p = Rc::new(Piece { comps, space });
        self.cache.borrow_mut().insert(e.to_vec(), p.clone());
        Ok(p)
    }

    /// dim_k W_e
    pub fn dim(&self, e: &[i64]) -> Result<usize> {
        Ok(self.piece(e)?.space.dim())
    }

    /// Multiplication by x^mu: W_e → W_{e+mu} in the chosen bases.
    pub fn multiplication(&self, e: &[i64], mu: &[i64]) -> Result<Matrix> {
        let src = self.piece(e)?;
        let target: Vec<i64> = e.iter().zip(mu).map(|(a, b)| a + b).collect();
        let dst = self.piece(&target)?;
        let field = self.base.field();
        let mut mat = Matrix::zeros(field, dst.space.dim(), src.space.dim());
        for (c, rep) in src.space.reps().iter().enumerate() {
            let mut image = vec![field.zero(); dst.space.ambient()];
            for &(t, off, dim) in &src.comps {
                if dim == 0 {
                    continue;
                }
                let &(_, off2, dim2) = dst.comps.iter().find(|x| x.0 == t).expect("same subsets");
                if dim2 == 0 {
                    continue;
                }
                let s = self.supp(t);
                let blk = self.base.local_map(s, s, e, mu)?;
                let v = blk.apply(&rep[off..off + dim]);
                for (r, x) in v.into_iter().enumerate() {
                    image[off2 + r] = &image[off2 + r] + &x;
                }
            }
            let coords = dst
                .space
                .coordinates(&image)
                .ok_or_else(|| Error::Precondition("image of a cycle left the cycle space".into()))?;
            for (r, x) in coords.into_iter().enumerate() {
                mat.set(r, c, x);
            }
        }
        Ok(mat)
    }

    fn lifted(&self, s: u64, e: &[i64]) -> Vec<i64> {
        e.iter().enumerate().map(|(j, &v)| if s & (1 << j) != 0 { v + self.margin } else { v }).collect()
    }

    /// Each x_j, j ∈ S, must act bijectively at the lifted degree.
    fn check_stable(&self, s: u64, lifted: &[i64]) -> Result<()> {
        for j in 0..lifted.len() {
            if s & (1 << j) == 0 {
                continue;
            }
            let mut mu = vec![0; lifted.len()];
            mu[j] = 1;
            let m = self.multiplication(lifted, &mu)?;
            if m.rows() != m.cols() || m.rank() != m.cols() {
                return Err(Error::MarginInsufficient(format!(
                    "x_{} is not bijective at degree {:?} with margin {}",
                    j + 1,
                    lifted,
                    self.margin
                )));
            }
        }
        Ok(())
    }
}

fn identity_columns(field: Field, n: usize) -> Vec<Vec<Coeff>> {
    (0..n).map(|j| (0..n).map(|i| if i == j { field.one() } else { field.zero() }).collect()).collect()
}

impl GradedPieces for WindowedModule {
    fn field(&self) -> Field {
        self.base.field()
    }

    fn nvars(&self) -> usize {
        self.base.nvars()
    }

    fn local_dim(&self, s: u64, e: &[i64]) -> Result<usize> {
        let l = self.lifted(s, e);
        if s != 0 {
            self.check_stable(s, &l)?;
        }
        self.dim(&l)
    }

    fn local_map(&self, s1: u64, s2: u64, e: &[i64], mu: &[i64]) -> Result<Matrix> {
        // w/x^{K·1_S1} ↦ x^{K·1_{S2∖S1}} w / x^{K·1_S2}, then multiply by x^mu
        let from = self.lifted(s1, e);
        let shift: Vec<i64> = (0..e.len())
            .map(|j| mu[j] + if s2 & (1 << j) != 0 && s1 & (1 << j) == 0 { self.margin } else { 0 })
            .collect();
        self.multiplication(&from, &shift)
    }

    fn critical_values(&self) -> Vec<Vec<i64>> {
        GradedPieces::critical_values(&self.base)
    }
}
