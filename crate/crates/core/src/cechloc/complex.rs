use std::fmt;

use super::admissible::{support_of, AdmissibleModule, GradedPieces, MonomialIdeal};
use crate::error::{Error, Result};
use crate::fpmod::{free_resolution, FreeResolution, ModulePresentation};
use crate::linalg::Matrix;
use crate::ring::{Coeff, Grading, Polynomial};

/// Largest number of lattice points a window may contain.
pub const WINDOW_CAP: usize = 100_000;

/// A box of multidegrees [low_j, high_j] in Z^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeWindow {
    low: Vec<i64>,
    high: Vec<i64>,
}

impl DegreeWindow {
    pub fn new(low: Vec<i64>, high: Vec<i64>) -> Result<Self> {
        if low.len() != high.len() {
            return Err(Error::InvalidWindow("bounds of different lengths".into()));
        }
        if low.iter().zip(&high).any(|(a, b)| a > b) {
            return Err(Error::InvalidWindow("empty range".into()));
        }
        let w = DegreeWindow { low, high };
        let points = w.count();
        if points > WINDOW_CAP as u128 {
            return Err(Error::WindowTooLarge { points: points.min(u64::MAX as u128) as u64, cap: WINDOW_CAP as u64 });
        }
        Ok(w)
    }

    /// [lo, hi]^n
    pub fn cube(n: usize, lo: i64, hi: i64) -> Result<Self> {
        DegreeWindow::new(vec![lo; n], vec![hi; n])
    }

    pub fn low(&self) -> &[i64] {
        &self.low
    }

    pub fn high(&self) -> &[i64] {
        &self.high
    }

    pub fn nvars(&self) -> usize {
        self.low.len()
    }

    fn count(&self) -> u128 {
        self.low.iter().zip(&self.high).map(|(a, b)| (b - a + 1) as u128).product()
    }

    pub fn len(&self) -> usize {
        self.count() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All points, last coordinate varying fastest.
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = self.low.clone();
        loop {
            out.push(cur.clone());
            let mut j = cur.len();
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                if cur[j] < self.high[j] {
                    cur[j] += 1;
                    break;
                }
                cur[j] = self.low[j];
            }
        }
    }

    pub fn contains(&self, d: &[i64]) -> bool {
        d.len() == self.low.len() && d.iter().zip(&self.low).zip(&self.high).all(|((x, a), b)| a <= x && x <= b)
    }

    /// Grow by `by` in every direction.
    pub fn widened(&self, by: i64) -> Result<Self> {
        DegreeWindow::new(self.low.iter().map(|a| a - by).collect(), self.high.iter().map(|b| b + by).collect())
    }

    fn index_of(&self, d: &[i64]) -> Option<usize> {
        if !self.contains(d) {
            return None;
        }
        let mut idx = 0usize;
        for j in 0..d.len() {
            idx = idx * (self.high[j] - self.low[j] + 1) as usize + (d[j] - self.low[j]) as usize;
        }
        Some(idx)
    }
}

/// dim_k H^i(·)_d for 0 ≤ i ≤ max_index and d in a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    window: DegreeWindow,
    dims: Vec<Vec<usize>>,
}

impl CohomologyTable {
    pub fn window(&self) -> &DegreeWindow {
        &self.window
    }

    pub fn max_index(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn get(&self, i: usize, d: &[i64]) -> Option<usize> {
        let k = self.window.index_of(d)?;
        Some(self.dims.get(i).map_or(0, |row| row[k]))
    }

    /// (degree, dim) pairs of index i in window order.
    pub fn row(&self, i: usize) -> Vec<(Vec<i64>, usize)> {
        let pts = self.window.points();
        match self.dims.get(i) {
            Some(row) => pts.into_iter().zip(row.iter().copied()).collect(),
            None => pts.into_iter().map(|p| (p, 0)).collect(),
        }
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.dims.get(i).is_none_or(|r| r.iter().all(|&v| v == 0))
    }

    /// Indices with some nonzero entry.
    pub fn nonzero_indices(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&i| !self.row_is_zero(i)).collect()
    }

    /// Restriction to a sub-window.
    pub fn restrict(&self, w: &DegreeWindow) -> Option<CohomologyTable> {
        let pts = w.points();
        let mut dims = vec![Vec::with_capacity(pts.len()); self.dims.len()];
        for p in &pts {
            let k = self.window.index_of(p)?;
            for (i, row) in self.dims.iter().enumerate() {
                dims[i].push(row[k]);
            }
        }
        Some(CohomologyTable { window: w.clone(), dims })
    }

    /// A header `i d1 .. dn dim`, then one tab-separated row per nonzero entry.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("i");
        for j in 1..=self.window.nvars() {
            out.push_str(&format!("\td{j}"));
        }
        out.push_str("\tdim\n");
        for i in 0..self.dims.len() {
            for (d, v) in self.row(i) {
                if v > 0 {
                    let ds: Vec<String> = d.iter().map(i64::to_string).collect();
                    out.push_str(&format!("{i}\t{}\t{v}\n", ds.join("\t")));
                }
            }
        }
        out
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dims.len() {
            let entries: Vec<String> = self
                .row(i)
                .into_iter()
                .filter(|(_, v)| *v > 0)
                .map(|(d, v)| format!("({}):{v}", d.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            writeln!(f, "H^{i}: {}", if entries.is_empty() { "0".to_string() } else { entries.join(" ") })?;
        }
        Ok(())
    }
}

/// A resolution with monomial entries: twists per homological degree and, for each
/// column of d_{p+1}, its nonzero entries (row, exponent, coefficient).
#[derive(Clone, Debug)]
pub(crate) struct MonomialResolution {
    pub twists: Vec<Vec<Vec<i64>>>,
    pub maps: Vec<Vec<Vec<(usize, Vec<i64>, Coeff)>>>,
}

impl MonomialResolution {
    pub fn trivial(n: usize) -> Self {
        MonomialResolution { twists: vec![vec![vec![0; n]]], maps: Vec::new() }
    }

    /// M must be presented over the fine-graded ring.
    pub fn of(m: &ModulePresentation) -> Result<Self> {
        if m.ring().grading() != Grading::Fine {
            return Err(Error::Precondition("total complexes need the fine grading".into()));
        }
        let n = m.ring().nvars();
        let res: FreeResolution = free_resolution(m, n + 1)?;
        let len = res.length().max(0) as usize;
        let twists = (0..=len).map(|p| res.degrees(p).iter().map(|d| d.0.clone()).collect()).collect();
        let mut maps = Vec::new();
        for p in 1..=len {
            let mut cols = Vec::new();
            for col in res.differential(p) {
                let mut entries: Vec<(usize, Vec<i64>, Coeff)> = Vec::new();
                for t in col.terms() {
                    if entries.iter().any(|(b, _, _)| *b == t.pos) {
                        return Err(Error::NotMonomial("resolution entry with several terms".into()));
                    }
                    entries.push((t.pos, t.mono.exponents().iter().map(|&e| i64::from(e)).collect(), t.coeff.clone()));
                }
                cols.push(entries);
            }
            maps.push(cols);
        }
        Ok(MonomialResolution { twists, maps })
    }

    pub fn len(&self) -> usize {
        self.twists.len() - 1
    }

    pub fn critical_values(&self, x: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = x.len();
        let mut out = vec![Vec::new(); n];
        for tw in self.twists.iter().flatten() {
            for j in 0..n {
                out[j].extend(x[j].iter().map(|v| v - tw[j]));
            }
        }
        out
    }
}

/// Each generator of a, a monomial, as its support bitmask.
pub(crate) fn monomial_supports(n: usize, a: &[Polynomial]) -> Result<Vec<u64>> {
    let ideal = MonomialIdeal::from_polys(n, a)?;
    Ok(ideal.gens().iter().map(|g| support_of(g)).collect())
}

/// H^k of Hom(F_•, Č(a; X)) in degree d, for k = 0..=top.
fn total_cohomology_at<X: GradedPieces>(
    gens: &[u64],
    res: &MonomialResolution,
    x: &X,
    d: &[i64],
    top: usize,
) -> Result<Vec<usize>> {
    let s = gens.len();
    let field = x.field();
    let plen = res.len();
    let subsets_of = |q: usize| -> Vec<u32> { (0u32..1 << s).filter(|t| t.count_ones() as usize == q).collect() };
    let supp = |t: u32| -> u64 { (0..s).filter(|i| t & (1 << i) != 0).fold(0, |acc, i| acc | gens[i]) };
    let shifted = |p: usize, b: usize| -> Vec<i64> { d.iter().zip(&res.twists[p][b]).map(|(a, c)| a + c).collect() };

    // components of total degree k: (p, b, T) with p + |T| = k
    type Comp = (usize, usize, u32, usize, usize);
    let mut layout: Vec<Vec<Comp>> = Vec::new();
    let mut sizes = Vec::new();
    for k in 0..=top + 1 {
        let mut comps = Vec::new();
        let mut off = 0;
        for p in 0..=plen.min(k) {
            let q = k - p;
            if q > s {
                continue;
            }
            for b in 0..res.twists[p].len() {
                let e = shifted(p, b);
                for t in subsets_of(q) {
                    let dim = x.local_dim(supp(t), &e)?;
                    comps.push((p, b, t, off, dim));
                    off += dim;
                }
            }
        }
        layout.push(comps);
        sizes.push(off);
    }

    let mut ranks = Vec::new();
    for k in 0..=top {
        let src = &layout[k];
        let dst = &layout[k + 1];
        let mut mat = Matrix::zeros(field, sizes[k + 1], sizes[k]);
        if sizes[k] > 0 && sizes[k + 1] > 0 {
            for &(p, b, t, off, dim) in src {
                if dim == 0 {
                    continue;
                }
                let e = shifted(p, b);
                let sign_p = if p % 2 == 0 { 1 } else { -1 };
                // Čech part, signed by (−1)^p
                for i in 0..s {
                    if t & (1 << i) != 0 {
                        continue;
                    }
                    let t2 = t | 1 << i;
                    let before = (t & ((1 << i) - 1)).count_ones();
                    let sign = if before % 2 == 0 { sign_p } else { -sign_p };
                    let Some(&(_, _, _, off2, dim2)) = dst.iter().find(|c| c.0 == p && c.1 == b && c.2 == t2) else {
                        continue;
                    };
                    if dim2 == 0 {
                        continue;
                    }
                    let blk = x.local_map(supp(t), supp(t2), &e, &vec![0; d.len()])?;
                    add_block(&mut mat, &blk, off2, off, &field.from_i64(sign));
                }
                // Hom part: precompose with d_{p+1}
                if p < plen {
                    for (c, col) in res.maps[p].iter().enumerate() {
                        for (row, mu, coeff) in col {
                            if *row != b {
                                continue;
                            }
                            let Some(&(_, _, _, off2, dim2)) =
                                dst.iter().find(|cc| cc.0 == p + 1 && cc.1 == c && cc.2 == t)
                            else {
                                continue;
                            };
                            if dim2 == 0 {
                                continue;
                            }
                            let blk = x.local_map(supp(t), supp(t), &e, mu)?;
                            add_block(&mut mat, &blk, off2, off, coeff);
                        }
                    }
                }
            }
        }
        ranks.push(mat.rank());
    }
    Ok((0..=top).map(|k| sizes[k] - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }).collect())
}

fn add_block(mat: &mut Matrix, blk: &Matrix, row0: usize, col0: usize, scale: &Coeff) {
    for i in 0..blk.rows() {
        for j in 0..blk.cols() {
            let v = blk.get(i, j);
            if !v.is_zero() {
                mat.add_to(row0 + i, col0 + j, &(v * scale));
            }
        }
    }
}

fn table_over<X: GradedPieces>(
    gens: &[u64],
    res: &MonomialResolution,
    x: &X,
    window: &DegreeWindow,
    top: usize,
) -> Result<CohomologyTable> {
    if window.nvars() != x.nvars() {
        return Err(Error::InvalidWindow(format!("window has {} coordinates, ring has {}", window.nvars(), x.nvars())));
    }
    let pts = window.points();
    let mut dims = vec![Vec::with_capacity(pts.len()); top + 1];
    for d in &pts {
        for (i, v) in total_cohomology_at(gens, res, x, d, top)?.into_iter().enumerate() {
            dims[i].push(v);
        }
    }
    Ok(CohomologyTable { window: window.clone(), dims })
}

/// Highest index that can be nonzero: number of generators of a plus pd M.
fn top_index(gens: &[u64], res: &MonomialResolution) -> usize {
    gens.len() + res.len()
}

/// H^i_a(N) on a window via the Čech complex on the monomial generators of a.
pub fn cech_table(a: &[Polynomial], n: &AdmissibleModule, window: &DegreeWindow) -> Result<CohomologyTable> {
    let gens = monomial_supports(n.nvars(), a)?;
    let res = MonomialResolution::trivial(n.nvars());
    table_over(&gens, &res, n, window, gens.len())
}

/// H^i_a(M, N) on a window via the total complex Hom(F_•, Č(a; N)).
pub fn gen_cech_table(
    a: &[Polynomial],
    m: &ModulePresentation,
    n: &AdmissibleModule,
    window: &DegreeWindow,
) -> Result<CohomologyTable> {
    gen_cech_table_of(a, m, n, window)
}

/// The same for any module with computable localized pieces.
pub fn gen_cech_table_of<X: GradedPieces>(
    a: &[Polynomial],
    m: &ModulePresentation,
    x: &X,
    window: &DegreeWindow,
) -> Result<CohomologyTable> {
    let gens = monomial_supports(x.nvars(), a)?;
    let res = MonomialResolution::of(m)?;
    table_over(&gens, &res, x, window, top_index(&gens, &res))
}

/// A window on which every H^i_a(M, N) is determined: outside it each coordinate
/// is in a constant regime, so the table there repeats a boundary entry.
pub fn regime_box(m: &ModulePresentation, n: &AdmissibleModule) -> Result<DegreeWindow> {
    let res = MonomialResolution::of(m)?;
    Ok(regime_box_from(&res, &GradedPieces::critical_values(n)))
}

fn regime_box_from(res: &MonomialResolution, crit: &[Vec<i64>]) -> DegreeWindow {
    let c = res.critical_values(crit);
    let low = c.iter().map(|v| v.iter().min().copied().unwrap_or(0) - 1).collect();
    let high = c.iter().map(|v| v.iter().max().copied().unwrap_or(0)).collect();
    DegreeWindow { low, high }
}

/// Full table of H^•_a(M, N) over its regime box.
pub fn regime_table(a: &[Polynomial], m: &ModulePresentation, n: &AdmissibleModule) -> Result<CohomologyTable> {
    let res = MonomialResolution::of(m)?;
    let window = regime_box_from(&res, &GradedPieces::critical_values(n));
    if window.count() > WINDOW_CAP as u128 {
        return Err(Error::WindowTooLarge { points: window.count().min(u64::MAX as u128) as u64, cap: WINDOW_CAP as u64 });
    }
    let gens = monomial_supports(n.nvars(), a)?;
    table_over(&gens, &res, n, &window, top_index(&gens, &res))
}

/// cd_a(M, N) = sup{i : H^i_a(M, N) ≠ 0}; None when all vanish.
pub fn cohomological_dimension(a: &[Polynomial], m: &ModulePresentation, n: &AdmissibleModule) -> Result<Option<usize>> {
    Ok(regime_table(a, m, n)?.nonzero_indices().last().copied())
}

/// Supp H^i ⊆ V(c) for a monomial ideal c, read off a regime-box table: the
/// localization at a generator g of c vanishes iff the table is zero on the face
/// where every variable of g sits at its upper regime.
pub fn support_in_v_from_table(table: &CohomologyTable, i: usize, c: &[Polynomial]) -> Result<bool> {
    let w = table.window();
    let supports = monomial_supports(w.nvars(), c)?;
    for g in supports {
        for (d, v) in table.row(i) {
            if v > 0 && (0..d.len()).all(|j| g & (1 << j) == 0 || d[j] == w.high()[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
