use super::admissible::{fine, fine_presentation, AdmissibleModule};
use super::complex::{gen_cech_table, gen_cech_table_of, CohomologyTable, DegreeWindow, MonomialResolution};
use super::windowed::WindowedModule;
use crate::error::{Error, Result};
use crate::filterreg::{is_fr_sequence, GradeValue};
use crate::fpmod::{gamma, hom, projective_dimension, ModulePresentation};
use crate::groebner::{ideal_contains, GroebnerBasis, Vector};
use crate::ring::{Grading, Polynomial};

/// H⁰_a(M, N) = Γ_a(Hom(M, N)), exactly, together with Hom(M, N) and the
/// numerator of Γ_a inside Hom's ambient free module.
#[derive(Clone, Debug)]
pub struct H0Exact {
    pub hom: ModulePresentation,
    pub module: ModulePresentation,
    pub numerator: Vec<Vector>,
}

pub fn h0_exact(a: &[Polynomial], m: &ModulePresentation, n: &ModulePresentation) -> Result<H0Exact> {
    let hm = hom(m, n)?;
    if a.iter().all(Polynomial::is_zero) {
        // Γ_(0) is the identity
        let numerator = (0..hm.ngens()).map(|j| Vector::unit(hm.ring(), j)).collect();
        return Ok(H0Exact { module: hm.clone(), hom: hm, numerator });
    }
    let (module, inclusion) = gamma(a, &hm)?;
    Ok(H0Exact { numerator: inclusion.columns().to_vec(), hom: hm, module })
}

/// Do two H⁰ computations over the same Hom cut out the same submodule?
fn same_submodule(x: &H0Exact, y: &H0Exact) -> bool {
    let ring = x.hom.ring();
    let rank = x.hom.ngens();
    let mut ux = x.numerator.clone();
    ux.extend(x.hom.relations().iter().cloned());
    let mut uy = y.numerator.clone();
    uy.extend(y.hom.relations().iter().cloned());
    GroebnerBasis::new(ring, rank, &ux).contains_all(&uy) && GroebnerBasis::new(ring, rank, &uy).contains_all(&ux)
}

#[derive(Clone, Debug)]
pub struct NsReport {
    /// (i, tables equal) for i < length(xs)
    pub indices: Vec<(usize, bool)>,
    /// Γ_a Hom(M,N) = Γ_(xs) Hom(M,N) as submodules
    pub h0_equal: bool,
    /// recomputing on a widened window leaves the window's entries unchanged
    pub margin_stable: bool,
    pub left: Vec<CohomologyTable>,
    pub right: Vec<CohomologyTable>,
}

impl NsReport {
    pub fn passes(&self) -> bool {
        self.h0_equal && self.margin_stable && self.indices.iter().all(|(_, ok)| *ok)
    }
}

fn check_preconditions(a: &[Polynomial], xs: &[Polynomial], np: &ModulePresentation) -> Result<()> {
    let ring = np.ring();
    for (k, x) in xs.iter().enumerate() {
        if !ideal_contains(ring, a, std::slice::from_ref(x)) {
            return Err(Error::Precondition(format!("step {}: {x} is not in a", k + 1)));
        }
    }
    let report = is_fr_sequence(a, xs, np)?;
    if let Some(k) = report.verdicts.iter().position(|v| !v) {
        return Err(Error::Precondition(format!("step {}: {} is not a-filter regular", k + 1, xs[k])));
    }
    Ok(())
}

fn as_fine(m: &ModulePresentation) -> Result<ModulePresentation> {
    if m.ring().grading() == Grading::Fine {
        Ok(m.clone())
    } else {
        fine_presentation(m)
    }
}

fn on_fine(ps: &[Polynomial], m: &ModulePresentation) -> Vec<Polynomial> {
    ps.iter().map(|p| p.reinterpret(m.ring())).collect()
}

/// H^i_a(M, N) ≅ H^i_(xs)(M, N) for i < length(xs), on a window.
pub fn ns_verify(
    a: &[Polynomial],
    xs: &[Polynomial],
    m: &ModulePresentation,
    n: &AdmissibleModule,
    window: &DegreeWindow,
) -> Result<NsReport> {
    let m = as_fine(m)?;
    let a = on_fine(a, &m);
    let xs = on_fine(xs, &m);
    let np = n.to_presentation();
    check_preconditions(&a, &xs, &np)?;
    if xs.is_empty() {
        return Ok(NsReport { indices: Vec::new(), h0_equal: true, margin_stable: true, left: Vec::new(), right: Vec::new() });
    }
    let left = gen_cech_table(&a, &m, n, window)?;
    let right = gen_cech_table(&xs, &m, n, window)?;
    let indices: Vec<(usize, bool)> = (0..xs.len()).map(|i| (i, left.row(i) == right.row(i))).collect();
    let h0_equal = same_submodule(&h0_exact(&a, &m, &np)?, &h0_exact(&xs, &m, &np)?);
    let wide = window.widened(1)?;
    let margin_stable = gen_cech_table(&a, &m, n, &wide)?.restrict(window).as_ref() == Some(&left)
        && gen_cech_table(&xs, &m, n, &wide)?.restrict(window).as_ref() == Some(&right);
    Ok(NsReport { indices, h0_equal, margin_stable, left: vec![left], right: vec![right] })
}

#[derive(Clone, Debug)]
pub struct ComposeReport {
    pub pd: usize,
    pub length: usize,
    pub margin: i64,
    /// (i, H^{i+n}_a(M,N) = H^i_a(M, H^n_(xs)(N)) on the window)
    pub indices: Vec<(usize, bool)>,
    /// the comparison does not change with a larger margin
    pub margin_stable: bool,
    pub direct: CohomologyTable,
    pub composite: CohomologyTable,
}

impl ComposeReport {
    pub fn passes(&self) -> bool {
        self.margin_stable && self.indices.iter().all(|(_, ok)| *ok)
    }
}

/// H^{i+n}_a(M, N) ≅ H^i_a(M, H^n_(xs)(N)) for i ∈ {d, d+1}, d = pd M.
pub fn ns_compose_verify(
    a: &[Polynomial],
    xs: &[Polynomial],
    m: &ModulePresentation,
    n: &AdmissibleModule,
    window: &DegreeWindow,
    margin_extra: i64,
) -> Result<ComposeReport> {
    let m = as_fine(m)?;
    let a = on_fine(a, &m);
    let xs = on_fine(xs, &m);
    let np = n.to_presentation();
    check_preconditions(&a, &xs, &np)?;
    let d = projective_dimension(&m)?.max(0) as usize;
    let len = xs.len();
    let direct = gen_cech_table(&a, &m, n, window)?;
    let res = MonomialResolution::of(&m)?;
    let lowest: Vec<i64> = (0..window.nvars())
        .map(|j| window.low()[j] + res.twists.iter().flatten().map(|t| t[j]).min().unwrap_or(0))
        .collect();
    let margin = WindowedModule::required_margin(n, &lowest) + margin_extra.max(0);
    let run = |k: i64| -> Result<CohomologyTable> {
        let w = WindowedModule::new(&xs, len, n, k)?;
        gen_cech_table_of(&a, &m, &w, window)
    };
    let composite = run(margin)?;
    let margin_stable = run(margin + 1)? == composite;
    let indices = (d..=d + 1).map(|i| (i, direct.row(i + len) == composite.row(i))).collect();
    Ok(ComposeReport { pd: d, length: len, margin, indices, margin_stable, direct, composite })
}

/// Least i with Supp H^i_b(M) ⊄ V(a), when a and b are monomial and M is
/// admissible; None when the route does not apply.
pub fn lc_support_index(a: &[Polynomial], b: &[Polynomial], m: &ModulePresentation) -> Result<Option<GradeValue>> {
    let monomial = |ps: &[Polynomial]| ps.iter().all(|p| p.is_zero() || p.is_term());
    if !monomial(a) || !monomial(b) || m.ring().nvars() > 63 {
        return Ok(None);
    }
    let Ok(n) = AdmissibleModule::from_presentation(m) else { return Ok(None) };
    let ring = fine(m.ring());
    let a: Vec<Polynomial> = a.iter().map(|p| p.reinterpret(&ring)).collect();
    let b: Vec<Polynomial> = b.iter().filter(|p| !p.is_zero()).map(|p| p.reinterpret(&ring)).collect();
    let r = ModulePresentation::ring_module(&ring);
    let table = super::complex::regime_table(&b, &r, &n)?;
    for i in 0..=table.max_index() {
        if !super::complex::support_in_v_from_table(&table, i, &a)? {
            return Ok(Some(GradeValue::Finite(i)));
        }
    }
    Ok(Some(GradeValue::Infinity))
}
