use super::{ass_monomial, MonomialPrime};
use crate::cechloc::{cohomological_dimension, fine, fine_presentation, AdmissibleModule, MonomialIdeal, Summand};
use crate::error::{Error, Result};
use crate::fpmod::{annihilator, dim_module, ext, projective_dimension, ModulePresentation};
use crate::groebner::{dim_ideal, ideal_sum, radical_contains};
use crate::ring::{Grading, Polynomial, RingRef};

/// The three conditions deciding cd_a(M, R/p) = dim R/p + pd M on a monomial prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdWitness {
    pub prime: MonomialPrime,
    /// dim R/p
    pub dim_quotient: i64,
    /// dim R/(a + p)
    pub dim_sum: i64,
    /// Ann Ext^d(M, R) ⊆ p
    pub ext_support: bool,
    pub passes: bool,
}

/// Is cd_a(M, R/p) = n + pd M? True iff dim R/p = n, a + p is m-primary, and
/// p ∈ Supp Ext^d(M, R).
pub fn cd_test(a: &[Polynomial], m: &ModulePresentation, p: &MonomialPrime, n: i64) -> Result<CdWitness> {
    let ring = m.ring();
    if p.nvars() != ring.nvars() {
        return Err(Error::Shape("prime and ring have different variable counts".into()));
    }
    let d = projective_dimension(m)?.max(0) as usize;
    let e = ext(d, m, &ModulePresentation::ring_module(ring))?;
    let ext_support = p.contains_all(&annihilator(&e));
    let a: Vec<Polynomial> = a.iter().map(|f| f.reinterpret(ring)).collect();
    let dim_sum = dim_ideal(ring, &ideal_sum(ring, &[&a, &p.to_polys(ring)]));
    let dim_quotient = p.dim();
    Ok(CdWitness { prime: *p, dim_quotient, dim_sum, ext_support, passes: dim_quotient == n && dim_sum == 0 && ext_support })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttRoute {
    /// {p ∈ Ass N : cd_a(M, R/p) = n + d}
    CdFormula,
    /// Supp Ext^d(M, R) ∩ Att H^n_a(N)
    SupportFormula,
}

#[derive(Clone, Debug)]
pub struct AttReport {
    pub att: Vec<MonomialPrime>,
    pub route: AttRoute,
    /// dim N
    pub n: i64,
    /// pd M
    pub d: usize,
    pub witnesses: Vec<CdWitness>,
    /// the same set by the support formula
    pub support_route: Vec<MonomialPrime>,
    /// the same set from exact cd values on regime-box tables, when a and M are monomial
    pub exact_route: Option<Vec<MonomialPrime>>,
    /// Att H^n_a(N)
    pub local: Vec<MonomialPrime>,
    /// Att ⊆ Supp M ∩ Att H^n_a(N)
    pub inclusion_holds: bool,
    /// the inclusion is proper
    pub strict: bool,
    /// for n > 0, no reported prime is maximal (the top module is then not finitely generated)
    pub non_maximal: bool,
}

impl AttReport {
    pub fn routes_agree(&self) -> bool {
        self.att == self.support_route && self.exact_route.as_ref().is_none_or(|e| *e == self.att)
    }

    pub fn passes(&self) -> bool {
        self.routes_agree() && self.inclusion_holds && self.non_maximal
    }

    pub fn display(&self, ring: &RingRef) -> String {
        let ps: Vec<String> = self.att.iter().map(|p| p.display(ring)).collect();
        format!("{{{}}}", ps.join(", "))
    }
}

fn cyclic_of(ring: &RingRef, p: &MonomialPrime) -> Result<AdmissibleModule> {
    AdmissibleModule::cyclic(ring, &p.to_polys(ring))
}

/// a and M over the fine ring, when both are monomial.
fn monomial_data(a: &[Polynomial], m: &ModulePresentation, ring: &RingRef) -> Option<(Vec<Polynomial>, ModulePresentation)> {
    if !a.iter().all(|f| f.is_zero() || f.is_term()) {
        return None;
    }
    let mf = if m.ring().grading() == Grading::Fine { m.clone() } else { fine_presentation(m).ok()? };
    Some((a.iter().map(|f| f.reinterpret(ring)).collect(), mf))
}

fn exact_att(
    a: &[Polynomial],
    m: &ModulePresentation,
    ring: &RingRef,
    ass: &[MonomialPrime],
    top: i64,
) -> Result<Option<Vec<MonomialPrime>>> {
    let Some((af, mf)) = monomial_data(a, m, ring) else { return Ok(None) };
    let mut out = Vec::new();
    for p in ass {
        let cd = cohomological_dimension(&af, &mf, &cyclic_of(ring, p)?)?;
        if cd.map(|c| c as i64) == Some(top) {
            out.push(*p);
        }
    }
    Ok(Some(out))
}

/// Att H^n_a(N) for n = dim N: {p ∈ Ass N : cd_a(R/p) = n}.
pub fn att_top_local(a: &[Polynomial], n: &AdmissibleModule) -> Result<AttReport> {
    let ring = n.ring();
    let r = ModulePresentation::ring_module(ring);
    let dim_n = dim_module(&n.to_presentation());
    let ass = ass_monomial(n);
    let mut witnesses = Vec::with_capacity(ass.len());
    for p in &ass {
        witnesses.push(cd_test(a, &r, p, dim_n)?);
    }
    let att: Vec<MonomialPrime> = witnesses.iter().filter(|w| w.passes).map(|w| w.prime).collect();
    let exact_route = exact_att(a, &r, ring, &ass, dim_n)?;
    let non_maximal = dim_n <= 0 || att.iter().all(|p| !p.is_maximal());
    Ok(AttReport {
        support_route: att.clone(),
        local: att.clone(),
        att,
        route: AttRoute::CdFormula,
        n: dim_n,
        d: 0,
        witnesses,
        exact_route,
        inclusion_holds: true,
        strict: false,
        non_maximal,
    })
}

/// Att H^{n+d}_a(M, N) for d = pd M and n = dim N, by the cd formula, checked
/// against the support formula and exact cd values.
pub fn att_top_gen(a: &[Polynomial], m: &ModulePresentation, n: &AdmissibleModule) -> Result<AttReport> {
    let ring = fine(m.ring());
    let local = att_top_local(a, n)?;
    let dim_n = local.n;
    let d = projective_dimension(m)?.max(0) as usize;
    let ass = ass_monomial(n);
    let mut witnesses = Vec::with_capacity(ass.len());
    for p in &ass {
        witnesses.push(cd_test(a, m, p, dim_n)?);
    }
    let att: Vec<MonomialPrime> = witnesses.iter().filter(|w| w.passes).map(|w| w.prime).collect();

    let ext_ann = annihilator(&ext(d, m, &ModulePresentation::ring_module(m.ring()))?);
    let support_route: Vec<MonomialPrime> = local.att.iter().filter(|p| p.contains_all(&ext_ann)).copied().collect();
    let ann_m = annihilator(m);
    let bound: Vec<MonomialPrime> = local.att.iter().filter(|p| p.contains_all(&ann_m)).copied().collect();
    let inclusion_holds = att.iter().all(|p| bound.contains(p));
    let strict = inclusion_holds && att.len() < local.att.len();
    let exact_route = exact_att(a, m, &ring, &ass, dim_n + d as i64)?;
    let non_maximal = dim_n <= 0 || att.iter().all(|p| !p.is_maximal());
    Ok(AttReport {
        att,
        route: AttRoute::CdFormula,
        n: dim_n,
        d,
        witnesses,
        support_route,
        exact_route,
        local: local.att,
        inclusion_holds,
        strict,
        non_maximal,
    })
}

/// Checks of cd_a(M, −): monotone in the support, and max-additive over split
/// sums and over 0 → (g)/J → R/J → R/(g) → 0 for monomials g with J ⊆ (g).
#[derive(Clone, Debug, Default)]
pub struct CdAudit {
    pub cds: Vec<Option<usize>>,
    /// (i, j, Supp N_i ⊆ Supp N_j implies cd_i ≤ cd_j)
    pub monotone: Vec<(usize, usize, bool)>,
    /// (i, j, cd(N_i ⊕ N_j) = max)
    pub split: Vec<(usize, usize, bool)>,
    pub sequences: Vec<bool>,
}

impl CdAudit {
    pub fn passes(&self) -> bool {
        self.monotone.iter().all(|t| t.2) && self.split.iter().all(|t| t.2) && self.sequences.iter().all(|&b| b)
    }
}

pub fn cd_properties_audit(
    a: &[Polynomial],
    m: &ModulePresentation,
    fixtures: &[AdmissibleModule],
    pairs: &[(Vec<Polynomial>, Polynomial)],
) -> Result<CdAudit> {
    let ring = fine(m.ring());
    let (af, mf) = monomial_data(a, m, &ring)
        .ok_or_else(|| Error::NotMonomial("cd audit needs monomial a and monomial-presented M".into()))?;
    let cd = |x: &AdmissibleModule| cohomological_dimension(&af, &mf, x);
    let mut audit = CdAudit::default();
    let anns: Vec<Vec<Polynomial>> = fixtures.iter().map(|x| annihilator(&x.to_presentation())).collect();
    for x in fixtures {
        audit.cds.push(cd(x)?);
    }
    for i in 0..fixtures.len() {
        for j in 0..fixtures.len() {
            if i != j && radical_contains(&ring, &anns[i], &anns[j]) {
                audit.monotone.push((i, j, audit.cds[i] <= audit.cds[j]));
            }
            if i < j {
                let s = cd(&fixtures[i].direct_sum(&fixtures[j]))?;
                audit.split.push((i, j, s == audit.cds[i].max(audit.cds[j])));
            }
        }
    }
    let k = ring.nvars();
    for (jgens, g) in pairs {
        let j = MonomialIdeal::from_polys(k, &jgens.iter().map(|f| f.reinterpret(&ring)).collect::<Vec<_>>())?;
        let gi = MonomialIdeal::from_polys(k, std::slice::from_ref(&g.reinterpret(&ring)))?;
        let Some(gexp) = gi.gens().first().cloned() else {
            return Err(Error::ZeroElement("sequence generator".into()));
        };
        if !j.gens().iter().all(|h| gexp.iter().zip(h).all(|(a, b)| a <= b)) {
            return Err(Error::Precondition("J must lie in the principal ideal".into()));
        }
        let zero = vec![0; k];
        let whole = AdmissibleModule::new(&ring, vec![Summand { twist: zero.clone(), ideal: j.clone() }])?;
        let sub = AdmissibleModule::new(
            &ring,
            vec![Summand { twist: gexp.iter().map(|&e| i64::from(e)).collect(), ideal: j.colon(&gexp) }],
        )?;
        let quot = AdmissibleModule::new(&ring, vec![Summand { twist: zero, ideal: gi }])?;
        audit.sequences.push(cd(&whole)? == cd(&sub)?.max(cd(&quot)?));
    }
    Ok(audit)
}
