//! Command execution against the bound objects of a session.

use std::fmt;

use fgrad_core::cechloc::{self, fine, fine_presentation};
use fgrad_core::filterreg::{
    equivalence_audit, fgrade, find_fr_sequence, is_fr_sequence, ExtCertificate, FGradeOptions, SearchOptions,
    StopReason,
};
use fgrad_core::fpmod::{dim_module, ext, hilbert_function};
use fgrad_core::spectra::{self, AttReport, MonomialPrime};
use fgrad_core::{
    AdmissibleModule, CohomologyTable, Degree, DegreeWindow, GradeValue, Grading, ModulePresentation, Polynomial,
    RingRef, Vector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use crate::session::{Arg, Command, CommandKind, ModuleExpr, Pos, Session, Value};

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// seeds the sampled exponent vectors of `filter-check`
    pub seed: u64,
    pub max_candidates: usize,
    pub window_margin_extra: i64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, max_candidates: SearchOptions::default().max_candidates, window_margin_extra: 0 }
    }
}

/// The outcome of one command.
#[derive(Clone, Debug)]
pub struct Report {
    /// 1-based position in the session
    pub index: usize,
    pub kind: CommandKind,
    /// the command in canonical form
    pub source: String,
    /// Some for verification commands
    pub verdict: Option<bool>,
    pub lines: Vec<String>,
    pub json: Json,
    pub table: Option<CohomologyTable>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunError {
    pub index: usize,
    pub command: &'static str,
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: command {} ({}): {}", self.pos, self.index, self.command, self.message)
    }
}

impl std::error::Error for RunError {}

/// Executes the commands in order; stops at the first runtime error.
pub fn run(session: &Session, opts: &RunOptions) -> Result<Vec<Report>, RunError> {
    let Some(decl) = &session.ring else { return Ok(Vec::new()) };
    let env = Env { session, ring: decl.ring.clone(), opts: *opts };
    session
        .commands
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let fail = |pos: Pos, message: String| RunError { index: k + 1, command: c.kind.name(), pos, message };
            env.command(c)
                .map(|(verdict, lines, json, table)| Report {
                    index: k + 1,
                    kind: c.kind,
                    source: c.to_string(),
                    verdict,
                    lines,
                    json,
                    table,
                })
                .map_err(|e| fail(e.pos.unwrap_or(c.pos), e.message))
        })
        .collect()
}

struct Failure {
    pos: Option<Pos>,
    message: String,
}

impl From<fgrad_core::Error> for Failure {
    fn from(e: fgrad_core::Error) -> Self {
        Failure { pos: None, message: e.to_string() }
    }
}

fn fail<T>(pos: Pos, message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure { pos: Some(pos), message: message.into() })
}

type Outcome = (Option<bool>, Vec<String>, Json, Option<CohomologyTable>);

struct Env<'a> {
    session: &'a Session,
    ring: RingRef,
    opts: RunOptions,
}

fn grade_json(g: GradeValue) -> Json {
    match g {
        GradeValue::Finite(k) => json!(k),
        GradeValue::Infinity => json!("infinity"),
    }
}

fn polys_json(ps: &[Polynomial]) -> Json {
    json!(ps.iter().map(|p| p.to_string()).collect::<Vec<_>>())
}

fn polys_text(ps: &[Polynomial]) -> String {
    format!("({})", ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))
}

fn cert_json(c: &Option<ExtCertificate>) -> Json {
    match c {
        Some(c) => json!({
            "index": c.index,
            "escaping_generator": c.escaping_generator.to_string(),
            "annihilator": polys_json(&c.annihilator),
        }),
        None => Json::Null,
    }
}

fn cert_text(c: &Option<ExtCertificate>) -> String {
    match c {
        Some(c) => format!("index {}, escaping generator {}", c.index, c.escaping_generator),
        None => "none".into(),
    }
}

fn stop_json(s: &StopReason) -> Json {
    match s {
        StopReason::ReachedTarget => json!("reached_target"),
        StopReason::Maximal => json!("maximal"),
        StopReason::Exhausted { tried } => json!({ "exhausted": tried }),
    }
}

fn stop_text(s: &StopReason) -> String {
    match s {
        StopReason::ReachedTarget => "reached target".into(),
        StopReason::Maximal => "maximal".into(),
        StopReason::Exhausted { tried } => format!("candidate cap hit after {tried}"),
    }
}

fn window_json(w: &DegreeWindow) -> Json {
    json!({ "low": w.low(), "high": w.high() })
}

fn table_json(t: &CohomologyTable) -> Json {
    let mut rows = Vec::new();
    for i in 0..=t.max_index() {
        for (d, v) in t.row(i) {
            if v > 0 {
                rows.push(json!({ "i": i, "degree": d, "dim": v }));
            }
        }
    }
    json!({ "window": window_json(t.window()), "max_index": t.max_index(), "entries": rows })
}

fn indices_json(ix: &[(usize, bool)]) -> Json {
    json!(ix.iter().map(|(i, ok)| json!({ "i": i, "equal": ok })).collect::<Vec<_>>())
}

fn indices_text(ix: &[(usize, bool)]) -> String {
    ix.iter().map(|(i, ok)| format!("{i}:{}", if *ok { "equal" } else { "differ" })).collect::<Vec<_>>().join(" ")
}

impl Env<'_> {
    fn primes(&self, ps: &[MonomialPrime]) -> Vec<String> {
        ps.iter().map(|p| p.display(&self.ring)).collect()
    }

    fn polys(&self, c: &Command, key: &str) -> Result<Vec<Polynomial>, Failure> {
        match c.arg(key) {
            None => fail(c.pos, format!("missing argument `{key}`")),
            Some((Arg::List(ps), _)) => Ok(ps.clone()),
            Some((Arg::Name(n), pos)) => match self.session.binding(n).map(|b| &b.value) {
                Some(Value::Ideal(ps) | Value::Sequence(ps)) => Ok(ps.clone()),
                _ => fail(pos, format!("`{n}` is not an ideal or sequence")),
            },
            Some((_, pos)) => fail(pos, format!("`{key}` must be a list of polynomials")),
        }
    }

    fn int(&self, c: &Command, key: &str, default: Option<i64>) -> Result<i64, Failure> {
        match (c.arg(key), default) {
            (Some((Arg::Int(k), _)), _) => Ok(*k),
            (Some((_, pos)), _) => fail(pos, format!("`{key}` must be an integer")),
            (None, Some(d)) => Ok(d),
            (None, None) => fail(c.pos, format!("missing argument `{key}`")),
        }
    }

    fn range(&self, c: &Command) -> Result<(i64, i64), Failure> {
        match c.arg("window") {
            Some((Arg::Range(lo, hi), _)) => Ok((*lo, *hi)),
            Some((_, pos)) => fail(pos, "`window` must be a range like [-3..3]"),
            None => Ok((-3, 3)),
        }
    }

    fn window(&self, c: &Command) -> Result<DegreeWindow, Failure> {
        let (lo, hi) = self.range(c)?;
        DegreeWindow::cube(self.ring.nvars(), lo, hi).or_else(|e| fail(c.arg("window").map_or(c.pos, |a| a.1), e.to_string()))
    }

    fn expr(&self, e: &ModuleExpr) -> Result<ModulePresentation, Failure> {
        let ring = &self.ring;
        Ok(match e {
            ModuleExpr::Ring(_) => ModulePresentation::ring_module(ring),
            ModuleExpr::Name(n) => match self.session.binding(n).map(|b| &b.value) {
                Some(Value::Module(inner)) => self.expr(inner)?,
                _ => return Err(Failure { pos: None, message: format!("`{n}` is not a module") }),
            },
            ModuleExpr::Coker { rows, twists } => {
                let degrees: Vec<Degree> = match twists {
                    Some(ts) => ts.iter().map(|t| Degree(t.clone())).collect(),
                    None => vec![ring.zero_degree(); rows.len()],
                };
                let ncols = rows.first().map_or(0, Vec::len);
                let rels: Vec<Vector> =
                    (0..ncols).map(|j| Vector::from_polys(&rows.iter().map(|r| r[j].clone()).collect::<Vec<_>>())).collect();
                ModulePresentation::new(ring, degrees, rels)?
            }
            ModuleExpr::Sum(terms) => {
                let mut out = ModulePresentation::zero(ring);
                for t in terms {
                    let deg = t.twist.clone().map_or_else(|| ring.zero_degree(), Degree);
                    let rels = t.gens.iter().map(|f| Vector::from_poly_at(f, 0)).collect();
                    out = out.direct_sum(&ModulePresentation::new(ring, vec![deg], rels)?)?;
                }
                out
            }
        })
    }

    fn module(&self, c: &Command, key: &str) -> Result<ModulePresentation, Failure> {
        match c.arg(key) {
            None => Ok(ModulePresentation::ring_module(&self.ring)),
            Some((Arg::Name(n), pos)) => {
                if self.session.ring.as_ref().is_some_and(|r| r.name == *n) {
                    return Ok(ModulePresentation::ring_module(&self.ring));
                }
                match self.session.binding(n).map(|b| &b.value) {
                    Some(Value::Module(e)) => self.expr(e).map_err(|f| Failure { pos: f.pos.or(Some(pos)), ..f }),
                    _ => fail(pos, format!("`{n}` is not a module")),
                }
            }
            Some((_, pos)) => fail(pos, format!("`{key}` must name a module")),
        }
    }

    /// N as a sum of twisted cyclic monomial quotients over the fine ring.
    fn admissible(&self, c: &Command, key: &str) -> Result<AdmissibleModule, Failure> {
        let m = self.module(c, key)?;
        let pos = c.arg(key).map_or(c.pos, |a| a.1);
        let m = if self.ring.grading() == Grading::Fine {
            m
        } else {
            fine_presentation(&m).or_else(|e| fail(pos, e.to_string()))?
        };
        AdmissibleModule::from_presentation(&m).or_else(|e| fail(pos, e.to_string()))
    }

    fn on_fine(&self, ps: &[Polynomial]) -> Vec<Polynomial> {
        let f = fine(&self.ring);
        ps.iter().map(|p| p.reinterpret(&f)).collect()
    }

    fn command(&self, c: &Command) -> Result<Outcome, Failure> {
        match c.kind {
            CommandKind::Fgrad => self.fgrad(c),
            CommandKind::FilterCheck => self.filter_check(c),
            CommandKind::FindSeq => self.find_seq(c),
            CommandKind::ArtinIndex => self.artin_index(c),
            CommandKind::AllArtinian => self.all_artinian(c),
            CommandKind::AttTop => {
                let rep = spectra::att_top_gen(&self.polys(c, "a")?, &self.module(c, "M")?, &self.admissible(c, "N")?)?;
                Ok(self.att(rep, true))
            }
            CommandKind::AttTopLocal => {
                let rep = spectra::att_top_local(&self.polys(c, "a")?, &self.admissible(c, "N")?)?;
                Ok(self.att(rep, false))
            }
            CommandKind::NsVerify => self.ns_verify(c),
            CommandKind::NsComposeVerify => self.ns_compose(c),
            CommandKind::CechTable => self.cech(c),
            CommandKind::Ext => self.ext(c),
            CommandKind::Hilbert => self.hilbert(c),
        }
    }

    fn fgrad(&self, c: &Command) -> Result<Outcome, Failure> {
        let opts = FGradeOptions {
            search: SearchOptions { max_candidates: self.opts.max_candidates, ..SearchOptions::default() },
            ..FGradeOptions::default()
        };
        let g = fgrade(&self.polys(c, "a")?, &self.polys(c, "b")?, &self.module(c, "M")?, opts)?;
        let ok = g.agree();
        let lines = vec![
            format!("value: {}", g.value),
            format!("sequence: {}", polys_text(&g.sequence)),
            format!("constructive_certificate: {}", g.constructive.map_or("none".into(), |v| v.to_string())),
            format!("ext_certificate: {}", cert_text(&g.ext_certificate)),
            format!("lc_certificate: {}", g.lc_index.map_or("not applicable".into(), |v| v.to_string())),
            format!("infinite_by_support: {}", g.infinite_by_support),
        ];
        let json = json!({
            "value": grade_json(g.value),
            "sequence": polys_json(&g.sequence),
            "constructive_certificate": g.constructive.map_or(Json::Null, grade_json),
            "ext_index": grade_json(g.ext_index),
            "ext_certificate": cert_json(&g.ext_certificate),
            "lc_certificate": g.lc_index.map_or(Json::Null, |v| json!({ "index": grade_json(v) })),
            "infinite_by_support": g.infinite_by_support,
        });
        Ok((Some(ok), lines, json, None))
    }

    fn filter_check(&self, c: &Command) -> Result<Outcome, Failure> {
        let a = self.polys(c, "a")?;
        let xs = self.polys(c, "xs")?;
        let m = self.module(c, "M")?;
        let report = is_fr_sequence(&a, &xs, &m)?;
        let powers = if xs.is_empty() { Vec::new() } else { sample_powers(self.opts.seed, xs.len(), 3) };
        let audit = equivalence_audit(&a, &xs, &m, &powers)?;
        let ok = audit.criteria_agree() && (!report.passes() || audit.powers_pass());
        let powers_json: Vec<Json> = audit.powers.iter().map(|(al, p)| json!({ "alpha": al, "passes": p })).collect();
        let lines = vec![
            format!("verdicts: {:?}", report.verdicts),
            format!("filter_regular: {}", report.passes()),
            format!("saturation_criterion: {:?}", audit.saturation_criterion),
            format!(
                "powers: {}",
                audit.powers.iter().map(|(al, p)| format!("{al:?}:{p}")).collect::<Vec<_>>().join(" ")
            ),
        ];
        let json = json!({
            "sequence": polys_json(&xs),
            "verdicts": report.verdicts,
            "filter_regular": report.passes(),
            "saturation_criterion": audit.saturation_criterion,
            "powers": powers_json,
        });
        Ok((Some(ok), lines, json, None))
    }

    fn find_seq(&self, c: &Command) -> Result<Outcome, Failure> {
        let target = self.int(c, "target", Some(self.ring.nvars() as i64))?;
        let Ok(target) = usize::try_from(target) else {
            return fail(c.arg("target").map_or(c.pos, |a| a.1), "target must be non-negative");
        };
        let opts = SearchOptions { max_candidates: self.opts.max_candidates, ..SearchOptions::default() };
        let o = find_fr_sequence(&self.polys(c, "a")?, &self.polys(c, "b")?, &self.module(c, "M")?, target, opts)?;
        let lines = vec![
            format!("sequence: {}", polys_text(&o.sequence)),
            format!("length: {}", o.sequence.len()),
            format!("stop: {}", stop_text(&o.stop)),
            format!("certificate: {}", cert_text(&o.certificate)),
        ];
        let json = json!({
            "sequence": polys_json(&o.sequence),
            "length": o.sequence.len(),
            "stop": stop_json(&o.stop),
            "certificate": cert_json(&o.certificate),
        });
        Ok((None, lines, json, None))
    }

    fn artin_index(&self, c: &Command) -> Result<Outcome, Failure> {
        let (a, m, n) = (self.polys(c, "a")?, self.module(c, "M")?, self.module(c, "N")?);
        let ix = spectra::artinian_index(&a, &m, &n)?;
        let all = spectra::all_artinian(&a, &m, &n)?;
        let ok = ix.agree() && ix.value.is_infinite() == all;
        let lines = vec![
            format!("value: {}", ix.value),
            format!("ext_dims: {:?}", ix.ext_dims),
            format!("filter_depth: {}", ix.filter_depth),
            format!("all_artinian: {all}"),
        ];
        let json = json!({
            "value": grade_json(ix.value),
            "ext_dims": ix.ext_dims,
            "filter_depth": grade_json(ix.filter_depth),
            "all_artinian": all,
        });
        Ok((Some(ok), lines, json, None))
    }

    fn all_artinian(&self, c: &Command) -> Result<Outcome, Failure> {
        let (a, m, n) = (self.polys(c, "a")?, self.module(c, "M")?, self.module(c, "N")?);
        let all = spectra::all_artinian(&a, &m, &n)?;
        let ix = spectra::artinian_index(&a, &m, &n)?;
        let ok = ix.value.is_infinite() == all;
        let lines = vec![format!("value: {all}"), format!("artinian_index: {}", ix.value)];
        let json = json!({ "value": all, "artinian_index": grade_json(ix.value) });
        Ok((Some(ok), lines, json, None))
    }

    fn att(&self, rep: AttReport, generalized: bool) -> Outcome {
        let set = |ps: &[MonomialPrime]| format!("{{{}}}", self.primes(ps).join(", "));
        let mut lines = vec![
            format!("att: {}", set(&rep.att)),
            format!("n: {}", rep.n),
        ];
        if generalized {
            lines.push(format!("d: {}", rep.d));
            lines.push(format!("local: {}", set(&rep.local)));
            lines.push(format!("support_route: {}", set(&rep.support_route)));
        }
        lines.push(format!("exact_route: {}", rep.exact_route.as_ref().map_or("not applicable".into(), |e| set(e))));
        lines.push(format!("routes_agree: {}", rep.routes_agree()));
        if generalized {
            lines.push(format!("inclusion_holds: {}", rep.inclusion_holds));
            lines.push(format!("strict: {}", rep.strict));
        }
        lines.push(format!("non_maximal: {}", rep.non_maximal));
        let witnesses: Vec<Json> = rep
            .witnesses
            .iter()
            .map(|w| {
                json!({
                    "prime": w.prime.display(&self.ring),
                    "dim_quotient": w.dim_quotient,
                    "dim_sum": w.dim_sum,
                    "ext_support": w.ext_support,
                    "passes": w.passes,
                })
            })
            .collect();
        let json = json!({
            "att": self.primes(&rep.att),
            "n": rep.n,
            "d": rep.d,
            "local": self.primes(&rep.local),
            "support_route": self.primes(&rep.support_route),
            "exact_route": rep.exact_route.as_ref().map_or(Json::Null, |e| json!(self.primes(e))),
            "routes_agree": rep.routes_agree(),
            "inclusion_holds": rep.inclusion_holds,
            "strict": rep.strict,
            "non_maximal": rep.non_maximal,
            "witnesses": witnesses,
        });
        (Some(rep.passes()), lines, json, None)
    }

    fn ns_verify(&self, c: &Command) -> Result<Outcome, Failure> {
        let w = self.window(c)?;
        let rep = cechloc::ns_verify(
            &self.polys(c, "a")?,
            &self.polys(c, "xs")?,
            &self.module(c, "M")?,
            &self.admissible(c, "N")?,
            &w,
        )?;
        let lines = vec![
            format!("window: {:?}..{:?}", w.low(), w.high()),
            format!("indices: {}", indices_text(&rep.indices)),
            format!("h0_exact_equal: {}", rep.h0_equal),
            format!("margin_stable: {}", rep.margin_stable),
        ];
        let json = json!({
            "window": window_json(&w),
            "indices": indices_json(&rep.indices),
            "h0_exact_equal": rep.h0_equal,
            "margin_stable": rep.margin_stable,
        });
        Ok((Some(rep.passes()), lines, json, None))
    }

    fn ns_compose(&self, c: &Command) -> Result<Outcome, Failure> {
        let w = self.window(c)?;
        let rep = cechloc::ns_compose_verify(
            &self.polys(c, "a")?,
            &self.polys(c, "xs")?,
            &self.module(c, "M")?,
            &self.admissible(c, "N")?,
            &w,
            self.opts.window_margin_extra,
        )?;
        let lines = vec![
            format!("window: {:?}..{:?}", w.low(), w.high()),
            format!("pd: {}", rep.pd),
            format!("length: {}", rep.length),
            format!("margin: {}", rep.margin),
            format!("indices: {}", indices_text(&rep.indices)),
            format!("margin_stable: {}", rep.margin_stable),
        ];
        let json = json!({
            "window": window_json(&w),
            "pd": rep.pd,
            "length": rep.length,
            "margin": rep.margin,
            "indices": indices_json(&rep.indices),
            "margin_stable": rep.margin_stable,
        });
        Ok((Some(rep.passes()), lines, json, None))
    }

    fn cech(&self, c: &Command) -> Result<Outcome, Failure> {
        let w = self.window(c)?;
        let n = self.admissible(c, "N")?;
        let a = self.on_fine(&self.polys(c, "a")?);
        let t = match c.arg("M") {
            None => cechloc::cech_table(&a, &n, &w)?,
            Some(_) => {
                let m = self.module(c, "M")?;
                let m = if self.ring.grading() == Grading::Fine { m } else { fine_presentation(&m)? };
                cechloc::gen_cech_table(&a, &m, &n, &w)?
            }
        };
        let lines = t.to_string().lines().map(str::to_string).collect();
        Ok((None, lines, table_json(&t), Some(t)))
    }

    fn ext(&self, c: &Command) -> Result<Outcome, Failure> {
        let i = self.int(c, "i", None)?;
        let Ok(i) = usize::try_from(i) else { return fail(c.arg("i").map_or(c.pos, |a| a.1), "i must be non-negative") };
        let e = ext(i, &self.module(c, "M")?, &self.module(c, "N")?)?.minimize()?;
        let rels: Vec<String> = e.relations().iter().map(|r| r.display(e.ring(), e.ngens()).to_string()).collect();
        let mut lines = vec![
            format!("generator_degrees: [{}]", e.degrees().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")),
            format!("dim: {}", dim_module(&e)),
        ];
        lines.extend(rels.iter().map(|r| format!("relation: {r}")));
        let json = json!({
            "generator_degrees": e.degrees().iter().map(|d| d.0.clone()).collect::<Vec<_>>(),
            "relations": rels,
            "is_zero": e.is_zero(),
            "dim": dim_module(&e),
        });
        Ok((None, lines, json, None))
    }

    fn hilbert(&self, c: &Command) -> Result<Outcome, Failure> {
        let m = self.module(c, "M")?;
        let degrees: Vec<Degree> = if self.ring.grading() == Grading::Fine {
            self.window(c)?.points().into_iter().map(Degree).collect()
        } else {
            let (lo, hi) = match c.arg("window") {
                None => (0, 5),
                Some(_) => self.range(c)?,
            };
            (lo..=hi).map(|d| Degree(vec![d])).collect()
        };
        let values = hilbert_function(&m, &degrees);
        let lines = degrees.iter().zip(&values).map(|(d, v)| format!("{d}: {v}")).collect();
        let json = json!({
            "values": degrees.iter().zip(&values).map(|(d, v)| json!({ "degree": d.0, "dim": v })).collect::<Vec<_>>(),
        });
        Ok((None, lines, json, None))
    }
}

/// Exponent vectors in [1, 3]^len drawn from a seeded stream.
fn sample_powers(seed: u64, len: usize, count: usize) -> Vec<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..len).map(|_| rng.gen_range(1..=3)).collect()).collect()
}
