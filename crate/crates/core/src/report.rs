//! Running the verification suites on an instance and assembling the
//! machine-readable report.
//!
//! Report keys appear in a fixed order: `instance`, `certificate`,
//! `monoids`, `gamma`, `gamma0`, `prop31`, `verdicts`, `timing`, `version`.
//! Sections a suite does not compute are `null`. `timing` is `null` unless
//! requested, so the report is a function of the instance text, the seed
//! and the crate version alone.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::comonadicity::{
    certify, is_conservative, preserves_equalizer, unit_on_cyclics, Certificate, EvidenceKind, UnitReport, Witness,
};
use crate::coring::{comparison_functor, twist_comodule, Comodule};
use crate::descent::{
    Budgets, ComatrixDescent, Descent, EmbeddingReport, GammaWitness, HatReport, InvReport, Mutation, Prop31Report,
    TriangleReport,
};
use crate::error::{Error, Result};
use crate::instance::{InstanceFile, InstanceSpec};
use crate::bimodule::Bimodule;
use crate::monoid::MonoidTable;
use crate::projective::EndAlgebra;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The comonadicity checks are finite: sufficient conditions are verified
/// exactly, and the comodule-level conditions only on the listed comodules.
const SCOPE: &str = "comonadicity is certified through sufficient conditions checked exactly; \
     conservativity and equalizer preservation are checked only on the comodules listed here \
     (twists of the regular comodule, the right regular comodule, K(B)) and the unit on cyclic modules B/L";
const PURITY: &str = "purity of B -> S is checked as conservativity of S (x)_B - on simple modules";
const GAMMA_PRIME_DOMAIN: &str = "Gamma' is evaluated on the right-invertible subbimodules I^r and reverses products";
const CORING_LABELS: [&str; 2] = ["S-coring S (x)_B S", "written B-coring, End_B-cor"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    Gamma,
    Comatrix,
    Prop31,
    Comonadicity,
}

impl Suite {
    fn gamma(self) -> bool {
        matches!(self, Suite::All | Suite::Gamma)
    }

    fn comatrix(self) -> bool {
        matches!(self, Suite::All | Suite::Comatrix)
    }

    fn prop31(self) -> bool {
        matches!(self, Suite::All | Suite::Prop31)
    }

    fn comonadicity(self) -> bool {
        matches!(self, Suite::All | Suite::Comonadicity)
    }

    fn descent(self) -> bool {
        self != Suite::Comonadicity
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "gamma" => Ok(Suite::Gamma),
            "comatrix" => Ok(Suite::Comatrix),
            "prop31" => Ok(Suite::Prop31),
            "comonadicity" => Ok(Suite::Comonadicity),
            _ => Err(Error::Instance(vec![format!(
                "unknown suite `{s}` (all, gamma, comatrix, prop31, comonadicity)"
            )])),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::All => "all",
            Suite::Gamma => "gamma",
            Suite::Comatrix => "comatrix",
            Suite::Prop31 => "prop31",
            Suite::Comonadicity => "comonadicity",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Computed without a certificate gating the claim.
    Observed,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: &'static str,
    pub status: Status,
    /// The evidence that makes the claim assertable, if any is required.
    pub gate: Option<String>,
    pub holds: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceSummary {
    pub name: String,
    pub hash: String,
    pub p: u32,
    pub seed: u64,
    pub suite: Suite,
    pub base_dim: usize,
    pub top_dim: usize,
    pub comatrix_dim: Option<usize>,
    pub budgets: Budgets,
    pub coring_labels: [&'static str; 2],
    pub data: InstanceFile,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvidenceSummary {
    pub kind: &'static str,
    pub reverified: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EqualizerSummary {
    pub checked: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConservativeSummary {
    pub holds: bool,
    pub simple_modules_checked: usize,
    /// A maximal left ideal `L` with `S (x)_B B/L = 0`.
    pub killed: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateSummary {
    pub certified: bool,
    pub selected: Option<&'static str>,
    pub evidence: Vec<EvidenceSummary>,
    pub left_comonadic: bool,
    pub right_comonadic: bool,
    pub conservative: Option<ConservativeSummary>,
    pub unit_on_cyclics: Option<UnitReport>,
    pub equalizers: Option<EqualizerSummary>,
    pub scope: &'static str,
    pub purity: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableSummary {
    pub members: Vec<usize>,
    pub labels: Vec<String>,
    /// Products within `members`, positions indexing `members`; absent when
    /// the set is not closed under products.
    pub table: Option<MonoidTable>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonoidsSummary {
    pub subbimodules: TableSummary,
    pub left_invertible: TableSummary,
    pub right_invertible: TableSummary,
    pub inv: TableSummary,
    pub inv_equals_left_right_intersection: bool,
    pub end: TableSummary,
    pub aut: TableSummary,
    pub end_candidates: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaSection {
    pub gamma: GammaWitness,
    pub gamma_prime: GammaWitness,
    pub gamma_prime_note: &'static str,
    pub inv: InvReport,
    /// Whether `S (x)_B -` reflects equality of nested subbimodules.
    pub embedding: EmbeddingReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct Gamma0Section {
    pub module_dim: usize,
    pub sigma_dim: usize,
    pub xi_bijective: bool,
    pub sigma_end: TableSummary,
    pub sigma_aut: TableSummary,
    pub hat: HatReport,
    pub triangle: TriangleReport,
    pub gamma0: GammaWitness,
    pub gamma0_prime: GammaWitness,
    pub gamma0_group: GammaWitness,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop31Row {
    pub g: usize,
    #[serde(flatten)]
    pub report: Prop31Report,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop31Section {
    pub rows: Vec<Prop31Row>,
    pub all_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub total_ms: f64,
    pub sections: Vec<(String, f64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub instance: InstanceSummary,
    pub certificate: CertificateSummary,
    pub monoids: Option<MonoidsSummary>,
    pub gamma: Option<GammaSection>,
    pub gamma0: Option<Gamma0Section>,
    pub prop31: Option<Prop31Section>,
    pub verdicts: Vec<Verdict>,
    pub timing: Option<Timing>,
    pub version: &'static str,
    #[serde(skip)]
    pub guard: Option<Error>,
}

impl VerificationReport {
    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn failures(&self) -> Vec<&Verdict> {
        self.verdicts.iter().filter(|v| v.status == Status::Fail).collect()
    }

    /// 0 when every asserted verdict passes, 1 on a failed verdict, 3 when
    /// a resource guard fired.
    pub fn exit_code(&self) -> i32 {
        if self.guard.is_some() {
            3
        } else if !self.failures().is_empty() {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub timing: bool,
    pub mutation: Option<Mutation>,
}

struct Clock {
    on: bool,
    start: Instant,
    last: Instant,
    sections: Vec<(String, f64)>,
}

impl Clock {
    fn new(on: bool) -> Self {
        let now = Instant::now();
        Clock {
            on,
            start: now,
            last: now,
            sections: Vec::new(),
        }
    }

    fn lap(&mut self, name: &str) {
        if self.on {
            let now = Instant::now();
            self.sections.push((name.into(), (now - self.last).as_secs_f64() * 1e3));
            self.last = now;
        }
    }

    fn finish(self) -> Option<Timing> {
        self.on.then(|| Timing {
            total_ms: self.start.elapsed().as_secs_f64() * 1e3,
            sections: self.sections,
        })
    }
}

pub fn run_suite(spec: &InstanceSpec, suite: Suite) -> Result<VerificationReport> {
    run_suite_with(spec, suite, RunOptions::default())
}

/// Run `suite`. Budget overruns do not fail the call: the report keeps what
/// was computed, records the guard, and marks the rest skipped.
pub fn run_suite_with(spec: &InstanceSpec, suite: Suite, options: RunOptions) -> Result<VerificationReport> {
    let mut clock = Clock::new(options.timing);
    let ext = &spec.extension;
    let budgets = spec.budgets;
    let mut guard: Option<Error> = None;
    let absorb = |e: Error, guard: &mut Option<Error>| -> Result<()> {
        if e.is_budget() {
            guard.get_or_insert(e);
            Ok(())
        } else {
            Err(e)
        }
    };

    let module_pair = match &spec.comatrix {
        Some(m) => {
            let end = EndAlgebra::build(m)?;
            let dual = end.mstar_as().restrict_right(end.extension().map())?;
            Some((m.clone(), dual))
        }
        None => None,
    };
    let cert = match certify(ext, module_pair.as_ref().map(|(m, d)| (m, d)), budgets.subspaces) {
        Ok(c) => c,
        Err(e) => {
            absorb(e, &mut guard)?;
            None
        }
    };
    clock.lap("certify");

    let mut comatrix: Option<ComatrixDescent> = None;
    let mut descent: Option<Descent> = None;
    if suite.descent() && guard.is_none() {
        let built = match (&spec.comatrix, suite.comatrix()) {
            (Some(m), true) => ComatrixDescent::new(m, budgets).map(|cd| {
                let d = cd.descent().clone();
                comatrix = Some(cd);
                d
            }),
            _ => Descent::new(ext, budgets),
        };
        match built {
            Ok(d) => descent = Some(d.with_mutation(options.mutation)),
            Err(e) => absorb(e, &mut guard)?,
        }
        clock.lap("descent");
    }

    let mut certificate = certificate_summary(spec, cert.as_ref());
    if suite.comonadicity() && guard.is_none() {
        if let Err(e) = comonadicity_checks(spec, descent.as_ref(), &mut certificate) {
            absorb(e, &mut guard)?;
        }
        clock.lap("comonadicity");
    }

    let monoids = descent.as_ref().map(monoids_summary);
    let gamma = match (&descent, suite.gamma()) {
        (Some(d), true) => {
            let s = GammaSection {
                gamma: d.gamma_witness(),
                gamma_prime: d.gamma_prime_witness(),
                gamma_prime_note: GAMMA_PRIME_DOMAIN,
                inv: d.inv_group(),
                embedding: d.embedding_report(),
            };
            clock.lap("gamma");
            Some(s)
        }
        _ => None,
    };
    let gamma0 = comatrix.as_ref().map(|cd| {
        let s = gamma0_section(cd);
        clock.lap("gamma0");
        s
    });
    let prop31 = match (&descent, suite.prop31()) {
        (Some(d), true) => {
            let rows: Vec<Prop31Row> = d
                .prop31()?
                .into_iter()
                .enumerate()
                .map(|(g, report)| Prop31Row { g, report })
                .collect();
            clock.lap("prop31");
            Some(Prop31Section {
                all_agree: rows.iter().all(|r| r.report.agree()),
                rows,
            })
        }
        _ => None,
    };

    let coring_ok = descent.as_ref().map(|d| {
        let mut v: Vec<String> = d.coring().axiom_violations();
        if let Some(cd) = &comatrix {
            v.extend(cd.sigma().coring().axiom_violations());
        }
        v
    });
    let verdicts = verdicts(
        cert.as_ref(),
        &certificate,
        coring_ok,
        gamma.as_ref(),
        gamma0.as_ref(),
        prop31.as_ref(),
        spec.comatrix.is_some() && suite.comatrix(),
        guard.as_ref(),
    );

    Ok(VerificationReport {
        instance: InstanceSummary {
            name: spec.name.clone(),
            hash: spec.hash.clone(),
            p: ext.field().modulus(),
            seed: spec.seed,
            suite,
            base_dim: ext.base().dim(),
            top_dim: ext.top().dim(),
            comatrix_dim: spec.comatrix.as_ref().map(Bimodule::dim),
            budgets,
            coring_labels: CORING_LABELS,
            data: spec.file.clone(),
        },
        certificate,
        monoids,
        gamma,
        gamma0,
        prop31,
        verdicts,
        timing: clock.finish(),
        version: VERSION,
        guard,
    })
}

fn certificate_summary(spec: &InstanceSpec, cert: Option<&Certificate>) -> CertificateSummary {
    let evidence = cert
        .map(|c| {
            c.evidence
                .iter()
                .map(|ev| EvidenceSummary {
                    kind: ev.kind.name(),
                    reverified: ev.reverify(&spec.extension),
                    detail: match &ev.witness {
                        Witness::Retraction(pi) => format!("pi = {:?}", pi.to_rows()),
                        Witness::Flat { witness, .. } => format!(
                            "dual basis of size {}, {} simple modules kept nonzero",
                            witness.dual_basis.elements.len(),
                            witness.checks.len()
                        ),
                    },
                })
                .collect()
        })
        .unwrap_or_default();
    CertificateSummary {
        certified: cert.is_some(),
        selected: cert.map(|c| c.kind().name()),
        evidence,
        left_comonadic: cert.is_some_and(Certificate::left_comonadic),
        right_comonadic: cert.is_some_and(Certificate::right_comonadic),
        conservative: None,
        unit_on_cyclics: None,
        equalizers: None,
        scope: SCOPE,
        purity: PURITY,
    }
}

fn comonadicity_checks(spec: &InstanceSpec, descent: Option<&Descent>, out: &mut CertificateSummary) -> Result<()> {
    let ext = &spec.extension;
    let budget = spec.budgets.subspaces;
    out.conservative = Some(match is_conservative(ext, budget)? {
        Ok(checks) => ConservativeSummary {
            holds: true,
            simple_modules_checked: checks.len(),
            killed: None,
        },
        Err(l) => ConservativeSummary {
            holds: false,
            simple_modules_checked: 0,
            killed: Some(l.label()),
        },
    });
    out.unit_on_cyclics = Some(unit_on_cyclics(ext, budget)?);

    let mut comodules: Vec<(String, Comodule)> = vec![
        ("right regular".into(), Comodule::right_regular(ext)),
        (
            "K(B)".into(),
            comparison_functor(ext, &Bimodule::regular(ext.base()).forget_right())?,
        ),
    ];
    if let Some(d) = descent {
        let left = Comodule::left_regular(ext);
        for (k, g) in d.endos().elements.iter().enumerate() {
            comodules.push((format!("twist(g{k})"), twist_comodule(d.coring(), g, &left)?));
        }
    }
    let mut failures = Vec::new();
    for (name, y) in &comodules {
        let r = preserves_equalizer(y)?;
        if !r.preserved {
            failures.push(format!("{name}: equalizer not preserved"));
        }
        if !r.split_self_test {
            failures.push(format!("{name}: split equalizer self-test"));
        }
    }
    out.equalizers = Some(EqualizerSummary {
        checked: comodules.len(),
        failures,
    });
    Ok(())
}

fn table_summary(all: &MonoidTable, members: Vec<usize>, label: impl Fn(usize) -> String) -> TableSummary {
    TableSummary {
        labels: members.iter().map(|&k| label(k)).collect(),
        table: all.restrict(&members),
        members,
    }
}

fn endo_label(identity: usize) -> impl Fn(usize) -> String {
    move |k| {
        if k == identity {
            format!("g{k} (identity)")
        } else {
            format!("g{k}")
        }
    }
}

fn monoids_summary(d: &Descent) -> MonoidsSummary {
    let lattice = &d.lattice().table;
    let label = |k| d.label(k);
    let end = &d.endos().table;
    let inv = d.invertible();
    let left = d.left_invertible();
    let right = d.right_invertible();
    let both: Vec<usize> = left.iter().copied().filter(|k| right.contains(k)).collect();
    MonoidsSummary {
        subbimodules: table_summary(lattice, (0..lattice.len()).collect(), label),
        inv_equals_left_right_intersection: both == inv,
        left_invertible: table_summary(lattice, left, label),
        right_invertible: table_summary(lattice, right, label),
        inv: table_summary(lattice, inv, label),
        end: table_summary(end, (0..end.len()).collect(), endo_label(end.identity())),
        aut: table_summary(end, d.endos().automorphisms(), endo_label(end.identity())),
        end_candidates: d.endos().candidates,
    }
}

fn gamma0_section(cd: &ComatrixDescent) -> Gamma0Section {
    let endos = cd.sigma_endos();
    let id = endos.table.identity();
    Gamma0Section {
        module_dim: cd.sigma().module().dim(),
        sigma_dim: cd.sigma().coring().dim(),
        xi_bijective: cd.sigma().end().xi_is_bijective(),
        sigma_end: table_summary(&endos.table, (0..endos.table.len()).collect(), endo_label(id)),
        sigma_aut: table_summary(&endos.table, endos.automorphisms(), endo_label(id)),
        hat: cd.hat_report(),
        triangle: cd.triangle(),
        gamma0: cd.gamma0_witness(),
        gamma0_prime: cd.gamma0_prime_witness(),
        gamma0_group: cd.gamma0_group_witness(),
    }
}

fn witness_detail(w: &GammaWitness) -> String {
    let mut s = format!(
        "domain {} -> targets {}; closed {}, unit {}, homomorphism {}, bijection {}, inverse {}",
        w.domain.len(),
        w.targets.len(),
        w.domain_closed,
        w.preserves_unit,
        w.homomorphism,
        w.bijection,
        w.inverse_law
    );
    if let Some(first) = w.counterexamples.first() {
        s.push_str(&format!("; first counterexample: {first}"));
    }
    s
}

/// A claim that only holds under `gate`.
fn gated(name: &'static str, gate: Option<&str>, holds: bool, detail: String) -> Verdict {
    let status = match (gate, holds) {
        (Some(_), true) => Status::Pass,
        (Some(_), false) => Status::Fail,
        (None, _) => Status::Observed,
    };
    Verdict {
        name,
        status,
        gate: gate.map(str::to_string),
        holds: Some(holds),
        detail,
    }
}

fn unconditional(name: &'static str, holds: bool, detail: String) -> Verdict {
    Verdict {
        name,
        status: if holds { Status::Pass } else { Status::Fail },
        gate: None,
        holds: Some(holds),
        detail,
    }
}

fn skipped(name: &'static str, why: &str) -> Verdict {
    Verdict {
        name,
        status: Status::Skipped,
        gate: None,
        holds: None,
        detail: why.into(),
    }
}

fn first_kind(cert: Option<&Certificate>, pred: impl Fn(EvidenceKind) -> bool) -> Option<&'static str> {
    cert?.kinds().into_iter().find(|&k| pred(k)).map(EvidenceKind::name)
}

#[allow(clippy::too_many_arguments)]
fn verdicts(
    cert: Option<&Certificate>,
    summary: &CertificateSummary,
    coring: Option<Vec<String>>,
    gamma: Option<&GammaSection>,
    gamma0: Option<&Gamma0Section>,
    prop31: Option<&Prop31Section>,
    comatrix_requested: bool,
    guard: Option<&Error>,
) -> Vec<Verdict> {
    let not_run = if guard.is_some() {
        "not computed: a resource guard fired"
    } else {
        "not part of this suite"
    };
    let no_comatrix = if comatrix_requested {
        "not computed"
    } else {
        "instance has no comatrix block or suite excludes it"
    };
    let left = first_kind(cert, EvidenceKind::left_comonadic);
    let right = first_kind(cert, EvidenceKind::right_comonadic);
    let on_ext = first_kind(cert, |k| k.left_comonadic() || k.right_comonadic());
    let module_level = first_kind(cert, |k| {
        matches!(
            k,
            EvidenceKind::LeftFlatM | EvidenceKind::RightFlatMDual | EvidenceKind::BimoduleRetraction
        )
    });
    let mut out = Vec::new();

    out.push(match coring {
        Some(v) if v.is_empty() => unconditional("coring_axioms", true, "coassociativity and counit hold".into()),
        Some(v) => unconditional("coring_axioms", false, v.join("; ")),
        None => skipped("coring_axioms", not_run),
    });

    match prop31 {
        Some(p) => {
            let bad: Vec<String> = p.rows.iter().filter(|r| !r.report.agree()).map(|r| format!("g{}", r.g)).collect();
            out.push(unconditional(
                "prop31_conditions_agree",
                bad.is_empty(),
                format!("{} endomorphisms; disagreeing: {bad:?}", p.rows.len()),
            ));
            let counit = p.rows.iter().all(|r| r.report.counit_equals_m_l);
            out.push(unconditional(
                "counit_equals_m_l",
                counit,
                "counit at the twisted comodule equals m^l_J(g) for every g".into(),
            ));
            let eq = p.rows.iter().all(|r| r.report.equalizer_equals_j);
            out.push(unconditional(
                "equalizer_equals_j",
                eq,
                "R_S(twist(g, S)) = J(g) for every g".into(),
            ));
        }
        None => {
            for n in ["prop31_conditions_agree", "counit_equals_m_l", "equalizer_equals_j"] {
                out.push(skipped(n, not_run));
            }
        }
    }

    match (gamma, prop31) {
        (Some(g), Some(p)) => {
            let all_hold = p.rows.iter().all(|r| r.report.conditions().iter().all(|&c| c));
            let iso = g.gamma.is_isomorphism();
            let gate = g.embedding.holds().then_some("embedding-reflected");
            out.push(gated(
                "gamma_iff_prop31",
                gate,
                iso == all_hold,
                format!("Gamma iso: {iso}; conditions hold for every g: {all_hold}"),
            ));
        }
        _ => out.push(skipped("gamma_iff_prop31", "needs the gamma and prop31 suites")),
    }

    match gamma {
        Some(g) => {
            out.push(gated(
                "gamma_monoid_iso",
                left,
                g.gamma.is_isomorphism(),
                witness_detail(&g.gamma),
            ));
            out.push(gated(
                "gamma_prime_anti_iso",
                right,
                g.gamma_prime.is_isomorphism(),
                witness_detail(&g.gamma_prime),
            ));
            out.push(gated(
                "gamma_group_iso",
                on_ext,
                g.inv.witness.is_isomorphism(),
                witness_detail(&g.inv.witness),
            ));
        }
        None => {
            for n in ["gamma_monoid_iso", "gamma_prime_anti_iso", "gamma_group_iso"] {
                out.push(skipped(n, not_run));
            }
        }
    }

    match gamma0 {
        Some(s) => {
            out.push(unconditional(
                "hat_injective_multiplicative",
                s.xi_bijective && s.hat.injective && s.hat.multiplicative,
                format!(
                    "xi bijective {}, injective {}, multiplicative {}",
                    s.xi_bijective, s.hat.injective, s.hat.multiplicative
                ),
            ));
            out.push(unconditional(
                "triangle_commutes",
                s.triangle.commutes(),
                if s.triangle.violations.is_empty() {
                    format!("{} subbimodules checked", s.triangle.checked)
                } else {
                    format!("{} subbimodules checked; {}", s.triangle.checked, s.triangle.violations.join("; "))
                },
            ));
            out.push(gated(
                "gamma0_monoid_iso",
                left,
                s.gamma0.is_isomorphism(),
                witness_detail(&s.gamma0),
            ));
            out.push(gated(
                "gamma0_prime_anti_iso",
                right,
                s.gamma0_prime.is_isomorphism(),
                witness_detail(&s.gamma0_prime),
            ));
            out.push(gated(
                "gamma0_group_iso",
                on_ext,
                s.gamma0_group.is_isomorphism(),
                witness_detail(&s.gamma0_group),
            ));
            out.push(gated(
                "gamma0_group_iso_module_conditions",
                module_level,
                s.gamma0_group.is_isomorphism(),
                witness_detail(&s.gamma0_group),
            ));
        }
        None => {
            for n in [
                "hat_injective_multiplicative",
                "triangle_commutes",
                "gamma0_monoid_iso",
                "gamma0_prime_anti_iso",
                "gamma0_group_iso",
                "gamma0_group_iso_module_conditions",
            ] {
                out.push(skipped(n, no_comatrix));
            }
        }
    }

    match (&summary.conservative, &summary.unit_on_cyclics, &summary.equalizers) {
        (Some(cons), Some(unit), Some(eq)) => {
            let holds = cons.holds && unit.holds() && eq.failures.is_empty();
            out.push(gated(
                "comonadicity_checks",
                summary.selected,
                holds,
                format!(
                    "conservative {}, unit bijective on {} cyclic modules {}, {} comodules with {} equalizer failures",
                    cons.holds,
                    unit.checked,
                    unit.holds(),
                    eq.checked,
                    eq.failures.len()
                ),
            ));
        }
        _ => out.push(skipped("comonadicity_checks", not_run)),
    }

    if let Some(e) = guard {
        out.push(skipped("resource_guard", &e.to_string()));
    }
    out
}
