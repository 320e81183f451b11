//! Witnesses, findings and check reports.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::connections::{
    born_connection, born_torsion_formula_defect, canonical_connection, generalized_torsion_defect, kunneth_connection,
    levi_civita, omega_k_defect, Certified, Connection,
};
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::matrix::Matrix;
use crate::model::{Model, StructureDecl};
use crate::multilinear::Endomorphism;
use crate::rational::Rational;
use crate::structures::{
    build_almost_kunneth, build_born, build_hypersymplectic, enhance_kunneth, s1_family, s1_hypotheses,
    verify_born_identities, AlmostKunneth, BornStructure, Hypersymplectic, BORN_AXIOMS, EIGENSPACE_GEOMETRY,
    IDENTITY_TABLE, SIGNATURES,
};

/// A concrete counterexample: 1-based basis indices and the exact nonzero value there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub note: String,
    pub indices: Vec<usize>,
    pub value: Rational,
}

impl Witness {
    /// Takes 0-based indices and stores them 1-based.
    pub fn new(note: &str, indices: &[usize], value: Rational) -> Self {
        Witness {
            note: note.to_string(),
            indices: indices.iter().map(|i| i + 1).collect(),
            value,
        }
    }

    pub fn from_matrix(note: &str, m: &Matrix) -> Option<Self> {
        m.first_nonzero()
            .map(|(i, j, v)| Witness::new(note, &[i, j], v.clone()))
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
        write!(f, "{}({}) = {}", self.note, idx.join(","), self.value)
    }
}

/// One verified property. `witness` is `None` exactly when the property holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub category: &'static str,
    pub name: String,
    pub witness: Option<Witness>,
}

impl Finding {
    pub fn new(category: &'static str, name: impl Into<String>, witness: Option<Witness>) -> Self {
        Finding {
            category,
            name: name.into(),
            witness,
        }
    }

    /// Finding for a matrix identity whose defect must vanish.
    pub fn matrix(category: &'static str, name: impl Into<String>, defect: &Matrix) -> Self {
        let name = name.into();
        let w = Witness::from_matrix(&name, defect);
        Finding::new(category, name, w)
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn all_passed(findings: &[Finding]) -> bool {
    findings.iter().all(Finding::passed)
}

/// The checks a report can contain, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    BornAxioms,
    KunnethAxioms,
    HypersymplecticAxioms,
    IdentityTable,
    Integrability,
    EigenspaceGeometry,
    Signatures,
    Connections,
    GeneralizedTorsion,
    OmegaK,
    TorsionFormula,
    S1Family,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::BornAxioms,
        Check::KunnethAxioms,
        Check::HypersymplecticAxioms,
        Check::IdentityTable,
        Check::Integrability,
        Check::EigenspaceGeometry,
        Check::Signatures,
        Check::Connections,
        Check::GeneralizedTorsion,
        Check::OmegaK,
        Check::TorsionFormula,
        Check::S1Family,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::BornAxioms => "born_axioms",
            Check::KunnethAxioms => "kunneth_axioms",
            Check::HypersymplecticAxioms => "hypersymplectic_axioms",
            Check::IdentityTable => "identity_table",
            Check::Integrability => "integrability",
            Check::EigenspaceGeometry => "eigenspace_geometry",
            Check::Signatures => "signatures",
            Check::Connections => "connections",
            Check::GeneralizedTorsion => "generalized_torsion",
            Check::OmegaK => "omega_k",
            Check::TorsionFormula => "torsion_formula",
            Check::S1Family => "s1_family",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

/// Outcome of one check on one subject. A failure always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub check: Check,
    pub subject: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub detail: String,
    pub elapsed: Option<Duration>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub model: String,
    pub results: Vec<CheckResult>,
}

impl Report {
    /// Pass iff nothing failed.
    pub fn overall(&self) -> Status {
        if self.results.iter().any(|r| r.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        }
    }

    pub fn find(&self, check: Check, subject: &str) -> Option<&CheckResult> {
        self.results
            .iter()
            .find(|r| r.check == check && r.subject == subject)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub mode: ExecMode,
    /// Overrides the model's own check list.
    pub checks: Option<Vec<Check>>,
    pub timings: bool,
}

/// A successfully built structure, or the check that its construction failed.
#[derive(Clone, Debug)]
pub enum Built {
    Kunneth(AlmostKunneth),
    Born {
        born: BornStructure,
        /// The Künneth structure an enhanced declaration started from.
        declared: Option<AlmostKunneth>,
        /// Built as a member of a circle family.
        family: bool,
    },
    Hyper {
        hs: Hypersymplectic,
        jtilde: Option<Endomorphism>,
        /// Comparisons against operators and metric supplied in the model.
        expected: Vec<Finding>,
    },
    Failed {
        check: Check,
        witness: Witness,
        detail: String,
    },
}

struct Subject {
    label: String,
    built: Built,
}

/// Witness carried by a construction error, or a placeholder naming it.
pub fn error_witness(e: &Error) -> Witness {
    match e {
        Error::AxiomFailure { witness, .. }
        | Error::NotCompatible(witness)
        | Error::NotClosed { witness, .. }
        | Error::HypothesisFailure { witness, .. }
        | Error::NotIsotropic { witness, .. } => (**witness).clone(),
        Error::JacobiViolation { i, j, k, l, value } => Witness::new("Jacobi", &[*i, *j, *k, *l], value.clone()),
        Error::Degenerate(name) => Witness {
            note: format!("det {name}"),
            indices: vec![],
            value: Rational::zero(),
        },
        other => Witness {
            note: other.to_string(),
            indices: vec![],
            value: Rational::zero(),
        },
    }
}

fn failed(check: Check, e: Error) -> Built {
    let witness = error_witness(&e);
    // The witness is rendered separately; keep only the message before it.
    let msg = e.to_string();
    let detail = msg
        .strip_suffix(&format!(": {witness}"))
        .map_or(msg.clone(), str::to_string);
    Built::Failed { check, witness, detail }
}

fn operator_findings(cat: &'static str, pairs: &[(&str, Option<&Endomorphism>, &Endomorphism)]) -> Vec<Finding> {
    pairs
        .iter()
        .filter_map(|(name, expected, actual)| {
            expected.map(|e| Finding::matrix(cat, format!("{name} matches"), e.sub(actual).matrix()))
        })
        .collect()
}

fn build_subjects(m: &Model, idx: usize) -> Vec<Subject> {
    let decl = &m.structures()[idx];
    let label = format!("{}#{}", decl.kind(), idx + 1);
    let l = m.algebra();
    let built = |f: &dyn Fn() -> Result<Built>, check: Check| f().unwrap_or_else(|e| failed(check, e));
    match decl {
        StructureDecl::Kunneth { omega, plus, minus } => {
            let b = built(
                &|| Ok(Built::Kunneth(build_almost_kunneth(l, m.form(omega)?, m.subspace(plus)?, m.subspace(minus)?)?)),
                Check::KunnethAxioms,
            );
            vec![Subject { label, built: b }]
        }
        StructureDecl::Born { g, h, omega, a, b, j } => {
            let res = built(
                &|| {
                    let born = build_born(l, m.metric(g)?, m.metric(h)?, m.form(omega)?)?;
                    let get = |n: &Option<String>| n.as_deref().map(|n| m.endo(n)).transpose();
                    let (ea, eb, ej) = (get(a)?, get(b)?, get(j)?);
                    let checks =
                        operator_findings(BORN_AXIOMS, &[("A", ea, born.a()), ("B", eb, born.b()), ("J", ej, born.j())]);
                    if let Some(f) = checks.into_iter().find(|f| !f.passed()) {
                        return Ok(Built::Failed {
                            check: Check::BornAxioms,
                            witness: f.witness.expect("failed finding"),
                            detail: f.name,
                        });
                    }
                    Ok(Built::Born {
                        born,
                        declared: None,
                        family: false,
                    })
                },
                Check::BornAxioms,
            );
            vec![Subject { label, built: res }]
        }
        StructureDecl::Enhanced {
            omega,
            plus,
            minus,
            jtilde,
        } => {
            let k = match (|| build_almost_kunneth(l, m.form(omega)?, m.subspace(plus)?, m.subspace(minus)?))() {
                Ok(k) => k,
                Err(e) => {
                    return vec![Subject {
                        label,
                        built: failed(Check::KunnethAxioms, e),
                    }]
                }
            };
            let res = built(
                &|| {
                    let jt = jtilde.as_deref().map(|n| m.endo(n)).transpose()?;
                    Ok(Built::Born {
                        born: enhance_kunneth(&k, jt)?,
                        declared: Some(k.clone()),
                        family: false,
                    })
                },
                Check::BornAxioms,
            );
            vec![Subject { label, built: res }]
        }
        StructureDecl::Hypersymplectic {
            omega,
            alpha,
            beta,
            jtilde,
            a,
            b,
            j,
            metric,
            ..
        } => {
            let hs = match (|| build_hypersymplectic(l, m.form(omega)?, m.form(alpha)?, m.form(beta)?))() {
                Ok(hs) => hs,
                Err(e) => {
                    return vec![Subject {
                        label,
                        built: failed(Check::HypersymplecticAxioms, e),
                    }]
                }
            };
            let get = |n: &Option<String>| n.as_deref().map(|n| m.endo(n).expect("validated")).cloned();
            let mut expected = operator_findings(
                "hypersymplectic_axioms",
                &[
                    ("A", get(a).as_ref(), hs.a()),
                    ("B", get(b).as_ref(), hs.b()),
                    ("J", get(j).as_ref(), hs.j()),
                ],
            );
            if let Some(name) = metric {
                let e = m.metric(name).expect("validated");
                expected.push(Finding::matrix(
                    "hypersymplectic_axioms",
                    "metric matches",
                    &(e.matrix() - hs.metric().matrix()),
                ));
            }
            let jt = get(jtilde);
            let mut out = Vec::new();
            for p in m.points(idx) {
                let plabel = format!("{label}@{p}");
                let jt = jt.as_ref().expect("points require jtilde");
                let built = match s1_family(&hs, jt, p) {
                    Ok(born) => Built::Born {
                        born,
                        declared: None,
                        family: true,
                    },
                    Err(e) => failed(Check::S1Family, e),
                };
                out.push(Subject { label: plabel, built });
            }
            out.insert(
                0,
                Subject {
                    label,
                    built: Built::Hyper {
                        hs,
                        jtilde: jt,
                        expected,
                    },
                },
            );
            out
        }
    }
}

type Outcome = Option<(Vec<Finding>, String)>;

fn from_findings(findings: Vec<Finding>) -> Outcome {
    let n = findings.len();
    Some((findings, format!("{n} {} verified", if n == 1 { "property" } else { "properties" })))
}

fn certificate_findings(c: Result<Certified>, name: &'static str) -> Vec<Finding> {
    match c {
        Ok(c) => c.certificate,
        Err(e) => vec![Finding::new(CONNECTIONS_CHECK, name, Some(error_witness(&e)))],
    }
}

const CONNECTIONS_CHECK: &str = "connections";

fn equal_connections(name: &str, a: &Connection, b: &Connection) -> Finding {
    Finding::new(CONNECTIONS_CHECK, name, a.first_difference(b))
}

fn kunneth_connection_findings(k: &AlmostKunneth) -> Vec<Finding> {
    let l = k.algebra();
    let g = k.neutral_metric();
    let mut out = certificate_findings(levi_civita(l, &g), "Levi-Civita");
    let nk = kunneth_connection(k);
    let nc = canonical_connection(l, &g, &k.almost_product());
    if k.is_integrable() {
        if let (Ok(nk), Ok(nc), Ok(lc)) = (&nk, &nc, &levi_civita(l, &g)) {
            out.push(equal_connections("canonical = Kunneth", &nc.connection, &nk.connection));
            out.push(equal_connections("Kunneth = Levi-Civita", &nk.connection, &lc.connection));
        }
    }
    out.extend(certificate_findings(nk, "Kunneth"));
    out.extend(certificate_findings(nc, "canonical"));
    out
}

fn omega_k_outcome(k: &AlmostKunneth) -> Outcome {
    let f = match omega_k_defect(k) {
        Ok(d) => Finding::new("omega_k", "omega_K defect", d.witness("omega_K defect")),
        Err(e) => Finding::new("omega_k", "omega_K defect", Some(error_witness(&e))),
    };
    from_findings(vec![f])
}

fn by_category(b: &BornStructure, cat: &str) -> Outcome {
    from_findings(
        verify_born_identities(b)
            .into_iter()
            .filter(|f| f.category == cat)
            .collect(),
    )
}

fn evaluate(check: Check, built: &Built) -> Outcome {
    match built {
        Built::Failed { .. } => None,
        Built::Kunneth(k) => match check {
            Check::KunnethAxioms => from_findings(k.metric_findings()),
            Check::Integrability => from_findings(k.integrability_findings()),
            Check::Connections => from_findings(kunneth_connection_findings(k)),
            Check::OmegaK => omega_k_outcome(k),
            _ => None,
        },
        Built::Hyper { hs, jtilde, expected } => match check {
            Check::HypersymplecticAxioms => {
                let mut f = hs.findings();
                f.extend(expected.iter().cloned());
                from_findings(f)
            }
            Check::S1Family => jtilde.as_ref().and_then(|jt| from_findings(s1_hypotheses(hs, jt))),
            Check::Connections => from_findings(certificate_findings(levi_civita(hs.algebra(), hs.metric()), "Levi-Civita")),
            _ => None,
        },
        Built::Born { born, declared, family } => {
            let integrable = born.integrability().is_integrable();
            let k = born.underlying_kunneth();
            match check {
                Check::BornAxioms => by_category(born, BORN_AXIOMS),
                Check::IdentityTable => by_category(born, IDENTITY_TABLE),
                Check::EigenspaceGeometry => by_category(born, EIGENSPACE_GEOMETRY),
                Check::Signatures => by_category(born, SIGNATURES),
                Check::KunnethAxioms => declared.as_ref().and_then(|k| from_findings(k.metric_findings())),
                Check::Integrability => from_findings(born.integrability().findings()),
                Check::Connections => {
                    let mut f = certificate_findings(born_connection(born), "averaged");
                    match &k {
                        Ok(k) => f.extend(kunneth_connection_findings(k)),
                        Err(e) => f.push(Finding::new(CONNECTIONS_CHECK, "underlying Kunneth", Some(error_witness(e)))),
                    }
                    from_findings(f)
                }
                Check::GeneralizedTorsion if integrable => {
                    let f = (|| {
                        let nb = born_connection(born)?.connection;
                        let nc = canonical_connection(born.algebra(), born.g(), born.a())?.connection;
                        Ok(generalized_torsion_defect(&nb, &nc, born.g()).witness("generalized torsion defect"))
                    })();
                    let w = f.unwrap_or_else(|e: Error| Some(error_witness(&e)));
                    from_findings(vec![Finding::new("generalized_torsion", "GT(Born) = GT(canonical)", w)])
                }
                Check::OmegaK => match &k {
                    Ok(k) => omega_k_outcome(k),
                    Err(e) => from_findings(vec![Finding::new("omega_k", "underlying Kunneth", Some(error_witness(e)))]),
                },
                Check::TorsionFormula if integrable => {
                    let f = match born_torsion_formula_defect(born) {
                        Ok(r) => {
                            let branch = if r.torsion_vanishes { "T^B = 0" } else { "T^B != 0" };
                            let iff = (r.torsion_vanishes != r.kunneth_commutes_with_b).then(|| Witness {
                                note: "T^B = 0 iff Kunneth commutes with B".into(),
                                indices: vec![],
                                value: Rational::zero(),
                            });
                            let fs = vec![
                                Finding::new("torsion_formula", "same eigenspace", r.same_eigenspace.into_iter().next()),
                                Finding::new("torsion_formula", "mixed pairs", r.mixed.into_iter().next()),
                                Finding::new("torsion_formula", branch, iff),
                            ];
                            return Some((fs, format!("3 properties verified; {branch}")));
                        }
                        Err(e) => Finding::new("torsion_formula", "torsion formula", Some(error_witness(&e))),
                    };
                    from_findings(vec![f])
                }
                Check::S1Family if *family => Some((vec![], "family member built and verified".into())),
                _ => None,
            }
        }
    }
}

fn run_one(check: Check, subject: &Subject, timings: bool) -> CheckResult {
    let start = Instant::now();
    let (status, witness, detail) = match &subject.built {
        Built::Failed {
            check: c,
            witness,
            detail,
        } if *c == check => (Status::Fail, Some(witness.clone()), detail.clone()),
        Built::Failed { .. } => (Status::Skipped, None, "structure did not build".to_string()),
        built => match evaluate(check, built) {
            None => {
                let why = match (check, built) {
                    (Check::GeneralizedTorsion | Check::TorsionFormula, Built::Born { .. }) => "structure is not integrable",
                    _ => "not applicable",
                };
                (Status::Skipped, None, why.to_string())
            }
            Some((findings, ok)) => match findings.into_iter().find(|f| !f.passed()) {
                Some(f) => (Status::Fail, f.witness, f.name),
                None => (Status::Pass, None, ok),
            },
        },
    };
    CheckResult {
        check,
        subject: subject.label.clone(),
        status,
        witness,
        detail,
        elapsed: timings.then(|| start.elapsed()),
    }
}

/// Every subject of the model with its label, such as `born#1` or
/// `hypersymplectic#2@t=1/2`, in declaration order.
pub fn build_structures(m: &Model) -> Vec<(String, Built)> {
    (0..m.structures().len())
        .flat_map(|i| build_subjects(m, i))
        .map(|s| (s.label, s.built))
        .collect()
}

pub fn run_checks(m: &Model) -> Report {
    run_checks_with(m, &RunOptions::default())
}

/// Builds every declared structure, then evaluates each requested check on
/// each subject. Results are ordered by check, then by declaration order.
pub fn run_checks_with(m: &Model, opts: &RunOptions) -> Report {
    let checks: Vec<Check> = match (&opts.checks, m.checks()) {
        (Some(c), _) => c.clone(),
        (None, Some(c)) => c.to_vec(),
        (None, None) => Check::ALL.to_vec(),
    };
    let idx: Vec<usize> = (0..m.structures().len()).collect();
    let subjects: Vec<Subject> = exec::map(opts.mode, &idx, |&i| build_subjects(m, i))
        .into_iter()
        .flatten()
        .collect();
    let mut items: Vec<(Check, usize)> = Vec::new();
    for c in Check::ALL.into_iter().filter(|c| checks.contains(c)) {
        items.extend((0..subjects.len()).map(|s| (c, s)));
    }
    let results = exec::map(opts.mode, &items, |&(c, s)| run_one(c, &subjects[s], opts.timings));
    Report {
        model: m.name().to_string(),
        results,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[derive(Serialize)]
struct JsonResult<'a> {
    check: &'static str,
    subject: &'a str,
    status: Status,
    witness: Option<&'a Witness>,
    detail: &'a str,
    elapsed_ms: Option<f64>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    model: &'a str,
    overall: Status,
    results: Vec<JsonResult<'a>>,
}

fn millis(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

pub fn render_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let doc = JsonReport {
                model: &r.model,
                overall: r.overall(),
                results: r
                    .results
                    .iter()
                    .map(|x| JsonResult {
                        check: x.check.name(),
                        subject: &x.subject,
                        status: x.status,
                        witness: x.witness.as_ref(),
                        detail: &x.detail,
                        elapsed_ms: x.elapsed.map(millis),
                    })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let timed = r.results.iter().any(|x| x.elapsed.is_some());
            let mut rows: Vec<[String; 5]> = vec![[
                "CHECK".into(),
                "SUBJECT".into(),
                "STATUS".into(),
                if timed { "MS".into() } else { String::new() },
                "DETAIL".into(),
            ]];
            for x in &r.results {
                let detail = match &x.witness {
                    Some(w) => format!("{}: {w}", x.detail),
                    None => x.detail.clone(),
                };
                let ms = x.elapsed.map(|d| format!("{:.3}", millis(d))).unwrap_or_default();
                rows.push([x.check.name().into(), x.subject.clone(), x.status.label().into(), ms, detail]);
            }
            let width = |c: usize| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0);
            let w = [width(0), width(1), width(2), width(3)];
            let mut out = format!("model: {}\n", r.model);
            for row in &rows {
                let mut line = format!("{:<w0$}  {:<w1$}  {:<w2$}  ", row[0], row[1], row[2], w0 = w[0], w1 = w[1], w2 = w[2]);
                if timed {
                    line.push_str(&format!("{:>w3$}  ", row[3], w3 = w[3]));
                }
                line.push_str(&row[4]);
                out.push_str(line.trim_end());
                out.push('\n');
            }
            out.push_str(&format!("overall: {}\n", r.overall().label()));
            out
        }
    }
}
