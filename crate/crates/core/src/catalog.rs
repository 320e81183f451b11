//! Built-in example structures, each with the outcomes the engine must reproduce.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lie::{BracketList, LieAlgebra, Subspace};
use crate::matrix::{Matrix, Vector};
use crate::model::{coordinate_vectors, export_model, BracketEntry, Model, ModelFile, StructureDecl};
use crate::multilinear::{two_form, BilinearForm, Endomorphism};
use crate::rational::Rational;
use crate::report::{run_checks, Check, Report, Status};
use crate::structures::{build_almost_kunneth, build_hypersymplectic, s1_family, CirclePoint};

/// An outcome other than pass that a catalog entry must produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub check: Check,
    pub subject: String,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub summary: String,
    /// Where the data comes from and what, if anything, was corrected.
    pub provenance: String,
    pub model: Model,
    /// Results not listed here must pass or be skipped.
    pub expectations: Vec<Expectation>,
    /// Forms of the model with their expected closedness.
    pub closed_forms: Vec<(String, bool)>,
}

pub const H15_NOTE: &str = "h15: the 6-dimensional nilpotent Lie algebra h15 admits no complex product structure, \
so it carries no integrable Born structure. No data or checks are attached.";

/// The parameter values at which the nil3_r circle family is exercised.
pub const NIL3_POINTS: [&str; 7] = ["0", "1", "-1", "1/2", "2", "3/5", "pi"];

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn rq(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn brackets(list: &BracketList) -> Vec<BracketEntry> {
    list.iter()
        .map(|(i, j, out)| BracketEntry {
            i: *i,
            j: *j,
            out: out.iter().cloned().collect(),
        })
        .collect()
}

/// A one-based sparse endomorphism: `(from, to, c)` adds `c·e_to` to the image of `e_from`.
fn endo(n: usize, action: &[(usize, usize, Rational)]) -> Endomorphism {
    let zero_based: Vec<(usize, usize, Rational)> = action.iter().map(|(f, t, c)| (f - 1, t - 1, c.clone())).collect();
    Endomorphism::from_action(n, &zero_based)
}

/// `Σ c·α_i∧α_j` with one-based indices.
fn form(n: usize, terms: &[(usize, usize, Rational)]) -> BilinearForm {
    let zero_based: Vec<(usize, usize, Rational)> = terms.iter().map(|(i, j, c)| (i - 1, j - 1, c.clone())).collect();
    two_form(n, &zero_based)
}

fn coords(n: usize, one_based: &[usize]) -> Vec<Vector> {
    let idx: Vec<usize> = one_based.iter().map(|i| i - 1).collect();
    coordinate_vectors(n, &idx)
}

struct Builder {
    file: ModelFile,
}

impl Builder {
    fn new(name: &str, dim: usize) -> Self {
        Builder {
            file: ModelFile {
                name: name.to_string(),
                dim,
                brackets: vec![],
                forms: BTreeMap::new(),
                metrics: BTreeMap::new(),
                endos: BTreeMap::new(),
                subspaces: BTreeMap::new(),
                structures: vec![],
                checks: None,
            },
        }
    }

    fn brackets(mut self, b: Vec<BracketEntry>) -> Self {
        self.file.brackets = b;
        self
    }

    fn form(mut self, name: &str, f: &BilinearForm) -> Self {
        self.file.forms.insert(name.into(), f.matrix().rows());
        self
    }

    fn metric(mut self, name: &str, f: &BilinearForm) -> Self {
        self.file.metrics.insert(name.into(), f.matrix().rows());
        self
    }

    fn endo(mut self, name: &str, e: &Endomorphism) -> Self {
        self.file.endos.insert(name.into(), e.matrix().rows());
        self
    }

    fn subspace(mut self, name: &str, vs: Vec<Vector>) -> Self {
        self.file.subspaces.insert(name.into(), vs);
        self
    }

    fn structure(mut self, s: StructureDecl) -> Self {
        self.file.structures.push(s);
        self
    }

    fn build(self) -> Model {
        Model::from_file(self.file).expect("catalog model is valid")
    }
}

fn kunneth(omega: &str, plus: &str, minus: &str) -> StructureDecl {
    StructureDecl::Kunneth {
        omega: omega.into(),
        plus: plus.into(),
        minus: minus.into(),
    }
}

fn enhanced(omega: &str, plus: &str, minus: &str, jtilde: Option<&str>) -> StructureDecl {
    StructureDecl::Enhanced {
        omega: omega.into(),
        plus: plus.into(),
        minus: minus.into(),
        jtilde: jtilde.map(Into::into),
    }
}

fn born(j: Option<&str>) -> StructureDecl {
    StructureDecl::Born {
        g: "g".into(),
        h: "h".into(),
        omega: "omega".into(),
        a: None,
        b: None,
        j: j.map(Into::into),
    }
}

/// Standard data on ℝ²ⁿ = ℝⁿ×ℝⁿ: `ω = Σ α_i∧α_{n+i}`, `Je_i = e_{n+i}`,
/// `L₊ = ℝⁿ×0`, `L₋ = 0×ℝⁿ`.
struct Standard {
    omega: BilinearForm,
    j: Endomorphism,
    plus: Vec<Vector>,
    minus: Vec<Vector>,
}

fn standard(n: usize) -> Standard {
    let d = 2 * n;
    let terms: Vec<(usize, usize, Rational)> = (1..=n).map(|i| (i, n + i, q(1))).collect();
    let mut action = Vec::new();
    for i in 1..=n {
        action.push((i, n + i, q(1)));
        action.push((n + i, i, q(-1)));
    }
    Standard {
        omega: form(d, &terms),
        j: endo(d, &action),
        plus: coords(d, &(1..=n).collect::<Vec<_>>()),
        minus: coords(d, &(n + 1..=d).collect::<Vec<_>>()),
    }
}

/// `h(x, y) = ω(x, Jy)` and the neutral metric of `(ω, L₊, L₋)`.
fn metrics_for(l: &LieAlgebra, s: &Standard) -> (BilinearForm, BilinearForm) {
    let n = l.dim();
    let k = build_almost_kunneth(
        l,
        &s.omega,
        &Subspace::span(n, &s.plus).expect("span"),
        &Subspace::span(n, &s.minus).expect("span"),
    )
    .expect("standard Kunneth");
    let h = BilinearForm::from_matrix(s.omega.matrix() * s.j.matrix());
    (k.neutral_metric(), h)
}

fn abelian_cn(n: usize) -> CatalogEntry {
    let d = 2 * n;
    let l = LieAlgebra::abelian(d);
    let s = standard(n);
    let (g, h) = metrics_for(&l, &s);
    let name = format!("abelian_c{n}");
    let model = Builder::new(&name, d)
        .form("omega", &s.omega)
        .metric("g", &g)
        .metric("h", &h)
        .endo("J", &s.j)
        .subspace("L_plus", s.plus)
        .subspace("L_minus", s.minus)
        .structure(born(Some("J")))
        .structure(kunneth("omega", "L_plus", "L_minus"))
        .build();
    CatalogEntry {
        name,
        summary: format!("C^{n} with the standard Hermitian metric, Kahler form and product splitting"),
        provenance: "Standard flat Born structure; translation invariant, so it descends to every torus.".into(),
        model,
        expectations: vec![],
        closed_forms: vec![("omega".into(), true)],
    }
}

fn torus_2_2() -> CatalogEntry {
    let l = LieAlgebra::abelian(4);
    let mut s = standard(2);
    // J = J_1 ⊕ −J_1 on the complex lines ⟨e1, e3⟩ and ⟨e2, e4⟩.
    s.j = endo(4, &[(1, 3, q(1)), (3, 1, q(-1)), (2, 4, q(-1)), (4, 2, q(1))]);
    let (g, h) = metrics_for(&l, &s);
    let model = Builder::new("torus_2_2", 4)
        .form("omega", &s.omega)
        .metric("g", &g)
        .metric("h", &h)
        .endo("J", &s.j)
        .subspace("L_plus", s.plus)
        .subspace("L_minus", s.minus)
        .structure(born(Some("J")))
        .build();
    CatalogEntry {
        name: "torus_2_2".into(),
        summary: "T^4 = T^2 x T^2 with J = J_1 + (-J_1); h has signature (2,2)".into(),
        provenance: "Flat example with indefinite pseudo-Hermitian metric.".into(),
        model,
        expectations: vec![],
        closed_forms: vec![("omega".into(), true)],
    }
}

struct Nil3 {
    algebra: LieAlgebra,
    omega: BilinearForm,
    alpha: BilinearForm,
    beta: BilinearForm,
    a: Endomorphism,
    b: Endomorphism,
    j: Endomorphism,
    j_printed: Endomorphism,
    jtilde: Endomorphism,
    metric: BilinearForm,
}

fn nil3_data() -> Nil3 {
    let algebra = LieAlgebra::from_brackets(4, &[(0, 1, &[(2, q(1))])]).expect("nil3");
    let metric = crate::multilinear::symmetric_form(4, &[(0, 3, q(-1)), (1, 2, q(-1))]);
    Nil3 {
        algebra,
        omega: form(4, &[(1, 3, q(-1)), (2, 4, q(1))]),
        alpha: form(4, &[(1, 4, q(1)), (2, 3, q(-1))]),
        beta: form(4, &[(1, 3, q(-1)), (2, 4, q(-1))]),
        a: endo(4, &[(1, 2, q(1)), (2, 1, q(1)), (3, 4, q(-1)), (4, 3, q(-1))]),
        b: endo(4, &[(1, 1, q(1)), (2, 2, q(-1)), (3, 3, q(1)), (4, 4, q(-1))]),
        j: endo(4, &[(1, 2, q(1)), (2, 1, q(-1)), (3, 4, q(-1)), (4, 3, q(1))]),
        j_printed: endo(4, &[(1, 2, q(1)), (2, 1, q(-1)), (3, 4, q(-1)), (4, 3, q(-1))]),
        jtilde: endo(4, &[(1, 2, q(1)), (2, 1, q(-1)), (3, 4, q(1)), (4, 3, q(-1))]),
        metric,
    }
}

fn nil3_brackets() -> Vec<BracketEntry> {
    brackets(&[(1, 2, &[(3, q(1))])])
}

fn nil3_model(name: &str, points: &[&str]) -> Model {
    let d = nil3_data();
    Builder::new(name, 4)
        .brackets(nil3_brackets())
        .form("omega", &d.omega)
        .form("alpha", &d.alpha)
        .form("beta", &d.beta)
        .endo("A", &d.a)
        .endo("B", &d.b)
        .endo("J", &d.j)
        .endo("J_printed", &d.j_printed)
        .endo("J_tilde", &d.jtilde)
        .metric("g_H", &d.metric)
        .structure(StructureDecl::Hypersymplectic {
            omega: "omega".into(),
            alpha: "alpha".into(),
            beta: "beta".into(),
            jtilde: Some("J_tilde".into()),
            points: points.iter().map(|p| p.to_string()).collect(),
            a: Some("A".into()),
            b: Some("B".into()),
            j: Some("J".into()),
            metric: Some("g_H".into()),
        })
        .build()
}

fn nil3_r() -> CatalogEntry {
    CatalogEntry {
        name: "nil3_r".into(),
        summary: "nil3 + R: hypersymplectic (omega, alpha, beta) and its circle of integrable Born structures".into(),
        provenance: "Brackets [e1,e2]=e3; omega=-a13+a24, alpha=a14-a23, beta=-a13-a24; operators A, B and metric g_H \
as originally printed. The printed J has J e4 = -e3, which contradicts J^2 = -Id and alpha(J x, y) = beta(x, y); \
the derived J e4 = +e3 is stored as J and the printed operator as J_printed."
            .into(),
        model: nil3_model("nil3_r", &NIL3_POINTS),
        expectations: vec![],
        closed_forms: ["omega", "alpha", "beta"].iter().map(|f| (f.to_string(), true)).collect(),
    }
}

fn h4() -> CatalogEntry {
    let n = 6;
    let model = Builder::new("h4", n)
        .brackets(brackets(&[(1, 2, &[(5, q(-1))]), (1, 4, &[(6, q(-1))]), (2, 3, &[(6, q(-1))])]))
        .form("omega", &form(n, &[(1, 3, q(1)), (2, 6, q(1)), (4, 5, q(1))]))
        .subspace("g_plus", coords(n, &[1, 2, 5]))
        .subspace("g_minus", coords(n, &[3, 4, 6]))
        .endo(
            "J",
            &endo(
                n,
                &[(1, 3, q(-2)), (2, 4, q(-1)), (3, 1, rq(1, 2)), (4, 2, q(1)), (5, 6, q(1)), (6, 5, q(-1))],
            ),
        )
        .structure(enhanced("omega", "g_plus", "g_minus", Some("J")))
        .build();
    CatalogEntry {
        name: "h4".into(),
        summary: "Kunneth structure compatible with an integrable complex structure".into(),
        provenance: "Brackets [e1,e2]=-e5, [e1,e4]=[e2,e3]=-e6; omega=a13+a26+a45; splitting <e1,e2,e5> + <e3,e4,e6>; \
J as originally printed."
            .into(),
        model,
        expectations: vec![],
        closed_forms: vec![("omega".into(), true)],
    }
}

fn h8() -> CatalogEntry {
    let n = 6;
    let d = nil3_data();
    let hs = build_hypersymplectic(&d.algebra, &d.omega, &d.alpha, &d.beta).expect("nil3 hypersymplectic");
    let b = s1_family(&hs, &d.jtilde, &CirclePoint::t(q(0))).expect("t = 0");
    let c1 = standard(1);
    let (g1, h1) = metrics_for(&LieAlgebra::abelian(2), &c1);
    let sum = |x: &Matrix, y: &Matrix| {
        Matrix::from_fn(n, |i, j| match (i < 4, j < 4) {
            (true, true) => x[(i, j)].clone(),
            (false, false) => y[(i - 4, j - 4)].clone(),
            _ => q(0),
        })
    };
    let model = Builder::new("h8", n)
        .brackets(nil3_brackets())
        .form("omega", &BilinearForm::from_matrix(sum(b.omega().matrix(), c1.omega.matrix())))
        .metric("g", &BilinearForm::from_matrix(sum(b.g().matrix(), g1.matrix())))
        .metric("h", &BilinearForm::from_matrix(sum(b.h().matrix(), h1.matrix())))
        .endo("J", &Endomorphism::new(sum(b.j().matrix(), c1.j.matrix())))
        .structure(born(Some("J")))
        .build();
    CatalogEntry {
        name: "h8".into(),
        summary: "h8 = nil3 + R^3: the nil3_r structure at t=0 summed with abelian_c1".into(),
        provenance: "Direct sum of the t=0 member of the nil3_r family on <e1..e4> and the standard structure on <e5,e6>."
            .into(),
        model,
        expectations: vec![],
        closed_forms: vec![("omega".into(), true)],
    }
}

fn h9_corrected() -> CatalogEntry {
    let n = 6;
    let model = Builder::new("h9_corrected", n)
        .brackets(brackets(&[(1, 2, &[(5, q(-1))]), (1, 4, &[(6, q(-1))]), (2, 5, &[(6, q(-1))])]))
        .form("omega", &form(n, &[(1, 3, q(1)), (2, 6, q(4)), (4, 5, q(4))]))
        .form("omega_printed", &form(n, &[(1, 3, q(1)), (2, 6, q(4)), (4, 5, q(-4))]))
        .subspace("g_plus", coords(n, &[1, 5, 6]))
        .subspace("g_minus", coords(n, &[2, 3, 4]))
        .endo(
            "J",
            &endo(
                n,
                &[(1, 2, q(-1)), (2, 1, q(1)), (3, 6, rq(-1, 4)), (4, 5, q(-1)), (5, 4, q(1)), (6, 3, q(4))],
            ),
        )
        .structure(enhanced("omega", "g_plus", "g_minus", Some("J")))
        .build();
    CatalogEntry {
        name: "h9_corrected".into(),
        summary: "h9 with brackets matching d a5 = a12, d a6 = a14 + a25 and a closed omega".into(),
        provenance: "Corrected data. The printed bracket list has [e1,e2]=-e4, but the printed differentials \
d a5 = a12 and d a6 = a14 + a25 need [e1,e2]=-e5, [e1,e4]=-e6, [e2,e5]=-e6, which are used here. Under these \
differentials the printed omega = a13 + 4 a26 - 4 a45 has d omega = 8 a124 != 0 (kept as omega_printed); \
flipping the a45 sign gives the closed omega used here. Splitting <e1,e5,e6> + <e2,e3,e4> and J as printed."
            .into(),
        model,
        expectations: vec![],
        closed_forms: vec![("omega".into(), true), ("omega_printed".into(), false)],
    }
}

fn nonintegrable_fixture() -> CatalogEntry {
    let n = 4;
    let model = Builder::new("nil3_r_nonintegrable_fixture", n)
        .brackets(nil3_brackets())
        .form("omega", &form(n, &[(1, 2, q(1)), (4, 3, q(1))]))
        .subspace("F", coords(n, &[1, 4]))
        .subspace("G", coords(n, &[2, 3]))
        .structure(kunneth("omega", "F", "G"))
        .structure(enhanced("omega", "F", "G", None))
        .build();
    let fail = |subject: &str| Expectation {
        check: Check::Integrability,
        subject: subject.into(),
        status: Status::Fail,
    };
    CatalogEntry {
        name: "nil3_r_nonintegrable_fixture".into(),
        summary: "nil3 + R with omega = a12 + a43: subalgebra splitting but d omega = a124 != 0".into(),
        provenance: "Engineered counterexample: F=<e1,e4> and G=<e2,e3> are subalgebras, omega is not closed, \
so the Kunneth connection has torsion while its mixed torsion still vanishes."
            .into(),
        model,
        expectations: vec![fail("kunneth#1"), fail("enhanced#2")],
        closed_forms: vec![("omega".into(), false)],
    }
}

type Ctor = fn() -> CatalogEntry;

const ENTRIES: [(&str, &str, Ctor); 10] = [
    ("abelian_c1", "C^1 standard Born structure", || abelian_cn(1)),
    ("abelian_c2", "C^2 standard Born structure", || abelian_cn(2)),
    ("abelian_c3", "C^3 standard Born structure", || abelian_cn(3)),
    ("abelian_c4", "C^4 standard Born structure", || abelian_cn(4)),
    ("torus_2_2", "T^4 with h of signature (2,2)", torus_2_2),
    ("nil3_r", "nil3 + R hypersymplectic and circle family", nil3_r),
    ("h4", "h4 integrable Born structure", h4),
    ("h8", "h8 = nil3 + R^3 direct sum", h8),
    ("h9_corrected", "h9 with corrected brackets and omega", h9_corrected),
    (
        "nil3_r_nonintegrable_fixture",
        "non-closed omega on nil3 + R",
        nonintegrable_fixture,
    ),
];

/// `(name, summary)` in a fixed order.
pub fn list_entries() -> Vec<(&'static str, &'static str)> {
    ENTRIES.iter().map(|(n, s, _)| (*n, *s)).collect()
}

pub fn get_entry(name: &str) -> Result<CatalogEntry> {
    ENTRIES
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, _, f)| f())
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

pub fn export_entry(name: &str) -> Result<String> {
    get_entry(name).map(|e| export_model(&e.model))
}

/// nil3_r restricted to a single circle point.
pub fn family_model(name: &str, p: &CirclePoint) -> Result<Model> {
    if name != "nil3_r" {
        return Err(Error::UnknownEntry(name.to_string()));
    }
    Ok(nil3_model(&format!("nil3_r@{p}"), &[&p.to_string_param()]))
}

impl CirclePoint {
    /// The string accepted by the model file.
    pub fn to_string_param(&self) -> String {
        match self {
            CirclePoint::Param(t) => t.to_string(),
            CirclePoint::Pi => "pi".into(),
        }
    }
}

/// One disagreement between an entry's expectations and the engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub check: String,
    pub subject: String,
    pub expected: String,
    pub found: String,
}

/// Runs every check on the entry and compares against its expectations.
pub fn validate_entry(e: &CatalogEntry) -> (Report, Vec<Mismatch>) {
    let report = run_checks(&e.model);
    let mut out = Vec::new();
    for r in &report.results {
        let expected = e
            .expectations
            .iter()
            .find(|x| x.check == r.check && x.subject == r.subject)
            .map(|x| x.status);
        let ok = match expected {
            Some(s) => s == r.status,
            None => r.status != Status::Fail,
        };
        if !ok {
            out.push(Mismatch {
                check: r.check.name().into(),
                subject: r.subject.clone(),
                expected: expected.map_or("pass or skipped", |s| s.label()).into(),
                found: format!("{} {}", r.status.label(), r.detail),
            });
        }
    }
    for x in &e.expectations {
        if report.find(x.check, &x.subject).is_none() {
            out.push(Mismatch {
                check: x.check.name().into(),
                subject: x.subject.clone(),
                expected: x.status.label().into(),
                found: "missing".into(),
            });
        }
    }
    for (name, closed) in &e.closed_forms {
        let f = e.model.form(name).expect("declared form");
        let is = e.model.algebra().is_closed(f);
        if is != *closed {
            out.push(Mismatch {
                check: "closed".into(),
                subject: name.clone(),
                expected: closed.to_string(),
                found: is.to_string(),
            });
        }
    }
    (report, out)
}
