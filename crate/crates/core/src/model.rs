//! The JSON model file: an algebra, named tensors and structure declarations.
//!
//! Indices in the file are 1-based. Matrices are row lists of rational
//! strings; for an endomorphism, column `j` is the image of `e_j`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, StructureConstants, Subspace};
use crate::matrix::{vector, Matrix, Vector};
use crate::multilinear::{BilinearForm, Endomorphism};
use crate::rational::Rational;
use crate::report::Check;
use crate::structures::CirclePoint;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub out: BTreeMap<usize, Rational>,
}

/// One declared structure; every field names a tensor of the model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum StructureDecl {
    Kunneth {
        omega: String,
        plus: String,
        minus: String,
    },
    Born {
        g: String,
        h: String,
        omega: String,
        /// Optional operators that must equal the derived ones.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        j: Option<String>,
    },
    /// A Künneth structure upgraded to a Born structure through a compatible
    /// complex structure, or through the default one when `jtilde` is absent.
    Enhanced {
        omega: String,
        plus: String,
        minus: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        jtilde: Option<String>,
    },
    Hypersymplectic {
        omega: String,
        alpha: String,
        beta: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        jtilde: Option<String>,
        /// Circle points `"t"` (rational) or `"pi"`; needs `jtilde`.
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        points: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        j: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        metric: Option<String>,
    },
}

impl StructureDecl {
    pub fn kind(&self) -> &'static str {
        match self {
            StructureDecl::Kunneth { .. } => "kunneth",
            StructureDecl::Born { .. } => "born",
            StructureDecl::Enhanced { .. } => "enhanced",
            StructureDecl::Hypersymplectic { .. } => "hypersymplectic",
        }
    }
}

/// The on-disk document, exactly as serialized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default)]
    pub forms: BTreeMap<String, Vec<Vec<Rational>>>,
    #[serde(default)]
    pub metrics: BTreeMap<String, Vec<Vec<Rational>>>,
    #[serde(default)]
    pub endos: BTreeMap<String, Vec<Vec<Rational>>>,
    #[serde(default)]
    pub subspaces: BTreeMap<String, Vec<Vec<Rational>>>,
    #[serde(default)]
    pub structures: Vec<StructureDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
}

/// A validated model: the algebra satisfies Jacobi, every tensor has the
/// right shape and every structure reference resolves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    file: ModelFile,
    algebra: LieAlgebra,
    forms: BTreeMap<String, BilinearForm>,
    metrics: BTreeMap<String, BilinearForm>,
    endos: BTreeMap<String, Endomorphism>,
    subspaces: BTreeMap<String, Subspace>,
    points: Vec<Vec<CirclePoint>>,
    checks: Option<Vec<Check>>,
}

fn matrix_from_rows(n: usize, name: &str, rows: &[Vec<Rational>]) -> Result<Matrix> {
    if rows.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rows.len(),
        });
    }
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: r.len(),
        });
    }
    Matrix::from_rows(rows.to_vec()).map_err(|e| Error::InvalidTensor(format!("{name}: {e}")))
}

fn rows_of(m: &Matrix) -> Vec<Vec<Rational>> {
    m.rows()
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str) -> Result<&'a T> {
    map.get(name).ok_or_else(|| Error::UnknownName(name.to_string()))
}

fn check_index(n: usize, i: usize) -> Result<usize> {
    if i == 0 || i > n {
        return Err(Error::DimensionMismatch { expected: n, found: i });
    }
    Ok(i - 1)
}

impl Model {
    /// Validates a deserialized document. The stored document is rewritten in
    /// canonical form: brackets as `i < j` with nonzero components, rationals
    /// in lowest terms.
    pub fn from_file(file: ModelFile) -> Result<Self> {
        let n = file.dim;
        if n == 0 {
            return Err(Error::NotSquare);
        }
        let mut sc = StructureConstants::zero(n);
        let mut seen = std::collections::BTreeSet::new();
        for b in &file.brackets {
            let (i, j) = (check_index(n, b.i)?, check_index(n, b.j)?);
            if i == j || !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidTensor(format!("bracket [e{},e{}] is repeated or trivial", b.i, b.j)));
            }
            let mut v = vector::zeros(n);
            for (k, c) in &b.out {
                v[check_index(n, *k)?] = c.clone();
            }
            sc.set_bracket(i, j, &v)?;
        }
        let algebra = LieAlgebra::new(sc)?;

        let mut forms = BTreeMap::new();
        for (name, rows) in &file.forms {
            let m = matrix_from_rows(n, name, rows)?;
            let f = BilinearForm::antisymmetric(m)
                .map_err(|_| Error::InvalidTensor(format!("form {name:?} is not antisymmetric")))?;
            forms.insert(name.clone(), f);
        }
        let mut metrics = BTreeMap::new();
        for (name, rows) in &file.metrics {
            metrics.insert(name.clone(), BilinearForm::symmetric(matrix_from_rows(n, name, rows)?)?);
        }
        let mut endos = BTreeMap::new();
        for (name, rows) in &file.endos {
            endos.insert(name.clone(), Endomorphism::new(matrix_from_rows(n, name, rows)?));
        }
        let mut subspaces = BTreeMap::new();
        for (name, vs) in &file.subspaces {
            if let Some(v) = vs.iter().find(|v| v.len() != n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            subspaces.insert(name.clone(), Subspace::span(n, vs)?);
        }

        let mut points = Vec::new();
        for s in &file.structures {
            let mut ps = Vec::new();
            match s {
                StructureDecl::Kunneth { omega, plus, minus } => {
                    lookup(&forms, omega)?;
                    lookup(&subspaces, plus)?;
                    lookup(&subspaces, minus)?;
                }
                StructureDecl::Born { g, h, omega, a, b, j } => {
                    lookup(&metrics, g)?;
                    lookup(&metrics, h)?;
                    lookup(&forms, omega)?;
                    for e in [a, b, j].into_iter().flatten() {
                        lookup(&endos, e)?;
                    }
                }
                StructureDecl::Enhanced {
                    omega,
                    plus,
                    minus,
                    jtilde,
                } => {
                    lookup(&forms, omega)?;
                    lookup(&subspaces, plus)?;
                    lookup(&subspaces, minus)?;
                    if let Some(e) = jtilde {
                        lookup(&endos, e)?;
                    }
                }
                StructureDecl::Hypersymplectic {
                    omega,
                    alpha,
                    beta,
                    jtilde,
                    points: pts,
                    a,
                    b,
                    j,
                    metric,
                } => {
                    for f in [omega, alpha, beta] {
                        lookup(&forms, f)?;
                    }
                    for e in [jtilde, a, b, j].into_iter().flatten() {
                        lookup(&endos, e)?;
                    }
                    if let Some(m) = metric {
                        lookup(&metrics, m)?;
                    }
                    if !pts.is_empty() && jtilde.is_none() {
                        return Err(Error::UnknownName("jtilde".into()));
                    }
                    for p in pts {
                        ps.push(p.parse::<CirclePoint>()?);
                    }
                }
            }
            points.push(ps);
        }
        let checks = match &file.checks {
            None => None,
            Some(names) => Some(names.iter().map(|c| c.parse()).collect::<Result<Vec<Check>>>()?),
        };

        let canonical = ModelFile {
            name: file.name.clone(),
            dim: n,
            brackets: algebra
                .nonzero_brackets()
                .into_iter()
                .map(|(i, j, v)| BracketEntry {
                    i: i + 1,
                    j: j + 1,
                    out: v
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (k + 1, c))
                        .collect(),
                })
                .collect(),
            forms: forms.iter().map(|(k, f)| (k.clone(), rows_of(f.matrix()))).collect(),
            metrics: metrics.iter().map(|(k, f)| (k.clone(), rows_of(f.matrix()))).collect(),
            endos: endos.iter().map(|(k, e)| (k.clone(), rows_of(e.matrix()))).collect(),
            subspaces: file.subspaces.clone(),
            structures: file.structures.clone(),
            checks: checks
                .as_ref()
                .map(|cs| cs.iter().map(|c| c.name().to_string()).collect()),
        };
        Ok(Model {
            file: canonical,
            algebra,
            forms,
            metrics,
            endos,
            subspaces,
            points,
            checks,
        })
    }

    pub fn name(&self) -> &str {
        &self.file.name
    }

    pub fn dim(&self) -> usize {
        self.file.dim
    }

    pub fn file(&self) -> &ModelFile {
        &self.file
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn form(&self, name: &str) -> Result<&BilinearForm> {
        lookup(&self.forms, name)
    }

    pub fn metric(&self, name: &str) -> Result<&BilinearForm> {
        lookup(&self.metrics, name)
    }

    pub fn endo(&self, name: &str) -> Result<&Endomorphism> {
        lookup(&self.endos, name)
    }

    pub fn subspace(&self, name: &str) -> Result<&Subspace> {
        lookup(&self.subspaces, name)
    }

    pub fn structures(&self) -> &[StructureDecl] {
        &self.file.structures
    }

    /// Parsed circle points of structure `idx` (empty unless hypersymplectic).
    pub fn points(&self, idx: usize) -> &[CirclePoint] {
        &self.points[idx]
    }

    pub fn checks(&self) -> Option<&[Check]> {
        self.checks.as_deref()
    }

    pub fn with_checks(mut self, checks: Option<Vec<Check>>) -> Self {
        self.file.checks = checks
            .as_ref()
            .map(|cs| cs.iter().map(|c| c.name().to_string()).collect());
        self.checks = checks;
        self
    }
}

/// Parses and validates model text.
pub fn parse_model(text: &str) -> Result<Model> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        message: e.to_string(),
    })?;
    Model::from_file(file)
}

/// Canonical pretty JSON with a trailing newline.
pub fn export_model(m: &Model) -> String {
    let mut s = serde_json::to_string_pretty(m.file()).expect("model serializes");
    s.push('\n');
    s
}

/// Rows of a matrix given as integer pairs `(row, col, value)` on a zero `n×n` grid.
pub fn sparse_rows(n: usize, entries: &[(usize, usize, Rational)]) -> Vec<Vec<Rational>> {
    let mut m = Matrix::zeros(n);
    for (i, j, v) in entries {
        m[(*i, *j)] = v.clone();
    }
    m.rows()
}

/// Coordinate vectors `e_i` for 0-based `indices`.
pub fn coordinate_vectors(n: usize, indices: &[usize]) -> Vec<Vector> {
    indices.iter().map(|&i| vector::unit(n, i)).collect()
}
