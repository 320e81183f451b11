//! Almost Künneth, Born and hypersymplectic structures on a Lie algebra, their
//! verification, the enhancement of a Künneth structure by a compatible complex
//! structure, and the circle family of Born structures of a hypersymplectic
//! structure.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, Subspace, ThreeForm};
use crate::matrix::{vector, Matrix, Signature, Vector};
use crate::multilinear::{
    anticommutator_defect, complementary_projections, involution_split, nijenhuis, pullback,
    recursion_operator, BilinearForm, Endomorphism, OneTwoTensor,
};
use crate::rational::Rational;
use crate::report::{Finding, Witness};

pub const BORN_AXIOMS: &str = "born_axioms";
pub const IDENTITY_TABLE: &str = "identity_table";
pub const EIGENSPACE_GEOMETRY: &str = "eigenspace_geometry";
pub const SIGNATURES: &str = "signatures";

fn check_dim(l: &LieAlgebra, found: usize) -> Result<()> {
    if l.dim() != found {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found,
        });
    }
    Ok(())
}

/// First pair of basis vectors of `us`, `vs` on which `b` is nonzero, reported
/// by the leading coordinates of those vectors.
fn pairing_witness(note: &str, b: &BilinearForm, us: &Subspace, vs: &Subspace) -> Option<Witness> {
    b.first_nonzero_pairing(us.basis(), vs.basis())
        .map(|(a, c, v)| Witness::new(note, &[us.pivots()[a], vs.pivots()[c]], v))
}

fn maps_into_witness(note: &str, t: &Endomorphism, from: &Subspace, to: &Subspace) -> Option<Witness> {
    t.maps_into(from, to).map(|(a, residual)| {
        let (k, v) = vector::first_nonzero(&residual).expect("nonzero residual");
        Witness::new(note, &[from.pivots()[a], k], v.clone())
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostKunneth {
    algebra: LieAlgebra,
    omega: BilinearForm,
    plus: Subspace,
    minus: Subspace,
}

pub fn build_almost_kunneth(
    l: &LieAlgebra,
    omega: &BilinearForm,
    plus: &Subspace,
    minus: &Subspace,
) -> Result<AlmostKunneth> {
    check_dim(l, omega.dim())?;
    check_dim(l, plus.ambient_dim())?;
    check_dim(l, minus.ambient_dim())?;
    if !omega.is_antisymmetric() {
        return Err(Error::InvalidTensor("omega must be antisymmetric".into()));
    }
    if omega.is_degenerate() {
        return Err(Error::Degenerate("omega".into()));
    }
    if !plus.is_complement_of(minus) {
        return Err(Error::NotComplementary);
    }
    for (which, s) in [("F", plus), ("G", minus)] {
        if let Some(witness) = pairing_witness("omega", omega, s, s) {
            return Err(Error::NotIsotropic {
                which: which.into(),
                witness: Box::new(witness),
            });
        }
    }
    Ok(AlmostKunneth {
        algebra: l.clone(),
        omega: omega.clone(),
        plus: plus.clone(),
        minus: minus.clone(),
    })
}

impl AlmostKunneth {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn omega(&self) -> &BilinearForm {
        &self.omega
    }

    pub fn plus(&self) -> &Subspace {
        &self.plus
    }

    pub fn minus(&self) -> &Subspace {
        &self.minus
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Projections `(π_F, π_G)` along the splitting.
    pub fn projections(&self) -> (Endomorphism, Endomorphism) {
        complementary_projections(&self.plus, &self.minus).expect("validated splitting")
    }

    /// `I = π_F − π_G`.
    pub fn almost_product(&self) -> Endomorphism {
        let (pf, pg) = self.projections();
        pf.sub(&pg)
    }

    /// `g(x, y) = ω(I·x, y)`.
    pub fn neutral_metric(&self) -> BilinearForm {
        let i = self.almost_product();
        let m = &i.matrix().transpose() * self.omega.matrix();
        BilinearForm::symmetric(m).expect("ω(I·,·) is symmetric for isotropic F, G")
    }

    pub fn d_omega(&self) -> ThreeForm {
        self.algebra.ce_d2(&self.omega)
    }

    /// Closedness of ω and bracket closure of F and G, each with a witness on failure.
    pub fn integrability_findings(&self) -> Vec<Finding> {
        let d = self.d_omega().first_nonzero();
        let mut out = vec![Finding::new(
            "integrability",
            "d omega = 0",
            d.map(|(idx, v)| Witness::new("d omega", &idx, v)),
        )];
        for (which, s) in [("F", &self.plus), ("G", &self.minus)] {
            let check = self.algebra.is_subalgebra(s);
            let w = check.witness.map(|(a, b, residual)| {
                let (_, v) = vector::first_nonzero(&residual).expect("nonzero residual");
                Witness::new(&format!("[{which},{which}] outside {which}"), &[s.pivots()[a], s.pivots()[b]], v.clone())
            });
            out.push(Finding::new("integrability", format!("{which} is a subalgebra"), w));
        }
        out
    }

    /// Künneth: ω closed and both subspaces subalgebras.
    pub fn is_integrable(&self) -> bool {
        self.integrability_findings().iter().all(Finding::passed)
    }

    /// Structural checks of the neutral metric.
    pub fn metric_findings(&self) -> Vec<Finding> {
        let g = self.neutral_metric();
        let n = self.dim();
        let mut out = Vec::new();
        let sig = g.matrix().signature_of_symmetric().expect("symmetric");
        out.push(signature_finding(
            "kunneth_axioms",
            "signature(g) neutral",
            &sig,
            sig == Signature::new(n / 2, n / 2, 0),
        ));
        for (which, s, sign) in [("F", &self.plus, 1), ("G", &self.minus, -1)] {
            out.push(Finding::new(
                "kunneth_axioms",
                format!("{which} null for g"),
                pairing_witness("g", &g, s, s),
            ));
            let lhs = g.restrict(s);
            let rhs = self.omega.restrict(s).scale(&Rational::from(sign));
            out.push(Finding::matrix(
                "kunneth_axioms",
                format!("g|{which} = {}omega|{which}", if sign > 0 { "" } else { "-" }),
                &(&lhs - &rhs),
            ));
        }
        out
    }
}

fn signature_finding(category: &'static str, name: &str, sig: &Signature, ok: bool) -> Finding {
    let w = (!ok).then(|| Witness {
        note: format!("signature {sig}"),
        indices: vec![],
        value: Rational::from(sig.positive as i64 - sig.negative as i64),
    });
    Finding::new(category, name, w)
}

/// `(g, h, ω)` with derived recursion operators `A`, `B`, `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BornStructure {
    algebra: LieAlgebra,
    g: BilinearForm,
    h: BilinearForm,
    omega: BilinearForm,
    a: Endomorphism,
    b: Endomorphism,
    j: Endomorphism,
}

fn axiom(operator: &str, defect: Matrix) -> Result<()> {
    match Witness::from_matrix(operator, &defect) {
        None => Ok(()),
        Some(witness) => Err(Error::AxiomFailure {
            operator: operator.into(),
            witness: Box::new(witness),
            defect: Box::new(defect),
        }),
    }
}

pub fn build_born(l: &LieAlgebra, g: &BilinearForm, h: &BilinearForm, omega: &BilinearForm) -> Result<BornStructure> {
    for f in [g, h, omega] {
        check_dim(l, f.dim())?;
    }
    if !g.is_symmetric() || !h.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !omega.is_antisymmetric() {
        return Err(Error::InvalidTensor("omega must be antisymmetric".into()));
    }
    for (name, f) in [("g", g), ("h", h), ("omega", omega)] {
        if f.is_degenerate() {
            return Err(Error::Degenerate(name.into()));
        }
    }
    let a = recursion_operator(g, omega)?;
    let b = recursion_operator(g, h)?;
    let j = recursion_operator(omega, h)?.neg();
    axiom("A^2 = Id", a.square_defect(1))?;
    axiom("B^2 = Id", b.square_defect(1))?;
    axiom("J^2 = -Id", j.square_defect(-1))?;
    axiom("AB = -J", a.compose(&b).add(&j).matrix().clone())?;
    Ok(BornStructure {
        algebra: l.clone(),
        g: g.clone(),
        h: h.clone(),
        omega: omega.clone(),
        a,
        b,
        j,
    })
}

impl BornStructure {
    /// Builds the structure and checks that the supplied operators equal the derived ones.
    pub fn with_operators(
        l: &LieAlgebra,
        g: &BilinearForm,
        h: &BilinearForm,
        omega: &BilinearForm,
        a: &Endomorphism,
        b: &Endomorphism,
        j: &Endomorphism,
    ) -> Result<Self> {
        let born = build_born(l, g, h, omega)?;
        axiom("A matches", born.a.sub(a).matrix().clone())?;
        axiom("B matches", born.b.sub(b).matrix().clone())?;
        axiom("J matches", born.j.sub(j).matrix().clone())?;
        Ok(born)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn g(&self) -> &BilinearForm {
        &self.g
    }

    pub fn h(&self) -> &BilinearForm {
        &self.h
    }

    pub fn omega(&self) -> &BilinearForm {
        &self.omega
    }

    pub fn a(&self) -> &Endomorphism {
        &self.a
    }

    pub fn b(&self) -> &Endomorphism {
        &self.b
    }

    pub fn j(&self) -> &Endomorphism {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `(ω, L₊, L₋)` with `L±` the eigenspaces of `A`.
    pub fn underlying_kunneth(&self) -> Result<AlmostKunneth> {
        let s = involution_split(&self.a)?;
        build_almost_kunneth(&self.algebra, &self.omega, &s.plus, &s.minus)
    }

    pub fn integrability(&self) -> IntegrabilityReport {
        integrability_report(self)
    }
}

/// Every algebraic identity a Born structure must satisfy, each tagged with its category.
pub fn verify_born_identities(b: &BornStructure) -> Vec<Finding> {
    let (a, bb, j) = (&b.a, &b.b, &b.j);
    let n = b.dim();
    let mut out = vec![
        Finding::matrix(BORN_AXIOMS, "A^2 = Id", &a.square_defect(1)),
        Finding::matrix(BORN_AXIOMS, "B^2 = Id", &bb.square_defect(1)),
        Finding::matrix(BORN_AXIOMS, "J^2 = -Id", &j.square_defect(-1)),
        Finding::matrix(BORN_AXIOMS, "AB = -J", a.compose(bb).add(j).matrix()),
        Finding::matrix(
            BORN_AXIOMS,
            "ABJ = Id",
            &(a.compose(bb).compose(j).matrix() - &Matrix::identity(n)),
        ),
        Finding::matrix(BORN_AXIOMS, "AB + BA = 0", &anticommutator_defect(a, bb)),
        Finding::matrix(BORN_AXIOMS, "AJ + JA = 0", &anticommutator_defect(a, j)),
        Finding::matrix(BORN_AXIOMS, "BJ + JB = 0", &anticommutator_defect(bb, j)),
    ];

    // (form, operator, sign of f(Tx,Ty), sign of f(x,Ty) in f(Tx,y) = ±f(x,Ty))
    let forms = [("g", &b.g), ("h", &b.h), ("omega", &b.omega)];
    let ops = [("A", a), ("B", bb), ("J", j)];
    let signs: [[(i64, i64); 3]; 3] = [
        [(-1, -1), (1, 1), (-1, 1)],
        [(1, 1), (1, 1), (1, -1)],
        [(-1, -1), (-1, -1), (1, -1)],
    ];
    for (fi, (fname, f)) in forms.iter().enumerate() {
        for (ti, (tname, t)) in ops.iter().enumerate() {
            let (s_pull, s_mixed) = signs[fi][ti];
            let sign = |s: i64| if s < 0 { "-" } else { "" };
            let pulled = pullback(t, f);
            let target = f.matrix().scale(&Rational::from(s_pull));
            out.push(Finding::matrix(
                IDENTITY_TABLE,
                format!("{fname}({tname}x,{tname}y) = {}{fname}(x,y)", sign(s_pull)),
                &(pulled.matrix() - &target),
            ));
            let left = &t.matrix().transpose() * f.matrix();
            let right = (f.matrix() * t.matrix()).scale(&Rational::from(s_mixed));
            out.push(Finding::matrix(
                IDENTITY_TABLE,
                format!("{fname}({tname}x,y) = {}{fname}(x,{tname}y)", sign(s_mixed)),
                &(&left - &right),
            ));
        }
    }

    let geo = EIGENSPACE_GEOMETRY;
    match (involution_split(a), involution_split(bb)) {
        (Ok(sa), Ok(sb)) => {
            let (lp, lm) = (&sa.plus, &sa.minus);
            let (bp, bm) = (&sb.plus, &sb.minus);
            let swaps: [(&str, &Endomorphism, &Subspace, &Subspace); 8] = [
                ("J L+ = L-", j, lp, lm),
                ("J L- = L+", j, lm, lp),
                ("J B+ = B-", j, bp, bm),
                ("J B- = B+", j, bm, bp),
                ("A B+ = B-", a, bp, bm),
                ("A B- = B+", a, bm, bp),
                ("B L+ = L-", bb, lp, lm),
                ("B L- = L+", bb, lm, lp),
            ];
            for (name, t, from, to) in swaps {
                out.push(Finding::new(geo, name, maps_into_witness(name, t, from, to)));
            }
            for (name, s) in [("L+", lp), ("L-", lm)] {
                let w = if s.dim() * 2 != n {
                    Some(Witness {
                        note: format!("dim {name}"),
                        indices: vec![],
                        value: Rational::from(s.dim() as i64),
                    })
                } else {
                    pairing_witness("omega", &b.omega, s, s)
                };
                out.push(Finding::new(geo, format!("{name} Lagrangian"), w));
                out.push(Finding::new(
                    geo,
                    format!("{name} null for g"),
                    pairing_witness("g", &b.g, s, s),
                ));
            }
            out.push(Finding::new(geo, "B+ g-orthogonal to B-", pairing_witness("g", &b.g, bp, bm)));
            out.push(Finding::new(geo, "L+ h-orthogonal to L-", pairing_witness("h", &b.h, lp, lm)));
            out.push(Finding::new(geo, "B+ h-orthogonal to B-", pairing_witness("h", &b.h, bp, bm)));
            let neutral = build_almost_kunneth(&b.algebra, &b.omega, lp, lm).map(|k| k.neutral_metric());
            let w = match neutral {
                Ok(g0) => Witness::from_matrix("g - neutral", &(b.g.matrix() - g0.matrix())),
                Err(_) => Some(Witness::new("L+ not isotropic", &[], Rational::one())),
            };
            out.push(Finding::new(geo, "g = neutral metric of (omega, L+, L-)", w));
        }
        _ => out.push(Finding::new(
            geo,
            "A and B are nontrivial involutions",
            Some(Witness::new("involution", &[], Rational::zero())),
        )),
    }

    let sg = b.g.matrix().signature_of_symmetric().expect("symmetric");
    let sh = b.h.matrix().signature_of_symmetric().expect("symmetric");
    out.push(signature_finding(
        SIGNATURES,
        "signature(g) = (n/2, n/2, 0)",
        &sg,
        sg == Signature::new(n / 2, n / 2, 0),
    ));
    out.push(signature_finding(
        SIGNATURES,
        "signature(h) = (2p, 2q, 0)",
        &sh,
        sh.null == 0 && sh.positive.is_multiple_of(2) && sh.negative.is_multiple_of(2),
    ));
    out
}

/// Closedness of ω and the three Nijenhuis tensors of a Born structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrabilityReport {
    pub d_omega: ThreeForm,
    pub n_a: OneTwoTensor,
    pub n_b: OneTwoTensor,
    pub n_j: OneTwoTensor,
}

impl IntegrabilityReport {
    pub fn closed(&self) -> bool {
        self.d_omega.is_zero()
    }

    pub fn vanishing_count(&self) -> usize {
        [&self.n_a, &self.n_b, &self.n_j]
            .iter()
            .filter(|n| n.is_zero())
            .count()
    }

    /// `dω = 0` and at least two Nijenhuis tensors vanish.
    pub fn is_integrable(&self) -> bool {
        self.closed() && self.vanishing_count() >= 2
    }

    /// Two vanishing Nijenhuis tensors force the third to vanish.
    pub fn two_of_three_holds(&self) -> bool {
        self.vanishing_count() != 2
    }

    pub fn findings(&self) -> Vec<Finding> {
        let cat = "integrability";
        let d = self
            .d_omega
            .first_nonzero()
            .map(|(idx, v)| Witness::new("d omega", &idx, v));
        let mut out = vec![Finding::new(cat, "d omega = 0", d)];
        for (name, t) in [("N_A", &self.n_a), ("N_B", &self.n_b), ("N_J", &self.n_j)] {
            out.push(Finding::new(cat, format!("{name} = 0"), t.witness(name)));
        }
        let w = (!self.two_of_three_holds()).then(|| Witness {
            note: "vanishing Nijenhuis tensors".into(),
            indices: vec![],
            value: Rational::from(self.vanishing_count() as i64),
        });
        out.push(Finding::new(cat, "two of three Nijenhuis tensors vanish => all vanish", w));
        out
    }
}

pub fn integrability_report(b: &BornStructure) -> IntegrabilityReport {
    let l = &b.algebra;
    IntegrabilityReport {
        d_omega: l.ce_d2(&b.omega),
        n_a: nijenhuis(l, &b.a),
        n_b: nijenhuis(l, &b.b),
        n_j: nijenhuis(l, &b.j),
    }
}

/// The complex structure `J` with `J|F = J̃`, `J|G = −J̃⁻¹`.
///
/// Without `jtilde`, `J̃` sends the echelon basis `f_i` of `F` to the frame
/// `g_i` of `G` with `ω(f_i, g_j) = δ_ij`.
pub fn enhancing_complex_structure(k: &AlmostKunneth, jtilde: Option<&Endomorphism>) -> Result<Endomorphism> {
    let n = k.dim();
    let f: Vec<Vector> = k.plus.basis().to_vec();
    let g: Vec<Vector> = k.minus.basis().to_vec();
    let omega = &k.omega;
    let images: Vec<Vector> = match jtilde {
        Some(jt) => {
            check_dim(&k.algebra, jt.dim())?;
            let images: Vec<Vector> = f.iter().map(|v| jt.apply(v)).collect();
            for (a, img) in images.iter().enumerate() {
                let r = k.minus.residual(img);
                if let Some((c, v)) = vector::first_nonzero(&r) {
                    return Err(Error::NotCompatible(Box::new(Witness::new(
                        "J~ f outside G",
                        &[k.plus.pivots()[a], c],
                        v.clone(),
                    ))));
                }
            }
            if crate::matrix::rank_of(&images) != images.len() {
                return Err(Error::NotCompatible(Box::new(Witness::new("rank J~|F", &[], Rational::from(
                    crate::matrix::rank_of(&images) as i64,
                )))));
            }
            for a in 0..f.len() {
                for c in 0..f.len() {
                    let v = omega.eval(&images[a], &f[c]) + omega.eval(&f[a], &images[c]);
                    if !v.is_zero() {
                        return Err(Error::NotCompatible(Box::new(Witness::new(
                            "omega(J~x,y) + omega(x,J~y)",
                            &[k.plus.pivots()[a], k.plus.pivots()[c]],
                            v,
                        ))));
                    }
                }
            }
            images
        }
        None => {
            let m = f.len();
            let w = Matrix::from_fn(m, |i, j| omega.eval(&f[i], &g[j]));
            let w_inv = w.invert().map_err(|_| Error::Degenerate("omega on F x G".into()))?;
            (0..m)
                .map(|j| {
                    let mut v = vector::zeros(n);
                    for (l, gl) in g.iter().enumerate() {
                        v = vector::add(&v, &vector::scale(&w_inv[(l, j)], gl));
                    }
                    v
                })
                .collect()
        }
    };
    let p_cols: Vec<Vector> = f.iter().chain(&images).cloned().collect();
    let j_cols: Vec<Vector> = images.iter().cloned().chain(f.iter().map(|v| vector::neg(v))).collect();
    let p = Matrix::from_columns(&p_cols)?;
    let jp = Matrix::from_columns(&j_cols)?;
    Ok(Endomorphism::new(&jp * &p.invert()?))
}

/// Born structure `(g, h, ω)` with `g` the neutral metric of `k` and `h(x,y) = ω(x, J·y)`.
pub fn enhance_kunneth(k: &AlmostKunneth, jtilde: Option<&Endomorphism>) -> Result<BornStructure> {
    let j = enhancing_complex_structure(k, jtilde)?;
    let h = BilinearForm::from_matrix(k.omega.matrix() * j.matrix());
    build_born(&k.algebra, &k.neutral_metric(), &h, &k.omega)
}

/// Three closed forms `ω, α, β` with `A = rec(ω,α)`, `B = rec(ω,β)`, `J = rec(α,β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersymplectic {
    algebra: LieAlgebra,
    omega: BilinearForm,
    alpha: BilinearForm,
    beta: BilinearForm,
    a: Endomorphism,
    b: Endomorphism,
    j: Endomorphism,
    metric: BilinearForm,
}

pub fn build_hypersymplectic(
    l: &LieAlgebra,
    omega: &BilinearForm,
    alpha: &BilinearForm,
    beta: &BilinearForm,
) -> Result<Hypersymplectic> {
    for (name, f) in [("omega", omega), ("alpha", alpha), ("beta", beta)] {
        check_dim(l, f.dim())?;
        if !f.is_antisymmetric() {
            return Err(Error::InvalidTensor(format!("{name} must be antisymmetric")));
        }
        if f.is_degenerate() {
            return Err(Error::Degenerate(name.into()));
        }
        if let Some((idx, v)) = l.ce_d2(f).first_nonzero() {
            return Err(Error::NotClosed {
                name: name.into(),
                witness: Box::new(Witness::new(&format!("d {name}"), &idx, v)),
            });
        }
    }
    let a = recursion_operator(omega, alpha)?;
    let b = recursion_operator(omega, beta)?;
    let j = recursion_operator(alpha, beta)?;
    axiom("A^2 = Id", a.square_defect(1))?;
    axiom("B^2 = Id", b.square_defect(1))?;
    axiom("J^2 = -Id", j.square_defect(-1))?;
    let m = alpha.matrix() * b.matrix();
    axiom("metric symmetric", &m - &m.transpose())?;
    Ok(Hypersymplectic {
        algebra: l.clone(),
        omega: omega.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
        a,
        b,
        j,
        metric: BilinearForm::from_matrix(m),
    })
}

impl Hypersymplectic {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn omega(&self) -> &BilinearForm {
        &self.omega
    }

    pub fn alpha(&self) -> &BilinearForm {
        &self.alpha
    }

    pub fn beta(&self) -> &BilinearForm {
        &self.beta
    }

    pub fn a(&self) -> &Endomorphism {
        &self.a
    }

    pub fn b(&self) -> &Endomorphism {
        &self.b
    }

    pub fn j(&self) -> &Endomorphism {
        &self.j
    }

    /// `g(x, y) = α(x, B·y)`.
    pub fn metric(&self) -> &BilinearForm {
        &self.metric
    }

    pub fn findings(&self) -> Vec<Finding> {
        let cat = "hypersymplectic_axioms";
        let n = self.algebra.dim();
        let sig = self.metric.matrix().signature_of_symmetric().expect("symmetric");
        let mut out = vec![
            Finding::matrix(cat, "A^2 = Id", &self.a.square_defect(1)),
            Finding::matrix(cat, "B^2 = Id", &self.b.square_defect(1)),
            Finding::matrix(cat, "J^2 = -Id", &self.j.square_defect(-1)),
        ];
        for (name, f) in [("omega", &self.omega), ("alpha", &self.alpha), ("beta", &self.beta)] {
            let w = self
                .algebra
                .ce_d2(f)
                .first_nonzero()
                .map(|(idx, v)| Witness::new(&format!("d {name}"), &idx, v));
            out.push(Finding::new(cat, format!("d {name} = 0"), w));
        }
        out.push(Finding::matrix(
            cat,
            "metric symmetric",
            &(self.metric.matrix() - &self.metric.matrix().transpose()),
        ));
        out.push(signature_finding(
            cat,
            "signature(metric) neutral",
            &sig,
            sig == Signature::new(n / 2, n / 2, 0),
        ));
        out
    }
}

/// A rational point of the unit circle, `t = tan(θ/2)`, or `θ = π`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CirclePoint {
    Param(Rational),
    Pi,
}

impl CirclePoint {
    pub fn t(t: Rational) -> Self {
        CirclePoint::Param(t)
    }

    /// `(1 − t²)/(1 + t²)`.
    pub fn cos(&self) -> Rational {
        match self {
            CirclePoint::Param(t) => {
                let t2 = t * t;
                (Rational::one() - &t2) / (Rational::one() + t2)
            }
            CirclePoint::Pi => Rational::from(-1),
        }
    }

    /// `2t/(1 + t²)`.
    pub fn sin(&self) -> Rational {
        match self {
            CirclePoint::Param(t) => (t + t) / (Rational::one() + t * t),
            CirclePoint::Pi => Rational::zero(),
        }
    }

    /// The point at `θ + π`.
    pub fn antipode(&self) -> Self {
        match self {
            CirclePoint::Pi => CirclePoint::Param(Rational::zero()),
            CirclePoint::Param(t) => match t.recip() {
                None => CirclePoint::Pi,
                Some(r) => CirclePoint::Param(-r),
            },
        }
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CirclePoint::Param(t) => write!(f, "t={t}"),
            CirclePoint::Pi => write!(f, "theta=pi"),
        }
    }
}

impl FromStr for CirclePoint {
    type Err = Error;

    /// `"pi"` or a rational `t`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "pi" {
            Ok(CirclePoint::Pi)
        } else {
            s.parse().map(CirclePoint::Param)
        }
    }
}

/// The hypotheses on `J̃`: `J̃² = −Id`, anticommutation with `A` and `B`, `J̃*g = −g`.
pub fn s1_hypotheses(hs: &Hypersymplectic, jtilde: &Endomorphism) -> Vec<Finding> {
    let cat = "s1_family";
    let pulled = pullback(jtilde, &hs.metric);
    vec![
        Finding::matrix(cat, "J~^2 = -Id", &jtilde.square_defect(-1)),
        Finding::matrix(cat, "AJ~ + J~A = 0", &anticommutator_defect(&hs.a, jtilde)),
        Finding::matrix(cat, "BJ~ + J~B = 0", &anticommutator_defect(&hs.b, jtilde)),
        Finding::matrix(cat, "J~*g = -g", &(pulled.matrix() + hs.metric.matrix())),
    ]
}

/// Born structure `(g, h_θ, β_θ)` with `β_θ = −sin·α + cos·β`, `I_θ = cos·A + sin·B`,
/// `B̃_θ = J̃I_θ` and `h_θ(x,y) = g(B̃_θ x, y)`; its operators must be `I_θ`, `B̃_θ`, `J̃`.
pub fn s1_family(hs: &Hypersymplectic, jtilde: &Endomorphism, p: &CirclePoint) -> Result<BornStructure> {
    check_dim(&hs.algebra, jtilde.dim())?;
    for f in s1_hypotheses(hs, jtilde) {
        if let Some(witness) = f.witness {
            return Err(Error::HypothesisFailure {
                which: f.name,
                witness: Box::new(witness),
            });
        }
    }
    let (c, s) = (p.cos(), p.sin());
    let beta_t = hs.alpha.scale(&-&s).add(&hs.beta.scale(&c));
    let i_t = hs.a.scale(&c).add(&hs.b.scale(&s));
    let b_t = jtilde.compose(&i_t);
    let g = &hs.metric;
    let h_t = BilinearForm::from_matrix(&b_t.matrix().transpose() * g.matrix());
    let born = BornStructure::with_operators(&hs.algebra, g, &h_t, &beta_t, &i_t, &b_t, jtilde)?;
    if nijenhuis(&hs.algebra, jtilde).is_zero() {
        let report = integrability_report(&born);
        if !report.is_integrable() {
            let witness = report
                .findings()
                .into_iter()
                .find_map(|f| f.witness)
                .expect("a failing component");
            return Err(Error::HypothesisFailure {
                which: "integrability".into(),
                witness: Box::new(witness),
            });
        }
    }
    Ok(born)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::{symmetric_form, two_form};
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn h4() -> LieAlgebra {
        LieAlgebra::from_brackets(
            6,
            &[(0, 1, &[(4, q(-1))]), (0, 3, &[(5, q(-1))]), (1, 2, &[(5, q(-1))])],
        )
        .unwrap()
    }

    fn h4_omega() -> BilinearForm {
        two_form(6, &[(0, 2, q(1)), (1, 5, q(1)), (3, 4, q(1))])
    }

    fn h4_kunneth() -> AlmostKunneth {
        build_almost_kunneth(
            &h4(),
            &h4_omega(),
            &Subspace::coordinate(6, &[0, 1, 4]),
            &Subspace::coordinate(6, &[2, 3, 5]),
        )
        .unwrap()
    }

    fn h4_j() -> Endomorphism {
        Endomorphism::from_action(
            6,
            &[
                (0, 2, q(-2)),
                (1, 3, q(-1)),
                (2, 0, r(1, 2)),
                (3, 1, q(1)),
                (4, 5, q(1)),
                (5, 4, q(-1)),
            ],
        )
    }

    fn nil3_r() -> LieAlgebra {
        LieAlgebra::from_brackets(4, &[(0, 1, &[(2, q(1))])]).unwrap()
    }

    fn nil3_hs() -> Hypersymplectic {
        build_hypersymplectic(
            &nil3_r(),
            &two_form(4, &[(0, 2, q(-1)), (1, 3, q(1))]),
            &two_form(4, &[(0, 3, q(1)), (1, 2, q(-1))]),
            &two_form(4, &[(0, 2, q(-1)), (1, 3, q(-1))]),
        )
        .unwrap()
    }

    fn nil3_jtilde() -> Endomorphism {
        Endomorphism::from_action(4, &[(0, 1, q(1)), (1, 0, q(-1)), (2, 3, q(1)), (3, 2, q(-1))])
    }

    fn plane() -> AlmostKunneth {
        build_almost_kunneth(
            &LieAlgebra::abelian(2),
            &two_form(2, &[(0, 1, q(1))]),
            &Subspace::coordinate(2, &[0]),
            &Subspace::coordinate(2, &[1]),
        )
        .unwrap()
    }

    #[test]
    fn almost_kunneth_examples() {
        h4_kunneth();
        plane();
        let err = build_almost_kunneth(
            &h4(),
            &h4_omega(),
            &Subspace::coordinate(6, &[0, 2, 4]),
            &Subspace::coordinate(6, &[1, 3, 5]),
        )
        .unwrap_err();
        match err {
            Error::NotIsotropic { which, witness } => {
                assert_eq!(which, "F");
                assert_eq!(witness.indices, vec![1, 3]);
                assert_eq!(witness.value, q(1));
            }
            e => panic!("unexpected {e:?}"),
        }
        let overlap = build_almost_kunneth(
            &LieAlgebra::abelian(2),
            &two_form(2, &[(0, 1, q(1))]),
            &Subspace::coordinate(2, &[0]),
            &Subspace::coordinate(2, &[0]),
        );
        assert_eq!(overlap, Err(Error::NotComplementary));
        let degenerate = build_almost_kunneth(
            &LieAlgebra::abelian(2),
            &BilinearForm::from_matrix(Matrix::zeros(2)),
            &Subspace::coordinate(2, &[0]),
            &Subspace::coordinate(2, &[1]),
        );
        assert!(matches!(degenerate, Err(Error::Degenerate(_))));
    }

    #[test]
    fn almost_product_examples() {
        assert_eq!(
            plane().almost_product(),
            Endomorphism::new(Matrix::diagonal(&[q(1), q(-1)]))
        );
        let signs: Vec<Rational> = [1, 1, -1, -1, 1, -1].iter().map(|&x| q(x)).collect();
        assert_eq!(h4_kunneth().almost_product(), Endomorphism::new(Matrix::diagonal(&signs)));
        let k = build_almost_kunneth(
            &nil3_r(),
            &two_form(4, &[(0, 1, q(1)), (3, 2, q(1))]),
            &Subspace::coordinate(4, &[0, 3]),
            &Subspace::coordinate(4, &[1, 2]),
        )
        .unwrap();
        let signs: Vec<Rational> = [1, -1, -1, 1].iter().map(|&x| q(x)).collect();
        assert_eq!(k.almost_product(), Endomorphism::new(Matrix::diagonal(&signs)));
    }

    #[test]
    fn neutral_metric_examples() {
        // g(x,y) = ω(Ix,y) gives +(α1⊗α2 + α2⊗α1) for ω = α12, I = diag(1,−1)
        let g = plane().neutral_metric();
        assert_eq!(g, symmetric_form(2, &[(0, 1, q(1))]));
        assert_eq!(g.matrix().signature_of_symmetric().unwrap(), Signature::new(1, 1, 0));
        let k = h4_kunneth();
        let g = k.neutral_metric();
        assert_eq!(g.matrix().signature_of_symmetric().unwrap(), Signature::new(3, 3, 0));
        for s in [k.plus(), k.minus()] {
            for v in s.basis() {
                assert!(g.eval(v, v).is_zero());
            }
        }
        assert!(crate::report::all_passed(&k.metric_findings()));
    }

    #[test]
    fn born_examples() {
        let l = LieAlgebra::abelian(2);
        let omega = two_form(2, &[(0, 1, q(1))]);
        let g = symmetric_form(2, &[(0, 1, q(-1))]);
        let h = symmetric_form(2, &[(0, 0, q(1)), (1, 1, q(1))]);
        let b = build_born(&l, &g, &h, &omega).unwrap();
        assert!(crate::report::all_passed(&verify_born_identities(&b)));
        assert!(integrability_report(&b).is_integrable());

        let err = build_born(&l, &g, &g, &omega).unwrap_err();
        match err {
            Error::AxiomFailure { operator, .. } => assert_eq!(operator, "J^2 = -Id"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn h4_pipeline() {
        let k = h4_kunneth();
        assert!(k.is_integrable());
        let j = h4_j();
        assert_eq!(enhancing_complex_structure(&k, Some(&j)).unwrap(), j);
        assert_eq!(pullback(&j, &h4_omega()), h4_omega());
        let b = enhance_kunneth(&k, Some(&j)).unwrap();
        assert_eq!(b.j(), &j);
        let findings = verify_born_identities(&b);
        let failed: Vec<_> = findings.iter().filter(|f| !f.passed()).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(findings.iter().filter(|f| f.category == IDENTITY_TABLE).count(), 18);
        let ir = integrability_report(&b);
        assert!(ir.is_integrable());
        assert!(ir.n_a.is_zero() && ir.n_b.is_zero() && ir.n_j.is_zero());
        assert_eq!(b.underlying_kunneth().unwrap().plus(), k.plus());
    }

    #[test]
    fn default_frame_gives_positive_h() {
        for k in [h4_kunneth(), plane()] {
            let b = enhance_kunneth(&k, None).unwrap();
            let n = k.dim();
            assert_eq!(b.h().matrix().signature_of_symmetric().unwrap(), Signature::new(n, 0, 0));
            let back = b.underlying_kunneth().unwrap();
            assert_eq!(back.plus(), k.plus());
            assert_eq!(back.minus(), k.minus());
        }
    }

    #[test]
    fn incompatible_jtilde_rejected() {
        let k = h4_kunneth();
        // e1 ↦ e3, e2 ↦ e4, e5 ↦ e6 breaks ω(J̃x,y) = −ω(x,J̃y) at (e1, e1)
        let bad = Endomorphism::from_action(6, &[(0, 2, q(1)), (1, 3, q(1)), (4, 5, q(1))]);
        assert!(matches!(enhance_kunneth(&k, Some(&bad)), Err(Error::NotCompatible(_))));
        let outside = Endomorphism::from_action(6, &[(0, 1, q(1)), (1, 3, q(1)), (4, 5, q(1))]);
        assert!(matches!(enhance_kunneth(&k, Some(&outside)), Err(Error::NotCompatible(_))));
    }

    #[test]
    fn nonclosed_fixture_is_not_integrable() {
        let k = build_almost_kunneth(
            &nil3_r(),
            &two_form(4, &[(0, 1, q(1)), (3, 2, q(1))]),
            &Subspace::coordinate(4, &[0, 3]),
            &Subspace::coordinate(4, &[1, 2]),
        )
        .unwrap();
        let b = enhance_kunneth(&k, None).unwrap();
        let ir = integrability_report(&b);
        assert!(!ir.is_integrable());
        let d = ir.findings().into_iter().find(|f| f.name == "d omega = 0").unwrap();
        assert_eq!(d.witness.unwrap().indices, vec![1, 2, 4]);
    }

    #[test]
    fn hypersymplectic_nil3() {
        let hs = nil3_hs();
        let a = Endomorphism::from_action(4, &[(0, 1, q(1)), (1, 0, q(1)), (2, 3, q(-1)), (3, 2, q(-1))]);
        let b = Endomorphism::new(Matrix::diagonal(&[q(1), q(-1), q(1), q(-1)]));
        let j = Endomorphism::from_action(4, &[(0, 1, q(1)), (1, 0, q(-1)), (2, 3, q(-1)), (3, 2, q(1))]);
        assert_eq!((hs.a(), hs.b(), hs.j()), (&a, &b, &j));
        let g = symmetric_form(4, &[(0, 3, q(-1)), (1, 2, q(-1))]);
        assert_eq!(hs.metric(), &g);
        assert!(crate::report::all_passed(&hs.findings()));

        let alpha = hs.alpha().clone();
        let err = build_hypersymplectic(&nil3_r(), hs.omega(), &alpha, &alpha).unwrap_err();
        assert!(matches!(err, Error::AxiomFailure { ref operator, .. } if operator == "J^2 = -Id"));
    }

    #[test]
    fn circle_points() {
        for t in [q(0), q(1), q(-1), r(1, 2), q(2), r(3, 5)] {
            let p = CirclePoint::t(t);
            assert_eq!(&p.cos() * &p.cos() + &p.sin() * &p.sin(), q(1));
            let ap = p.antipode();
            assert_eq!(ap.cos(), -p.cos());
            assert_eq!(ap.sin(), -p.sin());
            assert_eq!(ap.antipode(), p);
        }
        assert_eq!((CirclePoint::Pi.cos(), CirclePoint::Pi.sin()), (q(-1), q(0)));
        assert_eq!("pi".parse::<CirclePoint>().unwrap(), CirclePoint::Pi);
        assert_eq!("3/5".parse::<CirclePoint>().unwrap(), CirclePoint::t(r(3, 5)));
        let p = CirclePoint::t(r(1, 2));
        assert_eq!((p.cos(), p.sin()), (r(3, 5), r(4, 5)));
    }

    #[test]
    fn s1_family_points() {
        let hs = nil3_hs();
        let jt = nil3_jtilde();
        assert!(crate::report::all_passed(&s1_hypotheses(&hs, &jt)));
        let b0 = s1_family(&hs, &jt, &CirclePoint::t(q(0))).unwrap();
        assert_eq!(b0.omega(), hs.beta());
        assert_eq!(b0.a(), hs.a());
        let b1 = s1_family(&hs, &jt, &CirclePoint::t(q(1))).unwrap();
        assert_eq!(b1.a(), hs.b());
        for p in ["-1", "1/2", "2", "3/5", "pi"] {
            let b = s1_family(&hs, &jt, &p.parse().unwrap()).unwrap();
            assert!(crate::report::all_passed(&verify_born_identities(&b)));
            assert!(integrability_report(&b).is_integrable());
        }
        let bad = Endomorphism::from_action(4, &[(0, 1, q(1)), (1, 0, q(-1)), (2, 3, q(-1)), (3, 2, q(1))]);
        let err = s1_family(&hs, &bad, &CirclePoint::Pi);
        assert!(matches!(err, Err(Error::HypothesisFailure { .. })), "{err:?}");
    }

    #[test]
    fn corrupted_h_is_reported() {
        let b = enhance_kunneth(&h4_kunneth(), Some(&h4_j())).unwrap();
        let mut hm = b.h().matrix().clone();
        hm[(0, 0)] = -&hm[(0, 0)];
        let h = BilinearForm::from_matrix(hm);
        match build_born(b.algebra(), b.g(), &h, b.omega()) {
            Err(Error::AxiomFailure { witness, .. }) => assert_eq!(witness.indices.len(), 2),
            Ok(bad) => assert!(!crate::report::all_passed(&verify_born_identities(&bad))),
            Err(e) => panic!("unexpected {e:?}"),
        }
    }

    fn point() -> impl Strategy<Value = CirclePoint> {
        prop_oneof![
            Just(CirclePoint::Pi),
            (-6i64..=6, 1i64..=6).prop_map(|(n, d)| CirclePoint::t(r(n, d)))
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn s1_family_antipode(p in point()) {
            let hs = nil3_hs();
            let jt = nil3_jtilde();
            let b = s1_family(&hs, &jt, &p).unwrap();
            let ba = s1_family(&hs, &jt, &p.antipode()).unwrap();
            prop_assert_eq!(ba.a(), &b.a().neg());
            prop_assert_eq!(ba.h(), &b.h().neg());
            prop_assert_eq!(ba.omega(), &b.omega().neg());
            prop_assert_eq!(ba.j(), b.j());
        }

        #[test]
        fn sign_flip_of_g(seed in 0u64..1000) {
            let k = crate::random::random_almost_kunneth(seed, 3);
            let b = enhance_kunneth(&k, None).unwrap();
            let flipped = build_born(b.algebra(), &b.g().neg(), b.h(), b.omega()).unwrap();
            prop_assert_eq!(flipped.a(), &b.a().neg());
            prop_assert_eq!(flipped.b(), &b.b().neg());
            prop_assert_eq!(flipped.j(), b.j());
            prop_assert!(crate::report::all_passed(&verify_born_identities(&b)));
            let ir = integrability_report(&b);
            prop_assert!(ir.two_of_three_holds());
        }

        #[test]
        fn neutral_metric_restricts_to_omega(seed in 0u64..1000) {
            let k = crate::random::random_almost_kunneth(seed, 3);
            prop_assert!(crate::report::all_passed(&k.metric_findings()));
            let b = enhance_kunneth(&k, None).unwrap();
            let back = b.underlying_kunneth().unwrap();
            prop_assert_eq!(back.plus(), k.plus());
            prop_assert_eq!(back.minus(), k.minus());
        }
    }
}
