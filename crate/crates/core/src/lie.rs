//! Lie algebras given by structure constants, subspaces of them, and the
//! Chevalley–Eilenberg differential on 1- and 2-forms.
//!
//! Sign convention: `(dα)(x, y) = −α([x, y])`, so `[e1, e2] = −e5` gives
//! `dα5 = α1∧α2`. Degree-2 uses the matching formula
//! `dω(x,y,z) = −ω([x,y],z) + ω([x,z],y) − ω([y,z],x)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::{rank_of, rref, vector, Matrix, Vector};
use crate::multilinear::BilinearForm;
use crate::rational::Rational;

/// Raw structure constants `c^k_{ij}` (coefficient of `e_k` in `[e_i, e_j]`),
/// not yet checked against the Jacobi identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    c: Vec<Rational>,
}

impl StructureConstants {
    pub fn zero(n: usize) -> Self {
        StructureConstants {
            n,
            c: vec![Rational::zero(); n * n * n],
        }
    }

    /// Sets `[e_i, e_j] = value` and `[e_j, e_i] = −value`.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: &[Rational]) -> Result<()> {
        let n = self.n;
        if i >= n || j >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: i.max(j) + 1,
            });
        }
        if value.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: value.len(),
            });
        }
        if i == j {
            if vector::is_zero(value) {
                return Ok(());
            }
            return Err(Error::InvalidTensor(format!(
                "[e{0}, e{0}] must vanish",
                i + 1
            )));
        }
        for (k, v) in value.iter().enumerate() {
            self.c[(i * n + j) * n + k] = v.clone();
            self.c[(j * n + i) * n + k] = -v;
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.n + j) * self.n + k]
    }

    fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.n + j) * self.n;
        &self.c[start..start + self.n]
    }

    /// All Jacobi sums `Σ_m c^m_{ij} c^l_{mk} + c^m_{jk} c^l_{mi} + c^m_{ki} c^l_{mj}`,
    /// indexed `[l][i][j][k]` flattened.
    pub fn jacobi_defect(&self) -> JacobiDefect {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n * n * n);
        for l in 0..n {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let s: Rational = (0..n)
                            .map(|m| {
                                self.get(i, j, m) * self.get(m, k, l)
                                    + self.get(j, k, m) * self.get(m, i, l)
                                    + self.get(k, i, m) * self.get(m, j, l)
                            })
                            .sum();
                        data.push(s);
                    }
                }
            }
        }
        JacobiDefect { n, data }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiDefect {
    n: usize,
    data: Vec<Rational>,
}

impl JacobiDefect {
    pub fn get(&self, l: usize, i: usize, j: usize, k: usize) -> &Rational {
        let n = self.n;
        &self.data[((l * n + i) * n + j) * n + k]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    /// First nonzero entry as `(l, i, j, k, value)`, ordered by `(i, j, k, l)`.
    pub fn first_violation(&self) -> Option<(usize, usize, usize, usize, Rational)> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.get(l, i, j, k);
                        if !v.is_zero() {
                            return Some((l, i, j, k, v.clone()));
                        }
                    }
                }
            }
        }
        None
    }
}

/// Sparse bracket table: `(i, j, &[(k, c_k)])` stands for `[e_i, e_j] = sum c_k e_k`.
pub type BracketList<'a> = [(usize, usize, &'a [(usize, Rational)])];

/// A finite-dimensional real Lie algebra with a fixed basis `e_1..e_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    constants: StructureConstants,
}

impl LieAlgebra {
    pub fn new(constants: StructureConstants) -> Result<Self> {
        if constants.n == 0 {
            return Err(Error::NotSquare);
        }
        if let Some((l, i, j, k, value)) = constants.jacobi_defect().first_violation() {
            return Err(Error::JacobiViolation {
                i: i + 1,
                j: j + 1,
                k: k + 1,
                l: l + 1,
                value,
            });
        }
        Ok(LieAlgebra { constants })
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            constants: StructureConstants::zero(n),
        }
    }

    /// Builds from `(i, j, [(k, coefficient)])` triples with 0-based indices.
    pub fn from_brackets(n: usize, brackets: &BracketList) -> Result<Self> {
        let mut c = StructureConstants::zero(n);
        for &(i, j, out) in brackets {
            let mut v = vector::zeros(n);
            for (k, coef) in out {
                if *k >= n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: k + 1,
                    });
                }
                v[*k] = coef.clone();
            }
            c.set_bracket(i, j, &v)?;
        }
        Self::new(c)
    }

    pub fn dim(&self) -> usize {
        self.constants.n
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        self.constants.get(i, j, k)
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.c.iter().all(Rational::is_zero)
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        self.constants.bracket_basis(i, j).to_vec()
    }

    /// `[x, y]^k = Σ x^i y^j c^k_{ij}`.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let n = self.dim();
        let mut out = vector::zeros(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let coef = &x[i] * &y[j];
                for (k, c) in self.constants.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &coef * c;
                    }
                }
            }
        }
        out
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`, for serialization.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vector)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.bracket_basis(i, j);
                if !vector::is_zero(&v) {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> SubalgebraCheck {
        let b = s.basis();
        for a in 0..b.len() {
            for c in a + 1..b.len() {
                let v = self.bracket_unchecked(&b[a], &b[c]);
                let residual = s.residual(&v);
                if !vector::is_zero(&residual) {
                    return SubalgebraCheck {
                        closed: false,
                        witness: Some((a, c, residual)),
                    };
                }
            }
        }
        SubalgebraCheck {
            closed: true,
            witness: None,
        }
    }

    /// `(dα)(e_i, e_j) = −α([e_i, e_j])`.
    pub fn ce_d1(&self, a: &OneForm) -> BilinearForm {
        let n = self.dim();
        let m = Matrix::from_fn(n, |i, j| -vector::dot(&a.0, self.constants.bracket_basis(i, j)));
        BilinearForm::from_matrix(m)
    }

    pub fn ce_d2(&self, w: &BilinearForm) -> ThreeForm {
        let n = self.dim();
        let m = w.matrix();
        let eval = |v: &[Rational], k: usize| -> Rational {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(p, x)| x * &m[(p, k)])
                .sum()
        };
        let mut out = ThreeForm::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let v = -eval(self.constants.bracket_basis(i, j), k)
                        + eval(self.constants.bracket_basis(i, k), j)
                        - eval(self.constants.bracket_basis(j, k), i);
                    out.set(i, j, k, v);
                }
            }
        }
        out
    }

    pub fn is_closed(&self, w: &BilinearForm) -> bool {
        self.ce_d2(w).is_zero()
    }
}

/// Result of a bracket-closure test. The witness holds the positions of two
/// basis vectors of the subspace and the component of their bracket outside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgebraCheck {
    pub closed: bool,
    pub witness: Option<(usize, usize, Vector)>,
}

/// Linear subspace of `R^n`, stored by a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the given vectors; dependent vectors are reduced away.
    pub fn span(n: usize, vectors: &[Vector]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        let (basis, pivots) = rref(vectors.to_vec());
        Ok(Subspace { n, basis, pivots })
    }

    /// Span of basis vectors `e_i` for the given 0-based indices.
    pub fn coordinate(n: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vector> = indices.iter().map(|&i| vector::unit(n, i)).collect();
        Self::span(n, &vs).expect("indices in range")
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Leading coordinate of each basis vector.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` reduced modulo the subspace; zero iff `v` lies in it.
    pub fn residual(&self, v: &[Rational]) -> Vector {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = r[p].clone();
                r = vector::sub(&r, &vector::scale(&f, b));
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        vector::is_zero(&self.residual(v))
    }

    pub fn is_complement_of(&self, other: &Subspace) -> bool {
        if self.n != other.n || self.dim() + other.dim() != self.n {
            return false;
        }
        let all: Vec<Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        rank_of(&all) == self.n
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm(pub Vector);

impl OneForm {
    pub fn dual_basis(n: usize, i: usize) -> Self {
        OneForm(vector::unit(n, i))
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        vector::dot(&self.0, x)
    }

    /// `(α∧β)(x, y) = α(x)β(y) − α(y)β(x)`.
    pub fn wedge(&self, other: &OneForm) -> BilinearForm {
        let n = self.0.len();
        BilinearForm::from_matrix(Matrix::from_fn(n, |i, j| {
            &self.0[i] * &other.0[j] - &self.0[j] * &other.0[i]
        }))
    }

    /// `(α∧w)(x,y,z) = α(x)w(y,z) − α(y)w(x,z) + α(z)w(x,y)`.
    pub fn wedge_two(&self, w: &BilinearForm) -> ThreeForm {
        let n = self.0.len();
        let m = w.matrix();
        let mut out = ThreeForm::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let v = &self.0[i] * &m[(j, k)] - &self.0[j] * &m[(i, k)]
                        + &self.0[k] * &m[(i, j)];
                    out.set(i, j, k, v);
                }
            }
        }
        out
    }
}

/// Alternating 3-form; only the strictly increasing components are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeForm {
    n: usize,
    coeffs: BTreeMap<[usize; 3], Rational>,
}

impl ThreeForm {
    pub fn zero(n: usize) -> Self {
        ThreeForm {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        debug_assert!(i < j && j < k);
        if v.is_zero() {
            self.coeffs.remove(&[i, j, k]);
        } else {
            self.coeffs.insert([i, j, k], v);
        }
    }

    /// Component at an arbitrary index triple, using full antisymmetry.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        let mut idx = [i, j, k];
        if i == j || j == k || i == k {
            return Rational::zero();
        }
        let mut sign = false;
        for a in 0..3 {
            for b in 0..2 - a {
                if idx[b] > idx[b + 1] {
                    idx.swap(b, b + 1);
                    sign = !sign;
                }
            }
        }
        match self.coeffs.get(&idx) {
            Some(v) if sign => -v,
            Some(v) => v.clone(),
            None => Rational::zero(),
        }
    }

    /// Trilinear evaluation.
    pub fn eval(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for ([i, j, k], c) in &self.coeffs {
            let (i, j, k) = (*i, *j, *k);
            // sum over the six permutations of (i,j,k) with signs
            let det = &x[i] * &(&y[j] * &z[k] - &y[k] * &z[j])
                - &x[j] * &(&y[i] * &z[k] - &y[k] * &z[i])
                + &x[k] * &(&y[i] * &z[j] - &y[j] * &z[i]);
            acc += c * &det;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero components `(i<j<k, value)` in lexicographic order.
    pub fn nonzero(&self) -> impl Iterator<Item = (&[usize; 3], &Rational)> {
        self.coeffs.iter()
    }

    pub fn first_nonzero(&self) -> Option<([usize; 3], Rational)> {
        self.coeffs.iter().next().map(|(k, v)| (*k, v.clone()))
    }
}

impl std::ops::Sub for &ThreeForm {
    type Output = ThreeForm;
    fn sub(self, rhs: &ThreeForm) -> ThreeForm {
        let mut out = self.clone();
        for (idx, v) in &rhs.coeffs {
            let cur = out.coeffs.get(idx).cloned().unwrap_or_default();
            out.set(idx[0], idx[1], idx[2], cur - v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn nil3_r() -> LieAlgebra {
        LieAlgebra::from_brackets(4, &[(0, 1, &[(2, q(1))])]).unwrap()
    }

    fn h4() -> LieAlgebra {
        LieAlgebra::from_brackets(
            6,
            &[
                (0, 1, &[(4, q(-1))]),
                (0, 3, &[(5, q(-1))]),
                (1, 2, &[(5, q(-1))]),
            ],
        )
        .unwrap()
    }

    fn two_form(n: usize, terms: &[(usize, usize, i64)]) -> BilinearForm {
        let mut m = Matrix::zeros(n);
        for &(i, j, c) in terms {
            m[(i, j)] += &q(c);
            m[(j, i)] -= &q(c);
        }
        BilinearForm::from_matrix(m)
    }

    #[test]
    fn bracket_examples() {
        let l = nil3_r();
        let e = |i| vector::unit(4, i);
        assert_eq!(l.bracket(&e(0), &e(1)).unwrap(), e(2));
        let x = vec![q(1), q(2), q(-3), q(5)];
        assert!(vector::is_zero(&l.bracket(&x, &x).unwrap()));
        let h = h4();
        assert_eq!(
            h.bracket(&vector::unit(6, 0), &vector::unit(6, 3)).unwrap(),
            vector::neg(&vector::unit(6, 5))
        );
        assert!(matches!(
            l.bracket(&e(0), &[q(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    /// Expands `[[x,y],z] + [[y,z],x] + [[z,x],y]` through `bracket` on basis
    /// vectors; independent of the index formula in `jacobi_defect`.
    fn jacobi_by_expansion(c: &StructureConstants) -> bool {
        let n = c.dim();
        let br = |x: &[Rational], y: &[Rational]| -> Vector {
            let mut out = vector::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        out[k] += &x[i] * &y[j] * c.get(i, j, k);
                    }
                }
            }
            out
        };
        let e = |i| vector::unit(n, i);
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let s = vector::add(
                        &vector::add(&br(&br(&e(i), &e(j)), &e(k)), &br(&br(&e(j), &e(k)), &e(i))),
                        &br(&br(&e(k), &e(i)), &e(j)),
                    );
                    vector::is_zero(&s)
                })
            })
        })
    }

    #[test]
    fn jacobi_examples() {
        assert!(StructureConstants::zero(4).jacobi_defect().is_zero());
        let h = h4();
        assert!(h.constants().jacobi_defect().is_zero());
        assert!(jacobi_by_expansion(h.constants()));

        // filiform [e1,e2]=e3, [e1,e3]=e4
        let mut c = StructureConstants::zero(4);
        c.set_bracket(0, 1, &[q(0), q(0), q(1), q(0)]).unwrap();
        c.set_bracket(0, 2, &[q(0), q(0), q(0), q(1)]).unwrap();
        assert!(c.jacobi_defect().is_zero());
        assert!(jacobi_by_expansion(&c));

        // [e1,e2]=e3, [e3,e1]=e1: [[e1,e2],e1] + [[e2,e1],e1] + [[e1,e1],e2] is fine,
        // but [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2] = 0 + 0 + [e1,e2] = e3 ≠ 0.
        let mut bad = StructureConstants::zero(3);
        bad.set_bracket(0, 1, &[q(0), q(0), q(1)]).unwrap();
        bad.set_bracket(2, 0, &[q(1), q(0), q(0)]).unwrap();
        assert!(!jacobi_by_expansion(&bad));
        assert!(!bad.jacobi_defect().is_zero());
        assert!(matches!(LieAlgebra::new(bad), Err(Error::JacobiViolation { .. })));
    }

    #[test]
    fn subalgebra_examples() {
        let h = h4();
        assert!(h.is_subalgebra(&Subspace::coordinate(6, &[0, 1, 4])).closed);
        let line = Subspace::span(6, &[vec![q(1), q(2), q(0), q(-1), q(3), q(1)]]).unwrap();
        assert!(h.is_subalgebra(&line).closed);
        let l = nil3_r();
        let check = l.is_subalgebra(&Subspace::coordinate(4, &[0, 1]));
        assert!(!check.closed);
        let (a, b, residual) = check.witness.unwrap();
        assert_eq!((a, b), (0, 1));
        assert_eq!(residual, vector::unit(4, 2));
    }

    #[test]
    fn differential_examples() {
        let h = h4();
        let d5 = h.ce_d1(&OneForm::dual_basis(6, 4));
        assert_eq!(d5, two_form(6, &[(0, 1, 1)]));
        let d6 = h.ce_d1(&OneForm::dual_basis(6, 5));
        assert_eq!(d6, two_form(6, &[(0, 3, 1), (1, 2, 1)]));
        assert!(LieAlgebra::abelian(4)
            .ce_d1(&OneForm(vec![q(1), q(2), q(3), q(4)]))
            .matrix()
            .is_zero());
        let l = nil3_r();
        assert_eq!(l.ce_d1(&OneForm::dual_basis(4, 2)), two_form(4, &[(0, 1, -1)]));

        let omega = two_form(6, &[(0, 2, 1), (1, 5, 1), (3, 4, 1)]);
        assert!(h.ce_d2(&omega).is_zero());
        assert!(h.is_closed(&omega));
        let any = two_form(4, &[(0, 1, 3), (1, 3, -2)]);
        assert!(LieAlgebra::abelian(4).is_closed(&any));

        // α12 + α43 on nil3⊕R: d = α4 ∧ (−dα3) ... = α124
        let tilde = two_form(4, &[(0, 1, 1), (3, 2, 1)]);
        let d = l.ce_d2(&tilde);
        assert_eq!(d.get(0, 1, 3), q(1));
        assert_eq!(d.nonzero().count(), 1);
        assert!(!l.is_closed(&tilde));
    }

    #[test]
    fn three_form_antisymmetry() {
        let l = nil3_r();
        let d = l.ce_d2(&two_form(4, &[(0, 1, 1), (3, 2, 1)]));
        assert_eq!(d.get(1, 0, 3), q(-1));
        assert_eq!(d.get(3, 1, 0), q(-1));
        assert_eq!(d.get(3, 0, 1), q(1));
        assert_eq!(d.get(0, 0, 3), q(0));
        let e = |i| vector::unit(4, i);
        assert_eq!(d.eval(&e(0), &e(1), &e(3)), q(1));
        assert_eq!(d.eval(&e(1), &e(0), &e(3)), q(-1));
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn vec4() -> impl Strategy<Value = Vector> {
        proptest::collection::vec(small(), 4)
    }

    /// A few 4-dimensional Lie algebras in a randomly changed basis.
    fn algebra4() -> impl Strategy<Value = LieAlgebra> {
        let bases = prop_oneof![
            Just(0usize),
            Just(1usize),
            Just(2usize),
            Just(3usize)
        ];
        (bases, proptest::collection::vec(small(), 16)).prop_filter_map(
            "invertible basis change",
            |(which, p)| {
                let p = Matrix::from_rows(p.chunks(4).map(<[Rational]>::to_vec).collect()).ok()?;
                let base = crate::random::base_algebra_4(which);
                crate::random::change_basis(&base, &p).ok()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn d_squared_vanishes(l in algebra4(), a in vec4()) {
            let da = l.ce_d1(&OneForm(a));
            prop_assert!(l.ce_d2(&da).is_zero());
        }

        #[test]
        fn leibniz(l in algebra4(), a in vec4(), b in vec4()) {
            let (a, b) = (OneForm(a), OneForm(b));
            let lhs = l.ce_d2(&a.wedge(&b));
            let rhs = &b.wedge_two(&l.ce_d1(&a)) - &a.wedge_two(&l.ce_d1(&b));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn bracket_bilinear_antisymmetric(l in algebra4(), x in vec4(), y in vec4(), z in vec4(), s in small()) {
            let xy = l.bracket(&x, &y).unwrap();
            let yx = l.bracket(&y, &x).unwrap();
            prop_assert_eq!(xy.clone(), vector::neg(&yx));
            let lhs = l.bracket(&vector::add(&vector::scale(&s, &x), &z), &y).unwrap();
            let rhs = vector::add(&vector::scale(&s, &xy), &l.bracket(&z, &y).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
