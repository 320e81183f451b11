//! Dense square matrices over `Rational`, plus the small amount of vector and
//! row-reduction machinery the rest of the engine needs.
//!
//! Indices are 0-based in the API. Reports and model files translate to the
//! 1-based basis labels `e_1..e_n`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Vector = Vec<Rational>;

pub mod vector {
    use super::Vector;
    use crate::rational::Rational;

    pub fn zeros(n: usize) -> Vector {
        vec![Rational::zero(); n]
    }

    pub fn unit(n: usize, i: usize) -> Vector {
        let mut v = zeros(n);
        v[i] = Rational::one();
        v
    }

    pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(s: &Rational, a: &[Rational]) -> Vector {
        a.iter().map(|x| s * x).collect()
    }

    pub fn neg(a: &[Rational]) -> Vector {
        a.iter().map(|x| -x).collect()
    }

    pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    pub fn is_zero(a: &[Rational]) -> bool {
        a.iter().all(Rational::is_zero)
    }

    /// Index and value of the first nonzero entry.
    pub fn first_nonzero(a: &[Rational]) -> Option<(usize, &Rational)> {
        a.iter().enumerate().find(|(_, x)| !x.is_zero())
    }
}

/// Inertia of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub null: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, null: usize) -> Self {
        Signature {
            positive,
            negative,
            null,
        }
    }

    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.null
    }

    pub fn is_neutral(&self) -> bool {
        self.null == 0 && self.positive == self.negative
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positive, self.negative, self.null)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotSquare);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vector]) -> Result<Self> {
        let n = cols.len();
        if n == 0 || cols.iter().any(|c| c.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(Self::from_fn(n, |i, j| cols[j][i].clone()))
    }

    /// Convenience for literal integer matrices in tests and the catalog.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
        .expect("square integer matrix")
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        Self::from_fn(n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.n).map(<[Rational]>::to_vec).collect()
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.n..(i + 1) * self.n].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.n).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|x| s * x).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.n, "vector dimension");
        (0..self.n)
            .map(|i| vector::dot(&self.data[i * self.n..(i + 1) * self.n], v))
            .collect()
    }

    /// `vᵀ M w`.
    pub fn bilinear(&self, v: &[Rational], w: &[Rational]) -> Rational {
        vector::dot(v, &self.mul_vec(w))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    /// Row-major first nonzero entry, as `(i, j, value)`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .find(|(_, x)| !x.is_zero())
            .map(|(idx, x)| (idx / self.n, idx % self.n, x))
    }

    /// Exact determinant by Gaussian elimination over the rationals.
    pub fn determinant(&self) -> Rational {
        let n = self.n;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] / &pivot;
                for c in col..n {
                    let delta = &factor * &a[(col, c)];
                    a[(r, c)] -= &delta;
                }
            }
        }
        det
    }

    pub fn invert(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pivot = a[(col, col)].recip().expect("nonzero pivot");
            for c in 0..n {
                a[(col, c)] *= &pivot;
                inv[(col, c)] *= &pivot;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for c in 0..n {
                    let da = &factor * &a[(col, c)];
                    a[(r, c)] -= &da;
                    let di = &factor * &inv[(col, c)];
                    inv[(r, c)] -= &di;
                }
            }
        }
        Ok(inv)
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.rows())
    }

    /// Basis of `{x : M x = 0}` in reduced echelon form.
    pub fn kernel(&self) -> Vec<Vector> {
        let n = self.n;
        let (r, pivots) = rref(self.rows());
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let raw: Vec<Vector> = free
            .iter()
            .map(|&f| {
                let mut v = vector::unit(n, f);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[row][f];
                }
                v
            })
            .collect();
        let (basis, _) = rref(raw);
        basis
    }

    /// Sylvester inertia by symmetric congruence.
    ///
    /// Pivots are taken on the diagonal, lowest index first. When every
    /// remaining diagonal entry vanishes but some off-diagonal `m[i][j]` does
    /// not, the congruence `e_i -> e_i + e_j` creates the pivot `2 m[i][j]`.
    pub fn signature_of_symmetric(&self) -> Result<Signature> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = self.n;
        let mut a = self.clone();
        let mut sig = Signature::new(0, 0, 0);
        let mut k = 0;
        while k < n {
            if let Some(p) = (k..n).find(|&i| !a[(i, i)].is_zero()) {
                a.swap_rows(p, k);
                a.swap_cols(p, k);
                let pivot = a[(k, k)].clone();
                if pivot.is_positive() {
                    sig.positive += 1;
                } else {
                    sig.negative += 1;
                }
                for r in k + 1..n {
                    if a[(r, k)].is_zero() {
                        continue;
                    }
                    let factor = &a[(r, k)] / &pivot;
                    for c in k..n {
                        let d = &factor * &a[(k, c)];
                        a[(r, c)] -= &d;
                    }
                    for c in k..n {
                        let d = &factor * &a[(c, k)];
                        a[(c, r)] -= &d;
                    }
                }
                k += 1;
                continue;
            }
            let off = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_zero());
            match off {
                Some((i, j)) => {
                    // e_i -> e_i + e_j
                    for c in k..n {
                        let v = a[(j, c)].clone();
                        a[(i, c)] += &v;
                    }
                    for r in k..n {
                        let v = a[(r, j)].clone();
                        a[(r, i)] += &v;
                    }
                }
                None => {
                    sig.null += n - k;
                    break;
                }
            }
        }
        Ok(sig)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.n {
            self.data.swap(a * self.n + c, b * self.n + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.n {
            self.data.swap(r * self.n + a, r * self.n + b);
        }
    }
}

/// Reduced row echelon form of a list of row vectors; zero rows are dropped.
/// Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vector>) -> (Vec<Vector>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("nonzero pivot");
        rows[r] = vector::scale(&inv, &rows[r]);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let sub = vector::scale(&f, &rows[r]);
                rows[i] = vector::sub(&rows[i], &sub);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank_of(rows: &[Vector]) -> usize {
    rref(rows.to_vec()).0.len()
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix dimension");
        Matrix::from_fn(self.n, |i, j| {
            (0..self.n).map(|k| &self[(i, k)] * &rhs[(k, j)]).sum()
        })
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix dimension");
        Matrix {
            n: self.n,
            data: vector::add(&self.data, &rhs.data),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix dimension");
        Matrix {
            n: self.n,
            data: vector::sub(&self.data, &rhs.data),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            n: self.n,
            data: vector::neg(&self.data),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for row in cells.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    /// Cofactor expansion along the first row; independent of the elimination path.
    fn cofactor_det(m: &Matrix) -> Rational {
        let n = m.dim();
        if n == 1 {
            return m[(0, 0)].clone();
        }
        (0..n)
            .map(|c| {
                let minor = Matrix::from_fn(n - 1, |i, j| {
                    m[(i + 1, if j < c { j } else { j + 1 })].clone()
                });
                let term = &m[(0, c)] * &cofactor_det(&minor);
                if c % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    fn h4_omega() -> Matrix {
        // α13 + α26 + α45
        let mut m = Matrix::zeros(6);
        for (i, j) in [(0, 2), (1, 5), (3, 4)] {
            m[(i, j)] = Rational::one();
            m[(j, i)] = -Rational::one();
        }
        m
    }

    #[test]
    fn invert_examples() {
        assert_eq!(Matrix::identity(4).invert().unwrap(), Matrix::identity(4));
        let swap = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let inv = swap.invert().unwrap();
        assert!((&swap * &inv).is_identity());
        assert_eq!(inv, swap);
        let rank1 = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert_eq!(rank1.invert(), Err(Error::Singular));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(Matrix::identity(3).determinant(), Rational::one());
        assert_eq!(
            Matrix::from_i64(&[&[0, 1], &[-1, 0]]).determinant(),
            Rational::one()
        );
        let w = h4_omega();
        let det = w.determinant();
        assert_eq!(det, cofactor_det(&w));
        assert_eq!(det.abs(), Rational::one());
    }

    #[test]
    fn signature_examples() {
        assert_eq!(
            Matrix::identity(2).signature_of_symmetric().unwrap(),
            Signature::new(2, 0, 0)
        );
        assert_eq!(
            Matrix::from_i64(&[&[0, 1], &[1, 0]])
                .signature_of_symmetric()
                .unwrap(),
            Signature::new(1, 1, 0)
        );
        // −(α1⊗α4 + α4⊗α1 + α2⊗α3 + α3⊗α2)
        let g = Matrix::from_i64(&[
            &[0, 0, 0, -1],
            &[0, 0, -1, 0],
            &[0, -1, 0, 0],
            &[-1, 0, 0, 0],
        ]);
        assert_eq!(g.signature_of_symmetric().unwrap(), Signature::new(2, 2, 0));
        assert_eq!(
            Matrix::from_i64(&[&[1, 2], &[3, 4]]).signature_of_symmetric(),
            Err(Error::NotSymmetric)
        );
        assert_eq!(
            Matrix::zeros(3).signature_of_symmetric().unwrap(),
            Signature::new(0, 0, 3)
        );
        let degenerate = Matrix::from_i64(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, -2]]);
        assert_eq!(
            degenerate.signature_of_symmetric().unwrap(),
            Signature::new(1, 1, 1)
        );
    }

    #[test]
    fn kernel_is_echelon() {
        let m = Matrix::from_i64(&[&[1, -1, 0, 0], &[-1, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 1, 1]]);
        let k = m.kernel();
        assert_eq!(
            k,
            vec![
                vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1)],
                vec![q(0, 1), q(0, 1), q(1, 1), q(-1, 1)],
            ]
        );
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn mat(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(small(), n * n).prop_map(move |v| {
            Matrix::from_rows(v.chunks(n).map(<[Rational]>::to_vec).collect()).unwrap()
        })
    }

    fn sym(n: usize) -> impl Strategy<Value = Matrix> {
        mat(n).prop_map(|m| {
            Matrix::from_fn(m.dim(), |i, j| {
                if i <= j {
                    m[(i, j)].clone()
                } else {
                    m[(j, i)].clone()
                }
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn double_inverse(m in mat(4)) {
            if let Ok(inv) = m.invert() {
                prop_assert!((&m * &inv).is_identity());
                prop_assert!((&inv * &m).is_identity());
                prop_assert_eq!(inv.invert().unwrap(), m);
            } else {
                prop_assert!(m.determinant().is_zero());
            }
        }

        #[test]
        fn determinant_is_multiplicative(a in mat(3), b in mat(3)) {
            prop_assert_eq!((&a * &b).determinant(), &a.determinant() * &b.determinant());
            prop_assert_eq!(a.determinant(), cofactor_det(&a));
        }

        #[test]
        fn signature_congruence_invariant(m in sym(4), p in mat(4)) {
            let s = m.signature_of_symmetric().unwrap();
            prop_assert_eq!(s.dim(), 4);
            prop_assert_eq!(s.null, 4 - m.rank());
            if !p.determinant().is_zero() {
                let c = &(&p.transpose() * &m) * &p;
                prop_assert_eq!(c.signature_of_symmetric().unwrap(), s);
            }
            let neg = (-&m).signature_of_symmetric().unwrap();
            prop_assert_eq!(neg, Signature::new(s.negative, s.positive, s.null));
        }
    }
}
