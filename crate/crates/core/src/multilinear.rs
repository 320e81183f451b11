//! Bilinear forms, endomorphisms and the tensors built from them: recursion
//! operators, pullbacks, Nijenhuis tensors and eigenspace splittings.
//!
//! A bilinear form stores `b(e_i, e_j)` at `(i, j)`; an endomorphism stores the
//! image of `e_j` in column `j`.

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, Subspace};
use crate::matrix::{vector, Matrix, Vector};
use crate::rational::Rational;
use crate::report::Witness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    matrix: Matrix,
    symmetry: Symmetry,
}

impl BilinearForm {
    /// Classifies the matrix. The zero matrix is reported as symmetric.
    pub fn from_matrix(matrix: Matrix) -> Self {
        let symmetry = if matrix.is_symmetric() {
            Symmetry::Symmetric
        } else if matrix.is_antisymmetric() {
            Symmetry::Antisymmetric
        } else {
            Symmetry::General
        };
        BilinearForm { matrix, symmetry }
    }

    pub fn symmetric(matrix: Matrix) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(BilinearForm {
            matrix,
            symmetry: Symmetry::Symmetric,
        })
    }

    pub fn antisymmetric(matrix: Matrix) -> Result<Self> {
        if !matrix.is_antisymmetric() {
            return Err(Error::InvalidTensor("2-form must be antisymmetric".into()));
        }
        Ok(BilinearForm {
            matrix,
            symmetry: Symmetry::Antisymmetric,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix.is_symmetric()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.matrix.is_antisymmetric()
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.matrix.bilinear(x, y)
    }

    pub fn is_degenerate(&self) -> bool {
        self.matrix.determinant().is_zero()
    }

    pub fn neg(&self) -> Self {
        Self::from_matrix(-&self.matrix)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_matrix(self.matrix.scale(s))
    }

    pub fn add(&self, other: &BilinearForm) -> Self {
        Self::from_matrix(&self.matrix + &other.matrix)
    }

    /// First pair of basis vectors `(u_a, v_b)` with `b(u_a, v_b) ≠ 0`.
    pub fn first_nonzero_pairing(&self, us: &[Vector], vs: &[Vector]) -> Option<(usize, usize, Rational)> {
        for (a, u) in us.iter().enumerate() {
            for (b, v) in vs.iter().enumerate() {
                let x = self.eval(u, v);
                if !x.is_zero() {
                    return Some((a, b, x));
                }
            }
        }
        None
    }

    /// Restriction to a subspace, in the subspace's echelon basis.
    pub fn restrict(&self, s: &Subspace) -> Matrix {
        let b = s.basis();
        Matrix::from_fn(b.len(), |i, j| self.eval(&b[i], &b[j]))
    }
}

/// `Σ c·α_i∧α_j` over `(i, j, c)` with 0-based indices.
pub fn two_form(n: usize, terms: &[(usize, usize, Rational)]) -> BilinearForm {
    let mut m = Matrix::zeros(n);
    for (i, j, c) in terms {
        m[(*i, *j)] += c;
        m[(*j, *i)] -= c;
    }
    BilinearForm::from_matrix(m)
}

/// `Σ c·(α_i⊗α_j + α_j⊗α_i)/(1 + δ_ij)`: each term sets the `(i,j)` and `(j,i)` entries.
pub fn symmetric_form(n: usize, terms: &[(usize, usize, Rational)]) -> BilinearForm {
    let mut m = Matrix::zeros(n);
    for (i, j, c) in terms {
        m[(*i, *j)] += c;
        if i != j {
            m[(*j, *i)] += c;
        }
    }
    BilinearForm::from_matrix(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    matrix: Matrix,
}

impl Endomorphism {
    pub fn new(matrix: Matrix) -> Self {
        Endomorphism { matrix }
    }

    pub fn identity(n: usize) -> Self {
        Endomorphism {
            matrix: Matrix::identity(n),
        }
    }

    /// Endomorphism sending `e_j` to `images[j]`.
    pub fn from_images(images: &[Vector]) -> Result<Self> {
        Ok(Endomorphism {
            matrix: Matrix::from_columns(images)?,
        })
    }

    /// Endomorphism given by `e_from ↦ Σ c·e_to` over `(from, to, c)`, 0-based.
    pub fn from_action(n: usize, action: &[(usize, usize, Rational)]) -> Self {
        let mut m = Matrix::zeros(n);
        for (from, to, c) in action {
            m[(*to, *from)] += c;
        }
        Endomorphism { matrix: m }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Self {
        Endomorphism {
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn square(&self) -> Self {
        self.compose(self)
    }

    pub fn neg(&self) -> Self {
        Endomorphism {
            matrix: -&self.matrix,
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Endomorphism {
            matrix: self.matrix.scale(s),
        }
    }

    pub fn add(&self, other: &Endomorphism) -> Self {
        Endomorphism {
            matrix: &self.matrix + &other.matrix,
        }
    }

    pub fn sub(&self, other: &Endomorphism) -> Self {
        Endomorphism {
            matrix: &self.matrix - &other.matrix,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn invert(&self) -> Result<Self> {
        Ok(Endomorphism {
            matrix: self.matrix.invert()?,
        })
    }

    /// `T² − Id` (or `T² + Id` when `sign` is negative): zero iff `T² = sign·Id`.
    pub fn square_defect(&self, sign: i64) -> Matrix {
        let target = Matrix::identity(self.dim()).scale(&Rational::from(sign));
        &self.square().matrix - &target
    }

    /// Whether `T` maps every basis vector of `from` into `to`.
    pub fn maps_into(&self, from: &Subspace, to: &Subspace) -> Option<(usize, Vector)> {
        from.basis().iter().enumerate().find_map(|(a, v)| {
            let r = to.residual(&self.apply(v));
            (!vector::is_zero(&r)).then_some((a, r))
        })
    }
}

/// A `(1,2)`-tensor `N^k_{ij}`, antisymmetric in the lower slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneTwoTensor {
    n: usize,
    data: Vec<Rational>,
}

impl OneTwoTensor {
    pub fn zero(n: usize) -> Self {
        OneTwoTensor {
            n,
            data: vec![Rational::zero(); n * n * n],
        }
    }

    /// Builds the tensor from its values on pairs `i < j`.
    pub fn from_pairs(n: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut t = Self::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                for (k, x) in v.into_iter().enumerate() {
                    t.data[(j * n + i) * n + k] = -&x;
                    t.data[(i * n + j) * n + k] = x;
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[(i * self.n + j) * self.n + k]
    }

    /// `N(e_i, e_j)` as a vector.
    pub fn pair(&self, i: usize, j: usize) -> Vector {
        let start = (i * self.n + j) * self.n;
        self.data[start..start + self.n].to_vec()
    }

    /// Bilinear extension `N(x, y)`.
    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let n = self.n;
        let mut out = vector::zeros(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..n {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        out[k] += &c * v;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    /// First nonzero component as `(i, j, k, value)` with `i < j`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize, Rational)> {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        return Some((i, j, k, v.clone()));
                    }
                }
            }
        }
        None
    }

    pub fn witness(&self, note: &str) -> Option<Witness> {
        self.first_nonzero()
            .map(|(i, j, k, v)| Witness::new(note, &[i, j, k], v))
    }
}

/// The unique `A` with `a(A·x, y) = b(x, y)`.
///
/// In matrices `Aᵀ M_a = M_b`, so `A` solves `M_aᵀ A = M_bᵀ`.
pub fn recursion_operator(a: &BilinearForm, b: &BilinearForm) -> Result<Endomorphism> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let inv = a
        .matrix()
        .transpose()
        .invert()
        .map_err(|_| Error::Degenerate("source form of recursion operator".into()))?;
    let op = Endomorphism::new(&inv * &b.matrix().transpose());
    debug_assert_eq!(&op.matrix().transpose() * a.matrix(), *b.matrix());
    Ok(op)
}

/// `(T*b)(x, y) = b(T·x, T·y)`.
pub fn pullback(t: &Endomorphism, b: &BilinearForm) -> BilinearForm {
    let m = &(&t.matrix().transpose() * b.matrix()) * t.matrix();
    BilinearForm::from_matrix(m)
}

/// `N_T(x,y) = [Tx,Ty] + T²[x,y] − T[Tx,y] − T[x,Ty]` on basis pairs.
pub fn nijenhuis(l: &LieAlgebra, t: &Endomorphism) -> OneTwoTensor {
    let n = l.dim();
    let t2 = t.square();
    let images: Vec<Vector> = (0..n).map(|i| t.matrix().column(i)).collect();
    OneTwoTensor::from_pairs(n, |i, j| {
        let x = vector::unit(n, i);
        let y = vector::unit(n, j);
        let tx = &images[i];
        let ty = &images[j];
        let a = l.bracket_unchecked(tx, ty);
        let b = t2.apply(&l.bracket_basis(i, j));
        let c = t.apply(&vector::add(
            &l.bracket_unchecked(tx, &y),
            &l.bracket_unchecked(&x, ty),
        ));
        vector::sub(&vector::add(&a, &b), &c)
    })
}

/// Eigenspace decomposition of an involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionSplit {
    pub plus: Subspace,
    pub minus: Subspace,
    pub pi_plus: Endomorphism,
    pub pi_minus: Endomorphism,
}

pub fn involution_split(t: &Endomorphism) -> Result<InvolutionSplit> {
    let n = t.dim();
    if !t.square().is_identity() {
        return Err(Error::NotInvolution);
    }
    let id = Endomorphism::identity(n);
    if *t == id || *t == id.neg() {
        return Err(Error::Trivial);
    }
    let plus = Subspace::span(n, &t.sub(&id).matrix().kernel())?;
    let minus = Subspace::span(n, &t.add(&id).matrix().kernel())?;
    let half = Rational::new(1, 2);
    Ok(InvolutionSplit {
        plus,
        minus,
        pi_plus: id.add(t).scale(&half),
        pi_minus: id.sub(t).scale(&half),
    })
}

/// `st + ts`.
pub fn anticommutator_defect(s: &Endomorphism, t: &Endomorphism) -> Matrix {
    &(s.compose(t)).matrix + t.compose(s).matrix()
}

/// Projections onto `plus` along `minus` and vice versa.
pub fn complementary_projections(plus: &Subspace, minus: &Subspace) -> Result<(Endomorphism, Endomorphism)> {
    if !plus.is_complement_of(minus) {
        return Err(Error::NotComplementary);
    }
    let n = plus.ambient_dim();
    let cols: Vec<Vector> = plus.basis().iter().chain(minus.basis()).cloned().collect();
    let p = Matrix::from_columns(&cols)?;
    let p_inv = p.invert()?;
    let k = plus.dim();
    let select = |keep_plus: bool| {
        let d = Matrix::from_fn(n, |i, j| {
            if i == j && ((i < k) == keep_plus) {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        Endomorphism::new(&(&p * &d) * &p_inv)
    };
    Ok((select(true), select(false)))
}
