//! Seeded generators for randomized checks: small 4-dimensional Lie algebras
//! in random bases and random almost Künneth structures on them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, StructureConstants, Subspace};
use crate::matrix::{Matrix, Vector};
use crate::multilinear::BilinearForm;
use crate::rational::Rational;
use crate::structures::{build_almost_kunneth, AlmostKunneth};

pub const BASE_ALGEBRAS_4: [&str; 4] = ["abelian", "nil3+R", "aff+aff", "filiform"];

/// `which` (mod 4) selects abelian, nil3⊕R, aff(1)⊕aff(1) or the filiform algebra.
pub fn base_algebra_4(which: usize) -> LieAlgebra {
    let one = Rational::one;
    let res = match which % 4 {
        0 => Ok(LieAlgebra::abelian(4)),
        1 => LieAlgebra::from_brackets(4, &[(0, 1, &[(2, one())])]),
        2 => LieAlgebra::from_brackets(4, &[(0, 1, &[(1, one())]), (2, 3, &[(3, one())])]),
        _ => LieAlgebra::from_brackets(4, &[(0, 1, &[(2, one())]), (0, 2, &[(3, one())])]),
    };
    res.expect("base algebras satisfy Jacobi")
}

/// The same algebra written in the basis `f_j = P e_j` (columns of `P`).
pub fn change_basis(l: &LieAlgebra, p: &Matrix) -> Result<LieAlgebra> {
    let n = l.dim();
    if p.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.dim(),
        });
    }
    let p_inv = p.invert()?;
    let cols: Vec<Vector> = (0..n).map(|j| p.column(j)).collect();
    let mut c = StructureConstants::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            let b = l.bracket_unchecked(&cols[i], &cols[j]);
            c.set_bracket(i, j, &p_inv.mul_vec(&b))?;
        }
    }
    LieAlgebra::new(c)
}

/// Rational with numerator and denominator of absolute value at most `h`.
pub fn small_rational<R: Rng>(rng: &mut R, h: i64) -> Rational {
    Rational::new(rng.gen_range(-h..=h), rng.gen_range(1..=h))
}

pub fn invertible_matrix<R: Rng>(rng: &mut R, n: usize, h: i64) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, |_, _| small_rational(rng, h));
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// A random almost Künneth structure of dimension 4 with data of height at most `h`.
///
/// A random basis `q_1..q_4` is chosen; `F = ⟨q_1,q_2⟩`, `G = ⟨q_3,q_4⟩` and
/// `ω(q_i, q_j)` is block anti-diagonal with a random invertible block, so both
/// subspaces are isotropic. `ω` is usually not closed.
pub fn random_almost_kunneth(seed: u64, h: i64) -> AlmostKunneth {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let which = *[0usize, 1, 2, 3].choose(&mut rng).unwrap();
    let p = invertible_matrix(&mut rng, 4, h);
    let l = change_basis(&base_algebra_4(which), &p).expect("invertible basis change");
    let q = invertible_matrix(&mut rng, 4, h);
    let block = invertible_matrix(&mut rng, 2, h);
    let w = Matrix::from_fn(4, |i, j| match (i < 2, j < 2) {
        (true, false) => block[(i, j - 2)].clone(),
        (false, true) => -&block[(j, i - 2)],
        _ => Rational::zero(),
    });
    let q_inv = q.invert().unwrap();
    let omega = &(&q_inv.transpose() * &w) * &q_inv;
    let cols: Vec<Vector> = (0..4).map(|j| q.column(j)).collect();
    let f = Subspace::span(4, &cols[..2]).unwrap();
    let g = Subspace::span(4, &cols[2..]).unwrap();
    let omega = BilinearForm::antisymmetric(omega).unwrap();
    build_almost_kunneth(&l, &omega, &f, &g).expect("construction is isotropic and complementary")
}

/// Random vector with entries of height at most `h`.
pub fn random_vector<R: Rng>(rng: &mut R, n: usize, h: i64) -> Vector {
    (0..n).map(|_| small_rational(rng, h)).collect()
}
