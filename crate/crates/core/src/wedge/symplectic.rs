use std::fmt;

use rand::Rng;

use super::WedgeError;
use crate::matrix::Matrix;
use crate::scalars::Field;

/// `M_J = [[0, I3], [-I3, 0]]`.
pub fn m_j<F: Field>(ctx: &F::Ctx) -> Matrix<F> {
    Matrix::from_fn(ctx, 6, 6, |r, c| {
        if c == r + 3 {
            F::one_in(ctx)
        } else if r == c + 3 {
            -F::one_in(ctx)
        } else {
            F::zero_in(ctx)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupClass {
    Sp6,
    GSp6,
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupClass::Sp6 => "Sp6",
            GroupClass::GSp6 => "GSp6",
        })
    }
}

/// A matrix `g` with `g M_J g^t = λ M_J`.
#[derive(Debug, Clone, PartialEq)]
pub struct SympElement<F: Field> {
    pub g: Matrix<F>,
    pub lambda: F,
}

impl<F: Field> SympElement<F> {
    pub fn class(&self) -> GroupClass {
        if self.lambda.eq_one() {
            GroupClass::Sp6
        } else {
            GroupClass::GSp6
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        SympElement { g: self.g.mul(&o.g), lambda: self.lambda.clone() * &o.lambda }
    }
}

pub fn check_symplectic<F: Field>(g: &Matrix<F>) -> Result<SympElement<F>, WedgeError> {
    if g.rows() != 6 || g.cols() != 6 {
        return Err(WedgeError::BadShape(g.rows(), g.cols()));
    }
    let j = m_j::<F>(g.ctx());
    let p = g.mul(&j).mul(&g.transpose());
    let lambda = p[(0, 3)].clone();
    if lambda.eq_zero() || p != j.scale(&lambda) {
        return Err(WedgeError::NotSimilitude);
    }
    Ok(SympElement { g: g.clone(), lambda })
}

/// `h_a = diag(a I3, I3)`, of similitude factor `a`.
pub fn h_a<F: Field>(a: &F) -> Matrix<F> {
    let ctx = a.ctx();
    let one = F::one_in(&ctx);
    Matrix::diagonal(&ctx, &[a.clone(), a.clone(), a.clone(), one.clone(), one.clone(), one])
}

/// `diag(A, A^{-t})` for invertible `A`.
pub fn sl3_block<F: Field>(a: &Matrix<F>) -> Option<Matrix<F>> {
    let ait = a.inverse()?.transpose();
    Some(Matrix::block_diag(a, &ait))
}

/// The generators used for random words: elementary `SL3` blocks, `SL2` unipotents in the
/// planes `(e_m, e_{m+3})`, and transvections `I + t u u^t M_J`.
pub fn symplectic_generators<F: Field, R: Rng>(ctx: &F::Ctx, rng: &mut R) -> Matrix<F> {
    let mut t = 0;
    while t == 0 {
        t = rng.gen_range(-3i64..=3);
    }
    let tf = F::from_int(ctx, t);
    match rng.gen_range(0..3) {
        0 => {
            let i = rng.gen_range(0..3);
            let mut j = rng.gen_range(0..3);
            while j == i {
                j = rng.gen_range(0..3);
            }
            let mut e = Matrix::identity(ctx, 3);
            e[(i, j)] = tf;
            sl3_block(&e).expect("unipotent")
        }
        1 => {
            let m = rng.gen_range(0..3);
            let mut g = Matrix::identity(ctx, 6);
            if rng.gen_bool(0.5) {
                g[(m, m + 3)] = tf;
            } else {
                g[(m + 3, m)] = tf;
            }
            g
        }
        _ => {
            let u: Vec<F> = (0..6).map(|_| F::from_int(ctx, rng.gen_range(-1..=1))).collect();
            let uu = Matrix::from_fn(ctx, 6, 6, |r, c| u[r].clone() * &u[c]);
            Matrix::identity(ctx, 6).add(&uu.mul(&m_j(ctx)).scale(&tf))
        }
    }
}

/// A word of `len` random generators; an element of `Sp6`.
pub fn random_sp6<F: Field, R: Rng>(ctx: &F::Ctx, rng: &mut R, len: usize) -> Matrix<F> {
    let mut g = Matrix::identity(ctx, 6);
    for _ in 0..len {
        g = g.mul(&symplectic_generators(ctx, rng));
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Fp, Modulus, Rational};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64) -> Rational {
        Rational::from_int(&(), n)
    }

    #[test]
    fn m_j_properties() {
        let j = m_j::<Rational>(&());
        assert_eq!(j.mul(&j), Matrix::identity(&(), 6).neg());
        assert_eq!(j.transpose(), j.neg());
        assert_eq!(j.det(), r(1));
    }

    #[test]
    fn similitude_factors() {
        let id = check_symplectic(&Matrix::<Rational>::identity(&(), 6)).unwrap();
        assert_eq!(id.lambda, r(1));
        assert_eq!(id.class(), GroupClass::Sp6);
        let h = check_symplectic(&h_a(&r(5))).unwrap();
        assert_eq!(h.lambda, r(5));
        assert_eq!(h.class(), GroupClass::GSp6);
        let a = Matrix::<Rational>::from_ints(&(), &[&[1, 2, 0], &[0, 1, 0], &[3, 1, 1]]);
        assert_eq!(check_symplectic(&sl3_block(&a).unwrap()).unwrap().lambda, r(1));
        let bad = Matrix::diagonal(&(), &[r(1), r(2), r(1), r(1), r(1), r(1)]);
        assert_eq!(check_symplectic(&bad), Err(WedgeError::NotSimilitude));
        assert!(matches!(check_symplectic(&Matrix::<Rational>::identity(&(), 3)), Err(WedgeError::BadShape(3, 3))));
    }

    #[test]
    fn random_words_are_symplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let g = random_sp6::<Rational, _>(&(), &mut rng, 12);
            assert_eq!(check_symplectic(&g).unwrap().lambda, r(1));
        }
        let p = Modulus::new(5).unwrap();
        for _ in 0..100 {
            let g = random_sp6::<Fp, _>(&p, &mut rng, 12);
            assert!(check_symplectic(&g).unwrap().lambda.eq_one());
        }
    }
}
