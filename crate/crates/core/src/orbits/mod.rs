//! Normal forms, the reduction of `v` over the split form, stabilizers and explicit witnesses.

mod stabilizer;
mod witness;

use thiserror::Error;

pub use stabilizer::{lie_stabilizer, quaternion_norm_from_stabilizer, sp6_basis, LieStabilizer};
pub use witness::{paper_witness, Witness, WitnessReport};

use crate::invariants::{f1, InvariantError};
use crate::matrix::Matrix;
use crate::qforms::QFormError;
use crate::scalars::Field;
use crate::wedge::{act_decomposed, check_symplectic, join_components, sl3_block, SympElement, TriVector, WedgeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("y1, y2, y3 must be nonzero")]
    ZeroY,
    #[error("y0 must be nonzero for the split form")]
    ZeroY0,
    #[error("not semistable over this split form: q(v) = 0")]
    NotSemistable,
    #[error("pattern index must be 1, 2 or 3, got {0}")]
    BadPattern(usize),
    #[error("stabilizer has dimension {0}, expected 3")]
    BadStabilizerDim(usize),
    #[error("degenerate Killing form")]
    DegenerateKilling,
    #[error("required square root of {0} is not in the field")]
    MissingRoot(String),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    QForm(#[from] QFormError),
    #[error(transparent)]
    Wedge(#[from] WedgeError),
}

/// `x = -e123 - y0 e456 + y1 e156 + y2 e426 + y3 e453`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormX<F: Field> {
    pub y0: F,
    pub y1: F,
    pub y2: F,
    pub y3: F,
}

impl<F: Field> NormalFormX<F> {
    pub fn new(y0: F, y1: F, y2: F, y3: F) -> Result<Self, OrbitError> {
        if y1.eq_zero() || y2.eq_zero() || y3.eq_zero() {
            return Err(OrbitError::ZeroY);
        }
        let nf = NormalFormX { y0, y1, y2, y3 };
        assert_eq!(f1(&nf.to_trivector())?, nf.f1(), "f1 of the normal form");
        Ok(nf)
    }

    pub fn from_ints(ctx: &F::Ctx, y: [i64; 4]) -> Result<Self, OrbitError> {
        let [a, b, c, d] = y.map(|n| F::from_int(ctx, n));
        Self::new(a, b, c, d)
    }

    pub fn ctx(&self) -> F::Ctx {
        self.y1.ctx()
    }

    pub fn ys(&self) -> [&F; 3] {
        [&self.y1, &self.y2, &self.y3]
    }

    /// `y1 y2 y3 - y0²/4`.
    pub fn f1(&self) -> F {
        let ctx = self.ctx();
        self.y1.clone() * &self.y2 * &self.y3 - self.y0.square() * &F::half(&ctx).square()
    }

    pub fn to_trivector(&self) -> TriVector<F> {
        let ctx = self.ctx();
        let one = F::one_in(&ctx);
        let mut t = TriVector::zero(&ctx);
        t.add_term(&-one, 0, 1, 2);
        t.add_term(&-self.y0.clone(), 3, 4, 5);
        t.add_term(&self.y1, 0, 4, 5);
        t.add_term(&self.y2, 3, 1, 5);
        t.add_term(&self.y3, 3, 4, 2);
        t
    }

    /// `v` with `(2, -y0/y_m)` in slots `(m, m+3)`.
    pub fn pattern(&self, m: usize) -> Result<Vec<F>, OrbitError> {
        if !(1..=3).contains(&m) {
            return Err(OrbitError::BadPattern(m));
        }
        let ctx = self.ctx();
        let mut v = vec![F::zero_in(&ctx); 6];
        v[m - 1] = F::from_int(&ctx, 2);
        v[m + 2] = -self.y0.div(self.ys()[m - 1]);
        Ok(v)
    }
}

/// `x + ι(v)` for a normal form `x`.
pub fn normal_form_point<F: Field>(nf: &NormalFormX<F>, v: &[F]) -> TriVector<F> {
    join_components(&nf.to_trivector(), v)
}

/// `-e123 - y0 e456`.
pub fn split_form<F: Field>(y0: &F) -> TriVector<F> {
    let ctx = y0.ctx();
    let mut t = TriVector::zero(&ctx);
    t.add_term(&-F::one_in(&ctx), 0, 1, 2);
    t.add_term(&-y0.clone(), 3, 4, 5);
    t
}

/// `v1 v4 + v2 v5 + v3 v6`.
pub fn q_of<F: Field>(v: &[F]) -> F {
    (0..3).fold(v[0].zero_like(), |acc, m| acc + &(v[m].clone() * &v[m + 3]))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Canonicalization<F: Field> {
    pub g: SympElement<F>,
    pub canonical: TriVector<F>,
    pub v: Vec<F>,
    pub swapped: Option<usize>,
}

/// Moves `(x_split, v)` to `(x_split, (q(v), 0, 0, 1, 0, 0))` inside the `SL3` stabilizer of `x_split`.
pub fn canonicalize_v<F: Field>(y0: &F, v: &[F]) -> Result<Canonicalization<F>, OrbitError> {
    if y0.eq_zero() {
        return Err(OrbitError::ZeroY0);
    }
    if v.len() != 6 {
        return Err(OrbitError::Precondition(format!("v must have 6 entries, got {}", v.len())));
    }
    let ctx = y0.ctx();
    let q = q_of(v);
    if q.eq_zero() {
        return Err(OrbitError::NotSemistable);
    }
    let int = |rows: &[&[i64]]| Matrix::<F>::from_ints(&ctx, rows);
    let mut g = Matrix::identity(&ctx, 6);
    let mut w = v.to_vec();
    let mut swapped = None;
    if (w[0].clone() * &w[3]).eq_zero() {
        let m = (1..3).find(|&m| !(w[m].clone() * &w[m + 3]).eq_zero()).expect("q(v) != 0");
        let a1 = if m == 1 {
            int(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]])
        } else {
            int(&[&[0, 0, -1], &[0, 1, 0], &[1, 0, 0]])
        };
        let gp = sl3_block(&a1).expect("invertible");
        w = gp.mul_vec(&w);
        g = gp.mul(&g);
        swapped = Some(m + 1);
    }
    let zero = F::zero_in(&ctx);
    let one = F::one_in(&ctx);
    let v1i = w[0].inv().expect("v1 != 0");
    let a = Matrix::from_rows(
        &ctx,
        vec![
            vec![v1i.clone(), zero.clone(), zero.clone()],
            vec![-w[1].clone(), w[0].clone(), zero.clone()],
            vec![-(w[2].clone() * &v1i), zero.clone(), one.clone()],
        ],
    );
    let g1 = sl3_block(&a).expect("det 1");
    w = g1.mul_vec(&w);
    let qi = w[3].inv().expect("q != 0");
    let b = Matrix::from_rows(
        &ctx,
        vec![
            vec![qi.clone(), zero.clone(), zero.clone()],
            vec![-w[4].clone(), w[3].clone(), zero.clone()],
            vec![-(w[5].clone() * &qi), zero.clone(), one],
        ],
    );
    let bit = b.inverse().expect("det 1").transpose();
    let g2 = Matrix::block_diag(&bit, &b);
    w = g2.mul_vec(&w);
    let g = g2.mul(&g1).mul(&g);
    let g = check_symplectic(&g)?;
    let canonical = join_components(&split_form(y0), &w);
    debug_assert_eq!(act_decomposed(&g.g, &join_components(&split_form(y0), v)), canonical);
    Ok(Canonicalization { g, canonical, v: w, swapped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::f1_f2_semistable;
    use crate::scalars::{Fp, Modulus, Rational};
    use crate::wedge::act_wedge3;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64) -> Rational {
        Rational::from_int(&(), n)
    }

    fn rv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&a| r(a)).collect()
    }

    #[test]
    fn normal_form_examples() {
        let nf = NormalFormX::<Rational>::from_ints(&(), [0, 1, 1, 1]).unwrap();
        assert_eq!(nf.f1(), r(1));
        let t = normal_form_point(&nf, &rv(&[0; 6]));
        assert_eq!(f1(&t).unwrap(), r(1));
        let nf = NormalFormX::<Rational>::from_ints(&(), [2, 1, 1, 1]).unwrap();
        assert_eq!(nf.f1(), r(0));
        assert!(!f1_f2_semistable(&normal_form_point(&nf, &nf.pattern(1).unwrap())).unwrap().semistable);
        assert_eq!(NormalFormX::<Rational>::from_ints(&(), [2, 0, 1, 1]), Err(OrbitError::ZeroY));
        assert_eq!(nf.pattern(4), Err(OrbitError::BadPattern(4)));
    }

    #[test]
    fn canonicalize_examples() {
        let y0 = r(2);
        let c = canonicalize_v(&y0, &rv(&[1, 0, 0, 1, 0, 0])).unwrap();
        assert_eq!(c.g.g, Matrix::identity(&(), 6));
        assert_eq!(c.v, rv(&[1, 0, 0, 1, 0, 0]));

        let c = canonicalize_v(&y0, &rv(&[0, 1, 0, 0, 1, 0])).unwrap();
        assert_eq!(c.swapped, Some(2));
        assert_eq!(c.v, rv(&[1, 0, 0, 1, 0, 0]));

        let v = rv(&[1, 2, 0, 1, 1, 0]);
        let c = canonicalize_v(&y0, &v).unwrap();
        assert_eq!(c.swapped, None);
        assert_eq!(c.v, rv(&[3, 0, 0, 1, 0, 0]));
        assert_eq!(act_wedge3(&c.g.g, &normal_split(&y0, &v)), c.canonical);

        assert_eq!(canonicalize_v(&y0, &rv(&[1, 0, 0, 0, 1, 0])), Err(OrbitError::NotSemistable));
        assert_eq!(canonicalize_v(&r(0), &rv(&[1, 0, 0, 1, 0, 0])), Err(OrbitError::ZeroY0));
    }

    fn normal_split<F: Field>(y0: &F, v: &[F]) -> TriVector<F> {
        join_components(&split_form(y0), v)
    }

    fn check_random<F: Field>(ctx: &F::Ctx, rng: &mut ChaCha8Rng, n: usize) {
        let mut done = 0;
        while done < n {
            let y0 = F::from_int(ctx, rng.gen_range(-4..=4));
            let v: Vec<F> = (0..6).map(|_| F::from_int(ctx, rng.gen_range(-3..=3))).collect();
            if y0.eq_zero() || q_of(&v).eq_zero() {
                continue;
            }
            let c = canonicalize_v(&y0, &v).unwrap();
            let x = split_form(&y0);
            assert_eq!(act_wedge3(&c.g.g, &x), x);
            assert_eq!(act_wedge3(&c.g.g, &normal_split(&y0, &v)), c.canonical);
            let mut expect = vec![F::zero_in(ctx); 6];
            expect[0] = q_of(&v);
            expect[3] = F::one_in(ctx);
            assert_eq!(c.v, expect);
            assert!(c.g.lambda.eq_one());
            done += 1;
        }
    }

    #[test]
    fn canonicalize_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        check_random::<Rational>(&(), &mut rng, 500);
        check_random::<Fp>(&Modulus::new(5).unwrap(), &mut rng, 500);
    }
}
