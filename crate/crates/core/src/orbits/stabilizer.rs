use super::OrbitError;
use crate::matrix::Matrix;
use crate::qforms::{diagonalize_gram, QForm, QFormError};
use crate::scalars::Field;
use crate::wedge::{act_lie, TriVector};

/// Basis of `sp6`: `[[A, B], [C, -A^t]]` with `B`, `C` symmetric (9 + 6 + 6 elements).
pub fn sp6_basis<F: Field>(ctx: &F::Ctx) -> Vec<Matrix<F>> {
    let one = F::one_in(ctx);
    let mut out = Vec::with_capacity(21);
    for i in 0..3 {
        for j in 0..3 {
            let mut m = Matrix::zeros(ctx, 6, 6);
            m[(i, j)] = one.clone();
            m[(j + 3, i + 3)] = -one.clone();
            out.push(m);
        }
    }
    for off in [(0, 3), (3, 0)] {
        for i in 0..3 {
            for j in i..3 {
                let mut m = Matrix::zeros(ctx, 6, 6);
                m[(i + off.0, j + off.1)] = one.clone();
                m[(j + off.0, i + off.1)] = one.clone();
                out.push(m);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct LieStabilizer<F: Field> {
    pub basis: Vec<Matrix<F>>,
    /// `[b_i, b_j] = Σ_k structure[i][j][k] b_k`.
    pub structure: Vec<Vec<Vec<F>>>,
    pub killing: Matrix<F>,
}

impl<F: Field> LieStabilizer<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Brackets and Killing form of the span of `basis`, which must be a Lie algebra.
    pub fn from_basis(ctx: &F::Ctx, basis: Vec<Matrix<F>>) -> Self {
        let n = basis.len();
        let span = Matrix::from_fn(ctx, 36, n, |r, c| basis[c].entries()[r].clone());
        let structure: Vec<Vec<Vec<F>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let br = basis[i].mul(&basis[j]).sub(&basis[j].mul(&basis[i]));
                        coords_in_span(&span, &br).expect("stabilizer algebra is closed under brackets")
                    })
                    .collect()
            })
            .collect();
        // κ(a, b) = Σ_{c,d} C^d_{ac} C^c_{bd}.
        let killing = Matrix::from_fn(ctx, n, n, |a, b| {
            let mut s = F::zero_in(ctx);
            for c in 0..n {
                for d in 0..n {
                    s = s + &(structure[a][c][d].clone() * &structure[b][d][c]);
                }
            }
            s
        });
        LieStabilizer { basis, structure, killing }
    }
}

fn coords_in_span<F: Field>(span: &Matrix<F>, m: &Matrix<F>) -> Option<Vec<F>> {
    span.solve(m.entries())
}

/// The Lie algebra `{ξ ∈ sp6 : ξ·T = 0}` with brackets and Killing form.
pub fn lie_stabilizer<F: Field>(t: &TriVector<F>) -> LieStabilizer<F> {
    let ctx = t.ctx();
    let sp = sp6_basis::<F>(ctx);
    let cols: Vec<Vec<F>> = sp.iter().map(|xi| act_lie(xi, t).coords().to_vec()).collect();
    let eqs = Matrix::from_fn(ctx, 20, sp.len(), |r, c| cols[c][r].clone());
    let basis: Vec<Matrix<F>> = eqs
        .nullspace()
        .into_iter()
        .map(|c| {
            sp.iter().zip(&c).fold(
                Matrix::zeros(ctx, 6, 6),
                |acc, (xi, a)| {
                    if a.eq_zero() {
                        acc
                    } else {
                        acc.add(&xi.scale(a))
                    }
                },
            )
        })
        .collect();
    LieStabilizer::from_basis(ctx, basis)
}

/// `<1> ⊥ (-κ/8)` for a 3-dimensional stabilizer, the norm form of the quaternion algebra `Q`
/// with stabilizer `SL1(Q)`.
pub fn quaternion_norm_from_stabilizer<F: Field>(l: &LieStabilizer<F>) -> Result<QForm<F>, OrbitError> {
    if l.dim() != 3 {
        return Err(OrbitError::BadStabilizerDim(l.dim()));
    }
    let ctx = l.killing.ctx();
    let scale = -F::from_int(ctx, 8).inv().expect("char != 2");
    let d = diagonalize_gram(&l.killing.scale(&scale)).map_err(|e| match e {
        QFormError::Degenerate { .. } => OrbitError::DegenerateKilling,
        other => OrbitError::QForm(other),
    })?;
    Ok(QForm::from_ints(ctx, &[1])?.perp(&d.form))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::{normal_form_point, split_form, NormalFormX};
    use crate::qforms::{hermitian_trace_form, qform_equivalent, HermitianForm};
    use crate::scalars::Rational;
    use crate::wedge::{join_components, m_j};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64) -> Rational {
        Rational::from_int(&(), n)
    }

    fn rv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&a| r(a)).collect()
    }

    fn q(d: &[i64]) -> QForm<Rational> {
        QForm::from_ints(&(), d).unwrap()
    }

    #[test]
    fn sp6_basis_is_symplectic() {
        let b = sp6_basis::<Rational>(&());
        assert_eq!(b.len(), 21);
        let j = m_j::<Rational>(&());
        for xi in &b {
            assert!(xi.transpose().mul(&j).add(&j.mul(xi)).is_zero());
        }
        let rows: Vec<Vec<Rational>> = b.iter().map(|m| m.entries().to_vec()).collect();
        assert_eq!(Matrix::from_rows(&(), rows).rank(), 21);
    }

    fn check_stabilizer(t: &TriVector<Rational>, l: &LieStabilizer<Rational>) {
        let j = m_j::<Rational>(&());
        for xi in &l.basis {
            assert!(xi.transpose().mul(&j).add(&j.mul(xi)).is_zero());
            assert!(act_lie(xi, t).is_zero());
        }
        assert!(l.killing.is_symmetric());
    }

    #[test]
    fn split_form_stabilizer_is_sl3() {
        let x = split_form(&r(2));
        let l = lie_stabilizer(&x);
        assert_eq!(l.dim(), 8);
        check_stabilizer(&x, &l);
        for xi in &l.basis {
            let a = xi.submatrix(0, 0, 3, 3);
            assert!(xi.submatrix(0, 3, 3, 3).is_zero() && xi.submatrix(3, 0, 3, 3).is_zero());
            assert_eq!(xi.submatrix(3, 3, 3, 3), a.transpose().neg());
            assert!(a.trace().eq_zero());
        }
    }

    #[test]
    fn split_point_gives_split_quaternion() {
        let t = join_components(&split_form(&r(2)), &rv(&[1, 0, 0, 1, 0, 0]));
        let l = lie_stabilizer(&t);
        assert_eq!(l.dim(), 3);
        check_stabilizer(&t, &l);
        let n = quaternion_norm_from_stabilizer(&l).unwrap();
        assert!(qform_equivalent(&n, &q(&[1, -1, -1, 1])).unwrap());
        // The sl2 Cartan element diag(0, 1, -1, 0, -1, 1) has κ = 8.
        let mut h = Matrix::<Rational>::zeros(&(), 6, 6);
        for (k, s) in [(1, 1), (2, -1), (4, -1), (5, 1)] {
            h[(k, k)] = r(s);
        }
        let span = Matrix::from_fn(&(), 36, 3, |row, c| l.basis[c].entries()[row].clone());
        let c = span.solve(h.entries()).unwrap();
        let kappa = l.killing.mul_vec(&c).iter().zip(&c).fold(r(0), |acc, (a, b)| acc + a * b);
        assert_eq!(kappa, r(8));
    }

    #[test]
    fn hamilton_canary() {
        let nf = NormalFormX::<Rational>::from_ints(&(), [0, 1, 1, 1]).unwrap();
        let t = normal_form_point(&nf, &rv(&[2, 0, 0, 0, 0, 0]));
        let l = lie_stabilizer(&t);
        assert_eq!(l.dim(), 3);
        let n = quaternion_norm_from_stabilizer(&l).unwrap();
        assert!(qform_equivalent(&n, &q(&[1, 1, 1, 1])).unwrap());
        assert_eq!(lie_stabilizer(&nf.to_trivector()).dim(), 8);
    }

    #[test]
    fn patterns_match_hermitian_trace_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let mut done = 0;
        while done < 25 {
            let y: [i64; 4] = std::array::from_fn(|k| {
                let mut a = 0;
                while a == 0 && k > 0 {
                    a = rng.gen_range(-5..=5);
                }
                if k == 0 {
                    rng.gen_range(-4..=4)
                } else {
                    a
                }
            });
            let nf = NormalFormX::<Rational>::from_ints(&(), y).unwrap();
            let i = nf.f1();
            if i.eq_zero() || (-i.clone()).is_square().unwrap() {
                continue;
            }
            for m in 1..=3 {
                let v = nf.pattern(m).unwrap();
                let t = normal_form_point(&nf, &v);
                if crate::invariants::f2(&t).eq_zero() {
                    continue;
                }
                let l = lie_stabilizer(&t);
                assert_eq!(l.dim(), 3);
                check_stabilizer(&t, &l);
                let n = quaternion_norm_from_stabilizer(&l).unwrap();
                let h = HermitianForm::new(i.clone(), vec![r(1), nf.ys()[m - 1].clone()]).unwrap();
                assert!(qform_equivalent(&n, &hermitian_trace_form(&h)).unwrap(), "y = {y:?}, m = {m}");
            }
            done += 1;
        }
    }

    #[test]
    fn extraction_ignores_basis_change() {
        let nf = NormalFormX::<Rational>::from_ints(&(), [1, 2, -1, 3]).unwrap();
        let t = normal_form_point(&nf, &nf.pattern(1).unwrap());
        let l = lie_stabilizer(&t);
        let n0 = quaternion_norm_from_stabilizer(&l).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let p = loop {
                let p = Matrix::from_fn(&(), 3, 3, |_, _| r(rng.gen_range(-3..=3)));
                if !p.det().eq_zero() {
                    break p;
                }
            };
            let basis: Vec<Matrix<Rational>> = (0..3)
                .map(|i| (0..3).fold(Matrix::zeros(&(), 6, 6), |acc, j| acc.add(&l.basis[j].scale(&p[(i, j)]))))
                .collect();
            let l2 = LieStabilizer::from_basis(&(), basis);
            assert_eq!(l2.killing, p.mul(&l.killing).mul(&p.transpose()));
            assert!(qform_equivalent(&quaternion_norm_from_stabilizer(&l2).unwrap(), &n0).unwrap());
        }
    }
}
