//! The matrix `φ`, the quartic `f` and the relative invariants `f1`, `f2`.

use std::sync::OnceLock;

use thiserror::Error;

use crate::matrix::Matrix;
use crate::scalars::Field;
use crate::wedge::{m_j, split_components, TriVector, TRIPLES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("internal error: phi^2 is not a scalar matrix")]
    NotScalar,
}

/// `φ_ij = Σ c x_k x_l` over the stored `(k, l, c)`.
pub type PhiTable = [[Vec<(u8, u8, i8)>; 6]; 6];

fn perm_sign(v: &[usize; 6]) -> i8 {
    let mut s = 1i8;
    for a in 0..6 {
        for b in a + 1..6 {
            if v[a] > v[b] {
                s = -s;
            }
        }
    }
    s
}

/// Sparse expansion of `T ∧ ∂_i T ∧ e_j = φ_ij τ`.
pub fn phi_table() -> &'static PhiTable {
    static TABLE: OnceLock<PhiTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table: PhiTable = Default::default();
        for i in 0..6 {
            for j in 0..6 {
                let mut acc: Vec<(u8, u8, i8)> = Vec::new();
                for (k2, t2) in TRIPLES.iter().enumerate() {
                    // ∂_i e_a e_b e_c: drop slot `s` holding `i`, sign (-1)^s.
                    let Some(s) = t2.iter().position(|&a| a == i) else {
                        continue;
                    };
                    let pair: Vec<usize> = t2.iter().copied().filter(|&a| a != i).collect();
                    let dsign: i8 = if s % 2 == 0 { 1 } else { -1 };
                    for (k1, t1) in TRIPLES.iter().enumerate() {
                        let word = [t1[0], t1[1], t1[2], pair[0], pair[1], j];
                        let mut seen = [false; 6];
                        if word.iter().any(|&a| std::mem::replace(&mut seen[a], true)) {
                            continue;
                        }
                        let c = dsign * perm_sign(&word);
                        match acc.iter_mut().find(|(a, b, _)| (*a as usize, *b as usize) == (k1, k2)) {
                            Some(e) => e.2 += c,
                            None => acc.push((k1 as u8, k2 as u8, c)),
                        }
                    }
                }
                acc.retain(|e| e.2 != 0);
                table[i][j] = acc;
            }
        }
        table
    })
}

pub fn phi_matrix<F: Field>(t: &TriVector<F>) -> Matrix<F> {
    let ctx = t.ctx();
    let x = t.coords();
    let table = phi_table();
    Matrix::from_fn(ctx, 6, 6, |i, j| {
        let mut s = F::zero_in(ctx);
        for &(k, l, c) in &table[i][j] {
            let (a, b) = (&x[k as usize], &x[l as usize]);
            if a.eq_zero() || b.eq_zero() {
                continue;
            }
            s = s + &(a.clone() * b * &F::from_int(ctx, c as i64));
        }
        s
    })
}

/// `f` with `φ(T)² = f(T) I6`.
pub fn quartic_f<F: Field>(t: &TriVector<F>) -> Result<F, InvariantError> {
    phi_matrix(t).mul(&phi_matrix(t)).scalar_value().ok_or(InvariantError::NotScalar)
}

/// `f1 = -f/4` on the X-part.
pub fn f1<F: Field>(t: &TriVector<F>) -> Result<F, InvariantError> {
    let (x, _) = split_components(t);
    let ctx = t.ctx();
    let quarter = F::half(ctx).square();
    Ok(-(quartic_f(&x)? * &quarter))
}

/// `½(M_J φ(x) + (M_J φ(x))^t)` and whether `M_J φ(x)` was already symmetric.
pub fn f2_gram<F: Field>(x: &TriVector<F>) -> (Matrix<F>, bool) {
    let m = m_j::<F>(x.ctx()).mul(&phi_matrix(x));
    let symmetric = m.is_symmetric();
    if symmetric {
        (m, true)
    } else {
        (m.add(&m.transpose()).scale(&F::half(x.ctx())), false)
    }
}

/// `f2 = -½ v^t M_J φ(x) v`.
pub fn f2<F: Field>(t: &TriVector<F>) -> F {
    let (x, v) = split_components(t);
    f2_of(&x, &v)
}

pub fn f2_of<F: Field>(x: &TriVector<F>, v: &[F]) -> F {
    let ctx = x.ctx();
    let m = m_j::<F>(ctx).mul(&phi_matrix(x));
    let mv = m.mul_vec(v);
    let q = v.iter().zip(&mv).fold(F::zero_in(ctx), |acc, (a, b)| acc + &(a.clone() * b));
    -(q * &F::half(ctx))
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport<F: Field> {
    pub f: F,
    pub f1: F,
    pub f2: F,
    pub semistable: bool,
}

pub fn f1_f2_semistable<F: Field>(t: &TriVector<F>) -> Result<InvariantReport<F>, InvariantError> {
    let f = quartic_f(t)?;
    let f1 = f1(t)?;
    let f2 = f2(t);
    let semistable = !f1.eq_zero() && !f2.eq_zero();
    Ok(InvariantReport { f, f1, f2, semistable })
}
