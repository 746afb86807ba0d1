//! Diagonal quadratic forms: congruence diagonalization, Hasse-Minkowski
//! invariants over Q, equivalence over Q and F_p, Pfister forms and hermitian
//! trace forms.

mod hermitian;
mod hilbert;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

pub use hermitian::{
    has_trivial_discriminant, hermitian_disc, hermitian_isometric, hermitian_trace_form, HermitianForm,
};
pub use hilbert::{hilbert_symbol, hilbert_symbol_int, Place};

use crate::matrix::Matrix;
use crate::scalars::{factor_u64, Field, FieldCtx, ScalarError, DEFAULT_FACTOR_BITS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QFormError {
    #[error("degenerate form: radical has dimension {radical_dim}")]
    Degenerate { radical_dim: usize },
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("zero entry in a non-degenerate form")]
    ZeroEntry,
    #[error("forms live over different fields")]
    MixedContexts,
    #[error("`{0}` is neither a prime nor inf")]
    BadPlace(String),
    #[error("not supported over {0}")]
    Unsupported(String),
    #[error("not a Pfister form: {0}")]
    NotPfister(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A non-degenerate diagonal quadratic form `<a_1, ..., a_n>`.
#[derive(Clone, PartialEq)]
pub struct QForm<F: Field> {
    ctx: F::Ctx,
    diag: Vec<F>,
}

impl<F: Field> fmt::Debug for QForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for QForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diag.iter().map(|x| x.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

impl<F: Field> QForm<F> {
    pub fn new(ctx: &F::Ctx, diag: Vec<F>) -> Result<Self, QFormError> {
        if diag.iter().any(|x| x.eq_zero()) {
            return Err(QFormError::ZeroEntry);
        }
        Ok(QForm { ctx: ctx.clone(), diag })
    }

    pub fn from_ints(ctx: &F::Ctx, diag: &[i64]) -> Result<Self, QFormError> {
        Self::new(ctx, diag.iter().map(|&x| F::from_int(ctx, x)).collect())
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[F] {
        &self.diag
    }

    pub fn gram(&self) -> Matrix<F> {
        Matrix::diagonal(&self.ctx, &self.diag)
    }

    pub fn det(&self) -> F {
        self.diag.iter().fold(F::one_in(&self.ctx), |acc, x| acc * x)
    }

    /// Orthogonal sum.
    pub fn perp(&self, other: &Self) -> Self {
        let mut diag = self.diag.clone();
        diag.extend(other.diag.iter().cloned());
        QForm { ctx: self.ctx.clone(), diag }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let diag = self.diag.iter().flat_map(|a| other.diag.iter().map(move |b| a.clone() * b)).collect();
        QForm { ctx: self.ctx.clone(), diag }
    }

    /// `<c> ⊗ q`; `c` must be nonzero.
    pub fn scale(&self, c: &F) -> Result<Self, QFormError> {
        Self::new(&self.ctx, self.diag.iter().map(|a| a.clone() * c).collect())
    }

    /// Value `sum a_i x_i^2`.
    pub fn eval(&self, x: &[F]) -> F {
        assert_eq!(x.len(), self.dim());
        self.diag.iter().zip(x).fold(F::zero_in(&self.ctx), |acc, (a, v)| acc + &(a.clone() * v * v))
    }

    /// The hyperbolic form `n <1, -1>`.
    pub fn hyperbolic(ctx: &F::Ctx, planes: usize) -> Self {
        let diag = (0..planes).flat_map(|_| [F::one_in(ctx), -F::one_in(ctx)]).collect();
        QForm { ctx: ctx.clone(), diag }
    }
}

/// A diagonalization with its congruence certificate: `Pᵗ G P = diag(form)`.
#[derive(Debug, Clone)]
pub struct Diagonalization<F: Field> {
    pub form: QForm<F>,
    pub certificate: Matrix<F>,
}

/// Rank-revealing congruence diagonalization of a symmetric matrix.
///
/// Returns the full diagonal (zeros last) and `P` with `Pᵗ G P` diagonal.
pub fn diagonalize_symmetric<F: Field>(g: &Matrix<F>) -> Result<(Vec<F>, Matrix<F>), QFormError> {
    if !g.is_symmetric() {
        return Err(QFormError::NotSymmetric);
    }
    let n = g.rows();
    let ctx = g.ctx().clone();
    let mut a = g.clone();
    let mut p = Matrix::identity(&ctx, n);

    fn swap<F: Field>(a: &mut Matrix<F>, p: &mut Matrix<F>, i: usize, j: usize) {
        if i == j {
            return;
        }
        a.swap_rows(i, j);
        for r in 0..a.rows() {
            let t = a[(r, i)].clone();
            a[(r, i)] = a[(r, j)].clone();
            a[(r, j)] = t;
        }
        for r in 0..p.rows() {
            let t = p[(r, i)].clone();
            p[(r, i)] = p[(r, j)].clone();
            p[(r, j)] = t;
        }
    }

    // Basis change e_i <- e_i + c e_j.
    fn add_to<F: Field>(a: &mut Matrix<F>, p: &mut Matrix<F>, i: usize, j: usize, c: &F) {
        let n = a.rows();
        for r in 0..n {
            let t = a[(r, i)].clone() + &(c.clone() * &a[(r, j)]);
            a[(r, i)] = t;
        }
        for col in 0..n {
            let t = a[(i, col)].clone() + &(c.clone() * &a[(j, col)]);
            a[(i, col)] = t;
        }
        for r in 0..n {
            let t = p[(r, i)].clone() + &(c.clone() * &p[(r, j)]);
            p[(r, i)] = t;
        }
    }

    let one = F::one_in(&ctx);
    for k in 0..n {
        if a[(k, k)].eq_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].eq_zero()) {
                swap(&mut a, &mut p, k, j);
            } else {
                let pair = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[(i, j)].eq_zero());
                let Some((i, j)) = pair else {
                    break;
                };
                add_to(&mut a, &mut p, i, j, &one);
                swap(&mut a, &mut p, k, i);
            }
        }
        let inv = a[(k, k)].inv().expect("nonzero pivot");
        for j in k + 1..n {
            if a[(k, j)].eq_zero() {
                continue;
            }
            let c = -(a[(k, j)].clone() * &inv);
            add_to(&mut a, &mut p, j, k, &c);
        }
    }
    let diag = (0..n).map(|i| a[(i, i)].clone()).collect();
    Ok((diag, p))
}

/// Non-degenerate diagonalization with certificate.
pub fn diagonalize_gram<F: Field>(g: &Matrix<F>) -> Result<Diagonalization<F>, QFormError> {
    let (diag, p) = diagonalize_symmetric(g)?;
    let radical_dim = diag.iter().filter(|x| x.eq_zero()).count();
    if radical_dim > 0 {
        return Err(QFormError::Degenerate { radical_dim });
    }
    let form = QForm::new(g.ctx(), diag)?;
    debug_assert_eq!(p.transpose().mul(g).mul(&p), form.gram());
    Ok(Diagonalization { form, certificate: p })
}

/// Sign and odd-exponent prime set of a nonzero rational, within the factoring bound.
pub(crate) fn square_class(q: &BigRational) -> Result<(bool, BTreeSet<u64>), QFormError> {
    let mut odd = BTreeSet::new();
    for part in [q.numer(), q.denom()] {
        if part.bits() > DEFAULT_FACTOR_BITS as u64 {
            return Err(ScalarError::TooLarge(part.to_string(), DEFAULT_FACTOR_BITS).into());
        }
        let n = num_traits::ToPrimitive::to_u64(&part.abs()).expect("bounded");
        for (p, e) in factor_u64(n) {
            if e % 2 == 1 && !odd.remove(&p) {
                odd.insert(p);
            }
        }
    }
    Ok((q.is_negative(), odd))
}

pub(crate) fn class_to_int(neg: bool, primes: &BTreeSet<u64>) -> BigInt {
    let mut out = BigInt::one();
    for &p in primes {
        out *= p;
    }
    if neg {
        -out
    } else {
        out
    }
}

/// Hasse-Minkowski data of a form over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFormInvariants {
    pub dim: usize,
    pub disc: BigInt,
    pub signature: (usize, usize),
    pub hasse: BTreeMap<Place, i8>,
}

impl QFormInvariants {
    pub fn hasse_at(&self, v: Place) -> i8 {
        self.hasse.get(&v).copied().unwrap_or(1)
    }
}

fn rational_entries<F: Field>(q: &QForm<F>) -> Result<Vec<BigRational>, QFormError> {
    match F::describe(q.ctx()) {
        FieldCtx::Rationals => Ok(q.diag.iter().map(|x| x.to_rational().expect("rational field")).collect()),
        other => Err(QFormError::Unsupported(other.to_string())),
    }
}

/// Dimension, squarefree discriminant, signature and Hasse symbols at 2, inf and
/// every prime dividing a squarefree part of an entry.
pub fn qform_invariants<F: Field>(q: &QForm<F>) -> Result<QFormInvariants, QFormError> {
    let entries = rational_entries(q)?;
    let classes: Vec<(bool, BTreeSet<u64>)> = entries.iter().map(square_class).collect::<Result<_, _>>()?;
    let sf: Vec<BigInt> = classes.iter().map(|(n, s)| class_to_int(*n, s)).collect();

    let mut disc_primes = BTreeSet::new();
    let mut disc_neg = false;
    let mut places = BTreeSet::from([Place::Prime(2), Place::Infinity]);
    for (neg, primes) in &classes {
        disc_neg ^= neg;
        for &p in primes {
            places.insert(Place::Prime(p));
            if !disc_primes.remove(&p) {
                disc_primes.insert(p);
            }
        }
    }
    let pos = entries.iter().filter(|x| x.is_positive()).count();
    let mut hasse = BTreeMap::new();
    for &v in &places {
        let mut s = 1i8;
        for i in 0..sf.len() {
            for j in i + 1..sf.len() {
                s *= hilbert_symbol_int(&sf[i], &sf[j], v)?;
            }
        }
        hasse.insert(v, s);
    }
    Ok(QFormInvariants {
        dim: q.dim(),
        disc: class_to_int(disc_neg, &disc_primes),
        signature: (pos, q.dim() - pos),
        hasse,
    })
}

/// Isometry test over Q (Hasse-Minkowski) or over a prime field (dimension and
/// discriminant).
pub fn qform_equivalent<F: Field>(q1: &QForm<F>, q2: &QForm<F>) -> Result<bool, QFormError> {
    if q1.ctx() != q2.ctx() {
        return Err(QFormError::MixedContexts);
    }
    match F::describe(q1.ctx()) {
        FieldCtx::Rationals => {
            let a = qform_invariants(q1)?;
            let b = qform_invariants(q2)?;
            if a.dim != b.dim || a.disc != b.disc || a.signature != b.signature {
                return Ok(false);
            }
            let places: BTreeSet<Place> = a.hasse.keys().chain(b.hasse.keys()).copied().collect();
            Ok(places.into_iter().all(|v| a.hasse_at(v) == b.hasse_at(v)))
        }
        FieldCtx::PrimeField(_) => {
            if q1.dim() != q2.dim() {
                return Ok(false);
            }
            if q1.dim() == 0 {
                return Ok(true);
            }
            Ok((q1.det() * &q2.det()).is_square()?)
        }
        other => Err(QFormError::Unsupported(other.to_string())),
    }
}

/// Isotropy over Q.
pub fn is_isotropic<F: Field>(q: &QForm<F>) -> Result<bool, QFormError> {
    let inv = qform_invariants(q)?;
    let (p, n) = inv.signature;
    if p == 0 || n == 0 {
        return Ok(false);
    }
    match q.dim() {
        0 | 1 => Ok(false),
        2 => Ok(inv.disc == BigInt::from(-1)),
        3 => {
            // <a,b,c> is isotropic at v iff c_v(q) = (-1, -d)_v.
            let d = -inv.disc.clone();
            for (&v, &h) in &inv.hasse {
                if h != hilbert_symbol_int(&BigInt::from(-1), &d, v)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        4 => {
            let d = &inv.disc;
            if d.is_one() {
                for (&v, &h) in &inv.hasse {
                    if h != hilbert_symbol_int(&BigInt::from(-1), &BigInt::from(-1), v)? {
                        return Ok(false);
                    }
                }
                return Ok(true);
            }
            // Otherwise isotropic everywhere except possibly where Q_v(sqrt d) is
            // trivial, and there the form behaves like the d = 1 case.
            let mut places: BTreeSet<Place> = inv.hasse.keys().copied().collect();
            let (_, dp) = square_class(&BigRational::from_integer(d.clone()))?;
            places.extend(dp.into_iter().map(Place::Prime));
            for v in places {
                let d_square_at_v = match v {
                    Place::Infinity => d.is_positive(),
                    Place::Prime(_) => local_square(d, v)?,
                };
                if d_square_at_v && inv.hasse_at(v) != hilbert_symbol_int(&BigInt::from(-1), &BigInt::from(-1), v)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Ok(true),
    }
}

/// Whether the squarefree integer `d` is a square in Q_p.
fn local_square(d: &BigInt, v: Place) -> Result<bool, QFormError> {
    let Place::Prime(p) = v else {
        return Ok(d.is_positive());
    };
    // Squarefree d is a p-adic square iff it is a unit at p, and a square mod p
    // (odd p) or congruent to 1 mod 8 (p = 2).
    let pb = BigInt::from(p);
    if (d % &pb) == BigInt::from(0) {
        return Ok(false);
    }
    if p == 2 {
        let r = ((d % 8) + 8) % 8;
        return Ok(r == BigInt::from(1));
    }
    let r = num_traits::ToPrimitive::to_u64(&(((d % &pb) + &pb) % &pb)).expect("residue");
    let mut acc = 1u128;
    let (mut b, mut e) = (r as u128, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    Ok(acc == 1)
}

/// `⟨⟨a_1,...,a_n⟩⟩ = ⊗ <1, -a_i>`.
pub fn pfister<F: Field>(ctx: &F::Ctx, slots: &[F]) -> Result<QForm<F>, QFormError> {
    let mut diag = vec![F::one_in(ctx)];
    for a in slots {
        if a.eq_zero() {
            return Err(QFormError::ZeroEntry);
        }
        let neg = -a.clone();
        let twisted: Vec<F> = diag.iter().map(|x| x.clone() * &neg).collect();
        diag.extend(twisted);
    }
    QForm::new(ctx, diag)
}

/// Whether a form over Q of dimension 2, 4 or 8 is isometric to a Pfister form.
pub fn is_pfister_shape<F: Field>(q: &QForm<F>) -> Result<bool, QFormError> {
    let ctx = q.ctx();
    match q.dim() {
        2 => {
            let one = QForm::new(ctx, vec![F::one_in(ctx), q.det()])?;
            qform_equivalent(q, &one)
        }
        4 => {
            let det_square = qform_invariants(q)?.disc.is_one();
            let minus_one = QForm::new(ctx, vec![-F::one_in(ctx)])?;
            Ok(det_square && is_isotropic(&q.perp(&minus_one))?)
        }
        8 => {
            let ones = QForm::new(ctx, vec![F::one_in(ctx); 8])?;
            Ok(qform_equivalent(q, &ones)? || qform_equivalent(q, &QForm::hyperbolic(ctx, 4))?)
        }
        n => Err(QFormError::NotPfister(format!("dimension {n}"))),
    }
}

/// Hyperbolicity of a Pfister form over Q, via isotropy.
pub fn is_hyperbolic_pfister<F: Field>(q: &QForm<F>) -> Result<bool, QFormError> {
    if !is_pfister_shape(q)? {
        return Err(QFormError::NotPfister(q.to_string()));
    }
    let inv = qform_invariants(q)?;
    if q.dim() == 8 {
        let (p, n) = inv.signature;
        return Ok(p > 0 && n > 0);
    }
    is_isotropic(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Fp, Modulus, Rational};

    fn qf(d: &[i64]) -> QForm<Rational> {
        QForm::from_ints(&(), d).unwrap()
    }

    fn gram(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_ints(&(), rows)
    }

    fn check_certificate(g: &Matrix<Rational>) -> Diagonalization<Rational> {
        let d = diagonalize_gram(g).unwrap();
        let p = &d.certificate;
        assert_eq!(p.transpose().mul(g).mul(p), d.form.gram());
        assert!(!p.det().eq_zero());
        d
    }

    #[test]
    fn hyperbolic_plane_diagonalizes() {
        let d = check_certificate(&gram(&[&[0, 1], &[1, 0]]));
        assert_eq!(d.form.to_string(), "<2, -1/2>");
        let d = check_certificate(&Matrix::identity(&(), 3));
        assert_eq!(d.form, qf(&[1, 1, 1]));
    }

    #[test]
    fn degenerate_reports_radical() {
        let g = gram(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]]);
        assert_eq!(diagonalize_gram(&g).unwrap_err(), QFormError::Degenerate { radical_dim: 2 });
        assert_eq!(diagonalize_gram(&gram(&[&[1, 2], &[3, 4]])).unwrap_err(), QFormError::NotSymmetric);
    }

    #[test]
    fn zero_diagonal_blocks() {
        let g = gram(&[&[0, 0, 1, 2], &[0, 0, 3, 0], &[1, 3, 0, 0], &[2, 0, 0, 0]]);
        check_certificate(&g);
    }

    #[test]
    fn invariants_examples() {
        let i = qform_invariants(&qf(&[1, 1, 1, 1])).unwrap();
        assert_eq!((i.dim, i.disc.clone(), i.signature), (4, BigInt::from(1), (4, 0)));
        assert!(i.hasse.values().all(|&h| h == 1));
        let i = qform_invariants(&qf(&[1, -1])).unwrap();
        assert_eq!((i.disc.clone(), i.signature), (BigInt::from(-1), (1, 1)));
        assert!(i.hasse.values().all(|&h| h == 1));
        assert_eq!(qform_invariants(&qf(&[1, 1])).unwrap().disc, BigInt::from(1));
        assert_eq!(qform_invariants(&qf(&[1, 2])).unwrap().disc, BigInt::from(2));
    }

    #[test]
    fn hasse_places() {
        let i = qform_invariants(&qf(&[3, 5, -12])).unwrap();
        let keys: Vec<String> = i.hasse.keys().map(|p| p.to_string()).collect();
        assert_eq!(keys, ["2", "3", "5", "inf"]);
    }

    #[test]
    fn equivalence_examples() {
        assert!(qform_equivalent(&qf(&[1, -1]), &qf(&[2, -2])).unwrap());
        assert!(!qform_equivalent(&qf(&[1, 1]), &qf(&[1, 2])).unwrap());
        assert!(qform_equivalent(&qf(&[1, 1, 1, 1]), &qf(&[2, 2, 2, 2])).unwrap());
        assert!(!qform_equivalent(&qf(&[1, 1]), &qf(&[3, 3])).unwrap());
        let m = Modulus::new(3).unwrap();
        let a: QForm<Fp> = QForm::from_ints(&m, &[1, 1]).unwrap();
        let b: QForm<Fp> = QForm::from_ints(&m, &[2, 2]).unwrap();
        let c: QForm<Fp> = QForm::from_ints(&m, &[1, 2]).unwrap();
        assert!(qform_equivalent(&a, &b).unwrap());
        assert!(!qform_equivalent(&a, &c).unwrap());
        let m5 = Modulus::new(5).unwrap();
        let d: QForm<Fp> = QForm::from_ints(&m5, &[1, 1]).unwrap();
        assert_eq!(qform_equivalent(&a, &d), Err(QFormError::MixedContexts));
    }

    #[test]
    fn pfister_examples() {
        let q = pfister(&(), &vec![Rational::from_int(&(), -1); 3]).unwrap();
        assert_eq!(q, qf(&[1; 8]));
        assert!(!is_hyperbolic_pfister(&q).unwrap());
        let q = pfister(&(), &[Rational::from_int(&(), 1), Rational::from_int(&(), 7)]).unwrap();
        assert!(is_hyperbolic_pfister(&q).unwrap());
        let q = pfister(&(), &[Rational::from_int(&(), -1), Rational::from_int(&(), -1)]).unwrap();
        assert!(!is_hyperbolic_pfister(&q).unwrap());
        assert!(matches!(is_hyperbolic_pfister(&qf(&[1, 1, 1])), Err(QFormError::NotPfister(_))));
        assert!(matches!(is_hyperbolic_pfister(&qf(&[1, 1, 1, 3])), Err(QFormError::NotPfister(_))));
    }

    #[test]
    fn isotropy_small_forms() {
        assert!(is_isotropic(&qf(&[1, 1, -2])).unwrap());
        assert!(!is_isotropic(&qf(&[1, 1, -3])).unwrap());
        assert!(is_isotropic(&qf(&[1, 2, -3, 5])).unwrap());
        assert!(!is_isotropic(&qf(&[1, 1, 1, -7])).unwrap());
        assert!(is_isotropic(&qf(&[1, 1, 1, -1, 5])).unwrap());
    }

    // Exhaustive search for a nonzero vector with small entries and q(x) = 0.
    fn small_zero(d: &[i64], bound: i64) -> bool {
        let n = d.len();
        let mut x = vec![-bound; n];
        loop {
            if x.iter().any(|&t| t != 0) && d.iter().zip(&x).map(|(a, t)| a * t * t).sum::<i64>() == 0 {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                x[i] += 1;
                if x[i] <= bound {
                    break;
                }
                x[i] = -bound;
                i += 1;
            }
        }
    }

    #[test]
    fn isotropy_agrees_with_search() {
        // A found zero proves isotropy; anisotropic verdicts are only checked not to
        // contradict a found zero.
        let vals = [-3i64, -2, -1, 1, 2, 5];
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    let d = [1, a, b, c];
                    if small_zero(&d, 4) {
                        assert!(is_isotropic(&qf(&d)).unwrap(), "{d:?}");
                    }
                    let t = [1, a, b];
                    if small_zero(&t, 6) {
                        assert!(is_isotropic(&qf(&t)).unwrap(), "{t:?}");
                    }
                }
            }
        }
    }
}
