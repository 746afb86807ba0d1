//! Diagonal hermitian forms over `K = k(sqrt -d)`.

use std::collections::BTreeSet;

use super::{class_to_int, hilbert_symbol_int, qform_equivalent, square_class, Place, QForm, QFormError};
use crate::scalars::{Field, FieldCtx};

/// `diag(y_1, ..., y_n)` over `k(sqrt -d)`, entries in `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianForm<F: Field> {
    d: F,
    diag: Vec<F>,
    split: bool,
}

impl<F: Field> HermitianForm<F> {
    pub fn new(d: F, diag: Vec<F>) -> Result<Self, QFormError> {
        if d.eq_zero() || diag.iter().any(|x| x.eq_zero()) {
            return Err(QFormError::ZeroEntry);
        }
        let split = (-d.clone()).is_square()?;
        Ok(HermitianForm { d, diag, split })
    }

    pub fn d(&self) -> &F {
        &self.d
    }

    pub fn diag(&self) -> &[F] {
        &self.diag
    }

    /// True when `-d` is a square, so that `K = k x k`.
    pub fn is_split(&self) -> bool {
        self.split
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }
}

/// `<y_1, d y_1, ..., y_n, d y_n>`, or `n` hyperbolic planes when `K` is split.
pub fn hermitian_trace_form<F: Field>(h: &HermitianForm<F>) -> QForm<F> {
    let ctx = h.d.ctx();
    if h.split {
        return QForm::hyperbolic(&ctx, h.dim());
    }
    let diag = h.diag.iter().flat_map(|y| [y.clone(), y.clone() * &h.d]).collect();
    QForm::new(&ctx, diag).expect("nonzero entries")
}

/// `(-1)^{n(n-1)/2} ∏ y_i`, a representative of the discriminant modulo norms.
pub fn hermitian_disc<F: Field>(h: &HermitianForm<F>) -> F {
    let n = h.dim();
    let prod = h.diag.iter().fold(h.d.one_like(), |acc, y| acc * y);
    if (n * n.saturating_sub(1) / 2) % 2 == 1 {
        -prod
    } else {
        prod
    }
}

/// Whether the discriminant is a norm from `K`.
pub fn has_trivial_discriminant<F: Field>(h: &HermitianForm<F>) -> Result<bool, QFormError> {
    if h.split {
        return Ok(true);
    }
    let ctx = h.d.ctx();
    match F::describe(&ctx) {
        FieldCtx::PrimeField(_) => Ok(true),
        FieldCtx::Rationals => {
            let disc = hermitian_disc(h).to_rational().expect("rational");
            let minus_d = (-h.d.clone()).to_rational().expect("rational");
            let (n1, p1) = square_class(&disc)?;
            let (n2, p2) = square_class(&minus_d)?;
            let a = class_to_int(n1, &p1);
            let b = class_to_int(n2, &p2);
            let mut places: BTreeSet<Place> = BTreeSet::from([Place::Prime(2), Place::Infinity]);
            places.extend(p1.iter().chain(&p2).map(|&p| Place::Prime(p)));
            for v in places {
                if hilbert_symbol_int(&a, &b, v)? != 1 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        other => Err(QFormError::Unsupported(other.to_string())),
    }
}

/// Hermitian isometry, decided on trace forms.
pub fn hermitian_isometric<F: Field>(h1: &HermitianForm<F>, h2: &HermitianForm<F>) -> Result<bool, QFormError> {
    if h1.d != h2.d {
        return Err(QFormError::MixedContexts);
    }
    if h1.dim() != h2.dim() {
        return Ok(false);
    }
    qform_equivalent(&hermitian_trace_form(h1), &hermitian_trace_form(h2))
}
