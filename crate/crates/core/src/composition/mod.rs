//! Composition algebras by Cayley-Dickson doubling, the Zorn vector-matrix
//! model of the split octonions, and flag towers `k ⊂ K ⊂ Q ⊂ C`.
//!
//! `CD(D, λ)` is `D ⊕ D` with
//! `(x, y)(u, v) = (xu + λ v̄y, vx + yū)` and `N(x, y) = N(x) - λ N(y)`,
//! so its norm form is `N_D ⊗ <1, -λ>`.

mod zorn;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use zorn::{zorn_ops, ZornElement};

use crate::qforms::{pfister, qform_equivalent, QForm, QFormError};
use crate::scalars::{Field, FieldCtx};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompositionError {
    #[error("elements belong to different towers")]
    TowerMismatch,
    #[error("a doubling tower has at most 3 steps, got {0}")]
    TooLong(usize),
    #[error("doubling constants must be nonzero")]
    ZeroLambda,
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("no division octonion algebra contains a quaternion algebra with indefinite norm {0}")]
    IndefiniteQuaternion(String),
    #[error("division octonions do not exist over {0}")]
    NoDivisionOctonion(String),
    #[error("tower norm {got} is not equivalent to the requested octonion norm")]
    NormMismatch { got: String },
    #[error(transparent)]
    QForm(#[from] QFormError),
}

/// A Cayley-Dickson tower `k = A_0 ⊂ A_1 ⊂ ...` given by its doubling constants.
#[derive(Clone, PartialEq)]
pub struct CDTower<F: Field>(Arc<TowerInner<F>>);

#[derive(PartialEq)]
struct TowerInner<F: Field> {
    ctx: F::Ctx,
    lambdas: Vec<F>,
}

impl<F: Field> fmt::Debug for CDTower<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.0.lambdas.iter().map(|x| x.to_string()).collect();
        write!(f, "CD({})", l.join(", "))
    }
}

impl<F: Field> CDTower<F> {
    pub fn new(ctx: &F::Ctx, lambdas: Vec<F>) -> Result<Self, CompositionError> {
        if lambdas.len() > 3 {
            return Err(CompositionError::TooLong(lambdas.len()));
        }
        if lambdas.iter().any(|l| l.eq_zero()) {
            return Err(CompositionError::ZeroLambda);
        }
        Ok(CDTower(Arc::new(TowerInner { ctx: ctx.clone(), lambdas })))
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.0.ctx
    }

    pub fn lambdas(&self) -> &[F] {
        &self.0.lambdas
    }

    pub fn dim(&self) -> usize {
        1 << self.0.lambdas.len()
    }

    /// `<1> ⊗ <1, -λ_1> ⊗ ...`, in coordinate order.
    pub fn norm_form(&self) -> QForm<F> {
        pfister(self.ctx(), self.lambdas()).expect("nonzero lambdas")
    }

    /// The subtower with the first `k` constants.
    pub fn truncate(&self, k: usize) -> Self {
        Self::new(self.ctx(), self.lambdas()[..k].to_vec()).expect("valid prefix")
    }

    pub fn element(&self, coords: Vec<F>) -> Result<CDElement<F>, CompositionError> {
        if coords.len() != self.dim() {
            return Err(CompositionError::WrongLength { expected: self.dim(), got: coords.len() });
        }
        Ok(CDElement { tower: self.clone(), coords })
    }

    pub fn from_ints(&self, coords: &[i64]) -> Result<CDElement<F>, CompositionError> {
        self.element(coords.iter().map(|&c| F::from_int(self.ctx(), c)).collect())
    }

    pub fn one(&self) -> CDElement<F> {
        self.unit(0)
    }

    /// The `k`-th coordinate vector.
    pub fn unit(&self, k: usize) -> CDElement<F> {
        let mut coords = vec![F::zero_in(self.ctx()); self.dim()];
        coords[k] = F::one_in(self.ctx());
        CDElement { tower: self.clone(), coords }
    }

    fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

#[derive(Clone, PartialEq)]
pub struct CDElement<F: Field> {
    tower: CDTower<F>,
    coords: Vec<F>,
}

impl<F: Field> fmt::Debug for CDElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", c.join(", "))
    }
}

fn conj_rec<F: Field>(a: &[F]) -> Vec<F> {
    a.iter().enumerate().map(|(i, x)| if i == 0 { x.clone() } else { -x.clone() }).collect()
}

fn add_vec<F: Field>(a: Vec<F>, b: Vec<F>) -> Vec<F> {
    a.into_iter().zip(b).map(|(x, y)| x + y).collect()
}

fn mul_rec<F: Field>(lams: &[F], a: &[F], b: &[F]) -> Vec<F> {
    let Some((lam, lower)) = lams.split_last() else {
        return vec![a[0].clone() * &b[0]];
    };
    let h = a.len() / 2;
    let (x, y) = a.split_at(h);
    let (u, v) = b.split_at(h);
    let xu = mul_rec(lower, x, u);
    let vby = mul_rec(lower, &conj_rec(v), y);
    let first = add_vec(xu, vby.into_iter().map(|t| t * lam).collect());
    let second = add_vec(mul_rec(lower, v, x), mul_rec(lower, y, &conj_rec(u)));
    let mut out = first;
    out.extend(second);
    out
}

fn norm_rec<F: Field>(lams: &[F], a: &[F]) -> F {
    let Some((lam, lower)) = lams.split_last() else {
        return a[0].clone() * &a[0];
    };
    let (x, y) = a.split_at(a.len() / 2);
    norm_rec(lower, x) - norm_rec(lower, y) * lam
}

impl<F: Field> CDElement<F> {
    pub fn tower(&self) -> &CDTower<F> {
        &self.tower
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn add(&self, other: &Self) -> Result<Self, CompositionError> {
        if !self.tower.same(&other.tower) {
            return Err(CompositionError::TowerMismatch);
        }
        Ok(CDElement { tower: self.tower.clone(), coords: add_vec(self.coords.clone(), other.coords.clone()) })
    }

    pub fn scale(&self, c: &F) -> Self {
        CDElement { tower: self.tower.clone(), coords: self.coords.iter().map(|x| x.clone() * c).collect() }
    }

    pub fn conj(&self) -> Self {
        CDElement { tower: self.tower.clone(), coords: conj_rec(&self.coords) }
    }

    pub fn norm(&self) -> F {
        norm_rec(self.tower.lambdas(), &self.coords)
    }

    /// `b_N(u, v) = N(u + v) - N(u) - N(v)`.
    pub fn polar(&self, other: &Self) -> Result<F, CompositionError> {
        Ok(self.add(other)?.norm() - self.norm() - other.norm())
    }

    pub fn trace(&self) -> F {
        self.coords[0].clone() + &self.coords[0]
    }
}

/// Product by the doubling rule.
pub fn cd_mul<F: Field>(u: &CDElement<F>, v: &CDElement<F>) -> Result<CDElement<F>, CompositionError> {
    if !u.tower.same(&v.tower) {
        return Err(CompositionError::TowerMismatch);
    }
    Ok(CDElement { tower: u.tower.clone(), coords: mul_rec(u.tower.lambdas(), &u.coords, &v.coords) })
}

pub fn cd_norm_conj<F: Field>(u: &CDElement<F>) -> (F, CDElement<F>) {
    (u.norm(), u.conj())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OctonionClass {
    Split,
    Division,
}

impl std::str::FromStr for OctonionClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "split" => Ok(OctonionClass::Split),
            "division" => Ok(OctonionClass::Division),
            _ => Err(format!("`{s}` is neither split nor division")),
        }
    }
}

impl fmt::Display for OctonionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OctonionClass::Split => "split",
            OctonionClass::Division => "division",
        })
    }
}

#[derive(Debug, Clone)]
pub struct FlagTower<F: Field> {
    pub k: CDTower<F>,
    pub q: CDTower<F>,
    pub c: CDTower<F>,
}

/// `K = CD(k, -i)`, `Q = CD(K, -y_1)`, `C = CD(Q, λ_3)` with `λ_3 = 1` (split)
/// or `λ_3 = -1` (division, needs `Q` definite).
pub fn build_flag_tower<F: Field>(i: &F, y1: &F, class: OctonionClass) -> Result<FlagTower<F>, CompositionError> {
    let ctx = i.ctx();
    if i.eq_zero() || y1.eq_zero() {
        return Err(CompositionError::ZeroLambda);
    }
    let lam1 = -i.clone();
    let lam2 = -y1.clone();
    let lam3 = match class {
        OctonionClass::Split => F::one_in(&ctx),
        OctonionClass::Division => {
            let positive = |x: &F| x.to_rational().map(|q| num_traits::Signed::is_positive(&q));
            match (F::describe(&ctx), positive(i), positive(y1)) {
                (FieldCtx::Rationals, Some(true), Some(true)) => -F::one_in(&ctx),
                (FieldCtx::Rationals, _, _) => {
                    let qn = pfister(&ctx, &[lam1.clone(), lam2.clone()])?;
                    return Err(CompositionError::IndefiniteQuaternion(qn.to_string()));
                }
                (other, _, _) => return Err(CompositionError::NoDivisionOctonion(other.to_string())),
            }
        }
    };
    let c = CDTower::new(&ctx, vec![lam1, lam2, lam3])?;
    let target = match class {
        OctonionClass::Split => QForm::hyperbolic(&ctx, 4),
        OctonionClass::Division => QForm::new(&ctx, vec![F::one_in(&ctx); 8])?,
    };
    let norm = c.norm_form();
    if !qform_equivalent(&norm, &target)? {
        return Err(CompositionError::NormMismatch { got: norm.to_string() });
    }
    Ok(FlagTower { k: c.truncate(1), q: c.truncate(2), c })
}
