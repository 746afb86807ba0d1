//! Exact scalar fields: the rationals, quadratic extensions `Q(sqrt d)` and
//! odd prime fields `F_p`.
//!
//! Every algorithm in this crate is generic over [`Field`]. Elements carry a
//! cheap handle to their context (`()` for `Q`, the modulus for `F_p`, the
//! shared `d` for `Q(sqrt d)`), so generic code can build zeros and ones from
//! any element it already holds.

mod factor;
mod prime;
mod quadratic;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use thiserror::Error;

pub use factor::{factor_u64, is_prime_u64};
pub use prime::{Fp, Modulus};
pub use quadratic::{quad_norm_conj, QuadElem, QuadField};
pub use rational::{parse_rational, squarefree_part, Rational, DEFAULT_FACTOR_BITS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("square class of zero is undefined")]
    ZeroInput,
    #[error("{0} exceeds the {1}-bit factorization bound")]
    TooLarge(String, u32),
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("cannot parse scalar `{0}`: {1}")]
    Parse(String, String),
    #[error("invalid field context: {0}")]
    InvalidContext(String),
    #[error("scalar belongs to a different field context")]
    ContextMismatch,
}

/// An exact commutative field with characteristic 0 or an odd prime.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    type Ctx: Clone + fmt::Debug + PartialEq + Send + Sync + 'static;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;
    /// Image of a rational number; fails in `F_p` when `p` divides the denominator.
    fn from_rational(ctx: &Self::Ctx, q: &BigRational) -> Result<Self, ScalarError>;
    fn eq_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn characteristic(ctx: &Self::Ctx) -> u64;
    /// Square-class test. Zero is rejected.
    fn is_square(&self) -> Result<bool, ScalarError>;
    /// Some square root in this field, if one exists.
    fn sqrt(&self) -> Option<Self>;
    fn parse(ctx: &Self::Ctx, s: &str) -> Result<Self, ScalarError>;
    fn describe(ctx: &Self::Ctx) -> FieldCtx;
    /// The rational value when the element lies in the prime subfield of a
    /// characteristic-0 field.
    fn to_rational(&self) -> Option<BigRational>;

    fn zero_like(&self) -> Self {
        Self::zero_in(&self.ctx())
    }

    fn one_like(&self) -> Self {
        Self::one_in(&self.ctx())
    }

    fn int_like(&self, n: i64) -> Self {
        Self::from_int(&self.ctx(), n)
    }

    fn eq_one(&self) -> bool {
        *self == self.one_like()
    }

    fn square(&self) -> Self {
        self.clone() * self
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// `self / rhs`; panics on division by zero.
    fn div(&self, rhs: &Self) -> Self {
        let inv = rhs.inv().expect("division by zero");
        self.clone() * &inv
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        rhs.inv().map(|r| self.clone() * &r).ok_or_else(|| ScalarError::NotInvertible(rhs.to_string()))
    }

    /// `1/2`, which exists in every field handled here.
    fn half(ctx: &Self::Ctx) -> Self {
        Self::from_int(ctx, 2).inv().expect("characteristic 2 is excluded")
    }
}

/// Description of a scalar field, as written on the command line and in JSON:
/// `Q`, `Q(sqrt:D)`, `F:p`.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldCtx {
    Rationals,
    QuadExt(QuadField),
    PrimeField(Modulus),
}

impl FieldCtx {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldCtx::Rationals | FieldCtx::QuadExt(_) => 0,
            FieldCtx::PrimeField(m) => m.get() as u64,
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Rationals => write!(f, "Q"),
            FieldCtx::QuadExt(q) => write!(f, "Q(sqrt:{})", q.d()),
            FieldCtx::PrimeField(m) => write!(f, "F:{}", m.get()),
        }
    }
}

impl FromStr for FieldCtx {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "Q" {
            return Ok(FieldCtx::Rationals);
        }
        if let Some(rest) = t.strip_prefix("Q(sqrt:").and_then(|r| r.strip_suffix(')')) {
            let d = parse_rational(rest)?;
            return Ok(FieldCtx::QuadExt(QuadField::new(d)?));
        }
        if let Some(rest) = t.strip_prefix("F:") {
            let p: u64 = rest.parse().map_err(|_| ScalarError::InvalidContext(format!("bad prime `{rest}`")))?;
            return Ok(FieldCtx::PrimeField(Modulus::new(p)?));
        }
        Err(ScalarError::InvalidContext(format!("`{s}` is not one of Q, Q(sqrt:D), F:p")))
    }
}

/// Square test for a scalar in any supported field.
pub fn is_square<F: Field>(a: &F) -> Result<bool, ScalarError> {
    a.is_square()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ctx_round_trip() {
        for s in ["Q", "Q(sqrt:-1)", "Q(sqrt:2)", "F:3", "F:101"] {
            let ctx: FieldCtx = s.parse().unwrap();
            assert_eq!(ctx.to_string(), s);
        }
    }

    #[test]
    fn field_ctx_rejects_bad_input() {
        assert!("F:9".parse::<FieldCtx>().is_err());
        assert!("F:2".parse::<FieldCtx>().is_err());
        assert!("Q(sqrt:4)".parse::<FieldCtx>().is_err());
        assert!("R".parse::<FieldCtx>().is_err());
    }
}
