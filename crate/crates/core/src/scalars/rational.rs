use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{factor_u64, Field, FieldCtx, ScalarError};

pub type Rational = BigRational;

/// Factorization bound (in bits) for numerators and denominators.
pub const DEFAULT_FACTOR_BITS: u32 = 64;

fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = num_integer::Roots::sqrt(n);
    (&r * &r == *n).then_some(r)
}

/// Parses `INT` or `INT/INT`.
pub fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let t = s.trim();
    let err = |why: &str| ScalarError::Parse(s.to_string(), why.to_string());
    let parse_int = |x: &str| -> Result<BigInt, ScalarError> {
        let x = x.trim().strip_prefix('+').unwrap_or(x.trim());
        x.parse::<BigInt>().map_err(|_| err("expected an integer or a fraction"))
    };
    match t.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(t)?)),
    }
}

fn bounded_u64(n: &BigInt, bits: u32) -> Result<u64, ScalarError> {
    let too_large = || ScalarError::TooLarge(n.to_string(), bits);
    if n.bits() > bits as u64 {
        return Err(too_large());
    }
    n.abs().to_u64().ok_or_else(too_large)
}

/// Squarefree integer representing the square class of a nonzero rational.
///
/// Numerator and denominator must each fit in `bits` bits.
pub fn squarefree_part(q: &BigRational, bits: u32) -> Result<BigInt, ScalarError> {
    if q.is_zero() {
        return Err(ScalarError::ZeroInput);
    }
    let mut out = <BigInt as One>::one();
    for part in [q.numer(), q.denom()] {
        let n = bounded_u64(part, bits)?;
        for (p, e) in factor_u64(n) {
            if e % 2 == 1 {
                out *= p;
            }
        }
    }
    if q.is_negative() {
        out = -out;
    }
    Ok(out)
}

impl Field for BigRational {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero_in(_: &()) -> Self {
        <BigRational as Zero>::zero()
    }

    fn one_in(_: &()) -> Self {
        <BigRational as One>::one()
    }

    fn from_int(_: &(), n: i64) -> Self {
        BigRational::from_integer(n.into())
    }

    fn from_rational(_: &(), q: &BigRational) -> Result<Self, ScalarError> {
        Ok(q.clone())
    }

    fn eq_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }

    fn characteristic(_: &()) -> u64 {
        0
    }

    fn is_square(&self) -> Result<bool, ScalarError> {
        if Zero::is_zero(self) {
            return Err(ScalarError::ZeroInput);
        }
        bounded_u64(self.numer(), DEFAULT_FACTOR_BITS)?;
        bounded_u64(self.denom(), DEFAULT_FACTOR_BITS)?;
        Ok(self.sqrt().is_some())
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        // Ratio keeps lowest terms, so a square has square numerator and denominator.
        let n = perfect_sqrt(self.numer())?;
        let d = perfect_sqrt(self.denom())?;
        Some(BigRational::new(n, d))
    }

    fn parse(_: &(), s: &str) -> Result<Self, ScalarError> {
        parse_rational(s)
    }

    fn describe(_: &()) -> FieldCtx {
        FieldCtx::Rationals
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}
