use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{parse_rational, Field, FieldCtx, ScalarError};

/// The field `Q(sqrt d)` for a fixed non-square rational `d`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadField(Arc<BigRational>);

impl QuadField {
    pub fn new(d: BigRational) -> Result<Self, ScalarError> {
        if d.is_zero() || Field::sqrt(&d).is_some() {
            return Err(ScalarError::InvalidContext(format!("{d} is a square in Q")));
        }
        Ok(QuadField(Arc::new(d)))
    }

    pub fn from_int(d: i64) -> Result<Self, ScalarError> {
        Self::new(BigRational::from_integer(d.into()))
    }

    pub fn d(&self) -> &BigRational {
        &self.0
    }

    /// `sqrt d` itself.
    pub fn gen(&self) -> QuadElem {
        QuadElem::new(self, BigRational::zero(), BigRational::one())
    }

    pub fn elem(&self, a: BigRational, b: BigRational) -> QuadElem {
        QuadElem::new(self, a, b)
    }
}

impl fmt::Debug for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt {})", self.0)
    }
}

/// `a + b sqrt(d)`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadElem {
    a: BigRational,
    b: BigRational,
    field: QuadField,
}

impl QuadElem {
    pub fn new(field: &QuadField, a: BigRational, b: BigRational) -> Self {
        QuadElem { a, b, field: field.clone() }
    }

    pub fn from_rational_in(field: &QuadField, a: BigRational) -> Self {
        Self::new(field, a, BigRational::zero())
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn conj(&self) -> Self {
        QuadElem { a: self.a.clone(), b: -self.b.clone(), field: self.field.clone() }
    }

    /// `a^2 - d b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - self.field.d() * &self.b * &self.b
    }

    #[inline]
    fn check(&self, rhs: &QuadElem) {
        assert!(
            Arc::ptr_eq(&self.field.0, &rhs.field.0) || self.field == rhs.field,
            "mixed quadratic fields {:?} and {:?}",
            self.field,
            rhs.field
        );
    }
}

/// Norm and conjugate of `alpha` in `Q(sqrt -d)`, given as `(d, alpha)` where
/// `alpha` lives in the field with radicand `-d`.
pub fn quad_norm_conj(d: &BigRational, alpha: &QuadElem) -> Result<(BigRational, QuadElem), ScalarError> {
    if *alpha.field.d() != -d.clone() {
        return Err(ScalarError::ContextMismatch);
    }
    Ok((alpha.norm(), alpha.conj()))
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.field.d();
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coef = |b: &BigRational| -> String {
            if b.is_one() {
                String::new()
            } else {
                format!("{b}*")
            }
        };
        if self.a.is_zero() {
            if (-self.b.clone()).is_one() {
                return write!(f, "-sqrt({d})");
            }
            return write!(f, "{}sqrt({d})", coef(&self.b));
        }
        if self.b.is_negative() {
            write!(f, "{}-{}sqrt({d})", self.a, coef(&-self.b.clone()))
        } else {
            write!(f, "{}+{}sqrt({d})", self.a, coef(&self.b))
        }
    }
}

impl Add for QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: QuadElem) -> QuadElem {
        self + &rhs
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: QuadElem) -> QuadElem {
        self - &rhs
    }
}

impl Mul for QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: QuadElem) -> QuadElem {
        self * &rhs
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem { a: -self.a, b: -self.b, field: self.field }
    }
}

impl<'r> Add<&'r QuadElem> for QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: &'r QuadElem) -> QuadElem {
        self.check(rhs);
        QuadElem { a: self.a + &rhs.a, b: self.b + &rhs.b, field: self.field }
    }
}

impl<'r> Sub<&'r QuadElem> for QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: &'r QuadElem) -> QuadElem {
        self.check(rhs);
        QuadElem { a: self.a - &rhs.a, b: self.b - &rhs.b, field: self.field }
    }
}

impl<'r> Mul<&'r QuadElem> for QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: &'r QuadElem) -> QuadElem {
        self.check(rhs);
        let d = self.field.d();
        let a = &self.a * &rhs.a + d * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadElem { a, b, field: self.field }
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    Field::sqrt(q)
}

impl Field for QuadElem {
    type Ctx = QuadField;

    fn ctx(&self) -> QuadField {
        self.field.clone()
    }

    fn zero_in(k: &QuadField) -> Self {
        QuadElem::new(k, BigRational::zero(), BigRational::zero())
    }

    fn one_in(k: &QuadField) -> Self {
        QuadElem::new(k, BigRational::one(), BigRational::zero())
    }

    fn from_int(k: &QuadField, n: i64) -> Self {
        QuadElem::new(k, BigRational::from_integer(n.into()), BigRational::zero())
    }

    fn from_rational(k: &QuadField, q: &BigRational) -> Result<Self, ScalarError> {
        Ok(QuadElem::from_rational_in(k, q.clone()))
    }

    fn eq_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        if self.eq_zero() {
            return None;
        }
        let n = self.norm().recip();
        let c = self.conj();
        Some(QuadElem { a: c.a * &n, b: c.b * &n, field: c.field })
    }

    fn characteristic(_: &QuadField) -> u64 {
        0
    }

    fn is_square(&self) -> Result<bool, ScalarError> {
        if self.eq_zero() {
            return Err(ScalarError::ZeroInput);
        }
        Ok(self.sqrt().is_some())
    }

    fn sqrt(&self) -> Option<Self> {
        let k = &self.field;
        if self.eq_zero() {
            return Some(self.clone());
        }
        if self.b.is_zero() {
            if let Some(u) = rational_sqrt(&self.a) {
                return Some(QuadElem::new(k, u, BigRational::zero()));
            }
            let v = rational_sqrt(&(&self.a / k.d()))?;
            return Some(QuadElem::new(k, BigRational::zero(), v));
        }
        // (u + v sqrt d)^2 = a + b sqrt d forces u^2 = (a +- sqrt(N))/2 with N = a^2 - d b^2.
        let n = rational_sqrt(&self.norm())?;
        let two = BigRational::from_integer(2.into());
        for cand in [(&self.a + &n) / &two, (&self.a - &n) / &two] {
            if cand.is_zero() {
                continue;
            }
            if let Some(u) = rational_sqrt(&cand) {
                let v = &self.b / (&two * &u);
                let r = QuadElem::new(k, u, v);
                if r.clone() * &r == *self {
                    return Some(r);
                }
            }
        }
        None
    }

    fn parse(k: &QuadField, s: &str) -> Result<Self, ScalarError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |why: &str| ScalarError::Parse(s.to_string(), why.to_string());
        let Some(pos) = t.find("sqrt(") else {
            return Ok(QuadElem::from_rational_in(k, parse_rational(&t)?));
        };
        let inner = t[pos + 5..].strip_suffix(')').ok_or_else(|| err("expected `sqrt(D)` at the end"))?;
        if parse_rational(inner)? != *k.d() {
            return Err(ScalarError::ContextMismatch);
        }
        let head = &t[..pos];
        let head = head.strip_suffix('*').unwrap_or(head);
        let split = head.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).last();
        let (a_part, b_part) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let a = if a_part.is_empty() { BigRational::zero() } else { parse_rational(a_part)? };
        let b = match b_part {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other)?,
        };
        Ok(QuadElem::new(k, a, b))
    }

    fn describe(k: &QuadField) -> FieldCtx {
        FieldCtx::QuadExt(k.clone())
    }

    fn to_rational(&self) -> Option<BigRational> {
        self.b.is_zero().then(|| self.a.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn norm_conj_examples() {
        let gauss = QuadField::from_int(-1).unwrap();
        let a = QuadElem::parse(&gauss, "1+sqrt(-1)").unwrap();
        let (n, c) = quad_norm_conj(&q("1"), &a).unwrap();
        assert_eq!(n, q("2"));
        assert_eq!(c.to_string(), "1-sqrt(-1)");
        let one = QuadElem::one_in(&gauss);
        let (n, c) = quad_norm_conj(&q("1"), &one).unwrap();
        assert_eq!((n, c), (q("1"), one));

        let k2 = QuadField::from_int(-2).unwrap();
        let a = QuadElem::parse(&k2, "3+2*sqrt(-2)").unwrap();
        let (n, c) = quad_norm_conj(&q("2"), &a).unwrap();
        assert_eq!(n, q("17"));
        assert_eq!(c.to_string(), "3-2*sqrt(-2)");
        assert!(quad_norm_conj(&q("1"), &a).is_err());
    }

    #[test]
    fn parse_and_print_round_trip() {
        let k = QuadField::from_int(-3).unwrap();
        for s in ["0", "5", "-1/2", "sqrt(-3)", "-sqrt(-3)", "2*sqrt(-3)", "1/2+3/4*sqrt(-3)", "-1-sqrt(-3)"] {
            let x = QuadElem::parse(&k, s).unwrap();
            assert_eq!(x.to_string(), s);
            assert_eq!(QuadElem::parse(&k, &x.to_string()).unwrap(), x);
        }
        assert_eq!(QuadElem::parse(&k, "1+sqrt(5)"), Err(ScalarError::ContextMismatch));
    }

    #[test]
    fn square_roots() {
        let k = QuadField::from_int(-1).unwrap();
        let i = k.gen();
        assert!(!i.is_square().unwrap());
        assert!((i.clone() + &i).is_square().unwrap());
        let minus_one = -QuadElem::one_in(&k);
        assert_eq!(minus_one.sqrt().map(|r| r.clone() * &r), Some(minus_one));
        let x = QuadElem::parse(&k, "3+4*sqrt(-1)").unwrap();
        let r = x.sqrt().unwrap();
        assert_eq!(r.clone() * &r, x);
        assert!(!QuadElem::from_int(&k, 3).is_square().unwrap());
        assert!(QuadElem::from_int(&k, -4).is_square().unwrap());
    }

    #[test]
    fn rejects_square_radicand() {
        assert!(QuadField::from_int(9).is_err());
        assert!(QuadField::new(q("4/25")).is_err());
        assert!(QuadField::from_int(0).is_err());
    }
}
