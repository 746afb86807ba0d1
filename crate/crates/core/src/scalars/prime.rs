use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{is_prime_u64, parse_rational, Field, FieldCtx, ScalarError};

/// An odd prime below 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        if p == 2 || !is_prime_u64(p) || p >= 1 << 31 {
            return Err(ScalarError::InvalidContext(format!("{p} is not an odd prime below 2^31")));
        }
        Ok(Modulus(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// Residue class modulo an odd prime, stored in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u32,
    p: u32,
}

impl Fp {
    pub fn new(m: Modulus, v: i64) -> Self {
        Fp { v: v.rem_euclid(m.0 as i64) as u32, p: m.0 }
    }

    pub fn value(self) -> u32 {
        self.v
    }

    pub fn modulus(self) -> Modulus {
        Modulus(self.p)
    }

    fn pow_u64(self, mut e: u64) -> Fp {
        let mut base = self.v as u64;
        let mut acc = 1u64;
        let p = self.p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp { v: acc as u32, p: self.p }
    }

    /// Legendre symbol: 0, 1 or -1.
    pub fn legendre(self) -> i8 {
        if self.v == 0 {
            return 0;
        }
        if self.pow_u64((self.p as u64 - 1) / 2).v == 1 {
            1
        } else {
            -1
        }
    }

    #[inline]
    fn check(self, rhs: Fp) {
        assert_eq!(self.p, rhs.p, "mixed prime fields F_{} and F_{}", self.p, rhs.p);
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.v, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        self.check(rhs);
        let s = self.v + rhs.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        self.check(rhs);
        let v = if self.v >= rhs.v { self.v - rhs.v } else { self.v + self.p - rhs.v };
        Fp { v, p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp { v: ((self.v as u64 * rhs.v as u64) % self.p as u64) as u32, p: self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

impl<'a> Add<&'a Fp> for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: &'a Fp) -> Fp {
        self + *rhs
    }
}

impl<'a> Sub<&'a Fp> for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: &'a Fp) -> Fp {
        self - *rhs
    }
}

impl<'a> Mul<&'a Fp> for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: &'a Fp) -> Fp {
        self * *rhs
    }
}

fn bigint_mod(n: &BigInt, p: u32) -> u32 {
    n.mod_floor(&BigInt::from(p)).to_u32().expect("residue fits")
}

impl Field for Fp {
    type Ctx = Modulus;

    fn ctx(&self) -> Modulus {
        Modulus(self.p)
    }

    fn zero_in(m: &Modulus) -> Self {
        Fp { v: 0, p: m.0 }
    }

    fn one_in(m: &Modulus) -> Self {
        Fp { v: 1, p: m.0 }
    }

    fn from_int(m: &Modulus, n: i64) -> Self {
        Fp::new(*m, n)
    }

    fn from_rational(m: &Modulus, q: &BigRational) -> Result<Self, ScalarError> {
        let num = Fp { v: bigint_mod(q.numer(), m.0), p: m.0 };
        let den = Fp { v: bigint_mod(q.denom(), m.0), p: m.0 };
        let inv = den.inv().ok_or_else(|| ScalarError::NotInvertible(format!("{} mod {}", q.denom(), m.0)))?;
        Ok(num * inv)
    }

    fn eq_zero(&self) -> bool {
        self.v == 0
    }

    fn inv(&self) -> Option<Self> {
        (self.v != 0).then(|| self.pow_u64(self.p as u64 - 2))
    }

    fn characteristic(m: &Modulus) -> u64 {
        m.0 as u64
    }

    fn is_square(&self) -> Result<bool, ScalarError> {
        match self.legendre() {
            0 => Err(ScalarError::ZeroInput),
            l => Ok(l == 1),
        }
    }

    fn sqrt(&self) -> Option<Self> {
        if self.v == 0 {
            return Some(*self);
        }
        if self.legendre() != 1 {
            return None;
        }
        // Tonelli-Shanks.
        let p = self.p as u64;
        let (mut q, mut s) = (p - 1, 0u32);
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = Fp { v: 2, p: self.p };
        while z.legendre() != -1 {
            z.v += 1;
        }
        let mut c = z.pow_u64(q);
        let mut r = self.pow_u64((q + 1) / 2);
        let mut t = self.pow_u64(q);
        let mut m = s;
        while t.v != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2.v != 1 {
                t2 = t2 * t2;
                i += 1;
            }
            let b = c.pow_u64(1u64 << (m - i - 1));
            r = r * b;
            c = b * b;
            t = t * c;
            m = i;
        }
        Some(r)
    }

    fn parse(m: &Modulus, s: &str) -> Result<Self, ScalarError> {
        let t = s.trim();
        if let Some((r, p)) = t.split_once("mod") {
            let p: u64 = p.trim().parse().map_err(|_| ScalarError::Parse(s.into(), "bad modulus".into()))?;
            if p != m.0 as u64 {
                return Err(ScalarError::ContextMismatch);
            }
            return Self::from_rational(m, &parse_rational(r)?);
        }
        Self::from_rational(m, &parse_rational(t)?)
    }

    fn describe(m: &Modulus) -> FieldCtx {
        FieldCtx::PrimeField(*m)
    }

    fn to_rational(&self) -> Option<BigRational> {
        None
    }
}

impl Fp {
    /// Representative in `(-p/2, p/2]`, handy for printing and tests.
    pub fn centered(self) -> i64 {
        let v = self.v as i64;
        if v > self.p as i64 / 2 {
            v - self.p as i64
        } else {
            v
        }
    }
}
