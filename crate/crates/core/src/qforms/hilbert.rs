//! Hilbert symbols over Q, by the classical residue formulas.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::QFormError;
use crate::scalars::is_prime_u64;

/// A place of Q: a finite prime or the real place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl Place {
    pub fn prime(p: u64) -> Result<Self, QFormError> {
        if is_prime_u64(p) {
            Ok(Place::Prime(p))
        } else {
            Err(QFormError::BadPlace(p.to_string()))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Place {
    type Err = QFormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Place::Infinity),
            t => {
                let p: u64 = t.parse().map_err(|_| QFormError::BadPlace(s.to_string()))?;
                Place::prime(p)
            }
        }
    }
}

/// `n = p^k u` with `p` not dividing `u`.
fn split_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let pb = BigInt::from(p);
    let mut u = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = u.div_rem(&pb);
        if !r.is_zero() {
            return (k, u);
        }
        u = q;
        k += 1;
    }
}

fn legendre(u: &BigInt, p: u64) -> i8 {
    let r = u.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits");
    if r == 0 {
        return 0;
    }
    let (mut base, mut e, mut acc) = (r as u128, (p - 1) / 2, 1u128);
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

fn mod8(u: &BigInt) -> u64 {
    u.mod_floor(&BigInt::from(8)).to_u64().expect("residue fits")
}

/// `(a, b)_v` for nonzero integers.
pub fn hilbert_symbol_int(a: &BigInt, b: &BigInt, place: Place) -> Result<i8, QFormError> {
    if a.is_zero() || b.is_zero() {
        return Err(QFormError::ZeroEntry);
    }
    let p = match place {
        Place::Infinity => {
            return Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 });
        }
        Place::Prime(p) => p,
    };
    let (alpha, u) = split_valuation(a, p);
    let (beta, v) = split_valuation(b, p);
    let parity = if p == 2 {
        let (u8_, v8) = (mod8(&u), mod8(&v));
        let eps = |x: u64| ((x - 1) / 2) % 2;
        let omega = |x: u64| ((x * x - 1) / 8) % 2;
        (eps(u8_) * eps(v8) + alpha as u64 * omega(v8) + beta as u64 * omega(u8_)) % 2
    } else {
        let eps_p = ((p - 1) / 2) % 2;
        let mut e = (alpha as u64 * beta as u64 * eps_p) % 2;
        if beta % 2 == 1 && legendre(&u, p) == -1 {
            e ^= 1;
        }
        if alpha % 2 == 1 && legendre(&v, p) == -1 {
            e ^= 1;
        }
        e
    };
    Ok(if parity == 0 { 1 } else { -1 })
}

/// `(a, b)_v` for nonzero rationals. A fraction `n/d` has the square class of `n d`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i8, QFormError> {
    let a = a.numer() * a.denom();
    let b = b.numer() * b.denom();
    hilbert_symbol_int(&a, &b, place)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(a: i64, b: i64, v: Place) -> i8 {
        hilbert_symbol_int(&BigInt::from(a), &BigInt::from(b), v).unwrap()
    }

    // Independent oracle: (a,b)_p = 1 iff z^2 = a x^2 + b y^2 has a primitive
    // solution mod p^k for k large enough, searched exhaustively.
    fn brute(a: i64, b: i64, p: i64) -> i8 {
        let k = if p == 2 { 5 } else { 2 };
        let m = p.pow(k);
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if x % p == 0 && y % p == 0 && z % p == 0 {
                        continue;
                    }
                    if (a * x * x + b * y * y - z * z).rem_euclid(m) == 0 {
                        return 1;
                    }
                }
            }
        }
        -1
    }

    #[test]
    fn small_examples() {
        assert_eq!(h(-1, -1, Place::Infinity), -1);
        assert_eq!(h(-1, -1, Place::Prime(2)), -1);
        assert_eq!(h(-1, -1, Place::Prime(3)), 1);
        for b in [-7, -1, 2, 3, 10] {
            for p in [Place::Prime(2), Place::Prime(3), Place::Prime(5), Place::Infinity] {
                assert_eq!(h(1, b, p), 1);
            }
        }
    }

    #[test]
    fn matches_brute_force_at_small_primes() {
        // Squarefree inputs keep the mod p^k search conclusive.
        let vals = [-6i64, -5, -3, -2, -1, 1, 2, 3, 5, 6];
        for p in [3i64, 5] {
            for &a in &vals {
                for &b in &vals {
                    assert_eq!(h(a, b, Place::Prime(p as u64)), brute(a, b, p), "({a},{b})_{p}");
                }
            }
        }
        for &a in &[-3i64, -2, -1, 1, 2, 3, 6, -6] {
            for &b in &[-3i64, -2, -1, 1, 2, 3, 6, -6] {
                assert_eq!(h(a, b, Place::Prime(2)), brute(a, b, 2), "({a},{b})_2");
            }
        }
    }

    #[test]
    fn place_parsing() {
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Infinity);
        assert_eq!("7".parse::<Place>().unwrap(), Place::Prime(7));
        assert!("9".parse::<Place>().is_err());
        assert!("x".parse::<Place>().is_err());
        assert_eq!(Place::Infinity.to_string(), "inf");
    }
}
