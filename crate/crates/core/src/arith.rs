//! Exact rational arithmetic and the residue/valuation primitives.
//!
//! Every quantity in the engine is a [`Rational`] backed by arbitrary-precision
//! integers. Nothing here rounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("modulus must be positive, got {0}")]
    BadModulus(i64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
}

/// `n/d` as an exact rational. Panics on `d == 0`; use [`try_rat`] for untrusted input.
pub fn rat(n: i64, d: i64) -> Rational {
    try_rat(n, d).expect("zero denominator")
}

pub fn try_rat(n: i64, d: i64) -> Result<Rational, ArithError> {
    if d == 0 {
        return Err(ArithError::DivisionByZero);
    }
    Ok(Rational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Smallest non-negative residue of `a` modulo `r`.
pub fn residue(a: i64, r: i64) -> Result<i64, ArithError> {
    if r <= 0 {
        return Err(ArithError::BadModulus(r));
    }
    Ok(a.rem_euclid(r))
}

/// `F_r(x) = (x mod r)(-x mod r) / 2r`.
pub fn sigma_pair(x: i64, r: i64) -> Result<Rational, ArithError> {
    let a = residue(x, r)?;
    let b = residue(-x, r)?;
    Ok(rat(a * b, 2 * r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

pub fn p_adic_valuation(x: &Rational, p: u64) -> Result<Valuation, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let p = BigInt::from(p);
    Ok(Valuation::Finite(
        valuation_int(x.numer(), &p) as i64 - valuation_int(x.denom(), &p) as i64,
    ))
}

fn valuation_int(n: &BigInt, p: &BigInt) -> u64 {
    let mut n = n.abs();
    let mut e = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        e += 1;
    }
    e
}

/// `if(S)`: 1 when the statement holds, else 0.
pub fn indicator(statement: bool) -> u64 {
    statement as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as sorted `(p, a)` pairs.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut a = 0;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The exact prime powers `p^a ∥ n`, ordered by prime.
pub fn prime_power_parts(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, a)| p.pow(a)).collect()
}

pub fn nu(n: u64, p: u64) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut n = n;
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn is_integral(x: &Rational) -> bool {
    x.is_integer()
}

pub fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

/// Inverse of `a` modulo `m` when it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let g = a.extended_gcd(&m);
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m))
}

/// Chinese remainder for pairwise coprime moduli. Returns the residue mod the product.
pub fn crt(parts: &[(u64, u64)]) -> (u64, u64) {
    let mut acc: (u128, u128) = (0, 1);
    for &(r, m) in parts {
        let (a, n) = acc;
        let m = m as u128;
        let r = r as u128 % m;
        let mut x = a;
        while x % m != r {
            x += n;
        }
        acc = (x, n * m);
    }
    (acc.0 as u64, acc.1 as u64)
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// Exact display: `n` for integers, `n/d` otherwise.
pub fn exact_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
    display: String,
}

/// Serde adapter: `{"num": "...", "den": "...", "display": "..."}`.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        RationalRepr {
            num: x.numer().to_string(),
            den: x.denom().to_string(),
            display: exact_string(x),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let repr = RationalRepr::deserialize(d)?;
        let num: BigInt = repr.num.parse().map_err(serde::de::Error::custom)?;
        let den: BigInt = repr.den.parse().map_err(serde::de::Error::custom)?;
        if !den.is_positive() {
            return Err(serde::de::Error::custom("denominator must be positive"));
        }
        Ok(Rational::new(num, den))
    }
}

pub mod serde_rational_vec {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "super::serde_rational")] Rational);

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Wrap> = xs.iter().cloned().map(Wrap).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v: Vec<Wrap> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|w| w.0).collect())
    }
}

pub mod serde_rational_opt {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "super::serde_rational")] Rational);

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        x.clone().map(Wrap).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_examples() {
        assert_eq!(residue(-5, 3), Ok(1));
        assert_eq!(residue(7, 7), Ok(0));
        assert_eq!(residue(22, 11), Ok(0));
        assert_eq!(residue(3, 0), Err(ArithError::BadModulus(0)));
    }

    #[test]
    fn sigma_pair_examples() {
        assert_eq!(sigma_pair(0, 7).unwrap(), zero());
        assert_eq!(sigma_pair(2, 5).unwrap(), rat(3, 5));
        assert_eq!(sigma_pair(2, 11).unwrap(), rat(9, 11));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(p_adic_valuation(&int(28), 2), Ok(Valuation::Finite(2)));
        assert_eq!(p_adic_valuation(&rat(1, 6), 3), Ok(Valuation::Finite(-1)));
        assert_eq!(p_adic_valuation(&zero(), 5), Ok(Valuation::Infinite));
        assert_eq!(p_adic_valuation(&int(5), 6), Err(ArithError::NotPrime(6)));
    }

    #[test]
    fn indicator_examples() {
        assert_eq!(indicator(true), 1);
        assert_eq!(indicator(false), 0);
        assert_eq!(indicator((1 + 2) % 3 == 0), 1);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(try_rat(1, 0), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn crt_combines() {
        assert_eq!(crt(&[(1, 2), (0, 5), (0, 7)]), (35, 70));
        assert_eq!(crt(&[]), (0, 1));
    }

    #[test]
    fn factor_and_divisors() {
        assert_eq!(prime_power_parts(84), vec![4, 3, 7]);
        assert_eq!(prime_power_parts(1), Vec::<u64>::new());
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn rational_parse_round_trip() {
        let x = rat(-6259, 84);
        assert_eq!(parse_rational(&exact_string(&x)), Some(x));
        assert_eq!(parse_rational("3/0"), None);
    }
}
