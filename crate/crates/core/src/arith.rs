//! Exact integer primitives: valuations, factorization, Kronecker symbols and
//! squarefree parts. Everything takes `BigInt`; fixed-width integers appear
//! only inside the factorization engine, behind an explicit size limit.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A place of Q: a finite prime or the real place.
///
/// Ordering puts finite places first, ascending, and the real place last.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(BigInt),
    Infinite,
}

impl Place {
    pub fn finite(p: impl Into<BigInt>) -> Result<Place> {
        let p = p.into();
        if !is_prime(&p)? {
            return Err(Error::NotPrime(p));
        }
        Ok(Place::Finite(p))
    }

    pub fn prime(&self) -> Option<&BigInt> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Place::Finite(_))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Place> {
        match s.trim() {
            "inf" | "infinity" | "oo" | "∞" | "real" => Ok(Place::Infinite),
            t => {
                let p = BigInt::from_str(t).map_err(|_| Error::Parse(format!("bad place {t:?}")))?;
                Place::finite(p)
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Place, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `sign * prod(p^e)`, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: BTreeMap<BigInt, u32>,
}

impl Factorization {
    pub fn value(&self) -> BigInt {
        let mut n = BigInt::from(self.sign);
        for (p, &e) in &self.factors {
            n *= num_traits::pow(p.clone(), e as usize);
        }
        n
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.keys()
    }
}

/// Default bound on |n| accepted by [`factor`].
pub fn default_factor_limit() -> BigInt {
    BigInt::one() << 64
}

pub fn valuation(n: &BigInt, p: &BigInt) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    if *p <= BigInt::one() {
        return Err(Error::NotPrime(p.clone()));
    }
    let mut m = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Ok(e);
        }
        m = q;
        e += 1;
    }
}

/// Splits `n = p^v * u` with `p ∤ u`.
pub fn split_valuation(n: &BigInt, p: &BigInt) -> Result<(u32, BigInt)> {
    let v = valuation(n, p)?;
    Ok((v, n / num_traits::pow(p.clone(), v as usize)))
}

pub fn factor(n: &BigInt) -> Result<Factorization> {
    factor_with_limit(n, &default_factor_limit())
}

pub fn factor_with_limit(n: &BigInt, limit: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let m = n.abs();
    if &m > limit || m.bits() > 127 {
        return Err(Error::FactorLimitExceeded(n.clone()));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut factors = BTreeMap::new();
    for (p, e) in factor_u128(m.to_u128().expect("checked above")) {
        factors.insert(BigInt::from(p), e);
    }
    Ok(Factorization { sign, factors })
}

pub fn is_prime(n: &BigInt) -> Result<bool> {
    if *n < BigInt::from(2) {
        return Ok(false);
    }
    if n > &default_factor_limit() {
        return Err(Error::FactorLimitExceeded(n.clone()));
    }
    let m = n.to_u128().expect("bounded");
    if m > u64::MAX as u128 {
        // only 2^64 itself reaches here
        return Ok(false);
    }
    Ok(is_prime_u64(m as u64))
}

const TRIAL_BOUND: u64 = 1_000_000;

fn factor_u128(mut m: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let push = |p: u128, out: &mut Vec<(u128, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some(entry) => entry.1 += 1,
        None => out.push((p, 1)),
    };
    while m.is_multiple_of(2) {
        m /= 2;
        push(2, &mut out);
    }
    let mut d: u128 = 3;
    while d <= TRIAL_BOUND as u128 && d * d <= m {
        while m.is_multiple_of(d) {
            m /= d;
            push(d, &mut out);
        }
        d += 2;
    }
    if m > 1 {
        // m has no factor below min(TRIAL_BOUND, sqrt m); what remains fits in u64.
        let m = u64::try_from(m).expect("cofactor of a value at most 2^64");
        let mut stack = vec![m];
        while let Some(c) = stack.pop() {
            if c == 1 {
                continue;
            }
            if (c as u128) < (TRIAL_BOUND as u128).pow(2) || is_prime_u64(c) {
                push(c as u128, &mut out);
            } else {
                let d = pollard_brent(c);
                stack.push(d);
                stack.push(c / d);
            }
        }
    }
    out.sort();
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin; this base set is exact for all n < 3.3e24.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Returns a nontrivial divisor of the odd composite `n`.
fn pollard_brent(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = 2u64;
        const BLOCK: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BLOCK.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += BLOCK;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Kronecker symbol (a/n), extending the Jacobi symbol to all n.
pub fn kronecker(a: &BigInt, n: &BigInt) -> i8 {
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    let mut result: i8 = 1;
    let mut n = n.clone();
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    let twos = n.trailing_zeros().unwrap_or(0);
    if twos > 0 {
        if a.is_even() {
            return 0;
        }
        n >>= twos;
        let a8 = a.mod_floor(&BigInt::from(8)).to_u8().unwrap();
        if twos % 2 == 1 && (a8 == 3 || a8 == 5) {
            result = -result;
        }
    }
    result * jacobi(a, &n)
}

/// Jacobi symbol for odd positive n.
fn jacobi(a: &BigInt, n: &BigInt) -> i8 {
    debug_assert!(n.is_positive() && n.is_odd());
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t: i8 = 1;
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        let z = a.trailing_zeros().unwrap_or(0);
        if z > 0 {
            a >>= z;
            let n8 = (&n % &eight).to_u8().unwrap();
            if z % 2 == 1 && (n8 == 3 || n8 == 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % &four) == BigInt::from(3) && (&n % &four) == BigInt::from(3) {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// `d` divided by its largest square divisor; sign is kept.
pub fn squarefree_part(d: &BigInt) -> Result<BigInt> {
    let fac = factor(d)?;
    let mut s = BigInt::from(fac.sign);
    for (p, &e) in &fac.factors {
        if e % 2 == 1 {
            s *= p;
        }
    }
    Ok(s)
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Radical-free check used for discriminants.
pub fn is_squarefree(n: &BigInt) -> Result<bool> {
    Ok(factor(n)?.factors.values().all(|&e| e == 1))
}
