//! Quadratic Hilbert symbols over Q and ramification of quaternion algebras.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{factor, kronecker, split_valuation, Place};
use crate::error::{Error, Result};

/// A quaternion algebra over Q, either as a symbol algebra (a,b) or through
/// its set of ramified places.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuatAlg {
    Symbol { a: BigInt, b: BigInt },
    Ramification { finite: BTreeSet<BigInt>, infinite: bool },
}

impl QuatAlg {
    pub fn symbol(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<QuatAlg> {
        let (a, b) = (a.into(), b.into());
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroSymbolEntry);
        }
        Ok(QuatAlg::Symbol { a, b })
    }

    /// Builds the algebra from its ramified places. The total number of
    /// ramified places of a quaternion algebra over Q is even.
    pub fn from_ramification<I, T>(finite: I, infinite: bool) -> Result<QuatAlg>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut set = BTreeSet::new();
        for p in finite {
            let place = Place::finite(p)?;
            if let Place::Finite(p) = place {
                set.insert(p);
            }
        }
        let count = set.len() + usize::from(infinite);
        if count % 2 == 1 {
            return Err(Error::RamificationParity(count));
        }
        Ok(QuatAlg::Ramification { finite: set, infinite })
    }

    /// The matrix algebra M_2(Q).
    pub fn split() -> QuatAlg {
        QuatAlg::Ramification { finite: BTreeSet::new(), infinite: false }
    }

    pub fn finite_ramified(&self) -> Result<BTreeSet<BigInt>> {
        Ok(ramified_set(self)?.into_iter().filter_map(|v| v.prime().cloned()).collect())
    }
}

/// (a,b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution in Q_v.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, v: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroSymbolEntry);
    }
    let p = match v {
        Place::Infinite => {
            return Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 });
        }
        Place::Finite(p) => p,
    };
    let (alpha, u) = split_valuation(a, p)?;
    let (beta, w) = split_valuation(b, p)?;
    if *p == BigInt::from(2) {
        let eight = BigInt::from(8);
        let u8 = u.mod_floor(&eight).to_u32().unwrap();
        let w8 = w.mod_floor(&eight).to_u32().unwrap();
        let eps = |x: u32| ((x - 1) / 2) % 2;
        let omega = |x: u32| ((x * x - 1) / 8) % 2;
        let e = eps(u8) * eps(w8) + alpha * omega(w8) + beta * omega(u8);
        return Ok(if e % 2 == 0 { 1 } else { -1 });
    }
    // odd p: (-1)^{alpha beta eps(p)} (u/p)^beta (w/p)^alpha
    let mut s: i8 = 1;
    let p_mod4 = (p % BigInt::from(4)).to_u32().unwrap();
    if alpha % 2 == 1 && beta % 2 == 1 && p_mod4 == 3 {
        s = -s;
    }
    if beta % 2 == 1 {
        s *= kronecker(&u, p);
    }
    if alpha % 2 == 1 {
        s *= kronecker(&w, p);
    }
    Ok(s)
}

/// The only places where (a,b)_v can be -1: 2, the real place and primes of ab.
fn probed_places(a: &BigInt, b: &BigInt) -> Result<BTreeSet<Place>> {
    let mut places = BTreeSet::new();
    places.insert(Place::Finite(BigInt::from(2)));
    places.insert(Place::Infinite);
    for n in [a, b] {
        for p in factor(n)?.primes() {
            places.insert(Place::Finite(p.clone()));
        }
    }
    Ok(places)
}

pub fn ramified_set(alg: &QuatAlg) -> Result<BTreeSet<Place>> {
    match alg {
        QuatAlg::Ramification { finite, infinite } => {
            let mut out: BTreeSet<Place> = finite.iter().cloned().map(Place::Finite).collect();
            if *infinite {
                out.insert(Place::Infinite);
            }
            Ok(out)
        }
        QuatAlg::Symbol { a, b } => {
            let mut out = BTreeSet::new();
            for v in probed_places(a, b)? {
                if hilbert_symbol(a, b, &v)? == -1 {
                    out.insert(v);
                }
            }
            Ok(out)
        }
    }
}

/// Product formula check; a `false` here means a bug in [`hilbert_symbol`].
pub fn verify_reciprocity(a: &BigInt, b: &BigInt) -> Result<bool> {
    let mut prod: i8 = 1;
    for v in probed_places(a, b)? {
        prod *= hilbert_symbol(a, b, &v)?;
    }
    Ok(prod == 1)
}
