//! Number fields L = Q[x]/(f) of prime degree.
//!
//! Elements are coefficient vectors in the power basis 1, theta, ...,
//! theta^{p-1}. The maximal order is never computed from scratch: Z[theta]
//! is accepted when Dedekind's criterion certifies it at every prime whose
//! square divides disc(f), and otherwise the caller may supply a basis,
//! which is checked.

mod galois;
pub mod modp;
pub mod poly;
pub mod roots;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub use galois::{find_automorphism, AutMap, SEARCH_PRECISIONS};

use self::modp::Fp;
use self::poly::{divrem_monic_z, mul_mod_q, mul_z, trim_z, ZPoly};
use self::roots::{complex_roots, Fixed};
use crate::arith::{factor, is_perfect_square, is_prime_u64, Place};
use crate::error::{Error, Result};
use crate::lattice::{is_multiplicatively_closed, Lattice};

/// An element of L in power-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    pub coords: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumField {
    degree: usize,
    poly: ZPoly,
    disc: BigInt,
    integral_basis: Option<Lattice>,
}

/// Residue degrees and ramification indices of the primes above p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitShape {
    /// (residue degree, ramification index), sorted.
    pub factors: Vec<(usize, u32)>,
}

impl SplitShape {
    pub fn is_nonsplit(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn is_inert(&self) -> bool {
        self.is_nonsplit() && self.factors[0].1 == 1
    }

    pub fn is_totally_ramified(&self) -> bool {
        self.is_nonsplit() && self.factors[0].0 == 1
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|&(f, e)| f * e as usize).sum()
    }

    pub fn describe(&self) -> &'static str {
        if self.is_inert() {
            "inert"
        } else if self.is_totally_ramified() {
            "totally ramified"
        } else if self.factors.iter().all(|&(f, e)| f == 1 && e == 1) {
            "split"
        } else {
            "partially split"
        }
    }
}

pub fn make_field(f: &[BigInt]) -> Result<NumField> {
    let f = trim_z(f.to_vec());
    if f.last().is_none_or(|l| !l.is_one()) {
        return Err(Error::NotMonic);
    }
    let degree = f.len() - 1;
    if degree < 2 || !is_prime_u64(degree as u64) {
        return Err(Error::CompositeDegree(degree));
    }
    let disc = poly::discriminant(&f);
    check_irreducible(&f, &disc)?;
    Ok(NumField { degree, poly: f, disc, integral_basis: None })
}

/// Irreducibility of a monic f of prime degree.
///
/// One prime q with f mod q irreducible is a certificate. Failing that,
/// the factor degrees allowed by each reduction are intersected; an empty
/// intersection is also a certificate. What remains is settled by an exact
/// search for a factor.
fn check_irreducible(f: &[BigInt], disc: &BigInt) -> Result<()> {
    if disc.is_zero() {
        return Err(Error::Reducible);
    }
    let n = f.len() - 1;
    let mut possible: BTreeSet<usize> = (1..n).collect();
    let mut seen = 0;
    let mut q = 2u64;
    while seen < 200 {
        if is_prime_u64(q) && !(disc % BigInt::from(q)).is_zero() {
            seen += 1;
            let fp = Fp::new(q);
            let shape = fp.factor_shape(&fp.reduce(f));
            if shape.len() == 1 {
                return Ok(());
            }
            let mut sums = BTreeSet::from([0usize]);
            for &(d, _) in &shape {
                let shifted: Vec<usize> = sums.iter().map(|s| s + d).collect();
                sums.extend(shifted);
            }
            possible.retain(|d| sums.contains(d));
            if possible.is_empty() {
                return Ok(());
            }
        }
        q += 1;
    }
    if n <= 3 {
        // a factor must be linear, i.e. an integer root dividing f(0)
        if f[0].is_zero() {
            return Err(Error::Reducible);
        }
        let fac = factor(&f[0])?;
        let mut divisors = vec![BigInt::one()];
        for (p, &e) in &fac.factors {
            let mut next = Vec::new();
            for d in &divisors {
                let mut pk = BigInt::one();
                for _ in 0..=e {
                    next.push(d * &pk);
                    pk *= p;
                }
            }
            divisors = next;
        }
        for d in divisors {
            for r in [d.clone(), -d] {
                if eval_z(f, &r).is_zero() {
                    return Err(Error::Reducible);
                }
            }
        }
        return Ok(());
    }
    if find_factor_numerically(f, &possible).is_some() {
        return Err(Error::Reducible);
    }
    Err(Error::IrreducibilityUndecided)
}

fn eval_z(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Rounds products of root subsets to integer polynomials and keeps any that
/// divide f exactly.
fn find_factor_numerically(f: &[BigInt], degrees: &BTreeSet<usize>) -> Option<ZPoly> {
    let n = f.len() - 1;
    for prec in SEARCH_PRECISIONS {
        let fx = Fixed { prec };
        let Some(roots) = complex_roots(f, prec) else { continue };
        for &d in degrees.iter().filter(|&&d| 2 * d <= n) {
            for subset in itertools::Itertools::combinations(0..n, d) {
                let mut prod = vec![fx.from_int(&BigInt::one())];
                for &i in &subset {
                    let mut next = vec![fx.zero(); prod.len() + 1];
                    for (k, c) in prod.iter().enumerate() {
                        next[k + 1] = fx.add(&next[k + 1], c);
                        next[k] = fx.sub(&next[k], &fx.mul(c, &roots[i]));
                    }
                    prod = next;
                }
                let candidate: ZPoly = prod.iter().map(|c| fx.round_real(c).0).collect();
                let (_, rem) = divrem_monic_z(f, &candidate);
                if rem.is_empty() {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

impl NumField {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Defining polynomial, constant term first.
    pub fn poly(&self) -> &[BigInt] {
        &self.poly
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn integral_basis(&self) -> Option<&Lattice> {
        self.integral_basis.as_ref()
    }

    pub fn one(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.degree];
        v[0] = BigRational::one();
        v
    }

    pub fn theta(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.degree];
        v[1] = BigRational::one();
        v
    }

    pub fn elem(&self, coords: Vec<BigRational>) -> Result<FieldElem> {
        if coords.len() != self.degree {
            return Err(Error::DimensionMismatch { expected: self.degree, found: coords.len() });
        }
        Ok(FieldElem { coords })
    }

    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        mul_mod_q(a, b, &self.poly)
    }

    pub fn pow(&self, a: &[BigRational], k: usize) -> Vec<BigRational> {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Tr(theta^k) for k < 2p - 1, via Newton's identities.
    fn power_sums(&self) -> Vec<BigInt> {
        let n = self.degree;
        let a = &self.poly; // a[n] = 1
        let mut s = vec![BigInt::from(n)];
        for k in 1..(2 * n - 1) {
            let mut v = BigInt::zero();
            for i in 1..=k.min(n) {
                let coeff = &a[n - i];
                if i == k {
                    v -= coeff * BigInt::from(k);
                } else {
                    v -= coeff * &s[k - i];
                }
            }
            s.push(v);
        }
        s
    }

    pub fn trace(&self, a: &[BigRational]) -> BigRational {
        let s = self.power_sums();
        a.iter().zip(&s).map(|(c, t)| c * BigRational::from_integer(t.clone())).sum()
    }

    /// det(Tr(w_i w_j)) for the given basis.
    pub fn discriminant_of(&self, basis: &[Vec<BigRational>]) -> BigRational {
        let s = self.power_sums();
        let tr = |v: &[BigRational]| -> BigRational {
            v.iter().zip(&s).map(|(c, t)| c * BigRational::from_integer(t.clone())).sum()
        };
        let n = basis.len();
        let gram: Vec<Vec<BigRational>> =
            (0..n).map(|i| (0..n).map(|j| tr(&self.mul(&basis[i], &basis[j]))).collect()).collect();
        crate::lattice::det_rational(gram)
    }

    /// Attaches a user-supplied maximal order (basis vectors as columns).
    pub fn with_integral_basis(mut self, cols: &[Vec<BigRational>]) -> Result<NumField> {
        let bad = |m: &str| Error::InvalidIntegralBasis(m.to_string());
        let lat = Lattice::from_columns(cols, self.degree).map_err(|_| bad("not full rank"))?;
        if !lat.contains(&self.one()) || !lat.contains(&self.theta()) {
            return Err(bad("lattice must contain 1 and theta"));
        }
        if !is_multiplicatively_closed(&lat, &self) {
            return Err(bad("not multiplicatively closed"));
        }
        let d = self.discriminant_of(&lat.columns());
        if !d.is_integer() || d.is_zero() {
            return Err(bad("discriminant is not a nonzero integer"));
        }
        let quotient = BigRational::from_integer(self.disc.clone()) / d;
        if !quotient.is_integer() || !is_perfect_square(&quotient.to_integer()) {
            return Err(bad("discriminant does not divide disc(f) with square quotient"));
        }
        self.integral_basis = Some(lat);
        Ok(self)
    }

    /// Dedekind's criterion: true iff q does not divide [O_L : Z[theta]].
    pub fn dedekind_maximal_at(&self, q: u64) -> bool {
        let fp = Fp::new(q);
        let fbar = fp.reduce(&self.poly);
        let parts = fp.squarefree(&fbar);
        let mut rad = vec![1u64];
        for (g, _) in &parts {
            rad = fp.poly_mul(&rad, g);
        }
        let (h, r) = fp.divrem(&fbar, &rad);
        debug_assert!(r.is_empty());
        let lift = |p: &[u64]| -> ZPoly { p.iter().map(|&c| BigInt::from(c)).collect() };
        let gh = mul_z(&lift(&rad), &lift(&h));
        let qq = BigInt::from(q);
        let len = self.poly.len().max(gh.len());
        let big_f: ZPoly = (0..len)
            .map(|i| {
                let a = self.poly.get(i).cloned().unwrap_or_default();
                let b = gh.get(i).cloned().unwrap_or_default();
                let diff = a - b;
                debug_assert!((&diff % &qq).is_zero());
                diff / &qq
            })
            .collect();
        let fbig = fp.reduce(&big_f);
        let g = fp.gcd(&fp.gcd(&fbig, &rad), &h);
        g.len() <= 1
    }

    /// Whether q is coprime to [O_L : Z[theta]], if that can be certified.
    pub fn index_coprime_to(&self, q: &BigInt) -> Result<bool> {
        if !(&self.disc % (q * q)).is_zero() {
            return Ok(true);
        }
        if let Some(ib) = &self.integral_basis {
            let index = ib.covolume().recip();
            return Ok(!(index.to_integer() % q).is_zero());
        }
        let qs = q.to_u64().filter(|&v| v < 1 << 62).ok_or_else(|| Error::PrimeTooLarge(q.clone()))?;
        Ok(self.dedekind_maximal_at(qs))
    }

    /// True when Z[theta] is certified to be the maximal order.
    pub fn power_basis_is_maximal(&self) -> Result<bool> {
        for (p, &e) in &factor(&self.disc)?.factors {
            if e >= 2 && !self.index_coprime_to(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Basis of O_L: the supplied integral basis, or Z[theta] when certified.
    pub fn maximal_order(&self) -> Result<Lattice> {
        if let Some(ib) = &self.integral_basis {
            return Ok(ib.clone());
        }
        if self.power_basis_is_maximal()? {
            return Ok(Lattice::standard(self.degree));
        }
        Err(Error::MaximalOrderUnavailable)
    }
}

pub fn is_galois(field: &NumField) -> Result<bool> {
    if field.degree() == 2 {
        return Ok(true);
    }
    Ok(find_automorphism(field)?.is_some())
}

/// Decomposition of the prime p in L, read off from f mod p.
pub fn splitting_type(field: &NumField, p: &BigInt) -> Result<SplitShape> {
    Place::finite(p.clone())?;
    if !field.index_coprime_to(p)? {
        return Err(Error::IndexDivisor(p.clone()));
    }
    let q = p.to_u64().filter(|&v| v < 1 << 62).ok_or_else(|| Error::PrimeTooLarge(p.clone()))?;
    let fp = Fp::new(q);
    Ok(SplitShape { factors: fp.factor_shape(&fp.reduce(field.poly())) })
}

/// Parses "c0,c1,...,cn" (constant term first).
pub fn parse_poly(s: &str) -> Result<ZPoly> {
    s.split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient {t:?}"))))
        .collect()
}

pub(crate) fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
