//! Galois automorphisms of prime-degree fields, found numerically and
//! confirmed exactly.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modp::Fp;
use super::poly::{compose_mod, format_poly, QPoly};
use super::roots::{complex_roots, Cx, Fixed};
use super::NumField;
use crate::arith::is_prime_u64;
use crate::error::{Error, Result};

/// Bit precisions tried in turn by the numeric search.
pub const SEARCH_PRECISIONS: [u32; 5] = [200, 400, 800, 1600, 3200];

/// Number of unramified primes whose Frobenius cycle type is inspected.
const FROBENIUS_SAMPLES: usize = 100;

/// A field automorphism, given by the image of the generator: theta -> g(theta).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutMap {
    image: QPoly,
}

impl AutMap {
    /// Checks that `g` defines an automorphism of order `deg L` and wraps it.
    pub fn new(image: QPoly, field: &NumField) -> Option<AutMap> {
        let mut image = image;
        image.resize(field.degree(), BigRational::zero());
        let map = AutMap { image };
        map.verify(field).then_some(map)
    }

    pub fn image(&self) -> &[BigRational] {
        &self.image
    }

    /// f(g(x)) = 0 mod f, g != x, and g composed with itself deg(f) times is x.
    pub fn verify(&self, field: &NumField) -> bool {
        let f = field.poly();
        let fq: QPoly = f.iter().cloned().map(BigRational::from_integer).collect();
        if !compose_mod(&fq, &self.image, f).iter().all(Zero::is_zero) {
            return false;
        }
        let x = field.theta();
        if self.image == x {
            return false;
        }
        self.power(field.degree(), field).image == x
    }

    /// sigma(alpha) for alpha in power-basis coordinates.
    pub fn apply(&self, alpha: &[BigRational], field: &NumField) -> QPoly {
        compose_mod(alpha, &self.image, field.poly())
    }

    /// self after other: theta -> self(other(theta)).
    pub fn compose(&self, other: &AutMap, field: &NumField) -> AutMap {
        AutMap { image: self.apply(&other.image, field) }
    }

    pub fn power(&self, k: usize, field: &NumField) -> AutMap {
        let mut acc = AutMap { image: field.theta() };
        for _ in 0..k {
            acc = self.compose(&acc, field);
        }
        acc
    }

    /// Columns sigma(theta^k) in power-basis coordinates.
    pub fn matrix(&self, field: &NumField) -> Vec<Vec<BigRational>> {
        let n = field.degree();
        let mut cols = Vec::with_capacity(n);
        let mut pow = field.one();
        for _ in 0..n {
            cols.push(pow.clone());
            pow = field.mul(&pow, &self.image);
        }
        cols
    }

    pub fn to_poly_string(&self) -> String {
        format_poly(&self.image)
    }
}

/// Frobenius at an unramified prime of a Galois field of prime degree p is
/// either trivial or a p-cycle, so f splits completely or stays irreducible.
/// Any other pattern proves the field is not Galois.
fn frobenius_obstruction(field: &NumField) -> Option<u64> {
    let p = field.degree();
    let disc = field.disc();
    let mut seen = 0;
    let mut q = 2u64;
    while seen < FROBENIUS_SAMPLES {
        if is_prime_u64(q) && !(disc % BigInt::from(q)).is_zero() {
            seen += 1;
            let fp = Fp::new(q);
            let shape = fp.factor_shape(&fp.reduce(field.poly()));
            let trivial = shape.len() == p && shape.iter().all(|&(d, e)| d == 1 && e == 1);
            let cycle = shape == [(p, 1)];
            if !trivial && !cycle {
                return Some(q);
            }
        }
        q += 1;
    }
    None
}

/// A generator of Gal(L/Q) if L/Q is Galois, `None` if it provably is not.
pub fn find_automorphism(field: &NumField) -> Result<Option<AutMap>> {
    let f = field.poly();
    let n = field.degree();
    if n == 2 {
        let image = vec![-BigRational::from_integer(f[1].clone()), -BigRational::one()];
        return Ok(AutMap::new(image, field));
    }
    if frobenius_obstruction(field).is_some() {
        return Ok(None);
    }
    // disc(f) * sigma(theta) lies in Z[theta], which bounds the denominators.
    let denom = field.disc().abs();
    for prec in SEARCH_PRECISIONS {
        if let Some(found) = search_at_precision(field, &denom, prec) {
            return Ok(Some(found));
        }
    }
    Err(Error::AutomorphismInconclusive)
}

fn search_at_precision(field: &NumField, denom: &BigInt, prec: u32) -> Option<AutMap> {
    let f = field.poly();
    let n = field.degree();
    let fx = Fixed { prec };
    let roots = complex_roots(f, prec)?;
    let coeffs: Vec<Cx> = f.iter().map(|c| fx.from_int(c)).collect();
    // Lagrange basis: l_i(x) = (f(x) / (x - r_i)) / f'(r_i), as coefficient vectors
    let mut lagrange = Vec::with_capacity(n);
    for r in &roots {
        let mut quot = vec![fx.zero(); n];
        let mut carry = fx.zero();
        for k in (0..n).rev() {
            carry = fx.add(&fx.mul(&carry, r), &coeffs[k + 1]);
            quot[k] = carry.clone();
        }
        let mut deriv = fx.zero();
        for c in quot.iter().rev() {
            deriv = fx.add(&fx.mul(&deriv, r), c);
        }
        let quot: Vec<Cx> = quot.iter().map(|c| fx.div(c, &deriv)).collect::<Option<_>>()?;
        lagrange.push(quot);
    }
    let tol = BigInt::one() << (prec / 2);
    // sigma permutes the roots as a p-cycle; pin r_0 -> r_1 and try every completion
    for rest in (2..n).permutations(n - 2) {
        let cycle: Vec<usize> = [0, 1].into_iter().chain(rest).collect();
        let mut target = vec![0usize; n];
        for k in 0..n {
            target[cycle[k]] = cycle[(k + 1) % n];
        }
        let mut image = Vec::with_capacity(n);
        let mut ok = true;
        for k in 0..n {
            let mut c = fx.zero();
            for i in 0..n {
                c = fx.add(&c, &fx.mul(&roots[target[i]], &lagrange[i][k]));
            }
            let (num, dist) = fx.round_real(&fx.scale_int(&c, denom));
            if dist > tol {
                ok = false;
                break;
            }
            image.push(BigRational::new(num, denom.clone()));
        }
        if ok {
            if let Some(map) = AutMap::new(image, field) {
                return Some(map);
            }
        }
    }
    None
}
