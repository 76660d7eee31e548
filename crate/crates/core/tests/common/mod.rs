#![allow(dead_code)]

use maxsel::field::{make_field, AutMap, NumField};
use maxsel::lattice::{make_order, OrderLat};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

pub fn z(c: &[i64]) -> Vec<BigInt> {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn cyclic7() -> NumField {
    make_field(&z(&[-1, -2, 1, 1])).unwrap()
}

/// theta -> theta^2 - 2 on the cyclic cubic of conductor 7.
pub fn sigma7(l: &NumField) -> AutMap {
    AutMap::new(vec![q(-2), q(0), q(1)], l).unwrap()
}

pub fn int_matrix<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> Vec<Vec<BigInt>> {
    (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(lo..=hi))).collect()).collect()
}

pub fn to_rational(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Basis vectors (columns) of an upper triangular integer matrix with first
/// column e_1, so the span always contains 1.
pub fn triangular_candidate<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<BigRational>> {
    let mut entry = |i: usize, j: usize| -> i64 {
        if j == 0 {
            i64::from(i == 0)
        } else if i < j {
            rng.gen_range(-3..=3)
        } else if i == j {
            rng.gen_range(1..=4)
        } else {
            0
        }
    };
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        cols.push((0..n).map(|i| q(entry(i, j))).collect());
    }
    cols
}

/// A random order of L: Z[theta] perturbed by a triangular matrix, kept if closed.
pub fn random_order<R: Rng>(rng: &mut R, field: &NumField) -> OrderLat {
    loop {
        if let Ok(h) = make_order(&triangular_candidate(rng, field.degree()), field) {
            return h;
        }
    }
}

/// x^2 + a x + b, irreducible.
pub fn random_quadratic_field<R: Rng>(rng: &mut R) -> NumField {
    loop {
        let (a, b) = (rng.gen_range(-9..=9), rng.gen_range(-60..=60));
        if let Ok(l) = make_field(&z(&[b, a, 1])) {
            return l;
        }
    }
}

/// A random monic irreducible cubic with small coefficients.
pub fn random_cubic<R: Rng>(rng: &mut R) -> NumField {
    loop {
        let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-12..=12)).collect();
        if let Ok(l) = make_field(&z(&[c[0], c[1], c[2], 1])) {
            return l;
        }
    }
}

/// x^3 - a x^2 - (a + 3) x - 1 after the substitution x -> x + s; always cyclic.
pub fn shifted_simplest_cubic(a: i64, s: i64) -> NumField {
    // f(x) = x^3 + c2 x^2 + c1 x + c0
    let (c2, c1, c0) = (-a, -(a + 3), -1i64);
    // f(x + s) expanded
    let n2 = c2 + 3 * s;
    let n1 = c1 + 2 * c2 * s + 3 * s * s;
    let n0 = c0 + c1 * s + c2 * s * s + s * s * s;
    make_field(&z(&[n0, n1, n2, 1])).unwrap()
}
