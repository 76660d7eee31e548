//! Slow reference implementations for cross-checking the production code.
//!
//! Nothing here calls into `arith`, `hilbert` or `lattice`; each routine
//! carries its own arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::NumField;

/// Largest modulus the exhaustive search accepts; keeps every product inside i128.
const MAX_MODULUS: i128 = 1 << 62;

fn small_valuation(mut n: i128, p: i128) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// +1 iff z^2 = a x^2 + b y^2 has a solution modulo p^k with x, y, z not all
/// divisible by p.
///
/// Any primitive solution can be scaled so that one coordinate equals 1, so
/// the search fixes each coordinate in turn and enumerates the other two
/// digit by digit: residues mod p^{j+1} that solve the congruence reduce to
/// residues mod p^j that solve it, so extending only surviving prefixes still
/// visits every solution mod p^k.
pub fn hilbert_bruteforce(a: &BigInt, b: &BigInt, p: &BigInt, k: u32) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroSymbolEntry);
    }
    let p = p.to_i128().filter(|&p| p >= 2).ok_or_else(|| Error::NotPrime(p.clone()))?;
    let (ai, bi) = match (a.to_i128(), b.to_i128()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::Internal("oracle input too large".into())),
    };
    let needed = 3 + 2 * small_valuation(ai, p).max(small_valuation(bi, p));
    if k < needed {
        return Err(Error::Internal(format!("oracle precision {k} below lifting threshold {needed}")));
    }
    let mut modulus: i128 = 1;
    for _ in 0..k {
        modulus = modulus
            .checked_mul(p)
            .filter(|m| *m <= MAX_MODULUS)
            .ok_or_else(|| Error::Internal("oracle modulus too large".into()))?;
    }
    let (a, b) = (ai.rem_euclid(modulus), bi.rem_euclid(modulus));
    // residual z^2 - a x^2 - b y^2, with one coordinate pinned to 1
    let forms: [&dyn Fn(i128, i128) -> i128; 3] =
        [&|y, z| z * z - a - b * y % modulus * y, &|x, z| z * z - a * x % modulus * x - b, &|x, y| {
            1 - a * x % modulus * x - b * y % modulus * y
        }];
    for form in forms {
        let search = Search { p, k, form };
        for u in 0..p {
            for w in 0..p {
                if search.solves(u, w, p) && search.extend(u, w, 1, p) {
                    return Ok(1);
                }
            }
        }
    }
    Ok(-1)
}

struct Search<'a> {
    p: i128,
    k: u32,
    form: &'a dyn Fn(i128, i128) -> i128,
}

impl Search<'_> {
    fn solves(&self, u: i128, w: i128, m: i128) -> bool {
        (self.form)(u % m, w % m).rem_euclid(m) == 0
    }

    /// `(u, w)` solves the congruence mod `pj = p^level`.
    fn extend(&self, u: i128, w: i128, level: u32, pj: i128) -> bool {
        if level == self.k {
            return true;
        }
        let next = pj * self.p;
        for s in 0..self.p {
            for t in 0..self.p {
                let (u2, w2) = (u + s * pj, w + t * pj);
                if self.solves(u2, w2, next) && self.extend(u2, w2, level + 1, next) {
                    return true;
                }
            }
        }
        false
    }
}

fn poly_mul_mod(x: &[BigRational], y: &[BigRational], f: &[BigInt]) -> Vec<BigRational> {
    let n = f.len() - 1;
    let mut prod = vec![BigRational::zero(); x.len() + y.len()];
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            prod[i + j] += xi * yj;
        }
    }
    // f is monic: x^n = -(f_0 + ... + f_{n-1} x^{n-1})
    for d in (n..prod.len()).rev() {
        let c = std::mem::replace(&mut prod[d], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        for (i, fi) in f[..n].iter().enumerate() {
            prod[d - n + i] -= &c * BigRational::from_integer(fi.clone());
        }
    }
    prod.truncate(n);
    prod
}

/// Integer coordinates of `v` in the basis `cols`, if they exist.
fn solve_integral(cols: &[Vec<BigRational>], v: &[BigRational]) -> Option<bool> {
    let n = v.len();
    // augmented n x (n+1), rows = coordinates
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(v[r].clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for c in col..=n {
            m[col][c] = &m[col][c] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.iter().all(|row| row[n].is_integer()))
}

/// True iff every product of two basis vectors (columns) reduces into their span.
pub fn closure_bruteforce(cols: &[Vec<BigRational>], field: &NumField) -> bool {
    let f = field.poly();
    for x in cols {
        for y in cols {
            let prod = poly_mul_mod(x, y, f);
            match solve_integral(cols, &prod) {
                Some(true) => {}
                _ => return false,
            }
        }
    }
    true
}

/// |det M| as the product of the Smith normal form diagonal.
pub fn snf_index(m: &[Vec<BigInt>]) -> Result<BigInt> {
    snf_diagonal(m)?.into_iter().try_fold(BigInt::one(), |acc, d| {
        if d.is_zero() {
            Err(Error::NotFullRank)
        } else {
            Ok(acc * d)
        }
    })
}

pub fn snf_diagonal(m: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: m.first().map_or(0, Vec::len) });
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    for t in 0..n {
        loop {
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return Err(Error::NotFullRank);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in t..n {
                        let d = &q * &a[t][j];
                        a[i][j] -= d;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for i in t..n {
                        let d = &q * &a[i][t];
                        a[i][j] -= d;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..n {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
    }
    Ok((0..n).map(|i| a[i][i].abs()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(hilbert_bruteforce(&b(-1), &b(-1), &b(2), 8).unwrap(), -1);
        assert_eq!(hilbert_bruteforce(&b(1), &b(7), &b(3), 3).unwrap(), 1);
        // 3 is not a square mod 5 and v_5(2) = v_5(3) = 0: the conic has points
        assert_eq!(hilbert_bruteforce(&b(2), &b(3), &b(5), 3).unwrap(), 1);
        assert_eq!(hilbert_bruteforce(&b(5), &b(2), &b(5), 5).unwrap(), -1);
        assert!(hilbert_bruteforce(&b(5), &b(2), &b(5), 3).is_err());
    }

    #[test]
    fn snf_examples() {
        let id = vec![vec![b(1), b(0)], vec![b(0), b(1)]];
        assert_eq!(snf_index(&id).unwrap(), b(1));
        assert_eq!(snf_index(&[vec![b(2), b(0)], vec![b(0), b(4)]]).unwrap(), b(8));
        // cofactor expansion along the middle row: 3 * (2*1 - 3*4) = -30
        let m = vec![vec![b(2), b(1), b(3)], vec![b(0), b(3), b(0)], vec![b(4), b(5), b(1)]];
        assert_eq!(snf_index(&m).unwrap(), b(30));
        assert_eq!(snf_diagonal(&[vec![b(2), b(0)], vec![b(0), b(3)]]).unwrap(), vec![b(1), b(6)]);
        assert!(snf_index(&[vec![b(1), b(2)], vec![b(2), b(4)]]).is_err());
    }
}
