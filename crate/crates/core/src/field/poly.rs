//! Dense polynomials over Z and Q, constant term first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;
pub type QPoly = Vec<BigRational>;

pub fn trim_z(mut f: ZPoly) -> ZPoly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

pub fn trim_q(mut f: QPoly) -> QPoly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

pub fn to_q(f: &[BigInt]) -> QPoly {
    f.iter().cloned().map(BigRational::from_integer).collect()
}

pub fn derivative_z(f: &[BigInt]) -> ZPoly {
    f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

pub fn mul_z(f: &[BigInt], g: &[BigInt]) -> ZPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    trim_z(out)
}

/// Quotient and remainder of `f` by a monic integer polynomial.
pub fn divrem_monic_z(f: &[BigInt], m: &[BigInt]) -> (ZPoly, ZPoly) {
    let n = m.len() - 1;
    let mut r = f.to_vec();
    if r.len() <= n {
        return (Vec::new(), trim_z(r));
    }
    let mut q = vec![BigInt::zero(); r.len() - n];
    for d in (n..r.len()).rev() {
        let c = r[d].clone();
        if c.is_zero() {
            continue;
        }
        q[d - n] = c.clone();
        for (i, mi) in m.iter().enumerate() {
            r[d - n + i] -= &c * mi;
        }
    }
    r.truncate(n);
    (trim_z(q), trim_z(r))
}

/// `f mod m` for monic integer `m`, result padded to `deg m` coefficients.
pub fn rem_monic_q(f: &[BigRational], m: &[BigInt]) -> QPoly {
    let n = m.len() - 1;
    let mut r = f.to_vec();
    for d in (n..r.len()).rev() {
        let c = std::mem::replace(&mut r[d], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        for (i, mi) in m[..n].iter().enumerate() {
            r[d - n + i] -= &c * BigRational::from_integer(mi.clone());
        }
    }
    r.resize(n, BigRational::zero());
    r
}

pub fn mul_q(f: &[BigRational], g: &[BigRational]) -> QPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

pub fn mul_mod_q(f: &[BigRational], g: &[BigRational], m: &[BigInt]) -> QPoly {
    rem_monic_q(&mul_q(f, g), m)
}

/// `h(g(x)) mod m`, Horner style.
pub fn compose_mod(h: &[BigRational], g: &[BigRational], m: &[BigInt]) -> QPoly {
    let n = m.len() - 1;
    let mut acc = vec![BigRational::zero(); n];
    for c in h.iter().rev() {
        acc = mul_mod_q(&acc, g, m);
        acc[0] += c;
    }
    acc
}

/// Fraction-free Gaussian elimination (Bareiss); exact over Z.
pub fn det_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Resultant via the Sylvester matrix.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut s = vec![vec![BigInt::zero(); size]; size];
    // rows hold coefficients from the leading term down
    for i in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            s[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            s[n + i][i + j] = c.clone();
        }
    }
    det_bareiss(s)
}

/// disc(f) = (-1)^{n(n-1)/2} res(f, f') / lc(f).
pub fn discriminant(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let r = resultant(f, &derivative_z(f)) / f.last().unwrap();
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

pub fn format_poly(f: &[BigRational]) -> String {
    let mut terms = Vec::new();
    for (i, c) in f.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        let coeff = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let sep = if !coeff.is_empty() && !mono.is_empty() { "*" } else { "" };
        terms.push((sign, format!("{coeff}{sep}{mono}")));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (sign, t)) in terms.into_iter().enumerate() {
        match (k, sign) {
            (0, "+") => {}
            (0, _) => out.push('-'),
            (_, s) => {
                out.push(' ');
                out.push_str(s);
                out.push(' ');
            }
        }
        out.push_str(&t);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&z(&[1, 0, 1])), BigInt::from(-4));
        assert_eq!(discriminant(&z(&[-1, -1, 0, 1])), BigInt::from(-23));
        assert_eq!(discriminant(&z(&[-1, -2, 1, 1])), BigInt::from(49));
        // x^2 + c: -4c
        for c in [-7, 2, 5, 11] {
            assert_eq!(discriminant(&z(&[c, 0, 1])), BigInt::from(-4 * c));
        }
    }

    #[test]
    fn bareiss_matches_small_determinant() {
        let m = vec![z(&[2, 1, 3]), z(&[0, 3, 0]), z(&[4, 5, 1])];
        assert_eq!(det_bareiss(m), BigInt::from(-30));
        let m = vec![z(&[0, 1]), z(&[1, 0])];
        assert_eq!(det_bareiss(m), BigInt::from(-1));
    }

    #[test]
    fn compose_identity() {
        let f = z(&[-1, -2, 1, 1]);
        let g = to_q(&z(&[-2, 0, 1]));
        assert!(compose_mod(&to_q(&f), &g, &f).iter().all(Zero::is_zero));
        assert_eq!(format_poly(&g), "x^2 - 2");
    }
}
