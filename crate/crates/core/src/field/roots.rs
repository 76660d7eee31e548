//! Complex roots of integer polynomials at a chosen binary precision.
//!
//! Values are fixed-point: a component `m` stands for `m / 2^prec`. The
//! numbers produced here only ever propose candidates; every conclusion
//! drawn from them is re-checked with exact arithmetic by the caller.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct Cx {
    pub re: BigInt,
    pub im: BigInt,
}

#[derive(Debug, Clone, Copy)]
pub struct Fixed {
    pub prec: u32,
}

impl Fixed {
    pub fn zero(&self) -> Cx {
        Cx { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn from_int(&self, n: &BigInt) -> Cx {
        Cx { re: n << self.prec, im: BigInt::zero() }
    }

    fn fixed_from_f64(&self, x: f64) -> BigInt {
        if x == 0.0 {
            return BigInt::zero();
        }
        let bits = x.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1 << 52), exp - 1075) };
        let m = BigInt::from(mant);
        let shift = e + self.prec as i64;
        let v = if shift >= 0 { m << shift as usize } else { m >> (-shift) as usize };
        if x < 0.0 {
            -v
        } else {
            v
        }
    }

    pub fn from_c64(&self, z: Complex64) -> Cx {
        Cx { re: self.fixed_from_f64(z.re), im: self.fixed_from_f64(z.im) }
    }

    pub fn to_c64(&self, z: &Cx) -> Complex64 {
        let scale = 2f64.powi(-(self.prec as i32));
        Complex64::new(z.re.to_f64().unwrap_or(f64::NAN) * scale, z.im.to_f64().unwrap_or(f64::NAN) * scale)
    }

    pub fn add(&self, a: &Cx, b: &Cx) -> Cx {
        Cx { re: &a.re + &b.re, im: &a.im + &b.im }
    }

    pub fn sub(&self, a: &Cx, b: &Cx) -> Cx {
        Cx { re: &a.re - &b.re, im: &a.im - &b.im }
    }

    pub fn mul(&self, a: &Cx, b: &Cx) -> Cx {
        let re = (&a.re * &b.re - &a.im * &b.im) >> self.prec;
        let im = (&a.re * &b.im + &a.im * &b.re) >> self.prec;
        Cx { re, im }
    }

    pub fn scale_int(&self, a: &Cx, k: &BigInt) -> Cx {
        Cx { re: &a.re * k, im: &a.im * k }
    }

    pub fn div(&self, a: &Cx, b: &Cx) -> Option<Cx> {
        let den = &b.re * &b.re + &b.im * &b.im;
        if den.is_zero() {
            return None;
        }
        let re = ((&a.re * &b.re + &a.im * &b.im) << self.prec) / &den;
        let im = ((&a.im * &b.re - &a.re * &b.im) << self.prec) / &den;
        Some(Cx { re, im })
    }

    /// |re| + |im| in fixed-point units.
    pub fn norm1(&self, a: &Cx) -> BigInt {
        a.re.abs() + a.im.abs()
    }

    /// Nearest integer to the real part, with the distance to it (fixed units).
    pub fn round_real(&self, a: &Cx) -> (BigInt, BigInt) {
        let half = BigInt::from(1) << (self.prec - 1);
        let n = (&a.re + &half) >> self.prec;
        let dist = (&a.re - (&n << self.prec)).abs() + a.im.abs();
        (n, dist)
    }

    /// f(z) and f'(z) by Horner.
    fn eval_with_derivative(&self, f: &[Cx], z: &Cx) -> (Cx, Cx) {
        let mut p = self.zero();
        let mut dp = self.zero();
        for c in f.iter().rev() {
            dp = self.add(&self.mul(&dp, z), &p);
            p = self.add(&self.mul(&p, z), c);
        }
        (p, dp)
    }
}

fn aberth_f64(f: &[f64]) -> Option<Vec<Complex64>> {
    let n = f.len() - 1;
    let lead = f[n];
    let radius = 1.0 + f[..n].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4)).collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for &c in f.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p == Complex64::zero() {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.is_finite() {
                return None;
            }
            z[k] -= w;
            worst = worst.max(w.norm() / z[k].norm().max(1.0));
        }
        if worst < 1e-14 {
            break;
        }
    }
    Some(z)
}

/// All roots of the squarefree integer polynomial `f`, refined by Aberth
/// iteration at `prec` bits. `None` if the iteration breaks down.
pub fn complex_roots(f: &[BigInt], prec: u32) -> Option<Vec<Cx>> {
    let ff: Vec<f64> = f.iter().map(|c| c.to_f64()).collect::<Option<_>>()?;
    if ff.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let fx = Fixed { prec };
    let approx = aberth_f64(&ff)?;
    let coeffs: Vec<Cx> = f.iter().map(|c| fx.from_int(c)).collect();
    let mut z: Vec<Cx> = approx.into_iter().map(|w| fx.from_c64(w)).collect();
    let n = z.len();
    let one = fx.from_int(&BigInt::from(1));
    let tol = BigInt::from(1) << 24u32;
    let mut settled = 0;
    for _ in 0..(prec as usize + 100) {
        let mut worst = BigInt::zero();
        for k in 0..n {
            let (p, dp) = fx.eval_with_derivative(&coeffs, &z[k]);
            if p.re.is_zero() && p.im.is_zero() {
                continue;
            }
            let ratio = fx.div(&p, &dp)?;
            let mut s = fx.zero();
            for j in 0..n {
                if j != k {
                    s = fx.add(&s, &fx.div(&one, &fx.sub(&z[k], &z[j]))?);
                }
            }
            let w = fx.div(&ratio, &fx.sub(&one, &fx.mul(&ratio, &s)))?;
            z[k] = fx.sub(&z[k], &w);
            worst = worst.max(fx.norm1(&w));
        }
        if worst < tol {
            settled += 1;
            if settled >= 2 {
                return Some(z);
            }
        }
    }
    None
}
