//! Polynomials over F_q for word-sized primes q: squarefree and distinct-degree
//! factorization, which is all the splitting-type and Dedekind computations need.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

pub type FpPoly = Vec<u64>;

#[derive(Debug, Clone, Copy)]
pub struct Fp {
    pub q: u64,
}

impl Fp {
    pub fn new(q: u64) -> Fp {
        Fp { q }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.q as u128) as u64
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.q - b % self.q)
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.q - 2)
    }

    pub fn reduce(&self, f: &[BigInt]) -> FpPoly {
        let q = BigInt::from(self.q);
        trim(f.iter().map(|c| c.mod_floor(&q).to_u64().unwrap()).collect())
    }

    pub fn poly_sub(&self, f: &[u64], g: &[u64]) -> FpPoly {
        let n = f.len().max(g.len());
        let out = (0..n).map(|i| self.sub(f.get(i).copied().unwrap_or(0), g.get(i).copied().unwrap_or(0))).collect();
        trim(out)
    }

    pub fn poly_mul(&self, f: &[u64], g: &[u64]) -> FpPoly {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(a, b));
            }
        }
        trim(out)
    }

    pub fn divrem(&self, f: &[u64], g: &[u64]) -> (FpPoly, FpPoly) {
        assert!(!g.is_empty(), "division by zero polynomial");
        let n = g.len() - 1;
        let mut r = f.to_vec();
        if r.len() <= n {
            return (Vec::new(), trim(r));
        }
        let lead_inv = self.inv(g[n]);
        let mut quot = vec![0u64; r.len() - n];
        for d in (n..r.len()).rev() {
            let c = self.mul(r[d], lead_inv);
            if c == 0 {
                continue;
            }
            quot[d - n] = c;
            for (i, &gi) in g.iter().enumerate() {
                r[d - n + i] = self.sub(r[d - n + i], self.mul(c, gi));
            }
        }
        r.truncate(n);
        (trim(quot), trim(r))
    }

    pub fn rem(&self, f: &[u64], g: &[u64]) -> FpPoly {
        self.divrem(f, g).1
    }

    pub fn monic(&self, f: &[u64]) -> FpPoly {
        match f.last() {
            None => Vec::new(),
            Some(&l) => {
                let inv = self.inv(l);
                f.iter().map(|&c| self.mul(c, inv)).collect()
            }
        }
    }

    pub fn gcd(&self, f: &[u64], g: &[u64]) -> FpPoly {
        let (mut a, mut b) = (trim(f.to_vec()), trim(g.to_vec()));
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn derivative(&self, f: &[u64]) -> FpPoly {
        let out = f.iter().enumerate().skip(1).map(|(i, &c)| self.mul(c, i as u64 % self.q)).collect();
        trim(out)
    }

    fn powmod(&self, base: &[u64], mut e: u64, m: &[u64]) -> FpPoly {
        let mut result = vec![1u64];
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.rem(&self.poly_mul(&result, &b), m);
            }
            b = self.rem(&self.poly_mul(&b, &b), m);
            e >>= 1;
        }
        self.rem(&result, m)
    }

    /// For f(x) = g(x^q), returns g (the q-th root, since a^q = a in F_q).
    fn qth_root(&self, f: &[u64]) -> FpPoly {
        let q = self.q as usize;
        trim(f.iter().step_by(q).copied().collect())
    }

    /// Squarefree decomposition: monic factors with multiplicities, product = monic(f).
    pub fn squarefree(&self, f: &[u64]) -> Vec<(FpPoly, u32)> {
        let f = self.monic(f);
        let mut out = Vec::new();
        self.squarefree_into(&f, 1, &mut out);
        out
    }

    fn squarefree_into(&self, f: &[u64], mult: u32, out: &mut Vec<(FpPoly, u32)>) {
        if f.len() <= 1 {
            return;
        }
        let d = self.derivative(f);
        if d.is_empty() {
            self.squarefree_into(&self.qth_root(f), mult * self.q as u32, out);
            return;
        }
        let mut c = self.gcd(f, &d);
        let mut w = self.divrem(f, &c).0;
        let mut i = 1;
        while w.len() > 1 {
            let y = self.gcd(&w, &c);
            let fac = self.divrem(&w, &y).0;
            if fac.len() > 1 {
                out.push((self.monic(&fac), i * mult));
            }
            w = y;
            c = self.divrem(&c, &w).0;
            i += 1;
        }
        if c.len() > 1 {
            self.squarefree_into(&self.qth_root(&c), mult * self.q as u32, out);
        }
    }

    /// Distinct-degree factorization of a squarefree monic polynomial:
    /// pairs (degree, number of irreducible factors of that degree).
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(usize, usize)> {
        let mut h = self.monic(f);
        let mut out = Vec::new();
        let x = vec![0u64, 1];
        let mut xq = x.clone();
        let mut d = 1;
        while h.len() > 2 * d {
            xq = self.powmod(&xq, self.q, &h);
            let g = self.gcd(&h, &self.poly_sub(&xq, &x));
            if g.len() > 1 {
                out.push((d, (g.len() - 1) / d));
                h = self.divrem(&h, &g).0;
                xq = self.rem(&xq, &h);
            }
            d += 1;
        }
        if h.len() > 1 {
            out.push((h.len() - 1, 1));
        }
        out
    }

    /// Degrees and multiplicities of the irreducible factors of f, sorted.
    pub fn factor_shape(&self, f: &[u64]) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for (part, e) in self.squarefree(f) {
            for (deg, count) in self.distinct_degree(&part) {
                out.extend(std::iter::repeat_n((deg, e), count));
            }
        }
        out.sort();
        out
    }
}

pub fn trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}
