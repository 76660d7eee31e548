//! Full-rank lattices in Q^n, kept in canonical column Hermite normal form.
//!
//! A lattice is `(1/d) * H` where `H` is an integer matrix whose columns are
//! the basis vectors. `H` is upper triangular with positive diagonal, every
//! entry right of a pivot lies in `[0, pivot)`, and `d` is the least positive
//! integer making `d * lattice` integral. Two lattices are equal exactly when
//! these representations are equal.

mod order;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use order::{
    apply_aut, asymmetric_at, conductor_order, is_multiplicatively_closed, make_order, symmetry_defect, OrderLat,
};

use crate::error::{Error, Result};
use crate::field::lcm_of_denominators;

/// Row-major rational matrix.
pub type Matrix = Vec<Vec<BigRational>>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    /// `cols[j][i]` is row i of basis column j; zero for i > j.
    cols: Vec<Vec<BigInt>>,
    denom: BigInt,
}

impl Lattice {
    /// Z^n.
    pub fn standard(n: usize) -> Lattice {
        let cols =
            (0..n).map(|j| (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        Lattice { cols, denom: BigInt::one() }
    }

    /// Lattice spanned by any finite set of generators of Q^n.
    pub fn from_columns(gens: &[Vec<BigRational>], n: usize) -> Result<Lattice> {
        if let Some(bad) = gens.iter().find(|g| g.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        let denom = lcm_of_denominators(gens.iter().flatten());
        let ints: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|x| (x * BigRational::from_integer(denom.clone())).to_integer()).collect())
            .collect();
        let cols = hnf_integer(ints, n)?;
        Ok(Lattice { cols, denom }.normalized())
    }

    fn normalized(mut self) -> Lattice {
        let g = self.cols.iter().flatten().fold(self.denom.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            for c in self.cols.iter_mut() {
                for x in c.iter_mut() {
                    *x = &*x / &g;
                }
            }
            self.denom = &self.denom / &g;
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    /// Integer HNF matrix, columns as basis vectors.
    pub fn hnf_columns(&self) -> &[Vec<BigInt>] {
        &self.cols
    }

    pub fn columns(&self) -> Vec<Vec<BigRational>> {
        self.cols.iter().map(|c| c.iter().map(|x| BigRational::new(x.clone(), self.denom.clone())).collect()).collect()
    }

    /// Row-major matrix whose columns are the basis vectors.
    pub fn matrix(&self) -> Matrix {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| BigRational::new(self.cols[j][i].clone(), self.denom.clone())).collect())
            .collect()
    }

    /// Integer coordinates of `v` in this basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        let n = self.dim();
        if v.len() != n {
            return None;
        }
        let d = BigRational::from_integer(self.denom.clone());
        let mut rhs = Vec::with_capacity(n);
        for x in v {
            let y = x * &d;
            if !y.is_integer() {
                return None;
            }
            rhs.push(y.to_integer());
        }
        let mut x = vec![BigInt::zero(); n];
        for i in (0..n).rev() {
            let mut r = rhs[i].clone();
            for j in i + 1..n {
                r -= &self.cols[j][i] * &x[j];
            }
            let (q, rem) = r.div_rem(&self.cols[i][i]);
            if !rem.is_zero() {
                return None;
            }
            x[i] = q;
        }
        Some(x)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.columns().iter().all(|c| self.contains(c))
    }

    /// |det| of the basis.
    pub fn covolume(&self) -> BigRational {
        let prod = self.cols.iter().enumerate().fold(BigInt::one(), |acc, (j, c)| acc * &c[j]);
        BigRational::new(prod, num_traits::pow(self.denom.clone(), self.dim()))
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        let mut gens = self.columns();
        gens.extend(other.columns());
        Lattice::from_columns(&gens, self.dim())
    }

    pub fn scale(&self, c: &BigRational) -> Result<Lattice> {
        let gens: Vec<Vec<BigRational>> =
            self.columns().into_iter().map(|v| v.into_iter().map(|x| x * c).collect()).collect();
        Lattice::from_columns(&gens, self.dim())
    }

    /// Image under a linear map given by its columns (images of the unit vectors).
    pub fn map(&self, columns: &[Vec<BigRational>]) -> Result<Lattice> {
        let n = self.dim();
        let gens: Vec<Vec<BigRational>> = self
            .columns()
            .iter()
            .map(|v| (0..n).map(|i| v.iter().zip(columns).map(|(c, col)| c * &col[i]).sum()).collect())
            .collect();
        Lattice::from_columns(&gens, n)
    }

    /// {y : <y, x> in Z for all x in the lattice}, spanned by the rows of B^{-1}.
    pub fn dual(&self) -> Result<Lattice> {
        let n = self.dim();
        let b = self.matrix();
        // B is upper triangular; solve B X = I column by column.
        let mut inv = vec![vec![BigRational::zero(); n]; n];
        for k in 0..n {
            for i in (0..=k).rev() {
                let mut r = if i == k { BigRational::one() } else { BigRational::zero() };
                for j in i + 1..=k {
                    r -= &b[i][j] * &inv[j][k];
                }
                inv[i][k] = r / &b[i][i];
            }
        }
        Lattice::from_columns(&inv, n)
    }
}

/// Column HNF of integer generators spanning a rank-n lattice.
fn hnf_integer(gens: Vec<Vec<BigInt>>, n: usize) -> Result<Vec<Vec<BigInt>>> {
    let mut pool: Vec<Vec<BigInt>> = gens.into_iter().filter(|g| g.iter().any(|x| !x.is_zero())).collect();
    let mut pivots: Vec<Option<Vec<BigInt>>> = vec![None; n];
    for row in (0..n).rev() {
        loop {
            let live: Vec<usize> = (0..pool.len()).filter(|&k| !pool[k][row].is_zero()).collect();
            let Some(&best) = live.iter().min_by_key(|&&k| pool[k][row].abs()) else {
                return Err(Error::NotFullRank);
            };
            if live.len() == 1 {
                let mut p = pool.swap_remove(best);
                if p[row].is_negative() {
                    p.iter_mut().for_each(|x| *x = -&*x);
                }
                pivots[row] = Some(p);
                break;
            }
            let pivot = pool[best].clone();
            for &k in &live {
                if k != best {
                    let q = pool[k][row].div_floor(&pivot[row]);
                    for i in 0..=row {
                        let d = &q * &pivot[i];
                        pool[k][i] -= d;
                    }
                }
            }
        }
    }
    let mut cols: Vec<Vec<BigInt>> = pivots.into_iter().map(|p| p.expect("pivot per row")).collect();
    for j in 0..n {
        for i in (0..j).rev() {
            let q = cols[j][i].div_floor(&cols[i][i]);
            if !q.is_zero() {
                for r in 0..=i {
                    let d = &q * &cols[i][r];
                    cols[j][r] -= d;
                }
            }
        }
    }
    Ok(cols)
}

/// Canonical HNF of the lattice spanned by the columns of a square matrix.
pub fn hnf(m: &Matrix) -> Result<Lattice> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: m.first().map_or(0, Vec::len) });
    }
    let cols: Vec<Vec<BigRational>> = (0..n).map(|j| (0..n).map(|i| m[i][j].clone()).collect()).collect();
    Lattice::from_columns(&cols, n)
}

pub fn intersect(a: &Lattice, b: &Lattice) -> Result<Lattice> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    a.dual()?.sum(&b.dual()?)?.dual()
}

/// [outer : inner] for a sublattice `inner` of `outer`.
pub fn index(outer: &Lattice, inner: &Lattice) -> Result<BigInt> {
    if outer.dim() != inner.dim() || !outer.contains_lattice(inner) {
        return Err(Error::NotSublattice);
    }
    let ratio = inner.covolume() / outer.covolume();
    debug_assert!(ratio.is_integer());
    Ok(ratio.to_integer())
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn det_rational(mut a: Matrix) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let d = &f * &a[c][k];
                a[r][k] -= d;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    fn cols(vs: &[&[i64]]) -> Vec<Vec<BigRational>> {
        vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf(&mat(&[&[1, 0], &[0, 1]])).unwrap(), Lattice::standard(2));
        assert_eq!(hnf(&mat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])).unwrap(), Lattice::standard(3));
        let l = hnf(&mat(&[&[2, 1], &[0, 1]])).unwrap();
        assert_eq!(l.hnf_columns(), &[vec![BigInt::from(2), BigInt::from(0)], vec![BigInt::from(1), BigInt::from(1)]]);
        // membership: (1,1) and (2,0) in; (1,0) out
        assert!(l.contains(&[q(1), q(1)]));
        assert!(l.contains(&[q(2), q(0)]));
        assert!(!l.contains(&[q(1), q(0)]));
        assert_eq!(hnf(&mat(&[&[1, 2], &[2, 4]])), Err(Error::NotFullRank));
    }

    #[test]
    fn rational_lattices_are_canonical() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let a = Lattice::from_columns(&[vec![half.clone(), q(0)], vec![q(0), q(1)]], 2).unwrap();
        let b = Lattice::from_columns(&[vec![half.clone(), q(0)], vec![half, q(1)], vec![q(3), q(2)]], 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.denominator(), &BigInt::from(2));
        assert_eq!(a.covolume(), BigRational::new(BigInt::from(1), BigInt::from(2)));
    }

    #[test]
    fn intersect_examples() {
        let z2 = Lattice::standard(2);
        assert_eq!(intersect(&z2, &z2).unwrap(), z2);
        let l = Lattice::from_columns(&cols(&[&[2, 0], &[0, 1]]), 2).unwrap();
        assert_eq!(intersect(&z2, &l).unwrap(), l);
        // Z(2,0)+Z(1,2) against Z(1,0)+Z(0,4): brute force says the
        // intersection is {(x,y): y = 0 mod 4, x = y/2 mod 2} = Z(2,0)+Z(0,4)+... see below
        let a = Lattice::from_columns(&cols(&[&[2, 0], &[1, 2]]), 2).unwrap();
        let b = Lattice::from_columns(&cols(&[&[1, 0], &[0, 4]]), 2).unwrap();
        let c = intersect(&a, &b).unwrap();
        for x in -12i64..=12 {
            for y in -12i64..=12 {
                let v = [q(x), q(y)];
                assert_eq!(c.contains(&v), a.contains(&v) && b.contains(&v), "({x},{y})");
            }
        }
        assert_eq!(c, Lattice::from_columns(&cols(&[&[2, 0], &[2, 4]]), 2).unwrap());
    }

    #[test]
    fn index_examples() {
        let z3 = Lattice::standard(3);
        assert_eq!(index(&z3, &z3).unwrap(), BigInt::one());
        let sub = Lattice::from_columns(&cols(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 4]]), 3).unwrap();
        assert_eq!(index(&z3, &sub).unwrap(), BigInt::from(8));
        assert_eq!(index(&sub, &z3), Err(Error::NotSublattice));
    }

    #[test]
    fn dual_is_involutive() {
        let l = Lattice::from_columns(&cols(&[&[3, 1, 0], &[0, 2, 5], &[1, 1, 7]]), 3).unwrap();
        assert_eq!(l.dual().unwrap().dual().unwrap(), l);
        assert_eq!(l.covolume() * l.dual().unwrap().covolume(), BigRational::one());
    }
}
