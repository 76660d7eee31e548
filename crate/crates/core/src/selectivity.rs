//! Deciding whether F_M(A|H) is L or Q.
//!
//! Quadratic L = Q(sqrt d): F_M = L exactly when A and (-1, d) ramify at the
//! same finite primes; H plays no role. Odd prime degree: F_M = L exactly
//! when L/Q is Galois and H is asymmetric at every finite ramified prime of A.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{kronecker, squarefree_part, Place};
use crate::error::{Error, Result};
use crate::field::{find_automorphism, splitting_type, NumField};
use crate::hilbert::{ramified_set, QuatAlg};
use crate::lattice::{asymmetric_at, OrderLat};

/// The maximal representation field: L itself, or the base field Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FM {
    L,
    K,
}

impl fmt::Display for FM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FM::L => "L",
            FM::K => "K",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    /// `None` for findings about the field or algebra as a whole.
    pub place: Option<Place>,
    pub finding: String,
}

impl TraceEntry {
    fn global(finding: impl Into<String>) -> TraceEntry {
        TraceEntry { place: None, finding: finding.into() }
    }

    fn at(p: &BigInt, finding: impl Into<String>) -> TraceEntry {
        TraceEntry { place: Some(Place::Finite(p.clone())), finding: finding.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub f_m: FM,
    pub selective: bool,
    /// Proportion of spinor genera representing H: 1/p if selective, else 1.
    pub proportion: BigRational,
    pub trace: Vec<TraceEntry>,
}

impl Verdict {
    fn new(f_m: FM, degree: usize, trace: Vec<TraceEntry>) -> Verdict {
        let proportion = match f_m {
            FM::L => BigRational::new(BigInt::one(), BigInt::from(degree)),
            FM::K => BigRational::one(),
        };
        Verdict { f_m, selective: f_m == FM::L, proportion, trace }
    }
}

/// A central simple algebra of prime degree p over Q, described by what the
/// decisions need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CsaSpec {
    Quaternion(QuatAlg),
    /// Degree p odd, given by its finite ramified primes.
    OddDegree {
        degree: usize,
        finite_ramified: BTreeSet<BigInt>,
    },
}

impl CsaSpec {
    pub fn odd<I, T>(degree: usize, ramified: I) -> Result<CsaSpec>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        if degree < 3 || degree.is_multiple_of(2) || !crate::arith::is_prime_u64(degree as u64) {
            return Err(Error::NotOddDegree(degree));
        }
        let mut set = BTreeSet::new();
        for p in ramified {
            if let Place::Finite(p) = Place::finite(p)? {
                set.insert(p);
            }
        }
        // local invariants in (1/p)Z/Z sum to zero, which one nonzero term cannot
        if set.len() == 1 {
            return Err(Error::SingletonRamification);
        }
        Ok(CsaSpec::OddDegree { degree, finite_ramified: set })
    }

    pub fn degree(&self) -> usize {
        match self {
            CsaSpec::Quaternion(_) => 2,
            CsaSpec::OddDegree { degree, .. } => *degree,
        }
    }
}

/// Runs the decision matching the degree of L.
pub fn decide(field: &NumField, h: &OrderLat, csa: &CsaSpec) -> Result<Verdict> {
    if field.degree() != csa.degree() {
        return Err(Error::DegreeMismatch { expected: csa.degree(), found: field.degree() });
    }
    match csa {
        CsaSpec::Quaternion(alg) => decide_quadratic(field.disc(), alg),
        CsaSpec::OddDegree { finite_ramified, .. } => decide_odd(field, h, finite_ramified),
    }
}

fn quadratic_canonical(d: &BigInt) -> Result<BigInt> {
    if d.is_zero() {
        return Err(Error::NoQuadraticField(d.clone()));
    }
    let m = squarefree_part(d)?;
    if m.is_one() {
        return Err(Error::NoQuadraticField(d.clone()));
    }
    Ok(m)
}

/// Whether a place splits in Q(sqrt m), m squarefree.
fn splits_in_quadratic(m: &BigInt, v: &Place) -> bool {
    match v {
        Place::Infinite => m.is_positive(),
        Place::Finite(p) => {
            let disc = if m.mod_floor(&BigInt::from(4)) == BigInt::one() { m.clone() } else { m * 4 };
            kronecker(&disc, p) == 1
        }
    }
}

fn first_split_place(m: &BigInt, alg: &QuatAlg) -> Result<Option<Place>> {
    Ok(ramified_set(alg)?.into_iter().find(|v| splits_in_quadratic(m, v)))
}

/// Q(sqrt d) embeds in A iff no ramified place of A splits in it.
pub fn embeds_quadratic(d: &BigInt, alg: &QuatAlg) -> Result<bool> {
    let m = quadratic_canonical(d)?;
    Ok(first_split_place(&m, alg)?.is_none())
}

fn format_set(s: &BTreeSet<BigInt>) -> String {
    let items: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn decide_quadratic(d: &BigInt, alg: &QuatAlg) -> Result<Verdict> {
    let m = quadratic_canonical(d)?;
    if let Some(v) = first_split_place(&m, alg)? {
        return Err(Error::NoEmbedding(v));
    }
    let t = QuatAlg::symbol(-1, m.clone())?.finite_ramified()?;
    let s = alg.finite_ramified()?;
    let mut trace = Vec::new();
    if &m != d {
        trace.push(TraceEntry::global(format!("d = {d} has squarefree part {m}")));
    }
    for p in t.union(&s) {
        let finding = match (t.contains(p), s.contains(p)) {
            (true, true) => "ramified in both".to_string(),
            (true, false) => format!("ramified in (-1, {m}) only"),
            _ => "ramified in A only".to_string(),
        };
        trace.push(TraceEntry::at(p, finding));
    }
    let same = s == t;
    trace.push(TraceEntry::global(format!(
        "finite ramification of (-1, {m}) is {} and of A is {}: {}",
        format_set(&t),
        format_set(&s),
        if same { "equal" } else { "different" }
    )));
    Ok(Verdict::new(if same { FM::L } else { FM::K }, 2, trace))
}

pub fn decide_odd(field: &NumField, h: &OrderLat, ramified: &BTreeSet<BigInt>) -> Result<Verdict> {
    let degree = field.degree();
    if degree.is_multiple_of(2) {
        return Err(Error::NotOddDegree(degree));
    }
    if h.lattice().dim() != degree {
        return Err(Error::DimensionMismatch { expected: degree, found: h.lattice().dim() });
    }
    if ramified.len() == 1 {
        return Err(Error::SingletonRamification);
    }
    let mut shapes = Vec::with_capacity(ramified.len());
    for p in ramified {
        let shape = splitting_type(field, p)?;
        if !shape.is_nonsplit() {
            return Err(Error::SplitPlace(p.clone()));
        }
        shapes.push((p, shape));
    }
    let Some(sigma) = find_automorphism(field)? else {
        let mut trace = vec![TraceEntry::global("not Galois")];
        trace.extend(shapes.iter().map(|(p, s)| TraceEntry::at(p, format!("{} at {p}", s.describe()))));
        return Ok(Verdict::new(FM::K, degree, trace));
    };
    let mut trace = vec![TraceEntry::global(format!("Galois, generated by theta -> {}", sigma.to_poly_string()))];
    let mut all = true;
    for p in ramified {
        let asym = asymmetric_at(h, &sigma, p, field);
        all &= asym;
        trace.push(TraceEntry::at(p, format!("{} at {p}", if asym { "asymmetric" } else { "symmetric" })));
    }
    Ok(Verdict::new(if all { FM::L } else { FM::K }, degree, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::lattice::{conductor_order, make_order, Lattice};
    use proptest::prelude::*;

    fn z(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn set(ps: &[i64]) -> BTreeSet<BigInt> {
        ps.iter().map(|&p| BigInt::from(p)).collect()
    }

    fn ram(ps: &[i64], inf: bool) -> QuatAlg {
        QuatAlg::from_ramification(ps.iter().copied(), inf).unwrap()
    }

    fn cyclic7() -> NumField {
        make_field(&z(&[-1, -2, 1, 1])).unwrap()
    }

    fn findings(v: &Verdict) -> Vec<String> {
        v.trace.iter().map(|e| e.finding.clone()).collect()
    }

    #[test]
    fn embedding_examples() {
        let d = BigInt::from(-1);
        assert!(embeds_quadratic(&d, &ram(&[2], true)).unwrap());
        assert!(!embeds_quadratic(&d, &ram(&[5], true)).unwrap());
        assert!(embeds_quadratic(&BigInt::from(17), &QuatAlg::split()).unwrap());
        // the real place splits in a real quadratic field
        assert!(!embeds_quadratic(&BigInt::from(3), &ram(&[3], true)).unwrap());
    }

    #[test]
    fn quadratic_fixtures() {
        let v = decide_quadratic(&BigInt::from(-1), &ram(&[2], true)).unwrap();
        assert_eq!(v.f_m, FM::L);
        assert_eq!(v.proportion, BigRational::new(BigInt::one(), BigInt::from(2)));
        let v = decide_quadratic(&BigInt::from(-1), &QuatAlg::split()).unwrap();
        assert_eq!(v.f_m, FM::K);
        assert!(!v.selective);
        assert_eq!(v.proportion, BigRational::one());
        assert_eq!(decide_quadratic(&BigInt::from(5), &QuatAlg::split()).unwrap().f_m, FM::L);
        assert_eq!(
            decide_quadratic(&BigInt::from(-1), &ram(&[5], true)),
            Err(Error::NoEmbedding(Place::Finite(BigInt::from(5))))
        );
    }

    #[test]
    fn quadratic_canonicalization() {
        let a = ram(&[2], true);
        let v1 = decide_quadratic(&BigInt::from(-1), &a).unwrap();
        let v4 = decide_quadratic(&BigInt::from(-4), &a).unwrap();
        assert_eq!(v1.f_m, v4.f_m);
        for d in [0i64, 1, 4, 36] {
            assert_eq!(decide_quadratic(&BigInt::from(d), &a), Err(Error::NoQuadraticField(BigInt::from(d))));
        }
    }

    #[test]
    fn odd_fixtures() {
        let l = cyclic7();
        let zt = make_order(&Lattice::standard(3).columns(), &l).unwrap();
        assert_eq!(decide_odd(&l, &zt, &set(&[])).unwrap().f_m, FM::L);

        let h2 = OrderLat::scaled_power_order(2, &l).unwrap();
        let v = decide_odd(&l, &h2, &set(&[2, 7])).unwrap();
        assert_eq!(v.f_m, FM::K);
        assert!(findings(&v).contains(&"symmetric at 7".to_string()));
        assert!(findings(&v).contains(&"asymmetric at 2".to_string()));

        let h14 = OrderLat::scaled_power_order(14, &l).unwrap();
        let v = decide_odd(&l, &h14, &set(&[2, 7])).unwrap();
        assert_eq!(v.f_m, FM::L);
        assert_eq!(v.proportion, BigRational::new(BigInt::one(), BigInt::from(3)));

        let m = make_field(&z(&[-1, -1, 0, 1])).unwrap();
        let zm = make_order(&Lattice::standard(3).columns(), &m).unwrap();
        let v = decide_odd(&m, &zm, &set(&[])).unwrap();
        assert_eq!(v.f_m, FM::K);
        assert_eq!(v.trace[0].finding, "not Galois");
    }

    #[test]
    fn odd_validation() {
        let l = cyclic7();
        let h = OrderLat::scaled_power_order(2, &l).unwrap();
        assert_eq!(decide_odd(&l, &h, &set(&[7])), Err(Error::SingletonRamification));
        // 13 splits completely in the cyclic cubic of conductor 7
        assert_eq!(decide_odd(&l, &h, &set(&[7, 13])), Err(Error::SplitPlace(BigInt::from(13))));
        assert_eq!(decide_odd(&l, &h, &set(&[2, 9])), Err(Error::NotPrime(BigInt::from(9))));
        assert_eq!(CsaSpec::odd(3, [5]), Err(Error::SingletonRamification));
        assert_eq!(CsaSpec::odd(2, [2, 3]), Err(Error::NotOddDegree(2)));
    }

    #[test]
    fn conductor_orders_are_never_selective() {
        let l = cyclic7();
        for c in [2i64, 3, 6] {
            let h = conductor_order(&l, &BigInt::from(c)).unwrap();
            for s in [&[2i64, 7][..], &[2, 3], &[3, 5, 7]] {
                let v = decide_odd(&l, &h, &set(s)).unwrap();
                assert_eq!(v.f_m, FM::K, "c = {c}, S = {s:?}");
            }
            assert_eq!(decide_odd(&l, &h, &set(&[])).unwrap().f_m, FM::L);
        }
    }

    #[test]
    fn verdict_depends_only_on_localizations_in_s() {
        // Z[2 * 3^k theta] and Z[2 theta] agree away from 3
        let l = cyclic7();
        let s = set(&[2, 7]);
        let base = decide_odd(&l, &OrderLat::scaled_power_order(2, &l).unwrap(), &s).unwrap();
        let base14 = decide_odd(&l, &OrderLat::scaled_power_order(14, &l).unwrap(), &s).unwrap();
        for k in [3i64, 9, 5] {
            let v = decide_odd(&l, &OrderLat::scaled_power_order(2 * k, &l).unwrap(), &s).unwrap();
            assert_eq!(v.f_m, base.f_m);
            let v = decide_odd(&l, &OrderLat::scaled_power_order(14 * k, &l).unwrap(), &s).unwrap();
            assert_eq!(v.f_m, base14.f_m);
        }
    }

    fn squarefree_d() -> impl Strategy<Value = i64> {
        (-200i64..200).prop_filter("squarefree, not 0 or 1", |&d| {
            d != 0 && d != 1 && squarefree_part(&BigInt::from(d)).unwrap() == BigInt::from(d)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn square_invariance(d in squarefree_d(), c in 1i64..20) {
            // the algebra ramified at the same finite primes as (-1, d), which always embeds
            let t = QuatAlg::symbol(-1, d).unwrap();
            let dc = BigInt::from(d * c * c);
            prop_assert_eq!(
                decide_quadratic(&BigInt::from(d), &t).map(|v| v.f_m),
                decide_quadratic(&dc, &t).map(|v| v.f_m)
            );
        }

        #[test]
        fn matching_ramification_is_selective(d in squarefree_d()) {
            let t = QuatAlg::symbol(-1, d).unwrap().finite_ramified().unwrap();
            let alg = QuatAlg::from_ramification(t.iter().cloned(), t.len() % 2 == 1).unwrap();
            prop_assume!(embeds_quadratic(&BigInt::from(d), &alg).unwrap());
            prop_assert_eq!(decide_quadratic(&BigInt::from(d), &alg).unwrap().f_m, FM::L);
        }

        #[test]
        fn trace_lists_each_ramified_prime_once(ps in proptest::sample::subsequence(vec![2i64, 3, 5, 7, 11, 13, 17, 19], 0..5)) {
            let l = cyclic7();
            let h = OrderLat::scaled_power_order(14, &l).unwrap();
            let s = set(&ps);
            match decide_odd(&l, &h, &s) {
                Ok(v) => {
                    let places: Vec<BigInt> = v.trace.iter().filter_map(|e| e.place.as_ref()?.prime().cloned()).collect();
                    prop_assert_eq!(places, s.iter().cloned().collect::<Vec<_>>());
                }
                Err(e) => prop_assert!(matches!(e, Error::SingletonRamification | Error::SplitPlace(_))),
            }
        }
    }
}
