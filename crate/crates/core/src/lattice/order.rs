//! Orders of maximal rank in L and their images under automorphisms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{index, intersect, Lattice};
use crate::error::{Error, Result};
use crate::field::{AutMap, NumField};

/// A full-rank subring of L containing 1, in power-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderLat {
    lattice: Lattice,
}

impl OrderLat {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Z[alpha] for an integral primitive element alpha.
    pub fn generated_by(alpha: &[BigRational], field: &NumField) -> Result<OrderLat> {
        let gens: Vec<Vec<BigRational>> = (0..field.degree()).map(|k| field.pow(alpha, k)).collect();
        make_order(&gens, field)
    }

    /// Z[c * theta].
    pub fn scaled_power_order(c: i64, field: &NumField) -> Result<OrderLat> {
        let alpha: Vec<BigRational> =
            field.theta().into_iter().map(|x| x * BigRational::from_integer(BigInt::from(c))).collect();
        OrderLat::generated_by(&alpha, field)
    }
}

/// Every product of two basis vectors lies back in the lattice.
pub fn is_multiplicatively_closed(lat: &Lattice, field: &NumField) -> bool {
    let cols = lat.columns();
    for (i, u) in cols.iter().enumerate() {
        for v in &cols[i..] {
            if !lat.contains(&field.mul(u, v)) {
                return false;
            }
        }
    }
    true
}

/// Validates the lattice spanned by `basis` (one vector per entry) as an order.
pub fn make_order(basis: &[Vec<BigRational>], field: &NumField) -> Result<OrderLat> {
    let n = field.degree();
    if basis.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: basis.len() });
    }
    let lattice = Lattice::from_columns(basis, n)?;
    if !lattice.contains(&field.one()) {
        return Err(Error::MissingUnit);
    }
    if !is_multiplicatively_closed(&lattice, field) {
        return Err(Error::NotClosed);
    }
    Ok(OrderLat { lattice })
}

/// Z + c * O_L.
pub fn conductor_order(field: &NumField, c: &BigInt) -> Result<OrderLat> {
    if *c < BigInt::one() {
        return Err(Error::InvalidConductor(c.clone()));
    }
    let ol = field.maximal_order()?;
    let scale = BigRational::from_integer(c.clone());
    let mut gens = vec![field.one()];
    gens.extend(ol.columns().into_iter().map(|v| v.into_iter().map(|x| x * &scale).collect::<Vec<_>>()));
    let lattice = Lattice::from_columns(&gens, field.degree())?;
    Ok(OrderLat { lattice })
}

/// sigma(H).
pub fn apply_aut(h: &OrderLat, sigma: &AutMap, field: &NumField) -> OrderLat {
    let lattice = h.lattice.map(&sigma.matrix(field)).expect("automorphisms are invertible");
    OrderLat { lattice }
}

/// [H : H ∩ sigma(H)].
pub fn symmetry_defect(h: &OrderLat, sigma: &AutMap, field: &NumField) -> BigInt {
    let image = apply_aut(h, sigma, field);
    let meet = intersect(&h.lattice, &image.lattice).expect("same dimension");
    index(&h.lattice, &meet).expect("intersection is a sublattice")
}

/// sigma(H_p) != H_p, i.e. p divides [H : H ∩ sigma(H)].
pub fn asymmetric_at(h: &OrderLat, sigma: &AutMap, p: &BigInt, field: &NumField) -> bool {
    (symmetry_defect(h, sigma, field) % p).is_zero()
}
