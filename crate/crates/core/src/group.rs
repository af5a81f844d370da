//! Finitely generated abelian groups `Z/d_1 + ... + Z/d_s + Z^t` in
//! invariant-factor form, with `d_i >= 2` and `d_i | d_{i+1}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FGAbelianGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl FGAbelianGroup {
    /// Validates the divisibility chain; factors equal to 1 are rejected.
    pub fn new(invariant_factors: Vec<BigInt>, free_rank: usize) -> Result<Self> {
        for (i, d) in invariant_factors.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(Error::InvalidFactors(format!("factor {d} is below 2")));
            }
            if let Some(next) = invariant_factors.get(i + 1) {
                if !next.is_multiple_of(d) {
                    return Err(Error::InvalidFactors(format!("{d} does not divide {next}")));
                }
            }
        }
        Ok(Self {
            invariant_factors,
            free_rank,
        })
    }

    pub fn from_factors(factors: &[u64], free_rank: usize) -> Result<Self> {
        Self::new(
            factors.iter().map(|&d| BigInt::from(d)).collect(),
            free_rank,
        )
    }

    pub fn trivial() -> Self {
        Self {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// `|T|`, the order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// The largest invariant factor, or 1 for a torsion-free group.
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }

    /// The torsion subgroup as a group of its own.
    pub fn torsion_part(&self) -> Self {
        Self {
            invariant_factors: self.invariant_factors.clone(),
            free_rank: 0,
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            torsion: vec![BigInt::zero(); self.torsion_rank()],
            free: vec![BigInt::zero(); self.free_rank],
        }
    }

    /// Canonicalizes raw coordinates into an element of this group.
    pub fn element(&self, torsion: Vec<BigInt>, free: Vec<BigInt>) -> Result<GroupElement> {
        if torsion.len() != self.torsion_rank() || free.len() != self.free_rank {
            return Err(Error::CoordinateMismatch {
                want_torsion: self.torsion_rank(),
                want_free: self.free_rank,
                got_torsion: torsion.len(),
                got_free: free.len(),
            });
        }
        let torsion = torsion
            .into_iter()
            .zip(&self.invariant_factors)
            .map(|(x, d)| x.mod_floor(d))
            .collect();
        Ok(GroupElement { torsion, free })
    }

    pub fn element_i64(&self, torsion: &[i64], free: &[i64]) -> Result<GroupElement> {
        self.element(
            torsion.iter().map(|&x| BigInt::from(x)).collect(),
            free.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if x.torsion.len() != self.torsion_rank() || x.free.len() != self.free_rank {
            return Err(Error::CoordinateMismatch {
                want_torsion: self.torsion_rank(),
                want_free: self.free_rank,
                got_torsion: x.torsion.len(),
                got_free: x.free.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        self.element(
            x.torsion
                .iter()
                .zip(&y.torsion)
                .map(|(a, b)| a + b)
                .collect(),
            x.free.iter().zip(&y.free).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        self.element(
            x.torsion
                .iter()
                .zip(&y.torsion)
                .map(|(a, b)| a - b)
                .collect(),
            x.free.iter().zip(&y.free).map(|(a, b)| a - b).collect(),
        )
    }

    /// `ord(x)`: infinite iff a free coordinate is nonzero, otherwise the
    /// lcm over the factors of `d_i / gcd(x_i, d_i)`.
    pub fn element_order(&self, x: &GroupElement) -> Result<OrderValue> {
        self.check(x)?;
        if x.free.iter().any(|c| !c.is_zero()) {
            return Ok(OrderValue::Infinite);
        }
        let n = x
            .torsion
            .iter()
            .zip(&self.invariant_factors)
            .map(|(xi, d)| d / xi.gcd(d))
            .fold(BigInt::one(), |acc, m| acc.lcm(&m));
        Ok(OrderValue::Finite(n))
    }

    /// `c * x` for a positive scalar `c`.
    pub fn scale(&self, c: &BigInt, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        if !c.is_positive() {
            return Err(Error::NonPositiveScalar(c.to_string()));
        }
        self.element(
            x.torsion.iter().map(|a| a * c).collect(),
            x.free.iter().map(|a| a * c).collect(),
        )
    }

    /// Membership of `x` in `c * T` for the torsion subgroup `T`, where
    /// `c >= 0`. Coordinate `i` of `c * T` is the subgroup `gcd(c, d_i) Z/d_i`;
    /// `0 * T` is the trivial subgroup.
    pub fn torsion_in_multiple(&self, c: &BigInt, torsion: &[BigInt]) -> bool {
        torsion
            .iter()
            .zip(&self.invariant_factors)
            .all(|(x, d)| x.is_multiple_of(&c.gcd(d)))
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            t => parts.push(format!("Z^{t}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Coordinates of an element; torsion coordinates lie in `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    torsion: Vec<BigInt>,
    free: Vec<BigInt>,
}

impl GroupElement {
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free(&self) -> &[BigInt] {
        &self.free
    }

    /// All coordinates, torsion first.
    pub fn coords(&self) -> Vec<BigInt> {
        self.torsion.iter().chain(&self.free).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.torsion.iter().chain(&self.free).all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderValue {
    Finite(BigInt),
    Infinite,
}

impl OrderValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, OrderValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            OrderValue::Finite(n) => Some(n),
            OrderValue::Infinite => None,
        }
    }
}

impl fmt::Display for OrderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderValue::Finite(n) => write!(f, "{n}"),
            OrderValue::Infinite => write!(f, "infinite"),
        }
    }
}

/// An automorphism of a finitely generated group sends `c x` to `d x`, for `x`
/// of finite order `n`, exactly when `gcd(c, n) == gcd(d, n)`.
pub fn lemma1_criterion(n: &BigInt, c: &BigInt, d: &BigInt) -> Result<bool> {
    for v in [n, c, d] {
        if !v.is_positive() {
            return Err(Error::NonPositiveScalar(v.to_string()));
        }
    }
    Ok(c.gcd(n) == d.gcd(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn rejects_bad_chains() {
        assert!(FGAbelianGroup::from_factors(&[2, 3], 0).is_err());
        assert!(FGAbelianGroup::from_factors(&[1, 4], 0).is_err());
        assert!(FGAbelianGroup::from_factors(&[0], 0).is_err());
        assert!(FGAbelianGroup::from_factors(&[2, 6, 12], 1).is_ok());
    }

    #[test]
    fn order_examples() {
        let z4 = FGAbelianGroup::from_factors(&[4], 0).unwrap();
        let x = z4.element_i64(&[2], &[]).unwrap();
        assert_eq!(z4.element_order(&x).unwrap(), OrderValue::Finite(b(2)));

        let z = FGAbelianGroup::from_factors(&[], 1).unwrap();
        let x = z.element_i64(&[], &[1]).unwrap();
        assert_eq!(z.element_order(&x).unwrap(), OrderValue::Infinite);

        let g = FGAbelianGroup::from_factors(&[2, 6], 0).unwrap();
        let x = g.element_i64(&[1, 3], &[]).unwrap();
        assert_eq!(g.element_order(&x).unwrap(), OrderValue::Finite(b(2)));

        for g in [z4, z, g] {
            assert_eq!(
                g.element_order(&g.identity()).unwrap(),
                OrderValue::Finite(b(1))
            );
        }
    }

    #[test]
    fn canonical_representatives() {
        let g = FGAbelianGroup::from_factors(&[4], 1).unwrap();
        let x = g.element_i64(&[-1], &[-3]).unwrap();
        assert_eq!(x.torsion(), &[b(3)]);
        assert_eq!(x.free(), &[b(-3)]);
    }

    #[test]
    fn coordinate_mismatch() {
        let g = FGAbelianGroup::from_factors(&[4], 0).unwrap();
        assert!(matches!(
            g.element_i64(&[1, 1], &[]),
            Err(Error::CoordinateMismatch { .. })
        ));
        let other = FGAbelianGroup::from_factors(&[], 1).unwrap().identity();
        assert!(g.element_order(&other).is_err());
        assert!(g.scale(&b(2), &other).is_err());
    }

    #[test]
    fn scale_examples() {
        let z4 = FGAbelianGroup::from_factors(&[4], 0).unwrap();
        let x = z4.element_i64(&[1], &[]).unwrap();
        assert_eq!(
            z4.scale(&b(6), &x).unwrap(),
            z4.element_i64(&[2], &[]).unwrap()
        );
        assert_eq!(z4.scale(&b(1), &x).unwrap(), x);
        let z = FGAbelianGroup::from_factors(&[], 1).unwrap();
        let y = z.element_i64(&[], &[1]).unwrap();
        assert_eq!(
            z.scale(&b(3), &y).unwrap(),
            z.element_i64(&[], &[3]).unwrap()
        );
        assert_eq!(
            z4.scale(&b(0), &x),
            Err(Error::NonPositiveScalar("0".into()))
        );
        assert!(z4.scale(&b(-1), &x).is_err());
    }

    #[test]
    fn gcd_criterion_examples() {
        assert!(lemma1_criterion(&b(4), &b(2), &b(6)).unwrap());
        assert!(!lemma1_criterion(&b(4), &b(1), &b(2)).unwrap());
        for c in 1..6 {
            for d in 1..6 {
                assert!(lemma1_criterion(&b(1), &b(c), &b(d)).unwrap());
            }
        }
        assert!(lemma1_criterion(&b(4), &b(0), &b(4)).is_err());
    }

    #[test]
    fn multiple_subgroup_membership() {
        let g = FGAbelianGroup::from_factors(&[2, 4], 0).unwrap();
        assert!(g.torsion_in_multiple(&b(2), &[b(0), b(2)]));
        assert!(!g.torsion_in_multiple(&b(2), &[b(1), b(0)]));
        assert!(g.torsion_in_multiple(&b(1), &[b(1), b(3)]));
        assert!(!g.torsion_in_multiple(&b(0), &[b(0), b(2)]));
        assert!(g.torsion_in_multiple(&b(0), &[b(0), b(0)]));
        // 3 is a unit mod 2 and mod 4
        assert!(g.torsion_in_multiple(&b(3), &[b(1), b(1)]));
    }

    #[test]
    fn display() {
        assert_eq!(FGAbelianGroup::trivial().to_string(), "0");
        assert_eq!(
            FGAbelianGroup::from_factors(&[2, 4], 2)
                .unwrap()
                .to_string(),
            "Z/2 + Z/4 + Z^2"
        );
    }
}
