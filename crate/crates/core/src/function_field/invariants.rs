//! Degree identities for the Frobenius and ramification divisors, and the
//! genus and point-count bounds used alongside them.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function_field::orders::OrderSequence;
use crate::params::SuzukiParams;

/// Input to the degree formulas for `S` (Frobenius) and `R` (ramification).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StohrVolochData {
    pub genus: u64,
    pub q: u64,
    /// Degree of the linear series.
    pub degree: u64,
    pub eps: OrderSequence,
    pub nu: OrderSequence,
    /// `#X(GF(q))`.
    pub points: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorDegrees {
    pub deg_s: BigInt,
    pub deg_r: BigInt,
}

impl StohrVolochData {
    /// The Suzuki data with orders taken from the closed forms.
    pub fn suzuki(p: &SuzukiParams) -> Self {
        let (q, q0) = (p.q, p.q0);
        Self {
            genus: p.genus(),
            q,
            degree: p.linear_system_degree(),
            eps: OrderSequence(vec![0, 1, q0, 2 * q0, q]),
            nu: OrderSequence(vec![0, q0, 2 * q0, q]),
            points: p.rational_points(),
        }
    }

    pub fn dimension(&self) -> u64 {
        self.eps.dimension() as u64
    }

    pub fn is_consistent(&self) -> bool {
        self.eps.is_valid()
            && self.nu.0.len() + 1 == self.eps.0.len()
            && (0..self.eps.0.len()).any(|i| self.eps.delete(i) == self.nu)
    }

    /// `deg S = (sum nu)(2g-2) + (q+r) d` and `deg R = (sum eps)(2g-2) + (r+1) d`.
    pub fn degrees(&self) -> DivisorDegrees {
        let k = BigInt::from(2 * self.genus as i64 - 2);
        let d = BigInt::from(self.degree);
        let r = self.dimension();
        let sum = |o: &OrderSequence| o.0.iter().map(|&v| BigInt::from(v)).sum::<BigInt>();
        DivisorDegrees {
            deg_s: sum(&self.nu) * &k + BigInt::from(self.q + r) * &d,
            deg_r: sum(&self.eps) * &k + BigInt::from(r + 1) * &d,
        }
    }
}

/// Weight of `P` in `S`: `sum_{i=1}^{r} (j_i - nu_(i-1))`.
pub fn frobenius_weight(j: &OrderSequence, nu: &OrderSequence) -> i64 {
    j.0.iter().skip(1).zip(&nu.0).map(|(&a, &b)| a as i64 - b as i64).sum()
}

/// Weight of `P` in `R`: `sum_i (j_i - eps_i)`.
pub fn ramification_weight(j: &OrderSequence, eps: &OrderSequence) -> i64 {
    j.0.iter().zip(&eps.0).map(|(&a, &b)| a as i64 - b as i64).sum()
}

/// `(d - 1 - (r-1)/2)^2 / (r-1)`; for `d = q + 2q0 + 1` this is the
/// Castelnuovo-type genus bound for a nondegenerate curve in `P^r`.
pub fn castelnuovo_bound(d: u64, r: u64) -> Result<BigRational> {
    if r <= 1 {
        return Err(Error::InvalidParameter(format!("castelnuovo bound needs r >= 2, got {r}")));
    }
    let rm1 = BigInt::from(r - 1);
    let base = BigRational::from_integer(BigInt::from(d) - 1) - BigRational::new(rm1.clone(), BigInt::from(2));
    Ok(&base * &base / BigRational::from_integer(rm1))
}

/// `1 + q m1`.
pub fn lewittes_bound(q: u64, m1: u64) -> BigInt {
    BigInt::from(q) * m1 + 1
}

/// Compares a bound against the value it should dominate.
pub fn compare(bound: &BigRational, value: u64) -> Ordering {
    bound.cmp(&BigRational::from_integer(value.into()))
}

/// `{a + q0 b + 2 q0 c + q d : a + b + c + d <= 2q0 - 2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalOrders {
    pub set: BTreeSet<u64>,
    pub genus: u64,
    pub witness: u64,
}

impl CanonicalOrders {
    pub fn new(p: &SuzukiParams) -> Self {
        let (q, q0) = (p.q, p.q0);
        let bound = 2 * q0 - 2;
        let mut set = BTreeSet::new();
        for a in 0..=bound {
            for b in 0..=bound - a {
                for c in 0..=bound - a - b {
                    for d in 0..=bound - a - b - c {
                        set.insert(a + q0 * b + 2 * q0 * c + q * d);
                    }
                }
            }
        }
        Self { set, genus: p.genus(), witness: q0 * q }
    }

    pub fn cardinality(&self) -> usize {
        self.set.len()
    }

    pub fn max(&self) -> u64 {
        self.set.last().copied().unwrap_or(0)
    }

    pub fn within_genus(&self) -> bool {
        self.cardinality() as u64 <= self.genus
    }

    pub fn below_canonical_degree(&self) -> bool {
        self.max() <= 2 * self.genus - 2
    }

    /// The set contains `q0 q`, which exceeds `g - 1`: the canonical series
    /// is non-classical.
    pub fn non_classical_witness(&self) -> bool {
        self.set.contains(&self.witness) && self.witness > self.genus - 1
    }
}

/// `eps_i + eps_j <= eps_(i+j)` whenever `i + j <= r`.
pub fn subadditivity_check(eps: &OrderSequence) -> bool {
    let e = &eps.0;
    (0..e.len()).all(|i| (0..e.len() - i).all(|j| e[i] + e[j] <= e[i + j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(v: &[u64]) -> OrderSequence {
        OrderSequence(v.to_vec())
    }

    #[test]
    fn suzuki_degrees_s1_s2() {
        let p1 = SuzukiParams::new(1).unwrap();
        let d = StohrVolochData::suzuki(&p1);
        assert!(d.is_consistent());
        let deg = d.degrees();
        assert_eq!(deg.deg_s, BigInt::from(520));
        assert_eq!(deg.deg_r, BigInt::from(455));
        assert_eq!(deg.deg_s, BigInt::from((4 + 2 * p1.q0) * 65));
        assert_eq!(deg.deg_r, BigInt::from((2 * p1.q0 + 3) * 65));
        let p2 = SuzukiParams::new(2).unwrap();
        assert_eq!(StohrVolochData::suzuki(&p2).degrees().deg_s, BigInt::from(12300));
    }

    #[test]
    fn degenerate_genus_zero() {
        let d = StohrVolochData { genus: 0, q: 2, degree: 1, eps: seq(&[0, 1]), nu: seq(&[0]), points: 3 };
        // (0)(-2) + (2+1)(1) and (1)(-2) + 2
        assert_eq!(d.degrees(), DivisorDegrees { deg_s: 3.into(), deg_r: 0.into() });
    }

    #[test]
    fn point_weights() {
        for s in 1..=4 {
            let p = SuzukiParams::new(s).unwrap();
            let (q, q0) = (p.q, p.q0);
            let j = seq(&[0, 1, q0 + 1, 2 * q0 + 1, q + 2 * q0 + 1]);
            let d = StohrVolochData::suzuki(&p);
            assert_eq!(frobenius_weight(&j, &d.nu), 4 + 2 * q0 as i64);
            assert_eq!(ramification_weight(&j, &d.eps), 2 * q0 as i64 + 3);
            let deg = d.degrees();
            assert_eq!(deg.deg_s, BigInt::from(frobenius_weight(&j, &d.nu)) * d.points);
            assert_eq!(deg.deg_r, BigInt::from(ramification_weight(&j, &d.eps)) * d.points);
        }
    }

    #[test]
    fn bounds() {
        let b4 = castelnuovo_bound(13, 4).unwrap();
        assert_eq!(b4, BigRational::new(147.into(), 4.into()));
        assert_eq!(compare(&b4, 28), Ordering::Greater);
        let b6 = castelnuovo_bound(13, 6).unwrap();
        assert_eq!(b6, BigRational::new(361.into(), 20.into()));
        assert_eq!(compare(&b6, 28), Ordering::Less);
        assert!(castelnuovo_bound(13, 1).is_err());
        assert!(castelnuovo_bound(13, 0).is_err());
        assert_eq!(lewittes_bound(8, 8), BigInt::from(65));
    }

    #[test]
    fn canonical_orders_s1() {
        let c = CanonicalOrders::new(&SuzukiParams::new(1).unwrap());
        let expected: BTreeSet<u64> = [0, 1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 16].into();
        assert_eq!(c.set, expected);
        assert_eq!((c.cardinality(), c.max()), (12, 16));
        assert!(c.within_genus() && c.below_canonical_degree() && c.non_classical_witness());
    }

    #[test]
    fn canonical_orders_larger_s() {
        for s in 2..=3 {
            let c = CanonicalOrders::new(&SuzukiParams::new(s).unwrap());
            assert!(c.within_genus() && c.below_canonical_degree() && c.non_classical_witness(), "s={s}");
        }
    }

    #[test]
    fn subadditivity_examples() {
        assert!(subadditivity_check(&seq(&[0, 1, 2, 4, 8])));
        assert!(!subadditivity_check(&seq(&[0, 2, 3])));
        assert!(subadditivity_check(&seq(&[0, 1, 2, 3, 4, 5])));
    }

    proptest! {
        #[test]
        fn subadditivity_matches_brute_force(mut v in prop::collection::btree_set(1u64..40, 0..6)) {
            v.insert(0);
            let e: Vec<u64> = v.into_iter().collect();
            let mut brute = true;
            for i in 0..e.len() {
                for j in 0..e.len() {
                    if i + j < e.len() && e[i] + e[j] > e[i + j] {
                        brute = false;
                    }
                }
            }
            prop_assert_eq!(subadditivity_check(&OrderSequence(e)), brute);
        }
    }
}
