//! Univariate polynomials over GF(p^m) with Hasse derivatives.

use crate::field::{Fe, Field};

/// Dense polynomial, coefficients low-to-high, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Fe>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(n: usize, c: Fe) -> Self {
        let mut coeffs = vec![Fe::ZERO; n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    /// Sum of `c x^n` terms; repeated exponents are added.
    pub fn from_terms(f: &Field, terms: impl IntoIterator<Item = (usize, Fe)>) -> Self {
        let mut coeffs = Vec::new();
        for (n, c) in terms {
            if coeffs.len() <= n {
                coeffs.resize(n + 1, Fe::ZERO);
            }
            coeffs[n] = f.add(coeffs[n], c);
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Fe {
        self.coeffs.get(n).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, f: &Field, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn mul(&self, f: &Field, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(out)
    }

    /// `self^(p^k)`: coefficient Frobenius and exponent scaling.
    pub fn frobenius_power(&self, f: &Field, k: u32) -> Self {
        let step = (f.characteristic() as usize).pow(k);
        Self::from_terms(f, self.coeffs.iter().enumerate().map(|(n, &c)| (n * step, f.frobenius(c, k))))
    }

    pub fn eval(&self, f: &Field, x: Fe) -> Fe {
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }
}

/// `binom(n, k) mod p` by Lucas' theorem.
pub fn lucas_binomial(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binomial(nd, kd) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn small_binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `D^(j)`: `x^n -> binom(n, j) x^(n-j)`, extended linearly.
pub fn hasse_derivative(f: &Field, poly: &UniPoly, j: u64) -> UniPoly {
    let p = f.characteristic() as u64;
    let terms = poly.coeffs.iter().enumerate().skip(j as usize).map(|(n, &c)| {
        let b = lucas_binomial(n as u64, j, p);
        (n - j as usize, f.mul(f.from_int(b as i64), c))
    });
    UniPoly::from_terms(f, terms)
}

/// Returns `g` with `g^(p^k) = poly` when `D^(j) poly = 0` for all
/// `1 <= j < p^k`, and `None` otherwise. In characteristic 2 this is the
/// `2^k`-th root.
pub fn frobenius_root(f: &Field, poly: &UniPoly, k: u32) -> Option<UniPoly> {
    let step = (f.characteristic() as u64).pow(k);
    if (1..step).any(|j| !hasse_derivative(f, poly, j).is_zero()) {
        return None;
    }
    let mut out = Vec::new();
    for (n, &c) in poly.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !(n as u64).is_multiple_of(step) {
            return None;
        }
        let idx = (n as u64 / step) as usize;
        out.resize(idx + 1, Fe::ZERO);
        out[idx] = f.frobenius_inv(c, k);
    }
    Some(UniPoly::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn gf(m: u32) -> Arc<Field> {
        Field::get(2, m).unwrap()
    }

    fn mono(n: usize) -> UniPoly {
        UniPoly::monomial(n, Fe::ONE)
    }

    fn exact_binomial(n: u64, k: u64) -> u128 {
        if k > n {
            return 0;
        }
        (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
    }

    #[test]
    fn lucas_matches_exact_binomials() {
        for p in [2u64, 3, 5] {
            for n in 0..40 {
                for k in 0..=n {
                    assert_eq!(lucas_binomial(n, k, p) as u128, exact_binomial(n, k) % p as u128);
                }
            }
        }
        // bitwise criterion in characteristic 2
        for n in 0..64u64 {
            for k in 0..64u64 {
                assert_eq!(lucas_binomial(n, k, 2) == 1, k & n == k);
            }
        }
    }

    #[test]
    fn derivative_examples() {
        let f = gf(3);
        assert_eq!(hasse_derivative(&f, &mono(3), 1), mono(2));
        for j in 1..8 {
            assert!(hasse_derivative(&f, &mono(8), j).is_zero());
        }
        let p = mono(6).add(&f, &mono(5));
        // binom(6,2) = 15 odd, binom(5,2) = 10 even
        assert_eq!(hasse_derivative(&f, &p, 2), mono(4));
        assert_eq!(hasse_derivative(&f, &p, 0), p);
    }

    #[test]
    fn root_examples() {
        let f = gf(3);
        // x^(2 q0) at s = 1 is a 2^(s+1)-th power
        assert_eq!(frobenius_root(&f, &mono(4), 2), Some(mono(1)));
        assert_eq!(frobenius_root(&f, &mono(4), 1), Some(mono(2)));
        assert_eq!(frobenius_root(&f, &mono(3), 1), None);
        let g = f.generator();
        let p = UniPoly::from_terms(&f, [(8, g), (0, f.mul(g, g))]);
        let r = frobenius_root(&f, &p, 3).unwrap();
        assert_eq!(r.frobenius_power(&f, 3), p);
    }

    #[test]
    fn odd_characteristic_root() {
        let f = Field::get(3, 2).unwrap();
        let g = f.generator();
        let p = UniPoly::from_terms(&f, [(9, g), (3, Fe::ONE), (0, g)]);
        let r = frobenius_root(&f, &p, 1).unwrap();
        assert_eq!(r.frobenius_power(&f, 1), p);
        assert_eq!(frobenius_root(&f, &p, 2), None);
    }

    fn poly_strategy() -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0u32..16, 0..24)
    }

    proptest! {
        #[test]
        fn composition_law(c in poly_strategy(), i in 0u64..12, j in 0u64..12) {
            let f = gf(4);
            let p = UniPoly::new(c.into_iter().map(Fe).collect());
            let lhs = hasse_derivative(&f, &hasse_derivative(&f, &p, j), i);
            let b = lucas_binomial(i + j, i, 2);
            let rhs = if b == 0 { UniPoly::zero() } else { hasse_derivative(&f, &p, i + j) };
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn root_round_trip(c in poly_strategy(), k in 0u32..4) {
            let f = gf(4);
            let p = UniPoly::new(c.into_iter().map(Fe).collect());
            if let Some(r) = frobenius_root(&f, &p, k) {
                prop_assert_eq!(r.frobenius_power(&f, k), p.clone());
            }
            // a genuine p^k-th power always has a root
            let pk = p.frobenius_power(&f, k);
            prop_assert_eq!(frobenius_root(&f, &pk, k), Some(p));
        }

        #[test]
        fn product_rule(a in poly_strategy(), b in poly_strategy()) {
            // D^(1)(ab) = a D^(1) b + b D^(1) a
            let f = gf(4);
            let a = UniPoly::new(a.into_iter().map(Fe).collect());
            let b = UniPoly::new(b.into_iter().map(Fe).collect());
            let lhs = hasse_derivative(&f, &a.mul(&f, &b), 1);
            let rhs = a.mul(&f, &hasse_derivative(&f, &b, 1)).add(&f, &b.mul(&f, &hasse_derivative(&f, &a, 1)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
