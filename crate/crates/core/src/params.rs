//! Curve parameters for the two named families.

use crate::error::{Error, Result};
use num_integer::Roots;
use serde::Serialize;

/// Suzuki parameters: `q0 = 2^s`, `q = 2 q0^2 = 2^(2s+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SuzukiParams {
    pub s: u32,
    pub q0: u64,
    pub q: u64,
}

impl SuzukiParams {
    pub fn new(s: u32) -> Result<Self> {
        if s == 0 || s > 9 {
            return Err(Error::InvalidParameter(format!("suzuki s must lie in 1..=9, got {s}")));
        }
        let q0 = 1u64 << s;
        Ok(Self { s, q0, q: 2 * q0 * q0 })
    }

    /// Degree of GF(q) over GF(2).
    pub fn field_degree(&self) -> u32 {
        2 * self.s + 1
    }

    pub fn genus(&self) -> u64 {
        self.q0 * (self.q - 1)
    }

    pub fn rational_points(&self) -> u64 {
        self.q * self.q + 1
    }

    /// Degree `q + 2q0 + 1` of the linear system `|(q + 2q0 + 1) P0|`.
    pub fn linear_system_degree(&self) -> u64 {
        self.q + 2 * self.q0 + 1
    }
}

/// Hermitian parameters: `q = p^m` with `m` even, `sqrt_q = p^(m/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct HermitianParams {
    pub q: u64,
    pub sqrt_q: u64,
    pub p: u32,
    pub m: u32,
}

impl HermitianParams {
    pub fn new(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let sqrt_q = q.sqrt();
        if sqrt_q * sqrt_q != q || m % 2 != 0 {
            return Err(Error::NotSquare(q));
        }
        Ok(Self { q, sqrt_q, p: p as u32, m })
    }

    pub fn genus(&self) -> u64 {
        self.sqrt_q * (self.sqrt_q - 1) / 2
    }

    pub fn rational_points(&self) -> u64 {
        self.q + 2 * self.genus() * self.sqrt_q + 1
    }
}

/// Splits `n` as `p^m` with `p` prime, if possible.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let (mut rest, mut m) = (n, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suzuki_relations() {
        for s in 1..=4 {
            let p = SuzukiParams::new(s).unwrap();
            assert_eq!(p.q0, 1 << s);
            assert_eq!(p.q, 1 << (2 * s + 1));
            assert_eq!(p.q0 * p.q0, p.q / 2);
        }
        let p = SuzukiParams::new(1).unwrap();
        assert_eq!((p.q0, p.q, p.genus(), p.rational_points()), (2, 8, 14, 65));
        assert!(SuzukiParams::new(0).is_err());
    }

    #[test]
    fn hermitian_parsing() {
        let h = HermitianParams::new(16).unwrap();
        assert_eq!((h.sqrt_q, h.p, h.m, h.genus(), h.rational_points()), (4, 2, 4, 6, 65));
        let h = HermitianParams::new(9).unwrap();
        assert_eq!((h.sqrt_q, h.p, h.genus(), h.rational_points()), (3, 3, 3, 28));
        assert_eq!(HermitianParams::new(8), Err(Error::NotSquare(8)));
        assert_eq!(HermitianParams::new(36), Err(Error::NotPrimePower(36)));
    }
}
