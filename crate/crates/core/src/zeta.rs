//! Candidate L-polynomials and their point-count predictions.
//!
//! Everything is exact integer arithmetic. A candidate `h(t)` is either a
//! power of a quadratic `t^2 + b t + c` or a power of a linear factor
//! `t + a`; its roots' power sums follow from the factor's two-term (resp.
//! one-term) recurrence, and `N_n = q^n + 1 - p_n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{HermitianParams, SuzukiParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LPolynomial {
    /// `(t^2 + b t + c)^multiplicity`
    Factored { b: BigInt, c: BigInt, multiplicity: u64 },
    /// `(t + a)^multiplicity`
    Linear { a: BigInt, multiplicity: u64 },
}

/// Exact counts `N_n`, keyed by extension degree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PointCountSeries {
    pub counts: BTreeMap<u32, BigInt>,
}

impl PointCountSeries {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u64)>) -> Self {
        Self { counts: pairs.into_iter().map(|(n, c)| (n, BigInt::from(c))).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountCheck {
    pub n: String,
    pub predicted: String,
    pub counted: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaReport {
    pub candidate: String,
    pub checks: Vec<CountCheck>,
    pub overall: bool,
}

impl ZetaReport {
    /// First extension degree where prediction and count differ.
    pub fn first_failure(&self) -> Option<u32> {
        self.checks.iter().find(|c| !c.pass).and_then(|c| c.n.parse().ok())
    }
}

impl LPolynomial {
    /// `(t^2 + 2 q0 t + q)^g` for the Suzuki curve.
    pub fn suzuki(params: &SuzukiParams) -> Self {
        Self::Factored { b: BigInt::from(2 * params.q0), c: BigInt::from(params.q), multiplicity: params.genus() }
    }

    /// `(t + sqrt q)^(2g)` for the Hermitian curve.
    pub fn hermitian(params: &HermitianParams) -> Self {
        Self::Linear { a: BigInt::from(params.sqrt_q), multiplicity: 2 * params.genus() }
    }

    pub fn degree(&self) -> u64 {
        match self {
            Self::Factored { multiplicity, .. } => 2 * multiplicity,
            Self::Linear { multiplicity, .. } => *multiplicity,
        }
    }

    pub fn genus(&self) -> u64 {
        self.degree() / 2
    }

    /// The `q` the candidate is normalised for: `c` or `a^2`.
    pub fn q(&self) -> BigInt {
        match self {
            Self::Factored { c, .. } => c.clone(),
            Self::Linear { a, .. } => a * a,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::Factored { b, c, multiplicity } => format!("(t^2+{b}t+{c})^{multiplicity}"),
            Self::Linear { a, multiplicity } => format!("(t+{a})^{multiplicity}"),
        }
    }

    /// Reciprocal roots have absolute value `sqrt q`.
    pub fn roots_on_circle(&self) -> bool {
        match self {
            Self::Factored { b, c, .. } => b * b <= BigInt::from(4) * c,
            Self::Linear { .. } => true,
        }
    }

    /// Power sums `p_1 .. p_{n_max}` of the roots.
    pub fn power_sums(&self, n_max: u32) -> Vec<BigInt> {
        let (factor_sums, mult) = match self {
            Self::Factored { b, c, multiplicity } => {
                // u_n = -b u_{n-1} - c u_{n-2}, u_0 = 2, u_1 = -b
                let mut u = vec![BigInt::from(2), -b.clone()];
                for n in 2..=n_max as usize {
                    let next = -(b * &u[n - 1]) - c * &u[n - 2];
                    u.push(next);
                }
                (u, *multiplicity)
            }
            Self::Linear { a, multiplicity } => {
                let mut u = vec![BigInt::one()];
                for n in 1..=n_max as usize {
                    let next = -(a * &u[n - 1]);
                    u.push(next);
                }
                (u, *multiplicity)
            }
        };
        factor_sums.into_iter().skip(1).take(n_max as usize).map(|u| u * mult).collect()
    }

    /// `N_n = q^n + 1 - p_n`.
    pub fn predicted_count(&self, q: &BigInt, n: u32) -> BigInt {
        let p_n = if n == 0 { BigInt::from(self.degree()) } else { self.power_sums(n).pop().unwrap() };
        q.pow(n) + 1 - p_n
    }

    /// Coefficients `a_0 .. a_{2g}` of `h(t)`, low-to-high.
    pub fn h_coefficients(&self) -> Vec<BigInt> {
        let (factor, mult) = match self {
            Self::Factored { b, c, multiplicity } => (vec![c.clone(), b.clone(), BigInt::one()], *multiplicity),
            Self::Linear { a, multiplicity } => (vec![a.clone(), BigInt::one()], *multiplicity),
        };
        let mut acc = vec![BigInt::one()];
        for _ in 0..mult {
            let mut next = vec![BigInt::zero(); acc.len() + factor.len() - 1];
            for (i, x) in acc.iter().enumerate() {
                for (j, y) in factor.iter().enumerate() {
                    next[i + j] += x * y;
                }
            }
            acc = next;
        }
        acc
    }

    /// Coefficients `c_0 .. c_{2g}` of `L(T) = T^(2g) h(1/T)`.
    pub fn l_coefficients(&self) -> Vec<BigInt> {
        let mut v = self.h_coefficients();
        v.reverse();
        v
    }

    /// `c_{2g-i} = q^(g-i) c_i` for `0 <= i <= g`.
    pub fn functional_equation_holds(&self) -> bool {
        let c = self.l_coefficients();
        let (g, q) = (self.genus() as usize, self.q());
        (0..=g).all(|i| c[2 * g - i] == q.pow((g - i) as u32) * &c[i])
    }

    /// `p_n^2 <= 4 g^2 q^n` for `n = 1..=n_max`.
    pub fn power_sum_bound_holds(&self, n_max: u32) -> bool {
        let (g, q) = (BigInt::from(self.genus()), self.q());
        self.power_sums(n_max).iter().enumerate().all(|(i, p)| p * p <= BigInt::from(4) * &g * &g * q.pow(i as u32 + 1))
    }

    pub fn verify_against_counts(&self, counts: &PointCountSeries) -> ZetaReport {
        let q = self.q();
        let checks: Vec<CountCheck> = counts
            .counts
            .iter()
            .map(|(&n, counted)| {
                let predicted = self.predicted_count(&q, n);
                CountCheck {
                    n: n.to_string(),
                    pass: &predicted == counted,
                    predicted: predicted.to_string(),
                    counted: counted.to_string(),
                }
            })
            .collect();
        ZetaReport { candidate: self.describe(), overall: checks.iter().all(|c| c.pass), checks }
    }
}

/// True iff `N = q + 2 g sqrt(q) + 1`.
pub fn maximality_check(q: u64, genus: u64, count: u64) -> Result<bool> {
    let r = q.sqrt();
    if r * r != q {
        return Err(Error::NotSquare(q));
    }
    Ok(count as u128 == q as u128 + 2 * genus as u128 * r as u128 + 1)
}

/// Compares the two readings of the Suzuki parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConventionCheck {
    pub s: u32,
    /// `N_1` predicted with `q = 2 q0^2` and the target `q^2 + 1`.
    pub corrected: (String, String),
    /// `N_1` predicted with `q = 2 q0` and the target `q^2 + 1`.
    pub literal: (String, String),
}

impl ConventionCheck {
    pub fn corrected_matches(&self) -> bool {
        self.corrected.0 == self.corrected.1
    }

    pub fn literal_matches(&self) -> bool {
        self.literal.0 == self.literal.1
    }
}

/// Predicts `N_1` from `(t^2 + 2 q0 t + q)^(q0 (q - 1))` under both readings
/// of `q` and compares each with `q^2 + 1`.
pub fn parameter_convention_check(s: u32) -> ConventionCheck {
    let q0 = 1u64 << s;
    let reading = |q: u64| {
        let h = LPolynomial::Factored { b: BigInt::from(2 * q0), c: BigInt::from(q), multiplicity: q0 * (q - 1) };
        let predicted = h.predicted_count(&BigInt::from(q), 1);
        (predicted.to_string(), (BigInt::from(q).pow(2u32) + 1u32).to_string())
    };
    ConventionCheck { s, corrected: reading(2 * q0 * q0), literal: reading(2 * q0) }
}
