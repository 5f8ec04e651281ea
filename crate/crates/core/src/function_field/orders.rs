//! Vanishing sequences of a linear system at points, and Frobenius orders.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curve::{CurveModel, Family};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::function_field::expansion::{LocalExpander, LocalExpansion};
use crate::function_field::ring::{CoordinateRing, RingElement, SuzukiFunctions};
use crate::par::{self, Execution};

/// An affine point `(x, y)`.
pub type Point = (Fe, Fe);

/// Strictly increasing orders `j_0 < ... < j_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderSequence(pub Vec<u64>);

impl OrderSequence {
    pub fn orders(&self) -> &[u64] {
        &self.0
    }

    /// The dimension `r` of the linear series.
    pub fn dimension(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_valid(&self) -> bool {
        self.0.first() == Some(&0) && self.0.windows(2).all(|w| w[0] < w[1])
    }

    /// The sequence with the entry at `index` removed.
    pub fn delete(&self, index: usize) -> OrderSequence {
        let mut v = self.0.clone();
        v.remove(index);
        OrderSequence(v)
    }
}

/// Result of elimination at one point: the orders and, for each order, the
/// coefficients of a basis combination vanishing to exactly that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vanishing {
    pub orders: OrderSequence,
    pub hyperplanes: Vec<Vec<Fe>>,
    pub precision: usize,
}

/// Row-reduces the expansion matrix column by column. At each column the
/// first not-yet-pivoted row with a nonzero entry becomes the pivot.
#[allow(clippy::needless_range_loop)]
pub fn vanishing_from_expansions(f: &Field, expansions: &[LocalExpansion]) -> Result<Vanishing> {
    let rows = expansions.len();
    let precision = expansions.iter().map(LocalExpansion::precision).min().unwrap_or(0);
    let mut mat: Vec<Vec<Fe>> = expansions.iter().map(|e| e.coeffs()[..precision].to_vec()).collect();
    let mut comb: Vec<Vec<Fe>> =
        (0..rows).map(|i| (0..rows).map(|k| if k == i { Fe::ONE } else { Fe::ZERO }).collect()).collect();
    let mut pivoted = vec![false; rows];
    let mut found = Vec::with_capacity(rows);
    for col in 0..precision {
        if found.len() == rows {
            break;
        }
        let Some(p) = (0..rows).find(|&i| !pivoted[i] && !mat[i][col].is_zero()) else {
            continue;
        };
        pivoted[p] = true;
        let inv = f.inv(mat[p][col]).expect("nonzero pivot");
        for i in 0..rows {
            if pivoted[i] || mat[i][col].is_zero() {
                continue;
            }
            let factor = f.mul(mat[i][col], inv);
            for k in col..precision {
                mat[i][k] = f.sub(mat[i][k], f.mul(factor, mat[p][k]));
            }
            for k in 0..rows {
                comb[i][k] = f.sub(comb[i][k], f.mul(factor, comb[p][k]));
            }
        }
        found.push((col as u64, comb[p].clone()));
    }
    if found.len() < rows {
        return Err(Error::PrecisionExhausted { precision, wanted: rows });
    }
    let (orders, hyperplanes) = found.into_iter().unzip();
    Ok(Vanishing { orders: OrderSequence(orders), hyperplanes, precision })
}

/// Vanishing sequence at `point` with a fixed precision.
pub fn vanishing_sequence(
    ring: &CoordinateRing,
    basis: &[RingElement],
    point: (Fe, Fe),
    precision: usize,
) -> Result<Vanishing> {
    let ex = LocalExpander::new(ring, point, precision)?;
    vanishing_from_expansions(ring.field(), &ex.expand_all(basis))
}

/// Starts at `precision` and doubles on exhaustion, up to `cap`.
pub fn vanishing_sequence_adaptive(
    ring: &CoordinateRing,
    basis: &[RingElement],
    point: (Fe, Fe),
    precision: usize,
    cap: usize,
) -> Result<Vanishing> {
    let mut n = precision.max(2);
    loop {
        match vanishing_sequence(ring, basis, point, n) {
            Err(Error::PrecisionExhausted { .. }) if n < cap => n = (2 * n).min(cap),
            other => return other,
        }
    }
}

/// Frobenius-order data at a point `P` over an extension of GF(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusOrders {
    /// Least `I` such that every hyperplane `h_k` with `k > I` passes
    /// through `Fr(P)`.
    pub index: usize,
    /// The vanishing orders with `j_I` removed.
    pub nu: OrderSequence,
    /// Values of `h_0 ..= h_r` at `Fr(P)`.
    pub values_at_image: Vec<Fe>,
}

pub fn frobenius_orders(
    ring: &CoordinateRing,
    basis: &[RingElement],
    van: &Vanishing,
    point: (Fe, Fe),
    q: u64,
) -> FrobeniusOrders {
    let f = &**ring.field();
    let image = (f.pow(point.0, q), f.pow(point.1, q));
    let basis_values: Vec<Fe> = basis.iter().map(|e| ring.eval(e, image.0, image.1)).collect();
    let values_at_image: Vec<Fe> = van
        .hyperplanes
        .iter()
        .map(|h| h.iter().zip(&basis_values).fold(Fe::ZERO, |acc, (&c, &v)| f.add(acc, f.mul(c, v))))
        .collect();
    let index = values_at_image.iter().rposition(|v| !v.is_zero()).unwrap_or(0);
    FrobeniusOrders { index, nu: van.orders.delete(index), values_at_image }
}

/// Default and maximum expansion precision for a named family.
pub fn precision_window(model: &CurveModel) -> (usize, usize) {
    let top = match model.family() {
        Family::Suzuki(p) => p.linear_system_degree(),
        Family::Hermitian(p) => p.sqrt_q + 1,
        Family::GenericPlane(_) => 8,
    } as usize;
    (top + 1, 4 * top)
}

/// The basis of the linear system used for order computations:
/// `1, x, y, z, w` (Suzuki) or `1, x, y` (Hermitian).
pub fn standard_basis(model: &CurveModel, ring: &CoordinateRing) -> Result<Vec<RingElement>> {
    match model.family() {
        Family::Suzuki(p) => Ok(SuzukiFunctions::new(ring, p.q0).basis(ring)),
        Family::Hermitian(_) => Ok(vec![ring.one(), ring.x(), ring.y()]),
        Family::GenericPlane(_) => Err(Error::InvalidParameter("no standard basis for a generic curve".into())),
    }
}

/// Smallest `n >= 2` with `#X(GF(q^n)) > #X(GF(q))`, found from the
/// L-polynomial without enumerating anything.
pub fn first_extension_with_new_points(model: &CurveModel) -> Result<u32> {
    use crate::zeta::LPolynomial;
    let h = match model.family() {
        Family::Suzuki(p) => LPolynomial::suzuki(p),
        Family::Hermitian(p) => LPolynomial::hermitian(p),
        Family::GenericPlane(_) => return Err(Error::InvalidParameter("generic curve".into())),
    };
    let q = model.q();
    let n1 = h.predicted_count(&q.into(), 1);
    (2..=8)
        .find(|&n| h.predicted_count(&q.into(), n) > n1)
        .ok_or_else(|| Error::InvalidParameter("no new points below degree 8".into()))
}

/// Affine points of the curve over `field` split by whether both
/// coordinates lie in GF(q).
#[derive(Debug, Clone)]
pub struct PointSplit {
    pub rational: Vec<(Fe, Fe)>,
    pub non_rational: Vec<(Fe, Fe)>,
}

pub fn split_points(field: &Field, base_degree: u32, points: &[(Fe, Fe)]) -> PointSplit {
    let (rational, non_rational) =
        points.iter().partition(|&&(a, b)| field.in_subfield(a, base_degree) && field.in_subfield(b, base_degree));
    PointSplit { rational, non_rational }
}

/// The first `lex` points in list order plus `random` further distinct
/// points drawn with a seeded generator.
pub fn select_samples(points: &[(Fe, Fe)], lex: usize, random: usize, seed: u64) -> Vec<(Fe, Fe)> {
    let head = lex.min(points.len());
    let mut out = points[..head].to_vec();
    let rest = &points[head..];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = sample(&mut rng, rest.len(), random.min(rest.len())).into_vec();
    picks.sort_unstable();
    out.extend(picks.into_iter().map(|i| rest[i]));
    out
}

/// Orders and Frobenius data at one sampled point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointOrders {
    pub point: (Fe, Fe),
    pub rational: bool,
    pub orders: OrderSequence,
    pub precision: usize,
    /// Valuation of `x - a`; 1 when `x - a` is a local parameter.
    pub parameter_valuation: Option<usize>,
    pub frobenius: Option<FrobeniusOrders>,
}

/// Everything the order checks need: a ring over GF(q^n), the standard
/// basis, and sampled rational and non-rational points.
#[derive(Debug, Clone)]
pub struct OrderLab {
    pub model: CurveModel,
    pub extension: u32,
    pub ring: CoordinateRing,
    pub basis: Vec<RingElement>,
    pub split: PointSplit,
}

impl OrderLab {
    /// Works over GF(q^n) for the least `n >= 2` with non-rational points.
    pub fn new(model: &CurveModel) -> Result<Self> {
        let n = first_extension_with_new_points(model)?;
        Self::over(model, n)
    }

    pub fn over(model: &CurveModel, n: u32) -> Result<Self> {
        let form = model
            .artin_schreier()
            .ok_or_else(|| Error::InvalidParameter("order computations need a named family".into()))?;
        let field = model.extension_field(n)?;
        let ring = CoordinateRing::new(field.clone(), form)?;
        let basis = standard_basis(model, &ring)?;
        let pts = model.enumerate_points(n)?;
        let split = split_points(&field, model.base_field().degree(), &pts.points);
        Ok(Self { model: model.clone(), extension: n, ring, basis, split })
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn at(&self, point: (Fe, Fe), precision: Option<usize>) -> Result<PointOrders> {
        let (default, cap) = precision_window(&self.model);
        let start = precision.unwrap_or(default);
        let van = vanishing_sequence_adaptive(&self.ring, &self.basis, point, start, cap.max(start))?;
        let f = self.field();
        let base = self.model.base_field().degree();
        let rational = f.in_subfield(point.0, base) && f.in_subfield(point.1, base);
        let ex = LocalExpander::new(&self.ring, point, 2)?;
        let t = self.ring.sub(&self.ring.x(), &self.ring.constant(point.0));
        let parameter_valuation = ex.expand(&t).valuation();
        let frobenius = (!rational).then(|| frobenius_orders(&self.ring, &self.basis, &van, point, self.model.q()));
        Ok(PointOrders {
            point,
            rational,
            orders: van.orders,
            precision: van.precision,
            parameter_valuation,
            frobenius,
        })
    }

    pub fn at_all(&self, points: &[(Fe, Fe)], precision: Option<usize>, exec: Execution) -> Result<Vec<PointOrders>> {
        par::map_slice(exec, points, |&p| self.at(p, precision)).into_iter().collect()
    }

    /// Rational and non-rational samples: first `lex` of each in coordinate
    /// order plus `random` seeded picks.
    pub fn samples(&self, lex: usize, random: usize, seed: u64) -> (Vec<Point>, Vec<Point>) {
        (
            select_samples(&self.split.rational, lex, random, seed),
            select_samples(&self.split.non_rational, lex, random, seed.wrapping_add(1)),
        )
    }
}

/// Expected vanishing sequences at rational and at non-rational points.
pub fn expected_orders(model: &CurveModel) -> Option<(OrderSequence, OrderSequence)> {
    match model.family() {
        Family::Suzuki(p) => {
            let (q, q0) = (p.q, p.q0);
            Some((
                OrderSequence(vec![0, 1, q0 + 1, 2 * q0 + 1, q + 2 * q0 + 1]),
                OrderSequence(vec![0, 1, q0, 2 * q0, q]),
            ))
        }
        Family::Hermitian(p) => Some((OrderSequence(vec![0, 1, p.sqrt_q + 1]), OrderSequence(vec![0, 1, p.sqrt_q]))),
        Family::GenericPlane(_) => None,
    }
}
