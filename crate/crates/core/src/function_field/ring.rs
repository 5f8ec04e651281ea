//! The affine coordinate ring `F[x, y] / (y^d + c y - F(x))`.
//!
//! Elements are kept in canonical form with y-degree below `d`; the rewrite
//! rule `y^d -> -c y + F(x)` comes from the curve's [`ArtinSchreierForm`].

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::curve::ArtinSchreierForm;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::function_field::hasse::{hasse_derivative, UniPoly};

/// Canonical ring element. Terms are keyed by `(y exponent, x exponent)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RingElement {
    terms: BTreeMap<(u32, u32), Fe>,
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(x exponent, y exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, Fe)> + '_ {
        self.terms.iter().map(|(&(j, i), &c)| (i, j, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn y_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|&(j, _)| j)
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, i)| i).max()
    }
}

#[derive(Debug, Clone)]
pub struct CoordinateRing {
    field: Arc<Field>,
    form: ArtinSchreierForm,
    d: u32,
    // y^d = sum of these (x exp, y exp, coeff)
    tail: Vec<(u32, u32, Fe)>,
    rhs: UniPoly,
}

impl CoordinateRing {
    pub fn new(field: Arc<Field>, form: &ArtinSchreierForm) -> Result<Self> {
        let p = field.characteristic() as u64;
        let mut d = form.y_degree;
        while d.is_multiple_of(p) {
            d /= p;
        }
        if d != 1 || form.y_degree < 2 {
            return Err(Error::InvalidParameter(format!(
                "y-degree {} is not a power of the characteristic {p}",
                form.y_degree
            )));
        }
        if form.y_coeff.rem_euclid(p as i64) == 0 {
            return Err(Error::InvalidParameter("linear y coefficient vanishes".into()));
        }
        let f = &*field;
        let mut tail = vec![(0, 1, f.neg(f.from_int(form.y_coeff)))];
        tail.extend(form.rhs.iter().map(|&(e, c)| (e as u32, 0, f.from_int(c))));
        let rhs = UniPoly::from_terms(f, form.rhs.iter().map(|&(e, c)| (e as usize, f.from_int(c))));
        Ok(Self { d: form.y_degree as u32, form: form.clone(), tail, rhs, field })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn form(&self) -> &ArtinSchreierForm {
        &self.form
    }

    /// The right-hand side `F(x)` as a univariate polynomial.
    pub fn rhs_poly(&self) -> &UniPoly {
        &self.rhs
    }

    pub fn zero(&self) -> RingElement {
        RingElement::default()
    }

    pub fn constant(&self, c: Fe) -> RingElement {
        self.monomial(0, 0, c)
    }

    pub fn one(&self) -> RingElement {
        self.constant(Fe::ONE)
    }

    pub fn x(&self) -> RingElement {
        self.monomial(1, 0, Fe::ONE)
    }

    pub fn y(&self) -> RingElement {
        self.monomial(0, 1, Fe::ONE)
    }

    /// `c x^i y^j`, reduced.
    pub fn monomial(&self, i: u32, j: u32, c: Fe) -> RingElement {
        self.from_terms([(i, j, c)])
    }

    /// Sum of `c x^i y^j` terms, reduced.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (u32, u32, Fe)>) -> RingElement {
        let mut raw = BTreeMap::new();
        for (i, j, c) in terms {
            accumulate(&self.field, &mut raw, (j, i), c);
        }
        self.reduce_raw(raw)
    }

    /// Applies the rewrite rule until the y-degree drops below `d`.
    pub fn reduce(&self, e: &RingElement) -> RingElement {
        self.reduce_raw(e.terms.clone())
    }

    fn reduce_raw(&self, mut raw: BTreeMap<(u32, u32), Fe>) -> RingElement {
        let f = &*self.field;
        let mut done = BTreeMap::new();
        while let Some(((j, i), c)) = raw.pop_last() {
            if c.is_zero() {
                continue;
            }
            if j < self.d {
                done.insert((j, i), c);
                continue;
            }
            for &(ti, tj, tc) in &self.tail {
                accumulate(f, &mut raw, (j - self.d + tj, i + ti), f.mul(c, tc));
            }
        }
        RingElement { terms: done }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut terms = a.terms.clone();
        for (&k, &c) in &b.terms {
            accumulate(&self.field, &mut terms, k, c);
        }
        RingElement { terms }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        RingElement { terms: a.terms.iter().map(|(&k, &c)| (k, self.field.neg(c))).collect() }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &RingElement, s: Fe) -> RingElement {
        let f = &*self.field;
        let terms = a.terms.iter().map(|(&k, &c)| (k, f.mul(c, s))).filter(|(_, c)| !c.is_zero());
        RingElement { terms: terms.collect() }
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let f = &*self.field;
        let mut raw = BTreeMap::new();
        for (&(j1, i1), &c1) in &a.terms {
            for (&(j2, i2), &c2) in &b.terms {
                accumulate(f, &mut raw, (j1 + j2, i1 + i2), f.mul(c1, c2));
            }
        }
        self.reduce_raw(raw)
    }

    /// `a^(p^k)` through the Frobenius on coefficients and exponents.
    pub fn frobenius_power(&self, a: &RingElement, k: u32) -> RingElement {
        let f = &*self.field;
        let mut cur = a.clone();
        for _ in 0..k {
            let p = f.characteristic();
            let mut raw = BTreeMap::new();
            for (&(j, i), &c) in &cur.terms {
                accumulate(f, &mut raw, (j * p, i * p), f.frobenius(c, 1));
            }
            cur = self.reduce_raw(raw);
        }
        cur
    }

    pub fn pow(&self, a: &RingElement, mut e: u64) -> RingElement {
        let p = self.field.characteristic() as u64;
        let mut k = 0;
        while e > 1 && e.is_multiple_of(p) {
            e /= p;
            k += 1;
        }
        let mut base = self.frobenius_power(a, k);
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn eval(&self, a: &RingElement, x: Fe, y: Fe) -> Fe {
        eval_terms(&self.field, a.terms(), x, y)
    }

    /// True iff `(x, y)` satisfies the defining equation.
    pub fn on_curve(&self, x: Fe, y: Fe) -> bool {
        self.form.lhs(&self.field, y) == self.form.rhs(&self.field, x)
    }

    /// `D^(1)` with respect to the separating variable `x`.
    ///
    /// Implicit differentiation of `y^d + c y = F(x)` with `p | d` gives
    /// `D^(1) y = F'(x) / c`.
    pub fn first_derivative(&self, a: &RingElement) -> RingElement {
        let f = &*self.field;
        let dy = self.derivative_of_y();
        let mut out = self.zero();
        for (i, j, c) in a.terms() {
            if i > 0 {
                let k = f.mul(c, f.from_int(i as i64));
                out = self.add(&out, &self.monomial(i - 1, j, k));
            }
            if j > 0 {
                let k = f.mul(c, f.from_int(j as i64));
                let part = self.mul(&self.monomial(i, j - 1, k), &dy);
                out = self.add(&out, &part);
            }
        }
        out
    }

    pub fn derivative_of_y(&self) -> RingElement {
        let f = &*self.field;
        let fprime = hasse_derivative(f, &self.rhs, 1);
        let inv_c = f.inv(f.from_int(self.form.y_coeff)).expect("nonzero by construction");
        self.from_terms(fprime.coeffs().iter().enumerate().map(|(n, &c)| (n as u32, 0, f.mul(c, inv_c))))
    }

    /// Converts an element with only x-terms into a univariate polynomial.
    pub fn as_univariate(&self, a: &RingElement) -> Option<UniPoly> {
        if a.terms().any(|(_, j, _)| j > 0) {
            return None;
        }
        Some(UniPoly::from_terms(&self.field, a.terms().map(|(i, _, c)| (i as usize, c))))
    }
}

fn accumulate(f: &Field, map: &mut BTreeMap<(u32, u32), Fe>, key: (u32, u32), c: Fe) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(key).or_insert(Fe::ZERO);
    *entry = f.add(*entry, c);
    if entry.is_zero() {
        map.remove(&key);
    }
}

/// Evaluates `sum c x^i y^j` without any reduction.
pub fn eval_terms(f: &Field, terms: impl IntoIterator<Item = (u32, u32, Fe)>, x: Fe, y: Fe) -> Fe {
    terms
        .into_iter()
        .fold(Fe::ZERO, |acc, (i, j, c)| f.add(acc, f.mul(c, f.mul(f.pow(x, i as u64), f.pow(y, j as u64)))))
}

/// The functions `x, y, z, w` of the Suzuki curve with
/// `z = x^(2q0+1) + y^(2q0)` and `w = x y^(2q0) + z^(2q0)`.
#[derive(Debug, Clone)]
pub struct SuzukiFunctions {
    pub x: RingElement,
    pub y: RingElement,
    pub z: RingElement,
    pub w: RingElement,
}

impl SuzukiFunctions {
    pub fn new(ring: &CoordinateRing, q0: u64) -> Self {
        let x = ring.x();
        let y = ring.y();
        let y2q0 = ring.pow(&y, 2 * q0);
        let z = ring.add(&ring.pow(&x, 2 * q0 + 1), &y2q0);
        let w = ring.add(&ring.mul(&x, &y2q0), &ring.pow(&z, 2 * q0));
        Self { x, y, z, w }
    }

    /// `1, x, y, z, w`, the basis of the linear system `|(q + 2q0 + 1) P0|`.
    pub fn basis(&self, ring: &CoordinateRing) -> Vec<RingElement> {
        vec![ring.one(), self.x.clone(), self.y.clone(), self.z.clone(), self.w.clone()]
    }
}

/// Outcome of checking `f^q - f = D (x^q - x)` in the coordinate ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusIdentityCheck {
    /// `f^q - f - D (x^q - x)` reduces to zero.
    pub symbolic: bool,
    /// The same expression vanishes at every supplied point.
    pub evaluation: bool,
    pub points_checked: usize,
    /// `D^(1) f` computed by implicit differentiation equals the expected `D`.
    pub derivative_matches: bool,
}

impl FrobeniusIdentityCheck {
    pub fn pass(&self) -> bool {
        self.symbolic && self.evaluation && self.derivative_matches
    }
}

/// Checks `f^q - f = D (x^q - x)` symbolically and at each point, where `q`
/// is the size of the field the curve is defined over.
pub fn verify_frobenius_identity(
    ring: &CoordinateRing,
    f: &RingElement,
    expected_derivative: &RingElement,
    q: u64,
    points: &[(Fe, Fe)],
) -> Result<FrobeniusIdentityCheck> {
    let x = ring.x();
    let xq_minus_x = ring.sub(&ring.pow(&x, q), &x);
    let lhs = ring.sub(&ring.pow(f, q), f);
    let residual = ring.sub(&lhs, &ring.mul(expected_derivative, &xq_minus_x));
    let symbolic = residual.is_zero();

    if let Some(p) = points.iter().find(|&&(a, b)| !ring.on_curve(a, b)) {
        return Err(Error::InvalidParameter(format!("{p:?} is not on the curve")));
    }
    let fld = &**ring.field();
    let evaluation = points.iter().all(|&(a, b)| {
        let fv = ring.eval(f, a, b);
        let dv = ring.eval(expected_derivative, a, b);
        let l = fld.sub(fld.pow(fv, q), fv);
        let r = fld.mul(dv, fld.sub(fld.pow(a, q), a));
        l == r
    });
    if symbolic && !evaluation {
        return Err(Error::Inconsistent("identity reduces to zero but fails at a point".into()));
    }
    let derivative_matches = ring.first_derivative(f) == *expected_derivative;
    Ok(FrobeniusIdentityCheck { symbolic, evaluation, points_checked: points.len(), derivative_matches })
}
