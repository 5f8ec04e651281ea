//! Truncated power series at affine points, in the local parameter `t = x - a`.

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::function_field::hasse::hasse_derivative;
use crate::function_field::ring::{CoordinateRing, RingElement};

/// A power series known modulo `t^len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Fe>,
}

impl Series {
    pub fn zero(precision: usize) -> Self {
        Self { coeffs: vec![Fe::ZERO; precision] }
    }

    pub fn constant(c: Fe, precision: usize) -> Self {
        let mut s = Self::zero(precision);
        if precision > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<Fe>, precision: usize) -> Self {
        coeffs.resize(precision, Fe::ZERO);
        Self { coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Fe {
        self.coeffs.get(k).copied().unwrap_or(Fe::ZERO)
    }

    /// Index of the first nonzero coefficient; `None` if the series vanishes
    /// to the known precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, f: &Field, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect();
        Self { coeffs }
    }

    pub fn scale(&self, f: &Field, c: Fe) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn mul(&self, f: &Field, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        let mut out = vec![Fe::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self { coeffs: out }
    }

    /// Powers `self^0 ..= self^max` by repeated multiplication.
    pub fn powers(&self, f: &Field, max: usize) -> Vec<Series> {
        let mut out = Vec::with_capacity(max + 1);
        out.push(Self::constant(Fe::ONE, self.precision()));
        for k in 1..=max {
            out.push(out[k - 1].mul(f, self));
        }
        out
    }

    pub fn pow(&self, f: &Field, mut e: u64) -> Self {
        let mut acc = Self::constant(Fe::ONE, self.precision());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        acc
    }
}

/// Expansion of a curve function at `center`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalExpansion {
    pub center: (Fe, Fe),
    pub series: Series,
}

impl LocalExpansion {
    pub fn precision(&self) -> usize {
        self.series.precision()
    }

    pub fn coeffs(&self) -> &[Fe] {
        self.series.coeffs()
    }

    pub fn valuation(&self) -> Option<usize> {
        self.series.valuation()
    }
}

/// The series of `x` and `y` at one point, from which every ring element
/// can be expanded.
#[derive(Debug, Clone)]
pub struct LocalExpander<'r> {
    ring: &'r CoordinateRing,
    center: (Fe, Fe),
    x: Series,
    y: Series,
}

impl<'r> LocalExpander<'r> {
    /// Solves `u^d + c u = F(a + t) - F(a)` for `u = y - b` coefficient by
    /// coefficient, then checks the result against the curve equation.
    pub fn new(ring: &'r CoordinateRing, center: (Fe, Fe), precision: usize) -> Result<Self> {
        let f = &**ring.field();
        let (a, b) = center;
        if !ring.on_curve(a, b) {
            return Err(Error::InvalidParameter("expansion centre is not on the curve".into()));
        }
        let form = ring.form();
        let d = form.y_degree as usize;
        let c_inv = f.inv(f.from_int(form.y_coeff)).expect("nonzero by construction");
        // G_k = D^(k) F evaluated at a
        let g: Vec<Fe> = (0..precision).map(|k| hasse_derivative(f, ring.rhs_poly(), k as u64).eval(f, a)).collect();
        let mut u = vec![Fe::ZERO; precision];
        for k in 1..precision {
            let mut v = g[k];
            if k % d == 0 {
                v = f.sub(v, f.pow(u[k / d], d as u64));
            }
            u[k] = f.mul(v, c_inv);
        }
        let mut y = Series::from_coeffs(u, precision);
        y.coeffs[0] = b;
        let mut x = Series::zero(precision);
        x.coeffs[0] = a;
        if precision > 1 {
            x.coeffs[1] = Fe::ONE;
        }
        let expander = Self { ring, center, x, y };
        if !expander.satisfies_equation() {
            return Err(Error::InvalidParameter("local expansion fails the curve equation".into()));
        }
        Ok(expander)
    }

    pub fn center(&self) -> (Fe, Fe) {
        self.center
    }

    pub fn precision(&self) -> usize {
        self.x.precision()
    }

    pub fn y_series(&self) -> &Series {
        &self.y
    }

    /// Substitutes the series into `y^d + c y - F(x)` using plain series
    /// multiplication and checks the result vanishes to full precision.
    pub fn satisfies_equation(&self) -> bool {
        let f = &**self.ring.field();
        let form = self.ring.form();
        let lhs = self.y.pow(f, form.y_degree).add(f, &self.y.scale(f, f.from_int(form.y_coeff)));
        let rhs = form
            .rhs
            .iter()
            .fold(Series::zero(self.precision()), |acc, &(e, c)| acc.add(f, &self.x.pow(f, e).scale(f, f.from_int(c))));
        lhs.add(f, &rhs.scale(f, f.neg(Fe::ONE))).valuation().is_none()
    }

    pub fn expand(&self, e: &RingElement) -> LocalExpansion {
        self.expand_all(std::slice::from_ref(e)).pop().expect("one input")
    }

    /// Expands several elements, sharing the powers of `x` and `y`.
    pub fn expand_all(&self, elements: &[RingElement]) -> Vec<LocalExpansion> {
        let f = &**self.ring.field();
        let max_i = elements.iter().filter_map(RingElement::x_degree).max().unwrap_or(0) as usize;
        let max_j = elements.iter().filter_map(RingElement::y_degree).max().unwrap_or(0) as usize;
        let xp = self.x.powers(f, max_i);
        let yp = self.y.powers(f, max_j);
        elements
            .iter()
            .map(|e| {
                let mut acc = Series::zero(self.precision());
                for (i, j, c) in e.terms() {
                    let term = xp[i as usize].mul(f, &yp[j as usize]).scale(f, c);
                    acc = acc.add(f, &term);
                }
                LocalExpansion { center: self.center, series: acc }
            })
            .collect()
    }
}
