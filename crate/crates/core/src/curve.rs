//! Plane models of the Suzuki and Hermitian curves and their rational points.

use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::par::{self, Execution};
use crate::params::{HermitianParams, SuzukiParams};

/// An equation `y^d + c*y = sum_k a_k x^(e_k)` with `d` a power of the
/// characteristic and integer coefficients read in the prime field.
///
/// Both named families have this shape, and point counting, the coordinate
/// ring rewrite rule and the local expansions are all driven from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinSchreierForm {
    pub y_degree: u64,
    pub y_coeff: i64,
    pub rhs: Vec<(u64, i64)>,
}

impl ArtinSchreierForm {
    pub fn lhs(&self, f: &Field, y: Fe) -> Fe {
        f.add(f.pow(y, self.y_degree), f.mul(f.from_int(self.y_coeff), y))
    }

    pub fn rhs(&self, f: &Field, x: Fe) -> Fe {
        self.rhs.iter().fold(Fe::ZERO, |acc, &(e, c)| f.add(acc, f.mul(f.from_int(c), f.pow(x, e))))
    }
}

/// A plane curve `sum c_ij x^i y^j = 0` given by its affine equation only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCurve {
    pub terms: Vec<(u32, u32, Fe)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Suzuki(SuzukiParams),
    Hermitian(HermitianParams),
    GenericPlane(PlaneCurve),
}

#[derive(Debug, Clone)]
pub struct CurveModel {
    family: Family,
    base: Arc<Field>,
    form: Option<ArtinSchreierForm>,
}

/// How the affine solutions are found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    /// Evaluate the defining equation at every pair.
    Exhaustive,
    /// Tabulate `y -> lhs(y)` once, then look up `rhs(x)` per `x`.
    Fibered,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCount {
    pub n: u32,
    pub affine: u64,
    pub at_infinity: u64,
    pub affine_only: bool,
}

impl PointCount {
    pub fn total(&self) -> u64 {
        self.affine + self.at_infinity
    }
}

/// Affine points over an extension field, sorted by `(x, y)` encoding.
#[derive(Debug, Clone)]
pub struct AffinePointSet {
    pub field: Arc<Field>,
    pub points: Vec<(Fe, Fe)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusReport {
    pub genus: u64,
    pub closed_form: u64,
    /// `2g - 2`.
    pub canonical_degree: i64,
    /// The factored form of `2g - 2` used in the arguments.
    pub factored: (i64, i64),
    pub holds: bool,
}

impl CurveModel {
    pub fn suzuki(params: SuzukiParams) -> Result<CurveModel> {
        let (q, q0) = (params.q, params.q0);
        let form = ArtinSchreierForm { y_degree: q, y_coeff: -1, rhs: vec![(q + q0, 1), (q0 + 1, -1)] };
        Ok(CurveModel { family: Family::Suzuki(params), base: Field::get(2, params.field_degree())?, form: Some(form) })
    }

    pub fn hermitian(params: HermitianParams) -> Result<CurveModel> {
        let r = params.sqrt_q;
        let form = ArtinSchreierForm { y_degree: r, y_coeff: 1, rhs: vec![(r + 1, 1)] };
        Ok(CurveModel { family: Family::Hermitian(params), base: Field::get(params.p, params.m)?, form: Some(form) })
    }

    pub fn generic(base: Arc<Field>, curve: PlaneCurve) -> CurveModel {
        CurveModel { family: Family::GenericPlane(curve), base, form: None }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn base_field(&self) -> &Arc<Field> {
        &self.base
    }

    /// `q = #base field`.
    pub fn q(&self) -> u64 {
        self.base.size() as u64
    }

    pub fn artin_schreier(&self) -> Option<&ArtinSchreierForm> {
        self.form.as_ref()
    }

    pub fn genus(&self) -> Option<u64> {
        match &self.family {
            Family::Suzuki(p) => Some(p.genus()),
            Family::Hermitian(p) => Some(p.genus()),
            Family::GenericPlane(_) => None,
        }
    }

    /// Degree-one places at infinity on the smooth model. Generic plane
    /// curves are counted affinely, so this is 0 for them.
    pub fn points_at_infinity(&self) -> u64 {
        match self.family {
            Family::GenericPlane(_) => 0,
            _ => 1,
        }
    }

    pub fn label(&self) -> String {
        match &self.family {
            Family::Suzuki(p) => format!("suzuki(s={})", p.s),
            Family::Hermitian(p) => format!("hermitian(q={})", p.q),
            Family::GenericPlane(_) => "generic-plane".into(),
        }
    }

    /// GF(q^n).
    pub fn extension_field(&self, n: u32) -> Result<Arc<Field>> {
        if n == 0 {
            return Err(Error::InvalidParameter("extension degree must be positive".into()));
        }
        let m = self.base.degree().checked_mul(n).ok_or(Error::FieldTooLarge { p: 2, m: u32::MAX })?;
        Field::get(self.base.characteristic(), m)
    }

    /// Evaluates the defining equation from scratch; true iff `(x, y)` lies on
    /// the affine curve over `field`.
    pub fn equation_holds(&self, field: &Field, coeffs: &[(u32, u32, Fe)], x: Fe, y: Fe) -> bool {
        match &self.form {
            Some(form) => form.lhs(field, y) == form.rhs(field, x),
            None => coeffs
                .iter()
                .fold(Fe::ZERO, |acc, &(i, j, c)| {
                    field.add(acc, field.mul(c, field.mul(field.pow(x, i as u64), field.pow(y, j as u64))))
                })
                .is_zero(),
        }
    }

    fn generic_coeffs_over(&self, ext: &Field) -> Result<Vec<(u32, u32, Fe)>> {
        match &self.family {
            Family::GenericPlane(curve) => {
                let emb = ext.embedding_from(&self.base)?;
                Ok(curve.terms.iter().map(|&(i, j, c)| (i, j, emb.apply(c))).collect())
            }
            _ => Ok(Vec::new()),
        }
    }

    pub fn count_points(&self, n: u32) -> Result<PointCount> {
        self.count_points_with(n, CountMethod::Fibered, Execution::default())
    }

    pub fn count_points_with(&self, n: u32, method: CountMethod, exec: Execution) -> Result<PointCount> {
        let field = self.extension_field(n)?;
        let affine = match (&self.form, method) {
            (Some(form), CountMethod::Fibered) => {
                let fibres = Fibres::new(form, &field, exec);
                par::sum_range(exec, field.size(), |x| fibres.count(form.rhs(&field, Fe(x))) as u64)
            }
            _ => {
                let coeffs = self.generic_coeffs_over(&field)?;
                let f = &*field;
                par::sum_range(exec, f.size(), |x| {
                    f.elements().filter(|&y| self.equation_holds(f, &coeffs, Fe(x), y)).count() as u64
                })
            }
        };
        Ok(PointCount {
            n,
            affine,
            at_infinity: self.points_at_infinity(),
            affine_only: matches!(self.family, Family::GenericPlane(_)),
        })
    }

    pub fn enumerate_points(&self, n: u32) -> Result<AffinePointSet> {
        self.enumerate_points_with(n, CountMethod::Fibered, Execution::default())
    }

    pub fn enumerate_points_with(&self, n: u32, method: CountMethod, exec: Execution) -> Result<AffinePointSet> {
        let field = self.extension_field(n)?;
        let points = match (&self.form, method) {
            (Some(form), CountMethod::Fibered) => {
                let fibres = Fibres::new(form, &field, exec);
                par::flat_map_range(exec, field.size(), |x| {
                    fibres.ys(form.rhs(&field, Fe(x))).iter().map(|&y| (Fe(x), Fe(y))).collect()
                })
            }
            _ => {
                let coeffs = self.generic_coeffs_over(&field)?;
                let f = &*field;
                par::flat_map_range(exec, f.size(), |x| {
                    f.elements().filter(|&y| self.equation_holds(f, &coeffs, Fe(x), y)).map(|y| (Fe(x), y)).collect()
                })
            }
        };
        Ok(AffinePointSet { field, points })
    }

    /// Rechecks the closed-form genus and the factorisation of `2g - 2`.
    pub fn verify_genus_formulas(&self) -> Option<GenusReport> {
        match &self.family {
            Family::Suzuki(p) => {
                let (q, q0) = (p.q as i64, p.q0 as i64);
                let genus = (q0 * (q - 1)) as u64;
                let factored = (2 * q0 - 2, q + 2 * q0 + 1);
                let canonical_degree = 2 * genus as i64 - 2;
                Some(GenusReport {
                    genus,
                    closed_form: p.genus(),
                    canonical_degree,
                    factored,
                    holds: genus == p.genus() && factored.0 * factored.1 == canonical_degree,
                })
            }
            Family::Hermitian(p) => {
                let r = p.sqrt_q as i64;
                let genus = (r * (r - 1) / 2) as u64;
                let factored = (r - 2, r + 1);
                let canonical_degree = 2 * genus as i64 - 2;
                Some(GenusReport {
                    genus,
                    closed_form: p.genus(),
                    canonical_degree,
                    factored,
                    holds: genus == p.genus() && factored.0 * factored.1 == canonical_degree,
                })
            }
            Family::GenericPlane(_) => None,
        }
    }

    /// The count report record.
    pub fn count_record(&self, count: &PointCount) -> Value {
        let mut rec = json!({
            "family": match self.family {
                Family::Suzuki(_) => "suzuki",
                Family::Hermitian(_) => "hermitian",
                Family::GenericPlane(_) => "generic-plane",
            },
            "n": count.n.to_string(),
            "affine_count": count.affine.to_string(),
            "infinity_count": count.at_infinity.to_string(),
            "total": count.total().to_string(),
        });
        match &self.family {
            Family::Suzuki(p) => rec["s"] = json!(p.s.to_string()),
            Family::Hermitian(p) => rec["q"] = json!(p.q.to_string()),
            Family::GenericPlane(_) => rec["affine_only"] = json!(true),
        }
        rec
    }
}

/// Preimages of `y -> y^d + c*y` grouped by image, in CSR layout.
struct Fibres {
    offsets: Vec<u32>,
    ys: Vec<u32>,
}

impl Fibres {
    fn new(form: &ArtinSchreierForm, field: &Field, exec: Execution) -> Fibres {
        let size = field.size() as usize;
        let images = par::flat_map_range(exec, field.size(), |y| vec![form.lhs(field, Fe(y)).0]);
        let mut offsets = vec![0u32; size + 1];
        for &v in &images {
            offsets[v as usize + 1] += 1;
        }
        for i in 0..size {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut ys = vec![0u32; size];
        for (y, &v) in images.iter().enumerate() {
            ys[cursor[v as usize] as usize] = y as u32;
            cursor[v as usize] += 1;
        }
        Fibres { offsets, ys }
    }

    fn count(&self, value: Fe) -> u32 {
        self.offsets[value.0 as usize + 1] - self.offsets[value.0 as usize]
    }

    fn ys(&self, value: Fe) -> &[u32] {
        &self.ys[self.offsets[value.0 as usize] as usize..self.offsets[value.0 as usize + 1] as usize]
    }
}

/// `|N - q^n - 1| <= 2 g q^(n/2)`, checked after squaring.
pub fn hasse_weil_holds(q: u64, genus: u64, n: u32, count: u64) -> bool {
    let qn = BigInt::from(q).pow(n);
    let dev = BigInt::from(count) - &qn - 1;
    &dev * &dev <= BigInt::from(4u32) * BigInt::from(genus).pow(2) * qn
}

#[cfg(test)]
mod tests {
    use super::*;

    fn suzuki(s: u32) -> CurveModel {
        CurveModel::suzuki(SuzukiParams::new(s).unwrap()).unwrap()
    }

    fn hermitian(q: u64) -> CurveModel {
        CurveModel::hermitian(HermitianParams::new(q).unwrap()).unwrap()
    }

    #[test]
    fn suzuki_s1_counts() {
        let c = suzuki(1);
        for n in 1..=3 {
            assert_eq!(c.count_points(n).unwrap().total(), 65);
        }
        let pts = c.enumerate_points(1).unwrap();
        assert_eq!(pts.points.len(), 64);
        assert!(pts.points.contains(&(Fe::ZERO, Fe::ZERO)));
    }

    #[test]
    fn origin_lies_on_every_suzuki_curve() {
        for s in 1..=3 {
            let c = suzuki(s);
            let f = c.base_field().clone();
            assert!(c.equation_holds(&f, &[], Fe::ZERO, Fe::ZERO));
        }
    }

    #[test]
    fn hermitian_counts_by_brute_force() {
        // q = 4: 16 pairs scanned, plus one point at infinity.
        let c = hermitian(4);
        let slow = c.count_points_with(1, CountMethod::Exhaustive, Execution::Sequential).unwrap();
        assert_eq!((slow.affine, slow.total()), (8, 9));
        assert_eq!(c.enumerate_points(1).unwrap().points.len(), 8);
        assert_eq!(hermitian(16).count_points(1).unwrap().total(), 65);
        assert_eq!(hermitian(9).count_points(1).unwrap().total(), 28);
    }

    #[test]
    fn fibered_and_exhaustive_agree() {
        for c in [suzuki(1), hermitian(4), hermitian(16), hermitian(9)] {
            for n in 1..=2 {
                let fast = c.count_points_with(n, CountMethod::Fibered, Execution::Parallel).unwrap();
                let slow = c.count_points_with(n, CountMethod::Exhaustive, Execution::Sequential).unwrap();
                assert_eq!(fast, slow, "{} n={n}", c.label());
                let a = c.enumerate_points_with(n, CountMethod::Fibered, Execution::Sequential).unwrap();
                let b = c.enumerate_points_with(n, CountMethod::Exhaustive, Execution::Parallel).unwrap();
                assert_eq!(a.points, b.points);
            }
        }
    }

    #[test]
    fn enumerated_points_are_distinct_solutions() {
        let c = suzuki(1);
        let set = c.enumerate_points(2).unwrap();
        let f = &*set.field;
        assert!(set.points.iter().all(|&(x, y)| c.equation_holds(f, &[], x, y)));
        assert!(set.points.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(set.points.len() as u64 + 1, c.count_points(2).unwrap().total());
    }

    #[test]
    fn genus_reports() {
        let r = suzuki(1).verify_genus_formulas().unwrap();
        assert_eq!((r.genus, r.canonical_degree, r.factored), (14, 26, (2, 13)));
        assert!(r.holds);
        let r = suzuki(2).verify_genus_formulas().unwrap();
        assert_eq!((r.genus, r.canonical_degree, r.factored), (124, 246, (6, 41)));
        assert!(r.holds);
        let r = hermitian(16).verify_genus_formulas().unwrap();
        assert_eq!(r.genus, 6);
        assert!(r.holds);
    }

    #[test]
    fn tower_and_hasse_weil_window() {
        for (c, ns) in [(suzuki(1), 1..=4), (hermitian(4), 1..=4), (hermitian(16), 1..=2)] {
            let g = c.genus().unwrap();
            let counts: Vec<u64> = ns.clone().map(|n| c.count_points(n).unwrap().total()).collect();
            for (n, &count) in ns.clone().zip(&counts) {
                assert!(hasse_weil_holds(c.q(), g, n, count));
            }
            for (i, n) in ns.clone().enumerate() {
                for (j, n2) in ns.clone().enumerate() {
                    if n2 % n == 0 {
                        assert!(counts[i] <= counts[j]);
                    }
                }
            }
        }
        // Lewittes with m = q at s = 1
        assert!(suzuki(1).count_points(1).unwrap().total() <= 1 + 8 * 8);
        assert!(!hasse_weil_holds(8, 14, 1, 300));
    }

    #[test]
    fn generic_plane_counts_are_affine_only() {
        // y^2 + y = x^3 over GF(4) written as a plain polynomial
        let f = Field::get(2, 2).unwrap();
        let curve = PlaneCurve { terms: vec![(0, 2, Fe::ONE), (0, 1, Fe::ONE), (3, 0, Fe::ONE)] };
        let c = CurveModel::generic(f, curve);
        let count = c.count_points(1).unwrap();
        assert_eq!((count.affine, count.at_infinity, count.affine_only), (8, 0, true));
        assert_eq!(c.count_points(2).unwrap().affine, hermitian(4).count_points(2).unwrap().affine);
        assert_eq!(c.count_record(&count)["affine_only"], serde_json::json!(true));
    }

    #[test]
    fn oversized_extension_is_rejected() {
        assert!(matches!(suzuki(1).count_points(7), Err(Error::FieldTooLarge { .. })));
        assert!(suzuki(1).count_points(0).is_err());
    }
}
