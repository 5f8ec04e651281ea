//! The Suzuki-Tits ovoid in `P^4(GF(q))` and the image of the curve under
//! `(1 : x : y : z : w)`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::function_field::ring::{CoordinateRing, SuzukiFunctions};
use crate::par::{self, Execution};
use crate::params::SuzukiParams;

/// A point of `P^4`, scaled so the first nonzero coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint([Fe; 5]);

impl ProjectivePoint {
    pub fn new(f: &Field, coords: [Fe; 5]) -> Result<Self> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidParameter("all projective coordinates are zero".into()))?;
        let inv = f.inv(*lead).expect("nonzero");
        Ok(Self(coords.map(|c| f.mul(c, inv))))
    }

    pub fn coords(&self) -> [Fe; 5] {
        self.0
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.0.map(|x| x.0.to_string());
        write!(f, "({})", c.join(":"))
    }
}

/// The distinguished point `(0:0:0:0:1)`.
pub fn point_at_infinity() -> ProjectivePoint {
    ProjectivePoint([Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ONE])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OvoidSet {
    pub points: BTreeSet<ProjectivePoint>,
}

impl OvoidSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.points.contains(p)
    }
}

/// `f(a, b) = a^(2q0+1) + b^(2q0)`.
pub fn ovoid_f(field: &Field, p: &SuzukiParams, a: Fe, b: Fe) -> Fe {
    field.add(field.pow(a, 2 * p.q0 + 1), field.pow(b, 2 * p.q0))
}

/// `{(1 : a : b : f : a f + b^2)} ∪ {(0:0:0:0:1)}` over GF(q).
pub fn generate_ovoid(p: &SuzukiParams) -> Result<OvoidSet> {
    let field = Field::get(2, p.field_degree())?;
    let f = &*field;
    let mut points = BTreeSet::new();
    for a in f.elements() {
        for b in f.elements() {
            let v = ovoid_f(f, p, a, b);
            let last = f.add(f.mul(a, v), f.mul(b, b));
            let pt = ProjectivePoint::new(f, [Fe::ONE, a, b, v, last])?;
            if !points.insert(pt) {
                return Err(Error::Inconsistent(format!("duplicate ovoid point {pt}")));
            }
        }
    }
    points.insert(point_at_infinity());
    Ok(OvoidSet { points })
}

/// Images `(1 : a : b : z(a,b) : w(a,b))` of the affine rational points,
/// with `z, w` evaluated from their reduced forms in the coordinate ring.
#[derive(Debug, Clone)]
pub struct PiImage {
    pub sources: Vec<(Fe, Fe)>,
    pub images: Vec<ProjectivePoint>,
}

impl PiImage {
    pub fn new(p: &SuzukiParams) -> Result<Self> {
        let model = CurveModel::suzuki(*p)?;
        let field = model.base_field().clone();
        let ring = CoordinateRing::new(field.clone(), model.artin_schreier().expect("named family"))?;
        let fns = SuzukiFunctions::new(&ring, p.q0);
        let sources = model.enumerate_points(1)?.points;
        let images = sources
            .iter()
            .map(|&(a, b)| {
                let (z, w) = (ring.eval(&fns.z, a, b), ring.eval(&fns.w, a, b));
                ProjectivePoint::new(&field, [Fe::ONE, a, b, z, w])
            })
            .collect::<Result<_>>()?;
        Ok(Self { sources, images })
    }

    /// The image set with `pi(P0) = (0:0:0:0:1)` adjoined.
    pub fn set(&self) -> OvoidSet {
        let mut points: BTreeSet<_> = self.images.iter().copied().collect();
        points.insert(point_at_infinity());
        OvoidSet { points }
    }

    /// Number of affine points where `z = f` and `w = a f + b^2`.
    pub fn coordinate_identities(&self, p: &SuzukiParams) -> Result<(usize, usize)> {
        let f = &*Field::get(2, p.field_degree())?;
        let mut z_ok = 0;
        let mut w_ok = 0;
        for (&(a, b), img) in self.sources.iter().zip(&self.images) {
            let [_, _, _, z, w] = img.coords();
            let v = ovoid_f(f, p, a, b);
            z_ok += usize::from(z == v);
            w_ok += usize::from(w == f.add(f.mul(a, v), f.mul(b, b)));
        }
        Ok((z_ok, w_ok))
    }
}

pub fn pi_image(p: &SuzukiParams) -> Result<OvoidSet> {
    Ok(PiImage::new(p)?.set())
}

/// True iff no two distinct sources share an image.
pub fn check_injectivity<S: Eq + std::hash::Hash>(images: &[ProjectivePoint], sources: &[S]) -> bool {
    let mut seen: HashMap<&ProjectivePoint, &S> = HashMap::new();
    for (img, src) in images.iter().zip(sources) {
        if let Some(prev) = seen.insert(img, src) {
            if prev != src {
                return false;
            }
        }
    }
    true
}

/// True iff every line through two points of `set` meets it in exactly
/// those two points.
pub fn secant_check(field: &Field, set: &OvoidSet, exec: Execution) -> bool {
    let pts: Vec<ProjectivePoint> = set.points.iter().copied().collect();
    let lookup: HashSet<ProjectivePoint> = pts.iter().copied().collect();
    let elements: Vec<Fe> = field.elements().collect();
    par::all_range(exec, pts.len(), |i| {
        let p = pts[i].coords();
        pts[i + 1..].iter().all(|qp| {
            let q = qp.coords();
            // P + mu Q over GF(q); mu = 0 gives P, and Q is the remaining
            // point of the line, so exactly one hit is allowed
            let hits = elements
                .iter()
                .filter(|&&mu| {
                    let c = std::array::from_fn(|k| field.add(p[k], field.mul(mu, q[k])));
                    lookup.contains(&ProjectivePoint::new(field, c).expect("distinct points"))
                })
                .count();
            hits == 1
        })
    })
}

/// Same verdict as [`secant_check`] in `O(n^2)`: a third point `R` lies on
/// the line `PQ` iff `Q` and `R` have the same projection from `P`.
pub fn secant_check_by_projection(field: &Field, set: &OvoidSet, exec: Execution) -> bool {
    let pts: Vec<ProjectivePoint> = set.points.iter().copied().collect();
    par::all_range(exec, pts.len(), |i| {
        let p = pts[i].coords();
        // the leading coordinate of a normalized point is 1
        let k = p.iter().position(|c| !c.is_zero()).expect("nonzero point");
        let mut seen = HashSet::with_capacity(pts.len());
        pts.iter().enumerate().filter(|&(j, _)| j != i).all(|(_, qp)| {
            let q = qp.coords();
            let c = std::array::from_fn(|t| field.sub(q[t], field.mul(q[k], p[t])));
            seen.insert(ProjectivePoint::new(field, c).expect("distinct points"))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(s: u32) -> SuzukiParams {
        SuzukiParams::new(s).unwrap()
    }

    #[test]
    fn normalization() {
        let f = Field::get(2, 3).unwrap();
        let g = f.generator();
        let p = ProjectivePoint::new(&f, [Fe::ZERO, g, Fe::ONE, g, Fe::ZERO]).unwrap();
        assert_eq!(p.coords()[1], Fe::ONE);
        assert_eq!(ProjectivePoint::new(&f, p.coords()).unwrap(), p);
        assert!(ProjectivePoint::new(&f, [Fe::ZERO; 5]).is_err());
    }

    #[test]
    fn ovoid_small_examples() {
        let p = params(1);
        let o = generate_ovoid(&p).unwrap();
        assert_eq!(o.len(), 65);
        let f = Field::get(2, 3).unwrap();
        let origin = ProjectivePoint::new(&f, [Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ZERO]).unwrap();
        assert!(o.contains(&origin));
        // (a, b) = (1, 0): f = 1, a f + b^2 = 1
        let one = ProjectivePoint::new(&f, [Fe::ONE, Fe::ONE, Fe::ZERO, Fe::ONE, Fe::ONE]).unwrap();
        assert!(o.contains(&one));
        assert!(o.contains(&point_at_infinity()));
    }

    #[test]
    fn pi_image_equals_ovoid() {
        for s in 1..=2 {
            let p = params(s);
            let img = PiImage::new(&p).unwrap();
            let set = img.set();
            assert_eq!(set, generate_ovoid(&p).unwrap());
            assert_eq!(set.len() as u64, p.rational_points());
            assert!(check_injectivity(&img.images, &img.sources));
            let n = img.sources.len();
            assert_eq!(img.coordinate_identities(&p).unwrap(), (n, n));
        }
    }

    #[test]
    fn injectivity_detects_collisions() {
        let img = PiImage::new(&params(1)).unwrap();
        let mut images = img.images.clone();
        images[1] = images[0];
        assert!(!check_injectivity(&images, &img.sources));
        // repeating a source with its own image is not a collision
        let mut src = img.sources.clone();
        src.push(src[0]);
        let mut im = img.images.clone();
        im.push(im[0]);
        assert!(check_injectivity(&im, &src));
    }

    #[test]
    fn secants_s1() {
        let f = Field::get(2, 3).unwrap();
        let o = generate_ovoid(&params(1)).unwrap();
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert!(secant_check(&f, &o, exec));
        }
        // add the third point P + Q on the line through two ovoid points
        let mut it = o.points.iter();
        let (p, q) = (it.next().unwrap().coords(), it.next().unwrap().coords());
        let third = ProjectivePoint::new(&f, std::array::from_fn(|k| f.add(p[k], q[k]))).unwrap();
        let mut bad = o.clone();
        assert!(bad.points.insert(third));
        assert!(!secant_check(&f, &bad, Execution::Sequential));
        assert!(!secant_check_by_projection(&f, &bad, Execution::Sequential));
        assert!(secant_check_by_projection(&f, &o, Execution::Parallel));
        let two = OvoidSet { points: o.points.iter().take(2).copied().collect() };
        assert!(secant_check(&f, &two, Execution::Sequential));
        assert!(secant_check_by_projection(&f, &two, Execution::Sequential));
    }

    #[test]
    fn secant_methods_agree_s2() {
        let f = Field::get(2, 5).unwrap();
        let o = generate_ovoid(&params(2)).unwrap();
        assert!(secant_check_by_projection(&f, &o, Execution::Parallel));
        // a random hyperplane section plus its collinear completion
        let mut bad = o.clone();
        let mut it = o.points.iter().skip(100);
        let (p, q) = (it.next().unwrap().coords(), it.nth(400).unwrap().coords());
        let g = f.generator();
        bad.points.insert(ProjectivePoint::new(&f, std::array::from_fn(|k| f.add(p[k], f.mul(g, q[k])))).unwrap());
        assert!(!secant_check_by_projection(&f, &bad, Execution::Sequential));
        assert!(!secant_check(&f, &bad, Execution::Parallel));
    }
}
