// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! The complex plane, the Riemann sphere of radius ½ centred at `(0,0,½)` and the
//! unit sphere, with the stereographic projections and the homothety between them.
//!
//! The three point types never convert implicitly; every change of space goes
//! through one of the named maps below.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Points with `c ≥ 1 - POLE_EPS` are treated as the north pole.
pub const POLE_EPS: f64 = 1e-9;

/// Tolerance for the on-sphere invariants.
pub const ON_SPHERE_TOL: f64 = 1e-12;

/// A finite point of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlanePoint<T = f64> {
    pub re: T,
    pub im: T,
}

impl<T: Real> PlanePoint<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn to_complex(self) -> Complex<T> {
        Complex::new(self.re, self.im)
    }

    pub fn norm_sqr(self) -> T {
        self.re * self.re + self.im * self.im
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn cast<U: Real>(self) -> PlanePoint<U> {
        PlanePoint {
            re: U::from(self.re).unwrap_or_else(U::nan),
            im: U::from(self.im).unwrap_or_else(U::nan),
        }
    }
}

impl<T: Real> From<Complex<T>> for PlanePoint<T> {
    fn from(z: Complex<T>) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// A point of the unit sphere in ℝ³.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpherePoint<T = f64> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Real> SpherePoint<T> {
    /// Checked constructor: `a² + b² + c²` must be 1 within [`ON_SPHERE_TOL`].
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        let p = Self { a, b, c };
        let dev = (p.norm_sqr() - T::one()).abs();
        if dev > lit(ON_SPHERE_TOL) || !dev.is_finite() {
            return Err(Error::InvalidInput(format!(
                "({:?}, {:?}, {:?}) is not on the unit sphere",
                a, b, c
            )));
        }
        Ok(p)
    }

    /// Projects any nonzero vector radially onto the sphere.
    pub fn normalized(a: T, b: T, c: T) -> Result<Self> {
        let n = (a * a + b * b + c * c).sqrt();
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::InvalidInput("cannot normalize a zero vector".into()));
        }
        Ok(Self {
            a: a / n,
            b: b / n,
            c: c / n,
        })
    }

    pub fn north_pole() -> Self {
        Self {
            a: T::zero(),
            b: T::zero(),
            c: T::one(),
        }
    }

    pub fn south_pole() -> Self {
        Self {
            a: T::zero(),
            b: T::zero(),
            c: -T::one(),
        }
    }

    pub fn to_array(self) -> [T; 3] {
        [self.a, self.b, self.c]
    }

    pub fn norm_sqr(self) -> T {
        self.a * self.a + self.b * self.b + self.c * self.c
    }

    pub fn dot(self, other: Self) -> T {
        self.a * other.a + self.b * other.b + self.c * other.c
    }

    /// Squared Euclidean distance, computed from coordinate differences.
    pub fn distance_sqr(self, other: Self) -> T {
        let da = self.a - other.a;
        let db = self.b - other.b;
        let dc = self.c - other.c;
        da * da + db * db + dc * dc
    }

    /// Uniform sample from the area measure (normalized Gaussian vector).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let v: [f64; 3] = [
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            ];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 1e-12 {
                return Self {
                    a: lit(v[0] / n),
                    b: lit(v[1] / n),
                    c: lit(v[2] / n),
                };
            }
        }
    }

    pub fn cast<U: Real>(self) -> SpherePoint<U> {
        SpherePoint {
            a: U::from(self.a).unwrap_or_else(U::nan),
            b: U::from(self.b).unwrap_or_else(U::nan),
            c: U::from(self.c).unwrap_or_else(U::nan),
        }
    }
}

/// A point of the Riemann sphere `𝕊`: radius ½, centre `(0, 0, ½)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RiemannPoint<T = f64> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Real> RiemannPoint<T> {
    /// Checked constructor: `a² + b² + (c - ½)² = ¼` within [`ON_SPHERE_TOL`].
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        let half = lit::<T>(0.5);
        let dc = c - half;
        let dev = (a * a + b * b + dc * dc - lit(0.25)).abs();
        if dev > lit(ON_SPHERE_TOL) || !dev.is_finite() {
            return Err(Error::InvalidInput(format!(
                "({:?}, {:?}, {:?}) is not on the Riemann sphere",
                a, b, c
            )));
        }
        Ok(Self { a, b, c })
    }

    pub fn distance(self, other: Self) -> T {
        let da = self.a - other.a;
        let db = self.b - other.b;
        let dc = self.c - other.c;
        (da * da + db * db + dc * dc).sqrt()
    }
}

/// Inverse stereographic projection from the north pole onto the unit sphere.
pub fn plane_to_sphere<T: Real>(z: PlanePoint<T>) -> SpherePoint<T> {
    let r2 = z.norm_sqr();
    let two = lit::<T>(2.0);
    let denom = T::one() + r2;
    SpherePoint {
        a: two * z.re / denom,
        b: two * z.im / denom,
        c: (r2 - T::one()) / denom,
    }
}

/// Stereographic projection `(a, b, c) ↦ (a + ib) / (1 - c)`.
pub fn sphere_to_plane<T: Real>(x: SpherePoint<T>) -> Result<PlanePoint<T>> {
    if x.c >= T::one() - lit(POLE_EPS) {
        return Err(Error::NearNorthPole {
            c: x.c.to_f64_lossy(),
        });
    }
    let d = T::one() - x.c;
    Ok(PlanePoint {
        re: x.a / d,
        im: x.b / d,
    })
}

/// The homothety `ẑ ↦ 2ẑ - (0, 0, 1)` from the Riemann sphere to the unit sphere.
pub fn riemann_to_sphere<T: Real>(p: RiemannPoint<T>) -> SpherePoint<T> {
    let two = lit::<T>(2.0);
    SpherePoint {
        a: two * p.a,
        b: two * p.b,
        c: two * p.c - T::one(),
    }
}

/// Inverse of [`riemann_to_sphere`].
pub fn sphere_to_riemann<T: Real>(x: SpherePoint<T>) -> RiemannPoint<T> {
    let half = lit::<T>(0.5);
    RiemannPoint {
        a: half * x.a,
        b: half * x.b,
        c: half * (x.c + T::one()),
    }
}

/// Stereographic projection of the Riemann sphere, `(a, b, c) ↦ (a + ib) / (1 - c)`.
pub fn riemann_to_plane<T: Real>(p: RiemannPoint<T>) -> Result<PlanePoint<T>> {
    if p.c >= T::one() - lit(POLE_EPS / 2.0) {
        return Err(Error::NearNorthPole {
            c: p.c.to_f64_lossy(),
        });
    }
    let d = T::one() - p.c;
    Ok(PlanePoint {
        re: p.a / d,
        im: p.b / d,
    })
}

pub fn plane_to_riemann<T: Real>(z: PlanePoint<T>) -> RiemannPoint<T> {
    sphere_to_riemann(plane_to_sphere(z))
}

/// Euclidean distance in ℝ³ between two points of the unit sphere.
pub fn chordal_distance<T: Real>(x: SpherePoint<T>, y: SpherePoint<T>) -> T {
    x.distance_sqr(y).sqrt()
}

/// The same distance expressed through the projected points:
/// `2|z - w| / √((1 + |z|²)(1 + |w|²))`.
pub fn chordal_distance_plane<T: Real>(z: PlanePoint<T>, w: PlanePoint<T>) -> T {
    let dz = PlanePoint::new(z.re - w.re, z.im - w.im);
    lit::<T>(2.0) * dz.norm_sqr().sqrt() / ((T::one() + z.norm_sqr()) * (T::one() + w.norm_sqr())).sqrt()
}

/// An ordered list of `N ≥ 1` points on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration<T = f64> {
    points: Vec<SpherePoint<T>>,
}

impl<T: Real> Configuration<T> {
    pub fn new(points: Vec<SpherePoint<T>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("a configuration needs at least one point".into()));
        }
        for p in &points {
            SpherePoint::new(p.a, p.b, p.c)?;
        }
        Ok(Self { points })
    }

    /// Inverse-projects plane points (roots) onto the sphere.
    pub fn from_plane(roots: &[PlanePoint<T>]) -> Result<Self> {
        Self::new(roots.iter().map(|&z| plane_to_sphere(z)).collect())
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        assert!(n >= 1, "configuration size must be positive");
        Self {
            points: (0..n).map(|_| SpherePoint::random(rng)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[SpherePoint<T>] {
        &self.points
    }

    pub fn into_points(self) -> Vec<SpherePoint<T>> {
        self.points
    }

    pub fn to_plane(&self) -> Result<Vec<PlanePoint<T>>> {
        self.points.iter().map(|&x| sphere_to_plane(x)).collect()
    }

    pub fn to_riemann(&self) -> Vec<RiemannPoint<T>> {
        self.points.iter().map(|&x| sphere_to_riemann(x)).collect()
    }

    /// Smallest pairwise chordal distance with its index pair; `None` for `N = 1`.
    pub fn min_distance(&self) -> Option<(usize, usize, T)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                let d = chordal_distance(self.points[i], self.points[j]);
                if best.is_none_or(|(_, _, b)| d < b) {
                    best = Some((i, j, d));
                }
            }
        }
        best
    }

    pub fn rotated(&self, rotation: &Rotation<T>) -> Self {
        Self {
            points: self.points.iter().map(|&p| rotation.apply(p)).collect(),
        }
    }

    pub fn cast<U: Real>(&self) -> Configuration<U> {
        Configuration {
            points: self.points.iter().map(|p| p.cast()).collect(),
        }
    }
}

/// A proper rotation of ℝ³, stored as a row-major matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation<T = f64> {
    m: [[T; 3]; 3],
}

impl<T: Real> Rotation<T> {
    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self {
            m: [[o, z, z], [z, o, z], [z, z, o]],
        }
    }

    /// Rotation by `angle` about the unit axis `(ux, uy, uz)` (Rodrigues).
    pub fn about_axis(axis: [T; 3], angle: T) -> Self {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        let (x, y, z) = (axis[0] / n, axis[1] / n, axis[2] / n);
        let (s, c) = angle.sin_cos();
        let t = T::one() - c;
        Self {
            m: [
                [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
                [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
                [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
            ],
        }
    }

    /// Haar-uniform random rotation from a normalized Gaussian quaternion.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let q: [f64; 4] = loop {
            let q: [f64; 4] = [
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            ];
            let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
            if n > 1e-12 {
                break q.map(|v| v / n);
            }
        };
        let [w, x, y, z] = q.map(lit::<T>);
        let one = T::one();
        let two = lit::<T>(2.0);
        Self {
            m: [
                [one - two * (y * y + z * z), two * (x * y - w * z), two * (x * z + w * y)],
                [two * (x * y + w * z), one - two * (x * x + z * z), two * (y * z - w * x)],
                [two * (x * z - w * y), two * (y * z + w * x), one - two * (x * x + y * y)],
            ],
        }
    }

    /// Rotates and renormalizes to absorb rounding.
    pub fn apply(&self, p: SpherePoint<T>) -> SpherePoint<T> {
        let v = p.to_array();
        let r = |row: &[T; 3]| row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
        let (a, b, c) = (r(&self.m[0]), r(&self.m[1]), r(&self.m[2]));
        SpherePoint::normalized(a, b, c).unwrap_or(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(p: SpherePoint<f64>, q: [f64; 3], tol: f64) -> bool {
        (p.a - q[0]).abs() <= tol && (p.b - q[1]).abs() <= tol && (p.c - q[2]).abs() <= tol
    }

    #[test]
    fn plane_to_sphere_examples() {
        assert!(close(plane_to_sphere(PlanePoint::new(0.0, 0.0)), [0.0, 0.0, -1.0], 0.0));
        assert!(close(plane_to_sphere(PlanePoint::new(1.0, 0.0)), [1.0, 0.0, 0.0], 1e-15));
        assert!(close(plane_to_sphere(PlanePoint::new(0.0, 1.0)), [0.0, 1.0, 0.0], 1e-15));
    }

    #[test]
    fn sphere_to_plane_examples() {
        let z = sphere_to_plane(SpherePoint::south_pole()).unwrap();
        assert_eq!((z.re, z.im), (0.0, 0.0));
        let z = sphere_to_plane(SpherePoint::new(1.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!((z.re, z.im), (1.0, 0.0));
    }

    #[test]
    fn north_pole_guard() {
        let p = SpherePoint {
            a: 0.0,
            b: 0.0,
            c: 1.0 - 1e-12,
        };
        assert!(matches!(sphere_to_plane(p), Err(Error::NearNorthPole { .. })));
        assert!(sphere_to_plane(SpherePoint::<f64>::north_pole()).is_err());
    }

    #[test]
    fn homothety_examples() {
        let h = |a, b, c| riemann_to_sphere(RiemannPoint::new(a, b, c).unwrap());
        assert!(close(h(0.0, 0.0, 0.0), [0.0, 0.0, -1.0], 0.0));
        assert!(close(h(0.0, 0.0, 1.0), [0.0, 0.0, 1.0], 0.0));
        assert!(close(h(0.5, 0.0, 0.5), [1.0, 0.0, 0.0], 0.0));
        let back = sphere_to_riemann(h(0.5, 0.0, 0.5));
        assert_eq!((back.a, back.b, back.c), (0.5, 0.0, 0.5));
    }

    #[test]
    fn chordal_examples() {
        let s = SpherePoint::<f64>::south_pole();
        assert_eq!(chordal_distance(s, s), 0.0);
        assert_eq!(chordal_distance(s, SpherePoint::north_pole()), 2.0);
        let x = plane_to_sphere(PlanePoint::new(0.0, 0.0));
        let y = plane_to_sphere(PlanePoint::new(1.0, 0.0));
        assert!((chordal_distance(x, y) - 2f64.sqrt()).abs() < 1e-15);
        let d = chordal_distance_plane(PlanePoint::new(0.0, 0.0), PlanePoint::new(1.0, 0.0));
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn checked_constructors_reject_off_sphere_points() {
        assert!(SpherePoint::new(1.0, 1.0, 0.0).is_err());
        assert!(RiemannPoint::new(0.0, 0.0, 0.6).is_err());
        assert!(Configuration::<f64>::new(vec![]).is_err());
        assert!(SpherePoint::<f64>::normalized(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn random_rotation_is_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = Rotation::<f64>::random(&mut rng);
        let x = SpherePoint::random(&mut rng);
        let y = SpherePoint::random(&mut rng);
        let (rx, ry) = (r.apply(x), r.apply(y));
        assert!((rx.dot(ry) - x.dot(y)).abs() < 1e-14);
        let about = Rotation::about_axis([0.0, 0.0, 1.0], std::f64::consts::FRAC_PI_2);
        assert!(close(about.apply(SpherePoint::new(1.0, 0.0, 0.0).unwrap()), [0.0, 1.0, 0.0], 1e-15));
    }

    #[test]
    fn f32_round_trip() {
        let z = PlanePoint::new(0.3f32, -1.7f32);
        let back = sphere_to_plane(plane_to_sphere(z)).unwrap();
        assert!((back.re - z.re).abs() < 1e-5 && (back.im - z.im).abs() < 1e-5);
    }
}
