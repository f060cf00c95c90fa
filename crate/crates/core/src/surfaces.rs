//! The hypersurface catalog: analytic defining functions, Wirtinger jets,
//! domain predicates, base points and deterministic samplers.
//!
//! Conventions. A point of C^3 is (z1, z2, w) with u = Re w, v = Im w.
//! Wirtinger derivatives use d/dz = (d/dx - i d/dy)/2, so for a graph form
//! Phi = F - v one has dPhi/dw = i/2. The jet of a surface collects the
//! holomorphic gradient g_j = dPhi/dzeta_j, the Hermitian Hessian
//! H_jk = d^2 Phi / dzeta_j dconj(zeta_k), and the holomorphic Hessian
//! Q_jk = d^2 Phi / dzeta_j dzeta_k; all three are exact closed forms and
//! are cross-checked against central finite differences in tests.

use nalgebra::{Matrix3, Matrix4, Vector3};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rng;
use crate::scalar::{ci, cmod, cmod2, cr, cx, Scalar};

/// A point of C^3.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point<T: Scalar> {
    pub z1: Complex<T>,
    pub z2: Complex<T>,
    pub w: Complex<T>,
}

impl<T: Scalar> Point<T> {
    pub fn new(z1: Complex<T>, z2: Complex<T>, w: Complex<T>) -> Self {
        Self { z1, z2, w }
    }

    pub fn from_f64(z1: (f64, f64), z2: (f64, f64), w: (f64, f64)) -> Self {
        Self::new(cx(z1.0, z1.1), cx(z2.0, z2.1), cx(w.0, w.1))
    }

    pub fn x1(&self) -> T {
        self.z1.re
    }
    pub fn y1(&self) -> T {
        self.z1.im
    }
    pub fn x2(&self) -> T {
        self.z2.re
    }
    pub fn y2(&self) -> T {
        self.z2.im
    }
    pub fn u(&self) -> T {
        self.w.re
    }
    pub fn v(&self) -> T {
        self.w.im
    }

    pub fn ambient(&self) -> Vector3<Complex<T>> {
        Vector3::new(self.z1, self.z2, self.w)
    }

    pub fn from_ambient(v: Vector3<Complex<T>>) -> Self {
        Self::new(v[0], v[1], v[2])
    }

    /// Euclidean norm of the realified coordinates.
    pub fn norm(&self) -> T {
        (cmod2(self.z1) + cmod2(self.z2) + cmod2(self.w)).sqrt()
    }
}

/// First and second Wirtinger derivatives of a defining function at a point.
#[derive(Clone, Debug)]
pub struct WirtingerJet<T: Scalar> {
    pub grad: Vector3<Complex<T>>,
    /// H_jk = d^2 Phi / dz_j dconj(z_k); Hermitian.
    pub hermitian: Matrix3<Complex<T>>,
    /// Q_jk = d^2 Phi / dz_j dz_k; symmetric.
    pub holomorphic: Matrix3<Complex<T>>,
}

impl<T: Scalar> WirtingerJet<T> {
    pub fn negated(&self) -> Self {
        Self {
            grad: -self.grad,
            hermitian: -self.hermitian,
            holomorphic: -self.holomorphic,
        }
    }
}

/// Complex-affine map `P -> L P + t` of C^3.
#[derive(Clone, Debug)]
pub struct AffineMap<T: Scalar> {
    pub linear: Matrix3<Complex<T>>,
    pub translation: Vector3<Complex<T>>,
}

impl<T: Scalar> AffineMap<T> {
    pub fn identity() -> Self {
        Self {
            linear: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    /// From a 4x4 affine-shape matrix (last row (0,0,0,c)).
    pub fn from_matrix4(m: &Matrix4<Complex<T>>) -> Result<Self> {
        let (n, _) = linalg::affine_inverse(m)?;
        Ok(Self {
            linear: Matrix3::from_fn(|i, j| n[(i, j)]),
            translation: Vector3::new(n[(0, 3)], n[(1, 3)], n[(2, 3)]),
        })
    }

    /// Rows built from f64 literals: `rows[i]` holds the linear row, `t[i]`
    /// the translation entry.
    pub fn from_rows(rows: [[(f64, f64); 3]; 3], t: [(f64, f64); 3]) -> Self {
        let linear = Matrix3::from_fn(|i, j| cx(rows[i][j].0, rows[i][j].1));
        let translation = Vector3::new(cx(t[0].0, t[0].1), cx(t[1].0, t[1].1), cx(t[2].0, t[2].1));
        Self { linear, translation }
    }

    pub fn apply(&self, p: &Point<T>) -> Point<T> {
        Point::from_ambient(self.linear * p.ambient() + self.translation)
    }

    pub fn inverse(&self) -> Result<Self> {
        let linv = self
            .linear
            .try_inverse()
            .ok_or_else(|| Error::SingularTransform("affine map not invertible".into()))?;
        Ok(Self {
            linear: linv,
            translation: -(linv * self.translation),
        })
    }

    /// Pullback of a jet through the map: for Phi' = Phi o A,
    /// g' = L^T g, H' = L^T H conj(L), Q' = L^T Q L.
    pub fn pullback_jet(&self, jet: &WirtingerJet<T>) -> WirtingerJet<T> {
        let lt = self.linear.transpose();
        WirtingerJet {
            grad: lt * jet.grad,
            hermitian: lt * jet.hermitian * self.linear.map(|z| z.conj()),
            holomorphic: lt * jet.holomorphic * self.linear,
        }
    }
}

/// Catalog hypersurfaces, keyed by stable string ids.
#[derive(Clone, Debug)]
pub enum Surface<T: Scalar> {
    /// `2.15`: v = |z1|^2 + |z2|^2 + (z1^2 + conj(z1)^2)/2 = 2 x1^2 + |z2|^2.
    ModelQuadric,
    /// `2.1`: v = 2 x1^2 + |z2|^2 (tube form of the quadric).
    QuadricTube,
    /// `2.2`: v = exp(x1) + |z2|^2.
    ExpTube,
    /// `2.3`: v = -ln(1 + x1) + |z2|^2, x1 > -1.
    LogTube,
    /// `2.4`: v = sign * (1 + x1)^alpha + |z2|^2, x1 > -1; the sign makes the
    /// x1^2 Taylor coefficient positive.
    PowerTube { alpha: T },
    /// `2.5`: v = (1 + x1) ln(1 + x1) + |z2|^2, x1 > -1.
    XLogTube,
    /// `2.6`: v^2 = |z1|^2 + |z2|^2, v != 0 (positive branch sampled).
    Cone,
    /// `2.7`: v = x1^2/(1 - x2) + k |z2|^2, x2 != 1 (k = 1 catalog form,
    /// k = 2 variant kept for the side-by-side equivalence report).
    CubicSection { k: T },
    /// `2.8`: v = |z1| exp(B arg z1) + |z2|^2 on the slit plane.
    Spiral { b: T },
    /// `2.9`: v = x1^(1-alpha) |z2|^(2 alpha), x1 > 0, |z2| > 0.
    PowerPair { alpha: T },
    /// `2.10`: Re(conj(z1) w) = (Re(z1 conj(z2)))^alpha, Re(z1 conj(z2)) > 0.
    Pairing { alpha: T },
    /// `5.12`: v^t = |z1|^2 + |z2|^2, v > 0.
    PowerCone { t: T },
    /// `5.21`: v = x1^2/x2 - y2^2/4 + C x2^2, x2 != 0 (sampled on x2 < 0).
    CubicFamily521 { c: T },
    /// `cubic`: v = x1^2/x2 + A x2^2 + y2^2, x2 > 0.
    CubicFamilyA { a: T },
    /// `5.25`: Re(conj(z1) w) = C (Im(conj(z1) z2))^alpha, the pre-rotation
    /// form of `2.10`.
    PairingIm { alpha: T, c: T },
    /// `5.7`: v = |z2|^2 + C exp(2 t7 x1), the raw exponential family used by
    /// the Levi degeneracy checks.
    ExpFamily { c: T, t7: T },
    /// Affine pullback of another surface: Phi'(P) = Phi(map(P)).
    Mapped {
        inner: Box<Surface<T>>,
        map: AffineMap<T>,
    },
}

impl<T: Scalar> Surface<T> {
    pub fn id(&self) -> String {
        match self {
            Surface::ModelQuadric => "2.15".into(),
            Surface::QuadricTube => "2.1".into(),
            Surface::ExpTube => "2.2".into(),
            Surface::LogTube => "2.3".into(),
            Surface::PowerTube { .. } => "2.4".into(),
            Surface::XLogTube => "2.5".into(),
            Surface::Cone => "2.6".into(),
            Surface::CubicSection { k } => {
                if *k == T::one() {
                    "2.7".into()
                } else {
                    "2.7k2".into()
                }
            }
            Surface::Spiral { .. } => "2.8".into(),
            Surface::PowerPair { .. } => "2.9".into(),
            Surface::Pairing { .. } => "2.10".into(),
            Surface::PowerCone { .. } => "5.12".into(),
            Surface::CubicFamily521 { .. } => "5.21".into(),
            Surface::CubicFamilyA { .. } => "cubic".into(),
            Surface::PairingIm { .. } => "5.25".into(),
            Surface::ExpFamily { .. } => "5.7".into(),
            Surface::Mapped { inner, .. } => format!("mapped({})", inner.id()),
        }
    }

    /// The ten main-theorem surfaces at their default parameters.
    pub fn main_theorem() -> Vec<Surface<T>> {
        vec![
            Surface::QuadricTube,
            Surface::ExpTube,
            Surface::LogTube,
            Surface::PowerTube { alpha: T::of(-1.0) },
            Surface::XLogTube,
            Surface::Cone,
            Surface::CubicSection { k: T::one() },
            Surface::Spiral { b: T::one() },
            Surface::PowerPair { alpha: T::of(2.0) },
            Surface::Pairing { alpha: T::of(-1.0) },
        ]
    }

    pub fn from_id(id: &str) -> Result<Surface<T>> {
        Ok(match id {
            "2.15" => Surface::ModelQuadric,
            "2.1" => Surface::QuadricTube,
            "2.2" => Surface::ExpTube,
            "2.3" => Surface::LogTube,
            "2.4" => Surface::PowerTube { alpha: T::of(-1.0) },
            "2.5" => Surface::XLogTube,
            "2.6" => Surface::Cone,
            "2.7" => Surface::CubicSection { k: T::one() },
            "2.7k2" => Surface::CubicSection { k: T::of(2.0) },
            "2.8" => Surface::Spiral { b: T::one() },
            "2.9" => Surface::PowerPair { alpha: T::of(2.0) },
            "2.10" => Surface::Pairing { alpha: T::of(-1.0) },
            "5.12" => Surface::PowerCone { t: T::of(3.0) },
            "5.21" => Surface::CubicFamily521 { c: T::of(-0.25) },
            "cubic" => Surface::CubicFamilyA { a: T::of(2.0) },
            "5.25" => Surface::PairingIm {
                alpha: T::of(-1.0),
                c: T::one(),
            },
            "5.7" => Surface::ExpFamily {
                c: T::one(),
                t7: T::of(0.5),
            },
            _ => return Err(Error::UnknownId(id.into())),
        })
    }

    /// Sign convention of `2.4`: positive x1^2 Taylor coefficient, i.e.
    /// sign(alpha (alpha - 1)).
    pub fn power_tube_sign(alpha: T) -> T {
        if alpha * (alpha - T::one()) > T::zero() {
            T::one()
        } else {
            -T::one()
        }
    }

    pub fn in_domain(&self, p: &Point<T>) -> bool {
        let eps = T::of(1e-9);
        match self {
            Surface::ModelQuadric | Surface::QuadricTube | Surface::ExpTube => true,
            Surface::LogTube | Surface::PowerTube { .. } | Surface::XLogTube => {
                p.x1() > -T::one() + eps
            }
            Surface::Cone => p.v().abs() > eps,
            Surface::CubicSection { .. } => (p.x2() - T::one()).abs() > eps,
            Surface::Spiral { .. } => {
                // slit plane with a sector excluded around the cut
                let r = cmod(p.z1);
                let theta = p.y1().atan2(p.x1());
                r > eps && theta.abs() < T::pi() - T::of(0.05)
            }
            Surface::PowerPair { .. } => p.x1() > eps && cmod(p.z2) > eps,
            Surface::Pairing { .. } => (p.z1 * p.z2.conj()).re > eps,
            Surface::PowerCone { .. } => p.v() > eps,
            Surface::CubicFamily521 { .. } => p.x2().abs() > eps,
            Surface::CubicFamilyA { .. } => p.x2().abs() > eps,
            Surface::PairingIm { .. } => (p.z1.conj() * p.z2).im > eps,
            Surface::ExpFamily { .. } => true,
            Surface::Mapped { inner, map } => inner.in_domain(&map.apply(p)),
        }
    }

    /// A point on the surface inside the domain.
    pub fn base_point(&self) -> Point<T> {
        match self {
            Surface::ModelQuadric | Surface::QuadricTube | Surface::LogTube | Surface::XLogTube => {
                Point::from_f64((0.0, 0.0), (0.0, 0.0), (0.0, 0.0))
            }
            Surface::ExpTube => Point::from_f64((0.0, 0.0), (0.0, 0.0), (0.0, 1.0)),
            Surface::PowerTube { alpha } => {
                let s = Self::power_tube_sign(*alpha);
                Point::new(cx(0.0, 0.0), cx(0.0, 0.0), ci(s))
            }
            Surface::Cone => Point::from_f64((0.0, 0.0), (1.0, 0.0), (0.0, 1.0)),
            Surface::CubicSection { .. } => Point::from_f64((0.0, 0.0), (0.0, 0.0), (0.0, 0.0)),
            Surface::Spiral { .. } => Point::from_f64((1.0, 0.0), (0.0, 0.0), (0.0, 1.0)),
            Surface::PowerPair { .. } => Point::from_f64((1.0, 0.0), (1.0, 0.0), (0.0, 1.0)),
            Surface::Pairing { .. } => Point::from_f64((1.0, 0.0), (1.0, 0.0), (1.0, 0.0)),
            Surface::PowerCone { t } => {
                let v = T::of(2.0).powf(T::one() / *t);
                Point::new(cx(1.0, 0.0), cx(1.0, 0.0), ci(v))
            }
            Surface::CubicFamily521 { c } => {
                Point::new(cx(0.0, 0.0), cx(-2.0, 0.0), ci(T::of(4.0) * *c))
            }
            Surface::CubicFamilyA { a } => Point::new(cx(1.0, 0.0), cx(1.0, 0.0), ci(T::one() + *a)),
            Surface::PairingIm { c, .. } => Point::new(cx(1.0, 0.0), cx(0.0, 1.0), cr(*c)),
            Surface::ExpFamily { c, .. } => Point::new(cx(0.0, 0.0), cx(0.0, 0.0), ci(*c)),
            Surface::Mapped { inner, map } => map
                .inverse()
                .expect("mapped surface carries an invertible map")
                .apply(&inner.base_point()),
        }
    }

    /// Value of the defining function.
    pub fn phi(&self, p: &Point<T>) -> Result<T> {
        if !self.in_domain(p) {
            return Err(Error::DomainViolation(format!(
                "point outside domain of surface {}",
                self.id()
            )));
        }
        Ok(self.phi_unchecked(p))
    }

    pub(crate) fn phi_unchecked(&self, p: &Point<T>) -> T {
        let two = T::of(2.0);
        match self {
            Surface::ModelQuadric | Surface::QuadricTube => {
                -p.v() + two * p.x1() * p.x1() + cmod2(p.z2)
            }
            Surface::ExpTube => -p.v() + p.x1().exp() + cmod2(p.z2),
            Surface::LogTube => -p.v() - (T::one() + p.x1()).ln() + cmod2(p.z2),
            Surface::PowerTube { alpha } => {
                let s = Self::power_tube_sign(*alpha);
                -p.v() + s * (T::one() + p.x1()).powf(*alpha) + cmod2(p.z2)
            }
            Surface::XLogTube => {
                let x = T::one() + p.x1();
                -p.v() + x * x.ln() + cmod2(p.z2)
            }
            Surface::Cone => p.v() * p.v() - cmod2(p.z1) - cmod2(p.z2),
            Surface::CubicSection { k } => {
                -p.v() + p.x1() * p.x1() / (T::one() - p.x2()) + *k * cmod2(p.z2)
            }
            Surface::Spiral { b } => {
                let r = cmod(p.z1);
                let theta = p.y1().atan2(p.x1());
                -p.v() + r * (*b * theta).exp() + cmod2(p.z2)
            }
            Surface::PowerPair { alpha } => {
                -p.v() + p.x1().powf(T::one() - *alpha) * cmod2(p.z2).powf(*alpha)
            }
            Surface::Pairing { alpha } => {
                let s = (p.z1 * p.z2.conj()).re;
                (p.z1.conj() * p.w).re - s.powf(*alpha)
            }
            Surface::PowerCone { t } => p.v().powf(*t) - cmod2(p.z1) - cmod2(p.z2),
            Surface::CubicFamily521 { c } => {
                -p.v() + p.x1() * p.x1() / p.x2() - p.y2() * p.y2() / T::of(4.0)
                    + *c * p.x2() * p.x2()
            }
            Surface::CubicFamilyA { a } => {
                -p.v() + p.x1() * p.x1() / p.x2() + *a * p.x2() * p.x2() + p.y2() * p.y2()
            }
            Surface::PairingIm { alpha, c } => {
                let r = (p.z1.conj() * p.z2).im;
                (p.z1.conj() * p.w).re - *c * r.powf(*alpha)
            }
            Surface::ExpFamily { c, t7 } => {
                -p.v() + cmod2(p.z2) + *c * (two * *t7 * p.x1()).exp()
            }
            Surface::Mapped { inner, map } => inner.phi_unchecked(&map.apply(p)),
        }
    }

    /// Closed-form Wirtinger jet.
    pub fn wirtinger_jet(&self, p: &Point<T>) -> Result<WirtingerJet<T>> {
        if !self.in_domain(p) {
            return Err(Error::DomainViolation(format!(
                "point outside domain of surface {}",
                self.id()
            )));
        }
        Ok(self.jet_unchecked(p))
    }

    pub(crate) fn jet_unchecked(&self, p: &Point<T>) -> WirtingerJet<T> {
        let mut g = Vector3::zeros();
        let mut h = Matrix3::zeros();
        let mut q = Matrix3::zeros();
        let half = T::of(0.5);
        let quarter = T::of(0.25);
        let two = T::of(2.0);

        // shared pieces
        let minus_v = |g: &mut Vector3<Complex<T>>| {
            g[2] += ci(half); // d(-v)/dw = i/2
        };
        let z2sq = |g: &mut Vector3<Complex<T>>, h: &mut Matrix3<Complex<T>>| {
            g[1] += p.z2.conj();
            h[(1, 1)] += cr(T::one());
        };
        // real profile f(x1): g1 += f'/2, H11 += f''/4, Q11 += f''/4
        let xprofile = |g: &mut Vector3<Complex<T>>,
                        h: &mut Matrix3<Complex<T>>,
                        q: &mut Matrix3<Complex<T>>,
                        d1: T,
                        d2: T| {
            g[0] += cr(half * d1);
            h[(0, 0)] += cr(quarter * d2);
            q[(0, 0)] += cr(quarter * d2);
        };
        // real profile f(x1, x2): H = Q = quarter * real Hessian on the z block
        let xxprofile = |g: &mut Vector3<Complex<T>>,
                         h: &mut Matrix3<Complex<T>>,
                         q: &mut Matrix3<Complex<T>>,
                         fx1: T,
                         fx2: T,
                         fx1x1: T,
                         fx1x2: T,
                         fx2x2: T| {
            g[0] += cr(half * fx1);
            g[1] += cr(half * fx2);
            for (i, j, val) in [(0usize, 0usize, fx1x1), (0, 1, fx1x2), (1, 1, fx2x2)] {
                h[(i, j)] += cr(quarter * val);
                q[(i, j)] += cr(quarter * val);
                if i != j {
                    h[(j, i)] += cr(quarter * val);
                    q[(j, i)] += cr(quarter * val);
                }
            }
        };

        match self {
            Surface::ModelQuadric | Surface::QuadricTube => {
                minus_v(&mut g);
                z2sq(&mut g, &mut h);
                xprofile(&mut g, &mut h, &mut q, T::of(4.0) * p.x1(), T::of(4.0));
            }
            Surface::ExpTube => {
                minus_v(&mut g);
                z2sq(&mut g, &mut h);
                let e = p.x1().exp();
                xprofile(&mut g, &mut h, &mut q, e, e);
            }
            Surface::LogTube => {
                minus_v(&mut g);
                z2sq(&mut g, &mut h);
                let x = T::one() + p.x1();
                xprofile(&mut g, &mut h, &mut q, -T::one() / x, T::one() / (x * x));
            }
            Surface::PowerTube { alpha } => {
                minus_v(&mut g);
                z2sq(&mut g, &mut h);
                let s = Self::power_tube_sign(*alpha);
                let a = *alpha;
                let x = T::one() + p.x1();
                xprofile(
                    &mut g,
                    &mut h,
                    &mut q,
                    s * a * x.powf(a - T::one()),
                    s * a * (a - T::one()) * x.powf(a - two),
                );
            }
            Surface::XLogTube => {
                minus_v(&mut g);
                z2sq(&mut g, &mut h);
                let x = T::one() + p.x1();
                xprofile(&mut g, &mut h, &mut q, x.ln() + T::one(), T::one() / x);
            }
            Surface::Cone => {
                // v^2 - |z1|^2 - |z2|^2, with dv/dw = -i/2
                g[0] = -p.z1.conj();
                g[1] = -p.z2.conj();
                g[2] = ci(-p.v());
                h[(0, 0)] = cr(-T::one());
                h[(1, 1)] = cr(-T::one());
                h[(2, 2)] = cr(half);
                q[(2, 2)] = cr(-half);
            }
            Surface::CubicSection { k } => {
                minus_v(&mut g);
                g[1] += p.z2.conj() * cr(*k);
                h[(1, 1)] += cr(*k);
                let qq = T::one() - p.x2();
                // note d/dx2 (1/(1-x2)) = +1/(1-x2)^2
                xxprofile(
                    &mut g,
                    &mut h,
                    &mut q,
                    two * p.x1() / qq,
                    p.x1() * p.x1() / (qq * qq),
                    two / qq,
                    two * p.x1() / (qq * qq),
                    two * p.x1() * p.x1() / (qq * qq * qq),
                );
            }
            Surface::Spiral { b } => {
                minus_v(&mut g);
                z2sq(&mut g, &mut h);
                let bb = *b;
                let r = cmod(p.z1);
                let theta = p.y1().atan2(p.x1());
                let ebt = (bb * theta).exp();
                let one_mib = Complex::new(T::one(), -bb);
                let phase = Complex::new(theta.cos(), -theta.sin()); // e^{-i theta}
                g[0] += cr(half * ebt) * phase * one_mib;
                let c2 = (T::one() + bb * bb) * ebt / (T::of(4.0) * r);
                h[(0, 0)] += cr(c2);
                q[(0, 0)] += cr(-c2) * phase * phase;
            }
            Surface::PowerPair { alpha } => {
                minus_v(&mut g);
                let a = *alpha;
                let x = p.x1();
                let s = cmod2(p.z2);
                let xa = x.powf(T::one() - a);
                let sa = s.powf(a);
                g[0] += cr(half * (T::one() - a) * x.powf(-a) * sa);
                g[1] += p.z2.conj() * cr(a * xa * s.powf(a - T::one()));
                h[(0, 0)] += cr(-quarter * a * (T::one() - a) * x.powf(-a - T::one()) * sa);
                let h12 = p.z2 * cr(half * (T::one() - a) * a * x.powf(-a) * s.powf(a - T::one()));
                h[(0, 1)] += h12;
                h[(1, 0)] += h12.conj();
                h[(1, 1)] += cr(a * a * xa * s.powf(a - T::one()));
                q[(0, 0)] += cr(-quarter * a * (T::one() - a) * x.powf(-a - T::one()) * sa);
                let q12 =
                    p.z2.conj() * cr(half * (T::one() - a) * a * x.powf(-a) * s.powf(a - T::one()));
                q[(0, 1)] += q12;
                q[(1, 0)] += q12;
                q[(1, 1)] +=
                    p.z2.conj() * p.z2.conj() * cr(a * (a - T::one()) * xa * s.powf(a - two));
            }
            Surface::Pairing { alpha } => {
                // Re(conj(z1) w) - S^alpha, S = Re(z1 conj(z2));
                // dS/dz1 = conj(z2)/2, dS/dz2 = conj(z1)/2
                let a = *alpha;
                let s = (p.z1 * p.z2.conj()).re;
                let s1 = a * s.powf(a - T::one());
                let s2 = a * (a - T::one()) * s.powf(a - two);
                let dz1 = p.z2.conj() * cr(half);
                let dz2 = p.z1.conj() * cr(half);
                g[0] = p.w.conj() * cr(half) - dz1 * cr(s1);
                g[1] = -dz2 * cr(s1);
                g[2] = p.z1.conj() * cr(half);
                h[(0, 2)] = cr(half);
                h[(2, 0)] = cr(half);
                h[(0, 0)] = dz1 * dz1.conj() * cr(-s2);
                h[(1, 1)] = dz2 * dz2.conj() * cr(-s2);
                // d^2 S / dz1 dconj(z2) = 1/2
                h[(0, 1)] = dz1 * dz2.conj() * cr(-s2) + cr(-half * s1);
                h[(1, 0)] = h[(0, 1)].conj();
                q[(0, 0)] = dz1 * dz1 * cr(-s2);
                q[(1, 1)] = dz2 * dz2 * cr(-s2);
                let q12 = dz1 * dz2 * cr(-s2);
                q[(0, 1)] = q12;
                q[(1, 0)] = q12;
            }
            Surface::PowerCone { t } => {
                let tt = *t;
                let v = p.v();
                let f1 = tt * v.powf(tt - T::one());
                let f2 = tt * (tt - T::one()) * v.powf(tt - two);
                g[0] = -p.z1.conj();
                g[1] = -p.z2.conj();
                g[2] = ci(-half * f1);
                h[(0, 0)] = cr(-T::one());
                h[(1, 1)] = cr(-T::one());
                h[(2, 2)] = cr(quarter * f2);
                q[(2, 2)] = cr(-quarter * f2);
            }
            Surface::CubicFamily521 { c } => {
                minus_v(&mut g);
                let x1 = p.x1();
                let x2 = p.x2();
                xxprofile(
                    &mut g,
                    &mut h,
                    &mut q,
                    two * x1 / x2,
                    -x1 * x1 / (x2 * x2) + two * *c * x2,
                    two / x2,
                    -two * x1 / (x2 * x2),
                    two * x1 * x1 / (x2 * x2 * x2) + two * *c,
                );
                // -y2^2/4: dy2/dz2 = -i/2, so d/dz2 = (-y2/2)(-i/2) = i y2/4
                let y2 = p.y2();
                g[1] += ci(quarter * y2);
                h[(1, 1)] += cr(-T::of(0.125));
                q[(1, 1)] += cr(T::of(0.125));
            }
            Surface::CubicFamilyA { a } => {
                minus_v(&mut g);
                let x1 = p.x1();
                let x2 = p.x2();
                xxprofile(
                    &mut g,
                    &mut h,
                    &mut q,
                    two * x1 / x2,
                    -x1 * x1 / (x2 * x2) + two * *a * x2,
                    two / x2,
                    -two * x1 / (x2 * x2),
                    two * x1 * x1 / (x2 * x2 * x2) + two * *a,
                );
                // +y2^2
                let y2 = p.y2();
                g[1] += ci(-y2);
                h[(1, 1)] += cr(half);
                q[(1, 1)] += cr(-half);
            }
            Surface::PairingIm { alpha, c } => {
                // Re(conj(z1) w) - C R^alpha, R = Im(conj(z1) z2);
                // dR/dz1 = i conj(z2)/2, dR/dz2 = -i conj(z1)/2
                let a = *alpha;
                let r = (p.z1.conj() * p.z2).im;
                let r1 = *c * a * r.powf(a - T::one());
                let r2 = *c * a * (a - T::one()) * r.powf(a - two);
                let dz1 = p.z2.conj() * ci(half);
                let dz2 = p.z1.conj() * ci(-half);
                g[0] = p.w.conj() * cr(half) - dz1 * cr(r1);
                g[1] = -dz2 * cr(r1);
                g[2] = p.z1.conj() * cr(half);
                h[(0, 2)] = cr(half);
                h[(2, 0)] = cr(half);
                h[(0, 0)] = dz1 * dz1.conj() * cr(-r2);
                h[(1, 1)] = dz2 * dz2.conj() * cr(-r2);
                // d^2 R / dz1 dconj(z2) = i/2
                h[(0, 1)] = dz1 * dz2.conj() * cr(-r2) + ci(-half * r1);
                h[(1, 0)] = h[(0, 1)].conj();
                q[(0, 0)] = dz1 * dz1 * cr(-r2);
                q[(1, 1)] = dz2 * dz2 * cr(-r2);
                let q12 = dz1 * dz2 * cr(-r2);
                q[(0, 1)] = q12;
                q[(1, 0)] = q12;
            }
            Surface::ExpFamily { c, t7 } => {
                minus_v(&mut g);
                z2sq(&mut g, &mut h);
                let e = *c * (two * *t7 * p.x1()).exp();
                xprofile(
                    &mut g,
                    &mut h,
                    &mut q,
                    two * *t7 * e,
                    T::of(4.0) * *t7 * *t7 * e,
                );
            }
            Surface::Mapped { inner, map } => {
                let jet = inner.jet_unchecked(&map.apply(p));
                return map.pullback_jet(&jet);
            }
        }
        WirtingerJet {
            grad: g,
            hermitian: h,
            holomorphic: q,
        }
    }

    /// Graph solve: completes (z1, z2, t) to a surface point, with t = u for
    /// the v-graphs and t = v for the u-graphs (`2.10`, `5.25`).
    fn graph_complete(&self, z1: Complex<T>, z2: Complex<T>, t: T) -> Option<Point<T>> {
        match self {
            Surface::Pairing { alpha } => {
                let s = (z1 * z2.conj()).re;
                if s <= T::of(1e-6) || z1.re.abs() < T::of(1e-6) {
                    return None;
                }
                let v = t;
                let u = (s.powf(*alpha) - z1.im * v) / z1.re;
                Some(Point::new(z1, z2, Complex::new(u, v)))
            }
            Surface::PairingIm { alpha, c } => {
                let r = (z1.conj() * z2).im;
                if r <= T::of(1e-6) || z1.re.abs() < T::of(1e-6) {
                    return None;
                }
                let v = t;
                let u = (*c * r.powf(*alpha) - z1.im * v) / z1.re;
                Some(Point::new(z1, z2, Complex::new(u, v)))
            }
            Surface::Cone | Surface::PowerCone { .. } | Surface::Mapped { .. } => None,
            _ => {
                let probe = Point::new(z1, z2, Complex::new(t, T::zero()));
                if !self.in_domain(&probe) {
                    return None;
                }
                let f = self.phi_unchecked(&probe); // = F(z, u)
                Some(Point::new(z1, z2, Complex::new(t, f)))
            }
        }
    }

    /// Per-surface ambient sampling box (x1, y1, x2, y2, t), chosen to
    /// respect the domain with margin.
    #[allow(clippy::type_complexity)]
    fn sample_box(&self) -> ([f64; 2], [f64; 2], [f64; 2], [f64; 2], [f64; 2]) {
        match self {
            Surface::LogTube | Surface::PowerTube { .. } | Surface::XLogTube => {
                ([-0.6, 0.8], [-0.8, 0.8], [-0.8, 0.8], [-0.8, 0.8], [-0.8, 0.8])
            }
            Surface::Spiral { .. } => {
                ([0.5, 1.6], [-0.5, 0.5], [-0.8, 0.8], [-0.8, 0.8], [-0.8, 0.8])
            }
            Surface::PowerPair { .. } => {
                ([0.5, 1.6], [-0.8, 0.8], [0.5, 1.6], [-0.6, 0.6], [-0.8, 0.8])
            }
            Surface::Pairing { .. } => {
                ([0.7, 1.4], [-0.25, 0.25], [0.7, 1.4], [-0.25, 0.25], [-0.5, 0.5])
            }
            Surface::PairingIm { .. } => {
                ([0.7, 1.4], [-0.25, 0.25], [-0.25, 0.25], [0.7, 1.4], [-0.5, 0.5])
            }
            Surface::CubicFamily521 { .. } => {
                ([-0.7, 0.7], [-0.8, 0.8], [-2.6, -1.4], [-0.8, 0.8], [-0.8, 0.8])
            }
            Surface::CubicFamilyA { .. } => {
                ([0.6, 1.5], [-0.8, 0.8], [0.6, 1.5], [-0.8, 0.8], [-0.8, 0.8])
            }
            Surface::Cone => ([-0.4, 0.4], [-0.4, 0.4], [0.7, 1.3], [-0.4, 0.4], [0.8, 1.3]),
            Surface::PowerCone { .. } => {
                ([0.7, 1.2], [-0.3, 0.3], [0.7, 1.2], [-0.3, 0.3], [1.0, 1.6])
            }
            _ => ([-0.7, 0.7], [-0.7, 0.7], [-0.7, 0.7], [-0.7, 0.7], [-0.7, 0.7]),
        }
    }

    /// `n` deterministic points with |Phi| <= 1e-12 inside the domain.
    /// Graph surfaces solve the graph directly; the implicit ones run a
    /// damped Newton along the gradient from seeded ambient draws,
    /// rejecting draws that fail to converge.
    pub fn sample_points(&self, n: usize, seed: u64) -> Result<Vec<Point<T>>> {
        if let Surface::Mapped { inner, map } = self {
            let inv = map.inverse()?;
            return Ok(inner
                .sample_points(n, seed)?
                .into_iter()
                .map(|p| inv.apply(&p))
                .collect());
        }
        let (bx1, by1, bx2, by2, bt) = self.sample_box();
        let mut out = Vec::with_capacity(n);
        let mut rejected = 0usize;
        let mut index = 0u64;
        while out.len() < n {
            if rejected > 1000 {
                return Err(Error::SamplingExhausted {
                    what: format!("points of surface {}", self.id()),
                    attempts: rejected,
                });
            }
            let mut r = rng::stream(seed, index, &format!("pt/{}", self.id()));
            index += 1;
            let z1 = Complex::new(
                rng::uniform(&mut r, bx1[0], bx1[1]),
                rng::uniform(&mut r, by1[0], by1[1]),
            );
            let z2 = Complex::new(
                rng::uniform(&mut r, bx2[0], bx2[1]),
                rng::uniform(&mut r, by2[0], by2[1]),
            );
            let t = rng::uniform(&mut r, bt[0], bt[1]);
            let cand = match self {
                Surface::Cone | Surface::PowerCone { .. } => {
                    let v0: T = rng::uniform::<T>(&mut r, 0.9, 1.4);
                    self.newton_project(Point::new(z1, z2, Complex::new(t, v0)))
                }
                _ => self.graph_complete(z1, z2, t),
            };
            match cand {
                Some(p) if self.in_domain(&p) && self.phi_unchecked(&p).abs() <= T::of(1e-12) => {
                    out.push(p)
                }
                _ => rejected += 1,
            }
        }
        Ok(out)
    }

    /// Damped Newton along the realified gradient direction.
    fn newton_project(&self, start: Point<T>) -> Option<Point<T>> {
        let mut p = start;
        for _ in 0..60 {
            if !self.in_domain(&p) {
                return None;
            }
            let phi = self.phi_unchecked(&p);
            if phi.abs() <= T::of(1e-13) {
                return Some(p);
            }
            let jet = self.jet_unchecked(&p);
            let g = jet.grad;
            let g2 = cmod2(g[0]) + cmod2(g[1]) + cmod2(g[2]);
            if g2 < T::of(1e-18) {
                return None;
            }
            // Phi(p + t conj(g)) ~ Phi + 2 t |g|^2
            let mut step = -phi / (T::of(2.0) * g2);
            let mut improved = false;
            for _ in 0..30 {
                let cand = Point::new(
                    p.z1 + g[0].conj() * cr(step),
                    p.z2 + g[1].conj() * cr(step),
                    p.w + g[2].conj() * cr(step),
                );
                if self.in_domain(&cand) && self.phi_unchecked(&cand).abs() < phi.abs() {
                    p = cand;
                    improved = true;
                    break;
                }
                step *= T::of(0.5);
            }
            if !improved {
                return None;
            }
        }
        None
    }
}

/// Finite-difference Wirtinger gradient, step 1e-5; the cross-check oracle
/// for the analytic jets.
pub fn fd_gradient<T: Scalar>(f: &dyn Fn(&Point<T>) -> T, p: &Point<T>) -> Vector3<Complex<T>> {
    let h = T::of(1e-5);
    let mut out = Vector3::zeros();
    for k in 0..3 {
        let shift = |dre: T, dim: T| {
            let mut q = *p;
            let d = Complex::new(dre, dim);
            match k {
                0 => q.z1 += d,
                1 => q.z2 += d,
                _ => q.w += d,
            }
            f(&q)
        };
        let dx = (shift(h, T::zero()) - shift(-h, T::zero())) / (T::of(2.0) * h);
        let dy = (shift(T::zero(), h) - shift(T::zero(), -h)) / (T::of(2.0) * h);
        out[k] = Complex::new(dx, -dy) * cr(T::of(0.5));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog_all() -> Vec<Surface<f64>> {
        let mut v: Vec<Surface<f64>> = Surface::main_theorem();
        v.push(Surface::ModelQuadric);
        v.push(Surface::CubicSection { k: 2.0 });
        v.push(Surface::PowerCone { t: 3.0 });
        v.push(Surface::CubicFamily521 { c: -0.25 });
        v.push(Surface::CubicFamilyA { a: 2.0 });
        v.push(Surface::PairingIm { alpha: -1.0, c: 1.0 });
        v.push(Surface::ExpFamily { c: 1.0, t7: 0.5 });
        v
    }

    #[test]
    fn base_points_lie_on_surfaces() {
        for s in catalog_all() {
            let b = s.base_point();
            assert!(s.in_domain(&b), "base outside domain for {}", s.id());
            let phi = s.phi(&b).unwrap();
            assert!(phi.abs() < 1e-12, "phi(base) = {phi} for {}", s.id());
            let jet = s.wirtinger_jet(&b).unwrap();
            let gn = (cmod2(jet.grad[0]) + cmod2(jet.grad[1]) + cmod2(jet.grad[2])).sqrt();
            assert!(gn > 1e-10, "zero gradient at base for {}", s.id());
        }
    }

    #[test]
    fn phi_spot_values() {
        let s6 = Surface::<f64>::Cone;
        let p = Point::from_f64((0.0, 0.0), (1.0, 0.0), (0.0, 1.0));
        assert_eq!(s6.phi(&p).unwrap(), 0.0);

        let s3 = Surface::<f64>::LogTube;
        let p = Point::from_f64((1.0, 0.0), (0.0, 0.0), (0.0, -2.0f64.ln()));
        assert!(s3.phi(&p).unwrap().abs() < 1e-15);

        let s1 = Surface::<f64>::QuadricTube;
        let origin = Point::from_f64((0.0, 0.0), (0.0, 0.0), (0.0, 0.0));
        assert_eq!(s1.phi(&origin).unwrap(), 0.0);
    }

    #[test]
    fn model_quadric_jet_at_origin() {
        let s = Surface::<f64>::ModelQuadric;
        let jet = s.wirtinger_jet(&s.base_point()).unwrap();
        assert!(cmod(jet.grad[0]) < 1e-15 && cmod(jet.grad[1]) < 1e-15);
        assert!(cmod(jet.grad[2] - cx(0.0, 0.5)) < 1e-15);
        for (i, j, want) in [(0, 0, 1.0), (1, 1, 1.0), (2, 2, 0.0)] {
            assert!(cmod(jet.hermitian[(i, j)] - cx(want, 0.0)) < 1e-15);
        }
    }

    #[test]
    fn jets_match_finite_differences() {
        for s in catalog_all() {
            let pts = s.sample_points(20, 77).unwrap();
            for p in &pts {
                let jet = s.wirtinger_jet(p).unwrap();
                let fd = fd_gradient(&|q: &Point<f64>| s.phi_unchecked(q), p);
                for k in 0..3 {
                    let scale = cmod(jet.grad[k]).max(1.0);
                    assert!(
                        cmod(jet.grad[k] - fd[k]) / scale < 1e-6,
                        "{} grad[{k}]: analytic {} fd {}",
                        s.id(),
                        jet.grad[k],
                        fd[k]
                    );
                }
                // H and Q against finite differences of the analytic gradient
                let h = 1e-5;
                for j in 0..3 {
                    for k in 0..3 {
                        let shifted = |dre: f64, dim: f64| {
                            let mut q = *p;
                            let d = cx(dre, dim);
                            match k {
                                0 => q.z1 += d,
                                1 => q.z2 += d,
                                _ => q.w += d,
                            }
                            s.jet_unchecked(&q).grad[j]
                        };
                        let dx = (shifted(h, 0.0) - shifted(-h, 0.0)) / cx::<f64>(2.0 * h, 0.0);
                        let dy = (shifted(0.0, h) - shifted(0.0, -h)) / cx::<f64>(2.0 * h, 0.0);
                        let dz = (dx - cx::<f64>(0.0, 1.0) * dy) * cx::<f64>(0.5, 0.0);
                        let dzbar = (dx + cx::<f64>(0.0, 1.0) * dy) * cx::<f64>(0.5, 0.0);
                        let hs = cmod(jet.hermitian[(j, k)]).max(1.0);
                        let qs = cmod(jet.holomorphic[(j, k)]).max(1.0);
                        assert!(
                            cmod(jet.hermitian[(j, k)] - dzbar) / hs < 1e-6,
                            "{} H[{j}{k}]: analytic {} fd {}",
                            s.id(),
                            jet.hermitian[(j, k)],
                            dzbar
                        );
                        assert!(
                            cmod(jet.holomorphic[(j, k)] - dz) / qs < 1e-6,
                            "{} Q[{j}{k}]: analytic {} fd {}",
                            s.id(),
                            jet.holomorphic[(j, k)],
                            dz
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn jets_are_hermitian_and_symmetric() {
        for s in catalog_all() {
            for p in s.sample_points(10, 5).unwrap() {
                let jet = s.wirtinger_jet(&p).unwrap();
                for i in 0..3 {
                    for j in 0..3 {
                        assert!(cmod(jet.hermitian[(i, j)] - jet.hermitian[(j, i)].conj()) < 1e-12);
                        assert!(cmod(jet.holomorphic[(i, j)] - jet.holomorphic[(j, i)]) < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_on_surface() {
        for s in catalog_all() {
            let a = s.sample_points(10, 42).unwrap();
            let b = s.sample_points(10, 42).unwrap();
            for (p, q) in a.iter().zip(b.iter()) {
                assert_eq!(p, q);
            }
            for p in &a {
                assert!(
                    s.phi(p).unwrap().abs() <= 1e-12,
                    "off-surface sample for {}",
                    s.id()
                );
            }
        }
    }

    #[test]
    fn exp_tube_samples_satisfy_graph_exactly() {
        let s = Surface::<f64>::ExpTube;
        for p in s.sample_points(10, 3).unwrap() {
            let want = p.x1().exp() + cmod2(p.z2);
            assert_eq!(p.v(), want);
        }
    }

    #[test]
    fn mapped_surface_pullback() {
        // pull the exp tube back through z1 -> z1 + ln 4, w -> w + 4i z1 + 4i:
        // the pullback is -v + 4 e^{x1} - 4 x1 - 4 + |z2|^2
        let map = AffineMap::<f64>::from_rows(
            [
                [(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
                [(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)],
                [(0.0, 4.0), (0.0, 0.0), (1.0, 0.0)],
            ],
            [(4.0f64.ln(), 0.0), (0.0, 0.0), (0.0, 4.0)],
        );
        let s = Surface::Mapped {
            inner: Box::new(Surface::<f64>::ExpTube),
            map,
        };
        let x1 = 0.3f64;
        let v = 4.0 * x1.exp() - 4.0 * x1 - 4.0 + 0.17;
        let p = Point::from_f64((x1, -0.2), (0.1, 0.4), (0.7, v));
        assert!(s.phi(&p).unwrap().abs() < 1e-12);
        let b = s.base_point();
        assert!(s.phi(&b).unwrap().abs() < 1e-12);
        let jet = s.wirtinger_jet(&p).unwrap();
        let fd = fd_gradient(&|q: &Point<f64>| s.phi_unchecked(q), &p);
        for k in 0..3 {
            assert!(cmod(jet.grad[k] - fd[k]) < 1e-6);
        }
        // samples land on the pullback
        for q in s.sample_points(10, 9).unwrap() {
            assert!(s.phi(&q).unwrap().abs() <= 1e-10);
        }
    }

    #[test]
    fn chart_consistency_on_grid() {
        // graph surfaces reproduce Phi = 0 on a 10x10x10 grid around the base
        for s in [
            Surface::<f64>::QuadricTube,
            Surface::ExpTube,
            Surface::LogTube,
            Surface::XLogTube,
            Surface::CubicSection { k: 1.0 },
        ] {
            for a in 0..10 {
                for b in 0..10 {
                    for c in 0..10 {
                        let x1 = -0.45 + 0.1 * a as f64;
                        let y1 = -0.45 + 0.1 * b as f64;
                        let u = -0.45 + 0.1 * c as f64;
                        if let Some(p) = s.graph_complete(cx(x1, y1), cx(0.2, -0.1), u) {
                            assert!(s.phi(&p).unwrap().abs() <= 1e-10);
                        }
                    }
                }
            }
        }
    }
}
