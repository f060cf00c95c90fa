//! Scalar abstraction: the numeric kernel is generic over the real type.

use num_complex::Complex;
use num_traits::FromPrimitive;

/// Real scalar the whole crate is generic over. `f32` compiles and is
/// exercised by a smoke test; the catalog tolerances assume `f64`.
pub trait Scalar: nalgebra::RealField + FromPrimitive + Copy {
    /// Lift an `f64` literal.
    fn of(x: f64) -> Self;
    /// IEEE finiteness (no NaN/Inf admitted into stored values).
    fn finite(self) -> bool;
}

impl Scalar for f64 {
    #[inline]
    fn of(x: f64) -> Self {
        x
    }
    #[inline]
    fn finite(self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    #[inline]
    fn of(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn finite(self) -> bool {
        self.is_finite()
    }
}

/// Complex number from `f64` parts.
#[inline]
pub fn cx<T: Scalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::of(re), T::of(im))
}

/// Purely real complex number.
#[inline]
pub fn cr<T: Scalar>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// Purely imaginary complex number.
#[inline]
pub fn ci<T: Scalar>(im: T) -> Complex<T> {
    Complex::new(T::zero(), im)
}

/// Squared modulus without a `Float` bound.
#[inline]
pub fn cmod2<T: Scalar>(z: Complex<T>) -> T {
    z.re * z.re + z.im * z.im
}

/// Modulus.
#[inline]
pub fn cmod<T: Scalar>(z: Complex<T>) -> T {
    cmod2(z).sqrt()
}

/// Both parts finite.
#[inline]
pub fn cfinite<T: Scalar>(z: Complex<T>) -> bool {
    z.re.finite() && z.im.finite()
}

/// Principal complex square root, via polar form.
#[inline]
pub fn csqrt<T: Scalar>(z: Complex<T>) -> Complex<T> {
    let r = cmod(z).sqrt();
    let theta = z.im.atan2(z.re) * T::of(0.5);
    Complex::new(r * theta.cos(), r * theta.sin())
}
