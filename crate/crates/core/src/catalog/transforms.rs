//! The named similarity transforms of the catalog.

use nalgebra::Matrix4;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{ci, cr, cx, Scalar};

/// Transform identifiers with their parameters.
#[derive(Clone, Copy, Debug)]
pub enum Transform<T: Scalar> {
    /// Identity with `(1,3) = i*lambda`.
    C51 { lambda: T },
    /// Eigenvector matrix of the `3.6` head field; requires `m3 != 0`.
    SMatrix { m1: T, m3: T, m4: T },
    /// Diagonal rescaling paired with `S`; requires `m3 != 0`.
    DMatrix { m3: T, m4: T },
    /// The coordinate swap `z1 -> z2 -> w -> z1` as an affine matrix.
    P526,
}

impl<T: Scalar> Transform<T> {
    pub fn id(&self) -> &'static str {
        match self {
            Transform::C51 { .. } => "C5.1",
            Transform::SMatrix { .. } => "S",
            Transform::DMatrix { .. } => "D",
            Transform::P526 => "P5.26",
        }
    }
}

/// Exact transcription of the transform. All outputs are invertible on the
/// stated domains; `S` carries its displayed corner `(4,4) = -2 m3^2`, which
/// conjugation normalizes away.
pub fn build_transform<T: Scalar>(t: &Transform<T>) -> Result<Matrix4<Complex<T>>> {
    let two = T::of(2.0);
    Ok(match *t {
        Transform::C51 { lambda } => {
            let mut m = Matrix4::identity();
            m[(0, 2)] = ci(lambda);
            m
        }
        Transform::SMatrix { m1, m3, m4 } => {
            let _ = m4; // the displayed S carries only m1 and m3
            if m3 == T::zero() {
                return Err(Error::DomainViolation("transform S requires m3 != 0".into()));
            }
            let mut m = Matrix4::zeros();
            m[(0, 0)] = cx(1.0, 0.0);
            m[(0, 1)] = cr(m1);
            m[(0, 2)] = ci(m1);
            m[(0, 3)] = cr(m1);
            m[(1, 1)] = cr(m3);
            m[(1, 3)] = cr(two * m3);
            m[(2, 1)] = cx(0.0, -2.0);
            m[(2, 2)] = cx(2.0, 0.0);
            m[(2, 3)] = cx(0.0, -2.0);
            m[(3, 3)] = cr(-two * m3 * m3);
            m
        }
        Transform::DMatrix { m3, m4 } => {
            if m3 == T::zero() {
                return Err(Error::DomainViolation("transform D requires m3 != 0".into()));
            }
            let nn = m3 * m3 + m4 * m4;
            let mut m = Matrix4::zeros();
            m[(0, 0)] = cr(nn / m3);
            m[(1, 1)] = Complex::new(m3, m4) / cr(m3);
            m[(2, 2)] = cr(nn / (m3 * m3));
            m[(3, 3)] = cx(1.0, 0.0);
            m
        }
        Transform::P526 => {
            let mut m = Matrix4::zeros();
            m[(0, 1)] = cx(1.0, 0.0);
            m[(1, 2)] = cx(1.0, 0.0);
            m[(2, 0)] = cx(1.0, 0.0);
            m[(3, 3)] = cx(1.0, 0.0);
            m
        }
    })
}
