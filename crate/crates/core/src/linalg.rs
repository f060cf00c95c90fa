//! Small dense helpers built on nalgebra: realified SVD ranks and least
//! squares, affine 4x4 inverses, condition numbers.

use nalgebra::{DMatrix, DVector, Matrix3, Matrix4, Vector3};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Relative rank threshold used everywhere a span rank is needed.
pub const RANK_RTOL: f64 = 1e-8;
/// Condition-number budget for spans and transforms.
pub const COND_LIMIT: f64 = 1e12;

/// Singular values of a real matrix, descending.
pub fn singular_values<T: Scalar>(m: &DMatrix<T>) -> Vec<T> {
    let svd = m.clone().svd(false, false);
    let mut sv: Vec<T> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Numerical rank with threshold `RANK_RTOL * sigma_max`.
pub fn rank<T: Scalar>(m: &DMatrix<T>) -> usize {
    let sv = singular_values(m);
    let smax = sv.first().copied().unwrap_or_else(T::zero);
    if smax == T::zero() {
        return 0;
    }
    let tol = T::of(RANK_RTOL) * smax;
    sv.iter().filter(|s| **s > tol).count()
}

/// sigma_max / sigma_min; `None` when the smallest singular value is zero.
pub fn cond<T: Scalar>(m: &DMatrix<T>) -> Option<T> {
    let sv = singular_values(m);
    let smax = *sv.first()?;
    let smin = *sv.last()?;
    if smin == T::zero() {
        None
    } else {
        Some(smax / smin)
    }
}

/// Least squares `min |a x - b|` via SVD with the crate rank threshold.
/// Returns the minimizer and the residual norm.
pub fn lstsq<T: Scalar>(a: &DMatrix<T>, b: &DVector<T>) -> (DVector<T>, T) {
    let svd = a.clone().svd(true, true);
    let smax = svd
        .singular_values
        .iter()
        .copied()
        .fold(T::zero(), |acc, s| if s > acc { s } else { acc });
    let eps = T::of(RANK_RTOL) * smax;
    let x = svd
        .solve(b, eps)
        .unwrap_or_else(|_| DVector::zeros(a.ncols()));
    let res = (a * &x - b).norm();
    (x, res)
}

/// Realification of a complex m x n matrix as a 2m x 2n real matrix acting on
/// stacked (re, im) coordinates. Singular values of the image are those of
/// the source, doubled in multiplicity.
pub fn realify<T: Scalar>(m: &DMatrix<Complex<T>>) -> DMatrix<T> {
    let (r, c) = m.shape();
    let mut out = DMatrix::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            let z = m[(i, j)];
            out[(2 * i, 2 * j)] = z.re;
            out[(2 * i, 2 * j + 1)] = -z.im;
            out[(2 * i + 1, 2 * j)] = z.im;
            out[(2 * i + 1, 2 * j + 1)] = z.re;
        }
    }
    out
}

/// Condition number of a complex square matrix through its realification.
pub fn cond_complex<T: Scalar>(m: &Matrix4<Complex<T>>) -> Option<T> {
    let dm = DMatrix::from_fn(4, 4, |i, j| m[(i, j)]);
    cond(&realify(&dm))
}

/// Affine-shape check: last row (0,0,0,c) with c != 0. Returns c.
pub fn affine_last_row<T: Scalar>(m: &Matrix4<Complex<T>>) -> Result<Complex<T>> {
    let scale = m.iter().map(|z| crate::scalar::cmod(*z)).fold(T::zero(), |a, b| {
        if b > a {
            b
        } else {
            a
        }
    });
    let tol = T::of(1e-14) * if scale > T::one() { scale } else { T::one() };
    for j in 0..3 {
        if crate::scalar::cmod(m[(3, j)]) > tol {
            return Err(Error::SingularTransform(format!(
                "last row entry ({},{}) is not zero",
                4,
                j + 1
            )));
        }
    }
    let c = m[(3, 3)];
    if crate::scalar::cmod(c) <= tol {
        return Err(Error::SingularTransform("last row (4,4) entry is zero".into()));
    }
    Ok(c)
}

/// Inverse of an affine-shape matrix, normalizing the (4,4) entry to one.
/// The inverse is exact-affine: its last row is literally (0,0,0,1), so
/// conjugation preserves zero last rows bit-for-bit.
#[allow(clippy::type_complexity)]
pub fn affine_inverse<T: Scalar>(
    m: &Matrix4<Complex<T>>,
) -> Result<(Matrix4<Complex<T>>, Matrix4<Complex<T>>)> {
    let c = affine_last_row(m)?;
    // Conjugation is invariant under scaling, so normalize by the corner.
    let n = m / c;
    let l = Matrix3::from_fn(|i, j| n[(i, j)]);
    let t = Vector3::new(n[(0, 3)], n[(1, 3)], n[(2, 3)]);
    let linv = l
        .try_inverse()
        .ok_or_else(|| Error::SingularTransform("linear block not invertible".into()))?;
    let tinv = -(linv * t);
    let mut out = Matrix4::zeros();
    for i in 0..3 {
        for j in 0..3 {
            out[(i, j)] = linv[(i, j)];
        }
        out[(i, 3)] = tinv[i];
    }
    out[(3, 3)] = Complex::new(T::one(), T::zero());
    if let Some(k) = cond_complex(&n) {
        if k > T::of(COND_LIMIT) {
            return Err(Error::SingularTransform(format!(
                "condition number {:e} exceeds 1e12",
                k.to_subset().unwrap_or(f64::INFINITY)
            )));
        }
    } else {
        return Err(Error::SingularTransform("numerically singular".into()));
    }
    Ok((n, out))
}

/// Eigenvalues of a 2x2 Hermitian matrix, descending.
pub fn hermitian_eigs2<T: Scalar>(h: &[[Complex<T>; 2]; 2]) -> [T; 2] {
    let a = h[0][0].re;
    let d = h[1][1].re;
    let b2 = crate::scalar::cmod2(h[0][1]);
    let tr = a + d;
    let half = T::of(0.5);
    let disc = ((a - d) * (a - d) + T::of(4.0) * b2).sqrt();
    [(tr + disc) * half, (tr - disc) * half]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    #[test]
    fn realify_preserves_singular_values() {
        let m = DMatrix::from_row_slice(2, 2, &[cx::<f64>(1.0, 2.0), cx(0.0, -1.0), cx(3.0, 0.5), cx(0.2, 0.0)]);
        let r = realify(&m);
        let sv = singular_values(&r);
        // doubled multiplicity
        assert!((sv[0] - sv[1]).abs() < 1e-12);
        assert!((sv[2] - sv[3]).abs() < 1e-12);
    }

    #[test]
    fn affine_inverse_roundtrip() {
        let mut m = Matrix4::identity();
        m[(0, 2)] = cx::<f64>(0.0, 1.5);
        m[(0, 3)] = cx(2.0, -1.0);
        m[(1, 1)] = cx(0.0, 1.0);
        let (n, inv) = affine_inverse(&m).unwrap();
        let id = n * inv;
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((id[(i, j)].re - want).abs() < 1e-14);
                assert!(id[(i, j)].im.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn lstsq_exact_system() {
        let a = DMatrix::from_row_slice(3, 2, &[1.0f64, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let b = DVector::from_row_slice(&[1.0, 2.0, 3.0]);
        let (x, res) = lstsq(&a, &b);
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 2.0).abs() < 1e-12);
        assert!(res < 1e-12);
    }
}
