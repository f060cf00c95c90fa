//! Property tests over the field arithmetic and the Takagi factorization.

use nalgebra::{Matrix2, Matrix4, Vector2};
use num_complex::Complex;
use proptest::prelude::*;

use ahv_core::catalog::{instantiate, Family, Params};
use ahv_core::field::AffineField;
use ahv_core::geometry::takagi;
use ahv_core::scalar::cmod;
use ahv_core::surfaces::{AffineMap, Surface};
use ahv_core::verify::tangency_residual;

type C64 = Complex<f64>;

fn entry() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| C64::new(re, im))
}

fn field() -> impl Strategy<Value = AffineField<f64>> {
    proptest::collection::vec(entry(), 12).prop_map(|v| {
        let mut m = Matrix4::zeros();
        for r in 0..3 {
            for c in 0..4 {
                m[(r, c)] = v[4 * r + c];
            }
        }
        AffineField::from_matrix(m).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric_and_bilinear(x in field(), y in field(), z in field(),
                                             a in -2.0..2.0f64, b in -2.0..2.0f64) {
        // antisymmetry is exact
        prop_assert_eq!(x.bracket(&y).add(&y.bracket(&x)).norm(), 0.0);
        // real bilinearity in the first slot
        let lhs = x.scaled(a).add(&y.scaled(b)).bracket(&z);
        let rhs = x.bracket(&z).scaled(a).add(&y.bracket(&z).scaled(b));
        let scale = (x.norm() + y.norm()) * z.norm();
        prop_assert!(lhs.sub(&rhs).norm() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn jacobi_identity_holds(x in field(), y in field(), z in field()) {
        let j = x.bracket(&y.bracket(&z))
            .add(&y.bracket(&z.bracket(&x)))
            .add(&z.bracket(&x.bracket(&y)));
        let scale = x.norm() * y.norm() * z.norm();
        prop_assert!(j.norm() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn decompose_fast_path_agrees_with_least_squares(
        lam in proptest::collection::vec(-3.0..3.0f64, 5)
    ) {
        // a random real combination of a template-shaped basis decomposes
        // with tiny residual, and the translation-column fast path agrees
        // with the least-squares coefficients to 1e-10
        let basis = instantiate(Family::A2_16, &Params::<f64>::none())
            .unwrap()
            .truncated(5, "2.16|5")
            .unwrap();
        let mut x = AffineField::zero();
        for (l, f) in lam.iter().zip(basis.fields()) {
            x = x.add(&f.scaled(*l));
        }
        let dec = basis.decompose(&x).unwrap();
        prop_assert!(dec.residual < 1e-10);
        let fast = basis.translation_coefficients(&x).unwrap();
        for (f, l) in fast.iter().zip(dec.lambda.iter()) {
            prop_assert!((f - l).abs() <= 1e-10);
        }
    }

    #[test]
    fn takagi_reconstructs_and_matches_svd(d in proptest::collection::vec(entry(), 3)) {
        let mut q = Matrix2::zeros();
        q[(0, 0)] = d[0];
        q[(1, 1)] = d[1];
        q[(0, 1)] = d[2];
        q[(1, 0)] = d[2];
        let (u, sigma) = takagi(&q);
        let rec = u
            * Matrix2::from_diagonal(&Vector2::new(C64::new(sigma[0], 0.0), C64::new(sigma[1], 0.0)))
            * u.transpose();
        let scale = q.iter().map(|z| cmod(*z)).fold(1.0f64, f64::max);
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!(cmod(rec[(i, j)] - q[(i, j)]) <= 1e-11 * scale);
            }
        }
        // sigma are the singular values (realified SVD as the oracle)
        let dm = nalgebra::DMatrix::from_fn(2, 2, |i, j| q[(i, j)]);
        let sv = ahv_core::linalg::singular_values(&ahv_core::linalg::realify(&dm));
        prop_assert!((sigma[0] - sv[0]).abs() <= 1e-10 * scale);
        prop_assert!((sigma[1] - sv[2]).abs() <= 1e-10 * scale);
    }
}

/// Tangency is conjugation-covariant: moving both the basis and the surface
/// through the same affine change of coordinates leaves the residual alone
/// (sample clouds correspond point by point).
#[test]
fn tangency_is_conjugation_covariant() {
    let five = instantiate(Family::A2_16, &Params::<f64>::none())
        .unwrap()
        .truncated(5, "2.16|5")
        .unwrap();
    let surface = Surface::<f64>::ModelQuadric;
    let base = tangency_residual(&five, &surface, 60, 19).unwrap().max_residual;

    let mut c = Matrix4::identity();
    c[(0, 1)] = C64::new(0.3, -0.2);
    c[(1, 2)] = C64::new(0.0, 0.4);
    c[(2, 0)] = C64::new(-0.1, 0.25);
    c[(0, 3)] = C64::new(0.5, 0.1);
    c[(2, 3)] = C64::new(0.0, -0.3);
    let conj = five.conjugate(&c).unwrap();
    let mapped = Surface::Mapped {
        inner: Box::new(surface),
        map: AffineMap::from_matrix4(&c).unwrap(),
    };
    let moved = tangency_residual(&conj, &mapped, 60, 19).unwrap().max_residual;
    assert!(base <= 1e-10 && moved <= 1e-10, "base {base}, moved {moved}");
    assert!((base - moved).abs() <= 1e-8);
}
