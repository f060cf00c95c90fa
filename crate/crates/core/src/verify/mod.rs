//! Campaign-level checks tying algebras to surfaces: tangency and
//! transitivity, the similarity-reduction claims, ODE residuals for the
//! integration systems, parameter fitting, and the quadratic closure system.


pub mod closure_system;
pub mod fitting;
pub mod odes;
pub mod reductions;

use num_complex::Complex;

use crate::error::Result;
use crate::field::{AffineField, FieldBasis};
use crate::linalg;
use crate::scalar::Scalar;
use crate::surfaces::{Point, Surface};

/// Tangency residuals of a basis against a surface over a sample cloud.
#[derive(Clone, Debug)]
pub struct TangencyResult<T: Scalar> {
    pub max_residual: T,
    pub per_field: Vec<T>,
    pub n_samples: usize,
    pub seed: u64,
}

/// `Z(Phi)` at a point: the field value contracted with the holomorphic
/// gradient. Tangency of the real field means the real part vanishes on
/// the surface.
pub fn field_applied_to_phi<T: Scalar>(
    x: &AffineField<T>,
    surface: &Surface<T>,
    p: &Point<T>,
) -> Result<Complex<T>> {
    let jet = surface.wirtinger_jet(p)?;
    let val = x.evaluate_at(p.ambient());
    Ok(val[0] * jet.grad[0] + val[1] * jet.grad[1] + val[2] * jet.grad[2])
}

/// Max over fields and sampled points of |Re Z(Phi)| / max(1, |P|).
pub fn tangency_residual<T: Scalar>(
    basis: &FieldBasis<T>,
    surface: &Surface<T>,
    n: usize,
    seed: u64,
) -> Result<TangencyResult<T>> {
    let points = surface.sample_points(n, seed)?;
    let mut per_field = vec![T::zero(); basis.len()];
    for p in &points {
        let scale = {
            let s = p.norm();
            if s > T::one() {
                s
            } else {
                T::one()
            }
        };
        let jet = surface.wirtinger_jet(p)?;
        for (k, f) in basis.fields().iter().enumerate() {
            let val = f.evaluate_at(p.ambient());
            let z = val[0] * jet.grad[0] + val[1] * jet.grad[1] + val[2] * jet.grad[2];
            let r = z.re.abs() / scale;
            if r > per_field[k] {
                per_field[k] = r;
            }
        }
    }
    let max_residual = per_field.iter().copied().fold(T::zero(), |a, b| if b > a { b } else { a });
    Ok(TangencyResult {
        max_residual,
        per_field,
        n_samples: n,
        seed,
    })
}

/// Rank (1e-8 relative threshold) of the real span of the field values at a
/// point, projected into the real tangent space of the surface.
pub fn transitivity_rank<T: Scalar>(
    basis: &FieldBasis<T>,
    surface: &Surface<T>,
    p: &Point<T>,
) -> Result<usize> {
    let jet = surface.wirtinger_jet(p)?;
    // real gradient in (x1, y1, x2, y2, u, v): Phi_x = 2 Re g, Phi_y = -2 Im g
    let two = T::of(2.0);
    let mut normal = [T::zero(); 6];
    for j in 0..3 {
        normal[2 * j] = two * jet.grad[j].re;
        normal[2 * j + 1] = -two * jet.grad[j].im;
    }
    let nn = normal.iter().map(|x| *x * *x).fold(T::zero(), |a, b| a + b);
    let mut m = nalgebra::DMatrix::<T>::zeros(6, basis.len());
    for (k, f) in basis.fields().iter().enumerate() {
        let val = f.evaluate_at(p.ambient());
        let mut row6 = [T::zero(); 6];
        for j in 0..3 {
            row6[2 * j] = val[j].re;
            row6[2 * j + 1] = val[j].im;
        }
        // project out the normal component
        let dot = row6
            .iter()
            .zip(normal.iter())
            .map(|(a, b)| *a * *b)
            .fold(T::zero(), |a, b| a + b);
        for i in 0..6 {
            m[(i, k)] = row6[i] - normal[i] * dot / nn;
        }
    }
    Ok(linalg::rank(&m))
}
