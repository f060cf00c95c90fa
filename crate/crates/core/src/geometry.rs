//! Levi form and signature, Takagi factorization of 2x2 complex symmetric
//! matrices, and the (eps1, eps2) affine type invariant.
//!
//! The type pipeline works on the ambient Wirtinger jet at the base point:
//!
//! 1. build an adapted complex-affine frame: an orthonormal basis (Z1, Z2)
//!    of the complex tangent ker(g^T) plus a transverse direction d with
//!    g^T d = 1, and identify the graph coordinate through tau = (i/2) w';
//! 2. restrict the jet to the frame, producing the Hermitian part H', the
//!    quadratic part Q', the u-cross vector and the u^2 coefficient;
//! 3. kill the u-cross terms with the affine shear z -> z + a u (a linear
//!    solve; the system may be consistently singular, in which case the
//!    least-norm shear is taken);
//! 4. record the sheared u^2 coefficient (no affine move removes it once
//!    the cross terms vanish; it is a weight-four tail coefficient and does
//!    not enter the invariant, so it is reported rather than dropped);
//! 5. congruence-transform H' to the identity by a triangular factor and
//!    Takagi-diagonalize the transformed Q'; the invariant is sigma/2.
//!
//! The frame choices (orthonormalization, the transverse gauge d) only move
//! the result around inside the unitary freedom that the Takagi step
//! quotients out, so (eps1, eps2) is well defined.

use nalgebra::{DMatrix, DVector, Matrix2, Matrix3x2, SMatrix, Vector2, Vector3};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{ci, cmod, cmod2, cr, Scalar};
use crate::surfaces::{Point, Surface, WirtingerJet};

/// Levi signature: counts of positive, negative and zero eigenvalues of the
/// Levi form on the complex tangent, after orientation normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeviSignature {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl LeviSignature {
    pub fn tuple(&self) -> (usize, usize, usize) {
        (self.n_plus, self.n_minus, self.n_zero)
    }

    pub fn is_spc(&self) -> bool {
        self.tuple() == (2, 0, 0)
    }
}

/// Levi data at a point: signature plus the orientation-normalized
/// eigenvalues, descending.
#[derive(Clone, Copy, Debug)]
pub struct LeviForm<T: Scalar> {
    pub signature: LeviSignature,
    pub eigenvalues: [T; 2],
}

/// The affine type invariant, ordered eps1 >= eps2 >= 0.
#[derive(Clone, Copy, Debug)]
pub struct TypeInvariant<T: Scalar> {
    pub eps1: T,
    pub eps2: T,
}

/// Second-order normal form of a graph in an adapted frame.
#[derive(Clone, Debug)]
pub struct NormalForm2<T: Scalar> {
    /// Hermitian part; positive definite on SPC surfaces after orientation.
    pub hermitian: Matrix2<Complex<T>>,
    /// Quadratic part, symmetric: F2 contains Re(z^T Q z).
    pub quadratic: Matrix2<Complex<T>>,
    /// Coefficients c with F2 containing 2 u Re(c^T z).
    pub u_cross: Vector2<Complex<T>>,
    /// Coefficient of u^2.
    pub u_square: T,
}

/// Threshold for eigenvalue sign classification, relative to the largest.
const SIGN_RTOL: f64 = 1e-8;

fn classify<T: Scalar>(eigs: [T; 2]) -> LeviSignature {
    let scale = eigs.iter().fold(T::one(), |a, e| if e.abs() > a { e.abs() } else { a });
    let tol = T::of(SIGN_RTOL) * scale;
    let mut sig = LeviSignature {
        n_plus: 0,
        n_minus: 0,
        n_zero: 0,
    };
    for e in eigs {
        if e > tol {
            sig.n_plus += 1;
        } else if e < -tol {
            sig.n_minus += 1;
        } else {
            sig.n_zero += 1;
        }
    }
    sig
}

/// Orthonormal basis of the complex tangent ker(g^T) together with the
/// transverse gauge d = conj(g)/|g|^2 (g^T d = 1).
#[allow(clippy::type_complexity)]
fn adapted_frame<T: Scalar>(
    grad: &Vector3<Complex<T>>,
) -> Result<(Matrix3x2<Complex<T>>, Vector3<Complex<T>>)> {
    let g2 = cmod2(grad[0]) + cmod2(grad[1]) + cmod2(grad[2]);
    if g2.sqrt() < T::of(1e-10) {
        return Err(Error::DegenerateGradient {
            norm: g2.sqrt().to_subset().unwrap_or(0.0),
        });
    }
    let d = grad.map(|z| z.conj()) / cr(g2);
    // project the standard basis onto ker(g^T) and Gram-Schmidt the two
    // largest results; deterministic because candidate order is fixed
    let mut cols: Vec<Vector3<Complex<T>>> = Vec::new();
    for k in 0..3 {
        let mut e: Vector3<Complex<T>> = Vector3::zeros();
        e[k] = cr(T::one());
        // e - conj(g) (g^T e)/|g|^2 lies in ker(g^T)
        let ge = grad[k];
        let mut v = e - grad.map(|z| z.conj()) * (ge / cr(g2));
        for c in &cols {
            let inner = c.dotc(&v); // conj(c)^T v
            v -= c * inner;
        }
        let n = (cmod2(v[0]) + cmod2(v[1]) + cmod2(v[2])).sqrt();
        if n > T::of(1e-6) {
            cols.push(v / cr(n));
        }
        if cols.len() == 2 {
            break;
        }
    }
    if cols.len() != 2 {
        return Err(Error::DegenerateGradient {
            norm: g2.sqrt().to_subset().unwrap_or(0.0),
        });
    }
    let z = Matrix3x2::from_columns(&cols);
    Ok((z, d))
}

/// Levi form of a surface at an on-surface point: the Hermitian Hessian
/// restricted to the complex tangent, orientation-normalized so that
/// n_plus >= n_minus (ties keep Im(dPhi/dw) >= 0, then the largest
/// eigenvalue positive). The model quadric at the origin comes out (1, 1).
pub fn levi_form<T: Scalar>(surface: &Surface<T>, p: &Point<T>) -> Result<LeviForm<T>> {
    let phi = surface.phi(p)?;
    if phi.abs() > T::of(1e-8) {
        return Err(Error::DomainViolation(format!(
            "levi point is off the surface: |phi| = {:e}",
            phi.to_subset().unwrap_or(f64::NAN)
        )));
    }
    let jet = surface.wirtinger_jet(p)?;
    let (z, _) = adapted_frame(&jet.grad)?;
    // L_ab = sum_jk H_jk (Z_a)_j conj((Z_b)_k)
    let mut l = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = Complex::new(T::zero(), T::zero());
            for j in 0..3 {
                for k in 0..3 {
                    acc += jet.hermitian[(j, k)] * z[(j, a)] * z[(k, b)].conj();
                }
            }
            l[a][b] = acc;
        }
    }
    let eigs = linalg::hermitian_eigs2(&l);
    let sig = classify(eigs);
    let flip = if sig.n_minus > sig.n_plus {
        true
    } else if sig.n_minus == sig.n_plus {
        let gw = jet.grad[2].im;
        if gw != T::zero() {
            gw < T::zero()
        } else {
            // fall back to the dominant eigenvalue's sign
            let dom = if eigs[0].abs() >= eigs[1].abs() { eigs[0] } else { eigs[1] };
            dom < T::zero()
        }
    } else {
        false
    };
    let eigs = if flip { [-eigs[1], -eigs[0]] } else { eigs };
    Ok(LeviForm {
        signature: classify(eigs),
        eigenvalues: eigs,
    })
}

/// Takagi factorization Q = U diag(sigma) U^T of a 2x2 complex symmetric
/// matrix, sigma descending. Solved through the real symmetric 4x4
/// eigenproblem [[A, B], [B, -A]] for Q = A + iB: an eigenpair
/// (sigma, (x; y)) yields Q conj(u) = sigma u with u = x + iy.
pub fn takagi<T: Scalar>(q: &Matrix2<Complex<T>>) -> (Matrix2<Complex<T>>, [T; 2]) {
    let asym = cmod(q[(0, 1)] - q[(1, 0)]);
    debug_assert!(
        asym <= T::of(1e-12) * (T::one() + cmod(q[(0, 0)])),
        "takagi input must be symmetric"
    );
    let mut m = SMatrix::<T, 4, 4>::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let z = q[(i, j)];
            m[(i, j)] = z.re;
            m[(i, j + 2)] = z.im;
            m[(i + 2, j)] = z.im;
            m[(i + 2, j + 2)] = -z.re;
        }
    }
    let eig = m.symmetric_eigen();
    // collect eigenpairs sorted by eigenvalue descending; take the two
    // non-negative ones whose complex lines are orthogonal
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let to_complex = |k: usize| -> Vector2<Complex<T>> {
        let col = eig.eigenvectors.column(k);
        Vector2::new(
            Complex::new(col[0], col[2]),
            Complex::new(col[1], col[3]),
        )
    };
    let mut sigma = [T::zero(); 2];
    let mut us: Vec<Vector2<Complex<T>>> = Vec::new();
    for &k in &order {
        if us.len() == 2 {
            break;
        }
        let u = to_complex(k);
        // complex-orthogonality against already chosen vectors: skip the
        // J-paired copy of the same complex line
        let independent = us.iter().all(|v| {
            let inner = v[0].conj() * u[0] + v[1].conj() * u[1];
            cmod(inner) < T::of(0.5)
        });
        if !independent {
            continue;
        }
        let n = (cmod2(u[0]) + cmod2(u[1])).sqrt();
        if n < T::of(1e-12) {
            continue;
        }
        sigma[us.len()] = eig.eigenvalues[k].max(T::zero());
        us.push(u / cr(n));
    }
    debug_assert_eq!(us.len(), 2);
    // deterministic sign: make the dominant component's real part positive
    for u in us.iter_mut() {
        let j = if cmod(u[0]) >= cmod(u[1]) { 0 } else { 1 };
        let c = u[j];
        if c.re < T::zero() || (c.re == T::zero() && c.im < T::zero()) {
            *u = -*u;
        }
    }
    let u = Matrix2::from_columns(&us);
    (u, sigma)
}

/// Second-order normal form of the surface graph at a point, in the adapted
/// frame. The jet must already be orientation-normalized (Levi positive).
fn normal_form2<T: Scalar>(jet: &WirtingerJet<T>) -> Result<NormalForm2<T>> {
    let (z, d) = adapted_frame(&jet.grad)?;
    // delta = Z zeta + t u with t = d * (i/2)
    let t: Vector3<Complex<T>> = d * ci(T::of(0.5));
    let mut h = Matrix2::zeros();
    let mut q = Matrix2::zeros();
    for a in 0..2 {
        for b in 0..2 {
            let mut hh = Complex::new(T::zero(), T::zero());
            let mut qq = Complex::new(T::zero(), T::zero());
            for j in 0..3 {
                for k in 0..3 {
                    hh += jet.hermitian[(j, k)] * z[(j, a)] * z[(k, b)].conj();
                    qq += jet.holomorphic[(j, k)] * z[(j, a)] * z[(k, b)];
                }
            }
            h[(a, b)] = hh;
            q[(a, b)] = qq;
        }
    }
    // u-cross coefficients: F2 += 2 u Re(c^T zeta),
    // c_a = (t^H H Z)_a + (Z^T Q t)_a
    let mut c = Vector2::zeros();
    for a in 0..2 {
        let mut acc = Complex::new(T::zero(), T::zero());
        for j in 0..3 {
            for k in 0..3 {
                acc += t[j].conj() * jet.hermitian[(j, k)] * z[(k, a)];
                acc += z[(j, a)] * jet.holomorphic[(j, k)] * t[k];
            }
        }
        c[a] = acc;
    }
    // u^2 coefficient: t^H H t + Re(t^T Q t)
    let mut e = Complex::new(T::zero(), T::zero());
    let mut eq = Complex::new(T::zero(), T::zero());
    for j in 0..3 {
        for k in 0..3 {
            e += t[j].conj() * jet.hermitian[(j, k)] * t[k];
            eq += t[j] * jet.holomorphic[(j, k)] * t[k];
        }
    }
    Ok(NormalForm2 {
        hermitian: h,
        quadratic: q,
        u_cross: c,
        u_square: e.re + eq.re,
    })
}

/// Solve the shear `zeta -> zeta + a u` that zeroes the u-cross terms:
/// H^T conj(a) + Q a = -c, realified into a 4x4 system and solved by
/// least-norm SVD. The system is singular whenever an eps hits 1/2 (which
/// is the whole catalog); any solution gives the same sheared u^2
/// coefficient, since the u^2 gradient at a solution is 2 Re((c + H^T
/// conj(a) + Q a)^T n) = 0 and the second-order term vanishes along the
/// eps = 1/2 null direction.
fn shear_coefficients<T: Scalar>(nf: &NormalForm2<T>) -> Result<Vector2<Complex<T>>> {
    let mut m = DMatrix::<T>::zeros(4, 4);
    let mut rhs = DVector::<T>::zeros(4);
    // unknowns (Re a1, Im a1, Re a2, Im a2); equations from the complex pair
    for row_c in 0..2 {
        for col_c in 0..2 {
            let hval = nf.hermitian[(col_c, row_c)]; // (H^T)_{row,col}
            let qval = nf.quadratic[(row_c, col_c)];
            // H^T conj(a): (x + iy) -> hval * (x - iy)
            m[(2 * row_c, 2 * col_c)] += hval.re;
            m[(2 * row_c, 2 * col_c + 1)] += hval.im;
            m[(2 * row_c + 1, 2 * col_c)] += hval.im;
            m[(2 * row_c + 1, 2 * col_c + 1)] += -hval.re;
            // Q a: (x + iy) -> qval * (x + iy)
            m[(2 * row_c, 2 * col_c)] += qval.re;
            m[(2 * row_c, 2 * col_c + 1)] += -qval.im;
            m[(2 * row_c + 1, 2 * col_c)] += qval.im;
            m[(2 * row_c + 1, 2 * col_c + 1)] += qval.re;
        }
        rhs[2 * row_c] = -nf.u_cross[row_c].re;
        rhs[2 * row_c + 1] = -nf.u_cross[row_c].im;
    }
    let (x, res) = linalg::lstsq(&m, &rhs);
    let scale = rhs.norm().max(T::one());
    if res / scale > T::of(1e-9) {
        return Err(Error::ResidualUSquare {
            coeff: (res / scale).to_subset().unwrap_or(f64::NAN),
        });
    }
    Ok(Vector2::new(
        Complex::new(x[0], x[1]),
        Complex::new(x[2], x[3]),
    ))
}

fn apply_shear<T: Scalar>(nf: &NormalForm2<T>, a: &Vector2<Complex<T>>) -> NormalForm2<T> {
    // cross' = c + H^T conj(a) + Q a; u2' = u2 + 2 Re(c^T a) + a^H H a + Re(a^T Q a)
    let mut cross = nf.u_cross;
    let mut ct_a = Complex::new(T::zero(), T::zero());
    let mut ah_h_a = Complex::new(T::zero(), T::zero());
    let mut at_q_a = Complex::new(T::zero(), T::zero());
    for i in 0..2 {
        ct_a += nf.u_cross[i] * a[i];
        for j in 0..2 {
            cross[i] += nf.hermitian[(j, i)] * a[j].conj() + nf.quadratic[(i, j)] * a[j];
            ah_h_a += a[i].conj() * nf.hermitian[(i, j)] * a[j];
            at_q_a += a[i] * nf.quadratic[(i, j)] * a[j];
        }
    }
    NormalForm2 {
        hermitian: nf.hermitian,
        quadratic: nf.quadratic,
        u_cross: cross,
        u_square: nf.u_square + T::of(2.0) * ct_a.re + ah_h_a.re + at_q_a.re,
    }
}

/// Upper-triangular factor R with H = R^H R (positive diagonal); the
/// deterministic congruence taking H to the identity.
fn cholesky_upper<T: Scalar>(h: &Matrix2<Complex<T>>) -> Result<Matrix2<Complex<T>>> {
    let h11 = h[(0, 0)].re;
    if h11 <= T::zero() {
        return Err(Error::NotSpc {
            n_plus: 0,
            n_minus: 0,
            n_zero: 0,
        });
    }
    let r11 = h11.sqrt();
    let r12 = h[(0, 1)] / cr(r11);
    let s = h[(1, 1)].re - cmod2(r12);
    if s <= T::zero() {
        return Err(Error::NotSpc {
            n_plus: 1,
            n_minus: 0,
            n_zero: 0,
        });
    }
    let mut r = Matrix2::zeros();
    r[(0, 0)] = cr(r11);
    r[(0, 1)] = r12;
    r[(1, 1)] = cr(s.sqrt());
    Ok(r)
}

/// Outcome of the type pipeline with the intermediate data kept for reports.
#[derive(Clone, Debug)]
pub struct TypeComputation<T: Scalar> {
    pub invariant: TypeInvariant<T>,
    pub normal_form: NormalForm2<T>,
    pub sheared_u_square: T,
    pub levi: LeviForm<T>,
}

/// The (eps1, eps2) invariant of an SPC surface at a point (defaults to the
/// base point through [`canonical_type`]).
pub fn canonical_type_at<T: Scalar>(
    surface: &Surface<T>,
    p: &Point<T>,
) -> Result<TypeComputation<T>> {
    let levi = levi_form(surface, p)?;
    if !levi.signature.is_spc() {
        return Err(Error::NotSpc {
            n_plus: levi.signature.n_plus,
            n_minus: levi.signature.n_minus,
            n_zero: levi.signature.n_zero,
        });
    }
    let jet = surface.wirtinger_jet(p)?;
    // orientation: positive Levi means the graph side with Im(dPhi/dw) > 0;
    // flip the defining function if needed
    let (z, _) = adapted_frame(&jet.grad)?;
    let mut l00 = Complex::new(T::zero(), T::zero());
    for j in 0..3 {
        for k in 0..3 {
            l00 += jet.hermitian[(j, k)] * z[(j, 0)] * z[(k, 0)].conj();
        }
    }
    let jet = if l00.re < T::zero() { jet.negated() } else { jet };

    let nf = normal_form2(&jet)?;
    let a = shear_coefficients(&nf)?;
    let sheared = apply_shear(&nf, &a);
    let cross_left = (cmod2(sheared.u_cross[0]) + cmod2(sheared.u_cross[1])).sqrt();
    if cross_left > T::of(1e-9) {
        return Err(Error::ResidualUSquare {
            coeff: cross_left.to_subset().unwrap_or(f64::NAN),
        });
    }
    // The sheared u^2 coefficient is reported, never dropped. No affine
    // move can remove it once the cross terms vanish (the u^2 gradient is
    // zero on the solution set), and it sits at weight four in the graded
    // canonical equation, outside the weight-two part that carries the
    // invariant. The pairing surface 2.10 keeps -1/8 here at its base.
    // congruence H -> I, then Takagi on the transformed quadratic part
    let r = cholesky_upper(&sheared.hermitian)?;
    let rinv = r
        .try_inverse()
        .ok_or_else(|| Error::SingularTransform("triangular factor".into()))?;
    let q2 = rinv.transpose() * sheared.quadratic * rinv;
    let (_, sigma) = takagi(&q2);
    let half = T::of(0.5);
    Ok(TypeComputation {
        invariant: TypeInvariant {
            eps1: sigma[0] * half,
            eps2: sigma[1] * half,
        },
        normal_form: nf,
        sheared_u_square: sheared.u_square,
        levi,
    })
}

/// Type invariant at the surface's own base point.
pub fn canonical_type<T: Scalar>(surface: &Surface<T>) -> Result<TypeComputation<T>> {
    canonical_type_at(surface, &surface.base_point())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use crate::scalar::cx;
    use rand::Rng;

    #[test]
    fn model_quadric_levi_is_one_one() {
        let s = Surface::<f64>::ModelQuadric;
        let l = levi_form(&s, &s.base_point()).unwrap();
        assert_eq!(l.signature.tuple(), (2, 0, 0));
        assert!((l.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((l.eigenvalues[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn levi_sign_invariance() {
        // flipping the defining function leaves the reported signature alone;
        // exercised through the cone, whose stored phi has negative z-block
        let s = Surface::<f64>::Cone;
        let l = levi_form(&s, &s.base_point()).unwrap();
        assert_eq!(l.signature.tuple(), (2, 0, 0));
    }

    #[test]
    fn takagi_simple_cases() {
        let z = Matrix2::<Complex<f64>>::zeros();
        let (_, sigma) = takagi(&z);
        assert_eq!(sigma, [0.0f64, 0.0]);

        let mut d = Matrix2::<Complex<f64>>::zeros();
        d[(0, 0)] = cx(1.0, 0.0);
        let (u, sigma) = takagi(&d);
        assert!((sigma[0] - 1.0).abs() < 1e-14 && sigma[1].abs() < 1e-14);
        let rec = u * Matrix2::from_diagonal(&Vector2::new(cx(sigma[0], 0.0), cx(sigma[1], 0.0))) * u.transpose();
        assert!(cmod(rec[(0, 0)] - d[(0, 0)]) < 1e-12);
    }

    #[test]
    fn takagi_reconstructs_random_symmetric() {
        for k in 0..200 {
            let mut r = rng::stream(21, k, "takagi");
            let mut q = Matrix2::zeros();
            for (i, j) in [(0, 0), (0, 1), (1, 1)] {
                let z = cx(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
                q[(i, j)] = z;
                q[(j, i)] = z;
            }
            let (u, sigma) = takagi(&q);
            // unitary
            let id = u.adjoint() * u;
            for i in 0..2 {
                for j in 0..2 {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!(cmod(id[(i, j)] - cx(want, 0.0)) < 1e-10, "U not unitary");
                }
            }
            // reconstruction
            let rec = u * Matrix2::from_diagonal(&Vector2::new(cx(sigma[0], 0.0), cx(sigma[1], 0.0))) * u.transpose();
            let scale = q.iter().map(|z| cmod(*z)).fold(1.0, f64::max);
            for i in 0..2 {
                for j in 0..2 {
                    assert!(
                        cmod(rec[(i, j)] - q[(i, j)]) <= 1e-12 * scale.max(1.0) * 10.0,
                        "reconstruction off: {} vs {}",
                        rec[(i, j)],
                        q[(i, j)]
                    );
                }
            }
            assert!(sigma[0] >= sigma[1] && sigma[1] >= 0.0);
            // sigma equals the singular values from the realified SVD oracle
            let dm = nalgebra::DMatrix::from_fn(2, 2, |i, j| q[(i, j)]);
            let sv = crate::linalg::singular_values(&crate::linalg::realify(&dm));
            assert!((sigma[0] - sv[0]).abs() < 1e-10);
            assert!((sigma[1] - sv[2]).abs() < 1e-10);
        }
    }

    #[test]
    fn takagi_invariant_under_unitary_congruence() {
        for k in 0..50 {
            let mut r = rng::stream(22, k, "takagi-u");
            let mut q = Matrix2::zeros();
            for (i, j) in [(0, 0), (0, 1), (1, 1)] {
                let z = cx(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
                q[(i, j)] = z;
                q[(j, i)] = z;
            }
            // random unitary V = diag(e^{ia}, e^{ib}) * rotation
            let (a, b, t): (f64, f64, f64) = (
                r.gen_range(-3.0..3.0),
                r.gen_range(-3.0..3.0),
                r.gen_range(-3.0..3.0),
            );
            let mut v = Matrix2::<Complex<f64>>::zeros();
            v[(0, 0)] = cx::<f64>(t.cos(), 0.0) * cx::<f64>(a.cos(), a.sin());
            v[(0, 1)] = cx::<f64>(-t.sin(), 0.0) * cx::<f64>(a.cos(), a.sin());
            v[(1, 0)] = cx::<f64>(t.sin(), 0.0) * cx::<f64>(b.cos(), b.sin());
            v[(1, 1)] = cx::<f64>(t.cos(), 0.0) * cx::<f64>(b.cos(), b.sin());
            let qv = v * q * v.transpose();
            let (_, s1) = takagi(&q);
            let (_, s2) = takagi(&qv);
            assert!((s1[0] - s2[0]).abs() < 1e-10 && (s1[1] - s2[1]).abs() < 1e-10);
        }
    }

    #[test]
    fn model_quadric_type_is_half_zero() {
        let tc = canonical_type(&Surface::<f64>::ModelQuadric).unwrap();
        assert!((tc.invariant.eps1 - 0.5).abs() < 1e-12);
        assert!(tc.invariant.eps2.abs() < 1e-12);
    }

    #[test]
    fn synthetic_ball_type_is_zero_zero() {
        // v = |z1|^2 + |z2|^2 has no harmonic quadratic part; realize it as
        // the 5.21-free cubic pipeline input via a direct jet check on the
        // power cone at t = 1... simplest: use the exp family with the
        // harmonic part absent is not available, so test through 2.9's
        // machinery is skipped; instead check the pure-Hermitian jet path.
        let s = Surface::<f64>::Mapped {
            inner: Box::new(Surface::ModelQuadric),
            map: crate::surfaces::AffineMap::identity(),
        };
        // subtracting the quadratic part by hand: synthesize a jet and run
        // the frame steps
        let jet = s.wirtinger_jet(&s.base_point()).unwrap();
        let mut nf = super::normal_form2(&jet).unwrap();
        nf.quadratic = Matrix2::zeros();
        let r = super::cholesky_upper(&nf.hermitian).unwrap();
        let rinv = r.try_inverse().unwrap();
        let q2 = rinv.transpose() * nf.quadratic * rinv;
        let (_, sigma) = takagi(&q2);
        assert!(sigma[0].abs() < 1e-14 && sigma[1].abs() < 1e-14);
    }

    #[test]
    fn cubic_section_type_follows_hand_computation() {
        // second order of x1^2/(1-x2) at 0 is x1^2: H = diag(1/2, 1) + z2
        // block, Q = diag(1/2, 0); after H -> I the quadratic part is
        // diag(1, 0), so the invariant is (1/2, 0).
        let tc = canonical_type(&Surface::<f64>::CubicSection { k: 1.0 }).unwrap();
        assert!((tc.invariant.eps1 - 0.5).abs() < 1e-12);
        assert!(tc.invariant.eps2.abs() < 1e-12);
    }

    #[test]
    fn cone_type_off_origin_normalization() {
        // hand-derived: H' = diag(1, 1/4), Q' = diag(0, -1/4), nonzero
        // u-cross killed by the shear, u^2 cancels exactly, sigma = (1, 0)
        let tc = canonical_type(&Surface::<f64>::Cone).unwrap();
        assert!((tc.invariant.eps1 - 0.5).abs() < 1e-12);
        assert!(tc.invariant.eps2.abs() < 1e-12);
        assert!(tc.sheared_u_square.abs() < 1e-12);
    }

    #[test]
    fn pairing_type_off_origin_normalization() {
        // 2.10 at alpha = -1: the invariant is (1/2, 0) and the sheared u^2
        // coefficient settles at -1/8, a genuine weight-four leftover
        let tc = canonical_type(&Surface::<f64>::Pairing { alpha: -1.0 }).unwrap();
        assert!((tc.invariant.eps1 - 0.5).abs() < 1e-10, "eps1 = {}", tc.invariant.eps1);
        assert!(tc.invariant.eps2.abs() < 1e-10, "eps2 = {}", tc.invariant.eps2);
        assert!((tc.sheared_u_square + 0.125).abs() < 1e-10, "u^2 = {}", tc.sheared_u_square);
    }

    #[test]
    fn type_invariant_under_w_rescale() {
        // w -> r w leaves (eps1, eps2) alone
        for rscale in [0.5, 2.0, 3.7] {
            let map = crate::surfaces::AffineMap::<f64>::from_rows(
                [
                    [(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
                    [(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)],
                    [(0.0, 0.0), (0.0, 0.0), (rscale, 0.0)],
                ],
                [(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
            );
            let s = Surface::Mapped {
                inner: Box::new(Surface::<f64>::ModelQuadric),
                map,
            };
            let tc = canonical_type(&s).unwrap();
            assert!((tc.invariant.eps1 - 0.5).abs() < 1e-10);
            assert!(tc.invariant.eps2.abs() < 1e-10);
        }
    }

    #[test]
    fn family_521_type_formula() {
        // eps2(C) = |1 + 4C| / (2 (1 - 4C)) for C < 1/4, eps1 = 1/2
        for c in [-2.0, -1.0, -0.5, -0.25, -0.1] {
            let s = Surface::<f64>::CubicFamily521 { c };
            let tc = canonical_type(&s).unwrap();
            let want = (1.0 + 4.0 * c).abs() / (2.0 * (1.0 - 4.0 * c));
            assert!(
                (tc.invariant.eps1 - 0.5).abs() < 1e-8,
                "C={c}: eps1 = {}",
                tc.invariant.eps1
            );
            assert!(
                (tc.invariant.eps2 - want).abs() < 1e-8,
                "C={c}: eps2 = {} want {want}",
                tc.invariant.eps2
            );
        }
    }

    #[test]
    fn cubic_family_grouping() {
        // the catalog's type formula for the cubic family reads
        // (A-1)/(2(A+1)) (absolute value), not ((A-1)/2)(A+1)
        for a in [0.0, 2.0, 3.0] {
            let s = Surface::<f64>::CubicFamilyA { a };
            let tc = canonical_type(&s).unwrap();
            let want = ((a - 1.0) / (2.0 * (a + 1.0))).abs();
            assert!((tc.invariant.eps1 - 0.5).abs() < 1e-8, "A={a}");
            assert!(
                (tc.invariant.eps2 - want).abs() < 1e-8,
                "A={a}: eps2 = {} want {want}",
                tc.invariant.eps2
            );
        }
    }
}
