//! Affine vector fields on C^3 as 4x4 complex matrices with zero last row,
//! and real-linear spans of such fields.
//!
//! A field `(a1 z1 + a2 z2 + a3 w + p) d/dz1 + (b1 z1 + ... + s) d/dz2 +
//! (c1 z1 + c2 z2 + c3 w + q) d/dw` is stored as
//!
//! ```text
//!     [ a1 a2 a3 p ]
//!     [ b1 b2 b3 s ]
//!     [ c1 c2 c3 q ]
//!     [ 0  0  0  0 ]
//! ```
//!
//! and the Lie bracket is the matrix commutator `XY - YX`. Spans are always
//! over the reals, so rank and least-squares questions run through the
//! 24-real-dimensional vectorization of the 12 potentially nonzero entries.

use nalgebra::{DMatrix, DVector, Matrix3, Matrix4, Vector3};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{cfinite, Scalar};

/// Real dimension of the vectorized field space.
pub const VEC_DIM: usize = 24;

/// An affine vector field; the zero last row is a construction invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineField<T: Scalar> {
    m: Matrix4<Complex<T>>,
}

impl<T: Scalar> AffineField<T> {
    pub fn zero() -> Self {
        Self { m: Matrix4::zeros() }
    }

    /// Wrap a matrix, enforcing the zero last row and finiteness.
    pub fn from_matrix(m: Matrix4<Complex<T>>) -> Result<Self> {
        for j in 0..4 {
            let z = m[(3, j)];
            if z.re != T::zero() || z.im != T::zero() {
                return Err(Error::InvalidField(format!("last row entry {} nonzero", j + 1)));
            }
        }
        if m.iter().any(|z| !cfinite(*z)) {
            return Err(Error::InvalidField("non-finite entry".into()));
        }
        Ok(Self { m })
    }

    /// Build from a sparse list of (row, col, value) with 0-based indices
    /// into the top three rows.
    pub fn from_entries(entries: &[(usize, usize, Complex<T>)]) -> Self {
        let mut m = Matrix4::zeros();
        for &(r, c, v) in entries {
            debug_assert!(r < 3 && c < 4);
            m[(r, c)] = v;
        }
        Self { m }
    }

    pub fn matrix(&self) -> &Matrix4<Complex<T>> {
        &self.m
    }

    pub fn entry(&self, r: usize, c: usize) -> Complex<T> {
        self.m[(r, c)]
    }

    /// Top-left 3x3 block (the a/b/c rows).
    pub fn linear_part(&self) -> Matrix3<Complex<T>> {
        Matrix3::from_fn(|i, j| self.m[(i, j)])
    }

    /// Fourth column (p, s, q).
    pub fn translation(&self) -> Vector3<Complex<T>> {
        Vector3::new(self.m[(0, 3)], self.m[(1, 3)], self.m[(2, 3)])
    }

    /// Matrix commutator `XY - YX`; the zero last row survives exactly.
    pub fn bracket(&self, rhs: &Self) -> Self {
        Self {
            m: self.m * rhs.m - rhs.m * self.m,
        }
    }

    /// Field value at a point: `linear_part * (z1, z2, w)^T + translation`.
    pub fn evaluate_at(&self, p: Vector3<Complex<T>>) -> Vector3<Complex<T>> {
        self.linear_part() * p + self.translation()
    }

    /// Real/imaginary parts of the 12 potentially nonzero entries, row-major.
    pub fn vectorize(&self) -> [T; VEC_DIM] {
        let mut out = [T::zero(); VEC_DIM];
        for r in 0..3 {
            for c in 0..4 {
                let z = self.m[(r, c)];
                out[2 * (4 * r + c)] = z.re;
                out[2 * (4 * r + c) + 1] = z.im;
            }
        }
        out
    }

    /// Frobenius norm of the vectorization.
    pub fn norm(&self) -> T {
        self.vectorize().iter().map(|x| *x * *x).fold(T::zero(), |a, b| a + b).sqrt()
    }

    pub fn scaled(&self, t: T) -> Self {
        Self {
            m: self.m.map(|z| z * Complex::new(t, T::zero())),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self { m: self.m + rhs.m }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self { m: self.m - rhs.m }
    }

    /// `C^-1 * self * C` for an already affine-normalized pair.
    fn conjugated(&self, c: &Matrix4<Complex<T>>, cinv: &Matrix4<Complex<T>>) -> Self {
        let mut m = cinv * self.m * c;
        for j in 0..4 {
            m[(3, j)] = Complex::new(T::zero(), T::zero());
        }
        Self { m }
    }
}

/// Least-squares span coefficients of a field against a basis.
#[derive(Clone, Debug)]
pub struct SpanCoefficients<T: Scalar> {
    /// Real coefficients, one per basis field.
    pub lambda: Vec<T>,
    /// `|X - sum lambda_k E_k|` normalized by `max(1, |X|)`.
    pub residual: T,
}

/// Ordered, real-linearly-independent list of affine fields.
#[derive(Clone, Debug)]
pub struct FieldBasis<T: Scalar> {
    fields: Vec<AffineField<T>>,
    label: String,
    template_translations: bool,
}

/// The five translation columns of the template basis: p=1, p=i, s=1, s=i, q=1.
fn is_template_translations<T: Scalar>(fields: &[AffineField<T>]) -> bool {
    if fields.len() != 5 {
        return false;
    }
    let want: [(usize, Complex<T>); 5] = [
        (0, Complex::new(T::one(), T::zero())),
        (0, Complex::new(T::zero(), T::one())),
        (1, Complex::new(T::one(), T::zero())),
        (1, Complex::new(T::zero(), T::one())),
        (2, Complex::new(T::one(), T::zero())),
    ];
    fields.iter().zip(want.iter()).all(|(f, (slot, val))| {
        let t = f.translation();
        (0..3).all(|k| {
            let z = t[k];
            if k == *slot {
                z == *val
            } else {
                z.re == T::zero() && z.im == T::zero()
            }
        })
    })
}

impl<T: Scalar> FieldBasis<T> {
    /// Validates real-linear independence (rank k at the 1e-8 relative
    /// threshold) before accepting the list.
    pub fn new(label: impl Into<String>, fields: Vec<AffineField<T>>) -> Result<Self> {
        let k = fields.len();
        if k == 0 {
            return Err(Error::InvalidField("empty basis".into()));
        }
        let m = vectorized(&fields);
        if linalg::rank(&m) != k {
            return Err(Error::InvalidField(format!(
                "fields of `{}` are not real-linearly independent",
                label.into()
            )));
        }
        let template_translations = is_template_translations(&fields);
        Ok(Self {
            fields,
            label: label.into(),
            template_translations,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn fields(&self) -> &[AffineField<T>] {
        &self.fields
    }

    pub fn field(&self, k: usize) -> &AffineField<T> {
        &self.fields[k]
    }

    /// First `n` fields as a sub-basis.
    pub fn truncated(&self, n: usize, label: impl Into<String>) -> Result<Self> {
        Self::new(label, self.fields[..n].to_vec())
    }

    /// Real recombination `E_target += coeff * E_source`, preserving the span.
    pub fn recombined(&self, target: usize, source: usize, coeff: T) -> Result<Self> {
        let mut fields = self.fields.clone();
        fields[target] = fields[target].add(&fields[source].scaled(coeff));
        Self::new(self.label.clone(), fields)
    }

    /// Whether the translation columns have the template shape
    /// (1,0,0), (i,0,0), (0,1,0), (0,i,0), (0,0,1).
    pub fn has_template_translations(&self) -> bool {
        self.template_translations
    }

    fn span_matrix(&self) -> DMatrix<T> {
        vectorized(&self.fields)
    }

    /// Least squares of `x` against the real span. Errors when the span Gram
    /// matrix condition number exceeds 1e12.
    pub fn decompose(&self, x: &AffineField<T>) -> Result<SpanCoefficients<T>> {
        let a = self.span_matrix();
        let sv = linalg::singular_values(&a);
        let smax = sv[0];
        let smin = *sv.last().unwrap();
        let gram_cond = if smin == T::zero() {
            T::of(f64::INFINITY)
        } else {
            (smax / smin) * (smax / smin)
        };
        let cond_ok = gram_cond <= T::of(linalg::COND_LIMIT);
        if !cond_ok {
            return Err(Error::IllConditionedBasis {
                cond: gram_cond.to_subset().unwrap_or(f64::INFINITY),
            });
        }
        let b = DVector::from_row_slice(&x.vectorize());
        let (lambda, res) = linalg::lstsq(&a, &b);
        let scale = {
            let n = b.norm();
            if n > T::one() {
                n
            } else {
                T::one()
            }
        };
        Ok(SpanCoefficients {
            lambda: lambda.iter().copied().collect(),
            residual: res / scale,
        })
    }

    /// Fast span coefficients read off the translation entries; only valid
    /// for template-shaped bases and only meaningful when the least-squares
    /// residual is small.
    pub fn translation_coefficients(&self, x: &AffineField<T>) -> Option<Vec<T>> {
        if !self.template_translations {
            return None;
        }
        let t = x.translation();
        Some(vec![t[0].re, t[0].im, t[1].re, t[1].im, t[2].re])
    }

    /// Max over pairs i < j of the residual of `[E_i, E_j]` against the span.
    pub fn closure_residual(&self) -> Result<T> {
        let mut worst = T::zero();
        for i in 0..self.fields.len() {
            for j in (i + 1)..self.fields.len() {
                let br = self.fields[i].bracket(&self.fields[j]);
                let r = self.decompose(&br)?.residual;
                if r > worst {
                    worst = r;
                }
            }
        }
        Ok(worst)
    }

    /// Map every field through `C^-1 E C`. `C` must be of affine shape with
    /// last row (0,0,0,c); the corner is normalized away since conjugation
    /// is scale-invariant.
    pub fn conjugate(&self, c: &Matrix4<Complex<T>>) -> Result<Self> {
        let (cn, cinv) = linalg::affine_inverse(c)?;
        let fields = self.fields.iter().map(|f| f.conjugated(&cn, &cinv)).collect();
        Self::new(format!("{}*", self.label), fields)
    }

    /// Max over fields of `self` of the span residual against `other`;
    /// small values certify real-span containment.
    pub fn is_subspace_of(&self, other: &Self) -> Result<T> {
        let mut worst = T::zero();
        for f in &self.fields {
            let r = other.decompose(f)?.residual;
            if r > worst {
                worst = r;
            }
        }
        Ok(worst)
    }

    /// Symmetric span distance: max of the two containment residuals.
    pub fn span_distance(&self, other: &Self) -> Result<T> {
        let a = self.is_subspace_of(other)?;
        let b = other.is_subspace_of(self)?;
        Ok(if a > b { a } else { b })
    }

    /// Entrywise distance to another basis, normalized by max(1, scale).
    pub fn entrywise_distance(&self, other: &Self) -> T {
        let mut num = T::zero();
        let mut scale = T::one();
        for (a, b) in self.fields.iter().zip(other.fields.iter()) {
            let d = a.sub(b).norm();
            if d > num {
                num = d;
            }
            let n = a.norm();
            if n > scale {
                scale = n;
            }
        }
        num / scale
    }

    /// Rank of the vectorized span (real dimension of the algebra).
    pub fn span_rank(&self) -> usize {
        linalg::rank(&self.span_matrix())
    }
}

fn vectorized<T: Scalar>(fields: &[AffineField<T>]) -> DMatrix<T> {
    let k = fields.len();
    let mut m = DMatrix::zeros(VEC_DIM, k);
    for (j, f) in fields.iter().enumerate() {
        for (i, v) in f.vectorize().iter().enumerate() {
            m[(i, j)] = *v;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{instantiate, Family, Params};
    use crate::rng;
    use crate::scalar::cx;
    use rand::Rng;

    fn random_field(seed: u64, idx: u64) -> AffineField<f64> {
        let mut r = rng::stream(seed, idx, "field");
        let mut m = Matrix4::zeros();
        for i in 0..3 {
            for j in 0..4 {
                m[(i, j)] = cx(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
            }
        }
        AffineField::from_matrix(m).unwrap()
    }

    #[test]
    fn bracket_antisymmetry_exact() {
        for k in 0..20 {
            let x = random_field(1, k);
            let y = random_field(2, k);
            let ab = x.bracket(&y);
            let ba = y.bracket(&x);
            assert_eq!(ab.add(&ba).norm(), 0.0);
        }
    }

    #[test]
    fn jacobi_identity() {
        for k in 0..20 {
            let x = random_field(3, k);
            let y = random_field(4, k);
            let z = random_field(5, k);
            let j = x
                .bracket(&y.bracket(&z))
                .add(&y.bracket(&z.bracket(&x)))
                .add(&z.bracket(&x.bracket(&y)));
            let scale = x.norm() * y.norm() * z.norm();
            assert!(j.norm() <= 1e-12 * scale.max(1.0), "jacobi residual {}", j.norm());
        }
    }

    #[test]
    fn vectorize_linear_and_basis_cases() {
        let zero = AffineField::<f64>::zero();
        assert!(zero.vectorize().iter().all(|x| *x == 0.0));

        let a216 = instantiate(Family::A2_16, &Params::<f64>::none()).unwrap();
        // E5 has a single nonzero coordinate: entry (3,4) real part.
        let v5 = a216.field(4).vectorize();
        let nz: Vec<usize> = v5.iter().enumerate().filter(|(_, x)| **x != 0.0).map(|(i, _)| i).collect();
        assert_eq!(nz, vec![2 * (4 * 2 + 3)]);
        assert_eq!(v5[2 * (4 * 2 + 3)], 1.0);

        for k in 0..10 {
            let x = random_field(6, k);
            let y = random_field(7, k);
            let mut r = rng::stream(8, k, "ab");
            let (a, b) = (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
            let lhs = x.scaled(a).add(&y.scaled(b)).vectorize();
            let xv = x.vectorize();
            let yv = y.vectorize();
            for i in 0..VEC_DIM {
                assert!((lhs[i] - (a * xv[i] + b * yv[i])).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bracket_216_examples() {
        let a = instantiate(Family::A2_16, &Params::<f64>::none()).unwrap();
        let e3 = a.field(2);
        let e4 = a.field(3);
        let e5 = a.field(4);
        // [E3, E4] = -4 E5: only product entry (3,4): 2i*i - 2*1 = -4.
        let br = e3.bracket(e4);
        assert_eq!(br.sub(&e5.scaled(-4.0)).norm(), 0.0);
        // [E2, E5] = 0.
        let e2 = a.field(1);
        assert_eq!(e2.bracket(e5).norm(), 0.0);
        // bracket(X, X) = 0 exactly.
        assert_eq!(e3.bracket(e3).norm(), 0.0);
    }

    #[test]
    fn decompose_members_and_brackets() {
        let a = instantiate(Family::A2_16, &Params::<f64>::none()).unwrap();
        let five = a.truncated(5, "2.16|5").unwrap();
        // basis member
        let c = five.decompose(five.field(1)).unwrap();
        assert!(c.residual < 1e-14);
        let want = [0.0, 1.0, 0.0, 0.0, 0.0];
        for (l, w) in c.lambda.iter().zip(want.iter()) {
            assert!((l - w).abs() < 1e-12);
        }
        // [E3, E4] decomposes as -4 E5
        let br = a.field(2).bracket(a.field(3));
        let c = five.decompose(&br).unwrap();
        assert!(c.residual < 1e-14);
        let want = [0.0, 0.0, 0.0, 0.0, -4.0];
        for (l, w) in c.lambda.iter().zip(want.iter()) {
            assert!((l - w).abs() < 1e-12);
        }
        // fast path agrees with least squares when the residual is tiny
        let fast = five.translation_coefficients(&br).unwrap();
        for (f, l) in fast.iter().zip(c.lambda.iter()) {
            assert!((f - l).abs() < 1e-10);
        }
    }

    #[test]
    fn decompose_orthogonal_perturbation() {
        let a = instantiate(Family::A2_16, &Params::<f64>::none()).unwrap();
        let five = a.truncated(5, "2.16|5").unwrap();
        // E5 + 1e-3 in entry (1,3): the perturbation slot is disjoint from
        // every generator slot, so the residual is the perturbation norm.
        let mut x = five.field(4).clone();
        x = x.add(&AffineField::from_entries(&[(0, 2, cx(1e-3, 0.0))]));
        let c = five.decompose(&x).unwrap();
        assert!((c.residual - 1e-3).abs() < 1e-9, "residual {}", c.residual);
    }

    #[test]
    fn closure_residual_cases() {
        let a = instantiate(Family::A2_16, &Params::<f64>::none()).unwrap();
        assert!(a.closure_residual().unwrap() <= 1e-12);

        let p: Params<f64> = Params::from_pairs(&[("m1", 1.0), ("m2", 1.0), ("t16", 0.0)]);
        let f31 = instantiate(Family::A3_1, &p).unwrap();
        assert!(f31.closure_residual().unwrap() <= 1e-10);

        // E1 and E5 of 2.16 plus three seeded random fields: the brackets of
        // the random fields land outside the span with probability one.
        let mut fields = vec![a.field(0).clone(), a.field(4).clone()];
        for k in 0..3 {
            fields.push(random_field(11, k));
        }
        let b = FieldBasis::new("mixed", fields).unwrap();
        assert!(b.closure_residual().unwrap() > 1e-6);
    }

    #[test]
    fn conjugation_identity_and_bracket_homomorphism() {
        let p: Params<f64> = Params::from_pairs(&[("m1", 1.0), ("m2", 1.0), ("t16", 0.5)]);
        let b = instantiate(Family::A3_1, &p).unwrap();
        let conj = b.conjugate(&Matrix4::identity()).unwrap();
        assert!(b.entrywise_distance(&conj) == 0.0);

        // random well-conditioned affine C: closure residual is invariant
        let mut r = rng::stream(13, 0, "conj");
        let mut c = Matrix4::identity();
        for i in 0..3 {
            for j in 0..4 {
                c[(i, j)] += cx(0.3 * r.gen_range(-1.0..1.0), 0.3 * r.gen_range(-1.0..1.0));
            }
        }
        let bc = b.conjugate(&c).unwrap();
        let r0 = b.closure_residual().unwrap();
        let r1 = bc.closure_residual().unwrap();
        assert!((r0 - r1).abs() < 1e-9);

        // homomorphism: C^-1 [X, Y] C = [C^-1 X C, C^-1 Y C]
        let x = random_field(14, 0);
        let y = random_field(14, 1);
        let pair = FieldBasis::new("xy", vec![x.clone(), y.clone()]).unwrap();
        let pc = pair.conjugate(&c).unwrap();
        let lhs = FieldBasis::new("br", vec![x.bracket(&y)]).unwrap().conjugate(&c).unwrap();
        let rhs = pc.field(0).bracket(pc.field(1));
        let scale = lhs.field(0).norm().max(1.0);
        assert!(lhs.field(0).sub(&rhs).norm() / scale < 1e-10);
    }

    #[test]
    fn subspace_examples() {
        let a = instantiate(Family::A2_16, &Params::<f64>::none()).unwrap();
        let five = a.truncated(5, "2.16|5").unwrap();
        assert!(five.is_subspace_of(&a).unwrap() < 1e-14);

        let p: Params<f64> = Params::from_pairs(&[("m1", 1.0), ("m2", 2.0), ("t16", 3.0)]);
        let f31 = instantiate(Family::A3_1, &p).unwrap();
        assert!(f31.is_subspace_of(&a).unwrap() < 1e-10);

        // E6 is diagonal and orthogonal in entries to all five translation
        // generators, so its normalized residual is 1.
        let r = a.is_subspace_of(&five).unwrap();
        assert!(r > 1e-2);
        let e6res = five.decompose(a.field(5)).unwrap().residual;
        assert!((e6res - 1.0).abs() < 1e-12);
    }

    #[test]
    fn evaluate_at_examples() {
        let a = instantiate(Family::A2_16, &Params::<f64>::none()).unwrap();
        let origin = Vector3::new(cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0));
        let v = a.field(4).evaluate_at(origin);
        assert_eq!((v[0], v[1], v[2]), (cx(0.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0)));
        let v = a.field(0).evaluate_at(origin);
        assert_eq!((v[0], v[1], v[2]), (cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)));
        // row 3 of E1 is (4i, 0, 0, 0)
        let p = Vector3::new(cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0));
        let v = a.field(0).evaluate_at(p);
        assert_eq!((v[0], v[1], v[2]), (cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 4.0)));
    }

    #[test]
    fn f32_smoke() {
        let x = AffineField::<f32>::from_entries(&[(0, 3, cx(1.0, 0.0)), (2, 0, cx(0.0, 4.0))]);
        let y = AffineField::<f32>::from_entries(&[(0, 3, cx(0.0, 1.0))]);
        let b = x.bracket(&y);
        assert!(b.add(&y.bracket(&x)).norm() == 0.0);
    }
}
