//! Entrywise transcriptions of the catalog bases. Entries are written as
//! (row, col, value) with 0-based indices; the tables in comments use the
//! catalog's 1-based (row, col) convention.

use num_complex::Complex;

use super::{Family, Params};
use crate::error::Result;
use crate::field::AffineField;
use crate::scalar::{ci, cr, cx, Scalar};

type F<T> = AffineField<T>;
type C<T> = Complex<T>;

fn fld<T: Scalar>(entries: &[(usize, usize, C<T>)]) -> F<T> {
    AffineField::from_entries(entries)
}

/// Standard tail shared by most five-dimensional bases:
/// E3 = {(3,2)=2i, (2,4)=1}, E4 = {(3,2)=2, (2,4)=i}, E5 = {(3,4)=1}.
fn e3_std<T: Scalar>() -> F<T> {
    fld(&[(2, 1, cx(0.0, 2.0)), (1, 3, cx(1.0, 0.0))])
}
fn e4_std<T: Scalar>() -> F<T> {
    fld(&[(2, 1, cx(2.0, 0.0)), (1, 3, cx(0.0, 1.0))])
}
fn e5_std<T: Scalar>() -> F<T> {
    fld(&[(2, 3, cx(1.0, 0.0))])
}

pub(super) fn build<T: Scalar>(family: Family, p: &Params<T>) -> Result<Vec<F<T>>> {
    let two = T::of(2.0);
    let half = T::of(0.5);
    let i: C<T> = cx(0.0, 1.0);
    Ok(match family {
        // ---- 2.16: the seven-dimensional algebra of the model quadric ----
        Family::A2_16 => vec![
            fld(&[(2, 0, cx(0.0, 4.0)), (0, 3, cx(1.0, 0.0))]),
            fld(&[(0, 3, cx(0.0, 1.0))]),
            e3_std(),
            e4_std(),
            e5_std(),
            fld(&[(0, 0, cx(1.0, 0.0)), (1, 1, cx(1.0, 0.0)), (2, 2, cx(2.0, 0.0))]),
            fld(&[(1, 1, cx(0.0, 1.0))]),
        ],

        // ---- 3.1 ----
        // E1: (1,1)=m1 (2,2)=m1+i m1 t16/m2 (3,1)=4i (3,3)=2m1 (1,4)=1
        // E2: (1,1)=m2 (2,2)=m2+i t16    (3,3)=2m2 (1,4)=i
        Family::A3_1 => {
            let (m1, m2, t16) = (p.get("m1")?, p.get("m2")?, p.get("t16")?);
            vec![
                fld(&[
                    (0, 0, cr(m1)),
                    (1, 1, C::new(m1, m1 * t16 / m2)),
                    (2, 0, cx(0.0, 4.0)),
                    (2, 2, cr(two * m1)),
                    (0, 3, cx(1.0, 0.0)),
                ]),
                fld(&[
                    (0, 0, cr(m2)),
                    (1, 1, C::new(m2, t16)),
                    (2, 2, cr(two * m2)),
                    (0, 3, cx(0.0, 1.0)),
                ]),
                e3_std(),
                e4_std(),
                e5_std(),
            ]
        }

        // ---- 3.2 ----
        Family::A3_2 => {
            let (m1, m2) = (p.get("m1")?, p.get("m2")?);
            let (t7, t8, t16) = (p.get("t7")?, p.get("t8")?, p.get("t16")?);
            let d = m1 - t7;
            vec![
                fld(&[
                    (0, 0, C::new(two * (t7 - m1), -two * m2)),
                    (0, 2, i * C::new(m1, m2) * cr(d)),
                    (1, 1, C::new(t7, t8)),
                    (2, 0, cx(0.0, 4.0)),
                    (2, 2, cr(two * m1)),
                    (0, 3, cx(1.0, 0.0)),
                ]),
                fld(&[
                    (0, 0, cr(two * m2)),
                    (1, 1, C::new(m2, t16)),
                    (2, 2, cr(two * m2)),
                    (0, 3, cx(0.0, 1.0)),
                ]),
                fld(&[(0, 1, cr(t7 - m1)), (2, 1, cx(0.0, 2.0)), (1, 3, cx(1.0, 0.0))]),
                fld(&[(0, 1, ci(d)), (2, 1, cx(2.0, 0.0)), (1, 3, cx(0.0, 1.0))]),
                fld(&[
                    (0, 0, cr(-m2 * d)),
                    (1, 1, C::new(m2, t16) * cr(-half * d)),
                    (2, 2, cr(-m2 * d)),
                    (2, 3, cx(1.0, 0.0)),
                ]),
            ]
        }

        // ---- 3.3 ----
        Family::A3_3 => {
            let (t1, m1, t7, t8) = (p.get("t1")?, p.get("m1")?, p.get("t7")?, p.get("t8")?);
            let d = m1 - t7;
            vec![
                fld(&[
                    (0, 0, cr(t1)),
                    (0, 2, ci(-half * d * (t1 - two * t7))),
                    (1, 1, C::new(t7, t8)),
                    (2, 0, cx(0.0, 4.0)),
                    (2, 2, cr(two * m1)),
                    (0, 3, cx(1.0, 0.0)),
                ]),
                fld(&[(0, 3, cx(0.0, 1.0))]),
                fld(&[(0, 1, cr(-d)), (2, 1, cx(0.0, 2.0)), (1, 3, cx(1.0, 0.0))]),
                fld(&[(0, 1, ci(d)), (2, 1, cx(2.0, 0.0)), (1, 3, cx(0.0, 1.0))]),
                e5_std(),
            ]
        }

        // ---- 3.4 ----
        Family::A3_4 => {
            let (m1, m2, t16) = (p.get("m1")?, p.get("m2")?, p.get("t16")?);
            vec![
                fld(&[
                    (0, 0, C::new(-two * m1, -two * m2)),
                    (0, 2, i * cr(m1) * C::new(m1, m2)),
                    (1, 1, ci(two * m2)),
                    (2, 0, cx(0.0, 4.0)),
                    (2, 2, cr(two * m1)),
                    (0, 3, cx(1.0, 0.0)),
                ]),
                fld(&[
                    (0, 0, cr(two * m2)),
                    (1, 1, C::new(two * m2, t16)),
                    (2, 2, cr(two * m2)),
                    (0, 3, cx(0.0, 1.0)),
                ]),
                fld(&[
                    (0, 1, C::new(-m1, -m2)),
                    (1, 0, ci(-two * m2)),
                    (1, 2, cr(-m1 * m2)),
                    (2, 1, cx(0.0, 2.0)),
                    (1, 3, cx(1.0, 0.0)),
                ]),
                fld(&[
                    (0, 1, C::new(-m2, m1)),
                    (1, 0, cr(two * m2)),
                    (1, 2, ci(-m1 * m2)),
                    (2, 1, cx(2.0, 0.0)),
                    (1, 3, cx(0.0, 1.0)),
                ]),
                fld(&[
                    (0, 0, cr(-m1 * m2)),
                    (1, 1, C::new(two * m2, t16) * cr(-half * m1)),
                    (2, 2, cr(-m1 * m2)),
                    (2, 3, cx(1.0, 0.0)),
                ]),
            ]
        }

        // ---- 3.5 ----
        Family::A3_5 => {
            let (t1, m1, m3, m4) = (p.get("t1")?, p.get("m1")?, p.get("m3")?, p.get("m4")?);
            vec![
                fld(&[
                    (0, 0, cr(t1)),
                    (0, 1, C::new(two * m3, -two * m4)),
                    (0, 2, ci(-half * (t1 * m1 + two * m3 * m3 + two * m4 * m4))),
                    (2, 0, cx(0.0, 4.0)),
                    (2, 2, cr(two * m1)),
                    (0, 3, cx(1.0, 0.0)),
                ]),
                fld(&[(0, 3, cx(0.0, 1.0))]),
                fld(&[
                    (0, 0, cr(two * m3)),
                    (0, 1, cr(-m1)),
                    (1, 1, C::new(m3, -m4)),
                    (2, 1, cx(0.0, 2.0)),
                    (2, 2, cr(two * m3)),
                    (1, 3, cx(1.0, 0.0)),
                ]),
                fld(&[
                    (0, 0, cr(two * m4)),
                    (0, 1, ci(m1)),
                    (1, 1, C::new(m4, m3)),
                    (2, 1, cx(2.0, 0.0)),
                    (2, 2, cr(two * m4)),
                    (1, 3, cx(0.0, 1.0)),
                ]),
                e5_std(),
            ]
        }

        // ---- 3.6 ----
        Family::A3_6 => {
            let (m1, m3, m4) = (p.get("m1")?, p.get("m3")?, p.get("m4")?);
            let q34 = T::of(0.25);
            vec![
                fld(&[
                    (0, 0, cr(-two * m1)),
                    (0, 1, C::new(m3, -m4)),
                    (0, 2, ci(m1 * m1)),
                    (2, 0, cx(0.0, 4.0)),
                    (2, 2, cr(two * m1)),
                    (0, 3, cx(1.0, 0.0)),
                ]),
                fld(&[(0, 3, cx(0.0, 1.0))]),
                fld(&[
                    (0, 0, cr(T::of(1.5) * m3)),
                    (0, 1, cr(-m1)),
                    (0, 2, ci(q34 * m1 * m3)),
                    (1, 1, cr(m3)),
                    (2, 1, cx(0.0, 2.0)),
                    (2, 2, cr(two * m3)),
                    (1, 3, cx(1.0, 0.0)),
                ]),
                fld(&[
                    (0, 0, cr(T::of(1.5) * m4)),
                    (0, 1, ci(m1)),
                    (0, 2, ci(q34 * m1 * m4)),
                    (1, 1, cr(m4)),
                    (2, 1, cx(2.0, 0.0)),
                    (2, 2, cr(two * m4)),
                    (1, 3, cx(0.0, 1.0)),
                ]),
                e5_std(),
            ]
        }

        // ---- 3.7 ----
        Family::A3_7 => {
            let (t1, m1, t3, t4) = (p.get("t1")?, p.get("m1")?, p.get("t3")?, p.get("t4")?);
            let tt = t3 * t3 + t4 * t4;
            // the recurring factor (-t3 + i t4)
            let neg3i4 = C::new(-t3, t4);
            vec![
                fld(&[
                    (0, 0, cr(t1)),
                    (0, 1, C::new(t3, t4)),
                    (0, 2, ci(-half * (t1 * m1 + tt))),
                    (1, 0, C::new(two * t3, -two * t4)),
                    (1, 2, i * cr(m1) * neg3i4),
                    (2, 0, cx(0.0, 4.0)),
                    (2, 2, cr(two * m1)),
                    (0, 3, cx(1.0, 0.0)),
                ]),
                fld(&[
                    (0, 1, C::new(t4, -t3)),
                    (0, 2, cr(half * tt)),
                    (0, 3, cx(0.0, 1.0)),
                ]),
                fld(&[
                    (0, 0, C::new(t3, -t4)),
                    (0, 1, cr(-m1)),
                    (0, 2, i * cr(half * m1) * neg3i4),
                    (1, 1, ci(-two * t4)),
                    (1, 2, i * cr(half) * neg3i4 * C::new(t3, t4)),
                    (2, 1, cx(0.0, 2.0)),
                    (1, 3, cx(1.0, 0.0)),
                ]),
                fld(&[
                    (0, 0, C::new(-t4, -t3)),
                    (0, 1, ci(m1)),
                    (0, 2, cr(half * m1) * neg3i4),
                    (1, 1, ci(-two * t3)),
                    (1, 2, cr(half * tt)),
                    (2, 1, cx(2.0, 0.0)),
                    (1, 3, cx(0.0, 1.0)),
                ]),
                fld(&[
                    (0, 0, ci(-half * tt)),
                    (0, 1, i * cr(half * m1) * C::new(t3, t4)),
                    (0, 2, cr(-q(m1, tt))),
                    (1, 1, ci(-half * tt)),
                    (2, 2, ci(-half * tt)),
                    (2, 3, cx(1.0, 0.0)),
                ]),
            ]
        }

        // ---- 3.8 ----
        Family::A3_8 => {
            let (m1, m3, m4) = (p.get("m1")?, p.get("m3")?, p.get("m4")?);
            vec![
                fld(&[
                    (0, 0, cr(-two * m1)),
                    (0, 2, ci(m1 * m1)),
                    (2, 0, cx(0.0, 4.0)),
                    (2, 2, cr(two * m1)),
                    (0, 3, cx(1.0, 0.0)),
                ]),
                fld(&[(0, 3, cx(0.0, 1.0))]),
                fld(&[
                    (0, 0, cr(m3)),
                    (0, 1, cr(-m1)),
                    (0, 2, ci(half * m1 * m3)),
                    (1, 1, C::new(m3, -m4)),
                    (2, 1, cx(0.0, 2.0)),
                    (2, 2, cr(two * m3)),
                    (1, 3, cx(1.0, 0.0)),
                ]),
                fld(&[
                    (0, 0, cr(m4)),
                    (0, 1, ci(m1)),
                    (0, 2, ci(half * m1 * m4)),
                    (1, 1, C::new(m4, m3)),
                    (2, 1, cx(2.0, 0.0)),
                    (2, 2, cr(two * m4)),
                    (1, 3, cx(0.0, 1.0)),
                ]),
                e5_std(),
            ]
        }

        // ---- 3.9 ----
        Family::A3_9 => {
            let (m1, m2, m3, m4, t7) = (
                p.get("m1")?,
                p.get("m2")?,
                p.get("m3")?,
                p.get("m4")?,
                p.get("t7")?,
            );
            let d = m1 - t7;
            vec![
                fld(&[
                    (0, 0, cr(T::of(3.0) * t7 - two * m1)),
                    (0, 2, ci(half * (two * m1 - t7) * d)),
                    (1, 1, cr(t7)),
                    (2, 0, cx(0.0, 4.0)),
                    (2, 2, cr(two * m1)),
                    (0, 3, cx(1.0, 0.0)),
                ]),
                fld(&[
                    (0, 0, cr(m2)),
                    (0, 2, ci(half * m2 * d)),
                    (1, 1, cr(m2)),
                    (2, 2, cr(two * m2)),
                    (0, 3, cx(0.0, 1.0)),
                ]),
                fld(&[
                    (0, 0, cr(m3)),
                    (0, 1, cr(t7 - m1)),
                    (0, 2, ci(half * m3 * d)),
                    (1, 1, cr(m3)),
                    (2, 1, cx(0.0, 2.0)),
                    (2, 2, cr(two * m3)),
                    (1, 3, cx(1.0, 0.0)),
                ]),
                fld(&[
                    (0, 0, cr(m4)),
                    (0, 1, ci(d)),
                    (0, 2, ci(half * m4 * d)),
                    (1, 1, cr(m4)),
                    (2, 1, cx(2.0, 0.0)),
                    (2, 2, cr(two * m4)),
                    (1, 3, cx(0.0, 1.0)),
                ]),
                fld(&[
                    (0, 0, cr(-half * m2 * d)),
                    (0, 2, ci(-T::of(0.25) * m2 * d * d)),
                    (1, 1, cr(-half * m2 * d)),
                    (2, 2, cr(-m2 * d)),
                    (2, 3, cx(1.0, 0.0)),
                ]),
            ]
        }

        // ---- 5.2 ----
        Family::R5_2 => {
            let (m3, m4) = (p.get("m3")?, p.get("m4")?);
            vec![
                fld(&[(2, 0, cx(0.0, 4.0)), (0, 3, cx(1.0, 0.0))]),
                fld(&[(0, 3, cx(0.0, 1.0))]),
                fld(&[
                    (0, 0, cr(m3)),
                    (1, 1, C::new(m3, -m4)),
                    (2, 1, cx(0.0, 2.0)),
                    (2, 2, cr(two * m3)),
                    (1, 3, cx(1.0, 0.0)),
                ]),
                fld(&[
                    (0, 0, cr(m4)),
                    (1, 1, C::new(m4, m3)),
                    (2, 1, cx(2.0, 0.0)),
                    (2, 2, cr(two * m4)),
                    (1, 3, cx(0.0, 1.0)),
                ]),
                e5_std(),
            ]
        }

        // ---- 5.4 (as displayed; closed only at m2 = 0, see claim notes) ----
        Family::R5_4 => {
            let (m2, t7, t8, t16) = (p.get("m2")?, p.get("t7")?, p.get("t8")?, p.get("t16")?);
            vec![
                fld(&[
                    (0, 0, ci(two * m2)),
                    (1, 1, C::new(t7, t8)),
                    (2, 0, cx(0.0, 4.0)),
                    (2, 2, cr(two * t7)),
                    (0, 3, cx(1.0, 0.0)),
                ]),
                fld(&[
                    (0, 0, cr(m2)),
                    (1, 1, C::new(m2, t16)),
                    (2, 2, cr(two * m2)),
                    (0, 3, cx(0.0, 1.0)),
                ]),
                e3_std(),
                e4_std(),
                e5_std(),
            ]
        }

        // ---- 5.8 ----
        Family::R5_8 => {
            let (r, t7, t8) = (p.get("r")?, p.get("t7")?, p.get("t8")?);
            vec![
                fld(&[
                    (0, 0, cr(r)),
                    (1, 1, C::new(t7, t8)),
                    (2, 0, cx(0.0, 4.0)),
                    (2, 2, cr(two * t7)),
                    (0, 3, cx(1.0, 0.0)),
                ]),
                fld(&[(0, 3, cx(0.0, 1.0))]),
                e3_std(),
                e4_std(),
                e5_std(),
            ]
        }

        // ---- 5.11 ----
        Family::R5_11 => {
            let xi = p.get("xi")?;
            vec![
                fld(&[(0, 0, cx(0.0, -1.0)), (1, 1, cx(0.0, 1.0))]),
                fld(&[
                    (0, 0, cx(1.0, 0.0)),
                    (1, 1, C::new(T::one(), xi)),
                    (2, 2, cx(1.0, 0.0)),
                ]),
                fld(&[(0, 1, cx(0.0, 1.0)), (1, 0, cx(0.0, 1.0))]),
                fld(&[(0, 1, cx(1.0, 0.0)), (1, 0, cx(-1.0, 0.0))]),
                e5_std(),
            ]
        }

        // ---- 5.14 ----
        Family::R5_14 => {
            let (t1, m1, m3, m4) = (p.get("t1")?, p.get("m1")?, p.get("m3")?, p.get("m4")?);
            vec![
                fld(&[
                    (0, 0, cr(t1)),
                    (0, 2, ci(-half * (t1 * m1 + two * m3 * m3 + two * m4 * m4))),
                    (2, 0, cx(0.0, 4.0)),
                    (2, 2, cr(two * m1)),
                ]),
                fld(&[(0, 3, cx(0.0, 1.0))]),
                fld(&[(0, 0, cx(2.0, 0.0)), (1, 1, cx(1.0, 0.0)), (2, 2, cx(2.0, 0.0))]),
                fld(&[(1, 1, cx(0.0, 1.0))]),
                e5_std(),
            ]
        }

        // ---- 5.19 ----
        Family::R5_19 => vec![
            fld(&[(0, 1, cx(1.0, 0.0)), (2, 0, cx(0.0, 2.0))]),
            fld(&[(0, 3, cx(0.0, 1.0))]),
            fld(&[(0, 0, cx(3.0, 0.0)), (1, 1, cx(2.0, 0.0)), (2, 2, cx(4.0, 0.0))]),
            fld(&[(1, 3, cx(0.0, -2.0)), (2, 1, cx(1.0, 0.0))]),
            e5_std(),
        ],

        // ---- 5.22 ----  A = t3^2 + t4^2 + t1 m1 / 2
        Family::R5_22 => {
            let (t1, m1, t3, t4) = (p.get("t1")?, p.get("m1")?, p.get("t3")?, p.get("t4")?);
            let a = t3 * t3 + t4 * t4 + half * t1 * m1;
            vec![
                fld(&[
                    (0, 0, cr(t1)),
                    (0, 1, ci(-a)),
                    (1, 0, cx(0.0, 4.0)),
                    (1, 1, cr(two * m1)),
                ]),
                fld(&[(0, 2, cx(1.0, 0.0))]),
                fld(&[(1, 2, cx(1.0, 0.0))]),
                fld(&[(0, 0, cx(1.0, 0.0)), (1, 1, cx(1.0, 0.0)), (2, 2, cx(-1.0, 0.0))]),
                fld(&[(0, 0, cx(0.0, 1.0)), (1, 1, cx(0.0, 1.0)), (2, 2, cx(0.0, 1.0))]),
            ]
        }

        // ---- 5.24 ----
        Family::R5_24 => {
            let alpha = p.get("alpha")?;
            vec![
                fld(&[(0, 0, cx(1.0, 0.0)), (1, 1, cr(alpha))]),
                fld(&[(0, 2, cx(1.0, 0.0))]),
                fld(&[(1, 2, cx(1.0, 0.0))]),
                fld(&[(0, 0, cx(1.0, 0.0)), (1, 1, cx(1.0, 0.0)), (2, 2, cx(-1.0, 0.0))]),
                fld(&[(0, 0, cx(0.0, 1.0)), (1, 1, cx(0.0, 1.0)), (2, 2, cx(0.0, 1.0))]),
            ]
        }
    })
}

/// `m1 * tt / 4` kept out of line so the 3.7 table stays readable.
fn q<T: Scalar>(m1: T, tt: T) -> T {
    T::of(0.25) * m1 * tt
}
