//! The bundled algebra catalog: template constraints, the nine
//! five-dimensional families (`3.1`..`3.9`), the seven-dimensional algebra
//! `2.16`, the reduced bases (`5.2`, `5.4`, `5.8`, `5.11`, `5.14`, `5.19`,
//! `5.22`, `5.24`) and the named similarity transforms (`C5.1`, `S`, `D`,
//! `P5.26`). Every matrix is an entrywise transcription of the catalog
//! display; nothing here is derived.

mod families;
mod transforms;

pub use transforms::{build_transform, Transform};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::FieldBasis;
use crate::rng;
use crate::scalar::{cmod, Scalar};

/// Margin kept from every singular set when sampling parameters.
pub const SAMPLE_MARGIN: f64 = 0.1;
/// Default parameter sampling range.
pub const DEFAULT_RANGE: (f64, f64) = (-2.0, 2.0);

/// Named real parameters; only the names a family uses are present.
#[derive(Clone, Debug)]
pub struct Params<T: Scalar> {
    values: BTreeMap<&'static str, T>,
}

impl<T: Scalar> Default for Params<T> {
    fn default() -> Self {
        Self {
            values: BTreeMap::new(),
        }
    }
}

impl<T: Scalar> Params<T> {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(&'static str, f64)]) -> Self {
        let mut values = BTreeMap::new();
        for (k, v) in pairs {
            values.insert(*k, T::of(*v));
        }
        Self { values }
    }

    pub fn set(&mut self, name: &'static str, v: T) {
        self.values.insert(name, v);
    }

    pub fn get(&self, name: &str) -> Result<T> {
        self.values
            .get(name)
            .copied()
            .ok_or_else(|| Error::DomainViolation(format!("missing parameter `{name}`")))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.values.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, T)> + '_ {
        self.values.iter().map(|(k, v)| (*k, *v))
    }
}

/// Stable identifiers of the field bases in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A2_16,
    A3_1,
    A3_2,
    A3_3,
    A3_4,
    A3_5,
    A3_6,
    A3_7,
    A3_8,
    A3_9,
    R5_2,
    R5_4,
    R5_8,
    R5_11,
    R5_14,
    R5_19,
    R5_22,
    R5_24,
}

/// The nine five-dimensional families, in catalog order.
pub const FIVE_DIM_FAMILIES: [Family; 9] = [
    Family::A3_1,
    Family::A3_2,
    Family::A3_3,
    Family::A3_4,
    Family::A3_5,
    Family::A3_6,
    Family::A3_7,
    Family::A3_8,
    Family::A3_9,
];

/// The reduced bases of the integration chapter.
pub const REDUCED_FAMILIES: [Family; 8] = [
    Family::R5_2,
    Family::R5_4,
    Family::R5_8,
    Family::R5_11,
    Family::R5_14,
    Family::R5_19,
    Family::R5_22,
    Family::R5_24,
];

impl Family {
    pub fn id(&self) -> &'static str {
        match self {
            Family::A2_16 => "2.16",
            Family::A3_1 => "3.1",
            Family::A3_2 => "3.2",
            Family::A3_3 => "3.3",
            Family::A3_4 => "3.4",
            Family::A3_5 => "3.5",
            Family::A3_6 => "3.6",
            Family::A3_7 => "3.7",
            Family::A3_8 => "3.8",
            Family::A3_9 => "3.9",
            Family::R5_2 => "5.2",
            Family::R5_4 => "5.4",
            Family::R5_8 => "5.8",
            Family::R5_11 => "5.11",
            Family::R5_14 => "5.14",
            Family::R5_19 => "5.19",
            Family::R5_22 => "5.22",
            Family::R5_24 => "5.24",
        }
    }

    pub fn from_id(id: &str) -> Result<Self> {
        let all = [
            Family::A2_16,
            Family::A3_1,
            Family::A3_2,
            Family::A3_3,
            Family::A3_4,
            Family::A3_5,
            Family::A3_6,
            Family::A3_7,
            Family::A3_8,
            Family::A3_9,
            Family::R5_2,
            Family::R5_4,
            Family::R5_8,
            Family::R5_11,
            Family::R5_14,
            Family::R5_19,
            Family::R5_22,
            Family::R5_24,
        ];
        all.iter()
            .find(|f| f.id() == id)
            .copied()
            .ok_or_else(|| Error::UnknownId(id.into()))
    }

    /// Parameter names the family consumes.
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            Family::A2_16 | Family::R5_19 => &[],
            Family::A3_1 => &["m1", "m2", "t16"],
            Family::A3_2 => &["m1", "m2", "t7", "t8", "t16"],
            Family::A3_3 => &["t1", "m1", "t7", "t8"],
            Family::A3_4 => &["m1", "m2", "t16"],
            Family::A3_5 => &["t1", "m1", "m3", "m4"],
            Family::A3_6 => &["m1", "m3", "m4"],
            Family::A3_7 => &["t1", "m1", "t3", "t4"],
            Family::A3_8 => &["m1", "m3", "m4"],
            Family::A3_9 => &["m1", "m2", "m3", "m4", "t7"],
            Family::R5_2 => &["m3", "m4"],
            Family::R5_4 => &["m2", "t7", "t8", "t16"],
            Family::R5_8 => &["r", "t7", "t8"],
            Family::R5_11 => &["xi"],
            Family::R5_14 => &["t1", "m1", "m3", "m4"],
            Family::R5_22 => &["t1", "m1", "t3", "t4"],
            Family::R5_24 => &["alpha"],
        }
    }

    /// Domain constraints, all enforced with [`SAMPLE_MARGIN`] while sampling.
    pub fn constraints(&self) -> &'static [Constraint] {
        match self {
            // E1 of 3.1 divides by m2.
            Family::A3_1 => &[Constraint::MinAbs("m2")],
            // alpha < 0 on the 5.24 domain.
            Family::R5_24 => &[Constraint::MaxNeg("alpha")],
            // keeps the two eigenvalues of the 5.22 head block apart.
            Family::R5_22 => &[Constraint::MinHypot("t3", "t4")],
            _ => &[],
        }
    }
}

/// A single scalar domain constraint; the margin is supplied at check time.
#[derive(Clone, Copy, Debug)]
pub enum Constraint {
    /// |name| >= margin.
    MinAbs(&'static str),
    /// name <= -margin.
    MaxNeg(&'static str),
    /// sqrt(a^2 + b^2) >= margin.
    MinHypot(&'static str, &'static str),
}

impl Constraint {
    pub fn holds<T: Scalar>(&self, p: &Params<T>, margin: T) -> Result<bool> {
        Ok(match self {
            Constraint::MinAbs(name) => p.get(name)?.abs() >= margin,
            Constraint::MaxNeg(name) => p.get(name)? <= -margin,
            Constraint::MinHypot(a, b) => {
                let (x, y) = (p.get(a)?, p.get(b)?);
                (x * x + y * y).sqrt() >= margin
            }
        })
    }

    pub fn describe(&self) -> String {
        match self {
            Constraint::MinAbs(n) => format!("|{n}| >= margin"),
            Constraint::MaxNeg(n) => format!("{n} <= -margin"),
            Constraint::MinHypot(a, b) => format!("hypot({a},{b}) >= margin"),
        }
    }
}

/// Entrywise transcription of the requested basis. Fails with
/// `DomainViolation` when a family constraint is broken (margin 0 here;
/// sampling applies the positive margin).
pub fn instantiate<T: Scalar>(family: Family, params: &Params<T>) -> Result<FieldBasis<T>> {
    for c in family.constraints() {
        if !c.holds(params, T::of(f64::MIN_POSITIVE))? {
            return Err(Error::DomainViolation(format!(
                "family {}: {}",
                family.id(),
                c.describe()
            )));
        }
    }
    let fields = families::build(family, params)?;
    FieldBasis::new(family.id(), fields)
}

/// Deterministic parameter draw: (seed, index) fixes the value; redraws
/// until every constraint holds with margin 0.1, up to 1000 attempts.
pub fn sample_params<T: Scalar>(
    family: Family,
    range: (f64, f64),
    seed: u64,
    index: u64,
) -> Result<Params<T>> {
    let range_ok = range.0 < range.1;
    if !range_ok {
        return Err(Error::Config(format!("empty range [{}, {}]", range.0, range.1)));
    }
    let mut r = rng::stream(seed, index, family.id());
    let margin = T::of(SAMPLE_MARGIN);
    for attempt in 0..1000 {
        let mut p = Params::none();
        for name in family.param_names() {
            p.set(name, rng::uniform(&mut r, range.0, range.1));
        }
        let ok = family
            .constraints()
            .iter()
            .try_fold(true, |acc, c| Ok::<_, Error>(acc && c.holds(&p, margin)?))?;
        if ok {
            return Ok(p);
        }
        let _ = attempt;
    }
    Err(Error::SamplingExhausted {
        what: format!("params of family {}", family.id()),
        attempts: 1000,
    })
}

/// Max deviation of the third-row entries from the template constraints
/// `c1 = 2i(conj p + 2 eps1 p)`, `c2 = 2i(conj s + 2 eps2 s)`, `Im q = 0`,
/// over all fields of a template-shaped five-field basis.
pub fn structure_constraints<T: Scalar>(
    basis: &FieldBasis<T>,
    eps1: T,
    eps2: T,
) -> Result<T> {
    if !basis.has_template_translations() {
        return Err(Error::ShapeMismatch(format!(
            "basis `{}` translation columns are not template-shaped",
            basis.label()
        )));
    }
    let two_i = crate::scalar::cx::<T>(0.0, 2.0);
    let two = T::of(2.0);
    let mut worst = T::zero();
    for f in basis.fields() {
        let p = f.entry(0, 3);
        let s = f.entry(1, 3);
        let q = f.entry(2, 3);
        let c1 = f.entry(2, 0);
        let c2 = f.entry(2, 1);
        let want_c1 = two_i * (p.conj() + p * Complex::new(two * eps1, T::zero()));
        let want_c2 = two_i * (s.conj() + s * Complex::new(two * eps2, T::zero()));
        for d in [cmod(c1 - want_c1), cmod(c2 - want_c2), q.im.abs()] {
            if d > worst {
                worst = d;
            }
        }
    }
    Ok(worst)
}

use num_complex::Complex;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    #[test]
    fn instantiate_3_1_example() {
        // m1=0, m2=1, t16=0: E1 has (3,1)=4i, (1,4)=1, diagonal blocks zero;
        // E2 has (1,1)=1, (2,2)=1, (3,3)=2, (1,4)=i.
        let p: Params<f64> = Params::from_pairs(&[("m1", 0.0), ("m2", 1.0), ("t16", 0.0)]);
        let b = instantiate(Family::A3_1, &p).unwrap();
        let e1 = b.field(0);
        assert_eq!(e1.entry(2, 0), cx(0.0, 4.0));
        assert_eq!(e1.entry(0, 3), cx(1.0, 0.0));
        assert_eq!(e1.entry(0, 0), cx(0.0, 0.0));
        assert_eq!(e1.entry(1, 1), cx(0.0, 0.0));
        assert_eq!(e1.entry(2, 2), cx(0.0, 0.0));
        let e2 = b.field(1);
        assert_eq!(e2.entry(0, 0), cx(1.0, 0.0));
        assert_eq!(e2.entry(1, 1), cx(1.0, 0.0));
        assert_eq!(e2.entry(2, 2), cx(2.0, 0.0));
        assert_eq!(e2.entry(0, 3), cx(0.0, 1.0));
    }

    #[test]
    fn instantiate_2_16_is_seven_fields() {
        let b = instantiate(Family::A2_16, &Params::<f64>::none()).unwrap();
        assert_eq!(b.len(), 7);
        assert_eq!(b.span_rank(), 7);
    }

    #[test]
    fn family_3_4_at_zero_is_subspace_of_2_16() {
        let p: Params<f64> = Params::from_pairs(&[("m1", 0.0), ("m2", 0.0), ("t16", 0.0)]);
        let b = instantiate(Family::A3_4, &p).unwrap();
        let a = instantiate(Family::A2_16, &Params::<f64>::none()).unwrap();
        assert!(b.is_subspace_of(&a).unwrap() <= 1e-12);
    }

    #[test]
    fn domain_violation_reported() {
        let p: Params<f64> = Params::from_pairs(&[("m1", 1.0), ("m2", 0.0), ("t16", 0.0)]);
        assert!(matches!(
            instantiate(Family::A3_1, &p),
            Err(Error::DomainViolation(_))
        ));
    }

    #[test]
    fn sampling_is_deterministic_and_respects_margins() {
        let a: Params<f64> = sample_params(Family::A3_1, DEFAULT_RANGE, 42, 7).unwrap();
        let b: Params<f64> = sample_params(Family::A3_1, DEFAULT_RANGE, 42, 7).unwrap();
        for (k, v) in a.iter() {
            assert_eq!(v, b.get(k).unwrap());
        }
        for idx in 0..100 {
            let p: Params<f64> = sample_params(Family::A3_1, DEFAULT_RANGE, 1, idx).unwrap();
            assert!(p.get("m2").unwrap().abs() >= SAMPLE_MARGIN);
        }
        // 100 draws for 3.7 are pairwise distinct
        let draws: Vec<Params<f64>> = (0..100)
            .map(|i| sample_params(Family::A3_7, DEFAULT_RANGE, 9, i).unwrap())
            .collect();
        for i in 0..draws.len() {
            for j in (i + 1)..draws.len() {
                let same = draws[i]
                    .iter()
                    .all(|(k, v)| (v - draws[j].get(k).unwrap()).abs() == 0.0);
                assert!(!same, "draws {i} and {j} coincide");
            }
        }
    }

    #[test]
    fn structure_constraints_on_template_entries() {
        // Template entries with eps1 = 1/2, eps2 = 0: E1 (p=1) forces c1 = 4i,
        // E3 (s=1) forces c2 = 2i, E4 (s=i) forces c2 = 2, E2 (p=i) forces c1 = 0.
        let b = instantiate(Family::A2_16, &Params::<f64>::none()).unwrap();
        let five = b.truncated(5, "2.16|5").unwrap();
        let dev = structure_constraints(&five, 0.5, 0.0).unwrap();
        assert!(dev <= 1e-15);

        // perturb entry (3,1) of E1 by +1: deviation exactly 1
        let mut fields: Vec<_> = five.fields().to_vec();
        fields[0] = fields[0].add(&crate::field::AffineField::from_entries(&[(
            2,
            0,
            cx(1.0, 0.0),
        )]));
        let pert = FieldBasis::new("pert", fields).unwrap();
        let dev = structure_constraints(&pert, 0.5, 0.0).unwrap();
        assert!((dev - 1.0).abs() < 1e-15);
    }

    #[test]
    fn all_families_satisfy_structure_constraints_on_draws() {
        for family in FIVE_DIM_FAMILIES {
            for idx in 0..25 {
                let p: Params<f64> = sample_params(family, DEFAULT_RANGE, 5, idx).unwrap();
                let b = instantiate(family, &p).unwrap();
                let dev = structure_constraints(&b, 0.5, 0.0).unwrap();
                assert!(dev <= 1e-12, "family {} draw {idx}: deviation {dev}", family.id());
            }
        }
    }

    #[test]
    fn all_families_close_on_draws() {
        for family in FIVE_DIM_FAMILIES {
            for idx in 0..25 {
                let p: Params<f64> = sample_params(family, DEFAULT_RANGE, 6, idx).unwrap();
                let b = instantiate(family, &p).unwrap();
                let r = b.closure_residual().unwrap();
                assert!(r <= 1e-9, "family {} draw {idx}: closure residual {r}", family.id());
            }
        }
    }
}
