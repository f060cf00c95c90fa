//! The batch runner: executes selected campaigns and assembles a
//! deterministic, byte-stable report.
//!
//! Reports serialize with fixed key order (struct declaration order and
//! sorted maps) and shortest round-trip float formatting, so identical
//! configurations produce identical bytes. Wall-clock timings are returned
//! on the side and never enter the canonical report.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog::{
    instantiate, sample_params, structure_constraints, Family, Params, FIVE_DIM_FAMILIES,
};
use crate::error::Error;
use crate::geometry::{canonical_type, levi_form};
use crate::surfaces::Surface;
use crate::verify::closure_system::{
    extract_assignment, recovery_trial, residual_vector, ASSIGNMENT_DIM, EQUATION_COUNTS,
};
use crate::verify::fitting::{fit_parameters, fit_problems, similarity_cases};
use crate::verify::odes::ode_checks;
use crate::verify::reductions::{
    display_5_4_discrepancy, equivalence_claims, head_block_eigenvalues, reduction_claims,
    tangency_claims,
};
use crate::verify::{tangency_residual, transitivity_rank};

/// Campaign tolerances; every default is pinned here.
#[derive(Clone, Debug, Serialize)]
pub struct Tolerances {
    pub closure: f64,
    pub constraints: f64,
    pub subspace: f64,
    pub tangency: f64,
    pub tangency_fitted: f64,
    pub ode: f64,
    pub type_invariant: f64,
    pub fit: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            closure: 1e-9,
            constraints: 1e-12,
            subspace: 1e-9,
            tangency: 1e-8,
            tangency_fitted: 1e-6,
            ode: 1e-9,
            type_invariant: 1e-8,
            fit: 1e-6,
        }
    }
}

/// Runner configuration; the seed keys every random draw in the run.
#[derive(Clone, Debug, Serialize)]
pub struct CampaignConfig {
    pub seed: u64,
    pub samples: usize,
    pub range: (f64, f64),
    pub tolerances: Tolerances,
    /// Family id filter (empty = all).
    pub families: Vec<String>,
    /// Surface id filter (empty = all).
    pub surfaces: Vec<String>,
    /// Theorem filter, e.g. "4.1" (empty = all).
    pub theorems: Vec<String>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            samples: 100,
            range: (-2.0, 2.0),
            tolerances: Tolerances::default(),
            families: Vec::new(),
            surfaces: Vec::new(),
            theorems: Vec::new(),
        }
    }
}

impl CampaignConfig {
    fn family_selected(&self, id: &str) -> bool {
        self.families.is_empty() || self.families.iter().any(|f| f == id || f == "all")
    }
    fn surface_selected(&self, id: &str) -> bool {
        self.surfaces.is_empty() || self.surfaces.iter().any(|s| s == id || s == "all")
    }
    fn theorem_selected(&self, id: &str) -> bool {
        self.theorems.is_empty() || self.theorems.iter().any(|t| t == id || t == "all")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// One check record; `values` carries residuals and other numbers together
/// with the tolerance they were judged against.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub inputs: BTreeMap<String, String>,
    pub values: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl CheckRecord {
    fn new(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            status: Status::Pass,
            inputs: BTreeMap::new(),
            values: BTreeMap::new(),
            tol: None,
            notes: Vec::new(),
        }
    }

    fn input(mut self, k: &str, v: impl ToString) -> Self {
        self.inputs.insert(k.into(), v.to_string());
        self
    }

    fn value(mut self, k: &str, v: f64) -> Self {
        self.values.insert(k.into(), v);
        self
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    /// Threshold judgment: pass iff `value <= tol`.
    fn judge(mut self, key: &str, value: f64, tol: f64) -> Self {
        self.values.insert(key.into(), value);
        self.tol = Some(tol);
        self.status = if value <= tol { Status::Pass } else { Status::Fail };
        self
    }

    fn fail_with(mut self, note: impl Into<String>) -> Self {
        self.status = Status::Fail;
        self.notes.push(note.into());
        self
    }

    fn inconclusive(mut self) -> Self {
        self.status = Status::Inconclusive;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub version: &'static str,
    pub config: CampaignConfig,
    pub campaigns: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Canonical bytes: pretty JSON with fixed key order and shortest
    /// round-trip floats; byte-identical across reruns of the same config.
    pub fn canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Wall-clock timings per campaign, kept outside the canonical report.
pub type Timings = Vec<(String, f64)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CampaignKind {
    Closure,
    Constraints,
    Reductions,
    Tangency,
    Type,
    Levi,
    Ode,
    Fit,
    ClosureSystem,
}

impl CampaignKind {
    pub const ALL: [CampaignKind; 9] = [
        CampaignKind::Closure,
        CampaignKind::Constraints,
        CampaignKind::Reductions,
        CampaignKind::Tangency,
        CampaignKind::Type,
        CampaignKind::Levi,
        CampaignKind::Ode,
        CampaignKind::Fit,
        CampaignKind::ClosureSystem,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CampaignKind::Closure => "closure",
            CampaignKind::Constraints => "constraints",
            CampaignKind::Reductions => "reductions",
            CampaignKind::Tangency => "tangency",
            CampaignKind::Type => "type",
            CampaignKind::Levi => "levi",
            CampaignKind::Ode => "ode",
            CampaignKind::Fit => "fit",
            CampaignKind::ClosureSystem => "closure-system",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == name)
    }
}

/// Run the selected campaigns and assemble the report.
pub fn run(config: &CampaignConfig, kinds: &[CampaignKind]) -> (VerificationReport, Timings) {
    let mut checks: Vec<CheckRecord> = Vec::new();
    let mut timings = Vec::new();
    for kind in kinds {
        let t0 = std::time::Instant::now();
        let mut recs = match kind {
            CampaignKind::Closure => closure_campaign(config),
            CampaignKind::Constraints => constraints_campaign(config),
            CampaignKind::Reductions => reductions_campaign(config),
            CampaignKind::Tangency => tangency_campaign(config),
            CampaignKind::Type => type_campaign(config),
            CampaignKind::Levi => levi_campaign(config),
            CampaignKind::Ode => ode_campaign(config),
            CampaignKind::Fit => fit_campaign(config),
            CampaignKind::ClosureSystem => closure_system_campaign(config),
        };
        checks.append(&mut recs);
        timings.push((kind.name().to_string(), t0.elapsed().as_secs_f64() * 1e3));
    }
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    let summary = Summary {
        total: checks.len(),
        passed: checks.iter().filter(|c| c.status == Status::Pass).count(),
        failed: checks.iter().filter(|c| c.status == Status::Fail).count(),
        inconclusive: checks
            .iter()
            .filter(|c| c.status == Status::Inconclusive)
            .count(),
    };
    let report = VerificationReport {
        schema: "ahv-report/1",
        version: env!("CARGO_PKG_VERSION"),
        config: config.clone(),
        campaigns: kinds.iter().map(|k| k.name().to_string()).collect(),
        checks,
        summary,
    };
    (report, timings)
}

fn err_record(id: &str, e: &Error) -> CheckRecord {
    CheckRecord::new(id).fail_with(format!("error: {e}"))
}

// ---------------------------------------------------------------- closure

fn closure_campaign(cfg: &CampaignConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    if cfg.family_selected("2.16") {
        let rec = match instantiate(Family::A2_16, &Params::<f64>::none())
            .and_then(|b| b.closure_residual())
        {
            Ok(r) => CheckRecord::new("closure/2.16")
                .input("fields", 7)
                .judge("residual", r, 1e-12),
            Err(e) => err_record("closure/2.16", &e),
        };
        out.push(rec);
    }
    for family in FIVE_DIM_FAMILIES {
        if !cfg.family_selected(family.id()) {
            continue;
        }
        let id = format!("closure/{}", family.id());
        let mut worst = 0.0f64;
        let mut failure: Option<Error> = None;
        for index in 0..cfg.samples {
            let draw = sample_params::<f64>(family, cfg.range, cfg.seed, index as u64)
                .and_then(|p| instantiate(family, &p))
                .and_then(|b| b.closure_residual());
            match draw {
                Ok(r) => worst = worst.max(r),
                Err(e) => {
                    failure = Some(e);
                    break;
                }
            }
        }
        let rec = match failure {
            None => CheckRecord::new(&id)
                .input("draws", cfg.samples)
                .input("range", format!("[{}, {}]", cfg.range.0, cfg.range.1))
                .input("seed", cfg.seed)
                .judge("max_residual", worst, cfg.tolerances.closure),
            Some(e) => err_record(&id, &e),
        };
        out.push(rec);
    }
    // the stored 5.4 display away from m2 = 0, kept as a documented
    // discrepancy record: it is not bracket-closed there, while the
    // conjugated image of 3.2 is
    if cfg.family_selected("5.4") {
        let p: Params<f64> =
            Params::from_pairs(&[("m2", 1.0), ("t7", -1.0), ("t8", 0.0), ("t16", 0.0)]);
        let rec = match instantiate(Family::R5_4, &p).and_then(|b| b.closure_residual()) {
            Ok(r) => CheckRecord::new("closure/5.4-display")
                .input("params", "m2=1, t7=-1, t8=0, t16=0")
                .value("residual", r)
                .note("the stored 5.4 display closes only at m2 = 0; away from it the conjugated image of 3.2 (entries E1(1,1) = -2i m2, E2(1,1) = 2 m2) is the closed algebra; see reduction/5.4-display")
                .inconclusive(),
            Err(e) => err_record("closure/5.4-display", &e),
        };
        out.push(rec);
    }
    out
}

// ------------------------------------------------------------ constraints

fn constraints_campaign(cfg: &CampaignConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for family in FIVE_DIM_FAMILIES {
        if !cfg.family_selected(family.id()) {
            continue;
        }
        let id = format!("constraints/{}", family.id());
        let mut worst = 0.0f64;
        let mut failure: Option<Error> = None;
        for index in 0..cfg.samples {
            let draw = sample_params::<f64>(family, cfg.range, cfg.seed, index as u64)
                .and_then(|p| instantiate(family, &p))
                .and_then(|b| structure_constraints(&b, 0.5, 0.0));
            match draw {
                Ok(d) => worst = worst.max(d),
                Err(e) => {
                    failure = Some(e);
                    break;
                }
            }
        }
        let rec = match failure {
            None => CheckRecord::new(&id)
                .input("draws", cfg.samples)
                .input("eps", "(1/2, 0)")
                .note("second slot checked with eps2 = 0; the displayed template entries (2i for s = 1, 2 for s = i) fix that convention")
                .judge("max_deviation", worst, cfg.tolerances.constraints),
            Some(e) => err_record(&id, &e),
        };
        out.push(rec);
    }
    out
}

// ------------------------------------------------------------- reductions

fn reductions_campaign(cfg: &CampaignConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let draws = 20usize;
    let mut worst: BTreeMap<&'static str, (String, f64, f64)> = BTreeMap::new();
    for index in 0..draws {
        match reduction_claims::<f64>(cfg.seed, index as u64) {
            Ok(claims) => {
                for claim in claims {
                    if !cfg.theorem_selected(claim.theorem) {
                        continue;
                    }
                    let tol = match claim.id {
                        "4.1c" | "4.6" => cfg.tolerances.subspace,
                        _ => 1e-10,
                    };
                    let entry = worst
                        .entry(claim.id)
                        .or_insert((claim.theorem.to_string(), 0.0, tol));
                    match claim.verify() {
                        Ok(r) => entry.1 = entry.1.max(r),
                        Err(e) => {
                            entry.1 = f64::INFINITY;
                            let _ = e;
                        }
                    }
                }
            }
            Err(e) => out.push(err_record("reduction/draws", &e)),
        }
    }
    for (id, (theorem, residual, tol)) in worst {
        out.push(
            CheckRecord::new(format!("reduction/{id}"))
                .input("theorem", theorem)
                .input("draws", draws)
                .judge("max_residual", residual, tol),
        );
    }

    // the head-block eigenvalue formula of 5.22
    if cfg.theorem_selected("4.7") {
        let mut worst = 0.0f64;
        let mut signs_ok = true;
        for index in 0..draws {
            match sample_params::<f64>(Family::R5_22, cfg.range, cfg.seed, index as u64)
                .and_then(|p| head_block_eigenvalues(&p))
            {
                Ok((l1, l2, err)) => {
                    worst = worst.max(err);
                    signs_ok &= l1 > 0.0 && l2 < 0.0;
                }
                Err(e) => out.push(err_record("reduction/5.23", &e)),
            }
        }
        let mut rec = CheckRecord::new("reduction/5.23")
            .input("draws", draws)
            .judge("max_formula_error", worst, 1e-9);
        if !signs_ok {
            rec = rec.fail_with("eigenvalues not of opposite signs");
        }
        out.push(rec);
    }

    // the documented 5.4 display discrepancy
    if cfg.theorem_selected("4.2") {
        let p: Params<f64> = Params::from_pairs(&[
            ("m1", 0.4),
            ("m2", 1.0),
            ("t7", -0.6),
            ("t8", 0.2),
            ("t16", 0.3),
        ]);
        let rec = match display_5_4_discrepancy(&p) {
            Ok((documented, elsewhere)) => {
                let mut rec = CheckRecord::new("reduction/5.4-display")
                    .input("params", "m1=0.4, m2=1, t7=-0.6, t8=0.2, t16=0.3")
                    .value("documented_slots_gap", documented)
                    .value("other_entries_gap", elsewhere)
                    .note("conjugating 3.2 by C5.1((m1-t7)/2) with E5 += lambda E2 reproduces the 5.4 display except in E1(1,1) (image -2i m2 vs stored 2i m2) and E2(1,1) (image 2 m2 vs stored m2)")
                    .inconclusive();
                if elsewhere > 1e-10 {
                    rec = rec.fail_with("image deviates outside the documented slots");
                }
                rec
            }
            Err(e) => err_record("reduction/5.4-display", &e),
        };
        out.push(rec);
    }

    // similarity searches; failures are inconclusive by design
    match similarity_cases::<f64>(cfg.seed) {
        Ok(cases) => {
            for c in cases {
                let mut rec = CheckRecord::new(format!("reduction/sim/{}", c.id))
                    .input("starts", c.starts)
                    .value("best_residual", c.best_residual)
                    .note("least-squares search for an affine similarity; a failed search is inconclusive, not a refutation");
                if let Some(n) = c.note {
                    rec = rec.note(n);
                }
                rec.status = if c.conclusive {
                    Status::Pass
                } else {
                    Status::Inconclusive
                };
                out.push(rec);
            }
        }
        Err(e) => out.push(err_record("reduction/sim", &e)),
    }
    out
}

// --------------------------------------------------------------- tangency

fn tangency_campaign(cfg: &CampaignConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();

    // the quadric block: closure is covered above; tangency, transitivity
    // and span dimension live here
    if cfg.surface_selected("2.15") {
        match instantiate(Family::A2_16, &Params::<f64>::none()) {
            Ok(basis) => {
                let s = Surface::<f64>::ModelQuadric;
                match tangency_residual(&basis, &s, cfg.samples, cfg.seed) {
                    Ok(t) => out.push(
                        CheckRecord::new("quadric/tangency")
                            .input("surface", "2.15")
                            .input("samples", cfg.samples)
                            .judge("max_residual", t.max_residual, 1e-10),
                    ),
                    Err(e) => out.push(err_record("quadric/tangency", &e)),
                }
                match transitivity_rank(&basis, &s, &s.base_point()) {
                    Ok(rank) => {
                        let mut rec = CheckRecord::new("quadric/transitivity")
                            .input("point", "origin")
                            .value("rank", rank as f64);
                        if rank != 5 {
                            rec = rec.fail_with(format!("rank {rank} != 5"));
                        }
                        out.push(rec);
                    }
                    Err(e) => out.push(err_record("quadric/transitivity", &e)),
                }
                let dim = basis.span_rank();
                let mut rec = CheckRecord::new("quadric/dimension").value("span_rank", dim as f64);
                if dim != 7 {
                    rec = rec.fail_with(format!("span rank {dim} != 7"));
                }
                out.push(rec);
            }
            Err(e) => out.push(err_record("quadric", &e)),
        }
    }

    match tangency_claims::<f64>() {
        Ok(claims) => {
            for claim in claims {
                if !cfg.theorem_selected(claim.theorem)
                    || !cfg.surface_selected(&claim.catalog.id())
                {
                    continue;
                }
                let id = format!("tangency/{}", claim.id);
                let rec = match tangency_residual(&claim.basis, &claim.surface, cfg.samples, cfg.seed)
                {
                    Ok(t) => {
                        let mut rec = CheckRecord::new(&id)
                            .input("surface", claim.surface.id())
                            .input("catalog", claim.catalog.id())
                            .input("samples", cfg.samples)
                            .judge("max_residual", t.max_residual, claim.tol);
                        match transitivity_rank(&claim.basis, &claim.surface, &claim.surface.base_point())
                        {
                            Ok(rank) => {
                                rec = rec.value("rank", rank as f64);
                                if rank != 5 {
                                    rec = rec.fail_with(format!("transitivity rank {rank} != 5"));
                                }
                            }
                            Err(e) => rec = rec.fail_with(format!("rank error: {e}")),
                        }
                        match levi_form(&claim.catalog, &claim.catalog.base_point()) {
                            Ok(l) => {
                                let (p, m, z) = l.signature.tuple();
                                rec = rec.value("spc", if l.signature.is_spc() { 1.0 } else { 0.0 });
                                if !l.signature.is_spc() {
                                    rec = rec.fail_with(format!(
                                        "catalog surface not SPC at base: ({p},{m},{z})"
                                    ));
                                }
                            }
                            Err(e) => rec = rec.fail_with(format!("levi error: {e}")),
                        }
                        rec
                    }
                    Err(e) => err_record(&id, &e),
                };
                out.push(rec);
            }
        }
        Err(e) => out.push(err_record("tangency/claims", &e)),
    }

    for claim in equivalence_claims::<f64>() {
        let id = format!("equiv/{}", claim.id);
        let rec = match claim.verify(cfg.samples, cfg.seed) {
            Ok(r) => CheckRecord::new(&id)
                .input("source", claim.source.id())
                .input("target", claim.target.id())
                .input("samples", cfg.samples)
                .judge("max_phi_on_image", r, 1e-9),
            Err(e) => err_record(&id, &e),
        };
        out.push(rec);
    }
    out
}

// ------------------------------------------------------------------- type

fn type_campaign(cfg: &CampaignConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let tol = cfg.tolerances.type_invariant;
    for s in Surface::<f64>::main_theorem() {
        if !cfg.surface_selected(&s.id()) {
            continue;
        }
        let id = format!("type/{}", s.id());
        let rec = match canonical_type(&s) {
            Ok(tc) => {
                let worst = (tc.invariant.eps1 - 0.5).abs().max(tc.invariant.eps2.abs());
                let mut rec = CheckRecord::new(&id)
                    .input("base", "catalog")
                    .value("eps1", tc.invariant.eps1)
                    .value("eps2", tc.invariant.eps2)
                    .value("sheared_u_square", tc.sheared_u_square)
                    .judge("deviation_from_half_zero", worst, tol);
                if tc.sheared_u_square.abs() > 1e-9 {
                    rec = rec.note("nonzero sheared u^2: a weight-four tail coefficient no affine move removes; it does not enter the invariant");
                }
                rec
            }
            Err(e) => err_record(&id, &e),
        };
        out.push(rec);
    }
    if cfg.surface_selected("2.15") {
        let rec = match canonical_type(&Surface::<f64>::ModelQuadric) {
            Ok(tc) => {
                let worst = (tc.invariant.eps1 - 0.5).abs().max(tc.invariant.eps2.abs());
                CheckRecord::new("type/2.15")
                    .value("eps1", tc.invariant.eps1)
                    .value("eps2", tc.invariant.eps2)
                    .judge("deviation_from_half_zero", worst, 1e-12)
            }
            Err(e) => err_record("type/2.15", &e),
        };
        out.push(rec);
    }
    // the 5.21 sweep: eps1 stays 1/2 while eps2 follows |1+4C|/(2(1-4C))
    if cfg.surface_selected("5.21") {
        for c in [-2.0, -1.0, -0.5, -0.25, -0.1] {
            let id = format!("type/5.21/C={c}");
            let rec = match canonical_type(&Surface::<f64>::CubicFamily521 { c }) {
                Ok(tc) => {
                    let want = (1.0 + 4.0 * c).abs() / (2.0 * (1.0 - 4.0 * c));
                    let dev = (tc.invariant.eps1 - 0.5)
                        .abs()
                        .max((tc.invariant.eps2 - want).abs());
                    CheckRecord::new(&id)
                        .value("eps1", tc.invariant.eps1)
                        .value("eps2", tc.invariant.eps2)
                        .value("closed_form", want)
                        .note("the computed eps2 fits |1+4C|/(2(1-4C)); the catalog remark prints (1+4C)/(1-4C) with unbalanced parentheses and no half")
                        .judge("deviation", dev, tol)
                }
                Err(e) => err_record(&id, &e),
            };
            out.push(rec);
        }
    }
    // the cubic family sweep: eps2 fits |A-1|/(2(A+1))
    if cfg.surface_selected("cubic") {
        for a in [0.0, 2.0, 3.0] {
            let id = format!("type/cubic/A={a}");
            let rec = match canonical_type(&Surface::<f64>::CubicFamilyA { a }) {
                Ok(tc) => {
                    let want = ((a - 1.0) / (2.0 * (a + 1.0))).abs();
                    let dev = (tc.invariant.eps1 - 0.5)
                        .abs()
                        .max((tc.invariant.eps2 - want).abs());
                    CheckRecord::new(&id)
                        .value("eps1", tc.invariant.eps1)
                        .value("eps2", tc.invariant.eps2)
                        .value("closed_form", want)
                        .note("grouping (A-1)/(2(A+1)) confirmed; the alternative reading ((A-1)/2)(A+1) does not fit")
                        .judge("deviation", dev, tol)
                }
                Err(e) => err_record(&id, &e),
            };
            out.push(rec);
        }
    }
    // recorded, not asserted: the 5.12 member at t = 3
    if cfg.surface_selected("5.12") {
        let rec = match canonical_type(&Surface::<f64>::PowerCone { t: 3.0 }) {
            Ok(tc) => CheckRecord::new("type/5.12")
                .input("t", 3)
                .value("eps1", tc.invariant.eps1)
                .value("eps2", tc.invariant.eps2)
                .note("recorded for reference; the catalog asserts no value here")
                .inconclusive(),
            Err(e) => err_record("type/5.12", &e),
        };
        out.push(rec);
    }
    out
}

// ------------------------------------------------------------------- levi

fn levi_campaign(cfg: &CampaignConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();

    let signature_of = |s: &Surface<f64>| levi_form(s, &s.base_point()).map(|l| l.signature.tuple());

    if cfg.surface_selected("2.15") {
        let rec = match levi_form(&Surface::<f64>::ModelQuadric, &Surface::<f64>::ModelQuadric.base_point()) {
            Ok(l) => {
                let mut rec = CheckRecord::new("levi/2.15")
                    .value("n_plus", l.signature.n_plus as f64)
                    .value("eig1", l.eigenvalues[0])
                    .value("eig2", l.eigenvalues[1]);
                if l.signature.tuple() != (2, 0, 0)
                    || (l.eigenvalues[0] - 1.0).abs() > 1e-12
                    || (l.eigenvalues[1] - 1.0).abs() > 1e-12
                {
                    rec = rec.fail_with("expected signature (2,0,0) with eigenvalues (1,1)");
                }
                rec
            }
            Err(e) => err_record("levi/2.15", &e),
        };
        out.push(rec);
    }

    if cfg.surface_selected("2.10") {
        // the pinned boundary expectations; the first two do not hold under
        // the Levi form itself (the restriction to the full complex tangent)
        // and are reported failed with the computed truth
        let cases: [(f64, (usize, usize, usize), &str); 3] = [
            (
                0.0,
                (0, 0, 2),
                "computed signature is (1,0,1): Re(conj(z1) w) - 1 has the mixed term z1 conj(w)/2, so the Levi form has rank one; the z-block-only shortcut gives (0,0,2), and the member Re(conj(z1) w) = 0 is genuinely Levi-flat (see levi/5.25-C0)",
            ),
            (
                1.0,
                (1, 1, 0),
                "computed signature is (0,0,2): at alpha = 1 the surface is Re(conj(z1)(w - z2)) = 0 after an affine shear, a Levi-flat quadric; indefiniteness holds for alpha > 0, alpha != 1 (see levi/2.10/alpha=2)",
            ),
            (-1.0, (2, 0, 0), ""),
        ];
        for (alpha, want, reason) in cases {
            let id = format!("levi/2.10/alpha={alpha}");
            let s = Surface::<f64>::Pairing { alpha };
            let rec = match signature_of(&s) {
                Ok(got) => {
                    let mut rec = CheckRecord::new(&id)
                        .input("expected", format!("{want:?}"))
                        .input("computed", format!("{got:?}"))
                        .value("matches_expected", if got == want { 1.0 } else { 0.0 });
                    if got == want {
                        rec.status = Status::Pass;
                    } else {
                        rec = rec.fail_with(format!("expected {want:?}, computed {got:?}"));
                        if !reason.is_empty() {
                            rec = rec.note(reason);
                        }
                    }
                    rec
                }
                Err(e) => err_record(&id, &e),
            };
            out.push(rec);
        }
        // adjacent computed-truth checks
        let rec = match signature_of(&Surface::<f64>::Pairing { alpha: 2.0 }) {
            Ok(got) => {
                let mut rec = CheckRecord::new("levi/2.10/alpha=2")
                    .input("computed", format!("{got:?}"))
                    .note("indefinite for positive alpha away from the flat member alpha = 1");
                if got != (1, 1, 0) {
                    rec = rec.fail_with(format!("expected (1,1,0), computed {got:?}"));
                }
                rec
            }
            Err(e) => err_record("levi/2.10/alpha=2", &e),
        };
        out.push(rec);
    }

    if cfg.surface_selected("5.25") {
        let s = Surface::<f64>::PairingIm { alpha: -1.0, c: 0.0 };
        let rec = match signature_of(&s) {
            Ok(got) => {
                let mut rec = CheckRecord::new("levi/5.25-C0")
                    .input("computed", format!("{got:?}"))
                    .note("the zero-constant member Re(conj(z1) w) = 0 is Levi-flat");
                if got != (0, 0, 2) {
                    rec = rec.fail_with(format!("expected (0,0,2), computed {got:?}"));
                }
                rec
            }
            Err(e) => err_record("levi/5.25-C0", &e),
        };
        out.push(rec);
    }

    if cfg.surface_selected("5.7") {
        // degeneracy landscape of the raw exponential family
        #[allow(clippy::type_complexity)]
        let cases: [(f64, f64, (usize, usize, usize), &str); 4] = [
            (0.0, 0.5, (1, 0, 1), "C = 0 degenerates"),
            (1.0, 0.0, (1, 0, 1), "t7 = 0 degenerates"),
            (-1.0, 0.5, (1, 1, 0), "C < 0 is indefinite"),
            (1.0, 0.5, (2, 0, 0), "C > 0, t7 != 0 is strictly pseudoconvex"),
        ];
        for (c, t7, want, label) in cases {
            let id = format!("levi/5.7/C={c},t7={t7}");
            let s = Surface::<f64>::ExpFamily { c, t7 };
            let rec = match signature_of(&s) {
                Ok(got) => {
                    let mut rec = CheckRecord::new(&id)
                        .input("computed", format!("{got:?}"))
                        .note(label);
                    if got != want {
                        rec = rec.fail_with(format!("expected {want:?}, computed {got:?}"));
                    }
                    rec
                }
                Err(e) => err_record(&id, &e),
            };
            out.push(rec);
        }
    }
    out
}

// -------------------------------------------------------------------- ode

fn ode_campaign(cfg: &CampaignConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for check in ode_checks::<f64>() {
        let r = check.residual();
        let mut rec = CheckRecord::new(format!("ode/{}", check.id))
            .input("solution", check.solution)
            .judge("max_residual", r, cfg.tolerances.ode);
        for n in check.notes {
            rec = rec.note(*n);
        }
        out.push(rec);
    }
    out
}

// -------------------------------------------------------------------- fit

fn fit_campaign(cfg: &CampaignConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for problem in fit_problems::<f64>() {
        let id = format!("fit/{}", problem.id);
        let rec = match fit_parameters(&problem, cfg.seed) {
            Ok(r) => {
                let mut rec = CheckRecord::new(&id)
                    .input("multistarts", r.multistarts)
                    .input("winner", r.winner)
                    .value("iterations", r.iterations as f64)
                    .value("start_residual", r.start_residual)
                    .judge("residual", r.residual, problem.threshold);
                for (k, v) in &r.params {
                    rec = rec.value(&format!("param_{k}"), *v);
                }
                if let Some((k, v)) = &r.surface_param {
                    rec = rec.value(&format!("surface_{k}"), *v);
                }
                rec
            }
            Err(e) => err_record(&id, &e),
        };
        out.push(rec);
    }
    out
}

// --------------------------------------------------------- closure-system

fn closure_system_campaign(cfg: &CampaignConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    // equation counts
    {
        let (complex_count, real_count) = EQUATION_COUNTS;
        let probe = residual_vector(&vec![0.0f64; ASSIGNMENT_DIM]).len();
        let mut rec = CheckRecord::new("closure-system/counts")
            .value("complex_equations", complex_count as f64)
            .value("real_equations", real_count as f64)
            .note("ten matrix brackets with twelve complex entries each: 120 complex scalars, 240 realified");
        if probe != real_count || complex_count * 2 != real_count || complex_count != 120 {
            rec = rec.fail_with(format!("generator emits {probe} equations"));
        }
        out.push(rec);
    }
    for family in FIVE_DIM_FAMILIES {
        if !cfg.family_selected(family.id()) {
            continue;
        }
        // family residual under the generated function
        let id = format!("closure-system/residual/{}", family.id());
        let mut worst = 0.0f64;
        let mut failure = None;
        for index in 0..10u64 {
            let draw = sample_params::<f64>(family, cfg.range, cfg.seed, index)
                .and_then(|p| instantiate(family, &p))
                .and_then(|b| extract_assignment(&b))
                .map(|a| {
                    residual_vector(&a)
                        .iter()
                        .map(|x| x * x)
                        .sum::<f64>()
                        .sqrt()
                });
            match draw {
                Ok(n) => worst = worst.max(n),
                Err(e) => {
                    failure = Some(e);
                    break;
                }
            }
        }
        out.push(match failure {
            None => CheckRecord::new(&id)
                .input("draws", 10)
                .judge("max_residual_norm", worst, 1e-10),
            Some(e) => err_record(&id, &e),
        });

        // perturbation recovery: at least 8 of 10 seeded trials reach 1e-8
        let id = format!("closure-system/recovery/{}", family.id());
        let mut ok = 0usize;
        let mut worst_cost = 0.0f64;
        for index in 0..10u64 {
            match sample_params::<f64>(family, cfg.range, cfg.seed, index)
                .and_then(|p| recovery_trial(family, &p, cfg.seed, index))
            {
                Ok((cost, _)) => {
                    ok += 1;
                    worst_cost = worst_cost.max(cost);
                }
                Err(Error::NoConvergence { residual, .. }) => {
                    worst_cost = worst_cost.max(residual);
                }
                Err(_) => {}
            }
        }
        let mut rec = CheckRecord::new(&id)
            .input("trials", 10)
            .input("perturbation", 1e-2)
            .value("converged", ok as f64)
            .value("worst_residual", worst_cost);
        if ok < 8 {
            rec = rec.fail_with(format!("{ok}/10 recoveries converged"));
        }
        out.push(rec);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_are_byte_identical_across_reruns() {
        let cfg = CampaignConfig {
            samples: 10,
            ..CampaignConfig::default()
        };
        let kinds = [CampaignKind::Closure, CampaignKind::Constraints, CampaignKind::Ode];
        let (a, _) = run(&cfg, &kinds);
        let (b, _) = run(&cfg, &kinds);
        assert_eq!(a.canonical_json(), b.canonical_json());
    }

    #[test]
    fn summary_counts_match_records() {
        let cfg = CampaignConfig {
            samples: 5,
            ..CampaignConfig::default()
        };
        let (r, _) = run(&cfg, &[CampaignKind::Closure]);
        assert_eq!(r.summary.total, r.checks.len());
        assert_eq!(
            r.summary.passed + r.summary.failed + r.summary.inconclusive,
            r.summary.total
        );
        assert!(r.summary.failed == 0);
    }

    #[test]
    fn family_selector_filters_records() {
        let cfg = CampaignConfig {
            samples: 5,
            families: vec!["3.1".into()],
            ..CampaignConfig::default()
        };
        let (r, _) = run(&cfg, &[CampaignKind::Closure]);
        assert!(r.checks.iter().all(|c| c.id == "closure/3.1"));
        assert_eq!(r.checks.len(), 1);
    }
}
