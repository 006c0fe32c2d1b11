//! Verification runs: ordered checks, serialized tables and a stable JSON form.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::Block;
use crate::cohomology::{
    build_cech, canonical_vanishing_check, closed_form_table, cohomology_table, duality_check,
    CohomologyError, CohomologyTable, Side,
};
use crate::complexes::nonpositive_presentation_check;
use crate::grobner::DEFAULT_BUDGET;
use crate::ring_spec::{flip_invariants, validate_ci_assumptions, CiLevel, RingSpec, ShiftSource};
use crate::verdict::{Check, Verdict};
use crate::windows::{
    functor_euler_check, functor_image, window_generators, window_membership, WindowError,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Hex SHA-256 of the canonical spec text.
pub fn spec_digest(spec: &RingSpec) -> String {
    hex::encode(Sha256::digest(spec.to_spec_text().as_bytes()))
}

/// `|i| <= max(8, η+ + η- + 2)`.
pub fn default_weight_range(spec: &RingSpec) -> RangeInclusive<i64> {
    let bound = 8.max(spec.weighting.eta_plus() + spec.weighting.eta_minus() + 2);
    -bound..=bound
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub version: String,
    pub digest: String,
    pub command: String,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<CohomologyTable>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl RunReport {
    pub fn new(spec: &RingSpec, command: impl Into<String>) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            version: TOOL_VERSION.to_string(),
            digest: spec_digest(spec),
            command: command.into(),
            verdict: Verdict::Pass,
            checks: Vec::new(),
            tables: Vec::new(),
            data: BTreeMap::new(),
            timing_ms: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
        self.verdict = self.aggregate();
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn insert(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report data serializes");
        self.data.insert(key.to_string(), value);
    }

    /// Fail beats undetermined beats pass; not-applicable checks are ignored.
    fn aggregate(&self) -> Verdict {
        let verdicts: Vec<Verdict> = self.checks.iter().map(|c| c.verdict).collect();
        if verdicts.contains(&Verdict::Fail) {
            Verdict::Fail
        } else if verdicts.contains(&Verdict::Undetermined) {
            Verdict::Undetermined
        } else {
            Verdict::Pass
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass | Verdict::NotApplicable => EXIT_PASS,
            Verdict::Fail => EXIT_FAIL,
            Verdict::Undetermined => EXIT_BUDGET,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable view of the same data.
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{} (version {}, spec {})\n",
            self.command,
            self.version,
            &self.digest[..12]
        );
        for c in &self.checks {
            out.push_str(&format!("{c}\n"));
        }
        for t in &self.tables {
            out.push_str(&render_table(t));
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("time: {ms} ms\n"));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}

/// One line per homological degree with a nonzero entry, `weight:dim` pairs.
pub fn render_table(t: &CohomologyTable) -> String {
    let mut by_h: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for row in t.rows() {
        by_h.entry(row.h)
            .or_default()
            .push(format!("{}:{}", row.i, row.dim));
    }
    let mut out = format!(
        "side {} weights {}..{}{}\n",
        t.side,
        t.lo,
        t.hi,
        if t.complete { "" } else { " (incomplete)" }
    );
    if by_h.is_empty() {
        out.push_str("  zero in range\n");
    }
    for (h, cells) in by_h {
        out.push_str(&format!("  H^{h}  {}\n", cells.join(" ")));
    }
    out
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub weights: Option<RangeInclusive<i64>>,
    /// Twists `i` whose functor images are built; defaults to `-η+ + 1 ..= 2`.
    pub functor_twists: Option<Vec<i64>>,
    pub budget: u64,
    /// Side of a box `[0, bound]^n` used for Euler-characteristic comparisons.
    pub euler_bound: i64,
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            weights: None,
            functor_twists: None,
            budget: DEFAULT_BUDGET,
            euler_bound: 3,
            timing: false,
        }
    }
}

fn na(name: &str, why: impl Into<String>) -> Check {
    Check::new(name, Verdict::NotApplicable, why)
}

fn error_check(name: &str, e: impl std::fmt::Display) -> Check {
    Check::new(name, Verdict::Fail, e.to_string())
}

/// All checks applicable to `spec`, in a fixed order.
pub fn run_suite(spec: &RingSpec, config: &SuiteConfig) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport::new(spec, "suite");
    report.push(Check::new(
        "spec valid",
        Verdict::Pass,
        format!(
            "p={} q={} r={} s={} over {}",
            spec.p(),
            spec.q(),
            spec.r(),
            spec.s(),
            spec.field
        ),
    ));

    // complete-intersection hypotheses
    let ci = (!spec.is_polynomial_ring())
        .then(|| validate_ci_assumptions(spec, CiLevel::Two, config.budget));
    match &ci {
        Some(ci) => {
            report.extend(ci.checks().into_iter().cloned());
            report.insert("ci", ci);
        }
        None => report.push(na("complete intersection", "no relations")),
    }

    let inv = flip_invariants(spec);
    report.insert("eta", (inv.eta_plus, inv.eta_minus));
    let shift = match (inv.a, inv.source, inv.kind_mismatch) {
        (Some(a), _, true) => Check::new(
            "canonical shift",
            Verdict::Fail,
            format!("weights give a = {a} but declared kind is {}", spec.kind),
        ),
        (Some(a), ShiftSource::PolynomialRing, false) => Check::new(
            "canonical shift",
            Verdict::Pass,
            format!("eta+ = {}, eta- = {}, a = {a}", inv.eta_plus, inv.eta_minus),
        ),
        (Some(a), _, false) => Check::new(
            "canonical shift",
            Verdict::Pass,
            format!(
                "eta+ = {}, eta- = {}, a = {a} from kind {}",
                inv.eta_plus, inv.eta_minus, spec.kind
            ),
        ),
        (None, _, _) => na("canonical shift", "relations present and no kind declared"),
    };
    report.push(shift);

    match &ci {
        Some(ci) => match nonpositive_presentation_check(spec, ci) {
            Ok(np) => {
                report.insert("tor_weights", &np.tor_weights);
                report.push(np.check);
            }
            Err(e) => {
                let verdict = if ci.undetermined() {
                    Verdict::Undetermined
                } else {
                    Verdict::NotApplicable
                };
                report.push(Check::new("Tor weights <= 0", verdict, e.to_string()));
            }
        },
        None => report.push(na("Tor weights <= 0", "polynomial ring")),
    }

    cohomology_section(spec, config, inv.a, &mut report);
    window_section(spec, config, &mut report);

    if config.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}

fn cohomology_section(
    spec: &RingSpec,
    config: &SuiteConfig,
    a: Option<i64>,
    report: &mut RunReport,
) {
    const NAMES: [&str; 4] = [
        "plus table matches closed form",
        "minus table matches closed form",
        "canonical vanishing",
        "degreewise duality",
    ];
    let skip = |report: &mut RunReport, why: &str| {
        for name in NAMES {
            report.push(na(name, why));
        }
    };
    if !spec.is_polynomial_ring() {
        return skip(report, "not applicable (quotient ring)");
    }
    if spec.r() > 0 {
        return skip(report, "not applicable (zero-weight variables)");
    }
    if spec.p() == 0 || spec.q() == 0 {
        return skip(report, "not applicable (empty sign block)");
    }
    let weights = config
        .weights
        .clone()
        .unwrap_or_else(|| default_weight_range(spec));
    let mut tables = Vec::new();
    for (side, name) in [(Side::Plus, NAMES[0]), (Side::Minus, NAMES[1])] {
        let result: Result<(CohomologyTable, CohomologyTable), CohomologyError> =
            build_cech(spec, side, true).and_then(|cx| {
                Ok((
                    cohomology_table(&cx, weights.clone())?,
                    closed_form_table(&spec.weighting, side, weights.clone())?,
                ))
            });
        match result {
            Ok((computed, closed)) => {
                let verdict = if !computed.complete {
                    Verdict::Undetermined
                } else {
                    Verdict::from_bool(computed.same_dims(&closed))
                };
                report.push(Check::new(
                    name,
                    verdict,
                    format!(
                        "{} nonzero entries over {}..{}",
                        computed.rows().len(),
                        computed.lo,
                        computed.hi
                    ),
                ));
                tables.push(computed);
            }
            Err(e) => report.push(error_check(name, e)),
        }
    }
    let a = a.expect("polynomial rings have a shift");
    if let [plus, minus] = &tables[..] {
        report.push(canonical_vanishing_check(plus, minus, a).check);
    } else {
        report.push(na(NAMES[2], "tables unavailable"));
    }
    match duality_check(&spec.weighting, spec.field, a, weights) {
        Ok(d) => {
            if !d.discrepancies.is_empty() {
                report.insert("duality_discrepancies", &d.discrepancies);
            }
            report.push(d.check);
        }
        Err(e) => report.push(error_check(NAMES[3], e)),
    }
    report.tables = tables;
}

fn window_section(spec: &RingSpec, config: &SuiteConfig, report: &mut RunReport) {
    let mut windows = BTreeMap::new();
    for side in [Side::Plus, Side::Minus] {
        let name = format!("window generators ({side})");
        match window_generators(spec, 0, side) {
            Ok(ws) => {
                report.push(Check::new(
                    name,
                    Verdict::Pass,
                    format!("{{{}}}", ws.labels().join(", ")),
                ));
                windows.insert(side.to_string(), ws);
            }
            Err(e) => report.push(na(&name, e.to_string())),
        }
    }
    report.insert("windows", &windows);

    let eta_plus = spec.weighting.eta_plus();
    if spec.is_polynomial_ring() && spec.r() == 0 && spec.p() > 0 {
        let weights = config
            .weights
            .clone()
            .unwrap_or_else(|| default_weight_range(spec));
        let mut wrong = Vec::new();
        let mut undetermined = false;
        for i in -1..=eta_plus {
            let m = window_membership(spec, i, 0, weights.clone());
            undetermined |= m.verdict == Verdict::Undetermined;
            if m.verdict.is_pass() != (0..eta_plus).contains(&i) {
                wrong.push(i);
            }
        }
        let verdict = if !wrong.is_empty() {
            Verdict::Fail
        } else if undetermined {
            Verdict::Undetermined
        } else {
            Verdict::Pass
        };
        report.push(Check::new(
            "window length",
            verdict,
            format!("A(-i) in the window exactly for 0 <= i < {eta_plus}; mismatches {wrong:?}"),
        ));
    } else {
        report.push(na(
            "window length",
            "needs a polynomial ring without zero weights",
        ));
    }

    if spec.weighting.count(Block::Positive) == 0 {
        report.push(na("functor images", "empty positive block"));
        return;
    }
    let twists = config
        .functor_twists
        .clone()
        .unwrap_or_else(|| ((1 - eta_plus)..=2).collect());
    let mut images = BTreeMap::new();
    for i in twists {
        let name = format!("functor image of O({i})");
        match functor_image(spec, i) {
            Ok(img) => {
                let valid = img.complex.validate();
                images.insert(i.to_string(), img.complex.display().to_string());
                report.push(Check::new(
                    &name,
                    Verdict::from_bool(valid.is_ok()),
                    match valid {
                        Ok(()) => format!(
                            "{} with ranks {:?}",
                            img.complex.display(),
                            img.complex.ranks()
                        ),
                        Err(e) => e.to_string(),
                    },
                ));
                if spec.is_polynomial_ring() {
                    report.push(functor_euler_check(spec, &img, config.euler_bound).check);
                }
            }
            Err(WindowError::TwistTooNegative { .. }) => {
                report.push(na(&name, "twist below the computable range"))
            }
            Err(e) => report.push(error_check(&name, e)),
        }
    }
    report.insert("functor_images", &images);
}
