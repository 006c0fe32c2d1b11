use serde::Serialize;

use super::RingSpec;
use crate::algebra::{Block, Polynomial};
use crate::grobner::{quotient_dimension, Dimension, GroebnerError};
use crate::verdict::{Check, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CiLevel {
    /// Relation degrees are nonpositive and `dim A = p+q+r-s`.
    One,
    /// Level one plus `dim A/I+ = q+r-s`.
    Two,
}

impl CiLevel {
    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(CiLevel::One),
            2 => Some(CiLevel::Two),
            _ => None,
        }
    }

    pub fn number(&self) -> u8 {
        match self {
            CiLevel::One => 1,
            CiLevel::Two => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CiReport {
    pub level: u8,
    pub relation_degrees: Vec<i64>,
    pub degrees_nonpositive: Check,
    pub dim_a: Option<Dimension>,
    pub complete_intersection: Check,
    pub dim_quotient_plus: Option<Dimension>,
    pub quotient_plus: Option<Check>,
}

impl CiReport {
    /// Checks in reporting order.
    pub fn checks(&self) -> Vec<&Check> {
        let mut out = vec![&self.degrees_nonpositive, &self.complete_intersection];
        out.extend(self.quotient_plus.as_ref());
        out
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|c| c.verdict.is_pass())
    }

    pub fn undetermined(&self) -> bool {
        self.checks()
            .iter()
            .any(|c| c.verdict == Verdict::Undetermined)
    }

    /// The relations form a regular sequence (certified by the dimension count).
    pub fn regular_sequence_certified(&self) -> bool {
        self.complete_intersection.verdict.is_pass()
    }
}

fn dimension_check(
    name: &str,
    result: Result<Dimension, GroebnerError>,
    expected: i64,
    label: &str,
) -> (Option<Dimension>, Check) {
    match result {
        Ok(dim) => {
            let ok = dim.finite().is_some_and(|d| d as i64 == expected);
            (
                Some(dim),
                Check::new(
                    name,
                    Verdict::from_bool(ok),
                    format!("{label} = {dim}, expected {expected}"),
                ),
            )
        }
        Err(e) => (
            None,
            Check::new(name, Verdict::Undetermined, format!("{label}: {e}")),
        ),
    }
}

/// Certifies the complete-intersection hypotheses on a presentation.
pub fn validate_ci_assumptions(spec: &RingSpec, level: CiLevel, budget: u64) -> CiReport {
    let (p, q, r, s) = (
        spec.p() as i64,
        spec.q() as i64,
        spec.r() as i64,
        spec.s() as i64,
    );
    let degrees = spec.relation_degrees();
    let positive: Vec<i64> = degrees.iter().copied().filter(|&d| d > 0).collect();
    let degrees_nonpositive = Check::new(
        "relation degrees <= 0",
        Verdict::from_bool(positive.is_empty()),
        if degrees.is_empty() {
            "no relations".to_string()
        } else {
            format!("relation degrees {degrees:?}")
        },
    );

    let relations = spec.relation_polys();
    let (dim_a, complete_intersection) = dimension_check(
        "complete intersection",
        quotient_dimension(spec.nvars(), &relations, spec.field, budget),
        p + q + r - s,
        "dim(A)",
    );

    let (dim_quotient_plus, quotient_plus) = match level {
        CiLevel::One => (None, None),
        CiLevel::Two => {
            let mut gens = relations;
            gens.extend(
                spec.weighting
                    .indices(Block::Positive)
                    .into_iter()
                    .map(|i| Polynomial::var(spec.nvars(), i)),
            );
            let (dim, check) = dimension_check(
                "dim(A/I+) = q+r-s",
                quotient_dimension(spec.nvars(), &gens, spec.field, budget),
                q + r - s,
                "dim(A/I+)",
            );
            (dim, Some(check))
        }
    };

    CiReport {
        level: level.number(),
        relation_degrees: degrees,
        degrees_nonpositive,
        dim_a,
        complete_intersection,
        dim_quotient_plus,
        quotient_plus,
    }
}
