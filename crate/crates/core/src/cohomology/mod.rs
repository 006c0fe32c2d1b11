//! Local cohomology of weighted polynomial rings along `I+` or `I-`,
//! computed one multidegree at a time from the Čech complex.
//!
//! Each term of the Čech complex is a localization `A_{x_σ}`, and its piece
//! in a Laurent multidegree `d` is one-dimensional or zero. So the complex in
//! multidegree `d` is a cube of sign-weighted incidences whose cohomology is a
//! rank computation.

mod table;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{check_permutation, AlgebraError, Block, Field, Monomial, Weighting};
use crate::ring_spec::RingSpec;

pub use table::{
    canonical_vanishing_check, closed_form_table, cohomology_table, duality_check, CohomologyTable,
    Discrepancy, DualityReport, MultigradedEntry, TableRow, VanishingReport, MAX_CANDIDATES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error(
        "local cohomology tables are only computed for polynomial rings; this ring has relations"
    )]
    RelationsUnsupported,
    #[error("the {0} block is empty, so the Čech complex is degenerate")]
    EmptyBlock(Side),
    #[error("variable `{0}` has weight zero, so weight pieces are infinite-dimensional")]
    ZeroWeight(String),
    #[error("tables are only enumerated for the extended Čech complex")]
    PlainTable,
    #[error("multidegree has {found} entries, ring has {expected} variables")]
    Length { expected: usize, found: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn block(&self) -> Block {
        match self {
            Side::Plus => Block::Positive,
            Side::Minus => Block::Negative,
        }
    }

    pub fn opposite(&self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
        })
    }
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plus" | "+" => Ok(Side::Plus),
            "minus" | "-" => Ok(Side::Minus),
            _ => Err(format!("unknown side `{s}` (expected plus or minus)")),
        }
    }
}

/// The (extended) Čech complex of `A` along the variables of one sign block.
///
/// Extended: term `σ` (any subset of the inverting variables) sits in degree
/// `|σ|`, with `σ = ∅` giving `A` itself. Plain: `σ` nonempty, in degree `|σ| - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechComplex {
    weighting: Weighting,
    side: Side,
    inverting: Vec<usize>,
    extended: bool,
    field: Field,
}

/// Builds the Čech complex of `spec` along `I+` or `I-`.
pub fn build_cech(
    spec: &RingSpec,
    side: Side,
    extended: bool,
) -> Result<CechComplex, CohomologyError> {
    if !spec.is_polynomial_ring() {
        return Err(CohomologyError::RelationsUnsupported);
    }
    CechComplex::new(spec.weighting.clone(), spec.field, side, extended)
}

impl CechComplex {
    pub fn new(
        weighting: Weighting,
        field: Field,
        side: Side,
        extended: bool,
    ) -> Result<Self, CohomologyError> {
        let inverting = weighting.indices(side.block());
        if inverting.is_empty() {
            return Err(CohomologyError::EmptyBlock(side));
        }
        Ok(Self {
            weighting,
            side,
            inverting,
            extended,
            field,
        })
    }

    /// Same complex with the inverting variables taken in the order `perm`.
    /// Only the signs of the differential change.
    pub fn with_inverting_order(&self, perm: &[usize]) -> Result<Self, CohomologyError> {
        check_permutation(perm, self.inverting.len())?;
        let mut out = self.clone();
        out.inverting = perm.iter().map(|&k| self.inverting[k]).collect();
        Ok(out)
    }

    pub fn weighting(&self) -> &Weighting {
        &self.weighting
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    pub fn inverting(&self) -> &[usize] {
        &self.inverting
    }

    /// Number of homological degrees, starting at 0.
    pub fn length(&self) -> usize {
        if self.extended {
            self.inverting.len() + 1
        } else {
            self.inverting.len()
        }
    }

    fn degree_of(&self, size: usize) -> Option<usize> {
        if self.extended {
            Some(size)
        } else {
            size.checked_sub(1)
        }
    }

    /// Subsets (as bitmasks over `inverting`) whose localization has a
    /// nonzero piece in multidegree `d`, grouped by homological degree.
    fn terms(&self, d: &Monomial) -> Result<Vec<Vec<u32>>, CohomologyError> {
        if d.len() != self.weighting.len() {
            return Err(CohomologyError::Length {
                expected: self.weighting.len(),
                found: d.len(),
            });
        }
        let mut out = vec![Vec::new(); self.length()];
        let mut required = 0u32;
        for v in 0..d.len() {
            if d.exponent(v) >= 0 {
                continue;
            }
            match self.inverting.iter().position(|&u| u == v) {
                Some(k) => required |= 1 << k,
                None => return Ok(out),
            }
        }
        let p = self.inverting.len();
        for mask in 0u32..(1 << p) {
            if mask & required != required {
                continue;
            }
            if let Some(deg) = self.degree_of(mask.count_ones() as usize) {
                out[deg].push(mask);
            }
        }
        Ok(out)
    }

    /// Dimension of each term in multidegree `d`.
    pub fn term_dimensions(&self, d: &Monomial) -> Result<Vec<usize>, CohomologyError> {
        Ok(self.terms(d)?.iter().map(Vec::len).collect())
    }

    /// Dimension of `H^h` in multidegree `d`, for `h = 0..length()`.
    pub fn multidegree_cohomology(&self, d: &Monomial) -> Result<Vec<usize>, CohomologyError> {
        let terms = self.terms(d)?;
        let mut ranks = vec![0usize; terms.len()];
        for k in 0..terms.len().saturating_sub(1) {
            ranks[k] = self.incidence_rank(&terms[k], &terms[k + 1]);
        }
        Ok((0..terms.len())
            .map(|k| {
                let into = if k == 0 { 0 } else { ranks[k - 1] };
                terms[k].len() - ranks[k] - into
            })
            .collect())
    }

    /// Rank of the differential between consecutive term lists.
    fn incidence_rank(&self, source: &[u32], target: &[u32]) -> usize {
        if source.is_empty() || target.is_empty() {
            return 0;
        }
        let one = BigRational::one();
        let rows: Vec<Vec<BigRational>> = target
            .iter()
            .map(|&t| {
                source
                    .iter()
                    .map(|&s| {
                        let added = t & !s;
                        if s & !t != 0 || added.count_ones() != 1 {
                            return BigRational::zero();
                        }
                        let before = (s & (added - 1)).count_ones();
                        if before % 2 == 0 {
                            one.clone()
                        } else {
                            -one.clone()
                        }
                    })
                    .collect()
            })
            .collect();
        self.field.rank(rows)
    }
}
