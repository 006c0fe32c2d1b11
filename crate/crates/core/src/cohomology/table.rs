use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::Serialize;

use super::{CechComplex, CohomologyError, Side};
use crate::algebra::{count_monomials, Block, ExponentBox, Monomial, Weighting};
use crate::verdict::{Check, Verdict};

/// Upper bound on multidegrees enumerated for a single table.
pub const MAX_CANDIDATES: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub h: usize,
    pub i: i64,
    pub dim: u64,
}

/// A multidegree with nonzero cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultigradedEntry {
    pub h: usize,
    pub multidegree: Vec<i64>,
    pub dim: usize,
}

/// Weightwise dimensions `dim H^h_i` over a range of weights.
///
/// Serializes as `{side, lo, hi, weights: [{h, i, dim}], complete}` with
/// only nonzero rows listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub side: Side,
    pub lo: i64,
    pub hi: i64,
    /// Nonzero dimensions keyed by `(h, i)`.
    dims: BTreeMap<(usize, i64), u64>,
    pub entries: Vec<MultigradedEntry>,
    /// False when enumeration stopped at [`MAX_CANDIDATES`].
    pub complete: bool,
}

impl CohomologyTable {
    fn empty(side: Side, weights: &RangeInclusive<i64>) -> Self {
        Self {
            side,
            lo: *weights.start(),
            hi: *weights.end(),
            dims: BTreeMap::new(),
            entries: Vec::new(),
            complete: true,
        }
    }

    fn add(&mut self, h: usize, i: i64, dim: u64) {
        if dim > 0 {
            *self.dims.entry((h, i)).or_insert(0) += dim;
        }
    }

    pub fn dim(&self, h: usize, i: i64) -> u64 {
        self.dims.get(&(h, i)).copied().unwrap_or(0)
    }

    /// Dimension at a possibly negative homological degree.
    pub fn dim_at(&self, h: i64, i: i64) -> u64 {
        usize::try_from(h).map_or(0, |h| self.dim(h, i))
    }

    pub fn covers(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi
    }

    /// Nonzero rows ordered by `(h, i)`.
    pub fn rows(&self) -> Vec<TableRow> {
        self.dims
            .iter()
            .map(|(&(h, i), &dim)| TableRow { h, i, dim })
            .collect()
    }

    /// Largest weight with nonzero cohomology in range.
    pub fn top_weight(&self) -> Option<i64> {
        self.dims.keys().map(|&(_, i)| i).max()
    }

    /// Smallest weight with nonzero cohomology in range.
    pub fn bottom_weight(&self) -> Option<i64> {
        self.dims.keys().map(|&(_, i)| i).min()
    }

    /// Same dimensions over the same range, ignoring multigraded detail.
    pub fn same_dims(&self, other: &CohomologyTable) -> bool {
        self.side == other.side
            && self.lo == other.lo
            && self.hi == other.hi
            && self.dims == other.dims
    }
}

impl Serialize for CohomologyTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View {
            side: Side,
            lo: i64,
            hi: i64,
            weights: Vec<TableRow>,
            complete: bool,
        }
        View {
            side: self.side,
            lo: self.lo,
            hi: self.hi,
            weights: self.rows(),
            complete: self.complete,
        }
        .serialize(serializer)
    }
}

fn reject_zero_weights(weighting: &Weighting) -> Result<(), CohomologyError> {
    match weighting.indices(Block::Zero).first() {
        Some(&v) => Err(CohomologyError::ZeroWeight(weighting.name(v).to_string())),
        None => Ok(()),
    }
}

/// Nonnegative vectors `c` with `Σ |w_v| c_v = target`, all weights nonzero.
fn weighted_compositions(abs_weights: &[i64], target: i64, limit: usize) -> (Vec<Vec<i64>>, bool) {
    fn go(
        w: &[i64],
        pos: usize,
        left: i64,
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
        limit: usize,
    ) -> bool {
        if pos == w.len() {
            if left == 0 {
                if out.len() >= limit {
                    return false;
                }
                out.push(cur.clone());
            }
            return true;
        }
        let mut e = 0;
        while e * w[pos] <= left {
            cur[pos] = e;
            if !go(w, pos + 1, left - e * w[pos], cur, out, limit) {
                return false;
            }
            e += 1;
        }
        cur[pos] = 0;
        true
    }
    let mut out = Vec::new();
    if target < 0 {
        return (out, true);
    }
    let mut cur = vec![0; abs_weights.len()];
    let complete = go(abs_weights, 0, target, &mut cur, &mut out, limit);
    (out, complete)
}

/// `dim H^h_i` of the extended Čech complex for every weight in `weights`.
///
/// In multidegree `d`, if some inverting variable has `d_v >= 0` the terms
/// containing `d` form a cone over that variable and are acyclic; if some
/// other variable has `d_v < 0` there are no terms at all. The remaining
/// candidates (inverting exponents `<= -1`, others `>= 0`) are finite per
/// weight once zero-weight variables are excluded, and each is evaluated
/// through [`CechComplex::multidegree_cohomology`].
pub fn cohomology_table(
    cech: &CechComplex,
    weights: RangeInclusive<i64>,
) -> Result<CohomologyTable, CohomologyError> {
    if !cech.is_extended() {
        return Err(CohomologyError::PlainTable);
    }
    let weighting = cech.weighting();
    reject_zero_weights(weighting)?;
    let n = weighting.len();
    let inverting: Vec<bool> = (0..n).map(|v| cech.inverting().contains(&v)).collect();
    let abs: Vec<i64> = weighting.weights().iter().map(|w| w.abs()).collect();
    let eta = match cech.side() {
        Side::Plus => weighting.eta_plus(),
        Side::Minus => weighting.eta_minus(),
    };
    let mut table = CohomologyTable::empty(cech.side(), &weights);
    let mut budget = MAX_CANDIDATES;
    for i in weights {
        let target = match cech.side() {
            Side::Plus => -i - eta,
            Side::Minus => i - eta,
        };
        let (candidates, complete) = weighted_compositions(&abs, target, budget);
        budget -= candidates.len();
        table.complete &= complete;
        for c in candidates {
            let d: Vec<i64> = c
                .iter()
                .zip(&inverting)
                .map(|(&e, &inv)| if inv { -e - 1 } else { e })
                .collect();
            let mono = Monomial::new(d);
            debug_assert_eq!(mono.weight(weighting).ok(), Some(i));
            for (h, dim) in cech.multidegree_cohomology(&mono)?.into_iter().enumerate() {
                if dim > 0 {
                    table.add(h, i, dim as u64);
                    table.entries.push(MultigradedEntry {
                        h,
                        multidegree: mono.exponents().to_vec(),
                        dim,
                    });
                }
            }
        }
        if !table.complete {
            break;
        }
    }
    Ok(table)
}

/// Hilbert function of the polynomial ring on one sign block at weight `k`.
fn block_hilbert(weighting: &Weighting, block: Block, k: i64) -> Result<u64, CohomologyError> {
    let vars = weighting.indices(block);
    let sub = Weighting::new(
        vars.iter()
            .map(|&v| weighting.name(v).to_string())
            .collect(),
        vars.iter().map(|&v| weighting.weight(v)).collect(),
    )?;
    Ok(count_monomials(
        &sub,
        k,
        &ExponentBox::cube(vars.len(), k.abs()),
    )?)
}

/// The closed form `k[y] ⊗ k[x]*(η+)[-p]` (side plus) or
/// `k[x] ⊗ k[y]*(-η-)[-q]` (side minus), as a table.
pub fn closed_form_table(
    weighting: &Weighting,
    side: Side,
    weights: RangeInclusive<i64>,
) -> Result<CohomologyTable, CohomologyError> {
    reject_zero_weights(weighting)?;
    let (own, other) = (side.block(), side.opposite().block());
    let degree = weighting.count(own);
    if degree == 0 {
        return Err(CohomologyError::EmptyBlock(side));
    }
    let mut table = CohomologyTable::empty(side, &weights);
    for i in weights {
        let mut dim = 0;
        match side {
            Side::Plus => {
                let eta = weighting.eta_plus();
                for k in (i + eta)..=0 {
                    dim += block_hilbert(weighting, other, k)?
                        * block_hilbert(weighting, own, k - i - eta)?;
                }
            }
            Side::Minus => {
                let eta = weighting.eta_minus();
                for k in 0..=(i - eta) {
                    dim += block_hilbert(weighting, other, k)?
                        * block_hilbert(weighting, own, eta - i + k)?;
                }
            }
        }
        table.add(degree, i, dim);
    }
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub a: i64,
    pub top_plus: Option<i64>,
    pub bottom_minus: Option<i64>,
    pub check: Check,
}

/// `RΓ_{I+}` in weights `< a` and `RΓ_{I-}` in weights `> a`, over the tables' ranges.
pub fn canonical_vanishing_check(
    plus: &CohomologyTable,
    minus: &CohomologyTable,
    a: i64,
) -> VanishingReport {
    let top_plus = plus.top_weight();
    let bottom_minus = minus.bottom_weight();
    let ok = top_plus.is_none_or(|t| t < a) && bottom_minus.is_none_or(|b| b > a);
    let show = |w: Option<i64>| w.map_or("none".to_string(), |w| w.to_string());
    let mut verdict = Verdict::from_bool(ok);
    if ok && !(plus.complete && minus.complete) {
        verdict = Verdict::Undetermined;
    }
    VanishingReport {
        a,
        top_plus,
        bottom_minus,
        check: Check::new(
            format!("canonical vanishing at a = {a}"),
            verdict,
            format!(
                "plus top weight {} over [{}, {}], minus bottom weight {} over [{}, {}]",
                show(top_plus),
                plus.lo,
                plus.hi,
                show(bottom_minus),
                minus.lo,
                minus.hi
            ),
        ),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub h: i64,
    pub i: i64,
    pub plus: u64,
    pub minus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub n: i64,
    pub a: i64,
    pub compared: usize,
    pub discrepancies: Vec<Discrepancy>,
    pub check: Check,
}

/// Compares `dim H^{h+1}_{i+a}` on side plus with `dim H^{n-h}_{-i}` on side
/// minus, `n = p + q - 1`, for every `i` in `weights` and every `h` where either
/// side can be nonzero.
pub fn duality_check(
    weighting: &Weighting,
    field: crate::algebra::Field,
    a: i64,
    weights: RangeInclusive<i64>,
) -> Result<DualityReport, CohomologyError> {
    let (p, q) = (
        weighting.count(Block::Positive),
        weighting.count(Block::Negative),
    );
    let plus_cx = CechComplex::new(weighting.clone(), field, Side::Plus, true)?;
    let minus_cx = CechComplex::new(weighting.clone(), field, Side::Minus, true)?;
    let (lo, hi) = (*weights.start(), *weights.end());
    let plus = cohomology_table(&plus_cx, (lo + a)..=(hi + a))?;
    let minus = cohomology_table(&minus_cx, (-hi)..=(-lo))?;
    let n = (p + q) as i64 - 1;
    let mut compared = 0;
    let mut discrepancies = Vec::new();
    for i in weights {
        for h in -1..=n + 1 {
            let (dp, dm) = (plus.dim_at(h + 1, i + a), minus.dim_at(n - h, -i));
            compared += 1;
            if dp != dm {
                discrepancies.push(Discrepancy {
                    h,
                    i,
                    plus: dp,
                    minus: dm,
                });
            }
        }
    }
    let verdict = if !discrepancies.is_empty() {
        Verdict::Fail
    } else if plus.complete && minus.complete {
        Verdict::Pass
    } else {
        Verdict::Undetermined
    };
    let detail = format!(
        "{compared} (h, i) pairs over [{lo}, {hi}], n = {n}, {} discrepancies",
        discrepancies.len()
    );
    Ok(DualityReport {
        n,
        a,
        compared,
        discrepancies,
        check: Check::new("degreewise duality", verdict, detail),
    })
}
