use std::fmt;

use serde::Serialize;

use super::{signed_one, ComplexError, FreeComplex, FreeModule, PolyMatrix};
use crate::ring_spec::{CiReport, RingSpec};
use crate::verdict::{Check, Verdict};

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Koszul complex on the relations of `spec` over the ambient polynomial ring,
/// in degrees `[-s, 0]`.
///
/// Degree `-j` has one generator `e_S` per `j`-subset `S`, of weight
/// `Σ_{i∈S} deg f_i`, and `d(e_S) = Σ_k (-1)^k f_{s_k} e_{S∖s_k}`.
pub fn koszul_complex(spec: &RingSpec) -> Result<FreeComplex, ComplexError> {
    let relations = spec.relation_polys();
    let degrees = spec.relation_degrees();
    let s = relations.len();
    let nvars = spec.nvars();
    let bases: Vec<Vec<Vec<usize>>> = (0..=s).rev().map(|j| subsets(s, j)).collect();
    let modules = bases
        .iter()
        .map(|basis| {
            FreeModule::new(
                basis
                    .iter()
                    .map(|set| set.iter().map(|&i| degrees[i]).sum())
                    .collect(),
            )
        })
        .collect();
    let mut differentials = Vec::with_capacity(s);
    for w in bases.windows(2) {
        let (source, target) = (&w[0], &w[1]);
        let mut d = PolyMatrix::zero(target.len(), source.len(), nvars);
        for (col, set) in source.iter().enumerate() {
            for (k, &i) in set.iter().enumerate() {
                let face: Vec<usize> = set.iter().copied().filter(|&x| x != i).collect();
                let row = target
                    .iter()
                    .position(|t| *t == face)
                    .expect("face is a subset");
                d.set(row, col, relations[i].scale(&signed_one(k % 2 == 1)));
            }
        }
        differentials.push(d);
    }
    FreeComplex::new(
        spec.weighting.clone(),
        spec.field,
        -(s as i64),
        modules,
        differentials,
    )
}

/// Generator weights of the Koszul complex, as multisets from degree 0 down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorWeights(pub Vec<Vec<i64>>);

impl TorWeights {
    pub fn of(koszul: &FreeComplex) -> Self {
        TorWeights(koszul.twist_multisets())
    }

    pub fn all(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().flatten().copied()
    }
}

impl fmt::Display for TorWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|ws| ws.iter().map(i64::to_string).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "{{{}}}", parts.join("; "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonPositiveReport {
    pub tor_weights: TorWeights,
    pub check: Check,
}

/// Checks that every generator of the Koszul resolution has weight `<= 0`.
///
/// Only meaningful when the relations form a regular sequence, so the
/// caller must pass a report whose dimension count certified that.
pub fn nonpositive_presentation_check(
    spec: &RingSpec,
    ci: &CiReport,
) -> Result<NonPositiveReport, ComplexError> {
    if !ci.regular_sequence_certified() {
        return Err(ComplexError::CiNotCertified(
            ci.complete_intersection.detail.clone(),
        ));
    }
    let koszul = koszul_complex(spec)?;
    let tor_weights = TorWeights::of(&koszul);
    let bad: Vec<i64> = tor_weights.all().filter(|&t| t > 0).collect();
    let detail = if bad.is_empty() {
        format!("Tor weights {tor_weights}")
    } else {
        format!("Tor weights {tor_weights} include positive {bad:?}")
    };
    Ok(NonPositiveReport {
        check: Check::new(
            "Tor weights <= 0",
            Verdict::from_bool(bad.is_empty()),
            detail,
        ),
        tor_weights,
    })
}
