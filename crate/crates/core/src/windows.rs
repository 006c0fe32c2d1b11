//! Window generators, window membership of twists, and free presentations
//! of the comparison functor on `O(i)`, all with cutoff `w = 0` unless stated.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Block, Monomial};
use crate::cohomology::{build_cech, cohomology_table, CohomologyError, Side};
use crate::complexes::{
    koszul_complex, module_text, taylor_resolution, truncate_generators, ComplexError, FreeComplex,
    FreeModule,
};
use crate::ring_spec::RingSpec;
use crate::verdict::{Check, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("the {0} block is empty")]
    EmptyBlock(Side),
    #[error("unsupported: images of O({twist}) for twists <= -eta+ = {bound} are not computed")]
    TwistTooNegative { twist: i64, bound: i64 },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// `(η+, η-)`.
pub fn eta(spec: &RingSpec) -> (i64, i64) {
    (spec.weighting.eta_plus(), spec.weighting.eta_minus())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowSpec {
    pub w: i64,
    pub side: Side,
    /// `k` for each generator `A(k)`.
    pub twists: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl WindowSpec {
    pub fn labels(&self) -> Vec<String> {
        self.twists
            .iter()
            .map(|&k| module_text(&FreeModule::new(vec![-k])))
            .collect()
    }
}

/// Twists split-generating the window with cutoff `w`.
///
/// Side plus: `A(-w), ..., A(-w-η++1)`. Side minus: `A(w), ..., A(w+η--1)`.
pub fn window_generators(spec: &RingSpec, w: i64, side: Side) -> Result<WindowSpec, WindowError> {
    let (len, sign) = match side {
        Side::Plus => (spec.weighting.eta_plus(), -1),
        Side::Minus => (spec.weighting.eta_minus(), 1),
    };
    if len < 1 {
        return Err(WindowError::EmptyBlock(side));
    }
    let twists = (0..len).map(|j| sign * (w + j)).collect();
    let note = (!spec.is_polynomial_ring()).then(|| {
        "split generation for a complete intersection is taken from the structure theorem, not recomputed"
            .to_string()
    });
    Ok(WindowSpec {
        w,
        side,
        twists,
        note,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    /// The module tested is `A(-twist)`.
    pub twist: i64,
    pub w: i64,
    pub top_weight: Option<i64>,
    pub vanishing: Check,
    pub generation: Check,
    pub verdict: Verdict,
}

/// Whether `A(-i)` lies in the window: `RΓ_{I+}(A(-i))` lives in weights `< w`
/// and `i >= w`. The first half is read off the cohomology table of `A`
/// computed over `weights`, shifted by `i`.
pub fn window_membership(
    spec: &RingSpec,
    i: i64,
    w: i64,
    weights: RangeInclusive<i64>,
) -> MembershipReport {
    let generation = Check::new(
        "generated in weights >= w",
        Verdict::from_bool(i >= w),
        format!("{i} >= {w}"),
    );
    let computed = build_cech(spec, Side::Plus, true).and_then(|cx| {
        let (lo, hi) = (*weights.start(), *weights.end());
        cohomology_table(&cx, (lo - i)..=(hi - i))
    });
    let (top_weight, vanishing) = match computed {
        Ok(table) => {
            let top = table.top_weight().map(|t| t + i);
            let ok = top.is_none_or(|t| t < w);
            let verdict = if ok && !table.complete {
                Verdict::Undetermined
            } else {
                Verdict::from_bool(ok)
            };
            let detail = match top {
                Some(t) => format!("top weight {t} vs cutoff {w}"),
                None => format!(
                    "no cohomology in weights {}..{}",
                    weights.start(),
                    weights.end()
                ),
            };
            (top, Check::new("local cohomology below w", verdict, detail))
        }
        Err(e) => (
            None,
            Check::new(
                "local cohomology below w",
                Verdict::NotApplicable,
                e.to_string(),
            ),
        ),
    };
    let verdict = match (vanishing.verdict, generation.verdict) {
        (_, Verdict::Fail) | (Verdict::Fail, _) => Verdict::Fail,
        (Verdict::Pass, Verdict::Pass) => Verdict::Pass,
        (v, _) => v,
    };
    MembershipReport {
        twist: i,
        w,
        top_weight,
        vanishing,
        generation,
        verdict,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorImage {
    pub twist: i64,
    pub complex: FreeComplex,
    pub minimized: bool,
}

impl FunctorImage {
    pub fn minimize(&self) -> FunctorImage {
        FunctorImage {
            twist: self.twist,
            complex: self.complex.minimize(),
            minimized: true,
        }
    }
}

/// Free presentation of the image of `O(i)` under the comparison functor with `w = 0`.
///
/// For `-η+ < i <= 0` this is `A(i)`. For `i > 0` it is the Taylor complex of
/// `(C+)_{>= i}` tensored with the Koszul complex of the relations, twisted by
/// `i`; for polynomial rings the Koszul factor is `A` and is omitted.
pub fn functor_image(spec: &RingSpec, i: i64) -> Result<FunctorImage, WindowError> {
    let eta_plus = spec.weighting.eta_plus();
    if spec.weighting.count(Block::Positive) == 0 {
        return Err(WindowError::EmptyBlock(Side::Plus));
    }
    if i <= -eta_plus {
        return Err(WindowError::TwistTooNegative {
            twist: i,
            bound: -eta_plus,
        });
    }
    let n = spec.nvars();
    let complex = if i <= 0 {
        FreeComplex::new(
            spec.weighting.clone(),
            spec.field,
            0,
            vec![FreeModule::labelled(vec![-i], vec![Monomial::one(n)])],
            Vec::new(),
        )?
    } else {
        let gens = truncate_generators(spec, i)?;
        let taylor = taylor_resolution(&gens, &spec.weighting, spec.field)?;
        let product = if spec.is_polynomial_ring() {
            taylor
        } else {
            taylor.tensor(&koszul_complex(spec)?)?
        };
        product.twist(i)
    };
    Ok(FunctorImage {
        twist: i,
        complex,
        minimized: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerComparison {
    pub multidegrees: usize,
    /// `weight -> (complex, truncated module)` over the box.
    pub by_weight: BTreeMap<i64, (i64, i64)>,
    pub check: Check,
}

/// Compares the Euler characteristic of a functor image with the truncated
/// module `((C+)_{>= i} ⊗ C-)(i)` in every multidegree of `[0, bound]^n`, then
/// aggregates both by weight. Polynomial rings only.
pub fn functor_euler_check(spec: &RingSpec, image: &FunctorImage, bound: i64) -> EulerComparison {
    let name = format!("Euler characteristic of image of O({})", image.twist);
    let offset = image.complex.weight_offset();
    let (Some(offset), true) = (offset, spec.is_polynomial_ring()) else {
        return EulerComparison {
            multidegrees: 0,
            by_weight: BTreeMap::new(),
            check: Check::new(
                name,
                Verdict::NotApplicable,
                "needs a multigraded image over a polynomial ring",
            ),
        };
    };
    let weighting = &spec.weighting;
    let positive = weighting.indices(Block::Positive);
    let n = weighting.len();
    let mut by_weight: BTreeMap<i64, (i64, i64)> = BTreeMap::new();
    let mut mismatches = 0usize;
    let mut count = 0usize;
    let mut exps = vec![0i64; n];
    loop {
        let d = Monomial::new(exps.clone());
        let chi = image
            .complex
            .euler_characteristic_at(&d)
            .expect("labels checked through weight_offset");
        let x_weight: i64 = positive
            .iter()
            .map(|&v| exps[v] * weighting.weight(v))
            .sum();
        let expected = i64::from(x_weight >= image.twist);
        if chi != expected {
            mismatches += 1;
        }
        let k = d.weight(weighting).expect("lengths agree") + offset;
        let e = by_weight.entry(k).or_insert((0, 0));
        e.0 += chi;
        e.1 += expected;
        count += 1;

        let mut v = 0;
        while v < n && exps[v] == bound {
            exps[v] = 0;
            v += 1;
        }
        if v == n {
            break;
        }
        exps[v] += 1;
    }
    let weight_mismatches = by_weight.values().filter(|(a, b)| a != b).count();
    EulerComparison {
        multidegrees: count,
        check: Check::new(
            name,
            Verdict::from_bool(mismatches == 0 && weight_mismatches == 0),
            format!(
                "{count} multidegrees in [0, {bound}]^{n}, {} weights, {mismatches} mismatches",
                by_weight.len()
            ),
        ),
        by_weight,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Weighting};
    use crate::ring_spec::BrownReidParams;

    fn k_x1x2y1() -> RingSpec {
        RingSpec::polynomial_ring(Weighting::unit(2, 1))
    }

    fn brown_reid() -> RingSpec {
        RingSpec::brown_reid(BrownReidParams::new(1, 2, 1, 1, 1, 1), Field::Rational).unwrap()
    }

    #[test]
    fn eta_values() {
        assert_eq!(eta(&k_x1x2y1()), (2, 1));
        assert_eq!(eta(&brown_reid()), (3, 6));
        assert_eq!(
            eta(&RingSpec::polynomial_ring(Weighting::from_blocks(
                &[1, 2],
                &[-1]
            ))),
            (3, 1)
        );
    }

    #[test]
    fn generators() {
        let w = window_generators(&k_x1x2y1(), 0, Side::Plus).unwrap();
        assert_eq!(w.labels(), vec!["A", "A(-1)"]);
        assert!(w.note.is_none());
        let w = window_generators(&k_x1x2y1(), 0, Side::Minus).unwrap();
        assert_eq!(w.labels(), vec!["A"]);
        let br = window_generators(&brown_reid(), 0, Side::Plus).unwrap();
        assert_eq!(br.labels(), vec!["A", "A(-1)", "A(-2)"]);
        assert!(br.note.is_some());
        let empty = RingSpec::polynomial_ring(Weighting::unit(2, 0));
        assert_eq!(
            window_generators(&empty, 0, Side::Minus),
            Err(WindowError::EmptyBlock(Side::Minus))
        );
    }

    #[test]
    fn membership_boundaries() {
        let spec = k_x1x2y1();
        let m = window_membership(&spec, 1, 0, -8..=8);
        assert_eq!(m.verdict, Verdict::Pass);
        assert_eq!(m.top_weight, Some(-1));
        let m = window_membership(&spec, 2, 0, -8..=8);
        assert_eq!(m.verdict, Verdict::Fail);
        assert_eq!(m.top_weight, Some(0));
        let m = window_membership(&spec, -1, 0, -8..=8);
        assert_eq!(m.verdict, Verdict::Fail);
        assert_eq!(m.generation.verdict, Verdict::Fail);
        for i in -3..6 {
            let member = window_membership(&spec, i, 0, -10..=10).verdict.is_pass();
            assert_eq!(member, (0..2).contains(&i), "i = {i}");
        }
    }

    #[test]
    fn functor_images_polynomial() {
        let spec = k_x1x2y1();
        for i in [0, -1] {
            let img = functor_image(&spec, i).unwrap();
            assert_eq!(
                img.complex.display().to_string(),
                format!("[{}]", if i == 0 { "A" } else { "A(-1)" })
            );
            assert!(functor_euler_check(&spec, &img, 4).check.verdict.is_pass());
        }
        let img = functor_image(&spec, 1).unwrap();
        assert_eq!(img.complex.display().to_string(), "[A(-1) -> A^2]");
        let cmp = functor_euler_check(&spec, &img, 5);
        assert!(cmp.check.verdict.is_pass(), "{}", cmp.check);
        assert!(matches!(
            functor_image(&spec, -2),
            Err(WindowError::TwistTooNegative {
                twist: -2,
                bound: -2
            })
        ));
    }

    #[test]
    fn functor_image_brown_reid() {
        let img = functor_image(&brown_reid(), 1).unwrap();
        assert_eq!(img.complex.ranks(), vec![2, 5, 4, 1]);
        img.complex.validate().unwrap();
        let cmp = functor_euler_check(&brown_reid(), &img, 2);
        assert_eq!(cmp.check.verdict, Verdict::NotApplicable);
    }
}
