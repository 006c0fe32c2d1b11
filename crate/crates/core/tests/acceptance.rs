//! Acceptance gate: one line per criterion, nonzero exit if any fails.
//!
//! All comparisons are exact (integer dimensions, ranks and weights). The only
//! tolerances are wall-clock limits, pinned below.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gradedflip_core::algebra::{Field, Monomial, Weighting};
use gradedflip_core::cohomology::{
    canonical_vanishing_check, closed_form_table, cohomology_table, duality_check, CechComplex,
    Side,
};
use gradedflip_core::complexes::{
    koszul_complex, nonpositive_presentation_check, taylor_resolution, truncate_generators,
    TorWeights,
};
use gradedflip_core::grobner::{buchberger, Dimension, DEFAULT_BUDGET};
use gradedflip_core::report::{run_suite, SuiteConfig};
use gradedflip_core::ring_spec::{validate_ci_assumptions, BrownReidParams, CiLevel, RingSpec};
use gradedflip_core::verdict::Verdict;
use gradedflip_core::windows::{eta, functor_euler_check, functor_image, window_generators};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use common::{box_points, brute_force_truncation, configurations, random_ideal, random_polynomial};

const CLOSED_FORM_LIMIT: Duration = Duration::from_secs(30);
const BROWN_REID_LIMIT: Duration = Duration::from_secs(60);
const WEIGHTS: std::ops::RangeInclusive<i64> = -8..=8;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn table(
    w: &Weighting,
    side: Side,
    range: std::ops::RangeInclusive<i64>,
) -> gradedflip_core::cohomology::CohomologyTable {
    let cx = CechComplex::new(w.clone(), Field::Rational, side, true).unwrap();
    cohomology_table(&cx, range).unwrap()
}

fn closed_form() -> Outcome {
    let start = Instant::now();
    let mut entries = 0;
    for (name, w) in configurations() {
        for side in [Side::Plus, Side::Minus] {
            let computed = table(&w, side, WEIGHTS);
            let expected = closed_form_table(&w, side, WEIGHTS).unwrap();
            ensure(computed.complete, || {
                format!("{name} {side}: enumeration incomplete")
            })?;
            ensure(computed.same_dims(&expected), || {
                format!(
                    "{name} {side}: computed {:?} vs closed form {:?}",
                    computed.rows(),
                    expected.rows()
                )
            })?;
            entries += computed.rows().len();
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < CLOSED_FORM_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "7 configurations x 2 sides, {entries} nonzero (h, i) entries equal, {elapsed:.2?}"
    ))
}

fn vanishing() -> Outcome {
    for (name, w) in configurations() {
        let (plus, minus) = (
            table(&w, Side::Plus, WEIGHTS),
            table(&w, Side::Minus, WEIGHTS),
        );
        let a = w.eta_minus() - w.eta_plus();
        let v = canonical_vanishing_check(&plus, &minus, a);
        ensure(v.top_plus == Some(-w.eta_plus()), || {
            format!("{name}: plus top {:?}", v.top_plus)
        })?;
        ensure(v.bottom_minus == Some(w.eta_minus()), || {
            format!("{name}: minus bottom {:?}", v.bottom_minus)
        })?;
        ensure(v.check.verdict.is_pass(), || format!("{name}: {}", v.check))?;
    }
    Ok("top weight -eta+ and bottom weight eta- on all 7 configurations, vanishing at a = eta- - eta+".into())
}

fn duality() -> Outcome {
    let mut compared = 0;
    for (name, w) in configurations() {
        let a = w.eta_minus() - w.eta_plus();
        let d = duality_check(&w, Field::Rational, a, WEIGHTS).unwrap();
        ensure(d.discrepancies.is_empty(), || {
            format!("{name}: {:?}", d.discrepancies)
        })?;
        ensure(d.check.verdict.is_pass(), || format!("{name}: {}", d.check))?;
        compared += d.compared;
    }
    // (p, q) = (1, 1), (h, i) = (0, -3): n = 1, a = 0
    let w = Weighting::unit(1, 1);
    let plus = table(&w, Side::Plus, WEIGHTS).dim(1, -3);
    let minus = table(&w, Side::Minus, WEIGHTS).dim(1, 3);
    ensure(plus == 3 && minus == 3, || {
        format!("spot value {plus} = {minus}, expected 3 = 3")
    })?;
    Ok(format!(
        "{compared} (h, i) pairs, 0 discrepancies; spot (1,1) (0,-3): {plus} = {minus}"
    ))
}

fn brown_reid() -> Outcome {
    let start = Instant::now();
    let spec =
        RingSpec::brown_reid(BrownReidParams::new(1, 2, 1, 1, 1, 1), Field::Rational).unwrap();
    ensure(spec.relation_degrees() == vec![-2, 0], || {
        format!("degrees {:?}", spec.relation_degrees())
    })?;
    let ci = validate_ci_assumptions(&spec, CiLevel::Two, DEFAULT_BUDGET);
    let expected_dim = spec.p() + spec.q() + spec.r() - spec.s();
    ensure(
        ci.dim_a == Some(Dimension::Finite(4)) && expected_dim == 4,
        || format!("dim(A) {:?}", ci.dim_a),
    )?;
    ensure(ci.dim_quotient_plus == Some(Dimension::Finite(2)), || {
        format!("dim(A/I+) {:?}", ci.dim_quotient_plus)
    })?;
    ensure(ci.passed(), || format!("{ci:?}"))?;
    let np = nonpositive_presentation_check(&spec, &ci).map_err(|e| e.to_string())?;
    ensure(np.check.verdict.is_pass(), || np.check.to_string())?;
    ensure(
        np.tor_weights == TorWeights(vec![vec![0], vec![-2, 0], vec![-2]]),
        || format!("Tor weights {}", np.tor_weights),
    )?;
    ensure(eta(&spec).0 == 3, || format!("eta {:?}", eta(&spec)))?;
    let window = window_generators(&spec, 0, Side::Plus).unwrap().labels();
    ensure(window == ["A", "A(-1)", "A(-2)"], || {
        format!("window {window:?}")
    })?;

    let mut grid = 0;
    for lambda in 1..=4u32 {
        for mu in 1..=4u32 {
            if num_integer::gcd(lambda, mu) != 1 {
                continue;
            }
            for code in 0..16u32 {
                let bit = |k: u32| 1 + ((code >> k) & 1);
                let params = BrownReidParams::new(lambda, mu, bit(0), bit(1), bit(2), bit(3));
                let spec =
                    RingSpec::brown_reid(params, Field::Rational).map_err(|e| e.to_string())?;
                let report = run_suite(&spec, &SuiteConfig::default());
                ensure(report.verdict == Verdict::Pass, || {
                    format!("{params:?}:\n{}", report.render_text())
                })?;
                let ws = window_generators(&spec, 0, Side::Plus).unwrap();
                ensure(ws.twists.len() as u32 == lambda + mu, || {
                    format!("{params:?}: window {:?}", ws.twists)
                })?;
                grid += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < BROWN_REID_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "degrees (-2, 0), dim(A) = 4 = p+q+r-s, dim(A/I+) = 2, Tor {{0; -2, 0; -2}}, window {{A, A(-1), A(-2)}}; {grid} grid suites green, {elapsed:.2?}"
    ))
}

fn functor_images() -> Outcome {
    let spec = RingSpec::polynomial_ring(Weighting::unit(2, 1));
    for (i, shown) in [(0, "[A]"), (-1, "[A(-1)]")] {
        let img = functor_image(&spec, i).map_err(|e| e.to_string())?;
        ensure(img.complex.display().to_string() == shown, || {
            format!("O({i}) -> {}", img.complex.display())
        })?;
    }
    let img = functor_image(&spec, 1).map_err(|e| e.to_string())?;
    ensure(
        img.complex.display().to_string() == "[A(-1) -> A^2]",
        || format!("O(1) -> {}", img.complex.display()),
    )?;
    // box [0, 10]^3 reaches every weight in [-8, 8] after the twist
    let cmp = functor_euler_check(&spec, &img, 10);
    ensure(cmp.check.verdict.is_pass(), || cmp.check.to_string())?;
    for k in WEIGHTS {
        let (complex, module) = cmp.by_weight.get(&k).copied().unwrap_or((0, 0));
        ensure(complex == module && module > 0, || {
            format!("weight {k}: {complex} vs {module}")
        })?;
    }
    Ok(format!(
        "O(0) -> A, O(-1) -> A(-1), O(1) -> [A(-1) -> A^2]; Euler characteristic equal in {} multidegrees, all weights |i| <= 8",
        cmp.multidegrees
    ))
}

fn property_suites() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let mut complexes = 0;

    // d^2 = 0: every complex below went through the validating constructor;
    // re-validate derived ones explicitly
    for (_, w) in configurations() {
        let spec = RingSpec::polynomial_ring(w.clone());
        for i in (1 - w.eta_plus())..=3 {
            let img = functor_image(&spec, i).map_err(|e| e.to_string())?;
            for cx in [
                img.complex.clone(),
                img.complex.dualize(),
                img.complex.shift(1),
                img.complex.minimize(),
            ] {
                cx.validate().map_err(|e| e.to_string())?;
                complexes += 1;
            }
        }
    }
    for (l, m) in [(1, 2), (2, 3), (3, 4)] {
        let spec =
            RingSpec::brown_reid(BrownReidParams::new(l, m, 2, 1, 2, 1), Field::Rational).unwrap();
        let k = koszul_complex(&spec).map_err(|e| e.to_string())?;
        let img = functor_image(&spec, 2).map_err(|e| e.to_string())?;
        for cx in [
            k.clone(),
            k.dualize(),
            img.complex.clone(),
            img.complex.twist(-2),
        ] {
            cx.validate().map_err(|e| e.to_string())?;
            complexes += 1;
        }
    }

    // generator-order independence
    let mut permutations = 0;
    for (name, w) in configurations() {
        for side in [Side::Plus, Side::Minus] {
            let reference = table(&w, side, WEIGHTS);
            for _ in 0..5 {
                let mut perm: Vec<usize> = (0..w.len()).collect();
                perm.shuffle(&mut rng);
                let cx = CechComplex::new(w.permuted(&perm).unwrap(), Field::Rational, side, true)
                    .unwrap();
                let mut order: Vec<usize> = (0..cx.inverting().len()).collect();
                order.shuffle(&mut rng);
                let t =
                    cohomology_table(&cx.with_inverting_order(&order).unwrap(), WEIGHTS).unwrap();
                ensure(t.same_dims(&reference), || {
                    format!("{name} {side}: permutation {perm:?} changed the table")
                })?;
                permutations += 1;
            }
        }
    }

    // Euler identity and RΓ -> A -> Č triangle, per multidegree
    let mut multidegrees = 0;
    let alternating = |v: &[usize]| -> i64 {
        v.iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    };
    for (name, w) in configurations() {
        for side in [Side::Plus, Side::Minus] {
            let ext = CechComplex::new(w.clone(), Field::Rational, side, true).unwrap();
            let plain = CechComplex::new(w.clone(), Field::Rational, side, false).unwrap();
            for _ in 0..800 {
                let d = Monomial::new((0..w.len()).map(|_| rng.gen_range(-4..=4)).collect());
                let he = ext.multidegree_cohomology(&d).unwrap();
                let hp = plain.multidegree_cohomology(&d).unwrap();
                let ok = alternating(&he) == alternating(&ext.term_dimensions(&d).unwrap())
                    && alternating(&hp) == alternating(&plain.term_dimensions(&d).unwrap())
                    && he[0] as i64 - i64::from(d.is_nonnegative()) + hp[0] as i64 - he[1] as i64
                        == 0
                    && (1..hp.len()).all(|k| hp[k] == he[k + 1]);
                ensure(ok, || {
                    format!("{name} {side} multidegree {d:?}: {he:?} / {hp:?}")
                })?;
                multidegrees += 1;
            }
        }
    }

    // Gröbner confluence and membership
    let mut ideals = 0;
    for _ in 0..120 {
        let (n, mut gens) = random_ideal(&mut rng);
        let a = buchberger(&gens, Field::Rational, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        gens.shuffle(&mut rng);
        let b = buchberger(&gens, Field::Rational, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(a.basis() == b.basis(), || {
            format!("order changed the reduced basis of {gens:?}")
        })?;
        let mut member = random_polynomial(&mut rng, n, 0, 0);
        for g in &gens {
            ensure(a.contains(g), || {
                format!("generator {g:?} not reduced to zero")
            })?;
            member = &member + &(&random_polynomial(&mut rng, n, 2, 2) * g);
        }
        ensure(a.contains(&member), || {
            "combination of generators not reduced to zero".into()
        })?;
        ideals += 1;
    }

    // the Taylor complexes of random monomial ideals are resolutions
    for _ in 0..50 {
        let w = Weighting::from_blocks(&[1, 2, 1], &[-1]);
        let gens: Vec<Monomial> = (0..rng.gen_range(1..=4))
            .map(|_| {
                Monomial::new(vec![
                    rng.gen_range(0..=2),
                    rng.gen_range(0..=2),
                    rng.gen_range(0..=2),
                    0,
                ])
            })
            .collect();
        let cx = taylor_resolution(&gens, &w, Field::Rational).map_err(|e| e.to_string())?;
        complexes += 1;
        for d in box_points(4, 0, 2) {
            let d = Monomial::new(d);
            let member = gens.iter().any(|g| g.divides(&d));
            ensure(
                cx.euler_characteristic_at(&d) == Some(i64::from(member)),
                || format!("Taylor {gens:?} at {d:?}"),
            )?;
        }
    }

    ensure(
        permutations >= 5 * 14 && multidegrees >= 10_000 && ideals >= 100,
        || "counts too small".into(),
    )?;
    Ok(format!(
        "{complexes} complexes with d^2 = 0, {permutations} permuted tables, {multidegrees} multidegree Euler/triangle checks, {ideals} Groebner ideals"
    ))
}

fn truncation() -> Outcome {
    let mut cases = 0;
    for p in 1..=3usize {
        for code in 0..3usize.pow(p as u32) {
            let weights: Vec<i64> = (0..p)
                .map(|k| 1 + ((code / 3usize.pow(k as u32)) % 3) as i64)
                .collect();
            let w = Weighting::from_blocks(&weights, &[-1]);
            let spec = RingSpec::polynomial_ring(w.clone());
            for cutoff in -2..=6 {
                let mut got = truncate_generators(&spec, cutoff).map_err(|e| e.to_string())?;
                got.sort();
                let expected = brute_force_truncation(&w, cutoff);
                ensure(got == expected, || {
                    format!("weights {weights:?}, w = {cutoff}: {got:?} vs {expected:?}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{cases} (weights, w) cases equal to brute-force minimal generators"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("closed-form local cohomology", closed_form),
        ("canonical vanishing", vanishing),
        ("degreewise duality", duality),
        ("Brown-Reid family", brown_reid),
        ("functor on the window", functor_images),
        ("property suites", property_suites),
        ("truncation generators", truncation),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} [pass] {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [FAIL] {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
