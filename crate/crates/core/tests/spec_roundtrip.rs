use gradedflip_core::algebra::{Field, Monomial, Polynomial, Weighting};
use gradedflip_core::ring_spec::{parse_ring_spec, BrownReidParams, Kind, RingSpec};
use num_rational::BigRational;
use proptest::prelude::*;

fn kind_strategy() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Flip), Just(Kind::Flop), Just(Kind::Unspecified)]
}

/// A relation built as a sum of monomials of one chosen weight.
fn homogeneous_relation(
    weighting: &Weighting,
    seeds: &[Vec<i64>],
    coeffs: &[i64],
) -> Option<Polynomial> {
    let n = weighting.len();
    let first = Monomial::new(seeds.first()?.clone());
    let target = first.weight(weighting).ok()?;
    let mut f = Polynomial::zero(n);
    for (s, &c) in seeds.iter().zip(coeffs) {
        let m = Monomial::new(s.clone());
        if m.weight(weighting).ok() == Some(target) {
            f.add_term(BigRational::from_integer(c.into()), m);
        }
    }
    (!f.is_zero()).then_some(f)
}

proptest! {
    #[test]
    fn text_form_round_trips(
        pos in prop::collection::vec(1i64..=4, 0..=3),
        neg in prop::collection::vec(-4i64..=-1, 0..=3),
        zero in 0usize..=1,
        seeds in prop::collection::vec(prop::collection::vec(0i64..=3, 7), 0..=4),
        coeffs in prop::collection::vec(-5i64..=5, 4),
        kind in kind_strategy(),
        prime in prop_oneof![Just(None), Just(Some(7u64)), Just(Some(101u64))],
    ) {
        prop_assume!(pos.len() + neg.len() + zero > 0);
        let mut names: Vec<String> = Vec::new();
        let mut weights = Vec::new();
        for (k, &w) in pos.iter().enumerate() {
            names.push(format!("x{}", k + 1));
            weights.push(w);
        }
        for (k, &w) in neg.iter().enumerate() {
            names.push(format!("y{}", k + 1));
            weights.push(w);
        }
        if zero == 1 {
            names.push("z".into());
            weights.push(0);
        }
        let n = names.len();
        let weighting = Weighting::new(names, weights).unwrap();
        let seeds: Vec<Vec<i64>> = seeds.into_iter().map(|s| s[..n].to_vec()).collect();
        let relations: Vec<Polynomial> = seeds
            .chunks(2)
            .filter_map(|chunk| homogeneous_relation(&weighting, chunk, &coeffs))
            .collect();
        let field = match prime {
            None => Field::Rational,
            Some(p) => Field::prime(p).unwrap(),
        };
        let spec = match RingSpec::new(field, weighting, relations, kind) {
            Ok(s) => s,
            // coefficients may vanish mod p
            Err(_) => return Ok(()),
        };
        let text = spec.to_spec_text();
        let back = parse_ring_spec(&text).unwrap();
        prop_assert_eq!(&back, &spec, "{}", text);
        prop_assert_eq!(back.to_spec_text(), text);
    }

    #[test]
    fn brown_reid_template_round_trips(
        lambda in 1u32..=4, mu in 1u32..=4, d in 1u32..=2, e in 1u32..=2, alpha in 1u32..=2, beta in 1u32..=2,
    ) {
        let params = BrownReidParams::new(lambda, mu, d, e, alpha, beta);
        match RingSpec::brown_reid(params, Field::Rational) {
            Ok(spec) => {
                let back = parse_ring_spec(&spec.to_spec_text()).unwrap();
                prop_assert_eq!(back, spec);
            }
            Err(_) => prop_assert!(num_integer::gcd(lambda, mu) != 1),
        }
    }
}
