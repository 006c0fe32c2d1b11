#![allow(dead_code)]

use gradedflip_core::algebra::{Monomial, Polynomial, Weighting};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::Rng;

/// Polynomial-ring configurations exercised by the table comparisons.
pub fn configurations() -> Vec<(&'static str, Weighting)> {
    vec![
        ("unit (1,1)", Weighting::unit(1, 1)),
        ("unit (2,1)", Weighting::unit(2, 1)),
        ("unit (2,2)", Weighting::unit(2, 2)),
        ("unit (3,2)", Weighting::unit(3, 2)),
        ("unit (1,3)", Weighting::unit(1, 3)),
        ("(1,2 | -1)", Weighting::from_blocks(&[1, 2], &[-1])),
        ("(1,2 | -1,-3)", Weighting::from_blocks(&[1, 2], &[-1, -3])),
    ]
}

/// Random polynomial with at most `terms` terms of total degree `<= max_degree`
/// and small integer coefficients.
pub fn random_polynomial(
    rng: &mut StdRng,
    nvars: usize,
    terms: usize,
    max_degree: i64,
) -> Polynomial {
    let mut f = Polynomial::zero(nvars);
    for _ in 0..terms {
        let mut exps = vec![0i64; nvars];
        let degree = rng.gen_range(0..=max_degree);
        for _ in 0..degree {
            exps[rng.gen_range(0..nvars)] += 1;
        }
        let c = rng.gen_range(-3i64..=3);
        f.add_term(BigRational::from_integer(c.into()), Monomial::new(exps));
    }
    f
}

/// Ideal with `<= 4` variables, `<= 3` generators of degree `<= 3`; never all zero.
pub fn random_ideal(rng: &mut StdRng) -> (usize, Vec<Polynomial>) {
    let nvars = rng.gen_range(1..=4);
    let count = rng.gen_range(1..=3);
    let mut gens = Vec::new();
    while gens.len() < count {
        let terms = rng.gen_range(1..=3);
        let f = random_polynomial(rng, nvars, terms, 3);
        if !f.is_zero() {
            gens.push(f);
        }
    }
    (nvars, gens)
}

/// All exponent vectors in `[lo, hi]^n`.
pub fn box_points(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

/// Minimal generators of the ideal of monomials of weight `>= w` in the
/// positive variables, by direct enumeration: a monomial of weight `>= w` is a
/// minimal generator iff dropping any one of its variables falls below `w`.
pub fn brute_force_truncation(weighting: &Weighting, w: i64) -> Vec<Monomial> {
    let n = weighting.len();
    let positive: Vec<usize> = (0..n).filter(|&v| weighting.weight(v) > 0).collect();
    if w <= 0 {
        return vec![Monomial::one(n)];
    }
    let mut out = Vec::new();
    for point in box_points(positive.len(), 0, w) {
        let mut exps = vec![0i64; n];
        for (k, &v) in positive.iter().enumerate() {
            exps[v] = point[k];
        }
        let weight: i64 = (0..n).map(|v| exps[v] * weighting.weight(v)).sum();
        if weight < w {
            continue;
        }
        let minimal = positive
            .iter()
            .filter(|&&v| exps[v] > 0)
            .all(|&v| weight - weighting.weight(v) < w);
        if minimal {
            out.push(Monomial::new(exps));
        }
    }
    out.sort();
    out
}
