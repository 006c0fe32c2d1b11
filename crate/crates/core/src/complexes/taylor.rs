use super::koszul::subsets;
use super::{signed_one, ComplexError, FreeComplex, FreeModule, PolyMatrix};
use crate::algebra::{Block, Field, Monomial, Polynomial, Weighting};
use crate::ring_spec::RingSpec;

/// The Taylor complex has `2^m - 1` generators; beyond this it is refused.
pub const MAX_TAYLOR_GENERATORS: usize = 16;

/// Taylor complex of a monomial ideal in the positive variables.
///
/// Degree `-k` holds one generator per `(k+1)`-subset `S`, labelled by
/// `lcm(S)`; degree 0 holds the ideal generators, so the complex resolves
/// the ideal itself. `d(e_S) = Σ_k (-1)^k lcm(S)/lcm(S∖s_k) e_{S∖s_k}`.
pub fn taylor_resolution(
    gens: &[Monomial],
    weighting: &Weighting,
    field: Field,
) -> Result<FreeComplex, ComplexError> {
    let m = gens.len();
    if m == 0 {
        return Err(ComplexError::NoGenerators);
    }
    if m > MAX_TAYLOR_GENERATORS {
        return Err(ComplexError::TooManyGenerators {
            count: m,
            limit: MAX_TAYLOR_GENERATORS,
        });
    }
    let nvars = weighting.len();
    for (i, g) in gens.iter().enumerate() {
        let positive = g.len() == nvars
            && g.is_nonnegative()
            && g.support()
                .iter()
                .all(|&v| weighting.block(v) == Block::Positive);
        if !positive {
            return Err(ComplexError::NotPositive(i));
        }
    }
    let lcm_of = |set: &[usize]| {
        set.iter()
            .fold(Monomial::one(nvars), |acc, &i| acc.lcm(&gens[i]))
    };
    let weight = |mono: &Monomial| mono.weight(weighting).expect("lengths checked");

    let bases: Vec<Vec<Vec<usize>>> = (1..=m).rev().map(|j| subsets(m, j)).collect();
    let labels: Vec<Vec<Monomial>> = bases
        .iter()
        .map(|basis| basis.iter().map(|s| lcm_of(s)).collect())
        .collect();
    let modules = labels
        .iter()
        .map(|ls| FreeModule::labelled(ls.iter().map(weight).collect(), ls.clone()))
        .collect();
    let mut differentials = Vec::with_capacity(m - 1);
    for k in 0..m - 1 {
        let (source, target) = (&bases[k], &bases[k + 1]);
        let mut d = PolyMatrix::zero(target.len(), source.len(), nvars);
        for (col, set) in source.iter().enumerate() {
            let top = &labels[k][col];
            for (pos, &i) in set.iter().enumerate() {
                let face: Vec<usize> = set.iter().copied().filter(|&x| x != i).collect();
                let row = target
                    .iter()
                    .position(|t| *t == face)
                    .expect("face is a subset");
                let quotient = top
                    .try_div(&labels[k + 1][row])
                    .expect("lcm of a face divides the lcm of the set");
                d.set(
                    row,
                    col,
                    Polynomial::monomial(signed_one(pos % 2 == 1), quotient),
                );
            }
        }
        differentials.push(d);
    }
    FreeComplex::new(
        weighting.clone(),
        field,
        -(m as i64 - 1),
        modules,
        differentials,
    )
}

/// [`taylor_resolution`] for generators given as polynomials; each must be a monomial.
pub fn taylor_resolution_of(
    gens: &[Polynomial],
    weighting: &Weighting,
    field: Field,
) -> Result<FreeComplex, ComplexError> {
    let monomials = gens
        .iter()
        .enumerate()
        .map(|(i, g)| g.as_monomial().cloned().ok_or(ComplexError::NotMonomial(i)))
        .collect::<Result<Vec<_>, _>>()?;
    taylor_resolution(&monomials, weighting, field)
}

/// Minimal monomial generators of `(C+)_{>= w}`, the ideal of positive-variable
/// monomials of weight at least `w`.
///
/// Every minimal generator has weight in `[w, w + max_weight - 1]`. The result
/// is ordered by weight, then by decreasing degrevlex. For `w <= 0` it is `{1}`.
pub fn truncate_generators(spec: &RingSpec, w: i64) -> Result<Vec<Monomial>, ComplexError> {
    let weighting = &spec.weighting;
    let positive = weighting.indices(Block::Positive);
    if positive.is_empty() {
        return Err(ComplexError::EmptyPositiveBlock);
    }
    let nvars = weighting.len();
    if w <= 0 {
        return Ok(vec![Monomial::one(nvars)]);
    }
    let max_weight = positive.iter().map(|&i| weighting.weight(i)).max().unwrap();
    let hi = w + max_weight - 1;

    let mut candidates = Vec::new();
    let mut exps = vec![0i64; nvars];
    enumerate(
        &positive,
        weighting,
        0,
        0,
        w,
        hi,
        &mut exps,
        &mut candidates,
    );
    candidates.sort_by(|a: &(i64, Monomial), b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));

    let mut kept: Vec<Monomial> = Vec::new();
    for (_, m) in candidates {
        if !kept.iter().any(|g| g.divides(&m)) {
            kept.push(m);
        }
    }
    Ok(kept)
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    vars: &[usize],
    weighting: &Weighting,
    pos: usize,
    acc: i64,
    lo: i64,
    hi: i64,
    exps: &mut Vec<i64>,
    out: &mut Vec<(i64, Monomial)>,
) {
    if pos == vars.len() {
        if acc >= lo {
            out.push((acc, Monomial::new(exps.clone())));
        }
        return;
    }
    let v = vars[pos];
    let wv = weighting.weight(v);
    let mut e = 0;
    while acc + e * wv <= hi {
        exps[v] = e;
        enumerate(vars, weighting, pos + 1, acc + e * wv, lo, hi, exps, out);
        e += 1;
    }
    exps[v] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[i64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn syzygy_of_two_variables() {
        let w = Weighting::unit(2, 0);
        let cx = taylor_resolution(&[mono(&[1, 0]), mono(&[0, 1])], &w, Field::Rational).unwrap();
        assert_eq!(cx.ranks(), vec![2, 1]);
        assert_eq!(cx.module(-1).unwrap().twists(), &[2]);
        assert_eq!(cx.weight_offset(), Some(0));
    }

    #[test]
    fn three_quadrics() {
        let w = Weighting::unit(2, 1);
        let gens = [mono(&[2, 0, 0]), mono(&[1, 1, 0]), mono(&[0, 2, 0])];
        let cx = taylor_resolution(&gens, &w, Field::Rational).unwrap();
        assert_eq!(cx.ranks(), vec![3, 3, 1]);
        // the Taylor complex of these three is not minimal: x^2 y^2 repeats
        let min = cx.minimize();
        assert_eq!(min.ranks(), vec![3, 2]);
        assert!(min.is_minimal());
        min.validate().unwrap();
    }

    #[test]
    fn rejects_negative_variables() {
        let w = Weighting::unit(1, 1);
        assert_eq!(
            taylor_resolution(&[mono(&[0, 1])], &w, Field::Rational).unwrap_err(),
            ComplexError::NotPositive(0)
        );
        let x = Polynomial::var(2, 0);
        let f = &x + &x;
        assert_eq!(
            taylor_resolution_of(&[x, f], &w, Field::Rational).unwrap_err(),
            ComplexError::NotMonomial(1)
        );
    }

    #[test]
    fn truncation_mixed_weights() {
        let spec = RingSpec::polynomial_ring(Weighting::from_blocks(&[1, 2], &[-1]));
        assert_eq!(
            truncate_generators(&spec, 2).unwrap(),
            vec![mono(&[2, 0, 0]), mono(&[0, 1, 0])]
        );
        assert_eq!(
            truncate_generators(&spec, 0).unwrap(),
            vec![mono(&[0, 0, 0])]
        );
        assert_eq!(
            truncate_generators(&spec, -3).unwrap(),
            vec![mono(&[0, 0, 0])]
        );
        // weight 3: x1^3, x1 x2, then x2^2 at weight 4
        assert_eq!(
            truncate_generators(&spec, 3).unwrap(),
            vec![mono(&[3, 0, 0]), mono(&[1, 1, 0]), mono(&[0, 2, 0])]
        );
    }

    #[test]
    fn truncation_needs_positive_block() {
        let spec = RingSpec::polynomial_ring(Weighting::unit(0, 2));
        assert_eq!(
            truncate_generators(&spec, 1),
            Err(ComplexError::EmptyPositiveBlock)
        );
    }
}
