//! Buchberger's algorithm under degrevlex, with normal forms and Krull
//! dimension via independent sets modulo the leading-term ideal.

use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{homogeneity, Field, Homogeneity, Monomial, Polynomial, Weighting};

/// Default cap on reduction steps.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("reduction budget of {budget} steps exceeded; result undetermined")]
    BudgetExceeded { budget: u64 },
    #[error("polynomial ring has no variables")]
    NoVariables,
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("generator {index} lives in {found} variables, expected {expected}")]
    VariableCount {
        index: usize,
        expected: usize,
        found: usize,
    },
}

/// Krull dimension of a quotient ring. The unit ideal gives the empty variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    Empty,
    Finite(usize),
}

impl Dimension {
    pub fn finite(&self) -> Option<usize> {
        match self {
            Dimension::Empty => None,
            Dimension::Finite(d) => Some(*d),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => f.write_str("-inf"),
            Dimension::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Dimension {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Dimension::Empty => s.serialize_str("-inf"),
            Dimension::Finite(d) => s.serialize_u64(*d as u64),
        }
    }
}

/// Reduced Gröbner basis under degrevlex, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    field: Field,
    basis: Vec<Polynomial>,
    generators: Vec<Polynomial>,
    steps: u64,
}

struct Reducer {
    field: Field,
    steps: u64,
    budget: u64,
}

impl Reducer {
    fn tick(&mut self) -> Result<(), GroebnerError> {
        self.steps += 1;
        if self.steps > self.budget {
            Err(GroebnerError::BudgetExceeded {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    /// Full reduction of `f` by a list of monic polynomials.
    fn reduce(&mut self, f: &Polynomial, by: &[Polynomial]) -> Result<Polynomial, GroebnerError> {
        let mut rest = f.clone();
        let mut remainder = Polynomial::zero(f.nvars());
        while let Some((m, c)) = rest.leading_term() {
            let (m, c) = (m.clone(), c.clone());
            let divisor = by.iter().find_map(|g| {
                let lm = g.leading_monomial()?;
                m.try_div(lm).map(|q| (g, q))
            });
            match divisor {
                Some((g, q)) => {
                    self.tick()?;
                    rest = self.field.normalize_poly(&(&rest - &g.mul_term(&c, &q)));
                }
                None => {
                    remainder.add_term(c.clone(), m.clone());
                    rest.add_term(-c, m);
                }
            }
        }
        Ok(remainder)
    }

    fn monic(&self, f: &Polynomial) -> Polynomial {
        match f.leading_coefficient() {
            Some(lc) if !lc.is_one() => {
                let inv = self.field.inv(lc);
                self.field.normalize_poly(&f.scale(&inv))
            }
            _ => f.clone(),
        }
    }
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, mg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let lcm = mf.lcm(mg);
    let one = BigRational::one();
    // both inputs are monic
    &f.mul_term(&one, &lcm.try_div(mf).unwrap()) - &g.mul_term(&one, &lcm.try_div(mg).unwrap())
}

/// Computes the reduced Gröbner basis of the ideal generated by `generators`.
///
/// Pairs are processed by the normal strategy: smallest total degree of the
/// lcm of leading monomials first, ties broken by the indices of the pair in
/// insertion order. Pairs with coprime leading monomials are skipped.
pub fn buchberger(
    generators: &[Polynomial],
    field: Field,
    budget: u64,
) -> Result<GroebnerBasis, GroebnerError> {
    let nvars = generators.first().map_or(0, Polynomial::nvars);
    if nvars == 0 {
        return Err(GroebnerError::NoVariables);
    }
    for (index, g) in generators.iter().enumerate() {
        if g.nvars() != nvars {
            return Err(GroebnerError::VariableCount {
                index,
                expected: nvars,
                found: g.nvars(),
            });
        }
        if field.normalize_poly(g).is_zero() {
            return Err(GroebnerError::ZeroGenerator(index));
        }
    }

    let mut reducer = Reducer {
        field,
        steps: 0,
        budget,
    };
    let mut basis: Vec<Polynomial> = generators
        .iter()
        .map(|g| reducer.monic(&field.normalize_poly(g)))
        .collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }

    while !pairs.is_empty() {
        let (pos, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| {
                let lcm = basis[i]
                    .leading_monomial()
                    .unwrap()
                    .lcm(basis[j].leading_monomial().unwrap());
                (lcm.degree(), j, i)
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(pos);
        let (mi, mj) = (
            basis[i].leading_monomial().unwrap(),
            basis[j].leading_monomial().unwrap(),
        );
        if mi.is_coprime(mj) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = reducer.reduce(&s, &basis)?;
        if r.is_zero() {
            continue;
        }
        let r = reducer.monic(&r);
        let k = basis.len();
        let unit = r.leading_monomial().unwrap().is_one();
        basis.push(r);
        if unit {
            basis = vec![Polynomial::one(nvars)];
            break;
        }
        for i in 0..k {
            pairs.push((i, k));
        }
    }

    let basis = auto_reduce(basis, &mut reducer)?;
    Ok(GroebnerBasis {
        nvars,
        field,
        basis,
        generators: generators.to_vec(),
        steps: reducer.steps,
    })
}

fn auto_reduce(
    basis: Vec<Polynomial>,
    reducer: &mut Reducer,
) -> Result<Vec<Polynomial>, GroebnerError> {
    // drop elements whose leading monomial is divisible by an earlier-kept or other one
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let hm = h.leading_monomial().unwrap();
            l != k && hm.divides(lm) && (hm != lm || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, h)| h.clone())
            .collect();
        let (lm, lc) = {
            let (m, c) = minimal[k].leading_term().unwrap();
            (m.clone(), c.clone())
        };
        let mut tail = minimal[k].clone();
        tail.add_term(-lc.clone(), lm.clone());
        let mut g = reducer.reduce(&tail, &others)?;
        g.add_term(lc, lm);
        reduced.push(reducer.monic(&g));
    }
    reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    Ok(reduced)
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduction steps spent building the basis.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.basis
            .iter()
            .filter_map(Polynomial::leading_monomial)
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis
            .iter()
            .any(|g| g.leading_monomial().is_some_and(Monomial::is_one))
    }

    /// Remainder of `f` with no term divisible by a leading monomial of the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let mut reducer = Reducer {
            field: self.field,
            steps: 0,
            budget: u64::MAX,
        };
        reducer
            .reduce(&self.field.normalize_poly(f), &self.basis)
            .expect("unbounded budget")
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// A largest set of variables with no leading monomial supported inside it.
    pub fn maximal_independent_set(&self) -> Option<Vec<usize>> {
        if self.is_unit() {
            return None;
        }
        let supports: Vec<u64> = self
            .leading_monomials()
            .iter()
            .map(|m| m.support().iter().fold(0u64, |acc, &i| acc | (1 << i)))
            .collect();
        let mut best: u64 = 0;
        for set in 0u64..(1u64 << self.nvars) {
            if set.count_ones() <= best.count_ones() {
                continue;
            }
            if supports.iter().all(|&s| s & !set != 0) {
                best = set;
            }
        }
        Some((0..self.nvars).filter(|i| best & (1 << i) != 0).collect())
    }

    /// Krull dimension of the quotient by the ideal.
    pub fn krull_dimension(&self) -> Dimension {
        match self.maximal_independent_set() {
            None => Dimension::Empty,
            Some(set) => Dimension::Finite(set.len()),
        }
    }

    /// Weight of each basis element under `weighting`.
    pub fn weights(&self, weighting: &Weighting) -> Vec<Homogeneity> {
        self.basis
            .iter()
            .map(|g| homogeneity(g, weighting).unwrap_or(Homogeneity::Inhomogeneous))
            .collect()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.iter().all(|g| g.is_zero())
    }
}

/// Krull dimension of `k[vars]/(generators)`; an empty generator list is the zero ideal.
pub fn quotient_dimension(
    nvars: usize,
    generators: &[Polynomial],
    field: Field,
    budget: u64,
) -> Result<Dimension, GroebnerError> {
    let nonzero: Vec<Polynomial> = generators
        .iter()
        .filter(|g| !field.normalize_poly(g).is_zero())
        .cloned()
        .collect();
    if nonzero.is_empty() {
        return Ok(Dimension::Finite(nvars));
    }
    Ok(buchberger(&nonzero, field, budget)?.krull_dimension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn poly(nvars: usize, terms: &[(i64, &[i64])]) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            terms
                .iter()
                .map(|(c, e)| (int(*c), Monomial::new(e.to_vec()))),
        )
        .unwrap()
    }

    /// x*y - z^2 in k[x,y,z]
    fn cone() -> Polynomial {
        poly(3, &[(1, &[1, 1, 0]), (-1, &[0, 0, 2])])
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let gb = buchberger(&[cone()], Field::Rational, DEFAULT_BUDGET).unwrap();
        assert_eq!(gb.basis(), &[cone()]);
    }

    #[test]
    fn inconsistent_system_gives_unit_ideal() {
        // x1*y1 - 1, x1
        let f = poly(2, &[(1, &[1, 1]), (-1, &[0, 0])]);
        let g = poly(2, &[(1, &[1, 0])]);
        let gb = buchberger(&[f, g], Field::Rational, DEFAULT_BUDGET).unwrap();
        assert_eq!(gb.basis(), &[Polynomial::one(2)]);
        assert_eq!(gb.krull_dimension(), Dimension::Empty);
    }

    #[test]
    fn normal_form_examples() {
        let gb = buchberger(&[cone()], Field::Rational, DEFAULT_BUDGET).unwrap();
        let xy = poly(3, &[(1, &[1, 1, 0])]);
        let zz = poly(3, &[(1, &[0, 0, 2])]);
        assert_eq!(gb.normal_form(&xy), zz);
        assert_eq!(gb.normal_form(&zz), zz);
        assert!(gb.contains(&cone()));
    }

    #[test]
    fn dimension_of_cone_matches_brute_force() {
        let gb = buchberger(&[cone()], Field::Rational, DEFAULT_BUDGET).unwrap();
        assert_eq!(gb.krull_dimension(), Dimension::Finite(2));
        // brute force over all subsets: a subset is independent iff x*y, the
        // leading monomial, is not supported in it
        let lm = gb.leading_monomials()[0].support();
        let best = (0u32..8)
            .filter(|s| !lm.iter().all(|i| s & (1 << i) != 0))
            .map(|s| s.count_ones())
            .max()
            .unwrap();
        assert_eq!(best, 2);
    }

    #[test]
    fn zero_ideal_dimension() {
        assert_eq!(
            quotient_dimension(4, &[], Field::Rational, DEFAULT_BUDGET).unwrap(),
            Dimension::Finite(4)
        );
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let f = poly(2, &[(1, &[3, 0]), (-1, &[0, 2])]);
        let g = poly(2, &[(1, &[1, 2]), (-1, &[0, 1])]);
        let needed = buchberger(&[f.clone(), g.clone()], Field::Rational, DEFAULT_BUDGET)
            .unwrap()
            .steps();
        assert!(needed > 0);
        assert!(buchberger(&[f.clone(), g.clone()], Field::Rational, needed).is_ok());
        let err = buchberger(&[f, g], Field::Rational, needed - 1).unwrap_err();
        assert_eq!(err, GroebnerError::BudgetExceeded { budget: needed - 1 });
    }

    #[test]
    fn zero_generator_rejected() {
        let err = buchberger(&[cone(), Polynomial::zero(3)], Field::Rational, 10).unwrap_err();
        assert_eq!(err, GroebnerError::ZeroGenerator(1));
    }

    #[test]
    fn prime_field_basis() {
        // x^2 - 1 and 2x - 2 over GF(2): 2x - 2 vanishes, rejected as zero
        let f = poly(1, &[(1, &[2]), (-1, &[0])]);
        let g = poly(1, &[(2, &[1]), (-2, &[0])]);
        assert!(buchberger(&[f.clone(), g.clone()], Field::Prime(2), 100).is_err());
        let gb = buchberger(&[f, g], Field::Prime(5), 100).unwrap();
        // x - 1
        assert_eq!(gb.basis(), &[poly(1, &[(1, &[1]), (4, &[0])])]);
    }
}
