use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::{AlgebraError, Weighting};

/// Exponent vector. Negative exponents only appear inside localizations.
///
/// The `Ord` impl is degrevlex on the raw exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Monomial {
    exponents: Vec<i64>,
}

impl Monomial {
    pub fn new(exponents: Vec<i64>) -> Self {
        Self { exponents }
    }

    pub fn one(nvars: usize) -> Self {
        Self {
            exponents: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exponents = vec![0; nvars];
        exponents[index] = 1;
        Self { exponents }
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn exponent(&self, index: usize) -> i64 {
        self.exponents[index]
    }

    pub fn degree(&self) -> i64 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.exponents.iter().all(|&e| e >= 0)
    }

    /// Indices with a nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.exponents[i] != 0)
            .collect()
    }

    pub fn weight(&self, weighting: &Weighting) -> Result<i64, AlgebraError> {
        weight_of_monomial(self, weighting)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `self / other` when the quotient has nonnegative exponents.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| {
            Monomial::new(
                self.exponents
                    .iter()
                    .zip(&other.exponents)
                    .map(|(a, b)| a - b)
                    .collect(),
            )
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial::new(self.exponents.iter().map(|e| -e).collect())
    }

    /// Reorder so that position `k` holds old exponent `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        Monomial::new(perm.iter().map(|&i| self.exponents[i]).collect())
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay {
            monomial: self,
            names,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.exponents.iter().zip(&other.exponents).rev() {
                if a != b {
                    // smaller exponent in the last differing slot is larger
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct MonomialDisplay<'a> {
    monomial: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.monomial.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match self.names.get(i) {
                Some(name) => f.write_str(name)?,
                None => write!(f, "v{i}")?,
            }
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// ℤ-weight of `m`: the dot product of its exponents with the variable weights.
pub fn weight_of_monomial(m: &Monomial, weighting: &Weighting) -> Result<i64, AlgebraError> {
    if m.len() != weighting.len() {
        return Err(AlgebraError::LengthMismatch {
            expected: weighting.len(),
            found: m.len(),
        });
    }
    Ok(m.exponents
        .iter()
        .zip(weighting.weights())
        .map(|(e, w)| e * w)
        .sum())
}

/// Per-variable inclusive exponent bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentBox {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
}

impl ExponentBox {
    pub fn new(lower: Vec<i64>, upper: Vec<i64>) -> Self {
        Self { lower, upper }
    }

    /// `0..=bound` in every coordinate.
    pub fn cube(nvars: usize, bound: i64) -> Self {
        Self {
            lower: vec![0; nvars],
            upper: vec![bound; nvars],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lower.iter().zip(&self.upper).any(|(lo, hi)| lo > hi)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        m.exponents()
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(e, (lo, hi))| lo <= e && e <= hi)
    }
}

/// Number of lattice points of `bounds` whose ℤ-weight equals `weight`.
pub fn count_monomials(
    weighting: &Weighting,
    weight: i64,
    bounds: &ExponentBox,
) -> Result<u64, AlgebraError> {
    if bounds.lower.len() != weighting.len() || bounds.upper.len() != weighting.len() {
        return Err(AlgebraError::LengthMismatch {
            expected: weighting.len(),
            found: bounds.lower.len().min(bounds.upper.len()),
        });
    }
    if bounds.is_empty() {
        return Ok(0);
    }
    // distribution of partial weights, one variable at a time
    let mut partial: std::collections::HashMap<i64, u64> = std::collections::HashMap::new();
    partial.insert(0, 1);
    for (v, &w) in weighting.weights().iter().enumerate() {
        let mut next = std::collections::HashMap::with_capacity(partial.len());
        for (&s, &c) in &partial {
            for e in bounds.lower[v]..=bounds.upper[v] {
                *next.entry(s + e * w).or_insert(0) += c;
            }
        }
        partial = next;
    }
    Ok(partial.get(&weight).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn weight_examples() {
        let w = Weighting::new(names(&["x1", "y1"]), vec![1, -1]).unwrap();
        assert_eq!(
            weight_of_monomial(&Monomial::new(vec![2, 1]), &w).unwrap(),
            1
        );
        assert_eq!(weight_of_monomial(&Monomial::one(2), &w).unwrap(), 0);

        // Brown–Reid degrees at lambda=1, mu=2, e=1: x1:1, y2:-3
        let br = Weighting::new(names(&["x1", "y2"]), vec![1, -3]).unwrap();
        assert_eq!(
            weight_of_monomial(&Monomial::new(vec![1, 1]), &br).unwrap(),
            -2
        );
    }

    #[test]
    fn weight_length_mismatch() {
        let w = Weighting::unit(2, 0);
        assert!(matches!(
            weight_of_monomial(&Monomial::one(3), &w),
            Err(AlgebraError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn count_examples() {
        let w = Weighting::unit(2, 0);
        assert_eq!(
            count_monomials(&w, 3, &ExponentBox::cube(2, 10)).unwrap(),
            4
        );
        let w = Weighting::unit(1, 1);
        assert_eq!(count_monomials(&w, 0, &ExponentBox::cube(2, 2)).unwrap(), 3);
        let empty = ExponentBox::new(vec![0, 3], vec![2, 1]);
        assert_eq!(count_monomials(&w, 0, &empty).unwrap(), 0);
    }

    #[test]
    fn degrevlex_order() {
        // x*z > y^2 in degrevlex over x > y > z: last differing exponent decides
        let xz = Monomial::new(vec![1, 0, 1]);
        let yy = Monomial::new(vec![0, 2, 0]);
        assert!(yy > xz);
        let x = Monomial::var(3, 0);
        let y = Monomial::var(3, 1);
        assert!(x > y);
        assert!(Monomial::new(vec![0, 0, 2]) > x);
    }

    proptest! {
        #[test]
        fn weight_is_additive(
            a in proptest::collection::vec(0i64..6, 4),
            b in proptest::collection::vec(0i64..6, 4),
            ws in proptest::collection::vec(-4i64..5, 4),
        ) {
            let w = Weighting::new(names(&["a", "b", "c", "d"]), ws).unwrap();
            let (ma, mb) = (Monomial::new(a), Monomial::new(b));
            prop_assert_eq!(
                ma.mul(&mb).weight(&w).unwrap(),
                ma.weight(&w).unwrap() + mb.weight(&w).unwrap()
            );
        }

        #[test]
        fn count_matches_enumeration(
            ws in proptest::collection::vec(-3i64..4, 3),
            bound in 0i64..4,
            target in -6i64..7,
        ) {
            let w = Weighting::new(names(&["a", "b", "c"]), ws.clone()).unwrap();
            let mut brute = 0u64;
            for a in 0..=bound { for b in 0..=bound { for c in 0..=bound {
                if a * ws[0] + b * ws[1] + c * ws[2] == target { brute += 1; }
            }}}
            prop_assert_eq!(count_monomials(&w, target, &ExponentBox::cube(3, bound)).unwrap(), brute);
        }
    }
}
