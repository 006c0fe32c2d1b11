use std::collections::HashSet;

use serde::Serialize;

use super::AlgebraError;

/// Sign block of a variable, decided by the sign of its weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Block {
    Positive,
    Negative,
    Zero,
}

impl Block {
    pub fn of(weight: i64) -> Self {
        match weight.signum() {
            1 => Block::Positive,
            -1 => Block::Negative,
            _ => Block::Zero,
        }
    }
}

/// An ordered list of named variables with a ℤ-weight on each.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Weighting {
    names: Vec<String>,
    weights: Vec<i64>,
}

impl Weighting {
    pub fn new(names: Vec<String>, weights: Vec<i64>) -> Result<Self, AlgebraError> {
        if names.len() != weights.len() {
            return Err(AlgebraError::LengthMismatch {
                expected: names.len(),
                found: weights.len(),
            });
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(AlgebraError::DuplicateVariable(name.clone()));
            }
        }
        Ok(Self { names, weights })
    }

    /// Variables `x1..` carrying `positive` followed by `y1..` carrying `negative`.
    ///
    /// Entries of `negative` are given as absolute values or signed; only the
    /// magnitude is used.
    pub fn from_blocks(positive: &[i64], negative: &[i64]) -> Self {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        for (i, w) in positive.iter().enumerate() {
            names.push(format!("x{}", i + 1));
            weights.push(w.abs());
        }
        for (j, w) in negative.iter().enumerate() {
            names.push(format!("y{}", j + 1));
            weights.push(-w.abs());
        }
        Self { names, weights }
    }

    /// `k[x1..xp, y1..yq]` with unit weights.
    pub fn unit(p: usize, q: usize) -> Self {
        Self::from_blocks(&vec![1; p], &vec![1; q])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn weight(&self, index: usize) -> i64 {
        self.weights[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn block(&self, index: usize) -> Block {
        Block::of(self.weights[index])
    }

    /// Indices of the variables in `block`, in declaration order.
    pub fn indices(&self, block: Block) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.block(i) == block)
            .collect()
    }

    pub fn count(&self, block: Block) -> usize {
        self.weights
            .iter()
            .filter(|&&w| Block::of(w) == block)
            .count()
    }

    /// Sum of the positive weights.
    pub fn eta_plus(&self) -> i64 {
        self.weights.iter().filter(|&&w| w > 0).sum()
    }

    /// Minus the sum of the negative weights.
    pub fn eta_minus(&self) -> i64 {
        -self.weights.iter().filter(|&&w| w < 0).sum::<i64>()
    }

    /// The same variables reordered so that position `k` holds old variable `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, AlgebraError> {
        check_permutation(perm, self.len())?;
        Ok(Self {
            names: perm.iter().map(|&i| self.names[i].clone()).collect(),
            weights: perm.iter().map(|&i| self.weights[i]).collect(),
        })
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<(), AlgebraError> {
    if perm.len() != n {
        return Err(AlgebraError::LengthMismatch {
            expected: n,
            found: perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &i in perm {
        if i >= n || seen[i] {
            return Err(AlgebraError::NotAPermutation);
        }
        seen[i] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_sums() {
        let w = Weighting::unit(2, 1);
        assert_eq!((w.eta_plus(), w.eta_minus()), (2, 1));
        let w = Weighting::from_blocks(&[1, 2], &[1]);
        assert_eq!((w.eta_plus(), w.eta_minus()), (3, 1));
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = Weighting::new(vec!["x".into(), "x".into()], vec![1, -1]).unwrap_err();
        assert!(matches!(err, AlgebraError::DuplicateVariable(_)));
    }

    #[test]
    fn blocks_follow_sign() {
        let w = Weighting::new(vec!["a".into(), "b".into(), "c".into()], vec![0, -3, 2]).unwrap();
        assert_eq!(w.indices(Block::Positive), vec![2]);
        assert_eq!(w.indices(Block::Negative), vec![1]);
        assert_eq!(w.indices(Block::Zero), vec![0]);
    }
}
