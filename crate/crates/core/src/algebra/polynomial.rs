use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{AlgebraError, Monomial, Weighting};

/// Sparse polynomial with exact rational coefficients; terms are kept
/// sorted by degrevlex and never hold a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(BigRational::one(), Monomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(c, Monomial::one(nvars))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::monomial(BigRational::one(), Monomial::var(nvars, index))
    }

    pub fn monomial(c: BigRational, m: Monomial) -> Self {
        let nvars = m.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { nvars, terms }
    }

    /// Sums duplicate monomials and drops zero coefficients.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (BigRational, Monomial)>,
    ) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(nvars);
        for (c, m) in terms {
            if m.len() != nvars {
                return Err(AlgebraError::LengthMismatch {
                    expected: nvars,
                    found: m.len(),
                });
            }
            out.add_term(c, m);
        }
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing degrevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    /// `Some(m)` when `self` is a single term with coefficient one.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    /// The constant term when `self` is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, c: BigRational, m: Monomial) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.len(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        self.map_coefficients(|x| x * c)
    }

    pub fn mul_term(&self, c: &BigRational, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    /// Applies `f` to every coefficient, dropping those that become zero.
    pub fn map_coefficients(&self, f: impl Fn(&BigRational) -> BigRational) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Rename variables: position `k` of the result holds old variable `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.permuted(perm), c.clone()))
                .collect(),
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolynomialDisplay<'a> {
        PolynomialDisplay { poly: self, names }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c.clone(), m.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ca * cb, ma.mul(mb));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.map_coefficients(|c| -c)
    }
}

pub struct PolynomialDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolynomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", m.display(self.names))?;
            }
        }
        Ok(())
    }
}

/// Weight of a polynomial under a grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every weight.
    Zero,
    Weight(i64),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn weight(&self) -> Option<i64> {
        match self {
            Homogeneity::Weight(w) => Some(*w),
            _ => None,
        }
    }

    /// True when an element of this homogeneity may sit in weight `w`.
    pub fn admits(&self, w: i64) -> bool {
        match self {
            Homogeneity::Zero => true,
            Homogeneity::Weight(v) => *v == w,
            Homogeneity::Inhomogeneous => false,
        }
    }
}

impl fmt::Display for Homogeneity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Homogeneity::Zero => f.write_str("every weight"),
            Homogeneity::Weight(w) => write!(f, "{w}"),
            Homogeneity::Inhomogeneous => f.write_str("inhomogeneous"),
        }
    }
}

pub fn homogeneity(f: &Polynomial, weighting: &Weighting) -> Result<Homogeneity, AlgebraError> {
    let mut weight = None;
    for (m, _) in f.terms() {
        let w = m.weight(weighting)?;
        match weight {
            None => weight = Some(w),
            Some(v) if v != w => return Ok(Homogeneity::Inhomogeneous),
            Some(_) => {}
        }
    }
    Ok(weight.map_or(Homogeneity::Zero, Homogeneity::Weight))
}

/// A polynomial together with its weight under a fixed grading.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedPolynomial {
    poly: Polynomial,
    weight: Homogeneity,
}

impl GradedPolynomial {
    pub fn new(poly: Polynomial, weighting: &Weighting) -> Result<Self, AlgebraError> {
        let weight = homogeneity(&poly, weighting)?;
        Ok(Self { poly, weight })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn weight(&self) -> Homogeneity {
        self.weight
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }
}
