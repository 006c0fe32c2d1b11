//! Bounded complexes of free graded modules with polynomial-matrix
//! differentials, cohomologically indexed: `d^k : F^k -> F^{k+1}`.
//!
//! A generator of weight `t` spans a copy of `A(-t)`. Generators may carry a
//! multidegree label (a monomial) when the complex is multigraded, as for
//! Taylor complexes; labels survive twists and tensor products.

mod koszul;
mod taylor;

use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{homogeneity, Field, Monomial, Polynomial, Weighting};

pub use koszul::{koszul_complex, nonpositive_presentation_check, NonPositiveReport, TorWeights};
pub use taylor::{
    taylor_resolution, taylor_resolution_of, truncate_generators, MAX_TAYLOR_GENERATORS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("shape mismatch at degree {degree}: {message}")]
    Shape { degree: i64, message: String },
    #[error("entry ({row}, {col}) of d^{degree} is not homogeneous of weight {expected}")]
    Inhomogeneous {
        degree: i64,
        row: usize,
        col: usize,
        expected: i64,
    },
    #[error("d^{degree} composed with d^{} is not zero", degree + 1)]
    NotAComplex { degree: i64 },
    #[error("complexes live over different rings")]
    RingMismatch,
    #[error("generator {0} is not a monomial")]
    NotMonomial(usize),
    #[error("generator {0} involves a variable outside the positive block")]
    NotPositive(usize),
    #[error("no generators given")]
    NoGenerators,
    #[error("{count} generators exceed the Taylor complex limit of {limit}")]
    TooManyGenerators { count: usize, limit: usize },
    #[error("the ring has no positive-weight variables")]
    EmptyPositiveBlock,
    #[error("complete-intersection certificate missing or failed: {0}")]
    CiNotCertified(String),
}

/// Generator weights of a free module, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeModule {
    twists: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Monomial>>,
}

impl FreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        Self {
            twists,
            labels: None,
        }
    }

    pub fn labelled(twists: Vec<i64>, labels: Vec<Monomial>) -> Self {
        assert_eq!(twists.len(), labels.len());
        Self {
            twists,
            labels: Some(labels),
        }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn labels(&self) -> Option<&[Monomial]> {
        self.labels.as_deref()
    }

    fn without(&self, index: usize) -> Self {
        let mut twists = self.twists.clone();
        twists.remove(index);
        let labels = self.labels.as_ref().map(|l| {
            let mut l = l.clone();
            l.remove(index);
            l
        });
        Self { twists, labels }
    }
}

/// Row-major matrix of polynomials; `rows` is the target rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize, nvars: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Polynomial::zero(nvars); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Polynomial) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn mul(&self, rhs: &PolyMatrix, field: Field) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows);
        let nvars = self
            .entries
            .first()
            .or(rhs.entries.first())
            .map_or(0, Polynomial::nvars);
        let mut out = PolyMatrix::zero(self.rows, rhs.cols, nvars);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Polynomial::zero(nvars);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, field.normalize_poly(&acc));
            }
        }
        out
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn scale(&self, c: &BigRational) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    /// Nonzero entries as `(row, col, polynomial)`.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Polynomial)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(k, e)| (k / self.cols, k % self.cols, e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    weighting: Weighting,
    field: Field,
    lo: i64,
    modules: Vec<FreeModule>,
    differentials: Vec<PolyMatrix>,
}

impl FreeComplex {
    /// Validates shapes, homogeneity of every entry, and `d∘d = 0`.
    pub fn new(
        weighting: Weighting,
        field: Field,
        lo: i64,
        modules: Vec<FreeModule>,
        differentials: Vec<PolyMatrix>,
    ) -> Result<Self, ComplexError> {
        if modules.is_empty() {
            return Err(ComplexError::Shape {
                degree: lo,
                message: "complex has no terms".into(),
            });
        }
        if differentials.len() + 1 != modules.len() {
            return Err(ComplexError::Shape {
                degree: lo,
                message: format!(
                    "{} modules need {} differentials, got {}",
                    modules.len(),
                    modules.len() - 1,
                    differentials.len()
                ),
            });
        }
        let nvars = weighting.len();
        for (k, d) in differentials.iter().enumerate() {
            let degree = lo + k as i64;
            let (source, target) = (&modules[k], &modules[k + 1]);
            if d.cols != source.rank() || d.rows != target.rank() {
                return Err(ComplexError::Shape {
                    degree,
                    message: format!(
                        "d is {}x{}, modules have ranks {} -> {}",
                        d.rows,
                        d.cols,
                        source.rank(),
                        target.rank()
                    ),
                });
            }
            for (row, col, entry) in d.nonzero_entries() {
                let expected = source.twists[col] - target.twists[row];
                let ok = entry.nvars() == nvars
                    && homogeneity(entry, &weighting)
                        .map(|h| h.admits(expected))
                        .unwrap_or(false);
                if !ok {
                    return Err(ComplexError::Inhomogeneous {
                        degree,
                        row,
                        col,
                        expected,
                    });
                }
            }
        }
        for k in 0..differentials.len().saturating_sub(1) {
            if !differentials[k + 1].mul(&differentials[k], field).is_zero() {
                return Err(ComplexError::NotAComplex {
                    degree: lo + k as i64,
                });
            }
        }
        Ok(Self {
            weighting,
            field,
            lo,
            modules,
            differentials,
        })
    }

    /// `A(-t)` in degree 0.
    pub fn free_module(weighting: Weighting, field: Field, twist: i64) -> Self {
        Self {
            weighting,
            field,
            lo: 0,
            modules: vec![FreeModule::new(vec![twist])],
            differentials: Vec::new(),
        }
    }

    pub fn weighting(&self) -> &Weighting {
        &self.weighting
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn module(&self, degree: i64) -> Option<&FreeModule> {
        usize::try_from(degree - self.lo)
            .ok()
            .and_then(|k| self.modules.get(k))
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    /// `d^degree`, when both its source and target are in range.
    pub fn differential(&self, degree: i64) -> Option<&PolyMatrix> {
        usize::try_from(degree - self.lo)
            .ok()
            .and_then(|k| self.differentials.get(k))
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.module(degree).map_or(0, FreeModule::rank)
    }

    /// Ranks from `hi` down to `lo`, so a complex in degrees `[-2, 0]` lists degree 0 first.
    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().rev().map(FreeModule::rank).collect()
    }

    /// Sorted generator weights per degree, from `hi` down to `lo`.
    pub fn twist_multisets(&self) -> Vec<Vec<i64>> {
        self.modules
            .iter()
            .rev()
            .map(|m| {
                let mut t = m.twists.clone();
                t.sort_unstable();
                t
            })
            .collect()
    }

    fn check_same_ring(&self, other: &FreeComplex) -> Result<(), ComplexError> {
        if self.weighting != other.weighting || self.field != other.field {
            Err(ComplexError::RingMismatch)
        } else {
            Ok(())
        }
    }

    /// `M(n)`: every generator weight drops by `n`.
    pub fn twist(&self, n: i64) -> FreeComplex {
        let mut out = self.clone();
        for m in &mut out.modules {
            for t in &mut m.twists {
                *t -= n;
            }
        }
        out
    }

    /// `M[n]`: `(M[n])^k = M^{k+n}`, differentials multiplied by `(-1)^n`.
    pub fn shift(&self, n: i64) -> FreeComplex {
        let mut out = self.clone();
        out.lo -= n;
        if n.rem_euclid(2) == 1 {
            let minus = -BigRational::one();
            out.differentials = out.differentials.iter().map(|d| d.scale(&minus)).collect();
        }
        out
    }

    /// `Hom(M, A)`: degrees and weights negated, `d_dual^{-k-1} = (-1)^k (d^k)^T`.
    pub fn dualize(&self) -> FreeComplex {
        let modules = self
            .modules
            .iter()
            .rev()
            .map(|m| FreeModule {
                twists: m.twists.iter().map(|t| -t).collect(),
                labels: m
                    .labels
                    .as_ref()
                    .map(|l| l.iter().map(Monomial::inverse).collect()),
            })
            .collect();
        let differentials = self
            .differentials
            .iter()
            .enumerate()
            .rev()
            .map(|(k, d)| {
                let degree = self.lo + k as i64;
                let t = d.transpose();
                if degree.rem_euclid(2) == 1 {
                    t.scale(&-BigRational::one())
                } else {
                    t
                }
            })
            .collect();
        FreeComplex {
            weighting: self.weighting.clone(),
            field: self.field,
            lo: -self.hi(),
            modules,
            differentials,
        }
    }

    /// Total complex of the tensor product, with `d(a ⊗ b) = da ⊗ b + (-1)^{|a|} a ⊗ db`.
    pub fn tensor(&self, other: &FreeComplex) -> Result<FreeComplex, ComplexError> {
        self.check_same_ring(other)?;
        let nvars = self.weighting.len();
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();

        // basis of total degree n: pairs (a, b) with a + b = n, ordered by a then indices
        struct Block {
            a: i64,
            b: i64,
            offset: usize,
        }
        let mut layout: Vec<Vec<Block>> = Vec::new();
        let mut modules = Vec::new();
        for n in lo..=hi {
            let mut blocks = Vec::new();
            let mut twists = Vec::new();
            let mut labels = Some(Vec::new());
            for a in self.degrees() {
                let b = n - a;
                let (Some(ma), Some(mb)) = (self.module(a), other.module(b)) else {
                    continue;
                };
                blocks.push(Block {
                    a,
                    b,
                    offset: twists.len(),
                });
                for i in 0..ma.rank() {
                    for j in 0..mb.rank() {
                        twists.push(ma.twists[i] + mb.twists[j]);
                        labels = match (labels, ma.labels(), mb.labels()) {
                            (Some(mut acc), Some(la), Some(lb)) => {
                                acc.push(la[i].mul(&lb[j]));
                                Some(acc)
                            }
                            _ => None,
                        };
                    }
                }
            }
            layout.push(blocks);
            modules.push(FreeModule { twists, labels });
        }

        let mut differentials = Vec::new();
        for n in lo..hi {
            let src = (n - lo) as usize;
            let mut d = PolyMatrix::zero(modules[src + 1].rank(), modules[src].rank(), nvars);
            for block in &layout[src] {
                let (ma, mb) = (
                    self.module(block.a).unwrap(),
                    other.module(block.b).unwrap(),
                );
                let rb = mb.rank();
                // d_A ⊗ 1 into (a+1, b)
                if let (Some(da), Some(target)) = (
                    self.differential(block.a),
                    layout[src + 1].iter().find(|t| t.a == block.a + 1),
                ) {
                    for i in 0..ma.rank() {
                        for i2 in 0..da.rows {
                            let e = da.get(i2, i);
                            if e.is_zero() {
                                continue;
                            }
                            for j in 0..rb {
                                d.set(
                                    target.offset + i2 * rb + j,
                                    block.offset + i * rb + j,
                                    e.clone(),
                                );
                            }
                        }
                    }
                }
                // (-1)^a 1 ⊗ d_B into (a, b+1)
                if let (Some(db), Some(target)) = (
                    other.differential(block.b),
                    layout[src + 1].iter().find(|t| t.a == block.a),
                ) {
                    let rb2 = db.rows;
                    let sign = if block.a.rem_euclid(2) == 1 {
                        -BigRational::one()
                    } else {
                        BigRational::one()
                    };
                    for i in 0..ma.rank() {
                        for j in 0..rb {
                            for j2 in 0..rb2 {
                                let e = db.get(j2, j);
                                if e.is_zero() {
                                    continue;
                                }
                                d.set(
                                    target.offset + i * rb2 + j2,
                                    block.offset + i * rb + j,
                                    e.scale(&sign),
                                );
                            }
                        }
                    }
                }
            }
            differentials.push(d);
        }
        FreeComplex::new(
            self.weighting.clone(),
            self.field,
            lo,
            modules,
            differentials,
        )
    }

    /// Cancels unit entries of the differentials until none remain.
    ///
    /// Each cancellation removes one generator from two adjacent degrees and
    /// yields a homotopy-equivalent complex.
    pub fn minimize(&self) -> FreeComplex {
        let mut cx = self.clone();
        'outer: loop {
            for k in 0..cx.differentials.len() {
                let unit = cx.differentials[k]
                    .nonzero_entries()
                    .find_map(|(r, c, e)| e.as_constant().map(|u| (r, c, u)));
                if let Some((r, c, u)) = unit {
                    cx.cancel(k, r, c, &u);
                    continue 'outer;
                }
            }
            break;
        }
        cx
    }

    fn cancel(&mut self, k: usize, r: usize, c: usize, unit: &BigRational) {
        let field = self.field;
        let inv = field.inv(unit);
        let d = &self.differentials[k];
        let nvars = self.weighting.len();
        let mut next = PolyMatrix::zero(d.rows - 1, d.cols - 1, nvars);
        for (i2, i) in (0..d.rows).filter(|&i| i != r).enumerate() {
            for (j2, j) in (0..d.cols).filter(|&j| j != c).enumerate() {
                // δ - γ u^{-1} β
                let correction = &(d.get(i, c) * d.get(r, j)).scale(&inv);
                next.set(i2, j2, field.normalize_poly(&(d.get(i, j) - correction)));
            }
        }
        self.differentials[k] = next;
        if k > 0 {
            let prev = &self.differentials[k - 1];
            let mut m = PolyMatrix::zero(prev.rows - 1, prev.cols, nvars);
            for (i2, i) in (0..prev.rows).filter(|&i| i != c).enumerate() {
                for j in 0..prev.cols {
                    m.set(i2, j, prev.get(i, j).clone());
                }
            }
            self.differentials[k - 1] = m;
        }
        if k + 1 < self.differentials.len() {
            let after = &self.differentials[k + 1];
            let mut m = PolyMatrix::zero(after.rows, after.cols - 1, nvars);
            for i in 0..after.rows {
                for (j2, j) in (0..after.cols).filter(|&j| j != r).enumerate() {
                    m.set(i, j2, after.get(i, j).clone());
                }
            }
            self.differentials[k + 1] = m;
        }
        self.modules[k] = self.modules[k].without(c);
        self.modules[k + 1] = self.modules[k + 1].without(r);
        self.trim();
    }

    /// Drops zero modules at either end (keeping at least one term).
    fn trim(&mut self) {
        while self.modules.len() > 1 && self.modules.last().is_some_and(|m| m.rank() == 0) {
            self.modules.pop();
            self.differentials.pop();
        }
        while self.modules.len() > 1 && self.modules[0].rank() == 0 {
            self.modules.remove(0);
            self.differentials.remove(0);
            self.lo += 1;
        }
    }

    /// No differential has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().all(|d| {
            d.nonzero_entries()
                .all(|(_, _, e)| e.as_constant().is_none())
        })
    }

    /// Re-run the structural validation of [`FreeComplex::new`].
    pub fn validate(&self) -> Result<(), ComplexError> {
        FreeComplex::new(
            self.weighting.clone(),
            self.field,
            self.lo,
            self.modules.clone(),
            self.differentials.clone(),
        )
        .map(|_| ())
    }

    /// Common value of `twist - weight(label)` over all labelled generators.
    pub fn weight_offset(&self) -> Option<i64> {
        let mut offset = None;
        for m in &self.modules {
            let labels = m.labels()?;
            for (t, l) in m.twists.iter().zip(labels) {
                let o = t - l.weight(&self.weighting).ok()?;
                match offset {
                    None => offset = Some(o),
                    Some(v) if v != o => return None,
                    _ => {}
                }
            }
        }
        offset
    }

    /// `Σ_k (-1)^k #{generators of F^k whose label divides the monomial d}`:
    /// the Euler characteristic of the complex in multidegree `d`.
    pub fn euler_characteristic_at(&self, d: &Monomial) -> Option<i64> {
        let mut chi = 0i64;
        for (k, m) in self.modules.iter().enumerate() {
            let degree = self.lo + k as i64;
            let count = m.labels()?.iter().filter(|l| l.divides(d)).count() as i64;
            chi += if degree.rem_euclid(2) == 0 {
                count
            } else {
                -count
            };
        }
        Some(chi)
    }

    pub fn display(&self) -> ComplexDisplay<'_> {
        ComplexDisplay(self)
    }
}

/// Renders `[A(-1) -> A^2]`, highest homological degree last.
pub struct ComplexDisplay<'a>(&'a FreeComplex);

pub(crate) fn module_text(m: &FreeModule) -> String {
    if m.rank() == 0 {
        return "0".into();
    }
    let mut twists = m.twists.clone();
    twists.sort_unstable();
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < twists.len() {
        let t = twists[i];
        let mut j = i;
        while j < twists.len() && twists[j] == t {
            j += 1;
        }
        let base = if t == 0 {
            "A".to_string()
        } else {
            format!("A({})", -t)
        };
        parts.push(if j - i > 1 {
            format!("{base}^{}", j - i)
        } else {
            base
        });
        i = j;
    }
    parts.join("+")
}

impl fmt::Display for ComplexDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.modules.iter().map(module_text).collect();
        write!(f, "[{}]", parts.join(" -> "))
    }
}

/// Entry `(row, col)` of a differential, as a list of `(coefficient, exponents)` terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixEntry {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<(String, Vec<i64>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialData {
    /// Source degree `k` of `d^k`.
    pub degree: i64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<MatrixEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexData {
    pub lo: i64,
    pub hi: i64,
    /// Generator weights per degree, `lo` first.
    pub twists: Vec<Vec<i64>>,
    pub ranks: Vec<usize>,
    pub differentials: Vec<DifferentialData>,
}

impl FreeComplex {
    /// Serializable view with matrices as term lists.
    pub fn data(&self) -> ComplexData {
        ComplexData {
            lo: self.lo,
            hi: self.hi(),
            twists: self.modules.iter().map(|m| m.twists.clone()).collect(),
            ranks: self.modules.iter().map(FreeModule::rank).collect(),
            differentials: self
                .differentials
                .iter()
                .enumerate()
                .map(|(k, d)| DifferentialData {
                    degree: self.lo + k as i64,
                    rows: d.rows,
                    cols: d.cols,
                    entries: d
                        .nonzero_entries()
                        .map(|(row, col, e)| MatrixEntry {
                            row,
                            col,
                            terms: e
                                .terms()
                                .rev()
                                .map(|(m, c)| (c.to_string(), m.exponents().to_vec()))
                                .collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

pub(crate) fn signed_one(negative: bool) -> BigRational {
    if negative {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}
