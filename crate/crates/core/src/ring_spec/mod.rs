//! Ring descriptions: weighted variables, homogeneous relations and the
//! flip/flop metadata attached to them.

mod ci;
mod parser;

use std::fmt::{self, Write as _};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    AlgebraError, Block, Field, GradedPolynomial, Homogeneity, Monomial, Polynomial, Weighting,
};

pub use ci::{validate_ci_assumptions, CiLevel, CiReport};
pub use parser::{parse_polynomial, parse_ring_spec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("relation {index} (`{relation}`) is inhomogeneous: term weights {term_weights:?}")]
    Inhomogeneous {
        index: usize,
        relation: String,
        term_weights: Vec<i64>,
    },
    #[error("relation {index} is zero")]
    ZeroRelation { index: usize },
    #[error("gcd(lambda, mu) = gcd({lambda}, {mu}) must be 1")]
    GcdViolation { lambda: u32, mu: u32 },
    #[error("parameter `{name}` must be positive, got {value}")]
    NonPositiveParameter { name: String, value: i64 },
    #[error("ring has no variables")]
    NoVariables,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Flip,
    Flop,
    Unspecified,
}

impl Kind {
    /// The canonical shift `a` attached to a declared birational type.
    pub fn declared_a(&self) -> Option<i64> {
        match self {
            Kind::Flip => Some(1),
            Kind::Flop => Some(0),
            Kind::Unspecified => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Flip => "flip",
            Kind::Flop => "flop",
            Kind::Unspecified => "unspecified",
        })
    }
}

/// Parameters of the Brown–Reid family of 3-fold flips.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BrownReidParams {
    pub lambda: u32,
    pub mu: u32,
    pub d: u32,
    pub e: u32,
    pub alpha: u32,
    pub beta: u32,
}

impl BrownReidParams {
    pub fn new(lambda: u32, mu: u32, d: u32, e: u32, alpha: u32, beta: u32) -> Self {
        Self {
            lambda,
            mu,
            d,
            e,
            alpha,
            beta,
        }
    }

    fn validate(&self) -> Result<(), SpecError> {
        let named = [
            ("lambda", self.lambda),
            ("mu", self.mu),
            ("d", self.d),
            ("e", self.e),
            ("alpha", self.alpha),
            ("beta", self.beta),
        ];
        for (name, value) in named {
            if value == 0 {
                return Err(SpecError::NonPositiveParameter {
                    name: name.into(),
                    value: 0,
                });
            }
        }
        if self.lambda.gcd(&self.mu) != 1 {
            return Err(SpecError::GcdViolation {
                lambda: self.lambda,
                mu: self.mu,
            });
        }
        Ok(())
    }
}

/// A validated ring description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub field: Field,
    pub weighting: Weighting,
    pub relations: Vec<GradedPolynomial>,
    pub kind: Kind,
    /// Set when the ring was instantiated from the Brown–Reid template.
    pub template: Option<BrownReidParams>,
}

impl RingSpec {
    /// Checks that every relation is nonzero and homogeneous.
    pub fn new(
        field: Field,
        weighting: Weighting,
        relations: Vec<Polynomial>,
        kind: Kind,
    ) -> Result<Self, SpecError> {
        if weighting.is_empty() {
            return Err(SpecError::NoVariables);
        }
        let mut graded = Vec::with_capacity(relations.len());
        for (k, rel) in relations.into_iter().enumerate() {
            let rel = field.normalize_poly(&rel);
            let g = GradedPolynomial::new(rel, &weighting)?;
            match g.weight() {
                Homogeneity::Zero => return Err(SpecError::ZeroRelation { index: k + 1 }),
                Homogeneity::Inhomogeneous => {
                    let term_weights = g
                        .poly()
                        .terms()
                        .rev()
                        .map(|(m, _)| m.weight(&weighting))
                        .collect::<Result<_, _>>()?;
                    return Err(SpecError::Inhomogeneous {
                        index: k + 1,
                        relation: g.poly().display(weighting.names()).to_string(),
                        term_weights,
                    });
                }
                Homogeneity::Weight(_) => graded.push(g),
            }
        }
        Ok(Self {
            field,
            weighting,
            relations: graded,
            kind,
            template: None,
        })
    }

    /// Relation-free ring with kind `unspecified`.
    pub fn polynomial_ring(weighting: Weighting) -> Self {
        Self::new(Field::Rational, weighting, Vec::new(), Kind::Unspecified)
            .expect("relation-free rings are valid")
    }

    /// `k[x1,x2,y1,y2,y3,z]/(f1,f2)` with
    /// deg = (lambda, mu, -mu, -lambda-mu*e, -1, 0),
    /// f1 = x1*y2 - y1^e*z^alpha - y3^(mu*e), f2 = y1*x2 - z^beta - x1^d*y3^(lambda*d).
    pub fn brown_reid(params: BrownReidParams, field: Field) -> Result<Self, SpecError> {
        params.validate()?;
        let BrownReidParams {
            lambda,
            mu,
            d,
            e,
            alpha,
            beta,
        } = params;
        let (l, m, e64) = (lambda as i64, mu as i64, e as i64);
        let names = ["x1", "x2", "y1", "y2", "y3", "z"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let weighting = Weighting::new(names, vec![l, m, -m, -l - m * e64, -1, 0])?;
        let mono = |exps: [i64; 6]| Monomial::new(exps.to_vec());
        let one = BigRational::one;
        let f1 = Polynomial::from_terms(
            6,
            [
                (one(), mono([1, 0, 0, 1, 0, 0])),
                (-one(), mono([0, 0, e64, 0, 0, alpha as i64])),
                (-one(), mono([0, 0, 0, 0, m * e64, 0])),
            ],
        )?;
        let f2 = Polynomial::from_terms(
            6,
            [
                (one(), mono([0, 1, 1, 0, 0, 0])),
                (-one(), mono([0, 0, 0, 0, 0, beta as i64])),
                (-one(), mono([d as i64, 0, 0, 0, l * d as i64, 0])),
            ],
        )?;
        let mut spec = Self::new(field, weighting, vec![f1, f2], Kind::Flip)?;
        spec.template = Some(params);
        Ok(spec)
    }

    /// Number of positive-weight variables.
    pub fn p(&self) -> usize {
        self.weighting.count(Block::Positive)
    }

    /// Number of negative-weight variables.
    pub fn q(&self) -> usize {
        self.weighting.count(Block::Negative)
    }

    /// Number of weight-zero variables.
    pub fn r(&self) -> usize {
        self.weighting.count(Block::Zero)
    }

    /// Number of relations.
    pub fn s(&self) -> usize {
        self.relations.len()
    }

    pub fn nvars(&self) -> usize {
        self.weighting.len()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn relation_polys(&self) -> Vec<Polynomial> {
        self.relations.iter().map(|g| g.poly().clone()).collect()
    }

    pub fn relation_degrees(&self) -> Vec<i64> {
        self.relations
            .iter()
            .map(|g| g.weight().weight().expect("relations are homogeneous"))
            .collect()
    }

    /// Canonical text form; parsing it yields an equal spec.
    pub fn to_spec_text(&self) -> String {
        let mut out = String::new();
        match self.field {
            Field::Rational => out.push_str("field Q\n"),
            Field::Prime(p) => writeln!(out, "field GF {p}").unwrap(),
        }
        if let Some(t) = &self.template {
            writeln!(
                out,
                "template brown-reid lambda={} mu={} d={} e={} alpha={} beta={}",
                t.lambda, t.mu, t.d, t.e, t.alpha, t.beta
            )
            .unwrap();
        } else {
            for (name, w) in self.weighting.names().iter().zip(self.weighting.weights()) {
                writeln!(out, "var {name} {w}").unwrap();
            }
            for rel in &self.relations {
                writeln!(out, "rel {}", rel.poly().display(self.weighting.names())).unwrap();
            }
        }
        writeln!(out, "kind {}", self.kind).unwrap();
        out
    }
}

/// Where the canonical shift `a` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftSource {
    /// Relation-free ring: `a = eta_minus - eta_plus`.
    PolynomialRing,
    /// Declared `kind` of a ring with relations.
    DeclaredKind,
    /// Relations present but no kind declared.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FlipInvariants {
    pub eta_plus: i64,
    pub eta_minus: i64,
    pub a: Option<i64>,
    pub source: ShiftSource,
    /// Set when a relation-free ring declares a kind whose shift disagrees with the weights.
    pub kind_mismatch: bool,
}

pub fn flip_invariants(spec: &RingSpec) -> FlipInvariants {
    let eta_plus = spec.weighting.eta_plus();
    let eta_minus = spec.weighting.eta_minus();
    if spec.is_polynomial_ring() {
        let a = eta_minus - eta_plus;
        let kind_mismatch = spec.kind.declared_a().is_some_and(|declared| declared != a);
        FlipInvariants {
            eta_plus,
            eta_minus,
            a: Some(a),
            source: ShiftSource::PolynomialRing,
            kind_mismatch,
        }
    } else {
        let a = spec.kind.declared_a();
        FlipInvariants {
            eta_plus,
            eta_minus,
            a,
            source: if a.is_some() {
                ShiftSource::DeclaredKind
            } else {
                ShiftSource::Unknown
            },
            kind_mismatch: false,
        }
    }
}
