use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{AlgebraError, Polynomial};

/// Coefficient field. Elements are always carried as `BigRational`; over
/// `GF(p)` they are normalized to integer representatives in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn normalize(&self, c: &BigRational) -> BigRational {
        match self {
            Field::Rational => c.clone(),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let num = c.numer().mod_floor(&p);
                let den = c.denom().mod_floor(&p);
                let inv = mod_inverse(&den, &p).expect("denominator divisible by characteristic");
                BigRational::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn is_zero(&self, c: &BigRational) -> bool {
        self.normalize(c).is_zero()
    }

    /// Multiplicative inverse; `c` must be nonzero in the field.
    pub fn inv(&self, c: &BigRational) -> BigRational {
        match self {
            Field::Rational => c.recip(),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let c = self.normalize(c);
                let inv = mod_inverse(c.numer(), &p).expect("inverse of zero");
                BigRational::from_integer(inv)
            }
        }
    }

    pub fn normalize_poly(&self, f: &Polynomial) -> Polynomial {
        match self {
            Field::Rational => f.clone(),
            Field::Prime(_) => f.map_coefficients(|c| self.normalize(c)),
        }
    }

    /// Rank of a dense matrix by Gaussian elimination.
    pub fn rank(&self, mut rows: Vec<Vec<BigRational>>) -> usize {
        for row in rows.iter_mut() {
            for c in row.iter_mut() {
                *c = self.normalize(c);
            }
        }
        let ncols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = self.inv(&rows[rank][col]);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == rank || row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] * &inv;
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x = self.normalize(&(&*x - &factor * p));
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "GF:{p}"),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts `Q`, `GF:<p>` and `GF <p>`.
impl FromStr for Field {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rational);
        }
        let rest = s
            .strip_prefix("GF")
            .ok_or_else(|| AlgebraError::UnknownField(s.to_string()))?;
        let rest = rest.trim_start_matches([':', ' ']).trim();
        let p: u64 = rest
            .parse()
            .map_err(|_| AlgebraError::UnknownField(s.to_string()))?;
        Field::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return None;
    }
    let e = a.extended_gcd(p);
    if !e.gcd.abs().is_one() {
        return None;
    }
    Some(e.x.mod_floor(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_fields() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("GF:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert_eq!("GF 32003".parse::<Field>().unwrap(), Field::Prime(32003));
        assert!(matches!(
            "GF:8".parse::<Field>(),
            Err(AlgebraError::NotPrime(8))
        ));
        assert!("R".parse::<Field>().is_err());
    }

    #[test]
    fn prime_normalization() {
        let f = Field::Prime(7);
        assert_eq!(f.normalize(&q(-1, 1)), q(6, 1));
        assert_eq!(f.normalize(&q(1, 2)), q(4, 1));
        assert_eq!(f.inv(&q(3, 1)), q(5, 1));
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let m = vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(-1, 1)]];
        assert_eq!(Field::Rational.rank(m.clone()), 2);
        assert_eq!(Field::Prime(2).rank(m), 1);
    }
}
