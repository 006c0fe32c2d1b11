//! Line-oriented ring-spec documents and the polynomial expression grammar
//!
//! ```text
//! expr    := sign? term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := primary ('^' integer)?
//! primary := integer | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{BrownReidParams, Kind, RingSpec, SpecError};
use crate::algebra::{Field, Polynomial, Weighting};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    token: Token,
    column: usize,
}

fn lex(text: &str, line: usize, base_column: usize) -> Result<Vec<Lexed>, SpecError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = base_column + i;
        let token = match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '+' => Token::Plus,
            // ASCII hyphen and U+2212
            '-' | '\u{2212}' => Token::Minus,
            '*' => Token::Star,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Lexed {
                    token: Token::Int(digits.parse().expect("ascii digits")),
                    column,
                });
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Lexed {
                    token: Token::Ident(chars[start..i].iter().collect()),
                    column,
                });
                continue;
            }
            other => {
                return Err(SpecError::Syntax {
                    line,
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Lexed { token, column });
        i += 1;
    }
    Ok(out)
}

struct ExprParser<'a> {
    tokens: Vec<Lexed>,
    pos: usize,
    line: usize,
    end_column: usize,
    weighting: &'a Weighting,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|l| &l.token)
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.end_column, |l| l.column)
    }

    fn error(&self, message: impl Into<String>) -> SpecError {
        SpecError::Syntax {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn nvars(&self) -> usize {
        self.weighting.len()
    }

    fn expr(&mut self) -> Result<Polynomial, SpecError> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                -&self.term()?
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, SpecError> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, SpecError> {
        let base = self.primary()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.peek() {
                Some(Token::Int(n)) => {
                    let exp: u32 = n.try_into().map_err(|_| self.error("exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(exp));
                }
                _ => return Err(self.error("expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Polynomial, SpecError> {
        let token = self.peek().cloned();
        match token {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(
                    self.nvars(),
                    BigRational::from_integer(n),
                ))
            }
            Some(Token::Ident(name)) => match self.weighting.index_of(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Polynomial::var(self.nvars(), i))
                }
                None => Err(self.error(format!("unknown variable `{name}`"))),
            },
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.error("expected `)`")),
                }
            }
            Some(_) => Err(self.error("expected a number, variable or `(`")),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

/// Parses a polynomial expression over the variables of `weighting`.
///
/// `line` and `base_column` place diagnostics inside the enclosing document.
pub fn parse_polynomial(
    text: &str,
    weighting: &Weighting,
    line: usize,
    base_column: usize,
) -> Result<Polynomial, SpecError> {
    let tokens = lex(text, line, base_column)?;
    let end_column = base_column + text.chars().count();
    let mut parser = ExprParser {
        tokens,
        pos: 0,
        line,
        end_column,
        weighting,
    };
    let poly = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct RelLine {
    line: usize,
    column: usize,
    text: String,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Whitespace-separated words as (byte offset, 1-based char column, word).
fn words_with_columns(line: &str) -> Vec<(usize, usize, &str)> {
    let mut out = Vec::new();
    let mut in_word = false;
    let mut start = 0;
    for (pos, c) in line.char_indices() {
        if c.is_whitespace() {
            if in_word {
                out.push((start, &line[start..pos]));
                in_word = false;
            }
        } else if !in_word {
            in_word = true;
            start = pos;
        }
    }
    if in_word {
        out.push((start, &line[start..]));
    }
    out.into_iter()
        .map(|(byte, w)| (byte, line[..byte].chars().count() + 1, w))
        .collect()
}

pub fn parse_ring_spec(text: &str) -> Result<RingSpec, SpecError> {
    let mut field: Option<Field> = None;
    let mut kind: Option<Kind> = None;
    let mut template: Option<(usize, BrownReidParams)> = None;
    let mut names = Vec::new();
    let mut weights = Vec::new();
    let mut var_line = None;
    let mut rels = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let words = words_with_columns(content);
        let Some(&(_, key_col, keyword)) = words.first() else {
            continue;
        };
        let syntax = |column: usize, message: String| SpecError::Syntax {
            line: line_no,
            column,
            message,
        };
        match keyword {
            "field" => {
                if field.is_some() {
                    return Err(syntax(key_col, "duplicate `field` line".into()));
                }
                let rest: Vec<&str> = words[1..].iter().map(|w| w.2).collect();
                let col = words.get(1).map_or(key_col, |w| w.1);
                let parsed = match rest.as_slice() {
                    ["Q"] => Field::Rational,
                    ["GF", p] => {
                        let p: u64 = p
                            .parse()
                            .map_err(|_| syntax(words[2].1, format!("invalid prime `{p}`")))?;
                        Field::prime(p).map_err(|e| syntax(words[2].1, e.to_string()))?
                    }
                    [single] if single.starts_with("GF:") => single
                        .parse()
                        .map_err(|e: crate::algebra::AlgebraError| syntax(col, e.to_string()))?,
                    _ => {
                        return Err(syntax(
                            col,
                            "expected `field Q` or `field GF <prime>`".into(),
                        ))
                    }
                };
                field = Some(parsed);
            }
            "var" => {
                if words.len() != 3 {
                    return Err(syntax(
                        key_col,
                        "expected `var <name> <integer-weight>`".into(),
                    ));
                }
                let (_, name_col, name) = words[1];
                let (_, weight_col, weight) = words[2];
                if !is_identifier(name) {
                    return Err(syntax(name_col, format!("invalid variable name `{name}`")));
                }
                if names.iter().any(|n| n == name) {
                    return Err(syntax(name_col, format!("duplicate variable `{name}`")));
                }
                let weight: i64 = weight
                    .replace('\u{2212}', "-")
                    .parse()
                    .map_err(|_| syntax(weight_col, format!("invalid weight `{weight}`")))?;
                names.push(name.to_string());
                weights.push(weight);
                var_line.get_or_insert(line_no);
            }
            "rel" => {
                let Some(&(byte, column, _)) = words.get(1) else {
                    return Err(syntax(key_col, "empty relation".into()));
                };
                rels.push(RelLine {
                    line: line_no,
                    column,
                    text: content[byte..].trim_end().to_string(),
                });
            }
            "kind" => {
                if kind.is_some() {
                    return Err(syntax(key_col, "duplicate `kind` line".into()));
                }
                let col = words.get(1).map_or(key_col, |w| w.1);
                let parsed = match words.get(1).map(|w| w.2) {
                    Some("flip") if words.len() == 2 => Kind::Flip,
                    Some("flop") if words.len() == 2 => Kind::Flop,
                    Some("unspecified") if words.len() == 2 => Kind::Unspecified,
                    _ => return Err(syntax(col, "expected `kind flip|flop|unspecified`".into())),
                };
                kind = Some(parsed);
            }
            "template" => {
                if template.is_some() {
                    return Err(syntax(key_col, "duplicate `template` line".into()));
                }
                match words.get(1).map(|w| w.2) {
                    Some("brown-reid") => {}
                    _ => {
                        let col = words.get(1).map_or(key_col, |w| w.1);
                        return Err(syntax(
                            col,
                            "unknown template (expected `brown-reid`)".into(),
                        ));
                    }
                }
                let params = parse_template_params(&words[2..], line_no, key_col)?;
                template = Some((line_no, params));
            }
            other => {
                return Err(syntax(key_col, format!("unknown directive `{other}`")));
            }
        }
    }

    let field = field.unwrap_or_default();
    if let Some((line, params)) = template {
        if let Some(first) = var_line.or(rels.first().map(|r| r.line)) {
            return Err(SpecError::Syntax {
                line: first.max(line),
                column: 1,
                message: "`template` cannot be combined with `var` or `rel` lines".into(),
            });
        }
        let mut spec = RingSpec::brown_reid(params, field)?;
        if let Some(kind) = kind {
            spec.kind = kind;
        }
        return Ok(spec);
    }

    let weighting = Weighting::new(names, weights).map_err(SpecError::Algebra)?;
    let mut relations = Vec::with_capacity(rels.len());
    for rel in &rels {
        relations.push(parse_polynomial(
            &rel.text, &weighting, rel.line, rel.column,
        )?);
    }
    RingSpec::new(
        field,
        weighting,
        relations,
        kind.unwrap_or(Kind::Unspecified),
    )
}

fn parse_template_params(
    words: &[(usize, usize, &str)],
    line: usize,
    key_col: usize,
) -> Result<BrownReidParams, SpecError> {
    const KEYS: [&str; 6] = ["lambda", "mu", "d", "e", "alpha", "beta"];
    let mut values: [Option<i64>; 6] = [None; 6];
    for &(_, column, word) in words {
        let syntax = |message: String| SpecError::Syntax {
            line,
            column,
            message,
        };
        let (key, value) = word
            .split_once('=')
            .ok_or_else(|| syntax(format!("expected `key=value`, found `{word}`")))?;
        let slot = KEYS
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| syntax(format!("unknown template parameter `{key}`")))?;
        if values[slot].is_some() {
            return Err(syntax(format!("duplicate parameter `{key}`")));
        }
        let value: i64 = value
            .replace('\u{2212}', "-")
            .parse()
            .map_err(|_| syntax(format!("invalid integer `{value}` for `{key}`")))?;
        values[slot] = Some(value);
    }
    let mut out = [0i64; 6];
    for (k, v) in values.iter().enumerate() {
        out[k] = v.ok_or_else(|| SpecError::Syntax {
            line,
            column: key_col,
            message: format!("missing template parameter `{}`", KEYS[k]),
        })?;
    }
    let [lambda, mu, d, e, alpha, beta] = out;
    for (name, value) in KEYS.iter().zip(out) {
        if value <= 0 {
            return Err(SpecError::NonPositiveParameter {
                name: name.to_string(),
                value,
            });
        }
    }
    Ok(BrownReidParams {
        lambda: lambda as u32,
        mu: mu as u32,
        d: d as u32,
        e: e as u32,
        alpha: alpha as u32,
        beta: beta as u32,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expression_precedence() {
        let w = Weighting::unit(1, 1);
        let f = parse_polynomial("2*x1^2*y1 - (x1 - y1)^2 + 3", &w, 1, 1).unwrap();
        let expanded = parse_polynomial("2*x1^2*y1 - x1^2 + 2*x1*y1 - y1^2 + 3", &w, 1, 1).unwrap();
        assert_eq!(f, expanded);
    }

    #[test]
    fn unicode_minus_accepted() {
        let w = Weighting::unit(1, 1);
        let a = parse_polynomial("x1 \u{2212} y1", &w, 1, 1).unwrap();
        let b = parse_polynomial("x1 - y1", &w, 1, 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn error_columns() {
        let w = Weighting::unit(1, 1);
        match parse_polynomial("x1 + q", &w, 4, 5).unwrap_err() {
            SpecError::Syntax { line, column, .. } => assert_eq!((line, column), (4, 10)),
            e => panic!("{e:?}"),
        }
        match parse_polynomial("x1 * ", &w, 1, 1).unwrap_err() {
            SpecError::Syntax {
                column, message, ..
            } => {
                assert_eq!(column, 6);
                assert!(message.contains("end"), "{message}");
            }
            e => panic!("{e:?}"),
        }
        assert!(parse_polynomial("x1 ^ y1", &w, 1, 1).is_err());
        assert!(parse_polynomial("(x1", &w, 1, 1).is_err());
        assert!(parse_polynomial("x1 y1", &w, 1, 1).is_err());
    }

    #[test]
    fn document_syntax_error_location() {
        let text = "field Q\nvar x1 1\nrel x1 + $\n";
        match parse_ring_spec(text).unwrap_err() {
            SpecError::Syntax { line, column, .. } => assert_eq!((line, column), (3, 10)),
            e => panic!("{e:?}"),
        }
        let text = "var x1 one\n";
        match parse_ring_spec(text).unwrap_err() {
            SpecError::Syntax { line, column, .. } => assert_eq!((line, column), (1, 8)),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn template_cannot_mix_with_vars() {
        let text = "template brown-reid lambda=1 mu=2 d=1 e=1 alpha=1 beta=1\nvar w 1\n";
        assert!(matches!(
            parse_ring_spec(text),
            Err(SpecError::Syntax { .. })
        ));
    }

    #[test]
    fn template_parameter_errors() {
        let missing = "template brown-reid lambda=1 mu=2 d=1 e=1 alpha=1\n";
        assert!(matches!(
            parse_ring_spec(missing),
            Err(SpecError::Syntax { .. })
        ));
        let zero = "template brown-reid lambda=1 mu=2 d=0 e=1 alpha=1 beta=1\n";
        assert!(matches!(
            parse_ring_spec(zero),
            Err(SpecError::NonPositiveParameter { .. })
        ));
        let gcd = "template brown-reid lambda=2 mu=4 d=1 e=1 alpha=1 beta=1\n";
        assert!(matches!(
            parse_ring_spec(gcd),
            Err(SpecError::GcdViolation { .. })
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a flop\n\nfield GF 101\nvar x 1   # positive\nvar y -1\nkind flop\n";
        let spec = parse_ring_spec(text).unwrap();
        assert_eq!(spec.field, Field::Prime(101));
        assert_eq!(spec.weighting.weights(), &[1, -1]);
        assert_eq!(spec.kind, Kind::Flop);
    }
}
