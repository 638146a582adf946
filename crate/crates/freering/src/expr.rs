//! Expression parser for group-ring terms: rationals, generators `x1..xn`,
//! sums, differences, products, and integer powers.
//!
//! Grammar (whitespace insignificant):
//! ```text
//! expr     := term { ("+"|"-") term }
//! term     := factor { "*" factor }
//! factor   := atom [ "^" integer ]
//! atom     := rational | generator | "(" expr ")"
//! generator := "x" digits
//! rational  := ["-"] digits ["/" digits]
//! ```

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

use crate::groupring::{is_trivial_unit, GroupRingElem};
use crate::words::Word;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {detail}")]
    Syntax { pos: usize, detail: String },
    #[error("generator x{index} exceeds rank {rank}")]
    GeneratorOutOfRange { index: u32, rank: u32 },
    #[error("negative power of a non-unit")]
    NonUnitNegativePower,
    #[error("zero denominator at position {0}")]
    ZeroDenominator(usize),
    #[error("exponent too large")]
    ExponentTooLarge,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Rational(BigRational),
    Generator(u32),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    rank: u32,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn error(&self, detail: impl Into<String>) -> ExprError {
        ExprError::Syntax {
            pos: self.pos,
            detail: detail.into(),
        }
    }

    fn digits(&mut self) -> Result<BigInt, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = Expr::Add(Box::new(acc), Box::new(rhs));
                }
                Some(b'-') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = Expr::Sub(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.bump();
            let rhs = self.factor()?;
            acc = Expr::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let neg = if self.peek() == Some(b'-') {
                self.bump();
                true
            } else {
                false
            };
            let digits = self.digits()?;
            let mag: i64 = digits
                .try_into()
                .map_err(|_| ExprError::ExponentTooLarge)?;
            let e = if neg { -mag } else { mag };
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            Some(b'x') => {
                self.bump();
                let idx = self.digits()?;
                let index: u32 = idx
                    .try_into()
                    .map_err(|_| self.error("generator index too large"))?;
                if index == 0 || index > self.rank {
                    return Err(ExprError::GeneratorOutOfRange {
                        index,
                        rank: self.rank,
                    });
                }
                Ok(Expr::Generator(index))
            }
            Some(b'-') => {
                self.bump();
                let num = self.digits()?;
                let den = self.maybe_denominator()?;
                Ok(Expr::Rational(BigRational::new(-num, den)))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let den = self.maybe_denominator()?;
                Ok(Expr::Rational(BigRational::new(num, den)))
            }
            _ => Err(self.error("expected an atom")),
        }
    }

    fn maybe_denominator(&mut self) -> Result<BigInt, ExprError> {
        if self.peek() == Some(b'/') {
            self.bump();
            let pos = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(ExprError::ZeroDenominator(pos));
            }
            Ok(den)
        } else {
            Ok(BigInt::one())
        }
    }
}

/// Parses an expression over generators `x1..x{rank}`.
pub fn parse_expr(text: &str, rank: u32) -> Result<Expr, ExprError> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        rank,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

/// Evaluates an expression to a group-ring element.
pub fn eval(expr: &Expr, rank: u32) -> Result<GroupRingElem, ExprError> {
    match expr {
        Expr::Rational(c) => Ok(GroupRingElem::scalar(rank, c.clone())),
        Expr::Generator(i) => {
            let w = Word::generator(rank, *i as i32).expect("validated by parser");
            Ok(GroupRingElem::from_word(w))
        }
        Expr::Add(a, b) => Ok(eval(a, rank)?.add(&eval(b, rank)?).expect("same rank")),
        Expr::Sub(a, b) => Ok(eval(a, rank)?.sub(&eval(b, rank)?).expect("same rank")),
        Expr::Mul(a, b) => Ok(eval(a, rank)?.mul(&eval(b, rank)?).expect("same rank")),
        Expr::Pow(a, e) => {
            let base = eval(a, rank)?;
            if *e >= 0 {
                if *e > u16::MAX as i64 {
                    return Err(ExprError::ExponentTooLarge);
                }
                Ok(base.pow(*e as u32).expect("same rank"))
            } else {
                // Negative powers exist only for the trivial units alpha*g.
                let Some((c, w)) = is_trivial_unit(&base) else {
                    return Err(ExprError::NonUnitNegativePower);
                };
                let k = e.unsigned_abs();
                if k > u16::MAX as u64 {
                    return Err(ExprError::ExponentTooLarge);
                }
                let cinv = BigRational::one() / c;
                let mut acc = GroupRingElem::one(rank);
                let step = GroupRingElem::monomial(cinv, w.inv());
                for _ in 0..k {
                    acc = acc.mul(&step).expect("same rank");
                }
                Ok(acc)
            }
        }
    }
}

/// Parses and evaluates in one step.
pub fn eval_str(text: &str, rank: u32) -> Result<GroupRingElem, ExprError> {
    eval(&parse_expr(text, rank)?, rank)
}

/// Canonical expression form: terms in shortlex order of the support, each
/// word printed with compressed exponent runs. `parse . print` is the
/// identity on group-ring elements.
pub fn print_elem(f: &GroupRingElem) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (word, coeff)) in f.sorted_terms().into_iter().enumerate() {
        let neg = coeff < BigRational::zero();
        let mag = if neg { -coeff.clone() } else { coeff.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        // A leading "-x1" does not parse (the sign belongs to rationals), so
        // the first negative term always carries an explicit coefficient.
        let coeff_part = if mag.is_one() && !word.is_identity() && !(i == 0 && neg) {
            None
        } else {
            Some(format_rational(&mag))
        };
        let word_part = format_word(&word);
        match (coeff_part, word_part) {
            (Some(c), Some(w)) => {
                out.push_str(&c);
                out.push('*');
                out.push_str(&w);
            }
            (Some(c), None) => out.push_str(&c),
            (None, Some(w)) => out.push_str(&w),
            (None, None) => out.push('1'),
        }
    }
    out
}

fn format_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// `None` for the identity word.
fn format_word(w: &Word) -> Option<String> {
    if w.is_identity() {
        return None;
    }
    let mut parts: Vec<String> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut run = 1usize;
        while i + run < letters.len() && letters[i + run] == l {
            run += 1;
        }
        let idx = l.unsigned_abs();
        let exp = if l > 0 { run as i64 } else { -(run as i64) };
        if exp == 1 {
            parts.push(format!("x{idx}"));
        } else {
            parts.push(format!("x{idx}^{exp}"));
        }
        i += run;
    }
    Some(parts.join("*"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::reduce;
    use num::FromPrimitive;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    #[test]
    fn parse_product_of_sums() {
        let e = parse_expr("(1 - x1*x2^2)*(1 + x1)", 2).unwrap();
        match e {
            Expr::Mul(_, _) => {}
            other => panic!("expected product, got {other:?}"),
        }
    }

    #[test]
    fn inverse_cancels() {
        let f = eval_str("x1^-1*x1", 2).unwrap();
        assert_eq!(f, GroupRingElem::one(2));
    }

    #[test]
    fn generator_out_of_range() {
        assert_eq!(
            parse_expr("x3", 2),
            Err(ExprError::GeneratorOutOfRange { index: 3, rank: 2 })
        );
    }

    #[test]
    fn zero_negative_power_rejected() {
        assert_eq!(eval_str("0^-1", 2), Err(ExprError::NonUnitNegativePower));
        assert_eq!(
            eval_str("(1 + x1)^-1", 2),
            Err(ExprError::NonUnitNegativePower)
        );
    }

    #[test]
    fn precedence() {
        // ^ over * over +: 1 + 2*x1^2 parses as 1 + (2*(x1^2))
        let f = eval_str("1 + 2*x1^2", 2).unwrap();
        let mut expected = GroupRingElem::one(2);
        expected.insert(reduce(2, &[1, 1]).unwrap(), q(2));
        assert_eq!(f, expected);
    }

    #[test]
    fn geometric_identity() {
        let f = eval_str("(1-x1)*(1+x1+x1^2)", 2).unwrap();
        let g = eval_str("1 - x1^3", 2).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn syntax_error_position() {
        match parse_expr("1 + ", 2) {
            Err(ExprError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn print_then_parse_roundtrip() {
        for text in [
            "1 - x1^3",
            "(1-x1)*(1-x2)",
            "-3/2*x1*x2^-1 + 1",
            "x1^2*x2^-2 - 5",
            "0",
            "1/2",
        ] {
            let f = eval_str(text, 2).unwrap();
            let printed = print_elem(&f);
            let reparsed = eval_str(&printed, 2).unwrap();
            assert_eq!(reparsed, f, "roundtrip of {text} via {printed}");
        }
    }
}
