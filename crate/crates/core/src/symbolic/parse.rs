//! Recursive-descent parser for the expression syntax: integers, coordinate
//! names, `+ - * / ^`, and parentheses. Exponents must be integer literals,
//! optionally signed or parenthesized.

use num_bigint::BigInt;

use super::poly::Poly;
use super::{Expr, SymbolicError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, SymbolicError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start + 1, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start + 1, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i + 1, Tok::Op(c)));
            i += 1;
        } else {
            return Err(SymbolicError::Syntax {
                column: i + 1,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    names: &'a [String],
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn err(&self, message: impl Into<String>) -> SymbolicError {
        SymbolicError::Syntax {
            column: self.col(),
            message: message.into(),
        }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, SymbolicError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SymbolicError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let col = self.col();
                self.pos += 1;
                let rhs = self.unary()?;
                acc = acc.checked_div(&rhs).map_err(|_| SymbolicError::Syntax {
                    column: col,
                    message: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, SymbolicError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, SymbolicError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.col();
        let exp = self.exponent()?;
        base.pow(exp).map_err(|_| SymbolicError::Syntax {
            column: col,
            message: "negative power of zero".into(),
        })
    }

    fn exponent(&mut self) -> Result<i32, SymbolicError> {
        if self.eat('(') {
            let e = self.exponent()?;
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(e);
        }
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                let v: i32 = i32::try_from(n).map_err(|_| self.err("exponent too large"))?;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err("exponent must be an integer literal")),
        }
    }

    fn atom(&mut self) -> Result<Expr, SymbolicError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::from_poly(Poly::constant(n)))
            }
            Some(Tok::Ident(name)) => {
                let idx = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| SymbolicError::UnknownCoordinate(name.clone()))?;
                self.pos += 1;
                Ok(Expr::var(idx))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parses `src` into a canonical [`Expr`] over the coordinates `names`.
pub fn parse_expr(src: &str, names: &[String]) -> Result<Expr, SymbolicError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        end_col: src.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        ["x1", "x2", "x3", "x4", "t"].iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str) -> Expr {
        parse_expr(s, &names()).unwrap()
    }

    #[test]
    fn precedence_and_signs() {
        assert_eq!(p("-t^2"), -&Expr::var(4).square());
        assert_eq!(p("2*t/4"), &Expr::var(4) / &Expr::int(2));
        assert_eq!(p("t^-1"), Expr::var(4).inv().unwrap());
        assert_eq!(p("t^(-2)"), Expr::var(4).pow(-2).unwrap());
        assert_eq!(p("(t^2 - 1)/(t - 1)"), p("t + 1"));
        assert_eq!(p("1 - -1"), Expr::int(2));
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_expr("t + * 2", &names()).unwrap_err();
        assert!(matches!(e, SymbolicError::Syntax { column: 5, .. }), "{e:?}");
        assert_eq!(
            parse_expr("y + 1", &names()),
            Err(SymbolicError::UnknownCoordinate("y".into()))
        );
        assert!(matches!(
            parse_expr("t^x1", &names()),
            Err(SymbolicError::Syntax { column: 3, .. })
        ));
        assert!(matches!(
            parse_expr("1/(t - t)", &names()),
            Err(SymbolicError::Syntax { column: 2, .. })
        ));
        assert!(matches!(parse_expr("(t", &names()), Err(SymbolicError::Syntax { .. })));
        assert!(matches!(
            parse_expr("t $", &names()),
            Err(SymbolicError::Syntax { column: 3, .. })
        ));
    }

    #[test]
    fn canonical_text_reparses() {
        for s in ["t^2/2", "-1/t", "(t^6 - 4)/(2*t^2)", "x2*t - 3*x4/t", "0"] {
            let e = p(s);
            assert_eq!(p(&e.to_text(&names())), e, "{s}");
        }
    }
}
