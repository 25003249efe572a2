//! Expression grammar:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := identifier | uint | '(' expr ')'
//! ```
//!
//! Identifiers must be declared generators or parameters. `-` is unary or
//! binary negation; over GF(2) it coincides with `+`.

use num_bigint::BigInt;

use super::{ClassPoly, Coeff, GeneratorTable, ParamSet};
use thiserror::Error;

/// Parse failure; `pos` is a 0-based byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown identifier `{name}` at column {}", pos + 1)]
    UnknownIdentifier { name: String, pos: usize },
    #[error("parameter `{name}` at column {} is not allowed in the {domain} domain", pos + 1)]
    ParameterNotAllowed {
        name: String,
        pos: usize,
        domain: &'static str,
    },
    #[error("syntax error at column {}: {message}", pos + 1)]
    Syntax { pos: usize, message: String },
    #[error("negative exponent at column {}", pos + 1)]
    NegativeExponent { pos: usize },
}

impl ParseError {
    pub fn pos(&self) -> usize {
        match self {
            ParseError::UnknownIdentifier { pos, .. }
            | ParseError::ParameterNotAllowed { pos, .. }
            | ParseError::Syntax { pos, .. }
            | ParseError::NegativeExponent { pos } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Int(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
                {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    gens: &'a GeneratorTable,
    params: &'a ParamSet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expected(&self, what: &str) -> ParseError {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            t => format!("`{}`", tok_str(t)),
        };
        ParseError::Syntax {
            pos: self.pos(),
            message: format!("expected {what}, found {found}"),
        }
    }

    fn expr<C: Coeff>(&mut self) -> Result<ClassPoly<C>, ParseError> {
        let nvars = self.gens.len();
        let mut acc = ClassPoly::zero(nvars);
        let mut negate = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            negate = true;
        }
        loop {
            let t = self.term::<C>()?;
            acc.add_assign(&if negate { t.neg() } else { t });
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => break,
            }
            self.bump();
        }
        Ok(acc)
    }

    fn term<C: Coeff>(&mut self) -> Result<ClassPoly<C>, ParseError> {
        let mut acc = self.factor::<C>()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let f = self.factor::<C>()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor<C: Coeff>(&mut self) -> Result<ClassPoly<C>, ParseError> {
        let base = self.atom::<C>()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump().0 {
            Tok::Int(n) => {
                let e: u32 = n.try_into().map_err(|_| ParseError::Syntax {
                    pos,
                    message: "exponent too large".into(),
                })?;
                Ok(base.pow(e))
            }
            Tok::Minus => Err(ParseError::NegativeExponent { pos }),
            _ => {
                self.at -= 1;
                Err(self.expected("an unsigned exponent"))
            }
        }
    }

    fn atom<C: Coeff>(&mut self) -> Result<ClassPoly<C>, ParseError> {
        let nvars = self.gens.len();
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                if let Some(i) = self.gens.index_of(&name) {
                    return Ok(ClassPoly::generator(self.gens, i));
                }
                if let Some(j) = self.params.index_of(&name) {
                    return match C::from_param(j) {
                        Some(c) => Ok(ClassPoly::constant(nvars, c)),
                        None => Err(ParseError::ParameterNotAllowed {
                            name,
                            pos,
                            domain: C::DOMAIN,
                        }),
                    };
                }
                Err(ParseError::UnknownIdentifier { name, pos })
            }
            Tok::Int(n) => {
                self.bump();
                Ok(ClassPoly::constant(nvars, C::from_integer(&n)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr::<C>()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.expected("`)`"));
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.expected("an identifier, integer or `(`")),
        }
    }
}

fn tok_str(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "+",
        Tok::Minus => "-",
        Tok::Star => "*",
        Tok::Caret => "^",
        Tok::LParen => "(",
        Tok::RParen => ")",
        _ => "?",
    }
}

/// Parses `text` into a canonical polynomial over `C`. Integer literals are
/// reduced into the domain (mod 2 for the GF(2) domains).
pub fn parse_expr<C: Coeff>(
    text: &str,
    gens: &GeneratorTable,
    params: &ParamSet,
) -> Result<ClassPoly<C>, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        gens,
        params,
    };
    let e = p.expr::<C>()?;
    if *p.peek() != Tok::End {
        return Err(p.expected("`+`, `-`, `*` or end of input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Gf2, Monomial, ParamPoly};

    fn evi() -> (GeneratorTable, ParamSet) {
        (
            GeneratorTable::new([("y2", 2), ("y3", 3), ("y12", 12), ("y16", 16), ("y20", 20)])
                .unwrap(),
            ParamSet::new(["b2", "n2"]).unwrap(),
        )
    }

    #[test]
    fn single_monomial() {
        let (g, ps) = evi();
        let p: ClassPoly<Gf2> = parse_expr("y3^3", &g, &ps).unwrap();
        assert_eq!(p.len(), 1);
        let (m, _) = p.terms().next().unwrap();
        assert_eq!(m, &Monomial::from_exponents(&g, vec![0, 3, 0, 0, 0]));
    }

    #[test]
    fn zero_literal() {
        let (g, ps) = evi();
        assert!(parse_expr::<Gf2>("0", &g, &ps).unwrap().is_zero());
        assert!(parse_expr::<Gf2>("y2 + y2", &g, &ps).unwrap().is_zero());
        assert!(parse_expr::<Gf2>("2*y2", &g, &ps).unwrap().is_zero());
    }

    #[test]
    fn integral_signs() {
        let g = GeneratorTable::new([("t", 2), ("w", 8)]).unwrap();
        let ps = ParamSet::empty();
        let p: ClassPoly<BigInt> = parse_expr("t^9 + 3*w^2*t", &g, &ps).unwrap();
        let t9 = Monomial::from_exponents(&g, vec![9, 0]);
        let w2t = Monomial::from_exponents(&g, vec![1, 2]);
        assert_eq!(p.coeff(&t9), Some(&BigInt::from(1)));
        assert_eq!(p.coeff(&w2t), Some(&BigInt::from(3)));
        let q: ClassPoly<BigInt> = parse_expr("-t^9 - 3*w^2*t", &g, &ps).unwrap();
        assert_eq!(q, p.neg());
        assert_eq!(q.render(&g, &ps), "-t^9 - 3*t*w^2");
    }

    #[test]
    fn parameters() {
        let (g, ps) = evi();
        let p: ClassPoly<ParamPoly> = parse_expr("(1+b2+n2) * y2^2*y20^3", &g, &ps).unwrap();
        assert_eq!(p.render(&g, &ps), "(1+b2+n2) * y2^2*y20^3");
        let e = parse_expr::<Gf2>("b2*y2", &g, &ps).unwrap_err();
        assert!(matches!(e, ParseError::ParameterNotAllowed { pos: 0, .. }));
    }

    #[test]
    fn errors_report_positions() {
        let (g, ps) = evi();
        assert_eq!(
            parse_expr::<Gf2>("y2 + z", &g, &ps).unwrap_err(),
            ParseError::UnknownIdentifier {
                name: "z".into(),
                pos: 5
            }
        );
        assert_eq!(
            parse_expr::<Gf2>("y2^-1", &g, &ps).unwrap_err(),
            ParseError::NegativeExponent { pos: 3 }
        );
        assert!(matches!(
            parse_expr::<Gf2>("y2 +", &g, &ps).unwrap_err(),
            ParseError::Syntax { pos: 4, .. }
        ));
        assert!(matches!(
            parse_expr::<Gf2>("(y2", &g, &ps).unwrap_err(),
            ParseError::Syntax { pos: 3, .. }
        ));
        assert!(matches!(
            parse_expr::<Gf2>("y2 y3", &g, &ps).unwrap_err(),
            ParseError::Syntax { pos: 3, .. }
        ));
        assert!(matches!(
            parse_expr::<Gf2>("y2 # y3", &g, &ps).unwrap_err(),
            ParseError::Syntax { pos: 3, .. }
        ));
    }

    #[test]
    fn render_order() {
        let (g, ps) = evi();
        let p: ClassPoly<Gf2> = parse_expr("y3*y12 + y2^6*y3", &g, &ps).unwrap();
        assert_eq!(p.render(&g, &ps), "y2^6*y3 + y3*y12");
        assert_eq!(ClassPoly::<Gf2>::zero(5).render(&g, &ps), "0");
    }
}
