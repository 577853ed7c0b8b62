//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! imp  := disj ( "->" imp )?          right-associative
//! disj := conj ( "|" conj )*          left-associative
//! conj := unary ( "&" unary )*        left-associative
//! unary := "~" unary | "(" imp ")" | "T" | "F" | ident
//! ```

use super::formula::{Formula, Universe};
use crate::error::Error;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(Tok, usize), Error> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = bytes.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        let tok = match c {
            b'~' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' => {
                if bytes.get(self.pos + 1) == Some(&b'>') {
                    self.pos += 1;
                    Tok::Implies
                } else {
                    return Err(Error::Syntax {
                        offset: start,
                        message: "expected '->'".into(),
                    });
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut end = self.pos + 1;
                while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_')
                {
                    end += 1;
                }
                let ident = self.src[self.pos..end].to_string();
                self.pos = end;
                return Ok((Tok::Ident(ident), start));
            }
            _ => {
                return Err(Error::Syntax {
                    offset: start,
                    message: format!("unexpected character '{}'", c as char),
                })
            }
        };
        self.pos += 1;
        Ok((tok, start))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    universe: &'a Universe,
    tok: Tok,
    at: usize,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<(), Error> {
        let (tok, at) = self.lexer.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn implication(&mut self) -> Result<Formula, Error> {
        let lhs = self.disjunction()?;
        if self.tok == Tok::Implies {
            self.bump()?;
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, Error> {
        let mut lhs = self.conjunction()?;
        while self.tok == Tok::Or {
            self.bump()?;
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, Error> {
        let mut lhs = self.unary()?;
        while self.tok == Tok::And {
            self.bump()?;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, Error> {
        match self.tok.clone() {
            Tok::Not => {
                self.bump()?;
                Ok(Formula::not(self.unary()?))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.implication()?;
                if self.tok != Tok::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.bump()?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                let at = self.at;
                self.bump()?;
                match name.as_str() {
                    "T" => Ok(Formula::Top),
                    "F" => Ok(Formula::Bot),
                    _ => self
                        .universe
                        .atom(&name)
                        .ok_or(Error::UnknownAtom { name, offset: at }),
                }
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        let found = match &self.tok {
            Tok::End => "end of input".to_string(),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Not => "'~'".into(),
            Tok::And => "'&'".into(),
            Tok::Or => "'|'".into(),
            Tok::Implies => "'->'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        };
        Error::Syntax {
            offset: self.at,
            message: format!("expected {wanted}, found {found}"),
        }
    }
}

/// Parses `text` over `universe`.
pub fn parse(text: &str, universe: &Universe) -> Result<Formula, Error> {
    let mut parser = Parser {
        lexer: Lexer { src: text, pos: 0 },
        universe,
        tok: Tok::End,
        at: 0,
    };
    parser.bump()?;
    let f = parser.implication()?;
    if parser.tok != Tok::End {
        return Err(parser.unexpected("end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> Universe {
        Universe::numbered(3).unwrap()
    }

    #[test]
    fn conjunction_with_negation() {
        let f = parse("p1 & ~p2", &u()).unwrap();
        assert_eq!(
            f,
            Formula::and(Formula::atom(1), Formula::not(Formula::atom(2)))
        );
    }

    #[test]
    fn implication_is_sugar() {
        let f = parse("p0 -> p1", &u()).unwrap();
        assert_eq!(
            f,
            Formula::or(Formula::not(Formula::atom(0)), Formula::atom(1))
        );
    }

    #[test]
    fn dangling_operator_reports_offset() {
        match parse("p1 &", &u()) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_atom() {
        match parse("p0 | q", &u()) {
            Err(Error::UnknownAtom { name, offset }) => {
                assert_eq!(name, "q");
                assert_eq!(offset, 5);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn precedence() {
        // ~ > & > | > ->
        let f = parse("~p0 | p1 & p2 -> p0", &u()).unwrap();
        let expected = Formula::implies(
            Formula::or(
                Formula::not(Formula::atom(0)),
                Formula::and(Formula::atom(1), Formula::atom(2)),
            ),
            Formula::atom(0),
        );
        assert_eq!(f, expected);
        let g = parse("p0 -> p1 -> p2", &u()).unwrap();
        assert_eq!(
            g,
            Formula::implies(
                Formula::atom(0),
                Formula::implies(Formula::atom(1), Formula::atom(2))
            )
        );
    }

    #[test]
    fn constants_and_parens() {
        assert_eq!(parse("(T)", &u()).unwrap(), Formula::Top);
        assert_eq!(
            parse("~(F & p0)", &u()).unwrap(),
            Formula::not(Formula::and(Formula::Bot, Formula::atom(0)))
        );
        assert!(parse("(p0", &u()).is_err());
        assert!(parse("p0 p1", &u()).is_err());
        assert!(parse("p0 - p1", &u()).is_err());
    }
}
