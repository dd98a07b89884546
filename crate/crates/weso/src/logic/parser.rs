use crate::error::{parse_err, Error, Result};

use super::ast::{Expr, Formula, Mode, Quant};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Dot,
    Comma,
    LParen,
    RParen,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Eq,
    Neq,
    Le,
    Ge,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let src = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = src.chars().collect();
        let mut p = 0;
        while p < chars.len() {
            let c = chars[p];
            let rest: String = chars[p..chars.len().min(p + 3)].iter().collect();
            let (tok, width) = if c.is_whitespace() {
                p += 1;
                continue;
            } else if c.is_alphanumeric() || c == '_' {
                let start = p;
                while p < chars.len() && (chars[p].is_alphanumeric() || chars[p] == '_' || chars[p] == '\'') {
                    p += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(chars[start..p].iter().collect()),
                    line,
                });
                continue;
            } else if rest.starts_with("<->") {
                (Tok::Iff, 3)
            } else if rest.starts_with("->") {
                (Tok::Implies, 2)
            } else if rest.starts_with("<=") {
                (Tok::Le, 2)
            } else if rest.starts_with(">=") {
                (Tok::Ge, 2)
            } else if rest.starts_with("!=") {
                (Tok::Neq, 2)
            } else {
                let t = match c {
                    '.' => Tok::Dot,
                    ',' => Tok::Comma,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '!' | '~' => Tok::Not,
                    '&' => Tok::And,
                    '|' => Tok::Or,
                    '=' => Tok::Eq,
                    _ => return Err(parse_err(line, format!("unexpected character `{c}`"))),
                };
                (t, 1)
            };
            out.push(Spanned { tok, line });
            p += width;
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    set_var: String,
    vars: Vec<String>,
}

impl Parser {
    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or(1, |t| t.line)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, off: usize) -> Option<&Tok> {
        self.toks.get(self.pos + off).map(|t| &t.tok)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let line = self.line();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(parse_err(line, format!("expected {what}, found {t:?}"))),
            None => Err(parse_err(line, format!("expected {what}, found end of input"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        let line = self.line();
        match self.bump() {
            Some(Tok::Ident(s)) => Ok(s),
            Some(t) => Err(parse_err(line, format!("expected {what}, found {t:?}"))),
            None => Err(parse_err(line, format!("expected {what}, found end of input"))),
        }
    }

    fn head(&mut self) -> Result<(Mode, String)> {
        let line = self.line();
        let kw = self.ident("`exists=`, `exists<=` or `exists>=`")?;
        if kw != "exists" {
            return Err(parse_err(
                line,
                format!("formula must start with a weighted head, found `{kw}`"),
            ));
        }
        let mode = match self.bump() {
            Some(Tok::Eq) => Mode::Eq,
            Some(Tok::Le) => Mode::Le,
            Some(Tok::Ge) => Mode::Ge,
            _ => return Err(parse_err(line, "head must be `exists=`, `exists<=` or `exists>=`")),
        };
        let var = self.ident("set variable")?;
        self.expect(Tok::Dot, "`.`")?;
        Ok((mode, var))
    }

    fn prefix(&mut self) -> Result<Vec<(Quant, String)>> {
        let mut out: Vec<(Quant, String)> = Vec::new();
        loop {
            let q = match self.peek() {
                Some(Tok::Ident(s)) if s == "forall" => Quant::Forall,
                Some(Tok::Ident(s)) if s == "exists" => Quant::Exists,
                _ => break,
            };
            if matches!(self.peek_at(1), Some(Tok::Eq | Tok::Le | Tok::Ge)) {
                return Err(parse_err(self.line(), "only one second-order quantifier is supported"));
            }
            self.bump();
            let line = self.line();
            let v = self.ident("variable")?;
            if v == self.set_var || out.iter().any(|(_, w)| *w == v) {
                return Err(parse_err(line, format!("variable `{v}` bound twice")));
            }
            self.expect(Tok::Dot, "`.`")?;
            out.push((q, v));
        }
        Ok(out)
    }

    fn var(&self, name: &str, line: usize) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| parse_err(line, format!("unbound variable `{name}`")))
    }

    fn iff(&mut self) -> Result<Expr> {
        let mut lhs = self.implies()?;
        while self.peek() == Some(&Tok::Iff) {
            self.bump();
            let rhs = self.implies()?;
            lhs = Expr::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Expr> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Implies) {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Expr::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Expr> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            let rhs = self.and()?;
            lhs = Expr::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        let line = self.line();
        match self.bump() {
            Some(Tok::Not) => Ok(Expr::not(self.unary()?)),
            Some(Tok::LParen) => {
                let e = self.iff()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => self.atom(name, line),
            Some(t) => Err(parse_err(line, format!("unexpected {t:?}"))),
            None => Err(parse_err(line, "unexpected end of input")),
        }
    }

    fn atom(&mut self, name: String, line: usize) -> Result<Expr> {
        match name.as_str() {
            "forall" | "exists" => return Err(parse_err(line, "quantifier inside the matrix: input must be prenex")),
            "true" => return Ok(Expr::True),
            "false" => return Ok(Expr::False),
            _ => {}
        }
        match self.peek() {
            Some(Tok::LParen) => {
                self.bump();
                let mut args = Vec::new();
                if self.peek() != Some(&Tok::RParen) {
                    loop {
                        let l = self.line();
                        let a = self.ident("variable")?;
                        args.push(self.var(&a, l)?);
                        if self.peek() == Some(&Tok::Comma) {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RParen, "`)`")?;
                if name == self.set_var {
                    if args.len() != 1 {
                        return Err(parse_err(
                            line,
                            format!("set variable `{name}` used with arity {}", args.len()),
                        ));
                    }
                    Ok(Expr::Member(args[0]))
                } else {
                    Ok(Expr::Rel(name, args))
                }
            }
            Some(Tok::Eq) | Some(Tok::Neq) => {
                let neg = self.bump() == Some(Tok::Neq);
                let l = self.line();
                let rhs = self.ident("variable")?;
                let e = Expr::Equal(self.var(&name, line)?, self.var(&rhs, l)?);
                Ok(if neg { Expr::not(e) } else { e })
            }
            _ => {
                if name == self.set_var {
                    Err(parse_err(line, format!("set variable `{name}` used with arity 0")))
                } else {
                    Err(parse_err(line, format!("expected an atom after `{name}`")))
                }
            }
        }
    }
}

/// Parses `exists<= X . forall x . exists y . matrix`.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        set_var: String::new(),
        vars: Vec::new(),
    };
    let (mode, set_var) = p.head()?;
    p.set_var = set_var.clone();
    let prefix = p.prefix()?;
    p.vars = prefix.iter().map(|(_, v)| v.clone()).collect();
    let matrix = p.iff()?;
    if p.pos < p.toks.len() {
        return Err(parse_err(p.line(), "trailing input after the matrix"));
    }
    Ok(Formula {
        mode,
        set_var,
        prefix,
        matrix,
    })
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}
