use super::expr::{Context, Expr, Hint, Judgement, RcExpr};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Dot,
    Lt,
    Gt,
    Equals,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '[' => {
                toks.push((i, Tok::LBracket));
                i += 1;
            }
            ']' => {
                toks.push((i, Tok::RBracket));
                i += 1;
            }
            ',' => {
                toks.push((i, Tok::Comma));
                i += 1;
            }
            ':' => {
                toks.push((i, Tok::Colon));
                i += 1;
            }
            '.' => {
                toks.push((i, Tok::Dot));
                i += 1;
            }
            '<' => {
                toks.push((i, Tok::Lt));
                i += 1;
            }
            '>' => {
                toks.push((i, Tok::Gt));
                i += 1;
            }
            '=' => {
                toks.push((i, Tok::Equals));
                i += 1;
            }
            '0' => {
                toks.push((i, Tok::Zero));
                i += 1;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() {
                    let d = bytes[i] as char;
                    if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                        i += 1;
                    } else {
                        break;
                    }
                }
                toks.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => {
                return Err(ParseError {
                    pos: i,
                    msg: format!("unexpected character {:?}", c),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    binders: Vec<String>,
}

impl Parser {
    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        let pos = self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(usize::MAX);
        Err(ParseError {
            pos,
            msg: msg.to_string(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        match self.next() {
            Some(t) if t == tok => Ok(()),
            other => self.err(&format!("expected {:?}, found {:?}", tok, other)),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            other => self.err(&format!("expected identifier, found {:?}", other)),
        }
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        self.binders
            .iter()
            .rev()
            .position(|b| b == name)
    }

    /// Dispatches on the head token; type heads and term heads are disjoint.
    fn expression(&mut self) -> Result<RcExpr, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if matches!(s.as_str(), "G" | "N" | "Id" | "Pi" | "Sigma") => {
                self.ty()
            }
            _ => self.term(),
        }
    }

    fn ty(&mut self) -> Result<RcExpr, ParseError> {
        match self.next() {
            Some(Tok::Ident(head)) => match head.as_str() {
                "G" => {
                    if let Some(Tok::Ident(_)) = self.peek() {
                        let name = self.ident()?;
                        Ok(Expr::Base(name).rc())
                    } else {
                        Ok(Expr::Base("G".to_string()).rc())
                    }
                }
                "N" => Ok(Expr::Nat.rc()),
                "Id" => {
                    self.expect(Tok::LParen)?;
                    let t = self.ty()?;
                    self.expect(Tok::Comma)?;
                    let a = self.term()?;
                    self.expect(Tok::Comma)?;
                    let b = self.term()?;
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Id(t, a, b).rc())
                }
                "Pi" | "Sigma" => {
                    let v = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let dom = self.ty()?;
                    self.expect(Tok::Dot)?;
                    self.binders.push(v.clone());
                    let cod = self.ty()?;
                    self.binders.pop();
                    if head == "Pi" {
                        Ok(Expr::Pi(Hint(v), dom, cod).rc())
                    } else {
                        Ok(Expr::Sigma(Hint(v), dom, cod).rc())
                    }
                }
                _ => self.err(&format!("expected a type, found {:?}", head)),
            },
            other => self.err(&format!("expected a type, found {:?}", other)),
        }
    }

    fn term(&mut self) -> Result<RcExpr, ParseError> {
        match self.next() {
            Some(Tok::Zero) => Ok(Expr::Zero.rc()),
            Some(Tok::Lt) => {
                let cell = self.ident()?;
                self.expect(Tok::Gt)?;
                Ok(Expr::Basic(cell).rc())
            }
            Some(Tok::Ident(head)) => match head.as_str() {
                "S" | "r" => {
                    self.expect(Tok::LParen)?;
                    let e = self.term()?;
                    self.expect(Tok::RParen)?;
                    if head == "S" {
                        Ok(Expr::Succ(e).rc())
                    } else {
                        Ok(Expr::Refl(e).rc())
                    }
                }
                "lam" => {
                    let v = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let dom = self.ty()?;
                    self.expect(Tok::Dot)?;
                    self.binders.push(v.clone());
                    let body = self.term()?;
                    self.binders.pop();
                    Ok(Expr::Lam(Hint(v), dom, body).rc())
                }
                "app" | "pair" => {
                    self.expect(Tok::LParen)?;
                    let l = self.term()?;
                    self.expect(Tok::Comma)?;
                    let r = self.term()?;
                    self.expect(Tok::RParen)?;
                    if head == "app" {
                        Ok(Expr::App(l, r).rc())
                    } else {
                        Ok(Expr::Pair(l, r).rc())
                    }
                }
                "R" => {
                    self.expect(Tok::LParen)?;
                    self.expect(Tok::LBracket)?;
                    let x = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let dom0 = self.ty()?;
                    self.expect(Tok::Comma)?;
                    let y = self.ident()?;
                    self.expect(Tok::Colon)?;
                    self.binders.push(x.clone());
                    let dom1 = self.ty()?;
                    self.expect(Tok::RBracket)?;
                    self.binders.push(y.clone());
                    let body = self.term()?;
                    self.binders.pop();
                    self.binders.pop();
                    self.expect(Tok::Comma)?;
                    let scrut = self.term()?;
                    self.expect(Tok::RParen)?;
                    Ok(Expr::SigElim {
                        hx: Hint(x),
                        dom0,
                        hy: Hint(y),
                        dom1,
                        body,
                        scrut,
                    }
                    .rc())
                }
                "rec" => {
                    self.expect(Tok::LParen)?;
                    let scrut = self.term()?;
                    self.expect(Tok::Comma)?;
                    let zero = self.term()?;
                    self.expect(Tok::Comma)?;
                    self.expect(Tok::LBracket)?;
                    let x = self.ident()?;
                    self.expect(Tok::Comma)?;
                    let y = self.ident()?;
                    self.expect(Tok::RBracket)?;
                    self.binders.push(x.clone());
                    self.binders.push(y.clone());
                    let step = self.term()?;
                    self.binders.pop();
                    self.binders.pop();
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Rec {
                        scrut,
                        zero,
                        hx: Hint(x),
                        hy: Hint(y),
                        step,
                    }
                    .rc())
                }
                "J" => self.j_term(),
                _ => match self.lookup(&head) {
                    Some(idx) => Ok(Expr::Bound(idx).rc()),
                    None => Ok(Expr::Free(head).rc()),
                },
            },
            other => self.err(&format!("expected a term, found {:?}", other)),
        }
    }

    fn j_term(&mut self) -> Result<RcExpr, ParseError> {
        self.expect(Tok::LParen)?;
        self.expect(Tok::LBracket)?;
        let x = self.ident()?;
        self.expect(Tok::Comma)?;
        let y = self.ident()?;
        self.expect(Tok::Colon)?;
        let dom = self.ty()?;
        self.expect(Tok::Comma)?;
        let z = self.ident()?;
        self.expect(Tok::Colon)?;
        self.binders.push(x.clone());
        self.binders.push(y.clone());
        let z_ann = self.ty()?;
        // The z-annotation is forced: it must be Id(dom, x, y).
        let expected = Expr::Id(
            super::expr::shift(&dom, 2),
            Expr::Bound(1).rc(),
            Expr::Bound(0).rc(),
        )
        .rc();
        if z_ann != expected {
            self.binders.pop();
            self.binders.pop();
            return self.err("pattern binder annotation must be Id(A, x, y)");
        }
        self.expect(Tok::RBracket)?;
        self.binders.push(z.clone());
        let motive = self.ty()?;
        self.binders.pop();
        self.binders.pop();
        self.binders.pop();
        self.expect(Tok::Comma)?;
        self.expect(Tok::LBracket)?;
        let xf = self.ident()?;
        self.expect(Tok::Colon)?;
        let fam_dom = self.ty()?;
        if fam_dom != dom {
            return self.err("family binder annotation must match the pattern domain");
        }
        self.expect(Tok::RBracket)?;
        self.binders.push(xf.clone());
        let family = self.term()?;
        self.binders.pop();
        self.expect(Tok::Comma)?;
        let a = self.term()?;
        self.expect(Tok::Comma)?;
        let b = self.term()?;
        self.expect(Tok::Comma)?;
        let f = self.term()?;
        self.expect(Tok::RParen)?;
        Ok(Expr::J {
            hx: Hint(x),
            hy: Hint(y),
            hz: Hint(z),
            dom,
            motive,
            hf: Hint(xf),
            family,
            a,
            b,
            f,
        }
        .rc())
    }
}

/// Parses one expression (term or type) from surface syntax.
pub fn parse_expression(text: &str) -> Result<RcExpr, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        at: 0,
        binders: vec![],
    };
    let e = parser.expression()?;
    if parser.at != parser.toks.len() {
        return parser.err("trailing input");
    }
    debug_assert!(super::expr::locally_closed(&e));
    Ok(e)
}

/// Parses a judgement file: optional `ctx` header, `var x : T` lines, then
/// one `check t : T` or `eq t = t' : T` line.  `#` starts a comment.
pub fn parse_judgement_file(text: &str) -> Result<Judgement, ParseError> {
    let mut ctx = Context::empty();
    let mut judgement = None;
    for raw in text.lines() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() || line == "ctx" {
            continue;
        }
        if judgement.is_some() {
            return Err(ParseError {
                pos: 0,
                msg: "content after the judgement line".to_string(),
            });
        }
        if let Some(rest) = line.strip_prefix("var ") {
            let toks = lex(rest)?;
            let mut p = Parser {
                toks,
                at: 0,
                binders: vec![],
            };
            let name = p.ident()?;
            p.expect(Tok::Colon)?;
            let ty = p.ty()?;
            if p.at != p.toks.len() {
                return p.err("trailing input in var line");
            }
            ctx = ctx.push(&name, ty);
        } else if let Some(rest) = line.strip_prefix("check ") {
            let toks = lex(rest)?;
            let mut p = Parser {
                toks,
                at: 0,
                binders: vec![],
            };
            let term = p.term()?;
            p.expect(Tok::Colon)?;
            let ty = p.ty()?;
            if p.at != p.toks.len() {
                return p.err("trailing input in check line");
            }
            judgement = Some(Judgement::HasType(ctx.clone(), term, ty));
        } else if let Some(rest) = line.strip_prefix("eq ") {
            let toks = lex(rest)?;
            let mut p = Parser {
                toks,
                at: 0,
                binders: vec![],
            };
            let lhs = p.term()?;
            p.expect(Tok::Equals)?;
            let rhs = p.term()?;
            p.expect(Tok::Colon)?;
            let ty = p.ty()?;
            if p.at != p.toks.len() {
                return p.err("trailing input in eq line");
            }
            judgement = Some(Judgement::TermEqual(ctx.clone(), lhs, rhs, ty));
        } else {
            return Err(ParseError {
                pos: 0,
                msg: format!("unrecognized line: {:?}", line),
            });
        }
    }
    judgement.ok_or(ParseError {
        pos: 0,
        msg: "no judgement line".to_string(),
    })
}

/// Parses `lhs = rhs : type` (the payload of a theory `eq` line).
pub fn parse_equation(text: &str) -> Result<(RcExpr, RcExpr, RcExpr), ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        binders: vec![],
    };
    let lhs = p.term()?;
    p.expect(Tok::Equals)?;
    let rhs = p.term()?;
    p.expect(Tok::Colon)?;
    let ty = p.ty()?;
    if p.at != p.toks.len() {
        return p.err("trailing input in equation");
    }
    Ok((lhs, rhs, ty))
}
