//! Concrete syntax.
//!
//! ```text
//! term   ::= seq ('||' term)?
//! seq    ::= assign (';' seq)?
//! assign ::= app (':=' app)?
//! app    ::= prefix prefix*
//! prefix ::= '!' prefix | OP prefix | atom
//! atom   ::= skip | div (':' type)? | NUM | IDENT | '(' term ')'
//!          | grab '(' term ')' | release '(' term ')'
//!          | if term then term else term | while term do term
//!          | newvar IDENT (':=' NUM)? in term | newsem IDENT (':=' NUM)? in term
//!          | fun IDENT ':' type '->' term
//! type   ::= base ('->' type)? | '(' type ')' ('->' type)?
//! ```
//!
//! The trailing subterm of `if`, `while`, `newvar`, `newsem` and `fun` extends
//! as far to the right as possible.

use thiserror::Error;

use super::term::{BaseType, Context, Term, Type};
use crate::settings::OpTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u32),
    Semi,
    ParBar,
    Assign,
    Bang,
    LParen,
    RParen,
    Colon,
    Arrow,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Semi => "`;`".into(),
            Tok::ParBar => "`||`".into(),
            Tok::Assign => "`:=`".into(),
            Tok::Bang => "`!`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

const KEYWORDS: &[&str] = &[
    "skip", "div", "if", "then", "else", "while", "do", "newvar", "newsem", "in", "fun", "grab",
    "release", "com", "exp", "var", "sem",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

struct Lexer;

impl Lexer {
    fn tokenize(src: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        let chars: Vec<char> = src.chars().collect();
        let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
        while i < chars.len() {
            let c = chars[i];
            let (tl, tc) = (line, col);
            let adv = |n: usize, i: &mut usize, col: &mut usize| {
                *i += n;
                *col += n;
            };
            match c {
                '\n' => {
                    i += 1;
                    line += 1;
                    col = 1;
                }
                c if c.is_whitespace() => adv(1, &mut i, &mut col),
                '#' => {
                    while i < chars.len() && chars[i] != '\n' {
                        i += 1;
                    }
                }
                ';' => {
                    out.push((Tok::Semi, tl, tc));
                    adv(1, &mut i, &mut col);
                }
                '!' => {
                    out.push((Tok::Bang, tl, tc));
                    adv(1, &mut i, &mut col);
                }
                '(' => {
                    out.push((Tok::LParen, tl, tc));
                    adv(1, &mut i, &mut col);
                }
                ')' => {
                    out.push((Tok::RParen, tl, tc));
                    adv(1, &mut i, &mut col);
                }
                ',' => {
                    out.push((Tok::Comma, tl, tc));
                    adv(1, &mut i, &mut col);
                }
                '|' if chars.get(i + 1) == Some(&'|') => {
                    out.push((Tok::ParBar, tl, tc));
                    adv(2, &mut i, &mut col);
                }
                ':' if chars.get(i + 1) == Some(&'=') => {
                    out.push((Tok::Assign, tl, tc));
                    adv(2, &mut i, &mut col);
                }
                ':' => {
                    out.push((Tok::Colon, tl, tc));
                    adv(1, &mut i, &mut col);
                }
                '-' if chars.get(i + 1) == Some(&'>') => {
                    out.push((Tok::Arrow, tl, tc));
                    adv(2, &mut i, &mut col);
                }
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let text: String = chars[start..i].iter().collect();
                    col += i - start;
                    let n = text.parse::<u32>().map_err(|_| ParseError {
                        line: tl,
                        column: tc,
                        message: format!("numeral `{text}` out of range"),
                    })?;
                    out.push((Tok::Num(n), tl, tc));
                }
                c if c.is_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len()
                        && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                    {
                        i += 1;
                    }
                    col += i - start;
                    out.push((Tok::Ident(chars[start..i].iter().collect()), tl, tc));
                }
                other => {
                    return Err(ParseError {
                        line: tl,
                        column: tc,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        }
        out.push((Tok::Eof, line, col));
        Ok(out)
    }
}

/// Recursive-descent parser over a token buffer.
pub struct Parser<'a> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    ops: &'a OpTable,
}

impl<'a> Parser<'a> {
    pub fn new(src: &str, ops: &'a OpTable) -> Result<Self, ParseError> {
        Ok(Self { toks: Lexer::tokenize(src)?, pos: 0, ops })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (_, line, column) = self.toks[self.pos];
        Err(ParseError { line, column, message: message.into() })
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", want.describe(), self.peek().describe()))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_kw(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected `{kw}`, found {}", self.peek().describe()))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) && !self.ops.contains(&s) => {
                self.bump();
                Ok(s)
            }
            t => self.error(format!("expected identifier, found {}", t.describe())),
        }
    }

    fn numeral(&mut self) -> Result<u32, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            t => self.error(format!("expected numeral, found {}", t.describe())),
        }
    }

    pub fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error(format!("unexpected {} after end of term", self.peek().describe()))
        }
    }

    pub fn term(&mut self) -> Result<Term, ParseError> {
        let left = self.seq()?;
        if *self.peek() == Tok::ParBar {
            self.bump();
            let right = self.term()?;
            return Ok(Term::par(left, right));
        }
        Ok(left)
    }

    fn seq(&mut self) -> Result<Term, ParseError> {
        let left = self.assign()?;
        if *self.peek() == Tok::Semi {
            self.bump();
            let right = self.seq()?;
            return Ok(Term::seq(left, right));
        }
        Ok(left)
    }

    fn assign(&mut self) -> Result<Term, ParseError> {
        let target = self.app()?;
        if *self.peek() == Tok::Assign {
            self.bump();
            let value = self.app()?;
            return Ok(Term::assign(target, value));
        }
        Ok(target)
    }

    fn starts_prefix(&self) -> bool {
        match self.peek() {
            Tok::Num(_) | Tok::LParen | Tok::Bang => true,
            Tok::Ident(s) => {
                !matches!(s.as_str(), "then" | "else" | "do" | "in" | "com" | "exp" | "var" | "sem")
            }
            _ => false,
        }
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut t = self.prefix()?;
        while self.starts_prefix() {
            let a = self.prefix()?;
            t = Term::app(t, a);
        }
        Ok(t)
    }

    fn prefix(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Term::deref(self.prefix()?))
            }
            Tok::Ident(s) if self.ops.contains(&s) => {
                self.bump();
                Ok(Term::op(s, self.prefix()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let tok = self.peek().clone();
        match tok {
            Tok::Num(n) => {
                self.bump();
                Ok(Term::Num(n))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(s) => match s.as_str() {
                "skip" => {
                    self.bump();
                    Ok(Term::Skip)
                }
                "div" => {
                    self.bump();
                    if *self.peek() == Tok::Colon {
                        self.bump();
                        Ok(Term::Div(self.ty()?))
                    } else {
                        Ok(Term::Div(Type::COM))
                    }
                }
                "grab" | "release" => {
                    self.bump();
                    self.expect(Tok::LParen)?;
                    let t = self.term()?;
                    self.expect(Tok::RParen)?;
                    Ok(if s == "grab" { Term::grab(t) } else { Term::release(t) })
                }
                "if" => {
                    self.bump();
                    let g = self.term()?;
                    self.expect_kw("then")?;
                    let t = self.term()?;
                    self.expect_kw("else")?;
                    let e = self.term()?;
                    Ok(Term::cond(g, t, e))
                }
                "while" => {
                    self.bump();
                    let g = self.term()?;
                    self.expect_kw("do")?;
                    let b = self.term()?;
                    Ok(Term::while_(g, b))
                }
                "newvar" | "newsem" => {
                    self.bump();
                    let x = self.ident()?;
                    let init = if *self.peek() == Tok::Assign {
                        self.bump();
                        self.numeral()?
                    } else {
                        0
                    };
                    self.expect_kw("in")?;
                    let body = self.term()?;
                    Ok(if s == "newvar" {
                        Term::newvar(x, init, body)
                    } else {
                        Term::newsem(x, init, body)
                    })
                }
                "fun" => {
                    self.bump();
                    let x = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let ty = self.binder_type()?;
                    let body = self.term()?;
                    Ok(Term::lam(x, ty, body))
                }
                _ if is_keyword(&s) => self.error(format!("unexpected keyword `{s}`")),
                _ => Ok(Term::Id(self.ident()?)),
            },
            t => self.error(format!("expected a term, found {}", t.describe())),
        }
    }

    /// True when the tokens at the cursor (after any opening parentheses) start a type.
    fn type_ahead(&self) -> bool {
        let mut k = 0;
        while *self.peek_at(k) == Tok::LParen {
            k += 1;
        }
        matches!(self.peek_at(k), Tok::Ident(s) if BaseType::from_keyword(s).is_some())
    }

    /// Parses `T ->` in `fun x : T -> M`, consuming the final arrow.
    fn binder_type(&mut self) -> Result<Type, ParseError> {
        let mut parts = vec![self.type_atom()?];
        loop {
            self.expect(Tok::Arrow)?;
            if self.type_ahead() {
                parts.push(self.type_atom()?);
            } else {
                break;
            }
        }
        let last = parts.pop().expect("at least one part");
        Ok(Type::curried(parts, last))
    }

    fn type_atom(&mut self) -> Result<Type, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(s) => match BaseType::from_keyword(&s) {
                Some(b) => {
                    self.bump();
                    Ok(Type::Base(b))
                }
                None => self.error(format!("expected a type, found `{s}`")),
            },
            t => self.error(format!("expected a type, found {}", t.describe())),
        }
    }

    pub fn ty(&mut self) -> Result<Type, ParseError> {
        let a = self.type_atom()?;
        if *self.peek() == Tok::Arrow && self.peek_at(1) != &Tok::Eof {
            // `div : com -> ...` inside a `fun` body cannot continue with a term
            // after the arrow, so only commit when a type follows.
            let save = self.pos;
            self.bump();
            if self.type_ahead() {
                let r = self.ty()?;
                return Ok(Type::arrow(a, r));
            }
            self.pos = save;
        }
        Ok(a)
    }

    fn context(&mut self) -> Result<Context, ParseError> {
        let mut ctx = Context::new();
        if *self.peek() == Tok::Eof {
            return Ok(ctx);
        }
        loop {
            let x = self.ident()?;
            if ctx.lookup(&x).is_some() {
                return self.error(format!("duplicate context entry `{x}`"));
            }
            self.expect(Tok::Colon)?;
            let t = self.ty()?;
            ctx.push(x, t);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        Ok(ctx)
    }
}

/// Parses a whole term.
pub fn parse(src: &str, ops: &OpTable) -> Result<Term, ParseError> {
    let mut p = Parser::new(src, ops)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses a type such as `com -> (com -> exp) -> com`.
pub fn parse_type(src: &str) -> Result<Type, ParseError> {
    let ops = OpTable::empty();
    let mut p = Parser::new(src, &ops)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

/// Parses a context such as `f:com->com, c:com`.
pub fn parse_context(src: &str) -> Result<Context, ParseError> {
    let ops = OpTable::empty();
    let mut p = Parser::new(src, &ops)?;
    let c = p.context()?;
    p.finish()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Term {
        parse(s, &OpTable::default()).unwrap()
    }

    #[test]
    fn seq_of_skips() {
        assert_eq!(p("skip ; skip"), Term::seq(Term::Skip, Term::Skip));
    }

    #[test]
    fn conditional_numerals() {
        assert_eq!(p("if 1 then 2 else 3"), Term::cond(Term::Num(1), Term::Num(2), Term::Num(3)));
    }

    #[test]
    fn race_example() {
        let t = p("newvar x := 0 in (f(x := 1) || if !x then c else div); !x");
        let expected = Term::newvar(
            "x",
            0,
            Term::seq(
                Term::par(
                    Term::app(Term::id("f"), Term::assign(Term::id("x"), Term::Num(1))),
                    Term::cond(Term::deref(Term::id("x")), Term::id("c"), Term::Div(Type::COM)),
                ),
                Term::deref(Term::id("x")),
            ),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn par_binds_looser_than_seq() {
        assert_eq!(
            p("a ; b || c"),
            Term::par(Term::seq(Term::id("a"), Term::id("b")), Term::id("c"))
        );
        assert_eq!(p("a || b || c"), Term::par(Term::id("a"), Term::par(Term::id("b"), Term::id("c"))));
    }

    #[test]
    fn functions_and_types() {
        let t = p("fun g : com -> com -> g (g skip)");
        assert_eq!(
            t,
            Term::lam(
                "g",
                Type::arrow(Type::COM, Type::COM),
                Term::app(Term::id("g"), Term::app(Term::id("g"), Term::Skip))
            )
        );
        let t = p("fun g : (com -> com) -> exp -> div : exp");
        assert_eq!(
            t,
            Term::lam(
                "g",
                Type::arrow(Type::arrow(Type::COM, Type::COM), Type::EXP),
                Term::Div(Type::EXP)
            )
        );
    }

    #[test]
    fn ops_and_semaphores() {
        assert_eq!(p("succ !x"), Term::op("succ", Term::deref(Term::id("x"))));
        assert_eq!(
            p("newsem s := 1 in grab(s); release(s)"),
            Term::newsem("s", 1, Term::seq(Term::grab(Term::id("s")), Term::release(Term::id("s"))))
        );
        assert_eq!(p("newvar y in skip"), Term::newvar("y", 0, Term::Skip));
    }

    #[test]
    fn multi_argument_application() {
        assert_eq!(p("h c skip"), Term::apps(Term::id("h"), [Term::id("c"), Term::Skip]));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("skip ;\n  ) ", &OpTable::default()).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse("skip skip extra )", &OpTable::default()).unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse("if 1 then skip", &OpTable::default()).is_err());
    }

    #[test]
    fn contexts() {
        let c = parse_context("f:com->com, c:com").unwrap();
        assert_eq!(c.lookup("f"), Some(&Type::arrow(Type::COM, Type::COM)));
        assert_eq!(c.lookup("c"), Some(&Type::COM));
        assert!(parse_context("").unwrap().is_empty());
        assert!(parse_context("a:com, a:exp").is_err());
        assert_eq!(parse_type("(com -> com) -> com").unwrap().to_string(), "(com -> com) -> com");
    }
}
