//! Expression language for elements of `Z_n`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' integer)?
//! primary := integer | '(' expr ')' | letter | coeff | 'comm(' expr ',' expr ')'
//! letter  := 'z[' i ',' j ']' | 't[' i ']' | 'zhat[' i ',' j ']' | 'tring[' i ']'
//! coeff   := 'th(' i ')' | 'th(' i ',' j ')'
//! ```
//!
//! Division is by elements without letters only; `th(i,j)` is `θ_i − θ_j`.

use num_bigint::BigInt;
use reducta::coeffring::{Coefficient, Rat};
use reducta::zn::{to_plain, Basis, ZElement};
use reducta::{Error, Result};

/// Kinds of generator letters.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LetterKind {
    Z,
    T,
    ZHat,
    TRing,
}

/// Parsed expression; indices are 1-based and checked against the rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Letter(LetterKind, usize, usize),
    Theta(usize),
    ThetaDiff(usize, usize),
    Integer(BigInt),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Comm(Box<Expr>, Box<Expr>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = input.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek().filter(|(_, d)| d.is_ascii_alphanumeric()) {
                s.push(d);
                it.next();
            }
            out.push((pos, Tok::Ident(s)));
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek().filter(|(_, d)| d.is_ascii_digit()) {
                s.push(d);
                it.next();
            }
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if "+-*/^()[],".contains(c) {
            out.push((pos, Tok::Sym(c)));
            it.next();
        } else if c == '−' {
            // the Unicode minus sign
            out.push((pos, Tok::Sym('-')));
            it.next();
        } else {
            return Err(syntax(pos, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    n: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected '{c}'")))
        }
    }

    fn index(&mut self) -> Result<usize> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                let i: usize = (&v).try_into().map_err(|_| Error::IndexOutOfRange(v.to_string()))?;
                if i == 0 || i > self.n {
                    return Err(Error::IndexOutOfRange(format!("{i} at byte {pos} (rank {})", self.n)));
                }
                Ok(i)
            }
            _ => Err(syntax(pos, "expected an index")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.primary()?;
        if self.eat('^') {
            let pos = self.pos();
            return match self.peek().cloned() {
                Some(Tok::Int(v)) => {
                    self.at += 1;
                    let e: u32 = v.try_into().map_err(|_| syntax(pos, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(syntax(pos, "expected an exponent")),
            };
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(pos, "unexpected end of input"));
        };
        self.at += 1;
        match tok {
            Tok::Int(v) => Ok(Expr::Integer(v)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "z" | "zhat" => {
                    self.expect('[')?;
                    let i = self.index()?;
                    self.expect(',')?;
                    let j = self.index()?;
                    self.expect(']')?;
                    let kind = match (name.as_str(), i == j) {
                        ("z", false) => LetterKind::Z,
                        ("z", true) => LetterKind::T,
                        (_, false) => LetterKind::ZHat,
                        (_, true) => LetterKind::TRing,
                    };
                    Ok(Expr::Letter(kind, i, j))
                }
                "t" | "tring" => {
                    self.expect('[')?;
                    let i = self.index()?;
                    self.expect(']')?;
                    let kind = if name == "t" { LetterKind::T } else { LetterKind::TRing };
                    Ok(Expr::Letter(kind, i, i))
                }
                "th" => {
                    self.expect('(')?;
                    let i = self.index()?;
                    let e = if self.eat(',') {
                        Expr::ThetaDiff(i, self.index()?)
                    } else {
                        Expr::Theta(i)
                    };
                    self.expect(')')?;
                    Ok(e)
                }
                "comm" => {
                    self.expect('(')?;
                    let a = self.expr()?;
                    self.expect(',')?;
                    let b = self.expr()?;
                    self.expect(')')?;
                    Ok(Expr::Comm(Box::new(a), Box::new(b)))
                }
                other => Err(syntax(pos, format!("unknown name {other:?}"))),
            },
            Tok::Sym(c) => Err(syntax(pos, format!("unexpected '{c}'"))),
        }
    }
}

/// Parses `input` for the algebra of rank `n`.
pub fn parse(input: &str, n: usize) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(input)?,
        at: 0,
        end: input.len(),
        n,
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(syntax(p.pos(), "trailing input"));
    }
    Ok(e)
}

fn is_scalar(x: &ZElement) -> bool {
    x.iter().all(|(w, _)| w.is_empty())
}

/// Brings two elements to a common letter set: elements without letters
/// adopt the other's, otherwise mixed inputs are rewritten in plain letters.
fn unify(a: ZElement, b: ZElement) -> (ZElement, ZElement) {
    if a.basis() == b.basis() {
        (a, b)
    } else if is_scalar(&a) {
        let basis = b.basis();
        (a.with_basis(basis), b)
    } else if is_scalar(&b) {
        let basis = a.basis();
        (a, b.with_basis(basis))
    } else {
        (to_plain(&a), to_plain(&b))
    }
}

impl Expr {
    /// The element of the free ∗-algebra over `Ū(h)` the expression denotes.
    pub fn eval(&self, n: usize) -> Result<ZElement> {
        Ok(match self {
            Expr::Letter(kind, i, j) => {
                let x = ZElement::gen(n, *i, *j);
                match kind {
                    LetterKind::Z | LetterKind::T => x,
                    LetterKind::ZHat | LetterKind::TRing => x.with_basis(Basis::Hat),
                }
            }
            Expr::Theta(i) => ZElement::scalar(Coefficient::theta(n, *i)),
            Expr::ThetaDiff(i, j) => ZElement::scalar(Coefficient::theta_ij(n, *i, *j, 0)),
            Expr::Integer(v) => ZElement::scalar(Coefficient::from_rat(n, Rat::from_integer(v.clone()))),
            Expr::Add(a, b) => {
                let (a, b) = unify(a.eval(n)?, b.eval(n)?);
                a.add(&b)
            }
            Expr::Sub(a, b) => {
                let (a, b) = unify(a.eval(n)?, b.eval(n)?);
                a.sub(&b)
            }
            Expr::Mul(a, b) => {
                let (a, b) = unify(a.eval(n)?, b.eval(n)?);
                a.mul(&b)
            }
            Expr::Comm(a, b) => {
                let (a, b) = unify(a.eval(n)?, b.eval(n)?);
                a.commutator(&b)
            }
            Expr::Div(a, b) => {
                let a = a.eval(n)?;
                let b = b.eval(n)?;
                if !is_scalar(&b) {
                    return Err(syntax(0, "division by an element with letters"));
                }
                let c = b.coeff(&[]).recip()?;
                // a / c = a·c^{-1}, the coefficient standing to the right
                a.times_coeff(&c)
            }
            Expr::Neg(a) => a.eval(n)?.neg(),
            Expr::Pow(a, e) => {
                let base = a.eval(n)?;
                let one = ZElement::one(n).with_basis(base.basis());
                (0..*e).fold(one, |acc, _| acc.mul(&base))
            }
        })
    }

    /// LaTeX rendering with `\mathring` for the hat letters.
    pub fn to_latex(&self) -> String {
        let idx = |i: usize, j: usize| {
            if i < 10 && j < 10 {
                format!("{i}{j}")
            } else {
                format!("{i},{j}")
            }
        };
        let wrap = |e: &Expr| {
            let s = e.to_latex();
            if matches!(e, Expr::Add(..) | Expr::Sub(..)) {
                format!("\\left({s}\\right)")
            } else {
                s
            }
        };
        match self {
            Expr::Letter(LetterKind::Z, i, j) => format!("z_{{{}}}", idx(*i, *j)),
            Expr::Letter(LetterKind::T, i, _) => format!("t_{{{i}}}"),
            Expr::Letter(LetterKind::ZHat, i, j) => format!("\\mathring{{z}}_{{{}}}", idx(*i, *j)),
            Expr::Letter(LetterKind::TRing, i, _) => format!("\\mathring{{t}}_{{{i}}}"),
            Expr::Theta(i) => format!("\\theta_{{{i}}}"),
            Expr::ThetaDiff(i, j) => format!("\\theta_{{{}}}", idx(*i, *j)),
            Expr::Integer(v) => v.to_string(),
            Expr::Add(a, b) => format!("{} + {}", a.to_latex(), b.to_latex()),
            Expr::Sub(a, b) => format!("{} - {}", a.to_latex(), wrap(b)),
            Expr::Mul(a, b) => format!("{}\\,{}", wrap(a), wrap(b)),
            Expr::Div(a, b) => format!("\\frac{{{}}}{{{}}}", a.to_latex(), b.to_latex()),
            Expr::Neg(a) => format!("-{}", wrap(a)),
            Expr::Pow(a, e) => {
                let base = a.to_latex();
                if matches!(**a, Expr::Letter(..) | Expr::Theta(_) | Expr::ThetaDiff(..) | Expr::Integer(_)) {
                    format!("{base}^{{{e}}}")
                } else {
                    format!("\\left({base}\\right)^{{{e}}}")
                }
            }
            Expr::Comm(a, b) => format!("\\left[{}, {}\\right]", a.to_latex(), b.to_latex()),
        }
    }
}

/// Parses and evaluates in one step.
pub fn parse_element(input: &str, n: usize) -> Result<ZElement> {
    parse(input, n)?.eval(n)
}
