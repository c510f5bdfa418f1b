use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::ast::{Expr, ExprKind};
use super::lexer::{Token, TokenKind};
use super::{DslError, Span};

/// Recursive-descent parser over a token slice.
///
/// ```text
/// expr   := term (('+' | '-') term)*
/// term   := factor (('*' | '/') factor)*
/// factor := atom ('^' INT)? | '-' factor
/// atom   := INT | 'q' ('^' '-'? INT)? | call | '(' expr ')'
/// ```
pub fn parse(tokens: &[Token], src_len: usize) -> Result<Expr, DslError> {
    let mut p = Parser {
        tokens,
        pos: 0,
        src_len,
    };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(p.error_at(
            t.span.start,
            format!("unexpected {}", t.kind.describe()),
            &["operator", "end of input"],
        ));
    }
    Ok(e)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    src_len: usize,
}

type PResult<T> = Result<T, DslError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.src_len, |t| t.span.start)
    }

    fn last_end(&self) -> usize {
        self.pos
            .checked_sub(1)
            .and_then(|i| self.tokens.get(i))
            .map_or(0, |t| t.span.end)
    }

    fn error_at(&self, offset: usize, message: String, expected: &[&str]) -> DslError {
        DslError::Parse {
            offset,
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn unexpected(&self, expected: &[&str]) -> DslError {
        match self.peek() {
            Some(t) => self.error_at(
                t.span.start,
                format!("unexpected {}", t.kind.describe()),
                expected,
            ),
            None => self.error_at(self.src_len, "unexpected end of input".into(), expected),
        }
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek().is_some_and(|t| &t.kind == kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> PResult<()> {
        if self.eat(&kind) {
            Ok(())
        } else {
            Err(self.unexpected(&[what]))
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let start = self.here();
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Plus) => ExprKind::Add as fn(Box<Expr>, Box<Expr>) -> ExprKind,
                Some(TokenKind::Minus) => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::new(
                op(Box::new(lhs), Box::new(rhs)),
                Span {
                    start,
                    end: self.last_end(),
                },
            );
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let start = self.here();
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Star) => ExprKind::Mul as fn(Box<Expr>, Box<Expr>) -> ExprKind,
                Some(TokenKind::Slash) => ExprKind::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Expr::new(
                op(Box::new(lhs), Box::new(rhs)),
                Span {
                    start,
                    end: self.last_end(),
                },
            );
        }
    }

    fn factor(&mut self) -> PResult<Expr> {
        let start = self.here();
        if self.eat(&TokenKind::Minus) {
            let inner = self.factor()?;
            return Ok(Expr::new(
                ExprKind::Neg(Box::new(inner)),
                Span {
                    start,
                    end: self.last_end(),
                },
            ));
        }
        let base = self.atom()?;
        if self.eat(&TokenKind::Caret) {
            let n = self.small_uint("exponent")?;
            let n = u32::try_from(n)
                .map_err(|_| self.error_at(start, "exponent too large".into(), &["integer"]))?;
            return Ok(Expr::new(
                ExprKind::Pow(Box::new(base), n),
                Span {
                    start,
                    end: self.last_end(),
                },
            ));
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let start = self.here();
        let Some(tok) = self.next() else {
            return Err(self.unexpected(&["integer", "`q`", "function call", "`(`"]));
        };
        match &tok.kind {
            TokenKind::Int(n) => Ok(Expr::new(ExprKind::Const(n.clone()), tok.span)),
            TokenKind::Q => {
                let j = if self.eat(&TokenKind::Caret) {
                    self.signed_int("exponent")?
                } else {
                    1
                };
                Ok(Expr::new(
                    ExprKind::Mono {
                        c: BigInt::one(),
                        j,
                    },
                    Span {
                        start,
                        end: self.last_end(),
                    },
                ))
            }
            TokenKind::LParen => {
                let e = self.expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(e)
            }
            TokenKind::Ident(name) => self.call(name, start),
            _ => {
                self.pos -= 1;
                Err(self.unexpected(&["integer", "`q`", "function call", "`(`"]))
            }
        }
    }

    fn int_value(&mut self, what: &str) -> PResult<(BigInt, usize)> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Int(n),
                span,
            }) => {
                self.pos += 1;
                Ok((n.clone(), span.start))
            }
            _ => Err(self.unexpected(&[what])),
        }
    }

    fn small_uint(&mut self, what: &str) -> PResult<u64> {
        let (n, at) = self.int_value(what)?;
        n.to_u64()
            .ok_or_else(|| self.error_at(at, format!("{what} out of range"), &["smaller integer"]))
    }

    fn signed_int(&mut self, what: &str) -> PResult<i64> {
        let neg = self.eat(&TokenKind::Minus);
        let (n, at) = self.int_value(what)?;
        let n = n.to_i64().ok_or_else(|| {
            self.error_at(at, format!("{what} out of range"), &["smaller integer"])
        })?;
        Ok(if neg { -n } else { n })
    }

    /// `±q^a`, `±q` or `±1`.
    fn mono_arg(&mut self) -> PResult<(i32, i64)> {
        let sign = if self.eat(&TokenKind::Minus) { -1 } else { 1 };
        match self.peek().map(|t| &t.kind) {
            Some(TokenKind::Q) => {
                self.pos += 1;
                let a = if self.eat(&TokenKind::Caret) {
                    self.signed_int("exponent")?
                } else {
                    1
                };
                Ok((sign, a))
            }
            Some(TokenKind::Int(n)) if n.is_one() => {
                self.pos += 1;
                Ok((sign, 0))
            }
            _ => Err(self.unexpected(&["`q`", "`q^a`", "`1`"])),
        }
    }

    /// `q` or `q^k` with `k >= 1`.
    fn base(&mut self) -> PResult<i64> {
        let at = self.here();
        self.expect(TokenKind::Q, "base `q^k`")?;
        let k = if self.eat(&TokenKind::Caret) {
            self.signed_int("base exponent")?
        } else {
            1
        };
        if k < 1 {
            return Err(self.error_at(
                at,
                format!("base exponent must be positive, got {k}"),
                &["q^k with k >= 1"],
            ));
        }
        Ok(k)
    }

    fn int_args(&mut self, name: &str, count: usize) -> PResult<Vec<i64>> {
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            if i > 0 {
                self.arity_sep(name, count, &TokenKind::Comma)?;
            }
            if count > 0 && self.peek().is_some_and(|t| t.kind == TokenKind::RParen) {
                return Err(self.arity_error(name, count));
            }
            out.push(self.signed_int("integer argument")?);
        }
        Ok(out)
    }

    fn arity_error(&self, name: &str, count: usize) -> DslError {
        let want = match count {
            1 => "1 argument".to_string(),
            n => format!("{n} arguments"),
        };
        self.error_at(
            self.here(),
            format!("function `{name}` expects {want}"),
            &[signature(name)],
        )
    }

    fn arity_sep(&mut self, name: &str, count: usize, sep: &TokenKind) -> PResult<()> {
        if self.eat(sep) {
            return Ok(());
        }
        if self.peek().is_some_and(|t| t.kind == TokenKind::RParen) {
            return Err(self.arity_error(name, count));
        }
        Err(self.unexpected(&[&sep.describe()]))
    }

    fn close(&mut self, name: &str, count: usize) -> PResult<()> {
        if self.eat(&TokenKind::RParen) {
            return Ok(());
        }
        if self
            .peek()
            .is_some_and(|t| matches!(t.kind, TokenKind::Comma | TokenKind::Semi))
        {
            return Err(self.arity_error(name, count));
        }
        Err(self.unexpected(&["`)`"]))
    }

    fn call(&mut self, name: &str, start: usize) -> PResult<Expr> {
        if !matches!(
            name,
            "poch"
                | "P"
                | "P0"
                | "theta"
                | "sigma"
                | "sigmay"
                | "sigma0"
                | "S2"
                | "g"
                | "rankgf"
                | "mult"
                | "dissect"
                | "subpow"
        ) {
            return Err(self.error_at(start, format!("unknown function `{name}`"), &[KNOWN]));
        }
        self.expect(TokenKind::LParen, "`(`")?;
        let span = |p: &Self| Span {
            start,
            end: p.last_end(),
        };
        let kind = match name {
            "poch" => {
                let mut args = vec![self.mono_arg()?];
                while self.eat(&TokenKind::Comma) {
                    args.push(self.mono_arg()?);
                }
                self.arity_sep(name, 3, &TokenKind::Semi)?;
                let k = self.base()?;
                self.arity_sep(name, 3, &TokenKind::Semi)?;
                let n = if self.eat(&TokenKind::Inf) {
                    None
                } else {
                    Some(self.small_uint("length or `inf`")?)
                };
                self.close(name, 3)?;
                let sp = span(self);
                let mut factors = args.into_iter().map(|(sign, a)| {
                    let kind = match n {
                        None => ExprKind::PochInf { sign, a, k },
                        Some(n) => ExprKind::PochFin { sign, a, k, n },
                    };
                    Expr::new(kind, sp)
                });
                let first = factors.next().expect("at least one argument");
                return Ok(factors.fold(first, |acc, f| {
                    Expr::new(ExprKind::Mul(Box::new(acc), Box::new(f)), sp)
                }));
            }
            "P" | "theta" => {
                let (sign, a) = self.mono_arg()?;
                self.arity_sep(name, 2, &TokenKind::Semi)?;
                let k = self.base()?;
                self.close(name, 2)?;
                if name == "P" {
                    ExprKind::BigP { sign, a, k }
                } else {
                    ExprKind::Theta { sign, a, k }
                }
            }
            "mult" => {
                self.close(name, 0)?;
                ExprKind::Multiplier
            }
            "dissect" | "subpow" => {
                let child = Box::new(self.expr()?);
                let count = if name == "dissect" { 3 } else { 2 };
                self.arity_sep(name, count, &TokenKind::Comma)?;
                let rest = self.int_args(name, count - 1)?;
                self.close(name, count)?;
                let positive = |v: i64, what: &str, p: &Self| {
                    u32::try_from(v).ok().filter(|&x| x >= 1).ok_or_else(|| {
                        p.error_at(
                            start,
                            format!("`{name}` needs a positive {what}, got {v}"),
                            &["positive integer"],
                        )
                    })
                };
                if name == "subpow" {
                    ExprKind::SubPow {
                        child,
                        k: positive(rest[0], "power", self)?,
                    }
                } else {
                    let l = positive(rest[0], "modulus", self)?;
                    let d = u32::try_from(rest[1])
                        .ok()
                        .filter(|&d| d < l)
                        .ok_or_else(|| {
                            self.error_at(
                                start,
                                format!("`dissect` residue must lie in 0..{l}, got {}", rest[1]),
                                &["residue"],
                            )
                        })?;
                    ExprKind::Dissect { child, l, d }
                }
            }
            _ => {
                let count = match name {
                    "P0" => 1,
                    "sigma" | "sigmay" => 3,
                    _ => 2,
                };
                let v = self.int_args(name, count)?;
                self.close(name, count)?;
                match name {
                    "P0" => ExprKind::PZero(v[0]),
                    "sigma" => ExprKind::SigmaAB {
                        a: v[0],
                        b: v[1],
                        l: v[2],
                    },
                    "sigmay" => ExprKind::SigmaY {
                        a: v[0],
                        b: v[1],
                        l: v[2],
                    },
                    "sigma0" => ExprKind::Sigma0B { b: v[0], l: v[1] },
                    "S2" => ExprKind::S2 { b: v[0], l: v[1] },
                    "g" => ExprKind::G { a: v[0], l: v[1] },
                    _ => ExprKind::RankGF { s: v[0], l: v[1] },
                }
            }
        };
        Ok(Expr::new(kind, span(self)))
    }
}

const KNOWN: &str =
    "poch, P, P0, theta, sigma, sigmay, sigma0, S2, g, rankgf, mult, dissect, subpow";

fn signature(name: &str) -> &'static str {
    match name {
        "poch" => "poch(±q^a, ...; q^k; n|inf)",
        "P" => "P(±q^a; q^k)",
        "theta" => "theta(±q^a; q^k)",
        "P0" => "P0(l)",
        "sigma" => "sigma(a, b, l)",
        "sigmay" => "sigmay(a, b, l)",
        "sigma0" => "sigma0(b, l)",
        "S2" => "S2(b, l)",
        "g" => "g(a, l)",
        "rankgf" => "rankgf(s, l)",
        "mult" => "mult()",
        "dissect" => "dissect(expr, l, d)",
        "subpow" => "subpow(expr, k)",
        _ => KNOWN,
    }
}
