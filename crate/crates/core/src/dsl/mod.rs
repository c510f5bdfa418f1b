//! A small expression language for q-series.
//!
//! ```text
//! poch(-q^3, q^6; q^6; inf) / poch(q^2, q^4; q^6; inf)
//! dissect(rankgf(0, 3) - rankgf(1, 3), 3, 1)
//! 2*g(1, 5) - g(2, 5) + 1
//! ```
//!
//! Semicolons separate the parts of a Pochhammer-style call, commas separate
//! plain integer arguments. `poch(a1, a2, ...; q^k; n)` is shorthand for the
//! product of the individual symbols.

mod ast;
mod eval;
mod lexer;
mod parser;

use std::fmt;

pub use ast::{Expr, ExprKind};
pub use eval::{eval, eval_with_stats};
pub use lexer::{tokenize, Token, TokenKind};

use crate::error::Error;

/// Half-open byte range into the source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("lex error at offset {offset}: {message}")]
    Lex { offset: usize, message: String },
    #[error("parse error at offset {offset}: {message} (expected {})", expected.join(" or "))]
    Parse {
        offset: usize,
        message: String,
        expected: Vec<String>,
    },
    #[error("evaluation of `{expr}` (bytes {}..{}) failed: {error}", span.start, span.end)]
    Eval {
        error: Error,
        span: Span,
        expr: String,
    },
}

impl DslError {
    /// Byte offset the error points at.
    pub fn offset(&self) -> usize {
        match self {
            DslError::Lex { offset, .. } | DslError::Parse { offset, .. } => *offset,
            DslError::Eval { span, .. } => span.start,
        }
    }
}

/// Tokenizes and parses `src`.
pub fn parse(src: &str) -> Result<Expr, DslError> {
    let tokens = tokenize(src)?;
    parser::parse(&tokens, src.len())
}

/// Parses and evaluates `src`, returning coefficients through `q^order`.
pub fn eval_str(src: &str, order: i64) -> Result<crate::QSeries, DslError> {
    eval(&parse(src)?, order)
}

/// Shows the offending part of `src` under an error message.
pub fn caret_diagnostic(src: &str, err: &DslError) -> String {
    let offset = err.offset().min(src.len());
    let mut out = fmt::format(format_args!("{err}\n  {src}\n  "));
    out.push_str(&" ".repeat(src[..offset].chars().count()));
    out.push('^');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QSeries;

    #[test]
    fn parse_examples() {
        assert_eq!(parse("P0(3)").unwrap().kind, ExprKind::PZero(3));
        let e = parse("poch(-q^3; q^6; inf) / poch(q^2; q^6; inf)").unwrap();
        let want = ExprKind::Div(
            Box::new(Expr::bare(ExprKind::PochInf {
                sign: -1,
                a: 3,
                k: 6,
            })),
            Box::new(Expr::bare(ExprKind::PochInf {
                sign: 1,
                a: 2,
                k: 6,
            })),
        );
        assert_eq!(e.kind, want);
        let e = parse("dissect(mult(), 3, 1)").unwrap();
        assert_eq!(
            e.kind,
            ExprKind::Dissect {
                child: Box::new(Expr::bare(ExprKind::Multiplier)),
                l: 3,
                d: 1
            }
        );
    }

    #[test]
    fn sugar_expands_to_products() {
        let a = parse("poch(q, -q^2, 1; q^3; 4)").unwrap();
        let b = parse("poch(q; q^3; 4) * poch(-q^2; q^3; 4) * poch(1; q^3; 4)").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors() {
        let e = parse("sigma(1, 2)").unwrap_err();
        assert!(
            matches!(&e, DslError::Parse { message, .. } if message.contains("`sigma` expects 3 arguments")),
            "{e}"
        );
        let e = parse("P(q; q^2; inf)").unwrap_err();
        assert!(
            matches!(&e, DslError::Parse { message, .. } if message.contains("`P`")),
            "{e}"
        );
        assert!(matches!(
            parse("foo(1)"),
            Err(DslError::Parse { offset: 0, .. })
        ));
        assert!(matches!(
            parse("1 +"),
            Err(DslError::Parse { offset: 3, .. })
        ));
        assert!(matches!(parse("(1"), Err(DslError::Parse { .. })));
        assert!(matches!(
            parse("dissect(q, 3, 3)"),
            Err(DslError::Parse { .. })
        ));
        let src = "poch(q; q; inf) / (1 - 1)";
        let e = eval_str(src, 5).unwrap_err();
        assert!(
            matches!(
                &e,
                DslError::Eval {
                    error: Error::ZeroSeries { .. },
                    ..
                }
            ),
            "{e}"
        );
        assert!(caret_diagnostic(src, &e).ends_with('^'));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(
            eval_str("poch(q;q;inf) * 1/poch(q;q;inf)", 10).unwrap(),
            QSeries::one(11)
        );
        let z = eval_str("S2(1,3) + S2(5,3)", 100).unwrap();
        assert!(z.is_zero() && z.prec() == 101);
        let lau = eval_str("q^-2 * (1 + q)", 3).unwrap();
        assert_eq!(lau, QSeries::from_i64s(-2, &[1, 1, 0, 0, 0, 0]));
        let fin = eval_str("poch(q; q; 3)", 10).unwrap();
        assert_eq!(
            fin,
            QSeries::from_i64s(0, &[1, -1, -1, 0, 1, 1, -1, 0, 0, 0, 0])
        );
        // Exact monomials never cost precision.
        let s = eval_str("q^500 * q^-500 * poch(q; q; inf)", 20).unwrap();
        assert_eq!(s.prec(), 21);
        let s = eval_str("poch(q; q; inf)^2 / (1 - q)", 10).unwrap();
        assert_eq!(s.prec(), 11);
        let half = eval_str("P(-1; q^2) / 2", 10).unwrap();
        assert_eq!(half.coeff(0).unwrap(), 1.into());
    }
}
