use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::Span;

/// A parsed expression. Equality and hashing look only at the structure,
/// never at source spans.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExprKind {
    Const(BigInt),
    /// `c q^j`.
    Mono {
        c: BigInt,
        j: i64,
    },
    PochInf {
        sign: i32,
        a: i64,
        k: i64,
    },
    PochFin {
        sign: i32,
        a: i64,
        k: i64,
        n: u64,
    },
    BigP {
        sign: i32,
        a: i64,
        k: i64,
    },
    PZero(i64),
    Theta {
        sign: i32,
        a: i64,
        k: i64,
    },
    /// `Sigma(a, b)` in `q`, with `y = q^l`.
    SigmaAB {
        a: i64,
        b: i64,
        l: i64,
    },
    /// `Sigma(a, b)` with `y` itself as the variable.
    SigmaY {
        a: i64,
        b: i64,
        l: i64,
    },
    Sigma0B {
        b: i64,
        l: i64,
    },
    S2 {
        b: i64,
        l: i64,
    },
    G {
        a: i64,
        l: i64,
    },
    RankGF {
        s: i64,
        l: i64,
    },
    Multiplier,
    Dissect {
        child: Box<Expr>,
        l: u32,
        d: u32,
    },
    SubPow {
        child: Box<Expr>,
        k: u32,
    },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    /// Node with an empty span, for programmatic construction.
    pub fn bare(kind: ExprKind) -> Self {
        Expr {
            kind,
            span: Span::default(),
        }
    }

    fn level(&self) -> u8 {
        match &self.kind {
            ExprKind::Add(..) | ExprKind::Sub(..) => 1,
            ExprKind::Mul(..) | ExprKind::Div(..) => 2,
            ExprKind::Neg(..) | ExprKind::Pow(..) => 3,
            ExprKind::Const(c) if c.is_negative() => 2,
            ExprKind::Mono { c, .. } if !c.is_one() => 2,
            _ => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        if self.level() < min_level {
            write!(f, "(")?;
            self.write_bare(f)?;
            return write!(f, ")");
        }
        self.write_bare(f)
    }

    fn write_bare(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ExprKind::*;
        match &self.kind {
            Const(c) if c.is_negative() => write!(f, "-{}", c.abs()),
            Const(c) => write!(f, "{c}"),
            Mono { c, j } => {
                if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                match j {
                    1 => write!(f, "q"),
                    _ => write!(f, "q^{j}"),
                }
            }
            PochInf { sign, a, k } => write!(f, "poch({}; {}; inf)", MonoArg(*sign, *a), Base(*k)),
            PochFin { sign, a, k, n } => {
                write!(f, "poch({}; {}; {n})", MonoArg(*sign, *a), Base(*k))
            }
            BigP { sign, a, k } => write!(f, "P({}; {})", MonoArg(*sign, *a), Base(*k)),
            PZero(l) => write!(f, "P0({l})"),
            Theta { sign, a, k } => write!(f, "theta({}; {})", MonoArg(*sign, *a), Base(*k)),
            SigmaAB { a, b, l } => write!(f, "sigma({a}, {b}, {l})"),
            SigmaY { a, b, l } => write!(f, "sigmay({a}, {b}, {l})"),
            Sigma0B { b, l } => write!(f, "sigma0({b}, {l})"),
            S2 { b, l } => write!(f, "S2({b}, {l})"),
            G { a, l } => write!(f, "g({a}, {l})"),
            RankGF { s, l } => write!(f, "rankgf({s}, {l})"),
            Multiplier => write!(f, "mult()"),
            Dissect { child, l, d } => write!(f, "dissect({child}, {l}, {d})"),
            SubPow { child, k } => write!(f, "subpow({child}, {k})"),
            Add(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " + ")?;
                b.write_at(f, 2)
            }
            Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " - ")?;
                b.write_at(f, 2)
            }
            Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, " * ")?;
                b.write_at(f, 3)
            }
            Div(a, b) => {
                a.write_at(f, 2)?;
                write!(f, " / ")?;
                b.write_at(f, 3)
            }
            Pow(base, n) => {
                // `q^2` would reparse as a monomial, so a bare `q` base gets parentheses.
                if matches!(base.kind, Mono { .. }) {
                    write!(f, "(")?;
                    base.write_bare(f)?;
                    write!(f, ")")?;
                } else {
                    base.write_at(f, 4)?;
                }
                write!(f, "^{n}")
            }
            Neg(x) => {
                write!(f, "-")?;
                x.write_at(f, 3)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_bare(f)
    }
}

struct MonoArg(i32, i64);

impl fmt::Display for MonoArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        match self.1 {
            0 => write!(f, "{sign}1"),
            1 => write!(f, "{sign}q"),
            a => write!(f, "{sign}q^{a}"),
        }
    }
}

struct Base(i64);

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            1 => write!(f, "q"),
            k => write!(f, "q^{k}"),
        }
    }
}
