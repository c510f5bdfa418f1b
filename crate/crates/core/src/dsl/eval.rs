use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::ast::{Expr, ExprKind};
use super::DslError;
use crate::error::Error;
use crate::identities::{multiplier, rank_gf};
use crate::lambert::{g_of, s2, sigma_0b, sigma_ab, sigma_ab_y};
use crate::products::{big_p, p_zero, poch_inf, theta_sum};
use crate::series::{LaurentPoly, QSeries};

/// Exact finite Laurent polynomials stay symbolic so that monomial
/// prefactors like `q^-45` cost no precision.
#[derive(Clone, Debug)]
enum Value {
    Poly(LaurentPoly),
    Series(QSeries),
}

/// Evaluates `expr` and returns its coefficients through `q^order`.
///
/// Evaluation runs at a working precision that is raised until the result
/// is known through `order`; sub-expressions are memoized per working
/// precision.
pub fn eval(expr: &Expr, order: i64) -> Result<QSeries, DslError> {
    eval_with_stats(expr, order).map(|(s, _)| s)
}

/// Like [`eval`], also returning the final working precision.
pub fn eval_with_stats(expr: &Expr, order: i64) -> Result<(QSeries, i64), DslError> {
    let target = order + 1;
    let cap = 16 * target.max(16) + 4000;
    let mut ev = Evaluator {
        memo: HashMap::new(),
    };
    let mut work = target;
    loop {
        let s = match ev.node(expr, work)? {
            Value::Poly(p) => poly_to_series(&p, target),
            Value::Series(s) => s,
        };
        if s.prec() >= target {
            return Ok((s.truncate(target), work));
        }
        let deficit = target - s.prec();
        if work + deficit > cap {
            let error = Error::InsufficientPrecision {
                needed: order,
                available: s.prec(),
            };
            return Err(DslError::Eval {
                error,
                span: expr.span,
                expr: expr.to_string(),
            });
        }
        work += deficit + 8;
    }
}

struct Evaluator {
    memo: HashMap<(Expr, i64), Value>,
}

fn fail(e: &Expr) -> impl Fn(Error) -> DslError + '_ {
    move |error| DslError::Eval {
        error,
        span: e.span,
        expr: e.to_string(),
    }
}

fn poly_to_series(p: &LaurentPoly, prec: i64) -> QSeries {
    let Some(lo) = p.terms().next().map(|(e, _)| e) else {
        return QSeries::zero(prec);
    };
    if lo >= prec {
        return QSeries::zero(prec);
    }
    let mut coeffs = vec![BigInt::zero(); (prec - lo) as usize];
    for (e, c) in p.terms() {
        if e < prec {
            coeffs[(e - lo) as usize] = c.clone();
        }
    }
    QSeries::from_coeffs(lo, coeffs)
}

fn poly_min(p: &LaurentPoly) -> Option<i64> {
    p.terms().next().map(|(e, _)| e)
}

fn poly_max(p: &LaurentPoly) -> Option<i64> {
    p.terms().last().map(|(e, _)| e)
}

/// Series times an exact polynomial: each term is an exact shift.
fn mul_series_poly(s: &QSeries, p: &LaurentPoly) -> Value {
    let mut acc: Option<QSeries> = None;
    for (e, c) in p.terms() {
        let t = s.scale(c).shift(e);
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t),
        });
    }
    match acc {
        None => Value::Poly(LaurentPoly::zero()),
        Some(s) => Value::Series(s),
    }
}

fn series_div_poly(s: &QSeries, p: &LaurentPoly) -> Result<QSeries, Error> {
    let v = poly_min(p).ok_or(Error::ZeroSeries { prec: s.prec() })?;
    let u = s.valuation().unwrap_or(s.prec());
    // An exact divisor only has to be known as far as the quotient can be.
    let prec = (s.prec() - u + v + 1).max(poly_max(p).unwrap_or(v) + 1);
    s.div(&poly_to_series(p, prec))
}

fn poly_pow(p: &LaurentPoly, n: u32) -> LaurentPoly {
    let mut out = LaurentPoly::constant(1);
    for _ in 0..n {
        out = out.mul(p);
    }
    out
}

fn poly_dissect(p: &LaurentPoly, l: u32, d: u32) -> Result<LaurentPoly, Error> {
    if let Some(lo) = poly_min(p) {
        if lo < 0 {
            return Err(Error::NegativeSupport { min_exp: lo });
        }
    }
    let (l, d) = (l as i64, d as i64);
    Ok(LaurentPoly::from_terms(
        p.terms()
            .filter(|(e, _)| e % l == d)
            .map(|(e, c)| ((e - d) / l, c.clone())),
    ))
}

impl Evaluator {
    fn node(&mut self, e: &Expr, w: i64) -> Result<Value, DslError> {
        let key = (e.clone(), w);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute(e, w)?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    fn compute(&mut self, e: &Expr, w: i64) -> Result<Value, DslError> {
        use ExprKind::*;
        let series = |r: Result<QSeries, Error>| r.map(Value::Series).map_err(fail(e));
        match &e.kind {
            Const(c) => Ok(Value::Poly(LaurentPoly::constant(c.clone()))),
            Mono { c, j } => Ok(Value::Poly(LaurentPoly::monomial(c.clone(), *j))),
            PochInf { sign, a, k } => series(poch_inf(*sign, *a, *k, w)),
            PochFin { sign, a, k, n } => {
                if *n > 100_000 {
                    return Err(fail(e)(Error::InvalidArgument(format!(
                        "finite product length {n} is too large"
                    ))));
                }
                let mut p = LaurentPoly::constant(1);
                for r in 0..*n as i64 {
                    let factor =
                        LaurentPoly::constant(1).sub(&LaurentPoly::monomial(*sign, a + r * k));
                    p = p.mul(&factor);
                }
                Ok(Value::Poly(p))
            }
            BigP { sign, a, k } => series(big_p(*sign, *a, *k, w)),
            PZero(l) => {
                if *l < 1 {
                    return Err(fail(e)(Error::InvalidArgument(format!(
                        "P0 needs l >= 1, got {l}"
                    ))));
                }
                series(p_zero(*l, w))
            }
            Theta { sign, a, k } => series(theta_sum(*sign, *a, *k, w)),
            SigmaAB { a, b, l } => series(sigma_ab(*a, *b, *l, w)),
            SigmaY { a, b, l } => series(sigma_ab_y(*a, *b, *l).and_then(|s| s.expand(w))),
            Sigma0B { b, l } => series(sigma_0b(*b, *l, w)),
            S2 { b, l } => series(s2(*b, *l, w)),
            G { a, l } => series(g_of(*a, *l, w)),
            RankGF { s, l } => series(rank_gf(*s, *l, w)),
            Multiplier => series(multiplier(w)),
            Dissect { child, l, d } => {
                let inner = w.saturating_mul(*l as i64).saturating_add(*d as i64);
                match self.node(child, inner)? {
                    Value::Poly(p) => poly_dissect(&p, *l, *d).map(Value::Poly).map_err(fail(e)),
                    Value::Series(s) => series(s.dissect(*l, *d)),
                }
            }
            SubPow { child, k } => {
                let inner = (w + *k as i64 - 1).div_euclid(*k as i64);
                match self.node(child, inner)? {
                    Value::Poly(p) => Ok(Value::Poly(LaurentPoly::from_terms(
                        p.terms().map(|(x, c)| (x * *k as i64, c.clone())),
                    ))),
                    Value::Series(s) => Ok(Value::Series(s.substitute_power(*k))),
                }
            }
            Neg(x) => Ok(match self.node(x, w)? {
                Value::Poly(p) => Value::Poly(p.neg()),
                Value::Series(s) => Value::Series(s.neg()),
            }),
            Pow(x, n) => Ok(match self.node(x, w)? {
                Value::Poly(p) => Value::Poly(poly_pow(&p, *n)),
                Value::Series(s) => Value::Series(s.pow(*n)),
            }),
            Add(a, b) | Sub(a, b) => {
                let (x, y) = (self.node(a, w)?, self.node(b, w)?);
                let sub = matches!(e.kind, Sub(..));
                Ok(match (x, y) {
                    (Value::Poly(p), Value::Poly(r)) => {
                        Value::Poly(if sub { p.sub(&r) } else { p.add(&r) })
                    }
                    (x, y) => {
                        let prec = [&x, &y]
                            .iter()
                            .filter_map(|v| match v {
                                Value::Series(s) => Some(s.prec()),
                                Value::Poly(_) => None,
                            })
                            .min()
                            .expect("one side is a series");
                        let as_series = |v: Value| match v {
                            Value::Poly(p) => poly_to_series(&p, prec),
                            Value::Series(s) => s,
                        };
                        let (x, y) = (as_series(x), as_series(y));
                        Value::Series(if sub { x.sub(&y) } else { x.add(&y) })
                    }
                })
            }
            Mul(a, b) => {
                let (x, y) = (self.node(a, w)?, self.node(b, w)?);
                Ok(match (x, y) {
                    (Value::Poly(p), Value::Poly(r)) => Value::Poly(p.mul(&r)),
                    (Value::Poly(p), Value::Series(s)) | (Value::Series(s), Value::Poly(p)) => {
                        mul_series_poly(&s, &p)
                    }
                    (Value::Series(s), Value::Series(t)) => Value::Series(s.mul(&t)),
                })
            }
            Div(a, b) => {
                let (x, y) = (self.node(a, w)?, self.node(b, w)?);
                match (x, y) {
                    (Value::Poly(p), Value::Poly(r)) => {
                        if let Some(q) = exact_poly_div(&p, &r) {
                            return Ok(Value::Poly(q));
                        }
                        series(series_div_poly(
                            &poly_to_series(&p, w.max(poly_max(&p).unwrap_or(0) + 1)),
                            &r,
                        ))
                    }
                    (Value::Series(s), Value::Poly(r)) => series(series_div_poly(&s, &r)),
                    (Value::Poly(p), Value::Series(t)) => {
                        let u = poly_min(&p).unwrap_or(0);
                        let v = t.valuation().unwrap_or(t.prec());
                        let prec = (t.prec() - v + u + 1).max(poly_max(&p).unwrap_or(u) + 1);
                        series(poly_to_series(&p, prec).div(&t))
                    }
                    (Value::Series(s), Value::Series(t)) => series(s.div(&t)),
                }
            }
        }
    }
}

/// `p / r` when `r` is a single term dividing every coefficient of `p`.
fn exact_poly_div(p: &LaurentPoly, r: &LaurentPoly) -> Option<LaurentPoly> {
    let mut terms = r.terms();
    let (j, c) = terms.next()?;
    if terms.next().is_some() || c.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    for (e, x) in p.terms() {
        if !(x % c).is_zero() {
            return None;
        }
        out.push((e - j, x / c));
    }
    Some(LaurentPoly::from_terms(out))
}
