use std::collections::BTreeSet;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{
    bracket_closed_form, bracket_terms, final_product_term, multiplier_dissection, primed_indices,
};
use crate::dsl::{self, DslError, Expr};
use crate::error::{Error, Result};
use crate::lambert::g_ratio;
use crate::products::{Length, PochFactor, ProductSpec};

/// One catalogued identity `lhs = rhs`, both sides in the expression
/// language.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentitySpec {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
    pub default_order: i64,
    pub note: String,
}

impl IdentitySpec {
    pub fn new(
        id: impl Into<String>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
        order: i64,
        note: &str,
    ) -> Self {
        IdentitySpec {
            id: id.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            default_order: order,
            note: note.into(),
        }
    }

    pub fn parse(&self) -> std::result::Result<(Expr, Expr), DslError> {
        Ok((dsl::parse(&self.lhs)?, dsl::parse(&self.rhs)?))
    }
}

/// A misprinted form of a catalogued identity next to the entry that fixes
/// it. The printed form fails verification; the fixed one passes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub printed: IdentitySpec,
    pub corrected_id: String,
    pub change: String,
}

// Formatting helpers producing expression-language text.

fn arg(sign: i32, a: i64) -> String {
    let m = if sign < 0 { "-" } else { "" };
    match a {
        0 => format!("{m}1"),
        1 => format!("{m}q"),
        _ => format!("{m}q^{a}"),
    }
}

fn base(k: i64) -> String {
    if k == 1 {
        "q".into()
    } else {
        format!("q^{k}")
    }
}

/// `(±q^|a1|, ±q^|a2|, ...; q^k)_inf`, a negative entry meaning a minus sign.
fn pr(args: &[i64], k: i64) -> String {
    let list: Vec<String> = args
        .iter()
        .map(|&a| arg(if a < 0 { -1 } else { 1 }, a.abs()))
        .collect();
    format!("poch({}; {}; inf)", list.join(", "), base(k))
}

fn big_p(sign: i32, a: i64, k: i64) -> String {
    format!("P({}; {})", arg(sign, a), base(k))
}

fn mono(j: i64) -> String {
    arg(1, j)
}

fn factors_dsl(fs: &[PochFactor]) -> Vec<String> {
    // Consecutive infinite factors on the same base share one call.
    let mut out: Vec<(i64, Length, Vec<String>)> = Vec::new();
    for f in fs {
        let a = arg(f.sign, f.a);
        match out.last_mut() {
            Some((k, len, args)) if *k == f.k && *len == f.length => args.push(a),
            _ => out.push((f.k, f.length, vec![a])),
        }
    }
    out.into_iter()
        .map(|(k, len, args)| {
            let n = match len {
                Length::Infinite => "inf".to_string(),
                Length::Finite(n) => n.to_string(),
            };
            format!("poch({}; {}; {n})", args.join(", "), base(k))
        })
        .collect()
}

/// A product quotient as expression text.
pub(crate) fn spec_dsl(spec: &ProductSpec) -> String {
    let c = &spec.prefactor.c;
    let j = spec.prefactor.j;
    let mut parts = Vec::new();
    if !c.abs().is_one() {
        parts.push(c.abs().to_string());
    }
    if j != 0 {
        parts.push(mono(j));
    }
    parts.extend(factors_dsl(&spec.num));
    if parts.is_empty() {
        parts.push("1".into());
    }
    let mut s = parts.join("*");
    let den = factors_dsl(&spec.den);
    match den.len() {
        0 => {}
        1 => s = format!("{s}/{}", den[0]),
        _ => s = format!("{s}/({})", den.join("*")),
    }
    if c.is_negative() {
        s = format!("-{s}");
    }
    s
}

fn without_prefactor(mut spec: ProductSpec) -> ProductSpec {
    spec.prefactor = ProductSpec::default().prefactor;
    spec
}

/// Joins terms with `+`, folding a leading minus into `-`.
fn sum(terms: &[String]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        match (i, t.strip_prefix('-')) {
            (0, _) => out.push_str(t),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
    }
    out
}

fn signed(c: i64, body: &str) -> String {
    if c < 0 {
        format!("-{body}")
    } else {
        body.to_string()
    }
}

const R3: &str = "poch(-q^9; q^18; inf)/poch(q^18; q^18; inf)";
const R5: &str = "poch(-q^25; q^50; inf)/poch(q^50; q^50; inf)";
const A5: &str = "poch(-q^10, q^15, -q^25, q^35, -q^40, q^50; q^50; inf)";
const B5: &str = "poch(q^5, -q^20, -q^25, -q^30, q^45, q^50; q^50; inf)";
const C5: &str = "poch(q^25, q^75, q^100; q^100; inf)";

fn ell5_terms() -> [(&'static str, String); 4] {
    let t1 = "q*P0(5)^2*P(-q^35; q^50)/(P(q^10; q^50)*P(-q^45; q^50))".to_string();
    let t3 = "q^9*P0(5)^2*P(-q^45; q^50)/(P(q^20; q^50)*P(-q^35; q^50))".to_string();
    let s10 = format!("q^10*sigma(1,0,5)*mult()*{R5}");
    let s20 = format!("q^19*sigma(2,0,5)*mult()*{R5}");
    [("T1", t1), ("T3", t3), ("S10", s10), ("S20", s20)]
}

fn ell5(name: &str) -> String {
    let terms = ell5_terms();
    let (_, t) = terms.iter().find(|(n, _)| *n == name).expect("known term");
    format!("({t})")
}

const DEFAULT_ORDER: i64 = 200;

/// Every identity shipped with the crate, sorted by id.
pub fn builtin_catalog() -> Vec<IdentitySpec> {
    let mut out = Vec::new();
    let mut add = |id: String, lhs: String, rhs: String, note: &str| {
        out.push(IdentitySpec::new(id, lhs, rhs, DEFAULT_ORDER, note));
    };

    for k in 1..=12i64 {
        for a in -k..=k {
            for s in [1i32, -1] {
                add(
                    format!("JTP@({s},{a},{k})"),
                    format!("theta({}; {})", arg(s, a), base(k)),
                    factors_dsl(&[
                        PochFactor::inf(-s, k + a, 2 * k),
                        PochFactor::inf(-s, k - a, 2 * k),
                        PochFactor::inf(1, 2 * k, 2 * k),
                    ])
                    .join("*"),
                    "Jacobi triple product",
                );
            }
        }
    }

    for (id, l) in [("LEM6A", 3), ("LEM6B", 5)] {
        let parts: Vec<String> = multiplier_dissection(l)
            .expect("stored")
            .iter()
            .map(spec_dsl)
            .collect();
        add(
            id.into(),
            "mult()".into(),
            sum(&parts),
            "dissection of the multiplier by residue of the exponent",
        );
    }

    for (sx, ax, sz, az, k) in [
        (-1, 5, 1, 10, 25),
        (1, 5, -1, 10, 25),
        (-1, 5, -1, 10, 25),
        (1, 1, 1, 2, 5),
        (-1, 2, 1, 3, 7),
    ] {
        let key = format!("({sx},{ax},{sz},{az},{k})");
        let p = |s: i32, a: i64| big_p(s, a, k);
        let p2 = |s: i32, a: i64| big_p(s, a, 2 * k);
        let qq = format!("{}^2", pr(&[k], k));
        let q2 = format!("{}^2", pr(&[2 * k], 2 * k));
        let s = -sx * sz;
        add(
            format!("HICK1@{key}"),
            format!("{}*{}*{qq}", p(sx, ax), p(sz, az)),
            sum(&[
                format!("{}*{}*{q2}", p2(s, ax + az), p2(s, k + az - ax)),
                signed(
                    -sx as i64,
                    &format!(
                        "{}*{}*{}*{q2}",
                        mono(ax),
                        p2(s, ax + az + k),
                        p2(s, az - ax)
                    ),
                ),
            ]),
            "product of two P functions split by parity",
        );
        let cross = format!("{}*{}*{qq}", p(-sx, ax), p(sz, az));
        let swapped = format!("{}*{}*{qq}", p(sx, ax), p(-sz, az));
        add(
            format!("HICK2@{key}"),
            format!("{cross} - {swapped}"),
            signed(
                sx as i64,
                &format!(
                    "2*{}*{}*{}*{q2}",
                    mono(ax),
                    p2(-s, az - ax),
                    p2(-s, ax + az + k)
                ),
            ),
            "antisymmetric combination of P products",
        );
        add(
            format!("HICK3@{key}"),
            format!("{cross} + {swapped}"),
            format!("2*{}*{}*{q2}", p2(-s, ax + az), p2(-s, k + az - ax)),
            "symmetric combination of P products",
        );
    }

    for (l, a, b) in [
        (5, 1, 2),
        (5, 1, 3),
        (5, 2, 1),
        (5, 2, 4),
        (7, 1, 3),
        (7, 3, 1),
    ] {
        let ratio = spec_dsl(&g_ratio(a, l));
        add(
            format!("CHAN-SPEC@({l},{a},{b})"),
            format!(
                "q^{}*sigma({},{a},{l}) + sigma({},{},{l}) - q^{}*{ratio}*sigma({b},0,{l})",
                6 * a * l,
                b + a,
                b - a,
                -a,
                2 * a * l
            ),
            spec_dsl(&without_prefactor(final_product_term(l, b, a))),
            "Lambert sums at shifted arguments against one product",
        );
    }

    for l in [3i64, 5, 7] {
        let key = |a: i64| format!("({l},{a})");
        let (l2, k2) = (l * l, 2 * l * l);
        for a in 1..l {
            add(
                format!("G-CONST@{}", key(a)),
                format!("g({a},{l}) - g({},{l})", a + l),
                "-2".into(),
                "shift by l",
            );
            add(
                format!("GEES@{}", key(a)),
                format!("g({},{l}) + g({a},{l})", -a),
                "-2".into(),
                "reflection a to -a",
            );
            add(
                format!("G2@{}", key(a)),
                format!("g({a},{l}) + g({},{l})", l - a),
                "0".into(),
                "reflection a to l - a",
            );
            let t1 = format!(
                "{}*{}*P0({l})^2*{}^2/({}*{}*{}^2)",
                big_p(1, l * (l + 2 * a), k2),
                big_p(-1, 2 * a * l, k2),
                big_p(-1, 0, l2),
                big_p(-1, l * (l + 2 * a), k2),
                big_p(1, 2 * a * l, k2),
                big_p(-1, 0, k2),
            );
            let t2 = format!(
                "{}*{}*{}*{}^2/{}/2",
                mono(4 * a * l),
                big_p(1, l * (2 * l + 16 * a), 4 * l2),
                big_p(-1, 0, k2),
                pr(&[l2], l2),
                big_p(1, 8 * a * l, l2),
            );
            add(
                format!("G1@{}", key(a)),
                format!("2*g({a},{l}) - g({},{l}) + 1", 2 * a),
                format!("{t1} + {t2}"),
                "duplication formula for g",
            );
            // z = q^a with q replaced by q^l.
            let k = l;
            let ratio = format!(
                "{}*{}/({}*{})",
                big_p(1, 4 * a, 2 * k),
                big_p(-1, k, 2 * k),
                big_p(1, 2 * a, 2 * k),
                big_p(-1, 2 * a + k, 2 * k)
            );
            let th = |s: i32, e: i64| format!("theta({}; {})", arg(s, e), base(2 * k));
            add(
                format!("HIDDEN1@{}", key(a)),
                format!("({} + 1)*{}*{ratio}", mono(-2 * a), th(-1, k)),
                format!(
                    "{}*{} + {}*{} + {} + {}",
                    mono(-2 * a),
                    th(-1, 4 * a - k),
                    mono(2 * a),
                    th(-1, 4 * a + k),
                    th(-1, -4 * a - k),
                    th(-1, k - 4 * a)
                ),
                "theta quotient identity at z = q^a",
            );
            add(
                format!("HIDDEN2@{}", key(a)),
                format!(
                    "{}*({} + {}*{})*{ratio}",
                    mono(-2 * a),
                    th(-1, -k),
                    mono(2 * a),
                    th(-1, k)
                ),
                format!(
                    "{}*({} + {}*{}) + {} + {}",
                    mono(-2 * a),
                    th(-1, 4 * a - k),
                    mono(4 * a),
                    th(-1, 4 * a + k),
                    th(-1, 4 * a - k),
                    th(-1, 4 * a + k)
                ),
                "paired theta quotient identity at z = q^a",
            );
        }
    }

    for l in [3i64, 5] {
        for b in [1i64, 3, 5, 7] {
            add(
                format!("RELS@({l},{b})"),
                format!("S2({b},{l}) + S2({},{l})", 2 * l - b),
                "0".into(),
                "S2(b) and S2(2l - b) cancel",
            );
            add(
                format!("BODD@({l},{b})"),
                format!("S2({b},{l}) - S2({},{l})", 2 * l + b),
                format!(
                    "{} - 1",
                    factors_dsl(&[
                        PochFactor::inf(1, 2 + b, 4),
                        PochFactor::inf(1, 2 - b, 4),
                        PochFactor::inf(1, 4, 4)
                    ])
                    .join("*")
                ),
                "S2(b) against S2(2l + b)",
            );
        }
    }

    add(
        "S2-REL-3".into(),
        "S2(1,3)".into(),
        format!("-g(2,3) - q^9*mult()*{R3}*sigma(2,0,3)"),
        "S2(1) for l = 3",
    );
    add(
        "S2-REL-5-1".into(),
        "S2(1,5)".into(),
        format!("-g(1,5) + {} + {} + mult() - 1", ell5("T1"), ell5("S10")),
        "S2(1) for l = 5",
    );
    add(
        "S2-REL-5-3".into(),
        "S2(3,5)".into(),
        format!("g(2,5) + {} + {}", ell5("T3"), ell5("S20")),
        "S2(3) for l = 5",
    );

    for (l, m) in [(3i64, 2i64), (5, 1), (5, 2)] {
        let apps = primed_indices(l, m);
        let closed = spec_dsl(&bracket_closed_form(l, m).expect("stored"));
        let mut terms = vec![format!("-g({m},{l})")];
        terms.extend(apps.iter().map(|&a| spec_dsl(&final_product_term(l, m, a))));
        terms.push(format!("sigma({m},0,{l})*({closed})"));
        add(
            format!("FINAL@({l},{m})"),
            format!("S2({},{l})", 3 * l - 4 * m),
            sum(&terms),
            "assembled S2(3l - 4m)",
        );

        let key = match apps.as_slice() {
            [] => format!("({l},{m})"),
            [a] => format!("({l},{m},{a})"),
            _ => unreachable!("at most one primed index for l <= 5"),
        };
        let generic: Vec<String> = bracket_terms(l, m).iter().map(spec_dsl).collect();
        add(
            format!("BRACKETS@{key}"),
            sum(&generic),
            closed,
            "coefficient of Sigma(m, 0) in closed form",
        );

        let sg = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
        let mut terms = vec![
            signed(
                sg(m),
                &format!("{}*sigma({m},0,{l})", mono(l * m + 2 * m * (l - m))),
            ),
            format!("sigma0({},{l})", -m),
            format!("{}*sigma({},{m},{l})", mono(6 * m * l), 2 * m),
        ];
        for &a in &apps {
            let e = l * (m + a) + 2 * (a + m) * (a - m + l);
            terms.push(signed(
                sg(m + a),
                &format!(
                    "{}*(sigma({},{a},{l}) + {}*sigma({},{},{l}))",
                    mono(e),
                    m + a,
                    mono(-6 * a * l),
                    m - a,
                    -a
                ),
            ));
        }
        add(
            format!("SDECOMP@({l},{m})"),
            format!("S2({},{l})", 3 * l - 4 * m),
            sum(&terms),
            "S2(3l - 4m) as Lambert sums",
        );
    }

    add(
        "GEN3TOO".into(),
        "mult()*(rankgf(0,3) - 1 - rankgf(1,3))".into(),
        "2*S2(1,3) + S2(7,3)".into(),
        "rank difference 0 - 1 mod 3 through S2; the empty partition is left out",
    );
    add(
        "GEN3".into(),
        "mult()*(rankgf(1,5) - rankgf(2,5))".into(),
        "2*S2(3,5) - S2(1,5)".into(),
        "rank difference 1 - 2 mod 5 through S2",
    );
    add(
        "GEN4".into(),
        "mult()*(rankgf(0,5) - 1 - rankgf(2,5))".into(),
        "2*S2(1,5) + S2(3,5) - mult() + 1".into(),
        "rank difference 0 - 2 mod 5 through S2; the empty partition is left out",
    );

    add(
        "RANKDIFF-3".into(),
        format!("-3*g(2,3) - 3*q^9*mult()*{R3}*sigma(2,0,3) - mult() + 1"),
        "mult()*(rankgf(0,3) - 1 - rankgf(1,3))".into(),
        "l = 3 rank difference before dissection",
    );
    add(
        "RANKDIFF-5-12".into(),
        format!(
            "2*g(2,5) + 2*{t3} + 2*{s20} + g(1,5) - {t1} - {s10} - mult() + 1",
            t1 = ell5("T1"),
            t3 = ell5("T3"),
            s10 = ell5("S10"),
            s20 = ell5("S20")
        ),
        "mult()*(rankgf(1,5) - rankgf(2,5))".into(),
        "l = 5 rank difference 1 - 2 before dissection",
    );
    add(
        "RANKDIFF-5-02".into(),
        format!(
            "-2*g(1,5) + 2*{t1} + 2*{s10} + g(2,5) + {t3} + {s20} + mult() - 1",
            t1 = ell5("T1"),
            t3 = ell5("T3"),
            s10 = ell5("S10"),
            s20 = ell5("S20")
        ),
        "mult()*(rankgf(0,5) - 1 - rankgf(2,5))".into(),
        "l = 5 rank difference 0 - 2 before dissection",
    );

    let a3 = "poch(q^18; q^18; inf)^4*poch(-q^9; q^9; inf)^4*poch(q^3; q^6; inf)\
              *poch(q^3, -q^6, -q^9, -q^12, q^15, q^18; q^18; inf)\
              /(poch(q^12; q^12; inf)*poch(q^6, q^30, q^36; q^36; inf)^2)";
    let b3 = "q^3*poch(q^9; q^9; inf)*poch(-q^18; q^18; inf)*poch(q^9, q^27, q^36; q^36; inf)\
              /(poch(q^3, q^15; q^18; inf)*poch(q^12, q^24; q^36; inf))";
    add(
        "G1-DISPLAY-3".into(),
        "-3*g(2,3) + 1".into(),
        format!("{a3} - {b3}"),
        "constant of the l = 3 dissection",
    );

    let e1 = "poch(q^5, q^45; q^50; inf)^2*poch(q^30, q^40, q^60, q^70; q^100; inf)*poch(q^50; q^100; inf)^3\
              *poch(q^100; q^100; inf)^2/poch(q^5; q^5; inf)";
    let e2 = "poch(q^15, q^35, q^50; q^50; inf)^2/(poch(q^5; q^10; inf)*poch(q^30, q^40, q^60, q^70, q^100; q^100; inf))";
    let e3 = "poch(q^10, q^90; q^100; inf)*poch(q^25; q^25; inf)*poch(-q^50; q^50; inf)/poch(q^5, q^20; q^25; inf)";
    let e4 = "poch(-q^25, q^50; q^50; inf)/poch(q^20, q^30; q^50; inf)";
    let f1 = "poch(q^5, q^45; q^50; inf)^2*poch(q^50; q^50; inf)^3*poch(q^30, q^40, q^60, q^70; q^100; inf)\
              /(poch(q^5; q^5; inf)*poch(q^100; q^100; inf))";
    let f3 = "poch(q^30, q^70; q^100; inf)*poch(q^25; q^25; inf)*poch(-q^50; q^50; inf)/poch(q^10, q^15; q^25; inf)";
    let f4 = "poch(-q^25; q^50; inf)*poch(q^50; q^50; inf)/poch(q^10, q^40; q^50; inf)";
    let l1 = "poch(q^50; q^50; inf)^2*poch(-q^15, -q^35; q^50; inf)/(poch(q^10, q^40; q^50; inf)*poch(-q^5, -q^45; q^50; inf))";
    let l4 = "poch(q^50; q^50; inf)^2*poch(-q^5, -q^45; q^50; inf)/(poch(q^20, q^30; q^50; inf)*poch(-q^15, -q^35; q^50; inf))";
    let (a, b, c) = (A5, B5, C5);
    let checks = [
        (
            "2*g(2,5) + g(1,5) + 1".to_string(),
            format!("{e1}*{a} - q^5*{e2}*{b} - q^10*{e3}*{c}"),
        ),
        (l1.to_string(), format!("{e1}*{b} + q^5*{e4}*{c}")),
        (format!("{e3}*{a}"), format!("{e2}*{c}")),
        (format!("{e4}*{a}"), format!("q^5*{e3}*{b} + {e1}*{c}")),
        (format!("2*q^5*{l4}"), format!("{e2}*{a} - {e4}*{b}")),
        (
            "2*g(1,5) - g(2,5) + 1".to_string(),
            format!("{f1}*{a} + q^5*{e2}*{b} + q^5*{f3}*{c}"),
        ),
        (format!("2*{l1}"), format!("{f4}*{a} + {f1}*{b}")),
        (format!("{f3}*{a}"), format!("{f4}*{b} + q^5*{e2}*{c}")),
        (format!("{f3}*{b}"), format!("{f1}*{c}")),
        (format!("q^5*{l4}"), format!("{e2}*{a} - {f4}*{c}")),
    ];
    for (i, (lhs, rhs)) in checks.into_iter().enumerate() {
        add(
            format!("CHECK{i}"),
            lhs,
            rhs,
            "product identity behind the l = 5 dissection",
        );
    }
    add(
        "CHECK1-CLEARED".into(),
        pr(&[-15, 20, 30, -35], 50),
        format!(
            "{} + q^5*{}",
            pr(&[5, 10, -15, -20, -25, -25, -30, -35, 40, 45], 50),
            pr(&[-5, 10, 40, -45], 50)
        ),
        "CHECK1 with denominators cleared",
    );
    add(
        "G1-DISPLAY-5".into(),
        "2*g(2,5) + g(1,5) + 1".into(),
        format!(
            "{}*{}*{}^4*{}^2/({}*{}) - q^10*{}*{}^2*{}^2/{}",
            pr(&[5, 45], 50),
            pr(&[-20, -30], 50),
            pr(&[-25], 50),
            pr(&[50], 50),
            pr(&[-5, -45], 50),
            pr(&[20, 30], 50),
            pr(&[10, 90], 100),
            pr(&[25], 25),
            pr(&[-50], 50),
            pr(&[5, 20], 25)
        ),
        "duplication formula for g(2) at l = 5 in product form",
    );
    add(
        "YIKES".into(),
        format!(
            "{}^2*{}*{}",
            pr(&[-25], 50),
            pr(&[20, 80], 100),
            pr(&[15, 35], 50)
        ),
        format!(
            "q^5*{}*{} + {}*{}",
            pr(&[10, 90], 100),
            pr(&[10, -20, -30, 40], 50),
            pr(&[40, 60], 100),
            pr(&[5, -15, -35, 45], 50)
        ),
        "three-term product identity",
    );
    add(
        "WOW".into(),
        format!("2*q^5*{}*{}", pr(&[10, 25, 40], 50), pr(&[100], 100)),
        format!(
            "{} - {}",
            pr(
                &[10, -10, -10, 15, 15, -15, -25, 35, 35, -35, 40, -40, -40, 50],
                50
            ),
            pr(
                &[5, 5, -15, 20, -20, -20, -25, 30, -30, -30, -35, 45, 45, 50],
                50
            )
        ),
        "three-term product identity",
    );
    add(
        "GOODNESS".into(),
        format!(
            "{}*{} - q^5*{}",
            pr(&[30, 70], 100),
            pr(&[-10, -15, -35, -40], 50),
            pr(&[-5, -45], 50)
        ),
        pr(&[5, -15, -20, -25, -25, -30, -35, 45], 50),
        "three-term product identity",
    );

    out.extend(rank_difference_entries());
    out.sort_by(|x, y| x.id.cmp(&y.id));
    out
}

fn rank_difference_entries() -> Vec<IdentitySpec> {
    let m3 = "poch(-q^3; q^6; inf)/poch(q^6; q^6; inf)";
    let m5 = "poch(-q^5; q^10; inf)/poch(q^10; q^10; inf)";
    let thm3 = [
        format!(
            "-1 - 3*q^3*{m3}*sigmay(2,0,3) + poch(q^6; q^6; inf)^4*poch(-q^3; q^3; inf)^4*poch(q; q^2; inf)\
             /(poch(q^4; q^4; inf)*poch(q^2, q^10, q^12; q^12; inf)^2)"
        ),
        "poch(-q^3, q^6; q^6; inf)/poch(q^2, q^4; q^6; inf)".to_string(),
        "poch(q^3; q^3; inf)*poch(-q^6; q^6; inf)/(poch(q, q^5; q^6; inf)*poch(q^4, q^8; q^12; inf))".to_string(),
    ];
    let thm5_12 = [
        format!(
            "-1 - q^2*{m5}*sigmay(1,0,5) + poch(q, q^9; q^10; inf)^2*poch(q^6, q^8, q^12, q^14; q^20; inf)\
             *poch(q^10; q^20; inf)^3*poch(q^20; q^20; inf)^2/poch(q; q; inf)"
        ),
        "0".to_string(),
        "q*poch(q^2, q^18; q^20; inf)*poch(q^5; q^5; inf)*poch(-q^10; q^10; inf)/poch(q, q^4; q^5; inf)".to_string(),
        "poch(-q^5, q^10; q^10; inf)/poch(q^4, q^6; q^10; inf)".to_string(),
        format!(
            "2*q^3*{m5}*sigmay(2,0,5) + poch(q^3, q^7, q^10; q^10; inf)^2\
             /(poch(q; q^2; inf)*poch(q^6, q^8, q^12, q^14, q^20; q^20; inf))"
        ),
    ];
    let thm5_02 = [
        format!(
            "1 + 2*q^2*{m5}*sigmay(1,0,5) - poch(q, q^9; q^10; inf)^2*poch(q^10; q^10; inf)^3\
             *poch(q^6, q^8, q^12, q^14; q^20; inf)/(poch(q; q; inf)*poch(q^20; q^20; inf))"
        ),
        "poch(-q^5, q^10; q^10; inf)/poch(q^2, q^8; q^10; inf)".to_string(),
        "poch(q^5; q^5; inf)*poch(-q^10; q^10; inf)*poch(q^6, q^14; q^20; inf)/poch(q^2, q^3; q^5; inf)".to_string(),
        "0".to_string(),
        format!(
            "q^3*{m5}*sigmay(2,0,5) + poch(q^3, q^7, q^10; q^10; inf)^2\
             /(poch(q; q^2; inf)*poch(q^6, q^8, q^12, q^14, q^20; q^20; inf))"
        ),
    ];
    let mut out = Vec::new();
    for (prefix, s, t, l, order, rhs) in [
        ("THM3", 0, 1, 3, 60, &thm3[..]),
        ("THM5-12", 1, 2, 5, 40, &thm5_12[..]),
        ("THM5-02", 0, 2, 5, 40, &thm5_02[..]),
    ] {
        for (d, rhs) in rhs.iter().enumerate() {
            // These differences count nonempty partitions only.
            let empty = if s == 0 && d == 0 { " - 1" } else { "" };
            out.push(IdentitySpec::new(
                format!("{prefix}-D{d}"),
                format!("dissect(rankgf({s},{l}){empty} - rankgf({t},{l}), {l}, {d})"),
                rhs.clone(),
                order,
                &format!(
                    "rank difference {s} - {t} mod {l} on weights congruent to {d}, in q for q^{l}"
                ),
            ));
        }
    }
    out
}

/// The catalog entry with the given id.
pub fn lookup(id: &str) -> Result<IdentitySpec> {
    builtin_catalog()
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Reads a catalog from JSON, rejecting duplicate ids.
pub fn load_catalog(json: &str) -> Result<Vec<IdentitySpec>> {
    let specs: Vec<IdentitySpec> = serde_json::from_str(json)
        .map_err(|e| Error::InvalidArgument(format!("bad catalog JSON: {e}")))?;
    let mut seen = BTreeSet::new();
    for s in &specs {
        if !seen.insert(s.id.as_str()) {
            return Err(Error::InvalidArgument(format!(
                "duplicate identity id `{}`",
                s.id
            )));
        }
    }
    Ok(specs)
}

/// Misprints found by verification, each paired with its fix.
pub fn errata() -> Vec<Erratum> {
    let entry = |id: &str| lookup(id).expect("catalogued");
    let mut out = Vec::new();
    let mut push = |id: &str, printed_lhs: String, printed_rhs: String, change: &str| {
        let fixed = entry(id);
        out.push(Erratum {
            printed: IdentitySpec {
                id: format!("{id}-PRINTED"),
                lhs: printed_lhs,
                rhs: printed_rhs,
                ..fixed
            },
            corrected_id: id.to_string(),
            change: change.into(),
        });
    };
    let f = entry("RANKDIFF-3");
    push(
        "RANKDIFF-3",
        f.lhs.replacen("3*q^9*", "3*q^6*", 1),
        f.rhs,
        "coefficient y^2 of the Sigma(2,0) term should be y^3",
    );
    let f = entry("RANKDIFF-5-12");
    push(
        "RANKDIFF-5-12",
        f.lhs
            .replace("q*P0(5)^2*P(-q^35; q^50)", "q*P0(5)^2*P(-q^10; q^50)"),
        f.rhs,
        "P(-y^2, y^10) in the first product term should be P(-y^7, y^10)",
    );
    let f = entry("RANKDIFF-5-02");
    push(
        "RANKDIFF-5-02",
        f.lhs
            .replace(&format!("mult()*{R5}"), &format!("{R5}/poch(-q; q^2; inf)")),
        f.rhs,
        "the factor multiplying the Sigma terms is the full multiplier, (q^2;q^2) was dropped",
    );
    let f = entry("GOODNESS");
    push(
        "GOODNESS",
        f.lhs,
        f.rhs.replace("-q^20, ", ""),
        "the right side is missing the factor (-q^20; q^50)",
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_parse() {
        let cat = builtin_catalog();
        let ids: BTreeSet<_> = cat.iter().map(|s| s.id.clone()).collect();
        assert_eq!(ids.len(), cat.len());
        for s in &cat {
            s.parse().unwrap_or_else(|e| panic!("{}: {e}", s.id));
        }
        assert!(cat.windows(2).all(|w| w[0].id < w[1].id));
    }

    #[test]
    fn json_roundtrip() {
        let cat = builtin_catalog();
        let json = serde_json::to_string(&cat).unwrap();
        assert_eq!(load_catalog(&json).unwrap(), cat);
        let dup = serde_json::to_string(&[&cat[0], &cat[0]]).unwrap();
        assert!(load_catalog(&dup).is_err());
    }

    #[test]
    fn spec_text() {
        let spec = ProductSpec::new(
            vec![PochFactor::inf(1, 2, 2), PochFactor::inf(-1, 9, 18)],
            vec![PochFactor::inf(-1, 1, 2)],
        )
        .with_prefactor(-3, 9);
        assert_eq!(
            spec_dsl(&spec),
            "-3*q^9*poch(q^2; q^2; inf)*poch(-q^9; q^18; inf)/poch(-q; q^2; inf)"
        );
        assert_eq!(sum(&["a".into(), "-b".into(), "c".into()]), "a - b + c");
    }
}
