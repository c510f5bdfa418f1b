use m2rank::dsl::{self, Expr, ExprKind};
use m2rank::lambert::{sigma_ab_y, LambertSum};
use m2rank::partitions::{m2_rank, rank_distribution, rank_via_diagram, to_2modular, Partition};
use m2rank::products::big_p;
use m2rank::QSeries;
use num_bigint::BigInt;
use proptest::prelude::*;

fn series(max_len: usize) -> impl Strategy<Value = QSeries> {
    (-3i64..4, prop::collection::vec(-20i64..20, 1..max_len))
        .prop_map(|(min, c)| QSeries::from_i64s(min, &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(a in series(64), b in series(64), c in series(64)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        // Cancellation in b + c can only widen the factored window.
        let (lhs, rhs) = (a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(lhs.prec() >= rhs.prec());
        prop_assert_eq!(lhs.equal_to_order(&rhs, rhs.prec() - 1).unwrap(), None);
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&QSeries::one(a.prec().max(1) + 10)), a.clone());
    }

    #[test]
    fn unit_inverse(mut c in prop::collection::vec(-9i64..9, 1..40)) {
        c[0] = 1;
        let a = QSeries::from_i64s(0, &c);
        let inv = a.invert_unit().unwrap();
        prop_assert_eq!(a.mul(&inv), QSeries::one(a.prec()));
    }

    #[test]
    fn dissection_roundtrip(c in prop::collection::vec(-50i64..50, 1..120), l in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let f = QSeries::from_i64s(0, &c);
        let mut acc = QSeries::zero(f.prec());
        for d in 0..l {
            let part = f.dissect(l, d).unwrap();
            acc = acc.add(&part.substitute_power(l).shift(d as i64).truncate(f.prec()));
        }
        // Each residue class is only known up to its own window edge.
        let edge = f.prec() - l as i64;
        prop_assert_eq!(acc.equal_to_order(&f, edge).unwrap(), None);
    }

    #[test]
    fn lambert_window_independence(a in -6i64..7, b in -6i64..7, l in prop::sample::select(vec![3i64, 5, 7]), prec in 20i64..160) {
        prop_assume!(a.rem_euclid(l) != 0);
        let sum = sigma_ab_y(a, b, l).unwrap();
        let base = sum.expand(prec).unwrap();
        for extra in [1, 3, 5] {
            prop_assert_eq!(&sum.expand_with_margin(prec, 3 + extra).unwrap(), &base);
        }
    }

    #[test]
    fn lambert_matches_direct_sum(a2 in 1i64..4, a1 in -6i64..6, d1 in 1i64..5, d0 in 1i64..4, alt: bool) {
        let sum = LambertSum { a2, a1, a0: 0, d1, d0, alternating: alt, omit_n0: false };
        prop_assume!(d0 % d1 != 0);
        let prec = 40;
        let got = sum.expand(prec).unwrap();
        let mut want = QSeries::zero(prec);
        for n in -40i64..=40 {
            let e = d1 * n + d0;
            let sign = if alt && n.rem_euclid(2) == 1 { -1 } else { 1 };
            let num = a2 * n * n + a1 * n;
            // 1/(1 - q^e) = -q^-e / (1 - q^-e) for negative e.
            let (mut x, step, s) = if e > 0 { (num, e, sign) } else { (num - e, -e, -sign) };
            while x < prec {
                want = want.add(&QSeries::monomial(BigInt::from(s), x, prec));
                x += step;
            }
        }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn p_function_symmetries(sign in prop::sample::select(vec![1i32, -1]), k in 2i64..9, a in 1i64..8) {
        prop_assume!(a % k != 0 || sign == -1);
        let n = 120;
        let p = big_p(sign, a, k, n).unwrap();
        // P(q/z, q) = P(z, q) and P(qz, q) = -z^-1 P(z, q) at z = sign q^a.
        prop_assert_eq!(big_p(sign, k - a, k, n).unwrap(), p.clone());
        let shifted = big_p(sign, a + k, k, n).unwrap();
        let want = p.shift(-a).scale(&BigInt::from(-sign));
        prop_assert_eq!(shifted.equal_to_order(&want, n - 1 - a).unwrap(), None);
    }
}

#[test]
fn rank_symmetry() {
    let dist = rank_distribution(35);
    for n in 0..=35 {
        for m in 1..=36 {
            assert_eq!(dist.n2(m, n), dist.n2(-m, n), "m = {m}, n = {n}");
        }
    }
}

#[test]
fn diagram_rank_agrees_with_formula() {
    for n in 0..=30 {
        m2rank::partitions::for_each(n, |parts| {
            let p = Partition::new(parts.to_vec());
            let d = to_2modular(&p).unwrap();
            assert_eq!(d.rows.iter().map(|r| r.total()).sum::<u32>(), n);
            assert_eq!(rank_via_diagram(&d), m2_rank(&p), "{p}");
        });
    }
}

fn leaf() -> impl Strategy<Value = ExprKind> {
    let sign = prop::sample::select(vec![1i32, -1]);
    prop_oneof![
        (0i64..5).prop_map(|c| ExprKind::Const(c.into())),
        (0i64..6).prop_map(|j| ExprKind::Mono { c: 1.into(), j }),
        (sign.clone(), 1i64..6, 1i64..5).prop_map(|(sign, a, k)| ExprKind::PochInf { sign, a, k }),
        (sign.clone(), 0i64..4, 1i64..4, 0u64..4).prop_map(|(sign, a, k, n)| ExprKind::PochFin {
            sign,
            a,
            k,
            n
        }),
        (sign.clone(), 2i64..6).prop_map(|(sign, k)| ExprKind::BigP { sign, a: 1, k }),
        (sign, 1i64..5).prop_map(|(sign, k)| ExprKind::Theta { sign, a: k - 1, k }),
    ]
}

/// Expressions built from products: every one evaluates to a power series.
fn product_expr() -> impl Strategy<Value = Expr> {
    leaf()
        .prop_map(Expr::bare)
        .prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::bare(ExprKind::Add(Box::new(a), Box::new(b)))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::bare(ExprKind::Sub(Box::new(a), Box::new(b)))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::bare(ExprKind::Mul(Box::new(a), Box::new(b)))),
                (inner.clone(), 0u32..3)
                    .prop_map(|(a, n)| Expr::bare(ExprKind::Pow(Box::new(a), n))),
                inner.prop_map(|a| Expr::bare(ExprKind::Neg(Box::new(a)))),
            ]
        })
}

fn any_expr() -> impl Strategy<Value = Expr> {
    let small = -9i64..10;
    let extra = prop_oneof![
        (small.clone(), small.clone(), 2i64..8).prop_map(|(a, b, l)| ExprKind::SigmaAB { a, b, l }),
        (small.clone(), small.clone(), 2i64..8).prop_map(|(a, b, l)| ExprKind::SigmaY { a, b, l }),
        (small.clone(), 2i64..8).prop_map(|(b, l)| ExprKind::Sigma0B { b, l }),
        (small.clone(), 2i64..8).prop_map(|(b, l)| ExprKind::S2 { b, l }),
        (small.clone(), 2i64..8).prop_map(|(a, l)| ExprKind::G { a, l }),
        (small.clone(), 2i64..8).prop_map(|(s, l)| ExprKind::RankGF { s, l }),
        (1i64..8).prop_map(ExprKind::PZero),
        Just(ExprKind::Multiplier),
        (-9i64..9).prop_map(|j| ExprKind::Mono { c: 1.into(), j }),
        (prop::sample::select(vec![1i32, -1]), small, 1i64..9)
            .prop_map(|(sign, a, k)| ExprKind::BigP { sign, a, k }),
    ];
    prop_oneof![leaf(), extra]
        .prop_map(Expr::bare)
        .prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::bare(ExprKind::Add(Box::new(a), Box::new(b)))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::bare(ExprKind::Sub(Box::new(a), Box::new(b)))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::bare(ExprKind::Mul(Box::new(a), Box::new(b)))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::bare(ExprKind::Div(Box::new(a), Box::new(b)))),
                (inner.clone(), 0u32..4)
                    .prop_map(|(a, n)| Expr::bare(ExprKind::Pow(Box::new(a), n))),
                inner
                    .clone()
                    .prop_map(|a| Expr::bare(ExprKind::Neg(Box::new(a)))),
                (inner.clone(), 1u32..6, 0u32..6).prop_map(|(a, l, d)| Expr::bare(
                    ExprKind::Dissect {
                        child: Box::new(a),
                        l,
                        d: d % l
                    }
                )),
                (inner, 1u32..4).prop_map(|(a, k)| Expr::bare(ExprKind::SubPow {
                    child: Box::new(a),
                    k
                })),
            ]
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_parse_roundtrip(e in any_expr()) {
        let text = e.to_string();
        let back = dsl::parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(&back, &e, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn eval_commutes_with_dissect(e in product_expr(), l in 2u32..6, d in 0u32..6, order in 1i64..25) {
        let d = d % l;
        let whole = dsl::eval(&e, l as i64 * order + d as i64).unwrap();
        let direct = whole.dissect(l, d).unwrap().truncate(order + 1);
        let node = Expr::bare(ExprKind::Dissect { child: Box::new(e), l, d });
        prop_assert_eq!(dsl::eval(&node, order).unwrap(), direct);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn fuzz_never_panics(bytes in prop::collection::vec(any::<u8>(), 0..40)) {
        let src = String::from_utf8_lossy(&bytes);
        if let Err(e) = dsl::parse(&src) {
            let syntax = matches!(e, dsl::DslError::Lex { .. } | dsl::DslError::Parse { .. });
            prop_assert!(syntax);
            prop_assert!(e.offset() <= src.len());
        }
    }

    #[test]
    fn fuzz_token_soup(parts in prop::collection::vec(prop::sample::select(vec![
        "q", "^", "-", "+", "*", "/", "(", ")", ",", ";", "inf", "1", "3", "poch", "P", "sigma", "dissect", "mult", "S2", " ",
    ]), 0..25)) {
        let src: String = parts.concat();
        if let Err(e) = dsl::parse(&src) {
            prop_assert!(e.offset() <= src.len());
        }
    }
}
