//! The expression language: parse, print, evaluate, report errors.

use m2rank::dsl;

fn main() {
    let sources = [
        "poch(q; q; inf)",
        "poch(-q^3, q^6; q^6; inf) / poch(q^2, q^4; q^6; inf)",
        "dissect(rankgf(0, 3) - rankgf(1, 3), 3, 1)",
        "q^-2 * P(-1; q^2) / 2",
        "2*g(1, 5) - g(2, 5) + 1",
    ];
    for src in sources {
        let expr = dsl::parse(src).expect("valid");
        println!("{expr}\n  = {}", dsl::eval(&expr, 12).expect("evaluates"));
    }
    for bad in ["poch(q; q)", "sigma(1, 2)", "1 / (q - q)", "2 @ 3"] {
        let err = dsl::eval_str(bad, 10).unwrap_err();
        println!("\n{}", dsl::caret_diagnostic(bad, &err));
    }
}
