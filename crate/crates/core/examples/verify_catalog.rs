//! Runs the identity catalog, optionally filtered by an id prefix:
//! `cargo run --release --example verify_catalog -- THM5`.

use m2rank::identities::{builtin_catalog, verify_all};

fn main() {
    let prefix = std::env::args().nth(1).unwrap_or_default();
    let specs: Vec<_> = builtin_catalog()
        .into_iter()
        .filter(|s| s.id.starts_with(&prefix))
        .collect();
    let suite = verify_all(Some(&specs), 200, 4);
    for r in &suite.reports {
        let status = if r.pass { "ok" } else { "FAIL" };
        println!(
            "{:<24} order {:>3}  {status}  {} ms",
            r.id, r.order, r.elapsed_ms
        );
    }
    println!("{}/{} pass", suite.passed, suite.total);
    if let Some(s) = specs.iter().find(|s| s.id == "THM3-D1") {
        println!("\n{}:\n  {}\n= {}", s.id, s.lhs, s.rhs);
    }
}
