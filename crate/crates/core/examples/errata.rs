//! Misprinted identities next to their fixes, with the first coefficient
//! where the printed form goes wrong.

use m2rank::identities::{errata, verify, verify_spec};

fn main() {
    for e in errata() {
        let printed = verify_spec(&e.printed, e.printed.default_order);
        let fixed = verify(&e.corrected_id, 200).unwrap();
        let m = printed.first_mismatch.expect("printed form fails");
        println!("{}: {}", e.corrected_id, e.change);
        println!("  printed: q^{} has {} vs {}", m.exponent, m.left, m.right);
        println!(
            "  fixed:   {}",
            if fixed.pass {
                "passes through q^200"
            } else {
                "FAILS"
            }
        );
    }
}
