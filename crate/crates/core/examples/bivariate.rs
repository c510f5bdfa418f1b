//! The two-variable rank generating function.

use m2rank::identities::rank_bivariate_gf;

fn main() {
    let f = rank_bivariate_gf(9);
    for n in 0..9 {
        println!("q^{n}: {}", f.coeff(n).unwrap());
    }
    for m in [-2, 0, 3] {
        println!("z^{m}: {}", f.coeff_z(m));
    }
}
