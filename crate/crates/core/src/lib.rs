//! Exact q-series toolkit for M2-rank differences of partitions without
//! repeated odd parts.
//!
//! The crate is layered:
//!
//! * [`series`]: truncated Laurent series with exact integer coefficients,
//!   plus a bivariate variant.
//! * [`products`]: q-Pochhammer products, `P(z, q)` at monomial arguments,
//!   theta series.
//! * [`lambert`]: generalized Lambert series and the `g` function.
//! * [`partitions`]: brute-force enumeration, 2-modular diagrams, rank tables.
//! * [`identities`]: rank generating functions, the identity catalog and the
//!   verification engine.
//! * [`dsl`]: a small expression language for all of the above.
//!
//! The runnable programs under `examples/` walk through each layer.
//!
//! ```
//! use m2rank::dsl;
//! use m2rank::identities::analytic_rank_diff;
//!
//! // Ranks 1 and 2 mod 5 are equinumerous on weights 5n + 1.
//! assert!(analytic_rank_diff(1, 2, 5, 1, 40)?.is_zero());
//!
//! let product = dsl::eval_str("poch(-q^3, q^6; q^6; inf) / poch(q^2, q^4; q^6; inf)", 60).unwrap();
//! assert_eq!(product, analytic_rank_diff(0, 1, 3, 1, 61)?);
//! # Ok::<(), m2rank::Error>(())
//! ```

pub mod dsl;
pub mod error;
pub mod identities;
pub mod lambert;
pub mod partitions;
pub mod products;
pub mod series;

pub use error::{Error, Result};
pub use series::{BiSeries, LaurentPoly, QSeries};
