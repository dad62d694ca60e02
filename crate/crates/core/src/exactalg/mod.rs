//! Exact arithmetic: `Q`, `F_p`, `F_{p^d}`, univariate polynomials over them,
//! factorisation and residue fields of places of the projective line.

mod factor;
mod field;
mod place;
mod poly;

pub use factor::{factor, is_irreducible, poly_key, FactorEntry, Factorization};
pub use field::{is_prime, Elem, Field, FiniteFieldExt, ENUMERATION_LIMIT};
pub use place::{residue_field_at, Place};
pub use poly::{poly_gcd, Poly};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Convenience constructor for a rational element `n/d`.
pub fn rat(n: i64, d: i64) -> Elem {
    Elem::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
}
