//! Exact arithmetic: rationals, the cyclotomic field Q(ζ_{4n}) and
//! polynomials over it.

mod cyclo;
mod poly;
pub mod rational;

use std::sync::Arc;

pub use cyclo::{cyclotomic_polynomial, CycloField, CycloNumber};
pub use poly::Poly;
pub use rational::{format_rational, parse_rational, Rational};

use crate::error::Result;

/// ζ_{order}^exponent; the order must be `4n` with `n` odd and `n >= 3`.
pub fn cyclo_make(order: u32, exponent: i64) -> Result<CycloNumber> {
    let field = CycloField::new(order)?;
    Ok(CycloNumber::zeta_pow(&field, exponent))
}

/// Exact trigonometric values at rational multiples of π for the field of
/// the dihedral group I_2(n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trig {
    /// cos(2πk/n)
    pub cos_full: CycloNumber,
    /// sin²(πk/n)
    pub sin_sq_half: CycloNumber,
    /// cos²(πk/n)
    pub cos_sq_half: CycloNumber,
}

/// cos(2πk/n) = (λ^k + λ^{-k})/2 together with the half-angle squares
/// sin²(πk/n) = (1 - cos(2πk/n))/2 and cos²(πk/n) = (1 + cos(2πk/n))/2.
pub fn real_cos_sin(field: &Arc<CycloField>, k: i64) -> Trig {
    let half = rational::rat(1, 2);
    let cos_full =
        (CycloNumber::lambda_pow(field, k) + CycloNumber::lambda_pow(field, -k)).scale(&half);
    let one = CycloNumber::one(field);
    Trig {
        sin_sq_half: (&one - &cos_full).scale(&half),
        cos_sq_half: (&one + &cos_full).scale(&half),
        cos_full,
    }
}
