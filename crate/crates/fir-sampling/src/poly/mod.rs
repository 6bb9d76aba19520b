//! Laurent polynomials and polynomial matrices over exact or float
//! coefficients.
//!
//! The coefficient domain is a type parameter: `LaurentPoly<Rational>` is the
//! exact carrier used for everything structural (matrix construction, minors,
//! gcds, Smith invariant polynomials), `LaurentPoly<Complex64>` is the float
//! carrier used for spectral scans. Operations that only make sense exactly
//! (minors, gcd, invariant polynomials) are only provided on the exact
//! instantiation.

mod laurent;
mod matrix;

pub use laurent::{harmonic_split, Coeff, LaurentPoly};
pub use matrix::{binomial, PolyMatrix};

use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::One;

/// Monic gcd of a family of exact Laurent polynomials.
///
/// The common power of `z` is factored out first and re-attached to the
/// result, so Laurent inputs are legal; the gcd of the remaining algebraic
/// polynomials is normalized to be monic. Zero inputs are skipped; an
/// all-zero family is an error.
pub fn poly_gcd(ps: &[LaurentPoly<Rational>]) -> Result<LaurentPoly<Rational>> {
    let nonzero: Vec<&LaurentPoly<Rational>> = ps.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::ZeroGcdInput);
    }
    let v_min = nonzero.iter().map(|p| p.valuation().unwrap()).min().unwrap();
    let mut g = LaurentPoly::zero();
    for p in nonzero {
        let shifted = p.mul_monomial(-v_min, &Rational::one());
        g = gcd_algebraic(&g, &shifted);
        if g.degree() == Some(0) {
            break; // gcd is already a unit of Q[z]
        }
    }
    Ok(g.mul_monomial(v_min, &Rational::one()))
}

/// Euclidean gcd of algebraic polynomials over Q, monic-normalized.
fn gcd_algebraic(a: &LaurentPoly<Rational>, b: &LaurentPoly<Rational>) -> LaurentPoly<Rational> {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, rem) = a.div_rem(&b);
        a = b;
        b = rem;
    }
    a.into_monic()
}
