//! Sparse Laurent polynomials.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Coefficient domain for Laurent polynomials: exact rationals or complex
/// floats.
pub trait Coeff:
    Clone
    + PartialEq
    + std::fmt::Debug
    + std::fmt::Display
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
{
    fn as_complex(&self) -> Complex64;
}

impl Coeff for Rational {
    fn as_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().expect("rational out of f64 range"), 0.0)
    }
}

impl Coeff for Complex64 {
    fn as_complex(&self) -> Complex64 {
        *self
    }
}

/// Sparse Laurent polynomial `Σ c_n z^n` with integer exponents of either
/// sign. No zero coefficients are stored; the empty map is the zero
/// polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly<C: Coeff> {
    coeffs: BTreeMap<i64, C>,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    pub fn monomial(exp: i64, c: C) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest exponent, `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Largest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, exp: i64) -> C {
        self.coeffs.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.values().next_back()
    }

    /// Multiplies by `c · z^exp`.
    pub fn mul_monomial(&self, exp: i64, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, v)| (e + exp, v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_monomial(0, c)
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(&e, c)| (e, f(c))))
    }

    pub fn to_complex(&self) -> LaurentPoly<Complex64> {
        self.map_coeffs(Coeff::as_complex)
    }

    /// Evaluates numerically at a complex point. Negative exponents require
    /// `z != 0`.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&e, c) in &self.coeffs {
            acc += c.as_complex() * z.powi(e as i32);
        }
        acc
    }

    /// Largest absolute coefficient value, as f64.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs
            .values()
            .map(|c| c.as_complex().norm())
            .fold(0.0, f64::max)
    }
}

impl<C: Coeff> std::ops::Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<C: Coeff> std::ops::Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl<C: Coeff> std::ops::Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coeff> std::ops::Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl LaurentPoly<Rational> {
    /// Evaluates exactly at a rational point (nonzero when negative exponents
    /// are present).
    pub fn eval_rational(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&e, c) in &self.coeffs {
            let p = if e >= 0 {
                pow_rat(t, e as u32)
            } else {
                pow_rat(t, (-e) as u32).recip()
            };
            acc += c * p;
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn into_monic(self) -> Self {
        match self.leading_coeff() {
            None => self,
            Some(lead) => {
                let inv = lead.clone().recip();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division of algebraic polynomials: `self = q·div + rem` with
    /// `deg rem < deg div`. Panics if `div` is zero or either side has
    /// negative exponents.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        assert!(self.valuation().unwrap_or(0) >= 0 && div.valuation().unwrap_or(0) >= 0);
        let ddeg = div.degree().unwrap();
        let dlead = div.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while !rem.is_zero() && rem.degree().unwrap() >= ddeg {
            let e = rem.degree().unwrap() - ddeg;
            let c = rem.leading_coeff().unwrap() / &dlead;
            let term = Self::monomial(e, c);
            rem = &rem - &(&term * div);
            quot = &quot + &term;
        }
        (quot, rem)
    }

    /// Exact division in the Laurent ring: returns `self / div` when the
    /// division is exact, `None` otherwise.
    pub fn exact_div(&self, div: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if div.is_zero() {
            return None;
        }
        let va = self.valuation().unwrap();
        let vb = div.valuation().unwrap();
        let a = self.mul_monomial(-va, &Rational::one());
        let b = div.mul_monomial(-vb, &Rational::one());
        let (q, r) = a.div_rem(&b);
        if r.is_zero() {
            Some(q.mul_monomial(va - vb, &Rational::one()))
        } else {
            None
        }
    }
}

fn pow_rat(t: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    let mut base = t.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Splits an algebraic polynomial into its `n`-harmonic components: component
/// `j` collects the monomials `c · z^e` with `e ≡ j (mod n)`. The components
/// sum to the input and satisfy `h_j(e^{2πi/n} z) = e^{2πij/n} h_j(z)`.
pub fn harmonic_split<C: Coeff>(p: &LaurentPoly<C>, n: usize) -> Result<Vec<LaurentPoly<C>>> {
    assert!(n >= 1, "harmonic order must be positive");
    if let Some(v) = p.valuation() {
        if v < 0 {
            return Err(Error::NegativeExponent { exponent: v });
        }
    }
    let mut parts = vec![LaurentPoly::zero(); n];
    for (e, c) in p.terms() {
        parts[(e as usize) % n].add_term(e, c.clone());
    }
    Ok(parts)
}

impl<C: Coeff> std::fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{e}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> std::fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        <Self as std::fmt::Display>::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn poly(terms: &[(i64, (i64, i64))]) -> LaurentPoly<Rational> {
        LaurentPoly::from_terms(terms.iter().map(|&(e, (n, d))| (e, rat(n, d))))
    }

    #[test]
    fn difference_of_squares() {
        let a = poly(&[(1, (1, 1)), (0, (1, 1))]);
        let b = poly(&[(1, (1, 1)), (0, (-1, 1))]);
        assert_eq!(&a * &b, poly(&[(2, (1, 1)), (0, (-1, 1))]));
    }

    #[test]
    fn monomial_shift() {
        // (1/2 z + 1/2 z^2) * z^-1 = 1/2 + 1/2 z
        let a = poly(&[(1, (1, 2)), (2, (1, 2))]);
        let shifted = a.mul_monomial(-1, &rat(1, 1));
        assert_eq!(shifted, poly(&[(0, (1, 2)), (1, (1, 2))]));
    }

    #[test]
    fn zero_is_absorbing() {
        let p = poly(&[(3, (7, 2)), (-1, (1, 3))]);
        assert!((&LaurentPoly::zero() * &p).is_zero());
    }

    #[test]
    fn harmonic_split_quartic_pair() {
        // 1/2 z^4 + 1/2 z^5 with n = 4 -> (1/2 z^4, 1/2 z^5, 0, 0)
        let p = poly(&[(4, (1, 2)), (5, (1, 2))]);
        let parts = harmonic_split(&p, 4).unwrap();
        assert_eq!(parts[0], poly(&[(4, (1, 2))]));
        assert_eq!(parts[1], poly(&[(5, (1, 2))]));
        assert!(parts[2].is_zero() && parts[3].is_zero());
    }

    #[test]
    fn harmonic_split_single_monomial() {
        let p = poly(&[(7, (1, 1))]);
        let parts = harmonic_split(&p, 4).unwrap();
        for (j, part) in parts.iter().enumerate() {
            if j == 7 % 4 {
                assert_eq!(*part, p);
            } else {
                assert!(part.is_zero());
            }
        }
    }

    #[test]
    fn harmonic_split_parity() {
        let p = poly(&[(0, (1, 1)), (1, (1, 1)), (2, (1, 1)), (3, (1, 1))]);
        let parts = harmonic_split(&p, 2).unwrap();
        assert_eq!(parts[0], poly(&[(0, (1, 1)), (2, (1, 1))]));
        assert_eq!(parts[1], poly(&[(1, (1, 1)), (3, (1, 1))]));
    }

    #[test]
    fn harmonic_split_rejects_laurent() {
        let p = poly(&[(-1, (1, 1))]);
        assert!(harmonic_split(&p, 3).is_err());
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = poly(&[(3, (2, 1)), (1, (1, 2)), (0, (5, 1))]);
        let b = poly(&[(1, (1, 3)), (0, (1, 1))]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(-1) < b.degree().unwrap());
    }

    #[test]
    fn exact_div_laurent() {
        let a = poly(&[(2, (1, 1)), (0, (-1, 1))]); // z^2 - 1
        let b = poly(&[(-1, (1, 1)), (-2, (-1, 1))]); // z^-2 (z - 1)
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, poly(&[(3, (1, 1)), (2, (1, 1))])); // z^2 (z + 1)
        assert!(b.exact_div(&poly(&[(0, (1, 1)), (1, (3, 1))])).is_none());
    }

    #[test]
    fn eval_rational_with_negative_exponents() {
        let p = poly(&[(-2, (1, 1)), (1, (2, 1))]);
        let t = rat(1, 2);
        assert_eq!(p.eval_rational(&t), rat(5, 1)); // 4 + 1
    }

    mod properties {
        use super::*;
        use num_complex::Complex64;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = LaurentPoly<Rational>> {
            prop::collection::vec(((0i64..24), (-9i64..=9), (1i64..=9)), 0..10).prop_map(|terms| {
                LaurentPoly::from_terms(terms.into_iter().map(|(e, n, d)| (e, rat(n, d))))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn harmonic_components_sum_to_input(p in arb_poly(), n in 1usize..6) {
                let parts = harmonic_split(&p, n).unwrap();
                let mut sum = LaurentPoly::zero();
                for part in &parts {
                    sum = &sum + part;
                }
                prop_assert_eq!(sum, p);
            }

            #[test]
            fn harmonic_rotation_identity(p in arb_poly(), n in 1usize..6, seed in 0u64..1000) {
                // h_j(e^{2πi/n} z0) = e^{2πij/n} h_j(z0)
                let angle = 2.0 * std::f64::consts::PI / n as f64;
                let rot = Complex64::from_polar(1.0, angle);
                let z0 = Complex64::from_polar(0.6 + (seed as f64) * 1e-3, seed as f64);
                let parts = harmonic_split(&p, n).unwrap();
                for (j, part) in parts.iter().enumerate() {
                    let lhs = part.eval_complex(rot * z0);
                    let rhs = Complex64::from_polar(1.0, angle * j as f64) * part.eval_complex(z0);
                    prop_assert!((lhs - rhs).norm() <= 1e-8 * (1.0 + rhs.norm()));
                }
            }

            #[test]
            fn mul_distributes_over_add(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                let lhs = &a * &(&b + &c);
                let rhs = &(&a * &b) + &(&a * &c);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
