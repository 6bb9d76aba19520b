//! Dense matrices of Laurent polynomials.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::One;

use super::laurent::{Coeff, LaurentPoly};
use crate::error::{Error, Result};
use crate::rational::{RatMatrix, Rational};

/// Row-major matrix whose entries are Laurent polynomials over one
/// coefficient domain.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix<C: Coeff> {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly<C>>,
}

impl<C: Coeff> PolyMatrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> LaurentPoly<C>,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            }
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = LaurentPoly::zero();
            for k in 0..self.cols {
                acc = &acc + &(&self[(i, k)] * &other[(k, j)]);
            }
            acc
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    /// Multiplies column `col` by the monomial `c · z^exp`.
    pub fn scale_column(&mut self, col: usize, exp: i64, c: &C) {
        for i in 0..self.rows {
            let idx = i * self.cols + col;
            self.entries[idx] = self.entries[idx].mul_monomial(exp, c);
        }
    }

    /// Numeric evaluation at a complex point.
    pub fn evaluate(&self, z: Complex64) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].eval_complex(z))
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|p| p.max_coeff_norm())
            .fold(0.0, f64::max)
    }
}

impl PolyMatrix<Rational> {
    /// Left-multiplies by a constant rational matrix.
    pub fn left_mul_rat(&self, r: &RatMatrix) -> Self {
        assert_eq!(r.ncols(), self.rows, "dimension mismatch");
        Self::from_fn(r.nrows(), self.cols, |i, j| {
            let mut acc = LaurentPoly::zero();
            for k in 0..self.rows {
                let c = &r[(i, k)];
                if !num_traits::Zero::is_zero(c) {
                    acc = &acc + &self[(k, j)].scale(c);
                }
            }
            acc
        })
    }

    pub fn to_complex(&self) -> PolyMatrix<Complex64> {
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_complex())
    }

    /// All `k×k` minors, enumerated over lexicographically ordered row and
    /// column subsets (row subsets outer, column subsets inner).
    ///
    /// Determinants use cofactor expansion for `k ≤ 3` and fraction-free
    /// Bareiss elimination above that; both are exact.
    pub fn minors(&self, k: usize) -> Result<Vec<LaurentPoly<Rational>>> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(Error::WrongShape(format!(
                "minor order {k} out of range for {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let row_sets = subsets(self.rows, k);
        let col_sets = subsets(self.cols, k);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                let sub: Vec<Vec<LaurentPoly<Rational>>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| self[(i, j)].clone()).collect())
                    .collect();
                out.push(det(sub));
            }
        }
        Ok(out)
    }

    /// Exact rank: the largest `k` with a nonzero `k`-minor.
    pub fn rank_exact(&self) -> usize {
        let max_k = self.rows.min(self.cols);
        for k in (1..=max_k).rev() {
            if self
                .minors(k)
                .expect("order in range")
                .iter()
                .any(|m| !m.is_zero())
            {
                return k;
            }
        }
        0
    }

    /// Smith invariant polynomials `i_1, …, i_ρ` via minor gcds:
    /// `i_j = d_j / d_{j−1}` where `d_j` is the monic gcd of all `j`-minors
    /// (times the common power of `z`). The zero matrix yields an empty list.
    pub fn invariant_polynomials(&self) -> Vec<LaurentPoly<Rational>> {
        let max_k = self.rows.min(self.cols);
        let mut gcds = Vec::new();
        for k in 1..=max_k {
            let minors = self.minors(k).expect("order in range");
            match super::poly_gcd(&minors) {
                Ok(g) => gcds.push(g),
                Err(_) => break, // all k-minors vanish: rank is k − 1
            }
        }
        let mut invariants = Vec::with_capacity(gcds.len());
        let mut prev = LaurentPoly::one();
        for d in gcds {
            let i = d.exact_div(&prev).expect("minor gcds form a divisor chain");
            invariants.push(i);
            prev = d;
        }
        invariants
    }
}

/// Exact determinant of a square matrix of Laurent polynomials.
fn det(mut m: Vec<Vec<LaurentPoly<Rational>>>) -> LaurentPoly<Rational> {
    let n = m.len();
    match n {
        0 => LaurentPoly::one(),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        3 => {
            // Cyclic expansion: the signs are built into the index rotation.
            let mut acc = LaurentPoly::zero();
            for j in 0..3 {
                let minor = &(&m[1][(j + 1) % 3] * &m[2][(j + 2) % 3])
                    - &(&m[1][(j + 2) % 3] * &m[2][(j + 1) % 3]);
                acc = &acc + &(&m[0][j] * &minor);
            }
            acc
        }
        _ => {
            // Bareiss fraction-free elimination; divisions are exact in the
            // Laurent ring.
            let one = LaurentPoly::one();
            let mut prev = one.clone();
            let mut sign = 1i64;
            for p in 0..n - 1 {
                if m[p][p].is_zero() {
                    let Some(swap) = (p + 1..n).find(|&r| !m[r][p].is_zero()) else {
                        return LaurentPoly::zero();
                    };
                    m.swap(p, swap);
                    sign = -sign;
                }
                for i in p + 1..n {
                    for j in p + 1..n {
                        let num = &(&m[p][p] * &m[i][j]) - &(&m[i][p] * &m[p][j]);
                        m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                    }
                }
                for i in p + 1..n {
                    m[i][p] = LaurentPoly::zero();
                }
                prev = m[p][p].clone();
            }
            let d = m[n - 1][n - 1].clone();
            if sign < 0 {
                d.scale(&-Rational::one())
            } else {
                d
            }
        }
    }
}

/// Lexicographically ordered k-subsets of `0..n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = (0..k).collect::<Vec<_>>();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Number of k-subsets of an n-set, saturating.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

impl<C: Coeff> std::ops::Index<(usize, usize)> for PolyMatrix<C> {
    type Output = LaurentPoly<C>;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly<C> {
        &self.entries[i * self.cols + j]
    }
}

impl<C: Coeff> std::ops::IndexMut<(usize, usize)> for PolyMatrix<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly<C> {
        &mut self.entries[i * self.cols + j]
    }
}

impl<C: Coeff> std::fmt::Display for PolyMatrix<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            write!(f, "[ ")?;
            for j in 0..self.cols {
                write!(f, "{}", self[(i, j)])?;
                if j + 1 < self.cols {
                    write!(f, " | ")?;
                }
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

impl<C: Coeff> std::fmt::Debug for PolyMatrix<C> {
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
    fn det_identity() {
        let id = PolyMatrix::<Rational>::identity(2);
        let minors = id.minors(2).unwrap();
        assert_eq!(minors, vec![LaurentPoly::one()]);
    }

    #[test]
    fn det_diagonal_monomials() {
        let mut m = PolyMatrix::<Rational>::zeros(2, 2);
        m[(0, 0)] = poly(&[(1, (1, 1))]);
        m[(1, 1)] = poly(&[(2, (1, 1))]);
        assert_eq!(m.minors(2).unwrap(), vec![poly(&[(3, (1, 1))])]);
    }

    #[test]
    fn bareiss_matches_cofactor() {
        // 4x4 with polynomial entries: compare against expansion by minors of
        // the first row computed with the 3x3 path.
        let entries: Vec<LaurentPoly<Rational>> = (0..16)
            .map(|i| {
                poly(&[
                    (0, ((i % 5) as i64 - 2, 1)),
                    (1, ((i % 3) as i64, 2)),
                    (2, (((i * 7) % 4) as i64 - 1, 3)),
                ])
            })
            .collect();
        let m = PolyMatrix::from_fn(4, 4, |i, j| entries[i * 4 + j].clone());
        let bareiss = m.minors(4).unwrap().pop().unwrap();
        let mut cofactor = LaurentPoly::zero();
        for j in 0..4 {
            let sub = PolyMatrix::from_fn(3, 3, |i2, j2| {
                let jj = if j2 < j { j2 } else { j2 + 1 };
                m[(i2 + 1, jj)].clone()
            });
            let minor = sub.minors(3).unwrap().pop().unwrap();
            let term = &m[(0, j)] * &minor;
            cofactor = if j % 2 == 0 {
                &cofactor + &term
            } else {
                &cofactor - &term
            };
        }
        assert_eq!(bareiss, cofactor);
    }

    #[test]
    fn invariants_of_diagonal() {
        let mut m = PolyMatrix::<Rational>::zeros(2, 2);
        m[(0, 0)] = LaurentPoly::one();
        m[(1, 1)] = poly(&[(1, (1, 1))]);
        let inv = m.invariant_polynomials();
        assert_eq!(inv, vec![LaurentPoly::one(), poly(&[(1, (1, 1))])]);
    }

    #[test]
    fn invariants_of_smith_diagonal() {
        // diag(z−1, z(z−1)) is already in Smith form.
        let mut m = PolyMatrix::<Rational>::zeros(2, 2);
        m[(0, 0)] = poly(&[(1, (1, 1)), (0, (-1, 1))]);
        m[(1, 1)] = poly(&[(2, (1, 1)), (1, (-1, 1))]);
        let inv = m.invariant_polynomials();
        assert_eq!(inv[0], poly(&[(1, (1, 1)), (0, (-1, 1))]));
        assert_eq!(inv[1], poly(&[(2, (1, 1)), (1, (-1, 1))]));
    }

    #[test]
    fn invariants_of_zero_matrix_empty() {
        let m = PolyMatrix::<Rational>::zeros(2, 3);
        assert!(m.invariant_polynomials().is_empty());
    }

    #[test]
    fn subset_enumeration_is_lexicographic() {
        assert_eq!(
            subsets(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(8, 4), 70);
    }

    mod properties {
        use super::*;
        use num_complex::Complex64;
        use proptest::prelude::*;

        fn arb_entry() -> impl Strategy<Value = LaurentPoly<Rational>> {
            prop::collection::vec(((0i64..3), (-4i64..=4)), 0..3).prop_map(|terms| {
                LaurentPoly::from_terms(terms.into_iter().map(|(e, n)| (e, rat(n, 1))))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn divisibility_chain_holds(entries in prop::collection::vec(arb_entry(), 9)) {
                let m = PolyMatrix::from_fn(3, 3, |i, j| entries[i * 3 + j].clone());
                let inv = m.invariant_polynomials();
                for w in inv.windows(2) {
                    prop_assert!(w[1].exact_div(&w[0]).is_some());
                }
            }

            #[test]
            fn exact_rank_matches_numeric_rank(entries in prop::collection::vec(arb_entry(), 9)) {
                let m = PolyMatrix::from_fn(3, 3, |i, j| entries[i * 3 + j].clone());
                let exact = m.rank_exact();
                // Evaluate at a point that is extremely unlikely to be a root
                // of any minor.
                let z0 = Complex64::new(0.918273645, 0.374651928);
                let numeric = m.evaluate(z0);
                let svd = numeric.svd(false, false);
                let smax = svd.singular_values.max();
                let numeric_rank = svd
                    .singular_values
                    .iter()
                    .filter(|&&s| s > 1e-9 * smax.max(1e-300))
                    .count();
                prop_assert_eq!(exact, numeric_rank);
            }
        }
    }
}
