//! Exact rational scalars and dense rational matrices.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. `RatMatrix` is a small dense matrix over `Rational`
//! with the exact linear algebra the reduction pipeline needs: products,
//! rank, row reduction and consistent-system solves.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Descriptor(format!("bad rational {s:?}: {e}")))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().expect("rational outside f64 range")
}

/// Floor of a rational as i64.
pub fn floor_i64(x: &Rational) -> i64 {
    x.floor().to_integer().to_i64().expect("floor out of range")
}

/// Ceiling of a rational as i64.
pub fn ceil_i64(x: &Rational) -> i64 {
    x.ceil().to_integer().to_i64().expect("ceil out of range")
}

/// Dense row-major matrix over `Rational`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = rat_int(1);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    /// Builds a matrix from integer pairs `(num, den)` given row-major.
    pub fn from_i64(rows: usize, cols: usize, entries: &[(i64, i64)]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::from_fn(rows, cols, |i, j| {
            let (n, d) = entries[i * cols + j];
            rat(n, d)
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        RatMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                if !self[(i, k)].is_zero() && !other[(k, j)].is_zero() {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
            }
            acc
        })
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows.start + i, cols.start + j)].clone()
        })
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    pub fn to_complex(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| {
            Complex64::new(to_f64(&self[(i, j)]), 0.0)
        })
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| to_f64(&self[(i, j)]))
    }

    /// Exact rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let mut rank = 0;
        for col in 0..work.cols {
            let Some(pivot) = (rank..work.rows).find(|&r| !work[(r, col)].is_zero()) else {
                continue;
            };
            work.swap_rows(rank, pivot);
            for r in rank + 1..work.rows {
                if !work[(r, col)].is_zero() {
                    let factor = &work[(r, col)] / &work[(rank, col)];
                    for c in col..work.cols {
                        let sub = &factor * &work[(rank, c)];
                        work[(r, c)] -= sub;
                    }
                }
            }
            rank += 1;
            if rank == work.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Solves `self · x = rhs` exactly for each column of `rhs`.
    ///
    /// Returns `None` if any system is inconsistent. Free variables (if the
    /// matrix is column-rank deficient) are set to zero, so the result is a
    /// particular solution.
    pub fn solve(&self, rhs: &RatMatrix) -> Option<RatMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let m = self.rows;
        let n = self.cols;
        let k = rhs.cols;
        // Augmented matrix [self | rhs], plain fraction-exact elimination.
        let mut aug = RatMatrix::from_fn(m, n + k, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - n)].clone()
            }
        });
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..m).find(|&r| !aug[(r, col)].is_zero()) else {
                continue;
            };
            aug.swap_rows(row, p);
            let pivot = aug[(row, col)].clone();
            for r in 0..m {
                if r != row && !aug[(r, col)].is_zero() {
                    let factor = &aug[(r, col)] / &pivot;
                    for c in col..n + k {
                        let sub = &factor * &aug[(row, c)];
                        aug[(r, c)] -= sub;
                    }
                }
            }
            pivot_cols.push((row, col));
            row += 1;
            if row == m {
                break;
            }
        }
        // Consistency: a zero row of the coefficient part must have zero rhs.
        for r in row..m {
            for c in n..n + k {
                if !aug[(r, c)].is_zero() {
                    return None;
                }
            }
        }
        let mut x = RatMatrix::zeros(n, k);
        for (prow, pcol) in pivot_cols {
            for c in 0..k {
                x[(pcol, c)] = &aug[(prow, n + c)] / &aug[(prow, pcol)];
            }
        }
        Some(x)
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.data
            .iter()
            .map(|x| to_f64(&x.abs()))
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl std::fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        <Self as std::fmt::Debug>::fmt(self, f)
    }
}
