//! Reduction of the sampling symbol to a constant matrix pencil.
//!
//! The chain is
//!
//! ```text
//! G(z) → 𝔾(z) = G(z)·U(z) → Ĝ(z) (harmonics) → G̃(z) = Ĝ(z)·Q(z) = [M(z) | 𝒢]
//!      → R·G̃(z) = [M₁ 𝒢′; M₂ 0] → pencils M_i(λ) = M_{i1} − λM_{i2}, λ = z^r
//! ```
//!
//! with `U(z) = diag[(W^{k−1}z)^{r−1}]`, `Q(z) = diag[1, z⁻¹, …, z^{1−r}]`
//! and `W = e^{−2πi/r}`. Every step preserves the rank for `z ≠ 0`, so the
//! rank profile of the original `s×r` symbol is read off the small pencil
//! `M₂(λ)`. All stages are exact.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::generators::GSymbol;
use crate::pencil::Pencil;
use crate::poly::{harmonic_split, LaurentPoly, PolyMatrix};
use crate::rational::{RatMatrix, Rational};

/// All intermediate stages of the reduction, kept for inspection and tests.
#[derive(Clone)]
pub struct ReductionTrace {
    /// Algebraic polynomials `g̃_j(z) = z^{r−1} g_j(z)`.
    pub g_tilde: Vec<LaurentPoly<Rational>>,
    /// Harmonic matrix `Ĝ(z)`, `s×r`, every entry a monomial `c·z^{kr+q}`.
    pub hat_g: PolyMatrix<Rational>,
    /// Normalized matrix `G̃(z) = [M(z) | 𝒢]` with the trailing block constant.
    pub tilde_g: PolyMatrix<Rational>,
    /// Leading block `M(z)`, `s×(N−1)`, entries of the form `a + b·z^r`.
    pub m_poly: PolyMatrix<Rational>,
    /// Constant trailing block `𝒢`, `s×(r−N+1)`.
    pub scalar_g: RatMatrix,
    /// Row compression `R` with `R·𝒢 = [𝒢′; 0]`.
    pub r_transform: RatMatrix,
    /// Invertible top block `𝒢′`, `(r−N+1)×(r−N+1)`.
    pub g_prime: RatMatrix,
    /// Pencil of the top rows of `R·M`.
    pub m1: Pencil,
    /// Pencil of the bottom rows of `R·M`; its Kronecker structure carries
    /// the existence decision.
    pub m2: Pencil,
}

/// `g̃_j = z^{r−1} g_j`: clears the negative exponents. Every `g̃_j` must be
/// an algebraic polynomial of degree at most `N + r − 2 < 2r`.
pub fn to_algebraic(g: &GSymbol, support_bound: usize) -> Result<Vec<LaurentPoly<Rational>>> {
    let r = g.r() as i64;
    let bound = support_bound as i64 + r - 2;
    let mut out = Vec::with_capacity(g.s());
    for (idx, row) in g.rows().iter().enumerate() {
        let shifted = row.mul_monomial(r - 1, &Rational::one());
        if let Some(v) = shifted.valuation() {
            if v < 0 {
                return Err(Error::DegreeBound {
                    degree: v,
                    bound: 0,
                });
            }
        }
        if let Some(d) = shifted.degree() {
            if d > bound {
                return Err(Error::DegreeBound { degree: d, bound });
            }
        }
        let _ = idx;
        out.push(shifted);
    }
    Ok(out)
}

/// Harmonic matrix `Ĝ(z)`: column `q` holds the order-`q` `r`-harmonic of
/// each `g̃_j`. Because the `g̃_j` have at most `N ≤ r` consecutive terms,
/// every entry is a monomial `c·z^{kr+q}` with `k ∈ {0, 1}`.
pub fn harmonic_matrix(
    g_tilde: &[LaurentPoly<Rational>],
    r: usize,
) -> Result<PolyMatrix<Rational>> {
    let s = g_tilde.len();
    let mut hat = PolyMatrix::zeros(s, r);
    for (i, row) in g_tilde.iter().enumerate() {
        let parts = harmonic_split(row, r)?;
        for (q, part) in parts.into_iter().enumerate() {
            if !part.is_monomial() {
                return Err(Error::NonMonomialHarmonic { row: i, col: q });
            }
            hat[(i, q)] = part;
        }
    }
    Ok(hat)
}

/// Divides column `j` of `Ĝ` by `z^{j−1}` and splits the result into the
/// polynomial block `M(z)` (columns `1..N−1`, entries `a + b·z^r`) and the
/// constant block `𝒢` (columns `N..r`).
///
/// A trailing column whose entries are uniformly `c·z^r` is divided by `z^r`
/// as well (legal for `z ≠ 0`); a trailing column mixing `z^0` and `z^r`
/// terms contradicts the uniform-exponent structure and is an error.
pub fn normalize_and_split(
    hat_g: &PolyMatrix<Rational>,
    support_bound: usize,
) -> Result<(PolyMatrix<Rational>, RatMatrix)> {
    let s = hat_g.nrows();
    let r = hat_g.ncols();
    let n = support_bound;
    let mut tilde = hat_g.clone();
    for j in 0..r {
        tilde.scale_column(j, -(j as i64), &Rational::one());
    }
    // Leading block: entries must be constants or c·z^r.
    let m_poly = PolyMatrix::from_fn(s, n - 1, |i, j| tilde[(i, j)].clone());
    for i in 0..s {
        for j in 0..n - 1 {
            for (e, _) in m_poly[(i, j)].terms() {
                if e != 0 && e != r as i64 {
                    return Err(Error::NotAffine { row: i, col: j });
                }
            }
        }
    }
    // Trailing block: uniform exponent per column, 0 or r.
    let mut scalar_g = RatMatrix::zeros(s, r - n + 1);
    for j in n - 1..r {
        let mut exponents = Vec::new();
        for i in 0..s {
            if let Some(v) = tilde[(i, j)].valuation() {
                exponents.push(v);
            }
        }
        let uniform = exponents.windows(2).all(|w| w[0] == w[1]);
        if !uniform {
            return Err(Error::MixedTrailingColumn { col: j });
        }
        let shift = exponents.first().copied().unwrap_or(0);
        for i in 0..s {
            scalar_g[(i, j - (n - 1))] = tilde[(i, j)].coeff(shift);
        }
    }
    Ok((m_poly, scalar_g))
}

/// Re-assembles `G̃(z) = [M(z) | 𝒢]` as one polynomial matrix. Convenient for
/// rank checks and for forming the full pencil.
pub fn assemble_tilde_g(
    m_poly: &PolyMatrix<Rational>,
    scalar_g: &RatMatrix,
) -> PolyMatrix<Rational> {
    let s = m_poly.nrows();
    let lead = m_poly.ncols();
    PolyMatrix::from_fn(s, lead + scalar_g.ncols(), |i, j| {
        if j < lead {
            m_poly[(i, j)].clone()
        } else {
            LaurentPoly::constant(scalar_g[(i, j - lead)].clone())
        }
    })
}

/// Row compression of the constant block.
///
/// Computes an invertible `R` with `R·𝒢 = [𝒢′; 0]`, `𝒢′` invertible, by exact
/// Gaussian elimination: columns are processed left to right, the pivot is
/// the first unused row (scanning from the top) with a nonzero entry, and all
/// other rows are cleared in the pivot columns. Pivot rows are listed first,
/// the remaining rows keep their original order. Requires
/// `rank 𝒢 = r − N + 1`.
pub fn row_compress(
    m_poly: &PolyMatrix<Rational>,
    scalar_g: &RatMatrix,
) -> Result<(RatMatrix, RatMatrix, Pencil, Pencil)> {
    let r_mat = compression_matrix(scalar_g)?;
    row_compress_with(m_poly, scalar_g, &r_mat)
}

/// Same as [`row_compress`] but with a caller-supplied compression matrix
/// `R`; it is validated to be a genuine row compression (`R·𝒢 = [𝒢′; 0]`
/// with `𝒢′` invertible). The Kronecker structure of the resulting `M₂`
/// pencil does not depend on the choice of `R`.
pub fn row_compress_with(
    m_poly: &PolyMatrix<Rational>,
    scalar_g: &RatMatrix,
    r_mat: &RatMatrix,
) -> Result<(RatMatrix, RatMatrix, Pencil, Pencil)> {
    let s = scalar_g.nrows();
    let k = scalar_g.ncols();
    if r_mat.nrows() != s || r_mat.ncols() != s {
        return Err(Error::WrongShape(format!(
            "compression matrix must be {s}x{s}"
        )));
    }
    let compressed = r_mat.mul(scalar_g);
    let g_prime = compressed.submatrix(0..k, 0..k);
    if g_prime.rank() != k {
        return Err(Error::PreconditionFailed(
            "top block of R·G is not invertible".into(),
        ));
    }
    for i in k..s {
        if !compressed.is_zero_row(i) {
            return Err(Error::PreconditionFailed(
                "R does not annihilate the bottom rows of the scalar block".into(),
            ));
        }
    }
    let rm = m_poly.left_mul_rat(r_mat);
    let top = PolyMatrix::from_fn(k, rm.ncols(), |i, j| rm[(i, j)].clone());
    let bottom = PolyMatrix::from_fn(s - k, rm.ncols(), |i, j| rm[(i + k, j)].clone());
    let var_exp = lambda_exponent(m_poly);
    let m1 = pencil_from_affine(&top, var_exp)?;
    let m2 = pencil_from_affine(&bottom, var_exp)?;
    Ok((r_mat.clone(), g_prime, m1, m2))
}

/// The exponent playing the role of `λ` in the split form (that is, `r`).
fn lambda_exponent(m_poly: &PolyMatrix<Rational>) -> i64 {
    let mut exp = 0;
    for i in 0..m_poly.nrows() {
        for j in 0..m_poly.ncols() {
            for (e, _) in m_poly[(i, j)].terms() {
                if e != 0 {
                    exp = e;
                }
            }
        }
    }
    exp
}

fn compression_matrix(scalar_g: &RatMatrix) -> Result<RatMatrix> {
    let s = scalar_g.nrows();
    let k = scalar_g.ncols();
    let rank = scalar_g.rank();
    if rank < k {
        return Err(Error::RankDeficientScalarPart { rank, expected: k });
    }
    // Work on [𝒢 | I] so the accumulated row operations form R.
    let mut work = RatMatrix::from_fn(s, k + s, |i, j| {
        if j < k {
            scalar_g[(i, j)].clone()
        } else if j - k == i {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let mut pivot_rows: Vec<usize> = Vec::new();
    for col in 0..k {
        let pivot = (0..s)
            .find(|row| !pivot_rows.contains(row) && !work[(*row, col)].is_zero())
            .expect("full column rank was checked");
        for row in 0..s {
            if row != pivot && !pivot_rows.contains(&row) && !work[(row, col)].is_zero() {
                let factor = &work[(row, col)] / &work[(pivot, col)];
                for c in 0..k + s {
                    let sub = &factor * &work[(pivot, c)];
                    work[(row, c)] -= sub;
                }
            }
        }
        pivot_rows.push(pivot);
    }
    let mut order = pivot_rows.clone();
    for row in 0..s {
        if !pivot_rows.contains(&row) {
            order.push(row);
        }
    }
    Ok(RatMatrix::from_fn(s, s, |i, j| {
        work[(order[i], k + j)].clone()
    }))
}

/// Reads a polynomial matrix whose entries are `a + b·z^var_exp` as the
/// constant pencil `A − λB` (so `A` holds the constants and `B = −b`).
pub fn pencil_from_affine(m: &PolyMatrix<Rational>, var_exp: i64) -> Result<Pencil> {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut a = RatMatrix::zeros(rows, cols);
    let mut b = RatMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            for (e, c) in m[(i, j)].terms() {
                if e == 0 {
                    a[(i, j)] = c.clone();
                } else if e == var_exp && var_exp != 0 {
                    b[(i, j)] = -c.clone();
                } else {
                    return Err(Error::NotAffine { row: i, col: j });
                }
            }
        }
    }
    Ok(Pencil::from_exact(a, b))
}

/// Full pencil of `G̃(λ) = 𝒜ᵀ − λℬᵀ` (the whole `s×r` matrix, not just the
/// compressed bottom block).
pub fn full_pencil(tilde_g: &PolyMatrix<Rational>, r: usize) -> Result<Pencil> {
    pencil_from_affine(tilde_g, r as i64)
}

impl ReductionTrace {
    /// Runs the whole reduction chain with the built-in row compression.
    pub fn compute(g: &GSymbol, support_bound: usize) -> Result<Self> {
        Self::compute_impl(g, support_bound, None)
    }

    /// Runs the chain with a caller-supplied compression matrix `R`.
    pub fn compute_with_r(g: &GSymbol, support_bound: usize, r_mat: &RatMatrix) -> Result<Self> {
        Self::compute_impl(g, support_bound, Some(r_mat))
    }

    fn compute_impl(
        g: &GSymbol,
        support_bound: usize,
        r_override: Option<&RatMatrix>,
    ) -> Result<Self> {
        let g_tilde = to_algebraic(g, support_bound)?;
        let hat_g = harmonic_matrix(&g_tilde, g.r())?;
        let (m_poly, scalar_g) = normalize_and_split(&hat_g, support_bound)?;
        let tilde_g = assemble_tilde_g(&m_poly, &scalar_g);
        let (r_transform, g_prime, m1, m2) = match r_override {
            None => row_compress(&m_poly, &scalar_g)?,
            Some(r_mat) => row_compress_with(&m_poly, &scalar_g, r_mat)?,
        };
        Ok(ReductionTrace {
            g_tilde,
            hat_g,
            tilde_g,
            m_poly,
            scalar_g,
            r_transform,
            g_prime,
            m1,
            m2,
        })
    }

    /// The pencil `G̃(λ) = 𝒜ᵀ − λℬᵀ` of the full (uncompressed) matrix.
    pub fn full_pencil(&self, r: usize) -> Result<Pencil> {
        full_pencil(&self.tilde_g, r)
    }
}
