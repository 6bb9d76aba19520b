//! Existence decision for compactly supported reconstruction filters.
//!
//! The decision runs the reduction chain and inspects the Kronecker
//! structure of the compressed pencil `M₂(λ)`: filters exist exactly when
//! the constant block has full rank, the pencil has no right singular part,
//! and its only possible finite eigenvalue is zero. On exact data the
//! staircase verdict is cross-checked against the minor-gcd oracle; the two
//! paths must agree or the report flags the disagreement.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{build_g, SamplingProblem};
use crate::pencil::{gcd_is_monomial, spectrum_oracle, staircase, KroneckerStructure, Pencil};
use crate::poly::{binomial, PolyMatrix};
use crate::rational::Rational;
use crate::reduction::ReductionTrace;

/// Hard cap on the number of minors the oracle may enumerate.
pub const ORACLE_MINOR_GUARD: u128 = 10_000;

/// Options for [`existence_check`].
#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    /// Relative tolerance for numerical rank decisions.
    pub tol: f64,
    /// Grid size for the optional frame-bound scan; `None` skips the scan.
    pub frame_grid: Option<usize>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            tol: crate::pencil::DEFAULT_TOL,
            frame_grid: None,
        }
    }
}

/// Outcome of the existence decision.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExistenceReport {
    pub r: usize,
    pub s: usize,
    pub support_bound: usize,
    /// `rank 𝒢 = r − N + 1`.
    pub scalar_rank_ok: bool,
    /// The pencil `M₂(λ)` has no right singular part.
    pub no_right_singular: bool,
    /// Every finite eigenvalue of `M₂(λ)` is zero.
    pub only_zero_finite_eigenvalue: bool,
    /// Conjunction of the three conditions above.
    pub exists: bool,
    /// Kronecker structure of `M₂(λ)`; absent when the scalar block is rank
    /// deficient and the reduction stops early.
    #[serde(serialize_with = "serialize_kronecker")]
    pub kronecker: Option<KroneckerStructure>,
    /// Whether the exact minor-gcd oracle agrees with the staircase verdict
    /// (`None` when the oracle did not run).
    pub oracle_agrees: Option<bool>,
    /// Entrywise sufficient pattern of the full pencil, evaluated for
    /// `s = r + 1` problems.
    pub sufficient_pattern_holds: Option<bool>,
    /// Numerical frame-bound proxies, when a scan was requested.
    pub frame_scan: Option<FrameScan>,
}

fn serialize_kronecker<S: serde::Serializer>(
    k: &Option<KroneckerStructure>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct K<'a> {
        right_minimal_indices: &'a [usize],
        left_minimal_indices: &'a [usize],
        zero_jordan_blocks: &'a [usize],
        infinite_blocks: &'a [usize],
        finite_nonzero_eigenvalues: Vec<([f64; 2], &'a [usize])>,
    }
    match k {
        None => ser.serialize_none(),
        Some(k) => {
            let finite = k
                .finite_nonzero_eigenvalues()
                .iter()
                .map(|(mu, sizes)| ([mu.re, mu.im], sizes.as_slice()))
                .collect();
            ser.serialize_some(&K {
                right_minimal_indices: k.right_minimal_indices(),
                left_minimal_indices: k.left_minimal_indices(),
                zero_jordan_blocks: k.zero_jordan_blocks(),
                infinite_blocks: k.infinite_blocks(),
                finite_nonzero_eigenvalues: finite,
            })
        }
    }
}

/// Frame-bound proxies over a frequency grid.
#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FrameScan {
    /// Minimum over the grid of the smallest eigenvalue of `G*(w)G(w)`.
    pub alpha_hat: f64,
    /// Maximum over the grid of the largest eigenvalue of `G*(w)G(w)`.
    pub beta_hat: f64,
    /// Minimum over the grid of the numerical rank of `G(w)`.
    pub min_rank: usize,
    pub grid_size: usize,
}

/// Decides whether compactly supported reconstruction filters exist.
///
/// Runs the reduction chain, reads the conditions off the staircase form of
/// `M₂(λ)` and, since the pipeline data is exact, cross-checks with
/// [`spectrum_oracle`]. A rank-deficient scalar block short-circuits to
/// `exists = false` with the two pencil conditions reported as `false`.
pub fn existence_check(
    problem: &SamplingProblem,
    options: &AnalysisOptions,
) -> Result<ExistenceReport> {
    let g = build_g(problem)?;
    let n = problem.support_bound();
    let frame_scan = match options.frame_grid {
        Some(grid) => Some(frame_scan(problem, grid)?),
        None => None,
    };
    let trace = match ReductionTrace::compute(&g, n) {
        Err(Error::RankDeficientScalarPart { .. }) => {
            return Ok(ExistenceReport {
                r: problem.r(),
                s: problem.s(),
                support_bound: n,
                scalar_rank_ok: false,
                no_right_singular: false,
                only_zero_finite_eigenvalue: false,
                exists: false,
                kronecker: None,
                oracle_agrees: None,
                sufficient_pattern_holds: None,
                frame_scan,
            });
        }
        other => other?,
    };
    let kronecker = staircase(&trace.m2, options.tol)?;
    let no_right_singular = !kronecker.has_right_singular_part();
    let only_zero = !kronecker.has_finite_nonzero_eigenvalues();
    let exists = no_right_singular && only_zero;

    // Exact cross-check: rank M₂(λ) = N−1 for all λ ≠ 0 iff the normal rank
    // is full and the minor gcd is a monomial.
    let oracle_agrees = {
        let (rank, gcd) = spectrum_oracle(&trace.m2)?;
        let oracle_exists = rank == n - 1 && gcd_is_monomial(&gcd);
        Some(oracle_exists == exists)
    };

    let sufficient_pattern_holds = if problem.s() == problem.r() + 1 {
        let full = trace.full_pencil(problem.r())?;
        Some(sufficient_pattern_check(&full, n, problem.r())?)
    } else {
        None
    };

    Ok(ExistenceReport {
        r: problem.r(),
        s: problem.s(),
        support_bound: n,
        scalar_rank_ok: true,
        no_right_singular,
        only_zero_finite_eigenvalue: only_zero,
        exists,
        kronecker: Some(kronecker),
        oracle_agrees,
        sufficient_pattern_holds,
        frame_scan,
    })
}

/// Exact minor-gcd criterion on a rational Laurent matrix with the same rank
/// profile as the sampling symbol (for `r > 1` use the harmonic matrix
/// `Ĝ(z)`, whose entries are rational): `true` iff the gcd of all maximal
/// minors is a nonzero monomial `c·z^k`, equivalently all Smith invariant
/// polynomials are monomials, equivalently the rank is full for all `z ≠ 0`.
pub fn monomial_minor_oracle(matrix: &PolyMatrix<Rational>) -> Result<bool> {
    let s = matrix.nrows();
    let r = matrix.ncols();
    if r > s {
        return Err(Error::WrongShape(format!(
            "expected a tall matrix, got {s}x{r}"
        )));
    }
    let count = binomial(s, r);
    if count > ORACLE_MINOR_GUARD {
        return Err(Error::OracleTooLarge {
            minors: count,
            guard: ORACLE_MINOR_GUARD,
        });
    }
    let minors = matrix.minors(r)?;
    if minors.iter().all(|m| m.is_zero()) {
        return Ok(false); // rank below r everywhere
    }
    let gcd = crate::poly::poly_gcd(&minors)?;
    Ok(gcd.is_monomial())
}

/// Runs the oracle on the problem itself, through the rational harmonic
/// matrix `Ĝ(z)` (which has the same rank as `G(z)` for every `z ≠ 0`).
pub fn monomial_minor_oracle_for_problem(problem: &SamplingProblem) -> Result<bool> {
    let g = build_g(problem)?;
    let g_tilde = crate::reduction::to_algebraic(&g, problem.support_bound())?;
    let hat = crate::reduction::harmonic_matrix(&g_tilde, problem.r())?;
    monomial_minor_oracle(&hat)
}

/// Scans `w ∈ (0, 1/r)` on a uniform midpoint grid and reports the extreme
/// eigenvalues of `G*(w)G(w)` together with the minimal numerical rank.
/// Diagnostic only: grid positivity never gates the existence decision.
pub fn frame_scan(problem: &SamplingProblem, grid_size: usize) -> Result<FrameScan> {
    if grid_size < 16 {
        return Err(Error::InvalidProblem(format!(
            "frame scan grid must have at least 16 points, got {grid_size}"
        )));
    }
    let g = build_g(problem)?;
    let r = problem.r() as f64;
    let mut alpha_hat = f64::INFINITY;
    let mut beta_hat: f64 = 0.0;
    let mut min_rank = usize::MAX;
    for i in 0..grid_size {
        let w = (2 * i + 1) as f64 / (2.0 * grid_size as f64 * r);
        let mat = g.evaluate_at_freq(w);
        let gram = mat.adjoint() * &mat;
        let eigs = gram.symmetric_eigenvalues();
        let lo = eigs.iter().cloned().fold(f64::INFINITY, f64::min).max(0.0);
        let hi = eigs.iter().cloned().fold(0.0f64, f64::max);
        alpha_hat = alpha_hat.min(lo);
        beta_hat = beta_hat.max(hi);
        let rank = crate::pencil::svd_rank(&mat, 1e-10 * hi.sqrt().max(1e-300))?;
        min_rank = min_rank.min(rank);
    }
    Ok(FrameScan {
        alpha_hat,
        beta_hat,
        min_rank,
        grid_size,
    })
}

/// Entrywise sufficient condition for the minimum-oversampling pencil
/// (`s = r + 1`): the anti-diagonals `i + j = r + 2` and `i + j = r + N + 1`
/// of `𝒜ᵀ` are nonzero, and so is the anti-diagonal `i + j = N + 1`, `i ≥ 2`
/// of `ℬᵀ`. When it holds, the three rank preconditions of the block solver
/// are guaranteed.
pub fn sufficient_pattern_check(
    full_pencil: &Pencil,
    support_bound: usize,
    r: usize,
) -> Result<bool> {
    if full_pencil.nrows() != r + 1 || full_pencil.ncols() != r {
        return Err(Error::WrongShape(format!(
            "sufficient pattern needs an (r+1)xr pencil, got {}x{}",
            full_pencil.nrows(),
            full_pencil.ncols()
        )));
    }
    let n = support_bound;
    let is_zero = |m: &nalgebra::DMatrix<Complex64>, i: usize, j: usize| m[(i, j)].norm() == 0.0;
    // 1-based anti-diagonal conditions on 𝒜ᵀ and ℬᵀ.
    for i in 1..=r + 1 {
        for j in 1..=r {
            if (i + j == r + 2 || i + j == r + n + 1) && is_zero(full_pencil.a(), i - 1, j - 1) {
                return Ok(false);
            }
            if i + j == n + 1 && i >= 2 && is_zero(full_pencil.b(), i - 1, j - 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
