//! Matrix pencils, their Kronecker structure, and an exact spectrum oracle.
//!
//! [`staircase`] computes the complete Kronecker structure of a (possibly
//! singular) pencil `A − λB` by repeated rank-revealing compressions, in the
//! style of the generalized upper-triangular (staircase) reduction:
//!
//! 1. column compressions of the `A` part extract the right singular blocks
//!    and the Jordan structure of the zero eigenvalue,
//! 2. the same sweep on the reversed pencil `B − λA` extracts the blocks of
//!    the infinite eigenvalue,
//! 3. the sweep on the conjugate transpose extracts the left singular blocks,
//! 4. the remaining square core is regular with only finite nonzero
//!    eigenvalues; its eigenvalues are classified through `(α, β)` pairs and
//!    their Jordan sizes recovered by shifted sweeps.
//!
//! Every rank decision is a singular-value threshold at `tol·‖·‖`; a decision
//! without a clear gap raises [`Error::RankAmbiguous`] instead of guessing,
//! so callers can fall back to the exact [`spectrum_oracle`].

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{poly_gcd, LaurentPoly, PolyMatrix};
use crate::rational::{RatMatrix, Rational};

/// Default relative tolerance for numerical rank decisions.
pub const DEFAULT_TOL: f64 = 1e-10;

/// A constant matrix pencil `A − λB`. The float view is always present; the
/// exact rational view is kept when the pencil was built from exact data and
/// enables the exact oracle and exact solvers.
#[derive(Clone, Debug)]
pub struct Pencil {
    a: DMatrix<Complex64>,
    b: DMatrix<Complex64>,
    exact: Option<(RatMatrix, RatMatrix)>,
}

impl Pencil {
    pub fn from_exact(a: RatMatrix, b: RatMatrix) -> Self {
        assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
        Pencil {
            a: a.to_complex(),
            b: b.to_complex(),
            exact: Some((a, b)),
        }
    }

    pub fn from_float(a: DMatrix<Complex64>, b: DMatrix<Complex64>) -> Self {
        assert_eq!(a.shape(), b.shape());
        Pencil { a, b, exact: None }
    }

    pub fn nrows(&self) -> usize {
        self.a.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.a.ncols()
    }

    pub fn a(&self) -> &DMatrix<Complex64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<Complex64> {
        &self.b
    }

    /// Exact rational view, when available.
    pub fn exact(&self) -> Option<(&RatMatrix, &RatMatrix)> {
        self.exact.as_ref().map(|(a, b)| (a, b))
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// `A − λ₀B` at a numeric point.
    pub fn eval(&self, lambda: Complex64) -> DMatrix<Complex64> {
        &self.a - &self.b * lambda
    }

    /// The pencil as an exact polynomial matrix in `λ`.
    pub fn lambda_matrix(&self) -> Result<PolyMatrix<Rational>> {
        let (a, b) = self
            .exact()
            .ok_or(Error::ExactDataRequired("lambda_matrix"))?;
        Ok(PolyMatrix::from_fn(a.nrows(), a.ncols(), |i, j| {
            LaurentPoly::from_terms([(0, a[(i, j)].clone()), (1, -b[(i, j)].clone())])
        }))
    }

    /// Normal rank: the largest rank of `A − λ₀B` over random probe points
    /// λ₀ (float path). With exact data use [`spectrum_oracle`] instead.
    pub fn normal_rank(&self, tol: f64, rng: &mut impl Rng) -> Result<usize> {
        let scale = self.a.norm().max(self.b.norm()).max(1.0);
        let mut best = 0;
        for _ in 0..5 {
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let radius = rng.gen_range(0.4..2.5);
            let lam = Complex64::from_polar(radius, theta);
            let m = self.eval(lam);
            let threshold = tol * scale * (1.0 + lam.norm());
            best = best.max(svd_rank(&m, threshold)?);
        }
        Ok(best)
    }
}

/// Kronecker structure of a pencil: minimal indices, Jordan blocks at 0,
/// blocks at infinity and the finite nonzero eigenvalues with their block
/// sizes. All multisets are kept sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct KroneckerStructure {
    right_minimal_indices: Vec<usize>,
    left_minimal_indices: Vec<usize>,
    zero_jordan_blocks: Vec<usize>,
    infinite_blocks: Vec<usize>,
    finite_nonzero: Vec<(Complex64, Vec<usize>)>,
}

impl KroneckerStructure {
    /// Builds the structure, checking the size bookkeeping against the pencil
    /// shape `(rows, cols)`.
    pub fn new(
        mut right_minimal_indices: Vec<usize>,
        mut left_minimal_indices: Vec<usize>,
        mut zero_jordan_blocks: Vec<usize>,
        mut infinite_blocks: Vec<usize>,
        mut finite_nonzero: Vec<(Complex64, Vec<usize>)>,
        rows: usize,
        cols: usize,
    ) -> Result<Self> {
        right_minimal_indices.sort_unstable();
        left_minimal_indices.sort_unstable();
        zero_jordan_blocks.sort_unstable();
        infinite_blocks.sort_unstable();
        for (_, sizes) in finite_nonzero.iter_mut() {
            sizes.sort_unstable();
        }
        finite_nonzero.sort_by(|x, y| {
            (x.0.re, x.0.im)
                .partial_cmp(&(y.0.re, y.0.im))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let regular: usize = zero_jordan_blocks.iter().sum::<usize>()
            + infinite_blocks.iter().sum::<usize>()
            + finite_nonzero
                .iter()
                .map(|(_, sizes)| sizes.iter().sum::<usize>())
                .sum::<usize>();
        let col_count: usize = right_minimal_indices.iter().map(|e| e + 1).sum::<usize>()
            + left_minimal_indices.iter().sum::<usize>()
            + regular;
        let row_count: usize = right_minimal_indices.iter().sum::<usize>()
            + left_minimal_indices.iter().map(|e| e + 1).sum::<usize>()
            + regular;
        if col_count != cols || row_count != rows {
            return Err(Error::StaircaseInconsistent(format!(
                "block sizes account for {row_count}x{col_count}, pencil is {rows}x{cols}"
            )));
        }
        Ok(KroneckerStructure {
            right_minimal_indices,
            left_minimal_indices,
            zero_jordan_blocks,
            infinite_blocks,
            finite_nonzero,
        })
    }

    pub fn right_minimal_indices(&self) -> &[usize] {
        &self.right_minimal_indices
    }

    pub fn left_minimal_indices(&self) -> &[usize] {
        &self.left_minimal_indices
    }

    pub fn zero_jordan_blocks(&self) -> &[usize] {
        &self.zero_jordan_blocks
    }

    pub fn infinite_blocks(&self) -> &[usize] {
        &self.infinite_blocks
    }

    pub fn finite_nonzero_eigenvalues(&self) -> &[(Complex64, Vec<usize>)] {
        &self.finite_nonzero
    }

    pub fn has_right_singular_part(&self) -> bool {
        !self.right_minimal_indices.is_empty()
    }

    pub fn has_finite_nonzero_eigenvalues(&self) -> bool {
        !self.finite_nonzero.is_empty()
    }

    /// Total algebraic size of the finite spectrum (zero included).
    pub fn finite_spectrum_size(&self) -> usize {
        self.zero_jordan_blocks.iter().sum::<usize>()
            + self
                .finite_nonzero
                .iter()
                .map(|(_, s)| s.iter().sum::<usize>())
                .sum::<usize>()
    }

    /// Normal rank implied by the structure (for an `m×n` pencil this is
    /// `n` minus the number of right singular blocks).
    pub fn normal_rank(&self, cols: usize) -> usize {
        cols - self.right_minimal_indices.len()
    }
}

impl std::fmt::Display for KroneckerStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for e in &self.right_minimal_indices {
            parts.push(format!("L_{e}"));
        }
        for (mu, sizes) in &self.finite_nonzero {
            for l in sizes {
                parts.push(format!("J_{l}({:.4}{:+.4}i)", mu.re, mu.im));
            }
        }
        for l in &self.zero_jordan_blocks {
            parts.push(format!("J_{l}(0)"));
        }
        for p in &self.infinite_blocks {
            parts.push(format!("N_{p}"));
        }
        for e in &self.left_minimal_indices {
            parts.push(format!("L^T_{e}"));
        }
        if parts.is_empty() {
            write!(f, "(empty)")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Numerical rank by singular-value thresholding at the given absolute
/// threshold. Returns [`Error::RankAmbiguous`] when the singular values at
/// the cut straddle the threshold within a factor of ten on each side.
pub fn svd_rank(m: &DMatrix<Complex64>, threshold: f64) -> Result<usize> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0);
    }
    let mut sv: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let rank = sv.iter().filter(|&&s| s > threshold).count();
    if rank > 0 && rank < sv.len() {
        let kept = sv[rank - 1];
        let dropped = sv[rank];
        if kept <= 10.0 * threshold && dropped >= threshold / 10.0 {
            return Err(Error::RankAmbiguous {
                singular_values: sv,
                threshold,
            });
        }
    }
    Ok(rank)
}

/// Full unitary factor of the Householder QR of `m`, sized `m.nrows()`
/// square; its leading columns span the column space of `m`.
fn full_qr_q(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let rows = m.nrows();
    let cols = m.ncols().min(rows);
    let mut r = m.clone();
    let mut qh = DMatrix::<Complex64>::identity(rows, rows);
    for k in 0..cols {
        let x = r.view((k, k), (rows - k, 1)).clone_owned();
        let norm_x = x.norm();
        if norm_x <= f64::EPSILON {
            continue;
        }
        let x0 = x[(0, 0)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * norm_x;
        let mut v = x;
        v[(0, 0)] -= alpha;
        let vnorm2 = v.norm_squared();
        if vnorm2 <= f64::EPSILON * f64::EPSILON {
            continue;
        }
        let two = Complex64::new(2.0, 0.0);
        // Apply H = I − 2vv*/v*v to the trailing block of R and to Q^H.
        for col in k..r.ncols() {
            let mut dot = Complex64::zero();
            for i in 0..v.nrows() {
                dot += v[(i, 0)].conj() * r[(k + i, col)];
            }
            let scale = two * dot / vnorm2;
            for i in 0..v.nrows() {
                let delta = scale * v[(i, 0)];
                r[(k + i, col)] -= delta;
            }
        }
        for col in 0..rows {
            let mut dot = Complex64::zero();
            for i in 0..v.nrows() {
                dot += v[(i, 0)].conj() * qh[(k + i, col)];
            }
            let scale = two * dot / vnorm2;
            for i in 0..v.nrows() {
                let delta = scale * v[(i, 0)];
                qh[(k + i, col)] -= delta;
            }
        }
    }
    qh.adjoint()
}

/// Householder QR with column pivoting, returning the full unitary factor.
/// With `rank` decided elsewhere (from singular values), the leading `rank`
/// columns span the column space of `m` to machine precision; the singular
/// vectors of the iterative SVD are not reliable enough for that near rank
/// deficiency.
fn qrcp_q(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let rows = m.nrows();
    let cols = m.ncols();
    let steps = rows.min(cols);
    let mut r = m.clone();
    let mut qh = DMatrix::<Complex64>::identity(rows, rows);
    for k in 0..steps {
        let mut best = k;
        let mut best_norm = -1.0;
        for j in k..cols {
            let nj = r.view((k, j), (rows - k, 1)).norm();
            if nj > best_norm {
                best_norm = nj;
                best = j;
            }
        }
        if best_norm <= f64::EPSILON * m.norm() {
            break;
        }
        r.swap_columns(k, best);
        let x = r.view((k, k), (rows - k, 1)).clone_owned();
        let norm_x = x.norm();
        if norm_x <= f64::EPSILON {
            continue;
        }
        let x0 = x[(0, 0)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * norm_x;
        let mut v = x;
        v[(0, 0)] -= alpha;
        let vnorm2 = v.norm_squared();
        if vnorm2 <= f64::EPSILON * f64::EPSILON {
            continue;
        }
        let two = Complex64::new(2.0, 0.0);
        for col in k..cols {
            let mut dot = Complex64::zero();
            for i in 0..v.nrows() {
                dot += v[(i, 0)].conj() * r[(k + i, col)];
            }
            let scale = two * dot / vnorm2;
            for i in 0..v.nrows() {
                let delta = scale * v[(i, 0)];
                r[(k + i, col)] -= delta;
            }
        }
        for col in 0..rows {
            let mut dot = Complex64::zero();
            for i in 0..v.nrows() {
                dot += v[(i, 0)].conj() * qh[(k + i, col)];
            }
            let scale = two * dot / vnorm2;
            for i in 0..v.nrows() {
                let delta = scale * v[(i, 0)];
                qh[(k + i, col)] -= delta;
            }
        }
    }
    qh.adjoint()
}

/// One compression sweep: per step `j` it records the column nullity `s_j`
/// of the `A` part and the rank `r_j` of the `B` part over those null
/// directions, then deflates. Right minimal indices equal `j−1` with
/// multiplicity `s_j − r_j`; zero-eigenvalue Jordan blocks have size `j`
/// with multiplicity `r_j − s_{j+1}`.
struct SweepOutcome {
    s_seq: Vec<usize>,
    r_seq: Vec<usize>,
    rest_a: DMatrix<Complex64>,
    rest_b: DMatrix<Complex64>,
}

fn compression_sweep(
    a0: &DMatrix<Complex64>,
    b0: &DMatrix<Complex64>,
    tau_a: f64,
    tau_b: f64,
) -> Result<SweepOutcome> {
    let mut a = a0.clone();
    let mut b = b0.clone();
    let mut s_seq = Vec::new();
    let mut r_seq = Vec::new();
    loop {
        let (m, n) = a.shape();
        if n == 0 {
            break;
        }
        let rank_a = svd_rank(&a, tau_a)?;
        let s_j = n - rank_a;
        if s_j == 0 {
            break;
        }
        // Permute columns so the null directions of A come first: the
        // trailing columns of the pivoted QR of A^H span the null space.
        let (a1, b1) = if m == 0 || rank_a == 0 {
            (a.clone(), b.clone())
        } else {
            let q = qrcp_q(&a.adjoint());
            let mut perm = DMatrix::<Complex64>::zeros(n, n);
            perm.view_mut((0, 0), (n, s_j))
                .copy_from(&q.columns(rank_a, s_j).clone_owned());
            perm.view_mut((0, s_j), (n, rank_a))
                .copy_from(&q.columns(0, rank_a).clone_owned());
            (&a * &perm, &b * &perm)
        };
        let b_left = b1.columns(0, s_j).clone_owned();
        let r_j = svd_rank(&b_left, tau_b)?;
        if r_j > s_j {
            return Err(Error::StaircaseInconsistent(
                "B-part rank exceeds null dimension".into(),
            ));
        }
        s_seq.push(s_j);
        r_seq.push(r_j);
        let (a2, b2) = if r_j > 0 && m > 0 {
            let qu = qrcp_q(&b_left);
            (qu.adjoint() * &a1, qu.adjoint() * &b1)
        } else {
            (a1, b1)
        };
        // Deflate: drop the compressed columns and the rows consumed by the
        // B step.
        a = a2.view((r_j, s_j), (m - r_j, n - s_j)).clone_owned();
        b = b2.view((r_j, s_j), (m - r_j, n - s_j)).clone_owned();
    }
    Ok(SweepOutcome {
        s_seq,
        r_seq,
        rest_a: a,
        rest_b: b,
    })
}

/// Converts a sweep outcome into (right minimal indices, zero Jordan sizes).
fn sweep_structure(outcome: &SweepOutcome) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut right = Vec::new();
    let mut jordan = Vec::new();
    let steps = outcome.s_seq.len();
    for j in 0..steps {
        let s_j = outcome.s_seq[j];
        let r_j = outcome.r_seq[j];
        let s_next = if j + 1 < steps {
            outcome.s_seq[j + 1]
        } else {
            0
        };
        for _ in 0..(s_j - r_j) {
            right.push(j); // minimal index j, found at step j+1
        }
        if r_j < s_next {
            return Err(Error::StaircaseInconsistent(format!(
                "nullity sequence not monotone at step {j}"
            )));
        }
        for _ in 0..(r_j - s_next) {
            jordan.push(j + 1); // Jordan block of size j+1
        }
    }
    Ok((right, jordan))
}

/// Computes the complete Kronecker structure of the pencil, with rank
/// tolerance `tol` relative to the norms of `A` and `B`.
///
/// Each structural piece comes from a compression sweep over the *original*
/// pencil (never over a previously deflated block, whose couplings could
/// migrate structure between parts):
///
/// * sweep on `(A, B)`: right minimal indices and the zero-eigenvalue Jordan
///   blocks,
/// * sweep on `(B, A)`: blocks of the infinite eigenvalue (and the right
///   indices again, as a consistency check),
/// * sweep on `(Aᴴ, Bᴴ)`: left minimal indices (and the zero structure
///   again),
/// * finite nonzero eigenvalues: candidates are proposed by compressing the
///   pencil to a square regular one of size equal to the normal rank with
///   random orthonormal bases, solving the compressed eigenproblem, and
///   verifying every candidate with a shifted sweep on `(A − μB, B)`. A
///   candidate that is not a genuine eigenvalue yields no Jordan blocks and
///   is discarded.
///
/// The final block sizes must tile the pencil exactly, so a missed or
/// double-counted eigenvalue surfaces as [`Error::StaircaseInconsistent`]
/// rather than a silently wrong structure. Eigenvalues within about `1e−3`
/// (relative) of zero or infinity are attributed to the zero/infinite
/// structure; genuinely distinct eigenvalues closer than that are outside
/// the resolution of the default tolerance.
pub fn staircase(pencil: &Pencil, tol: f64) -> Result<KroneckerStructure> {
    let (rows, cols) = (pencil.nrows(), pencil.ncols());
    assert!(rows >= 1 && cols >= 1, "pencil must be nonempty");
    let tau_a = tol * pencil.a.norm().max(f64::MIN_POSITIVE);
    let tau_b = tol * pencil.b.norm().max(f64::MIN_POSITIVE);

    // Right minimal indices and zero-eigenvalue structure.
    let sweep_rz = compression_sweep(&pencil.a, &pencil.b, tau_a, tau_b)?;
    let (right, zero_jordan) = sweep_structure(&sweep_rz)?;

    // Infinite structure from the reversed pencil B − λA.
    let sweep_inf = compression_sweep(&pencil.b, &pencil.a, tau_b, tau_a)?;
    let (right_again, infinite) = sweep_structure(&sweep_inf)?;
    if right_again != right {
        return Err(Error::StaircaseInconsistent(
            "right indices from the reversed sweep disagree".into(),
        ));
    }

    // Left minimal indices from the conjugate transpose.
    let sweep_left = compression_sweep(&pencil.a.adjoint(), &pencil.b.adjoint(), tau_a, tau_b)?;
    let (left, zero_again) = sweep_structure(&sweep_left)?;
    if zero_again != zero_jordan {
        return Err(Error::StaircaseInconsistent(
            "zero structure from the transposed sweep disagrees".into(),
        ));
    }

    // Finite nonzero eigenvalues.
    let normal_rank = cols - right.len();
    let mut finite: Vec<(Complex64, Vec<usize>)> = Vec::new();
    if normal_rank > 0 {
        let candidates = eigenvalue_candidates(&pencil.a, &pencil.b, normal_rank)?;
        for mu in candidates {
            let shifted = &pencil.a - &pencil.b * mu;
            // Threshold relative to the inputs of the subtraction, not to the
            // (possibly cancelling) result.
            let tau_shift =
                tol * (pencil.a.norm() + mu.norm() * pencil.b.norm()).max(f64::MIN_POSITIVE);
            let sweep_mu = compression_sweep(&shifted, &pencil.b, tau_shift, tau_b)?;
            let (right_mu, sizes) = sweep_structure(&sweep_mu)?;
            if right_mu != right {
                return Err(Error::StaircaseInconsistent(format!(
                    "right indices changed under the shift λ → λ + {mu}: {right_mu:?} vs {right:?} (sizes {sizes:?})"
                )));
            }
            if sizes.is_empty() {
                continue; // spurious candidate from the compression
            }
            match finite
                .iter_mut()
                .find(|(c, _)| (*c - mu).norm() <= 1e-4 * c.norm().max(1.0))
            {
                Some((_, existing)) => {
                    if *existing != sizes {
                        return Err(Error::StaircaseInconsistent(format!(
                            "conflicting Jordan sizes near eigenvalue {mu}"
                        )));
                    }
                }
                None => finite.push((mu, sizes)),
            }
        }
    }

    KroneckerStructure::new(right, left, zero_jordan, infinite, finite, rows, cols)
}

/// Proposes finite nonzero eigenvalue candidates by compressing the pencil
/// to a `ρ×ρ` regular one with random orthonormal bases (`ρ` = normal rank).
/// Generic compressions preserve every finite eigenvalue and add random
/// spurious values, which the caller filters by verification. Internally
/// seeded, hence deterministic.
fn eigenvalue_candidates(
    a: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
    rho: usize,
) -> Result<Vec<Complex64>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(0x5EED_CA5E);
    let (m, n) = a.shape();
    let scale_ratio = {
        let na = a.norm();
        let nb = b.norm();
        if nb > 0.0 && na > 0.0 {
            na / nb
        } else {
            1.0
        }
    };
    let lo_cut = 1e-3 * scale_ratio.min(1.0);
    let hi_cut = 1e3 * scale_ratio.max(1.0);
    let w1 = random_orthonormal(m, rho, &mut rng);
    let w2 = random_orthonormal(n, rho, &mut rng);
    let ap = w1.adjoint() * a * &w2;
    let bp = w1.adjoint() * b * &w2;
    let thetas = pair_eigenvalues(&ap, &bp, scale_ratio, &mut rng)?;
    // Cluster: defective eigenvalues scatter like eps^(1/l); the cluster
    // mean is accurate to first order.
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for v in thetas {
        if !(v.norm() > lo_cut && v.norm() < hi_cut) {
            continue; // belongs to the zero or infinite structure
        }
        match clusters
            .iter_mut()
            .find(|(c, _)| (*c - v).norm() <= 1e-4 * c.norm().max(1.0))
        {
            Some((center, count)) => {
                let total = *count as f64;
                *center = (*center * total + v) / (total + 1.0);
                *count += 1;
            }
            None => clusters.push((v, 1)),
        }
    }
    Ok(clusters.into_iter().map(|(c, _)| c).collect())
}

/// Random matrix with orthonormal columns.
fn random_orthonormal(
    rows: usize,
    cols: usize,
    rng: &mut impl Rng,
) -> DMatrix<Complex64> {
    let raw = DMatrix::<Complex64>::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let q = full_qr_q(&raw);
    q.columns(0, cols).clone_owned()
}

/// Eigenvalues of a square pencil `(Ap, Bp)` without a QZ routine: pick a
/// random shift σ that is not an eigenvalue, compute the eigenvalues θ of
/// `(Ap − σBp)⁻¹ Bp` and map back through `μ = σ + 1/θ`; `θ ≈ 0` encodes the
/// infinite eigenvalues of the pair.
fn pair_eigenvalues(
    ap: &DMatrix<Complex64>,
    bp: &DMatrix<Complex64>,
    scale_ratio: f64,
    rng: &mut impl Rng,
) -> Result<Vec<Complex64>> {
    let q = ap.nrows();
    if q == 0 {
        return Ok(Vec::new());
    }
    for _ in 0..8 {
        let sigma = Complex64::from_polar(
            scale_ratio.max(1e-6) * rng.gen_range(0.6..1.7),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let shifted = ap - bp * sigma;
        let Some(inv) = shifted.clone().try_inverse() else {
            continue;
        };
        let m = inv * bp;
        let schur = m.clone().schur();
        let Some(thetas) = schur.eigenvalues() else {
            continue;
        };
        let floor = 1e-14 * m.norm().max(1.0);
        let mut out = Vec::with_capacity(q);
        for theta in thetas.iter() {
            if theta.norm() <= floor {
                continue; // infinite eigenvalue of the pair
            }
            out.push(sigma + Complex64::new(1.0, 0.0) / theta);
        }
        return Ok(out);
    }
    Err(Error::StaircaseInconsistent(
        "could not find a regular shift for the compressed pencil".into(),
    ))
}

/// Exact spectrum oracle: normal rank and the monic gcd of all minors of
/// maximal order of `A − λB`, as an exact polynomial in `λ`.
///
/// The roots of the gcd are exactly the finite eigenvalues, with total
/// algebraic multiplicity; the gcd is a monomial `c·λ^k` precisely when the
/// only possible finite eigenvalue is zero.
pub fn spectrum_oracle(pencil: &Pencil) -> Result<(usize, LaurentPoly<Rational>)> {
    if !pencil.is_exact() {
        return Err(Error::ExactDataRequired("spectrum_oracle"));
    }
    let lam = pencil.lambda_matrix()?;
    let max_k = lam.nrows().min(lam.ncols());
    for k in (1..=max_k).rev() {
        let minors = lam.minors(k)?;
        if minors.iter().any(|p| !p.is_zero()) {
            let gcd = poly_gcd(&minors)?;
            return Ok((k, gcd));
        }
    }
    Ok((0, LaurentPoly::zero()))
}

/// `true` when the gcd certifies "rank can only drop at λ = 0": the gcd is a
/// single term `c·λ^k`.
pub fn gcd_is_monomial(gcd: &LaurentPoly<Rational>) -> bool {
    !gcd.is_zero() && gcd.is_monomial()
}
