//! Construction of pencils with a prescribed Kronecker structure.
//!
//! A [`KcfPlan`] lists the blocks of a Kronecker canonical form; it can be
//! materialized as the canonical block-diagonal pencil or planted behind
//! random unimodular row/column transformations. Planted pencils keep exact
//! rational data, so the staircase reduction can be validated against the
//! exact spectrum oracle on the same input.

use num_complex::Complex64;
use num_traits::One;
use rand::Rng;

use crate::pencil::{KroneckerStructure, Pencil};
use crate::rational::{rat, rat_int, RatMatrix, Rational};

/// Multiset of Kronecker blocks.
#[derive(Clone, Debug, Default)]
pub struct KcfPlan {
    /// Right singular blocks `L_ε` (size `ε×(ε+1)`).
    pub right: Vec<usize>,
    /// Left singular blocks `L_ηᵀ` (size `(η+1)×η`).
    pub left: Vec<usize>,
    /// Jordan blocks `J_l(0)` at the zero eigenvalue.
    pub zero_jordan: Vec<usize>,
    /// Nilpotent blocks `N_p` at the infinite eigenvalue.
    pub infinite: Vec<usize>,
    /// Jordan blocks at finite nonzero (rational) eigenvalues.
    pub finite: Vec<(Rational, Vec<usize>)>,
}

impl KcfPlan {
    /// Shape `(rows, cols)` of the canonical pencil.
    pub fn shape(&self) -> (usize, usize) {
        let regular: usize = self.zero_jordan.iter().sum::<usize>()
            + self.infinite.iter().sum::<usize>()
            + self
                .finite
                .iter()
                .map(|(_, s)| s.iter().sum::<usize>())
                .sum::<usize>();
        let rows = self.right.iter().sum::<usize>()
            + self.left.iter().map(|e| e + 1).sum::<usize>()
            + regular;
        let cols = self.right.iter().map(|e| e + 1).sum::<usize>()
            + self.left.iter().sum::<usize>()
            + regular;
        (rows, cols)
    }

    /// The canonical block-diagonal pencil `K_A − λK_B`.
    pub fn canonical(&self) -> (RatMatrix, RatMatrix) {
        let (rows, cols) = self.shape();
        let mut a = RatMatrix::zeros(rows, cols);
        let mut b = RatMatrix::zeros(rows, cols);
        let mut r0 = 0;
        let mut c0 = 0;
        for &eps in &self.right {
            // L_ε: A has ones on the superdiagonal, B on the diagonal.
            for i in 0..eps {
                a[(r0 + i, c0 + i + 1)] = Rational::one();
                b[(r0 + i, c0 + i)] = Rational::one();
            }
            r0 += eps;
            c0 += eps + 1;
        }
        for (mu, sizes) in &self.finite {
            for &l in sizes {
                for i in 0..l {
                    a[(r0 + i, c0 + i)] = mu.clone();
                    b[(r0 + i, c0 + i)] = Rational::one();
                    if i + 1 < l {
                        a[(r0 + i, c0 + i + 1)] = Rational::one();
                    }
                }
                r0 += l;
                c0 += l;
            }
        }
        for &l in &self.zero_jordan {
            for i in 0..l {
                b[(r0 + i, c0 + i)] = Rational::one();
                if i + 1 < l {
                    a[(r0 + i, c0 + i + 1)] = Rational::one();
                }
            }
            r0 += l;
            c0 += l;
        }
        for &p in &self.infinite {
            for i in 0..p {
                a[(r0 + i, c0 + i)] = Rational::one();
                if i + 1 < p {
                    b[(r0 + i, c0 + i + 1)] = Rational::one();
                }
            }
            r0 += p;
            c0 += p;
        }
        for &eta in &self.left {
            // L_ηᵀ: A has ones on the subdiagonal, B on the diagonal.
            for i in 0..eta {
                a[(r0 + i + 1, c0 + i)] = Rational::one();
                b[(r0 + i, c0 + i)] = Rational::one();
            }
            r0 += eta + 1;
            c0 += eta;
        }
        debug_assert_eq!((r0, c0), (rows, cols));
        (a, b)
    }

    /// The structure this plan encodes, for comparison against staircase
    /// output.
    pub fn expected_structure(&self) -> KroneckerStructure {
        let (rows, cols) = self.shape();
        let finite = self
            .finite
            .iter()
            .map(|(mu, sizes)| (Complex64::new(crate::rational::to_f64(mu), 0.0), sizes.clone()))
            .collect();
        KroneckerStructure::new(
            self.right.clone(),
            self.left.clone(),
            self.zero_jordan.clone(),
            self.infinite.clone(),
            finite,
            rows,
            cols,
        )
        .expect("plan is self-consistent")
    }

    /// Plants the structure behind random unimodular transformations
    /// `U·K·V`; the result carries exact rational data.
    pub fn plant(&self, rng: &mut impl Rng) -> Pencil {
        let (rows, cols) = self.shape();
        let (ka, kb) = self.canonical();
        let u = random_unimodular(rows, rng);
        let v = random_unimodular(cols, rng);
        let a = u.mul(&ka).mul(&v);
        let b = u.mul(&kb).mul(&v);
        Pencil::from_exact(a, b)
    }
}

/// Random integer matrix with determinant ±1: a product of elementary row
/// operations and swaps, entries kept small.
pub fn random_unimodular(n: usize, rng: &mut impl Rng) -> RatMatrix {
    let mut m = RatMatrix::identity(n);
    if n < 2 {
        return m;
    }
    let ops = 2 * n;
    for _ in 0..ops {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        match rng.gen_range(0..3u8) {
            0 | 1 => {
                // row_i += c * row_j
                let c = rat_int(*[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap());
                for col in 0..n {
                    let add = &c * &m[(j, col)];
                    m[(i, col)] += add;
                }
            }
            _ => {
                for col in 0..n {
                    let tmp = m[(i, col)].clone();
                    m[(i, col)] = m[(j, col)].clone();
                    m[(j, col)] = tmp;
                }
            }
        }
    }
    m
}

/// Random plan with `rows, cols ≤ max_dim` and at least one row and column.
/// Eigenvalues are drawn from a small pool of nonzero rationals.
pub fn random_plan(rng: &mut impl Rng, max_dim: usize) -> KcfPlan {
    let pool = [
        rat_int(1),
        rat_int(2),
        rat_int(-1),
        rat_int(3),
        rat(1, 2),
        rat(-3, 2),
    ];
    loop {
        let mut plan = KcfPlan::default();
        let mut used = Vec::new();
        for _ in 0..rng.gen_range(1..=4usize) {
            let (rows, cols) = plan.shape();
            if rows >= max_dim || cols >= max_dim {
                break;
            }
            let budget = max_dim - rows.max(cols);
            match rng.gen_range(0..5u8) {
                0 => plan.right.push(rng.gen_range(0..=budget.min(3).saturating_sub(1))),
                1 => plan.left.push(rng.gen_range(0..=budget.min(3).saturating_sub(1))),
                2 => plan.zero_jordan.push(rng.gen_range(1..=budget.min(3).max(1))),
                3 => plan.infinite.push(rng.gen_range(1..=budget.min(3).max(1))),
                _ => {
                    let mu = loop {
                        let cand = pool[rng.gen_range(0..pool.len())].clone();
                        if !used.contains(&cand) {
                            break cand;
                        }
                    };
                    used.push(mu.clone());
                    let sizes = vec![rng.gen_range(1..=budget.min(2).max(1))];
                    plan.finite.push((mu, sizes));
                }
            }
        }
        let (rows, cols) = plan.shape();
        if rows >= 1 && cols >= 1 && rows <= max_dim && cols <= max_dim {
            return plan;
        }
    }
}
