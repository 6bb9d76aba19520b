//! Generators, sampling systems and the problem definition.
//!
//! A [`SamplingProblem`] fixes a compactly supported generator `φ`, a linear
//! time-invariant system `ℒ`, and the oversampling parameters `r < s`
//! (sampling period `T = r/s < 1`). All sample values `(ℒφ)(n + (j−1)r/s)`
//! are exact rationals, which keeps the whole decision pipeline exact.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};


use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::rational::{ceil_i64, floor_i64, rat, rat_int, Rational};

/// Compactly supported generator `φ` with support `[0, suppLen]`.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    /// Cardinal B-spline of order `m` (degree `m − 1`), support `[0, m]`.
    BSpline { order: u32 },
    /// Piecewise polynomial on consecutive intervals. `breakpoints` has one
    /// more entry than `pieces`; piece `i` holds the coefficients of the
    /// polynomial on `[breakpoints[i], breakpoints[i+1])` in ascending powers
    /// of `t`.
    Piecewise {
        breakpoints: Vec<Rational>,
        pieces: Vec<Vec<Rational>>,
    },
}

impl GeneratorSpec {
    pub fn bspline(order: u32) -> Self {
        GeneratorSpec::BSpline { order }
    }

    /// Right endpoint of the support interval `[0, suppLen]`.
    pub fn support_len(&self) -> Rational {
        match self {
            GeneratorSpec::BSpline { order } => rat_int(*order as i64),
            GeneratorSpec::Piecewise { breakpoints, .. } => {
                breakpoints.last().cloned().unwrap_or_else(Rational::zero)
            }
        }
    }

    /// Checks the structural invariants: positive support, contiguous pieces
    /// and continuity on all of ℝ (including the support endpoints).
    pub fn validate(&self) -> Result<()> {
        match self {
            GeneratorSpec::BSpline { order } => {
                if *order < 2 {
                    return Err(Error::InvalidProblem(
                        "B-spline generator must have order >= 2 to be continuous".into(),
                    ));
                }
                Ok(())
            }
            GeneratorSpec::Piecewise {
                breakpoints,
                pieces,
            } => {
                if breakpoints.len() != pieces.len() + 1 || pieces.is_empty() {
                    return Err(Error::InvalidProblem(
                        "piecewise generator needs one more breakpoint than pieces".into(),
                    ));
                }
                if !breakpoints[0].is_zero() {
                    return Err(Error::InvalidProblem(
                        "piecewise support must start at 0".into(),
                    ));
                }
                for w in breakpoints.windows(2) {
                    if w[1] <= w[0] {
                        return Err(Error::InvalidProblem(
                            "breakpoints must be strictly increasing".into(),
                        ));
                    }
                }
                // Continuity at every breakpoint, with value 0 at both ends.
                let mut prev = Rational::zero();
                for (i, piece) in pieces.iter().enumerate() {
                    let at_left = eval_piece(piece, &breakpoints[i]);
                    if at_left != prev {
                        return Err(Error::InvalidProblem(format!(
                            "generator discontinuous at breakpoint {}",
                            breakpoints[i]
                        )));
                    }
                    prev = eval_piece(piece, &breakpoints[i + 1]);
                }
                if !prev.is_zero() {
                    return Err(Error::InvalidProblem(
                        "generator must vanish at the right end of its support".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Exact pointwise evaluation; zero outside the support.
    pub fn eval(&self, t: &Rational) -> Rational {
        match self {
            GeneratorSpec::BSpline { order } => bspline_eval(*order, t),
            GeneratorSpec::Piecewise {
                breakpoints,
                pieces,
            } => {
                if t < &breakpoints[0] || t >= breakpoints.last().unwrap() {
                    return Rational::zero();
                }
                for (i, piece) in pieces.iter().enumerate() {
                    if t >= &breakpoints[i] && t < &breakpoints[i + 1] {
                        return eval_piece(piece, t);
                    }
                }
                Rational::zero()
            }
        }
    }
}

fn eval_piece(coeffs: &[Rational], t: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

/// Cardinal B-spline `N_m` of order `m` via the standard recurrence
/// `N_m(t) = (t·N_{m−1}(t) + (m−t)·N_{m−1}(t−1)) / (m−1)`, `N_1 = χ_[0,1)`,
/// in exact arithmetic.
pub fn bspline_eval(order: u32, t: &Rational) -> Rational {
    if *t < Rational::zero() || *t >= rat_int(order as i64) {
        return Rational::zero();
    }
    if order == 1 {
        return Rational::one();
    }
    let m = rat_int(order as i64);
    let shifted = t - Rational::one();
    let left = t * bspline_eval(order - 1, t);
    let right = (&m - t) * bspline_eval(order - 1, &shifted);
    (left + right) / (m - Rational::one())
}

/// Linear time-invariant system `ℒ` acting on the generator.
#[derive(Clone, Debug, PartialEq)]
pub enum SystemSpec {
    Identity,
    /// `(ℒf)(t) = f(t + offset)`. Only `offset ≤ 0` keeps the support of
    /// `ℒφ` inside `[0, N]`.
    Shift { offset: Rational },
    /// Finite combination of delays: `(ℒf)(t) = Σ_k w_k · f(t − d_k)` over
    /// taps `(d_k, w_k)`.
    FirCombination { taps: Vec<(Rational, Rational)> },
}

impl SystemSpec {
    pub fn shift(offset: Rational) -> Self {
        SystemSpec::Shift { offset }
    }

    /// Exact value of `(ℒφ)(t)`.
    pub fn apply(&self, generator: &GeneratorSpec, t: &Rational) -> Rational {
        match self {
            SystemSpec::Identity => generator.eval(t),
            SystemSpec::Shift { offset } => generator.eval(&(t + offset)),
            SystemSpec::FirCombination { taps } => {
                let mut acc = Rational::zero();
                for (delay, weight) in taps {
                    if !weight.is_zero() {
                        acc += weight * generator.eval(&(t - delay));
                    }
                }
                acc
            }
        }
    }

    /// Hull `[lo, hi]` containing the support of `ℒφ`.
    pub fn support_hull(&self, generator: &GeneratorSpec) -> Result<(Rational, Rational)> {
        let len = generator.support_len();
        match self {
            SystemSpec::Identity => Ok((Rational::zero(), len)),
            SystemSpec::Shift { offset } => Ok((-offset.clone(), len - offset)),
            SystemSpec::FirCombination { taps } => {
                let active: Vec<&Rational> = taps
                    .iter()
                    .filter(|(_, w)| !w.is_zero())
                    .map(|(d, _)| d)
                    .collect();
                if active.is_empty() {
                    return Err(Error::DegenerateProblem(
                        "system has no nonzero taps".into(),
                    ));
                }
                let dmin = active.iter().min().unwrap();
                let dmax = active.iter().max().unwrap();
                Ok(((*dmin).clone(), len + *dmax))
            }
        }
    }
}

/// A fully validated sampling problem: generator, system, oversampling
/// parameters `r < s`, and the recomputed support bound `N` with
/// `supp ℒφ ⊆ [0, N]` and `1 < N ≤ r`.
#[derive(Clone, Debug)]
pub struct SamplingProblem {
    generator: GeneratorSpec,
    system: SystemSpec,
    r: usize,
    s: usize,
    support_bound: usize,
}

impl SamplingProblem {
    /// Validates the data and recomputes `N` from the generator and system
    /// supports. Fails unless `1 < N ≤ r < s`.
    pub fn new(generator: GeneratorSpec, system: SystemSpec, r: usize, s: usize) -> Result<Self> {
        generator.validate()?;
        if r == 0 || s <= r {
            return Err(Error::InvalidProblem(format!(
                "need 0 < r < s, got r = {r}, s = {s}"
            )));
        }
        let (lo, hi) = system.support_hull(&generator)?;
        if lo.is_negative() {
            return Err(Error::InvalidProblem(format!(
                "system moves the support of Lφ below 0 (left end {lo}); \
                 only delays keep the support in [0, N]"
            )));
        }
        let n = ceil_i64(&hi);
        if n <= 1 {
            return Err(Error::InvalidProblem(format!(
                "support bound N = {n} must exceed 1"
            )));
        }
        let n = n as usize;
        if n > r {
            return Err(Error::InvalidProblem(format!(
                "support bound N = {n} exceeds r = {r}; pick r >= N"
            )));
        }
        Ok(SamplingProblem {
            generator,
            system,
            r,
            s,
            support_bound: n,
        })
    }

    pub fn generator(&self) -> &GeneratorSpec {
        &self.generator
    }

    pub fn system(&self) -> &SystemSpec {
        &self.system
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// The support bound `N` (smallest integer with `supp ℒφ ⊆ [0, N]`).
    pub fn support_bound(&self) -> usize {
        self.support_bound
    }

    /// Sampling period `T = r/s`.
    pub fn period(&self) -> Rational {
        rat(self.r as i64, self.s as i64)
    }

    /// `(ℒφ)(t)`, exactly.
    pub fn lphi(&self, t: &Rational) -> Rational {
        self.system.apply(&self.generator, t)
    }
}

/// Exact sample table: `channel(j)[n] = (ℒφ)(n + (j−1)·r/s)` for `j = 1..=s`,
/// holding only the nonzero values.
#[derive(Clone, Debug)]
pub struct SampleTable {
    channels: Vec<BTreeMap<i64, Rational>>,
}

impl SampleTable {
    /// Nonzero samples for channel `j` (1-based).
    pub fn channel(&self, j: usize) -> &BTreeMap<i64, Rational> {
        &self.channels[j - 1]
    }

    pub fn num_channels(&self) -> usize {
        self.channels.len()
    }

    pub fn value(&self, j: usize, n: i64) -> Rational {
        self.channels[j - 1]
            .get(&n)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

/// Tabulates `(ℒφ)(n + (j−1)·r/s)` for all `j` and every `n` that can give a
/// nonzero value.
pub fn lphi_samples(problem: &SamplingProblem) -> Result<SampleTable> {
    let (lo, hi) = problem.system.support_hull(&problem.generator)?;
    let mut channels = Vec::with_capacity(problem.s);
    for j in 1..=problem.s {
        let offset = rat(((j - 1) * problem.r) as i64, problem.s as i64);
        let n_lo = floor_i64(&(&lo - &offset)) - 1;
        let n_hi = ceil_i64(&(&hi - &offset)) + 1;
        let mut channel = BTreeMap::new();
        for n in n_lo..=n_hi {
            let t = rat_int(n) + &offset;
            let v = problem.lphi(&t);
            if !v.is_zero() {
                channel.insert(n, v);
            }
        }
        channels.push(channel);
    }
    Ok(SampleTable { channels })
}

/// The exact symbol of the sampling problem: the Laurent polynomials
/// `g_j(z) = Σ_n (ℒφ)(n + (j−1)r/s) zⁿ`, from which the `s×r` matrix
/// `G(z) = [g_j(W^{k−1} z)]` (with `W = e^{−2πi/r}`) is materialized
/// numerically on demand.
#[derive(Clone, Debug)]
pub struct GSymbol {
    rows: Vec<LaurentPoly<Rational>>,
    r: usize,
    s: usize,
}

impl GSymbol {
    pub fn rows(&self) -> &[LaurentPoly<Rational>] {
        &self.rows
    }

    /// Row polynomial `g_j`, 1-based.
    pub fn row(&self, j: usize) -> &LaurentPoly<Rational> {
        &self.rows[j - 1]
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Numeric `G(z)`: entry `(j, k) = g_j(W^{k−1} z)`, `W = e^{−2πi/r}`.
    pub fn evaluate(&self, z: Complex64) -> DMatrix<Complex64> {
        let w = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI / self.r as f64);
        DMatrix::from_fn(self.s, self.r, |j, k| {
            self.rows[j].eval_complex(w.powu(k as u32) * z)
        })
    }

    /// Numeric `G(w)` on the frequency line: `z = e^{−2πi w}`.
    pub fn evaluate_at_freq(&self, w: f64) -> DMatrix<Complex64> {
        self.evaluate(Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * w))
    }
}

/// Builds the exact symbol `g_1, …, g_s` of the problem.
pub fn build_g(problem: &SamplingProblem) -> Result<GSymbol> {
    let table = lphi_samples(problem)?;
    let mut rows = Vec::with_capacity(problem.s);
    for j in 1..=problem.s {
        let poly =
            LaurentPoly::from_terms(table.channel(j).iter().map(|(&n, v)| (n, v.clone())));
        if poly.is_zero() {
            return Err(Error::DegenerateProblem(format!(
                "sample row g_{j} is identically zero"
            )));
        }
        rows.push(poly);
    }
    Ok(GSymbol {
        rows,
        r: problem.r,
        s: problem.s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadratic_spline_problem() -> SamplingProblem {
        SamplingProblem::new(GeneratorSpec::bspline(3), SystemSpec::Identity, 4, 5).unwrap()
    }

    #[test]
    fn quadratic_spline_point_values() {
        let g = GeneratorSpec::bspline(3);
        assert_eq!(g.eval(&rat(4, 5)), rat(8, 25));
        assert_eq!(g.eval(&rat(9, 5)), rat(33, 50));
        assert_eq!(g.eval(&rat(14, 5)), rat(1, 50));
        assert_eq!(g.eval(&rat(7, 2)), rat_int(0));
        assert_eq!(g.eval(&rat(-1, 10)), rat_int(0));
    }

    #[test]
    fn bspline_outside_support_is_zero() {
        for order in 2..=5u32 {
            let g = GeneratorSpec::bspline(order);
            assert_eq!(g.eval(&rat_int(order as i64)), rat_int(0));
            assert_eq!(g.eval(&rat_int(-1)), rat_int(0));
        }
    }

    #[test]
    fn bspline_matches_float_recurrence() {
        // Independent float de Boor evaluation as an oracle.
        fn float_bspline(order: u32, t: f64) -> f64 {
            if !(0.0..order as f64).contains(&t) {
                return 0.0;
            }
            if order == 1 {
                return 1.0;
            }
            let m = order as f64;
            (t * float_bspline(order - 1, t) + (m - t) * float_bspline(order - 1, t - 1.0))
                / (m - 1.0)
        }
        for order in 2..=5u32 {
            for i in 0..40 {
                let t = rat(i, 10);
                let exact = crate::rational::to_f64(&bspline_eval(order, &t));
                let float = float_bspline(order, i as f64 / 10.0);
                assert!((exact - float).abs() < 1e-12, "order {order}, t = {t}");
            }
        }
    }

    #[test]
    fn piecewise_hat_function_validates() {
        // The order-2 B-spline written out as a piecewise polynomial.
        let hat = GeneratorSpec::Piecewise {
            breakpoints: vec![rat_int(0), rat_int(1), rat_int(2)],
            pieces: vec![
                vec![rat_int(0), rat_int(1)],  // t
                vec![rat_int(2), rat_int(-1)], // 2 − t
            ],
        };
        hat.validate().unwrap();
        for i in 0..=20 {
            let t = rat(i, 10);
            assert_eq!(hat.eval(&t), bspline_eval(2, &t));
        }
    }

    #[test]
    fn discontinuous_piecewise_rejected() {
        let bad = GeneratorSpec::Piecewise {
            breakpoints: vec![rat_int(0), rat_int(1)],
            pieces: vec![vec![rat_int(1)]], // constant 1, jumps at both ends
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn problem_validation_rules() {
        // order-1 B-spline is discontinuous
        assert!(
            SamplingProblem::new(GeneratorSpec::bspline(1), SystemSpec::Identity, 3, 4).is_err()
        );
        // N = 3 > r = 2
        assert!(
            SamplingProblem::new(GeneratorSpec::bspline(3), SystemSpec::Identity, 2, 3).is_err()
        );
        // s must exceed r
        assert!(
            SamplingProblem::new(GeneratorSpec::bspline(3), SystemSpec::Identity, 4, 4).is_err()
        );
        // forward shift moves support below zero
        assert!(SamplingProblem::new(
            GeneratorSpec::bspline(3),
            SystemSpec::shift(rat(1, 2)),
            4,
            5
        )
        .is_err());
        // delay (negative offset) is fine and bumps N to 4
        let p = SamplingProblem::new(
            GeneratorSpec::bspline(3),
            SystemSpec::shift(rat(-1, 2)),
            4,
            5,
        )
        .unwrap();
        assert_eq!(p.support_bound(), 4);
    }

    #[test]
    fn sample_table_matches_toy_values() {
        let p = quadratic_spline_problem();
        let table = lphi_samples(&p).unwrap();
        assert_eq!(table.value(1, 1), rat(1, 2));
        assert_eq!(table.value(5, -3), rat(1, 50));
        // Identity, j = 1: values are φ(n), zero for n ≤ 0 and n ≥ N.
        assert_eq!(table.value(1, 0), rat_int(0));
        assert_eq!(table.value(1, 3), rat_int(0));
    }

    #[test]
    fn toy_symbol_rows_match_known_polynomials() {
        let p = quadratic_spline_problem();
        let g = build_g(&p).unwrap();
        let expect = |terms: &[(i64, (i64, i64))]| {
            LaurentPoly::from_terms(terms.iter().map(|&(e, (n, d))| (e, rat(n, d))))
        };
        assert_eq!(*g.row(1), expect(&[(1, (1, 2)), (2, (1, 2))]));
        assert_eq!(
            *g.row(2),
            expect(&[(0, (8, 25)), (1, (33, 50)), (2, (1, 50))])
        );
        assert_eq!(
            *g.row(3),
            expect(&[(-1, (9, 50)), (0, (37, 50)), (1, (2, 25))])
        );
        assert_eq!(
            *g.row(4),
            expect(&[(-2, (2, 25)), (-1, (37, 50)), (0, (9, 50))])
        );
        assert_eq!(
            *g.row(5),
            expect(&[(-3, (1, 50)), (-2, (33, 50)), (-1, (8, 25))])
        );
    }

    #[test]
    fn symbol_row_term_counts_and_valuations() {
        // g_1 has at most N−1 terms, the others at most N; valuations stay
        // above −(r−1).
        for (r, s) in [(3usize, 4usize), (4, 5), (4, 6), (5, 6)] {
            for order in 2..=3u32 {
                let p = SamplingProblem::new(
                    GeneratorSpec::bspline(order),
                    SystemSpec::Identity,
                    r,
                    s,
                )
                .unwrap();
                let n = p.support_bound();
                let g = build_g(&p).unwrap();
                assert!(g.row(1).num_terms() <= n - 1);
                for j in 2..=s {
                    assert!(g.row(j).num_terms() <= n);
                    assert!(g.row(j).valuation().unwrap() >= -(r as i64 - 1));
                }
            }
        }
    }

    #[test]
    fn numeric_matrix_agrees_with_direct_fourier_sum() {
        // Entry (j,k) of G(w) must equal the 1-periodized Fourier sum
        // Σ_n (ℒφ)(n+(j−1)r/s) e^{−2πi n (w+(k−1)/r)} computed straight from
        // the sample table.
        let p = quadratic_spline_problem();
        let table = lphi_samples(&p).unwrap();
        let g = build_g(&p).unwrap();
        for &w in &[0.0, 0.13, 0.71] {
            let mat = g.evaluate_at_freq(w);
            for j in 1..=p.s() {
                for k in 0..p.r() {
                    let wk = w + k as f64 / p.r() as f64;
                    let mut direct = Complex64::new(0.0, 0.0);
                    for (&n, v) in table.channel(j) {
                        let phase = -2.0 * std::f64::consts::PI * n as f64 * wk;
                        direct += crate::rational::to_f64(v) * Complex64::from_polar(1.0, phase);
                    }
                    assert!((mat[(j - 1, k)] - direct).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn fir_combination_support_and_values() {
        let taps = vec![(rat_int(0), rat_int(1)), (rat_int(1), rat(1, 2))];
        let sys = SystemSpec::FirCombination { taps };
        let p = SamplingProblem::new(GeneratorSpec::bspline(2), sys, 3, 4).unwrap();
        assert_eq!(p.support_bound(), 3);
        // (ℒφ)(3/2) = φ(3/2) + 1/2 φ(1/2)
        assert_eq!(p.lphi(&rat(3, 2)), rat(1, 2) + rat(1, 4));
    }
}
