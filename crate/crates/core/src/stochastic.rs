//! Geometric-moment representation: at `x, y > 0` the degree-`n` family
//! value equals `y^n E((X-1)^n)` for `X` geometric with success probability
//! `p = y/(x+y)`, i.e. the series `sum_{k>=0} p r^k (yk)^n` with
//! `r = x/(x+y)`. The partial sums here are exact rationals with a rigorous
//! tail bound; Monte Carlo estimation is seeded and deterministic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kernel::{rat_i, rat_pow, rat_to_f64, Rat};
use crate::polyfam::{bell, fubini_gen};
use crate::{Error, Result};

/// Geometric law `P(X = k) = p q^{k-1}` for `k >= 1`, with
/// `p = y/(x+y)` derived from positive parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricSpec {
    p: Rat,
    q: Rat,
}

impl GeometricSpec {
    pub fn from_params(x: &Rat, y: &Rat) -> Result<Self> {
        if *x <= rat_i(0) {
            return Err(Error::NonPositiveParameter("x"));
        }
        if *y <= rat_i(0) {
            return Err(Error::NonPositiveParameter("y"));
        }
        let p = y / (x + y);
        let q = rat_i(1) - &p;
        Ok(GeometricSpec { p, q })
    }

    pub fn p(&self) -> &Rat {
        &self.p
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    /// One inverse-transform draw (`X >= 1`).
    fn sample(&self, rng: &mut impl Rng) -> u64 {
        let q = rat_to_f64(&self.q);
        let u: f64 = rng.gen();
        let v = 1.0 - u; // in (0, 1]
        let k = (v.ln() / q.ln()).ceil();
        if k < 1.0 {
            1
        } else {
            k as u64
        }
    }
}

/// An exact partial sum together with its tail bound. `tail_bound` is `None`
/// when the ratio test is inconclusive at this cutoff (grow the cutoff);
/// `degenerate` flags the boundary `x = 0`, where the law collapses to a
/// point mass and only the exact sum is meaningful.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSum {
    pub value: Rat,
    pub tail_bound: Option<Rat>,
    pub degenerate: bool,
}

/// Exact `sum_{k=0}^{K} p r^k (yk)^n` with `p = y/(x+y)`, `r = x/(x+y)`.
///
/// Tail bound: the term ratio `t_{k+1}/t_k = r ((k+1)/k)^n` is decreasing,
/// so with `ρ = r ((K+2)/(K+1))^n < 1` the tail after `K` is dominated by
/// the geometric series `t_{K+1} / (1 - ρ)`. Requires `x >= 0`, `y > 0`;
/// `x = 0` is accepted (flagged degenerate) and sums to the point mass.
pub fn moment_partial_sum(n: u32, x: &Rat, y: &Rat, cutoff: usize) -> Result<MomentSum> {
    if *x < rat_i(0) {
        return Err(Error::NonPositiveParameter("x"));
    }
    if *y <= rat_i(0) {
        return Err(Error::NonPositiveParameter("y"));
    }
    let total = x + y;
    let p = y / &total;
    let r = x / &total;

    let term = |k: usize| -> Rat {
        let base = y * rat_i(k as i64);
        &p * rat_pow(&r, k as i64) * rat_pow(&base, n as i64)
    };

    let mut value = rat_i(0);
    for k in 0..=cutoff {
        value += term(k);
    }

    let step = crate::kernel::rat(cutoff as i64 + 2, cutoff as i64 + 1);
    let rho = &r * rat_pow(&step, n as i64);
    let tail_bound = if rho < rat_i(1) {
        Some(term(cutoff + 1) / (rat_i(1) - rho))
    } else {
        None
    };

    Ok(MomentSum {
        value,
        tail_bound,
        degenerate: *x == rat_i(0),
    })
}

/// Grows the cutoff until the tail bound drops below `tol`; returns the sum
/// and the cutoff used.
pub fn moment_partial_sum_to_tolerance(
    n: u32,
    x: &Rat,
    y: &Rat,
    tol: &Rat,
) -> Result<(MomentSum, usize)> {
    let mut cutoff = 8usize;
    loop {
        let ms = moment_partial_sum(n, x, y, cutoff)?;
        if let Some(bound) = &ms.tail_bound {
            if bound < tol {
                return Ok((ms, cutoff));
            }
        }
        cutoff *= 2;
        assert!(cutoff <= 1 << 22, "tail bound does not reach tolerance");
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
}

/// Empirical mean of `y^n (X-1)^n` over seeded geometric draws, with its
/// standard error. Fixed seeds reproduce the estimate exactly.
pub fn moment_monte_carlo(
    n: u32,
    x: &Rat,
    y: &Rat,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if samples == 0 {
        return Err(Error::ZeroSamples);
    }
    let spec = GeometricSpec::from_params(x, y)?;
    let yf = rat_to_f64(y);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for _ in 0..samples {
        let draw = spec.sample(&mut rng);
        let v = (yf * (draw - 1) as f64).powi(n as i32);
        sum += v;
        sum_sq += v * v;
    }
    let count = samples as f64;
    let mean = sum / count;
    let variance = ((sum_sq / count) - mean * mean).max(0.0) * count / (count - 1.0).max(1.0);
    Ok(MonteCarloEstimate {
        estimate: mean,
        std_error: (variance / count).sqrt(),
        samples,
    })
}

/// Pointwise gamma-moment reduction of the Bell integral representation:
/// replacing `λ^k` by `k!` under `y^n ∫ φ_n((x/y)λ) e^{-λ} dλ` turns the
/// right side into `y^n sum_k {n k} (x/y)^k k!`, which must equal the
/// family value at `(x, y)`. Fully exact; no quadrature.
pub fn gamma_moment_reduce(n: u32, x: &Rat, y: &Rat) -> Result<bool> {
    if *y == rat_i(0) {
        return Err(Error::NotInvertible("y"));
    }
    let coeffs = bell(n).coeffs_in_x().expect("bell is univariate");
    let ratio = x / y;
    let mut acc = rat_i(0);
    let mut kfact = rat_i(1);
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            kfact *= rat_i(k as i64);
        }
        acc += c * rat_pow(&ratio, k as i64) * &kfact;
    }
    acc *= rat_pow(y, n as i64);
    Ok(acc == fubini_gen(n).eval(x, y))
}

/// Symbolic form of the same reduction: `sum_k {n k} k! x^k y^{n-k}` built
/// from the Bell coefficients must equal the family polynomial.
pub fn gamma_moment_reduce_sym(n: u32) -> bool {
    use crate::kernel::BiPoly;
    let coeffs = bell(n).coeffs_in_x().expect("bell is univariate");
    let mut acc = BiPoly::zero();
    let mut kfact = rat_i(1);
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            kfact *= rat_i(k as i64);
        }
        acc = acc.add(&BiPoly::monomial(c * &kfact, k as u32, n - k as u32));
    }
    acc == fubini_gen(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;
    use num::Signed;

    #[test]
    fn spec_derivation() {
        let spec = GeometricSpec::from_params(&rat_i(1), &rat_i(1)).unwrap();
        assert_eq!(spec.p(), &rat(1, 2));
        assert_eq!(spec.q(), &rat(1, 2));
        assert!(GeometricSpec::from_params(&rat_i(0), &rat_i(1)).is_err());
        assert!(GeometricSpec::from_params(&rat_i(1), &rat(-1, 2)).is_err());
    }

    #[test]
    fn partial_sum_approaches_exact_value() {
        for (x, y) in [
            (rat_i(1), rat_i(1)),
            (rat_i(2), rat_i(1)),
            (rat_i(1), rat_i(3)),
        ] {
            for n in 0..=8u32 {
                let exact = fubini_gen(n).eval(&x, &y);
                let (ms, _) =
                    moment_partial_sum_to_tolerance(n, &x, &y, &rat(1, 1_000_000_000)).unwrap();
                let bound = ms.tail_bound.clone().unwrap();
                assert!((&exact - &ms.value).abs() <= bound, "n={n} x={x} y={y}");
            }
        }
    }

    #[test]
    fn tail_bound_shrinks_monotonically() {
        let x = rat_i(2);
        let y = rat_i(1);
        let n = 3;
        let mut prev: Option<Rat> = None;
        for cutoff in 20..40 {
            let ms = moment_partial_sum(n, &x, &y, cutoff).unwrap();
            let bound = ms.tail_bound.expect("past the ratio threshold");
            if let Some(p) = prev {
                assert!(bound < p, "cutoff={cutoff}");
            }
            prev = Some(bound);
        }
    }

    #[test]
    fn degenerate_point_mass_is_flagged() {
        let ms = moment_partial_sum(2, &rat_i(0), &rat_i(1), 4).unwrap();
        assert!(ms.degenerate);
        assert_eq!(ms.value, rat_i(0)); // F_2(0, 1) = 0
        assert_eq!(ms.tail_bound, Some(rat_i(0)));
        let ms0 = moment_partial_sum(0, &rat_i(0), &rat_i(1), 4).unwrap();
        assert_eq!(ms0.value, rat_i(1));
    }

    #[test]
    fn monte_carlo_basics() {
        let mc = moment_monte_carlo(0, &rat_i(1), &rat_i(1), 1000, 42).unwrap();
        assert_eq!(mc.estimate, 1.0);
        assert_eq!(mc.std_error, 0.0);

        let a = moment_monte_carlo(2, &rat_i(1), &rat_i(1), 10_000, 7).unwrap();
        let b = moment_monte_carlo(2, &rat_i(1), &rat_i(1), 10_000, 7).unwrap();
        assert_eq!(a, b);

        assert!(moment_monte_carlo(2, &rat_i(1), &rat_i(1), 0, 7).is_err());
        assert!(moment_monte_carlo(2, &rat_i(0), &rat_i(1), 10, 7).is_err());
    }

    #[test]
    fn monte_carlo_brackets_exact_value() {
        // F_2(1,1) = 3
        let mc = moment_monte_carlo(2, &rat_i(1), &rat_i(1), 1_000_000, 20260810).unwrap();
        assert!((mc.estimate - 3.0).abs() <= 5.0 * mc.std_error);
    }

    #[test]
    fn gamma_reduction_examples() {
        // n = 2: y^2 ((x/y) 1! + (x/y)^2 2!) = xy + 2x^2
        assert!(gamma_moment_reduce(2, &rat(3, 4), &rat(-5, 7)).unwrap());
        assert!(gamma_moment_reduce(0, &rat_i(2), &rat_i(3)).unwrap());
        for n in 0..=12u32 {
            assert!(gamma_moment_reduce_sym(n), "n={n}");
        }
        assert!(gamma_moment_reduce(2, &rat_i(1), &rat_i(0)).is_err());
    }
}
