//! Registry of named identity checks with machine-readable reports.
//!
//! Every invariant the library promises is runnable here by name, grouped
//! into suites that mirror the modules. Random instances come from a seeded
//! generator, so a report is a pure function of `(name, order, seed)`.

use std::collections::BTreeMap;
use std::fmt::Display;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::fps::{
    a_hat_s, b_s_operator, b_s_operator_general, b_s_stirling_form, gf_degenerate,
    gf_degenerate_sym, gf_eulerian, gf_frobenius_euler, gf_generalized_fubini, gf_two_var_fubini,
    lemma_check, operator_identity_check, Series,
};
use crate::kernel::{binomial, factorial, fmt_rat, rat, rat_i, rat_pow, BiPoly, Rat};
use crate::polyfam::{
    eulerian, frobenius_euler_seq, fubini_classic, fubini_gen, fubini_gen_degenerate,
    fubini_two_var,
};
use crate::stirling::{stirling1, stirling2, stirling2_degenerate, stirling2_r};
use crate::stochastic::{gamma_moment_reduce_sym, moment_monte_carlo, moment_partial_sum};
use crate::transform::{
    backward_fill, bernoulli, cora_check, entry_from_column, entry_from_row, forward_fill,
    fubini_inverse, fubini_transform, ones, SequenceWindow,
};
use crate::{Error, Result};

/// Parameters shared by every check. `x1`/`x2`, when set, add an explicit
/// pair to the two-point convolution sample set.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub order: usize,
    pub seed: u64,
    pub x1: Option<Rat>,
    pub x2: Option<Rat>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            order: 12,
            seed: 7,
            x1: None,
            x2: None,
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub order: usize,
    pub pass: bool,
    pub first_mismatch: Option<String>,
}

/// Collects parameters and the first mismatch while a check runs.
struct Check {
    params: BTreeMap<String, String>,
    mismatch: Option<String>,
}

impl Check {
    fn new() -> Self {
        Check {
            params: BTreeMap::new(),
            mismatch: None,
        }
    }

    fn param(&mut self, key: &str, val: impl Display) {
        self.params.insert(key.to_string(), val.to_string());
    }

    fn eq<T: PartialEq + Display>(&mut self, ctx: impl Fn() -> String, lhs: &T, rhs: &T) {
        if self.mismatch.is_none() && lhs != rhs {
            self.mismatch = Some(format!("{}: left = {lhs}, right = {rhs}", ctx()));
        }
    }

    fn ensure(&mut self, ctx: impl Fn() -> String, ok: bool) {
        if self.mismatch.is_none() && !ok {
            self.mismatch = Some(ctx());
        }
    }

    /// Records an internal error as a failure and yields `None`.
    fn try_in<T>(&mut self, ctx: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                if self.mismatch.is_none() {
                    self.mismatch = Some(format!("{ctx}: {e}"));
                }
                None
            }
        }
    }
}

fn rng_for(seed: u64, name: &str) -> ChaCha8Rng {
    // fold the identity name into the seed so --identity runs match suites
    let mut h: u64 = 0xcbf29ce484222325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Small-numerator rational: numerator in `-9..=9`, denominator in `1..=9`.
pub fn small_rat(rng: &mut impl Rng) -> Rat {
    rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=9))
}

/// Same, excluding zero.
pub fn small_rat_nonzero(rng: &mut impl Rng) -> Rat {
    loop {
        let r = small_rat(rng);
        if r != rat_i(0) {
            return r;
        }
    }
}

fn small_window(rng: &mut impl Rng, len: usize) -> SequenceWindow<Rat> {
    SequenceWindow::from_values((0..len).map(|_| small_rat(rng)).collect())
}

// ---- stirling suite ----

fn check_first_kind_egf(cfg: &VerifyConfig, ck: &mut Check) {
    let order = cfg.order.max(12);
    ck.param("n_max", order);
    for k in 0..=order {
        let gf = Series::log1p("t", order)
            .pow(k as u32)
            .scale(&factorial(k).recip());
        for n in 0..=order {
            ck.eq(
                || format!("n={n} k={k}"),
                &(stirling1(n as u32, k as i64) / factorial(n)),
                &gf.coeff(n),
            );
        }
    }
}

fn check_r_stirling_egf(_cfg: &VerifyConfig, ck: &mut Check) {
    let order = 10usize;
    ck.param("n_max", order);
    ck.param("r_max", 3);
    let expm1 = Series::from_fn("t", order, |n| {
        if n == 0 {
            rat_i(0)
        } else {
            factorial(n).recip()
        }
    });
    for r in 0..=3u32 {
        let ert = Series::exp_linear("t", &rat_i(r as i64), order);
        for k in 0..=order {
            let gf = ert.mul(&expm1.pow(k as u32)).scale(&factorial(k).recip());
            for n in 0..=order {
                ck.eq(
                    || format!("n={n} k={k} r={r}"),
                    &(stirling2_r(n as u32 + r, k as i64 + r as i64, r) / factorial(n)),
                    &gf.coeff(n),
                );
            }
        }
    }
}

fn check_r_stirling_shift(_cfg: &VerifyConfig, ck: &mut Check) {
    ck.param("n_max", 12);
    ck.param("r_max", 4);
    for r in 1..=4u32 {
        for n in r..=12u32 {
            for k in 0..=n as i64 {
                ck.eq(
                    || format!("n={n} k={k} r={r}"),
                    &stirling2_r(n, k, r),
                    &(stirling2_r(n, k, r - 1)
                        - rat_i(r as i64 - 1) * stirling2_r(n - 1, k, r - 1)),
                );
            }
        }
    }
}

fn check_stirling_orthogonality(_cfg: &VerifyConfig, ck: &mut Check) {
    ck.param("n_max", 12);
    for n in 0..=12u32 {
        for m in 0..=12i64 {
            let mut acc = rat_i(0);
            for k in 0..=n as i64 {
                acc += stirling1(n, k) * stirling2(k as u32, m);
            }
            let expect = if n as i64 == m { rat_i(1) } else { rat_i(0) };
            ck.eq(|| format!("n={n} m={m}"), &acc, &expect);
        }
    }
}

fn check_degenerate_stirling_at_zero(_cfg: &VerifyConfig, ck: &mut Check) {
    ck.param("n_max", 12);
    for n in 0..=12u32 {
        for k in 0..=n as i64 {
            ck.eq(
                || format!("n={n} k={k}"),
                &stirling2_degenerate(n, k, &rat_i(0)),
                &stirling2(n, k),
            );
        }
    }
}

// ---- transform suite ----

const GRID_XS: [(i64, i64); 3] = [(1, 1), (-1, 1), (2, 3)];
const GRID_YS: [(i64, i64); 3] = [(1, 1), (-2, 1), (1, 2)];

fn check_row_closed_form(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "row-closed-form");
    ck.param("instances", 12 * GRID_XS.len() * GRID_YS.len());
    ck.param("length", 10);
    for inst in 0..12 {
        let initial = small_window(&mut rng, 10);
        for (xp, xq) in GRID_XS {
            for (yp, yq) in GRID_YS {
                let (x, y) = (rat(xp, xq), rat(yp, yq));
                let Some(grid) = ck.try_in("forward_fill", forward_fill(&initial, &x, &y)) else {
                    return;
                };
                for (n, m, v) in grid.iter_entries() {
                    let Some(closed) =
                        ck.try_in("entry_from_row", entry_from_row(n, m, &initial, &x, &y))
                    else {
                        return;
                    };
                    ck.eq(
                        || format!("inst={inst} n={n} m={m} x={x} y={y}"),
                        &closed,
                        v,
                    );
                }
            }
        }
    }
}

fn check_column_closed_form(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "column-closed-form");
    ck.param("instances", 12 * GRID_XS.len() * GRID_YS.len());
    ck.param("length", 10);
    for inst in 0..12 {
        let final_col = small_window(&mut rng, 10);
        for (xp, xq) in GRID_XS {
            for (yp, yq) in GRID_YS {
                let (x, y) = (rat(xp, xq), rat(yp, yq));
                let Some(grid) = ck.try_in("backward_fill", backward_fill(&final_col, &x, &y))
                else {
                    return;
                };
                for (n, m, v) in grid.iter_entries() {
                    let Some(closed) = ck.try_in(
                        "entry_from_column",
                        entry_from_column(n, m, &final_col, &x, &y),
                    ) else {
                        return;
                    };
                    ck.eq(
                        || format!("inst={inst} n={n} m={m} x={x} y={y}"),
                        &closed,
                        v,
                    );
                }
            }
        }
    }
}

fn check_grid_round_trip(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "grid-round-trip");
    ck.param("instances", 12 * GRID_XS.len() * GRID_YS.len());
    for _ in 0..12 {
        let alpha = small_window(&mut rng, 10);
        for (xp, xq) in GRID_XS {
            for (yp, yq) in GRID_YS {
                let (x, y) = (rat(xp, xq), rat(yp, yq));
                let Some(forward) = ck.try_in("forward_fill", forward_fill(&alpha, &x, &y)) else {
                    return;
                };
                let Some(back) =
                    ck.try_in("backward_fill", backward_fill(&forward.column0(), &x, &y))
                else {
                    return;
                };
                ck.ensure(
                    || format!("row 0 not recovered at x={x} y={y}"),
                    back.row0() == alpha,
                );
            }
        }
    }
}

fn check_ones_column_fubini(_cfg: &VerifyConfig, ck: &mut Check) {
    ck.param("n_max", 8);
    let initial = SequenceWindow::constant(BiPoly::one(), 9);
    let Some(grid) = ck.try_in(
        "forward_fill",
        forward_fill(&initial, &BiPoly::var_x(), &BiPoly::var_y()),
    ) else {
        return;
    };
    for n in 0..=8usize {
        ck.eq(
            || format!("n={n}"),
            grid.entry(n, 0).unwrap(),
            &fubini_gen(n as u32),
        );
    }
}

fn check_chen_specialization(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "chen-specialization");
    ck.param("instances", 10);
    ck.param("length", 10);
    for inst in 0..10 {
        let initial = small_window(&mut rng, 10);
        let Some(grid) = ck.try_in(
            "forward_fill",
            forward_fill(&initial, &rat_i(-1), &rat_i(1)),
        ) else {
            return;
        };
        // independent fill straight from a_{n+1,m} = -(m+1) a_{n,m+1} + m a_{n,m}
        let l = initial.len();
        let mut rows = vec![initial.values().to_vec()];
        for n in 1..l {
            let prev = &rows[n - 1];
            let row: Vec<Rat> = (0..(l - n))
                .map(|m| -rat_i(m as i64 + 1) * &prev[m + 1] + rat_i(m as i64) * &prev[m])
                .collect();
            rows.push(row);
        }
        for (n, m, v) in grid.iter_entries() {
            ck.eq(|| format!("inst={inst} n={n} m={m}"), v, &rows[n][m]);
        }
    }
}

fn check_bernoulli_recurrence(_cfg: &VerifyConfig, ck: &mut Check) {
    ck.param("n_max", 21);
    let b = bernoulli(21);
    let v = b.values();
    ck.eq(|| "B_0".into(), &v[0], &rat_i(1));
    ck.eq(|| "B_1".into(), &v[1], &rat(-1, 2));
    ck.eq(|| "B_4".into(), &v[4], &rat(-1, 30));
    for n in 1..=10usize {
        ck.eq(|| format!("B_{} odd", 2 * n + 1), &v[2 * n + 1], &rat_i(0));
    }
    for n in 1..=20u32 {
        let mut acc = rat_i(0);
        for k in 0..=n as usize {
            acc += binomial(n + 1, k as i64) * &v[k];
        }
        ck.eq(|| format!("sum C(n+1,k) B_k at n={n}"), &acc, &rat_i(0));
    }
}

fn check_transform_duality(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "transform-duality");
    ck.param("instances", 10);
    ck.param("nm_max", 6);
    for inst in 0..10 {
        let initial = small_window(&mut rng, 13);
        let x = small_rat_nonzero(&mut rng);
        let y = small_rat_nonzero(&mut rng);
        for n in 0..=6usize {
            for m in 0..=6usize {
                let Some(ok) = ck.try_in("cora_check", cora_check(&initial, &x, &y, n, m)) else {
                    return;
                };
                ck.ensure(|| format!("inst={inst} n={n} m={m} x={x} y={y}"), ok);
            }
        }
    }
}

fn check_fubini_transform_round_trip(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "fubini-transform-round-trip");
    ck.param("instances", 105);
    ck.param("length", 12);
    for z in [rat_i(1), rat_i(2), rat(-1, 2)] {
        for inst in 0..35 {
            let alpha = small_window(&mut rng, 12);
            let beta = fubini_transform(&alpha, &z);
            let Some(back) = ck.try_in("fubini_inverse", fubini_inverse(&beta, &z)) else {
                return;
            };
            ck.ensure(|| format!("inst={inst} z={z}"), back == alpha);
        }
    }
}

// ---- polyfam suite ----

fn check_homogenization(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "homogenization");
    ck.param("n_max", 12);
    ck.param("points", 10);
    for n in 0..=12u32 {
        let f = fubini_gen(n);
        let w = fubini_classic(n);
        for pt in 0..10 {
            let x = small_rat(&mut rng);
            let y = small_rat_nonzero(&mut rng);
            // F_n(x, y) = y^n ω_n(x/y)
            ck.eq(
                || format!("forward n={n} point {pt}"),
                &f.eval(&x, &y),
                &(rat_pow(&y, n as i64) * w.eval(&(&x / &y), &rat_i(0))),
            );
            // ω_n(x) = y^{-n} F_n(xy, y)
            ck.eq(
                || format!("dual n={n} point {pt}"),
                &w.eval(&x, &rat_i(0)),
                &(rat_pow(&y, -(n as i64)) * f.eval(&(&x * &y), &y)),
            );
        }
    }
}

fn check_bell_integral(_cfg: &VerifyConfig, ck: &mut Check) {
    ck.param("n_max", 12);
    for n in 0..=12u32 {
        ck.ensure(
            || format!("symbolic gamma reduction n={n}"),
            gamma_moment_reduce_sym(n),
        );
    }
}

fn check_two_var_fubini_gf(_cfg: &VerifyConfig, ck: &mut Check) {
    ck.param("n_max", 10);
    let gf = gf_two_var_fubini(10);
    for n in 0..=10usize {
        ck.eq(
            || format!("n={n}"),
            &gf.egf_coeff(n),
            &fubini_two_var(n as u32),
        );
    }
}

fn check_two_var_alternating_sum(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "two-var-alternating-sum");
    ck.param("n_max", 10);
    ck.param("points", 10);
    for n in 0..=10u32 {
        let f = fubini_gen(n);
        for pt in 0..10 {
            let x = small_rat(&mut rng);
            let y = small_rat_nonzero(&mut rng);
            let ratio = &x / &y;
            let mut acc = rat_i(0);
            for k in 0..=n {
                acc += rat_pow(&y, k as i64)
                    * binomial(n, k as i64)
                    * rat_pow(&rat_i(-1), k as i64)
                    * fubini_two_var(n - k).eval(&ratio, &y);
            }
            ck.eq(
                || format!("n={n} point {pt}"),
                &f.eval(&x, &y),
                &(rat_pow(&y, n as i64) * acc),
            );
        }
    }
}

fn check_binomial_shift_recurrence(_cfg: &VerifyConfig, ck: &mut Check) {
    // denominator-cleared: (y+x) F_{n+1} = x sum_k C(n,k) y^{n-k} (y F_k + F_{k+1})
    ck.param("n_max", 12);
    let x = BiPoly::var_x();
    let y = BiPoly::var_y();
    for n in 0..=12u32 {
        let lhs = y.add(&x).mul(&fubini_gen(n + 1));
        let mut sum = BiPoly::zero();
        for k in 0..=n {
            let inner = y.mul(&fubini_gen(k)).add(&fubini_gen(k + 1));
            let weight = BiPoly::monomial(binomial(n, k as i64), 0, n - k);
            sum = sum.add(&weight.mul(&inner));
        }
        ck.eq(|| format!("n={n}"), &lhs, &x.mul(&sum));
    }
}

fn check_self_convolution_recurrence(_cfg: &VerifyConfig, ck: &mut Check) {
    // F_{n+1} + y F_n = (x+y) sum_k C(n,k) F_k F_{n-k}
    ck.param("n_max", 12);
    let x = BiPoly::var_x();
    let y = BiPoly::var_y();
    for n in 0..=12u32 {
        let lhs = fubini_gen(n + 1).add(&y.mul(&fubini_gen(n)));
        let mut sum = BiPoly::zero();
        for k in 0..=n {
            sum = sum.add(
                &fubini_gen(k)
                    .mul(&fubini_gen(n - k))
                    .scale(&binomial(n, k as i64)),
            );
        }
        ck.eq(|| format!("n={n}"), &lhs, &x.add(&y).mul(&sum));
    }
}

fn check_two_point_convolution(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "two-point-convolution");
    ck.param("n_max", 10);
    ck.param("points", 10);
    let mut triples: Vec<(Rat, Rat, Rat)> = Vec::new();
    if let (Some(x1), Some(x2)) = (&cfg.x1, &cfg.x2) {
        if x1 != x2 {
            triples.push((x1.clone(), x2.clone(), rat_i(1)));
            ck.param("x1", fmt_rat(x1));
            ck.param("x2", fmt_rat(x2));
        }
    }
    while triples.len() < 10 {
        let x1 = small_rat(&mut rng);
        let x2 = small_rat(&mut rng);
        if x1 != x2 {
            triples.push((x1, x2, small_rat(&mut rng)));
        }
    }
    for n in 0..=10u32 {
        for (i, (x1, x2, y)) in triples.iter().enumerate() {
            let mut lhs = rat_i(0);
            for k in 0..=n {
                lhs += binomial(n, k as i64)
                    * fubini_gen(k).eval(x1, y)
                    * fubini_gen(n - k).eval(x2, y);
            }
            let rhs = (x2 * fubini_gen(n).eval(x2, y) - x1 * fubini_gen(n).eval(x1, y)) / (x2 - x1);
            ck.eq(|| format!("n={n} triple {i}"), &lhs, &rhs);
        }
    }
}

fn check_eulerian_gf(_cfg: &VerifyConfig, ck: &mut Check) {
    ck.param("n_max", 10);
    let gf = gf_eulerian(10);
    for n in 0..=10usize {
        ck.eq(|| format!("n={n}"), &gf.egf_coeff(n), &eulerian(n as u32));
    }
}

fn check_eulerian_bridge(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "eulerian-bridge");
    ck.param("n_max", 10);
    ck.param("points", 10);
    for n in 0..=10u32 {
        let f = fubini_gen(n);
        let a = eulerian(n);
        for pt in 0..10 {
            let x = small_rat_nonzero(&mut rng);
            let y = small_rat(&mut rng);
            // F_n(x, y) = x^n A_n(1 + y/x)
            ck.eq(
                || format!("forward n={n} point {pt}"),
                &f.eval(&x, &y),
                &(rat_pow(&x, n as i64) * a.eval(&(rat_i(1) + &y / &x), &rat_i(0))),
            );
            // A_n(t) = ((t-1)/y)^n F_n(y/(t-1), y), t != 1, y != 0
            let t = loop {
                let t = small_rat(&mut rng);
                if t != rat_i(1) {
                    break t;
                }
            };
            let ynz = small_rat_nonzero(&mut rng);
            let tm1 = &t - rat_i(1);
            ck.eq(
                || format!("inverse-1 n={n} point {pt}"),
                &a.eval(&t, &rat_i(0)),
                &(rat_pow(&(&tm1 / &ynz), n as i64) * f.eval(&(&ynz / &tm1), &ynz)),
            );
            // A_n(t) = x^{-n} F_n(x, x(t-1))
            ck.eq(
                || format!("inverse-2 n={n} point {pt}"),
                &a.eval(&t, &rat_i(0)),
                &(rat_pow(&x, -(n as i64)) * f.eval(&x, &(&x * &tm1))),
            );
        }
    }
}

fn check_frobenius_euler_gf(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "frobenius-euler-gf");
    ck.param("n_max", 10);
    ck.param("points", 5);
    for pt in 0..5 {
        let u = loop {
            let u = small_rat(&mut rng);
            if u != rat_i(1) {
                break u;
            }
        };
        let y0 = small_rat(&mut rng);
        let Some(gf) = ck.try_in("gf_frobenius_euler", gf_frobenius_euler(10, &u, &y0)) else {
            return;
        };
        let Some(h) = ck.try_in("frobenius_euler_seq", frobenius_euler_seq(10, &u, &y0)) else {
            return;
        };
        for (n, hn) in h.iter().enumerate() {
            ck.eq(
                || format!("point {pt} n={n} u={u} y0={y0}"),
                hn,
                &gf.egf_coeff(n),
            );
        }
    }
}

fn check_frobenius_euler_bridge(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "frobenius-euler-bridge");
    ck.param("n_max", 10);
    ck.param("points", 10);
    for n in 0..=10u32 {
        let f = fubini_gen(n);
        for pt in 0..10 {
            // x != 0 and x != -y keep u = 1 + y/x away from the pole and 0
            let (x, y) = loop {
                let x = small_rat_nonzero(&mut rng);
                let y = small_rat_nonzero(&mut rng);
                if x != -y.clone() {
                    break (x, y);
                }
            };
            let u = rat_i(1) + &y / &x;
            let Some(h) = ck.try_in("frobenius_euler_seq", frobenius_euler_seq(n, &u, &y)) else {
                return;
            };
            let mut acc = rat_i(0);
            for k in 0..=n as usize {
                acc += rat_pow(&y, k as i64)
                    * binomial(n, k as i64)
                    * rat_pow(&rat_i(-1), k as i64)
                    * &h[n as usize - k];
            }
            ck.eq(
                || format!("n={n} point {pt} x={x} y={y}"),
                &f.eval(&x, &y),
                &(rat_pow(&y, n as i64) * acc),
            );
        }
    }
}

fn check_degenerate_gf(_cfg: &VerifyConfig, ck: &mut Check) {
    ck.param("n_max", 10);
    ck.param("lambdas", "0, 1/2, 1, -1/3");
    for lambda in [rat_i(0), rat(1, 2), rat_i(1), rat(-1, 3)] {
        let gf = gf_degenerate_sym(10, &lambda);
        for n in 0..=10usize {
            ck.eq(
                || format!("lambda={lambda} n={n}"),
                &gf.egf_coeff(n),
                &fubini_gen_degenerate(n as u32, &lambda),
            );
        }
        // pointwise route agrees with the symbolic one
        let (x, y) = (rat(2, 3), rat(-3, 2));
        let Some(pw) = ck.try_in("gf_degenerate", gf_degenerate(10, &lambda, &x, &y)) else {
            return;
        };
        for n in 0..=10usize {
            ck.eq(
                || format!("pointwise lambda={lambda} n={n}"),
                &pw.egf_coeff(n),
                &fubini_gen_degenerate(n as u32, &lambda).eval(&x, &y),
            );
        }
    }
}

// ---- fps suite ----

fn check_series_axioms(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "series-axioms");
    let order = cfg.order.clamp(4, 12);
    ck.param("order", order);
    ck.param("instances", 20);
    for inst in 0..20 {
        let mut draw = || Series::from_fn("t", order, |_| small_rat(&mut rng));
        let (a, b, c) = (draw(), draw(), draw());
        ck.ensure(
            || format!("inst={inst}: add commutes"),
            a.add(&b) == b.add(&a),
        );
        ck.ensure(
            || format!("inst={inst}: mul commutes"),
            a.mul(&b) == b.mul(&a),
        );
        ck.ensure(
            || format!("inst={inst}: mul associates"),
            a.mul(&b).mul(&c) == a.mul(&b.mul(&c)),
        );
        ck.ensure(
            || format!("inst={inst}: mul distributes"),
            a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)),
        );
        let lhs = a.mul(&b).derivative();
        let rhs = a
            .derivative()
            .mul(&b.truncated(order - 1))
            .add(&a.truncated(order - 1).mul(&b.derivative()));
        ck.ensure(|| format!("inst={inst}: Leibniz rule"), lhs == rhs);
    }
}

fn check_gf_coefficients(_cfg: &VerifyConfig, ck: &mut Check) {
    ck.param("n_max", 10);
    let gf = gf_generalized_fubini(10);
    for n in 0..=10usize {
        ck.eq(|| format!("n={n}"), &gf.egf_coeff(n), &fubini_gen(n as u32));
    }
}

const RATIONAL_PAIRS: [((i64, i64), (i64, i64)); 5] = [
    ((1, 1), (1, 1)),
    ((2, 1), (1, 1)),
    ((1, 1), (3, 1)),
    ((-1, 1), (1, 1)),
    ((2, 3), (-1, 2)),
];

fn check_column_egf(_cfg: &VerifyConfig, ck: &mut Check) {
    ck.param("s_max", 3);
    ck.param("n_max", 8);
    ck.param("points", RATIONAL_PAIRS.len());
    for ((xp, xq), (yp, yq)) in RATIONAL_PAIRS {
        let (x, y) = (rat(xp, xq), rat(yp, yq));
        let Some(grid) = ck.try_in("forward_fill", forward_fill(&ones(12), &x, &y)) else {
            return;
        };
        for s in 0..=3usize {
            let Some(series) = ck.try_in("b_s_operator", b_s_operator(s, 8, &x, &y)) else {
                return;
            };
            for n in 0..=8usize.min(11 - s) {
                ck.eq(
                    || format!("s={s} n={n} x={x} y={y}"),
                    &series.egf_coeff(n),
                    grid.entry(n, s).unwrap(),
                );
            }
        }
    }
}

fn check_column_egf_stirling_form(_cfg: &VerifyConfig, ck: &mut Check) {
    ck.param("s_max", 3);
    ck.param("order", 10);
    ck.param("points", RATIONAL_PAIRS.len());
    for ((xp, xq), (yp, yq)) in RATIONAL_PAIRS {
        let (x, y) = (rat(xp, xq), rat(yp, yq));
        for s in 0..=3usize {
            let Some(op) = ck.try_in("b_s_operator", b_s_operator(s, 10, &x, &y)) else {
                return;
            };
            let Some(st) = ck.try_in("b_s_stirling_form", b_s_stirling_form(s, 10, &x, &y)) else {
                return;
            };
            ck.ensure(
                || format!("s={s} x={x} y={y}: operator and Stirling forms differ"),
                op == st,
            );
        }
    }
}

fn check_column_egf_truncated_ogf(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "column-egf-truncated-ogf");
    ck.param("s_max", 2);
    ck.param("length", 12);
    ck.param("instances", 3);
    for inst in 0..3 {
        let initial = small_window(&mut rng, 12);
        for ((xp, xq), (yp, yq)) in [((1, 1), (1, 1)), ((2, 3), (-1, 2))] {
            let (x, y) = (rat(xp, xq), rat(yp, yq));
            let Some(grid) = ck.try_in("forward_fill", forward_fill(&initial, &x, &y)) else {
                return;
            };
            for s in 0..=2usize {
                let exact_to = initial.len() - 1 - s;
                let Some(series) = ck.try_in(
                    "b_s_operator_general",
                    b_s_operator_general(s, exact_to, &initial, &x, &y),
                ) else {
                    return;
                };
                for n in 0..=exact_to {
                    ck.eq(
                        || format!("inst={inst} s={s} n={n} x={x} y={y}"),
                        &series.egf_coeff(n),
                        grid.entry(n, s).unwrap(),
                    );
                }
            }
        }
    }
}

fn check_row_ogf(_cfg: &VerifyConfig, ck: &mut Check) {
    ck.param("s_max", 3);
    ck.param("m_max", 6);
    ck.param("points", RATIONAL_PAIRS.len());
    for ((xp, xq), (yp, yq)) in RATIONAL_PAIRS {
        let (x, y) = (rat(xp, xq), rat(yp, yq));
        for s in 0..=3usize {
            let len = 6 + s + 1;
            let Some(grid) = ck.try_in("forward_fill", forward_fill(&ones(len + s), &x, &y)) else {
                return;
            };
            let Some(series) = ck.try_in("a_hat_s", a_hat_s(s, 6, &grid.column0(), &x, &y)) else {
                return;
            };
            for m in 0..=6usize {
                ck.eq(
                    || format!("s={s} m={m} x={x} y={y}"),
                    &series.coeff(m),
                    grid.entry(s, m).unwrap(),
                );
            }
        }
    }
}

fn check_geometric_operator(cfg: &VerifyConfig, ck: &mut Check) {
    let order = cfg.order.max(12);
    ck.param("n_max", 6);
    ck.param("order", order);
    for y in [rat_i(1), rat_i(2), rat(-1, 2)] {
        for n in 0..=6u32 {
            let Some(ok) = ck.try_in(
                "operator_identity_check",
                operator_identity_check(n, order, &y),
            ) else {
                return;
            };
            ck.ensure(|| format!("n={n} y={y}"), ok);
        }
    }
}

fn check_derivative_lemma(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "derivative-lemma");
    let order = cfg.order.max(12);
    ck.param("order", order);
    ck.param("points", 6);
    let mut points = vec![(rat_i(1), rat_i(1))];
    while points.len() < 6 {
        points.push((small_rat_nonzero(&mut rng), small_rat_nonzero(&mut rng)));
    }
    for (i, (x, y)) in points.iter().enumerate() {
        let Some(ok) = ck.try_in("lemma_check", lemma_check(order, x, y)) else {
            return;
        };
        ck.ensure(|| format!("point {i} x={x} y={y}"), ok);
    }
}

fn check_probabilistic_gf(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "probabilistic-gf");
    ck.param("order", 10);
    ck.param("points", 5);
    for pt in 0..5 {
        let (x, y) = loop {
            let x = small_rat(&mut rng);
            let y = small_rat_nonzero(&mut rng);
            if &x + &y != rat_i(0) {
                break (x, y);
            }
        };
        let total = &x + &y;
        let p = &y / &total;
        let r = &x / &total;
        let den = Series::one("t", 10).sub(&Series::exp_linear("t", &y, 10).scale(&r));
        let Some(den_inv) = ck.try_in("reciprocal", den.reciprocal()) else {
            return;
        };
        let route = den_inv.scale(&p);
        let gf = gf_generalized_fubini(10);
        for n in 0..=10usize {
            ck.eq(
                || format!("point {pt} n={n} x={x} y={y}"),
                &route.coeff(n),
                &gf.coeff(n).eval(&x, &y),
            );
        }
    }
}

fn check_alternating_gf(cfg: &VerifyConfig, ck: &mut Check) {
    let mut rng = rng_for(cfg.seed, "alternating-gf");
    ck.param("order", 10);
    ck.param("points", 5);
    for pt in 0..5 {
        let x = small_rat(&mut rng);
        let y = small_rat_nonzero(&mut rng);
        // e^{-t y^2} sum_n ω_n(x/y, y) (ty)^n / n!
        let ratio = &x / &y;
        let w = Series::from_fn("t", 10, |n| {
            fubini_two_var(n as u32).eval(&ratio, &y) * rat_pow(&y, n as i64) / factorial(n)
        });
        let route = Series::exp_linear("t", &(-(&y * &y)), 10).mul(&w);
        let gf = gf_generalized_fubini(10);
        for n in 0..=10usize {
            ck.eq(
                || format!("point {pt} n={n} x={x} y={y}"),
                &route.coeff(n),
                &gf.coeff(n).eval(&x, &y),
            );
        }
    }
}

// ---- stochastic suite ----

fn check_moment_partial_sum(_cfg: &VerifyConfig, ck: &mut Check) {
    use num::Signed;
    ck.param("n_max", 8);
    ck.param("points", 3);
    for (xp, yp) in [(1, 1), (2, 1), (1, 3)] {
        let (x, y) = (rat_i(xp), rat_i(yp));
        for n in 0..=8u32 {
            let exact = fubini_gen(n).eval(&x, &y);
            let Some((ms, cutoff)) = ck.try_in(
                "moment_partial_sum_to_tolerance",
                crate::stochastic::moment_partial_sum_to_tolerance(
                    n,
                    &x,
                    &y,
                    &rat(1, 1_000_000_000_000),
                ),
            ) else {
                return;
            };
            let bound = ms.tail_bound.clone().expect("bound present at tolerance");
            ck.ensure(
                || format!("n={n} x={x} y={y}: |sum - exact| > bound"),
                (&exact - &ms.value).abs() <= bound,
            );
            // bound decreases with the cutoff
            let Some(next) = ck.try_in(
                "moment_partial_sum",
                moment_partial_sum(n, &x, &y, cutoff + 8),
            ) else {
                return;
            };
            ck.ensure(
                || format!("n={n} x={x} y={y}: bound not decreasing"),
                next.tail_bound.expect("still bounded") < ms.tail_bound.unwrap(),
            );
        }
    }
}

fn check_moment_monte_carlo(cfg: &VerifyConfig, ck: &mut Check) {
    ck.param("n_max", 4);
    ck.param("samples", 100_000);
    for (xp, yp) in [(1, 1), (2, 1), (1, 3)] {
        let (x, y) = (rat_i(xp), rat_i(yp));
        for n in 0..=4u32 {
            let exact = crate::kernel::rat_to_f64(&fubini_gen(n).eval(&x, &y));
            let Some(mc) = ck.try_in(
                "moment_monte_carlo",
                moment_monte_carlo(n, &x, &y, 100_000, cfg.seed.wrapping_add(n as u64)),
            ) else {
                return;
            };
            let slack = if n == 0 { 1e-12 } else { 5.0 * mc.std_error };
            ck.ensure(
                || {
                    format!(
                        "n={n} x={x} y={y}: estimate {} vs exact {exact} (se {})",
                        mc.estimate, mc.std_error
                    )
                },
                (mc.estimate - exact).abs() <= slack,
            );
        }
    }
}

// ---- registry ----

type CheckFn = fn(&VerifyConfig, &mut Check);

const REGISTRY: &[(&str, &str, CheckFn)] = &[
    ("first-kind-egf", "stirling", check_first_kind_egf),
    ("r-stirling-egf", "stirling", check_r_stirling_egf),
    ("r-stirling-shift", "stirling", check_r_stirling_shift),
    (
        "stirling-orthogonality",
        "stirling",
        check_stirling_orthogonality,
    ),
    (
        "degenerate-stirling-at-zero",
        "stirling",
        check_degenerate_stirling_at_zero,
    ),
    ("row-closed-form", "transform", check_row_closed_form),
    ("column-closed-form", "transform", check_column_closed_form),
    ("grid-round-trip", "transform", check_grid_round_trip),
    ("ones-column-fubini", "transform", check_ones_column_fubini),
    (
        "chen-specialization",
        "transform",
        check_chen_specialization,
    ),
    (
        "bernoulli-recurrence",
        "transform",
        check_bernoulli_recurrence,
    ),
    ("transform-duality", "transform", check_transform_duality),
    (
        "fubini-transform-round-trip",
        "transform",
        check_fubini_transform_round_trip,
    ),
    ("homogenization", "polyfam", check_homogenization),
    ("bell-integral", "polyfam", check_bell_integral),
    ("two-var-fubini-gf", "polyfam", check_two_var_fubini_gf),
    (
        "two-var-alternating-sum",
        "polyfam",
        check_two_var_alternating_sum,
    ),
    (
        "binomial-shift-recurrence",
        "polyfam",
        check_binomial_shift_recurrence,
    ),
    (
        "self-convolution-recurrence",
        "polyfam",
        check_self_convolution_recurrence,
    ),
    (
        "two-point-convolution",
        "polyfam",
        check_two_point_convolution,
    ),
    ("eulerian-gf", "polyfam", check_eulerian_gf),
    ("eulerian-bridge", "polyfam", check_eulerian_bridge),
    ("frobenius-euler-gf", "polyfam", check_frobenius_euler_gf),
    (
        "frobenius-euler-bridge",
        "polyfam",
        check_frobenius_euler_bridge,
    ),
    ("degenerate-gf", "polyfam", check_degenerate_gf),
    ("series-axioms", "fps", check_series_axioms),
    ("gf-coefficients", "fps", check_gf_coefficients),
    ("column-egf", "fps", check_column_egf),
    (
        "column-egf-stirling-form",
        "fps",
        check_column_egf_stirling_form,
    ),
    (
        "column-egf-truncated-ogf",
        "fps",
        check_column_egf_truncated_ogf,
    ),
    ("row-ogf", "fps", check_row_ogf),
    ("geometric-operator", "fps", check_geometric_operator),
    ("derivative-lemma", "fps", check_derivative_lemma),
    ("probabilistic-gf", "fps", check_probabilistic_gf),
    ("alternating-gf", "fps", check_alternating_gf),
    ("moment-partial-sum", "stochastic", check_moment_partial_sum),
    ("moment-monte-carlo", "stochastic", check_moment_monte_carlo),
];

/// The suites, in registry order.
pub const SUITES: [&str; 5] = ["stirling", "transform", "polyfam", "fps", "stochastic"];

/// All identity names, in registry order.
pub fn identity_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|(name, _, _)| *name).collect()
}

/// Runs a single identity by name.
pub fn run_identity(name: &str, cfg: &VerifyConfig) -> Result<IdentityReport> {
    let (_, suite, f) = REGISTRY
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| Error::UnknownIdentity(name.to_string()))?;
    let mut ck = Check::new();
    f(cfg, &mut ck);
    Ok(IdentityReport {
        identity: name.to_string(),
        suite: suite.to_string(),
        params: ck.params,
        order: cfg.order,
        pass: ck.mismatch.is_none(),
        first_mismatch: ck.mismatch,
    })
}

/// Runs a whole suite (or `"all"`), in registry order.
pub fn run_suite(suite: &str, cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    if suite != "all" && !SUITES.contains(&suite) {
        return Err(Error::UnknownSuite(suite.to_string()));
    }
    let mut out = Vec::new();
    for (name, s, _) in REGISTRY {
        if suite == "all" || *s == suite {
            out.push(run_identity(name, cfg)?);
        }
    }
    Ok(out)
}
