//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `--nocapture`). Everything is exact rational arithmetic;
//! "zero tolerance" means structural equality.
//!
//! Run with: `cargo test -p fubini-cli --test acceptance -- --nocapture`

use std::process::Command;

use fubini_kit::fps::Series;
use fubini_kit::fps::{gf_degenerate_sym, gf_generalized_fubini};
use fubini_kit::kernel::factorial;
use fubini_kit::kernel::{binomial, parse_rat, rat, rat_i, rat_to_f64, BiPoly, Rat};
use fubini_kit::polyfam::{fubini_gen, fubini_gen_degenerate};
use fubini_kit::stirling::{stirling1, stirling2, stirling2_r};
use fubini_kit::stochastic::{moment_monte_carlo, moment_partial_sum_to_tolerance};
use fubini_kit::transform::{
    backward_fill, entry_from_column, entry_from_row, forward_fill, fubini_inverse,
    fubini_transform, SequenceWindow,
};
use fubini_kit::verify::{run_identity, run_suite, VerifyConfig};

fn poly(terms: &[(i64, u32, u32)]) -> BiPoly {
    let mut out = BiPoly::zero();
    for &(c, dx, dy) in terms {
        out = out.add(&BiPoly::monomial(rat_i(c), dx, dy));
    }
    out
}

fn rat_abs(r: &Rat) -> Rat {
    if *r < rat_i(0) {
        -r.clone()
    } else {
        r.clone()
    }
}

/// Deterministic small rationals for the bulk random-instance criteria.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }
    fn rat(&mut self) -> Rat {
        let n = (self.next() % 19) as i64 - 9;
        let d = (self.next() % 9) as i64 + 1;
        rat(n, d)
    }
    fn window(&mut self, len: usize) -> SequenceWindow<Rat> {
        SequenceWindow::from_values((0..len).map(|_| self.rat()).collect())
    }
}

#[test]
fn criterion_1_golden_matrix() {
    let initial = SequenceWindow::constant(BiPoly::one(), 5);
    let grid = forward_fill(&initial, &BiPoly::var_x(), &BiPoly::var_y()).unwrap();
    let expected: [(usize, usize, BiPoly); 14] = [
        (0, 0, BiPoly::one()),
        (0, 1, BiPoly::one()),
        (0, 2, BiPoly::one()),
        (0, 3, BiPoly::one()),
        (1, 0, poly(&[(1, 1, 0)])),
        (1, 1, poly(&[(1, 0, 1), (2, 1, 0)])),
        (1, 2, poly(&[(2, 0, 1), (3, 1, 0)])),
        (1, 3, poly(&[(3, 0, 1), (4, 1, 0)])),
        (2, 0, poly(&[(2, 2, 0), (1, 1, 1)])),
        (2, 1, poly(&[(6, 2, 0), (6, 1, 1), (1, 0, 2)])),
        (2, 2, poly(&[(12, 2, 0), (15, 1, 1), (4, 0, 2)])),
        (3, 0, poly(&[(6, 3, 0), (6, 2, 1), (1, 1, 2)])),
        (3, 1, poly(&[(24, 3, 0), (36, 2, 1), (14, 1, 2), (1, 0, 3)])),
        (4, 0, poly(&[(24, 4, 0), (36, 3, 1), (14, 2, 2), (1, 1, 3)])),
    ];
    for (n, m, want) in &expected {
        assert_eq!(grid.entry(*n, *m).unwrap(), want, "entry ({n}, {m})");
    }
    println!("ACCEPTANCE C1 PASS: all-ones forward fill reproduces the displayed matrix exactly");
}

#[test]
fn criterion_2_bernoulli() {
    let out = Command::new(env!("CARGO_BIN_EXE_fubini"))
        .args(["bernoulli", "--n", "20"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut values: Vec<Rat> = Vec::new();
    for line in text.lines().skip(1) {
        let (_, v) = line.split_once(',').unwrap();
        values.push(parse_rat(v).unwrap());
    }
    assert_eq!(values.len(), 21);
    assert_eq!(values[0], rat_i(1));
    assert_eq!(values[1], rat(-1, 2));
    assert_eq!(values[4], rat(-1, 30));
    for n in 1..=9 {
        assert_eq!(values[2 * n + 1], rat_i(0), "B_{} = 0", 2 * n + 1);
    }
    for n in 1..=20u32 {
        let mut acc = rat_i(0);
        for k in 0..=n as usize {
            acc += binomial(n + 1, k as i64) * &values[k];
        }
        assert_eq!(acc, rat_i(0), "sum C({},k) B_k", n + 1);
    }
    println!("ACCEPTANCE C2 PASS: bernoulli --n 20 exact values and recurrence");
}

#[test]
fn criterion_3_closed_form_equals_recurrence() {
    let start = std::time::Instant::now();
    let mut lcg = Lcg(0x5eed_c0de);
    let params = [
        (rat_i(1), rat_i(1)),
        (rat_i(-1), rat_i(-2)),
        (rat(2, 3), rat(1, 2)),
        (rat_i(1), rat(1, 2)),
        (rat(2, 3), rat_i(-2)),
    ];
    let mut forward_instances = 0;
    let mut backward_instances = 0;
    for inst in 0..20 {
        let window = lcg.window(10);
        for (x, y) in &params {
            let grid = forward_fill(&window, x, y).unwrap();
            for (n, m, v) in grid.iter_entries() {
                assert_eq!(
                    &entry_from_row(n, m, &window, x, y).unwrap(),
                    v,
                    "forward inst={inst} n={n} m={m}"
                );
            }
            forward_instances += 1;

            let grid = backward_fill(&window, x, y).unwrap();
            for (n, m, v) in grid.iter_entries() {
                assert_eq!(
                    &entry_from_column(n, m, &window, x, y).unwrap(),
                    v,
                    "backward inst={inst} n={n} m={m}"
                );
            }
            backward_instances += 1;
        }
    }
    assert!(forward_instances >= 100 && backward_instances >= 100);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE C3 PASS: closed forms match fills on {} grids in {elapsed:?}",
        forward_instances + backward_instances
    );
}

#[test]
fn criterion_4_transform_round_trip() {
    let mut lcg = Lcg(0xf00d);
    let mut instances = 0;
    for z in [rat_i(1), rat_i(2), rat(-1, 2)] {
        for _ in 0..35 {
            let alpha = lcg.window(12);
            let beta = fubini_transform(&alpha, &z);
            let back = fubini_inverse(&beta, &z).unwrap();
            assert_eq!(back, alpha, "z={z}");
            instances += 1;
        }
    }
    assert!(instances >= 100);
    println!("ACCEPTANCE C4 PASS: inverse ∘ transform = identity on {instances} sequences");
}

#[test]
fn criterion_5_gf_coefficient_oracle() {
    let gf = gf_generalized_fubini(10);
    for n in 0..=10usize {
        assert_eq!(gf.egf_coeff(n), fubini_gen(n as u32), "n={n}");
    }
    for lambda in [rat_i(0), rat(1, 2), rat_i(1), rat(-1, 3)] {
        let gf = gf_degenerate_sym(10, &lambda);
        for n in 0..=10usize {
            assert_eq!(
                gf.egf_coeff(n),
                fubini_gen_degenerate(n as u32, &lambda),
                "lambda={lambda} n={n}"
            );
        }
    }
    println!(
        "ACCEPTANCE C5 PASS: generating-function coefficients match both families symbolically"
    );
}

#[test]
fn criterion_6_identity_suite() {
    let cfg = VerifyConfig::default();
    for name in [
        "two-var-alternating-sum",
        "binomial-shift-recurrence",
        "self-convolution-recurrence",
        "two-point-convolution",
        "geometric-operator",
        "derivative-lemma",
        "column-egf",
        "column-egf-stirling-form",
        "row-ogf",
        "eulerian-bridge",
        "frobenius-euler-bridge",
    ] {
        let report = run_identity(name, &cfg).unwrap();
        assert!(
            report.pass,
            "{name}: {}",
            report.first_mismatch.as_deref().unwrap_or("?")
        );
    }
    // the whole suite passes in-process...
    assert!(run_suite("all", &cfg).unwrap().iter().all(|r| r.pass));
    // ...and through the binary, which must exit 0.
    let out = Command::new(env!("CARGO_BIN_EXE_fubini"))
        .args(["verify", "--suite", "all", "--order", "12", "--seed", "7"])
        .output()
        .unwrap();
    assert!(out.status.success(), "verify --suite all exited nonzero");
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    println!("ACCEPTANCE C6 PASS: identity suite green; `verify --suite all` exits 0");
}

#[test]
fn criterion_7_probabilistic() {
    let tol = parse_rat("1/100000000000000000000").unwrap(); // 10^-20
    for (xp, yp) in [(1, 1), (2, 1), (1, 3)] {
        let (x, y) = (rat_i(xp), rat_i(yp));
        for n in 0..=6u32 {
            let exact = fubini_gen(n).eval(&x, &y);
            let (sum, _) = moment_partial_sum_to_tolerance(n, &x, &y, &tol).unwrap();
            let bound = sum.tail_bound.unwrap();
            assert!(bound < tol, "n={n} x={xp} y={yp}: bound {bound}");
            assert!(
                rat_abs(&(&exact - &sum.value)) <= bound,
                "n={n} x={xp} y={yp}: partial sum off by more than the bound"
            );

            let mc = moment_monte_carlo(n, &x, &y, 1_000_000, 20260810 + n as u64).unwrap();
            let exact_f = rat_to_f64(&exact);
            let slack = if n == 0 { 1e-12 } else { 5.0 * mc.std_error };
            assert!(
                (mc.estimate - exact_f).abs() <= slack,
                "n={n} x={xp} y={yp}: MC {} vs exact {exact_f} (se {})",
                mc.estimate,
                mc.std_error
            );
        }
    }
    println!("ACCEPTANCE C7 PASS: partial sums within 1e-20 bounds; MC within 5 standard errors");
}

#[test]
fn criterion_8_cross_triangle_checks() {
    // orthogonality, n <= 12
    for n in 0..=12u32 {
        for m in 0..=12i64 {
            let mut acc = rat_i(0);
            for k in 0..=n as i64 {
                acc += stirling1(n, k) * stirling2(k as u32, m);
            }
            assert_eq!(
                acc,
                if n as i64 == m { rat_i(1) } else { rat_i(0) },
                "orthogonality n={n} m={m}"
            );
        }
    }
    // r-shift identity, r <= 4, n <= 12
    for r in 1..=4u32 {
        for n in r..=12u32 {
            for k in 0..=n as i64 {
                assert_eq!(
                    stirling2_r(n, k, r),
                    stirling2_r(n, k, r - 1) - rat_i(r as i64 - 1) * stirling2_r(n - 1, k, r - 1),
                    "shift n={n} k={k} r={r}"
                );
            }
        }
    }
    // r-Stirling EGF to order 10
    let expm1 = Series::from_fn("t", 10, |n| {
        if n == 0 {
            rat_i(0)
        } else {
            factorial(n).recip()
        }
    });
    for r in 0..=3u32 {
        let ert = Series::exp_linear("t", &rat_i(r as i64), 10);
        for k in 0..=10usize {
            let gf = ert.mul(&expm1.pow(k as u32)).scale(&factorial(k).recip());
            for n in 0..=10usize {
                assert_eq!(
                    stirling2_r(n as u32 + r, k as i64 + r as i64, r) / factorial(n),
                    gf.coeff(n),
                    "r-egf n={n} k={k} r={r}"
                );
            }
        }
    }
    // first-kind EGF to order 12
    for k in 0..=12usize {
        let gf = Series::log1p("t", 12)
            .pow(k as u32)
            .scale(&factorial(k).recip());
        for n in 0..=12usize {
            assert_eq!(
                stirling1(n as u32, k as i64) / factorial(n),
                gf.coeff(n),
                "s1-egf n={n} k={k}"
            );
        }
    }
    println!("ACCEPTANCE C8 PASS: cross-triangle identities exact");
}
