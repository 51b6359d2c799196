//! The polynomial families and their evaluators: the two-variable Fubini
//! polynomials `F_n(x, y)`, the classical Fubini polynomials `ω_n(x)`, the
//! two-variable `ω_n(x, y)`, Bell `φ_n(x)`, Eulerian `A_n(x)`, pointwise
//! Frobenius-Euler values `H_n(u; y0)`, and the degenerate family
//! `F_{n,λ}(x, y)`.
//!
//! Every family reduces to exact sums over the Stirling triangles; the
//! generating functions in [`crate::fps`] recompute them independently and
//! the identity suite compares the two routes.

use crate::kernel::{binomial, factorial, rat_i, BiPoly, Rat};
use crate::stirling::{stirling2, stirling2_degenerate};
use crate::{Error, Result};

/// `F_n(x, y) = sum_k {n k} k! x^k y^{n-k}`, homogeneous of degree `n`.
pub fn fubini_gen(n: u32) -> BiPoly {
    let mut out = BiPoly::zero();
    for k in 0..=n {
        let c = stirling2(n, k as i64) * factorial(k as usize);
        out = out.add(&BiPoly::monomial(c, k, n - k));
    }
    out
}

/// Classical Fubini polynomial `ω_n(x) = sum_k {n k} k! x^k`.
pub fn fubini_classic(n: u32) -> BiPoly {
    let mut out = BiPoly::zero();
    for k in 0..=n {
        let c = stirling2(n, k as i64) * factorial(k as usize);
        out = out.add(&BiPoly::monomial(c, k, 0));
    }
    out
}

/// Two-variable Fubini polynomial `ω_n(x, y)` with EGF `e^{ty}/(1-x(e^t-1))`,
/// built as the binomial convolution `sum_k C(n,k) y^k ω_{n-k}(x)`.
pub fn fubini_two_var(n: u32) -> BiPoly {
    let mut out = BiPoly::zero();
    for k in 0..=n {
        let w = fubini_classic(n - k).mul(&BiPoly::monomial(binomial(n, k as i64), 0, k));
        out = out.add(&w);
    }
    out
}

/// Bell polynomial `φ_n(x) = sum_k {n k} x^k`.
pub fn bell(n: u32) -> BiPoly {
    let mut out = BiPoly::zero();
    for k in 0..=n {
        out = out.add(&BiPoly::monomial(stirling2(n, k as i64), k, 0));
    }
    out
}

/// Eulerian number `A(n, k)`: permutations of `n` elements with `k`
/// descents, via `A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1)`.
pub fn eulerian_number(n: u32, k: u32) -> Rat {
    if n == 0 {
        return if k == 0 { rat_i(1) } else { rat_i(0) };
    }
    if k >= n {
        return rat_i(0);
    }
    let mut row = vec![rat_i(1)];
    for m in 2..=n as usize {
        let mut next = vec![rat_i(0); m];
        for j in 0..m {
            let a = if j < row.len() {
                rat_i(j as i64 + 1) * &row[j]
            } else {
                rat_i(0)
            };
            let b = if j >= 1 && j - 1 < row.len() {
                rat_i((m - j) as i64) * &row[j - 1]
            } else {
                rat_i(0)
            };
            next[j] = a + b;
        }
        row = next;
    }
    row.get(k as usize).cloned().unwrap_or_else(|| rat_i(0))
}

/// Eulerian polynomial `A_n(x)`, the descent generating polynomial.
pub fn eulerian(n: u32) -> BiPoly {
    if n == 0 {
        return BiPoly::one();
    }
    let mut out = BiPoly::zero();
    for k in 0..n {
        out = out.add(&BiPoly::monomial(eulerian_number(n, k), k, 0));
    }
    out
}

/// The values `H_0(u; y0), .., H_n(u; y0)` of the Frobenius-Euler sequence
/// defined by `(1-u) e^{t y0} / (e^t - u)`, computed through the
/// denominator-cleared convolution
/// `(1-u) H_n = (1-u) y0^n - sum_{k<n} C(n,k) H_k`. Rejects the pole `u = 1`.
pub fn frobenius_euler_seq(n: u32, u: &Rat, y0: &Rat) -> Result<Vec<Rat>> {
    if *u == rat_i(1) {
        return Err(Error::FrobeniusEulerPole);
    }
    let scale = (rat_i(1) - u).recip();
    let mut h: Vec<Rat> = Vec::with_capacity(n as usize + 1);
    let mut y_pow = rat_i(1);
    for m in 0..=n {
        let mut conv = rat_i(0);
        for (k, hk) in h.iter().enumerate() {
            conv += binomial(m, k as i64) * hk;
        }
        h.push(&y_pow - &scale * conv);
        y_pow *= y0;
    }
    Ok(h)
}

/// `H_n(u; y0)`, see [`frobenius_euler_seq`].
pub fn frobenius_euler(n: u32, u: &Rat, y0: &Rat) -> Result<Rat> {
    Ok(frobenius_euler_seq(n, u, y0)?.pop().expect("nonempty"))
}

/// Degenerate family `F_{n,λ}(x, y) = sum_k {n k}_λ k! x^k y^{n-k}`.
pub fn fubini_gen_degenerate(n: u32, lambda: &Rat) -> BiPoly {
    let mut out = BiPoly::zero();
    for k in 0..=n {
        let c = stirling2_degenerate(n, k as i64, lambda) * factorial(k as usize);
        out = out.add(&BiPoly::monomial(c, k, n - k));
    }
    out
}

/// The polynomial families exposed by name (CLI and reports).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyFamily {
    FubiniGen,
    Fubini,
    FubiniTwoVar,
    Bell,
    Eulerian,
    FrobeniusEuler,
    FubiniGenDegenerate,
}

impl PolyFamily {
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "fubini-gen" => PolyFamily::FubiniGen,
            "fubini" => PolyFamily::Fubini,
            "fubini-two-var" => PolyFamily::FubiniTwoVar,
            "bell" => PolyFamily::Bell,
            "eulerian" => PolyFamily::Eulerian,
            "frobenius-euler" => PolyFamily::FrobeniusEuler,
            "fubini-gen-degenerate" => PolyFamily::FubiniGenDegenerate,
            _ => return Err(Error::UnknownFamily(name.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            PolyFamily::FubiniGen => "fubini-gen",
            PolyFamily::Fubini => "fubini",
            PolyFamily::FubiniTwoVar => "fubini-two-var",
            PolyFamily::Bell => "bell",
            PolyFamily::Eulerian => "eulerian",
            PolyFamily::FrobeniusEuler => "frobenius-euler",
            PolyFamily::FubiniGenDegenerate => "fubini-gen-degenerate",
        }
    }

    /// The degree-`n` member for the polynomial-valued families. The
    /// Frobenius-Euler family is rational in its first argument (pole at 1),
    /// so it is only available pointwise through [`frobenius_euler`].
    pub fn polynomial(&self, n: u32, lambda: Option<&Rat>) -> Result<BiPoly> {
        Ok(match self {
            PolyFamily::FubiniGen => fubini_gen(n),
            PolyFamily::Fubini => fubini_classic(n),
            PolyFamily::FubiniTwoVar => fubini_two_var(n),
            PolyFamily::Bell => bell(n),
            PolyFamily::Eulerian => eulerian(n),
            PolyFamily::FubiniGenDegenerate => {
                let zero = rat_i(0);
                fubini_gen_degenerate(n, lambda.unwrap_or(&zero))
            }
            PolyFamily::FrobeniusEuler => {
                return Err(Error::UnknownFamily(
                    "frobenius-euler is pointwise; evaluate it with --x (u) and --y (y0)".into(),
                ))
            }
        })
    }
}
