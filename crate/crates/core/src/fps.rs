//! Truncated formal power series over exact coefficients, plus the
//! generating functions they are used to expand.
//!
//! A [`Series`] stores coefficients `c_0..=c_N` of a single named variable;
//! `N` is the truncation order. Arithmetic never reads past an operand's
//! order and results carry the minimum order of the operands, so every stored
//! coefficient of a result is exact.
//!
//! The module doubles as the independent cross-check oracle: the grid and
//! polynomial families are recomputed here from their generating functions
//! and compared coefficient by coefficient.

use crate::kernel::{factorial, rat, rat_i, rat_pow, BiPoly, Rat, Ring};
use crate::polyfam;
use crate::transform::SequenceWindow;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Series<C: Ring> {
    var: String,
    coeffs: Vec<C>,
}

impl<C: Ring> Series<C> {
    /// Series with coefficients `c_0..=c_N`; the order is `coeffs.len() - 1`.
    pub fn new(var: &str, coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series needs its constant coefficient");
        Series {
            var: var.to_string(),
            coeffs,
        }
    }

    pub fn from_fn(var: &str, order: usize, f: impl FnMut(usize) -> C) -> Self {
        Series {
            var: var.to_string(),
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(var: &str, order: usize) -> Self {
        Self::from_fn(var, order, |_| C::zero())
    }

    pub fn one(var: &str, order: usize) -> Self {
        Self::constant(var, C::one(), order)
    }

    pub fn constant(var: &str, c: C, order: usize) -> Self {
        Self::from_fn(var, order, |n| if n == 0 { c.clone() } else { C::zero() })
    }

    /// `e^{c t} = sum c^n t^n / n!`.
    pub fn exp_linear(var: &str, c: &C, order: usize) -> Self {
        let mut pw = C::one();
        let mut coeffs = Vec::with_capacity(order + 1);
        for n in 0..=order {
            coeffs.push(pw.scale(&factorial(n).recip()));
            pw = pw.mul(c);
        }
        Series::new(var, coeffs)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> C {
        assert!(
            n <= self.order(),
            "coefficient {n} beyond truncation order {}",
            self.order()
        );
        self.coeffs[n].clone()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// `n! * c_n`, the coefficient in exponential convention.
    pub fn egf_coeff(&self, n: usize) -> C {
        self.coeff(n).scale(&factorial(n))
    }

    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Series::new(&self.var, self.coeffs[..=order].to_vec())
    }

    fn join_order(&self, rhs: &Self) -> usize {
        assert_eq!(self.var, rhs.var, "series variable mismatch");
        self.order().min(rhs.order())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.join_order(rhs);
        Series::from_fn(&self.var, n, |i| self.coeffs[i].add(&rhs.coeffs[i]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.join_order(rhs);
        Series::from_fn(&self.var, n, |i| self.coeffs[i].sub(&rhs.coeffs[i]))
    }

    pub fn neg(&self) -> Self {
        Series::from_fn(&self.var, self.order(), |i| self.coeffs[i].neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.join_order(rhs);
        let mut out = vec![C::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&self.coeffs[i].mul(&rhs.coeffs[j]));
            }
        }
        Series::new(&self.var, out)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Series::from_fn(&self.var, self.order(), |i| self.coeffs[i].scale(k))
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        Series::from_fn(&self.var, self.order(), |i| self.coeffs[i].mul(c))
    }

    pub fn add_constant(&mut self, c: &C) {
        self.coeffs[0] = self.coeffs[0].add(c);
    }

    /// Termwise derivative; drops one order.
    pub fn derivative(&self) -> Self {
        assert!(self.order() >= 1, "derivative needs order >= 1");
        Series::from_fn(&self.var, self.order() - 1, |n| {
            self.coeffs[n + 1].scale(&rat_i(n as i64 + 1))
        })
    }

    /// Multiply by the series variable; raises the order by one.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Series::new(&self.var, coeffs)
    }

    /// Substitute `t -> c t`.
    pub fn scale_var(&self, c: &C) -> Self {
        let mut pw = C::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for co in &self.coeffs {
            out.push(co.mul(&pw));
            pw = pw.mul(c);
        }
        Series::new(&self.var, out)
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0].inverse().ok_or(Error::SeriesReciprocal)?;
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        out[0] = c0.clone();
        for m in 1..=n {
            let mut acc = C::zero();
            for k in 1..=m {
                acc = acc.add(&self.coeffs[k].mul(&out[m - k]));
            }
            out[m] = acc.mul(&c0).neg();
        }
        Ok(Series::new(&self.var, out))
    }

    /// `self ∘ inner`; the inner series must have zero constant term. The
    /// result is exact to the smaller of the two orders.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::SeriesComposition);
        }
        let n = self.join_order(inner);
        let inner = inner.truncated(n);
        let mut acc = Series::constant(&self.var, self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.add_constant(&self.coeffs[k]);
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Series::one(&self.var, self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Series<Rat> {
    /// `ln(1+t) = sum_{n>=1} (-1)^{n+1} t^n / n`.
    pub fn log1p(var: &str, order: usize) -> Self {
        Series::from_fn(var, order, |n| {
            if n == 0 {
                rat_i(0)
            } else {
                rat(if n % 2 == 1 { 1 } else { -1 }, n as i64)
            }
        })
    }
}

// ---- Generating functions ----

/// Coefficient products of the base series `(1 + λt)^{1/λ} =
/// sum ∏_{j<n}(1 - jλ) t^n/n!`; the empty product makes λ = 0 a regular
/// point (the base degenerates to `e^t`).
pub(crate) fn degenerate_factors(lambda: &Rat, order: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(order + 1);
    let mut acc = rat_i(1);
    for n in 0..=order {
        out.push(acc.clone());
        acc *= rat_i(1) - rat_i(n as i64) * lambda;
    }
    out
}

/// EGF of the two-variable Fubini family: `1/(1 - x (e^{ty}-1)/y)` with
/// polynomial coefficients; `n! [t^n]` is the degree-`n` family member.
pub fn gf_generalized_fubini(order: usize) -> Series<BiPoly> {
    let u = Series::from_fn("t", order, |n| {
        if n == 0 {
            BiPoly::zero()
        } else {
            BiPoly::monomial(factorial(n).recip(), 1, (n - 1) as u32)
        }
    });
    Series::one("t", order)
        .sub(&u)
        .reciprocal()
        .expect("constant term is 1")
}

/// EGF `e^{ty}/(1 - x(e^t - 1))` of the two-variable Fubini polynomials
/// `ω_n(x, y)`, symbolic coefficients.
pub fn gf_two_var_fubini(order: usize) -> Series<BiPoly> {
    let ety = Series::exp_linear("t", &BiPoly::var_y(), order);
    let u = Series::from_fn("t", order, |n| {
        if n == 0 {
            BiPoly::zero()
        } else {
            BiPoly::monomial(factorial(n).recip(), 1, 0)
        }
    });
    let recip = Series::one("t", order)
        .sub(&u)
        .reciprocal()
        .expect("constant term is 1");
    ety.mul(&recip)
}

/// EGF `(1-x)/(e^{t(x-1)} - x)` of the Eulerian polynomials. Dividing the
/// denominator by `1-x` clears the pole, leaving
/// `1/(1 - sum_{n>=1} (x-1)^{n-1} t^n/n!)` with polynomial coefficients.
pub fn gf_eulerian(order: usize) -> Series<BiPoly> {
    let xm1 = BiPoly::var_x().sub(&BiPoly::one());
    let mut coeffs = vec![BiPoly::zero()];
    let mut pw = BiPoly::one();
    for n in 1..=order {
        coeffs.push(pw.scale(&factorial(n).recip()));
        pw = pw.mul(&xm1);
    }
    let u = Series::new("t", coeffs);
    Series::one("t", order)
        .sub(&u)
        .reciprocal()
        .expect("constant term is 1")
}

/// EGF `(1-u) e^{t y0} / (e^t - u)` of the Frobenius-Euler values
/// `H_n(u; y0)`, expanded at a rational point `u != 1`.
pub fn gf_frobenius_euler(order: usize, u0: &Rat, y0: &Rat) -> Result<Series<Rat>> {
    if *u0 == rat_i(1) {
        return Err(Error::FrobeniusEulerPole);
    }
    let den = Series::from_fn("t", order, |n| {
        if n == 0 {
            rat_i(1) - u0
        } else {
            factorial(n).recip()
        }
    });
    let num = Series::exp_linear("t", y0, order).scale(&(rat_i(1) - u0));
    Ok(num.mul(&den.reciprocal()?))
}

/// EGF `1/(1 - (x/y)((1+λty)^{1/λ} - 1))` of the degenerate family with
/// polynomial coefficients: the `t^n` term of the inner series is
/// `x y^{n-1} ∏_{j<n}(1-jλ) / n!`, so no division by `y` survives.
pub fn gf_degenerate_sym(order: usize, lambda: &Rat) -> Series<BiPoly> {
    let f = degenerate_factors(lambda, order);
    let u = Series::from_fn("t", order, |n| {
        if n == 0 {
            BiPoly::zero()
        } else {
            BiPoly::monomial(&f[n] / factorial(n), 1, (n - 1) as u32)
        }
    });
    Series::one("t", order)
        .sub(&u)
        .reciprocal()
        .expect("constant term is 1")
}

/// Pointwise expansion of the degenerate EGF at rational `(x, y)`, `y != 0`.
pub fn gf_degenerate(order: usize, lambda: &Rat, x: &Rat, y: &Rat) -> Result<Series<Rat>> {
    if *y == rat_i(0) {
        return Err(Error::NotInvertible("y"));
    }
    let f = degenerate_factors(lambda, order);
    let u = Series::from_fn("t", order, |n| {
        if n == 0 {
            rat_i(0)
        } else {
            x * rat_pow(y, n as i64 - 1) * &f[n] / factorial(n)
        }
    });
    Series::one("t", order).sub(&u).reciprocal()
}

/// `(e^{ty} - 1)/y` as a series; the `t^n` coefficient `y^{n-1}/n!` is
/// polynomial in `y`, so `y = 0` is regular (the series collapses to `t`).
fn exp_minus_one_over_y(y: &Rat, order: usize) -> Series<Rat> {
    Series::from_fn("t", order, |n| {
        if n == 0 {
            rat_i(0)
        } else {
            rat_pow(y, n as i64 - 1) / factorial(n)
        }
    })
}

/// Shared tail of the column-EGF constructions: applies `(e^{-ty} d/dt)^s`,
/// multiplies by `e^{sty}/s!`, and truncates to `order`.
fn column_egf_finish(s: usize, order: usize, y: &Rat, mut f: Series<Rat>) -> Series<Rat> {
    let eneg = Series::exp_linear("t", &(-y.clone()), f.order());
    for _ in 0..s {
        f = f.derivative().mul(&eneg);
    }
    let es = Series::exp_linear("t", &(rat_i(s as i64) * y), order);
    f.truncated(order).mul(&es).scale(&factorial(s).recip())
}

/// EGF of column `s` of the all-ones grid at `(x, y)`:
/// `(e^{sty}/s!) (e^{-ty} d/dt)^s [((e^{ty}-1)/y)^s A_s((x/y)(e^{ty}-1))]`
/// with `A_s(u) = 1/(1-u)`, since every shifted all-ones row has the
/// geometric series as its OGF. `n! [t^n]` equals the grid entry at `(n, s)`.
pub fn b_s_operator(s: usize, order: usize, x: &Rat, y: &Rat) -> Result<Series<Rat>> {
    if *y == rat_i(0) {
        return Err(Error::NotInvertible("y"));
    }
    let work = order + s;
    let h = exp_minus_one_over_y(y, work);
    let a = Series::one("t", work)
        .sub(&h.scale(x))
        .reciprocal()
        .map_err(|_| Error::SeriesReciprocal)?;
    Ok(column_egf_finish(s, order, y, h.pow(s as u32).mul(&a)))
}

/// Column EGF for an arbitrary finite initial row. The row OGF is the
/// truncated polynomial `A_s(u) = sum_{k<=D} a_{0,s+k} u^k` with
/// `D = len - 1 - s`, so the result is exact only up to order `D`; the
/// returned series is truncated to `min(order, D)`.
pub fn b_s_operator_general(
    s: usize,
    order: usize,
    initial: &SequenceWindow<Rat>,
    x: &Rat,
    y: &Rat,
) -> Result<Series<Rat>> {
    if *y == rat_i(0) {
        return Err(Error::NotInvertible("y"));
    }
    if initial.offset() != 0 {
        return Err(Error::WindowOffset("initial sequence"));
    }
    let len = initial.len();
    if len < s + 1 {
        return Err(Error::InsufficientData {
            needed: s + 1,
            have: len,
        });
    }
    let d = len - 1 - s;
    let out_order = order.min(d);
    let work = out_order + s;
    let h = exp_minus_one_over_y(y, work);
    let u = h.scale(x);
    let vals = &initial.values()[s..];
    let mut a = Series::constant("t", vals[d].clone(), work);
    for k in (0..d).rev() {
        a = a.mul(&u);
        a.add_constant(&vals[k]);
    }
    Ok(column_egf_finish(s, out_order, y, h.pow(s as u32).mul(&a)))
}

/// Stirling-expanded form of the same column EGF:
/// `(1/s!) sum_k s(s,k) y^{s-k} d^k/dt^k F(t)`. The `y^{s-k}` weights
/// realize the operator expansion
/// `(e^{-ty} d/dt)^s = e^{-sty} sum_k s(s,k) y^{s-k} d^k/dt^k`,
/// which reduces to the unweighted sum at `y = 1`.
pub fn b_s_stirling_form(s: usize, order: usize, x: &Rat, y: &Rat) -> Result<Series<Rat>> {
    if *y == rat_i(0) {
        return Err(Error::NotInvertible("y"));
    }
    let work = order + s;
    let h = exp_minus_one_over_y(y, work);
    let a = Series::one("t", work).sub(&h.scale(x)).reciprocal()?;
    let mut fk = h.pow(s as u32).mul(&a);
    let mut acc = Series::zero("t", order);
    for k in 0..=s {
        let w = crate::stirling::stirling1(s as u32, k as i64) * rat_pow(y, (s - k) as i64);
        acc = acc.add(&fk.truncated(order).scale(&w));
        if k < s {
            fk = fk.derivative();
        }
    }
    Ok(acc.scale(&factorial(s).recip()))
}

/// OGF of row `s` rebuilt from the final column: the composition
/// `B̂_s(y^{-1} ln(1 + ty/x))` of the shifted-column EGF with a logarithm.
/// `[t^m]` equals the grid entry at `(s, m)`.
pub fn a_hat_s(
    s: usize,
    order: usize,
    final_col: &SequenceWindow<Rat>,
    x: &Rat,
    y: &Rat,
) -> Result<Series<Rat>> {
    if *x == rat_i(0) {
        return Err(Error::NotInvertible("x"));
    }
    if *y == rat_i(0) {
        return Err(Error::NotInvertible("y"));
    }
    if final_col.offset() != 0 {
        return Err(Error::WindowOffset("final sequence"));
    }
    let needed = s + order + 1;
    if final_col.len() < needed {
        return Err(Error::InsufficientData {
            needed,
            have: final_col.len(),
        });
    }
    let vals = final_col.values();
    let bhat = Series::from_fn("t", order, |k| &vals[s + k] / factorial(k));
    let inner = Series::log1p("t", order)
        .scale_var(&(y / x))
        .scale(&y.recip());
    bhat.compose(&inner)
}

/// Checks the three equal expansions in `x` (to the given order):
/// `sum_k (x/y)^k (yk)^n`, `y^n (x d/dx)^n [y/(y-x)]`, and
/// `(y/(y-x)) F_n(xy/(y-x), y)` where `F_n` is the two-variable Fubini
/// polynomial evaluated through series substitution.
pub fn operator_identity_check(n: u32, order: usize, y: &Rat) -> Result<bool> {
    if *y == rat_i(0) {
        return Err(Error::NotInvertible("y"));
    }

    // Direct coefficients; (y*0)^0 = 1 covers the k = 0, n = 0 corner.
    let side1 = Series::from_fn("x", order, |k| {
        let base = y * rat_i(k as i64);
        rat_pow(&base, n as i64) * rat_pow(y, -(k as i64))
    });

    // Repeated application of x d/dx to the geometric series y/(y-x).
    let geom = Series::from_fn("x", order, |k| rat_pow(y, -(k as i64)));
    let mut side2 = geom.clone();
    for _ in 0..n {
        side2 = side2.derivative().shift_up();
    }
    let side2 = side2.scale(&rat_pow(y, n as i64));

    // Substitute the series xy/(y-x) into the polynomial.
    let xarg = geom.shift_up().truncated(order);
    let cs = polyfam::fubini_gen(n)
        .eval_y(y)
        .coeffs_in_x()
        .expect("y fully substituted");
    let mut side3 = Series::constant("x", cs.last().cloned().unwrap_or_else(|| rat_i(0)), order);
    for k in (0..cs.len().saturating_sub(1)).rev() {
        side3 = side3.mul(&xarg);
        side3.add_constant(&cs[k]);
    }
    let side3 = side3.mul(&geom);

    Ok(side1 == side2 && side1 == side3)
}

/// Termwise check of
/// `e^{ty} G(t) = [1/x - (e^{ty}-1)/y] G'(t)` for
/// `G(t) = 1/(1 - (x/y)(e^{ty}-1))`.
pub fn lemma_check(order: usize, x: &Rat, y: &Rat) -> Result<bool> {
    if *x == rat_i(0) {
        return Err(Error::NotInvertible("x"));
    }
    if *y == rat_i(0) {
        return Err(Error::NotInvertible("y"));
    }
    let work = order + 1;
    let h = exp_minus_one_over_y(y, work);
    let g = Series::one("t", work).sub(&h.scale(x)).reciprocal()?;
    let lhs = Series::exp_linear("t", y, order).mul(&g.truncated(order));
    let bracket = Series::constant("t", x.recip(), order).sub(&h.truncated(order));
    let rhs = bracket.mul(&g.derivative());
    Ok(lhs == rhs)
}
