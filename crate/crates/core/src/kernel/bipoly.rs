//! Sparse bivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::Signed;

use super::rational::{fmt_rat, rat_i, rat_pow, Rat};

/// Sparse polynomial in `x` and `y` over the rationals.
///
/// The term map never stores a zero coefficient, so structural equality is
/// polynomial equality. Rendering and term iteration order terms by total
/// degree, then by x-degree, both descending.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(rat_i(1))
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// The indeterminate `x`.
    pub fn var_x() -> Self {
        Self::monomial(rat_i(1), 1, 0)
    }

    /// The indeterminate `y`.
    pub fn var_y() -> Self {
        Self::monomial(rat_i(1), 0, 1)
    }

    /// `c * x^deg_x * y^deg_y`; the zero coefficient gives the zero polynomial.
    pub fn monomial(c: Rat, deg_x: u32, deg_y: u32) -> Self {
        let mut terms = BTreeMap::new();
        if c != rat_i(0) {
            terms.insert((deg_x, deg_y), c);
        }
        BiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(dx, dy)| dx == 0 && dy == 0)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(0, 0)
    }

    /// Coefficient of `x^deg_x * y^deg_y` (zero when absent).
    pub fn coeff(&self, deg_x: u32, deg_y: u32) -> Rat {
        self.terms
            .get(&(deg_x, deg_y))
            .cloned()
            .unwrap_or_else(|| rat_i(0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order: total degree descending, then x-degree
    /// descending.
    pub fn sorted_terms(&self) -> Vec<((u32, u32), Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort_by(|a, b| {
            let da = a.0 .0 + a.0 .1;
            let db = b.0 .0 + b.0 .1;
            db.cmp(&da).then(b.0 .0.cmp(&a.0 .0))
        });
        v
    }

    fn accumulate(&mut self, key: (u32, u32), c: &Rat) {
        if *c == rat_i(0) {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(|| rat_i(0));
        *entry += c;
        if *entry == rat_i(0) {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.accumulate(*k, c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.accumulate(*k, &-c);
        }
        out
    }

    pub fn negated(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = BiPoly::zero();
        for ((ax, ay), ac) in &self.terms {
            for ((bx, by), bc) in &rhs.terms {
                out.accumulate((ax + bx, ay + by), &(ac * bc));
            }
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if *k == rat_i(0) {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(key, c)| (*key, c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact substitution value at `(x0, y0)`.
    pub fn eval(&self, x0: &Rat, y0: &Rat) -> Rat {
        let mut acc = rat_i(0);
        for ((dx, dy), c) in &self.terms {
            acc += c * rat_pow(x0, *dx as i64) * rat_pow(y0, *dy as i64);
        }
        acc
    }

    /// Substitute only `y`, leaving a polynomial in `x`.
    pub fn eval_y(&self, y0: &Rat) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((dx, dy), c) in &self.terms {
            out.accumulate((*dx, 0), &(c * rat_pow(y0, *dy as i64)));
        }
        out
    }

    /// Largest total degree among the terms, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(dx, dy)| dx + dy).max()
    }

    /// True when every term has total degree exactly `d` (or the polynomial
    /// is zero).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|&(dx, dy)| dx + dy == d)
    }

    /// Coefficients by x-degree for a polynomial free of `y`; `None` if any
    /// term involves `y`.
    pub fn coeffs_in_x(&self) -> Option<Vec<Rat>> {
        if self.terms.keys().any(|&(_, dy)| dy != 0) {
            return None;
        }
        let deg = self.terms.keys().map(|&(dx, _)| dx).max().unwrap_or(0);
        let mut out = vec![rat_i(0); deg as usize + 1];
        for ((dx, _), c) in &self.terms {
            out[*dx as usize] = c.clone();
        }
        Some(out)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((dx, dy), c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if mag != rat_i(1) || (dx == 0 && dy == 0) {
                parts.push(fmt_rat(&mag));
            }
            match dx {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{dx}")),
            }
            match dy {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{dy}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::add(self, rhs)
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::sub(self, rhs)
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::mul(self, rhs)
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.negated()
    }
}
