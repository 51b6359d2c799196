//! Arbitrary-precision rational scalars plus factorial and binomial helpers.

use num::bigint::BigInt;
use num::{BigRational, One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact rational scalar: always reduced to lowest terms, denominator
/// positive, zero stored as 0/1. `BigRational` maintains those invariants on
/// construction.
pub type Rat = BigRational;

/// Integer `n` as a rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q` reduced to lowest terms. Panics when `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"p"` or `"p/q"` exactly. Floating-point literals are rejected.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::MalformedRational(s.to_string());
    let t = s.trim();
    let (p, q) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (t, None),
    };
    let numer: BigInt = p.parse().map_err(|_| bad())?;
    let denom: BigInt = match q {
        Some(b) => b.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(numer, denom))
}

/// Render as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest double, for reporting only; exact pipelines never call this.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

fn bigint_pow(b: &BigInt, e: u64) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..e {
        acc *= b;
    }
    acc
}

/// `r^e` with integer exponent; negative exponents invert (`r` must then be
/// nonzero).
pub fn rat_pow(r: &Rat, e: i64) -> Rat {
    if e == 0 {
        return rat_i(1);
    }
    let m = e.unsigned_abs();
    let p = Rat::new(bigint_pow(r.numer(), m), bigint_pow(r.denom(), m));
    if e > 0 {
        p
    } else {
        assert!(!p.is_zero(), "zero base with negative exponent");
        p.recip()
    }
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rat::from_integer(acc)
}

/// Binomial coefficient `C(n, k)`; zero outside `0 <= k <= n`.
pub fn binomial(n: u32, k: i64) -> Rat {
    if k < 0 || k > n as i64 {
        return rat_i(0);
    }
    let k = (k as u32).min(n - k as u32);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    Rat::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat(" 7 ").unwrap(), rat_i(7));
        assert_eq!(fmt_rat(&rat(-3, 4)), "-3/4");
        assert_eq!(fmt_rat(&rat(10, 5)), "2");
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), rat_i(6));
        assert_eq!(binomial(9, 0), rat_i(1));
        assert_eq!(binomial(3, 5), rat_i(0));
        assert_eq!(binomial(3, -1), rat_i(0));
    }

    #[test]
    fn binomial_pascal_recurrence() {
        for n in 1..=30u32 {
            for k in 1..=n as i64 {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn rat_pow_signs() {
        assert_eq!(rat_pow(&rat(2, 3), 2), rat(4, 9));
        assert_eq!(rat_pow(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(rat_pow(&rat_i(0), 0), rat_i(1));
        assert_eq!(rat_pow(&rat_i(0), 3), rat_i(0));
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), rat_i(1));
        assert_eq!(factorial(5), rat_i(120));
    }
}
