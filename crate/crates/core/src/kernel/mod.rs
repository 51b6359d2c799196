//! Exact scalar and polynomial arithmetic shared by every other module.
//!
//! All values are immutable once constructed and every operation is a pure
//! function, so anything built here can be shared freely across threads.

mod bipoly;
mod rational;

pub use bipoly::BiPoly;
pub use rational::{binomial, factorial, fmt_rat, parse_rat, rat, rat_i, rat_pow, rat_to_f64, Rat};

/// Commutative-ring interface implemented by the two coefficient types,
/// [`Rat`] and [`BiPoly`]. Grids and series are generic over it so symbolic
/// and numeric runs share one code path.
pub trait Ring: Clone + PartialEq + std::fmt::Debug + std::fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Scalar action of the rationals.
    fn scale(&self, k: &Rat) -> Self;
    /// Multiplicative inverse when the element is a unit, `None` otherwise.
    fn inverse(&self) -> Option<Self>;
}

impl Ring for Rat {
    fn zero() -> Self {
        rat_i(0)
    }
    fn one() -> Self {
        rat_i(1)
    }
    fn is_zero(&self) -> bool {
        *self == rat_i(0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, k: &Rat) -> Self {
        self * k
    }
    fn inverse(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Ring for BiPoly {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn one() -> Self {
        BiPoly::one()
    }
    fn is_zero(&self) -> bool {
        BiPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        BiPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        BiPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        BiPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        self.negated()
    }
    fn scale(&self, k: &Rat) -> Self {
        BiPoly::scale(self, k)
    }
    fn inverse(&self) -> Option<Self> {
        // Only nonzero constants are units in the polynomial ring.
        if self.is_constant() && !BiPoly::is_zero(self) {
            Some(BiPoly::constant(self.constant_term().recip()))
        } else {
            None
        }
    }
}

/// `c^e` in an arbitrary ring.
pub fn ring_pow<C: Ring>(c: &C, e: u32) -> C {
    let mut acc = C::one();
    for _ in 0..e {
        acc = acc.mul(c);
    }
    acc
}
