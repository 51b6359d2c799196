//! The transform grid `(a_{n,m})` generated by the three-term recurrence
//! `a_{n+1,m} = x (m+1) a_{n,m+1} + y m a_{n,m}`, filled forward from an
//! initial row or backward from a final column, with closed forms for both
//! directions, the classical Fubini transform pair, and the Bernoulli
//! specialization `x = -1, y = 1` with initial row `1/(m+1)`.
//!
//! A length-`L` boundary determines exactly the trapezoid `n + m <= L - 1`:
//! the entry at `(n, m)` consumes initial entries `m..=m+n`. Grids are
//! generic over the coefficient ring so symbolic (polynomial) and numeric
//! (rational) runs share the same fill code.

use crate::kernel::{factorial, rat, rat_i, rat_pow, ring_pow, Rat, Ring};
use crate::stirling::{stirling1, stirling2, stirling2_r};
use crate::{Error, Result};

/// A finite, contiguous slice of a sequence; `offset` is the index of the
/// first stored term. Never empty.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceWindow<C: Ring> {
    values: Vec<C>,
    offset: usize,
}

impl<C: Ring> SequenceWindow<C> {
    pub fn new(values: Vec<C>, offset: usize) -> Self {
        assert!(!values.is_empty(), "sequence window must hold a term");
        SequenceWindow { values, offset }
    }

    pub fn from_values(values: Vec<C>) -> Self {
        Self::new(values, 0)
    }

    /// `len` copies of the same element starting at index 0.
    pub fn constant(c: C, len: usize) -> Self {
        Self::from_values(vec![c; len])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn values(&self) -> &[C] {
        &self.values
    }

    /// Term at absolute index `i`, if stored.
    pub fn get(&self, i: usize) -> Option<&C> {
        i.checked_sub(self.offset).and_then(|j| self.values.get(j))
    }
}

/// All-ones initial row.
pub fn ones(len: usize) -> SequenceWindow<Rat> {
    SequenceWindow::constant(rat_i(1), len)
}

/// The initial row `a_{0,m} = 1/(m+1)` of the Bernoulli construction.
pub fn chen_initial(len: usize) -> SequenceWindow<Rat> {
    SequenceWindow::from_values((0..len).map(|m| rat(1, m as i64 + 1)).collect())
}

/// The filled trapezoid `n + m <= L - 1`. Row `n` stores entries
/// `m = 0..L-n`; every interior entry satisfies the three-term recurrence.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformGrid<C: Ring> {
    rows: Vec<Vec<C>>,
    x: C,
    y: C,
}

impl<C: Ring> TransformGrid<C> {
    /// Boundary length `L`.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn params(&self) -> (&C, &C) {
        (&self.x, &self.y)
    }

    pub fn entry(&self, n: usize, m: usize) -> Option<&C> {
        self.rows.get(n).and_then(|row| row.get(m))
    }

    pub fn row(&self, n: usize) -> Option<&[C]> {
        self.rows.get(n).map(|r| r.as_slice())
    }

    pub fn row0(&self) -> SequenceWindow<C> {
        SequenceWindow::from_values(self.rows[0].clone())
    }

    pub fn column0(&self) -> SequenceWindow<C> {
        SequenceWindow::from_values(self.rows.iter().map(|r| r[0].clone()).collect())
    }

    /// Entries in row-major order.
    pub fn iter_entries(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, row)| row.iter().enumerate().map(move |(m, v)| (n, m, v)))
    }
}

/// Fill the trapezoid from row 0 via
/// `a_{n+1,m} = x (m+1) a_{n,m+1} + y m a_{n,m}`.
pub fn forward_fill<C: Ring>(
    initial: &SequenceWindow<C>,
    x: &C,
    y: &C,
) -> Result<TransformGrid<C>> {
    if initial.offset() != 0 {
        return Err(Error::WindowOffset("initial sequence"));
    }
    let l = initial.len();
    let mut rows = vec![initial.values().to_vec()];
    for n in 1..l {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(l - n);
        for m in 0..(l - n) {
            let a = x.mul(&prev[m + 1]).scale(&rat_i(m as i64 + 1));
            let b = y.mul(&prev[m]).scale(&rat_i(m as i64));
            row.push(a.add(&b));
        }
        rows.push(row);
    }
    Ok(TransformGrid {
        rows,
        x: x.clone(),
        y: y.clone(),
    })
}

/// Fill the trapezoid from column 0 via the rearranged recurrence
/// `a_{n,m+1} = (a_{n+1,m} - y m a_{n,m}) / (x (m+1))`; `x` must be a unit.
pub fn backward_fill<C: Ring>(
    final_col: &SequenceWindow<C>,
    x: &C,
    y: &C,
) -> Result<TransformGrid<C>> {
    if final_col.offset() != 0 {
        return Err(Error::WindowOffset("final sequence"));
    }
    let x_inv = x.inverse().ok_or(Error::NotInvertible("x"))?;
    let l = final_col.len();
    let mut cols = vec![final_col.values().to_vec()];
    for m in 1..l {
        let prev = &cols[m - 1];
        let mut col = Vec::with_capacity(l - m);
        for n in 0..(l - m) {
            let num = prev[n + 1].sub(&y.mul(&prev[n]).scale(&rat_i(m as i64 - 1)));
            col.push(num.mul(&x_inv).scale(&rat(1, m as i64)));
        }
        cols.push(col);
    }
    let mut rows = Vec::with_capacity(l);
    for n in 0..l {
        let row = (0..(l - n)).map(|m| cols[m][n].clone()).collect();
        rows.push(row);
    }
    Ok(TransformGrid {
        rows,
        x: x.clone(),
        y: y.clone(),
    })
}

/// Closed form for a forward-filled entry:
/// `a_{n,m} = (1/m!) sum_k {n+m, k+m}_m (k+m)! y^{n-k} x^k a_{0,m+k}`.
pub fn entry_from_row<C: Ring>(
    n: usize,
    m: usize,
    initial: &SequenceWindow<C>,
    x: &C,
    y: &C,
) -> Result<C> {
    if initial.offset() != 0 {
        return Err(Error::WindowOffset("initial sequence"));
    }
    let l = initial.len();
    if n + m + 1 > l {
        return Err(Error::InsufficientData {
            needed: n + m + 1,
            have: l,
        });
    }
    let mut acc = C::zero();
    for k in 0..=n {
        let w =
            stirling2_r((n + m) as u32, (k + m) as i64, m as u32) * factorial(k + m) / factorial(m);
        let t = ring_pow(x, k as u32)
            .mul(&ring_pow(y, (n - k) as u32))
            .mul(&initial.values()[m + k])
            .scale(&w);
        acc = acc.add(&t);
    }
    Ok(acc)
}

/// Closed form for a backward-filled entry:
/// `a_{n,m} = (1/(x^m m!)) sum_k y^{m-k} s(m, k) a_{n+k,0}`.
///
/// The `y^m * y^{-k}` product of the two-factor statement is cleared to
/// `y^{m-k}`, which makes `y = 0` a regular point that agrees with the
/// recurrence fill.
pub fn entry_from_column(
    n: usize,
    m: usize,
    final_col: &SequenceWindow<Rat>,
    x: &Rat,
    y: &Rat,
) -> Result<Rat> {
    if final_col.offset() != 0 {
        return Err(Error::WindowOffset("final sequence"));
    }
    if *x == rat_i(0) {
        return Err(Error::NotInvertible("x"));
    }
    let l = final_col.len();
    if n + m + 1 > l {
        return Err(Error::InsufficientData {
            needed: n + m + 1,
            have: l,
        });
    }
    let mut acc = rat_i(0);
    for k in 0..=m {
        acc +=
            stirling1(m as u32, k as i64) * rat_pow(y, (m - k) as i64) * &final_col.values()[n + k];
    }
    Ok(acc / (rat_pow(x, m as i64) * factorial(m)))
}

/// Compares the two closed forms at `(n, m)`:
/// `sum_k {n+m,k+m}_m (k+m)! x^k y^{n-k} a_{0,m+k}` against
/// `sum_k s(m,k) x^{-m} y^{m-k} a_{n+k,0}`, where the final column comes
/// from the forward fill. Returns the comparison.
pub fn cora_check(
    initial: &SequenceWindow<Rat>,
    x: &Rat,
    y: &Rat,
    n: usize,
    m: usize,
) -> Result<bool> {
    if *x == rat_i(0) {
        return Err(Error::NotInvertible("x"));
    }
    if *y == rat_i(0) {
        return Err(Error::NotInvertible("y"));
    }
    let l = initial.len();
    if n + m + 1 > l {
        return Err(Error::InsufficientData {
            needed: n + m + 1,
            have: l,
        });
    }
    let mut lhs = rat_i(0);
    for k in 0..=n {
        lhs += stirling2_r((n + m) as u32, (k + m) as i64, m as u32)
            * factorial(k + m)
            * rat_pow(x, k as i64)
            * rat_pow(y, (n - k) as i64)
            * &initial.values()[m + k];
    }
    let grid = forward_fill(initial, x, y)?;
    let final_col = grid.column0();
    let mut rhs = rat_i(0);
    for k in 0..=m {
        rhs += stirling1(m as u32, k as i64)
            * rat_pow(x, -(m as i64))
            * rat_pow(y, (m - k) as i64)
            * &final_col.values()[n + k];
    }
    Ok(lhs == rhs)
}

/// Fubini transform: `β_n = sum_k k! {n k} z^k α_k`.
pub fn fubini_transform(alpha: &SequenceWindow<Rat>, z: &Rat) -> SequenceWindow<Rat> {
    let vals = alpha.values();
    let out = (0..vals.len())
        .map(|n| {
            let mut acc = rat_i(0);
            for (k, a) in vals.iter().enumerate().take(n + 1) {
                acc += factorial(k) * stirling2(n as u32, k as i64) * rat_pow(z, k as i64) * a;
            }
            acc
        })
        .collect();
    SequenceWindow::from_values(out)
}

/// Inverse Fubini transform: `α_n = (1/(n! z^n)) sum_k s(n,k) β_k`;
/// rejects `z = 0`.
pub fn fubini_inverse(beta: &SequenceWindow<Rat>, z: &Rat) -> Result<SequenceWindow<Rat>> {
    if *z == rat_i(0) {
        return Err(Error::NotInvertible("z"));
    }
    let vals = beta.values();
    let out = (0..vals.len())
        .map(|n| {
            let mut acc = rat_i(0);
            for (k, b) in vals.iter().enumerate().take(n + 1) {
                acc += stirling1(n as u32, k as i64) * b;
            }
            acc / (factorial(n) * rat_pow(z, n as i64))
        })
        .collect();
    Ok(SequenceWindow::from_values(out))
}

/// Bernoulli numbers `B_0..=B_{n_max}`: the forward fill of the initial row
/// `a_{0,m} = 1/(m+1)` at `x = -1, y = 1`, read off column 0.
pub fn bernoulli(n_max: usize) -> SequenceWindow<Rat> {
    let grid =
        forward_fill(&chen_initial(n_max + 1), &rat_i(-1), &rat_i(1)).expect("offset-0 window");
    grid.column0()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{binomial, BiPoly};
    use crate::polyfam::fubini_gen;

    fn sym(terms: &[(i64, u32, u32)]) -> BiPoly {
        let mut out = BiPoly::zero();
        for &(c, dx, dy) in terms {
            out = out.add(&BiPoly::monomial(rat_i(c), dx, dy));
        }
        out
    }

    #[test]
    fn forward_fill_symbolic_entries() {
        let initial = SequenceWindow::constant(BiPoly::one(), 5);
        let grid = forward_fill(&initial, &BiPoly::var_x(), &BiPoly::var_y()).unwrap();
        assert_eq!(grid.entry(0, 3).unwrap(), &BiPoly::one());
        assert_eq!(grid.entry(1, 1).unwrap(), &sym(&[(1, 0, 1), (2, 1, 0)]));
        assert_eq!(
            grid.entry(2, 1).unwrap(),
            &sym(&[(6, 2, 0), (6, 1, 1), (1, 0, 2)])
        );
    }

    #[test]
    fn closed_row_form_matches_fill() {
        let initial = SequenceWindow::constant(BiPoly::one(), 6);
        let x = BiPoly::var_x();
        let y = BiPoly::var_y();
        let grid = forward_fill(&initial, &x, &y).unwrap();
        for (n, m, v) in grid.iter_entries() {
            assert_eq!(&entry_from_row(n, m, &initial, &x, &y).unwrap(), v);
        }
        assert!(matches!(
            entry_from_row(4, 3, &initial, &x, &y),
            Err(Error::InsufficientData { needed: 8, have: 6 })
        ));
    }

    #[test]
    fn closed_row_form_n0_returns_initial() {
        let initial = chen_initial(5);
        for m in 0..5 {
            assert_eq!(
                entry_from_row(0, m, &initial, &rat(2, 3), &rat(-1, 2)).unwrap(),
                rat(1, m as i64 + 1)
            );
        }
    }

    #[test]
    fn backward_fill_restores_all_ones_row() {
        // final column = F_n(1,1) = 1, 1, 3, 13, 75
        let finals =
            SequenceWindow::from_values([1, 1, 3, 13, 75].iter().map(|&v| rat_i(v)).collect());
        let grid = backward_fill(&finals, &rat_i(1), &rat_i(1)).unwrap();
        for m in 0..5 {
            assert_eq!(grid.entry(0, m).unwrap(), &rat_i(1), "m={m}");
        }
    }

    #[test]
    fn backward_fill_inverts_bernoulli_column() {
        let b = bernoulli(9);
        let grid = backward_fill(&b, &rat_i(-1), &rat_i(1)).unwrap();
        for m in 0..10 {
            assert_eq!(grid.entry(0, m).unwrap(), &rat(1, m as i64 + 1), "m={m}");
        }
    }

    #[test]
    fn backward_fill_rejects_zero_x() {
        let finals = ones(4);
        assert!(matches!(
            backward_fill(&finals, &rat_i(0), &rat_i(1)),
            Err(Error::NotInvertible("x"))
        ));
    }

    #[test]
    fn column_closed_form_matches_fill_including_y_zero() {
        let finals = SequenceWindow::from_values((0..8).map(|i| rat(i * i - 3, i + 2)).collect());
        for x in [rat_i(1), rat_i(-1), rat(2, 3)] {
            for y in [rat_i(1), rat_i(-2), rat(1, 2), rat_i(0)] {
                let grid = backward_fill(&finals, &x, &y).unwrap();
                for (n, m, v) in grid.iter_entries() {
                    assert_eq!(
                        &entry_from_column(n, m, &finals, &x, &y).unwrap(),
                        v,
                        "n={n} m={m} x={x} y={y}"
                    );
                }
            }
        }
    }

    #[test]
    fn column_closed_form_small_cases() {
        let finals = SequenceWindow::from_values((0..6).map(|i| rat(i + 1, 3)).collect());
        let x = rat(3, 2);
        let y = rat(-1, 3);
        for n in 0..5 {
            assert_eq!(
                entry_from_column(n, 0, &finals, &x, &y).unwrap(),
                finals.values()[n]
            );
            // m = 1 reduces to a_{n+1,0}/x
            assert_eq!(
                entry_from_column(n, 1, &finals, &x, &y).unwrap(),
                &finals.values()[n + 1] / &x
            );
        }
    }

    #[test]
    fn grid_round_trip() {
        let alpha = SequenceWindow::from_values((0..7).map(|i| rat(2 * i - 5, i + 1)).collect());
        let x = rat(2, 3);
        let y = rat(-1, 2);
        let forward = forward_fill(&alpha, &x, &y).unwrap();
        let back = backward_fill(&forward.column0(), &x, &y).unwrap();
        assert_eq!(back.row0(), alpha);
    }

    #[test]
    fn ones_column_matches_fubini_gen() {
        let initial = SequenceWindow::constant(BiPoly::one(), 9);
        let grid = forward_fill(&initial, &BiPoly::var_x(), &BiPoly::var_y()).unwrap();
        for n in 0..=8 {
            assert_eq!(grid.entry(n, 0).unwrap(), &fubini_gen(n as u32), "n={n}");
        }
    }

    #[test]
    fn symbolic_grid_agrees_with_numeric_under_eval() {
        let numeric = chen_initial(7);
        let symbolic = SequenceWindow::from_values(
            numeric
                .values()
                .iter()
                .cloned()
                .map(BiPoly::constant)
                .collect::<Vec<_>>(),
        );
        let sym_grid = forward_fill(&symbolic, &BiPoly::var_x(), &BiPoly::var_y()).unwrap();
        for (x, y) in [(rat_i(-1), rat_i(1)), (rat(2, 3), rat(-1, 2))] {
            let num_grid = forward_fill(&numeric, &x, &y).unwrap();
            for (n, m, v) in num_grid.iter_entries() {
                assert_eq!(
                    &sym_grid.entry(n, m).unwrap().eval(&x, &y),
                    v,
                    "n={n} m={m} x={x} y={y}"
                );
            }
        }
    }

    #[test]
    fn transform_examples() {
        let alpha = ones(5);
        let beta = fubini_transform(&alpha, &rat_i(1));
        assert_eq!(
            beta.values().to_vec(),
            vec![rat_i(1), rat_i(1), rat_i(3), rat_i(13), rat_i(75)]
        );

        let mut delta = vec![rat_i(0); 5];
        delta[0] = rat_i(1);
        let beta = fubini_transform(&SequenceWindow::from_values(delta), &rat_i(2));
        assert_eq!(beta.values()[0], rat_i(1));
        assert!(beta.values()[1..].iter().all(|v| *v == rat_i(0)));

        let beta = fubini_transform(&ones(5), &rat_i(0));
        assert_eq!(beta.values()[0], rat_i(1));
        assert!(beta.values()[1..].iter().all(|v| *v == rat_i(0)));
    }

    #[test]
    fn transform_round_trip() {
        let alpha = SequenceWindow::from_values((0..12).map(|i| rat(3 * i - 7, i + 2)).collect());
        for z in [rat_i(1), rat_i(2), rat(-1, 2)] {
            let beta = fubini_transform(&alpha, &z);
            let back = fubini_inverse(&beta, &z).unwrap();
            assert_eq!(back, alpha, "z={z}");
        }
        assert!(fubini_inverse(&alpha, &rat_i(0)).is_err());
    }

    #[test]
    fn cora_reduces_to_transform_edges() {
        let initial = SequenceWindow::from_values((0..8).map(|i| rat(i - 3, 2)).collect());
        for n in 0..4 {
            assert!(cora_check(&initial, &rat(2, 3), &rat_i(1), n, 0).unwrap());
        }
        for m in 0..4 {
            assert!(cora_check(&initial, &rat(2, 3), &rat_i(1), 0, m).unwrap());
        }
        assert!(cora_check(&initial, &rat(1, 2), &rat(-2, 3), 3, 3).unwrap());
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(21);
        let v = b.values();
        assert_eq!(v[0], rat_i(1));
        assert_eq!(v[1], rat(-1, 2));
        assert_eq!(v[4], rat(-1, 30));
        for n in 1..=10 {
            assert_eq!(v[2 * n + 1], rat_i(0), "B_{}", 2 * n + 1);
        }
        // sum_{k=0}^{n} C(n+1, k) B_k = 0 for 1 <= n <= 20
        for n in 1..=20u32 {
            let mut acc = rat_i(0);
            for k in 0..=n as usize {
                acc += binomial(n + 1, k as i64) * &v[k];
            }
            assert_eq!(acc, rat_i(0), "n={n}");
        }
    }
}
