//! The four Stirling-type triangles: signed first kind, second kind,
//! r-Stirling second kind, and the degenerate second kind.
//!
//! Each triangle is produced by its recurrence (or, for the degenerate one,
//! by series-coefficient extraction) and memoized. The module-level functions
//! use a thread-local cache, so each thread owns its cache and reads are
//! never torn; a [`StirlingCache`] can also be owned directly.

use std::cell::RefCell;
use std::collections::BTreeMap;

use crate::fps::{degenerate_factors, Series};
use crate::kernel::{factorial, rat_i, Rat};

/// Memoized triangles. Values only ever get added; nothing is evicted.
#[derive(Debug, Default)]
pub struct StirlingCache {
    // s1_rows[n][k] = signed s(n, k)
    s1_rows: Vec<Vec<Rat>>,
    // per r: rows for n = r, r+1, ... ; row i holds k = 0..=r+i
    s2r_rows: BTreeMap<u32, Vec<Vec<Rat>>>,
    // per (λ, k): column values for n = 0..cached order
    s2deg_cols: BTreeMap<(Rat, u32), Vec<Rat>>,
}

impl StirlingCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Signed Stirling number of the first kind, via
    /// `s(n+1, k) = s(n, k-1) - n s(n, k)` from `s(0, 0) = 1`.
    pub fn s1(&mut self, n: u32, k: i64) -> Rat {
        if k < 0 || k > n as i64 {
            return rat_i(0);
        }
        let n = n as usize;
        if self.s1_rows.is_empty() {
            self.s1_rows.push(vec![rat_i(1)]);
        }
        while self.s1_rows.len() <= n {
            let m = self.s1_rows.len(); // building row m from row m-1
            let prev = &self.s1_rows[m - 1];
            let get = |k: usize| {
                if k < prev.len() {
                    prev[k].clone()
                } else {
                    rat_i(0)
                }
            };
            let mut row = Vec::with_capacity(m + 1);
            for k in 0..=m {
                let carry = if k > 0 { get(k - 1) } else { rat_i(0) };
                row.push(carry - rat_i(m as i64 - 1) * get(k));
            }
            self.s1_rows.push(row);
        }
        self.s1_rows[n][k as usize].clone()
    }

    /// Classical Stirling number of the second kind (`r = 0`).
    pub fn s2(&mut self, n: u32, k: i64) -> Rat {
        self.s2r(n, k, 0)
    }

    /// r-Stirling number of the second kind: partitions into `k` blocks with
    /// the first `r` elements in distinct blocks. Cases: zero below `n = r`,
    /// the Kronecker delta at `n = r`, and
    /// `{n k}_r = k {n-1 k}_r + {n-1 k-1}_r` above it.
    pub fn s2r(&mut self, n: u32, k: i64, r: u32) -> Rat {
        if n < r || k < 0 || k > n as i64 {
            return rat_i(0);
        }
        let rows = self.s2r_rows.entry(r).or_insert_with(|| {
            let mut base = vec![rat_i(0); r as usize + 1];
            base[r as usize] = rat_i(1);
            vec![base]
        });
        let idx = (n - r) as usize;
        while rows.len() <= idx {
            let i = rows.len();
            let prev = &rows[i - 1];
            let get = |k: usize| {
                if k < prev.len() {
                    prev[k].clone()
                } else {
                    rat_i(0)
                }
            };
            let width = r as usize + i + 1;
            let mut row = Vec::with_capacity(width);
            for k in 0..width {
                let carry = if k > 0 { get(k - 1) } else { rat_i(0) };
                row.push(rat_i(k as i64) * get(k) + carry);
            }
            rows.push(row);
        }
        let row = &rows[idx];
        row.get(k as usize).cloned().unwrap_or_else(|| rat_i(0))
    }

    /// Degenerate Stirling number of the second kind, defined as
    /// `n! [t^n] (1/k!)((1+λt)^{1/λ} - 1)^k` with the base series taken as
    /// its coefficient product, so λ = 0 reduces to the classical triangle.
    pub fn s2deg(&mut self, n: u32, k: i64, lambda: &Rat) -> Rat {
        if k < 0 || k > n as i64 {
            return rat_i(0);
        }
        let key = (lambda.clone(), k as u32);
        let needs = match self.s2deg_cols.get(&key) {
            Some(col) => col.len() <= n as usize,
            None => true,
        };
        if needs {
            let order = n as usize;
            let f = degenerate_factors(lambda, order);
            let base_m1 = Series::from_fn("t", order, |m| {
                if m == 0 {
                    rat_i(0)
                } else {
                    &f[m] / factorial(m)
                }
            });
            let g = base_m1.pow(k as u32).scale(&factorial(k as usize).recip());
            let col: Vec<Rat> = (0..=order).map(|m| g.egf_coeff(m)).collect();
            self.s2deg_cols.insert(key.clone(), col);
        }
        self.s2deg_cols[&key][n as usize].clone()
    }
}

thread_local! {
    static CACHE: RefCell<StirlingCache> = RefCell::new(StirlingCache::new());
}

/// Signed Stirling number of the first kind `s(n, k)`.
pub fn stirling1(n: u32, k: i64) -> Rat {
    CACHE.with(|c| c.borrow_mut().s1(n, k))
}

/// Stirling number of the second kind.
pub fn stirling2(n: u32, k: i64) -> Rat {
    CACHE.with(|c| c.borrow_mut().s2(n, k))
}

/// r-Stirling number of the second kind.
pub fn stirling2_r(n: u32, k: i64, r: u32) -> Rat {
    CACHE.with(|c| c.borrow_mut().s2r(n, k, r))
}

/// Degenerate Stirling number of the second kind at rational λ.
pub fn stirling2_degenerate(n: u32, k: i64, lambda: &Rat) -> Rat {
    CACHE.with(|c| c.borrow_mut().s2deg(n, k, lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    // ---- Independent oracles ----

    /// Count partitions of {0,..,n-1} into exactly k blocks with the first r
    /// elements in pairwise distinct blocks, by brute-force enumeration of
    /// restricted growth strings.
    fn count_partitions(n: usize, k: usize, r: usize) -> u64 {
        fn rec(n: usize, k: usize, r: usize, assign: &mut Vec<usize>, blocks: usize) -> u64 {
            let i = assign.len();
            if i == n {
                return u64::from(blocks == k);
            }
            let mut total = 0;
            // block `blocks` opens a new one
            for b in 0..=blocks {
                // first r elements must land in pairwise distinct blocks
                if i < r && assign[..i].contains(&b) {
                    continue;
                }
                assign.push(b);
                total += rec(n, k, r, assign, blocks.max(b + 1));
                assign.pop();
            }
            total
        }
        if n == 0 {
            return u64::from(k == 0);
        }
        rec(n, k, r, &mut Vec::new(), 0)
    }

    /// Expand the falling factorial x(x-1)...(x-n+1) and return its
    /// coefficients by degree.
    fn falling_factorial_coeffs(n: usize) -> Vec<Rat> {
        let mut coeffs = vec![rat_i(1)];
        for j in 0..n {
            // multiply by (x - j)
            let mut next = vec![rat_i(0); coeffs.len() + 1];
            for (d, c) in coeffs.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * rat_i(j as i64);
            }
            coeffs = next;
        }
        coeffs
    }

    #[test]
    fn first_kind_matches_falling_factorial_expansion() {
        for n in 0..=8usize {
            let coeffs = falling_factorial_coeffs(n);
            for k in 0..=n {
                assert_eq!(stirling1(n as u32, k as i64), coeffs[k], "n={n} k={k}");
            }
        }
    }

    #[test]
    fn first_kind_examples() {
        for n in 1..=10u32 {
            assert_eq!(stirling1(n, 0), rat_i(0));
        }
        assert_eq!(stirling1(0, 0), rat_i(1));
        assert_eq!(stirling1(3, 1), rat_i(2));
        assert_eq!(stirling1(4, 4), rat_i(1));
        assert_eq!(stirling1(5, 2), rat_i(-50));
    }

    #[test]
    fn second_kind_matches_partition_enumeration() {
        for n in 0..=8usize {
            for k in 0..=n {
                assert_eq!(
                    stirling2(n as u32, k as i64),
                    rat_i(count_partitions(n, k, 0) as i64),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn second_kind_examples() {
        assert_eq!(stirling2(4, 2), rat_i(7));
        for n in 0..=10u32 {
            assert_eq!(stirling2(n, n as i64), rat_i(1));
        }
        for n in 1..=10u32 {
            assert_eq!(stirling2(n, 0), rat_i(0));
        }
    }

    #[test]
    fn r_stirling_matches_constrained_enumeration() {
        for r in 0..=3usize {
            for n in r..=7usize {
                for k in 0..=n {
                    assert_eq!(
                        stirling2_r(n as u32, k as i64, r as u32),
                        rat_i(count_partitions(n, k, r) as i64),
                        "n={n} k={k} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn r_stirling_boundary_cases() {
        for r in 0..=4u32 {
            for k in 0..=6i64 {
                assert_eq!(
                    stirling2_r(r, k, r),
                    if k == r as i64 { rat_i(1) } else { rat_i(0) }
                );
            }
            if r > 0 {
                assert_eq!(stirling2_r(r - 1, 0, r), rat_i(0));
            }
        }
        assert_eq!(stirling2_r(3, 2, 1), rat_i(3));
    }

    #[test]
    fn degenerate_examples() {
        // λ = 0 reduces to the classical triangle.
        for n in 0..=12u32 {
            for k in 0..=n as i64 {
                assert_eq!(stirling2_degenerate(n, k, &rat_i(0)), stirling2(n, k));
            }
        }
        // leading entries are 1 for any λ
        for lambda in [rat(1, 2), rat_i(1), rat(-1, 3)] {
            for n in 0..=8u32 {
                assert_eq!(stirling2_degenerate(n, n as i64, &lambda), rat_i(1));
            }
            // {2 1}_λ = 1 - λ
            assert_eq!(stirling2_degenerate(2, 1, &lambda), rat_i(1) - &lambda);
        }
    }

    #[test]
    fn degenerate_cache_extends() {
        let mut cache = StirlingCache::new();
        let lambda = rat(1, 2);
        let small = cache.s2deg(3, 2, &lambda);
        let later = cache.s2deg(9, 2, &lambda);
        assert_eq!(cache.s2deg(3, 2, &lambda), small);
        assert_eq!(cache.s2deg(9, 2, &lambda), later);
    }

    // ---- Generating-function cross-checks ----

    #[test]
    fn first_kind_gf_cross_check() {
        for k in 0..=12usize {
            let gf = Series::log1p("t", 12)
                .pow(k as u32)
                .scale(&factorial(k).recip());
            for n in 0..=12usize {
                assert_eq!(
                    stirling1(n as u32, k as i64) / factorial(n),
                    gf.coeff(n),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn r_stirling_gf_cross_check() {
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
                        "n={n} k={k} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn r_shift_identity() {
        // {n k}_r = {n k}_{r-1} - (r-1) {n-1 k}_{r-1}, valid in the triangle
        // region n >= r.
        for r in 1..=4u32 {
            for n in r..=12u32 {
                for k in 0..=n as i64 {
                    assert_eq!(
                        stirling2_r(n, k, r),
                        stirling2_r(n, k, r - 1)
                            - rat_i(r as i64 - 1) * stirling2_r(n - 1, k, r - 1),
                        "n={n} k={k} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn orthogonality_with_second_kind() {
        for n in 0..=12u32 {
            for m in 0..=12i64 {
                let mut acc = rat_i(0);
                for k in 0..=n as i64 {
                    acc += stirling1(n, k) * stirling2(k as u32, m);
                }
                let expect = if n as i64 == m { rat_i(1) } else { rat_i(0) };
                assert_eq!(acc, expect, "n={n} m={m}");
            }
        }
    }
}
