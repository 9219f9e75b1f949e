//! Exact counts of complete games with two types of voters.
//!
//! Everything here is arbitrary precision; `H(88)` already overflows `u64`.
//! Binomials follow the convention `C(m, k) = 0` whenever `k < 0` or
//! `m < k`, negative `m` included. The closed form for `N(a, s, b)` only
//! matches direct enumeration under that convention (`N(1, 1, 1) = 0`
//! needs `C(-1, 0) = 0`).

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

pub type BigCount = BigUint;

/// `C(m, k)`, zero outside `0 <= k <= m`.
pub fn binom(m: i64, k: i64) -> BigCount {
    if k < 0 || m < k {
        return BigCount::zero();
    }
    let k = k.min(m - k) as u64;
    let m = m as u64;
    let mut acc = BigCount::one();
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// `C(m, 0), C(m, 1), ..., C(m, upto)` with the same zero convention.
fn binom_row(m: i64, upto: i64) -> Vec<BigCount> {
    let len = (upto + 1).max(0) as usize;
    let mut row = Vec::with_capacity(len);
    if m < 0 {
        row.resize(len, BigCount::zero());
        return row;
    }
    let mut c = BigCount::one();
    for k in 0..len as i64 {
        if k > m {
            row.push(BigCount::zero());
            continue;
        }
        row.push(c.clone());
        c *= (m - k) as u64;
        c /= (k + 1) as u64;
    }
    row
}

/// Fibonacci number with `F(0) = 0`, `F(1) = 1`, by fast doubling.
pub fn fib(n: u64) -> BigCount {
    fib_pair(n).0
}

/// `(F(n), F(n + 1))`.
fn fib_pair(n: u64) -> (BigCount, BigCount) {
    if n == 0 {
        return (BigCount::zero(), BigCount::one());
    }
    let (a, b) = fib_pair(n / 2);
    // F(2k) = F(k) (2 F(k+1) - F(k)),  F(2k+1) = F(k)^2 + F(k+1)^2
    let c = &a * (&b * 2u32 - &a);
    let d = &a * &a + &b * &b;
    if n.is_multiple_of(2) {
        (c, d)
    } else {
        let next = &c + &d;
        (d, next)
    }
}

/// Number of matrices whose first row is `(a, s - a)`, whose last row ends
/// in `b`, and whose rows have strictly decreasing first components and
/// strictly increasing sums.
///
/// Returns 0 when `s < a`.
pub fn count_n(a: u64, s: u64, b: u64) -> BigCount {
    if s < a || s - a > b {
        return BigCount::zero();
    }
    if s - a == b {
        return BigCount::one();
    }
    let (a, s, b) = (a as i64, s as i64, b as i64);
    let m = b + a - 2 - s;
    binom_row(m, a - 1).into_iter().sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("arguments ({a},{s},{b}) exceed the brute-force cap {cap}")]
    TooLarge { a: u64, s: u64, b: u64, cap: u64 },
}

/// Default argument cap for [`count_n_oracle`].
pub const ORACLE_CAP: u64 = 16;

/// Counts the same matrices as [`count_n`] by walking every admissible
/// sequence of rows.
///
/// `cap` bounds `a`, `s - a` and `b`; the walk is exponential.
pub fn count_n_oracle(a: u64, s: u64, b: u64, cap: u64) -> Result<BigCount, OracleError> {
    if a > cap || b > cap || s > a + cap {
        return Err(OracleError::TooLarge { a, s, b, cap });
    }
    if s < a {
        return Ok(BigCount::zero());
    }

    // Matrices continuing after row (m1, sum) with last second entry b.
    fn walk(m1: u64, sum: u64, b: u64) -> u64 {
        let mut total = u64::from(sum - m1 == b);
        for next_m1 in 0..m1 {
            for next_m2 in 0..=b {
                if next_m1 + next_m2 > sum {
                    total += walk(next_m1, next_m1 + next_m2, b);
                }
            }
        }
        total
    }

    Ok(BigCount::from(walk(a, s, b)))
}

/// Number of matrices satisfying the parametrization conditions for class
/// sizes `(a, b)`:
/// `sum_{i=0}^{a} sum_{k=0}^{i-1} C(b, k+2) + a b`.
pub fn count_g(a: u64, b: u64) -> BigCount {
    // prefix(i) = sum_{k=0}^{i-1} C(b, k+2) stops growing once k + 2 > b.
    let row = binom_row(b as i64, b as i64);
    let mut prefix = BigCount::zero();
    let mut total = BigCount::zero();
    let mut i = 1;
    while i <= a {
        let k2 = (i + 1) as usize;
        if k2 > b as usize {
            total += &prefix * (a - i + 1);
            break;
        }
        prefix += &row[k2];
        total += &prefix;
        i += 1;
    }
    total + BigCount::from(a) * b
}

/// `F(n + 6) - (n^2 + 4n + 8)`.
pub fn count_h_formula(n: u64) -> BigCount {
    fib(n + 6) - poly(n)
}

fn poly(n: u64) -> BigCount {
    let n = BigCount::from(n);
    &n * &n + &n * 4u32 + 8u32
}

/// `sum_{a=1}^{n} G(a, n - a)`.
pub fn count_h_sum(n: u64) -> BigCount {
    (1..=n).map(|a| count_g(a, n - a)).sum()
}
