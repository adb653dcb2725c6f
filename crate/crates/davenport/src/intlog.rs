//! Exact base two logarithm arithmetic on integers.
//!
//! Every bound rule in this crate compares expressions in `log2 m` for
//! integer `m`. All of them reduce to integer inequalities:
//!
//! * `floor(log2 m)` is the bit length of `m` minus one.
//! * `frac(log2 a) >= frac(log2 b)` is equivalent to
//!   `a * 2^floor(log2 b) >= b * 2^floor(log2 a)`.
//! * `frac(log2 m_1) + ... + frac(log2 m_t) < k` is equivalent to
//!   `m_1 * ... * m_t < 2^(k + sum floor(log2 m_i))`, with the product taken
//!   in arbitrary precision.
//!
//! No floating point is used anywhere.

use num_bigint::BigUint;

/// `floor(log2 n)` for `n >= 1`.
pub fn floor_log2(n: u64) -> u32 {
    debug_assert!(n >= 1);
    63 - n.leading_zeros()
}

/// `floor(log2 n)` for a positive big integer.
pub fn floor_log2_big(n: &BigUint) -> u64 {
    debug_assert!(*n >= BigUint::from(1u8));
    n.bits() - 1
}

/// Whether `frac(log2 a) >= frac(log2 b)`, exactly. Both arguments must be
/// at least 1.
pub fn frac_log2_ge(a: u64, b: u64) -> bool {
    let lhs = (a as u128) << floor_log2(b);
    let rhs = (b as u128) << floor_log2(a);
    lhs >= rhs
}

/// Whether `frac(log2 m_1) + ... + frac(log2 m_t) < k`, exactly.
pub fn frac_log2_sum_lt(ms: &[u64], k: u32) -> bool {
    let mut prod = BigUint::from(1u8);
    let mut floors: u64 = 0;
    for &m in ms {
        debug_assert!(m >= 1);
        prod *= BigUint::from(m);
        floors += floor_log2(m) as u64;
    }
    prod < (BigUint::from(1u8) << (floors + k as u64))
}

/// Whether `frac(log2 a) + frac(log2 b) < 1` for positive big integers,
/// exactly. This is the gluing condition under which the floor of a sum of
/// logarithms splits into the sum of the floors.
pub fn frac_log2_pair_lt_one(a: &BigUint, b: &BigUint) -> bool {
    let shift = floor_log2_big(a) + floor_log2_big(b) + 1;
    a * b < (BigUint::from(1u8) << shift)
}

/// Largest `k >= 0` with `3 * 2^k <= m`, i.e. `floor(log2(m / 3))` as a real
/// number expression, for `m >= 3`.
pub fn floor_log2_third(m: u64) -> u32 {
    debug_assert!(m >= 3);
    let mut k = 0;
    while (3u64 << (k + 1)) <= m {
        k += 1;
    }
    k
}
