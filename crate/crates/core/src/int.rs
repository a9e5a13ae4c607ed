//! Checked 128-bit integer helpers.
//!
//! Every operation returns the exact result or [`Error::Overflow`]; nothing
//! wraps.

use crate::error::{Error, Result};

/// Exact signed scalar used for every coefficient and symmetric value.
pub type Int = i128;

/// Magnitudes at or above this are rejected by the capacity predicate.
pub const CAPACITY_LIMIT: Int = 1 << 120;

#[inline]
pub fn add(a: Int, b: Int) -> Result<Int> {
    a.checked_add(b).ok_or(Error::Overflow)
}

#[inline]
pub fn sub(a: Int, b: Int) -> Result<Int> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

#[inline]
pub fn mul(a: Int, b: Int) -> Result<Int> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

#[inline]
pub fn neg(a: Int) -> Result<Int> {
    a.checked_neg().ok_or(Error::Overflow)
}

#[inline]
pub fn abs(a: Int) -> Result<Int> {
    a.checked_abs().ok_or(Error::Overflow)
}

#[inline]
pub fn pow(a: Int, e: u32) -> Result<Int> {
    a.checked_pow(e).ok_or(Error::Overflow)
}

/// Non-negative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: Int, b: Int) -> Int {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    // |i128::MIN| only arises from gcd(MIN, 0) or gcd(MIN, MIN)
    a.min(Int::MAX as u128) as Int
}

/// Binomial coefficient `C(n, r)`, exact.
pub fn binomial(n: Int, r: Int) -> Result<Int> {
    if r < 0 || n < 0 || r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut acc: Int = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = mul(acc, n - i)? / (i + 1);
    }
    Ok(acc)
}

pub fn factorial(n: u32) -> Result<Int> {
    (1..=n as Int).try_fold(1, mul)
}

/// Number of distinct orderings of a multiset given as a sorted slice.
pub fn multiset_permutations(sorted: &[Int]) -> Result<Int> {
    let mut count = factorial(sorted.len() as u32)?;
    let mut run = 1u32;
    for i in 1..=sorted.len() {
        if i < sorted.len() && sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            count /= factorial(run)?;
            run = 1;
        }
    }
    Ok(count)
}
