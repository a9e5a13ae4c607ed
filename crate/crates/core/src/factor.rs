//! Ordered factorizations of an integer into `k` signed factors.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::int::Int;

/// Ordered tuple of nonzero factors together with their product.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorTuple {
    divisors: Vec<Int>,
    product: Int,
}

impl FactorTuple {
    /// Fails unless every factor is nonzero and the product is exactly `product`.
    pub fn new(divisors: Vec<Int>, product: Int) -> Result<Self> {
        if divisors.contains(&0) {
            return Err(Error::ZeroProduct);
        }
        let actual =
            divisors.iter().try_fold(1 as Int, |acc, &d| acc.checked_mul(d)).ok_or(Error::Overflow)?;
        if actual != product {
            return Err(Error::InvalidInput(alloc::format!("factors multiply to {actual}, not {product}")));
        }
        Ok(Self { divisors, product })
    }

    pub fn divisors(&self) -> &[Int] {
        &self.divisors
    }

    pub fn product(&self) -> Int {
        self.product
    }
}

/// Positive divisors of `n > 0` in ascending order, by trial division.
pub fn divisors(n: Int) -> Vec<Int> {
    debug_assert!(n > 0);
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut d: Int = 1;
    while d * d <= n {
        if n % d == 0 {
            low.push(d);
            if d * d != n {
                high.push(n / d);
            }
        }
        d += 1;
    }
    low.extend(high.into_iter().rev());
    low
}

/// All ordered `k`-tuples of integers whose product is `n`.
///
/// Positive tuples over the divisor lattice of `|n|` come first, then each
/// admissible sign pattern (an even or odd number of minus signs matching
/// the sign of `n`) is applied to all of them.
pub fn ordered_factorizations(n: Int, k: usize) -> Result<Vec<FactorTuple>> {
    if n == 0 {
        return Err(Error::ZeroProduct);
    }
    if k == 0 {
        return Err(Error::InvalidInput("need k >= 1".into()));
    }
    let magnitude = n.checked_abs().ok_or(Error::Overflow)?;
    let divs = divisors(magnitude);
    let mut positive = Vec::new();
    positive_tuples(magnitude, k, &divs, &mut vec![], &mut positive);

    let want_negative = n < 0;
    let mut out = Vec::new();
    for signs in 0u32..(1 << k) {
        if (signs.count_ones() % 2 == 1) != want_negative {
            continue;
        }
        for tuple in &positive {
            let divisors =
                tuple.iter().enumerate().map(|(i, &d)| if signs >> i & 1 == 1 { -d } else { d }).collect();
            out.push(FactorTuple { divisors, product: n });
        }
    }
    Ok(out)
}

fn positive_tuples(rest: Int, k: usize, divs: &[Int], prefix: &mut Vec<Int>, out: &mut Vec<Vec<Int>>) {
    if k == 1 {
        prefix.push(rest);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for &d in divs.iter().take_while(|&&d| d <= rest) {
        if rest % d == 0 {
            prefix.push(d);
            positive_tuples(rest / d, k - 1, divs, prefix, out);
            prefix.pop();
        }
    }
}

/// Calls `visit` with every non-decreasing `k`-tuple of nonzero integers in
/// `[lo, hi]` whose product is `n`.
///
/// This is the restriction of [`ordered_factorizations`] used by the
/// divisor-guided search, where each factor is `x_i − v` for some
/// `x_i ∈ [1, X]`.
pub(crate) fn sorted_factorizations_in_window(
    n: Int,
    k: usize,
    lo: Int,
    hi: Int,
    visit: &mut dyn FnMut(&[Int]) -> Result<()>,
) -> Result<()> {
    fn go(
        rest: Int,
        k: usize,
        min: Int,
        hi: Int,
        prefix: &mut Vec<Int>,
        visit: &mut dyn FnMut(&[Int]) -> Result<()>,
    ) -> Result<()> {
        if k == 1 {
            if rest >= min && rest <= hi {
                prefix.push(rest);
                visit(prefix)?;
                prefix.pop();
            }
            return Ok(());
        }
        for d in min..=hi {
            if d == 0 || rest % d != 0 {
                continue;
            }
            prefix.push(d);
            go(rest / d, k - 1, d, hi, prefix, visit)?;
            prefix.pop();
        }
        Ok(())
    }
    if n == 0 || k == 0 {
        return Ok(());
    }
    go(n, k, lo, hi, &mut Vec::with_capacity(k), visit)
}
