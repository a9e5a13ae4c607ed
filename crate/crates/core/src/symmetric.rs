//! Elementary symmetric polynomials via the generating function
//! `∏(t + z_i) = Σ_j σ_j(z) t^{k-j}`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::int::{self, Int};
use crate::poly::IntPolynomial;
use crate::MAX_K;

/// `(σ_0(z), σ_1(z), …, σ_k(z))` with `σ_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaVector(Vec<Int>);

impl SigmaVector {
    pub fn values(&self) -> &[Int] {
        &self.0
    }

    /// `σ_l`; panics if `l > k`.
    pub fn get(&self, l: usize) -> Int {
        self.0[l]
    }

    pub fn k(&self) -> usize {
        self.0.len() - 1
    }

    pub fn into_inner(self) -> Vec<Int> {
        self.0
    }
}

/// Computes all `σ_l(z)` by multiplying out `(t + z_i)` one factor at a time.
pub fn elementary_symmetric(z: &[Int]) -> Result<SigmaVector> {
    if z.is_empty() || z.len() > MAX_K {
        return Err(Error::Dimension(format!("need 1 <= k <= {MAX_K}, got {}", z.len())));
    }
    let mut sigma = vec![0; z.len() + 1];
    sigma_into(z, &mut sigma)?;
    Ok(SigmaVector(sigma))
}

/// Allocation-free form of [`elementary_symmetric`]; `out.len()` must be `z.len() + 1`.
pub(crate) fn sigma_into(z: &[Int], out: &mut [Int]) -> Result<()> {
    debug_assert_eq!(out.len(), z.len() + 1);
    out.fill(0);
    out[0] = 1;
    for (i, &zi) in z.iter().enumerate() {
        // multiply by (t + zi): σ_l += zi · σ_{l-1}, descending l
        for l in (1..=i + 1).rev() {
            out[l] = int::add(out[l], int::mul(zi, out[l - 1])?)?;
        }
    }
    Ok(())
}

/// `∏(t + z_i)` as a polynomial of degree exactly `z.len()`.
pub fn poly_from_roots(negated_roots: &[Int]) -> Result<IntPolynomial> {
    let mut p = IntPolynomial::one();
    for &z in negated_roots {
        p.mul_linear(z)?;
    }
    Ok(p)
}
