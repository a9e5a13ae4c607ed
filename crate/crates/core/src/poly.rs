//! Dense univariate polynomials over checked integers.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Result;
use crate::int::{self, Int};

/// Polynomial in one variable `t`; `coeffs[i]` is the coefficient of `t^i`.
///
/// Trailing zeros are never stored, so the zero polynomial has no
/// coefficients and [`degree`](Self::degree) returns `None` for it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<Int>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: Int) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · t^degree`
    pub fn monomial(c: Int, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` stands for the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Int {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| int::add(self.coeff(i), other.coeff(i))).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| int::sub(self.coeff(i), other.coeff(i))).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = int::add(out[i + j], int::mul(a, b)?)?;
            }
        }
        Ok(Self::from_coeffs(out))
    }

    pub fn checked_scale(&self, c: Int) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|&a| int::mul(a, c)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    /// Multiplies in place by `(t + c)`.
    pub fn mul_linear(&mut self, c: Int) -> Result<()> {
        if self.is_zero() {
            return Ok(());
        }
        let n = self.coeffs.len();
        let mut out = vec![0; n + 1];
        for i in 0..n {
            out[i + 1] = int::add(out[i + 1], self.coeffs[i])?;
            out[i] = int::add(out[i], int::mul(c, self.coeffs[i])?)?;
        }
        *self = Self::from_coeffs(out);
        Ok(())
    }

    /// Horner evaluation at `t0`.
    pub fn eval(&self, t0: Int) -> Result<Int> {
        self.coeffs.iter().rev().try_fold(0, |acc, &c| int::add(int::mul(acc, t0)?, c))
    }

    /// Synthetic division by `(t - root)`; `None` if the remainder is nonzero.
    pub fn div_root_exact(&self, root: Int) -> Result<Option<Self>> {
        let Some(deg) = self.degree() else {
            return Ok(Some(Self::zero()));
        };
        if deg == 0 {
            return Ok(None);
        }
        let mut quotient = vec![0; deg];
        let mut carry: Int = 0;
        for i in (0..=deg).rev() {
            let value = int::add(self.coeffs[i], int::mul(carry, root)?)?;
            if i == 0 {
                return Ok((value == 0).then(|| Self::from_coeffs(quotient)));
            }
            quotient[i - 1] = value;
            carry = value;
        }
        unreachable!()
    }

    /// Divides every coefficient by `d`; `None` unless all are divisible.
    pub fn div_scalar_exact(&self, d: Int) -> Option<Self> {
        if d == 0 || self.coeffs.iter().any(|c| c % d != 0) {
            return None;
        }
        Some(Self::from_coeffs(self.coeffs.iter().map(|c| c / d).collect()))
    }

    /// Index of the first coefficient (ascending powers) where the two differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).find(|&i| self.coeff(i) != other.coeff(i))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            if mag != 1 || i == 0 {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Horner evaluation; see [`IntPolynomial::eval`].
pub fn poly_eval(p: &IntPolynomial, t0: Int) -> Result<Int> {
    p.eval(t0)
}
