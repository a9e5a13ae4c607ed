//! The polynomial `Ψ(t; h)` and the identities tying it to a solution pair.
//!
//! For a linear triangular system with `A = ∏ a_j` and `c_j = A / a_j`,
//!
//! ```text
//! ψ_l(t)  = A t^{k-l} + Σ_{k_j > l} c_j b_{jl} t^{k-k_j}      (l ∈ R)
//! Ψ(t; h) = Σ_{l ∈ R} h_l ψ_l(t)
//! ```
//!
//! and every solution satisfies `A(∏(t+x_i) − ∏(t+y_i)) = Ψ(t; h(x, y))`.
//! In the non-linear setting `Ψ(t; e) = A Σ_m e_m t^{k-m} + Σ_j c_j t^{k-k_j} Υ_j(e)`
//! and the right side becomes `Ψ(t; h(x)) − Ψ(t; h(y))`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::int::{self, Int};
use crate::poly::IntPolynomial;
use crate::symmetric::{elementary_symmetric, poly_from_roots};
use crate::system::{h_box_bounds, NonlinearSystem, NormalizedSystem, Triangular, TriangularShape};

/// Values `h_l` indexed by the complementary set `R`, inside the box
/// `|h_l| ≤ 2^k X^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    complement: Vec<usize>,
    values: Vec<Int>,
    x_bound: Int,
}

impl HVector {
    pub fn new(shape: &TriangularShape, values: Vec<Int>, x_bound: Int) -> Result<Self> {
        if values.len() != shape.complement().len() {
            return Err(Error::Dimension(format!(
                "h has {} entries but |R| = {}",
                values.len(),
                shape.complement().len()
            )));
        }
        let bounds = h_box_bounds(shape, x_bound)?;
        if let Some((i, _)) =
            values.iter().zip(&bounds).enumerate().find(|(_, (h, b))| h.unsigned_abs() > b.unsigned_abs())
        {
            return Err(Error::InvalidInput(format!(
                "h_{} = {} lies outside |h| <= {}",
                shape.complement()[i],
                values[i],
                bounds[i]
            )));
        }
        Ok(Self { complement: shape.complement().to_vec(), values, x_bound })
    }

    /// `(σ_l(z))_{l ∈ R}`, the argument of `Ψ(t; ·)` in the non-linear case.
    pub fn sigma_values(z: &[Int], shape: &TriangularShape) -> Result<Self> {
        let x_bound = check_box(z, shape.k())?;
        let sigma = elementary_symmetric(z)?;
        let values = shape.complement().iter().map(|&l| sigma.get(l)).collect();
        Self::new(shape, values, x_bound)
    }

    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn values(&self) -> &[Int] {
        &self.values
    }

    pub fn x_bound(&self) -> Int {
        self.x_bound
    }

    /// `h_l` for `l ∈ R`.
    pub fn get(&self, l: usize) -> Option<Int> {
        self.complement.binary_search(&l).ok().map(|i| self.values[i])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiSource {
    /// `Σ h_l ψ_l(t)` for a linear triangular system.
    Linear,
    /// `A Σ e_m t^{k-m} + Σ c_j t^{k-k_j} Υ_j(e)`.
    Nonlinear,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiPolynomial {
    poly: IntPolynomial,
    source: PsiSource,
}

impl PsiPolynomial {
    fn new(poly: IntPolynomial, source: PsiSource, k: usize) -> Self {
        assert!(poly.degree().is_none_or(|d| d < k), "Ψ must have degree below k");
        Self { poly, source }
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn source(&self) -> PsiSource {
        self.source
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn into_poly(self) -> IntPolynomial {
        self.poly
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityCheck {
    Holds,
    /// Index (power of `t`) of the first coefficient where the sides differ.
    Fails {
        coefficient: usize,
    },
}

impl IdentityCheck {
    pub fn holds(self) -> bool {
        self == Self::Holds
    }
}

/// `h_l = σ_l(x) − σ_l(y)` for `l ∈ R`; `X` is taken as the largest entry.
pub fn h_vector(x: &[Int], y: &[Int], norm: &NormalizedSystem) -> Result<HVector> {
    let shape = norm.shape();
    let x_bound = check_box(x, shape.k())?.max(check_box(y, shape.k())?);
    let values = raw_h(x, y, shape)?;
    HVector::new(shape, values, x_bound)
}

fn raw_h(x: &[Int], y: &[Int], shape: &TriangularShape) -> Result<Vec<Int>> {
    let sx = elementary_symmetric(x)?;
    let sy = elementary_symmetric(y)?;
    shape.complement().iter().map(|&l| int::sub(sx.get(l), sy.get(l))).collect()
}

/// `ψ_l(t)` for every `l ∈ R`, in the order of `R`.
pub fn psi_basis(norm: &NormalizedSystem) -> Result<Vec<IntPolynomial>> {
    let shape = norm.shape();
    let k = shape.k();
    let a = shape.leading_product();
    shape
        .complement()
        .iter()
        .map(|&l| {
            let mut coeffs = vec![0; k];
            coeffs[k - l] = a;
            for (j, &kj) in shape.degrees().iter().enumerate() {
                if kj > l {
                    let term = int::mul(shape.cofactors()[j], norm.b(j, l))?;
                    coeffs[k - kj] = int::add(coeffs[k - kj], term)?;
                }
            }
            Ok(IntPolynomial::from_coeffs(coeffs))
        })
        .collect()
}

pub(crate) fn psi_linear_raw(basis: &[IntPolynomial], h: &[Int]) -> Result<IntPolynomial> {
    let mut acc = IntPolynomial::zero();
    for (psi_l, &h_l) in basis.iter().zip(h) {
        if h_l != 0 {
            acc = acc.checked_add(&psi_l.checked_scale(h_l)?)?;
        }
    }
    Ok(acc)
}

pub(crate) fn psi_nonlinear_raw(nsys: &NonlinearSystem, e: &[Int]) -> Result<IntPolynomial> {
    let shape = nsys.shape();
    let k = shape.k();
    let a = shape.leading_product();
    let mut coeffs = vec![0; k];
    for (&m, &e_m) in shape.complement().iter().zip(e) {
        coeffs[k - m] = int::add(coeffs[k - m], int::mul(a, e_m)?)?;
    }
    for (j, &kj) in shape.degrees().iter().enumerate() {
        let u = nsys.upsilons()[j].eval(e)?;
        let term = int::mul(shape.cofactors()[j], u)?;
        coeffs[k - kj] = int::add(coeffs[k - kj], term)?;
    }
    Ok(IntPolynomial::from_coeffs(coeffs))
}

/// `Ψ(t; h) = Σ_{l ∈ R} h_l ψ_l(t)`.
pub fn build_psi_linear(norm: &NormalizedSystem, h: &HVector) -> Result<PsiPolynomial> {
    let shape = norm.shape();
    if h.complement() != shape.complement() {
        return Err(Error::Dimension("h must be indexed exactly by R".into()));
    }
    let poly = psi_linear_raw(&psi_basis(norm)?, h.values())?;
    Ok(PsiPolynomial::new(poly, PsiSource::Linear, shape.k()))
}

/// `Ψ(t; e) = A Σ_{m ∈ R} e_m t^{k-m} + Σ_j c_j t^{k-k_j} Υ_j(e)`.
pub fn build_psi_nonlinear(nsys: &NonlinearSystem, e: &HVector) -> Result<PsiPolynomial> {
    let shape = nsys.shape();
    if e.complement() != shape.complement() {
        return Err(Error::Dimension("e must be indexed exactly by R".into()));
    }
    let poly = psi_nonlinear_raw(nsys, e.values())?;
    Ok(PsiPolynomial::new(poly, PsiSource::Nonlinear, shape.k()))
}

/// `A (∏(t + x_i) − ∏(t + y_i))`
pub fn scaled_product_difference(x: &[Int], y: &[Int], a: Int) -> Result<IntPolynomial> {
    poly_from_roots(x)?.checked_sub(&poly_from_roots(y)?)?.checked_scale(a)
}

/// Checks `A(∏(t+x_i) − ∏(t+y_i)) = Ψ(t; h(x, y))` coefficient by coefficient.
///
/// On pairs that are not solutions the identity generally fails; the two
/// are equivalent, which makes this usable as a solution test.
pub fn verify_master_identity(x: &[Int], y: &[Int], norm: &NormalizedSystem) -> Result<IdentityCheck> {
    let shape = norm.shape();
    check_len(x, y, shape.k())?;
    let lhs = scaled_product_difference(x, y, shape.leading_product())?;
    let rhs = psi_linear_raw(&psi_basis(norm)?, &raw_h(x, y, shape)?)?;
    Ok(compare(&lhs, &rhs))
}

/// Checks `A(∏(t+x_i) − ∏(t+y_i)) = Ψ(t; h(x)) − Ψ(t; h(y))` with
/// `h(z) = (σ_l(z))_{l ∈ R}`.
pub fn verify_master_identity_nonlinear(
    x: &[Int],
    y: &[Int],
    nsys: &NonlinearSystem,
) -> Result<IdentityCheck> {
    let shape = nsys.shape();
    check_len(x, y, shape.k())?;
    let lhs = scaled_product_difference(x, y, shape.leading_product())?;
    let sx = elementary_symmetric(x)?;
    let sy = elementary_symmetric(y)?;
    let hx: Vec<Int> = shape.complement().iter().map(|&l| sx.get(l)).collect();
    let hy: Vec<Int> = shape.complement().iter().map(|&l| sy.get(l)).collect();
    let rhs = psi_nonlinear_raw(nsys, &hx)?.checked_sub(&psi_nonlinear_raw(nsys, &hy)?)?;
    Ok(compare(&lhs, &rhs))
}

/// `(A ∏(x_i − v), Ψ(−v))`; equal whenever `v` is an entry of a `y` that
/// solves the system with `x` and `psi` is the matching right-hand side.
pub fn substitution_value<S: Triangular>(
    x: &[Int],
    v: Int,
    system: &S,
    psi: &IntPolynomial,
) -> Result<(Int, Int)> {
    let mut lhs = system.shape().leading_product();
    for &xi in x {
        lhs = int::mul(lhs, int::sub(xi, v)?)?;
    }
    let rhs = psi.eval(int::neg(v)?)?;
    Ok((lhs, rhs))
}

fn compare(lhs: &IntPolynomial, rhs: &IntPolynomial) -> IdentityCheck {
    match lhs.first_mismatch(rhs) {
        None => IdentityCheck::Holds,
        Some(coefficient) => IdentityCheck::Fails { coefficient },
    }
}

fn check_len(x: &[Int], y: &[Int], k: usize) -> Result<()> {
    if x.len() != k || y.len() != k {
        return Err(Error::Dimension(format!("tuples must have length {k}")));
    }
    Ok(())
}

/// Returns the largest entry after checking length and positivity.
fn check_box(z: &[Int], k: usize) -> Result<Int> {
    if z.len() != k {
        return Err(Error::Dimension(format!("tuples must have length {k}")));
    }
    match z.iter().copied().min() {
        Some(m) if m >= 1 => Ok(z.iter().copied().max().unwrap_or(1)),
        _ => Err(Error::InvalidInput("entries must lie in [1, X]".into())),
    }
}
