//! Symmetric systems: the raw coefficient form, the triangular form with
//! its complementary exponent set, and the non-linear variant.

mod generate;
mod reduce;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::int::{self, Int, CAPACITY_LIMIT};
use crate::MAX_K;

pub use generate::{gen_corollary_system, gen_theta_system};
pub use reduce::normalize;

/// `φ_j = Σ_l rows[j][l-1] · σ_l` for `j = 1..r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricSystem {
    k: usize,
    rows: Vec<Vec<Int>>,
}

impl SymmetricSystem {
    /// Validates dimensions and drops all-zero rows.
    pub fn new(k: usize, rows: Vec<Vec<Int>>) -> Result<Self> {
        check_k(k)?;
        if let Some(bad) = rows.iter().find(|row| row.len() != k) {
            return Err(Error::Dimension(format!("row has {} entries, expected k = {k}", bad.len())));
        }
        let rows: Vec<_> = rows.into_iter().filter(|row| row.iter().any(|&c| c != 0)).collect();
        if rows.len() > k {
            return Err(Error::Dimension(format!("{} independent-looking rows exceed k = {k}", rows.len())));
        }
        Ok(Self { k, rows })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }
}

/// Degrees, leading coefficients and the derived quantities shared by the
/// linear and non-linear triangular systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularShape {
    k: usize,
    degrees: Vec<usize>,
    leading: Vec<Int>,
    complement: Vec<usize>,
    weight: usize,
    product: Int,
    cofactors: Vec<Int>,
}

impl TriangularShape {
    pub fn new(k: usize, degrees: Vec<usize>, leading: Vec<Int>) -> Result<Self> {
        check_k(k)?;
        if degrees.is_empty() || degrees.len() != leading.len() {
            return Err(Error::Dimension(format!(
                "{} degrees but {} leading coefficients",
                degrees.len(),
                leading.len()
            )));
        }
        if degrees[0] == 0 || degrees.windows(2).any(|w| w[0] >= w[1]) || degrees[degrees.len() - 1] > k {
            return Err(Error::InvalidInput(format!(
                "degrees {degrees:?} must be strictly increasing within 1..={k}"
            )));
        }
        if leading.contains(&0) {
            return Err(Error::InvalidInput("leading coefficients must be nonzero".into()));
        }
        let complement: Vec<usize> = (1..=k).filter(|l| !degrees.contains(l)).collect();
        let weight = complement.iter().sum();
        let product = leading.iter().try_fold(1, |acc, &a| int::mul(acc, a))?;
        let cofactors = leading.iter().map(|&a| product / a).collect();
        Ok(Self { k, degrees, leading, complement, weight, product, cofactors })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `k_1 < … < k_r`
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// `a_1, …, a_r`
    pub fn leading(&self) -> &[Int] {
        &self.leading
    }

    /// The complementary exponent set `R = {1..k} \ {k_j}`, ascending.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// `w = k(k+1)/2 - Σ k_j = Σ_{l ∈ R} l`
    pub fn weight(&self) -> usize {
        self.weight
    }

    /// `A = ∏ a_j`
    pub fn leading_product(&self) -> Int {
        self.product
    }

    /// `c_j = A / a_j`
    pub fn cofactors(&self) -> &[Int] {
        &self.cofactors
    }

    /// Position of `l` within `R`.
    pub fn complement_index(&self, l: usize) -> Option<usize> {
        self.complement.binary_search(&l).ok()
    }
}

/// Systems in triangular shape (linear or not).
pub trait Triangular {
    fn shape(&self) -> &TriangularShape;
}

/// Triangular form `φ_j = a_j σ_{k_j} - Σ_{l ∈ R, l < k_j} b_{jl} σ_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedSystem {
    shape: TriangularShape,
    offdiag: BTreeMap<(usize, usize), Int>,
}

impl NormalizedSystem {
    /// `offdiag` maps `(j, l)` (row index `j` from 0) to `b_{jl}`; zero
    /// entries are dropped.
    pub fn new(
        k: usize,
        degrees: Vec<usize>,
        leading: Vec<Int>,
        offdiag: BTreeMap<(usize, usize), Int>,
    ) -> Result<Self> {
        let shape = TriangularShape::new(k, degrees, leading)?;
        let mut kept = BTreeMap::new();
        for ((j, l), b) in offdiag {
            if b == 0 {
                continue;
            }
            if j >= shape.degrees.len() || shape.complement_index(l).is_none() || l >= shape.degrees[j] {
                return Err(Error::InvalidInput(format!("b[{j},{l}] must have l in R and l < k_j")));
            }
            kept.insert((j, l), b);
        }
        Ok(Self { shape, offdiag: kept })
    }

    /// `b_{jl}` (zero when not stored).
    pub fn b(&self, j: usize, l: usize) -> Int {
        self.offdiag.get(&(j, l)).copied().unwrap_or(0)
    }

    pub fn offdiag(&self) -> &BTreeMap<(usize, usize), Int> {
        &self.offdiag
    }

    /// Back to the raw coefficient form.
    pub fn to_symmetric(&self) -> SymmetricSystem {
        let k = self.shape.k;
        let mut rows: Vec<Vec<Int>> = self
            .shape
            .degrees
            .iter()
            .zip(&self.shape.leading)
            .map(|(&d, &a)| {
                let mut row = alloc::vec![0; k];
                row[d - 1] = a;
                row
            })
            .collect();
        for (&(j, l), &b) in &self.offdiag {
            rows[j][l - 1] = -b;
        }
        SymmetricSystem { k, rows }
    }
}

impl Triangular for NormalizedSystem {
    fn shape(&self) -> &TriangularShape {
        &self.shape
    }
}

/// One monomial `coeff · ∏ s_m^{exponents[m]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Int,
    pub exponents: Vec<u32>,
}

/// Integer polynomial `Υ` in the indeterminates `s_1..s_R`, one per element of `R`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UpsilonPoly {
    pub terms: Vec<Term>,
}

impl UpsilonPoly {
    pub fn new(terms: Vec<Term>) -> Self {
        Self { terms }
    }

    /// Term-by-term evaluation with checked powers.
    pub fn eval(&self, s: &[Int]) -> Result<Int> {
        let mut total: Int = 0;
        for term in &self.terms {
            let mut value = term.coeff;
            for (&base, &e) in s.iter().zip(&term.exponents) {
                value = int::mul(value, int::pow(base, e)?)?;
            }
            total = int::add(total, value)?;
        }
        Ok(total)
    }

    /// `Σ |coeff| ∏ bound_m^{e_m}`, an upper bound for `|Υ(s)|` when `|s_m| ≤ bound_m`.
    pub fn magnitude_bound(&self, bounds: &[Int]) -> Result<Int> {
        let mut total: Int = 0;
        for term in &self.terms {
            let mut value = int::abs(term.coeff)?;
            for (&b, &e) in bounds.iter().zip(&term.exponents) {
                value = int::mul(value, int::pow(b, e)?)?;
            }
            total = int::add(total, value)?;
        }
        Ok(total)
    }
}

/// `φ_j = a_j σ_{k_j} - Υ_j(σ_{l_1}, …, σ_{l_R})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonlinearSystem {
    shape: TriangularShape,
    upsilons: Vec<UpsilonPoly>,
}

impl NonlinearSystem {
    pub fn new(k: usize, degrees: Vec<usize>, leading: Vec<Int>, upsilons: Vec<UpsilonPoly>) -> Result<Self> {
        let shape = TriangularShape::new(k, degrees, leading)?;
        if upsilons.len() != shape.degrees.len() {
            return Err(Error::Dimension(format!(
                "{} upsilons for {} equations",
                upsilons.len(),
                shape.degrees.len()
            )));
        }
        let width = shape.complement.len();
        if upsilons.iter().flat_map(|u| &u.terms).any(|t| t.exponents.len() != width) {
            return Err(Error::Dimension(format!("every exponent vector must have length |R| = {width}")));
        }
        Ok(Self { shape, upsilons })
    }

    pub fn upsilons(&self) -> &[UpsilonPoly] {
        &self.upsilons
    }
}

impl Triangular for NonlinearSystem {
    fn shape(&self) -> &TriangularShape {
        &self.shape
    }
}

/// Anything whose equations can be evaluated from `σ_0..σ_k`.
pub trait Equations {
    fn k(&self) -> usize;

    fn equation_count(&self) -> usize;

    /// Writes `φ_j(z)` into `out[j]` given `sigma = (σ_0(z), …, σ_k(z))`.
    fn eval_into(&self, sigma: &[Int], out: &mut [Int]) -> Result<()>;

    /// Worst-case magnitude of any intermediate at box size `x_max`.
    fn magnitude_bound(&self, x_max: Int) -> Result<Int>;

    /// True iff `φ_j(x) = φ_j(y)` for every `j`.
    fn is_solution(&self, x: &[Int], y: &[Int]) -> Result<bool> {
        let k = self.k();
        if x.len() != k || y.len() != k {
            return Err(Error::Dimension(format!("tuples must have length {k}")));
        }
        let mut sx = alloc::vec![0; k + 1];
        let mut sy = alloc::vec![0; k + 1];
        crate::symmetric::sigma_into(x, &mut sx)?;
        crate::symmetric::sigma_into(y, &mut sy)?;
        let r = self.equation_count();
        let mut fx = alloc::vec![0; r];
        let mut fy = alloc::vec![0; r];
        self.eval_into(&sx, &mut fx)?;
        self.eval_into(&sy, &mut fy)?;
        Ok(fx == fy)
    }
}

impl Equations for SymmetricSystem {
    fn k(&self) -> usize {
        self.k
    }

    fn equation_count(&self) -> usize {
        self.rows.len()
    }

    fn eval_into(&self, sigma: &[Int], out: &mut [Int]) -> Result<()> {
        for (row, slot) in self.rows.iter().zip(out.iter_mut()) {
            let mut acc: Int = 0;
            for (l, &a) in row.iter().enumerate() {
                if a != 0 {
                    acc = int::add(acc, int::mul(a, sigma[l + 1])?)?;
                }
            }
            *slot = acc;
        }
        Ok(())
    }

    fn magnitude_bound(&self, x_max: Int) -> Result<Int> {
        let mut coeff_sum: Int = 1;
        for &a in self.rows.iter().flatten() {
            coeff_sum = int::add(coeff_sum, int::abs(a)?)?;
        }
        let k = self.k as Int;
        int::mul(int::mul(base_power(x_max, self.k)?, k + 1)?, coeff_sum)
    }
}

impl Equations for NormalizedSystem {
    fn k(&self) -> usize {
        self.shape.k
    }

    fn equation_count(&self) -> usize {
        self.shape.degrees.len()
    }

    fn eval_into(&self, sigma: &[Int], out: &mut [Int]) -> Result<()> {
        for (j, slot) in out.iter_mut().enumerate().take(self.shape.degrees.len()) {
            *slot = int::mul(self.shape.leading[j], sigma[self.shape.degrees[j]])?;
        }
        for (&(j, l), &b) in &self.offdiag {
            out[j] = int::sub(out[j], int::mul(b, sigma[l])?)?;
        }
        Ok(())
    }

    /// `|A| (2X)^k (k+1) (1 + Σ |b_{jl}|)`
    fn magnitude_bound(&self, x_max: Int) -> Result<Int> {
        let mut b_sum: Int = 1;
        for &b in self.offdiag.values() {
            b_sum = int::add(b_sum, int::abs(b)?)?;
        }
        let k = self.shape.k as Int;
        let a = int::abs(self.shape.product)?;
        int::mul(int::mul(int::mul(a, base_power(x_max, self.shape.k)?)?, k + 1)?, b_sum)
    }
}

impl Equations for NonlinearSystem {
    fn k(&self) -> usize {
        self.shape.k
    }

    fn equation_count(&self) -> usize {
        self.shape.degrees.len()
    }

    fn eval_into(&self, sigma: &[Int], out: &mut [Int]) -> Result<()> {
        let s: Vec<Int> = self.shape.complement.iter().map(|&l| sigma[l]).collect();
        for (j, slot) in out.iter_mut().enumerate().take(self.shape.degrees.len()) {
            let lead = int::mul(self.shape.leading[j], sigma[self.shape.degrees[j]])?;
            *slot = int::sub(lead, self.upsilons[j].eval(&s)?)?;
        }
        Ok(())
    }

    /// `(k+1) (|A| (2X)^k + 2 Σ_j |c_j| X^{k-k_j} U_j)` where `U_j` bounds
    /// `|Υ_j|` over the box `|s_m| ≤ 2^k X^{l_m}`.
    fn magnitude_bound(&self, x_max: Int) -> Result<Int> {
        let k = self.shape.k;
        let bounds = h_box_bounds(&self.shape, x_max)?;
        let mut total = int::mul(int::abs(self.shape.product)?, base_power(x_max, k)?)?;
        for (j, ups) in self.upsilons.iter().enumerate() {
            let u = ups.magnitude_bound(&bounds)?;
            let shift = int::pow(x_max, (k - self.shape.degrees[j]) as u32)?;
            let c = int::abs(self.shape.cofactors[j])?;
            total = int::add(total, int::mul(2, int::mul(c, int::mul(shift, u)?)?)?)?;
        }
        int::mul(total, k as Int + 1)
    }
}

/// `2^k X^l` for each `l ∈ R`.
pub fn h_box_bounds(shape: &TriangularShape, x_max: Int) -> Result<Vec<Int>> {
    let two_k = int::pow(2, shape.k as u32)?;
    shape.complement.iter().map(|&l| int::mul(two_k, int::pow(x_max, l as u32)?)).collect()
}

fn base_power(x_max: Int, k: usize) -> Result<Int> {
    int::pow(int::mul(2, x_max)?, k as u32)
}

/// Upper bound on every intermediate magnitude at box size `x_max`, or
/// [`Error::CapacityExceeded`] if that bound reaches `2^120`.
pub fn capacity_check<S: Equations + ?Sized>(system: &S, x_max: Int) -> Result<Int> {
    if x_max < 1 {
        return Err(Error::InvalidInput(format!("X must be positive, got {x_max}")));
    }
    match system.magnitude_bound(x_max) {
        Ok(bound) if bound < CAPACITY_LIMIT => Ok(bound),
        _ => Err(Error::CapacityExceeded),
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 || k > MAX_K {
        return Err(Error::Dimension(format!("need 1 <= k <= {MAX_K}, got {k}")));
    }
    Ok(())
}
