//! The work behind each subcommand, returning text instead of printing.

use paucity_core::{
    count_trivial_exact, exponent_fit, gen_corollary_system, gen_theta_system, normalize,
    potentially_diagonal_sweep, product_parametrized_solution, CensusOptions, Int, IntPolynomial,
    NormalizedSystem, SlopeFit, SolutionPair, Triangular, TriangularShape,
};
use rayon::ThreadPool;

use crate::error::{CliError, Result};
use crate::format::{LoadedSystem, SystemFile};
use crate::parallel;
use crate::report::{CensusRow, Column};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    #[default]
    Brute,
    Divisor,
    /// Run both and fail on any disagreement.
    Both,
}

/// A loaded system together with its triangular form.
pub enum Prepared {
    Linear { raw: paucity_core::SymmetricSystem, norm: NormalizedSystem },
    Nonlinear(paucity_core::NonlinearSystem),
}

impl Prepared {
    /// Fails with `DegenerateSystem` when a linear system has no nonzero rows.
    pub fn new(system: LoadedSystem) -> Result<Self> {
        Ok(match system {
            LoadedSystem::Linear(raw) => {
                let norm = normalize(&raw)?;
                Prepared::Linear { raw, norm }
            }
            LoadedSystem::Nonlinear(n) => Prepared::Nonlinear(n),
        })
    }

    pub fn shape(&self) -> &TriangularShape {
        match self {
            Prepared::Linear { norm, .. } => norm.shape(),
            Prepared::Nonlinear(n) => n.shape(),
        }
    }

    /// `w + 1` for linear systems, `2w + 1` for non-linear ones.
    pub fn exponent_bound(&self) -> usize {
        let w = self.shape().weight();
        match self {
            Prepared::Linear { .. } => w + 1,
            Prepared::Nonlinear(_) => 2 * w + 1,
        }
    }
}

pub fn summary(shape: &TriangularShape) -> String {
    format!(
        "k={} degrees={:?} R={:?} w={} A={}",
        shape.k(),
        shape.degrees(),
        shape.complement(),
        shape.weight(),
        shape.leading_product()
    )
    .replace(", ", ",")
}

pub fn census_row(
    system: &Prepared,
    x_max: Int,
    method: Method,
    budget: u64,
    pool: &ThreadPool,
) -> Result<CensusRow> {
    let collect = method == Method::Both;
    let opts = CensusOptions { budget, collect };
    let brute = match (method, system) {
        (Method::Divisor, _) => None,
        (_, Prepared::Linear { raw, .. }) => Some(parallel::census(pool, raw, x_max, opts)?),
        (_, Prepared::Nonlinear(n)) => Some(parallel::census(pool, n, x_max, opts)?),
    };
    if method == Method::Brute {
        return Ok(CensusRow::from(brute.as_ref().unwrap()));
    }

    let k = system.shape().k();
    let (tstar, found) = match system {
        Prepared::Linear { norm, .. } => (
            potentially_diagonal_sweep(norm, x_max, false)?.0,
            parallel::divisor_linear(pool, norm, x_max, budget)?,
        ),
        Prepared::Nonlinear(n) => (
            potentially_diagonal_sweep(n, x_max, false)?.0,
            parallel::divisor_nonlinear(pool, n, x_max, budget)?,
        ),
    };
    let trivial = count_trivial_exact(k, x_max)? as u128;
    let tdagger = found.pairs.len() as u128;
    let row = CensusRow { x: x_max as u64, n: trivial + tstar + tdagger, trivial, tstar, tdagger };

    if let Some(brute) = brute {
        let expected = CensusRow::from(&brute);
        if expected != row {
            return Err(CliError::Mismatch {
                x: x_max,
                detail: format!("brute {expected:?} vs divisor {row:?}"),
            });
        }
        let listed: Vec<&SolutionPair> = brute.non_diagonal().collect();
        if let Some(i) =
            (0..listed.len().max(found.pairs.len())).find(|&i| listed.get(i).copied() != found.pairs.get(i))
        {
            return Err(CliError::Mismatch {
                x: x_max,
                detail: format!(
                    "non-diagonal lists differ at position {i}: brute {:?}, divisor {:?}",
                    listed.get(i),
                    found.pairs.get(i)
                ),
            });
        }
    }
    Ok(row)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitReport {
    pub fit: SlopeFit,
    pub bound: usize,
}

impl FitReport {
    /// Slope within 0.75 of the exponent bound.
    pub fn pass(&self) -> bool {
        self.fit.slope <= self.bound as f64 + 0.75
    }

    pub fn render(&self) -> String {
        format!(
            "slope={:.4} intercept={:.4} points={} dropped={} bound={} {}\n",
            self.fit.slope,
            self.fit.intercept,
            self.fit.used,
            self.fit.dropped_zero,
            self.bound,
            if self.pass() { "PASS" } else { "WARN" }
        )
    }
}

pub fn fit(rows: &[CensusRow], column: Column, bound: usize) -> Result<FitReport> {
    let points: Vec<(u64, u128)> = rows.iter().map(|r| (r.x, r.column(column))).collect();
    Ok(FitReport { fit: exponent_fit(&points)?, bound })
}

/// `--coeffs` holds either one value for every entry or the full `r × (k-r)`
/// matrix in row-major order.
pub fn gen_corollary(k: usize, r: usize, coeffs: &[Int]) -> Result<SystemFile> {
    if r == 0 || r > k {
        return Err(CliError::Input(format!("need 1 <= r <= k, got r={r} k={k}")));
    }
    let width = k - r;
    let flat = match coeffs.len() {
        1 => vec![coeffs[0]; r * width],
        n if n == r * width => coeffs.to_vec(),
        n => return Err(CliError::Input(format!("expected 1 or {} coefficients, got {n}", r * width))),
    };
    let matrix: Vec<Vec<Int>> =
        if width == 0 { vec![Vec::new(); r] } else { flat.chunks(width).map(<[Int]>::to_vec).collect() };
    Ok(SystemFile::linear(&gen_corollary_system(k, r, &matrix)?))
}

/// `minpoly` lists coefficients from the leading one down to the constant.
pub fn gen_theta(minpoly: &[Int], k: usize) -> Result<SystemFile> {
    let mut low_first = minpoly.to_vec();
    low_first.reverse();
    Ok(SystemFile::linear(&gen_theta_system(&IntPolynomial::from_coeffs(low_first), k)?))
}

pub fn gen_product_solution(matrix: &[Vec<Int>]) -> Result<String> {
    let pair = product_parametrized_solution(matrix)?;
    let tuple = |v: &[Int]| v.iter().map(Int::to_string).collect::<Vec<_>>().join(",");
    Ok(format!("x=({}) y=({})\n", tuple(&pair.x), tuple(&pair.y)))
}
