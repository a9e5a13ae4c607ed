//! Exact machinery for symmetric Diophantine systems
//! `φ_j(x) = φ_j(y)` where each `φ_j` is built from elementary symmetric
//! polynomials.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure
//! computation over checked 128-bit integers:
//!
//! - [`int`], [`poly`], [`symmetric`]: exact scalars, dense univariate
//!   polynomials and elementary symmetric functions.
//! - [`system`]: raw, triangular and non-linear systems, row reduction,
//!   capacity bounds and the named system generators.
//! - [`psi`]: the `Ψ(t; h)` polynomial and the master identities.
//! - [`census`]: exhaustive enumeration, solution classes and the exact
//!   trivial count.
//! - [`divsearch`]: the divisor-guided enumeration of non-diagonal
//!   solutions, independent of the exhaustive census.
//! - [`fit`]: log-log slope estimation for growth exponents.
#![no_std]

extern crate alloc;

pub mod census;
pub mod divsearch;
pub mod error;
pub mod factor;
pub mod fit;
pub mod int;
pub mod poly;
pub mod psi;
pub mod symmetric;
pub mod system;

pub use census::{
    brute_census, classify, count_trivial_exact, potentially_diagonal_sweep, product_parametrized_solution,
    BruteCensus, CensusOptions, CensusReport, SolutionClass, SolutionPair,
};
pub use divsearch::{
    divisor_guided_enumerate, divisor_guided_enumerate_nonlinear, integer_roots_in_range, DivisorSearch,
    PartialSearch, SearchOutcome,
};
pub use error::{Error, Result};
pub use factor::{ordered_factorizations, FactorTuple};
pub use fit::{exponent_fit, SlopeFit};
pub use int::Int;
pub use poly::IntPolynomial;
pub use psi::{
    build_psi_linear, build_psi_nonlinear, h_vector, substitution_value, verify_master_identity,
    verify_master_identity_nonlinear, HVector, IdentityCheck, PsiPolynomial, PsiSource,
};
pub use symmetric::{elementary_symmetric, poly_from_roots, SigmaVector};
pub use system::{
    capacity_check, gen_corollary_system, gen_theta_system, normalize, Equations, NonlinearSystem,
    NormalizedSystem, SymmetricSystem, Term, Triangular, TriangularShape, UpsilonPoly,
};

/// Largest supported number of variables per side.
pub const MAX_K: usize = 16;

/// Default work budget, in equation evaluations.
pub const DEFAULT_BUDGET: u64 = 10_000_000_000;
