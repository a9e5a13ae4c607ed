//! Divisor-guided enumeration of non-diagonal solutions.
//!
//! For a non-diagonal solution some value `v` occurs in `y` but not in `x`.
//! Substituting `t = −v` in `A(∏(t+x_i) − ∏(t+y_i)) = Ψ(t; h)` gives
//! `A ∏(x_i − v) = Ψ(−v; h) =: Θ ≠ 0`. So the search runs over the `h` box
//! and `v ∈ [1, X]`, factors `Θ / A` into `k` divisors `x_i − v`, and then
//! reads `y` off as the integer roots of `A∏(t+x_i) − Ψ(t; h)`.
//!
//! Only pairs with a value of `y` missing from `x` are reached directly;
//! the remaining orientation is recovered by swapping sides, which maps
//! solutions to solutions. `x` is generated in sorted order and both sides
//! are expanded to every ordering at the end, so the output is the full set
//! of ordered non-diagonal pairs, sorted.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::census::{push_expanded, SolutionClass, SolutionPair};
use crate::error::{Error, Result};
use crate::factor::sorted_factorizations_in_window;
use crate::int::{self, Int};
use crate::poly::IntPolynomial;
use crate::psi::{
    psi_basis, psi_linear_raw, psi_nonlinear_raw, verify_master_identity, verify_master_identity_nonlinear,
};
use crate::symmetric::{elementary_symmetric, poly_from_roots};
use crate::system::{capacity_check, h_box_bounds, Equations, NonlinearSystem, NormalizedSystem, Triangular};

/// Every integer `t ∈ [lo, hi]` with `p(t) = 0`, ascending, repeated
/// according to multiplicity (found by repeated synthetic division).
pub fn integer_roots_in_range(p: &IntPolynomial, lo: Int, hi: Int) -> Result<Vec<Int>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial has every root".into()));
    }
    let mut rest = p.clone();
    let mut roots = Vec::new();
    let mut t = lo;
    while t <= hi && rest.degree() > Some(0) {
        match rest.div_root_exact(t)? {
            Some(q) => {
                roots.push(t);
                rest = q;
            }
            None => t += 1,
        }
    }
    Ok(roots)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// All ordered non-diagonal pairs, sorted by `(x, y)`.
    pub pairs: Vec<SolutionPair>,
    /// `(h, v)` combinations visited (`(h, g, v)` in the non-linear search).
    pub visited: u128,
}

/// Output of one slice of the search: sorted `(x, y)` multisets plus the
/// visit count.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialSearch {
    pub found: BTreeSet<(Vec<Int>, Vec<Int>)>,
    pub visited: u128,
}

/// Maps a sorted `x` to its verified partner `y`, if any.
type Recover<'f> = dyn FnMut(&[Int]) -> Result<Option<Vec<Int>>> + 'f;

enum Mode<'a> {
    Linear {
        norm: &'a NormalizedSystem,
        basis: Vec<IntPolynomial>,
        bounds: Vec<Int>,
        /// `psi_at[i][v]` = `ψ_{l_i}(−v)`
        psi_at: Vec<Vec<Int>>,
    },
    Nonlinear {
        nsys: &'a NonlinearSystem,
        /// every admissible `e`, its `Ψ(t; e)` and `Ψ(−v; e)`
        points: Vec<Vec<Int>>,
        polys: Vec<IntPolynomial>,
        psi_at: Vec<Vec<Int>>,
    },
}

/// Prepared divisor-guided search at one box size.
///
/// The first coordinate of the outer box is the partition axis:
/// [`run_part`](Self::run_part) handles a sub-range of it so callers can
/// split the work, and [`finish`](Self::finish) merges the slices.
pub struct DivisorSearch<'a> {
    mode: Mode<'a>,
    k: usize,
    a: Int,
    x_max: Int,
}

impl<'a> DivisorSearch<'a> {
    pub fn linear(norm: &'a NormalizedSystem, x_max: Int, budget: u64) -> Result<Self> {
        capacity_check(norm, x_max)?;
        let shape = norm.shape();
        let bounds = h_box_bounds(shape, x_max)?;
        let volume = bounds.iter().try_fold(1u128, |acc, &b| acc.checked_mul(2 * b as u128 + 1));
        check_budget(volume.and_then(|v| v.checked_mul(x_max as u128)), budget)?;
        let basis = psi_basis(norm)?;
        let psi_at = basis
            .iter()
            .map(|p| (0..=x_max).map(|v| p.eval(-v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            mode: Mode::Linear { norm, basis, bounds, psi_at },
            k: shape.k(),
            a: shape.leading_product(),
            x_max,
        })
    }

    /// The non-linear search runs `h` and `g` independently over the values
    /// `σ_l` can take on `[1, X]^k`, namely `[C(k, l), C(k, l) X^l]`.
    pub fn nonlinear(nsys: &'a NonlinearSystem, x_max: Int, budget: u64) -> Result<Self> {
        capacity_check(nsys, x_max)?;
        let shape = nsys.shape();
        let k = shape.k();
        let ranges = shape
            .complement()
            .iter()
            .map(|&l| {
                let c = int::binomial(k as Int, l as Int)?;
                Ok((c, int::mul(c, int::pow(x_max, l as u32)?)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let volume = ranges.iter().try_fold(1u128, |acc, &(lo, hi)| acc.checked_mul((hi - lo + 1) as u128));
        let needed = volume.and_then(|v| v.checked_mul(v)).and_then(|v| v.checked_mul(x_max as u128));
        check_budget(needed, budget)?;

        let mut points = Vec::new();
        let lo: Vec<Int> = ranges.iter().map(|r| r.0).collect();
        let hi: Vec<Int> = ranges.iter().map(|r| r.1).collect();
        let mut e = lo.clone();
        loop {
            points.push(e.clone());
            if !odometer(&mut e, &lo, &hi) {
                break;
            }
        }
        let polys = points.iter().map(|e| psi_nonlinear_raw(nsys, e)).collect::<Result<Vec<_>>>()?;
        let psi_at = polys
            .iter()
            .map(|p| (0..=x_max).map(|v| p.eval(-v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            mode: Mode::Nonlinear { nsys, points, polys, psi_at },
            k,
            a: shape.leading_product(),
            x_max,
        })
    }

    /// Size of the partition axis.
    pub fn partition_len(&self) -> usize {
        match &self.mode {
            Mode::Linear { bounds, .. } => bounds.first().map_or(1, |&b| (2 * b + 1) as usize),
            Mode::Nonlinear { points, .. } => points.len(),
        }
    }

    pub fn run(&self) -> Result<SearchOutcome> {
        Ok(Self::finish([self.run_part(0..self.partition_len())?]))
    }

    pub fn run_part(&self, range: Range<usize>) -> Result<PartialSearch> {
        match &self.mode {
            Mode::Linear { .. } => self.run_linear(range),
            Mode::Nonlinear { .. } => self.run_nonlinear(range),
        }
    }

    /// Unions the slices, closes under swapping sides and expands every
    /// multiset pair to all of its orderings.
    pub fn finish(parts: impl IntoIterator<Item = PartialSearch>) -> SearchOutcome {
        let mut found = BTreeSet::new();
        let mut visited = 0;
        for part in parts {
            visited += part.visited;
            found.extend(part.found);
        }
        let swapped: Vec<_> = found.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        found.extend(swapped);
        let mut pairs = Vec::new();
        for (x, y) in &found {
            push_expanded(&mut pairs, x, y, SolutionClass::NonDiagonal);
        }
        pairs.sort_unstable();
        SearchOutcome { pairs, visited }
    }

    fn run_linear(&self, range: Range<usize>) -> Result<PartialSearch> {
        let Mode::Linear { norm, basis, bounds, psi_at } = &self.mode else { unreachable!() };
        let mut out = PartialSearch::default();
        if bounds.is_empty() {
            // R = ∅: Ψ ≡ 0, so every solution is trivial
            if range.contains(&0) {
                out.visited = self.x_max as u128;
            }
            return Ok(out);
        }
        let mut lo: Vec<Int> = bounds.iter().map(|&b| -b).collect();
        let mut hi = bounds.clone();
        lo[0] = -bounds[0] + range.start as Int;
        hi[0] = -bounds[0] + range.end as Int - 1;
        if lo[0] > hi[0] {
            return Ok(out);
        }
        let mut h = lo.clone();
        loop {
            out.visited += self.x_max as u128;
            if h.iter().any(|&c| c != 0) {
                let mut psi: Option<IntPolynomial> = None;
                for v in 1..=self.x_max {
                    let mut theta: Int = 0;
                    for (i, &hl) in h.iter().enumerate() {
                        theta = int::add(theta, int::mul(hl, psi_at[i][v as usize])?)?;
                    }
                    self.branch(theta, v, &mut out.found, &mut |x| {
                        if psi.is_none() {
                            psi = Some(psi_linear_raw(basis, &h)?);
                        }
                        let rhs = psi.as_ref().unwrap();
                        let Some(y) = self.recover(x, rhs, v)? else {
                            return Ok(None);
                        };
                        let ok = verify_master_identity(x, &y, norm)?.holds() && norm.is_solution(x, &y)?;
                        Ok(ok.then_some(y))
                    })?;
                }
            }
            if !odometer(&mut h, &lo, &hi) {
                break;
            }
        }
        Ok(out)
    }

    fn run_nonlinear(&self, range: Range<usize>) -> Result<PartialSearch> {
        let Mode::Nonlinear { nsys, points, polys, psi_at } = &self.mode else { unreachable!() };
        let shape = nsys.shape();
        let mut out = PartialSearch::default();
        for hi in range {
            for gi in 0..points.len() {
                out.visited += self.x_max as u128;
                if polys[hi] == polys[gi] {
                    continue;
                }
                let mut rhs: Option<IntPolynomial> = None;
                for v in 1..=self.x_max {
                    let theta = int::sub(psi_at[hi][v as usize], psi_at[gi][v as usize])?;
                    self.branch(theta, v, &mut out.found, &mut |x| {
                        // h is σ_R(x) by definition
                        let sigma = elementary_symmetric(x)?;
                        if shape.complement().iter().zip(&points[hi]).any(|(&l, &e)| sigma.get(l) != e) {
                            return Ok(None);
                        }
                        if rhs.is_none() {
                            rhs = Some(polys[hi].checked_sub(&polys[gi])?);
                        }
                        let Some(y) = self.recover(x, rhs.as_ref().unwrap(), v)? else {
                            return Ok(None);
                        };
                        let ok = verify_master_identity_nonlinear(x, &y, nsys)?.holds()
                            && nsys.is_solution(x, &y)?;
                        Ok(ok.then_some(y))
                    })?;
                }
            }
        }
        Ok(out)
    }

    /// Handles one `(Θ, v)`: divisibility gate, size gate, factor tuples of
    /// `Θ / A` in the window `x_i − v ∈ [1 − v, X − v] \ {0}`, then `accept`
    /// turns a sorted `x` into a verified `y`.
    fn branch(
        &self,
        theta: Int,
        v: Int,
        found: &mut BTreeSet<(Vec<Int>, Vec<Int>)>,
        accept: &mut Recover<'_>,
    ) -> Result<()> {
        if theta == 0 || theta % self.a != 0 {
            return Ok(());
        }
        let target = theta / self.a;
        let reach = (v - 1).max(self.x_max - v);
        if let Some(limit) = reach.checked_pow(self.k as u32) {
            if target.unsigned_abs() > limit.unsigned_abs() {
                return Ok(());
            }
        }
        let mut x = vec![0; self.k];
        sorted_factorizations_in_window(target, self.k, 1 - v, self.x_max - v, &mut |d| {
            for (xi, &di) in x.iter_mut().zip(d) {
                *xi = v + di;
            }
            if let Some(y) = accept(&x)? {
                found.insert((x.clone(), y));
            }
            Ok(())
        })
    }

    /// Solves `A ∏(t + y_i) = A ∏(t + x_i) − rhs(t)` for `y ∈ [1, X]^k`
    /// containing `v`; returns `y` sorted.
    fn recover(&self, x: &[Int], rhs: &IntPolynomial, v: Int) -> Result<Option<Vec<Int>>> {
        let q = poly_from_roots(x)?.checked_scale(self.a)?.checked_sub(rhs)?;
        let Some(monic) = q.div_scalar_exact(self.a) else {
            return Ok(None);
        };
        if monic.degree() != Some(self.k) {
            return Ok(None);
        }
        let roots = integer_roots_in_range(&monic, -self.x_max, -1)?;
        if roots.len() != self.k {
            return Ok(None);
        }
        let mut y: Vec<Int> = roots.iter().map(|r| -r).collect();
        y.sort_unstable();
        Ok(y.contains(&v).then_some(y))
    }
}

fn check_budget(needed: Option<u128>, budget: u64) -> Result<()> {
    match needed {
        Some(n) if n <= budget as u128 => Ok(()),
        n => Err(Error::WorkBudgetExceeded { budget, needed: n.unwrap_or(u128::MAX) }),
    }
}

/// Advances `e` through the box `lo..=hi` (last coordinate fastest);
/// false once the box is exhausted.
fn odometer(e: &mut [Int], lo: &[Int], hi: &[Int]) -> bool {
    for i in (0..e.len()).rev() {
        if e[i] < hi[i] {
            e[i] += 1;
            return true;
        }
        e[i] = lo[i];
    }
    false
}

/// All ordered non-diagonal solutions of a linear system in `[1, X]^{2k}`.
pub fn divisor_guided_enumerate(norm: &NormalizedSystem, x_max: Int, budget: u64) -> Result<SearchOutcome> {
    DivisorSearch::linear(norm, x_max, budget)?.run()
}

/// Non-linear counterpart of [`divisor_guided_enumerate`].
pub fn divisor_guided_enumerate_nonlinear(
    nsys: &NonlinearSystem,
    x_max: Int,
    budget: u64,
) -> Result<SearchOutcome> {
    DivisorSearch::nonlinear(nsys, x_max, budget)?.run()
}
