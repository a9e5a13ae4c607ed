//! Exhaustive solution counts in the box `[1, X]^{2k}` and their split
//! into trivial, potentially diagonal and non-diagonal solutions.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::int::{self, Int};
use crate::symmetric::sigma_into;
use crate::system::{capacity_check, Equations};
use crate::{DEFAULT_BUDGET, MAX_K};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SolutionClass {
    /// `y` is a permutation of `x`.
    Trivial,
    /// Same underlying set, different multiplicities.
    PotentiallyDiagonalNontrivial,
    /// Some value occurs on one side only.
    NonDiagonal,
}

pub fn classify(x: &[Int], y: &[Int]) -> SolutionClass {
    let mut sx = x.to_vec();
    let mut sy = y.to_vec();
    sx.sort_unstable();
    sy.sort_unstable();
    if sx == sy {
        return SolutionClass::Trivial;
    }
    sx.dedup();
    sy.dedup();
    if sx == sy {
        SolutionClass::PotentiallyDiagonalNontrivial
    } else {
        SolutionClass::NonDiagonal
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SolutionPair {
    pub x: Vec<Int>,
    pub y: Vec<Int>,
    pub class: SolutionClass,
}

impl SolutionPair {
    pub fn new(x: Vec<Int>, y: Vec<Int>) -> Self {
        let class = classify(&x, &y);
        Self { x, y, class }
    }

    /// The same pair with the sides exchanged.
    pub fn swapped(&self) -> Self {
        Self { x: self.y.clone(), y: self.x.clone(), class: self.class }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub x_max: Int,
    /// All solutions.
    pub n: u128,
    pub trivial: u128,
    pub tstar: u128,
    pub tdagger: u128,
    /// Non-trivial solutions as ordered pairs, sorted by `(x, y)`; only
    /// populated when requested.
    pub solutions: Option<Vec<SolutionPair>>,
}

impl CensusReport {
    pub fn empty(x_max: Int, collect: bool) -> Self {
        Self { x_max, n: 0, trivial: 0, tstar: 0, tdagger: 0, solutions: collect.then(Vec::new) }
    }

    /// Componentwise sum; solution lists are concatenated and re-sorted so
    /// the result does not depend on merge order.
    pub fn merge(mut self, other: Self) -> Self {
        debug_assert_eq!(self.x_max, other.x_max);
        self.n += other.n;
        self.trivial += other.trivial;
        self.tstar += other.tstar;
        self.tdagger += other.tdagger;
        self.solutions = match (self.solutions, other.solutions) {
            (Some(mut a), Some(b)) => {
                a.extend(b);
                a.sort_unstable();
                Some(a)
            }
            (a, b) => a.or(b),
        };
        self
    }

    /// `N = T + T* + T†`
    pub fn is_consistent(&self) -> bool {
        self.n == self.trivial + self.tstar + self.tdagger
    }

    pub fn non_diagonal(&self) -> impl Iterator<Item = &SolutionPair> {
        self.solutions.iter().flatten().filter(|p| p.class == SolutionClass::NonDiagonal)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    /// Maximum number of equation evaluations, compared against `X^{2k}`.
    pub budget: u64,
    /// Keep the list of non-trivial solutions.
    pub collect: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, collect: false }
    }
}

const BUDGET_CHECK_INTERVAL: u64 = 1 << 16;

/// Exhaustive census with the value table prepared up front.
///
/// Both sides are enumerated as sorted tuples (multisets) and every pair is
/// tested; a solution between multisets `x`, `y` stands for
/// `perms(x) · perms(y)` ordered pairs. [`run_range`](Self::run_range)
/// restricts the `x` side to a slice of the multiset list so that callers
/// can split the work and [`CensusReport::merge`] the pieces.
pub struct BruteCensus<'a, S: ?Sized> {
    system: &'a S,
    x_max: Int,
    options: CensusOptions,
    multisets: Vec<Vec<Int>>,
    perms: Vec<Int>,
    /// `equation_count` values per multiset, flattened
    values: Vec<Int>,
}

impl<'a, S: Equations + ?Sized> BruteCensus<'a, S> {
    pub fn new(system: &'a S, x_max: Int, options: CensusOptions) -> Result<Self> {
        capacity_check(system, x_max)?;
        let k = system.k();
        let needed = (x_max as u128).checked_pow(2 * k as u32).unwrap_or(u128::MAX);
        if needed > options.budget as u128 {
            return Err(Error::WorkBudgetExceeded { budget: options.budget, needed });
        }
        let multisets = sorted_tuples(k, x_max);
        let r = system.equation_count();
        let mut values = vec![0; multisets.len() * r];
        let mut sigma = vec![0; k + 1];
        let mut perms = Vec::with_capacity(multisets.len());
        for (i, z) in multisets.iter().enumerate() {
            sigma_into(z, &mut sigma)?;
            system.eval_into(&sigma, &mut values[i * r..(i + 1) * r])?;
            perms.push(int::multiset_permutations(z)?);
        }
        Ok(Self { system, x_max, options, multisets, perms, values })
    }

    /// Number of sorted `x` tuples; the index space of [`run_range`](Self::run_range).
    pub fn len(&self) -> usize {
        self.multisets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multisets.is_empty()
    }

    pub fn run(&self) -> Result<CensusReport> {
        self.run_range(0..self.len())
    }

    pub fn run_range(&self, range: Range<usize>) -> Result<CensusReport> {
        let r = self.system.equation_count();
        let mut report = CensusReport::empty(self.x_max, self.options.collect);
        let mut tests: u64 = 0;
        for i in range {
            let xi = &self.values[i * r..(i + 1) * r];
            for j in 0..self.multisets.len() {
                tests += 1;
                if tests.is_multiple_of(BUDGET_CHECK_INTERVAL) && tests > self.options.budget {
                    return Err(Error::WorkBudgetExceeded {
                        budget: self.options.budget,
                        needed: tests as u128,
                    });
                }
                if xi != &self.values[j * r..(j + 1) * r] {
                    continue;
                }
                let weight = (self.perms[i] * self.perms[j]) as u128;
                report.n += weight;
                let (x, y) = (&self.multisets[i], &self.multisets[j]);
                let class = classify(x, y);
                match class {
                    SolutionClass::Trivial => report.trivial += weight,
                    SolutionClass::PotentiallyDiagonalNontrivial => report.tstar += weight,
                    SolutionClass::NonDiagonal => report.tdagger += weight,
                }
                if class != SolutionClass::Trivial {
                    if let Some(list) = report.solutions.as_mut() {
                        push_expanded(list, x, y, class);
                    }
                }
            }
        }
        if let Some(list) = report.solutions.as_mut() {
            list.sort_unstable();
        }
        Ok(report)
    }
}

/// Single-threaded exhaustive census.
pub fn brute_census<S: Equations + ?Sized>(
    system: &S,
    x_max: Int,
    options: CensusOptions,
) -> Result<CensusReport> {
    BruteCensus::new(system, x_max, options)?.run()
}

/// Potentially diagonal, non-trivial solutions found by a direct sweep over
/// pairs of multisets sharing the same support. Returns the ordered-pair
/// count and, if `collect`, the expanded pairs.
pub fn potentially_diagonal_sweep<S: Equations + ?Sized>(
    system: &S,
    x_max: Int,
    collect: bool,
) -> Result<(u128, Vec<SolutionPair>)> {
    capacity_check(system, x_max)?;
    let k = system.k();
    let mut count = 0u128;
    let mut pairs = Vec::new();
    for x in sorted_tuples(k, x_max) {
        let mut support = x.clone();
        support.dedup();
        if support.len() == k {
            continue;
        }
        let px = int::multiset_permutations(&x)?;
        for parts in compositions(k, support.len()) {
            let y: Vec<Int> =
                support.iter().zip(&parts).flat_map(|(&v, &m)| core::iter::repeat_n(v, m)).collect();
            if y == x || !system.is_solution(&x, &y)? {
                continue;
            }
            count += (px * int::multiset_permutations(&y)?) as u128;
            if collect {
                push_expanded(&mut pairs, &x, &y, SolutionClass::PotentiallyDiagonalNontrivial);
            }
        }
    }
    pairs.sort_unstable();
    Ok((count, pairs))
}

/// `T_k(X)`: ordered pairs in `[1, X]^{2k}` with equal multisets,
/// `Σ_s C(X, s) Σ_{m_1+…+m_s = k} (k! / ∏ m_i!)²`.
pub fn count_trivial_exact(k: usize, x_max: Int) -> Result<Int> {
    if k == 0 || k > MAX_K {
        return Err(Error::Dimension(format!("need 1 <= k <= {MAX_K}, got {k}")));
    }
    // g[s][n] = Σ over compositions of n into s positive parts of (n!/∏m!)²
    let mut g = vec![vec![0 as Int; k + 1]; k + 1];
    g[0][0] = 1;
    for s in 1..=k {
        for n in s..=k {
            let mut acc: Int = 0;
            for m in 1..=n - (s - 1) {
                let c = int::binomial(n as Int, m as Int)?;
                acc = int::add(acc, int::mul(int::mul(c, c)?, g[s - 1][n - m])?)?;
            }
            g[s][n] = acc;
        }
    }
    let mut total: Int = 0;
    for (s, row) in g.iter().enumerate().skip(1) {
        let choose = int::binomial(x_max, s as Int)?;
        total = int::add(total, int::mul(choose, row[k])?)?;
    }
    Ok(total)
}

/// Solution of `x_1⋯x_k = y_1⋯y_k` from a `k × k` matrix of positive
/// integers: `x_i` is the product of row `i`, `y_j` of column `j`.
pub fn product_parametrized_solution(matrix: &[Vec<Int>]) -> Result<SolutionPair> {
    let k = matrix.len();
    if k == 0 || matrix.iter().any(|row| row.len() != k) {
        return Err(Error::Dimension("matrix must be square and non-empty".into()));
    }
    if matrix.iter().flatten().any(|&m| m < 1) {
        return Err(Error::InvalidInput("matrix entries must be positive".into()));
    }
    let x = matrix
        .iter()
        .map(|row| row.iter().try_fold(1, |acc, &m| int::mul(acc, m)))
        .collect::<Result<Vec<_>>>()?;
    let y = (0..k)
        .map(|j| matrix.iter().try_fold(1, |acc, row| int::mul(acc, row[j])))
        .collect::<Result<Vec<_>>>()?;
    Ok(SolutionPair::new(x, y))
}

/// Non-decreasing `k`-tuples over `[1, X]`, lexicographic.
pub fn sorted_tuples(k: usize, x_max: Int) -> Vec<Vec<Int>> {
    let mut out = Vec::new();
    if x_max < 1 {
        return out;
    }
    let mut z = vec![1 as Int; k];
    loop {
        out.push(z.clone());
        let Some(i) = (0..k).rev().find(|&i| z[i] < x_max) else {
            return out;
        };
        let v = z[i] + 1;
        z[i..].fill(v);
    }
}

/// Every distinct ordering of a sorted tuple, in lexicographic order.
pub fn distinct_permutations(sorted: &[Int]) -> Vec<Vec<Int>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// All ordered pairs whose sides are permutations of the multisets `x`, `y`.
pub(crate) fn push_expanded(list: &mut Vec<SolutionPair>, x: &[Int], y: &[Int], class: SolutionClass) {
    let ys = distinct_permutations(y);
    for px in distinct_permutations(x) {
        for py in &ys {
            list.push(SolutionPair { x: px.clone(), y: py.clone(), class });
        }
    }
}

/// Compositions of `n` into exactly `parts` positive summands.
fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for m in 1..=n - (parts - 1) {
            prefix.push(m);
            go(n - m, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts >= 1 && n >= parts {
        go(n, parts, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{normalize, SymmetricSystem};

    fn lin(k: usize, rows: Vec<Vec<Int>>) -> crate::system::NormalizedSystem {
        normalize(&SymmetricSystem::new(k, rows).unwrap()).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&[1, 2, 3], &[3, 1, 2]), SolutionClass::Trivial);
        assert_eq!(classify(&[1, 1, 2], &[1, 2, 2]), SolutionClass::PotentiallyDiagonalNontrivial);
        assert_eq!(classify(&[1, 6], &[2, 3]), SolutionClass::NonDiagonal);
    }

    #[test]
    fn product_system_at_six() {
        let r = brute_census(&lin(2, vec![vec![0, 1]]), 6, CensusOptions::default()).unwrap();
        assert_eq!((r.n, r.trivial, r.tstar, r.tdagger), (86, 66, 0, 20));
    }

    #[test]
    fn full_system_is_trivial_only() {
        let r = brute_census(&lin(2, vec![vec![1, 0], vec![0, 1]]), 10, CensusOptions::default()).unwrap();
        assert_eq!((r.n, r.trivial, r.tstar, r.tdagger), (190, 190, 0, 0));
    }

    #[test]
    fn single_point_box() {
        let r = brute_census(&lin(3, vec![vec![1, 0, 0]]), 1, CensusOptions::default()).unwrap();
        assert_eq!((r.n, r.trivial), (1, 1));
    }

    #[test]
    fn trivial_counts() {
        assert_eq!(count_trivial_exact(1, 7).unwrap(), 7);
        assert_eq!(count_trivial_exact(2, 10).unwrap(), 190);
        assert_eq!(count_trivial_exact(3, 5).unwrap(), 545);
        assert!(count_trivial_exact(0, 5).is_err());
    }

    #[test]
    fn budget_precheck() {
        let opts = CensusOptions { budget: 10, collect: false };
        assert!(matches!(
            brute_census(&lin(2, vec![vec![0, 1]]), 8, opts),
            Err(Error::WorkBudgetExceeded { .. })
        ));
    }

    #[test]
    fn product_parametrization() {
        let s = product_parametrized_solution(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!((s.x.as_slice(), s.y.as_slice()), (&[2, 12][..], &[3, 8][..]));
        assert_eq!(s.class, SolutionClass::NonDiagonal);

        let s = product_parametrized_solution(&[vec![1; 3], vec![1; 3], vec![1; 3]]).unwrap();
        assert_eq!(s.x, vec![1, 1, 1]);
        assert_eq!(s.class, SolutionClass::Trivial);

        let s = product_parametrized_solution(&[vec![1, 1, 2], vec![1, 3, 1], vec![5, 1, 1]]).unwrap();
        assert_eq!((s.x.as_slice(), s.y.as_slice()), (&[2, 3, 5][..], &[5, 3, 2][..]));
        assert_eq!(s.class, SolutionClass::Trivial);

        assert!(product_parametrized_solution(&[vec![0]]).is_err());
        assert!(product_parametrized_solution(&[vec![1, 2]]).is_err());
    }

    #[test]
    fn permutations_and_tuples() {
        assert_eq!(distinct_permutations(&[1, 1, 2]).len(), 3);
        assert_eq!(distinct_permutations(&[1, 2, 3]).len(), 6);
        assert_eq!(sorted_tuples(2, 3).len(), 6);
        assert_eq!(sorted_tuples(3, 32).len(), 5984);
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
    }

    #[test]
    fn merge_is_order_independent() {
        let sys = lin(2, vec![vec![0, 1]]);
        let opts = CensusOptions { collect: true, ..Default::default() };
        let c = BruteCensus::new(&sys, 12, opts).unwrap();
        let whole = c.run().unwrap();
        let mid = c.len() / 3;
        let a = c.run_range(0..mid).unwrap();
        let b = c.run_range(mid..c.len()).unwrap();
        assert_eq!(a.clone().merge(b.clone()), whole);
        assert_eq!(b.merge(a), whole);
    }
}
