//! Seeded property suites behind `paucity verify`.
//!
//! Random inputs come from SplitMix64 (Steele, Lea and Flood, 2014) seeded
//! with the 64-bit `--seed`. Every suite draws its own sub-seed from one
//! master SplitMix64 stream, in the order the suites are listed, so a suite's
//! inputs do not depend on how many values another suite consumed.

use paucity_core::census::sorted_tuples;
use paucity_core::psi::scaled_product_difference;
use paucity_core::{
    brute_census, build_psi_linear, classify, elementary_symmetric, h_vector, normalize, poly_from_roots,
    substitution_value, verify_master_identity_nonlinear, CensusOptions, Int, IntPolynomial, NonlinearSystem,
    NormalizedSystem, SolutionClass, SymmetricSystem, Term, Triangular, UpsilonPoly,
};
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::format::SystemFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random tuples per tuple-level suite.
    pub cases: usize,
    /// Random systems per system-level suite.
    pub systems: usize,
    pub max_k: usize,
    pub x_max: Int,
    /// Adds one to the constant coefficient of every `Ψ` the identity suite
    /// builds. Exists only to show the harness can fail.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { seed: 0, cases: 1000, systems: 20, max_k: 4, x_max: 8, inject_fault: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    /// First random input the suite drew.
    pub witness: String,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        Self { name, checked: 0, failures: 0, witness: String::new(), first_failure: None }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn witness(&mut self, text: impl FnOnce() -> String) {
        if self.witness.is_empty() {
            self.witness = text();
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn render(&self) -> String {
        let mut line = format!(
            "{} {} checked={} witness: {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checked,
            self.witness
        );
        if let Some(f) = &self.first_failure {
            line += &format!("\n  first failure ({} total): {f}", self.failures);
        }
        line
    }
}

type Suite = fn(&VerifyConfig, &mut SplitMix64) -> SuiteResult;

const SUITES: [Suite; 6] = [
    generating_function,
    permutation_invariance,
    normalization,
    master_identity,
    psi_zero_criterion,
    nonlinear_identity,
];

pub fn run(config: &VerifyConfig) -> Vec<SuiteResult> {
    let mut master = SplitMix64::seed_from_u64(config.seed);
    SUITES
        .iter()
        .map(|suite| {
            let mut rng = SplitMix64::seed_from_u64(master.next_u64());
            suite(config, &mut rng)
        })
        .collect()
}

fn show(z: &[Int]) -> String {
    let parts: Vec<String> = z.iter().map(Int::to_string).collect();
    format!("({})", parts.join(","))
}

fn random_tuple(rng: &mut SplitMix64, k: usize, lo: Int, hi: Int) -> Vec<Int> {
    (0..k).map(|_| rng.random_range(lo..=hi)).collect()
}

/// Coefficients of `∏(t + z_i)`, constant first, via a sum over all subsets.
fn product_by_subsets(z: &[Int]) -> Vec<Int> {
    let k = z.len();
    let mut sigma = vec![0; k + 1];
    for mask in 0u32..1 << k {
        let p: Int = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| z[i]).product();
        sigma[mask.count_ones() as usize] += p;
    }
    sigma.reverse();
    sigma
}

fn generating_function(cfg: &VerifyConfig, rng: &mut SplitMix64) -> SuiteResult {
    let mut out = SuiteResult::new("generating-function");
    for _ in 0..cfg.cases {
        let k = rng.random_range(1..=8);
        let z = random_tuple(rng, k, -50, 50);
        out.witness(|| format!("z={}", show(&z)));
        let expected = product_by_subsets(&z);
        let ok = poly_from_roots(&z).is_ok_and(|p| p.coeffs() == expected.as_slice())
            && elementary_symmetric(&z).is_ok_and(|s| s.values().iter().rev().eq(expected.iter()));
        out.check(ok, || format!("z={}", show(&z)));
    }
    out
}

fn permutation_invariance(cfg: &VerifyConfig, rng: &mut SplitMix64) -> SuiteResult {
    let mut out = SuiteResult::new("permutation-invariance");
    for _ in 0..cfg.cases {
        let k = rng.random_range(1..=8);
        let mut z = random_tuple(rng, k, -50, 50);
        let before = elementary_symmetric(&z);
        z.shuffle(rng);
        out.witness(|| format!("z={}", show(&z)));
        out.check(before == elementary_symmetric(&z), || format!("z={}", show(&z)));
    }
    out
}

/// Random raw system with rank at least one.
fn random_system(rng: &mut SplitMix64, max_k: usize) -> (SymmetricSystem, NormalizedSystem) {
    loop {
        let k = rng.random_range(1..=max_k);
        let r = rng.random_range(1..=k);
        let rows = (0..r).map(|_| random_tuple(rng, k, -2, 2)).collect();
        let sys = SymmetricSystem::new(k, rows).expect("rows have length k");
        if let Ok(norm) = normalize(&sys) {
            return (sys, norm);
        }
    }
}

fn normalization(cfg: &VerifyConfig, rng: &mut SplitMix64) -> SuiteResult {
    let mut out = SuiteResult::new("normalization");
    for _ in 0..cfg.cases {
        let (sys, norm) = random_system(rng, cfg.max_k.max(1));
        out.witness(|| format!("rows={:?}", sys.rows()));
        let shape = norm.shape();
        let k = shape.k();
        let ok = shape.degrees().windows(2).all(|w| w[0] < w[1])
            && shape.weight() == k * (k + 1) / 2 - shape.degrees().iter().sum::<usize>()
            && shape.complement().iter().sum::<usize>() == shape.weight()
            && normalize(&norm.to_symmetric()).as_ref() == Ok(&norm);
        out.check(ok, || format!("rows={:?}", sys.rows()));
    }
    out
}

/// Non-trivial solutions of `sys` with both sides sorted.
fn canonical_solutions(sys: &SymmetricSystem, x_max: Int) -> Vec<(Vec<Int>, Vec<Int>)> {
    let opts = CensusOptions { collect: true, budget: u64::MAX };
    let Ok(report) = brute_census(sys, x_max, opts) else {
        return Vec::new();
    };
    report
        .solutions
        .unwrap_or_default()
        .into_iter()
        .filter(|p| p.x.is_sorted() && p.y.is_sorted())
        .map(|p| (p.x, p.y))
        .collect()
}

fn master_identity(cfg: &VerifyConfig, rng: &mut SplitMix64) -> SuiteResult {
    let mut out = SuiteResult::new("master-identity");
    for _ in 0..cfg.systems {
        let (sys, norm) = random_system(rng, cfg.max_k.max(1));
        let x_max = rng.random_range(1..=cfg.x_max.max(1));
        let a = norm.shape().leading_product();
        let mut pairs = canonical_solutions(&sys, x_max);
        // trivial pairs must satisfy the identity too
        let tuples = sorted_tuples(sys.k(), x_max);
        let t = tuples[rng.random_range(0..tuples.len())].clone();
        let mut shuffled = t.clone();
        shuffled.shuffle(rng);
        pairs.push((t, shuffled));
        for (x, y) in pairs {
            out.witness(|| format!("rows={:?} X={x_max} x={} y={}", sys.rows(), show(&x), show(&y)));
            let psi = h_vector(&x, &y, &norm)
                .and_then(|h| build_psi_linear(&norm, &h))
                .map(|p| inject(p.into_poly(), cfg.inject_fault));
            let Ok(psi) = psi else {
                out.check(false, || format!("could not build Ψ for x={} y={}", show(&x), show(&y)));
                continue;
            };
            let lhs = scaled_product_difference(&x, &y, a);
            let mismatch = lhs.map(|l| l.first_mismatch(&psi));
            out.check(mismatch == Ok(None), || {
                format!("rows={:?} x={} y={} coefficient {:?}", sys.rows(), show(&x), show(&y), mismatch)
            });
            for &v in &y {
                let ok = substitution_value(&x, v, &norm, &psi).is_ok_and(|(l, r)| l == r);
                out.check(ok, || format!("rows={:?} x={} y={} at t=-{v}", sys.rows(), show(&x), show(&y)));
            }
        }
    }
    out
}

fn inject(psi: IntPolynomial, fault: bool) -> IntPolynomial {
    if !fault {
        return psi;
    }
    let mut c = psi.coeffs().to_vec();
    if c.is_empty() {
        c.push(0);
    }
    c[0] += 1;
    IntPolynomial::from_coeffs(c)
}

fn psi_zero_criterion(cfg: &VerifyConfig, rng: &mut SplitMix64) -> SuiteResult {
    let mut out = SuiteResult::new("psi-zero-criterion");
    for _ in 0..cfg.systems {
        let (sys, norm) = random_system(rng, cfg.max_k.max(1));
        let x_max = rng.random_range(1..=cfg.x_max.max(1));
        let opts = CensusOptions { collect: true, budget: u64::MAX };
        let Ok(report) = brute_census(&sys, x_max, opts) else {
            continue;
        };
        let mut pairs: Vec<(Vec<Int>, Vec<Int>)> =
            report.solutions.unwrap_or_default().into_iter().map(|p| (p.x, p.y)).collect();
        pairs.shuffle(rng);
        pairs.truncate(200);
        let x = random_tuple(rng, sys.k(), 1, x_max);
        let mut y = x.clone();
        y.shuffle(rng);
        pairs.push((x, y));
        for (x, y) in pairs {
            out.witness(|| format!("rows={:?} x={} y={}", sys.rows(), show(&x), show(&y)));
            let zero = h_vector(&x, &y, &norm).and_then(|h| build_psi_linear(&norm, &h)).map(|p| p.is_zero());
            let trivial = classify(&x, &y) == SolutionClass::Trivial;
            out.check(zero == Ok(trivial), || format!("rows={:?} x={} y={}", sys.rows(), show(&x), show(&y)));
        }
    }
    out
}

/// `{σ_2 - σ_1², σ_3}` followed by random systems with one quadratic `Υ` in
/// `σ_1` attached to `σ_2`.
fn nonlinear_systems(rng: &mut SplitMix64, count: usize) -> Vec<NonlinearSystem> {
    let square = |c: Int, e: u32| Term { coeff: c, exponents: vec![e] };
    let mut out = vec![NonlinearSystem::new(
        3,
        vec![2, 3],
        vec![1, 1],
        vec![UpsilonPoly::new(vec![square(1, 2)]), UpsilonPoly::default()],
    )
    .expect("well-formed")];
    for _ in 0..count {
        let terms = (0..=2).map(|e| square(rng.random_range(-2..=2), e)).collect();
        let lead = rng.random_range(1..=2);
        out.push(
            NonlinearSystem::new(
                3,
                vec![2, 3],
                vec![lead, 1],
                vec![UpsilonPoly::new(terms), UpsilonPoly::default()],
            )
            .expect("well-formed"),
        );
    }
    out
}

fn nonlinear_identity(cfg: &VerifyConfig, rng: &mut SplitMix64) -> SuiteResult {
    let mut out = SuiteResult::new("nonlinear-identity");
    let opts = CensusOptions { collect: true, budget: u64::MAX };
    for nsys in nonlinear_systems(rng, cfg.systems / 4) {
        let x_max = cfg.x_max.max(1);
        let Ok(report) = brute_census(&nsys, x_max, opts) else {
            continue;
        };
        let mut pairs: Vec<(Vec<Int>, Vec<Int>)> = report
            .solutions
            .unwrap_or_default()
            .into_iter()
            .filter(|p| p.x.is_sorted() && p.y.is_sorted())
            .map(|p| (p.x, p.y))
            .collect();
        let x = random_tuple(rng, 3, 1, x_max);
        let mut y = x.clone();
        y.shuffle(rng);
        pairs.push((x, y));
        for (x, y) in pairs {
            out.witness(|| {
                format!("system={} x={} y={}", SystemFile::nonlinear(&nsys).to_json(), show(&x), show(&y))
            });
            let ok = verify_master_identity_nonlinear(&x, &y, &nsys).is_ok_and(|c| c.holds());
            out.check(ok, || format!("x={} y={}", show(&x), show(&y)));
        }
    }
    out
}
