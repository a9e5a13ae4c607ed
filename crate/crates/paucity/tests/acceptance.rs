//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use paucity::format::SystemFile;
use paucity::parallel;
use paucity_core::census::sorted_tuples;
use paucity_core::psi::scaled_product_difference;
use paucity_core::*;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::ThreadPool;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self { failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, text: String) {
        self.notes.push(text);
    }
}

fn lin(k: usize, rows: Vec<Vec<Int>>) -> SymmetricSystem {
    SymmetricSystem::new(k, rows).unwrap()
}

fn product_system() -> SymmetricSystem {
    lin(2, vec![vec![0, 1]])
}

fn sigma23() -> SymmetricSystem {
    lin(3, vec![vec![0, 1, 0], vec![0, 0, 1]])
}

fn gaussian() -> SymmetricSystem {
    gen_theta_system(&IntPolynomial::from_coeffs(vec![1, 0, 1]), 4).unwrap()
}

fn show(z: &[Int]) -> String {
    format!("{z:?}")
}

fn collect() -> CensusOptions {
    CensusOptions { collect: true, budget: u64::MAX }
}

/// `σ_0..σ_k` as sums over subsets.
fn sigma_by_subsets(z: &[Int]) -> Vec<Int> {
    let k = z.len();
    let mut out = vec![0; k + 1];
    for mask in 0u32..1 << k {
        let p: Int = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| z[i]).product();
        out[mask.count_ones() as usize] += p;
    }
    out
}

/// Ordered pairs with equal multisets, by sorting every tuple.
fn naive_trivial(k: usize, x_max: Int) -> u128 {
    let mut classes: BTreeMap<Vec<Int>, u128> = BTreeMap::new();
    let mut t = vec![1; k];
    loop {
        let mut s = t.clone();
        s.sort();
        *classes.entry(s).or_default() += 1;
        let Some(i) = (0..k).rev().find(|&i| t[i] < x_max) else {
            break;
        };
        t[i] += 1;
        t[i + 1..].fill(1);
    }
    classes.values().map(|c| c * c).sum()
}

fn ac1_identities() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = SplitMix64::seed_from_u64(0);
    for _ in 0..1000 {
        let k = rng.random_range(1..=8);
        let z: Vec<Int> = (0..k).map(|_| rng.random_range(-50..=50)).collect();
        let mut want = sigma_by_subsets(&z);
        want.reverse();
        let got = poly_from_roots(&z).unwrap();
        out.check(got.coeffs() == want.as_slice(), || format!("generating function at z={}", show(&z)));
    }

    let mut checked = 0usize;
    let mut systems = 0;
    while systems < 20 {
        let k = rng.random_range(1..=4);
        let r = rng.random_range(1..=k);
        let rows: Vec<Vec<Int>> =
            (0..r).map(|_| (0..k).map(|_| rng.random_range(-2..=2)).collect()).collect();
        let raw = lin(k, rows);
        let Ok(norm) = normalize(&raw) else {
            continue;
        };
        systems += 1;
        let a = norm.shape().leading_product();
        let basis = paucity_core::psi::psi_basis(&norm).unwrap();
        let report = brute_census(&raw, 8, collect()).unwrap();
        out.check(report.is_consistent(), || format!("N != T + T* + T† for {:?}", raw.rows()));
        // every trivial solution is a pair of orderings of one sorted tuple;
        // both sides of the identity only see the multisets
        let trivial = sorted_tuples(k, 8).into_iter().map(|x| (x.clone(), x));
        let nontrivial = report.solutions.unwrap().into_iter().map(|p| (p.x, p.y));
        for (x, y) in trivial.chain(nontrivial) {
            checked += 1;
            let h = h_vector(&x, &y, &norm).unwrap();
            let psi_raw: IntPolynomial =
                h.values().iter().zip(&basis).fold(IntPolynomial::zero(), |acc, (&hl, p)| {
                    acc.checked_add(&p.checked_scale(hl).unwrap()).unwrap()
                });
            let psi = build_psi_linear(&norm, &h).unwrap();
            let lhs = scaled_product_difference(&x, &y, a).unwrap();
            out.check(psi.poly() == &lhs && psi_raw == lhs, || {
                format!("identity fails for {:?} at x={} y={}", raw.rows(), show(&x), show(&y))
            });
            out.check(verify_master_identity(&x, &y, &norm).unwrap().holds(), || {
                format!("verify_master_identity rejects x={} y={}", show(&x), show(&y))
            });
            for &v in &y {
                let (l, r) = substitution_value(&x, v, &norm, psi.poly()).unwrap();
                out.check(l == r, || {
                    format!("substitution at t=-{v} fails for x={} y={}", show(&x), show(&y))
                });
            }
        }
    }
    out.note(format!("1000 tuples, 20 systems, {checked} solutions"));
    out
}

fn ac2_classification(pool: &ThreadPool) -> Outcome {
    let mut out = Outcome::new();
    out.check(naive_trivial(2, 10) == 190, || "naive T_2(10) != 190".into());
    out.check(naive_trivial(3, 5) == 545, || "naive T_3(5) != 545".into());
    out.check(count_trivial_exact(2, 10).unwrap() == 190, || "T_2(10) != 190".into());
    out.check(count_trivial_exact(3, 5).unwrap() == 545, || "T_3(5) != 545".into());
    let mut censuses = 0;
    for k in 1..=4 {
        let mut systems = vec![lin(
            k,
            vec![{
                let mut row = vec![0; k];
                row[k - 1] = 1;
                row
            }],
        )];
        if k >= 2 {
            systems.push(lin(k, vec![(1..=k as Int).collect()]));
        }
        for sys in &systems {
            for x in 1..=8 {
                let r = parallel::census(pool, sys, x, CensusOptions::default()).unwrap();
                censuses += 1;
                out.check(r.is_consistent(), || format!("N != T + T* + T† for {:?} at X={x}", sys.rows()));
                let exact = count_trivial_exact(k, x).unwrap() as u128;
                out.check(r.trivial == exact, || {
                    format!("brute T={} vs exact {exact} at k={k} X={x}", r.trivial)
                });
                out.check(naive_trivial(k, x) == exact, || format!("naive T differs at k={k} X={x}"));
            }
        }
    }
    out.note(format!("{censuses} censuses"));
    out
}

fn compare_linear(out: &mut Outcome, pool: &ThreadPool, raw: &SymmetricSystem, x: Int, label: &str) -> usize {
    let norm = normalize(raw).unwrap();
    let found = parallel::divisor_linear(pool, &norm, x, u64::MAX).unwrap();
    let brute = parallel::census(pool, raw, x, collect()).unwrap();
    let want: Vec<SolutionPair> = brute.non_diagonal().cloned().collect();
    out.check(found.pairs == want, || {
        format!("{label} X={x}: divisor {} pairs vs brute {}", found.pairs.len(), want.len())
    });
    found.pairs.len()
}

fn ac3_oracle_equivalence(pool: &ThreadPool) -> Outcome {
    let mut out = Outcome::new();
    let mut at6 = 0;
    for x in 1..=30 {
        let n = compare_linear(&mut out, pool, &product_system(), x, "product");
        if x == 6 {
            at6 = n;
        }
    }
    out.check(at6 == 20, || format!("product system has {at6} non-diagonal pairs at X=6, expected 20"));
    for x in 1..=12 {
        compare_linear(&mut out, pool, &sigma23(), x, "{σ2,σ3}");
    }
    for x in 1..=6 {
        compare_linear(&mut out, pool, &gaussian(), x, "gaussian");
    }
    let mut rng = SplitMix64::seed_from_u64(3);
    let mut total = 0;
    for i in 0..10 {
        let a: Vec<Vec<Int>> = (0..2).map(|_| (0..2).map(|_| rng.random_range(-3..=3)).collect()).collect();
        let sys = gen_corollary_system(4, 2, &a).unwrap();
        for x in 1..=8 {
            total += compare_linear(&mut out, pool, &sys, x, &format!("corollary #{i} a={a:?}"));
        }
    }
    out.note(format!("{total} non-diagonal pairs across random corollary systems"));
    out
}

/// Rows up to order and an overall sign per row.
fn canonical_rows(rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<Int>> = rows
        .iter()
        .map(|r| {
            let first = r.iter().copied().find(|&c| c != 0).unwrap_or(0);
            r.iter().map(|&c| if first < 0 { -c } else { c }).collect()
        })
        .collect();
    out.sort();
    out
}

fn ac4_generated_systems() -> Outcome {
    let mut out = Outcome::new();
    let got = gaussian();
    let want = vec![vec![0, -1, 0, 1], vec![-1, 0, 1, 0]];
    out.check(canonical_rows(got.rows()) == canonical_rows(&want), || {
        format!("gaussian rows {:?}", got.rows())
    });
    let mut rng = SplitMix64::seed_from_u64(4);
    for k in 1..=6 {
        for r in 1..=k {
            for trial in 0..3 {
                let a: Vec<Vec<Int>> = (0..r)
                    .map(|_| {
                        (0..k - r).map(|_| if trial == 0 { 0 } else { rng.random_range(-5..=5) }).collect()
                    })
                    .collect();
                let w = normalize(&gen_corollary_system(k, r, &a).unwrap()).unwrap().shape().weight();
                out.check(2 * w == (k - r) * (k - r + 1), || format!("k={k} r={r} a={a:?}: w={w}"));
            }
        }
    }
    out
}

fn ac5_nonlinear() -> Outcome {
    let mut out = Outcome::new();
    let nsys = NonlinearSystem::new(
        3,
        vec![2, 3],
        vec![1, 1],
        vec![UpsilonPoly::new(vec![Term { coeff: 1, exponents: vec![2] }]), UpsilonPoly::default()],
    )
    .unwrap();
    // every ordered pair in [1, 10]^6, tested directly
    let mut tuples = Vec::new();
    for a in 1..=10 {
        for b in 1..=10 {
            for c in 1..=10 {
                tuples.push(vec![a, b, c]);
            }
        }
    }
    let mut solutions = 0;
    for x in &tuples {
        for y in &tuples {
            if nsys.is_solution(x, y).unwrap() {
                solutions += 1;
                out.check(verify_master_identity_nonlinear(x, y, &nsys).unwrap().holds(), || {
                    format!("identity fails at x={} y={}", show(x), show(y))
                });
            }
        }
    }
    let mut nondiagonal = 0;
    for x in 1..=10 {
        let found = divisor_guided_enumerate_nonlinear(&nsys, x, u64::MAX).unwrap();
        let brute = brute_census(&nsys, x, collect()).unwrap();
        let want: Vec<SolutionPair> = brute.non_diagonal().cloned().collect();
        out.check(found.pairs == want, || {
            format!("X={x}: divisor {} vs brute {}", found.pairs.len(), want.len())
        });
        if x == 10 {
            out.check(brute.n == solutions, || format!("census N={} vs direct {solutions}", brute.n));
            nondiagonal = want.len();
        }
    }
    out.note(format!("{solutions} solutions at X=10, {nondiagonal} non-diagonal"));
    out
}

fn ac6_paucity_trend(pool: &ThreadPool) -> Outcome {
    let mut out = Outcome::new();
    let sys = sigma23();
    let mut ratio = BTreeMap::new();
    for x in [8, 16, 24, 32] {
        let r = parallel::census(pool, &sys, x, CensusOptions { budget: u64::MAX, collect: false }).unwrap();
        let nontrivial = r.n - r.trivial;
        let cap = (x as f64).powf(2.75);
        out.check((nontrivial as f64) <= cap, || format!("N-T={nontrivial} > X^2.75={cap:.0} at X={x}"));
        ratio.insert(x, nontrivial as f64 / r.trivial as f64);
        out.note(format!("X={x} N-T={nontrivial}"));
    }
    out.check(ratio[&32] < ratio[&8], || {
        format!("(N-T)/T: {:.5} at X=32, {:.5} at X=8", ratio[&32], ratio[&8])
    });

    let product = product_system();
    let norm = normalize(&product).unwrap();
    let mut points = Vec::new();
    for x in [8, 16, 32, 64] {
        let brute =
            parallel::census(pool, &product, x, CensusOptions { budget: u64::MAX, collect: false }).unwrap();
        let found = parallel::divisor_linear(pool, &norm, x, u64::MAX).unwrap();
        out.check(found.pairs.len() as u128 == brute.tdagger, || format!("T† mismatch at X={x}"));
        points.push((x as u64, brute.tdagger));
    }
    let fit = exponent_fit(&points).unwrap();
    out.note(format!("product T† {points:?} slope {:.4}", fit.slope));
    out.check(fit.slope > 2.0 && fit.slope < 2.5, || {
        format!("product T† slope {:.4} outside (2.0, 2.5)", fit.slope)
    });
    out
}

fn run_cli(system: &Path, xs: &str, workers: usize) -> (Option<i32>, Vec<u8>) {
    let output = Command::new(env!("CARGO_BIN_EXE_paucity"))
        .args(["census", "--method", "both", "--format", "csv", "--x-list", xs])
        .arg("--system")
        .arg(system)
        .arg("--workers")
        .arg(workers.to_string())
        .output()
        .expect("binary runs");
    (output.status.code(), output.stdout)
}

fn ac7_determinism() -> Outcome {
    let mut out = Outcome::new();
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("product", product_system(), "2,6,10,16"),
        ("sigma23", sigma23(), "3,6,9"),
        ("gaussian", gaussian(), "2,4"),
    ];
    for (name, sys, xs) in cases {
        let path = dir.path().join(format!("{name}.json"));
        std::fs::write(&path, SystemFile::linear(&sys).to_json()).unwrap();
        let (code1, one) = run_cli(&path, xs, 1);
        let (code8, eight) = run_cli(&path, xs, 8);
        out.check(code1 == Some(0) && code8 == Some(0), || format!("{name}: exit codes {code1:?} {code8:?}"));
        out.check(!one.is_empty() && one == eight, || format!("{name}: CSV differs between 1 and 8 workers"));
        if name == "product" {
            let text = String::from_utf8_lossy(&one);
            out.check(text.lines().nth(2) == Some("6,86,66,0,20"), || format!("product CSV:\n{text}"));
        }
    }
    out
}

fn main() -> ExitCode {
    let pool = parallel::pool(0).unwrap();
    let criteria: Vec<Criterion> = vec![
        ("AC1 identity suite", Box::new(ac1_identities)),
        ("AC2 classification decomposition", Box::new(|| ac2_classification(&pool))),
        ("AC3 divisor search equals brute force", Box::new(|| ac3_oracle_equivalence(&pool))),
        ("AC4 generated systems", Box::new(ac4_generated_systems)),
        ("AC5 non-linear suite", Box::new(ac5_nonlinear)),
        ("AC6 paucity trend", Box::new(|| ac6_paucity_trend(&pool))),
        ("AC7 determinism across worker counts", Box::new(ac7_determinism)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let tag = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("[{tag}] {name} ({secs:.1}s)");
        for n in &outcome.notes {
            println!("       {n}");
        }
        for f in outcome.failures.iter().take(5) {
            println!("       failure: {f}");
        }
        if outcome.failures.len() > 5 {
            println!("       ... {} failures in total", outcome.failures.len());
        }
        failed += !outcome.failures.is_empty() as usize;
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
