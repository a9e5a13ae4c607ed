//! End-to-end runs of the `paucity` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use paucity::format::{LoadedSystem, SystemFile};
use paucity_core::{gen_corollary_system, gen_theta_system, IntPolynomial, SymmetricSystem};
use tempfile::TempDir;

fn paucity(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paucity"))
        .args(args)
        .env_remove("PAUCITY_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn normalize_summaries_and_degenerate_exit() {
    let dir = TempDir::new().unwrap();
    let sys = write(&dir, "s23.json", r#"{"kind":"linear","k":3,"rows":[[0,1,0],[0,0,1]]}"#);
    let o = paucity(&["normalize", "--system", s(&sys)]);
    assert_eq!(stdout(&o), "k=3 degrees=[2,3] R=[1] w=1 A=1\n");

    let cor = dir.path().join("cor.json");
    assert!(paucity(&["gen", "corollary", "--k", "4", "--r", "2", "--coeffs", "0", "--out", s(&cor)])
        .status
        .success());
    assert!(stdout(&paucity(&["normalize", "--system", s(&cor)])).contains(" w=3 "));

    let zero = write(&dir, "zero.json", r#"{"kind":"linear","k":2,"rows":[[0,0],[0,0]]}"#);
    assert_eq!(paucity(&["normalize", "--system", s(&zero)]).status.code(), Some(3));
    let bad = write(&dir, "bad.json", r#"{"kind":"linear","k":2,"rows":[[1,0,0]]}"#);
    assert_eq!(paucity(&["normalize", "--system", s(&bad)]).status.code(), Some(2));
    assert_eq!(paucity(&["normalize", "--system", "/no/such/file"]).status.code(), Some(2));
}

#[test]
fn census_rows_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let product = write(&dir, "p.json", r#"{"kind":"linear","k":2,"rows":[[0,1]]}"#);
    let o = paucity(&["census", "--system", s(&product), "--x", "6", "--method", "both", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "X,N,T,Tstar,Tdagger\n6,86,66,0,20\n");

    let trivial = write(&dir, "t.json", r#"{"kind":"linear","k":2,"rows":[[1,0],[0,1]]}"#);
    let o = paucity(&["census", "--system", s(&trivial), "--x", "10", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("10,190,190,0,0"));

    let o = paucity(&["census", "--system", s(&product), "--x-list", "8,16", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(4));
    let o = Command::new(env!("CARGO_BIN_EXE_paucity"))
        .args(["census", "--system", s(&product), "--x-list", "8,16"])
        .env("PAUCITY_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));

    assert_eq!(paucity(&["census", "--system", s(&product), "--x-list", "8,4"]).status.code(), Some(2));
    let huge =
        write(&dir, "h.json", r#"{"kind":"linear","k":16,"rows":[[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1]]}"#);
    assert_eq!(paucity(&["census", "--system", s(&huge), "--x", "1000"]).status.code(), Some(4));
}

#[test]
fn output_formats_agree() {
    let dir = TempDir::new().unwrap();
    let sys = write(&dir, "s.json", r#"{"kind":"linear","k":3,"rows":[[0,1,0],[0,0,1]]}"#);
    let base = ["census", "--system", s(&sys), "--x-list", "4,16", "--method", "divisor"];
    let csv = stdout(&paucity(&[&base[..], &["--format", "csv"]].concat()));
    let jsonl = stdout(&paucity(&[&base[..], &["--format", "jsonl"]].concat()));
    let table = stdout(&paucity(&base));
    assert_eq!(csv.lines().nth(2), Some("16,22354,22336,0,18"));
    assert_eq!(jsonl.lines().nth(1), Some(r#"{"X":16,"N":22354,"T":22336,"Tstar":0,"Tdagger":18}"#));
    assert!(table.lines().nth(2).unwrap().split_whitespace().eq(["16", "22354", "22336", "0", "18"]));

    let out = dir.path().join("o.csv");
    assert!(paucity(&[&base[..], &["--csv", "--out", s(&out)]].concat()).status.success());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), csv);
}

#[test]
fn method_both_agrees_on_nonlinear_files() {
    let dir = TempDir::new().unwrap();
    let sys = write(
        &dir,
        "n.json",
        r#"{"kind":"nonlinear","k":2,"degrees":[2],"leading":[1],"upsilons":[[{"coeff":1,"exponents":[2]}]]}"#,
    );
    let o = paucity(&["census", "--system", s(&sys), "--x-list", "3,6", "--method", "both", "--csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let sys = write(&dir, "s.json", r#"{"kind":"linear","k":3,"rows":[[1,1,1]]}"#);
    let args = ["census", "--system", s(&sys), "--x-list", "2,4,6", "--method", "both", "--format", "jsonl"];
    let a = paucity(&[&args[..], &["--workers", "1"]].concat());
    let b = paucity(&[&args[..], &["--workers", "3"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v1 = paucity(&["verify", "--seed", "5", "--cases", "100", "--systems", "4"]);
    let v2 = paucity(&["verify", "--seed", "5", "--cases", "100", "--systems", "4"]);
    assert_eq!(v1.stdout, v2.stdout);
}

#[test]
fn verify_passes_and_catches_injected_faults() {
    let a = paucity(&["verify", "--seed", "1"]);
    let b = paucity(&["verify", "--seed", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert!(stdout(&a).lines().skip(1).all(|l| !l.starts_with("FAIL")));
    assert_ne!(stdout(&a).lines().nth(1), stdout(&b).lines().nth(1));

    let bad = paucity(&["verify", "--inject-fault"]);
    assert_eq!(bad.status.code(), Some(5));
    assert!(stdout(&bad).lines().any(|l| l.starts_with("FAIL master-identity")));
}

#[test]
fn fit_reports() {
    let dir = TempDir::new().unwrap();
    let sys = write(&dir, "p.json", r#"{"kind":"linear","k":2,"rows":[[0,1]]}"#);
    let squares = write(&dir, "sq.csv", "X,N,T,Tstar,Tdagger\n2,4,0,0,4\n4,16,0,0,16\n8,64,0,0,64\n");
    let o = paucity(&["fit", "--csv", s(&squares), "--system", s(&sys), "--column", "n"]);
    assert!(stdout(&o).starts_with("slope=2.0000 "), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("bound=2 PASS"));

    let csv = dir.path().join("p.csv");
    let o = paucity(&["census", "--system", s(&sys), "--x-list", "8,16,32,64", "--csv", "--out", s(&csv)]);
    assert!(o.status.success());
    let o = paucity(&["fit", "--csv", s(&csv), "--system", s(&sys)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("PASS"), "{}", stdout(&o));

    let empty = write(&dir, "e.csv", "");
    assert_eq!(paucity(&["fit", "--csv", s(&empty), "--system", s(&sys)]).status.code(), Some(2));
}

fn parse_back(text: &str) -> SymmetricSystem {
    match SystemFile::parse(text).unwrap().to_system().unwrap() {
        LoadedSystem::Linear(s) => s,
        LoadedSystem::Nonlinear(_) => panic!("generators emit linear systems"),
    }
}

#[test]
fn generated_files_round_trip() {
    let o = paucity(&["gen", "theta", "--minpoly", "1,0,1", "--k", "4"]);
    let sys = parse_back(&stdout(&o));
    assert_eq!(sys.rows(), &[vec![0, -1, 0, 1], vec![-1, 0, 1, 0]]);
    assert_eq!(sys, gen_theta_system(&IntPolynomial::from_coeffs(vec![1, 0, 1]), 4).unwrap());

    let o = paucity(&["gen", "theta", "--minpoly", "1,-3,2", "--k", "3"]);
    let want = gen_theta_system(&IntPolynomial::from_coeffs(vec![2, -3, 1]), 3).unwrap();
    assert_eq!(parse_back(&stdout(&o)), want);

    let o = paucity(&["gen", "corollary", "--k", "5", "--r", "3", "--coeffs", "1,-2,0,3,-1,2"]);
    let a = vec![vec![1, -2], vec![0, 3], vec![-1, 2]];
    assert_eq!(parse_back(&stdout(&o)), gen_corollary_system(5, 3, &a).unwrap());

    let dir = TempDir::new().unwrap();
    let path = dir.path().join("c.json");
    paucity(&["gen", "corollary", "--k", "5", "--r", "3", "--coeffs", "0", "--out", s(&path)]);
    assert!(stdout(&paucity(&["normalize", "--system", s(&path)])).contains(" w=3 "));

    assert_eq!(paucity(&["gen", "theta", "--minpoly", "2,0,1", "--k", "4"]).status.code(), Some(2));
}

#[test]
fn product_solution() {
    let o = paucity(&["gen", "product-solution", "--matrix", "1,2;3,4"]);
    assert_eq!(stdout(&o), "x=(2,12) y=(3,8)\n");
    assert_eq!(paucity(&["gen", "product-solution", "--matrix", "1,2;3"]).status.code(), Some(2));
}
