use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_endofix"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

const IDENTITY: &str = "group free n=2 m=1\nendo type1\nphi x1 = x1\nphi x2 = x2\nQ = [[1]]\nP = [[0],[0]]\n";

#[test]
fn apply_examples() {
    let id = file(IDENTITY);
    assert_eq!(stdout(&["apply", path(&id), "(x1, [0])"]), "x1 ; [0]\n");
    let w = file(&stdout(&["witness", "free n=2 m=1", "F3"]));
    assert_eq!(stdout(&["apply", path(&w), "(x1, [0])"]), "x1 ; [1]\n");
    assert_eq!(stdout(&["apply", path(&w), "x2 x1 ; [2]"]), "x2 x1 ; [7]\n");
}

#[test]
fn fix_examples() {
    let w = file(&stdout(&["witness", "free n=2 m=1", "F3"]));
    let out = stdout(&["fix", path(&w)]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("type=F3 s=0 index=2"));
    assert_eq!(lines.filter(|l| l.starts_with("basis ")).count(), 3);

    let s = file(&stdout(&["witness", "surface g=2 m=1", "Surface4"]));
    assert!(stdout(&["fix", path(&s)]).starts_with("type=Surface4 s=0 index=3\n"));

    let t2 = file("group free n=2 m=1\nendo type2\nz = x1\nl = [1]\nh = [0,0]\nQ = [[1]]\nP = [[0],[0]]\n");
    let out = stdout(&["fix", path(&t2)]);
    assert!(out.starts_with("type=Z^1 s=1\n"), "{}", out);
    let sols: Vec<&str> = out.lines().filter(|l| l.starts_with("solution (c,a) ")).collect();
    assert!(sols == ["solution (c,a) [1,1]"] || sols == ["solution (c,a) [-1,-1]"], "{:?}", sols);
    assert_eq!(stdout(&["apply", path(&t2), "(x1, [1])"]), "x1 ; [1]\n");

    let trivial = file("group free n=2 m=1\nendo type2\nz = x1\nl = [1]\nh = [0,0]\nQ = [[0]]\nP = [[0],[0]]\n");
    assert_eq!(stdout(&["fix", path(&trivial)]), "type=1 s=0\n");
}

#[test]
fn fix_with_basis_file() {
    let nielsen = file("group free n=2 m=1\nendo type1\nphi x1 = x1 x2\nphi x2 = x2\nQ = [[1]]\nP = [[0],[0]]\n");
    assert_eq!(code(&["fix", path(&nielsen)]), 4);
    let basis = file("# fixed by x1 -> x1 x2\nx2\n");
    let out = stdout(&["fix", path(&nielsen), "--basis", path(&basis)]);
    assert!(out.starts_with("type=Z^2 s=1 index=1\n"), "{}", out);
    let wrong = file("x1\n");
    assert_eq!(code(&["fix", path(&nielsen), "--basis", path(&wrong)]), 5);
}

#[test]
fn check_and_invert() {
    let det2 = file("group free n=2 m=1\nendo type1\nphi x1 = x1\nphi x2 = x2\nQ = [[2]]\nP = [[0],[0]]\n");
    assert_eq!(stdout(&["check", path(&det2)]), "mono=yes epi=no auto=no\n");
    assert_eq!(code(&["invert", path(&det2)]), 5);

    let auto = file("group free n=2 m=2\nendo type1 psi\nphi x1 = x2\nphi x2 = x1 x2\nQ = [[2,1],[1,1]]\nP = [[1,0],[0,-1]]\n");
    assert_eq!(stdout(&["check", path(&auto)]), "mono=yes epi=yes auto=yes\n");
    let inv = stdout(&["invert", path(&auto)]);
    assert!(inv.contains("endo type1 psi_inv"));
    let inv_file = file(&inv);
    let elem = "(x1 x2^-1 x1, [3,-2])";
    let there = stdout(&["apply", path(&auto), elem]);
    let back = stdout(&["apply", path(&inv_file), there.trim()]);
    assert_eq!(back, "x1 x2^-1 x1 ; [3,-2]\n");
}

#[test]
fn classify_and_enumerate() {
    assert_eq!(
        stdout(&["classify", "free n=2 m=1", "F4"]),
        "type=F4 aut=n end=y witness=y\n"
    );
    assert_eq!(
        stdout(&["classify", "free n=3 m=2", "F5xZ^2"]),
        "type=F5xZ^2 aut=n end=n witness=n\n"
    );
    assert_eq!(code(&["classify", "free n=1 m=1", "F1"]), 6);
    assert_eq!(code(&["classify", "free n=2 m=1", "Surface2"]), 6);
    assert_eq!(code(&["classify", "free n=2 m=1", "G7"]), 2);
    let out = stdout(&["enumerate", "free n=2 m=1", "--rank", "2", "--infinite"]);
    assert_eq!(out.lines().count(), 7);
}

#[test]
fn witness_round_trips_through_fix() {
    let cases: &[(&str, &[&str])] = &[
        ("free n=2 m=1", &["1", "Z", "F2", "F3", "F4", "F5", "F2xZ", "FinfxZ", "Z^2"]),
        ("free n=3 m=2", &["F4", "F7xZ", "FinfxZ^2", "F3xZ^2", "Z^3"]),
        ("surface g=2 m=1", &["Surface2xZ", "Surface3", "Surface5", "F1", "F2xZ", "F4", "FinfxZ"]),
        ("surface g=3 m=2", &["Surface7xZ", "F5", "F2xZ^2"]),
    ];
    for (group, types) in cases {
        for t in *types {
            let w = stdout(&["witness", group, t]);
            let f = file(&w);
            let first = stdout(&["fix", path(&f)]);
            let got = first.lines().next().unwrap();
            let want = stdout(&["classify", group, t]);
            let want_type = want.split_whitespace().next().unwrap();
            assert!(got.starts_with(&format!("{} ", want_type)), "{} {}: {}", group, t, got);
        }
    }
    assert_eq!(code(&["witness", "free n=2 m=1", "F3xZ"]), 6);
    assert!(stdout(&["witness", "surface g=2 m=1", "F3xZ"]).starts_with("# F3xZ^1: realized"));
}

#[test]
fn demos_are_deterministic() {
    let a = stdout(&["demo", "hopfian", "--seed", "7", "--trials", "60"]);
    let b = stdout(&["demo", "hopfian", "--seed", "7", "--trials", "60"]);
    assert_eq!(a, b);
    assert!(a.trim_end().ends_with("violations=0"));
    let c = stdout(&["demo", "cohopf", "--n", "4"]);
    assert!(c.starts_with("image_rank=4 mono=yes x2_in_image=no proper=yes\n"));
    assert_eq!(code(&["demo", "cohopf", "--n", "1"]), 6);
}

#[test]
fn oracle_identity_enumerates_everything() {
    let id = file(IDENTITY);
    let out = stdout(&["oracle", path(&id), "--len", "2", "--abel", "1"]);
    // 1 + 4 + 12 reduced words of length <= 2, times 3 exponent values.
    assert_eq!(out.lines().next(), Some("count=51"));
    assert_eq!(out.lines().count(), 52);
}

#[test]
fn exit_code_classes() {
    let id = file(IDENTITY);
    assert_eq!(code(&["apply", path(&id), "(x0, [0])"]), 2);
    assert_eq!(code(&["apply", path(&id), "(x1, [0,0])"]), 3);
    assert_eq!(code(&["apply", "/nonexistent/endo.txt", "(x1, [0])"]), 4);
    let no_q = file("group free n=2 m=1\nendo type1\nphi x1 = x1\nphi x2 = x2\nP = [[0],[0]]\n");
    assert_eq!(code(&["check", path(&no_q)]), 4);
    let bad_dim = file("group free n=2 m=1\nendo type1\nphi x1 = x1\nphi x2 = x2\nQ = [[1,0]]\nP = [[0],[0]]\n");
    assert_eq!(code(&["check", path(&bad_dim)]), 3);
    let power = file("group free n=2 m=1\nendo type2\nz = x1^2\nl = [1]\nh = [0,0]\nQ = [[0]]\nP = [[0],[0]]\n");
    assert_eq!(code(&["check", path(&power)]), 5);
    assert_eq!(code(&["classify", "surface g=1 m=1", "Z"]), 6);
}
