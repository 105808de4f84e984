use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn opsys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opsys"))
        .args(args)
        .env_remove("OPSYS_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn write(p: &Path, v: &Value) {
    std::fs::write(p, serde_json::to_string(v).unwrap()).unwrap();
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = path(dir, name);
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", s(&out)]);
    let r = opsys(&all);
    assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
    out
}

fn basis_len(p: &Path) -> usize {
    read(p)["basis"].as_array().unwrap().len()
}

#[test]
fn gen_examples() {
    let dir = TempDir::new().unwrap();
    assert_eq!(basis_len(&gen(&dir, "d5.json", &["--kind", "diagonal", "--n", "5"])), 5);
    assert_eq!(basis_len(&gen(&dir, "rc6.json", &["--kind", "rowcolumn", "--n", "6"])), 12);
    let a = gen(&dir, "a.json", &["--kind", "random", "--n", "8", "--dim", "4", "--seed", "42"]);
    let b = gen(&dir, "b.json", &["--kind", "random", "--n", "8", "--dim", "4", "--seed", "42"]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(basis_len(&a), 4);

    let g = path(&dir, "c5.json");
    write(&g, &json!({"n": 5, "edges": [[1, 2], [2, 3], [3, 4], [4, 5], [5, 1]]}));
    assert_eq!(basis_len(&gen(&dir, "vg.json", &["--kind", "graph", "--graph-file", s(&g)])), 15);
}

#[test]
fn gen_rejects_bad_combinations() {
    assert_eq!(code(&opsys(&["gen", "--kind", "random", "--n", "4"])), 1);
    assert_eq!(code(&opsys(&["gen", "--kind", "random", "--n", "2", "--dim", "9"])), 1);
    assert_eq!(code(&opsys(&["gen", "--kind", "graph", "--n", "4"])), 1);
}

#[test]
fn seed_falls_back_to_environment() {
    let dir = TempDir::new().unwrap();
    let a = gen(&dir, "a.json", &["--kind", "random", "--n", "5", "--dim", "6", "--seed", "17"]);
    let b = path(&dir, "b.json");
    let r = Command::new(env!("CARGO_BIN_EXE_opsys"))
        .args(["gen", "--kind", "random", "--n", "5", "--dim", "6", "--out", s(&b)])
        .env("OPSYS_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(code(&r), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn find_exit_codes() {
    let dir = TempDir::new().unwrap();
    let v = gen(&dir, "v.json", &["--kind", "random", "--n", "5", "--dim", "7", "--seed", "3"]);
    let c = path(&dir, "c.json");
    let r = opsys(&["find", "--input", s(&v), "--k", "2", "--mode", "two-clique", "--seed", "1", "--out", s(&c)]);
    assert_eq!(code(&r), 0);
    assert_eq!(read(&c)["kind"], "clique");
    assert_eq!(read(&c)["compressed_dim"], 4);

    let scalars = path(&dir, "scalars.json");
    let e = 1.0 / 3f64.sqrt();
    let id: Vec<[f64; 2]> = (0..9).map(|i| if i % 4 == 0 { [e, 0.0] } else { [0.0, 0.0] }).collect();
    write(&scalars, &json!({"n": 3, "basis": [{"n": 3, "entries": id}]}));
    let c = path(&dir, "anti.json");
    assert_eq!(code(&opsys(&["find", "--input", s(&scalars), "--k", "2", "--out", s(&c)])), 0);
    assert_eq!(read(&c)["kind"], "anticlique");

    let rc = gen(&dir, "rc8.json", &["--kind", "rowcolumn", "--n", "8"]);
    let c = path(&dir, "none.json");
    let r = opsys(&["find", "--input", s(&rc), "--k", "3", "--mode", "clique", "--out", s(&c)]);
    assert_eq!(code(&r), 2);
    assert!(!read(&c)["trace"].as_array().unwrap().is_empty());

    let junk = path(&dir, "junk.json");
    std::fs::write(&junk, "{not json").unwrap();
    assert_eq!(code(&opsys(&["find", "--input", s(&junk), "--k", "2"])), 1);
    assert_eq!(code(&opsys(&["find", "--input", s(&v), "--k", "9"])), 1);
}

#[test]
fn gen_find_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    for (name, args, k) in [
        ("d5", vec!["--kind", "diagonal", "--n", "5"], "2"),
        ("r6", vec!["--kind", "random", "--n", "6", "--dim", "3", "--seed", "5"], "2"),
        ("r7", vec!["--kind", "random", "--n", "7", "--dim", "30", "--seed", "8"], "2"),
    ] {
        let v = gen(&dir, &format!("{name}.json"), &args);
        let c = path(&dir, &format!("{name}.cert.json"));
        let r = opsys(&["find", "--input", s(&v), "--k", k, "--seed", "4", "--out", s(&c)]);
        assert_eq!(code(&r), 0, "{name}: {}", String::from_utf8_lossy(&r.stderr));
        let cert = read(&c);
        let r = opsys(&["verify", "--input", s(&v), "--projection", s(&c), "--k", k]);
        assert_eq!(code(&r), 0, "{name}");
        let report = String::from_utf8_lossy(&r.stdout).to_string();
        assert!(report.contains(&format!("kind: {}", cert["kind"].as_str().unwrap())), "{report}");
        assert!(report.contains(&format!("compressed_dim: {}", cert["compressed_dim"])), "{report}");
    }
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let d4 = gen(&dir, "d4.json", &["--kind", "diagonal", "--n", "4"]);
    let p = path(&dir, "p.json");
    let unit = |i: usize| {
        let mut e = vec![[0.0, 0.0]; 4];
        e[i] = [1.0, 0.0];
        json!({"n": 4, "entries": e})
    };
    write(&p, &json!({"frame": [unit(0), unit(1)]}));
    let r = opsys(&["verify", "--input", s(&d4), "--projection", s(&p), "--k", "2"]);
    assert_eq!(code(&r), 2);
    assert!(String::from_utf8_lossy(&r.stdout).contains("compressed_dim: 2"));

    // Not idempotent: twice a rank-one projection.
    let bad = path(&dir, "bad.json");
    let mut entries = vec![[0.0, 0.0]; 16];
    entries[0] = [2.0, 0.0];
    write(&bad, &json!({"n": 4, "entries": entries}));
    assert_eq!(code(&opsys(&["verify", "--input", s(&d4), "--projection", s(&bad), "--k", "1"])), 1);
}

#[test]
fn experiment_csv_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str, extra: &[&str]| {
        let out = path(&dir, name);
        let mut args = vec!["experiment"];
        args.extend_from_slice(extra);
        args.extend_from_slice(&["--no-timing", "--seed", "3", "--out", s(&out)]);
        let r = opsys(&args);
        assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
        (std::fs::read_to_string(&out).unwrap(), String::from_utf8_lossy(&r.stderr).to_string())
    };
    let (a, summary) = run("a.csv", &["diagonal-trichotomy", "--k", "2", "--n", "7", "--samples", "200"]);
    let (b, _) = run("b.csv", &["diagonal-trichotomy", "--k", "2", "--n", "7", "--samples", "200"]);
    assert_eq!(a, b);
    assert!(a.starts_with("n,k,dim,seed,outcome,compressed_dim,wall_time_ms"));
    assert_eq!(a.lines().count(), 201);
    assert!(!a.contains("neither"));
    assert!(summary.contains("0 neither"), "{summary}");

    let (c, _) = run("c.csv", &["two-clique-rate", "--n", "3:6", "--samples", "12"]);
    assert_eq!(c.lines().skip(1).filter(|l| l.contains(",clique,")).count(), 12);

    let (d, _) = run("d.csv", &["dichotomy-scan", "--k", "2", "--n", "4:6", "--samples", "9"]);
    assert!(d.lines().skip(1).all(|l| !l.contains("error") && !l.contains("unverified")));
}
