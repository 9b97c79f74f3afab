use std::process::{Command, Output};

use serde_json::Value;

fn ssplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssplab"))
        .args(args)
        .env_remove("SSPLAB_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn hasse_exit_codes() {
    let out = ssplab(&["hasse", "--max-p", "499", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "hasse");
    assert_eq!(v["results"]["primes"].as_array().unwrap().len(), 94);

    let out = ssplab(&["hasse", "--max-p", "3"]);
    assert_eq!(code(&out), 0);
    let primes = json(&out)["results"]["primes"].clone();
    assert_eq!(primes.as_array().unwrap().len(), 1);
    assert_eq!(primes[0]["p"], 3);

    assert_eq!(code(&ssplab(&["hasse", "--max-p", "2"])), 2);
}

#[test]
fn invalid_configs_exit_two() {
    assert_eq!(code(&ssplab(&["cm", "--primes", "9"])), 2);
    assert_eq!(code(&ssplab(&["verify-pde", "--primes", "2"])), 2);
    assert_eq!(code(&ssplab(&["locus", "--primes", "5", "--ext", "4,2"])), 2);
    assert_eq!(code(&ssplab(&["lauricella", "--primes", "5", "-i", "3"])), 2);
    assert_eq!(code(&ssplab(&["cm", "--primes", "5", "--genus", "3"])), 1);
    assert_eq!(code(&ssplab(&["--threads", "0", "cm", "--primes", "5"])), 2);
}

#[test]
fn verify_pde_passes() {
    let out = ssplab(&["verify-pde", "--primes", "3,5,7"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["pass"], true);
    for r in v["results"].as_array().unwrap() {
        assert_eq!(r["theorem_A"]["pass"], true);
        assert_eq!(r["theorem_A"]["residuals"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn verify_mult_one_at_five() {
    let out = ssplab(&["verify-mult-one", "--primes", "5", "--ext", "2,4"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["results"][0];
    assert_eq!(r["radical"], true);
    assert_eq!(r["quotient_dim"], 6);
    assert_eq!(r["point_count"], 6);
}

#[test]
fn locus_at_three_is_empty() {
    let out = ssplab(&["locus", "--primes", "3", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "p,k,lambda1,lambda2,lambda3,rank\n");
    let v = json(&ssplab(&["locus", "--primes", "3"]));
    assert_eq!(v["results"][0]["point_count"], 0);
}

#[test]
fn locus_csv_rows() {
    let out = ssplab(&["locus", "--primes", "5,7", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6 + 30);
    assert!(rows.iter().all(|r| &r[5] == "3"));
}

#[test]
fn expectation_exits_zero() {
    let out = ssplab(&["check-expectation", "--primes", "5"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["command"], "check-expectation");
    assert!(v["pass"].is_boolean());
}

#[test]
fn lauricella_and_contiguity() {
    let out = ssplab(&["lauricella", "--primes", "5", "-i", "2", "-j", "2"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["results"][0];
    assert_eq!((r["d_prime"].as_i64(), r["size"].as_u64()), (Some(2), Some(10)));
    assert_eq!(r["matches_cm"], true);
    assert_eq!(code(&ssplab(&["verify-contiguity", "--primes", "3..13"])), 0);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["cm", "--primes", "3..7"][..],
        &["verify-mult-one", "--primes", "5,7"][..],
        &["check-expectation", "--primes", "7", "--format", "csv"][..],
    ] {
        let a = ssplab(args);
        let b = ssplab(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let mut threaded: Vec<&str> = vec!["--threads", "1"];
        threaded.extend_from_slice(args);
        assert_eq!(a.stdout, ssplab(&threaded).stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cm.json");
    let out = ssplab(&["cm", "--primes", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, ssplab(&["cm", "--primes", "5"]).stdout);
}

#[test]
fn threads_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ssplab"))
        .args(["cm", "--primes", "5"])
        .env("SSPLAB_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}
