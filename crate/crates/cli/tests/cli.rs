use std::process::{Command, Output};

use reductive_core::harness::{Verdict, VerificationReport};

fn reductive(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reductive")).args(args).output().expect("spawn reductive")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "bogus"][..],
        &["verify", "table1", "--q-list", "x"],
        &["torus", "--q", "seven"],
        &["torus", "--q", "5", "--epsilon", "3"],
        &["weyl", "--type", "E6", "--word", "7"],
        &["rootsys", "--type", "Q9"],
    ] {
        let o = reductive(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn verify_without_ids_is_empty() {
    let o = reductive(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn verify_list_names_every_check() {
    let o = reductive(&["verify", "--list"]);
    let out = stdout(&o);
    for id in reductive_core::harness::CHECK_IDS {
        assert!(out.lines().any(|l| l == *id), "{id}");
    }
}

#[test]
fn adams_he_e6_prints_64_passes() {
    let o = reductive(&["verify", "adams-he-E6"]);
    assert_eq!(o.status.code(), Some(0));
    let passes = stdout(&o).lines().filter(|l| l.starts_with("PASS adams-he-E6")).count();
    assert_eq!(passes, 64);
}

#[test]
fn structured_output_parses() {
    let o = reductive(&["--report", "structured", "verify", "howlett", "chevalley2"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<VerificationReport> =
        stdout(&o).lines().map(|l| VerificationReport::parse_structured(l).unwrap()).collect();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r.verdict == Verdict::Pass));
}

#[test]
fn torus_v_prime_failure_exits_1() {
    let o = reductive(&["--report", "structured", "verify", "torus", "--q-list", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let vp = stdout(&o)
        .lines()
        .map(|l| VerificationReport::parse_structured(l).unwrap())
        .find(|r| r.id == "torus-v-prime")
        .unwrap();
    assert_eq!(vp.verdict, Verdict::Fail);
}

#[test]
fn torus_command_orders_agree() {
    let o = reductive(&["--report", "structured", "torus", "--q", "5", "--word", "1,3"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    let field = |k: &str| line.trim().split('\t').find_map(|f| f.strip_prefix(&format!("{k}="))).unwrap().to_string();
    // s1 s3 is a Coxeter element of an A2 factor
    assert_eq!(field("polynomial_order"), "Φ1^4.Φ3");
    assert_eq!(field("order"), (4u64.pow(4) * 31).to_string());
    assert_eq!(field("order"), field("det"));
    assert_eq!(field("order"), field("evaluated"));
}

#[test]
fn tits_subset() {
    let o = reductive(&["tits", "--type", "D4", "--subset", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: PASS"));
}
