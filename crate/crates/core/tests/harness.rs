use num_bigint::BigInt;
use proptest::prelude::*;
use reductive_core::harness::{
    resolve_ids, run, table1_rows, verify_construction, verify_howlett, verify_s0_centralizer, verify_table1, Cache,
    CacheStatus, RunConfig, Verdict, VerificationReport, CHECK_IDS,
};

const RELATIVE_WEYL_ORDERS: [usize; 12] = [648, 6, 576, 48, 12, 12, 24, 2, 576, 48, 12, 36];

fn ids(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn config(qs: &[u64]) -> RunConfig {
    RunConfig { q_list: qs.iter().map(|&q| BigInt::from(q)).collect(), cache_dir: None }
}

#[test]
fn empty_run() {
    let out = run(&[], &RunConfig::default()).unwrap();
    assert!(out.reports.is_empty());
    assert_eq!(out.exit_code, 0);
}

#[test]
fn id_resolution() {
    assert!(resolve_ids(&ids(&["nonsense"])).is_err());
    assert_eq!(resolve_ids(&ids(&["all"])).unwrap(), CHECK_IDS.to_vec());
    assert_eq!(resolve_ids(&ids(&["howlett", "howlett"])).unwrap(), vec!["howlett"]);
}

#[test]
fn adams_he_e6_has_64_passes() {
    let out = run(&ids(&["adams-he-E6"]), &RunConfig::default()).unwrap();
    assert_eq!(out.reports.len(), 64);
    assert!(out.reports.iter().all(|r| r.verdict == Verdict::Pass));
    assert_eq!(out.exit_code, 0);
}

#[test]
fn table_rows_against_reference_orders() {
    let rows = table1_rows();
    assert_eq!(rows.len(), 12);
    for (row, &order) in rows.iter().zip(&RELATIVE_WEYL_ORDERS) {
        assert_eq!(row.relative_weyl_order, order);
    }
}

#[test]
fn table_live_rows() {
    let at = |q: u64| verify_table1(&BigInt::from(q)).unwrap();
    for (row, check) in at(13) {
        match row.number {
            1 => {
                let c = check.expect("row 1 live at q = 13");
                assert!(c.passed(), "{:?}", c.mismatches);
                assert_eq!(c.computed.centralizer_type, "A2+A2+A2");
                assert_eq!(c.computed.component_order, 3);
                assert_eq!(c.computed.levi_torus, "Φ1^6");
                assert_eq!(c.computed.relative_weyl_order, 648);
            }
            _ => {
                if let Some(c) = check {
                    assert!(c.passed(), "row {}: {:?}", row.number, c.mismatches);
                }
            }
        }
    }
    let q7 = at(7);
    let row7 = q7.iter().find(|(r, _)| r.number == 7).unwrap();
    assert_eq!(row7.1.as_ref().unwrap().computed.relative_weyl_order, 24);

    let q5 = at(5);
    let live: Vec<u8> = q5.iter().filter(|(_, c)| c.is_some()).map(|(r, _)| r.number).collect();
    assert!(!live.contains(&1) && !live.contains(&2));
    assert!(live.contains(&6));
    assert!(q5.iter().all(|(_, c)| c.as_ref().map_or(true, |c| c.passed())));
}

#[test]
fn q11_exercises_rows_10_and_12() {
    let out = run(&ids(&["table1"]), &config(&[11])).unwrap();
    for n in [10, 12] {
        let r = out.reports.iter().find(|r| r.id == format!("table1-row{n}")).expect("row report");
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_text());
    }
    let live = out.reports.iter().filter(|r| r.verdict != Verdict::Skipped);
    assert!(live.clone().count() >= 2);
    assert!(live.into_iter().all(|r| r.witness.iter().any(|(k, _)| k == "not_checked")));
}

#[test]
fn construction_reports() {
    for p in [3, 5, 7, 11, 13] {
        assert_eq!(verify_construction(p).unwrap().verdict, Verdict::Pass, "p = {p}");
    }
    assert!(verify_construction(15).is_err());
    assert_eq!(verify_s0_centralizer().unwrap().verdict, Verdict::Pass);
    assert_eq!(verify_howlett().unwrap().verdict, Verdict::Pass);
}

#[test]
fn torus_v_prime_fails_and_sets_exit_code() {
    let out = run(&ids(&["torus"]), &config(&[5, 7])).unwrap();
    let vp = out.reports.iter().find(|r| r.id == "torus-v-prime").unwrap();
    assert_eq!(vp.verdict, Verdict::Fail);
    assert_eq!(out.exit_code, 1);
    let v = out.reports.iter().find(|r| r.id == "torus-v").unwrap();
    assert_eq!(v.verdict, Verdict::Pass);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::open(dir.path()).unwrap();
    let (a, s) = cache.weyl_group("D4").unwrap();
    assert_eq!(s, CacheStatus::Miss);
    let (b, s) = cache.weyl_group("D4").unwrap();
    assert_eq!(s, CacheStatus::Hit);
    assert_eq!(a.elements(), b.elements());
    let file = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&file, b"{\"label\":\"D4\"}\n").unwrap();
    let (_, s) = cache.weyl_group("D4").unwrap();
    assert!(matches!(s, CacheStatus::Rebuilt(_)));
}

#[test]
fn run_with_cache_dir_reports_status() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig { cache_dir: Some(dir.path().to_path_buf()), ..RunConfig::default() };
    let first = run(&ids(&["howlett"]), &cfg).unwrap();
    assert_eq!(first.reports[0].id, "cache");
    let second = run(&ids(&["howlett"]), &cfg).unwrap();
    let status = &second.reports[0].witness.iter().find(|(k, _)| k == "status").unwrap().1;
    assert_eq!(status, "hit");
}

fn text() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 =\\\\\t\n\r.,:;()|-]{0,24}"
}

proptest! {
    #[test]
    fn structured_round_trip(
        id in "[a-z0-9-]{1,12}",
        claim in text(),
        inputs in prop::collection::vec((text(), text()), 0..4),
        witness in prop::collection::vec((text(), text()), 0..4),
        v in 0usize..4,
    ) {
        let verdict = [Verdict::Pass, Verdict::Fail, Verdict::Skipped, Verdict::ExpectedFail][v];
        let mut r = VerificationReport::new(id, claim, verdict);
        for (k, x) in &inputs {
            r = r.input(k, x);
        }
        for (k, x) in &witness {
            r = r.witness(k, x);
        }
        let line = r.to_structured();
        prop_assert!(!line.contains('\n'));
        prop_assert_eq!(VerificationReport::parse_structured(&line).unwrap(), r);
    }
}
