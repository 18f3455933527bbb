use hwcy_cli::cache::Cache;
use hwcy_core::catalog::lookup;
use hwcy_core::verify::ap_series;
use rayon::prelude::*;

#[test]
fn reloaded_entry_equals_fresh_computation() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let op = lookup("ell").unwrap().op;
    for p in [2u64, 11, 23] {
        let fresh = ap_series(&op, p, 80).unwrap();
        assert!(cache.load("ell", p, 80).unwrap().is_none());
        cache.store("ell", &fresh).unwrap();
        assert_eq!(cache.load("ell", p, 80).unwrap(), Some(fresh.clone()));
        // shorter requests are served by truncation, longer ones miss
        assert_eq!(cache.load("ell", p, 30).unwrap(), Some(fresh.truncate(30)));
        assert!(cache.load("ell", p, 81).unwrap().is_none());
    }
}

#[test]
fn longer_entries_are_not_overwritten_by_shorter() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let op = lookup("dwork3").unwrap().op;
    let long = ap_series(&op, 7, 60).unwrap();
    cache.store("dwork3", &long).unwrap();
    cache.store("dwork3", &long.truncate(10)).unwrap();
    assert_eq!(cache.load("dwork3", 7, 60).unwrap(), Some(long));
}

#[test]
fn corrupt_or_foreign_entries_are_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    std::fs::create_dir_all(dir.path().join("x")).unwrap();
    std::fs::write(cache.path("x", 5), "not json").unwrap();
    assert!(cache.load("x", 5, 1).is_err());
    std::fs::write(cache.path("x", 5), r#"{"operator":"y","p":5,"coeffs":[1]}"#).unwrap();
    assert!(cache.load("x", 5, 1).is_err());
    std::fs::write(cache.path("x", 5), r#"{"operator":"x","p":5,"coeffs":[1,7]}"#).unwrap();
    assert!(cache.load("x", 5, 1).is_err());
}

#[test]
fn concurrent_writers_leave_a_complete_entry() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let a = ap_series(&lookup("dwork3").unwrap().op, 13, 120).unwrap();
    (0..32).into_par_iter().for_each(|_| cache.store("dwork3", &a).unwrap());
    assert_eq!(cache.load("dwork3", 13, 120).unwrap(), Some(a));
    let leftovers: Vec<_> = std::fs::read_dir(dir.path().join("dwork3")).unwrap().collect();
    assert_eq!(leftovers.len(), 1, "temporary files left behind");
}
