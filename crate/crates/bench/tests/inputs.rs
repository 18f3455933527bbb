use hwcy_bench::{fpseries, qseries};

#[test]
fn inputs_are_seeded_and_invertible() {
    assert_eq!(qseries(32, 7), qseries(32, 7));
    assert_ne!(fpseries(101, 32, 1), fpseries(101, 32, 2));
    let a = fpseries(1_000_003, 256, 1);
    assert!(a.mul(&a.inverse().unwrap()).sub(&hwcy_core::FpSeries::one(a.field(), 256)).is_zero());
    assert!(qseries(16, 3).inverse().is_ok());
}
