//! Cross-method property suites run with fixed seeds.

use zeta_core::moments::{block_moments, merge_records, parse_exponents, AccuracyStandard};
use zeta_core::selfcheck::{em_rs_agreement, jensen_ordering, local_model_anchoring, romberg_containment};
use zeta_core::zeros::{build_blocks, isolate_zeros};

#[test]
fn em_and_rs_agree_within_reported_bounds() {
    let r = em_rs_agreement(1000, 100.0, 1e7, 0x5eed_0001).unwrap();
    assert!(r.passed(), "{} violations: {:?}", r.violations.len(), r.violations.first());
}

#[test]
fn romberg_error_contains_oracle_difference() {
    let r = romberg_containment(100, 0x5eed_0002);
    assert!(r.passed(), "{:?}", r.violations);
}

#[test]
fn local_models_anchor_at_midpoint_and_vanish_at_zeros() {
    let zeros = isolate_zeros(10000.0, 10100.0, None).unwrap();
    let r = local_model_anchoring(&zeros, 40..zeros.len() - 40, &[1, 4, 16, 32], &[6.0, 1000.0]).unwrap();
    assert!(r.cases > 300);
    assert!(r.passed(), "{:?}", r.violations);
}

#[test]
fn moments_follow_jensen_ordering() {
    let zeros = isolate_zeros(5000.0, 5600.0, None).unwrap();
    let usable = (zeros.len() - 1) / 100 * 100 + 1;
    let zeros = zeros.slice(0..usable);
    let tiling = build_blocks(&zeros, 100).unwrap();
    let exps = parse_exponents("1,2,4,6,8").unwrap();
    let recs = block_moments(&zeros, &tiling, &exps, &AccuracyStandard::default(), None).unwrap();
    let r = jensen_ordering(&merge_records(&recs).unwrap());
    assert_eq!(r.cases, 10);
    assert!(r.passed(), "{:?}", r.violations);
}
