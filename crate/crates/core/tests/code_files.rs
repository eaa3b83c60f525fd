use std::fs;

use becml_core::erasure_decode::{hybrid_decode, ml_decode, oracle_decode, peel_decode};
use becml_core::ldpc::{build_geira, lift_protograph, rate_family, sample_regular};
use becml_core::{BinVector, DecodeStatus, GeiraSpec, LdpcCode, Protograph, Rate, ReceivedWord};
use proptest::prelude::*;

fn round_trip(code: &LdpcCode) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.txt");
    fs::write(&path, code.to_string()).unwrap();
    let back: LdpcCode = fs::read_to_string(&path).unwrap().parse().unwrap();
    // the encoder representation may differ; the code itself must not
    assert_eq!((back.n(), back.k(), back.h(), back.punctured()), (code.n(), code.k(), code.h(), code.punctured()));
    let info = BinVector::from_bools((0..code.k()).map(|i| i % 3 == 0));
    assert!(code.is_codeword(&back.encode(&info).unwrap()));
}

#[test]
fn code_files_round_trip() {
    let regular = sample_regular(3, 6, 120, 2).unwrap();
    round_trip(&regular);
    let geira = build_geira(&GeiraSpec {
        k: 64,
        n: 128,
        taps: vec![0, 1],
        column_weight: 4,
        seed: 3,
    })
    .unwrap();
    round_trip(&geira);
    for punctured in rate_family(&geira, &[Rate::new(2, 3), Rate::new(4, 5)]).unwrap() {
        assert!(!punctured.punctured().is_empty());
        round_trip(&punctured);
    }
    round_trip(&lift_protograph(&Protograph::ara(16), 1).unwrap());
}

#[test]
fn malformed_code_files_are_rejected() {
    assert!("".parse::<LdpcCode>().is_err());
    assert!("ldpc 4 2\n2 4\n1100\n".parse::<LdpcCode>().is_err());
    assert!("ldpc 4 2\n2 4\n1100\n0x11\n".parse::<LdpcCode>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decoders_agree_with_dense_oracle(seed in 0u64..1000, mask in proptest::collection::vec(any::<bool>(), 24)) {
        let code = sample_regular(3, 6, 24, seed).unwrap();
        let info = BinVector::from_bools((0..code.k()).map(|i| (seed >> (i % 10)) & 1 == 1));
        let c = code.encode(&info).unwrap();
        let word = ReceivedWord::from_mask(&c, &mask);
        let oracle = oracle_decode(&code, &word).unwrap();
        let ml = ml_decode(&code, &word).unwrap();
        let hybrid = hybrid_decode(&code, &word).unwrap();
        let it = peel_decode(&code, &word).unwrap();
        prop_assert_eq!(ml.status, oracle.status);
        prop_assert_eq!(hybrid.status, oracle.status);
        if oracle.status == DecodeStatus::Success {
            prop_assert_eq!(ml.recovered.as_ref(), Some(&c));
            prop_assert_eq!(hybrid.recovered.as_ref(), Some(&c));
        }
        // peeling never beats ML
        if it.status == DecodeStatus::Success {
            prop_assert_eq!(oracle.status, DecodeStatus::Success);
            prop_assert_eq!(it.recovered.as_ref(), Some(&c));
        }
    }
}
