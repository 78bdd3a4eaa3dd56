use std::collections::BTreeMap;

use virblocks::assoc::*;
use virblocks::scalars::{Cplx, RatFunc, Var};
use virblocks::series::{apply_operator, compose_blocks};
use virblocks::Error;

// x1/x2 and (x2−x1)/x1 are both about 0.62 here, so both regimes converge alike.
const POINT: [f64; 2] = [0.62, 1.0];

fn params(kappa0: f64, trunc: i64) -> CheckParams {
    CheckParams { point: POINT, kappa0, trunc, tol: 1e-6, arith: Arith::Float }
}

#[test]
fn regime_a_is_the_composed_block() {
    let a = expand_regime_a([1, 1, 1, 1], 0, 4).unwrap();
    let c = compose_blocks(&[1, 1, 1, 1], &[1, 0, 1], 4).unwrap();
    assert_eq!(a, c);
    assert!(matches!(expand_regime_a([1, 1, 1, 1], 1, 4), Err(Error::SelectionRuleViolation(_))));
}

#[test]
fn regime_b_is_annihilated() {
    for (labels, mu) in [([1, 1, 1, 1], 0), ([1, 1, 1, 1], 2), ([0, 1, 2, 1], 1), ([2, 1, 1, 2], 2)] {
        let s = expand_regime_b(labels, mu, 5).unwrap();
        let out = apply_operator(&regime_b_operator(labels), &s.series).unwrap();
        assert!(out.vanishes(), "{labels:?} μ={mu}");
        assert_eq!(s.coeff(&[0]), RatFunc::one(Var::Kappa));
        // a different λ_2 gives a different operator, which must not annihilate
        let wrong = regime_b_operator([labels[0], labels[1], labels[2] + 2, labels[3]]);
        assert!(!apply_operator(&wrong, &s.series).unwrap().vanishes(), "{labels:?} μ={mu}");
    }
    assert!(matches!(expand_regime_b([1, 1, 1, 1], 1, 4), Err(Error::SelectionRuleViolation(_))));
}

#[test]
fn regime_b_channels_examples() {
    assert_eq!(regime_b_channels([1, 1, 1, 1]), vec![0, 2]);
    assert_eq!(regime_b_channels([0, 1, 2, 1]), vec![1]);
    assert_eq!(regime_b_channels([2, 2, 2, 2]), vec![0, 2, 4]);
}

#[test]
fn identity_insertion_is_exact() {
    // λ_2 = 0: a single channel μ = λ_1, both sides are one monomial
    for (labels, sigma) in [([1, 1, 0, 2], 2), ([1, 2, 0, 1], 1), ([2, 1, 0, 3], 3)] {
        let r = assoc_check(labels, sigma, [0.7, 1.0], 3.3, 2, 1e-12).unwrap();
        assert_eq!(r.sixj_values.len(), 1);
        assert!(r.rel_diff < 1e-12, "{labels:?}: {}", r.rel_diff);
        assert!(r.verdict);
    }
}

#[test]
fn four_point_agreement() {
    for (labels, sigma) in [([1, 1, 1, 1], 0), ([1, 1, 1, 1], 2), ([0, 1, 1, 0], 1), ([1, 1, 2, 2], 2)] {
        let r = assoc_check_with(labels, sigma, &params(7f64.sqrt(), 40), &sixj_values(labels, sigma, 7f64.sqrt()).unwrap()).unwrap();
        assert!(r.verdict, "{labels:?} ς={sigma}: rel {}", r.rel_diff);
    }
}

#[test]
fn corrupted_weights_fail() {
    let (labels, sigma, kappa0) = ([1, 1, 1, 1], 0, 7f64.sqrt());
    let good = sixj_values(labels, sigma, kappa0).unwrap();
    let mut bad: BTreeMap<u32, Cplx> = good.clone();
    *bad.get_mut(&2).unwrap() *= 1.01;
    let ok = assoc_check_with(labels, sigma, &params(kappa0, 40), &good).unwrap();
    let r = assoc_check_with(labels, sigma, &params(kappa0, 40), &bad).unwrap();
    assert!(ok.verdict);
    assert!(!r.verdict && r.rel_diff > 1e-4, "rel {}", r.rel_diff);
}

#[test]
fn exact_and_float_agree() {
    let e = assoc_check([1, 1, 1, 1], 2, POINT, 3.3, 10, 1.0).unwrap();
    let f = assoc_check_arith([1, 1, 1, 1], 2, POINT, 3.3, 10, 1.0, Arith::Float).unwrap();
    for (x, y) in [(e.value_a, f.value_a), (e.value_b, f.value_b)] {
        assert!((x.re - y.re).abs() < 1e-11 * x.re.abs());
    }
}

#[test]
fn bad_points_are_rejected() {
    for point in [[0.3, 1.0], [1.0, 0.8], [0.0, 0.0], [0.6, 0.6]] {
        let r = assoc_check([1, 1, 1, 1], 0, point, 3.3, 4, 1e-6);
        assert!(matches!(r, Err(Error::DomainViolation(_))), "{point:?}");
    }
}

#[test]
fn report_round_trips_through_json() {
    let r = assoc_check([1, 1, 1, 1], 0, POINT, 3.3, 6, 1e-6).unwrap();
    let s = serde_json::to_string(&r).unwrap();
    let back: AssocReport = serde_json::from_str(&s).unwrap();
    assert_eq!(back, r);
}

#[test]
fn insertion_syntax() {
    let i: Insertion = "w1:2,1".parse().unwrap();
    assert_eq!(i, Insertion::new(Slot::W1, &[2, 1]));
    assert_eq!(i.to_string(), "w1:2,1");
    assert_eq!("ket:1".parse::<Insertion>().unwrap(), Insertion::new(Slot::W0, &[1]));
    assert_eq!("bra:".parse::<Insertion>().unwrap(), Insertion::new(Slot::Bra, &[]));
    for bad in ["w3:1", "w1:0", "w1:x", "w1"] {
        assert!(matches!(bad.parse::<Insertion>(), Err(Error::Parse(_))), "{bad}");
    }
    for s in Slot::ALL {
        assert_eq!(s.name().parse::<Slot>().unwrap(), s);
    }
}

#[test]
fn insertion_limits() {
    let p = params(3.3, 4);
    let long = [Insertion::new(Slot::W1, &[1, 1, 1])];
    assert!(matches!(descendant_assoc_check([1, 1, 1, 1], 0, &long, &p), Err(Error::DomainViolation(_))));
    let split = [Insertion::new(Slot::W1, &[1, 1]), Insertion::new(Slot::W0, &[1])];
    assert!(matches!(descendant_assoc_check([1, 1, 1, 1], 0, &split, &p), Err(Error::DomainViolation(_))));
    let twice = [Insertion::new(Slot::W1, &[1]), Insertion::new(Slot::W1, &[2])];
    assert!(matches!(descendant_assoc_check([1, 1, 1, 1], 0, &twice, &p), Err(Error::DomainViolation(_))));
}

#[test]
fn empty_insertions_match_plain_check() {
    let labels = [1, 1, 1, 1];
    let p = CheckParams { arith: Arith::Exact, ..params(3.3, 8) };
    let plain = assoc_check(labels, 2, POINT, 3.3, 8, 1e-6).unwrap();
    let none = descendant_assoc_check(labels, 2, &[], &p).unwrap();
    let empty_words = descendant_assoc_check(labels, 2, &[Insertion::new(Slot::W2, &[])], &p).unwrap();
    for r in [none, empty_words] {
        assert!((r.value_a.re - plain.value_a.re).abs() < 1e-13 * plain.value_a.re.abs());
        assert!((r.value_b.re - plain.value_b.re).abs() < 1e-13 * plain.value_b.re.abs());
    }
}

#[test]
fn descendant_agreement() {
    let labels = [1, 1, 1, 1];
    for ins in [
        vec![Insertion::new(Slot::W1, &[1])],
        vec![Insertion::new(Slot::W2, &[2])],
        vec![Insertion::new(Slot::Bra, &[1]), Insertion::new(Slot::W0, &[1])],
        vec![Insertion::new(Slot::W0, &[2, 1])],
    ] {
        for sigma in [0, 2] {
            let p = CheckParams { tol: 1e-9, ..params(7f64.sqrt(), 90) };
            let r = descendant_assoc_check(labels, sigma, &ins, &p).unwrap();
            assert!(r.verdict, "{ins:?} ς={sigma}: rel {}", r.rel_diff);
            assert_eq!(r.insertions.len(), ins.len());
        }
    }
}

#[test]
fn admissible_case_list() {
    let cases = admissible_cases(1);
    assert!(cases.contains(&([1, 1, 1, 1], 0)));
    assert!(cases.contains(&([1, 1, 1, 1], 2)));
    for (l, s) in cases {
        assert!((l.iter().sum::<u32>()) % 2 == 0);
        assert!(!regime_b_channels(l).is_empty(), "{l:?} {s}");
    }
}
