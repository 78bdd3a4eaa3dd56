use std::collections::BTreeMap;

use virblocks::scalars::{int, rat, rat_from_f64, RatFunc, Var};
use virblocks::series::*;
use virblocks::virasoro::{h_weight, selection_polynomial};
use virblocks::Error;

fn k(n: i64) -> RatFunc {
    RatFunc::from_int(n, Var::Kappa)
}

fn generic() -> RatFunc {
    &RatFunc::var(Var::Kappa) + &RatFunc::constant(rat(1, 3), Var::Kappa)
}

fn exact_mode(kappa0: f64) -> KappaMode {
    KappaMode::Exact(rat_from_f64(kappa0))
}

#[test]
fn identity_and_derivative_examples() {
    // x_0^{a} x_1^{b} with a = 1/2, b = κ
    let base = vec![RatFunc::constant(rat(1, 2), Var::Kappa), RatFunc::var(Var::Kappa)];
    let s = Series::monomial(base.clone(), vec![1, 0], k(3));
    assert_eq!(apply_operator(&SeriesOperator::Identity, &s).unwrap(), s);

    let d0 = apply_operator(&SeriesOperator::Deriv(0), &s).unwrap();
    assert_eq!(d0.terms.len(), 1);
    assert_eq!(d0.coeff(&[-1, 0]), RatFunc::constant(rat(3, 2), Var::Kappa));

    let d1 = apply_operator(&SeriesOperator::Deriv(1), &s).unwrap();
    assert_eq!(d1.coeff(&[0, -1]), RatFunc::var(Var::Kappa).scale(&int(3)));

    // x_1 ∂_1 is the Euler operator in x_1
    let euler = SeriesOperator::signed_power(2, 1, 1, 1, k(1)).then(SeriesOperator::Deriv(1));
    let e = apply_operator(&euler, &s).unwrap();
    assert_eq!(e.coeff(&[0, 0]), RatFunc::var(Var::Kappa).scale(&int(3)));
}

#[test]
fn binomial_expansion() {
    // (x_1 − x_0)^3 = x_1^3 − 3x_1^2x_0 + 3x_1x_0^2 − x_0^3, with x_0 the small variable
    let s = Series::monomial(vec![k(0), k(0)], vec![1, 0], k(1));
    let op = SeriesOperator::Binomial { lead: 1, lead_sign: 1, sub: 0, sub_sign: -1, exp: 3 };
    let out = apply_operator(&op, &s).unwrap();
    let want: BTreeMap<Vec<i64>, RatFunc> =
        [(vec![0, 3], k(1)), (vec![1, 2], k(-3)), (vec![2, 1], k(3)), (vec![3, 0], k(-1))].into_iter().collect();
    assert_eq!(out.terms, want);

    // (x_1 + x_0)^{-1} needs a cap; through order 3 it is Σ (−x_0)^j x_1^{−1−j}
    let op = SeriesOperator::Binomial { lead: 1, lead_sign: 1, sub: 0, sub_sign: 1, exp: -1 };
    let out = apply_operator_to(&op, &s, 3).unwrap();
    for j in 0..=3 {
        assert_eq!(out.coeff(&[j, -1 - j]), k(if j % 2 == 0 { 1 } else { -1 }));
    }
    assert_eq!(out.terms.len(), 4);
}

#[test]
fn truncation_underflow() {
    let s = compose_blocks(&[1, 1, 1, 1], &[1, 0, 1], 3).unwrap();
    let err = apply_operator_to(&SeriesOperator::Identity, &s.series, 5).unwrap_err();
    assert_eq!(err, Error::TruncationUnderflow { requested: 5, supported: 3 });
    // x_0^{-1} lowers the order by one, so order 3 is out of reach
    let op = SeriesOperator::signed_power(2, 0, 1, -1, k(1));
    assert!(matches!(apply_operator_to(&op, &s.series, 3), Err(Error::TruncationUnderflow { .. })));
    assert!(apply_operator_to(&op, &s.series, 2).is_ok());
}

#[test]
fn one_point_operator_gives_selection_polynomial() {
    for lambda in 0..=3u32 {
        for l0 in [0u32, 2] {
            let (h0, h1) = (h_weight(l0), h_weight(lambda));
            let hout = generic();
            let s = Series::monomial(vec![&(&hout - &h1) - &h0], vec![0], k(1));
            let op = bsa_reduced_with(1, lambda, &[h0.clone(), h1]);
            let out = apply_operator(&op, &s).unwrap();
            let p = selection_polynomial(lambda).eval(&h0, &hout);
            assert_eq!(out.terms.len(), 1);
            assert_eq!(out.coeff(&[-(lambda as i64) - 1]), p);
        }
    }
}

fn annihilated(s: &Series, lambdas: &[u32]) -> bool {
    (1..lambdas.len()).all(|j| apply_operator(&bsa_reduced(j, lambdas), s).unwrap().vanishes())
}

#[test]
fn blocks_are_annihilated_symbolic() {
    for (lambdas, sigmas) in [
        (vec![1, 1, 0], vec![1, 0]),
        (vec![1, 1, 2], vec![1, 2]),
        (vec![1, 1, 1, 1], vec![1, 0, 1]),
        (vec![1, 1, 1, 1], vec![1, 2, 1]),
        (vec![0, 1, 2, 1], vec![0, 1, 1]),
        (vec![2, 1, 1, 2], vec![2, 1, 2]),
    ] {
        let s = compose_blocks(&lambdas, &sigmas, 5).unwrap();
        assert!(annihilated(&s.series, &lambdas[..lambdas.len() - 1]), "{lambdas:?} {sigmas:?}");
        assert_eq!(s.coeff(&vec![0; lambdas.len() - 3]), k(1));
    }
}

#[test]
fn three_point_blocks_are_annihilated_at_fixed_kappa() {
    let kappa0 = 7f64.sqrt();
    let mode = exact_mode(kappa0);
    let conv = |r: &RatFunc| mode.conv(r);
    for (lambdas, sigmas) in [(vec![0, 1, 1, 1, 1], vec![0, 1, 0, 1]), (vec![1, 1, 1, 1, 0], vec![1, 2, 1, 0]), (vec![1, 1, 1, 1, 2], vec![1, 0, 1, 2])] {
        let s: FrobeniusSeries = compose_blocks_at(&lambdas, &sigmas, 4, kappa0).unwrap();
        for j in 1..=3 {
            let op = bsa_reduced(j, &lambdas[..4]).map_coef(&conv).unwrap();
            assert!(apply_operator(&op, &s.series).unwrap().vanishes(), "{lambdas:?} {sigmas:?} j={j}");
        }
    }
}

#[test]
fn perturbed_block_is_not_annihilated() {
    let lambdas = [1, 1, 1, 1];
    let mut s = compose_blocks(&lambdas, &[1, 0, 1], 5).unwrap();
    let key = s.series.terms.keys().find(|n| n[0] == 2).unwrap().clone();
    let c = s.series.terms[&key].clone();
    s.series.terms.insert(key, &c + &RatFunc::constant(rat(1, 1000), Var::Kappa));
    assert!(!annihilated(&s.series, &lambdas[..3]));
}

#[test]
fn identity_insertion_gives_monomial() {
    // λ_2 = 0 forces ς_2 = ς_1: only the leading term survives
    for (lambdas, sigmas) in [(vec![1, 1, 0, 2], vec![1, 2, 2]), (vec![2, 1, 0, 1], vec![2, 1, 1])] {
        let s = compose_blocks(&lambdas, &sigmas, 6).unwrap();
        assert_eq!(s.series.terms.len(), 1, "{lambdas:?}");
        let d = &(&h_weight(sigmas[1]) - &h_weight(lambdas[1])) - &h_weight(lambdas[0]);
        assert_eq!(s.exponent_base()[0], d);
        assert_eq!(s.exponent_base()[1], k(0));
    }
}

#[test]
fn float_matches_exact() {
    let kappa0 = 3.7;
    for (lambdas, sigmas) in [(vec![1, 1, 1, 1], vec![1, 0, 1]), (vec![1, 2, 1, 2], vec![1, 1, 2])] {
        let e = compose_blocks_at(&lambdas, &sigmas, 8, kappa0).unwrap();
        let f = compose_blocks_f64(&lambdas, &sigmas, 8, kappa0).unwrap();
        assert_eq!(e.series.terms.len(), f.series.terms.len());
        for (n, c) in &e.series.terms {
            let ev = c.value_at(kappa0).unwrap();
            let fv = f.series.coeff(n);
            assert!((ev - fv).abs() <= 1e-10 * ev.abs().max(1.0), "{n:?}: {ev} vs {fv}");
        }
        let pts = [0.3, 1.0];
        let (a, b) = (e.eval(kappa0, &pts).unwrap(), f.eval(kappa0, &pts).unwrap());
        assert!((a.value - b.value).norm() <= 1e-11 * a.value.norm());
    }
}

#[test]
fn symbolic_specializes_to_fixed_kappa() {
    let kappa0 = 2.5;
    let s = compose_blocks(&[1, 1, 1, 1], &[1, 2, 1], 4).unwrap();
    let t = compose_blocks_at(&[1, 1, 1, 1], &[1, 2, 1], 4, kappa0).unwrap();
    let r = rat_from_f64(kappa0);
    for (n, c) in &s.series.terms {
        assert_eq!(c.specialize(&r).unwrap(), t.series.coeff(n));
    }
}

#[test]
fn operator_at_infinity() {
    for (lambdas, sigmas) in [(vec![1, 1, 1, 1], vec![1, 0, 1]), (vec![1, 1, 1, 1], vec![1, 2, 1]), (vec![0, 1, 2, 1], vec![0, 1, 1])] {
        let s = compose_blocks(&lambdas, &sigmas, 5).unwrap();
        let linf = *lambdas.last().unwrap();
        let inner = &lambdas[1..lambdas.len() - 1];
        assert!(bsa_infinity_check(&s, inner, linf).unwrap(), "{lambdas:?}");
        assert!(!bsa_infinity_check(&s, inner, linf + 2).unwrap(), "wrong λ∞ for {lambdas:?}");
    }
}

#[test]
fn rejects_bad_input() {
    assert!(matches!(compose_blocks(&[1, 1, 1, 1], &[1, 1, 1], 3), Err(Error::NotAdmissible(_))));
    assert!(matches!(compose_blocks(&[1, 1], &[1], 3), Err(Error::NotAdmissible(_))));
    assert!(matches!(compose_blocks(&[1, 1, 0], &[1, 0], -1), Err(Error::DomainViolation(_))));
    let s = compose_blocks(&[1, 1, 1, 1], &[1, 0, 1], 2).unwrap();
    assert!(matches!(s.eval(3.0, &[1.0, 0.5]), Err(Error::DomainViolation(_))));
    assert!(matches!(s.eval(3.0, &[-0.5, 1.0]), Err(Error::DomainViolation(_))));
    assert!(matches!(s.eval(3.0, &[0.5]), Err(Error::DomainViolation(_))));
}

#[test]
fn evaluation_of_leading_term() {
    // at trunc 0 the value is prefactor·x_1^{Δ_1}x_2^{Δ_2}
    let kappa0 = 3.3;
    let s = compose_blocks(&[1, 1, 1, 1], &[1, 0, 1], 0).unwrap();
    let pts = [0.4, 1.7];
    let v = s.eval(kappa0, &pts).unwrap();
    let base: Vec<f64> = s.exponent_base().iter().map(|b| b.eval_real(kappa0).unwrap()).collect();
    let want = s.prefactor_value(kappa0).unwrap() * pts[0].powf(base[0]) * pts[1].powf(base[1]);
    assert!((v.value.re - want).abs() < 1e-12 * want.abs());
    assert_eq!(v.tail_estimate, v.value.norm());
}

#[test]
fn offsets_round_trip() {
    for n in [vec![2, -2], vec![3, -1, -2], vec![0]] {
        assert_eq!(FrobeniusSeries::<RatFunc>::exponent_of(&FrobeniusSeries::<RatFunc>::offset_of(&n)), n);
    }
}
