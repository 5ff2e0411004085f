mod common;

use std::collections::BTreeMap;

use common::*;
use proptest::prelude::*;
use symtangent::elliptic::{
    construct_sn_sections, construct_with_tails, h0, h0_nonsplit_report, h1, is_triangular, leading_matrix,
    tail_coefficients, verify_ten3, EllipticError, EllipticSection, FormalEllipticFunction, LineBundle,
    LineBundleDegreeLedger, TailModel, Verdict,
};
use symtangent::tensor::d_coefficient;
use symtangent::{int, Rat};

fn random_tails(seed: u64, m: usize) -> TailModel {
    TailModel::Randomized { seed, truncation: m as u32 + 4 }
}

/// Row `q` as a map exponent -> coefficient, built by hand from the
/// principal parts `v^-(k + q - p)` (and tails when given).
fn row_oracle(s: &EllipticSection, q: usize, tails: Option<(u64, u32)>) -> BTreeMap<i32, Rat> {
    let mut out: BTreeMap<i32, Rat> = BTreeMap::new();
    for p in 0..=q {
        let d = d_coefficient((s.m - p) as i64, (s.m - q) as i64, s.n as i64).unwrap();
        let shift = (q - p) as i32;
        for (k, c) in s.coeffs[p].terms() {
            *out.entry(-(k as i32) - shift).or_default() += &d * c;
            if let (Some((seed, trunc)), true) = (tails, k >= 2) {
                for (j, r) in tail_coefficients(seed, k, trunc).iter().enumerate() {
                    *out.entry(j as i32 + 1 - shift).or_default() += &d * c * r;
                }
            }
        }
    }
    out.retain(|_, c| *c != int(0));
    out
}

fn order_of(row: &BTreeMap<i32, Rat>) -> u32 {
    row.keys().next().map_or(0, |&e| (-e).max(0) as u32)
}

#[test]
fn m1_first_section_by_hand() {
    for n in 1..6u32 {
        let s = construct_sn_sections(n, 1).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].coeffs[0].symbols(), vec![("P2".to_string(), int(1))]);
        assert_eq!(s[0].coeffs[1].symbols(), vec![("P3".to_string(), int(n as i64))]);
        let cert = verify_ten3(&s[0], &TailModel::Symbolic).unwrap();
        assert!(cert.per_q_orders.iter().all(|&o| o <= 2));
        assert_eq!(cert.per_q_orders[0], 2);
        assert_eq!(cert.verdict, Verdict::Certified);
    }
}

#[test]
fn first_two_coefficients_for_any_m() {
    for n in 1..4i64 {
        for m in 1..6usize {
            let s = construct_sn_sections(n as u32, m).unwrap();
            let mi = m as i64;
            let lead = int(1) / d_coefficient(mi, mi, n).unwrap();
            assert_eq!(s[0].coeffs[0], FormalEllipticFunction::p(2, lead));
            let next = -d_coefficient(mi, mi - 1, n).unwrap() / d_coefficient(mi - 1, mi - 1, n).unwrap();
            assert_eq!(s[0].coeffs[1], FormalEllipticFunction::p(3, next));
            if m >= 2 {
                // theta_1 starts one step later with the same pattern.
                let next1 = -d_coefficient(mi - 1, mi - 2, n).unwrap() / d_coefficient(mi - 2, mi - 2, n).unwrap();
                assert_eq!(s[1].coeffs[2], FormalEllipticFunction::p(3, next1));
            }
        }
    }
}

#[test]
fn q0_row_has_order_two() {
    for m in 1..5 {
        let s = construct_sn_sections(2, m).unwrap();
        assert_eq!(verify_ten3(&s[0], &TailModel::Symbolic).unwrap().per_q_orders[0], 2);
    }
}

#[test]
fn zero_and_corrupted_sections() {
    let cert = verify_ten3(&EllipticSection::zero(1, 2), &TailModel::Symbolic).unwrap();
    assert_eq!(cert.per_q_orders, vec![0, 0, 0]);
    assert_eq!(cert.verdict, Verdict::Certified);

    for n in 1..4 {
        let mut s = construct_sn_sections(n, 1).unwrap().remove(0);
        s.coeffs[1] = FormalEllipticFunction::zero();
        let cert = verify_ten3(&s, &TailModel::Symbolic).unwrap();
        assert_eq!(cert.per_q_orders[1], 3);
        assert_eq!(cert.verdict, Verdict::NotCertified);
    }
}

#[test]
fn invalid_parameters() {
    assert!(matches!(construct_sn_sections(0, 2), Err(EllipticError::InvalidParameter(_))));
    assert!(matches!(construct_sn_sections(1, 0), Err(EllipticError::InvalidParameter(_))));
    assert!(h0_nonsplit_report(0).is_err());
}

#[test]
fn construction_invariants() {
    for n in 1..=3 {
        for m in 1..=5 {
            let secs = construct_sn_sections(n, m).unwrap();
            assert_eq!(secs.len(), m + 1);
            assert!(is_triangular(&secs));
            let lead = leading_matrix(&secs);
            for (i, row) in lead.iter().enumerate() {
                assert!(row[..i].iter().all(|c| *c == int(0)));
                assert_ne!(row[i], int(0));
            }
            for s in &secs {
                // Only P_3 .. P_(p - i + 2) appear past the start.
                for (p, c) in s.coeffs.iter().enumerate().skip(s.start + 1) {
                    assert!(c.max_symbol().unwrap_or(3) <= (p - s.start + 2) as u32);
                    assert_eq!(c.coefficient(2), int(0));
                }
                let cert = verify_ten3(s, &TailModel::Symbolic).unwrap();
                assert!(cert.per_q_orders.iter().all(|&o| o <= 2), "n={n} m={m} start={}", s.start);
                assert_ne!(cert.verdict, Verdict::NotCertified);
            }
        }
    }
}

#[test]
fn mode_agreement_on_flag_free_certificates() {
    for n in 1..=3 {
        for m in 1..=5 {
            for s in construct_sn_sections(n, m).unwrap() {
                let sym = verify_ten3(&s, &TailModel::Symbolic).unwrap();
                for seed in 0..5 {
                    let rnd = verify_ten3(&s, &random_tails(seed, m)).unwrap();
                    assert!(rnd.tail_flags.is_empty());
                    if sym.verdict == Verdict::Certified {
                        assert_eq!(rnd.verdict, Verdict::Certified, "n={n} m={m} start={} seed={seed}", s.start);
                    }
                    // Any randomized excess sits on a flagged row.
                    for (q, &o) in rnd.per_q_orders.iter().enumerate() {
                        if o > 2 {
                            assert!(sym.tail_flags.iter().any(|f| f.q == q));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn m4_theta0_is_flagged_and_tails_really_bite() {
    for n in 1..=3 {
        let s = construct_sn_sections(n, 4).unwrap().remove(0);
        let sym = verify_ten3(&s, &TailModel::Symbolic).unwrap();
        assert_eq!(sym.verdict, Verdict::Flagged);
        assert_eq!(sym.tail_flags.len(), 1);
        assert_eq!((sym.tail_flags[0].q, sym.tail_flags[0].p, sym.tail_flags[0].potential_order), (4, 0, 3));
        let rnd = verify_ten3(&s, &random_tails(3, 4)).unwrap();
        assert_eq!(rnd.per_q_orders[4], 3);
    }
}

#[test]
fn tail_aware_construction_certifies() {
    for n in 1..=3 {
        for m in 1..=5 {
            for seed in 0..5 {
                let tails = random_tails(seed, m);
                let secs = construct_with_tails(n, m, &tails).unwrap();
                assert!(is_triangular(&secs));
                for s in &secs {
                    let cert = verify_ten3(s, &tails).unwrap();
                    assert_eq!(cert.verdict, Verdict::Certified, "n={n} m={m} seed={seed} start={}", s.start);
                }
            }
        }
    }
}

#[test]
fn h0_report_examples() {
    let r = h0_nonsplit_report(3).unwrap();
    assert_eq!((r.h0_relative, r.h0_base, r.h0_total_cited), (4, 1, 4));
    assert_eq!(r.split_total(), 5);
    assert!(r.contradiction());
    let r = h0_nonsplit_report(1).unwrap();
    assert_eq!((r.h0_relative, r.h0_base, r.h0_total_cited), (2, 1, 2));
    assert_eq!(r.relative.h0, vec![0, 1, 1]);
    assert_eq!(h0(1, LineBundle::nontrivial_degree_zero()).unwrap(), 0);
    assert!(h0(2, LineBundle::trivial()).is_err());
}

fn bundle() -> impl Strategy<Value = LineBundle> {
    prop_oneof![(-20i64..=20).prop_map(LineBundle::of_degree), Just(LineBundle::nontrivial_degree_zero()),]
}

fn formal(max_k: u32) -> impl Strategy<Value = FormalEllipticFunction> {
    prop::collection::vec((prop_oneof![Just(0u32), 2..=max_k], small_rat()), 0..4).prop_map(|terms| {
        terms.into_iter().fold(FormalEllipticFunction::zero(), |acc, (k, c)| {
            let t = if k == 0 { FormalEllipticFunction::constant(c) } else { FormalEllipticFunction::p(k, c) };
            acc.checked_add(&t)
        })
    })
}

fn section() -> impl Strategy<Value = EllipticSection> {
    (1u32..4, 1usize..5).prop_flat_map(|(n, m)| {
        prop::collection::vec(formal(6), m + 1).prop_map(move |coeffs| EllipticSection { n, m, start: 0, coeffs })
    })
}

proptest! {
    #![proptest_config(cases(128))]

    #[test]
    fn riemann_roch_on_genus_one(b in bundle()) {
        let lhs = h0(1, b).unwrap() as i64 - h1(1, b).unwrap() as i64;
        prop_assert_eq!(lhs, b.degree);
    }

    #[test]
    fn riemann_roch_on_p1(d in -20i64..=20) {
        let b = LineBundle::of_degree(d);
        prop_assert_eq!(h0(0, b).unwrap() as i64 - h1(0, b).unwrap() as i64, d + 1);
    }

    #[test]
    fn ledger_totals(bs in prop::collection::vec(bundle(), 0..6)) {
        let l = LineBundleDegreeLedger::new(1, bs.clone()).unwrap();
        let expected: u64 = bs.iter().map(|b| if b.degree > 0 { b.degree as u64 } else if b.trivial { 1 } else { 0 }).sum();
        prop_assert_eq!(l.total(), expected);
    }

    #[test]
    fn symbolic_orders_match_principal_parts(s in section()) {
        let cert = verify_ten3(&s, &TailModel::Symbolic).unwrap();
        for q in 0..=s.m {
            prop_assert_eq!(cert.per_q_orders[q], order_of(&row_oracle(&s, q, None)));
        }
        let bad = cert.per_q_orders.iter().any(|&o| o > 2);
        prop_assert_eq!(cert.verdict == Verdict::NotCertified, bad);
        prop_assert_eq!(cert.verdict == Verdict::Flagged, !bad && !cert.tail_flags.is_empty());
    }

    #[test]
    fn random_orders_match_series(s in section(), seed in any::<u64>()) {
        let tails = random_tails(seed, s.m);
        let cert = verify_ten3(&s, &tails).unwrap();
        for q in 0..=s.m {
            prop_assert_eq!(cert.per_q_orders[q], order_of(&row_oracle(&s, q, Some((seed, s.m as u32 + 4)))));
        }
    }

    #[test]
    fn flags_bound_the_tail_effect(s in section(), seed in any::<u64>()) {
        // Rows without a flag cannot gain a pole above 2 from the tails.
        let sym = verify_ten3(&s, &TailModel::Symbolic).unwrap();
        let rnd = verify_ten3(&s, &random_tails(seed, s.m)).unwrap();
        for q in 0..=s.m {
            if !sym.tail_flags.iter().any(|f| f.q == q) && sym.per_q_orders[q] <= 2 {
                prop_assert!(rnd.per_q_orders[q] <= 2);
            }
        }
    }
}
