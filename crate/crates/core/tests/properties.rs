use proptest::prelude::*;

use hydra_core::catalog::{compare_support, compare_table, oracle_for};
use hydra_core::hydra::tree_equation;
use hydra_core::languages::{build_language, k_dual, LanguageKind};
use hydra_core::oracle::count_table;
use hydra_core::plethysm::{implicit_iterate, plethysm, plethystic_inverse, solve_implicit, stabilization_bound};
use hydra_core::qseries::{umbral, zq_mul, ZQSeries};
use hydra_core::{series_inverse, series_mul, shift, sign_flip, Rational, Series, SetSpec, TruncationWindow, Word};

const L: usize = 3;
const K: i32 = 4;

fn window() -> TruncationWindow {
    TruncationWindow::new(L, K)
}

fn term(max_len: usize, lo: i32, hi: i32) -> impl Strategy<Value = (Vec<i32>, i64, i64)> {
    (prop::collection::vec(lo..=hi, 0..=max_len), -4i64..=4, 1i64..=3)
}

fn build(terms: Vec<(Vec<i32>, i64, i64)>, w: TruncationWindow) -> Series {
    Series::from_terms(terms.into_iter().map(|(k, n, d)| (Word::from(k), Rational::new(n, d))), w)
}

fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec(term(L, 0, K), 0..8).prop_map(|t| build(t, window()))
}

/// Random series without constant term.
fn nonconstant() -> impl Strategy<Value = Series> {
    prop::collection::vec(term(L, 0, K), 0..8)
        .prop_map(|t| build(t.into_iter().filter(|(w, _, _)| !w.is_empty()).collect(), window()))
}

/// Random series with constant term 1.
fn unit() -> impl Strategy<Value = Series> {
    nonconstant().prop_map(|s| s.add(&Series::one(window())))
}

fn agree(a: &Series, b: &Series) -> Result<(), TestCaseError> {
    match a.first_discrepancy(b) {
        None => Ok(()),
        Some((w, x, y)) => Err(TestCaseError::fail(format!("at {w}: {x} vs {y}"))),
    }
}

fn agree_zq(a: &ZQSeries, b: &ZQSeries) -> Result<(), TestCaseError> {
    match a.first_discrepancy(b) {
        None => Ok(()),
        Some((z, t, q, x, y)) => Err(TestCaseError::fail(format!("z^{z} t^{t} q^{q}: {x} vs {y}"))),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        agree(&a.add(&b), &b.add(&a))?;
        agree(&a.add(&b).add(&c), &a.add(&b.add(&c)))?;
        agree(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c)))?;
        agree(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c)))?;
        agree(&a.add(&b).mul(&c), &a.mul(&c).add(&b.mul(&c)))?;
        agree(&a.mul(&Series::one(window())), &a)?;
        prop_assert!(a.sub(&a).is_empty());
    }

    #[test]
    fn product_window_is_at_least_the_input_window(a in series(), b in series()) {
        prop_assert!(series_mul(&a, &b).window().covers(&window()));
    }

    #[test]
    fn inverse_is_two_sided(a in unit()) {
        let inv = series_inverse(&a).unwrap();
        let one = Series::one(window());
        agree(&a.mul(&inv), &one)?;
        agree(&inv.mul(&a), &one)?;
    }

    #[test]
    fn shift_and_sign_flip_are_ring_maps(a in series(), b in series(), n in -3i32..=3) {
        agree(&shift(&a.mul(&b), n), &shift(&a, n).mul(&shift(&b, n)))?;
        agree(&shift(&shift(&a, n), -n), &a)?;
        agree(&sign_flip(&a.mul(&b)), &sign_flip(&a).mul(&sign_flip(&b)))?;
        agree(&sign_flip(&sign_flip(&a)), &a)?;
    }

    #[test]
    fn plethysm_is_associative(r in series(), s in nonconstant(), t in nonconstant()) {
        let left = plethysm(&plethysm(&r, &s).unwrap(), &t).unwrap();
        let right = plethysm(&r, &plethysm(&s, &t).unwrap()).unwrap();
        agree(&left, &right)?;
    }

    #[test]
    fn x0_is_the_plethystic_unit(r in series(), s in nonconstant()) {
        let x0 = Series::letter(0, window());
        agree(&plethysm(&r, &x0).unwrap(), &r)?;
        agree(&plethysm(&x0, &s).unwrap(), &s)?;
    }

    #[test]
    fn plethysm_is_linear_and_multiplicative_on_the_left(a in series(), b in series(), s in nonconstant()) {
        let after = |r: &Series| plethysm(r, &s).unwrap();
        agree(&after(&a.add(&b)), &after(&a).add(&after(&b)))?;
        agree(&after(&a.mul(&b)), &after(&a).mul(&after(&b)))?;
    }

    #[test]
    fn plethysm_commutes_with_shift(r in series(), s in nonconstant(), n in 0i32..=2) {
        let lhs = shift(&plethysm(&r, &s).unwrap(), n);
        let rhs = plethysm(&r, &shift(&s, n)).unwrap();
        prop_assert_eq!(lhs.window().max_letter, K + n);
        agree(&lhs, &rhs)?;
    }

    #[test]
    fn umbral_is_multiplicative(a in series(), b in series()) {
        agree_zq(&umbral(&a.mul(&b)), &zq_mul(&umbral(&a), &umbral(&b)))?;
        agree_zq(&umbral(&a.add(&b)), &umbral(&a).add(&umbral(&b)))?;
    }

    #[test]
    fn umbral_turns_shift_into_z_substitution(a in series(), n in 0i64..=3) {
        agree_zq(&umbral(&shift(&a, n as i32)), &umbral(&a).subs_zq(n))?;
    }

    #[test]
    fn plethystic_inverse_composes_to_x0(s in nonconstant(), alpha in prop::sample::select(vec![1i64, -1, 2])) {
        let x0 = Word::letter(0);
        let old = s.coefficient(&x0).unwrap();
        let r = s
            .sub(&Series::monomial(x0.clone(), old, window()))
            .add(&Series::monomial(x0, Rational::from(alpha), window()));
        let inv = plethystic_inverse(&r).unwrap();
        let right = plethysm(&r, &inv).unwrap();
        let left = plethysm(&inv, &r).unwrap();
        agree(&right, &Series::letter(0, *right.window()))?;
        agree(&left, &Series::letter(0, *left.window()))?;
    }

    #[test]
    fn solver_stabilizes_at_the_bound(m in unit()) {
        let f = tree_equation(&m).unwrap();
        let w = TruncationWindow::new(L, K);
        let n = stabilization_bound(&w);
        let a = implicit_iterate(&f, &w, n).unwrap();
        let b = implicit_iterate(&f, &w, n + 1).unwrap();
        agree(&a, &b)?;
        agree(&solve_implicit(&f, &w).unwrap(), &a)?;
    }

    #[test]
    fn tree_series_is_a_fixed_point(m in unit()) {
        let w = TruncationWindow::new(L, K);
        let g = solve_implicit(&tree_equation(&m).unwrap(), &w).unwrap();
        let rhs = series_mul(&Series::letter(0, w), &plethysm(&m, &g).unwrap());
        agree(&g, &rhs)?;
    }

    #[test]
    fn distinct_partitions_match_enumeration(m in 0i64..=3, len in 1usize..=5) {
        let kind = LanguageKind::PM(m);
        let w = TruncationWindow::new(len, 10);
        let outcome = compare_support(&build_language(&kind, &w).unwrap(), &oracle_for(&kind).unwrap(), &w).unwrap();
        prop_assert!(outcome.is_none(), "{outcome:?}");
    }

    #[test]
    fn rise_set_languages_match_enumeration(lo in 0i64..=3, span in 0i64..=3, modulus in 1i64..=3, pick in 0usize..3) {
        let spec = match pick {
            0 => SetSpec::range(lo, lo + span),
            1 => SetSpec::at_least(lo),
            _ => SetSpec::progression(lo % modulus, modulus, false),
        };
        for kind in [LanguageKind::PS(spec.clone()), LanguageKind::CShat(spec.clone())] {
            let lang = kind.linked().unwrap().unwrap();
            let mut counts = ZQSeries::zero(4, 0, 12);
            for w in lang.words_up_to_weight(4, 12) {
                counts.add_term(w.len(), w.weight(), &Rational::one().into());
            }
            let table = count_table(&oracle_for(&kind).unwrap(), 12).unwrap();
            let outcome = compare_table(&counts, &table, 4, 12);
            prop_assert!(outcome.is_none(), "{kind}: {outcome:?}");
        }
    }

    #[test]
    fn k_duality_is_an_involution(m in 0i64..=3) {
        let w = TruncationWindow::new(4, 6);
        let p = build_language(&LanguageKind::PM(m), &w).unwrap();
        let dual = k_dual(&p).unwrap();
        agree(&k_dual(&dual).unwrap(), &p)?;
    }
}
