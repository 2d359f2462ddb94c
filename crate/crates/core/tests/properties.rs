use std::collections::BTreeMap;

use cotsum::charsums::{
    char_sum_closed, characters_mod, gauss_sum, gauss_sum_one, legendre_character,
    series_product_constant_term, CharFilter, CharSumSpec, LaurentPoly,
};
use cotsum::numeric::{rat, GUARD_BITS};
use cotsum::reciprocity::{
    dedekind_cot, dedekind_sum, reciprocity_check, s3, s3_cot, ReciprocityLaw,
};
use cotsum::rootsums::{
    decomposition_points, partial_fraction_check, pole_sum_bruteforce, pole_sum_closed, DecompId,
    Pole, PoleSpec, SumRange,
};
use cotsum::trigsums::{trig_sum_check, trig_sum_closed, TrigFamily, TrigFamilyId};
use cotsum::twoperiod::{two_period_bruteforce, TwoPeriodKernel, TwoPeriodSpec};
use cotsum::{approx_equal, make_context, root_of_unity, HighComplex, PrecisionContext};
use proptest::prelude::*;
use rug::Float;

fn ctx() -> PrecisionContext {
    make_context(128).unwrap()
}

fn coprime(a: i64, b: i64) -> bool {
    cotsum::numeric::gcd(a, b) == 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn roots_have_order_k(k in 1i64..=200, n in 1i64..=200) {
        prop_assume!(n <= k);
        let c = ctx();
        let z = root_of_unity(&c, k, n).unwrap();
        let one = HighComplex::one(c.work_bits());
        prop_assert!(approx_equal(&c, &z.powi(k), &one));
        let pair = &z * &root_of_unity(&c, k, k - n).unwrap();
        prop_assert!(approx_equal(&c, &pair, &one));
    }

    #[test]
    fn dyadic_rationals_round_trip(num in -1_000_000i64..1_000_000, shift in 0u32..40) {
        let r = rat(num, 1i64 << shift);
        let z = HighComplex::from_rational(128, &r);
        let (re, im) = z.to_rational_parts().unwrap();
        prop_assert_eq!(re, r);
        prop_assert_eq!(im, 0);
    }

    #[test]
    fn doubling_precision_keeps_verdicts(k in 1i64..60) {
        for bits in [128u32, 256] {
            let c = make_context(bits).unwrap();
            let f = TrigFamily::stated(TrigFamilyId::INV_SIN2, k).unwrap();
            prop_assert!(trig_sum_check(&c, &f).unwrap().pass);
        }
    }

    #[test]
    fn imaginary_poles_are_conjugate(k in 1i64..=101, m in 1u32..=4) {
        prop_assume!(k % 2 == 1);
        let c = ctx();
        let plus = PoleSpec::new(k, Pole::PlusI, m, 0, SumRange::Full).unwrap();
        let minus = PoleSpec::new(k, Pole::MinusI, m, 0, SumRange::Full).unwrap();
        let a = pole_sum_closed(&plus).unwrap();
        let b = pole_sum_closed(&minus).unwrap();
        prop_assert_eq!(a.clone(), b.conj());
        let bp = pole_sum_bruteforce(&c, &plus).unwrap();
        let bm = pole_sum_bruteforce(&c, &minus).unwrap();
        prop_assert!(approx_equal(&c, &bp, &bm.conj()));
        prop_assert!(approx_equal(&c, &bp, &a.to_complex(c.work_bits())));
    }

    #[test]
    fn decompositions_hold_at_random_points(
        which in 0usize..8, k in 2i64..=12, q in 2i64..=12, m in 1i64..=4, seed in any::<u64>()
    ) {
        let id = DecompId::ALL[which];
        let args: Vec<i64> = match id {
            DecompId::F_LOG => vec![k, m],
            DecompId::R => vec![k, q],
            DecompId::R2 => vec![2 * k + 1, 2 * q + 1],
            DecompId::PXK2 => vec![2 * k + 1],
            _ => vec![k],
        };
        if matches!(id, DecompId::R | DecompId::R2) {
            prop_assume!(args[0] != args[1] && coprime(args[0], args[1]));
        }
        let c = ctx();
        for x in decomposition_points(c.work_bits(), id, &args, seed, 3).unwrap() {
            prop_assert!(partial_fraction_check(&c, id, &args, &x).unwrap().pass);
        }
    }

    #[test]
    fn trig_families_match_closed_forms(which in 0usize..13, k in 1i64..=101) {
        let id = TrigFamilyId::ALL[which];
        prop_assume!(id.admissible(k));
        let c = ctx();
        prop_assert!(trig_sum_check(&c, &TrigFamily::stated(id, k).unwrap()).unwrap().pass);
    }

    #[test]
    fn csc2_two_period_sum_is_symmetric(p in 2i64..=12, q in 2i64..=12) {
        prop_assume!(p != q && coprime(p, q));
        let c = ctx();
        let a = two_period_bruteforce(&c, &TwoPeriodSpec::new(p, q, TwoPeriodKernel::Csc2).unwrap()).unwrap();
        let b = two_period_bruteforce(&c, &TwoPeriodSpec::new(q, p, TwoPeriodKernel::Csc2).unwrap()).unwrap();
        prop_assert!(approx_equal(&c, &a, &b));
    }

    #[test]
    fn dedekind_paths_agree(p in 1i64..50, q in 2i64..=50) {
        prop_assume!(p < q && coprime(p, q));
        let c = ctx();
        let exact = dedekind_sum(p, q).unwrap();
        let v = dedekind_cot(&c, p, q).unwrap();
        prop_assert!(approx_equal(&c, &v, &HighComplex::from_rational(c.work_bits(), &exact)));
        prop_assert_eq!(dedekind_sum(q - p, q).unwrap(), -exact);
    }

    #[test]
    fn s3_paths_agree(h in 1i64..50, k in 2i64..=50) {
        prop_assume!(h < k && coprime(h, k));
        let c = ctx();
        let exact = s3(h, k).unwrap();
        let v = s3_cot(&c, h, k).unwrap();
        prop_assert!(approx_equal(&c, &v, &HighComplex::from_rational(c.work_bits(), &exact)));
    }

    #[test]
    fn s3_matches_trig_closed_forms(j in 1i64..=50) {
        let k = 2 * j + 1;
        let one = trig_sum_closed(&TrigFamily::stated(TrigFamilyId::S3_COT2_CSC2, k).unwrap()).unwrap();
        let two = trig_sum_closed(&TrigFamily::stated(TrigFamilyId::S3_COT_COT2_CSC2, k).unwrap()).unwrap();
        prop_assert_eq!(s3(1, k).unwrap(), one.value);
        prop_assert_eq!(s3(2, k).unwrap(), two.value);
    }

    #[test]
    fn reciprocity_laws_hold(which in 0usize..7, p in 2i64..=31, q in 2i64..=31) {
        // CSC6_LAW is excluded: its published right side is checked separately.
        let law = ReciprocityLaw::ALL[which];
        prop_assume!(coprime(p, q));
        let c = ctx();
        match reciprocity_check(&c, p, q, law) {
            Ok(r) => prop_assert!(r.pass, "{:?} {} {}", law, p, q),
            Err(e) => prop_assert!(e.is_hypothesis()),
        }
    }

    #[test]
    fn gauss_sums_are_periodic(pi in 0usize..10, re in -3.0f64..3.0, im in -0.5f64..0.5) {
        let k = [3i64, 4, 5, 7, 8, 9, 11, 12, 13, 15][pi];
        let c = ctx();
        let bits = c.work_bits();
        let z = HighComplex::new(Float::with_val(bits, re), Float::with_val(bits, im));
        let zk = &z + &HighComplex::from_int(bits, k);
        for chi in characters_mod(k, CharFilter::ALL).unwrap() {
            prop_assert!(approx_equal(&c, &gauss_sum(&c, &chi, &zk), &gauss_sum(&c, &chi, &z)));
        }
    }
}

#[test]
fn gauss_sum_modulus_is_sqrt_k() {
    let c = ctx();
    for p in [3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let root = Float::with_val(c.work_bits(), p).sqrt();
        for chi in characters_mod(p, CharFilter::NONPRINCIPAL).unwrap() {
            assert!(chi.is_primitive());
            let g = gauss_sum_one(&c, &chi).abs();
            let d = Float::with_val(c.work_bits(), &g - &root).abs();
            assert!(c.accepts(&d, &root), "p={p} {chi}");
        }
    }
}

#[test]
fn multi_sin_with_one_factor_is_sin_ratio() {
    let c = ctx();
    for p in [5, 13, 17] {
        let chi = legendre_character(p).unwrap();
        for a in (3..2 * p + 3).step_by(2) {
            let single = CharSumSpec::multi_sin(chi.clone(), vec![a]).unwrap();
            let plain = CharSumSpec::sin_ratio(chi.clone(), a).unwrap();
            let x = char_sum_closed(&c, &single).unwrap();
            let y = char_sum_closed(&c, &plain).unwrap();
            assert!(approx_equal(&c, &x, &y), "p={p} a={a}");
        }
    }
}

fn naive_constant_term(bits: u32, factors: &[LaurentPoly]) -> HighComplex {
    let mut acc: BTreeMap<i64, HighComplex> = BTreeMap::new();
    acc.insert(0, HighComplex::one(bits));
    for f in factors {
        let mut next: BTreeMap<i64, HighComplex> = BTreeMap::new();
        for (ea, ca) in &acc {
            for (eb, cb) in &f.terms {
                let v = ca * cb;
                next.entry(ea + eb).and_modify(|c| *c += &v).or_insert(v);
            }
        }
        acc = next;
    }
    acc.remove(&0).unwrap_or_else(|| HighComplex::zero(bits))
}

fn random_poly(bits: u32, terms: &[(i64, i64, i64)]) -> LaurentPoly {
    let mut p = LaurentPoly::new(None);
    for &(e, re, im) in terms {
        p.add_term(
            e,
            HighComplex::new(Float::with_val(bits, re), Float::with_val(bits, im)),
        );
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn series_engine_matches_naive_convolution(
        polys in prop::collection::vec(
            prop::collection::vec((-12i64..=12, -9i64..=9, -9i64..=9), 1..6), 1..5),
        series_step in 1i64..=4,
    ) {
        let bits = 96 + GUARD_BITS;
        let mut factors: Vec<LaurentPoly> = polys.iter().map(|t| random_poly(bits, t)).collect();
        let reach: i64 = factors.iter().filter_map(|f| f.max_exponent()).map(|m| m.max(0)).sum();
        factors.push(LaurentPoly::geometric(bits, -series_step, 0, -reach));
        let fast = series_product_constant_term(bits, &factors).unwrap();
        let slow = naive_constant_term(bits, &factors);
        let d = (&fast - &slow).abs();
        prop_assert!(d < 1e-20, "diff {}", d);
    }
}

#[test]
fn even_characters_enumerate_for_all_small_moduli() {
    for k in 1..=101 {
        let all = characters_mod(k, CharFilter::ALL).unwrap();
        let phi = (1..=k).filter(|&n| coprime(n, k)).count();
        assert_eq!(all.len(), phi, "k={k}");
        let mut labels: Vec<&str> = all.iter().map(|c| c.label()).collect();
        labels.dedup();
        assert_eq!(labels.len(), phi);
    }
}
