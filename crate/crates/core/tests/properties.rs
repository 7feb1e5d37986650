use num_traits::Zero;
use proptest::prelude::*;

use orbvir::exactmath::{format_rational, parse_rational, rat, shifted_factorial, Rational};
use orbvir::geometry::{Case, MonodromyProfile};
use orbvir::invariants::{
    admissible_profiles, invariant_form, recursion_queries, recursion_residual_form, recursion_residual_form_direct,
    CoefficientVector,
};

fn profile() -> impl Strategy<Value = MonodromyProfile> {
    (2u32..=7)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(0u32..=4, (n - 1) as usize)))
        .prop_filter_map("admissible with at least three points", |(n, counts)| {
            let p = MonodromyProfile::new(n, counts).ok()?;
            (p.is_admissible() && p.total() >= 3).then_some(p)
        })
}

fn case() -> impl Strategy<Value = Case> {
    prop_oneof![Just(Case::Curve), Just(Case::Surface)]
}

proptest! {
    #[test]
    fn rationals_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn profile_literal_round_trips(p in profile()) {
        let back: MonodromyProfile = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn ranks_sum_to_genus_and_satisfy_the_end_identity(p in profile()) {
        let r = p.eigenbundle_ranks().unwrap();
        let g = p.cover_genus().unwrap() as i64;
        prop_assert_eq!(r.iter().sum::<i64>(), g);
        prop_assert_eq!(r[0] + r[r.len() - 1] - 1, p.total() as i64 - 3);
        // a disconnected cover gives -1 on characters trivial on the monodromy
        prop_assert!(r.iter().all(|&x| x >= -1));
    }

    #[test]
    fn shifted_factorial_steps(k in 0i64..12, n in -50i64..50, d in 1i64..12) {
        let x = rat(n, d);
        let next = shifted_factorial(k + 1, &x);
        prop_assert_eq!(next, shifted_factorial(k, &x) * (Rational::from_integer((k + 1).into()) + &x));
    }

    #[test]
    fn invariant_forms_are_linear(p in profile(), case in case(), a in -9i64..9, b in 1i64..9) {
        let s = p.total();
        let queries = recursion_queries(&p, case, 0, 1);
        if let Some(q) = queries.first() {
            let form = invariant_form(q).unwrap();
            let ones = CoefficientVector(vec![Rational::from_integer(1.into()); s]);
            let scaled = CoefficientVector(vec![rat(a, b); s]);
            prop_assert_eq!(form.evaluate(&scaled).unwrap(), form.evaluate(&ones).unwrap() * rat(a, b));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn recursion_residual_vanishes(
        n in 2u32..=5,
        case in case(),
        pick in any::<prop::sample::Index>(),
        plain in 0usize..=2,
        k in 1u32..=3,
    ) {
        let profiles = admissible_profiles(n, 6);
        let p = &profiles[pick.index(profiles.len())];
        for q in recursion_queries(p, case, plain, k).iter().take(6) {
            let fast = recursion_residual_form(q, k);
            let direct = recursion_residual_form_direct(q, k);
            match (fast, direct) {
                (Ok(f), Ok(d)) => {
                    prop_assert!(f.is_zero(), "{:?} k={}", q, k);
                    prop_assert!(d.is_zero(), "{:?} k={}", q, k);
                }
                (Err(_), Err(_)) => {}
                (f, d) => prop_assert!(false, "paths disagree on {:?}: {:?} / {:?}", q, f.is_ok(), d.is_ok()),
            }
        }
    }
}

#[test]
fn zero_is_formatted_plainly() {
    assert_eq!(format_rational(&Rational::zero()), "0");
}
