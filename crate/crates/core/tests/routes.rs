use proptest::prelude::*;

use rmoments::exact::{gamma_ratio, rat, HalfInteger, Rational};
use rmoments::hydrogen::{expval, kramers_pasternack_range, HydrogenState, NegativeMode};
use rmoments::oracle::{ho_expval_oracle, hydrogen_expval_oracle};
use rmoments::oscillator::{
    energy, expval_closed, expval_dual_hahn, expval_recurrence_range, inversion_partner, OscillatorState,
    RecurrenceMode,
};
use rmoments::ExactValue;

fn oscillator() -> impl Strategy<Value = OscillatorState> {
    (1u32..=8, 0u32..=14, 0u32..=14).prop_filter_map("valid state", |(n, big_n, big_k)| {
        OscillatorState::new(n, big_n, big_k).ok()
    })
}

fn hydrogen() -> impl Strategy<Value = HydrogenState> {
    (1u32..=7, 0u32..7, 1i64..=4, 1i64..=3, 1i64..=3).prop_filter_map("valid state", |(n, l, zn, zd, a0)| {
        HydrogenState::new(n, l, rat(zn, zd), rat(a0, 1)).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oscillator_routes_match_the_oracle(state in oscillator(), p in -12i64..=12) {
        prop_assume!(state.converges(p));
        let oracle = ho_expval_oracle(&state, p).unwrap();
        prop_assert_eq!(&expval_closed(&state, p).unwrap(), &oracle);
        prop_assert_eq!(&expval_dual_hahn(&state, p).unwrap(), &oracle);
        prop_assert!(oracle.is_positive());
    }

    #[test]
    fn recurrence_range_matches_closed_form(state in oscillator(), lo in -12i64..=0, width in 0i64..=12) {
        let lo = lo.max(1 - i64::from(state.dim()) - 2 * i64::from(state.angular()));
        let records = expval_recurrence_range(&state, lo, lo + width, RecurrenceMode::Derived).unwrap();
        for record in records {
            let rmoments::Power::Int(p) = record.p else { unreachable!() };
            prop_assert_eq!(record.exact.unwrap(), expval_closed(&state, p).unwrap());
        }
    }

    #[test]
    fn inversion_reflects_powers(state in oscillator(), p in -12i64..=12) {
        prop_assume!(state.converges(p) && state.converges(-p - 2));
        let base = state.laguerre_alpha() + HalfInteger::from_int(1);
        let ratio = gamma_ratio(base - HalfInteger::from_twice(p) - HalfInteger::from_int(1), base + HalfInteger::from_twice(p)).unwrap();
        let expected = &ratio * &expval_closed(&state, p).unwrap();
        prop_assert_eq!(&inversion_partner(&state, p).unwrap(), &expected);
        prop_assert_eq!(&expval_closed(&state, -p - 2).unwrap(), &expected);
    }

    #[test]
    fn virial_and_normalization(state in oscillator()) {
        prop_assert_eq!(expval_closed(&state, 0).unwrap(), ExactValue::one());
        prop_assert_eq!(expval_closed(&state, 2).unwrap(), ExactValue::rational(energy(&state)));
    }

    #[test]
    fn hydrogen_routes_match_the_oracle(state in hydrogen(), q in -16i64..=9) {
        prop_assume!(state.converges(q));
        let oracle: Rational = hydrogen_expval_oracle(&state, q).unwrap();
        prop_assert_eq!(expval(&state, q, NegativeMode::Consistent).unwrap(), oracle);
    }

    #[test]
    fn kramers_pasternack_matches_the_oracle(state in hydrogen()) {
        for (k, value) in kramers_pasternack_range(&state, 6).unwrap() {
            prop_assert_eq!(value, hydrogen_expval_oracle(&state, k as i64).unwrap());
        }
    }
}

#[test]
fn printed_forms_disagree_only_where_documented() {
    let state = OscillatorState::new(3, 2, 0).unwrap();
    let printed = expval_recurrence_range(&state, 0, 4, RecurrenceMode::Printed).unwrap();
    assert_eq!(printed[4].exact, Some(ExactValue::rational(rat(73, 4))));
    assert_eq!(expval_closed(&state, 4).unwrap(), ExactValue::rational(rat(75, 4)));

    let atom = HydrogenState::atomic(2, 1).unwrap();
    assert_eq!(expval(&atom, -2, NegativeMode::Printed).unwrap(), rat(1, 4));
    assert_eq!(hydrogen_expval_oracle(&atom, -2).unwrap(), rat(1, 12));

    // l = 0, k = 0: (2l+k+1)!/(2l-k)! = 1 and the readings coincide
    let s_state = HydrogenState::atomic(3, 0).unwrap();
    assert_eq!(
        expval(&s_state, -2, NegativeMode::Printed).unwrap(),
        expval(&s_state, -2, NegativeMode::Consistent).unwrap()
    );
}
