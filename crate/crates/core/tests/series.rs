mod common;

use common::*;
use proptest::prelude::*;

use wkb_core::json::{parse_series, series_from_json, series_to_json};
use wkb_core::{ex, GaussRat, WkbError};

fn rational() -> impl Strategy<Value = GaussRat> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| g(n, d))
}

fn poly(len: usize) -> impl Strategy<Value = S> {
    prop::collection::vec(rational(), 1..=len).prop_map(|c| S::taylor(c, None))
}

/// Truncated series with a nonzero constant term.
fn unit(len: usize) -> impl Strategy<Value = S> {
    (1i64..=5, prop::collection::vec(rational(), 0..len)).prop_map(|(c0, rest)| {
        let mut c = vec![g(c0, 1)];
        c.extend(rest);
        S::taylor(c, Some(8))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative_and_commutative(a in poly(5), b in poly(5), c in poly(5)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn distributes(a in poly(5), b in poly(5), c in poly(5)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn inverse_is_inverse(u in unit(5)) {
        let prod = &u * &u.inv().unwrap();
        prop_assert_eq!(prod, S::one().truncate(ex(8, 1)));
    }

    #[test]
    fn antiderivative_then_derivative(a in poly(6)) {
        prop_assert_eq!(a.antiderive().unwrap().derive(), a);
    }

    #[test]
    fn square_root_squares_back(u in unit(5)) {
        let r = &u * &u;
        let root = r.pow_rational(ex(1, 2)).unwrap();
        prop_assert_eq!(&root * &root, r);
    }

    #[test]
    fn compositional_inverse(tail in poly(4), lead in 1i64..=4) {
        let f = &S::monomial(g(lead, 1), ex(1, 1)) + &tail.shift(ex(2, 1));
        let inv = f.compose_invert(7).unwrap();
        let id = f.truncate(ex(7, 1)).compose(&inv).unwrap().truncate(ex(7, 1));
        prop_assert_eq!(id, S::z().truncate(ex(7, 1)));
    }

    #[test]
    fn json_round_trip(a in poly(6), shift in -3i64..3) {
        let s = a.shift(ex(shift, 2)).truncate(ex(6, 1));
        let back: S = series_from_json(&series_to_json(&s)).unwrap();
        prop_assert_eq!(back, s);
    }
}

#[test]
fn exact_series_refuse_infinite_operations() {
    let p = S::poly_i64(&[1, 1]);
    assert!(matches!(p.inv(), Err(WkbError::NeedsTruncation(_))));
    assert!(matches!(p.pow_rational(ex(1, 2)), Err(WkbError::NeedsTruncation(_))));
    assert!(matches!(S::monomial(g(1, 1), ex(-1, 1)).antiderive(), Err(WkbError::LogObstruction { .. })));
}

#[test]
fn malformed_json_is_rejected() {
    assert!(parse_series::<GaussRat>("{not json").is_err());
    assert!(parse_series::<GaussRat>("[[\"x\", [1, 0]]]").is_err());
}
