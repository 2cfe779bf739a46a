use proptest::prelude::*;

use qlogconvex::exact::{int, rat, Int};
use qlogconvex::io::{parse_triangle_json, triangle_to_json, AnyTriangle};
use qlogconvex::transform::{apply_transform, check_log_convex_seq, NumSeq};
use qlogconvex::verify::{
    check_ck_dk_sweep, check_decomposition_identity, check_derivative_identity, check_dominance,
    check_q_log_convex, check_row_log_concave, check_strong_q_log_convex, check_wronskian,
};
use qlogconvex::{generate, Family, RecurrenceSpec};

/// Coefficient tuples meeting the sign conditions with `a2, b2 >= 0`.
fn nonneg_slope_spec() -> impl Strategy<Value = RecurrenceSpec> {
    (0i64..4, 0i64..4, -2i64..4, 0i64..4, 0i64..4, -2i64..4, 1i64..4)
        .prop_map(|(a1, a2, a3, b1, b2, b3, seed)| {
            RecurrenceSpec::integral([a1, a2, a3], [b1, b2, b3]).with_seed(Int::from(seed)).unwrap()
        })
        .prop_filter("sign conditions", |s| s.sign_conditions().all())
}

fn any_spec() -> impl Strategy<Value = RecurrenceSpec> {
    prop::array::uniform6(-3i64..4).prop_map(|c| RecurrenceSpec::integral([c[0], c[1], c[2]], [c[3], c[4], c[5]]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nonneg_slopes_give_strong_convexity(spec in nonneg_slope_spec()) {
        // entries may still go negative despite the sign conditions
        if let Ok(t) = generate(&spec, 9) {
            let polys = t.polys();
            prop_assert!(check_wronskian(&polys, 9).unwrap().passed);
            prop_assert!(check_strong_q_log_convex(&polys, 8).unwrap().passed);
            prop_assert!(check_dominance(&t, 9).unwrap().passed);
            prop_assert!(check_ck_dk_sweep(&spec, 9).passed);
        }
    }

    #[test]
    fn identities_hold_for_any_spec(spec in any_spec()) {
        // identities are algebraic, so they hold even when entries are negative
        if let Ok(t) = generate(&spec, 8) {
            let polys = t.polys();
            prop_assert!(check_derivative_identity(&spec, &polys, 8).unwrap().passed);
            prop_assert!(check_decomposition_identity(&spec, &polys, 7).unwrap().passed);
        }
    }

    #[test]
    fn strong_implies_plain(spec in any_spec()) {
        if let Ok(t) = generate(&spec, 8) {
            let polys = t.polys();
            if check_strong_q_log_convex(&polys, 7).unwrap().passed {
                prop_assert!(check_q_log_convex(&polys, 7).unwrap().passed);
            }
        }
    }

    #[test]
    fn generation_is_prefix_stable(spec in nonneg_slope_spec(), d in 0usize..10) {
        if let Ok(long) = generate(&spec, 12) {
            prop_assert_eq!(generate(&spec, d).unwrap(), long.truncate(d));
        }
    }

    #[test]
    fn json_round_trip(spec in nonneg_slope_spec()) {
        if let Ok(t) = generate(&spec, 8) {
            let back = parse_triangle_json(&triangle_to_json(&t).to_string()).unwrap();
            prop_assert_eq!(back, AnyTriangle::Int(t));
        }
    }

    #[test]
    fn ones_give_row_sums(spec in nonneg_slope_spec()) {
        if let Ok(t) = generate(&spec, 8) {
            let w = apply_transform(&t, &NumSeq::builtin("ones", 9).unwrap(), 8).unwrap();
            for (n, row) in t.rows().iter().enumerate() {
                let sum: Int = row.iter().sum();
                prop_assert_eq!(w.values[n].clone(), sum.into());
            }
        }
    }

    #[test]
    fn bessel_preserves_geometric_log_convexity(r in 1i64..6, c in 1i64..6) {
        // z_k = c r^k is log-convex with equality
        let z = NumSeq::new((0..16).map(|k| (Int::from(c) * Int::from(r).pow(k)).into()).collect());
        let t = generate(&Family::Bessel.spec(), 15).unwrap();
        let w = apply_transform(&t, &z, 15).unwrap();
        prop_assert!(check_log_convex_seq(&w, 15).unwrap().passed);
    }
}

#[test]
fn sign_conditions_alone_do_not_force_row_log_concavity() {
    // T(6,.) = 1, 12, 150, ...: 12^2 < 1 * 150
    let spec = RecurrenceSpec::integral([0, 0, 1], [0, 3, -1]);
    assert!(spec.sign_conditions().all());
    let t = generate(&spec, 12).unwrap();
    let v = check_row_log_concave(&t, 12).unwrap();
    let w = v.witness.unwrap();
    assert_eq!((w.index("n"), w.index("k")), (Some(6), Some(1)));
    assert_eq!(w.value, rat(-6, 1));
    assert!(check_strong_q_log_convex(&t.polys(), 11).unwrap().passed);
}

#[test]
fn seed_scales_every_entry() {
    let spec = Family::Bell.spec();
    let t1 = generate(&spec, 10).unwrap();
    let t5 = generate(&spec.clone().with_seed(int(5)).unwrap(), 10).unwrap();
    for (r1, r5) in t1.rows().iter().zip(t5.rows()) {
        for (a, b) in r1.iter().zip(r5) {
            assert_eq!(a * 5, *b);
        }
    }
}
