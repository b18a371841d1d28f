use exact_math::{BigInt, Rat};
use proptest::prelude::*;
use quaternion_orders::{QuatAlgebra, QuatOrder};

fn maximal(a: i64, b: i64) -> QuatOrder {
    QuatOrder::standard(&QuatAlgebra::from_ints(a, b)).unwrap().saturate_to_maximal()
}

#[test]
fn maximal_orders_have_algebra_discriminant() {
    for a in [-7i64, -5, -3, -2, -1, 2, 3, 5] {
        for b in [2i64, 3, 5, 6, 7, 10, 11, 13] {
            let alg = QuatAlgebra::from_ints(a, b);
            let o = QuatOrder::standard(&alg).unwrap().saturate_to_maximal();
            assert_eq!(o.reduced_discriminant(), alg.discriminant(), "({a},{b})");
            let g = o.gram();
            assert!((0..4).all(|i| (0..4).all(|j| g[i][j] == g[j][i])));
            let (_, inf) = alg.ramified_places();
            assert!(!inf, "b > 0 makes ({a},{b}) indefinite");
            let (fin, _) = alg.ramified_places();
            assert_eq!(fin.len() % 2, 0);
        }
    }
}

fn coords() -> impl Strategy<Value = [i64; 4]> {
    proptest::array::uniform4(-4i64..=4).prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalizer_matches_norm_criterion_disc6(c in coords()) {
        let o = maximal(-1, 6);
        let x = o.elt(c);
        prop_assert_eq!(o.is_in_normalizer(&x).unwrap(), o.norm_criterion(&x).unwrap());
    }

    #[test]
    fn normalizer_matches_norm_criterion_disc10(c in coords()) {
        let o = maximal(-2, 5);
        assert_eq!(o.algebra().discriminant(), BigInt::from(10));
        let x = o.elt(c);
        prop_assert_eq!(o.is_in_normalizer(&x).unwrap(), o.norm_criterion(&x).unwrap());
    }

    #[test]
    fn nrd_is_multiplicative(x in proptest::array::uniform4(-20i64..=20), y in proptest::array::uniform4(-20i64..=20),
                             a in -9i64..=9, b in -9i64..=9) {
        prop_assume!(a != 0 && b != 0);
        let alg = QuatAlgebra::from_ints(a, b);
        let half = Rat::new(1.into(), 2.into());
        let x = alg.elt(x).scale(&half);
        let y = alg.elt(y);
        prop_assert_eq!(x.mul(&y).nrd(), x.nrd() * y.nrd());
        prop_assert_eq!(x.add(&x.conj()).as_scalar(), Some(x.trd()));
        prop_assert_eq!(x.mul(&x.conj()).as_scalar(), Some(x.nrd()));
    }
}

#[test]
fn normalizer_candidates_include_atkin_lehner_elements() {
    // Sanity for the property tests above: the random samples must hit both answers.
    let o = maximal(-1, 6);
    let mut yes = 0;
    let mut no = 0;
    for c0 in -2..=2 {
        for c1 in -2..=2 {
            for c2 in -2..=2 {
                for c3 in -2..=2 {
                    if [c0, c1, c2, c3] == [0, 0, 0, 0] {
                        continue;
                    }
                    if o.is_in_normalizer(&o.elt([c0, c1, c2, c3])).unwrap() {
                        yes += 1;
                    } else {
                        no += 1;
                    }
                }
            }
        }
    }
    assert!(yes > 20 && no > 20, "yes={yes} no={no}");
}

#[test]
fn multiplication_tables_are_integral() {
    for (a, b) in [(-1, 6), (-3, 6), (-2, 5), (-1, 22), (-3, 2)] {
        let o = maximal(a, b);
        let e = o.basis_elts();
        for x in &e {
            for y in &e {
                assert!(x.mul(y).trd().is_integer());
            }
        }
    }
}
