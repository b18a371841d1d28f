use exact_math::symbols::candidate_primes;
use exact_math::{
    factor_poly_q, hilbert_symbol, kronecker_symbol, smith_invariants, BigInt, IntPoly, Place, Rat,
};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn nonzero(max: i64) -> impl Strategy<Value = i64> {
    (1..=max).prop_flat_map(|x| prop_oneof![Just(x), Just(-x)])
}

fn rational() -> impl Strategy<Value = Rat> {
    (nonzero(1000), 1i64..=1000).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn hilbert_product_formula(a in rational(), b in rational()) {
        let mut prod = hilbert_symbol(&a, &b, &Place::Infinity).unwrap();
        for p in candidate_primes(&a, &b) {
            prod *= hilbert_symbol(&a, &b, &Place::Finite(p)).unwrap();
        }
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn hilbert_symmetric_and_bilinear(a in rational(), b in rational(), c in rational()) {
        for p in [2u64, 3, 5, 7, 11] {
            let v = Place::prime(p);
            let h = |x: &Rat, y: &Rat| hilbert_symbol(x, y, &v).unwrap();
            prop_assert_eq!(h(&a, &b), h(&b, &a));
            prop_assert_eq!(h(&a, &(&b * &c)), h(&a, &b) * h(&a, &c));
            prop_assert_eq!(h(&a, &-&a), 1);
        }
    }
}

#[test]
fn kronecker_agrees_with_residue_search() {
    let primes = (3u64..=97).filter(|&n| (2..n).all(|d| n % d != 0));
    for p in primes {
        let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
        for a in -50i64..=50 {
            let r = a.rem_euclid(p as i64) as u64;
            let want = if r == 0 {
                0
            } else if squares.contains(&r) {
                1
            } else {
                -1
            };
            assert_eq!(kronecker_symbol(&BigInt::from(a), &BigInt::from(p)), want, "({a}/{p})");
        }
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs().to_i64().unwrap();
    (1..=n).filter(|d| n % d == 0).map(BigInt::from).collect()
}

/// Kronecker-style certificate: no rational root and no quadratic factor.
fn has_factor_of_degree_le2(g: &IntPoly) -> bool {
    let a0 = g.coeff(0);
    let lc = g.lead();
    if a0.is_zero() {
        return true;
    }
    for u in divisors(&lc) {
        for w in divisors(&a0) {
            for w in [w.clone(), -w] {
                let lin = IntPoly::new(vec![w.clone(), u.clone()]);
                if g.div_exact(&lin).is_some() {
                    return true;
                }
            }
        }
    }
    if g.degree() < 4 {
        return false;
    }
    let g1 = g.eval(&BigInt::from(1));
    if g1.is_zero() {
        return true;
    }
    for u in divisors(&lc) {
        for w in divisors(&a0) {
            for w in [w.clone(), -w] {
                for d in divisors(&g1) {
                    for d in [d.clone(), -d] {
                        let v = &d - &u - &w;
                        let quad = IntPoly::new(vec![w.clone(), v, u.clone()]);
                        if g.div_exact(&quad).is_some() {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    (1..=max_deg)
        .prop_flat_map(|d| (proptest::collection::vec(-6i64..=6, d), 1i64..=3))
        .prop_map(|(mut c, lc)| {
            c.push(lc);
            IntPoly::from_i64(&c)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factorization_multiplies_back(a in small_poly(3), b in small_poly(3), c in small_poly(2)) {
        let f = a.mul(&b).mul(&c);
        let fz = factor_poly_q(&f).unwrap();
        prop_assert_eq!(fz.expand(), f);
        for (g, _) in &fz.factors {
            prop_assert_eq!(g.content(), BigInt::from(1));
            if g.degree() >= 2 && g.degree() <= 5 {
                prop_assert!(!has_factor_of_degree_le2(g), "reducible factor {}", g);
            }
        }
        prop_assert!(fz.degrees().len() >= 3 || [&a, &b, &c].iter().any(|p| p.degree() == 0));
    }
}

type Mat = Vec<Vec<BigInt>>;

fn apply_ops(m: &Mat, ops: &[(bool, usize, usize, i64, bool)]) -> Mat {
    let mut m = m.clone();
    let rows = m.len();
    let cols = m[0].len();
    for &(on_rows, i, j, k, swap) in ops {
        if on_rows {
            let (i, j) = (i % rows, j % rows);
            if swap {
                m.swap(i, j);
            } else if i != j {
                for c in 0..cols {
                    let t = &m[j][c] * k;
                    m[i][c] += t;
                }
            }
        } else {
            let (i, j) = (i % cols, j % cols);
            for row in m.iter_mut() {
                if swap {
                    row.swap(i, j);
                } else if i != j {
                    let t = &row[j] * k;
                    row[i] += t;
                }
            }
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_invariant_under_unimodular_ops(
        rows in 1usize..=5,
        cols in 1usize..=5,
        entries in proptest::collection::vec(-20i64..=20, 25),
        ops in proptest::collection::vec((any::<bool>(), 0usize..5, 0usize..5, -4i64..=4, any::<bool>()), 0..30),
    ) {
        let m: Mat = (0..rows)
            .map(|i| (0..cols).map(|j| BigInt::from(entries[i * 5 + j])).collect())
            .collect();
        let before = smith_invariants(&m);
        let after = smith_invariants(&apply_ops(&m, &ops));
        prop_assert_eq!(&before, &after);
        for w in before.divisors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
    }
}
