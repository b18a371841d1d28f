use std::sync::OnceLock;

use exact_math::{factor_integer, BigInt};
use newform_check::*;
use proptest::prelude::*;

fn records() -> &'static [NewformRecord] {
    static RECORDS: OnceLock<Vec<NewformRecord>> = OnceLock::new();
    RECORDS.get_or_init(builtin_records)
}

fn record(label: &str) -> NewformRecord {
    records().iter().find(|r| r.label == label).cloned().unwrap_or_else(|| panic!("{label} missing"))
}

fn good_primes(r: &NewformRecord, pmax: u64) -> Vec<u64> {
    r.ap.keys().copied().filter(|&p| p <= pmax && r.level % p != 0).collect()
}

#[test]
fn screen_243_2_a_d() {
    let r = record("243.2.a.d");
    assert_eq!(lp_at_one(&r, 2).unwrap(), BigInt::from(3));
    assert_eq!(lp_at_one(&r, 13).unwrap(), BigInt::from(225));
    assert_eq!(torsion_divisor_bound(&r, &[2, 13]).unwrap(), BigInt::from(3));
    let v = pqm_criterion(&r).unwrap();
    assert!(v.is_pqm);
    assert_eq!(v.twist_disc, Some(-3));
    assert_eq!(v.quaternion_disc, BigInt::from(6));
    assert!(conductor_admissible(&BigInt::from(3u64.pow(10))).is_some());
}

#[test]
fn bad_prime_rejected() {
    let r = record("243.2.a.d");
    assert!(matches!(lp_at_one(&r, 3), Err(NewformError::Domain(_))));
    assert!(matches!(torsion_divisor_bound(&r, &[]), Err(NewformError::Domain(_))));
}

#[test]
fn torsion_bound_972() {
    let r = record("972.2.a.e");
    let b = torsion_divisor_bound(&r, &good_primes(&r, 50)).unwrap();
    let b200 = torsion_divisor_bound(&r, &good_primes(&r, 200)).unwrap();
    assert!(b > BigInt::from(0));
    assert_eq!(&b % &b200, BigInt::from(0));
}

#[test]
fn twist_by_minus_four_at_2592() {
    let v = pqm_criterion(&record("2592.2.a.l")).unwrap();
    assert!(v.is_pqm);
    assert_eq!(v.twist_disc, Some(-4));
    assert_eq!(v.quaternion_disc, BigInt::from(6));
}

#[test]
fn disc_22_at_20736() {
    let r = record("20736.2.a.q");
    assert_eq!(r.m, 22);
    let v = pqm_criterion(&r).unwrap();
    assert!(v.is_pqm);
    assert_eq!(v.twist_disc, Some(-4));
    assert_eq!(v.quaternion_disc, BigInt::from(22));
}

#[test]
fn cm_form_is_not_pqm() {
    let r = record("2592.2.a.i");
    let t = twist_checks(&r);
    assert!(t.self_twist);
    assert_eq!(t.self_twist_source, SelfTwistSource::Flag);
    assert!(!pqm_criterion(&r).unwrap().is_pqm);

    // Without the flag the vanishing pattern still flags it, as a heuristic.
    let mut unflagged = r.clone();
    unflagged.self_twist = None;
    let t = twist_checks(&unflagged);
    assert!(t.self_twist);
    assert_eq!(t.self_twist_source, SelfTwistSource::Heuristic);
    assert!(t.cm_disc.is_some());
    let v = pqm_criterion(&unflagged).unwrap();
    assert!(!v.is_pqm && v.cm_heuristic);
}

#[test]
fn split_algebra_is_not_pqm() {
    let v = pqm_criterion(&record("243.2.a.c")).unwrap();
    assert_eq!(v.twist_disc, Some(-3));
    assert_eq!(v.quaternion_disc, BigInt::from(1));
    assert!(!v.is_pqm);
}

#[test]
fn real_twist_with_split_algebra() {
    let v = pqm_criterion(&record("20736.2.a.r")).unwrap();
    assert_eq!(v.twist_disc, Some(24));
    assert_eq!(v.quaternion_disc, BigInt::from(1));
    assert!(!v.is_pqm);
}

#[test]
fn computed_twists_match_fixture_field() {
    for r in records() {
        let t = twist_checks(&r);
        assert_eq!(t.status, TwistStatus::Conclusive, "{}", r.label);
        assert_eq!(t.inner_twists, r.inner_twists, "{}", r.label);
    }
}

#[test]
fn pqm_records_land_in_table_rows() {
    for r in records() {
        let v = pqm_criterion(&r).unwrap();
        if !v.is_pqm {
            continue;
        }
        let psi = v.twist_disc.unwrap();
        let disc = u64::try_from(v.quaternion_disc.clone()).unwrap();
        let rows: Vec<_> =
            TABLE1.iter().filter(|row| row.level == r.level && row.psi == psi && row.disc_b == disc).collect();
        assert!(!rows.is_empty(), "{} ({psi}, {disc}) has no row", r.label);
        // The 3888 orbits are lettered differently in our data source.
        let lettered = rows.iter().any(|row| row.labels.is_empty() || row.labels.contains(&r.label.as_str()));
        assert!(lettered || r.level == 3888, "{} not among {:?}", r.label, rows);
    }
}

#[test]
fn truncated_record_is_inconclusive() {
    let mut r = record("243.2.a.d");
    r.ap.retain(|&p, _| p <= 97);
    assert_eq!(twist_checks(&r).status, TwistStatus::Inconclusive(97));
    assert!(matches!(pqm_criterion(&r), Err(NewformError::Inconclusive(_))));
}

#[test]
fn table_level_conductors() {
    for row in TABLE1.iter() {
        let cond = BigInt::from(row.level).pow(2);
        let s = conductor_admissible(&cond).unwrap_or_else(|| panic!("{} squared", row.level));
        assert_eq!(s.n, BigInt::from(1));
    }
    assert!(conductor_admissible(&BigInt::from(3u64.pow(11))).is_none());
    assert!(conductor_admissible(&BigInt::from(2u64.pow(22))).is_none());
    let s = conductor_admissible(&(BigInt::from(4) * BigInt::from(625))).unwrap();
    assert_eq!((s.i, s.j, s.n), (1, 0, BigInt::from(5)));
}

#[test]
fn json_round_trip_of_fixture() {
    for r in records() {
        assert_eq!(load_record(&r.to_json()).unwrap(), *r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn torsion_bound_monotone(
        label in prop::sample::select(vec!["243.2.a.d", "972.2.a.e", "2592.2.a.m", "20736.2.a.bm"]),
        mask in 1u64..(1 << 20),
        extra in 0usize..20,
    ) {
        let r = record(label);
        let ps = good_primes(&r, 200);
        let small: Vec<u64> = ps.iter().enumerate().filter(|(k, _)| *k < 20 && mask >> k & 1 == 1).map(|(_, &p)| p).collect();
        let mut big = small.clone();
        big.push(ps[20 + extra]);
        let (bs, bb) = (torsion_divisor_bound(&r, &small).unwrap(), torsion_divisor_bound(&r, &big).unwrap());
        prop_assert_eq!(&bs % &bb, BigInt::from(0));
    }

    #[test]
    fn lp_at_one_positive(k in 0usize..40) {
        for r in records() {
            let ps = good_primes(r, 200);
            let p = ps[k % ps.len()];
            prop_assert!(lp_at_one(r, p).unwrap() > BigInt::from(0));
        }
    }

    #[test]
    fn quaternion_disc_has_even_prime_count(k in 0usize..18) {
        let r = &records()[k % records().len()];
        let v = pqm_criterion(r).unwrap();
        // m > 0, so the algebra is indefinite and ramifies at an even number of primes.
        prop_assert_eq!(factor_integer(&v.quaternion_disc).len() % 2, 0);
    }
}
