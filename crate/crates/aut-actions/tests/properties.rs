use aut_actions::fixed::{fixed_subgroup_enum, fixed_subgroup_smith};
use aut_actions::residue::{all_residues, identity, Vec4};
use aut_actions::*;
use exact_math::AbelianInvariants;
use proptest::prelude::*;
use quaternion_orders::QuatOrder;

fn inv(ds: &[u64]) -> AbelianInvariants {
    AbelianInvariants::from_divisors(ds)
}

fn all_actions() -> Vec<DihedralAction> {
    let mut acts = disc6_actions();
    for m in [2, 6, 5] {
        let o = maximal_order(-3, m).unwrap();
        for k in [DihedralKind::D3, DihedralKind::D6] {
            acts.push(search_action(&o, k, 30).unwrap());
        }
    }
    acts
}

#[test]
fn fixed_points_within_option_sets() {
    for a in all_actions() {
        for n in [2, 3, 5, 7, 11] {
            let f = residue_fixed_subgroup(&a, n).unwrap();
            let opts = theorem_option_set(a.kind(), n as u64).unwrap();
            assert!(opts.contains(&f), "{} mod {n}: {f} not in {opts:?}", a.kind());
        }
    }
}

#[test]
fn smith_route_matches_enumeration() {
    for a in all_actions() {
        let mats = a.matrices();
        for n in [2, 3, 4] {
            assert_eq!(fixed_subgroup_smith(&mats, n), fixed_subgroup_enum(&mats, n), "{} mod {n}", a.kind());
        }
    }
}

#[test]
fn presentations_and_relations() {
    let acts = disc6_actions();
    assert_eq!(acts[2].kind(), DihedralKind::D4);
    assert_eq!(residue_fixed_subgroup(&acts[2], 2).unwrap(), inv(&[2, 2]));
    assert_eq!(acts[1].m() * acts[1].n().unwrap(), -3);
    let o = disc6_order();
    let alg = o.algebra().clone();
    // i and 1 + i do not anticommute.
    let err = build_dihedral_action(&o, DihedralKind::D2, &[alg.i(), alg.one().add(&alg.i())]).unwrap_err();
    assert!(matches!(err, ActionError::Relation(_)), "{err}");
    let err = build_dihedral_action(&o, DihedralKind::D1, &[alg.one()]).unwrap_err();
    assert!(matches!(err, ActionError::Relation(_)));
    // 3 does not divide disc 10, so 1 - omega cannot normalize a maximal order of (-3, 10).
    let o10 = maximal_order(-3, 10).unwrap();
    let d3 = search_action(&o10, DihedralKind::D3, 30).unwrap();
    let err = build_dihedral_action(&o10, DihedralKind::D6, d3.elements()).unwrap_err();
    assert!(matches!(err, ActionError::Relation(_)));
    for a in all_actions() {
        assert_eq!(a.group_matrices().len(), a.kind().group_order());
    }
}

#[test]
fn json_round_trip() {
    for a in all_actions() {
        let s = a.to_json();
        assert!(s.contains(&format!("\"{}\"", a.kind())));
        assert_eq!(DihedralAction::from_json(&s).unwrap(), a);
    }
}

#[test]
fn involution_criterion_matches_predicate() {
    for o in [disc6_order(), maximal_order(-2, 5).unwrap(), maximal_order(-3, 5).unwrap(), maximal_order(-1, 3).unwrap()] {
        let found = involutions_in_box(&o, 4).unwrap();
        assert!(!found.is_empty());
        for (b, r) in &found {
            assert_eq!(r.criterion, r.predicted, "b = {b}, m = {}", r.m);
            if r.criterion {
                assert_eq!(search_mod4_anticommutator(&o, b).unwrap(), None);
            } else {
                assert!(search_mod4_anticommutator(&o, b).is_err());
            }
        }
    }
}

#[test]
fn disc10_odd_m_one_mod_four() {
    let o = maximal_order(-2, 5).unwrap();
    assert_eq!(o.algebra().discriminant(), 10.into());
    let b = &quaternion_orders::find_trace_zero(&o, 5, 10)[0];
    let r = classify_involution_mod2(&o, b).unwrap();
    assert_eq!(r.m, 5);
    assert!(!r.criterion);
}

#[test]
fn sanity_mode_finds_witnesses() {
    let o = disc6_order();
    let i = o.algebra().i();
    assert!(mod4_anticommutator_witnesses(&o, &i, true).unwrap().is_empty());
    let w = mod4_anticommutator_witnesses(&o, &i, false).unwrap();
    assert!(!w.is_empty());
}

#[test]
fn c2c2_classification() {
    let acts = disc6_actions();
    let r = classify_c2c2_mod2(&acts[1]).unwrap();
    assert_eq!((r.m, r.n), (-1, 3));
    assert_eq!(r.fixed, inv(&[2, 2, 2]));
    assert!(r.criterion && r.predicted);
    let (pol, even) = c2c2_polarization_check(&acts[1]).unwrap().unwrap();
    assert!(even, "degree class {}", pol.degree_class);

    let o = disc6_order();
    let alg = o.algebra().clone();
    let two = quaternion_orders::find_trace_zero(&o, 2, 10);
    let mut checked = false;
    'outer: for i in &two {
        for n in [-1, 3, -3, 6, -6, -2, 2] {
            for j in quaternion_orders::find_trace_zero(&o, n, 6) {
                if let Ok(a) = build_dihedral_action(&o, DihedralKind::D2, &[i.clone(), j]) {
                    let r = classify_c2c2_mod2(&a).unwrap();
                    assert!(!r.criterion && !r.predicted);
                    checked = true;
                    break 'outer;
                }
            }
        }
    }
    assert!(checked, "no D2 with i^2 = 2 in {alg:?}");

    let o15 = maximal_order(-3, 5).unwrap();
    assert_eq!(o15.algebra().discriminant(), 15.into());
    let a = search_action(&o15, DihedralKind::D2, 30).unwrap();
    let r = classify_c2c2_mod2(&a).unwrap();
    assert!(!r.criterion && !r.predicted);
    assert!(c2c2_polarization_check(&a).unwrap().is_none());
}

#[test]
fn distinguished_rings() {
    for a in all_actions() {
        let s = distinguished_subring(&a).unwrap();
        match a.kind() {
            DihedralKind::D4 => assert_eq!(s.d, -1),
            DihedralKind::D3 | DihedralKind::D6 => assert!(s.eisenstein && s.ring_disc == -3),
            _ => {}
        }
    }
}

#[test]
fn submodule_counts() {
    for o in [disc6_order(), maximal_order(-2, 5).unwrap()] {
        for ell in [2, 3, 5, 7] {
            let lat = submodule_lattice_mod_ell(&o, ell).unwrap();
            assert_eq!(lat.len(), aut_actions::submodule::expected_submodule_count(&o, ell), "ell = {ell}");
            let orders: Vec<u64> = lat.iter().map(|s| s.order()).collect();
            let l = ell as u64;
            assert!(orders.iter().all(|&k| k == 1 || k == l * l || k == l.pow(4)));
        }
    }
}

fn order_for(idx: usize) -> QuatOrder {
    match idx {
        0 => disc6_order(),
        _ => maximal_order(-2, 5).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn generated_orders_are_even_powers(idx in 0usize..2, ell in prop::sample::select(vec![2i64, 3, 5, 7]), x in prop::array::uniform4(0i64..7)) {
        let o = order_for(idx);
        let s = generated_by(&o, ell, &x).unwrap();
        prop_assert!(s.dim() % 2 == 0);
        prop_assert!(s.contains(&x.map(|c| c % ell)));
    }

    #[test]
    fn three_dim_subspaces_have_generators(idx in 0usize..2, ell in prop::sample::select(vec![2i64, 3, 5]), seed in prop::array::uniform3(prop::array::uniform4(0i64..5))) {
        let o = order_for(idx);
        let v = seed.map(|r| r.map(|c| c % ell));
        let rank = aut_actions::residue::echelon_mod(&v, ell).len();
        prop_assume!(rank == 3);
        let g = three_dim_generator_check(&o, ell, &v).unwrap();
        prop_assert_eq!(generated_by(&o, ell, &g).unwrap().dim(), 4);
    }
}

fn units_mod4(r: &ResidueRing) -> Vec<Vec4> {
    all_residues(4).filter(|x| r.is_unit(x)).collect()
}

#[test]
fn enhanced_group_axioms() {
    let o = disc6_order();
    let r = ResidueRing::new(&o, 4).unwrap();
    let d4 = &disc6_actions()[2];
    let gammas: Vec<_> = d4.group_matrices();
    let units = units_mod4(&r);
    let mut rng = 0x2545f491u64;
    let mut next = |k: usize| {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        (rng % k as u64) as usize
    };
    let pick = |next: &mut dyn FnMut(usize) -> usize| {
        r.element(&gammas[next(gammas.len())], &units[next(units.len())]).unwrap()
    };
    for _ in 0..500 {
        let (a, b, c) = (pick(&mut next), pick(&mut next), pick(&mut next));
        let left = r.enhanced_mul(&r.enhanced_mul(&a, &b).unwrap(), &c).unwrap();
        let right = r.enhanced_mul(&a, &r.enhanced_mul(&b, &c).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(r.enhanced_mul(&a, &r.identity()).unwrap(), a);
        assert_eq!(r.enhanced_mul(&r.identity(), &a).unwrap(), a);
        let ai = r.enhanced_inverse(&a).unwrap();
        let e = r.enhanced_mul(&a, &ai).unwrap();
        assert_eq!((e.gamma, e.x), (identity(), r.one()));
    }
}

#[test]
fn x_projection_is_a_homomorphism_only_on_trivial_gamma() {
    let o = disc6_order();
    let r = ResidueRing::new(&o, 4).unwrap();
    let units = units_mod4(&r);
    let id = identity();
    for x in &units {
        for y in units.iter().step_by(7) {
            let p = r.enhanced_mul(&r.element(&id, x).unwrap(), &r.element(&id, y).unwrap()).unwrap();
            assert_eq!(p.x, r.mul(x, y));
        }
    }
    let g = disc6_actions()[0].matrices()[0];
    let broken = units.iter().any(|x| {
        let p = r.enhanced_mul(&r.element(&id, x).unwrap(), &r.element(&g, &r.one()).unwrap()).unwrap();
        p.x != r.mul(x, &r.one())
    });
    assert!(broken);
}
