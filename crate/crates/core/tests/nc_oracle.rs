use qseed_core::nc::minors::{quantum_minor_xi, quantum_minor_xi_by_columns};
use qseed_core::nc::*;
use qseed_core::seeds::build_lambda;
use qseed_core::{FamilyKind, FamilySpec};

fn small_specs() -> Vec<FamilySpec> {
    let mut v = Vec::new();
    for kind in [FamilyKind::Frt, FamilyKind::DipperDonkin] {
        for (n, r) in [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)] {
            v.push(FamilySpec::named(kind, n, r));
        }
    }
    v
}

#[test]
fn symbolic_lambda_matches_both_oracles() {
    for spec in small_specs() {
        let want = build_lambda(&spec).unwrap();
        assert_eq!(lambda_via_diagonals(&spec).unwrap(), want, "{spec} diagonals");
        assert_eq!(lambda_symbolic(&spec, DEFAULT_SYMBOLIC_CAP).unwrap(), want, "{spec} symbolic");
    }
}

#[test]
fn diagonal_sums_scale() {
    for kind in [FamilyKind::Frt, FamilyKind::DipperDonkin, FamilyKind::CombinedI, FamilyKind::CombinedII] {
        for (n, r) in [(4, 4), (5, 3), (3, 6), (1, 4)] {
            let spec = FamilySpec::named(kind, n, r);
            assert_eq!(lambda_via_diagonals(&spec).unwrap(), build_lambda(&spec).unwrap(), "{spec}");
        }
    }
}

#[test]
fn minus_family_q_commutes() {
    for spec in [FamilySpec::frt(2, 3), FamilySpec::dd(3, 2)] {
        let l = lambda::lambda_symbolic_family(&spec, 3, Family::Minus).unwrap();
        assert!(l.is_skew(), "{spec}");
    }
}

#[test]
fn expansions_agree() {
    let alg = PqAlgebra::new(3, 3);
    for rows in [vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 2, 3]] {
        for cols in [vec![1, 2], vec![2, 3], vec![1, 2, 3]] {
            let Ok(id) = MinorId::new(rows.clone(), cols.clone()) else { continue };
            let a = quantum_minor_xi(&alg, &id).unwrap();
            assert_eq!(a, quantum_minor_xi_by_columns(&alg, &id).unwrap(), "{id:?}");
            assert_eq!(alg.bar(&a), a, "{id:?}");
        }
    }
}

#[test]
fn twisted_minors_are_bar_fixed() {
    let alg = PqAlgebra::new(3, 3);
    let dd = MonomialMap::dipper_donkin(3, 3);
    for a in 1..=3 {
        for j in 1..=3 {
            let chi = quantum_minor(&alg, &MinorId::vplus(a, j), Some(&dd)).unwrap();
            assert_eq!(alg.bar(&chi), chi);
        }
    }
}

#[test]
fn frt_exchange_in_three_by_three() {
    let spec = FamilySpec::frt(3, 3);
    let pairs = [[1, 2], [1, 3], [2, 3]];
    for rows in pairs {
        for cols in pairs {
            let rep = exchange_check(&rows, &cols, &spec).unwrap();
            assert_eq!((rep.solution.a, rep.solution.c), (0, 1), "{rows:?} {cols:?}");
            assert_eq!(rep.solution.order, ProductOrder::BottomTop);
            assert!(rep.balanced());
        }
    }
    let rep = exchange_check(&[1, 2, 3], &[1, 2, 3], &spec).unwrap();
    assert_eq!((rep.solution.a, rep.solution.c), (0, 1));
}

#[test]
fn dd_exchange_balance() {
    let spec = FamilySpec::dd(3, 3);
    let pairs = [[1, 2], [1, 3], [2, 3]];
    for rows in pairs {
        for cols in pairs {
            let rep = exchange_check(&rows, &cols, &spec).unwrap();
            assert!(rep.balanced(), "{rows:?} {cols:?}: {:?}", rep.rc_balance);
        }
    }
}
