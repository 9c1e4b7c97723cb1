use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use qseed_core::closed::*;
use qseed_core::families::{build_h, build_t_basis};
use qseed_core::linalg::{det, inverse, kernel, rank, skew_normal_form};
use qseed_core::scalar::ratio;
use qseed_core::seeds::build_lambda;
use qseed_core::{FamilyKind, FamilySpec, IntMatrix};

fn named(max: usize) -> Vec<FamilySpec> {
    let mut v = Vec::new();
    for kind in [FamilyKind::DipperDonkin, FamilyKind::Frt, FamilyKind::CombinedI, FamilyKind::CombinedII] {
        for n in 2..=max {
            for r in 2..=max {
                v.push(FamilySpec::named(kind, n, r));
            }
        }
    }
    v
}

#[test]
fn corank_matches_rank() {
    for spec in named(6) {
        let h = build_h(&spec).unwrap();
        assert_eq!(corank_closed(&spec).unwrap(), h.rows() - rank(&h), "{spec}");
    }
}

#[test]
fn det_matches_bareiss() {
    for spec in named(5) {
        let h = build_h(&spec).unwrap();
        let want = det(&h).unwrap();
        if let Some(d) = det_closed(&spec).unwrap() { assert_eq!(d, want, "{spec}") }
    }
}

#[test]
fn every_applicable_inverse_route_agrees() {
    use InverseRoute::*;
    for spec in named(6) {
        let h = build_h(&spec).unwrap();
        let Ok(oracle) = inverse(&h) else { continue };
        for route in [General, DdResidues, DdShifted, FrtBlocks, FrtShifted] {
            if route.applies(&spec) {
                assert_eq!(inverse_h_via(&spec, route).unwrap(), oracle, "{spec} {route:?}");
            }
        }
    }
}

#[test]
fn every_applicable_lambda_inverse_route_agrees() {
    use LambdaInverseRoute::*;
    for spec in named(6) {
        let l = build_lambda(&spec).unwrap();
        let Ok(oracle) = inverse(&l) else { continue };
        if matches!(spec.kind, FamilyKind::DipperDonkin | FamilyKind::Frt) {
            assert!(lambda_inverse_route(&spec).is_some(), "{spec}");
        }
        for route in [DdGeneral, DdEven, FrtFullRank, Conjugated] {
            if route.applies(&spec) {
                assert_eq!(inverse_lambda_via(&spec, route).unwrap(), oracle, "{spec} {route:?}");
            }
        }
    }
}

#[test]
fn singular_inverse_is_refused() {
    assert!(inverse_h_closed(&FamilySpec::dd(3, 3)).is_err());
    assert!(inverse_lambda_closed(&FamilySpec::frt(2, 2)).is_err());
}

#[test]
fn partial_left_inverse() {
    for n in (3..=9).step_by(2) {
        let (_, zkh) = partial_left_inverse_dd(n).unwrap();
        assert_eq!(zkh, zkh_expected(n).unwrap(), "n={n}");
    }
}

#[test]
fn kernels_annihilate_and_span() {
    for spec in named(6).into_iter().filter(|s| matches!(s.kind, FamilyKind::DipperDonkin | FamilyKind::Frt)) {
        let h = build_h(&spec).unwrap();
        let l = build_lambda(&spec).unwrap();
        let kp = kernel_closed(&spec).unwrap();
        assert!(kp.h.annihilated_by(&h), "{spec}");
        assert!(kp.lambda.annihilated_by(&l), "{spec}");
        let oh = kernel(&h);
        assert!(kp.h.same_span(&oh), "{spec}");
        assert!(kp.lambda.same_span(&kernel(&l)), "{spec}");
        for b in &kp.lambda.vectors {
            let (t, _) = build_t_basis(spec.n, spec.r);
            let a = t.mul_vec(b).unwrap();
            assert!(h.mul_vec(&a).unwrap().iter().all(Zero::is_zero), "{spec}");
        }
    }
}

#[test]
fn centers_are_central_and_complete() {
    for spec in named(6).into_iter().filter(|s| matches!(s.kind, FamilyKind::DipperDonkin | FamilyKind::Frt)) {
        let l = build_lambda(&spec).unwrap();
        let gens = center_generators(&spec).unwrap();
        assert_eq!(gens.len(), l.rows() - rank(&l), "{spec}");
        for g in &gens {
            assert!(l.mul_vec(&g.exponents).unwrap().iter().all(Zero::is_zero), "{spec}: {}", g.label);
        }
        if !gens.is_empty() {
            let m = IntMatrix::from_fn(l.rows(), gens.len(), |i, j| gens[j].exponents[i].clone());
            assert_eq!(rank(&m), gens.len(), "{spec}");
        }
    }
}

#[test]
fn frt_square_center_labels() {
    let labels: Vec<String> = center_generators(&FamilySpec::frt(2, 2))
        .unwrap()
        .into_iter()
        .map(|g| g.label)
        .collect();
    assert_eq!(labels, ["xi[1,2]*xi[2,1]^-1", "xi[2,2]"]);
}

#[test]
fn block_counts_match_normal_form() {
    let mut specs = named(6);
    for n in 2..=5 {
        for r in 2..=5 {
            specs.push(FamilySpec::ext(n, r));
        }
    }
    for spec in specs {
        let form = skew_normal_form(&build_h(&spec).unwrap()).unwrap();
        let seen = BlockCountReport::observed(&form).unwrap_or_else(|| panic!("{spec}: {:?}", form.block_values));
        assert_eq!(seen, block_counts_closed(&spec).unwrap(), "{spec}");
    }
}

#[test]
fn degree_formula() {
    let vals: Vec<BigInt> = [1, 2, 4].into_iter().map(BigInt::from).collect();
    assert_eq!(degree_from_blocks(&vals, 6), BigInt::from(6 * 3 * 3));
    let d = degree_at_root(&FamilySpec::dd(2, 2), 5).unwrap();
    assert_eq!(d.value, BigInt::from(25));
    assert!(d.warning.is_none());
    assert!(degree_at_root(&FamilySpec::dd(2, 2), 4).unwrap().warning.is_some());
    assert!(degree_at_root(&FamilySpec::dd(2, 2), 1).is_err());
}

#[test]
fn entry_ranges_of_inverses() {
    let mut outside = Vec::new();
    for spec in named(6) {
        let k = match spec.kind {
            FamilyKind::DipperDonkin => 1,
            FamilyKind::Frt => 2,
            _ => continue,
        };
        for (name, m) in [("H", build_h(&spec).unwrap()), ("L", build_lambda(&spec).unwrap())] {
            let Ok(inv) = inverse(&m) else { continue };
            let scaled = inv.scale(&ratio(k, 1));
            if !scaled.entries().iter().all(|e| e.is_integer() && e.numer().abs() <= BigInt::from(k)) {
                outside.push(format!("{spec} {name}"));
                let quad = inv.scale(&ratio(4, 1));
                assert!(quad.entries().iter().all(|e| e.is_integer()), "{spec}");
            }
        }
    }
    assert_eq!(outside, ["frt(n=3, r=6) H", "frt(n=3, r=6) L", "frt(n=6, r=3) H", "frt(n=6, r=3) L"]);
}
