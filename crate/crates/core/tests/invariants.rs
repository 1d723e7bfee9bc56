//! Structural laws relating the embeddability and base checkers.

mod common;

use common::*;
use nil2::amalgam::{check_strong, check_strong_special_case, check_weak, CoreShape};
use nil2::bases::is_special_base;
use nil2::catalog::{catalog, default_params, NAMES};
use nil2::subgroup::{center, power_derived, quotient};
use nil2::variety::minimal_variety;
use nil2::{Amalgam, Error, Group, Subgroup, Variety};
use proptest::prelude::*;

fn containing(groups: &[&Group]) -> Vec<Variety> {
    let e = groups.iter().fold(1, |acc, g| nil2::arith::lcm(acc, g.exponent()));
    let floor = groups.iter().fold(Variety::bottom(), |acc, g| acc.join(&minimal_variety(g)));
    Variety::sublattice(e).into_iter().filter(|v| floor.is_subvariety_of(v)).collect()
}

/// `XⁿX′ ∩ D` lies in the centre of the other factor, on both sides.
fn verbal_core_central(am: &Amalgam, n: u64) -> bool {
    let (za, zb) = (center(am.a()).unwrap(), center(am.b()).unwrap());
    let (pa, pb) = (power_derived(am.a(), n).unwrap(), power_derived(am.b(), n).unwrap());
    let core_a = am.core_in_a().unwrap();
    let core_b = am.core_in_b().unwrap();
    core_a.elements().iter().filter(|&&x| pa.contains(x)).all(|&x| zb.contains(am.a_to_b(x).unwrap()))
        && core_b.elements().iter().filter(|&&y| pb.contains(y)).all(|&y| za.contains(am.b_to_a(y).unwrap()))
}

#[test]
fn normal_core_upgrades_weak_to_strong() {
    let mut normal_cases = 0;
    for am in amalgams() {
        let normal_in_a = am.core_in_a().unwrap().is_normal();
        let normal_in_b = am.core_in_b().unwrap().is_normal();
        for v in containing(&[am.a(), am.b()]) {
            if (normal_in_a || normal_in_b) && check_weak(&am, &v).unwrap().value {
                normal_cases += 1;
                assert!(check_strong(&am, &v).unwrap().value, "{} {v}", am.name());
            }
        }
    }
    assert!(normal_cases > 50);
}

#[test]
fn embeddability_reduces_to_the_whole_class() {
    let top = Variety::new(0, 0).unwrap();
    for am in amalgams() {
        let weak_top = check_weak(&am, &top).unwrap().value;
        let strong_top = check_strong(&am, &top).unwrap().value;
        for v in containing(&[am.a(), am.b()]) {
            let central = verbal_core_central(&am, v.n());
            assert_eq!(check_weak(&am, &v).unwrap().value, weak_top && central, "weak {} {v}", am.name());
            assert_eq!(check_strong(&am, &v).unwrap().value, strong_top && central, "strong {} {v}", am.name());
        }
    }
}

#[test]
fn strong_implies_weak() {
    for am in amalgams() {
        for v in containing(&[am.a(), am.b()]) {
            if check_strong(&am, &v).unwrap().value {
                assert!(check_weak(&am, &v).unwrap().value, "{} {v}", am.name());
            }
        }
    }
}

#[test]
fn special_base_lifts_from_the_abelian_quotient() {
    let mut groups = all_groups();
    for name in NAMES {
        if let Ok(e) = catalog(name, default_params(name, 2).unwrap_or_default()) {
            groups.extend(e.group.filter(|g| g.order() <= 1024));
        }
    }
    let mut lifted = 0;
    for g in &groups {
        for v in containing(&[g]) {
            let (q, _) = quotient(g, &power_derived(g, v.n()).unwrap()).unwrap();
            if is_special_base(&q, &v).unwrap().value {
                lifted += 1;
                assert!(is_special_base(g, &v).unwrap().value, "{} {v}", g.name());
            }
        }
    }
    assert!(lifted > 0);
}

/// Nonabelian hosts of order at most 32.
fn hosts() -> Vec<Group> {
    nonabelian().into_iter().filter(|g| g.order() <= 32).collect()
}

fn subgroup_from(g: &Group, picks: &[u64]) -> Subgroup {
    let gens: Vec<_> = picks.iter().map(|p| p % g.order()).collect();
    Subgroup::generate(g, &gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// `B = ⟨D, Z⟩` and `A ⊇ D` inside one host, so the core is cocentral in `B`.
    #[test]
    fn cocentral_criterion_matches(host in 0usize..11, d in prop::collection::vec(any::<u64>(), 1..3),
                                   extra in prop::collection::vec(any::<u64>(), 1..3), vi in any::<prop::sample::Index>()) {
        let hs = hosts();
        let g = &hs[host % hs.len()];
        let core = subgroup_from(g, &d);
        let b = core.join(&center(g).unwrap()).unwrap();
        let mut a_gens = core.generators().to_vec();
        a_gens.extend(extra.iter().map(|x| x % g.order()));
        let a = Subgroup::generate(g, &a_gens).unwrap();
        let am = Amalgam::from_subgroups("cocentral", &a, &b).unwrap();
        let vs = containing(&[am.a(), am.b()]);
        let v = vs[vi.index(vs.len())];
        let expected = check_strong(&am, &v).unwrap().value;
        prop_assert_eq!(check_strong_special_case(&am, &v, CoreShape::Cocentral).unwrap().value, expected);
        match check_strong_special_case(&am, &v, CoreShape::CentralCore) {
            Ok(verdict) => prop_assert_eq!(verdict.value, expected),
            Err(Error::Precondition(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
}
