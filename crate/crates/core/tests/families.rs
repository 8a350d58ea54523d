use schur_core::abelian_group::{all_abelian_groups, gcd};
use schur_core::constructions::{build_family, FamilyDescriptor};
use schur_core::isomorphism::{algebraic_isos, catalog, cayley_isos};
use schur_core::verify::highest_by_definition;
use schur_core::ElementSet;

fn descriptors() -> Vec<FamilyDescriptor> {
    [3, 5, 7, 11, 13]
        .into_iter()
        .flat_map(FamilyDescriptor::all_for_prime)
        .collect()
}

/// Classes inside `E` are excluded: `{e}` and a class inside `P` share the
/// projection `{e}` but differ in size.
#[test]
fn classes_with_equal_e_projection_are_rationally_conjugate() {
    for d in descriptors() {
        let a = build_family(&d).unwrap();
        let g = a.group();
        let (e, _) = d.e_and_p().unwrap();
        let n = g.order() as i64;
        // z -> z^(p m) with p m = 1 mod 4 is the projection onto E
        let m = (1..4).find(|m| (d.p as i64 * m) % 4 == 1).unwrap();
        let proj = |x: ElementSet| g.power_set(x, d.p as i64 * m);
        let units: Vec<i64> = (1..n).filter(|&u| gcd(u as u64, n as u64) == 1).collect();
        for &x in a.classes() {
            for &y in a.classes() {
                if x.is_subset(e.set) || y.is_subset(e.set) || proj(x) != proj(y) {
                    continue;
                }
                assert!(
                    units.iter().any(|&u| g.power_set(x, u) == y),
                    "{d}: {:?} and {:?}",
                    x.to_vec(),
                    y.to_vec()
                );
            }
        }
    }
}

#[test]
fn highest_sets_exist_and_are_rationally_conjugate() {
    for d in descriptors() {
        let a = build_family(&d).unwrap();
        let g = a.group();
        let highest = highest_by_definition(&a, &d).unwrap();
        assert!(!highest.is_empty(), "{d}");
        let n = g.order() as i64;
        for x in &highest {
            for y in &highest {
                assert!((1..n).any(|u| gcd(u as u64, n as u64) == 1 && g.power_set(*x, u) == *y));
            }
        }
    }
}

#[test]
fn algebraically_isomorphic_to_a_family_means_cayley_isomorphic() {
    for p in [3, 5, 7] {
        for d in FamilyDescriptor::all_for_prime(p) {
            let a = build_family(&d).unwrap();
            for g in all_abelian_groups(4 * p as usize).unwrap() {
                for b in catalog(&g).unwrap().iter().filter(|b| b.rank() == a.rank()) {
                    if !algebraic_isos(&a, b).is_empty() {
                        assert!(!cayley_isos(&a, b).unwrap().is_empty(), "{d} vs {b:?}");
                    }
                }
            }
        }
    }
}
