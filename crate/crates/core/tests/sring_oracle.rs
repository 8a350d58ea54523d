use std::collections::BTreeSet;

use schur_core::abelian_group::all_abelian_groups;
use schur_core::sring::{brute_force_srings, enumerate_srings};
use schur_core::{AbelianGroup, SRing};

fn orbit_key(a: &SRing, auts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    auts.iter()
        .map(|f| {
            let mut img: Vec<Vec<usize>> = a
                .class_lists()
                .iter()
                .map(|c| {
                    let mut v: Vec<usize> = c.iter().map(|&x| f[x]).collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            img.sort();
            img
        })
        .min()
        .unwrap()
}

fn keys(g: &AbelianGroup, rings: &[SRing]) -> BTreeSet<Vec<Vec<usize>>> {
    let auts: Vec<Vec<usize>> = g
        .automorphisms()
        .unwrap()
        .into_iter()
        .map(|f| f.table)
        .collect();
    rings.iter().map(|a| orbit_key(a, &auts)).collect()
}

#[test]
fn enumeration_matches_brute_force_up_to_order_12() {
    for n in 1..=12 {
        for g in all_abelian_groups(n).unwrap() {
            let fast = enumerate_srings(&g).unwrap();
            let slow = brute_force_srings(&g).unwrap();
            let (kf, ks) = (keys(&g, &fast), keys(&g, &slow));
            assert_eq!(kf.len(), fast.len(), "{g}: duplicate orbits in enumeration");
            assert_eq!(kf, ks, "{g}");
        }
    }
}

#[test]
fn enumeration_output_is_sorted_and_valid() {
    let g: AbelianGroup = "C2xC6".parse().unwrap();
    let rings = enumerate_srings(&g).unwrap();
    for w in rings.windows(2) {
        assert!((w[0].rank(), w[0].class_lists()) < (w[1].rank(), w[1].class_lists()));
    }
    for a in &rings {
        assert!(schur_core::sring::validate_sring(&g, a.classes().to_vec()).is_ok());
    }
}
