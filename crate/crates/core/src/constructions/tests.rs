use std::collections::BTreeSet;

use super::*;
use crate::abelian_group::all_abelian_groups;
use crate::isomorphism::{algebraic_isos, cayley_isos};
use crate::sring::{closure_of_sets, enumerate_srings};

fn g(s: &str) -> AbelianGroup {
    s.parse().unwrap()
}

fn lists(a: &SRing) -> Vec<Vec<usize>> {
    a.class_lists()
}

#[test]
fn tensor_examples() {
    let (g1, g2) = (g("C2"), g("C3"));
    let t = tensor_product(&SRing::group_ring(&g1), &SRing::group_ring(&g2)).unwrap();
    assert!(t.is_group_ring());
    let t = tensor_product(&SRing::rank_two(&g1), &SRing::rank_two(&g2)).unwrap();
    assert_eq!(t.rank(), 4);
    for a1 in enumerate_srings(&g("C4")).unwrap() {
        for a2 in enumerate_srings(&g("C3")).unwrap() {
            let t = tensor_product(&a1, &a2).unwrap();
            assert_eq!(t.rank(), a1.rank() * a2.rank());
        }
    }
}

#[test]
fn wreath_examples() {
    let c4 = g("C4");
    let l = c4.subgroup([0, 2].into_iter().collect()).unwrap();
    let c2 = g("C2");
    let w = wreath_product(&SRing::rank_two(&c2), &SRing::rank_two(&c2), &c4, &l).unwrap();
    assert_eq!(lists(&w), vec![vec![0], vec![1, 3], vec![2]]);
    let w2 = wreath_product(&SRing::group_ring(&c2), &SRing::group_ring(&c2), &c4, &l).unwrap();
    assert_eq!(w, w2);
    let check = is_generalized_wreath(&w, &l, &l).unwrap();
    assert!(check.holds && check.proper);
    assert!(wreath_product(&SRing::rank_two(&g("C3")), &SRing::rank_two(&c2), &c4, &l).is_err());

    // rank additivity over C2 x C6 with L of order 3
    let gr = g("C2xC6");
    let l = gr.torsion(3);
    let inner = gr.quotient(&l, &gr.trivial_subgroup()).unwrap().quotient;
    let outer = gr.quotient(&gr.whole(), &l).unwrap().quotient;
    for al in enumerate_srings(&inner).unwrap() {
        for aq in enumerate_srings(&outer).unwrap() {
            let w = wreath_product(&al, &aq, &gr, &l).unwrap();
            assert_eq!(w.rank(), al.rank() + aq.rank() - 1);
            assert!(is_generalized_wreath(&w, &l, &l).unwrap().holds);
        }
    }
}

#[test]
fn generalized_wreath_edge_cases() {
    let gr = g("C2xC2xC3");
    for a in enumerate_srings(&gr).unwrap() {
        for l in a.a_subgroups().unwrap() {
            let c = is_generalized_wreath(&a, &gr.whole(), &l).unwrap();
            assert!(c.holds && !c.proper);
        }
    }
    let zg = SRing::group_ring(&gr);
    for l in gr.all_subgroups().unwrap() {
        if l.order() > 1 && l.order() < gr.order() {
            assert!(!is_generalized_wreath(&zg, &l, &l).unwrap().holds);
        }
    }
    let rank2 = SRing::rank_two(&gr);
    let l = gr.torsion(3);
    assert!(is_generalized_wreath(&rank2, &l, &l).is_err());
}

#[test]
fn cyclotomic_examples() {
    let c7 = g("C7");
    assert!(cyclotomic(&[GroupMorphism::identity(&c7)], &c7).unwrap().is_group_ring());
    let c5 = g("C5");
    assert_eq!(cyclotomic(&c5.automorphisms().unwrap(), &c5).unwrap().rank(), 2);
    let v4 = g("C2xC2");
    let swap = GroupMorphism::new(&v4, &v4, &[1, 2]).unwrap();
    let k = vec![GroupMorphism::identity(&v4), swap.clone()];
    let a = cyclotomic(&k, &v4).unwrap();
    // a = 2, b = 1, ab = 3
    assert_eq!(lists(&a), vec![vec![0], vec![1, 2], vec![3]]);
    let c4 = g("C4");
    let w = SRing::from_class_lists(&c4, &[vec![0], vec![1, 3], vec![2]]).unwrap();
    assert!(!algebraic_isos(&a, &w).is_empty());
    assert!(cyclotomic(&[swap], &v4).is_err());
}

#[test]
fn cyclotomic_restricts_to_invariant_subgroups() {
    let gr = g("C2xC2xC3");
    let auts = gr.automorphisms().unwrap();
    // every cyclic subgroup of Aut(G)
    for f in &auts {
        let mut k = vec![GroupMorphism::identity(&gr)];
        while k.last().unwrap().then(f).unwrap().table != k[0].table {
            let next = k.last().unwrap().then(f).unwrap();
            k.push(next);
        }
        let a = cyclotomic(&k, &gr).unwrap();
        for h in gr.all_subgroups().unwrap() {
            if k.iter().any(|f| f.apply_set(h.set) != h.set) {
                continue;
            }
            let (s, restricted) = a.restrict(&h).unwrap();
            let kh: Vec<GroupMorphism> = k
                .iter()
                .map(|f| {
                    let imgs: Vec<usize> = (0..s.quotient.factors().len())
                        .map(|i| {
                            let x = s.lift(s.quotient.generator(i)).unwrap();
                            s.project(f.apply(x)).unwrap()
                        })
                        .collect();
                    GroupMorphism::new(&s.quotient, &s.quotient, &imgs).unwrap()
                })
                .collect();
            let mut tables: Vec<Vec<usize>> = kh.iter().map(|f| f.table.clone()).collect();
            tables.sort();
            tables.dedup();
            let kh: Vec<GroupMorphism> = tables
                .into_iter()
                .map(|t| kh.iter().find(|f| f.table == t).unwrap().clone())
                .collect();
            assert_eq!(cyclotomic(&kh, &s.quotient).unwrap(), restricted);
        }
    }
}

#[test]
fn subdirect_examples() {
    let (c1, c2, c4) = (g("C1"), g("C2"), g("C4"));
    let t = subdirect_target(&c4, 1).unwrap();
    let psi = GroupMorphism::new(&c1, &t.quotient, &[0]).unwrap();
    assert_eq!(subdirect_product(&c1, &c4, &psi).unwrap().len(), 4);
    let t = subdirect_target(&c4, 2).unwrap();
    let psi = GroupMorphism::new(&c2, &t.quotient, &[t.project(1).unwrap()]).unwrap();
    let s = subdirect_product(&c2, &c4, &psi).unwrap();
    let expected: Vec<(usize, usize)> = (0..2)
        .flat_map(|x| (0..4).map(move |y| (x, y)))
        .filter(|(x, y)| x % 2 == y % 2)
        .collect();
    assert_eq!(s, expected);
    assert!(subdirect_target(&g("C6"), 4).is_err());
    let bad = GroupMorphism::new(&c2, &t.quotient, &[0]).unwrap();
    assert!(subdirect_product(&c2, &c4, &bad).is_err());
}

/// Orbit count of `{(σ^x, θ^y) : x ≡ ±y mod s}` acting on coordinates.
fn family_rank_oracle(d: &FamilyDescriptor, sign: i64) -> usize {
    let p = d.p as i64;
    let s = d.sigma_order() as i64;
    let k = d.k as i64;
    let unit = {
        let g = (2..p)
            .find(|&g| (1..p - 1).all(|e| (0..e).fold(1, |acc, _| acc * g % p) != 1))
            .unwrap();
        (0..(p - 1) / k).fold(1, |acc, _| acc * g % p)
    };
    // E as pairs (u, v) with u + v*? : for i in {1,2} bits (a, b); for i=3 c mod 4
    let e_elems: Vec<i64> = (0..4).collect();
    let sigma = |e: i64| -> i64 {
        match d.i {
            1 => {
                // (a, b) -> (b, a + b) on bit pairs e = 2a + b
                let (a, b) = (e >> 1, e & 1);
                (b << 1) | (a ^ b)
            }
            2 => ((e & 1) << 1) | (e >> 1),
            _ => (4 - e) % 4,
        }
    };
    let mut seen = BTreeSet::new();
    let mut orbits = 0;
    for &e in &e_elems {
        for z in 0..p {
            if seen.contains(&(e, z)) {
                continue;
            }
            orbits += 1;
            for y in 0..k {
                let x = (sign * y).rem_euclid(s);
                let mut ee = e;
                for _ in 0..x {
                    ee = sigma(ee);
                }
                let mult = (0..y).fold(1, |acc, _| acc * unit % p);
                seen.insert((ee, z * mult % p));
            }
        }
    }
    orbits
}

#[test]
fn family_ranks_match_orbit_oracle() {
    let d = FamilyDescriptor::new(1, 7, 3).unwrap();
    assert_eq!(build_family(&d).unwrap().rank(), 10);
    let d = FamilyDescriptor::new(2, 5, 2).unwrap();
    // {e}, {ab}, {a, b}, two classes on P#, two on ab·P#, four on {a, b}·P#
    assert_eq!(build_family(&d).unwrap().rank(), 11);
    let d = FamilyDescriptor::new(3, 3, 2).unwrap();
    let a = build_family(&d).unwrap();
    let (e, _) = d.e_and_p().unwrap();
    assert_eq!(a.restrict(&e).unwrap().1.rank(), 3);
    for p in [3, 5, 7, 11, 13] {
        for d in FamilyDescriptor::all_for_prime(p) {
            assert_eq!(build_family(&d).unwrap().rank(), family_rank_oracle(&d, 1), "{d}");
            assert_eq!(
                build_family_with(&d, Twist::Xi).unwrap().rank(),
                family_rank_oracle(&d, -1),
                "{d}"
            );
        }
    }
}

#[test]
fn family_descriptor_syntax() {
    let d: FamilyDescriptor = "family:i=2,p=5,k=2".parse().unwrap();
    assert_eq!(d, FamilyDescriptor::new(2, 5, 2).unwrap());
    assert_eq!(d.to_string(), "family:i=2,p=5,k=2");
    assert!("family:i=1,p=5,k=2".parse::<FamilyDescriptor>().is_err());
    assert!("family:i=4,p=5,k=2".parse::<FamilyDescriptor>().is_err());
    assert!("fam:i=1".parse::<FamilyDescriptor>().is_err());
    assert!(FamilyDescriptor::new(2, 5, 3).is_err());
}

#[test]
fn family_invariants() {
    for p in [3, 5, 7, 11, 13] {
        for d in FamilyDescriptor::all_for_prime(p) {
            let a = build_family(&d).unwrap();
            let gr = a.group().clone();
            let (e, pp) = d.e_and_p().unwrap();
            assert!(a.is_a_set(e.set) && a.is_a_set(pp.set));
            assert!(a.classes().iter().all(|x| x.len() <= d.k as usize));
            let highest = highest_basic_sets(&a);
            assert!(!highest.is_empty());
            let per_coset = (d.k / d.sigma_order()) as usize;
            for x in a.classes() {
                let generates = gr.generated_subgroup(*x).order() == gr.order();
                assert_eq!(highest.contains(x), generates);
                let closure = closure_of_sets(&gr, &[*x]);
                if generates {
                    assert_eq!(closure, a, "{d}");
                    for z in *x {
                        assert_eq!(gr.translate(e.set, z).intersection(*x).len(), 1);
                        assert_eq!(gr.translate(pp.set, z).intersection(*x).len(), per_coset);
                    }
                } else {
                    assert!(closure.rank() < a.rank(), "{d}");
                }
            }
        }
    }
}

#[test]
fn highest_set_power_is_sigma_orbit() {
    let d = FamilyDescriptor::new(1, 7, 3).unwrap();
    let a = build_family(&d).unwrap();
    let gr = a.group();
    let (e, _) = d.e_and_p().unwrap();
    let o: ElementSet = e.set.iter().filter(|&x| x != 0).collect();
    for x in highest_basic_sets(&a) {
        assert_eq!(gr.power_set(x, 7), o);
    }
}

#[test]
fn psi_and_xi_are_cayley_isomorphic() {
    for p in [7, 13] {
        for d in FamilyDescriptor::all_for_prime(p).into_iter().filter(|d| d.i == 1) {
            let a = build_family(&d).unwrap();
            let b = build_family_with(&d, Twist::Xi).unwrap();
            let isos = cayley_isos(&a, &b).unwrap();
            assert!(!isos.is_empty());
            // τ × 1 with τ swapping a and b
            let gr = a.group();
            let tau = GroupMorphism::new(gr, gr, &[gr.generator(1), gr.generator(0), gr.generator(2)])
                .unwrap();
            assert!(isos.iter().any(|f| f.map == tau.table), "{d}");
        }
    }
}

#[test]
fn tensor_restrictions() {
    for spec in ["C2xC6", "C2xC2xC3", "C4xC3"] {
        let gr = g(spec);
        let (h, l) = (gr.torsion(4), gr.torsion(3));
        for a in enumerate_srings(&gr).unwrap() {
            if !a.is_a_set(h.set) || !a.is_a_set(l.set) {
                continue;
            }
            let (_, ah) = a.restrict(&h).unwrap();
            let (_, al) = a.restrict(&l).unwrap();
            for x in a.classes() {
                // projections along the decomposition z = z^(3m) * z^(4m')
                let xh: ElementSet = x.iter().map(|z| gr.pow(z, 9)).collect();
                let xl: ElementSet = x.iter().map(|z| gr.pow(z, 4)).collect();
                assert!(a.is_basic(xh) && a.is_basic(xl));
            }
            if ah.is_group_ring() || al.is_group_ring() {
                assert!(is_tensor(&a, &h, &l));
            }
        }
    }
}

#[test]
fn highest_examples() {
    let d = FamilyDescriptor::new(1, 7, 3).unwrap();
    assert_eq!(highest_basic_sets(&build_family(&d).unwrap()).len(), 6);
    assert_eq!(highest_basic_sets(&SRing::group_ring(&g("C12"))).len(), 4);
    assert_eq!(highest_basic_sets(&SRing::rank_two(&g("C20"))).len(), 1);
}

#[test]
fn classify_examples() {
    assert_eq!(classify_4p(&SRing::group_ring(&g("C2xC2xC3"))).unwrap(), Case::TrivialZG);
    assert_eq!(classify_4p(&SRing::rank_two(&g("C28"))).unwrap(), Case::Rank2);
    let d = FamilyDescriptor::new(2, 5, 2).unwrap();
    match classify_4p(&build_family(&d).unwrap()).unwrap() {
        Case::Family { descriptor, .. } => assert_eq!(descriptor, d),
        other => panic!("{other}"),
    }
    assert!(classify_4p(&SRing::rank_two(&g("C10"))).is_err());
    let c8 = SRing::from_class_lists(&g("C8"), &[vec![0], vec![1, 3], vec![2, 6], vec![4], vec![5, 7]]);
    assert_eq!(
        classify_4p(&c8.unwrap()).unwrap(),
        Case::CyclotomicC8 { multipliers: vec![1, 3] }
    );
}

#[test]
fn classification_is_total_for_small_p() {
    for p in [2, 3] {
        for gr in all_abelian_groups(4 * p).unwrap() {
            for a in enumerate_srings(&gr).unwrap() {
                classify_4p(&a).unwrap();
            }
        }
    }
}
