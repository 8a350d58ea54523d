use super::*;
use crate::abelian_group::{all_abelian_groups, AbelianGroup};
use crate::sring::{enumerate_srings, radical, GroupRingVector};

fn g(s: &str) -> AbelianGroup {
    s.parse().unwrap()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every class bijection, checked against the full tensor.
fn algebraic_oracle(a: &SRing, b: &SRing) -> Vec<Vec<usize>> {
    if a.rank() != b.rank() {
        return Vec::new();
    }
    let r = a.rank();
    permutations(&(0..r).collect::<Vec<_>>())
        .into_iter()
        .filter(|p| {
            (0..r).all(|i| (0..r).all(|j| (0..r).all(|k| a.c(i, j, k) == b.c(p[i], p[j], p[k]))))
        })
        .collect()
}

/// Every element bijection fixing the identity, checked arc by arc.
fn combinatorial_oracle(a: &SRing, b: &SRing) -> usize {
    let n = a.group().order();
    let (sa, sb) = (Arc::new(a.clone()), Arc::new(b.clone()));
    permutations(&(1..n).collect::<Vec<_>>())
        .into_iter()
        .filter(|p| {
            let mut map = vec![0];
            map.extend(p);
            CombinatorialIso::new(sa.clone(), sb.clone(), map).is_ok()
        })
        .count()
}

#[test]
fn rank_two_rings_of_order_12_have_one_algebraic_iso() {
    let a = SRing::rank_two(&g("C12"));
    let b = SRing::rank_two(&g("C2xC2xC3"));
    assert_eq!(algebraic_isos(&a, &b).len(), 1);
}

#[test]
fn algebraic_search_matches_permutation_oracle() {
    for spec in ["C6", "C2xC2xC2", "C4xC2", "C9"] {
        let rings = enumerate_srings(&g(spec)).unwrap();
        for a in &rings {
            for b in &rings {
                if a.rank() > 7 {
                    continue;
                }
                let fast: Vec<Vec<usize>> = algebraic_isos(a, b).into_iter().map(|p| p.map).collect();
                assert_eq!(fast, algebraic_oracle(a, b), "{spec}");
            }
        }
        for a in &rings {
            assert!(algebraic_isos(a, a).iter().any(|p| p.is_identity()));
        }
    }
}

#[test]
fn cayley_examples() {
    for spec in ["C4xC2", "C2xC2xC3", "C7"] {
        let gr = g(spec);
        let zg = SRing::group_ring(&gr);
        assert_eq!(
            cayley_isos(&zg, &zg).unwrap().len(),
            gr.automorphisms().unwrap().len()
        );
    }
    let c4 = g("C4");
    let wr = SRing::from_class_lists(&c4, &[vec![0], vec![1, 3], vec![2]]).unwrap();
    assert!(cayley_isos(&wr, &SRing::group_ring(&c4)).unwrap().is_empty());
}

#[test]
fn combinatorial_counts_match_oracle() {
    // rank 2: every identity-fixing bijection, (n - 1)!
    let a = SRing::rank_two(&g("C5"));
    assert_eq!(combinatorial_isos(&a, &a, 0).len(), 24);
    let a = SRing::rank_two(&g("C4"));
    let b = SRing::rank_two(&g("C2xC2"));
    assert_eq!(combinatorial_isos(&a, &b, 0).len(), 6);
    assert!(combinatorial_isos(&SRing::group_ring(&g("C4")), &SRing::group_ring(&g("C2xC2")), 0).is_empty());
    for n in [4, 6] {
        let groups = all_abelian_groups(n).unwrap();
        let rings: Vec<SRing> = groups.iter().flat_map(|h| enumerate_srings(h).unwrap()).collect();
        for a in &rings {
            for b in &rings {
                assert_eq!(combinatorial_isos(a, b, 0).len(), combinatorial_oracle(a, b));
            }
        }
    }
    assert_eq!(combinatorial_isos(&a, &b, 2).len(), 2);
}

#[test]
fn induced_algebraic_isomorphisms() {
    let a = SRing::group_ring(&g("C2xC2xC2"));
    let id = CombinatorialIso::new(Arc::new(a.clone()), Arc::new(a.clone()), (0..8).collect()).unwrap();
    assert!(induced_algebraic_iso(&id).unwrap().is_identity());
    let r2 = SRing::rank_two(&g("C6"));
    for f in combinatorial_isos(&r2, &r2, 0) {
        assert!(induced_algebraic_iso(&f).unwrap().is_identity());
    }
    // composition of induced maps
    let rings = enumerate_srings(&g("C2xC2xC2")).unwrap();
    for a in &rings {
        let isos = combinatorial_isos(a, a, 6);
        for f1 in &isos {
            for f2 in &isos {
                let comp: Vec<usize> = (0..8).map(|x| f2.map[f1.map[x]]).collect();
                let f = CombinatorialIso::new(f1.source.clone(), f2.target.clone(), comp).unwrap();
                let lhs = induced_algebraic_iso(&f).unwrap();
                let rhs = induced_algebraic_iso(f1)
                    .unwrap()
                    .then(&induced_algebraic_iso(f2).unwrap())
                    .unwrap();
                assert_eq!(lhs.map, rhs.map);
            }
        }
    }
}

#[test]
fn inducing_search_examples() {
    let a = SRing::group_ring(&g("C4xC2"));
    assert!(find_inducing_isomorphism(&AlgebraicIso::identity(&a)).is_some());
    let r1 = SRing::rank_two(&g("C8"));
    let r2 = SRing::rank_two(&g("C2xC2xC2"));
    let phi = algebraic_isos(&r1, &r2).pop().unwrap();
    let f = find_inducing_isomorphism(&phi).unwrap();
    assert_eq!(induced_algebraic_iso(&f).unwrap().map, phi.map);
}

#[test]
fn fast_path_agrees_with_exhaustive_search() {
    for n in [8, 9, 12] {
        let groups = all_abelian_groups(n).unwrap();
        let rings: Vec<SRing> = groups.iter().flat_map(|h| enumerate_srings(h).unwrap()).collect();
        for a in &rings {
            for b in &rings {
                for phi in algebraic_isos(a, b) {
                    let slow = find_inducing_isomorphism(&phi);
                    let fast = find_inducing_isomorphism_fast(&phi).unwrap();
                    assert_eq!(slow.is_some(), fast.is_some());
                    if let Some(f) = fast {
                        assert!(f.is_valid());
                        assert_eq!(induced_algebraic_iso(&f).unwrap().map, phi.map);
                    }
                }
            }
        }
    }
}

/// Counts colour-preserving permutations of `G` directly.
fn aut_oracle(a: &SRing) -> usize {
    let n = a.group().order();
    permutations(&(0..n).collect::<Vec<_>>())
        .into_iter()
        .filter(|p| {
            let g = a.group();
            (0..n).all(|x| (0..n).all(|y| a.class_of(g.div(p[y], p[x])) == a.class_of(g.div(y, x))))
        })
        .count()
}

#[test]
fn automorphism_groups() {
    let c4 = g("C4");
    let wr = SRing::from_class_lists(&c4, &[vec![0], vec![1, 3], vec![2]]).unwrap();
    assert_eq!(aut_sring(&wr).unwrap().order, 8);
    let zg = SRing::group_ring(&g("C3xC3"));
    let aut = aut_sring(&zg).unwrap();
    assert_eq!(aut.order, 9);
    assert_eq!(aut.members.unwrap().len(), 9);
    let r2 = SRing::rank_two(&g("C2xC2xC7"));
    let fact: u128 = (1..=28).product();
    let aut = aut_sring(&r2).unwrap();
    assert_eq!(aut.order, fact);
    assert!(aut.members.is_none());
    for n in 1..=6 {
        for h in all_abelian_groups(n).unwrap() {
            for a in enumerate_srings(&h).unwrap() {
                let aut = aut_sring(&a).unwrap();
                assert_eq!(aut.order as usize, aut_oracle(&a), "{a:?}");
                let members = aut.members.unwrap();
                assert_eq!(members.len() as u128, aut.order);
                assert!(members.iter().all(|f| f.is_valid()));
            }
        }
    }
}

#[test]
fn automorphisms_project_to_sections() {
    let gr = g("C4xC2");
    for a in enumerate_srings(&gr).unwrap() {
        let members = aut_sring(&a).unwrap().members.unwrap();
        for u in a.a_subgroups().unwrap() {
            for l in a.a_subgroups().unwrap() {
                if !l.is_subgroup_of(&u) {
                    continue;
                }
                let s = gr.quotient(&u, &l).unwrap();
                let induced = a.induced(&s).unwrap();
                let sub = Arc::new(induced.clone());
                for f in &members {
                    // only the setwise stabilizer of U acts on U/L
                    let img: ElementSet = u.set.iter().map(|x| f.map[x]).collect();
                    if img != u.set {
                        continue;
                    }
                    let map: Vec<usize> = (0..s.quotient.order())
                        .map(|q| s.project(f.map[s.lift(q).unwrap()]).unwrap())
                        .collect();
                    let fs = CombinatorialIso {
                        source: sub.clone(),
                        target: sub.clone(),
                        map,
                    };
                    assert!(fs.is_valid());
                    assert!(induced_algebraic_iso(&fs).unwrap().is_identity());
                }
            }
        }
    }
}

#[test]
fn lattice_and_section_transport() {
    for spec in ["C2xC2xC2", "C4xC2", "C2xC6"] {
        let gr = g(spec);
        let rings = enumerate_srings(&gr).unwrap();
        for a in &rings {
            for b in &rings {
                for phi in algebraic_isos(a, b) {
                    let gb = b.group();
                    for mask in 1u64..(1 << a.rank().min(8)) {
                        let x = (0..a.rank())
                            .filter(|i| mask >> i & 1 == 1)
                            .fold(ElementSet::EMPTY, |acc, i| acc.union(a.class(i)));
                        let y = phi.apply_set(x).unwrap();
                        let span = gr.generated_subgroup(x).set;
                        assert_eq!(phi.apply_set(span), Some(gb.generated_subgroup(y).set));
                        let rad = radical(&gr, x).set;
                        assert_eq!(phi.apply_set(rad), Some(radical(gb, y).set));
                    }
                    for u in a.a_subgroups().unwrap() {
                        for l in a.a_subgroups().unwrap() {
                            if l.is_subgroup_of(&u) {
                                let s = gr.quotient(&u, &l).unwrap();
                                let (_, iso) = phi.on_section(&s).unwrap();
                                assert!(iso.is_valid());
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn separability_of_small_groups() {
    for spec in ["C4", "C2xC2", "C6", "C2xC2xC2"] {
        for a in enumerate_srings(&g(spec)).unwrap() {
            let report = separability_check(&a).unwrap();
            assert!(report.verdict, "{spec}");
            assert!(!report.entries.is_empty());
        }
    }
}

#[test]
fn extension_uniqueness_trivial_cases() {
    let a = SRing::from_class_lists(&g("C6"), &[vec![0], vec![1, 5], vec![2, 4], vec![3]]).unwrap();
    let phi = AlgebraicIso::identity(&a);
    let zero = GroupRingVector::zero(6);
    assert!(extension_uniqueness_check(&phi, &zero, &zero));
    let xi = GroupRingVector::indicator(6, ElementSet::singleton(1));
    let xi2 = GroupRingVector::indicator(6, ElementSet::singleton(5));
    assert!(extension_uniqueness_check(&phi, &xi, &xi2));
}
