//! Schur closure: the smallest S-ring containing given group-ring elements.
//!
//! Starting from the partition of `G` by seed coefficients (with `{e}`
//! split off), two refinement steps alternate until nothing changes:
//! classes are split so that inversion maps classes onto classes, then for
//! every pair of classes the product of their sums is computed and each
//! class on which it is not constant is split.

use crate::abelian_group::AbelianGroup;
use crate::set::ElementSet;

use super::{classes_from_labels, from_labels, normalize_labels, GroupRingVector, SRing};

/// Splits every class by `key`, labels in first-occurrence order.
fn split_by(labels: &[u8], key: impl Fn(usize) -> u32) -> Vec<u8> {
    let mut seen: Vec<(u8, u32)> = Vec::with_capacity(16);
    labels
        .iter()
        .enumerate()
        .map(|(z, &l)| {
            let k = (l, key(z));
            match seen.iter().position(|s| *s == k) {
                Some(p) => p as u8,
                None => {
                    seen.push(k);
                    (seen.len() - 1) as u8
                }
            }
        })
        .collect()
}

fn count(labels: &[u8]) -> usize {
    labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
}

/// Coarsest S-ring partition refining `labels`, in first-occurrence form.
pub(crate) fn refine_labels(g: &AbelianGroup, labels: &[u8]) -> Vec<u8> {
    let n = g.order();
    let mut lab = split_by(labels, |z| u32::from(z == 0));
    let mut v = vec![0u32; n];
    loop {
        let before = count(&lab);
        lab = split_by(&lab, |z| lab[g.inv(z)] as u32);
        let classes = classes_from_labels(&lab);
        let r = classes.len();
        let mut sub = vec![ElementSet::EMPTY; r * n];
        for (j, c) in classes.iter().enumerate() {
            let inv = g.inverse_set(*c);
            for z in 0..n {
                sub[j * n + z] = g.translate(inv, z);
            }
        }
        for i in 0..r {
            for j in i..r {
                let mut rep = [u32::MAX; 64];
                let mut constant = true;
                for z in 0..n {
                    let val = classes[i].intersection(sub[j * n + z]).len() as u32;
                    v[z] = val;
                    let l = lab[z] as usize;
                    if rep[l] == u32::MAX {
                        rep[l] = val;
                    } else if rep[l] != val {
                        constant = false;
                    }
                }
                if !constant {
                    lab = split_by(&lab, |z| v[z]);
                }
            }
        }
        if count(&lab) == before {
            return normalize_labels(&lab);
        }
    }
}

/// The S-ring generated by the seeds.
pub fn schur_closure(g: &AbelianGroup, seeds: &[GroupRingVector]) -> SRing {
    let n = g.order();
    let mut lab = vec![0u8; n];
    for s in seeds {
        assert_eq!(s.coeffs.len(), n, "seed length must equal the group order");
        let mut values: Vec<i64> = Vec::new();
        let key: Vec<u32> = s
            .coeffs
            .iter()
            .map(|c| match values.iter().position(|v| v == c) {
                Some(p) => p as u32,
                None => {
                    values.push(*c);
                    (values.len() - 1) as u32
                }
            })
            .collect();
        lab = split_by(&lab, |z| key[z]);
    }
    from_labels(g, &refine_labels(g, &lab))
}

/// The S-ring generated by the indicator vectors of `sets`.
pub fn closure_of_sets(g: &AbelianGroup, sets: &[ElementSet]) -> SRing {
    let seeds: Vec<GroupRingVector> = sets
        .iter()
        .map(|&s| GroupRingVector::indicator(g.order(), s))
        .collect();
    schur_closure(g, &seeds)
}

/// The S-ring generated by `a` together with `extra`.
pub fn closure_with(a: &SRing, extra: &[GroupRingVector]) -> SRing {
    let g = a.group();
    let mut lab = a.labels().to_vec();
    for s in extra {
        let mut values: Vec<i64> = Vec::new();
        let key: Vec<u32> = s
            .coeffs
            .iter()
            .map(|c| match values.iter().position(|v| v == c) {
                Some(p) => p as u32,
                None => {
                    values.push(*c);
                    (values.len() - 1) as u32
                }
            })
            .collect();
        lab = split_by(&lab, |z| key[z]);
    }
    from_labels(g, &refine_labels(g, &lab))
}
