//! Naive oracle: every set partition of `G#`, filtered by validation.

use std::collections::BTreeSet;

use crate::abelian_group::{check_capacity, AbelianGroup};
use crate::error::{Error, Result};
use crate::set::ElementSet;

use super::{validate_sring, SRing};

pub const BRUTE_FORCE_MAX_ORDER: usize = 13;

/// All S-rings over `g`, one per `Aut(G)`-orbit, each the orbit member with
/// the least sorted class list.
pub fn brute_force_srings(g: &AbelianGroup) -> Result<Vec<SRing>> {
    check_capacity(g.order())?;
    if g.order() > BRUTE_FORCE_MAX_ORDER {
        return Err(Error::Capacity {
            order: g.order(),
            bound: BRUTE_FORCE_MAX_ORDER,
        });
    }
    let n = g.order();
    let auts: Vec<Vec<usize>> = g
        .automorphisms()?
        .into_iter()
        .map(|f| f.table.clone())
        .collect();
    let inv: Vec<usize> = (0..n).map(|x| g.inv(x)).collect();

    let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    let mut pair: Vec<Option<usize>> = vec![None; n];
    let mut partitions: Vec<Vec<usize>> = Vec::new();
    rgs(1, 0, &mut labels, &mut pair, &inv, &mut partitions);
    for lab in partitions {
        let k = lab[1..].iter().max().map_or(0, |m| m + 1);
        let mut classes = vec![ElementSet::singleton(0)];
        for l in 0..k {
            classes.push((1..n).filter(|&x| lab[x] == l).collect());
        }
        let Ok(ring) = validate_sring(g, classes) else {
            continue;
        };
        let key = orbit_min(&ring.class_lists(), &auts);
        if seen.insert(key.clone()) {
            out.push(SRing::from_class_lists(g, &key)?);
        }
    }
    out.sort_by_cached_key(|a| (a.rank(), a.class_lists()));
    Ok(out)
}

/// Restricted growth strings over `1..n`; pruned so that inversion maps
/// blocks onto blocks.
fn rgs(
    x: usize,
    used: usize,
    labels: &mut Vec<usize>,
    pair: &mut Vec<Option<usize>>,
    inv: &[usize],
    out: &mut Vec<Vec<usize>>,
) {
    let n = labels.len();
    if x == n {
        out.push(labels.clone());
        return;
    }
    for l in 0..=used {
        labels[x] = l;
        let y = inv[x];
        let m = if y <= x { labels[y] } else { l };
        let (pl, pm) = (pair[l], pair[m]);
        if y <= x {
            let ok = pl.is_none_or(|p| p == m) && pm.is_none_or(|p| p == l);
            if !ok {
                continue;
            }
            pair[l] = Some(m);
            pair[m] = Some(l);
        }
        rgs(x + 1, used.max(l + 1), labels, pair, inv, out);
        pair[m] = pm;
        pair[l] = pl;
    }
}

fn orbit_min(classes: &[Vec<usize>], auts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    auts.iter()
        .map(|f| {
            let mut img: Vec<Vec<usize>> = classes
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
        .expect("identity automorphism")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn small_groups() {
        assert_eq!(brute_force_srings(&g("C3")).unwrap().len(), 2);
        assert_eq!(brute_force_srings(&g("C2xC2")).unwrap().len(), 3);
        assert_eq!(brute_force_srings(&g("C4")).unwrap().len(), 3);
        assert_eq!(brute_force_srings(&g("C5")).unwrap().len(), 3);
    }

    #[test]
    fn rgs_without_inverse_constraint_counts_bell_numbers() {
        // all elements self-inverse: every partition passes
        let inv: Vec<usize> = (0..5).collect();
        let mut out = Vec::new();
        rgs(1, 0, &mut vec![0; 5], &mut vec![None; 5], &inv, &mut out);
        assert_eq!(out.len(), 15); // Bell(4)
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(matches!(
            brute_force_srings(&g("C14")),
            Err(Error::Capacity { .. })
        ));
    }
}
