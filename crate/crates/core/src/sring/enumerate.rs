//! Enumeration of all S-rings over a group up to Cayley isomorphism.
//!
//! S-rings form a lattice under inclusion. If `A < B` then some basic set
//! `Y` of `B` lies strictly inside a basic set `C` of `A`, and
//! `A < <A, Y> <= B`. So every S-ring is reached from the rank-2 ring by
//! repeatedly closing `A` together with a suitable subset of one of its
//! classes. The search runs breadth-first over canonical representatives:
//! each explored ring is the lexicographically least member of its
//! `Aut(G)`-orbit.
//!
//! The seeds come from the power maps `x -> x^m` (`m` a unit mod the
//! exponent), which permute the basic sets of every S-ring. Let `M_C` be
//! the units fixing `C` and `Y* = ∪ Y^(m), m ∈ M_C`, a `B`-set inside `C`.
//! - If `Y* != C`, the seed `Y*` is a proper union of `M_C`-orbits on `C`.
//!   These are taken up to the part of `Stab_{Aut(G)}(A)` fixing `C` and
//!   up to complement, as `<A, Y> = <A, C \ Y>`.
//! - Otherwise the conjugates of `Y` partition `C`. With `H` the stabilizer
//!   of `Y` in `M_C`, `Y` contains exactly one `H`-orbit of each
//!   `M_C`-orbit, and `H` contains every point stabilizer. These
//!   transversals are tried for every such proper `H`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::abelian_group::{check_capacity, gcd, AbelianGroup};
use crate::error::{Error, Result};
use crate::set::ElementSet;

use super::canon::{canonical_labels, AutomorphismTable};
use super::{classes_from_labels, from_labels, refine_labels, SRing};

/// Largest number of orbits inside one basic set that the seed search will
/// take unions of.
const MAX_SPLIT_PIECES: usize = 24;
/// Largest number of transversal seeds tried for one class and one `H`.
const MAX_TRANSVERSALS: usize = 1 << 22;

fn units(g: &AbelianGroup) -> Vec<i64> {
    let exp = g.exponent() as u64;
    (1..=exp.max(1))
        .filter(|&m| gcd(m, exp) == 1)
        .map(|m| m as i64)
        .collect()
}

/// Subgroups of a multiplicative group of units mod `e`, as sorted lists.
fn unit_subgroups(group: &[i64], e: i64) -> Vec<Vec<i64>> {
    let close = |gens: &BTreeSet<i64>| -> BTreeSet<i64> {
        let mut s: BTreeSet<i64> = BTreeSet::from([1 % e.max(1)]);
        let mut frontier: Vec<i64> = s.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = (x * g).rem_euclid(e.max(1));
                if s.insert(y) {
                    frontier.push(y);
                }
            }
        }
        s
    };
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = vec![close(&BTreeSet::new())];
    while let Some(s) = queue.pop() {
        if !found.insert(s.iter().copied().collect()) {
            continue;
        }
        for &m in group {
            if !s.contains(&m.rem_euclid(e.max(1))) {
                let mut gens = s.clone();
                gens.insert(m.rem_euclid(e.max(1)));
                queue.push(close(&gens));
            }
        }
    }
    found.into_iter().collect()
}

fn orbits_under(g: &AbelianGroup, c: ElementSet, maps: &[i64]) -> Vec<ElementSet> {
    let mut seen = ElementSet::EMPTY;
    let mut out = Vec::new();
    for x in c {
        if !seen.contains(x) {
            let o: ElementSet = maps.iter().map(|&m| g.pow(x, m)).collect();
            seen = seen.union(o);
            out.push(o);
        }
    }
    out
}

pub fn enumerate_srings(g: &AbelianGroup) -> Result<Vec<SRing>> {
    check_capacity(g.order())?;
    let n = g.order();
    if n == 1 {
        return Ok(vec![SRing::group_ring(g)]);
    }
    let auts = AutomorphismTable::new(g)?;
    let units = units(g);
    let exp = g.exponent() as i64;

    let start: Vec<u8> = (0..n).map(|x| u8::from(x != 0)).collect();
    let start = canonical_labels(&refine_labels(g, &start), &auts);
    let mut found: HashSet<Vec<u8>> = HashSet::new();
    let mut raw_seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue = VecDeque::new();
    found.insert(start.clone());
    queue.push_back(start);

    while let Some(lab) = queue.pop_front() {
        let stab = auts.stabilizer(&lab);
        let classes = classes_from_labels(&lab);
        let next_label = classes.len() as u8;
        let mut try_seed = |y: ElementSet| {
            let mut l2 = lab.clone();
            for x in y {
                l2[x] = next_label;
            }
            let b = refine_labels(g, &l2);
            if raw_seen.insert(b.clone()) {
                let canon = canonical_labels(&b, &auts);
                if found.insert(canon.clone()) {
                    queue.push_back(canon);
                }
            }
        };
        for c in &classes {
            if c.len() < 2 {
                continue;
            }
            let mc: Vec<i64> = units
                .iter()
                .copied()
                .filter(|&m| g.power_set(*c, m) == *c)
                .collect();
            let pieces = orbits_under(g, *c, &mc);

            let k = pieces.len();
            if k >= 2 {
                if k > MAX_SPLIT_PIECES {
                    return Err(Error::Capacity {
                        order: n,
                        bound: MAX_SPLIT_PIECES,
                    });
                }
                let gens = generating_set(induced_perms(&auts, &stab, *c, &pieces), k);
                for mask in seed_masks(k, &gens) {
                    let y = (0..k)
                        .filter(|&i| mask >> i & 1 == 1)
                        .fold(ElementSet::EMPTY, |acc, i| acc.union(pieces[i]));
                    try_seed(y);
                }
            }

            // transversal seeds; H must contain every point stabilizer
            let point_stab: Vec<i64> = mc
                .iter()
                .copied()
                .filter(|&m| c.iter().any(|x| g.pow(x, m) == x))
                .collect();
            for h in unit_subgroups(&mc, exp) {
                if h.len() == mc.len() || !point_stab.iter().all(|m| h.contains(m)) {
                    continue;
                }
                let atoms: Vec<Vec<ElementSet>> = pieces
                    .iter()
                    .map(|o| orbits_under(g, *o, &h))
                    .collect();
                let q = mc.len() / h.len();
                debug_assert!(atoms.iter().all(|a| a.len() == q));
                let total = atoms[1..]
                    .iter()
                    .try_fold(1usize, |acc, a| acc.checked_mul(a.len()))
                    .filter(|&t| t <= MAX_TRANSVERSALS)
                    .ok_or(Error::Capacity {
                        order: n,
                        bound: MAX_TRANSVERSALS,
                    })?;
                for mut idx in 0..total {
                    let mut y = atoms[0][0];
                    for a in &atoms[1..] {
                        y = y.union(a[idx % a.len()]);
                        idx /= a.len();
                    }
                    try_seed(y);
                }
            }
        }
    }

    let mut out: Vec<SRing> = found.iter().map(|l| from_labels(g, l)).collect();
    out.sort_by_cached_key(|a| (a.rank(), a.class_lists()));
    Ok(out)
}

/// Permutations of `pieces` induced by the stabilizer elements fixing `c`.
fn induced_perms(
    auts: &AutomorphismTable,
    stab: &[usize],
    c: ElementSet,
    pieces: &[ElementSet],
) -> Vec<Vec<u8>> {
    let mut index_of = HashMap::new();
    for (i, p) in pieces.iter().enumerate() {
        for x in *p {
            index_of.insert(x, i);
        }
    }
    let mut induced: Vec<Vec<u8>> = Vec::new();
    for &a in stab {
        let perm = &auts.perms[a];
        let image: ElementSet = c.iter().map(|x| perm[x] as usize).collect();
        if image != c {
            continue;
        }
        let p: Vec<u8> = pieces
            .iter()
            .map(|piece| index_of[&(perm[piece.first().unwrap()] as usize)] as u8)
            .collect();
        if !induced.contains(&p) {
            induced.push(p);
        }
    }
    induced
}

/// A generating set for the permutation group spanned by `perms`.
fn generating_set(perms: Vec<Vec<u8>>, k: usize) -> Vec<Vec<u8>> {
    let identity: Vec<u8> = (0..k as u8).collect();
    let mut gens: Vec<Vec<u8>> = Vec::new();
    let mut group: HashSet<Vec<u8>> = HashSet::from([identity.clone()]);
    for p in perms {
        if group.contains(&p) {
            continue;
        }
        gens.push(p);
        // close under right multiplication by the generators
        let mut frontier: Vec<Vec<u8>> = group.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for s in &gens {
                let y: Vec<u8> = x.iter().map(|&i| s[i as usize]).collect();
                if group.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

/// Orbit representatives of the proper nonempty subsets of `k` pieces under
/// the generators and complementation.
fn seed_masks(k: usize, gens: &[Vec<u8>]) -> Vec<u32> {
    let full: u32 = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    let size = full as usize + 1;
    let mut parent: Vec<u32> = (0..size as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let p = parent[parent[x as usize] as usize];
            parent[x as usize] = p;
            x = p;
        }
        x
    }
    fn union(parent: &mut [u32], a: u32, b: u32) {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi as usize] = lo;
        }
    }
    for mask in 1..full {
        union(&mut parent, mask, full ^ mask);
        for s in gens {
            let mut img = 0u32;
            let mut m = mask;
            while m != 0 {
                let i = m.trailing_zeros();
                img |= 1 << s[i as usize];
                m &= m - 1;
            }
            union(&mut parent, mask, img);
        }
    }
    (1..full)
        .filter(|&m| find(&mut parent, m) == m)
        .collect()
}
