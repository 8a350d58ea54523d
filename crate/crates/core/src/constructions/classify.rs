use std::fmt;

use serde::Serialize;

use crate::abelian_group::{is_prime, Subgroup};
use crate::error::{Error, Result};
use crate::isomorphism::cayley_isos_limited;
use crate::set::ElementSet;
use crate::sring::SRing;

use super::family::{build_family, FamilyDescriptor};
use super::is_generalized_wreath;

/// The structural case an S-ring over a group of order `4p` falls into.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    Rank2,
    TrivialZG,
    /// Cayley isomorphic to `A_i(K)`; `witness` maps `G` onto the family group.
    Family {
        descriptor: FamilyDescriptor,
        witness: Vec<usize>,
    },
    /// `A = A_E ⊗ A_P`.
    TensorEP,
    /// `A = A_H ⊗ A_L` for complementary A-subgroups.
    TensorDecomposition { h: Vec<usize>, l: Vec<usize> },
    /// Proper `U/L`-wreath product with `|U/L|` minimal.
    ProperGeneralizedWreath { u: Vec<usize>, l: Vec<usize> },
    /// `cyc(M, C8)` for a group `M` of units mod 8, outside the other cases.
    /// Only reachable for `p = 2`, where `G` is cyclic.
    CyclotomicC8 { multipliers: Vec<u64> },
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::Rank2 => write!(f, "Rank2"),
            Case::TrivialZG => write!(f, "TrivialZG"),
            Case::Family { descriptor, .. } => {
                write!(f, "Family(i={},k={})", descriptor.i, descriptor.k)
            }
            Case::TensorEP => write!(f, "TensorEP"),
            Case::TensorDecomposition { h, l } => write!(f, "TensorDecomposition(H={h:?},L={l:?})"),
            Case::ProperGeneralizedWreath { u, l } => {
                write!(f, "ProperGeneralizedWreath(U={u:?},L={l:?})")
            }
            Case::CyclotomicC8 { multipliers } => write!(f, "CyclotomicC8(M={multipliers:?})"),
        }
    }
}

/// Whether every basic set is `X_H X_L` for complementary subgroups `H`,
/// `L`, i.e. `A = A_H ⊗ A_L` when both are A-subgroups.
pub fn is_tensor(a: &SRing, h: &Subgroup, l: &Subgroup) -> bool {
    let g = a.group();
    if h.order() * l.order() != g.order() || h.set.intersection(l.set) != ElementSet::singleton(0) {
        return false;
    }
    if !a.is_a_set(h.set) || !a.is_a_set(l.set) {
        return false;
    }
    let mut split = vec![(0usize, 0usize); g.order()];
    for x in h.set {
        for y in l.set {
            split[g.mul(x, y)] = (x, y);
        }
    }
    a.classes().iter().all(|c| {
        let xh: ElementSet = c.iter().map(|z| split[z].0).collect();
        let xl: ElementSet = c.iter().map(|z| split[z].1).collect();
        g.product_set(xh, xl) == *c
    })
}

pub fn classify_4p(a: &SRing) -> Result<Case> {
    let g = a.group();
    let n = g.order();
    if !n.is_multiple_of(4) || !is_prime((n / 4) as u64) {
        return Err(Error::Precondition(format!("|G| = {n} is not 4p")));
    }
    let p = (n / 4) as u32;
    if a.rank() == 2 {
        return Ok(Case::Rank2);
    }
    if a.is_group_ring() {
        return Ok(Case::TrivialZG);
    }
    if p >= 3 {
        for d in FamilyDescriptor::all_for_prime(p) {
            if d.group()? != *g {
                continue;
            }
            let b = build_family(&d)?;
            if b.rank() != a.rank() {
                continue;
            }
            if let Some(f) = cayley_isos_limited(a, &b, 1)?.pop() {
                return Ok(Case::Family {
                    descriptor: d,
                    witness: f.map,
                });
            }
        }
        let (e, pp) = (g.torsion(4), g.torsion(p as i64));
        if is_tensor(a, &e, &pp) {
            return Ok(Case::TensorEP);
        }
    }
    let subgroups = a.a_subgroups()?;
    for h in &subgroups {
        if h.order() == 1 || h.order() == n {
            continue;
        }
        for l in &subgroups {
            if is_tensor(a, h, l) {
                return Ok(Case::TensorDecomposition {
                    h: h.set.to_vec(),
                    l: l.set.to_vec(),
                });
            }
        }
    }
    let mut best: Option<(usize, &Subgroup, &Subgroup)> = None;
    for u in &subgroups {
        if u.order() == n {
            continue;
        }
        for l in &subgroups {
            if l.order() == 1 || !l.is_subgroup_of(u) {
                continue;
            }
            let index = u.order() / l.order();
            if best.is_some_and(|(b, _, _)| b <= index) {
                continue;
            }
            if is_generalized_wreath(a, u, l)?.holds {
                best = Some((index, u, l));
            }
        }
    }
    if let Some((_, u, l)) = best {
        return Ok(Case::ProperGeneralizedWreath {
            u: u.set.to_vec(),
            l: l.set.to_vec(),
        });
    }
    if n == 8 && g.is_cyclic() {
        for m in [[1, 3], [1, 5], [1, 7]] {
            let orbits = g.elements().all(|x| {
                let orbit: ElementSet = m.iter().map(|&k| g.pow(x, k)).collect();
                orbit.is_subset(a.class(a.class_of(x)))
                    && a.class(a.class_of(x)).len() == orbit.len()
            });
            if orbits {
                return Ok(Case::CyclotomicC8 {
                    multipliers: m.iter().map(|&k| k as u64).collect(),
                });
            }
        }
    }
    Err(Error::ClassificationGap(format!("{a:?}")))
}
