//! Products, cyclotomic S-rings, subdirect products, the order-`4p`
//! families and the classifier.

mod classify;
mod family;
mod subdirect;

use crate::abelian_group::{AbelianGroup, GroupMorphism, Subgroup};
use crate::error::{Error, Result};
use crate::set::ElementSet;
use crate::sring::{radical, validate_sring, SRing};

pub use classify::{classify_4p, is_tensor, Case};
pub use family::{build_family, build_family_with, family_automorphisms, FamilyDescriptor, Twist};
pub use subdirect::{subdirect_product, subdirect_target, CyclicAutGroup};

/// `A1 ⊗ A2` over `G1 × G2`.
pub fn tensor_product(a1: &SRing, a2: &SRing) -> Result<SRing> {
    let g = a1.group().direct_product(a2.group())?;
    let n2 = a2.group().order();
    let mut classes = Vec::with_capacity(a1.rank() * a2.rank());
    for x in a1.classes() {
        for y in a2.classes() {
            classes.push(
                x.iter()
                    .flat_map(|i| y.iter().map(move |j| i * n2 + j))
                    .collect(),
            );
        }
    }
    validate_sring(&g, classes)
}

/// `A_L ≀ A_{G/L}`: the classes of `A_L` inside `L` and the full preimages
/// of the nonidentity classes of `A_{G/L}`.
pub fn wreath_product(a_l: &SRing, a_q: &SRing, g: &AbelianGroup, l: &Subgroup) -> Result<SRing> {
    let inner = g.quotient(l, &g.trivial_subgroup())?;
    let outer = g.quotient(&g.whole(), l)?;
    if a_l.group() != &inner.quotient {
        return Err(Error::Usage(format!(
            "A_L is over {}, expected {}",
            a_l.group(),
            inner.quotient
        )));
    }
    if a_q.group() != &outer.quotient {
        return Err(Error::Usage(format!(
            "A_Q is over {}, expected G/L = {}",
            a_q.group(),
            outer.quotient
        )));
    }
    let mut classes: Vec<ElementSet> = a_l.classes().iter().map(|x| inner.preimage(*x)).collect();
    classes.extend(a_q.classes()[1..].iter().map(|y| outer.preimage(*y)));
    validate_sring(g, classes)
}

/// Result of testing for a `U/L`-wreath product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WreathCheck {
    pub holds: bool,
    /// `L != {e}` and `U != G`.
    pub proper: bool,
}

/// Whether `L <= rad(X)` for every basic set `X` outside `U`.
pub fn is_generalized_wreath(a: &SRing, u: &Subgroup, l: &Subgroup) -> Result<WreathCheck> {
    if !a.is_a_set(u.set) || !a.is_a_set(l.set) || !l.is_subgroup_of(u) {
        return Err(Error::Precondition("U/L is not an A-section".into()));
    }
    let g = a.group();
    let holds = a
        .classes()
        .iter()
        .filter(|x| !x.is_subset(u.set))
        .all(|x| l.set.is_subset(radical(g, *x).set));
    Ok(WreathCheck {
        holds,
        proper: l.order() > 1 && u.order() < g.order(),
    })
}

/// `cyc(K, G)`: the orbit partition of a group of automorphisms.
pub fn cyclotomic(k: &[GroupMorphism], g: &AbelianGroup) -> Result<SRing> {
    for f in k {
        if &f.domain != g || &f.codomain != g || !f.is_bijective() {
            return Err(Error::Precondition(format!(
                "{:?} is not an automorphism of {g}",
                f.generator_images
            )));
        }
    }
    let tables: Vec<&[usize]> = k.iter().map(|f| f.table.as_slice()).collect();
    for f in k {
        for h in k {
            let comp: Vec<usize> = f.table.iter().map(|&x| h.table[x]).collect();
            if !tables.contains(&comp.as_slice()) {
                return Err(Error::Precondition("K is not closed under composition".into()));
            }
        }
    }
    cyclotomic_from_tables(&tables, g)
}

/// Orbits without the closure check, for groups built here.
pub(crate) fn cyclotomic_from_tables(tables: &[&[usize]], g: &AbelianGroup) -> Result<SRing> {
    let mut seen = ElementSet::EMPTY;
    let mut classes = Vec::new();
    for x in g.elements() {
        if seen.contains(x) {
            continue;
        }
        let mut orbit: ElementSet = std::iter::once(x).collect();
        orbit = orbit.union(tables.iter().map(|t| t[x]).collect());
        seen = seen.union(orbit);
        classes.push(orbit);
    }
    validate_sring(g, classes)
}

/// Basic sets generating the whole group.
pub fn highest_basic_sets(a: &SRing) -> Vec<ElementSet> {
    let g = a.group();
    a.classes()
        .iter()
        .copied()
        .filter(|x| g.generated_subgroup(*x).order() == g.order())
        .collect()
}

#[cfg(test)]
mod tests;
