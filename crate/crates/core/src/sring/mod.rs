//! Schur rings over finite abelian groups.
//!
//! An [`SRing`] is kept in canonical form: classes sorted by their least
//! element, so class 0 is always `{e}`. The structure-constant tensor is
//! computed once, during validation.

mod brute;
mod canon;
mod closure;
mod enumerate;
mod multiplier;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian_group::{AbelianGroup, Section, Subgroup};
use crate::error::{Error, Result};
use crate::set::ElementSet;

pub use brute::{brute_force_srings, BRUTE_FORCE_MAX_ORDER};
pub use canon::{canonical_labels, AutomorphismTable};
pub use closure::{closure_of_sets, closure_with, schur_closure};
pub use enumerate::enumerate_srings;
pub use multiplier::{rational_conjugate, schur_wielandt};

pub(crate) use closure::refine_labels;

/// An integer vector of the group ring, one coefficient per element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingVector {
    pub coeffs: Vec<i64>,
}

impl GroupRingVector {
    pub fn zero(n: usize) -> Self {
        GroupRingVector { coeffs: vec![0; n] }
    }

    /// The element `sum_{x in X} x`.
    pub fn indicator(n: usize, x: ElementSet) -> Self {
        let mut v = Self::zero(n);
        for g in x {
            v.coeffs[g] = 1;
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Structure constants `c^k_{ij}`, indexed by class numbers.
#[derive(Clone, PartialEq, Eq)]
pub struct StructureConstants {
    rank: usize,
    data: Vec<u32>,
}

impl StructureConstants {
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.data[(i * self.rank + j) * self.rank + k]
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nonzero entries `(i, j, k, c)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, u32)> + '_ {
        let r = self.rank;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(idx, &c)| (idx / (r * r), (idx / r) % r, idx % r, c))
    }
}

impl fmt::Debug for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.nonzero().map(|(i, j, k, c)| ((i, j, k), c)))
            .finish()
    }
}

/// A Schur ring: a partition of the group satisfying the three axioms.
#[derive(Clone)]
pub struct SRing {
    group: AbelianGroup,
    classes: Vec<ElementSet>,
    class_of: Vec<u8>,
    inverse: Vec<usize>,
    constants: StructureConstants,
}

impl PartialEq for SRing {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.classes == other.classes
    }
}

impl Eq for SRing {}

impl std::hash::Hash for SRing {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.group.hash(state);
        self.classes.hash(state);
    }
}

impl fmt::Debug for SRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SRing({}, {:?})", self.group, self.class_lists())
    }
}

/// Relabels so that labels appear in first-occurrence order.
pub(crate) fn normalize_labels(labels: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    labels
        .iter()
        .map(|&l| {
            if map[l as usize] == u8::MAX {
                map[l as usize] = next;
                next += 1;
            }
            map[l as usize]
        })
        .collect()
}

pub(crate) fn classes_from_labels(labels: &[u8]) -> Vec<ElementSet> {
    let r = labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
    let mut classes = vec![ElementSet::EMPTY; r];
    for (g, &l) in labels.iter().enumerate() {
        classes[l as usize].insert(g);
    }
    classes
}

/// Checks the S-ring axioms and returns the ring in canonical form.
pub fn validate_sring(group: &AbelianGroup, classes: Vec<ElementSet>) -> Result<SRing> {
    let n = group.order();
    let mut union = ElementSet::EMPTY;
    for c in &classes {
        if c.is_empty() {
            return Err(Error::NotPartition("empty class".into()));
        }
        if !c.is_subset(group.all()) {
            return Err(Error::NotPartition(format!(
                "class {:?} has elements outside the group",
                c
            )));
        }
        if !c.is_disjoint(union) {
            return Err(Error::NotPartition(format!("class {:?} overlaps another class", c)));
        }
        union = union.union(*c);
    }
    if union != group.all() {
        return Err(Error::NotPartition(format!(
            "elements {:?} are not covered",
            group.all().difference(union)
        )));
    }
    let mut classes = classes;
    classes.sort_by_key(|c| c.first());
    if classes[0] != ElementSet::singleton(0) {
        return Err(Error::MissingIdentityClass);
    }
    let mut class_of = vec![0u8; n];
    for (i, c) in classes.iter().enumerate() {
        for g in *c {
            class_of[g] = i as u8;
        }
    }
    build(group.clone(), classes, class_of)
}

/// Builds the ring from a canonical partition, checking inverse closure and
/// the module axiom.
fn build(group: AbelianGroup, classes: Vec<ElementSet>, class_of: Vec<u8>) -> Result<SRing> {
    let n = group.order();
    let r = classes.len();
    let mut inverse = vec![0usize; r];
    for (i, c) in classes.iter().enumerate() {
        let inv = group.inverse_set(*c);
        let j = class_of[inv.first().unwrap()] as usize;
        if classes[j] != inv {
            return Err(Error::NotInverseClosed { class: c.to_vec() });
        }
        inverse[i] = j;
    }
    // sub[j * n + z] = z X_j^{-1}, so that |X_i ∩ z X_j^{-1}| counts the
    // representations z = xy with x in X_i, y in X_j.
    let mut sub = vec![ElementSet::EMPTY; r * n];
    for j in 0..r {
        let inv = classes[inverse[j]];
        for z in 0..n {
            sub[j * n + z] = group.translate(inv, z);
        }
    }
    let reps: Vec<usize> = classes.iter().map(|c| c.first().unwrap()).collect();
    let mut data = vec![0u32; r * r * r];
    for i in 0..r {
        for j in i..r {
            for z in 0..n {
                let k = class_of[z] as usize;
                let v = classes[i].intersection(sub[j * n + z]).len() as u32;
                if z == reps[k] {
                    data[(i * r + j) * r + k] = v;
                    data[(j * r + i) * r + k] = v;
                } else {
                    let c1 = data[(i * r + j) * r + k];
                    if c1 != v {
                        return Err(Error::ClosureViolated {
                            x: i,
                            y: j,
                            z1: reps[k],
                            z2: z,
                            c1,
                            c2: v,
                        });
                    }
                }
            }
        }
    }
    Ok(SRing {
        group,
        classes,
        class_of,
        inverse,
        constants: StructureConstants { rank: r, data },
    })
}

/// Builds from labels known to describe an S-ring (closure output).
pub(crate) fn from_labels(group: &AbelianGroup, labels: &[u8]) -> SRing {
    let labels = normalize_labels(labels);
    let classes = classes_from_labels(&labels);
    build(group.clone(), classes, labels).expect("closure output satisfies the S-ring axioms")
}

/// `rad(X) = {g : gX = X}`.
pub fn radical(group: &AbelianGroup, x: ElementSet) -> Subgroup {
    Subgroup {
        set: group
            .elements()
            .filter(|&g| group.translate(x, g) == x)
            .collect(),
    }
}

impl SRing {
    /// The group ring `ZG` itself: every class a singleton.
    pub fn group_ring(group: &AbelianGroup) -> SRing {
        let labels: Vec<u8> = group.elements().map(|g| g as u8).collect();
        from_labels(group, &labels)
    }

    /// The rank-2 ring `{{e}, G#}` (rank 1 for the trivial group).
    pub fn rank_two(group: &AbelianGroup) -> SRing {
        let labels: Vec<u8> = group.elements().map(|g| u8::from(g != 0)).collect();
        from_labels(group, &labels)
    }

    pub fn from_class_lists(group: &AbelianGroup, classes: &[Vec<usize>]) -> Result<SRing> {
        let mut sets = Vec::with_capacity(classes.len());
        for c in classes {
            let mut s = ElementSet::EMPTY;
            for &g in c {
                if g >= group.order() {
                    return Err(Error::NotPartition(format!("element {g} is not in {group}")));
                }
                if s.contains(g) {
                    return Err(Error::NotPartition(format!("element {g} repeated")));
                }
                s.insert(g);
            }
            sets.push(s);
        }
        validate_sring(group, sets)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ElementSet] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> ElementSet {
        self.classes[i]
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g] as usize
    }

    /// Class labels per element, in first-occurrence order.
    pub fn labels(&self) -> &[u8] {
        &self.class_of
    }

    /// Index `i*` with `class(i)^{-1} = class(i*)`.
    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    /// `c^k_{ij}`.
    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> u32 {
        self.constants.get(i, j, k)
    }

    pub fn class_lists(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(|c| c.to_vec()).collect()
    }

    /// Index of a basic set, if `x` is one.
    pub fn index_of(&self, x: ElementSet) -> Option<usize> {
        let i = self.class_of(x.first()?);
        (self.classes[i] == x).then_some(i)
    }

    pub fn is_basic(&self, x: ElementSet) -> bool {
        self.index_of(x).is_some()
    }

    /// True iff `x` is a union of classes.
    pub fn is_a_set(&self, x: ElementSet) -> bool {
        self.classes
            .iter()
            .all(|c| c.is_disjoint(x) || c.is_subset(x))
    }

    /// Classes contained in an A-set.
    pub fn classes_in(&self, x: ElementSet) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.classes[i].is_subset(x))
            .collect()
    }

    pub fn a_subgroups(&self) -> Result<Vec<Subgroup>> {
        Ok(self
            .group
            .all_subgroups()?
            .into_iter()
            .filter(|h| self.is_a_set(h.set))
            .collect())
    }

    pub fn is_group_ring(&self) -> bool {
        self.rank() == self.group.order()
    }

    /// The S-ring `A_S` induced on an A-section `S = U/L`.
    pub fn induced(&self, s: &Section) -> Result<SRing> {
        if !self.is_a_set(s.u.set) || !self.is_a_set(s.l.set) {
            return Err(Error::Precondition(
                "U/L is not an A-section: U and L must be A-subgroups".into(),
            ));
        }
        let mut images: Vec<ElementSet> = Vec::new();
        for c in &self.classes {
            if !c.is_subset(s.u.set) {
                continue;
            }
            let img = s.project_set(*c).expect("class lies inside U");
            if !images.contains(&img) {
                images.push(img);
            }
        }
        validate_sring(&s.quotient, images)
    }

    /// Restriction to an A-subgroup `H`, presented as `H/{e}`.
    pub fn restrict(&self, h: &Subgroup) -> Result<(Section, SRing)> {
        let s = self.group.quotient(h, &self.group.trivial_subgroup())?;
        let r = self.induced(&s)?;
        Ok((s, r))
    }

    /// Orbit-sorted class-size multiset, a cheap algebraic invariant.
    pub fn size_profile(&self) -> Vec<(usize, bool)> {
        let mut v: Vec<(usize, bool)> = (0..self.rank())
            .map(|i| (self.classes[i].len(), self.inverse[i] == i))
            .collect();
        v.sort_unstable();
        v
    }
}

/// The JSON interchange form of an S-ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SRingFile {
    pub group: String,
    pub classes: Vec<Vec<usize>>,
}

impl From<&SRing> for SRingFile {
    fn from(a: &SRing) -> Self {
        SRingFile {
            group: a.group.to_string(),
            classes: a.class_lists(),
        }
    }
}

impl SRingFile {
    pub fn load(&self) -> Result<SRing> {
        let g: AbelianGroup = self.group.parse()?;
        SRing::from_class_lists(&g, &self.classes)
    }
}

impl SRing {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&SRingFile::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<SRing> {
        let f: SRingFile = serde_json::from_str(s)?;
        f.load()
    }
}
