//! Algebraic, combinatorial and Cayley isomorphisms between S-rings.
//!
//! Arc colours follow one convention throughout: the colour of `(g, h)` is
//! the index of the basic set containing `h - g`, so `R(X)` is the arc set
//! of `Cay(G, X)`.

mod search;
mod separability;

use std::sync::Arc;

use crate::abelian_group::Section;
use crate::error::{Error, Result};
use crate::set::ElementSet;
use crate::sring::SRing;

pub use search::{aut_sring, combinatorial_isos, find_inducing_isomorphism, find_inducing_isomorphism_fast, AutGroup, AUT_MATERIALIZE_LIMIT};
pub use separability::{
    catalog, count_extensions, extension_uniqueness_check, separability_check, SeparabilityEntry,
    SeparabilityReport,
};

/// A bijection of basic sets preserving every structure constant.
#[derive(Clone, Debug)]
pub struct AlgebraicIso {
    pub source: Arc<SRing>,
    pub target: Arc<SRing>,
    pub map: Vec<usize>,
}

impl PartialEq for AlgebraicIso {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.source == other.source && self.target == other.target
    }
}

impl Eq for AlgebraicIso {}

impl AlgebraicIso {
    /// Checks the bijection against the full structure-constant tensor.
    pub fn new(source: Arc<SRing>, target: Arc<SRing>, map: Vec<usize>) -> Result<Self> {
        let iso = AlgebraicIso { source, target, map };
        if !iso.is_valid() {
            return Err(Error::InvariantViolation(format!(
                "{:?} is not an algebraic isomorphism",
                iso.map
            )));
        }
        Ok(iso)
    }

    pub fn identity(a: &SRing) -> Self {
        let a = Arc::new(a.clone());
        AlgebraicIso {
            map: (0..a.rank()).collect(),
            source: a.clone(),
            target: a,
        }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// Image of an A-set as the union of the images of its classes.
    pub fn apply_set(&self, x: ElementSet) -> Option<ElementSet> {
        if !self.source.is_a_set(x) {
            return None;
        }
        Some(
            self.source
                .classes_in(x)
                .into_iter()
                .fold(ElementSet::EMPTY, |acc, i| acc.union(self.target.class(self.map[i]))),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_valid(&self) -> bool {
        let (a, b) = (&*self.source, &*self.target);
        let r = a.rank();
        if b.rank() != r || self.map.len() != r {
            return false;
        }
        let mut seen = vec![false; r];
        for &j in &self.map {
            if j >= r || std::mem::replace(&mut seen[j], true) {
                return false;
            }
        }
        (0..r).all(|i| {
            (0..r).all(|j| (0..r).all(|k| a.c(i, j, k) == b.c(self.map[i], self.map[j], self.map[k])))
        })
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &AlgebraicIso) -> Result<AlgebraicIso> {
        if *self.target != *other.source {
            return Err(Error::Usage("composition of non-matching isomorphisms".into()));
        }
        Ok(AlgebraicIso {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&j| other.map[j]).collect(),
        })
    }

    pub fn inverse(&self) -> AlgebraicIso {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        AlgebraicIso {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        }
    }

    /// The induced isomorphism `A_S -> A'_{S^φ}` on an A-section.
    pub fn on_section(&self, s: &Section) -> Result<(Section, AlgebraicIso)> {
        let (a, b) = (&*self.source, &*self.target);
        let u2 = self
            .apply_set(s.u.set)
            .ok_or_else(|| Error::Precondition("U is not an A-subgroup".into()))?;
        let l2 = self
            .apply_set(s.l.set)
            .ok_or_else(|| Error::Precondition("L is not an A-subgroup".into()))?;
        let g2 = b.group();
        let s2 = g2.quotient(&g2.subgroup(u2)?, &g2.subgroup(l2)?)?;
        let induced = Arc::new(a.induced(s)?);
        let induced2 = Arc::new(b.induced(&s2)?);
        let mut map = vec![usize::MAX; induced.rank()];
        for (i, x) in a.classes().iter().enumerate() {
            if !x.is_subset(s.u.set) {
                continue;
            }
            let src = induced.class_of(s.project(x.first().unwrap()).unwrap());
            let y = b.class(self.map[i]);
            let dst = induced2.class_of(s2.project(y.first().unwrap()).unwrap());
            map[src] = dst;
        }
        let iso = AlgebraicIso::new(induced, induced2, map)?;
        Ok((s2, iso))
    }
}

/// An element bijection mapping every relation `R(X)` onto `R(X^f)`.
#[derive(Clone, Debug)]
pub struct CombinatorialIso {
    pub source: Arc<SRing>,
    pub target: Arc<SRing>,
    pub map: Vec<usize>,
}

impl PartialEq for CombinatorialIso {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.source == other.source && self.target == other.target
    }
}

impl Eq for CombinatorialIso {}

impl CombinatorialIso {
    pub fn new(source: Arc<SRing>, target: Arc<SRing>, map: Vec<usize>) -> Result<Self> {
        let f = CombinatorialIso { source, target, map };
        if !f.is_valid() {
            return Err(Error::InvariantViolation(format!(
                "{:?} is not a combinatorial isomorphism",
                f.map
            )));
        }
        Ok(f)
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    /// Class map `X -> {f(x) - f(e) : x in X}`, if every class goes to a
    /// class. For `f(e) = e'` this is `X -> X^f`.
    fn class_map(&self) -> Option<Vec<usize>> {
        let gb = self.target.group();
        let base = self.map[0];
        self.source
            .classes()
            .iter()
            .map(|x| {
                let img: ElementSet = x.iter().map(|g| gb.div(self.map[g], base)).collect();
                self.target.index_of(img)
            })
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        let (a, b) = (&*self.source, &*self.target);
        let n = a.group().order();
        if b.group().order() != n || self.map.len() != n {
            return false;
        }
        let image: ElementSet = self.map.iter().copied().collect();
        if image.len() != n {
            return false;
        }
        let Some(phi) = self.class_map() else {
            return false;
        };
        let (ga, gb) = (a.group(), b.group());
        (0..n).all(|g| {
            (0..n).all(|h| {
                b.class_of(gb.div(self.map[h], self.map[g])) == phi[a.class_of(ga.div(h, g))]
            })
        })
    }
}

/// `φ_f`, the class map induced by `f`.
pub fn induced_algebraic_iso(f: &CombinatorialIso) -> Result<AlgebraicIso> {
    let map = f
        .class_map()
        .ok_or_else(|| Error::InvariantViolation("a class is not mapped onto a class".into()))?;
    AlgebraicIso::new(f.source.clone(), f.target.clone(), map)
}

/// Cheap algebraic invariant of a class.
fn class_key(a: &SRing, i: usize) -> (usize, bool, u32, u32) {
    let inv = a.inverse_class(i);
    (a.class(i).len(), inv == i, a.c(i, i, i), a.c(i, inv, i))
}

/// Backtracking over class bijections in lexicographic order. `allowed`
/// optionally restricts the image of each class to a bitmask of targets.
pub(crate) fn algebraic_search(
    a: &SRing,
    b: &SRing,
    allowed: Option<&[u64]>,
    limit: usize,
) -> Vec<Vec<usize>> {
    let r = a.rank();
    if r != b.rank() || a.group().order() != b.group().order() {
        return Vec::new();
    }
    let keys_b: Vec<_> = (0..r).map(|j| class_key(b, j)).collect();
    let cand: Vec<u64> = (0..r)
        .map(|i| {
            let k = class_key(a, i);
            let mut m = 0u64;
            for j in 0..r {
                if keys_b[j] == k {
                    m |= 1 << j;
                }
            }
            m & allowed.map_or(u64::MAX, |al| al[i])
        })
        .collect();
    if cand.contains(&0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut phi = vec![usize::MAX; r];
    extend(a, b, &cand, 0, 0, &mut phi, limit, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &SRing,
    b: &SRing,
    cand: &[u64],
    i: usize,
    used: u64,
    phi: &mut Vec<usize>,
    limit: usize,
    out: &mut Vec<Vec<usize>>,
) -> bool {
    let r = cand.len();
    if i == r {
        out.push(phi.clone());
        return limit != 0 && out.len() >= limit;
    }
    let mut m = cand[i] & !used;
    while m != 0 {
        let j = m.trailing_zeros() as usize;
        m &= m - 1;
        let inv = a.inverse_class(i);
        if inv < i && phi[inv] != b.inverse_class(j) {
            continue;
        }
        phi[i] = j;
        let consistent = (0..=i).all(|x| {
            (0..=i).all(|y| {
                let pair = a.c(x, y, i) == b.c(phi[x], phi[y], j);
                let edge = x > y || a.c(i, x, y) == b.c(j, phi[x], phi[y]);
                pair && edge
            })
        });
        if consistent && extend(a, b, cand, i + 1, used | 1 << j, phi, limit, out) {
            return true;
        }
        phi[i] = usize::MAX;
    }
    false
}

/// All algebraic isomorphisms `A -> B`, lexicographic in the index sequence.
pub fn algebraic_isos(a: &SRing, b: &SRing) -> Vec<AlgebraicIso> {
    let (sa, sb) = (Arc::new(a.clone()), Arc::new(b.clone()));
    algebraic_search(a, b, None, 0)
        .into_iter()
        .map(|map| AlgebraicIso {
            source: sa.clone(),
            target: sb.clone(),
            map,
        })
        .collect()
}

/// All group isomorphisms `G -> G'` mapping basic sets onto basic sets.
pub fn cayley_isos(a: &SRing, b: &SRing) -> Result<Vec<CombinatorialIso>> {
    cayley_isos_limited(a, b, 0)
}

pub(crate) fn cayley_isos_limited(a: &SRing, b: &SRing, limit: usize) -> Result<Vec<CombinatorialIso>> {
    if a.rank() != b.rank() || a.size_profile() != b.size_profile() {
        return Ok(Vec::new());
    }
    let (sa, sb) = (Arc::new(a.clone()), Arc::new(b.clone()));
    let mut out = Vec::new();
    for f in a.group().isomorphisms_to(b.group())? {
        let ok = a.classes().iter().all(|x| b.is_basic(f.apply_set(*x)));
        if ok {
            out.push(CombinatorialIso {
                source: sa.clone(),
                target: sb.clone(),
                map: f.table.clone(),
            });
            if limit != 0 && out.len() >= limit {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
