//! Finite abelian groups presented as products of cyclic groups.
//!
//! Elements are encoded by a mixed-radix index over the factors in
//! declaration order, the first factor being the most significant digit.
//! The identity is index 0. With this encoding the index of a pair
//! `(g1, g2)` in a direct product `G1 x G2` is `g1 * |G2| + g2`.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::ElementSet;

/// Hard ceiling imposed by the 64-bit element sets.
pub const MAX_ORDER: usize = 64;

/// Default bound on the group order for the exhaustive operations.
pub const DEFAULT_CAPACITY: usize = 64;

/// Environment variable that lowers (or restores) the capacity bound.
pub const CAPACITY_ENV: &str = "SCHUR_CAPACITY";

/// The capacity bound in force: `SCHUR_CAPACITY` if set and valid, else the
/// default. Never above [`MAX_ORDER`].
pub fn capacity() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(CAPACITY_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .unwrap_or(DEFAULT_CAPACITY)
            .min(MAX_ORDER)
    })
}

pub(crate) fn check_capacity(order: usize) -> Result<()> {
    let bound = capacity();
    if order > bound {
        Err(Error::Capacity { order, bound })
    } else {
        Ok(())
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Prime factorization as `(prime, exponent)` pairs, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A finite abelian group `C_{n1} x .. x C_{nk}`.
#[derive(Clone)]
pub struct AbelianGroup {
    factors: Vec<u32>,
    order: usize,
    add: Arc<[u8]>,
    neg: Arc<[u8]>,
}

impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for AbelianGroup {}

impl std::hash::Hash for AbelianGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.factors.hash(state);
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({self})")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "C1");
        }
        for (i, n) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "C{n}")?;
        }
        Ok(())
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group(s)
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_group(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses `C<int>` factors joined by `x`, e.g. `C2xC2xC7`. Whitespace is not
/// allowed and every factor must be at least 1.
pub fn parse_group(spec: &str) -> Result<AbelianGroup> {
    let bytes = spec.as_bytes();
    let mut factors = Vec::new();
    let mut pos = 0;
    if bytes.is_empty() {
        return Err(Error::Parse {
            position: 0,
            message: "empty group spec".into(),
        });
    }
    loop {
        if bytes.get(pos) != Some(&b'C') {
            return Err(Error::Parse {
                position: pos,
                message: "expected 'C'".into(),
            });
        }
        pos += 1;
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Parse {
                position: pos,
                message: "expected a decimal factor order".into(),
            });
        }
        let n: u64 = spec[start..pos].parse().map_err(|_| Error::Parse {
            position: start,
            message: "factor order out of range".into(),
        })?;
        if n == 0 {
            return Err(Error::Parse {
                position: start,
                message: "factor order must be at least 1".into(),
            });
        }
        if n as usize > MAX_ORDER {
            return Err(Error::Capacity {
                order: n as usize,
                bound: MAX_ORDER,
            });
        }
        factors.push(n as u32);
        match bytes.get(pos) {
            None => break,
            Some(b'x') => pos += 1,
            Some(_) => {
                return Err(Error::Parse {
                    position: pos,
                    message: "expected 'x' or end of input".into(),
                })
            }
        }
    }
    AbelianGroup::new(factors)
}

impl AbelianGroup {
    /// Builds the group with the given cyclic factor orders.
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::Parse {
                position: 0,
                message: "factor order must be at least 1".into(),
            });
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n as usize))
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(Error::Capacity {
                order: usize::MAX,
                bound: MAX_ORDER,
            })?;
        let residues: Vec<Vec<u32>> = (0..order).map(|g| decode(&factors, g)).collect();
        let mut add = vec![0u8; order * order];
        let mut neg = vec![0u8; order];
        for a in 0..order {
            for b in 0..order {
                let r: Vec<u32> = residues[a]
                    .iter()
                    .zip(&residues[b])
                    .zip(&factors)
                    .map(|((x, y), n)| (x + y) % n)
                    .collect();
                add[a * order + b] = encode(&factors, &r) as u8;
            }
            let r: Vec<u32> = residues[a]
                .iter()
                .zip(&factors)
                .map(|(x, n)| (n - x) % n)
                .collect();
            neg[a] = encode(&factors, &r) as u8;
        }
        Ok(AbelianGroup {
            factors,
            order,
            add: add.into(),
            neg: neg.into(),
        })
    }

    /// The cyclic group of order `n`.
    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    /// Residue tuple of an element index.
    pub fn residues(&self, g: usize) -> Vec<u32> {
        decode(&self.factors, g)
    }

    /// Element index of a residue tuple; residues are reduced modulo the
    /// factor orders.
    pub fn element(&self, residues: &[u32]) -> Result<usize> {
        if residues.len() != self.factors.len() {
            return Err(Error::Usage(format!(
                "expected {} residues for {}, got {}",
                self.factors.len(),
                self,
                residues.len()
            )));
        }
        let r: Vec<u32> = residues
            .iter()
            .zip(&self.factors)
            .map(|(x, n)| x % n)
            .collect();
        Ok(encode(&self.factors, &r))
    }

    /// The canonical generator of the `i`-th cyclic factor.
    pub fn generator(&self, i: usize) -> usize {
        let mut r = vec![0; self.factors.len()];
        r[i] = 1 % self.factors[i];
        encode(&self.factors, &r)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// `a * b^{-1}`.
    #[inline]
    pub fn div(&self, a: usize, b: usize) -> usize {
        self.mul(a, self.inv(b))
    }

    fn check_element(&self, g: usize) -> Result<()> {
        if g >= self.order {
            Err(Error::Usage(format!(
                "element {g} does not belong to {self} (order {})",
                self.order
            )))
        } else {
            Ok(())
        }
    }

    /// Checked multiplication: rejects indices that do not belong to this
    /// group.
    pub fn try_mul(&self, a: usize, b: usize) -> Result<usize> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.mul(a, b))
    }

    pub fn try_inv(&self, a: usize) -> Result<usize> {
        self.check_element(a)?;
        Ok(self.inv(a))
    }

    /// `g^m` for any integer `m`.
    pub fn pow(&self, g: usize, m: i64) -> usize {
        let r: Vec<u32> = self
            .residues(g)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &n)| (x as i64 * m).rem_euclid(n as i64) as u32)
            .collect();
        encode(&self.factors, &r)
    }

    pub fn elem_order(&self, g: usize) -> usize {
        self.residues(g)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &n)| (n / gcd(x as u64, n as u64) as u32) as u64)
            .fold(1, lcm) as usize
    }

    /// Exponent of the group (lcm of factor orders).
    pub fn exponent(&self) -> usize {
        self.factors.iter().fold(1u64, |acc, &n| lcm(acc, n as u64)) as usize
    }

    pub fn is_cyclic(&self) -> bool {
        self.exponent() == self.order
    }

    /// `gX`.
    pub fn translate(&self, x: ElementSet, g: usize) -> ElementSet {
        x.iter().map(|y| self.mul(y, g)).collect()
    }

    /// `X^{-1}`.
    pub fn inverse_set(&self, x: ElementSet) -> ElementSet {
        x.iter().map(|y| self.inv(y)).collect()
    }

    /// `X^{(m)} = {x^m}`.
    pub fn power_set(&self, x: ElementSet, m: i64) -> ElementSet {
        x.iter().map(|y| self.pow(y, m)).collect()
    }

    /// `XY = {xy}`.
    pub fn product_set(&self, x: ElementSet, y: ElementSet) -> ElementSet {
        let mut out = ElementSet::EMPTY;
        for a in x {
            out = out.union(self.translate(y, a));
        }
        out
    }

    /// Direct product `self x other`, factors concatenated.
    pub fn direct_product(&self, other: &AbelianGroup) -> Result<AbelianGroup> {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        AbelianGroup::new(f)
    }

    /// Smallest subgroup containing `x`.
    pub fn generated_subgroup(&self, x: ElementSet) -> Subgroup {
        let mut s = x.union(ElementSet::singleton(0));
        loop {
            let next = s.union(self.product_set(s, x));
            if next == s {
                return Subgroup { set: s };
            }
            s = next;
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            set: ElementSet::singleton(0),
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { set: self.all() }
    }

    /// `{g : g^m = e}`.
    pub fn torsion(&self, m: i64) -> Subgroup {
        Subgroup {
            set: self.elements().filter(|&g| self.pow(g, m) == 0).collect(),
        }
    }

    /// Wraps a set as a subgroup after checking closure.
    pub fn subgroup(&self, set: ElementSet) -> Result<Subgroup> {
        if !set.contains(0) || !set.is_subset(self.all()) {
            return Err(Error::Usage(format!("{set:?} is not a subgroup of {self}")));
        }
        if !self.product_set(set, set).is_subset(set) {
            return Err(Error::Usage(format!("{set:?} is not closed in {self}")));
        }
        Ok(Subgroup { set })
    }

    /// Every subgroup, sorted by order and then by element list.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        check_capacity(self.order)?;
        let mut found = vec![self.trivial_subgroup()];
        let mut seen: std::collections::HashSet<ElementSet> = found.iter().map(|h| h.set).collect();
        let mut i = 0;
        while i < found.len() {
            let h = found[i].set;
            for g in self.elements() {
                if h.contains(g) {
                    continue;
                }
                let k = self.generated_subgroup(h.union(ElementSet::singleton(g)));
                if seen.insert(k.set) {
                    found.push(k);
                }
            }
            i += 1;
        }
        found.sort_by_key(|h| (h.order(), h.set.to_vec()));
        Ok(found)
    }

    fn table(&self) -> Table {
        Table {
            n: self.order,
            add: self.add.to_vec(),
            order: self.elements().map(|g| self.elem_order(g)).collect(),
        }
    }

    /// All automorphisms, in lexicographic order of generator images.
    pub fn automorphisms(&self) -> Result<Vec<GroupMorphism>> {
        self.isomorphisms_to(self)
    }

    /// All isomorphisms `self -> other`; empty iff the groups are not
    /// isomorphic.
    pub fn isomorphisms_to(&self, other: &AbelianGroup) -> Result<Vec<GroupMorphism>> {
        check_capacity(self.order)?;
        check_capacity(other.order)?;
        if self.order != other.order {
            return Ok(Vec::new());
        }
        let target = other.table();
        Ok(injective_images(&self.factors, &target, usize::MAX)
            .into_iter()
            .map(|imgs| GroupMorphism::from_generator_images(self, other, &imgs))
            .collect())
    }

    /// Projection `U -> U/L` presented as a product of cyclic groups.
    pub fn quotient(&self, u: &Subgroup, l: &Subgroup) -> Result<Section> {
        if !l.set.is_subset(u.set) {
            return Err(Error::Usage(format!(
                "{:?} is not contained in {:?}",
                l.set, u.set
            )));
        }
        if l.order() == 1 && u.order() == self.order {
            return Ok(Section {
                u: u.clone(),
                l: l.clone(),
                quotient: self.clone(),
                projection: self.elements().map(|g| Some(g as u8)).collect(),
            });
        }
        // coset id = position of the coset's least element among coset minima
        let mut reps: Vec<usize> = Vec::new();
        let mut coset_of = vec![usize::MAX; self.order];
        for x in u.set {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for y in self.translate(l.set, x) {
                coset_of[y] = id;
            }
        }
        let q = reps.len();
        let mut add = vec![0u8; q * q];
        for i in 0..q {
            for j in 0..q {
                add[i * q + j] = coset_of[self.mul(reps[i], reps[j])] as u8;
            }
        }
        let mut order = vec![1usize; q];
        for (i, o) in order.iter_mut().enumerate() {
            let mut c = i;
            while c != 0 {
                c = add[c * q + i] as usize;
                *o += 1;
            }
        }
        let table = Table { n: q, add, order };
        for factors in abelian_groups_of_order(q as u64) {
            let found = injective_images(&factors, &table, 1);
            if let Some(imgs) = found.into_iter().next() {
                let qg = AbelianGroup::new(factors)?;
                // presentation element -> coset id
                let mut to_coset = vec![0usize; q];
                for (idx, slot) in to_coset.iter_mut().enumerate() {
                    let r = qg.residues(idx);
                    let mut c = 0;
                    for (k, &rk) in r.iter().enumerate() {
                        for _ in 0..rk {
                            c = table.add[c * q + imgs[k]] as usize;
                        }
                    }
                    *slot = c;
                }
                let mut from_coset = vec![0usize; q];
                for (idx, &c) in to_coset.iter().enumerate() {
                    from_coset[c] = idx;
                }
                let projection = self
                    .elements()
                    .map(|g| {
                        if u.set.contains(g) {
                            Some(from_coset[coset_of[g]] as u8)
                        } else {
                            None
                        }
                    })
                    .collect();
                return Ok(Section {
                    u: u.clone(),
                    l: l.clone(),
                    quotient: qg,
                    projection,
                });
            }
        }
        Err(Error::InvariantViolation(
            "quotient is not isomorphic to any abelian group of its order".into(),
        ))
    }
}

fn decode(factors: &[u32], mut g: usize) -> Vec<u32> {
    let mut r = vec![0u32; factors.len()];
    for (i, &n) in factors.iter().enumerate().rev() {
        r[i] = (g % n as usize) as u32;
        g /= n as usize;
    }
    r
}

fn encode(factors: &[u32], residues: &[u32]) -> usize {
    residues
        .iter()
        .zip(factors)
        .fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize)
}

/// Every abelian group of order `n` in primary form: prime-power factors,
/// primes ascending, exponents descending within each prime.
pub fn abelian_groups_of_order(n: u64) -> Vec<Vec<u32>> {
    fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=n.min(max)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for prefix in &out {
            for part in partitions(e, e) {
                let mut f = prefix.clone();
                f.extend(part.iter().map(|&k| (p as u32).pow(k)));
                next.push(f);
            }
        }
        out = next;
    }
    if n == 1 {
        return vec![vec![1]];
    }
    out
}

/// Every abelian group of order `n` as a group value.
pub fn all_abelian_groups(n: usize) -> Result<Vec<AbelianGroup>> {
    abelian_groups_of_order(n as u64)
        .into_iter()
        .map(AbelianGroup::new)
        .collect()
}

/// Target of a morphism search: a finite abelian group given by its table.
struct Table {
    n: usize,
    add: Vec<u8>,
    order: Vec<usize>,
}

/// Generator-image tuples of injective homomorphisms from the cyclic
/// product with the given factors into `target`. Images are restricted to
/// elements whose order divides the factor, and a partial tuple is kept only
/// while the span of its images has full size.
fn injective_images(factors: &[u32], target: &Table, limit: usize) -> Vec<Vec<usize>> {
    fn rec(
        factors: &[u32],
        t: &Table,
        span: ElementSet,
        imgs: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let i = imgs.len();
        if i == factors.len() {
            out.push(imgs.clone());
            return;
        }
        let ni = factors[i] as usize;
        for x in 0..t.n {
            if !ni.is_multiple_of(t.order[x]) {
                continue;
            }
            let mut next = span;
            let mut mult = 0usize;
            let mut ok = true;
            for _ in 1..ni {
                mult = t.add[mult * t.n + x] as usize;
                let shifted: ElementSet = span.iter().map(|s| t.add[s * t.n + mult] as usize).collect();
                if !shifted.is_disjoint(next) {
                    ok = false;
                    break;
                }
                next = next.union(shifted);
            }
            if !ok {
                continue;
            }
            imgs.push(x);
            rec(factors, t, next, imgs, out, limit);
            imgs.pop();
            if out.len() >= limit {
                return;
            }
        }
    }
    let size: usize = factors.iter().map(|&n| n as usize).product();
    if size != target.n {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(
        factors,
        target,
        ElementSet::singleton(0),
        &mut Vec::new(),
        &mut out,
        limit,
    );
    out
}

/// A subgroup, stored as its element set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subgroup {
    pub set: ElementSet,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.set.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.set.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.set.is_subset(other.set)
    }
}

/// A section `U/L` with an explicit presentation of the quotient.
#[derive(Clone, Debug)]
pub struct Section {
    pub u: Subgroup,
    pub l: Subgroup,
    pub quotient: AbelianGroup,
    /// `projection[g]` is the image of `g` in the quotient, `None` outside `U`.
    pub projection: Vec<Option<u8>>,
}

impl Section {
    pub fn project(&self, g: usize) -> Option<usize> {
        self.projection[g].map(usize::from)
    }

    /// Image of a subset of `U`.
    pub fn project_set(&self, x: ElementSet) -> Option<ElementSet> {
        let mut out = ElementSet::EMPTY;
        for g in x {
            out.insert(self.project(g)?);
        }
        Some(out)
    }

    /// Full preimage in `U` of a subset of the quotient.
    pub fn preimage(&self, y: ElementSet) -> ElementSet {
        self.projection
            .iter()
            .enumerate()
            .filter(|(_, q)| q.is_some_and(|q| y.contains(q as usize)))
            .map(|(g, _)| g)
            .collect()
    }

    /// For `L` trivial: the element of `U` mapping to quotient element `q`.
    pub fn lift(&self, q: usize) -> Option<usize> {
        self.projection
            .iter()
            .position(|&p| p == Some(q as u8))
    }
}

/// A homomorphism between two presented groups, with its full table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupMorphism {
    pub domain: AbelianGroup,
    pub codomain: AbelianGroup,
    pub generator_images: Vec<usize>,
    pub table: Vec<usize>,
}

impl GroupMorphism {
    /// Extends images of the canonical generators linearly. The caller is
    /// responsible for order compatibility; see [`GroupMorphism::new`].
    fn from_generator_images(dom: &AbelianGroup, cod: &AbelianGroup, imgs: &[usize]) -> Self {
        let table = dom
            .elements()
            .map(|g| {
                dom.residues(g)
                    .iter()
                    .zip(imgs)
                    .fold(0, |acc, (&r, &img)| cod.mul(acc, cod.pow(img, r as i64)))
            })
            .collect();
        GroupMorphism {
            domain: dom.clone(),
            codomain: cod.clone(),
            generator_images: imgs.to_vec(),
            table,
        }
    }

    /// Homomorphism determined by generator images; rejects images whose
    /// order does not divide the generator's order.
    pub fn new(dom: &AbelianGroup, cod: &AbelianGroup, imgs: &[usize]) -> Result<Self> {
        if imgs.len() != dom.factors().len() {
            return Err(Error::Usage("wrong number of generator images".into()));
        }
        for (i, &img) in imgs.iter().enumerate() {
            if img >= cod.order() || !(dom.factors()[i] as usize).is_multiple_of(cod.elem_order(img)) {
                return Err(Error::Usage(format!(
                    "image {img} of generator {i} violates the relation g^{} = e",
                    dom.factors()[i]
                )));
            }
        }
        Ok(Self::from_generator_images(dom, cod, imgs))
    }

    pub fn identity(g: &AbelianGroup) -> Self {
        let imgs: Vec<usize> = (0..g.factors().len()).map(|i| g.generator(i)).collect();
        Self::from_generator_images(g, g, &imgs)
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.table[g]
    }

    pub fn apply_set(&self, x: ElementSet) -> ElementSet {
        x.iter().map(|g| self.table[g]).collect()
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.order() == self.codomain.order()
            && self.apply_set(self.domain.all()) == self.codomain.all()
    }

    /// Exhaustive check of `f(xy) = f(x) f(y)`.
    pub fn is_homomorphism(&self) -> bool {
        let (d, c) = (&self.domain, &self.codomain);
        d.elements().all(|x| {
            d.elements()
                .all(|y| self.apply(d.mul(x, y)) == c.mul(self.apply(x), self.apply(y)))
        })
    }

    /// `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &GroupMorphism) -> Result<GroupMorphism> {
        if self.codomain != other.domain {
            return Err(Error::Usage("morphisms are not composable".into()));
        }
        let table: Vec<usize> = self.table.iter().map(|&g| other.apply(g)).collect();
        let imgs = (0..self.domain.factors().len())
            .map(|i| table[self.domain.generator(i)])
            .collect();
        Ok(GroupMorphism {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            generator_images: imgs,
            table,
        })
    }

    pub fn inverse(&self) -> Result<GroupMorphism> {
        if !self.is_bijective() {
            return Err(Error::Usage("morphism is not bijective".into()));
        }
        let mut table = vec![0; self.table.len()];
        for (g, &h) in self.table.iter().enumerate() {
            table[h] = g;
        }
        let imgs = (0..self.codomain.factors().len())
            .map(|i| table[self.codomain.generator(i)])
            .collect();
        Ok(GroupMorphism {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            generator_images: imgs,
            table,
        })
    }
}
