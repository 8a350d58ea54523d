//! Colour-constrained backtracking over element maps.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::set::ElementSet;
use crate::sring::SRing;

use super::{algebraic_search, cayley_isos, AlgebraicIso, CombinatorialIso};

/// Above this order the members of `Aut(A)` are not listed.
pub const AUT_MATERIALIZE_LIMIT: u128 = 100_000;

/// Search for element maps `f` with `f(e) = e'` inducing a fixed class map.
struct ColorSearch<'a> {
    a: &'a SRing,
    n: usize,
    phi: &'a [usize],
    /// `trans[k * n + w] = w + X'_k`
    trans: Vec<ElementSet>,
}

impl<'a> ColorSearch<'a> {
    fn new(a: &'a SRing, b: &SRing, phi: &'a [usize]) -> Self {
        let n = a.group().order();
        let gb = b.group();
        let mut trans = Vec::with_capacity(b.rank() * n);
        for x in b.classes() {
            for w in 0..n {
                trans.push(gb.translate(*x, w));
            }
        }
        ColorSearch { a, n, phi, trans }
    }

    fn allowed(&self, u: usize, v: usize, w: usize) -> ElementSet {
        let g = self.a.group();
        let k = self.phi[self.a.class_of(g.div(u, v))];
        self.trans[k * self.n + w]
    }

    /// Candidate sets after fixing `e -> e'` and the given pairs; `None` if
    /// some vertex has no image left.
    fn start(&self, fixed: &[(usize, usize)]) -> Option<(Vec<Option<usize>>, Vec<ElementSet>)> {
        let mut assigned = vec![None; self.n];
        let mut cand = vec![ElementSet::full(self.n); self.n];
        for &(v, w) in std::iter::once(&(0, 0)).chain(fixed) {
            if !cand[v].contains(w) {
                return None;
            }
            if assigned[v].is_some() {
                continue;
            }
            self.assign(&mut assigned, &mut cand, v, w)?;
        }
        Some((assigned, cand))
    }

    fn assign(
        &self,
        assigned: &mut [Option<usize>],
        cand: &mut [ElementSet],
        v: usize,
        w: usize,
    ) -> Option<()> {
        assigned[v] = Some(w);
        cand[v] = ElementSet::singleton(w);
        for u in 0..self.n {
            if assigned[u].is_none() {
                let mut c = cand[u].intersection(self.allowed(u, v, w));
                c.remove(w);
                if c.is_empty() {
                    return None;
                }
                cand[u] = c;
            }
        }
        Some(())
    }

    fn run(
        &self,
        assigned: &mut Vec<Option<usize>>,
        cand: &mut Vec<ElementSet>,
        limit: usize,
        out: &mut Vec<Vec<usize>>,
    ) -> bool {
        let next = (0..self.n)
            .filter(|&u| assigned[u].is_none())
            .min_by_key(|&u| (cand[u].len(), u));
        let Some(u) = next else {
            out.push(assigned.iter().map(|x| x.unwrap()).collect());
            return limit != 0 && out.len() >= limit;
        };
        for w in cand[u] {
            let mut a2 = assigned.clone();
            let mut c2 = cand.clone();
            if self.assign(&mut a2, &mut c2, u, w).is_some() && self.run(&mut a2, &mut c2, limit, out) {
                return true;
            }
        }
        false
    }

    fn search(&self, fixed: &[(usize, usize)], limit: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if let Some((mut assigned, mut cand)) = self.start(fixed) {
            self.run(&mut assigned, &mut cand, limit, &mut out);
        }
        out
    }
}

/// Combinatorial isomorphisms `A -> B` normalised by `f(e) = e'`; every
/// other isomorphism is one of these followed by a translation of `G'`.
/// Enumerated per algebraic isomorphism in lexicographic order, stopping
/// after `limit` results (`0` for all).
pub fn combinatorial_isos(a: &SRing, b: &SRing, limit: usize) -> Vec<CombinatorialIso> {
    let (sa, sb) = (Arc::new(a.clone()), Arc::new(b.clone()));
    let mut out = Vec::new();
    for phi in algebraic_search(a, b, None, 0) {
        let rest = if limit == 0 { 0 } else { limit - out.len() };
        for map in ColorSearch::new(a, b, &phi).search(&[], rest) {
            out.push(CombinatorialIso {
                source: sa.clone(),
                target: sb.clone(),
                map,
            });
        }
        if limit != 0 && out.len() >= limit {
            break;
        }
    }
    out
}

/// A combinatorial isomorphism inducing `phi`, by exhaustive search.
pub fn find_inducing_isomorphism(phi: &AlgebraicIso) -> Option<CombinatorialIso> {
    let search = ColorSearch::new(&phi.source, &phi.target, &phi.map);
    search.search(&[], 1).pop().map(|map| CombinatorialIso {
        source: phi.source.clone(),
        target: phi.target.clone(),
        map,
    })
}

/// Tries the Cayley isomorphisms first, then falls back to the full search.
pub fn find_inducing_isomorphism_fast(phi: &AlgebraicIso) -> Result<Option<CombinatorialIso>> {
    let (a, b) = (&*phi.source, &*phi.target);
    for f in cayley_isos(a, b)? {
        let induced = a
            .classes()
            .iter()
            .enumerate()
            .all(|(i, x)| b.class(phi.map[i]).contains(f.map[x.first().unwrap()]));
        if induced {
            return Ok(Some(f));
        }
    }
    Ok(find_inducing_isomorphism(phi))
}

/// `Aut(A)`: permutations of `G` preserving every relation `R(X)`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub order: u128,
    /// Listed only when `order <= AUT_MATERIALIZE_LIMIT`.
    pub members: Option<Vec<CombinatorialIso>>,
}

pub fn aut_sring(a: &SRing) -> Result<AutGroup> {
    let g = a.group();
    let n = g.order();
    // right translations preserve every colour
    for t in 0..n {
        for x in 0..n {
            for y in 0..n {
                if a.class_of(g.div(g.mul(y, t), g.mul(x, t))) != a.class_of(g.div(y, x)) {
                    return Err(Error::InvariantViolation(
                        "a right translation is not an automorphism".into(),
                    ));
                }
            }
        }
    }
    let id: Vec<usize> = (0..a.rank()).collect();
    let search = ColorSearch::new(a, a, &id);
    // |Aut(A)_e| through a stabilizer chain of existence checks
    let mut order: u128 = n as u128;
    let mut fixed: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        let Some((_, cand)) = search.start(&fixed) else {
            break;
        };
        if cand.iter().all(|c| c.len() == 1) {
            break;
        }
        let orbit = cand[v]
            .iter()
            .filter(|&w| {
                let mut f = fixed.clone();
                f.push((v, w));
                !search.search(&f, 1).is_empty()
            })
            .count();
        order = order.saturating_mul(orbit as u128);
        fixed.push((v, v));
    }
    let members = (order <= AUT_MATERIALIZE_LIMIT).then(|| {
        let sa = Arc::new(a.clone());
        let stab = search.search(&[], 0);
        let mut all = Vec::with_capacity(order as usize);
        for t in 0..n {
            for f in &stab {
                all.push(CombinatorialIso {
                    source: sa.clone(),
                    target: sa.clone(),
                    map: f.iter().map(|&x| g.mul(x, t)).collect(),
                });
            }
        }
        all
    });
    Ok(AutGroup { order, members })
}
