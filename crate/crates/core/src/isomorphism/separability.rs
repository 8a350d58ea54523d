use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::abelian_group::{all_abelian_groups, AbelianGroup};
use crate::error::Result;
use crate::sring::{closure_with, enumerate_srings, GroupRingVector, SRing, SRingFile};

use super::{algebraic_search, find_inducing_isomorphism_fast, AlgebraicIso};

/// Cached `enumerate_srings(g)`.
pub fn catalog(g: &AbelianGroup) -> Result<Arc<Vec<SRing>>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<u32>, Arc<Vec<SRing>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(g.factors()) {
        return Ok(v.clone());
    }
    let v = Arc::new(enumerate_srings(g)?);
    cache
        .lock()
        .unwrap()
        .entry(g.factors().to_vec())
        .or_insert(v.clone());
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparabilityEntry {
    pub target_group: String,
    pub target_index: usize,
    pub target: SRingFile,
    pub iso_index: usize,
    pub phi: Vec<usize>,
    pub inducing: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparabilityReport {
    pub subject: SRingFile,
    pub entries: Vec<SeparabilityEntry>,
    pub verdict: bool,
    pub seconds: f64,
}

impl SeparabilityReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &SeparabilityEntry> {
        self.entries.iter().filter(|e| e.inducing.is_none())
    }
}

/// Checks every algebraic isomorphism from `a` to an S-ring over an abelian
/// group of the same order for an inducing combinatorial isomorphism.
pub fn separability_check(a: &SRing) -> Result<SeparabilityReport> {
    let start = Instant::now();
    let n = a.group().order();
    let mut targets: Vec<(AbelianGroup, usize, SRing)> = Vec::new();
    for g in all_abelian_groups(n)? {
        for (i, b) in catalog(&g)?.iter().enumerate() {
            if b.rank() == a.rank() && b.size_profile() == a.size_profile() {
                targets.push((g.clone(), i, b.clone()));
            }
        }
    }
    let subject = Arc::new(a.clone());
    let per_target: Vec<Result<Vec<SeparabilityEntry>>> = targets
        .par_iter()
        .map(|(g, idx, b)| {
            let target = Arc::new(b.clone());
            let mut entries = Vec::new();
            for (k, map) in algebraic_search(a, b, None, 0).into_iter().enumerate() {
                let phi = AlgebraicIso {
                    source: subject.clone(),
                    target: target.clone(),
                    map,
                };
                let f = find_inducing_isomorphism_fast(&phi)?;
                entries.push(SeparabilityEntry {
                    target_group: g.to_string(),
                    target_index: *idx,
                    target: SRingFile::from(b),
                    iso_index: k,
                    phi: phi.map,
                    inducing: f.map(|f| f.map),
                });
            }
            Ok(entries)
        })
        .collect();
    let mut entries = Vec::new();
    for r in per_target {
        entries.extend(r?);
    }
    let verdict = entries.iter().all(|e| e.inducing.is_some());
    Ok(SeparabilityReport {
        subject: SRingFile::from(a),
        entries,
        verdict,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// With `B = <A, ξ>` and `B' = <A', ξ'>`, true iff at most one algebraic
/// isomorphism `ψ: B -> B'` extends `φ` and maps `ξ` to `ξ'`.
pub fn extension_uniqueness_check(
    phi: &AlgebraicIso,
    xi: &GroupRingVector,
    xi2: &GroupRingVector,
) -> bool {
    count_extensions(phi, xi, xi2, 2) <= 1
}

/// Algebraic isomorphisms `<A, ξ> -> <A', ξ'>` extending `φ` and taking `ξ`
/// to `ξ'`, counted up to `limit` (0 for all).
pub fn count_extensions(
    phi: &AlgebraicIso,
    xi: &GroupRingVector,
    xi2: &GroupRingVector,
    limit: usize,
) -> usize {
    let b = closure_with(&phi.source, std::slice::from_ref(xi));
    let b2 = closure_with(&phi.target, std::slice::from_ref(xi2));
    let (a, a2) = (&*phi.source, &*phi.target);
    let allowed: Vec<u64> = b
        .classes()
        .iter()
        .map(|y| {
            let g = y.first().unwrap();
            let outer = a2.class(phi.map[a.class_of(g)]);
            let coeff = xi.coeffs[g];
            let mut m = 0u64;
            for (j, y2) in b2.classes().iter().enumerate() {
                if y2.is_subset(outer) && xi2.coeffs[y2.first().unwrap()] == coeff {
                    m |= 1 << j;
                }
            }
            m
        })
        .collect();
    algebraic_search(&b, &b2, Some(&allowed), limit).len()
}
