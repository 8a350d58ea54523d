//! The verification battery behind `paper-verify` and the acceptance suite.
//!
//! Each check returns one [`Check`] line. Details never contain timings, so
//! reports are reproducible.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian_group::{all_abelian_groups, factorize, gcd, AbelianGroup};
use crate::constructions::{
    build_family, classify_4p, subdirect_product, subdirect_target, Case, FamilyDescriptor,
};
use crate::error::{Error, Result};
use crate::isomorphism::{
    algebraic_isos, catalog, count_extensions, extension_uniqueness_check, find_inducing_isomorphism_fast,
    separability_check, AlgebraicIso,
};
use crate::set::ElementSet;
use crate::sring::{
    brute_force_srings, canonical_labels, closure_of_sets, rational_conjugate, schur_wielandt,
    AutomorphismTable, GroupRingVector, SRing,
};
use crate::wl::wl_dimension_experiment;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub key: String,
    pub detail: String,
    pub status: Status,
}

impl Check {
    fn new(key: &str, detail: String, passed: bool) -> Self {
        Check {
            key: key.into(),
            detail,
            status: if passed { Status::Pass } else { Status::Fail },
        }
    }

    pub fn skipped(key: &str, detail: impl Into<String>) -> Self {
        Check {
            key: key.into(),
            detail: detail.into(),
            status: Status::Skipped,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        };
        write!(f, "{}: {} {status}", self.key, self.detail)
    }
}

fn groups_4p(primes: &[u32]) -> Result<Vec<AbelianGroup>> {
    let mut out = Vec::new();
    for &p in primes {
        out.extend(all_abelian_groups(4 * p as usize)?);
    }
    Ok(out)
}

/// The nine S-rings over `C2 × C2 × C2`.
pub fn check_sring0() -> Result<Check> {
    let count = catalog(&"C2xC2xC2".parse()?)?.len();
    Ok(Check::new("Sring0", format!("count={count}"), count == 9))
}

/// Enumeration against brute force, compared as sets of canonical forms.
pub fn check_oracle(max_order: usize) -> Result<Check> {
    let mut groups = Vec::new();
    for n in 1..=max_order {
        groups.extend(all_abelian_groups(n)?);
    }
    let results: Vec<Result<(usize, bool)>> = groups
        .par_iter()
        .map(|g| {
            let auts = AutomorphismTable::new(g)?;
            let key = |rings: &[SRing]| -> BTreeSet<Vec<u8>> {
                rings.iter().map(|a| canonical_labels(a.labels(), &auts)).collect()
            };
            let fast = catalog(g)?;
            let slow = brute_force_srings(g)?;
            let (kf, ks) = (key(&fast), key(&slow));
            Ok((fast.len(), kf == ks && kf.len() == fast.len() && ks.len() == slow.len()))
        })
        .collect();
    let mut total = 0;
    let mut mismatched = Vec::new();
    for (g, r) in groups.iter().zip(results) {
        let (count, ok) = r?;
        total += count;
        if !ok {
            mismatched.push(g.to_string());
        }
    }
    Ok(Check::new(
        "oracle",
        format!(
            "groups={} srings={total} mismatches={:?}",
            groups.len(),
            mismatched
        ),
        mismatched.is_empty(),
    ))
}

/// Every S-ring over every abelian group of order `4p` is separable.
pub fn check_separability(primes: &[u32]) -> Result<Check> {
    let mut subjects = Vec::new();
    for g in groups_4p(primes)? {
        for a in catalog(&g)?.iter() {
            subjects.push(a.clone());
        }
    }
    let reports: Vec<_> = subjects
        .par_iter()
        .map(separability_check)
        .collect::<Result<_>>()?;
    let isos: usize = reports.iter().map(|r| r.entries.len()).sum();
    let bad: usize = reports.iter().map(|r| r.counterexamples().count()).sum();
    Ok(Check::new(
        "separability",
        format!(
            "primes={primes:?} srings={} algebraic_isos={isos} counterexamples={bad}",
            subjects.len()
        ),
        bad == 0,
    ))
}

/// `E_σ`: the classes of the family inside `E`, and `O`, the one of size `|σ|`.
fn regular_sigma_orbit(a: &SRing, d: &FamilyDescriptor) -> Result<ElementSet> {
    let (e, _) = d.e_and_p()?;
    a.classes()
        .iter()
        .copied()
        .find(|x| x.is_subset(e.set) && x.len() == d.sigma_order() as usize)
        .ok_or_else(|| Error::InvariantViolation(format!("{d}: no regular σ-orbit in E")))
}

/// Projection `G = E × P -> E`.
fn project_to_e(g: &AbelianGroup, d: &FamilyDescriptor, x: ElementSet) -> ElementSet {
    // z^(p m) kills P and fixes E when p m = 1 mod 4
    let m = (1..4).find(|m| (d.p as i64 * m) % 4 == 1).unwrap();
    g.power_set(x, d.p as i64 * m)
}

/// Basic sets outside `E ∪ P` whose projection to `E` is the regular orbit.
pub fn highest_by_definition(a: &SRing, d: &FamilyDescriptor) -> Result<Vec<ElementSet>> {
    let (e, p) = d.e_and_p()?;
    let o = regular_sigma_orbit(a, d)?;
    Ok(a.classes()
        .iter()
        .copied()
        .filter(|x| !x.is_subset(e.set) && !x.is_subset(p.set))
        .filter(|x| project_to_e(a.group(), d, *x) == o)
        .collect())
}

fn families(primes: &[u32]) -> Vec<FamilyDescriptor> {
    primes
        .iter()
        .filter(|&&p| p >= 3)
        .flat_map(|&p| FamilyDescriptor::all_for_prime(p))
        .collect()
}

/// Families with different `i` and the same `K` are not algebraically
/// isomorphic, and the parity of `c^Y_{X,X}` tells `i = 2` from `i = 3`.
pub fn check_nonisom(primes: &[u32]) -> Result<Check> {
    let all = families(primes);
    let mut pairs = 0;
    let mut isomorphic = Vec::new();
    for d in &all {
        for d2 in &all {
            if d.p != d2.p || d.k != d2.k || d.i >= d2.i {
                continue;
            }
            pairs += 1;
            if !algebraic_isos(&build_family(d)?, &build_family(d2)?).is_empty() {
                isomorphic.push(format!("{d}~{d2}"));
            }
        }
    }
    let mut parity_failures = Vec::new();
    let mut parity_checked = 0;
    for d in all.iter().filter(|d| d.i >= 2) {
        let a = build_family(d)?;
        let (_, p) = d.e_and_p()?;
        let in_p: Vec<usize> = (1..a.rank()).filter(|&y| a.class(y).is_subset(p.set)).collect();
        for x in highest_by_definition(&a, d)? {
            parity_checked += 1;
            let xi = a.index_of(x).unwrap();
            let odd = in_p.iter().any(|&y| a.c(xi, xi, y) % 2 == 1);
            if odd != (d.i == 2) {
                parity_failures.push(d.to_string());
            }
        }
    }
    Ok(Check::new(
        "nonisom",
        format!(
            "pairs={pairs} isomorphic={isomorphic:?} highest_checked={parity_checked} parity_failures={parity_failures:?}"
        ),
        isomorphic.is_empty() && parity_failures.is_empty() && pairs > 0,
    ))
}

/// `<X> = G` exactly for highest `X`; a highest class generates the family,
/// any other class a proper subring.
pub fn check_generate(primes: &[u32]) -> Result<Check> {
    let mut classes = 0;
    let mut failures = Vec::new();
    for d in families(primes) {
        let a = build_family(&d)?;
        let g = a.group();
        let highest = highest_by_definition(&a, &d)?;
        if highest.is_empty() {
            failures.push(format!("{d}: no highest set"));
        }
        for x in a.classes() {
            classes += 1;
            let is_highest = highest.contains(x);
            let generates = g.generated_subgroup(*x).order() == g.order();
            let closure = closure_of_sets(g, &[*x]);
            let ok = generates == is_highest
                && if is_highest {
                    closure == a
                } else {
                    closure.rank() < a.rank()
                };
            if !ok {
                failures.push(format!("{d}: {:?}", x.to_vec()));
            }
        }
    }
    Ok(Check::new(
        "generate",
        format!("classes={classes} failures={failures:?}"),
        failures.is_empty(),
    ))
}

/// `X^(m)` basic and `X^[p]` an A-set over every S-ring on groups of order
/// at most `max_order`.
pub fn check_multipliers(max_order: usize) -> Result<Check> {
    let mut groups = Vec::new();
    for n in 1..=max_order {
        groups.extend(all_abelian_groups(n)?);
    }
    let per_group: Vec<Result<(u64, u64, Vec<String>)>> = groups
        .par_iter()
        .map(|g| {
            let n = g.order();
            let units: Vec<i64> = (1..n.max(2) as i64).filter(|&m| gcd(m as u64, n as u64) == 1).collect();
            let primes: Vec<u64> = factorize(n as u64).into_iter().map(|(q, _)| q).collect();
            let (mut conj, mut sw) = (0u64, 0u64);
            let mut bad = Vec::new();
            for a in catalog(g)?.iter() {
                for &x in a.classes() {
                    for &m in &units {
                        conj += 1;
                        if rational_conjugate(a, x, m).is_err() {
                            bad.push(format!("{a:?} {:?}^({m})", x.to_vec()));
                        }
                    }
                }
                let r = a.rank();
                let mut sets = Vec::new();
                for i in 0..r {
                    sets.push(a.class(i));
                    for j in i + 1..r {
                        sets.push(a.class(i).union(a.class(j)));
                        for k in j + 1..r {
                            sets.push(a.class(i).union(a.class(j)).union(a.class(k)));
                        }
                    }
                }
                for x in sets {
                    for &p in &primes {
                        sw += 1;
                        if schur_wielandt(a, x, p).is_err() {
                            bad.push(format!("{a:?} {:?}^[{p}]", x.to_vec()));
                        }
                    }
                }
            }
            Ok((conj, sw, bad))
        })
        .collect();
    let (mut conj, mut sw) = (0, 0);
    let mut bad = Vec::new();
    for r in per_group {
        let (c, s, b) = r?;
        conj += c;
        sw += s;
        bad.extend(b);
    }
    Ok(Check::new(
        "multipliers",
        format!(
            "max_order={max_order} power_maps={conj} sw_maps={sw} violations={}",
            bad.len()
        ),
        bad.is_empty(),
    ))
}

/// `|A(U, V, ψ)| = |V|` for all cyclic `U`, `V` and isomorphisms `ψ`.
pub fn check_subdirect(max_order: u32) -> Result<Check> {
    let mut cases = 0;
    let mut bad = Vec::new();
    for nv in 1..=max_order {
        let v = AbelianGroup::cyclic(nv)?;
        for nu in (1..=nv).filter(|nu| nv % nu == 0) {
            let u = AbelianGroup::cyclic(nu)?;
            let target = subdirect_target(&v, nu as usize)?;
            for psi in u.isomorphisms_to(&target.quotient)? {
                cases += 1;
                let s = subdirect_product(&u, &v, &psi)?;
                if s.len() != nv as usize {
                    bad.push(format!("U=C{nu} V=C{nv} ψ={:?}", psi.generator_images));
                }
            }
        }
    }
    Ok(Check::new(
        "subdirect",
        format!("max_order={max_order} cases={cases} failures={bad:?}"),
        bad.is_empty() && cases > 0,
    ))
}

/// Orders the WL experiment can afford exhaustively.
pub const WL_ORDERS: [usize; 3] = [8, 12, 20];

/// 2-WL separates all non-isomorphic undirected Cayley graphs of order `n`.
pub fn check_wl(n: usize) -> Result<Check> {
    let key = format!("wl n={n}");
    if !WL_ORDERS.contains(&n) {
        return Ok(Check::skipped(&key, "exceeds the graph budget"));
    }
    let r = wl_dimension_experiment(n, true)?;
    Ok(Check::new(
        &key,
        format!(
            "graphs={} pairs={} wl_classes={} iso_classes={} failures={}",
            r.graph_count,
            r.pair_count,
            r.wl_classes,
            r.iso_classes,
            r.wl_indistinguishable_nonisomorphic.len()
        ),
        r.passed(),
    ))
}

/// Whether `f` is a group isomorphism taking every class of `a` onto a
/// class of `b`.
fn is_cayley_witness(a: &SRing, b: &SRing, f: &[usize]) -> bool {
    let (g, h) = (a.group(), b.group());
    if f.len() != g.order() || g.order() != h.order() {
        return false;
    }
    let image: ElementSet = f.iter().copied().collect();
    if image.len() != h.order() {
        return false;
    }
    let hom = g.elements().all(|x| g.elements().all(|y| f[g.mul(x, y)] == h.mul(f[x], f[y])));
    hom && a.classes().iter().all(|x| {
        let y: ElementSet = x.iter().map(|z| f[z]).collect();
        b.is_basic(y)
    })
}

/// Every S-ring over a group of order `4p` gets exactly one case, and every
/// family label has a valid Cayley isomorphism.
pub fn check_classification(primes: &[u32]) -> Result<Check> {
    let mut total = 0;
    let mut gaps = Vec::new();
    let mut bad_witness = Vec::new();
    let mut counts: std::collections::BTreeMap<&'static str, usize> = Default::default();
    for g in groups_4p(primes)? {
        for a in catalog(&g)?.iter() {
            total += 1;
            match classify_4p(a) {
                Ok(case) => {
                    if let Case::Family { descriptor, witness } = &case {
                        if !is_cayley_witness(a, &build_family(descriptor)?, witness) {
                            bad_witness.push(format!("{a:?}"));
                        }
                    }
                    *counts.entry(case_name(&case)).or_default() += 1;
                }
                Err(Error::ClassificationGap(s)) => gaps.push(s),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(Check::new(
        "classify",
        format!("srings={total} cases={counts:?} gaps={gaps:?} bad_witnesses={bad_witness:?}"),
        gaps.is_empty() && bad_witness.is_empty(),
    ))
}

fn case_name(c: &Case) -> &'static str {
    match c {
        Case::Rank2 => "Rank2",
        Case::TrivialZG => "TrivialZG",
        Case::Family { .. } => "Family",
        Case::TensorEP => "TensorEP",
        Case::TensorDecomposition { .. } => "TensorDecomposition",
        Case::ProperGeneralizedWreath { .. } => "ProperGeneralizedWreath",
        Case::CyclotomicC8 { .. } => "CyclotomicC8",
    }
}

/// One random instance for the extension uniqueness property.
#[derive(Clone, Debug)]
pub struct UniqInstance {
    pub phi: AlgebraicIso,
    pub xi: GroupRingVector,
    pub xi2: GroupRingVector,
}

/// Draws `(A, ξ, φ)` over a group of order at most `max_order`. Half of the
/// instances take `ξ'` as the image of `ξ` under an isomorphism inducing
/// `φ`, so that an extension exists; the rest draw `ξ'` independently.
pub fn random_uniq_instance(rng: &mut impl Rng, max_order: usize) -> Result<UniqInstance> {
    loop {
        let n = rng.gen_range(1..=max_order);
        let groups = all_abelian_groups(n)?;
        let g = groups.choose(rng).unwrap();
        let cat = catalog(g)?;
        let a = cat.choose(rng).unwrap();
        let h = groups.choose(rng).unwrap();
        let targets: Vec<SRing> = catalog(h)?.iter().filter(|b| b.rank() == a.rank()).cloned().collect();
        let Some(b) = targets.choose(rng) else { continue };
        let isos = algebraic_isos(a, b);
        let Some(phi) = isos.choose(rng) else { continue };
        let mut xi = GroupRingVector::zero(n);
        for c in xi.coeffs.iter_mut() {
            if rng.gen_bool(0.4) {
                *c = rng.gen_range(1..=3);
            }
        }
        let xi2 = if rng.gen_bool(0.5) {
            match find_inducing_isomorphism_fast(phi)? {
                Some(f) => {
                    let mut v = GroupRingVector::zero(n);
                    for x in 0..n {
                        v.coeffs[f.apply(x)] = xi.coeffs[x];
                    }
                    v
                }
                None => continue,
            }
        } else {
            let mut v = GroupRingVector::zero(n);
            for c in v.coeffs.iter_mut() {
                if rng.gen_bool(0.4) {
                    *c = rng.gen_range(1..=3);
                }
            }
            v
        };
        return Ok(UniqInstance {
            phi: phi.clone(),
            xi,
            xi2,
        });
    }
}

/// `extension_uniqueness_check` on `count` seeded random instances.
pub fn check_uniq(seed: u64, count: usize, max_order: usize) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<UniqInstance> = (0..count)
        .map(|_| random_uniq_instance(&mut rng, max_order))
        .collect::<Result<_>>()?;
    let counts: Vec<(bool, usize)> = instances
        .par_iter()
        .map(|t| {
            (
                extension_uniqueness_check(&t.phi, &t.xi, &t.xi2),
                count_extensions(&t.phi, &t.xi, &t.xi2, 2),
            )
        })
        .collect();
    let failures = counts.iter().filter(|(ok, _)| !ok).count();
    let extended = counts.iter().filter(|(_, c)| *c == 1).count();
    Ok(Check::new(
        "uniq",
        format!(
            "seed={seed} instances={count} max_order={max_order} with_extension={extended} violations={failures}"
        ),
        failures == 0,
    ))
}

/// Configuration for [`paper_verify`].
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub primes: Vec<u32>,
    /// Check keys to skip, e.g. `wl`.
    pub skip: Vec<String>,
    pub seed: u64,
    pub uniq_instances: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            primes: vec![2, 3, 5, 7],
            skip: Vec::new(),
            seed: 0,
            uniq_instances: 1000,
        }
    }
}

/// Runs every check for the configured primes, in a fixed order.
pub fn paper_verify(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let skip = |k: &str| cfg.skip.iter().any(|s| s == k);
    let run = |key: &str, f: &dyn Fn() -> Result<Check>| -> Result<Check> {
        if skip(key) {
            Ok(Check::skipped(key, "--skip"))
        } else {
            f()
        }
    };
    let primes = &cfg.primes;
    let mut out = Vec::new();
    if primes.contains(&2) {
        out.push(run("Sring0", &check_sring0)?);
    }
    out.push(run("oracle", &|| check_oracle(12))?);
    out.push(run("separability", &|| check_separability(primes))?);
    if primes.iter().any(|&p| p >= 3) {
        out.push(run("nonisom", &|| check_nonisom(primes))?);
        out.push(run("generate", &|| check_generate(primes))?);
    }
    out.push(run("multipliers", &|| check_multipliers(28))?);
    out.push(run("subdirect", &|| check_subdirect(28))?);
    for &p in primes {
        let n = 4 * p as usize;
        out.push(if skip("wl") {
            Check::skipped(&format!("wl n={n}"), "--skip")
        } else {
            check_wl(n)?
        });
    }
    out.push(run("classify", &|| check_classification(primes))?);
    out.push(run("uniq", &|| check_uniq(cfg.seed, cfg.uniq_instances, 12))?);
    Ok(out)
}

/// Shorthand used by tests: all checks passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}
