//! 2-dimensional Weisfeiler-Leman refinement and the Cayley-graph experiment.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::abelian_group::{all_abelian_groups, AbelianGroup};
use crate::error::{Error, Result};
use crate::set::ElementSet;

/// Colour of every ordered pair of `0..n`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcColoring {
    n: usize,
    colors: Vec<u32>,
}

/// Diagonal colours are tagged with the top bit so they never meet
/// off-diagonal ones.
const DIAGONAL: u32 = 1 << 31;

impl ArcColoring {
    /// `colors[u * n + v]`; diagonal and off-diagonal colours are kept apart
    /// regardless of the values given.
    pub fn new(n: usize, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != n * n {
            return Err(Error::Usage(format!(
                "expected {} arc colours, got {}",
                n * n,
                colors.len()
            )));
        }
        let colors = colors
            .into_iter()
            .enumerate()
            .map(|(i, c)| if i / n == i % n { c | DIAGONAL } else { c & !DIAGONAL })
            .collect();
        Ok(ArcColoring { n, colors }.renumbered())
    }

    /// A simple graph as a colouring. Loops get colour 0, then non-arcs,
    /// then arcs (when present).
    pub fn from_adjacency(n: usize, arc: impl Fn(usize, usize) -> bool) -> Self {
        let colors = (0..n * n)
            .map(|i| {
                let (u, v) = (i / n, i % n);
                if u == v {
                    2
                } else {
                    arc(u, v) as u32
                }
            })
            .collect();
        ArcColoring::new(n, colors).expect("n * n colours")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color(&self, u: usize, v: usize) -> u32 {
        self.colors[u * self.n + v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn num_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Colours renamed to `0..` in sorted order, diagonal first.
    fn renumbered(self) -> Self {
        let mut distinct = self.colors.clone();
        distinct.sort_unstable_by_key(|&c| (c & DIAGONAL == 0, c));
        distinct.dedup();
        let id: HashMap<u32, u32> = distinct
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u32))
            .collect();
        let colors = self.colors.iter().map(|c| id[c]).collect();
        ArcColoring { n: self.n, colors }
    }

    /// `(colour, count)` sorted by colour.
    pub fn histogram(&self) -> Vec<(u32, usize)> {
        let mut h = BTreeMap::new();
        for &c in &self.colors {
            *h.entry(c).or_insert(0) += 1;
        }
        h.into_iter().collect()
    }
}

/// A colouring fixed by one more refinement round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableColoring {
    pub coloring: ArcColoring,
    pub rounds: usize,
}

impl StableColoring {
    pub fn histogram(&self) -> Vec<(u32, usize)> {
        self.coloring.histogram()
    }
}

type Signature = (u32, Vec<(u32, u32)>);

fn signatures(c: &ArcColoring) -> Vec<Signature> {
    let n = c.n;
    (0..n * n)
        .map(|i| {
            let (u, v) = (i / n, i % n);
            let mut s: Vec<(u32, u32)> = (0..n).map(|w| (c.color(u, w), c.color(w, v))).collect();
            s.sort_unstable();
            (c.colors[i], s)
        })
        .collect()
}

/// One round: new colours are ranks of the sorted distinct signatures.
fn refine_once(c: &ArcColoring) -> ArcColoring {
    let sigs = signatures(c);
    let mut distinct: Vec<&Signature> = sigs.iter().collect();
    distinct.sort_unstable();
    distinct.dedup();
    let id: HashMap<&Signature, u32> = distinct
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i as u32))
        .collect();
    ArcColoring {
        n: c.n,
        colors: sigs.iter().map(|s| id[s]).collect(),
    }
}

/// Classical 2-WL until the partition of pairs stops splitting.
pub fn wl2_refine(c: &ArcColoring) -> StableColoring {
    let mut cur = c.clone().renumbered();
    let mut classes = cur.num_colors();
    let mut rounds = 0;
    loop {
        let next = refine_once(&cur);
        let k = next.num_colors();
        rounds += 1;
        cur = next;
        if k == classes {
            return StableColoring { coloring: cur, rounds };
        }
        classes = k;
    }
}

/// Disjoint union with cross pairs in their own colour.
fn disjoint_union(c1: &ArcColoring, c2: &ArcColoring) -> ArcColoring {
    let n = c1.n + c2.n;
    let cross = c1.colors.iter().chain(&c2.colors).max().map_or(0, |m| m + 1);
    let colors = (0..n * n)
        .map(|i| {
            let (u, v) = (i / n, i % n);
            match (u < c1.n, v < c1.n) {
                (true, true) => c1.color(u, v),
                (false, false) => c2.color(u - c1.n, v - c1.n),
                _ => cross,
            }
        })
        .collect();
    ArcColoring { n, colors }
}

/// Whether 2-WL tells the two structures apart, refined jointly.
pub fn wl2_distinguishes(c1: &ArcColoring, c2: &ArcColoring) -> bool {
    if c1.n != c2.n {
        return true;
    }
    let n = c1.n;
    let joint = wl2_refine(&disjoint_union(c1, c2)).coloring;
    let mut h1 = BTreeMap::new();
    let mut h2 = BTreeMap::new();
    for u in 0..2 * n {
        for v in 0..2 * n {
            match (u < n, v < n) {
                (true, true) => *h1.entry(joint.color(u, v)).or_insert(0) += 1,
                (false, false) => *h2.entry(joint.color(u, v)).or_insert(0) += 1,
                _ => {}
            }
        }
    }
    h1 != h2
}

/// `Cay(G, X)`: arcs `(g, h)` with `h - g` in `X`.
pub fn cayley_graph(g: &AbelianGroup, x: ElementSet) -> Result<ArcColoring> {
    if x.contains(g.identity()) {
        return Err(Error::Precondition("the identity is in the connection set".into()));
    }
    if !x.is_subset(g.all()) {
        return Err(Error::Usage(format!("{x:?} is not a subset of {g}")));
    }
    Ok(ArcColoring::from_adjacency(g.order(), |u, v| {
        x.contains(g.div(v, u))
    }))
}

/// The partition of `G` read off a translation-invariant colouring:
/// `x` and `y` share a class iff `(e, x)` and `(e, y)` share a colour.
pub fn colour_classes_at_identity(g: &AbelianGroup, c: &ArcColoring) -> Vec<ElementSet> {
    let mut by_colour: BTreeMap<u32, ElementSet> = BTreeMap::new();
    for x in g.elements() {
        by_colour
            .entry(c.color(g.identity(), x))
            .or_insert(ElementSet::EMPTY)
            .insert(x);
    }
    by_colour.into_values().collect()
}

/// Plain backtracking search for a colour-preserving bijection.
pub fn graph_isomorphism(a: &ArcColoring, b: &ArcColoring) -> Option<Vec<usize>> {
    let n = a.n;
    if n != b.n || a.histogram() != b.histogram() {
        return None;
    }
    let profile = |c: &ArcColoring, u: usize| {
        let mut out: Vec<u32> = (0..n).map(|v| c.color(u, v)).collect();
        out.extend((0..n).map(|v| c.color(v, u)));
        out[..n].sort_unstable();
        out[n..].sort_unstable();
        out
    };
    let pa: Vec<Vec<u32>> = (0..n).map(|u| profile(a, u)).collect();
    let pb: Vec<Vec<u32>> = (0..n).map(|u| profile(b, u)).collect();
    // visit vertices joined to earlier ones by a non-background arc first
    let background = a.histogram().into_iter().max_by_key(|&(_, k)| k).map_or(0, |(c, _)| c);
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = order.iter().filter(|&&u| a.color(u, v) != background).count();
                (linked, std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        k: usize,
        order: &[usize],
        a: &ArcColoring,
        b: &ArcColoring,
        pa: &[Vec<u32>],
        pb: &[Vec<u32>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let u = order[k];
        for w in 0..map.len() {
            if used[w] || pa[u] != pb[w] || a.color(u, u) != b.color(w, w) {
                continue;
            }
            let ok = order[..k].iter().all(|&v| {
                a.color(u, v) == b.color(w, map[v]) && a.color(v, u) == b.color(map[v], w)
            });
            if !ok {
                continue;
            }
            map[u] = w;
            used[w] = true;
            if rec(k + 1, order, a, b, pa, pb, map, used) {
                return true;
            }
            used[w] = false;
            map[u] = usize::MAX;
        }
        false
    }
    rec(0, &order, a, b, &pa, &pb, &mut map, &mut used).then_some(map)
}

/// A Cayley graph in the experiment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphId {
    pub group: String,
    pub connection_set: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WlReport {
    pub order: usize,
    pub directed: bool,
    pub groups: Vec<String>,
    pub graph_count: usize,
    pub pair_count: u64,
    /// Number of 2-WL equivalence classes.
    pub wl_classes: usize,
    /// Number of isomorphism classes according to the backtracking oracle.
    pub iso_classes: usize,
    pub wl_indistinguishable_nonisomorphic: Vec<(GraphId, GraphId)>,
    pub seconds: f64,
}

impl WlReport {
    pub fn passed(&self) -> bool {
        self.wl_indistinguishable_nonisomorphic.is_empty()
    }
}

/// Most graphs the experiment will build.
pub const WL_MAX_GRAPHS: usize = 1 << 14;

/// Connection sets of `Cay(G, X)` with `e ∉ X`, inverse-closed unless
/// `directed`.
pub fn connection_sets(g: &AbelianGroup, directed: bool) -> Result<Vec<ElementSet>> {
    let mut atoms: Vec<ElementSet> = Vec::new();
    let mut seen = ElementSet::singleton(g.identity());
    for x in g.elements() {
        if seen.contains(x) {
            continue;
        }
        let atom: ElementSet = if directed {
            ElementSet::singleton(x)
        } else {
            [x, g.inv(x)].into_iter().collect()
        };
        seen = seen.union(atom);
        atoms.push(atom);
    }
    if atoms.len() > WL_MAX_GRAPHS.trailing_zeros() as usize {
        return Err(Error::Capacity {
            order: 1 << atoms.len().min(63),
            bound: WL_MAX_GRAPHS,
        });
    }
    Ok((0u64..1 << atoms.len())
        .map(|mask| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(ElementSet::EMPTY, |acc, (_, a)| acc.union(*a))
        })
        .collect())
}

/// 2-WL run on many colourings in lockstep with shared colour names, so
/// that equal final histograms mean 2-WL equivalence.
pub fn wl2_fingerprints(graphs: &[ArcColoring]) -> Vec<Vec<(u32, usize)>> {
    let mut cur: Vec<ArcColoring> = graphs.to_vec();
    let mut sizes: Vec<usize> = cur.iter().map(ArcColoring::num_colors).collect();
    loop {
        let sigs: Vec<Vec<Signature>> = cur.par_iter().map(signatures).collect();
        let mut distinct: Vec<&Signature> = sigs.iter().flatten().collect();
        distinct.par_sort_unstable();
        distinct.dedup();
        let id: HashMap<&Signature, u32> = distinct
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i as u32))
            .collect();
        let next: Vec<ArcColoring> = cur
            .iter()
            .zip(&sigs)
            .map(|(c, s)| ArcColoring {
                n: c.n,
                colors: s.iter().map(|s| id[s]).collect(),
            })
            .collect();
        let next_sizes: Vec<usize> = next.iter().map(ArcColoring::num_colors).collect();
        cur = next;
        if next_sizes == sizes {
            return cur.iter().map(ArcColoring::histogram).collect();
        }
        sizes = next_sizes;
    }
}

/// All Cayley graphs over abelian groups of order `n`: groups them by 2-WL
/// fingerprint and checks every group is one isomorphism class.
pub fn wl_dimension_experiment(n: usize, undirected_only: bool) -> Result<WlReport> {
    let start = Instant::now();
    let directed = !undirected_only;
    let groups = all_abelian_groups(n)?;
    let mut ids = Vec::new();
    let mut graphs = Vec::new();
    for g in &groups {
        let sets = connection_sets(g, directed)?;
        if ids.len() + sets.len() > WL_MAX_GRAPHS {
            return Err(Error::Capacity {
                order: ids.len() + sets.len(),
                bound: WL_MAX_GRAPHS,
            });
        }
        for x in sets {
            graphs.push(cayley_graph(g, x)?);
            ids.push(GraphId {
                group: g.to_string(),
                connection_set: x.to_vec(),
            });
        }
    }
    let prints = wl2_fingerprints(&graphs);
    let mut classes: BTreeMap<&Vec<(u32, usize)>, Vec<usize>> = BTreeMap::new();
    for (i, f) in prints.iter().enumerate() {
        classes.entry(f).or_default().push(i);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    // within a class, split into isomorphism classes by the oracle
    let split: Vec<Vec<usize>> = classes
        .par_iter()
        .map(|members| {
            let mut reps: Vec<usize> = Vec::new();
            for &m in members {
                if !reps
                    .iter()
                    .any(|&r| graph_isomorphism(&graphs[r], &graphs[m]).is_some())
                {
                    reps.push(m);
                }
            }
            reps
        })
        .collect();
    let mut bad = Vec::new();
    for reps in &split {
        for (i, &r) in reps.iter().enumerate() {
            for &s in &reps[i + 1..] {
                bad.push((ids[r].clone(), ids[s].clone()));
            }
        }
    }
    let count = graphs.len() as u64;
    Ok(WlReport {
        order: n,
        directed,
        groups: groups.iter().map(|g| g.to_string()).collect(),
        graph_count: graphs.len(),
        pair_count: count * count.saturating_sub(1) / 2,
        wl_classes: classes.len(),
        iso_classes: split.iter().map(Vec::len).sum(),
        wl_indistinguishable_nonisomorphic: bad,
        seconds: start.elapsed().as_secs_f64(),
    })
}
