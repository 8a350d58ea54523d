//! Canonical representatives of partitions under `Aut(G)`.

use crate::abelian_group::AbelianGroup;
use crate::error::Result;

/// The automorphisms of a group as element permutations.
#[derive(Clone, Debug)]
pub struct AutomorphismTable {
    pub perms: Vec<Vec<u8>>,
    pub inverses: Vec<Vec<u8>>,
}

impl AutomorphismTable {
    pub fn new(g: &AbelianGroup) -> Result<Self> {
        let auts = g.automorphisms()?;
        let perms: Vec<Vec<u8>> = auts
            .iter()
            .map(|f| f.table.iter().map(|&x| x as u8).collect())
            .collect();
        let inverses = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0u8; p.len()];
                for (x, &y) in p.iter().enumerate() {
                    inv[y as usize] = x as u8;
                }
                inv
            })
            .collect();
        Ok(AutomorphismTable { perms, inverses })
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// Indices of automorphisms mapping the partition onto itself.
    pub fn stabilizer(&self, labels: &[u8]) -> Vec<usize> {
        (0..self.perms.len())
            .filter(|&a| maps_onto_itself(labels, &self.perms[a]))
            .collect()
    }
}

fn maps_onto_itself(labels: &[u8], perm: &[u8]) -> bool {
    let mut map = [u8::MAX; 64];
    for (x, &l) in labels.iter().enumerate() {
        let m = labels[perm[x] as usize];
        let slot = &mut map[l as usize];
        if *slot == u8::MAX {
            *slot = m;
        } else if *slot != m {
            return false;
        }
    }
    true
}

/// Lexicographically least first-occurrence label vector in the
/// `Aut(G)`-orbit of the partition.
pub fn canonical_labels(labels: &[u8], auts: &AutomorphismTable) -> Vec<u8> {
    let n = labels.len();
    let mut best: Vec<u8> = vec![u8::MAX; n];
    let mut cur = vec![0u8; n];
    for inv in &auts.inverses {
        let mut map = [u8::MAX; 64];
        let mut next = 0u8;
        let mut smaller = false;
        let mut abandoned = false;
        for y in 0..n {
            let l = labels[inv[y] as usize] as usize;
            if map[l] == u8::MAX {
                map[l] = next;
                next += 1;
            }
            let v = map[l];
            cur[y] = v;
            if !smaller {
                if v > best[y] {
                    abandoned = true;
                    break;
                }
                if v < best[y] {
                    smaller = true;
                }
            }
        }
        if !abandoned && smaller {
            best.copy_from_slice(&cur);
        }
    }
    best
}
