use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abelian_group::{is_prime, AbelianGroup, GroupMorphism, Subgroup};
use crate::error::{Error, Result};
use crate::sring::SRing;

use super::subdirect::{subdirect_product, subdirect_target, CyclicAutGroup};
use super::cyclotomic_from_tables;

/// The S-ring `A_i(K) = cyc(A(<σ_i>, K, ψ), G)`.
///
/// `G = E × P` is presented as `C2 × C2 × Cp` with `a, b, z` the canonical
/// generators for `i` in `{1, 2}`, and as `C4 × Cp` with `c, z` for `i = 3`.
/// `σ1: (a, b) -> (b, ab)`, `σ2: (a, b) -> (b, a)`, `σ3: c -> c^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub i: u8,
    pub p: u32,
    pub k: u32,
}

/// Which isomorphism `<σ> -> K/M` glues the factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Twist {
    /// `σ^j -> Mθ^j`
    #[default]
    Psi,
    /// `σ^j -> Mθ^-j`
    Xi,
}

impl FamilyDescriptor {
    pub fn new(i: u8, p: u32, k: u32) -> Result<Self> {
        let d = FamilyDescriptor { i, p, k };
        d.check()?;
        Ok(d)
    }

    fn check(&self) -> Result<()> {
        if !(1..=3).contains(&self.i) {
            return Err(Error::Precondition(format!("i = {} is not in {{1, 2, 3}}", self.i)));
        }
        if !is_prime(self.p as u64) {
            return Err(Error::Precondition(format!("p = {} is not prime", self.p)));
        }
        if self.k == 0 || !(self.p - 1).is_multiple_of(self.k) {
            return Err(Error::Precondition(format!(
                "|K| = {} does not divide p - 1 = {}",
                self.k,
                self.p - 1
            )));
        }
        if !self.k.is_multiple_of(self.sigma_order()) {
            return Err(Error::Precondition(format!(
                "|σ{}| = {} must divide |K| = {} for a nontrivial subdirect product",
                self.i,
                self.sigma_order(),
                self.k
            )));
        }
        Ok(())
    }

    /// `|σ_i|`.
    pub fn sigma_order(&self) -> u32 {
        if self.i == 1 {
            3
        } else {
            2
        }
    }

    pub fn group(&self) -> Result<AbelianGroup> {
        match self.i {
            3 => AbelianGroup::new(vec![4, self.p]),
            _ => AbelianGroup::new(vec![2, 2, self.p]),
        }
    }

    /// `E` and `P` as element sets of [`FamilyDescriptor::group`].
    pub fn e_and_p(&self) -> Result<(Subgroup, Subgroup)> {
        let g = self.group()?;
        Ok((g.torsion(4), g.torsion(self.p as i64)))
    }

    /// All descriptors with the given prime.
    pub fn all_for_prime(p: u32) -> Vec<FamilyDescriptor> {
        let mut out = Vec::new();
        for i in 1..=3 {
            for k in 1..p {
                if let Ok(d) = FamilyDescriptor::new(i, p, k) {
                    out.push(d);
                }
            }
        }
        out
    }
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family:i={},p={},k={}", self.i, self.p, self.k)
    }
}

impl FromStr for FamilyDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |position: usize, message: &str| Error::Parse {
            position,
            message: message.to_string(),
        };
        let body = s
            .strip_prefix("family:")
            .ok_or_else(|| parse_err(0, "expected `family:`"))?;
        let (mut i, mut p, mut k) = (None, None, None);
        let mut pos = "family:".len();
        for part in body.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| parse_err(pos, "expected key=value"))?;
            let v: u32 = value
                .trim()
                .parse()
                .map_err(|_| parse_err(pos + key.len() + 1, "expected an integer"))?;
            match key.trim() {
                "i" => i = Some(v),
                "p" => p = Some(v),
                "k" => k = Some(v),
                _ => return Err(parse_err(pos, "unknown key")),
            }
            pos += part.len() + 1;
        }
        let (Some(i), Some(p), Some(k)) = (i, p, k) else {
            return Err(parse_err(s.len(), "need i, p and k"));
        };
        let i = u8::try_from(i).map_err(|_| parse_err(0, "i out of range"))?;
        FamilyDescriptor::new(i, p, k)
    }
}

/// `σ_i` as an automorphism of the family group.
fn sigma(d: &FamilyDescriptor, g: &AbelianGroup) -> Result<GroupMorphism> {
    let z = g.generator(g.factors().len() - 1);
    match d.i {
        1 | 2 => {
            let (a, b) = (g.generator(0), g.generator(1));
            let imgs = if d.i == 1 { [b, g.mul(a, b), z] } else { [b, a, z] };
            GroupMorphism::new(g, g, &imgs)
        }
        _ => {
            let c = g.generator(0);
            GroupMorphism::new(g, g, &[g.inv(c), z])
        }
    }
}

/// `1 × θ^j` as an automorphism of the family group.
fn theta_power(k: &CyclicAutGroup, g: &AbelianGroup, j: i64) -> Result<GroupMorphism> {
    let nf = g.factors().len();
    let mut imgs: Vec<usize> = (0..nf).map(|i| g.generator(i)).collect();
    imgs[nf - 1] = g.pow(g.generator(nf - 1), k.unit(j) as i64);
    GroupMorphism::new(g, g, &imgs)
}

/// The subdirect product `A(<σ_i>, K, ψ)` (or with `ξ`) as automorphisms
/// `σ^x × θ^y` of `G`.
pub fn family_automorphisms(d: &FamilyDescriptor, twist: Twist) -> Result<Vec<GroupMorphism>> {
    d.check()?;
    let g = d.group()?;
    let s = d.sigma_order() as usize;
    let k = d.k as usize;
    let kgroup = CyclicAutGroup::new(d.p as u64, k)?;
    let u = AbelianGroup::cyclic(s as u32)?;
    let v = AbelianGroup::cyclic(k as u32)?;
    let target = subdirect_target(&v, s)?;
    let theta = match twist {
        Twist::Psi => 1,
        Twist::Xi => k - 1,
    };
    let psi = GroupMorphism::new(&u, &target.quotient, &[target.project(theta).unwrap()])?;
    let pairs = subdirect_product(&u, &v, &psi)?;
    let sig = sigma(d, &g)?;
    let mut sig_powers = vec![GroupMorphism::identity(&g)];
    for _ in 1..s {
        let next = sig_powers.last().unwrap().then(&sig)?;
        sig_powers.push(next);
    }
    pairs
        .into_iter()
        .map(|(x, y)| sig_powers[x].then(&theta_power(&kgroup, &g, y as i64)?))
        .collect()
}

pub fn build_family(d: &FamilyDescriptor) -> Result<SRing> {
    build_family_with(d, Twist::Psi)
}

pub fn build_family_with(d: &FamilyDescriptor, twist: Twist) -> Result<SRing> {
    let g = d.group()?;
    let auts = family_automorphisms(d, twist)?;
    let tables: Vec<&[usize]> = auts.iter().map(|f| f.table.as_slice()).collect();
    cyclotomic_from_tables(&tables, &g)
}
