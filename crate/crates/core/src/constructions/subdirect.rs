use crate::abelian_group::{factorize, is_prime, AbelianGroup, GroupMorphism, Section};
use crate::error::{Error, Result};

/// `V/W` for the unique subgroup `W` of index `m` in a cyclic group `V`.
pub fn subdirect_target(v: &AbelianGroup, m: usize) -> Result<Section> {
    if !v.is_cyclic() {
        return Err(Error::Precondition(format!("{v} is not cyclic")));
    }
    if m == 0 || !v.order().is_multiple_of(m) {
        return Err(Error::Precondition(format!(
            "{m} does not divide |V| = {}",
            v.order()
        )));
    }
    let w = v.subgroup(v.elements().map(|y| v.pow(y, m as i64)).collect())?;
    v.quotient(&v.whole(), &w)
}

/// `A(U, V, ψ) = {(x, y) in U × V : ψ(x) = π(y)}` for cyclic `U`, `V` with
/// `|U|` dividing `|V|` and `ψ: U -> V/W` an isomorphism, as sorted pairs.
/// `U × V` itself may exceed the element-set capacity, so it is never built.
pub fn subdirect_product(
    u: &AbelianGroup,
    v: &AbelianGroup,
    psi: &GroupMorphism,
) -> Result<Vec<(usize, usize)>> {
    if !u.is_cyclic() {
        return Err(Error::Precondition(format!("{u} is not cyclic")));
    }
    let target = subdirect_target(v, u.order())?;
    if &psi.domain != u || psi.codomain != target.quotient || !psi.is_bijective() {
        return Err(Error::Precondition(
            "ψ must be an isomorphism from U onto V/W".into(),
        ));
    }
    let pairs: Vec<(usize, usize)> = u
        .elements()
        .flat_map(|x| v.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| target.project(y) == Some(psi.apply(x)))
        .collect();
    let closed = pairs.iter().all(|&(x1, y1)| {
        pairs
            .iter()
            .all(|&(x2, y2)| pairs.binary_search(&(u.div(x1, x2), v.div(y1, y2))).is_ok())
    });
    if !closed || pairs.len() != v.order() {
        return Err(Error::InvariantViolation(format!(
            "A(U,V,ψ) has {} elements (|V| = {}), closed = {closed}",
            pairs.len(),
            v.order()
        )));
    }
    Ok(pairs)
}

/// A cyclic group `K = <θ>` of automorphisms of `C_p`, acting on `P` by
/// multiplication with a unit mod `p`.
#[derive(Clone, Debug)]
pub struct CyclicAutGroup {
    pub p_group: AbelianGroup,
    /// `θ(z) = z^multiplier`.
    pub multiplier: u64,
    pub theta: GroupMorphism,
    pub order: usize,
    /// `θ^0, θ^1, ...`
    pub elements: Vec<GroupMorphism>,
}

/// Least primitive root modulo a prime.
pub(crate) fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let phi = p - 1;
    let primes: Vec<u64> = factorize(phi).into_iter().map(|(q, _)| q).collect();
    (2..p)
        .find(|&g| primes.iter().all(|&q| pow_mod(g, phi / q, p) != 1))
        .expect("a prime has a primitive root")
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl CyclicAutGroup {
    /// The subgroup of order `k` of `Aut(C_p)`, generated by multiplication
    /// with `g^((p-1)/k)` for the least primitive root `g`.
    pub fn new(p: u64, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        if k == 0 || !(p - 1).is_multiple_of(k as u64) {
            return Err(Error::Precondition(format!("|K| = {k} does not divide p - 1 = {}", p - 1)));
        }
        let pg = AbelianGroup::cyclic(p as u32)?;
        let multiplier = pow_mod(primitive_root(p), (p - 1) / k as u64, p);
        let theta = GroupMorphism::new(&pg, &pg, &[multiplier as usize])?;
        let mut elements = vec![GroupMorphism::identity(&pg)];
        for _ in 1..k {
            let next = elements.last().unwrap().then(&theta)?;
            elements.push(next);
        }
        Ok(CyclicAutGroup {
            p_group: pg,
            multiplier,
            theta,
            order: k,
            elements,
        })
    }

    /// `θ^j` as a unit mod `p`.
    pub fn unit(&self, j: i64) -> u64 {
        let k = self.order as i64;
        pow_mod(self.multiplier, j.rem_euclid(k) as u64, self.p_group.order() as u64)
    }
}
