//! Power maps acting on basic sets.

use crate::abelian_group::{gcd, is_prime};
use crate::error::{Error, Result};
use crate::set::ElementSet;

use super::SRing;

/// `X^(m) = {x^m : x in X}` for a basic set `X` and `m` coprime to `|G|`.
/// The result is again basic; this is checked.
pub fn rational_conjugate(a: &SRing, x: ElementSet, m: i64) -> Result<ElementSet> {
    let g = a.group();
    if gcd(m.unsigned_abs(), g.order() as u64) != 1 {
        return Err(Error::Precondition(format!(
            "m = {m} is not coprime to |G| = {}",
            g.order()
        )));
    }
    if !a.is_basic(x) {
        return Err(Error::Precondition(format!("{x:?} is not a basic set")));
    }
    let y = g.power_set(x, m);
    if !a.is_basic(y) {
        return Err(Error::InvariantViolation(format!(
            "{x:?}^({m}) = {y:?} is not a basic set"
        )));
    }
    Ok(y)
}

/// `X^[p] = {x^p : x in X, |X ∩ Hx| != 0 mod p}` where `H = {g : g^p = e}`.
/// The result is again an A-set; this is checked.
pub fn schur_wielandt(a: &SRing, x: ElementSet, p: u64) -> Result<ElementSet> {
    let g = a.group();
    if !is_prime(p) || !(g.order() as u64).is_multiple_of(p) {
        return Err(Error::Precondition(format!(
            "p = {p} is not a prime divisor of |G| = {}",
            g.order()
        )));
    }
    if !a.is_a_set(x) {
        return Err(Error::Precondition(format!("{x:?} is not an A-set")));
    }
    let h = g.torsion(p as i64).set;
    let y: ElementSet = x
        .iter()
        .filter(|&z| !(x.intersection(g.translate(h, z)).len() as u64).is_multiple_of(p))
        .map(|z| g.pow(z, p as i64))
        .collect();
    if !a.is_a_set(y) {
        return Err(Error::InvariantViolation(format!(
            "{x:?}^[{p}] = {y:?} is not an A-set"
        )));
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian_group::AbelianGroup;

    fn set(v: &[usize]) -> ElementSet {
        v.iter().copied().collect()
    }

    #[test]
    fn conjugates_in_c7() {
        let g: AbelianGroup = "C7".parse().unwrap();
        let a = SRing::from_class_lists(&g, &[vec![0], vec![1, 2, 4], vec![3, 5, 6]]).unwrap();
        let x = set(&[1, 2, 4]);
        assert_eq!(rational_conjugate(&a, x, 1).unwrap(), x);
        assert_eq!(rational_conjugate(&a, x, 3).unwrap(), set(&[3, 5, 6]));
        assert_eq!(rational_conjugate(&a, x, -1).unwrap(), set(&[3, 5, 6]));
        assert!(matches!(
            rational_conjugate(&a, x, 7),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            rational_conjugate(&a, set(&[1, 2]), 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn schur_wielandt_in_c6() {
        let g: AbelianGroup = "C6".parse().unwrap();
        let zg = SRing::group_ring(&g);
        assert_eq!(schur_wielandt(&zg, set(&[1, 4]), 2).unwrap(), ElementSet::EMPTY);
        assert_eq!(schur_wielandt(&zg, set(&[1]), 2).unwrap(), set(&[2]));
        assert!(matches!(
            schur_wielandt(&zg, set(&[1]), 5),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            schur_wielandt(&zg, set(&[1]), 4),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn power_maps_permute_classes_over_c5() {
        let g: AbelianGroup = "C5".parse().unwrap();
        for a in crate::sring::enumerate_srings(&g).unwrap() {
            for &c in a.classes() {
                for m in 1..5 {
                    assert!(rational_conjugate(&a, c, m).is_ok());
                }
            }
        }
    }
}
