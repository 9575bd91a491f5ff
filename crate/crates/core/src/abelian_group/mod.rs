//! Finite abelian groups in invariant-factor form.
//!
//! An [`AbelianGroup`] is `Z/d_1 x ... x Z/d_t` with `d_1 | d_2 | ... | d_t`.
//! Elements are exponent tuples stored as a single mixed-radix index, with the
//! first coordinate most significant, so index order coincides with the
//! lexicographic order of exponent tuples.

mod automorphism;
mod character;
mod enumerate;
mod subgroup;
mod sylow;

use std::fmt;
use std::sync::Arc;

use crate::finite_field::{factorize, gcd, lcm, FieldError};

pub use automorphism::{
    automorphism_generators, automorphisms, automorphisms_bounded, laut_subset, power_maps,
    subgroup_orbits, subgroup_orbits_under, Automorphism, SubgroupOrbit,
    DEFAULT_AUTOMORPHISM_BOUND, DEFAULT_AUTOMORPHISM_COUNT_CAP,
};
pub use character::{annihilator, characters, pairing, Character};
pub use enumerate::{abelian_groups_of_order, abelian_groups_up_to};
pub use subgroup::{
    all_subgroups, all_subgroups_bounded, cocyclic_subgroups, extended_cocyclic_subgroups,
    quotient_type, sharp, subgroup_type, Subgroup, DEFAULT_SUBGROUP_BOUND,
};
pub use sylow::{sylow_decompose, SylowDecomposition, SylowPart};

/// Hard ceiling on group orders accepted by [`AbelianGroup::new`].
pub const MAX_GROUP_ORDER: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invariant factor {0} is smaller than 2")]
    BadDivisor(u64),
    #[error("{what}: group order {order} exceeds the bound {bound}")]
    GroupTooLarge {
        what: &'static str,
        order: u128,
        bound: u128,
    },
    #[error("subgroup belongs to a different group")]
    NotASubgroup,
    #[error("subgroup is not co-cyclic")]
    NotCocyclic,
    #[error("subgroup is the whole group")]
    HIsWholeGroup,
    #[error("group of order {0} is not a p-group")]
    NotPGroup(usize),
    #[error("exponent tuple {0:?} does not match the group")]
    BadElement(Vec<u64>),
    #[error("images do not define an automorphism")]
    NotAnAutomorphism,
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl GroupError {
    pub fn code(&self) -> &'static str {
        match self {
            GroupError::BadDivisor(_) => "BadDivisor",
            GroupError::GroupTooLarge { .. } => "GroupTooLarge",
            GroupError::NotASubgroup => "NotASubgroup",
            GroupError::NotCocyclic => "NotCocyclic",
            GroupError::HIsWholeGroup => "HIsWholeGroup",
            GroupError::NotPGroup(_) => "NotPGroup",
            GroupError::BadElement(_) => "BadElement",
            GroupError::NotAnAutomorphism => "NotAnAutomorphism",
            GroupError::Field(e) => e.code(),
        }
    }
}

/// Shared handle to a group.
pub type Group = Arc<AbelianGroup>;

/// An element of an [`AbelianGroup`], identified by its mixed-radix index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(usize);

impl GroupElement {
    pub fn index(self) -> usize {
        self.0
    }

    pub fn from_index(i: usize) -> Self {
        GroupElement(i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    divisors: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
    exponent: u64,
}

impl AbelianGroup {
    /// Builds the group from any list of cyclic factor orders and normalizes it
    /// to invariant factors, e.g. `[9, 3]` and `[3, 9]` both give `[3, 9]`,
    /// `[2, 3]` gives `[6]`.
    pub fn new(factors: &[u64]) -> Result<Group, GroupError> {
        if let Some(&bad) = factors.iter().find(|&&d| d < 2) {
            return Err(GroupError::BadDivisor(bad));
        }
        let order = factors
            .iter()
            .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
            .filter(|&o| o <= MAX_GROUP_ORDER as u128)
            .ok_or(GroupError::GroupTooLarge {
                what: "group construction",
                order: factors.iter().map(|&d| d as u128).product(),
                bound: MAX_GROUP_ORDER as u128,
            })?;
        // prime -> exponents of that prime, largest first
        let mut by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for &d in factors {
            for (p, e) in factorize(d) {
                match by_prime.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, es)) => es.push(e),
                    None => by_prime.push((p, vec![e])),
                }
            }
        }
        let rank = by_prime.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
        let mut divisors = vec![1u64; rank];
        for (p, es) in &mut by_prime {
            es.sort_unstable_by(|a, b| b.cmp(a));
            for (j, &e) in es.iter().enumerate() {
                divisors[rank - 1 - j] *= p.pow(e);
            }
        }
        Ok(Arc::new(Self::from_invariant_factors(
            divisors,
            order as usize,
        )))
    }

    fn from_invariant_factors(divisors: Vec<u64>, order: usize) -> Self {
        let t = divisors.len();
        let mut strides = vec![1usize; t];
        for i in (0..t.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * divisors[i + 1] as usize;
        }
        let exponent = divisors.last().copied().unwrap_or(1);
        Self {
            divisors,
            strides,
            order,
            exponent,
        }
    }

    pub fn trivial() -> Group {
        Self::new(&[]).expect("trivial group")
    }

    /// Invariant factors, ascending, each dividing the next.
    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// All invariant factors equal (the trivial group counts as homocyclic).
    pub fn is_homocyclic(&self) -> bool {
        self.divisors.windows(2).all(|w| w[0] == w[1])
    }

    /// The prime `p` if the group is a nontrivial p-group.
    pub fn p_group_prime(&self) -> Option<u64> {
        let f = factorize(self.order as u64);
        (f.len() == 1).then(|| f[0].0)
    }

    /// Comma-separated invariant factors, `1` for the trivial group.
    pub fn spec_string(&self) -> String {
        if self.divisors.is_empty() {
            "1".to_string()
        } else {
            self.divisors
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(0)
    }

    /// The `i`-th canonical generator (unit exponent vector).
    pub fn generator(&self, i: usize) -> GroupElement {
        GroupElement(self.strides[i])
    }

    pub fn generators(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.rank()).map(|i| self.generator(i))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order).map(GroupElement)
    }

    pub fn element(&self, exps: &[u64]) -> Result<GroupElement, GroupError> {
        if exps.len() != self.rank() {
            return Err(GroupError::BadElement(exps.to_vec()));
        }
        let idx = exps
            .iter()
            .zip(&self.divisors)
            .zip(&self.strides)
            .map(|((&e, &d), &s)| (e % d) as usize * s)
            .sum();
        Ok(GroupElement(idx))
    }

    #[inline]
    fn coord(&self, g: GroupElement, i: usize) -> u64 {
        (g.0 / self.strides[i]) as u64 % self.divisors[i]
    }

    pub fn exps(&self, g: GroupElement) -> Vec<u64> {
        (0..self.rank()).map(|i| self.coord(g, i)).collect()
    }

    #[inline]
    pub fn add(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let mut idx = 0;
        for i in 0..self.rank() {
            let d = self.divisors[i];
            idx += ((self.coord(a, i) + self.coord(b, i)) % d) as usize * self.strides[i];
        }
        GroupElement(idx)
    }

    #[inline]
    pub fn neg(&self, a: GroupElement) -> GroupElement {
        let mut idx = 0;
        for i in 0..self.rank() {
            let d = self.divisors[i];
            idx += ((d - self.coord(a, i)) % d) as usize * self.strides[i];
        }
        GroupElement(idx)
    }

    pub fn sub(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        self.add(a, self.neg(b))
    }

    /// `k * a` (written additively), i.e. `a^k` multiplicatively.
    pub fn mul_scalar(&self, a: GroupElement, k: u64) -> GroupElement {
        let mut idx = 0;
        for i in 0..self.rank() {
            let d = self.divisors[i];
            let e = (self.coord(a, i) as u128 * (k % d) as u128 % d as u128) as usize;
            idx += e * self.strides[i];
        }
        GroupElement(idx)
    }

    pub fn element_order(&self, a: GroupElement) -> u64 {
        (0..self.rank()).fold(1, |acc, i| {
            let d = self.divisors[i];
            lcm(acc, d / gcd(self.coord(a, i), d))
        })
    }

    /// `(e_1,...,e_t)`, or `()` in the trivial group.
    pub fn format_element(&self, g: GroupElement) -> String {
        let parts: Vec<String> = self.exps(g).iter().map(|e| e.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.divisors.iter().map(|d| format!("C{d}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let g = AbelianGroup::new(&[9, 3]).unwrap();
        assert_eq!(g.divisors(), &[3, 9]);
        assert_eq!(g.order(), 27);
        assert_eq!(g.exponent(), 9);
        assert_eq!(*g, *AbelianGroup::new(&[3, 9]).unwrap());

        let c6 = AbelianGroup::new(&[2, 3]).unwrap();
        assert_eq!(c6.divisors(), &[6]);

        let t = AbelianGroup::new(&[]).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.exponent(), 1);
        assert!(t.is_homocyclic());

        let g = AbelianGroup::new(&[4, 6, 10]).unwrap();
        assert_eq!(g.divisors(), &[2, 2, 60]);
        assert_eq!(AbelianGroup::new(&[45, 3]).unwrap().divisors(), &[3, 45]);
        assert!(matches!(
            AbelianGroup::new(&[1, 3]),
            Err(GroupError::BadDivisor(1))
        ));
    }

    #[test]
    fn element_arithmetic() {
        let g = AbelianGroup::new(&[3, 9]).unwrap();
        let a = g.element(&[0, 1]).unwrap();
        let b = g.element(&[1, 0]).unwrap();
        assert_eq!(g.element_order(a), 9);
        assert_eq!(g.element_order(b), 3);
        assert_eq!(g.element_order(g.add(a, b)), 9);
        assert_eq!(g.exps(g.add(a, b)), vec![1, 1]);
        assert_eq!(g.add(a, g.neg(a)), g.identity());
        assert_eq!(g.mul_scalar(a, 3), g.element(&[0, 3]).unwrap());
        // index order is lexicographic order of exponent tuples
        let tuples: Vec<Vec<u64>> = g.elements().map(|x| g.exps(x)).collect();
        let mut sorted = tuples.clone();
        sorted.sort();
        assert_eq!(tuples, sorted);
    }

    #[test]
    fn homocyclic_flag() {
        assert!(AbelianGroup::new(&[3, 3]).unwrap().is_homocyclic());
        assert!(AbelianGroup::new(&[15]).unwrap().is_homocyclic());
        assert!(!AbelianGroup::new(&[9, 3]).unwrap().is_homocyclic());
    }
}
