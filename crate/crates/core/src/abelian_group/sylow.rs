use std::collections::BTreeSet;
use std::sync::Arc;

use super::{AbelianGroup, Group, GroupElement, Subgroup};
use crate::finite_field::{factorize, inv_mod};

/// The Sylow p-subgroup of a group, as a group in its own right.
#[derive(Debug, Clone)]
pub struct SylowPart {
    prime: u64,
    group: Group,
    /// Coordinate of the ambient group matching the first coordinate here.
    offset: usize,
    /// Per ambient coordinate: CRT multiplier that is 1 mod the p-part and 0
    /// mod the complementary part of that invariant factor.
    idempotents: Vec<u64>,
}

impl SylowPart {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn group(&self) -> &Group {
        &self.group
    }
}

/// `G = G_{p_1} x ... x G_{p_s}`, with maps between `G` and the product.
#[derive(Debug, Clone)]
pub struct SylowDecomposition {
    group: Group,
    parts: Vec<SylowPart>,
}

pub fn sylow_decompose(group: &Group) -> SylowDecomposition {
    let primes: Vec<u64> = factorize(group.order() as u64)
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let t = group.rank();
    let parts = primes
        .into_iter()
        .map(|p| {
            let p_parts: Vec<u64> = group
                .divisors()
                .iter()
                .map(|&d| {
                    let mut q = 1;
                    let mut r = d;
                    while r % p == 0 {
                        r /= p;
                        q *= p;
                    }
                    q
                })
                .collect();
            let nontrivial: Vec<u64> = p_parts.iter().copied().filter(|&q| q > 1).collect();
            let offset = t - nontrivial.len();
            let idempotents = group
                .divisors()
                .iter()
                .zip(&p_parts)
                .map(|(&d, &q)| {
                    if q == 1 {
                        return 0;
                    }
                    let rest = d / q;
                    // rest * (rest^-1 mod q) is 1 mod q and 0 mod rest
                    let inv = if q == d {
                        1
                    } else {
                        inv_mod(rest % q, q).expect("coprime parts")
                    };
                    (rest as u128 * inv as u128 % d as u128) as u64
                })
                .collect();
            SylowPart {
                prime: p,
                group: AbelianGroup::new(&nontrivial).expect("factor of a valid group"),
                offset,
                idempotents,
            }
        })
        .collect();
    SylowDecomposition {
        group: Arc::clone(group),
        parts,
    }
}

impl SylowDecomposition {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn parts(&self) -> &[SylowPart] {
        &self.parts
    }

    /// Components of `g` in each Sylow part.
    pub fn split(&self, g: GroupElement) -> Vec<GroupElement> {
        let exps = self.group.exps(g);
        self.parts
            .iter()
            .map(|part| {
                let local: Vec<u64> = exps[part.offset..].to_vec();
                part.group.element(&local).expect("rank matches")
            })
            .collect()
    }

    /// Inverse of [`split`](Self::split).
    pub fn merge(&self, components: &[GroupElement]) -> GroupElement {
        let divs = self.group.divisors();
        let mut exps = vec![0u64; self.group.rank()];
        for (part, &h) in self.parts.iter().zip(components) {
            for (j, y) in part.group.exps(h).into_iter().enumerate() {
                let i = part.offset + j;
                let d = divs[i] as u128;
                exps[i] = ((exps[i] as u128 + y as u128 * part.idempotents[i] as u128) % d) as u64;
            }
        }
        self.group.element(&exps).expect("rank matches")
    }

    /// Image of an element of part `k` in `G`.
    pub fn embed(&self, k: usize, h: GroupElement) -> GroupElement {
        let comps: Vec<GroupElement> = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, p)| if i == k { h } else { p.group.identity() })
            .collect();
        self.merge(&comps)
    }

    /// `H = H_{p_1} x ... x H_{p_s}`.
    pub fn split_subgroup(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut images: Vec<BTreeSet<GroupElement>> = vec![BTreeSet::new(); self.parts.len()];
        for &g in h.elements() {
            for (k, c) in self.split(g).into_iter().enumerate() {
                images[k].insert(c);
            }
        }
        self.parts
            .iter()
            .zip(images)
            .map(|(part, set)| {
                Subgroup::from_closed_elements(&part.group, set.into_iter().collect())
            })
            .collect()
    }

    pub fn embed_subgroup(&self, k: usize, h: &Subgroup) -> Subgroup {
        let elems = h.elements().iter().map(|&x| self.embed(k, x)).collect();
        Subgroup::from_closed_elements(&self.group, elems)
    }

    pub fn merge_subgroups(&self, parts: &[Subgroup]) -> Subgroup {
        let gens: Vec<GroupElement> = parts
            .iter()
            .enumerate()
            .flat_map(|(k, h)| h.generators().iter().map(move |&x| self.embed(k, x)))
            .collect();
        Subgroup::generated(&self.group, &gens)
    }
}
