use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use super::{sylow_decompose, Group, GroupElement, GroupError, Subgroup};
use crate::finite_field::{gcd, unit_group_generators};

/// Largest group order for which [`automorphisms`] enumerates Aut(G).
pub const DEFAULT_AUTOMORPHISM_BOUND: usize = 512;

/// Enumeration aborts once this many automorphisms have been found.
pub const DEFAULT_AUTOMORPHISM_COUNT_CAP: usize = 200_000;

/// An automorphism, given by the images of the canonical generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    group: Group,
    images: Vec<GroupElement>,
}

impl Automorphism {
    pub fn from_images(group: &Group, images: &[GroupElement]) -> Result<Self, GroupError> {
        if images.len() != group.rank() || images.iter().any(|x| x.index() >= group.order()) {
            return Err(GroupError::NotAnAutomorphism);
        }
        for (x, &d) in images.iter().zip(group.divisors()) {
            if group.mul_scalar(*x, d) != group.identity() {
                return Err(GroupError::NotAnAutomorphism);
            }
        }
        if Subgroup::generated(group, images).order() != group.order() {
            return Err(GroupError::NotAnAutomorphism);
        }
        Ok(Self {
            group: Arc::clone(group),
            images: images.to_vec(),
        })
    }

    pub fn identity(group: &Group) -> Self {
        Self {
            group: Arc::clone(group),
            images: group.generators().collect(),
        }
    }

    /// `g -> g^r`; requires `r` coprime to the exponent.
    pub fn power_map(group: &Group, r: u64) -> Result<Self, GroupError> {
        if gcd(r % group.exponent().max(1), group.exponent()) != 1 && !group.is_trivial() {
            return Err(GroupError::NotAnAutomorphism);
        }
        let images = group.generators().map(|g| group.mul_scalar(g, r)).collect();
        Ok(Self {
            group: Arc::clone(group),
            images,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, g: GroupElement) -> GroupElement {
        let exps = self.group.exps(g);
        exps.iter()
            .zip(&self.images)
            .fold(self.group.identity(), |acc, (&e, &x)| {
                self.group.add(acc, self.group.mul_scalar(x, e))
            })
    }

    /// The induced permutation, indexed by element.
    pub fn permutation(&self) -> Vec<GroupElement> {
        // walk elements in index order, keeping the image of every prefix of
        // the coordinate tuple so each step costs a single addition
        let g = &self.group;
        let t = g.rank();
        let divs = g.divisors();
        let mut digits = vec![0u64; t];
        let mut prefix = vec![g.identity(); t + 1];
        let mut out = Vec::with_capacity(g.order());
        out.push(g.identity());
        for _ in 1..g.order() {
            let mut i = t - 1;
            while digits[i] + 1 == divs[i] {
                digits[i] = 0;
                i -= 1;
            }
            digits[i] += 1;
            prefix[i + 1] = g.add(prefix[i + 1], self.images[i]);
            for j in i + 2..=t {
                prefix[j] = prefix[i + 1];
            }
            out.push(prefix[t]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            group: Arc::clone(&self.group),
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    pub fn apply_subgroup(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<GroupElement> = h.generators().iter().map(|&g| self.apply(g)).collect();
        Subgroup::generated(&self.group, &gens)
    }

    /// The least `r` with `self(g) = g^r` for all `g`, if there is one.
    pub fn as_power_map(&self) -> Option<u64> {
        (1..=self.group.exponent()).find(|&r| {
            self.group
                .generators()
                .zip(&self.images)
                .all(|(g, &x)| self.group.mul_scalar(g, r) == x)
        })
    }
}

/// Every automorphism of `G`, with default bounds.
pub fn automorphisms(group: &Group) -> Result<Vec<Automorphism>, GroupError> {
    automorphisms_bounded(
        group,
        DEFAULT_AUTOMORPHISM_BOUND,
        DEFAULT_AUTOMORPHISM_COUNT_CAP,
    )
}

/// Backtracking over generator images. The first `i` images must generate a
/// subgroup of order `d_1 ... d_i`, which prunes non-injective branches early.
pub fn automorphisms_bounded(
    group: &Group,
    order_bound: usize,
    count_cap: usize,
) -> Result<Vec<Automorphism>, GroupError> {
    if group.order() > order_bound {
        return Err(GroupError::GroupTooLarge {
            what: "automorphism enumeration",
            order: group.order() as u128,
            bound: order_bound as u128,
        });
    }
    let mut out = Vec::new();
    let mut mask = vec![false; group.order()];
    mask[0] = true;
    let mut members = vec![group.identity()];
    let mut chosen = Vec::with_capacity(group.rank());
    search(
        group,
        &mut chosen,
        &mut mask,
        &mut members,
        &mut out,
        count_cap,
    )?;
    out.sort_by(|a, b| a.images.cmp(&b.images));
    Ok(out)
}

fn search(
    group: &Group,
    chosen: &mut Vec<GroupElement>,
    mask: &mut Vec<bool>,
    members: &mut Vec<GroupElement>,
    out: &mut Vec<Automorphism>,
    cap: usize,
) -> Result<(), GroupError> {
    let i = chosen.len();
    if i == group.rank() {
        if out.len() >= cap {
            return Err(GroupError::GroupTooLarge {
                what: "automorphism count",
                order: group.order() as u128,
                bound: cap as u128,
            });
        }
        out.push(Automorphism {
            group: Arc::clone(group),
            images: chosen.clone(),
        });
        return Ok(());
    }
    let d = group.divisors()[i];
    for x in group.elements() {
        if mask[x.index()] || group.mul_scalar(x, d) != group.identity() {
            continue;
        }
        // order of x modulo the current span must be exactly d
        let mut k = 1u64;
        let mut y = x;
        while !mask[y.index()] {
            y = group.add(y, x);
            k += 1;
        }
        if k != d {
            continue;
        }
        let saved = members.len();
        let base: Vec<GroupElement> = members.clone();
        let mut shift = x;
        while !mask[shift.index()] {
            for &h in &base {
                let z = group.add(h, shift);
                mask[z.index()] = true;
                members.push(z);
            }
            shift = group.add(shift, x);
        }
        chosen.push(x);
        let r = search(group, chosen, mask, members, out, cap);
        chosen.pop();
        for z in members.drain(saved..) {
            mask[z.index()] = false;
        }
        r?;
    }
    Ok(())
}

/// A generating set of Aut(G) built from elementary maps on each Sylow part:
/// unit scalings of one coordinate, transvections `g_i -> g_i + c g_j`, and
/// swaps of coordinates of equal order.
pub fn automorphism_generators(group: &Group) -> Vec<Automorphism> {
    let sylow = sylow_decompose(group);
    let mut out: Vec<Automorphism> = Vec::new();
    for (k, part) in sylow.parts().iter().enumerate() {
        let pg = part.group();
        let divs = pg.divisors();
        let r = pg.rank();
        let mut local: Vec<Vec<GroupElement>> = Vec::new();
        let base: Vec<GroupElement> = pg.generators().collect();
        for i in 0..r {
            for u in unit_group_generators(divs[i]) {
                let mut imgs = base.clone();
                imgs[i] = pg.mul_scalar(base[i], u);
                local.push(imgs);
            }
            for j in 0..r {
                if i == j {
                    continue;
                }
                let c = if divs[j] > divs[i] {
                    divs[j] / divs[i]
                } else {
                    1
                };
                let mut imgs = base.clone();
                imgs[i] = pg.add(base[i], pg.mul_scalar(base[j], c));
                local.push(imgs);
                if i < j && divs[i] == divs[j] {
                    let mut imgs = base.clone();
                    imgs.swap(i, j);
                    local.push(imgs);
                }
            }
        }
        for imgs in local {
            let part_aut = Automorphism {
                group: Arc::clone(pg),
                images: imgs,
            };
            let images = group
                .generators()
                .map(|g| {
                    let mut comps = sylow.split(g);
                    comps[k] = part_aut.apply(comps[k]);
                    sylow.merge(&comps)
                })
                .collect();
            out.push(Automorphism {
                group: Arc::clone(group),
                images,
            });
        }
    }
    let id = Automorphism::identity(group);
    let mut seen = HashSet::new();
    out.retain(|a| *a != id && seen.insert(a.images.clone()));
    out
}

/// The power maps `g -> g^r`, `r` a unit mod the exponent, sorted by `r`.
pub fn power_maps(group: &Group) -> Vec<Automorphism> {
    let n = group.exponent();
    if n == 1 {
        return vec![Automorphism::identity(group)];
    }
    (1..n)
        .filter(|&r| gcd(r, n) == 1)
        .map(|r| Automorphism::power_map(group, r).expect("unit"))
        .collect()
}

/// The automorphisms that are power maps.
pub fn laut_subset(auts: &[Automorphism]) -> Vec<Automorphism> {
    auts.iter()
        .filter(|a| a.as_power_map().is_some())
        .cloned()
        .collect()
}

/// An orbit of subgroups under Aut(G), restricted to a requested list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupOrbit {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
}

/// Partitions `subgroups` into Aut(G)-orbits.
pub fn subgroup_orbits(
    group: &Group,
    subgroups: &[Subgroup],
) -> Result<Vec<SubgroupOrbit>, GroupError> {
    for h in subgroups {
        if **h.group() != **group {
            return Err(GroupError::NotASubgroup);
        }
    }
    Ok(subgroup_orbits_under(
        &automorphism_generators(group),
        subgroups,
    ))
}

/// Partitions `subgroups` into orbits of the group generated by `gens`.
///
/// Orbits are sorted by the order and canonical form of their least member,
/// which is the representative.
pub fn subgroup_orbits_under(gens: &[Automorphism], subgroups: &[Subgroup]) -> Vec<SubgroupOrbit> {
    let mut assigned = vec![false; subgroups.len()];
    let mut orbits = Vec::new();
    for start in 0..subgroups.len() {
        if assigned[start] {
            continue;
        }
        let mut seen: HashSet<Subgroup> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(subgroups[start].clone());
        queue.push_back(subgroups[start].clone());
        while let Some(h) = queue.pop_front() {
            for a in gens {
                let img = a.apply_subgroup(&h);
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let mut members: Vec<Subgroup> = Vec::new();
        for (i, h) in subgroups.iter().enumerate() {
            if !assigned[i] && seen.contains(h) {
                assigned[i] = true;
                members.push(h.clone());
            }
        }
        members.sort();
        orbits.push(SubgroupOrbit {
            representative: members[0].clone(),
            members,
        });
    }
    orbits.sort_by(|a, b| {
        a.representative
            .order()
            .cmp(&b.representative.order())
            .then_with(|| a.representative.cmp(&b.representative))
    });
    orbits
}
