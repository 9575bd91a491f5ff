use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{sylow_decompose, Group, GroupElement, GroupError};

/// Default order bound for subgroup-lattice enumeration.
pub const DEFAULT_SUBGROUP_BOUND: usize = 4096;

/// A subgroup of a fixed group, stored as its sorted element list.
///
/// Equality, hashing and ordering only look at the element list, which is the
/// canonical form of the subgroup.
#[derive(Clone)]
pub struct Subgroup {
    group: Group,
    elements: Vec<GroupElement>,
    generators: Vec<GroupElement>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements.cmp(&other.elements)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{}[order {}]", self.describe(), self.order())
    }
}

/// Adds `<g>` to the closed set `members` (tracked in `mask`).
fn extend_closure(
    group: &Group,
    mask: &mut [bool],
    members: &mut Vec<GroupElement>,
    g: GroupElement,
) {
    let base_len = members.len();
    let mut shift = g;
    while !mask[shift.index()] {
        for i in 0..base_len {
            let x = group.add(members[i], shift);
            mask[x.index()] = true;
            members.push(x);
        }
        shift = group.add(shift, g);
    }
}

/// Repeatedly picks an element of maximal order modulo the current subgroup.
///
/// Starting from the subgroup `start`, returns `(order mod current, element)`
/// pairs until `ambient` is exhausted. The orders are the invariant factors of
/// `<ambient>/<start>` and the elements form a minimal generating set modulo
/// `start`.
fn peel(
    group: &Group,
    ambient: &[GroupElement],
    start: &[GroupElement],
) -> Vec<(u64, GroupElement)> {
    let mut mask = vec![false; group.order()];
    let mut members: Vec<GroupElement> = start.to_vec();
    for s in start {
        mask[s.index()] = true;
    }
    let mut out = Vec::new();
    while members.len() < ambient.len() {
        let mut best: Option<(u64, GroupElement)> = None;
        for &g in ambient {
            if mask[g.index()] {
                continue;
            }
            let mut k = 1u64;
            let mut x = g;
            while !mask[x.index()] {
                x = group.add(x, g);
                k += 1;
            }
            if best.is_none_or(|(o, _)| k > o) {
                best = Some((k, g));
            }
        }
        let (k, g) = best.expect("ambient strictly larger than current subgroup");
        out.push((k, g));
        extend_closure(group, &mut mask, &mut members, g);
    }
    out
}

impl Subgroup {
    pub fn trivial(group: &Group) -> Self {
        Self {
            group: Arc::clone(group),
            elements: vec![group.identity()],
            generators: Vec::new(),
        }
    }

    pub fn whole(group: &Group) -> Self {
        Self::from_closed_elements(group, group.elements().collect())
    }

    /// The subgroup generated by `gens`.
    pub fn generated(group: &Group, gens: &[GroupElement]) -> Self {
        let mut mask = vec![false; group.order()];
        mask[0] = true;
        let mut members = vec![group.identity()];
        for &g in gens {
            extend_closure(group, &mut mask, &mut members, g);
        }
        Self::from_closed_elements(group, members)
    }

    /// Builds a subgroup from an explicit element set, checking closure.
    pub fn from_elements(group: &Group, elements: &[GroupElement]) -> Result<Self, GroupError> {
        let mut elems: Vec<GroupElement> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let mut mask = vec![false; group.order()];
        for e in &elems {
            if e.index() >= group.order() {
                return Err(GroupError::NotASubgroup);
            }
            mask[e.index()] = true;
        }
        if !mask[0] {
            return Err(GroupError::NotASubgroup);
        }
        for &a in &elems {
            for &b in &elems {
                if !mask[group.sub(a, b).index()] {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        Ok(Self::from_closed_elements(group, elems))
    }

    /// `elements` must already be a subgroup; it need not be sorted.
    pub(crate) fn from_closed_elements(group: &Group, mut elements: Vec<GroupElement>) -> Self {
        elements.sort_unstable();
        let generators = peel(group, &elements, &[group.identity()])
            .into_iter()
            .map(|(_, g)| g)
            .collect();
        Self {
            group: Arc::clone(group),
            elements,
            generators,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Sorted element list (the canonical form).
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Deterministic minimal generating list.
    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.group.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order()
            && other.order().is_multiple_of(self.order())
            && self.generators.iter().all(|&g| other.contains(g))
    }

    /// Membership mask indexed by element.
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.group.order()];
        for g in &self.elements {
            m[g.index()] = true;
        }
        m
    }

    /// Membership as a packed bitset.
    pub fn bitset(&self) -> Vec<u64> {
        let mut bits = vec![0u64; self.group.order().div_ceil(64)];
        for g in &self.elements {
            bits[g.index() / 64] |= 1 << (g.index() % 64);
        }
        bits
    }

    /// `H K`, the smallest subgroup containing both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(&other.generators);
        Subgroup::generated(&self.group, &gens)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let elems = self
            .elements
            .iter()
            .copied()
            .filter(|&g| other.contains(g))
            .collect();
        Subgroup::from_closed_elements(&self.group, elems)
    }

    /// `<g1,g2,...>` with generators written as exponent tuples.
    pub fn describe(&self) -> String {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|&g| self.group.format_element(g))
            .collect();
        format!("<{}>", gens.join(","))
    }
}

/// Invariant factors of `G/H`, ascending; empty when `H = G`.
pub fn quotient_type(group: &Group, h: &Subgroup) -> Result<Vec<u64>, GroupError> {
    if **h.group() != **group {
        return Err(GroupError::NotASubgroup);
    }
    let all: Vec<GroupElement> = group.elements().collect();
    let mut factors: Vec<u64> = peel(group, &all, h.elements())
        .into_iter()
        .map(|(k, _)| k)
        .collect();
    factors.sort_unstable();
    Ok(factors)
}

/// Invariant factors of `H` itself.
pub fn subgroup_type(h: &Subgroup) -> Vec<u64> {
    let mut factors: Vec<u64> = peel(h.group(), h.elements(), &[h.group().identity()])
        .into_iter()
        .map(|(k, _)| k)
        .collect();
    factors.sort_unstable();
    factors
}

/// Every subgroup of `G`, sorted by order and then canonical form.
pub fn all_subgroups(group: &Group) -> Result<Vec<Subgroup>, GroupError> {
    all_subgroups_bounded(group, DEFAULT_SUBGROUP_BOUND)
}

pub fn all_subgroups_bounded(group: &Group, bound: usize) -> Result<Vec<Subgroup>, GroupError> {
    if group.order() > bound {
        return Err(GroupError::GroupTooLarge {
            what: "subgroup lattice",
            order: group.order() as u128,
            bound: bound as u128,
        });
    }
    let sylow = sylow_decompose(group);
    let per_part: Vec<Vec<Subgroup>> = sylow
        .parts()
        .iter()
        .map(|part| p_group_subgroups(part.group()))
        .collect();
    let mut out = vec![Vec::<Subgroup>::new()];
    for (i, subs) in per_part.iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * subs.len());
        for prefix in &out {
            for s in subs {
                let mut v = prefix.clone();
                v.push(s.clone());
                next.push(v);
            }
        }
        out = next;
        debug_assert_eq!(out.first().map(|v| v.len()), Some(i + 1));
    }
    let mut result: Vec<Subgroup> = out
        .iter()
        .map(|parts| sylow.merge_subgroups(parts))
        .collect();
    result.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Ok(result)
}

/// Subgroups of a group of prime-power order, by extending known subgroups one
/// element at a time.
fn p_group_subgroups(group: &Group) -> Vec<Subgroup> {
    let n = group.order();
    let mut seen: HashSet<Vec<GroupElement>> = HashSet::new();
    let mut queue: Vec<Vec<GroupElement>> = vec![vec![group.identity()]];
    seen.insert(queue[0].clone());
    let mut head = 0;
    while head < queue.len() {
        let members = queue[head].clone();
        head += 1;
        if members.len() == n {
            continue;
        }
        let mut mask = vec![false; n];
        for g in &members {
            mask[g.index()] = true;
        }
        for g in group.elements() {
            if mask[g.index()] {
                continue;
            }
            let mut m2 = mask.clone();
            let mut ext = members.clone();
            extend_closure(group, &mut m2, &mut ext, g);
            ext.sort_unstable();
            if seen.insert(ext.clone()) {
                queue.push(ext);
            }
        }
    }
    queue
        .into_iter()
        .map(|e| Subgroup::from_closed_elements(group, e))
        .collect()
}

/// Subgroups `H` with `G/H` cyclic and nontrivial.
pub fn cocyclic_subgroups(group: &Group) -> Result<Vec<Subgroup>, GroupError> {
    let mut out = Vec::new();
    for h in all_subgroups(group)? {
        if quotient_type(group, &h)?.len() == 1 {
            out.push(h);
        }
    }
    Ok(out)
}

/// Co-cyclic subgroups together with `G` itself.
pub fn extended_cocyclic_subgroups(group: &Group) -> Result<Vec<Subgroup>, GroupError> {
    let mut out = cocyclic_subgroups(group)?;
    out.push(Subgroup::whole(group));
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// For `H` co-cyclic in a p-group `G`, the unique `L` with `H < L` and `[L:H] = p`.
pub fn sharp(group: &Group, h: &Subgroup) -> Result<Subgroup, GroupError> {
    if **h.group() != **group {
        return Err(GroupError::NotASubgroup);
    }
    let p = group
        .p_group_prime()
        .ok_or(GroupError::NotPGroup(group.order()))?;
    if h.is_whole() {
        return Err(GroupError::HIsWholeGroup);
    }
    let mut found: Option<Subgroup> = None;
    for g in group.elements() {
        if h.contains(g) || !h.contains(group.mul_scalar(g, p)) {
            continue;
        }
        if found.as_ref().is_some_and(|l| l.contains(g)) {
            continue;
        }
        let mut gens = h.generators().to_vec();
        gens.push(g);
        let l = Subgroup::generated(group, &gens);
        if found.is_some() {
            return Err(GroupError::NotCocyclic);
        }
        found = Some(l);
    }
    found.ok_or(GroupError::NotCocyclic)
}
