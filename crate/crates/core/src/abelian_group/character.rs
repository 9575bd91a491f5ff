//! Characters of `G` with values in a field containing the `exp(G)`-th roots of
//! unity. The dual group is identified with `G` itself: the index `k` names
//! the character `g -> zeta^pairing(k, g)`.

use super::{Group, GroupElement, GroupError, Subgroup};
use crate::finite_field::{primitive_root_of_unity, Field, FieldScalar};

/// `sum_i k_i g_i (exp / d_i) mod exp`.
pub fn pairing(group: &Group, k: GroupElement, g: GroupElement) -> u64 {
    let exp = group.exponent() as u128;
    let ke = group.exps(k);
    let ge = group.exps(g);
    let mut acc = 0u128;
    for ((a, b), &d) in ke.iter().zip(&ge).zip(group.divisors()) {
        acc = (acc + *a as u128 * *b as u128 % exp * (exp / d as u128)) % exp;
    }
    acc as u64
}

#[derive(Debug, Clone)]
pub struct Character {
    group: Group,
    index: GroupElement,
    root: FieldScalar,
}

impl Character {
    pub fn index(&self) -> GroupElement {
        self.index
    }

    pub fn value(&self, g: GroupElement) -> FieldScalar {
        self.root.pow(pairing(&self.group, self.index, g) as u128)
    }
}

/// All `|G|` characters, in element-index order.
pub fn characters(group: &Group, field: &Field) -> Result<Vec<Character>, GroupError> {
    let root = primitive_root_of_unity(field, group.exponent())?;
    Ok(group
        .elements()
        .map(|k| Character {
            group: group.clone(),
            index: k,
            root: root.clone(),
        })
        .collect())
}

/// Characters trivial on `H`, as a subgroup of the dual (identified with `G`).
pub fn annihilator(group: &Group, h: &Subgroup) -> Result<Subgroup, GroupError> {
    if **h.group() != **group {
        return Err(GroupError::NotASubgroup);
    }
    let elems = group
        .elements()
        .filter(|&k| h.generators().iter().all(|&g| pairing(group, k, g) == 0))
        .collect();
    Ok(Subgroup::from_closed_elements(group, elems))
}
