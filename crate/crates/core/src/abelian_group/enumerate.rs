use super::{AbelianGroup, Group};
use crate::finite_field::factorize;

fn partitions(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=n.min(max)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

/// All abelian groups of order `n` up to isomorphism, sorted by invariant factors.
pub fn abelian_groups_of_order(n: u64) -> Vec<Group> {
    if n == 0 {
        return Vec::new();
    }
    let mut factor_lists: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, a) in factorize(n) {
        let mut parts = Vec::new();
        partitions(a, a, &mut Vec::new(), &mut parts);
        let mut next = Vec::new();
        for prefix in &factor_lists {
            for part in &parts {
                let mut v = prefix.clone();
                v.extend(part.iter().map(|&e| p.pow(e)));
                next.push(v);
            }
        }
        factor_lists = next;
    }
    let mut groups: Vec<Group> = factor_lists
        .iter()
        .filter_map(|f| AbelianGroup::new(f).ok())
        .collect();
    groups.sort_by(|a, b| a.divisors().cmp(b.divisors()));
    groups
}

/// Every abelian group of order `1..=max_order`, by order then invariant factors.
pub fn abelian_groups_up_to(max_order: u64) -> Vec<Group> {
    (1..=max_order).flat_map(abelian_groups_of_order).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_partition_numbers() {
        assert_eq!(abelian_groups_of_order(1).len(), 1);
        assert_eq!(abelian_groups_of_order(16).len(), 5);
        assert_eq!(abelian_groups_of_order(72).len(), 6);
        assert_eq!(abelian_groups_of_order(64).len(), 11);
        assert_eq!(abelian_groups_of_order(30).len(), 1);
        let divs: Vec<Vec<u64>> = abelian_groups_of_order(27)
            .iter()
            .map(|g| g.divisors().to_vec())
            .collect();
        assert_eq!(divs, vec![vec![3, 3, 3], vec![3, 9], vec![27]]);
    }

    #[test]
    fn up_to_is_sorted_by_order() {
        let all = abelian_groups_up_to(100);
        assert!(all.windows(2).all(|w| w[0].order() <= w[1].order()));
        let total: usize = (1..=100).map(|n| abelian_groups_of_order(n).len()).sum();
        assert_eq!(all.len(), total);
    }
}
