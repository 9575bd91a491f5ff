use abelian_codes::abelian_group::{
    abelian_groups_up_to, automorphisms, AbelianGroup, Group, GroupError, Subgroup,
};
use abelian_codes::codes::{
    classes_by_search, classify_codes, equivalent, min_weight, weight_distribution, MinimalCode,
};
use abelian_codes::finite_field::{field_make, Field};
use abelian_codes::group_algebra::{hat, primitive_idempotents, AlgebraElement, GroupAlgebra};

fn field(p: u64) -> Field {
    field_make(p, 1, None).unwrap()
}

fn codes_of(g: &Group, f: &Field) -> Vec<MinimalCode> {
    let alg = GroupAlgebra::new(g, f).unwrap();
    primitive_idempotents(&alg)
        .unwrap()
        .into_iter()
        .map(|e| MinimalCode::new(&alg, e))
        .collect()
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Orbit-based equivalence against exhaustive automorphism search.
fn oracle_agrees(g: &Group, f: &Field) -> Result<usize, GroupError> {
    let auts = automorphisms(g)?;
    let alg = GroupAlgebra::new(g, f).unwrap();
    let cls = classify_codes(&alg).unwrap();
    let labels = classes_by_search(&cls.codes, &auts).unwrap();
    let n = cls.codes.len();
    for i in 0..n {
        for j in 0..n {
            let fast = cls.class_of(i) == cls.class_of(j);
            assert_eq!(
                fast,
                labels[i] == labels[j],
                "{}: codes {i}, {j}",
                g.spec_string()
            );
        }
    }
    Ok(n)
}

#[test]
fn oracle_agreement_up_to_order_100() {
    for q in [2u64, 3] {
        let f = field(q);
        let mut checked = 0;
        let mut skipped = Vec::new();
        for g in abelian_groups_up_to(100)
            .into_iter()
            .filter(|g| !(g.order() as u64).is_multiple_of(q))
        {
            match oracle_agrees(&g, &f) {
                Ok(_) => checked += 1,
                Err(GroupError::GroupTooLarge { .. }) => skipped.push(g.spec_string()),
                Err(e) => panic!("{}: {e}", g.spec_string()),
            }
        }
        assert!(checked > 30, "q={q}: only {checked} groups checked");
        // only groups whose automorphism groups exceed the enumeration cap are skipped
        for s in &skipped {
            let g = AbelianGroup::new(
                &s.split(',')
                    .map(|t| t.parse().unwrap())
                    .collect::<Vec<u64>>(),
            )
            .unwrap();
            assert!(g.rank() >= 3, "q={q}: unexpected skip of {s}");
        }
    }
}

#[test]
fn dimensions_sum_to_group_order() {
    for (divs, p) in [
        (vec![9, 3], 2),
        (vec![27, 3], 2),
        (vec![5, 5], 2),
        (vec![4, 4], 3),
        (vec![7, 7], 2),
        (vec![3, 15], 2),
    ] {
        let g = AbelianGroup::new(&divs).unwrap();
        let total: usize = codes_of(&g, &field(p)).iter().map(|c| c.dimension()).sum();
        assert_eq!(total, g.order());
    }
}

#[test]
fn class_metrics_are_constant_on_classes() {
    for (divs, p) in [
        (vec![9, 3], 2),
        (vec![27, 3], 2),
        (vec![3, 3, 3], 2),
        (vec![5, 5], 2),
        (vec![4, 2], 3),
        (vec![3, 15], 2),
    ] {
        let g = AbelianGroup::new(&divs).unwrap();
        let alg = GroupAlgebra::new(&g, &field(p)).unwrap();
        let cls = classify_codes(&alg).unwrap();
        for class in &cls.classes {
            let dists: Vec<_> = class
                .members
                .iter()
                .map(|&i| weight_distribution(&cls.codes[i], 24).unwrap())
                .collect();
            assert!(dists.windows(2).all(|w| w[0] == w[1]), "{divs:?}");
            let dims: Vec<usize> = class
                .members
                .iter()
                .map(|&i| cls.codes[i].dimension())
                .collect();
            assert!(dims.windows(2).all(|w| w[0] == w[1]));
        }
    }
}

/// Ideals `(<a>)^ - G^`, `(<a^p, b>)^ - G^` and `(<b>)^ - (<a^p, b>)^` in `C_{p^2} x C_p`.
fn special_codes(p: u64) -> (MinimalCode, MinimalCode, MinimalCode) {
    let g = AbelianGroup::new(&[p * p, p]).unwrap();
    let alg = GroupAlgebra::new(&g, &field(2)).unwrap();
    let a = g.generator(1);
    let b = g.generator(0);
    let h = |gens: &[_]| hat(&alg, &Subgroup::generated(&g, gens)).unwrap();
    let whole = hat(&alg, &Subgroup::whole(&g)).unwrap();
    let big = h(&[g.mul_scalar(a, p), b]);
    let targets: [AlgebraElement; 3] = [
        h(&[a]).try_sub(&whole).unwrap(),
        big.try_sub(&whole).unwrap(),
        h(&[b]).try_sub(&big).unwrap(),
    ];
    let codes = codes_of(&g, &field(2));
    let find = |x: &AlgebraElement| {
        codes
            .iter()
            .find(|c| &c.idempotent().element == x)
            .unwrap()
            .clone()
    };
    (find(&targets[0]), find(&targets[1]), find(&targets[2]))
}

#[test]
fn equal_distributions_do_not_imply_equivalence() {
    for p in [3u64, 5] {
        let (i2, i3, _) = special_codes(p);
        let d2 = weight_distribution(&i2, 24).unwrap();
        let d3 = weight_distribution(&i3, 24).unwrap();
        assert_eq!(d2, d3);
        assert!(!equivalent(&i2, &i3).unwrap());
        let nonzero: u64 = (1..=(p - 1) / 2).map(|k| binom(p, 2 * k)).sum();
        assert_eq!(nonzero, (1 << (p - 1)) - 1);
        for k in 1..=(p - 1) / 2 {
            assert_eq!(d2.count((2 * k * p * p) as usize), binom(p, 2 * k));
        }
        assert_eq!(d2.total() - 1, nonzero);
    }
}

#[test]
fn largest_class_weights_are_multiples_of_p() {
    for p in [3u64, 5] {
        let (_, _, i1) = special_codes(p);
        let d = weight_distribution(&i1, 24).unwrap();
        for &w in d.counts().keys() {
            assert_eq!(w as u64 % p, 0, "p={p}: weight {w}");
        }
        assert_eq!(d.count(p as usize), 0);
        assert_eq!(d.min_nonzero(), Some(2 * p as usize));
    }
}

#[test]
fn min_weight_fallback_is_flagged() {
    let g = AbelianGroup::new(&[27, 3]).unwrap();
    let codes = codes_of(&g, &field(2));
    let big = codes.iter().find(|c| c.dimension() == 18).unwrap();
    let exact = min_weight(big, 24);
    let rough = min_weight(big, 10);
    assert!(exact.exact && !rough.exact);
    assert!(rough.value >= exact.value);
}
