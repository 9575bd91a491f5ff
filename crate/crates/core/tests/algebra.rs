use abelian_codes::abelian_group::{
    all_subgroups, automorphisms, extended_cocyclic_subgroups, subgroup_type, AbelianGroup, Group,
    Subgroup,
};
use abelian_codes::finite_field::{euler_phi, field_make, mul_order, Field};
use abelian_codes::group_algebra::{
    eh_family, gamma, hat, homocyclic_factor, phi_map, primitive_idempotents, rank, Algebra,
    AlgebraElement, GroupAlgebra,
};
use proptest::prelude::*;

fn algebra(divs: &[u64], p: u64, m: usize) -> Algebra {
    let g: Group = AbelianGroup::new(divs).unwrap();
    let f: Field = field_make(p, m, None).unwrap();
    GroupAlgebra::new(&g, &f).unwrap()
}

const CASES: &[(&[u64], u64, usize)] = &[
    (&[9, 3], 2, 1),
    (&[3, 3], 2, 1),
    (&[9], 7, 1),
    (&[5, 5], 3, 1),
    (&[15], 2, 1),
    (&[3, 15], 2, 1),
    (&[4, 2], 3, 1),
    (&[7], 2, 2),
    (&[8], 5, 1),
];

#[test]
fn family_sums_to_one_and_is_orthogonal() {
    for &(divs, p, m) in CASES {
        let alg = algebra(divs, p, m);
        let fam = eh_family(&alg).unwrap();
        assert_eq!(
            fam.len(),
            extended_cocyclic_subgroups(alg.group()).unwrap().len()
        );
        let mut sum = AlgebraElement::zero(&alg);
        for (i, (_, x)) in fam.iter().enumerate() {
            assert!(x.is_idempotent());
            for (_, y) in &fam[i + 1..] {
                assert!((x * y).is_zero(), "{divs:?} over {p}^{m}");
            }
            sum = &sum + x;
        }
        assert_eq!(sum, AlgebraElement::one(&alg), "{divs:?} over {p}^{m}");
    }
}

#[test]
fn family_members_are_sums_of_their_primitives() {
    for &(divs, p, m) in CASES {
        let alg = algebra(divs, p, m);
        let fam = eh_family(&alg).unwrap();
        let prims = primitive_idempotents(&alg).unwrap();
        for (h, eh) in &fam {
            let mut sum = AlgebraElement::zero(&alg);
            for e in prims.iter().filter(|e| &e.phi_subgroup == h) {
                assert_eq!(&phi_map(&e.element, &fam).unwrap(), h);
                sum = &sum + &e.element;
            }
            assert_eq!(&sum, eh, "{divs:?} over {p}^{m}: {}", h.describe());
        }
    }
}

#[test]
fn hat_absorption_matches_containment() {
    for &(divs, p, m) in CASES {
        let alg = algebra(divs, p, m);
        let subs = all_subgroups(alg.group()).unwrap();
        let hats: Vec<AlgebraElement> = subs.iter().map(|k| hat(&alg, k).unwrap()).collect();
        for e in primitive_idempotents(&alg).unwrap() {
            for (k, kh) in subs.iter().zip(&hats) {
                let prod = &e.element * kh;
                if k.is_subgroup_of(&e.phi_subgroup) {
                    assert_eq!(prod, e.element);
                } else {
                    assert!(prod.is_zero());
                }
            }
        }
    }
}

#[test]
fn primitivity_criterion_sweep() {
    for p in [3u64, 5, 7] {
        for n in [1u32, 2] {
            let top = p.pow(n);
            for q in [2u64, 5, 7, 11] {
                if q == p {
                    continue;
                }
                let criterion = mul_order(q, top).unwrap() == euler_phi(top);
                for divs in [vec![top], vec![top, p]] {
                    let alg = algebra(&divs, q, 1);
                    let prims = primitive_idempotents(&alg).unwrap().len();
                    let sets = extended_cocyclic_subgroups(alg.group()).unwrap().len();
                    assert_eq!(prims == sets, criterion, "{divs:?} over F_{q}");
                    assert!(prims >= sets);
                }
            }
        }
    }
}

#[test]
fn gamma_span_equals_family_span() {
    for &(divs, p, m) in CASES {
        let alg = algebra(divs, p, m);
        let gammas: Vec<AlgebraElement> = alg.group().elements().map(|g| gamma(&alg, g)).collect();
        let fam: Vec<AlgebraElement> = eh_family(&alg)
            .unwrap()
            .into_iter()
            .map(|(_, e)| e)
            .collect();
        let mut cyclic: Vec<Subgroup> = alg
            .group()
            .elements()
            .map(|g| Subgroup::generated(alg.group(), &[g]))
            .collect();
        cyclic.sort();
        cyclic.dedup();
        let both: Vec<AlgebraElement> = gammas.iter().chain(&fam).cloned().collect();
        assert_eq!(rank(&alg, &gammas), cyclic.len());
        assert_eq!(rank(&alg, &fam), cyclic.len());
        assert_eq!(rank(&alg, &both), cyclic.len(), "{divs:?} over {p}^{m}");
    }
}

#[test]
fn coefficients_are_frobenius_fixed() {
    for &(divs, p, m) in CASES {
        let alg = algebra(divs, p, m);
        let f = alg.field().clone();
        let q = f.order();
        for e in primitive_idempotents(&alg).unwrap() {
            for &c in e.element.codes() {
                let x = f.from_code(c as u128);
                assert_eq!(x.pow(q), x);
            }
        }
    }
}

#[test]
fn homocyclic_primitives_factor_through_a_complement() {
    for (divs, q) in [
        (vec![3u64, 3], 2u64),
        (vec![9, 9], 2),
        (vec![3, 3, 3], 2),
        (vec![15, 15], 2),
        (vec![5, 5], 3),
    ] {
        let alg = algebra(&divs, q, 1);
        let top = divs[0];
        for e in primitive_idempotents(&alg).unwrap() {
            let f = homocyclic_factor(&alg, &e)
                .unwrap()
                .expect("factorization exists");
            assert_eq!(subgroup_type(&f.complement), vec![top; divs.len() - 1]);
            assert_eq!(alg.group().element_order(f.generator), top);
            assert!(!f.complement.contains(f.generator));
            let k = hat(&alg, &f.complement).unwrap();
            assert_eq!(&k * &f.cyclic_idempotent, e.element, "{divs:?}");
        }
    }
}

fn element_strategy(len: usize, q: u32) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..q, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn automorphisms_are_ring_maps(
        a in element_strategy(27, 4),
        b in element_strategy(27, 4),
        k in 0usize..10_000,
    ) {
        let alg = algebra(&[9, 3], 2, 2);
        let auts = automorphisms(alg.group()).unwrap();
        let psi = &auts[k % auts.len()];
        let x = AlgebraElement::from_codes(&alg, a).unwrap();
        let y = AlgebraElement::from_codes(&alg, b).unwrap();
        let lhs = (&x * &y).apply_automorphism(psi).unwrap();
        let rhs = &x.apply_automorphism(psi).unwrap() * &y.apply_automorphism(psi).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = (&x + &y).apply_automorphism(psi).unwrap();
        prop_assert_eq!(sum, &x.apply_automorphism(psi).unwrap() + &y.apply_automorphism(psi).unwrap());
    }
}
