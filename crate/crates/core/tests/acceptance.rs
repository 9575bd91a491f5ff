//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `EXPECTED_FAILURES` are known to be unattainable as
//! stated; they still run in full and print FAIL, and the process only exits
//! non-zero when an unexpected failure occurs or an expected one starts passing.

use std::time::{Duration, Instant};

use abelian_codes::abelian_group::{
    abelian_groups_up_to, all_subgroups, annihilator, automorphisms, extended_cocyclic_subgroups,
    quotient_type, AbelianGroup, Group, Subgroup,
};
use abelian_codes::codes::{
    classes_by_search, classify, equivalent, tau_sweep, weight_distribution, ClassifyOptions,
    MinimalCode,
};
use abelian_codes::finite_field::{euler_phi, field_make, mul_order, Field};
use abelian_codes::group_algebra::{
    eh_family, hat, homocyclic_factor, idempotent_group, primitive_idempotents, AlgebraElement,
    GroupAlgebra,
};

const EXPECTED_FAILURES: &[u32] = &[6];

type Outcome = Result<String, String>;

fn binary() -> Field {
    field_make(2, 1, None).unwrap()
}

fn group(divs: &[u64]) -> Group {
    AbelianGroup::new(divs).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Minimal codes of `F_q G` in the order the idempotents are produced.
fn codes_of(g: &Group, f: &Field) -> Vec<MinimalCode> {
    let alg = GroupAlgebra::new(g, f).unwrap();
    primitive_idempotents(&alg)
        .unwrap()
        .into_iter()
        .map(|e| MinimalCode::new(&alg, e))
        .collect()
}

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn square_by_prime_table() -> Outcome {
    let r = classify(&group(&[9, 3]), &binary(), ClassifyOptions::default())
        .map_err(|e| e.to_string())?;
    let dims: Vec<usize> = r.codes.iter().map(|c| c.dimension).collect();
    let wts: Vec<usize> = r.codes.iter().map(|c| c.min_weight).collect();
    ensure(r.codes.len() == 8, format!("{} codes", r.codes.len()))?;
    ensure(r.codes.iter().all(|c| c.min_weight_exact), "inexact weight")?;
    ensure(
        sorted(&dims) == sorted(&[1, 6, 6, 6, 2, 2, 2, 2]),
        format!("dims {dims:?}"),
    )?;
    ensure(
        sorted(&wts) == sorted(&[27, 6, 6, 6, 18, 18, 18, 18]),
        format!("weights {wts:?}"),
    )?;
    let pairs: Vec<(usize, usize)> = r
        .codes
        .iter()
        .map(|c| (c.dimension, c.min_weight))
        .collect();
    ensure(
        sorted(&pairs)
            == sorted(&[
                (1, 27),
                (6, 6),
                (6, 6),
                (6, 6),
                (2, 18),
                (2, 18),
                (2, 18),
                (2, 18),
            ]),
        format!("pairs {pairs:?}"),
    )?;
    ensure(r.class_count == 4, format!("{} classes", r.class_count))?;
    Ok("8 codes, dims/weights match, 4 classes".into())
}

/// The two dimension-2 ideals attached to `<a>` and `<a^p, b>` in `C_{p^2} x C_p`.
fn equal_distribution_pair(p: u64) -> Outcome {
    let g = group(&[p * p, p]);
    let alg = GroupAlgebra::new(&g, &binary()).unwrap();
    let a = g.generator(1);
    let b = g.generator(0);
    let whole = hat(&alg, &Subgroup::whole(&g)).unwrap();
    let i2 = hat(&alg, &Subgroup::generated(&g, &[a]))
        .unwrap()
        .try_sub(&whole)
        .unwrap();
    let i3 = hat(&alg, &Subgroup::generated(&g, &[g.mul_scalar(a, p), b]))
        .unwrap()
        .try_sub(&whole)
        .unwrap();
    let codes = codes_of(&g, &binary());
    let find = |x: &AlgebraElement| codes.iter().find(|c| &c.idempotent().element == x).cloned();
    let (c2, c3) = match (find(&i2), find(&i3)) {
        (Some(c2), Some(c3)) => (c2, c3),
        _ => return Err("pair is not primitive".into()),
    };
    let d2 = weight_distribution(&c2, 24).map_err(|e| e.to_string())?;
    let d3 = weight_distribution(&c3, 24).map_err(|e| e.to_string())?;
    let expected: Vec<(usize, u64)> = std::iter::once((0, 1))
        .chain((1..=p / 2).map(|k| {
            let binom = (0..2 * k).fold(1u64, |acc, i| acc * (p - i) / (i + 1));
            ((2 * k * p * p) as usize, binom)
        }))
        .collect();
    let got: Vec<(usize, u64)> = d2.counts().iter().map(|(&w, &c)| (w, c)).collect();
    ensure(
        got == expected,
        format!("p={p}: {d2} vs expected {expected:?}"),
    )?;
    ensure(d2 == d3, format!("p={p}: distributions differ {d2} / {d3}"))?;
    let eq = equivalent(&c2, &c3).map_err(|e| e.to_string())?;
    ensure(!eq, format!("p={p}: pair reported equivalent"))?;
    Ok(format!("p={p}: both {d2}, inequivalent"))
}

fn equal_distributions_inequivalent() -> Outcome {
    let a = equal_distribution_pair(3)?;
    let start = Instant::now();
    let b = equal_distribution_pair(5)?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), format!("p=5 took {t:?}"))?;
    Ok(format!("{a}; {b}"))
}

fn power_by_prime_table() -> Outcome {
    let opts = ClassifyOptions {
        with_distributions: true,
        dimension_cap: 24,
    };
    let r = classify(&group(&[27, 3]), &binary(), opts).map_err(|e| e.to_string())?;
    ensure(r.class_count == 6, format!("{} classes", r.class_count))?;
    let mut dw: Vec<(usize, usize)> = r
        .classes
        .iter()
        .map(|c| (c.dimension, c.min_weight))
        .collect();
    dw.sort();
    dw.dedup();
    ensure(
        dw == vec![(1, 81), (2, 54), (6, 18), (18, 6)],
        format!("class (dim, weight) {dw:?}"),
    )?;
    let big = r
        .classes
        .iter()
        .find(|c| c.dimension == 18)
        .and_then(|c| c.distribution.clone())
        .ok_or("no exact distribution at dimension 18")?;
    ensure(big.total() == 1 << 18, format!("{} words", big.total()))?;
    Ok(format!("6 classes; dimension-18 distribution {big}"))
}

fn family_and_splitting() -> Outcome {
    let g = group(&[9, 3]);
    let alg = GroupAlgebra::new(&g, &binary()).unwrap();
    ensure(
        mul_order(2, 9).ok() == Some(euler_phi(9)),
        "order of 2 mod 9",
    )?;
    let fam = eh_family(&alg).map_err(|e| e.to_string())?;
    let mut sum = AlgebraElement::zero(&alg);
    for (i, (_, x)) in fam.iter().enumerate() {
        ensure(
            x.is_idempotent() && !x.is_zero(),
            "family member not a nonzero idempotent",
        )?;
        for (_, y) in &fam[i + 1..] {
            ensure((x * y).is_zero(), "family not orthogonal")?;
        }
        sum = &sum + x;
    }
    ensure(sum == AlgebraElement::one(&alg), "family does not sum to 1")?;
    let mut fam_elems: Vec<Vec<u32>> = fam.iter().map(|(_, x)| x.codes().to_vec()).collect();
    let mut prims: Vec<Vec<u32>> = primitive_idempotents(&alg)
        .unwrap()
        .iter()
        .map(|e| e.element.codes().to_vec())
        .collect();
    fam_elems.sort();
    prims.sort();
    ensure(fam_elems == prims, "family differs from primitive set")?;

    let c9 = group(&[9]);
    let f7 = field_make(7, 1, None).unwrap();
    let alg7 = GroupAlgebra::new(&c9, &f7).unwrap();
    let n_prims = primitive_idempotents(&alg7).unwrap().len();
    let n_sets = extended_cocyclic_subgroups(&c9).unwrap().len();
    ensure(
        n_prims == 5 && n_sets == 3,
        format!("F_7[C_9]: {n_prims} primitives, {n_sets} subgroups"),
    )?;
    Ok(format!(
        "{} family members equal the primitives over F_2; F_7[C_9]: {n_prims} > {n_sets}",
        fam.len()
    ))
}

fn duality_suite() -> Outcome {
    let mut groups = 0;
    let mut pairs = 0usize;
    for g in abelian_groups_up_to(64) {
        let subs = all_subgroups(&g).map_err(|e| e.to_string())?;
        let perps: Vec<Subgroup> = subs
            .iter()
            .map(|h| annihilator(&g, h))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(
            sorted(&perps) == sorted(&subs),
            format!("{}: not a bijection", g.spec_string()),
        )?;
        for (i, h) in subs.iter().enumerate() {
            ensure(
                h.order() * perps[i].order() == g.order(),
                format!("{}: order product", g.spec_string()),
            )?;
            ensure(
                annihilator(&g, &perps[i]).unwrap() == *h,
                format!("{}: not involutive", g.spec_string()),
            )?;
            for (j, k) in subs.iter().enumerate() {
                if h.is_subgroup_of(k) {
                    ensure(
                        perps[j].is_subgroup_of(&perps[i]),
                        format!("{}: inclusion not reversed", g.spec_string()),
                    )?;
                    pairs += 1;
                }
            }
        }
        groups += 1;
    }
    Ok(format!("{groups} groups, {pairs} inclusion pairs"))
}

fn class_count_sweep() -> Outcome {
    let groups: Vec<Group> = abelian_groups_up_to(81)
        .into_iter()
        .filter(|g| g.order() % 2 == 1)
        .collect();
    let rows = tau_sweep(&groups, &binary()).map_err(|e| e.to_string())?;
    let exceptions: Vec<String> = rows
        .iter()
        .filter(|r| r.tau_match != r.homocyclic)
        .map(|r| format!("[{}] classes={} tau={}", r.group, r.class_count, r.tau))
        .collect();
    if exceptions.is_empty() {
        Ok(format!(
            "{} groups, agreement exactly on homocyclic groups",
            rows.len()
        ))
    } else {
        Err(format!(
            "{} groups; count equals divisor count on non-homocyclic groups: {}",
            rows.len(),
            exceptions.join(", ")
        ))
    }
}

fn orbit_oracle() -> Outcome {
    let mut groups = 0;
    let mut checked = 0usize;
    for g in abelian_groups_up_to(45)
        .into_iter()
        .filter(|g| g.order() % 2 == 1)
    {
        let codes = codes_of(&g, &binary());
        let auts = automorphisms(&g).map_err(|e| format!("{}: {e}", g.spec_string()))?;
        let labels = classes_by_search(&codes, &auts).map_err(|e| e.to_string())?;
        for i in 0..codes.len() {
            for j in 0..codes.len() {
                let fast = equivalent(&codes[i], &codes[j]).map_err(|e| e.to_string())?;
                ensure(
                    fast == (labels[i] == labels[j]),
                    format!("{}: codes {i} and {j} disagree", g.spec_string()),
                )?;
                checked += 1;
            }
        }
        groups += 1;
    }
    Ok(format!("{groups} groups, {checked} ordered pairs agree"))
}

fn idempotent_groups_and_factorization() -> Outcome {
    let mut count = 0;
    for divs in [[9u64, 3], [3, 3]] {
        let g = group(&divs);
        let alg = GroupAlgebra::new(&g, &binary()).unwrap();
        for e in primitive_idempotents(&alg).unwrap() {
            let ig = idempotent_group(&e.element).map_err(|e| e.to_string())?;
            let qt = quotient_type(&g, &e.phi_subgroup).map_err(|e| e.to_string())?;
            ensure(ig == qt, format!("{}: {ig:?} vs {qt:?}", g.spec_string()))?;
            ensure(
                ig.len() <= 1,
                format!("{}: {ig:?} not cyclic", g.spec_string()),
            )?;
            if divs == [3, 3] {
                let f = homocyclic_factor(&alg, &e)
                    .map_err(|e| e.to_string())?
                    .ok_or("no factorization on C_3 x C_3")?;
                ensure(f.complement.order() == 3, "complement not of order 3")?;
                let k = hat(&alg, &f.complement).unwrap();
                ensure(&k * &f.cyclic_idempotent == e.element, "product mismatch")?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} idempotents checked"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "C_9 x C_3 over F_2: codes, dimensions, weights, classes",
            limit: Some(Duration::from_secs(1)),
            run: square_by_prime_table,
        },
        Criterion {
            id: 2,
            name: "equal weight distributions on inequivalent codes (p = 3, 5)",
            limit: None,
            run: equal_distributions_inequivalent,
        },
        Criterion {
            id: 3,
            name: "C_27 x C_3 over F_2: classes and exact distribution at dimension 18",
            limit: Some(Duration::from_secs(60)),
            run: power_by_prime_table,
        },
        Criterion {
            id: 4,
            name: "subgroup idempotent family versus primitive idempotents",
            limit: None,
            run: family_and_splitting,
        },
        Criterion {
            id: 5,
            name: "annihilator duality on every abelian group of order <= 64",
            limit: Some(Duration::from_secs(30)),
            run: duality_suite,
        },
        Criterion {
            id: 6,
            name: "class count equals divisors of exponent iff homocyclic (odd order <= 81)",
            limit: Some(Duration::from_secs(300)),
            run: class_count_sweep,
        },
        Criterion {
            id: 7,
            name: "orbit equivalence agrees with exhaustive automorphism search (odd order <= 45)",
            limit: Some(Duration::from_secs(300)),
            run: orbit_oracle,
        },
        Criterion {
            id: 8,
            name: "idempotent groups equal quotient types; homocyclic factorization",
            limit: None,
            run: idempotent_groups_and_factorization,
        },
    ];

    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut unexpected = Vec::new();
    let mut passed = 0;
    let mut total = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| c.id.to_string() == *f) {
            continue;
        }
        total += 1;
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        let expected_fail = EXPECTED_FAILURES.contains(&c.id);
        let (status, detail) = match &outcome {
            Ok(d) => {
                passed += 1;
                ("PASS", d.clone())
            }
            Err(d) => ("FAIL", d.clone()),
        };
        let note = if expected_fail {
            " [known unattainable]"
        } else {
            ""
        };
        println!(
            "{status} criterion {}{note}: {} ({elapsed:.2?}) - {detail}",
            c.id, c.name
        );
        if outcome.is_ok() == expected_fail {
            unexpected.push(c.id);
        }
    }
    println!("acceptance: {passed}/{total} criteria pass");
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
