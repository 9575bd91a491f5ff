use rayon::prelude::*;

use super::{Algebra, AlgebraElement, AlgebraError, GroupAlgebra};
use crate::abelian_group::{
    all_subgroups, extended_cocyclic_subgroups, pairing, quotient_type, sharp, subgroup_type,
    sylow_decompose, AbelianGroup, GroupElement, GroupError, Subgroup,
};
use crate::finite_field::{gcd, primitive_root_of_unity, FieldScalar, SplittingField};

/// `|H|^-1 * sum of H`.
pub fn hat(algebra: &Algebra, h: &Subgroup) -> Result<AlgebraElement, AlgebraError> {
    if **h.group() != **algebra.group() {
        return Err(AlgebraError::GroupMismatch);
    }
    let f = algebra.field();
    let order = h.order() as u64;
    if order.is_multiple_of(f.characteristic()) {
        return Err(AlgebraError::CharDividesOrder {
            p: f.characteristic(),
            order,
        });
    }
    let c = f.code_inv(f.code_from_int((order % f.characteristic()) as i64))?;
    let mut out = AlgebraElement::zero(algebra);
    for g in h.elements() {
        out.coeffs[g.index()] = c;
    }
    Ok(out)
}

/// The idempotent attached to a co-cyclic subgroup (or to `G` itself).
///
/// On each Sylow part it is `hat(G_p)` when `H_p = G_p` and
/// `hat(H_p) - hat(H_p#)` otherwise, where `H_p#` is the unique subgroup
/// containing `H_p` with index `p`; the result is the product over parts.
pub fn e_h(algebra: &Algebra, h: &Subgroup) -> Result<AlgebraElement, AlgebraError> {
    algebra.require_semisimple()?;
    let group = algebra.group();
    if **h.group() != **group {
        return Err(AlgebraError::GroupMismatch);
    }
    if h.is_whole() {
        return hat(algebra, h);
    }
    if quotient_type(group, h)?.len() != 1 {
        return Err(AlgebraError::NotCocyclic);
    }
    let sylow = sylow_decompose(group);
    let mut acc = AlgebraElement::one(algebra);
    for (k, hk) in sylow.split_subgroup(h).into_iter().enumerate() {
        let factor = if hk.is_whole() {
            hat(algebra, &sylow.embed_subgroup(k, &hk))?
        } else {
            let up = sharp(hk.group(), &hk).map_err(|e| match e {
                GroupError::NotCocyclic => AlgebraError::NotCocyclic,
                other => other.into(),
            })?;
            &hat(algebra, &sylow.embed_subgroup(k, &hk))?
                - &hat(algebra, &sylow.embed_subgroup(k, &up))?
        };
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// `(H, e_H)` for every co-cyclic `H` and for `G`, in subgroup order.
pub fn eh_family(algebra: &Algebra) -> Result<Vec<(Subgroup, AlgebraElement)>, AlgebraError> {
    algebra.require_semisimple()?;
    extended_cocyclic_subgroups(algebra.group())?
        .into_iter()
        .map(|h| {
            let e = e_h(algebra, &h)?;
            Ok((h, e))
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct PrimitiveIdempotent {
    pub element: AlgebraElement,
    /// The member of the e_H family that acts as identity on `element`.
    pub phi_subgroup: Subgroup,
    /// Least character index in the q-orbit that produced this idempotent.
    pub orbit_rep: GroupElement,
    /// Size of that orbit, equal to the dimension of the generated ideal.
    pub orbit_size: usize,
}

/// All primitive idempotents of a semisimple `F_q G`, one per orbit of
/// characters under `chi -> chi^q`, sorted by orbit representative.
///
/// The idempotent of an orbit `C` has coefficient
/// `|G|^-1 sum_{chi in C} chi(g^-1)` at `g`; these sums are evaluated in a
/// splitting field and pulled back to `F_q`.
pub fn primitive_idempotents(algebra: &Algebra) -> Result<Vec<PrimitiveIdempotent>, AlgebraError> {
    algebra.require_semisimple()?;
    let group = algebra.group();
    let field = algebra.field();
    let exp = group.exponent();
    let split = SplittingField::new(field, exp)?;
    let zeta = primitive_root_of_unity(split.ext(), exp)?;
    let mut zpow: Vec<FieldScalar> = Vec::with_capacity(exp as usize);
    let mut z = split.ext().one();
    for _ in 0..exp {
        zpow.push(z.clone());
        z = &z * &zeta;
    }
    let q_mod = (field.order() % exp as u128) as u64;

    let mut seen = vec![false; group.order()];
    let mut orbits: Vec<Vec<u64>> = Vec::new();
    let mut reps: Vec<GroupElement> = Vec::new();
    for k in group.elements() {
        if seen[k.index()] {
            continue;
        }
        // orbit of k, recorded as the multipliers q^j mod exp
        let mut mults = Vec::new();
        let mut x = k;
        let mut m = 1u64;
        while !seen[x.index()] {
            seen[x.index()] = true;
            mults.push(m);
            x = group.mul_scalar(x, q_mod);
            m = (m as u128 * q_mod as u128 % exp as u128) as u64;
        }
        orbits.push(mults);
        reps.push(k);
    }

    let inv_order = field
        .code_inv(field.code_from_int((group.order() as u64 % field.characteristic()) as i64))?;
    let family = eh_family(algebra)?;

    reps.par_iter()
        .zip(orbits.par_iter())
        .map(|(&rep, mults)| {
            let mut memo: Vec<Option<u32>> = vec![None; exp as usize];
            let mut coeffs = vec![0u32; group.order()];
            for g in group.elements() {
                let s = pairing(group, rep, g);
                let t = match memo[s as usize] {
                    Some(t) => t,
                    None => {
                        let mut acc = split.ext().zero();
                        for &m in mults {
                            let e = (m as u128 * s as u128 % exp as u128) as u64;
                            acc = &acc + &zpow[((exp - e) % exp) as usize];
                        }
                        let t = split.reduce(&acc)?;
                        memo[s as usize] = Some(t);
                        t
                    }
                };
                coeffs[g.index()] = field.code_mul(inv_order, t);
            }
            let element = AlgebraElement {
                algebra: algebra.clone(),
                coeffs,
            };
            let phi_subgroup = phi_map(&element, &family)?;
            Ok(PrimitiveIdempotent {
                element,
                phi_subgroup,
                orbit_rep: rep,
                orbit_size: mults.len(),
            })
        })
        .collect()
}

/// The unique `H` in the family whose `e_H` absorbs `e`, with `e e_K = 0`
/// for every other member.
pub fn phi_map(
    e: &AlgebraElement,
    family: &[(Subgroup, AlgebraElement)],
) -> Result<Subgroup, AlgebraError> {
    if e.is_zero() || !e.is_idempotent() {
        return Err(AlgebraError::NotIdempotent);
    }
    let mut found: Option<&Subgroup> = None;
    let mut matches = 0;
    let mut clean = true;
    for (h, eh) in family {
        let prod = e.try_mul(eh)?;
        if &prod == e {
            matches += 1;
            found = Some(h);
        } else if !prod.is_zero() {
            clean = false;
        }
    }
    match found {
        Some(h) if matches == 1 && clean => Ok(h.clone()),
        _ => Err(AlgebraError::NoUniqueSubgroup { matches }),
    }
}

/// Sum of the generators of `<g>`.
pub fn gamma(algebra: &Algebra, g: GroupElement) -> AlgebraElement {
    let group = algebra.group();
    let o = group.element_order(g);
    let mut out = AlgebraElement::zero(algebra);
    for i in 0..o {
        if gcd(i, o) == 1 {
            let x = group.mul_scalar(g, i);
            out.coeffs[x.index()] = algebra.field().code_add(out.coeffs[x.index()], 1);
        }
    }
    out
}

/// Invariant factors of the group `{g e : g in G}` under multiplication.
pub fn idempotent_group(e: &AlgebraElement) -> Result<Vec<u64>, AlgebraError> {
    let group = e.algebra().group();
    let stab: Vec<GroupElement> = group.elements().filter(|&g| &e.translate(g) == e).collect();
    let stab = Subgroup::from_elements(group, &stab)?;
    Ok(quotient_type(group, &stab)?)
}

/// A factorization `e = hat(K) * f` in `F_q(C_n^m)`, where `K` has type
/// `C_n^(m-1)`, `<h>` is a complement of `K` and `f` is a primitive
/// idempotent of `F_q<h>`.
#[derive(Debug, Clone)]
pub struct HomocyclicFactor {
    pub complement: Subgroup,
    pub generator: GroupElement,
    pub cyclic_idempotent: AlgebraElement,
}

/// Finds the factorization of a primitive idempotent of a homocyclic group
/// algebra. Returns `None` for non-homocyclic or trivial groups, or when no
/// factorization exists.
pub fn homocyclic_factor(
    algebra: &Algebra,
    e: &PrimitiveIdempotent,
) -> Result<Option<HomocyclicFactor>, AlgebraError> {
    let group = algebra.group();
    if group.is_trivial() || !group.is_homocyclic() {
        return Ok(None);
    }
    let n = group.exponent();
    let m = group.rank();
    let cyclic = AbelianGroup::new(&[n])?;
    let cyc_alg = GroupAlgebra::new(&cyclic, algebra.field())?;
    let cyc_prims = primitive_idempotents(&cyc_alg)?;
    let target_type = vec![n; m - 1];
    for k in all_subgroups(group)? {
        if !k.is_subgroup_of(&e.phi_subgroup) || subgroup_type(&k) != target_type {
            continue;
        }
        let Some(h) = group.elements().find(|&h| {
            group.element_order(h) == n && (1..n).all(|j| !k.contains(group.mul_scalar(h, j)))
        }) else {
            continue;
        };
        let hat_k = hat(algebra, &k)?;
        for f in &cyc_prims {
            let f_emb = f
                .element
                .push_forward(algebra, |x| group.mul_scalar(h, x.index() as u64))?;
            if (&hat_k * &f_emb) == e.element {
                return Ok(Some(HomocyclicFactor {
                    complement: k,
                    generator: h,
                    cyclic_idempotent: f_emb,
                }));
            }
        }
    }
    Ok(None)
}
