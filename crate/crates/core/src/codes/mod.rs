//! Minimal abelian codes: the minimal ideals `F_q G e` for primitive `e`.

mod classify;
mod tables;
mod weights;

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::abelian_group::{subgroup_orbits, Automorphism, GroupError};
use crate::finite_field::FieldError;
use crate::group_algebra::{Algebra, AlgebraElement, AlgebraError, PrimitiveIdempotent};

pub use classify::{
    classify, classify_codes, tau_sweep, ClassRecord, Classification, ClassificationReport,
    ClassifyOptions, CodeClass, CodeRecord, SweepRow,
};
pub use tables::{verify_table, TableKind, TableReport, TableRow};
pub use weights::{
    min_weight, weight_distribution, MinWeight, WeightDistribution, DEFAULT_DIMENSION_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("enumerating {q}^{dimension} codewords exceeds the cap of 2^{cap}")]
    DimensionTooLarge {
        q: u128,
        dimension: usize,
        cap: usize,
    },
    #[error("hypothesis fails: the order of {q} mod {modulus} is {order}, not {phi}")]
    HypothesisFails {
        q: u64,
        modulus: u64,
        order: u64,
        phi: u64,
    },
    #[error("invalid table parameter: {0}")]
    BadParameter(String),
    #[error("codes belong to different algebras")]
    AlgebraMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<GroupError> for CodeError {
    fn from(e: GroupError) -> Self {
        CodeError::Algebra(AlgebraError::Group(e))
    }
}

impl From<FieldError> for CodeError {
    fn from(e: FieldError) -> Self {
        CodeError::Algebra(AlgebraError::Field(e))
    }
}

impl CodeError {
    pub fn code(&self) -> &'static str {
        match self {
            CodeError::DimensionTooLarge { .. } => "DimensionTooLarge",
            CodeError::HypothesisFails { .. } => "HypothesisFails",
            CodeError::BadParameter(_) => "BadParameter",
            CodeError::AlgebraMismatch => "AlgebraMismatch",
            CodeError::Algebra(e) => e.code(),
        }
    }
}

/// The ideal generated by a primitive idempotent, with a row-reduced basis.
#[derive(Debug, Clone)]
pub struct MinimalCode {
    algebra: Algebra,
    idempotent: PrimitiveIdempotent,
    basis: Vec<AlgebraElement>,
}

impl MinimalCode {
    /// Row-reduces the translates `g e`, pivots in element order.
    pub fn new(algebra: &Algebra, idempotent: PrimitiveIdempotent) -> Self {
        let e = &idempotent.element;
        let rows: Vec<AlgebraElement> =
            algebra.group().elements().map(|g| e.translate(g)).collect();
        let basis = crate::group_algebra::row_reduce(algebra, &rows);
        Self {
            algebra: Arc::clone(algebra),
            idempotent,
            basis,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn idempotent(&self) -> &PrimitiveIdempotent {
        &self.idempotent
    }

    pub fn basis(&self) -> &[AlgebraElement] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn length(&self) -> usize {
        self.algebra.dimension()
    }

    /// Short label derived from the character orbit, e.g. `e(0,1)`.
    pub fn label(&self) -> String {
        format!(
            "e{}",
            self.algebra
                .group()
                .format_element(self.idempotent.orbit_rep)
        )
    }

    /// Membership test: `x` lies in the ideal iff `x e = x`.
    pub fn contains(&self, x: &AlgebraElement) -> bool {
        &(x * &self.idempotent.element) == x
    }
}

/// Decides equivalence by comparing the Aut(G)-orbits of the attached subgroups.
pub fn equivalent(a: &MinimalCode, b: &MinimalCode) -> Result<bool, CodeError> {
    if a.algebra != b.algebra {
        return Err(CodeError::AlgebraMismatch);
    }
    let pair = [
        a.idempotent.phi_subgroup.clone(),
        b.idempotent.phi_subgroup.clone(),
    ];
    Ok(subgroup_orbits(a.algebra.group(), &pair)?.len() == 1)
}

/// Decides equivalence by searching for `psi` with `psi(e_a) = e_b`.
pub fn equivalent_by_search(
    a: &MinimalCode,
    b: &MinimalCode,
    auts: &[Automorphism],
) -> Result<bool, CodeError> {
    if a.algebra != b.algebra {
        return Err(CodeError::AlgebraMismatch);
    }
    for psi in auts {
        if a.idempotent.element.apply_automorphism(psi)? == b.idempotent.element {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Class labels from the exhaustive search: `labels[i] == labels[j]` iff some
/// automorphism maps the idempotent of code `i` to that of code `j`.
pub fn classes_by_search(
    codes: &[MinimalCode],
    auts: &[Automorphism],
) -> Result<Vec<usize>, CodeError> {
    let index: HashMap<&[u32], usize> = codes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.idempotent.element.codes(), i))
        .collect();
    let mut labels: Vec<Option<usize>> = vec![None; codes.len()];
    let mut next = 0;
    for i in 0..codes.len() {
        if labels[i].is_some() {
            continue;
        }
        labels[i] = Some(next);
        let e = &codes[i].idempotent.element;
        let hits: Vec<usize> = auts
            .par_iter()
            .map(|psi| Ok(index.get(e.apply_automorphism(psi)?.codes()).copied()))
            .filter_map(|r: Result<Option<usize>, CodeError>| r.transpose())
            .collect::<Result<_, _>>()?;
        for j in hits {
            labels[j] = Some(next);
        }
        next += 1;
    }
    Ok(labels.into_iter().map(|l| l.expect("assigned")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian_group::{automorphisms, AbelianGroup, Subgroup};
    use crate::finite_field::field_make;
    use crate::group_algebra::{hat, primitive_idempotents, GroupAlgebra};

    fn codes_of(divs: &[u64], p: u64) -> (Algebra, Vec<MinimalCode>) {
        let g = AbelianGroup::new(divs).unwrap();
        let alg = GroupAlgebra::new(&g, &field_make(p, 1, None).unwrap()).unwrap();
        let codes = primitive_idempotents(&alg)
            .unwrap()
            .into_iter()
            .map(|e| MinimalCode::new(&alg, e))
            .collect();
        (alg, codes)
    }

    #[test]
    fn dimensions_match_orbits_and_sum_to_order() {
        for (divs, p) in [(vec![9, 3], 2), (vec![9], 7), (vec![5, 5], 3), (vec![7], 2)] {
            let (alg, codes) = codes_of(&divs, p);
            let total: usize = codes.iter().map(|c| c.dimension()).sum();
            assert_eq!(total, alg.dimension());
            for c in &codes {
                assert_eq!(c.dimension(), c.idempotent().orbit_size);
                assert!(c.basis().iter().all(|b| c.contains(b)));
            }
        }
    }

    #[test]
    fn repetition_code() {
        let (alg, codes) = codes_of(&[9, 3], 2);
        let whole = hat(&alg, &Subgroup::whole(alg.group())).unwrap();
        let rep = codes
            .iter()
            .find(|c| c.idempotent().element == whole)
            .unwrap();
        assert_eq!(rep.dimension(), 1);
    }

    #[test]
    fn orbit_test_agrees_with_search() {
        for divs in [vec![9, 3], vec![3, 3], vec![15], vec![5, 5]] {
            let (alg, codes) = codes_of(&divs, 2);
            let auts = automorphisms(alg.group()).unwrap();
            let labels = classes_by_search(&codes, &auts).unwrap();
            for i in 0..codes.len() {
                for j in 0..codes.len() {
                    let fast = equivalent(&codes[i], &codes[j]).unwrap();
                    assert_eq!(fast, labels[i] == labels[j]);
                }
            }
            assert!(equivalent_by_search(&codes[0], &codes[0], &auts).unwrap());
        }
    }
}
