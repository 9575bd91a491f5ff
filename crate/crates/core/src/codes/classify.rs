use serde::Serialize;

use super::{
    min_weight, weight_distribution, CodeError, MinWeight, MinimalCode, WeightDistribution,
};
use crate::abelian_group::{subgroup_orbits, Group, Subgroup};
use crate::finite_field::{tau, Field};
use crate::group_algebra::{primitive_idempotents, Algebra, GroupAlgebra};

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub with_distributions: bool,
    pub dimension_cap: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            with_distributions: false,
            dimension_cap: super::DEFAULT_DIMENSION_CAP,
        }
    }
}

/// A class of equivalent codes: those whose subgroups lie in one Aut(G)-orbit.
#[derive(Debug, Clone)]
pub struct CodeClass {
    /// Least subgroup of the orbit.
    pub representative: Subgroup,
    /// Indices into [`Classification::codes`], ascending.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub algebra: Algebra,
    pub codes: Vec<MinimalCode>,
    pub classes: Vec<CodeClass>,
}

impl Classification {
    pub fn class_of(&self, code: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.members.contains(&code))
            .expect("classes partition the codes")
    }

    /// Index of the code standing for class `k`.
    pub fn representative_code(&self, k: usize) -> usize {
        let class = &self.classes[k];
        class
            .members
            .iter()
            .copied()
            .find(|&i| self.codes[i].idempotent().phi_subgroup == class.representative)
            .expect("representative subgroup is attached to a member")
    }
}

/// All minimal codes of `F_q G`, grouped into equivalence classes.
pub fn classify_codes(algebra: &Algebra) -> Result<Classification, CodeError> {
    let codes: Vec<MinimalCode> = primitive_idempotents(algebra)?
        .into_iter()
        .map(|e| MinimalCode::new(algebra, e))
        .collect();
    let mut subgroups: Vec<Subgroup> = codes
        .iter()
        .map(|c| c.idempotent().phi_subgroup.clone())
        .collect();
    subgroups.sort();
    subgroups.dedup();
    let orbits = subgroup_orbits(algebra.group(), &subgroups)?;
    let classes = orbits
        .into_iter()
        .map(|o| CodeClass {
            members: (0..codes.len())
                .filter(|&i| o.members.contains(&codes[i].idempotent().phi_subgroup))
                .collect(),
            representative: o.representative,
        })
        .collect();
    Ok(Classification {
        algebra: algebra.clone(),
        codes,
        classes,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeRecord {
    pub idempotent_ref: String,
    pub phi_subgroup: String,
    pub dimension: usize,
    pub min_weight: usize,
    pub min_weight_exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<WeightDistribution>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassRecord {
    pub representative: String,
    pub subgroup: String,
    pub members: Vec<String>,
    pub size: usize,
    pub dimension: usize,
    pub min_weight: usize,
    pub min_weight_exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<WeightDistribution>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub group: String,
    pub field: String,
    pub codes: Vec<CodeRecord>,
    pub classes: Vec<ClassRecord>,
    pub class_count: usize,
    pub tau: u64,
    pub homocyclic: bool,
    pub tau_match: bool,
}

/// Classifies the minimal codes of `F_q G` and computes per-code metrics.
pub fn classify(
    group: &Group,
    field: &Field,
    opts: ClassifyOptions,
) -> Result<ClassificationReport, CodeError> {
    let algebra = GroupAlgebra::new(group, field)?;
    let cls = classify_codes(&algebra)?;
    let mut records = Vec::with_capacity(cls.codes.len());
    for code in &cls.codes {
        let distribution = if opts.with_distributions {
            Some(weight_distribution(code, opts.dimension_cap)?)
        } else {
            None
        };
        let mw = match &distribution {
            Some(d) => MinWeight {
                value: d.min_nonzero().unwrap_or(0),
                exact: true,
            },
            None => min_weight(code, opts.dimension_cap),
        };
        records.push(CodeRecord {
            idempotent_ref: code.label(),
            phi_subgroup: code.idempotent().phi_subgroup.describe(),
            dimension: code.dimension(),
            min_weight: mw.value,
            min_weight_exact: mw.exact,
            distribution,
        });
    }
    let classes: Vec<ClassRecord> = cls
        .classes
        .iter()
        .enumerate()
        .map(|(k, class)| {
            let rep = &records[cls.representative_code(k)];
            ClassRecord {
                representative: rep.idempotent_ref.clone(),
                subgroup: class.representative.describe(),
                members: class
                    .members
                    .iter()
                    .map(|&i| records[i].idempotent_ref.clone())
                    .collect(),
                size: class.members.len(),
                dimension: rep.dimension,
                min_weight: rep.min_weight,
                min_weight_exact: rep.min_weight_exact,
                distribution: rep.distribution.clone(),
            }
        })
        .collect();
    let t = tau(group.exponent());
    Ok(ClassificationReport {
        group: group.spec_string(),
        field: field.spec_string(),
        class_count: classes.len(),
        tau: t,
        homocyclic: group.is_homocyclic(),
        tau_match: classes.len() as u64 == t,
        codes: records,
        classes,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub group: String,
    pub class_count: usize,
    pub tau: u64,
    pub homocyclic: bool,
    pub tau_match: bool,
}

/// Class count against the number of divisors of the exponent, per group.
pub fn tau_sweep(groups: &[Group], field: &Field) -> Result<Vec<SweepRow>, CodeError> {
    groups
        .iter()
        .map(|g| {
            let alg = GroupAlgebra::new(g, field)?;
            let count = classify_codes(&alg)?.classes.len();
            let t = tau(g.exponent());
            Ok(SweepRow {
                group: g.spec_string(),
                class_count: count,
                tau: t,
                homocyclic: g.is_homocyclic(),
                tau_match: count as u64 == t,
            })
        })
        .collect()
}
