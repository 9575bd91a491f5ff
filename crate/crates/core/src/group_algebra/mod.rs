//! The group algebra `F_q G` of a finite abelian group over a finite field.
//!
//! Coefficients are stored densely as field-element codes in the group's
//! element-index order. Multiplication is convolution over the group.

mod idempotent;
mod linalg;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::abelian_group::{Automorphism, Group, GroupElement, GroupError};
use crate::finite_field::{Field, FieldError};

pub use idempotent::{
    e_h, eh_family, gamma, hat, homocyclic_factor, idempotent_group, phi_map,
    primitive_idempotents, HomocyclicFactor, PrimitiveIdempotent,
};
pub use linalg::{rank, row_reduce};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("characteristic {p} divides the order {order}")]
    CharDividesOrder { p: u64, order: u64 },
    #[error("subgroup is neither co-cyclic nor the whole group")]
    NotCocyclic,
    #[error("element is not a nonzero idempotent")]
    NotIdempotent,
    #[error("idempotent is absorbed by {matches} members of the e_H family")]
    NoUniqueSubgroup { matches: usize },
    #[error("automorphism belongs to a different group")]
    GroupMismatch,
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl AlgebraError {
    pub fn code(&self) -> &'static str {
        match self {
            AlgebraError::CharDividesOrder { .. } => "CharDividesOrder",
            AlgebraError::NotCocyclic => "NotCocyclic",
            AlgebraError::NotIdempotent => "NotIdempotent",
            AlgebraError::NoUniqueSubgroup { .. } => "NoUniqueSubgroup",
            AlgebraError::GroupMismatch => "GroupMismatch",
            AlgebraError::AlgebraMismatch => "AlgebraMismatch",
            AlgebraError::Group(e) => e.code(),
            AlgebraError::Field(e) => e.code(),
        }
    }
}

/// `F_q G` for a field small enough to carry code tables.
#[derive(Debug, PartialEq, Eq)]
pub struct GroupAlgebra {
    group: Group,
    field: Field,
}

pub type Algebra = Arc<GroupAlgebra>;

impl GroupAlgebra {
    pub fn new(group: &Group, field: &Field) -> Result<Algebra, AlgebraError> {
        field.require_code_tables()?;
        Ok(Arc::new(Self {
            group: Arc::clone(group),
            field: Arc::clone(field),
        }))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.group.order()
    }

    /// True when `char F` does not divide `|G|`.
    pub fn is_semisimple(&self) -> bool {
        !(self.group.order() as u64).is_multiple_of(self.field.characteristic())
    }

    pub(crate) fn require_semisimple(&self) -> Result<(), AlgebraError> {
        if self.is_semisimple() {
            Ok(())
        } else {
            Err(AlgebraError::CharDividesOrder {
                p: self.field.characteristic(),
                order: self.group.order() as u64,
            })
        }
    }
}

#[derive(Clone)]
pub struct AlgebraElement {
    algebra: Algebra,
    coeffs: Vec<u32>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.algebra == other.algebra
    }
}

impl Eq for AlgebraElement {}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement{:?}", self.coeffs)
    }
}

impl AlgebraElement {
    pub fn zero(algebra: &Algebra) -> Self {
        Self {
            algebra: Arc::clone(algebra),
            coeffs: vec![0; algebra.dimension()],
        }
    }

    pub fn one(algebra: &Algebra) -> Self {
        Self::basis(algebra, algebra.group.identity())
    }

    /// The group element `g` viewed in the algebra.
    pub fn basis(algebra: &Algebra, g: GroupElement) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[g.index()] = 1;
        e
    }

    /// From raw field-element codes in element-index order.
    pub fn from_codes(algebra: &Algebra, coeffs: Vec<u32>) -> Result<Self, AlgebraError> {
        let q = algebra.field.order();
        if coeffs.len() != algebra.dimension() || coeffs.iter().any(|&c| c as u128 >= q) {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(Self {
            algebra: Arc::clone(algebra),
            coeffs,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coeff(&self, g: GroupElement) -> u32 {
        self.coeffs[g.index()]
    }

    pub fn codes(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn support(&self) -> Vec<GroupElement> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| GroupElement::from_index(i))
            .collect()
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = &self.algebra.field;
        Self {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().map(|&x| f.code_mul(x, c)).collect(),
        }
    }

    /// `g * self`.
    pub fn translate(&self, g: GroupElement) -> Self {
        let group = &self.algebra.group;
        let mut out = vec![0; self.coeffs.len()];
        for (h, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                out[group.add(g, GroupElement::from_index(h)).index()] = c;
            }
        }
        Self {
            algebra: Arc::clone(&self.algebra),
            coeffs: out,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        Ok(self.zip(other, |f, a, b| f.code_add(a, b)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        Ok(self.zip(other, |f, a, b| f.code_sub(a, b)))
    }

    /// Convolution product.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let group = &self.algebra.group;
        let f = &self.algebra.field;
        let rhs: Vec<(GroupElement, u32)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (GroupElement::from_index(i), c))
            .collect();
        let mut out = vec![0u32; self.coeffs.len()];
        for (h, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let h = GroupElement::from_index(h);
            for &(k, b) in &rhs {
                let slot = &mut out[group.add(h, k).index()];
                *slot = f.code_add(*slot, f.code_mul(a, b));
            }
        }
        Ok(Self {
            algebra: Arc::clone(&self.algebra),
            coeffs: out,
        })
    }

    pub fn is_idempotent(&self) -> bool {
        &(self * self) == self
    }

    /// Linear extension of a group automorphism: the coefficient of `g` moves to `psi(g)`.
    pub fn apply_automorphism(&self, psi: &Automorphism) -> Result<Self, AlgebraError> {
        if !Arc::ptr_eq(psi.group(), &self.algebra.group) && **psi.group() != *self.algebra.group {
            return Err(AlgebraError::GroupMismatch);
        }
        let mut out = vec![0; self.coeffs.len()];
        for (&c, image) in self.coeffs.iter().zip(psi.permutation()) {
            out[image.index()] = c;
        }
        Ok(Self {
            algebra: Arc::clone(&self.algebra),
            coeffs: out,
        })
    }

    /// Image under the algebra map induced by a group homomorphism into `target`'s group.
    pub fn push_forward(
        &self,
        target: &Algebra,
        map: impl Fn(GroupElement) -> GroupElement,
    ) -> Result<Self, AlgebraError> {
        if target.field != self.algebra.field {
            return Err(AlgebraError::AlgebraMismatch);
        }
        let f = &target.field;
        let mut out = vec![0; target.dimension()];
        for (g, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let slot = &mut out[map(GroupElement::from_index(g)).index()];
                *slot = f.code_add(*slot, c);
            }
        }
        Ok(Self {
            algebra: Arc::clone(target),
            coeffs: out,
        })
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }

    fn zip(&self, other: &Self, op: impl Fn(&Field, u32, u32) -> u32) -> Self {
        let f = &self.algebra.field;
        Self {
            algebra: Arc::clone(&self.algebra),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| op(f, a, b))
                .collect(),
        }
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: Self) -> AlgebraElement {
        self.try_add(rhs).expect("elements of the same algebra")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: Self) -> AlgebraElement {
        self.try_sub(rhs).expect("elements of the same algebra")
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: Self) -> AlgebraElement {
        self.try_mul(rhs).expect("elements of the same algebra")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        let f = &self.algebra.field;
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().map(|&c| f.code_neg(c)).collect(),
        }
    }
}
