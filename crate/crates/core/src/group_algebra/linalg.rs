use std::sync::Arc;

use super::{Algebra, AlgebraElement};
use crate::finite_field::Field;

/// Incremental reduced row echelon form over the coefficient field.
pub(crate) struct Echelon {
    field: Field,
    /// (pivot column, row with a 1 at the pivot and 0 at every other pivot)
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub(crate) fn new(field: &Field) -> Self {
        Self {
            field: Arc::clone(field),
            rows: Vec::new(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether it enlarged the span.
    pub(crate) fn insert(&mut self, mut v: Vec<u32>) -> bool {
        let f = &self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                axpy(f, &mut v, f.code_neg(c), row);
            }
        }
        let Some(pivot) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = f.code_inv(v[pivot]).expect("nonzero pivot");
        for x in &mut v {
            *x = f.code_mul(*x, inv);
        }
        for (_, row) in &mut self.rows {
            let c = row[pivot];
            if c != 0 {
                axpy(f, row, f.code_neg(c), &v);
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, v));
        true
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<u32>> {
        self.rows.into_iter().map(|(_, r)| r).collect()
    }
}

fn axpy(f: &Field, y: &mut [u32], a: u32, x: &[u32]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = f.code_add(*yi, f.code_mul(a, xi));
        }
    }
}

/// Reduced row echelon basis of the span of `rows`, pivots in element order.
pub fn row_reduce(algebra: &Algebra, rows: &[AlgebraElement]) -> Vec<AlgebraElement> {
    let mut ech = Echelon::new(algebra.field());
    for r in rows {
        ech.insert(r.codes().to_vec());
    }
    ech.into_rows()
        .into_iter()
        .map(|coeffs| AlgebraElement {
            algebra: Arc::clone(algebra),
            coeffs,
        })
        .collect()
}

pub fn rank(algebra: &Algebra, rows: &[AlgebraElement]) -> usize {
    let mut ech = Echelon::new(algebra.field());
    for r in rows {
        ech.insert(r.codes().to_vec());
    }
    ech.len()
}
