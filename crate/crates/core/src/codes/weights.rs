use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{CodeError, MinimalCode};
use crate::finite_field::Field;

/// Default bound on `log2(q^dimension)` for exhaustive enumeration.
pub const DEFAULT_DIMENSION_CAP: usize = 24;

/// Number of codewords of each Hamming weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct WeightDistribution {
    counts: BTreeMap<usize, u64>,
}

impl WeightDistribution {
    fn from_histogram(hist: &[u64]) -> Self {
        Self {
            counts: hist
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(w, &c)| (w, c))
                .collect(),
        }
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn count(&self, weight: usize) -> u64 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn min_nonzero(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }
}

impl std::fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(w, c)| format!("{w}:{c}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Minimum distance; `exact` is false when only a partial search was possible,
/// in which case `value` is an upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinWeight {
    pub value: usize,
    pub exact: bool,
}

fn enumerable(q: u128, dimension: usize, cap: usize) -> bool {
    q.checked_pow(dimension as u32)
        .is_some_and(|n| cap >= 127 || n <= 1u128 << cap)
}

/// Exact weight distribution by enumerating every codeword.
pub fn weight_distribution(
    code: &MinimalCode,
    cap: usize,
) -> Result<WeightDistribution, CodeError> {
    let field = code.algebra().field();
    let q = field.order();
    if !enumerable(q, code.dimension(), cap) {
        return Err(CodeError::DimensionTooLarge {
            q,
            dimension: code.dimension(),
            cap,
        });
    }
    let rows: Vec<&[u32]> = code.basis().iter().map(|b| b.codes()).collect();
    let hist = if q == 2 {
        binary_histogram(&rows, code.length())
    } else {
        odometer_histogram(field, &rows, code.length())
    };
    Ok(WeightDistribution::from_histogram(&hist))
}

/// Exact when the code is small enough to enumerate; otherwise the least
/// weight among multiples of one basis row and combinations of two.
pub fn min_weight(code: &MinimalCode, cap: usize) -> MinWeight {
    if let Ok(d) = weight_distribution(code, cap) {
        return MinWeight {
            value: d.min_nonzero().unwrap_or(0),
            exact: true,
        };
    }
    let field = code.algebra().field();
    let basis = code.basis();
    let units: Vec<u32> = (1..field.order() as u32).collect();
    let best = (0..basis.len())
        .into_par_iter()
        .map(|i| {
            let mut best = basis[i].weight();
            for j in i + 1..basis.len() {
                for &c in &units {
                    let w = basis[i]
                        .codes()
                        .iter()
                        .zip(basis[j].codes())
                        .filter(|(&x, &y)| field.code_add(x, field.code_mul(c, y)) != 0)
                        .count();
                    best = best.min(w);
                }
            }
            best
        })
        .min()
        .unwrap_or(0);
    MinWeight {
        value: best,
        exact: false,
    }
}

fn pack(row: &[u32], words: usize) -> Vec<u64> {
    let mut out = vec![0u64; words];
    for (i, &c) in row.iter().enumerate() {
        if c != 0 {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

/// Gray-code walk over GF(2) combinations; the high coefficient bits are
/// split across threads and each thread walks the low bits.
fn binary_histogram(rows: &[&[u32]], length: usize) -> Vec<u64> {
    let words = length.div_ceil(64).max(1);
    let packed: Vec<Vec<u64>> = rows.iter().map(|r| pack(r, words)).collect();
    let dim = packed.len();
    let low = dim.min(16);
    let high = dim - low;
    (0u64..1 << high)
        .into_par_iter()
        .map(|h| {
            let mut hist = vec![0u64; length + 1];
            let mut cur = vec![0u64; words];
            for (j, row) in packed[low..].iter().enumerate() {
                if h >> j & 1 == 1 {
                    for (c, r) in cur.iter_mut().zip(row) {
                        *c ^= r;
                    }
                }
            }
            let weight = |v: &[u64]| v.iter().map(|w| w.count_ones() as usize).sum::<usize>();
            hist[weight(&cur)] += 1;
            for i in 1u64..1 << low {
                let row = &packed[i.trailing_zeros() as usize];
                for (c, r) in cur.iter_mut().zip(row) {
                    *c ^= r;
                }
                hist[weight(&cur)] += 1;
            }
            hist
        })
        .reduce(
            || vec![0u64; length + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Odometer over an F_p-basis of the code. Every digit step, including a wrap
/// from `p - 1` to `0`, adds the digit's vector once, since `p v = 0`.
fn odometer_histogram(field: &Field, rows: &[&[u32]], length: usize) -> Vec<u64> {
    let p = field.characteristic();
    let x_code = if field.degree() > 1 { p as u32 } else { 1 };
    let mut vectors: Vec<Vec<(usize, u32)>> = Vec::new();
    for row in rows {
        let mut scalar = 1u32;
        for _ in 0..field.degree() {
            vectors.push(
                row.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i, field.code_mul(scalar, c)))
                    .collect(),
            );
            scalar = field.code_mul(scalar, x_code);
        }
    }
    let mut hist = vec![0u64; length + 1];
    let mut cur = vec![0u32; length];
    let mut weight = 0usize;
    let mut digits = vec![0u64; vectors.len()];
    hist[0] += 1;
    let add = |cur: &mut Vec<u32>, weight: &mut usize, v: &[(usize, u32)]| {
        for &(i, c) in v {
            let before = cur[i] != 0;
            cur[i] = field.code_add(cur[i], c);
            let after = cur[i] != 0;
            match (before, after) {
                (false, true) => *weight += 1,
                (true, false) => *weight -= 1,
                _ => {}
            }
        }
    };
    while let Some(k) = digits.iter().position(|&d| d < p - 1) {
        for l in 0..k {
            digits[l] = 0;
            add(&mut cur, &mut weight, &vectors[l]);
        }
        digits[k] += 1;
        add(&mut cur, &mut weight, &vectors[k]);
        hist[weight] += 1;
    }
    hist
}
