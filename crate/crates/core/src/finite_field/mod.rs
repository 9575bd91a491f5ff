//! Exact arithmetic in GF(p) and GF(p^m).
//!
//! A field is described by a shared [`FieldCtx`] (characteristic, degree and an
//! irreducible monic modulus). Scalars carry a reference to their context and
//! refuse to mix with scalars of another field.
//!
//! Besides the polynomial representation every element has an integer *code*
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. Small fields (order at most
//! [`MAX_TABLE_FIELD`]) additionally support table-driven arithmetic directly on
//! `u32` codes, which is what the group algebra uses for its coefficient vectors.

mod numtheory;
mod poly;
mod splitting;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;

pub use numtheory::{
    divisors, euler_phi, factorize, gcd, inv_mod, is_prime, lcm, mul_order, pow_mod,
    prime_divisors, tau, unit_group_generators,
};
pub use splitting::{primitive_root_of_unity, SplittingField};

/// Largest field order supported by the code tables.
pub const MAX_TABLE_FIELD: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeP(u64),
    #[error("modulus {modulus:?} is reducible over GF({p})")]
    ReducibleModulus { modulus: Vec<u64>, p: u64 },
    #[error("modulus must be monic of degree {expected} (got {got} coefficients)")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("scalars belong to different fields")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{q} is not a unit modulo {n}")]
    NotCoprime { q: u64, n: u64 },
    #[error("field GF({p}^{m}) is too large")]
    FieldTooLarge { p: u64, m: usize },
    #[error("characteristic {p} divides {k}")]
    CharDividesInteger { p: u64, k: u64 },
    #[error("GF({p}^{m}) has no primitive {n}-th root of unity")]
    NoRootsOfUnity { n: u64, p: u64, m: usize },
    #[error("value does not lie in the base field")]
    NotInBaseField,
}

impl FieldError {
    pub fn code(&self) -> &'static str {
        match self {
            FieldError::NonPrimeP(_) => "NonPrimeP",
            FieldError::ReducibleModulus { .. } => "ReducibleModulus",
            FieldError::DegreeMismatch { .. } => "DegreeMismatch",
            FieldError::ContextMismatch => "ContextMismatch",
            FieldError::DivisionByZero => "DivisionByZero",
            FieldError::NotCoprime { .. } => "NotCoprime",
            FieldError::FieldTooLarge { .. } => "FieldTooLarge",
            FieldError::CharDividesInteger { .. } => "CharDividesInteger",
            FieldError::NoRootsOfUnity { .. } => "NoRootsOfUnity",
            FieldError::NotInBaseField => "NotInBaseField",
        }
    }
}

/// Shared handle to a field context.
pub type Field = Arc<FieldCtx>;

struct CodeTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub struct FieldCtx {
    p: u64,
    degree: usize,
    /// Monic, `degree + 1` coefficients, low-to-high.
    modulus: Vec<u64>,
    /// `p^m`, saturated at `u128::MAX` for fields built by [`field_make_large`].
    size: u128,
    order_big: BigUint,
    tables: OnceLock<CodeTables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

/// Builds GF(p^m).
///
/// Without an explicit modulus the lexicographically first irreducible monic
/// polynomial of degree `m` is used, comparing coefficient sequences
/// `(c_0, c_1, ..., c_{m-1})` from the constant term upwards. For `m = 1` the
/// default modulus is `x`, so elements are plain residues.
pub fn field_make(p: u64, m: usize, modulus: Option<&[u64]>) -> Result<Field, FieldError> {
    build_field(p, m, modulus, false)
}

/// Like [`field_make`] with the default modulus, but without the bound on
/// `p^m`. Element codes and [`FieldCtx::order`] are meaningless for fields
/// past that bound; arithmetic, [`FieldCtx::order_big`] and
/// [`FieldScalar::pow_big`] remain exact.
pub(crate) fn field_make_large(p: u64, m: usize) -> Result<Field, FieldError> {
    build_field(p, m, None, true)
}

fn build_field(
    p: u64,
    m: usize,
    modulus: Option<&[u64]>,
    allow_large: bool,
) -> Result<Field, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrimeP(p));
    }
    if p >= 1 << 31 {
        return Err(FieldError::FieldTooLarge { p, m });
    }
    if m == 0 {
        return Err(FieldError::DegreeMismatch {
            expected: 1,
            got: 0,
        });
    }
    let order_big = BigUint::from(p).pow(m as u32);
    let size = match (p as u128).checked_pow(m as u32).filter(|&s| s < 1 << 126) {
        Some(s) => s,
        None if allow_large => u128::MAX,
        None => return Err(FieldError::FieldTooLarge { p, m }),
    };
    let modulus = match modulus {
        Some(given) => {
            if given.len() != m + 1 || given[m] != 1 || given.iter().any(|&c| c >= p) {
                return Err(FieldError::DegreeMismatch {
                    expected: m,
                    got: given.len(),
                });
            }
            if !poly::is_irreducible(given, p) {
                return Err(FieldError::ReducibleModulus {
                    modulus: given.to_vec(),
                    p,
                });
            }
            given.to_vec()
        }
        None if m == 1 => vec![0, 1],
        None => first_irreducible(p, m),
    };
    Ok(Arc::new(FieldCtx {
        p,
        degree: m,
        modulus,
        size,
        order_big,
        tables: OnceLock::new(),
    }))
}

fn first_irreducible(p: u64, m: usize) -> Vec<u64> {
    // polynomials with zero constant term are divisible by x
    let mut digits = vec![0u64; m];
    digits[0] = 1;
    loop {
        let mut f = digits.clone();
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return f;
        }
        let mut i = m - 1;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            // an irreducible polynomial of every degree exists, so the
            // odometer never wraps past the constant term
            i -= 1;
        }
    }
}

impl FieldCtx {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements `p^m`.
    pub fn order(&self) -> u128 {
        self.size
    }

    /// Number of elements, exact for every field.
    pub fn order_big(&self) -> &BigUint {
        &self.order_big
    }

    fn is_large(&self) -> bool {
        self.size == u128::MAX
    }

    /// `p` for prime fields, `p^m` otherwise.
    pub fn spec_string(&self) -> String {
        if self.degree == 1 {
            self.p.to_string()
        } else {
            format!("{}^{}", self.p, self.degree)
        }
    }

    pub fn zero(self: &Arc<Self>) -> FieldScalar {
        FieldScalar {
            field: Arc::clone(self),
            coeffs: vec![0; self.degree],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldScalar {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, k: i64) -> FieldScalar {
        let mut s = self.zero();
        s.coeffs[0] = k.rem_euclid(self.p as i64) as u64;
        s
    }

    /// The class of `x` (a generator of the field over its prime field).
    pub fn generator(self: &Arc<Self>) -> FieldScalar {
        let mut s = self.zero();
        if self.degree == 1 {
            s.coeffs[0] = (self.p - self.modulus[0]) % self.p;
        } else {
            s.coeffs[1] = 1;
        }
        s
    }

    /// Scalar from low-to-high polynomial coefficients; coefficients are reduced mod p.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[u64]) -> Result<FieldScalar, FieldError> {
        if coeffs.len() > self.degree {
            return Err(FieldError::DegreeMismatch {
                expected: self.degree,
                got: coeffs.len(),
            });
        }
        let mut s = self.zero();
        for (dst, &c) in s.coeffs.iter_mut().zip(coeffs) {
            *dst = c % self.p;
        }
        Ok(s)
    }

    pub fn from_code(self: &Arc<Self>, mut code: u128) -> FieldScalar {
        let mut s = self.zero();
        for c in s.coeffs.iter_mut() {
            *c = (code % self.p as u128) as u64;
            code /= self.p as u128;
        }
        s
    }

    /// Inverse of the integer `k`, computed as the inverse of `k mod p`.
    pub fn inverse_of_int(self: &Arc<Self>, k: u64) -> Result<FieldScalar, FieldError> {
        let r = k % self.p;
        if r == 0 {
            return Err(FieldError::CharDividesInteger { p: self.p, k });
        }
        let inv = inv_mod(r, self.p).expect("prime modulus");
        Ok(self.from_int(inv as i64))
    }

    /// Every element in code order. Only sensible for small fields.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldScalar> + '_ {
        (0..self.size).map(move |c| self.from_code(c))
    }

    fn reduce_product(&self, prod: &mut Vec<u64>) {
        let m = self.degree;
        let p = self.p;
        for top in (m..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..m {
                let sub = c * self.modulus[i] % p;
                let idx = top - m + i;
                prod[idx] = (prod[idx] + p - sub) % p;
            }
        }
        prod.truncate(m);
    }

    fn mul_coeffs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.degree;
        let p = self.p;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        self.reduce_product(&mut prod);
        prod
    }

    // ---- table-driven arithmetic on codes ----

    fn tables(self: &Arc<Self>) -> &CodeTables {
        self.tables.get_or_init(|| {
            assert!(
                self.size <= MAX_TABLE_FIELD,
                "code tables requested for a field of order {}",
                self.size
            );
            let q = self.size as usize;
            let g = self.primitive_element();
            let mut exp = Vec::with_capacity(q - 1);
            let mut log = vec![0u32; q];
            let mut x = self.one();
            for i in 0..q - 1 {
                let c = x.code() as u32;
                exp.push(c);
                log[c as usize] = i as u32;
                x = &x * &g;
            }
            CodeTables { exp, log }
        })
    }

    /// Smallest element (in code order) generating the multiplicative group.
    pub fn primitive_element(self: &Arc<Self>) -> FieldScalar {
        let n = self.size - 1;
        let primes: Vec<u128> = factorize_u128(n);
        (1..self.size)
            .map(|c| self.from_code(c))
            .find(|x| primes.iter().all(|&r| !x.pow(n / r).is_one()))
            .expect("finite fields have cyclic multiplicative groups")
    }

    fn check_code_field(&self) -> Result<(), FieldError> {
        if self.size > MAX_TABLE_FIELD {
            Err(FieldError::FieldTooLarge {
                p: self.p,
                m: self.degree,
            })
        } else {
            Ok(())
        }
    }

    /// Ensures code arithmetic is available for this field.
    pub fn require_code_tables(self: &Arc<Self>) -> Result<(), FieldError> {
        self.check_code_field()?;
        let _ = self.tables();
        Ok(())
    }

    #[inline]
    pub fn code_add(&self, a: u32, b: u32) -> u32 {
        if self.degree == 1 {
            ((a as u64 + b as u64) % self.p) as u32
        } else if self.p == 2 {
            a ^ b
        } else {
            let p = self.p as u32;
            let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
            while a > 0 || b > 0 {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        }
    }

    #[inline]
    pub fn code_neg(&self, a: u32) -> u32 {
        if self.degree == 1 {
            ((self.p - a as u64) % self.p) as u32
        } else if self.p == 2 {
            a
        } else {
            let p = self.p as u32;
            let (mut a, mut out, mut place) = (a, 0u32, 1u32);
            while a > 0 {
                out += ((p - a % p) % p) * place;
                a /= p;
                place *= p;
            }
            out
        }
    }

    #[inline]
    pub fn code_sub(&self, a: u32, b: u32) -> u32 {
        self.code_add(a, self.code_neg(b))
    }

    #[inline]
    pub fn code_mul(self: &Arc<Self>, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.degree == 1 {
            return (a as u64 * b as u64 % self.p) as u32;
        }
        let t = self.tables();
        let n = t.exp.len();
        t.exp[(t.log[a as usize] as usize + t.log[b as usize] as usize) % n]
    }

    pub fn code_inv(self: &Arc<Self>, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        if self.degree == 1 {
            return Ok(inv_mod(a as u64, self.p).expect("prime field") as u32);
        }
        let t = self.tables();
        let n = t.exp.len();
        Ok(t.exp[(n - t.log[a as usize] as usize) % n])
    }

    /// Code of `k mod p`.
    pub fn code_from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.p as i64) as u32
    }
}

fn factorize_u128(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of a finite field together with its context.
#[derive(Clone)]
pub struct FieldScalar {
    field: Field,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl PartialEq for FieldScalar {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
            && self.coeffs == other.coeffs
    }
}

impl Eq for FieldScalar {}

impl FieldScalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Polynomial coefficients, low-to-high, length = field degree.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn code(&self) -> u128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.field.p as u128 + c as u128)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) % p)
            .collect();
        Ok(Self {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(Self {
            field: Arc::clone(&self.field),
            coeffs: self.field.mul_coeffs(&self.coeffs, &other.coeffs),
        })
    }

    pub fn pow(&self, mut exp: u128) -> Self {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Power with an arbitrary-size exponent.
    pub fn pow_big(&self, exp: &BigUint) -> Self {
        let mut acc = self.field.one();
        for i in (0..exp.bits()).rev() {
            acc = &acc * &acc;
            if exp.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.field.is_large() {
            return Ok(self.pow_big(&(self.field.order_big() - 2u32)));
        }
        Ok(self.pow(self.field.size - 2))
    }

    /// Multiplicative order of a nonzero element; `None` for zero and for
    /// fields whose order exceeds the code range.
    pub fn multiplicative_order(&self) -> Option<u128> {
        if self.is_zero() || self.field.is_large() {
            return None;
        }
        let mut t = self.field.size - 1;
        for r in factorize_u128(t) {
            while t.is_multiple_of(r) && self.pow(t / r).is_one() {
                t /= r;
            }
        }
        Some(t)
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        let p = self.field.p;
        FieldScalar {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }
}

impl Add for &FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        self.try_add(rhs).expect("field context mismatch")
    }
}

impl Sub for &FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        self.try_sub(rhs).expect("field context mismatch")
    }
}

impl Mul for &FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        self.try_mul(rhs).expect("field context mismatch")
    }
}

/// Lookup from the polynomial representation back to a code.
pub(crate) type ReverseMap = HashMap<Vec<u64>, u32>;
