//! Roots of unity and the extension of a base field that contains them.

use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;

use super::{field_make_large, gcd, mul_order, Field, FieldError, FieldScalar, ReverseMap};

fn prime_factors_u64(n: u64) -> Vec<u64> {
    super::prime_divisors(n)
}

/// A primitive `n`-th root of unity in `field`.
///
/// Nonzero elements `y` are scanned in code order and the first power
/// `y^((|F|-1)/n)` of exact order `n` is returned, so the choice is
/// deterministic for a given context.
pub fn primitive_root_of_unity(field: &Field, n: u64) -> Result<FieldScalar, FieldError> {
    let group_order = field.order_big() - 1u32;
    let no_roots = FieldError::NoRootsOfUnity {
        n,
        p: field.characteristic(),
        m: field.degree(),
    };
    if n == 0 || &group_order % n != BigUint::from(0u32) {
        return Err(no_roots);
    }
    if n == 1 {
        return Ok(field.one());
    }
    let cofactor = group_order / n;
    let primes = prime_factors_u64(n);
    (1..field.order())
        .map(|c| field.from_code(c).pow_big(&cofactor))
        .find(|z| primes.iter().all(|&r| !z.pow((n / r) as u128).is_one()))
        .ok_or(no_roots)
}

/// An extension `E` of a base field `F_q` containing the `n`-th roots of unity,
/// together with the embedding `F_q -> E` and its partial inverse.
pub struct SplittingField {
    base: Field,
    ext: Field,
    /// Image of the base generator `x` (unused for prime base fields).
    gen_image: Option<FieldScalar>,
    reverse: OnceLock<ReverseMap>,
}

impl std::fmt::Debug for SplittingField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SplittingField")
            .field("base", &self.base)
            .field("ext", &self.ext)
            .finish()
    }
}

impl SplittingField {
    /// Extension of degree `mul_order(q, n)` over `base`.
    pub fn new(base: &Field, n: u64) -> Result<Self, FieldError> {
        let q = base.order();
        let q_mod_n = (q % n.max(1) as u128) as u64;
        if n == 0 || (n > 1 && gcd(q_mod_n, n) != 1) {
            return Err(FieldError::NotCoprime {
                q: q.min(u64::MAX as u128) as u64,
                n,
            });
        }
        let k = mul_order(q_mod_n, n)? as usize;
        if k == 1 {
            return Ok(Self {
                base: Arc::clone(base),
                ext: Arc::clone(base),
                gen_image: None,
                reverse: OnceLock::new(),
            });
        }
        let ext = field_make_large(base.characteristic(), base.degree() * k)?;
        let gen_image = if base.degree() == 1 {
            None
        } else {
            Some(find_root_of_modulus(base, &ext))
        };
        Ok(Self {
            base: Arc::clone(base),
            ext,
            gen_image,
            reverse: OnceLock::new(),
        })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    fn is_trivial(&self) -> bool {
        Arc::ptr_eq(&self.base, &self.ext)
    }

    /// Image of a base-field code in the extension.
    pub fn embed_code(&self, code: u32) -> FieldScalar {
        if self.is_trivial() {
            return self.ext.from_code(code as u128);
        }
        let digits = self.base.from_code(code as u128);
        match &self.gen_image {
            None => self.ext.from_int(digits.coeffs()[0] as i64),
            Some(beta) => {
                let mut acc = self.ext.zero();
                let mut power = self.ext.one();
                for &c in digits.coeffs() {
                    if c != 0 {
                        acc = &acc + &(&power * &self.ext.from_int(c as i64));
                    }
                    power = &power * beta;
                }
                acc
            }
        }
    }

    /// Pulls an extension element back to a base-field code.
    ///
    /// Fails with [`FieldError::NotInBaseField`] when the element is not fixed
    /// by the `q`-power Frobenius.
    pub fn reduce(&self, x: &FieldScalar) -> Result<u32, FieldError> {
        if x.field() != &self.ext {
            return Err(FieldError::ContextMismatch);
        }
        if self.is_trivial() {
            return Ok(x.code() as u32);
        }
        if self.gen_image.is_none() {
            let c = x.coeffs();
            return if c[1..].iter().all(|&v| v == 0) {
                Ok(c[0] as u32)
            } else {
                Err(FieldError::NotInBaseField)
            };
        }
        let map = self.reverse.get_or_init(|| {
            (0..self.base.order() as u32)
                .map(|code| (self.embed_code(code).coeffs().to_vec(), code))
                .collect()
        });
        map.get(x.coeffs())
            .copied()
            .ok_or(FieldError::NotInBaseField)
    }
}

/// A root in `ext` of the defining polynomial of `base`.
fn find_root_of_modulus(base: &Field, ext: &Field) -> FieldScalar {
    let q = base.order() as u64;
    let cofactor = (ext.order_big() - 1u32) / (q - 1);
    let primes = prime_factors_u64(q - 1);
    // z generates the copy of F_q^* inside ext
    let z = (1..ext.order())
        .map(|c| ext.from_code(c).pow_big(&cofactor))
        .find(|z| {
            primes
                .iter()
                .all(|&r| !z.pow(((q - 1) / r) as u128).is_one())
        })
        .expect("subfield multiplicative group is cyclic");
    let modulus: Vec<FieldScalar> = base
        .modulus()
        .iter()
        .map(|&c| ext.from_int(c as i64))
        .collect();
    let mut w = ext.one();
    for _ in 0..q - 1 {
        let value = modulus
            .iter()
            .rev()
            .fold(ext.zero(), |acc, c| &(&acc * &w) + c);
        if value.is_zero() {
            return w;
        }
        w = &w * &z;
    }
    unreachable!("an irreducible polynomial over F_q splits in F_q's copy inside ext")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::field_make;

    #[test]
    fn cube_roots_in_gf4() {
        let f = field_make(2, 2, None).unwrap();
        let w = primitive_root_of_unity(&f, 3).unwrap();
        assert_eq!(w.multiplicative_order(), Some(3));
        let values: std::collections::BTreeSet<u128> = (0..3).map(|k| w.pow(k).code()).collect();
        assert_eq!(values.len(), 3);
        assert!(matches!(
            primitive_root_of_unity(&f, 5),
            Err(FieldError::NoRootsOfUnity { .. })
        ));
    }

    #[test]
    fn ninth_roots_need_gf64() {
        let f2 = field_make(2, 1, None).unwrap();
        let s = SplittingField::new(&f2, 9).unwrap();
        assert_eq!(s.ext().degree(), 6);
        let z = primitive_root_of_unity(s.ext(), 9).unwrap();
        assert_eq!(z.multiplicative_order(), Some(9));
    }

    #[test]
    fn large_splitting_field() {
        // ord_67(2) = 66
        let f2 = field_make(2, 1, None).unwrap();
        let s = SplittingField::new(&f2, 67).unwrap();
        assert_eq!(s.ext().degree(), 66);
        let z = primitive_root_of_unity(s.ext(), 67).unwrap();
        assert!(!z.is_one());
        assert!(z.pow(67).is_one());
    }

    #[test]
    fn splitting_field_beyond_code_range() {
        // ord_89(3) = 88, and 3^88 exceeds the u128 code range
        let f3 = field_make(3, 1, None).unwrap();
        let s = SplittingField::new(&f3, 89).unwrap();
        assert_eq!(s.ext().degree(), 88);
        assert_eq!(s.ext().order(), u128::MAX);
        let z = primitive_root_of_unity(s.ext(), 89).unwrap();
        assert!(!z.is_one());
        assert!(z.pow(89).is_one());
        let w = z.inv().unwrap();
        assert!((&w * &z).is_one());
        assert_eq!(s.reduce(&s.embed_code(2)).unwrap(), 2);
    }

    #[test]
    fn embedding_of_extension_base() {
        // F_4 inside F_64 (7 | 63 needs degree 3 over F_4)
        let f4 = field_make(2, 2, None).unwrap();
        let s = SplittingField::new(&f4, 7).unwrap();
        assert_eq!(s.ext().degree(), 6);
        for a in 0..4u32 {
            for b in 0..4u32 {
                f4.require_code_tables().unwrap();
                let sum = f4.code_add(a, b);
                let prod = f4.code_mul(a, b);
                let (ea, eb) = (s.embed_code(a), s.embed_code(b));
                assert_eq!(s.reduce(&(&ea + &eb)).unwrap(), sum);
                assert_eq!(s.reduce(&(&ea * &eb)).unwrap(), prod);
            }
        }
        let outside = s.ext().generator();
        assert_eq!(s.reduce(&outside), Err(FieldError::NotInBaseField));
    }

    #[test]
    fn trivial_extension() {
        let f7 = field_make(7, 1, None).unwrap();
        let s = SplittingField::new(&f7, 3).unwrap();
        assert_eq!(s.ext().degree(), 1);
        assert!(matches!(
            SplittingField::new(&f7, 14),
            Err(FieldError::NotCoprime { .. })
        ));
    }
}
