//! Table-driven arithmetic in GF(p^e) for q = p^e ≤ [`MAX_FIELD_ORDER`].
//!
//! Elements are encoded as integers in `0..q`: the residue
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` is stored as `c_0 + c_1 p + ... `.
//! Index 0 is zero and index 1 is one in every field.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted by [`Field::new`].
pub const MAX_FIELD_ORDER: u32 = 49;

/// Fixed moduli (coefficients from constant term upward, monic) so that
/// element indices serialize identically across runs.
const MODULI: &[(u32, u32, &[u8])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

struct Tables {
    p: u32,
    e: u32,
    q: usize,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
}

/// A finite field GF(p^e). Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.e == other.0.e
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.e)
        }
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// True when the monic polynomial (degree 2 or 3) has no root in GF(p),
/// which for these degrees is equivalent to irreducibility.
fn has_no_root(p: u32, coeffs: &[u8]) -> bool {
    (0..p).all(|x| {
        let v = coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| (acc * x + c as u32) % p);
        v != 0
    })
}

fn search_irreducible(p: u32, e: u32) -> Option<Vec<u8>> {
    let count = (p as usize).pow(e);
    (0..count).find_map(|mut idx| {
        let mut coeffs = Vec::with_capacity(e as usize + 1);
        for _ in 0..e {
            coeffs.push((idx % p as usize) as u8);
            idx /= p as usize;
        }
        coeffs.push(1);
        has_no_root(p, &coeffs).then_some(coeffs)
    })
}

impl Field {
    /// Build GF(p^e), verifying the modulus and precomputing all tables.
    pub fn new(p: u32, e: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !(1..=3).contains(&e) {
            return Err(Error::BadDegree(e));
        }
        let q = (p as u64).pow(e);
        if q > MAX_FIELD_ORDER as u64 {
            return Err(Error::FieldTooLarge { q, cap: MAX_FIELD_ORDER as u64 });
        }
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            let shipped = MODULI
                .iter()
                .find(|(mp, me, _)| *mp == p && *me == e)
                .map(|(_, _, m)| m.to_vec())
                .filter(|m| has_no_root(p, m));
            match shipped.or_else(|| search_irreducible(p, e)) {
                Some(m) => m,
                None => return Err(Error::NoIrreducible { p, e }),
            }
        };
        Ok(Field(Arc::new(build_tables(p, e, modulus))))
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.0.e
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.0.q
    }

    /// Coefficients of the modulus from the constant term upward.
    pub fn modulus(&self) -> &[u8] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.0.add[a as usize * self.0.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.0.mul[a as usize * self.0.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.0.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is reported as 0 by this fast path,
    /// use [`Field::checked_inv`] when the operand may be zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.0.inv[a as usize]
    }

    pub fn checked_inv(&self, a: u8) -> Result<u8> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv(a))
        }
    }

    pub fn pow(&self, a: u8, mut exp: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `x^(p^j)`. Exponents are taken modulo `e`.
    pub fn frobenius(&self, x: u8, j: u32) -> u8 {
        let mut y = x;
        for _ in 0..(j % self.0.e) {
            y = self.0.frob[y as usize];
        }
        y
    }

    /// Elements `0..q` in index order.
    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.0.q as u8
    }

    /// A generator of the multiplicative group (smallest index).
    pub fn primitive_element(&self) -> u8 {
        let order = self.0.q as u64 - 1;
        if order == 1 {
            return 1;
        }
        let prime_factors: Vec<u64> = (2..=order)
            .filter(|d| order.is_multiple_of(*d) && is_prime(*d as u32))
            .collect();
        (2..self.0.q as u8)
            .find(|&g| prime_factors.iter().all(|f| self.pow(g, order / f) != 1))
            .expect("multiplicative group of a finite field is cyclic")
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value >= self.0.q as u64 {
            return Err(Error::ElementOutOfRange { value, q: self.0.q as u64 });
        }
        Ok(FieldElement { p: self.0.p as u8, e: self.0.e as u8, value: value as u8 })
    }

    fn owns(&self, x: FieldElement) -> Result<u8> {
        if x.p as u32 != self.0.p || x.e as u32 != self.0.e {
            return Err(Error::FieldMismatch);
        }
        Ok(x.value)
    }

    /// Checked arithmetic on tagged elements. `Pow` takes its exponent from
    /// `exponent` and ignores `b`.
    pub fn arith(
        &self,
        op: ArithOp,
        a: FieldElement,
        b: Option<FieldElement>,
    ) -> Result<FieldElement> {
        let x = self.owns(a)?;
        let rhs = || -> Result<u8> {
            match b {
                Some(b) => self.owns(b),
                None => Err(Error::Precondition("binary operation needs two operands".into())),
            }
        };
        let value = match op {
            ArithOp::Add => self.add(x, rhs()?),
            ArithOp::Mul => self.mul(x, rhs()?),
            ArithOp::Neg => self.neg(x),
            ArithOp::Inv => self.checked_inv(x)?,
            ArithOp::Pow(exp) => self.pow(x, exp),
        };
        Ok(FieldElement { value, ..a })
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.0.p, e: self.0.e, modulus: self.0.modulus.clone() }
    }
}

fn build_tables(p: u32, e: u32, modulus: Vec<u8>) -> Tables {
    let q = (p as usize).pow(e);
    let digits = |mut x: usize| -> Vec<u32> {
        (0..e)
            .map(|_| {
                let d = (x % p as usize) as u32;
                x /= p as usize;
                d
            })
            .collect()
    };
    let encode = |ds: &[u32]| -> u8 {
        ds.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize) as u8
    };
    let polymul = |a: &[u32], b: &[u32]| -> Vec<u32> {
        let mut prod = vec![0u32; 2 * e as usize];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // reduce by the monic modulus from the top degree down
        for deg in (e as usize..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for (t, &m) in modulus.iter().enumerate().take(e as usize) {
                let idx = deg - e as usize + t;
                prod[idx] = (prod[idx] + p * p - (c * m as u32) % p) % p;
            }
            prod[deg] = 0;
        }
        prod.truncate(e as usize);
        prod
    };

    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = encode(&sum);
            mul[a * q + b] = encode(&polymul(&da, &db));
        }
    }
    let neg = (0..q)
        .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
        .collect();
    let inv = (0..q)
        .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8 })
        .collect();
    let frob = (0..q)
        .map(|a| {
            let mut acc = 1u8;
            for _ in 0..p {
                acc = mul[acc as usize * q + a];
            }
            acc
        })
        .collect();
    Tables { p, e, q, modulus, add, mul, neg, inv, frob }
}

/// Operation selector for [`Field::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
    Pow(u64),
}

/// An element tagged with the field it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    p: u8,
    e: u8,
    value: u8,
}

impl FieldElement {
    pub fn value(self) -> u8 {
        self.value
    }
}

/// Serialized form of a field: `{"p": .., "e": .., "modulus": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u8>,
}

impl FieldSpec {
    /// Rebuild the field. The shipped modulus must match the stored one,
    /// otherwise element indices in the document would be misread.
    pub fn build(&self) -> Result<Field> {
        let field = Field::new(self.p, self.e)?;
        if !self.modulus.is_empty() && self.e > 1 && self.modulus != field.modulus() {
            return Err(Error::Document(format!(
                "modulus {:?} differs from the canonical {:?}",
                self.modulus,
                field.modulus()
            )));
        }
        Ok(field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_fields() -> Vec<Field> {
        [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]
            .iter()
            .map(|&(p, e)| Field::new(p, e).unwrap())
            .collect()
    }

    #[test]
    fn prime_fields() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.elements().collect::<Vec<_>>(), vec![0, 1]);
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.q(), 3);
        assert_eq!(f3.add(2, 2), 1);
        assert_eq!(f3.inv(2), 2);
    }

    #[test]
    fn gf4_modulus_and_generator() {
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // a = x has index 2, a + 1 has index 3
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.frobenius(2, 1), 3);
    }

    #[test]
    fn shipped_moduli_have_no_roots() {
        for &(p, _, m) in MODULI {
            assert!(has_no_root(p, m), "{p}: {m:?}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(2, 4).unwrap_err(), Error::BadDegree(4));
        assert!(matches!(Field::new(11, 2), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(Field::new(53, 1), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in small_fields() {
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_automorphism() {
        for f in small_fields() {
            for a in f.elements() {
                assert_eq!(f.frobenius(a, f.e()), a);
                if f.e() == 1 {
                    assert_eq!(f.frobenius(a, 1), a);
                }
                for b in f.elements() {
                    for j in 0..f.e() {
                        assert_eq!(
                            f.frobenius(f.mul(a, b), j),
                            f.mul(f.frobenius(a, j), f.frobenius(b, j))
                        );
                        assert_eq!(
                            f.frobenius(f.add(a, b), j),
                            f.add(f.frobenius(a, j), f.frobenius(b, j))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn checked_arith_errors() {
        let f3 = Field::new(3, 1).unwrap();
        let f5 = Field::new(5, 1).unwrap();
        let zero = f3.element(0).unwrap();
        let two = f3.element(2).unwrap();
        assert_eq!(f3.arith(ArithOp::Inv, zero, None), Err(Error::DivisionByZero));
        assert_eq!(f3.arith(ArithOp::Add, two, Some(two)).unwrap().value(), 1);
        assert_eq!(f3.arith(ArithOp::Pow(3), two, None).unwrap().value(), 2);
        let four = f5.element(4).unwrap();
        assert_eq!(f3.arith(ArithOp::Add, two, Some(four)), Err(Error::FieldMismatch));
        assert!(f3.element(3).is_err());
    }

    #[test]
    fn primitive_elements_generate() {
        for f in small_fields() {
            let g = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1u8;
            for _ in 0..f.q() - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len(), f.q() - 1);
        }
    }
}
