//! Arithmetic in the fields GF(q^2) that carry the Hermitian curves.
//!
//! Elements are stored as integer codes: the code of `c_0 + c_1 t + ... + c_{m-1} t^{m-1}`
//! is `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. Every supported field has at most 81 elements,
//! so codes fit in a `u8` and all arithmetic goes through small lookup tables built once.

use std::fmt;

use crate::error::{HermitError, Result};

/// Subfield orders q for which a field GF(q^2) is available.
pub const SUPPORTED_Q: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Fixed modulus polynomials, coefficients little-endian (constant term first).
///
/// These are the Conway polynomials for each field, so the representation is
/// reproducible outside this crate as well.
const MODULI: [(u32, u32, u32, &[u32]); 7] = [
    // (q, p, m, modulus)
    (2, 2, 2, &[1, 1, 1]),             // t^2 + t + 1
    (3, 3, 2, &[2, 2, 1]),             // t^2 + 2t + 2
    (4, 2, 4, &[1, 1, 0, 0, 1]),       // t^4 + t + 1
    (5, 5, 2, &[2, 4, 1]),             // t^2 + 4t + 2
    (7, 7, 2, &[3, 6, 1]),             // t^2 + 6t + 3
    (8, 2, 6, &[1, 1, 0, 1, 1, 0, 1]), // t^6 + t^4 + t^3 + t + 1
    (9, 3, 4, &[2, 0, 0, 2, 1]),       // t^4 + 2t^3 + 2
];

/// Kind of binary field operation, for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A finite field GF(p^m) with m even, viewed as GF(q^2).
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    order: usize,
    modulus: Vec<u32>,
    generator: u8,
    add: Vec<u8>,
    neg: Vec<u8>,
    exp: Vec<u8>,
    log: Vec<u16>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Returns the field GF(q^2) with its fixed modulus.
pub fn field_make(q: u32) -> Result<FieldSpec> {
    let &(_, p, m, modulus) = MODULI
        .iter()
        .find(|entry| entry.0 == q)
        .ok_or(HermitError::UnsupportedQ(q as i64))?;
    FieldSpec::new(p, m, modulus.to_vec())
}

/// Parses `n` as a prime power, returning `(p, e)` with `n = p^e`.
pub fn prime_power(n: u32) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let (mut rest, mut e) = (n, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl FieldSpec {
    /// Builds GF(p^m) from a monic modulus, checking that it is irreducible.
    pub fn new(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self> {
        if prime_power(p) != Some((p, 1)) {
            return Err(HermitError::InvalidField(format!("{p} is not prime")));
        }
        if m == 0 || !m.is_multiple_of(2) {
            return Err(HermitError::InvalidField(format!(
                "extension degree {m} is not a positive even number"
            )));
        }
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 {
            return Err(HermitError::InvalidField("modulus must be monic of degree m".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(HermitError::InvalidField(
                "modulus coefficients must lie in [0, p)".into(),
            ));
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(HermitError::InvalidField(format!(
                "modulus {modulus:?} is reducible over GF({p})"
            )));
        }
        let order = (p as usize).pow(m);
        if order > 256 {
            return Err(HermitError::InvalidField(format!(
                "field of order {order} does not fit the u8 encoding"
            )));
        }
        let q = p.pow(m / 2);

        let mut add = vec![0u8; order * order];
        let mut neg = vec![0u8; order];
        for a in 0..order {
            let da = poly::digits(a, p, m);
            for b in 0..order {
                let db = poly::digits(b, p, m);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * order + b] = poly::code(&sum, p) as u8;
            }
            let na: Vec<u32> = da.iter().map(|x| (p - x) % p).collect();
            neg[a] = poly::code(&na, p) as u8;
        }

        // Smallest element of full multiplicative order.
        let group = order - 1;
        let generator = (1..order)
            .find(|&g| poly::mult_order(g, p, m, &modulus) == group)
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u8; 2 * group];
        let mut log = vec![0u16; order];
        let mut x = 1usize;
        for k in 0..group {
            exp[k] = x as u8;
            exp[k + group] = x as u8;
            log[x] = k as u16;
            x = poly::mulmod(x, generator, p, m, &modulus);
        }

        Ok(Self {
            p,
            m,
            q,
            order,
            modulus,
            generator: generator as u8,
            add,
            neg,
            exp,
            log,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Order of the subfield GF(q).
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of elements, q^2.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The stored primitive element (smallest code of order q^2 - 1).
    pub fn generator(&self) -> u8 {
        self.generator
    }

    pub fn is_char2(&self) -> bool {
        self.p == 2
    }

    pub fn element(&self, value: u8) -> Result<FieldElement<'_>> {
        if (value as usize) < self.order {
            Ok(FieldElement { value, spec: self })
        } else {
            Err(HermitError::InvalidElement {
                value: value as u32,
                order: self.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'_>> {
        (0..self.order).map(move |v| FieldElement {
            value: v as u8,
            spec: self,
        })
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    pub fn inv(&self, a: u8) -> Option<u8> {
        if a == 0 {
            return None;
        }
        let group = self.order - 1;
        let l = self.log[a as usize] as usize;
        Some(self.exp[(group - l) % group])
    }

    pub fn div(&self, a: u8, b: u8) -> Option<u8> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    /// `a^e` for any integer exponent; negative exponents need `a != 0`.
    pub fn pow(&self, a: u8, e: i64) -> Option<u8> {
        if e == 0 {
            return Some(1);
        }
        if a == 0 {
            return (e > 0).then_some(0);
        }
        let group = (self.order - 1) as i64;
        let l = self.log[a as usize] as i64;
        Some(self.exp[(l * e).rem_euclid(group) as usize])
    }

    /// The Frobenius map a -> a^q, an involution on GF(q^2).
    pub fn pow_q(&self, a: u8) -> u8 {
        self.pow(a, self.q as i64).unwrap()
    }

    /// Product computed by schoolbook polynomial multiplication mod the modulus,
    /// independent of the log tables.
    pub fn mul_by_polynomial(&self, a: u8, b: u8) -> u8 {
        poly::mulmod(a as usize, b as usize, self.p, self.m, &self.modulus) as u8
    }

    /// Base-p coefficient digits of a code, little-endian.
    pub fn digits(&self, a: u8) -> Vec<u32> {
        poly::digits(a as usize, self.p, self.m)
    }
}

/// A field element bound to its field.
#[derive(Clone, Copy)]
pub struct FieldElement<'a> {
    value: u8,
    spec: &'a FieldSpec,
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}({})", self.spec.order, self.value)
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.spec == other.spec
    }
}

impl Eq for FieldElement<'_> {}

impl<'a> FieldElement<'a> {
    pub fn value(&self) -> u8 {
        self.value
    }

    pub fn spec(&self) -> &'a FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow_q(&self) -> Self {
        Self {
            value: self.spec.pow_q(self.value),
            spec: self.spec,
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        self.spec
            .pow(self.value, e)
            .map(|value| Self { value, spec: self.spec })
            .ok_or(HermitError::DivisionByZero)
    }
}

/// Checked binary arithmetic on two elements of the same field.
pub fn arith<'a>(a: FieldElement<'a>, b: FieldElement<'a>, op: ArithOp) -> Result<FieldElement<'a>> {
    if a.spec != b.spec {
        return Err(HermitError::FieldMismatch);
    }
    let f = a.spec;
    let value = match op {
        ArithOp::Add => f.add(a.value, b.value),
        ArithOp::Sub => f.sub(a.value, b.value),
        ArithOp::Mul => f.mul(a.value, b.value),
        ArithOp::Div => f.div(a.value, b.value).ok_or(HermitError::DivisionByZero)?,
    };
    Ok(FieldElement { value, spec: f })
}

/// Polynomials over GF(p) as little-endian coefficient vectors; only used to
/// build and cross-check the tables.
mod poly {
    pub fn digits(mut code: usize, p: u32, m: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(m as usize);
        for _ in 0..m {
            out.push((code % p as usize) as u32);
            code /= p as usize;
        }
        out
    }

    pub fn code(digits: &[u32], p: u32) -> usize {
        digits
            .iter()
            .rev()
            .fold(0usize, |acc, &d| acc * p as usize + d as usize)
    }

    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod_p(a: u32, p: u32) -> u32 {
        (1..p).find(|x| (a * x) % p == 1).unwrap()
    }

    /// Remainder of `a` divided by `b` over GF(p); `b` must be nonzero.
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let lead_inv = inv_mod_p(*b.last().unwrap(), p);
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let factor = (r.last().unwrap() * lead_inv) % p;
            for (k, &bc) in b.iter().enumerate() {
                r[shift + k] = (r[shift + k] + p * p - factor * bc % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mulmod(a: usize, b: usize, p: u32, m: u32, modulus: &[u32]) -> usize {
        let da = digits(a, p, m);
        let db = digits(b, p, m);
        let mut prod = vec![0u32; 2 * m as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let mut r = rem(&prod, modulus, p);
        r.resize(m as usize, 0);
        code(&r, p)
    }

    pub fn mult_order(g: usize, p: u32, m: u32, modulus: &[u32]) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = mulmod(x, g, p, m, modulus);
            k += 1;
            if k > p.pow(m) as usize {
                return 0;
            }
        }
        k
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = trim(f.to_vec()).len().saturating_sub(1) as u32;
        if deg == 0 {
            return false;
        }
        for k in 1..=deg / 2 {
            for low in 0..p.pow(k) as usize {
                let mut divisor = digits(low, p, k);
                divisor.push(1);
                if rem(f, &divisor, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}
