//! The Hermitian curve `y^q + y = x^(q+1)` over GF(q^2), its rational points and
//! the divisor bookkeeping for two-point divisors `mP + nQ`.
//!
//! `P` is the point at infinity and `Q` the origin. The hyperplane class is
//! `H = (q+1)P ~ (q+1)Q`, the canonical class is `K = (q-2)H`, and as literal
//! divisors we always take `H = (q+1)P`, `K = (q-2)(q+1)P` (the divisor of `dx`).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{HermitError, Result};
use crate::field::{field_make, FieldSpec};

/// Numerical data of the curve for a given q. Works for any integer q >= 2 so
/// that the bound formulas can be swept past the fields we can build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hermitian {
    q: i64,
}

impl Hermitian {
    pub fn new(q: i64) -> Result<Self> {
        if q < 2 {
            return Err(HermitError::OutOfRange(format!("q = {q} must be at least 2")));
        }
        Ok(Self { q })
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn genus(&self) -> i64 {
        self.q * (self.q - 1) / 2
    }

    /// Number of rational points including the point at infinity.
    pub fn n_points(&self) -> i64 {
        self.q.pow(3) + 1
    }

    /// Order of the automorphism group, q^3 (q^3 + 1) (q^2 - 1).
    pub fn aut_order(&self) -> u128 {
        let q = self.q as u128;
        q.pow(3) * (q.pow(3) + 1) * (q * q - 1)
    }

    /// Degree of the hyperplane class H.
    pub fn h_degree(&self) -> i64 {
        self.q + 1
    }

    /// Degree of the canonical class, 2g - 2.
    pub fn k_degree(&self) -> i64 {
        2 * self.genus() - 2
    }

    /// The pole order at P of the differential pairing used for residue codes,
    /// `q^3 + q^2 - q - 2`: `C_Omega(R - P, iP) = C_L(R - P, (N - i)P)`.
    pub fn duality_shift(&self) -> i64 {
        self.q.pow(3) + self.k_degree()
    }

    /// Writes the divisor as `dH - aP - bQ` with `0 <= a, b <= q`.
    pub fn canonicalize(&self, g: TwoPointDivisor) -> CanonicalForm {
        let h = self.q + 1;
        let a = (-g.m).rem_euclid(h);
        let b = (-g.n).rem_euclid(h);
        let d = (g.m + g.n + a + b).div_euclid(h);
        CanonicalForm { d, a, b }
    }

    /// Canonical data of `C = G - K`.
    pub fn relative_to_canonical(&self, g: TwoPointDivisor) -> CanonicalForm {
        let c = self.canonicalize(g);
        CanonicalForm {
            d: c.d - (self.q - 2),
            ..c
        }
    }

    /// Writes `iP = (d + q - 2)H - aP`, returning `(d, a)`.
    pub fn sequence_decompose(&self, i: i64) -> (i64, i64) {
        let h = self.q + 1;
        let a = (-i).rem_euclid(h);
        let d = (i + a) / h - self.q + 2;
        (d, a)
    }

    /// Literal divisor `K + C = (q - 2 + d)H - aP - bQ` with `H = (q+1)P`.
    pub fn divisor_of(&self, c: CanonicalForm) -> TwoPointDivisor {
        TwoPointDivisor {
            m: (self.q - 2 + c.d) * (self.q + 1) - c.a,
            n: -c.b,
        }
    }
}

/// A divisor `mP + nQ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoPointDivisor {
    pub m: i64,
    pub n: i64,
}

impl TwoPointDivisor {
    pub fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }

    pub fn degree(&self) -> i64 {
        self.m + self.n
    }

    pub fn plus_p(self) -> Self {
        Self { m: self.m + 1, ..self }
    }

    pub fn plus_q(self) -> Self {
        Self { n: self.n + 1, ..self }
    }
}

/// Class data `dH - aP - bQ` with `0 <= a, b <= q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub d: i64,
    pub a: i64,
    pub b: i64,
}

impl CanonicalForm {
    pub fn new(d: i64, a: i64, b: i64) -> Self {
        Self { d, a, b }
    }

    pub fn degree(&self, q: i64) -> i64 {
        self.d * (q + 1) - self.a - self.b
    }

    /// The same class with the roles of P and Q exchanged.
    pub fn swapped(self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            ..self
        }
    }

    pub fn is_zero(&self) -> bool {
        self.d == 0 && self.a == 0 && self.b == 0
    }
}

/// An affine point, as the integer codes of its coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AffinePoint {
    pub x: u8,
    pub y: u8,
}

impl AffinePoint {
    pub fn is_origin(&self) -> bool {
        self.x == 0 && self.y == 0
    }
}

/// The curve over an actual field, with its affine points enumerated.
#[derive(Debug, Clone)]
pub struct Curve {
    herm: Hermitian,
    field: Arc<FieldSpec>,
    points: Vec<AffinePoint>,
}

impl Curve {
    pub fn new(q: u32) -> Result<Self> {
        let field = Arc::new(field_make(q)?);
        let points = rational_points(&field);
        Ok(Self {
            herm: Hermitian::new(q as i64)?,
            field,
            points,
        })
    }

    pub fn herm(&self) -> &Hermitian {
        &self.herm
    }

    pub fn q(&self) -> i64 {
        self.herm.q()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FieldSpec> {
        Arc::clone(&self.field)
    }

    /// All q^3 affine points sorted by `(x, y)` codes.
    pub fn points(&self) -> &[AffinePoint] {
        &self.points
    }

    pub fn origin_index(&self) -> usize {
        self.points.iter().position(AffinePoint::is_origin).unwrap()
    }
}

/// Every affine solution of `y^q + y = x^(q+1)`, ascending by `(x, y)`.
pub fn rational_points(field: &FieldSpec) -> Vec<AffinePoint> {
    let q = field.q() as i64;
    let mut pts = Vec::with_capacity(field.order() * field.q() as usize);
    for x in 0..field.order() as u8 {
        let rhs = field.pow(x, q + 1).unwrap();
        for y in 0..field.order() as u8 {
            if field.add(field.pow_q(y), y) == rhs {
                pts.push(AffinePoint { x, y });
            }
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::SUPPORTED_Q;
    use proptest::prelude::*;

    #[test]
    fn point_counts() {
        for q in SUPPORTED_Q {
            let c = Curve::new(q).unwrap();
            assert_eq!(c.points().len(), (q as usize).pow(3));
            assert!(c.points().windows(2).all(|w| w[0] < w[1]));
            let f = c.field();
            for x in 0..f.order() as u8 {
                assert_eq!(c.points().iter().filter(|p| p.x == x).count(), q as usize);
            }
        }
        let c = Curve::new(4).unwrap();
        assert_eq!(c.points()[0], AffinePoint { x: 0, y: 0 });
        assert_eq!(Curve::new(2).unwrap().points().len(), 8);
        assert_eq!(Curve::new(8).unwrap().points().len(), 512);
    }

    #[test]
    fn only_origin_has_y_zero() {
        for q in SUPPORTED_Q {
            let c = Curve::new(q).unwrap();
            let zeros: Vec<_> = c.points().iter().filter(|p| p.y == 0).collect();
            assert_eq!(zeros, vec![&AffinePoint { x: 0, y: 0 }]);
        }
    }

    #[test]
    fn curve_constants() {
        let h = Hermitian::new(4).unwrap();
        assert_eq!(h.genus(), 6);
        assert_eq!(h.n_points(), 65);
        assert_eq!(h.aut_order(), 64 * 65 * 15);
        assert_eq!(h.duality_shift(), 74);
        assert!(Hermitian::new(1).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let h = Hermitian::new(4).unwrap();
        assert_eq!(h.canonicalize(TwoPointDivisor::new(11, 0)), CanonicalForm::new(3, 4, 0));
        assert_eq!(
            h.relative_to_canonical(TwoPointDivisor::new(11, 0)),
            CanonicalForm::new(1, 4, 0)
        );
        assert_eq!(h.canonicalize(TwoPointDivisor::new(0, 0)), CanonicalForm::new(0, 0, 0));
        // a = -60 mod 5 = 0, b = 2 mod 5 = 2, 5d - 2 = 58
        assert_eq!(
            h.canonicalize(TwoPointDivisor::new(60, -2)),
            CanonicalForm::new(12, 0, 2)
        );
    }

    #[test]
    fn sequence_decompose_examples() {
        let h = Hermitian::new(4).unwrap();
        assert_eq!(h.sequence_decompose(11), (1, 4));
        assert_eq!(h.sequence_decompose(0), (-2, 0));
        assert_eq!(h.sequence_decompose(-1), (-2, 1));
        let h8 = Hermitian::new(8).unwrap();
        assert_eq!(h8.sequence_decompose(73), (3, 8));
    }

    proptest! {
        #[test]
        fn canonicalize_is_a_class_function(q in 2i64..17, m in -200i64..200, n in -200i64..200, k in -5i64..5) {
            let h = Hermitian::new(q).unwrap();
            let g = TwoPointDivisor::new(m, n);
            let c = h.canonicalize(g);
            prop_assert!(0 <= c.a && c.a <= q && 0 <= c.b && c.b <= q);
            prop_assert_eq!(c.degree(q), g.degree());
            let shifted = TwoPointDivisor::new(m + k * (q + 1), n - k * (q + 1));
            prop_assert_eq!(h.canonicalize(shifted), c);
        }

        #[test]
        fn decompose_agrees_with_canonicalize(q in 2i64..17, i in -100i64..600) {
            let h = Hermitian::new(q).unwrap();
            let (d, a) = h.sequence_decompose(i);
            let c = h.canonicalize(TwoPointDivisor::new(i, 0));
            prop_assert_eq!((c.d, c.a, c.b), (d + q - 2, a, 0));
            prop_assert_eq!(h.relative_to_canonical(TwoPointDivisor::new(i, 0)), CanonicalForm::new(d, a, 0));
        }
    }
}
