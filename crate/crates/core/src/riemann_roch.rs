//! Monomial bases of Riemann-Roch spaces of two-point divisors.
//!
//! In the P-chart a monomial is `x^i y^j` with `0 <= i <= q`. The exponent `j`
//! may be negative: `y` only vanishes at Q, so `y^-1` is regular away from Q and
//! the spaces `L(mP + nQ)` with `n > 0` are spanned by Laurent monomials. The
//! Q-chart uses `u = x/y`, `v = 1/y` with the roles of P and Q exchanged.

use serde::{Deserialize, Serialize};

use crate::curve::{AffinePoint, CanonicalForm, Hermitian, TwoPointDivisor};
use crate::error::{HermitError, Result};
use crate::field::FieldSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    /// Coordinates `x, y`, pole point P.
    P,
    /// Coordinates `u = x/y, v = 1/y`, pole point Q.
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub i: i64,
    pub j: i64,
    pub chart: Chart,
}

impl Monomial {
    pub fn p(i: i64, j: i64) -> Self {
        Self { i, j, chart: Chart::P }
    }

    pub fn q(i: i64, j: i64) -> Self {
        Self { i, j, chart: Chart::Q }
    }

    /// Pole order at the chart's own point at infinity (P for the P-chart).
    pub fn pole_order(&self, q: i64) -> i64 {
        q * self.i + (q + 1) * self.j
    }

    /// Vanishing order at the chart's origin (Q for the P-chart).
    pub fn vanishing_order(&self, q: i64) -> i64 {
        self.i + (q + 1) * self.j
    }

    /// The same function written in the other chart: `u^i v^j = x^i y^(-i-j)`
    /// and `x^i y^j = u^i v^(-i-j)`.
    pub fn to_chart(self, chart: Chart) -> Self {
        if chart == self.chart {
            self
        } else {
            Self {
                i: self.i,
                j: -self.i - self.j,
                chart,
            }
        }
    }

    /// Whether evaluation needs `y != 0`.
    pub fn needs_nonzero_y(&self) -> bool {
        match self.chart {
            Chart::P => self.j < 0,
            Chart::Q => self.i != 0 || self.j != 0,
        }
    }

    pub fn eval(&self, field: &FieldSpec, pt: AffinePoint) -> Result<u8> {
        if pt.y == 0 && self.needs_nonzero_y() {
            return Err(HermitError::PoleAtOrigin(self.to_string()));
        }
        let (s, t) = match self.chart {
            Chart::P => (pt.x, pt.y),
            Chart::Q if pt.y == 0 => return Ok(1),
            Chart::Q => {
                let yinv = field.inv(pt.y).unwrap();
                (field.mul(pt.x, yinv), yinv)
            }
        };
        let si = field.pow(s, self.i).ok_or(HermitError::DivisionByZero)?;
        let tj = field.pow(t, self.j).ok_or(HermitError::DivisionByZero)?;
        Ok(field.mul(si, tj))
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (s, t) = match self.chart {
            Chart::P => ("x", "y"),
            Chart::Q => ("u", "v"),
        };
        let part = |f: &mut std::fmt::Formatter<'_>, var: &str, e: i64| match e {
            0 => Ok(()),
            1 => write!(f, "{var}"),
            _ => write!(f, "{var}^{e}"),
        };
        if self.i == 0 && self.j == 0 {
            return write!(f, "1");
        }
        part(f, s, self.i)?;
        part(f, t, self.j)
    }
}

/// Valuations of a P-chart monomial: `(pole order at P, vanishing order at Q)`.
/// For a Q-chart monomial the pair refers to Q and P respectively.
pub fn valuations(mu: &Monomial, herm: &Hermitian) -> (i64, i64) {
    (mu.pole_order(herm.q()), mu.vanishing_order(herm.q()))
}

/// The unique chart monomial with `0 <= i <= q` and the given pole order, if
/// that pole order is realised with `j` in `j_range`.
pub fn monomial_with_pole(pole: i64, herm: &Hermitian, chart: Chart) -> Monomial {
    let q = herm.q();
    let i = (-pole).rem_euclid(q + 1);
    let j = (pole - q * i).div_euclid(q + 1);
    Monomial { i, j, chart }
}

/// Basis of `L(mP)`: `x^i y^j` with `0 <= i <= q` and `qi + (q+1)j <= m`, by pole order.
pub fn basis_one_point(m: i64, herm: &Hermitian) -> Vec<Monomial> {
    basis_divisor(TwoPointDivisor::new(m, 0), herm, Chart::P)
}

/// Basis of `L(d(q+1)P - aP - bQ)` from the two-point basis lemma:
/// `0 <= i <= q`, `j >= 0`, `i + j <= d`, `i >= a` when `i + j = d`, `i >= b` when `j = 0`.
/// In the Q-chart the divisor is `d(q+1)Q - aQ - bP`.
pub fn basis_two_point(d: i64, a: i64, b: i64, herm: &Hermitian, chart: Chart) -> Result<Vec<Monomial>> {
    let q = herm.q();
    if !(0..=q).contains(&a) || !(0..=q).contains(&b) {
        return Err(HermitError::OutOfRange(format!(
            "a = {a}, b = {b} must lie in [0, {q}]"
        )));
    }
    let mut out = Vec::new();
    for i in 0..=q.min(d) {
        for j in 0..=(d - i) {
            if i + j == d && i < a {
                continue;
            }
            if j == 0 && i < b {
                continue;
            }
            out.push(Monomial { i, j, chart });
        }
    }
    out.sort_by_key(|mu| mu.pole_order(q));
    Ok(out)
}

/// Basis of `L(mP + nQ)` for arbitrary integers (in the Q-chart, of `L(mQ + nP)`).
///
/// Reduces to the two-point lemma through `mP + nQ = (m + k(q+1))P - bQ + k (y)`
/// with `b = -n mod (q+1)`, so the result is `y^-k` times the lemma's basis.
pub fn basis_divisor(g: TwoPointDivisor, herm: &Hermitian, chart: Chart) -> Vec<Monomial> {
    let q = herm.q();
    let h = q + 1;
    let b = (-g.n).rem_euclid(h);
    let k = (g.n + b) / h;
    let shifted = g.m + k * h;
    let a = (-shifted).rem_euclid(h);
    let d = (shifted + a) / h;
    let mut basis = basis_two_point(d, a, b, herm, chart).expect("a, b reduced into range");
    for mu in &mut basis {
        mu.j -= k;
    }
    basis
}

/// Basis of `L(K + C)` as a literal divisor with `K = (q-2)(q+1)P`.
pub fn basis_canonical(c: CanonicalForm, herm: &Hermitian) -> Vec<Monomial> {
    basis_divisor(herm.divisor_of(c), herm, Chart::P)
}

/// Riemann-Roch consistency of a basis size for a divisor of the given degree.
pub fn rr_dimension_check(degree: i64, basis_size: i64, herm: &Hermitian) -> bool {
    let g = herm.genus();
    if degree < 0 {
        return basis_size == 0;
    }
    let rr = degree - g + 1;
    if degree >= 2 * g - 1 && basis_size != rr {
        return false;
    }
    basis_size >= 0 && basis_size <= rr.max(0) + g && basis_size <= degree + 1
}

/// Riemann-Roch dimension, exact once the degree reaches 2g - 1.
pub fn rr_dimension(degree: i64, herm: &Hermitian) -> Option<i64> {
    if degree < 0 {
        Some(0)
    } else if degree >= 2 * herm.genus() - 1 {
        Some(degree - herm.genus() + 1)
    } else {
        None
    }
}
