//! Ground truth by enumeration: weight distributions, minimum weights, coset
//! minimum weights, the MacWilliams transform, and Feng-Rao divisor counting.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::code::LinearCode;
use crate::curve::Hermitian;
use crate::error::{HermitError, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::riemann_roch::Monomial;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// `HERMIT_BUDGET` if set and valid, otherwise [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u128 {
    std::env::var("HERMIT_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// `A_0, ..., A_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    pub counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn from_u64(counts: &[u64]) -> Self {
        Self {
            counts: counts.iter().map(|&c| BigUint::from(c)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Least positive weight that occurs; `None` for the zero code.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts.iter().skip(1).position(|c| !c.is_zero()).map(|w| w + 1)
    }
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.counts.iter().map(BigUint::to_string).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightDistribution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let counts = v
            .iter()
            .map(|s| s.parse::<BigUint>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self { counts })
    }
}

/// Weight distribution of the dual of a code with distribution `dist` over a
/// field with `field_size` elements.
pub fn macwilliams_transform(dist: &WeightDistribution, field_size: u64) -> Result<WeightDistribution> {
    let n = dist.len();
    let size = BigInt::from(dist.total());
    if size.is_zero() {
        return Err(HermitError::Shape("empty weight distribution".into()));
    }
    let binom = binomials(n);
    let qm1 = BigInt::from(field_size - 1);
    let pow: Vec<BigInt> = (0..=n).map(|e| num_traits::pow(qm1.clone(), e)).collect();
    let counts = (0..=n)
        .into_par_iter()
        .map(|j| {
            let mut acc = BigInt::zero();
            for (i, a) in dist.counts.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                // Krawtchouk K_j(i)
                let mut k = BigInt::zero();
                for s in 0..=j.min(i) {
                    if j - s > n - i {
                        continue;
                    }
                    let term = &pow[j - s] * &binom[i][s] * &binom[n - i][j - s];
                    if s % 2 == 0 {
                        k += term;
                    } else {
                        k -= term;
                    }
                }
                acc += BigInt::from(a.clone()) * k;
            }
            let (quot, rem) = (&acc / &size, &acc % &size);
            if !rem.is_zero() || quot.is_negative() {
                return Err(HermitError::Shape(format!(
                    "not a weight distribution of a linear code (j = {j})"
                )));
            }
            Ok(quot.to_biguint().unwrap())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightDistribution { counts })
}

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for s in 1..i {
            row[s] = &rows[i - 1][s - 1] + &rows[i - 1][s];
        }
        rows.push(row);
    }
    rows
}

fn check_budget(field: &FieldSpec, dim: usize, budget: u128) -> Result<u128> {
    let needed = (field.order() as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if needed > budget {
        Err(HermitError::BudgetExceeded { needed, budget })
    } else {
        Ok(needed)
    }
}

/// Histogram of weights over `outer + span(inner)` for every combination of
/// the outer rows (skipping the all-zero one if asked).
fn weight_histogram(field: &FieldSpec, n: usize, outer: &Matrix, inner: &Matrix, skip_zero_outer: bool) -> Vec<u64> {
    let order = field.order();
    let t = outer.rows();
    let combos = order.pow(t as u32);
    let start = usize::from(skip_zero_outer && t > 0);
    let engine = InnerEngine::new(field, inner, n);
    (start..combos)
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut hist, c| {
                let mut v = vec![0u8; n];
                let mut code = c;
                for r in 0..t {
                    let coef = (code % order) as u8;
                    code /= order;
                    if coef != 0 {
                        for (x, &g) in v.iter_mut().zip(outer.row(r)) {
                            *x = field.add(*x, field.mul(coef, g));
                        }
                    }
                }
                engine.run(field, v, &mut hist);
                hist
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Gray-code walk over the GF(p)-span of the inner rows.
enum InnerEngine {
    /// Characteristic 2: each generator as m bitplanes.
    Bits {
        planes: Vec<Vec<u64>>,
        m: usize,
        words: usize,
    },
    /// Odd characteristic: generators as symbol vectors.
    Symbols { gens: Vec<Vec<u8>>, p: usize },
}

impl InnerEngine {
    fn new(field: &FieldSpec, inner: &Matrix, n: usize) -> Self {
        let m = field.m() as usize;
        let p = field.p() as usize;
        // GF(p)-basis of the span: t^b * row for each power of the generator of the prime field extension
        let mut gens = Vec::new();
        for row in inner.iter_rows() {
            for b in 0..m {
                let scalar = p.pow(b as u32) as u8;
                gens.push(row.iter().map(|&x| field.mul(scalar, x)).collect::<Vec<u8>>());
            }
        }
        if field.is_char2() {
            let words = n.div_ceil(64);
            let planes = gens.iter().map(|g| to_planes(g, m, words)).collect();
            InnerEngine::Bits { planes, m, words }
        } else {
            InnerEngine::Symbols { gens, p }
        }
    }

    fn run(&self, field: &FieldSpec, start: Vec<u8>, hist: &mut [u64]) {
        match self {
            InnerEngine::Bits { planes, m, words } => {
                let mut cur = to_planes(&start, *m, *words);
                let weight = |cur: &[u64]| -> usize {
                    (0..*words)
                        .map(|w| (0..*m).fold(0u64, |acc, b| acc | cur[b * words + w]).count_ones() as usize)
                        .sum()
                };
                hist[weight(&cur)] += 1;
                let total: u64 = 1u64 << planes.len();
                for c in 1..total {
                    let g = &planes[c.trailing_zeros() as usize];
                    for (x, y) in cur.iter_mut().zip(g) {
                        *x ^= y;
                    }
                    hist[weight(&cur)] += 1;
                }
            }
            InnerEngine::Symbols { gens, p } => {
                let mut cur = start;
                let mut wt = cur.iter().filter(|&&x| x != 0).count();
                hist[wt] += 1;
                let total = p.pow(gens.len() as u32);
                for c in 1..total {
                    let mut j = 0;
                    let mut rest = c;
                    while rest % p == 0 {
                        rest /= p;
                        j += 1;
                    }
                    let up = (rest / p) % 2 == 0;
                    for (x, &g) in cur.iter_mut().zip(&gens[j]) {
                        if g == 0 {
                            continue;
                        }
                        let was = *x != 0;
                        *x = if up { field.add(*x, g) } else { field.sub(*x, g) };
                        match (was, *x != 0) {
                            (true, false) => wt -= 1,
                            (false, true) => wt += 1,
                            _ => {}
                        }
                    }
                    hist[wt] += 1;
                }
            }
        }
    }
}

fn to_planes(v: &[u8], m: usize, words: usize) -> Vec<u64> {
    let mut planes = vec![0u64; m * words];
    for (c, &x) in v.iter().enumerate() {
        for b in 0..m {
            if (x >> b) & 1 == 1 {
                planes[b * words + c / 64] |= 1 << (c % 64);
            }
        }
    }
    planes
}

/// Split a basis into a few outer rows (parallel chunks) and the rest.
fn split_for_parallelism(field: &FieldSpec, basis: &Matrix) -> (Matrix, Matrix) {
    let k = basis.rows();
    let mut t = 0;
    while t < k && field.order().pow(t as u32) < 256 {
        t += 1;
    }
    let rows = basis.to_rows();
    let (outer, inner) = rows.split_at(t);
    (
        Matrix::from_rows(outer.to_vec(), basis.cols()).unwrap(),
        Matrix::from_rows(inner.to_vec(), basis.cols()).unwrap(),
    )
}

/// Distribution of `code` by enumerating all `Q^k` codewords.
pub fn weight_distribution_exhaustive(code: &LinearCode, budget: u128) -> Result<WeightDistribution> {
    let basis = code.generator_basis();
    check_budget(&code.field, basis.rows(), budget)?;
    let (outer, inner) = split_for_parallelism(&code.field, &basis);
    Ok(WeightDistribution::from_u64(&weight_histogram(
        &code.field,
        code.n,
        &outer,
        &inner,
        false,
    )))
}

/// Exact minimum distance by enumeration; `None` for the zero code.
pub fn min_weight_exhaustive(code: &LinearCode, budget: u128) -> Result<Option<usize>> {
    Ok(weight_distribution_exhaustive(code, budget)?.min_distance())
}

/// Distribution of `code` from an enumeration of its dual, which has `Q^(n-k)` words.
pub fn weight_distribution_via_dual(code: &LinearCode, budget: u128) -> Result<WeightDistribution> {
    let chk = code.check_basis();
    check_budget(&code.field, chk.rows(), budget)?;
    let (outer, inner) = split_for_parallelism(&code.field, &chk);
    let dual = WeightDistribution::from_u64(&weight_histogram(&code.field, code.n, &outer, &inner, false));
    macwilliams_transform(&dual, code.field.order() as u64)
}

/// Minimum weight of the words of `sup` outside `sub`; 0 when there are none.
pub fn coset_min_weight(sub: &LinearCode, sup: &LinearCode, budget: u128) -> Result<usize> {
    let f = &sup.field;
    let sub_b = sub.generator_basis();
    let sup_b = sup.generator_basis();
    if sub.n != sup.n || !sup_b.contains_row_space(&sub_b, f) {
        return Err(HermitError::NotContained);
    }
    let mut extra = Vec::new();
    let mut acc = sub_b.clone();
    for row in sup_b.iter_rows() {
        let r = Matrix::from_rows(vec![row.to_vec()], sup.n)?;
        let next = acc.vstack(&r)?;
        if next.rank(f) > acc.rank(f) {
            extra.push(row.to_vec());
            acc = next;
        }
    }
    if extra.is_empty() {
        return Ok(0);
    }
    check_budget(f, sup_b.rows(), budget)?;
    let outer = Matrix::from_rows(extra, sup.n)?;
    let hist = weight_histogram(f, sup.n, &outer, &sub_b, true);
    Ok(hist.iter().position(|&c| c > 0).unwrap())
}

/// Feng-Rao count for the check monomial `mu`: the diagram monomials (exponent of
/// x or u at most q, not excluded) that divide `mu` or its other representative
/// of the same pole order.
pub fn fengrao_divisibility_count(mu: &Monomial, exclude: impl Fn(&Monomial) -> bool, herm: &Hermitian) -> i64 {
    let q = herm.q();
    let alt = if mu.i < q && mu.j >= q {
        Some(Monomial {
            i: mu.i + q + 1,
            j: mu.j - q,
            ..*mu
        })
    } else if mu.i > q {
        Some(Monomial {
            i: mu.i - q - 1,
            j: mu.j + q,
            ..*mu
        })
    } else {
        None
    };
    let targets: Vec<Monomial> = std::iter::once(*mu).chain(alt).collect();
    let max_j = targets.iter().map(|t| t.j).max().unwrap_or(0);
    let mut count = 0;
    for i in 0..=q {
        for j in 0..=max_j {
            let nu = Monomial { i, j, chart: mu.chart };
            if exclude(&nu) {
                continue;
            }
            if targets.iter().any(|t| i <= t.i && j <= t.j) {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::SequenceKind;
    use crate::code::{classical_code, residue_dual};
    use crate::curve::Curve;
    use crate::riemann_roch::Chart;
    use std::sync::Arc;

    #[test]
    fn repetition_code() {
        let c2 = Curve::new(2).unwrap();
        let rep = classical_code(&c2, SequenceKind::OnePoint, 0).unwrap();
        assert_eq!(min_weight_exhaustive(&rep, DEFAULT_BUDGET).unwrap(), Some(8));
        let dual = residue_dual(&rep).unwrap();
        let via = weight_distribution_via_dual(&rep, DEFAULT_BUDGET).unwrap();
        let mut want = vec![BigUint::zero(); 9];
        want[0] = BigUint::one();
        want[8] = BigUint::from(3u32);
        assert_eq!(via.counts, want);
        assert_eq!(
            weight_distribution_exhaustive(&dual, DEFAULT_BUDGET).unwrap().total(),
            BigUint::from(4u32.pow(7))
        );
    }

    #[test]
    fn zero_code_has_no_distance() {
        let c2 = Curve::new(2).unwrap();
        let zero = LinearCode::from_generator(
            c2.field_arc(),
            Matrix::zeros(0, 8),
            crate::code::Provenance::new("zero", 2),
        );
        assert_eq!(min_weight_exhaustive(&zero, DEFAULT_BUDGET).unwrap(), None);
    }

    #[test]
    fn transform_is_an_involution() {
        let c3 = Curve::new(3).unwrap();
        let code = classical_code(&c3, SequenceKind::OnePoint, 6).unwrap();
        let a = weight_distribution_exhaustive(&code, DEFAULT_BUDGET).unwrap();
        let b = macwilliams_transform(&a, 9).unwrap();
        assert_eq!(macwilliams_transform(&b, 9).unwrap(), a);
        assert_eq!(
            weight_distribution_via_dual(&residue_dual(&code).unwrap(), DEFAULT_BUDGET).unwrap(),
            b
        );
    }

    #[test]
    fn both_oracles_agree() {
        for (q, a) in [(2u32, 4i64), (2, 9), (3, 20), (3, 25)] {
            let curve = Curve::new(q).unwrap();
            for kind in [SequenceKind::OnePoint, SequenceKind::TwoPoint] {
                let code = classical_code(&curve, kind, a).unwrap();
                let direct = weight_distribution_exhaustive(&code, 1 << 26);
                let dual = weight_distribution_via_dual(&code, 1 << 26);
                if let (Ok(x), Ok(y)) = (direct, dual) {
                    assert_eq!(x, y, "q={q} a={a} {kind:?}");
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let c4 = Curve::new(4).unwrap();
        let code = classical_code(&c4, SequenceKind::OnePoint, 59).unwrap();
        match min_weight_exhaustive(&code, 1000) {
            Err(HermitError::BudgetExceeded { needed, budget }) => {
                assert_eq!(budget, 1000);
                assert_eq!(needed, u128::MAX);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coset_weights() {
        let c2 = Curve::new(2).unwrap();
        let a = classical_code(&c2, SequenceKind::OnePoint, 3).unwrap();
        assert_eq!(coset_min_weight(&a, &a, DEFAULT_BUDGET).unwrap(), 0);
        let b = classical_code(&c2, SequenceKind::OnePoint, 4).unwrap();
        let w = coset_min_weight(&a, &b, DEFAULT_BUDGET).unwrap();
        assert!(w > 0);
        assert!(matches!(
            coset_min_weight(&b, &a, DEFAULT_BUDGET),
            Err(HermitError::NotContained)
        ));
        let other = LinearCode::from_generator(Arc::clone(&a.field), Matrix::identity(7), a.provenance.clone());
        assert!(coset_min_weight(&other, &b, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn divisibility_examples() {
        let h8 = Hermitian::new(8).unwrap();
        let none = |_: &Monomial| false;
        assert_eq!(fengrao_divisibility_count(&Monomial::p(3, 4), none, &h8), 20);
        assert_eq!(fengrao_divisibility_count(&Monomial::p(7, 2), none, &h8), 24);
        let two_point = |nu: &Monomial| nu.j == 0 && nu.i < 8;
        assert_eq!(fengrao_divisibility_count(&Monomial::p(1, 8), two_point, &h8), 17);
        assert_eq!(fengrao_divisibility_count(&Monomial::p(10, 0), two_point, &h8), 17);
        let q_chart = |nu: &Monomial| nu.j == 0 && nu.i < 2;
        assert_eq!(
            fengrao_divisibility_count(
                &Monomial {
                    i: 7,
                    j: 2,
                    chart: Chart::Q
                },
                q_chart,
                &h8
            ),
            22
        );
    }

    #[test]
    fn weight_distribution_json_round_trip() {
        let d = WeightDistribution::from_u64(&[1, 0, 3]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"["1","0","3"]"#);
        assert_eq!(serde_json::from_str::<WeightDistribution>(&s).unwrap(), d);
    }
}
