//! Coset bounds, redundancies, classical two-point distances and the sequence search.
//!
//! All formulas take a [`Hermitian`] and therefore accept any integer q >= 2.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};

use crate::curve::{CanonicalForm, Hermitian, TwoPointDivisor};
use crate::error::{HermitError, Result};
use crate::riemann_roch::{basis_divisor, Chart};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    P,
    Q,
}

/// `OnePoint` is `G_i = iP` on `R - P`; `TwoPoint` is `G'_i = iP + Q` on `R - P - Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    OnePoint,
    TwoPoint,
}

impl SequenceKind {
    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::OnePoint => "onepoint",
            SequenceKind::TwoPoint => "twopoint",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMethod {
    Simple,
    Improved,
}

impl BoundMethod {
    pub fn name(self) -> &'static str {
        match self {
            BoundMethod::Simple => "simple",
            BoundMethod::Improved => "improved",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RedundancyMode {
    Classical,
    Improved,
}

/// Lower bound for the coset `C_Omega(D, K + C) \ C_Omega(D, K + C + P)` (or `+ Q`).
pub fn base_coset_bound(c: CanonicalForm, step: Step, q: i64) -> i64 {
    let c = match step {
        Step::P => c,
        Step::Q => c.swapped(),
    };
    let (d, a, b) = (c.d, c.a, c.b);
    if a - d < 0 {
        c.degree(q)
    } else if a - d < q {
        a * (q - 1 - a + d) + (a - b).max(0)
    } else {
        0
    }
}

/// Label of the edge leaving the literal divisor `G = mP + nQ`.
pub fn edge_label(g: TwoPointDivisor, step: Step, herm: &Hermitian) -> i64 {
    base_coset_bound(herm.relative_to_canonical(g), step, herm.q())
}

pub fn sequence_bound_simple(i: i64, kind: SequenceKind, herm: &Hermitian) -> i64 {
    let q = herm.q();
    let (d, a) = herm.sequence_decompose(i);
    match kind {
        SequenceKind::OnePoint => {
            if a - d < 0 {
                (q + 1) * d - a
            } else if a - d < q {
                a * (q - a + d)
            } else {
                0
            }
        }
        SequenceKind::TwoPoint => {
            if a - d - 1 < 0 {
                (q + 1) * d - a + 1
            } else if a - d - 1 < q {
                a * (q - a + d)
            } else {
                0
            }
        }
    }
}

/// Path-improved bound for the `G'_i` sequence.
pub fn sequence_bound_improved(i: i64, herm: &Hermitian) -> i64 {
    let q = herm.q();
    let (d, a) = herm.sequence_decompose(i);
    if d > q - 1 {
        (q + 1) * d - a + 1
    } else if a <= d {
        q * d + q - a
    } else if a - d - 1 < q {
        a * (q - a + d)
    } else {
        0
    }
}

/// The one-point sequence has no path improvement, so `Improved` falls back to `Simple` there.
pub fn sequence_bound(i: i64, kind: SequenceKind, method: BoundMethod, herm: &Hermitian) -> i64 {
    match (kind, method) {
        (SequenceKind::TwoPoint, BoundMethod::Improved) => sequence_bound_improved(i, herm),
        _ => sequence_bound_simple(i, kind, herm),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub i: i64,
    pub d: i64,
    pub a: i64,
    pub bound: i64,
}

/// Bounds for the steps `-1..=i_max` of one sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetBoundSequence {
    pub q: i64,
    pub kind: SequenceKind,
    pub method: BoundMethod,
    pub i_max: i64,
    entries: Vec<i64>,
}

impl CosetBoundSequence {
    pub fn new(herm: &Hermitian, kind: SequenceKind, method: BoundMethod, i_max: i64) -> Self {
        let entries = (-1..=i_max).map(|i| sequence_bound(i, kind, method, herm)).collect();
        Self {
            q: herm.q(),
            kind,
            method,
            i_max,
            entries,
        }
    }

    pub fn get(&self, i: i64) -> Option<i64> {
        usize::try_from(i + 1).ok().and_then(|k| self.entries.get(k).copied())
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.entries.iter().enumerate().map(|(k, &b)| (k as i64 - 1, b))
    }

    pub fn rows(&self) -> Vec<BoundRow> {
        let herm = Hermitian::new(self.q).unwrap();
        self.iter()
            .map(|(i, bound)| {
                let (d, a) = herm.sequence_decompose(i);
                BoundRow { i, d, a, bound }
            })
            .collect()
    }
}

struct OrderedBounds<'a>(&'a CosetBoundSequence);

impl Serialize for OrderedBounds<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.entries.len()))?;
        for (i, b) in self.0.iter() {
            map.serialize_entry(&i.to_string(), &b)?;
        }
        map.end()
    }
}

impl Serialize for CosetBoundSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CosetBoundSequence", 5)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("kind", self.kind.name())?;
        st.serialize_field("method", self.method.name())?;
        st.serialize_field("bounds", &OrderedBounds(self))?;
        st.serialize_field("rows", &self.rows())?;
        st.end()
    }
}

/// Default sweep horizon for designed distances up to `delta_max`.
pub fn default_horizon(delta_max: i64, herm: &Hermitian) -> i64 {
    delta_max + 4 * herm.genus() + 2
}

/// Redundancy of the code with designed distance `delta` along a bound sequence.
///
/// `Improved` counts the steps with `0 < bound < delta`. `Classical` stops at the
/// last such step and counts every nonempty step up to it.
pub fn redundancy(delta: i64, bounds: &CosetBoundSequence, mode: RedundancyMode) -> Result<i64> {
    let herm = Hermitian::new(bounds.q)?;
    if delta < 2 {
        return Err(HermitError::OutOfRange(format!("delta = {delta} must be at least 2")));
    }
    let need = default_horizon(delta, &herm);
    if bounds.i_max < need {
        return Err(HermitError::HorizonTooSmall(format!(
            "i_max = {} but delta = {delta} needs {need}",
            bounds.i_max
        )));
    }
    let small = |b: i64| 0 < b && b < delta;
    Ok(match mode {
        RedundancyMode::Improved => bounds.iter().filter(|&(_, b)| small(b)).count() as i64,
        RedundancyMode::Classical => {
            let Some(last) = bounds.iter().filter(|&(_, b)| small(b)).map(|(i, _)| i).last() else {
                return Ok(0);
            };
            bounds.iter().filter(|&(i, b)| i <= last && b > 0).count() as i64
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedundancyRow {
    pub delta: i64,
    pub onepoint_classical: i64,
    pub onepoint_improved: i64,
    pub twopoint_classical: i64,
    pub twopoint_improved: i64,
    /// Gain of the two-point improved code over the best of the other three columns.
    pub diff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedundancyTable {
    pub q: i64,
    pub rows: Vec<RedundancyRow>,
}

impl RedundancyTable {
    pub fn row(&self, delta: i64) -> Option<&RedundancyRow> {
        self.rows.iter().find(|r| r.delta == delta)
    }
}

/// The four redundancy columns. Classical two-point codes use the cutoff rule on
/// the improved `G'_i` bounds, whose order bound is the true distance of `C'(m)`.
pub fn redundancy_row(delta: i64, herm: &Hermitian) -> Result<RedundancyRow> {
    let i_max = default_horizon(delta, herm);
    let one = CosetBoundSequence::new(herm, SequenceKind::OnePoint, BoundMethod::Simple, i_max);
    let two = CosetBoundSequence::new(herm, SequenceKind::TwoPoint, BoundMethod::Improved, i_max);
    let oc = redundancy(delta, &one, RedundancyMode::Classical)?;
    let oi = redundancy(delta, &one, RedundancyMode::Improved)?;
    let tc = redundancy(delta, &two, RedundancyMode::Classical)?;
    let ti = redundancy(delta, &two, RedundancyMode::Improved)?;
    Ok(RedundancyRow {
        delta,
        onepoint_classical: oc,
        onepoint_improved: oi,
        twopoint_classical: tc,
        twopoint_improved: ti,
        diff: oc.min(oi).min(tc) - ti,
    })
}

pub fn redundancy_table(herm: &Hermitian, deltas: impl IntoIterator<Item = i64>) -> Result<RedundancyTable> {
    let rows = deltas
        .into_iter()
        .map(|delta| redundancy_row(delta, herm))
        .collect::<Result<_>>()?;
    Ok(RedundancyTable { q: herm.q(), rows })
}

/// Difference of the one-point and two-point improved redundancies, in closed form.
pub fn redundancy_diff_closed_form(delta: i64, herm: &Hermitian) -> Result<i64> {
    let q = herm.q();
    let d = (delta - 1).div_euclid(q);
    let b = delta - d * q;
    if !(0 < d && d < q) {
        return Err(HermitError::OutOfRange(format!(
            "delta = {delta} has no decomposition dq + b with 0 < d < q, 0 < b <= q"
        )));
    }
    Ok(if b <= d && d <= q - b {
        b - 1
    } else if b <= d && q - b < d {
        q - d - 1
    } else if q - b < d && d < b {
        q - b
    } else {
        d
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrictImprovementStats {
    pub q: i64,
    /// `[q, (q-1)(q - 2 sqrt(q-1))]`, where strict gains over classical two-point codes are predicted.
    pub predicted_interval: (f64, f64),
    /// Designed distances in `(q, q^2]` where the two-point improved code beats both
    /// the two-point classical and the one-point improved code.
    pub improving: Vec<i64>,
    pub ratio: f64,
    pub lower_bound: f64,
}

pub fn strict_improvement_stats(herm: &Hermitian) -> Result<StrictImprovementStats> {
    let q = herm.q();
    if q < 4 {
        return Err(HermitError::OutOfRange(format!("q = {q} must be at least 4")));
    }
    let improving: Vec<i64> = (q + 1..=q * q)
        .into_par_iter()
        .map(|delta| redundancy_row(delta, herm).map(|r| (delta, r)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, r)| r.twopoint_improved < r.twopoint_classical && r.twopoint_improved < r.onepoint_improved)
        .map(|(delta, _)| delta)
        .collect();
    let qf = q as f64;
    let s = (qf - 1.0).sqrt();
    Ok(StrictImprovementStats {
        q,
        predicted_interval: (qf, (qf - 1.0) * (qf - 2.0 * s)),
        ratio: improving.len() as f64 / (q * q - q) as f64,
        lower_bound: 1.0 - (4.0 * s + 4.0) / qf,
        improving,
    })
}

/// Which of P and Q lie in the support of the evaluation divisor D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SupportFlags {
    pub p_in_support: bool,
    pub q_in_support: bool,
}

impl SupportFlags {
    /// D = R - P - Q.
    pub const TWO_POINT: Self = Self {
        p_in_support: false,
        q_in_support: false,
    };
    /// D = R - P.
    pub const ONE_POINT: Self = Self {
        p_in_support: false,
        q_in_support: true,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DistanceCase {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2a")]
    TwoA,
    #[serde(rename = "2b")]
    TwoB,
    #[serde(rename = "3a")]
    ThreeA,
    #[serde(rename = "3b")]
    ThreeB,
    #[serde(rename = "4")]
    Four,
}

/// Exact minimum distance of `C_Omega(D, K + C)` for `C = dH - aP - bQ`.
pub fn actual_distance_twopoint(
    c: CanonicalForm,
    flags: SupportFlags,
    herm: &Hermitian,
) -> Result<(i64, DistanceCase)> {
    let q = herm.q();
    let (d, a, b) = (c.d, c.a, c.b);
    let deg = c.degree(q);
    if c.is_zero() || deg < 0 || d < 0 || !(0..=q).contains(&a) || !(0..=q).contains(&b) {
        return Err(HermitError::OutOfRange(format!(
            "need C != 0, deg C >= 0, d >= 0 and 0 <= a, b <= q; got d = {d}, a = {a}, b = {b}"
        )));
    }
    let neither = !flags.p_in_support && !flags.q_in_support;
    let result = if a <= d && b <= d {
        (deg, DistanceCase::One)
    } else if b <= d && d <= a && !flags.p_in_support {
        (deg + a - d, DistanceCase::TwoA)
    } else if a <= d && d <= b && !flags.q_in_support {
        (deg + b - d, DistanceCase::TwoB)
    } else if d <= a && a <= b && a < q && neither {
        (deg + a - d + b - d, DistanceCase::ThreeA)
    } else if d <= b && b <= a && b < q && neither {
        (deg + a - d + b - d, DistanceCase::ThreeB)
    } else if d <= b && a == q && b == q && !(flags.p_in_support && flags.q_in_support) {
        (deg + q - d, DistanceCase::Four)
    } else {
        return Err(HermitError::NoCase(format!("d = {d}, a = {a}, b = {b}, {flags:?}")));
    };
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestTwoPoint {
    /// `C = dH - aP - qQ` on the residue side.
    pub canonical: CanonicalForm,
    pub distance: i64,
    pub case: DistanceCase,
    /// The same code as `C_L(R - P - Q, mP - 2Q)`.
    pub eval_m: i64,
    /// Step of the `G'_i` sequence with `C_Omega(R - P - Q, iP + Q)` equal to this code.
    pub sequence_step: i64,
}

/// Best two-point code whose evaluation divisor has the given degree.
pub fn best_twopoint(eval_degree: i64, herm: &Hermitian) -> Result<BestTwoPoint> {
    let q = herm.q();
    let deg_c = q.pow(3) - 1 - eval_degree;
    let a = (1 - deg_c).rem_euclid(q + 1);
    let d = (deg_c + q + a) / (q + 1);
    let canonical = CanonicalForm::new(d, a, q);
    let (distance, case) = actual_distance_twopoint(canonical, SupportFlags::TWO_POINT, herm)?;
    let eval_m = q.pow(3) + 1 - deg_c;
    Ok(BestTwoPoint {
        canonical,
        distance,
        case,
        eval_m,
        sequence_step: herm.duality_shift() - eval_m,
    })
}

/// Feng-Rao order bound for `C_Omega(D, G_i)`: the least nonzero coset bound at steps `j >= i`.
/// `None` when every step from i on is a gap.
pub fn order_bound(i: i64, kind: SequenceKind, method: BoundMethod, herm: &Hermitian) -> Option<i64> {
    let q = herm.q();
    // past 2q^2 the bounds grow with j, so the first one there is the tail minimum
    let end = i.max(2 * q * q + q + 1);
    (i..=end)
        .map(|j| sequence_bound(j, kind, method, herm))
        .filter(|&b| b > 0)
        .min()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistanceSource {
    Theorem(DistanceCase),
    OrderBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedDistance {
    pub distance: i64,
    pub source: DistanceSource,
}

/// Minimum distance of `C(a) = C_L(R - P, aP)` or `C'(a) = C_L(R - P - Q, aP - 2Q)`,
/// `None` for the zero code.
///
/// The evaluation divisor is first reduced to the largest pole and least zero order
/// of its Riemann-Roch basis, which leaves the code unchanged. The exact two-point
/// distance formula is applied to the residue divisor of the reduced form, with the
/// order bound as a fallback where no case applies.
pub fn classical_distance(kind: SequenceKind, a: i64, herm: &Hermitian) -> Option<PredictedDistance> {
    let q = herm.q();
    let eval = match kind {
        SequenceKind::OnePoint => TwoPointDivisor::new(a, 0),
        SequenceKind::TwoPoint => TwoPointDivisor::new(a, -2),
    };
    let basis = basis_divisor(eval, herm, Chart::P);
    let top = basis.iter().map(|mu| mu.pole_order(q)).max()?;
    let i = herm.duality_shift() - top;
    let (g, flags, method) = match kind {
        SequenceKind::OnePoint => (TwoPointDivisor::new(i, 0), SupportFlags::ONE_POINT, BoundMethod::Simple),
        SequenceKind::TwoPoint => {
            let low = basis.iter().map(|mu| mu.vanishing_order(q)).min()?;
            (
                TwoPointDivisor::new(i, low - 1),
                SupportFlags::TWO_POINT,
                BoundMethod::Improved,
            )
        }
    };
    let c = herm.relative_to_canonical(g);
    if let Ok((distance, case)) = actual_distance_twopoint(c, flags, herm) {
        return Some(PredictedDistance {
            distance,
            source: DistanceSource::Theorem(case),
        });
    }
    order_bound(i, kind, method, herm).map(|distance| PredictedDistance {
        distance,
        source: DistanceSource::OrderBound,
    })
}

/// A rectangle of nodes `mP + nQ`, `m0 <= m <= m1`, `n0 <= n <= n1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub m0: i64,
    pub m1: i64,
    pub n0: i64,
    pub n1: i64,
}

impl Window {
    pub fn new(m0: i64, m1: i64, n0: i64, n1: i64) -> Result<Self> {
        if m1 < m0 || n1 < n0 {
            return Err(HermitError::WindowTooSmall(format!(
                "[{m0}, {m1}] x [{n0}, {n1}] is empty"
            )));
        }
        Ok(Self { m0, m1, n0, n1 })
    }

    /// Large enough for every `G'_i` edge with `-1 <= i <= i_max` to pick up its improvement.
    pub fn for_twopoint_sequence(i_max: i64, q: i64) -> Self {
        Self {
            m0: -1,
            m1: i_max + q + 3,
            n0: 1,
            n1: q + 2,
        }
    }

    fn width(&self) -> usize {
        (self.m1 - self.m0 + 1) as usize
    }

    fn height(&self) -> usize {
        (self.n1 - self.n0 + 1) as usize
    }

    fn len(&self) -> usize {
        self.width() * self.height()
    }

    fn contains(&self, m: i64, n: i64) -> bool {
        (self.m0..=self.m1).contains(&m) && (self.n0..=self.n1).contains(&n)
    }
}

/// Edge labels on a window. Entry `(m, n)` of `p` labels `mP+nQ -> (m+1)P+nQ`; of `q`, `-> mP+(n+1)Q`.
/// Edges leaving the window carry no label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub window: Window,
    p: Vec<i64>,
    q: Vec<i64>,
}

impl Grid {
    /// Labels from [`base_coset_bound`].
    pub fn base(herm: &Hermitian, window: Window) -> Self {
        let mut g = Self::from_fn(window, |_, _, _| 0);
        for m in window.m0..=window.m1 {
            for n in window.n0..=window.n1 {
                let k = g.idx(m, n);
                let div = TwoPointDivisor::new(m, n);
                g.p[k] = edge_label(div, Step::P, herm);
                g.q[k] = edge_label(div, Step::Q, herm);
            }
        }
        g
    }

    pub fn from_fn(window: Window, mut label: impl FnMut(i64, i64, Step) -> i64) -> Self {
        let mut p = vec![0; window.len()];
        let mut q = vec![0; window.len()];
        for m in window.m0..=window.m1 {
            for n in window.n0..=window.n1 {
                let k = ((m - window.m0) as usize) * window.height() + (n - window.n0) as usize;
                p[k] = label(m, n, Step::P);
                q[k] = label(m, n, Step::Q);
            }
        }
        Self { window, p, q }
    }

    fn idx(&self, m: i64, n: i64) -> usize {
        ((m - self.window.m0) as usize) * self.window.height() + (n - self.window.n0) as usize
    }

    /// Label of the edge leaving `mP + nQ` in the given direction.
    pub fn label(&self, m: i64, n: i64, step: Step) -> Result<i64> {
        let (hm, hn) = match step {
            Step::P => (m + 1, n),
            Step::Q => (m, n + 1),
        };
        if !self.window.contains(m, n) || !self.window.contains(hm, hn) {
            return Err(HermitError::WindowTooSmall(format!(
                "edge ({m}, {n}) -> ({hm}, {hn}) is not inside {:?}",
                self.window
            )));
        }
        let k = self.idx(m, n);
        Ok(match step {
            Step::P => self.p[k],
            Step::Q => self.q[k],
        })
    }

    /// Raise labels to the fixpoint of the path rule: for nodes `A <= B`, every
    /// edge on a monotone path from A to B is at least the bottleneck of any other
    /// such path. Zero labels mark empty cosets; they never bound a path and are
    /// never raised. Returns the number of sweeps.
    pub fn propagate(&mut self) -> usize {
        let w = self.window;
        let (mw, nh) = (w.width(), w.height());
        let total = w.len();
        let mut sweeps = 0;
        loop {
            sweeps += 1;
            let (p, q) = (&self.p, &self.q);
            let raised = (0..total)
                .into_par_iter()
                .fold(
                    || (vec![0i64; total], vec![0i64; total]),
                    |(mut rp, mut rq), a| {
                        let (am, an) = (a / nh, a % nh);
                        raise_from(am, an, mw, nh, p, q, &mut rp, &mut rq);
                        (rp, rq)
                    },
                )
                .reduce(
                    || (vec![0i64; total], vec![0i64; total]),
                    |(mut xp, mut xq), (yp, yq)| {
                        for (x, y) in xp.iter_mut().zip(yp) {
                            *x = (*x).max(y);
                        }
                        for (x, y) in xq.iter_mut().zip(yq) {
                            *x = (*x).max(y);
                        }
                        (xp, xq)
                    },
                );
            let mut changed = false;
            for (lab, r) in self.p.iter_mut().zip(raised.0).chain(self.q.iter_mut().zip(raised.1)) {
                if *lab > 0 && r > *lab {
                    *lab = r;
                    changed = true;
                }
            }
            if !changed {
                return sweeps;
            }
        }
    }
}

/// Proposals from a single start node `(am, an)` (window-relative indices).
#[allow(clippy::too_many_arguments)]
fn raise_from(am: usize, an: usize, mw: usize, nh: usize, p: &[i64], q: &[i64], rp: &mut [i64], rq: &mut [i64]) {
    const INF: i64 = i64::MAX;
    let h = nh - an;
    let at = |m: usize, n: usize| (m - am) * h + (n - an);
    let cell = |m: usize, n: usize| m * nh + n;
    let open = |l: i64| if l == 0 { INF } else { l };
    // best bottleneck from A to each node
    let mut best = vec![-1i64; (mw - am) * h];
    for m in am..mw {
        for n in an..nh {
            if m == am && n == an {
                best[0] = INF;
                continue;
            }
            let mut v = -1;
            if m > am {
                v = v.max(best[at(m - 1, n)].min(open(p[cell(m - 1, n)])));
            }
            if n > an {
                v = v.max(best[at(m, n - 1)].min(open(q[cell(m, n - 1)])));
            }
            best[at(m, n)] = v;
        }
    }
    // largest bottleneck to any node at or beyond each node
    let mut sup = vec![-1i64; best.len()];
    for m in (am..mw).rev() {
        for n in (an..nh).rev() {
            let mut v = if (m, n) == (am, an) || best[at(m, n)] == INF {
                -1
            } else {
                best[at(m, n)]
            };
            if m + 1 < mw {
                v = v.max(sup[at(m + 1, n)]);
            }
            if n + 1 < nh {
                v = v.max(sup[at(m, n + 1)]);
            }
            sup[at(m, n)] = v;
        }
    }
    for m in am..mw {
        for n in an..nh {
            let k = cell(m, n);
            if m + 1 < mw {
                rp[k] = rp[k].max(sup[at(m + 1, n)]);
            }
            if n + 1 < nh {
                rq[k] = rq[k].max(sup[at(m, n + 1)]);
            }
        }
    }
}

/// Base labels on `window`, propagated to the fixpoint.
pub fn propagate_grid(herm: &Hermitian, window: Window) -> Grid {
    let mut g = Grid::base(herm, window);
    g.propagate();
    g
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRow {
    pub delta: i64,
    /// Minimum over all sequences using the base labels.
    pub min_base: i64,
    /// Minimum over all sequences using the propagated labels.
    pub min_propagated: i64,
    /// Improved redundancy of the `iP + Q` sequence.
    pub twopoint: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub q: i64,
    pub top_degree: i64,
    pub rows: Vec<SearchRow>,
}

impl SearchResult {
    pub fn twopoint_is_optimal(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.twopoint <= r.min_propagated && r.twopoint <= r.min_base)
    }
}

/// Minimal improved redundancy over all sequences of P- and Q-steps, for each
/// `2 <= delta <= delta_max`.
///
/// Divisor classes are `(degree, n mod (q+1))`; a sequence starts at degree -1 and
/// runs up to a degree past which every nonzero label is at least `delta_max`.
pub fn search_sequences(delta_max: i64, herm: &Hermitian) -> Result<SearchResult> {
    let q = herm.q();
    let g = herm.genus();
    if delta_max < 2 {
        return Err(HermitError::OutOfRange(format!(
            "delta_max = {delta_max} must be at least 2"
        )));
    }
    let top = 2 * g - 2 + delta_max.max((q + 1) * (q + 1)) + 1;
    let classes = (q + 1) as usize;
    let class_label =
        |deg: i64, r: usize, step: Step| edge_label(TwoPointDivisor::new(deg - r as i64, r as i64), step, herm);
    for deg in top..top + q + 1 {
        for r in 0..classes {
            for step in [Step::P, Step::Q] {
                let l = class_label(deg, r, step);
                if l != 0 && l < delta_max {
                    return Err(HermitError::WindowTooSmall(format!(
                        "label {l} < {delta_max} beyond degree {top}"
                    )));
                }
            }
        }
    }

    let span = 2 * q + 2;
    let window = Window::new(-1 - span, top + 1, 0, span)?;
    let grid = propagate_grid(herm, window);
    let mut propagated: HashMap<(i64, usize, Step), i64> = HashMap::new();
    for m in window.m0..=window.m1 {
        for n in window.n0..=window.n1 {
            for step in [Step::P, Step::Q] {
                if let Ok(l) = grid.label(m, n, step) {
                    let key = (m + n, n.rem_euclid(q + 1) as usize, step);
                    let e = propagated.entry(key).or_insert(0);
                    *e = (*e).max(l);
                }
            }
        }
    }

    let i_max = default_horizon(delta_max, herm);
    let seq = CosetBoundSequence::new(herm, SequenceKind::TwoPoint, BoundMethod::Improved, i_max);
    let rows = (2..=delta_max)
        .map(|delta| {
            let min_base = cheapest_path(top, classes, delta, class_label);
            let min_propagated = cheapest_path(top, classes, delta, |deg, r, s| propagated[&(deg, r, s)]);
            Ok(SearchRow {
                delta,
                min_base,
                min_propagated,
                twopoint: redundancy(delta, &seq, RedundancyMode::Improved)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SearchResult {
        q,
        top_degree: top,
        rows,
    })
}

fn cheapest_path(top: i64, classes: usize, delta: i64, label: impl Fn(i64, usize, Step) -> i64) -> i64 {
    let mut cost = vec![0i64; classes];
    for deg in -1..top {
        let mut next = vec![i64::MAX; classes];
        for (r, &c) in cost.iter().enumerate() {
            for (step, r2) in [(Step::P, r), (Step::Q, (r + 1) % classes)] {
                let l = label(deg, r, step);
                let add = i64::from(0 < l && l < delta);
                next[r2] = next[r2].min(c + add);
            }
        }
        cost = next;
    }
    cost.into_iter().min().unwrap()
}
