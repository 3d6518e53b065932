//! Evaluation codes, residue codes as duals, and Feng-Rao improved codes.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bounds::{default_horizon, sequence_bound, BoundMethod, RedundancyMode, SequenceKind};
use crate::curve::{AffinePoint, Curve, Hermitian, TwoPointDivisor};
use crate::error::{HermitError, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::riemann_roch::{basis_divisor, monomial_with_pole, Chart, Monomial};

/// The evaluation divisor: `R - P` uses all affine points, `R - P - Q` drops the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SupportKind {
    #[serde(rename = "R-P")]
    OnePoint,
    #[serde(rename = "R-P-Q")]
    TwoPoint,
}

impl SupportKind {
    pub fn of(kind: SequenceKind) -> Self {
        match kind {
            SequenceKind::OnePoint => SupportKind::OnePoint,
            SequenceKind::TwoPoint => SupportKind::TwoPoint,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSpec {
    pub kind: SupportKind,
    pub points: Vec<AffinePoint>,
}

impl SupportSpec {
    pub fn new(curve: &Curve, kind: SupportKind) -> Self {
        let points = match kind {
            SupportKind::OnePoint => curve.points().to_vec(),
            SupportKind::TwoPoint => curve.points().iter().copied().filter(|p| !p.is_origin()).collect(),
        };
        Self { kind, points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Row r, column c holds monomial r evaluated at point c.
pub fn evaluation_matrix(monomials: &[Monomial], support: &SupportSpec, field: &FieldSpec) -> Result<Matrix> {
    let rows = monomials
        .iter()
        .map(|mu| {
            support
                .points
                .iter()
                .map(|&pt| mu.eval(field, pt))
                .collect::<Result<Vec<u8>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows, support.len())
}

/// How a code was built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: String,
    pub q: i64,
    pub params: BTreeMap<String, i64>,
    pub designed_distance: Option<i64>,
}

impl Provenance {
    pub fn new(construction: &str, q: i64) -> Self {
        Self {
            construction: construction.to_string(),
            q,
            params: BTreeMap::new(),
            designed_distance: None,
        }
    }

    pub fn with(mut self, key: &str, value: i64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }
}

#[derive(Debug, Clone)]
pub struct LinearCode {
    pub n: usize,
    pub k: usize,
    pub field: Arc<FieldSpec>,
    pub gen: Option<Matrix>,
    pub chk: Option<Matrix>,
    pub provenance: Provenance,
}

impl LinearCode {
    pub fn from_generator(field: Arc<FieldSpec>, gen: Matrix, provenance: Provenance) -> Self {
        let k = gen.rank(&field);
        Self {
            n: gen.cols(),
            k,
            field,
            gen: Some(gen),
            chk: None,
            provenance,
        }
    }

    pub fn from_check(field: Arc<FieldSpec>, chk: Matrix, provenance: Provenance) -> Self {
        let n = chk.cols();
        let k = n - chk.rank(&field);
        Self {
            n,
            k,
            field,
            gen: None,
            chk: Some(chk),
            provenance,
        }
    }

    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    /// RREF basis of the code.
    pub fn generator_basis(&self) -> Matrix {
        match (&self.gen, &self.chk) {
            (Some(g), _) => g.rref(&self.field).0,
            (None, Some(h)) => h.null_space(&self.field),
            (None, None) => Matrix::zeros(0, self.n),
        }
    }

    /// RREF basis of the dual code.
    pub fn check_basis(&self) -> Matrix {
        match (&self.chk, &self.gen) {
            (Some(h), _) => h.rref(&self.field).0,
            (None, Some(g)) => g.null_space(&self.field),
            (None, None) => Matrix::identity(self.n),
        }
    }

    /// Fills in whichever matrix is missing.
    pub fn complete(mut self) -> Self {
        if self.gen.is_none() {
            self.gen = Some(self.generator_basis());
        }
        if self.chk.is_none() {
            self.chk = Some(self.check_basis());
        }
        self
    }

    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.n == other.n && self.generator_basis() == other.generator_basis()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "k": self.k,
            "q": self.field.q(),
            "provenance": self.provenance,
            "generator": self.gen.as_ref().map(Matrix::to_rows),
            "check": self.chk.as_ref().map(Matrix::to_rows),
        })
    }
}

/// `C_L(D, mP + nQ)` on the given support.
pub fn evaluation_code(curve: &Curve, support: SupportKind, g: TwoPointDivisor) -> Result<LinearCode> {
    let spec = SupportSpec::new(curve, support);
    let basis = basis_divisor(g, curve.herm(), Chart::P);
    let gen = if basis.is_empty() {
        Matrix::zeros(0, spec.len())
    } else {
        evaluation_matrix(&basis, &spec, curve.field())?
    };
    let prov = Provenance::new("evaluation", curve.q()).with("m", g.m).with("n", g.n);
    Ok(LinearCode::from_generator(curve.field_arc(), gen, prov))
}

/// `C_Omega(D, G) = C_L(D, G)^perp`.
pub fn residue_code(curve: &Curve, support: SupportKind, g: TwoPointDivisor) -> Result<LinearCode> {
    let mut code = residue_dual(&evaluation_code(curve, support, g)?)?;
    code.provenance = Provenance::new("residue", curve.q()).with("m", g.m).with("n", g.n);
    Ok(code)
}

/// The divisor `G` with `C_Omega(D, g_star) = C_L(D, G)`, from the differential
/// `dx / (x^(q^2) - x)` whose divisor is `N P - (sum of affine points)`.
pub fn residue_as_evaluation(support: SupportKind, g_star: TwoPointDivisor, herm: &Hermitian) -> TwoPointDivisor {
    let n = herm.duality_shift();
    match support {
        SupportKind::OnePoint => TwoPointDivisor::new(n - g_star.m, -g_star.n),
        SupportKind::TwoPoint => TwoPointDivisor::new(n - g_star.m, -1 - g_star.n),
    }
}

/// The three pairs `(D, G*, G)` of the residue/evaluation equality, as literal divisors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EvresCase {
    /// `D = R - P`, `G* = K + dH - aP`.
    One,
    /// `D = R - P - Q`, `G* = K + dH - aP + Q`.
    Two,
    /// `D = R - P - Q`, `G* = K + dH - aP - qQ`.
    TwoPrime,
}

impl EvresCase {
    pub fn support(self) -> SupportKind {
        match self {
            EvresCase::One => SupportKind::OnePoint,
            _ => SupportKind::TwoPoint,
        }
    }

    /// `(G*, G)`.
    pub fn divisors(self, d: i64, a: i64, herm: &Hermitian) -> (TwoPointDivisor, TwoPointDivisor) {
        let q = herm.q();
        let m = (q - 2 + d) * (q + 1) - a;
        let g_star = match self {
            EvresCase::One => TwoPointDivisor::new(m, 0),
            EvresCase::Two => TwoPointDivisor::new(m, 1),
            EvresCase::TwoPrime => TwoPointDivisor::new(m, -q),
        };
        (g_star, residue_as_evaluation(self.support(), g_star, herm))
    }
}

/// `C(a) = C_L(R - P, aP)` or `C'(a) = C_L(R - P - Q, aP - 2Q)`.
pub fn classical_code(curve: &Curve, kind: SequenceKind, a: i64) -> Result<LinearCode> {
    if a < 0 {
        return Err(HermitError::OutOfRange(format!("a = {a} must be nonnegative")));
    }
    let (support, g) = match kind {
        SequenceKind::OnePoint => (SupportKind::OnePoint, TwoPointDivisor::new(a, 0)),
        SequenceKind::TwoPoint => (SupportKind::TwoPoint, TwoPointDivisor::new(a, -2)),
    };
    let mut code = evaluation_code(curve, support, g)?;
    code.provenance = Provenance::new(&format!("{}-classical", kind.name()), curve.q()).with("a", a);
    Ok(code)
}

pub fn residue_dual(code: &LinearCode) -> Result<LinearCode> {
    let gen = code.gen.as_ref().ok_or(HermitError::MissingMatrix("generator"))?;
    let null = gen.null_space(&code.field);
    Ok(LinearCode {
        n: code.n,
        k: null.rows(),
        field: Arc::clone(&code.field),
        gen: Some(null),
        chk: Some(gen.clone()),
        provenance: Provenance {
            construction: format!("dual({})", code.provenance.construction),
            ..code.provenance.clone()
        },
    })
}

/// The check function for step i of a sequence: the monomial spanning
/// `L(G_{i+1}) / L(G_i)`, or `None` when the step is a gap.
///
/// One-point checks have pole order i+1. Two-point checks are Laurent monomials
/// `x^s y^t` with pole order i+1 at P and a pole of order at most 1 at Q.
pub fn check_monomial(i: i64, kind: SequenceKind, herm: &Hermitian) -> Option<Monomial> {
    let mu = monomial_with_pole(i + 1, herm, Chart::P);
    let floor = match kind {
        SequenceKind::OnePoint => 0,
        SequenceKind::TwoPoint => -1,
    };
    (mu.vanishing_order(herm.q()) >= floor && (kind == SequenceKind::TwoPoint || mu.j >= 0)).then_some(mu)
}

/// Check monomial as printed in check tables: two-point checks are multiplied by y
/// (an equivalent code) so that all exponents are nonnegative.
pub fn display_monomial(mu: Monomial, kind: SequenceKind) -> Monomial {
    match kind {
        SequenceKind::OnePoint => mu,
        SequenceKind::TwoPoint => Monomial { j: mu.j + 1, ..mu },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub step: i64,
    pub monomial: Monomial,
    pub display: String,
    pub bound: i64,
    /// True when the classical code checks this monomial but the designed code does not.
    pub removed: bool,
}

/// The classical check set for a designed distance with the removed checks marked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDiagram {
    pub q: i64,
    pub kind: SequenceKind,
    pub method: BoundMethod,
    pub mode: RedundancyMode,
    /// Designed distance, for codes built from one.
    pub delta: Option<i64>,
    /// Evaluation degree, for classical codes given as `C(a)` or `C'(a)`.
    pub a: Option<i64>,
    pub entries: Vec<CheckEntry>,
}

impl CheckDiagram {
    pub fn kept(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.removed)
    }

    pub fn removed(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.removed)
    }
}

/// Code with designed distance `delta` along a sequence.
///
/// `Improved` keeps the checks whose coset bound lies in `(0, delta)`. `Classical`
/// keeps every check up to the last such step.
pub fn designed_code(
    curve: &Curve,
    kind: SequenceKind,
    delta: i64,
    method: BoundMethod,
    mode: RedundancyMode,
) -> Result<(LinearCode, CheckDiagram)> {
    let herm = curve.herm();
    let support = SupportSpec::new(curve, SupportKind::of(kind));
    if delta < 2 {
        return Err(HermitError::OutOfRange(format!("delta = {delta} must be at least 2")));
    }
    if delta > support.len() as i64 {
        return Err(HermitError::VacuousCode {
            delta,
            n: support.len(),
        });
    }
    let steps: Vec<(i64, Monomial, i64)> = (-1..=default_horizon(delta, herm))
        .filter_map(|i| check_monomial(i, kind, herm).map(|mu| (i, mu, sequence_bound(i, kind, method, herm))))
        .collect();
    let last = steps
        .iter()
        .filter(|s| s.2 < delta)
        .map(|s| s.0)
        .next_back()
        .unwrap_or(-2);
    let entries: Vec<CheckEntry> = steps
        .into_iter()
        .filter(|s| s.0 <= last)
        .map(|(step, monomial, bound)| CheckEntry {
            step,
            monomial,
            display: display_monomial(monomial, kind).to_string(),
            bound,
            removed: mode == RedundancyMode::Improved && bound >= delta,
        })
        .collect();
    let diagram = CheckDiagram {
        q: herm.q(),
        kind,
        method,
        mode,
        delta: Some(delta),
        a: None,
        entries,
    };
    let mode_name = match mode {
        RedundancyMode::Classical => "classical",
        RedundancyMode::Improved => "improved",
    };
    let mut prov = Provenance::new(&format!("{}-{mode_name}", kind.name()), herm.q());
    prov.params.insert(format!("method_{}", method.name()), 1);
    prov.designed_distance = Some(delta);
    let code = code_from_diagram(curve, &diagram, &support, prov)?;
    Ok((code, diagram))
}

/// `C(a)` or `C'(a)` through its checks, the monomials of steps `-1 ..= N - a - 1`.
pub fn classical_checks(curve: &Curve, kind: SequenceKind, a: i64) -> Result<(LinearCode, CheckDiagram)> {
    if a < 0 {
        return Err(HermitError::OutOfRange(format!("a = {a} must be nonnegative")));
    }
    let herm = curve.herm();
    let method = match kind {
        SequenceKind::OnePoint => BoundMethod::Simple,
        SequenceKind::TwoPoint => BoundMethod::Improved,
    };
    let entries = (-1..herm.duality_shift() - a)
        .filter_map(|i| {
            check_monomial(i, kind, herm).map(|mu| CheckEntry {
                step: i,
                monomial: mu,
                display: display_monomial(mu, kind).to_string(),
                bound: sequence_bound(i, kind, method, herm),
                removed: false,
            })
        })
        .collect();
    let diagram = CheckDiagram {
        q: herm.q(),
        kind,
        method,
        mode: RedundancyMode::Classical,
        delta: None,
        a: Some(a),
        entries,
    };
    let support = SupportSpec::new(curve, SupportKind::of(kind));
    let prov = Provenance::new(&format!("{}-classical", kind.name()), herm.q()).with("a", a);
    let code = code_from_diagram(curve, &diagram, &support, prov)?;
    Ok((code, diagram))
}

fn code_from_diagram(
    curve: &Curve,
    diagram: &CheckDiagram,
    support: &SupportSpec,
    prov: Provenance,
) -> Result<LinearCode> {
    let monos: Vec<Monomial> = diagram.kept().map(|e| e.monomial).collect();
    let chk = if monos.is_empty() {
        Matrix::zeros(0, support.len())
    } else {
        evaluation_matrix(&monos, support, curve.field())?
    };
    Ok(LinearCode::from_check(curve.field_arc(), chk, prov))
}

pub fn improved_code(curve: &Curve, kind: SequenceKind, delta: i64, method: BoundMethod) -> Result<LinearCode> {
    designed_code(curve, kind, delta, method, RedundancyMode::Improved).map(|(c, _)| c)
}

/// Codewords vanishing at `coordinate`, with that coordinate deleted.
pub fn shorten(code: &LinearCode, coordinate: usize) -> Result<LinearCode> {
    if coordinate >= code.n {
        return Err(HermitError::OutOfRange(format!(
            "coordinate {coordinate} of a code of length {}",
            code.n
        )));
    }
    let f = &code.field;
    let basis = code.generator_basis();
    let mut rows: Vec<Vec<u8>> = basis.to_rows();
    if let Some(p) = rows.iter().position(|r| r[coordinate] != 0) {
        let pivot = rows.remove(p);
        let inv = f.inv(pivot[coordinate]).unwrap();
        for r in rows.iter_mut() {
            let factor = f.mul(r[coordinate], inv);
            if factor != 0 {
                for (v, &pv) in r.iter_mut().zip(&pivot) {
                    *v = f.sub(*v, f.mul(factor, pv));
                }
            }
        }
    }
    let sub = Matrix::from_rows(rows, code.n)?.delete_column(coordinate)?;
    let mut prov = code.provenance.clone();
    prov.construction = format!("shortened({})", prov.construction);
    prov.params.insert(format!("shortened_at_{coordinate}"), 1);
    Ok(LinearCode::from_generator(Arc::clone(&code.field), sub, prov))
}
