//! First-order period matrices of Fay-plumbed curve families.
//!
//! Plumbing uses the fixture `t = q² − v²`. Pairwise plumbing of `C_a` at
//! `a` to `C_b` at `b` gives
//!
//! ```text
//! τ(C_t) ≡ diag(τ(C_a), τ(C_b)) + λ·t·u ⊗ u   (mod t²),
//! u = [ω_a(a), −ω_b(b)],   λ = 2π√−1 / 4.
//! ```
//!
//! In [`ScaleMode::ExactUnits`] the factor `2π√−1` is divided out so that
//! `λ = 1/4` and every coefficient stays a Gaussian rational.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use crate::alkanes::{Alkane, CanonicalCode};
use crate::elliptic::{Mark, MarkedEllipticCurve, TauPoint, TwoTorsionLabel};
use crate::error::{Error, Result};
use crate::field::{coefficient_from_pair, Coefficient};
use crate::jets::{Jet, JetRing};
use crate::linalg::{self, Matrix};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScaleMode {
    /// `2π√−1` factored out.
    ExactUnits,
    /// The transcendental factor is kept (float fields only).
    Numeric,
}

impl ScaleMode {
    pub fn name(self) -> &'static str {
        match self {
            ScaleMode::ExactUnits => "exact",
            ScaleMode::Numeric => "numeric",
        }
    }

    /// `factor / denominator`, with `factor = 1` or `2π√−1`.
    pub fn constant<F: Coefficient>(self, denominator: i64) -> Result<F> {
        let base = F::from_ratio(1, denominator);
        match self {
            ScaleMode::ExactUnits => Ok(base),
            ScaleMode::Numeric => F::two_pi_i().map(|c| c.mul(&base)).ok_or_else(|| {
                Error::InvalidConfiguration("numeric scale needs a float coefficient field".into())
            }),
        }
    }
}

/// The pairwise constant `λ`.
pub fn plumbing_lambda<F: Coefficient>(mode: ScaleMode) -> Result<F> {
    mode.constant(4)
}

/// The star-configuration constant `κ = λ / 4`.
pub fn star_kappa<F: Coefficient>(mode: ScaleMode) -> Result<F> {
    mode.constant(16)
}

/// Symmetric matrix of jets.
#[derive(Debug, Clone)]
pub struct PeriodMatrixJet<F: Coefficient> {
    ring: Arc<JetRing<F>>,
    entries: Vec<Vec<Jet<F>>>,
    pub scale_mode: ScaleMode,
    /// Whether first-order diagonal corrections were assembled.
    pub diagonal_corrections: bool,
    pub alkane_code: Option<CanonicalCode>,
}

impl<F: Coefficient> PartialEq for PeriodMatrixJet<F> {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
            && self.scale_mode == other.scale_mode
            && self.diagonal_corrections == other.diagonal_corrections
            && self.alkane_code == other.alkane_code
    }
}

impl<F: Coefficient> PeriodMatrixJet<F> {
    /// `diag(blocks)` as constant jets.
    fn block_diagonal(ring: &Arc<JetRing<F>>, blocks: &[&[Vec<F>]], mode: ScaleMode) -> Self {
        let g: usize = blocks.iter().map(|b| b.len()).sum();
        let mut entries = vec![vec![ring.zero(); g]; g];
        let mut offset = 0;
        for block in blocks {
            for (i, row) in block.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    entries[offset + i][offset + j] = ring.constant(x.clone());
                }
            }
            offset += block.len();
        }
        PeriodMatrixJet {
            ring: Arc::clone(ring),
            entries,
            scale_mode: mode,
            diagonal_corrections: true,
            alkane_code: None,
        }
    }

    pub fn genus(&self) -> usize {
        self.entries.len()
    }

    pub fn ring(&self) -> &Arc<JetRing<F>> {
        &self.ring
    }

    pub fn entry(&self, i: usize, j: usize) -> &Jet<F> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Jet<F>>] {
        &self.entries
    }

    /// Adds `coeff · u ⊗ u` to the matrix.
    fn add_outer_square(&mut self, u: &[F], coeff: &Jet<F>) {
        for (i, ui) in u.iter().enumerate() {
            if ui.is_exact_zero() {
                continue;
            }
            for (j, uj) in u.iter().enumerate() {
                if uj.is_exact_zero() {
                    continue;
                }
                let term = coeff.scale(&ui.mul(uj));
                self.entries[i][j] = &self.entries[i][j] + &term;
            }
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let g = self.genus();
        (0..g).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Constant part of every entry.
    pub fn constant_matrix(&self) -> Matrix<F> {
        self.entries
            .iter()
            .map(|r| r.iter().map(Jet::constant_term).collect())
            .collect()
    }

    /// Coefficient matrix of the degree-one monomial in `var`.
    pub fn linear_coefficient_matrix(&self, var: &str) -> Result<Matrix<F>> {
        let k = self.ring.variable_index(var)?;
        Ok(self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.linear_coefficient(k)).collect())
            .collect())
    }

    /// Coefficient matrix of an arbitrary monomial.
    pub fn coefficient_matrix(&self, exp: &[u32]) -> Matrix<F> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| x.coefficient(exp)).collect())
            .collect()
    }

    /// `{ "genus", "mode", "entries", "support" (1-based), "alkane_code" }`
    pub fn to_json(&self) -> Value {
        let entries: Vec<Vec<Value>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(Jet::to_json).collect())
            .collect();
        let support: Vec<[usize; 2]> = offdiag_support(self)
            .into_iter()
            .map(|(i, j)| [i + 1, j + 1])
            .collect();
        json!({
            "genus": self.genus(),
            "mode": self.scale_mode.name(),
            "entries": entries,
            "support": support,
            "alkane_code": self.alkane_code.as_ref().map(CanonicalCode::as_str),
            "diagonal_corrections": self.diagonal_corrections,
        })
    }
}

fn require_order<F: Coefficient>(ring: &JetRing<F>, min: u32) -> Result<()> {
    if ring.truncation_order() < min {
        return Err(Error::Range {
            what: "truncation order",
            value: ring.truncation_order() as i64,
            min: min as i64,
            max: i64::MAX,
        });
    }
    Ok(())
}

fn check_square<F>(block: &[Vec<F>], what: &str) -> Result<()> {
    if block.iter().any(|r| r.len() != block.len()) {
        return Err(Error::ShapeMismatch(format!("{what} is not square")));
    }
    Ok(())
}

/// Plumbing data for two curves with period blocks of any size.
#[derive(Debug, Clone, PartialEq)]
pub struct PairPlumbing<F> {
    pub block_a: Matrix<F>,
    pub block_b: Matrix<F>,
    /// Normalized forms of `C_a` evaluated at `a`.
    pub omega_a: Vec<F>,
    /// Normalized forms of `C_b` evaluated at `b`.
    pub omega_b: Vec<F>,
    pub variable: String,
}

impl<F: Coefficient> PairPlumbing<F> {
    /// Plumbs two marked elliptic curves at the given marks.
    pub fn from_curves(
        curve_a: &MarkedEllipticCurve<F>,
        mark_a: usize,
        curve_b: &MarkedEllipticCurve<F>,
        mark_b: usize,
        variable: impl Into<String>,
    ) -> Result<Self> {
        Ok(PairPlumbing {
            block_a: vec![vec![curve_a.tau.value().clone()]],
            block_b: vec![vec![curve_b.tau.value().clone()]],
            omega_a: vec![curve_a.mark(mark_a)?.normalized_form_value()?],
            omega_b: vec![curve_b.mark(mark_b)?.normalized_form_value()?],
            variable: variable.into(),
        })
    }

    /// `u = [ω_a(a), −ω_b(b)]`.
    pub fn plumbing_vector(&self) -> Vec<F> {
        self.omega_a
            .iter()
            .cloned()
            .chain(self.omega_b.iter().map(F::neg))
            .collect()
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let variable = v
            .get("variable")
            .and_then(Value::as_str)
            .unwrap_or("t")
            .to_string();
        if let (Some(a), Some(b)) = (v.get("curve_a"), v.get("curve_b")) {
            let ca = MarkedEllipticCurve::from_json(a)?;
            let cb = MarkedEllipticCurve::from_json(b)?;
            let ma = v.get("mark_a").and_then(Value::as_u64).unwrap_or(0) as usize;
            let mb = v.get("mark_b").and_then(Value::as_u64).unwrap_or(0) as usize;
            return Self::from_curves(&ca, ma, &cb, mb, variable);
        }
        let matrix = |key: &str| -> Result<Matrix<F>> {
            let rows = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("pair: missing {key:?}")))?;
            rows.iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| Error::Parse(format!("{key}: rows must be arrays")))?
                        .iter()
                        .map(coefficient_from_pair)
                        .collect()
                })
                .collect()
        };
        let vector = |key: &str| -> Result<Vec<F>> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("pair: missing {key:?}")))?
                .iter()
                .map(coefficient_from_pair)
                .collect()
        };
        Ok(PairPlumbing {
            block_a: matrix("block_a")?,
            block_b: matrix("block_b")?,
            omega_a: vector("omega_a")?,
            omega_b: vector("omega_b")?,
            variable,
        })
    }
}

/// First-order period matrix of a pairwise plumbing.
pub fn pair_period_first_order<F: Coefficient>(
    p: &PairPlumbing<F>,
    ring: &Arc<JetRing<F>>,
    mode: ScaleMode,
) -> Result<PeriodMatrixJet<F>> {
    require_order(ring, 1)?;
    check_square(&p.block_a, "block_a")?;
    check_square(&p.block_b, "block_b")?;
    if p.omega_a.len() != p.block_a.len() || p.omega_b.len() != p.block_b.len() {
        return Err(Error::ShapeMismatch(
            "form-value vectors must match the block sizes".into(),
        ));
    }
    let t = ring.variable(&p.variable)?;
    let mut m = PeriodMatrixJet::block_diagonal(ring, &[&p.block_a, &p.block_b], mode);
    let lambda = plumbing_lambda::<F>(mode)?;
    m.add_outer_square(&p.plumbing_vector(), &t.scale(&lambda));
    Ok(m)
}

/// `g` elliptic curves plumbed to a rational curve at distinct points `b_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarConfig<F> {
    /// Each curve carries exactly one mark.
    pub curves: Vec<MarkedEllipticCurve<F>>,
    pub attachment_points: Vec<F>,
    pub variables: Vec<String>,
}

impl<F: Coefficient> StarConfig<F> {
    pub fn new(
        curves: Vec<MarkedEllipticCurve<F>>,
        attachment_points: Vec<F>,
        variables: Vec<String>,
    ) -> Result<Self> {
        let g = curves.len();
        if attachment_points.len() != g || variables.len() != g {
            return Err(Error::InvalidConfiguration(
                "star: curves, attachment points and variables must have equal length".into(),
            ));
        }
        for (i, c) in curves.iter().enumerate() {
            if c.marks.len() != 1 {
                return Err(Error::InvalidConfiguration(format!(
                    "star: curve {i} must carry exactly one mark"
                )));
            }
            c.marks[0].normalized_form_value()?;
        }
        for i in 0..g {
            for j in 0..i {
                if attachment_points[i].sub(&attachment_points[j]).is_exact_zero() {
                    return Err(Error::InvalidConfiguration(format!(
                        "star: attachment points {j} and {i} coincide"
                    )));
                }
            }
        }
        Ok(StarConfig {
            curves,
            attachment_points,
            variables,
        })
    }

    /// Curves marked at the origin with coordinate coefficients `1 / v_i`,
    /// variables `t_1, ..., t_g`.
    pub fn from_values(taus: Vec<F>, form_values: Vec<F>, attachment_points: Vec<F>) -> Result<Self> {
        if taus.len() != form_values.len() {
            return Err(Error::InvalidConfiguration("star: length mismatch".into()));
        }
        let mut curves = Vec::with_capacity(taus.len());
        for (tau, v) in taus.into_iter().zip(form_values) {
            let c = v
                .inv()
                .ok_or_else(|| Error::InvalidMark("form value v(a) = 0".into()))?;
            curves.push(MarkedEllipticCurve::new(
                TauPoint::new(tau)?,
                vec![Mark::two_torsion(TwoTorsionLabel::O, c)],
            )?);
        }
        let g = curves.len();
        Self::new(curves, attachment_points, star_variables(g))
    }

    /// Random rational periods, form values and distinct attachment points.
    pub fn random(g: usize, rng: &mut impl Rng) -> Result<Self> {
        let taus = (0..g).map(|_| rng::tau_point(rng).into_inner()).collect();
        let vs = (0..g).map(|_| rng::nonzero_rational(rng, 9, 5)).collect();
        let mut bs: Vec<F> = Vec::with_capacity(g);
        while bs.len() < g {
            let b: F = rng::rational(rng, 12, 4);
            if bs.iter().all(|x| !x.sub(&b).is_exact_zero()) {
                bs.push(b);
            }
        }
        Self::from_values(taus, vs, bs)
    }

    pub fn genus(&self) -> usize {
        self.curves.len()
    }

    pub fn form_values(&self) -> Vec<F> {
        self.curves
            .iter()
            .map(|c| c.marks[0].normalized_form_value().expect("validated"))
            .collect()
    }

    /// `κ·v_i v_j / (b_i − b_j)²`, the `t_i t_j` coefficient of `τ̄_ij`.
    pub fn leading_coefficient(&self, i: usize, j: usize, mode: ScaleMode) -> Result<F> {
        let v = |k: usize| self.curves[k].marks[0].normalized_form_value();
        let d = self.attachment_points[i].sub(&self.attachment_points[j]);
        let num = star_kappa::<F>(mode)?.mul(&v(i)?).mul(&v(j)?);
        num.div(&d.mul(&d))
            .ok_or_else(|| Error::InvalidConfiguration("coincident attachment points".into()))
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let curves = v
            .get("curves")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("star: missing \"curves\"".into()))?
            .iter()
            .map(MarkedEllipticCurve::from_json)
            .collect::<Result<Vec<_>>>()?;
        let points = v
            .get("attachment_points")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("star: missing \"attachment_points\"".into()))?
            .iter()
            .map(coefficient_from_pair)
            .collect::<Result<Vec<F>>>()?;
        let variables = match v.get("variables") {
            Some(x) => serde_json::from_value(x.clone())?,
            None => star_variables(curves.len()),
        };
        Self::new(curves, points, variables)
    }
}

/// `t_1, ..., t_g`.
pub fn star_variables(g: usize) -> Vec<String> {
    (1..=g).map(|i| format!("t_{i}")).collect()
}

/// Leading-order period matrix of the star configuration: constant diagonal
/// `τ_i`, off-diagonal `κ·t_i t_j·v_i v_j / (b_i − b_j)²`. Diagonal
/// corrections are not modelled.
pub fn star_period_leading<F: Coefficient>(
    s: &StarConfig<F>,
    ring: &Arc<JetRing<F>>,
    mode: ScaleMode,
) -> Result<PeriodMatrixJet<F>> {
    require_order(ring, 2)?;
    let g = s.genus();
    let taus: Vec<Vec<F>> = (0..g)
        .map(|i| {
            let mut row = vec![F::zero(); g];
            row[i] = s.curves[i].tau.value().clone();
            row
        })
        .collect();
    let mut m = PeriodMatrixJet::block_diagonal(ring, &[&taus], mode);
    m.diagonal_corrections = false;
    let vars: Vec<Jet<F>> = s
        .variables
        .iter()
        .map(|v| ring.variable(v))
        .collect::<Result<_>>()?;
    for i in 0..g {
        for j in i + 1..g {
            let c = s.leading_coefficient(i, j, mode)?;
            let entry = (&vars[i] * &vars[j]).scale(&c);
            m.entries[i][j] = entry.clone();
            m.entries[j][i] = entry;
        }
    }
    Ok(m)
}

/// A mark on one side of a tree edge: a 2-torsion point and the leading
/// coefficient of the local coordinate there.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeMark<F> {
    pub label: TwoTorsionLabel,
    pub coeff: F,
}

impl<F: Coefficient> EdgeMark<F> {
    pub fn form_value(&self) -> Result<F> {
        Mark::two_torsion(self.label, self.coeff.clone()).normalized_form_value()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeEdge<F> {
    /// 0-based endpoints `(i, j)`; `mark_i` lies on `E_i`, `mark_j` on `E_j`.
    pub edge: (usize, usize),
    pub variable: String,
    pub mark_i: EdgeMark<F>,
    pub mark_j: EdgeMark<F>,
}

/// Elliptic curves plumbed along the bonds of an alkane. Edges are assembled
/// in list order.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeConfig<F> {
    pub alkane: Alkane,
    pub taus: Vec<TauPoint<F>>,
    pub edges: Vec<TreeEdge<F>>,
}

/// `t_i_j` with 1-based endpoints.
pub fn edge_variable(i: usize, j: usize) -> String {
    format!("t_{}_{}", i.min(j) + 1, i.max(j) + 1)
}

impl<F: Coefficient> TreeConfig<F> {
    pub fn new(alkane: Alkane, taus: Vec<TauPoint<F>>, edges: Vec<TreeEdge<F>>) -> Result<Self> {
        let g = alkane.genus();
        if taus.len() != g {
            return Err(Error::InvalidConfiguration(format!(
                "tree: expected {g} periods, got {}",
                taus.len()
            )));
        }
        let mut covered = BTreeSet::new();
        let mut labels: Vec<Vec<TwoTorsionLabel>> = vec![Vec::new(); g];
        let mut names = BTreeSet::new();
        for e in &edges {
            let (i, j) = e.edge;
            if i >= g || j >= g || !alkane.has_edge(i, j) {
                return Err(Error::InvalidConfiguration(format!(
                    "tree: ({i}, {j}) is not a bond of the alkane"
                )));
            }
            if !covered.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidConfiguration(format!("tree: bond ({i}, {j}) repeated")));
            }
            if !names.insert(e.variable.as_str()) {
                return Err(Error::InvalidConfiguration(format!(
                    "tree: variable {:?} used twice",
                    e.variable
                )));
            }
            e.mark_i.form_value()?;
            e.mark_j.form_value()?;
            for (v, m) in [(i, &e.mark_i), (j, &e.mark_j)] {
                if labels[v].contains(&m.label) {
                    return Err(Error::InvalidConfiguration(format!(
                        "tree: two nodes at the 2-torsion point {} of E_{}",
                        m.label,
                        v + 1
                    )));
                }
                labels[v].push(m.label);
            }
        }
        if covered.len() != alkane.edges().len() {
            return Err(Error::InvalidConfiguration("tree: every bond needs plumbing data".into()));
        }
        Ok(TreeConfig {
            alkane,
            taus,
            edges,
        })
    }

    /// Random periods and non-zero coordinate coefficients; the bonds at each
    /// vertex use distinct 2-torsion points in the order the bonds are listed.
    pub fn random(alkane: Alkane, rng: &mut impl Rng) -> Result<Self> {
        let g = alkane.genus();
        let taus = (0..g).map(|_| rng::tau_point(rng)).collect();
        let mut used = vec![0usize; g];
        let mut edges = Vec::new();
        for &(i, j) in alkane.edges() {
            let mut mark = |v: usize| {
                let label = TwoTorsionLabel::ALL[used[v]];
                used[v] += 1;
                EdgeMark {
                    label,
                    coeff: rng::nonzero_rational(rng, 9, 5),
                }
            };
            let (mark_i, mark_j) = (mark(i), mark(j));
            edges.push(TreeEdge {
                edge: (i, j),
                variable: edge_variable(i, j),
                mark_i,
                mark_j,
            });
        }
        Self::new(alkane, taus, edges)
    }

    pub fn variables(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.variable.clone()).collect()
    }

    /// The same configuration with edges assembled in reverse order.
    pub fn reversed(&self) -> Self {
        let mut c = self.clone();
        c.edges.reverse();
        c
    }

    /// `u_e`: `v_i(a_ij)` in slot `i`, `−v_j(a_ji)` in slot `j`.
    pub fn edge_vector(&self, e: &TreeEdge<F>) -> Result<Vec<F>> {
        let mut u = vec![F::zero(); self.alkane.genus()];
        u[e.edge.0] = e.mark_i.form_value()?;
        u[e.edge.1] = e.mark_j.form_value()?.neg();
        Ok(u)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let alkane = Alkane::from_json(
            v.get("alkane")
                .ok_or_else(|| Error::Parse("tree: missing \"alkane\"".into()))?,
        )?;
        let taus = v
            .get("taus")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("tree: missing \"taus\"".into()))?
            .iter()
            .map(|t| TauPoint::new(coefficient_from_pair(t)?))
            .collect::<Result<Vec<_>>>()?;
        let edge_mark = |m: Option<&Value>| -> Result<EdgeMark<F>> {
            let m = m.ok_or_else(|| Error::Parse("tree edge: missing mark".into()))?;
            let label = TwoTorsionLabel::parse(
                m.get("point")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Parse("tree mark: \"point\" must be a 2-torsion label".into()))?,
            )?;
            let coeff = match m.get("c") {
                Some(c) => coefficient_from_pair(c)?,
                None => F::one(),
            };
            Ok(EdgeMark { label, coeff })
        };
        let mut edges = Vec::new();
        for e in v
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("tree: missing \"edges\"".into()))?
        {
            let [a, b]: [usize; 2] = serde_json::from_value(
                e.get("edge")
                    .cloned()
                    .ok_or_else(|| Error::Parse("tree edge: missing \"edge\"".into()))?,
            )?;
            if a == 0 || b == 0 {
                return Err(Error::Parse("tree edge: vertices are numbered from 1".into()));
            }
            let (i, j) = (a - 1, b - 1);
            let variable = match e.get("variable").and_then(Value::as_str) {
                Some(s) => s.to_string(),
                None => edge_variable(i, j),
            };
            edges.push(TreeEdge {
                edge: (i, j),
                variable,
                mark_i: edge_mark(e.get("mark_i"))?,
                mark_j: edge_mark(e.get("mark_j"))?,
            });
        }
        Self::new(alkane, taus, edges)
    }
}

/// `diag(τ_i) + Σ_e λ·t_e·u_e ⊗ u_e  (mod (t)²)`.
pub fn tree_period_first_order<F: Coefficient>(
    c: &TreeConfig<F>,
    ring: &Arc<JetRing<F>>,
    mode: ScaleMode,
) -> Result<PeriodMatrixJet<F>> {
    require_order(ring, 1)?;
    let g = c.alkane.genus();
    let diag: Vec<Vec<F>> = (0..g)
        .map(|i| {
            let mut row = vec![F::zero(); g];
            row[i] = c.taus[i].value().clone();
            row
        })
        .collect();
    let mut m = PeriodMatrixJet::block_diagonal(ring, &[&diag], mode);
    m.alkane_code = Some(c.alkane.canonical_code());
    let lambda = plumbing_lambda::<F>(mode)?;
    for e in &c.edges {
        let t = ring.variable(&e.variable)?;
        let u = c.edge_vector(e)?;
        m.add_outer_square(&u, &t.scale(&lambda));
    }
    Ok(m)
}

/// Off-diagonal pairs `(i, j)`, `i < j`, whose entry is non-zero modulo
/// `(t)²`. Float entries are tested relative to the largest degree ≤ 1
/// coefficient in the matrix.
pub fn offdiag_support<F: Coefficient>(m: &PeriodMatrixJet<F>) -> BTreeSet<(usize, usize)> {
    let low = |x: &Jet<F>| -> Vec<F> {
        x.terms()
            .filter(|(e, _)| crate::jets::total_degree(e) <= 1)
            .map(|(_, c)| c.clone())
            .collect()
    };
    let scale = m
        .entries
        .iter()
        .flat_map(|r| r.iter())
        .flat_map(|x| low(x).into_iter().map(|c| c.modulus()))
        .fold(0.0, f64::max);
    let tol = m.ring.tolerance();
    let g = m.genus();
    let mut out = BTreeSet::new();
    for i in 0..g {
        for j in i + 1..g {
            if low(&m.entries[i][j])
                .iter()
                .any(|c| !c.is_negligible(scale, tol))
            {
                out.insert((i, j));
            }
        }
    }
    out
}

/// True iff every pair in `support` satisfies `|i − j| ≤ band − 1`
/// (`band = 2`: tridiagonal, `band = 3`: quadridiagonal).
pub fn is_banded(support: &BTreeSet<(usize, usize)>, band: usize) -> bool {
    support.iter().all(|&(i, j)| i.abs_diff(j) < band)
}

/// Dimension of the space of symmetric `g × g` matrices with the given band.
pub fn banded_locus_dimension(g: usize, band: usize) -> usize {
    if band == 0 {
        return 0;
    }
    g + (1..band).map(|d| g.saturating_sub(d)).sum::<usize>()
}

/// True iff the coefficient matrix of `var` has all 2×2 minors zero.
pub fn derivative_rank_one_check<F: Coefficient>(m: &PeriodMatrixJet<F>, var: &str) -> Result<bool> {
    let d = m.linear_coefficient_matrix(var)?;
    Ok(linalg::all_minors_vanish(&d, m.ring.tolerance()))
}
