//! Surface side: stratum dimensions, rank-one edge matrices `Π_e`, first-order
//! assembly of the block period matrix and the span of the `Π_e`.
//!
//! Vertex `i` carries a constant block of shape `h_i × (11h_i + 4)`. The
//! ambient matrix stacks the vertex rows and concatenates the vertex columns;
//! `Π_e` lives in the rows and columns of the two endpoints of `e`.

#![allow(non_snake_case)]

use std::collections::BTreeSet;
use std::ops::Range;
use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use crate::alkanes::Alkane;
use crate::curve_periods::edge_variable;
use crate::error::{Error, Result};
use crate::field::{Coefficient, DEFAULT_TOLERANCE};
use crate::jets::{Jet, JetRing};
use crate::linalg::{self, Matrix};
use crate::rng;

/// `dim V_h = h(10h + 8) + h(h − 1)/2`.
pub fn dim_period_domain(h: usize) -> Result<usize> {
    if h == 0 {
        return Err(Error::Range { what: "h", value: 0, min: 1, max: i64::MAX });
    }
    Ok(h * (10 * h + 8) + h * (h - 1) / 2)
}

/// `dim K_j = 18 − 4j` for `0 ≤ j ≤ 4`.
pub fn dim_K(j: usize) -> Result<usize> {
    if j > 4 {
        return Err(Error::Range { what: "j", value: j as i64, min: 0, max: 4 });
    }
    Ok(18 - 4 * j)
}

/// `Σ_j γ_j (18 − 4j) − (h − 1)`, checked against `9h + 9`.
pub fn dim_V_Gamma(alkane: &Alkane) -> Result<usize> {
    let h = alkane.genus();
    let p = alkane.valency_profile();
    let sum: usize = (0..=4).map(|j| p.gamma(j) * (18 - 4 * j)).sum();
    let value = sum - (h - 1);
    if value != 9 * h + 9 {
        return Err(Error::FormulaViolation(format!(
            "valency sum gives {value}, expected {} for h = {h}",
            9 * h + 9
        )));
    }
    Ok(value)
}

/// `dim W_{h_1,…,h_r} = 2Σh_i − (r − 1)`.
pub fn dim_W(parts: &[usize]) -> Result<usize> {
    if parts.is_empty() {
        return Err(Error::InvalidConfiguration("dim_W needs at least one part".into()));
    }
    if let Some(&p) = parts.iter().find(|&&p| p == 0) {
        return Err(Error::Range { what: "h_i", value: p as i64, min: 1, max: i64::MAX });
    }
    Ok(2 * parts.iter().sum::<usize>() - (parts.len() - 1))
}

/// Shape of one vertex block after the four zero columns are discarded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceBlockShape {
    h: usize,
}

impl SurfaceBlockShape {
    pub fn new(h: usize) -> Result<Self> {
        if h == 0 {
            return Err(Error::Range { what: "h_i", value: 0, min: 1, max: i64::MAX });
        }
        Ok(SurfaceBlockShape { h })
    }

    pub fn rows(&self) -> usize {
        self.h
    }

    pub fn cols(&self) -> usize {
        11 * self.h + 4
    }

    /// Columns whose entries in every `I` vector are zero.
    pub fn trailing_columns(&self) -> Range<usize> {
        self.cols() - self.h..self.cols()
    }
}

/// Plumbing data on one edge `{i, j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeData<F> {
    pub edge: (usize, usize),
    /// `[ω_i(P_ij), −ω_j(P_ji)]`, of length `h_i + h_j`.
    pub omega: Vec<F>,
    pub i_ij: Vec<i64>,
    pub i_ji: Vec<i64>,
}

impl<F: Coefficient> EdgeData<F> {
    /// Validates lengths against the endpoint shapes and requires the trailing
    /// `h_i` (resp. `h_j`) coordinates of the `I` vectors to be zero.
    pub fn new(
        edge: (usize, usize),
        omega: Vec<F>,
        i_ij: Vec<i64>,
        i_ji: Vec<i64>,
        shapes: (SurfaceBlockShape, SurfaceBlockShape),
    ) -> Result<Self> {
        let (si, sj) = shapes;
        if omega.len() != si.rows() + sj.rows() {
            return Err(Error::ShapeMismatch(format!(
                "omega has length {}, expected {}",
                omega.len(),
                si.rows() + sj.rows()
            )));
        }
        for (v, s) in [(&i_ij, si), (&i_ji, sj)] {
            if v.len() != s.cols() {
                return Err(Error::ShapeMismatch(format!(
                    "I vector has length {}, expected {}",
                    v.len(),
                    s.cols()
                )));
            }
            if v[s.trailing_columns()].iter().any(|&x| x != 0) {
                return Err(Error::InvalidConfiguration(
                    "trailing coordinates of an I vector must be zero".into(),
                ));
            }
        }
        Ok(EdgeData { edge, omega, i_ij, i_ji })
    }

    /// True iff `Π_e` has rank exactly one.
    pub fn is_nondegenerate(&self) -> bool {
        self.omega.iter().any(|w| !w.is_exact_zero())
            && self.i_ij.iter().chain(&self.i_ji).any(|&x| x != 0)
    }
}

/// Row and column offsets of the vertex blocks inside the ambient matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientShape {
    shapes: Vec<SurfaceBlockShape>,
    row_offsets: Vec<usize>,
    col_offsets: Vec<usize>,
}

impl AmbientShape {
    pub fn new(shapes: Vec<SurfaceBlockShape>) -> Self {
        let mut row_offsets = vec![0];
        let mut col_offsets = vec![0];
        for s in &shapes {
            row_offsets.push(row_offsets.last().unwrap() + s.rows());
            col_offsets.push(col_offsets.last().unwrap() + s.cols());
        }
        AmbientShape { shapes, row_offsets, col_offsets }
    }

    pub fn shapes(&self) -> &[SurfaceBlockShape] {
        &self.shapes
    }

    pub fn rows(&self) -> usize {
        *self.row_offsets.last().unwrap()
    }

    pub fn cols(&self) -> usize {
        *self.col_offsets.last().unwrap()
    }

    pub fn row_range(&self, v: usize) -> Range<usize> {
        self.row_offsets[v]..self.row_offsets[v + 1]
    }

    pub fn col_range(&self, v: usize) -> Range<usize> {
        self.col_offsets[v]..self.col_offsets[v + 1]
    }

    /// Rows of vertex `v` against its trailing `h_v` columns.
    pub fn trailing_block(&self, v: usize) -> (Range<usize>, Range<usize>) {
        let t = self.shapes[v].trailing_columns();
        let c = self.col_offsets[v];
        (self.row_range(v), c + t.start..c + t.end)
    }
}

/// `Π_e = ω_e ⊗ [I_ij, I_ji]`, padded with zeros to the ambient shape.
pub fn build_Pi<F: Coefficient>(e: &EdgeData<F>, ambient: &AmbientShape) -> Result<Matrix<F>> {
    let (i, j) = e.edge;
    let n = ambient.shapes().len();
    if i >= n || j >= n || i == j {
        return Err(Error::ShapeMismatch(format!("edge ({i}, {j}) outside {n} vertices")));
    }
    let (ri, rj) = (ambient.row_range(i), ambient.row_range(j));
    let (ci, cj) = (ambient.col_range(i), ambient.col_range(j));
    if e.omega.len() != ri.len() + rj.len() || e.i_ij.len() != ci.len() || e.i_ji.len() != cj.len() {
        return Err(Error::ShapeMismatch(format!("edge ({i}, {j}) data does not fit the blocks")));
    }
    let mut u = vec![F::zero(); ambient.rows()];
    for (k, r) in ri.clone().chain(rj.clone()).enumerate() {
        u[r] = e.omega[k].clone();
    }
    let mut w = vec![F::zero(); ambient.cols()];
    for (x, c) in e.i_ij.iter().zip(ci) {
        w[c] = F::from_i64(*x);
    }
    for (x, c) in e.i_ji.iter().zip(cj) {
        w[c] = F::from_i64(*x);
    }
    Ok(linalg::outer(&u, &w))
}

/// An alkane with a constant block per vertex and plumbing data per edge.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceGraphModel<F> {
    alkane: Alkane,
    ambient: AmbientShape,
    blocks: Vec<Matrix<F>>,
    edges: Vec<EdgeData<F>>,
}

impl<F: Coefficient> SurfaceGraphModel<F> {
    pub fn new(
        alkane: Alkane,
        shapes: Vec<SurfaceBlockShape>,
        blocks: Vec<Matrix<F>>,
        edges: Vec<EdgeData<F>>,
    ) -> Result<Self> {
        let n = alkane.genus();
        if shapes.len() != n || blocks.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "{n} vertices but {} shapes and {} blocks",
                shapes.len(),
                blocks.len()
            )));
        }
        for (b, s) in blocks.iter().zip(&shapes) {
            if b.len() != s.rows() || b.iter().any(|r| r.len() != s.cols()) {
                return Err(Error::ShapeMismatch(format!(
                    "vertex block must be {}x{}",
                    s.rows(),
                    s.cols()
                )));
            }
        }
        let mut seen = BTreeSet::new();
        for e in &edges {
            let (i, j) = e.edge;
            if i >= n || j >= n || !alkane.has_edge(i, j) {
                return Err(Error::InvalidConfiguration(format!("({i}, {j}) is not a bond")));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidConfiguration(format!("bond ({i}, {j}) repeated")));
            }
            EdgeData::new(e.edge, e.omega.clone(), e.i_ij.clone(), e.i_ji.clone(), (shapes[i], shapes[j]))?;
        }
        if seen.len() != alkane.edges().len() {
            return Err(Error::InvalidConfiguration("every bond needs edge data".into()));
        }
        Ok(SurfaceGraphModel {
            alkane,
            ambient: AmbientShape::new(shapes),
            blocks,
            edges,
        })
    }

    /// Random rational blocks, non-zero Gaussian `ω` and small integral `I`
    /// vectors, one shape per vertex.
    pub fn random(alkane: Alkane, shapes: Vec<SurfaceBlockShape>, rng: &mut impl Rng) -> Result<Self> {
        if shapes.len() != alkane.genus() {
            return Err(Error::ShapeMismatch("one shape per vertex".into()));
        }
        let blocks = shapes
            .iter()
            .map(|s| {
                (0..s.rows())
                    .map(|_| (0..s.cols()).map(|_| rng::rational(rng, 9, 5)).collect())
                    .collect()
            })
            .collect();
        let mut edges = Vec::new();
        for &(i, j) in alkane.edges() {
            let (si, sj) = (shapes[i], shapes[j]);
            let omega = (0..si.rows() + sj.rows())
                .map(|_| rng::nonzero_gaussian(rng, 5, 4))
                .collect();
            let mut sample = |s: SurfaceBlockShape| -> Vec<i64> {
                let mut v: Vec<i64> = (0..s.cols()).map(|_| rng.gen_range(-3..=3)).collect();
                v[s.trailing_columns()].fill(0);
                v
            };
            let (a, b) = (sample(si), sample(sj));
            edges.push(EdgeData::new((i, j), omega, a, b, (si, sj))?);
        }
        Self::new(alkane, shapes, blocks, edges)
    }

    /// Random model with every `h_i = 1`.
    pub fn random_k3(alkane: Alkane, rng: &mut impl Rng) -> Result<Self> {
        let shapes = vec![SurfaceBlockShape::new(1)?; alkane.genus()];
        Self::random(alkane, shapes, rng)
    }

    /// Negative control: edge `dst` receives a copy of edge `src`'s data, so
    /// two generators of the span coincide. The result is deliberately not a
    /// valid model.
    pub fn with_duplicated_edge_data(&self, src: usize, dst: usize) -> Self {
        let mut m = self.clone();
        m.edges[dst] = m.edges[src].clone();
        m
    }

    pub fn alkane(&self) -> &Alkane {
        &self.alkane
    }

    pub fn ambient(&self) -> &AmbientShape {
        &self.ambient
    }

    pub fn blocks(&self) -> &[Matrix<F>] {
        &self.blocks
    }

    pub fn edges(&self) -> &[EdgeData<F>] {
        &self.edges
    }

    pub fn edges_mut(&mut self) -> &mut Vec<EdgeData<F>> {
        &mut self.edges
    }

    /// `t_i_j` per edge, in edge order.
    pub fn variables(&self) -> Vec<String> {
        self.edges.iter().map(|e| edge_variable(e.edge.0, e.edge.1)).collect()
    }

    pub fn pis(&self) -> Result<Vec<Matrix<F>>> {
        self.edges.iter().map(|e| build_Pi(e, &self.ambient)).collect()
    }

    /// The constant block-diagonal matrix.
    pub fn constant_matrix(&self) -> Matrix<F> {
        let mut m = linalg::zeros(self.ambient.rows(), self.ambient.cols());
        for (v, b) in self.blocks.iter().enumerate() {
            for (r, row) in self.ambient.row_range(v).zip(b) {
                for (c, x) in self.ambient.col_range(v).zip(row) {
                    m[r][c] = x.clone();
                }
            }
        }
        m
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alkane": self.alkane.to_json(),
            "shapes": self.ambient.shapes().iter().map(|s| [s.rows(), s.cols()]).collect::<Vec<_>>(),
        })
    }
}

/// Block-diagonal constant part plus `Σ_e t_e Π_e`.
pub fn assemble_surface_period<F: Coefficient>(
    m: &SurfaceGraphModel<F>,
    ring: &Arc<JetRing<F>>,
) -> Result<Vec<Vec<Jet<F>>>> {
    if ring.truncation_order() < 1 {
        return Err(Error::InvalidRing("surface assembly needs truncation order >= 1".into()));
    }
    let mut out: Vec<Vec<Jet<F>>> = m
        .constant_matrix()
        .into_iter()
        .map(|row| row.into_iter().map(|c| ring.constant(c)).collect())
        .collect();
    for (e, name) in m.edges().iter().zip(m.variables()) {
        let t = ring.variable(&name)?;
        let pi = build_Pi(e, m.ambient())?;
        for (r, row) in pi.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if !x.is_exact_zero() {
                    out[r][c] = &out[r][c] + &t.scale(x);
                }
            }
        }
    }
    Ok(out)
}

/// Rank of the span of `{Π_e}`, computed on the vectorized matrices.
pub fn span_dimension_E_Gamma<F: Coefficient>(m: &SurfaceGraphModel<F>) -> Result<usize> {
    let rows: Matrix<F> = m.pis()?.into_iter().map(|p| p.into_iter().flatten().collect()).collect();
    Ok(linalg::rank(&rows, DEFAULT_TOLERANCE))
}

/// Checks "rank ≤ 1 and the block is skew-symmetric ⟹ the block is zero" on
/// one instance. Returns `true` unless `m` is a counterexample.
pub fn skew_block_rank_one_vanishing<F: Coefficient>(
    m: &[Vec<F>],
    rows: Range<usize>,
    cols: Range<usize>,
) -> Result<bool> {
    if rows.len() != cols.len() {
        return Err(Error::ShapeMismatch("skew block must be square".into()));
    }
    if rows.end > m.len() || m.iter().any(|r| cols.end > r.len()) {
        return Err(Error::ShapeMismatch("skew block outside the matrix".into()));
    }
    if !is_skew(m, &rows, &cols) || !linalg::all_minors_vanish(m, DEFAULT_TOLERANCE) {
        return Ok(true);
    }
    Ok(rows.clone().all(|r| cols.clone().all(|c| m[r][c].is_exact_zero())))
}

fn is_skew<F: Coefficient>(m: &[Vec<F>], rows: &Range<usize>, cols: &Range<usize>) -> bool {
    let n = rows.len();
    (0..n).all(|a| {
        (0..n).all(|b| m[rows.start + a][cols.start + b] == m[rows.start + b][cols.start + a].neg())
    })
}

/// Outcome of a randomized search for rank-one matrices with a non-zero
/// skew-symmetric block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkewSearchReport {
    /// Rank-one matrices drawn in total.
    pub sampled: usize,
    /// Draws whose block was skew-symmetric; the search stops at the target.
    pub skew_trials: usize,
    pub counterexamples: usize,
}

/// Draws matrices `u ⊗ w` (entries in `−2..=2`, shape 4 × 6) until `trials`
/// of them have a skew-symmetric trailing 2 × 2 block, testing each draw.
pub fn skew_counterexample_search<F: Coefficient>(trials: usize, rng: &mut impl Rng) -> SkewSearchReport {
    let mut report = SkewSearchReport { sampled: 0, skew_trials: 0, counterexamples: 0 };
    while report.skew_trials < trials {
        let u: Vec<F> = (0..4).map(|_| F::from_i64(rng.gen_range(-2..=2))).collect();
        let w: Vec<F> = (0..6).map(|_| F::from_i64(rng.gen_range(-2..=2))).collect();
        let m = linalg::outer(&u, &w);
        report.sampled += 1;
        if is_skew(&m, &(2..4), &(4..6)) {
            report.skew_trials += 1;
        }
        if !skew_block_rank_one_vanishing(&m, 2..4, 4..6).expect("block fits") {
            report.counterexamples += 1;
        }
    }
    report
}

/// Dimension summary plus span dimension, as emitted by `surfaces egamma`.
pub fn surface_report<F: Coefficient>(m: &SurfaceGraphModel<F>) -> Result<Value> {
    let h = m.alkane().genus();
    Ok(json!({
        "alkane": m.alkane().to_json(),
        "h": h,
        "dims": {
            "V_h": dim_period_domain(h)?,
            "V_Gamma": dim_V_Gamma(m.alkane())?,
            "W_1h": dim_W(&vec![1; h])?,
        },
        "span_dim": span_dimension_E_Gamma(m)?,
        "shapes": m.ambient().shapes().iter().map(|s| [s.rows(), s.cols()]).collect::<Vec<_>>(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alkanes::enumerate_alkanes;
    use crate::field::GaussianRational as Q;

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_period_domain(1).unwrap(), 18);
        assert_eq!(dim_period_domain(2).unwrap(), 57);
        assert_eq!(dim_period_domain(3).unwrap(), 117);
        assert_eq!(dim_K(0).unwrap(), 18);
        assert_eq!(dim_K(2).unwrap(), 10);
        assert_eq!(dim_K(4).unwrap(), 2);
        assert!(dim_K(5).is_err());
        assert_eq!(dim_W(&[1, 1, 1]).unwrap(), 4);
        assert_eq!(dim_W(&[2, 3]).unwrap(), 9);
        assert_eq!(dim_W(&[5]).unwrap(), 10);
        assert!(dim_W(&[]).is_err());
        assert_eq!(dim_V_Gamma(&Alkane::chain(3).unwrap()).unwrap(), 36);
        assert_eq!(dim_V_Gamma(&Alkane::star(5).unwrap()).unwrap(), 54);
        assert_eq!(dim_V_Gamma(&Alkane::chain(1).unwrap()).unwrap(), 18);
    }

    fn unit_shapes() -> (SurfaceBlockShape, SurfaceBlockShape) {
        (SurfaceBlockShape::new(1).unwrap(), SurfaceBlockShape::new(1).unwrap())
    }

    fn ones_with_trailing_zero(n: usize) -> Vec<i64> {
        let mut v = vec![1; n];
        v[n - 1] = 0;
        v
    }

    #[test]
    fn pi_examples() {
        let shapes = unit_shapes();
        let amb = AmbientShape::new(vec![shapes.0, shapes.1]);
        let e = EdgeData::new(
            (0, 1),
            vec![Q::one(), Q::from_i64(-1)],
            ones_with_trailing_zero(15),
            ones_with_trailing_zero(15),
            shapes,
        )
        .unwrap();
        let pi = build_Pi(&e, &amb).unwrap();
        assert_eq!((pi.len(), pi[0].len()), (2, 30));
        assert!(linalg::all_minors_vanish(&pi, 0.0));
        assert_eq!(linalg::rank(&pi, 0.0), 1);

        let zero = EdgeData { omega: vec![Q::zero(), Q::zero()], ..e.clone() };
        assert!(!zero.is_nondegenerate());
        assert_eq!(linalg::rank(&build_Pi(&zero, &amb).unwrap(), 0.0), 0);

        let scaled = EdgeData {
            i_ij: e.i_ij.iter().map(|x| 3 * x).collect(),
            i_ji: e.i_ji.iter().map(|x| 3 * x).collect(),
            ..e.clone()
        };
        let ps = build_Pi(&scaled, &amb).unwrap();
        for (a, b) in ps.iter().flatten().zip(pi.iter().flatten()) {
            assert_eq!(a, &b.mul(&Q::from_i64(3)));
        }
    }

    #[test]
    fn trailing_coordinates_must_vanish() {
        let err = EdgeData::new((0, 1), vec![Q::one(), Q::one()], vec![1; 15], ones_with_trailing_zero(15), unit_shapes());
        assert!(matches!(err, Err(Error::InvalidConfiguration(_))));
        let err = EdgeData::new((0, 1), vec![Q::one()], ones_with_trailing_zero(15), ones_with_trailing_zero(15), unit_shapes());
        assert!(matches!(err, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn assembly_slices_and_derivatives() {
        let mut rng = rng::substream(3, "surfaces/test");
        let shapes = vec![SurfaceBlockShape::new(2).unwrap(), SurfaceBlockShape::new(1).unwrap()];
        let m = SurfaceGraphModel::<Q>::random(Alkane::chain(2).unwrap(), shapes, &mut rng).unwrap();
        let ring = JetRing::new(m.variables(), 1).unwrap();
        let psi = assemble_surface_period(&m, &ring).unwrap();
        assert_eq!((psi.len(), psi[0].len()), (3, 26 + 15));
        let constant: Matrix<Q> = psi.iter().map(|r| r.iter().map(|x| x.constant_term()).collect()).collect();
        assert_eq!(constant, m.constant_matrix());
        let linear: Matrix<Q> = psi.iter().map(|r| r.iter().map(|x| x.linear_coefficient(0)).collect()).collect();
        assert_eq!(linear, m.pis().unwrap()[0]);
    }

    #[test]
    fn assembly_ignores_edge_order() {
        let mut rng = rng::substream(4, "surfaces/test");
        let m = SurfaceGraphModel::<Q>::random_k3(Alkane::star(5).unwrap(), &mut rng).unwrap();
        let mut r = m.clone();
        r.edges_mut().reverse();
        let ring = JetRing::new(m.variables(), 1).unwrap();
        assert_eq!(assemble_surface_period(&m, &ring).unwrap(), assemble_surface_period(&r, &ring).unwrap());
    }

    #[test]
    fn span_dimension_is_h_minus_one() {
        let mut rng = rng::substream(5, "surfaces/test");
        for h in 1..=6 {
            for a in enumerate_alkanes(h).unwrap() {
                let m = SurfaceGraphModel::<Q>::random_k3(a, &mut rng).unwrap();
                assert_eq!(span_dimension_E_Gamma(&m).unwrap(), h - 1);
                if h >= 3 {
                    let d = m.with_duplicated_edge_data(0, 1);
                    assert!(span_dimension_E_Gamma(&d).unwrap() < h - 1);
                }
            }
        }
    }

    #[test]
    fn skew_block_property() {
        let z: Matrix<Q> = linalg::zeros(3, 3);
        assert!(skew_block_rank_one_vanishing(&z, 1..3, 1..3).unwrap());
        // Skew but rank two: not a counterexample.
        let m: Matrix<Q> = vec![vec![Q::zero(), Q::one()], vec![Q::from_i64(-1), Q::zero()]];
        assert!(skew_block_rank_one_vanishing(&m, 0..2, 0..2).unwrap());
        let mut rng = rng::substream(6, "surfaces/test");
        let r = skew_counterexample_search::<Q>(1000, &mut rng);
        assert_eq!(r.counterexamples, 0);
        assert_eq!(r.skew_trials, 1000);
        assert!(r.sampled >= 1000);
    }

    #[test]
    fn constructed_pi_has_zero_trailing_blocks() {
        let mut rng = rng::substream(7, "surfaces/test");
        let shapes = vec![SurfaceBlockShape::new(2).unwrap(); 3];
        let m = SurfaceGraphModel::<Q>::random(Alkane::chain(3).unwrap(), shapes, &mut rng).unwrap();
        for pi in m.pis().unwrap() {
            for v in 0..3 {
                let (rows, cols) = m.ambient().trailing_block(v);
                assert!(skew_block_rank_one_vanishing(&pi, rows.clone(), cols.clone()).unwrap());
                assert!(rows.clone().all(|r| cols.clone().all(|c| pi[r][c].is_exact_zero())));
            }
        }
    }

    #[test]
    fn report_json() {
        let mut rng = rng::substream(8, "surfaces/test");
        let m = SurfaceGraphModel::<Q>::random_k3(Alkane::chain(3).unwrap(), &mut rng).unwrap();
        let v = surface_report(&m).unwrap();
        assert_eq!(v["h"], 3);
        assert_eq!(v["dims"]["V_Gamma"], 36);
        assert_eq!(v["dims"]["W_1h"], 4);
        assert_eq!(v["span_dim"], 2);
        assert_eq!(v["shapes"][0], json!([1, 15]));
    }
}
