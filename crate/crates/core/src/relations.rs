//! Octic relations among off-diagonal period entries.
//!
//! For four indices `i < j < k < l` put
//!
//! ```text
//! p₁ = τ_ij τ_kl,   p₂ = τ_ik τ_jl,   p₃ = τ_il τ_jk,
//! f_ijkl = 2·p₁p₂p₃·(p₁ + p₂ + p₃) − (p₁²p₂² + p₁²p₃² + p₂²p₃²).
//! ```
//!
//! Substituting `y² = 1/τ` into the Plücker quadric
//! `y_ij y_kl − y_ik y_jl + y_il y_jk = 0` and squaring twice gives
//! `f_ijkl = 0`, so `f` vanishes on the image of the Grassmannian under
//! `y_ij ↦ y_ij⁻²`. Working with `f` avoids choosing square roots.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::curve_periods::{star_period_leading, star_variables, ScaleMode, StarConfig};
use crate::error::{Error, Result};
use crate::field::{Coefficient, DEFAULT_TOLERANCE};
use crate::jets::{Jet, JetRing};
use crate::linalg::Matrix;
use crate::rng;

/// Jet degree through which the octics must vanish on the plumbed family.
pub const VANISHING_DEGREE: u32 = 16;

/// Four distinct indices, stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OcticIndex([usize; 4]);

impl OcticIndex {
    pub fn new(mut idx: [usize; 4]) -> Result<Self> {
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfiguration(format!(
                "octic indices must be distinct: {idx:?}"
            )));
        }
        Ok(OcticIndex(idx))
    }

    pub fn indices(&self) -> [usize; 4] {
        self.0
    }
}

impl fmt::Display for OcticIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k, l] = self.0;
        write!(f, "({},{},{},{})", i + 1, j + 1, k + 1, l + 1)
    }
}

/// All `C(g, 4)` index quadruples in lexicographic order.
pub fn octic_indices(g: usize) -> Vec<OcticIndex> {
    let mut out = Vec::new();
    for i in 0..g {
        for j in i + 1..g {
            for k in j + 1..g {
                for l in k + 1..g {
                    out.push(OcticIndex([i, j, k, l]));
                }
            }
        }
    }
    out
}

/// Which octic polynomial to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OcticVariant {
    /// The negative part is the sum of the three squared products over the
    /// complementary pair partitions of `{i, j, k, l}`.
    Corrected,
    /// Replaces `p₁²p₃²` by `τ_ij² τ_il² τ_jk² τ_jl²`. It does not vanish on
    /// the cone and exists as a negative control.
    Printed,
}

/// Arithmetic needed to evaluate an octic: implemented for scalars and jets.
pub trait OcticArith: Clone {
    fn oadd(&self, other: &Self) -> Self;
    fn osub(&self, other: &Self) -> Self;
    fn omul(&self, other: &Self) -> Self;
}

impl<F: Coefficient> OcticArith for F {
    fn oadd(&self, other: &Self) -> Self {
        Coefficient::add(self, other)
    }
    fn osub(&self, other: &Self) -> Self {
        Coefficient::sub(self, other)
    }
    fn omul(&self, other: &Self) -> Self {
        Coefficient::mul(self, other)
    }
}

/// Jets must share a ring; the entry points that accept jets check this.
impl<F: Coefficient> OcticArith for Jet<F> {
    fn oadd(&self, other: &Self) -> Self {
        self + other
    }
    fn osub(&self, other: &Self) -> Self {
        self - other
    }
    fn omul(&self, other: &Self) -> Self {
        self * other
    }
}

fn sq<T: OcticArith>(x: &T) -> T {
    x.omul(x)
}

/// The six monomials of `f_ijkl`, positive ones first:
/// `[2p₁²p₂p₃, 2p₁p₂²p₃, 2p₁p₂p₃², p₁²p₃², p₂²p₃², p₁²p₂²]` (with the first
/// negative one replaced for [`OcticVariant::Printed`]).
pub fn octic_monomials_with<T: OcticArith>(
    entry: impl Fn(usize, usize) -> T,
    idx: OcticIndex,
    variant: OcticVariant,
) -> [T; 6] {
    let [i, j, k, l] = idx.0;
    let (t_ij, t_ik, t_il) = (entry(i, j), entry(i, k), entry(i, l));
    let (t_jk, t_jl, t_kl) = (entry(j, k), entry(j, l), entry(k, l));
    let p1 = t_ij.omul(&t_kl);
    let p2 = t_ik.omul(&t_jl);
    let p3 = t_il.omul(&t_jk);
    let p123 = p1.omul(&p2).omul(&p3);
    let twice = p123.oadd(&p123);
    let (s1, s2, s3) = (sq(&p1), sq(&p2), sq(&p3));
    let first = match variant {
        OcticVariant::Corrected => s1.omul(&s3),
        OcticVariant::Printed => sq(&t_ij.omul(&t_il).omul(&t_jk).omul(&t_jl)),
    };
    [
        twice.omul(&p1),
        twice.omul(&p2),
        twice.omul(&p3),
        first,
        s2.omul(&s3),
        s1.omul(&s2),
    ]
}

/// Evaluates `f_ijkl` with `entry(a, b)` supplying `τ_ab` (`a < b`).
pub fn octic_eval_with<T: OcticArith>(
    entry: impl Fn(usize, usize) -> T,
    idx: OcticIndex,
    variant: OcticVariant,
) -> T {
    let [a, b, c, d, e, f] = octic_monomials_with(entry, idx, variant);
    a.oadd(&b).oadd(&c).osub(&d).osub(&e).osub(&f)
}

/// `f_ijkl` on a symmetric scalar matrix.
pub fn octic_eval<F: Coefficient>(m: &[Vec<F>], idx: OcticIndex) -> F {
    octic_eval_with(|a, b| m[a][b].clone(), idx, OcticVariant::Corrected)
}

pub fn octic_eval_variant<F: Coefficient>(m: &[Vec<F>], idx: OcticIndex, variant: OcticVariant) -> F {
    octic_eval_with(|a, b| m[a][b].clone(), idx, variant)
}

/// `f_ijkl` on a symmetric matrix of jets from one ring.
pub fn octic_eval_jets<F: Coefficient>(
    m: &[Vec<Jet<F>>],
    idx: OcticIndex,
    variant: OcticVariant,
) -> Result<Jet<F>> {
    let ring = m
        .first()
        .and_then(|r| r.first())
        .map(|x| Arc::clone(x.ring()))
        .ok_or_else(|| Error::ShapeMismatch("empty matrix".into()))?;
    let probe = ring.zero();
    for row in m {
        for x in row {
            probe.try_add(x)?;
        }
    }
    Ok(octic_eval_with(|a, b| m[a][b].clone(), idx, variant))
}

/// Largest modulus among the six monomials of `f_ijkl`; the scale for float
/// vanishing tests.
pub fn octic_monomial_scale<F: Coefficient>(m: &[Vec<F>], idx: OcticIndex) -> f64 {
    octic_monomials_with(|a, b| m[a][b].clone(), idx, OcticVariant::Corrected)
        .iter()
        .map(F::modulus)
        .fold(0.0, f64::max)
}

/// True iff `f_ijkl(m)` vanishes: exactly, or within `tol` of the largest
/// monomial for floats.
pub fn octic_vanishes<F: Coefficient>(m: &[Vec<F>], idx: OcticIndex, variant: OcticVariant, tol: f64) -> bool {
    octic_eval_variant(m, idx, variant).is_negligible(octic_monomial_scale(m, idx), tol)
}

/// A 2 × g matrix of rank 2.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassFrame<F> {
    rows: [Vec<F>; 2],
}

impl<F: Coefficient> GrassFrame<F> {
    pub fn new(top: Vec<F>, bottom: Vec<F>) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::ShapeMismatch("frame rows differ in length".into()));
        }
        let frame = GrassFrame { rows: [top, bottom] };
        let g = frame.genus();
        let full_rank = (0..g).any(|i| (i + 1..g).any(|j| !frame.minor(i, j).is_exact_zero()));
        if !full_rank {
            return Err(Error::DegenerateFrame);
        }
        Ok(frame)
    }

    pub fn genus(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<F>; 2] {
        &self.rows
    }

    fn minor(&self, i: usize, j: usize) -> F {
        let [a, b] = &self.rows;
        a[i].mul(&b[j]).sub(&a[j].mul(&b[i]))
    }

    /// Swaps two columns.
    pub fn swap_columns(&self, i: usize, j: usize) -> Self {
        let mut f = self.clone();
        f.rows[0].swap(i, j);
        f.rows[1].swap(i, j);
        f
    }
}

/// `y_ij` for `i < j`; `get(j, i) = −get(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PluckerCoordinates<F> {
    genus: usize,
    coords: BTreeMap<(usize, usize), F>,
}

impl<F: Coefficient> PluckerCoordinates<F> {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coords[&(i, j)].clone(),
            std::cmp::Ordering::Greater => self.coords[&(j, i)].neg(),
            std::cmp::Ordering::Equal => F::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, y: F) {
        let (a, b, y) = if i < j { (i, j, y) } else { (j, i, y.neg()) };
        self.coords.insert((a, b), y);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &F)> {
        self.coords.iter()
    }

    /// `y_ij y_kl − y_ik y_jl + y_il y_jk`.
    pub fn quadric(&self, idx: OcticIndex) -> F {
        let [i, j, k, l] = idx.0;
        let y = |a, b| self.get(a, b);
        y(i, j)
            .mul(&y(k, l))
            .sub(&y(i, k).mul(&y(j, l)))
            .add(&y(i, l).mul(&y(j, k)))
    }
}

/// The 2×2 minors of a frame.
pub fn plucker_coordinates<F: Coefficient>(frame: &GrassFrame<F>) -> PluckerCoordinates<F> {
    let g = frame.genus();
    let mut coords = BTreeMap::new();
    for i in 0..g {
        for j in i + 1..g {
            coords.insert((i, j), frame.minor(i, j));
        }
    }
    PluckerCoordinates { genus: g, coords }
}

/// Symmetric matrix with zero diagonal holding off-diagonal values `τ̄_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentConePoint<F> {
    matrix: Matrix<F>,
}

impl<F: Coefficient> TangentConePoint<F> {
    pub fn from_matrix(matrix: Matrix<F>) -> Result<Self> {
        let g = matrix.len();
        if matrix.iter().any(|r| r.len() != g) {
            return Err(Error::ShapeMismatch("cone point must be square".into()));
        }
        let mut m = matrix;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = F::zero();
        }
        for i in 0..g {
            for j in 0..i {
                if m[i][j] != m[j][i] {
                    return Err(Error::ShapeMismatch("cone point must be symmetric".into()));
                }
            }
        }
        Ok(TangentConePoint { matrix: m })
    }

    pub fn genus(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.matrix[i][j]
    }
}

/// `τ̄_ij = y_ij⁻²`.
pub fn plucker_to_cone<F: Coefficient>(y: &PluckerCoordinates<F>) -> Result<TangentConePoint<F>> {
    let g = y.genus();
    let mut m = vec![vec![F::zero(); g]; g];
    for (&(i, j), yij) in y.iter() {
        let t = yij
            .mul(yij)
            .inv()
            .ok_or(Error::ConeChart(i + 1, j + 1))?;
        m[i][j] = t.clone();
        m[j][i] = t;
    }
    Ok(TangentConePoint { matrix: m })
}

/// Outcome of [`verify_asymptotic_vanishing`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VanishingReport {
    pub g: usize,
    pub mode: &'static str,
    pub octics_checked: usize,
    /// Largest `d` such that every octic vanishes through degree `d`, capped
    /// at [`VANISHING_DEGREE`]; `-1` if some octic has a non-zero constant.
    pub all_vanish_through: i64,
    /// Lowest degree with a surviving coefficient over all octics, `None`
    /// if every octic vanishes through the truncation order.
    pub min_surviving_degree: Option<u32>,
    pub pass: bool,
}

/// Options for [`verify_asymptotic_vanishing`].
#[derive(Debug, Clone, PartialEq)]
pub struct VanishingOptions {
    pub order: u32,
    pub seed: u64,
    /// Multiply each `τ̄_ij` by `1 + ℓ_ij(t)` with random rational linear
    /// forms `ℓ_ij`.
    pub perturb: bool,
    /// Adds `1` to `τ_ij` (0-based `i < j`), moving the family off the cone.
    pub off_cone_shift: Option<(usize, usize)>,
    pub variant: OcticVariant,
    pub mode: ScaleMode,
    /// Relative tolerance for float coefficients.
    pub tolerance: f64,
}

impl Default for VanishingOptions {
    fn default() -> Self {
        VanishingOptions {
            order: VANISHING_DEGREE + 1,
            seed: 0,
            perturb: true,
            off_cone_shift: None,
            variant: OcticVariant::Corrected,
            mode: ScaleMode::ExactUnits,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

/// Builds `τ_ij(t) = τ̄_ij·(1 + ℓ_ij(t))` from the star configuration,
/// evaluates every octic as a jet of the given order and checks that all
/// coefficients of total degree ≤ 16 vanish.
pub fn verify_asymptotic_vanishing<F: Coefficient>(
    s: &StarConfig<F>,
    opts: &VanishingOptions,
) -> Result<VanishingReport> {
    if opts.order < VANISHING_DEGREE + 1 {
        return Err(Error::Range {
            what: "order",
            value: opts.order as i64,
            min: (VANISHING_DEGREE + 1) as i64,
            max: i64::MAX,
        });
    }
    let g = s.genus();
    let ring = JetRing::<F>::with_tolerance(star_variables(g), opts.order, opts.tolerance)?;
    let lead = star_period_leading(s, &ring, opts.mode)?;
    let mut rng = rng::substream(opts.seed, "relations/perturbation");

    let mut tau: Vec<Vec<Jet<F>>> = vec![vec![ring.zero(); g]; g];
    for i in 0..g {
        for j in i + 1..g {
            let mut entry = lead.entry(i, j).clone();
            if opts.perturb {
                let mut unit = ring.one();
                for k in 0..g {
                    let c: F = rng::rational(&mut rng, 9, 9);
                    unit = &unit + &ring.var_at(k).scale(&c);
                }
                entry = &entry * &unit;
            }
            if opts.off_cone_shift == Some((i, j)) {
                entry = &entry + &ring.one();
            }
            tau[i][j] = entry.clone();
            tau[j][i] = entry;
        }
    }

    let indices = octic_indices(g);
    let mut min_surviving: Option<u32> = None;
    for idx in &indices {
        let monomials = octic_monomials_with(|a, b| tau[a][b].clone(), *idx, opts.variant);
        let scale = monomials.iter().map(Jet::max_modulus).fold(0.0, f64::max);
        let [a, b, c, d, e, f] = monomials;
        let f = &(&(&(&(&a + &b) + &c) - &d) - &e) - &f;
        let surviving = f
            .terms()
            .filter(|(_, c)| !c.is_negligible(scale, ring.tolerance()))
            .map(|(e, _)| crate::jets::total_degree(e))
            .min();
        if let Some(d) = surviving {
            min_surviving = Some(min_surviving.map_or(d, |m| m.min(d)));
        }
    }
    let through = match min_surviving {
        Some(d) => (d as i64 - 1).min(VANISHING_DEGREE as i64),
        None => VANISHING_DEGREE as i64,
    };
    Ok(VanishingReport {
        g,
        mode: opts.mode.name(),
        octics_checked: indices.len(),
        all_vanish_through: through,
        min_surviving_degree: min_surviving,
        pass: through >= VANISHING_DEGREE as i64,
    })
}
