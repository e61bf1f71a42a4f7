//! The verification suite run by `plumbline selftest`.
//!
//! Every check is exact (Gaussian rationals) and draws its randomness from
//! its own labelled substream, so a report depends only on the seed and the
//! options.

use serde::Serialize;
use serde_json::{json, Value};

use crate::alkanes::{enumerate_alkanes, Alkane};
use crate::curve_periods::{
    banded_locus_dimension, derivative_rank_one_check, offdiag_support, pair_period_first_order,
    star_period_leading, star_variables, tree_period_first_order, PairPlumbing, ScaleMode,
    StarConfig, TreeConfig,
};
use crate::error::{Error, Result};
use crate::field::{Coefficient, GaussianRational as Q};
use crate::jets::JetRing;
use crate::linalg::Matrix;
use crate::relations::{
    octic_eval_variant, octic_indices, plucker_coordinates, plucker_to_cone,
    verify_asymptotic_vanishing, GrassFrame, OcticVariant, VanishingOptions, VANISHING_DEGREE,
};
use crate::rng;
use crate::surfaces::{
    dim_K, dim_V_Gamma, dim_W, dim_period_domain, skew_counterexample_search,
    span_dimension_E_Gamma, SurfaceGraphModel,
};

/// Numbers of alkanes `C_gH_{2g+2}` for `g = 1, …, 16` (OEIS A000602).
pub const ALKANE_COUNTS: [usize; 16] = [
    1, 1, 1, 2, 3, 5, 9, 18, 35, 75, 159, 355, 802, 1858, 4347, 10359,
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, pass: bool, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            pass,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: Value,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    pub version: &'static str,
}

impl Report {
    pub fn new(command: Value, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        Report {
            command,
            summary: Summary {
                total: checks.len(),
                passed,
                failed: checks.len() - passed,
            },
            checks,
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Suite sizes and the octic variant under test.
#[derive(Debug, Clone, PartialEq)]
pub struct SelftestOptions {
    pub seed: u64,
    /// `OcticVariant::Printed` injects the corrupted octic; the cone checks
    /// must then fail.
    pub variant: OcticVariant,
    pub max_alkane_genus: usize,
    pub cone_genera: Vec<usize>,
    pub cone_trials: usize,
    pub jet_seeds: usize,
    pub branch_max_genus: usize,
    pub rank_one_max_genus: usize,
    pub rank_one_seeds: usize,
    pub surface_max_h: usize,
    pub span_max_h: usize,
    pub span_seeds: usize,
    pub skew_trials: usize,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            seed: 0,
            variant: OcticVariant::Corrected,
            max_alkane_genus: 12,
            cone_genera: vec![4, 5, 6],
            cone_trials: 100,
            jet_seeds: 5,
            branch_max_genus: 8,
            rank_one_max_genus: 6,
            rank_one_seeds: 20,
            surface_max_h: 12,
            span_max_h: 7,
            span_seeds: 50,
            skew_trials: 1000,
        }
    }
}

/// Runs every check in a fixed order.
pub fn selftest(opts: &SelftestOptions) -> Result<Vec<CheckResult>> {
    let s = opts.seed;
    Ok(vec![
        alkane_counts(opts.max_alkane_genus)?,
        cone_vanishing(&opts.cone_genera, opts.cone_trials, s, opts.variant)?,
        star_leading_vanishing(&opts.cone_genera, opts.cone_trials, s, opts.variant)?,
        jet_vanishing(4, opts.jet_seeds, s, opts.variant)?,
        jet_off_cone_control(4, opts.jet_seeds, s, opts.variant)?,
        branch_patterns(opts.branch_max_genus, s)?,
        banded_dimensions(2..=10),
        rank_one_derivatives(opts.rank_one_max_genus, opts.rank_one_seeds, s)?,
        surface_dimensions(opts.surface_max_h)?,
        span_dimension(opts.span_max_h, opts.span_seeds, s)?,
        span_duplicate_control(opts.span_max_h, s)?,
        skew_block(opts.skew_trials, s)?,
    ])
}

/// Enumeration sizes against the known counts, with distinct canonical codes.
pub fn alkane_counts(max_genus: usize) -> Result<CheckResult> {
    if max_genus > ALKANE_COUNTS.len() {
        return Err(Error::Range {
            what: "genus",
            value: max_genus as i64,
            min: 1,
            max: ALKANE_COUNTS.len() as i64,
        });
    }
    let mut counts = Vec::new();
    let mut codes_distinct = true;
    for g in 1..=max_genus {
        let reps = enumerate_alkanes(g)?;
        let mut codes: Vec<_> = reps.iter().map(Alkane::canonical_code).collect();
        codes.dedup();
        codes_distinct &= codes.len() == reps.len();
        counts.push(reps.len());
    }
    let pass = codes_distinct && counts == ALKANE_COUNTS[..max_genus];
    Ok(CheckResult::new(
        "alkane_counts",
        pass,
        format!("g=1..{max_genus}: {counts:?}"),
    ))
}

fn random_frame(rng: &mut impl rand::Rng, g: usize) -> Option<GrassFrame<Q>> {
    let row = |rng: &mut _| (0..g).map(|_| rng::rational(rng, 5, 3)).collect::<Vec<Q>>();
    let (a, b) = (row(rng), row(rng));
    GrassFrame::new(a, b).ok()
}

fn octics_vanishing_on(m: &Matrix<Q>, variant: OcticVariant) -> (usize, usize) {
    let idx = octic_indices(m.len());
    let bad = idx
        .iter()
        .filter(|&&i| !octic_eval_variant(m, i, variant).is_exact_zero())
        .count();
    (idx.len(), bad)
}

/// Random rank-2 frames mapped to the cone: every octic is exactly zero.
pub fn cone_vanishing(
    genera: &[usize],
    trials: usize,
    seed: u64,
    variant: OcticVariant,
) -> Result<CheckResult> {
    let mut rng = rng::substream(seed, "checks/cone");
    let (mut evaluated, mut bad, mut resampled) = (0, 0, 0);
    for &g in genera {
        let mut done = 0;
        while done < trials {
            let Some(frame) = random_frame(&mut rng, g) else {
                resampled += 1;
                continue;
            };
            let cone = match plucker_to_cone(&plucker_coordinates(&frame)) {
                Ok(c) => c,
                Err(Error::ConeChart(..)) => {
                    resampled += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let (n, b) = octics_vanishing_on(cone.matrix(), variant);
            evaluated += n;
            bad += b;
            done += 1;
        }
    }
    Ok(CheckResult::new(
        "cone_vanishing",
        bad == 0,
        format!(
            "g={genera:?}, {trials} frames each, {evaluated} octics, {bad} non-zero, {resampled} resampled"
        ),
    ))
}

/// Leading star coefficients at random rational `t`: every octic is zero.
pub fn star_leading_vanishing(
    genera: &[usize],
    trials: usize,
    seed: u64,
    variant: OcticVariant,
) -> Result<CheckResult> {
    let mut rng = rng::substream(seed, "checks/star");
    let (mut evaluated, mut bad) = (0, 0);
    for &g in genera {
        let ring = JetRing::<Q>::new(star_variables(g), 2)?;
        for _ in 0..trials {
            let star = StarConfig::<Q>::random(g, &mut rng)?;
            let lead = star_period_leading(&star, &ring, ScaleMode::ExactUnits)?;
            let t: Vec<Q> = (0..g).map(|_| rng::nonzero_rational(&mut rng, 7, 4)).collect();
            let mut m = vec![vec![Q::zero(); g]; g];
            for (i, row) in m.iter_mut().enumerate() {
                for (j, x) in row.iter_mut().enumerate() {
                    if i != j {
                        *x = lead.entry(i, j).evaluate(&t)?;
                    }
                }
            }
            let (n, b) = octics_vanishing_on(&m, variant);
            evaluated += n;
            bad += b;
        }
    }
    Ok(CheckResult::new(
        "star_leading_vanishing",
        bad == 0,
        format!("g={genera:?}, {trials} configurations each, {evaluated} octics, {bad} non-zero"),
    ))
}

/// Perturbed star families at truncation order 17: octic jets vanish through
/// degree 16.
pub fn jet_vanishing(g: usize, seeds: usize, seed: u64, variant: OcticVariant) -> Result<CheckResult> {
    let mut rng = rng::substream(seed, "checks/jets");
    let mut through = Vec::new();
    let mut surviving = Vec::new();
    let mut pass = true;
    for k in 0..seeds {
        let star = StarConfig::<Q>::random(g, &mut rng)?;
        let r = verify_asymptotic_vanishing(
            &star,
            &VanishingOptions {
                seed: seed.wrapping_add(k as u64),
                variant,
                ..Default::default()
            },
        )?;
        pass &= r.pass;
        through.push(r.all_vanish_through);
        surviving.push(r.min_surviving_degree);
    }
    Ok(CheckResult::new(
        "jet_vanishing",
        pass,
        format!(
            "g={g}, order {}, {seeds} seeds, vanish through {through:?}, lowest surviving degrees {surviving:?}",
            VANISHING_DEGREE + 1
        ),
    ))
}

/// Negative control: shifting one entry off the cone must break vanishing.
pub fn jet_off_cone_control(
    g: usize,
    seeds: usize,
    seed: u64,
    variant: OcticVariant,
) -> Result<CheckResult> {
    let mut rng = rng::substream(seed, "checks/jets-control");
    let mut caught = 0;
    for k in 0..seeds {
        let star = StarConfig::<Q>::random(g, &mut rng)?;
        let r = verify_asymptotic_vanishing(
            &star,
            &VanishingOptions {
                seed: seed.wrapping_add(k as u64),
                variant,
                off_cone_shift: Some((0, 1)),
                ..Default::default()
            },
        )?;
        if !r.pass {
            caught += 1;
        }
    }
    Ok(CheckResult::new(
        "jet_off_cone_control",
        caught == seeds,
        format!("{caught}/{seeds} shifted families detected"),
    ))
}

/// Tree assemblies: the first-order off-diagonal support equals the bond set,
/// and the chain is tridiagonal.
pub fn branch_patterns(max_genus: usize, seed: u64) -> Result<CheckResult> {
    let mut rng = rng::substream(seed, "checks/branches");
    let (mut total, mut mismatches, mut chain_ok) = (0, 0, true);
    for g in 1..=max_genus {
        for alkane in enumerate_alkanes(g)? {
            let cfg = TreeConfig::<Q>::random(alkane.clone(), &mut rng)?;
            let ring = JetRing::new(cfg.variables(), 1)?;
            let m = tree_period_first_order(&cfg, &ring, ScaleMode::ExactUnits)?;
            let support = offdiag_support(&m);
            total += 1;
            if support.iter().copied().ne(alkane.edges().iter().copied()) {
                mismatches += 1;
            }
            if alkane.is_chain() {
                chain_ok &= crate::curve_periods::is_banded(&support, 2);
            }
        }
    }
    Ok(CheckResult::new(
        "branch_patterns",
        mismatches == 0 && chain_ok,
        format!("{total} alkanes g<={max_genus}, {mismatches} support mismatches, chains banded: {chain_ok}"),
    ))
}

/// Band-2 and band-3 locus dimensions `2g − 1` and `3g − 3`.
pub fn banded_dimensions(genera: std::ops::RangeInclusive<usize>) -> CheckResult {
    let bad: Vec<usize> = genera
        .clone()
        .filter(|&g| banded_locus_dimension(g, 2) != 2 * g - 1 || banded_locus_dimension(g, 3) != 3 * g - 3)
        .collect();
    CheckResult::new(
        "banded_dimensions",
        bad.is_empty(),
        format!("g={}..{}, failures at {bad:?}", genera.start(), genera.end()),
    )
}

/// Every `∂τ/∂t_e` of pair and tree assemblies has rank at most one.
pub fn rank_one_derivatives(max_genus: usize, seeds: usize, seed: u64) -> Result<CheckResult> {
    let mut rng = rng::substream(seed, "checks/rank-one");
    let (mut checked, mut bad) = (0, 0);
    let pair_ring = JetRing::<Q>::new(["t"], 1)?;
    for _ in 0..seeds {
        let star = StarConfig::<Q>::random(2, &mut rng)?;
        let p = PairPlumbing::from_curves(&star.curves[0], 0, &star.curves[1], 0, "t")?;
        let m = pair_period_first_order(&p, &pair_ring, ScaleMode::ExactUnits)?;
        checked += 1;
        bad += usize::from(!derivative_rank_one_check(&m, "t")?);
    }
    for g in 2..=max_genus {
        for alkane in enumerate_alkanes(g)? {
            for _ in 0..seeds {
                let cfg = TreeConfig::<Q>::random(alkane.clone(), &mut rng)?;
                let ring = JetRing::new(cfg.variables(), 1)?;
                let m = tree_period_first_order(&cfg, &ring, ScaleMode::ExactUnits)?;
                for v in cfg.variables() {
                    checked += 1;
                    bad += usize::from(!derivative_rank_one_check(&m, &v)?);
                }
            }
        }
    }
    Ok(CheckResult::new(
        "rank_one_derivatives",
        bad == 0,
        format!("{checked} derivative matrices (pairs and trees g<={max_genus}, {seeds} seeds), {bad} of rank > 1"),
    ))
}

/// Valency identity for every alkane and the closed-form dimensions.
pub fn surface_dimensions(max_h: usize) -> Result<CheckResult> {
    let mut alkanes = 0;
    let mut violations = 0;
    for h in 1..=max_h {
        for a in enumerate_alkanes(h)? {
            alkanes += 1;
            match dim_V_Gamma(&a) {
                Ok(d) if d == 9 * h + 9 => {}
                Ok(_) | Err(Error::FormulaViolation(_)) => violations += 1,
                Err(e) => return Err(e),
            }
        }
    }
    let w_ok = (1..=max_h).all(|h| dim_W(&vec![1; h]).ok() == Some(h + 1));
    let fixed_ok = dim_period_domain(1)? == 18 && dim_K(4)? == 2;
    Ok(CheckResult::new(
        "surface_dimensions",
        violations == 0 && w_ok && fixed_ok,
        format!(
            "{alkanes} alkanes h<={max_h}, {violations} violations; W(1^h)=h+1: {w_ok}; V_1=18, K_4=2: {fixed_ok}"
        ),
    ))
}

/// The `Π_e` of random models span a space of dimension `h − 1`.
pub fn span_dimension(max_h: usize, seeds: usize, seed: u64) -> Result<CheckResult> {
    let mut rng = rng::substream(seed, "checks/span");
    let (mut models, mut bad) = (0, 0);
    for h in 1..=max_h {
        for a in enumerate_alkanes(h)? {
            for _ in 0..seeds {
                let m = SurfaceGraphModel::<Q>::random_k3(a.clone(), &mut rng)?;
                models += 1;
                bad += usize::from(span_dimension_E_Gamma(&m)? != h - 1);
            }
        }
    }
    Ok(CheckResult::new(
        "span_dimension",
        bad == 0,
        format!("{models} models h<={max_h}, {bad} with span != h-1"),
    ))
}

/// Negative control: duplicating one edge's data drops the span dimension.
pub fn span_duplicate_control(max_h: usize, seed: u64) -> Result<CheckResult> {
    let mut rng = rng::substream(seed, "checks/span-control");
    let (mut models, mut caught) = (0, 0);
    for h in 3..=max_h {
        for a in enumerate_alkanes(h)? {
            let m = SurfaceGraphModel::<Q>::random_k3(a, &mut rng)?.with_duplicated_edge_data(0, 1);
            models += 1;
            caught += usize::from(span_dimension_E_Gamma(&m)? < h - 1);
        }
    }
    Ok(CheckResult::new(
        "span_duplicate_control",
        caught == models,
        format!("{caught}/{models} duplicated models drop below h-1"),
    ))
}

/// Randomized search for a rank-one matrix with a non-zero skew block, and
/// the trailing blocks of constructed `Π_e`.
pub fn skew_block(trials: usize, seed: u64) -> Result<CheckResult> {
    let mut rng = rng::substream(seed, "checks/skew");
    let r = skew_counterexample_search::<Q>(trials, &mut rng);
    let mut nonzero_trailing = 0;
    for h in 2..=5 {
        let shapes = vec![crate::surfaces::SurfaceBlockShape::new(2)?; h];
        let m = SurfaceGraphModel::<Q>::random(Alkane::chain(h)?, shapes, &mut rng)?;
        for pi in m.pis()? {
            for v in 0..h {
                let (rows, cols) = m.ambient().trailing_block(v);
                if rows.clone().any(|r| cols.clone().any(|c| !pi[r][c].is_exact_zero())) {
                    nonzero_trailing += 1;
                }
            }
        }
    }
    Ok(CheckResult::new(
        "skew_block",
        r.counterexamples == 0 && nonzero_trailing == 0,
        format!(
            "{} rank-1 matrices with skew block ({} drawn), {} counterexamples; {nonzero_trailing} constructed Pi_e with non-zero trailing block",
            r.skew_trials, r.sampled, r.counterexamples
        ),
    ))
}

/// The selftest report for the given options.
pub fn selftest_report(opts: &SelftestOptions) -> Result<Report> {
    let checks = selftest(opts)?;
    let command = json!({
        "name": "selftest",
        "seed": opts.seed,
        "octic_variant": opts.variant,
    });
    Ok(Report::new(command, checks))
}
